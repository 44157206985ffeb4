//! Group builders behind the `name:args` spec grammar, plus the plain-text
//! group file format.
//!
//! Builders: `sym:n`, `alt:n`, `cyclic:n`, `dihedral:n` (n = group order),
//! `sl2:q` (q an even prime power; action on the q+1 projective points),
//! `mersenne_example:p` (p Mersenne; the affine wreath on p blocks of p+1
//! points), `fermat_example:q` (q an odd prime; the one-dimensional affine
//! wreath on two blocks of q points), `direct:a,b`, `file:path`.

use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::group::PermGroup;
use crate::limits::{is_prime, Limits};
use crate::perm::Permutation;

/// Builds a group from a spec string. `file:` paths resolve relative to
/// `base_dir`.
pub fn build_group(spec: &str, base_dir: &Path, limits: &Limits) -> Result<PermGroup> {
    let spec = spec.trim();
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("builder spec {spec:?} has no ':'")))?;
    match head {
        "sym" => symmetric(parse_n(rest)?),
        "alt" => alternating(parse_n(rest)?),
        "cyclic" => cyclic(parse_n(rest)?),
        "dihedral" => dihedral(parse_n(rest)?),
        "sl2" => sl2(parse_n(rest)? as u64, limits),
        "mersenne_example" => mersenne_example(parse_n(rest)? as u64, limits),
        "fermat_example" => fermat_example(parse_n(rest)? as u64),
        "direct" => {
            let (a, b) = rest
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("direct spec {rest:?} needs two parts")))?;
            let ga = build_group(a, base_dir, limits)?;
            let gb = build_group(b, base_dir, limits)?;
            Ok(PermGroup::direct_product(&ga, &gb))
        }
        "file" => {
            let path = base_dir.join(rest.trim());
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Error::Parse(format!("cannot read group file {}: {e}", path.display()))
            })?;
            parse_group_file(&text)
        }
        other => Err(Error::Parse(format!("unknown builder {other:?}"))),
    }
}

fn parse_n(s: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::Parse(format!("bad numeric argument {s:?}")))
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Build("sym:n needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let mut gens = vec![Permutation::parse_cycles("(0 1)", n)?];
    if n > 2 {
        let long: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        gens.push(Permutation::parse_cycles(
            &format!("({})", long.join(" ")),
            n,
        )?);
    }
    let g = PermGroup::from_generators(gens)?;
    debug_assert_eq!(g.order(), (1..=n as u64).product::<u64>());
    Ok(g)
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n < 3 {
        return Ok(PermGroup::trivial(n.max(1)));
    }
    let mut gens = vec![Permutation::parse_cycles("(0 1 2)", n)?];
    if n > 3 {
        let points: Vec<String> = if n % 2 == 1 {
            (0..n).map(|i| i.to_string()).collect()
        } else {
            (1..n).map(|i| i.to_string()).collect()
        };
        gens.push(Permutation::parse_cycles(
            &format!("({})", points.join(" ")),
            n,
        )?);
    }
    let g = PermGroup::from_generators(gens)?;
    debug_assert_eq!(g.order(), (1..=n as u64).product::<u64>() / 2);
    Ok(g)
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::Build("cyclic:n needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    let points: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let gen = Permutation::parse_cycles(&format!("({})", points.join(" ")), n)?;
    PermGroup::from_generators(vec![gen])
}

/// The dihedral group of order n acting on the vertices of an (n/2)-gon.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    if n < 6 || !n.is_multiple_of(2) {
        return Err(Error::Build(
            "dihedral:n takes the group order, an even n >= 6".into(),
        ));
    }
    let m = n / 2;
    let points: Vec<String> = (0..m).map(|i| i.to_string()).collect();
    let rotation = Permutation::parse_cycles(&format!("({})", points.join(" ")), m)?;
    // reflection fixing vertex 0: i -> m - i
    let reflection = Permutation::from_images(
        (0..m as u32)
            .map(|i| if i == 0 { 0 } else { m as u32 - i })
            .collect(),
    )?;
    let g = PermGroup::from_generators(vec![rotation, reflection])?;
    if g.order() != n as u64 {
        return Err(Error::Build(format!(
            "dihedral construction built order {} instead of {n}",
            g.order()
        )));
    }
    Ok(g)
}

/// SL(2, q) acting on the q + 1 points of the projective line. For odd q
/// the center acts trivially, so the construction is rejected as
/// non-faithful; even prime powers give the full group.
pub fn sl2(q: u64, limits: &Limits) -> Result<PermGroup> {
    if q < 2 || !q.is_multiple_of(2) {
        return Err(Error::Build(
            "sl2:q needs an even prime power: for odd q the projective action is not faithful"
                .into(),
        ));
    }
    let k = q.trailing_zeros();
    if 2u64.pow(k) != q {
        return Err(Error::Build(format!("{q} is not a power of two")));
    }
    let field = Field::new(2, k, limits)?;

    // point indexing: x in F_q is the point [x : 1] at its integer code;
    // q is the point [1 : 0]
    let degree = (q + 1) as usize;
    let act = |a: u16, b: u16, c: u16, d: u16| -> Result<Permutation> {
        let f = &field;
        let mut images = vec![0u32; degree];
        for point in 0..degree {
            let (x0, x1) = if point == q as usize {
                (crate::gf::Field::ONE, crate::gf::Field::ZERO)
            } else {
                (f.from_int(point as u64), crate::gf::Field::ONE)
            };
            // row vector (x0, x1) times the matrix [[a, b], [c, d]]
            let y0 = f.add(f.mul(x0, a), f.mul(x1, c));
            let y1 = f.add(f.mul(x0, b), f.mul(x1, d));
            let target = if f.is_zero(y1) {
                q as usize
            } else {
                f.to_int(f.div(y0, y1)) as usize
            };
            images[point] = target as u32;
        }
        Permutation::from_images(images)
    };

    let one = crate::gf::Field::ONE;
    let zero = crate::gf::Field::ZERO;
    let mut gens = Vec::new();
    // transvections over a basis of the field, plus the Weyl element
    for i in 0..k {
        let lambda = field.from_int(1 << i);
        gens.push(act(one, lambda, zero, one)?);
    }
    gens.push(act(zero, one, one, zero)?);
    let g = PermGroup::from_generators(gens)?;
    let expected = q * (q * q - 1);
    if g.order() != expected {
        return Err(Error::Build(format!(
            "projective construction for sl2:{q} built order {} instead of {expected}",
            g.order()
        )));
    }
    Ok(g)
}

/// For a Mersenne prime p: the wreath-type group on p blocks of p + 1
/// points. Per block, the elementary abelian group of order p + 1 = 2^k
/// translates the block (identified with GF(2^k)) and a cycle of order p
/// multiplies by a field generator; a top p-cycle rotates the blocks. The
/// normal subgroup has order (p+1)^p and the Sylow p-subgroup is the wreath
/// product of two cycles of order p, giving total order (p+1)^p · p^(p+1).
pub fn mersenne_example(p: u64, limits: &Limits) -> Result<PermGroup> {
    if !is_mersenne(p) {
        return Err(Error::Build(format!(
            "mersenne_example:{p} needs a Mersenne prime"
        )));
    }
    let k = (p + 1).trailing_zeros();
    let field = Field::new(2, k, limits)?;
    let block = (p + 1) as usize;
    let degree = block * p as usize;

    // translation by 1 on block 0: additive structure is XOR of codes
    let mut t_images: Vec<u32> = (0..degree as u32).collect();
    for x in 0..block {
        t_images[x] = (x as u64 ^ 1) as u32;
    }
    let translation = Permutation::from_images(t_images)?;

    // multiplication by a field generator on block 0
    let g1 = field.from_int(generator_code(&field));
    let mut m_images: Vec<u32> = (0..degree as u32).collect();
    for x in 0..block {
        let fx = field.from_int(x as u64);
        m_images[x] = field.to_int(field.mul(fx, g1)) as u32;
    }
    let multiplier = Permutation::from_images(m_images)?;

    // top cycle rotating the blocks
    let mut c_images: Vec<u32> = vec![0; degree];
    for b in 0..p as usize {
        for x in 0..block {
            c_images[b * block + x] = (((b + 1) % p as usize) * block + x) as u32;
        }
    }
    let rotate = Permutation::from_images(c_images)?;

    let g = PermGroup::from_generators(vec![translation, multiplier, rotate])?;
    let expected = (p + 1).pow(p as u32) * p.pow(p as u32 + 1);
    if g.order() != expected {
        return Err(Error::Build(format!(
            "mersenne_example:{p} built order {} instead of {expected}",
            g.order()
        )));
    }
    Ok(g)
}

fn is_mersenne(p: u64) -> bool {
    p > 2 && is_prime(p) && (p + 1).is_power_of_two()
}

/// The element whose code is the multiplicative generator used by the field
/// tables (the generator has discrete log 1).
fn generator_code(field: &Arc<Field>) -> u64 {
    field.to_int(1)
}

/// For an odd prime q: the wreath square of the one-dimensional affine
/// group, on two blocks of q points. The normal subgroup is elementary
/// abelian of order q² and the Sylow 2-subgroup is C_{q−1} wreath C_2
/// (2-group exactly when q is a Fermat prime), giving order 2·q²·(q−1)².
pub fn fermat_example(q: u64) -> Result<PermGroup> {
    if !is_prime(q) || q < 3 {
        return Err(Error::Build(format!(
            "fermat_example:{q} needs an odd prime"
        )));
    }
    let qs = q as usize;
    let degree = 2 * qs;
    // translation x -> x + 1 on block 0
    let mut t: Vec<u32> = (0..degree as u32).collect();
    for x in 0..qs {
        t[x] = ((x + 1) % qs) as u32;
    }
    // multiplication by a primitive root on block 0
    let root = primitive_root_mod(q);
    let mut m: Vec<u32> = (0..degree as u32).collect();
    for x in 0..qs {
        m[x] = ((x as u64 * root) % q) as u32;
    }
    // block swap
    let mut s: Vec<u32> = vec![0; degree];
    for x in 0..qs {
        s[x] = (qs + x) as u32;
        s[qs + x] = x as u32;
    }
    let g = PermGroup::from_generators(vec![
        Permutation::from_images(t)?,
        Permutation::from_images(m)?,
        Permutation::from_images(s)?,
    ])?;
    let expected = 2 * q * q * (q - 1) * (q - 1);
    if g.order() != expected {
        return Err(Error::Build(format!(
            "fermat_example:{q} built order {} instead of {expected}",
            g.order()
        )));
    }
    Ok(g)
}

fn primitive_root_mod(q: u64) -> u64 {
    let divisors: Vec<u64> = crate::limits::factorize(q - 1)
        .into_iter()
        .map(|(r, _)| r)
        .collect();
    'next: for g in 2..q {
        for &r in &divisors {
            if pow_mod(g, (q - 1) / r, q) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("prime moduli have primitive roots")
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

/// Parses the group text format: a `degree: n` line, then one generator per
/// line in disjoint-cycle notation over 0-based points. `#` starts a
/// comment.
pub fn parse_group_file(text: &str) -> Result<PermGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("degree:") {
            if degree.is_some() {
                return Err(Error::Parse("duplicate degree line".into()));
            }
            degree = Some(parse_n(rest)?);
            continue;
        }
        let d = degree.ok_or_else(|| {
            Error::Parse("group file must start with a `degree: n` line".into())
        })?;
        gens.push(Permutation::parse_cycles(line, d)?);
    }
    let d = degree.ok_or_else(|| Error::Parse("group file has no degree line".into()))?;
    if gens.is_empty() {
        gens.push(Permutation::identity(d));
    }
    PermGroup::from_generators(gens)
}

/// Writes the group text format for a group's generators.
pub fn format_group_file(group: &PermGroup) -> String {
    let mut out = format!("degree: {}\n", group.degree());
    if group.generators().is_empty() {
        out.push_str("()\n");
    }
    for g in group.generators() {
        out.push_str(&g.cycle_string());
        out.push('\n');
    }
    out
}
