//! Structural lower bounds for the maximal simple-module dimension, their
//! verification verdicts, and the regular-orbit computations on natural
//! modules of general linear groups.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Field, Fq};
use crate::group::PermGroup;
use crate::lattice::{abelian_p_subgroup_classes, is_maximal_abelian_p};
use crate::limits::{is_prime, p_part, Limits};
use crate::matrix::FqMatrix;
use crate::meataxe;
use crate::pcomplex::{self, ComplexKind};
use crate::report::{
    AnalysisReport, ClassDescriptor, SimpleFingerprint, Verdict, VerdictStatus,
};
use crate::subgrp::{full_sub, permgroup_to_sub};

/// A Mersenne prime is an odd prime p with p + 1 a power of two.
pub fn is_mersenne_prime(p: u64) -> bool {
    p > 2 && is_prime(p) && (p + 1).is_power_of_two()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeClass {
    Two,
    Mersenne,
    Generic,
}

pub fn prime_class(p: u64) -> PrimeClass {
    if p == 2 {
        PrimeClass::Two
    } else if is_mersenne_prime(p) {
        PrimeClass::Mersenne
    } else {
        PrimeClass::Generic
    }
}

impl PrimeClass {
    pub fn label(&self) -> &'static str {
        match self {
            PrimeClass::Two => "two",
            PrimeClass::Mersenne => "mersenne",
            PrimeClass::Generic => "generic",
        }
    }
}

fn require_trivial_core_and_frattini(group: &PermGroup, p: u64, limits: &Limits) -> Result<()> {
    if group.p_core(p, limits)?.order() != 1 {
        return Err(Error::Precondition(
            "the bound requires a trivial p-core".into(),
        ));
    }
    if group.frattini(limits)?.order() != 1 {
        return Err(Error::Precondition(
            "the bound requires a trivial Frattini subgroup".into(),
        ));
    }
    Ok(())
}

/// Structure data shared by both bounds: X (the product of components of
/// order divisible by p), its centralizer C, and the product XC.
pub struct LayerData {
    pub x: PermGroup,
    pub xc: PermGroup,
    pub x_order: u64,
    pub xc_order: u64,
    pub out_p_part: u64,
}

pub fn layer_data(group: &PermGroup, p: u64, limits: &Limits) -> Result<LayerData> {
    let x = group.p_layer(p, limits)?;
    let c = group.centralizer(&x, limits)?;
    let xc = x.join(&c)?;
    let index = group.order() / xc.order();
    Ok(LayerData {
        x_order: x.order(),
        xc_order: xc.order(),
        out_p_part: p_part(index, p),
        x,
        xc,
    })
}

/// |G|_p / |G : X·C_G(X)|_p, defined whenever the p-core and the Frattini
/// subgroup are trivial. Equals |G|_p when X = 1.
pub fn generic_prime_bound(group: &PermGroup, p: u64, limits: &Limits) -> Result<u64> {
    require_trivial_core_and_frattini(group, p, limits)?;
    let data = layer_data(group, p, limits)?;
    Ok(p_part(group.order(), p) / data.out_p_part)
}

/// The largest order of a maximal abelian p-subgroup A of X·C_G(X) that
/// contains (a conjugate of) an abelian p-subgroup of maximal order of
/// C_G(X). Defined for p = 2 and Mersenne primes under the same hypotheses.
pub fn abelian_subgroup_bound(group: &PermGroup, p: u64, limits: &Limits) -> Result<u64> {
    if prime_class(p) == PrimeClass::Generic {
        return Err(Error::Precondition(
            "the abelian-subgroup bound is stated for p = 2 and Mersenne primes".into(),
        ));
    }
    require_trivial_core_and_frattini(group, p, limits)?;
    let data = layer_data(group, p, limits)?;
    let c = group.centralizer(&data.x, limits)?;

    // abelian p-subgroups of C of maximal order, up to conjugacy
    let table = group.elements(limits)?;
    let c_sub = permgroup_to_sub(&table, &c)?;
    let classes = abelian_p_subgroup_classes(&table, &c_sub, p, limits)?;
    let best = classes.iter().map(|a| a.order).max().unwrap_or(1);
    let mut bound = None;
    for b in classes.iter().filter(|a| a.order == best) {
        let b_group = if b.order == 1 {
            None
        } else {
            Some(crate::subgrp::sub_to_permgroup(group, &table, b))
        };
        let v = group.max_abelian_p_order(p, &data.xc, b_group.as_ref(), limits)?;
        bound = Some(bound.map_or(v, |cur: u64| cur.max(v)));
    }
    bound.ok_or_else(|| Error::Precondition("no abelian p-subgroup data".into()))
}

/// Orders of the maximal abelian p-subgroups of the group, one entry per
/// conjugacy class.
pub fn maximal_abelian_p_orders(group: &PermGroup, p: u64, limits: &Limits) -> Result<Vec<u64>> {
    let table = group.elements(limits)?;
    let ambient = full_sub(&table, group);
    let classes = abelian_p_subgroup_classes(&table, &ambient, p, limits)?;
    let mut out: Vec<u64> = classes
        .iter()
        .filter(|a| is_maximal_abelian_p(&table, &ambient, a, p))
        .map(|a| a.order)
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Largest order of an abelian p-subgroup of the group.
pub fn max_abelian_p_subgroup_order(group: &PermGroup, p: u64, limits: &Limits) -> Result<u64> {
    let table = group.elements(limits)?;
    let ambient = full_sub(&table, group);
    let classes = abelian_p_subgroup_classes(&table, &ambient, p, limits)?;
    Ok(classes.iter().map(|a| a.order).max().unwrap_or(1))
}

/// Partitions F_q^n into orbits of the matrix group generated by `gens` and
/// counts the orbits of size exactly |R|.
pub fn count_regular_orbits(gens: &[FqMatrix], n: usize, limits: &Limits) -> Result<u64> {
    assert!(!gens.is_empty() || n > 0);
    let field = gens
        .first()
        .map(|m| m.field.clone())
        .ok_or_else(|| Error::Precondition("at least one matrix is required".into()))?;
    let q = field.q();
    let total = q
        .checked_pow(n as u32)
        .filter(|&t| t <= limits.vector_space_bound)
        .ok_or(Error::Capability {
            what: "vector space enumeration",
            needed: q.saturating_pow(n as u32),
            bound: limits.vector_space_bound,
        })?;
    for g in gens {
        assert_eq!((g.rows, g.cols), (n, n));
    }
    let group_order = matrix_group_order(gens, limits)?;

    let encode = |v: &[Fq]| -> u64 {
        let mut code = 0u64;
        for &x in v.iter().rev() {
            code = code * q + field.to_int(x);
        }
        code
    };
    let decode = |mut code: u64| -> Vec<Fq> {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(field.from_int(code % q));
            code /= q;
        }
        v
    };

    let actions: Vec<crate::matrix::RowAction> =
        gens.iter().map(crate::matrix::RowAction::prepare).collect();
    let mut seen = vec![false; total as usize];
    let mut regular = 0u64;
    for start in 0..total {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start as usize] = true;
        let mut at = 0;
        while at < orbit.len() {
            let v = decode(orbit[at]);
            at += 1;
            for action in &actions {
                let w = encode(&action.apply(&v));
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    orbit.push(w);
                }
            }
        }
        if orbit.len() as u64 == group_order {
            regular += 1;
        }
    }
    Ok(regular)
}

/// Order of the matrix group generated by the given matrices, by closure.
pub fn matrix_group_order(gens: &[FqMatrix], limits: &Limits) -> Result<u64> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    let n = first.rows;
    let field = first.field.clone();
    let id = FqMatrix::identity(field, n);
    let key = |m: &FqMatrix| -> Vec<Fq> {
        (0..n)
            .flat_map(|i| m.row(i).to_vec())
            .collect()
    };
    let mut seen: HashSet<Vec<Fq>> = HashSet::new();
    seen.insert(key(&id));
    let mut queue = vec![id];
    let mut at = 0;
    while at < queue.len() {
        let cur = queue[at].clone();
        at += 1;
        for g in gens {
            let next = cur.mul(g);
            if seen.insert(key(&next)) {
                queue.push(next);
                if queue.len() as u64 > limits.element_bound {
                    return Err(Error::Capability {
                        what: "matrix group closure",
                        needed: queue.len() as u64,
                        bound: limits.element_bound,
                    });
                }
            }
        }
    }
    Ok(queue.len() as u64)
}

/// |GL(n, q)|_p for a prime q and a prime p ≠ q.
pub fn gl_order_p_part(n: usize, q: u64, p: u64) -> u64 {
    let mut part = 1u64;
    let mut qi = 1u64;
    for _ in 1..=n {
        qi *= q;
        part *= p_part(qi - 1, p);
    }
    part
}

/// Generators of a Sylow p-subgroup of GL(n, q), q prime, p ≠ q, assembled
/// from Singer-cycle powers in d×d blocks wreathed by a Sylow p-subgroup of
/// the block permutations. The order is verified against |GL(n,q)|_p by
/// closure before returning.
pub fn gl_sylow_generators(
    n: usize,
    q: u64,
    p: u64,
    limits: &Limits,
) -> Result<Vec<FqMatrix>> {
    if !is_prime(q) {
        return Err(Error::Capability {
            what: "GL Sylow construction (prime fields only)",
            needed: q,
            bound: 0,
        });
    }
    if !is_prime(p) || p == q {
        return Err(Error::Precondition(
            "p must be a prime different from the field characteristic".into(),
        ));
    }
    let field = Field::new(q, 1, limits)?;
    let expected = gl_order_p_part(n, q, p);
    if expected == 1 {
        return Ok(Vec::new());
    }

    let mut gens: Vec<FqMatrix> = Vec::new();
    let block_size: usize;
    let mut block_gens: Vec<FqMatrix> = Vec::new();

    if p == 2 {
        block_size = 2;
        if q % 4 == 1 {
            // diagonal 2-part plus the coordinate swap
            let t = p_part(q - 1, 2);
            let zeta = primitive_power(&field, t);
            let mut d1 = FqMatrix::identity(field.clone(), 2);
            d1.set(0, 0, zeta);
            let mut d2 = FqMatrix::identity(field.clone(), 2);
            d2.set(1, 1, zeta);
            let swap = FqMatrix::from_ints(field.clone(), 2, 2, &[0, 1, 1, 0]);
            block_gens.extend([d1, d2, swap]);
        } else {
            // Singer 2-part of GL(2,q) extended by the field automorphism
            let ext = Field::new(q, 2, limits)?;
            let s = p_part(q * q - 1, 2);
            let sigma = ext_primitive_power(&ext, s);
            block_gens.push(multiplication_matrix(&field, &ext, sigma));
            block_gens.push(frobenius_matrix(&field, &ext));
        }
    } else {
        // odd p: d is the order of q mod p
        let d = multiplicative_order(q, p);
        if d > n as u64 {
            return Ok(Vec::new());
        }
        block_size = d as usize;
        let ext = Field::new(q, d as u32, limits)?;
        let a = p_part(ext.q() - 1, p);
        let gamma = ext_primitive_power(&ext, a);
        block_gens.push(multiplication_matrix(&field, &ext, gamma));
    }

    let blocks = n / block_size;
    for b in 0..blocks {
        for bg in &block_gens {
            gens.push(embed_block(&field, n, b * block_size, bg));
        }
    }
    // scalar 2-part on a leftover coordinate
    if p == 2 && n % 2 == 1 {
        let t = p_part(q - 1, 2);
        let zeta = primitive_power(&field, t);
        let mut d = FqMatrix::identity(field.clone(), n);
        d.set(n - 1, n - 1, zeta);
        gens.push(d);
    }
    // wreathing: a Sylow p-subgroup of the symmetric group on the blocks
    for perm in sylow_of_symmetric(blocks, p) {
        let mut m = FqMatrix::identity(field.clone(), n);
        for b in 0..blocks {
            let target = perm[b];
            for r in 0..block_size {
                m.set(b * block_size + r, b * block_size + r, Field::ZERO);
                m.set(b * block_size + r, target * block_size + r, Field::ONE);
            }
        }
        gens.push(m);
    }

    let got = matrix_group_order(&gens, limits)?;
    if got != expected {
        return Err(Error::Incomplete(format!(
            "Sylow construction for GL({n},{q}) at p={p} built order {got}, expected {expected}"
        )));
    }
    Ok(gens)
}

/// An element of exact order `t` in the multiplicative group of GF(q).
fn primitive_power(field: &Arc<Field>, t: u64) -> Fq {
    // generator has code 1 (g^1)
    let g: Fq = 1;
    field.pow(g, (field.q() - 1) / t)
}

fn ext_primitive_power(ext: &Arc<Field>, t: u64) -> Fq {
    let g: Fq = 1;
    ext.pow(g, (ext.q() - 1) / t)
}

/// Matrix of multiplication by `element` on GF(q^d) viewed as the column
/// space over GF(q) with the polynomial basis 1, x, ..., x^(d-1).
fn multiplication_matrix(base: &Arc<Field>, ext: &Arc<Field>, element: Fq) -> FqMatrix {
    let q = base.q();
    let d = ext.k() as usize;
    FqMatrix::from_fn(base.clone(), d, d, |i, j| {
        // image of basis vector x^i
        let xi = ext.from_int(pow_u64(q, i as u64));
        let image = ext.mul(xi, element);
        let digits = digits_base(ext.to_int(image), q, d);
        base.from_int(digits[j])
    })
}

/// Matrix of the field automorphism a ↦ a^q of GF(q^2) over GF(q).
fn frobenius_matrix(base: &Arc<Field>, ext: &Arc<Field>) -> FqMatrix {
    let q = base.q();
    let d = ext.k() as usize;
    FqMatrix::from_fn(base.clone(), d, d, |i, j| {
        let xi = ext.from_int(pow_u64(q, i as u64));
        let image = ext.pow(xi, q);
        let digits = digits_base(ext.to_int(image), q, d);
        base.from_int(digits[j])
    })
}

fn pow_u64(base: u64, e: u64) -> u64 {
    let mut acc = 1;
    for _ in 0..e {
        acc *= base;
    }
    acc
}

fn digits_base(mut v: u64, base: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % base);
        v /= base;
    }
    out
}

fn embed_block(field: &Arc<Field>, n: usize, offset: usize, block: &FqMatrix) -> FqMatrix {
    let mut m = FqMatrix::identity(field.clone(), n);
    for i in 0..block.rows {
        for j in 0..block.cols {
            m.set(offset + i, offset + j, block.get(i, j));
        }
    }
    m
}

fn multiplicative_order(q: u64, p: u64) -> u64 {
    let mut acc = q % p;
    let mut d = 1;
    while acc != 1 {
        acc = acc * q % p;
        d += 1;
    }
    d
}

/// Generators of a Sylow p-subgroup of S_m as point images; the classic
/// iterated-wreath generators on each p-power block of the p-adic expansion.
pub fn sylow_of_symmetric(m: usize, p: u64) -> Vec<Vec<usize>> {
    let p = p as usize;
    let mut gens = Vec::new();
    let mut offset = 0;
    let mut remaining = m;
    // consume the largest p-power blocks first
    while remaining >= p {
        let mut size = 1;
        while size * p <= remaining {
            size *= p;
        }
        // iterated wreath on [offset, offset + size)
        let mut level = p;
        while level <= size {
            let mut images: Vec<usize> = (0..m).collect();
            for x in 0..level {
                images[offset + x] = offset + (x + level / p) % level;
            }
            gens.push(images);
            level *= p;
        }
        offset += size;
        remaining -= size;
    }
    gens
}

/// Builds the full verdict sheet for one (group, prime) pair. Never fails:
/// anything blocked by a capability bound or an incomplete search lands in
/// `errors` and in `unverified` verdicts.
pub fn analyze_group(
    name: &str,
    builder: Option<&str>,
    group: &PermGroup,
    p: u64,
    limits: &Limits,
    seed: u64,
) -> AnalysisReport {
    let order = group.order();
    let order_p_part = p_part(order, p);
    let pc = prime_class(p);
    let mut report = AnalysisReport {
        name: name.to_string(),
        builder: builder.map(|b| b.to_string()),
        degree: group.degree() as u64,
        order,
        p,
        order_p_part,
        p_class: pc.label().to_string(),
        o_p_order: None,
        frattini_order: None,
        o_p_trivial: None,
        frattini_trivial: None,
        x_order: None,
        xc_order: None,
        out_p_part: None,
        bound_generic: None,
        bound_abelian: None,
        m_s: None,
        abs_simple_dims: None,
        splitting_field_degree: None,
        simples: None,
        p_regular_classes: None,
        abs_irreducible_classes: None,
        classes: None,
        euler_poset: None,
        euler_elementary_abelian: None,
        euler_bouc: None,
        steinberg_nonzero: None,
        steinberg_values: None,
        defect_zero: None,
        verdicts: Vec::new(),
        errors: Vec::new(),
    };

    // conjugacy classes
    match group.conjugacy_classes(limits) {
        Ok(classes) => {
            report.p_regular_classes =
                Some(classes.iter().filter(|c| c.is_p_regular(p)).count() as u64);
            report.classes = Some(
                classes
                    .iter()
                    .map(|c| ClassDescriptor {
                        representative: c.representative.cycle_string(),
                        size: c.size,
                        element_order: c.element_order,
                        p_regular: c.is_p_regular(p),
                    })
                    .collect(),
            );
        }
        Err(e) => report.errors.push(format!("classes: {e}")),
    }

    // normal structure flags
    let o_p_order = match group.p_core(p, limits) {
        Ok(core) => {
            report.o_p_order = Some(core.order());
            report.o_p_trivial = Some(core.order() == 1);
            Some(core.order())
        }
        Err(e) => {
            report.errors.push(format!("p-core: {e}"));
            None
        }
    };
    let frattini_order = match group.frattini(limits) {
        Ok(phi) => {
            report.frattini_order = Some(phi.order());
            report.frattini_trivial = Some(phi.order() == 1);
            Some(phi.order())
        }
        Err(e) => {
            report.errors.push(format!("frattini: {e}"));
            None
        }
    };
    let hyps = match (o_p_order, frattini_order) {
        (Some(1), Some(1)) => Some(true),
        (Some(_), Some(_)) => Some(false),
        _ => None,
    };

    // layer structure and the two bounds
    if hyps == Some(true) {
        match layer_data(group, p, limits) {
            Ok(data) => {
                report.x_order = Some(data.x_order);
                report.xc_order = Some(data.xc_order);
                report.out_p_part = Some(data.out_p_part);
                report.bound_generic = Some(order_p_part / data.out_p_part);
            }
            Err(e) => report.errors.push(format!("layer: {e}")),
        }
        if pc != PrimeClass::Generic {
            match abelian_subgroup_bound(group, p, limits) {
                Ok(b) => report.bound_abelian = Some(b),
                Err(e) => report.errors.push(format!("abelian bound: {e}")),
            }
        }
    }

    // simple modules
    match meataxe::simple_modules(group, p, limits, seed) {
        Ok((simples, field_degree)) => {
            let dims = meataxe_dims(&simples);
            report.m_s = dims.last().copied();
            report.abs_irreducible_classes =
                Some(simples.iter().map(|s| s.endo_degree).sum::<u64>());
            report.defect_zero = Some(dims.iter().any(|&d| d % order_p_part == 0));
            report.splitting_field_degree = Some(field_degree);
            report.simples = Some(
                simples
                    .iter()
                    .map(|s| SimpleFingerprint {
                        dim: s.dim,
                        endo_degree: s.endo_degree,
                        abs_dim: s.abs_dim(),
                        traces: s.traces.clone(),
                    })
                    .collect(),
            );
            report.abs_simple_dims = Some(dims);
        }
        Err(e) => report.errors.push(format!("simple modules: {e}")),
    }

    // complexes
    let mut euler = [None, None, None];
    let mut characters = Vec::new();
    for (i, kind) in ComplexKind::ALL.iter().enumerate() {
        match pcomplex::steinberg_character(group, p, *kind, limits) {
            Ok(ch) => {
                let chi = -ch.value_at_identity();
                euler[i] = Some(chi);
                characters.push(Some(ch));
            }
            Err(e) => {
                report.errors.push(format!("complex {}: {e}", kind.label()));
                characters.push(None);
            }
        }
    }
    report.euler_poset = euler[0];
    report.euler_elementary_abelian = euler[1];
    report.euler_bouc = euler[2];
    if let Some(Some(ch)) = characters.first() {
        report.steinberg_nonzero = Some(!ch.is_zero());
        report.steinberg_values = Some(ch.values.clone());
    }

    build_verdicts(&mut report, group, p, pc, hyps, &characters, limits, seed);
    report
}

fn meataxe_dims(simples: &[meataxe::SimpleModule]) -> Vec<u64> {
    let mut dims = Vec::new();
    for s in simples {
        for _ in 0..s.endo_degree {
            dims.push(s.abs_dim());
        }
    }
    dims.sort_unstable();
    dims
}

#[allow(clippy::too_many_arguments)]
fn build_verdicts(
    report: &mut AnalysisReport,
    group: &PermGroup,
    p: u64,
    pc: PrimeClass,
    hyps: Option<bool>,
    characters: &[Option<pcomplex::VirtualCharacter>],
    limits: &Limits,
    seed: u64,
) {
    let order_p_part = report.order_p_part;
    let m_s = report.m_s;
    let push = |report: &mut AnalysisReport, claim: &str, status: VerdictStatus, detail: String| {
        report.verdicts.push(Verdict {
            claim: claim.to_string(),
            status,
            detail,
        });
    };
    let compare = |m_s: Option<u64>, bound: Option<u64>| -> (VerdictStatus, String) {
        match (m_s, bound) {
            (Some(m), Some(b)) if m >= b => (VerdictStatus::Pass, format!("m_s={m} >= {b}")),
            (Some(m), Some(b)) => (VerdictStatus::Fail, format!("m_s={m} < {b}")),
            _ => (
                VerdictStatus::Unverified,
                "m_s or the bound could not be computed".into(),
            ),
        }
    };

    // (a) generic-prime lower bound
    if pc == PrimeClass::Generic {
        match hyps {
            Some(true) => {
                let (status, detail) = compare(m_s, report.bound_generic);
                push(report, "generic_prime_bound", status, detail);
            }
            Some(false) => {}
            None => push(
                report,
                "generic_prime_bound",
                VerdictStatus::Unverified,
                "hypotheses (trivial p-core and Frattini subgroup) could not be established"
                    .into(),
            ),
        }
    }

    // (b) abelian-subgroup lower bound for p = 2 and Mersenne primes
    if pc != PrimeClass::Generic {
        match hyps {
            Some(true) => {
                let (status, detail) = compare(m_s, report.bound_abelian);
                push(report, "abelian_subgroup_bound", status, detail);
            }
            Some(false) => {}
            None => push(
                report,
                "abelian_subgroup_bound",
                VerdictStatus::Unverified,
                "hypotheses (trivial p-core and Frattini subgroup) could not be established"
                    .into(),
            ),
        }
    }

    // (c) when the generalized Fitting subgroup is a p'-group and p is
    // generic, m_s is at least the full Sylow order
    if pc == PrimeClass::Generic {
        match fstar_is_p_prime(group, p, hyps, limits) {
            Some(true) => {
                let (status, detail) = compare(m_s, Some(order_p_part));
                push(report, "pprime_fstar_sylow_bound", status, detail);
            }
            Some(false) => {}
            None => push(
                report,
                "pprime_fstar_sylow_bound",
                VerdictStatus::Unverified,
                "could not decide whether F*(G) is a p'-group".into(),
            ),
        }
    }

    // (d) nonabelian simple groups: m_s at least the order of some maximal
    // abelian p-subgroup
    match group.is_simple_nonabelian(limits) {
        Ok(true) => {
            let verdict = match maximal_abelian_p_orders(group, p, limits) {
                Ok(orders) => {
                    let min = orders.iter().min().copied();
                    compare(m_s, min)
                }
                Err(e) => (VerdictStatus::Unverified, format!("{e}")),
            };
            push(report, "simple_group_abelian_bound", verdict.0, verdict.1);
        }
        Ok(false) => {}
        Err(e) => push(
            report,
            "simple_group_abelian_bound",
            VerdictStatus::Unverified,
            format!("simplicity test: {e}"),
        ),
    }

    // (e) p-solvable groups with trivial p-core: m_s at least the maximal
    // abelian p-subgroup order
    if report.o_p_trivial == Some(true) {
        match group.is_p_solvable(p, limits) {
            Ok(true) => {
                let verdict = match max_abelian_p_subgroup_order(group, p, limits) {
                    Ok(a) => compare(m_s, Some(a)),
                    Err(e) => (VerdictStatus::Unverified, format!("{e}")),
                };
                push(report, "psolvable_abelian_bound", verdict.0, verdict.1);
            }
            Ok(false) => {}
            Err(e) => push(
                report,
                "psolvable_abelian_bound",
                VerdictStatus::Unverified,
                format!("p-solvability test: {e}"),
            ),
        }
    }

    // vanishing when the p-core is nontrivial
    if report.o_p_trivial == Some(false) {
        match &characters[0] {
            Some(ch) => {
                let status = if ch.is_zero() {
                    VerdictStatus::Pass
                } else {
                    VerdictStatus::Fail
                };
                push(
                    report,
                    "core_vanishing",
                    status,
                    "nontrivial p-core forces the zero virtual character".into(),
                );
            }
            None => push(
                report,
                "core_vanishing",
                VerdictStatus::Unverified,
                "character not computed".into(),
            ),
        }
    }

    // projectivity consequences: zero on p-singular classes, identity value
    // divisible by |G|_p
    if let Some(ch) = &characters[0] {
        let singular_ok = ch
            .classes
            .iter()
            .zip(&ch.values)
            .all(|(c, &v)| c.is_p_regular(p) || v == 0);
        let identity_ok = ch.value_at_identity().rem_euclid(order_p_part as i64) == 0;
        let status = if singular_ok && identity_ok {
            VerdictStatus::Pass
        } else {
            VerdictStatus::Fail
        };
        push(
            report,
            "projectivity_consequences",
            status,
            format!(
                "p-singular values zero: {singular_ok}; identity value {} divisible by {}",
                ch.value_at_identity(),
                order_p_part
            ),
        );
    }

    // the three homotopy-equivalent complexes must agree value by value
    match (&characters[0], &characters[1], &characters[2]) {
        (Some(a), Some(b), Some(c)) => {
            let agree = a.values == b.values && b.values == c.values;
            push(
                report,
                "complex_agreement",
                if agree {
                    VerdictStatus::Pass
                } else {
                    VerdictStatus::Fail
                },
                format!(
                    "poset {:?} / elementary abelian {:?} / radical {:?}",
                    a.values, b.values, c.values
                ),
            );
        }
        _ => push(
            report,
            "complex_agreement",
            VerdictStatus::Unverified,
            "not every complex was computed".into(),
        ),
    }

    // p-solvable with trivial core: nonzero reduced Euler characteristic
    if report.o_p_trivial == Some(true) {
        if let Ok(true) = group.is_p_solvable(p, limits) {
            let status = match report.euler_poset {
                Some(chi) if chi != 0 => VerdictStatus::Pass,
                Some(_) => VerdictStatus::Fail,
                None => VerdictStatus::Unverified,
            };
            push(
                report,
                "psolvable_euler_nonzero",
                status,
                format!("reduced Euler characteristic {:?}", report.euler_poset),
            );
        }
    }

    // class counting: absolutely irreducible classes = p-regular classes
    match (report.abs_irreducible_classes, report.p_regular_classes) {
        (Some(a), Some(b)) => push(
            report,
            "class_counting",
            if a == b {
                VerdictStatus::Pass
            } else {
                VerdictStatus::Fail
            },
            format!("{a} absolutely irreducible classes vs {b} p-regular classes"),
        ),
        _ => push(
            report,
            "class_counting",
            VerdictStatus::Unverified,
            "simple modules or classes missing".into(),
        ),
    }

    // reduction: m_s is invariant under factoring out the p-core
    if report.o_p_trivial == Some(false) {
        let verdict = (|| -> Result<(VerdictStatus, String)> {
            let core = group.p_core(p, limits)?;
            let quotient = group.quotient(&core, limits)?;
            let quotient_ms = meataxe::max_simple_dimension(&quotient, p, limits, seed)?;
            match m_s {
                Some(m) if m == quotient_ms => Ok((
                    VerdictStatus::Pass,
                    format!("m_s(G)={m} equals m_s(G/O_p)={quotient_ms}"),
                )),
                Some(m) => Ok((
                    VerdictStatus::Fail,
                    format!("m_s(G)={m} differs from m_s(G/O_p)={quotient_ms}"),
                )),
                None => Ok((VerdictStatus::Unverified, "m_s missing".into())),
            }
        })();
        match verdict {
            Ok((status, detail)) => push(report, "core_reduction", status, detail),
            Err(e) => push(
                report,
                "core_reduction",
                VerdictStatus::Unverified,
                format!("{e}"),
            ),
        }
    }
}

/// Tri-state: is the generalized Fitting subgroup a p'-group?
/// Exact for solvable groups (F* = F) and, when the p-core and the Frattini
/// subgroup are trivial, via the socle decomposition. The p-core being
/// nontrivial settles it negatively outright.
fn fstar_is_p_prime(
    group: &PermGroup,
    p: u64,
    hyps: Option<bool>,
    limits: &Limits,
) -> Option<bool> {
    let core = group.p_core(p, limits).ok()?;
    if core.order() > 1 {
        return Some(false);
    }
    if let Ok(true) = group.is_solvable(limits) {
        let f = group.fitting_subgroup(limits).ok()?;
        return Some(f.order() % p != 0);
    }
    if hyps == Some(true) {
        let f = group.fitting_subgroup(limits).ok()?;
        if f.order() % p == 0 {
            return Some(false);
        }
        let components = group.socle_components(limits).ok()?;
        return Some(components.iter().all(|c| c.order() % p != 0));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn grp(gens: &[&str], degree: usize) -> PermGroup {
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s, degree).unwrap())
            .collect();
        PermGroup::from_generators(perms).unwrap()
    }

    fn a5() -> PermGroup {
        grp(&["(0 1 2 3 4)", "(0 1 2)"], 5)
    }

    #[test]
    fn mersenne_detection() {
        assert!(is_mersenne_prime(7));
        assert!(is_mersenne_prime(3));
        assert!(is_mersenne_prime(31));
        assert!(!is_mersenne_prime(5));
        assert!(!is_mersenne_prime(2));
        assert_eq!(prime_class(2), PrimeClass::Two);
        assert_eq!(prime_class(3), PrimeClass::Mersenne);
        assert_eq!(prime_class(5), PrimeClass::Generic);
    }

    #[test]
    fn generic_bound_for_a5_at_5() {
        let limits = Limits::default();
        assert_eq!(generic_prime_bound(&a5(), 5, &limits).unwrap(), 5);
    }

    #[test]
    fn abelian_bound_examples() {
        let limits = Limits::default();
        // A_5 at 2: X = A_5, C = 1, maximal abelian 2-subgroups are Klein fours
        assert_eq!(abelian_subgroup_bound(&a5(), 2, &limits).unwrap(), 4);
        // S_3 at 2: X = 1, C = G, Sylow C_2 is maximal abelian
        let s3 = grp(&["(0 1)", "(0 1 2)"], 3);
        assert_eq!(abelian_subgroup_bound(&s3, 2, &limits).unwrap(), 2);
    }

    #[test]
    fn bound_preconditions_are_checked() {
        let limits = Limits::default();
        let s4 = grp(&["(0 1)", "(0 1 2 3)"], 4);
        // O_2(S_4) = V_4 is nontrivial
        assert!(matches!(
            abelian_subgroup_bound(&s4, 2, &limits),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sylow_of_symmetric_orders() {
        // |Syl_2(S_4)| = 8, |Syl_3(S_3)| = 3, |Syl_2(S_6)| = 16
        for (m, p, expected) in [(4usize, 2u64, 8u64), (3, 3, 3), (6, 2, 16), (2, 5, 1)] {
            let gens = sylow_of_symmetric(m, p);
            // close the permutation group
            let perms: Vec<Permutation> = gens
                .iter()
                .map(|im| {
                    Permutation::from_images(im.iter().map(|&x| x as u32).collect()).unwrap()
                })
                .collect();
            let order = if perms.is_empty() {
                1
            } else {
                PermGroup::from_generators(perms).unwrap().order()
            };
            assert_eq!(order, expected, "S_{m} at p={p}");
        }
    }

    #[test]
    fn gl_sylow_orders() {
        let limits = Limits::default();
        // |GL(4,2)|_5 = 5
        let g = gl_sylow_generators(4, 2, 5, &limits).unwrap();
        assert_eq!(matrix_group_order(&g, &limits).unwrap(), 5);
        // |GL(2,2)|_3 = 3
        let g = gl_sylow_generators(2, 2, 3, &limits).unwrap();
        assert_eq!(matrix_group_order(&g, &limits).unwrap(), 3);
        // |GL(2,3)|_2 = 16
        let g = gl_sylow_generators(2, 3, 2, &limits).unwrap();
        assert_eq!(matrix_group_order(&g, &limits).unwrap(), 16);
    }

    #[test]
    fn regular_orbit_counts() {
        let limits = Limits::default();
        // C_5 inside GL(4,2) on F_2^4: three free orbits on 15 nonzero vectors
        let g = gl_sylow_generators(4, 2, 5, &limits).unwrap();
        assert_eq!(count_regular_orbits(&g, 4, &limits).unwrap(), 3);
        // C_3 inside GL(2,2): a single free orbit on the 3 nonzero vectors
        let g = gl_sylow_generators(2, 2, 3, &limits).unwrap();
        assert_eq!(count_regular_orbits(&g, 2, &limits).unwrap(), 1);
        // trivial group on F_2^1: both singleton orbits are regular
        let field = Field::new(2, 1, &limits).unwrap();
        let id = FqMatrix::identity(field, 1);
        assert_eq!(count_regular_orbits(&[id], 1, &limits).unwrap(), 2);
    }

    #[test]
    fn analyze_a5_at_2_passes() {
        let limits = Limits::default();
        let report = analyze_group("a5", None, &a5(), 2, &limits, 1);
        assert_eq!(report.m_s, Some(4));
        assert_eq!(report.bound_abelian, Some(4));
        assert!(report.errors.is_empty(), "{:?}", report.errors);
        assert!(!report.has_fail(), "{:?}", report.verdicts);
        assert_eq!(report.steinberg_nonzero, Some(true));
    }
}
