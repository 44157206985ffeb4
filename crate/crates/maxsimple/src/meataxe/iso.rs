//! Isomorphism testing between irreducible modules via standard bases, and
//! endomorphism-field degrees by counting self-intertwiners.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gf::{Field, Fq};
use crate::matrix::{EchelonSpace, FqMatrix, RowAction};
use crate::poly::{factor, Poly};

use super::chop::minimal_polynomial;
use super::{incomplete, GModule};

const ROUND_ATTEMPTS: usize = 24;
const ENUM_CAP: u64 = 1 << 16;

/// Replays the pseudo-random algebra element construction from a seed, so
/// the same recipe can be evaluated in two modules.
fn replay_element(module: &GModule, seed: u64) -> FqMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    module.random_algebra_element(&mut rng)
}

/// Finds a seed and an irreducible factor f of the minimal polynomial of the
/// replayed element with nullity(f(θ)) = deg f. Small degrees are strongly
/// preferred: the null space is later enumerated projectively, which costs
/// on the order of q^(deg f) vectors.
fn find_minimal_nullity_element(module: &GModule, rng: &mut ChaCha8Rng) -> Result<(u64, Poly)> {
    let f = &module.field;
    let q = f.q();
    // the largest factor degree whose null space stays enumerable
    let mut max_degree = 0usize;
    let mut size = 1u64;
    while size.saturating_mul(q) <= ENUM_CAP && max_degree < module.dim {
        size = size.saturating_mul(q);
        max_degree += 1;
    }
    let mut degree_cap = 1usize;
    while degree_cap <= max_degree {
        for _ in 0..ROUND_ATTEMPTS {
            let seed: u64 = rng.gen();
            let theta = replay_element(module, seed);
            let mp = minimal_polynomial(&theta);
            if mp.deg_or_zero() == 0 {
                continue;
            }
            let mut irred: Vec<Poly> =
                factor(f, &mp, rng)?.into_iter().map(|(p, _)| p).collect();
            irred.sort_by_key(|p| p.coeffs.len());
            for fp in irred {
                if fp.deg_or_zero() > degree_cap {
                    break;
                }
                let n = theta.eval_poly(&fp);
                let nullity = n.transpose().nullspace().rows;
                if nullity == fp.deg_or_zero() {
                    return Ok((seed, fp));
                }
            }
        }
        degree_cap *= 2;
    }
    Err(incomplete(
        "no algebra element of small minimal nullity found; cannot compare modules",
    ))
}

/// Deterministic standard basis grown from a seed vector: raw images under
/// the generators, kept in discovery order. For an irreducible module any
/// nonzero seed completes to a full basis.
fn standard_basis(module: &GModule, seed_vec: &[Fq]) -> Option<FqMatrix> {
    let f = module.field.clone();
    let n = module.dim;
    let actions: Vec<RowAction> = module.action.iter().map(RowAction::prepare).collect();
    let mut shadow = EchelonSpace::new(f.clone(), n);
    let mut raws: Vec<Vec<Fq>> = Vec::new();
    if shadow.insert(seed_vec.to_vec()) {
        raws.push(seed_vec.to_vec());
    } else {
        return None;
    }
    let mut at = 0;
    while at < raws.len() && raws.len() < n {
        let v = raws[at].clone();
        at += 1;
        for action in &actions {
            let w = action.apply(&v);
            if shadow.insert(w.clone()) {
                raws.push(w);
                if raws.len() == n {
                    break;
                }
            }
        }
    }
    if raws.len() == n {
        Some(FqMatrix::from_rows(f, raws, n))
    } else {
        None
    }
}

/// Action matrices rewritten in a standard basis: S·A·S⁻¹ per generator.
fn action_in_basis(module: &GModule, basis: &FqMatrix) -> Option<Vec<FqMatrix>> {
    let inv = basis.inverse()?;
    Some(
        module
            .action
            .iter()
            .map(|a| basis.mul(a).mul(&inv))
            .collect(),
    )
}

/// One representative per projective point of the row space of `rows`
/// (standard bases are invariant under scaling the seed, so one vector per
/// line suffices), in deterministic odometer order: the leading coefficient
/// of each coefficient tuple is normalized to one.
fn row_space_lines(field: &Field, rows: &FqMatrix) -> Result<Vec<Vec<Fq>>> {
    let d = rows.rows;
    let q = field.q();
    let total = q.checked_pow(d as u32).filter(|&t| t <= ENUM_CAP);
    let Some(_) = total else {
        return Err(incomplete(
            "null space too large to enumerate for the standard-basis comparison",
        ));
    };
    let mut out = Vec::new();
    // coefficient tuples with leading coefficient one: choose the position
    // `lead` of the first nonzero coefficient, fix it to 1, enumerate the rest
    for lead in 0..d {
        let free = d - lead - 1;
        let count = q.pow(free as u32);
        for tuple in 0..count {
            let mut v: Vec<Fq> = rows.row(lead).to_vec();
            let mut t = tuple;
            for r in lead + 1..d {
                let c = field.from_int(t % q);
                t /= q;
                if field.is_zero(c) {
                    continue;
                }
                for (x, &rv) in v.iter_mut().zip(rows.row(r)) {
                    x_add_scaled(field, x, rv, c);
                }
            }
            out.push(v);
        }
    }
    Ok(out)
}

#[inline]
fn x_add_scaled(f: &Field, x: &mut Fq, v: Fq, c: Fq) {
    if !f.is_zero(v) {
        *x = f.add(*x, f.mul(c, v));
    }
}

/// Standard-basis isomorphism test for two certified-irreducible modules of
/// equal dimension over the same field.
pub fn modules_isomorphic(a: &GModule, b: &GModule, rng: &mut ChaCha8Rng) -> Result<bool> {
    if a.dim != b.dim || a.field.spec() != b.field.spec() || a.action.len() != b.action.len() {
        return Ok(false);
    }
    if a.dim == 1 {
        // 1-dimensional: equal scalars per generator
        return Ok(a
            .action
            .iter()
            .zip(&b.action)
            .all(|(x, y)| x.get(0, 0) == y.get(0, 0)));
    }
    let f = a.field.clone();
    let (seed, fp) = find_minimal_nullity_element(a, rng)?;
    let theta_a = replay_element(a, seed);
    let theta_b = replay_element(b, seed);
    let na = theta_a.eval_poly(&fp);
    let nb = theta_b.eval_poly(&fp);
    let null_a = na.transpose().nullspace();
    let null_b = nb.transpose().nullspace();
    if null_b.rows != null_a.rows {
        return Ok(false);
    }
    let Some(basis_a) = standard_basis(a, null_a.row(0)) else {
        return Err(incomplete("standard basis did not complete on the left"));
    };
    let Some(ref_action) = action_in_basis(a, &basis_a) else {
        return Err(incomplete("standard basis not invertible"));
    };
    for v in row_space_lines(&f, &null_b)? {
        let Some(basis_b) = standard_basis(b, &v) else {
            continue;
        };
        let Some(b_action) = action_in_basis(b, &basis_b) else {
            continue;
        };
        if ref_action == b_action {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Endomorphism-field degree e of an irreducible module: the number of
/// nonzero self-intertwiners is q^e − 1, and each corresponds to a null
/// vector whose standard basis reproduces the same action matrices.
pub fn endo_degree(module: &GModule, rng: &mut ChaCha8Rng) -> Result<u64> {
    if module.dim == 1 || module.action.is_empty() {
        return Ok(1);
    }
    let f = module.field.clone();
    let (seed, fp) = find_minimal_nullity_element(module, rng)?;
    let theta = replay_element(module, seed);
    let n = theta.eval_poly(&fp);
    let null = n.transpose().nullspace();
    let Some(basis) = standard_basis(module, null.row(0)) else {
        return Err(incomplete("standard basis did not complete"));
    };
    let Some(ref_action) = action_in_basis(module, &basis) else {
        return Err(incomplete("standard basis not invertible"));
    };
    let mut line_matches = 0u64;
    for v in row_space_lines(&f, &null)? {
        let Some(basis_v) = standard_basis(module, &v) else {
            continue;
        };
        let Some(v_action) = action_in_basis(module, &basis_v) else {
            continue;
        };
        if ref_action == v_action {
            line_matches += 1;
        }
    }
    // each matching projective line carries q − 1 nonzero intertwiners,
    // so line_matches · (q − 1) + 1 = |End| = q^e
    let q = f.q();
    let size = line_matches * (q - 1) + 1;
    let mut e = 0u64;
    let mut acc = 1u64;
    while acc < size {
        acc *= q;
        e += 1;
    }
    if acc != size || e == 0 {
        return Err(incomplete(format!(
            "self-intertwiner count {} is not of the form q^e - 1",
            size - 1
        )));
    }
    if !(module.dim as u64).is_multiple_of(e) {
        return Err(incomplete(
            "endomorphism degree does not divide the dimension",
        ));
    }
    Ok(e)
}
