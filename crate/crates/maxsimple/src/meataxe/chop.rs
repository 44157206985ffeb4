//! Chopping a module into composition factors.
//!
//! The splitting engine is the standard Norton test: take a pseudo-random
//! algebra element θ, an irreducible factor f of its minimal polynomial, and
//! N = f(θ). Null vectors of N either spin to a proper submodule (split) or,
//! when the nullity equals deg f, certify irreducibility together with one
//! dual-side spin.

use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::gf::{Field, Fq};
use crate::matrix::{spin, EchelonSpace, FqMatrix, RowAction};
use crate::poly::{factor, Poly};

use super::{incomplete, split_along, transposed_action, GModule};

/// A composition factor and its multiplicity; isomorphic factors are merged.
pub struct ChopFactor {
    pub module: GModule,
    pub multiplicity: u32,
}

/// Composition factors of a module, isomorphism classes merged, sorted by
/// (dimension, trace fingerprint). Σ dim·multiplicity = dim(module).
pub fn chop(module: &GModule, rng: &mut ChaCha8Rng) -> Result<Vec<ChopFactor>> {
    let mut factors: Vec<GModule> = Vec::new();
    chop_rec(module.clone(), rng, &mut factors)?;
    debug_assert_eq!(
        factors.iter().map(|f| f.dim).sum::<usize>(),
        module.dim,
        "composition factors must account for the whole dimension"
    );
    merge_isomorphic(factors, rng)
}

fn chop_rec(module: GModule, rng: &mut ChaCha8Rng, out: &mut Vec<GModule>) -> Result<()> {
    if module.dim == 0 {
        return Ok(());
    }
    if module.dim == 1 {
        out.push(module);
        return Ok(());
    }
    if module.action.is_empty() {
        // trivial group: every line is a submodule
        let f = module.field.clone();
        for _ in 0..module.dim {
            out.push(GModule {
                field: f.clone(),
                dim: 1,
                action: Vec::new(),
            });
        }
        return Ok(());
    }
    match examine(&module, rng)? {
        Examined::Irreducible => {
            out.push(module);
            Ok(())
        }
        Examined::Split(basis) => {
            let (sub, quot) = split_along(&module, &basis);
            chop_rec(sub, rng, out)?;
            chop_rec(quot, rng, out)
        }
    }
}

enum Examined {
    Irreducible,
    Split(FqMatrix),
}

const MAX_ATTEMPTS: usize = 64;

fn examine(module: &GModule, rng: &mut ChaCha8Rng) -> Result<Examined> {
    let f = module.field.clone();
    let n = module.dim;
    let transposed = transposed_action(module);
    for attempt in 0..MAX_ATTEMPTS {
        let theta = module.random_algebra_element(rng);
        let minpoly = minimal_polynomial(&theta);
        if minpoly.deg_or_zero() == 0 {
            continue;
        }
        let mut irred_factors: Vec<Poly> = factor(&f, &minpoly, rng)?
            .into_iter()
            .map(|(p, _)| p)
            .collect();
        irred_factors.sort_by_key(|p| p.coeffs.len());
        // degree shield: early attempts only evaluate cheap factors
        let degree_cap = 4usize << (attempt / 8);
        for fpoly in &irred_factors {
            let d = fpoly.deg_or_zero();
            if d > degree_cap {
                continue;
            }
            let nmat = theta.eval_poly(fpoly);
            // module-side null vectors: v with v·N = 0
            let null_rows = nmat.transpose().nullspace();
            if null_rows.rows == 0 {
                continue;
            }
            for v in 0..null_rows.rows {
                let seed = FqMatrix::from_rows(
                    f.clone(),
                    vec![null_rows.row(v).to_vec()],
                    n,
                );
                let basis = spin(&seed, &module.action);
                if basis.rows < n {
                    return Ok(Examined::Split(basis));
                }
            }
            if null_rows.rows == d {
                // minimal nullity: one dual-side spin settles it
                let dual_null = nmat.nullspace();
                let seed = FqMatrix::from_rows(
                    f.clone(),
                    vec![dual_null.row(0).to_vec()],
                    n,
                );
                let dual_basis = spin(&seed, &transposed);
                if dual_basis.rows < n {
                    // the annihilator of the dual-invariant subspace is a
                    // proper submodule
                    let perp = dual_basis.nullspace();
                    let (echelon, _, _) = perp.rref();
                    return Ok(Examined::Split(echelon));
                }
                return Ok(Examined::Irreducible);
            }
        }
    }
    Err(incomplete(format!(
        "could not certify or split a module of dimension {n} after {MAX_ATTEMPTS} attempts"
    )))
}

/// Minimal polynomial via Krylov chains: the lcm of the local annihilators
/// of basis vectors, stopping once the checked subspace is everything.
pub(crate) fn minimal_polynomial(theta: &FqMatrix) -> Poly {
    let f = theta.field.clone();
    let n = theta.rows;
    let action = RowAction::prepare(theta);
    let mut checked = EchelonSpace::new(f.clone(), n);
    let mut minpoly = Poly::one();

    for start in 0..n {
        if checked.dim() == n {
            break;
        }
        let mut e = vec![Field::ZERO; n];
        e[start] = Field::ONE;
        if checked.contains(&e) {
            continue;
        }
        // raw Krylov chain from e, with records over the raw vectors
        let mut raws: Vec<Vec<Fq>> = vec![e.clone()];
        let mut rows: Vec<Vec<Fq>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        let mut recs: Vec<Vec<Fq>> = Vec::new();
        let local = loop {
            let d = raws.len() - 1;
            let mut w = raws[d].clone();
            let mut rec = vec![Field::ZERO; d + 1];
            rec[d] = Field::ONE;
            for ((row, &p), rrec) in rows.iter().zip(&pivots).zip(&recs) {
                let c = w[p];
                if f.is_zero(c) {
                    continue;
                }
                for (x, &rv) in w.iter_mut().zip(row) {
                    if !f.is_zero(rv) {
                        *x = f.sub(*x, f.mul(c, rv));
                    }
                }
                for (x, &rv) in rec.iter_mut().zip(rrec) {
                    if !f.is_zero(rv) {
                        *x = f.sub(*x, f.mul(c, rv));
                    }
                }
            }
            match w.iter().position(|&c| !f.is_zero(c)) {
                None => {
                    // dependence: Σ rec[k]·raw_k = 0 with rec[d] = 1
                    break Poly::from_codes(rec);
                }
                Some(pivot) => {
                    let inv = f.inv(w[pivot]);
                    for x in w.iter_mut() {
                        if !f.is_zero(*x) {
                            *x = f.mul(*x, inv);
                        }
                    }
                    for x in rec.iter_mut() {
                        if !f.is_zero(*x) {
                            *x = f.mul(*x, inv);
                        }
                    }
                    let mut rec_full = rec;
                    rec_full.resize(n + 1, Field::ZERO);
                    rows.push(w);
                    pivots.push(pivot);
                    recs.push(rec_full);
                    let next = action.apply(&raws[d]);
                    raws.push(next);
                }
            }
        };
        let g = minpoly.gcd(&f, &local);
        minpoly = minpoly.mul(&f, &local).div_exact(&f, &g);
        for r in raws {
            checked.insert(r);
        }
    }
    minpoly.monic(&f)
}

/// Trace fingerprint over short deterministic words; equal for isomorphic
/// modules, cheap to compare.
pub(crate) fn word_fingerprint(module: &GModule) -> Vec<u64> {
    let f = &module.field;
    let k = module.action.len();
    let mut out = vec![module.dim as u64];
    for a in &module.action {
        out.push(f.to_int(a.trace()));
    }
    for i in 0..k {
        for j in 0..k {
            out.push(f.to_int(module.action[i].mul(&module.action[j]).trace()));
        }
    }
    out
}

fn merge_isomorphic(
    factors: Vec<GModule>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ChopFactor>> {
    let mut merged: Vec<(GModule, Vec<u64>, u32)> = Vec::new();
    'next: for fac in factors {
        let fp = word_fingerprint(&fac);
        for (rep, rep_fp, mult) in merged.iter_mut() {
            if rep.dim == fac.dim
                && *rep_fp == fp
                && super::iso::modules_isomorphic(rep, &fac, rng)?
            {
                *mult += 1;
                continue 'next;
            }
        }
        merged.push((fac, fp, 1));
    }
    merged.sort_by(|a, b| (a.0.dim, &a.1).cmp(&(b.0.dim, &b.1)));
    Ok(merged
        .into_iter()
        .map(|(module, _, multiplicity)| ChopFactor {
            module,
            multiplicity,
        })
        .collect())
}
