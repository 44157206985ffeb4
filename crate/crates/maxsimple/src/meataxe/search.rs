//! The simple-module search: chop the natural permutation module, then chop
//! tensor products of found simples (smallest first), enlarging the ground
//! field whenever a factor with endomorphism degree above 1 appears, until
//! the number of absolutely irreducible classes matches the number of
//! p-regular conjugacy classes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::group::PermGroup;
use crate::limits::{is_prime, lcm_u64, p_part, Limits};

use super::chop::chop;
use super::iso::{endo_degree, modules_isomorphic};
use super::GModule;

/// One isomorphism class of simple modules over the working ground field.
pub struct SimpleModule {
    pub module: GModule,
    pub dim: u64,
    pub endo_degree: u64,
    /// traces (as integer codes) at the p-regular class representatives
    pub traces: Vec<u64>,
    /// tensor generation at which the class first appeared
    pub depth: u32,
}

impl SimpleModule {
    pub fn abs_dim(&self) -> u64 {
        self.dim / self.endo_degree
    }
}

enum Outcome {
    Complete(Vec<SimpleModule>),
    NeedLargerField(u64),
}

/// All simple modules over a ground field large enough to split them, plus
/// the extension degree that sufficed.
pub fn simple_modules(
    group: &PermGroup,
    p: u64,
    limits: &Limits,
    seed: u64,
) -> Result<(Vec<SimpleModule>, u32)> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let classes = group.class_data(limits)?;
    let table = group.elements(limits)?;
    let target: u64 = classes
        .classes
        .iter()
        .filter(|c| c.is_p_regular(p))
        .count() as u64;
    let rep_words: Vec<Vec<u16>> = classes
        .classes
        .iter()
        .filter(|c| c.is_p_regular(p))
        .map(|c| table.word(table.id_of(&c.representative).expect("rep in table")))
        .collect();

    let mut field_degree: u32 = 1;
    loop {
        match search_over_field(group, p, field_degree, target, &rep_words, limits, seed)? {
            Outcome::Complete(simples) => return Ok((simples, field_degree)),
            Outcome::NeedLargerField(e) => {
                field_degree = field_degree
                    .checked_mul(e as u32)
                    .ok_or_else(|| Error::Incomplete("field enlargement overflow".into()))?;
                // the field constructor enforces the size bound
            }
        }
    }
}

fn search_over_field(
    group: &PermGroup,
    p: u64,
    field_degree: u32,
    target: u64,
    rep_words: &[Vec<u16>],
    limits: &Limits,
    seed: u64,
) -> Result<Outcome> {
    let field = Field::new(p, field_degree, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(
        seed ^ (field_degree as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
    );
    let mut found: Vec<SimpleModule> = Vec::new();
    let mut pending_enlargement: u64 = 1;

    let natural = GModule::perm_module(group, field.clone());
    absorb(
        &natural,
        0,
        &mut found,
        &mut pending_enlargement,
        rep_words,
        &mut rng,
    )?;
    if pending_enlargement > 1 {
        return Ok(Outcome::NeedLargerField(pending_enlargement));
    }
    if count_classes(&found) == target {
        finish(&mut found);
        return Ok(Outcome::Complete(found));
    }

    let mut tried: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut regular_done = false;
    loop {
        // smallest untried pair within the depth cap
        let mut best: Option<(u64, usize, usize)> = None;
        for i in 0..found.len() {
            for j in i..found.len() {
                if tried.contains(&(i, j)) {
                    continue;
                }
                if found[i].depth.max(found[j].depth) + 1 > limits.tensor_depth {
                    continue;
                }
                let prod = found[i].dim * found[j].dim;
                if best.is_none_or(|(b, _, _)| prod < b) {
                    best = Some((prod, i, j));
                }
            }
        }
        match best {
            Some((_, i, j)) => {
                tried.insert((i, j));
                let depth = found[i].depth.max(found[j].depth) + 1;
                let product = found[i].module.tensor(&found[j].module);
                absorb(
                    &product,
                    depth,
                    &mut found,
                    &mut pending_enlargement,
                    rep_words,
                    &mut rng,
                )?;
            }
            None => {
                if regular_done || group.order() > limits.regular_module_bound {
                    return Err(Error::Incomplete(format!(
                        "simple-module search exhausted (found {} of {} classes)",
                        count_classes(&found),
                        target
                    )));
                }
                regular_done = true;
                let regular = GModule::regular_module(group, field.clone(), limits)?;
                absorb(
                    &regular,
                    1,
                    &mut found,
                    &mut pending_enlargement,
                    rep_words,
                    &mut rng,
                )?;
            }
        }
        if pending_enlargement > 1 {
            return Ok(Outcome::NeedLargerField(pending_enlargement));
        }
        if count_classes(&found) == target {
            finish(&mut found);
            return Ok(Outcome::Complete(found));
        }
    }
}

fn count_classes(found: &[SimpleModule]) -> u64 {
    found.iter().map(|s| s.endo_degree).sum()
}

fn finish(found: &mut [SimpleModule]) {
    found.sort_by(|a, b| (a.dim, &a.traces).cmp(&(b.dim, &b.traces)));
}

fn absorb(
    module: &GModule,
    depth: u32,
    found: &mut Vec<SimpleModule>,
    pending_enlargement: &mut u64,
    rep_words: &[Vec<u16>],
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let factors = chop(module, rng)?;
    'factor: for fac in factors {
        let dim = fac.module.dim as u64;
        let traces: Vec<u64> = rep_words
            .iter()
            .map(|w| fac.module.field.to_int(fac.module.trace_at_word(w)))
            .collect();
        for existing in found.iter() {
            if existing.dim == dim
                && existing.traces == traces
                && modules_isomorphic(&existing.module, &fac.module, rng)?
            {
                continue 'factor;
            }
        }
        let e = endo_degree(&fac.module, rng)?;
        if e > 1 {
            *pending_enlargement = lcm_u64(*pending_enlargement, e);
        }
        found.push(SimpleModule {
            module: fac.module,
            dim,
            endo_degree: e,
            traces,
            depth,
        });
    }
    Ok(())
}

/// The multiset of dimensions of all simple modules over the algebraic
/// closure, ascending: each ground-field class of endomorphism degree e
/// contributes e conjugate classes of dimension dim/e.
pub fn absolutely_simple_dimensions(
    group: &PermGroup,
    p: u64,
    limits: &Limits,
    seed: u64,
) -> Result<Vec<u64>> {
    let (simples, _) = simple_modules(group, p, limits, seed)?;
    Ok(dims_from(&simples))
}

pub(crate) fn dims_from(simples: &[SimpleModule]) -> Vec<u64> {
    let mut dims = Vec::new();
    for s in simples {
        for _ in 0..s.endo_degree {
            dims.push(s.abs_dim());
        }
    }
    dims.sort_unstable();
    dims
}

/// m_s(G, p): the maximal dimension of a simple module over the closure.
pub fn max_simple_dimension(
    group: &PermGroup,
    p: u64,
    limits: &Limits,
    seed: u64,
) -> Result<u64> {
    Ok(*absolutely_simple_dimensions(group, p, limits, seed)?
        .last()
        .expect("at least the trivial module exists"))
}

/// True when some absolutely irreducible dimension is divisible by |G|_p.
pub fn has_defect_zero_simple(
    group: &PermGroup,
    p: u64,
    limits: &Limits,
    seed: u64,
) -> Result<bool> {
    let part = p_part(group.order(), p);
    Ok(absolutely_simple_dimensions(group, p, limits, seed)?
        .iter()
        .any(|&d| d % part == 0))
}
