/// Enumeration bounds for the exhaustive parts of the engine.
///
/// Everything here trades generality for exactness at desk scale; operations
/// that would exceed a bound fail with [`crate::Error::Capability`] instead of
/// approximating.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Largest group order for which the full subgroup lattice (and hence the
    /// Frattini subgroup) is enumerated.
    pub lattice_bound: u64,
    /// Largest group order for which the element table (needed by conjugacy
    /// classes, Sylow subgroups, normal structure) is materialised.
    pub element_bound: u64,
    /// Largest group order for which the regular module may be chopped as a
    /// fallback when the tensor search does not close.
    pub regular_module_bound: u64,
    /// Maximum tensor depth explored by the simple-module search.
    pub tensor_depth: u32,
    /// Largest q^n for which a vector space is enumerated orbit by orbit.
    pub vector_space_bound: u64,
    /// Largest field size p^k for which arithmetic tables are built.
    pub field_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            lattice_bound: 5000,
            element_bound: 100_000,
            regular_module_bound: 1000,
            tensor_depth: 8,
            vector_space_bound: 1 << 24,
            field_bound: 1 << 16,
        }
    }
}

/// Default seed for the deterministic pseudo-random choices (chopping words,
/// polynomial splitting). Recorded in every report so runs replay exactly.
pub const DEFAULT_SEED: u64 = 1;

/// Largest power of p dividing n (as a number, not an exponent).
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// Exponent of p in n.
pub fn p_valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation as (prime, exponent) pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_part_extracts_exact_power() {
        assert_eq!(p_part(60, 2), 4);
        assert_eq!(p_part(60, 5), 5);
        assert_eq!(p_part(60, 7), 1);
        assert_eq!(p_valuation(5184, 3), 4);
    }

    #[test]
    fn small_primes() {
        assert!(is_prime(2));
        assert!(is_prime(7));
        assert!(!is_prime(1));
        assert!(!is_prime(57));
        assert_eq!(factorize(5184), vec![(2, 6), (3, 4)]);
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}
