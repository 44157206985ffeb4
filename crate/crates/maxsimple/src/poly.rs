//! Dense univariate polynomials over GF(p^k), with complete factorization:
//! squarefree decomposition, distinct-degree filtration, and equal-degree
//! splitting (seeded, so runs replay exactly).

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{Field, Fq};

/// Coefficients ascending; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub coeffs: Vec<Fq>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly {
            coeffs: vec![Field::ONE],
        }
    }

    pub fn x() -> Poly {
        Poly {
            coeffs: vec![Field::ZERO, Field::ONE],
        }
    }

    pub fn from_codes(mut coeffs: Vec<Fq>) -> Poly {
        while coeffs.last() == Some(&Field::ZERO) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Coefficients given as integer polynomial codes (0 = zero, 1 = one, ...).
    pub fn from_ints(field: &Field, ints: &[u64]) -> Poly {
        Poly::from_codes(ints.iter().map(|&v| field.from_int(v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Fq {
        *self.coeffs.last().unwrap_or(&Field::ZERO)
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Field::ZERO)
    }

    pub fn add(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(self.coeff(i), other.coeff(i)));
        }
        Poly::from_codes(out)
    }

    pub fn sub(&self, f: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.sub(self.coeff(i), other.coeff(i)));
        }
        Poly::from_codes(out)
    }

    pub fn mul(&self, f: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Field::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_codes(out)
    }

    pub fn mul_scalar(&self, f: &Field, c: Fq) -> Poly {
        Poly::from_codes(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, f: &Field, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree().expect("nonzero");
        let lead_inv = f.inv(divisor.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Field::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let lead = *rem.last().expect("nonempty");
            let shift = rem.len() - 1 - dd;
            if !f.is_zero(lead) {
                let c = f.mul(lead, lead_inv);
                quot[shift] = c;
                for (j, &m) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] = f.sub(rem[shift + j], f.mul(c, m));
                }
            }
            rem.pop();
            while rem.last() == Some(&Field::ZERO) {
                rem.pop();
            }
        }
        (Poly::from_codes(quot), Poly::from_codes(rem))
    }

    pub fn rem(&self, f: &Field, divisor: &Poly) -> Poly {
        self.divrem(f, divisor).1
    }

    pub fn div_exact(&self, f: &Field, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(f, divisor);
        debug_assert!(r.is_zero(), "division was not exact");
        q
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.mul_scalar(f, f.inv(self.leading()))
    }

    /// Monic gcd; gcd with zero is the other argument made monic.
    pub fn gcd(&self, f: &Field, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &Field) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            // multiply by i mod p
            let scalar = f.from_prime(i as u64 % f.p());
            out.push(f.mul(c, scalar));
        }
        Poly::from_codes(out)
    }

    pub fn eval(&self, f: &Field, x: Fq) -> Fq {
        let mut acc = Field::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    fn powmod(&self, f: &Field, mut e: u64, modulus: &Poly) -> Poly {
        let mut acc = Poly::one().rem(f, modulus);
        let mut base = self.rem(f, modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base).rem(f, modulus);
            }
            base = base.mul(f, &base).rem(f, modulus);
            e >>= 1;
        }
        acc
    }

    /// x ↦ x^(q^d) reduced mod `modulus`, iterated q-th powers.
    fn q_power_tower(f: &Field, start: &Poly, d: usize, modulus: &Poly) -> Poly {
        let mut r = start.rem(f, modulus);
        for _ in 0..d {
            r = r.powmod(f, f.q(), modulus);
        }
        r
    }

    /// p-th root of a polynomial in x^p (valid when the derivative vanishes).
    fn pth_root(&self, f: &Field) -> Poly {
        let p = f.p() as usize;
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.coeffs.len() {
            // inverse Frobenius: a^(p^(k-1))
            let mut c = self.coeffs[i];
            for _ in 0..f.k().saturating_sub(1) {
                c = f.frobenius(c);
            }
            out.push(c);
            i += p;
        }
        Poly::from_codes(out)
    }
}

/// Deterministic Rabin irreducibility test (degree-d gcd filtration).
pub fn is_irreducible(f: &Field, poly: &Poly) -> bool {
    let n = match poly.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let x = Poly::x();
    // x^(q^n) must reduce to x
    let xn = Poly::q_power_tower(f, &x, n, poly);
    if xn.sub(f, &x).rem(f, poly).degree().is_some() {
        return false;
    }
    for (r, _) in crate::limits::factorize(n as u64) {
        let d = n / r as usize;
        let xd = Poly::q_power_tower(f, &x, d, poly);
        let g = xd.sub(f, &x).gcd(f, poly);
        if g.deg_or_zero() > 0 {
            return false;
        }
    }
    true
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficient codes). The product of the factors times
/// the leading coefficient reproduces the input.
pub fn factor(f: &Field, poly: &Poly, rng: &mut ChaCha8Rng) -> Result<Vec<(Poly, u32)>> {
    if poly.is_zero() {
        return Err(Error::Precondition(
            "cannot factor the zero polynomial".into(),
        ));
    }
    let mut out: Vec<(Poly, u32)> = Vec::new();
    if poly.deg_or_zero() == 0 {
        return Ok(out);
    }
    squarefree_decompose(f, &poly.monic(f), 1, &mut out, rng);
    for (p_, _) in &out {
        debug_assert!(is_irreducible(f, p_), "factor not irreducible");
    }
    out.sort_by(|a, b| {
        let ka: Vec<u64> = a.0.coeffs.iter().map(|&c| f.to_int(c)).collect();
        let kb: Vec<u64> = b.0.coeffs.iter().map(|&c| f.to_int(c)).collect();
        (a.0.coeffs.len(), ka).cmp(&(b.0.coeffs.len(), kb))
    });
    Ok(out)
}

fn squarefree_decompose(
    f: &Field,
    poly: &Poly,
    mult: u32,
    out: &mut Vec<(Poly, u32)>,
    rng: &mut ChaCha8Rng,
) {
    if poly.deg_or_zero() == 0 {
        return;
    }
    let deriv = poly.derivative(f);
    if deriv.is_zero() {
        // poly = g(x^p)
        let root = poly.pth_root(f);
        squarefree_decompose(f, &root, mult * f.p() as u32, out, rng);
        return;
    }
    let mut c = poly.gcd(f, &deriv);
    let mut w = poly.div_exact(f, &c);
    let mut i = 1u32;
    while w.deg_or_zero() > 0 {
        let y = w.gcd(f, &c);
        let fac = w.div_exact(f, &y);
        if fac.deg_or_zero() > 0 {
            distinct_degree_split(f, &fac, mult * i, out, rng);
        }
        w = y;
        c = c.div_exact(f, &w);
        i += 1;
    }
    if c.deg_or_zero() > 0 {
        let root = c.pth_root(f);
        squarefree_decompose(f, &root, mult * f.p() as u32, out, rng);
    }
}

fn distinct_degree_split(
    f: &Field,
    squarefree: &Poly,
    mult: u32,
    out: &mut Vec<(Poly, u32)>,
    rng: &mut ChaCha8Rng,
) {
    let mut rem_poly = squarefree.clone();
    let x = Poly::x();
    let mut r = x.rem(f, &rem_poly);
    let mut d = 0usize;
    while rem_poly.deg_or_zero() >= 2 * (d + 1) {
        d += 1;
        r = r.powmod(f, f.q(), &rem_poly);
        let g = r.sub(f, &x).gcd(f, &rem_poly);
        if g.deg_or_zero() > 0 {
            equal_degree_split(f, &g, d, out, mult, rng);
            rem_poly = rem_poly.div_exact(f, &g);
            r = r.rem(f, &rem_poly);
        }
    }
    if rem_poly.deg_or_zero() > 0 {
        out.push((rem_poly.monic(f), mult));
    }
}

/// Splits a product of distinct irreducibles of the same degree d.
fn equal_degree_split(
    f: &Field,
    product: &Poly,
    d: usize,
    out: &mut Vec<(Poly, u32)>,
    mult: u32,
    rng: &mut ChaCha8Rng,
) {
    let n = product.deg_or_zero();
    if n == d {
        out.push((product.monic(f), mult));
        return;
    }
    loop {
        let a = random_poly(f, n, rng);
        if a.deg_or_zero() == 0 {
            continue;
        }
        let b = if f.p() == 2 {
            // trace map over GF(2^k): sum of 2^i-th powers
            let steps = f.k() as usize * d;
            let mut acc = Poly::zero();
            let mut cur = a.rem(f, product);
            for _ in 0..steps {
                acc = acc.add(f, &cur);
                cur = cur.mul(f, &cur).rem(f, product);
            }
            acc
        } else {
            // norm to GF(q), then the (q-1)/2 power; equals a^((q^d - 1)/2)
            let mut norm = a.rem(f, product);
            let mut frob = a.rem(f, product);
            for _ in 1..d {
                frob = frob.powmod(f, f.q(), product);
                norm = norm.mul(f, &frob).rem(f, product);
            }
            let half = (f.q() - 1) / 2;
            norm.powmod(f, half, product).sub(f, &Poly::one())
        };
        let g = b.gcd(f, product);
        let dg = g.deg_or_zero();
        if dg > 0 && dg < n {
            equal_degree_split(f, &g, d, out, mult, rng);
            equal_degree_split(f, &product.div_exact(f, &g), d, out, mult, rng);
            return;
        }
    }
}

fn random_poly(f: &Field, below_degree: usize, rng: &mut ChaCha8Rng) -> Poly {
    let coeffs = (0..below_degree)
        .map(|_| f.from_int(rng.gen_range(0..f.q())))
        .collect();
    Poly::from_codes(coeffs)
}
