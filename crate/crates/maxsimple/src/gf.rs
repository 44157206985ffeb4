//! GF(p^k) arithmetic on exponent/zero codes with Zech logarithm tables.
//!
//! An element is a `u16`: the sentinel [`Field::ZERO`] for 0, otherwise the
//! discrete log of the element with respect to a fixed multiplicative
//! generator. Addition is one Zech table lookup, multiplication is an
//! exponent addition. Tables are built once per field, for q up to 2^16.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::{factorize, is_prime, Limits};

/// Field element code.
pub type Fq = u16;

/// A field descriptor: characteristic and extension degree. The modulus is
/// not stored; it is always the lexicographically least monic irreducible
/// polynomial of degree k over GF(p), so equal specs mean equal fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
}

impl FieldSpec {
    pub fn q(&self) -> u64 {
        self.p.pow(self.k)
    }
}

pub struct Field {
    p: u64,
    k: u32,
    q: u64,
    /// coefficients of the monic modulus, ascending, length k+1, values < p
    modulus: Vec<u64>,
    /// exp[i] = polynomial code of g^i, length q-1
    exp: Vec<u16>,
    /// log[polycode] = exponent; log[0] unused
    log: Vec<u16>,
    /// zech[i] = log(1 + g^i), or ZECH_NONE when 1 + g^i = 0
    zech: Vec<u16>,
}

const ZECH_NONE: u16 = u16::MAX;

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}
impl Eq for Field {}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{})", self.p, self.k)
    }
}

impl Field {
    /// The zero code.
    pub const ZERO: Fq = u16::MAX;
    /// The one code (g^0).
    pub const ONE: Fq = 0;

    pub fn new(p: u64, k: u32, limits: &Limits) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Precondition("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= limits.field_bound && q <= 1 << 16)
            .ok_or(Error::Capability {
                what: "field size",
                needed: p.saturating_pow(k),
                bound: limits.field_bound.min(1 << 16),
            })?;

        let modulus = least_irreducible(p, k);
        let generator = find_generator(p, k, q, &modulus);

        // exp table: polynomial codes of successive generator powers
        let mut exp = vec![0u16; (q - 1) as usize];
        let mut log = vec![0u16; q as usize];
        let mut cur = vec![1u64]; // the element 1
        for (i, slot) in exp.iter_mut().enumerate() {
            let code = poly_to_code(&cur, p);
            *slot = code as u16;
            log[code as usize] = i as u16;
            cur = poly_mulmod(&cur, &generator, &modulus, p);
        }
        debug_assert_eq!(poly_to_code(&cur, p), 1, "generator order is q-1");

        let mut zech = vec![ZECH_NONE; (q - 1) as usize];
        for (i, slot) in zech.iter_mut().enumerate() {
            let gi = code_to_poly(exp[i] as u64, p, k);
            let sum = poly_add(&[1], &gi, p);
            let code = poly_to_code(&sum, p);
            *slot = if code == 0 { ZECH_NONE } else { log[code as usize] };
        }

        Ok(Arc::new(Field {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            zech,
        }))
    }

    pub fn from_spec(spec: FieldSpec, limits: &Limits) -> Result<Arc<Field>> {
        Field::new(spec.p, spec.k, limits)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.p, k: self.k }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Modulus coefficients, ascending degree.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn is_zero(&self, x: Fq) -> bool {
        x == Self::ZERO
    }

    /// Encode an integer polynomial code (base-p digits = coefficients).
    pub fn from_int(&self, v: u64) -> Fq {
        debug_assert!(v < self.q);
        if v == 0 {
            Self::ZERO
        } else {
            self.log[v as usize]
        }
    }

    /// Decode to the integer polynomial code.
    pub fn to_int(&self, x: Fq) -> u64 {
        if x == Self::ZERO {
            0
        } else {
            self.exp[x as usize] as u64
        }
    }

    /// Embeds a prime-field value (an integer mod p).
    pub fn from_prime(&self, v: u64) -> Fq {
        self.from_int(v % self.p)
    }

    #[inline]
    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        if x == Self::ZERO {
            return y;
        }
        if y == Self::ZERO {
            return x;
        }
        let m = (self.q - 1) as u32;
        let d = (y as u32 + m - x as u32) % m;
        let z = self.zech[d as usize];
        if z == ZECH_NONE {
            Self::ZERO
        } else {
            (((x as u32) + (z as u32)) % m) as Fq
        }
    }

    #[inline]
    pub fn neg(&self, x: Fq) -> Fq {
        if self.p == 2 || x == Self::ZERO {
            return x;
        }
        let m = (self.q - 1) as u32;
        (((x as u32) + m / 2) % m) as Fq
    }

    #[inline]
    pub fn sub(&self, x: Fq, y: Fq) -> Fq {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        if x == Self::ZERO || y == Self::ZERO {
            return Self::ZERO;
        }
        let m = (self.q - 1) as u32;
        (((x as u32) + (y as u32)) % m) as Fq
    }

    pub fn inv(&self, x: Fq) -> Fq {
        assert_ne!(x, Self::ZERO, "inverse of zero");
        let m = (self.q - 1) as u32;
        ((m - x as u32) % m) as Fq
    }

    pub fn div(&self, x: Fq, y: Fq) -> Fq {
        self.mul(x, self.inv(y))
    }

    pub fn pow(&self, x: Fq, e: u64) -> Fq {
        if x == Self::ZERO {
            return if e == 0 { Self::ONE } else { Self::ZERO };
        }
        let m = (self.q - 1);
        (((x as u64) * (e % m)) % m) as Fq
    }

    pub fn frobenius(&self, x: Fq) -> Fq {
        self.pow(x, self.p)
    }

    /// All element codes, zero first then ascending powers of the generator.
    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        std::iter::once(Self::ZERO).chain(0..(self.q - 1) as Fq)
    }
}

// polynomial helpers over GF(p), coefficient vectors ascending, used only
// during table construction

fn poly_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    poly_trim(&mut out);
    out
}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce by the monic modulus
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for (j, &m) in modulus.iter().enumerate().take(k) {
            let idx = d - k + j;
            prod[idx] = (prod[idx] + c * (p - m % p)) % p;
        }
    }
    prod.truncate(k.max(1));
    poly_trim(&mut prod);
    prod
}

fn poly_to_code(a: &[u64], p: u64) -> u64 {
    let mut code = 0;
    for &c in a.iter().rev() {
        code = code * p + c;
    }
    code
}

fn code_to_poly(mut code: u64, p: u64, k: u32) -> Vec<u64> {
    let mut out = Vec::with_capacity(k as usize);
    while code > 0 {
        out.push(code % p);
        code /= p;
    }
    out
}

/// Naive irreducibility by trial division over GF(p); adequate for the tiny
/// degrees used as moduli.
fn poly_divides(divisor: &[u64], f: &[u64], p: u64) -> bool {
    // long division remainder == 0; divisor monic
    let mut rem: Vec<u64> = f.to_vec();
    let d = divisor.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().expect("nonempty");
        let shift = rem.len() - 1 - d;
        if lead != 0 {
            for (j, &m) in divisor.iter().enumerate() {
                let idx = shift + j;
                rem[idx] = (rem[idx] + lead * (p - m % p)) % p;
            }
        }
        rem.pop();
        poly_trim(&mut rem);
        if rem.is_empty() {
            return true;
        }
    }
    rem.is_empty()
}

fn is_irreducible_naive(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    // enumerate monic divisors of degree 1..=deg/2
    for d in 1..=deg / 2 {
        let count = p.pow(d as u32);
        for m in 0..count {
            let mut div = code_to_poly(m, p, d as u32);
            div.resize(d, 0);
            div.push(1);
            if poly_divides(&div, f, p) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically least monic irreducible of degree k over GF(p):
/// the first m (as base-p digits giving the low coefficients) that works.
fn least_irreducible(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1]; // x
    }
    for m in 0..p.pow(k) {
        let mut f = code_to_poly(m, p, k);
        f.resize(k as usize, 0);
        f.push(1);
        if f[0] != 0 && is_irreducible_naive(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible of every degree exists")
}

/// First element (by polynomial code) generating the multiplicative group.
fn find_generator(p: u64, k: u32, q: u64, modulus: &[u64]) -> Vec<u64> {
    let prime_divisors: Vec<u64> = factorize(q - 1).into_iter().map(|(r, _)| r).collect();
    'candidates: for code in 1..q {
        let cand = code_to_poly(code, p, k);
        if cand.is_empty() {
            continue;
        }
        for &r in &prime_divisors {
            if poly_powmod(&cand, (q - 1) / r, modulus, p) == vec![1] {
                continue 'candidates;
            }
        }
        return cand;
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

fn poly_powmod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}
