//! Arithmetic in `F_{p^n}` for odd primes `p`.
//!
//! Elements are stored by their canonical code `Σ c_j p^j`, where `c_j` are the
//! little-endian coefficients of the representing polynomial modulo the
//! context's irreducible modulus. Code order is the canonical element order
//! used throughout the crate.

use std::fmt;

use crate::error::{Error, Result};

/// Default bound on the field order accepted by [`FieldCtx::new`].
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps a code without checking it against a context.
    pub const fn from_code_unchecked(code: u32) -> Self {
        FieldElement(code)
    }

    pub const fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    /// Low coefficients of the monic modulus; the leading `x^n` term is implicit.
    modulus: Vec<u32>,
}

impl FieldCtx {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        Self::with_limit(p, n, DEFAULT_MAX_ORDER)
    }

    pub fn with_limit(p: u64, n: u32, max_order: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= max_order && q <= u32::MAX as u64)
            .ok_or(Error::TooLarge {
                what: "field order",
                size: p.saturating_pow(n),
                limit: max_order,
            })?;
        let p = p as u32;
        let modulus = smallest_irreducible(p, n as usize);
        Ok(FieldCtx {
            p,
            n,
            q: q as u32,
            modulus,
        })
    }

    /// Builds the field of order `q`, which must be an odd prime power.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, n) = prime_power(q)?;
        Self::new(p, n)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Full coefficient list of the monic modulus, low degree first.
    pub fn modulus(&self) -> Vec<u32> {
        let mut m = self.modulus.clone();
        m.push(1);
        m
    }

    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code >= self.q as u64 {
            return Err(Error::InvalidElement {
                code,
                q: self.q as u64,
            });
        }
        Ok(FieldElement(code as u32))
    }

    /// All field elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// Embeds an integer through `F_p`.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let mut c = x.0;
        (0..self.n)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        debug_assert!(coeffs.len() <= self.n as usize);
        let code = coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * self.p + c % self.p);
        FieldElement(code)
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((x.0 + y.0) % self.p);
        }
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((self.p - x.0) % self.p);
        }
        let mut a = x.0;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement(((x.0 as u64 * y.0 as u64) % self.p as u64) as u32);
        }
        let prod = poly::mul(&self.coeffs(x), &self.coeffs(y), self.p);
        let rem = poly::rem(&prod, &self.modulus(), self.p);
        self.from_coeffs(&rem)
    }

    pub fn square(&self, x: FieldElement) -> FieldElement {
        self.mul(x, x)
    }

    pub fn pow(&self, x: FieldElement, mut e: u64) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(x, self.q as u64 - 2))
    }

    pub fn arith(&self, op: ArithOp, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Sub => self.sub(x, y),
            ArithOp::Mul => self.mul(x, y),
            ArithOp::Inv => self.inv(x)?,
        })
    }

    /// The quadratic character `x^{(q-1)/2}`: 0 at zero, +1 on nonzero squares,
    /// -1 on nonsquares.
    pub fn quadratic_character(&self, x: FieldElement) -> i8 {
        if x.is_zero() {
            return 0;
        }
        let r = self.pow(x, (self.q as u64 - 1) / 2);
        if r == FieldElement::ONE {
            1
        } else {
            debug_assert_eq!(r, self.neg(FieldElement::ONE));
            -1
        }
    }

    pub fn is_nonsquare(&self, x: FieldElement) -> bool {
        self.quadratic_character(x) == -1
    }

    /// Every `y` with `y^2 = x`, in canonical order.
    pub fn square_roots(&self, x: FieldElement) -> Vec<FieldElement> {
        self.elements().filter(|&y| self.square(y) == x).collect()
    }

    /// Absolute trace `Σ_j x^{p^j}` as an integer in `[0, p)`.
    pub fn abs_trace(&self, x: FieldElement) -> u32 {
        let mut acc = FieldElement::ZERO;
        let mut frob = x;
        for _ in 0..self.n {
            acc = self.add(acc, frob);
            frob = self.pow(frob, self.p as u64);
        }
        debug_assert!(acc.0 < self.p, "trace must land in the prime field");
        acc.0
    }

    /// `(-1)^{(q-1)/2}`, i.e. the character value of `-1`.
    pub fn minus_one_sign(&self) -> i64 {
        if self.q % 4 == 1 {
            1
        } else {
            -1
        }
    }
}

pub fn is_prime(v: u64) -> bool {
    if v < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= v {
        if v.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits an odd prime power `q = p^n`.
pub fn prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 3 {
        return Err(Error::NotPrimePower(q));
    }
    if q.is_multiple_of(2) {
        return if q.is_power_of_two() {
            Err(Error::EvenCharacteristic)
        } else {
            Err(Error::NotPrimePower(q))
        };
    }
    let p = (3..)
        .step_by(2)
        .find(|d| d * d > q || q.is_multiple_of(*d))
        .map(|d| if d * d > q { q } else { d })
        .unwrap();
    let (mut rest, mut n) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        n += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, n))
}

/// The monic irreducible polynomial of degree `n` over `F_p` whose low
/// coefficients `(c_0, ..., c_{n-1})` are lexicographically smallest.
fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
    let count = (p as u64).pow(n as u32);
    for j in 0..count {
        // c_0 is the most significant digit of j
        let mut low = vec![0u32; n];
        let mut r = j;
        for slot in low.iter_mut().rev() {
            *slot = (r % p as u64) as u32;
            r /= p as u64;
        }
        let mut f = low.clone();
        f.push(1);
        if poly::is_irreducible(&f, p) {
            return low;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

/// Dense polynomials over `F_p`, little-endian, trimmed of leading zeros.
pub(crate) mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|v| v as u32).collect())
    }

    fn inv_mod(x: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut base = x as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Remainder of `a` modulo nonzero `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        let mut r = trim(a.to_vec());
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let factor = r[r.len() - 1] as u64 * lead_inv % p as u64;
            for (j, &c) in m.iter().enumerate() {
                let sub = factor * c as u64 % p as u64;
                r[shift + j] = ((r[shift + j] as u64 + p as u64 - sub) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn mulmod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), f, p)
    }

    fn powmod(base: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &b, f, p);
            }
            b = mulmod(&b, &b, f, p);
            e >>= 1;
        }
        acc
    }

    /// `f` (monic, degree n) is irreducible iff `gcd(x^{p^k} - x, f) = 1`
    /// for every `1 <= k <= n/2`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n <= 1 {
            return n == 1;
        }
        let x = vec![0, 1];
        let mut frob = x.clone();
        for _ in 1..=n / 2 {
            frob = powmod(&frob, p as u64, f, p);
            let mut diff = frob.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(&trim(diff), f, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}
