//! Table-driven arithmetic in `F_{p^h}`.
//!
//! Elements are identified with their base-`p` positional index: the element
//! `c_0 + c_1 t + ... + c_{h-1} t^{h-1}` (with `t` a root of the modulus) has
//! index `c_0 + c_1 p + ... + c_{h-1} p^{h-1}`. Multiplication goes through
//! discrete log/antilog tables built from a primitive element, and addition in
//! proper extensions uses a Zech-style `x -> x + 1` table.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::FieldError;

/// Largest field order we are willing to tabulate.
const MAX_ORDER: u64 = 1 << 24;

/// A residue in `F_{p^h}`, stored as its positional index in `[0, q)`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: Self = FieldElement(0);
    pub const ONE: Self = FieldElement(1);

    #[inline]
    pub const fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Wraps a raw index without range checking. Callers that take indices
    /// from user input should go through [`FieldSpec::element`].
    #[inline]
    pub(crate) const fn from_index_unchecked(i: u32) -> Self {
        FieldElement(i)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The finite field `F_q`, `q = p^h`, together with the canonical non-square
/// used by the quadratic-count formulas.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    h: u32,
    q: u32,
    modulus: Vec<u32>,
    // exp has length 2(q-1) so that log sums never need a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    plus_one: Vec<u32>,
    neg: Vec<u32>,
    lambda: FieldElement,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("modulus", &self.modulus)
            .field("lambda", &self.lambda.0)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.h == other.h
            && self.modulus == other.modulus
            && self.lambda == other.lambda
    }
}

impl Eq for FieldSpec {}

/// Serializable description of a field: `{p, h, modulus, lambda}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub p: u32,
    pub h: u32,
    pub modulus: Vec<u32>,
    pub lambda: u32,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while (k as u64) * (k as u64) <= n as u64 {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            while n.is_multiple_of(k) {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_characteristic(p: u32, h: u32) -> Result<u64, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    if p <= 3 {
        return Err(FieldError::CharacteristicTooSmall(p));
    }
    if h == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let mut q = 1u64;
    for _ in 0..h {
        q *= p as u64;
        if q > MAX_ORDER {
            return Err(FieldError::TooLarge { p, h });
        }
    }
    Ok(q)
}

/// Every monic irreducible modulus of degree `h` over `Z_p`, in the order
/// [`FieldSpec::new`] searches them.
pub fn monic_irreducibles(p: u32, h: u32) -> Result<impl Iterator<Item = Vec<u32>>, FieldError> {
    check_characteristic(p, h)?;
    Ok(zp::irreducibles(p, h))
}

impl FieldSpec {
    /// Builds `F_{p^h}` using the lexicographically smallest monic irreducible
    /// modulus (coefficients compared constant term first).
    pub fn new(p: u32, h: u32) -> Result<Self, FieldError> {
        // reject bad (p, h) before searching for a modulus
        check_characteristic(p, h)?;
        let modulus = zp::smallest_irreducible(p, h);
        Self::with_modulus(p, modulus)
    }

    /// Builds `F_{p^h}` from an explicit monic modulus of degree `h`
    /// (coefficient list, constant term first).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, FieldError> {
        let h = modulus.len().saturating_sub(1) as u32;
        let q = check_characteristic(p, h)? as u32;
        if modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::MalformedModulus { expected: h });
        }
        if !zp::is_irreducible(&modulus, p) {
            return Err(FieldError::ReducibleModulus(modulus));
        }

        let order = q - 1;
        let slow = SlowArith {
            p,
            h,
            modulus: &modulus,
        };
        let generator = (1..q)
            .find(|&g| slow.has_order(g, order as u64))
            .expect("the multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x;
            exp[(i + order) as usize] = x;
            log[x as usize] = i;
            x = slow.mul(x, generator);
        }
        debug_assert_eq!(x, 1);

        let plus_one = (0..q)
            .map(|x| if x % p == p - 1 { x + 1 - p } else { x + 1 })
            .collect();
        let neg = (0..q)
            .map(|x| {
                let digits = digits_of(x, p, h);
                from_digits(digits.iter().map(|&c| (p - c) % p), p)
            })
            .collect();

        let mut spec = FieldSpec {
            p,
            h,
            q,
            modulus,
            exp,
            log,
            plus_one,
            neg,
            lambda: FieldElement::ZERO,
        };
        spec.lambda = spec
            .elements()
            .find(|&u| spec.eta(u) == -1)
            .expect("odd-order fields have non-squares");
        Ok(spec)
    }

    /// Replaces the canonical non-square with another one.
    pub fn with_lambda(mut self, lambda: FieldElement) -> Result<Self, FieldError> {
        self.check(lambda)?;
        if self.eta(lambda) != -1 {
            return Err(FieldError::NotANonSquare(lambda.0));
        }
        self.lambda = lambda;
        Ok(self)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Extension degree `h` over the prime field.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.h
    }

    /// Cardinality `q`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// `d = (q - 1) / 2`.
    #[inline]
    pub fn half_order(&self) -> u32 {
        (self.q - 1) / 2
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn lambda(&self) -> FieldElement {
        self.lambda
    }

    pub fn summary(&self) -> FieldSummary {
        FieldSummary {
            p: self.p,
            h: self.h,
            modulus: self.modulus.clone(),
            lambda: self.lambda.0,
        }
    }

    fn check(&self, a: FieldElement) -> Result<(), FieldError> {
        if a.0 < self.q {
            Ok(())
        } else {
            Err(FieldError::IndexOutOfRange {
                index: a.0 as u64,
                q: self.q,
            })
        }
    }

    /// Decodes an integer index in `[0, q)`.
    pub fn element(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index < self.q as u64 {
            Ok(FieldElement(index as u32))
        } else {
            Err(FieldError::IndexOutOfRange { index, q: self.q })
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        digits_of(a.0, self.p, self.h)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<FieldElement, FieldError> {
        if digits.len() != self.h as usize || digits.iter().any(|&c| c >= self.p) {
            return Err(FieldError::MalformedModulus { expected: self.h });
        }
        Ok(FieldElement(from_digits(digits.iter().copied(), self.p)))
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.q).map(FieldElement)
    }

    #[inline]
    pub fn minus_one(&self) -> FieldElement {
        FieldElement(self.neg[1])
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.h == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= self.p { s - self.p } else { s });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        // a + b = a * (1 + b/a)
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let ratio = self.exp[(lb + self.q - 1 - la) as usize];
        let s = self.plus_one[ratio as usize];
        if s == 0 {
            FieldElement::ZERO
        } else {
            FieldElement(self.exp[(la + self.log[s as usize]) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(FieldElement(
            self.exp[((order - self.log[a.0 as usize]) % order) as usize],
        ))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (e % order)) % order;
        FieldElement(self.exp[l as usize])
    }

    /// Discrete logarithm with respect to the internal primitive element.
    #[inline]
    pub(crate) fn log_of(&self, a: FieldElement) -> u32 {
        debug_assert!(a.0 != 0);
        self.log[a.0 as usize]
    }

    /// Inverse of [`Self::log_of`], reducing the exponent modulo `q - 1`.
    #[inline]
    pub(crate) fn exp_of(&self, l: u64) -> FieldElement {
        FieldElement(self.exp[(l % (self.q - 1) as u64) as usize])
    }

    /// The quadratic character `u -> u^d`, read as -1, 0 or 1.
    ///
    /// Panics if `u^d` is neither 1 nor -1, which can only happen if the
    /// tables are corrupt.
    pub fn eta(&self, u: FieldElement) -> i8 {
        if u.0 == 0 {
            return 0;
        }
        let v = self.pow(u, self.half_order() as u64);
        if v == FieldElement::ONE {
            1
        } else if v == self.minus_one() {
            -1
        } else {
            panic!(
                "u^d = {} is not +-1 in F_{}: field tables are broken",
                v.0, self.q
            )
        }
    }

    /// Field embedding `self -> target`, tabulated by element index.
    pub fn embedding_into(&self, target: &FieldSpec) -> Result<Vec<FieldElement>, FieldError> {
        if self.p != target.p || !target.h.is_multiple_of(self.h) {
            return Err(FieldError::NoEmbedding {
                p: self.p,
                from: self.h,
                p2: target.p,
                to: target.h,
            });
        }
        let root = target
            .elements()
            .find(|&r| {
                let mut acc = FieldElement::ZERO;
                for &c in self.modulus.iter().rev() {
                    acc = target.add(target.mul(acc, r), FieldElement(c));
                }
                acc.is_zero()
            })
            .expect(
                "an irreducible of degree h splits in every extension of degree divisible by h",
            );
        let powers: Vec<FieldElement> = (0..self.h).map(|i| target.pow(root, i as u64)).collect();
        Ok(self
            .elements()
            .map(|a| {
                self.digits(a)
                    .iter()
                    .zip(&powers)
                    .fold(FieldElement::ZERO, |acc, (&c, &rp)| {
                        target.add(acc, target.mul(FieldElement(c), rp))
                    })
            })
            .collect())
    }

    /// `F_{q^k}` with its canonical modulus, plus the embedding of `self`.
    pub fn extension(&self, k: u32) -> Result<Extension, FieldError> {
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let h = self.h.checked_mul(k).ok_or(FieldError::TooLarge {
            p: self.p,
            h: u32::MAX,
        })?;
        let field = FieldSpec::new(self.p, h)?;
        let embedding = self.embedding_into(&field)?;
        Ok(Extension {
            field,
            embedding,
            level: k,
        })
    }
}

/// A finite extension `F_{q^k}` of a base field with a fixed embedding.
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: FieldSpec,
    embedding: Vec<FieldElement>,
    level: u32,
}

impl Extension {
    /// The degree `k` of the extension over the base field.
    pub fn level(&self) -> u32 {
        self.level
    }

    #[inline]
    pub fn embed(&self, a: FieldElement) -> FieldElement {
        self.embedding[a.0 as usize]
    }
}

fn digits_of(mut x: u32, p: u32, h: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(h as usize);
    for _ in 0..h {
        out.push(x % p);
        x /= p;
    }
    out
}

fn from_digits(digits: impl DoubleEndedIterator<Item = u32>, p: u32) -> u32 {
    digits.rev().fold(0, |acc, c| acc * p + c)
}

/// Schoolbook arithmetic used only while the tables are being built.
struct SlowArith<'a> {
    p: u32,
    h: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn mul(&self, a: u32, b: u32) -> u32 {
        let da = digits_of(a, self.p, self.h);
        let db = digits_of(b, self.p, self.h);
        let prod = zp::mul(&da, &db, self.p);
        let r = zp::rem(&prod, self.modulus, self.p);
        let mut digits = r;
        digits.resize(self.h as usize, 0);
        from_digits(digits.into_iter(), self.p)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn has_order(&self, g: u32, order: u64) -> bool {
        prime_factors(order)
            .into_iter()
            .all(|r| self.pow(g, order / r) != 1)
    }
}

/// Dense polynomials over `Z_p`, constant term first.
pub(crate) mod zp {
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
        trim(out.into_iter().map(|c| c as u32).collect())
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut base = a as u64 % p as u64;
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

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        assert!(!m.is_empty(), "remainder by zero polynomial");
        let mut r = trim(a.to_vec());
        let lead_inv = inv_mod(*m.last().unwrap(), p);
        while r.len() >= m.len() {
            let shift = r.len() - m.len();
            let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            for (i, &mc) in m.iter().enumerate() {
                let sub = (c as u64 * mc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        rem(&mul(a, b, p), m, p)
    }

    /// `a^(p^times) mod m`.
    fn frobenius_iter(a: &[u32], times: u32, m: &[u32], p: u32) -> Vec<u32> {
        let mut x = a.to_vec();
        for _ in 0..times {
            let mut acc = vec![1u32];
            let mut base = x.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, m, p);
                }
                base = mulmod(&base, &base, m, p);
                e >>= 1;
            }
            x = acc;
        }
        x
    }

    fn has_root(f: &[u32], p: u32) -> bool {
        (0..p).any(|x| {
            let v = f
                .iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p as u64);
            v == 0
        })
    }

    /// Root search for degree at most 3; Rabin's test above that.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let deg = match f.len() {
            0 | 1 => return false,
            n => (n - 1) as u32,
        };
        if deg == 1 {
            return true;
        }
        if deg <= 3 {
            return !has_root(&f, p);
        }
        let x = vec![0, 1];
        if frobenius_iter(&x, deg, &f, p) != rem(&x, &f, p) {
            return false;
        }
        super::prime_factors(deg as u64).into_iter().all(|r| {
            let xr = frobenius_iter(&x, deg / r as u32, &f, p);
            gcd(&sub(&xr, &x, p), &f, p).len() == 1
        })
    }

    /// Monic irreducibles of degree `h` in increasing lexicographic order of
    /// `(c_0, ..., c_{h-1})`.
    pub fn irreducibles(p: u32, h: u32) -> impl Iterator<Item = Vec<u32>> {
        let total = (p as u64).pow(h);
        (0..total).filter_map(move |idx| {
            // c_0 is the most significant digit of idx
            let mut coeffs = vec![0u32; h as usize + 1];
            let mut rest = idx;
            for i in (0..h as usize).rev() {
                coeffs[i] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            coeffs[h as usize] = 1;
            is_irreducible(&coeffs, p).then_some(coeffs)
        })
    }

    pub fn smallest_irreducible(p: u32, h: u32) -> Vec<u32> {
        irreducibles(p, h)
            .next()
            .expect("irreducible polynomials exist in every degree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn squares(f: &FieldSpec) -> std::collections::BTreeSet<FieldElement> {
        f.nonzero_elements().map(|x| f.mul(x, x)).collect()
    }

    #[test]
    fn build_f7() {
        let f = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f.order(), 7);
        assert_eq!(f.half_order(), 3);
        assert_eq!(f.lambda().index(), 3);
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn build_f25() {
        let f = FieldSpec::new(5, 2).unwrap();
        assert_eq!(f.order(), 25);
        assert_eq!(f.half_order(), 12);
        // x^2 + 1 splits mod 5 (2^2 = -1); x^2 + x + 1 is the first irreducible
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_small_or_composite_characteristic() {
        assert_eq!(
            FieldSpec::new(3, 1).unwrap_err(),
            FieldError::CharacteristicTooSmall(3)
        );
        assert_eq!(
            FieldSpec::new(2, 3).unwrap_err(),
            FieldError::CharacteristicTooSmall(2)
        );
        assert_eq!(FieldSpec::new(9, 1).unwrap_err(), FieldError::NotPrime(9));
        assert_eq!(FieldSpec::new(7, 0).unwrap_err(), FieldError::ZeroDegree);
    }

    #[test]
    fn rejects_reducible_modulus() {
        assert!(matches!(
            FieldSpec::with_modulus(5, vec![1, 0, 1]),
            Err(FieldError::ReducibleModulus(_))
        ));
        assert!(FieldSpec::with_modulus(5, vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn small_arithmetic_f7() {
        let f = FieldSpec::new(7, 1).unwrap();
        let e = |i| f.element(i).unwrap();
        assert_eq!(f.mul(e(3), e(5)), e(1));
        assert_eq!(f.inv(e(3)).unwrap(), e(5));
        assert_eq!(f.inv(FieldElement::ZERO), Err(FieldError::DivisionByZero));
        assert_eq!(f.sub(e(2), e(5)), e(4));
        assert_eq!(f.neg(e(1)), e(6));
    }

    #[test]
    fn generator_has_full_order_in_f25() {
        let f = FieldSpec::new(5, 2).unwrap();
        let t = f.from_digits(&[0, 1]).unwrap();
        assert_eq!(f.pow(t, 24), FieldElement::ONE);
        // every nonzero element satisfies x^(q-1) = 1
        assert!(f
            .nonzero_elements()
            .all(|x| f.pow(x, 24) == FieldElement::ONE));
    }

    #[test]
    fn eta_examples() {
        let f = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f.eta(FieldElement::ZERO), 0);
        assert_eq!(f.eta(FieldElement::ONE), 1);
        assert_eq!(f.eta(f.element(3).unwrap()), -1);
    }

    #[test]
    fn enumeration_order() {
        let f = FieldSpec::new(7, 1).unwrap();
        let v: Vec<u32> = f.elements().map(|x| x.index()).collect();
        assert_eq!(v, vec![0, 1, 2, 3, 4, 5, 6]);
        let g = FieldSpec::new(5, 2).unwrap();
        let v: Vec<_> = g.elements().collect();
        assert_eq!(v.len(), 25);
        assert_eq!(v[0], FieldElement::ZERO);
        assert_eq!(v[1], FieldElement::ONE);
    }

    #[test]
    fn eta_matches_square_set_and_balances() {
        for (p, h) in [(5, 1), (7, 1), (11, 1), (13, 1), (5, 2), (7, 2), (5, 3)] {
            let f = FieldSpec::new(p, h).unwrap();
            let sq = squares(&f);
            let d = f.half_order() as usize;
            assert_eq!(sq.len(), d);
            let mut plus = 0;
            let mut minus = 0;
            for u in f.nonzero_elements() {
                let e = f.eta(u);
                assert_eq!(e == 1, sq.contains(&u), "F_{} u={}", f.order(), u);
                if e == 1 {
                    plus += 1
                } else {
                    minus += 1
                }
            }
            assert_eq!((plus, minus), (d, d));
            assert_eq!(f.eta(f.minus_one()) == 1, d.is_multiple_of(2));
            assert_eq!(f.eta(f.lambda()), -1);
        }
    }

    #[test]
    fn addition_matches_digitwise_reference() {
        for (p, h) in [(5, 2), (7, 2), (5, 3)] {
            let f = FieldSpec::new(p, h).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let da = f.digits(a);
                    let db = f.digits(b);
                    let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                    assert_eq!(f.add(a, b), f.from_digits(&sum).unwrap());
                }
            }
        }
    }

    #[test]
    fn irreducibility_agrees_with_factor_search() {
        // degree-4 polynomials over F_5: irreducible iff no monic factor of degree 1 or 2
        let p: u32 = 5;
        let monic = |deg: usize| -> Vec<Vec<u32>> {
            (0..p.pow(deg as u32))
                .map(|mut i| {
                    let mut c: Vec<u32> = (0..deg)
                        .map(|_| {
                            let d = i % p;
                            i /= p;
                            d
                        })
                        .collect();
                    c.push(1);
                    c
                })
                .collect()
        };
        let small: Vec<Vec<u32>> = monic(1).into_iter().chain(monic(2)).collect();
        for f in monic(4).into_iter().step_by(7) {
            let brute = !small.iter().any(|g| zp::rem(&f, g, p).is_empty());
            assert_eq!(zp::is_irreducible(&f, p), brute, "{f:?}");
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let base = FieldSpec::new(5, 2).unwrap();
        let ext = base.extension(2).unwrap();
        assert_eq!(ext.field.order(), 625);
        let big = &ext.field;
        for a in base.elements() {
            for b in base.elements() {
                assert_eq!(
                    ext.embed(base.add(a, b)),
                    big.add(ext.embed(a), ext.embed(b))
                );
                assert_eq!(
                    ext.embed(base.mul(a, b)),
                    big.mul(ext.embed(a), ext.embed(b))
                );
            }
        }
    }

    #[test]
    fn lambda_override() {
        let f = FieldSpec::new(7, 1).unwrap();
        let g = f.clone().with_lambda(f.element(5).unwrap()).unwrap();
        assert_eq!(g.lambda().index(), 5);
        assert!(f.with_lambda(FieldElement::ONE).is_err());
    }

    proptest! {
        #[test]
        fn field_axioms_and_multiplicative_eta(a in 0u32..49, b in 0u32..49, c in 0u32..49) {
            let f = FieldSpec::new(7, 2).unwrap();
            let (a, b, c) = (FieldElement(a), FieldElement(b), FieldElement(c));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            prop_assert_eq!(f.eta(f.mul(a, b)), f.eta(a) * f.eta(b));
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                prop_assert_eq!(f.eta(a) * f.eta(a), 1);
            }
        }
    }
}
