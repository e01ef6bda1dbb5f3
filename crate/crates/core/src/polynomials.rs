//! Sparse homogeneous polynomials in `X0, X1, X2` over `F_q`.
//!
//! A [`TriPoly`] is a map from exponent triples to nonzero coefficients. For
//! homogeneous polynomials graded-lex and plain lex coincide, so the derived
//! `Ord` on [`Monomial`] (with `X0 > X1 > X2`) is the division order and the
//! leading term is simply the last map entry.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::PolyError;
use crate::finite_field::{Extension, FieldElement, FieldSpec};
use crate::projective::{normalize, plane_index, plane_points, plane_size};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    #[inline]
    pub fn degree(self) -> u32 {
        self.0[0] + self.0[1] + self.0[2]
    }

    #[inline]
    fn mul(self, other: Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    #[inline]
    fn divides(self, other: Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    #[inline]
    fn quotient(self, divisor: Monomial) -> Monomial {
        Monomial([
            self.0[0] - divisor.0[0],
            self.0[1] - divisor.0[1],
            self.0[2] - divisor.0[2],
        ])
    }

    fn permuted(self, perm: [usize; 3]) -> Monomial {
        Monomial([self.0[perm[0]], self.0[perm[1]], self.0[perm[2]]])
    }
}

/// Homogeneous polynomial in three variables; the zero polynomial has no terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriPoly {
    terms: BTreeMap<Monomial, FieldElement>,
}

fn add_term(
    terms: &mut BTreeMap<Monomial, FieldElement>,
    f: &FieldSpec,
    m: Monomial,
    c: FieldElement,
) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = f.add(*o.get(), c);
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    pub fn monomial(c: FieldElement, exps: [u32; 3]) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        TriPoly { terms }
    }

    /// The variable `X_i`.
    pub fn variable(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(FieldElement::ONE, e)
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(
        f: &FieldSpec,
        terms: impl IntoIterator<Item = ([u32; 3], FieldElement)>,
    ) -> Result<Self, PolyError> {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            add_term(&mut map, f, Monomial(e), c);
        }
        let p = TriPoly { terms: map };
        if p.is_homogeneous() {
            Ok(p)
        } else {
            Err(PolyError::NotHomogeneous)
        }
    }

    fn from_map(terms: BTreeMap<Monomial, FieldElement>) -> Self {
        let p = TriPoly { terms };
        debug_assert!(p.is_homogeneous(), "homogeneity lost");
        p
    }

    fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|m| m.degree())
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, FieldElement)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    pub fn coeff(&self, exps: [u32; 3]) -> FieldElement {
        self.terms
            .get(&Monomial(exps))
            .copied()
            .unwrap_or(FieldElement::ZERO)
    }

    pub fn leading_term(&self) -> Option<(Monomial, FieldElement)> {
        self.terms.last_key_value().map(|(m, c)| (*m, *c))
    }

    pub fn add(&self, f: &FieldSpec, other: &TriPoly) -> TriPoly {
        assert!(
            self.is_zero() || other.is_zero() || self.degree() == other.degree(),
            "adding polynomials of different degrees"
        );
        let mut terms = self.terms.clone();
        for (m, c) in other.terms() {
            add_term(&mut terms, f, m, c);
        }
        TriPoly::from_map(terms)
    }

    pub fn neg(&self, f: &FieldSpec) -> TriPoly {
        TriPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, f.neg(*c))).collect(),
        }
    }

    pub fn sub(&self, f: &FieldSpec, other: &TriPoly) -> TriPoly {
        self.add(f, &other.neg(f))
    }

    pub fn scale(&self, f: &FieldSpec, s: FieldElement) -> TriPoly {
        if s.is_zero() {
            return TriPoly::zero();
        }
        TriPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, f.mul(*c, s))).collect(),
        }
    }

    pub fn mul(&self, f: &FieldSpec, other: &TriPoly) -> TriPoly {
        let mut terms = BTreeMap::new();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                add_term(&mut terms, f, ma.mul(mb), f.mul(ca, cb));
            }
        }
        TriPoly::from_map(terms)
    }

    pub fn pow(&self, f: &FieldSpec, mut e: u32) -> TriPoly {
        let mut acc = TriPoly::constant(FieldElement::ONE);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        acc
    }

    /// Value at a coordinate triple (over `f`). Homogeneity makes vanishing
    /// independent of the representative.
    pub fn evaluate(&self, f: &FieldSpec, pt: [FieldElement; 3]) -> FieldElement {
        let logs = pt.map(|x| {
            if x.is_zero() {
                None
            } else {
                Some(f.log_of(x) as u64)
            }
        });
        let mut acc = FieldElement::ZERO;
        'terms: for (m, c) in &self.terms {
            let mut l = f.log_of(*c) as u64;
            for (&e, log) in m.0.iter().zip(&logs) {
                if e > 0 {
                    match log {
                        None => continue 'terms,
                        Some(li) => l += li * e as u64,
                    }
                }
            }
            acc = f.add(acc, f.exp_of(l));
        }
        acc
    }

    pub fn partial_derivative(&self, f: &FieldSpec, var: usize) -> Result<TriPoly, PolyError> {
        if var > 2 {
            return Err(PolyError::BadVariable(var));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms() {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut dm = m;
            dm.0[var] -= 1;
            add_term(&mut terms, f, dm, f.mul(f.from_int(e as i64), c));
        }
        Ok(TriPoly::from_map(terms))
    }

    pub fn gradient(&self, f: &FieldSpec) -> [TriPoly; 3] {
        [0, 1, 2].map(|i| self.partial_derivative(f, i).expect("index in range"))
    }

    /// `X0^q dF/dX0 + X1^q dF/dX1 + X2^q dF/dX2`, with `q` the order of `f`.
    pub fn frobenius_form(&self, f: &FieldSpec) -> TriPoly {
        let q = f.order();
        let mut terms = BTreeMap::new();
        for (i, partial) in self.gradient(f).iter().enumerate() {
            let mut shift = [0; 3];
            shift[i] = q;
            for (m, c) in partial.terms() {
                add_term(&mut terms, f, m.mul(Monomial(shift)), c);
            }
        }
        TriPoly::from_map(terms)
    }

    /// Full division by `g` in lex order: returns `(quotient, remainder)`.
    pub fn div_rem(&self, f: &FieldSpec, g: &TriPoly) -> Result<(TriPoly, TriPoly), PolyError> {
        let (lm, lc) = g.leading_term().ok_or(PolyError::ZeroDivisor)?;
        let lc_inv = f.inv(lc).expect("stored coefficients are nonzero");
        let tail: Vec<_> = g.terms().filter(|(m, _)| *m != lm).collect();
        let mut work = self.terms.clone();
        let mut quotient = BTreeMap::new();
        let mut remainder = BTreeMap::new();
        while let Some((m, c)) = work.pop_last() {
            if lm.divides(m) {
                let qm = m.quotient(lm);
                let qc = f.mul(c, lc_inv);
                quotient.insert(qm, qc);
                for &(gm, gc) in &tail {
                    add_term(&mut work, f, qm.mul(gm), f.neg(f.mul(qc, gc)));
                }
            } else {
                remainder.insert(m, c);
            }
        }
        Ok((TriPoly::from_map(quotient), TriPoly::from_map(remainder)))
    }

    /// `Some(h)` with `self = g * h` if `g` divides `self`, else `None`.
    ///
    /// Stops at the first leading term not divisible by `lead(g)`: every
    /// intermediate remainder of an exact quotient is itself a multiple of `g`.
    pub fn exact_divide(&self, f: &FieldSpec, g: &TriPoly) -> Result<Option<TriPoly>, PolyError> {
        let (lm, lc) = g.leading_term().ok_or(PolyError::ZeroDivisor)?;
        let lc_inv = f.inv(lc).expect("stored coefficients are nonzero");
        let tail: Vec<_> = g.terms().filter(|(m, _)| *m != lm).collect();
        let mut work = self.terms.clone();
        let mut quotient = BTreeMap::new();
        while let Some((m, c)) = work.pop_last() {
            if !lm.divides(m) {
                return Ok(None);
            }
            let qm = m.quotient(lm);
            let qc = f.mul(c, lc_inv);
            quotient.insert(qm, qc);
            for &(gm, gc) in &tail {
                add_term(&mut work, f, qm.mul(gm), f.neg(f.mul(qc, gc)));
            }
        }
        Ok(Some(TriPoly::from_map(quotient)))
    }

    /// Same as [`Self::exact_divide`] but in the lex order where variable
    /// `order[0]` is largest, then `order[1]`, then `order[2]`.
    pub fn exact_divide_in_order(
        &self,
        f: &FieldSpec,
        g: &TriPoly,
        order: [usize; 3],
    ) -> Result<Option<TriPoly>, PolyError> {
        let mut inverse = [0usize; 3];
        for (i, &v) in order.iter().enumerate() {
            inverse[v] = i;
        }
        let h = self.permute(order).exact_divide(f, &g.permute(order))?;
        Ok(h.map(|h| h.permute(inverse)))
    }

    /// Renames variables: new `X_i` is old `X_{perm[i]}`.
    pub fn permute(&self, perm: [usize; 3]) -> TriPoly {
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.permuted(perm), *c))
                .collect(),
        }
    }

    /// Pushes coefficients through a field embedding.
    pub fn embed(&self, ext: &Extension) -> TriPoly {
        TriPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, ext.embed(*c)))
                .collect(),
        }
    }

    /// Report form: leading term first, coefficients as indices,
    /// e.g. `1*X0^3 + 6*X1^2*X2`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            write!(out, "{}", c.index()).unwrap();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(out, "*X{i}").unwrap(),
                    _ => write!(out, "*X{i}^{e}").unwrap(),
                }
            }
        }
        out
    }
}

/// Binomial coefficients mod `p` up to row `n`, by Pascal's rule.
pub fn pascal_mod(n: u32, p: u32) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(n as usize + 1);
    for r in 0..=n as usize {
        let mut row = vec![1u32; r + 1];
        for k in 1..r {
            row[k] = (rows[r - 1][k - 1] + rows[r - 1][k]) % p;
        }
        rows.push(row);
    }
    rows
}

/// `(c0 X0 + c1 X1 + c2 X2)^k` expanded with multinomial coefficients mod `p`.
pub fn linear_power(f: &FieldSpec, c: [FieldElement; 3], k: u32) -> TriPoly {
    let binom = pascal_mod(k, f.characteristic());
    let pows: [Vec<FieldElement>; 3] = c.map(|ci| (0..=k).map(|e| f.pow(ci, e as u64)).collect());
    let mut terms = BTreeMap::new();
    for a in 0..=k {
        for b in 0..=(k - a) {
            let e = k - a - b;
            let multinomial =
                binom[k as usize][a as usize] as u64 * binom[(k - a) as usize][b as usize] as u64;
            let coeff = f.mul(
                f.from_int(multinomial as i64),
                f.mul(
                    pows[0][a as usize],
                    f.mul(pows[1][b as usize], pows[2][e as usize]),
                ),
            );
            add_term(&mut terms, f, Monomial([a, b, e]), coeff);
        }
    }
    TriPoly::from_map(terms)
}

/// `X0^k + X1^k + X2^k`.
pub fn fermat_poly(k: u32) -> TriPoly {
    let mut terms = BTreeMap::new();
    for i in 0..3 {
        let mut e = [0; 3];
        e[i] = k;
        terms.insert(Monomial(e), FieldElement::ONE);
    }
    TriPoly::from_map(terms)
}

/// `C = X0^d + X1^d + X2^d + (e0 X0 + e1 X1 + e2 X2)^d` with `d = (q-1)/2`.
pub fn build_curve_poly(f: &FieldSpec, e: [FieldElement; 3]) -> TriPoly {
    let d = f.half_order();
    let c = fermat_poly(d).add(f, &linear_power(f, e, d));
    assert!(!c.is_zero(), "curve polynomial cancelled completely");
    c
}

/// `d (X0^{3d} + X1^{3d} + X2^{3d} + X3^{3d})` with `X3 = e . X`: the
/// closed form of the Frobenius form of the curve polynomial.
pub fn frobenius_of_curve_closed_form(f: &FieldSpec, e: [FieldElement; 3]) -> TriPoly {
    let d = f.half_order();
    let sum = fermat_poly(3 * d).add(f, &linear_power(f, e, 3 * d));
    sum.scale(f, f.from_int(d as i64))
}

/// Checks
/// `X0^{3d}+X1^{3d}+X2^{3d}+X3^{3d} = C^3 - 3 (X0^d+X1^d+X2^d) X3^d C - 3 (X0^d+X1^d)(X0^d+X2^d)(X1^d+X2^d)`
/// by expanding both sides.
pub fn verify_cube_identity(f: &FieldSpec, e: [FieldElement; 3]) -> bool {
    let d = f.half_order();
    let x = |i: usize| {
        let mut m = [0; 3];
        m[i] = d;
        TriPoly::monomial(FieldElement::ONE, m)
    };
    let lhs = fermat_poly(3 * d).add(f, &linear_power(f, e, 3 * d));
    let c = build_curve_poly(f, e);
    let x3d = linear_power(f, e, d);
    let three = f.from_int(3);
    let middle = fermat_poly(d).mul(f, &x3d).mul(f, &c).scale(f, three);
    let last = x(0)
        .add(f, &x(1))
        .mul(f, &x(0).add(f, &x(2)))
        .mul(f, &x(1).add(f, &x(2)))
        .scale(f, three);
    let rhs = c.pow(f, 3).sub(f, &middle).sub(f, &last);
    lhs == rhs
}

/// A line `c0 X0 + c1 X1 + c2 X2 = 0`, scaled so the first nonzero
/// coefficient is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinearForm {
    pub coeffs: [FieldElement; 3],
}

impl LinearForm {
    pub fn new(f: &FieldSpec, coeffs: [FieldElement; 3]) -> Result<Self, PolyError> {
        normalize(f, coeffs)
            .map(|coeffs| LinearForm { coeffs })
            .ok_or(PolyError::ZeroLinearForm)
    }

    /// Every line of `P^2(F_q)`, in the same order as the plane points.
    pub fn all(f: &FieldSpec) -> impl Iterator<Item = LinearForm> + '_ {
        plane_points(f).map(|coeffs| LinearForm { coeffs })
    }

    pub fn to_poly(&self, f: &FieldSpec) -> TriPoly {
        TriPoly::from_terms(
            f,
            self.coeffs.iter().enumerate().map(|(i, &c)| {
                let mut e = [0; 3];
                e[i] = 1;
                (e, c)
            }),
        )
        .expect("linear terms are homogeneous")
    }

    pub fn evaluate(&self, f: &FieldSpec, pt: [FieldElement; 3]) -> FieldElement {
        (0..3).fold(FieldElement::ZERO, |acc, i| {
            f.add(acc, f.mul(self.coeffs[i], pt[i]))
        })
    }

    /// Two independent points spanning the line.
    pub fn basis(&self, f: &FieldSpec) -> [[FieldElement; 3]; 2] {
        let [c0, c1, c2] = self.coeffs;
        let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
        if !c0.is_zero() {
            // c0 = 1
            [[f.neg(c1), one, zero], [f.neg(c2), zero, one]]
        } else if !c1.is_zero() {
            [[one, zero, zero], [zero, f.neg(c2), one]]
        } else {
            [[one, zero, zero], [zero, one, zero]]
        }
    }

    /// The `q + 1` rational points of the line, normalized.
    pub fn rational_points(&self, f: &FieldSpec) -> Vec<[FieldElement; 3]> {
        let [a, b] = self.basis(f);
        let mut out: Vec<_> = f
            .elements()
            .map(|t| {
                let pt = [0, 1, 2].map(|i| f.add(a[i], f.mul(t, b[i])));
                normalize(f, pt).expect("basis points are independent")
            })
            .collect();
        out.push(normalize(f, b).expect("nonzero"));
        out
    }

    /// Report form, e.g. `X0 + 3*X2`.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            match c.index() {
                0 => {}
                1 => parts.push(format!("X{i}")),
                k => parts.push(format!("{k}*X{i}")),
            }
        }
        parts.join(" + ")
    }
}

/// Rational linear factors with multiplicities and the line-free cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactorization {
    pub factors: Vec<(LinearForm, u32)>,
    pub cofactor: TriPoly,
}

/// Divides out every `F_q`-rational line, as often as it divides.
///
/// A line can only divide `poly` if all of its `q + 1` rational points are
/// zeros of `poly`, so the zero set is computed once and used to screen the
/// `q^2 + q + 1` candidates before any division is attempted.
pub fn extract_linear_factors(f: &FieldSpec, poly: &TriPoly) -> LinearFactorization {
    if poly.is_constant() {
        return LinearFactorization {
            factors: Vec::new(),
            cofactor: poly.clone(),
        };
    }
    let mut on_curve = vec![false; plane_size(f.order() as u64) as usize];
    for pt in plane_points(f) {
        on_curve[plane_index(f, pt)] = poly.evaluate(f, pt).is_zero();
    }
    let mut cofactor = poly.clone();
    let mut factors = Vec::new();
    for line in LinearForm::all(f) {
        if cofactor.is_constant() {
            break;
        }
        if !line
            .rational_points(f)
            .iter()
            .all(|pt| on_curve[plane_index(f, *pt)])
        {
            continue;
        }
        let lp = line.to_poly(f);
        let mut mult = 0;
        while let Some(h) = cofactor.exact_divide(f, &lp).expect("line is nonzero") {
            cofactor = h;
            mult += 1;
        }
        if mult > 0 {
            factors.push((line, mult));
        }
    }
    LinearFactorization { factors, cofactor }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> FieldSpec {
        FieldSpec::new(7, 1).unwrap()
    }

    fn el(f: &FieldSpec, i: u64) -> FieldElement {
        f.element(i).unwrap()
    }

    fn poly(f: &FieldSpec, terms: &[([u32; 3], i64)]) -> TriPoly {
        TriPoly::from_terms(f, terms.iter().map(|&(e, c)| (e, f.from_int(c)))).unwrap()
    }

    #[test]
    fn curve_with_zero_parameters_is_fermat() {
        let f = f7();
        let c = build_curve_poly(&f, [FieldElement::ZERO; 3]);
        assert_eq!(c, fermat_poly(3));
        assert_eq!(c.num_terms(), 3);
    }

    #[test]
    fn curve_with_nonsquare_e0_loses_x0_cubed() {
        let f = f7();
        let c = build_curve_poly(&f, [el(&f, 3), FieldElement::ZERO, FieldElement::ZERO]);
        assert_eq!(c, poly(&f, &[([0, 3, 0], 1), ([0, 0, 3], 1)]));
    }

    #[test]
    fn curve_value_at_p0() {
        for (p, h) in [(7, 1), (11, 1), (5, 2)] {
            let f = FieldSpec::new(p, h).unwrap();
            for e0 in f.elements() {
                let e = [e0, el(&f, 2), el(&f, 1)];
                let c = build_curve_poly(&f, e);
                let expect = f.add(FieldElement::ONE, f.pow(e0, f.half_order() as u64));
                assert_eq!(
                    c.evaluate(
                        &f,
                        [FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO]
                    ),
                    expect
                );
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        let f = f7();
        let c = fermat_poly(3);
        assert_eq!(c.evaluate(&f, [el(&f, 1), el(&f, 2), el(&f, 4)]), el(&f, 3));
        assert_eq!(
            TriPoly::zero().evaluate(&f, [el(&f, 1), el(&f, 2), el(&f, 4)]),
            FieldElement::ZERO
        );
    }

    #[test]
    fn derivative_examples() {
        let f = FieldSpec::new(11, 1).unwrap();
        let d = f.half_order();
        let x0d = TriPoly::monomial(FieldElement::ONE, [d, 0, 0]);
        assert_eq!(
            x0d.partial_derivative(&f, 0).unwrap(),
            TriPoly::monomial(f.from_int(d as i64), [d - 1, 0, 0])
        );
        let x0p = TriPoly::monomial(FieldElement::ONE, [11, 0, 0]);
        assert!(x0p.partial_derivative(&f, 0).unwrap().is_zero());
        assert_eq!(
            x0p.partial_derivative(&f, 3),
            Err(PolyError::BadVariable(3))
        );
    }

    #[test]
    fn euler_formula_on_curves() {
        let f = FieldSpec::new(13, 1).unwrap();
        let c = build_curve_poly(&f, [el(&f, 2), el(&f, 5), el(&f, 7)]);
        let grad = c.gradient(&f);
        let mut sum = TriPoly::zero();
        for (i, g) in grad.iter().enumerate() {
            sum = sum.add(&f, &TriPoly::variable(i).mul(&f, g));
        }
        assert_eq!(sum, c.scale(&f, f.from_int(f.half_order() as i64)));
    }

    #[test]
    fn frobenius_of_variable_and_lines() {
        let f = f7();
        assert_eq!(
            TriPoly::variable(0).frobenius_form(&f),
            TriPoly::monomial(FieldElement::ONE, [7, 0, 0])
        );
        let line = LinearForm::new(&f, [el(&f, 1), el(&f, 3), el(&f, 5)]).unwrap();
        let phi = line.to_poly(&f).frobenius_form(&f);
        for pt in line.rational_points(&f) {
            assert!(phi.evaluate(&f, pt).is_zero());
        }
        assert!(line
            .to_poly(&f)
            .exact_divide(&f, &line.to_poly(&f))
            .unwrap()
            .is_some());
    }

    #[test]
    fn frobenius_of_curve_matches_closed_form() {
        for p in [5, 7, 11] {
            let f = FieldSpec::new(p, 1).unwrap();
            for e0 in f.elements() {
                for e1 in f.elements() {
                    let e = [e0, e1, el(&f, 1)];
                    let c = build_curve_poly(&f, e);
                    assert_eq!(c.frobenius_form(&f), frobenius_of_curve_closed_form(&f, e));
                }
            }
        }
    }

    #[test]
    fn cube_identity_examples() {
        let f = f7();
        assert!(verify_cube_identity(&f, [el(&f, 1), el(&f, 2), el(&f, 3)]));
        let g = FieldSpec::new(11, 1).unwrap();
        assert!(verify_cube_identity(&g, [FieldElement::ZERO; 3]));
    }

    #[test]
    fn division_examples() {
        let f = f7();
        let num = poly(&f, &[([2, 0, 0], 1), ([0, 2, 0], -1)]);
        let den = poly(&f, &[([1, 0, 0], 1), ([0, 1, 0], -1)]);
        assert_eq!(
            num.exact_divide(&f, &den).unwrap(),
            Some(poly(&f, &[([1, 0, 0], 1), ([0, 1, 0], 1)]))
        );
        // X1^3 + X2^3 vanishes on X1 = -c X2 iff c^3 = 1; 3^3 = -1 so X1 - 3 X2 = X1 + 4 X2 divides
        let cubic = poly(&f, &[([0, 3, 0], 1), ([0, 0, 3], 1)]);
        let good = poly(&f, &[([0, 1, 0], 1), ([0, 0, 1], 4)]);
        let bad = poly(&f, &[([0, 1, 0], 1), ([0, 0, 1], 3)]);
        assert!(cubic.exact_divide(&f, &good).unwrap().is_some());
        assert!(cubic.exact_divide(&f, &bad).unwrap().is_none());
        let c = fermat_poly(3);
        let sum = poly(&f, &[([1, 0, 0], 1), ([0, 1, 0], 1), ([0, 0, 1], 1)]);
        assert_eq!(c.exact_divide(&f, &sum).unwrap(), None);
        assert_eq!(
            c.exact_divide(&f, &TriPoly::zero()),
            Err(PolyError::ZeroDivisor)
        );
    }

    #[test]
    fn linear_factors_of_d_lines_curve() {
        let f = f7();
        let c = build_curve_poly(&f, [el(&f, 3), FieldElement::ZERO, FieldElement::ZERO]);
        let fac = extract_linear_factors(&f, &c);
        let lines: Vec<[u32; 3]> = fac
            .factors
            .iter()
            .map(|(l, m)| {
                assert_eq!(*m, 1);
                l.coeffs.map(|c| c.index())
            })
            .collect();
        // X1 + c X2 with (-c)^3 = -1, i.e. c a square mod 7
        assert_eq!(lines, vec![[0, 1, 1], [0, 1, 2], [0, 1, 4]]);
        assert!(fac.cofactor.is_constant());
    }

    #[test]
    fn fermat_cubic_over_f7_has_no_rational_lines() {
        let f = f7();
        let c = fermat_poly(3);
        let fac = extract_linear_factors(&f, &c);
        assert!(fac.factors.is_empty());
        assert_eq!(fac.cofactor, c);
        // the zero-set screen agrees with brute division over all 57 lines
        let brute = LinearForm::all(&f)
            .filter(|l| c.exact_divide(&f, &l.to_poly(&f)).unwrap().is_some())
            .count();
        assert_eq!(brute, 0);
    }

    #[test]
    fn repeated_linear_factor() {
        let f = f7();
        let l01 = poly(&f, &[([1, 0, 0], 1), ([0, 1, 0], 1)]);
        let x2 = TriPoly::variable(2);
        let g = l01.pow(&f, 2).mul(&f, &x2);
        let fac = extract_linear_factors(&f, &g);
        let got: Vec<_> = fac
            .factors
            .iter()
            .map(|(l, m)| (l.coeffs.map(|c| c.index()), *m))
            .collect();
        assert_eq!(got, vec![([1, 1, 0], 2), ([0, 0, 1], 1)]);
        assert_eq!(fac.cofactor, TriPoly::constant(FieldElement::ONE));
    }

    #[test]
    fn text_form() {
        let f = f7();
        let p = poly(&f, &[([3, 0, 0], 1), ([0, 2, 1], 6)]);
        assert_eq!(p.to_text(), "1*X0^3 + 6*X1^2*X2");
        assert_eq!(TriPoly::zero().to_text(), "0");
    }

    #[test]
    fn line_points() {
        let f = f7();
        for line in LinearForm::all(&f) {
            let pts = line.rational_points(&f);
            assert_eq!(pts.len(), 8);
            assert!(pts.iter().all(|p| line.evaluate(&f, *p).is_zero()));
            let distinct: std::collections::BTreeSet<_> = pts.iter().collect();
            assert_eq!(distinct.len(), 8);
        }
    }

    fn arb_poly(deg: u32) -> impl Strategy<Value = Vec<(u32, u32, u32)>> {
        prop::collection::vec((0..=deg, 0..=deg, 0u32..7), 1..6)
    }

    fn build(f: &FieldSpec, deg: u32, raw: &[(u32, u32, u32)]) -> TriPoly {
        TriPoly::from_terms(
            f,
            raw.iter().map(|&(a, b, c)| {
                let a = a.min(deg);
                let b = b.min(deg - a);
                ([a, b, deg - a - b], f.from_int(c as i64))
            }),
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn product_divides_back(ra in arb_poly(3), rb in arb_poly(2)) {
            let f = f7();
            let a = build(&f, 3, &ra);
            let b = build(&f, 2, &rb);
            prop_assume!(!b.is_zero());
            let prod = a.mul(&f, &b);
            prop_assert_eq!(prod.exact_divide(&f, &b).unwrap(), Some(a.clone()));
            for order in [[1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                prop_assert_eq!(prod.exact_divide_in_order(&f, &b, order).unwrap(), Some(a.clone()));
            }
            let (q, r) = prod.div_rem(&f, &b).unwrap();
            prop_assert!(r.is_zero());
            prop_assert_eq!(q, a);
        }

        #[test]
        fn divisibility_is_order_independent(ra in arb_poly(4), rb in arb_poly(2)) {
            let f = f7();
            let a = build(&f, 4, &ra);
            let b = build(&f, 2, &rb);
            prop_assume!(!b.is_zero());
            let base = a.exact_divide(&f, &b).unwrap().is_some();
            let (_, r) = a.div_rem(&f, &b).unwrap();
            prop_assert_eq!(base, r.is_zero());
            for order in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
                prop_assert_eq!(a.exact_divide_in_order(&f, &b, order).unwrap().is_some(), base);
            }
        }

        #[test]
        fn cofactor_is_line_free(ra in arb_poly(3)) {
            let f = f7();
            let a = build(&f, 3, &ra);
            prop_assume!(!a.is_zero());
            let fac = extract_linear_factors(&f, &a);
            let again = extract_linear_factors(&f, &fac.cofactor);
            prop_assert!(again.factors.is_empty());
            let mut rebuilt = fac.cofactor.clone();
            for (l, m) in &fac.factors {
                rebuilt = rebuilt.mul(&f, &l.to_poly(&f).pow(&f, *m));
            }
            prop_assert_eq!(rebuilt, a);
        }
    }
}
