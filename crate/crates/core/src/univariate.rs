//! Dense univariate polynomials over a [`FieldSpec`], constant term first.
//! Only what the line restrictions and the singularity probe need.

use crate::finite_field::{FieldElement, FieldSpec};

pub(crate) fn trim(mut a: Vec<FieldElement>) -> Vec<FieldElement> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub(crate) fn mul(f: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElement::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub(crate) fn eval(f: &FieldSpec, a: &[FieldElement], x: FieldElement) -> FieldElement {
    a.iter()
        .rev()
        .fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

fn rem(f: &FieldSpec, a: &[FieldElement], m: &[FieldElement]) -> Vec<FieldElement> {
    let mut r = trim(a.to_vec());
    let lead_inv = f.inv(*m.last().expect("nonzero modulus")).expect("trimmed");
    while r.len() >= m.len() {
        let shift = r.len() - m.len();
        let c = f.mul(*r.last().unwrap(), lead_inv);
        for (i, &mc) in m.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, mc));
        }
        r = trim(r);
    }
    r
}

/// Greatest common divisor (not normalized). `gcd(0, 0)` is the empty vector.
pub(crate) fn gcd(f: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_shared_root() {
        let f = FieldSpec::new(7, 1).unwrap();
        let e = |i| f.element(i).unwrap();
        // (x-1)(x-2) and (x-1)(x-3)
        let a = mul(&f, &[e(6), e(1)], &[e(5), e(1)]);
        let b = mul(&f, &[e(6), e(1)], &[e(4), e(1)]);
        let g = gcd(&f, &a, &b);
        assert_eq!(g.len(), 2);
        assert!(eval(&f, &g, e(1)).is_zero());
        assert_eq!(gcd(&f, &[e(1), e(1)], &[e(2), e(1)]).len(), 1);
    }
}
