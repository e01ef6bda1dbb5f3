//! Solution counts of diagonal quadratic equations and the number of points
//! of the curve with no zero coordinate.

use serde::{Deserialize, Serialize};

use crate::config::{CurveConfig, DParity, SignatureClass};
use crate::error::CountError;
use crate::finite_field::{FieldElement, FieldSpec};
use crate::polynomials::build_curve_poly;

/// `b_1 Y_1^2 + ... + b_s Y_s^2 = beta` with every `b_j` nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalEquation {
    coeffs: Vec<FieldElement>,
    rhs: FieldElement,
}

impl DiagonalEquation {
    pub fn new(coeffs: Vec<FieldElement>, rhs: FieldElement) -> Result<Self, CountError> {
        if coeffs.is_empty() {
            return Err(CountError::NoVariables);
        }
        if let Some(j) = coeffs.iter().position(|b| b.is_zero()) {
            return Err(CountError::ZeroCoefficient(j));
        }
        Ok(DiagonalEquation { coeffs, rhs })
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn rhs(&self) -> FieldElement {
        self.rhs
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }
}

/// Closed-form number of solutions in `F_q^s`.
pub fn count_diagonal(f: &FieldSpec, eq: &DiagonalEquation) -> i64 {
    let q = f.order() as i64;
    let s = eq.num_vars() as u32;
    let prod = eq
        .coeffs
        .iter()
        .fold(FieldElement::ONE, |acc, &b| f.mul(acc, b));
    let sign = |k: u32| {
        if k.is_multiple_of(2) {
            FieldElement::ONE
        } else {
            f.minus_one()
        }
    };
    let beta = eq.rhs;
    if s.is_multiple_of(2) {
        let eta = f.eta(f.mul(sign(s / 2), prod)) as i64;
        if beta.is_zero() {
            q.pow(s - 1) + eta * (q.pow(s / 2) - q.pow((s - 2) / 2))
        } else {
            q.pow(s - 1) - eta * q.pow((s - 2) / 2)
        }
    } else if beta.is_zero() {
        q.pow(s - 1)
    } else {
        let eta = f.eta(f.mul(sign((s - 1) / 2), f.mul(prod, beta))) as i64;
        q.pow(s - 1) + eta * q.pow((s - 1) / 2)
    }
}

/// Largest number of tuples [`brute_count_diagonal`] will enumerate.
pub const BRUTE_DIAGONAL_LIMIT: u64 = 1 << 22;

/// Exhaustive count over `F_q^s`.
pub fn brute_count_diagonal(f: &FieldSpec, eq: &DiagonalEquation) -> Result<i64, CountError> {
    let s = eq.num_vars();
    let size = (f.order() as u64).checked_pow(s as u32).unwrap_or(u64::MAX);
    if size > BRUTE_DIAGONAL_LIMIT {
        return Err(CountError::TooLarge { s, size });
    }
    // values[v] = number of y with b * y^2 = v, per coefficient
    let q = f.order() as usize;
    let mut total = vec![0i64; q];
    total[0] = 1;
    for &b in &eq.coeffs {
        let mut next = vec![0i64; q];
        for (acc, &ways) in total.iter().enumerate() {
            if ways == 0 {
                continue;
            }
            let acc = FieldElement::from_index_unchecked(acc as u32);
            for y in f.elements() {
                let v = f.add(acc, f.mul(b, f.mul(y, y)));
                next[v.index() as usize] += ways;
            }
        }
        total = next;
    }
    Ok(total[eq.rhs.index() as usize])
}

/// `N_(1)`, `N_(2)`, `N_(3)`: points `(1:x1:x2)` of the curve with
/// `x1 x2 != 0`, split by the characters of `x1` and `x2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineCountBreakdown {
    pub n1: i64,
    pub n2: i64,
    pub n3: i64,
    pub total: i64,
}

impl AffineCountBreakdown {
    fn new(n: [i64; 3]) -> Self {
        AffineCountBreakdown {
            n1: n[0],
            n2: n[1],
            n3: n[2],
            total: n.iter().sum(),
        }
    }
}

/// `(a1, a2, a3, alpha)` for case `i`.
fn substitution(
    f: &FieldSpec,
    e: [FieldElement; 3],
    i: usize,
) -> ([FieldElement; 3], FieldElement) {
    let lambda = f.lambda();
    let alpha = f.neg(e[0]);
    let a = match i {
        1 => [e[1], f.mul(lambda, e[2]), f.neg(lambda)],
        2 => [f.mul(lambda, e[1]), e[2], f.neg(lambda)],
        3 => [f.mul(lambda, e[1]), f.mul(lambda, e[2]), f.minus_one()],
        _ => unreachable!("case index is 1, 2 or 3"),
    };
    (a, alpha)
}

fn n_of(f: &FieldSpec, coeffs: &[FieldElement], rhs: FieldElement) -> i64 {
    count_diagonal(
        f,
        &DiagonalEquation::new(coeffs.to_vec(), rhs).expect("coefficients are nonzero"),
    )
}

/// `8 N_(i)` from the inclusion-exclusion expressions, one per vanishing
/// pattern of `(e0, e1, e2)`.
fn eight_n(f: &FieldSpec, e: [FieldElement; 3], i: usize) -> i64 {
    let q = f.order() as i64;
    let (a, alpha) = substitution(f, e, i);
    let nz = e.map(|x| !x.is_zero());
    let full_formula = || {
        let mut v = n_of(f, &a, alpha);
        for j in 0..3 {
            let rest: Vec<_> = (0..3).filter(|&k| k != j).map(|k| a[k]).collect();
            v -= n_of(f, &rest, alpha);
        }
        for aj in a {
            v += n_of(f, &[aj], alpha);
        }
        v
    };
    match nz {
        [true, true, true] => full_formula(),
        [false, true, true] => full_formula() - 1,
        [true, true, false] | [true, false, true] => {
            let j = if nz[1] { 0 } else { 1 };
            (q - 1)
                * (n_of(f, &[a[j], a[2]], alpha)
                    - n_of(f, &[a[j]], alpha)
                    - n_of(f, &[a[2]], alpha))
        }
        [true, false, false] => (q - 1) * (q - 1) * n_of(f, &[a[2]], alpha),
        [false, true, false] | [false, false, true] => {
            let j = if nz[1] { 0 } else { 1 };
            (q - 1)
                * (n_of(f, &[a[j], a[2]], alpha)
                    - n_of(f, &[a[j]], alpha)
                    - n_of(f, &[a[2]], alpha)
                    + 1)
        }
        [false, false, false] => 0,
    }
}

/// The affine count through the case expressions, each divided by 8 exactly.
pub fn affine_nonzero_count(config: &CurveConfig) -> Result<AffineCountBreakdown, CountError> {
    let f = &config.spec;
    let mut n = [0i64; 3];
    for i in 1..=3 {
        let v = eight_n(f, config.e, i);
        if v % 8 != 0 {
            return Err(CountError::NotDivisibleBy8 { case: i, value: v });
        }
        n[i - 1] = v / 8;
    }
    Ok(AffineCountBreakdown::new(n))
}

/// Direct enumeration of the affine points with no zero coordinate, split
/// into the three character cases.
pub fn brute_affine_nonzero_count(config: &CurveConfig) -> AffineCountBreakdown {
    let f = &config.spec;
    let c = build_curve_poly(f, config.e);
    let mut n = [0i64; 3];
    for x1 in f.nonzero_elements() {
        for x2 in f.nonzero_elements() {
            if c.evaluate(f, [FieldElement::ONE, x1, x2]).is_zero() {
                let case = match (f.eta(x1), f.eta(x2)) {
                    (1, -1) => 0,
                    (-1, 1) => 1,
                    (-1, -1) => 2,
                    _ => panic!("point with both coordinates square lies on the curve"),
                };
                n[case] += 1;
            }
        }
    }
    AffineCountBreakdown::new(n)
}

fn exact_div(numerator: i64, denominator: i64) -> Result<i64, CountError> {
    if numerator % denominator != 0 {
        return Err(CountError::NonIntegral {
            numerator,
            denominator,
        });
    }
    Ok(numerator / denominator)
}

/// Closed-form `N_(1) + N_(2) + N_(3)` for a signature row.
pub fn table2_closed_form(
    class: SignatureClass,
    parity: DParity,
    q: i64,
) -> Result<i64, CountError> {
    use SignatureClass::*;
    let odd = parity == DParity::Odd;
    let (num, den) = match class {
        PPP if odd => (3 * (q - 1) * (q - 3), 8),
        PPP => (3 * (q - 1) * (q - 1), 8),
        MPP if odd => (3 * q * q - 6 * q + 7, 8),
        MPP => (3 * (q - 1) * (q - 3), 8),
        MMP if odd => (3 * (q - 1) * (q - 3), 8),
        MMP => (3 * q * q - 6 * q + 11, 8),
        MMM if odd => (3 * (q * q - 2 * q + 5), 8),
        MMM => (3 * (q - 1) * (q - 3), 8),
        ZPP if odd => ((q - 1) * (3 * q - 5), 8),
        ZPP => (3 * (q - 1) * (q - 1), 8),
        MZP if odd => ((q - 1) * (3 * q - 5), 8),
        MZP => ((q - 1) * (3 * q - 7), 8),
        MMZ if odd => (3 * (q - 1) * (q - 3), 8),
        MMZ => ((q - 1) * (3 * q - 7), 8),
        ZZP => ((q - 1) * (q - 1), 4),
        MZZ => ((q - 1) * (q - 1), 2),
        ZZZ => return Err(CountError::UnknownSignature),
    };
    exact_div(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn eq(f: &FieldSpec, b: &[u64], beta: u64) -> DiagonalEquation {
        DiagonalEquation::new(
            b.iter().map(|&x| f.element(x).unwrap()).collect(),
            f.element(beta).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_examples() {
        let f = FieldSpec::new(7, 1).unwrap();
        assert_eq!(count_diagonal(&f, &eq(&f, &[1], 0)), 1);
        assert_eq!(count_diagonal(&f, &eq(&f, &[1], 2)), 2);
        assert_eq!(count_diagonal(&f, &eq(&f, &[1, 1], 0)), 1);
        assert_eq!(brute_count_diagonal(&f, &eq(&f, &[1, 1], 0)).unwrap(), 1);
        assert_eq!(brute_count_diagonal(&f, &eq(&f, &[1], 3)).unwrap(), 0);
        let g = FieldSpec::new(11, 1).unwrap();
        assert_eq!(
            brute_count_diagonal(&g, &eq(&g, &[1, 1, 1], 0)).unwrap(),
            121
        );
        assert_eq!(count_diagonal(&g, &eq(&g, &[1, 1, 1], 0)), 121);
    }

    #[test]
    fn rejects_zero_coefficient() {
        let f = FieldSpec::new(7, 1).unwrap();
        assert_eq!(
            DiagonalEquation::new(
                vec![FieldElement::ONE, FieldElement::ZERO],
                FieldElement::ONE
            ),
            Err(CountError::ZeroCoefficient(1))
        );
        assert_eq!(
            DiagonalEquation::new(vec![], f.element(1).unwrap()),
            Err(CountError::NoVariables)
        );
    }

    #[test]
    fn closed_form_matches_enumeration_f7() {
        let f = FieldSpec::new(7, 1).unwrap();
        for s in 1..=3u32 {
            let tuples = 6u64.pow(s);
            for t in 0..tuples {
                let b: Vec<u64> = (0..s).map(|j| (t / 6u64.pow(j)) % 6 + 1).collect();
                for beta in 0..7 {
                    let e = eq(&f, &b, beta);
                    assert_eq!(
                        count_diagonal(&f, &e),
                        brute_count_diagonal(&f, &e).unwrap(),
                        "{b:?} {beta}"
                    );
                }
            }
        }
    }

    #[test]
    fn affine_examples() {
        let f11 = Arc::new(FieldSpec::new(11, 1).unwrap());
        let c = CurveConfig::from_indices(f11.clone(), [1, 3, 9]).unwrap();
        assert_eq!(affine_nonzero_count(&c).unwrap().total, 30);
        assert_eq!(brute_affine_nonzero_count(&c).total, 30);
        let c = CurveConfig::from_indices(f11, [0, 0, 0]).unwrap();
        assert_eq!(
            affine_nonzero_count(&c).unwrap(),
            AffineCountBreakdown::new([0, 0, 0])
        );

        let f13 = Arc::new(FieldSpec::new(13, 1).unwrap());
        // 2 and 5 are non-squares mod 13
        let c = CurveConfig::from_indices(f13, [2, 5, 1]).unwrap();
        assert_eq!(c.signature().class(), SignatureClass::MMP);
        assert_eq!(affine_nonzero_count(&c).unwrap().total, 55);
        assert_eq!(brute_affine_nonzero_count(&c).total, 55);
    }

    #[test]
    fn table2_examples() {
        assert_eq!(
            table2_closed_form(SignatureClass::MPP, DParity::Odd, 11),
            Ok(38)
        );
        assert_eq!(
            table2_closed_form(SignatureClass::MZZ, DParity::Odd, 11),
            Ok(50)
        );
        assert_eq!(
            table2_closed_form(SignatureClass::ZZP, DParity::Even, 13),
            Ok(36)
        );
        assert_eq!(
            table2_closed_form(SignatureClass::ZZZ, DParity::Even, 13),
            Err(CountError::UnknownSignature)
        );
    }

    #[test]
    fn case_formulas_match_brute_force_and_table() {
        for (p, h) in [(5, 1), (7, 1), (11, 1), (13, 1), (5, 2)] {
            let f = Arc::new(FieldSpec::new(p, h).unwrap());
            for c in CurveConfig::all(&f) {
                let formula = affine_nonzero_count(&c).unwrap();
                assert_eq!(formula, brute_affine_nonzero_count(&c), "{:?}", c.indices());
                let s = c.signature();
                if s.class() != SignatureClass::ZZZ {
                    assert_eq!(
                        Ok(formula.total),
                        table2_closed_form(s.class(), s.parity, f.order() as i64),
                        "{:?}",
                        c.indices()
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn diagonal_count_matches_enumeration(
            field in prop::sample::select(vec![(5u32, 1u32), (11, 1), (13, 1), (17, 1), (5, 2), (7, 2)]),
            b in prop::collection::vec(1u64..1000, 1..=3),
            beta in 0u64..1000,
        ) {
            let f = FieldSpec::new(field.0, field.1).unwrap();
            let q = f.order() as u64;
            let b: Vec<u64> = b.into_iter().map(|x| 1 + x % (q - 1)).collect();
            let e = eq(&f, &b, beta % q);
            prop_assert_eq!(count_diagonal(&f, &e), brute_count_diagonal(&f, &e).unwrap());
        }

        #[test]
        fn affine_count_is_independent_of_lambda(e in prop::array::uniform3(0u64..13), pick in 0usize..6) {
            let base = FieldSpec::new(13, 1).unwrap();
            let nonsquares: Vec<_> = base.nonzero_elements().filter(|&u| base.eta(u) == -1).collect();
            let alt = Arc::new(base.clone().with_lambda(nonsquares[pick]).unwrap());
            let base = Arc::new(base);
            let a = affine_nonzero_count(&CurveConfig::from_indices(base, e).unwrap()).unwrap();
            let b = affine_nonzero_count(&CurveConfig::from_indices(alt, e).unwrap()).unwrap();
            prop_assert_eq!(a.total, b.total);
        }
    }
}
