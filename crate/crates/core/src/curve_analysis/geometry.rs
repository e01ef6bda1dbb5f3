//! Point counts, tangents, intersection multiplicities, inflections,
//! singularity probing and the numerical criteria applied to `G`.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::finite_field::{Extension, FieldElement, FieldSpec};
use crate::polynomials::{LinearForm, TriPoly};
use crate::projective::{normalize, plane_points, plane_size, ProjectivePoint};
use crate::univariate;

/// Environment variable that overrides [`DEFAULT_ENUM_CEILING`].
pub const ENUM_CEILING_VAR: &str = "FERMAT_SLICE_MAX_ENUM";
/// Default limit on the number of points (or probe lines) enumerated.
pub const DEFAULT_ENUM_CEILING: u64 = 1 << 28;
/// Deepest extension level the singularity probe accepts.
pub const MAX_PROBE_DEPTH: u32 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    pub ceiling: u64,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            ceiling: DEFAULT_ENUM_CEILING,
        }
    }
}

impl EnumLimits {
    /// Reads [`ENUM_CEILING_VAR`], falling back to the default when unset or
    /// unparsable.
    pub fn from_env() -> Self {
        let ceiling = std::env::var(ENUM_CEILING_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_ENUM_CEILING);
        EnumLimits { ceiling }
    }

    fn check(&self, size: u64) -> Result<(), AnalysisError> {
        if size > self.ceiling {
            Err(AnalysisError::ResourceGuard {
                size,
                ceiling: self.ceiling,
            })
        } else {
            Ok(())
        }
    }
}

/// Per-field context shared by every configuration: enumeration limits and
/// lazily built extension fields.
#[derive(Debug)]
pub struct Analyzer {
    spec: Arc<FieldSpec>,
    limits: EnumLimits,
    extensions: Vec<OnceLock<Result<Arc<Extension>, AnalysisError>>>,
}

impl Analyzer {
    pub fn new(spec: Arc<FieldSpec>, limits: EnumLimits) -> Self {
        let extensions = (0..MAX_PROBE_DEPTH).map(|_| OnceLock::new()).collect();
        Analyzer {
            spec,
            limits,
            extensions,
        }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn limits(&self) -> EnumLimits {
        self.limits
    }

    /// `F_{q^k}` with the embedding of the base field, built on first use.
    pub fn extension(&self, k: u32) -> Result<Arc<Extension>, AnalysisError> {
        if k == 0 || k > MAX_PROBE_DEPTH {
            return Err(AnalysisError::Precondition(format!(
                "extension level must be in 1..={MAX_PROBE_DEPTH} (got {k})"
            )));
        }
        self.extensions[(k - 1) as usize]
            .get_or_init(|| {
                let q_k = (self.spec.order() as u64).saturating_pow(k);
                self.limits.check(q_k)?;
                Ok(Arc::new(self.spec.extension(k)?))
            })
            .clone()
    }

    /// Number of points of `P^2(F_{q^k})` on `poly`.
    pub fn count_points(&self, poly: &TriPoly, k: u32) -> Result<u64, AnalysisError> {
        if k == 1 {
            return brute_count_points(&self.spec, poly, self.limits);
        }
        let q_k = (self.spec.order() as u64).saturating_pow(k);
        self.limits.check(plane_size(q_k))?;
        let ext = self.extension(k)?;
        brute_count_points(&ext.field, &poly.embed(&ext), self.limits)
    }

    /// Singular points of `g` over `F_{q^k}` for `k = 1..=depth`.
    pub fn singularity_probe(
        &self,
        g: &TriPoly,
        depth: u32,
    ) -> Result<Vec<ProjectivePoint>, AnalysisError> {
        if g.is_constant() {
            return Err(AnalysisError::Precondition(
                "singularity probe needs a nonconstant polynomial".into(),
            ));
        }
        let mut found = Vec::new();
        for k in 1..=depth {
            if k == 1 {
                found.extend(singular_points(&self.spec, g, 1, self.limits)?);
            } else {
                let ext = self.extension(k)?;
                found.extend(singular_points(&ext.field, &g.embed(&ext), k, self.limits)?);
            }
        }
        Ok(found)
    }
}

/// Number of points of `P^2(F)` on `poly`, with `F` the field of its
/// coefficients.
pub fn brute_count_points(
    f: &FieldSpec,
    poly: &TriPoly,
    limits: EnumLimits,
) -> Result<u64, AnalysisError> {
    limits.check(plane_size(f.order() as u64))?;
    Ok(plane_points(f)
        .filter(|&pt| poly.evaluate(f, pt).is_zero())
        .count() as u64)
}

/// Rational points of `poly`.
pub fn rational_points(f: &FieldSpec, poly: &TriPoly) -> Vec<[FieldElement; 3]> {
    plane_points(f)
        .filter(|&pt| poly.evaluate(f, pt).is_zero())
        .collect()
}

fn gradient_at(f: &FieldSpec, grad: &[TriPoly; 3], pt: [FieldElement; 3]) -> [FieldElement; 3] {
    [0, 1, 2].map(|i| grad[i].evaluate(f, pt))
}

/// `sum_i (dF/dX_i)(P) X_i = 0`.
pub fn tangent_line(
    f: &FieldSpec,
    poly: &TriPoly,
    pt: [FieldElement; 3],
) -> Result<LinearForm, AnalysisError> {
    if !poly.evaluate(f, pt).is_zero() {
        return Err(AnalysisError::PointNotOnCurve);
    }
    tangent_from_gradient(f, gradient_at(f, &poly.gradient(f), pt), pt)
}

fn tangent_from_gradient(
    f: &FieldSpec,
    grad: [FieldElement; 3],
    pt: [FieldElement; 3],
) -> Result<LinearForm, AnalysisError> {
    LinearForm::new(f, grad).map_err(|_| {
        AnalysisError::SingularPoint(
            normalize(f, pt)
                .expect("points are nonzero")
                .map(|c| c.index()),
        )
    })
}

/// A point of the line other than `pt`.
fn second_point(f: &FieldSpec, line: &LinearForm, pt: [FieldElement; 3]) -> [FieldElement; 3] {
    let [a, b] = line.basis(f);
    let proportional = |u: [FieldElement; 3]| normalize(f, u) == normalize(f, pt);
    if proportional(a) {
        b
    } else {
        a
    }
}

/// `t -> poly(pt + t * dir)` as a dense univariate polynomial.
fn restrict(
    f: &FieldSpec,
    poly: &TriPoly,
    pt: [FieldElement; 3],
    dir: [FieldElement; 3],
) -> Vec<FieldElement> {
    let deg = poly.degree().unwrap_or(0) as usize;
    // powers[i][e] = (pt_i + t dir_i)^e
    let powers: Vec<Vec<Vec<FieldElement>>> = (0..3)
        .map(|i| {
            let base = univariate::trim(vec![pt[i], dir[i]]);
            let mut out = vec![vec![FieldElement::ONE]];
            for e in 1..=deg {
                out.push(univariate::mul(f, &out[e - 1], &base));
            }
            out
        })
        .collect();
    let mut acc = vec![FieldElement::ZERO; deg + 1];
    for (m, c) in poly.terms() {
        let [a, b, e] = m.0.map(|x| x as usize);
        let prod = univariate::mul(
            f,
            &univariate::mul(f, &powers[0][a], &powers[1][b]),
            &powers[2][e],
        );
        for (k, v) in prod.into_iter().enumerate() {
            acc[k] = f.add(acc[k], f.mul(c, v));
        }
    }
    univariate::trim(acc)
}

/// Order of vanishing at `pt` of `poly` restricted to `line`.
pub fn intersection_multiplicity(
    f: &FieldSpec,
    poly: &TriPoly,
    line: &LinearForm,
    pt: [FieldElement; 3],
) -> Result<u32, AnalysisError> {
    if !line.evaluate(f, pt).is_zero() || !poly.evaluate(f, pt).is_zero() {
        return Err(AnalysisError::PointNotOnCurve);
    }
    let dir = second_point(f, line, pt);
    let g = restrict(f, poly, pt, dir);
    if g.is_empty() {
        return Err(AnalysisError::LineIsComponent);
    }
    Ok(g.iter()
        .position(|c| !c.is_zero())
        .expect("trimmed and nonempty") as u32)
}

/// A rational point where the tangent meets the curve to order at least 3.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflectionDatum {
    pub point: ProjectivePoint,
    pub tangent: LinearForm,
    pub mult: u32,
}

/// All rational inflection points of `g`.
///
/// The second-order Taylor coefficient along the tangent direction `Q` is
/// `Q^T H(P) Q / 2`; only points where it vanishes get the full restriction.
pub fn rational_inflections(
    f: &FieldSpec,
    g: &TriPoly,
) -> Result<Vec<InflectionDatum>, AnalysisError> {
    if g.is_constant() {
        return Ok(Vec::new());
    }
    let grad = g.gradient(f);
    let hess: [[TriPoly; 3]; 3] = [0, 1, 2]
        .map(|i| [0, 1, 2].map(|j| grad[i].partial_derivative(f, j).expect("index in range")));
    let mut out = Vec::new();
    for pt in rational_points(f, g) {
        let tangent = tangent_from_gradient(f, gradient_at(f, &grad, pt), pt)?;
        let dir = second_point(f, &tangent, pt);
        let mut quad = FieldElement::ZERO;
        for i in 0..3 {
            for j in 0..3 {
                if dir[i].is_zero() || dir[j].is_zero() {
                    continue;
                }
                let h = hess[i][j].evaluate(f, pt);
                quad = f.add(quad, f.mul(h, f.mul(dir[i], dir[j])));
            }
        }
        if !quad.is_zero() {
            continue;
        }
        let mult = intersection_multiplicity(f, g, &tangent, pt)?;
        if mult >= 3 {
            out.push(InflectionDatum {
                point: ProjectivePoint {
                    coords: pt,
                    level: 1,
                },
                tangent,
                mult,
            });
        }
    }
    Ok(out)
}

/// Dense coefficients in `Y` of `poly(x0, x1, Y)`.
fn slice_in_last(
    f: &FieldSpec,
    poly: &TriPoly,
    x0: FieldElement,
    x1: FieldElement,
) -> Vec<FieldElement> {
    let deg = poly.degree().unwrap_or(0) as usize;
    let mut out = vec![FieldElement::ZERO; deg + 1];
    for (m, c) in poly.terms() {
        let [a, b, e] = m.0;
        let v = f.mul(c, f.mul(f.pow(x0, a as u64), f.pow(x1, b as u64)));
        out[e as usize] = f.add(out[e as usize], v);
    }
    univariate::trim(out)
}

/// Common zeros of `g` and its partials over `F`, with `F` the field of
/// the coefficients, reported at extension level `level`.
fn singular_points(
    f: &FieldSpec,
    g: &TriPoly,
    level: u32,
    limits: EnumLimits,
) -> Result<Vec<ProjectivePoint>, AnalysisError> {
    limits.check(f.order() as u64 + 1)?;
    let grad = g.gradient(f);
    let system: Vec<&TriPoly> = std::iter::once(g).chain(grad.iter()).collect();
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    let mut found = Vec::new();
    let mut scan = |x0: FieldElement, x1: FieldElement| {
        let mut common: Vec<FieldElement> = Vec::new();
        for p in &system {
            common = univariate::gcd(f, &common, &slice_in_last(f, p, x0, x1));
            if common.len() == 1 {
                return;
            }
        }
        for y in f.elements() {
            if common.is_empty() || univariate::eval(f, &common, y).is_zero() {
                found.push(ProjectivePoint {
                    coords: [x0, x1, y],
                    level,
                });
            }
        }
    };
    for x1 in f.elements() {
        scan(one, x1);
    }
    scan(zero, one);
    let top = [zero, zero, one];
    if system.iter().all(|p| p.evaluate(f, top).is_zero()) {
        found.push(ProjectivePoint { coords: top, level });
    }
    Ok(found)
}

/// Outcome of the Frobenius classicality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusCheck {
    /// `G` divides `Phi_q(G)`.
    pub divides_own_form: bool,
    /// `G` divides `Phi_q(C)`.
    pub divides_curve_form: bool,
}

impl FrobeniusCheck {
    pub fn classical(&self) -> bool {
        !self.divides_own_form
    }
}

/// Tests whether `g` divides `Phi_q(g)` and `Phi_q(c)`.
pub fn frobenius_classical_check(
    f: &FieldSpec,
    g: &TriPoly,
    c: &TriPoly,
) -> Result<FrobeniusCheck, AnalysisError> {
    if g.degree().is_none_or(|n| n < 2) {
        return Err(AnalysisError::Precondition(
            "Frobenius classicality needs degree at least 2".into(),
        ));
    }
    Ok(FrobeniusCheck {
        divides_own_form: g.frobenius_form(f).exact_divide(f, g)?.is_some(),
        divides_curve_form: c.frobenius_form(f).exact_divide(f, g)?.is_some(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StohrVolochCheck {
    pub bound: i64,
    pub attained: bool,
}

/// `(n(n + q - 1) - sum(m_i - 2)) / 2` and whether `count` reaches it.
pub fn stohr_voloch_check(
    n: i64,
    q: i64,
    inflections: &[InflectionDatum],
    count: i64,
) -> Result<StohrVolochCheck, AnalysisError> {
    let excess: i64 = inflections.iter().map(|x| x.mult as i64 - 2).sum();
    let twice = n * (n + q - 1) - excess;
    if twice % 2 != 0 {
        return Err(AnalysisError::NonIntegral(format!("({twice})/2")));
    }
    Ok(StohrVolochCheck {
        bound: twice / 2,
        attained: count == twice / 2,
    })
}

/// `count >= n(n + q - 1)/2 - max(n - 1, 2n - 5)`, compared in integers.
pub fn irreducibility_evidence(n: i64, q: i64, count: i64) -> bool {
    2 * count >= n * (n + q - 1) - 2 * (n - 1).max(2 * n - 5)
}

/// `count > n(n + q - 1)/p`, compared in integers.
pub fn classicality_evidence(n: i64, q: i64, p: i64, count: i64) -> Result<bool, AnalysisError> {
    if n < 1 {
        return Err(AnalysisError::Precondition(
            "classicality evidence needs n >= 1".into(),
        ));
    }
    Ok(count * p > n * (n + q - 1))
}
