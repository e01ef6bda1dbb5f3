//! Decomposition of the curve into rational lines and a nonlinear part `G`,
//! with every count and geometric claim checked against enumeration.

mod geometry;
mod tables;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use geometry::{
    brute_count_points, classicality_evidence, frobenius_classical_check,
    intersection_multiplicity, irreducibility_evidence, rational_inflections, rational_points,
    stohr_voloch_check, tangent_line, Analyzer, EnumLimits, FrobeniusCheck, InflectionDatum,
    StohrVolochCheck, DEFAULT_ENUM_CEILING, ENUM_CEILING_VAR, MAX_PROBE_DEPTH,
};
pub use tables::{
    expected_inflections, g_row, predict_g, predict_lines, table1_value, zero_coord_points,
    DeficiencyKind, ExpectedInflection, GPrediction, GRow, LinePrediction, Table1Value,
    ZeroCoordPoints,
};

use crate::config::{CurveConfig, EtaSignature, SignatureClass};
use crate::error::AnalysisError;
use crate::finite_field::{FieldSpec, FieldSummary};
use crate::polynomials::{build_curve_poly, extract_linear_factors, LinearForm, TriPoly};
use crate::projective::ProjectivePoint;
use crate::quadratic_counts::{affine_nonzero_count, table2_closed_form, AffineCountBreakdown};

/// The deficiency `i` solved from the count of `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Deficiency {
    /// `n <= 2`: the count does not determine `i`.
    Indeterminate,
    /// The union of `d` lines.
    NotApplicable,
    #[serde(untagged)]
    Value(i64),
}

impl fmt::Display for Deficiency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deficiency::Value(i) => write!(f, "{i}"),
            Deficiency::Indeterminate => f.write_str("indeterminate"),
            Deficiency::NotApplicable => f.write_str("n/a"),
        }
    }
}

/// A claim that did not hold for this configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub claim: String,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    None,
    /// `C` is `d` concurrent lines.
    DLines,
    /// The lines exhaust the degree, so `G` is constant.
    EmptyG,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Extension levels `1..=probe_depth` scanned for singular points; 0 skips.
    pub probe_depth: u32,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { probe_depth: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub field: FieldSummary,
    pub q: i64,
    pub d: i64,
    pub e: [u32; 3],
    pub signature: EtaSignature,
    pub signature_class: SignatureClass,
    /// `q = 5`: every `G` has degree at most 2.
    pub small_degree: bool,
    pub degeneracy: Degeneracy,
    pub zero_coord: ZeroCoordPoints,
    pub table1: Table1Value,
    pub affine: AffineCountBreakdown,
    pub table2: Option<i64>,
    pub count_c: i64,
    pub lines: Vec<(LinearForm, u32)>,
    pub predicted_lines: LinePrediction,
    pub n_lines: usize,
    pub is_d_lines: bool,
    #[serde(serialize_with = "poly_text")]
    pub g: TriPoly,
    pub n: i64,
    pub count_g: i64,
    pub prediction: Option<GPrediction>,
    pub deficiency_i: Deficiency,
    pub inflections: Vec<InflectionDatum>,
    pub sv: Option<StohrVolochCheck>,
    pub frobenius: Option<FrobeniusCheck>,
    pub irreducible_evidence: Option<bool>,
    pub classicality_evidence: Option<bool>,
    pub probe_depth: u32,
    /// `None` when the probe did not run.
    pub singular_points: Option<Vec<ProjectivePoint>>,
    pub violations: Vec<Violation>,
}

fn poly_text<S: serde::Serializer>(p: &TriPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_text())
}

impl DecompositionReport {
    pub fn predicted_count_g(&self) -> Option<i64> {
        self.prediction.map(|p| p.count_g)
    }

    pub fn frobenius_classical(&self) -> Option<bool> {
        self.frobenius
            .map(|f| f.classical() && !f.divides_curve_form)
    }

    pub fn singular_found(&self) -> Option<bool> {
        self.singular_points.as_ref().map(|v| !v.is_empty())
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn check(&mut self, ok: bool, claim: &str, detail: impl FnOnce() -> String) {
        if !ok {
            self.0.push(Violation {
                claim: claim.into(),
                detail: detail(),
            });
        }
    }
}

/// Analyzes one configuration. Claims that fail are collected in
/// `violations`; only resource limits and precondition failures are errors.
pub fn decompose(
    analyzer: &Analyzer,
    config: &CurveConfig,
    options: AnalysisOptions,
) -> Result<DecompositionReport, AnalysisError> {
    let f = &*config.spec;
    let q = f.order() as i64;
    let d = f.half_order() as i64;
    let signature = config.signature();
    let class = signature.class();
    let mut v = Collector(Vec::new());

    let c = build_curve_poly(f, config.e);
    let count_c = analyzer.count_points(&c, 1)? as i64;
    let zero_coord = zero_coord_points(config);
    let table1 = table1_value(class, signature.parity, d);
    v.check(
        (zero_coord.two_zero, zero_coord.one_zero) == (table1.two_zero, table1.one_zero),
        "zero-coordinate point count",
        || {
            format!(
                "enumerated {:?}, closed form {:?}",
                (zero_coord.two_zero, zero_coord.one_zero),
                table1
            )
        },
    );
    let affine = affine_nonzero_count(config)?;
    let table2 = if class == SignatureClass::ZZZ {
        None
    } else {
        Some(table2_closed_form(class, signature.parity, q)?)
    };
    v.check(
        table2.unwrap_or(0) == affine.total,
        "affine case formulas",
        || {
            format!(
                "case formulas give {}, closed form {:?}",
                affine.total, table2
            )
        },
    );
    v.check(
        count_c == table1.total() + table2.unwrap_or(0),
        "point count of C",
        || {
            format!(
                "enumerated {count_c}, closed form {}",
                table1.total() + table2.unwrap_or(0)
            )
        },
    );

    let fac = extract_linear_factors(f, &c);
    let predicted_lines = predict_lines(config);
    let is_d_lines = predicted_lines == LinePrediction::DLines;
    v.check(
        fac.factors.iter().all(|(_, m)| *m == 1),
        "simple linear components",
        || {
            format!(
                "multiplicities {:?}",
                fac.factors.iter().map(|(_, m)| *m).collect::<Vec<_>>()
            )
        },
    );
    let extracted: Vec<LinearForm> = {
        let mut l: Vec<_> = fac.factors.iter().map(|(l, _)| *l).collect();
        l.sort();
        l
    };
    let g = fac.cofactor.clone();
    let n = g.degree().unwrap_or(0) as i64;
    v.check(
        n == d - fac.factors.iter().map(|(_, m)| *m as i64).sum::<i64>(),
        "degree bookkeeping",
        || format!("deg G = {n}"),
    );

    let mut report = DecompositionReport {
        field: f.summary(),
        q,
        d,
        e: config.indices(),
        signature,
        signature_class: class,
        small_degree: q == 5,
        degeneracy: Degeneracy::None,
        zero_coord,
        table1,
        affine,
        table2,
        count_c,
        lines: fac.factors.clone(),
        predicted_lines: predicted_lines.clone(),
        n_lines: fac.factors.len(),
        is_d_lines,
        g: g.clone(),
        n,
        count_g: 0,
        prediction: None,
        deficiency_i: Deficiency::NotApplicable,
        inflections: Vec::new(),
        sv: None,
        frobenius: None,
        irreducible_evidence: None,
        classicality_evidence: None,
        probe_depth: options.probe_depth,
        singular_points: None,
        violations: Vec::new(),
    };

    if is_d_lines {
        report.degeneracy = Degeneracy::DLines;
        v.check(
            extracted.len() as i64 == d && n == 0,
            "union of d lines",
            || format!("{} lines extracted, cofactor degree {n}", extracted.len()),
        );
        let mut product = g.clone();
        for (l, m) in &fac.factors {
            product = product.mul(f, &l.to_poly(f).pow(f, *m));
        }
        v.check(product == c, "union of d lines", || {
            "product of the lines differs from C".into()
        });
        report.violations = v.0;
        return Ok(report);
    }

    let LinePrediction::Lines(predicted) = &predicted_lines else {
        unreachable!()
    };
    v.check(&extracted == predicted, "linear components", || {
        format!(
            "extracted [{}], predicted [{}]",
            extracted
                .iter()
                .map(|l| l.to_text())
                .collect::<Vec<_>>()
                .join(", "),
            predicted
                .iter()
                .map(|l| l.to_text())
                .collect::<Vec<_>>()
                .join(", ")
        )
    });

    let count_g = analyzer.count_points(&g, 1)? as i64;
    report.count_g = count_g;
    let mut union = BTreeSet::new();
    for l in &extracted {
        for pt in l.rational_points(f) {
            v.check(
                !g.evaluate(f, pt).is_zero(),
                "lines disjoint from G",
                || format!("{} meets G at {:?}", l.to_text(), pt.map(|x| x.index())),
            );
            union.insert(pt);
        }
    }
    v.check(
        count_g == count_c - union.len() as i64,
        "point bookkeeping",
        || {
            format!(
                "#G = {count_g}, #C - #lines = {}",
                count_c - union.len() as i64
            )
        },
    );

    let prediction = predict_g(class, signature.parity, q).expect("not the union of d lines");
    report.prediction = Some(prediction);
    v.check(prediction.n == n, "degree of G", || {
        format!("deg G = {n}, predicted {}", prediction.n)
    });
    v.check(prediction.count_g == count_g, "point count of G", || {
        format!("#G = {count_g}, predicted {}", prediction.count_g)
    });

    report.deficiency_i = if n > 2 {
        let num = n * (n + q - 1) - 2 * count_g;
        if num % (n - 2) == 0 {
            let i = num / (n - 2);
            v.check(
                [0, 1, 2, 3, n, 3 * n].contains(&i),
                "deficiency range",
                || format!("i = {i}"),
            );
            Deficiency::Value(i)
        } else {
            v.check(false, "deficiency range", || {
                format!("i = {num}/{} is not an integer", n - 2)
            });
            Deficiency::Indeterminate
        }
    } else {
        Deficiency::Indeterminate
    };

    if n == 0 {
        report.degeneracy = Degeneracy::EmptyG;
        report.violations = v.0;
        return Ok(report);
    }

    match rational_inflections(f, &g) {
        Ok(infl) => report.inflections = infl,
        Err(AnalysisError::SingularPoint(pt)) => {
            v.check(false, "nonsingularity", || {
                format!("singular rational point {pt:?}")
            });
        }
        Err(e) => return Err(e),
    }
    let sv = stohr_voloch_check(n, q, &report.inflections, count_g)?;
    report.sv = Some(sv);
    v.check(sv.attained, "Stohr-Voloch equality", || {
        format!("bound {}, #G = {count_g}", sv.bound)
    });

    if prediction.i > 0 && n >= 3 {
        let expected = expected_inflections(config);
        let mut got: Vec<_> = report
            .inflections
            .iter()
            .map(|x| (x.point, x.tangent, x.mult))
            .collect();
        got.sort();
        let mut want: Vec<_> = expected
            .iter()
            .map(|x| (x.point, x.tangent, n as u32))
            .collect();
        want.sort();
        v.check(got == want, "total inflection points", || {
            let diff: Vec<_> = got
                .iter()
                .filter(|x| !want.contains(x))
                .map(|x| (x.0.indices(), x.2))
                .collect();
            format!(
                "found {} inflections, expected {}; unexpected {diff:?}",
                got.len(),
                want.len()
            )
        });
    }

    if n >= 2 {
        let chk = frobenius_classical_check(f, &g, &c)?;
        report.frobenius = Some(chk);
        v.check(
            chk.classical() && !chk.divides_curve_form,
            "Frobenius classicality",
            || format!("{chk:?}"),
        );
        report.irreducible_evidence = Some(irreducibility_evidence(n, q, count_g));
    }
    report.classicality_evidence = Some(classicality_evidence(
        n,
        q,
        f.characteristic() as i64,
        count_g,
    )?);

    if options.probe_depth > 0 {
        let found = analyzer.singularity_probe(&g, options.probe_depth)?;
        v.check(found.is_empty(), "nonsingularity", || {
            format!("{} singular points", found.len())
        });
        report.singular_points = Some(found);
    }

    report.violations = v.0;
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimOutcome {
    pub claim: String,
    pub status: ClaimStatus,
}

/// Itemized outcome of the main classification claims.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainTheoremCheck {
    /// The union of `d` lines lies outside the hypothesis.
    pub skipped: bool,
    pub items: Vec<ClaimOutcome>,
}

impl MainTheoremCheck {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|c| c.status != ClaimStatus::Fail)
    }
}

pub fn theorem_main_check(report: &DecompositionReport) -> MainTheoremCheck {
    if report.is_d_lines {
        return MainTheoremCheck {
            skipped: true,
            items: Vec::new(),
        };
    }
    let status = |applicable: bool, ok: bool| match (applicable, ok) {
        (false, _) => ClaimStatus::NotApplicable,
        (true, true) => ClaimStatus::Pass,
        (true, false) => ClaimStatus::Fail,
    };
    let item = |claim: &str, s| ClaimOutcome {
        claim: claim.into(),
        status: s,
    };
    let n = report.n;
    let i_ok = match report.deficiency_i {
        Deficiency::Value(i) => [0, 1, 2, 3, n, 3 * n].contains(&i),
        _ => false,
    };
    let nonsingular = report.singular_found().map(|s| !s).unwrap_or(true)
        && !report
            .violations
            .iter()
            .any(|v| v.claim == "nonsingularity");
    MainTheoremCheck {
        skipped: false,
        items: vec![
            item("at most three lines", status(true, report.n_lines <= 3)),
            item(
                "count of G matches prediction",
                status(true, report.predicted_count_g() == Some(report.count_g)),
            ),
            item("deficiency in {0,1,2,3,n,3n}", status(n > 2, i_ok)),
            item(
                "Stohr-Voloch bound attained",
                status(n > 0, report.sv.is_some_and(|s| s.attained)),
            ),
            item(
                "no singular points found",
                status(n > 0 && report.singular_points.is_some(), nonsingular),
            ),
            item(
                "Frobenius classical",
                status(n >= 2, report.frobenius_classical() == Some(true)),
            ),
        ],
    }
}

/// One configuration per signature class, realized with `0`, `1` and `λ`.
pub fn signature_representatives(spec: &Arc<FieldSpec>) -> Vec<CurveConfig> {
    SignatureClass::ALL
        .iter()
        .map(|c| CurveConfig::new(spec.clone(), c.representative(spec)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(p: u32, e: [u64; 3], depth: u32) -> DecompositionReport {
        let f = Arc::new(FieldSpec::new(p, 1).unwrap());
        let a = Analyzer::new(f.clone(), EnumLimits::default());
        let c = CurveConfig::from_indices(f, e).unwrap();
        decompose(&a, &c, AnalysisOptions { probe_depth: depth }).unwrap()
    }

    #[test]
    fn all_squares_q11() {
        let r = run(11, [1, 3, 9], 2);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!(
            (r.n_lines, r.n, r.count_g, r.deficiency_i),
            (0, 5, 33, Deficiency::Value(3))
        );
        assert_eq!(
            r.sv,
            Some(StohrVolochCheck {
                bound: 33,
                attained: true
            })
        );
        assert_eq!(r.inflections.len(), 3);
        assert_eq!(r.irreducible_evidence, Some(true));
        assert_eq!(r.classicality_evidence, Some(true));
        assert!(theorem_main_check(&r).passed());
    }

    #[test]
    fn all_nonsquares_q11() {
        let r = run(11, [2, 6, 7], 1);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!((r.n_lines, r.n, r.count_c, r.count_g), (3, 2, 45, 12));
        assert_eq!(r.deficiency_i, Deficiency::Indeterminate);
        assert_eq!(r.prediction.unwrap().i, 0);
    }

    #[test]
    fn three_lines_exhaust_q7() {
        let r = run(7, [3, 5, 6], 1);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!((r.n_lines, r.n, r.degeneracy), (3, 0, Degeneracy::EmptyG));
        assert!(r.g.is_constant());
    }

    #[test]
    fn two_lines_q13() {
        let r = run(13, [1, 2, 5], 1);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert_eq!((r.n_lines, r.n, r.count_c, r.count_g), (2, 4, 59, 32));
        assert_eq!(r.deficiency_i, Deficiency::Value(0));
    }

    #[test]
    fn d_lines_are_skipped_by_main_check() {
        let r = run(7, [3, 0, 0], 1);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(r.is_d_lines);
        let lines: Vec<_> = r
            .lines
            .iter()
            .map(|(l, _)| l.coeffs.map(|c| c.index()))
            .collect();
        assert_eq!(lines, vec![[0, 1, 1], [0, 1, 2], [0, 1, 4]]);
        assert!(theorem_main_check(&r).skipped);
    }

    #[test]
    fn exhaustive_q7() {
        let f = Arc::new(FieldSpec::new(7, 1).unwrap());
        let a = Analyzer::new(f.clone(), EnumLimits::default());
        for c in CurveConfig::all(&f) {
            let r = decompose(&a, &c, AnalysisOptions { probe_depth: 2 }).unwrap();
            assert!(
                r.violations.is_empty(),
                "{:?}: {:?}",
                c.indices(),
                r.violations
            );
            assert!(theorem_main_check(&r).passed(), "{:?}", c.indices());
        }
    }
}
