//! The acceptance battery: every quantitative claim checked across a list of
//! fields, one outcome per criterion.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::config::{CurveConfig, SignatureClass};
use crate::curve_analysis::{
    brute_count_points, decompose, expected_inflections, intersection_multiplicity,
    signature_representatives, tangent_line, AnalysisOptions, Analyzer, DecompositionReport,
    DeficiencyKind, EnumLimits, LinePrediction,
};
use crate::error::AnalysisError;
use crate::finite_field::{monic_irreducibles, FieldElement, FieldSpec};
use crate::polynomials::{
    build_curve_poly, fermat_poly, frobenius_of_curve_closed_form, verify_cube_identity, TriPoly,
};
use crate::quadratic_counts::{
    affine_nonzero_count, brute_count_diagonal, count_diagonal, DiagonalEquation,
};
use crate::report::{analyze_all, sample_configs, EXHAUSTIVE_MAX_Q};

/// Fields swept exhaustively and by sampling in the full battery.
pub const DESK_SCALE: [(u32, u32); 9] = [
    (5, 1),
    (7, 1),
    (11, 1),
    (13, 1),
    (17, 1),
    (19, 1),
    (23, 1),
    (5, 2),
    (7, 2),
];
/// Fields used when none are given.
pub const DEFAULT_FIELDS: [(u32, u32); 4] = [(5, 1), (7, 1), (11, 1), (13, 1)];
const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug)]
pub struct BatteryOptions {
    pub fields: Vec<(u32, u32)>,
    /// Extension depth of the singularity probe for exhaustive fields.
    pub probe_depth: u32,
    pub sample_size: usize,
    pub seed: u64,
    pub limits: EnumLimits,
}

impl Default for BatteryOptions {
    fn default() -> Self {
        BatteryOptions {
            fields: DEFAULT_FIELDS.to_vec(),
            probe_depth: 3,
            sample_size: 200,
            seed: 42,
            limits: EnumLimits::default(),
        }
    }
}

/// All decompositions for one field.
pub struct FieldRun {
    pub analyzer: Analyzer,
    pub exhaustive: bool,
    pub probe_depth: u32,
    pub configs: Vec<CurveConfig>,
    pub reports: Vec<DecompositionReport>,
}

impl FieldRun {
    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.analyzer.spec()
    }

    pub fn label(&self) -> String {
        let s = self.spec();
        format!(
            "q={} ({})",
            s.order(),
            if self.exhaustive { "all" } else { "sampled" }
        )
    }

    fn pairs(&self) -> impl Iterator<Item = (&CurveConfig, &DecompositionReport)> {
        self.configs.iter().zip(&self.reports)
    }
}

/// Every configuration for `q <= 13`; otherwise a seeded sample plus one
/// representative per signature class. The probe runs to `probe_depth` on
/// exhaustive fields and to level 1 elsewhere.
pub fn run_field(p: u32, h: u32, options: &BatteryOptions) -> Result<FieldRun, AnalysisError> {
    let spec = Arc::new(FieldSpec::new(p, h)?);
    let analyzer = Analyzer::new(spec.clone(), options.limits);
    let exhaustive = spec.order() <= EXHAUSTIVE_MAX_Q;
    let configs: Vec<CurveConfig> = if exhaustive {
        CurveConfig::all(&spec).collect()
    } else {
        let mut seen = BTreeSet::new();
        let mut v: Vec<_> = sample_configs(&spec, options.sample_size, options.seed)
            .into_iter()
            .chain(signature_representatives(&spec))
            .filter(|c| seen.insert(c.indices()))
            .collect();
        v.sort_by_key(|c| c.indices());
        v
    };
    let probe_depth = if exhaustive {
        options.probe_depth
    } else {
        options.probe_depth.min(1)
    };
    let reports = analyze_all(&analyzer, &configs, AnalysisOptions { probe_depth })?;
    Ok(FieldRun {
        analyzer,
        exhaustive,
        probe_depth,
        configs,
        reports,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub status: Status,
    pub checks: u64,
    pub failure_count: u64,
    /// The first few failures.
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CriterionOutcome {
    fn new(id: u8, title: &'static str) -> Self {
        CriterionOutcome {
            id,
            title,
            status: Status::Pass,
            checks: 0,
            failure_count: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failure_count += 1;
            self.status = Status::Fail;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        write!(
            f,
            "criterion {:>2} [{status}] {} ({} checks",
            self.id, self.title, self.checks
        )?;
        if self.failure_count > 0 {
            write!(f, ", {} failed", self.failure_count)?;
        }
        write!(f, ")")
    }
}

fn tag(run: &FieldRun, c: &CurveConfig) -> String {
    format!("q={} e={:?}", run.spec().order(), c.indices())
}

/// Criterion 1: Enumerated point count of `C` against the closed forms.
pub fn point_counts(runs: &[FieldRun]) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(1, "point-count reconciliation");
    for run in runs {
        let d = run.spec().half_order() as i64;
        for (c, r) in run.pairs() {
            let expected = r.table1.total() + r.table2.unwrap_or(0);
            out.check(r.count_c == expected, || {
                format!(
                    "{}: #C = {}, tables give {expected}",
                    tag(run, c),
                    r.count_c
                )
            });
            out.check(
                r.zero_coord.two_zero == r.table1.two_zero
                    && r.zero_coord.one_zero == r.table1.one_zero,
                || {
                    format!(
                        "{}: zero-coordinate points {:?} vs {:?}",
                        tag(run, c),
                        r.zero_coord.count(),
                        r.table1
                    )
                },
            );
            if r.signature_class == SignatureClass::ZZZ {
                out.check(r.count_c == 3 * d, || {
                    format!("{}: Fermat count {} != 3d", tag(run, c), r.count_c)
                });
            }
        }
    }
    out
}

/// Criterion 2: Case formulas against the closed-form affine count.
pub fn case_formulas(runs: &[FieldRun]) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(2, "case-formula agreement");
    for run in runs {
        for (c, r) in run.pairs() {
            if r.signature_class == SignatureClass::ZZZ {
                continue;
            }
            out.check(Some(r.affine.total) == r.table2, || {
                format!(
                    "{}: case formulas {}, closed form {:?}",
                    tag(run, c),
                    r.affine.total,
                    r.table2
                )
            });
        }
    }
    out
}

/// Criterion 3: Closed-form diagonal counts against enumeration: every coefficient
/// tuple and right-hand side when `q <= 13`, every character pattern with
/// `beta` in `{0, 1, λ}` otherwise.
pub fn diagonal_oracle(fields: &[(u32, u32)]) -> Result<CriterionOutcome, AnalysisError> {
    let mut out = CriterionOutcome::new(3, "diagonal-quadric oracle");
    for &(p, h) in fields {
        let f = FieldSpec::new(p, h)?;
        let q = f.order() as u64;
        let exhaustive = f.order() <= EXHAUSTIVE_MAX_Q;
        let coeff_pool: Vec<FieldElement> = if exhaustive {
            f.nonzero_elements().collect()
        } else {
            vec![FieldElement::ONE, f.lambda()]
        };
        let rhs_pool: Vec<FieldElement> = if exhaustive {
            f.elements().collect()
        } else {
            vec![FieldElement::ZERO, FieldElement::ONE, f.lambda()]
        };
        for s in 1..=3u32 {
            let m = coeff_pool.len() as u64;
            for t in 0..m.pow(s) {
                let b: Vec<_> = (0..s)
                    .map(|j| coeff_pool[((t / m.pow(j)) % m) as usize])
                    .collect();
                for &beta in &rhs_pool {
                    let eq = DiagonalEquation::new(b.clone(), beta)?;
                    let closed = count_diagonal(&f, &eq);
                    let brute = brute_count_diagonal(&f, &eq)?;
                    out.check(closed == brute, || {
                        format!(
                            "q={q} b={:?} beta={}: closed {closed}, enumerated {brute}",
                            b.iter().map(|x| x.index()).collect::<Vec<_>>(),
                            beta.index()
                        )
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Criterion 4: Extracted lines against the predicted ones; the union of `d` lines
/// reconstructs `C`.
pub fn linear_components(runs: &[FieldRun]) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(4, "linear components");
    for run in runs {
        let f = &**run.spec();
        let d = f.half_order() as usize;
        for (c, r) in run.pairs() {
            let mut got: Vec<_> = r.lines.iter().map(|(l, _)| *l).collect();
            got.sort();
            out.check(r.lines.iter().all(|(_, m)| *m == 1), || {
                format!("{}: repeated line", tag(run, c))
            });
            match &r.predicted_lines {
                LinePrediction::Lines(pred) => {
                    out.check(&got == pred, || {
                        format!(
                            "{}: extracted {} lines, predicted {}",
                            tag(run, c),
                            got.len(),
                            pred.len()
                        )
                    });
                }
                LinePrediction::DLines => {
                    let distinct: BTreeSet<_> = got.iter().collect();
                    out.check(got.len() == d && distinct.len() == d, || {
                        format!(
                            "{}: {} lines in the degenerate case",
                            tag(run, c),
                            got.len()
                        )
                    });
                    let mut product = r.g.clone();
                    for l in &got {
                        product = product.mul(f, &l.to_poly(f));
                    }
                    out.check(product == build_curve_poly(f, c.e), || {
                        format!("{}: product of lines differs from C", tag(run, c))
                    });
                }
            }
        }
    }
    out
}

/// Criterion 5: No rational point of an extracted line lies on `G`.
pub fn disjointness(runs: &[FieldRun]) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(5, "lines disjoint from G");
    for run in runs {
        let f = &**run.spec();
        for (c, r) in run.pairs() {
            if r.is_d_lines || r.n_lines == 0 {
                continue;
            }
            let shared = r
                .lines
                .iter()
                .flat_map(|(l, _)| l.rational_points(f))
                .filter(|pt| r.g.evaluate(f, *pt).is_zero())
                .count();
            out.check(shared == 0, || {
                format!("{}: {shared} shared points", tag(run, c))
            });
        }
    }
    out
}

fn spot_report(
    p: u32,
    e: [u64; 3],
    limits: EnumLimits,
) -> Result<(DecompositionReport, i64), AnalysisError> {
    let spec = Arc::new(FieldSpec::new(p, 1)?);
    let analyzer = Analyzer::new(spec.clone(), limits);
    let config = CurveConfig::from_indices(spec.clone(), e)?;
    let r = decompose(&analyzer, &config, AnalysisOptions { probe_depth: 0 })?;
    let brute = brute_count_points(&spec, &r.g, limits)? as i64;
    Ok((r, brute))
}

/// Criterion 6: Count of `G` against the classification, the deficiency range, and
/// three independently enumerated spot values.
pub fn main_theorem(
    runs: &[FieldRun],
    limits: EnumLimits,
) -> Result<CriterionOutcome, AnalysisError> {
    let mut out = CriterionOutcome::new(6, "count of G and deficiency");
    for run in runs {
        for (c, r) in run.pairs() {
            let Some(pred) = r.prediction else { continue };
            out.check(r.count_g == pred.count_g && r.n == pred.n, || {
                format!(
                    "{}: #G = {} (n = {}), predicted {} (n = {})",
                    tag(run, c),
                    r.count_g,
                    r.n,
                    pred.count_g,
                    pred.n
                )
            });
            if r.n > 2 {
                let ok = matches!(r.deficiency_i, crate::curve_analysis::Deficiency::Value(i)
                    if [0, 1, 2, 3, r.n, 3 * r.n].contains(&i));
                out.check(ok, || {
                    format!("{}: deficiency {}", tag(run, c), r.deficiency_i)
                });
            }
        }
    }
    // q = 11, all parameters squares
    let (r, brute) = spot_report(11, [1, 3, 9], limits)?;
    out.check(
        brute == 33 && r.deficiency_i == crate::curve_analysis::Deficiency::Value(3),
        || format!("q=11 all squares: #G = {brute}, i = {}", r.deficiency_i),
    );
    // q = 11, all parameters non-squares: three lines and a conic
    let (r, brute) = spot_report(11, [2, 6, 7], limits)?;
    out.check(
        r.n_lines == 3 && r.n == 2 && brute == 12 && r.prediction.map(|p| p.i) == Some(0),
        || {
            format!(
                "q=11 all non-squares: N = {}, n = {}, #G = {brute}",
                r.n_lines, r.n
            )
        },
    );
    // q = 13, signature {-1,-1,1}
    let (r, brute) = spot_report(13, [2, 5, 1], limits)?;
    out.check(
        r.n == 4 && brute == 32 && r.deficiency_i == crate::curve_analysis::Deficiency::Value(0),
        || {
            format!(
                "q=13 {{-1,-1,1}}: n = {}, #G = {brute}, i = {}",
                r.n, r.deficiency_i
            )
        },
    );
    Ok(out)
}

/// Criterion 7: Equality in the Stöhr-Voloch bound, and the listed tangents and
/// multiplicities at the total inflection points.
pub fn stohr_voloch(runs: &[FieldRun]) -> Result<CriterionOutcome, AnalysisError> {
    let mut out = CriterionOutcome::new(7, "Stohr-Voloch equality and inflections");
    for run in runs {
        let f = &**run.spec();
        let q = f.order() as i64;
        for (c, r) in run.pairs() {
            if r.is_d_lines || r.n == 0 {
                continue;
            }
            let n = r.n;
            let excess: i64 = r.inflections.iter().map(|x| x.mult as i64 - 2).sum();
            out.check(excess == n * (n + q - 1) - 2 * r.count_g, || {
                format!(
                    "{}: sum(m-2) = {excess}, n(n+q-1) - 2#G = {}",
                    tag(run, c),
                    n * (n + q - 1) - 2 * r.count_g
                )
            });
            let Some(pred) = r.prediction else { continue };
            if pred.i == 0 || n < 3 {
                continue;
            }
            let expected = expected_inflections(c);
            for x in &expected {
                let t = tangent_line(f, &r.g, x.point.coords)?;
                out.check(t == x.tangent, || {
                    format!(
                        "{}: tangent at {:?} is {}, listed {}",
                        tag(run, c),
                        x.point.indices(),
                        t.to_text(),
                        x.tangent.to_text()
                    )
                });
                let m = intersection_multiplicity(f, &r.g, &t, x.point.coords)?;
                out.check(m as i64 == n, || {
                    format!(
                        "{}: multiplicity {m} at {:?}",
                        tag(run, c),
                        x.point.indices()
                    )
                });
            }
            let found: BTreeSet<_> = r.inflections.iter().map(|x| x.point).collect();
            let listed: BTreeSet<_> = expected.iter().map(|x| x.point).collect();
            out.check(found == listed, || {
                format!(
                    "{}: scan found {} inflections, {} listed",
                    tag(run, c),
                    found.len(),
                    listed.len()
                )
            });
        }
    }
    Ok(out)
}

/// Criterion 8: Frobenius classicality of every `G` (both divisibility tests), the
/// closed form of the Frobenius form of `C`, the cube identity, and the
/// nonclassical control.
pub fn frobenius(runs: &[FieldRun]) -> Result<CriterionOutcome, AnalysisError> {
    let mut out = CriterionOutcome::new(8, "Frobenius classicality");
    for run in runs {
        let f = &**run.spec();
        for (c, r) in run.pairs() {
            if r.n >= 2 && !r.is_d_lines {
                out.check(r.frobenius.is_some_and(|x| !x.divides_own_form), || {
                    format!("{}: G divides its Frobenius form", tag(run, c))
                });
                out.check(r.frobenius.is_some_and(|x| !x.divides_curve_form), || {
                    format!("{}: G divides the Frobenius form of C", tag(run, c))
                });
            }
            if run.exhaustive {
                let curve = build_curve_poly(f, c.e);
                out.check(
                    curve.frobenius_form(f) == frobenius_of_curve_closed_form(f, c.e),
                    || {
                        format!(
                            "{}: Frobenius form of C differs from d(X0^3d+...+X3^3d)",
                            tag(run, c)
                        )
                    },
                );
                out.check(verify_cube_identity(f, c.e), || {
                    format!("{}: cube identity fails", tag(run, c))
                });
            }
        }
    }
    let f25 = FieldSpec::new(5, 2)?;
    let herm = fermat_poly(6);
    let divides = herm
        .frobenius_form(&f25)
        .exact_divide(&f25, &herm)?
        .is_some();
    out.check(divides, || {
        "X0^6 + X1^6 + X2^6 over F_25 not detected as nonclassical".into()
    });
    Ok(out)
}

/// Criterion 9: No singular point of any `G` over `F_{q^k}`, `k <= depth`, for the
/// exhaustive fields; the nodal cubic is caught.
pub fn nonsingularity(
    runs: &[FieldRun],
    probe_depth: u32,
) -> Result<CriterionOutcome, AnalysisError> {
    let mut out = CriterionOutcome::new(9, "nonsingularity probe");
    if probe_depth == 0 {
        out.status = Status::Skipped;
        out.notes
            .push("probe depth 0: singularity probes skipped".into());
        return Ok(out);
    }
    for run in runs.iter().filter(|r| r.exhaustive) {
        for (c, r) in run.pairs() {
            if r.is_d_lines || r.n == 0 {
                continue;
            }
            out.check(
                r.singular_points.as_ref().is_some_and(|v| v.is_empty()),
                || format!("{}: singular points {:?}", tag(run, c), r.singular_points),
            );
        }
        out.notes
            .push(format!("{}: levels 1..={}", run.label(), run.probe_depth));
    }
    let f7 = Arc::new(FieldSpec::new(7, 1)?);
    let node = TriPoly::from_terms(
        &f7,
        [
            ([0, 2, 1], FieldElement::ONE),
            ([3, 0, 0], f7.minus_one()),
            ([2, 0, 1], f7.minus_one()),
        ],
    )?;
    let found = Analyzer::new(f7.clone(), EnumLimits::default()).singularity_probe(&node, 1)?;
    out.check(found.len() == 1 && found[0].indices() == [0, 0, 1], || {
        format!("nodal cubic probe found {found:?}")
    });
    Ok(out)
}

/// Criterion 10: The counting criteria for absolute irreducibility (rows with a
/// constant deficiency) and for classicality (every nonconstant `G`).
pub fn thresholds(runs: &[FieldRun]) -> CriterionOutcome {
    let mut out = CriterionOutcome::new(10, "irreducibility and classicality thresholds");
    for run in runs {
        for (c, r) in run.pairs() {
            if r.is_d_lines || r.n == 0 {
                continue;
            }
            let constant_i = r
                .prediction
                .is_some_and(|p| matches!(p.deficiency, DeficiencyKind::Const(_)));
            if constant_i && r.n >= 2 {
                out.check(r.irreducible_evidence == Some(true), || {
                    format!(
                        "{}: #G = {} below the irreducibility threshold (n = {})",
                        tag(run, c),
                        r.count_g,
                        r.n
                    )
                });
            }
            out.check(r.classicality_evidence == Some(true), || {
                format!(
                    "{} class {}: #G = {} <= n(n+q-1)/p = {}/{}",
                    tag(run, c),
                    r.signature_class,
                    r.count_g,
                    r.n * (r.n + r.q - 1),
                    r.field.p
                )
            });
        }
    }
    out
}

fn recount(
    spec: &Arc<FieldSpec>,
    e: [FieldElement; 3],
    limits: EnumLimits,
) -> Result<(i64, i64), AnalysisError> {
    let config = CurveConfig::new(spec.clone(), e);
    let count = brute_count_points(spec, &build_curve_poly(spec, e), limits)? as i64;
    let affine = affine_nonzero_count(&config)?.total;
    Ok((count, affine))
}

/// Criterion 11: Criterion 1 recomputed with the last non-square as `λ`, and for
/// `h > 1` also with the next irreducible modulus (parameters carried over
/// by the field isomorphism).
pub fn convention_independence(
    runs: &[FieldRun],
    limits: EnumLimits,
) -> Result<CriterionOutcome, AnalysisError> {
    let mut out = CriterionOutcome::new(11, "convention independence");
    for run in runs {
        let base = run.spec();
        let last_nonsquare = base
            .nonzero_elements()
            .filter(|&u| base.eta(u) == -1)
            .last()
            .expect("q is odd");
        let alt_lambda = Arc::new((**base).clone().with_lambda(last_nonsquare)?);
        let mut variants = vec![(
            format!("lambda={}", last_nonsquare.index()),
            alt_lambda,
            None,
        )];
        if base.degree() > 1 {
            let modulus = monic_irreducibles(base.characteristic(), base.degree())?
                .find(|m| m.as_slice() != base.modulus())
                .expect("at least two irreducibles of degree h > 1");
            let other = Arc::new(FieldSpec::with_modulus(
                base.characteristic(),
                modulus.clone(),
            )?);
            let iso = base.embedding_into(&other)?;
            variants.push((format!("modulus={modulus:?}"), other, Some(iso)));
        }
        for (label, spec, iso) in &variants {
            for (c, r) in run.pairs() {
                let e = match iso {
                    Some(map) => c.e.map(|x| map[x.index() as usize]),
                    None => c.e,
                };
                let (count, affine) = recount(spec, e, limits)?;
                out.check(count == r.count_c && affine == r.affine.total, || {
                    format!(
                        "{} with {label}: #C {count} vs {}, affine {affine} vs {}",
                        tag(run, c),
                        r.count_c,
                        r.affine.total
                    )
                });
            }
            out.notes.push(format!("q={}: {label}", base.order()));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub fields: Vec<FieldSummaryLine>,
    pub probe_depth: u32,
    pub criteria: Vec<CriterionOutcome>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldSummaryLine {
    pub p: u32,
    pub h: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
    pub lambda: u32,
    pub exhaustive: bool,
    pub configs: usize,
    pub probe_depth: u32,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed())
    }
}

/// Runs criteria 1 to 11 over `options.fields`.
pub fn run_battery(options: &BatteryOptions) -> Result<BatteryReport, AnalysisError> {
    let runs: Vec<FieldRun> = options
        .fields
        .iter()
        .map(|&(p, h)| run_field(p, h, options))
        .collect::<Result<_, _>>()?;
    let fields = runs
        .iter()
        .map(|r| {
            let s = r.spec();
            FieldSummaryLine {
                p: s.characteristic(),
                h: s.degree(),
                q: s.order(),
                modulus: s.modulus().to_vec(),
                lambda: s.lambda().index(),
                exhaustive: r.exhaustive,
                configs: r.configs.len(),
                probe_depth: r.probe_depth,
            }
        })
        .collect();
    let criteria = vec![
        point_counts(&runs),
        case_formulas(&runs),
        diagonal_oracle(&options.fields)?,
        linear_components(&runs),
        disjointness(&runs),
        main_theorem(&runs, options.limits)?,
        stohr_voloch(&runs)?,
        frobenius(&runs)?,
        nonsingularity(&runs, options.probe_depth)?,
        thresholds(&runs),
        convention_independence(&runs, options.limits)?,
    ];
    Ok(BatteryReport {
        fields,
        probe_depth: options.probe_depth,
        criteria,
    })
}

/// The battery report as canonical JSON.
pub fn battery_json(report: &BatteryReport) -> String {
    let value = serde_json::to_value(report).expect("battery reports contain only plain data");
    crate::report::canonical_json(&value)
}
