//! Census sweeps, CSV/JSON/text rendering and instantiated classification
//! tables.

use std::fmt::Write as _;
use std::io;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{CurveConfig, DParity, EtaSignature, SignatureClass};
use crate::curve_analysis::{
    decompose, g_row, predict_g, predict_lines, table1_value, theorem_main_check,
    zero_coord_points, AnalysisOptions, Analyzer, DecompositionReport, LinePrediction,
};
use crate::error::AnalysisError;
use crate::finite_field::{FieldElement, FieldSpec};
use crate::quadratic_counts::{brute_affine_nonzero_count, table2_closed_form};

/// Largest `q` swept exhaustively without an explicit override.
pub const EXHAUSTIVE_MAX_Q: u32 = 13;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// One census line. Column order is the field order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub p: u32,
    pub h: u32,
    pub q: u32,
    pub e0: u32,
    pub e1: u32,
    pub e2: u32,
    pub signature: String,
    pub d_parity: DParity,
    #[serde(rename = "N")]
    pub n_lines: u32,
    pub is_d_lines: bool,
    pub n: i64,
    #[serde(rename = "count_C")]
    pub count_c: i64,
    #[serde(rename = "count_G")]
    pub count_g: Option<i64>,
    #[serde(rename = "predicted_count_G")]
    pub predicted_count_g: Option<i64>,
    pub deficiency_i: String,
    pub sv_bound: Option<i64>,
    pub sv_attained: Option<bool>,
    pub frobenius_classical: Option<bool>,
    pub irreducible_evidence: Option<bool>,
    pub classicality_evidence: Option<bool>,
    pub singular_found: Option<bool>,
    pub verified: bool,
}

/// Whether every itemized claim and every internal cross-check passed.
pub fn is_verified(report: &DecompositionReport) -> bool {
    report.violations.is_empty() && theorem_main_check(report).passed()
}

impl CensusRow {
    pub fn from_report(report: &DecompositionReport) -> Self {
        let [e0, e1, e2] = report.e;
        CensusRow {
            p: report.field.p,
            h: report.field.h,
            q: report.q as u32,
            e0,
            e1,
            e2,
            signature: report.signature.ordered_text(),
            d_parity: report.signature.parity,
            n_lines: report.n_lines as u32,
            is_d_lines: report.is_d_lines,
            n: report.n,
            count_c: report.count_c,
            count_g: (!report.is_d_lines).then_some(report.count_g),
            predicted_count_g: report.predicted_count_g(),
            deficiency_i: report.deficiency_i.to_string(),
            sv_bound: report.sv.map(|s| s.bound),
            sv_attained: report.sv.map(|s| s.attained),
            frobenius_classical: report.frobenius_classical(),
            irreducible_evidence: report.irreducible_evidence,
            classicality_evidence: report.classicality_evidence,
            singular_found: report.singular_found(),
            verified: is_verified(report),
        }
    }
}

/// Which configurations a census visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sweep {
    /// Every triple, lexicographic in the indices.
    All,
    /// One triple per signature class.
    Signatures,
    /// `count` distinct triples drawn with ChaCha8 seeded by `seed`, then
    /// sorted.
    Sample { count: usize, seed: u64 },
}

/// The configurations visited by `sweep`.
pub fn sweep_configs(
    spec: &Arc<FieldSpec>,
    sweep: Sweep,
    allow_large: bool,
) -> Result<Vec<CurveConfig>, ReportError> {
    let q = spec.order() as u64;
    match sweep {
        Sweep::All => {
            if spec.order() > EXHAUSTIVE_MAX_Q && !allow_large {
                return Err(ReportError::Usage(format!(
                    "an exhaustive sweep of q = {q} visits {} configurations; use --sweep sample N \
                     or pass --allow-large",
                    q * q * q
                )));
            }
            Ok(CurveConfig::all(spec).collect())
        }
        Sweep::Signatures => Ok(SignatureClass::ALL
            .iter()
            .map(|c| CurveConfig::new(spec.clone(), c.representative(spec)))
            .collect()),
        Sweep::Sample { count, seed } => Ok(sample_configs(spec, count, seed)),
    }
}

/// `count` distinct configurations (all of them if `count >= q^3`).
pub fn sample_configs(spec: &Arc<FieldSpec>, count: usize, seed: u64) -> Vec<CurveConfig> {
    let q = spec.order() as u64;
    let total = (q * q * q) as usize;
    if count >= total {
        return CurveConfig::all(spec).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = sample(&mut rng, total, count).into_vec();
    picks.sort_unstable();
    picks
        .into_iter()
        .map(|k| {
            let k = k as u64;
            CurveConfig::from_indices(spec.clone(), [k / (q * q), (k / q) % q, k % q])
                .expect("indices below q")
        })
        .collect()
}

/// Decomposes every configuration in parallel; results keep input order.
pub fn analyze_all(
    analyzer: &Analyzer,
    configs: &[CurveConfig],
    options: AnalysisOptions,
) -> Result<Vec<DecompositionReport>, AnalysisError> {
    configs
        .par_iter()
        .map(|c| decompose(analyzer, c, options))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub rows: usize,
    pub verified: usize,
    pub failed: usize,
    pub d_lines: usize,
}

impl CensusSummary {
    pub fn from_rows(rows: &[CensusRow]) -> Self {
        let verified = rows.iter().filter(|r| r.verified).count();
        CensusSummary {
            rows: rows.len(),
            verified,
            failed: rows.len() - verified,
            d_lines: rows.iter().filter(|r| r.is_d_lines).count(),
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} rows: {} verified, {} failed ({} union-of-d-lines rows skipped by the main check)",
            self.rows, self.verified, self.failed, self.d_lines
        )
    }
}

pub fn write_csv<W: io::Write>(rows: &[CensusRow], out: W) -> Result<(), ReportError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<CensusRow>, ReportError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

/// Column names, written even when there are no rows.
pub const CSV_HEADER: [&str; 22] = [
    "p",
    "h",
    "q",
    "e0",
    "e1",
    "e2",
    "signature",
    "d_parity",
    "N",
    "is_d_lines",
    "n",
    "count_C",
    "count_G",
    "predicted_count_G",
    "deficiency_i",
    "sv_bound",
    "sv_attained",
    "frobenius_classical",
    "irreducible_evidence",
    "classicality_evidence",
    "singular_found",
    "verified",
];

/// The report as a JSON value with sorted keys.
pub fn report_json(report: &DecompositionReport) -> serde_json::Value {
    let mut v =
        serde_json::to_value(report).expect("reports contain only integers, strings and booleans");
    let obj = v.as_object_mut().expect("struct serializes to an object");
    obj.insert(
        "verified".into(),
        serde_json::Value::Bool(is_verified(report)),
    );
    obj.insert(
        "main_check".into(),
        serde_json::to_value(theorem_main_check(report)).expect("plain data"),
    );
    v
}

/// Canonical text of a JSON value: sorted keys, two-space indentation.
pub fn canonical_json(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values always serialize")
}

/// Human-readable summary of a report.
pub fn render_text(report: &DecompositionReport) -> String {
    let mut s = String::new();
    let f = &report.field;
    let _ = writeln!(
        s,
        "field        F_{} (p = {}, h = {}, modulus {:?}, lambda = {})",
        report.q, f.p, f.h, f.modulus, f.lambda
    );
    let _ = writeln!(
        s,
        "parameters   e = ({}, {}, {})",
        report.e[0], report.e[1], report.e[2]
    );
    let _ = writeln!(
        s,
        "signature    {} -> class {}, d = {} ({})",
        report.signature.ordered_text(),
        report.signature_class,
        report.d,
        report.signature.parity.as_str()
    );
    if report.small_degree {
        let _ = writeln!(
            s,
            "note         q = 5: small-degree degenerate, deficiency undetermined for n <= 2"
        );
    }
    let _ = writeln!(
        s,
        "points of C  {} = {} with a zero coordinate + {} without (N1 = {}, N2 = {}, N3 = {})",
        report.count_c,
        report.zero_coord.count(),
        report.affine.total,
        report.affine.n1,
        report.affine.n2,
        report.affine.n3
    );
    if report.is_d_lines {
        let _ = writeln!(s, "lines        union of d = {} lines:", report.d);
    } else {
        let _ = writeln!(s, "lines        N = {}", report.n_lines);
    }
    for (l, m) in &report.lines {
        let _ = writeln!(s, "               {}  (multiplicity {m})", l.to_text());
    }
    if !report.is_d_lines {
        let _ = writeln!(
            s,
            "G            degree n = {}: {}",
            report.n,
            report.g.to_text()
        );
        let pred = report
            .prediction
            .map(|p| format!("row ({}), predicted {}", p.row, p.count_g))
            .unwrap_or_default();
        let _ = writeln!(s, "points of G  {} ({pred})", report.count_g);
        let _ = writeln!(s, "deficiency   i = {}", report.deficiency_i);
        if let Some(sv) = report.sv {
            let _ = writeln!(s, "SV bound     {} (attained: {})", sv.bound, sv.attained);
        }
        let _ = writeln!(s, "inflections  {}", report.inflections.len());
        for x in &report.inflections {
            let _ = writeln!(
                s,
                "               {:?}  tangent {}  mult {}",
                x.point.indices(),
                x.tangent.to_text(),
                x.mult
            );
        }
        let yn = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
        let _ = writeln!(s, "classical    {}", yn(report.frobenius_classical()));
        let _ = writeln!(
            s,
            "irreducible  {} (count criterion)",
            yn(report.irreducible_evidence)
        );
        let _ = writeln!(
            s,
            "p-bound      {} (count exceeds n(n+q-1)/p)",
            yn(report.classicality_evidence)
        );
        match &report.singular_points {
            None => {
                let _ = writeln!(s, "singular     probe skipped");
            }
            Some(pts) => {
                let _ = writeln!(
                    s,
                    "singular     {} found (levels 1..={})",
                    pts.len(),
                    report.probe_depth
                );
            }
        }
        let check = theorem_main_check(report);
        for item in &check.items {
            let _ = writeln!(s, "  [{:?}] {}", item.status, item.claim);
        }
    } else {
        let _ = writeln!(s, "main check   skipped (union of d lines)");
    }
    for v in &report.violations {
        let _ = writeln!(s, "VIOLATION    {}: {}", v.claim, v.detail);
    }
    let _ = writeln!(s, "verified     {}", is_verified(report));
    s
}

/// A rendered table and the cells whose brute-force value disagreed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderedTable {
    pub text: String,
    pub mismatches: Vec<String>,
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn representative(spec: &Arc<FieldSpec>, class: SignatureClass) -> CurveConfig {
    CurveConfig::new(spec.clone(), class.representative(spec))
}

fn table2_formula(class: SignatureClass, parity: DParity) -> &'static str {
    use SignatureClass::*;
    let odd = parity == DParity::Odd;
    match class {
        PPP if odd => "3(q-1)(q-3)/8",
        PPP => "3(q-1)^2/8",
        MPP if odd => "(3q^2-6q+7)/8",
        MPP => "3(q-1)(q-3)/8",
        MMP if odd => "3(q-1)(q-3)/8",
        MMP => "(3q^2-6q+11)/8",
        MMM if odd => "3(q^2-2q+5)/8",
        MMM => "3(q-1)(q-3)/8",
        ZPP if odd => "(q-1)(3q-5)/8",
        ZPP => "3(q-1)^2/8",
        MZP if odd => "(q-1)(3q-5)/8",
        MZP => "(q-1)(3q-7)/8",
        MMZ if odd => "3(q-1)(q-3)/8",
        MMZ => "(q-1)(3q-7)/8",
        ZZP => "(q-1)^2/4",
        MZZ => "(q-1)^2/2",
        ZZZ => "-",
    }
}

/// Renders table `number` (1 to 5) instantiated at `spec`, checking each row
/// against a brute-forced representative configuration.
pub fn render_table(analyzer: &Analyzer, number: u8) -> Result<RenderedTable, ReportError> {
    let spec = analyzer.spec().clone();
    let parity = DParity::of(&spec);
    let q = spec.order() as i64;
    let d = spec.half_order() as i64;
    let mut text = String::new();
    let mut mismatches = Vec::new();
    match number {
        1 => {
            let _ = writeln!(
                text,
                "Points with two / one zero coordinates, q = {q}, d = {d} ({})",
                parity.as_str()
            );
            let _ = writeln!(
                text,
                "{:<12} {:>6} {:>6} {:>12} {:>8}",
                "signature", "i=2", "i=1", "enumerated", "check"
            );
            for class in SignatureClass::ALL {
                let t = table1_value(class, parity, d);
                let z = zero_coord_points(&representative(&spec, class));
                let ok = (z.two_zero, z.one_zero) == (t.two_zero, t.one_zero);
                if !ok {
                    mismatches.push(format!(
                        "{class}: table ({}, {}), enumerated ({}, {})",
                        t.two_zero, t.one_zero, z.two_zero, z.one_zero
                    ));
                }
                let _ = writeln!(
                    text,
                    "{:<12} {:>6} {:>6} {:>12} {:>8}",
                    class.to_string(),
                    t.two_zero,
                    t.one_zero,
                    format!("{}/{}", z.two_zero, z.one_zero),
                    mark(ok)
                );
            }
        }
        2 => {
            let _ = writeln!(text, "N1 + N2 + N3, q = {q}, d = {d} ({})", parity.as_str());
            let _ = writeln!(
                text,
                "{:<12} {:<16} {:>8} {:>10} {:>8}",
                "signature", "formula", "value", "enumerated", "check"
            );
            for class in SignatureClass::ALL {
                if class == SignatureClass::ZZZ {
                    continue;
                }
                let value = table2_closed_form(class, parity, q).map_err(AnalysisError::from)?;
                let brute = brute_affine_nonzero_count(&representative(&spec, class)).total;
                if value != brute {
                    mismatches.push(format!("{class}: table {value}, enumerated {brute}"));
                }
                let _ = writeln!(
                    text,
                    "{:<12} {:<16} {:>8} {:>10} {:>8}",
                    class.to_string(),
                    table2_formula(class, parity),
                    value,
                    brute,
                    mark(value == brute)
                );
            }
        }
        3 => {
            let _ = writeln!(
                text,
                "Linear components for e0 e1 e2 != 0, q = {q}, d = {d} ({})",
                parity.as_str()
            );
            let _ = writeln!(
                text,
                "{:<14} {:<36} {:>10} {:>8}",
                "(η(e0),η(e1),η(e2))", "lines", "extracted", "check"
            );
            let lambda = spec.lambda();
            for mask in 0..8u32 {
                let e: [FieldElement; 3] = [0, 1, 2].map(|i| {
                    if mask >> (2 - i) & 1 == 1 {
                        lambda
                    } else {
                        FieldElement::ONE
                    }
                });
                let config = CurveConfig::new(spec.clone(), e);
                let sig = EtaSignature::of(&spec, e);
                let LinePrediction::Lines(pred) = predict_lines(&config) else {
                    unreachable!("all parameters nonzero")
                };
                let symbolic: Vec<String> = pred
                    .iter()
                    .map(|l| {
                        let idx: Vec<usize> = (0..3).filter(|&i| !l.coeffs[i].is_zero()).collect();
                        format!("e{}X{}+e{}X{}", idx[0], idx[0], idx[1], idx[1])
                    })
                    .collect();
                let report = decompose(analyzer, &config, AnalysisOptions { probe_depth: 0 })?;
                let mut got: Vec<_> = report.lines.iter().map(|(l, _)| *l).collect();
                got.sort();
                let ok = got == pred;
                if !ok {
                    mismatches.push(format!(
                        "{}: predicted {}, extracted {}",
                        sig.ordered_text(),
                        pred.len(),
                        got.len()
                    ));
                }
                let listed = if symbolic.is_empty() {
                    "none".to_string()
                } else {
                    symbolic.join(", ")
                };
                let _ = writeln!(
                    text,
                    "{:<14} {:<36} {:>10} {:>8}",
                    sig.ordered_text(),
                    listed,
                    got.len(),
                    mark(ok)
                );
            }
        }
        4 | 5 => {
            let want = if number == 4 {
                DParity::Odd
            } else {
                DParity::Even
            };
            if parity != want {
                return Err(ReportError::Usage(format!(
                    "table {number} covers d {}; q = {q} has d = {d}",
                    want.as_str()
                )));
            }
            let _ = writeln!(text, "Curve G, q = {q}, d = {d} ({})", parity.as_str());
            let _ = writeln!(
                text,
                "{:<5} {:<26} {:>3} {:>4} {:>4} {:>8} {:>10} {:>8}",
                "row", "signatures", "N", "n", "i", "#G", "enumerated", "check"
            );
            for row in 1..=8u8 {
                let classes: Vec<SignatureClass> = SignatureClass::ALL
                    .iter()
                    .copied()
                    .filter(|&c| g_row(c, parity).row == row)
                    .collect();
                let names = classes
                    .iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                let Some(pred) = predict_g(classes[0], parity, q) else {
                    let _ = writeln!(text, "({row})   {names:<26} union of d = {d} lines");
                    continue;
                };
                let mut brute = Vec::new();
                let mut ok = true;
                for &class in &classes {
                    let r = decompose(
                        analyzer,
                        &representative(&spec, class),
                        AnalysisOptions { probe_depth: 0 },
                    )?;
                    let good = r.count_g == pred.count_g
                        && r.n == pred.n
                        && r.n_lines as u32 == pred.lines;
                    if !good {
                        mismatches.push(format!(
                            "row ({row}) {class}: predicted N={} n={} #G={}, got N={} n={} #G={}",
                            pred.lines, pred.n, pred.count_g, r.n_lines, r.n, r.count_g
                        ));
                    }
                    ok &= good;
                    brute.push(r.count_g.to_string());
                }
                let _ = writeln!(
                    text,
                    "({row})   {names:<26} {:>3} {:>4} {:>4} {:>8} {:>10} {:>8}",
                    pred.lines,
                    pred.n,
                    pred.deficiency.label(),
                    pred.count_g,
                    brute.join("/"),
                    mark(ok)
                );
            }
        }
        _ => {
            return Err(ReportError::Usage(format!(
                "no table {number}; choose 1 to 5"
            )))
        }
    }
    Ok(RenderedTable { text, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_analysis::EnumLimits;

    fn analyzer(p: u32, h: u32) -> Analyzer {
        Analyzer::new(
            Arc::new(FieldSpec::new(p, h).unwrap()),
            EnumLimits::default(),
        )
    }

    #[test]
    fn sampling_is_deterministic_and_distinct() {
        let spec = Arc::new(FieldSpec::new(5, 2).unwrap());
        let a = sample_configs(&spec, 200, 42);
        let b = sample_configs(&spec, 200, 42);
        assert_eq!(a.len(), 200);
        assert_eq!(a, b);
        let keys: std::collections::BTreeSet<_> = a.iter().map(|c| c.indices()).collect();
        assert_eq!(keys.len(), 200);
        assert_ne!(a, sample_configs(&spec, 200, 43));
    }

    #[test]
    fn exhaustive_sweep_is_gated() {
        let spec = Arc::new(FieldSpec::new(17, 1).unwrap());
        assert!(matches!(
            sweep_configs(&spec, Sweep::All, false),
            Err(ReportError::Usage(_))
        ));
        assert_eq!(
            sweep_configs(&spec, Sweep::All, true).unwrap().len(),
            17 * 17 * 17
        );
        assert_eq!(
            sweep_configs(&spec, Sweep::Signatures, false)
                .unwrap()
                .len(),
            10
        );
    }

    #[test]
    fn csv_round_trip() {
        let a = analyzer(7, 1);
        let configs = sweep_configs(a.spec(), Sweep::Signatures, false).unwrap();
        let reports = analyze_all(&a, &configs, AnalysisOptions::default()).unwrap();
        let rows: Vec<_> = reports.iter().map(CensusRow::from_report).collect();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(&CSV_HEADER.join(",")));
        assert_eq!(read_csv(&buf[..]).unwrap(), rows);
        let mut empty = Vec::new();
        write_csv(&[], &mut empty).unwrap();
        assert_eq!(
            String::from_utf8(empty).unwrap().trim_end(),
            CSV_HEADER.join(",")
        );
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let a = analyzer(11, 1);
        let c = CurveConfig::from_indices(a.spec().clone(), [1, 3, 9]).unwrap();
        let r = decompose(&a, &c, AnalysisOptions::default()).unwrap();
        let text = canonical_json(&report_json(&r));
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical_json(&parsed), text);
        assert_eq!(parsed["n"], 5);
        assert_eq!(parsed["count_g"], 33);
        assert_eq!(parsed["sv"]["attained"], true);
    }

    #[test]
    fn table_examples() {
        let t = render_table(&analyzer(11, 1), 2).unwrap();
        assert!(t.mismatches.is_empty(), "{:?}", t.mismatches);
        assert!(t.text.contains("{1,1,1}      3(q-1)(q-3)/8          30"));
        assert!(t.text.contains("{-1,-1,-1}   3(q^2-2q+5)/8          39"));
        let t = render_table(&analyzer(13, 1), 5).unwrap();
        assert!(t.mismatches.is_empty(), "{:?}", t.mismatches);
        let row3 = t.text.lines().find(|l| l.starts_with("(3)")).unwrap();
        assert!(row3.split_whitespace().collect::<Vec<_>>().starts_with(&[
            "(3)",
            "{-1,-1,1}",
            "2",
            "4",
            "0",
            "32"
        ]));
        let t = render_table(&analyzer(7, 1), 1).unwrap();
        let last = t.text.lines().find(|l| l.starts_with("{0,0,0}")).unwrap();
        assert_eq!(
            last.split_whitespace().take(3).collect::<Vec<_>>(),
            ["{0,0,0}", "0", "9"]
        );
        assert!(matches!(
            render_table(&analyzer(13, 1), 4),
            Err(ReportError::Usage(_))
        ));
        assert!(matches!(
            render_table(&analyzer(7, 1), 6),
            Err(ReportError::Usage(_))
        ));
        for n in 1..=4 {
            assert!(render_table(&analyzer(11, 1), n)
                .unwrap()
                .mismatches
                .is_empty());
        }
        assert!(render_table(&analyzer(5, 2), 3)
            .unwrap()
            .mismatches
            .is_empty());
    }
}
