//! Closed-form predictions keyed on the character signature.

use serde::{Deserialize, Serialize};

use crate::config::{CurveConfig, DParity, SignatureClass};
use crate::finite_field::{FieldElement, FieldSpec};
use crate::polynomials::{build_curve_poly, LinearForm};
use crate::projective::ProjectivePoint;

/// Rational points of `C` with exactly two (`two_zero`) or exactly one
/// (`one_zero`) zero coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Value {
    pub two_zero: i64,
    pub one_zero: i64,
}

impl Table1Value {
    pub fn total(&self) -> i64 {
        self.two_zero + self.one_zero
    }
}

pub fn table1_value(class: SignatureClass, parity: DParity, d: i64) -> Table1Value {
    use SignatureClass::*;
    let odd = parity == DParity::Odd;
    let (two_zero, one_zero) = match class {
        PPP => (0, if odd { 3 } else { 0 }),
        MPP => (1, if odd { 1 } else { 2 }),
        MMP => (2, if odd { 1 } else { 2 }),
        MMM => (3, if odd { 3 } else { 0 }),
        ZPP => (0, if odd { 1 } else { 0 }),
        MZP => (1, if odd { 0 } else { 1 }),
        MMZ => (2, if odd { 1 } else { 0 }),
        ZZP => (0, d),
        MZZ => (1, d),
        ZZZ => (0, 3 * d),
    };
    Table1Value { two_zero, one_zero }
}

/// Rational points of the curve with at least one zero coordinate, found by
/// enumerating the three coordinate lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroCoordPoints {
    pub points: Vec<ProjectivePoint>,
    pub two_zero: i64,
    pub one_zero: i64,
}

impl ZeroCoordPoints {
    pub fn count(&self) -> i64 {
        self.two_zero + self.one_zero
    }
}

pub fn zero_coord_points(config: &CurveConfig) -> ZeroCoordPoints {
    let f = &*config.spec;
    let c = build_curve_poly(f, config.e);
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    let mut candidates = vec![[one, zero, zero], [zero, one, zero], [zero, zero, one]];
    for t in f.nonzero_elements() {
        candidates.push([one, t, zero]);
        candidates.push([one, zero, t]);
        candidates.push([zero, one, t]);
    }
    let mut points: Vec<ProjectivePoint> = candidates
        .into_iter()
        .filter(|&pt| c.evaluate(f, pt).is_zero())
        .map(|pt| ProjectivePoint {
            coords: pt,
            level: 1,
        })
        .collect();
    points.sort();
    let two_zero = points
        .iter()
        .filter(|p| p.coords.iter().filter(|x| x.is_zero()).count() == 2)
        .count();
    ZeroCoordPoints {
        two_zero: two_zero as i64,
        one_zero: (points.len() - two_zero) as i64,
        points,
    }
}

/// The rational lines contained in `C`, or the degenerate union of `d` lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinePrediction {
    DLines,
    Lines(Vec<LinearForm>),
}

/// Lines `e_i X_i + e_j X_j` with `η(-e_i e_j) = η(e_k) = -1`.
pub fn predict_lines(config: &CurveConfig) -> LinePrediction {
    let f = &*config.spec;
    let e = config.e;
    if config.signature().class() == SignatureClass::MZZ {
        return LinePrediction::DLines;
    }
    let mut lines = Vec::new();
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        if f.eta(f.neg(f.mul(e[i], e[j]))) == -1 && f.eta(e[k]) == -1 {
            let mut c = [FieldElement::ZERO; 3];
            c[i] = e[i];
            c[j] = e[j];
            lines.push(LinearForm::new(f, c).expect("e_i e_j is nonzero"));
        }
    }
    lines.sort();
    LinePrediction::Lines(lines)
}

/// Which multiple of `(n - 2)/2` the count of `G` falls short of
/// `n(n + q - 1)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeficiencyKind {
    Const(u32),
    N,
    ThreeN,
}

impl DeficiencyKind {
    pub fn value(self, n: i64) -> i64 {
        match self {
            DeficiencyKind::Const(c) => c as i64,
            DeficiencyKind::N => n,
            DeficiencyKind::ThreeN => 3 * n,
        }
    }

    pub fn label(self) -> String {
        match self {
            DeficiencyKind::Const(c) => c.to_string(),
            DeficiencyKind::N => "n".into(),
            DeficiencyKind::ThreeN => "3n".into(),
        }
    }
}

/// One row of the classification of `G` (odd `d` and even `d` tables).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GRow {
    pub row: u8,
    /// Number of lines; `None` for the union of `d` lines.
    pub lines: Option<u32>,
    pub deficiency: Option<DeficiencyKind>,
}

pub fn g_row(class: SignatureClass, parity: DParity) -> GRow {
    use DeficiencyKind::*;
    use SignatureClass::*;
    let r = |row, lines, k| GRow {
        row,
        lines: Some(lines),
        deficiency: Some(k),
    };
    match (parity, class) {
        (_, MZZ) => GRow {
            row: 7,
            lines: None,
            deficiency: None,
        },
        (_, ZZP) => r(6, 0, N),
        (_, ZZZ) => r(8, 0, ThreeN),
        (DParity::Odd, PPP | MMP) => r(1, 0, Const(3)),
        (DParity::Odd, MPP) => r(2, 1, Const(0)),
        (DParity::Odd, MMM) => r(3, 3, Const(0)),
        (DParity::Odd, ZPP | MZP) => r(4, 0, Const(1)),
        (DParity::Odd, MMZ) => r(5, 0, Const(3)),
        (DParity::Even, PPP) => r(1, 0, Const(0)),
        (DParity::Even, MPP | MMM) => r(2, 0, Const(3)),
        (DParity::Even, MMP) => r(3, 2, Const(0)),
        (DParity::Even, ZPP) => r(4, 0, Const(0)),
        (DParity::Even, MZP | MMZ) => r(5, 0, Const(2)),
    }
}

/// Predicted degree, deficiency and point count of `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GPrediction {
    pub row: u8,
    pub lines: u32,
    pub n: i64,
    pub deficiency: DeficiencyKind,
    pub i: i64,
    pub count_g: i64,
}

/// `None` for the union of `d` lines.
pub fn predict_g(class: SignatureClass, parity: DParity, q: i64) -> Option<GPrediction> {
    let row = g_row(class, parity);
    let lines = row.lines?;
    let deficiency = row.deficiency?;
    let n = (q - 1) / 2 - lines as i64;
    let i = deficiency.value(n);
    let twice = n * (n + q - 1) - i * (n - 2);
    assert!(twice % 2 == 0, "odd numerator in the count of G");
    Some(GPrediction {
        row: row.row,
        lines,
        n,
        deficiency,
        i,
        count_g: twice / 2,
    })
}

/// A rational inflection point predicted in closed form, with its tangent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedInflection {
    pub point: ProjectivePoint,
    pub tangent: LinearForm,
}

/// The total inflection points listed for rows with positive deficiency:
/// the points `P_i`, `P_ij` and the sets `A_k`, each with its tangent.
pub fn expected_inflections(config: &CurveConfig) -> Vec<ExpectedInflection> {
    let f: &FieldSpec = &config.spec;
    let e = config.e;
    let d = f.half_order() as u64;
    let mut out = Vec::new();
    let mut push = |coords: [FieldElement; 3], tangent: [FieldElement; 3]| {
        out.push(ExpectedInflection {
            point: ProjectivePoint::new(f, coords, 1).expect("nonzero point"),
            tangent: LinearForm::new(f, tangent).expect("nonzero tangent"),
        });
    };
    for (i, j, k) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
        if f.eta(e[i]) == -1 && !(e[j].is_zero() && e[k].is_zero()) {
            let mut pt = [FieldElement::ZERO; 3];
            pt[i] = FieldElement::ONE;
            let s = f.pow(e[i], d - 1);
            let mut t = [FieldElement::ZERO; 3];
            t[j] = f.mul(e[j], s);
            t[k] = f.mul(e[k], s);
            push(pt, t);
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if f.eta(f.neg(f.mul(e[i], e[j]))) == -1 {
            let mut pt = [FieldElement::ZERO; 3];
            pt[i] = f.neg(e[j]);
            pt[j] = e[i];
            let mut t = [FieldElement::ZERO; 3];
            t[i] = f.pow(f.neg(e[j]), d - 1);
            t[j] = f.pow(e[i], d - 1);
            push(pt, t);
        }
    }
    for (u, v) in [(1, 2), (0, 2), (0, 1)] {
        if e[u].is_zero() && e[v].is_zero() {
            for x in f.nonzero_elements().filter(|&x| f.eta(x) == -1) {
                let mut pt = [FieldElement::ZERO; 3];
                pt[u] = x;
                pt[v] = FieldElement::ONE;
                let mut t = [FieldElement::ZERO; 3];
                t[u] = f.pow(x, d - 1);
                t[v] = FieldElement::ONE;
                push(pt, t);
            }
        }
    }
    out.sort_by_key(|a| a.point);
    out
}
