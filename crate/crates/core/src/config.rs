//! Curve parameters and their quadratic-character signature.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::FieldError;
use crate::finite_field::{FieldElement, FieldSpec};

/// A field together with the section parameters `(e0, e1, e2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveConfig {
    pub spec: Arc<FieldSpec>,
    pub e: [FieldElement; 3],
}

impl CurveConfig {
    pub fn new(spec: Arc<FieldSpec>, e: [FieldElement; 3]) -> Self {
        CurveConfig { spec, e }
    }

    /// Builds a configuration from element indices.
    pub fn from_indices(spec: Arc<FieldSpec>, e: [u64; 3]) -> Result<Self, FieldError> {
        let e = [
            spec.element(e[0])?,
            spec.element(e[1])?,
            spec.element(e[2])?,
        ];
        Ok(CurveConfig { spec, e })
    }

    pub fn indices(&self) -> [u32; 3] {
        self.e.map(|x| x.index())
    }

    pub fn signature(&self) -> EtaSignature {
        EtaSignature::of(&self.spec, self.e)
    }

    /// Every configuration over `spec`, lexicographic in the indices.
    pub fn all(spec: &Arc<FieldSpec>) -> impl Iterator<Item = CurveConfig> + '_ {
        let q = spec.order() as u64;
        (0..q * q * q).map(move |k| {
            let e = [k / (q * q), (k / q) % q, k % q];
            CurveConfig::from_indices(spec.clone(), e).expect("indices below q")
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DParity {
    Odd,
    Even,
}

impl DParity {
    pub fn of(spec: &FieldSpec) -> Self {
        if spec.half_order().is_multiple_of(2) {
            DParity::Even
        } else {
            DParity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DParity::Odd => "odd",
            DParity::Even => "even",
        }
    }
}

/// The ten possible multisets `{η(e0), η(e1), η(e2)}`, named by their sorted
/// entries (`M` = -1, `Z` = 0, `P` = +1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SignatureClass {
    PPP,
    MPP,
    MMP,
    MMM,
    ZPP,
    MZP,
    MMZ,
    ZZP,
    MZZ,
    ZZZ,
}

impl SignatureClass {
    /// Rows in the order of the classification tables.
    pub const ALL: [SignatureClass; 10] = [
        SignatureClass::PPP,
        SignatureClass::MPP,
        SignatureClass::MMP,
        SignatureClass::MMM,
        SignatureClass::ZPP,
        SignatureClass::MZP,
        SignatureClass::MMZ,
        SignatureClass::ZZP,
        SignatureClass::MZZ,
        SignatureClass::ZZZ,
    ];

    pub fn from_sorted(m: [i8; 3]) -> Self {
        match m {
            [1, 1, 1] => SignatureClass::PPP,
            [-1, 1, 1] => SignatureClass::MPP,
            [-1, -1, 1] => SignatureClass::MMP,
            [-1, -1, -1] => SignatureClass::MMM,
            [0, 1, 1] => SignatureClass::ZPP,
            [-1, 0, 1] => SignatureClass::MZP,
            [-1, -1, 0] => SignatureClass::MMZ,
            [0, 0, 1] => SignatureClass::ZZP,
            [-1, 0, 0] => SignatureClass::MZZ,
            [0, 0, 0] => SignatureClass::ZZZ,
            _ => panic!("not a sorted character triple: {m:?}"),
        }
    }

    pub fn multiset(self) -> [i8; 3] {
        match self {
            SignatureClass::PPP => [1, 1, 1],
            SignatureClass::MPP => [-1, 1, 1],
            SignatureClass::MMP => [-1, -1, 1],
            SignatureClass::MMM => [-1, -1, -1],
            SignatureClass::ZPP => [0, 1, 1],
            SignatureClass::MZP => [-1, 0, 1],
            SignatureClass::MMZ => [-1, -1, 0],
            SignatureClass::ZZP => [0, 0, 1],
            SignatureClass::MZZ => [-1, 0, 0],
            SignatureClass::ZZZ => [0, 0, 0],
        }
    }

    /// Number of zero parameters.
    pub fn zeros(self) -> usize {
        self.multiset().iter().filter(|&&s| s == 0).count()
    }

    /// A parameter triple with this signature (η-values realized by 0, 1, λ).
    pub fn representative(self, spec: &FieldSpec) -> [FieldElement; 3] {
        self.multiset().map(|s| match s {
            0 => FieldElement::ZERO,
            1 => FieldElement::ONE,
            _ => spec.lambda(),
        })
    }
}

impl fmt::Display for SignatureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.multiset();
        write!(f, "{{{a},{b},{c}}}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EtaSignature {
    pub ordered: [i8; 3],
    pub multiset: [i8; 3],
    pub parity: DParity,
}

impl EtaSignature {
    pub fn of(spec: &FieldSpec, e: [FieldElement; 3]) -> Self {
        let ordered = e.map(|x| spec.eta(x));
        let mut multiset = ordered;
        multiset.sort_unstable();
        EtaSignature {
            ordered,
            multiset,
            parity: DParity::of(spec),
        }
    }

    pub fn class(&self) -> SignatureClass {
        SignatureClass::from_sorted(self.multiset)
    }

    /// The ordered triple as `(a,b,c)`.
    pub fn ordered_text(&self) -> String {
        let [a, b, c] = self.ordered;
        format!("({a},{b},{c})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_examples() {
        let f7 = Arc::new(FieldSpec::new(7, 1).unwrap());
        let s = CurveConfig::from_indices(f7.clone(), [1, 2, 4])
            .unwrap()
            .signature();
        assert_eq!(s.ordered, [1, 1, 1]);
        assert_eq!(s.parity, DParity::Odd);
        let s = CurveConfig::from_indices(f7, [0, 0, 0])
            .unwrap()
            .signature();
        assert_eq!(s.class(), SignatureClass::ZZZ);
        let f13 = Arc::new(FieldSpec::new(13, 1).unwrap());
        let s = CurveConfig::from_indices(f13, [2, 5, 6])
            .unwrap()
            .signature();
        assert_eq!(s.ordered, [-1, -1, -1]);
        assert_eq!(s.class(), SignatureClass::MMM);
        assert_eq!(s.parity, DParity::Even);
    }

    #[test]
    fn every_triple_has_one_of_ten_classes() {
        let f = Arc::new(FieldSpec::new(5, 1).unwrap());
        let mut seen = std::collections::BTreeSet::new();
        for c in CurveConfig::all(&f) {
            seen.insert(c.signature().class());
        }
        assert_eq!(seen.len(), 10);
        for class in SignatureClass::ALL {
            let s = EtaSignature::of(&f, class.representative(&f));
            assert_eq!(s.class(), class);
        }
    }
}
