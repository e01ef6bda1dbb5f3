//! Points of the projective plane over a finite field.

use serde::{Deserialize, Serialize};

use crate::finite_field::{FieldElement, FieldSpec};

/// Scales a nonzero triple so that its first nonzero coordinate is 1.
pub fn normalize(f: &FieldSpec, c: [FieldElement; 3]) -> Option<[FieldElement; 3]> {
    let lead = c.iter().copied().find(|x| !x.is_zero())?;
    let inv = f.inv(lead).expect("lead is nonzero");
    Some(c.map(|x| f.mul(x, inv)))
}

/// A point of `P^2(F_{q^k})` in normalized coordinates. `level` records `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjectivePoint {
    pub coords: [FieldElement; 3],
    pub level: u32,
}

impl ProjectivePoint {
    pub fn new(f: &FieldSpec, coords: [FieldElement; 3], level: u32) -> Option<Self> {
        normalize(f, coords).map(|coords| ProjectivePoint { coords, level })
    }

    pub fn indices(&self) -> [u32; 3] {
        self.coords.map(|c| c.index())
    }
}

/// Number of points of `P^2(F_q)`.
pub fn plane_size(q: u64) -> u64 {
    q * q + q + 1
}

/// All normalized points in the order `(1:a:b)`, `(0:1:b)`, `(0:0:1)`,
/// inner coordinates by index.
pub fn plane_points(f: &FieldSpec) -> impl Iterator<Item = [FieldElement; 3]> + '_ {
    let one = FieldElement::ONE;
    let zero = FieldElement::ZERO;
    let affine = f
        .elements()
        .flat_map(move |a| f.elements().map(move |b| [one, a, b]));
    let at_infinity = f.elements().map(move |b| [zero, one, b]);
    affine
        .chain(at_infinity)
        .chain(std::iter::once([zero, zero, one]))
}

/// Position of a normalized point in [`plane_points`] order.
pub fn plane_index(f: &FieldSpec, pt: [FieldElement; 3]) -> usize {
    let q = f.order() as usize;
    if pt[0] == FieldElement::ONE {
        pt[1].index() as usize * q + pt[2].index() as usize
    } else if pt[1] == FieldElement::ONE {
        q * q + pt[2].index() as usize
    } else {
        q * q + q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_complete_and_indexed() {
        let f = FieldSpec::new(5, 1).unwrap();
        let pts: Vec<_> = plane_points(&f).collect();
        assert_eq!(pts.len() as u64, plane_size(5));
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(plane_index(&f, *p), i);
            assert_eq!(normalize(&f, *p), Some(*p));
        }
    }

    #[test]
    fn normalization_is_scale_invariant() {
        let f = FieldSpec::new(7, 1).unwrap();
        let e = |i| f.element(i).unwrap();
        let p = [e(0), e(3), e(5)];
        let scaled = p.map(|x| f.mul(x, e(4)));
        assert_eq!(normalize(&f, p), normalize(&f, scaled));
        assert_eq!(normalize(&f, [e(0); 3]), None);
    }
}
