//! PG(5,4), the elliptic quadric in it, and the quadrangle Q(5,4) as an
//! explicit point/line incidence structure.

mod format;
mod quadric;
mod structure;

pub use format::{parse_geometry, write_geometry, GeometryFile};
pub use quadric::{
    build_quadrangle_from_form, build_quadric_quadrangle, evaluate_form, polarize, QuadraticForm,
    Q54_POINTS,
};
pub use structure::{
    check_gq_axioms, line_through, AxiomFailure, AxiomReport, AxiomStatus, GQParams, GQStructure,
};

use std::cmp::Ordering;
use std::fmt;

use crate::field::FieldElement;

/// Projective dimension is 5, so points have six homogeneous coordinates.
pub const DIM: usize = 6;

/// Number of points of PG(5,4): (4⁶ − 1)/3.
pub const PG54_POINTS: usize = 1365;

/// A point of PG(5,4) in normal form: the first nonzero coordinate is 1.
///
/// Points are ordered by the position of that leading 1 and then
/// lexicographically on the coordinate codes, so `(1,0,0,0,0,0)` is least.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjectivePoint([FieldElement; DIM]);

impl ProjectivePoint {
    /// Scales `coords` to normal form; `None` for the zero vector.
    pub fn normalize(coords: [FieldElement; DIM]) -> Option<Self> {
        let lead = coords.iter().copied().find(|c| !c.is_zero())?;
        let inv = lead.inv().ok()?;
        Some(Self(coords.map(|c| c * inv)))
    }

    /// Accepts `coords` only if it is already in normal form.
    pub fn from_normalized(coords: [FieldElement; DIM]) -> Option<Self> {
        let p = Self::normalize(coords)?;
        (p.0 == coords).then_some(p)
    }

    #[inline]
    pub fn coords(&self) -> &[FieldElement; DIM] {
        &self.0
    }

    /// Index of the leading 1.
    pub fn pivot(&self) -> usize {
        self.0
            .iter()
            .position(|c| !c.is_zero())
            .expect("normalized point is nonzero")
    }

    /// Base-4 packing of the codes, first coordinate most significant.
    pub fn packed(&self) -> usize {
        self.0
            .iter()
            .fold(0usize, |acc, c| acc * 4 + c.code() as usize)
    }

    /// The five points of the projective line through two distinct points:
    /// `x`, `y` and `x + λy` for the three units λ.
    pub fn line_points(&self, other: &Self) -> [Self; 5] {
        let mut out = [*self, *other, *self, *self, *self];
        for (slot, lambda) in out[2..].iter_mut().zip(FieldElement::UNITS) {
            let mut c = self.0;
            for (ci, oi) in c.iter_mut().zip(other.0) {
                *ci += lambda * oi;
            }
            *slot = Self::normalize(c).expect("distinct projective points span a line");
        }
        out
    }
}

impl Ord for ProjectivePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.pivot()
            .cmp(&other.pivot())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c.code())?;
        }
        write!(f, ")")
    }
}

/// All points of PG(5,4) in canonical order.
pub fn enumerate_projective_points() -> Vec<ProjectivePoint> {
    let mut points = Vec::with_capacity(PG54_POINTS);
    for pivot in 0..DIM {
        let tail = DIM - 1 - pivot;
        for word in 0..4usize.pow(tail as u32) {
            let mut coords = [FieldElement::ZERO; DIM];
            coords[pivot] = FieldElement::ONE;
            for k in 0..tail {
                let code = (word >> (2 * (tail - 1 - k))) & 3;
                coords[pivot + 1 + k] = FieldElement::from_code(code as u8).expect("2-bit code");
            }
            points.push(ProjectivePoint(coords));
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn fe(c: u8) -> FieldElement {
        FieldElement::from_code(c).unwrap()
    }

    #[test]
    fn enumeration_count_and_order() {
        let pts = enumerate_projective_points();
        assert_eq!(pts.len(), PG54_POINTS);
        assert_eq!(pts[0].coords().map(|c| c.code()), [1, 0, 0, 0, 0, 0]);
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        for p in &pts {
            assert_eq!(p.coords()[p.pivot()], FieldElement::ONE);
        }
    }

    #[test]
    fn enumeration_matches_brute_force_over_nonzero_tuples() {
        // Independent route: normalize every nonzero 6-tuple and deduplicate.
        let mut seen = HashSet::new();
        for word in 1..4096usize {
            let coords: [FieldElement; DIM] =
                std::array::from_fn(|i| fe(((word >> (2 * (5 - i))) & 3) as u8));
            seen.insert(ProjectivePoint::normalize(coords).unwrap());
        }
        let listed: HashSet<_> = enumerate_projective_points().into_iter().collect();
        assert_eq!(seen, listed);
    }

    #[test]
    fn normalization_is_canonical_under_scaling() {
        for p in enumerate_projective_points().iter().step_by(7) {
            for lambda in FieldElement::UNITS {
                let scaled = p.coords().map(|c| c * lambda);
                assert_eq!(ProjectivePoint::normalize(scaled), Some(*p));
            }
        }
        assert_eq!(ProjectivePoint::normalize([FieldElement::ZERO; DIM]), None);
        assert!(ProjectivePoint::from_normalized([fe(2), fe(0), fe(0), fe(0), fe(0), fe(0)]).is_none());
    }

    #[test]
    fn line_points_are_distinct() {
        let pts = enumerate_projective_points();
        let line = pts[0].line_points(&pts[100]);
        let set: HashSet<_> = line.iter().collect();
        assert_eq!(set.len(), 5);
    }
}
