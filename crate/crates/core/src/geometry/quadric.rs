use std::collections::BTreeSet;

use super::{enumerate_projective_points, GQStructure, ProjectivePoint, DIM};
use crate::error::GeometryError;
use crate::field::FieldElement;

/// Singular points of the elliptic quadric in PG(5,4): (s+1)(st+1) with (s,t) = (4,16).
pub const Q54_POINTS: usize = 325;

/// A quadratic form `Q(x) = Σ_{i ≤ j} c_ij x_i x_j` on GF(4)⁶.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    coeffs: [[FieldElement; DIM]; DIM],
}

impl QuadraticForm {
    /// Builds a form from `(i, j, c)` terms; `i ≤ j` is enforced by swapping.
    pub fn from_terms(terms: &[(usize, usize, FieldElement)]) -> Self {
        let mut coeffs = [[FieldElement::ZERO; DIM]; DIM];
        for &(i, j, c) in terms {
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            coeffs[i][j] += c;
        }
        Self { coeffs }
    }

    /// `x₀x₁ + x₂x₃ + x₄² + x₄x₅ + ωx₅²`.
    ///
    /// Two hyperbolic planes plus the binary form `x² + xy + ωy²`, which is
    /// anisotropic because `t² + t + ω` has no root (`trace(ω) = 1`).
    pub fn elliptic() -> Self {
        let one = FieldElement::ONE;
        Self::from_terms(&[
            (0, 1, one),
            (2, 3, one),
            (4, 4, one),
            (4, 5, one),
            (5, 5, FieldElement::OMEGA),
        ])
    }

    /// `x₀x₁ + x₂x₃ + x₄x₅`, the hyperbolic form. Used to exercise the
    /// wrong-form diagnostic.
    pub fn hyperbolic() -> Self {
        let one = FieldElement::ONE;
        Self::from_terms(&[(0, 1, one), (2, 3, one), (4, 5, one)])
    }

    /// `true` when the anisotropic binary part `a x² + b xy + c y²` of the
    /// elliptic normal form is irreducible, i.e. `trace(ac/b²) = 1`.
    pub fn binary_part_is_anisotropic(&self) -> bool {
        let a = self.coeffs[4][4];
        let b = self.coeffs[4][5];
        let c = self.coeffs[5][5];
        match b.inv() {
            Ok(b_inv) => (a * c * b_inv * b_inv).trace() == FieldElement::ONE,
            Err(_) => false,
        }
    }

    pub fn evaluate_coords(&self, x: &[FieldElement; DIM]) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for i in 0..DIM {
            if x[i].is_zero() {
                continue;
            }
            for j in i..DIM {
                let c = self.coeffs[i][j];
                if !c.is_zero() {
                    acc += c * x[i] * x[j];
                }
            }
        }
        acc
    }

    pub fn evaluate(&self, x: &ProjectivePoint) -> FieldElement {
        self.evaluate_coords(x.coords())
    }

    /// Polar form `B(x, y) = Q(x + y) + Q(x) + Q(y)` on the given representatives.
    pub fn polarize_coords(&self, x: &[FieldElement; DIM], y: &[FieldElement; DIM]) -> FieldElement {
        let mut sum = *x;
        for (s, yi) in sum.iter_mut().zip(y) {
            *s += *yi;
        }
        self.evaluate_coords(&sum) + self.evaluate_coords(x) + self.evaluate_coords(y)
    }

    pub fn polarize(&self, x: &ProjectivePoint, y: &ProjectivePoint) -> FieldElement {
        self.polarize_coords(x.coords(), y.coords())
    }
}

pub fn evaluate_form(form: &QuadraticForm, x: &ProjectivePoint) -> FieldElement {
    form.evaluate(x)
}

pub fn polarize(form: &QuadraticForm, x: &ProjectivePoint, y: &ProjectivePoint) -> FieldElement {
    form.polarize(x, y)
}

/// Q(5,4) from the fixed elliptic form.
pub fn build_quadric_quadrangle() -> GQStructure {
    build_quadrangle_from_form(&QuadraticForm::elliptic())
        .expect("the elliptic form yields Q(5,4)")
}

/// Points: singular points of `form`. Lines: totally singular projective
/// lines, found by scanning singular pairs with `B(x, y) = 0`.
pub fn build_quadrangle_from_form(form: &QuadraticForm) -> Result<GQStructure, GeometryError> {
    let points: Vec<ProjectivePoint> = enumerate_projective_points()
        .into_iter()
        .filter(|p| form.evaluate(p).is_zero())
        .collect();
    if points.len() != Q54_POINTS {
        return Err(GeometryError::WrongPointCount {
            found: points.len(),
            expected: Q54_POINTS,
        });
    }

    let mut index_of = vec![usize::MAX; 1 << (2 * DIM)];
    for (i, p) in points.iter().enumerate() {
        index_of[p.packed()] = i;
    }

    let mut lines = BTreeSet::new();
    for (i, x) in points.iter().enumerate() {
        for (j, y) in points.iter().enumerate().skip(i + 1) {
            let span = x.line_points(y);
            let totally_singular = span.iter().all(|z| form.evaluate(z).is_zero());
            let polar_zero = form.polarize(x, y).is_zero();
            if polar_zero != totally_singular {
                return Err(GeometryError::PolarityMismatch { p: i, q: j });
            }
            if polar_zero {
                let mut line: Vec<usize> = span.iter().map(|z| index_of[z.packed()]).collect();
                line.sort_unstable();
                lines.insert(line);
            }
        }
    }

    GQStructure::new(points, lines.into_iter().collect())
}
