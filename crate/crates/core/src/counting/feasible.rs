use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::AffineSolutionFamily;
use crate::error::CountingError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

/// A constraint on the full unknown vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Constraint {
    /// `Σ coeffs[j]·x_j (rel) rhs`
    Linear { coeffs: Vec<i64>, relation: Relation, rhs: i64 },
    /// `Σ coeffs[j]·x_j ≡ residue (mod modulus)`
    Congruence { coeffs: Vec<i64>, modulus: i64, residue: i64 },
}

impl Constraint {
    fn unit(unknowns: usize, index: usize) -> Vec<i64> {
        let mut coeffs = vec![0; unknowns];
        coeffs[index] = 1;
        coeffs
    }

    pub fn equals(unknowns: usize, index: usize, value: i64) -> Self {
        Self::Linear { coeffs: Self::unit(unknowns, index), relation: Relation::Eq, rhs: value }
    }

    pub fn at_least(unknowns: usize, index: usize, value: i64) -> Self {
        Self::Linear { coeffs: Self::unit(unknowns, index), relation: Relation::Ge, rhs: value }
    }

    pub fn at_most(unknowns: usize, index: usize, value: i64) -> Self {
        Self::Linear { coeffs: Self::unit(unknowns, index), relation: Relation::Le, rhs: value }
    }

    pub fn holds(&self, x: &[i64]) -> bool {
        let dot = |coeffs: &[i64]| coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<i64>();
        match self {
            Self::Linear { coeffs, relation, rhs } => {
                let lhs = dot(coeffs);
                match relation {
                    Relation::Eq => lhs == *rhs,
                    Relation::Le => lhs <= *rhs,
                    Relation::Ge => lhs >= *rhs,
                }
            }
            Self::Congruence { coeffs, modulus, residue } => (dot(coeffs) - residue).rem_euclid(*modulus) == 0,
        }
    }
}

/// Inclusive integer range per free unknown, ordered like the family's `free`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBox(pub Vec<RangeInclusive<i64>>);

impl SearchBox {
    /// `[0, bound]` for each of `dims` free unknowns.
    pub fn cube(dims: usize, bound: i64) -> Self {
        Self(vec![0..=bound; dims])
    }
}

/// Every integer point of the box whose full unknown vector is a
/// non-negative integer vector satisfying all constraints, ordered
/// lexicographically by free-unknown values.
pub fn enumerate_feasible_profiles(
    family: &AffineSolutionFamily,
    constraints: &[Constraint],
    search: &SearchBox,
) -> Result<Vec<Vec<i64>>, CountingError> {
    let dims = family.free.len();
    if search.0.len() != dims {
        return Err(CountingError::BoxArity { got: search.0.len(), expected: dims });
    }
    if search.0.iter().any(|r| r.is_empty()) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut point: Vec<i64> = search.0.iter().map(|r| *r.start()).collect();
    loop {
        if let Some(x) = family.evaluate_integers(&point) {
            if x.iter().all(|&v| v >= 0) && constraints.iter().all(|c| c.holds(&x)) {
                out.push(x);
            }
        }
        // Odometer step, last free unknown fastest.
        let mut d = dims;
        loop {
            if d == 0 {
                return Ok(out);
            }
            d -= 1;
            if point[d] < *search.0[d].end() {
                point[d] += 1;
                for (slot, range) in point[d + 1..].iter_mut().zip(&search.0[d + 1..]) {
                    *slot = *range.start();
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{solve_counting_system, CountingSystem};

    #[test]
    fn constraint_semantics() {
        let x = [3, 5];
        assert!(Constraint::equals(2, 0, 3).holds(&x));
        assert!(Constraint::at_least(2, 1, 5).holds(&x));
        assert!(!Constraint::at_most(2, 1, 4).holds(&x));
        let c = Constraint::Congruence { coeffs: vec![1, 1], modulus: 4, residue: 0 };
        assert!(c.holds(&x));
        let c = Constraint::Congruence { coeffs: vec![-1, 0], modulus: 4, residue: 1 };
        assert!(c.holds(&x));
    }

    #[test]
    fn n5_equal_two_is_infeasible_under_lemma_bounds() {
        let star = solve_counting_system(&CountingSystem::adjacency(), &[0, 1]).unwrap();
        let constraints = [
            Constraint::equals(6, 5, 2),
            Constraint::at_least(6, 0, 36),
            Constraint::at_least(6, 1, 15),
        ];
        let found = enumerate_feasible_profiles(&star, &constraints, &SearchBox::cube(2, 204)).unwrap();
        assert!(found.is_empty());
    }

    #[test]
    fn n5_equal_two_without_the_geometric_bound_is_feasible() {
        // Only n₀ ∈ {32, 33, 34} survive non-negativity; the n₀ ≥ 36 bound is
        // what closes the case.
        let star = solve_counting_system(&CountingSystem::adjacency(), &[0, 1]).unwrap();
        let found =
            enumerate_feasible_profiles(&star, &[Constraint::equals(6, 5, 2)], &SearchBox::cube(2, 204)).unwrap();
        let n0: Vec<i64> = found.iter().map(|x| x[0]).collect();
        assert_eq!(n0, vec![32, 33, 34]);
    }

    #[test]
    fn q54_profile_is_feasible_for_n5_three() {
        let star = solve_counting_system(&CountingSystem::adjacency(), &[0, 1]).unwrap();
        let constraints = [
            Constraint::equals(6, 5, 3),
            Constraint::at_least(6, 0, 24),
            Constraint::at_least(6, 1, 15),
        ];
        let found = enumerate_feasible_profiles(&star, &constraints, &SearchBox::cube(2, 204)).unwrap();
        assert!(found.contains(&vec![36, 45, 120, 0, 0, 3]));
    }

    #[test]
    fn triple_star_nonnegativity_bounds_m3_and_m4() {
        let fam = solve_counting_system(&CountingSystem::derived(), &[3, 4]).unwrap();
        let found = enumerate_feasible_profiles(&fam, &[], &SearchBox::cube(2, 204)).unwrap();
        assert!(!found.is_empty());
        assert!(found.iter().all(|m| m[3] + 3 * m[4] <= 15));
    }

    #[test]
    fn box_arity_and_empty_ranges() {
        let fam = solve_counting_system(&CountingSystem::derived(), &[3, 4]).unwrap();
        assert_eq!(
            enumerate_feasible_profiles(&fam, &[], &SearchBox::cube(1, 5)).unwrap_err(),
            CountingError::BoxArity { got: 1, expected: 2 }
        );
        #[allow(clippy::reversed_empty_ranges)]
        let empty = SearchBox(vec![0..=3, 5..=4]);
        assert!(enumerate_feasible_profiles(&fam, &[], &empty).unwrap().is_empty());
    }
}
