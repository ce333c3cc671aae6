use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CountingError;

/// Exact rationals over arbitrary-precision integers.
pub type ExactRational = BigRational;

fn rat(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// `Σ_{j ≥ i} C(j, i)·x_j = C(w, i)·λ_i` for `i = 0..λ.len()`, optionally
/// with some unknowns pinned to constants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingSystem {
    /// Size `w` of the window whose subsets are counted.
    pub window: usize,
    /// Number of unknowns `x_0..x_{unknowns-1}`.
    pub unknowns: usize,
    pub lambdas: Vec<i64>,
    pub fixed: Vec<(usize, i64)>,
}

impl CountingSystem {
    pub fn new(window: usize, unknowns: usize, lambdas: Vec<i64>) -> Self {
        Self { window, unknowns, lambdas, fixed: Vec::new() }
    }

    /// Blocks of the 3-(17,5,3) design seen from a block `A′`:
    /// unknowns `n_0..n_5`, `λ = (204, 60, 15, 3)`.
    pub fn adjacency() -> Self {
        Self::new(5, 6, vec![204, 60, 15, 3])
    }

    /// The derived design at `a ∈ A″` seen from `A′`: unknowns `m_0..m_4`,
    /// `λ′ = (60, 15, 3)`.
    pub fn derived() -> Self {
        Self::new(5, 5, vec![60, 15, 3])
    }

    pub fn with_fixed(mut self, unknown: usize, value: i64) -> Self {
        self.fixed.push((unknown, value));
        self
    }

    pub fn equations(&self) -> usize {
        self.lambdas.len()
    }

    /// `C(j, i)`, zero for `j < i`.
    pub fn coefficient(&self, i: usize, j: usize) -> BigInt {
        if j < i {
            BigInt::zero()
        } else {
            binomial(BigInt::from(j), BigInt::from(i))
        }
    }

    /// `C(w, i)·λ_i`
    pub fn rhs(&self, i: usize) -> BigInt {
        binomial(BigInt::from(self.window), BigInt::from(i)) * BigInt::from(self.lambdas[i])
    }

    /// Left minus right side of each counting equation at `x` (pins ignored).
    pub fn residuals(&self, x: &[ExactRational]) -> Vec<ExactRational> {
        (0..self.equations())
            .map(|i| {
                let lhs = x
                    .iter()
                    .enumerate()
                    .fold(ExactRational::zero(), |acc, (j, xj)| {
                        acc + ExactRational::from_integer(self.coefficient(i, j)) * xj
                    });
                lhs - ExactRational::from_integer(self.rhs(i))
            })
            .collect()
    }

    /// Exact check of every equation and pin at an integer point.
    pub fn is_satisfied_by(&self, x: &[i64]) -> bool {
        x.len() == self.unknowns
            && self.residuals(&x.iter().map(|&v| rat(v)).collect::<Vec<_>>()).iter().all(Zero::is_zero)
            && self.fixed.iter().all(|&(u, v)| x[u] == v)
    }
}

/// `x_bound = particular + Σ_f x_f·basis_f`, with pinned unknowns carried along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionFamily {
    pub unknowns: usize,
    pub bound: Vec<usize>,
    pub free: Vec<usize>,
    pub fixed: Vec<(usize, ExactRational)>,
    /// Indexed like `bound`.
    pub particular: Vec<ExactRational>,
    /// One vector per free unknown, each indexed like `bound`.
    pub basis: Vec<Vec<ExactRational>>,
}

impl AffineSolutionFamily {
    /// Full unknown vector for the given free values (ordered like `free`).
    pub fn evaluate(&self, free_values: &[ExactRational]) -> Vec<ExactRational> {
        assert_eq!(free_values.len(), self.free.len());
        let mut x = vec![ExactRational::zero(); self.unknowns];
        for (&u, v) in self.free.iter().zip(free_values) {
            x[u] = v.clone();
        }
        for (u, v) in &self.fixed {
            x[*u] = v.clone();
        }
        for (row, &u) in self.bound.iter().enumerate() {
            let mut value = self.particular[row].clone();
            for (f, fv) in free_values.iter().enumerate() {
                value += &self.basis[f][row] * fv;
            }
            x[u] = value;
        }
        x
    }

    /// Integer evaluation; `None` if some unknown is not an integer.
    pub fn evaluate_integers(&self, free_values: &[i64]) -> Option<Vec<i64>> {
        let free: Vec<_> = free_values.iter().map(|&v| rat(v)).collect();
        self.evaluate(&free)
            .into_iter()
            .map(|v| if v.is_integer() { v.to_integer().to_i64() } else { None })
            .collect()
    }

    fn integer_column(col: &[ExactRational]) -> Option<Vec<i64>> {
        col.iter()
            .map(|v| if v.is_integer() { v.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn particular_integers(&self) -> Option<Vec<i64>> {
        Self::integer_column(&self.particular)
    }

    /// Basis vector of the given free unknown, as integers.
    pub fn basis_integers(&self, free_unknown: usize) -> Option<Vec<i64>> {
        let f = self.free.iter().position(|&u| u == free_unknown)?;
        Self::integer_column(&self.basis[f])
    }

    /// Affine coefficients of one bound unknown: `(constant, [coeff per free])`.
    pub fn row(&self, unknown: usize) -> Option<(ExactRational, Vec<ExactRational>)> {
        let r = self.bound.iter().position(|&u| u == unknown)?;
        Some((self.particular[r].clone(), self.basis.iter().map(|b| b[r].clone()).collect()))
    }

    /// Residuals vanish identically in the free unknowns: at the particular
    /// point, and homogeneously along every basis direction.
    pub fn satisfies(&self, sys: &CountingSystem) -> bool {
        let zeros = vec![ExactRational::zero(); self.free.len()];
        let base = self.evaluate(&zeros);
        if !sys.residuals(&base).iter().all(Zero::is_zero) {
            return false;
        }
        for f in 0..self.free.len() {
            let mut unit = zeros.clone();
            unit[f] = ExactRational::one();
            let moved = self.evaluate(&unit);
            let direction: Vec<_> = moved.iter().zip(&base).map(|(a, b)| a - b).collect();
            let homogeneous = CountingSystem { lambdas: vec![0; sys.lambdas.len()], ..sys.clone() };
            if !homogeneous.residuals(&direction).iter().all(Zero::is_zero) {
                return false;
            }
            if self.fixed.iter().any(|(u, _)| !direction[*u].is_zero()) {
                return false;
            }
        }
        true
    }
}

/// Gauss–Jordan elimination over exact rationals, solving for every unknown
/// that is neither free nor pinned.
pub fn solve_counting_system(sys: &CountingSystem, free: &[usize]) -> Result<AffineSolutionFamily, CountingError> {
    for &u in free.iter().chain(sys.fixed.iter().map(|(u, _)| u)) {
        if u >= sys.unknowns {
            return Err(CountingError::UnknownIndex(u));
        }
    }
    if let Some(&u) = free.iter().find(|u| sys.fixed.iter().any(|(f, _)| f == *u)) {
        return Err(CountingError::FreeAndFixed(u));
    }
    let bound: Vec<usize> = (0..sys.unknowns)
        .filter(|u| !free.contains(u) && !sys.fixed.iter().any(|(f, _)| f == u))
        .collect();
    let m = sys.equations();
    if bound.len() != m {
        return Err(CountingError::NotSquare { equations: m, bound: bound.len() });
    }

    // Augmented matrix [M | rhs | -F], with pinned unknowns moved to rhs.
    let mut rows: Vec<Vec<ExactRational>> = (0..m)
        .map(|i| {
            let c = |j: usize| ExactRational::from_integer(sys.coefficient(i, j));
            let mut row: Vec<ExactRational> = bound.iter().map(|&j| c(j)).collect();
            let mut rhs = ExactRational::from_integer(sys.rhs(i));
            for &(j, v) in &sys.fixed {
                rhs -= c(j) * rat(v);
            }
            row.push(rhs);
            row.extend(free.iter().map(|&f| -c(f)));
            row
        })
        .collect();

    gauss_jordan(&mut rows, m)?;

    let particular = rows.iter().map(|row| row[m].clone()).collect();
    let basis = (0..free.len())
        .map(|f| rows.iter().map(|row| row[m + 1 + f].clone()).collect())
        .collect();
    Ok(AffineSolutionFamily {
        unknowns: sys.unknowns,
        bound,
        free: free.to_vec(),
        fixed: sys.fixed.iter().map(|&(u, v)| (u, rat(v))).collect(),
        particular,
        basis,
    })
}

/// Reduces the leading `m × m` block of `rows` to the identity, applying
/// the same operations to the trailing columns.
fn gauss_jordan(rows: &mut [Vec<ExactRational>], m: usize) -> Result<(), CountingError> {
    let width = rows.first().map_or(0, Vec::len);
    for col in 0..m {
        let pivot = (col..m).find(|&r| !rows[r][col].is_zero()).ok_or(CountingError::Singular)?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for v in rows[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..width {
                    let delta = &factor * &rows[col][c];
                    rows[r][c] -= delta;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn star_family() {
        let sys = CountingSystem::adjacency();
        let fam = solve_counting_system(&sys, &[0, 1]).unwrap();
        assert_eq!(fam.bound, vec![2, 3, 4, 5]);
        assert_eq!(fam.particular_integers(), Some(vec![660, -990, 720, -186]));
        assert_eq!(fam.basis_integers(0), Some(vec![-10, 20, -15, 4]));
        assert_eq!(fam.basis_integers(1), Some(vec![-4, 6, -4, 1]));
        assert!(fam.satisfies(&sys));
    }

    #[test]
    fn double_star_family() {
        let sys = CountingSystem::adjacency().with_fixed(5, 1);
        let fam = solve_counting_system(&sys, &[4]).unwrap();
        assert_eq!(fam.bound, vec![0, 1, 2, 3]);
        assert_eq!(fam.particular_integers(), Some(vec![28, 75, 80, 20]));
        assert_eq!(fam.basis_integers(4), Some(vec![1, -4, 6, -4]));
        assert!(fam.satisfies(&sys));
    }

    #[test]
    fn triple_star_family() {
        let sys = CountingSystem::derived();
        let fam = solve_counting_system(&sys, &[3, 4]).unwrap();
        assert_eq!(fam.bound, vec![0, 1, 2]);
        assert_eq!(fam.particular_integers(), Some(vec![15, 15, 30]));
        assert_eq!(fam.basis_integers(3), Some(vec![-1, 3, -3]));
        assert_eq!(fam.basis_integers(4), Some(vec![-3, 8, -6]));
        assert!(fam.satisfies(&sys));
    }

    #[test]
    fn rejects_bad_free_choices() {
        let sys = CountingSystem::adjacency();
        assert_eq!(
            solve_counting_system(&sys, &[0]).unwrap_err(),
            CountingError::NotSquare { equations: 4, bound: 5 }
        );
        assert_eq!(solve_counting_system(&sys, &[0, 9]).unwrap_err(), CountingError::UnknownIndex(9));
        let pinned = CountingSystem::adjacency().with_fixed(5, 1);
        assert_eq!(solve_counting_system(&pinned, &[5]).unwrap_err(), CountingError::FreeAndFixed(5));
    }

    #[test]
    fn singular_block_is_reported() {
        // Binomial columns C(j, ·) for distinct j are always independent, so
        // the counting systems themselves never hit this; exercise it directly.
        let mut rows = vec![vec![rat(1), rat(2), rat(3)], vec![rat(2), rat(4), rat(5)]];
        assert_eq!(gauss_jordan(&mut rows, 2), Err(CountingError::Singular));
        let mut ok = vec![vec![rat(2), rat(1), rat(3)], vec![rat(1), rat(1), rat(2)]];
        gauss_jordan(&mut ok, 2).unwrap();
        assert_eq!(ok[0][2], rat(1));
        assert_eq!(ok[1][2], rat(1));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(25))]
        #[test]
        fn families_satisfy_their_systems(a in -500i64..500, b in -500i64..500) {
            let star = solve_counting_system(&CountingSystem::adjacency(), &[0, 1]).unwrap();
            let x = star.evaluate_integers(&[a, b]).unwrap();
            prop_assert!(CountingSystem::adjacency().is_satisfied_by(&x));

            let pinned = CountingSystem::adjacency().with_fixed(5, 1);
            let dstar = solve_counting_system(&pinned, &[4]).unwrap();
            let y = dstar.evaluate_integers(&[a]).unwrap();
            prop_assert!(pinned.is_satisfied_by(&y));

            let tstar = solve_counting_system(&CountingSystem::derived(), &[3, 4]).unwrap();
            let z = tstar.evaluate_integers(&[a, b]).unwrap();
            prop_assert!(CountingSystem::derived().is_satisfied_by(&z));
        }
    }
}
