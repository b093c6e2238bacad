//! Exact integer matrices: fraction-free determinants and rational solving.

use super::ExactError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::Index;

/// A dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Build from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, ExactError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(ExactError::DimensionMismatch {
                    expected: ncols,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(IntMatrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    /// Test/setup convenience over machine integers.
    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("ragged rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, ExactError> {
        if self.cols != rhs.rows {
            return Err(ExactError::DimensionMismatch {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * rhs.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every division in the Bareiss recurrence is exact, so no rounding
    /// happens at any step; intermediate entries stay minors of the input.
    pub fn det(&self) -> Result<BigInt, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !m.get(r, k).is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            m.data.swap(k * n + c, r * n + c);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.get(i, j) * m.get(k, k) - m.get(i, k) * m.get(k, j);
                    m.set(i, j, &num / &prev);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.get(k, k).clone();
        }
        let d = m.get(n - 1, n - 1).clone();
        Ok(if sign < 0 { -d } else { d })
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut mat = self.to_rational_rows();
        rref(&mut mat).len()
    }

    fn to_rational_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        self.get(r, c)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Reduced row-echelon form in place; returns the pivot columns in order.
/// Rows may be wider than the pivot search range (augmented columns are
/// eliminated but never chosen as pivots when `pivot_cols` is given).
fn rref_bounded(mat: &mut [Vec<BigRational>], pivot_cols: usize) -> Vec<usize> {
    let nrows = mat.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for x in mat[r][c..].iter_mut() {
            *x *= &inv;
        }
        for i in 0..nrows {
            if i != r && !mat[i][c].is_zero() {
                let factor = mat[i][c].clone();
                let row_r = mat[r].clone();
                for (x, y) in mat[i][c..].iter_mut().zip(row_r[c..].iter()) {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rref(mat: &mut [Vec<BigRational>]) -> Vec<usize> {
    let cols = mat.first().map_or(0, |r| r.len());
    rref_bounded(mat, cols)
}

/// Outcome of solving a square system exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<BigRational>),
    NoUniqueSolution,
}

/// Solve `A x = b` for square `A`, exactly.
///
/// Returns the unique solution when `det(A) != 0` and `NoUniqueSolution`
/// otherwise (whether the system is inconsistent or underdetermined).
pub fn solve_linear(a: &IntMatrix, b: &[BigRational]) -> Result<LinearSolution, ExactError> {
    if a.rows() != a.cols() {
        return Err(ExactError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if b.len() != a.rows() {
        return Err(ExactError::DimensionMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let n = a.rows();
    let mut mat = a.to_rational_rows();
    for (row, rhs) in mat.iter_mut().zip(b.iter()) {
        row.push(rhs.clone());
    }
    let pivots = rref_bounded(&mut mat, n);
    if pivots.len() < n {
        return Ok(LinearSolution::NoUniqueSolution);
    }
    Ok(LinearSolution::Unique(
        (0..n).map(|i| mat[i][n].clone()).collect(),
    ))
}

/// A consistent affine system: one particular solution plus a basis of the
/// homogeneous solution space, parametrized by the free (non-pivot) columns.
///
/// The basis vector for free column `j` has entry 1 at `j` and 0 at every
/// other free column, so `particular + sum(t_j * basis_j)` ranges over all
/// solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<BigRational>,
    pub nullspace: Vec<Vec<BigRational>>,
    pub free_columns: Vec<usize>,
}

impl AffineSolution {
    /// True when the solution is unique (no free columns).
    pub fn is_unique(&self) -> bool {
        self.free_columns.is_empty()
    }

    /// The solution obtained by setting every free coordinate to 1.
    ///
    /// This is the deterministic completion used for underdetermined weight
    /// systems: it corresponds to augmenting the system with a standard
    /// basis row (right-hand side 1) for each missing coordinate, smallest
    /// indices first.
    pub fn completed(&self) -> Vec<BigRational> {
        let mut x = self.particular.clone();
        for basis in &self.nullspace {
            for (xi, bi) in x.iter_mut().zip(basis.iter()) {
                *xi += bi;
            }
        }
        x
    }
}

/// Outcome of solving a possibly rectangular affine system exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineOutcome {
    Inconsistent,
    Solvable(AffineSolution),
}

/// Solve `rows . x = rhs` exactly, reporting consistency and, when
/// consistent, a particular solution plus a homogeneous basis. The number of
/// rows may differ from the number of unknowns.
pub fn solve_affine_system(
    rows: &[Vec<BigInt>],
    rhs: &[BigRational],
) -> Result<AffineOutcome, ExactError> {
    if rows.is_empty() {
        return Err(ExactError::EmptyInput);
    }
    let n = rows[0].len();
    if rhs.len() != rows.len() {
        return Err(ExactError::DimensionMismatch {
            expected: rows.len(),
            got: rhs.len(),
        });
    }
    let mut mat: Vec<Vec<BigRational>> = Vec::with_capacity(rows.len());
    for (row, b) in rows.iter().zip(rhs.iter()) {
        if row.len() != n {
            return Err(ExactError::DimensionMismatch {
                expected: n,
                got: row.len(),
            });
        }
        let mut r: Vec<BigRational> = row
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        r.push(b.clone());
        mat.push(r);
    }
    let pivots = rref_bounded(&mut mat, n);
    // Inconsistent iff some zero row has a nonzero right-hand side.
    for row in mat.iter().skip(pivots.len()) {
        if !row[n].is_zero() {
            return Ok(AffineOutcome::Inconsistent);
        }
    }
    let free_columns: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut particular = vec![BigRational::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        particular[p] = mat[i][n].clone();
    }
    let mut nullspace = Vec::with_capacity(free_columns.len());
    for &fc in &free_columns {
        let mut v = vec![BigRational::zero(); n];
        v[fc] = BigRational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -mat[i][fc].clone();
        }
        nullspace.push(v);
    }
    Ok(AffineOutcome::Solvable(AffineSolution {
        particular,
        nullspace,
        free_columns,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ones(n: usize) -> Vec<BigRational> {
        vec![BigRational::one(); n]
    }

    fn rows_i64(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    /// Independent determinant oracle: recursive cofactor expansion.
    fn det_cofactor(m: &IntMatrix) -> BigInt {
        let n = m.rows();
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let minor_rows: Vec<Vec<BigInt>> = (1..n)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m.get(r, c).clone())
                        .collect()
                })
                .collect();
            let minor = IntMatrix::from_rows(minor_rows).unwrap();
            let term = m.get(0, j) * det_cofactor(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn det_identity() {
        assert_eq!(IntMatrix::identity(3).det().unwrap(), BigInt::one());
    }

    #[test]
    fn det_cyclic_two_by_two() {
        // exponent-difference matrix of the cyclic family a=(2,3), b=(1,1):
        // a1*a2 - b1*b2 = 5
        let m = IntMatrix::from_i64(&[vec![2, -1], vec![-1, 3]]);
        assert_eq!(m.det().unwrap(), BigInt::from(5));
    }

    #[test]
    fn det_needs_square() {
        let m = IntMatrix::from_i64(&[vec![1, 2, 3], vec![4, 5, 6]]);
        assert!(matches!(m.det(), Err(ExactError::NonSquare { .. })));
    }

    #[test]
    fn det_zero_pivot_column() {
        let m = IntMatrix::from_i64(&[vec![0, 1], vec![0, 2]]);
        assert_eq!(m.det().unwrap(), BigInt::zero());
    }

    #[test]
    fn det_matches_cofactor_oracle_frozen() {
        // fixed 4x4 with entries in [-5, 5]
        let m = IntMatrix::from_i64(&[
            vec![2, -1, 0, 3],
            vec![4, 5, -2, 1],
            vec![-3, 2, 2, -5],
            vec![0, 1, -4, 2],
        ]);
        let expected = det_cofactor(&m);
        assert_eq!(expected, BigInt::from(74));
        assert_eq!(m.det().unwrap(), expected);
    }

    #[test]
    fn solve_identity() {
        let a = IntMatrix::identity(2);
        let sol = solve_linear(&a, &ones(2)).unwrap();
        assert_eq!(sol, LinearSolution::Unique(ones(2)));
    }

    #[test]
    fn solve_polar_system_of_g2() {
        // N - M for f = z1^2*zbar2 + z2^3; back-substitution gives (2/3, 1/3)
        let a = IntMatrix::from_i64(&[vec![2, -1], vec![0, 3]]);
        let sol = solve_linear(&a, &ones(2)).unwrap();
        let expected = vec![
            BigRational::new(BigInt::from(2), BigInt::from(3)),
            BigRational::new(BigInt::from(1), BigInt::from(3)),
        ];
        assert_eq!(sol, LinearSolution::Unique(expected));
    }

    #[test]
    fn solve_singular_is_not_unique() {
        let a = IntMatrix::from_i64(&[vec![1, 1], vec![1, 1]]);
        assert_eq!(
            solve_linear(&a, &ones(2)).unwrap(),
            LinearSolution::NoUniqueSolution
        );
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = IntMatrix::identity(2);
        assert!(matches!(
            solve_linear(&a, &ones(3)),
            Err(ExactError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn affine_inconsistent_rows() {
        // every row (0,0): the polar system of phi_a = sum z_j^a zbar_j^a
        let rows = rows_i64(&[vec![0, 0], vec![0, 0]]);
        assert_eq!(
            solve_affine_system(&rows, &ones(2)).unwrap(),
            AffineOutcome::Inconsistent
        );
    }

    #[test]
    fn affine_underdetermined_radial_system() {
        // radial rows of k(z) = sum z_i^d (zbar_i + zbar_{i+1}) for d=2, n=2:
        // (3,0),(2,1),(0,3),(1,2) -> unique u = (1/3, 1/3)
        let rows = rows_i64(&[vec![3, 0], vec![2, 1], vec![0, 3], vec![1, 2]]);
        match solve_affine_system(&rows, &ones(4)).unwrap() {
            AffineOutcome::Solvable(sol) => {
                assert!(sol.is_unique());
                let third = BigRational::new(BigInt::from(1), BigInt::from(3));
                assert_eq!(sol.particular, vec![third.clone(), third]);
            }
            AffineOutcome::Inconsistent => panic!("system should be consistent"),
        }
    }

    #[test]
    fn affine_matches_solve_linear_on_full_rank_square() {
        let rows = rows_i64(&[vec![2, -1], vec![0, 3]]);
        let a = IntMatrix::from_rows(rows.clone()).unwrap();
        let unique = match solve_linear(&a, &ones(2)).unwrap() {
            LinearSolution::Unique(x) => x,
            _ => panic!("full rank"),
        };
        match solve_affine_system(&rows, &ones(2)).unwrap() {
            AffineOutcome::Solvable(sol) => {
                assert!(sol.is_unique());
                assert_eq!(sol.particular, unique);
            }
            AffineOutcome::Inconsistent => panic!(),
        }
    }

    #[test]
    fn affine_underdetermined_completion() {
        // x1 + x2 = 1 in two unknowns: free column 1, completion sets x2 = 1.
        let rows = rows_i64(&[vec![1, 1]]);
        match solve_affine_system(&rows, &ones(1)).unwrap() {
            AffineOutcome::Solvable(sol) => {
                assert_eq!(sol.free_columns, vec![1]);
                assert_eq!(sol.nullspace.len(), 1);
                let completed = sol.completed();
                assert_eq!(completed[0], BigRational::zero());
                assert_eq!(completed[1], BigRational::one());
            }
            AffineOutcome::Inconsistent => panic!(),
        }
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(proptest::collection::vec(-5i64..=5, n), n)
            .prop_map(|rows| IntMatrix::from_i64(&rows))
    }

    proptest! {
        #[test]
        fn det_matches_cofactor_oracle(m in arb_matrix(4)) {
            prop_assert_eq!(m.det().unwrap(), det_cofactor(&m));
        }

        #[test]
        fn det_is_multiplicative_2x2(a in arb_matrix(2), b in arb_matrix(2)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }

        #[test]
        fn det_is_multiplicative_3x3(a in arb_matrix(3), b in arb_matrix(3)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(ab.det().unwrap(), a.det().unwrap() * b.det().unwrap());
        }

        #[test]
        fn solve_residual_is_zero(a in arb_matrix(3), b in proptest::collection::vec(-9i64..=9, 3)) {
            let rhs: Vec<BigRational> =
                b.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect();
            if let LinearSolution::Unique(x) = solve_linear(&a, &rhs).unwrap() {
                for (i, want) in rhs.iter().enumerate() {
                    let mut acc = BigRational::zero();
                    for (j, xj) in x.iter().enumerate() {
                        acc += BigRational::from_integer(a.get(i, j).clone()) * xj;
                    }
                    prop_assert_eq!(&acc, want);
                }
            }
        }

        #[test]
        fn affine_particular_and_nullspace_are_exact(
            rows in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 1..5)
        ) {
            let rows = rows_i64(&rows);
            let rhs = ones(rows.len());
            if let AffineOutcome::Solvable(sol) = solve_affine_system(&rows, &rhs).unwrap() {
                // particular solves the system
                for (row, b) in rows.iter().zip(rhs.iter()) {
                    let mut acc = BigRational::zero();
                    for (aij, xj) in row.iter().zip(sol.particular.iter()) {
                        acc += BigRational::from_integer(aij.clone()) * xj;
                    }
                    prop_assert_eq!(&acc, b);
                }
                // nullspace vectors solve the homogeneous system
                for v in &sol.nullspace {
                    for row in rows.iter() {
                        let mut acc = BigRational::zero();
                        for (aij, xj) in row.iter().zip(v.iter()) {
                            acc += BigRational::from_integer(aij.clone()) * xj;
                        }
                        prop_assert!(acc.is_zero());
                    }
                }
            }
        }
    }
}
