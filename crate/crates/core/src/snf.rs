//! Integer normal forms: Smith and Hermite.
//!
//! Smith normal form drives the congruence solver in
//! [`crate::congruence`]; Hermite normal form gives canonical bases for
//! direction lattices of affine subtori.  Sizes never exceed 8, so the
//! classic elementary-operation algorithms are used verbatim: pick the
//! minimal nonzero entry as pivot, clear its row and column with
//! floor-division steps (remainders shrink strictly, so this terminates),
//! then repair the divisibility chain.
//!
//! `smith_normal_form` returns `U * A * V = D` with `U`, `V` unimodular and
//! `D` diagonal with nonnegative entries `d1 | d2 | ...`.  The decomposition
//! is verified by multiplication in tests, never trusted.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mat::Matrix;
use crate::scalar::Int;

pub type IntMatrix = Matrix<Int>;

/// Result of `u * a * v = d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    /// The diagonal entries of `d` (length `min(m, n)`).
    pub fn elementary_divisors(&self) -> Vec<Int> {
        let k = self.d.nrows().min(self.d.ncols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Number of nonzero elementary divisors.
    pub fn rank(&self) -> usize {
        self.elementary_divisors()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

/// Position of a minimal-absolute-value nonzero entry in the submatrix
/// with both indices `>= t`.
fn min_abs_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.nrows() {
        for j in t..d.ncols() {
            if d[(i, j)].is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some(b) => {
                    if d[(i, j)].abs() < d[(b.0, b.1)].abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Bring `d` to diagonal form with row ops mirrored into `u` and column
/// ops mirrored into `v`.
fn diagonalize(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix) {
    let (m, n) = (d.nrows(), d.ncols());
    let mut t = 0usize;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_nonzero(d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);
        'reduce: loop {
            for i in t + 1..m {
                if !d[(i, t)].is_zero() {
                    let q = d[(i, t)].div_floor(&d[(t, t)]);
                    d.row_sub(i, t, &q);
                    u.row_sub(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        // Remainder is strictly smaller than the pivot;
                        // promote it and go again.
                        d.swap_rows(t, i);
                        u.swap_rows(t, i);
                        continue 'reduce;
                    }
                }
            }
            for j in t + 1..n {
                if !d[(t, j)].is_zero() {
                    let q = d[(t, j)].div_floor(&d[(t, t)]);
                    d.col_sub(j, t, &q);
                    v.col_sub(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        d.swap_cols(t, j);
                        v.swap_cols(t, j);
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        t += 1;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.nrows(), a.ncols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    diagonalize(&mut d, &mut u, &mut v);

    // Repair the divisibility chain d1 | d2 | ...: whenever it breaks,
    // fold the offending column back in and re-diagonalize.  Every repair
    // strictly reduces the product of pivot magnitudes, so this loop is
    // finite.
    let k = m.min(n);
    loop {
        let mut repaired = false;
        for i in 0..k.saturating_sub(1) {
            let a_i = d[(i, i)].clone();
            let b_i = d[(i + 1, i + 1)].clone();
            if !a_i.is_zero() && !b_i.is_zero() && !b_i.mod_floor(&a_i).is_zero() {
                // col i += col i+1, creating a (i+1, i) entry equal to b_i.
                let minus_one = -Int::one();
                d.col_sub(i, i + 1, &minus_one);
                v.col_sub(i, i + 1, &minus_one);
                diagonalize(&mut d, &mut u, &mut v);
                repaired = true;
                break;
            }
        }
        if !repaired {
            break;
        }
    }

    // Make diagonal entries nonnegative.
    for i in 0..k {
        if d[(i, i)].is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }

    SnfDecomposition { u, d, v }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of
/// `a`.  Returns only the nonzero rows (one per pivot), with positive
/// pivots and the entries above each pivot reduced into `[0, pivot)`.
/// This is the canonical basis used for subtorus direction lattices.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let (m, n) = (a.nrows(), a.ncols());
    let mut h = a.clone();
    let mut r = 0usize;
    for col in 0..n {
        if r >= m {
            break;
        }
        // Clear column `col` below row `r` by gcd steps.
        loop {
            let mut pivot: Option<usize> = None;
            for i in r..m {
                if h[(i, col)].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some(i),
                    Some(p) => {
                        if h[(i, col)].abs() < h[(p, col)].abs() {
                            pivot = Some(i);
                        }
                    }
                }
            }
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            let mut any_left = false;
            for i in r + 1..m {
                if !h[(i, col)].is_zero() {
                    let q = h[(i, col)].div_floor(&h[(r, col)]);
                    h.row_sub(i, r, &q);
                    if !h[(i, col)].is_zero() {
                        any_left = true;
                    }
                }
            }
            if !any_left {
                break;
            }
        }
        if h[(r, col)].is_zero() {
            continue;
        }
        if h[(r, col)].is_negative() {
            h.negate_row(r);
        }
        let pivot_val = h[(r, col)].clone();
        for i in 0..r {
            let q = h[(i, col)].div_floor(&pivot_val);
            if !q.is_zero() {
                h.row_sub(i, r, &q);
            }
        }
        r += 1;
    }
    // Keep the nonzero rows only.
    let rows: Vec<Vec<Int>> = (0..r).map(|i| h.row(i).to_vec()).collect();
    Matrix::from_rows(rows).expect("hermite rows are rectangular")
}

/// Inverse of a unimodular integer matrix, via the adjugate.  Errors if
/// the determinant is not a unit.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix> {
    if !m.is_square() {
        return Err(Error::shape("inverse of a non-square matrix"));
    }
    let n = m.nrows();
    let det = m.det()?;
    if det.abs() != Int::one() {
        return Err(Error::TorusMap(format!(
            "matrix is not unimodular (det = {det})"
        )));
    }
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let cof = m.minor_det(&rows, &cols)?;
            let signed = if (i + j) % 2 == 0 { cof } else { -cof };
            // Adjugate is the transposed cofactor matrix.
            adj[(j, i)] = signed;
        }
    }
    Ok(if det.is_one() { adj } else { adj.neg() })
}

/// Basis (as HNF rows) of the saturation of the lattice spanned by the
/// rows of `a`: the set of integer vectors lying in the rational row
/// span.  With `U A V = D` of rank `r`, the first `r` rows of `V^{-1}`
/// form a basis of the saturation.
pub fn saturate_rows(a: &IntMatrix) -> Result<IntMatrix> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let v_inv = unimodular_inverse(&snf.v)?;
    let rows: Vec<Vec<Int>> = (0..r).map(|i| v_inv.row(i).to_vec()).collect();
    let basis = Matrix::from_rows(rows)?;
    Ok(hermite_normal_form(&basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    /// Oracle: multiply the decomposition back together and check every
    /// structural invariant directly.
    fn assert_valid_snf(a: &IntMatrix, snf: &SnfDecomposition) {
        let uav = snf.u.mul(a).unwrap().mul(&snf.v).unwrap();
        assert_eq!(uav, snf.d, "U*A*V != D");
        assert_eq!(snf.u.det().unwrap().abs(), Int::one(), "U not unimodular");
        assert_eq!(snf.v.det().unwrap().abs(), Int::one(), "V not unimodular");
        for i in 0..snf.d.nrows() {
            for j in 0..snf.d.ncols() {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero(), "off-diagonal entry in D");
                }
            }
        }
        let divs = snf.elementary_divisors();
        for d in &divs {
            assert!(!d.is_negative(), "negative elementary divisor");
        }
        for w in divs.windows(2) {
            if !w[0].is_zero() && !w[1].is_zero() {
                assert!(
                    w[1].mod_floor(&w[0]).is_zero(),
                    "divisibility chain broken: {} !| {}",
                    w[0],
                    w[1]
                );
            }
            if w[0].is_zero() {
                assert!(w[1].is_zero(), "nonzero divisor after a zero one");
            }
        }
    }

    #[test]
    fn snf_of_diag_2_3_is_diag_1_6() {
        let a = int_matrix(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&a);
        assert_valid_snf(&a, &snf);
        assert_eq!(
            snf.elementary_divisors(),
            vec![Int::from(1), Int::from(6)]
        );
    }

    #[test]
    fn snf_of_zero_and_identity() {
        let z = IntMatrix::zeros(3, 2);
        let snf = smith_normal_form(&z);
        assert_valid_snf(&z, &snf);
        assert_eq!(snf.rank(), 0);

        let i = IntMatrix::identity(4);
        let snf = smith_normal_form(&i);
        assert_valid_snf(&i, &snf);
        assert_eq!(snf.rank(), 4);
        assert!(snf.elementary_divisors().iter().all(|d| d.is_one()));
    }

    #[test]
    fn snf_of_rank_deficient_and_rectangular() {
        for a in [
            int_matrix(&[&[2, 4], &[1, 2]]),
            int_matrix(&[&[1, 2, 3], &[4, 5, 6]]),
            int_matrix(&[&[6, 10], &[15, 4], &[0, 9]]),
            int_matrix(&[&[-2, 0], &[0, -2]]),
            int_matrix(&[&[0, 7], &[-3, 0]]),
        ] {
            let snf = smith_normal_form(&a);
            assert_valid_snf(&a, &snf);
        }
    }

    #[test]
    fn snf_divisors_for_minus_2_identity() {
        // Fixed-point equation of an involution x -> -x on T^2.
        let a = int_matrix(&[&[-2, 0], &[0, -2]]);
        let snf = smith_normal_form(&a);
        assert_eq!(
            snf.elementary_divisors(),
            vec![Int::from(2), Int::from(2)]
        );
    }

    #[test]
    fn hermite_form_is_canonical_for_equal_lattices() {
        // Two generating sets of the same lattice.
        let a = int_matrix(&[&[2, 1], &[0, 3]]);
        let b = int_matrix(&[&[2, 4], &[2, 1], &[4, 2]]);
        assert_eq!(hermite_normal_form(&a), hermite_normal_form(&b));
    }

    #[test]
    fn hermite_pivots_positive_and_reduced() {
        // By hand: the lattice is {(-3a, 6a, 2a + 5b)}.  Pivot column 1
        // forces first row (3, -6, -2 + 5Z); reducing the third entry into
        // [0, 5) gives (3, -6, 3).  Rows with zero first coordinate are
        // the multiples of (0, 0, 5).
        let a = int_matrix(&[&[-3, 6, 2], &[0, 0, 5]]);
        let h = hermite_normal_form(&a);
        assert_eq!(h, int_matrix(&[&[3, -6, 3], &[0, 0, 5]]));
    }

    #[test]
    fn unimodular_inverse_round_trips() {
        let m = int_matrix(&[&[2, 1], &[1, 1]]);
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(2));
        assert_eq!(inv.mul(&m).unwrap(), IntMatrix::identity(2));
        assert!(unimodular_inverse(&int_matrix(&[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn saturation_of_doubled_row_is_primitive() {
        let a = int_matrix(&[&[2, 4]]);
        let sat = saturate_rows(&a).unwrap();
        assert_eq!(sat, int_matrix(&[&[1, 2]]));
    }

    #[test]
    fn saturation_of_primitive_but_skew_lattice() {
        // span{(2,1)} is already saturated despite its pivot being 2.
        let a = int_matrix(&[&[2, 1]]);
        let sat = saturate_rows(&a).unwrap();
        assert_eq!(sat, int_matrix(&[&[2, 1]]));
    }

    #[test]
    fn saturation_in_higher_rank() {
        let a = int_matrix(&[&[2, 0, 2], &[0, 3, 3]]);
        let sat = saturate_rows(&a).unwrap();
        // Rational row span is {(x, y, x + y)}; integer points in it are
        // spanned by (1,0,1) and (0,1,1).
        assert_eq!(sat, int_matrix(&[&[1, 0, 1], &[0, 1, 1]]));
    }
}
