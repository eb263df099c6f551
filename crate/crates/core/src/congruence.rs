//! Linear congruences on the torus: solve `A x ≡ b (mod Z^m)` for
//! `x ∈ (Q/Z)^n`.
//!
//! Strategy: with `U A V = D` in Smith normal form, substitute `y = V^{-1} x`
//! (a bijection of the torus, since `V` is unimodular) and multiply the
//! congruence by `U` (harmless, since `U Z^m = Z^m`).  The system becomes
//! diagonal: `d_i y_i ≡ c_i (mod 1)` with `c = U b`.
//!
//! * rows with `d_i != 0` contribute `d_i` choices `y_i = (c_i + k)/d_i`;
//! * rows with `d_i = 0` (and surplus rows when `m > n`) are pure
//!   solvability conditions `c_i ∈ Z` — if one fails the solution set is
//!   empty;
//! * columns with no pivot are free directions.
//!
//! Mapping back through `V` gives finitely many coset representatives plus
//! a direction lattice spanned by columns of `V`; those columns are part of
//! a unimodular matrix, so the lattice is automatically saturated.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mat::Matrix;
use crate::scalar::{mod1, Int, Rational};
use crate::snf::{hermite_normal_form, smith_normal_form, IntMatrix};

/// Solution set of a torus congruence: a finite union of parallel rational
/// affine subtori, given as coset representatives plus one shared
/// saturated direction lattice (HNF rows).
///
/// An empty `representatives` list means the congruence has no solutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSolution {
    /// One point per coset, entries in `[0, 1)`, sorted lexicographically.
    pub representatives: Vec<Vec<Rational>>,
    /// Rows span the lattice of free directions; saturated, in Hermite
    /// normal form.  Zero rows when the solution set is finite.
    pub directions: IntMatrix,
}

impl CongruenceSolution {
    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Dimension of each solution component.
    pub fn dim(&self) -> usize {
        self.directions.nrows()
    }
}

/// Solve `a x ≡ b (mod Z^m)` for `x` in the `n`-torus, `a` an `m x n`
/// integer matrix.
pub fn solve_congruence(a: &IntMatrix, b: &[Rational]) -> Result<CongruenceSolution> {
    let (m, n) = (a.nrows(), a.ncols());
    if b.len() != m {
        return Err(Error::shape(format!(
            "congruence right-hand side has length {}, expected {m}",
            b.len()
        )));
    }
    let snf = smith_normal_form(a);
    let c = snf.u.map(|x| Rational::from(x.clone())).mul_vec(b)?;

    // Solvability: every row without a nonzero pivot needs an integral
    // right-hand side.
    for (i, ci) in c.iter().enumerate() {
        let has_pivot = i < n && i < m && !snf.d[(i, i)].is_zero();
        if !has_pivot && !ci.is_integer() {
            return Ok(CongruenceSolution {
                representatives: Vec::new(),
                directions: IntMatrix::zeros(0, n),
            });
        }
    }

    // Bound coordinates: y_i = (c_i + k)/d_i for k = 0..d_i-1.
    let mut bound: Vec<(usize, Vec<Rational>)> = Vec::new();
    let mut free_cols: Vec<usize> = Vec::new();
    for j in 0..n {
        let pivot = if j < m { snf.d[(j, j)].clone() } else { Int::zero() };
        if pivot.is_zero() {
            free_cols.push(j);
        } else {
            let d = Rational::from(pivot.clone());
            let count = pivot
                .abs()
                .to_usize()
                .expect("pivot magnitudes stay small");
            let choices = (0..count)
                .map(|k| mod1(&((&c[j] + Rational::from(Int::from(k))) / &d)))
                .collect();
            bound.push((j, choices));
        }
    }

    // Enumerate every combination of bound choices (mixed-radix counter).
    let v_rat = snf.v.map(|x| Rational::from(x.clone()));
    let mut representatives = Vec::new();
    let mut counter = vec![0usize; bound.len()];
    loop {
        let mut y = vec![Rational::zero(); n];
        for (slot, &(j, ref choices)) in bound.iter().enumerate() {
            y[j] = choices[counter[slot]].clone();
        }
        let x = v_rat.mul_vec(&y)?;
        representatives.push(x.iter().map(mod1).collect::<Vec<_>>());
        // Advance the counter.
        let mut slot = 0;
        loop {
            if slot == bound.len() {
                break;
            }
            counter[slot] += 1;
            if counter[slot] < bound[slot].1.len() {
                break;
            }
            counter[slot] = 0;
            slot += 1;
        }
        if slot == bound.len() {
            break;
        }
    }
    representatives.sort();

    // Free directions: columns of V at the free indices, as lattice rows.
    let direction_rows: Vec<Vec<Int>> = free_cols.iter().map(|&j| snf.v.col(j)).collect();
    let directions = if direction_rows.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        hermite_normal_form(&Matrix::from_rows(direction_rows)?)
    };

    Ok(CongruenceSolution {
        representatives,
        directions,
    })
}
