//! Cohomological bookkeeping: Hodge numbers of threefolds built from an
//! elliptic-curve-times-K3 quotient, Hodge diamonds, orbifold Euler
//! characteristics of resolutions, and Betti numbers of torus quotients
//! via invariant forms.
//!
//! All quantities here are produced by formulas applied to computed
//! inputs (fixed-point counts, component censuses); nothing is entered
//! as a bare literal, and every derived table re-checks its own internal
//! consistency (nonnegativity, Poincare duality, Euler characteristic).

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{blades_of_degree, Blade};
use crate::torus::FiniteActionGroup;

/// Hodge numbers of the quotient threefold determined by the fixed-locus
/// data of the K3 involution: `a` components, total genus `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeData {
    pub a: i64,
    pub b: i64,
    pub h11: i64,
    pub h21: i64,
}

impl HodgeData {
    pub fn is_self_mirror(&self) -> bool {
        self.h11 == self.h21
    }
}

impl fmt::Display for HodgeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(a, b) = ({}, {}) => h11 = {}, h21 = {}",
            self.a, self.b, self.h11, self.h21
        )
    }
}

/// `h11 = 11 + 5a - b`, `h21 = 11 + 5b - a`; negative results are
/// rejected rather than clamped.
pub fn hodge_numbers(a: i64, b: i64) -> Result<HodgeData> {
    if a < 0 || b < 0 {
        return Err(Error::Config(format!(
            "component count and genus must be nonnegative, got ({a}, {b})"
        )));
    }
    let h11 = 11 + 5 * a - b;
    let h21 = 11 + 5 * b - a;
    if h11 < 0 || h21 < 0 {
        return Err(Error::NegativeHodge(format!(
            "(a, b) = ({a}, {b}) gives (h11, h21) = ({h11}, {h21})"
        )));
    }
    Ok(HodgeData { a, b, h11, h21 })
}

/// The full Hodge diamond of a threefold with `h00 = h30 = 1`,
/// `h10 = h20 = 0` and the given `(h11, h21)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeDiamond {
    pub rows: Vec<Vec<i64>>,
}

impl HodgeDiamond {
    /// Betti numbers `b_0 .. b_6`, each the sum of a diamond row.
    pub fn betti(&self) -> Vec<i64> {
        self.rows.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn euler(&self) -> i64 {
        self.betti()
            .iter()
            .enumerate()
            .map(|(k, b)| if k % 2 == 0 { *b } else { -*b })
            .sum()
    }
}

impl fmt::Display for HodgeDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .max()
            .unwrap_or(1);
        let max_len = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        for row in &self.rows {
            let pad = (max_len - row.len()) * (width + 1) / 2;
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}{}", " ".repeat(pad), cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn hodge_diamond(h: &HodgeData) -> HodgeDiamond {
    HodgeDiamond {
        rows: vec![
            vec![1],
            vec![0, 0],
            vec![0, h.h11, 0],
            vec![1, h.h21, h.h21, 1],
            vec![0, h.h11, 0],
            vec![0, 0],
            vec![1],
        ],
    }
}

/// Ingredients of the orbifold-resolution Euler count
/// `chi = (chi(total) - chi(fixed)) / order + sum(replacements)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionBookkeeping {
    pub label: String,
    pub total_euler: i64,
    pub fixed_euler: i64,
    pub identification_order: i64,
    pub replacement_eulers: Vec<i64>,
}

impl ResolutionBookkeeping {
    pub fn resolved_euler(&self) -> Result<i64> {
        if self.identification_order <= 0 {
            return Err(Error::Config(format!(
                "identification order must be positive, got {}",
                self.identification_order
            )));
        }
        let moved = self.total_euler - self.fixed_euler;
        if moved % self.identification_order != 0 {
            return Err(Error::NonIntegralEuler(format!(
                "{}: ({} - {}) is not divisible by {}",
                self.label, self.total_euler, self.fixed_euler, self.identification_order
            )));
        }
        Ok(moved / self.identification_order + self.replacement_eulers.iter().sum::<i64>())
    }
}

/// Degree-`k` blades invariant under every element of the group, for
/// groups whose linear parts are diagonal with entries `+-1`.  These are
/// exactly the constant forms descending to the quotient.
pub fn invariant_blades(group: &FiniteActionGroup, degree: usize) -> Result<Vec<Blade>> {
    let n = group.dim();
    let signs = diagonal_signs(group)?;
    Ok(blades_of_degree(n, degree)
        .into_iter()
        .filter(|blade| {
            signs.iter().all(|element_signs| {
                blade
                    .indices()
                    .iter()
                    .map(|&i| element_signs[i - 1])
                    .product::<i64>()
                    == 1
            })
        })
        .collect())
}

/// Betti vector `b_0 .. b_n` of the quotient, counted as group-invariant
/// constant forms in each degree.
pub fn betti_via_invariant_forms(group: &FiniteActionGroup) -> Result<Vec<usize>> {
    let n = group.dim();
    (0..=n)
        .map(|k| invariant_blades(group, k).map(|blades| blades.len()))
        .collect()
}

fn diagonal_signs(group: &FiniteActionGroup) -> Result<Vec<Vec<i64>>> {
    let n = group.dim();
    group
        .elements()
        .iter()
        .map(|g| {
            let linear = g.linear();
            let mut signs = Vec::with_capacity(n);
            for i in 0..n {
                for j in 0..n {
                    if i != j && !linear[(i, j)].is_zero() {
                        return Err(Error::TorusMap(format!(
                            "element '{}' has a non-diagonal linear part; invariant-form \
                             counting supports only diagonal sign actions",
                            g.name()
                        )));
                    }
                }
                let d = &linear[(i, i)];
                if d.is_one() {
                    signs.push(1);
                } else if (-d).is_one() {
                    signs.push(-1);
                } else {
                    return Err(Error::TorusMap(format!(
                        "element '{}' has diagonal entry {d}, expected +-1",
                        g.name()
                    )));
                }
            }
            Ok(signs)
        })
        .collect()
}

/// Betti vector after replacing `components` singular 3-torus loci by
/// their resolved models: each contributes the cohomology of an extra
/// 2-sphere class over the 3-torus, so `b_k += components * b_{k-2}(T^3)`.
/// The corrected vector must satisfy Poincare duality and have zero Euler
/// characteristic, both re-checked here.
pub fn resolution_betti_correction(base: &[usize], components: usize) -> Result<Vec<usize>> {
    if base.len() != 8 {
        return Err(Error::shape(format!(
            "expected Betti numbers b_0..b_7 of a 7-manifold, got length {}",
            base.len()
        )));
    }
    // b_k(T^3) computed, not quoted.
    let t3: Vec<usize> = (0..=3).map(|k| blades_of_degree(3, k).len()).collect();
    let corrected: Vec<usize> = base
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let extra = if (2..=5).contains(&k) {
                components * t3[k - 2]
            } else {
                0
            };
            b + extra
        })
        .collect();
    for k in 0..corrected.len() {
        if corrected[k] != corrected[corrected.len() - 1 - k] {
            return Err(Error::Verification(format!(
                "corrected Betti vector {corrected:?} breaks Poincare duality at degree {k}"
            )));
        }
    }
    let euler: i64 = corrected
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let b = *b as i64;
            if k % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .sum();
    if euler != 0 {
        return Err(Error::Verification(format!(
            "corrected Betti vector {corrected:?} has Euler characteristic {euler}, expected 0"
        )));
    }
    Ok(corrected)
}
