//! Affine automorphisms of the torus `T^n = R^n / Z^n`, finite groups of
//! them, and their fixed-point loci as exact affine subtori.
//!
//! A map is a pair `(L, s)` acting by `x -> L x + s (mod Z^n)` with `L`
//! an integer matrix of determinant `+-1` and `s` rational.  The
//! composition convention is `(g.compose(h))(x) = g(h(x))` everywhere.
//!
//! Fixed loci are computed by solving the congruence
//! `(L - I) x ≡ -s (mod Z^n)` with the Smith-normal-form solver, which
//! yields finitely many components, each an [`AffineSubtorus`]: a
//! basepoint plus a saturated integer direction lattice.  Subtori are
//! kept in a canonical form (Hermite-normal-form directions, basepoint
//! zeroed on pivot coordinates and lexicographically minimal among the
//! finitely many residual translates), so equality is plain structural
//! equality and censuses are stable.
//!
//! A brute-force grid oracle ([`grid_fixed_oracle`]) re-derives fixed
//! points by scanning every point of the `1/D` coordinate grid and
//! comparing against component membership; the solver never gets to
//! grade its own work.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::congruence::solve_congruence;
use crate::error::{Error, Result};
use crate::mat::Matrix;
use crate::scalar::{mod1, Int, Rational};
use crate::snf::{saturate_rows, unimodular_inverse};
use crate::{IntMatrix, RationalMatrix};

/// Hard cap on generated group size; generation failing this cap reports
/// [`Error::GroupTooLarge`] instead of running away.
pub const GROUP_SIZE_CAP: usize = 1024;

/// Hard cap on the number of points a grid oracle scan may visit.
pub const GRID_POINT_CAP: usize = 1 << 21;

/// An affine automorphism `x -> linear x + shift` of `T^n`.
///
/// Equality and hashing ignore the name: two maps are the same
/// automorphism exactly when their linear parts and reduced shifts agree.
#[derive(Clone, Debug)]
pub struct AffineTorusMap {
    name: String,
    linear: IntMatrix,
    shift: Vec<Rational>,
}

impl PartialEq for AffineTorusMap {
    fn eq(&self, other: &Self) -> bool {
        self.linear == other.linear && self.shift == other.shift
    }
}

impl Eq for AffineTorusMap {}

impl std::hash::Hash for AffineTorusMap {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.linear.hash(state);
        self.shift.hash(state);
    }
}

impl AffineTorusMap {
    pub fn new(name: impl Into<String>, linear: IntMatrix, shift: Vec<Rational>) -> Result<Self> {
        if !linear.is_square() {
            return Err(Error::shape("linear part must be square"));
        }
        if linear.nrows() != shift.len() {
            return Err(Error::shape(format!(
                "linear part is {}x{} but shift has length {}",
                linear.nrows(),
                linear.ncols(),
                shift.len()
            )));
        }
        if linear.det()?.abs() != Int::one() {
            return Err(Error::TorusMap(format!(
                "linear part of '{}' is not invertible over Z (det = {})",
                name.into(),
                linear.det()?
            )));
        }
        Ok(AffineTorusMap {
            name: name.into(),
            linear,
            shift: shift.iter().map(mod1).collect(),
        })
    }

    /// Diagonal map from a sign pattern, the common case for reflection
    /// groups.
    pub fn diagonal(name: impl Into<String>, signs: &[i64], shift: Vec<Rational>) -> Result<Self> {
        if signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::TorusMap(
                "diagonal entries must be +1 or -1".to_string(),
            ));
        }
        let linear = IntMatrix::diagonal(&signs.iter().map(|&s| Int::from(s)).collect::<Vec<_>>());
        Self::new(name, linear, shift)
    }

    pub fn identity(n: usize) -> Self {
        AffineTorusMap {
            name: "identity".to_string(),
            linear: IntMatrix::identity(n),
            shift: vec![Rational::zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.nrows()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn linear(&self) -> &IntMatrix {
        &self.linear
    }

    pub fn shift(&self) -> &[Rational] {
        &self.shift
    }

    /// The linear part as a rational matrix (for pulling differential
    /// forms back along the map).
    pub fn linear_rational(&self) -> RationalMatrix {
        self.linear.map(|x| Rational::from(x.clone()))
    }

    pub fn is_identity(&self) -> bool {
        self.linear == IntMatrix::identity(self.dim()) && self.shift.iter().all(Zero::is_zero)
    }

    /// Apply to a point of the torus; the result is reduced into
    /// `[0, 1)^n`.
    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let lx = self.linear_rational().mul_vec(x)?;
        Ok(lx
            .iter()
            .zip(&self.shift)
            .map(|(a, s)| mod1(&(a + s)))
            .collect())
    }

    /// `self.compose(h)` is the map `x -> self(h(x))`.
    pub fn compose(&self, h: &Self) -> Result<Self> {
        let linear = self.linear.mul(&h.linear)?;
        let moved = self.linear_rational().mul_vec(&h.shift)?;
        let shift = moved
            .iter()
            .zip(&self.shift)
            .map(|(a, s)| mod1(&(a + s)))
            .collect();
        let name = if self.is_identity() {
            h.name.clone()
        } else if h.is_identity() {
            self.name.clone()
        } else {
            format!("{}*{}", self.name, h.name)
        };
        Ok(AffineTorusMap {
            name,
            linear,
            shift,
        })
    }

    pub fn inverse(&self) -> Result<Self> {
        let inv = unimodular_inverse(&self.linear)?;
        let moved = inv.map(|x| Rational::from(x.clone())).mul_vec(&self.shift)?;
        let shift = moved.iter().map(|a| mod1(&-a)).collect();
        let name = if self.is_identity() {
            self.name.clone()
        } else {
            format!("{}^-1", self.name)
        };
        Ok(AffineTorusMap {
            name,
            linear: inv,
            shift,
        })
    }

    /// Smallest `k >= 1` with `g^k = identity`; errors past the group
    /// cap.
    pub fn element_order(&self) -> Result<usize> {
        let mut power = self.clone();
        for k in 1..=GROUP_SIZE_CAP {
            if power.is_identity() {
                return Ok(k);
            }
            power = self.compose(&power)?;
        }
        Err(Error::GroupTooLarge {
            cap: GROUP_SIZE_CAP,
        })
    }
}

impl fmt::Display for AffineTorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: x -> Lx + s, s = (", self.name)?;
        for (i, s) in self.shift.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// A coset of a subtorus: `basepoint + span_R(directions) (mod Z^n)`,
/// with the direction lattice saturated so the set is closed.
///
/// Always stored in canonical form, so `==` decides geometric equality.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineSubtorus {
    basepoint: Vec<Rational>,
    directions: IntMatrix,
}

impl AffineSubtorus {
    /// Build from any basepoint and any spanning set of integer
    /// directions; the result is saturated and canonicalized.
    pub fn new(basepoint: Vec<Rational>, directions: IntMatrix) -> Result<Self> {
        let n = basepoint.len();
        if directions.ncols() != n && directions.nrows() != 0 {
            return Err(Error::shape(format!(
                "directions have {} columns, expected {n}",
                directions.ncols()
            )));
        }
        let directions = if directions.nrows() == 0 || directions.is_zero() {
            IntMatrix::zeros(0, n)
        } else {
            saturate_rows(&directions)?
        };
        let basepoint = canonical_basepoint(&basepoint, &directions)?;
        Ok(AffineSubtorus {
            basepoint,
            directions,
        })
    }

    /// A single point (a 0-dimensional subtorus).
    pub fn point(basepoint: Vec<Rational>) -> Result<Self> {
        let n = basepoint.len();
        Self::new(basepoint, IntMatrix::zeros(0, n))
    }

    pub fn ambient_dim(&self) -> usize {
        self.basepoint.len()
    }

    pub fn dim(&self) -> usize {
        self.directions.nrows()
    }

    pub fn basepoint(&self) -> &[Rational] {
        &self.basepoint
    }

    /// Saturated direction lattice, rows in Hermite normal form.
    pub fn directions(&self) -> &IntMatrix {
        &self.directions
    }

    /// When the direction lattice is spanned by coordinate axes, the
    /// sorted 1-based axis indices; `None` for skew lattices.
    pub fn axis_directions(&self) -> Option<Vec<usize>> {
        let mut axes = Vec::new();
        for i in 0..self.directions.nrows() {
            let row = self.directions.row(i);
            let mut axis = None;
            for (j, v) in row.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                if axis.is_some() || !v.is_one() {
                    return None;
                }
                axis = Some(j + 1);
            }
            axes.push(axis?);
        }
        axes.sort_unstable();
        Some(axes)
    }

    /// Saturated basis of the integer covectors vanishing on the
    /// direction lattice.  A point lies on the subtorus iff every one of
    /// these pairs integrally with (point - basepoint).
    pub fn annihilator(&self) -> Result<IntMatrix> {
        annihilator_of(&self.directions, self.ambient_dim())
    }

    pub fn contains_point(&self, q: &[Rational]) -> Result<bool> {
        if q.len() != self.ambient_dim() {
            return Err(Error::shape("point dimension mismatch"));
        }
        let ann = self.annihilator()?;
        for i in 0..ann.nrows() {
            let mut acc = Rational::zero();
            for j in 0..q.len() {
                let a = Rational::from(ann[(i, j)].clone());
                acc += a * (q[j].clone() - self.basepoint[j].clone());
            }
            if !acc.is_integer() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for AffineSubtorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.basepoint.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")?;
        if self.dim() > 0 {
            match self.axis_directions() {
                Some(axes) => {
                    let labels: Vec<String> = axes.iter().map(|a| format!("e{a}")).collect();
                    write!(f, " + span({})", labels.join(", "))?;
                }
                None => {
                    let rows: Vec<String> = (0..self.directions.nrows())
                        .map(|i| {
                            let entries: Vec<String> = self
                                .directions
                                .row(i)
                                .iter()
                                .map(|v| v.to_string())
                                .collect();
                            format!("({})", entries.join(", "))
                        })
                        .collect();
                    write!(f, " + span({})", rows.join(", "))?;
                }
            }
        }
        Ok(())
    }
}

fn annihilator_of(directions: &IntMatrix, n: usize) -> Result<IntMatrix> {
    if directions.nrows() == 0 {
        return Ok(IntMatrix::identity(n));
    }
    let rational = directions.map(|x| Rational::from(x.clone()));
    let kernel = crate::mat::rational_kernel_basis(&rational);
    if kernel.is_empty() {
        return Ok(IntMatrix::zeros(0, n));
    }
    let rows: Vec<Vec<Int>> = kernel
        .iter()
        .map(|v| {
            let lcm = crate::scalar::denominator_lcm(v.iter());
            let lcm_rat = Rational::from(lcm);
            v.iter()
                .map(|x| {
                    let scaled = x * &lcm_rat;
                    debug_assert!(scaled.is_integer());
                    scaled.to_integer()
                })
                .collect()
        })
        .collect();
    saturate_rows(&Matrix::from_rows(rows)?)
}

/// Canonical basepoint for a coset of the (already canonical) direction
/// lattice: zero out the pivot coordinates with real direction moves,
/// reduce mod 1, then take the lexicographic minimum over the finite
/// residual group of translations that preserve that normal form.
fn canonical_basepoint(basepoint: &[Rational], directions: &IntMatrix) -> Result<Vec<Rational>> {
    let n = basepoint.len();
    let k = directions.nrows();
    let mut p: Vec<Rational> = basepoint.to_vec();
    if k == 0 {
        return Ok(p.iter().map(mod1).collect());
    }
    let pivots = pivot_columns(directions);

    // Zeroing pass: rows are in echelon order, and each row has zeros to
    // the left of its pivot, so earlier pivots stay zero.
    for (i, &col) in pivots.iter().enumerate() {
        let d = Rational::from(directions[(i, col)].clone());
        let t = p[col].clone() / d;
        for j in 0..n {
            p[j] -= t.clone() * Rational::from(directions[(i, j)].clone());
        }
    }
    let p: Vec<Rational> = p.iter().map(mod1).collect();

    // Residual translations: direction combinations that keep every pivot
    // coordinate integral.  Writing the pivot coordinates of D^T c as
    // P c (P lower triangular with the pivots on the diagonal), these are
    // c = P^{-1} m for integer m, and the box prod [0, d_i) of m values
    // covers each residual coset exactly once.
    let radices: Vec<usize> = pivots
        .iter()
        .enumerate()
        .map(|(i, &col)| {
            directions[(i, col)]
                .to_usize()
                .expect("hermite pivots are small positive integers")
        })
        .collect();
    let mut best: Option<Vec<Rational>> = None;
    let mut m = vec![0usize; k];
    loop {
        // Forward-substitute P c = m.
        let mut c = vec![Rational::zero(); k];
        for i in 0..k {
            let mut rhs = Rational::from(Int::from(m[i] as i64));
            for (l, cl) in c.iter().enumerate().take(i) {
                rhs -= Rational::from(directions[(l, pivots[i])].clone()) * cl.clone();
            }
            c[i] = rhs / Rational::from(directions[(i, pivots[i])].clone());
        }
        let candidate: Vec<Rational> = (0..n)
            .map(|j| {
                let mut x = p[j].clone();
                for (l, cl) in c.iter().enumerate() {
                    x += cl.clone() * Rational::from(directions[(l, j)].clone());
                }
                mod1(&x)
            })
            .collect();
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
        // Mixed-radix advance.
        let mut slot = 0;
        loop {
            if slot == k {
                break;
            }
            m[slot] += 1;
            if m[slot] < radices[slot] {
                break;
            }
            m[slot] = 0;
            slot += 1;
        }
        if slot == k {
            break;
        }
    }
    Ok(best.expect("at least one residual candidate"))
}

fn pivot_columns(h: &IntMatrix) -> Vec<usize> {
    (0..h.nrows())
        .map(|i| {
            (0..h.ncols())
                .find(|&j| !h[(i, j)].is_zero())
                .expect("hermite rows are nonzero")
        })
        .collect()
}

/// All components of `Fix(g)`, canonical and sorted; empty means the
/// action is free.
pub fn fixed_set(g: &AffineTorusMap) -> Result<Vec<AffineSubtorus>> {
    let n = g.dim();
    let a = g.linear.sub(&IntMatrix::identity(n))?;
    let b: Vec<Rational> = g.shift.iter().map(|s| -s.clone()).collect();
    let solution = solve_congruence(&a, &b)?;
    let mut components = Vec::with_capacity(solution.representatives.len());
    for rep in &solution.representatives {
        components.push(AffineSubtorus::new(rep.clone(), solution.directions.clone())?);
    }
    components.sort();
    components.dedup();
    Ok(components)
}

/// True when the two subtori have empty intersection, decided by the
/// combined annihilator congruence system.
pub fn are_disjoint(s: &AffineSubtorus, t: &AffineSubtorus) -> Result<bool> {
    let n = s.ambient_dim();
    if t.ambient_dim() != n {
        return Err(Error::shape("subtori live in different dimensions"));
    }
    let ann_s = s.annihilator()?;
    let ann_t = t.annihilator()?;
    let mut rows: Vec<Vec<Int>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for (ann, base) in [(&ann_s, s.basepoint()), (&ann_t, t.basepoint())] {
        for i in 0..ann.nrows() {
            rows.push(ann.row(i).to_vec());
            let mut acc = Rational::zero();
            for j in 0..n {
                acc += Rational::from(ann[(i, j)].clone()) * base[j].clone();
            }
            rhs.push(acc);
        }
    }
    if rows.is_empty() {
        // Both subtori are the whole torus.
        return Ok(false);
    }
    let system = Matrix::from_rows(rows)?;
    Ok(solve_congruence(&system, &rhs)?.is_empty())
}

/// Image of a subtorus under an affine map, in canonical form.
pub fn act_on_subtorus(g: &AffineTorusMap, s: &AffineSubtorus) -> Result<AffineSubtorus> {
    if g.dim() != s.ambient_dim() {
        return Err(Error::shape("map and subtorus dimension mismatch"));
    }
    let basepoint = g.apply(s.basepoint())?;
    let directions = s.directions.mul(&g.linear.transpose())?;
    AffineSubtorus::new(basepoint, directions)
}

/// A finite group of affine torus maps, closed under composition, with
/// breadth-first product names ("identity", "alpha", "alpha*beta", ...).
#[derive(Clone, Debug)]
pub struct FiniteActionGroup {
    elements: Vec<AffineTorusMap>,
    generators: Vec<String>,
}

impl FiniteActionGroup {
    /// Breadth-first closure of the generators, capped at
    /// [`GROUP_SIZE_CAP`] elements.
    pub fn generate(generators: Vec<AffineTorusMap>) -> Result<Self> {
        Self::generate_with_cap(generators, GROUP_SIZE_CAP)
    }

    pub fn generate_with_cap(generators: Vec<AffineTorusMap>, cap: usize) -> Result<Self> {
        let n = match generators.first() {
            Some(g) => g.dim(),
            None => {
                return Err(Error::TorusMap(
                    "cannot generate a group from no generators".to_string(),
                ))
            }
        };
        if generators.iter().any(|g| g.dim() != n) {
            return Err(Error::shape("generators act on different tori"));
        }
        let generator_names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        let mut elements = vec![AffineTorusMap::identity(n)];
        let mut seen: HashMap<AffineTorusMap, usize> = HashMap::new();
        seen.insert(elements[0].clone(), 0);
        let mut frontier = 0usize;
        while frontier < elements.len() {
            let current = elements[frontier].clone();
            frontier += 1;
            for g in &generators {
                let product = current.compose(g)?;
                if !seen.contains_key(&product) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    seen.insert(product.clone(), elements.len());
                    elements.push(product);
                }
            }
        }
        Ok(FiniteActionGroup {
            elements,
            generators: generator_names,
        })
    }

    pub fn trivial(n: usize) -> Self {
        FiniteActionGroup {
            elements: vec![AffineTorusMap::identity(n)],
            generators: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in discovery order; the identity is always first.
    pub fn elements(&self) -> &[AffineTorusMap] {
        &self.elements
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn non_identity_elements(&self) -> impl Iterator<Item = &AffineTorusMap> {
        self.elements.iter().filter(|g| !g.is_identity())
    }

    pub fn element_by_name(&self, name: &str) -> Result<&AffineTorusMap> {
        self.elements
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn is_abelian(&self) -> Result<bool> {
        for a in &self.elements {
            for b in &self.elements {
                if a.compose(b)? != b.compose(a)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The subgroup fixing the coordinate slice `{x_i = c_i}` pointwise in
    /// the sliced coordinates (1-based indices), restricted to the
    /// remaining coordinates.  An element qualifies when each sliced
    /// coordinate is carried by an identity row with zero shift; the
    /// slice values only feed constants into the remaining shifts.
    pub fn restrict_to_slice(&self, fixed: &[(usize, Rational)]) -> Result<FiniteActionGroup> {
        let n = self.dim();
        let mut is_fixed = vec![false; n];
        for &(coord, _) in fixed {
            if coord == 0 || coord > n {
                return Err(Error::shape(format!(
                    "slice coordinate {coord} out of range 1..={n}"
                )));
            }
            if is_fixed[coord - 1] {
                return Err(Error::shape(format!("slice coordinate {coord} repeated")));
            }
            is_fixed[coord - 1] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&j| !is_fixed[j]).collect();
        let mut restricted: Vec<AffineTorusMap> = Vec::new();
        for g in &self.elements {
            let stabilizes = fixed.iter().all(|&(coord, _)| {
                let i = coord - 1;
                g.shift[i].is_zero()
                    && (0..n).all(|j| {
                        if j == i {
                            g.linear[(i, j)].is_one()
                        } else {
                            g.linear[(i, j)].is_zero()
                        }
                    })
            });
            if !stabilizes {
                continue;
            }
            let linear = IntMatrix::from_fn(free.len(), free.len(), |r, c| {
                g.linear[(free[r], free[c])].clone()
            });
            let shift: Vec<Rational> = free
                .iter()
                .map(|&r| {
                    let mut s = g.shift[r].clone();
                    for &(coord, ref value) in fixed {
                        s += Rational::from(g.linear[(r, coord - 1)].clone()) * value.clone();
                    }
                    mod1(&s)
                })
                .collect();
            let induced = AffineTorusMap::new(g.name.clone(), linear, shift)?;
            if !restricted.contains(&induced) {
                restricted.push(induced);
            }
        }
        let generators = restricted
            .iter()
            .filter(|g| !g.is_identity())
            .filter(|g| self.generators.contains(&g.name))
            .map(|g| g.name.clone())
            .collect();
        Ok(FiniteActionGroup {
            elements: restricted,
            generators,
        })
    }

    /// Project every element to a coordinate block (1-based indices).
    /// Requires each element's rows at those coordinates to involve only
    /// those coordinates, so the projection is a group homomorphism.
    pub fn project_to_coords(&self, coords: &[usize]) -> Result<FiniteActionGroup> {
        let n = self.dim();
        for &c in coords {
            if c == 0 || c > n {
                return Err(Error::shape(format!(
                    "projection coordinate {c} out of range 1..={n}"
                )));
            }
        }
        let keep: Vec<usize> = coords.iter().map(|&c| c - 1).collect();
        let mut projected: Vec<AffineTorusMap> = Vec::new();
        for g in &self.elements {
            for &r in &keep {
                for j in 0..n {
                    if !keep.contains(&j) && !g.linear[(r, j)].is_zero() {
                        return Err(Error::TorusMap(format!(
                            "element '{}' mixes coordinate {} into the projection block",
                            g.name,
                            j + 1
                        )));
                    }
                }
            }
            let linear =
                IntMatrix::from_fn(keep.len(), keep.len(), |r, c| g.linear[(keep[r], keep[c])].clone());
            let shift: Vec<Rational> = keep.iter().map(|&r| g.shift[r].clone()).collect();
            let induced = AffineTorusMap::new(g.name.clone(), linear, shift)?;
            if !projected.contains(&induced) {
                projected.push(induced);
            }
        }
        let generators = projected
            .iter()
            .filter(|g| !g.is_identity())
            .filter(|g| self.generators.contains(&g.name))
            .map(|g| g.name.clone())
            .collect();
        Ok(FiniteActionGroup {
            elements: projected,
            generators,
        })
    }
}

/// Partition of a component list into group orbits; indices refer to the
/// input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCensus {
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitCensus {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

/// Group the components into orbits under the action.  Errors if any
/// image fails to appear in the list (the action must preserve it).
pub fn orbit_census(
    group: &FiniteActionGroup,
    components: &[AffineSubtorus],
) -> Result<OrbitCensus> {
    let index: HashMap<&AffineSubtorus, usize> = components
        .iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut parent: Vec<usize> = (0..components.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for (i, s) in components.iter().enumerate() {
        for g in group.elements() {
            let image = act_on_subtorus(g, s)?;
            let Some(&j) = index.get(&image) else {
                return Err(Error::TorusMap(format!(
                    "action does not preserve the component list: {} maps {s} to {image}",
                    g.name()
                )));
            };
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[rj] = ri;
            }
        }
    }
    let mut buckets: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..components.len() {
        let root = find(&mut parent, i);
        buckets.entry(root).or_default().push(i);
    }
    let mut orbits: Vec<Vec<usize>> = buckets.into_values().collect();
    for orbit in &mut orbits {
        orbit.sort_unstable();
    }
    orbits.sort();
    Ok(OrbitCensus { orbits })
}

/// Outcome of a brute-force grid scan: for every point of the `1/D`
/// grid, "g fixes the point" must agree with "some component contains
/// the point".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridOracleReport {
    pub denominator: u32,
    pub points_scanned: usize,
    pub fixed_points: usize,
    pub agree: bool,
    /// First disagreeing point, if any.
    pub witness: Option<String>,
}

/// Compare `Fix(g)` against a component list on the full `1/D` grid.
/// Uses machine integers modulo `D` when every shift and basepoint lives
/// on the grid, exact rationals otherwise.
pub fn grid_fixed_oracle(
    g: &AffineTorusMap,
    components: &[AffineSubtorus],
    denominator: u32,
) -> Result<GridOracleReport> {
    if denominator < 2 {
        return Err(Error::Config(format!(
            "grid denominator must be at least 2, got {denominator}"
        )));
    }
    let n = g.dim();
    let total = (denominator as usize)
        .checked_pow(n as u32)
        .filter(|&t| t <= GRID_POINT_CAP)
        .ok_or_else(|| {
            Error::Config(format!(
                "grid of {denominator}^{n} points exceeds the scan cap of {GRID_POINT_CAP}"
            ))
        })?;
    for s in components {
        if s.ambient_dim() != n {
            return Err(Error::shape("component dimension mismatch"));
        }
    }
    match integer_grid_data(g, components, denominator) {
        Some(data) => integer_grid_scan(&data, denominator, n, total),
        None => rational_grid_scan(g, components, denominator, n, total),
    }
}

struct IntegerGridData {
    linear: Vec<Vec<i64>>,
    shift_scaled: Vec<i64>,
    // Per component: annihilator rows and scaled basepoint.
    components: Vec<(Vec<Vec<i64>>, Vec<i64>)>,
}

fn integer_grid_data(
    g: &AffineTorusMap,
    components: &[AffineSubtorus],
    denominator: u32,
) -> Option<IntegerGridData> {
    let d = Rational::from(Int::from(denominator as i64));
    let scale = |x: &Rational| -> Option<i64> {
        let scaled = x * &d;
        if scaled.is_integer() {
            scaled.to_integer().to_i64()
        } else {
            None
        }
    };
    let linear: Option<Vec<Vec<i64>>> = (0..g.dim())
        .map(|i| g.linear().row(i).iter().map(|x| x.to_i64()).collect())
        .collect();
    let shift_scaled: Option<Vec<i64>> = g.shift().iter().map(scale).collect();
    let mut comps = Vec::with_capacity(components.len());
    for s in components {
        let ann = s.annihilator().ok()?;
        let rows: Option<Vec<Vec<i64>>> = (0..ann.nrows())
            .map(|i| ann.row(i).iter().map(|x| x.to_i64()).collect())
            .collect();
        let base: Option<Vec<i64>> = s.basepoint().iter().map(scale).collect();
        comps.push((rows?, base?));
    }
    Some(IntegerGridData {
        linear: linear?,
        shift_scaled: shift_scaled?,
        components: comps,
    })
}

fn integer_grid_scan(
    data: &IntegerGridData,
    denominator: u32,
    n: usize,
    total: usize,
) -> Result<GridOracleReport> {
    let d = denominator as i64;
    let mut point = vec![0i64; n];
    let mut fixed_points = 0usize;
    let mut witness = None;
    for _ in 0..total {
        // Point coordinates are point[j] / d.
        let fixed = (0..n).all(|i| {
            let mut acc = data.shift_scaled[i] - point[i];
            for j in 0..n {
                acc += data.linear[i][j] * point[j];
            }
            acc.rem_euclid(d) == 0
        });
        let member = data.components.iter().any(|(rows, base)| {
            rows.iter().all(|row| {
                let mut acc = 0i64;
                for j in 0..n {
                    acc += row[j] * (point[j] - base[j]);
                }
                acc.rem_euclid(d) == 0
            })
        });
        if fixed {
            fixed_points += 1;
        }
        if fixed != member && witness.is_none() {
            let coords: Vec<String> = point.iter().map(|&m| format!("{m}/{d}")).collect();
            witness = Some(format!(
                "({}) fixed={fixed} member={member}",
                coords.join(", ")
            ));
        }
        // Advance mixed-radix.
        for slot in 0..n {
            point[slot] += 1;
            if point[slot] < d {
                break;
            }
            point[slot] = 0;
        }
    }
    Ok(GridOracleReport {
        denominator,
        points_scanned: total,
        fixed_points,
        agree: witness.is_none(),
        witness,
    })
}

fn rational_grid_scan(
    g: &AffineTorusMap,
    components: &[AffineSubtorus],
    denominator: u32,
    n: usize,
    total: usize,
) -> Result<GridOracleReport> {
    let d = denominator as i64;
    let mut index = vec![0i64; n];
    let mut fixed_points = 0usize;
    let mut witness = None;
    for _ in 0..total {
        let point: Vec<Rational> = index
            .iter()
            .map(|&m| Rational::new(Int::from(m), Int::from(d)))
            .collect();
        let fixed = g.apply(&point)? == point;
        let mut member = false;
        for s in components {
            if s.contains_point(&point)? {
                member = true;
                break;
            }
        }
        if fixed {
            fixed_points += 1;
        }
        if fixed != member && witness.is_none() {
            let coords: Vec<String> = point.iter().map(|x| x.to_string()).collect();
            witness = Some(format!(
                "({}) fixed={fixed} member={member}",
                coords.join(", ")
            ));
        }
        for slot in 0..n {
            index[slot] += 1;
            if index[slot] < d {
                break;
            }
            index[slot] = 0;
        }
    }
    Ok(GridOracleReport {
        denominator,
        points_scanned: total,
        fixed_points,
        agree: witness.is_none(),
        witness,
    })
}
