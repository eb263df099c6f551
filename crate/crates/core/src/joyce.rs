//! The Joyce-type reflection group on `T^7` and every census derived
//! from it: calibration invariance, fixed 3-tori, slice censuses on the
//! 6- and 3-dimensional coordinate subtori, pillowcase detection on
//! 2-tori, and the Borcea-Voisin fixed-locus data `(a, b)` feeding the
//! Hodge-number pipeline.
//!
//! Counts here are never entered by hand: components come out of the
//! congruence solver, disjointness out of the annihilator systems,
//! orbits out of the group action, and every element is additionally
//! cross-examined by the brute-force grid oracle at a caller-chosen
//! denominator.

use std::fmt;

use crate::error::{Error, Result};
use crate::g2::{G2Structure, Plane};
use crate::scalar::{rat, rat_int, Rational};
use crate::torus::{
    act_on_subtorus, are_disjoint, fixed_set, grid_fixed_oracle, orbit_census, AffineSubtorus,
    AffineTorusMap, FiniteActionGroup, GridOracleReport,
};
use crate::Vector;

const DIM: usize = 7;

/// The three generating reflections, with their standard names.
pub fn joyce_generators() -> Result<Vec<AffineTorusMap>> {
    let zero = || vec![rat_int(0); DIM];
    let alpha = AffineTorusMap::diagonal("alpha", &[1, 1, 1, -1, -1, -1, -1], zero())?;
    let mut beta_shift = zero();
    beta_shift[5] = rat(1, 2);
    let beta = AffineTorusMap::diagonal("beta", &[1, -1, -1, 1, 1, -1, -1], beta_shift)?;
    let mut gamma_shift = zero();
    gamma_shift[4] = rat(1, 2);
    gamma_shift[6] = rat(1, 2);
    let gamma = AffineTorusMap::diagonal("gamma", &[-1, 1, -1, 1, -1, 1, -1], gamma_shift)?;
    Ok(vec![alpha, beta, gamma])
}

/// The group generated by the three reflections; order 8, abelian,
/// exponent 2.
pub fn joyce_group() -> Result<FiniteActionGroup> {
    FiniteActionGroup::generate(joyce_generators()?)
}

/// Whether one element's linear part preserves the calibration 3-form.
#[derive(Clone, Debug)]
pub struct ElementInvariance {
    pub element: String,
    pub invariant: bool,
    pub witness: String,
}

/// Check `L^* phi = phi` for the linear part of every group element.
pub fn verify_phi_invariance(
    g2: &G2Structure,
    group: &FiniteActionGroup,
) -> Result<Vec<ElementInvariance>> {
    if group.dim() != DIM {
        return Err(Error::shape("calibration invariance requires dimension 7"));
    }
    let mut out = Vec::with_capacity(group.order());
    for g in group.elements() {
        let pulled = g2.phi().pullback(&g.linear_rational())?;
        let invariant = pulled == *g2.phi();
        let witness = if invariant {
            "pullback equals the form".to_string()
        } else {
            let diff = pulled.sub(g2.phi())?;
            let first = diff
                .terms()
                .next()
                .map(|(blade, coeff)| format!("first differing blade: {coeff} * {blade}"));
            first.unwrap_or_else(|| "empty difference".to_string())
        };
        out.push(ElementInvariance {
            element: g.name().to_string(),
            invariant,
            witness,
        });
    }
    Ok(out)
}

/// Fixed locus of one group element plus its grid cross-check.
#[derive(Clone, Debug)]
pub struct ElementFixedSet {
    pub element: String,
    pub components: Vec<AffineSubtorus>,
    pub grid: GridOracleReport,
}

impl ElementFixedSet {
    pub fn is_free(&self) -> bool {
        self.components.is_empty()
    }
}

/// Shared census machinery: fixed sets of every non-identity element,
/// pairwise disjointness across all components, orbit partition under
/// the whole group, and a grid-oracle verdict per element.
#[derive(Clone, Debug)]
pub struct ActionCensus {
    /// Ambient coordinate labels (1-based, in the original torus) for
    /// the coordinates of the torus this census ran on.
    pub ambient_coords: Vec<usize>,
    pub group_order: usize,
    pub per_element: Vec<ElementFixedSet>,
    pub total_components: usize,
    pub pairwise_disjoint: bool,
    pub orbit_count: usize,
    pub orbit_sizes: Vec<usize>,
}

impl ActionCensus {
    pub fn fixed_elements(&self) -> Vec<&ElementFixedSet> {
        self.per_element.iter().filter(|e| !e.is_free()).collect()
    }

    pub fn free_elements(&self) -> Vec<&str> {
        self.per_element
            .iter()
            .filter(|e| e.is_free())
            .map(|e| e.element.as_str())
            .collect()
    }

    /// Translate a component's axis directions into ambient labels.
    pub fn ambient_axes(&self, s: &AffineSubtorus) -> Option<Vec<usize>> {
        s.axis_directions()
            .map(|axes| axes.iter().map(|&a| self.ambient_coords[a - 1]).collect())
    }
}

/// Census of a group acting on its own torus, with coordinates labeled
/// 1 through n.
pub fn action_census(group: &FiniteActionGroup, grid_denominator: u32) -> Result<ActionCensus> {
    census_on_group(group, (1..=group.dim()).collect(), grid_denominator)
}

fn census_on_group(
    group: &FiniteActionGroup,
    ambient_coords: Vec<usize>,
    grid_denominator: u32,
) -> Result<ActionCensus> {
    if ambient_coords.len() != group.dim() {
        return Err(Error::shape("ambient label count must match group dimension"));
    }
    let mut per_element = Vec::new();
    let mut all_components = Vec::new();
    for g in group.non_identity_elements() {
        let components = fixed_set(g)?;
        let grid = grid_fixed_oracle(g, &components, grid_denominator)?;
        all_components.extend(components.clone());
        per_element.push(ElementFixedSet {
            element: g.name().to_string(),
            components,
            grid,
        });
    }
    let mut pairwise_disjoint = true;
    'outer: for i in 0..all_components.len() {
        for j in (i + 1)..all_components.len() {
            if !are_disjoint(&all_components[i], &all_components[j])? {
                pairwise_disjoint = false;
                break 'outer;
            }
        }
    }
    let orbits = orbit_census(group, &all_components)?;
    Ok(ActionCensus {
        ambient_coords,
        group_order: group.order(),
        total_components: all_components.len(),
        pairwise_disjoint,
        orbit_count: orbits.count(),
        orbit_sizes: orbits.sizes(),
        per_element,
    })
}

/// Full-torus census of the group, with every component's direction
/// plane additionally certified calibrated.
#[derive(Clone, Debug)]
pub struct SingularCensus {
    pub census: ActionCensus,
    pub abelian: bool,
    pub exponent_two: bool,
    /// Per fixed element, the ambient axis triple of its components'
    /// shared direction plane.
    pub direction_axes: Vec<(String, Vec<usize>)>,
    pub directions_calibrated: bool,
}

pub fn singular_census(
    g2: &G2Structure,
    group: &FiniteActionGroup,
    grid_denominator: u32,
) -> Result<SingularCensus> {
    if group.dim() != DIM {
        return Err(Error::shape("the full census runs on the 7-torus"));
    }
    let census = census_on_group(group, (1..=DIM).collect(), grid_denominator)?;
    let abelian = group.is_abelian()?;
    let mut exponent_two = true;
    for g in group.elements() {
        if !g.compose(g)?.is_identity() {
            exponent_two = false;
        }
    }
    let mut direction_axes = Vec::new();
    let mut directions_calibrated = true;
    for entry in census.fixed_elements() {
        let mut axes_for_element: Option<Vec<usize>> = None;
        for component in &entry.components {
            // Only a 3-dimensional direction plane with an exact
            // orthonormal basis can carry the calibration certificate;
            // anything else fails it rather than aborting the census.
            let certified = component.dim() == 3
                && component_direction_plane(component)
                    .and_then(|plane| g2.calibrated_3plane(&plane))
                    .map(|check| check.calibrated)
                    .unwrap_or(false);
            if !certified {
                directions_calibrated = false;
            }
            let axes = census.ambient_axes(component).unwrap_or_default();
            match &axes_for_element {
                None => axes_for_element = Some(axes),
                Some(prev) => {
                    if *prev != axes {
                        return Err(Error::Verification(format!(
                            "components of {} disagree on direction axes",
                            entry.element
                        )));
                    }
                }
            }
        }
        direction_axes.push((
            entry.element.clone(),
            axes_for_element.unwrap_or_default(),
        ));
    }
    Ok(SingularCensus {
        census,
        abelian,
        exponent_two,
        direction_axes,
        directions_calibrated,
    })
}

/// Orthonormalized plane spanned by a component's direction lattice.
pub fn component_direction_plane(s: &AffineSubtorus) -> Result<Plane> {
    let n = s.ambient_dim();
    let vectors: Vec<Vector> = (0..s.directions().nrows())
        .map(|i| {
            Vector::new(
                s.directions()
                    .row(i)
                    .iter()
                    .map(|x| Rational::from(x.clone()))
                    .collect(),
            )
        })
        .collect();
    if vectors.is_empty() {
        return Err(Error::shape(format!(
            "component {s} has no directions to span a plane in dimension {n}"
        )));
    }
    let basis = crate::g2::rational_orthonormalize(&vectors)?;
    Plane::from_orthonormal_basis(basis)
}

/// Census of the group induced on a generic coordinate slice.
pub fn slice_census(
    group: &FiniteActionGroup,
    sliced: &[(usize, Rational)],
    grid_denominator: u32,
) -> Result<ActionCensus> {
    let induced = group.restrict_to_slice(sliced)?;
    let fixed: Vec<usize> = sliced.iter().map(|&(c, _)| c).collect();
    let remaining: Vec<usize> = (1..=group.dim()).filter(|c| !fixed.contains(c)).collect();
    census_on_group(&induced, remaining, grid_denominator)
}

/// Census on the 3-torus of the last three coordinates: stabilize a
/// generic slice of the fourth coordinate, then project away the first
/// three.
pub fn t3_567_census(
    group: &FiniteActionGroup,
    slice_value: Rational,
    grid_denominator: u32,
) -> Result<ActionCensus> {
    if group.dim() != DIM {
        return Err(Error::shape("the 3-torus census starts from the 7-torus"));
    }
    let induced = group.restrict_to_slice(&[(4, slice_value)])?;
    // Remaining coordinates are (1,2,3,5,6,7); keep the tail (5,6,7).
    let projected = induced.project_to_coords(&[4, 5, 6])?;
    census_on_group(&projected, vec![5, 6, 7], grid_denominator)
}

/// Fixed points of an involution of pillowcase type on a 2-torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PillowcaseCensus {
    pub fixed_points: Vec<Vec<Rational>>,
    pub pattern: String,
}

/// Detect the pillowcase pattern: the map must be `x -> -x + t` on a
/// 2-torus, and then its four fixed points are reported exactly.
pub fn pillowcase_census(map: &AffineTorusMap) -> Result<PillowcaseCensus> {
    if map.dim() != 2 {
        return Err(Error::NotPillowcase(format!(
            "map acts on a {}-torus, not a 2-torus",
            map.dim()
        )));
    }
    let minus_identity = crate::IntMatrix::identity(2).neg();
    if *map.linear() != minus_identity {
        return Err(Error::NotPillowcase(format!(
            "linear part of '{}' is not minus the identity",
            map.name()
        )));
    }
    let components = fixed_set(map)?;
    if components.len() != 4 || components.iter().any(|c| c.dim() != 0) {
        return Err(Error::Verification(format!(
            "expected 4 isolated fixed points, found {} components",
            components.len()
        )));
    }
    Ok(PillowcaseCensus {
        fixed_points: components
            .iter()
            .map(|c| c.basepoint().to_vec())
            .collect(),
        pattern: "four corner points of a pillowcase quotient".to_string(),
    })
}

/// Fixed-locus data of a 4-torus double-involution model: the count `a`
/// of curve components downstairs and their total genus `b`.
#[derive(Clone, Debug)]
pub struct BvFixedData {
    pub label: String,
    pub kummer_element: String,
    pub involution_element: String,
    pub kummer_points: usize,
    pub upstairs_tori: Vec<AffineSubtorus>,
    pub involution_free_on_kummer_points: bool,
    pub pairing: Vec<(usize, usize)>,
    pub a: usize,
    pub b: usize,
}

/// Compute the fixed-locus data for a pair of commuting involutions on
/// `T^4`: `kummer` with 16 isolated fixed points (the surface model) and
/// `involution` whose fixed locus upstairs must be a disjoint union of
/// 2-tori avoiding the 16 points.
pub fn bv_fixed_data(
    label: impl Into<String>,
    kummer: &AffineTorusMap,
    involution: &AffineTorusMap,
) -> Result<BvFixedData> {
    let label = label.into();
    if kummer.dim() != 4 || involution.dim() != 4 {
        return Err(Error::shape("both involutions must act on a 4-torus"));
    }
    for (role, map) in [("kummer", kummer), ("involution", involution)] {
        if !map.compose(map)?.is_identity() {
            return Err(Error::TorusMap(format!(
                "{role} element '{}' is not an involution",
                map.name()
            )));
        }
    }
    if kummer.compose(involution)? != involution.compose(kummer)? {
        return Err(Error::TorusMap(format!(
            "'{}' and '{}' do not commute",
            kummer.name(),
            involution.name()
        )));
    }

    let kummer_fix = fixed_set(kummer)?;
    if kummer_fix.iter().any(|c| c.dim() != 0) {
        return Err(Error::Verification(format!(
            "{label}: the designated surface involution has positive-dimensional fixed locus"
        )));
    }
    let kummer_points = kummer_fix.len();
    if kummer_points != 16 {
        return Err(Error::Verification(format!(
            "{label}: surface involution fixes {kummer_points} points, expected 16"
        )));
    }

    let upstairs_tori = fixed_set(involution)?;
    if upstairs_tori.iter().any(|c| c.dim() != 2) {
        return Err(Error::Verification(format!(
            "{label}: fixed locus has a component that is not a 2-torus"
        )));
    }
    for torus in &upstairs_tori {
        for point in &kummer_fix {
            if !are_disjoint(torus, point)? {
                return Err(Error::Verification(format!(
                    "{label}: fixed 2-torus {torus} meets the isolated point {point}; \
                     the component count would be invalid"
                )));
            }
        }
    }

    // The involution must permute the 16 points without fixing any (so
    // no exceptional-curve contribution appears downstairs).
    let mut involution_free_on_kummer_points = true;
    for point in &kummer_fix {
        let image = act_on_subtorus(involution, point)?;
        if !kummer_fix.contains(&image) {
            return Err(Error::Verification(format!(
                "{label}: involution does not permute the isolated fixed points"
            )));
        }
        if image == *point {
            involution_free_on_kummer_points = false;
        }
    }

    // Downstairs components: orbits of the 2-tori under the surface
    // involution.  Only the transposition pattern (all orbits of size 2)
    // is supported; each downstairs component is then a torus, genus 1.
    let pair_group = FiniteActionGroup::generate(vec![kummer.clone()])?;
    let orbits = orbit_census(&pair_group, &upstairs_tori)?;
    let mut pairing = Vec::new();
    for orbit in &orbits.orbits {
        match orbit.as_slice() {
            [i, j] => pairing.push((*i, *j)),
            _ => {
                return Err(Error::Verification(format!(
                    "{label}: orbit of size {} among the fixed 2-tori; only free \
                     pairing is supported",
                    orbit.len()
                )))
            }
        }
    }
    let a = orbits.count();
    // Every downstairs component is a torus, so each contributes genus 1.
    let b = a;
    Ok(BvFixedData {
        label,
        kummer_element: kummer.name().to_string(),
        involution_element: involution.name().to_string(),
        kummer_points,
        upstairs_tori,
        involution_free_on_kummer_points,
        pairing,
        a,
        b,
    })
}

impl fmt::Display for BvFixedData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} isolated points, {} fixed 2-tori upstairs, (a, b) = ({}, {})",
            self.label,
            self.kummer_points,
            self.upstairs_tori.len(),
            self.a,
            self.b
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn g2() -> G2Structure {
        G2Structure::standard()
    }

    fn halves(bits: &[(usize, i64, i64)], n: usize) -> Vec<Rational> {
        // Points with entries numerator/denominator by 1-based coordinate.
        let mut p = vec![rat_int(0); n];
        for &(i, num, den) in bits {
            p[i - 1] = rat(num, den);
        }
        p
    }

    #[test]
    fn generator_actions_match_the_defining_table() {
        let group = joyce_group().unwrap();
        assert_eq!(group.order(), 8);
        let gamma = group.element_by_name("gamma").unwrap();
        // x5 -> -x5 + 1/2.
        let p = halves(&[(5, 1, 8)], 7);
        let image = gamma.apply(&p).unwrap();
        assert_eq!(image[4], rat(3, 8));
        let beta = group.element_by_name("beta").unwrap();
        // x6 -> -x6 + 1/2.
        let p = halves(&[(6, 1, 8)], 7);
        assert_eq!(beta.apply(&p).unwrap()[5], rat(3, 8));
    }

    #[test]
    fn group_is_elementary_abelian_of_order_eight() {
        let group = joyce_group().unwrap();
        assert_eq!(group.order(), 8);
        assert!(group.is_abelian().unwrap());
        for g in group.elements() {
            assert!(g.compose(g).unwrap().is_identity(), "{} squared", g.name());
        }
        let names: Vec<&str> = group.elements().iter().map(|g| g.name()).collect();
        assert_eq!(
            names,
            vec![
                "identity",
                "alpha",
                "beta",
                "gamma",
                "alpha*beta",
                "alpha*gamma",
                "beta*gamma",
                "alpha*beta*gamma",
            ]
        );
    }

    #[test]
    fn all_elements_preserve_the_calibration() {
        let invariance = verify_phi_invariance(&g2(), &joyce_group().unwrap()).unwrap();
        assert_eq!(invariance.len(), 8);
        for entry in &invariance {
            assert!(entry.invariant, "{} fails: {}", entry.element, entry.witness);
        }
    }

    #[test]
    fn single_sign_flip_breaks_the_calibration() {
        let bad = AffineTorusMap::diagonal(
            "bad",
            &[-1, 1, 1, 1, 1, 1, 1],
            vec![rat_int(0); 7],
        )
        .unwrap();
        let group = FiniteActionGroup::generate(vec![bad]).unwrap();
        let invariance = verify_phi_invariance(&g2(), &group).unwrap();
        let entry = invariance.iter().find(|e| e.element == "bad").unwrap();
        assert!(!entry.invariant);
        assert!(entry.witness.contains("e123"), "witness: {}", entry.witness);
    }

    fn fixed_components_of(name: &str) -> Vec<AffineSubtorus> {
        let group = joyce_group().unwrap();
        fixed_set(group.element_by_name(name).unwrap()).unwrap()
    }

    #[test]
    fn alpha_fixes_sixteen_tori_with_half_integer_coordinates() {
        let components = fixed_components_of("alpha");
        assert_eq!(components.len(), 16);
        for c in &components {
            assert_eq!(c.dim(), 3);
            assert_eq!(c.axis_directions(), Some(vec![1, 2, 3]));
            let p = c.basepoint();
            for j in 0..3 {
                assert!(p[j].is_zero());
            }
            for j in 3..7 {
                assert!(
                    p[j].is_zero() || p[j] == rat(1, 2),
                    "coordinate {} is {}",
                    j + 1,
                    p[j]
                );
            }
        }
    }

    #[test]
    fn beta_fixes_sixteen_tori_with_quarter_shift_on_x6() {
        let components = fixed_components_of("beta");
        assert_eq!(components.len(), 16);
        for c in &components {
            assert_eq!(c.axis_directions(), Some(vec![1, 4, 5]));
            let p = c.basepoint();
            for &j in &[1usize, 2, 6] {
                assert!(p[j].is_zero() || p[j] == rat(1, 2));
            }
            assert!(p[5] == rat(1, 4) || p[5] == rat(3, 4), "x6 = {}", p[5]);
        }
    }

    #[test]
    fn gamma_fixes_sixteen_tori_with_quarter_shifts_on_x5_x7() {
        let components = fixed_components_of("gamma");
        assert_eq!(components.len(), 16);
        for c in &components {
            assert_eq!(c.axis_directions(), Some(vec![2, 4, 6]));
            let p = c.basepoint();
            for &j in &[0usize, 2] {
                assert!(p[j].is_zero() || p[j] == rat(1, 2));
            }
            for &j in &[4usize, 6] {
                assert!(p[j] == rat(1, 4) || p[j] == rat(3, 4));
            }
        }
    }

    #[test]
    fn full_census_counts_and_calibration() {
        let report = singular_census(&g2(), &joyce_group().unwrap(), 4).unwrap();
        assert!(report.abelian);
        assert!(report.exponent_two);
        assert_eq!(report.census.total_components, 48);
        assert!(report.census.pairwise_disjoint);
        assert_eq!(report.census.orbit_count, 12);
        assert_eq!(report.census.orbit_sizes, vec![4; 12]);
        let mut free = report.census.free_elements();
        free.sort_unstable();
        assert_eq!(
            free,
            vec!["alpha*beta", "alpha*beta*gamma", "alpha*gamma", "beta*gamma"]
        );
        assert!(report.directions_calibrated);
        let mut axes = report.direction_axes.clone();
        axes.sort();
        assert_eq!(
            axes,
            vec![
                ("alpha".to_string(), vec![1, 2, 3]),
                ("beta".to_string(), vec![1, 4, 5]),
                ("gamma".to_string(), vec![2, 4, 6]),
            ]
        );
        for entry in &report.census.per_element {
            assert!(entry.grid.agree, "{}: {:?}", entry.element, entry.grid.witness);
            assert_eq!(entry.grid.points_scanned, 4usize.pow(7));
        }
    }

    #[test]
    fn x1_slice_census() {
        let census = slice_census(&joyce_group().unwrap(), &[(1, rat(1, 16))], 4).unwrap();
        assert_eq!(census.group_order, 4);
        assert_eq!(census.ambient_coords, vec![2, 3, 4, 5, 6, 7]);
        assert_eq!(census.total_components, 32);
        assert!(census.pairwise_disjoint);
        assert_eq!(census.orbit_count, 16);
        assert_eq!(census.free_elements(), vec!["alpha*beta"]);
        // Two families of sixteen, fixed by the two surviving
        // reflections, with the expected ambient direction planes.
        let fixed = census.fixed_elements();
        assert_eq!(fixed.len(), 2);
        for entry in fixed {
            assert_eq!(entry.components.len(), 16);
            let axes = census.ambient_axes(&entry.components[0]).unwrap();
            match entry.element.as_str() {
                "alpha" => assert_eq!(axes, vec![2, 3]),
                "beta" => assert_eq!(axes, vec![4, 5]),
                other => panic!("unexpected fixed element {other}"),
            }
            for c in &entry.components {
                assert_eq!(c.dim(), 2);
                assert_eq!(census.ambient_axes(c).unwrap(), axes);
            }
            assert!(entry.grid.agree);
        }
    }

    #[test]
    fn x4_slice_census_mirrors_the_x1_one() {
        let census = slice_census(&joyce_group().unwrap(), &[(4, rat(1, 16))], 4).unwrap();
        assert_eq!(census.group_order, 4);
        assert_eq!(census.ambient_coords, vec![1, 2, 3, 5, 6, 7]);
        assert_eq!(census.total_components, 32);
        assert!(census.pairwise_disjoint);
        assert_eq!(census.orbit_count, 16);
        assert_eq!(census.free_elements(), vec!["beta*gamma"]);
        let fixed = census.fixed_elements();
        assert_eq!(fixed.len(), 2);
        for entry in fixed {
            assert_eq!(entry.components.len(), 16);
            let axes = census.ambient_axes(&entry.components[0]).unwrap();
            match entry.element.as_str() {
                "beta" => assert_eq!(axes, vec![1, 5]),
                "gamma" => assert_eq!(axes, vec![2, 6]),
                other => panic!("unexpected fixed element {other}"),
            }
        }
    }

    #[test]
    fn t3_census_finds_eight_circles_in_two_families() {
        let census = t3_567_census(&joyce_group().unwrap(), rat(1, 16), 4).unwrap();
        assert_eq!(census.group_order, 4);
        assert_eq!(census.ambient_coords, vec![5, 6, 7]);
        assert_eq!(census.total_components, 8);
        assert!(census.pairwise_disjoint);
        assert_eq!(census.orbit_count, 4);
        assert_eq!(census.free_elements(), vec!["beta*gamma"]);
        for entry in census.fixed_elements() {
            assert_eq!(entry.components.len(), 4);
            for c in &entry.components {
                assert_eq!(c.dim(), 1);
            }
            let axes = census.ambient_axes(&entry.components[0]).unwrap();
            match entry.element.as_str() {
                // Free along x5; x6 in {1/4, 3/4}, x7 in {0, 1/2}.
                "beta" => {
                    assert_eq!(axes, vec![5]);
                    for c in &entry.components {
                        let p = c.basepoint();
                        assert!(p[1] == rat(1, 4) || p[1] == rat(3, 4));
                        assert!(p[2].is_zero() || p[2] == rat(1, 2));
                    }
                }
                // Free along x6; x5, x7 in {1/4, 3/4}.
                "gamma" => {
                    assert_eq!(axes, vec![6]);
                    for c in &entry.components {
                        let p = c.basepoint();
                        assert!(p[0] == rat(1, 4) || p[0] == rat(3, 4));
                        assert!(p[2] == rat(1, 4) || p[2] == rat(3, 4));
                    }
                }
                other => panic!("unexpected fixed element {other}"),
            }
        }
    }

    #[test]
    fn pillowcase_detection_on_coordinate_two_tori() {
        // The involution induced on the (x2, x3) torus.
        let group = joyce_group().unwrap();
        let sliced = group.restrict_to_slice(&[(1, rat(1, 16))]).unwrap();
        let projected = sliced.project_to_coords(&[1, 2]).unwrap();
        let beta = projected.element_by_name("beta").unwrap();
        let census = pillowcase_census(beta).unwrap();
        assert_eq!(census.fixed_points.len(), 4);
        for p in &census.fixed_points {
            for x in p {
                assert!(x.is_zero() || *x == rat(1, 2));
            }
        }

        // A reflection pattern on (x1, x3) of the same type.
        let gamma13 = AffineTorusMap::diagonal("gamma13", &[-1, -1], vec![rat_int(0); 2]).unwrap();
        assert_eq!(pillowcase_census(&gamma13).unwrap().fixed_points.len(), 4);

        // A free shift is not of pillowcase type.
        let shift = AffineTorusMap::diagonal("t", &[1, 1], vec![rat(1, 2), rat_int(0)]).unwrap();
        assert!(matches!(
            pillowcase_census(&shift),
            Err(Error::NotPillowcase(_))
        ));
    }

    fn slice_then_project(
        slice: (usize, Rational),
        keep_positions: &[usize],
    ) -> FiniteActionGroup {
        joyce_group()
            .unwrap()
            .restrict_to_slice(&[slice])
            .unwrap()
            .project_to_coords(keep_positions)
            .unwrap()
    }

    #[test]
    fn bv_data_for_the_x1_slice_model() {
        // T^4 on ambient coordinates (4,5,6,7): positions 3..6 of the
        // x1-sliced coordinates (2,3,4,5,6,7).
        let four_torus = slice_then_project((1, rat(1, 16)), &[3, 4, 5, 6]);
        let kummer = four_torus.element_by_name("alpha").unwrap().clone();
        let involution = four_torus.element_by_name("beta").unwrap().clone();
        let data = bv_fixed_data("first model", &kummer, &involution).unwrap();
        assert_eq!(data.kummer_points, 16);
        assert_eq!(data.upstairs_tori.len(), 4);
        assert!(data.involution_free_on_kummer_points);
        assert_eq!((data.a, data.b), (2, 2));
        assert_eq!(data.pairing.len(), 2);
        // Upstairs tori: free along (x4, x5); x6 in {1/4,3/4}, x7 in
        // {0,1/2} (positions 1,2 free; 3,4 bound here).
        for t in &data.upstairs_tori {
            assert_eq!(t.axis_directions(), Some(vec![1, 2]));
            let p = t.basepoint();
            assert!(p[2] == rat(1, 4) || p[2] == rat(3, 4));
            assert!(p[3].is_zero() || p[3] == rat(1, 2));
        }
    }

    #[test]
    fn bv_data_for_the_x4_slice_model() {
        // T^4 on ambient coordinates (1,3,5,7): positions 1,3,4,6 of the
        // x4-sliced coordinates (1,2,3,5,6,7).
        let four_torus = slice_then_project((4, rat(1, 16)), &[1, 3, 4, 6]);
        let kummer = four_torus.element_by_name("gamma").unwrap().clone();
        let involution = four_torus.element_by_name("beta").unwrap().clone();
        let data = bv_fixed_data("second model", &kummer, &involution).unwrap();
        assert_eq!(data.kummer_points, 16);
        assert_eq!(data.upstairs_tori.len(), 4);
        assert!(data.involution_free_on_kummer_points);
        assert_eq!((data.a, data.b), (2, 2));
    }

    #[test]
    fn bv_data_rejects_loci_meeting_the_isolated_points() {
        let kummer = AffineTorusMap::diagonal("k", &[-1, -1, -1, -1], vec![rat_int(0); 4]).unwrap();
        // Fix of this involution contains (0,0,0,0), an isolated point of
        // the surface involution.
        let touching =
            AffineTorusMap::diagonal("j", &[1, 1, -1, -1], vec![rat_int(0); 4]).unwrap();
        let err = bv_fixed_data("bad", &kummer, &touching).unwrap_err();
        assert!(matches!(err, Error::Verification(_)));
    }

    #[test]
    fn bv_data_rejects_non_commuting_pairs() {
        let kummer = AffineTorusMap::diagonal("k", &[-1, -1, -1, -1], vec![rat_int(0); 4]).unwrap();
        // A genuine involution whose quarter shift fails to commute with
        // the point reflection: the two orders of composition differ by
        // 1/2 on x1.
        let involution = AffineTorusMap::diagonal(
            "j",
            &[-1, 1, -1, -1],
            vec![rat(1, 4), rat_int(0), rat_int(0), rat_int(0)],
        )
        .unwrap();
        assert!(involution.compose(&involution).unwrap().is_identity());
        let err = bv_fixed_data("bad", &kummer, &involution).unwrap_err();
        assert!(matches!(err, Error::TorusMap(_)), "{err}");
        assert!(err.to_string().contains("commute"), "{err}");
    }

    #[test]
    fn invariant_triples_match_the_calibrated_planes() {
        // Independent cross-check: the degree-3 blades invariant under
        // the whole group are exactly the calibrated coordinate planes.
        let group = joyce_group().unwrap();
        let invariant = crate::hodge::invariant_blades(&group, 3).unwrap();
        let census = g2().coordinate_plane_census().unwrap();
        let mut from_group: Vec<Vec<usize>> =
            invariant.iter().map(|b| b.indices()).collect();
        let mut from_calibration: Vec<Vec<usize>> = census
            .calibrated
            .iter()
            .map(|p| p.indices.clone())
            .collect();
        from_group.sort();
        from_calibration.sort();
        assert_eq!(from_group, from_calibration);
        // And the full Betti vector of the quotient.
        assert_eq!(
            crate::hodge::betti_via_invariant_forms(&group).unwrap(),
            vec![1, 0, 0, 7, 7, 0, 0, 1]
        );
    }
}
