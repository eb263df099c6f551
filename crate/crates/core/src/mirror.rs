//! Assembly of the two degenerate-limit sides of the construction and
//! the comparison between them: each unit direction yields a coordinate
//! slice, an induced order-4 action on a 6-torus, a double-involution
//! model on a 4-torus, and finally a Hodge pair.  The report records the
//! computed counts, the plane memberships of the two directions, the
//! fibration combinatorics, and the cross-equality of the two Hodge
//! numbers.

use crate::cy::CYData;
use crate::error::{Error, Result};
use crate::g2::{G2Structure, Plane};
use crate::hodge::{hodge_diamond, hodge_numbers, HodgeData, HodgeDiamond};
use crate::joyce::{
    bv_fixed_data, pillowcase_census, slice_census, t3_567_census, ActionCensus, BvFixedData,
    PillowcaseCensus,
};
use crate::scalar::{rat, Rational};
use crate::torus::FiniteActionGroup;
use crate::Vector;

const DIM: usize = 7;

/// One torus-fibration pattern: the spaces involved, the computed
/// supporting counts, and the identification claims that are recorded
/// but not re-derived by this crate.
#[derive(Clone, Debug)]
pub struct FibrationRecord {
    pub name: String,
    pub total_space: String,
    pub base: String,
    pub regular_fiber: String,
    pub singular_description: String,
    /// Counts that the torus machinery actually computed.
    pub verified_counts: Vec<(String, i64)>,
    /// Topological identifications carried along as assertions.
    pub identifications: Vec<String>,
}

/// Everything computed for one choice of unit direction.
#[derive(Clone, Debug)]
pub struct MirrorSide {
    pub label: String,
    pub xi: Vector,
    pub slice_coordinate: usize,
    pub six_torus_coords: Vec<usize>,
    pub elliptic_coords: Vec<usize>,
    pub k3_coords: Vec<usize>,
    pub orbifold_limit: String,
    /// Whether the almost complex-symplectic-holomorphic extraction for
    /// this direction certified all of its internal identities.
    pub almost_cy_verified: bool,
    pub slice: ActionCensus,
    pub pillowcase: PillowcaseCensus,
    pub bv: BvFixedData,
    pub hodge: HodgeData,
    pub diamond: HodgeDiamond,
}

/// The assembled two-sided report.
#[derive(Clone, Debug)]
pub struct MirrorReport {
    pub side_xi: MirrorSide,
    pub side_xi_prime: MirrorSide,
    pub associative_axes: Vec<usize>,
    pub coassociative_axes: Vec<usize>,
    pub xi_in_coassociative: bool,
    pub xi_prime_in_associative: bool,
    /// Census of the order-4 action on the (5,6,7) torus: the link of
    /// singular circles in the common 3-sphere base.
    pub t3: ActionCensus,
    pub fibrations: Vec<FibrationRecord>,
    pub h11_xi: i64,
    pub h21_xi_prime: i64,
    pub mirror_equality: bool,
}

struct SideSpec {
    label: &'static str,
    axis: usize,
    slice_coordinate: usize,
    elliptic_coords: [usize; 2],
    k3_coords: [usize; 4],
    kummer_element: &'static str,
    involution_element: &'static str,
}

const SIDE_XI: SideSpec = SideSpec {
    label: "X_xi",
    axis: 4,
    slice_coordinate: 4,
    elliptic_coords: [2, 6],
    k3_coords: [1, 3, 5, 7],
    kummer_element: "gamma",
    involution_element: "beta",
};

const SIDE_XI_PRIME: SideSpec = SideSpec {
    label: "X_xi_prime",
    axis: 1,
    slice_coordinate: 1,
    elliptic_coords: [2, 3],
    k3_coords: [4, 5, 6, 7],
    kummer_element: "alpha",
    involution_element: "beta",
};

fn positions_of(ambient: &[usize], wanted: &[usize]) -> Result<Vec<usize>> {
    wanted
        .iter()
        .map(|w| {
            ambient
                .iter()
                .position(|c| c == w)
                .map(|p| p + 1)
                .ok_or_else(|| {
                    Error::shape(format!("coordinate {w} is not part of the sliced torus"))
                })
        })
        .collect()
}

fn build_side(
    g2: &G2Structure,
    group: &FiniteActionGroup,
    spec: &SideSpec,
    slice_value: &Rational,
    grid_denominator: u32,
) -> Result<MirrorSide> {
    let xi = Vector::basis(DIM, spec.axis);
    let cy = CYData::extract(g2, &xi)?;
    let almost_cy_verified = cy.verify(g2)?.all_passed();

    let sliced = &[(spec.slice_coordinate, slice_value.clone())];
    let census = slice_census(group, sliced, grid_denominator)?;
    let six_torus_coords = census.ambient_coords.clone();

    let induced = group.restrict_to_slice(sliced)?;
    let elliptic_positions = positions_of(&six_torus_coords, &spec.elliptic_coords)?;
    let k3_positions = positions_of(&six_torus_coords, &spec.k3_coords)?;
    let elliptic_group = induced.project_to_coords(&elliptic_positions)?;
    let k3_group = induced.project_to_coords(&k3_positions)?;

    let elliptic_involution = elliptic_group.element_by_name(spec.involution_element)?;
    let pillowcase = pillowcase_census(elliptic_involution)?;

    let kummer = k3_group.element_by_name(spec.kummer_element)?;
    let involution = k3_group.element_by_name(spec.involution_element)?;
    let bv = bv_fixed_data(spec.label, kummer, involution)?;

    let hodge = hodge_numbers(bv.a as i64, bv.b as i64)?;
    let diamond = hodge_diamond(&hodge);
    if diamond.euler() != 2 * (hodge.h11 - hodge.h21) {
        return Err(Error::Verification(format!(
            "{}: diamond Euler characteristic disagrees with the Hodge pair",
            spec.label
        )));
    }

    let coords: Vec<String> = six_torus_coords.iter().map(|c| c.to_string()).collect();
    Ok(MirrorSide {
        label: spec.label.to_string(),
        xi,
        slice_coordinate: spec.slice_coordinate,
        six_torus_coords,
        elliptic_coords: spec.elliptic_coords.to_vec(),
        k3_coords: spec.k3_coords.to_vec(),
        orbifold_limit: format!("T^6_({})/Gamma", coords.join(",")),
        almost_cy_verified,
        slice: census,
        pillowcase,
        bv,
        hodge,
        diamond,
    })
}

fn fibration_records(report: &MirrorReport) -> Vec<FibrationRecord> {
    let corners_prime = report.side_xi_prime.pillowcase.fixed_points.len() as i64;
    let corners = report.side_xi.pillowcase.fixed_points.len() as i64;
    let link_circles = report.t3.orbit_count as i64;
    let upstairs_circles = report.t3.total_components as i64;
    let singular_tori = report.side_xi.slice.orbit_count as i64;
    vec![
        FibrationRecord {
            name: "k3-fibration-over-the-2-sphere".to_string(),
            total_space: "first resolved quotient threefold".to_string(),
            base: "2-sphere: pillowcase quotient of the (2,3) torus".to_string(),
            regular_fiber: "K3 surface resolving the (4,5,6,7) torus quotient".to_string(),
            singular_description: "singular fibers sit over the four pillowcase corner points"
                .to_string(),
            verified_counts: vec![("pillowcase corner points".to_string(), corners_prime)],
            identifications: vec![
                "the pillowcase quotient of a 2-torus is a 2-sphere".to_string(),
            ],
        },
        FibrationRecord {
            name: "elliptic-fibration-over-the-quotient-surface".to_string(),
            total_space: "first resolved quotient threefold".to_string(),
            base: "quotient of the K3 fiber by the residual involution".to_string(),
            regular_fiber: "elliptic curve: the (2,3) torus".to_string(),
            singular_description:
                "over each branch value the fiber degenerates to a union of five 2-spheres"
                    .to_string(),
            verified_counts: vec![("pillowcase corner points".to_string(), corners_prime)],
            identifications: vec![
                "the quotient surface is a rational surface (a blown-up projective plane)"
                    .to_string(),
                "each singular fiber is a union of five 2-spheres".to_string(),
            ],
        },
        FibrationRecord {
            name: "3-torus-fibration-over-the-3-sphere".to_string(),
            total_space: "second resolved quotient threefold".to_string(),
            base: "3-sphere: quotient of the (5,6,7) torus by the induced order-4 group"
                .to_string(),
            regular_fiber: "special 3-torus on coordinates (1,2,3)".to_string(),
            singular_description: "the discriminant is a link of circles in the base".to_string(),
            verified_counts: vec![
                ("singular circles in the base".to_string(), link_circles),
                ("fixed circles upstairs".to_string(), upstairs_circles),
            ],
            identifications: vec![
                "the (5,6,7) torus quotient is a 3-sphere".to_string(),
            ],
        },
        FibrationRecord {
            name: "6-torus-quotient-over-the-3-sphere".to_string(),
            total_space: "quotient of the (1,2,3,5,6,7) torus by the induced order-4 group"
                .to_string(),
            base: "the same 3-sphere".to_string(),
            regular_fiber: "3-torus on coordinates (1,2,3)".to_string(),
            singular_description:
                "over each link circle the fiber degenerates; the singular set is swept out by \
                 2-tori, four for each of the four link circles"
                    .to_string(),
            verified_counts: vec![
                ("singular 2-torus classes in the quotient".to_string(), singular_tori),
                ("link circles".to_string(), link_circles),
                (
                    "corner points per pillowcase factor".to_string(),
                    corners,
                ),
            ],
            identifications: vec![
                "each singular fiber is a product of a 2-sphere and a circle".to_string(),
            ],
        },
    ]
}

/// Run the whole two-sided pipeline and cross-compare the Hodge pairs.
pub fn mirror_report(
    g2: &G2Structure,
    group: &FiniteActionGroup,
    grid_denominator: u32,
) -> Result<MirrorReport> {
    if group.dim() != DIM {
        return Err(Error::shape("the mirror pipeline starts from the 7-torus"));
    }
    let slice_value = rat(1, 16);
    let side_xi = build_side(g2, group, &SIDE_XI, &slice_value, grid_denominator)?;
    let side_xi_prime = build_side(g2, group, &SIDE_XI_PRIME, &slice_value, grid_denominator)?;

    let associative_axes = vec![1usize, 2, 3];
    let coassociative_axes = vec![4usize, 5, 6, 7];
    let e_plane = Plane::from_indices(DIM, &associative_axes)?;
    let v_plane = Plane::from_indices(DIM, &coassociative_axes)?;
    if !g2.calibrated_3plane(&e_plane)?.calibrated {
        return Err(Error::Verification(
            "the (1,2,3) plane failed its calibration certificate".to_string(),
        ));
    }
    if !g2.cocalibrated_4plane(&v_plane)? {
        return Err(Error::Verification(
            "the (4,5,6,7) plane failed its cocalibration certificate".to_string(),
        ));
    }
    let xi_in_coassociative = v_plane.contains(&side_xi.xi)?;
    let xi_prime_in_associative = e_plane.contains(&side_xi_prime.xi)?;

    let t3 = t3_567_census(group, slice_value, grid_denominator)?;

    let h11_xi = side_xi.hodge.h11;
    let h21_xi_prime = side_xi_prime.hodge.h21;
    let mirror_equality = h11_xi == h21_xi_prime;

    let mut report = MirrorReport {
        side_xi,
        side_xi_prime,
        associative_axes,
        coassociative_axes,
        xi_in_coassociative,
        xi_prime_in_associative,
        t3,
        fibrations: Vec::new(),
        h11_xi,
        h21_xi_prime,
        mirror_equality,
    };
    report.fibrations = fibration_records(&report);
    Ok(report)
}
