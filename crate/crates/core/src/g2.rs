//! The flat cross-product structure on `R^7`.
//!
//! The standard calibration 3-form
//!
//! ```text
//! phi = e123 + e145 + e167 + e246 - e257 - e347 - e356
//! ```
//!
//! induces the Euclidean metric, an orientation, a bilinear cross product
//! `u x v` via `phi(u, v, w) = <u x v, w>`, and a vector-valued 3-form
//! `chi` via `<chi(u, v, w), z> = (*phi)(u, v, w, z)`.  A 3-plane is
//! *calibrated* when `phi` restricts to its volume form (equivalently,
//! `chi` vanishes on it — both criteria are always computed here and
//! cross-checked); a 4-plane is *cocalibrated* when `phi` restricts to
//! zero on it.  This module also enumerates the calibrated coordinate
//! planes and produces the calibrated/cocalibrated orthogonal splitting
//! spanned by an orthonormal 2-frame.
//!
//! Everything is exact: planes carry rational orthonormal bases (verified,
//! not assumed), and orthonormalization is attempted only when the
//! required square roots exist in `Q`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::blades_of_degree;
use crate::mat::{rational_kernel_basis, Matrix};
use crate::scalar::{rational_sqrt, Rational};
use crate::{Form, Vector};

/// Ambient dimension of the cross-product structure.
pub const DIM: usize = 7;

/// The signed index triples of the standard calibration 3-form.
pub const PHI_TRIPLES: [([usize; 3], i64); 7] = [
    ([1, 2, 3], 1),
    ([1, 4, 5], 1),
    ([1, 6, 7], 1),
    ([2, 4, 6], 1),
    ([2, 5, 7], -1),
    ([3, 4, 7], -1),
    ([3, 5, 6], -1),
];

/// The calibration 3-form, its Hodge dual, and the operations they induce.
#[derive(Clone, Debug)]
pub struct G2Structure {
    phi: Form,
    star_phi: Form,
}

impl G2Structure {
    /// The standard structure.  `star_phi` is computed from `phi` by the
    /// complement-sign rule, never written out by hand.
    pub fn standard() -> Self {
        let terms: Vec<(&[usize], i64)> = PHI_TRIPLES
            .iter()
            .map(|(idx, sign)| (&idx[..], *sign))
            .collect();
        let phi = Form::from_signed_indices(DIM, &terms).expect("standard form is well-formed");
        let star_phi = phi.hodge_star().expect("degree 3 <= 7");
        G2Structure { phi, star_phi }
    }

    pub fn phi(&self) -> &Form {
        &self.phi
    }

    pub fn star_phi(&self) -> &Form {
        &self.star_phi
    }

    /// The cross product: the unique vector with
    /// `<cross(u, v), z> = phi(u, v, z)` for all `z`.
    pub fn cross(&self, u: &Vector, v: &Vector) -> Result<Vector> {
        let one_form = self.phi.contract(u)?.contract(v)?;
        Ok(one_form_to_vector(&one_form))
    }

    /// The vector-valued 3-form: the unique vector with
    /// `<chi(u, v, w), z> = (*phi)(u, v, w, z)` for all `z`.
    pub fn chi(&self, u: &Vector, v: &Vector, w: &Vector) -> Result<Vector> {
        let one_form = self.star_phi.contract(u)?.contract(v)?.contract(w)?;
        Ok(one_form_to_vector(&one_form))
    }

    /// Calibration test for an orthonormal 3-plane.  Both criteria — the
    /// restriction of `phi` having unit volume, and `chi` vanishing on a
    /// spanning triple — are evaluated and must agree; disagreement would
    /// expose an internal inconsistency and is reported as an error, not
    /// silently resolved.
    pub fn calibrated_3plane(&self, plane: &Plane) -> Result<CalibrationCheck> {
        if plane.dim() != 3 {
            return Err(Error::shape(format!(
                "calibration test needs a 3-plane, got dimension {}",
                plane.dim()
            )));
        }
        let b = plane.basis();
        let volume = self
            .phi
            .evaluate(&[b[0].clone(), b[1].clone(), b[2].clone()])?;
        let by_volume = volume.abs().is_one();
        let chi_value = self.chi(&b[0], &b[1], &b[2])?;
        let by_chi = chi_value.is_zero();
        if by_volume != by_chi {
            return Err(Error::Verification(format!(
                "volume and chi criteria disagree on plane {plane}: phi = {volume}, chi = {chi_value}"
            )));
        }
        let orientation = if by_volume {
            Some(if volume.is_positive() { 1 } else { -1 })
        } else {
            None
        };
        Ok(CalibrationCheck {
            calibrated: by_volume,
            orientation,
            phi_value: volume,
        })
    }

    /// Cocalibration test for an orthonormal 4-plane: `phi` must vanish on
    /// every triple from the span (checked on all basis triples, which
    /// suffices by multilinearity).
    pub fn cocalibrated_4plane(&self, plane: &Plane) -> Result<bool> {
        if plane.dim() != 4 {
            return Err(Error::shape(format!(
                "cocalibration test needs a 4-plane, got dimension {}",
                plane.dim()
            )));
        }
        let b = plane.basis();
        for i in 0..4 {
            for j in (i + 1)..4 {
                for k in (j + 1)..4 {
                    let value =
                        self.phi
                            .evaluate(&[b[i].clone(), b[j].clone(), b[k].clone()])?;
                    if !value.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Scan all coordinate 3-planes and 4-planes and report the calibrated
    /// ones.
    pub fn coordinate_plane_census(&self) -> Result<PlaneCensus> {
        let mut calibrated = Vec::new();
        for blade in blades_of_degree(DIM, 3) {
            let indices = blade.indices();
            let plane = Plane::from_indices(DIM, &indices)?;
            let check = self.calibrated_3plane(&plane)?;
            if check.calibrated {
                calibrated.push(CalibratedPlane {
                    indices,
                    orientation: check.orientation.expect("calibrated plane has a sign"),
                });
            }
        }
        let mut cocalibrated = Vec::new();
        for blade in blades_of_degree(DIM, 4) {
            let indices = blade.indices();
            let plane = Plane::from_indices(DIM, &indices)?;
            if self.cocalibrated_4plane(&plane)? {
                cocalibrated.push(indices);
            }
        }
        Ok(PlaneCensus {
            calibrated,
            cocalibrated,
        })
    }

    /// The orthogonal splitting spanned by an orthonormal 2-frame:
    /// `E = span(u, v, u x v)` with its orthogonal complement `V`.
    /// Both factors are verified — `E` calibrated, `V` cocalibrated —
    /// before being returned.
    pub fn calibrated_splitting(&self, u: &Vector, v: &Vector) -> Result<(Plane, Plane)> {
        let w = self.cross(u, v)?;
        if w.is_zero() {
            return Err(Error::Verification(
                "cross product of the frame is degenerate".into(),
            ));
        }
        let e_plane = Plane::from_orthonormal_basis(vec![u.clone(), v.clone(), w])?;
        let v_plane = e_plane.orthogonal_complement()?;
        let check = self.calibrated_3plane(&e_plane)?;
        if !check.calibrated {
            return Err(Error::Verification(format!(
                "span(u, v, u x v) failed the calibration test: phi = {}",
                check.phi_value
            )));
        }
        if !self.cocalibrated_4plane(&v_plane)? {
            return Err(Error::Verification(
                "orthogonal complement failed the cocalibration test".into(),
            ));
        }
        Ok((e_plane, v_plane))
    }
}

/// Convert a 1-form to the metric-dual vector (standard Euclidean metric,
/// so coordinates carry over).
fn one_form_to_vector(form: &Form) -> Vector {
    let mut coords = vec![Rational::zero(); form.dim()];
    for (blade, coeff) in form.terms() {
        let idx = blade.indices();
        coords[idx[0] - 1] = coeff.clone();
    }
    Vector::new(coords)
}

/// Outcome of the calibration test on a 3-plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalibrationCheck {
    /// Whether the plane is calibrated.
    pub calibrated: bool,
    /// Orientation sign of the calibrated plane (`phi` restricts to
    /// `orientation * volume`); `None` when not calibrated.
    pub orientation: Option<i8>,
    /// The exact value of `phi` on the oriented orthonormal basis.
    pub phi_value: Rational,
}

/// A calibrated coordinate 3-plane with its orientation sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalibratedPlane {
    pub indices: Vec<usize>,
    pub orientation: i8,
}

/// Census of calibrated coordinate planes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCensus {
    pub calibrated: Vec<CalibratedPlane>,
    pub cocalibrated: Vec<Vec<usize>>,
}

impl PlaneCensus {
    /// True when the cocalibrated index sets are exactly the complements
    /// of the calibrated ones.
    pub fn complementary(&self) -> bool {
        if self.calibrated.len() != self.cocalibrated.len() {
            return false;
        }
        let mut complements: Vec<Vec<usize>> = self
            .calibrated
            .iter()
            .map(|p| (1..=DIM).filter(|i| !p.indices.contains(i)).collect())
            .collect();
        complements.sort();
        let mut cocal = self.cocalibrated.clone();
        cocal.sort();
        complements == cocal
    }
}

/// A plane with an exact orthonormal basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Plane {
    /// Coordinate plane spanned by the given axes (1-based indices).
    pub fn from_indices(ambient: usize, indices: &[usize]) -> Result<Self> {
        let mut seen = Vec::new();
        for &i in indices {
            if i == 0 || i > ambient {
                return Err(Error::shape(format!("axis index {i} out of range")));
            }
            if seen.contains(&i) {
                return Err(Error::shape(format!("repeated axis index {i}")));
            }
            seen.push(i);
        }
        let basis = indices
            .iter()
            .map(|&i| Vector::basis(ambient, i))
            .collect();
        Ok(Plane { ambient, basis })
    }

    /// Build from spanning vectors that must already be exactly
    /// orthonormal; anything else is rejected.
    pub fn from_orthonormal_basis(basis: Vec<Vector>) -> Result<Self> {
        let ambient = basis
            .first()
            .map(Vector::dim)
            .ok_or_else(|| Error::shape("empty basis"))?;
        for (i, u) in basis.iter().enumerate() {
            if u.dim() != ambient {
                return Err(Error::shape("basis vectors of mixed dimension"));
            }
            if !u.is_unit() {
                return Err(Error::NotOrthonormal(format!(
                    "basis vector {u} has squared norm {}",
                    u.norm_sq()
                )));
            }
            for w in basis.iter().skip(i + 1) {
                let d = u.dot(w)?;
                if !d.is_zero() {
                    return Err(Error::NotOrthonormal(format!(
                        "basis vectors {u} and {w} have inner product {d}"
                    )));
                }
            }
        }
        Ok(Plane { ambient, basis })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// If every basis vector is a signed coordinate axis, the sorted axis
    /// indices; otherwise `None`.
    pub fn axis_indices(&self) -> Option<Vec<usize>> {
        let mut indices: Vec<usize> = self
            .basis
            .iter()
            .map(|v| v.as_signed_axis().map(|(i, _)| i))
            .collect::<Option<_>>()?;
        indices.sort_unstable();
        Some(indices)
    }

    /// Exact membership test.
    pub fn contains(&self, v: &Vector) -> Result<bool> {
        if v.dim() != self.ambient {
            return Err(Error::shape("vector dimension does not match plane"));
        }
        // Orthonormal basis: the projection is Σ <v, b_i> b_i.
        let mut projection = Vector::zero(self.ambient);
        for b in &self.basis {
            let c = v.dot(b)?;
            projection = projection.add(&b.scale(&c))?;
        }
        Ok(projection == *v)
    }

    /// Orthonormal basis of the orthogonal complement, when one exists
    /// over the rationals.
    pub fn orthogonal_complement(&self) -> Result<Plane> {
        // Kernel of the matrix whose rows are the basis vectors.
        let m = Matrix::from_fn(self.basis.len(), self.ambient, |i, j| {
            self.basis[i].get(j).clone()
        });
        let kernel = rational_kernel_basis(&m);
        let raw: Vec<Vector> = kernel.into_iter().map(Vector::new).collect();
        let ortho = rational_orthonormalize(&raw)?;
        Plane::from_orthonormal_basis(ortho)
    }
}

impl fmt::Display for Plane {
    /// Renders as `span(e1, e2, e3)` for coordinate planes, or with the
    /// explicit basis vectors otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .basis
            .iter()
            .map(|v| match v.as_signed_axis() {
                Some((i, 1)) => format!("e{i}"),
                Some((i, _)) => format!("-e{i}"),
                None => v.to_string(),
            })
            .collect();
        write!(f, "span({})", parts.join(", "))
    }
}

/// Gram-Schmidt over the rationals.  Succeeds only when every normalizing
/// square root exists in `Q`; otherwise the plane has no exact orthonormal
/// basis in this representation and the error says so.
pub fn rational_orthonormalize(vectors: &[Vector]) -> Result<Vec<Vector>> {
    let mut ortho: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut residual = v.clone();
        for u in &ortho {
            let c = residual.dot(u)?;
            residual = residual.sub(&u.scale(&c))?;
        }
        if residual.is_zero() {
            return Err(Error::shape("vectors are linearly dependent"));
        }
        let norm_sq = residual.norm_sq();
        let norm = rational_sqrt(&norm_sq).ok_or_else(|| {
            Error::NotRationallyNormalizable(format!(
                "squared norm {norm_sq} is not a rational square"
            ))
        })?;
        let inv = Rational::one() / norm;
        ortho.push(residual.scale(&inv));
    }
    Ok(ortho)
}
