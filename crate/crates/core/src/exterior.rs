//! Exterior algebra with exact coefficients on a small flat space.
//!
//! Forms are stored blade-sparse: a `k`-form is a map from index subsets
//! (strictly increasing, 1-based) to coefficients, with zero coefficients
//! never stored.  The metric is the standard Euclidean one and the
//! orientation is `e^1 ∧ ... ∧ e^n`, so Hodge duality is pure sign
//! combinatorics on index subsets.
//!
//! Conventions that matter and are easy to get wrong elsewhere:
//!
//! * contraction inserts the vector into the **first** slot:
//!   `(v ⌟ a)(w_2, ..., w_k) = a(v, w_2, ..., w_k)`;
//! * `pullback(L, a)` precomposes with `L`: `(L^* a)(v, ...) = a(Lv, ...)`,
//!   so an `n x m` matrix pulls a form on `R^n` back to a form on `R^m`;
//! * `*(e^I) = sign(I, I^c) e^{I^c}` where the sign is the parity of the
//!   shuffle sorting `(I, I^c)` into `(1, ..., n)`.
//!
//! Coefficients are generic over [`Scalar`]; the crate root fixes the
//! exact-rational instantiation used by everything downstream.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mat::Matrix;
use crate::scalar::{parse_rational, Rational, Scalar};

/// Maximum supported ambient dimension (indices are packed in a `u16`).
pub const MAX_DIM: usize = 12;

/// An index subset `{i_1 < i_2 < ... < i_k} ⊆ {1, ..., n}` naming a basis
/// `k`-covector `e^{i_1} ∧ ... ∧ e^{i_k}`.  Packed as a bitmask, so the
/// canonical strictly-increasing representation is automatic.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u16);

impl Blade {
    pub fn empty() -> Self {
        Blade(0)
    }

    /// Build from 1-based indices, which must be strictly increasing.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u16;
        let mut prev = 0usize;
        for &i in indices {
            if i == 0 || i > MAX_DIM {
                return Err(Error::parse(format!("blade index {i} out of range")));
            }
            if i <= prev {
                return Err(Error::parse(format!(
                    "blade indices must be strictly increasing, got {indices:?}"
                )));
            }
            mask |= 1 << (i - 1);
            prev = i;
        }
        Ok(Blade(mask))
    }

    pub fn indices(&self) -> Vec<usize> {
        (1..=MAX_DIM).filter(|&i| self.contains(i)).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, index: usize) -> bool {
        index >= 1 && index <= MAX_DIM && self.0 & (1 << (index - 1)) != 0
    }

    pub fn max_index(&self) -> usize {
        (16 - self.0.leading_zeros()) as usize
    }

    /// Complement within `{1, ..., n}`.
    pub fn complement(&self, n: usize) -> Blade {
        let full = ((1u32 << n) - 1) as u16;
        Blade(full & !self.0)
    }

    /// Sign of `e^self ∧ e^other` relative to the sorted merge, or `None`
    /// when the subsets overlap (the wedge vanishes).
    fn wedge_sign(&self, other: &Blade) -> Option<(i8, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let inversions = Self::crossings(other.0, self.0);
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, Blade(self.0 | other.0)))
    }

    /// Number of pairs `(i, j)` with `i` in `a`, `j` in `b`, `i > j` — the
    /// transpositions needed to merge the concatenation `(b, a)`... read
    /// carefully: counts crossings of `a`-elements over smaller
    /// `b`-elements.
    fn crossings(b: u16, a: u16) -> u32 {
        let mut count = 0u32;
        let mut rest = b;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            let jbit = low.trailing_zeros();
            count += (a >> (jbit + 1)).count_ones();
            rest &= rest - 1;
        }
        count
    }

    /// Sign `(-1)^p` where `p` is the position (0-based) of `index` in the
    /// increasing index list; used by contraction.
    fn removal_sign(&self, index: usize) -> i8 {
        let below = self.0 & ((1u16 << (index - 1)) - 1);
        if below.count_ones() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Sign of the shuffle sorting `(self, complement)` into `(1..n)`.
    fn complement_sign(&self, n: usize) -> i8 {
        let comp = self.complement(n);
        if Self::crossings(comp.0, self.0) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl Ord for Blade {
    /// Lexicographic order on the increasing index sequences, computed on
    /// the masks: the lowest differing index decides, and it favors the
    /// blade that contains it.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.0 == other.0 {
            return std::cmp::Ordering::Equal;
        }
        let diff = self.0 ^ other.0;
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx = self.indices();
        if idx.is_empty() {
            return write!(f, "1");
        }
        if idx.iter().all(|&i| i <= 9) {
            let digits: String = idx.iter().map(|i| i.to_string()).collect();
            write!(f, "e{digits}")
        } else {
            let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            write!(f, "e{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parse `1` (empty blade), `e123` (single-digit indices) or `e1,10,12`.
pub fn parse_blade(s: &str) -> Result<Blade> {
    if s == "1" {
        return Ok(Blade::empty());
    }
    let body = s
        .strip_prefix('e')
        .ok_or_else(|| Error::parse(format!("blade must start with 'e': {s:?}")))?;
    if body.is_empty() {
        return Err(Error::parse("blade has no indices"));
    }
    let indices: Vec<usize> = if body.contains(',') {
        body.split(',')
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::parse(format!("bad blade index {p:?}")))
            })
            .collect::<Result<_>>()?
    } else {
        body.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::parse(format!("bad blade digit {c:?}")))
            })
            .collect::<Result<_>>()?
    };
    Blade::from_indices(&indices)
}

/// All degree-`k` blades on `{1, ..., n}` in ascending (lexicographic)
/// order.
pub fn blades_of_degree(n: usize, k: usize) -> Vec<Blade> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Blade>) {
        if current.len() == k {
            out.push(Blade::from_indices(current).expect("generated indices are valid"));
            return;
        }
        for i in start..=n {
            current.push(i);
            rec(n, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(n, k, 1, &mut current, &mut out);
    out
}

/// A vector in `R^n` with exact coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vector<S> {
    coords: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Vector { coords }
    }

    pub fn zero(n: usize) -> Self {
        Vector {
            coords: vec![S::zero(); n],
        }
    }

    /// Standard basis vector `e_i`, `i` 1-based to match blade indices.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "basis index out of range");
        let mut v = Self::zero(n);
        v.coords[i - 1] = S::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    /// 0-based coordinate access.
    pub fn get(&self, i: usize) -> &S {
        &self.coords[i]
    }

    pub fn dot(&self, other: &Self) -> Result<S> {
        if self.dim() != other.dim() {
            return Err(Error::shape("dot product of vectors of unequal dimension"));
        }
        let mut acc = S::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc = acc + a.clone() * b.clone();
        }
        Ok(acc)
    }

    pub fn norm_sq(&self) -> S {
        self.dot(self).expect("same vector")
    }

    pub fn is_unit(&self) -> bool {
        self.norm_sq() == S::one()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::shape("vector addition shape mismatch"));
        }
        Ok(Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::shape("vector subtraction shape mismatch"));
        }
        Ok(Vector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        Vector::new(self.coords.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        Vector::new(self.coords.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The metric-dual 1-form `Σ v_i e^i`.
    pub fn one_form(&self) -> KForm<S> {
        let terms = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                (
                    Blade::from_indices(&[i + 1]).expect("index in range"),
                    c.clone(),
                )
            });
        KForm::from_term_iter(self.dim(), 1, terms)
    }

    /// The unique coordinate axis `±e_i` this vector equals, if any:
    /// returns `(i, sign)` 1-based.
    pub fn as_signed_axis(&self) -> Option<(usize, i8)> {
        let mut found: Option<(usize, i8)> = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() {
                return None;
            }
            if *c == S::one() {
                found = Some((i + 1, 1));
            } else if *c == -S::one() {
                found = Some((i + 1, -1));
            } else {
                return None;
            }
        }
        found
    }
}

impl Vector<Rational> {
    /// Parse a comma-separated rational tuple, e.g. `3/5,4/5,0,0,0,0,0`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != n {
            return Err(Error::parse(format!(
                "expected {n} comma-separated coordinates, got {}",
                parts.len()
            )));
        }
        Ok(Vector::new(
            parts
                .iter()
                .map(|p| parse_rational(p))
                .collect::<Result<_>>()?,
        ))
    }
}

impl<S: Scalar> fmt::Display for Vector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A `k`-form with coefficients in `S`, blade-sparse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KForm<S> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Blade, S>,
}

impl<S: Scalar> KForm<S> {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension exceeds supported maximum");
        KForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(dim: usize, blade: Blade, coeff: S) -> Result<Self> {
        if blade.max_index() > dim {
            return Err(Error::shape(format!(
                "blade {blade} does not fit in dimension {dim}"
            )));
        }
        let mut form = Self::zero(dim, blade.degree());
        if !coeff.is_zero() {
            form.terms.insert(blade, coeff);
        }
        Ok(form)
    }

    /// Build from signed index tuples, the ergonomic constructor used for
    /// the calibration forms:
    /// `KForm::from_signed_indices(7, &[(&[1,2,3], 1), ...])`.
    pub fn from_signed_indices(dim: usize, terms: &[(&[usize], i64)]) -> Result<Self> {
        let degree = terms
            .first()
            .map(|(idx, _)| idx.len())
            .ok_or_else(|| Error::shape("no terms given; use KForm::zero".to_string()))?;
        let mut form = Self::zero(dim, degree);
        for &(indices, c) in terms {
            if indices.len() != degree {
                return Err(Error::shape("mixed degrees in term list"));
            }
            let blade = Blade::from_indices(indices)?;
            if blade.max_index() > dim {
                return Err(Error::shape(format!(
                    "blade {blade} does not fit in dimension {dim}"
                )));
            }
            let coeff = num_traits::FromPrimitive::from_i64(c)
                .expect("small integer coefficient fits in scalar type");
            form.accumulate(blade, coeff);
        }
        Ok(form)
    }

    pub(crate) fn from_term_iter(
        dim: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Blade, S)>,
    ) -> Self {
        let mut form = Self::zero(dim, degree);
        for (blade, coeff) in terms {
            form.accumulate(blade, coeff);
        }
        form
    }

    fn accumulate(&mut self, blade: Blade, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.remove(&blade);
        let total = match entry {
            Some(existing) => existing + coeff,
            None => coeff,
        };
        if !total.is_zero() {
            self.terms.insert(blade, total);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, blade: &Blade) -> S {
        self.terms.get(blade).cloned().unwrap_or_else(S::zero)
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::shape(format!(
                "{op} of forms with mismatched shape: ({}, deg {}) vs ({}, deg {})",
                self.dim, self.degree, other.dim, other.degree
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sum")?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.accumulate(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        KForm {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| (*b, -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (b, coeff) in &self.terms {
            out.accumulate(*b, coeff.clone() * c.clone());
        }
        out
    }

    /// Exterior product.  Degrees add; if the sum exceeds the dimension
    /// the result is the (necessarily zero) form of that degree.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::shape("wedge of forms on different spaces"));
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (b1, c1) in &self.terms {
            for (b2, c2) in &other.terms {
                if let Some((sign, merged)) = b1.wedge_sign(b2) {
                    let mut coeff = c1.clone() * c2.clone();
                    if sign < 0 {
                        coeff = -coeff;
                    }
                    out.accumulate(merged, coeff);
                }
            }
        }
        Ok(out)
    }

    /// First-slot contraction `v ⌟ a`.
    pub fn contract(&self, v: &Vector<S>) -> Result<Self> {
        if v.dim() != self.dim {
            return Err(Error::shape("contraction with vector of wrong dimension"));
        }
        if self.degree == 0 {
            return Err(Error::shape("contraction of a 0-form is undefined"));
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (blade, coeff) in &self.terms {
            for index in blade.indices() {
                let vi = v.get(index - 1);
                if vi.is_zero() {
                    continue;
                }
                let sign = blade.removal_sign(index);
                let mut reduced = *blade;
                reduced.0 &= !(1 << (index - 1));
                let mut c = coeff.clone() * vi.clone();
                if sign < 0 {
                    c = -c;
                }
                out.accumulate(reduced, c);
            }
        }
        Ok(out)
    }

    /// Hodge star for the Euclidean metric and orientation
    /// `e^1 ∧ ... ∧ e^n`.
    pub fn hodge_star(&self) -> Result<Self> {
        if self.degree > self.dim {
            return Err(Error::shape(format!(
                "cannot star a degree-{} form in dimension {}",
                self.degree, self.dim
            )));
        }
        let mut out = Self::zero(self.dim, self.dim - self.degree);
        for (blade, coeff) in &self.terms {
            let sign = blade.complement_sign(self.dim);
            let comp = blade.complement(self.dim);
            let c = if sign < 0 {
                -coeff.clone()
            } else {
                coeff.clone()
            };
            out.accumulate(comp, c);
        }
        Ok(out)
    }

    /// Pullback along the linear map with matrix `m`; `m` must have as
    /// many rows as this form's dimension, and the result lives on the
    /// column space: `(m^* a)(v_1, ..., v_k) = a(m v_1, ..., m v_k)`.
    pub fn pullback(&self, m: &Matrix<S>) -> Result<Self> {
        if m.nrows() != self.dim {
            return Err(Error::shape(format!(
                "pullback matrix has {} rows, form lives in dimension {}",
                m.nrows(),
                self.dim
            )));
        }
        let target_dim = m.ncols();
        if target_dim > MAX_DIM {
            return Err(Error::shape("pullback target dimension too large"));
        }
        let mut out = Self::zero(target_dim, self.degree);
        if self.degree > target_dim {
            return Ok(out);
        }
        let target_blades = blades_of_degree(target_dim, self.degree);
        for (blade, coeff) in &self.terms {
            let row_idx: Vec<usize> = blade.indices().iter().map(|i| i - 1).collect();
            for tb in &target_blades {
                let col_idx: Vec<usize> = tb.indices().iter().map(|j| j - 1).collect();
                let minor = m.minor_det(&row_idx, &col_idx)?;
                if minor.is_zero() {
                    continue;
                }
                out.accumulate(*tb, coeff.clone() * minor);
            }
        }
        Ok(out)
    }

    /// Evaluate on exactly `degree` vectors, by iterated first-slot
    /// contraction.
    pub fn evaluate(&self, vectors: &[Vector<S>]) -> Result<S> {
        if vectors.len() != self.degree {
            return Err(Error::shape(format!(
                "evaluating a degree-{} form on {} vectors",
                self.degree,
                vectors.len()
            )));
        }
        let mut current = self.clone();
        for v in vectors {
            current = current.contract(v)?;
        }
        Ok(current.coefficient(&Blade::empty()))
    }

    /// Exterior derivative of a constant-coefficient form: identically
    /// zero, one degree up.  Exists so that Cartan-formula computations
    /// genuinely compute both terms instead of asserting the answer.
    pub fn exterior_derivative(&self) -> Self {
        Self::zero(self.dim, self.degree + 1)
    }

    /// Lie derivative along a constant vector field on flat space, via the
    /// Cartan formula `L_v = d ∘ ι_v + ι_v ∘ d`.  Both terms are computed;
    /// for constant forms and constant fields they each vanish, and the
    /// returned form records that fact rather than assuming it.
    pub fn lie_derivative_flat(&self, v: &Vector<S>) -> Result<Self> {
        let term_outer = self.exterior_derivative().contract(v)?;
        let term_inner = if self.degree > 0 {
            self.contract(v)?.exterior_derivative()
        } else {
            Self::zero(self.dim, 0)
        };
        term_outer.add(&term_inner)
    }
}

impl<S: Scalar> fmt::Display for KForm<S> {
    /// Signed monomial list, e.g. `+1*e123 -1/2*e45`; the zero form prints
    /// as `0`.  Terms appear in ascending blade order, so output is
    /// deterministic and diff-friendly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(blade, coeff)| {
                if coeff.is_negative() {
                    format!("-{}*{}", -coeff.clone(), blade)
                } else {
                    format!("+{coeff}*{blade}")
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" "))
    }
}

impl KForm<Rational> {
    /// Parse the [`fmt::Display`] serialization back into a form of known
    /// dimension and degree.
    pub fn parse(dim: usize, degree: usize, s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed == "0" {
            return Ok(Self::zero(dim, degree));
        }
        let mut form = Self::zero(dim, degree);
        for token in trimmed.split_whitespace() {
            let (sign, rest) = match token.chars().next() {
                Some('+') => (1i64, &token[1..]),
                Some('-') => (-1i64, &token[1..]),
                _ => {
                    return Err(Error::parse(format!(
                        "form term {token:?} must begin with an explicit sign"
                    )))
                }
            };
            let (coeff_str, blade_str) = rest.split_once('*').ok_or_else(|| {
                Error::parse(format!("form term {token:?} is missing '*'"))
            })?;
            let mut coeff = parse_rational(coeff_str)?;
            if sign < 0 {
                coeff = -coeff;
            }
            let blade = parse_blade(blade_str)?;
            if blade.degree() != degree {
                return Err(Error::parse(format!(
                    "term {token:?} has degree {}, expected {degree}",
                    blade.degree()
                )));
            }
            if blade.max_index() > dim {
                return Err(Error::parse(format!(
                    "term {token:?} does not fit in dimension {dim}"
                )));
            }
            form.accumulate(blade, coeff);
        }
        Ok(form)
    }
}

/// A complex-valued form, stored as an exact pair (real, imaginary).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexKForm<S> {
    pub re: KForm<S>,
    pub im: KForm<S>,
}

impl<S: Scalar> ComplexKForm<S> {
    pub fn new(re: KForm<S>, im: KForm<S>) -> Result<Self> {
        if re.dim() != im.dim() || re.degree() != im.degree() {
            return Err(Error::shape(
                "real and imaginary parts must share dimension and degree",
            ));
        }
        Ok(ComplexKForm { re, im })
    }

    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    pub fn degree(&self) -> usize {
        self.re.degree()
    }

    /// Evaluate to an exact complex number `(re, im)`.
    pub fn evaluate(&self, vectors: &[Vector<S>]) -> Result<(S, S)> {
        Ok((self.re.evaluate(vectors)?, self.im.evaluate(vectors)?))
    }

    pub fn pullback(&self, m: &Matrix<S>) -> Result<Self> {
        Ok(ComplexKForm {
            re: self.re.pullback(m)?,
            im: self.im.pullback(m)?,
        })
    }

    /// Multiply by the exact complex scalar `a + b i`.
    pub fn scale_complex(&self, a: &S, b: &S) -> Result<Self> {
        let re = self.re.scale(a).sub(&self.im.scale(b))?;
        let im = self.im.scale(a).add(&self.re.scale(b))?;
        Ok(ComplexKForm { re, im })
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<S: Scalar> fmt::Display for ComplexKForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i*({})", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn e(indices: &[usize]) -> Blade {
        Blade::from_indices(indices).unwrap()
    }

    fn qvec(coords: &[i64]) -> Vector<Rational> {
        Vector::new(coords.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn blade_construction_rejects_bad_indices() {
        assert!(Blade::from_indices(&[1, 1]).is_err());
        assert!(Blade::from_indices(&[2, 1]).is_err());
        assert!(Blade::from_indices(&[0]).is_err());
        assert!(Blade::from_indices(&[13]).is_err());
        assert_eq!(e(&[1, 2, 3]).degree(), 3);
    }

    #[test]
    fn blade_order_is_lexicographic() {
        let mut blades = vec![
            e(&[3, 5, 6]),
            e(&[1, 2, 3]),
            e(&[2, 4, 6]),
            e(&[1, 6, 7]),
            e(&[1, 4, 5]),
            e(&[3, 4, 7]),
            e(&[2, 5, 7]),
        ];
        blades.sort();
        let rendered: Vec<String> = blades.iter().map(|b| b.to_string()).collect();
        assert_eq!(
            rendered,
            vec!["e123", "e145", "e167", "e246", "e257", "e347", "e356"]
        );
    }

    #[test]
    fn blade_display_parse_round_trip() {
        for b in [e(&[]), e(&[1]), e(&[1, 2, 3]), e(&[2, 5, 7])] {
            assert_eq!(parse_blade(&b.to_string()).unwrap(), b);
        }
        let wide = e(&[1, 10, 12]);
        assert_eq!(wide.to_string(), "e1,10,12");
        assert_eq!(parse_blade("e1,10,12").unwrap(), wide);
    }

    #[test]
    fn blades_of_degree_enumerates_binomially() {
        assert_eq!(blades_of_degree(7, 3).len(), 35);
        assert_eq!(blades_of_degree(7, 0), vec![Blade::empty()]);
        assert_eq!(blades_of_degree(4, 4).len(), 1);
        let degree_2 = blades_of_degree(3, 2);
        assert_eq!(degree_2, vec![e(&[1, 2]), e(&[1, 3]), e(&[2, 3])]);
    }

    #[test]
    fn wedge_of_disjoint_blades_hand_signs() {
        // e1 ∧ e2 = e12, e2 ∧ e1 = -e12
        let e1 = KForm::<Rational>::monomial(3, e(&[1]), rat_int(1)).unwrap();
        let e2 = KForm::<Rational>::monomial(3, e(&[2]), rat_int(1)).unwrap();
        assert_eq!(
            e1.wedge(&e2).unwrap(),
            KForm::monomial(3, e(&[1, 2]), rat_int(1)).unwrap()
        );
        assert_eq!(
            e2.wedge(&e1).unwrap(),
            KForm::monomial(3, e(&[1, 2]), rat_int(-1)).unwrap()
        );
        // e13 ∧ e2 = -e123 (one transposition to sort 1,3,2)
        let e13 = KForm::<Rational>::monomial(3, e(&[1, 3]), rat_int(1)).unwrap();
        assert_eq!(
            e13.wedge(&e2).unwrap(),
            KForm::monomial(3, e(&[1, 2, 3]), rat_int(-1)).unwrap()
        );
        // Overlapping blade: zero.
        assert!(e1
            .wedge(&KForm::monomial(3, e(&[1, 2]), rat_int(1)).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn contraction_hand_cases() {
        // v = e2: v ⌟ e123 should give -e13 (e2 in slot 2 of e1∧e2∧e3).
        let form = KForm::<Rational>::monomial(3, e(&[1, 2, 3]), rat_int(1)).unwrap();
        let v = Vector::basis(3, 2);
        assert_eq!(
            form.contract(&v).unwrap(),
            KForm::monomial(3, e(&[1, 3]), rat_int(-1)).unwrap()
        );
        // First-slot convention: (v ⌟ a)(w) = a(v, w).
        let w = Vector::basis(3, 3);
        let direct = form.evaluate(&[v.clone(), Vector::basis(3, 1), w.clone()]).unwrap();
        let via = form.contract(&v).unwrap().evaluate(&[Vector::basis(3, 1), w]).unwrap();
        assert_eq!(direct, via);
        // Degree-0 contraction is rejected.
        let scalar = KForm::<Rational>::monomial(3, Blade::empty(), rat_int(5)).unwrap();
        assert!(scalar.contract(&Vector::basis(3, 1)).is_err());
    }

    #[test]
    fn hodge_star_hand_cases_in_r3() {
        let star = |idx: &[usize]| {
            KForm::<Rational>::monomial(3, e(idx), rat_int(1))
                .unwrap()
                .hodge_star()
                .unwrap()
        };
        assert_eq!(star(&[1]), KForm::monomial(3, e(&[2, 3]), rat_int(1)).unwrap());
        assert_eq!(star(&[2]), KForm::monomial(3, e(&[1, 3]), rat_int(-1)).unwrap());
        assert_eq!(star(&[3]), KForm::monomial(3, e(&[1, 2]), rat_int(1)).unwrap());
        assert_eq!(
            star(&[]),
            KForm::monomial(3, e(&[1, 2, 3]), rat_int(1)).unwrap()
        );
    }

    #[test]
    fn double_star_is_plus_one_in_odd_dimension() {
        for k in 0..=7 {
            for blade in blades_of_degree(7, k) {
                let form = KForm::<Rational>::monomial(7, blade, rat_int(1)).unwrap();
                let twice = form.hodge_star().unwrap().hodge_star().unwrap();
                assert_eq!(twice, form, "** != id on {blade}");
            }
        }
    }

    #[test]
    fn double_star_sign_in_even_dimension() {
        // In R^6, ** = (-1)^{k(6-k)}: -1 exactly for odd k.
        for k in 0..=6 {
            let expected_sign = if (k * (6 - k)) % 2 == 0 { 1 } else { -1 };
            for blade in blades_of_degree(6, k) {
                let form = KForm::<Rational>::monomial(6, blade, rat_int(1)).unwrap();
                let twice = form.hodge_star().unwrap().hodge_star().unwrap();
                assert_eq!(twice, form.scale(&rat_int(expected_sign)));
            }
        }
    }

    /// Independent oracle for evaluation: expand the determinant of the
    /// coordinate matrix blade by blade.
    fn evaluate_oracle(form: &KForm<Rational>, vectors: &[Vector<Rational>]) -> Rational {
        let mut acc = Rational::zero();
        for (blade, coeff) in form.terms() {
            let idx = blade.indices();
            let m = Matrix::from_fn(idx.len(), vectors.len(), |r, c| {
                vectors[c].get(idx[r] - 1).clone()
            });
            acc = acc + coeff.clone() * m.det().unwrap();
        }
        acc
    }

    #[test]
    fn evaluation_matches_determinant_oracle() {
        let form = KForm::<Rational>::from_signed_indices(
            4,
            &[(&[1, 2], 1), (&[1, 3], -2), (&[2, 4], 3), (&[3, 4], 1)],
        )
        .unwrap();
        let u = qvec(&[1, 2, 0, -1]);
        let v = qvec(&[0, 1, 3, 2]);
        assert_eq!(
            form.evaluate(&[u.clone(), v.clone()]).unwrap(),
            evaluate_oracle(&form, &[u.clone(), v.clone()])
        );
        // Antisymmetry comes along for free.
        assert_eq!(
            form.evaluate(&[u.clone(), v.clone()]).unwrap(),
            -form.evaluate(&[v, u]).unwrap()
        );
    }

    #[test]
    fn pullback_respects_functoriality_on_a_hand_case() {
        // L = rotation-by-swap on R^2 followed by inclusion into R^3.
        let form = KForm::<Rational>::from_signed_indices(3, &[(&[1, 2], 1), (&[2, 3], 2)])
            .unwrap();
        let incl = Matrix::from_rows(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(0)],
        ])
        .unwrap();
        let swap = Matrix::from_rows(vec![
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(0)],
        ])
        .unwrap();
        let composed = incl.mul(&swap).unwrap();
        let two_step = form.pullback(&incl).unwrap().pullback(&swap).unwrap();
        let one_step = form.pullback(&composed).unwrap();
        assert_eq!(two_step, one_step);
        // And the hand value: (incl∘swap)^* (e12 + 2 e23) = -e12 + 2*... :
        // e12(swap u, swap v) = -e12(u,v); e23 pulls back to e13-ish minor.
        assert_eq!(
            one_step.coefficient(&e(&[1, 2])),
            rat_int(-1)
        );
    }

    #[test]
    fn lie_derivative_flat_computes_both_cartan_terms() {
        let form = KForm::<Rational>::from_signed_indices(4, &[(&[1, 3], 2)]).unwrap();
        let out = form.lie_derivative_flat(&qvec(&[1, 1, 0, 0])).unwrap();
        assert_eq!(out.degree(), form.degree());
        assert!(out.is_zero());
        let scalar = KForm::<Rational>::monomial(4, Blade::empty(), rat(3, 2)).unwrap();
        assert!(scalar.lie_derivative_flat(&qvec(&[0, 1, 0, 0])).unwrap().is_zero());
    }

    #[test]
    fn display_parse_round_trip() {
        let form = KForm::<Rational>::from_signed_indices(
            7,
            &[
                (&[1, 2, 3], 1),
                (&[1, 4, 5], 1),
                (&[1, 6, 7], 1),
                (&[2, 4, 6], 1),
                (&[2, 5, 7], -1),
                (&[3, 4, 7], -1),
                (&[3, 5, 6], -1),
            ],
        )
        .unwrap();
        let text = form.to_string();
        assert_eq!(
            text,
            "+1*e123 +1*e145 +1*e167 +1*e246 -1*e257 -1*e347 -1*e356"
        );
        assert_eq!(KForm::parse(7, 3, &text).unwrap(), form);

        let fractional = KForm::<Rational>::from_term_iter(
            4,
            2,
            [(e(&[1, 2]), rat(-1, 2)), (e(&[3, 4]), rat(5, 3))],
        );
        let text = fractional.to_string();
        assert_eq!(text, "-1/2*e12 +5/3*e34");
        assert_eq!(KForm::parse(4, 2, &text).unwrap(), fractional);

        let constant = KForm::<Rational>::monomial(5, Blade::empty(), rat(7, 2)).unwrap();
        assert_eq!(constant.to_string(), "+7/2*1");
        assert_eq!(KForm::parse(5, 0, "+7/2*1").unwrap(), constant);

        let zero = KForm::<Rational>::zero(6, 2);
        assert_eq!(zero.to_string(), "0");
        assert_eq!(KForm::parse(6, 2, "0").unwrap(), zero);
    }

    #[test]
    fn parse_rejects_malformed_terms() {
        assert!(KForm::parse(7, 2, "1*e12").is_err()); // no sign
        assert!(KForm::parse(7, 2, "+1e12").is_err()); // no '*'
        assert!(KForm::parse(7, 2, "+1*e123").is_err()); // wrong degree
        assert!(KForm::parse(3, 2, "+1*e45").is_err()); // out of dimension
    }

    #[test]
    fn generic_layer_also_runs_over_floats() {
        let a = KForm::<f64>::from_term_iter(3, 1, [(e(&[1]), 2.0)]);
        let b = KForm::<f64>::from_term_iter(3, 1, [(e(&[2]), 0.5)]);
        let ab = a.wedge(&b).unwrap();
        assert_eq!(ab.coefficient(&e(&[1, 2])), 1.0);
        let starred = ab.hodge_star().unwrap();
        assert_eq!(starred.coefficient(&e(&[3])), 1.0);
    }

    #[test]
    fn complex_forms_scale_exactly() {
        let re = KForm::<Rational>::monomial(2, e(&[1]), rat_int(1)).unwrap();
        let im = KForm::<Rational>::monomial(2, e(&[2]), rat_int(1)).unwrap();
        let z = ComplexKForm::new(re, im).unwrap();
        // Multiply by i: (e1 + i e2) * i = -e2 + i e1.
        let zi = z.scale_complex(&rat_int(0), &rat_int(1)).unwrap();
        assert_eq!(zi.re, KForm::monomial(2, e(&[2]), rat_int(-1)).unwrap());
        assert_eq!(zi.im, KForm::monomial(2, e(&[1]), rat_int(1)).unwrap());
    }
}
