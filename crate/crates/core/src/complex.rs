//! The shared graded-complex container and its homology.
//!
//! Degrees count performed operations: degree 0 is the fully split state
//! and each differential raises the degree by one. For a word of `n`
//! letters the tensor ("bar") index of degree `g` is `n - g`.

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::{rank_bounded, IntMatrix};
use crate::DEFAULT_WORK_LIMIT;

/// A complex of free modules with integer differentials of square zero.
///
/// `basis_labels[g]` names the basis of degree `g`; `differentials[g]` maps
/// degree `g` to degree `g + 1` (so it has `dim(g)` columns and `dim(g+1)`
/// rows). A complex with no degrees at all is the zero complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComplex {
    basis_labels: Vec<Vec<String>>,
    differentials: Vec<IntMatrix>,
}

impl GradedComplex {
    pub fn new(basis_labels: Vec<Vec<String>>, differentials: Vec<IntMatrix>) -> Result<Self> {
        if !basis_labels.is_empty() && differentials.len() + 1 != basis_labels.len() {
            return Err(Error::Structural(format!(
                "{} degrees need {} differentials, got {}",
                basis_labels.len(),
                basis_labels.len() - 1,
                differentials.len()
            )));
        }
        let c = GradedComplex { basis_labels, differentials };
        c.check_shapes()?;
        Ok(c)
    }

    pub fn empty() -> Self {
        GradedComplex { basis_labels: Vec::new(), differentials: Vec::new() }
    }

    /// Number of graded pieces (`gmax + 1`, or 0 for the zero complex).
    pub fn degrees(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.basis_labels.get(degree).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis_labels.iter().map(Vec::len).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.basis_labels.iter().map(Vec::len).sum()
    }

    pub fn labels(&self, degree: usize) -> &[String] {
        &self.basis_labels[degree]
    }

    /// The differential out of `degree`; `None` at the top degree.
    pub fn differential(&self, degree: usize) -> Option<&IntMatrix> {
        self.differentials.get(degree)
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    fn check_shapes(&self) -> Result<()> {
        for (g, d) in self.differentials.iter().enumerate() {
            if d.cols() != self.dim(g) || d.rows() != self.dim(g + 1) {
                return Err(Error::Structural(format!(
                    "differential at degree {g} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    self.dim(g + 1),
                    self.dim(g)
                )));
            }
        }
        Ok(())
    }
}

/// Per-degree homology dimensions of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    pub dims: Vec<usize>,
    pub total: usize,
    pub euler: i64,
}

impl HomologyProfile {
    pub fn from_dims(dims: Vec<usize>) -> Self {
        let total = dims.iter().sum();
        let euler = alternating_sum(&dims);
        HomologyProfile { dims, total, euler }
    }

    pub fn zero() -> Self {
        HomologyProfile { dims: Vec::new(), total: 0, euler: 0 }
    }

    /// Dims with trailing zeros removed, for comparisons across routes
    /// that disagree about the top degree.
    pub fn normalized_dims(&self) -> Vec<usize> {
        let mut dims = self.dims.clone();
        while dims.last() == Some(&0) {
            dims.pop();
        }
        dims
    }

    /// Graded tensor product: dimensions convolve.
    pub fn convolve(&self, other: &HomologyProfile) -> HomologyProfile {
        let a = self.normalized_dims();
        let b = other.normalized_dims();
        if a.is_empty() || b.is_empty() {
            return HomologyProfile::zero();
        }
        let mut dims = vec![0usize; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                dims[i + j] += x * y;
            }
        }
        HomologyProfile::from_dims(dims)
    }

    /// Shift every degree up by one.
    pub fn shifted(&self) -> HomologyProfile {
        if self.total == 0 {
            return HomologyProfile::zero();
        }
        let mut dims = vec![0usize];
        dims.extend(self.normalized_dims());
        HomologyProfile::from_dims(dims)
    }

    /// Degreewise sum.
    pub fn add(&self, other: &HomologyProfile) -> HomologyProfile {
        let mut dims = self.normalized_dims();
        let b = other.normalized_dims();
        if b.len() > dims.len() {
            dims.resize(b.len(), 0);
        }
        for (i, &y) in b.iter().enumerate() {
            dims[i] += y;
        }
        HomologyProfile::from_dims(dims)
    }
}

fn alternating_sum(dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(g, &d)| if g % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

/// True iff every composite of consecutive differentials vanishes over the
/// integers and all entries lie in {-1, 0, 1}.
pub fn validate_complex(c: &GradedComplex) -> Result<bool> {
    c.check_shapes()?;
    for d in c.differentials() {
        if !d.entries_are_units() && !d.is_zero() {
            return Ok(false);
        }
    }
    for g in 0..c.differentials().len().saturating_sub(1) {
        let square = c.differentials()[g + 1].compose(&c.differentials()[g])?;
        if !square.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Alternating sum of basis dimensions by degree.
pub fn euler_characteristic(c: &GradedComplex) -> i64 {
    alternating_sum(&c.dims())
}

/// Homology dimensions over `field` with the default work limit.
pub fn homology_dims(c: &GradedComplex, field: FieldSpec) -> Result<HomologyProfile> {
    homology_dims_bounded(c, field, DEFAULT_WORK_LIMIT)
}

pub fn homology_dims_bounded(
    c: &GradedComplex,
    field: FieldSpec,
    limit: usize,
) -> Result<HomologyProfile> {
    let degrees = c.degrees();
    if degrees == 0 {
        return Ok(HomologyProfile::zero());
    }
    let mut ranks = vec![0usize; degrees];
    for (g, d) in c.differentials().iter().enumerate() {
        ranks[g] = rank_bounded(d, field, limit)?;
    }
    let mut dims = Vec::with_capacity(degrees);
    for g in 0..degrees {
        let ker = c.dim(g) - ranks.get(g).copied().unwrap_or(0);
        let im_prev = if g == 0 { 0 } else { ranks[g - 1] };
        if ker < im_prev {
            return Err(Error::InternalConsistency(format!(
                "degree {g}: kernel {ker} smaller than incoming image {im_prev}"
            )));
        }
        dims.push(ker - im_prev);
    }
    let profile = HomologyProfile::from_dims(dims);
    debug_assert_eq!(profile.euler, euler_characteristic(c));
    Ok(profile)
}
