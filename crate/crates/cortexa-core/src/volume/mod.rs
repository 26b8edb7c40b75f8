//! The voxel-grid data model: scalar volumes, binary masks, coordinate
//! mapping, connected components, and named landmarks.
//!
//! Voxels are stored densely in x-fastest order: the linear index of
//! `(x, y, z)` is `x + nx * (y + ny * z)`. Scalar data is `f32` regardless
//! of the declared [`Dtype`]; `u8` and `i16` values are exactly
//! representable, so the tag only governs on-disk encoding.

mod affine;
mod components;
mod landmarks;

pub use affine::Affine;
pub use components::{connected_components, ComponentLabels, Connectivity};
pub use landmarks::{Landmark, LandmarkSet};

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Relative tolerance for the affine-column-norm vs. spacing consistency
/// check in [`Volume::new`].
pub const SPACING_REL_TOL: f64 = 1e-4;

/// On-disk element type tag for a [`Volume`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dtype {
    U8,
    I16,
    F32,
}

/// Errors from volume construction and coordinate mapping.
#[derive(Debug, Clone, PartialEq)]
pub enum VolumeError {
    /// Voxel buffer length does not equal `dims[0] * dims[1] * dims[2]`.
    DataLength { expected: usize, actual: usize },
    ZeroDim,
    NonPositiveSpacing([f64; 3]),
    /// Affine spatial column norms disagree with the declared spacing.
    AffineSpacingMismatch { axis: usize, column_norm: f64, spacing: f64 },
    SingularAffine,
    /// A voxel value other than 0 or 1 where a binary mask was required.
    NonBinaryVoxel { index: usize, value: f32 },
    GridMismatch,
    DuplicateLandmark(alloc::string::String),
    NonFiniteLandmark(alloc::string::String),
}

impl fmt::Display for VolumeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DataLength { expected, actual } => {
                write!(f, "voxel buffer holds {actual} values, dims require {expected}")
            }
            Self::ZeroDim => write!(f, "volume dimensions must all be positive"),
            Self::NonPositiveSpacing(s) => {
                write!(f, "spacing must be positive, got ({}, {}, {})", s[0], s[1], s[2])
            }
            Self::AffineSpacingMismatch { axis, column_norm, spacing } => write!(
                f,
                "affine column {axis} has norm {column_norm} but spacing is {spacing}"
            ),
            Self::SingularAffine => write!(f, "affine is singular; cannot map physical to voxel"),
            Self::NonBinaryVoxel { index, value } => {
                write!(f, "voxel {index} has value {value}, expected 0 or 1")
            }
            Self::GridMismatch => write!(f, "volumes are defined on different grids"),
            Self::DuplicateLandmark(name) => write!(f, "duplicate landmark name '{name}'"),
            Self::NonFiniteLandmark(name) => {
                write!(f, "landmark '{name}' has a non-finite coordinate")
            }
        }
    }
}

impl core::error::Error for VolumeError {}

/// Grid geometry shared by volumes and masks: dimensions, spacing, and the
/// voxel→physical affine (with its inverse cached at construction).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    dims: [usize; 3],
    spacing: [f64; 3],
    affine: Affine,
    affine_inv: Option<Affine>,
}

impl Grid {
    pub fn new(dims: [usize; 3], spacing: [f64; 3], affine: Affine) -> Result<Self, VolumeError> {
        if dims.iter().any(|&d| d == 0) {
            return Err(VolumeError::ZeroDim);
        }
        if spacing.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
            return Err(VolumeError::NonPositiveSpacing(spacing));
        }
        let norms = affine.column_norms();
        for axis in 0..3 {
            if libm::fabs(norms[axis] - spacing[axis]) > SPACING_REL_TOL * spacing[axis] {
                return Err(VolumeError::AffineSpacingMismatch {
                    axis,
                    column_norm: norms[axis],
                    spacing: spacing[axis],
                });
            }
        }
        let affine_inv = affine.inverse();
        Ok(Self { dims, spacing, affine, affine_inv })
    }

    /// Grid with an axis-aligned affine `diag(spacing)` (RAS, origin at the
    /// first voxel center).
    pub fn axis_aligned(dims: [usize; 3], spacing: [f64; 3]) -> Result<Self, VolumeError> {
        Self::new(dims, spacing, Affine::from_diagonal(spacing))
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.spacing
    }

    pub fn affine(&self) -> &Affine {
        &self.affine
    }

    /// Number of voxels in the grid.
    pub fn voxel_count(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    /// Linear index of `(x, y, z)`, x-fastest.
    #[inline]
    pub fn index(&self, v: [usize; 3]) -> usize {
        debug_assert!(v[0] < self.dims[0] && v[1] < self.dims[1] && v[2] < self.dims[2]);
        v[0] + self.dims[0] * (v[1] + self.dims[1] * v[2])
    }

    /// Inverse of [`Grid::index`].
    #[inline]
    pub fn coords(&self, index: usize) -> [usize; 3] {
        let x = index % self.dims[0];
        let rest = index / self.dims[0];
        [x, rest % self.dims[1], rest / self.dims[1]]
    }

    #[inline]
    pub fn contains(&self, v: [i64; 3]) -> bool {
        (0..3).all(|a| v[a] >= 0 && (v[a] as usize) < self.dims[a])
    }

    /// Physical RAS coordinates of a (possibly fractional) voxel index.
    pub fn voxel_to_phys(&self, v: [f64; 3]) -> [f64; 3] {
        self.affine.apply(v)
    }

    /// Physical coordinates of a voxel center addressed by linear index.
    pub fn center_of(&self, index: usize) -> [f64; 3] {
        let c = self.coords(index);
        self.voxel_to_phys([c[0] as f64, c[1] as f64, c[2] as f64])
    }

    /// Continuous voxel index of a physical point (the affine inverse).
    pub fn phys_to_voxel(&self, p: [f64; 3]) -> Result<[f64; 3], VolumeError> {
        let inv = self.affine_inv.as_ref().ok_or(VolumeError::SingularAffine)?;
        Ok(inv.apply(p))
    }

    /// Nearest voxel to a physical point, rounding half away from zero.
    /// The flag reports whether the voxel lies inside the grid bounds.
    pub fn nearest_voxel(&self, p: [f64; 3]) -> Result<([i64; 3], bool), VolumeError> {
        let cont = self.phys_to_voxel(p)?;
        let v = [
            libm::round(cont[0]) as i64,
            libm::round(cont[1]) as i64,
            libm::round(cont[2]) as i64,
        ];
        let inside = self.contains(v);
        Ok((v, inside))
    }

    /// Euclidean distance in mm between two voxel centers addressed by
    /// their integer coordinates.
    #[inline]
    pub fn center_distance(&self, a: [usize; 3], b: [usize; 3]) -> f64 {
        let mut sq = 0.0;
        for axis in 0..3 {
            let d = (a[axis] as f64 - b[axis] as f64) * self.spacing[axis];
            sq += d * d;
        }
        libm::sqrt(sq)
    }
}

/// A dense 3D scalar grid with physical spacing and affine orientation.
///
/// Immutable after construction; shared references are safe to use from
/// concurrent contexts.
#[derive(Debug, Clone, PartialEq)]
pub struct Volume {
    grid: Grid,
    dtype: Dtype,
    data: Vec<f32>,
}

impl Volume {
    pub fn new(
        dims: [usize; 3],
        spacing: [f64; 3],
        affine: Affine,
        dtype: Dtype,
        data: Vec<f32>,
    ) -> Result<Self, VolumeError> {
        let grid = Grid::new(dims, spacing, affine)?;
        Self::from_grid(grid, dtype, data)
    }

    pub fn from_grid(grid: Grid, dtype: Dtype, data: Vec<f32>) -> Result<Self, VolumeError> {
        if data.len() != grid.voxel_count() {
            return Err(VolumeError::DataLength {
                expected: grid.voxel_count(),
                actual: data.len(),
            });
        }
        Ok(Self { grid, dtype, data })
    }

    /// Volume with an axis-aligned `diag(spacing)` affine.
    pub fn axis_aligned(
        dims: [usize; 3],
        spacing: [f64; 3],
        dtype: Dtype,
        data: Vec<f32>,
    ) -> Result<Self, VolumeError> {
        Self::from_grid(Grid::axis_aligned(dims, spacing)?, dtype, data)
    }

    pub fn zeros(dims: [usize; 3], spacing: [f64; 3], dtype: Dtype) -> Result<Self, VolumeError> {
        let grid = Grid::axis_aligned(dims, spacing)?;
        let n = grid.voxel_count();
        Self::from_grid(grid, dtype, vec![0.0; n])
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dims(&self) -> [usize; 3] {
        self.grid.dims
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.grid.spacing
    }

    pub fn affine(&self) -> &Affine {
        &self.grid.affine
    }

    pub fn dtype(&self) -> Dtype {
        self.dtype
    }

    pub fn data(&self) -> &[f32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, index: usize) -> f32 {
        self.data[index]
    }

    #[inline]
    pub fn at(&self, v: [usize; 3]) -> f32 {
        self.data[self.grid.index(v)]
    }

    pub fn voxel_count(&self) -> usize {
        self.grid.voxel_count()
    }

    /// See [`Grid::phys_to_voxel`].
    pub fn phys_to_voxel(&self, p: [f64; 3]) -> Result<[f64; 3], VolumeError> {
        self.grid.phys_to_voxel(p)
    }

    /// See [`Grid::voxel_to_phys`].
    pub fn voxel_to_phys(&self, v: [f64; 3]) -> [f64; 3] {
        self.grid.voxel_to_phys(v)
    }

    /// See [`Grid::nearest_voxel`].
    pub fn nearest_voxel(&self, p: [f64; 3]) -> Result<([i64; 3], bool), VolumeError> {
        self.grid.nearest_voxel(p)
    }
}

/// A volume whose voxels are restricted to {0, 1}; 1 is gray-matter
/// foreground, 0 is background.
#[derive(Debug, Clone, PartialEq)]
pub struct BinaryMask {
    grid: Grid,
    data: Vec<bool>,
}

impl BinaryMask {
    pub fn new(
        dims: [usize; 3],
        spacing: [f64; 3],
        affine: Affine,
        data: Vec<bool>,
    ) -> Result<Self, VolumeError> {
        let grid = Grid::new(dims, spacing, affine)?;
        Self::from_grid(grid, data)
    }

    pub fn from_grid(grid: Grid, data: Vec<bool>) -> Result<Self, VolumeError> {
        if data.len() != grid.voxel_count() {
            return Err(VolumeError::DataLength {
                expected: grid.voxel_count(),
                actual: data.len(),
            });
        }
        Ok(Self { grid, data })
    }

    pub fn axis_aligned(
        dims: [usize; 3],
        spacing: [f64; 3],
        data: Vec<bool>,
    ) -> Result<Self, VolumeError> {
        Self::from_grid(Grid::axis_aligned(dims, spacing)?, data)
    }

    /// Interprets a scalar volume as a mask. Every voxel must be exactly
    /// 0 or 1; anything else is an error, not a threshold.
    pub fn from_volume(v: &Volume) -> Result<Self, VolumeError> {
        let mut data = Vec::with_capacity(v.data.len());
        for (index, &value) in v.data.iter().enumerate() {
            if value == 0.0 {
                data.push(false);
            } else if value == 1.0 {
                data.push(true);
            } else {
                return Err(VolumeError::NonBinaryVoxel { index, value });
            }
        }
        Ok(Self { grid: v.grid.clone(), data })
    }

    /// The mask as a `u8`-tagged scalar volume (for file output).
    pub fn to_volume(&self) -> Volume {
        let data = self.data.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect();
        Volume { grid: self.grid.clone(), dtype: Dtype::U8, data }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dims(&self) -> [usize; 3] {
        self.grid.dims
    }

    pub fn spacing(&self) -> [f64; 3] {
        self.grid.spacing
    }

    pub fn data(&self) -> &[bool] {
        &self.data
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        self.data[index]
    }

    #[inline]
    pub fn at(&self, v: [usize; 3]) -> bool {
        self.data[self.grid.index(v)]
    }

    pub fn voxel_count(&self) -> usize {
        self.grid.voxel_count()
    }

    pub fn foreground_count(&self) -> usize {
        self.data.iter().filter(|&&b| b).count()
    }

    /// Linear indices of all foreground voxels, in raster order.
    pub fn foreground_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.data.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phys_to_voxel_identity_affine() {
        let g = Grid::axis_aligned([5, 5, 5], [1.0, 1.0, 1.0]).unwrap();
        let v = g.phys_to_voxel([2.0, 3.0, 4.0]).unwrap();
        assert_eq!(v, [2.0, 3.0, 4.0]);
    }

    #[test]
    fn phys_to_voxel_pure_scaling() {
        let g = Grid::axis_aligned([5, 5, 5], [0.3, 0.3, 0.3]).unwrap();
        let v = g.phys_to_voxel([0.6, 0.0, 0.9]).unwrap();
        assert!((v[0] - 2.0).abs() < 1e-12);
        assert!((v[1] - 0.0).abs() < 1e-12);
        assert!((v[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn phys_to_voxel_with_translation() {
        // affine = diag(0.5) with translation (-10, -10, -10): solving the
        // 4x4 system by hand gives voxel (2, 0, 4) for p = (-9, -10, -8).
        let affine = Affine::from_diagonal([0.5, 0.5, 0.5]).with_translation([-10.0, -10.0, -10.0]);
        let g = Grid::new([10, 10, 10], [0.5, 0.5, 0.5], affine).unwrap();
        let v = g.phys_to_voxel([-9.0, -10.0, -8.0]).unwrap();
        assert!((v[0] - 2.0).abs() < 1e-12);
        assert!((v[1] - 0.0).abs() < 1e-12);
        assert!((v[2] - 4.0).abs() < 1e-12);
        let (nearest, inside) = g.nearest_voxel([-9.0, -10.0, -8.0]).unwrap();
        assert_eq!(nearest, [2, 0, 4]);
        assert!(inside);
    }

    #[test]
    fn nearest_voxel_rounds_half_away_from_zero() {
        let g = Grid::axis_aligned([4, 4, 4], [1.0, 1.0, 1.0]).unwrap();
        let (v, inside) = g.nearest_voxel([0.5, 1.5, 2.5]).unwrap();
        assert_eq!(v, [1, 2, 3]);
        assert!(inside);
        let (v, inside) = g.nearest_voxel([3.6, 0.0, 0.0]).unwrap();
        assert_eq!(v, [4, 0, 0]);
        assert!(!inside);
    }

    #[test]
    fn spacing_must_match_affine_columns() {
        let affine = Affine::from_diagonal([1.0, 1.0, 2.0]);
        let err = Grid::new([3, 3, 3], [1.0, 1.0, 1.0], affine).unwrap_err();
        assert!(matches!(err, VolumeError::AffineSpacingMismatch { axis: 2, .. }));
    }

    #[test]
    fn binary_mask_rejects_non_binary_values() {
        let v = Volume::axis_aligned([2, 1, 1], [1.0; 3], Dtype::F32, vec![0.0, 0.5]).unwrap();
        let err = BinaryMask::from_volume(&v).unwrap_err();
        assert_eq!(err, VolumeError::NonBinaryVoxel { index: 1, value: 0.5 });
    }

    #[test]
    fn index_round_trip() {
        let g = Grid::axis_aligned([3, 4, 5], [1.0; 3]).unwrap();
        for idx in 0..g.voxel_count() {
            assert_eq!(g.index(g.coords(idx)), idx);
        }
    }
}
