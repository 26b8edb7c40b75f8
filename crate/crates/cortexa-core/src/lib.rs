//! Voxel-grid geometry and statistics for measuring cortical thickness at
//! anatomical landmarks in 3D gray-matter segmentation masks.
//!
//! The pipeline stages are:
//!
//! 1. **volume** – the voxel-grid data model: volumes, binary masks,
//!    physical/voxel coordinate mapping, connected components, landmarks.
//! 2. **geometry** – exact Euclidean distance transform (anisotropic,
//!    separable lower-envelope passes), feature transform, and medial-axis
//!    skeletonization as centers of maximal balls with inscribed-ball radii.
//! 3. **thickness** – landmark-anchored thickness: geodesic ribbon
//!    extraction around each landmark, then the diameter of the maximal
//!    inscribed sphere within the ribbon.
//! 4. **patch** – 64³ patch extraction with standardize + min-max
//!    normalization, sliding-window stitching of patch predictions, and
//!    inter-rater Dice tables.
//! 5. **stats** – Dice, 95th-percentile Hausdorff distance, Pearson
//!    correlation with t-distribution p-values, and average-fixed-raters
//!    intraclass correlation ICC(3,k).
//! 6. **phantom** – analytic ground-truth shapes (slabs, hollow spheres,
//!    folded sheets, solid balls) with known thickness for validation.
//!
//! The crate is `no_std` + `alloc`: everything here is pure computation on
//! in-memory grids. File formats, logging, and the command-line front end
//! live in the companion `cortexa` crate.
//!
//! All distances are in millimeters. Physical coordinates follow the RAS
//! convention; the voxel→physical mapping is carried by a 4×4 affine per
//! volume.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod geometry;
pub mod patch;
pub mod phantom;
pub mod stats;
pub mod thickness;
pub mod volume;

pub use volume::{Affine, BinaryMask, Connectivity, Dtype, Grid, Landmark, LandmarkSet, Volume};
