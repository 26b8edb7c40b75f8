//! The geometric engine of the thickness pipeline: exact Euclidean distance
//! transform, feature transform, and medial-axis skeletonization with
//! inscribed-ball radii.

mod edt;
mod skeleton;

pub use edt::{distance_transform, DistanceMap, FeatureMap};
pub use skeleton::{
    max_inscribed_sphere, skeletonize, skeletonize_within, InscribedSphere, Skeleton,
    SkeletonNode,
};

use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    /// Distance to background is undefined when no background voxel exists.
    NoBackground,
    /// Distance map does not belong to the mask it is used with.
    GridMismatch,
    /// No skeleton voxel inside the query region.
    EmptyRegion,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoBackground => write!(f, "mask has no background voxel; distance undefined"),
            Self::GridMismatch => write!(f, "distance map and mask grids differ"),
            Self::EmptyRegion => write!(f, "no skeleton voxel inside the region"),
        }
    }
}

impl core::error::Error for GeometryError {}
