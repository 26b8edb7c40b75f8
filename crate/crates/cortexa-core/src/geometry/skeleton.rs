//! Medial-axis skeletonization as centers of maximal balls.
//!
//! A foreground voxel `v` with inscribed-ball radius `r(v)` is removed
//! exactly when some 26-neighbor `u` of the same foreground set satisfies
//! `r(u) ≥ r(v) + ‖u − v‖` in physical mm, i.e. when the ball at `v` is
//! contained in the ball at `u`. The rule is purely local, so the retained
//! set is independent of traversal order, and the union of retained balls
//! still covers every foreground voxel center.

use super::{DistanceMap, GeometryError};
use crate::volume::{neighbor_offsets, BinaryMask, Connectivity};
use alloc::vec::Vec;

/// One medial-axis voxel with its inscribed-ball radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkeletonNode {
    /// Linear voxel index into the source grid.
    pub index: usize,
    /// Inscribed-ball radius in mm (the distance-map value).
    pub radius_mm: f64,
}

/// Centers-of-maximal-balls skeleton, nodes in raster (ascending index) order.
#[derive(Debug, Clone, Default)]
pub struct Skeleton {
    nodes: Vec<SkeletonNode>,
}

impl Skeleton {
    pub fn nodes(&self) -> &[SkeletonNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SkeletonNode> {
        self.nodes.iter()
    }
}

/// Maximal inscribed sphere: the skeleton voxel of largest radius within a
/// query region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InscribedSphere {
    pub index: usize,
    pub radius_mm: f64,
}

/// Skeletonizes a whole mask. `dm` must be the distance transform of `mask`.
pub fn skeletonize(mask: &BinaryMask, dm: &DistanceMap) -> Result<Skeleton, GeometryError> {
    if mask.grid() != dm.grid() {
        return Err(GeometryError::GridMismatch);
    }
    Ok(skeletonize_members(dm, |idx| mask.get(idx)))
}

/// Skeletonizes a foreground subset (e.g. an extracted ribbon) whose radii
/// come from a distance map of the surrounding mask. `members` must have one
/// entry per grid voxel and be a subset of that mask's foreground.
pub fn skeletonize_within(dm: &DistanceMap, members: &[bool]) -> Result<Skeleton, GeometryError> {
    if members.len() != dm.grid().voxel_count() {
        return Err(GeometryError::GridMismatch);
    }
    Ok(skeletonize_members(dm, |idx| members[idx]))
}

fn skeletonize_members<F: Fn(usize) -> bool>(dm: &DistanceMap, is_member: F) -> Skeleton {
    let grid = dm.grid();
    let spacing = grid.spacing();
    let offsets = neighbor_offsets(Connectivity::TwentySix);
    // physical step length per neighbor offset
    let step: Vec<f64> = offsets
        .iter()
        .map(|off| {
            let dx = off[0] as f64 * spacing[0];
            let dy = off[1] as f64 * spacing[1];
            let dz = off[2] as f64 * spacing[2];
            libm::sqrt(dx * dx + dy * dy + dz * dz)
        })
        .collect();

    let mut nodes = Vec::new();
    for idx in 0..grid.voxel_count() {
        if !is_member(idx) {
            continue;
        }
        let r = dm.radius_mm(idx);
        let c = grid.coords(idx);
        let mut dominated = false;
        for (off, &d) in offsets.iter().zip(step.iter()) {
            let nb = [
                c[0] as i64 + off[0],
                c[1] as i64 + off[1],
                c[2] as i64 + off[2],
            ];
            if !grid.contains(nb) {
                continue;
            }
            let nb_idx = grid.index([nb[0] as usize, nb[1] as usize, nb[2] as usize]);
            if is_member(nb_idx) && dm.radius_mm(nb_idx) >= r + d {
                dominated = true;
                break;
            }
        }
        if !dominated {
            nodes.push(SkeletonNode { index: idx, radius_mm: r });
        }
    }
    Skeleton { nodes }
}

/// The skeleton voxel of maximal radius for which `in_region` holds.
/// Ties are broken by the smallest linear index.
pub fn max_inscribed_sphere<F: Fn(usize) -> bool>(
    skeleton: &Skeleton,
    in_region: F,
) -> Result<InscribedSphere, GeometryError> {
    let mut best: Option<InscribedSphere> = None;
    for node in skeleton.iter() {
        if !in_region(node.index) {
            continue;
        }
        // strictly-greater keeps the first (smallest-index) node on ties
        if best.map_or(true, |b| node.radius_mm > b.radius_mm) {
            best = Some(InscribedSphere { index: node.index, radius_mm: node.radius_mm });
        }
    }
    best.ok_or(GeometryError::EmptyRegion)
}
