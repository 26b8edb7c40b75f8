//! Connected-component labeling of binary masks.

use super::BinaryMask;
use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

/// Voxel neighborhood used for connectivity decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    /// Face neighbors only.
    Six,
    /// Face and edge neighbors.
    Eighteen,
    /// Face, edge, and corner neighbors.
    #[default]
    TwentySix,
}

impl Connectivity {
    /// Neighbor offsets for this connectivity, in (dz, dy, dx) raster order.
    pub fn offsets(self) -> &'static [[i64; 3]] {
        neighbor_offsets(self)
    }
}

// Offsets are generated once into static tables so neighbor iteration has no
// per-voxel branching on the connectivity kind.
static OFFSETS_26: [[i64; 3]; 26] = build_offsets::<26>(3);
static OFFSETS_18: [[i64; 3]; 18] = build_offsets::<18>(2);
static OFFSETS_6: [[i64; 3]; 6] = build_offsets::<6>(1);

/// All nonzero offsets in the 3³ neighborhood whose squared L∞/L1 class is
/// within `max_abs_sum` (1 = faces, 2 = +edges, 3 = +corners).
const fn build_offsets<const N: usize>(max_abs_sum: i64) -> [[i64; 3]; N] {
    let mut out = [[0i64; 3]; N];
    let mut n = 0;
    let mut dz = -1i64;
    while dz <= 1 {
        let mut dy = -1i64;
        while dy <= 1 {
            let mut dx = -1i64;
            while dx <= 1 {
                let abs_sum = dx.abs() + dy.abs() + dz.abs();
                if abs_sum != 0 && abs_sum <= max_abs_sum {
                    out[n] = [dx, dy, dz];
                    n += 1;
                }
                dx += 1;
            }
            dy += 1;
        }
        dz += 1;
    }
    out
}

/// Neighbor offset table for a connectivity kind.
pub fn neighbor_offsets(connectivity: Connectivity) -> &'static [[i64; 3]] {
    match connectivity {
        Connectivity::Six => &OFFSETS_6,
        Connectivity::Eighteen => &OFFSETS_18,
        Connectivity::TwentySix => &OFFSETS_26,
    }
}

/// Result of [`connected_components`]: a label per voxel (0 = background)
/// and the voxel count per component, indexed by `label - 1`.
#[derive(Debug, Clone)]
pub struct ComponentLabels {
    pub labels: Vec<u32>,
    pub sizes: Vec<usize>,
}

impl ComponentLabels {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }
}

/// Labels the connected components of `mask` under the given connectivity.
///
/// Labels are assigned 1..K by decreasing component size; ties are broken
/// by the smaller minimum linear voxel index, so the result is independent
/// of traversal order.
pub fn connected_components(mask: &BinaryMask, connectivity: Connectivity) -> ComponentLabels {
    let grid = mask.grid();
    let n = grid.voxel_count();
    let offsets = neighbor_offsets(connectivity);

    let mut provisional = vec![0u32; n];
    // (size, min linear index) per provisional label, 1-based
    let mut stats: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::new();

    for start in 0..n {
        if !mask.get(start) || provisional[start] != 0 {
            continue;
        }
        let label = stats.len() as u32 + 1;
        let mut size = 0usize;
        provisional[start] = label;
        queue.push_back(start);
        while let Some(idx) = queue.pop_front() {
            size += 1;
            let c = grid.coords(idx);
            for off in offsets {
                let nb = [
                    c[0] as i64 + off[0],
                    c[1] as i64 + off[1],
                    c[2] as i64 + off[2],
                ];
                if !grid.contains(nb) {
                    continue;
                }
                let nb_idx = grid.index([nb[0] as usize, nb[1] as usize, nb[2] as usize]);
                if mask.get(nb_idx) && provisional[nb_idx] == 0 {
                    provisional[nb_idx] = label;
                    queue.push_back(nb_idx);
                }
            }
        }
        // raster-order scan guarantees `start` is the component's minimum index
        stats.push((size, start));
    }

    // Rank by decreasing size, ties by smaller minimum index.
    let mut order: Vec<usize> = (0..stats.len()).collect();
    order.sort_by(|&a, &b| stats[b].0.cmp(&stats[a].0).then(stats[a].1.cmp(&stats[b].1)));
    let mut remap = vec![0u32; stats.len() + 1];
    for (rank, &old) in order.iter().enumerate() {
        remap[old + 1] = rank as u32 + 1;
    }

    let labels: Vec<u32> = provisional.iter().map(|&p| remap[p as usize]).collect();
    let sizes: Vec<usize> = order.iter().map(|&old| stats[old].0).collect();
    ComponentLabels { labels, sizes }
}
