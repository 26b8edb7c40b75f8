//! Exact Euclidean distance transform via separable lower-envelope passes.
//!
//! Distances are measured between voxel centers in physical millimeters and
//! account for anisotropic spacing. Each axis pass computes the exact lower
//! envelope of parabolas over squared distances, so the final map equals the
//! brute-force minimum over all background voxels, not an approximation.

use super::GeometryError;
use crate::volume::{BinaryMask, Dtype, Grid, Volume};
use alloc::vec;
use alloc::vec::Vec;

/// Per-voxel distance in mm to the nearest background voxel center.
/// Zero exactly on background voxels.
#[derive(Debug, Clone)]
pub struct DistanceMap {
    vol: Volume,
}

impl DistanceMap {
    pub fn volume(&self) -> &Volume {
        &self.vol
    }

    pub fn into_volume(self) -> Volume {
        self.vol
    }

    pub fn grid(&self) -> &Grid {
        self.vol.grid()
    }

    /// Inscribed-ball radius in mm at a voxel (0 on background).
    #[inline]
    pub fn radius_mm(&self, index: usize) -> f64 {
        self.vol.get(index) as f64
    }
}

/// Per-voxel linear index of one nearest background voxel.
#[derive(Debug, Clone)]
pub struct FeatureMap {
    features: Vec<u32>,
}

impl FeatureMap {
    /// Linear index of a background voxel realizing the distance-map value.
    #[inline]
    pub fn nearest_background(&self, index: usize) -> usize {
        self.features[index] as usize
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }
}

const NO_FEATURE: u32 = u32::MAX;

/// Computes the exact Euclidean distance transform of `mask` together with
/// the feature transform (one nearest background voxel per voxel).
///
/// Errors with [`GeometryError::NoBackground`] when the mask has no
/// background voxel, since the distance is undefined there.
pub fn distance_transform(mask: &BinaryMask) -> Result<(DistanceMap, FeatureMap), GeometryError> {
    let grid = mask.grid();
    let n = grid.voxel_count();
    if mask.foreground_count() == n {
        return Err(GeometryError::NoBackground);
    }

    // Squared distance in mm² accumulated across passes; feature rides along.
    let mut dist_sq = vec![0.0f64; n];
    let mut feat = vec![NO_FEATURE; n];
    for idx in 0..n {
        if mask.get(idx) {
            dist_sq[idx] = f64::INFINITY;
        } else {
            feat[idx] = idx as u32;
        }
    }

    let dims = grid.dims();
    let spacing = grid.spacing();
    let mut line_f = Vec::new();
    let mut line_feat = Vec::new();
    let mut out_f = Vec::new();
    let mut out_feat = Vec::new();
    let mut hull = Vec::new();
    let mut bounds = Vec::new();

    for axis in 0..3 {
        let len = dims[axis];
        line_f.resize(len, 0.0);
        line_feat.resize(len, NO_FEATURE);
        out_f.resize(len, 0.0);
        out_feat.resize(len, NO_FEATURE);

        let (u_dim, v_dim) = match axis {
            0 => (dims[1], dims[2]),
            1 => (dims[0], dims[2]),
            _ => (dims[0], dims[1]),
        };
        for v in 0..v_dim {
            for u in 0..u_dim {
                for i in 0..len {
                    let idx = match axis {
                        0 => grid.index([i, u, v]),
                        1 => grid.index([u, i, v]),
                        _ => grid.index([u, v, i]),
                    };
                    line_f[i] = dist_sq[idx];
                    line_feat[i] = feat[idx];
                }
                lower_envelope_line(
                    &line_f,
                    &line_feat,
                    spacing[axis],
                    &mut out_f,
                    &mut out_feat,
                    &mut hull,
                    &mut bounds,
                );
                for i in 0..len {
                    let idx = match axis {
                        0 => grid.index([i, u, v]),
                        1 => grid.index([u, i, v]),
                        _ => grid.index([u, v, i]),
                    };
                    dist_sq[idx] = out_f[i];
                    feat[idx] = out_feat[i];
                }
            }
        }
    }

    let data: Vec<f32> = dist_sq.iter().map(|&d| libm::sqrt(d) as f32).collect();
    debug_assert!(feat.iter().all(|&f| f != NO_FEATURE));
    let vol = Volume::from_grid(grid.clone(), Dtype::F32, data)
        .expect("distance map matches mask grid");
    Ok((DistanceMap { vol }, FeatureMap { features: feat }))
}

/// Exact 1D lower envelope of the parabolas `y ↦ f[i] + ((y - i)·spacing)²`,
/// evaluated at every integer position. Sites with infinite `f` carry no
/// parabola. `feat` values are propagated from the argmin site.
fn lower_envelope_line(
    f: &[f64],
    feat: &[u32],
    spacing: f64,
    out_f: &mut [f64],
    out_feat: &mut [u32],
    hull: &mut Vec<usize>,
    bounds: &mut Vec<f64>,
) {
    hull.clear();
    bounds.clear();
    for q in 0..f.len() {
        if f[q].is_infinite() {
            continue;
        }
        let pq = q as f64 * spacing;
        loop {
            match hull.last() {
                None => {
                    hull.push(q);
                    bounds.push(f64::NEG_INFINITY);
                    break;
                }
                Some(&r) => {
                    let pr = r as f64 * spacing;
                    // abscissa where parabola q overtakes parabola r
                    let s = ((f[q] + pq * pq) - (f[r] + pr * pr)) / (2.0 * (pq - pr));
                    if s <= *bounds.last().unwrap() {
                        hull.pop();
                        bounds.pop();
                    } else {
                        hull.push(q);
                        bounds.push(s);
                        break;
                    }
                }
            }
        }
    }

    if hull.is_empty() {
        out_f.fill(f64::INFINITY);
        out_feat.fill(NO_FEATURE);
        return;
    }

    let mut k = 0;
    for (j, (of, ofeat)) in out_f.iter_mut().zip(out_feat.iter_mut()).enumerate() {
        let y = j as f64 * spacing;
        while k + 1 < hull.len() && bounds[k + 1] < y {
            k += 1;
        }
        let site = hull[k];
        let d = y - site as f64 * spacing;
        *of = f[site] + d * d;
        *ofeat = feat[site];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::volume::Grid;

    fn mask_from(dims: [usize; 3], spacing: [f64; 3], fg: &[[usize; 3]]) -> BinaryMask {
        let grid = Grid::axis_aligned(dims, spacing).unwrap();
        let mut data = vec![false; grid.voxel_count()];
        for &v in fg {
            data[grid.index(v)] = true;
        }
        BinaryMask::from_grid(grid, data).unwrap()
    }

    /// O(N²) oracle: per-voxel minimum over all background voxel centers.
    fn brute_force_edt(mask: &BinaryMask) -> Vec<f64> {
        let grid = mask.grid();
        let n = grid.voxel_count();
        let background: Vec<[usize; 3]> = (0..n)
            .filter(|&i| !mask.get(i))
            .map(|i| grid.coords(i))
            .collect();
        (0..n)
            .map(|i| {
                if !mask.get(i) {
                    return 0.0;
                }
                let c = grid.coords(i);
                background
                    .iter()
                    .map(|&b| grid.center_distance(c, b))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    }

    #[test]
    fn single_voxel_distance_is_one_spacing() {
        let m = mask_from([3, 3, 3], [1.0; 3], &[[1, 1, 1]]);
        let (dm, _) = distance_transform(&m).unwrap();
        assert!((dm.radius_mm(m.grid().index([1, 1, 1])) - 1.0).abs() < 1e-7);
    }

    #[test]
    fn rod_interior_distances() {
        // 1x1x7 rod with background at both ends: interior distances 1,2,3,2,1
        let fg: Vec<[usize; 3]> = (1..6).map(|z| [0, 0, z]).collect();
        let m = mask_from([1, 1, 7], [1.0; 3], &fg);
        let (dm, _) = distance_transform(&m).unwrap();
        let expected = [1.0, 2.0, 3.0, 2.0, 1.0];
        for (z, &e) in (1..6).zip(expected.iter()) {
            assert!((dm.radius_mm(m.grid().index([0, 0, z])) - e).abs() < 1e-6);
        }
    }

    #[test]
    fn anisotropic_spacing_picks_cheapest_axis() {
        let m = mask_from([3, 3, 3], [1.0, 2.0, 5.0], &[[1, 1, 1]]);
        let (dm, fm) = distance_transform(&m).unwrap();
        let idx = m.grid().index([1, 1, 1]);
        assert!((dm.radius_mm(idx) - 1.0).abs() < 1e-7);
        let feat = m.grid().coords(fm.nearest_background(idx));
        assert!(feat == [0, 1, 1] || feat == [2, 1, 1]);
    }

    #[test]
    fn matches_brute_force_on_random_masks() {
        use rand::prelude::*;
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for trial in 0..25 {
            let dims = [
                rng.random_range(1..=8),
                rng.random_range(1..=8),
                rng.random_range(1..=8),
            ];
            let spacing = [
                rng.random_range(0.2..2.0),
                rng.random_range(0.2..2.0),
                rng.random_range(0.2..2.0),
            ];
            let grid = Grid::axis_aligned(dims, spacing).unwrap();
            let mut data: Vec<bool> = (0..grid.voxel_count()).map(|_| rng.random_bool(0.6)).collect();
            data[0] = false; // ensure background exists
            let m = BinaryMask::from_grid(grid, data).unwrap();
            let (dm, fm) = distance_transform(&m).unwrap();
            let oracle = brute_force_edt(&m);
            for i in 0..m.voxel_count() {
                assert!(
                    (dm.radius_mm(i) - oracle[i]).abs() < 1e-5,
                    "trial {trial} voxel {i}: edt {} vs oracle {}",
                    dm.radius_mm(i),
                    oracle[i]
                );
                // feature realizes the distance
                let fc = m.grid().coords(fm.nearest_background(i));
                assert!(!m.at(fc), "feature must be background");
                let d = m.grid().center_distance(m.grid().coords(i), fc);
                assert!((d - dm.radius_mm(i)).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn all_foreground_is_an_error() {
        let grid = Grid::axis_aligned([2, 2, 2], [1.0; 3]).unwrap();
        let m = BinaryMask::from_grid(grid, vec![true; 8]).unwrap();
        assert_eq!(distance_transform(&m).unwrap_err(), GeometryError::NoBackground);
    }

    #[test]
    fn empty_mask_is_all_zero() {
        let m = mask_from([3, 3, 3], [1.0; 3], &[]);
        let (dm, _) = distance_transform(&m).unwrap();
        assert!((0..27).all(|i| dm.radius_mm(i) == 0.0));
    }
}
