//! Homogeneous 4×4 affine transforms mapping voxel indices to physical
//! RAS millimeters.

use core::fmt;

/// Row-major 4×4 affine. The last row is conventionally `[0, 0, 0, 1]` but
/// is stored verbatim so file round-trips are exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine(pub [[f64; 4]; 4]);

impl Affine {
    pub fn identity() -> Self {
        Self::from_diagonal([1.0, 1.0, 1.0])
    }

    /// Axis-aligned scaling affine, e.g. from voxel spacing alone.
    pub fn from_diagonal(scale: [f64; 3]) -> Self {
        let mut m = [[0.0; 4]; 4];
        m[0][0] = scale[0];
        m[1][1] = scale[1];
        m[2][2] = scale[2];
        m[3][3] = 1.0;
        Affine(m)
    }

    /// Rotation about one coordinate axis (0 = x, 1 = y, 2 = z) by `angle`
    /// radians, composed with an optional translation.
    pub fn rotation_about_axis(axis: usize, angle: f64) -> Self {
        let (s, c) = (libm::sin(angle), libm::cos(angle));
        let mut m = Self::identity();
        let (a, b) = match axis {
            0 => (1, 2),
            1 => (2, 0),
            _ => (0, 1),
        };
        m.0[a][a] = c;
        m.0[a][b] = -s;
        m.0[b][a] = s;
        m.0[b][b] = c;
        m
    }

    pub fn with_translation(mut self, t: [f64; 3]) -> Self {
        self.0[0][3] = t[0];
        self.0[1][3] = t[1];
        self.0[2][3] = t[2];
        self
    }

    /// Applies the affine to a point (homogeneous coordinate 1).
    pub fn apply(&self, p: [f64; 3]) -> [f64; 3] {
        let m = &self.0;
        let mut out = [0.0; 3];
        for (r, o) in out.iter_mut().enumerate() {
            *o = m[r][0] * p[0] + m[r][1] * p[1] + m[r][2] * p[2] + m[r][3];
        }
        out
    }

    pub fn matmul(&self, rhs: &Affine) -> Affine {
        let mut out = [[0.0; 4]; 4];
        for r in 0..4 {
            for c in 0..4 {
                out[r][c] = (0..4).map(|k| self.0[r][k] * rhs.0[k][c]).sum();
            }
        }
        Affine(out)
    }

    /// Euclidean norms of the three spatial columns; equal to the voxel
    /// spacing for any rigid-plus-scaling affine.
    pub fn column_norms(&self) -> [f64; 3] {
        let m = &self.0;
        let mut out = [0.0; 3];
        for (c, o) in out.iter_mut().enumerate() {
            *o = libm::sqrt(m[0][c] * m[0][c] + m[1][c] * m[1][c] + m[2][c] * m[2][c]);
        }
        out
    }

    /// Inverse via Gauss-Jordan elimination with partial pivoting.
    /// Returns `None` when the matrix is singular.
    pub fn inverse(&self) -> Option<Affine> {
        let mut a = self.0;
        let mut inv = Affine::identity().0;
        for col in 0..4 {
            let pivot = (col..4)
                .max_by(|&i, &j| libm::fabs(a[i][col]).total_cmp(&libm::fabs(a[j][col])))
                .unwrap();
            if libm::fabs(a[pivot][col]) < 1e-12 {
                return None;
            }
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = 1.0 / a[col][col];
            for c in 0..4 {
                a[col][c] *= scale;
                inv[col][c] *= scale;
            }
            for r in 0..4 {
                if r != col {
                    let factor = a[r][col];
                    for c in 0..4 {
                        a[r][c] -= factor * a[col][c];
                        inv[r][c] -= factor * inv[col][c];
                    }
                }
            }
        }
        Some(Affine(inv))
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            writeln!(f, "[{:10.4} {:10.4} {:10.4} {:10.4}]", row[0], row[1], row[2], row[3])?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_identity_is_identity() {
        let inv = Affine::identity().inverse().unwrap();
        assert_eq!(inv, Affine::identity());
    }

    #[test]
    fn inverse_round_trip() {
        let a = Affine::rotation_about_axis(2, 0.5)
            .matmul(&Affine::from_diagonal([0.3, 0.4, 0.5]))
            .with_translation([-10.0, 3.0, 7.5]);
        let inv = a.inverse().unwrap();
        let p = [1.2, -3.4, 5.6];
        let back = inv.apply(a.apply(p));
        for i in 0..3 {
            assert!((back[i] - p[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let mut m = Affine::identity();
        m.0[1] = m.0[0];
        assert!(m.inverse().is_none());
    }

    #[test]
    fn column_norms_match_scaling() {
        let a = Affine::rotation_about_axis(0, 1.0).matmul(&Affine::from_diagonal([0.3, 0.3, 0.5]));
        let n = a.column_norms();
        assert!((n[0] - 0.3).abs() < 1e-12);
        assert!((n[1] - 0.3).abs() < 1e-12);
        assert!((n[2] - 0.5).abs() < 1e-12);
    }
}
