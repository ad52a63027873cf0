use serde::{Deserialize, Serialize};

use super::{cooccurrence, CooccurrenceMatrix, Direction, GrayPatch};

/// σ_x·σ_y below this makes the correlation 0.
pub const ZERO_VARIANCE_EPS: f64 = 1e-12;

pub const FEATURE_NAMES: [&str; 6] = [
    "homogeneity",
    "contrast",
    "entropy",
    "correlation",
    "directivity",
    "uniformity",
];

/// The six retained co-occurrence statistics.
///
/// Contrast carries a 1/(n_g − 1) factor and entropy is 1 − Σ C ln C; both
/// differ from the usual Haralick forms by that scale and offset.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TextureFeatures {
    pub homogeneity: f64,
    pub contrast: f64,
    pub entropy: f64,
    pub correlation: f64,
    pub directivity: f64,
    pub uniformity: f64,
}

impl TextureFeatures {
    pub fn to_array(self) -> [f64; 6] {
        [
            self.homogeneity,
            self.contrast,
            self.entropy,
            self.correlation,
            self.directivity,
            self.uniformity,
        ]
    }

    fn from_array(v: [f64; 6]) -> Self {
        TextureFeatures {
            homogeneity: v[0],
            contrast: v[1],
            entropy: v[2],
            correlation: v[3],
            directivity: v[4],
            uniformity: v[5],
        }
    }
}

/// Features of one co-occurrence matrix.
pub fn matrix_features(c: &CooccurrenceMatrix) -> TextureFeatures {
    let n = c.levels();
    let mut homogeneity = 0.0;
    let mut contrast = 0.0;
    let mut entropy_sum = 0.0;
    let mut directivity = 0.0;
    let mut uniformity = 0.0;
    for i in 0..n {
        for j in 0..n {
            let v = c.get(i, j);
            homogeneity += v * v;
            contrast += ((i as f64) - (j as f64)).powi(2) * v;
            if v > 0.0 {
                entropy_sum += v * v.ln();
            }
        }
        let d = c.get(i, i);
        directivity += d;
        uniformity += d * d;
    }
    let (mx, sx) = c.row_moments();
    let (my, sy) = c.column_moments();
    let correlation = if sx * sy < ZERO_VARIANCE_EPS {
        0.0
    } else {
        let cov: f64 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (i as f64 - mx) * (j as f64 - my) * c.get(i, j))
            .sum();
        cov.abs() / (sx * sy)
    };
    TextureFeatures {
        homogeneity,
        contrast: contrast / (n as f64 - 1.0),
        entropy: 1.0 - entropy_sum,
        correlation,
        directivity,
        uniformity,
    }
}

/// Features for each of the four directions, in [`Direction::ALL`] order.
pub fn directional_features(patch: &GrayPatch) -> [TextureFeatures; 4] {
    Direction::ALL.map(|d| matrix_features(&cooccurrence(patch, d)))
}

/// Features averaged over the four directions.
pub fn haralick(patch: &GrayPatch) -> TextureFeatures {
    let per_direction = directional_features(patch);
    let mut mean = [0.0; 6];
    for f in per_direction {
        for (m, v) in mean.iter_mut().zip(f.to_array()) {
            *m += v / 4.0;
        }
    }
    TextureFeatures::from_array(mean)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn checkerboard(size: usize) -> GrayPatch {
        let pixels = (0..size * size).map(|k| ((k / size + k % size) % 2) as u32).collect();
        GrayPatch::new(size, size, 2, pixels).unwrap()
    }

    #[test]
    fn constant_patch() {
        let f = haralick(&GrayPatch::new(4, 4, 8, vec![5; 16]).unwrap());
        assert_eq!(
            f,
            TextureFeatures {
                homogeneity: 1.0,
                contrast: 0.0,
                entropy: 1.0,
                correlation: 0.0,
                directivity: 1.0,
                uniformity: 1.0,
            }
        );
    }

    #[test]
    fn checkerboard_horizontal_matrix() {
        let f = directional_features(&checkerboard(5))[0];
        assert!((f.homogeneity - 0.5).abs() < 1e-15);
        assert_eq!(f.directivity, 0.0);
        assert_eq!(f.uniformity, 0.0);
        // Σ (i−j)² C = 1 and the prefactor 1/(2−1) leaves it unchanged
        assert!((f.contrast - 1.0).abs() < 1e-15);
        assert!((f.entropy - (1.0 + 2f64.ln())).abs() < 1e-15);
        assert!((f.correlation - 1.0).abs() < 1e-12);
    }

    #[test]
    fn checkerboard_average() {
        // 0° and 90° alternate, 45° and 135° stay on one colour
        let f = haralick(&checkerboard(5));
        assert!((f.contrast - 0.5).abs() < 1e-15);
        assert!((f.homogeneity - 0.5).abs() < 1e-15);
        assert!((f.directivity - 0.5).abs() < 1e-15);
        assert!((f.uniformity - 0.25).abs() < 1e-15);
    }

    #[test]
    fn stripes_break_the_squared_directivity_bound() {
        let p = GrayPatch::from_rows(&[vec![0, 1, 0, 1], vec![0, 1, 0, 1]], 2).unwrap();
        let f = directional_features(&p)[2];
        assert_eq!(f.directivity, 1.0);
        assert_eq!(f.homogeneity, 0.5);
        assert!(f.uniformity <= f.homogeneity);
        assert!(f.uniformity <= f.directivity * f.directivity);
    }
}
