use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::Bounds;
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PerturbConfig {
    /// Fraction `s` of each coordinate's range spanned by the perturbation.
    pub scale: f64,
}

impl Default for PerturbConfig {
    fn default() -> Self {
        Self { scale: 0.1 }
    }
}

impl PerturbConfig {
    pub fn validate(&self) -> Result<()> {
        if self.scale > 0.0 && self.scale <= 1.0 {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "perturbation scale {} outside (0, 1]",
                self.scale
            )))
        }
    }
}

/// `clip(x + σ)` with `σ_j ~ U[-s w_j / 2, s w_j / 2]` and `w_j` the width of coordinate `j`.
pub fn perturb(x: &[f64], bounds: &Bounds, cfg: &PerturbConfig, rng: &mut RngStream) -> Vec<f64> {
    let mut y: Vec<f64> = x
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let half = 0.5 * cfg.scale * bounds.width(j);
            v + rng.uniform_in(-half, half)
        })
        .collect();
    bounds.clip_in_place(&mut y);
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_within_half_scaled_width() {
        let b = Bounds::uniform(6, -5.0, 5.0).unwrap();
        let mut rng = RngStream::new(1);
        let x = vec![0.0; 6];
        for _ in 0..1000 {
            let y = perturb(&x, &b, &PerturbConfig::default(), &mut rng);
            assert!(y.iter().all(|v| v.abs() <= 0.5));
        }
    }

    #[test]
    fn tiny_scale_is_nearly_identity() {
        let b = Bounds::uniform(3, -5.0, 5.0).unwrap();
        let mut rng = RngStream::new(2);
        let x = vec![1.0, -2.0, 3.0];
        let y = perturb(&x, &b, &PerturbConfig { scale: 1e-300 }, &mut rng);
        assert_eq!(x, y);
    }

    #[test]
    fn upper_bound_stays_clipped() {
        let b = Bounds::uniform(1, -5.0, 5.0).unwrap();
        let mut rng = RngStream::new(3);
        for _ in 0..200 {
            let y = perturb(&[5.0], &b, &PerturbConfig::default(), &mut rng);
            assert!(y[0] <= 5.0 && y[0] >= 4.5);
        }
    }

    #[test]
    fn rejects_bad_scale() {
        assert!(PerturbConfig { scale: 0.0 }.validate().is_err());
        assert!(PerturbConfig { scale: 1.5 }.validate().is_err());
    }
}
