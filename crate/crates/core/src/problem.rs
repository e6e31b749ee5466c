//! Box-bounded objective functions.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Axis-aligned box `[lower_j, upper_j]` for every coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidBounds("dimension must be at least 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        for (j, (l, u)) in lower.iter().zip(&upper).enumerate() {
            if !(l.is_finite() && u.is_finite() && l < u) {
                return Err(Error::InvalidBounds(format!(
                    "coordinate {j}: lower {l} must be finite and below upper {u}"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The hypercube `[lo, hi]^dim`.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, j: usize) -> f64 {
        self.upper[j] - self.lower[j]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *v >= *l && *v <= *u)
    }

    /// Projects `x` onto the box in place.
    pub fn clip_in_place(&self, x: &mut [f64]) {
        for ((v, l), u) in x.iter_mut().zip(&self.lower).zip(&self.upper) {
            *v = v.max(*l).min(*u);
        }
    }

    /// A point drawn uniformly from the box.
    pub fn sample(&self, rng: &mut RngStream) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(l, u)| rng.uniform_in(*l, *u))
            .collect()
    }
}

/// Maps every coordinate to `min(upper_j, max(lower_j, x_j))`.
pub fn clip_to_bounds(x: &[f64], bounds: &Bounds) -> Vec<f64> {
    let mut out = x.to_vec();
    bounds.clip_in_place(&mut out);
    out
}

pub type ObjectiveFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A named, deterministic objective over a box, with an optional known minimum value.
#[derive(Clone)]
pub struct Problem {
    name: String,
    bounds: Bounds,
    objective: Arc<ObjectiveFn>,
    known_optimum: Option<f64>,
    instance_id: u32,
}

impl Problem {
    pub fn new<F>(name: impl Into<String>, bounds: Bounds, objective: F) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            bounds,
            objective: Arc::new(objective),
            known_optimum: None,
            instance_id: 0,
        }
    }

    pub fn from_shared(name: impl Into<String>, bounds: Bounds, objective: Arc<ObjectiveFn>) -> Self {
        Self {
            name: name.into(),
            bounds,
            objective,
            known_optimum: None,
            instance_id: 0,
        }
    }

    pub fn with_optimum(mut self, value: f64) -> Self {
        self.known_optimum = Some(value);
        self
    }

    /// Drops the known optimum, so runs neither report errors nor stop on a target.
    pub fn without_optimum(mut self) -> Self {
        self.known_optimum = None;
        self
    }

    pub fn with_instance(mut self, instance_id: u32) -> Self {
        self.instance_id = instance_id;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.bounds.dim()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    pub fn known_optimum(&self) -> Option<f64> {
        self.known_optimum
    }

    pub fn instance_id(&self) -> u32 {
        self.instance_id
    }

    /// Raw objective call. Bypasses budget accounting; optimizers go through
    /// [`crate::eval::Evaluator`] instead.
    pub fn value(&self, x: &[f64]) -> f64 {
        (self.objective)(x)
    }
}

impl fmt::Debug for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Problem")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("known_optimum", &self.known_optimum)
            .field("instance_id", &self.instance_id)
            .finish()
    }
}
