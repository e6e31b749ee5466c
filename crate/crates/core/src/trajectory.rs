//! Best-so-far improvement logs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One improvement: at evaluation `eval_index` the best-so-far quality became `best`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event(pub u64, pub f64);

impl Event {
    pub fn eval_index(&self) -> u64 {
        self.0
    }

    pub fn best(&self) -> f64 {
        self.1
    }
}

/// Improvement events of a single run, ordered by evaluation index.
///
/// For problems with a known optimum `best` is the clipped error
/// `max(f - f*, err)`; otherwise it is the raw best objective value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub events: Vec<Event>,
    pub final_evals: u64,
}

impl Trajectory {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a strict improvement. Out-of-order or non-improving events are rejected.
    pub fn record_improvement(&mut self, eval_index: u64, best: f64) -> Result<()> {
        if eval_index == 0 {
            return Err(Error::Trajectory("evaluation indices start at 1".into()));
        }
        if best.is_nan() {
            return Err(Error::Trajectory("NaN quality".into()));
        }
        if let Some(last) = self.events.last() {
            if eval_index <= last.0 {
                return Err(Error::Trajectory(format!(
                    "evaluation index {eval_index} does not follow {}",
                    last.0
                )));
            }
            if best >= last.1 {
                return Err(Error::Trajectory(format!(
                    "quality {best} does not improve on {}",
                    last.1
                )));
            }
        }
        self.events.push(Event(eval_index, best));
        Ok(())
    }

    pub fn last(&self) -> Option<&Event> {
        self.events.last()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Checks the ordering invariants; used when loading records from disk.
    pub fn validate(&self) -> Result<()> {
        let mut check = Trajectory::new();
        for e in &self.events {
            check.record_improvement(e.0, e.1)?;
        }
        if let Some(last) = self.events.last() {
            if last.0 > self.final_evals {
                return Err(Error::Trajectory(format!(
                    "event at {} after final evaluation {}",
                    last.0, self.final_evals
                )));
            }
        }
        Ok(())
    }
}
