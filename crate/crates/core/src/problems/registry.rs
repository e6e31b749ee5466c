//! Name-keyed registry for externally supplied problems.

use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::problem::{Bounds, ObjectiveFn, Problem};

#[derive(Clone)]
struct Entry {
    bounds: Bounds,
    objective: Arc<ObjectiveFn>,
    optimum: Option<f64>,
}

/// Holds problems registered by name with a bounds box, an evaluation callback
/// and an optional known optimum.
#[derive(Default, Clone)]
pub struct ProblemRegistry {
    entries: Arc<RwLock<BTreeMap<String, Entry>>>,
}

impl ProblemRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register<F>(&self, name: impl Into<String>, bounds: Bounds, objective: F, optimum: Option<f64>) -> Result<()>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::InvalidProblem("registered problem needs a name".into()));
        }
        if let Some(v) = optimum {
            if !v.is_finite() {
                return Err(Error::InvalidProblem(format!("optimum for '{name}' is not finite")));
            }
        }
        let mut map = self.entries.write().expect("registry lock poisoned");
        if map.contains_key(&name) {
            return Err(Error::InvalidProblem(format!("problem '{name}' already registered")));
        }
        map.insert(
            name,
            Entry {
                bounds,
                objective: Arc::new(objective),
                optimum,
            },
        );
        Ok(())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.read().expect("registry lock poisoned").contains_key(name)
    }

    pub fn names(&self) -> Vec<String> {
        self.entries
            .read()
            .expect("registry lock poisoned")
            .keys()
            .cloned()
            .collect()
    }

    pub fn get(&self, name: &str) -> Result<Problem> {
        let map = self.entries.read().expect("registry lock poisoned");
        let e = map
            .get(name)
            .ok_or_else(|| Error::InvalidProblem(format!("no registered problem '{name}'")))?;
        let p = Problem::from_shared(name, e.bounds.clone(), Arc::clone(&e.objective));
        Ok(match e.optimum {
            Some(v) => p.with_optimum(v),
            None => p,
        })
    }
}

impl std::fmt::Debug for ProblemRegistry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemRegistry").field("names", &self.names()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn register_and_fetch() {
        let reg = ProblemRegistry::new();
        let b = Bounds::uniform(3, -1.0, 1.0).unwrap();
        reg.register("abs_sum", b, |x: &[f64]| x.iter().map(|v| v.abs()).sum(), Some(0.0))
            .unwrap();
        let p = reg.get("abs_sum").unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.known_optimum(), Some(0.0));
        assert_eq!(p.value(&[0.5, -0.5, 0.0]), 1.0);
    }

    #[test]
    fn duplicate_and_missing() {
        let reg = ProblemRegistry::new();
        let b = Bounds::uniform(2, 0.0, 1.0).unwrap();
        reg.register("p", b.clone(), |_: &[f64]| 0.0, None).unwrap();
        assert!(reg.register("p", b, |_: &[f64]| 0.0, None).is_err());
        assert!(reg.get("q").is_err());
        assert_eq!(reg.names(), vec!["p".to_string()]);
    }
}
