//! Lennard-Jones and Morse atomic cluster energies in reduced units.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::{Bounds, Problem};

/// Energy returned for two coincident atoms under Lennard-Jones.
pub const COINCIDENT_PENALTY: f64 = 1e10;
pub const MORSE_RHO: f64 = 6.0;
const MORSE_EXP_CAP: f64 = 700.0;
pub const DEFAULT_COORD_BOUND: f64 = 2.5;
pub const MIN_ATOMS: usize = 2;
pub const MAX_ATOMS: usize = 150;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterKind {
    LennardJones,
    Morse,
}

impl ClusterKind {
    /// Short prefix used in problem names such as `LJ_20`.
    pub fn prefix(&self) -> &'static str {
        match self {
            Self::LennardJones => "LJ",
            Self::Morse => "MO",
        }
    }

    pub fn energy(&self, coords: &[f64]) -> f64 {
        match self {
            Self::LennardJones => lj_energy(coords),
            Self::Morse => morse_energy(coords),
        }
    }

    pub fn pair_energy(&self, r: f64) -> f64 {
        match self {
            Self::LennardJones => lj_pair(r * r),
            Self::Morse => morse_pair(r),
        }
    }
}

impl fmt::Display for ClusterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())
    }
}

impl FromStr for ClusterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lj" | "lennard_jones" | "lennard-jones" => Ok(Self::LennardJones),
            "mo" | "morse" => Ok(Self::Morse),
            other => Err(Error::InvalidProblem(format!("unknown cluster kind '{other}'"))),
        }
    }
}

/// Cluster problem description; `D = 3 * n_atoms`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusterProblem {
    pub kind: ClusterKind,
    pub n_atoms: usize,
    pub coord_bound: f64,
}

impl ClusterProblem {
    pub fn new(kind: ClusterKind, n_atoms: usize) -> Result<Self> {
        Self::with_bound(kind, n_atoms, default_coord_bound(n_atoms))
    }

    pub fn with_bound(kind: ClusterKind, n_atoms: usize, coord_bound: f64) -> Result<Self> {
        if !(MIN_ATOMS..=MAX_ATOMS).contains(&n_atoms) {
            return Err(Error::InvalidProblem(format!(
                "cluster size {n_atoms} outside {MIN_ATOMS}..={MAX_ATOMS}"
            )));
        }
        if !(coord_bound.is_finite() && coord_bound > 0.0) {
            return Err(Error::InvalidProblem(format!(
                "coordinate bound {coord_bound} must be positive"
            )));
        }
        Ok(Self {
            kind,
            n_atoms,
            coord_bound,
        })
    }

    pub fn dim(&self) -> usize {
        3 * self.n_atoms
    }

    pub fn name(&self) -> String {
        format!("{}_{}", self.kind.prefix(), self.n_atoms)
    }

    pub fn to_problem(&self) -> Result<Problem> {
        let bounds = Bounds::uniform(self.dim(), -self.coord_bound, self.coord_bound)?;
        let kind = self.kind;
        Ok(Problem::new(self.name(), bounds, move |x: &[f64]| kind.energy(x)))
    }
}

/// Box half-width: 2.5 up to 40 atoms, then grown with the cube root of the atom count.
pub fn default_coord_bound(n_atoms: usize) -> f64 {
    if n_atoms <= 40 {
        DEFAULT_COORD_BOUND
    } else {
        DEFAULT_COORD_BOUND * (n_atoms as f64 / 40.0).cbrt()
    }
}

pub fn make_cluster_problem(kind: ClusterKind, n_atoms: usize) -> Result<Problem> {
    ClusterProblem::new(kind, n_atoms)?.to_problem()
}

/// Parses names like `LJ_20` or `MO_38`.
pub fn parse_cluster_name(name: &str) -> Option<ClusterProblem> {
    let (kind, n) = name.split_once('_')?;
    let kind: ClusterKind = kind.parse().ok()?;
    let n: usize = n.parse().ok()?;
    ClusterProblem::new(kind, n).ok()
}

#[inline]
fn squared_distance(coords: &[f64], i: usize, j: usize) -> f64 {
    let a = &coords[3 * i..3 * i + 3];
    let b = &coords[3 * j..3 * j + 3];
    (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)
}

#[inline]
fn lj_pair(r2: f64) -> f64 {
    if r2 == 0.0 {
        return COINCIDENT_PENALTY;
    }
    let inv6 = 1.0 / (r2 * r2 * r2);
    4.0 * (inv6 * inv6 - inv6)
}

#[inline]
fn morse_pair(r: f64) -> f64 {
    let e = (MORSE_RHO * (1.0 - r)).min(MORSE_EXP_CAP).exp();
    e * (e - 2.0)
}

fn atom_count(coords: &[f64]) -> usize {
    assert!(
        coords.len().is_multiple_of(3) && coords.len() >= 6,
        "cluster coordinates must hold at least two xyz triples"
    );
    coords.len() / 3
}

/// `4 Σ_{i<j} (r^-12 - r^-6)`; coincident atoms contribute [`COINCIDENT_PENALTY`].
pub fn lj_energy(coords: &[f64]) -> f64 {
    let n = atom_count(coords);
    let mut e = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            e += lj_pair(squared_distance(coords, i, j));
        }
    }
    e
}

/// `Σ_{i<j} e^{ρ(1-r)} (e^{ρ(1-r)} - 2)` with ρ = 6.
pub fn morse_energy(coords: &[f64]) -> f64 {
    let n = atom_count(coords);
    let mut e = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            e += morse_pair(squared_distance(coords, i, j).sqrt());
        }
    }
    e
}
