//! Run records, their line-delimited JSON storage and the experiment manifest.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::ExperimentConfig;
use crate::error::{Error, Result};
use crate::optimizers::{RunOutcome, RunStatus};
use crate::trajectory::{Event, Trajectory};

pub const RECORDS_FILE: &str = "records.jsonl";
pub const MANIFEST_FILE: &str = "manifest.json";

/// One optimizer run, as stored on disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algo: String,
    pub problem: String,
    pub dim: usize,
    pub instance: u32,
    pub run: u32,
    pub seed: u64,
    /// `[eval_index, best_error]` improvement events.
    pub events: Vec<Event>,
    /// Best raw objective value of the run.
    pub final_value: Option<f64>,
    /// Best error of the last event; raw best value for problems without a known optimum.
    pub final_error: Option<f64>,
    pub evals_used: u64,
    pub wall_time_s: f64,
    pub status: RunStatus,
}

impl RunRecord {
    #[allow(clippy::too_many_arguments)]
    pub fn from_outcome(
        algo: &str,
        problem: &str,
        dim: usize,
        instance: u32,
        run: u32,
        seed: u64,
        outcome: RunOutcome,
        wall_time_s: f64,
    ) -> Self {
        let final_error = outcome.trajectory.events.last().map(|e| e.1);
        Self {
            algo: algo.to_string(),
            problem: problem.to_string(),
            dim,
            instance,
            run,
            seed,
            events: outcome.trajectory.events,
            final_value: outcome.best_seen.is_finite().then_some(outcome.best_seen),
            final_error,
            evals_used: outcome.evals_used,
            wall_time_s,
            status: outcome.status,
        }
    }

    /// Record for a run that aborted before producing an outcome.
    pub fn failed(algo: &str, problem: &str, dim: usize, instance: u32, run: u32, seed: u64) -> Self {
        Self {
            algo: algo.to_string(),
            problem: problem.to_string(),
            dim,
            instance,
            run,
            seed,
            events: Vec::new(),
            final_value: None,
            final_error: None,
            evals_used: 0,
            wall_time_s: 0.0,
            status: RunStatus::Failed,
        }
    }

    pub fn is_failed(&self) -> bool {
        self.status == RunStatus::Failed
    }

    pub fn trajectory(&self) -> Trajectory {
        Trajectory {
            events: self.events.clone(),
            final_evals: self.evals_used,
        }
    }

    /// Checks the stored trajectory and the cap.
    pub fn validate(&self, cap: Option<u64>) -> Result<()> {
        self.trajectory().validate()?;
        if let Some(cap) = cap {
            if self.evals_used > cap {
                return Err(Error::Trajectory(format!(
                    "evals_used {} exceeds cap {cap}",
                    self.evals_used
                )));
            }
        }
        if !self.is_failed() && self.events.is_empty() {
            return Err(Error::Trajectory("successful run without events".into()));
        }
        if self.final_error != self.events.last().map(|e| e.1) {
            return Err(Error::Trajectory("final_error differs from last event".into()));
        }
        Ok(())
    }
}

/// Buffered JSON-lines writer.
pub struct RecordWriter {
    out: BufWriter<File>,
    written: usize,
}

impl RecordWriter {
    pub fn create(path: &Path) -> Result<Self> {
        Ok(Self {
            out: BufWriter::new(File::create(path)?),
            written: 0,
        })
    }

    pub fn write(&mut self, rec: &RunRecord) -> Result<()> {
        serde_json::to_writer(&mut self.out, rec)?;
        self.out.write_all(b"\n")?;
        self.written += 1;
        Ok(())
    }

    pub fn written(&self) -> usize {
        self.written
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

/// Reads every record of a JSON-lines file; the error names the offending line.
pub fn read_records(path: &Path) -> Result<Vec<RunRecord>> {
    let reader = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: RunRecord =
            serde_json::from_str(&line).map_err(|e| Error::Trajectory(format!("{}:{}: {e}", path.display(), i + 1)))?;
        out.push(rec);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub records_file: String,
    pub record_count: usize,
    pub config: ExperimentConfig,
}

impl Manifest {
    pub fn new(config: &ExperimentConfig, record_count: usize) -> Self {
        Self {
            tool: "hopbench".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            records_file: RECORDS_FILE.into(),
            record_count,
            config: config.clone(),
        }
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join(MANIFEST_FILE);
        let mut f = BufWriter::new(File::create(&path)?);
        serde_json::to_writer_pretty(&mut f, self)?;
        f.write_all(b"\n")?;
        f.flush()?;
        Ok(path)
    }

    pub fn read(dir: &Path) -> Result<Self> {
        let f = File::open(dir.join(MANIFEST_FILE))?;
        Ok(serde_json::from_reader(BufReader::new(f))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> RunRecord {
        RunRecord {
            algo: "bh".into(),
            problem: "f1".into(),
            dim: 5,
            instance: 1,
            run: 2,
            seed: u64::MAX - 3,
            events: vec![Event(1, 12.345678901234567), Event(40, 1e-8)],
            final_value: Some(-3.0000000000000004),
            final_error: Some(1e-8),
            evals_used: 40,
            wall_time_s: 0.0,
            status: RunStatus::TargetReached,
        }
    }

    #[test]
    fn json_field_names() {
        let v: serde_json::Value = serde_json::to_value(sample()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        let mut expected = vec![
            "algo",
            "problem",
            "dim",
            "instance",
            "run",
            "seed",
            "events",
            "final_value",
            "final_error",
            "evals_used",
            "wall_time_s",
            "status",
        ];
        let mut keys = keys;
        keys.sort();
        expected.sort();
        assert_eq!(keys, expected);
        assert_eq!(v["events"][0][0], 1);
        assert_eq!(v["status"], "target_reached");
    }

    #[test]
    fn file_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join(RECORDS_FILE);
        let mut w = RecordWriter::create(&path).unwrap();
        w.write(&sample()).unwrap();
        w.write(&RunRecord::failed("de", "f2", 3, 1, 1, 7)).unwrap();
        w.finish().unwrap();
        let back = read_records(&path).unwrap();
        assert_eq!(back[0], sample());
        assert!(back[1].is_failed());
        back[0].validate(Some(40)).unwrap();
        assert!(back[0].validate(Some(39)).is_err());
    }

    #[test]
    fn corrupt_line_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        std::fs::write(&path, "{\"algo\": 3}\n").unwrap();
        let err = read_records(&path).unwrap_err().to_string();
        assert!(err.contains(":1:"), "{err}");
    }
}
