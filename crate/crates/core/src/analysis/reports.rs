//! Report bundle: logscore tables with significance markers, runtime tables,
//! ECDF and convergence data, rank statistics and cluster summaries.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use super::metrics::{
    ecdf_curve, error_at_budget, hitting_time, log_grid, logscore, sr_ar_ert, DEFAULT_BUDGETS, DEFAULT_TARGETS,
};
use super::stats::{friedman_conover, mann_whitney_u, rank_cliques, wilcoxon_signed_rank, Direction, TestResult};
use crate::error::{Error, Result};
use crate::harness::RunRecord;
use crate::problems::{parse_cluster_name, FunctionGroup};
use crate::trajectory::Trajectory;

pub const SUMMARY_FILE: &str = "summary.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ReportConfig {
    pub budgets: Vec<u64>,
    pub targets: Vec<f64>,
    /// Algorithm the significance markers compare against; the first one seen when unset.
    pub reference: Option<String>,
    pub alpha: f64,
    /// Run cap used for running-time statistics; the largest `evals_used` per problem when unset.
    pub cap: Option<u64>,
    /// Errors are floored here before taking logscores.
    pub error_floor: f64,
    pub grid_per_decade: usize,
}

impl Default for ReportConfig {
    fn default() -> Self {
        Self {
            budgets: DEFAULT_BUDGETS.to_vec(),
            targets: DEFAULT_TARGETS.to_vec(),
            reference: None,
            alpha: 0.05,
            cap: None,
            error_floor: 1e-8,
            grid_per_decade: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Marker {
    Better,
    Worse,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogscoreRow {
    pub budget: u64,
    pub problem: String,
    pub dim: usize,
    pub algo: String,
    pub mean_logscore: f64,
    pub marker: Marker,
    pub p_value: f64,
    pub runs: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuntimeRow {
    pub target: f64,
    pub problem: String,
    pub dim: usize,
    pub algo: String,
    pub sr: f64,
    pub ar: f64,
    /// Infinite when no run reached the target.
    pub ert: f64,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EcdfRow {
    pub algo: String,
    pub dim: usize,
    pub evals: u64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseRow {
    pub algo_a: String,
    pub algo_b: String,
    pub statistic: f64,
    pub p_value: f64,
    pub adjusted_p: f64,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub algo: String,
    pub average_rank: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CliqueRow {
    pub clique: usize,
    pub members: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WilcoxonRow {
    pub algo: String,
    pub reference: String,
    pub statistic: f64,
    pub p_value: f64,
    pub direction: Direction,
    pub functions: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxplotRow {
    pub group: String,
    pub dim: usize,
    pub algo: String,
    pub n: usize,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub whisker_low: f64,
    pub whisker_high: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub problem: String,
    pub dim: usize,
    pub algo: String,
    pub evals: u64,
    pub mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub runs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterRow {
    pub problem: String,
    pub dim: usize,
    pub algo: String,
    pub runs: usize,
    pub mean: f64,
    pub std: f64,
    pub best: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ReportBundle {
    pub algorithms: Vec<String>,
    pub reference: Option<String>,
    pub logscores: Vec<LogscoreRow>,
    pub runtime: Vec<RuntimeRow>,
    pub ecdf: Vec<EcdfRow>,
    pub friedman: Option<TestResult>,
    pub pairwise: Vec<PairwiseRow>,
    pub ranks: Vec<RankRow>,
    pub cliques: Vec<CliqueRow>,
    pub wilcoxon: Vec<WilcoxonRow>,
    pub boxplots: Vec<BoxplotRow>,
    pub convergence: Vec<ConvergenceRow>,
    pub clusters: Vec<ClusterRow>,
    pub warnings: Vec<String>,
}

/// Sort key placing `f2` before `f10` and clusters after the suite.
fn problem_key(name: &str) -> (u8, u64, String) {
    if let Some(id) = name.strip_prefix('f').and_then(|s| s.parse::<u64>().ok()) {
        return (0, id, String::new());
    }
    if let Some(c) = parse_cluster_name(name) {
        return (1, c.n_atoms as u64, name.to_string());
    }
    (2, 0, name.to_string())
}

type CellKey = ((u8, u64, String), usize, String);

fn cell_key(r: &RunRecord) -> CellKey {
    (problem_key(&r.problem), r.dim, r.problem.clone())
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

fn mean_std(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let std = if v.len() > 1 {
        (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, std)
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    quantile(&s, 0.5)
}

struct Cell<'a> {
    problem: String,
    dim: usize,
    /// Per algorithm index: successful runs.
    runs: Vec<Vec<&'a RunRecord>>,
    failed: Vec<usize>,
}

pub fn make_reports(records: &[RunRecord], cfg: &ReportConfig) -> Result<ReportBundle> {
    if records.is_empty() {
        return Err(Error::Analysis("no records to analyze".into()));
    }
    let mut algorithms: Vec<String> = Vec::new();
    for r in records {
        if !algorithms.contains(&r.algo) {
            algorithms.push(r.algo.clone());
        }
    }
    let reference = match &cfg.reference {
        Some(a) if algorithms.contains(a) => Some(a.clone()),
        Some(a) => return Err(Error::Analysis(format!("reference algorithm '{a}' not in records"))),
        None => algorithms.first().cloned(),
    };
    let ref_idx = reference.as_ref().and_then(|r| algorithms.iter().position(|a| a == r));
    let algo_idx = |name: &str| algorithms.iter().position(|a| a == name).expect("collected");

    let mut bundle = ReportBundle {
        algorithms: algorithms.clone(),
        reference: reference.clone(),
        ..ReportBundle::default()
    };

    let mut cells: BTreeMap<CellKey, Cell> = BTreeMap::new();
    for r in records {
        let c = cells.entry(cell_key(r)).or_insert_with(|| Cell {
            problem: r.problem.clone(),
            dim: r.dim,
            runs: vec![Vec::new(); algorithms.len()],
            failed: vec![0; algorithms.len()],
        });
        let a = algo_idx(&r.algo);
        if r.is_failed() || r.events.is_empty() {
            c.failed[a] += 1;
        } else {
            c.runs[a].push(r);
        }
    }
    for c in cells.values() {
        for (a, f) in c.failed.iter().enumerate() {
            if *f > 0 {
                bundle.warnings.push(format!(
                    "{} D={} {}: {f} failed run(s) excluded",
                    c.problem, c.dim, algorithms[a]
                ));
            }
        }
    }

    let (suite, cluster): (Vec<&Cell>, Vec<&Cell>) =
        cells.values().partition(|c| parse_cluster_name(&c.problem).is_none());

    let final_budget = cfg.budgets.iter().copied().max();
    // per (cell, algo): per-run logscores at the final budget
    let mut final_scores: Vec<Vec<Vec<f64>>> = Vec::new();

    for c in &suite {
        // logscores for every budget
        for &b in &cfg.budgets {
            let mut per_algo: Vec<Vec<(u32, f64)>> = vec![Vec::new(); algorithms.len()];
            for (a, runs) in c.runs.iter().enumerate() {
                for r in runs {
                    let e = error_at_budget(&r.trajectory(), b)?.max(cfg.error_floor);
                    per_algo[a].push((r.instance, e));
                }
            }
            let mut best: BTreeMap<u32, f64> = BTreeMap::new();
            for (inst, e) in per_algo.iter().flatten() {
                let v = best.entry(*inst).or_insert(f64::INFINITY);
                *v = v.min(*e);
            }
            let scores: Vec<Vec<f64>> = per_algo
                .iter()
                .map(|v| v.iter().map(|(i, e)| logscore(*e, best[i])).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            for (a, s) in scores.iter().enumerate() {
                if s.is_empty() {
                    continue;
                }
                let (marker, p) = match ref_idx {
                    Some(ri) if ri != a && !scores[ri].is_empty() => {
                        let t = mann_whitney_u(s, &scores[ri])?;
                        let m = if t.p_value < cfg.alpha {
                            match t.direction {
                                Direction::FirstBetter => Marker::Better,
                                Direction::SecondBetter => Marker::Worse,
                                Direction::None => Marker::None,
                            }
                        } else {
                            Marker::None
                        };
                        (m, t.p_value)
                    }
                    _ => (Marker::None, 1.0),
                };
                bundle.logscores.push(LogscoreRow {
                    budget: b,
                    problem: c.problem.clone(),
                    dim: c.dim,
                    algo: algorithms[a].clone(),
                    mean_logscore: s.iter().sum::<f64>() / s.len() as f64,
                    marker,
                    p_value: p,
                    runs: s.len(),
                    failed: c.failed[a],
                });
            }
            if Some(b) == final_budget {
                final_scores.push(scores);
            }
        }

        // fixed-target statistics
        let cap = cfg
            .cap
            .unwrap_or_else(|| c.runs.iter().flatten().map(|r| r.evals_used).max().unwrap_or(1));
        for &t in &cfg.targets {
            for (a, runs) in c.runs.iter().enumerate() {
                if runs.is_empty() {
                    continue;
                }
                let times: Vec<Option<u64>> = runs.iter().map(|r| hitting_time(&r.trajectory(), t)).collect();
                let s = sr_ar_ert(&times, cap)?;
                bundle.runtime.push(RuntimeRow {
                    target: t,
                    problem: c.problem.clone(),
                    dim: c.dim,
                    algo: algorithms[a].clone(),
                    sr: s.sr,
                    ar: s.ar,
                    ert: s.ert.unwrap_or(f64::INFINITY),
                    runs: runs.len(),
                });
            }
        }
    }

    // ECDF per algorithm and dimension over all suite problems
    let dims: BTreeSet<usize> = suite.iter().map(|c| c.dim).collect();
    for &d in &dims {
        let cap = cfg.cap.unwrap_or_else(|| {
            suite
                .iter()
                .filter(|c| c.dim == d)
                .flat_map(|c| c.runs.iter().flatten())
                .map(|r| r.evals_used)
                .max()
                .unwrap_or(1)
        });
        let grid = log_grid(cap, cfg.grid_per_decade);
        for (a, name) in algorithms.iter().enumerate() {
            let trajs: Vec<Trajectory> = suite
                .iter()
                .filter(|c| c.dim == d)
                .flat_map(|c| c.runs[a].iter().map(|r| r.trajectory()))
                .collect();
            if trajs.is_empty() {
                continue;
            }
            for (evals, fraction) in ecdf_curve(&trajs, &cfg.targets, &grid)? {
                bundle.ecdf.push(EcdfRow {
                    algo: name.clone(),
                    dim: d,
                    evals,
                    fraction,
                });
            }
        }
    }

    // rank statistics over complete blocks at the final budget
    let blocks: Vec<Vec<f64>> = final_scores
        .iter()
        .filter(|s| s.iter().all(|v| !v.is_empty()))
        .map(|s| s.iter().map(|v| v.iter().sum::<f64>() / v.len() as f64).collect())
        .collect();
    if final_scores.len() > blocks.len() {
        bundle.warnings.push(format!(
            "{} of {} problem cells lack runs for some algorithm; excluded from rank tests",
            final_scores.len() - blocks.len(),
            final_scores.len()
        ));
    }
    if blocks.len() >= 2 && algorithms.len() >= 2 {
        let fr = friedman_conover(&blocks, cfg.alpha)?;
        for (a, r) in fr.average_ranks.iter().enumerate() {
            bundle.ranks.push(RankRow {
                algo: algorithms[a].clone(),
                average_rank: *r,
            });
        }
        for p in &fr.pairwise {
            bundle.pairwise.push(PairwiseRow {
                algo_a: algorithms[p.first].clone(),
                algo_b: algorithms[p.second].clone(),
                statistic: p.result.statistic,
                p_value: p.result.p_value,
                adjusted_p: p.result.effective_p(),
                significant: p.result.significant(cfg.alpha),
            });
        }
        for (i, cl) in rank_cliques(&fr, cfg.alpha).iter().enumerate() {
            bundle.cliques.push(CliqueRow {
                clique: i + 1,
                members: cl.iter().map(|&a| algorithms[a].as_str()).collect::<Vec<_>>().join(";"),
            });
        }
        bundle.friedman = Some(fr.omnibus);

        if let Some(ri) = ref_idx {
            for (a, name) in algorithms.iter().enumerate() {
                if a == ri {
                    continue;
                }
                let diffs: Vec<f64> = final_scores
                    .iter()
                    .filter(|s| !s[a].is_empty() && !s[ri].is_empty())
                    .map(|s| median(&s[a]) - median(&s[ri]))
                    .collect();
                if diffs.is_empty() {
                    continue;
                }
                let t = wilcoxon_signed_rank(&diffs)?;
                bundle.wilcoxon.push(WilcoxonRow {
                    algo: name.clone(),
                    reference: algorithms[ri].clone(),
                    statistic: t.statistic,
                    p_value: t.p_value,
                    direction: t.direction,
                    functions: diffs.len(),
                });
            }
        }
    }

    // boxplots: raw per-run logscores pooled per function group
    if final_budget.is_some() {
        let mut pooled: BTreeMap<(usize, usize, usize), Vec<f64>> = BTreeMap::new();
        let mut groups: BTreeMap<usize, FunctionGroup> = BTreeMap::new();
        for (c, scores) in suite.iter().zip(&final_scores) {
            let Some(g) = problem_key(&c.problem).1.try_into().ok().and_then(FunctionGroup::of) else {
                continue;
            };
            let gi = FunctionGroup::ALL.iter().position(|x| *x == g).expect("listed");
            groups.insert(gi, g);
            for (a, s) in scores.iter().enumerate() {
                pooled.entry((gi, c.dim, a)).or_default().extend(s);
            }
        }
        for ((gi, dim, a), mut v) in pooled {
            if v.is_empty() {
                continue;
            }
            v.sort_by(f64::total_cmp);
            let (q1, med, q3) = (quantile(&v, 0.25), quantile(&v, 0.5), quantile(&v, 0.75));
            let iqr = q3 - q1;
            let lo_fence = q1 - 1.5 * iqr;
            let hi_fence = q3 + 1.5 * iqr;
            bundle.boxplots.push(BoxplotRow {
                group: groups[&gi].label().to_string(),
                dim,
                algo: algorithms[a].clone(),
                n: v.len(),
                q1,
                median: med,
                q3,
                whisker_low: v.iter().copied().find(|x| *x >= lo_fence).unwrap_or(q1),
                whisker_high: v.iter().rev().copied().find(|x| *x <= hi_fence).unwrap_or(q3),
            });
        }
    }

    // convergence curves with 95% confidence bands, and the cluster table
    for c in suite.iter().chain(&cluster) {
        let cap = c.runs.iter().flatten().map(|r| r.evals_used).max().unwrap_or(1);
        let grid = log_grid(cap, cfg.grid_per_decade);
        for (a, runs) in c.runs.iter().enumerate() {
            if runs.is_empty() {
                continue;
            }
            let trajs: Vec<Trajectory> = runs.iter().map(|r| r.trajectory()).collect();
            let n = trajs.len();
            let tq = if n > 1 {
                StudentsT::new(0.0, 1.0, (n - 1) as f64).expect("df").inverse_cdf(0.975)
            } else {
                0.0
            };
            for &e in &grid {
                let vals: Vec<f64> = trajs
                    .iter()
                    .map(|t| error_at_budget(t, e).unwrap_or(t.events[0].1))
                    .collect();
                let (m, s) = mean_std(&vals);
                let half = tq * s / (n as f64).sqrt();
                bundle.convergence.push(ConvergenceRow {
                    problem: c.problem.clone(),
                    dim: c.dim,
                    algo: algorithms[a].clone(),
                    evals: e,
                    mean: m,
                    ci_low: m - half,
                    ci_high: m + half,
                    runs: n,
                });
            }
        }
    }
    bundle.clusters = cluster_table_from(&cluster, &algorithms);
    Ok(bundle)
}

fn cluster_table_from(cells: &[&Cell], algorithms: &[String]) -> Vec<ClusterRow> {
    let mut rows = Vec::new();
    for c in cells {
        for (a, runs) in c.runs.iter().enumerate() {
            let vals: Vec<f64> = runs.iter().filter_map(|r| r.final_value).collect();
            if vals.is_empty() {
                continue;
            }
            let (mean, std) = mean_std(&vals);
            rows.push(ClusterRow {
                problem: c.problem.clone(),
                dim: c.dim,
                algo: algorithms[a].clone(),
                runs: vals.len(),
                mean,
                std,
                best: vals.iter().copied().fold(f64::INFINITY, f64::min),
            });
        }
    }
    rows
}

/// Mean, sample standard deviation and best final value per problem and algorithm.
pub fn cluster_table(records: &[RunRecord]) -> Vec<ClusterRow> {
    let mut algorithms: Vec<String> = Vec::new();
    for r in records {
        if !algorithms.contains(&r.algo) {
            algorithms.push(r.algo.clone());
        }
    }
    let mut cells: BTreeMap<CellKey, Cell> = BTreeMap::new();
    for r in records.iter().filter(|r| !r.is_failed()) {
        let c = cells.entry(cell_key(r)).or_insert_with(|| Cell {
            problem: r.problem.clone(),
            dim: r.dim,
            runs: vec![Vec::new(); algorithms.len()],
            failed: vec![0; algorithms.len()],
        });
        c.runs[algorithms.iter().position(|a| *a == r.algo).expect("collected")].push(r);
    }
    let refs: Vec<&Cell> = cells.values().collect();
    cluster_table_from(&refs, &algorithms)
}

fn write_csv<T: Serialize>(dir: &Path, name: &str, rows: &[T]) -> Result<()> {
    if rows.is_empty() {
        return Ok(());
    }
    let mut w = csv::Writer::from_path(dir.join(name)).map_err(|e| Error::Analysis(e.to_string()))?;
    for r in rows {
        w.serialize(r).map_err(|e| Error::Analysis(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

impl ReportBundle {
    /// Writes one CSV per nonempty table plus `summary.json` holding everything.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        write_csv(dir, "logscores.csv", &self.logscores)?;
        write_csv(dir, "runtime.csv", &self.runtime)?;
        write_csv(dir, "ecdf.csv", &self.ecdf)?;
        write_csv(dir, "pairwise.csv", &self.pairwise)?;
        write_csv(dir, "ranks.csv", &self.ranks)?;
        write_csv(dir, "cliques.csv", &self.cliques)?;
        write_csv(dir, "wilcoxon.csv", &self.wilcoxon)?;
        write_csv(dir, "boxplots.csv", &self.boxplots)?;
        write_csv(dir, "convergence.csv", &self.convergence)?;
        write_csv(dir, "clusters.csv", &self.clusters)?;
        let f = fs::File::create(dir.join(SUMMARY_FILE))?;
        serde_json::to_writer_pretty(std::io::BufWriter::new(f), self)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::optimizers::RunStatus;
    use crate::trajectory::Event;

    fn rec(algo: &str, problem: &str, instance: u32, run: u32, ev: &[(u64, f64)]) -> RunRecord {
        RunRecord {
            algo: algo.into(),
            problem: problem.into(),
            dim: 2,
            instance,
            run,
            seed: 0,
            events: ev.iter().map(|&(i, e)| Event(i, e)).collect(),
            final_value: Some(ev.last().unwrap().1),
            final_error: Some(ev.last().unwrap().1),
            evals_used: 1000,
            wall_time_s: 0.0,
            status: RunStatus::BudgetExhausted,
        }
    }

    fn cfg() -> ReportConfig {
        ReportConfig {
            budgets: vec![10, 1000],
            cap: Some(1000),
            ..ReportConfig::default()
        }
    }

    #[test]
    fn self_reference_and_min_logscore() {
        let mut recs = Vec::new();
        for f in ["f1", "f2", "f3"] {
            for run in 1..=4 {
                recs.push(rec("a", f, 1, run, &[(1, 10.0), (50, 0.1 * run as f64)]));
                recs.push(rec("b", f, 1, run, &[(1, 20.0), (500, 1.0 + run as f64)]));
            }
        }
        let b = make_reports(&recs, &cfg()).unwrap();
        for row in b.logscores.iter().filter(|r| r.algo == "a") {
            assert_eq!(row.marker, Marker::None);
        }
        let worse: Vec<_> = b
            .logscores
            .iter()
            .filter(|r| r.algo == "b" && r.budget == 1000)
            .collect();
        assert!(worse.iter().all(|r| r.marker == Marker::Worse));
        assert_eq!(b.ranks.len(), 2);
        assert!(b.ranks[0].average_rank < b.ranks[1].average_rank);
    }

    #[test]
    fn identical_algorithms_share_clique() {
        let mut recs = Vec::new();
        for f in ["f1", "f2", "f3", "f4"] {
            for run in 1..=3 {
                let ev = [(1, 5.0), (10 * run as u64, 1e-3)];
                recs.push(rec("x", f, 1, run, &ev));
                recs.push(rec("y", f, 1, run, &ev));
            }
        }
        let b = make_reports(&recs, &cfg()).unwrap();
        assert_eq!(b.cliques.len(), 1);
        assert_eq!(b.cliques[0].members, "x;y");
        assert_eq!(b.friedman.unwrap().p_value, 1.0);
    }

    #[test]
    fn runtime_and_files() {
        let recs = vec![
            rec("a", "f1", 1, 1, &[(1, 1.0), (100, 1e-8)]),
            rec("a", "f1", 1, 2, &[(1, 1.0)]),
        ];
        let b = make_reports(&recs, &cfg()).unwrap();
        let r = b.runtime.iter().find(|r| r.target == 1e-8).unwrap();
        assert_eq!((r.sr, r.ar, r.ert), (0.5, 550.0, 1100.0));
        let dir = tempfile::tempdir().unwrap();
        b.write(dir.path()).unwrap();
        assert!(dir.path().join("runtime.csv").exists());
        let text = fs::read_to_string(dir.path().join("logscores.csv")).unwrap();
        assert!(text.starts_with("budget,problem,dim,algo,mean_logscore,marker"));
    }

    #[test]
    fn cluster_summary() {
        let recs = vec![
            rec("bh", "LJ_2", 1, 1, &[(1, -0.5), (30, -1.0)]),
            rec("bh", "LJ_2", 1, 2, &[(1, -0.2), (30, -0.9)]),
        ];
        let t = cluster_table(&recs);
        assert_eq!(t.len(), 1);
        assert!((t[0].mean + 0.95).abs() < 1e-12);
        assert_eq!(t[0].best, -1.0);
        let one = cluster_table(&recs[..1]);
        assert_eq!(one[0].std, 0.0);
    }

    #[test]
    fn failed_runs_warned() {
        let mut recs = vec![rec("a", "f1", 1, 1, &[(1, 1.0)])];
        recs.push(RunRecord::failed("a", "f1", 2, 1, 2, 0));
        let b = make_reports(&recs, &cfg()).unwrap();
        assert_eq!(b.warnings.len(), 1);
        assert_eq!(b.logscores[0].failed, 1);
    }
}
