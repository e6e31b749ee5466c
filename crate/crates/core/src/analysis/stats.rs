//! Rank-based hypothesis tests: Mann-Whitney U, Wilcoxon signed-rank,
//! Friedman with Conover post-hoc comparisons, and Benjamini-Hochberg adjustment.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Normal, StudentsT};

use crate::error::{Error, Result};

/// Largest combined sample size handled by exact Mann-Whitney enumeration.
pub const MWU_EXACT_MAX: usize = 16;
/// Largest sample handled by the exact signed-rank distribution.
pub const WILCOXON_EXACT_MAX: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// The first sample tends to be smaller (better when minimizing).
    FirstBetter,
    SecondBetter,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub adjusted_p: Option<f64>,
    pub direction: Direction,
}

impl TestResult {
    fn new(statistic: f64, p: f64, direction: Direction) -> Self {
        Self {
            statistic,
            p_value: p.clamp(0.0, 1.0),
            adjusted_p: None,
            direction,
        }
    }

    /// Adjusted p-value when present, raw otherwise.
    pub fn effective_p(&self) -> f64 {
        self.adjusted_p.unwrap_or(self.p_value)
    }

    pub fn significant(&self, alpha: f64) -> bool {
        self.effective_p() < alpha
    }
}

fn std_normal_sf(z: f64) -> f64 {
    Normal::new(0.0, 1.0).expect("unit normal").sf(z)
}

/// Average (mid) ranks starting at 1, plus the tie group sizes.
pub fn midranks(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut ties = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && values[idx[j]] == values[idx[i]] {
            j += 1;
        }
        let r = (i + j + 1) as f64 / 2.0;
        for &k in &idx[i..j] {
            ranks[k] = r;
        }
        if j - i > 1 {
            ties.push(j - i);
        }
        i = j;
    }
    (ranks, ties)
}

fn tie_sum(ties: &[usize]) -> f64 {
    ties.iter().map(|&t| (t * t * t - t) as f64).sum()
}

/// Number of arrangements of `n` first-sample and `m` second-sample items for
/// each value of `U` (first-sample items ranked above second-sample ones).
fn mwu_counts(n: usize, m: usize) -> Vec<f64> {
    // f[i][j] = counts for sizes (i, j); U grows by j when a first-sample item is largest
    let mut f: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); m + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=m {
            let len = i * j + 1;
            let mut v = vec![0.0; len];
            if i == 0 || j == 0 {
                v[0] = 1.0;
            } else {
                for (u, c) in f[i - 1][j].iter().enumerate() {
                    v[u + j] += c;
                }
                for (u, c) in f[i][j - 1].iter().enumerate() {
                    v[u] += c;
                }
            }
            f[i][j] = v;
        }
    }
    std::mem::take(&mut f[n][m])
}

fn two_sided_from_counts(counts: &[f64], stat_index: usize) -> f64 {
    let total: f64 = counts.iter().sum();
    let lower: f64 = counts[..=stat_index].iter().sum::<f64>() / total;
    let upper: f64 = counts[stat_index..].iter().sum::<f64>() / total;
    (2.0 * lower.min(upper)).min(1.0)
}

/// Two-sided Mann-Whitney U test. The statistic is `U_a`, the number of
/// pairs with `a_i > b_j` (ties count one half).
pub fn mann_whitney_u(a: &[f64], b: &[f64]) -> Result<TestResult> {
    let (n, m) = (a.len(), b.len());
    if n == 0 || m == 0 {
        return Err(Error::Analysis("Mann-Whitney needs two nonempty samples".into()));
    }
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let (ranks, ties) = midranks(&pooled);
    let ra: f64 = ranks[..n].iter().sum();
    let u = ra - (n * (n + 1)) as f64 / 2.0;
    let mu = (n * m) as f64 / 2.0;
    let direction = if u < mu {
        Direction::FirstBetter
    } else if u > mu {
        Direction::SecondBetter
    } else {
        Direction::None
    };

    let p = if n + m <= MWU_EXACT_MAX && ties.is_empty() {
        two_sided_from_counts(&mwu_counts(n, m), u.round() as usize)
    } else {
        let big_n = (n + m) as f64;
        let var = (n * m) as f64 / 12.0 * ((big_n + 1.0) - tie_sum(&ties) / (big_n * (big_n - 1.0)));
        if var <= 0.0 {
            1.0
        } else {
            let z = ((u - mu).abs() - 0.5).max(0.0) / var.sqrt();
            (2.0 * std_normal_sf(z)).min(1.0)
        }
    };
    Ok(TestResult::new(u, p, direction))
}

/// Two-sided Wilcoxon signed-rank test on paired differences `a_i - b_i`.
/// Zero differences are dropped; the statistic is `W+`.
pub fn wilcoxon_signed_rank(diffs: &[f64]) -> Result<TestResult> {
    if diffs.iter().any(|d| d.is_nan()) {
        return Err(Error::Analysis("NaN difference".into()));
    }
    let d: Vec<f64> = diffs.iter().copied().filter(|v| *v != 0.0).collect();
    let n = d.len();
    if n == 0 {
        return Ok(TestResult::new(0.0, 1.0, Direction::None));
    }
    let abs: Vec<f64> = d.iter().map(|v| v.abs()).collect();
    let (ranks, ties) = midranks(&abs);
    let w_plus: f64 = d.iter().zip(&ranks).filter(|(v, _)| **v > 0.0).map(|(_, r)| r).sum();
    let mean = (n * (n + 1)) as f64 / 4.0;
    let direction = if w_plus > mean {
        Direction::SecondBetter
    } else if w_plus < mean {
        Direction::FirstBetter
    } else {
        Direction::None
    };

    let p = if n <= WILCOXON_EXACT_MAX {
        // doubled midranks are integers
        let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
        let total: usize = doubled.iter().sum();
        let mut counts = vec![0.0f64; total + 1];
        counts[0] = 1.0;
        for &r in &doubled {
            for s in (r..=total).rev() {
                counts[s] += counts[s - r];
            }
        }
        two_sided_from_counts(&counts, (2.0 * w_plus).round() as usize)
    } else {
        let nf = n as f64;
        let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_sum(&ties) / 48.0;
        if var <= 0.0 {
            1.0
        } else {
            let z = ((w_plus - mean).abs() - 0.5).max(0.0) / var.sqrt();
            (2.0 * std_normal_sf(z)).min(1.0)
        }
    };
    Ok(TestResult::new(w_plus, p, direction))
}

/// Benjamini-Hochberg step-up adjustment, returned in input order.
pub fn benjamini_hochberg(p: &[f64]) -> Vec<f64> {
    let m = p.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p[a].total_cmp(&p[b]));
    let mut adj = vec![0.0; m];
    let mut running = 1.0f64;
    for (pos, &i) in order.iter().enumerate().rev() {
        let v = p[i] * m as f64 / (pos + 1) as f64;
        running = running.min(v);
        adj[i] = running.min(1.0).max(p[i]);
    }
    adj
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseResult {
    pub first: usize,
    pub second: usize,
    pub result: TestResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FriedmanResult {
    pub omnibus: TestResult,
    /// Empty unless the omnibus test rejects at the requested level.
    pub pairwise: Vec<PairwiseResult>,
    /// Average within-block rank per algorithm (1 = best).
    pub average_ranks: Vec<f64>,
}

impl FriedmanResult {
    pub fn pair(&self, i: usize, j: usize) -> Option<&PairwiseResult> {
        self.pairwise
            .iter()
            .find(|p| (p.first == i && p.second == j) || (p.first == j && p.second == i))
    }

    /// Whether algorithms `i` and `j` differ significantly after adjustment.
    pub fn differ(&self, i: usize, j: usize, alpha: f64) -> bool {
        self.pair(i, j).is_some_and(|p| p.result.significant(alpha))
    }
}

/// Friedman test on `blocks[b][k]` (rows: problems, columns: algorithms,
/// smaller is better), followed by Conover comparisons with
/// Benjamini-Hochberg-adjusted p-values when the omnibus test rejects at `alpha`.
pub fn friedman_conover(blocks: &[Vec<f64>], alpha: f64) -> Result<FriedmanResult> {
    let n = blocks.len();
    let k = blocks.first().map_or(0, Vec::len);
    if n < 2 || k < 2 {
        return Err(Error::Analysis(
            "Friedman needs at least 2 blocks and 2 algorithms".into(),
        ));
    }
    if blocks.iter().any(|b| b.len() != k) {
        return Err(Error::Analysis("ragged block matrix".into()));
    }
    let (nf, kf) = (n as f64, k as f64);
    let mut rank_sums = vec![0.0; k];
    let mut a1 = 0.0;
    let mut ties_total = 0.0;
    for row in blocks {
        let (r, ties) = midranks(row);
        for (j, v) in r.iter().enumerate() {
            rank_sums[j] += v;
            a1 += v * v;
        }
        ties_total += tie_sum(&ties);
    }
    let average_ranks: Vec<f64> = rank_sums.iter().map(|r| r / nf).collect();
    let sum_r2: f64 = rank_sums.iter().map(|r| r * r).sum();

    let denom = 1.0 - ties_total / (nf * (kf * kf * kf - kf));
    let chi2 = if denom <= 1e-15 {
        0.0
    } else {
        ((12.0 * sum_r2) / (nf * kf * (kf + 1.0)) - 3.0 * nf * (kf + 1.0)) / denom
    };
    let chi2 = chi2.max(0.0);
    let p = if chi2 == 0.0 {
        1.0
    } else {
        ChiSquared::new(kf - 1.0).expect("df >= 1").sf(chi2)
    };
    let omnibus = TestResult::new(chi2, p, Direction::None);

    let mut pairwise = Vec::new();
    if p < alpha {
        let df = (nf - 1.0) * (kf - 1.0);
        let se = (2.0 * (nf * a1 - sum_r2) / df).max(0.0).sqrt();
        let t_dist = StudentsT::new(0.0, 1.0, df).expect("positive df");
        for i in 0..k {
            for j in i + 1..k {
                let diff = rank_sums[i] - rank_sums[j];
                let (t, pv) = if se > 0.0 {
                    let t = diff.abs() / se;
                    (t, (2.0 * t_dist.sf(t)).min(1.0))
                } else if diff != 0.0 {
                    (f64::INFINITY, 0.0)
                } else {
                    (0.0, 1.0)
                };
                let direction = if diff < 0.0 {
                    Direction::FirstBetter
                } else if diff > 0.0 {
                    Direction::SecondBetter
                } else {
                    Direction::None
                };
                pairwise.push(PairwiseResult {
                    first: i,
                    second: j,
                    result: TestResult::new(t, pv, direction),
                });
            }
        }
        let raw: Vec<f64> = pairwise.iter().map(|p| p.result.p_value).collect();
        for (pr, adj) in pairwise.iter_mut().zip(benjamini_hochberg(&raw)) {
            pr.result.adjusted_p = Some(adj.max(pr.result.p_value));
        }
    }
    Ok(FriedmanResult {
        omnibus,
        pairwise,
        average_ranks,
    })
}

/// Maximal groups of algorithms, contiguous in average-rank order, with no
/// significant difference between any two members. Indices are returned
/// sorted by rank.
pub fn rank_cliques(res: &FriedmanResult, alpha: f64) -> Vec<Vec<usize>> {
    let k = res.average_ranks.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| res.average_ranks[a].total_cmp(&res.average_ranks[b]).then(a.cmp(&b)));
    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut last_end = 0;
    for s in 0..k {
        let mut e = s;
        while e + 1 < k && (s..=e).all(|i| !res.differ(order[i], order[e + 1], alpha)) {
            e += 1;
        }
        if e > s && e + 1 > last_end {
            cliques.push(order[s..=e].to_vec());
            last_end = e + 1;
        }
    }
    cliques
}
