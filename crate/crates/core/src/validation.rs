//! Extraction-quality validation: compares extracted trees against
//! ground-truth trees via three similarity components, buckets pairs by
//! ground-truth size, and correlates extracted vs ground-truth node counts.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::logic_tree::{compute_stats, InvalidTree, LogicTree, TreeStats};

/// The three structural similarities between an extracted tree (a) and its
/// ground truth (b), each `1 − |a−b| / max(a,b)` on a different statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityReport {
    /// Similarity of total node counts.
    pub s_nodes_sim: f64,
    /// Similarity of average leaf depths.
    pub s_depth_sim: f64,
    /// Similarity of average child counts (0 stands in for a tree with no
    /// internal nodes).
    pub s_width_sim: f64,
    /// Arithmetic mean of the three components.
    pub average: f64,
}

fn component(a: f64, b: f64) -> f64 {
    if a == 0.0 && b == 0.0 {
        // Identical degenerate values: treat as a perfect match rather
        // than dividing zero by zero.
        1.0
    } else {
        1.0 - (a - b).abs() / a.max(b)
    }
}

/// Compares two trees through their statistics. Symmetric per component and
/// bounded in [0,1] for the non-negative inputs `TreeStats` produces.
pub fn similarity(extracted: &TreeStats, gt: &TreeStats) -> SimilarityReport {
    let s_nodes_sim = component(extracted.n_total as f64, gt.n_total as f64);
    let s_depth_sim = component(extracted.d_leaf_avg, gt.d_leaf_avg);
    let s_width_sim = component(
        extracted.child_avg.unwrap_or(0.0),
        gt.child_avg.unwrap_or(0.0),
    );
    SimilarityReport {
        s_nodes_sim,
        s_depth_sim,
        s_width_sim,
        average: (s_nodes_sim + s_depth_sim + s_width_sim) / 3.0,
    }
}

// ─── Spearman rank correlation ───────────────────────────────────────────────

/// Rank correlation with its t-approximation p-value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpearmanResult {
    pub r: f64,
    /// Two-sided p-value from t = r·sqrt((n−2)/(1−r²)) against Student-t
    /// with n−2 degrees of freedom; exactly 0 when |r| = 1.
    pub p_value: f64,
    pub n: usize,
}

/// Inputs Spearman correlation cannot be computed on.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpearmanError {
    #[error("lists have different lengths ({xs} vs {ys})")]
    LengthMismatch { xs: usize, ys: usize },
    #[error("need at least 3 observations, got {n}")]
    TooFew { n: usize },
    #[error("values must be finite")]
    NonFinite,
    #[error("a list with zero variance has undefined rank correlation")]
    ZeroVariance,
}

/// Ranks with ties sharing the average of the positions they occupy
/// (1-based).
fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite values"));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let shared = (i + j) as f64 / 2.0 + 1.0;
        for &slot in &order[i..=j] {
            ranks[slot] = shared;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman correlation: Pearson over tie-averaged ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<SpearmanResult, SpearmanError> {
    if xs.len() != ys.len() {
        return Err(SpearmanError::LengthMismatch {
            xs: xs.len(),
            ys: ys.len(),
        });
    }
    let n = xs.len();
    if n < 3 {
        return Err(SpearmanError::TooFew { n });
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(SpearmanError::NonFinite);
    }
    let rx = average_ranks(xs);
    let ry = average_ranks(ys);
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (mx, my) = (mean(&rx), mean(&ry));
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in rx.iter().zip(&ry) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(SpearmanError::ZeroVariance);
    }
    let r = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    Ok(SpearmanResult {
        r,
        p_value: p_from_t(r, n),
        n,
    })
}

fn p_from_t(r: f64, n: usize) -> f64 {
    let df = (n - 2) as f64;
    let one_minus_r2 = 1.0 - r * r;
    if one_minus_r2 <= 0.0 {
        return 0.0;
    }
    let t = r * (df / one_minus_r2).sqrt();
    let dist = StudentsT::new(0.0, 1.0, df).expect("df >= 1");
    (2.0 * (1.0 - dist.cdf(t.abs()))).clamp(0.0, 1.0)
}

// ─── Size-binned reporting ───────────────────────────────────────────────────

/// Ground-truth node-count buckets.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "snake_case")]
pub enum SizeBin {
    /// Fewer than 25 nodes.
    Small,
    /// 25 to 49 nodes.
    Medium,
    /// 50 nodes or more.
    Large,
}

impl SizeBin {
    pub const ALL: [SizeBin; 3] = [SizeBin::Small, SizeBin::Medium, SizeBin::Large];

    pub fn label(&self) -> &'static str {
        match self {
            SizeBin::Small => "[0 - 25)",
            SizeBin::Medium => "[25 - 50)",
            SizeBin::Large => "[50, +∞)",
        }
    }

    /// The unique bin holding a ground-truth node count.
    pub fn for_node_count(n_total: usize) -> SizeBin {
        if n_total < 25 {
            SizeBin::Small
        } else if n_total < 50 {
            SizeBin::Medium
        } else {
            SizeBin::Large
        }
    }
}

/// One comparison unit: stats of the extracted and ground-truth trees plus
/// the source report's word count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationPair {
    pub extracted: TreeStats,
    pub gt: TreeStats,
    pub report_word_count: usize,
}

impl ValidationPair {
    /// Builds a pair from the trees themselves, validating both.
    pub fn from_trees(
        extracted: &LogicTree,
        gt: &LogicTree,
        report_word_count: usize,
    ) -> Result<Self, InvalidTree> {
        Ok(ValidationPair {
            extracted: compute_stats(extracted)?,
            gt: compute_stats(gt)?,
            report_word_count,
        })
    }
}

/// Aggregates for one populated bin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinSummary {
    pub bin: SizeBin,
    pub pair_count: usize,
    pub mean_nodes_sim: f64,
    pub mean_depth_sim: f64,
    pub mean_width_sim: f64,
    /// Mean of the per-pair three-component averages.
    pub mean_average: f64,
    pub mean_extracted_nodes: f64,
    pub min_word_count: usize,
    pub max_word_count: usize,
}

/// The full validation readout: per-bin aggregates (populated bins only, in
/// bin order) and one global rank correlation of extracted vs ground-truth
/// node counts. `spearman` is absent when the corpus is too small or has no
/// node-count variance to correlate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinnedReport {
    pub pair_count: usize,
    pub bins: Vec<BinSummary>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spearman: Option<SpearmanResult>,
}

/// Validation over an empty corpus is meaningless.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("validation needs at least one extracted/ground-truth pair")]
pub struct EmptyCorpus;

/// Buckets every pair by its ground-truth node count, averages similarities
/// per bucket, and correlates node counts across the whole corpus.
pub fn run_validation(pairs: &[ValidationPair]) -> Result<BinnedReport, EmptyCorpus> {
    if pairs.is_empty() {
        return Err(EmptyCorpus);
    }
    let mut buckets: BTreeMap<SizeBin, Vec<&ValidationPair>> = BTreeMap::new();
    for pair in pairs {
        buckets
            .entry(SizeBin::for_node_count(pair.gt.n_total))
            .or_default()
            .push(pair);
    }
    let bins = SizeBin::ALL
        .into_iter()
        .filter_map(|bin| buckets.get(&bin).map(|members| summarize(bin, members)))
        .collect();

    let xs: Vec<f64> = pairs.iter().map(|p| p.extracted.n_total as f64).collect();
    let ys: Vec<f64> = pairs.iter().map(|p| p.gt.n_total as f64).collect();
    let spearman = match spearman(&xs, &ys) {
        Ok(result) => Some(result),
        Err(err) => {
            log::warn!("node-count correlation unavailable: {err}");
            None
        }
    };

    Ok(BinnedReport {
        pair_count: pairs.len(),
        bins,
        spearman,
    })
}

fn summarize(bin: SizeBin, members: &[&ValidationPair]) -> BinSummary {
    let n = members.len() as f64;
    let mut sum_nodes = 0.0;
    let mut sum_depth = 0.0;
    let mut sum_width = 0.0;
    let mut sum_avg = 0.0;
    let mut sum_extracted = 0.0;
    let mut min_words = usize::MAX;
    let mut max_words = 0;
    for pair in members {
        let sim = similarity(&pair.extracted, &pair.gt);
        sum_nodes += sim.s_nodes_sim;
        sum_depth += sim.s_depth_sim;
        sum_width += sim.s_width_sim;
        sum_avg += sim.average;
        sum_extracted += pair.extracted.n_total as f64;
        min_words = min_words.min(pair.report_word_count);
        max_words = max_words.max(pair.report_word_count);
    }
    BinSummary {
        bin,
        pair_count: members.len(),
        mean_nodes_sim: sum_nodes / n,
        mean_depth_sim: sum_depth / n,
        mean_width_sim: sum_width / n,
        mean_average: sum_avg / n,
        mean_extracted_nodes: sum_extracted / n,
        min_word_count: min_words,
        max_word_count: max_words,
    }
}

impl BinnedReport {
    fn summary_for(&self, bin: SizeBin) -> Option<&BinSummary> {
        self.bins.iter().find(|b| b.bin == bin)
    }

    /// Two markdown tables, bins as columns: similarities per bin, then
    /// corpus statistics with the global correlation on the last row.
    /// Unpopulated bins render as em dashes.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let header = || {
            let mut line = String::from("| Dimension |");
            for bin in SizeBin::ALL {
                line.push_str(&format!(" {} |", bin.label()));
            }
            line.push_str("\n| --- | --- | --- | --- |\n");
            line
        };
        let row = |name: &str, cell: &dyn Fn(&BinSummary) -> String| {
            let mut line = format!("| {name} |");
            for bin in SizeBin::ALL {
                let value = self
                    .summary_for(bin)
                    .map(cell)
                    .unwrap_or_else(|| "—".to_string());
                line.push_str(&format!(" {value} |"));
            }
            line.push('\n');
            line
        };

        out.push_str(&header());
        out.push_str(&row("Total Nodes Similarity", &|b| {
            format!("{:.2}", b.mean_nodes_sim)
        }));
        out.push_str(&row("Depth Similarity", &|b| {
            format!("{:.2}", b.mean_depth_sim)
        }));
        out.push_str(&row("Width Similarity", &|b| {
            format!("{:.2}", b.mean_width_sim)
        }));
        out.push_str(&row("Average Similarity", &|b| {
            format!("{:.2}", b.mean_average)
        }));
        out.push('\n');
        out.push_str(&header());
        out.push_str(&row("Avg. Extracted Nodes Count", &|b| {
            format!("{:.1}", b.mean_extracted_nodes)
        }));
        out.push_str(&row("Min. Word Count", &|b| b.min_word_count.to_string()));
        out.push_str(&row("Max. Word Count", &|b| b.max_word_count.to_string()));
        let correlation = match &self.spearman {
            Some(s) => format!("{:.2} (p-value: {})", s.r, format_p(s.p_value)),
            None => "n/a".to_string(),
        };
        out.push_str(&format!("| Spearman Correlation | {correlation} | | |\n"));
        out
    }
}

fn format_p(p: f64) -> String {
    if p < 0.0001 {
        "<0.0001".to_string()
    } else {
        format!("{p:.4}")
    }
}
