//! Weighted aggregation of the ten dimension scores into a final score, and
//! leaderboard assembly/rendering (JSON, CSV, markdown).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::dimension::Dimension;
use crate::logic_tree::TreeStats;

/// How far from 1.0 the weight sum may drift.
const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// Per-dimension weights. The default is the reference configuration:
/// a uniform 10% on each of the ten dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<Dimension, f64>", into = "BTreeMap<Dimension, f64>")]
pub struct DimensionWeights {
    weights: BTreeMap<Dimension, f64>,
}

impl Default for DimensionWeights {
    fn default() -> Self {
        DimensionWeights {
            weights: Dimension::ALL.into_iter().map(|d| (d, 0.10)).collect(),
        }
    }
}

impl DimensionWeights {
    /// Validates and wraps a weight map: all ten dimensions present,
    /// nothing negative, sum within 1e-9 of 1.
    pub fn new(weights: BTreeMap<Dimension, f64>) -> Result<Self, WeightError> {
        for dim in Dimension::ALL {
            let w = *weights
                .get(&dim)
                .ok_or(WeightError::MissingDimension(dim))?;
            if w < 0.0 || !w.is_finite() {
                return Err(WeightError::Negative { dimension: dim, weight: w });
            }
        }
        let sum: f64 = weights.values().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(WeightError::NotNormalized { sum });
        }
        Ok(DimensionWeights { weights })
    }

    pub fn get(&self, dimension: Dimension) -> f64 {
        // Construction guarantees every dimension is present.
        self.weights[&dimension]
    }
}

impl TryFrom<BTreeMap<Dimension, f64>> for DimensionWeights {
    type Error = WeightError;

    fn try_from(weights: BTreeMap<Dimension, f64>) -> Result<Self, Self::Error> {
        DimensionWeights::new(weights)
    }
}

impl From<DimensionWeights> for BTreeMap<Dimension, f64> {
    fn from(w: DimensionWeights) -> Self {
        w.weights
    }
}

/// A weight map that fails validation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WeightError {
    #[error("weight map has no entry for {}", .0.key())]
    MissingDimension(Dimension),
    #[error("weight for {} is {weight}, must be finite and >= 0", dimension.key())]
    Negative { dimension: Dimension, weight: f64 },
    #[error("weights sum to {sum}, must be 1 within {WEIGHT_SUM_TOLERANCE:e}")]
    NotNormalized { sum: f64 },
}

/// Where a scorecard's numbers came from: which backend judged the rubric
/// dimensions, under which prompt versions, over which extracted tree.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub backend: Option<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub prompt_versions: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tree_stats: Option<TreeStats>,
}

/// One evaluated subject: its ten dimension scores and their weighted sum.
/// `final_score` is kept at full precision; rounding happens only when a
/// leaderboard or document is rendered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scorecard {
    pub subject: String,
    pub scores: BTreeMap<Dimension, f64>,
    pub final_score: f64,
    #[serde(default)]
    pub provenance: Provenance,
}

/// Aggregation failure: an incomplete score map.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AggregateError {
    #[error("missing dimension {}", .0.key())]
    MissingDimension(Dimension),
}

/// Computes the weighted final score over a complete dimension map.
pub fn aggregate(
    subject: &str,
    scores: &BTreeMap<Dimension, f64>,
    weights: &DimensionWeights,
) -> Result<Scorecard, AggregateError> {
    let mut final_score = 0.0;
    for dim in Dimension::ALL {
        let score = *scores
            .get(&dim)
            .ok_or(AggregateError::MissingDimension(dim))?;
        final_score += weights.get(dim) * score;
    }
    Ok(Scorecard {
        subject: subject.to_string(),
        scores: scores.clone(),
        final_score,
        provenance: Provenance::default(),
    })
}

/// Scorecards ordered by final score, best first; ties broken by subject
/// name ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Leaderboard {
    pub entries: Vec<Scorecard>,
}

/// Leaderboard assembly failure.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LeaderboardError {
    #[error("cannot build a leaderboard from zero scorecards")]
    Empty,
    #[error("duplicate subject {0:?}")]
    DuplicateSubject(String),
}

pub fn build_leaderboard(cards: Vec<Scorecard>) -> Result<Leaderboard, LeaderboardError> {
    if cards.is_empty() {
        return Err(LeaderboardError::Empty);
    }
    let mut seen = std::collections::BTreeSet::new();
    for card in &cards {
        if !seen.insert(card.subject.clone()) {
            return Err(LeaderboardError::DuplicateSubject(card.subject.clone()));
        }
    }
    let mut entries = cards;
    entries.sort_by(|a, b| {
        b.final_score
            .partial_cmp(&a.final_score)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.subject.cmp(&b.subject))
    });
    Ok(Leaderboard { entries })
}

/// Rounds to 2 decimals, ties to even — the presentation rule. Comparisons
/// and aggregation always use the unrounded values.
pub fn round2(x: f64) -> f64 {
    (x * 100.0).round_ties_even() / 100.0
}

fn fmt2(x: f64) -> String {
    format!("{:.2}", round2(x))
}

impl Leaderboard {
    /// CSV with one row per subject: subject, final score, then the ten
    /// dimensions in presentation order. Values rendered at 2 decimals.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["subject".to_string(), "final_score".to_string()];
        header.extend(Dimension::ALL.iter().map(|d| d.key().to_string()));
        writer.write_record(&header).expect("csv write to Vec");
        for card in &self.entries {
            let mut row = vec![card.subject.clone(), fmt2(card.final_score)];
            row.extend(Dimension::ALL.iter().map(|d| fmt2(card.scores[d])));
            writer.write_record(&row).expect("csv write to Vec");
        }
        let bytes = writer.into_inner().expect("csv flush to Vec");
        String::from_utf8(bytes).expect("csv output is UTF-8")
    }

    /// Markdown table with the same column order as the CSV, using the
    /// human-facing dimension names.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str("| Agent | Final Score |");
        for dim in Dimension::ALL {
            out.push_str(&format!(" {} |", dim.display_name()));
        }
        out.push('\n');
        out.push_str("| --- | --- |");
        for _ in Dimension::ALL {
            out.push_str(" --- |");
        }
        out.push('\n');
        for card in &self.entries {
            out.push_str(&format!(
                "| {} | {} |",
                card.subject,
                fmt2(card.final_score)
            ));
            for dim in Dimension::ALL {
                out.push_str(&format!(" {} |", fmt2(card.scores[&dim])));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scores_in_order(values: [f64; 10]) -> BTreeMap<Dimension, f64> {
        Dimension::ALL.into_iter().zip(values).collect()
    }

    /// Published reference row: ten dimension scores whose 10%-weighted sum
    /// is 76.598.
    fn reference_row_a() -> BTreeMap<Dimension, f64> {
        scores_in_order([
            50.81, 95.56, 96.72, 89.41, 49.33, 82.67, 42.15, 89.09, 87.44, 82.80,
        ])
    }

    #[test]
    fn uniform_scores_aggregate_to_themselves() {
        let scores = scores_in_order([80.0; 10]);
        let card = aggregate("a", &scores, &DimensionWeights::default()).unwrap();
        assert!((card.final_score - 80.0).abs() < 1e-9);
    }

    #[test]
    fn reference_row_reproduces_published_final() {
        let card = aggregate("a", &reference_row_a(), &DimensionWeights::default()).unwrap();
        assert!((card.final_score - 76.598).abs() < 1e-9);
        assert!((card.final_score - 76.60).abs() <= 0.01);
    }

    #[test]
    fn missing_dimension_is_named() {
        let mut scores = reference_row_a();
        scores.remove(&Dimension::LogicConsistency);
        let err = aggregate("a", &scores, &DimensionWeights::default()).unwrap_err();
        assert_eq!(
            err,
            AggregateError::MissingDimension(Dimension::LogicConsistency)
        );
        assert!(err.to_string().contains("logic_consistency"));
    }

    #[test]
    fn weights_must_cover_all_dimensions_and_normalize() {
        let mut map: BTreeMap<Dimension, f64> =
            Dimension::ALL.into_iter().map(|d| (d, 0.10)).collect();
        map.remove(&Dimension::AnalysisWidth);
        assert!(matches!(
            DimensionWeights::new(map.clone()),
            Err(WeightError::MissingDimension(Dimension::AnalysisWidth))
        ));
        map.insert(Dimension::AnalysisWidth, 0.5);
        assert!(matches!(
            DimensionWeights::new(map.clone()),
            Err(WeightError::NotNormalized { .. })
        ));
        map.insert(Dimension::AnalysisWidth, -0.10);
        assert!(matches!(
            DimensionWeights::new(map),
            Err(WeightError::Negative { .. })
        ));
    }

    #[test]
    fn aggregation_is_linear_in_scores() {
        let weights = DimensionWeights::default();
        let base = aggregate("a", &reference_row_a(), &weights).unwrap();
        let scaled_scores: BTreeMap<_, _> = reference_row_a()
            .into_iter()
            .map(|(d, s)| (d, s * 0.5))
            .collect();
        let scaled = aggregate("a", &scaled_scores, &weights).unwrap();
        assert!((scaled.final_score - base.final_score * 0.5).abs() < 1e-9);
    }

    #[test]
    fn leaderboard_orders_descending_with_alphabetical_ties() {
        let weights = DimensionWeights::default();
        let mut low = aggregate("zeta", &scores_in_order([70.0; 10]), &weights).unwrap();
        let high = aggregate("high", &scores_in_order([90.0; 10]), &weights).unwrap();
        let mid_b = aggregate("beta", &scores_in_order([80.0; 10]), &weights).unwrap();
        let mid_a = aggregate("alpha", &scores_in_order([80.0; 10]), &weights).unwrap();
        low.final_score = 70.0;
        let board =
            build_leaderboard(vec![low, mid_b.clone(), high.clone(), mid_a.clone()]).unwrap();
        let names: Vec<_> = board.entries.iter().map(|c| c.subject.as_str()).collect();
        assert_eq!(names, ["high", "alpha", "beta", "zeta"]);
    }

    #[test]
    fn leaderboard_rejects_empty_and_duplicate() {
        assert_eq!(build_leaderboard(vec![]).unwrap_err(), LeaderboardError::Empty);
        let card = aggregate(
            "same",
            &scores_in_order([50.0; 10]),
            &DimensionWeights::default(),
        )
        .unwrap();
        assert_eq!(
            build_leaderboard(vec![card.clone(), card]).unwrap_err(),
            LeaderboardError::DuplicateSubject("same".to_string())
        );
    }

    #[test]
    fn rounding_is_half_even_at_two_decimals() {
        assert_eq!(round2(0.125), 0.12);
        assert_eq!(round2(0.375), 0.38);
        assert_eq!(round2(76.598), 76.60);
    }

    #[test]
    fn csv_and_markdown_share_column_order() {
        let card = aggregate(
            "agent-x",
            &reference_row_a(),
            &DimensionWeights::default(),
        )
        .unwrap();
        let board = build_leaderboard(vec![card]).unwrap();
        let csv = board.to_csv();
        let first_line = csv.lines().next().unwrap();
        assert!(first_line.starts_with("subject,final_score,visual_linguistic_synergy"));
        assert!(csv.contains("76.60"));
        let md = board.to_markdown();
        assert!(md.starts_with("| Agent | Final Score | Visual-Linguistic Synergy |"));
        assert!(md.contains("| agent-x | 76.60 |"));
    }
}
