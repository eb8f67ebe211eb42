//! Rule-derived scores computed from tree shape and report text, no judge
//! involved: analysis width, analysis depth, information density, and
//! paragraph richness. Each lands on a 0..=100 scale.

use serde::{Deserialize, Serialize};

use crate::logic_tree::TreeStats;
use crate::report::RichnessInput;

/// Slopes, offsets and mixing weights for the rule metrics. The defaults are
/// the published calibration; overriding them recalibrates every score, so
/// treat non-default values as a different scoring regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricConstants {
    /// Width: points per unit of average child count above 1.
    pub width_slope: f64,
    /// Depth: points per level of maximum depth above the offset.
    pub depth_max_slope: f64,
    pub depth_max_offset: f64,
    /// Depth: points per unit of average leaf depth above the offset.
    pub depth_leaf_slope: f64,
    pub depth_leaf_offset: f64,
    /// Depth blend: weight on the max-depth sub-score.
    pub depth_max_weight: f64,
    /// Depth blend: weight on the leaf-average sub-score.
    pub depth_leaf_weight: f64,
    /// Density: points per node above the offset.
    pub node_count_slope: f64,
    pub node_count_offset: f64,
    /// Density blend: weight on the node-count sub-score.
    pub node_count_weight: f64,
    /// Density blend: weight on the evidence-ratio sub-score.
    pub evidence_ratio_weight: f64,
}

impl Default for MetricConstants {
    fn default() -> Self {
        MetricConstants {
            // 33.33 exactly, not 100/3: scores are calibrated against the
            // two-decimal constant.
            width_slope: 33.33,
            depth_max_slope: 25.0,
            depth_max_offset: 2.0,
            depth_leaf_slope: 40.0,
            depth_leaf_offset: 1.5,
            depth_max_weight: 0.4,
            depth_leaf_weight: 0.6,
            node_count_slope: 2.0,
            node_count_offset: 5.0,
            node_count_weight: 0.7,
            evidence_ratio_weight: 0.3,
        }
    }
}

/// Depth score with its two ingredients kept visible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DepthScore {
    /// Sub-score from the deepest path.
    pub s_dmax: f64,
    /// Sub-score from the average leaf depth.
    pub s_dleaf: f64,
    /// Weighted blend of the two, the reported depth score.
    pub combined: f64,
}

/// Information-density score with its two ingredients kept visible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityScore {
    /// Sub-score from total node count.
    pub s_nodes: f64,
    /// Evidence nodes over total nodes; 0 for an empty tree.
    pub evidence_ratio: f64,
    /// Evidence ratio rescaled to 0..=100.
    pub s_density: f64,
    /// Weighted blend, the reported density score.
    pub combined: f64,
}

fn clamp_score(x: f64) -> f64 {
    x.max(0.0).min(100.0)
}

/// Width rewards branching: linear in the mean child count of internal
/// nodes. A tree with no internal fan-out information (single node) scores 0.
pub fn width_score(stats: &TreeStats, constants: &MetricConstants) -> f64 {
    match stats.child_avg {
        Some(child_avg) => clamp_score(constants.width_slope * (child_avg - 1.0)),
        None => 0.0,
    }
}

/// Depth blends how deep the deepest chain goes with how deep the leaves sit
/// on average, weighting the leaf average higher.
pub fn depth_score(stats: &TreeStats, constants: &MetricConstants) -> DepthScore {
    let s_dmax = clamp_score(constants.depth_max_slope * (stats.d_max as f64 - constants.depth_max_offset));
    let s_dleaf =
        clamp_score(constants.depth_leaf_slope * (stats.d_leaf_avg - constants.depth_leaf_offset));
    DepthScore {
        s_dmax,
        s_dleaf,
        combined: constants.depth_max_weight * s_dmax + constants.depth_leaf_weight * s_dleaf,
    }
}

/// Density blends sheer node count with the fraction of nodes that are
/// evidence rather than argument.
pub fn density_score(stats: &TreeStats, constants: &MetricConstants) -> DensityScore {
    let s_nodes =
        clamp_score(constants.node_count_slope * (stats.n_total as f64 - constants.node_count_offset));
    let evidence_ratio = if stats.n_total > 0 {
        stats.n_evidence as f64 / stats.n_total as f64
    } else {
        0.0
    };
    let s_density = (100.0 * evidence_ratio).min(100.0);
    DensityScore {
        s_nodes,
        evidence_ratio,
        s_density,
        combined: constants.node_count_weight * s_nodes
            + constants.evidence_ratio_weight * s_density,
    }
}

/// Paragraph richness from the mean words-per-subtitle `w`. Piecewise linear:
/// rises to 60 at w=100, more slowly to 76 at w=200, reaches 100 at w=500,
/// plateaus through w=1000, then decays at 0.05 points per word with a floor
/// of 60. Continuous at every boundary.
pub fn paragraph_richness(input: RichnessInput) -> f64 {
    let w = input.w;
    if w <= 0.0 {
        0.0
    } else if w < 100.0 {
        0.6 * w
    } else if w < 200.0 {
        60.0 + 0.16 * (w - 100.0)
    } else if w < 500.0 {
        60.0 + 0.08 * w
    } else if w <= 1000.0 {
        100.0
    } else {
        (100.0 - 0.05 * (w - 1000.0)).max(60.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stats(
        n_total: usize,
        n_evidence: usize,
        d_max: usize,
        d_leaf_avg: f64,
        child_avg: Option<f64>,
    ) -> TreeStats {
        TreeStats {
            n_total,
            n_evidence,
            d_max,
            d_leaf_avg,
            child_avg,
            support_rate: None,
        }
    }

    #[test]
    fn width_is_linear_then_capped() {
        let c = MetricConstants::default();
        assert_eq!(width_score(&stats(4, 3, 2, 2.0, Some(3.0)), &c), 66.66);
        assert_eq!(width_score(&stats(2, 1, 2, 2.0, Some(1.0)), &c), 0.0);
        // 33.33 * (5 - 1) = 133.32 caps at 100.
        assert_eq!(width_score(&stats(6, 5, 2, 2.0, Some(5.0)), &c), 100.0);
    }

    #[test]
    fn width_of_single_node_tree_is_zero() {
        let c = MetricConstants::default();
        assert_eq!(width_score(&stats(1, 0, 1, 1.0, None), &c), 0.0);
    }

    #[test]
    fn depth_blends_dmax_and_leaf_average() {
        let c = MetricConstants::default();
        let s = depth_score(&stats(4, 3, 2, 2.0, Some(3.0)), &c);
        assert_eq!(s.s_dmax, 0.0); // 25 * (2 - 2)
        assert_eq!(s.s_dleaf, 20.0); // 40 * (2.0 - 1.5)
        assert!((s.combined - 12.0).abs() < 1e-12);
    }

    #[test]
    fn depth_saturates() {
        let c = MetricConstants::default();
        let s = depth_score(&stats(10, 5, 6, 4.0, Some(2.0)), &c);
        assert_eq!(s.s_dmax, 100.0);
        assert_eq!(s.s_dleaf, 100.0);
        assert_eq!(s.combined, 100.0);
    }

    #[test]
    fn depth_floors_at_zero() {
        let c = MetricConstants::default();
        let s = depth_score(&stats(1, 0, 1, 1.0, None), &c);
        assert_eq!(s.s_dmax, 0.0);
        assert_eq!(s.s_dleaf, 0.0);
        assert_eq!(s.combined, 0.0);
    }

    #[test]
    fn density_blends_count_and_ratio() {
        let c = MetricConstants::default();
        let s = density_score(&stats(4, 3, 2, 2.0, Some(3.0)), &c);
        assert_eq!(s.s_nodes, 0.0); // 2 * (4 - 5) clamps to 0
        assert_eq!(s.evidence_ratio, 0.75);
        assert_eq!(s.s_density, 75.0);
        assert!((s.combined - 22.5).abs() < 1e-12);
    }

    #[test]
    fn density_node_count_saturates() {
        let c = MetricConstants::default();
        let s = density_score(&stats(60, 30, 3, 3.0, Some(2.0)), &c);
        assert_eq!(s.s_nodes, 100.0);
        assert_eq!(s.s_density, 50.0);
        assert!((s.combined - 85.0).abs() < 1e-12);
    }

    #[test]
    fn density_of_empty_stats_is_zero() {
        let c = MetricConstants::default();
        let s = density_score(&stats(0, 0, 0, 0.0, None), &c);
        assert_eq!(s.evidence_ratio, 0.0);
        assert_eq!(s.combined, 0.0);
    }

    #[test]
    fn richness_matches_frozen_table() {
        let cases: &[(f64, f64)] = &[
            (0.0, 0.0),
            (1.0, 0.6),
            (50.0, 30.0),
            (99.99, 59.994),
            (100.0, 60.0),
            (150.0, 68.0),
            (200.0, 76.0),
            (499.0, 99.92),
            (500.0, 100.0),
            (1000.0, 100.0),
            (1001.0, 99.95),
            (1800.0, 60.0),
            (2000.0, 60.0),
            (10000.0, 60.0),
        ];
        for &(w, expected) in cases {
            let got = paragraph_richness(RichnessInput { w });
            assert!(
                (got - expected).abs() < 1e-9,
                "w={w}: expected {expected}, got {got}"
            );
        }
    }

    #[test]
    fn richness_is_continuous_at_branch_boundaries() {
        for boundary in [100.0f64, 200.0, 500.0, 1000.0] {
            let below = paragraph_richness(RichnessInput {
                w: boundary - 1e-7,
            });
            let at = paragraph_richness(RichnessInput { w: boundary });
            let above = paragraph_richness(RichnessInput {
                w: boundary + 1e-7,
            });
            assert!((below - at).abs() < 1e-5, "left limit at {boundary}");
            assert!((above - at).abs() < 1e-5, "right limit at {boundary}");
        }
    }

    #[test]
    fn richness_never_leaves_score_range() {
        let mut w = -50.0;
        while w < 25_000.0 {
            let s = paragraph_richness(RichnessInput { w });
            assert!((0.0..=100.0).contains(&s), "w={w} gave {s}");
            w += 7.3;
        }
    }

    #[test]
    fn richness_decay_floor_is_sixty() {
        assert_eq!(paragraph_richness(RichnessInput { w: 1e9 }), 60.0);
    }
}
