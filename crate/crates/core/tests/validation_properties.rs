//! Properties of the extraction-accuracy measures: similarity behaves like a
//! symmetric bounded score with perfect self-agreement, rank correlation
//! matches a from-scratch oracle and ignores monotone rescaling, and the
//! size bins tile the node-count axis.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use report_judge::logic_tree::compute_stats;
use report_judge::validation::{similarity, spearman, SizeBin};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn similarity_is_symmetric_and_bounded(seed_a: u64, seed_b: u64, size in 1usize..60) {
        let a = compute_stats(&common::random_tree(seed_a, size)).unwrap();
        let b = compute_stats(&common::random_tree(seed_b, size)).unwrap();
        let ab = similarity(&a, &b);
        let ba = similarity(&b, &a);
        for (x, y) in [
            (ab.s_nodes_sim, ba.s_nodes_sim),
            (ab.s_depth_sim, ba.s_depth_sim),
            (ab.s_width_sim, ba.s_width_sim),
            (ab.average, ba.average),
        ] {
            prop_assert!((x - y).abs() < 1e-12, "asymmetry: {x} vs {y}");
            prop_assert!((0.0..=1.0).contains(&x), "out of range: {x}");
        }
    }

    #[test]
    fn self_similarity_is_perfect(seed: u64, size in 1usize..60) {
        let stats = compute_stats(&common::random_tree(seed, size)).unwrap();
        let report = similarity(&stats, &stats);
        prop_assert_eq!(report.s_nodes_sim, 1.0);
        prop_assert_eq!(report.s_depth_sim, 1.0);
        prop_assert_eq!(report.s_width_sim, 1.0);
        prop_assert_eq!(report.average, 1.0);
    }

    #[test]
    fn every_node_count_falls_in_exactly_one_bin(n in 0usize..10_000) {
        let bin = SizeBin::for_node_count(n);
        let matching = [SizeBin::Small, SizeBin::Medium, SizeBin::Large]
            .iter()
            .filter(|candidate| SizeBin::for_node_count(n) == **candidate)
            .count();
        prop_assert_eq!(matching, 1);
        // Explicit boundary semantics: half-open on the right.
        let expected = if n < 25 {
            SizeBin::Small
        } else if n < 50 {
            SizeBin::Medium
        } else {
            SizeBin::Large
        };
        prop_assert_eq!(bin, expected);
    }
}

/// From-scratch rank correlation: average ranks by counting, then a direct
/// Pearson over the ranks. Shares no code with the implementation.
fn spearman_oracle(xs: &[f64], ys: &[f64]) -> f64 {
    fn ranks(values: &[f64]) -> Vec<f64> {
        values
            .iter()
            .map(|&v| {
                let less = values.iter().filter(|&&o| o < v).count() as f64;
                let equal = values.iter().filter(|&&o| o == v).count() as f64;
                less + (equal - 1.0) / 2.0 + 1.0
            })
            .collect()
    }
    fn pearson(a: &[f64], b: &[f64]) -> f64 {
        let n = a.len() as f64;
        let mean_a = a.iter().sum::<f64>() / n;
        let mean_b = b.iter().sum::<f64>() / n;
        let mut cov = 0.0;
        let mut var_a = 0.0;
        let mut var_b = 0.0;
        for (&x, &y) in a.iter().zip(b) {
            cov += (x - mean_a) * (y - mean_b);
            var_a += (x - mean_a).powi(2);
            var_b += (y - mean_b).powi(2);
        }
        cov / (var_a.sqrt() * var_b.sqrt())
    }
    let (rx, ry) = (ranks(xs), ranks(ys));
    pearson(&rx, &ry)
}

#[test]
fn spearman_matches_the_oracle_on_tied_random_lists() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 50 {
        let n = rng.gen_range(3..40);
        // Small integer range forces plenty of ties.
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0..8) as f64).collect();
        let ys: Vec<f64> = (0..n).map(|_| rng.gen_range(0..8) as f64).collect();
        let zero_variance =
            xs.iter().all(|&v| v == xs[0]) || ys.iter().all(|&v| v == ys[0]);
        if zero_variance {
            continue;
        }
        let got = spearman(&xs, &ys).unwrap();
        let want = spearman_oracle(&xs, &ys).clamp(-1.0, 1.0);
        assert!(
            (got.r - want).abs() < 1e-9,
            "r mismatch on {xs:?} / {ys:?}: got {} want {want}",
            got.r
        );
        checked += 1;
    }
}

#[test]
fn spearman_is_invariant_under_strictly_monotone_transforms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(3..30);
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-50.0..50.0)).collect();
        let ys: Vec<f64> = (0..n).map(|_| rng.gen_range(-50.0..50.0)).collect();
        let base = match spearman(&xs, &ys) {
            Ok(result) => result,
            Err(_) => continue, // degenerate draw
        };
        // Strictly increasing transforms preserve all orderings (and ties).
        let scaled: Vec<f64> = xs.iter().map(|&x| 3.0 * x + 7.0).collect();
        let cubed: Vec<f64> = ys.iter().map(|&y| y.powi(3)).collect();
        let transformed = spearman(&scaled, &cubed).unwrap();
        assert!(
            (base.r - transformed.r).abs() < 1e-12,
            "transform changed r: {} -> {}",
            base.r,
            transformed.r
        );
    }
}
