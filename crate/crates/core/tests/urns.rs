use std::collections::HashMap;

use rrt_core::urns::{
    hoppe_run, max_subtree_fraction, polya_diagonal_hit_estimate, polya_run, sample_dickman, HoppeUrn, PolyaState,
};
use rrt_core::{subtree_sizes, RecursiveTree, RngStream};

/// Kolmogorov distance between a sample and a continuous CDF.
fn ks_one_sample(mut xs: Vec<f64>, cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let m = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / m).abs().max((f - (i + 1) as f64 / m).abs())
        })
        .fold(0.0, f64::max)
}

fn final_fractions(a: u64, steps: u64, reps: u64, seed: u64) -> Vec<f64> {
    (0..reps)
        .map(|i| {
            let mut rng = RngStream::new(seed, i).rng();
            let mut s = PolyaState::start(a).unwrap();
            for _ in 0..steps {
                s.step(&mut rng);
            }
            s.fraction()
        })
        .collect()
}

#[test]
fn polya_with_one_ball_each_tends_to_uniform() {
    let reps = 4000;
    let xs = final_fractions(1, 2000, reps, 11);
    let d = ks_one_sample(xs, |x| x.clamp(0.0, 1.0));
    // 1.95 / sqrt(m) is the 0.1% critical value
    assert!(d * (reps as f64).sqrt() < 1.95, "D = {d}");
}

#[test]
fn polya_from_three_to_one_tends_to_beta_three_one() {
    let reps = 4000;
    let xs = final_fractions(3, 2000, reps, 12);
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    assert!((mean - 0.75).abs() < 0.015, "mean = {mean}");
    let d = ks_one_sample(xs, |x| x.clamp(0.0, 1.0).powi(3));
    assert!(d * (reps as f64).sqrt() < 1.95, "D = {d}");
}

/// Exact chance that the X share drops below `x` within `horizon` draws,
/// by forward propagation over urn states.
fn diagonal_hit_exact(a: u64, x: f64, horizon: u64) -> f64 {
    let below = |xb: u64, yb: u64| (xb as f64) < x * (xb + yb) as f64;
    if below(a, 1) {
        return 1.0;
    }
    let mut alive: HashMap<u64, f64> = HashMap::from([(a, 1.0)]);
    let mut hit = 0.0;
    for t in 0..horizon {
        let total = a + 1 + t;
        let mut next: HashMap<u64, f64> = HashMap::new();
        for (&xb, &p) in &alive {
            let yb = total - xb;
            for (nx, ny, w) in [(xb + 1, yb, xb), (xb, yb + 1, yb)] {
                let q = p * w as f64 / total as f64;
                if below(nx, ny) {
                    hit += q;
                } else {
                    *next.entry(nx).or_default() += q;
                }
            }
        }
        alive = next;
    }
    hit
}

#[test]
fn diagonal_hit_matches_exact_propagation() {
    for a in [1, 2, 3, 4] {
        let exact = diagonal_hit_exact(a, 0.5, 20);
        let est = polya_diagonal_hit_estimate(a, 0.5, 20, 40_000, 3, 2).unwrap();
        let se = (exact * (1.0 - exact) / 40_000.0).sqrt().max(1e-4);
        assert!(
            (est.estimate - exact).abs() < 4.0 * se,
            "a={a}: {} vs {exact}",
            est.estimate
        );
    }
    assert!(diagonal_hit_exact(1, 0.5, 20) > diagonal_hit_exact(4, 0.5, 20));
}

#[test]
fn hit_estimate_is_seeded_and_worker_independent() {
    let a = polya_diagonal_hit_estimate(2, 0.5, 300, 500, 9, 1).unwrap();
    let b = polya_diagonal_hit_estimate(2, 0.5, 300, 500, 9, 3).unwrap();
    assert_eq!(a.hits, b.hits);
}

#[test]
fn polya_trajectory_is_reproducible() {
    let a = polya_run(2, 500, &mut RngStream::new(4, 4).rng()).unwrap();
    let b = polya_run(2, 500, &mut RngStream::new(4, 4).rng()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 501);
}

#[test]
fn hoppe_colour_count_has_harmonic_mean() {
    let t = 1000u64;
    let reps = 3000u64;
    let mut total = 0u64;
    for i in 0..reps {
        let mut rng = RngStream::new(21, i).rng();
        let mut urn = HoppeUrn::new();
        for _ in 0..t {
            urn.step(&mut rng);
        }
        total += urn.state().colors.len() as u64;
    }
    let mean = total as f64 / reps as f64;
    let h: f64 = (1..=t).map(|i| 1.0 / i as f64).sum();
    assert!((mean / h - 1.0).abs() < 0.02, "mean = {mean}, H = {h}");
}

#[test]
fn hoppe_leader_holds_the_most_balls() {
    let (urn, rows) = hoppe_run(3000, &mut RngStream::new(8, 0).rng()).unwrap();
    let colors = &urn.state().colors;
    assert_eq!(colors.iter().sum::<u64>(), 3000);
    let last = rows.last().unwrap();
    assert_eq!(last.leader_count, *colors.iter().max().unwrap());
    // ties go to the earliest colour
    let first_max = colors.iter().position(|&c| c == last.leader_count).unwrap();
    assert_eq!(last.leader, first_max as u64 + 1);
    for w in urn.leader_changes().windows(2) {
        assert!(w[0] < w[1]);
    }
    assert!(hoppe_run(0, &mut RngStream::new(8, 0).rng()).is_err());
}

#[test]
fn dickman_tail_above_one_half() {
    let mut rng = RngStream::new(99, 0).rng();
    let draws: Vec<f64> = (0..200_000).map(|_| sample_dickman(&mut rng).value).collect();
    let m = draws.len() as f64;
    let p = draws.iter().filter(|&&d| d >= 0.5).count() as f64 / m;
    assert!((p - std::f64::consts::LN_2).abs() < 0.005, "p = {p}");
    // above one half the density is 1/x, so P(a <= D < b) = ln(b/a)
    for (lo, hi) in [(0.5, 0.55), (0.7, 0.8), (0.9, 1.0)] {
        let f = draws.iter().filter(|&&d| d >= lo && d < hi).count() as f64 / m;
        let exact = (hi / lo).ln();
        assert!((f - exact).abs() < 0.004, "[{lo},{hi}): {f} vs {exact}");
    }
    assert!(draws.iter().all(|&d| d > 0.0 && d < 1.0));
}

#[test]
fn max_subtree_fraction_on_small_trees() {
    let check = |labels: &[u32], expected: f64| {
        let t = RecursiveTree::from_parent_labels(labels).unwrap();
        assert_eq!(max_subtree_fraction(&t, &subtree_sizes(&t)).unwrap(), expected);
    };
    check(&[1, 2, 3], 0.75);
    check(&[1, 1, 1], 0.25);
    check(&[1, 1, 2], 0.5);
    assert!(max_subtree_fraction(&RecursiveTree::singleton(), &subtree_sizes(&RecursiveTree::singleton())).is_err());
}
