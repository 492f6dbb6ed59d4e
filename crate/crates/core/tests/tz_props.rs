// SPDX-License-Identifier: Apache-2.0

use emulator_forge::tz::{
    compare_bounds, compare_bounds_big, f_k, f_k_exact, root_rk, threshold_table, x_hat_exact, x_min_exact, Winner,
    MAX_K,
};
use emulator_forge::Error;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[test]
fn anchor_thresholds() {
    let want = [(2, 70u64), (3, 5744), (4, 4_575_579)];
    for (k, t) in want {
        assert_eq!(root_rk(k).unwrap().threshold, BigUint::from(t), "k = {k}");
    }
    assert_eq!(root_rk(2).unwrap().theorem_threshold, BigUint::from(64u32));
}

#[test]
fn sign_structure_through_max_k() {
    for k in 2..=MAX_K {
        let one = f_k_exact(&int(1), k);
        // 2^k (6 - 3^k) - 7
        let want = int(2).pow(k as i32) * (int(6) - int(3).pow(k as i32)) - int(7);
        assert_eq!(one, want);
        assert!(one.is_negative());
        assert!(f_k_exact(&x_min_exact(k), k).is_negative());
        assert_eq!(f_k_exact(&x_hat_exact(k), k), int(2).pow(k as i32 + 2) - int(4));
    }
}

#[test]
fn derivative_sign_at_sampled_points() {
    for k in 2..=MAX_K {
        let x_min = x_min_exact(k).to_f64().unwrap();
        let x_hat = x_hat_exact(k).to_f64().unwrap();
        let h = 1e-7;
        for t in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let left = 1.0 + t * (x_min - 1.0);
            let right = x_min + t * (2.0 * x_hat - x_min);
            let slope = |x: f64| (f_k(x * (1.0 + h), k) - f_k(x * (1.0 - h), k)) / (2.0 * h * x);
            assert!(slope(left) < 0.0, "k {k} x {left}");
            assert!(slope(right) > 0.0, "k {k} x {right}");
        }
    }
}

#[test]
fn root_brackets_sign_change() {
    for k in 2..=MAX_K {
        let r = root_rk(k).unwrap();
        // For large k the root sits within an ulp of x_hat, so the upper
        // side is checked exactly.
        assert!(r.x_min < r.root && r.root <= r.x_hat);
        assert!(BigRational::from_float(r.root).unwrap() < x_hat_exact(k));
        let at = |x: f64| f_k_exact(&BigRational::from_float(x).unwrap(), k);
        assert!(!at(r.root).is_positive());
        assert!(at(r.root.next_up()).is_positive());
        assert!(r.theorem_threshold <= r.threshold);
        // floor(root^k) agrees with the exact threshold to float accuracy.
        let approx = r.root.powi(k as i32);
        let t = r.threshold.to_f64().unwrap();
        assert!((approx - t).abs() <= 1.0 + 1e-12 * t, "k {k}");
    }
}

#[test]
fn thresholds_grow_like_three_to_k_squared() {
    let rows = threshold_table(MAX_K).unwrap();
    assert_eq!(rows.len(), MAX_K - 1);
    for w in rows.windows(2) {
        assert!(w[0].threshold < w[1].threshold);
    }
    for r in &rows {
        let log3 = r.threshold.to_f64().unwrap().ln() / 3f64.ln();
        let ratio = log3 / (r.k * r.k) as f64;
        assert!(ratio > 0.8 && ratio < 1.0, "k {} ratio {ratio}", r.k);
    }
}

#[test]
fn boundary_probing() {
    for k in 2..=MAX_K {
        let t = root_rk(k).unwrap().threshold;
        assert_eq!(compare_bounds_big(&t, k).unwrap().winner, Winner::Ours, "k {k}");
        assert_ne!(
            compare_bounds_big(&(&t + BigUint::one()), k).unwrap().winner,
            Winner::Ours,
            "k {k}"
        );
    }
}

#[test]
fn k2_winners_exhaustive() {
    for d in 1..=70 {
        assert_eq!(compare_bounds(d, 2).unwrap().winner, Winner::Ours, "δ = {d}");
    }
    let c = compare_bounds(71, 2).unwrap();
    assert_eq!(c.winner, Winner::Tz);
    assert_eq!(c.ours, 367.0);
    assert!((c.tz - 365.915).abs() < 1e-3);
}

#[test]
fn sampled_winners_k3_k4() {
    // Away from the crossover the float bounds decide the same way.
    for (k, t) in [(3u32, 5744u64), (4, 4_575_579)] {
        let step = (t / 97).max(1);
        for d in (1..=t).step_by(step as usize) {
            let c = compare_bounds(d, k as usize).unwrap();
            assert_eq!(c.winner, Winner::Ours, "k {k} δ {d}");
            assert!(c.ours <= c.tz * (1.0 + 1e-12));
        }
        let far = compare_bounds(4 * t, k as usize).unwrap();
        assert_eq!(far.winner, Winner::Tz);
        assert!(far.ours > far.tz);
    }
}

#[test]
fn unit_distance_values() {
    for k in 2..=8usize {
        let c = compare_bounds(1, k).unwrap();
        let p = |b: f64, e: usize| b.powi(e as i32);
        assert_eq!(c.ours, p(2.0, k + 1) - 3.0 + p(2.0, k + 2) - 4.0);
        assert_eq!(c.tz, p(6.0, k));
        assert_eq!(c.winner, Winner::Ours);
    }
}

#[test]
fn precision_cap() {
    assert!(matches!(root_rk(MAX_K + 1), Err(Error::Capability(_))));
    assert!(matches!(compare_bounds(5, MAX_K + 1), Err(Error::Capability(_))));
    assert!(matches!(root_rk(1), Err(Error::InvalidArgument(_))));
}
