// SPDX-License-Identifier: Apache-2.0

//! Where the unweighted emulator bound `(2^{k+1}-3)·δ + 2^{k+2}-4` beats the
//! Thorup–Zwick bound `δ + (6^k-1)·δ^{1-1/k}`.
//!
//! Substituting `x = δ^{1/k}` turns the comparison into the sign of
//! `f_k(x) = (2^{k+1}-4)·x^k - (6^k-1)·x^{k-1} + 2^{k+2}-4`, which has a
//! single root `r_k` between its minimum `x_min` and `x_hat = A/B`. The
//! integer thresholds are derived exactly; only `x_min`, `x_hat` and the
//! root are reported as floats.

use std::fmt;
use std::io::Write;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported `k`.
pub const MAX_K: usize = 12;

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::arg(format!("k must be at least 2, got {k}")));
    }
    if k > MAX_K {
        return Err(Error::Capability(format!(
            "k = {k} exceeds the supported range 2..={MAX_K}"
        )));
    }
    Ok(())
}

/// `(A, B, C) = (6^k - 1, 2^{k+1} - 4, 2^{k+2} - 4)`.
fn coefficients(k: usize) -> (BigInt, BigInt, BigInt) {
    let six = BigInt::from(6u8);
    let two = BigInt::from(2u8);
    let a = six.pow(k as u32) - 1;
    let b = two.clone().pow(k as u32 + 1) - 4;
    let c = two.pow(k as u32 + 2) - 4;
    (a, b, c)
}

/// `f_k(x)` in floating point.
pub fn f_k(x: f64, k: usize) -> f64 {
    let (a, b, c) = coefficients(k);
    let (a, b, c) = (a.to_f64().unwrap(), b.to_f64().unwrap(), c.to_f64().unwrap());
    b * x.powi(k as i32) - a * x.powi(k as i32 - 1) + c
}

/// `f_k(x)` in exact rational arithmetic.
pub fn f_k_exact(x: &BigRational, k: usize) -> BigRational {
    let (a, b, c) = coefficients(k);
    let xk1: BigRational = x.pow(k as i32 - 1);
    let xk = &xk1 * x;
    xk * BigRational::from_integer(b) - xk1 * BigRational::from_integer(a) + BigRational::from_integer(c)
}

fn sign_at(x: f64, k: usize) -> std::cmp::Ordering {
    let r = BigRational::from_float(x).expect("finite");
    let v = f_k_exact(&r, k);
    if v.is_zero() {
        std::cmp::Ordering::Equal
    } else if v.is_positive() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Less
    }
}

pub fn x_min_exact(k: usize) -> BigRational {
    let (a, b, _) = coefficients(k);
    BigRational::new(BigInt::from(k - 1) * a, BigInt::from(k) * b)
}

pub fn x_hat_exact(k: usize) -> BigRational {
    let (a, b, _) = coefficients(k);
    BigRational::new(a, b)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdResult {
    pub k: usize,
    pub x_min: f64,
    pub x_hat: f64,
    /// Largest `f64` with `f_k(root) <= 0`; the next float up is positive.
    pub root: f64,
    /// Largest integer `δ` where the emulator bound is at most the
    /// Thorup–Zwick bound, i.e. `⌊r_k^k⌋`.
    pub threshold: BigUint,
    /// `⌊x_hat⌋^k`.
    pub theorem_threshold: BigUint,
}

/// Bisection for `r_k` on `[x_min, x_hat]`, run until the bracket shrinks
/// below `tol` relative to its upper end or to adjacent floats, plus the
/// exact thresholds.
pub fn root_rk_tol(k: usize, tol: f64) -> Result<ThresholdResult> {
    use std::cmp::Ordering::*;
    check_k(k)?;
    let x_min = x_min_exact(k).to_f64().unwrap();
    let x_hat = x_hat_exact(k).to_f64().unwrap();
    // The rounded endpoints keep their signs except in pathological
    // rounding; nudge them if needed.
    let mut lo = x_min;
    while sign_at(lo, k) == Greater {
        lo = lo.next_down();
    }
    let mut hi = x_hat;
    while sign_at(hi, k) != Greater {
        hi = hi.next_up();
    }
    loop {
        let mid = lo + (hi - lo) / 2.0;
        if mid <= lo || mid >= hi || hi - lo <= tol * hi {
            break;
        }
        match sign_at(mid, k) {
            Greater => hi = mid,
            _ => lo = mid,
        }
    }
    Ok(ThresholdResult {
        k,
        x_min,
        x_hat,
        root: lo,
        threshold: exact_threshold(k),
        theorem_threshold: theorem_threshold(k),
    })
}

pub fn root_rk(k: usize) -> Result<ThresholdResult> {
    root_rk_tol(k, 0.0)
}

/// Whether `(Bδ + C)^k <= A^k·δ^{k-1}`, the integer form of `f_k(δ^{1/k}) <= 0`.
fn ours_not_worse(delta: &BigUint, k: usize) -> std::cmp::Ordering {
    let (a, b, c) = coefficients(k);
    let d = BigInt::from(delta.clone());
    let lhs: BigInt = (b * &d + c).pow(k as u32);
    let rhs: BigInt = a.pow(k as u32) * d.pow(k as u32 - 1);
    lhs.cmp(&rhs)
}

fn exact_threshold(k: usize) -> BigUint {
    // f_k <= 0 on [1, r_k] and > 0 beyond, so the predicate is monotone on
    // integers δ >= 1.
    let x_hat = x_hat_exact(k);
    let ceil = x_hat.ceil().to_integer().to_biguint().expect("positive");
    let mut lo = BigUint::one();
    let mut hi = ceil.pow(k as u32);
    debug_assert!(ours_not_worse(&lo, k).is_le());
    debug_assert!(ours_not_worse(&hi, k).is_gt());
    while &hi - &lo > BigUint::one() {
        let mid = (&lo + &hi) >> 1u32;
        if ours_not_worse(&mid, k).is_le() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

pub fn theorem_threshold(k: usize) -> BigUint {
    let (a, b, _) = coefficients(k);
    let q = a.div_floor(&b).to_biguint().expect("positive");
    q.pow(k as u32)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Ours,
    Tz,
    Tie,
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::Ours => "ours",
            Winner::Tz => "tz",
            Winner::Tie => "tie",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundComparison {
    pub ours: f64,
    pub tz: f64,
    /// Decided exactly, independent of the rounded values above.
    pub winner: Winner,
}

pub fn compare_bounds(delta: u64, k: usize) -> Result<BoundComparison> {
    compare_bounds_big(&BigUint::from(delta), k)
}

pub fn compare_bounds_big(delta: &BigUint, k: usize) -> Result<BoundComparison> {
    check_k(k)?;
    if delta.is_zero() {
        return Err(Error::arg("distance must be positive"));
    }
    let d = delta.to_f64().unwrap();
    let kf = k as i32;
    let ours = (2f64.powi(kf + 1) - 3.0) * d + 2f64.powi(kf + 2) - 4.0;
    let tz = d + (6f64.powi(kf) - 1.0) * d.powf(1.0 - 1.0 / k as f64);
    let winner = match ours_not_worse(delta, k) {
        std::cmp::Ordering::Less => Winner::Ours,
        std::cmp::Ordering::Equal => Winner::Tie,
        std::cmp::Ordering::Greater => Winner::Tz,
    };
    Ok(BoundComparison { ours, tz, winner })
}

/// Rows for `k = 2..=k_max`.
pub fn threshold_table(k_max: usize) -> Result<Vec<ThresholdResult>> {
    check_k(k_max)?;
    (2..=k_max).map(root_rk).collect()
}

pub const TABLE_HEADER: &str = "k,x_min,x_hat,root,threshold,theorem_threshold";

pub fn write_threshold_csv<W: Write>(rows: &[ThresholdResult], mut out: W) -> Result<()> {
    writeln!(out, "{TABLE_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.k, r.x_min, r.x_hat, r.root, r.threshold, r.theorem_threshold
        )?;
    }
    Ok(())
}
