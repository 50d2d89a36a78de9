//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
}

/// Neumaier-compensated sum.
pub fn compensated_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in xs {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Paired t statistic over `dominant − minoritized` using compensated sums.
pub fn t_oracle(pairs: &[(f64, f64)]) -> f64 {
    let n = pairs.len() as f64;
    let d: Vec<f64> = pairs.iter().map(|(a, b)| a - b).collect();
    let mean = compensated_sum(d.iter().copied()) / n;
    let ss = compensated_sum(d.iter().map(|x| (x - mean) * (x - mean)));
    let sd = (ss / (n - 1.0)).sqrt();
    mean / (sd / n.sqrt())
}

/// Two-tailed Student t probability for integer degrees of freedom from
/// the closed-form trigonometric series. Uses the convergent tail of the
/// series when it is short and the finite head otherwise, so no branch
/// subtracts two nearly equal numbers.
pub fn p_oracle(t: f64, nu: u32) -> f64 {
    let t = t.abs();
    let r = (nu as f64 + t * t).sqrt();
    let s = t / r;
    let c = (nu as f64).sqrt() / r;
    let c2 = c * c;
    let use_tail = c2 <= 0.99;
    if nu.is_multiple_of(2) {
        // P(|T| < t) = s Σ_{k < ν/2} a_k c^{2k}, with Σ_{all k} a_k c^{2k} = 1/s
        let m = nu / 2;
        let mut a = 1.0f64;
        let mut pow = 1.0f64;
        let mut head = Vec::new();
        let mut tail = Vec::new();
        let mut running = 0.0f64;
        let mut k = 0u32;
        loop {
            let term = a * pow;
            if k < m {
                head.push(term);
            } else {
                if !use_tail || term == 0.0 || term < 1e-19 * running {
                    break;
                }
                running += term;
                tail.push(term);
            }
            k += 1;
            a *= (2 * k - 1) as f64 / (2 * k) as f64;
            pow *= c2;
        }
        if use_tail {
            s * compensated_sum(tail)
        } else {
            1.0 - s * compensated_sum(head)
        }
    } else {
        // P(|T| < t) = (2/π)(θ + s c Σ_{k < (ν−1)/2} b_k c^{2k}),
        // with s c Σ_{all k} b_k c^{2k} = π/2 − θ
        let m = (nu - 1) / 2;
        let theta = t.atan2((nu as f64).sqrt());
        let mut b = 1.0f64;
        let mut pow = 1.0f64;
        let mut head = Vec::new();
        let mut tail = Vec::new();
        let mut running = 0.0f64;
        let mut k = 0u32;
        loop {
            let term = b * pow;
            if k < m {
                head.push(term);
            } else {
                if !use_tail || term == 0.0 || term < 1e-19 * running {
                    break;
                }
                running += term;
                tail.push(term);
            }
            k += 1;
            b *= (2 * k) as f64 / (2 * k + 1) as f64;
            pow *= c2;
        }
        if use_tail {
            2.0 / PI * s * c * compensated_sum(tail)
        } else {
            1.0 - 2.0 / PI * (theta + s * c * compensated_sum(head))
        }
    }
}
