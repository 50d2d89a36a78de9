use serde::Serialize;

use super::special::student_t_two_tailed;
use super::MetricError;

/// Outcome of a Student t-test on perplexity pairs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TTestResult {
    pub t: f64,
    /// Two-tailed.
    pub p: f64,
    pub n: usize,
    pub df: f64,
    pub mean_diff: f64,
    pub sd_diff: f64,
}

impl TTestResult {
    pub fn significant(&self, alpha: f64) -> bool {
        self.p < alpha
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TTestKind {
    #[default]
    Paired,
    /// Pooled-variance two-sample test treating each side as one sample.
    Unpaired,
}

fn check_finite(pairs: &[(f64, f64)]) -> Result<(), MetricError> {
    match pairs
        .iter()
        .position(|(a, b)| !a.is_finite() || !b.is_finite())
    {
        Some(index) => Err(MetricError::NonFinite { index }),
        None => Ok(()),
    }
}

fn mean(xs: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = xs.len() as f64;
    xs.sum::<f64>() / n
}

fn finish(
    mean_diff: f64,
    se: f64,
    sd_diff: f64,
    n: usize,
    df: f64,
) -> Result<TTestResult, MetricError> {
    if se == 0.0 {
        if mean_diff != 0.0 {
            return Err(MetricError::DegenerateT { mean_diff });
        }
        return Ok(TTestResult {
            t: 0.0,
            p: 1.0,
            n,
            df,
            mean_diff,
            sd_diff,
        });
    }
    let t = mean_diff / se;
    Ok(TTestResult {
        t,
        p: student_t_two_tailed(t, df),
        n,
        df,
        mean_diff,
        sd_diff,
    })
}

/// Paired t-test over `(ppl_dominant, ppl_minoritized)` pairs with
/// `d = dominant − minoritized`. Negative `t` means the minoritized variants
/// have the higher perplexity.
pub fn paired_ttest(pairs: &[(f64, f64)]) -> Result<TTestResult, MetricError> {
    let n = pairs.len();
    if n < 2 {
        return Err(MetricError::TooFewPairs { n });
    }
    check_finite(pairs)?;
    let d: Vec<f64> = pairs.iter().map(|(dom, min)| dom - min).collect();
    let m = mean(d.iter().copied());
    let ss: f64 = d.iter().map(|x| (x - m) * (x - m)).sum();
    let sd = (ss / (n - 1) as f64).sqrt();
    finish(m, sd / (n as f64).sqrt(), sd, n, (n - 1) as f64)
}

/// Two-sample pooled-variance t-test of dominant against minoritized
/// perplexities; `sd_diff` holds the pooled standard deviation.
pub fn unpaired_ttest(pairs: &[(f64, f64)]) -> Result<TTestResult, MetricError> {
    let n = pairs.len();
    if n < 2 {
        return Err(MetricError::TooFewPairs { n });
    }
    check_finite(pairs)?;
    let ma = mean(pairs.iter().map(|p| p.0));
    let mb = mean(pairs.iter().map(|p| p.1));
    let ss: f64 = pairs
        .iter()
        .map(|(a, b)| (a - ma) * (a - ma) + (b - mb) * (b - mb))
        .sum();
    let df = (2 * n - 2) as f64;
    let pooled = (ss / df).sqrt();
    let se = pooled * (2.0 / n as f64).sqrt();
    finish(ma - mb, se, pooled, n, df)
}

pub fn ttest(pairs: &[(f64, f64)], kind: TTestKind) -> Result<TTestResult, MetricError> {
    match kind {
        TTestKind::Paired => paired_ttest(pairs),
        TTestKind::Unpaired => unpaired_ttest(pairs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diffs(d: &[f64]) -> Vec<(f64, f64)> {
        d.iter().map(|&x| (x, 0.0)).collect()
    }

    #[test]
    fn symmetric_diffs_give_zero() {
        let r = paired_ttest(&diffs(&[1.0, -1.0, 1.0, -1.0])).unwrap();
        assert_eq!(r.t, 0.0);
        assert!((r.p - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_to_four() {
        // mean 2.5, sd sqrt(5/3), t = 2.5 / (sd / 2)
        let r = paired_ttest(&diffs(&[1.0, 2.0, 3.0, 4.0])).unwrap();
        let want = 2.5 / ((5.0f64 / 3.0).sqrt() / 2.0);
        assert!((r.t - want).abs() < 1e-12);
        assert_eq!(r.df, 3.0);
        assert!(r.p > 0.0 && r.p < 0.05);
    }

    #[test]
    fn degenerate_cases() {
        assert!(matches!(
            paired_ttest(&diffs(&[1.0])),
            Err(MetricError::TooFewPairs { n: 1 })
        ));
        assert!(matches!(
            paired_ttest(&diffs(&[2.0, 2.0])),
            Err(MetricError::DegenerateT { .. })
        ));
        let r = paired_ttest(&[(3.0, 3.0), (5.0, 5.0)]).unwrap();
        assert_eq!((r.t, r.p), (0.0, 1.0));
        assert!(matches!(
            paired_ttest(&[(1.0, f64::NAN), (1.0, 2.0)]),
            Err(MetricError::NonFinite { index: 0 })
        ));
    }

    #[test]
    fn higher_minoritized_perplexity_is_negative() {
        let pairs: Vec<(f64, f64)> = (0..20)
            .map(|i| (10.0 + i as f64, 11.0 + i as f64 + (i % 3) as f64 * 0.1))
            .collect();
        assert!(paired_ttest(&pairs).unwrap().t < 0.0);
        assert!(unpaired_ttest(&pairs).unwrap().t < 0.0);
    }

    #[test]
    fn unpaired_matches_pooled_formula() {
        let pairs = [(1.0, 2.0), (2.0, 4.0), (3.0, 3.0)];
        let r = unpaired_ttest(&pairs).unwrap();
        // means 2 and 3, both sample variances 1
        let want = -1.0 / (1.0f64 * (2.0f64 / 3.0).sqrt());
        assert!((r.t - want).abs() < 1e-12);
        assert_eq!(r.df, 4.0);
    }
}
