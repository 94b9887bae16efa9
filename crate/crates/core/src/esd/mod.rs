//! Generalized extreme Studentized deviate (ESD) test.
//!
//! Given only an upper bound `r` on the number of outliers, the test removes
//! the most extreme observation `r` times, recording the studentized
//! deviation `R_i = max |x_j − x̄| / s` of each stage, and compares it with
//! the critical value
//!
//! ```text
//! λ_i = (n − i) t_{p,ν} / sqrt((ν + t²_{p,ν}) (n − i + 1)),
//! p = 1 − α / (2 (n − i + 1)),  ν = n − i − 1.
//! ```
//!
//! The number of outliers is the largest `i` with `R_i > λ_i`.

mod special;
mod student_t;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use special::{ln_beta, ln_gamma, regularized_incomplete_beta};
pub use student_t::{t_cdf, t_quantile};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EsdError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("zero variance at stage {stage}: the remaining {remaining} values are identical")]
    ZeroVariance { stage: usize, remaining: usize },
    #[error("series of length {n} is too small for r = {r} (need n >= r + 2)")]
    TooSmall { n: usize, r: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("series contains non-finite values")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EsdConfig {
    pub alpha: f64,
    /// Upper bound on the number of outliers; `None` means `ceil(0.05 n)`.
    pub max_outliers: Option<usize>,
}

impl Default for EsdConfig {
    fn default() -> Self {
        EsdConfig { alpha: 0.05, max_outliers: None }
    }
}

impl EsdConfig {
    pub fn upper_bound(&self, n: usize) -> usize {
        self.max_outliers.unwrap_or_else(|| default_upper_bound(n))
    }
}

pub fn default_upper_bound(n: usize) -> usize {
    (0.05 * n as f64).ceil() as usize
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EsdResult {
    pub alpha: f64,
    /// `R_1..R_r`.
    pub statistics: Vec<f64>,
    /// `λ_1..λ_r`.
    pub critical_values: Vec<f64>,
    /// Original indices of the removed candidates, in removal order.
    pub removal_order: Vec<usize>,
    pub num_outliers: usize,
    /// The first `num_outliers` entries of `removal_order`.
    pub outlier_indices: Vec<usize>,
}

impl EsdResult {
    pub fn r(&self) -> usize {
        self.statistics.len()
    }

    /// Per-point flags for a series of length `n`.
    pub fn flags(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![false; n];
        for &i in &self.outlier_indices {
            flags[i] = true;
        }
        flags
    }
}

/// Critical value `λ_i` for stage `i` (1-based) of a series of length `n`.
pub fn critical_value(n: usize, i: usize, alpha: f64) -> Result<f64, EsdError> {
    if i == 0 || n < i + 2 {
        return Err(EsdError::TooSmall { n, r: i });
    }
    let remaining = (n - i + 1) as f64;
    let nu = (n - i - 1) as f64;
    let p = 1.0 - alpha / (2.0 * remaining);
    let t = t_quantile(p, nu)?;
    Ok((n - i) as f64 * t / ((nu + t * t) * remaining).sqrt())
}

/// Runs the two-sided generalized ESD test.
///
/// Ties in `|x_j − x̄|` are broken by the lowest original index.
pub fn esd_test(series: &[f64], cfg: &EsdConfig) -> Result<EsdResult, EsdError> {
    let n = series.len();
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(EsdError::Config(format!("alpha must lie in (0, 1), got {}", cfg.alpha)));
    }
    let r = cfg.upper_bound(n);
    if r < 1 {
        return Err(EsdError::Config("upper bound r must be at least 1".into()));
    }
    if n < r + 2 {
        return Err(EsdError::TooSmall { n, r });
    }
    if series.iter().any(|x| !x.is_finite()) {
        return Err(EsdError::NonFinite);
    }

    let mut remaining: Vec<usize> = (0..n).collect();
    let mut statistics = Vec::with_capacity(r);
    let mut critical_values = Vec::with_capacity(r);
    let mut removal_order = Vec::with_capacity(r);

    for stage in 1..=r {
        let m = remaining.len() as f64;
        let mean = remaining.iter().map(|&j| series[j]).sum::<f64>() / m;
        let var = remaining.iter().map(|&j| (series[j] - mean).powi(2)).sum::<f64>() / (m - 1.0);
        let sd = var.sqrt();
        // rounding in the mean can leave a tiny nonzero spread for equal values
        let first = series[remaining[0]];
        if sd == 0.0 || remaining.iter().all(|&j| series[j] == first) {
            return Err(EsdError::ZeroVariance { stage, remaining: remaining.len() });
        }

        // `remaining` stays in ascending index order, so the first strict
        // maximum is the lowest original index.
        let mut best_pos = 0;
        let mut best_dev = f64::NEG_INFINITY;
        for (pos, &j) in remaining.iter().enumerate() {
            let dev = (series[j] - mean).abs();
            if dev > best_dev {
                best_dev = dev;
                best_pos = pos;
            }
        }

        statistics.push(best_dev / sd);
        critical_values.push(critical_value(n, stage, cfg.alpha)?);
        removal_order.push(remaining.remove(best_pos));
    }

    let num_outliers = statistics
        .iter()
        .zip(&critical_values)
        .rposition(|(r, lambda)| r > lambda)
        .map_or(0, |i| i + 1);
    let outlier_indices = removal_order[..num_outliers].to_vec();

    Ok(EsdResult { alpha: cfg.alpha, statistics, critical_values, removal_order, num_outliers, outlier_indices })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_spike() {
        let mut xs = vec![0.0; 20];
        xs[7] = 100.0;
        let res = esd_test(&xs, &EsdConfig { alpha: 0.05, max_outliers: Some(3) });
        // stage 2 sees nineteen identical zeros
        assert_eq!(res.unwrap_err(), EsdError::ZeroVariance { stage: 2, remaining: 19 });
    }

    #[test]
    fn single_spike_with_noise() {
        // nineteen small alternating values plus one spike
        let mut xs: Vec<f64> = (0..20).map(|i| if i % 2 == 0 { 0.01 } else { -0.01 }).collect();
        xs[7] = 100.0;
        let res = esd_test(&xs, &EsdConfig { alpha: 0.05, max_outliers: Some(3) }).unwrap();
        assert!(res.num_outliers >= 1);
        assert_eq!(res.outlier_indices[0], 7);

        // R_1 by hand: deviation of the spike over the sample sd
        let mean = xs.iter().sum::<f64>() / 20.0;
        let sd = (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 19.0).sqrt();
        assert!((res.statistics[0] - (100.0 - mean) / sd).abs() < 1e-12);
        // 20 points can be at most (n-1)/sqrt(n) studentized away
        assert!(res.statistics[0] <= 19.0_f64 / 20f64.sqrt() + 1e-12);
    }

    #[test]
    fn false_alarm_rate_near_alpha() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, Normal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let normal = Normal::new(0.0, 1.0).unwrap();
        let trials = 400;
        let alarms = (0..trials)
            .filter(|_| {
                let xs: Vec<f64> = (0..200).map(|_| normal.sample(&mut rng)).collect();
                esd_test(&xs, &EsdConfig::default()).unwrap().num_outliers > 0
            })
            .count();
        // the test is built to keep the familywise rate at about alpha
        let rate = alarms as f64 / trials as f64;
        assert!(rate < 0.1, "false alarm rate {rate}");
    }

    #[test]
    fn constant_series() {
        let err = esd_test(&[3.0; 30], &EsdConfig::default()).unwrap_err();
        assert!(matches!(err, EsdError::ZeroVariance { stage: 1, .. }));
        // a mean that does not round-trip must still count as no spread
        let err = esd_test(&[0.1; 37], &EsdConfig::default()).unwrap_err();
        assert!(matches!(err, EsdError::ZeroVariance { stage: 1, .. }));
    }

    #[test]
    fn too_small() {
        let err = esd_test(&[1.0, 2.0, 3.0], &EsdConfig { alpha: 0.05, max_outliers: Some(2) }).unwrap_err();
        assert_eq!(err, EsdError::TooSmall { n: 3, r: 2 });
        assert!(esd_test(&[], &EsdConfig::default()).is_err());
    }

    #[test]
    fn bad_alpha() {
        let xs: Vec<f64> = (0..30).map(f64::from).collect();
        assert!(matches!(esd_test(&xs, &EsdConfig { alpha: 1.0, max_outliers: None }), Err(EsdError::Config(_))));
    }

    #[test]
    fn default_r_is_five_percent_rounded_up() {
        assert_eq!(default_upper_bound(54), 3);
        assert_eq!(default_upper_bound(3417), 171);
        assert_eq!(default_upper_bound(20), 1);
        let xs: Vec<f64> = (0..41).map(|i| (i as f64 * 0.37).sin()).collect();
        assert_eq!(esd_test(&xs, &EsdConfig::default()).unwrap().r(), 3);
    }

    #[test]
    fn ties_prefer_lowest_index() {
        // symmetric extremes at indices 2 and 9
        let mut xs: Vec<f64> = (0..12).map(|i| if i % 2 == 0 { 0.1 } else { -0.1 }).collect();
        xs[2] = 5.0;
        xs[9] = -5.0;
        let res = esd_test(&xs, &EsdConfig { alpha: 0.05, max_outliers: Some(2) }).unwrap();
        assert_eq!(res.removal_order[0], 2);
        assert_eq!(res.removal_order[1], 9);
    }

    #[test]
    fn critical_values_follow_formula() {
        let xs: Vec<f64> = (0..60).map(|i| ((i * 7919) % 101) as f64).collect();
        let res = esd_test(&xs, &EsdConfig { alpha: 0.01, max_outliers: Some(8) }).unwrap();
        let n = xs.len();
        let mut prev = f64::INFINITY;
        for (k, &lambda) in res.critical_values.iter().enumerate() {
            let i = k + 1;
            let p = 1.0 - 0.01 / (2.0 * (n - i + 1) as f64);
            let nu = (n - i - 1) as f64;
            let t = t_quantile(p, nu).unwrap();
            let direct = (n - i) as f64 * t / ((nu + t * t) * (n - i + 1) as f64).sqrt();
            assert_eq!(lambda, direct);
            // λ shrinks as the sample shrinks
            assert!(lambda < prev);
            prev = lambda;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn shift_and_scale_equivariance(
            xs in proptest::collection::vec(-10.0f64..10.0, 12..60),
            a in prop_oneof![-50.0f64..-0.1, 0.1f64..50.0],
            b in -100.0f64..100.0,
        ) {
            let cfg = EsdConfig { alpha: 0.05, max_outliers: Some(3) };
            let base = esd_test(&xs, &cfg);
            let moved: Vec<f64> = xs.iter().map(|x| a * x + b).collect();
            let other = esd_test(&moved, &cfg);
            match (base, other) {
                (Ok(r1), Ok(r2)) => {
                    prop_assert_eq!(&r1.critical_values, &r2.critical_values);
                    for (s1, s2) in r1.statistics.iter().zip(&r2.statistics) {
                        prop_assert!((s1 - s2).abs() < 1e-9 * s1.max(1.0));
                    }
                    // exact ties can reorder under rounding; only compare well-separated cases
                    let margin = r1.statistics.iter().zip(&r1.critical_values).map(|(s, l)| (s - l).abs()).fold(f64::INFINITY, f64::min);
                    if margin > 1e-6 {
                        prop_assert_eq!(r1.num_outliers, r2.num_outliers);
                        prop_assert_eq!(r1.outlier_indices, r2.outlier_indices);
                    }
                }
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "{a:?} vs {b:?}"),
            }
        }

        #[test]
        fn num_outliers_bounded(xs in proptest::collection::vec(-1e3f64..1e3, 5..80), r in 1usize..4) {
            if let Ok(res) = esd_test(&xs, &EsdConfig { alpha: 0.05, max_outliers: Some(r) }) {
                prop_assert!(res.num_outliers <= r);
                prop_assert_eq!(res.statistics.len(), r);
                prop_assert_eq!(res.critical_values.len(), r);
                prop_assert!(res.statistics.iter().all(|&s| s >= 0.0));
                prop_assert_eq!(&res.outlier_indices[..], &res.removal_order[..res.num_outliers]);
            }
        }
    }
}
