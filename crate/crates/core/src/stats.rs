//! Small statistics helpers for the Monte Carlo checks.

use alloc::vec::Vec;

use crate::lfunction::special::CompensatedSum;

/// Sample mean and its standard error `sd / sqrt(n)`.
pub fn mean_with_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mut acc = CompensatedSum::new();
    for &x in xs {
        acc.add(x);
    }
    let mean = acc.value() / n as f64;
    if n == 1 {
        return (mean, f64::INFINITY);
    }
    let mut ss = CompensatedSum::new();
    for &x in xs {
        ss.add((x - mean) * (x - mean));
    }
    let var = ss.value() / (n - 1) as f64;
    (mean, libm::sqrt(var / n as f64))
}

/// Kolmogorov-Smirnov distance between the empirical distribution of
/// `samples` and a continuous CDF. Ties are handled exactly.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut xs: Vec<f64> = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < xs.len() {
        let mut j = i;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        let f = cdf(xs[i]);
        d = d.max(libm::fabs(f - i as f64 / n)).max(libm::fabs(j as f64 / n - f));
        i = j;
    }
    d
}

/// Asymptotic critical values of the one-sample KS statistic.
pub fn ks_critical(n: usize, level: KsLevel) -> f64 {
    let c = match level {
        KsLevel::OnePercent => 1.63,
        KsLevel::FivePercent => 1.36,
    };
    c / libm::sqrt(n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsLevel {
    OnePercent,
    FivePercent,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mean_and_error() {
        let (m, se) = mean_with_se(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((se - libm::sqrt(5.0 / 12.0) / 2.0 * libm::sqrt(4.0)).abs() < 1e-15);
    }

    #[test]
    fn ks_on_exact_quantiles() {
        let n = 1000;
        let xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_statistic(&xs, |x| x.clamp(0.0, 1.0));
        assert!((d - 0.5 / n as f64).abs() < 1e-12);
        let ties = [0.5; 10];
        assert!((ks_statistic(&ties, |x| x) - 0.5).abs() < 1e-15);
        assert!((ks_critical(100_000, KsLevel::OnePercent) - 1.63 / 316.227_766_016_837_94).abs() < 1e-15);
    }
}
