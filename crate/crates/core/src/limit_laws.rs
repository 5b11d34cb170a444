//! Limiting objects: Cauchy evaluations `exp(i s log(m) C)`, their
//! wrapped-Cauchy angle law, the Bohr-Jessen random Euler product, and the
//! divisor-type convolution powers behind its moments.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::{gcd, smallest_prime_factors, PrimeSieve};
use crate::lfunction::special::{integrate, zeta, CompensatedSum};
use crate::lfunction::{check_s, ResidueSums, ValueWithCert};
use crate::moments::Support;
use crate::rng::CounterRng;
use crate::{invalid, Error};

/// The law of `exp(i s log(m) C)` with `C` standard Cauchy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyEvalLaw {
    pub s: f64,
    pub m: u64,
}

impl CauchyEvalLaw {
    pub fn new(s: f64, m: u64) -> Result<Self, Error> {
        check_s(s)?;
        if m == 0 {
            return Err(invalid("m must be >= 1"));
        }
        Ok(Self { s, m })
    }

    /// Concentration `rho = m^{-s}` of the wrapped angle.
    pub fn rho(&self) -> f64 {
        libm::pow(self.m as f64, -self.s)
    }

    /// `E[exp(i n s log(m) C)] = rho^{|n|}`.
    pub fn circular_moment(&self, n: i64) -> f64 {
        libm::pow(self.rho(), n.unsigned_abs() as f64)
    }

    fn scale(&self) -> f64 {
        self.s * libm::log(self.m as f64)
    }
}

/// `count` draws of `exp(i s log(m) C)`, `C = tan(pi (V - 1/2))`.
pub fn sample_cauchy_evaluation(law: &CauchyEvalLaw, count: usize, seed: u64) -> Vec<Complex64> {
    sample_cauchy_range(law, seed, 0, count as u64)
}

pub fn sample_cauchy_range(law: &CauchyEvalLaw, seed: u64, start: u64, end: u64) -> Vec<Complex64> {
    let mut rng = CounterRng::new(seed, 1);
    rng.seek(start);
    let scale = law.scale();
    (start..end)
        .map(|_| {
            let c = libm::tan(PI * (rng.uniform_open() - 0.5));
            let (sn, cs) = libm::sincos(scale * c);
            Complex64::new(cs, sn)
        })
        .collect()
}

/// CDF on `[0, 2 pi]` of the angle `s log(m) C mod 2 pi`.
///
/// For `0 <= phi <= pi` the mass of `[0, phi]` is
/// `atan(c tan(phi/2)) / pi` with `c = (1 + rho) / (1 - rho)`; the upper half
/// follows by symmetry.
pub fn wrapped_cauchy_cdf(law: &CauchyEvalLaw, theta: f64) -> f64 {
    if theta <= 0.0 {
        return 0.0;
    }
    if theta >= 2.0 * PI {
        return 1.0;
    }
    let rho = law.rho();
    if rho >= 1.0 {
        return 1.0;
    }
    let c = (1.0 + rho) / (1.0 - rho);
    let g = |phi: f64| {
        let (sn, cs) = libm::sincos(0.5 * phi);
        libm::atan2(c * sn, cs) / PI
    };
    if theta <= PI {
        g(theta)
    } else {
        1.0 + g(theta - 2.0 * PI)
    }
}

/// Wrapped-Cauchy density on `(-pi, pi]`.
pub fn wrapped_cauchy_density(law: &CauchyEvalLaw, theta: f64) -> f64 {
    let rho = law.rho();
    (1.0 - rho * rho) / (2.0 * PI * (1.0 + rho * rho - 2.0 * rho * libm::cos(theta)))
}

/// `int e^{i n theta} dF(theta)` by quadrature of the density.
pub fn wrapped_cauchy_fourier(law: &CauchyEvalLaw, n: i64) -> Result<Complex64, Error> {
    if law.rho() >= 1.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let (v, _) = integrate(
        |t| {
            let (sn, cs) = libm::sincos(n as f64 * t);
            Complex64::new(cs, sn) * wrapped_cauchy_density(law, t)
        },
        -PI,
        PI,
        1e-13,
        200_000,
    )?;
    Ok(v)
}

/// `f_k(m) = k (k+1) ... (k+m-1) / m!`, the number of ways to write `p^m`
/// as an ordered product of `k` factors.
pub fn rising_coeff(k: u64, m: u64) -> Result<u128, Error> {
    if k == 0 {
        return Ok(if m == 0 { 1 } else { 0 });
    }
    let mut c: u128 = 1;
    for i in 1..=m as u128 {
        // c = C(k - 1 + i - 1, i - 1) here, so c (k - 1 + i) / i is integral
        let g = gcd_u128(c, i);
        let num = (k as u128 - 1 + i)
            .checked_mul(c / g)
            .ok_or(Error::Overflow("rising coefficient"))?;
        c = num / (i / g);
    }
    Ok(c)
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `1^{*k}(n) = prod_{p^a || n} f_k(a)`.
pub fn conv_power(k: u64, n: u64) -> Result<u128, Error> {
    if n == 0 {
        return Err(invalid("n must be >= 1"));
    }
    let mut acc: u128 = 1;
    for (_, a) in crate::arith::factorize(n) {
        acc = acc
            .checked_mul(rising_coeff(k, a as u64)?)
            .ok_or(Error::Overflow("convolution power"))?;
    }
    if k == 0 && n > 1 {
        return Ok(0);
    }
    Ok(acc)
}

/// `1^{*k}(n)` by the convolution recursion
/// `1^{*k}(n) = sum_{d | n} 1^{*(k-1)}(d)`.
pub fn conv_power_direct(k: u64, n: u64) -> Result<u128, Error> {
    if n == 0 {
        return Err(invalid("n must be >= 1"));
    }
    if k == 0 {
        return Ok((n == 1) as u128);
    }
    let divisors: Vec<u64> = (1..=crate::arith::isqrt(n))
        .filter(|d| n % d == 0)
        .flat_map(|d| if d * d == n { vec![d] } else { vec![d, n / d] })
        .collect();
    let mut acc: u128 = 0;
    for d in divisors {
        acc = acc
            .checked_add(conv_power_direct(k - 1, d)?)
            .ok_or(Error::Overflow("convolution power"))?;
    }
    Ok(acc)
}

/// `1^{*k}(n)` for `n = 0..=n_max` (slot 0 unused) by `k` rounds of the
/// divisor-sum sieve.
pub fn conv_power_table(k: u64, n_max: usize) -> Result<Vec<u64>, Error> {
    let mut cur = vec![0u64; n_max + 1];
    if n_max >= 1 {
        cur[1] = 1;
    }
    for _ in 0..k {
        let mut next = vec![0u64; n_max + 1];
        for d in 1..=n_max {
            if cur[d] == 0 {
                continue;
            }
            let mut m = d;
            while m <= n_max {
                next[m] = next[m]
                    .checked_add(cur[d])
                    .ok_or(Error::Overflow("convolution power table"))?;
                m += d;
            }
        }
        cur = next;
    }
    Ok(cur)
}

/// `1^{*k}(n)` for `n = 0..=n_max` from the factorisation product, using a
/// smallest-prime-factor table.
pub fn conv_power_table_multiplicative(k: u64, n_max: usize) -> Result<Vec<u64>, Error> {
    let spf = smallest_prime_factors(n_max);
    let fk: Vec<u64> = (0..64)
        .map(|a| rising_coeff(k, a).map(|v| u64::try_from(v).unwrap_or(u64::MAX)))
        .collect::<Result<_, _>>()?;
    let mut out = vec![0u64; n_max + 1];
    if n_max >= 1 {
        out[1] = 1;
    }
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut rest = n;
        let mut a = 0;
        while rest % p == 0 {
            rest /= p;
            a += 1;
        }
        out[n] = out[rest]
            .checked_mul(fk[a])
            .ok_or(Error::Overflow("convolution power table"))?;
    }
    Ok(out)
}

/// Bohr-Jessen parameters: exponent `alpha > 1` and prime cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BJParams {
    pub alpha: f64,
    pub p_max: u64,
}

impl BJParams {
    pub fn new(alpha: f64, p_max: u64) -> Result<Self, Error> {
        check_s(alpha)?;
        Ok(Self { alpha, p_max })
    }
}

/// Draws of `prod_{p <= p_max} (1 - e(U_p) p^{-alpha})^{-1}`, accumulated as
/// a complex logarithm.
pub fn bj_sample(params: &BJParams, count: usize, seed: u64) -> Vec<Complex64> {
    let sieve = PrimeSieve::new(params.p_max);
    bj_sample_range(params, sieve.primes(), seed, 0, count as u64)
}

/// Draws `start..end`; each draw consumes one uniform per prime.
pub fn bj_sample_range(params: &BJParams, primes: &[u64], seed: u64, start: u64, end: u64) -> Vec<Complex64> {
    let weights: Vec<f64> = primes.iter().map(|&p| libm::pow(p as f64, -params.alpha)).collect();
    let mut rng = CounterRng::new(seed, primes.len().max(1) as u64);
    (start..end)
        .map(|i| {
            rng.seek(i);
            let mut log_mod = 0.0;
            let mut arg = 0.0;
            for &w in &weights {
                let (sn, cs) = libm::sincos(2.0 * PI * rng.uniform());
                let re = 1.0 - w * cs;
                let im = -w * sn;
                log_mod -= 0.5 * libm::log1p(-2.0 * w * cs + w * w);
                arg -= libm::atan2(im, re);
            }
            Complex64::from_polar(libm::exp(log_mod), arg)
        })
        .collect()
}

/// `sum_{m >= 0} f_k(m)^2 x^m` with a bound on the neglected terms, using
/// that consecutive term ratios `((k+m)/(m+1))^2 x` decrease in `m`.
fn local_factor(k: u64, x: f64) -> Result<(f64, f64), Error> {
    let kf = k as f64;
    let mut acc = CompensatedSum::new();
    let mut term = 1.0;
    let mut m = 0u64;
    loop {
        acc.add(term);
        let r = (kf + m as f64) / (m as f64 + 1.0);
        let ratio = r * r * x;
        let next = term * ratio;
        if !next.is_finite() || m > 100_000 {
            return Err(Error::Overflow("Bohr-Jessen local factor"));
        }
        let r2 = (kf + m as f64 + 1.0) / (m as f64 + 2.0);
        let later = r2 * r2 * x;
        if later < 1.0 && next / (1.0 - later) <= 1e-17 * acc.value() {
            return Ok((acc.value(), next / (1.0 - later)));
        }
        term = next;
        m += 1;
    }
}

/// `E|BJ|^{2k}` for the product truncated at `p_max`, i.e.
/// `prod_{p <= p_max} sum_m f_k(m)^2 p^{-2 m t}`.
///
/// The value is exact for the truncated law up to rounding. The bound
/// covers the distance to the untruncated product: primes above `p_max`
/// change it by a factor at most `e^delta` with
/// `delta = k^2 P^{1-2t} / ((2t-1)(1 - k^2 P^{-2t}))`, using `f_k(m) <= k^m`.
pub fn bj_moment(t: f64, k: u64, p_max: u64) -> Result<ValueWithCert, Error> {
    check_s(t)?;
    if k > 64 {
        return Err(Error::Overflow("Bohr-Jessen moment order"));
    }
    if k == 0 {
        return Ok(ValueWithCert {
            value: Complex64::new(1.0, 0.0),
            bound: 0.0,
            terms_used: 0,
        });
    }
    let sieve = PrimeSieve::new(p_max);
    let mut log = CompensatedSum::new();
    let mut rel = 0.0;
    for &p in sieve.primes() {
        let (v, b) = local_factor(k, libm::pow(p as f64, -2.0 * t))?;
        log.add(libm::log(v));
        rel += b / v + 2.0 * f64::EPSILON;
    }
    let value = libm::exp(log.value());
    if !value.is_finite() {
        return Err(Error::Overflow("Bohr-Jessen moment"));
    }
    let kk = (k * k) as f64;
    let pm = (p_max.max(1)) as f64;
    let lead = kk * libm::pow(pm, -2.0 * t);
    let tail = if lead < 1.0 {
        let delta = kk * libm::pow(pm, 1.0 - 2.0 * t) / ((2.0 * t - 1.0) * (1.0 - lead));
        value * libm::expm1(delta)
    } else {
        f64::INFINITY
    };
    Ok(ValueWithCert {
        value: Complex64::new(value, 0.0),
        bound: tail + value * libm::expm1(rel),
        terms_used: sieve.primes().len() as u64,
    })
}

/// `sum_{n > N} a_n n^{-sigma}` when `sum_{n <= x} a_n <= x (ln x + 1)^j`:
/// at most `sigma int_N^inf x^{-sigma} (ln x + 1)^j dx`, which integrates in
/// closed form.
fn divisor_tail(sigma: f64, j: u64, n: u64) -> f64 {
    let l = libm::log(n as f64) + 1.0;
    let np = libm::pow(n as f64, 1.0 - sigma);
    let mut acc = 0.0;
    let mut falling = 1.0;
    for i in 0..=j {
        acc += falling * libm::pow(l, (j - i) as f64) / libm::pow(sigma - 1.0, (i + 1) as f64);
        falling *= (j - i) as f64;
    }
    sigma * np * acc
}

/// `sum_{n <= N} (1^{*k}(n) / n^t)^2` with a tail bound from
/// `1^{*k}(n)^2 <= 1^{*k^2}(n)` and `sum_{n <= x} 1^{*j}(n) <= x (ln x + 1)^{j-1}`.
pub fn bj_moment_series(t: f64, k: u64, n_max: usize) -> Result<ValueWithCert, Error> {
    check_s(t)?;
    if n_max == 0 {
        return Err(invalid("n_max must be positive"));
    }
    let d = conv_power_table(k, n_max)?;
    let mut acc = CompensatedSum::new();
    for n in (1..=n_max).rev() {
        let v = d[n] as f64 * libm::pow(n as f64, -t);
        acc.add(v * v);
    }
    let value = acc.value();
    let tail = if k == 0 { 0.0 } else { divisor_tail(2.0 * t, k * k - 1, n_max as u64) };
    Ok(ValueWithCert {
        value: Complex64::new(value, 0.0),
        bound: tail + 4.0 * f64::EPSILON * value,
        terms_used: n_max as u64,
    })
}

/// `E_{infinity, q} |L_t(chi)|^{2k}` as the congruence sum
/// `sum_{m = n mod q} 1^{*k}(m) 1^{*k}(n) (m n)^{-t}`.
///
/// With [`Support::Coprime`] only `m, n` coprime to `q` enter, which is the
/// uniform average over the characters mod `q`; [`Support::Unrestricted`]
/// sums over all `m, n`. For `k = 1` each class sum is evaluated to full
/// precision; otherwise classes are truncated at `n_max` and the missing
/// pairs are bounded by `2 T zeta(t)^k + T^2`, `T` the tail of
/// `sum 1^{*k}(n) n^{-t}`.
pub fn uniform_l_moment(t: f64, k: u64, q: u64, n_max: usize, support: Support) -> Result<ValueWithCert, Error> {
    check_s(t)?;
    if q == 0 {
        return Err(Error::InvalidModulus(0));
    }
    if k > 3 {
        return Err(Error::SizeGuard {
            what: "uniform_l_moment order k",
            n: k as usize,
            max: 3,
        });
    }
    if n_max > 100_000 {
        return Err(Error::SizeGuard {
            what: "uniform_l_moment n_max",
            n: n_max,
            max: 100_000,
        });
    }
    if k == 0 {
        return Ok(ValueWithCert {
            value: Complex64::new(1.0, 0.0),
            bound: 0.0,
            terms_used: 0,
        });
    }
    let keep = |r: u64| support == Support::Unrestricted || gcd(r, q) == 1;
    if k == 1 {
        let sums = ResidueSums::new(t, q)?;
        let mut acc = CompensatedSum::new();
        let mut bound = 0.0;
        for a in (1..=q).filter(|&a| keep(a % q)) {
            let v = sums.get(a);
            acc.add(v * v);
            bound += 2.0 * v * sums.bound(a) + sums.bound(a) * sums.bound(a);
        }
        let value = acc.value();
        return Ok(ValueWithCert {
            value: Complex64::new(value, 0.0),
            bound: bound + 4.0 * f64::EPSILON * q as f64 * value,
            terms_used: q,
        });
    }
    if n_max == 0 {
        return Err(invalid("n_max must be positive"));
    }
    let d = conv_power_table(k, n_max)?;
    let mut classes = vec![CompensatedSum::new(); q as usize];
    for n in (1..=n_max).rev() {
        let r = n as u64 % q;
        if keep(r) {
            classes[r as usize].add(d[n] as f64 * libm::pow(n as f64, -t));
        }
    }
    let mut acc = CompensatedSum::new();
    for c in &classes {
        let v = c.value();
        acc.add(v * v);
    }
    let value = acc.value();
    let tail = divisor_tail(t, k - 1, n_max as u64);
    let total = libm::pow(zeta(t), k as f64);
    Ok(ValueWithCert {
        value: Complex64::new(value, 0.0),
        bound: 2.0 * tail * total + tail * tail + 4.0 * f64::EPSILON * value,
        terms_used: n_max as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::mean_with_se;

    #[test]
    fn degenerate_base_gives_constant_one() {
        let law = CauchyEvalLaw::new(2.0, 1).unwrap();
        assert!(sample_cauchy_evaluation(&law, 100, 5).iter().all(|z| *z == Complex64::new(1.0, 0.0)));
        assert_eq!(wrapped_cauchy_cdf(&law, 1.0), 1.0);
    }

    #[test]
    fn cauchy_circular_moments() {
        let law = CauchyEvalLaw::new(2.0, 2).unwrap();
        let draws = sample_cauchy_evaluation(&law, 1_000_000, 11);
        for n in 1..=4i32 {
            let xs: Vec<f64> = draws.iter().map(|z| z.powi(n).re).collect();
            let (mean, se) = mean_with_se(&xs);
            let target = law.circular_moment(n as i64);
            assert!((mean - target).abs() < 4.0 * se, "n={n} {mean} {target} {se}");
        }
        assert_eq!(law.circular_moment(2), 0.0625);
    }

    #[test]
    fn cauchy_sampling_is_partition_invariant() {
        let law = CauchyEvalLaw::new(1.5, 3).unwrap();
        let all = sample_cauchy_evaluation(&law, 500, 8);
        let mut split = sample_cauchy_range(&law, 8, 0, 123);
        split.extend(sample_cauchy_range(&law, 8, 123, 500));
        assert_eq!(all, split);
    }

    #[test]
    fn wrapped_cauchy_cdf_shape() {
        let law = CauchyEvalLaw::new(2.0, 2).unwrap();
        assert_eq!(wrapped_cauchy_cdf(&law, 2.0 * PI), 1.0);
        assert!((wrapped_cauchy_cdf(&law, PI) - 0.5).abs() < 1e-15);
        let mut last = 0.0;
        for i in 1..=1000 {
            let v = wrapped_cauchy_cdf(&law, 2.0 * PI * i as f64 / 1000.0);
            assert!(v >= last);
            last = v;
        }
        // derivative is the density
        for &th in &[0.3, 2.0, 4.0, 6.0] {
            let h = 1e-6;
            let num = (wrapped_cauchy_cdf(&law, th + h) - wrapped_cauchy_cdf(&law, th - h)) / (2.0 * h);
            assert!((num - wrapped_cauchy_density(&law, th)).abs() < 1e-7);
        }
        let flat = CauchyEvalLaw::new(40.0, 3).unwrap();
        for &th in &[0.5, 3.0, 5.5] {
            assert!((wrapped_cauchy_cdf(&flat, th) - th / (2.0 * PI)).abs() < 1e-15);
        }
        let f1 = wrapped_cauchy_fourier(&law, 1).unwrap();
        assert!((f1.re - 0.25).abs() < 1e-12 && f1.im.abs() < 1e-12);
        for n in 0..5 {
            let f = wrapped_cauchy_fourier(&law, n).unwrap();
            assert!((f.re - law.circular_moment(n)).abs() < 1e-12);
        }
    }

    #[test]
    fn rising_coefficients() {
        assert_eq!(rising_coeff(5, 0).unwrap(), 1);
        assert_eq!(rising_coeff(2, 3).unwrap(), 4);
        assert_eq!(rising_coeff(3, 3).unwrap(), 10);
        for m in 0..=20 {
            assert_eq!(rising_coeff(2, m).unwrap(), m as u128 + 1);
        }
        assert_eq!(rising_coeff(1, 50).unwrap(), 1);
        assert!(matches!(rising_coeff(1000, 1000), Err(Error::Overflow(_))));
    }

    #[test]
    fn convolution_powers() {
        assert_eq!(conv_power(2, 12).unwrap(), 6);
        assert_eq!(conv_power(3, 8).unwrap(), 10);
        for n in 1..200 {
            assert_eq!(conv_power(1, n).unwrap(), 1);
            for k in 0..=4 {
                assert_eq!(conv_power(k, n).unwrap(), conv_power_direct(k, n).unwrap(), "k={k} n={n}");
            }
        }
        for k in 0..=4 {
            assert_eq!(conv_power_table(k, 5000).unwrap(), conv_power_table_multiplicative(k, 5000).unwrap());
        }
    }

    #[test]
    fn squared_divisor_bound() {
        // f_k(a)^2 <= f_{k^2}(a), so 1^{*k}(n)^2 <= 1^{*k^2}(n)
        for k in 1..=4u64 {
            for a in 0..=30 {
                let x = rising_coeff(k, a).unwrap();
                assert!(x * x <= rising_coeff(k * k, a).unwrap());
            }
        }
    }

    #[test]
    fn divisor_partial_sum_bound() {
        for j in 1..=9u64 {
            let d = conv_power_table(j, 20_000).unwrap();
            let mut acc = 0u64;
            for x in 1..=20_000usize {
                acc += d[x];
                let b = x as f64 * (libm::log(x as f64) + 1.0).powi(j as i32 - 1);
                assert!(acc as f64 <= b * (1.0 + 1e-12), "j={j} x={x}");
            }
        }
    }

    #[test]
    fn bj_moment_values() {
        assert_eq!(bj_moment(2.0, 0, 100).unwrap().value.re, 1.0);
        let m1 = bj_moment(2.0, 1, 100_000).unwrap();
        assert!((m1.value.re - zeta(4.0)).abs() < 1e-8);
        assert!((m1.value.re - zeta(4.0)).abs() <= m1.bound + 1e-15);
        let closed = zeta(4.0).powi(4) / zeta(8.0);
        let m2 = bj_moment(2.0, 2, 100_000).unwrap();
        assert!((m2.value.re - closed).abs() <= m2.bound + 1e-14);
        assert!((closed - 1.366_660_845_936_091).abs() < 1e-14);
        let series = bj_moment_series(2.0, 2, 1_000_000).unwrap();
        assert!((series.value.re - closed).abs() <= series.bound + 1e-14);
    }

    #[test]
    fn bj_routes_agree() {
        for &t in &[1.5, 2.0, 3.0] {
            for k in 0..=3 {
                let p = bj_moment(t, k, 200_000).unwrap();
                let s = bj_moment_series(t, k, 200_000).unwrap();
                let gap = (p.value.re - s.value.re).abs();
                assert!(gap <= p.bound + s.bound, "t={t} k={k} gap {gap} {} {}", p.bound, s.bound);
            }
        }
    }

    #[test]
    fn bj_sampling() {
        let none = BJParams::new(2.0, 1).unwrap();
        assert!(bj_sample(&none, 10, 1).iter().all(|z| (*z - 1.0).norm() < 1e-15));
        let p = BJParams::new(2.0, 200).unwrap();
        let all = bj_sample(&p, 300, 4);
        let sieve = PrimeSieve::new(200);
        let mut split = bj_sample_range(&p, sieve.primes(), 4, 0, 100);
        split.extend(bj_sample_range(&p, sieve.primes(), 4, 100, 300));
        assert_eq!(all, split);
        let draws = bj_sample(&p, 100_000, 21);
        let xs: Vec<f64> = draws.iter().map(|z| z.norm_sqr()).collect();
        let (mean, se) = mean_with_se(&xs);
        let exact = bj_moment(2.0, 1, 200).unwrap().value.re;
        assert!((mean - exact).abs() < 4.0 * se);
    }

    #[test]
    fn uniform_l_moment_values() {
        assert_eq!(uniform_l_moment(2.0, 0, 7, 10, Support::Coprime).unwrap().value.re, 1.0);
        let v = uniform_l_moment(2.0, 1, 1000, 0, Support::Unrestricted).unwrap().value.re;
        assert!(v > zeta(4.0) && v - zeta(4.0) < 1e-4);
        let mut last = f64::INFINITY;
        for q in [10u64, 100, 1000, 10_000] {
            let ex = uniform_l_moment(2.0, 1, q, 0, Support::Unrestricted).unwrap().value.re - zeta(4.0);
            assert!(ex < last);
            last = ex;
        }
        assert!(matches!(uniform_l_moment(2.0, 4, 7, 10, Support::Coprime), Err(Error::SizeGuard { .. })));
        let k2 = uniform_l_moment(2.0, 2, 1_000_000, 100_000, Support::Unrestricted).unwrap();
        let bj = bj_moment(2.0, 2, 1_000_000).unwrap();
        assert!((k2.value.re - bj.value.re).abs() <= k2.bound + bj.bound);
    }
}
