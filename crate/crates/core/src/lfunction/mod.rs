//! Polylogarithms, Dirichlet L-values, the Euler-product confinement
//! potential and generalised `L_a` values, all for real `s > 1` and all with
//! a certified truncation bound.
//!
//! Sums over `n` are organised by residue class mod `q`: each class sum
//! `R_q(a) = sum_{n = a (q)} n^{-s}` is evaluated to full precision by
//! Euler-Maclaurin ([`special::shifted_zeta`]), and every periodic Dirichlet
//! series is then a finite combination of the `R_q(a)`. Plain streaming
//! summation with explicit tail bounds is kept as an alternative mode.

pub mod special;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::{gcd, is_prime, PrimeSieve};
use crate::char_group::{unit, Character, CharacterTable};
use crate::{invalid, Error};

use special::{integrate, power_tail, shifted_zeta, zeta_with_bound, CompensatedComplex};

/// Truncation control for infinite sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub tol: f64,
    pub n_max: u64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            n_max: 100_000_000,
        }
    }
}

impl TruncationPolicy {
    pub fn new(tol: f64, n_max: u64) -> Result<Self, Error> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(invalid(format!("tolerance must be positive, got {tol}")));
        }
        if n_max < 10 {
            return Err(invalid(format!("n_max must be at least 10, got {n_max}")));
        }
        Ok(Self { tol, n_max })
    }
}

/// A value together with a certified bound on its truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueWithCert {
    pub value: Complex64,
    pub bound: f64,
    pub terms_used: u64,
}

/// Fractional part in `[0, 1)`.
pub(crate) fn frac(x: f64) -> f64 {
    let f = x - libm::floor(x);
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

pub(crate) fn check_s(s: f64) -> Result<(), Error> {
    if s > 1.0 && s.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("s must be a real number > 1, got {s}")))
    }
}

/// The residue-class sums `R_q(a) = sum_{n >= 1, n = a mod q} n^{-s}` for
/// `a = 1..=q` (slot `q` holds the class of 0).
#[derive(Debug, Clone)]
pub struct ResidueSums {
    s: f64,
    q: u64,
    values: Vec<f64>,
    bounds: Vec<f64>,
}

impl ResidueSums {
    pub fn new(s: f64, q: u64) -> Result<Self, Error> {
        check_s(s)?;
        if q == 0 {
            return Err(Error::InvalidModulus(q));
        }
        let (values, bounds) = (1..=q)
            .map(|a| shifted_zeta(s, a as f64, q as f64))
            .unzip();
        Ok(Self {
            s,
            q,
            values,
            bounds,
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// `R_q(a)` for `a` in `1..=q`.
    pub fn get(&self, a: u64) -> f64 {
        self.values[(a - 1) as usize]
    }

    pub fn bound(&self, a: u64) -> f64 {
        self.bounds[(a - 1) as usize]
    }

    pub fn total_bound(&self) -> f64 {
        self.bounds.iter().sum()
    }
}

/// `Li_s(exp(2 pi i theta))` by direct summation.
///
/// At `theta = 0` this is `zeta(s)`, evaluated by Euler-Maclaurin. Otherwise
/// the partial sums of `exp(2 pi i n theta)` are bounded by
/// `1 / |sin(pi theta)|`, so Abel summation bounds the tail after `N` terms by
/// `(N + 1)^{-s} / |sin(pi theta)|`, never more than `N^{1-s} / (s - 1)`.
pub fn polylog(s: f64, theta: f64, policy: &TruncationPolicy) -> Result<ValueWithCert, Error> {
    check_s(s)?;
    if !theta.is_finite() {
        return Err(invalid("theta must be finite"));
    }
    let theta = frac(theta);
    let sin = libm::fabs(libm::sin(PI * theta));
    if theta == 0.0 || sin < 1e-300 {
        let (z, b) = zeta_with_bound(s);
        return Ok(ValueWithCert {
            value: Complex64::new(z, 0.0),
            bound: b,
            terms_used: 0,
        });
    }
    let n = terms_for(policy.tol, s, sin);
    if n > policy.n_max {
        return Err(Error::CapExceeded {
            needed: n,
            cap: policy.n_max,
        });
    }
    let mut acc = CompensatedComplex::new();
    for k in 1..=n {
        let turns = frac(k as f64 * theta);
        let (sn, cs) = libm::sincos(2.0 * PI * turns);
        acc.add(Complex64::new(cs, sn) * libm::pow(k as f64, -s));
    }
    Ok(ValueWithCert {
        value: acc.value(),
        bound: abel_tail(s, n, sin),
        terms_used: n,
    })
}

fn abel_tail(s: f64, n: u64, sin: f64) -> f64 {
    (libm::pow((n + 1) as f64, -s) / sin).min(power_tail(s, n))
}

fn terms_for(tol: f64, s: f64, sin: f64) -> u64 {
    // smallest N with (N+1)^{-s} / sin <= tol
    let x = libm::pow(tol * sin, -1.0 / s);
    if !x.is_finite() || x > 1e18 {
        return u64::MAX;
    }
    let mut n = (libm::ceil(x) as u64).saturating_sub(1).max(1);
    while abel_tail(s, n, sin) > tol {
        n += 1;
    }
    n
}

/// `Li_s(exp(2 pi i j / q))` for `j = 1..=q`, optionally restricted to the
/// terms with `gcd(n, q) = 1`.
///
/// Each value is the finite Fourier combination
/// `sum_a exp(2 pi i a j / q) R_q(a)` of residue-class sums.
#[derive(Debug, Clone)]
pub struct PolylogGrid {
    q: u64,
    values: Vec<Complex64>,
    bound: f64,
}

impl PolylogGrid {
    pub fn new(sums: &ResidueSums, coprime_only: bool) -> Self {
        let q = sums.modulus();
        let roots: Vec<Complex64> = (0..q).map(|t| unit(t, q)).collect();
        let classes: Vec<u64> = (1..=q)
            .filter(|&a| !coprime_only || gcd(a, q) == 1)
            .collect();
        let values = (1..=q)
            .map(|j| {
                let mut acc = CompensatedComplex::new();
                for &a in &classes {
                    let t = ((a as u128 * j as u128) % q as u128) as usize;
                    acc.add(roots[t] * sums.get(a));
                }
                acc.value()
            })
            .collect();
        let bound = classes.iter().map(|&a| sums.bound(a)).sum::<f64>()
            + 8.0 * f64::EPSILON * q as f64 * special::zeta(sums.s());
        Self { q, values, bound }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Value at `j / q`; `j` is reduced mod `q`, with 0 mapped to slot `q`.
    pub fn at(&self, j: u64) -> Complex64 {
        let r = j % self.q;
        let r = if r == 0 { self.q } else { r };
        self.values[(r - 1) as usize]
    }

    /// Uniform bound on the error of every grid value.
    pub fn bound(&self) -> f64 {
        self.bound
    }
}

/// How [`l_value_with`] evaluates `L_s(chi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LMode {
    /// The Dirichlet series grouped by residue class, each class summed to
    /// full precision.
    Series,
    /// The Dirichlet series summed term by term up to a certified cutoff.
    DirectSeries,
    /// The Euler product over primes `p <= p_max`.
    EulerProduct { p_max: u64 },
}

/// `L_s(chi) = sum_n chi(n) n^{-s}`.
pub fn l_value(s: f64, chi: &Character<'_>, policy: &TruncationPolicy) -> Result<ValueWithCert, Error> {
    l_value_with(s, chi, LMode::Series, policy)
}

pub fn l_value_with(
    s: f64,
    chi: &Character<'_>,
    mode: LMode,
    policy: &TruncationPolicy,
) -> Result<ValueWithCert, Error> {
    check_s(s)?;
    match mode {
        LMode::Series => {
            let sums = ResidueSums::new(s, chi.modulus())?;
            Ok(l_from_residues(chi, &sums))
        }
        LMode::DirectSeries => l_direct(s, chi, policy),
        LMode::EulerProduct { p_max } => {
            let sieve = PrimeSieve::new(p_max);
            Ok(l_euler_product(s, chi, &sieve, p_max))
        }
    }
}

/// `sum_{a coprime} chi(a) R_q(a)`.
pub fn l_from_residues(chi: &Character<'_>, sums: &ResidueSums) -> ValueWithCert {
    let q = chi.modulus();
    let mut acc = CompensatedComplex::new();
    let mut bound = 0.0;
    for a in 1..=q {
        if let Some(t) = chi.table().angle_index(chi.index(), a as i64) {
            acc.add(chi.table().root(t) * sums.get(a));
            bound += sums.bound(a);
        }
    }
    ValueWithCert {
        value: acc.value(),
        bound: bound + 8.0 * f64::EPSILON * q as f64 * special::zeta(sums.s()),
        terms_used: q,
    }
}

/// L-values of every character in the table, sharing one set of
/// residue-class sums.
pub fn l_values(s: f64, table: &CharacterTable) -> Result<Vec<ValueWithCert>, Error> {
    let sums = ResidueSums::new(s, table.modulus())?;
    Ok(table.iter().map(|chi| l_from_residues(&chi, &sums)).collect())
}

fn l_direct(s: f64, chi: &Character<'_>, policy: &TruncationPolicy) -> Result<ValueWithCert, Error> {
    let phi = chi.table().len() as f64;
    // principal: N^{1-s}/(s-1); otherwise partial character sums are at
    // most phi/2 in absolute value and Abel summation gives phi (N+1)^{-s}
    let tail = |n: u64| {
        if chi.is_principal() {
            power_tail(s, n)
        } else {
            (phi * libm::pow((n + 1) as f64, -s)).min(power_tail(s, n))
        }
    };
    let guess = if chi.is_principal() {
        libm::pow(policy.tol * (s - 1.0), 1.0 / (1.0 - s))
    } else {
        libm::pow(policy.tol / phi, -1.0 / s)
    };
    if !guess.is_finite() || guess > policy.n_max as f64 * 4.0 {
        return Err(Error::CapExceeded {
            needed: if guess.is_finite() && guess < 1.8e19 { guess as u64 } else { u64::MAX },
            cap: policy.n_max,
        });
    }
    let mut n = (guess as u64).max(1);
    while n > 1 && tail(n - 1) <= policy.tol {
        n -= 1;
    }
    while tail(n) > policy.tol {
        n += 1;
    }
    if n > policy.n_max {
        return Err(Error::CapExceeded {
            needed: n,
            cap: policy.n_max,
        });
    }
    let column_len = chi.modulus();
    let vals: Vec<Complex64> = (1..=column_len).map(|a| chi.eval(a as i64)).collect();
    let mut acc = CompensatedComplex::new();
    for k in (1..=n).rev() {
        let v = vals[((k - 1) % column_len) as usize];
        if v.re != 0.0 || v.im != 0.0 {
            acc.add(v * libm::pow(k as f64, -s));
        }
    }
    Ok(ValueWithCert {
        value: acc.value(),
        bound: tail(n),
        terms_used: n,
    })
}

/// Euler product over `p <= p_max`, `p` not dividing `q`, with the bound
/// `|P| (e^delta - 1)` where
/// `delta = sum_{p > p_max} p^{-s} / (1 - p^{-s}) <= p_max^{1-s} / ((s-1)(1 - p_max^{-s}))`.
pub fn l_euler_product(s: f64, chi: &Character<'_>, sieve: &PrimeSieve, p_max: u64) -> ValueWithCert {
    let q = chi.modulus();
    let mut log_modulus = 0.0;
    let mut arg = 0.0;
    let mut count = 0;
    for &p in sieve.primes_up_to(p_max) {
        if q % p == 0 {
            continue;
        }
        let z = chi.eval(p as i64) * libm::pow(p as f64, -s);
        let w = Complex64::new(1.0 - z.re, -z.im);
        log_modulus -= 0.5 * libm::log1p(-2.0 * z.re + z.norm_sqr());
        arg -= libm::atan2(w.im, w.re);
        count += 1;
    }
    let value = Complex64::from_polar(libm::exp(log_modulus), arg);
    let pm = p_max.max(1) as f64;
    let delta = libm::pow(pm, 1.0 - s) / ((s - 1.0) * (1.0 - libm::pow(pm.max(2.0), -s)));
    ValueWithCert {
        value,
        bound: value.norm() * libm::expm1(delta),
        terms_used: count,
    }
}

/// The confinement potential `H_s(chi) = sum_{p <= p_max, p !| q} log|1 - p^{-s} chi(p)|`.
pub fn potential(s: f64, chi: &Character<'_>, p_max: u64) -> Result<f64, Error> {
    check_s(s)?;
    let sieve = PrimeSieve::new(p_max);
    Ok(potential_with(s, chi, &sieve, p_max))
}

pub fn potential_with(s: f64, chi: &Character<'_>, sieve: &PrimeSieve, p_max: u64) -> f64 {
    let q = chi.modulus();
    let mut acc = special::CompensatedSum::new();
    for &p in sieve.primes_up_to(p_max) {
        if q % p == 0 {
            continue;
        }
        let z = chi.eval(p as i64) * libm::pow(p as f64, -s);
        acc.add(0.5 * libm::log1p(-2.0 * z.re + z.norm_sqr()));
    }
    acc.value()
}

/// What `a_p` is for primes not listed explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoefficientTail {
    /// `a_p = 0`: the product runs over the listed primes only.
    Zero,
    /// `a_p = p^{-s}` for every unlisted prime.
    Power { s: f64 },
    /// `a_p = p^{-s}` for unlisted primes `p <= p_max`, zero beyond.
    PowerUpTo { s: f64, p_max: u64 },
}

/// Euler coefficients `(a_p)` defining `L_a(chi) = prod_p (1 - a_p chi(p))^{-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EulerCoefficients {
    overrides: BTreeMap<u64, f64>,
    tail: CoefficientTail,
}

impl EulerCoefficients {
    pub fn new(overrides: BTreeMap<u64, f64>, tail: CoefficientTail) -> Result<Self, Error> {
        for (&p, &a) in &overrides {
            if !is_prime(p) {
                return Err(invalid(format!("coefficient index {p} is not prime")));
            }
            if !a.is_finite() || libm::fabs(a) >= 1.0 {
                return Err(Error::Divergent { p, value: a });
            }
            if a <= 0.0 {
                return Err(invalid(format!("a_{p} must lie in (0, 1), got {a}")));
            }
        }
        match tail {
            CoefficientTail::Power { s } | CoefficientTail::PowerUpTo { s, .. } => check_s(s)?,
            CoefficientTail::Zero => {}
        }
        Ok(Self { overrides, tail })
    }

    /// `a_p = p^{-s}` for every prime, i.e. the plain L-function.
    pub fn power(s: f64) -> Result<Self, Error> {
        Self::new(BTreeMap::new(), CoefficientTail::Power { s })
    }

    pub fn overrides(&self) -> &BTreeMap<u64, f64> {
        &self.overrides
    }

    pub fn tail(&self) -> CoefficientTail {
        self.tail
    }

    pub fn coefficient(&self, p: u64) -> f64 {
        if let Some(&a) = self.overrides.get(&p) {
            return a;
        }
        match self.tail {
            CoefficientTail::Zero => 0.0,
            CoefficientTail::Power { s } => libm::pow(p as f64, -s),
            CoefficientTail::PowerUpTo { s, p_max } => {
                if p <= p_max {
                    libm::pow(p as f64, -s)
                } else {
                    0.0
                }
            }
        }
    }
}

/// `L_a(chi) = prod_{p !| q} (1 - a_p chi(p))^{-1}`.
///
/// With an infinite `p^{-s}` tail this is `L_s(chi)` times the finitely many
/// correction factors `(1 - p^{-s} chi(p)) / (1 - a_p chi(p))`; otherwise it
/// is a finite product.
pub fn l_a_value(coeffs: &EulerCoefficients, chi: &Character<'_>) -> Result<ValueWithCert, Error> {
    let sums = match coeffs.tail {
        CoefficientTail::Power { s } => Some(ResidueSums::new(s, chi.modulus())?),
        _ => None,
    };
    let sieve = match coeffs.tail {
        CoefficientTail::PowerUpTo { p_max, .. } => Some(PrimeSieve::new(p_max)),
        _ => None,
    };
    Ok(l_a_with(coeffs, chi, sums.as_ref(), sieve.as_ref()))
}

pub(crate) fn l_a_with(
    coeffs: &EulerCoefficients,
    chi: &Character<'_>,
    sums: Option<&ResidueSums>,
    sieve: Option<&PrimeSieve>,
) -> ValueWithCert {
    let q = chi.modulus();
    let factor = |p: u64, a: f64| -> Complex64 {
        Complex64::new(1.0, 0.0) / (Complex64::new(1.0, 0.0) - chi.eval(p as i64) * a)
    };
    match coeffs.tail {
        CoefficientTail::Power { s } => {
            let base = l_from_residues(chi, sums.expect("residue sums for power tail"));
            let mut corr = Complex64::new(1.0, 0.0);
            for (&p, &a) in &coeffs.overrides {
                if q % p == 0 {
                    continue;
                }
                let z = chi.eval(p as i64);
                corr *= (Complex64::new(1.0, 0.0) - z * libm::pow(p as f64, -s)) * factor(p, a);
            }
            ValueWithCert {
                value: base.value * corr,
                bound: base.bound * corr.norm(),
                terms_used: base.terms_used,
            }
        }
        CoefficientTail::Zero => {
            let mut value = Complex64::new(1.0, 0.0);
            for (&p, &a) in &coeffs.overrides {
                if q % p != 0 {
                    value *= factor(p, a);
                }
            }
            ValueWithCert {
                value,
                bound: 4.0 * f64::EPSILON * coeffs.overrides.len() as f64 * value.norm(),
                terms_used: coeffs.overrides.len() as u64,
            }
        }
        CoefficientTail::PowerUpTo { p_max, .. } => {
            let sieve = sieve.expect("prime sieve for truncated tail");
            let mut primes: Vec<u64> = sieve.primes_up_to(p_max).to_vec();
            primes.extend(coeffs.overrides.keys().filter(|&&p| p > p_max));
            let mut value = Complex64::new(1.0, 0.0);
            for &p in &primes {
                if q % p != 0 {
                    value *= factor(p, coeffs.coefficient(p));
                }
            }
            ValueWithCert {
                value,
                bound: 4.0 * f64::EPSILON * primes.len() as f64 * value.norm(),
                terms_used: primes.len() as u64,
            }
        }
    }
}

/// Compares the integral representation
/// `Li_s(z) = (1 / Gamma(s)) int_0^inf z e^{-t} / (1 - z e^{-t}) t^{s-1} dt`
/// against the series value and returns the absolute residual.
///
/// `quadrature_nodes` caps the number of integrand evaluations.
pub fn polylog_integral_check(s: f64, theta: f64, quadrature_nodes: usize) -> Result<f64, Error> {
    check_s(s)?;
    let theta = frac(theta);
    if theta == 0.0 {
        return Err(invalid("theta = 0 is handled by the series route only"));
    }
    let (sn, cs) = libm::sincos(2.0 * PI * theta);
    let z = Complex64::new(cs, sn);
    let integrand = |t: f64| -> Complex64 {
        if t == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let w = z * libm::exp(-t);
        w / (Complex64::new(1.0, 0.0) - w) * libm::pow(t, s - 1.0)
    };
    // |integrand| <= t^{s-1} e^{-t} / (1 - e^{-t}) decays fast; cut at T
    // where the neglected mass is far below the target
    let cut = 80.0 + 4.0 * s;
    let (mut total, _) = integrate(integrand, 0.0, 1.0, 1e-12, quadrature_nodes)?;
    let (rest, _) = integrate(integrand, 1.0, cut, 1e-12, quadrature_nodes)?;
    total += rest;
    let value = total / special::gamma(s);
    let reference = series_reference(s, theta)?;
    Ok((value - reference).norm())
}

fn series_reference(s: f64, theta: f64) -> Result<Complex64, Error> {
    // rational theta with a small denominator goes through the residue
    // class grid; anything else through the streaming series
    for q in 1..=64u64 {
        let j = theta * q as f64;
        if libm::fabs(j - libm::round(j)) < 1e-12 {
            let sums = ResidueSums::new(s, q)?;
            return Ok(PolylogGrid::new(&sums, false).at(libm::round(j) as u64));
        }
    }
    Ok(polylog(s, theta, &TruncationPolicy::default())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char_group::CharacterTable;

    fn zeta2() -> f64 {
        PI * PI / 6.0
    }

    #[test]
    fn polylog_at_one_is_zeta() {
        let v = polylog(2.0, 0.0, &TruncationPolicy::default()).unwrap();
        assert!((v.value.re - zeta2()).abs() < 1e-14);
        assert!(v.value.im == 0.0);
    }

    #[test]
    fn polylog_at_minus_one_is_alternating_zeta() {
        let v = polylog(2.0, 0.5, &TruncationPolicy::default()).unwrap();
        assert!((v.value.re + PI * PI / 12.0).abs() <= v.bound + 1e-12);
        assert!(v.value.im.abs() < 1e-9);
    }

    #[test]
    fn polylog_third_of_a_turn_against_direct_sum() {
        // oracle: sum_{n <= 10^7} e^{2 pi i n / 3} / n^2, values cycle with period 3
        let mut re = 0.0;
        let mut im = 0.0;
        let w = [(1.0, 0.0), (-0.5, 3f64.sqrt() / 2.0), (-0.5, -(3f64.sqrt()) / 2.0)];
        for n in (1..=10_000_000u64).rev() {
            let (c, s) = w[(n % 3) as usize];
            let t = 1.0 / (n as f64 * n as f64);
            re += c * t;
            im += s * t;
        }
        let v = polylog(2.0, 1.0 / 3.0, &TruncationPolicy::default()).unwrap();
        assert!((v.value.re - re).abs() < 1e-6 && (v.value.im - im).abs() < 1e-6);
        let grid = PolylogGrid::new(&ResidueSums::new(2.0, 3).unwrap(), false);
        assert!((grid.at(1) - v.value).norm() < 1e-9);
    }

    #[test]
    fn polylog_cap_exceeded() {
        let tight = TruncationPolicy::new(1e-12, 1000).unwrap();
        assert!(matches!(
            polylog(1.5, 0.25, &tight),
            Err(Error::CapExceeded { cap: 1000, .. })
        ));
    }

    #[test]
    fn tail_bound_is_monotone_in_n() {
        let sin = (PI * 0.3f64).sin();
        let mut prev = f64::INFINITY;
        for n in [1u64, 2, 5, 10, 100, 1000, 10_000] {
            let b = abel_tail(1.7, n, sin);
            assert!(b <= prev);
            prev = b;
        }
    }

    #[test]
    fn policy_validation() {
        assert!(TruncationPolicy::new(0.0, 100).is_err());
        assert!(TruncationPolicy::new(1e-8, 9).is_err());
        assert!(TruncationPolicy::new(1e-8, 10).is_ok());
    }

    #[test]
    fn principal_mod_5_removes_one_euler_factor() {
        let t = CharacterTable::new(5).unwrap();
        let v = l_value(2.0, &t.principal(), &TruncationPolicy::default()).unwrap();
        let expect = zeta2() * 24.0 / 25.0;
        assert!((v.value.re - expect).abs() < 1e-13);
        assert!((v.value.re - 1.579_136_7).abs() < 1e-7);
    }

    #[test]
    fn quadratic_mod_5_against_direct_sum() {
        // oracle: sum_{n <= 10^7} chi(n)/n^2 with chi = (1, -1, -1, 1, 0)
        let pattern = [0.0, 1.0, -1.0, -1.0, 1.0];
        let mut acc = 0.0;
        for n in (1..=10_000_000u64).rev() {
            acc += pattern[(n % 5) as usize] / (n as f64 * n as f64);
        }
        let t = CharacterTable::new(5).unwrap();
        let quad = t.iter().find(|c| c.order() == 2).unwrap();
        let v = l_value(2.0, &quad, &TruncationPolicy::default()).unwrap();
        assert!((v.value.re - acc).abs() < 1e-12, "{} vs {acc}", v.value.re);
        assert!(v.value.im.abs() < 1e-15);
        // closed form 4 pi^2 / (25 sqrt 5)
        assert!((v.value.re - 4.0 * PI * PI / (25.0 * 5f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn principal_mod_1_is_zeta3() {
        let t = CharacterTable::new(1).unwrap();
        let v = l_value(3.0, &t.principal(), &TruncationPolicy::default()).unwrap();
        assert!((v.value.re - 1.202_056_903_159_594).abs() < 1e-14);
    }

    #[test]
    fn direct_series_and_cap() {
        let t = CharacterTable::new(7).unwrap();
        let policy = TruncationPolicy::new(1e-9, 100_000_000).unwrap();
        for chi in t.iter().skip(1) {
            let d = l_value_with(2.5, &chi, LMode::DirectSeries, &policy).unwrap();
            let r = l_value(2.5, &chi, &policy).unwrap();
            assert!((d.value - r.value).norm() <= d.bound + r.bound + 1e-14);
        }
        let small = TruncationPolicy::new(1e-10, 1000).unwrap();
        assert!(matches!(
            l_value_with(2.0, &t.principal(), LMode::DirectSeries, &small),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn potential_examples() {
        let t1 = CharacterTable::new(1).unwrap();
        let h = potential(2.0, &t1.principal(), 100_000).unwrap();
        assert!((h + zeta2().ln()).abs() < 1e-5);
        assert!((h + 0.4977).abs() < 1e-4);
        let t5 = CharacterTable::new(5).unwrap();
        for chi in t5.iter() {
            assert_eq!(potential(2.0, &chi, 0).unwrap(), 0.0);
        }
        let quad = t5.iter().find(|c| c.order() == 2).unwrap();
        let h = potential(2.0, &quad, 100_000).unwrap();
        let l = l_value(2.0, &quad, &TruncationPolicy::default()).unwrap();
        assert!(((-2.0 * h).exp() - l.value.norm_sqr()).abs() < 1e-6);
    }

    #[test]
    fn l_a_examples() {
        let t3 = CharacterTable::new(3).unwrap();
        let mut one = BTreeMap::new();
        one.insert(2, 0.5);
        let c = EulerCoefficients::new(one, CoefficientTail::Zero).unwrap();
        let v = l_a_value(&c, &t3.principal()).unwrap();
        assert!((v.value.re - 2.0).abs() < 1e-15);

        let empty = EulerCoefficients::new(BTreeMap::new(), CoefficientTail::Zero).unwrap();
        assert_eq!(l_a_value(&empty, &t3.principal()).unwrap().value, Complex64::new(1.0, 0.0));

        let t11 = CharacterTable::new(11).unwrap();
        let p = EulerCoefficients::power(2.0).unwrap();
        for chi in t11.iter() {
            let a = l_a_value(&p, &chi).unwrap();
            let l = l_value(2.0, &chi, &TruncationPolicy::default()).unwrap();
            assert!((a.value - l.value).norm() <= a.bound + l.bound);
        }
    }

    #[test]
    fn l_a_rejects_divergent_coefficients() {
        let mut bad = BTreeMap::new();
        bad.insert(3, 1.0);
        assert!(matches!(
            EulerCoefficients::new(bad, CoefficientTail::Zero),
            Err(Error::Divergent { p: 3, .. })
        ));
        let mut composite = BTreeMap::new();
        composite.insert(4, 0.1);
        assert!(EulerCoefficients::new(composite, CoefficientTail::Zero).is_err());
    }

    #[test]
    fn integral_representation_examples() {
        assert!(polylog_integral_check(2.0, 0.5, 20_000).unwrap() < 1e-6);
        assert!(polylog_integral_check(3.0, 0.25, 20_000).unwrap() < 1e-6);
        assert!(matches!(
            polylog_integral_check(2.0, 1.0 / 3.0, 16),
            Err(Error::QuadratureNonConvergence { .. })
        ));
        assert!(polylog_integral_check(2.0, 0.0, 1000).is_err());
    }
}
