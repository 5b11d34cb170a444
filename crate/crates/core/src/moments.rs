//! Mixed moments `E[prod_j chi(m_j)^{k_j} conj(chi(m_j))^{l_j}]` of character
//! evaluations, computed by brute force over the table, as a Riemann sum of
//! polylogarithms, and as a congruence-restricted double series, together
//! with the limiting values and explicit convergence bounds.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::arith::{factorize, gcd, is_prime, mod_pow, prime_divisors};
use crate::lfunction::special::{shifted_zeta, zeta, CompensatedComplex, CompensatedSum};
use crate::lfunction::{check_s, EulerCoefficients, PolylogGrid, ResidueSums, ValueWithCert};
use crate::measures::CharacterMeasure;
use crate::Error;

/// Which integers enter the Dirichlet series behind the Riemann and
/// congruence methods.
///
/// `Coprime` keeps only `n` coprime to `q`, and a dilation `n -> n m^k` is
/// kept only while `n m^k` stays coprime to `q`; this is the series whose
/// moments coincide with the brute-force character average. `Unrestricted`
/// sums over all `n >= 1`, i.e. uses `f_s = Li_s(e(.))` as is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Support {
    #[default]
    Coprime,
    Unrestricted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMethod {
    Bruteforce,
    Riemann,
    CongruenceSeries,
    Limit,
}

impl MomentMethod {
    pub fn name(self) -> &'static str {
        match self {
            MomentMethod::Bruteforce => "bruteforce",
            MomentMethod::Riemann => "riemann",
            MomentMethod::CongruenceSeries => "congruence-series",
            MomentMethod::Limit => "limit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentResult {
    pub value: Complex64,
    pub method: MomentMethod,
    pub error_budget: f64,
}

/// A (joint) moment: bases `m_j` with powers `k_j` on `chi(m_j)` and `l_j`
/// on its conjugate.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSpec {
    pub q: u64,
    pub s: Option<f64>,
    pub bases: Vec<u64>,
    pub ks: Vec<u32>,
    pub ls: Vec<u32>,
}

impl MomentSpec {
    pub fn new(q: u64, s: Option<f64>, bases: Vec<u64>, ks: Vec<u32>, ls: Vec<u32>) -> Result<Self, Error> {
        let spec = Self { q, s, bases, ks, ls };
        spec.validate()?;
        Ok(spec)
    }

    pub fn single(q: u64, s: Option<f64>, m: u64, k: u32, l: u32) -> Result<Self, Error> {
        Self::new(q, s, vec![m], vec![k], vec![l])
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.q == 0 {
            return Err(Error::InvalidModulus(0));
        }
        if let Some(s) = self.s {
            check_s(s)?;
        }
        if self.bases.is_empty() {
            return Err(Error::InvalidSpec("at least one base is required".into()));
        }
        if self.ks.len() != self.bases.len() || self.ls.len() != self.bases.len() {
            return Err(Error::InvalidSpec(format!(
                "{} bases but {} k-exponents and {} l-exponents",
                self.bases.len(),
                self.ks.len(),
                self.ls.len()
            )));
        }
        if self.bases.contains(&0) {
            return Err(Error::InvalidSpec("bases must be >= 1".into()));
        }
        Ok(())
    }
}

/// Brute-force weighted sum over the table.
///
/// The budget covers the certified error of the weights (`2 phi e / Z` in
/// `l^1`) plus rounding.
pub fn exact_moment(measure: &CharacterMeasure<'_>, spec: &MomentSpec) -> Result<MomentResult, Error> {
    spec.validate()?;
    let table = measure.table();
    if spec.q != table.modulus() {
        return Err(Error::InvalidSpec(format!(
            "spec modulus {} does not match the measure's modulus {}",
            spec.q,
            table.modulus()
        )));
    }
    let e = table.exponent();
    let mut angle = vec![0u64; table.len()];
    for ((&m, &k), &l) in spec.bases.iter().zip(&spec.ks).zip(&spec.ls) {
        if k == 0 && l == 0 {
            continue;
        }
        let Some(col) = table.column(m as i64) else {
            return Ok(MomentResult {
                value: Complex64::new(0.0, 0.0),
                method: MomentMethod::Bruteforce,
                error_budget: 0.0,
            });
        };
        let shift = (k as i64 - l as i64).rem_euclid(e as i64) as u128;
        for (a, &c) in angle.iter_mut().zip(&col) {
            *a = ((*a as u128 + c as u128 * shift) % e as u128) as u64;
        }
    }
    let mut acc = CompensatedComplex::new();
    for (w, &t) in measure.weights().iter().zip(&angle) {
        acc.add(table.root(t) * *w);
    }
    Ok(MomentResult {
        value: acc.value(),
        method: MomentMethod::Bruteforce,
        error_budget: measure.normalized_error() + 4.0 * f64::EPSILON,
    })
}

/// Numerator and denominator of the Riemann-sum moment, each with an error
/// bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannParts {
    pub numerator: Complex64,
    pub denominator: f64,
    pub numerator_error: f64,
    pub denominator_error: f64,
}

impl RiemannParts {
    pub fn ratio(&self) -> MomentResult {
        let d = self.denominator;
        let r = self.numerator / d;
        let budget = (self.numerator_error + r.norm() * self.denominator_error)
            / (d - self.denominator_error);
        MomentResult {
            value: r,
            method: MomentMethod::Riemann,
            error_budget: budget,
        }
    }
}

/// `f(j / q)` on the grid `j = 1..=q` for one `(s, q, support)`, reusable
/// across bases and exponents.
#[derive(Debug, Clone)]
pub struct RiemannSum {
    grid: PolylogGrid,
    support: Support,
    s: f64,
}

impl RiemannSum {
    pub fn new(s: f64, q: u64, support: Support) -> Result<Self, Error> {
        let sums = ResidueSums::new(s, q)?;
        Ok(Self {
            grid: PolylogGrid::new(&sums, support == Support::Coprime),
            support,
            s,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.grid.modulus()
    }

    /// `(1/q) sum_j f(m^k j / q) conj(f(m^l j / q))` and the same at
    /// `k = l = 0`.
    pub fn parts(&self, m: u64, k: u32, l: u32) -> RiemannParts {
        let q = self.modulus();
        let g = self.grid.bound();
        let zs = zeta(self.s);
        let per_term = 2.0 * zs * g + g * g;
        let rounding = 8.0 * f64::EPSILON * zs * zs;
        let mut den = CompensatedSum::new();
        for j in 1..=q {
            den.add(self.grid.at(j).norm_sqr());
        }
        let denominator = den.value() / q as f64;
        let dead = |e: u32| e > 0 && self.support == Support::Coprime && gcd(m, q) > 1;
        let numerator = if dead(k) || dead(l) {
            Complex64::new(0.0, 0.0)
        } else {
            let mk = mod_pow(m, k as u64, q) as u128;
            let ml = mod_pow(m, l as u64, q) as u128;
            let mut acc = CompensatedComplex::new();
            for j in 1..=q {
                let a = self.grid.at(((mk * j as u128) % q as u128) as u64);
                let b = self.grid.at(((ml * j as u128) % q as u128) as u64);
                acc.add(a * b.conj());
            }
            acc.value() / q as f64
        };
        RiemannParts {
            numerator,
            denominator,
            numerator_error: per_term + rounding,
            denominator_error: per_term + rounding,
        }
    }

    pub fn moment(&self, m: u64, k: u32, l: u32) -> MomentResult {
        self.parts(m, k, l).ratio()
    }
}

/// The moment as a ratio of Riemann sums of `f` over `mu_q`, with `f` the
/// polylogarithm `Li_s(e(.))` (or its coprime-support version).
pub fn riemann_moment(s: f64, q: u64, m: u64, k: u32, l: u32, support: Support) -> Result<MomentResult, Error> {
    check_m(m)?;
    Ok(RiemannSum::new(s, q, support)?.moment(m, k, l))
}

fn check_m(m: u64) -> Result<(), Error> {
    if m == 0 {
        return Err(Error::InvalidSpec("base m must be >= 1".into()));
    }
    Ok(())
}

/// `sum_{n1, n2 <= N} (n1 n2)^{-s} [n1 m^k = n2 m^l mod q]` divided by the
/// same sum at `k = l = 0`.
///
/// Runs in `O(N + q)` by accumulating `sum n^{-s}` per residue of `n m^k`.
/// With `T = sum_{n > N} n^{-s}`, the pairs left out weigh at most
/// `tau = T^2 + 2 zeta(s) T` in both numerator and denominator, so the ratio
/// error is at most `tau (1 + |ratio|) / D_N`.
pub fn congruence_series_moment(
    s: f64,
    q: u64,
    m: u64,
    k: u32,
    l: u32,
    n_max: u64,
    support: Support,
) -> Result<MomentResult, Error> {
    check_s(s)?;
    check_m(m)?;
    if q == 0 {
        return Err(Error::InvalidModulus(0));
    }
    if n_max == 0 {
        return Err(crate::invalid("n_max must be positive"));
    }
    let classes = |mult: u64, dead: bool| -> Vec<f64> {
        let mut acc = vec![CompensatedSum::new(); q as usize];
        if dead {
            return vec![0.0; q as usize];
        }
        for n in (1..=n_max).rev() {
            if support == Support::Coprime && gcd(n % q, q) != 1 && q > 1 {
                continue;
            }
            let r = ((n as u128 * mult as u128) % q as u128) as usize;
            acc[r].add(libm::pow(n as f64, -s));
        }
        acc.iter().map(|c| c.value()).collect()
    };
    let dead = |e: u32| e > 0 && support == Support::Coprime && gcd(m, q) > 1;
    let base = classes(1 % q, false);
    let ak = if k == 0 { base.clone() } else { classes(mod_pow(m, k as u64, q), dead(k)) };
    let al = if l == 0 { base.clone() } else { classes(mod_pow(m, l as u64, q), dead(l)) };
    let pair = |x: &[f64], y: &[f64]| {
        let mut acc = CompensatedSum::new();
        for (a, b) in x.iter().zip(y) {
            acc.add(a * b);
        }
        acc.value()
    };
    let num = pair(&ak, &al);
    let den = pair(&base, &base);
    let t = libm::pow(n_max as f64, 1.0 - s) / (s - 1.0);
    let tau = t * t + 2.0 * zeta(s) * t;
    let ratio = num / den;
    let rounding = 16.0 * f64::EPSILON * (1.0 + libm::fabs(ratio));
    Ok(MomentResult {
        value: Complex64::new(ratio, 0.0),
        method: MomentMethod::CongruenceSeries,
        error_budget: tau * (1.0 + libm::fabs(ratio)) / den + rounding,
    })
}

/// `prod_j m_j^{-s |k_j - l_j|}`: the moment of
/// `prod_j exp(i (k_j - l_j) s log(m_j) C_j)` with independent standard
/// Cauchy `C_j`.
///
/// Several bases must be distinct primes; a single base may be any
/// `m >= 1`.
pub fn limit_moment(s: f64, bases: &[u64], ks: &[u32], ls: &[u32]) -> Result<MomentResult, Error> {
    check_s(s)?;
    if bases.is_empty() || ks.len() != bases.len() || ls.len() != bases.len() {
        return Err(Error::InvalidSpec("bases, ks and ls must be non-empty and of equal length".into()));
    }
    if bases.contains(&0) {
        return Err(Error::InvalidSpec("bases must be >= 1".into()));
    }
    if bases.len() > 1 {
        for (i, &p) in bases.iter().enumerate() {
            if !is_prime(p) {
                return Err(Error::InvalidSpec(format!("joint bases must be prime, {p} is not")));
            }
            if bases[..i].contains(&p) {
                return Err(Error::InvalidSpec(format!("base {p} is repeated")));
            }
        }
    }
    let mut log = 0.0;
    for ((&m, &k), &l) in bases.iter().zip(ks).zip(ls) {
        log -= s * (k as f64 - l as f64).abs() * libm::log(m as f64);
    }
    Ok(MomentResult {
        value: Complex64::new(libm::exp(log), 0.0),
        method: MomentMethod::Limit,
        error_budget: 0.0,
    })
}

/// Limit of a joint moment under the `a`-measure: each `chi(p)` becomes an
/// independent `e(U)` tilted by `|1 - a_p e(U)|^{-2}`, whose `j`-th moment is
/// `a_p^{|j|}`. Bases are factored, so they need not be prime or distinct.
pub fn a_limit_moment(
    coeffs: &EulerCoefficients,
    bases: &[u64],
    ks: &[u32],
    ls: &[u32],
) -> Result<MomentResult, Error> {
    if bases.is_empty() || ks.len() != bases.len() || ls.len() != bases.len() {
        return Err(Error::InvalidSpec("bases, ks and ls must be non-empty and of equal length".into()));
    }
    if bases.contains(&0) {
        return Err(Error::InvalidSpec("bases must be >= 1".into()));
    }
    let mut net: BTreeMap<u64, i64> = BTreeMap::new();
    for ((&m, &k), &l) in bases.iter().zip(ks).zip(ls) {
        for (p, e) in factorize(m) {
            *net.entry(p).or_insert(0) += e as i64 * (k as i64 - l as i64);
        }
    }
    let mut value = 1.0;
    for (p, j) in net {
        value *= libm::pow(coeffs.coefficient(p), j.unsigned_abs() as f64);
    }
    Ok(MomentResult {
        value: Complex64::new(value, 0.0),
        method: MomentMethod::Limit,
        error_budget: 0.0,
    })
}

/// `(a + L b) / zeta(2s)` with `a = (m^{sk} + m^{sl}) zeta(s)^2 / q^s`,
/// `b = 2 zeta(s)^2 / q^s` and `L = m^{-s |k - l|}`.
///
/// For [`Support::Unrestricted`] this bounds `|riemann - limit|` via the two
/// one-sided estimates on numerator and denominator. For
/// [`Support::Coprime`] the diagonal contributes `L zeta(2s) c_q` with
/// `c_q = prod_{p | q} (1 - p^{-2s})`, the off-diagonal excess is dominated
/// by the unrestricted one, and the bound is divided by `c_q`; it is
/// infinite when `gcd(m, q) > 1` and `k + l > 0` (the moment is then 0).
pub fn error_bound(s: f64, q: u64, m: u64, k: u32, l: u32, support: Support) -> Result<f64, Error> {
    check_s(s)?;
    check_m(m)?;
    if q == 0 {
        return Err(Error::InvalidModulus(0));
    }
    let (a, b) = sandwich_widths(s, q, m, k, l);
    let lim = libm::pow(m as f64, -s * (k as f64 - l as f64).abs());
    let bound = (a + lim * b) / zeta(2.0 * s);
    match support {
        Support::Unrestricted => Ok(bound),
        Support::Coprime => {
            if gcd(m, q) > 1 && k + l > 0 {
                return Ok(f64::INFINITY);
            }
            Ok(bound / coprime_density(s, q))
        }
    }
}

/// `prod_{p | q} (1 - p^{-2s})`.
pub fn coprime_density(s: f64, q: u64) -> f64 {
    prime_divisors(q)
        .into_iter()
        .map(|p| 1.0 - libm::pow(p as f64, -2.0 * s))
        .product()
}

/// Upper widths `(a, b)` of the numerator and denominator sandwiches.
pub fn sandwich_widths(s: f64, q: u64, m: u64, k: u32, l: u32) -> (f64, f64) {
    let z2 = zeta(s) * zeta(s);
    let qs = libm::pow(q as f64, s);
    let mf = m as f64;
    let a = (libm::pow(mf, s * k as f64) + libm::pow(mf, s * l as f64)) * z2 / qs;
    let b = 2.0 * z2 / qs;
    (a, b)
}

/// Slack in the two one-sided estimates for the unrestricted Riemann sums:
/// `num - zeta(2s) L` and `den - zeta(2s)`, which should lie in `[0, a]` and
/// `[0, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sandwich {
    pub numerator_excess: f64,
    pub denominator_excess: f64,
    pub a: f64,
    pub b: f64,
    /// Numerical error on both excesses.
    pub error: f64,
}

impl Sandwich {
    /// Smallest margin over the four inequalities; non-negative when all
    /// hold exactly.
    pub fn slack(&self) -> f64 {
        self.numerator_excess
            .min(self.a - self.numerator_excess)
            .min(self.denominator_excess)
            .min(self.b - self.denominator_excess)
    }
}

pub fn sandwich(s: f64, q: u64, m: u64, k: u32, l: u32) -> Result<Sandwich, Error> {
    check_m(m)?;
    let rs = RiemannSum::new(s, q, Support::Unrestricted)?;
    Ok(sandwich_on(&rs, m, k, l))
}

pub fn sandwich_on(rs: &RiemannSum, m: u64, k: u32, l: u32) -> Sandwich {
    let s = rs.s;
    let q = rs.modulus();
    let parts = rs.parts(m, k, l);
    let z2s = zeta(2.0 * s);
    let lim = libm::pow(m as f64, -s * (k as f64 - l as f64).abs());
    let (a, b) = sandwich_widths(s, q, m, k, l);
    Sandwich {
        numerator_excess: parts.numerator.re - z2s * lim,
        denominator_excess: parts.denominator - z2s,
        a,
        b,
        error: parts.numerator_error.max(parts.denominator_error),
    }
}

/// `zeta_q(s) = zeta(2s) + 2 sum_{r, n >= 1} (n (n + r q))^{-s}`.
///
/// The inner sum over `r` is a shifted zeta value evaluated to full
/// precision; the outer sum runs to `N <= n_max` and its tail is at most
/// `N^{1-2s}/(2s-1) + N^{2-2s}/((2s-2) q (s-1))` before doubling.
pub fn zeta_q(s: f64, q: u64, n_max: u64) -> Result<ValueWithCert, Error> {
    check_s(s)?;
    if q == 0 {
        return Err(Error::InvalidModulus(0));
    }
    if n_max == 0 {
        return Err(crate::invalid("n_max must be positive"));
    }
    let qf = q as f64;
    let tail = |n: f64| {
        libm::pow(n, 1.0 - 2.0 * s) / (2.0 * s - 1.0)
            + libm::pow(n, 2.0 - 2.0 * s) / ((2.0 * s - 2.0) * qf * (s - 1.0))
    };
    let mut n = 1u64;
    while n < n_max && 2.0 * tail(n as f64) > 1e-15 {
        n = (n * 2).min(n_max);
    }
    let (z2s, b2s) = shifted_zeta(2.0 * s, 1.0, 1.0);
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for i in (1..=n).rev() {
        let x = i as f64;
        let (h, hb) = shifted_zeta(s, x + qf, qf);
        let w = libm::pow(x, -s);
        acc.add(w * h);
        err += w * hb;
    }
    let value = z2s + 2.0 * acc.value();
    Ok(ValueWithCert {
        value: Complex64::new(value, 0.0),
        bound: b2s + 2.0 * (err + tail(n as f64)) + 8.0 * f64::EPSILON * value,
        terms_used: n,
    })
}

/// Moment under the uniform measure:
/// `1{prod m_j^{k_j} = prod m_j^{l_j} mod q}` when every base that carries a
/// nonzero power is a unit mod `q`, and `0` otherwise (then `chi(m_j) = 0`
/// for every character).
pub fn uniform_moment(q: u64, bases: &[u64], ks: &[u32], ls: &[u32]) -> Result<MomentResult, Error> {
    let spec = MomentSpec::new(q, None, bases.to_vec(), ks.to_vec(), ls.to_vec())?;
    let mut left = 1 % q;
    let mut right = 1 % q;
    let mut zero = false;
    for ((&m, &k), &l) in spec.bases.iter().zip(&spec.ks).zip(&spec.ls) {
        if k + l > 0 && gcd(m % q, q) != 1 && q > 1 {
            zero = true;
        }
        left = crate::arith::mod_mul(left, mod_pow(m, k as u64, q), q);
        right = crate::arith::mod_mul(right, mod_pow(m, l as u64, q), q);
    }
    let v = if !zero && left == right { 1.0 } else { 0.0 };
    Ok(MomentResult {
        value: Complex64::new(v, 0.0),
        method: MomentMethod::Limit,
        error_budget: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char_group::CharacterTable;
    use crate::measures::{l_measure, uniform_measure};

    fn close(a: Complex64, b: f64, tol: f64) -> bool {
        (a.re - b).abs() <= tol && a.im.abs() <= tol
    }

    #[test]
    fn trivial_moments() {
        let t = CharacterTable::new(12).unwrap();
        let m = l_measure(&t, 2.0).unwrap();
        for (k, l) in [(0, 0), (3, 1), (2, 5)] {
            let r = exact_moment(&m, &MomentSpec::single(12, Some(2.0), 1, k, l).unwrap()).unwrap();
            assert!(close(r.value, 1.0, 1e-14));
        }
        let t7 = CharacterTable::new(7).unwrap();
        let u = uniform_measure(&t7);
        let r = exact_moment(&u, &MomentSpec::single(7, None, 2, 1, 0).unwrap()).unwrap();
        assert!(close(r.value, 0.0, 1e-15));
        assert_eq!(riemann_moment(2.0, 5, 2, 0, 0, Support::Coprime).unwrap().value.re, 1.0);
    }

    #[test]
    fn mod_5_first_moment_against_series_oracle() {
        // oracle: direct sums to 10^6 for each character
        let t = CharacterTable::new(5).unwrap();
        let mut num = Complex64::new(0.0, 0.0);
        let mut z = 0.0;
        for chi in t.iter() {
            let mut acc = Complex64::new(0.0, 0.0);
            for n in (1..=1_000_000i64).rev() {
                acc += chi.eval(n) / (n as f64).powi(2);
            }
            if chi.is_principal() {
                acc += 0.8 / 1_000_000.5;
            }
            num += acc.norm_sqr() * chi.eval(2);
            z += acc.norm_sqr();
        }
        let oracle = num / z;
        let m = l_measure(&t, 2.0).unwrap();
        let spec = MomentSpec::single(5, Some(2.0), 2, 1, 0).unwrap();
        let e = exact_moment(&m, &spec).unwrap();
        assert!((e.value - oracle).norm() < 1e-9);
        assert!(e.value.im.abs() < 1e-12);
        let r = riemann_moment(2.0, 5, 2, 1, 0, Support::Coprime).unwrap();
        assert!((r.value - e.value).norm() < 1e-8);
        assert!((e.value.re - 0.409_381_057_744_068_5).abs() < 1e-12);
    }

    #[test]
    fn unrestricted_riemann_differs_from_character_average() {
        let r = riemann_moment(2.0, 5, 2, 1, 0, Support::Unrestricted).unwrap();
        let c = riemann_moment(2.0, 5, 2, 1, 0, Support::Coprime).unwrap();
        assert!((r.value - c.value).norm() > 1e-3);
    }

    #[test]
    fn congruence_series_agrees() {
        let r = riemann_moment(2.0, 5, 2, 1, 0, Support::Coprime).unwrap();
        let c = congruence_series_moment(2.0, 5, 2, 1, 0, 10_000, Support::Coprime).unwrap();
        assert!((r.value - c.value).norm() <= r.error_budget + c.error_budget);
        let t = CharacterTable::new(7).unwrap();
        let m = l_measure(&t, 3.0).unwrap();
        let e = exact_moment(&m, &MomentSpec::single(7, Some(3.0), 3, 2, 1).unwrap()).unwrap();
        let c = congruence_series_moment(3.0, 7, 3, 2, 1, 10_000, Support::Coprime).unwrap();
        assert!((e.value - c.value).norm() <= e.error_budget + c.error_budget);
        for q in [1u64, 4, 9] {
            let c = congruence_series_moment(2.0, q, 5, 3, 3, 1000, Support::Coprime).unwrap();
            assert!(close(c.value, 1.0, c.error_budget));
        }
    }

    #[test]
    fn limit_values() {
        assert!(close(limit_moment(2.0, &[2], &[1], &[0]).unwrap().value, 0.25, 1e-16));
        let j = limit_moment(2.0, &[2, 3], &[1, 1], &[0, 0]).unwrap();
        assert!(close(j.value, 1.0 / 36.0, 1e-16));
        assert!(close(limit_moment(3.0, &[7], &[4], &[4]).unwrap().value, 1.0, 0.0));
        let mixed = limit_moment(2.0, &[2, 3], &[2, 0], &[1, 3]).unwrap().value.re;
        let a = limit_moment(2.0, &[2], &[2], &[1]).unwrap().value.re;
        let b = limit_moment(2.0, &[3], &[0], &[3]).unwrap().value.re;
        assert!((mixed - a * b).abs() < 1e-16);
        assert!(matches!(limit_moment(2.0, &[2, 4], &[1, 1], &[0, 0]), Err(Error::InvalidSpec(_))));
        assert!(matches!(limit_moment(2.0, &[3, 3], &[1, 1], &[0, 0]), Err(Error::InvalidSpec(_))));
        assert!(limit_moment(2.0, &[6], &[1], &[0]).is_ok());
        let power = EulerCoefficients::power(2.0).unwrap();
        for (b, k, l) in [(vec![2, 3], vec![2, 0], vec![1, 3]), (vec![6], vec![1], vec![0]), (vec![5], vec![2], vec![2])] {
            let a = a_limit_moment(&power, &b, &k, &l).unwrap().value.re;
            assert!((a - limit_moment(2.0, &b, &k, &l).unwrap().value.re).abs() < 1e-15);
        }
        // chi(4) conj chi(2) = chi(2)
        let twice = a_limit_moment(&power, &[4, 2], &[1, 0], &[0, 1]).unwrap().value.re;
        assert!((twice - 0.25).abs() < 1e-16);
    }

    #[test]
    fn error_bound_examples() {
        let z2 = zeta(2.0).powi(2);
        let expect = (5.0 * z2 + 0.25 * 2.0 * z2) / 1e4 / zeta(4.0);
        let b = error_bound(2.0, 100, 2, 1, 0, Support::Unrestricted).unwrap();
        assert!((b - expect).abs() < 1e-15);
        assert!((b - 1.375e-3).abs() < 1e-5, "{b}");
        let mut last = f64::INFINITY;
        for q in [10u64, 50, 100, 1000, 10_000] {
            let b = error_bound(2.0, q, 2, 1, 0, Support::Unrestricted).unwrap();
            assert!(b < last);
            last = b;
        }
        let bound = error_bound(2.0, 10, 3, 2, 2, Support::Unrestricted).unwrap();
        let r = riemann_moment(2.0, 10, 3, 2, 2, Support::Unrestricted).unwrap();
        assert!((r.value.re - 1.0).abs() <= bound);
        assert!(error_bound(2.0, 10, 2, 1, 0, Support::Coprime).unwrap().is_infinite());
    }

    #[test]
    fn zeta_q_examples() {
        let z4 = zeta(4.0);
        let v = zeta_q(2.0, 1000, 1_000_000).unwrap();
        assert!(v.value.re >= z4);
        assert!(v.value.re - z4 <= 2.0 * zeta(2.0).powi(2) / 1e6);
        for q in [1u64, 2, 5, 17] {
            assert!(zeta_q(1.5, q, 100_000).unwrap().value.re >= zeta(3.0));
        }
        let v = zeta_q(2.0, 5, 10_000_000).unwrap();
        let rs = RiemannSum::new(2.0, 5, Support::Unrestricted).unwrap();
        let d = rs.parts(1, 0, 0).denominator;
        assert!((v.value.re - d).abs() < 1e-8, "{} vs {d}", v.value.re);
        assert!(v.bound < 1e-9);
    }

    #[test]
    fn uniform_closed_form() {
        assert_eq!(uniform_moment(7, &[2], &[4], &[1]).unwrap().value.re, 1.0);
        assert_eq!(uniform_moment(5, &[2], &[1], &[0]).unwrap().value.re, 0.0);
        assert_eq!(uniform_moment(9, &[4], &[3], &[3]).unwrap().value.re, 1.0);
        for q in 1..=30u64 {
            let t = CharacterTable::new(q).unwrap();
            let u = uniform_measure(&t);
            for m in 1..=q.max(2) {
                for k in 0..=3u32 {
                    for l in 0..=3u32 {
                        let e = exact_moment(&u, &MomentSpec::single(q, None, m, k, l).unwrap()).unwrap();
                        let c = uniform_moment(q, &[m], &[k], &[l]).unwrap();
                        assert!((e.value - c.value).norm() < 1e-12, "q={q} m={m} k={k} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(MomentSpec::new(5, Some(2.0), vec![2, 3], vec![1], vec![0, 0]).is_err());
        assert!(MomentSpec::single(5, Some(0.5), 2, 1, 0).is_err());
        assert!(MomentSpec::single(0, None, 2, 1, 0).is_err());
        assert!(MomentSpec::single(5, None, 0, 1, 0).is_err());
        let t = CharacterTable::new(5).unwrap();
        let u = uniform_measure(&t);
        assert!(exact_moment(&u, &MomentSpec::single(7, None, 2, 1, 0).unwrap()).is_err());
    }
}
