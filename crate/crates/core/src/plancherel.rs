//! Exact symmetric-group character identities at small `n`: partitions,
//! Murnaghan-Nakayama characters, the coefficient formula
//! `chi^lambda_mu = [x^{lambda+delta}](p_mu a_delta)`, and Plancherel moments
//! computed both directly and through diagonal operators on Laurent
//! polynomials over the torus.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::Error;

/// A weakly decreasing list of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `1^n`.
    pub fn one_n(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    /// Parts padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<usize> {
        let mut v = self.parts.clone();
        v.resize(len.max(v.len()), 0);
        v
    }
}

impl core::fmt::Display for Partition {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

fn guard(what: &'static str, n: usize, max: usize) -> Result<(), Error> {
    if n > max {
        return Err(Error::SizeGuard { what, n, max });
    }
    Ok(())
}

/// All partitions of `n` in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Result<Vec<Partition>, Error> {
    guard("partitions_of", n, 8)?;
    if n == 0 {
        return Err(crate::invalid("n must be >= 1"));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    Ok(out)
}

fn fill(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

fn check_sizes(lambda: &Partition, mu: &Partition) -> Result<usize, Error> {
    if lambda.n() != mu.n() {
        return Err(Error::SizeMismatch {
            left: lambda.n(),
            right: mu.n(),
        });
    }
    Ok(lambda.n())
}

/// `chi^lambda_mu` by the Murnaghan-Nakayama rule on beta-sets: removing a
/// rim hook of length `r` moves one bead from `b` to a free `b - r`, with
/// sign `(-1)` to the number of beads strictly in between.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt, Error> {
    check_sizes(lambda, mu)?;
    let len = lambda.len();
    let beta: Vec<usize> = (0..len).map(|i| lambda.parts[i] + (len - 1 - i)).collect();
    Ok(BigInt::from(mn_beads(beta, &mu.parts)))
}

fn mn_beads(beta: Vec<usize>, mu: &[usize]) -> i64 {
    let Some((&r, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0;
    for &b in &beta {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let next: Vec<usize> = beta.iter().map(|&c| if c == b { b - r } else { c }).collect();
        let v = mn_beads(next, rest);
        total += if between % 2 == 0 { v } else { -v };
    }
    total
}

/// `d_lambda = n! / prod(hooks)`.
pub fn dimension(lambda: &Partition) -> BigInt {
    let parts = &lambda.parts;
    let mut hooks = BigInt::one();
    for (i, &row) in parts.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = parts[i + 1..].iter().filter(|&&r| r > j).count();
            hooks *= BigInt::from(arm + leg + 1);
        }
    }
    factorial(lambda.n()) / hooks
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact multivariate Laurent polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn monomial(exps: Vec<i32>, coeff: BigInt) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, coeff);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of `x^exps` (zero if absent).
    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i32>, coeff: BigInt) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Torus scalar product `int f conj(g) dm`; monomials are orthonormal
    /// and coefficients are real, so this pairs equal exponents.
    pub fn torus_inner(&self, other: &Self) -> BigInt {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small
            .terms
            .iter()
            .filter_map(|(e, c)| large.terms.get(e).map(|d| c * d))
            .sum()
    }
}

/// `p_mu(x_1, ..., x_n) = prod_i sum_j x_j^{mu_i}`.
pub fn power_sum(mu: &Partition, nvars: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one(nvars);
    for &r in &mu.parts {
        let mut p = LaurentPoly::zero(nvars);
        for j in 0..nvars {
            let mut e = vec![0; nvars];
            e[j] = r as i32;
            p.add_term(e, BigInt::one());
        }
        acc = acc.mul(&p);
    }
    acc
}

/// The alternant `a_alpha = sum_sigma sgn(sigma) x^{sigma(alpha)}`.
pub fn alternant(alpha: &[i32]) -> LaurentPoly {
    let n = alpha.len();
    let mut out = LaurentPoly::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, true, &mut |p, even| {
        let e: Vec<i32> = p.iter().map(|&i| alpha[i]).collect();
        out.add_term(e, if even { BigInt::one() } else { -BigInt::one() });
    });
    out
}

fn permute<F: FnMut(&[usize], bool)>(perm: &mut Vec<usize>, start: usize, even: bool, f: &mut F) {
    if start == perm.len() {
        f(perm, even);
        return;
    }
    for i in start..perm.len() {
        perm.swap(start, i);
        permute(perm, start + 1, if i == start { even } else { !even }, f);
        perm.swap(start, i);
    }
}

/// `delta = (n-1, ..., 1, 0)`.
pub fn delta(n: usize) -> Vec<i32> {
    (0..n).rev().map(|i| i as i32).collect()
}

fn shifted(lambda: &Partition, n: usize) -> Vec<i32> {
    lambda
        .padded(n)
        .iter()
        .zip(delta(n))
        .map(|(&l, d)| l as i32 + d)
        .collect()
}

/// `f_mu = p_mu a_delta` in `n = |mu|` variables.
pub fn f_mu(mu: &Partition) -> LaurentPoly {
    let n = mu.n();
    power_sum(mu, n).mul(&alternant(&delta(n)))
}

/// `[x^{lambda+delta}](p_mu a_delta)`.
pub fn coeff_character(lambda: &Partition, mu: &Partition) -> Result<BigInt, Error> {
    let n = check_sizes(lambda, mu)?;
    guard("coeff_character", n, 6)?;
    Ok(f_mu(mu).coeff(&shifted(lambda, n)))
}

/// `[x^{lambda+delta}](a_{nu+delta})`.
pub fn alternant_coefficient(lambda: &Partition, nu: &Partition) -> Result<BigInt, Error> {
    let n = check_sizes(lambda, nu)?;
    guard("alternant_coefficient", n, 6)?;
    Ok(alternant(&shifted(nu, n)).coeff(&shifted(lambda, n)))
}

fn check_moment_args(n: usize, mu: &Partition, nu: &Partition) -> Result<(), Error> {
    for p in [mu, nu] {
        if p.n() != n {
            return Err(Error::SizeMismatch { left: n, right: p.n() });
        }
    }
    Ok(())
}

/// `(1/n!) sum_lambda d_lambda^2 (chi^lambda_mu)^k (chi^lambda_nu)^l`.
pub fn plancherel_expectation_direct(
    n: usize,
    mu: &Partition,
    k: u32,
    nu: &Partition,
    l: u32,
) -> Result<BigRational, Error> {
    guard("plancherel_expectation_direct", n, 6)?;
    check_moment_args(n, mu, nu)?;
    let mut acc = BigInt::zero();
    for lambda in partitions_of(n)? {
        let d = dimension(&lambda);
        let a = mn_character(&lambda, mu)?;
        let b = mn_character(&lambda, nu)?;
        acc += &d * &d * num_traits::pow(a, k as usize) * num_traits::pow(b, l as usize);
    }
    Ok(BigRational::new(acc, factorial(n)))
}

/// `R_n = sum_{lambda |- n} z^{-(lambda+delta)}`.
pub fn r_n(n: usize) -> Result<LaurentPoly, Error> {
    let mut out = LaurentPoly::zero(n);
    for lambda in partitions_of(n)? {
        out.add_term(shifted(&lambda, n).iter().map(|e| -e).collect(), BigInt::one());
    }
    Ok(out)
}

/// The operator `L_mu g(z) = int conj(f_mu(x)) g(conj(x) z) dm(x)`.
///
/// On a monomial `z^{-beta}` the integrand is `conj(f_mu(x)) x^beta z^{-beta}`,
/// so `L_mu` is diagonal with eigenvalue `[x^beta](f_mu)`.
#[derive(Debug, Clone)]
pub struct DiagonalOperator {
    f: LaurentPoly,
}

impl DiagonalOperator {
    pub fn new(mu: &Partition) -> Self {
        Self { f: f_mu(mu) }
    }

    pub fn apply(&self, g: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero(g.nvars());
        for (e, c) in g.terms() {
            let beta: Vec<i32> = e.iter().map(|x| -x).collect();
            out.add_term(e.clone(), c * self.f.coeff(&beta));
        }
        out
    }

    pub fn apply_pow(&self, g: &LaurentPoly, k: u32) -> LaurentPoly {
        (0..k).fold(g.clone(), |acc, _| self.apply(&acc))
    }
}

/// `h_n = L_{1^n} R_n`.
pub fn h_n(n: usize) -> Result<LaurentPoly, Error> {
    Ok(DiagonalOperator::new(&Partition::one_n(n)).apply(&r_n(n)?))
}

/// `<L_mu^k h_n, L_nu^l h_n> / <h_n, h_n>` by exact coefficient pairing.
pub fn operator_moment(n: usize, mu: &Partition, k: u32, nu: &Partition, l: u32) -> Result<BigRational, Error> {
    guard("operator_moment", n, 5)?;
    check_moment_args(n, mu, nu)?;
    let h = h_n(n)?;
    let left = DiagonalOperator::new(mu).apply_pow(&h, k);
    let right = DiagonalOperator::new(nu).apply_pow(&h, l);
    let norm = h.torus_inner(&h);
    Ok(BigRational::new(left.torus_inner(&right), norm))
}

/// `sum_{lambda |- n} d_lambda^2`.
pub fn dimension_square_sum(n: usize) -> Result<BigInt, Error> {
    Ok(partitions_of(n)?
        .iter()
        .map(|l| {
            let d = dimension(l);
            &d * &d
        })
        .sum())
}
