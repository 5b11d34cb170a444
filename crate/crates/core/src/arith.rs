//! Integer helpers shared by the character, L-function and convolution code.

use alloc::vec;
use alloc::vec::Vec;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// `base^exp mod modulus`, with `x mod 1 = 0`.
pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base as u128) % m;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

pub fn mod_mul(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

/// Prime factorisation by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    matches!(factorize(n).as_slice(), [(_, 1)])
}

/// Squarefree kernel `rad(n)` as its list of distinct primes.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Primes up to `limit` (inclusive) by a segmented sieve of Eratosthenes.
///
/// The base primes up to `sqrt(limit)` are sieved once; the range above is
/// then processed in fixed-size blocks so the working set stays small for
/// large cutoffs.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    limit: u64,
    primes: Vec<u64>,
}

const SEGMENT: u64 = 1 << 16;

impl PrimeSieve {
    pub fn new(limit: u64) -> Self {
        if limit < 2 {
            return Self {
                limit,
                primes: Vec::new(),
            };
        }
        let root = isqrt(limit);
        let mut small = vec![true; (root + 1) as usize];
        let mut base = Vec::new();
        for i in 2..=root {
            if small[i as usize] {
                base.push(i);
                let mut j = i * i;
                while j <= root {
                    small[j as usize] = false;
                    j += i;
                }
            }
        }
        let mut primes = base.clone();
        let mut lo = root + 1;
        let mut block = vec![true; SEGMENT as usize];
        while lo <= limit {
            let hi = (lo + SEGMENT - 1).min(limit);
            let len = (hi - lo + 1) as usize;
            block[..len].iter_mut().for_each(|b| *b = true);
            for &p in &base {
                let start = (p * p).max(lo.div_ceil(p) * p);
                let mut j = start;
                while j <= hi {
                    block[(j - lo) as usize] = false;
                    j += p;
                }
            }
            primes.extend(
                block[..len]
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(i, _)| lo + i as u64),
            );
            lo = hi + 1;
        }
        Self { limit, primes }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `<= bound`, which must not exceed the sieve limit.
    pub fn primes_up_to(&self, bound: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= bound);
        &self.primes[..end]
    }
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = libm::sqrt(n as f64) as u64;
    while x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x
}

/// Smallest-prime-factor table for `0..=limit`.
pub fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}
