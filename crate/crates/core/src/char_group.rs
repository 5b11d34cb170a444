//! The unit group `(Z/qZ)^x`, its dual group, and exact character evaluation.
//!
//! A character is identified by its exponent vector on the fixed generators
//! of the unit group; its value at a unit `a` with discrete log `d(a)` is
//! `exp(2 pi i sum_i e_i d_i(a) / o_i)`. All values are kept as exact rational
//! angles over the group exponent `lcm(o_i)` and only turned into floating
//! point complex numbers on request.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::arith::{factorize, gcd, lcm, mod_mul, mod_pow};
use crate::Error;

/// Default cap on `phi(q)` for table construction.
pub const DEFAULT_TABLE_LIMIT: u64 = 1_000_000;

const NOT_A_UNIT: u32 = u32::MAX;

/// Cyclic decomposition of `(Z/qZ)^x` with a full discrete-log table.
#[derive(Debug, Clone)]
pub struct UnitGroupStructure {
    q: u64,
    factors: Vec<(u64, u32)>,
    generators: Vec<u64>,
    orders: Vec<u64>,
    // dlog[r * rank + i] is the exponent of generator i for residue r,
    // NOT_A_UNIT in slot 0 when gcd(r, q) > 1.
    dlog: Vec<u32>,
}

impl UnitGroupStructure {
    pub fn new(q: u64, limit: u64) -> Result<Self, Error> {
        if q == 0 {
            return Err(Error::InvalidModulus(q));
        }
        let factors = factorize(q);
        let phi: u64 = factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product();
        if phi > limit {
            return Err(Error::TableTooLarge { phi, limit });
        }

        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for &(p, e) in &factors {
            let pe = p.pow(e);
            for (g_local, order) in local_generators(p, e) {
                generators.push(crt_lift(g_local, pe, q));
                orders.push(order);
            }
        }

        let rank = generators.len();
        let stride = rank.max(1);
        let mut dlog = vec![NOT_A_UNIT; q as usize * stride];
        let powers: Vec<Vec<u64>> = generators
            .iter()
            .zip(&orders)
            .map(|(&g, &o)| {
                let mut row = Vec::with_capacity(o as usize);
                let mut x = 1 % q;
                for _ in 0..o {
                    row.push(x);
                    x = mod_mul(x, g, q);
                }
                row
            })
            .collect();
        let mut exps = vec![0u64; rank];
        for _ in 0..phi {
            let r = exps
                .iter()
                .zip(&powers)
                .fold(1 % q, |acc, (&e, row)| mod_mul(acc, row[e as usize], q));
            let slot = &mut dlog[r as usize * stride..r as usize * stride + stride];
            debug_assert!(rank == 0 || slot[0] == NOT_A_UNIT, "generators not independent");
            if rank == 0 {
                slot[0] = 0;
            }
            for (s, &e) in slot.iter_mut().zip(&exps) {
                *s = e as u32;
            }
            // odometer, last coordinate fastest
            for i in (0..rank).rev() {
                exps[i] += 1;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
            }
        }

        Ok(Self {
            q,
            factors,
            generators,
            orders,
            dlog,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// `phi(q)`, the order of the group.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent of the group, `lcm` of the generator orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }

    /// Discrete log of `n mod q`, `None` unless `gcd(n, q) = 1`.
    pub fn dlog(&self, n: i64) -> Option<&[u32]> {
        let r = n.rem_euclid(self.q as i64) as usize;
        let stride = self.rank().max(1);
        let slot = &self.dlog[r * stride..r * stride + stride];
        if slot[0] == NOT_A_UNIT {
            None
        } else {
            Some(&slot[..self.rank()])
        }
    }

    pub fn is_unit(&self, n: i64) -> bool {
        self.dlog(n).is_some()
    }
}

/// Generators of `(Z/p^e Z)^x` with their orders.
fn local_generators(p: u64, e: u32) -> Vec<(u64, u64)> {
    let pe = p.pow(e);
    if p == 2 {
        return match e {
            1 => Vec::new(),
            2 => vec![(3, 2)],
            _ => vec![(pe - 1, 2), (5, 1 << (e - 2))],
        };
    }
    let phi = (p - 1) * p.pow(e - 1);
    let mut g = primitive_root_mod_prime(p);
    if e >= 2 && mod_pow(g, p - 1, p * p) == 1 {
        g += p;
    }
    vec![(g % pe, phi)]
}

fn primitive_root_mod_prime(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let divisors: Vec<u64> = factorize(p - 1).into_iter().map(|(r, _)| r).collect();
    (2..p)
        .find(|&g| divisors.iter().all(|&r| mod_pow(g, (p - 1) / r, p) != 1))
        .expect("every prime has a primitive root")
}

/// The residue mod `q` congruent to `g` mod `pe` and to 1 mod `q / pe`.
fn crt_lift(g: u64, pe: u64, q: u64) -> u64 {
    let rest = q / pe;
    if rest == 1 {
        return g % q;
    }
    // x = 1 + rest * t with 1 + rest * t = g (mod pe)
    let inv = mod_inverse(rest % pe, pe).expect("coprime prime-power factors");
    let t = mod_mul((g + pe - 1 % pe) % pe, inv, pe);
    (1 + rest * t) % q
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let k = old_r / r;
        (old_r, r) = (r, old_r - k * r);
        (old_s, s) = (s, old_s - k * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// An exact point of the unit circle, `exp(2 pi i num / den)` with
/// `0 <= num < den` and `gcd(num, den) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Angle {
    num: u64,
    den: u64,
}

impl Angle {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "angle denominator must be positive");
        let num = num % den;
        let g = gcd(num, den);
        let g = if g == 0 { den } else { g };
        Self {
            num: num / g,
            den: den / g,
        }
    }

    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// The angle as a fraction of a full turn, in `[0, 1)`.
    pub fn turns(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn add(self, other: Self) -> Self {
        let den = lcm(self.den, other.den);
        let num = (self.num as u128 * (den / self.den) as u128
            + other.num as u128 * (den / other.den) as u128)
            % den as u128;
        Self::new(num as u64, den)
    }

    pub fn neg(self) -> Self {
        Self::new(self.den - self.num, self.den)
    }

    pub fn to_complex(self) -> Complex64 {
        unit(self.num, self.den)
    }
}

/// `exp(2 pi i num / den)`, reduced to the first half-turn before calling
/// the trigonometric kernels.
pub(crate) fn unit(num: u64, den: u64) -> Complex64 {
    let num = num % den;
    let (n2, d2) = (2 * num as u128, den as u128);
    // angle = pi * n2 / d2 in [0, 2 pi); fold to (-pi, pi]
    let x = if n2 > d2 {
        -PI * ((2 * d2 - n2) as f64 / d2 as f64)
    } else {
        PI * (n2 as f64 / d2 as f64)
    };
    let (s, c) = libm::sincos(x);
    Complex64::new(c, s)
}

/// Value of a Dirichlet character: zero off the units, a root of unity on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CharValue {
    Null,
    Unit(Angle),
}

impl CharValue {
    pub fn to_complex(self) -> Complex64 {
        match self {
            CharValue::Null => Complex64::new(0.0, 0.0),
            CharValue::Unit(a) => a.to_complex(),
        }
    }

    pub fn is_null(self) -> bool {
        matches!(self, CharValue::Null)
    }

    pub fn mul(self, other: Self) -> Self {
        match (self, other) {
            (CharValue::Unit(a), CharValue::Unit(b)) => CharValue::Unit(a.add(b)),
            _ => CharValue::Null,
        }
    }

    pub fn conj(self) -> Self {
        match self {
            CharValue::Null => CharValue::Null,
            CharValue::Unit(a) => CharValue::Unit(a.neg()),
        }
    }

    pub fn pow(self, k: u64) -> Self {
        match self {
            _ if k == 0 => CharValue::Unit(Angle::zero()),
            CharValue::Null => CharValue::Null,
            CharValue::Unit(a) => {
                let num = (a.num as u128 * k as u128 % a.den as u128) as u64;
                CharValue::Unit(Angle::new(num, a.den))
            }
        }
    }
}

/// The full dual group of `(Z/qZ)^x`, enumerated in lexicographic order of
/// exponent vectors; index 0 is the principal character.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    structure: UnitGroupStructure,
    exponent: u64,
    // weight of generator i inside the common denominator `exponent`
    scale: Vec<u64>,
    roots: Vec<Complex64>,
}

impl CharacterTable {
    pub fn new(q: u64) -> Result<Self, Error> {
        Self::with_limit(q, DEFAULT_TABLE_LIMIT)
    }

    pub fn with_limit(q: u64, limit: u64) -> Result<Self, Error> {
        let structure = UnitGroupStructure::new(q, limit)?;
        let exponent = structure.exponent();
        let scale = structure.orders.iter().map(|&o| exponent / o).collect();
        let roots = (0..exponent).map(|t| unit(t, exponent)).collect();
        Ok(Self {
            structure,
            exponent,
            scale,
            roots,
        })
    }

    pub fn structure(&self) -> &UnitGroupStructure {
        &self.structure
    }

    pub fn modulus(&self) -> u64 {
        self.structure.q
    }

    /// Number of characters, `phi(q)`.
    pub fn len(&self) -> usize {
        self.structure.order() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Common denominator of every character angle.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn principal(&self) -> Character<'_> {
        self.character(0)
    }

    pub fn character(&self, index: usize) -> Character<'_> {
        assert!(index < self.len(), "character index out of range");
        Character { table: self, index }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = Character<'_>> + '_ {
        (0..self.len()).map(move |index| Character { table: self, index })
    }

    /// Index of the character with the given exponent vector.
    pub fn index_of(&self, exps: &[u64]) -> Option<usize> {
        let orders = self.structure.orders();
        if exps.len() != orders.len() || exps.iter().zip(orders).any(|(e, o)| e >= o) {
            return None;
        }
        Some(
            exps.iter()
                .zip(orders)
                .fold(0u64, |acc, (&e, &o)| acc * o + e) as usize,
        )
    }

    pub fn exps_of(&self, index: usize) -> Vec<u64> {
        let orders = self.structure.orders();
        let mut out = vec![0u64; orders.len()];
        let mut rest = index as u64;
        for i in (0..orders.len()).rev() {
            out[i] = rest % orders[i];
            rest /= orders[i];
        }
        out
    }

    /// Numerator over [`exponent`](Self::exponent) of the angle of
    /// character `index` at `n`, or `None` when `gcd(n, q) > 1`.
    pub fn angle_index(&self, index: usize, n: i64) -> Option<u64> {
        let d = self.structure.dlog(n)?;
        let exps = self.exps_of(index);
        Some(self.pair(&exps, d))
    }

    fn pair(&self, exps: &[u64], dlog: &[u32]) -> u64 {
        let e = self.exponent as u128;
        let mut acc: u128 = 0;
        for ((&x, &d), &w) in exps.iter().zip(dlog).zip(&self.scale) {
            acc = (acc + x as u128 * d as u128 % e * w as u128) % e;
        }
        acc as u64
    }

    /// `exp(2 pi i t / exponent)` from the precomputed table.
    pub fn root(&self, t: u64) -> Complex64 {
        self.roots[(t % self.exponent) as usize]
    }

    /// Angle indices of every character at `n` (all `None` off the units).
    pub fn column(&self, n: i64) -> Option<Vec<u64>> {
        let d = self.structure.dlog(n)?.to_vec();
        let rank = d.len();
        let orders = self.structure.orders().to_vec();
        let mut exps = vec![0u64; rank];
        let mut out = Vec::with_capacity(self.len());
        for _ in 0..self.len() {
            out.push(self.pair(&exps, &d));
            for i in (0..rank).rev() {
                exps[i] += 1;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
            }
        }
        Some(out)
    }
}

/// A character borrowed from its owning table.
#[derive(Debug, Clone, Copy)]
pub struct Character<'a> {
    table: &'a CharacterTable,
    index: usize,
}

impl PartialEq for Character<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.table, other.table) && self.index == other.index
    }
}

impl<'a> Character<'a> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn table(&self) -> &'a CharacterTable {
        self.table
    }

    pub fn modulus(&self) -> u64 {
        self.table.modulus()
    }

    pub fn exps(&self) -> Vec<u64> {
        self.table.exps_of(self.index)
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// Exact value at `n`.
    pub fn value(&self, n: i64) -> CharValue {
        match self.table.angle_index(self.index, n) {
            None => CharValue::Null,
            Some(t) => CharValue::Unit(Angle::new(t, self.table.exponent)),
        }
    }

    /// Value at `n` as a complex number.
    pub fn eval(&self, n: i64) -> Complex64 {
        match self.table.angle_index(self.index, n) {
            None => Complex64::new(0.0, 0.0),
            Some(t) => self.table.root(t),
        }
    }

    pub fn conjugate(&self) -> Character<'a> {
        let exps: Vec<u64> = self
            .exps()
            .iter()
            .zip(self.table.structure.orders())
            .map(|(&e, &o)| (o - e) % o)
            .collect();
        let index = self.table.index_of(&exps).expect("negated exps in range");
        Character {
            table: self.table,
            index,
        }
    }

    /// Multiplicative order of the character in the dual group.
    pub fn order(&self) -> u64 {
        self.exps()
            .iter()
            .zip(self.table.structure.orders())
            .fold(1, |acc, (&e, &o)| lcm(acc, o / gcd(e, o)))
    }

    /// True when every value is real (order 1 or 2).
    pub fn is_real(&self) -> bool {
        self.order() <= 2
    }
}
