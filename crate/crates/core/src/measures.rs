//! Probability measures on the characters of a [`CharacterTable`] and
//! reproducible sampling from them.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::arith::PrimeSieve;
use crate::char_group::CharacterTable;
use crate::lfunction::special::CompensatedSum;
use crate::lfunction::{
    check_s, l_a_with, l_values, CoefficientTail, EulerCoefficients, ResidueSums, TruncationPolicy,
    ValueWithCert,
};
use crate::rng::CounterRng;
use crate::Error;

/// Which weight a character receives before normalisation.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasureKind {
    /// `|L_s(chi)|^2`.
    L { s: f64 },
    /// Constant weight.
    Uniform,
    /// `|L_a(chi)|^2`.
    A(EulerCoefficients),
}

/// A probability vector over a character table.
#[derive(Debug, Clone)]
pub struct CharacterMeasure<'a> {
    table: &'a CharacterTable,
    kind: MeasureKind,
    weights: Vec<f64>,
    cumulative: Vec<f64>,
    partition_function: f64,
    weight_error: f64,
    l_values: Option<Vec<ValueWithCert>>,
}

impl<'a> CharacterMeasure<'a> {
    pub fn table(&self) -> &'a CharacterTable {
        self.table
    }

    pub fn modulus(&self) -> u64 {
        self.table.modulus()
    }

    pub fn kind(&self) -> &MeasureKind {
        &self.kind
    }

    /// Normalised weights, indexed like the table.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, index: usize) -> f64 {
        self.weights[index]
    }

    /// Sum of the unnormalised weights.
    pub fn partition_function(&self) -> f64 {
        self.partition_function
    }

    /// Bound on the error of every unnormalised weight.
    pub fn weight_error(&self) -> f64 {
        self.weight_error
    }

    /// Bound on the total error of the normalised weights, in `l^1`.
    pub fn normalized_error(&self) -> f64 {
        let phi = self.weights.len() as f64;
        2.0 * phi * self.weight_error / self.partition_function
            + 4.0 * f64::EPSILON * phi
    }

    /// The `L`-values behind the weights (absent for the uniform measure).
    pub fn l_values(&self) -> Option<&[ValueWithCert]> {
        self.l_values.as_deref()
    }

    /// Character index for a uniform variate `u` in `[0, 1)`.
    pub fn quantile(&self, u: f64) -> usize {
        let total = *self.cumulative.last().expect("non-empty table");
        let idx = self.cumulative.partition_point(|&c| c <= u * total);
        idx.min(self.cumulative.len() - 1)
    }
}

/// Draws from a measure: the seed, the count, and the sampled indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleBatch {
    pub seed: u64,
    pub character_indices: Vec<usize>,
    pub count: usize,
}

/// Weights `|L|^2` with the error bound `2 |L| b + b^2` on each.
fn squared(values: &[ValueWithCert]) -> (Vec<f64>, f64) {
    let mut err: f64 = 0.0;
    let raw = values
        .iter()
        .map(|v| {
            let n = v.value.norm();
            err = err.max(2.0 * n * v.bound + v.bound * v.bound + 2.0 * f64::EPSILON * n * n);
            v.value.norm_sqr()
        })
        .collect();
    (raw, err)
}

pub fn build_measure<'a>(
    table: &'a CharacterTable,
    kind: MeasureKind,
    policy: &TruncationPolicy,
) -> Result<CharacterMeasure<'a>, Error> {
    let (raw, weight_error, l_vals) = match &kind {
        MeasureKind::Uniform => (alloc::vec![1.0; table.len()], 0.0, None),
        MeasureKind::L { s } => {
            let vals = l_values(*s, table)?;
            let (raw, err) = squared(&vals);
            (raw, err, Some(vals))
        }
        MeasureKind::A(coeffs) => {
            let sums = match coeffs.tail() {
                CoefficientTail::Power { s } => Some(ResidueSums::new(s, table.modulus())?),
                _ => None,
            };
            let sieve = match coeffs.tail() {
                CoefficientTail::PowerUpTo { p_max, .. } => Some(PrimeSieve::new(p_max)),
                _ => None,
            };
            let vals: Vec<ValueWithCert> = table
                .iter()
                .map(|chi| l_a_with(coeffs, &chi, sums.as_ref(), sieve.as_ref()))
                .collect();
            let (raw, err) = squared(&vals);
            (raw, err, Some(vals))
        }
    };
    if let Some(vals) = &l_vals {
        if let Some(worst) = vals.iter().map(|v| v.bound).reduce(f64::max) {
            if !(worst <= policy.tol) {
                return Err(Error::CapExceeded {
                    needed: u64::MAX,
                    cap: policy.n_max,
                });
            }
        }
    }
    let mut acc = CompensatedSum::new();
    let mut cumulative = Vec::with_capacity(raw.len());
    for &w in &raw {
        acc.add(w);
        cumulative.push(acc.value());
    }
    let partition_function = acc.value();
    let weights = raw.iter().map(|w| w / partition_function).collect();
    Ok(CharacterMeasure {
        table,
        kind,
        weights,
        cumulative,
        partition_function,
        weight_error,
        l_values: l_vals,
    })
}

/// Convenience constructor for the `L`-measure at `s`.
pub fn l_measure<'a>(table: &'a CharacterTable, s: f64) -> Result<CharacterMeasure<'a>, Error> {
    check_s(s)?;
    build_measure(table, MeasureKind::L { s }, &TruncationPolicy::default())
}

pub fn uniform_measure(table: &CharacterTable) -> CharacterMeasure<'_> {
    build_measure(table, MeasureKind::Uniform, &TruncationPolicy::default())
        .expect("uniform weights need no truncation")
}

/// `count` independent draws by inverse CDF; draw `i` depends only on
/// `(seed, i)`.
pub fn sample(measure: &CharacterMeasure<'_>, count: usize, seed: u64) -> SampleBatch {
    SampleBatch {
        seed,
        character_indices: sample_range(measure, seed, 0, count as u64),
        count,
    }
}

/// Draws `start..end` of the stream keyed by `seed`.
pub fn sample_range(measure: &CharacterMeasure<'_>, seed: u64, start: u64, end: u64) -> Vec<usize> {
    let mut rng = CounterRng::new(seed, 1);
    rng.seek(start);
    (start..end).map(|_| measure.quantile(rng.uniform())).collect()
}

/// `chi(m)` for each sampled character.
pub fn evaluate_batch(
    table: &CharacterTable,
    indices: &[usize],
    m: i64,
) -> Vec<Complex64> {
    indices.iter().map(|&i| table.character(i).eval(m)).collect()
}
