//! Goodness-of-fit tests for sampler output. Floating point lives here
//! only; the laws being tested are exact.

use std::fmt;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, Discrete};

/// Smallest expected cell count kept unmerged.
pub const MIN_EXPECTED: f64 = 5.0;

/// Significance level of a test.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Level(pub f64);

impl Level {
    pub const MILLI: Level = Level(1e-3);
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquareTest {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

impl ChiSquareTest {
    fn from_statistic(statistic: f64, dof: usize) -> Option<Self> {
        if dof == 0 {
            return None;
        }
        let dist = ChiSquared::new(dof as f64).ok()?;
        Some(Self { statistic, dof, p_value: dist.sf(statistic) })
    }

    pub fn passes(&self, alpha: Level) -> bool {
        self.p_value >= alpha.0
    }
}

impl fmt::Display for ChiSquareTest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi2={:.3} dof={} p={:.6}", self.statistic, self.dof, self.p_value)
    }
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Pools adjacent cells left to right until each expects at least
/// [`MIN_EXPECTED`]; a short tail joins the last pooled cell.
pub fn merge_cells(observed: &[u64], expected: &[f64]) -> (Vec<u64>, Vec<f64>) {
    assert_eq!(observed.len(), expected.len());
    let mut obs = Vec::new();
    let mut exp = Vec::new();
    let (mut o, mut e) = (0u64, 0.0);
    for (&oi, &ei) in observed.iter().zip(expected) {
        o += oi;
        e += ei;
        if e >= MIN_EXPECTED {
            obs.push(o);
            exp.push(e);
            (o, e) = (0, 0.0);
        }
    }
    if e > 0.0 || o > 0 {
        match (obs.last_mut(), exp.last_mut()) {
            (Some(lo), Some(le)) => {
                *lo += o;
                *le += e;
            }
            _ => {
                obs.push(o);
                exp.push(e);
            }
        }
    }
    (obs, exp)
}

/// Pearson test of `observed` against expected counts, after pooling.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> Option<ChiSquareTest> {
    let (obs, exp) = merge_cells(observed, expected);
    let statistic = obs.iter().zip(&exp).map(|(&o, &e)| (o as f64 - e).powi(2) / e).sum();
    ChiSquareTest::from_statistic(statistic, obs.len().saturating_sub(1))
}

/// Test against exact cell probabilities.
pub fn chi_square_rational(observed: &[u64], probabilities: &[BigRational]) -> Option<ChiSquareTest> {
    let total: u64 = observed.iter().sum();
    let expected: Vec<f64> = probabilities.iter().map(|p| rational_to_f64(p) * total as f64).collect();
    chi_square(observed, &expected)
}

/// Test of class counts against the uniform law on `classes` classes;
/// `counts` lists the observed classes only, the others count as zero.
pub fn chi_square_uniform(counts: &[u64], classes: u64) -> Option<ChiSquareTest> {
    let seen = counts.len() as u64;
    if classes < 2 || seen > classes {
        return None;
    }
    let total: u64 = counts.iter().sum();
    let e = total as f64 / classes as f64;
    let seen_part: f64 = counts.iter().map(|&o| (o as f64 - e).powi(2) / e).sum();
    let statistic = seen_part + (classes - seen) as f64 * e;
    ChiSquareTest::from_statistic(statistic, (classes - 1) as usize)
}

/// `hist[j]` = number of classes observed exactly `j` times, unseen
/// classes included at `j = 0`.
pub fn multiplicity_histogram(counts: &[u64], classes: u64) -> Vec<u64> {
    let max = counts.iter().copied().max().unwrap_or(0) as usize;
    let mut hist = vec![0u64; max + 1];
    for &c in counts {
        hist[c as usize] += 1;
    }
    hist[0] += classes.saturating_sub(counts.len() as u64);
    hist
}

/// Test of the multiplicity histogram against `classes` independent
/// `Binomial(samples, 1/classes)` draws. The last cell collects the tail.
pub fn multiplicity_gof(counts: &[u64], classes: u64, samples: u64) -> Option<ChiSquareTest> {
    if classes < 2 || samples == 0 {
        return None;
    }
    let binom = Binomial::new(1.0 / classes as f64, samples).ok()?;
    let mut observed = multiplicity_histogram(counts, classes);
    observed.push(0);
    let c = classes as f64;
    let mut expected: Vec<f64> = (0..observed.len() as u64 - 1).map(|j| c * binom.pmf(j)).collect();
    let head: f64 = expected.iter().sum();
    expected.push((c - head).max(0.0));
    chi_square(&observed, &expected)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merging_pools_small_cells() {
        let (o, e) = merge_cells(&[1, 2, 10, 1, 1], &[1.0, 4.0, 10.0, 2.0, 1.0]);
        assert_eq!(o, vec![3, 12]);
        assert_eq!(e, vec![5.0, 13.0]);
    }

    #[test]
    fn uniform_test() {
        let t = chi_square_uniform(&[100, 100, 100, 100], 4).unwrap();
        assert_eq!((t.statistic, t.dof), (0.0, 3));
        assert!(t.passes(Level::MILLI));
        let t = chi_square_uniform(&[200, 100, 100], 4).unwrap();
        assert!(!t.passes(Level::MILLI));
    }

    #[test]
    fn histogram_counts_unseen() {
        assert_eq!(multiplicity_histogram(&[2, 1, 2], 5), vec![2, 1, 2]);
    }

    #[test]
    fn known_p_value() {
        // chi-square with 2 dof has sf(x) = exp(-x/2)
        let t = chi_square(&[10, 20, 30], &[20.0, 20.0, 20.0]).unwrap();
        assert!((t.p_value - (-t.statistic / 2.0).exp()).abs() < 1e-12);
    }
}
