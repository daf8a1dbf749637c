//! Uniform random generation of shapes of fixed genus.
//!
//! A sample is drawn in stages: the arc count `n`, the label count `k`, a
//! glue trace, a uniform plane tree with `k` labeled vertices, `n + 1 - k`
//! unlabeled Rémy insertions, and finally the glue steps with uniformly
//! chosen labeled vertices. Every discrete law is exact: weights are big
//! integers over a common denominator and draws are uniform integers below
//! the total.
//!
//! Randomness consumption for one sample, in order: `n` (skipped when
//! fixed), `k`, one draw per glue step of the trace, the tree shuffle, the
//! sector subset, then one subset draw per glue step. Sample `i` of a batch
//! with seed `s` uses `ChaCha8Rng::seed_from_u64(s)` on stream `i`.

pub mod stats;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::counting::{arc_support, kappa_table, prob_labels_with, shape_count, KappaTable, StepOption, TraceTable};
use crate::diagram::{DiagramError, Shape};
use crate::fatcore::{MapError, PlantedMap};
use crate::surgery::{realize_trace_with, GlueTrace, SurgeryError, TraceStep};
use crate::treegen::{uniform_tree, TreeError};

use self::stats::ChiSquareTest;

#[derive(Debug, Error)]
pub enum SamplerError {
    #[error("genus must be at least 1")]
    GenusZero,
    #[error("no genus-{genus} shape has {arcs} arcs (supported: {min}..={max})")]
    ArcsOutOfRange { genus: usize, arcs: usize, min: usize, max: usize },
    #[error("sample count must be at least 1")]
    EmptyBatch,
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub genus: usize,
    /// Fixed arc count; `None` draws it from the genus-`g` arc law.
    pub arcs: Option<usize>,
    pub seed: u64,
    pub count: usize,
}

impl SamplerConfig {
    pub fn new(genus: usize, seed: u64, count: usize) -> Self {
        Self { genus, arcs: None, seed, count }
    }

    pub fn with_arcs(mut self, arcs: usize) -> Self {
        self.arcs = Some(arcs);
        self
    }

    pub fn validate(&self) -> Result<(), SamplerError> {
        if self.genus == 0 {
            return Err(SamplerError::GenusZero);
        }
        if let Some(n) = self.arcs {
            let support = arc_support(self.genus);
            if !support.contains(&n) || shape_count(self.genus, n).is_zero() {
                return Err(SamplerError::ArcsOutOfRange {
                    genus: self.genus,
                    arcs: n,
                    min: *support.start(),
                    max: *support.end(),
                });
            }
        }
        Ok(())
    }
}

/// Uniform integer in `0..bound` by rejection on the bit length of `bound`.
///
/// # Panics
/// If `bound` is zero.
pub fn uniform_below<R: RngCore + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = bound.bits();
    let words = bits.div_ceil(32) as usize;
    let top_bits = bits - 32 * (words as u64 - 1);
    let mut digits = vec![0u32; words];
    loop {
        for d in digits.iter_mut() {
            *d = rng.next_u32();
        }
        if top_bits < 32 {
            digits[words - 1] &= (1u32 << top_bits) - 1;
        }
        let x = BigUint::from_slice(&digits);
        if &x < bound {
            return x;
        }
    }
}

/// Finite law with big-integer weights, sampled without rounding.
#[derive(Clone, Debug)]
pub struct ExactDistribution<T> {
    values: Vec<T>,
    /// `cumulative[i]` is the weight of `values[..=i]`.
    cumulative: Vec<BigUint>,
}

impl<T> ExactDistribution<T> {
    /// Zero weights are dropped; `None` if nothing remains.
    pub fn from_weights(items: impl IntoIterator<Item = (T, BigUint)>) -> Option<Self> {
        let mut values = Vec::new();
        let mut cumulative = Vec::new();
        let mut acc = BigUint::zero();
        for (v, w) in items {
            if w.is_zero() {
                continue;
            }
            acc += w;
            values.push(v);
            cumulative.push(acc.clone());
        }
        (!values.is_empty()).then_some(Self { values, cumulative })
    }

    /// Rational probabilities scaled to integers over their common
    /// denominator. Negative entries are rejected.
    pub fn from_rationals(items: impl IntoIterator<Item = (T, BigRational)>) -> Option<Self> {
        let items: Vec<_> = items.into_iter().collect();
        if items.iter().any(|(_, p)| p.is_negative()) {
            return None;
        }
        let lcm = items.iter().fold(BigInt::one(), |acc, (_, p)| acc.lcm(p.denom()));
        Self::from_weights(items.into_iter().map(|(v, p)| {
            let scaled = p * BigRational::from_integer(lcm.clone());
            (v, scaled.to_integer().to_biguint().expect("nonnegative"))
        }))
    }

    pub fn total(&self) -> &BigUint {
        self.cumulative.last().expect("nonempty")
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn probability(&self, i: usize) -> BigRational {
        let lo = if i == 0 { BigUint::zero() } else { self.cumulative[i - 1].clone() };
        BigRational::new((&self.cumulative[i] - lo).into(), self.total().clone().into())
    }

    pub fn sample_index<R: RngCore + ?Sized>(&self, rng: &mut R) -> usize {
        if self.values.len() == 1 {
            return 0;
        }
        let x = uniform_below(self.total(), rng);
        self.cumulative.partition_point(|c| c <= &x)
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> &T {
        &self.values[self.sample_index(rng)]
    }
}

/// One generated shape with the intermediate draws that produced it.
#[derive(Clone, Debug)]
pub struct SampledShape {
    pub shape: Shape,
    pub arcs: usize,
    pub labels: usize,
    pub trace: GlueTrace,
}

/// Precomputed laws for one genus (and optionally one arc count).
#[derive(Clone, Debug)]
pub struct ShapeSampler {
    genus: usize,
    arcs: Option<usize>,
    kappa: KappaTable,
    arc_law: ExactDistribution<usize>,
    /// Label-count law per arc count.
    label_laws: HashMap<usize, ExactDistribution<usize>>,
    /// Glue-step law per `(genus so far, labels left)`.
    step_laws: HashMap<(usize, usize), ExactDistribution<StepOption>>,
}

impl ShapeSampler {
    pub fn new(genus: usize, arcs: Option<usize>) -> Result<Self, SamplerError> {
        SamplerConfig { genus, arcs, seed: 0, count: 1 }.validate()?;
        let kappa = kappa_table(genus);
        let support: Vec<usize> = match arcs {
            Some(n) => vec![n],
            None => arc_support(genus).collect(),
        };
        let arc_law = ExactDistribution::from_weights(support.iter().map(|&n| (n, shape_count(genus, n))))
            .expect("genus has shapes");
        let mut label_laws = HashMap::new();
        for &n in arc_law.values() {
            let law = ExactDistribution::from_rationals(
                (2 * genus + 1..=3 * genus).map(|k| (k, prob_labels_with(&kappa, n, k))),
            )
            .expect("label law of a supported arc count");
            label_laws.insert(n, law);
        }
        let traces = TraceTable::new(genus);
        let mut step_laws = HashMap::new();
        for g in 0..genus {
            for k in 0..=3 * genus {
                let options = traces.step_options(g, k);
                if let Some(law) = ExactDistribution::from_rationals(options.into_iter().map(|o| {
                    let p = o.probability.clone();
                    (o, p)
                })) {
                    step_laws.insert((g, k), law);
                }
            }
        }
        Ok(Self { genus, arcs, kappa, arc_law, label_laws, step_laws })
    }

    pub fn from_config(cfg: &SamplerConfig) -> Result<Self, SamplerError> {
        Self::new(cfg.genus, cfg.arcs)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn arcs(&self) -> Option<usize> {
        self.arcs
    }

    pub fn kappa(&self) -> &KappaTable {
        &self.kappa
    }

    pub fn arc_law(&self) -> &ExactDistribution<usize> {
        &self.arc_law
    }

    pub fn label_law(&self, n: usize) -> Option<&ExactDistribution<usize>> {
        self.label_laws.get(&n)
    }

    /// Number of shapes the sampler ranges over.
    pub fn class_count(&self) -> BigUint {
        self.arc_law.total().clone()
    }

    /// Draws a glue trace starting from `k` labeled vertices.
    pub fn sample_trace<R: RngCore + ?Sized>(&self, k: usize, rng: &mut R) -> GlueTrace {
        let mut steps = Vec::with_capacity(self.genus);
        let (mut genus, mut labels, mut t) = (0, k, 0);
        while genus < self.genus {
            let option = self.step_laws[&(genus, labels)].sample(rng);
            steps.push(TraceStep { genus: option.genus, t });
            genus = option.genus;
            labels = labels - option.glued + usize::from(option.labeled);
            t += usize::from(option.labeled);
        }
        GlueTrace::new(steps).expect("drawn trace is well formed")
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<SampledShape, SamplerError> {
        let n = *self.arc_law.sample(rng);
        let k = *self.label_laws[&n].sample(rng);
        let trace = self.sample_trace(k, rng);
        let core = uniform_tree(k - 1, rng);
        let tree = core.insert_unlabeled(n + 1 - k, rng)?;
        let start = tree.to_labeled_map();
        let glued = realize_trace_with(&start, &trace, |_, m, d| {
            let mut picked: Vec<_> =
                rand::seq::index::sample(rng, m.label_count(), d).into_iter().map(|i| m.labels()[i]).collect();
            picked.sort_unstable();
            picked
        })?;
        let shape = Shape::from_planted_map(&PlantedMap::new(glued.into_map())?)?;
        Ok(SampledShape { shape, arcs: n, labels: k, trace })
    }

    pub fn sample_shape<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Shape, SamplerError> {
        Ok(self.sample(rng)?.shape)
    }
}

/// Generator for sample `index` of a batch seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One shape for `cfg`. Builds the laws on every call; use
/// [`ShapeSampler`] for repeated draws.
pub fn sample_shape<R: Rng + ?Sized>(cfg: &SamplerConfig, rng: &mut R) -> Result<Shape, SamplerError> {
    ShapeSampler::from_config(cfg)?.sample_shape(rng)
}

/// Per-arc-count row of a batch summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcRow {
    pub arcs: usize,
    pub observed: u64,
    pub expected: BigRational,
}

#[derive(Clone, Debug)]
pub struct BatchSummary {
    pub genus: usize,
    pub arcs: Option<usize>,
    pub samples: u64,
    pub classes: BigUint,
    pub distinct: usize,
    pub per_arcs: Vec<ArcRow>,
    /// Cell counts against the uniform law; only when every class expects
    /// at least 5 draws.
    pub uniform: Option<ChiSquareTest>,
    /// Histogram of class multiplicities against `Binomial(N, 1/classes)`.
    pub multiplicity: Option<ChiSquareTest>,
    /// Arc counts against the arc law.
    pub arc_fit: Option<ChiSquareTest>,
}

/// Order-independent counts of a set of samples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub by_word: HashMap<String, u64>,
    pub by_arcs: BTreeMap<usize, u64>,
    pub samples: u64,
}

impl Tally {
    pub fn add(&mut self, s: &SampledShape) {
        self.add_word(s.shape.canonical_word(), s.arcs);
    }

    pub fn add_word(&mut self, word: String, arcs: usize) {
        *self.by_word.entry(word).or_default() += 1;
        *self.by_arcs.entry(arcs).or_default() += 1;
        self.samples += 1;
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        for (w, c) in other.by_word {
            *self.by_word.entry(w).or_default() += c;
        }
        for (n, c) in other.by_arcs {
            *self.by_arcs.entry(n).or_default() += c;
        }
        self.samples += other.samples;
        self
    }

    pub fn from_samples(samples: &[SampledShape]) -> Self {
        let mut t = Tally::default();
        for s in samples {
            t.add(s);
        }
        t
    }
}

/// Tally of samples `indices` without keeping the shapes.
pub fn tally_indices(sampler: &ShapeSampler, seed: u64, indices: std::ops::Range<u64>) -> Result<Tally, SamplerError> {
    indices
        .into_par_iter()
        .try_fold(Tally::default, |mut t, i| {
            t.add(&sampler.sample(&mut sample_rng(seed, i))?);
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

impl BatchSummary {
    pub fn from_samples(sampler: &ShapeSampler, samples: &[SampledShape]) -> Self {
        Self::from_tally(sampler, &Tally::from_samples(samples))
    }

    pub fn from_tally(sampler: &ShapeSampler, tally: &Tally) -> Self {
        let n_samples = tally.samples;
        let classes = sampler.class_count();
        let law = sampler.arc_law();
        let per_arcs: Vec<ArcRow> = law
            .values()
            .iter()
            .enumerate()
            .map(|(i, &n)| ArcRow {
                arcs: n,
                observed: tally.by_arcs.get(&n).copied().unwrap_or(0),
                expected: law.probability(i),
            })
            .collect();
        let counts: Vec<u64> = tally.by_word.values().copied().collect();
        let class_u64 = classes.to_u64();
        let uniform = class_u64
            .filter(|&c| n_samples >= 5 * c)
            .and_then(|c| stats::chi_square_uniform(&counts, c));
        let multiplicity = class_u64.and_then(|c| stats::multiplicity_gof(&counts, c, n_samples));
        let arc_fit = (per_arcs.len() > 1)
            .then(|| {
                let observed: Vec<u64> = per_arcs.iter().map(|r| r.observed).collect();
                let expected: Vec<BigRational> = per_arcs.iter().map(|r| r.expected.clone()).collect();
                stats::chi_square_rational(&observed, &expected)
            })
            .flatten();
        Self {
            genus: sampler.genus(),
            arcs: sampler.arcs(),
            samples: n_samples,
            classes,
            distinct: tally.by_word.len(),
            per_arcs,
            uniform,
            multiplicity,
            arc_fit,
        }
    }

    /// Every test that was run passes at `alpha`.
    pub fn passes(&self, alpha: stats::Level) -> bool {
        [&self.uniform, &self.multiplicity, &self.arc_fit].into_iter().flatten().all(|t| t.passes(alpha))
    }
}

impl fmt::Display for BatchSummary {
    /// Lines prefixed with `#`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "# genus={} samples={} classes={} distinct={}", self.genus, self.samples, self.classes, self.distinct)?;
        if let Some(n) = self.arcs {
            write!(f, " arcs={n}")?;
        }
        writeln!(f)?;
        writeln!(f, "# arcs,observed,expected")?;
        for r in &self.per_arcs {
            writeln!(f, "# {},{},{}", r.arcs, r.observed, r.expected)?;
        }
        for (name, test) in [("uniform", &self.uniform), ("multiplicity", &self.multiplicity), ("arcs", &self.arc_fit)] {
            if let Some(t) = test {
                writeln!(f, "# {name} {t}")?;
            }
        }
        Ok(())
    }
}

/// Shapes of a whole batch with their summary.
#[derive(Clone, Debug)]
pub struct Batch {
    pub samples: Vec<SampledShape>,
    pub summary: BatchSummary,
}

/// Samples `indices` with the shared `sampler`; output order follows the
/// indices whatever the thread count.
pub fn sample_indices(
    sampler: &ShapeSampler,
    seed: u64,
    indices: std::ops::Range<u64>,
) -> Result<Vec<SampledShape>, SamplerError> {
    indices.into_par_iter().map(|i| sampler.sample(&mut sample_rng(seed, i))).collect()
}

pub fn sample_batch(cfg: &SamplerConfig) -> Result<Batch, SamplerError> {
    cfg.validate()?;
    if cfg.count == 0 {
        return Err(SamplerError::EmptyBatch);
    }
    let sampler = ShapeSampler::from_config(cfg)?;
    let samples = sample_indices(&sampler, cfg.seed, 0..cfg.count as u64)?;
    let summary = BatchSummary::from_samples(&sampler, &samples);
    Ok(Batch { samples, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::diagram_genus;
    use crate::fatcore::UnicellularMap;
    use std::collections::HashSet;

    #[test]
    fn uniform_below_stays_in_range() {
        let mut rng = sample_rng(1, 0);
        for bound in [1u64, 2, 3, 7, 1 << 32, (1 << 32) + 1, u64::MAX] {
            let b = BigUint::from(bound);
            for _ in 0..200 {
                assert!(uniform_below(&b, &mut rng) < b);
            }
        }
        let mut seen = [0u32; 3];
        for _ in 0..3000 {
            seen[uniform_below(&BigUint::from(3u8), &mut rng).to_usize().unwrap()] += 1;
        }
        assert!(seen.iter().all(|&c| c > 800), "{seen:?}");
    }

    #[test]
    fn exact_distribution_probabilities() {
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        let sixth = BigRational::new(1.into(), 6.into());
        let d = ExactDistribution::from_rationals([('a', half.clone()), ('b', BigRational::zero()), ('c', third.clone()), ('d', sixth.clone())])
            .unwrap();
        assert_eq!(d.values(), &['a', 'c', 'd']);
        assert_eq!(d.total(), &BigUint::from(6u8));
        assert_eq!((d.probability(0), d.probability(1), d.probability(2)), (half, third, sixth));
        assert!(ExactDistribution::<u8>::from_weights([]).is_none());
    }

    #[test]
    fn config_validation() {
        assert!(matches!(SamplerConfig::new(0, 1, 1).validate(), Err(SamplerError::GenusZero)));
        assert!(SamplerConfig::new(1, 1, 1).with_arcs(3).validate().is_ok());
        assert!(matches!(
            SamplerConfig::new(1, 1, 1).with_arcs(5).validate(),
            Err(SamplerError::ArcsOutOfRange { .. })
        ));
        assert!(matches!(sample_batch(&SamplerConfig::new(1, 1, 0)), Err(SamplerError::EmptyBatch)));
    }

    #[test]
    fn samples_are_valid_shapes() {
        for g in 1..=3 {
            let sampler = ShapeSampler::new(g, None).unwrap();
            for i in 0..200 {
                let s = sampler.sample(&mut sample_rng(7, i)).unwrap();
                assert_eq!(diagram_genus(s.shape.diagram()), g);
                assert_eq!(s.shape.pure_arc_count(), s.arcs);
                assert_eq!(s.trace.target_genus(), g);
                assert_eq!(s.trace.initial_labels(), s.labels);
                let m: UnicellularMap = s.shape.to_planted_map().into_map();
                assert_eq!(m.genus(), g);
            }
        }
    }

    #[test]
    fn genus_one_fixed_arcs() {
        let sampler = ShapeSampler::new(1, Some(3)).unwrap();
        let words: HashSet<_> =
            (0..200).map(|i| sampler.sample_shape(&mut sample_rng(3, i)).unwrap().canonical_word()).collect();
        assert_eq!(words.len(), 2);
    }

    #[test]
    fn batch_is_deterministic() {
        let cfg = SamplerConfig::new(2, 42, 300);
        let a = sample_batch(&cfg).unwrap();
        let b = sample_batch(&cfg).unwrap();
        let words = |x: &Batch| x.samples.iter().map(|s| s.shape.canonical_word()).collect::<Vec<_>>();
        assert_eq!(words(&a), words(&b));
        assert_eq!(a.summary.to_string(), b.summary.to_string());
        let c = sample_batch(&SamplerConfig::new(2, 43, 300)).unwrap();
        assert_ne!(words(&a), words(&c));
        let sampler = ShapeSampler::new(2, None).unwrap();
        let t = tally_indices(&sampler, 42, 0..300).unwrap();
        assert_eq!(t, Tally::from_samples(&a.samples));
        assert_eq!(BatchSummary::from_tally(&sampler, &t).to_string(), a.summary.to_string());
    }
}
