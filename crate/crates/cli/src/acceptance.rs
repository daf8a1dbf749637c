//! The ten acceptance criteria, each a self-contained check with pinned
//! reference values, sample sizes, seeds and tolerances.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::seq::index::sample as sample_subset;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rnashapes::audit;
use rnashapes::counting::{
    arc_support, eta, eta0, epsilon, genus_series_from_numerator, kappa_table, prob_arcs, shape_count,
    shape_count_from_kappa, shape_polynomial, shape_total,
};
use rnashapes::oracle::{
    all_plane_trees, count_maps, count_maps_by_genus, count_maps_where, enumerate_class_trees, enumerate_maps,
    enumerate_shape_maps, MapFilter, OracleCaps,
};
use rnashapes::sampler::stats::{chi_square_rational, chi_square_uniform, multiplicity_gof, Level};
use rnashapes::sampler::{sample_rng, tally_indices, SamplerConfig, ShapeSampler};
use rnashapes::surgery::{lambda, xi};
use rnashapes::{LabeledMap, Permutation, Shape, UnicellularMap};

use crate::commands::{self, SampleFormat};
use crate::corpus::{parse_multiplicities, Corpus};

/// Significance level of every statistical criterion.
pub const ALPHA: Level = Level::MILLI;

/// Shapes of genus 1..=5.
pub const SHAPE_TOTALS: [u128; 5] = [4, 3696, 15214144, 148120104704, 2638025019442176];

/// `κ_t` for genus 1..=5.
pub const KAPPA: [&[u64]; 5] = [
    &[1],
    &[21, 105],
    &[1485, 18018, 50050],
    &[225225, 4660227, 29099070, 56581525],
    &[59520825, 1804142340, 18472089636, 78082504500, 117123756750],
];

/// `(arcs, shapes)` for genus 1.
pub const GENUS_ONE_SHAPES: [(usize, u64); 3] = [(2, 1), (3, 2), (4, 1)];
/// `(arcs, shapes)` for genus 2; the last two need the raised oracle cap.
pub const GENUS_TWO_SHAPES: [(usize, u64); 7] = [(4, 21), (5, 189), (6, 651), (7, 1134), (8, 1071), (9, 525), (10, 105)];

pub const SEED_GENUS_ONE: u64 = 0x5eed_0001;
pub const SEED_GENUS_TWO: u64 = 0x5eed_0002;
pub const SEED_CORPUS: u64 = 0x5eed_0009;
pub const SEED_SURGERY: u64 = 0x5eed_0006;
pub const SEED_TIMING: u64 = 0x5eed_0010;

/// Minimum coefficient of determination of the time-versus-arcs fit.
pub const MIN_R_SQUARED: f64 = 0.9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CriterionInfo {
    pub id: u8,
    pub name: &'static str,
}

pub const CRITERIA: [CriterionInfo; 10] = [
    CriterionInfo { id: 1, name: "shape-totals" },
    CriterionInfo { id: 2, name: "kappa-table" },
    CriterionInfo { id: 3, name: "polynomial-consistency" },
    CriterionInfo { id: 4, name: "oracle-maps" },
    CriterionInfo { id: 5, name: "oracle-shapes" },
    CriterionInfo { id: 6, name: "surgery-round-trips" },
    CriterionInfo { id: 7, name: "remy-restriction" },
    CriterionInfo { id: 8, name: "sampler-uniformity" },
    CriterionInfo { id: 9, name: "corpus-pipeline" },
    CriterionInfo { id: 10, name: "linear-cost-exact-arithmetic" },
];

/// Deliberate corruption for checking that failures are reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Adds one to `κ_0` of genus 3 before comparing.
    Kappa,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    /// Largest genus-2 arc count checked against the oracle.
    pub max_genus_two_arcs: usize,
    pub genus_one_samples: u64,
    pub genus_two_samples: u64,
    pub corpus_samples: usize,
    /// Timed samples per genus.
    pub timing_samples: u64,
    /// Randomized instances per surgery direction.
    pub round_trips: usize,
    pub fault: Option<Fault>,
}

impl SuiteOptions {
    /// Every criterion at its stated size.
    pub fn full() -> Self {
        Self {
            max_genus_two_arcs: 10,
            genus_one_samples: 1_000_000,
            genus_two_samples: 500_000,
            corpus_samples: 100_000,
            timing_samples: 10_000,
            round_trips: 10_000,
            fault: None,
        }
    }

    /// Default oracle range and smaller sampler runs.
    pub fn quick() -> Self {
        Self {
            max_genus_two_arcs: 8,
            genus_one_samples: 100_000,
            genus_two_samples: 100_000,
            corpus_samples: 50_000,
            ..Self::full()
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {:<28} {} ({:.2}s) {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Result of one check: mismatches found and a summary of what was covered.
struct Check {
    problems: Vec<String>,
    summary: String,
    limit: Option<Duration>,
}

impl Check {
    fn new(limit: Option<Duration>) -> Self {
        Self { problems: Vec::new(), summary: String::new(), limit }
    }

    fn expect<T: PartialEq + fmt::Display>(&mut self, what: impl fmt::Display, want: T, got: T) {
        if want != got {
            self.problems.push(format!("{what}: expected {want}, got {got}"));
        }
    }

    fn fail(&mut self, problem: String) {
        self.problems.push(problem);
    }
}

pub fn run_criterion(id: u8, opts: &SuiteOptions) -> Outcome {
    let info = CRITERIA.iter().find(|c| c.id == id).copied().unwrap_or(CriterionInfo { id, name: "unknown" });
    let start = Instant::now();
    let check = match id {
        1 => shape_totals(),
        2 => kappa_values(opts),
        3 => polynomial_consistency(),
        4 => oracle_maps(),
        5 => oracle_shapes(opts),
        6 => surgery_round_trips(opts),
        7 => remy_restriction(),
        8 => sampler_uniformity(opts),
        9 => corpus_pipeline(opts),
        10 => linear_cost(opts),
        _ => {
            let mut c = Check::new(None);
            c.fail(format!("no criterion {id}"));
            c
        }
    };
    let elapsed = start.elapsed();
    let mut problems = check.problems;
    if let Some(limit) = check.limit {
        if elapsed > limit {
            problems.push(format!("took {:.1}s, limit {:.0}s", elapsed.as_secs_f64(), limit.as_secs_f64()));
        }
    }
    let passed = problems.is_empty();
    let detail = if passed {
        check.summary
    } else {
        let shown: Vec<_> = problems.iter().take(5).cloned().collect();
        let more = problems.len().saturating_sub(shown.len());
        let mut d = shown.join("; ");
        if more > 0 {
            d.push_str(&format!("; and {more} more"));
        }
        d
    };
    Outcome { id, name: info.name, passed, detail, elapsed }
}

pub fn run_all(opts: &SuiteOptions) -> Vec<Outcome> {
    CRITERIA.iter().map(|c| run_criterion(c.id, opts)).collect()
}

fn shape_totals() -> Check {
    let mut c = Check::new(Some(Duration::from_secs(5)));
    for (i, &want) in SHAPE_TOTALS.iter().enumerate() {
        let g = i + 1;
        c.expect(format_args!("total g={g}"), BigUint::from(want), shape_total(g));
    }
    c.summary = format!("totals {SHAPE_TOTALS:?} for g=1..5");
    c
}

fn kappa_values(opts: &SuiteOptions) -> Check {
    let mut c = Check::new(Some(Duration::from_secs(5)));
    let mut checked = 0;
    for (i, want) in KAPPA.iter().enumerate() {
        let g = i + 1;
        let mut got = kappa_table(g).kappas();
        if opts.fault == Some(Fault::Kappa) && g == 3 {
            got[0] += 1u8;
        }
        c.expect(format_args!("entries g={g}"), want.len(), got.len());
        for (t, (&w, x)) in want.iter().zip(&got).enumerate() {
            c.expect(format_args!("kappa g={g} t={t}"), BigUint::from(w), x.clone());
            checked += 1;
        }
    }
    c.summary = format!("{checked} table entries, kappa_4(5)={}", kappa_table(5).kappa(4));
    c
}

fn polynomial_consistency() -> Check {
    let mut c = Check::new(None);
    let mut coefficients = 0;
    for g in 1..=5 {
        let table = kappa_table(g);
        let poly = shape_polynomial(g);
        for n in 0..=6 * g + 2 {
            let by_recursion = eta(g, n, 0);
            c.expect(format_args!("S_{g} coefficient n={n}"), BigInt::from(by_recursion.clone()), poly.coefficient(n));
            c.expect(format_args!("kappa expansion g={g} n={n}"), by_recursion, shape_count_from_kappa(&table, n));
            coefficients += 1;
        }
        c.expect(format_args!("S_{g}(1)"), BigInt::from(SHAPE_TOTALS[g - 1]), poly.total());
    }
    c.summary = format!("{coefficients} coefficients agree with the eta recursion; S_g(1) matches totals");
    c
}

fn oracle_maps() -> Check {
    let mut c = Check::new(Some(Duration::from_secs(60)));
    let caps = OracleCaps::default();
    for m in 1..=7 {
        let all = match count_maps_by_genus(m, caps) {
            Ok(v) => v,
            Err(e) => {
                c.fail(e.to_string());
                continue;
            }
        };
        for g in 0..=3 {
            let want = epsilon(g, m);
            c.expect(format_args!("all maps m={m} g={g}"), want.clone(), BigUint::from(all.get(g).copied().unwrap_or(0)));
            let pruned = count_maps(m, MapFilter::genus(g), caps).map_or(u64::MAX, |x| x);
            c.expect(format_args!("genus search m={m} g={g}"), want, BigUint::from(pruned));
        }
    }
    for m in 1..=5 {
        let maps = enumerate_maps(m, MapFilter::default(), caps).unwrap_or_default();
        let distinct: HashSet<Vec<usize>> = maps.iter().map(|x| x.alpha().images().to_vec()).collect();
        c.expect(format_args!("distinct maps m={m}"), maps.len(), distinct.len());
    }
    let series = genus_series_from_numerator(1, 3);
    c.expect("epsilon_1(2) from the series", BigInt::from(1), series[2].clone());
    c.expect("epsilon_1(3) from the series", BigInt::from(10), series[3].clone());
    c.summary = "per-genus oracle counts equal epsilon_g(m) for m<=7, g<=3; eps_1(2)=1, eps_1(3)=10".into();
    c
}

fn oracle_shapes(opts: &SuiteOptions) -> Check {
    let mut c = Check::new(Some(Duration::from_secs(30 * 60)));
    let caps = OracleCaps::extended();
    let cases = GENUS_ONE_SHAPES
        .iter()
        .map(|&(n, s)| (1, n, s))
        .chain(GENUS_TWO_SHAPES.iter().filter(|&&(n, _)| n <= opts.max_genus_two_arcs).map(|&(n, s)| (2, n, s)));
    let mut covered = Vec::new();
    for (g, n, want) in cases {
        let maps = match enumerate_shape_maps(n, g, caps) {
            Ok(m) => m,
            Err(e) => {
                c.fail(e.to_string());
                continue;
            }
        };
        c.expect(format_args!("oracle g={g} n={n}"), want, maps.len() as u64);
        c.expect(format_args!("formula g={g} n={n}"), BigUint::from(want), shape_count(g, n));
        let mut words = HashSet::new();
        for m in &maps {
            match Shape::from_planted_map(m) {
                Ok(s) if s.genus() == g && s.pure_arc_count() == n => {
                    words.insert(s.canonical_word());
                }
                Ok(s) => c.fail(format!("g={g} n={n}: map gave genus {} with {} arcs", s.genus(), s.pure_arc_count())),
                Err(e) => c.fail(format!("g={g} n={n}: {e}")),
            }
        }
        c.expect(format_args!("distinct shapes g={g} n={n}"), maps.len(), words.len());
        covered.push(format!("{g}:{n}={want}"));
    }
    c.summary = format!("oracle = S_g coefficients at {}", covered.join(" "));
    c
}

/// Uniform rooted unicellular map with `m` edges.
fn random_map<R: Rng>(m: usize, rng: &mut R) -> UnicellularMap {
    let mut hs: Vec<usize> = (0..2 * m).collect();
    hs.shuffle(rng);
    let mut alpha = vec![0; 2 * m];
    for p in hs.chunks(2) {
        alpha[p[0]] = p[1];
        alpha[p[1]] = p[0];
    }
    let sigma = (0..2 * m).map(|h| alpha[(h + 1) % (2 * m)]).collect();
    UnicellularMap::new(Permutation::new(sigma).expect("permutation"), Permutation::new(alpha).expect("involution"))
        .expect("face (0 1 … 2m-1)")
}

fn random_labels<R: Rng>(map: UnicellularMap, rng: &mut R) -> LabeledMap {
    let vs = map.vertex_order_by_gamma();
    let keep: Vec<_> = vs.into_iter().filter(|_| rng.random_bool(0.5)).collect();
    LabeledMap::new(map, keep).expect("vertex minima")
}

fn surgery_round_trips(opts: &SuiteOptions) -> Check {
    let mut c = Check::new(None);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED_SURGERY);
    let mut slice_first = [0usize; 5];
    let mut glue_first = [0usize; 5];
    let mut failures = 0usize;
    let mut note = |c: &mut Check, msg: String| {
        failures += 1;
        if failures <= 5 {
            c.fail(msg);
        }
    };
    // glue after slice, on maps of genus 1..=4
    while slice_first.iter().sum::<usize>() < opts.round_trips {
        let map = random_map(rng.random_range(2..=9), &mut rng);
        let g = map.genus();
        if !(1..=4).contains(&g) {
            continue;
        }
        let lm = random_labels(map.clone(), &mut rng);
        let tris = map.trisections();
        let tau = tris[rng.random_range(0..tris.len())];
        slice_first[g] += 1;
        let x = match xi(&lm, tau) {
            Ok(x) => x,
            Err(e) => {
                note(&mut c, format!("slice g={g} tau={tau}: {e}"));
                continue;
            }
        };
        match lambda(&x.map, &x.vertices, x.sliced_labeled) {
            Ok(back) if back.map.map() == &map && back.tau == tau && back.map.labels() == lm.labels() => {}
            Ok(_) => note(&mut c, format!("glue(slice) differs for {map}")),
            Err(e) => note(&mut c, format!("glue(slice) g={g}: {e}")),
        }
    }
    // slice after glue, ending at genus 1..=4
    while glue_first.iter().sum::<usize>() < opts.round_trips {
        let map = random_map(rng.random_range(2..=9), &mut rng);
        let g0 = map.genus();
        let vs = map.vertex_order_by_gamma();
        if vs.len() < 3 || g0 >= 4 {
            continue;
        }
        let k_max = ((vs.len() - 1) / 2).min(4 - g0);
        let k = rng.random_range(1..=k_max);
        let mut pick = sample_subset(&mut rng, vs.len(), 2 * k + 1).into_vec();
        pick.sort_unstable();
        let chosen: Vec<_> = pick.iter().map(|&i| vs[i]).collect();
        let lm = random_labels(map.clone(), &mut rng);
        let label_new = rng.random_bool(0.5);
        glue_first[g0 + k] += 1;
        let glued = match lambda(&lm, &chosen, label_new) {
            Ok(x) => x,
            Err(e) => {
                note(&mut c, format!("glue {chosen:?}: {e}"));
                continue;
            }
        };
        if glued.map.genus() != g0 + k {
            note(&mut c, format!("glue raised genus {g0} to {}", glued.map.genus()));
            continue;
        }
        let rest: Vec<_> = lm.labels().iter().copied().filter(|v| !chosen.contains(v)).collect();
        match xi(&glued.map, glued.tau) {
            Ok(x) if x.map.map() == &map && x.vertices == chosen && x.map.labels() == rest && x.sliced_labeled == label_new => {}
            Ok(_) => note(&mut c, format!("slice(glue) differs for {map} at {chosen:?}")),
            Err(e) => note(&mut c, format!("slice(glue): {e}")),
        }
    }
    if failures > 5 {
        c.fail(format!("{failures} round-trip failures in total"));
    }
    for g in 1..=4 {
        if slice_first[g] == 0 || glue_first[g] == 0 {
            c.fail(format!("no instance at genus {g}"));
        }
    }
    // exactly 2g trisections on every map with at most 7 edges
    let mut maps = 0u64;
    for m in 1..=7 {
        let caps = OracleCaps::default();
        let total = count_maps_where(m, MapFilter::default(), caps, |_| true).unwrap_or(0);
        let bad = count_maps_where(m, MapFilter::default(), caps, |x| x.trisections().len() != 2 * x.genus())
            .unwrap_or(u64::MAX);
        c.expect(format_args!("maps with a wrong trisection count, m={m}"), 0, bad);
        let want: u64 = (1..2 * m as u64).step_by(2).product();
        c.expect(format_args!("maps enumerated, m={m}"), want, total);
        maps += total;
    }
    c.summary = format!(
        "slice-then-glue {:?} and glue-then-slice {:?} instances by genus 1..4, 0 failures; 2g trisections on all {maps} maps with m<=7",
        &slice_first[1..],
        &glue_first[1..]
    );
    c
}

fn remy_restriction() -> Check {
    let mut c = Check::new(None);
    let mut trees = 0usize;
    for n in 0..=8 {
        for k in 0..=n + 1 {
            let class = match enumerate_class_trees(n, k) {
                Ok(t) => t,
                Err(e) => {
                    c.fail(e.to_string());
                    continue;
                }
            };
            c.expect(format_args!("class trees n={n} k={k}"), eta0(n, k), BigUint::from(class.len()));
            for t in &class {
                let sectors = t.shape_sectors().map_or(-1, |s| s.len() as i64);
                c.expect(format_args!("shape-sectors of {t}"), 2 * k as i64 - n as i64 - 2, sectors);
            }
            trees += class.len();
        }
    }
    let mut reach = Vec::new();
    for k in 1..=5 {
        let cores = all_plane_trees(k - 1).unwrap_or_default();
        for extra in 0..k {
            let n = k - 1 + extra;
            let mut reached = HashSet::new();
            for core in &cores {
                let Ok(sectors) = core.shape_sectors() else {
                    c.fail(format!("core {core} outside the class"));
                    continue;
                };
                for pick in subsets(sectors.len(), extra) {
                    let chosen: Vec<_> = pick.iter().map(|&i| sectors[i]).collect();
                    match core.insert_unlabeled_at(&chosen) {
                        Ok(t) if t.in_shape_class() => {
                            reached.insert(t.normalized());
                        }
                        Ok(t) => c.fail(format!("{t} left the class")),
                        Err(e) => c.fail(e.to_string()),
                    }
                }
            }
            c.expect(format_args!("reachable n={n} k={k}"), eta0(n, k), BigUint::from(reached.len()));
            let class: HashSet<_> =
                enumerate_class_trees(n, k).unwrap_or_default().iter().map(|t| t.normalized()).collect();
            if class != reached {
                c.fail(format!("reachable trees differ from the class at n={n} k={k}"));
            }
            reach.push(reached.len());
        }
    }
    c.summary = format!("2k-n-2 shape-sectors on all {trees} class trees (n<=8); reachable = eta0 for k<=5");
    c
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn sampler_uniformity(opts: &SuiteOptions) -> Check {
    let mut c = Check::new(Some(Duration::from_secs(10 * 60)));
    let mut parts = Vec::new();
    for (g, samples, seed) in [(1, opts.genus_one_samples, SEED_GENUS_ONE), (2, opts.genus_two_samples, SEED_GENUS_TWO)] {
        let sampler = match ShapeSampler::new(g, None) {
            Ok(s) => s,
            Err(e) => {
                c.fail(e.to_string());
                continue;
            }
        };
        let tally = match tally_indices(&sampler, seed, 0..samples) {
            Ok(t) => t,
            Err(e) => {
                c.fail(format!("g={g}: {e}"));
                continue;
            }
        };
        let classes = SHAPE_TOTALS[g - 1] as u64;
        for w in tally.by_word.keys() {
            match Shape::from_word(w) {
                Ok(s) if s.genus() == g => {}
                _ => c.fail(format!("g={g}: sampled word {w} is not a genus-{g} shape")),
            }
        }
        if tally.by_word.len() as u64 > classes {
            c.fail(format!("g={g}: {} distinct shapes, only {classes} exist", tally.by_word.len()));
        }
        let counts: Vec<u64> = tally.by_word.values().copied().collect();
        let test = if g == 1 {
            c.expect("g=1 distinct shapes", classes, counts.len() as u64);
            chi_square_uniform(&counts, classes)
        } else {
            multiplicity_gof(&counts, classes, samples)
        };
        match test {
            Some(t) if t.passes(ALPHA) => parts.push(format!("g={g} N={samples} distinct={} {t}", counts.len())),
            Some(t) => c.fail(format!("g={g} N={samples}: {t} below alpha={}", ALPHA.0)),
            None => c.fail(format!("g={g}: test not applicable")),
        }
    }
    c.summary = parts.join("; ");
    c
}

fn corpus_pipeline(opts: &SuiteOptions) -> Check {
    let mut c = Check::new(None);
    let cfg = SamplerConfig::new(2, SEED_CORPUS, opts.corpus_samples);
    let mut text = Vec::new();
    if let Err(e) = commands::sample(&cfg, SampleFormat::Word, false, &mut text) {
        c.fail(format!("sample: {e}"));
        return c;
    }
    let text = String::from_utf8(text).unwrap_or_default();
    let (corpus, errors) = Corpus::from_text(&text);
    if !errors.is_empty() {
        c.fail(format!("{} unparsed lines", errors.len()));
    }
    let mut report = Vec::new();
    if let Err(e) = corpus.write_report(&mut report) {
        c.fail(e.to_string());
    }
    let multiplicities = parse_multiplicities(&String::from_utf8(report).unwrap_or_default());
    let total = opts.corpus_samples as u64;
    c.expect("genera in corpus", "2".to_string(), {
        let gs: Vec<String> = corpus.by_genus.keys().map(|g| g.to_string()).collect();
        gs.join(",")
    });
    c.expect("structures of genus 2", total, multiplicities.iter().filter(|((g, _), _)| *g == 2).map(|(_, v)| v).sum());
    let support: Vec<usize> = arc_support(2).collect();
    let observed: Vec<u64> = support.iter().map(|&n| multiplicities.get(&(2, n)).copied().unwrap_or(0)).collect();
    let expected: Vec<BigRational> = support.iter().map(|&n| prob_arcs(2, n)).collect();
    let normalized: BTreeMap<usize, String> = support
        .iter()
        .zip(&observed)
        .map(|(&n, &o)| (n, format!("{:.4}", o as f64 / total as f64)))
        .collect();
    match chi_square_rational(&observed, &expected) {
        Some(t) if t.passes(ALPHA) => {
            c.summary = format!("N={total} normalized multiplicities {normalized:?} vs P_2(n): {t}");
        }
        Some(t) => c.fail(format!("{t} below alpha={}; observed {observed:?}", ALPHA.0)),
        None => c.fail("test not applicable".into()),
    }
    c
}

/// Least-squares line through `points`; returns `(slope, intercept, r²)`.
pub fn linear_fit(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (slope, my - slope * mx, r2)
}

fn linear_cost(opts: &SuiteOptions) -> Check {
    let mut c = Check::new(None);
    // arcs -> (total nanoseconds, samples)
    let mut by_arcs: BTreeMap<usize, (f64, u64)> = BTreeMap::new();
    for g in 1..=5 {
        let sampler = match ShapeSampler::new(g, None) {
            Ok(s) => s,
            Err(e) => {
                c.fail(e.to_string());
                continue;
            }
        };
        for i in 0..opts.timing_samples / 10 {
            let _ = sampler.sample(&mut sample_rng(SEED_TIMING ^ 1, i));
        }
        for i in 0..opts.timing_samples {
            let mut rng = sample_rng(SEED_TIMING, i + (g as u64) * opts.timing_samples);
            let start = Instant::now();
            let s = sampler.sample(&mut rng);
            let ns = start.elapsed().as_nanos() as f64;
            match s {
                Ok(s) => {
                    let e = by_arcs.entry(s.arcs).or_default();
                    e.0 += ns;
                    e.1 += 1;
                }
                Err(e) => c.fail(format!("g={g}: {e}")),
            }
        }
    }
    let points: Vec<(f64, f64)> =
        by_arcs.iter().filter(|(_, v)| v.1 >= 20).map(|(&n, &(t, k))| (n as f64, t / k as f64)).collect();
    let (slope, intercept, r2) = linear_fit(&points);
    if !(r2 >= MIN_R_SQUARED) {
        c.fail(format!("time vs arcs R^2={r2:.3} < {MIN_R_SQUARED}"));
    }
    if slope <= 0.0 {
        c.fail(format!("time does not grow with the arc count (slope {slope:.1} ns/arc)"));
    }
    let mut audited = 0;
    for (file, src) in audit::EXACT_SOURCES {
        for (line, text) in audit::float_lines(src) {
            c.fail(format!("floating point in {file}:{line}: {}", text.trim()));
        }
        audited += 1;
    }
    c.summary = format!(
        "{} samples/genus, mean time over {} arc counts: slope={slope:.0} ns/arc intercept={intercept:.0} ns R^2={r2:.3}; no floats in {audited} exact-path sources",
        opts.timing_samples,
        points.len()
    );
    c
}
