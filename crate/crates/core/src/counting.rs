//! Exact enumeration of unicellular maps and shapes.
//!
//! Every quantity here is an arbitrary-precision integer or rational; `n`
//! always counts pure arcs (the rainbow is excluded), so a shape with `n` arcs
//! corresponds to a planted map with `n + 1` edges.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::surgery::{GlueTrace, TraceStep};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` with a possibly negative top index treated as zero.
fn binomial_signed(n: i64, k: usize) -> BigUint {
    if n < 0 {
        BigUint::zero()
    } else {
        binomial(n as usize, k)
    }
}

/// `Cat(n) = C(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn int_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn rational_to_uint(x: &BigRational) -> Option<BigUint> {
    if x.is_integer() && !x.is_negative() {
        x.to_integer().to_biguint()
    } else {
        None
    }
}

/// Number of unicellular maps of genus `g` with `n` edges, through the
/// trisection recursion
/// `2g ε_g(n) = Σ_{k=1..g} C(n+1-2(g-k), 2k+1) ε_{g-k}(n)` from `ε_0(n) = Cat(n)`.
pub fn epsilon(g: usize, n: usize) -> BigUint {
    let mut table: Vec<BigUint> = Vec::with_capacity(g + 1);
    table.push(catalan(n));
    for h in 1..=g {
        let mut acc = BigUint::zero();
        for k in 1..=h {
            let top = n as i64 + 1 - 2 * (h - k) as i64;
            acc += binomial_signed(top, 2 * k + 1) * &table[h - k];
        }
        let (q, r) = acc.div_rem(&BigUint::from(2 * h));
        assert!(r.is_zero(), "trisection recursion not divisible at g={h}, n={n}");
        table.push(q);
    }
    table.pop().unwrap()
}

/// Same count as [`epsilon`], summed over genus chains `0 = g_0 < … < g_r = g`
/// of the products `∏ C(n+1-2g_{i-1}, 2(g_i-g_{i-1})+1) / (2 g_i)` times `Cat(n)`.
pub fn epsilon_by_chains(g: usize, n: usize) -> BigUint {
    fn walk(from: usize, g: usize, n: usize, weight: BigRational, acc: &mut BigRational) {
        if from == g {
            *acc += weight;
            return;
        }
        for next in from + 1..=g {
            let c = binomial_signed(n as i64 + 1 - 2 * from as i64, 2 * (next - from) + 1);
            if c.is_zero() {
                continue;
            }
            let w = &weight * ratio(c, BigUint::from(2 * next));
            walk(next, g, n, w, acc);
        }
    }
    let mut acc = BigRational::zero();
    walk(0, g, n, BigRational::one(), &mut acc);
    rational_to_uint(&(acc * int_rational(&catalan(n)))).expect("chain sum is an integer")
}

/// Unicellular maps of genus `g`, `n` edges and `k` labeled vertices.
///
/// Genus 0 is `C(n+1, k) Cat(n)`; higher genus follows the labeled recursion
/// `2g ε_g^{(k)} = Σ_t C(k+2t+1, 2t+1) ε_{g-t}^{(k+2t+1)} + C(k+2t, 2t+1) ε_{g-t}^{(k+2t)}`.
pub fn epsilon_labeled(g: usize, n: usize, k: usize) -> BigUint {
    fn go(g: usize, n: usize, k: usize, memo: &mut HashMap<(usize, usize), BigUint>) -> BigUint {
        if g == 0 {
            return binomial(n + 1, k) * catalan(n);
        }
        if let Some(v) = memo.get(&(g, k)) {
            return v.clone();
        }
        let mut acc = BigUint::zero();
        for t in 1..=g {
            let d = 2 * t + 1;
            acc += binomial(k + d, d) * go(g - t, n, k + d, memo);
            acc += binomial(k + d - 1, d) * go(g - t, n, k + d - 1, memo);
        }
        let (q, r) = acc.div_rem(&BigUint::from(2 * g));
        assert!(r.is_zero(), "labeled recursion not divisible at g={g}, k={k}");
        memo.insert((g, k), q.clone());
        q
    }
    go(g, n, k, &mut HashMap::new())
}

/// Coefficients `0..=n_max` of `(1 - 4z)^{-odd/2}` for odd `odd`.
pub fn inverse_sqrt_power_series(odd: usize, n_max: usize) -> Vec<BigUint> {
    assert!(odd % 2 == 1, "exponent numerator must be odd");
    let mut out = Vec::with_capacity(n_max + 1);
    let mut c = BigUint::one();
    out.push(c.clone());
    for j in 1..=n_max {
        c = c * (2 * (odd + 2 * (j - 1))) / j;
        out.push(c.clone());
    }
    out
}

/// Series coefficients (degrees `0..=n_max`) of the generating functions of
/// plane trees with `k'` labeled vertices, for every `k' ≤ k`.
///
/// Solves `T(z,u) = (1+u) + z T(z,u)^2` degree by degree, so no closed form
/// is used.
pub fn c0k_table(k: usize, n_max: usize) -> Vec<Vec<BigUint>> {
    let mut c = vec![vec![BigUint::zero(); n_max + 1]; k + 1];
    for n in 0..=n_max {
        for kk in 0..=k {
            let mut acc = if n == 0 && kk <= 1 { BigUint::one() } else { BigUint::zero() };
            if n > 0 {
                for i in 0..=kk {
                    for j in 0..n {
                        if !c[i][j].is_zero() && !c[kk - i][n - 1 - j].is_zero() {
                            acc += &c[i][j] * &c[kk - i][n - 1 - j];
                        }
                    }
                }
            }
            c[kk][n] = acc;
        }
    }
    c
}

/// Series coefficients of `C_0^{(k)}(z)` up to `z^{n_max}`.
pub fn c0k_coefficients(k: usize, n_max: usize) -> Vec<BigUint> {
    c0k_table(k, n_max).pop().unwrap()
}

/// `Cat(k-1) z^{k-1} (1-4z)^{-(2k-1)/2}` expanded up to `z^{n_max}`, for `k ≥ 1`.
pub fn c0k_closed_form(k: usize, n_max: usize) -> Vec<BigUint> {
    assert!(k >= 1);
    let series = inverse_sqrt_power_series(2 * k - 1, n_max);
    let cat = catalan(k - 1);
    (0..=n_max)
        .map(|n| if n + 1 < k { BigUint::zero() } else { &cat * &series[n + 1 - k] })
        .collect()
}

/// Polynomial with arbitrary-precision integer coefficients; zero
/// coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPolynomial {
    coefficients: BTreeMap<usize, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(coefficient: BigInt, degree: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coefficient);
        p
    }

    /// `a + b z`.
    pub fn linear(a: i64, b: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(0, BigInt::from(a));
        p.add_term(1, BigInt::from(b));
        p
    }

    pub fn from_coefficients<I: IntoIterator<Item = (usize, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, degree: usize, coefficient: BigInt) {
        if coefficient.is_zero() {
            return;
        }
        let slot = self.coefficients.entry(degree).or_insert_with(BigInt::zero);
        *slot += coefficient;
        if slot.is_zero() {
            self.coefficients.remove(&degree);
        }
    }

    pub fn coefficient(&self, degree: usize) -> BigInt {
        self.coefficients.get(&degree).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coefficients.iter().map(|(&d, c)| (d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.keys().next_back().copied()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.coefficients.keys().next().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&a, ca) in &self.coefficients {
            for (&b, cb) in &other.coefficients {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&d, c) in &other.coefficients {
            out.add_term(d, c.clone());
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::monomial(BigInt::one(), 0);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, by: &BigInt) -> Self {
        Self::from_coefficients(self.coefficients.iter().map(|(&d, c)| (d, c * by)))
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut last = self.degree().unwrap_or(0);
        for (&d, c) in self.coefficients.iter().rev() {
            acc *= num_traits::pow(z.clone(), last - d);
            acc += c;
            last = d;
        }
        acc * num_traits::pow(z.clone(), last)
    }

    /// Sum of the coefficients.
    pub fn total(&self) -> BigInt {
        self.coefficients.values().sum()
    }

    /// `name(z) = …`, e.g. `S_1(z) = z^2 + 2*z^3 + z^4`.
    pub fn named(&self, name: &str) -> String {
        format!("{name}(z) = {self}")
    }
}

impl fmt::Display for IntPolynomial {
    /// Ascending degree: `126 - 84*z`, `z^2 + 2*z^3 + z^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&d, c)) in self.coefficients.iter().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            match (d, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => f.write_str("z")?,
                (1, false) => write!(f, "{magnitude}*z")?,
                (_, true) => write!(f, "z^{d}")?,
                (_, false) => write!(f, "{magnitude}*z^{d}")?,
            }
        }
        Ok(())
    }
}

/// `a_t` and `κ_t = a_t Cat(2g+t)` for one genus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaTable {
    pub genus: usize,
    /// Indexed by `t`, `0 ≤ t ≤ g-1`.
    pub entries: Vec<KappaEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaEntry {
    pub a: BigRational,
    pub kappa: BigUint,
}

impl KappaTable {
    pub fn a(&self, t: usize) -> &BigRational {
        &self.entries[t].a
    }

    pub fn kappa(&self, t: usize) -> &BigUint {
        &self.entries[t].kappa
    }

    pub fn kappas(&self) -> Vec<BigUint> {
        self.entries.iter().map(|e| e.kappa.clone()).collect()
    }
}

/// Expansion of `2g ε_g^{(K)}` into genus-0 labeled terms:
/// `ε_g^{(K)} = Σ_w coef[w] ε_0^{(w)}`.
fn labeled_expansion(
    g: usize,
    k: usize,
    memo: &mut HashMap<(usize, usize), BTreeMap<usize, BigRational>>,
) -> BTreeMap<usize, BigRational> {
    if g == 0 {
        return BTreeMap::from([(k, BigRational::one())]);
    }
    if let Some(v) = memo.get(&(g, k)) {
        return v.clone();
    }
    let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
    let inv = BigRational::new(BigInt::one(), BigInt::from(2 * g));
    for t in 1..=g {
        let d = 2 * t + 1;
        for (labels, c) in [(k + d, binomial(k + d, d)), (k + d - 1, binomial(k + d - 1, d))] {
            if c.is_zero() {
                continue;
            }
            let factor = &inv * int_rational(&c);
            for (w, coef) in labeled_expansion(g - t, labels, memo) {
                *out.entry(w).or_insert_with(BigRational::zero) += &factor * coef;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    memo.insert((g, k), out.clone());
    out
}

/// `a_t` and `κ_t` for `0 ≤ t < g`, obtained by unrolling the labeled
/// recursion down to genus-0 labeled trees.
pub fn kappa_table(g: usize) -> KappaTable {
    assert!(g >= 1, "kappa table needs genus ≥ 1");
    let expansion = labeled_expansion(g, 0, &mut HashMap::new());
    let entries = (0..g)
        .map(|t| {
            let a = expansion.get(&(2 * g + t + 1)).cloned().unwrap_or_else(BigRational::zero);
            let kappa = rational_to_uint(&(&a * int_rational(&catalan(2 * g + t))))
                .unwrap_or_else(|| panic!("kappa_{t} at genus {g} is not an integer"));
            KappaEntry { a, kappa }
        })
        .collect();
    debug_assert!(expansion.keys().all(|&w| (2 * g + 1..=3 * g).contains(&w)));
    KappaTable { genus: g, entries }
}

/// `Σ_t κ_t (1-4z)^{g-1-t}`, expanded.
pub fn pg_polynomial(g: usize) -> IntPolynomial {
    let table = kappa_table(g);
    let mut out = IntPolynomial::zero();
    for (t, e) in table.entries.iter().enumerate() {
        let term = IntPolynomial::linear(1, -4).pow(g - 1 - t).scale(&BigInt::from(e.kappa.clone()));
        out = out.add(&term);
    }
    out
}

/// `Σ_t κ_t z^t (1-4z)^{g-1-t}`: the numerator `N_g` with
/// `C_g(z) = z^{2g} N_g(z) / (1-4z)^{(6g-1)/2}`.
pub fn harer_zagier_numerator(g: usize) -> IntPolynomial {
    let table = kappa_table(g);
    let mut out = IntPolynomial::zero();
    for (t, e) in table.entries.iter().enumerate() {
        let term = IntPolynomial::linear(1, -4)
            .pow(g - 1 - t)
            .mul(&IntPolynomial::monomial(BigInt::from(e.kappa.clone()), t));
        out = out.add(&term);
    }
    out
}

/// Coefficients of `z^{2g} N_g(z) (1-4z)^{-(6g-1)/2}` for degrees `0..=n_max`.
pub fn genus_series_from_numerator(g: usize, n_max: usize) -> Vec<BigInt> {
    let numerator = harer_zagier_numerator(g);
    let series = inverse_sqrt_power_series(6 * g - 1, n_max);
    (0..=n_max)
        .map(|n| {
            let mut acc = BigInt::zero();
            for (d, c) in numerator.terms() {
                if n >= 2 * g + d {
                    acc += c * BigInt::from(series[n - 2 * g - d].clone());
                }
            }
            acc
        })
        .collect()
}

/// Plane trees with `n` edges, `k` labeled vertices and every unlabeled
/// vertex of degree ≥ 3 (the root counts its plant half-edge):
/// `C(k-1, n+1-k) Cat(k-1)`.
pub fn eta0(n: usize, k: usize) -> BigUint {
    if k == 0 || n + 1 < k {
        return BigUint::zero();
    }
    binomial(k - 1, n + 1 - k) * catalan(k - 1)
}

/// `η_g(n, k)` by the shape recursion
/// `2g η_g(n,k) = Σ_t C(k+2t+1, 2t+1) η_{g-t}(n,k+2t+1) + C(k+2t, 2t+1) η_{g-t}(n,k+2t)`.
pub fn eta(g: usize, n: usize, k: usize) -> BigUint {
    EtaTable::new(n).get(g, k)
}

/// Memo for `η_·(n, ·)` at a fixed arc count.
pub struct EtaTable {
    n: usize,
    memo: HashMap<(usize, usize), BigUint>,
}

impl EtaTable {
    pub fn new(n: usize) -> Self {
        Self { n, memo: HashMap::new() }
    }

    pub fn get(&mut self, g: usize, k: usize) -> BigUint {
        if g == 0 {
            return eta0(self.n, k);
        }
        if let Some(v) = self.memo.get(&(g, k)) {
            return v.clone();
        }
        let mut acc = BigUint::zero();
        for t in 1..=g {
            let d = 2 * t + 1;
            let c1 = binomial(k + d, d);
            if !c1.is_zero() {
                acc += c1 * self.get(g - t, k + d);
            }
            let c2 = binomial(k + d - 1, d);
            if !c2.is_zero() {
                acc += c2 * self.get(g - t, k + d - 1);
            }
        }
        let (q, r) = acc.div_rem(&BigUint::from(2 * g));
        assert!(r.is_zero(), "shape recursion not divisible at g={g}, n={}, k={k}", self.n);
        self.memo.insert((g, k), q.clone());
        q
    }
}

/// Arc counts carrying genus-`g` shapes: `2g ..= 6g-2`.
pub fn arc_support(g: usize) -> std::ops::RangeInclusive<usize> {
    if g == 0 {
        return 1..=0;
    }
    2 * g..=2 * (3 * g - 1)
}

/// Number of genus-`g` shapes with `n` pure arcs.
pub fn shape_count(g: usize, n: usize) -> BigUint {
    eta(g, n, 0)
}

/// `η_g(n, 0)` reassembled from the κ-table: `Σ_t a_t η_0(n, 2g+t+1)`.
pub fn shape_count_from_kappa(table: &KappaTable, n: usize) -> BigUint {
    let g = table.genus;
    let mut acc = BigRational::zero();
    for t in 0..g {
        acc += table.a(t) * int_rational(&eta0(n, 2 * g + t + 1));
    }
    rational_to_uint(&acc).expect("shape count is a nonnegative integer")
}

/// Total number of genus-`g` shapes.
pub fn shape_total(g: usize) -> BigUint {
    arc_support(g).map(|n| shape_count(g, n)).sum()
}

/// `S_g(z) = Σ_t κ_t z^{2g+t} (1+z)^{2g+t}`.
pub fn shape_polynomial(g: usize) -> IntPolynomial {
    let table = kappa_table(g);
    shape_polynomial_from_table(&table)
}

pub fn shape_polynomial_from_table(table: &KappaTable) -> IntPolynomial {
    let g = table.genus;
    let mut out = IntPolynomial::zero();
    for (t, e) in table.entries.iter().enumerate() {
        let e_deg = 2 * g + t;
        let term = IntPolynomial::linear(1, 1)
            .pow(e_deg)
            .mul(&IntPolynomial::monomial(BigInt::from(e.kappa.clone()), e_deg));
        out = out.add(&term);
    }
    out
}

/// `ℙ_g(n)`: probability that a uniform genus-`g` shape has `n` arcs.
pub fn prob_arcs(g: usize, n: usize) -> BigRational {
    ratio(shape_count(g, n), shape_total(g))
}

/// `ℙ_g(n, k) = a_{k-2g-1} η_0(n, k) / η_g(n, 0)` for `2g+1 ≤ k ≤ 3g`.
pub fn prob_labels(g: usize, n: usize, k: usize) -> BigRational {
    let table = kappa_table(g);
    prob_labels_with(&table, n, k)
}

pub fn prob_labels_with(table: &KappaTable, n: usize, k: usize) -> BigRational {
    let g = table.genus;
    if !(2 * g + 1..=3 * g).contains(&k) {
        return BigRational::zero();
    }
    let total = shape_count(g, n);
    if total.is_zero() {
        return BigRational::zero();
    }
    table.a(k - 2 * g - 1) * ratio(eta0(n, k), total)
}

/// One possible glue step out of a state `(genus, labels)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepOption {
    /// Genus after the step.
    pub genus: usize,
    /// Whether the glued vertex keeps a label.
    pub labeled: bool,
    /// Number of labeled vertices glued, `2(genus - previous) + 1`.
    pub glued: usize,
    /// Exact transition probability.
    pub probability: BigRational,
}

/// Weights of all glue paths from genus-0 trees with `K` labels to an
/// unlabeled genus-`g` map.
///
/// A path glues `d = 2(G'-G)+1` of the `K` labeled vertices into one vertex
/// that keeps a label or not, with weight `C(K, d) / (2G')`. `W(G, K)` is the
/// total weight of paths from state `(G, K)` to `(g, 0)`; `W(0, 2g+t+1) = a_t`.
#[derive(Clone, Debug)]
pub struct TraceTable {
    genus: usize,
    weights: HashMap<(usize, usize), BigRational>,
}

impl TraceTable {
    pub fn new(g: usize) -> Self {
        let mut weights = HashMap::new();
        // Labels never exceed 3g on a path that can finish.
        let k_max = 3 * g;
        for big_g in (0..=g).rev() {
            for k in 0..=k_max {
                let w = if big_g == g {
                    if k == 0 { BigRational::one() } else { BigRational::zero() }
                } else {
                    let mut acc = BigRational::zero();
                    for next in big_g + 1..=g {
                        let d = 2 * (next - big_g) + 1;
                        if d > k {
                            break;
                        }
                        let c = ratio(binomial(k, d), BigUint::from(2 * next));
                        for labeled in [false, true] {
                            let after = k - d + usize::from(labeled);
                            if let Some(w) = weights.get(&(next, after)) {
                                if !BigRational::is_zero(w) {
                                    acc += &c * w;
                                }
                            }
                        }
                    }
                    acc
                };
                weights.insert((big_g, k), w);
            }
        }
        Self { genus: g, weights }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn weight(&self, genus: usize, labels: usize) -> BigRational {
        self.weights.get(&(genus, labels)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `a_t` recovered as the total path weight from `2g+t+1` labels.
    pub fn a(&self, t: usize) -> BigRational {
        self.weight(0, 2 * self.genus + t + 1)
    }

    /// Transition distribution out of `(genus, labels)`; empty at the target.
    pub fn step_options(&self, genus: usize, labels: usize) -> Vec<StepOption> {
        let here = self.weight(genus, labels);
        if here.is_zero() || genus == self.genus {
            return Vec::new();
        }
        let mut out = Vec::new();
        for next in genus + 1..=self.genus {
            let d = 2 * (next - genus) + 1;
            if d > labels {
                break;
            }
            let c = ratio(binomial(labels, d), BigUint::from(2 * next));
            for labeled in [false, true] {
                let w = self.weight(next, labels - d + usize::from(labeled));
                if w.is_zero() {
                    continue;
                }
                out.push(StepOption {
                    genus: next,
                    labeled,
                    glued: d,
                    probability: &c * w / &here,
                });
            }
        }
        out
    }

    /// Every glue trace starting from `2g+t+1` labels, with its probability.
    pub fn trace_distribution(&self, t: usize) -> Vec<(GlueTrace, BigRational)> {
        let mut out = Vec::new();
        let start = 2 * self.genus + t + 1;
        let mut path = Vec::new();
        self.collect(0, start, 0, BigRational::one(), &mut path, &mut out);
        out
    }

    fn collect(
        &self,
        genus: usize,
        labels: usize,
        t_now: usize,
        p: BigRational,
        path: &mut Vec<TraceStep>,
        out: &mut Vec<(GlueTrace, BigRational)>,
    ) {
        if genus == self.genus {
            out.push((GlueTrace::new(path.clone()).expect("generated trace is valid"), p));
            return;
        }
        for opt in self.step_options(genus, labels) {
            path.push(TraceStep { genus: opt.genus, t: t_now });
            self.collect(
                opt.genus,
                labels - opt.glued + usize::from(opt.labeled),
                t_now + usize::from(opt.labeled),
                &p * &opt.probability,
                path,
                out,
            );
            path.pop();
        }
    }
}

/// `trace_distribution(g, t)`: all glue traces for `k = 2g+t+1` labels with
/// their exact probabilities.
pub fn trace_distribution(g: usize, t: usize) -> Vec<(GlueTrace, BigRational)> {
    TraceTable::new(g).trace_distribution(t)
}

/// `genus,t,a_num,a_den,kappa` rows, header included.
pub fn kappa_csv(tables: &[KappaTable]) -> String {
    let mut out = String::from("genus,t,a_num,a_den,kappa\n");
    for table in tables {
        for (t, e) in table.entries.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                table.genus,
                t,
                e.a.numer(),
                e.a.denom(),
                e.kappa
            ));
        }
    }
    out
}

/// `genus,n,count` rows, header included.
pub fn shape_counts_csv(rows: &[(usize, usize, BigUint)]) -> String {
    let mut out = String::from("genus,n,count\n");
    for (g, n, c) in rows {
        out.push_str(&format!("{g},{n},{c}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(x: u128) -> BigUint {
        BigUint::from(x)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(2), u(2));
        assert_eq!(catalan(4), u(14));
        assert_eq!(catalan(5), u(42));
        assert_eq!(binomial(3, 5), u(0));
    }

    #[test]
    fn epsilon_small() {
        assert_eq!(epsilon(0, 3), u(5));
        assert_eq!(epsilon(1, 2), u(1));
        assert_eq!(epsilon(1, 3), u(10));
        // 2·ε_1(3) = C(4,3)·ε_0(3)
        assert_eq!(u(2) * epsilon(1, 3), binomial(4, 3) * epsilon(0, 3));
        assert_eq!(epsilon(2, 4), u(21));
    }

    #[test]
    fn chains_agree_with_recursion() {
        for g in 0..=3 {
            for n in 0..=10 {
                assert_eq!(epsilon_by_chains(g, n), epsilon(g, n), "g={g} n={n}");
                assert_eq!(epsilon_labeled(g, n, 0), epsilon(g, n), "g={g} n={n}");
            }
        }
    }

    #[test]
    fn c0k_series() {
        let c0 = c0k_coefficients(0, 5);
        assert_eq!(c0, [1u32, 1, 2, 5, 14, 42].map(BigUint::from));
        let c1 = c0k_coefficients(1, 3);
        assert_eq!(c1, [1u32, 2, 6, 20].map(BigUint::from));
        assert_eq!(c0k_coefficients(2, 2)[2], u(6));
        for k in 1..=6 {
            let rec = c0k_coefficients(k, 12);
            assert_eq!(rec, c0k_closed_form(k, 12), "k={k}");
            for (n, c) in rec.iter().enumerate() {
                assert_eq!(*c, binomial(n + 1, k) * catalan(n));
            }
        }
    }

    #[test]
    fn kappa_small_genera() {
        let t1 = kappa_table(1);
        assert_eq!(t1.a(0), &q(1, 2));
        assert_eq!(t1.kappas(), vec![u(1)]);
        let t2 = kappa_table(2);
        assert_eq!(t2.a(0), &q(3, 2));
        assert_eq!(t2.a(1), &q(5, 2));
        assert_eq!(t2.kappas(), vec![u(21), u(105)]);
        assert_eq!(kappa_table(3).kappas(), vec![u(1485), u(18018), u(50050)]);
    }

    #[test]
    fn kappa_integral_through_genus_six() {
        for g in 1..=6 {
            assert_eq!(kappa_table(g).entries.len(), g);
        }
    }

    #[test]
    fn pg_literal_and_numerator() {
        assert_eq!(pg_polynomial(1).to_string(), "1");
        assert_eq!(pg_polynomial(2).to_string(), "126 - 84*z");
        assert_eq!(harer_zagier_numerator(2).to_string(), "21 + 21*z");
        for g in 1..=3 {
            let series = genus_series_from_numerator(g, 12);
            for (n, c) in series.iter().enumerate() {
                assert_eq!(*c, BigInt::from(epsilon(g, n)), "g={g} n={n}");
            }
        }
        // the literal form over the same denominator misses from genus 2 on
        let literal = |g: usize, n: usize| {
            let series = inverse_sqrt_power_series(6 * g - 1, n);
            pg_polynomial(g)
                .terms()
                .filter(|&(d, _)| n >= 2 * g + d)
                .map(|(d, c)| c * BigInt::from(series[n - 2 * g - d].clone()))
                .sum::<BigInt>()
        };
        assert_eq!(literal(1, 5), BigInt::from(epsilon(1, 5)));
        assert_eq!(literal(2, 4), BigInt::from(126));
        assert_eq!(epsilon(2, 4), u(21));
        assert!((4..=10).all(|n| literal(2, n) != BigInt::from(epsilon(2, n))));
    }

    #[test]
    fn eta0_values() {
        assert_eq!(eta0(2, 3), u(2));
        assert_eq!(eta0(4, 3), u(2));
        assert_eq!(eta0(5, 3), u(0));
        assert_eq!(eta0(3, 0), u(0));
    }

    #[test]
    fn genus_one_shapes() {
        let counts: Vec<_> = (2..=4).map(|n| shape_count(1, n)).collect();
        assert_eq!(counts, vec![u(1), u(2), u(1)]);
        assert_eq!(shape_polynomial(1).named("S_1"), "S_1(z) = z^2 + 2*z^3 + z^4");
        assert_eq!(shape_total(1), u(4));
        assert_eq!(shape_count(1, 5), u(0));
    }

    #[test]
    fn genus_two_polynomial() {
        let s2 = shape_polynomial(2);
        let coeffs: Vec<_> = (4..=10).map(|n| s2.coefficient(n)).collect();
        assert_eq!(coeffs, [21, 189, 651, 1134, 1071, 525, 105].map(BigInt::from));
        assert_eq!(s2.eval(&BigInt::one()), BigInt::from(3696));
        let t2 = kappa_table(2);
        for n in 0..=12 {
            assert_eq!(shape_count_from_kappa(&t2, n), shape_count(2, n));
        }
    }

    #[test]
    fn probabilities_sum_to_one() {
        for g in 1..=4 {
            let total: BigRational = arc_support(g).map(|n| prob_arcs(g, n)).sum();
            assert!(total.is_one());
            let table = kappa_table(g);
            for n in arc_support(g) {
                let pk: BigRational = (2 * g + 1..=3 * g).map(|k| prob_labels_with(&table, n, k)).sum();
                assert!(pk.is_one(), "g={g} n={n}");
            }
        }
        assert_eq!(prob_arcs(1, 3), q(1, 2));
        assert_eq!(prob_arcs(1, 2), q(1, 4));
    }

    #[test]
    fn trace_table_matches_kappa_route() {
        for g in 1..=5 {
            let table = TraceTable::new(g);
            let kt = kappa_table(g);
            for t in 0..g {
                assert_eq!(&table.a(t), kt.a(t), "g={g} t={t}");
                let dist = table.trace_distribution(t);
                let s: BigRational = dist.iter().map(|(_, p)| p.clone()).sum();
                assert!(s.is_one());
                for (trace, _) in &dist {
                    assert_eq!(trace.target_genus(), g);
                    assert_eq!(trace.final_t(), trace.len() - t - 1);
                }
            }
        }
        let d = trace_distribution(1, 0);
        assert_eq!(d.len(), 1);
        assert!(d[0].1.is_one());
    }

    #[test]
    fn csv_and_display() {
        let csv = kappa_csv(&[kappa_table(2)]);
        assert_eq!(csv, "genus,t,a_num,a_den,kappa\n2,0,3,2,21\n2,1,5,2,105\n");
        assert_eq!(shape_counts_csv(&[(1, 3, u(2))]), "genus,n,count\n1,3,2\n");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::linear(-1, 1).to_string(), "-1 + z");
        assert_eq!(IntPolynomial::linear(0, -3).to_string(), "-3*z");
    }
}
