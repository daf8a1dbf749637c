//! Slicing and gluing of unicellular maps.
//!
//! Slicing a trisection `τ` splits its vertex and lowers the genus by one;
//! gluing three vertices `a1 <_γ a2 <_γ a3` merges them and raises it by one.
//! [`xi`] repeats slicing at a fixed trisection until it splits off three
//! vertices, producing a map of genus `g - k` and `2k + 1` vertices; [`lambda`]
//! is its inverse.
//!
//! Labels are kept as vertex identities (`<_γ`-minimum half-edges). Because
//! surgery rewrites the face order, identities of untouched vertices can
//! move, so every operation re-derives labels from a representative
//! half-edge.

use std::fmt;

use thiserror::Error;

use crate::fatcore::{HalfEdge, UnicellularMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("half-edge {0} is not a trisection")]
    NotTrisection(HalfEdge),
    #[error("half-edge {0} is not a vertex of the map")]
    NotAVertex(HalfEdge),
    #[error("vertex sequence must have odd length ≥ 3, got {0}")]
    BadSequenceLength(usize),
    #[error("vertex sequence is not strictly increasing along the face")]
    NotGammaOrdered,
    #[error("the plant cannot take part in surgery")]
    PlantInSequence,
    #[error("vertex {0} is not labeled")]
    Unlabeled(HalfEdge),
    #[error("step {step} needs {expected} vertices, got {got}")]
    WrongChoiceCount { step: usize, expected: usize, got: usize },
    #[error("trace needs {needed} labeled vertices at step {step}, only {available} left")]
    NotEnoughLabels { step: usize, needed: usize, available: usize },
    #[error("{0} labeled vertices remain after the last step")]
    LeftoverLabels(usize),
    #[error("half-edge 0 is not a degree-1 plant")]
    NotPlanted,
    #[error("invalid glue trace: {0}")]
    BadTrace(&'static str),
}

/// A unicellular map with a set of distinguished (labeled) vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledMap {
    map: UnicellularMap,
    /// Vertex identities, sorted along the face.
    labels: Vec<HalfEdge>,
    /// Half-edge 0 is a plant that must never be labeled or glued.
    planted: bool,
}

impl LabeledMap {
    /// A map without plant.
    pub fn new(map: UnicellularMap, labels: impl IntoIterator<Item = HalfEdge>) -> Result<Self, SurgeryError> {
        Self::build(map, labels, false)
    }

    /// A map whose half-edge 0 is a degree-1 plant.
    pub fn planted(map: UnicellularMap, labels: impl IntoIterator<Item = HalfEdge>) -> Result<Self, SurgeryError> {
        if !map.is_planted() {
            return Err(SurgeryError::NotPlanted);
        }
        Self::build(map, labels, true)
    }

    fn build(
        map: UnicellularMap,
        labels: impl IntoIterator<Item = HalfEdge>,
        planted: bool,
    ) -> Result<Self, SurgeryError> {
        let mut labels: Vec<HalfEdge> = labels.into_iter().collect();
        for &v in &labels {
            if v >= map.half_edge_count() || !map.is_vertex_min(v) {
                return Err(SurgeryError::NotAVertex(v));
            }
            if planted && v == 0 {
                return Err(SurgeryError::PlantInSequence);
            }
        }
        labels.sort_by_key(|&v| map.rank(v));
        labels.dedup();
        Ok(Self { map, labels, planted })
    }

    pub fn unlabeled(map: UnicellularMap) -> Self {
        Self { map, labels: Vec::new(), planted: false }
    }

    /// Every vertex labeled.
    pub fn fully_labeled(map: UnicellularMap) -> Self {
        let labels = map.vertex_order_by_gamma();
        Self { map, labels, planted: false }
    }

    /// Every non-plant vertex labeled.
    pub fn fully_labeled_planted(map: UnicellularMap) -> Result<Self, SurgeryError> {
        let labels: Vec<_> = map.vertex_order_by_gamma().into_iter().filter(|&v| v != 0).collect();
        Self::planted(map, labels)
    }

    pub fn is_planted(&self) -> bool {
        self.planted
    }

    pub fn map(&self) -> &UnicellularMap {
        &self.map
    }

    pub fn into_map(self) -> UnicellularMap {
        self.map
    }

    pub fn labels(&self) -> &[HalfEdge] {
        &self.labels
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_labeled(&self, v: HalfEdge) -> bool {
        self.labels.contains(&v)
    }

    pub fn genus(&self) -> usize {
        self.map.genus()
    }

    /// Every unlabeled non-plant vertex has degree ≥ 3.
    pub fn in_shape_class(&self) -> bool {
        self.map
            .vertex_order_by_gamma()
            .into_iter()
            .filter(|&v| !(self.planted && v == 0))
            .all(|v| self.is_labeled(v) || self.map.degree(v) >= 3)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SliceKind {
    /// Three new vertices.
    I,
    /// Two new vertices; `τ` is still a trisection afterwards.
    II,
}

impl fmt::Display for SliceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SliceKind::I => "I",
            SliceKind::II => "II",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurgeryOp {
    Slice,
    Glue,
}

/// One line of the surgery log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryStep {
    pub index: usize,
    pub op: SurgeryOp,
    /// Genus after the step.
    pub genus: usize,
    /// Labeled vertices after the step.
    pub labels: usize,
    pub kind: SliceKind,
}

impl fmt::Display for SurgeryStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.op {
            SurgeryOp::Slice => "slice",
            SurgeryOp::Glue => "glue",
        };
        write!(f, "step={} op={} g={} k={} type={}", self.index, op, self.genus, self.labels, self.kind)
    }
}

/// Result of a single slicing.
#[derive(Clone, Debug)]
pub struct SliceOutcome {
    pub map: LabeledMap,
    pub kind: SliceKind,
    /// The three half-edges whose `sigma`-images were exchanged.
    pub a: [HalfEdge; 3],
    /// Identities of the vertices the slice created (three for type I, two for type II).
    pub new_vertices: Vec<HalfEdge>,
    /// Whether the sliced vertex carried a label (it is dropped).
    pub sliced_labeled: bool,
}

fn remap(map: &UnicellularMap, reps: &[HalfEdge]) -> Vec<HalfEdge> {
    let mut out: Vec<HalfEdge> = reps.iter().map(|&h| map.vertex_of(h)).collect();
    out.sort_by_key(|&v| map.rank(v));
    out
}

/// Finds `(a1, a2, a3)` for slicing at `tau`.
fn slice_points(map: &UnicellularMap, tau: HalfEdge) -> (HalfEdge, HalfEdge, HalfEdge) {
    let sigma = map.sigma();
    let a1 = map.vertex_of(tau);
    let a3 = sigma.apply(tau);
    let mut a2 = None;
    let mut h = sigma.apply(a1);
    while h != a3 {
        if map.rank(h) > map.rank(a3) && a2.is_none_or(|b| map.rank(h) < map.rank(b)) {
            a2 = Some(h);
        }
        h = sigma.apply(h);
    }
    (a1, a2.expect("a trisection always has a later half-edge before it"), a3)
}

/// Slices the vertex of trisection `tau`.
pub fn slice_once(m: &LabeledMap, tau: HalfEdge) -> Result<SliceOutcome, SurgeryError> {
    let map = &m.map;
    if tau >= map.half_edge_count() || !map.is_trisection(tau) {
        return Err(SurgeryError::NotTrisection(tau));
    }
    let (a1, a2, a3) = slice_points(map, tau);
    let sliced_labeled = m.is_labeled(a1);
    let reps: Vec<HalfEdge> = m.labels.iter().copied().filter(|&v| v != a1).collect();

    let old = map.sigma();
    let mut sigma = old.images().to_vec();
    sigma[a1] = old.apply(a3);
    sigma[a2] = old.apply(a1);
    sigma[a3] = old.apply(a2);
    let sliced = map.with_sigma(sigma);

    let kind = if sliced.is_vertex_min(a3) { SliceKind::I } else { SliceKind::II };
    let new_vertices = match kind {
        SliceKind::I => remap(&sliced, &[a1, a2, a3]),
        SliceKind::II => remap(&sliced, &[a1, a2]),
    };
    let labels = remap(&sliced, &reps);
    Ok(SliceOutcome {
        map: LabeledMap { map: sliced, labels, planted: m.planted },
        kind,
        a: [a1, a2, a3],
        new_vertices,
        sliced_labeled,
    })
}

/// Result of [`xi`].
#[derive(Clone, Debug)]
pub struct XiOutcome {
    /// The lower-genus map; labels exclude the sliced vertex and the split-off vertices.
    pub map: LabeledMap,
    /// `2k + 1` vertex identities of the lower-genus map, increasing along the face.
    pub vertices: Vec<HalfEdge>,
    pub sliced_labeled: bool,
    pub log: Vec<SurgeryStep>,
}

/// Repeats type-II slices at `tau` and finishes with a type-I slice.
pub fn xi(m: &LabeledMap, tau: HalfEdge) -> Result<XiOutcome, SurgeryError> {
    if tau >= m.map.half_edge_count() || !m.map.is_trisection(tau) {
        return Err(SurgeryError::NotTrisection(tau));
    }
    let sliced_labeled = m.is_labeled(m.map.vertex_of(tau));
    let mut current = m.clone();
    let mut reps = Vec::new();
    let mut log = Vec::new();
    loop {
        let out = slice_once(&current, tau)?;
        let [a1, a2, a3] = out.a;
        reps.push(a1);
        reps.push(a2);
        log.push(SurgeryStep {
            index: log.len() + 1,
            op: SurgeryOp::Slice,
            genus: out.map.genus(),
            labels: out.map.label_count(),
            kind: out.kind,
        });
        current = out.map;
        if out.kind == SliceKind::I {
            reps.push(a3);
            break;
        }
    }
    let vertices = remap(&current.map, &reps);
    current.labels.retain(|v| !vertices.contains(v));
    Ok(XiOutcome { map: current, vertices, sliced_labeled, log })
}

/// Result of [`lambda`].
#[derive(Clone, Debug)]
pub struct LambdaOutcome {
    pub map: LabeledMap,
    /// The trisection from which [`xi`] recovers the input.
    pub tau: HalfEdge,
    pub log: Vec<SurgeryStep>,
}

fn glue_sigma(map: &UnicellularMap, b1: HalfEdge, b2: HalfEdge, b3: HalfEdge) -> UnicellularMap {
    let old = map.sigma();
    let mut sigma = old.images().to_vec();
    sigma[b1] = old.apply(b2);
    sigma[b2] = old.apply(b3);
    sigma[b3] = old.apply(b1);
    map.with_sigma(sigma)
}

/// Glues the `2k + 1` vertices of `vertices` (increasing along the face)
/// into one, raising the genus by `k`.
///
/// Labels on glued vertices are consumed; the new vertex is labeled iff
/// `label_new`.
pub fn lambda(m: &LabeledMap, vertices: &[HalfEdge], label_new: bool) -> Result<LambdaOutcome, SurgeryError> {
    let map = &m.map;
    let len = vertices.len();
    if len < 3 || len % 2 == 0 {
        return Err(SurgeryError::BadSequenceLength(len));
    }
    for &v in vertices {
        if v >= map.half_edge_count() || !map.is_vertex_min(v) {
            return Err(SurgeryError::NotAVertex(v));
        }
        if m.planted && v == 0 {
            return Err(SurgeryError::PlantInSequence);
        }
    }
    if vertices.windows(2).any(|w| map.rank(w[0]) >= map.rank(w[1])) {
        return Err(SurgeryError::NotGammaOrdered);
    }
    let reps: Vec<HalfEdge> = m.labels.iter().copied().filter(|v| !vertices.contains(v)).collect();
    let k = len / 2;
    let base_genus = m.genus();
    let mut log = Vec::with_capacity(k);

    let (a1, a2, a3) = (vertices[len - 3], vertices[len - 2], vertices[len - 1]);
    let mut current = glue_sigma(map, a1, a2, a3);
    let tau = current.sigma().inverse_image(a3);
    log.push(SurgeryStep {
        index: 1,
        op: SurgeryOp::Glue,
        genus: base_genus + 1,
        labels: reps.len() + usize::from(label_new),
        kind: SliceKind::I,
    });
    for i in 1..k {
        let b1 = vertices[2 * k - 2 * i - 2];
        let b2 = vertices[2 * k - 2 * i - 1];
        let b3 = current.sigma().apply(tau);
        current = glue_sigma(&current, b1, b2, b3);
        log.push(SurgeryStep {
            index: i + 1,
            op: SurgeryOp::Glue,
            genus: base_genus + 1 + i,
            labels: reps.len() + usize::from(label_new),
            kind: SliceKind::II,
        });
    }
    let mut labels = remap(&current, &reps);
    if label_new {
        labels.push(current.vertex_of(tau));
        labels.sort_by_key(|&v| current.rank(v));
    }
    Ok(LambdaOutcome { map: LabeledMap { map: current, labels, planted: m.planted }, tau, log })
}

/// One entry `(g_i, t_i)` of a glue trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TraceStep {
    pub genus: usize,
    pub t: usize,
}

/// Sequence `(g_1, t_1), …, (g_r, t_r)` of a glue path from a labeled tree.
///
/// Genera strictly increase from above 0; `t_1 = 0` and every increment of
/// `t` is 0 or 1. Step `i` glues `2(g_i - g_{i-1}) + 1` labeled vertices and
/// the merged vertex keeps a label iff `t_{i+1} = t_i + 1` (never on the last
/// step).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GlueTrace {
    steps: Vec<TraceStep>,
}

impl GlueTrace {
    pub fn new(steps: Vec<TraceStep>) -> Result<Self, SurgeryError> {
        let first = steps.first().ok_or(SurgeryError::BadTrace("empty trace"))?;
        if first.genus == 0 {
            return Err(SurgeryError::BadTrace("first step must raise the genus"));
        }
        if first.t != 0 {
            return Err(SurgeryError::BadTrace("t must start at 0"));
        }
        for w in steps.windows(2) {
            if w[1].genus <= w[0].genus {
                return Err(SurgeryError::BadTrace("genera must strictly increase"));
            }
            if w[1].t != w[0].t && w[1].t != w[0].t + 1 {
                return Err(SurgeryError::BadTrace("t increments must be 0 or 1"));
            }
        }
        Ok(Self { steps })
    }

    /// Pairs `(g_i, t_i)` for convenience in tests.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self, SurgeryError> {
        Self::new(pairs.iter().map(|&(genus, t)| TraceStep { genus, t }).collect())
    }

    pub fn steps(&self) -> &[TraceStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn target_genus(&self) -> usize {
        self.steps.last().map_or(0, |s| s.genus)
    }

    pub fn final_t(&self) -> usize {
        self.steps.last().map_or(0, |s| s.t)
    }

    /// Vertices glued at step `i` (0-based).
    pub fn glued(&self, i: usize) -> usize {
        let prev = if i == 0 { 0 } else { self.steps[i - 1].genus };
        2 * (self.steps[i].genus - prev) + 1
    }

    /// Whether the vertex created at step `i` (0-based) is labeled.
    pub fn labels_new_vertex(&self, i: usize) -> bool {
        i + 1 < self.steps.len() && self.steps[i + 1].t == self.steps[i].t + 1
    }

    /// Labels the starting tree must carry: `2g + r - t_r`.
    pub fn initial_labels(&self) -> usize {
        2 * self.target_genus() + self.len() - self.final_t()
    }

    /// Labels remaining after step `i` (0-based) when starting from `k`.
    pub fn labels_after(&self, k: usize, i: usize) -> usize {
        let g_i = self.steps[i].genus;
        let t_next = self.steps.get(i + 1).map_or(self.final_t(), |s| s.t);
        k + t_next - (2 * g_i + i + 1)
    }
}

impl fmt::Display for GlueTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "({},{})", s.genus, s.t)?;
        }
        Ok(())
    }
}

/// Realizes `trace` on `start`, asking `choose(step, map, count)` for the
/// labeled vertices to glue at each step.
pub fn realize_trace_with<F>(start: &LabeledMap, trace: &GlueTrace, mut choose: F) -> Result<LabeledMap, SurgeryError>
where
    F: FnMut(usize, &LabeledMap, usize) -> Vec<HalfEdge>,
{
    let mut current = start.clone();
    for i in 0..trace.len() {
        let d = trace.glued(i);
        if current.label_count() < d {
            return Err(SurgeryError::NotEnoughLabels {
                step: i + 1,
                needed: d,
                available: current.label_count(),
            });
        }
        let mut chosen = choose(i, &current, d);
        if chosen.len() != d {
            return Err(SurgeryError::WrongChoiceCount { step: i + 1, expected: d, got: chosen.len() });
        }
        if let Some(&v) = chosen.iter().find(|&&v| !current.is_labeled(v)) {
            return Err(SurgeryError::Unlabeled(v));
        }
        chosen.sort_by_key(|&v| current.map.rank(v));
        current = lambda(&current, &chosen, trace.labels_new_vertex(i))?.map;
    }
    if current.label_count() != 0 {
        return Err(SurgeryError::LeftoverLabels(current.label_count()));
    }
    Ok(current)
}

/// Realizes `trace` with explicit choices given as positions into the
/// current face-ordered label list.
pub fn realize_trace(start: &LabeledMap, trace: &GlueTrace, choices: &[Vec<usize>]) -> Result<LabeledMap, SurgeryError> {
    if choices.len() != trace.len() {
        return Err(SurgeryError::BadTrace("one choice list per step required"));
    }
    let mut bad = None;
    let out = realize_trace_with(start, trace, |i, m, _| {
        choices[i]
            .iter()
            .filter_map(|&p| {
                let v = m.labels().get(p).copied();
                if v.is_none() {
                    bad = Some(p);
                }
                v
            })
            .collect()
    });
    match bad {
        Some(_) => Err(SurgeryError::BadTrace("choice index out of range")),
        None => out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fatcore::Permutation;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn torus() -> UnicellularMap {
        UnicellularMap::new(
            Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap(),
            Permutation::from_cycles(4, &[vec![0, 2], vec![1, 3]]).unwrap(),
        )
        .unwrap()
    }

    /// Unicellular map with face `(0 1 … 2m-1)` from a random perfect matching.
    fn random_map(m: usize, rng: &mut ChaCha8Rng) -> UnicellularMap {
        let mut hs: Vec<usize> = (0..2 * m).collect();
        hs.shuffle(rng);
        let mut alpha = vec![0; 2 * m];
        for p in hs.chunks(2) {
            alpha[p[0]] = p[1];
            alpha[p[1]] = p[0];
        }
        let sigma = (0..2 * m).map(|h| alpha[(h + 1) % (2 * m)]).collect();
        UnicellularMap::new(Permutation::new(sigma).unwrap(), Permutation::new(alpha).unwrap()).unwrap()
    }

    #[test]
    fn slice_torus_gives_path() {
        let m = LabeledMap::unlabeled(torus());
        for tau in m.map().trisections() {
            let out = slice_once(&m, tau).unwrap();
            assert_eq!(out.kind, SliceKind::I);
            assert_eq!(out.map.genus(), 0);
            assert_eq!(out.map.map().vertex_count(), 3);
            assert_eq!(out.map.map().edge_count(), 2);
        }
        assert_eq!(slice_once(&m, 0).unwrap_err(), SurgeryError::NotTrisection(0));
    }

    #[test]
    fn glue_path_gives_torus() {
        let m = LabeledMap::unlabeled(torus());
        let x = xi(&m, 1).unwrap();
        assert_eq!(x.vertices.len(), 3);
        let back = lambda(&x.map, &x.vertices, false).unwrap();
        assert_eq!(back.map.map(), &torus());
        assert_eq!(back.tau, 1);
        assert_eq!(back.map.map().degree(0), 4);
        assert_eq!(back.log[0].to_string(), "step=1 op=glue g=1 k=0 type=I");
    }

    #[test]
    fn lambda_rejects_bad_sequences() {
        let m = LabeledMap::unlabeled(xi(&LabeledMap::unlabeled(torus()), 1).unwrap().map.into_map());
        let vs = m.map().vertex_order_by_gamma();
        assert_eq!(lambda(&m, &vs[..2], false).unwrap_err(), SurgeryError::BadSequenceLength(2));
        let rev: Vec<_> = vs.iter().rev().copied().collect();
        assert_eq!(lambda(&m, &rev, false).unwrap_err(), SurgeryError::NotGammaOrdered);
    }

    #[test]
    fn round_trips_on_random_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let m = random_map(rng.random_range(1..=7), &mut rng);
            let lm = LabeledMap::fully_labeled(m.clone());
            let tris = m.trisections();
            assert_eq!(tris.len(), 2 * m.genus());
            if let Some(&tau) = tris.get(rng.random_range(0..tris.len().max(1))) {
                let x = xi(&lm, tau).unwrap();
                assert_eq!(x.map.genus() + x.vertices.len() / 2, m.genus());
                assert!(x.sliced_labeled);
                let back = lambda(&x.map, &x.vertices, true).unwrap();
                assert_eq!(back.map.map(), &m);
                assert_eq!(back.tau, tau);
                assert_eq!(back.map.labels(), lm.labels());
            }
            let vs = m.vertex_order_by_gamma();
            if vs.len() >= 3 {
                let size = 2 * rng.random_range(1..=(vs.len() - 1) / 2) + 1;
                let mut pick = rand::seq::index::sample(&mut rng, vs.len(), size).into_vec();
                pick.sort_unstable();
                let chosen: Vec<_> = pick.iter().map(|&i| vs[i]).collect();
                let glued = lambda(&lm, &chosen, false).unwrap();
                assert_eq!(glued.map.genus(), m.genus() + size / 2);
                let x = xi(&glued.map, glued.tau).unwrap();
                assert_eq!(x.map.map(), &m);
                assert_eq!(x.vertices, chosen);
                let rest: Vec<_> = lm.labels().iter().copied().filter(|v| !chosen.contains(v)).collect();
                assert_eq!(x.map.labels(), rest.as_slice());
            }
        }
    }

    #[test]
    fn slicing_preserves_other_degrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let m = random_map(6, &mut rng);
            let lm = LabeledMap::unlabeled(m.clone());
            for tau in m.trisections() {
                let sliced_vertex = m.vertex_of(tau);
                let out = slice_once(&lm, tau).unwrap();
                let s = out.map.map();
                assert_eq!(s.genus() + 1, m.genus());
                let pieces: usize = out.new_vertices.iter().map(|&v| s.degree(v)).sum();
                if out.kind == SliceKind::I {
                    assert_eq!(pieces, m.degree(sliced_vertex));
                }
                for v in m.vertex_order_by_gamma() {
                    if v != sliced_vertex {
                        assert_eq!(s.degree(s.vertex_of(v)), m.degree(v));
                    }
                }
            }
        }
    }

    #[test]
    fn glue_trace_bookkeeping() {
        let t = GlueTrace::from_pairs(&[(1, 0), (2, 0)]).unwrap();
        assert_eq!(t.initial_labels(), 6);
        assert_eq!(t.glued(0), 3);
        assert_eq!(t.glued(1), 3);
        assert_eq!(t.labels_after(6, 0), 3);
        assert_eq!(t.labels_after(6, 1), 0);
        let t = GlueTrace::from_pairs(&[(1, 0), (2, 1)]).unwrap();
        assert_eq!(t.initial_labels(), 5);
        assert!(t.labels_new_vertex(0));
        assert_eq!(t.labels_after(5, 0), 3);
        assert!(GlueTrace::from_pairs(&[(1, 1)]).is_err());
        assert!(GlueTrace::from_pairs(&[(2, 0), (2, 0)]).is_err());
        assert_eq!(t.to_string(), "(1,0)(2,1)");
    }

    #[test]
    fn realize_single_step_trace() {
        let path = xi(&LabeledMap::unlabeled(torus()), 1).unwrap().map.into_map();
        let tree = LabeledMap::fully_labeled(path);
        let trace = GlueTrace::from_pairs(&[(1, 0)]).unwrap();
        let out = realize_trace(&tree, &trace, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(out.genus(), 1);
        assert_eq!(out.label_count(), 0);
        assert!(matches!(
            realize_trace(&tree, &trace, &[vec![0, 1]]),
            Err(SurgeryError::WrongChoiceCount { .. })
        ));
    }
}
