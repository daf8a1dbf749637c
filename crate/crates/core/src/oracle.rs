//! Brute-force enumeration used as ground truth for the counting formulas.
//!
//! Maps are enumerated with their face fixed to `(0 1 … 2m-1)`: every
//! fixed-point-free involution `alpha` gives the unicellular map with
//! `sigma(h) = alpha(h + 1 mod 2m)`, and every rooted unicellular map arises
//! exactly once this way.

use rayon::prelude::*;
use thiserror::Error;

use crate::fatcore::{Permutation, PlantedMap, UnicellularMap};
use crate::treegen::PlaneTree;

/// Default edge cap for map enumeration.
pub const DEFAULT_MAX_EDGES: usize = 10;
/// Edge cap of the extended suite (covers shapes with 10 pure arcs).
pub const EXTENDED_MAX_EDGES: usize = 11;
/// Edge cap for tree enumeration.
pub const MAX_TREE_EDGES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} of size {requested} exceeds the oracle cap {cap}")]
    CapExceeded { what: &'static str, requested: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleCaps {
    pub max_edges: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self { max_edges: DEFAULT_MAX_EDGES }
    }
}

impl OracleCaps {
    pub fn extended() -> Self {
        Self { max_edges: EXTENDED_MAX_EDGES }
    }

    fn check(&self, m: usize) -> Result<(), OracleError> {
        if m > self.max_edges {
            return Err(OracleError::CapExceeded { what: "map", requested: m, cap: self.max_edges });
        }
        Ok(())
    }
}

/// Which maps to keep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MapFilter {
    pub genus: Option<usize>,
    /// Minimum degree of every vertex other than the plant.
    pub min_degree: usize,
    /// Half-edge 0 forms a degree-1 vertex.
    pub planted: bool,
}

impl MapFilter {
    pub fn genus(g: usize) -> Self {
        Self { genus: Some(g), min_degree: 1, planted: false }
    }

    /// Planted, genus `g`, non-plant degrees ≥ 3.
    pub fn shape(g: usize) -> Self {
        Self { genus: Some(g), min_degree: 3, planted: true }
    }
}

const NONE: usize = usize::MAX;

enum Undo {
    Merge { a: usize, b: usize, s: usize, e: usize, len_s: usize },
    /// A cycle closed; `bad` if it violates the degree bound.
    Close { len: usize, bad: bool },
}

/// Depth-first pairing of half-edges, smallest unpaired first, with the
/// `sigma`-cycles assembled incrementally from path fragments.
#[derive(Clone)]
struct Search {
    n: usize,
    filter: MapFilter,
    /// Target vertex count when the genus is fixed.
    target_vertices: Option<usize>,
    alpha: Vec<usize>,
    /// For the last half-edge of a path fragment, its first one.
    start_of: Vec<usize>,
    /// For the first half-edge of a path fragment, its last one.
    end_of: Vec<usize>,
    /// Fragment length, indexed by first half-edge.
    len: Vec<usize>,
    closed: usize,
    closed_len: usize,
    bad: usize,
}

impl Search {
    fn new(m: usize, filter: MapFilter) -> Self {
        let n = 2 * m;
        let target_vertices = filter.genus.and_then(|g| (m + 1).checked_sub(2 * g));
        Self {
            n,
            filter,
            target_vertices,
            alpha: vec![NONE; n],
            start_of: (0..n).collect(),
            end_of: (0..n).collect(),
            len: vec![1; n],
            closed: 0,
            closed_len: 0,
            bad: 0,
        }
    }

    /// Records `sigma(a) = b`.
    fn link(&mut self, a: usize, b: usize, undo: &mut Vec<Undo>) {
        let s = self.start_of[a];
        if s == b {
            let len = self.len[s];
            self.closed += 1;
            self.closed_len += len;
            let is_plant = self.filter.planted && s == 0;
            let bad = !is_plant && len < self.filter.min_degree;
            self.bad += usize::from(bad);
            undo.push(Undo::Close { len, bad });
        } else {
            let e = self.end_of[b];
            let len_s = self.len[s];
            self.end_of[s] = e;
            self.start_of[e] = s;
            self.len[s] = len_s + self.len[b];
            undo.push(Undo::Merge { a, b, s, e, len_s });
        }
    }

    fn unlink(&mut self, u: Undo) {
        match u {
            Undo::Close { len, bad } => {
                self.closed -= 1;
                self.closed_len -= len;
                self.bad -= usize::from(bad);
            }
            Undo::Merge { a, b, s, e, len_s } => {
                self.end_of[s] = a;
                self.start_of[e] = b;
                self.len[s] = len_s;
            }
        }
    }

    /// `alpha(h) = j` fixes `sigma(h-1) = j` and `sigma(j-1) = h`.
    fn pair(&mut self, h: usize, j: usize, undo: &mut Vec<Undo>) {
        self.alpha[h] = j;
        self.alpha[j] = h;
        let n = self.n;
        self.link((h + n - 1) % n, j, undo);
        self.link((j + n - 1) % n, h, undo);
    }

    fn unpair(&mut self, h: usize, j: usize, undo: &mut Vec<Undo>) {
        for _ in 0..2 {
            let u = undo.pop().expect("paired before");
            self.unlink(u);
        }
        self.alpha[h] = NONE;
        self.alpha[j] = NONE;
    }

    fn feasible(&self) -> bool {
        if self.bad > 0 {
            return false;
        }
        let Some(target) = self.target_vertices else { return true };
        if self.closed > target {
            return false;
        }
        let open = self.n - self.closed_len;
        if open == 0 {
            return self.closed == target;
        }
        let need = target - self.closed;
        need >= 1 && open >= need * self.filter.min_degree.max(1)
    }

    fn first_unpaired(&self) -> Option<usize> {
        self.alpha.iter().position(|&a| a == NONE)
    }

    fn run<F: FnMut(&[usize], usize)>(&mut self, undo: &mut Vec<Undo>, visit: &mut F) {
        let Some(h) = self.first_unpaired() else {
            let vertices = self.closed;
            let m = self.n / 2;
            let genus = (m + 1 - vertices) / 2;
            if self.filter.genus.is_none_or(|g| g == genus) {
                visit(&self.alpha, genus);
            }
            return;
        };
        for j in h + 1..self.n {
            if self.alpha[j] != NONE {
                continue;
            }
            self.pair(h, j, undo);
            if self.feasible() {
                self.run(undo, visit);
            }
            self.unpair(h, j, undo);
        }
    }

    /// Root choices for sharding: the forced plant pairing, then every
    /// partner of the next unpaired half-edge.
    fn shards(&self) -> Vec<(usize, usize)> {
        let h = if self.filter.planted { 2 } else { 0 };
        if h >= self.n {
            return Vec::new();
        }
        (h + 1..self.n).map(|j| (h, j)).collect()
    }
}

fn build_map(alpha: &[usize]) -> UnicellularMap {
    let n = alpha.len();
    let sigma = (0..n).map(|h| alpha[(h + 1) % n]).collect();
    UnicellularMap::new(
        Permutation::new(sigma).expect("shifted involution is a permutation"),
        Permutation::new(alpha.to_vec()).expect("complete pairing"),
    )
    .expect("face is (0 1 … 2m-1) by construction")
}

/// Runs the search in parallel shards; `per_shard` folds one shard.
fn sharded<T, F>(m: usize, filter: MapFilter, per_shard: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut Search, &mut Vec<Undo>) -> T + Sync,
{
    if m == 0 {
        return Vec::new();
    }
    let mut root = Search::new(m, filter);
    let mut undo = Vec::new();
    if filter.planted {
        root.pair(0, 1, &mut undo);
        if !root.feasible() {
            return Vec::new();
        }
        if root.first_unpaired().is_none() {
            return vec![per_shard(&mut root, &mut undo)];
        }
    }
    root.shards()
        .into_par_iter()
        .filter_map(|(h, j)| {
            let mut s = root.clone();
            let mut u = Vec::new();
            s.pair(h, j, &mut u);
            s.feasible().then(|| per_shard(&mut s, &mut u))
        })
        .collect()
}

/// All rooted unicellular maps with `m` edges passing `filter`, with face
/// `(0 1 … 2m-1)`. Output order is deterministic.
pub fn enumerate_maps(m: usize, filter: MapFilter, caps: OracleCaps) -> Result<Vec<UnicellularMap>, OracleError> {
    caps.check(m)?;
    let shards = sharded(m, filter, |s, u| {
        let mut out = Vec::new();
        s.run(u, &mut |alpha, _| out.push(alpha.to_vec()));
        out
    });
    Ok(shards.into_iter().flatten().map(|a| build_map(&a)).collect())
}

/// Number of rooted unicellular maps with `m` edges, indexed by genus.
pub fn count_maps_by_genus(m: usize, caps: OracleCaps) -> Result<Vec<u64>, OracleError> {
    caps.check(m)?;
    let mut total = vec![0u64; m / 2 + 1];
    for counts in sharded(m, MapFilter::default(), |s, u| {
        let mut c = vec![0u64; m / 2 + 1];
        s.run(u, &mut |_, g| c[g] += 1);
        c
    }) {
        for (t, c) in total.iter_mut().zip(counts) {
            *t += c;
        }
    }
    Ok(total)
}

/// Number of maps with `m` edges passing `filter`.
pub fn count_maps(m: usize, filter: MapFilter, caps: OracleCaps) -> Result<u64, OracleError> {
    caps.check(m)?;
    Ok(sharded(m, filter, |s, u| {
        let mut c = 0u64;
        s.run(u, &mut |_, _| c += 1);
        c
    })
    .into_iter()
    .sum())
}

/// Number of maps passing `filter` that also satisfy `pred`; the maps are
/// built one at a time and dropped.
pub fn count_maps_where<P>(m: usize, filter: MapFilter, caps: OracleCaps, pred: P) -> Result<u64, OracleError>
where
    P: Fn(&UnicellularMap) -> bool + Sync,
{
    caps.check(m)?;
    Ok(sharded(m, filter, |s, u| {
        let mut c = 0u64;
        s.run(u, &mut |alpha, _| c += u64::from(pred(&build_map(alpha))));
        c
    })
    .into_iter()
    .sum())
}

/// Planted maps of genus `g` with `n + 1` edges and all other vertices of
/// degree ≥ 3, i.e. the maps of genus-`g` shapes with `n` pure arcs.
pub fn enumerate_shape_maps(n: usize, g: usize, caps: OracleCaps) -> Result<Vec<PlantedMap>, OracleError> {
    Ok(enumerate_maps(n + 1, MapFilter::shape(g), caps)?
        .into_iter()
        .map(|m| PlantedMap::new(m).expect("plant filter"))
        .collect())
}

pub fn count_shape_maps(n: usize, g: usize, caps: OracleCaps) -> Result<u64, OracleError> {
    count_maps(n + 1, MapFilter::shape(g), caps)
}

/// Every fixed-point-free involution on `2m` points, checked one by one
/// with no pruning; for cross-checking the pruned search at small sizes.
pub fn enumerate_maps_unpruned(m: usize) -> Vec<UnicellularMap> {
    fn go(alpha: &mut Vec<usize>, out: &mut Vec<UnicellularMap>) {
        match alpha.iter().position(|&a| a == NONE) {
            None => out.push(build_map(alpha)),
            Some(h) => {
                for j in h + 1..alpha.len() {
                    if alpha[j] == NONE {
                        alpha[h] = j;
                        alpha[j] = h;
                        go(alpha, out);
                        alpha[h] = NONE;
                        alpha[j] = NONE;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        go(&mut vec![NONE; 2 * m], &mut out);
    }
    out
}

/// Every plane tree with `e` edges, all vertices labeled, from Dyck words.
pub fn all_plane_trees(e: usize) -> Result<Vec<PlaneTree>, OracleError> {
    if e > MAX_TREE_EDGES {
        return Err(OracleError::CapExceeded { what: "tree", requested: e, cap: MAX_TREE_EDGES });
    }
    fn words(open: usize, close: usize, cur: &mut String, out: &mut Vec<String>) {
        if open == 0 && close == 0 {
            out.push(cur.clone());
            return;
        }
        if open > 0 {
            cur.push_str("(*");
            words(open - 1, close + 1, cur, out);
            cur.truncate(cur.len() - 2);
        }
        if close > 0 {
            cur.push(')');
            words(open, close - 1, cur, out);
            cur.pop();
        }
    }
    let mut ws = Vec::new();
    words(e, 0, &mut String::new(), &mut ws);
    Ok(ws.into_iter().map(|w| format!("(*{w})").parse().expect("Dyck word is a tree")).collect())
}

/// Trees with `n` edges and exactly `k` labeled vertices in the shape class.
pub fn enumerate_class_trees(n: usize, k: usize) -> Result<Vec<PlaneTree>, OracleError> {
    let mut out = Vec::new();
    for t in all_plane_trees(n)? {
        let v = t.vertex_count();
        if k > v {
            continue;
        }
        // unlabeled candidates must have degree ≥ 3
        let must_label = (0..v).filter(|&x| t.degree(x) < 3).count();
        if must_label > k {
            continue;
        }
        for mask in 0u32..(1 << v) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut c = t.clone();
            for x in 0..v {
                c.set_labeled(x, mask >> x & 1 == 1);
            }
            if c.in_shape_class() {
                out.push(c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{catalan, epsilon, eta0};
    use num_traits::ToPrimitive;
    use std::collections::HashSet;

    #[test]
    fn small_map_counts() {
        assert_eq!(count_maps_by_genus(2, OracleCaps::default()).unwrap(), vec![2, 1]);
        assert_eq!(count_maps_by_genus(3, OracleCaps::default()).unwrap(), vec![5, 10]);
        assert_eq!(enumerate_maps(2, MapFilter::genus(1), OracleCaps::default()).unwrap().len(), 1);
        assert_eq!(enumerate_maps(3, MapFilter::genus(1), OracleCaps::default()).unwrap().len(), 10);
        let caps = OracleCaps::default();
        assert_eq!(count_maps_where(4, MapFilter::default(), caps, |_| true).unwrap(), 105);
        assert_eq!(count_maps_where(4, MapFilter::default(), caps, |m| m.genus() == 2).unwrap(), 21);
    }

    #[test]
    fn pruned_matches_unpruned() {
        for m in 1..=5 {
            let all = enumerate_maps_unpruned(m);
            assert_eq!(all.len() as u64, (1..2 * m).step_by(2).map(|x| x as u64).product::<u64>());
            for g in 0..=m / 2 {
                let want: HashSet<_> = all.iter().filter(|x| x.genus() == g).cloned().collect();
                let got: Vec<_> = enumerate_maps(m, MapFilter::genus(g), OracleCaps::default()).unwrap();
                assert_eq!(got.len(), want.len());
                assert_eq!(got.iter().cloned().collect::<HashSet<_>>(), want);
                let shape: HashSet<_> = all
                    .iter()
                    .filter(|x| {
                        x.genus() == g
                            && x.is_planted()
                            && PlantedMap::new((*x).clone()).unwrap().min_non_plant_degree().is_some_and(|d| d >= 3)
                    })
                    .cloned()
                    .collect();
                let got = enumerate_maps(m, MapFilter::shape(g), OracleCaps::default()).unwrap();
                assert_eq!(got.iter().cloned().collect::<HashSet<_>>(), shape, "m={m} g={g}");
            }
        }
    }

    #[test]
    fn maps_match_epsilon() {
        for m in 1..=6 {
            let counts = count_maps_by_genus(m, OracleCaps::default()).unwrap();
            for (g, c) in counts.iter().enumerate() {
                assert_eq!(epsilon(g, m).to_u64().unwrap(), *c, "m={m} g={g}");
            }
        }
    }

    #[test]
    fn genus_one_shapes() {
        let counts: Vec<_> =
            (2..=4).map(|n| count_shape_maps(n, 1, OracleCaps::default()).unwrap()).collect();
        assert_eq!(counts, vec![1, 2, 1]);
        assert_eq!(count_shape_maps(4, 2, OracleCaps::default()).unwrap(), 21);
    }

    #[test]
    fn caps_enforced() {
        assert!(enumerate_maps(11, MapFilter::default(), OracleCaps::default()).is_err());
        assert!(all_plane_trees(11).is_err());
    }

    #[test]
    fn trees() {
        for e in 0..=7 {
            let ts = all_plane_trees(e).unwrap();
            assert_eq!(ts.len(), catalan(e).to_usize().unwrap());
            assert_eq!(ts.iter().collect::<HashSet<_>>().len(), ts.len());
        }
        assert_eq!(enumerate_class_trees(2, 3).unwrap().len(), 2);
        assert_eq!(enumerate_class_trees(4, 3).unwrap().len(), 2);
        for n in 0..=6 {
            for k in 0..=n + 2 {
                assert_eq!(
                    enumerate_class_trees(n, k).unwrap().len(),
                    eta0(n, k).to_usize().unwrap(),
                    "n={n} k={k}"
                );
            }
        }
    }
}
