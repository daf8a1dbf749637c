//! Half-edge permutation representation of fatgraphs and unicellular maps.
//!
//! A fatgraph is a pair of permutations on the half-edges `0..2m`: the vertex
//! permutation `sigma` (cyclic order of half-edges around each vertex) and the
//! fixed-point-free involution `alpha` pairing half-edges into edges. Its
//! boundary components are the cycles of `gamma = alpha ∘ sigma`, where the
//! composition applies `sigma` first.
//!
//! A [`UnicellularMap`] is a fatgraph whose `gamma` is a single cycle. The
//! traversal of that cycle starting from half-edge `0` defines the linear
//! order `<_γ` used throughout the crate; every vertex is identified with its
//! `<_γ`-minimum half-edge.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Dense 0-based half-edge index.
pub type HalfEdge = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("permutation image {image} out of range for {len} half-edges")]
    OutOfRange { image: usize, len: usize },
    #[error("permutation is not a bijection: {0} is hit twice")]
    NotBijective(usize),
    #[error("alpha is not a fixed-point-free involution at half-edge {0}")]
    NotInvolution(HalfEdge),
    #[error("sigma and alpha act on different sets ({sigma} vs {alpha} half-edges)")]
    SizeMismatch { sigma: usize, alpha: usize },
    #[error("a map needs at least one edge")]
    Empty,
    #[error("map has {faces} boundary components, expected a single face")]
    NotUnicellular { faces: usize },
    #[error("Euler characteristic gives a non-integer genus (v={vertices}, e={edges}, r={faces})")]
    NonIntegerGenus { vertices: usize, edges: usize, faces: usize },
    #[error("fatgraph has {0} vertices, expected exactly one")]
    NotSingleVertex(usize),
    #[error("half-edge {0} out of range")]
    BadHalfEdge(HalfEdge),
    #[error("malformed map dump: {0}")]
    Parse(String),
}

/// A permutation of `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, MapError> {
        let len = images.len();
        let mut seen = vec![false; len];
        for &image in &images {
            if image >= len {
                return Err(MapError::OutOfRange { image, len });
            }
            if std::mem::replace(&mut seen[image], true) {
                return Err(MapError::NotBijective(image));
            }
        }
        Ok(Self { images })
    }

    pub fn identity(len: usize) -> Self {
        Self { images: (0..len).collect() }
    }

    /// Builds a permutation from disjoint cycles; elements not mentioned are fixed.
    pub fn from_cycles(len: usize, cycles: &[Vec<usize>]) -> Result<Self, MapError> {
        let mut images: Vec<usize> = (0..len).collect();
        let mut used = vec![false; len];
        for cycle in cycles {
            for (i, &h) in cycle.iter().enumerate() {
                if h >= len {
                    return Err(MapError::OutOfRange { image: h, len });
                }
                if std::mem::replace(&mut used[h], true) {
                    return Err(MapError::NotBijective(h));
                }
                images[h] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Self::new(images.clone()).is_ok());
        Self { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, h: usize) -> usize {
        self.images[h]
    }

    /// The preimage of `x`, found by walking its cycle.
    pub fn inverse_image(&self, x: usize) -> usize {
        let mut h = x;
        loop {
            let next = self.images[h];
            if next == x {
                return h;
            }
            h = next;
        }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (h, &image) in self.images.iter().enumerate() {
            inv[image] = h;
        }
        Self { images: inv }
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Self {
            images: other.images.iter().map(|&h| self.images[h]).collect(),
        }
    }

    /// Cycles in order of their smallest element, each starting at that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                cycle.push(h);
                h = self.images[h];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                h = self.images[h];
            }
        }
        count
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(h, &image)| image != h && self.images[image] == h)
    }
}

/// An orientable fatgraph `(H, sigma, alpha)` with any number of faces.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fatgraph {
    sigma: Permutation,
    alpha: Permutation,
}

impl Fatgraph {
    pub fn new(sigma: Permutation, alpha: Permutation) -> Result<Self, MapError> {
        if sigma.len() != alpha.len() {
            return Err(MapError::SizeMismatch { sigma: sigma.len(), alpha: alpha.len() });
        }
        if let Some(h) = (0..alpha.len()).find(|&h| {
            let a = alpha.apply(h);
            a == h || alpha.apply(a) != h
        }) {
            return Err(MapError::NotInvolution(h));
        }
        Ok(Self { sigma, alpha })
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn gamma(&self) -> Permutation {
        self.alpha.compose(&self.sigma)
    }

    /// The `gamma`-orbit of half-edge 0. Its length equals `2m` iff the
    /// fatgraph is unicellular.
    pub fn face_cycle(&self) -> Vec<HalfEdge> {
        if self.half_edge_count() == 0 {
            return Vec::new();
        }
        let mut orbit = vec![0];
        let mut h = self.alpha.apply(self.sigma.apply(0));
        while h != 0 {
            orbit.push(h);
            h = self.alpha.apply(self.sigma.apply(h));
        }
        orbit
    }

    pub fn vertex_count(&self) -> usize {
        self.sigma.cycle_count()
    }

    pub fn face_count(&self) -> usize {
        self.gamma().cycle_count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Genus of the closed surface the fatgraph spans, `1 - χ/2`.
    ///
    /// Assumes a connected fatgraph; an odd characteristic or a negative genus
    /// signals corrupted permutation data.
    pub fn surface_genus(&self) -> Result<usize, MapError> {
        let (vertices, edges, faces) = (self.vertex_count(), self.edge_count(), self.face_count());
        let twice = 2 - (vertices as i64 - edges as i64 + faces as i64);
        if twice < 0 || twice % 2 != 0 {
            return Err(MapError::NonIntegerGenus { vertices, edges, faces });
        }
        Ok((twice / 2) as usize)
    }
}

/// Poincaré dual of a one-vertex fatgraph: `(H, sigma, alpha) -> (H, alpha∘sigma, alpha)`.
///
/// Faces of the input become vertices of the output; the result has a single
/// face (the input's vertex) and the same genus.
pub fn poincare_dual(fatgraph: &Fatgraph) -> Result<UnicellularMap, MapError> {
    let vertices = fatgraph.vertex_count();
    if vertices != 1 {
        return Err(MapError::NotSingleVertex(vertices));
    }
    UnicellularMap::new(fatgraph.gamma(), fatgraph.alpha.clone())
}

/// Up/down classification of a half-edge relative to `sigma(h)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Up,
    Down,
}

/// A fatgraph with exactly one boundary component, `gamma` a `2m`-cycle.
///
/// Half-edge 0 is the `γ`-origin. The map caches the `γ`-rank of every
/// half-edge so that `<_γ` comparisons are O(1).
#[derive(Clone, Debug)]
pub struct UnicellularMap {
    sigma: Permutation,
    alpha: Permutation,
    /// `face[i]` is the `i`-th half-edge along `gamma` from 0.
    face: Vec<HalfEdge>,
    /// Inverse of `face`.
    rank: Vec<usize>,
}

impl PartialEq for UnicellularMap {
    fn eq(&self, other: &Self) -> bool {
        self.sigma == other.sigma && self.alpha == other.alpha
    }
}

impl Eq for UnicellularMap {}

impl std::hash::Hash for UnicellularMap {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.sigma.hash(state);
        self.alpha.hash(state);
    }
}

impl UnicellularMap {
    pub fn new(sigma: Permutation, alpha: Permutation) -> Result<Self, MapError> {
        Self::from_fatgraph(Fatgraph::new(sigma, alpha)?)
    }

    pub fn from_fatgraph(fatgraph: Fatgraph) -> Result<Self, MapError> {
        let Fatgraph { sigma, alpha } = fatgraph;
        if alpha.is_empty() {
            return Err(MapError::Empty);
        }
        Self::from_parts(sigma, alpha).map_err(|(sigma, alpha)| MapError::NotUnicellular {
            faces: alpha.compose(&sigma).cycle_count(),
        })
    }

    /// Returns the parts back when `gamma` is not a single cycle.
    fn from_parts(
        sigma: Permutation,
        alpha: Permutation,
    ) -> Result<Self, (Permutation, Permutation)> {
        let n = alpha.len();
        let mut face = Vec::with_capacity(n);
        let mut rank = vec![usize::MAX; n];
        let mut h = 0;
        loop {
            rank[h] = face.len();
            face.push(h);
            h = alpha.apply(sigma.apply(h));
            if h == 0 || face.len() > n {
                break;
            }
        }
        if face.len() != n {
            return Err((sigma, alpha));
        }
        let map = Self { sigma, alpha, face, rank };
        // m + 1 - v is even for any unicellular map (Euler with r = 1).
        debug_assert!((map.edge_count() + 1 - map.vertex_count()) % 2 == 0);
        Ok(map)
    }

    /// Replaces `sigma` keeping `alpha`; used by surgery, which preserves
    /// unicellularity by construction.
    pub(crate) fn with_sigma(&self, sigma: Vec<usize>) -> Self {
        let sigma = Permutation::from_images_unchecked(sigma);
        Self::from_parts(sigma, self.alpha.clone())
            .unwrap_or_else(|_| panic!("surgery produced a map with several faces"))
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    /// Half-edge 0 is a fixed point of `sigma`.
    pub fn is_planted(&self) -> bool {
        self.sigma.apply(0) == 0
    }

    pub fn to_fatgraph(&self) -> Fatgraph {
        Fatgraph { sigma: self.sigma.clone(), alpha: self.alpha.clone() }
    }

    pub fn edge_count(&self) -> usize {
        self.alpha.len() / 2
    }

    pub fn half_edge_count(&self) -> usize {
        self.alpha.len()
    }

    #[inline]
    pub fn gamma(&self, h: HalfEdge) -> HalfEdge {
        self.alpha.apply(self.sigma.apply(h))
    }

    /// Half-edges in `<_γ` order, starting at 0.
    pub fn face_cycle(&self) -> &[HalfEdge] {
        &self.face
    }

    /// Position of `h` along the face, i.e. its `<_γ` rank.
    #[inline]
    pub fn rank(&self, h: HalfEdge) -> usize {
        self.rank[h]
    }

    #[inline]
    pub fn precedes(&self, a: HalfEdge, b: HalfEdge) -> bool {
        self.rank[a] < self.rank[b]
    }

    pub fn vertex_count(&self) -> usize {
        self.sigma.cycle_count()
    }

    /// `(m + 1 - v) / 2`.
    pub fn genus(&self) -> usize {
        (self.edge_count() + 1 - self.vertex_count()) / 2
    }

    /// The vertex of `h`, as its `<_γ`-minimum half-edge.
    pub fn vertex_of(&self, h: HalfEdge) -> HalfEdge {
        let mut best = h;
        let mut x = self.sigma.apply(h);
        while x != h {
            if self.rank[x] < self.rank[best] {
                best = x;
            }
            x = self.sigma.apply(x);
        }
        best
    }

    pub fn is_vertex_min(&self, h: HalfEdge) -> bool {
        self.vertex_of(h) == h
    }

    pub fn degree(&self, h: HalfEdge) -> usize {
        let mut d = 1;
        let mut x = self.sigma.apply(h);
        while x != h {
            d += 1;
            x = self.sigma.apply(x);
        }
        d
    }

    /// Vertices (as minimum half-edges) in the order `gamma` first visits them.
    pub fn vertex_order_by_gamma(&self) -> Vec<HalfEdge> {
        let mut seen = vec![false; self.half_edge_count()];
        let mut out = Vec::with_capacity(self.half_edge_count());
        for &h in &self.face {
            if seen[h] {
                continue;
            }
            out.push(h);
            let mut x = h;
            loop {
                seen[x] = true;
                x = self.sigma.apply(x);
                if x == h {
                    break;
                }
            }
        }
        out
    }

    /// The `sigma`-cycle through `h`, starting at `h`.
    pub fn vertex_half_edges(&self, h: HalfEdge) -> Vec<HalfEdge> {
        let mut out = vec![h];
        let mut x = self.sigma.apply(h);
        while x != h {
            out.push(x);
            x = self.sigma.apply(x);
        }
        out
    }

    /// Up-step iff `h <_γ sigma(h)`; otherwise (including `sigma(h) = h`) a down-step.
    pub fn classify_halfedge(&self, h: HalfEdge) -> Step {
        if self.precedes(h, self.sigma.apply(h)) {
            Step::Up
        } else {
            Step::Down
        }
    }

    /// A down-step whose `sigma`-successor is not its vertex's minimum.
    pub fn is_trisection(&self, h: HalfEdge) -> bool {
        let next = self.sigma.apply(h);
        self.classify_halfedge(h) == Step::Down && !self.is_vertex_min(next)
    }

    /// All trisections in `<_γ` order; always `2 * genus` of them.
    pub fn trisections(&self) -> Vec<HalfEdge> {
        // Walk each vertex once from its minimum: sigma(h) is a vertex minimum
        // only when it closes the cycle.
        let mut out = Vec::new();
        for v in self.vertex_order_by_gamma() {
            let mut h = v;
            loop {
                let next = self.sigma.apply(h);
                if next == v {
                    break;
                }
                if self.rank[next] < self.rank[h] {
                    out.push(h);
                }
                h = next;
            }
        }
        out.sort_by_key(|&h| self.rank[h]);
        out
    }

    /// Relabels half-edges by their `<_γ` rank so that `gamma = (0 1 … 2m-1)`.
    ///
    /// Two rooted maps are isomorphic iff their canonical forms are equal.
    pub fn canonical(&self) -> UnicellularMap {
        let n = self.half_edge_count();
        let mut sigma = vec![0; n];
        let mut alpha = vec![0; n];
        for h in 0..n {
            sigma[self.rank[h]] = self.rank[self.sigma.apply(h)];
            alpha[self.rank[h]] = self.rank[self.alpha.apply(h)];
        }
        UnicellularMap {
            sigma: Permutation::from_images_unchecked(sigma),
            alpha: Permutation::from_images_unchecked(alpha),
            face: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.face.iter().enumerate().all(|(i, &h)| i == h)
    }
}

impl fmt::Display for Fatgraph {
    /// `m=<int> alpha=<h0,h1;h2,h3;...> sigma_cycles=<(a,b,c)(d,e)...>`
    ///
    /// Edges are listed by their smaller half-edge; cycles start at their
    /// smallest element and are sorted by it.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={} alpha=", self.edge_count())?;
        let mut first = true;
        for h in 0..self.half_edge_count() {
            let a = self.alpha.apply(h);
            if h < a {
                if !first {
                    f.write_str(";")?;
                }
                write!(f, "{h},{a}")?;
                first = false;
            }
        }
        f.write_str(" sigma_cycles=")?;
        for cycle in self.sigma.cycles() {
            f.write_str("(")?;
            for (i, h) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{h}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for UnicellularMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_fatgraph().fmt(f)
    }
}

impl FromStr for Fatgraph {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |what: &str| MapError::Parse(what.to_string());
        let mut fields = s.split_whitespace();
        let m: usize = fields
            .next()
            .and_then(|f| f.strip_prefix("m="))
            .ok_or_else(|| bad("missing m="))?
            .parse()
            .map_err(|_| bad("m is not an integer"))?;
        let alpha_field =
            fields.next().and_then(|f| f.strip_prefix("alpha=")).ok_or_else(|| bad("missing alpha="))?;
        let sigma_field = fields
            .next()
            .and_then(|f| f.strip_prefix("sigma_cycles="))
            .ok_or_else(|| bad("missing sigma_cycles="))?;
        if fields.next().is_some() {
            return Err(bad("trailing fields"));
        }
        let n = 2 * m;
        let mut pairs = Vec::new();
        for pair in alpha_field.split(';').filter(|p| !p.is_empty()) {
            let (a, b) = pair.split_once(',').ok_or_else(|| bad("alpha pair without comma"))?;
            let a: usize = a.parse().map_err(|_| bad("alpha entry"))?;
            let b: usize = b.parse().map_err(|_| bad("alpha entry"))?;
            pairs.push(vec![a, b]);
        }
        if pairs.len() != m {
            return Err(bad("alpha must list exactly m pairs"));
        }
        let alpha = Permutation::from_cycles(n, &pairs)?;
        let mut cycles = Vec::new();
        let mut rest = sigma_field;
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("sigma cycle must start with '('"))?;
            let end = body.find(')').ok_or_else(|| bad("unterminated sigma cycle"))?;
            let cycle = body[..end]
                .split(',')
                .map(|x| x.parse::<usize>().map_err(|_| bad("sigma entry")))
                .collect::<Result<Vec<_>, _>>()?;
            cycles.push(cycle);
            rest = &body[end + 1..];
        }
        if cycles.iter().map(Vec::len).sum::<usize>() != n {
            return Err(bad("sigma cycles must cover every half-edge"));
        }
        let sigma = Permutation::from_cycles(n, &cycles)?;
        Fatgraph::new(sigma, alpha)
    }
}

impl FromStr for UnicellularMap {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        UnicellularMap::from_fatgraph(s.parse()?)
    }
}

/// A unicellular map whose half-edge 0 forms a degree-1 vertex (the plant).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlantedMap {
    map: UnicellularMap,
}

impl PlantedMap {
    pub fn new(map: UnicellularMap) -> Result<Self, MapError> {
        if !map.is_planted() {
            return Err(MapError::Parse("half-edge 0 is not a degree-1 plant".into()));
        }
        Ok(Self { map })
    }

    pub fn map(&self) -> &UnicellularMap {
        &self.map
    }

    pub fn into_map(self) -> UnicellularMap {
        self.map
    }

    pub fn genus(&self) -> usize {
        self.map.genus()
    }

    /// Smallest degree over non-plant vertices (`None` when the plant is alone,
    /// which cannot happen for a connected map with one edge or more).
    pub fn min_non_plant_degree(&self) -> Option<usize> {
        self.map
            .vertex_order_by_gamma()
            .into_iter()
            .filter(|&v| v != 0)
            .map(|v| self.map.degree(v))
            .min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(sigma: &[Vec<usize>], alpha: &[Vec<usize>], n: usize) -> UnicellularMap {
        UnicellularMap::new(
            Permutation::from_cycles(n, sigma).unwrap(),
            Permutation::from_cycles(n, alpha).unwrap(),
        )
        .unwrap()
    }

    fn one_vertex_torus() -> UnicellularMap {
        map(&[vec![0, 1, 2, 3]], &[vec![0, 2], vec![1, 3]], 4)
    }

    #[test]
    fn single_edge_tree() {
        let m = map(&[], &[vec![0, 1]], 2);
        assert_eq!(m.face_cycle(), &[0, 1]);
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.genus(), 0);
        assert!(m.trisections().is_empty());
    }

    #[test]
    fn one_vertex_genus_one() {
        let m = one_vertex_torus();
        assert_eq!(m.face_cycle(), &[0, 3, 2, 1]);
        assert_eq!(m.vertex_count(), 1);
        assert_eq!(m.genus(), 1);
        assert_eq!(m.trisections(), vec![2, 1]);
        assert!(m.is_trisection(1) && m.is_trisection(2));
        assert!(!m.is_trisection(0) && !m.is_trisection(3));
    }

    #[test]
    fn one_vertex_fatgraph_with_three_faces() {
        let sigma = Permutation::from_cycles(8, &[(0..8).collect()]).unwrap();
        let alpha =
            Permutation::from_cycles(8, &[vec![0, 7], vec![1, 3], vec![2, 5], vec![4, 6]]).unwrap();
        let f = Fatgraph::new(sigma, alpha).unwrap();
        assert_eq!(f.gamma().cycles(), vec![vec![0, 3, 6], vec![1, 5, 4, 2], vec![7]]);
        assert_eq!(f.face_count(), 3);
        assert_eq!(f.face_cycle().len(), 3);
        assert!(matches!(
            UnicellularMap::from_fatgraph(f.clone()),
            Err(MapError::NotUnicellular { faces: 3 })
        ));
        assert_eq!(f.surface_genus().unwrap(), 1);

        let dual = poincare_dual(&f).unwrap();
        assert_eq!(dual.vertex_count(), 3);
        assert_eq!(dual.edge_count(), 4);
        assert_eq!(dual.genus(), 1);
        // the rainbow (0,7) is dual to the degree-1 vertex {7}
        assert_eq!(dual.degree(7), 1);
        assert_eq!(dual.face_cycle(), &[0, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn dual_of_loop_and_non_single_vertex() {
        let f = Fatgraph::new(
            Permutation::from_cycles(2, &[vec![0, 1]]).unwrap(),
            Permutation::from_cycles(2, &[vec![0, 1]]).unwrap(),
        )
        .unwrap();
        let d = poincare_dual(&f).unwrap();
        assert_eq!(d.edge_count(), 1);
        assert_eq!(d.vertex_count(), 2);

        let tree = Fatgraph::new(Permutation::identity(2), Permutation::from_cycles(2, &[vec![0, 1]]).unwrap())
            .unwrap();
        assert_eq!(poincare_dual(&tree), Err(MapError::NotSingleVertex(2)));
    }

    #[test]
    fn path_vertex_order() {
        // path a - b - c with edges (0,1) and (2,3); b = (1 2)
        let m = map(&[vec![1, 2]], &[vec![0, 1], vec![2, 3]], 4);
        assert_eq!(m.face_cycle(), &[0, 1, 3, 2]);
        assert_eq!(m.vertex_order_by_gamma(), vec![0, 1, 3]);
        assert_eq!(m.genus(), 0);
        assert_eq!(m.vertex_of(2), 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Permutation::new(vec![0, 0]), Err(MapError::NotBijective(0)));
        assert!(matches!(Permutation::new(vec![2, 0]), Err(MapError::OutOfRange { .. })));
        let alpha = Permutation::identity(2);
        assert_eq!(Fatgraph::new(Permutation::identity(2), alpha), Err(MapError::NotInvolution(0)));
    }

    #[test]
    fn down_steps_count_vertices_plus_trisections() {
        let m = one_vertex_torus();
        let downs = (0..4).filter(|&h| m.classify_halfedge(h) == Step::Down).count();
        assert_eq!(downs, m.vertex_count() + 2 * m.genus());
    }

    #[test]
    fn dump_round_trip() {
        let m = one_vertex_torus();
        let text = m.to_string();
        assert_eq!(text, "m=2 alpha=0,2;1,3 sigma_cycles=(0,1,2,3)");
        let back: UnicellularMap = text.parse().unwrap();
        assert_eq!(back, m);
        assert!("m=2 alpha=0,2 sigma_cycles=(0,1,2,3)".parse::<Fatgraph>().is_err());
        assert!("m=1 alpha=0,1 sigma_cycles=(0)(1".parse::<Fatgraph>().is_err());
    }

    #[test]
    fn canonical_relabels_along_face() {
        let m = one_vertex_torus();
        let c = m.canonical();
        assert!(c.is_canonical());
        assert_eq!(c.genus(), 1);
        assert_eq!(c.canonical(), c);
    }
}
