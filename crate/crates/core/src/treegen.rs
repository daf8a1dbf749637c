//! Rooted plane trees with optional vertex labels.
//!
//! Trees are planted: the root carries one extra virtual half-edge, so every
//! vertex has degree `children + 1`. A tree with `n` edges and `k` labeled
//! vertices is in the shape class when every unlabeled vertex has degree
//! at least 3.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::fatcore::{Permutation, UnicellularMap};
use crate::surgery::LabeledMap;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("sector ({vertex},{position}) does not exist")]
    InvalidSector { vertex: Vertex, position: usize },
    #[error("vertex {0} does not exist")]
    InvalidVertex(Vertex),
    #[error("the root cannot be removed")]
    RootRemoval,
    #[error("tree is not in the shape class")]
    NotInClass,
    #[error("requested {requested} insertions but only {available} shape-sectors exist")]
    TooManyInsertions { requested: usize, available: usize },
    #[error("malformed tree string at column {0}")]
    Parse(usize),
}

/// Gap `position` among the children of `vertex`: 0 is before the first
/// child, `children.len()` after the last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sector {
    pub vertex: Vertex,
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RemyKind {
    Leaf,
    NonLeaf,
}

/// Arena-backed rooted plane tree.
#[derive(Clone, Debug)]
pub struct PlaneTree {
    children: Vec<Vec<Vertex>>,
    parent: Vec<Option<Vertex>>,
    labeled: Vec<bool>,
    root: Vertex,
}

impl PartialEq for PlaneTree {
    fn eq(&self, other: &Self) -> bool {
        self.encode() == other.encode()
    }
}

impl Eq for PlaneTree {}

impl std::hash::Hash for PlaneTree {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.encode().hash(state);
    }
}

impl PlaneTree {
    /// A single root.
    pub fn single(labeled: bool) -> Self {
        Self { children: vec![Vec::new()], parent: vec![None], labeled: vec![labeled], root: 0 }
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.len() - 1
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn is_labeled(&self, v: Vertex) -> bool {
        self.labeled[v]
    }

    pub fn set_labeled(&mut self, v: Vertex, labeled: bool) {
        self.labeled[v] = labeled;
    }

    pub fn label_count(&self) -> usize {
        self.labeled.iter().filter(|&&l| l).count()
    }

    /// Children plus the parent edge (or the plant for the root).
    pub fn degree(&self, v: Vertex) -> usize {
        self.children[v].len() + 1
    }

    pub fn in_shape_class(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.labeled[v] || self.degree(v) >= 3)
    }

    /// Vertices in preorder.
    pub fn preorder(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.vertex_count());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    /// Preorder list of `(child count, labeled)`; equal iff trees are equal.
    fn encode(&self) -> Vec<(usize, bool)> {
        self.preorder().into_iter().map(|v| (self.children[v].len(), self.labeled[v])).collect()
    }

    /// The same tree with vertices renumbered in preorder.
    pub fn normalized(&self) -> PlaneTree {
        let order = self.preorder();
        let mut new_id = vec![0; self.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let children = order.iter().map(|&v| self.children[v].iter().map(|&c| new_id[c]).collect()).collect();
        let parent = order.iter().map(|&v| self.parent[v].map(|p| new_id[p])).collect();
        let labeled = order.iter().map(|&v| self.labeled[v]).collect();
        PlaneTree { children, parent, labeled, root: 0 }
    }

    fn check_sector(&self, s: Sector) -> Result<(), TreeError> {
        if s.vertex >= self.vertex_count() || s.position > self.children[s.vertex].len() {
            return Err(TreeError::InvalidSector { vertex: s.vertex, position: s.position });
        }
        Ok(())
    }

    /// All `2n + 1` sectors.
    pub fn sectors(&self) -> Vec<Sector> {
        self.preorder()
            .into_iter()
            .flat_map(|v| (0..=self.children[v].len()).map(move |position| Sector { vertex: v, position }))
            .collect()
    }

    /// Rémy insertion; the new vertex gets id `vertex_count()` of the input.
    ///
    /// A leaf insertion hangs a new leaf in the sector. A non-leaf insertion
    /// puts a new vertex `u` in place of the sector's vertex `v`, with `v`
    /// (keeping the children left of the sector) as first child of `u`,
    /// followed by the children right of the sector.
    pub fn remy_insert(&self, s: Sector, kind: RemyKind, label: bool) -> Result<PlaneTree, TreeError> {
        self.check_sector(s)?;
        let mut t = self.clone();
        t.insert_in_place(s, kind, label);
        Ok(t)
    }

    fn insert_in_place(&mut self, s: Sector, kind: RemyKind, label: bool) -> Vertex {
        let u = self.vertex_count();
        let v = s.vertex;
        self.labeled.push(label);
        match kind {
            RemyKind::Leaf => {
                self.children.push(Vec::new());
                self.parent.push(Some(v));
                self.children[v].insert(s.position, u);
            }
            RemyKind::NonLeaf => {
                let right = self.children[v].split_off(s.position);
                let mut u_children = Vec::with_capacity(right.len() + 1);
                u_children.push(v);
                u_children.extend_from_slice(&right);
                for &c in &right {
                    self.parent[c] = Some(u);
                }
                let up = self.parent[v];
                match up {
                    Some(p) => {
                        let slot = self.children[p].iter().position(|&c| c == v).expect("child of its parent");
                        self.children[p][slot] = u;
                    }
                    None => self.root = u,
                }
                self.parent.push(up);
                self.parent[v] = Some(u);
                self.children.push(u_children);
            }
        }
        u
    }

    /// Inverse of [`PlaneTree::remy_insert`] for vertex `u`.
    ///
    /// Returns the smaller tree, the sector, the kind and `u`'s label. Vertex
    /// ids above `u` shift down by one.
    pub fn remy_remove(&self, u: Vertex) -> Result<(PlaneTree, Sector, RemyKind, bool), TreeError> {
        if u >= self.vertex_count() {
            return Err(TreeError::InvalidVertex(u));
        }
        let mut t = self.clone();
        let label = t.labeled[u];
        let (sector, kind) = if t.children[u].is_empty() {
            let p = t.parent[u].ok_or(TreeError::RootRemoval)?;
            let position = t.children[p].iter().position(|&c| c == u).unwrap();
            t.children[p].remove(position);
            (Sector { vertex: p, position }, RemyKind::Leaf)
        } else {
            let kids = std::mem::take(&mut t.children[u]);
            let v = kids[0];
            let position = t.children[v].len();
            for &c in &kids[1..] {
                t.parent[c] = Some(v);
            }
            t.children[v].extend_from_slice(&kids[1..]);
            let up = t.parent[u];
            t.parent[v] = up;
            match up {
                Some(p) => {
                    let slot = t.children[p].iter().position(|&c| c == u).unwrap();
                    t.children[p][slot] = v;
                }
                None => t.root = v,
            }
            (Sector { vertex: v, position }, RemyKind::NonLeaf)
        };
        let t = t.without_vertex(u);
        let shift = |x: Vertex| if x > u { x - 1 } else { x };
        Ok((t, Sector { vertex: shift(sector.vertex), position: sector.position }, kind, label))
    }

    /// Drops a detached vertex from the arena, shifting larger ids down.
    fn without_vertex(mut self, u: Vertex) -> PlaneTree {
        let shift = |x: Vertex| if x > u { x - 1 } else { x };
        self.children.remove(u);
        self.parent.remove(u);
        self.labeled.remove(u);
        for kids in &mut self.children {
            for c in kids.iter_mut() {
                *c = shift(*c);
            }
        }
        for p in self.parent.iter_mut().flatten() {
            *p = shift(*p);
        }
        self.root = shift(self.root);
        self
    }

    /// Sectors where a non-leaf unlabeled insertion keeps the shape class:
    /// `position < children`, and `position ≥ 2` at unlabeled vertices.
    /// There are `2k - n - 2` of them.
    pub fn shape_sectors(&self) -> Result<Vec<Sector>, TreeError> {
        if !self.in_shape_class() {
            return Err(TreeError::NotInClass);
        }
        Ok(self
            .preorder()
            .into_iter()
            .flat_map(|v| {
                let lo = if self.labeled[v] { 0 } else { 2 };
                (lo..self.children[v].len()).map(move |position| Sector { vertex: v, position })
            })
            .collect())
    }

    /// Non-leaf unlabeled insertions into the given shape-sectors of `self`.
    ///
    /// Each sector is identified by the child right after it; the result does
    /// not depend on the order of `sectors`. Duplicates are rejected.
    pub fn insert_unlabeled_at(&self, sectors: &[Sector]) -> Result<PlaneTree, TreeError> {
        let valid = self.shape_sectors()?;
        let mut order = Vec::with_capacity(sectors.len());
        for s in sectors {
            match valid.iter().position(|v| v == s) {
                Some(i) if !order.contains(&i) => order.push(i),
                _ => return Err(TreeError::InvalidSector { vertex: s.vertex, position: s.position }),
            }
        }
        // Parents before children: an anchor is displaced once its own
        // vertex receives an insertion.
        order.sort_unstable();
        let anchors: Vec<Vertex> = order.iter().map(|&i| self.children[valid[i].vertex][valid[i].position]).collect();
        let mut t = self.clone();
        for c in anchors {
            let v = t.parent[c].expect("anchor is a child");
            let position = t.children[v].iter().position(|&x| x == c).unwrap();
            t.insert_in_place(Sector { vertex: v, position }, RemyKind::NonLeaf, false);
        }
        Ok(t)
    }

    /// Unlabeled non-leaf insertions into a uniform `count`-subset of the
    /// current shape-sectors.
    pub fn insert_unlabeled<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<PlaneTree, TreeError> {
        let sectors = self.shape_sectors()?;
        if count > sectors.len() {
            return Err(TreeError::TooManyInsertions { requested: count, available: sectors.len() });
        }
        let chosen: Vec<Sector> =
            rand::seq::index::sample(rng, sectors.len(), count).into_iter().map(|i| sectors[i]).collect();
        self.insert_unlabeled_at(&chosen)
    }

    /// Removes unlabeled vertices one at a time, smallest id first, until
    /// only labeled vertices remain.
    pub fn labeled_core(&self) -> PlaneTree {
        let mut t = self.clone();
        while let Some(u) = (0..t.vertex_count()).find(|&v| !t.labeled[v]) {
            t = t.remy_remove(u).expect("unlabeled vertex is removable").0;
        }
        t
    }

    /// Planted unicellular map of the tree, with the tree's labels.
    ///
    /// Half-edges follow the contour: 0 is the plant, 1 the root's side of
    /// the plant edge, and each tree edge gets two consecutive numbers, the
    /// child side first. The face is then `(0 1 … 2n+1)`, vertex identities
    /// are the numbers of their parent-side half-edges and vertices appear
    /// along the face in preorder.
    pub fn to_labeled_map(&self) -> LabeledMap {
        let n = self.edge_count() + 1;
        let mut alpha = vec![0; 2 * n];
        let mut up_half = vec![0; self.vertex_count()];
        let mut down_half = vec![0; self.vertex_count()];
        alpha[0] = 1;
        alpha[1] = 0;
        up_half[self.root] = 1;
        let mut counter = 2;
        // iterative DFS: (vertex, next child index)
        let mut stack = vec![(self.root, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if let Some(&c) = self.children[v].get(i) {
                stack.push((v, i + 1));
                up_half[c] = counter;
                counter += 1;
                stack.push((c, 0));
            } else if v != self.root {
                down_half[v] = counter;
                alpha[up_half[v]] = counter;
                alpha[counter] = up_half[v];
                counter += 1;
            }
        }
        let mut sigma = vec![0; 2 * n];
        for v in 0..self.vertex_count() {
            let mut ring = vec![up_half[v]];
            ring.extend(self.children[v].iter().map(|&c| down_half[c]));
            for (i, &h) in ring.iter().enumerate() {
                sigma[h] = ring[(i + 1) % ring.len()];
            }
        }
        let map = UnicellularMap::new(
            Permutation::new(sigma).expect("rings partition the half-edges"),
            Permutation::new(alpha).expect("edges pair the half-edges"),
        )
        .expect("a tree has one face");
        let labels: Vec<_> = (0..self.vertex_count()).filter(|&v| self.labeled[v]).map(|v| up_half[v]).collect();
        LabeledMap::planted(map, labels).expect("contour labels are vertex minima")
    }
}

/// Uniform plane tree with `e` edges, every vertex labeled.
///
/// Shuffles `e` up-steps and `e + 1` down-steps, rotates to the unique
/// cyclic shift whose proper prefixes stay nonnegative, and reads the Dyck
/// path obtained by dropping the final down-step.
pub fn uniform_tree<R: Rng + ?Sized>(e: usize, rng: &mut R) -> PlaneTree {
    let mut steps: Vec<i8> = std::iter::repeat_n(1, e).chain(std::iter::repeat_n(-1, e + 1)).collect();
    steps.shuffle(rng);
    let mut height = 0i64;
    let mut min = 0i64;
    let mut cut = 0;
    for (i, &s) in steps.iter().enumerate() {
        height += i64::from(s);
        if height < min {
            min = height;
            cut = i + 1;
        }
    }
    let len = steps.len();
    steps.rotate_left(cut % len);
    debug_assert_eq!(steps.last(), Some(&-1));
    let mut t = PlaneTree::single(true);
    t.children.reserve(e);
    let mut at = t.root;
    for &s in &steps[..len - 1] {
        if s > 0 {
            let u = t.vertex_count();
            t.children.push(Vec::new());
            t.parent.push(Some(at));
            t.labeled.push(true);
            t.children[at].push(u);
            at = u;
        } else {
            at = t.parent[at].expect("Dyck path stays above the root");
        }
    }
    t
}

impl fmt::Display for PlaneTree {
    /// `((*)()(*))`: a vertex is `(`, `*` if labeled, its children, `)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut stack = vec![(self.root, 0usize)];
        while let Some((v, i)) = stack.pop() {
            if i == 0 {
                f.write_str(if self.labeled[v] { "(*" } else { "(" })?;
            }
            if let Some(&c) = self.children[v].get(i) {
                stack.push((v, i + 1));
                stack.push((c, 0));
            } else {
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

impl FromStr for PlaneTree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut t = PlaneTree { children: Vec::new(), parent: Vec::new(), labeled: Vec::new(), root: 0 };
        let mut open: Vec<Vertex> = Vec::new();
        let mut done = false;
        let bytes = s.trim().as_bytes();
        for (col, &b) in bytes.iter().enumerate() {
            if done {
                return Err(TreeError::Parse(col));
            }
            match b {
                b'(' => {
                    let u = t.children.len();
                    t.children.push(Vec::new());
                    t.labeled.push(false);
                    let p = open.last().copied();
                    t.parent.push(p);
                    if let Some(p) = p {
                        t.children[p].push(u);
                    }
                    open.push(u);
                }
                b'*' => {
                    let &v = open.last().ok_or(TreeError::Parse(col))?;
                    if bytes[col - 1] != b'(' {
                        return Err(TreeError::Parse(col));
                    }
                    t.labeled[v] = true;
                }
                b')' => {
                    open.pop().ok_or(TreeError::Parse(col))?;
                    done = open.is_empty();
                }
                _ => return Err(TreeError::Parse(col)),
            }
        }
        if !done {
            return Err(TreeError::Parse(bytes.len()));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{catalan, eta0};
    use num_traits::ToPrimitive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::{HashMap, HashSet};

    /// Every plane tree with `e` edges, all vertices labeled.
    fn all_trees(e: usize) -> Vec<PlaneTree> {
        if e == 0 {
            return vec![PlaneTree::single(true)];
        }
        let mut out = HashSet::new();
        for t in all_trees(e - 1) {
            for s in t.sectors() {
                out.insert(t.remy_insert(s, RemyKind::Leaf, true).unwrap().normalized());
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn tree_strings() {
        let t: PlaneTree = "((*)()(*))".parse().unwrap();
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.to_string(), "((*)()(*))");
        assert!("(()".parse::<PlaneTree>().is_err());
        assert!("()()".parse::<PlaneTree>().is_err());
        assert!("(*)".parse::<PlaneTree>().unwrap().is_labeled(0));
    }

    #[test]
    fn single_root_leaf_insert() {
        let t = PlaneTree::single(true);
        let u = t.remy_insert(Sector { vertex: 0, position: 0 }, RemyKind::Leaf, true).unwrap();
        assert_eq!(u.to_string(), "(*(*))");
        let v = t.remy_insert(Sector { vertex: 0, position: 0 }, RemyKind::NonLeaf, false).unwrap();
        assert_eq!(v.to_string(), "((*))");
        assert!(t.remy_insert(Sector { vertex: 0, position: 1 }, RemyKind::Leaf, true).is_err());
    }

    #[test]
    fn tree_counts_and_remy_bijection() {
        for e in 0..=6 {
            let trees = all_trees(e);
            assert_eq!(trees.len(), catalan(e).to_usize().unwrap());
            // (tree, sector, kind) ↦ (bigger tree, new vertex) is injective and inverts
            let mut marked = HashSet::new();
            for t in &trees {
                for s in t.sectors() {
                    for kind in [RemyKind::Leaf, RemyKind::NonLeaf] {
                        let big = t.remy_insert(s, kind, false).unwrap();
                        let u = t.vertex_count();
                        let (back, s2, k2, l2) = big.remy_remove(u).unwrap();
                        assert_eq!((&back, s2, k2, l2), (t, s, kind, false));
                        let rank = big.preorder().iter().position(|&v| v == u).unwrap();
                        assert!(marked.insert((big.normalized().to_string(), rank)));
                    }
                }
            }
            assert_eq!(marked.len(), (e + 2) * catalan(e + 1).to_usize().unwrap());
        }
    }

    #[test]
    fn shape_sector_law() {
        for e in 0..=6 {
            for t in all_trees(e) {
                let k = t.vertex_count();
                assert_eq!(t.shape_sectors().unwrap().len(), k - 1);
                let mut frontier = vec![t];
                while let Some(cur) = frontier.pop() {
                    let sectors = cur.shape_sectors().unwrap();
                    let n = cur.edge_count();
                    assert_eq!(sectors.len() + n + 2, 2 * k);
                    for s in &sectors {
                        let next = cur.remy_insert(*s, RemyKind::NonLeaf, false).unwrap();
                        assert!(next.in_shape_class());
                        assert_eq!(next.shape_sectors().unwrap().len() + 1, sectors.len());
                        frontier.push(next);
                    }
                    // every other sector breaks the class
                    for s in cur.sectors() {
                        if !sectors.contains(&s) {
                            let next = cur.remy_insert(s, RemyKind::NonLeaf, false).unwrap();
                            assert!(!next.in_shape_class());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn insert_unlabeled_reaches_eta0() {
        for k in 1..=5 {
            let cores = all_trees(k - 1);
            for count in 0..k {
                let mut reached = HashSet::new();
                for t in &cores {
                    let sectors = t.shape_sectors().unwrap();
                    for subset in subsets(sectors.len(), count) {
                        let chosen: Vec<_> = subset.iter().map(|&i| sectors[i]).collect();
                        let out = t.insert_unlabeled_at(&chosen).unwrap();
                        let reversed: Vec<_> = chosen.iter().rev().copied().collect();
                        assert_eq!(t.insert_unlabeled_at(&reversed).unwrap(), out);
                        assert!(out.in_shape_class());
                        assert_eq!(&out.labeled_core(), t);
                        assert!(reached.insert(out.normalized()));
                    }
                }
                let n = k - 1 + count;
                assert_eq!(reached.len(), eta0(n, k).to_usize().unwrap(), "n={n} k={k}");
            }
        }
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

    #[test]
    fn removal_order_is_irrelevant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let t = uniform_tree(5, &mut rng);
            let out = t.insert_unlabeled(3, &mut rng).unwrap();
            let unl: Vec<_> = (0..out.vertex_count()).filter(|&v| !out.is_labeled(v)).collect();
            // remove in reverse id order as an alternative schedule
            let mut alt = out.clone();
            for &u in unl.iter().rev() {
                alt = alt.remy_remove(u).unwrap().0;
            }
            assert_eq!(alt, t);
            assert_eq!(out.labeled_core(), t);
        }
        assert!(matches!(
            uniform_tree(2, &mut rng).insert_unlabeled(3, &mut rng),
            Err(TreeError::TooManyInsertions { requested: 3, available: 2 })
        ));
    }

    #[test]
    fn uniform_tree_frequencies() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(uniform_tree(0, &mut rng).to_string(), "(*)");
        let draws = 140_000;
        let mut counts: HashMap<String, usize> = HashMap::new();
        for _ in 0..draws {
            *counts.entry(uniform_tree(4, &mut rng).to_string()).or_default() += 1;
        }
        assert_eq!(counts.len(), 14);
        let expected = draws as i64 / 14;
        // 5σ band for a binomial with p = 1/14
        for &c in counts.values() {
            assert!((c as i64 - expected).abs() < 5 * 97, "{c}");
        }
    }

    #[test]
    fn contour_map() {
        let t: PlaneTree = "(*(*)(*(*)))".parse().unwrap();
        let lm = t.to_labeled_map();
        let m = lm.map();
        assert!(m.is_canonical());
        assert_eq!(m.genus(), 0);
        assert_eq!(m.vertex_count(), t.vertex_count() + 1);
        assert_eq!(m.vertex_order_by_gamma(), vec![0, 1, 2, 4, 5]);
        assert_eq!(lm.labels(), &[1, 2, 4, 5]);
        for (v, h) in t.preorder().into_iter().zip([1, 2, 4, 5]) {
            assert_eq!(m.degree(h), t.degree(v));
        }
    }
}
