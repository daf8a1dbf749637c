//! RNA diagrams and their shapes.
//!
//! A [`Diagram`] is a backbone `1..=len` with a partial matching of arcs. Its
//! [`Shape`] is obtained by repeatedly collapsing stacks and deleting 1-arcs
//! and unpaired vertices, then closing everything under a rainbow arc.
//! Shapes with `n` pure arcs correspond to planted unicellular maps with
//! `n + 1` edges whose non-plant vertices have degree at least 3.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::fatcore::{Fatgraph, HalfEdge, MapError, Permutation, PlantedMap, UnicellularMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("arc ({0},{1}) is outside the backbone 1..={2}")]
    OutOfRange(usize, usize, usize),
    #[error("arc ({0},{0}) pairs a vertex with itself")]
    SelfPair(usize),
    #[error("vertex {0} is paired twice")]
    PairedTwice(usize),
    #[error("unbalanced brackets at column {0}")]
    Unbalanced(usize),
    #[error("unexpected character {0:?} at column {1}")]
    BadChar(char, usize),
    #[error("malformed arc list: {0}")]
    BadArcList(String),
    #[error("empty structure")]
    Empty,
    #[error("not a shape: {0}")]
    NotAShape(&'static str),
    #[error("map is not a shape map: {0}")]
    NotAShapeMap(&'static str),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A base pair `(i, j)`, 1-based with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub i: usize,
    pub j: usize,
}

impl Arc {
    pub fn new(a: usize, b: usize) -> Self {
        Self { i: a.min(b), j: a.max(b) }
    }

    pub fn is_one_arc(&self) -> bool {
        self.j == self.i + 1
    }
}

/// `true` iff the arcs interleave, `i < r < j < s` in some order.
pub fn crossing(a: Arc, b: Arc) -> bool {
    (a.i < b.i && b.i < a.j && a.j < b.j) || (b.i < a.i && a.i < b.j && b.j < a.j)
}

/// A backbone with a partial matching.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    /// `partner[p]` for positions `1..=len`; index 0 unused.
    partner: Vec<Option<usize>>,
}

impl Diagram {
    pub fn new(len: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, DiagramError> {
        let mut partner = vec![None; len + 1];
        for (a, b) in arcs {
            if a == b {
                return Err(DiagramError::SelfPair(a));
            }
            let arc = Arc::new(a, b);
            if arc.i == 0 || arc.j > len {
                return Err(DiagramError::OutOfRange(arc.i, arc.j, len));
            }
            for p in [arc.i, arc.j] {
                if partner[p].is_some() {
                    return Err(DiagramError::PairedTwice(p));
                }
            }
            partner[arc.i] = Some(arc.j);
            partner[arc.j] = Some(arc.i);
        }
        Ok(Self { partner })
    }

    pub fn len(&self) -> usize {
        self.partner.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn partner(&self, p: usize) -> Option<usize> {
        self.partner.get(p).copied().flatten()
    }

    /// Arcs sorted by left endpoint.
    pub fn arcs(&self) -> Vec<Arc> {
        (1..=self.len())
            .filter_map(|p| self.partner(p).filter(|&q| q > p).map(|q| Arc { i: p, j: q }))
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.partner.iter().flatten().count() / 2
    }

    pub fn has_rainbow(&self) -> bool {
        self.len() >= 2 && self.partner(1) == Some(self.len())
    }

    pub fn is_full_matching(&self) -> bool {
        (1..=self.len()).all(|p| self.partner(p).is_some())
    }

    /// Arcs `(i, j)` with `(i+1, j-1)` also an arc.
    pub fn parallel_pairs(&self) -> Vec<(Arc, Arc)> {
        self.arcs()
            .into_iter()
            .filter(|a| a.j > a.i + 2 && self.partner(a.i + 1) == Some(a.j - 1))
            .map(|a| (a, Arc { i: a.i + 1, j: a.j - 1 }))
            .collect()
    }

    /// Maximal stacks of parallel arcs, outermost first, in order of left endpoint.
    pub fn stacks(&self) -> Vec<Vec<Arc>> {
        let mut out = Vec::new();
        for a in self.arcs() {
            let is_inner = a.i > 1 && self.partner(a.i - 1) == Some(a.j + 1);
            if is_inner {
                continue;
            }
            let mut stack = vec![a];
            let mut cur = a;
            while cur.j > cur.i + 2 && self.partner(cur.i + 1) == Some(cur.j - 1) {
                cur = Arc { i: cur.i + 1, j: cur.j - 1 };
                stack.push(cur);
            }
            out.push(stack);
        }
        out
    }

    /// Encloses the diagram in a new outermost arc `(1, len + 2)`.
    pub fn with_rainbow(&self) -> Diagram {
        let len = self.len() + 2;
        let arcs = self.arcs().into_iter().map(|a| (a.i + 1, a.j + 1)).chain([(1, len)]);
        Diagram::new(len, arcs).expect("shifted matching stays valid")
    }

    /// Arc-list line `<len>: i1,j1 i2,j2 …`.
    pub fn serialize(&self) -> String {
        let mut out = format!("{}:", self.len());
        for a in self.arcs() {
            out.push_str(&format!(" {},{}", a.i, a.j));
        }
        out
    }

    /// Bracket notation using `()`, `[]`, `{}`, `<>` and then letter pairs,
    /// assigning each arc the first bracket type it does not cross.
    pub fn to_bracket(&self) -> Option<String> {
        let types: Vec<(char, char)> = [('(', ')'), ('[', ']'), ('{', '}'), ('<', '>')]
            .into_iter()
            .chain(('A'..='Z').zip('a'..='z'))
            .collect();
        let mut pages: Vec<Vec<Arc>> = vec![Vec::new(); types.len()];
        let mut out = vec!['.'; self.len()];
        for a in self.arcs() {
            let page = pages.iter().position(|arcs| arcs.iter().all(|&b| !crossing(a, b)))?;
            pages[page].push(a);
            out[a.i - 1] = types[page].0;
            out[a.j - 1] = types[page].1;
        }
        Some(out.into_iter().collect())
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Genus of the surface obtained by collapsing the backbone of `d` to one
/// vertex: `(1 + arcs - r) / 2` with `r` the number of boundary components.
pub fn diagram_genus(d: &Diagram) -> usize {
    let paired: Vec<usize> = (1..=d.len()).filter(|&p| d.partner(p).is_some()).collect();
    if paired.is_empty() {
        return 0;
    }
    let index: HashMap<usize, usize> = paired.iter().enumerate().map(|(h, &p)| (p, h)).collect();
    let n = paired.len();
    let sigma = Permutation::new((0..n).map(|h| (h + 1) % n).collect()).expect("cycle");
    let alpha = Permutation::new(paired.iter().map(|&p| index[&d.partner(p).unwrap()]).collect())
        .expect("matching");
    let faces = Fatgraph::new(sigma, alpha).expect("matching is an involution").face_count();
    let arcs = n / 2;
    debug_assert!((1 + arcs - faces) % 2 == 0);
    (1 + arcs - faces) / 2
}

/// A diagram with rainbow `(1, len)`, every vertex paired, no 1-arcs and
/// no parallel arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    diagram: Diagram,
}

impl Shape {
    pub fn new(diagram: Diagram) -> Result<Self, DiagramError> {
        if !diagram.has_rainbow() {
            return Err(DiagramError::NotAShape("missing rainbow"));
        }
        if !diagram.is_full_matching() {
            return Err(DiagramError::NotAShape("unpaired vertex"));
        }
        if diagram.arc_count() < 2 {
            return Err(DiagramError::NotAShape("no pure arcs"));
        }
        if diagram.arcs().iter().any(|a| a.is_one_arc()) {
            return Err(DiagramError::NotAShape("contains a 1-arc"));
        }
        if !diagram.parallel_pairs().is_empty() {
            return Err(DiagramError::NotAShape("contains parallel arcs"));
        }
        Ok(Self { diagram })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    /// Arcs other than the rainbow.
    pub fn pure_arcs(&self) -> Vec<Arc> {
        let len = self.diagram.len();
        self.diagram.arcs().into_iter().filter(|a| !(a.i == 1 && a.j == len)).collect()
    }

    pub fn pure_arc_count(&self) -> usize {
        self.diagram.arc_count() - 1
    }

    pub fn genus(&self) -> usize {
        diagram_genus(&self.diagram)
    }

    /// Pure arcs without the rainbow, on positions `1..=2n`.
    pub fn pure_diagram(&self) -> Diagram {
        let arcs = self.pure_arcs().into_iter().map(|a| (a.i - 1, a.j - 1));
        Diagram::new(self.diagram.len() - 2, arcs).expect("inner matching is valid")
    }

    /// Letters `A…Z`, then `a…z`, then `<52>`, `<53>`, … assigned to pure
    /// arcs by left endpoint, written at both endpoints.
    pub fn canonical_word(&self) -> String {
        let pure = self.pure_diagram();
        let mut label = vec![usize::MAX; pure.len() + 1];
        let mut next = 0;
        let mut out = String::with_capacity(pure.len());
        for p in 1..=pure.len() {
            let q = pure.partner(p).expect("full matching");
            if q > p {
                label[p] = next;
                label[q] = next;
                next += 1;
            }
            push_token(&mut out, label[p]);
        }
        out
    }

    /// Parses a canonical word back into its shape.
    pub fn from_word(word: &str) -> Result<Self, DiagramError> {
        let arcs = parse_word(word).ok_or(DiagramError::NotAShape("not a canonical word"))?;
        Shape::new(arcs.with_rainbow())
    }

    /// Dual planted map: boundary components of the collapsed backbone
    /// become vertices, the rainbow's becomes the plant.
    pub fn to_planted_map(&self) -> PlantedMap {
        let len = self.diagram.len();
        // position p ↔ half-edge p for p < len, position len ↔ half-edge 0
        let he = |p: usize| if p == len { 0 } else { p };
        let mut alpha = vec![0; len];
        for a in self.diagram.arcs() {
            alpha[he(a.i)] = he(a.j);
            alpha[he(a.j)] = he(a.i);
        }
        let sigma = (0..len).map(|h| alpha[(h + 1) % len]).collect();
        let map = UnicellularMap::new(
            Permutation::new(sigma).expect("alpha shifted by the face is a permutation"),
            Permutation::new(alpha).expect("arcs form a matching"),
        )
        .expect("dual of a one-vertex fatgraph has one face");
        PlantedMap::new(map).expect("rainbow dualizes to a plant")
    }

    /// Inverse of [`Shape::to_planted_map`], up to relabeling half-edges.
    pub fn from_planted_map(planted: &PlantedMap) -> Result<Self, DiagramError> {
        if planted.min_non_plant_degree().is_none_or(|d| d < 3) {
            return Err(DiagramError::NotAShapeMap("a non-plant vertex has degree below 3"));
        }
        let map = planted.map().canonical();
        let len = map.half_edge_count();
        let pos = |h: HalfEdge| if h == 0 { len } else { h };
        let arcs = (0..len)
            .filter(|&h| h < map.alpha().apply(h))
            .map(|h| (pos(h), pos(map.alpha().apply(h))));
        Shape::new(Diagram::new(len, arcs)?)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_word())
    }
}

fn push_token(out: &mut String, index: usize) {
    match index {
        0..=25 => out.push((b'A' + index as u8) as char),
        26..=51 => out.push((b'a' + (index - 26) as u8) as char),
        _ => {
            out.push('<');
            out.push_str(&index.to_string());
            out.push('>');
        }
    }
}

fn tokenize_word(word: &str) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    let mut chars = word.chars();
    while let Some(c) = chars.next() {
        let t = match c {
            'A'..='Z' => c as usize - 'A' as usize,
            'a'..='z' => c as usize - 'a' as usize + 26,
            '<' => {
                let digits: String = chars.by_ref().take_while(|&d| d != '>').collect();
                let v: usize = digits.parse().ok()?;
                if v < 52 {
                    return None;
                }
                v
            }
            _ => return None,
        };
        out.push(t);
    }
    Some(out)
}

/// Pure-arc diagram of a canonical word; `None` if `word` is not one.
fn parse_word(word: &str) -> Option<Diagram> {
    let tokens = tokenize_word(word)?;
    if tokens.is_empty() {
        return None;
    }
    let mut first: HashMap<usize, usize> = HashMap::new();
    let mut arcs = Vec::new();
    let mut next = 0;
    for (p, &t) in tokens.iter().enumerate() {
        match first.get(&t) {
            None => {
                if t != next {
                    return None;
                }
                next += 1;
                first.insert(t, p + 1);
            }
            Some(&q) => {
                if q == 0 {
                    return None;
                }
                arcs.push((q, p + 1));
                first.insert(t, 0);
            }
        }
    }
    if first.values().any(|&q| q != 0) {
        return None;
    }
    Diagram::new(tokens.len(), arcs).ok()
}

/// Parses one structure line: an arc list (`<len>: i,j …`), a canonical
/// shape word, or bracket notation.
pub fn parse_structure(line: &str) -> Result<Diagram, DiagramError> {
    let line = line.trim();
    if line.is_empty() {
        return Err(DiagramError::Empty);
    }
    if line.contains(':') {
        return parse_arc_list(line);
    }
    if let Some(d) = parse_word(line) {
        return Ok(d);
    }
    parse_bracket(line)
}

fn parse_arc_list(line: &str) -> Result<Diagram, DiagramError> {
    let bad = |m: &str| DiagramError::BadArcList(m.to_string());
    let (len, rest) = line.split_once(':').ok_or_else(|| bad("missing ':'"))?;
    let len: usize = len.trim().parse().map_err(|_| bad("length is not an integer"))?;
    let mut arcs = Vec::new();
    for pair in rest.split_whitespace() {
        let (a, b) = pair.split_once(',').ok_or_else(|| bad("pair without ','"))?;
        let a: usize = a.parse().map_err(|_| bad("index is not an integer"))?;
        let b: usize = b.parse().map_err(|_| bad("index is not an integer"))?;
        arcs.push((a, b));
    }
    Diagram::new(len, arcs)
}

fn parse_bracket(line: &str) -> Result<Diagram, DiagramError> {
    const OPEN: &str = "([{<";
    const CLOSE: &str = ")]}>";
    let mut stacks: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut arcs = Vec::new();
    let mut len = 0;
    for (col, c) in line.chars().enumerate() {
        let pos = col + 1;
        len = pos;
        let (kind, opens) = if let Some(k) = OPEN.find(c) {
            (k, true)
        } else if let Some(k) = CLOSE.find(c) {
            (k, false)
        } else if c.is_ascii_uppercase() {
            (4 + (c as usize - 'A' as usize), true)
        } else if c.is_ascii_lowercase() {
            (4 + (c as usize - 'a' as usize), false)
        } else if c == '.' {
            continue;
        } else {
            return Err(DiagramError::BadChar(c, pos));
        };
        if opens {
            stacks.entry(kind).or_default().push(pos);
        } else {
            let i = stacks.get_mut(&kind).and_then(Vec::pop).ok_or(DiagramError::Unbalanced(pos))?;
            arcs.push((i, pos));
        }
    }
    if let Some(&p) = stacks.values().flatten().min() {
        return Err(DiagramError::Unbalanced(p));
    }
    Diagram::new(len, arcs)
}

/// Outcome of projecting a diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ShapeProjection {
    /// Nothing survives: the diagram is a secondary structure.
    Empty,
    Shape(Shape),
}

impl ShapeProjection {
    pub fn shape(&self) -> Option<&Shape> {
        match self {
            ShapeProjection::Empty => None,
            ShapeProjection::Shape(s) => Some(s),
        }
    }

    /// Canonical word, or `EMPTY`.
    pub fn word(&self) -> String {
        match self {
            ShapeProjection::Empty => "EMPTY".to_string(),
            ShapeProjection::Shape(s) => s.canonical_word(),
        }
    }

    pub fn pure_arc_count(&self) -> usize {
        self.shape().map_or(0, Shape::pure_arc_count)
    }

    pub fn genus(&self) -> usize {
        self.shape().map_or(0, Shape::genus)
    }
}

/// Partners of a working backbone; the outer rainbow sits at index 0 and the last index.
fn compact(partner: &[Option<usize>]) -> Vec<Option<usize>> {
    let mut new_index = vec![usize::MAX; partner.len()];
    let mut next = 0;
    for (p, q) in partner.iter().enumerate() {
        if q.is_some() {
            new_index[p] = next;
            next += 1;
        }
    }
    partner.iter().filter_map(|q| q.map(|q| Some(new_index[q]))).collect()
}

/// Collapses stacks, deletes 1-arcs and unpaired vertices until nothing
/// changes, then adds the rainbow.
pub fn project_to_shape(d: &Diagram) -> ShapeProjection {
    let len = d.len();
    let mut partner: Vec<Option<usize>> = Vec::with_capacity(len + 2);
    partner.push(Some(len + 1));
    partner.extend((1..=len).map(|p| d.partner(p)));
    partner.push(Some(0));
    loop {
        let before = partner.clone();
        partner = compact(&partner);
        let last = partner.len() - 1;
        // keep only the outermost arc of every stack (the rainbow is outermost)
        let inner: Vec<usize> = (1..last)
            .filter(|&p| matches!(partner[p], Some(q) if q > p && partner[p - 1] == Some(q + 1)))
            .collect();
        for p in inner {
            let q = partner[p].take().unwrap();
            partner[q] = None;
        }
        partner = compact(&partner);
        let last = partner.len() - 1;
        for p in 1..last {
            if let Some(q) = partner[p] {
                if q == p + 1 && q != last {
                    partner[p] = None;
                    partner[q] = None;
                }
            }
        }
        partner = compact(&partner);
        if partner == before {
            break;
        }
    }
    if partner.len() == 2 {
        return ShapeProjection::Empty;
    }
    let arcs = partner.iter().enumerate().filter_map(|(p, q)| q.filter(|&q| q > p).map(|q| (p + 1, q + 1)));
    let diagram = Diagram::new(partner.len(), arcs).expect("reduction keeps a matching");
    ShapeProjection::Shape(Shape::new(diagram).expect("fixpoint of the reduction is a shape"))
}
