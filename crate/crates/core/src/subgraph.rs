//! The n-Roberts graph (the cocktail-party graph on `2n` nodes) and its
//! spanning trees, paths and cycles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::label::FacetLabel;

/// An unordered pair of labels, stored with the smaller label first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "[FacetLabel; 2]")]
pub struct Edge(FacetLabel, FacetLabel);

impl Edge {
    pub fn new(a: FacetLabel, b: FacetLabel) -> Result<Self> {
        if a == b {
            return Err(Error::SelfPair(a));
        }
        Ok(if a < b { Edge(a, b) } else { Edge(b, a) })
    }

    pub fn ends(self) -> (FacetLabel, FacetLabel) {
        (self.0, self.1)
    }

    pub fn contains(self, l: FacetLabel) -> bool {
        self.0 == l || self.1 == l
    }

    pub fn is_antipodal(self) -> bool {
        self.0.antipode() == self.1
    }
}

impl TryFrom<[FacetLabel; 2]> for Edge {
    type Error = Error;

    fn try_from([a, b]: [FacetLabel; 2]) -> Result<Self> {
        Edge::new(a, b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('-')
            .ok_or_else(|| Error::ParseEdge(s.to_string()))?;
        Edge::new(a.parse()?, b.parse()?)
    }
}

/// True iff `a` and `b` are adjacent in the n-Roberts graph.
pub fn is_roberts_edge(n: usize, a: FacetLabel, b: FacetLabel) -> Result<bool> {
    crate::check_dim(n)?;
    a.check(n)?;
    b.check(n)?;
    if a == b {
        return Err(Error::SelfPair(a));
    }
    Ok(b != a.antipode())
}

/// Every edge of the n-Roberts graph, ascending.
pub fn roberts_edges(n: usize) -> Vec<Edge> {
    let labels: Vec<_> = FacetLabel::all(n).collect();
    let mut edges = Vec::with_capacity(2 * n * (n - 1));
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i + 1..] {
            if b != a.antipode() {
                edges.push(Edge(a, b));
            }
        }
    }
    edges
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubgraphKind {
    Tree,
    Path,
    Cycle,
}

impl fmt::Display for SubgraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubgraphKind::Tree => "tree",
            SubgraphKind::Path => "path",
            SubgraphKind::Cycle => "cycle",
        })
    }
}

/// First invariant a subgraph fails.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("label {0} does not exist in this dimension")]
    LabelOutOfRange(FacetLabel),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("antipodal edge {0}")]
    AntipodalEdge(Edge),
    #[error("wrong edge count: expected {expected}, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("cycle present through edge {0}")]
    CycleFound(Edge),
    #[error("disconnected")]
    Disconnected,
    #[error("wrong degree: {label} has degree {degree}")]
    Degree { label: FacetLabel, degree: usize },
}

/// A set of Roberts-graph edges declared to be a spanning tree, path or cycle.
///
/// Construction only normalizes the edge list; call [`SpanningSubgraph::validate`]
/// (or use [`SpanningSubgraph::validated`]) to check the declared kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpanningSubgraph {
    n: usize,
    kind: SubgraphKind,
    edges: Vec<Edge>,
}

impl SpanningSubgraph {
    pub fn new(n: usize, kind: SubgraphKind, mut edges: Vec<Edge>) -> Result<Self> {
        crate::check_dim(n)?;
        edges.sort_unstable();
        Ok(SpanningSubgraph { n, kind, edges })
    }

    pub fn validated(n: usize, kind: SubgraphKind, edges: Vec<Edge>) -> Result<Self> {
        let s = Self::new(n, kind, edges)?;
        s.validate()?;
        Ok(s)
    }

    /// Parses a comma separated list such as `1-2,1-2*,2-1*`.
    pub fn parse(n: usize, kind: SubgraphKind, text: &str) -> Result<Self> {
        let edges = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Edge>>>()?;
        Self::validated(n, kind, edges)
    }

    /// Builds a path (or, with `closed`, a cycle) through `nodes` in order.
    pub fn from_sequence(n: usize, nodes: &[FacetLabel], closed: bool) -> Result<Self> {
        let mut edges = Vec::with_capacity(nodes.len());
        for w in nodes.windows(2) {
            edges.push(Edge::new(w[0], w[1])?);
        }
        if closed && nodes.len() > 2 {
            edges.push(Edge::new(nodes[nodes.len() - 1], nodes[0])?);
        }
        let kind = if closed {
            SubgraphKind::Cycle
        } else {
            SubgraphKind::Path
        };
        Self::validated(n, kind, edges)
    }

    pub(crate) fn from_sorted_unchecked(n: usize, kind: SubgraphKind, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        SpanningSubgraph { n, kind, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> SubgraphKind {
        self.kind
    }

    /// Edges in ascending order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Same edges under a different declared kind (e.g. a path viewed as a tree).
    pub fn with_kind(&self, kind: SubgraphKind) -> Self {
        SpanningSubgraph {
            kind,
            ..self.clone()
        }
    }

    /// Checks every invariant of the declared kind and reports the first failure.
    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.n;
        for w in self.edges.windows(2) {
            if w[0] == w[1] {
                return Err(Violation::DuplicateEdge(w[0]));
            }
        }
        for &e in &self.edges {
            for l in [e.0, e.1] {
                if !l.exists_in(n) {
                    return Err(Violation::LabelOutOfRange(l));
                }
            }
            if e.is_antipodal() {
                return Err(Violation::AntipodalEdge(e));
            }
        }
        let expected = match self.kind {
            SubgraphKind::Tree | SubgraphKind::Path => 2 * n - 1,
            SubgraphKind::Cycle => 2 * n,
        };
        if self.edges.len() != expected {
            return Err(Violation::EdgeCount {
                expected,
                found: self.edges.len(),
            });
        }

        let mut dsu = Dsu::new(2 * n);
        let mut cycle_edge = None;
        for &e in &self.edges {
            if !dsu.union(e.0.index(n), e.1.index(n)) && cycle_edge.is_none() {
                cycle_edge = Some(e);
            }
        }
        if let (Some(e), SubgraphKind::Tree | SubgraphKind::Path) = (cycle_edge, self.kind) {
            return Err(Violation::CycleFound(e));
        }
        if dsu.components() != 1 {
            return Err(Violation::Disconnected);
        }

        let max_degree = match self.kind {
            SubgraphKind::Tree => usize::MAX,
            SubgraphKind::Path | SubgraphKind::Cycle => 2,
        };
        for l in FacetLabel::all(n) {
            let degree = self.degree(l);
            let bad = degree > max_degree || (self.kind == SubgraphKind::Cycle && degree != 2);
            if bad {
                return Err(Violation::Degree { label: l, degree });
            }
        }
        Ok(())
    }

    /// Neighbour bitmasks indexed by dense label index.
    pub(crate) fn adjacency(&self) -> Vec<u32> {
        let mut adj = vec![0u32; 2 * self.n];
        for e in &self.edges {
            let (a, b) = (e.0.index(self.n), e.1.index(self.n));
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    pub fn degree(&self, l: FacetLabel) -> usize {
        self.edges.iter().filter(|e| e.contains(l)).count()
    }

    /// Neighbours of `l`, ascending.
    pub fn neighbors(&self, l: FacetLabel) -> Vec<FacetLabel> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .filter_map(|e| match (e.0 == l, e.1 == l) {
                (true, _) => Some(e.1),
                (_, true) => Some(e.0),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Nodes of a path from its smaller endpoint, or of a cycle starting at
    /// `1` and heading to its smaller neighbour. `None` for other shapes.
    pub fn node_sequence(&self) -> Option<Vec<FacetLabel>> {
        let n = self.n;
        let adj = self.adjacency();
        let start = match self.kind {
            SubgraphKind::Cycle => 0,
            _ => (0..2 * n).find(|&i| adj[i].count_ones() == 1)?,
        };
        if adj.iter().any(|a| a.count_ones() > 2) {
            return None;
        }
        let mut seq = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let mut mask = adj[cur];
            if prev != usize::MAX {
                mask &= !(1 << prev);
            }
            if mask == 0 {
                break;
            }
            let next = mask.trailing_zeros() as usize;
            if next == start {
                break;
            }
            seq.push(next);
            prev = cur;
            cur = next;
        }
        if seq.len() != 2 * n {
            return None;
        }
        Some(seq.into_iter().map(|i| FacetLabel::from_index(i, n)).collect())
    }

    /// Endpoints of a spanning path.
    pub fn path_endpoints(&self) -> Option<(FacetLabel, FacetLabel)> {
        let seq = self.node_sequence()?;
        match self.kind {
            SubgraphKind::Cycle => None,
            _ => Some((seq[0], seq[seq.len() - 1])),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.edges).expect("edges serialize")
    }
}

impl fmt::Display for SpanningSubgraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Union-find over dense indices.
pub(crate) struct Dsu {
    parent: Vec<usize>,
    count: usize,
}

impl Dsu {
    pub(crate) fn new(size: usize) -> Self {
        Dsu {
            parent: (0..size).collect(),
            count: size,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.count -= 1;
        true
    }

    pub(crate) fn components(&self) -> usize {
        self.count
    }
}
