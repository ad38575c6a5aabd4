//! Developing spanning trees of the Roberts graph into the lattice `Z^(n-1)`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::FacetLabel;
use crate::roll::{Direction, RollState, Slot};
use crate::subgraph::{Edge, SpanningSubgraph, SubgraphKind, Violation};

/// A lattice point of `Z^(n-1)`.
pub type Point = Vec<i32>;

/// Placement of (some or all) facets in the lattice, with the tree that
/// produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Development {
    n: usize,
    base: FacetLabel,
    /// Facets in the order they were first placed.
    order: Vec<FacetLabel>,
    coords: Vec<Option<Point>>,
    parent: Vec<Option<FacetLabel>>,
    /// Direction of the roll that placed each facet.
    entry: Vec<Option<Direction>>,
    tree: Vec<Edge>,
}

impl Development {
    fn empty(n: usize, base: FacetLabel) -> Self {
        let mut dev = Development {
            n,
            base,
            order: vec![base],
            coords: vec![None; 2 * n],
            parent: vec![None; 2 * n],
            entry: vec![None; 2 * n],
            tree: Vec::with_capacity(2 * n - 1),
        };
        dev.coords[base.index(n)] = Some(vec![0; n - 1]);
        dev
    }

    fn place(&mut self, parent: FacetLabel, child: FacetLabel, d: Direction) {
        let n = self.n;
        let mut p = self.coords[parent.index(n)].clone().expect("parent placed");
        p[d.axis() - 1] += d.value().signum();
        self.coords[child.index(n)] = Some(p);
        self.parent[child.index(n)] = Some(parent);
        self.entry[child.index(n)] = Some(d);
        self.order.push(child);
        self.tree.push(Edge::new(parent, child).expect("distinct facets"));
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> FacetLabel {
        self.base
    }

    /// True when all `2n` facets are placed.
    pub fn is_spanning(&self) -> bool {
        self.order.len() == 2 * self.n
    }

    /// Placed facets in placement order; each facet after the first is
    /// adjacent in the tree to an earlier one.
    pub fn order(&self) -> &[FacetLabel] {
        &self.order
    }

    pub fn coord(&self, l: FacetLabel) -> Option<&Point> {
        self.coords.get(l.index(self.n))?.as_ref()
    }

    pub fn parent(&self, l: FacetLabel) -> Option<FacetLabel> {
        self.parent[l.index(self.n)]
    }

    pub fn entry_direction(&self, l: FacetLabel) -> Option<Direction> {
        self.entry[l.index(self.n)]
    }

    /// `(label, point)` pairs sorted by label.
    pub fn placements(&self) -> Vec<(FacetLabel, &Point)> {
        FacetLabel::all(self.n)
            .filter_map(|l| self.coord(l).map(|p| (l, p)))
            .collect()
    }

    /// Points in placement order.
    pub fn points_in_order(&self) -> Vec<&Point> {
        self.order.iter().map(|&l| self.coord(l).unwrap()).collect()
    }

    /// Tree edges, ascending.
    pub fn tree_edges(&self) -> Vec<Edge> {
        let mut edges = self.tree.clone();
        edges.sort_unstable();
        edges
    }

    /// The developed tree as a subgraph (declared a tree).
    pub fn tree(&self) -> Result<SpanningSubgraph> {
        SpanningSubgraph::new(self.n, SubgraphKind::Tree, self.tree.clone())
    }

    /// Labels on the tree path from `from` to `to`, inclusive.
    pub fn tree_path(&self, from: FacetLabel, to: FacetLabel) -> Vec<FacetLabel> {
        let ancestors = |mut x: FacetLabel| {
            let mut out = vec![x];
            while let Some(p) = self.parent(x) {
                out.push(p);
                x = p;
            }
            out
        };
        let up = ancestors(from);
        let mut down = ancestors(to);
        let meet = up.iter().position(|x| down.contains(x)).expect("common root");
        let lca = up[meet];
        let cut = down.iter().position(|&x| x == lca).unwrap();
        down.truncate(cut);
        down.reverse();
        let mut path = up[..=meet].to_vec();
        path.extend(down);
        path
    }

    /// Lattice directions of the consecutive steps along `path`.
    fn steps_along(&self, path: &[FacetLabel]) -> Vec<Direction> {
        path.windows(2)
            .map(|w| {
                if self.parent(w[0]) == Some(w[1]) {
                    self.entry_direction(w[0]).unwrap().reversed()
                } else {
                    debug_assert_eq!(self.parent(w[1]), Some(w[0]));
                    self.entry_direction(w[1]).unwrap()
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> DevelopmentJson {
        DevelopmentJson {
            n: self.n,
            base: self.base,
            facets: self
                .placements()
                .into_iter()
                .map(|(label, coord)| FacetPlacement {
                    label,
                    coord: coord.clone(),
                })
                .collect(),
            tree: self.tree_edges(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetPlacement {
    pub label: FacetLabel,
    pub coord: Point,
}

/// Wire form of a development; facets sorted by label, tree edges sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DevelopmentJson {
    pub n: usize,
    pub base: FacetLabel,
    pub facets: Vec<FacetPlacement>,
    pub tree: Vec<Edge>,
}

/// Rolls from `base` along `dirs`, placing each newly visited facet one unit
/// further in the rolled direction. Fails on the first roll that lands on an
/// already placed facet; `step` in the error is 1-based.
pub fn develop_path(n: usize, base: FacetLabel, dirs: &[Direction]) -> Result<Development> {
    let mut state = RollState::initial(n, base)?;
    for &d in dirs {
        Direction::new(d.value(), n)?;
    }
    let mut dev = Development::empty(n, base);
    for (i, &d) in dirs.iter().enumerate() {
        let from = state.base();
        state.roll_in_place(d);
        let to = state.base();
        if dev.coord(to).is_some() {
            return Err(Error::Revisit {
                label: to,
                step: i + 1,
            });
        }
        dev.place(from, to, d);
    }
    Ok(dev)
}

/// Develops a spanning tree by depth-first traversal from `base`, visiting
/// children in ascending label order.
pub fn develop_tree(t: &SpanningSubgraph, base: FacetLabel) -> Result<Development> {
    develop_tree_with(t, base, |_| {})
}

/// As [`develop_tree`], visiting children in a random order.
pub fn develop_tree_shuffled<R: Rng + ?Sized>(
    t: &SpanningSubgraph,
    base: FacetLabel,
    rng: &mut R,
) -> Result<Development> {
    develop_tree_with(t, base, |children| children.shuffle(rng))
}

fn develop_tree_with(
    t: &SpanningSubgraph,
    base: FacetLabel,
    mut arrange: impl FnMut(&mut Vec<FacetLabel>),
) -> Result<Development> {
    let n = t.n();
    match t.kind() {
        SubgraphKind::Tree | SubgraphKind::Path => t.validate()?,
        SubgraphKind::Cycle => t.with_kind(SubgraphKind::Tree).validate()?,
    }
    base.check(n)?;
    let mut adjacency: Vec<Vec<FacetLabel>> = vec![Vec::new(); 2 * n];
    for e in t.edges() {
        let (a, b) = e.ends();
        adjacency[a.index(n)].push(b);
        adjacency[b.index(n)].push(a);
    }
    if adjacency[base.index(n)].is_empty() {
        return Err(Error::BaseNotInTree(base));
    }

    let mut dev = Development::empty(n, base);
    let mut state = RollState::initial(n, base)?;
    descend(&mut dev, &mut state, &adjacency, None, &mut arrange)?;
    debug_assert_eq!(state, RollState::initial(n, base)?);
    Ok(dev)
}

fn descend(
    dev: &mut Development,
    state: &mut RollState,
    adjacency: &[Vec<FacetLabel>],
    came_from: Option<FacetLabel>,
    arrange: &mut impl FnMut(&mut Vec<FacetLabel>),
) -> Result<()> {
    let here = state.base();
    let mut children: Vec<FacetLabel> = adjacency[here.index(dev.n)]
        .iter()
        .copied()
        .filter(|&c| Some(c) != came_from)
        .collect();
    children.sort_unstable();
    arrange(&mut children);
    for child in children {
        let d = match state.slot_of(child) {
            Slot::Toward(d) => d,
            _ => return Err(Violation::AntipodalEdge(Edge::new(here, child)?).into()),
        };
        dev.place(here, child, d);
        state.roll_in_place(d);
        descend(dev, state, adjacency, Some(here), arrange)?;
        state.roll_in_place(d.reversed());
    }
    Ok(())
}

/// A tree path whose lattice steps use both `+d` and `-d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UturnCounterexample {
    pub path: Vec<FacetLabel>,
    pub steps: Vec<Direction>,
}

/// Checks that no tree path steps in both directions of one axis.
///
/// Every pair of placed facets is checked, which covers the root paths of
/// every choice of root.
pub fn uturn_audit(dev: &Development) -> Result<(), UturnCounterexample> {
    let placed = dev.order();
    for (i, &u) in placed.iter().enumerate() {
        for &v in &placed[i + 1..] {
            let path = dev.tree_path(u, v);
            let steps = dev.steps_along(&path);
            let mut sign = vec![0i32; dev.n];
            for s in &steps {
                let slot = &mut sign[s.axis()];
                let sg = s.value().signum();
                if *slot == -sg {
                    return Err(UturnCounterexample { path, steps });
                }
                *slot = sg;
            }
        }
    }
    Ok(())
}

/// Checks that walking any tree path away from its start strictly increases
/// the Euclidean distance from the start. Returns the first failing path.
pub fn distance_audit(dev: &Development) -> Result<(), Vec<FacetLabel>> {
    let placed = dev.order();
    for &u in placed {
        let origin = dev.coord(u).unwrap();
        for &v in placed {
            if u == v {
                continue;
            }
            let path = dev.tree_path(u, v);
            let dist: Vec<i64> = path
                .iter()
                .map(|&x| {
                    dev.coord(x)
                        .unwrap()
                        .iter()
                        .zip(origin)
                        .map(|(a, b)| ((a - b) as i64).pow(2))
                        .sum()
                })
                .collect();
            if dist.windows(2).any(|w| w[1] <= w[0]) {
                return Err(path);
            }
        }
    }
    Ok(())
}
