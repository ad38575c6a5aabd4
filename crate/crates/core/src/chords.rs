//! Chord diagrams: perfect matchings on the vertices of an `m`-gon, taken up
//! to the dihedral symmetries of the polygon.
//!
//! A spanning cycle of the n-Roberts graph becomes a loopless diagram on
//! `2n` vertices by laying the cycle out as the polygon boundary and joining
//! antipodal facets with chords. A spanning path with its two ends joined by a
//! marked boundary edge becomes a diagram with at most one loop, sitting on
//! the marked edge.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::FacetLabel;
use crate::subgraph::{Dsu, SpanningSubgraph, SubgraphKind};

/// Largest polygon handled; canonical keys pack 5 bits per vertex into a u128.
pub const MAX_VERTICES: usize = 24;

fn check_vertices(m: usize) -> Result<()> {
    if m.is_multiple_of(2) && (2..=MAX_VERTICES).contains(&m) {
        Ok(())
    } else {
        Err(Error::Diagram(format!("{m} vertices is not an even count in 2..={MAX_VERTICES}")))
    }
}

/// A symmetry of the `m`-gon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dihedral {
    /// `i -> i + k`
    Rotation(usize),
    /// `i -> k - i`
    Reflection(usize),
}

impl Dihedral {
    pub fn all(m: usize) -> impl Iterator<Item = Dihedral> {
        (0..m)
            .map(Dihedral::Rotation)
            .chain((0..m).map(Dihedral::Reflection))
    }

    #[inline]
    pub fn apply(self, i: usize, m: usize) -> usize {
        match self {
            Dihedral::Rotation(k) => (i + k) % m,
            Dihedral::Reflection(k) => (k + m - i) % m,
        }
    }

    /// Image of boundary edge `i` (joining `i` and `i+1`).
    pub fn apply_edge(self, i: usize, m: usize) -> usize {
        let (a, b) = (self.apply(i, m), self.apply((i + 1) % m, m));
        if (a + 1) % m == b {
            a
        } else {
            b
        }
    }
}

/// A perfect matching on the vertices `0..m` of a polygon.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    mate: Vec<u8>,
}

impl ChordDiagram {
    pub fn new(m: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        check_vertices(m)?;
        let mut mate = vec![u8::MAX; m];
        for &(a, b) in pairs {
            if a >= m || b >= m || a == b || mate[a] != u8::MAX || mate[b] != u8::MAX {
                return Err(Error::Diagram(format!("bad chord ({a}, {b})")));
            }
            mate[a] = b as u8;
            mate[b] = a as u8;
        }
        if mate.contains(&u8::MAX) {
            return Err(Error::Diagram("matching is not perfect".into()));
        }
        Ok(ChordDiagram { mate })
    }

    fn from_mates(mate: Vec<u8>) -> Self {
        debug_assert!(mate.iter().enumerate().all(|(i, &j)| mate[j as usize] as usize == i && j as usize != i));
        ChordDiagram { mate }
    }

    pub fn m(&self) -> usize {
        self.mate.len()
    }

    pub fn mate(&self, i: usize) -> usize {
        self.mate[i] as usize
    }

    /// Chords `(a, b)` with `a < b`, ascending.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.m())
            .filter(|&i| self.mate(i) > i)
            .map(|i| (i, self.mate(i)))
            .collect()
    }

    fn is_loop(&self, a: usize) -> bool {
        let m = self.m();
        let b = self.mate(a);
        (a + 1) % m == b || (b + 1) % m == a
    }

    /// Chords joining cyclically adjacent vertices.
    pub fn loops(&self) -> Vec<(usize, usize)> {
        self.pairs().into_iter().filter(|&(a, _)| self.is_loop(a)).collect()
    }

    pub fn loop_count(&self) -> usize {
        self.loops().len()
    }

    pub fn image(&self, g: Dihedral) -> ChordDiagram {
        let m = self.m();
        let mut mate = vec![0u8; m];
        for i in 0..m {
            mate[g.apply(i, m)] = g.apply(self.mate(i), m) as u8;
        }
        ChordDiagram { mate }
    }

    /// Packs the ascending chord list so that integer order is lexicographic
    /// order on chord lists.
    fn key(&self) -> u128 {
        let mut k = 0u128;
        for (a, b) in self.pairs() {
            k = k << 10 | (a as u128) << 5 | b as u128;
        }
        k
    }

    fn key_of_image(mate: &[u8], g: Dihedral, scratch: &mut [u8]) -> u128 {
        let m = mate.len();
        for i in 0..m {
            scratch[g.apply(i, m)] = g.apply(mate[i] as usize, m) as u8;
        }
        let mut k = 0u128;
        for (i, &j) in scratch.iter().enumerate() {
            if j as usize > i {
                k = k << 10 | (i as u128) << 5 | j as u128;
            }
        }
        k
    }

    /// The lexicographically least chord list over the dihedral orbit.
    pub fn canonical(&self) -> ChordDiagram {
        let m = self.m();
        let mut scratch = vec![0u8; m];
        let best = Dihedral::all(m)
            .min_by_key(|&g| Self::key_of_image(&self.mate, g, &mut scratch))
            .unwrap();
        self.image(best)
    }

    pub fn is_canonical(&self) -> bool {
        let m = self.m();
        let mut scratch = vec![0u8; m];
        let own = self.key();
        Dihedral::all(m).all(|g| Self::key_of_image(&self.mate, g, &mut scratch) >= own)
    }

    /// Dihedral symmetries fixing the diagram.
    pub fn stabilizer(&self) -> Vec<Dihedral> {
        Dihedral::all(self.m()).filter(|&g| self.image(g) == *self).collect()
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson {
            m: self.m(),
            matching: self.pairs().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, b)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub m: usize,
    pub matching: Vec<[usize; 2]>,
}

impl TryFrom<DiagramJson> for ChordDiagram {
    type Error = Error;

    fn try_from(j: DiagramJson) -> Result<Self> {
        let pairs: Vec<_> = j.matching.iter().map(|&[a, b]| (a, b)).collect();
        ChordDiagram::new(j.m, &pairs)
    }
}

/// Lays a spanning cycle out as a polygon (starting at facet `1`) and joins
/// antipodal facets.
pub fn diagram_from_cycle(c: &SpanningSubgraph) -> Result<ChordDiagram> {
    if c.kind() != SubgraphKind::Cycle {
        return Err(Error::Diagram(format!("expected a cycle, got a {}", c.kind())));
    }
    c.validate()?;
    Ok(diagram_of_sequence(&c.node_sequence().expect("valid cycle"), c.n()))
}

fn diagram_of_sequence(seq: &[FacetLabel], n: usize) -> ChordDiagram {
    let mut pos = vec![0u8; 2 * n];
    for (i, l) in seq.iter().enumerate() {
        pos[l.index(n)] = i as u8;
    }
    let mate = seq.iter().map(|l| pos[l.antipode().index(n)]).collect();
    ChordDiagram::from_mates(mate)
}

/// Labels polygon vertices `start, start+1, ...` with facets so that chord
/// mates are antipodes: the first vertex met on each chord is unstarred.
fn label_walk(d: &ChordDiagram, start: usize) -> Vec<FacetLabel> {
    let m = d.m();
    let mut label = vec![None; m];
    let mut axis = 0;
    for step in 0..m {
        let v = (start + step) % m;
        if label[v].is_none() {
            axis += 1;
            label[v] = Some(FacetLabel::plain(axis));
            label[d.mate(v)] = Some(FacetLabel::star(axis));
        }
    }
    (0..m).map(|step| label[(start + step) % m].unwrap()).collect()
}

/// The spanning cycle of a loopless diagram on `2n` vertices.
pub fn cycle_from_diagram(d: &ChordDiagram) -> Result<SpanningSubgraph> {
    if d.loop_count() != 0 {
        return Err(Error::Diagram(format!("{d} has loops")));
    }
    let n = d.m() / 2;
    SpanningSubgraph::from_sequence(n, &label_walk(d, 0), true)
}

/// A spanning path as a diagram on its `2n` nodes in path order, together
/// with the marked boundary edge joining its ends (always edge `2n - 1`).
pub fn diagram_from_path(p: &SpanningSubgraph) -> Result<(ChordDiagram, usize)> {
    if p.kind() != SubgraphKind::Path {
        return Err(Error::Diagram(format!("expected a path, got a {}", p.kind())));
    }
    p.validate()?;
    let seq = p.node_sequence().expect("valid path");
    Ok((diagram_of_sequence(&seq, p.n()), seq.len() - 1))
}

/// The spanning path obtained by cutting the marked boundary edge. The only
/// loop allowed is the one lying on the marked edge.
pub fn path_from_diagram(d: &ChordDiagram, marked: usize) -> Result<SpanningSubgraph> {
    let m = d.m();
    if marked >= m {
        return Err(Error::Diagram(format!("edge {marked} out of range")));
    }
    for (a, b) in d.loops() {
        let on_marked = (a == marked && b == (marked + 1) % m) || (b == marked && a == (marked + 1) % m);
        if !on_marked {
            return Err(Error::Diagram(format!("loop ({a}, {b}) off the marked edge")));
        }
    }
    let seq = label_walk(d, (marked + 1) % m);
    SpanningSubgraph::from_sequence(m / 2, &seq, false)
}

/// Inserts two vertices into boundary edge `marked` and joins them by a chord.
///
/// The result has exactly one loop: the new chord. A diagram that already has
/// a loop only qualifies when `marked` is the edge under that loop, which the
/// insertion splits.
pub fn insert_loop(d: &ChordDiagram, marked: usize) -> Result<ChordDiagram> {
    let m = d.m();
    if marked >= m {
        return Err(Error::Diagram(format!("edge {marked} out of range")));
    }
    if m + 2 > MAX_VERTICES {
        return Err(Error::Diagram(format!("more than {MAX_VERTICES} vertices")));
    }
    let loops = d.loops();
    let ok = match loops.as_slice() {
        [] => true,
        [(a, b)] => (*a == marked && *b == marked + 1) || (*a == 0 && *b == m - 1 && marked == m - 1),
        _ => false,
    };
    if !ok {
        return Err(Error::Diagram(format!(
            "cannot insert a loop on edge {marked} of {d}: existing loops {loops:?}"
        )));
    }
    let shift = |v: usize| if v <= marked { v } else { v + 2 };
    let mut mate = vec![0u8; m + 2];
    for v in 0..m {
        mate[shift(v)] = shift(d.mate(v)) as u8;
    }
    mate[marked + 1] = (marked + 2) as u8;
    mate[marked + 2] = (marked + 1) as u8;
    let out = ChordDiagram::from_mates(mate);
    debug_assert_eq!(out.loop_count(), 1);
    Ok(out)
}

/// Inverse of [`insert_loop`]: removes the single loop of a 1-loop diagram and
/// returns the smaller diagram with the edge the loop sat in.
pub fn remove_loop(d: &ChordDiagram) -> Result<(ChordDiagram, usize)> {
    let m = d.m();
    let loops = d.loops();
    let &[(a, b)] = loops.as_slice() else {
        return Err(Error::Diagram(format!("{d} does not have exactly one loop")));
    };
    if m < 4 {
        return Err(Error::Diagram("too few vertices".into()));
    }
    // First vertex after the loop, going forwards.
    let after = if b == a + 1 { (b + 1) % m } else { 1 };
    let relabel = |v: usize| (v + m - after) % m;
    let mut mate = vec![0u8; m - 2];
    for v in 0..m {
        let r = relabel(v);
        if r < m - 2 {
            mate[r] = relabel(d.mate(v)) as u8;
        }
    }
    Ok((ChordDiagram::from_mates(mate), m - 3))
}

/// Number of orbits of the boundary edges under the diagram's stabilizer.
pub fn edge_orbit_count(d: &ChordDiagram) -> usize {
    let m = d.m();
    let mut dsu = Dsu::new(m);
    for g in d.stabilizer() {
        for e in 0..m {
            dsu.union(e, g.apply_edge(e, m));
        }
    }
    dsu.components()
}

/// Calls `f` with every perfect matching on `0..m` whose vertex 0 is matched
/// to `first`, as a mate array.
fn for_each_matching(m: usize, first: usize, f: &mut impl FnMut(&[u8])) {
    let mut mate = vec![u8::MAX; m];
    mate[0] = first as u8;
    mate[first] = 0;
    fn rec(mate: &mut Vec<u8>, f: &mut impl FnMut(&[u8])) {
        let Some(i) = mate.iter().position(|&x| x == u8::MAX) else {
            f(mate);
            return;
        };
        for j in i + 1..mate.len() {
            if mate[j] == u8::MAX {
                mate[i] = j as u8;
                mate[j] = i as u8;
                rec(mate, f);
                mate[i] = u8::MAX;
                mate[j] = u8::MAX;
            }
        }
    }
    rec(&mut mate, f);
}

fn loops_of(mate: &[u8]) -> usize {
    let m = mate.len();
    (0..m).filter(|&i| mate[i] as usize == (i + 1) % m).count()
        - usize::from(m == 2)
}

/// Canonical diagrams on `m` vertices with exactly `loops` loops, ascending.
pub fn enumerate_diagrams(m: usize, loops: usize) -> Result<Vec<ChordDiagram>> {
    check_vertices(m)?;
    let found: BTreeSet<ChordDiagram> = (1..m)
        .into_par_iter()
        .map(|first| {
            let mut local = BTreeSet::new();
            let mut scratch = vec![0u8; m];
            for_each_matching(m, first, &mut |mate| {
                if loops_of(mate) != loops {
                    return;
                }
                let own = ChordDiagram::from_mates(mate.to_vec());
                let k = own.key();
                // Only keep diagrams that are their own canonical form.
                if Dihedral::all(m).all(|g| ChordDiagram::key_of_image(mate, g, &mut scratch) >= k) {
                    local.insert(own);
                }
            });
            local
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    let mut out: Vec<_> = found.into_iter().collect();
    out.sort_by_key(ChordDiagram::key);
    Ok(out)
}

/// Edge-orbit counts over every canonical loopless diagram on `2n` vertices.
#[derive(Clone, Debug)]
pub struct MaxnetProfile {
    pub n: usize,
    /// Orbit count to number of diagrams.
    pub histogram: BTreeMap<usize, usize>,
    /// One diagram per orbit count.
    pub witnesses: BTreeMap<usize, ChordDiagram>,
}

impl MaxnetProfile {
    pub fn total(&self) -> usize {
        self.histogram.iter().map(|(k, v)| k * v).sum()
    }

    pub fn diagrams(&self) -> usize {
        self.histogram.values().sum()
    }

    /// `1, ceil(n/2), n, 2n`.
    pub fn required_values(n: usize) -> [usize; 4] {
        [1, n.div_ceil(2), n, 2 * n]
    }
}

/// Histogram of [`edge_orbit_count`] over all canonical loopless diagrams on
/// `2n` vertices. From `n = 5` on, fails unless each of `1, ceil(n/2), n, 2n`
/// occurs.
pub fn maxnet_profiles(n: usize) -> Result<MaxnetProfile> {
    crate::check_dim(n)?;
    let diagrams = enumerate_diagrams(2 * n, 0)?;
    let mut histogram = BTreeMap::new();
    let mut witnesses = BTreeMap::new();
    for d in diagrams {
        let k = edge_orbit_count(&d);
        *histogram.entry(k).or_insert(0) += 1;
        witnesses.entry(k).or_insert(d);
    }
    let profile = MaxnetProfile {
        n,
        histogram,
        witnesses,
    };
    if n >= 5 {
        for v in MaxnetProfile::required_values(n) {
            if !profile.histogram.contains_key(&v) {
                return Err(Error::Diagram(format!("no diagram on {} vertices has {v} edge orbits", 2 * n)));
            }
        }
    }
    Ok(profile)
}
