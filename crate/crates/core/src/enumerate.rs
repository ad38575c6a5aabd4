//! Enumeration of spanning trees, paths and cycles of the n-Roberts graph up
//! to the signed-permutation action, and the path/cycle count table.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chords::{self, ChordDiagram};
use crate::error::{Error, Result};
use crate::label::FacetLabel;
use crate::subgraph::{roberts_edges, Edge, SpanningSubgraph, SubgraphKind};
use crate::symmetry::canonical_form;

/// Which engine produces path and cycle counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Backtracking over the Roberts graph.
    Direct,
    /// Chord-diagram generation.
    Chords,
    /// Both, failing on disagreement.
    Both,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Chords => "chords",
            Method::Both => "both",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "chords" => Ok(Method::Chords),
            "both" => Ok(Method::Both),
            _ => Err(Error::Diagram(format!("unknown method {s:?}"))),
        }
    }
}

/// Largest dimension each engine accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub trees: usize,
    pub direct: usize,
    pub chords: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            trees: 5,
            direct: 5,
            chords: 7,
        }
    }
}

fn within(what: &'static str, n: usize, limit: usize) -> Result<()> {
    crate::check_dim(n)?;
    if n > limit {
        return Err(Error::ResourceLimit {
            what,
            requested: n,
            limit,
        });
    }
    Ok(())
}

fn sorted(set: HashSet<Vec<Edge>>, n: usize, kind: SubgraphKind) -> Vec<SpanningSubgraph> {
    let mut all: Vec<_> = set.into_iter().collect();
    all.sort_unstable();
    all.into_iter()
        .map(|e| SpanningSubgraph::from_sorted_unchecked(n, kind, e))
        .collect()
}

fn merge(mut a: HashSet<Vec<Edge>>, b: HashSet<Vec<Edge>>) -> HashSet<Vec<Edge>> {
    if a.len() < b.len() {
        return merge(b, a);
    }
    a.extend(b);
    a
}

/// Levels of the tree search split into parallel tasks.
const PARALLEL_DEPTH: usize = 10;

struct TreeSearch {
    n: usize,
    edges: Vec<(usize, usize)>,
    need: usize,
}

#[derive(Clone, Copy)]
struct Partial {
    comp: [u8; 32],
    chosen: [u16; 32],
    len: usize,
}

impl Partial {
    fn with(mut self, (a, b): (usize, usize), edge: usize) -> Self {
        let (keep, gone) = (self.comp[a], self.comp[b]);
        for c in self.comp.iter_mut() {
            if *c == gone {
                *c = keep;
            }
        }
        self.chosen[self.len] = edge as u16;
        self.len += 1;
        self
    }
}

/// `(distinct neighbour axes, axes with both facets as neighbours)`.
fn vertex_key(mask: u32, n: usize) -> u32 {
    let low = mask & ((1 << n) - 1);
    let high = mask >> n;
    (low | high).count_ones() << 8 | (low & high).count_ones()
}

impl TreeSearch {
    fn leaf(&self, p: &Partial, out: &mut HashSet<Vec<Edge>>) {
        let n = self.n;
        let mut adj = [0u32; 32];
        // Edge {1, 2} is forced and not in `self.edges`.
        adj[0] |= 1 << 1;
        adj[1] |= 1;
        for &e in &p.chosen[..p.len] {
            let (a, b) = self.edges[e as usize];
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        // Every orbit has a member where facet 1 has the largest key and 2
        // has the largest key among the neighbours of 1.
        let k0 = vertex_key(adj[0], n);
        if (1..2 * n).any(|v| vertex_key(adj[v], n) > k0) {
            return;
        }
        let k1 = vertex_key(adj[1], n);
        let mut nb = adj[0];
        while nb != 0 {
            let v = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if vertex_key(adj[v], n) > k1 {
                return;
            }
        }
        let mut edges = Vec::with_capacity(2 * n - 1);
        edges.push(index_edge(0, 1, n));
        for &e in &p.chosen[..p.len] {
            let (a, b) = self.edges[e as usize];
            edges.push(index_edge(a, b, n));
        }
        edges.sort_unstable();
        let t = SpanningSubgraph::from_sorted_unchecked(n, SubgraphKind::Tree, edges);
        out.insert(canonical_form(&t).edges().to_vec());
    }

    fn grow(&self, i: usize, p: Partial, out: &mut HashSet<Vec<Edge>>) {
        if p.len == self.need {
            self.leaf(&p, out);
            return;
        }
        if self.edges.len() - i < self.need - p.len {
            return;
        }
        let (a, b) = self.edges[i];
        if p.comp[a] != p.comp[b] {
            self.grow(i + 1, p.with((a, b), i), out);
        }
        self.grow(i + 1, p, out);
    }

    fn grow_parallel(&self, i: usize, p: Partial, depth: usize) -> HashSet<Vec<Edge>> {
        if depth >= PARALLEL_DEPTH || p.len == self.need || i == self.edges.len() {
            let mut out = HashSet::new();
            self.grow(i, p, &mut out);
            return out;
        }
        if self.edges.len() - i < self.need - p.len {
            return HashSet::new();
        }
        let (a, b) = self.edges[i];
        let (with, without) = rayon::join(
            || {
                if p.comp[a] != p.comp[b] {
                    self.grow_parallel(i + 1, p.with((a, b), i), depth + 1)
                } else {
                    HashSet::new()
                }
            },
            || self.grow_parallel(i + 1, p, depth + 1),
        );
        merge(with, without)
    }
}

fn index_edge(a: usize, b: usize, n: usize) -> Edge {
    Edge::new(FacetLabel::from_index(a, n), FacetLabel::from_index(b, n)).expect("distinct facets")
}

/// All spanning trees up to symmetry, sorted by edge list.
pub fn enumerate_trees(n: usize) -> Result<Vec<SpanningSubgraph>> {
    enumerate_trees_within(n, &Budget::default())
}

pub fn enumerate_trees_within(n: usize, budget: &Budget) -> Result<Vec<SpanningSubgraph>> {
    within("tree enumeration", n, budget.trees)?;
    let edges: Vec<(usize, usize)> = roberts_edges(n)
        .into_iter()
        .map(|e| {
            let (a, b) = e.ends();
            (a.index(n), b.index(n))
        })
        .filter(|&e| e != (0, 1))
        .collect();
    let search = TreeSearch {
        n,
        edges,
        need: 2 * n - 2,
    };
    let mut start = Partial {
        comp: [0; 32],
        chosen: [0; 32],
        len: 0,
    };
    for (i, c) in start.comp.iter_mut().enumerate() {
        *c = i as u8;
    }
    start.comp[1] = 0;
    let found = search.grow_parallel(0, start, 0);
    Ok(sorted(found, n, SubgraphKind::Tree))
}

/// Hamiltonian sequences starting `1, 2, x` with `x` in `{1*, 3}`; every
/// path and cycle orbit has such a member.
fn direct_hamiltonian(n: usize, closed: bool) -> HashSet<Vec<Edge>> {
    let m = 2 * n;
    let mut thirds = vec![n];
    if n >= 3 {
        thirds.push(2);
    }
    let kind = if closed {
        SubgraphKind::Cycle
    } else {
        SubgraphKind::Path
    };
    let prefixes: Vec<Vec<usize>> = thirds
        .into_iter()
        .flat_map(|x| {
            (0..m)
                .filter(move |&y| y != 0 && y != 1 && y != x && y != crate::label::antipode_index(x, n))
                .map(move |y| vec![0, 1, x, y])
        })
        .collect();
    let prefixes = if n == 2 { vec![vec![0, 1, n]] } else { prefixes };
    prefixes
        .into_par_iter()
        .map(|prefix| {
            let mut out = HashSet::new();
            let mut seq = prefix.clone();
            let used = prefix.iter().fold(0u32, |acc, &v| acc | 1 << v);
            extend(n, closed, kind, &mut seq, used, &mut out);
            out
        })
        .reduce(HashSet::new, merge)
}

fn extend(n: usize, closed: bool, kind: SubgraphKind, seq: &mut Vec<usize>, used: u32, out: &mut HashSet<Vec<Edge>>) {
    let m = 2 * n;
    let last = *seq.last().unwrap();
    if seq.len() == m {
        if closed && last == crate::label::antipode_index(0, n) {
            return;
        }
        let mut edges: Vec<Edge> = seq.windows(2).map(|w| index_edge(w[0], w[1], n)).collect();
        if closed {
            edges.push(index_edge(last, 0, n));
        }
        edges.sort_unstable();
        let s = SpanningSubgraph::from_sorted_unchecked(n, kind, edges);
        out.insert(canonical_form(&s).edges().to_vec());
        return;
    }
    let anti = crate::label::antipode_index(last, n);
    for v in 0..m {
        if used & 1 << v == 0 && v != anti {
            seq.push(v);
            extend(n, closed, kind, seq, used | 1 << v, out);
            seq.pop();
        }
    }
}

fn paths_from_chords(n: usize) -> Result<Vec<SpanningSubgraph>> {
    let diagrams = chords::enumerate_diagrams(2 * n + 2, 1)?;
    let found: HashSet<Vec<Edge>> = diagrams
        .par_iter()
        .map(|d| {
            let (small, marked) = chords::remove_loop(d)?;
            let p = chords::path_from_diagram(&small, marked)?;
            Ok(canonical_form(&p).edges().to_vec())
        })
        .collect::<Result<_>>()?;
    if found.len() != diagrams.len() {
        return Err(Error::Mismatch {
            n,
            what: format!("{} one-loop diagrams gave {} distinct paths", diagrams.len(), found.len()),
        });
    }
    Ok(sorted(found, n, SubgraphKind::Path))
}

fn cycles_from_chords(n: usize) -> Result<Vec<SpanningSubgraph>> {
    let diagrams = chords::enumerate_diagrams(2 * n, 0)?;
    let found: HashSet<Vec<Edge>> = diagrams
        .par_iter()
        .map(|d| Ok(canonical_form(&chords::cycle_from_diagram(d)?).edges().to_vec()))
        .collect::<Result<_>>()?;
    if found.len() != diagrams.len() {
        return Err(Error::Mismatch {
            n,
            what: format!("{} loopless diagrams gave {} distinct cycles", diagrams.len(), found.len()),
        });
    }
    Ok(sorted(found, n, SubgraphKind::Cycle))
}

fn by_method(
    n: usize,
    method: Method,
    budget: &Budget,
    what: &'static str,
    direct: impl Fn() -> Vec<SpanningSubgraph>,
    via_chords: impl Fn() -> Result<Vec<SpanningSubgraph>>,
) -> Result<Vec<SpanningSubgraph>> {
    match method {
        Method::Direct => {
            within(what, n, budget.direct)?;
            Ok(direct())
        }
        Method::Chords => {
            within(what, n, budget.chords)?;
            via_chords()
        }
        Method::Both => {
            within(what, n, budget.direct.min(budget.chords))?;
            let (a, b) = (direct(), via_chords()?);
            if a != b {
                return Err(Error::Mismatch {
                    n,
                    what: format!("{what}: direct found {}, chords found {}", a.len(), b.len()),
                });
            }
            Ok(a)
        }
    }
}

/// All spanning paths up to symmetry, sorted by edge list.
pub fn enumerate_paths(n: usize, method: Method) -> Result<Vec<SpanningSubgraph>> {
    enumerate_paths_within(n, method, &Budget::default())
}

pub fn enumerate_paths_within(n: usize, method: Method, budget: &Budget) -> Result<Vec<SpanningSubgraph>> {
    by_method(
        n,
        method,
        budget,
        "path enumeration",
        || sorted(direct_hamiltonian(n, false), n, SubgraphKind::Path),
        || paths_from_chords(n),
    )
}

/// All spanning cycles up to symmetry, sorted by edge list.
pub fn enumerate_cycles(n: usize, method: Method) -> Result<Vec<SpanningSubgraph>> {
    enumerate_cycles_within(n, method, &Budget::default())
}

pub fn enumerate_cycles_within(n: usize, method: Method, budget: &Budget) -> Result<Vec<SpanningSubgraph>> {
    by_method(
        n,
        method,
        budget,
        "cycle enumeration",
        || sorted(direct_hamiltonian(n, true), n, SubgraphKind::Cycle),
        || cycles_from_chords(n),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathClass {
    /// Ends at antipodal facets.
    Ter,
    /// Ends on a Roberts edge, so one more edge closes a spanning cycle.
    Ext,
}

impl fmt::Display for PathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathClass::Ter => "ter",
            PathClass::Ext => "ext",
        })
    }
}

/// Classifies a spanning path by its endpoints.
pub fn classify_path(p: &SpanningSubgraph) -> Result<PathClass> {
    if p.kind() != SubgraphKind::Path {
        return Err(Error::Diagram(format!("expected a path, got a {}", p.kind())));
    }
    p.validate()?;
    let (a, b) = p.path_endpoints().expect("valid path");
    Ok(if a.antipode() == b {
        PathClass::Ter
    } else {
        PathClass::Ext
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub cycles: usize,
    pub paths: usize,
    pub ter: usize,
    pub ext: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationTable {
    pub method: Method,
    pub rows: BTreeMap<usize, TableRow>,
}

impl EnumerationTable {
    /// Checks `ter(n) = p(n-1)` and `ter(n) + ext(n) = p(n)` on every row.
    pub fn check_identities(&self) -> Result<()> {
        for row in self.rows.values() {
            if row.ter + row.ext != row.paths {
                return Err(Error::Mismatch {
                    n: row.n,
                    what: format!("ter {} + ext {} != paths {}", row.ter, row.ext, row.paths),
                });
            }
            let previous = if row.n == 2 {
                Some(0)
            } else {
                self.rows.get(&(row.n - 1)).map(|r| r.paths)
            };
            if let Some(p) = previous {
                if row.ter != p {
                    return Err(Error::Mismatch {
                        n: row.n,
                        what: format!("ter {} != previous path count {p}", row.ter),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let header = ["n", "cycles", "paths", "ter", "ext"];
        let cells: Vec<[String; 5]> = self
            .rows
            .values()
            .map(|r| {
                [r.n, r.cycles, r.paths, r.ter, r.ext].map(|v| v.to_string())
            })
            .collect();
        let widths: Vec<usize> = (0..5)
            .map(|c| cells.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap())
            .collect();
        let line = |row: [&str; 5]| {
            row.iter()
                .zip(&widths)
                .map(|(s, &w)| format!("{s:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        let mut out = line(header);
        out.push('\n');
        for r in &cells {
            out.push_str(&line([&r[0], &r[1], &r[2], &r[3], &r[4]]));
            out.push('\n');
        }
        out
    }
}

fn direct_row(n: usize) -> TableRow {
    let paths = sorted(direct_hamiltonian(n, false), n, SubgraphKind::Path);
    let ter = paths
        .iter()
        .filter(|p| classify_path(p).expect("enumerated paths are valid") == PathClass::Ter)
        .count();
    TableRow {
        n,
        cycles: direct_hamiltonian(n, true).len(),
        paths: paths.len(),
        ter,
        ext: paths.len() - ter,
    }
}

fn chords_row(n: usize) -> Result<TableRow> {
    let loopless = chords::enumerate_diagrams(2 * n, 0)?;
    let ext = loopless.iter().map(chords::edge_orbit_count).sum();
    Ok(TableRow {
        n,
        cycles: loopless.len(),
        paths: chords::enumerate_diagrams(2 * n + 2, 1)?.len(),
        ter: chords::enumerate_diagrams(2 * n, 1)?.len(),
        ext,
    })
}

/// Path and cycle counts for `n = 2..=max_n`, checked against the ter/ext
/// identities.
pub fn build_table(max_n: usize, method: Method) -> Result<EnumerationTable> {
    build_table_within(max_n, method, &Budget::default())
}

pub fn build_table_within(max_n: usize, method: Method, budget: &Budget) -> Result<EnumerationTable> {
    crate::check_dim(max_n)?;
    let limit = match method {
        Method::Direct => budget.direct,
        Method::Chords | Method::Both => budget.chords,
    };
    within("table", max_n, limit)?;
    let dims: Vec<usize> = (2..=max_n).collect();
    let rows: Vec<TableRow> = match method {
        Method::Direct => dims.par_iter().map(|&n| direct_row(n)).collect(),
        Method::Chords => dims.par_iter().map(|&n| chords_row(n)).collect::<Result<_>>()?,
        Method::Both => dims
            .par_iter()
            .map(|&n| {
                let c = chords_row(n)?;
                if n <= budget.direct {
                    let d = direct_row(n);
                    if d != c {
                        return Err(Error::Mismatch {
                            n,
                            what: format!("direct {d:?} vs chords {c:?}"),
                        });
                    }
                }
                Ok(c)
            })
            .collect::<Result<_>>()?,
    };
    let table = EnumerationTable {
        method,
        rows: rows.into_iter().map(|r| (r.n, r)).collect(),
    };
    table.check_identities()?;
    Ok(table)
}

/// The cycle diagram for each canonical cycle, in enumeration order.
pub fn cycle_diagrams(cycles: &[SpanningSubgraph]) -> Result<Vec<ChordDiagram>> {
    cycles
        .iter()
        .map(|c| Ok(chords::diagram_from_cycle(c)?.canonical()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::SignedPermutation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn tree_counts_small() {
        assert_eq!(enumerate_trees(2).unwrap().len(), 1);
        assert_eq!(enumerate_trees(3).unwrap().len(), 11);
    }

    #[test]
    fn tree_representatives_are_canonical_and_valid() {
        for t in enumerate_trees(3).unwrap() {
            t.validate().unwrap();
            assert_eq!(canonical_form(&t), t);
        }
    }

    #[test]
    fn random_images_stay_in_their_orbit() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let trees = enumerate_trees(3).unwrap();
        let reps: HashSet<_> = trees.iter().map(|t| t.edges().to_vec()).collect();
        for t in &trees {
            for _ in 0..20 {
                let g = SignedPermutation::random(3, &mut rng);
                let image = canonical_form(&g.apply_subgraph(t));
                assert_eq!(&image, t);
                assert!(reps.contains(image.edges()));
            }
        }
    }

    #[test]
    fn path_and_cycle_counts_direct() {
        let paths: Vec<usize> = (2..=4).map(|n| enumerate_paths(n, Method::Direct).unwrap().len()).collect();
        assert_eq!(paths, vec![1, 4, 24]);
        let cycles: Vec<usize> = (2..=4).map(|n| enumerate_cycles(n, Method::Direct).unwrap().len()).collect();
        assert_eq!(cycles, vec![1, 2, 7]);
    }

    #[test]
    fn methods_agree_small() {
        for n in 2..=4 {
            enumerate_paths(n, Method::Both).unwrap();
            enumerate_cycles(n, Method::Both).unwrap();
        }
    }

    #[test]
    fn classification_counts() {
        for (n, expected) in [(2, (0, 1)), (3, (1, 3)), (4, (4, 20))] {
            let paths = enumerate_paths(n, Method::Direct).unwrap();
            let ter = paths
                .iter()
                .filter(|p| classify_path(p).unwrap() == PathClass::Ter)
                .count();
            assert_eq!((ter, paths.len() - ter), expected, "n={n}");
        }
    }

    #[test]
    fn classify_rejects_non_paths() {
        let c = SpanningSubgraph::parse(2, SubgraphKind::Cycle, "1-2,2-1*,1*-2*,2*-1").unwrap();
        assert!(classify_path(&c).is_err());
    }

    #[test]
    fn budget_limits() {
        assert!(matches!(enumerate_trees(6), Err(Error::ResourceLimit { .. })));
        assert!(matches!(enumerate_paths(6, Method::Direct), Err(Error::ResourceLimit { .. })));
        assert!(matches!(build_table(8, Method::Chords), Err(Error::ResourceLimit { .. })));
        let tight = Budget {
            trees: 3,
            direct: 3,
            chords: 3,
        };
        assert!(enumerate_trees_within(4, &tight).is_err());
        assert!(build_table_within(4, Method::Chords, &tight).is_err());
    }

    #[test]
    fn small_table_both_methods() {
        let t = build_table(4, Method::Both).unwrap();
        let rows: Vec<_> = t.rows.values().map(|r| (r.cycles, r.paths, r.ter, r.ext)).collect();
        assert_eq!(rows, vec![(1, 1, 0, 1), (2, 4, 1, 3), (7, 24, 4, 20)]);
        let text = t.to_text();
        assert!(text.starts_with("n  cycles  paths  ter  ext\n"));
        assert_eq!(text.lines().count(), 4);
    }

    #[test]
    fn identity_check_catches_bad_rows() {
        let mut t = build_table(3, Method::Direct).unwrap();
        t.rows.get_mut(&3).unwrap().ter = 2;
        assert!(t.check_identities().is_err());
    }

    #[test]
    fn method_parsing() {
        assert_eq!("both".parse::<Method>().unwrap(), Method::Both);
        assert!("fast".parse::<Method>().is_err());
        assert_eq!(Method::Chords.to_string(), "chords");
    }
}
