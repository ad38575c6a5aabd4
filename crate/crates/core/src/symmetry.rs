//! The hyperoctahedral group (signed permutations of the axes) acting on
//! facet labels, and canonical forms of Roberts-graph subgraphs under it.
//!
//! The canonical form of a subgraph is the lexicographically least sorted
//! edge list among all of its images. Full expansion of the group costs
//! `2^n n!` images, so [`canonicalize`] instead assigns target labels
//! `1, 2, ..., n` one at a time and prunes any partial assignment whose
//! determined prefix already exceeds the best image found so far.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::label::{antipode_index, FacetLabel};
use crate::subgraph::{Edge, SpanningSubgraph};

/// A permutation of the axes together with a per-axis star flip.
///
/// Axis `a` (0-based) is sent to axis `perm[a]`, and the star of a label on
/// axis `a` is toggled when bit `a` of `flips` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<u8>,
    flips: u32,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            perm: (0..n as u8).collect(),
            flips: 0,
        }
    }

    /// `perm` is 0-based; `flips[a]` toggles stars on source axis `a`.
    pub fn new(perm: Vec<usize>, flips: &[bool]) -> Result<Self> {
        let n = perm.len();
        crate::check_dim(n)?;
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Dimension(n));
            }
        }
        if flips.len() != n {
            return Err(Error::Dimension(flips.len()));
        }
        let flips = flips
            .iter()
            .enumerate()
            .fold(0u32, |acc, (i, &f)| acc | ((f as u32) << i));
        Ok(SignedPermutation {
            perm: perm.into_iter().map(|p| p as u8).collect(),
            flips,
        })
    }

    /// Builds the element sending label index `i` to `image[i]`. The map must
    /// commute with the antipode.
    pub(crate) fn from_index_map(n: usize, image: &[u8]) -> Self {
        let mut perm = Vec::with_capacity(n);
        let mut flips = 0u32;
        for a in 0..n {
            let t = image[a] as usize;
            debug_assert_eq!(image[a + n] as usize, antipode_index(t, n));
            if t < n {
                perm.push(t as u8);
            } else {
                perm.push((t - n) as u8);
                flips |= 1 << a;
            }
        }
        SignedPermutation { perm, flips }
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, l: FacetLabel) -> FacetLabel {
        let a = l.axis() - 1;
        let flip = (self.flips >> a) & 1 == 1;
        FacetLabel::new(self.perm[a] as usize + 1, l.is_starred() ^ flip)
    }

    #[inline]
    pub(crate) fn apply_index(&self, i: usize) -> usize {
        let n = self.perm.len();
        let (a, starred) = if i < n { (i, false) } else { (i - n, true) };
        let t = self.perm[a] as usize;
        if starred ^ ((self.flips >> a) & 1 == 1) {
            t + n
        } else {
            t
        }
    }

    pub fn apply_edge(&self, e: Edge) -> Edge {
        let (a, b) = e.ends();
        Edge::new(self.apply(a), self.apply(b)).expect("group action is injective")
    }

    pub fn apply_subgraph(&self, s: &SpanningSubgraph) -> SpanningSubgraph {
        assert_eq!(self.n(), s.n(), "dimension mismatch");
        let mut edges: Vec<Edge> = s.edges().iter().map(|&e| self.apply_edge(e)).collect();
        edges.sort_unstable();
        SpanningSubgraph::from_sorted_unchecked(s.n(), s.kind(), edges)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let n = self.n();
        let image: Vec<u8> = (0..2 * n)
            .map(|i| self.apply_index(other.apply_index(i)) as u8)
            .collect();
        Self::from_index_map(n, &image)
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.n();
        let mut image = vec![0u8; 2 * n];
        for i in 0..2 * n {
            image[self.apply_index(i)] = i as u8;
        }
        Self::from_index_map(n, &image)
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut perm: Vec<u8> = (0..n as u8).collect();
        perm.shuffle(rng);
        let flips = if n == 32 { rng.gen() } else { rng.gen_range(0..1u32 << n) };
        SignedPermutation { perm, flips }
    }

    /// Every element of the group; `2^n n!` of them.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let mut out = Vec::with_capacity(group_order(n) as usize);
        for perm in permutations(n) {
            for flips in 0..1u32 << n {
                out.push(SignedPermutation {
                    perm: perm.clone(),
                    flips,
                });
            }
        }
        out
    }
}

/// `2^n n!`.
pub fn group_order(n: usize) -> u64 {
    (1..=n as u64).product::<u64>() << n
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut current: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

/// The orbit of `s` under the full group. Exhaustive; keep `n` small.
pub fn orbit(s: &SpanningSubgraph) -> BTreeSet<Vec<Edge>> {
    SignedPermutation::all(s.n())
        .iter()
        .map(|g| g.apply_subgraph(s).edges().to_vec())
        .collect()
}

/// Elements fixing `s` as an edge set. Exhaustive; keep `n` small.
pub fn stabilizer(s: &SpanningSubgraph) -> Vec<SignedPermutation> {
    SignedPermutation::all(s.n())
        .into_iter()
        .filter(|g| g.apply_subgraph(s).edges() == s.edges())
        .collect()
}

/// The canonical representative of the orbit of `s`.
pub fn canonical_form(s: &SpanningSubgraph) -> SpanningSubgraph {
    canonicalize(s).0
}

/// Canonical representative plus a group element carrying `s` onto it.
pub fn canonicalize(s: &SpanningSubgraph) -> (SpanningSubgraph, SignedPermutation) {
    let n = s.n();
    if s.edges().is_empty() {
        return (s.clone(), SignedPermutation::identity(n));
    }
    let mut search = Search::new(n, s);
    search.run();
    let codes = search.best.expect("search always completes one assignment");
    let edges = codes
        .into_iter()
        .map(|c| decode(c, n))
        .collect::<Vec<_>>();
    let witness = SignedPermutation::from_index_map(n, &search.best_map);
    (
        SpanningSubgraph::from_sorted_unchecked(n, s.kind(), edges),
        witness,
    )
}

const UNSET: u8 = u8::MAX;

// Edge (a, b), a < b, packed so that numeric order is lexicographic order.
#[inline]
fn code(a: usize, b: usize) -> u16 {
    debug_assert!(a < b);
    (a as u16) << 5 | b as u16
}

fn decode(c: u16, n: usize) -> Edge {
    let (a, b) = ((c >> 5) as usize, (c & 31) as usize);
    Edge::new(FacetLabel::from_index(a, n), FacetLabel::from_index(b, n)).unwrap()
}

struct Search {
    n: usize,
    adj: Vec<u32>,
    edges: Vec<(usize, usize)>,
    /// Source index to target index.
    target: Vec<u8>,
    /// Unstarred target to the source mapped onto it.
    source_of: Vec<u8>,
    depth: usize,
    best: Option<Vec<u16>>,
    best_map: Vec<u8>,
}

impl Search {
    fn new(n: usize, s: &SpanningSubgraph) -> Self {
        let edges = s
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = e.ends();
                (a.index(n), b.index(n))
            })
            .collect();
        Search {
            n,
            adj: s.adjacency(),
            edges,
            target: vec![UNSET; 2 * n],
            source_of: vec![UNSET; n],
            depth: 0,
            best: None,
            best_map: Vec::new(),
        }
    }

    fn run(&mut self) {
        if self.depth == self.n {
            self.leaf();
            return;
        }
        if self.dominated() {
            return;
        }
        let k = self.depth;
        let n = self.n;
        let mut candidates: Vec<(usize, usize)> = (0..2 * n)
            .filter(|&v| self.target[v] == UNSET)
            .map(|v| (self.priority(v), v))
            .collect();
        candidates.sort_unstable();
        for (_, v) in candidates {
            let anti = antipode_index(v, n);
            self.target[v] = k as u8;
            self.target[anti] = (n + k) as u8;
            self.source_of[k] = v as u8;
            self.depth += 1;
            self.run();
            self.depth -= 1;
            self.target[v] = UNSET;
            self.target[anti] = UNSET;
            self.source_of[k] = UNSET;
        }
    }

    /// Smallest target among already mapped neighbours; unmapped sources
    /// adjacent to early targets are the likeliest to win the next slot.
    fn priority(&self, v: usize) -> usize {
        let mut mask = self.adj[v];
        let mut best = usize::MAX;
        while mask != 0 {
            let u = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            if self.target[u] != UNSET {
                best = best.min(self.target[u] as usize);
            }
        }
        best
    }

    fn leaf(&mut self) {
        let mut image: Vec<u16> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (self.target[a] as usize, self.target[b] as usize);
                if x < y {
                    code(x, y)
                } else {
                    code(y, x)
                }
            })
            .collect();
        image.sort_unstable();
        if self.best.as_ref().is_none_or(|b| image < *b) {
            self.best = Some(image);
            self.best_map = self.target.clone();
        }
    }

    /// True when every completion of the current partial assignment is
    /// strictly larger than the incumbent.
    fn dominated(&self) -> bool {
        let Some(best) = self.best.as_ref() else {
            return false;
        };
        let n = self.n;
        let k = self.depth;
        let mut pos = 0;
        // Compare one determined element; Some(prune?) once decided.
        let step = |value: u16, pos: &mut usize| -> Option<bool> {
            let b = *best.get(*pos)?;
            *pos += 1;
            match value.cmp(&b) {
                std::cmp::Ordering::Less => Some(false),
                std::cmp::Ordering::Greater => Some(true),
                std::cmp::Ordering::Equal => None,
            }
        };
        let mut known = Vec::with_capacity(2 * n);
        for t in 0..k {
            let src = self.source_of[t] as usize;
            known.clear();
            let mut unknown = 0;
            let mut mask = self.adj[src];
            while mask != 0 {
                let u = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                match self.target[u] {
                    UNSET => unknown += 1,
                    x if (x as usize) > t => known.push(x as usize),
                    _ => {}
                }
            }
            known.sort_unstable();
            let split = known.partition_point(|&x| x < k);
            for &x in &known[..split] {
                if let Some(decided) = step(code(t, x), &mut pos) {
                    return decided;
                }
            }
            if unknown > 0 {
                // The next element is (t, x) for some x >= k.
                return best.get(pos).is_some_and(|&b| code(t, k) > b);
            }
            for &x in &known[split..] {
                if let Some(decided) = step(code(t, x), &mut pos) {
                    return decided;
                }
            }
        }
        // Remaining edges all have their smaller endpoint at a target >= k.
        best.get(pos).is_some_and(|&b| ((k as u16) << 5) > b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgraph::SubgraphKind;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tree(n: usize, s: &str) -> SpanningSubgraph {
        SpanningSubgraph::parse(n, SubgraphKind::Tree, s).unwrap()
    }

    fn brute_min(s: &SpanningSubgraph) -> Vec<Edge> {
        orbit(s).into_iter().next().unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(group_order(3), 48);
        assert_eq!(group_order(8), 10_321_920);
        for n in 1..=4 {
            let all: BTreeSet<_> = SignedPermutation::all(n).into_iter().collect();
            assert_eq!(all.len() as u64, group_order(n));
        }
    }

    #[test]
    fn action_commutes_with_antipode_and_keeps_edges() {
        let n = 4;
        for g in SignedPermutation::all(n) {
            for l in FacetLabel::all(n) {
                assert_eq!(g.apply(l.antipode()), g.apply(l).antipode());
            }
            for e in crate::subgraph::roberts_edges(n) {
                assert!(!g.apply_edge(e).is_antipodal());
            }
        }
    }

    #[test]
    fn compose_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let g = SignedPermutation::random(5, &mut rng);
            let h = SignedPermutation::random(5, &mut rng);
            assert_eq!(g.compose(&g.inverse()), SignedPermutation::identity(5));
            for l in FacetLabel::all(5) {
                assert_eq!(g.compose(&h).apply(l), g.apply(h.apply(l)));
            }
        }
    }

    #[test]
    fn axis_swap_lands_in_same_class() {
        let a = tree(3, "1-2,1-2*,1-3,1-3*,2-1*");
        let swap = SignedPermutation::new(vec![0, 2, 1], &[false; 3]).unwrap();
        let b = swap.apply_subgraph(&a);
        assert_ne!(a, b);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn matches_exhaustive_minimum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            for _ in 0..150 {
                let t = crate::random::random_spanning_tree(n, &mut rng);
                let (c, g) = canonicalize(&t);
                assert_eq!(c.edges(), brute_min(&t).as_slice());
                assert_eq!(g.apply_subgraph(&t), c);
            }
        }
    }

    #[test]
    fn arbitrary_edge_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let all = crate::subgraph::roberts_edges(4);
        for _ in 0..200 {
            let k = rng.gen_range(1..10);
            let edges: Vec<Edge> = all.choose_multiple(&mut rng, k).copied().collect();
            let s = SpanningSubgraph::new(4, SubgraphKind::Tree, edges).unwrap();
            assert_eq!(canonical_form(&s).edges(), brute_min(&s).as_slice());
        }
    }

    #[test]
    fn orbit_stabilizer() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=4 {
            for _ in 0..10 {
                let t = crate::random::random_spanning_tree(n, &mut rng);
                let size = orbit(&t).len() as u64 * stabilizer(&t).len() as u64;
                assert_eq!(size, group_order(n));
            }
        }
    }
}
