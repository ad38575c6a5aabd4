//! Random spanning subgraphs of the Roberts graph for sampled verification.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::label::{antipode_index, FacetLabel};
use crate::subgraph::{Edge, SpanningSubgraph, SubgraphKind};

fn random_neighbor<R: Rng + ?Sized>(u: usize, n: usize, rng: &mut R) -> usize {
    let anti = antipode_index(u, n);
    let (lo, hi) = if u < anti { (u, anti) } else { (anti, u) };
    let mut v = rng.gen_range(0..2 * n - 2);
    if v >= lo {
        v += 1;
    }
    if v >= hi {
        v += 1;
    }
    v
}

fn edge(a: usize, b: usize, n: usize) -> Edge {
    Edge::new(FacetLabel::from_index(a, n), FacetLabel::from_index(b, n)).unwrap()
}

/// Uniformly random spanning tree (Wilson's loop-erased random walk).
pub fn random_spanning_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SpanningSubgraph {
    let m = 2 * n;
    let mut in_tree = vec![false; m];
    let mut next = vec![usize::MAX; m];
    let root = rng.gen_range(0..m);
    in_tree[root] = true;
    for start in 0..m {
        let mut u = start;
        while !in_tree[u] {
            next[u] = random_neighbor(u, n, rng);
            u = next[u];
        }
        u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next[u];
        }
    }
    let edges = (0..m)
        .filter(|&i| i != root)
        .map(|i| edge(i, next[i], n))
        .collect();
    SpanningSubgraph::new(n, SubgraphKind::Tree, edges).unwrap()
}

/// A random spanning path or cycle, found by randomized depth-first search.
/// Not uniform.
pub fn random_hamiltonian<R: Rng + ?Sized>(n: usize, closed: bool, rng: &mut R) -> SpanningSubgraph {
    let m = 2 * n;
    let start = rng.gen_range(0..m);
    let mut seq = vec![start];
    let mut used = 1u32 << start;
    assert!(extend(n, closed, &mut seq, &mut used, rng), "Roberts graphs are Hamiltonian for n >= 2");
    let nodes: Vec<_> = seq.iter().map(|&i| FacetLabel::from_index(i, n)).collect();
    SpanningSubgraph::from_sequence(n, &nodes, closed).unwrap()
}

fn extend<R: Rng + ?Sized>(n: usize, closed: bool, seq: &mut Vec<usize>, used: &mut u32, rng: &mut R) -> bool {
    let m = 2 * n;
    let last = *seq.last().unwrap();
    if seq.len() == m {
        return !closed || antipode_index(last, n) != seq[0];
    }
    let mut options: Vec<usize> = (0..m)
        .filter(|&v| *used & (1 << v) == 0 && v != antipode_index(last, n))
        .collect();
    options.shuffle(rng);
    for v in options {
        seq.push(v);
        *used |= 1 << v;
        if extend(n, closed, seq, used, rng) {
            return true;
        }
        seq.pop();
        *used &= !(1 << v);
    }
    false
}
