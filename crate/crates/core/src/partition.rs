//! Cube partitions and their realization as path unfoldings.
//!
//! Positive rolls are modelled as a token-sliding game. Each lattice
//! direction `d` has a reservoir of facets still to be unfolded along it and
//! two board cells: `near` (slot `-d`) and `far` (slot `+d`). The antipode of
//! the base is a shared transfer cell. A cell is occupied when the facet in
//! that slot has already been unfolded. Sliding along `d` rolls the cube in
//! direction `+d`: the far cell receives the transfer token, the transfer
//! cell receives the near token, and the near cell receives the old base.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::label::FacetLabel;
use crate::net::{cube_partition_of, CubePartition};
use crate::random::random_spanning_tree;
use crate::roll::{Direction, RollSequence, RollState};

/// Every partition of `3n-2` into `n-1` parts of size at least 2, each part
/// list descending, in descending lexicographic order.
pub fn enumerate_cube_partitions(n: usize) -> Result<Vec<CubePartition>> {
    crate::check_dim(n)?;
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(n - 1);
    fill(3 * n - 2, n - 1, 3 * n - 2, &mut parts, &mut out);
    Ok(out)
}

fn fill(remaining: usize, slots: usize, cap: usize, parts: &mut Vec<usize>, out: &mut Vec<CubePartition>) {
    if slots == 0 {
        if remaining == 0 {
            out.push(CubePartition::new(parts.clone()).expect("generated partition is valid"));
        }
        return;
    }
    // Leave at least 2 for every later slot.
    let hi = cap.min(remaining - 2 * (slots - 1));
    for p in (2..=hi).rev() {
        if p * slots < remaining {
            break;
        }
        parts.push(p);
        fill(remaining - p, slots - 1, p, parts, out);
        parts.pop();
    }
}

/// Tokens per direction: each part minus the one cell every axis gets from
/// the first facet.
pub fn reservoirs(p: &CubePartition) -> Vec<usize> {
    p.parts().iter().map(|&k| k - 1).collect()
}

/// Directions are 1-based. Towers are directions holding two or more tokens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenClassification {
    pub singletons: Vec<usize>,
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
    /// `(direction, count)` for towers with tokens between bottom and top.
    pub middle: Vec<(usize, usize)>,
}

impl TokenClassification {
    pub fn middle_count(&self) -> usize {
        self.middle.iter().map(|&(_, c)| c).sum()
    }
}

pub fn classify_tokens(p: &CubePartition) -> TokenClassification {
    classify_reservoirs(&reservoirs(p))
}

pub fn classify_reservoirs(res: &[usize]) -> TokenClassification {
    let mut order: Vec<usize> = (1..=res.len()).collect();
    // Towers by descending size, then by direction.
    order.sort_by_key(|&d| (std::cmp::Reverse(res[d - 1]), d));
    let towers: Vec<usize> = order.iter().copied().filter(|&d| res[d - 1] >= 2).collect();
    let mut singletons: Vec<usize> = order.iter().copied().filter(|&d| res[d - 1] == 1).collect();
    singletons.sort_unstable();
    TokenClassification {
        singletons,
        bottom: towers.clone(),
        top: towers.clone(),
        middle: towers
            .iter()
            .filter(|&&d| res[d - 1] > 2)
            .map(|&d| (d, res[d - 1] - 2))
            .collect(),
    }
}

/// State of the sliding game.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TokenBoard {
    reservoir: Vec<usize>,
    near: Vec<bool>,
    far: Vec<bool>,
    transfer: bool,
}

impl TokenBoard {
    /// An empty board with `reservoir[d-1]` tokens waiting in direction `d`.
    pub fn new(reservoir: Vec<usize>) -> Self {
        let k = reservoir.len();
        TokenBoard {
            reservoir,
            near: vec![false; k],
            far: vec![false; k],
            transfer: false,
        }
    }

    pub fn directions(&self) -> usize {
        self.reservoir.len()
    }

    pub fn reservoir(&self, d: usize) -> usize {
        self.reservoir[d - 1]
    }

    pub fn near(&self, d: usize) -> bool {
        self.near[d - 1]
    }

    pub fn far(&self, d: usize) -> bool {
        self.far[d - 1]
    }

    pub fn transfer(&self) -> bool {
        self.transfer
    }

    pub fn tokens_on_board(&self) -> usize {
        self.near.iter().chain(&self.far).filter(|&&b| b).count() + usize::from(self.transfer)
    }

    pub fn tokens_in_reservoirs(&self) -> usize {
        self.reservoir.iter().sum()
    }

    /// Every cell occupied and every reservoir empty.
    pub fn is_complete(&self) -> bool {
        self.transfer
            && self.near.iter().chain(&self.far).all(|&b| b)
            && self.reservoir.iter().all(|&r| r == 0)
    }

    /// Slides every token along direction `d` one place up.
    pub fn slide(&self, d: usize) -> Result<TokenBoard> {
        if d == 0 || d > self.directions() {
            return Err(Error::IllegalSlide {
                direction: d,
                reason: "no such direction",
            });
        }
        let i = d - 1;
        if self.reservoir[i] == 0 {
            return Err(Error::IllegalSlide {
                direction: d,
                reason: "reservoir is empty",
            });
        }
        if self.far[i] {
            return Err(Error::IllegalSlide {
                direction: d,
                reason: "far cell is occupied",
            });
        }
        let mut next = self.clone();
        next.far[i] = self.transfer;
        next.transfer = self.near[i];
        next.near[i] = true;
        next.reservoir[i] -= 1;
        Ok(next)
    }
}

impl fmt::Display for TokenBoard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { '#' } else { '.' };
        write!(f, "transfer {}", mark(self.transfer))?;
        for i in 0..self.directions() {
            write!(
                f,
                " | d{}: {}{} r={}",
                i + 1,
                mark(self.near[i]),
                mark(self.far[i]),
                self.reservoir[i]
            )?;
        }
        Ok(())
    }
}

/// Which group of tokens a slide moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Bottom,
    Middle,
    Singleton,
    Top,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Slide {
    pub direction: usize,
    pub phase: Phase,
}

/// The slide schedule: one bottom token per tower, then middle and singleton
/// tokens alternately (starting and ending with a middle token), then one top
/// token per tower.
pub fn plan_slides(p: &CubePartition) -> Vec<Slide> {
    let c = classify_tokens(p);
    let mut plan = Vec::with_capacity(2 * p.n() - 1);
    let slide = |direction, phase| Slide { direction, phase };
    plan.extend(c.bottom.iter().map(|&d| slide(d, Phase::Bottom)));
    let middles: Vec<usize> = c
        .middle
        .iter()
        .flat_map(|&(d, k)| std::iter::repeat_n(d, k))
        .collect();
    debug_assert_eq!(middles.len(), c.singletons.len() + 1);
    for (i, &m) in middles.iter().enumerate() {
        plan.push(slide(m, Phase::Middle));
        if let Some(&s) = c.singletons.get(i) {
            plan.push(slide(s, Phase::Singleton));
        }
    }
    plan.extend(c.top.iter().map(|&d| slide(d, Phase::Top)));
    plan
}

/// Plays `plan` from an empty board, returning the board after every slide.
/// Middle slides require an empty transfer cell and singleton slides an
/// occupied one; either violation would strand a token.
pub fn play(p: &CubePartition, plan: &[Slide]) -> Result<Vec<TokenBoard>> {
    let mut board = TokenBoard::new(reservoirs(p));
    let total = 2 * p.n() - 1;
    let mut boards = Vec::with_capacity(plan.len());
    for s in plan {
        match s.phase {
            Phase::Middle if board.transfer() => {
                return Err(Error::IllegalSlide {
                    direction: s.direction,
                    reason: "middle slide with an occupied transfer cell",
                })
            }
            Phase::Singleton if !board.transfer() => {
                return Err(Error::IllegalSlide {
                    direction: s.direction,
                    reason: "singleton slide with an empty transfer cell",
                })
            }
            _ => {}
        }
        board = board.slide(s.direction)?;
        debug_assert_eq!(board.tokens_on_board() + board.tokens_in_reservoirs(), total);
        boards.push(board.clone());
    }
    Ok(boards)
}

/// A positive roll word from facet `1` whose path unfolding has bounding box `p`.
pub fn realize_partition(p: &CubePartition) -> Result<RollSequence> {
    let plan = plan_slides(p);
    let boards = play(p, &plan)?;
    if !boards.last().is_some_and(TokenBoard::is_complete) {
        return Err(Error::Partition {
            parts: p.parts().to_vec(),
            reason: "slides did not fill the board",
        });
    }
    let moves = plan.iter().map(|s| Direction::positive(s.direction)).collect();
    RollSequence::new(RollState::initial(p.n(), FacetLabel::plain(1))?, moves)
}

/// Histogram of cube partitions over `samples` uniformly random spanning trees.
pub fn sample_partition_distribution<R: Rng + ?Sized>(
    n: usize,
    samples: usize,
    rng: &mut R,
) -> Result<BTreeMap<CubePartition, usize>> {
    crate::check_dim(n)?;
    let mut hist = BTreeMap::new();
    for _ in 0..samples {
        let t = random_spanning_tree(n, rng);
        let dev = crate::develop::develop_tree(&t, FacetLabel::plain(1))?;
        *hist.entry(cube_partition_of(&dev)?).or_insert(0) += 1;
    }
    Ok(hist)
}
