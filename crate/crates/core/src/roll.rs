//! Rolling an n-cube across the hyperplane.
//!
//! A [`RollState`] records which facet occupies each of the `2n` directional
//! slots around the current base: the base itself, its antipode, and one slot
//! for each signed lattice direction `±1, ..., ±(n-1)`. Rolling in direction
//! `d` rotates the four slots `base → -d → base* → +d → base`, so the facet
//! ahead in direction `d` becomes the new base and the old base falls behind
//! into slot `-d`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::label::FacetLabel;

/// A signed lattice direction `±d`, `1 <= d <= n-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction(i32);

impl Direction {
    pub fn new(value: i32, n: usize) -> Result<Self> {
        if value == 0 || value.unsigned_abs() as usize >= n {
            return Err(Error::Direction { direction: value, n });
        }
        Ok(Direction(value))
    }

    pub fn positive(axis: usize) -> Self {
        assert!(axis >= 1);
        Direction(axis as i32)
    }

    pub fn value(self) -> i32 {
        self.0
    }

    /// 1-based lattice axis.
    pub fn axis(self) -> usize {
        self.0.unsigned_abs() as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn reversed(self) -> Self {
        Direction(-self.0)
    }

    /// Parses a comma separated word such as `+1,+2,-1`.
    pub fn parse_word(text: &str, n: usize) -> Result<Vec<Direction>> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                let d: Direction = s.parse()?;
                Direction::new(d.0, n)
            })
            .collect()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.parse::<i32>() {
            Ok(v) if v != 0 => Ok(Direction(v)),
            _ => Err(Error::ParseDirection(s.to_string())),
        }
    }
}

/// A slot around the current base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    Base,
    Antibase,
    Toward(Direction),
}

impl Slot {
    fn index(self) -> usize {
        match self {
            Slot::Base => 0,
            Slot::Antibase => 1,
            Slot::Toward(d) => 2 * d.axis() + usize::from(!d.is_positive()),
        }
    }

    fn from_index(i: usize) -> Self {
        match i {
            0 => Slot::Base,
            1 => Slot::Antibase,
            _ => {
                let axis = (i / 2) as i32;
                Slot::Toward(Direction(if i.is_multiple_of(2) { axis } else { -axis }))
            }
        }
    }
}

/// Which facet sits in which slot: the moving frame of an unfolding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RollState {
    n: usize,
    /// Facet in each slot (see `Slot::index`).
    slots: Vec<FacetLabel>,
    /// Slot index of each facet, by dense label index.
    slot_of: Vec<u8>,
}

impl RollState {
    /// The starting frame with `base` down. The positive slots `+1, ..., +(n-1)`
    /// hold the remaining axes in ascending order, unstarred; each negative
    /// slot holds the antipode of its positive partner.
    pub fn initial(n: usize, base: FacetLabel) -> Result<Self> {
        crate::check_dim(n)?;
        base.check(n)?;
        let mut slots = vec![base, base.antipode()];
        for axis in (1..=n).filter(|&a| a != base.axis()) {
            slots.push(FacetLabel::plain(axis));
            slots.push(FacetLabel::star(axis));
        }
        Ok(Self::from_slots(n, slots))
    }

    fn from_slots(n: usize, slots: Vec<FacetLabel>) -> Self {
        let mut slot_of = vec![0u8; 2 * n];
        for (i, l) in slots.iter().enumerate() {
            slot_of[l.index(n)] = i as u8;
        }
        RollState { n, slots, slot_of }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> FacetLabel {
        self.slots[0]
    }

    pub fn at(&self, slot: Slot) -> FacetLabel {
        self.slots[slot.index()]
    }

    pub fn slot_of(&self, l: FacetLabel) -> Slot {
        Slot::from_index(self.slot_of[l.index(self.n)] as usize)
    }

    /// Rolls the cube over the ridge in direction `d`.
    pub fn roll(&self, d: Direction) -> RollState {
        assert!(d.axis() < self.n, "direction {d} out of range for n={}", self.n);
        let mut next = self.clone();
        next.roll_in_place(d);
        next
    }

    pub(crate) fn roll_in_place(&mut self, d: Direction) {
        let ahead = Slot::Toward(d).index();
        let behind = Slot::Toward(d.reversed()).index();
        let (base, anti) = (self.slots[0], self.slots[1]);
        self.slots[0] = self.slots[ahead];
        self.slots[ahead] = anti;
        self.slots[1] = self.slots[behind];
        self.slots[behind] = base;
        for i in [0, 1, ahead, behind] {
            self.slot_of[self.slots[i].index(self.n)] = i as u8;
        }
        debug_assert!(self.is_consistent());
    }

    /// Every facet occupies exactly one slot, and paired slots hold antipodes.
    pub fn is_consistent(&self) -> bool {
        let n = self.n;
        if self.slots.len() != 2 * n {
            return false;
        }
        let mut seen = 0u32;
        for (i, l) in self.slots.iter().enumerate() {
            if !l.exists_in(n) || seen & (1 << l.index(n)) != 0 {
                return false;
            }
            seen |= 1 << l.index(n);
            if self.slot_of[l.index(n)] as usize != i {
                return false;
            }
        }
        self.slots
            .chunks(2)
            .all(|pair| pair[0].antipode() == pair[1])
    }
}

impl fmt::Display for RollState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base={} base*={}", self.slots[0], self.slots[1])?;
        for d in 1..self.n {
            let d = Direction::positive(d);
            write!(
                f,
                " {d}={} {}={}",
                self.at(Slot::Toward(d)),
                d.reversed(),
                self.at(Slot::Toward(d.reversed()))
            )?;
        }
        Ok(())
    }
}

/// A start state and a word of roll directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RollSequence {
    pub start: RollState,
    pub moves: Vec<Direction>,
}

impl RollSequence {
    pub fn new(start: RollState, moves: Vec<Direction>) -> Result<Self> {
        for &d in &moves {
            Direction::new(d.value(), start.n())?;
        }
        Ok(RollSequence { start, moves })
    }

    pub fn n(&self) -> usize {
        self.start.n()
    }

    /// The start state followed by the state after each move.
    pub fn states(&self) -> Vec<RollState> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        let mut s = self.start.clone();
        out.push(s.clone());
        for &d in &self.moves {
            s.roll_in_place(d);
            out.push(s.clone());
        }
        out
    }

    pub fn word(&self) -> String {
        self.moves
            .iter()
            .map(Direction::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(s: &str) -> FacetLabel {
        s.parse().unwrap()
    }

    fn d(v: i32) -> Direction {
        Direction(v)
    }

    #[test]
    fn initial_slots() {
        let s = RollState::initial(3, l("1")).unwrap();
        assert_eq!(s.base(), l("1"));
        assert_eq!(s.at(Slot::Antibase), l("1*"));
        assert_eq!(s.at(Slot::Toward(d(1))), l("2"));
        assert_eq!(s.at(Slot::Toward(d(-1))), l("2*"));
        assert_eq!(s.at(Slot::Toward(d(2))), l("3"));
        assert_eq!(s.at(Slot::Toward(d(-2))), l("3*"));

        let s = RollState::initial(4, l("1")).unwrap();
        for (k, name) in ["2", "3", "4"].iter().enumerate() {
            let k = k as i32 + 1;
            assert_eq!(s.at(Slot::Toward(d(k))), l(name));
            assert_eq!(s.at(Slot::Toward(d(-k))), l(name).antipode());
        }

        let s = RollState::initial(2, l("1")).unwrap();
        assert_eq!(s.to_string(), "base=1 base*=1* +1=2 -1=2*");
    }

    #[test]
    fn first_roll() {
        let s = RollState::initial(3, l("1")).unwrap().roll(d(1));
        assert_eq!(s.to_string(), "base=2 base*=2* +1=1* -1=1 +2=3 -2=3*");
        assert_eq!(s.slot_of(l("1")), Slot::Toward(d(-1)));
    }

    #[test]
    fn direction_parsing() {
        let w = Direction::parse_word("+1, +2,-1", 3).unwrap();
        assert_eq!(w, vec![d(1), d(2), d(-1)]);
        assert!(Direction::parse_word("+3", 3).is_err());
        assert!(Direction::parse_word("0", 3).is_err());
        assert!(Direction::parse_word("x", 3).is_err());
        assert_eq!(d(-2).to_string(), "-2");
    }

    fn state_and_moves() -> impl Strategy<Value = (usize, Vec<i32>, i32)> {
        (2usize..=8).prop_flat_map(|n| {
            let dir = (1..n as i32).prop_flat_map(|a| prop_oneof![Just(a), Just(-a)]);
            (
                Just(n),
                proptest::collection::vec(dir.clone(), 0..30),
                dir,
            )
        })
    }

    proptest! {
        #[test]
        fn roll_inverse_and_order_four((n, word, last) in state_and_moves(), base in 0usize..16) {
            let mut s = RollState::initial(n, FacetLabel::from_index(base % (2 * n), n)).unwrap();
            for v in word {
                s = s.roll(Direction(v));
                prop_assert!(s.is_consistent());
            }
            let dl = Direction(last);
            prop_assert_eq!(&s.roll(dl).roll(dl.reversed()), &s);
            prop_assert_eq!(&s.roll(dl).roll(dl).roll(dl).roll(dl), &s);
        }
    }
}
