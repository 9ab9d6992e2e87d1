//! Towers of Hanoi with three pegs and R rings.
//!
//! State cell `i` holds the peg (0 = A, 1 = B, 2 = C) of ring `i + 1`,
//! ring 1 being the smallest. The goal stacks every ring on peg A; the
//! heuristic counts rings off peg A.
//!
//! Text form lists the pegs A, B and C separated by `|`, each bottom to
//! top: `5 4 3 | 2 | 1`.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::model::{Domain, OperatorId, State};

const NAMES: [&str; 6] = ["AB", "AC", "BA", "BC", "CA", "CB"];
const MOVES: [(u16, u16); 6] = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];

#[derive(Debug, Clone)]
pub struct Hanoi {
    rings: usize,
}

pub fn hanoi_domain(r: u32) -> Result<Hanoi> {
    if r < 1 {
        return Err(Error::InvalidParameter("hanoi needs at least one ring".into()));
    }
    if r > 64 {
        return Err(Error::InvalidParameter(format!("hanoi ring count {r} too large")));
    }
    Ok(Hanoi { rings: r as usize })
}

impl Hanoi {
    pub fn rings(&self) -> usize {
        self.rings
    }

    pub fn goal(&self) -> State {
        State::from(vec![0; self.rings])
    }

    /// Every ring on peg C.
    pub fn far_state(&self) -> State {
        State::from(vec![2; self.rings])
    }
}

impl Domain for Hanoi {
    fn name(&self) -> &str {
        "hanoi"
    }

    fn parameter(&self) -> Option<u32> {
        Some(self.rings as u32)
    }

    fn operator_names(&self) -> &[&'static str] {
        &NAMES
    }

    fn apply_in_place(&self, op: OperatorId, state: &mut State) -> bool {
        let (from, to) = MOVES[op.index()];
        let cells = state.cells_mut();
        // The first ring found on a peg is its top ring.
        let Some(top) = cells.iter().position(|&p| p == from) else {
            return false;
        };
        if cells[..top].contains(&to) {
            return false;
        }
        cells[top] = to;
        true
    }

    fn heuristic(&self, state: &State, _goal: &State) -> u64 {
        state.cells().iter().filter(|&&p| p != 0).count() as u64
    }

    fn generate_goal(&self, _rng: &mut dyn RngCore) -> State {
        self.goal()
    }

    fn reverse_of(&self, op: OperatorId) -> Option<OperatorId> {
        let (from, to) = MOVES[op.index()];
        MOVES
            .iter()
            .position(|&m| m == (to, from))
            .map(|i| OperatorId(i as u8))
    }

    fn parse_state(&self, text: &str) -> Result<State> {
        let pegs: Vec<&str> = text.split('|').collect();
        if pegs.len() != 3 {
            return Err(Error::InvalidParameter(format!("expected three `|`-separated pegs, got `{text}`")));
        }
        let mut cells = vec![u16::MAX; self.rings];
        for (peg, rings) in pegs.iter().enumerate() {
            let mut below = usize::MAX;
            for tok in rings.split_whitespace() {
                let r: usize = tok
                    .parse()
                    .ok()
                    .filter(|r| (1..=self.rings).contains(r))
                    .ok_or_else(|| Error::InvalidParameter(format!("bad ring `{tok}`")))?;
                if r >= below || cells[r - 1] != u16::MAX {
                    return Err(Error::InvalidParameter(format!("illegal stack on peg {peg}")));
                }
                cells[r - 1] = peg as u16;
                below = r;
            }
        }
        if cells.contains(&u16::MAX) {
            return Err(Error::InvalidParameter("missing rings".into()));
        }
        Ok(State::from(cells))
    }

    fn format_state(&self, state: &State) -> String {
        (0..3u16)
            .map(|peg| {
                (1..=self.rings)
                    .rev()
                    .filter(|&r| state.cells()[r - 1] == peg)
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn larger_ring_cannot_cover_smaller() {
        let d = hanoi_domain(3).unwrap();
        let mut s = d.parse_state("3 2 | 1 |").unwrap();
        // Top of A is ring 2, top of B is ring 1.
        assert!(!d.apply_in_place(OperatorId(0), &mut s.clone()));
        assert!(d.apply_in_place(OperatorId(2), &mut s));
        assert_eq!(d.format_state(&s), "3 2 1 |  | ");
        assert_eq!(s, d.goal());
    }

    #[test]
    fn one_ring_solves_in_one_move() {
        let d = hanoi_domain(1).unwrap();
        let g = d.goal();
        for start in ["| 1 |", "| | 1"] {
            let s = d.parse_state(start).unwrap();
            let fixed = d.operators().into_iter().any(|op| {
                let mut t = s.clone();
                d.apply_in_place(op, &mut t) && t == g
            });
            assert!(fixed, "{start}");
        }
    }

    #[test]
    fn parse_rejects_bad_stacks() {
        let d = hanoi_domain(3).unwrap();
        assert!(d.parse_state("1 2 3 | |").is_err());
        assert!(d.parse_state("3 2 | |").is_err());
        assert!(d.parse_state("3 2 1").is_err());
    }
}
