//! K white and K black stones on a strip of 2K+1 cells.
//!
//! A stone may slide into the adjacent empty cell or hop over one or two
//! stones into it. Operators are named by the source offset relative to
//! the empty cell, so `-2` moves the stone two cells left of the gap into
//! it. The reverse of offset `k` is `-k`.
//!
//! The goal puts every white stone left of the gap and every black stone
//! right of it: `W W … W _ B B … B`.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::model::{Domain, OperatorId, State};

pub const EMPTY: u16 = 0;
pub const WHITE: u16 = 1;
pub const BLACK: u16 = 2;

const NAMES: [&str; 6] = ["-3", "-2", "-1", "+1", "+2", "+3"];
const OFFSETS: [isize; 6] = [-3, -2, -1, 1, 2, 3];

#[derive(Debug, Clone)]
pub struct Stones {
    k: usize,
}

pub fn stones_domain(k: u32) -> Result<Stones> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("stones needs K >= 2, got {k}")));
    }
    if k > 10_000 {
        return Err(Error::InvalidParameter(format!("stones K {k} too large")));
    }
    Ok(Stones { k: k as usize })
}

impl Stones {
    pub fn goal(&self) -> State {
        let mut cells = vec![WHITE; self.k];
        cells.push(EMPTY);
        cells.extend(std::iter::repeat_n(BLACK, self.k));
        State::from(cells)
    }
}

impl Domain for Stones {
    fn name(&self) -> &str {
        "stones"
    }

    fn parameter(&self) -> Option<u32> {
        Some(self.k as u32)
    }

    fn operator_names(&self) -> &[&'static str] {
        &NAMES
    }

    fn apply_in_place(&self, op: OperatorId, state: &mut State) -> bool {
        let cells = state.cells_mut();
        let Some(e) = cells.iter().position(|&c| c == EMPTY) else {
            return false;
        };
        let src = e as isize + OFFSETS[op.index()];
        if src < 0 || src >= cells.len() as isize {
            return false;
        }
        cells.swap(e, src as usize);
        true
    }

    /// Stones not on their goal cell.
    fn heuristic(&self, state: &State, goal: &State) -> u64 {
        state
            .cells()
            .iter()
            .zip(goal.cells())
            .filter(|(&s, &g)| s != EMPTY && s != g)
            .count() as u64
    }

    fn generate_goal(&self, _rng: &mut dyn RngCore) -> State {
        self.goal()
    }

    fn reverse_of(&self, op: OperatorId) -> Option<OperatorId> {
        Some(OperatorId(5 - op.0))
    }

    fn parse_state(&self, text: &str) -> Result<State> {
        let cells = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'W' | 'w' => Ok(WHITE),
                'B' | 'b' => Ok(BLACK),
                '_' => Ok(EMPTY),
                other => Err(Error::InvalidParameter(format!("bad stone `{other}`"))),
            })
            .collect::<Result<Vec<u16>>>()?;
        let count = |v| cells.iter().filter(|&&c| c == v).count();
        if cells.len() != 2 * self.k + 1 || count(EMPTY) != 1 || count(WHITE) != self.k {
            return Err(Error::InvalidParameter(format!(
                "expected {} white, {} black and one `_`",
                self.k, self.k
            )));
        }
        Ok(State::from(cells))
    }

    fn format_state(&self, state: &State) -> String {
        state
            .cells()
            .iter()
            .map(|&c| match c {
                WHITE => "W",
                BLACK => "B",
                _ => "_",
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{apply_sequence, SearchStats};

    #[test]
    fn slide_then_back_returns_to_goal() {
        let d = stones_domain(5).unwrap();
        let g = d.goal();
        let ops = [OperatorId(3), OperatorId(2)];
        let mut stats = SearchStats::default();
        assert_eq!(apply_sequence(&d, &ops, &g, &mut stats), Some(g.clone()));
        assert_eq!(d.heuristic(&g, &g), 0);
    }

    #[test]
    fn hop_over_two() {
        let d = stones_domain(2).unwrap();
        let mut s = d.parse_state("W W _ B B").unwrap();
        assert!(!d.apply_in_place(OperatorId(0), &mut s.clone()));
        assert!(d.apply_in_place(OperatorId(1), &mut s));
        assert_eq!(d.format_state(&s), "_ W W B B");
    }

    #[test]
    fn round_trip_format() {
        let d = stones_domain(3).unwrap();
        let s = d.parse_state("B W _ W B W B").unwrap();
        assert_eq!(d.parse_state(&d.format_state(&s)).unwrap(), s);
        assert!(d.parse_state("W W W").is_err());
    }
}
