//! Missionaries and cannibals with a two-seat boat.
//!
//! State cells: `[missionaries on start bank, cannibals on start bank, boat]`
//! with boat `0` on the start bank and `1` on the target bank. Each of the
//! five loads has one operator per crossing direction; a `>` operator is
//! only defined while the boat is on the start bank.
//!
//! Cannibals may not outnumber missionaries on a bank that has at least one
//! missionary.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::model::{Domain, OperatorId, State};

const NAMES: [&str; 10] = [
    "1m>", "2m>", "1c>", "2c>", "1m1c>", "1m<", "2m<", "1c<", "2c<", "1m1c<",
];
const LOADS: [(u16, u16); 5] = [(1, 0), (2, 0), (0, 1), (0, 2), (1, 1)];

#[derive(Debug, Clone)]
pub struct Cannibals {
    m: u16,
}

pub fn cannibals_domain(m: u32) -> Result<Cannibals> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("cannibals needs M >= 3, got {m}")));
    }
    if m > 10_000 {
        return Err(Error::InvalidParameter(format!("cannibals M {m} too large")));
    }
    Ok(Cannibals { m: m as u16 })
}

impl Cannibals {
    pub fn initial(&self) -> State {
        State::from(vec![self.m, self.m, 0])
    }

    fn safe(missionaries: u16, cannibals: u16) -> bool {
        missionaries == 0 || cannibals <= missionaries
    }
}

impl Domain for Cannibals {
    fn name(&self) -> &str {
        "cannibals"
    }

    fn parameter(&self) -> Option<u32> {
        Some(self.m as u32)
    }

    fn operator_names(&self) -> &[&'static str] {
        &NAMES
    }

    fn apply_in_place(&self, op: OperatorId, state: &mut State) -> bool {
        let i = op.index();
        let forward = i < 5;
        let (dm, dc) = LOADS[i % 5];
        let c = state.cells_mut();
        let (m, k, boat) = (c[0], c[1], c[2]);
        if (boat == 0) != forward {
            return false;
        }
        let (nm, nk) = if forward {
            if m < dm || k < dc {
                return false;
            }
            (m - dm, k - dc)
        } else {
            if self.m - m < dm || self.m - k < dc {
                return false;
            }
            (m + dm, k + dc)
        };
        if !Self::safe(nm, nk) || !Self::safe(self.m - nm, self.m - nk) {
            return false;
        }
        c[0] = nm;
        c[1] = nk;
        c[2] = 1 - boat;
        true
    }

    /// Persons still on the start bank. The unreachable "everyone across,
    /// boat left behind" state scores 1 to keep `h = 0` exact at the goal.
    fn heuristic(&self, state: &State, goal: &State) -> u64 {
        let c = state.cells();
        let h = (c[0] + c[1]) as u64;
        if h == 0 && state != goal {
            1
        } else {
            h
        }
    }

    fn generate_goal(&self, _rng: &mut dyn RngCore) -> State {
        State::from(vec![0, 0, 1])
    }

    fn reverse_of(&self, op: OperatorId) -> Option<OperatorId> {
        Some(OperatorId((op.0 + 5) % 10))
    }

    fn parse_state(&self, text: &str) -> Result<State> {
        let t: Vec<&str> = text.split_whitespace().collect();
        let [m, c, side] = t.as_slice() else {
            return Err(Error::InvalidParameter(format!("expected `m c side`, got `{text}`")));
        };
        let num = |s: &str| {
            s.parse::<u16>()
                .ok()
                .filter(|&v| v <= self.m)
                .ok_or_else(|| Error::InvalidParameter(format!("bad count `{s}`")))
        };
        let side = match *side {
            "0" | "L" | "start" => 0,
            "1" | "R" | "target" => 1,
            s => return Err(Error::InvalidParameter(format!("bad boat side `{s}`"))),
        };
        Ok(State::from(vec![num(m)?, num(c)?, side]))
    }

    fn format_state(&self, state: &State) -> String {
        let c = state.cells();
        format!("{} {} {}", c[0], c[1], if c[2] == 0 { "L" } else { "R" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outnumbering_move_is_undefined() {
        let d = cannibals_domain(5).unwrap();
        let s = State::from(vec![3, 3, 0]);
        // Start bank would hold 2m 3c.
        let mut t = s.clone();
        assert!(!d.apply_in_place(d.operator_by_name("1m>").unwrap(), &mut t));
        assert_eq!(t, s);
        // Target bank holds 2m 2c and would receive a third cannibal.
        assert!(!d.apply_in_place(d.operator_by_name("1c>").unwrap(), &mut t));
        assert!(d.apply_in_place(d.operator_by_name("1m1c>").unwrap(), &mut t));
        assert_eq!(t.cells(), &[2, 2, 1]);
    }

    #[test]
    fn wrong_direction_is_undefined() {
        let d = cannibals_domain(3).unwrap();
        let mut s = d.initial();
        assert!(!d.apply_in_place(d.operator_by_name("1c<").unwrap(), &mut s));
    }

    #[test]
    fn goal_is_zero() {
        let d = cannibals_domain(10).unwrap();
        let g = d.generate_goal(&mut rand::rngs::mock::StepRng::new(0, 1));
        assert_eq!(d.heuristic(&g, &g), 0);
        assert_eq!(d.heuristic(&State::from(vec![0, 0, 0]), &g), 1);
        assert_eq!(d.heuristic(&d.initial(), &g), 20);
    }

    #[test]
    fn rejects_small_m() {
        assert!(cannibals_domain(2).is_err());
    }
}
