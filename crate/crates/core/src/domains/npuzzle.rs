//! The N×N sliding-tile puzzle.
//!
//! States are row-major tile sequences with `0` for the blank. Operators
//! name the direction the blank moves: `d` swaps the blank with the tile
//! below it and is undefined when the blank is in the last row.
//!
//! The placement heuristics (RR, row-by-row-2, reduction, spiral) all share
//! one lexicographic shape over a placement order of the goal cells:
//!
//! ```text
//! h = 4N²·((N²−1) − placed) + 2N·d(NextLoc, loc(NextTile)) + d(loc(blank), loc(NextTile))
//! ```
//!
//! where `placed` counts the leading cells of the order that already hold
//! their goal tile, `NextLoc` is the first cell of the order that does not,
//! and `NextTile` is the goal tile of that cell. `h` is 0 exactly at the
//! goal. Row-by-row-2 drops the last term. The orders, with the goal blank
//! cell (bottom right) always excluded:
//!
//! - row-major: left to right, top to bottom.
//! - reduction: the top remaining row, then the rightmost remaining column,
//!   alternating until the board is exhausted. For N = 4 the cells are
//!   `1 2 3 4 | 8 12 | 5 6 7 | 11 15 | 9 10 | 14 | 13` (goal tile numbers).
//! - spiral: clockwise from the top-left corner, outside in. For N = 4:
//!   `1 2 3 4 8 12 15 14 13 9 5 6 7 11 10`.

use rand::seq::SliceRandom;
use rand::RngCore;

use crate::error::{Error, Result};
use crate::model::{Domain, OperatorId, State};

pub const UP: OperatorId = OperatorId(0);
pub const DOWN: OperatorId = OperatorId(1);
pub const LEFT: OperatorId = OperatorId(2);
pub const RIGHT: OperatorId = OperatorId(3);

const NAMES: [&str; 4] = ["u", "d", "l", "r"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PuzzleHeuristic {
    /// Row-by-row placement with the blank-distance tie breaker.
    Rr,
    /// RR without the blank-distance component.
    RowByRow2,
    /// Sum of Manhattan distances.
    Md,
    Reduction,
    Spiral,
}

impl PuzzleHeuristic {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "rr" => PuzzleHeuristic::Rr,
            "row-by-row-2" | "rr2" => PuzzleHeuristic::RowByRow2,
            "md" => PuzzleHeuristic::Md,
            "reduction" => PuzzleHeuristic::Reduction,
            "spiral" => PuzzleHeuristic::Spiral,
            other => return Err(Error::InvalidParameter(format!("unknown heuristic `{other}`"))),
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PuzzleHeuristic::Rr => "rr",
            PuzzleHeuristic::RowByRow2 => "row-by-row-2",
            PuzzleHeuristic::Md => "md",
            PuzzleHeuristic::Reduction => "reduction",
            PuzzleHeuristic::Spiral => "spiral",
        }
    }
}

/// 1-indexed board coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coords {
    pub row: usize,
    pub col: usize,
}

impl Coords {
    pub fn distance(self, other: Coords) -> usize {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }
}

/// The three placement-heuristic components for a non-goal state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlacementTerms {
    pub placed: usize,
    pub next_tile: u16,
    pub next_loc: Coords,
    pub next_tile_loc: Coords,
    pub blank_loc: Coords,
}

#[derive(Debug, Clone)]
pub struct NPuzzle {
    n: usize,
    heuristic: PuzzleHeuristic,
    random_goal: bool,
    order: Vec<usize>,
}

/// Builds the N×N puzzle with the selected heuristic.
pub fn npuzzle_domain(n: usize, heuristic: PuzzleHeuristic) -> Result<NPuzzle> {
    NPuzzle::new(n, heuristic)
}

impl NPuzzle {
    pub fn new(n: usize, heuristic: PuzzleHeuristic) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("puzzle side must be >= 3, got {n}")));
        }
        if n * n > u16::MAX as usize {
            return Err(Error::InvalidParameter(format!("puzzle side {n} too large")));
        }
        let order = match heuristic {
            PuzzleHeuristic::Reduction => reduction_order(n),
            PuzzleHeuristic::Spiral => spiral_order(n),
            _ => (0..n * n - 1).collect(),
        };
        Ok(NPuzzle {
            n,
            heuristic,
            random_goal: false,
            order,
        })
    }

    /// Draw goals as random tile permutations (blank still last) instead of
    /// the canonical ordered goal.
    pub fn with_random_goal(mut self, random_goal: bool) -> Self {
        self.random_goal = random_goal;
        self
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn heuristic_kind(&self) -> PuzzleHeuristic {
        self.heuristic
    }

    /// Placement order as 0-based row-major cell indices.
    pub fn placement_order(&self) -> &[usize] {
        &self.order
    }

    /// Tiles 1..N²−1 in row-major order, blank last.
    pub fn canonical_goal(&self) -> State {
        canonical_goal(self.n)
    }

    pub fn coords(&self, cell: usize) -> Coords {
        Coords {
            row: cell / self.n + 1,
            col: cell % self.n + 1,
        }
    }

    pub fn loc(&self, state: &State, tile: u16) -> Coords {
        let cell = state
            .cells()
            .iter()
            .position(|&t| t == tile)
            .expect("tile present in state");
        self.coords(cell)
    }

    pub fn placed(&self, state: &State, goal: &State) -> usize {
        let (s, g) = (state.cells(), goal.cells());
        self.order.iter().take_while(|&&c| s[c] == g[c]).count()
    }

    /// `None` at the goal.
    pub fn placement_terms(&self, state: &State, goal: &State) -> Option<PlacementTerms> {
        let placed = self.placed(state, goal);
        if placed == self.order.len() {
            return None;
        }
        let next_cell = self.order[placed];
        let next_tile = goal.cells()[next_cell];
        let mut tile_cell = 0;
        let mut blank_cell = 0;
        for (i, &t) in state.cells().iter().enumerate() {
            if t == next_tile {
                tile_cell = i;
            }
            if t == 0 {
                blank_cell = i;
            }
        }
        Some(PlacementTerms {
            placed,
            next_tile,
            next_loc: self.coords(next_cell),
            next_tile_loc: self.coords(tile_cell),
            blank_loc: self.coords(blank_cell),
        })
    }

    fn placement_value(&self, state: &State, goal: &State, with_blank_term: bool) -> u64 {
        if state == goal {
            return 0;
        }
        let Some(t) = self.placement_terms(state, goal) else {
            return 0;
        };
        let n = self.n as u64;
        let remaining = (self.n * self.n - 1 - t.placed) as u64;
        let mut h = 4 * n * n * remaining + 2 * n * t.next_loc.distance(t.next_tile_loc) as u64;
        if with_blank_term {
            h += t.blank_loc.distance(t.next_tile_loc) as u64;
        }
        h
    }

    pub fn manhattan_sum(&self, state: &State, goal: &State) -> u64 {
        manhattan_sum(self.n, state, goal)
    }

    /// Largest value any placement heuristic can take on this board.
    pub fn max_placement_value(&self) -> u64 {
        let n = self.n as u64;
        4 * n * n * (n * n - 1) + 2 * n * 2 * (n - 1) + 2 * (n - 1)
    }

    pub fn solvable(&self, state: &State, goal: &State) -> bool {
        npuzzle_solvable(self.n, state, goal)
    }
}

impl Domain for NPuzzle {
    fn name(&self) -> &str {
        "npuzzle"
    }

    fn parameter(&self) -> Option<u32> {
        Some(self.n as u32)
    }

    fn operator_names(&self) -> &[&'static str] {
        &NAMES
    }

    fn apply_in_place(&self, op: OperatorId, state: &mut State) -> bool {
        let n = self.n;
        let cells = state.cells_mut();
        let b = cells.iter().position(|&t| t == 0).expect("state has a blank");
        let (row, col) = (b / n, b % n);
        let target = match op {
            UP if row > 0 => b - n,
            DOWN if row + 1 < n => b + n,
            LEFT if col > 0 => b - 1,
            RIGHT if col + 1 < n => b + 1,
            _ => return false,
        };
        cells.swap(b, target);
        true
    }

    fn heuristic(&self, state: &State, goal: &State) -> u64 {
        match self.heuristic {
            PuzzleHeuristic::Md => manhattan_sum(self.n, state, goal),
            PuzzleHeuristic::RowByRow2 => self.placement_value(state, goal, false),
            _ => self.placement_value(state, goal, true),
        }
    }

    fn generate_goal(&self, rng: &mut dyn RngCore) -> State {
        if !self.random_goal {
            return self.canonical_goal();
        }
        let mut tiles: Vec<u16> = (1..(self.n * self.n) as u16).collect();
        tiles.shuffle(rng);
        tiles.push(0);
        State::from(tiles)
    }

    fn reverse_of(&self, op: OperatorId) -> Option<OperatorId> {
        Some(match op {
            UP => DOWN,
            DOWN => UP,
            LEFT => RIGHT,
            _ => LEFT,
        })
    }

    fn random_solvable(&self, goal: &State, rng: &mut dyn RngCore) -> Option<State> {
        Some(npuzzle_random_solvable(self.n, goal, rng))
    }

    fn parse_state(&self, text: &str) -> Result<State> {
        parse_tiles(self.n, text)
    }

    fn format_state(&self, state: &State) -> String {
        state
            .cells()
            .iter()
            .map(u16::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn canonical_goal(n: usize) -> State {
    let mut tiles: Vec<u16> = (1..(n * n) as u16).collect();
    tiles.push(0);
    State::from(tiles)
}

/// Parses `n²` tiles; `_` stands for the blank and `[t]` marks are ignored.
pub fn parse_tiles(n: usize, text: &str) -> Result<State> {
    let tiles = text
        .split(|c: char| c.is_whitespace() || c == '/' || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            let t = t.trim_start_matches('[').trim_end_matches(']');
            if t == "_" {
                Ok(0)
            } else {
                t.parse::<u16>()
                    .map_err(|_| Error::InvalidParameter(format!("bad tile `{t}`")))
            }
        })
        .collect::<Result<Vec<u16>>>()?;
    if tiles.len() != n * n {
        return Err(Error::InvalidParameter(format!(
            "expected {} tiles, got {}",
            n * n,
            tiles.len()
        )));
    }
    let mut seen = vec![false; n * n];
    for &t in &tiles {
        let t = t as usize;
        if t >= n * n || std::mem::replace(&mut seen[t], true) {
            return Err(Error::InvalidParameter(format!(
                "tiles are not a permutation of 0..{}",
                n * n - 1
            )));
        }
    }
    Ok(State::from(tiles))
}

pub fn manhattan_sum(n: usize, state: &State, goal: &State) -> u64 {
    let mut goal_pos = vec![0usize; n * n];
    for (i, &t) in goal.cells().iter().enumerate() {
        goal_pos[t as usize] = i;
    }
    state
        .cells()
        .iter()
        .enumerate()
        .filter(|(_, &t)| t != 0)
        .map(|(i, &t)| {
            let g = goal_pos[t as usize];
            ((i / n).abs_diff(g / n) + (i % n).abs_diff(g % n)) as u64
        })
        .sum()
}

/// Whether `state` is reachable from `goal`: the permutation taking one to
/// the other (blank included) must have the parity of the blank's
/// Manhattan displacement.
pub fn npuzzle_solvable(n: usize, state: &State, goal: &State) -> bool {
    let cells = n * n;
    let mut goal_pos = vec![0usize; cells];
    for (i, &t) in goal.cells().iter().enumerate() {
        goal_pos[t as usize] = i;
    }
    let perm: Vec<usize> = state.cells().iter().map(|&t| goal_pos[t as usize]).collect();
    let mut visited = vec![false; cells];
    let mut transpositions = 0;
    for start in 0..cells {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = perm[i];
            len += 1;
        }
        transpositions += len - 1;
    }
    let blank = state.cells().iter().position(|&t| t == 0).unwrap_or(0);
    let blank_goal = goal_pos[0];
    let displacement = (blank / n).abs_diff(blank_goal / n) + (blank % n).abs_diff(blank_goal % n);
    transpositions % 2 == displacement % 2
}

/// Uniform over states solvable to `goal`: shuffles until the parity test
/// accepts, which takes two draws on average.
pub fn npuzzle_random_solvable(n: usize, goal: &State, rng: &mut dyn RngCore) -> State {
    let mut tiles = goal.cells().to_vec();
    loop {
        tiles.shuffle(rng);
        let s = State::from(tiles.clone());
        if npuzzle_solvable(n, &s, goal) {
            return s;
        }
    }
}

fn reduction_order(n: usize) -> Vec<usize> {
    let blank = n * n - 1;
    let mut order = Vec::with_capacity(n * n - 1);
    let (mut top, mut right) = (0, n - 1);
    loop {
        if top < n {
            order.extend((0..=right).map(|c| top * n + c));
            top += 1;
        }
        if top < n {
            order.extend((top..n).map(|r| r * n + right));
        }
        if right == 0 || top >= n {
            break;
        }
        right -= 1;
    }
    order.retain(|&c| c != blank);
    dedup_in_order(order)
}

fn spiral_order(n: usize) -> Vec<usize> {
    let blank = n * n - 1;
    let mut order = Vec::with_capacity(n * n);
    let (mut top, mut bottom, mut left, mut right) = (0i64, n as i64 - 1, 0i64, n as i64 - 1);
    while top <= bottom && left <= right {
        for c in left..=right {
            order.push((top * n as i64 + c) as usize);
        }
        for r in top + 1..=bottom {
            order.push((r * n as i64 + right) as usize);
        }
        if top < bottom {
            for c in (left..right).rev() {
                order.push((bottom * n as i64 + c) as usize);
            }
        }
        if left < right {
            for r in (top + 1..bottom).rev() {
                order.push((r * n as i64 + left) as usize);
            }
        }
        top += 1;
        bottom -= 1;
        left += 1;
        right -= 1;
    }
    order.retain(|&c| c != blank);
    dedup_in_order(order)
}

fn dedup_in_order(order: Vec<usize>) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    order.into_iter().filter(|c| seen.insert(*c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{apply_operator, SearchStats};

    fn rows(text: &str) -> State {
        let n = (text.split_whitespace().count() as f64).sqrt() as usize;
        parse_tiles(n, text).unwrap()
    }

    fn goal_numbers(p: &NPuzzle) -> Vec<u16> {
        let g = p.canonical_goal();
        p.placement_order().iter().map(|&c| g.cells()[c]).collect()
    }

    #[test]
    fn worked_example_rr_components() {
        let p = NPuzzle::new(5, PuzzleHeuristic::Rr).unwrap();
        let s = rows("1 2 3 4 5 6 7 8 19 16 14 _ 17 18 15 20 24 13 22 21 23 9 10 11 12");
        let g = p.canonical_goal();
        let t = p.placement_terms(&s, &g).unwrap();
        assert_eq!(t.placed, 8);
        assert_eq!(t.next_tile, 9);
        assert_eq!(24 - t.placed, 16);
        assert_eq!(t.next_loc.distance(t.next_tile_loc), 5);
        assert_eq!(t.blank_loc.distance(t.next_tile_loc), 2);
        assert_eq!(p.heuristic(&s, &g), 4 * 25 * 16 + 2 * 5 * 5 + 2);
        assert_eq!(p.heuristic(&s, &g), 1652);
    }

    #[test]
    fn goal_has_zero_heuristic() {
        for h in [
            PuzzleHeuristic::Rr,
            PuzzleHeuristic::RowByRow2,
            PuzzleHeuristic::Md,
            PuzzleHeuristic::Reduction,
            PuzzleHeuristic::Spiral,
        ] {
            let p = NPuzzle::new(4, h).unwrap();
            let g = p.canonical_goal();
            assert_eq!(p.heuristic(&g, &g), 0, "{h:?}");
        }
    }

    #[test]
    fn down_swaps_blank_with_tile_below() {
        let p = NPuzzle::new(5, PuzzleHeuristic::Rr).unwrap();
        let before = rows("1 2 3 4 5 6 7 8 10 18 20 19 17 _ 14 11 12 15 9 16 23 22 13 24 21");
        let after = rows("1 2 3 4 5 6 7 8 10 18 20 19 17 9 14 11 12 15 _ 16 23 22 13 24 21");
        let mut stats = SearchStats::default();
        assert_eq!(apply_operator(&p, DOWN, &before, &mut stats), Some(after));
        assert_eq!(stats.operator_applications, 1);
    }

    #[test]
    fn down_is_undefined_in_last_row_and_still_counted() {
        let p = NPuzzle::new(3, PuzzleHeuristic::Rr).unwrap();
        let g = p.canonical_goal();
        let mut stats = SearchStats::default();
        assert_eq!(apply_operator(&p, DOWN, &g, &mut stats), None);
        assert_eq!(apply_operator(&p, RIGHT, &g, &mut stats), None);
        assert_eq!(stats.operator_applications, 2);
    }

    #[test]
    fn placement_orders() {
        let red = NPuzzle::new(4, PuzzleHeuristic::Reduction).unwrap();
        assert_eq!(
            goal_numbers(&red),
            vec![1, 2, 3, 4, 8, 12, 5, 6, 7, 11, 15, 9, 10, 14, 13]
        );
        let spiral = NPuzzle::new(4, PuzzleHeuristic::Spiral).unwrap();
        assert_eq!(
            goal_numbers(&spiral),
            vec![1, 2, 3, 4, 8, 12, 15, 14, 13, 9, 5, 6, 7, 11, 10]
        );
        for n in 3..9 {
            for h in [PuzzleHeuristic::Reduction, PuzzleHeuristic::Spiral] {
                let p = NPuzzle::new(n, h).unwrap();
                let mut cells = p.placement_order().to_vec();
                cells.sort_unstable();
                assert_eq!(cells, (0..n * n - 1).collect::<Vec<_>>(), "{h:?} n={n}");
            }
        }
    }

    #[test]
    fn rejects_small_boards() {
        assert!(matches!(
            NPuzzle::new(2, PuzzleHeuristic::Rr),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn transposed_last_tiles_are_unsolvable() {
        let g = canonical_goal(5);
        let s = rows("1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19 20 21 22 24 23 _");
        assert!(npuzzle_solvable(5, &g, &g));
        assert!(!npuzzle_solvable(5, &s, &g));
    }

    #[test]
    fn parse_rejects_non_permutations() {
        assert!(parse_tiles(3, "1 2 3 4 5 6 7 8 8").is_err());
        assert!(parse_tiles(3, "1 2 3").is_err());
        assert_eq!(
            parse_tiles(3, "1 2 3 / 4 [5] 6 / 7 8 _").unwrap(),
            canonical_goal(3)
        );
    }

    #[test]
    fn random_goal_keeps_blank_last() {
        use rand::SeedableRng;
        let p = NPuzzle::new(4, PuzzleHeuristic::Rr)
            .unwrap()
            .with_random_goal(true);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = p.generate_goal(&mut rng);
        assert_eq!(*g.cells().last().unwrap(), 0);
        assert_eq!(p.heuristic(&g, &g), 0);
    }
}
