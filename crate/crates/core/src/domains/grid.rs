//! A walled grid with Manhattan-distance guidance.
//!
//! State cells are `[x, y]`, 0-indexed with `y` growing southwards. Walls
//! are blocked cells. The random generator draws vertical walls, each a
//! column segment with one gap cell, so the agent must detour south or
//! north around them. Goals are random free cells.
//!
//! Wall files list one blocked cell per line as `x y`; `#` starts a comment.

use std::collections::VecDeque;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Domain, OperatorId, State};

const NAMES: [&str; 4] = ["N", "S", "E", "W"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WallSpec {
    None,
    /// Explicit blocked cells.
    Cells(Vec<(u16, u16)>),
    /// `count` random vertical walls drawn from `seed`. `None` picks one
    /// wall per 500 cells of area, at least one.
    Random { count: Option<usize>, seed: u64 },
}

impl WallSpec {
    pub fn parse_file(text: &str) -> Result<WallSpec> {
        let mut cells = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let xy: Vec<u16> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(i + 1, format!("bad coordinate `{t}`"))))
                .collect::<Result<_>>()?;
            let [x, y] = xy.as_slice() else {
                return Err(Error::parse(i + 1, "expected `x y`"));
            };
            cells.push((*x, *y));
        }
        Ok(WallSpec::Cells(cells))
    }
}

#[derive(Debug, Clone)]
pub struct Grid {
    width: usize,
    height: usize,
    blocked: Vec<bool>,
    goal: Option<(u16, u16)>,
}

pub fn grid_domain(
    width: usize,
    height: usize,
    walls: &WallSpec,
    goal: Option<(u16, u16)>,
) -> Result<Grid> {
    if width == 0 || height == 0 || width > u16::MAX as usize || height > u16::MAX as usize {
        return Err(Error::InvalidParameter(format!("bad grid size {width}x{height}")));
    }
    let blocked = match walls {
        WallSpec::None => vec![false; width * height],
        WallSpec::Cells(cells) => {
            let mut b = vec![false; width * height];
            for &(x, y) in cells {
                if x as usize >= width || y as usize >= height {
                    return Err(Error::InvalidParameter(format!("wall cell ({x}, {y}) off the grid")));
                }
                b[y as usize * width + x as usize] = true;
            }
            b
        }
        WallSpec::Random { count, seed } => {
            let count = count.unwrap_or_else(|| (width * height / 500).max(1));
            random_walls(width, height, count, *seed)
        }
    };
    let grid = Grid {
        width,
        height,
        blocked,
        goal,
    };
    if let Some((x, y)) = goal {
        if !grid.free(x as usize, y as usize) {
            return Err(Error::InvalidParameter(format!("goal ({x}, {y}) is blocked")));
        }
    }
    if !grid.connected() {
        return Err(Error::DisconnectedGrid);
    }
    Ok(grid)
}

/// Vertical walls on distinct columns, never on the outer columns or next
/// to another wall, each spanning at least half the height with one gap.
fn random_walls(width: usize, height: usize, count: usize, seed: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocked = vec![false; width * height];
    if width < 3 || height < 2 {
        return blocked;
    }
    let mut columns: Vec<usize> = Vec::new();
    let mut attempts = 0;
    while columns.len() < count && attempts < 100 * count {
        attempts += 1;
        let x = rng.gen_range(1..width - 1);
        if columns.iter().any(|&c| c.abs_diff(x) < 2) {
            continue;
        }
        columns.push(x);
        let len = rng.gen_range(height.div_ceil(2)..=height);
        let top = rng.gen_range(0..=height - len);
        let gap = rng.gen_range(top..top + len);
        for y in top..top + len {
            if y != gap {
                blocked[y * width + x] = true;
            }
        }
    }
    blocked
}

impl Grid {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn free(&self, x: usize, y: usize) -> bool {
        x < self.width && y < self.height && !self.blocked[y * self.width + x]
    }

    pub fn blocked_cells(&self) -> Vec<(u16, u16)> {
        (0..self.width * self.height)
            .filter(|&i| self.blocked[i])
            .map(|i| ((i % self.width) as u16, (i / self.width) as u16))
            .collect()
    }

    pub fn free_cells(&self) -> Vec<(u16, u16)> {
        (0..self.width * self.height)
            .filter(|&i| !self.blocked[i])
            .map(|i| ((i % self.width) as u16, (i / self.width) as u16))
            .collect()
    }

    pub fn wall_file_string(&self) -> String {
        self.blocked_cells()
            .iter()
            .map(|(x, y)| format!("{x} {y}\n"))
            .collect()
    }

    fn connected(&self) -> bool {
        let free = self.free_cells();
        let Some(&(sx, sy)) = free.first() else {
            return false;
        };
        let mut seen = vec![false; self.width * self.height];
        let mut queue = VecDeque::from([(sx as usize, sy as usize)]);
        seen[sy as usize * self.width + sx as usize] = true;
        let mut reached = 1;
        while let Some((x, y)) = queue.pop_front() {
            let neighbours = [
                (x, y.wrapping_sub(1)),
                (x, y + 1),
                (x + 1, y),
                (x.wrapping_sub(1), y),
            ];
            for (nx, ny) in neighbours {
                if self.free(nx, ny) && !seen[ny * self.width + nx] {
                    seen[ny * self.width + nx] = true;
                    reached += 1;
                    queue.push_back((nx, ny));
                }
            }
        }
        reached == free.len()
    }
}

impl Domain for Grid {
    fn name(&self) -> &str {
        "grid"
    }

    fn parameter(&self) -> Option<u32> {
        Some(self.width as u32)
    }

    fn operator_names(&self) -> &[&'static str] {
        &NAMES
    }

    fn apply_in_place(&self, op: OperatorId, state: &mut State) -> bool {
        let c = state.cells_mut();
        let (x, y) = (c[0] as usize, c[1] as usize);
        let (nx, ny) = match op.0 {
            0 => (x, y.wrapping_sub(1)),
            1 => (x, y + 1),
            2 => (x + 1, y),
            _ => (x.wrapping_sub(1), y),
        };
        if !self.free(nx, ny) {
            return false;
        }
        c[0] = nx as u16;
        c[1] = ny as u16;
        true
    }

    fn heuristic(&self, state: &State, goal: &State) -> u64 {
        let (s, g) = (state.cells(), goal.cells());
        (s[0].abs_diff(g[0]) + s[1].abs_diff(g[1])) as u64
    }

    fn generate_goal(&self, rng: &mut dyn RngCore) -> State {
        if let Some((x, y)) = self.goal {
            return State::from(vec![x, y]);
        }
        loop {
            let x = rng.gen_range(0..self.width);
            let y = rng.gen_range(0..self.height);
            if self.free(x, y) {
                return State::from(vec![x as u16, y as u16]);
            }
        }
    }

    fn reverse_of(&self, op: OperatorId) -> Option<OperatorId> {
        Some(OperatorId(op.0 ^ 1))
    }

    fn parse_state(&self, text: &str) -> Result<State> {
        let xy: Vec<u16> = text
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::InvalidParameter(format!("bad coordinate `{t}`"))))
            .collect::<Result<_>>()?;
        match xy.as_slice() {
            [x, y] if self.free(*x as usize, *y as usize) => Ok(State::from(xy)),
            [x, y] => Err(Error::InvalidParameter(format!("cell ({x}, {y}) is blocked or off the grid"))),
            _ => Err(Error::InvalidParameter(format!("expected `x y`, got `{text}`"))),
        }
    }

    fn format_state(&self, state: &State) -> String {
        format!("{} {}", state.cells()[0], state.cells()[1])
    }
}
