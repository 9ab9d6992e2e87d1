//! Escape vectors for the 5×5 puzzle: (before, macro, after) triples plus
//! one unsolvable state, stored in `data/table_vectors.txt`.

use crate::domains::npuzzle::parse_tiles;
use crate::domains::{npuzzle_domain, npuzzle_solvable, PuzzleHeuristic};
use crate::error::{Error, Result};
use crate::model::{apply_macro, macro_from_names, Domain, SearchStats, State};

pub const TABLE_VECTORS: &str = include_str!("../../data/table_vectors.txt");

const SIDE: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableVector {
    pub table: u8,
    pub macro_text: String,
    pub before: State,
    pub after: State,
    /// The tile marked `[t]` in the before state.
    pub marked_tile: Option<u16>,
    /// The printed row does not reproduce; it is reported, not asserted.
    pub uncertain: bool,
    /// A one-edit variant of the macro that does reproduce the row.
    pub repair: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VectorEntry {
    Escape(TableVector),
    Unsolvable { table: u8, state: State },
}

fn state_line(lines: &[(usize, &str)], i: usize, key: &str) -> Result<(State, Option<u16>)> {
    let &(n, line) = lines
        .get(i)
        .ok_or_else(|| Error::parse(0, format!("missing `{key}` line")))?;
    let rest = line
        .strip_prefix(key)
        .ok_or_else(|| Error::parse(n, format!("expected `{key}`")))?;
    let state = parse_tiles(SIDE, rest).map_err(|e| Error::parse(n, e.to_string()))?;
    let marked = rest
        .split_whitespace()
        .find(|t| t.starts_with('['))
        .and_then(|t| t.trim_matches(|c| c == '[' || c == ']').parse().ok());
    Ok((state, marked))
}

pub fn parse_vectors(text: &str) -> Result<Vec<VectorEntry>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let (n, header) = lines[i];
        let fields: Vec<&str> = header.split_whitespace().collect();
        let table = |s: &str| {
            s.parse::<u8>()
                .map_err(|_| Error::parse(n, format!("bad table number `{s}`")))
        };
        match fields.as_slice() {
            ["unsolvable", t] => {
                let (state, _) = state_line(&lines, i + 1, "state")?;
                out.push(VectorEntry::Unsolvable {
                    table: table(t)?,
                    state,
                });
                i += 2;
            }
            ["vector", t, m, flags @ ..] => {
                let (before, marked_tile) = state_line(&lines, i + 1, "before")?;
                let (after, _) = state_line(&lines, i + 2, "after")?;
                let mut v = TableVector {
                    table: table(t)?,
                    macro_text: m.to_string(),
                    before,
                    after,
                    marked_tile,
                    uncertain: false,
                    repair: None,
                };
                for f in flags {
                    match f.split_once('=') {
                        None if *f == "uncertain" => v.uncertain = true,
                        Some(("repair", r)) => v.repair = Some(r.to_string()),
                        _ => return Err(Error::parse(n, format!("unknown flag `{f}`"))),
                    }
                }
                out.push(VectorEntry::Escape(v));
                i += 3;
            }
            _ => return Err(Error::parse(n, format!("unexpected line `{header}`"))),
        }
    }
    Ok(out)
}

pub fn table_vectors() -> Vec<VectorEntry> {
    parse_vectors(TABLE_VECTORS).expect("embedded vectors parse")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorOutcome {
    pub label: String,
    pub uncertain: bool,
    /// Applying the macro to the before state yields the after state.
    pub reproduces: bool,
    /// RR(after) < RR(before).
    pub lowers_rr: bool,
    /// The marked tile is RR's next tile in the before state.
    pub marks_next_tile: bool,
    pub repair_reproduces: Option<bool>,
    /// For the unsolvable entry: whether the parity test rejects it.
    pub rejected_as_unsolvable: Option<bool>,
}

impl VectorOutcome {
    /// Whether this entry counts as a hard failure.
    pub fn failed(&self) -> bool {
        if let Some(rejected) = self.rejected_as_unsolvable {
            return !rejected;
        }
        !self.uncertain && !(self.reproduces && self.lowers_rr && self.marks_next_tile)
    }
}

pub fn run_table_vectors() -> Vec<VectorOutcome> {
    let domain = npuzzle_domain(SIDE, PuzzleHeuristic::Rr).expect("5x5 puzzle");
    let goal = domain.canonical_goal();
    let mut stats = SearchStats::default();
    let mut replay = |text: &str, s: &State| {
        let m = macro_from_names(&domain, text).expect("vector macros parse");
        apply_macro(&domain, &m, s, &mut stats)
    };
    table_vectors()
        .into_iter()
        .map(|entry| match entry {
            VectorEntry::Unsolvable { table, state } => VectorOutcome {
                label: format!("table{table}:unsolvable"),
                uncertain: false,
                reproduces: false,
                lowers_rr: false,
                marks_next_tile: true,
                repair_reproduces: None,
                rejected_as_unsolvable: Some(!npuzzle_solvable(SIDE, &state, &goal)),
            },
            VectorEntry::Escape(v) => {
                let got = replay(&v.macro_text, &v.before);
                let next_tile = domain.placement_terms(&v.before, &goal).map(|t| t.next_tile);
                VectorOutcome {
                    label: format!("table{}:{}", v.table, v.macro_text),
                    uncertain: v.uncertain,
                    reproduces: got.as_ref() == Some(&v.after),
                    lowers_rr: domain.heuristic(&v.after, &goal) < domain.heuristic(&v.before, &goal),
                    marks_next_tile: v.marked_tile.is_none() || v.marked_tile == next_tile,
                    repair_reproduces: v
                        .repair
                        .as_deref()
                        .map(|r| replay(r, &v.before).as_ref() == Some(&v.after)),
                    rejected_as_unsolvable: None,
                }
            }
        })
        .collect()
}
