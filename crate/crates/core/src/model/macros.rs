use std::collections::HashSet;

use super::{Domain, OperatorId, State};
use crate::error::{Error, Result};

/// Where and why a macro was acquired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    /// Index of the training problem within its learning session.
    pub problem_index: usize,
    /// Domain parameter in force at acquisition (parametric learning).
    pub parameter: Option<u32>,
    /// The local minimum the route escaped from, and the problem's goal.
    pub state: State,
    pub goal: State,
    pub h_before: u64,
    pub h_after: u64,
}

/// An ordered sequence of basic operators applied as one unit.
#[derive(Debug, Clone)]
pub struct Macro {
    ops: Vec<OperatorId>,
    pub acquired_at: Option<Provenance>,
}

impl Macro {
    /// Panics on an empty sequence; macros have length at least one.
    pub fn new(ops: Vec<OperatorId>) -> Self {
        assert!(!ops.is_empty(), "a macro needs at least one operator");
        Macro {
            ops,
            acquired_at: None,
        }
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.acquired_at = Some(provenance);
        self
    }

    pub fn ops(&self) -> &[OperatorId] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Macros compare by operator sequence only.
impl PartialEq for Macro {
    fn eq(&self, other: &Self) -> bool {
        self.ops == other.ops
    }
}

impl Eq for Macro {}

/// Parses whitespace-separated operator names, or an unseparated character
/// string when every operator name in the domain is a single character.
pub fn macro_from_names<D: Domain + ?Sized>(domain: &D, text: &str) -> Result<Macro> {
    let text = text.trim();
    let tokens: Vec<String> = if text.split_whitespace().count() > 1 || !domain.single_char_names()
    {
        text.split_whitespace().map(str::to_owned).collect()
    } else {
        text.chars().map(String::from).collect()
    };
    if tokens.is_empty() {
        return Err(Error::UnknownOperatorName(String::new()));
    }
    let ops = tokens
        .iter()
        .map(|t| {
            domain
                .operator_by_name(t)
                .ok_or_else(|| Error::UnknownOperatorName(t.clone()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Macro::new(ops))
}

/// Renders a macro the way [`macro_from_names`] reads it back.
pub fn format_macro<D: Domain + ?Sized>(domain: &D, ops: &[OperatorId]) -> String {
    let names = ops.iter().map(|&op| domain.operator_name(op));
    if domain.single_char_names() {
        names.collect()
    } else {
        names.collect::<Vec<_>>().join(" ")
    }
}

/// Duplicate-free macros in acquisition order.
#[derive(Debug, Clone, Default)]
pub struct MacroSet {
    macros: Vec<Macro>,
    seen: HashSet<Vec<OperatorId>>,
}

impl MacroSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `m` unless a macro with the same operator sequence is present.
    pub fn insert(&mut self, m: Macro) -> bool {
        if !self.seen.insert(m.ops.clone()) {
            return false;
        }
        self.macros.push(m);
        true
    }

    pub fn contains(&self, ops: &[OperatorId]) -> bool {
        self.seen.contains(ops)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Macro> {
        self.macros.iter()
    }

    pub fn len(&self) -> usize {
        self.macros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.macros.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Macro> {
        self.macros.get(i)
    }

    /// Sum of macro lengths.
    pub fn total_length(&self) -> usize {
        self.macros.iter().map(Macro::len).sum()
    }

    pub fn mean_length(&self) -> f64 {
        if self.macros.is_empty() {
            0.0
        } else {
            self.total_length() as f64 / self.macros.len() as f64
        }
    }

    pub fn max_length(&self) -> usize {
        self.macros.iter().map(Macro::len).max().unwrap_or(0)
    }

    /// Union in acquisition order: `self` first, then new members of `other`.
    pub fn union(&self, other: &MacroSet) -> MacroSet {
        let mut out = self.clone();
        for m in other.iter() {
            out.insert(m.clone());
        }
        out
    }

    pub fn from_names<D: Domain + ?Sized>(domain: &D, names: &[&str]) -> Result<MacroSet> {
        let mut set = MacroSet::new();
        for n in names {
            set.insert(macro_from_names(domain, n)?);
        }
        Ok(set)
    }

    /// Macro file: a `# domain <name> param <k>` header, then one macro per
    /// line.
    pub fn to_file_string<D: Domain + ?Sized>(&self, domain: &D) -> String {
        let param = domain
            .parameter()
            .map_or_else(|| "-".to_string(), |p| p.to_string());
        let mut out = format!("# domain {} param {}\n", domain.name(), param);
        for m in &self.macros {
            out.push_str(&format_macro(domain, m.ops()));
            out.push('\n');
        }
        out
    }

    /// Parses a macro file. The header's domain name must match `domain`;
    /// its parameter may differ, since macros transfer across parameters.
    pub fn parse_file<D: Domain + ?Sized>(domain: &D, text: &str) -> Result<MacroSet> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty macro file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        match fields.as_slice() {
            ["#", "domain", name, "param", _] if *name == domain.name() => {}
            ["#", "domain", name, "param", _] => {
                return Err(Error::parse(
                    1,
                    format!("macro file is for domain `{name}`, not `{}`", domain.name()),
                ))
            }
            _ => return Err(Error::parse(1, "expected `# domain <name> param <k>`")),
        }
        let mut set = MacroSet::new();
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let m = macro_from_names(domain, line).map_err(|e| Error::parse(i + 1, e.to_string()))?;
            set.insert(m);
        }
        Ok(set)
    }
}

impl<'a> IntoIterator for &'a MacroSet {
    type Item = &'a Macro;
    type IntoIter = std::slice::Iter<'a, Macro>;

    fn into_iter(self) -> Self::IntoIter {
        self.macros.iter()
    }
}
