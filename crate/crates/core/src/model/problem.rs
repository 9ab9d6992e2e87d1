use super::{Domain, State};
use crate::error::{Error, Result};

/// An (initial state, goal state) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub initial: State,
    pub goal: State,
}

impl Problem {
    pub fn new(initial: State, goal: State) -> Self {
        Problem { initial, goal }
    }

    /// Problem file: `domain <name> param <k>`, then the initial and goal
    /// states in the domain's token format.
    pub fn to_file_string<D: Domain + ?Sized>(&self, domain: &D) -> String {
        let param = domain
            .parameter()
            .map_or_else(|| "-".to_string(), |p| p.to_string());
        format!(
            "domain {} param {}\n{}\n{}\n",
            domain.name(),
            param,
            domain.format_state(&self.initial),
            domain.format_state(&self.goal)
        )
    }

    /// Reads the `domain <name> param <k>` header line.
    pub fn parse_header(text: &str) -> Result<(String, Option<u32>)> {
        let header = text
            .lines()
            .next()
            .ok_or_else(|| Error::parse(1, "empty problem file"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        match fields.as_slice() {
            ["domain", name, "param", "-"] => Ok((name.to_string(), None)),
            ["domain", name, "param", p] => {
                let p = p
                    .parse()
                    .map_err(|_| Error::parse(1, format!("bad parameter `{p}`")))?;
                Ok((name.to_string(), Some(p)))
            }
            _ => Err(Error::parse(1, "expected `domain <name> param <k>`")),
        }
    }

    pub fn parse_file<D: Domain + ?Sized>(domain: &D, text: &str) -> Result<Problem> {
        let (name, param) = Self::parse_header(text)?;
        if name != domain.name() {
            return Err(Error::parse(
                1,
                format!("problem is for domain `{name}`, not `{}`", domain.name()),
            ));
        }
        if param != domain.parameter() {
            return Err(Error::parse(1, "domain parameter mismatch"));
        }
        let lines: Vec<&str> = text.lines().collect();
        let state_line = |i: usize| -> Result<State> {
            let line = lines
                .get(i)
                .ok_or_else(|| Error::parse(i + 1, "missing state line"))?;
            domain
                .parse_state(line)
                .map_err(|e| Error::parse(i + 1, e.to_string()))
        };
        Ok(Problem::new(state_line(1)?, state_line(2)?))
    }
}
