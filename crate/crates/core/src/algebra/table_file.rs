//! Line-based text format for multiplication tables.
//!
//! ```text
//! elements: e g
//! identity: e
//! e g
//! g e
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use super::{AlgebraError, FiniteSemigroup};

impl FromStr for FiniteSemigroup {
    type Err = AlgebraError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));

        let header = lines
            .next()
            .ok_or_else(|| AlgebraError::Parse("missing `elements:` line".into()))?;
        let names: Vec<String> = header
            .strip_prefix("elements:")
            .ok_or_else(|| AlgebraError::Parse(format!("expected `elements:`, got {header:?}")))?
            .split_whitespace()
            .map(String::from)
            .collect();
        if names.is_empty() {
            return Err(AlgebraError::Empty);
        }
        let lookup = |name: &str| {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| AlgebraError::UnknownName(name.to_string()))
        };

        let mut identity = None;
        let mut rows: Vec<&str> = Vec::with_capacity(names.len());
        for line in lines {
            if let Some(rest) = line.strip_prefix("identity:") {
                if !rows.is_empty() || identity.is_some() {
                    return Err(AlgebraError::Parse(
                        "`identity:` must come right after `elements:`".into(),
                    ));
                }
                identity = Some(lookup(rest.trim())?);
            } else {
                rows.push(line);
            }
        }
        if rows.len() != names.len() {
            return Err(AlgebraError::Parse(format!(
                "expected {} table rows, found {}",
                names.len(),
                rows.len()
            )));
        }

        let mut table = Vec::with_capacity(names.len() * names.len());
        for (row, line) in rows.iter().enumerate() {
            let cells: Vec<&str> = line.split_whitespace().collect();
            if cells.len() != names.len() {
                return Err(AlgebraError::RowShape {
                    row: row + 1,
                    expected: names.len(),
                    found: cells.len(),
                });
            }
            for cell in cells {
                table.push(lookup(cell)?);
            }
        }
        FiniteSemigroup::new(names, table, identity)
    }
}

impl FiniteSemigroup {
    /// Serializes to the text format accepted by `str::parse`.
    pub fn to_table_text(&self) -> String {
        let mut out = format!("elements: {}\n", self.names().join(" "));
        if let Some(e) = self.identity() {
            let _ = writeln!(out, "identity: {}", self.name(e));
        }
        for a in 0..self.size() {
            let row: Vec<&str> = (0..self.size()).map(|b| self.name(self.mul(a, b))).collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }
}
