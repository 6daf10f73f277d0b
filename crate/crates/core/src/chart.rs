use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{GeomError, Result};

/// A named coordinate chart `(x₁, …, xₙ)`.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Chart {
    name: String,
    coords: Vec<String>,
}

/// Charts are shared between every expression and tensor built on them.
pub type ChartRef = Arc<Chart>;

impl Chart {
    pub fn new(name: impl Into<String>, coords: &[&str]) -> Result<ChartRef> {
        Self::from_owned(name.into(), coords.iter().map(|c| c.to_string()).collect())
    }

    pub fn from_owned(name: String, coords: Vec<String>) -> Result<ChartRef> {
        if coords.is_empty() {
            return Err(GeomError::InvalidChart(format!("chart `{name}` has no coordinates")));
        }
        let mut seen = HashSet::new();
        for c in &coords {
            if !is_identifier(c) || c == "exp" {
                return Err(GeomError::InvalidChart(format!("`{c}` is not a valid coordinate name")));
            }
            if !seen.insert(c.as_str()) {
                return Err(GeomError::InvalidChart(format!("duplicate coordinate `{c}` in `{name}`")));
            }
        }
        Ok(Arc::new(Chart { name, coords }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &str {
        &self.coords[i]
    }

    pub fn index_of(&self, coord: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == coord)
    }

    /// Concatenates the coordinate lists of several charts. Names that would
    /// collide get the factor number appended (`x` becomes `x1`, `x2`, ...).
    pub fn product(name: impl Into<String>, factors: &[&Chart]) -> Result<ChartRef> {
        let mut counts = std::collections::HashMap::new();
        for f in factors {
            for c in &f.coords {
                *counts.entry(c.clone()).or_insert(0usize) += 1;
            }
        }
        let mut coords = Vec::new();
        for (k, f) in factors.iter().enumerate() {
            for c in &f.coords {
                if counts[c] > 1 {
                    coords.push(format!("{c}{}", k + 1));
                } else {
                    coords.push(c.clone());
                }
            }
        }
        Self::from_owned(name.into(), fresh_all(coords))
    }

    /// This chart with one extra trailing coordinate, renamed if `coord` is taken.
    pub fn extended(&self, name: impl Into<String>, coord: &str) -> Result<ChartRef> {
        let mut coords = self.coords.clone();
        coords.push(self.fresh_name(coord));
        Self::from_owned(name.into(), coords)
    }

    /// This chart with coordinate `i` removed.
    pub fn without(&self, name: impl Into<String>, i: usize) -> Result<ChartRef> {
        let mut coords = self.coords.clone();
        coords.remove(i);
        Self::from_owned(name.into(), coords)
    }

    /// `base` if unused in this chart, otherwise `base` with underscores appended.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut candidate = base.to_string();
        while self.coords.iter().any(|c| *c == candidate) {
            candidate.push('_');
        }
        candidate
    }
}

fn fresh_all(coords: Vec<String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(coords.len());
    for c in coords {
        let mut candidate = c;
        while out.contains(&candidate) {
            candidate.push('_');
        }
        out.push(candidate);
    }
    out
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.coords.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicate_coordinates() {
        assert!(Chart::new("bad", &["x", "x"]).is_err());
        assert!(Chart::new("bad", &[]).is_err());
        assert!(Chart::new("bad", &["exp"]).is_err());
    }

    #[test]
    fn product_renames_collisions() {
        let m = Chart::new("M", &["x", "y"]).unwrap();
        let r = Chart::new("R", &["t"]).unwrap();
        let p = Chart::product("MxMxR", &[&m, &m, &r]).unwrap();
        assert_eq!(p.coords(), &["x1", "y1", "x2", "y2", "t"]);
    }

    #[test]
    fn extension_avoids_taken_names() {
        let m = Chart::new("M", &["s", "x"]).unwrap();
        let e = m.extended("Ms", "s").unwrap();
        assert_eq!(e.coords(), &["s", "x", "s_"]);
    }
}
