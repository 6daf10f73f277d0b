//! Check reports: one verdict per residual, plus recorded assumptions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::GeomError;
use crate::expr::{Expr, SampleConfig, Verdict};
use crate::tensor::{Alt, Kind, Pair};

#[derive(Clone, Debug, PartialEq)]
pub enum ItemVerdict {
    SymbolicZero,
    SampledZero,
    /// A numeric condition (nonvanishing, rank, quadrature bound) held at every sample.
    SampledPass,
    Fail { witness: Option<Vec<f64>>, value: f64 },
    Error(String),
}

impl ItemVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ItemVerdict::SymbolicZero | ItemVerdict::SampledZero | ItemVerdict::SampledPass)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckItem {
    pub label: String,
    pub verdict: ItemVerdict,
    pub residual: f64,
    pub detail: Option<String>,
}

/// Overall verdict of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overall {
    SymbolicZero,
    SampledZero,
    Fail,
    Error,
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Overall::SymbolicZero => "SymbolicZero",
            Overall::SampledZero => "SampledZero",
            Overall::Fail => "Fail",
            Overall::Error => "Error",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub name: String,
    pub items: Vec<CheckItem>,
    pub assumptions: BTreeSet<String>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Report {
        Report { name: name.into(), items: vec![], assumptions: BTreeSet::new(), notes: vec![] }
    }

    pub fn assume(&mut self, s: impl Into<String>) {
        self.assumptions.insert(s.into());
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    /// Zero test of a scalar residual.
    pub fn zero(&mut self, label: impl Into<String>, e: &Expr, cfg: &SampleConfig) -> bool {
        let t = e.zero_test(cfg);
        self.assumptions.extend(t.assumptions.iter().cloned());
        let (verdict, detail) = match &t.verdict {
            Verdict::SymbolicZero => (ItemVerdict::SymbolicZero, None),
            Verdict::SampledZero => (ItemVerdict::SampledZero, Some(format!("canonical form `{e}` vanishes at samples only"))),
            Verdict::NonZero { witness, value } => (
                ItemVerdict::Fail { witness: (!witness.is_empty()).then(|| witness.clone()), value: *value },
                Some(format!("residual {e}")),
            ),
        };
        let detail = match (detail, t.skipped.is_empty()) {
            (d, true) => d,
            (d, false) => Some(format!("{}skipped samples: {}", d.map(|d| d + "; ").unwrap_or_default(), t.skipped.join("; "))),
        };
        let ok = verdict.passed();
        self.push(CheckItem { label: label.into(), verdict, residual: t.max_residual, detail });
        ok
    }

    /// Zero test of every component of a tensor, summarised as one item.
    pub fn tensor_zero<K: Kind>(&mut self, label: impl Into<String>, t: &Alt<K>, cfg: &SampleConfig) -> bool {
        let label = label.into();
        let mut sub = Report::new("");
        for (mask, e) in t.nonzero() {
            sub.zero(t.key(mask), e, cfg);
        }
        self.absorb_as_one(label, sub)
    }

    /// Zero test of labelled scalar residuals, summarised as one item.
    pub fn all_zero(&mut self, label: impl Into<String>, parts: &[(String, Expr)], cfg: &SampleConfig) -> bool {
        let mut sub = Report::new("");
        for (l, e) in parts {
            sub.zero(l.clone(), e, cfg);
        }
        self.absorb_as_one(label.into(), sub)
    }

    pub fn pair_zero<K: Kind>(&mut self, label: impl Into<String>, p: &Pair<K>, cfg: &SampleConfig) -> bool {
        let label = label.into();
        let mut sub = Report::new("");
        for (mask, e) in p.primary.nonzero() {
            sub.zero(p.primary.key(mask), e, cfg);
        }
        for (mask, e) in p.secondary.nonzero() {
            sub.zero(format!("secondary {}", p.secondary.key(mask)), e, cfg);
        }
        self.absorb_as_one(label, sub)
    }

    fn absorb_as_one(&mut self, label: String, sub: Report) -> bool {
        self.assumptions.extend(sub.assumptions);
        let residual = sub.items.iter().map(|i| i.residual).fold(0.0, f64::max);
        let failing = sub.items.iter().find(|i| !i.verdict.passed());
        let item = match failing {
            Some(f) => CheckItem {
                label,
                verdict: f.verdict.clone(),
                residual,
                detail: Some(format!("component {}: {}", f.label, f.detail.clone().unwrap_or_default())),
            },
            None => {
                let sampled = sub.items.iter().any(|i| i.verdict != ItemVerdict::SymbolicZero);
                CheckItem {
                    label,
                    verdict: if sampled { ItemVerdict::SampledZero } else { ItemVerdict::SymbolicZero },
                    residual,
                    detail: None,
                }
            }
        };
        let ok = item.verdict.passed();
        self.push(item);
        ok
    }

    /// Symbolic equality of two tensors, reported as the zero test of their difference.
    pub fn tensor_eq<K: Kind>(&mut self, label: impl Into<String>, a: &Alt<K>, b: &Alt<K>, cfg: &SampleConfig) -> bool {
        if a.degree() != b.degree() {
            self.error(label, &GeomError::Degree { degree: b.degree(), dim: a.dim() });
            return false;
        }
        self.tensor_zero(label, &(a - b), cfg)
    }

    /// A numeric condition checked at samples; `value` is kept as the failure value.
    pub fn numeric(&mut self, label: impl Into<String>, passed: bool, value: f64, witness: Option<Vec<f64>>, detail: Option<String>) -> bool {
        let (verdict, residual) = if passed { (ItemVerdict::SampledPass, 0.0) } else { (ItemVerdict::Fail { witness, value }, value) };
        self.push(CheckItem { label: label.into(), verdict, residual, detail });
        passed
    }

    /// A structural fact decided exactly (no sampling), e.g. a dimension count.
    pub fn exact(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) -> bool {
        let verdict = if passed { ItemVerdict::SymbolicZero } else { ItemVerdict::Fail { witness: None, value: f64::NAN } };
        self.push(CheckItem { label: label.into(), verdict, residual: 0.0, detail: Some(detail.into()) });
        passed
    }

    pub fn error(&mut self, label: impl Into<String>, e: &GeomError) {
        self.push(CheckItem { label: label.into(), verdict: ItemVerdict::Error(e.to_string()), residual: f64::NAN, detail: None });
    }

    /// Appends another report's items (labels prefixed) and assumptions.
    pub fn merge(&mut self, prefix: &str, other: Report) {
        for mut item in other.items {
            if !prefix.is_empty() {
                item.label = format!("{prefix}: {}", item.label);
            }
            self.items.push(item);
        }
        self.assumptions.extend(other.assumptions);
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.verdict.passed())
    }

    pub fn overall(&self) -> Overall {
        if self.items.iter().any(|i| matches!(i.verdict, ItemVerdict::Fail { .. })) {
            Overall::Fail
        } else if self.items.iter().any(|i| matches!(i.verdict, ItemVerdict::Error(_))) {
            Overall::Error
        } else if self.items.iter().all(|i| i.verdict == ItemVerdict::SymbolicZero) {
            Overall::SymbolicZero
        } else {
            Overall::SampledZero
        }
    }

    /// Largest finite residual over all items.
    pub fn max_residual(&self) -> f64 {
        self.items.iter().map(|i| i.residual).filter(|r| r.is_finite()).fold(0.0, f64::max)
    }

    pub fn first_failure(&self) -> Option<&CheckItem> {
        self.items.iter().find(|i| !i.verdict.passed())
    }

    pub fn item(&self, label: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.label == label)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.name, self.overall())?;
        for item in &self.items {
            let v = match &item.verdict {
                ItemVerdict::SymbolicZero => "symbolic zero".to_string(),
                ItemVerdict::SampledZero => format!("sampled zero (max residual {:.3e})", item.residual),
                ItemVerdict::SampledPass => format!("pass at samples{}", item.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default()),
                ItemVerdict::Fail { witness: Some(w), value } => format!("FAIL at {w:?}, value {value:.6e}"),
                ItemVerdict::Fail { witness: None, value } => format!("FAIL, value {value:.6e}"),
                ItemVerdict::Error(e) => format!("ERROR {e}"),
            };
            write!(f, "  {}: {v}", item.label)?;
            if let (Some(d), false) = (&item.detail, item.verdict.passed()) {
                write!(f, " [{d}]")?;
            }
            writeln!(f)?;
        }
        for a in &self.assumptions {
            writeln!(f, "  assumption: {a}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        Ok(())
    }
}
