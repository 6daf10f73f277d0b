//! Scenario execution and report rendering.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::Result;
use serde::Serialize;
use twistgeom::{ItemVerdict, Overall, Report, SampleConfig};

use crate::checks;
use crate::scenario::{Check, Scenario};
use crate::world::World;

/// Command-line overrides of the sampling defaults. Per-check values win.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub tol: Option<f64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub timing: bool,
}

impl Settings {
    pub fn config(&self) -> SampleConfig {
        let d = SampleConfig::default();
        SampleConfig { samples: self.samples.unwrap_or(d.samples), seed: self.seed.unwrap_or(d.seed), tol: self.tol.unwrap_or(d.tol) }
    }

    fn config_for(&self, c: &Check) -> SampleConfig {
        let base = self.config();
        SampleConfig { samples: c.samples.unwrap_or(base.samples), seed: c.seed.unwrap_or(base.seed), tol: c.tol.unwrap_or(base.tol) }
    }
}

pub struct Outcome {
    pub name: String,
    pub report: Report,
    pub ms: u64,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Validates, builds every structure, and runs the checks concurrently;
/// results come back in declaration order.
pub fn run(s: &Scenario, settings: &Settings) -> Result<Vec<Outcome>> {
    checks::validate(s)?;
    let world = World::build(s, &settings.config())?;
    let slots: Vec<Mutex<Option<Outcome>>> = s.checks.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(s.checks.len()).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = s.checks.get(k) else { break };
                let start = Instant::now();
                let report = checks::run(&world, c, &settings.config_for(c));
                let ms = if settings.timing { start.elapsed().as_millis() as u64 } else { 0 };
                *slots[k].lock().expect("result slot") = Some(Outcome { name: c.display_name(), report, ms });
            });
        }
    });
    Ok(slots.into_iter().map(|m| m.into_inner().expect("result slot").expect("every check ran")).collect())
}

#[derive(Serialize)]
struct ItemLine<'a> {
    label: &'a str,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a [f64]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<&'a str>,
}

#[derive(Serialize)]
struct Line<'a> {
    name: &'a str,
    verdict: String,
    max_residual: f64,
    assumptions: Vec<&'a str>,
    ms: u64,
    items: Vec<ItemLine<'a>>,
}

fn item_verdict(v: &ItemVerdict) -> &'static str {
    match v {
        ItemVerdict::SymbolicZero => "SymbolicZero",
        ItemVerdict::SampledZero => "SampledZero",
        ItemVerdict::SampledPass => "SampledPass",
        ItemVerdict::Fail { .. } => "Fail",
        ItemVerdict::Error(_) => "Error",
    }
}

/// One JSON object per check.
pub fn json_line(o: &Outcome) -> String {
    let items = o
        .report
        .items
        .iter()
        .map(|i| ItemLine {
            label: &i.label,
            verdict: item_verdict(&i.verdict),
            residual: Some(i.residual).filter(|r| r.is_finite()),
            witness: match &i.verdict {
                ItemVerdict::Fail { witness: Some(w), .. } => Some(w.as_slice()),
                _ => None,
            },
            detail: match &i.verdict {
                ItemVerdict::Error(e) => Some(e.as_str()),
                _ => i.detail.as_deref(),
            },
        })
        .collect();
    let line = Line {
        name: &o.name,
        verdict: o.report.overall().to_string(),
        max_residual: o.report.max_residual(),
        assumptions: o.report.assumptions.iter().map(String::as_str).collect(),
        ms: o.ms,
        items,
    };
    serde_json::to_string(&line).expect("report serializes")
}

/// Human-readable summary; full reports for failures, or for all when verbose.
pub fn render(outcomes: &[Outcome], verbose: bool, timing: bool) -> String {
    let mut out = String::new();
    for o in outcomes {
        let status = if o.passed() { "PASS" } else { "FAIL" };
        let overall = o.report.overall();
        let max = o.report.max_residual();
        let residual = if overall == Overall::SampledZero && max > 0.0 { format!(", max residual {max:.3e}") } else { String::new() };
        let ms = if timing { format!(" [{} ms]", o.ms) } else { String::new() };
        out.push_str(&format!("{status} {}: {overall}{residual}{ms}\n", o.name));
        if verbose || !o.passed() {
            for line in o.report.to_string().lines().skip(1) {
                out.push_str(&format!("  {line}\n"));
            }
        }
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    out.push_str(&format!("{} checks, {} passed, {failed} failed\n", outcomes.len(), outcomes.len() - failed));
    out
}
