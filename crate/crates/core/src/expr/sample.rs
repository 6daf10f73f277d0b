use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Expr;
use crate::error::{GeomError, Result};

/// Points closer than this to a zero of a recorded denominator are rejected.
pub const DENOMINATOR_GUARD: f64 = 1e-3;

/// Sampling parameters shared by every zero test in a check.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleConfig {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 25, seed: 0x5EED_2024, tol: 1e-9 }
    }
}

impl SampleConfig {
    /// A deterministic pool of candidate points in `[-1, 1]^n`, larger than `samples`.
    pub fn pool(&self, n: usize) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ ((n as u64) << 48));
        (0..self.samples.max(1) * 8)
            .map(|_| (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect())
            .collect()
    }

    /// The first `samples` pool points at which every denominator is at least
    /// [`DENOMINATOR_GUARD`] in absolute value.
    pub fn points_avoiding(&self, n: usize, denominators: &[&Expr]) -> Vec<Vec<f64>> {
        self.pool(n)
            .into_iter()
            .filter(|p| denominators.iter().all(|d| d.eval_denominator(p).abs() >= DENOMINATOR_GUARD))
            .take(self.samples)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    SymbolicZero,
    SampledZero,
    NonZero { witness: Vec<f64>, value: f64 },
}

impl Verdict {
    pub fn is_zero(&self) -> bool {
        !matches!(self, Verdict::NonZero { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTest {
    pub verdict: Verdict,
    /// Largest normalized residual `|num(p)| / (1 + max |term(p)|)` over the samples.
    pub max_residual: f64,
    /// Sample points where evaluation failed, with the reason.
    pub skipped: Vec<String>,
    /// Nonvanishing hypotheses on the denominator.
    pub assumptions: Vec<String>,
}

impl ZeroTest {
    pub fn symbolic() -> ZeroTest {
        ZeroTest { verdict: Verdict::SymbolicZero, max_residual: 0.0, skipped: vec![], assumptions: vec![] }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_zero()
    }
}

impl Expr {
    /// Zero test against explicit sample points.
    pub fn is_zero_at(&self, points: &[Vec<f64>], tol: f64) -> Result<ZeroTest> {
        let assumptions: Vec<String> = self.denominator_assumption().into_iter().collect();
        if self.is_zero() {
            return Ok(ZeroTest { assumptions, ..ZeroTest::symbolic() });
        }
        if points.is_empty() {
            return Err(GeomError::Precondition("a nonzero canonical form needs sample points".into()));
        }
        let mut max_residual: f64 = 0.0;
        let mut skipped = Vec::new();
        let mut witness: Option<(Vec<f64>, f64, f64)> = None;
        for p in points {
            let (n, scale) = self.eval_numerator_scaled(p);
            let value = match self.eval(p) {
                Ok(v) => v,
                Err(e) => {
                    skipped.push(format!("{p:?}: {e}"));
                    continue;
                }
            };
            let r = n.abs() / (1.0 + scale);
            if !r.is_finite() {
                skipped.push(format!("{p:?}: non-finite residual"));
                continue;
            }
            max_residual = max_residual.max(r);
            if r > tol && witness.as_ref().is_none_or(|w| r > w.2) {
                witness = Some((p.clone(), value, r));
            }
        }
        if skipped.len() == points.len() {
            return Err(GeomError::Evaluation("evaluation failed at every sample point".into()));
        }
        let verdict = match witness {
            Some((witness, value, _)) => Verdict::NonZero { witness, value },
            None => Verdict::SampledZero,
        };
        Ok(ZeroTest { verdict, max_residual, skipped, assumptions })
    }

    /// Zero test at the configured sample points, avoiding this expression's own denominator.
    pub fn zero_test(&self, cfg: &SampleConfig) -> ZeroTest {
        if self.is_zero() {
            let assumptions = self.denominator_assumption().into_iter().collect();
            return ZeroTest { assumptions, ..ZeroTest::symbolic() };
        }
        let points = cfg.points_avoiding(self.nvars(), &[self]);
        match self.is_zero_at(&points, cfg.tol) {
            Ok(t) => t,
            Err(e) => ZeroTest {
                verdict: Verdict::NonZero { witness: vec![], value: f64::NAN },
                max_residual: f64::INFINITY,
                skipped: vec![e.to_string()],
                assumptions: self.denominator_assumption().into_iter().collect(),
            },
        }
    }
}
