//! Discretized A-paths of the algebroid `T*M×ℝ` of a twisted Jacobi
//! structure: anchor residuals, integration of the cocycle `(−E,0)`,
//! concatenation and reparameterization.
//!
//! A path is a list of segments covering `[0,1]`, each sampled on its own
//! uniform grid. Concatenation keeps the two halves as separate segments, so a
//! jump of the section at the junction does not pollute the quadrature.

use std::thread;

use crate::chart::ChartRef;
use crate::error::{GeomError, Result};
use crate::expr::Expr;
use crate::jacobi::TwistedJacobi;
use crate::tensor::bivector_matrix;

/// Smallest number of intervals per segment.
pub const MIN_INTERVALS: usize = 8;

/// Endpoint gap accepted by [`concatenate`].
pub const COMPOSABLE_TOL: f64 = 1e-9;

/// Base points must stay in the sample box `[-1, 1]^n` (up to this slack).
pub const BOX_SLACK: f64 = 1e-12;

/// One uniformly sampled piece of a path over `[start, end]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    pub gamma: Vec<Vec<f64>>,
    pub zeta: Vec<Vec<f64>>,
    pub f: Vec<f64>,
}

impl Segment {
    pub fn intervals(&self) -> usize {
        self.f.len() - 1
    }

    fn step(&self) -> f64 {
        (self.end - self.start) / self.intervals() as f64
    }

    /// Cubic Lagrange interpolation of `(γ, ζ, f)` at `t` in `[start, end]`.
    fn at(&self, t: f64) -> (Vec<f64>, Vec<f64>, f64) {
        let n = self.intervals();
        let u = ((t - self.start) / self.step()).clamp(0.0, n as f64);
        let first = (u.floor() as isize - 1).clamp(0, n as isize - 3) as usize;
        let nodes: Vec<usize> = (first..first + 4).collect();
        let weights: Vec<f64> = nodes
            .iter()
            .map(|&i| nodes.iter().filter(|&&k| k != i).map(|&k| (u - k as f64) / (i as f64 - k as f64)).product())
            .collect();
        let mix = |rows: &Vec<Vec<f64>>| -> Vec<f64> {
            (0..rows[0].len()).map(|c| nodes.iter().zip(&weights).map(|(&i, w)| w * rows[i][c]).sum()).collect()
        };
        let f = nodes.iter().zip(&weights).map(|(&i, w)| w * self.f[i]).sum();
        (mix(&self.gamma), mix(&self.zeta), f)
    }
}

#[derive(Clone, Debug)]
pub struct APath {
    pub j: TwistedJacobi,
    pub segments: Vec<Segment>,
}

fn check_segment(j: &TwistedJacobi, s: &Segment) -> Result<()> {
    let n = s.f.len().saturating_sub(1);
    if n < MIN_INTERVALS || n % 2 != 0 {
        return Err(GeomError::Precondition(format!("a segment needs an even number of intervals, at least {MIN_INTERVALS}; got {n}")));
    }
    let dim = j.chart().dim();
    if s.gamma.len() != n + 1 || s.zeta.len() != n + 1 {
        return Err(GeomError::Precondition("γ, ζ and f need the same number of samples".into()));
    }
    if s.gamma.iter().chain(&s.zeta).any(|p| p.len() != dim) {
        return Err(GeomError::ChartMismatch { expected: format!("{dim} components"), found: "other".into() });
    }
    if let Some(p) = s.gamma.iter().find(|p| p.iter().any(|x| !x.is_finite() || x.abs() > 1.0 + BOX_SLACK)) {
        return Err(GeomError::Precondition(format!("base point {p:?} leaves the sample box [-1,1]^{dim}")));
    }
    Ok(())
}

impl APath {
    /// A one-segment path from samples at `t_i = i/N`.
    pub fn sampled(j: &TwistedJacobi, gamma: Vec<Vec<f64>>, zeta: Vec<Vec<f64>>, f: Vec<f64>) -> Result<APath> {
        APath::from_segments(j, vec![Segment { start: 0.0, end: 1.0, gamma, zeta, f }])
    }

    pub fn from_segments(j: &TwistedJacobi, segments: Vec<Segment>) -> Result<APath> {
        for s in &segments {
            check_segment(j, s)?;
        }
        Ok(APath { j: j.clone(), segments })
    }

    /// Samples closed forms in `t` (expressions on the one-dimensional chart
    /// `time`) at `N+1` uniform times.
    pub fn from_exprs(j: &TwistedJacobi, time: &ChartRef, n: usize, gamma: &[Expr], zeta: &[Expr], f: &Expr) -> Result<APath> {
        if time.dim() != 1 {
            return Err(GeomError::InvalidChart(format!("time chart `{}` must have one coordinate", time.name())));
        }
        let eval_all = |es: &[Expr], t: f64| es.iter().map(|e| e.rechart(time).eval(&[t])).collect::<Result<Vec<f64>>>();
        let ts: Vec<f64> = (0..=n).map(|i| i as f64 / n as f64).collect();
        let gamma = ts.iter().map(|&t| eval_all(gamma, t)).collect::<Result<Vec<_>>>()?;
        let zeta = ts.iter().map(|&t| eval_all(zeta, t)).collect::<Result<Vec<_>>>()?;
        let f = ts.iter().map(|&t| f.rechart(time).eval(&[t])).collect::<Result<Vec<_>>>()?;
        APath::sampled(j, gamma, zeta, f)
    }

    /// The constant path at `point` with zero section.
    pub fn constant(j: &TwistedJacobi, point: &[f64], n: usize) -> Result<APath> {
        let dim = j.chart().dim();
        APath::sampled(j, vec![point.to_vec(); n + 1], vec![vec![0.0; dim]; n + 1], vec![0.0; n + 1])
    }

    pub fn intervals(&self) -> usize {
        self.segments.iter().map(Segment::intervals).sum()
    }

    pub fn start_point(&self) -> &[f64] {
        &self.segments[0].gamma[0]
    }

    pub fn end_point(&self) -> &[f64] {
        self.segments.last().and_then(|s| s.gamma.last()).expect("nonempty path")
    }

    fn structure_at(&self, p: &[f64]) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
        let lam = bivector_matrix(&self.j.lambda).iter().map(|row| row.iter().map(|e| e.eval(p)).collect()).collect::<Result<Vec<Vec<f64>>>>()?;
        let e = (0..p.len()).map(|i| self.j.e.at(i).eval(p)).collect::<Result<Vec<f64>>>()?;
        Ok((lam, e))
    }

    /// `ρ(ζ,f) = Λ^#ζ + fE` at a point.
    pub fn anchor_at(&self, p: &[f64], zeta: &[f64], f: f64) -> Result<Vec<f64>> {
        let (lam, e) = self.structure_at(p)?;
        Ok((0..p.len()).map(|k| (0..p.len()).map(|i| zeta[i] * lam[i][k]).sum::<f64>() + f * e[k]).collect())
    }
}

/// Max-norm of `ρ(c(t_i)) − γ′(t_i)` over interior samples, with `γ′` from
/// central differences.
pub fn anchor_residual(c: &APath) -> Result<f64> {
    let mut worst = 0.0f64;
    for s in &c.segments {
        let h = s.step();
        if h == 0.0 {
            continue;
        }
        for i in 1..s.intervals() {
            let rho = c.anchor_at(&s.gamma[i], &s.zeta[i], s.f[i])?;
            for (k, r) in rho.iter().enumerate() {
                let d = (s.gamma[i + 1][k] - s.gamma[i - 1][k]) / (2.0 * h);
                worst = worst.max((r - d).abs());
            }
        }
    }
    Ok(worst)
}

fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len() - 1;
    let inner: f64 = (1..n).map(|i| if i % 2 == 1 { 4.0 * values[i] } else { 2.0 * values[i] }).sum();
    h / 3.0 * (values[0] + values[n] + inner)
}

/// Composite Simpson quadrature of `−⟨ζ(t), E(γ(t))⟩` over `[0,1]`.
pub fn cocycle_integral(c: &APath) -> Result<f64> {
    let mut total = 0.0;
    for s in &c.segments {
        let values = s
            .gamma
            .iter()
            .zip(&s.zeta)
            .map(|(p, z)| {
                let (_, e) = c.structure_at(p)?;
                Ok(-z.iter().zip(&e).map(|(a, b)| a * b).sum::<f64>())
            })
            .collect::<Result<Vec<f64>>>()?;
        total += simpson(&values, s.step());
    }
    Ok(total)
}

/// Cocycle integrals of several paths, computed concurrently.
pub fn cocycle_integrals(paths: &[APath]) -> Vec<Result<f64>> {
    thread::scope(|scope| {
        let handles: Vec<_> = paths.iter().map(|p| scope.spawn(move || cocycle_integral(p))).collect();
        handles.into_iter().map(|h| h.join().expect("integral thread")).collect()
    })
}

fn rescaled(s: &Segment, offset: f64, speed: f64) -> Segment {
    Segment {
        start: offset + s.start / speed,
        end: offset + s.end / speed,
        gamma: s.gamma.clone(),
        zeta: s.zeta.iter().map(|z| z.iter().map(|x| speed * x).collect()).collect(),
        f: s.f.iter().map(|x| speed * x).collect(),
    }
}

/// `c₁⊙c₀`: `2c₀(2t)` on `[0,½]`, `2c₁(2t−1)` on `[½,1]`.
pub fn concatenate(c0: &APath, c1: &APath) -> Result<APath> {
    if c0.j.chart().coords() != c1.j.chart().coords() {
        return Err(GeomError::ChartMismatch { expected: c0.j.chart().name().to_string(), found: c1.j.chart().name().to_string() });
    }
    let gap = c0.end_point().iter().zip(c1.start_point()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    if gap > COMPOSABLE_TOL {
        return Err(GeomError::NotComposable(gap));
    }
    let mut segments: Vec<Segment> = c0.segments.iter().map(|s| rescaled(s, 0.0, 2.0)).collect();
    segments.extend(c1.segments.iter().map(|s| rescaled(s, 0.5, 2.0)));
    APath::from_segments(&c0.j, segments)
}

/// Inverse of a nondecreasing `τ` by bisection.
fn preimage(tau: &dyn Fn(f64) -> Result<f64>, y: f64) -> Result<f64> {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if tau(mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `c^τ(t) = τ′(t) c(τ(t))` for a nondecreasing `τ` with `τ(0)=0`, `τ(1)=1`,
/// given on the one-dimensional chart `time`. Each segment of `c` becomes the
/// segment of `c^τ` over its preimage, sampled with the same number of intervals.
pub fn reparameterize(c: &APath, time: &ChartRef, tau: &Expr) -> Result<APath> {
    let tau = tau.rechart(time);
    let dtau = tau.diff(0);
    let at = |t: f64| tau.eval(&[t]);
    if at(0.0)?.abs() > 1e-12 || (at(1.0)? - 1.0).abs() > 1e-12 {
        return Err(GeomError::Precondition("τ must fix 0 and 1".into()));
    }
    let probe = 16 * c.intervals().max(MIN_INTERVALS);
    for i in 0..=probe {
        let t = i as f64 / probe as f64;
        let d = dtau.eval(&[t])?;
        if d < -1e-12 {
            return Err(GeomError::Precondition(format!("τ is not monotone: τ′({t}) = {d}")));
        }
    }
    let mut segments = Vec::new();
    for s in &c.segments {
        let (a, b) = (preimage(&at, s.start)?, preimage(&at, s.end)?);
        let (a, b) = (if s.start == 0.0 { 0.0 } else { a }, if s.end == 1.0 { 1.0 } else { b });
        let n = s.intervals();
        let mut seg = Segment { start: a, end: b, gamma: vec![], zeta: vec![], f: vec![] };
        for i in 0..=n {
            let t = a + (b - a) * i as f64 / n as f64;
            let speed = dtau.eval(&[t])?;
            let (g, z, f) = s.at(at(t)?.clamp(s.start, s.end));
            seg.gamma.push(g);
            seg.zeta.push(z.iter().map(|x| speed * x).collect());
            seg.f.push(speed * f);
        }
        segments.push(seg);
    }
    APath::from_segments(&c.j, segments)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Chart;
    use crate::tensor::{Form, MultiVector};

    fn flow() -> TwistedJacobi {
        let c = Chart::new("R3", &["x", "y", "z"]).unwrap();
        TwistedJacobi::new(MultiVector::zero(&c, 2), MultiVector::coordinate_field(&c, 2), Form::zero(&c, 2)).unwrap()
    }

    fn time() -> ChartRef {
        Chart::new("time", &["t"]).unwrap()
    }

    fn expr(s: &str) -> Expr {
        Expr::parse(s, &time()).unwrap()
    }

    fn path(n: usize, z0: &str, zeta_z: &str, f: &str) -> APath {
        APath::from_exprs(&flow(), &time(), n, &[expr("0"), expr("0"), expr(&format!("{z0} + t"))], &[expr("0"), expr("0"), expr(zeta_z)], &expr(f)).unwrap()
    }

    #[test]
    fn anchor_residual_examples() {
        let j = flow();
        assert_eq!(anchor_residual(&APath::constant(&j, &[0.1, 0.2, 0.3], 8).unwrap()).unwrap(), 0.0);
        for n in [8, 64, 512] {
            assert!(anchor_residual(&path(n, "0", "1", "1")).unwrap() < 1e-12);
            assert!((anchor_residual(&path(n, "0", "1", "2")).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn cocycle_examples() {
        assert_eq!(cocycle_integral(&path(8, "0", "0", "5")).unwrap(), 0.0);
        assert!((cocycle_integral(&path(64, "0", "1", "1")).unwrap() + 1.0).abs() < 1e-12);
        assert!((cocycle_integral(&path(64, "0", "t", "1")).unwrap() + 0.5).abs() < 1e-12);
    }

    #[test]
    fn concatenation() {
        let c = path(64, "0", "1", "1");
        let zero = APath::constant(&flow(), c.start_point(), 64).unwrap();
        let cc = concatenate(&zero, &c).unwrap();
        assert!((cocycle_integral(&cc).unwrap() + 1.0).abs() < 1e-12);
        assert!(anchor_residual(&cc).unwrap() < 1e-9);
        let first = path(64, "-1", "1", "1");
        let both = concatenate(&first, &c).unwrap();
        assert!((cocycle_integral(&both).unwrap() + 2.0).abs() < 1e-8);
        assert_eq!(concatenate(&c, &c).unwrap_err(), GeomError::NotComposable(1.0));
    }

    #[test]
    fn reparameterization() {
        let c = path(64, "0", "1", "1");
        let same = reparameterize(&c, &time(), &expr("t")).unwrap();
        let (a, b) = (&same.segments[0], &c.segments[0]);
        assert_eq!((a.start, a.end, a.intervals()), (0.0, 1.0, 64));
        for i in 0..=64 {
            assert!((a.gamma[i][2] - b.gamma[i][2]).abs() < 1e-12 && (a.zeta[i][2] - b.zeta[i][2]).abs() < 1e-12);
        }
        for tau in ["t^2", "3*t^2 - 2*t^3"] {
            let r = reparameterize(&c, &time(), &expr(tau)).unwrap();
            assert!((cocycle_integral(&r).unwrap() + 1.0).abs() < 1e-6, "{tau}");
            assert!(anchor_residual(&r).unwrap() < 1e-2, "{tau}");
        }
        assert!(matches!(reparameterize(&c, &time(), &expr("2*t^2 - t")), Err(GeomError::Precondition(_))));
    }

    #[test]
    fn simpson_order() {
        let exact = -(std::f64::consts::E - 1.0);
        let err = |n| (cocycle_integral(&path(n, "0", "exp(t)", "1")).unwrap() - exact).abs();
        for n in [8, 16, 32] {
            assert!(err(n) / err(2 * n) >= 8.0);
        }
    }
}
