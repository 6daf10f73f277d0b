use std::sync::OnceLock;

use super::{Form, MultiVector};
use crate::chart::ChartRef;
use crate::error::{GeomError, Result};
use crate::expr::Expr;

/// A smooth map between charts, given by target-coordinate components over the
/// source. An optional section `σ` (components over the target) satisfies
/// `φ∘σ = id`; it is what makes pushforwards computable.
#[derive(Clone)]
pub struct SmoothMap {
    source: ChartRef,
    target: ChartRef,
    comps: Vec<Expr>,
    section: Option<Vec<Expr>>,
    jacobian: OnceLock<Vec<Vec<Expr>>>,
}

impl SmoothMap {
    pub fn new(source: &ChartRef, target: &ChartRef, comps: Vec<Expr>) -> Result<SmoothMap> {
        if comps.len() != target.dim() {
            return Err(GeomError::ChartMismatch {
                expected: format!("{} components for `{}`", target.dim(), target.name()),
                found: comps.len().to_string(),
            });
        }
        if let Some(bad) = comps.iter().find(|e| e.nvars() != source.dim()) {
            return Err(GeomError::ChartMismatch { expected: source.name().to_string(), found: bad.chart().name().to_string() });
        }
        let comps = comps.into_iter().map(|e| e.rechart(source)).collect();
        Ok(SmoothMap { source: source.clone(), target: target.clone(), comps, section: None, jacobian: OnceLock::new() })
    }

    pub fn parse(source: &ChartRef, target: &ChartRef, comps: &[&str]) -> Result<SmoothMap> {
        let comps = comps.iter().map(|s| Expr::parse(s, source)).collect::<Result<Vec<_>>>()?;
        SmoothMap::new(source, target, comps)
    }

    pub fn identity(chart: &ChartRef) -> SmoothMap {
        let comps: Vec<Expr> = (0..chart.dim()).map(|i| Expr::var(chart, i)).collect();
        SmoothMap::new(chart, chart, comps.clone()).unwrap().with_section_unchecked(comps)
    }

    /// Projection keeping the source coordinates `keep` (in target order); the
    /// section sets every dropped coordinate to the given constant.
    pub fn coordinate_projection(source: &ChartRef, target: &ChartRef, keep: &[usize], dropped_values: &[(usize, Expr)]) -> Result<SmoothMap> {
        let comps = keep.iter().map(|&i| Expr::var(source, i)).collect();
        let map = SmoothMap::new(source, target, comps)?;
        let mut section = vec![None; source.dim()];
        for (t, &i) in keep.iter().enumerate() {
            section[i] = Some(Expr::var(target, t));
        }
        for (i, v) in dropped_values {
            section[*i] = Some(v.rechart(target));
        }
        let section = section
            .into_iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| GeomError::Precondition(format!("no section value for `{}`", source.coord(i)))))
            .collect::<Result<Vec<_>>>()?;
        map.with_section(section)
    }

    /// Declares a section, verifying `φ∘σ = id` symbolically.
    pub fn with_section(self, section: Vec<Expr>) -> Result<SmoothMap> {
        if section.len() != self.source.dim() {
            return Err(GeomError::ChartMismatch {
                expected: format!("{} section components", self.source.dim()),
                found: section.len().to_string(),
            });
        }
        let section: Vec<Expr> = section.into_iter().map(|e| e.rechart(&self.target)).collect();
        for (j, c) in self.comps.iter().enumerate() {
            let back = c.substitute(&section, &self.target)?;
            if back != Expr::var(&self.target, j) {
                return Err(GeomError::Precondition(format!(
                    "declared section is not a right inverse: component `{}` gives `{back}`",
                    self.target.coord(j)
                )));
            }
        }
        Ok(self.with_section_unchecked(section))
    }

    fn with_section_unchecked(mut self, section: Vec<Expr>) -> SmoothMap {
        self.section = Some(section);
        self
    }

    pub fn source(&self) -> &ChartRef {
        &self.source
    }

    pub fn target(&self) -> &ChartRef {
        &self.target
    }

    pub fn components(&self) -> &[Expr] {
        &self.comps
    }

    pub fn section(&self) -> Option<&[Expr]> {
        self.section.as_deref()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SmoothMap) -> Result<SmoothMap> {
        if next.source.dim() != self.target.dim() {
            return Err(GeomError::ChartMismatch { expected: self.target.name().to_string(), found: next.source.name().to_string() });
        }
        let comps = next.comps.iter().map(|c| c.substitute(&self.comps, &self.source)).collect::<Result<Vec<_>>>()?;
        let mut out = SmoothMap::new(&self.source, &next.target, comps)?;
        if let (Some(s1), Some(s2)) = (&self.section, &next.section) {
            let sec = s1.iter().map(|c| c.substitute(s2, &next.target)).collect::<Result<Vec<_>>>()?;
            out.section = Some(sec);
        }
        Ok(out)
    }

    /// `f∘φ` for a function on the target.
    pub fn pull(&self, f: &Expr) -> Result<Expr> {
        f.substitute(&self.comps, &self.source)
    }

    /// `∂φ^a/∂x^i`, indexed `[a][i]`.
    pub fn jacobian(&self) -> &Vec<Vec<Expr>> {
        self.jacobian.get_or_init(|| self.comps.iter().map(|c| (0..self.source.dim()).map(|i| c.diff(i)).collect()).collect())
    }

    /// `φ^*dy^a` for every target coordinate.
    fn pulled_coordinate_forms(&self) -> Vec<Form> {
        self.jacobian().iter().map(|row| Form::from_vec(&self.source, row.clone())).collect()
    }

    pub fn pullback(&self, alpha: &Form) -> Result<Form> {
        if alpha.dim() != self.target.dim() {
            return Err(GeomError::ChartMismatch { expected: self.target.name().to_string(), found: alpha.chart().name().to_string() });
        }
        let k = alpha.degree();
        if k > self.source.dim() {
            return Ok(Form::zero(&self.source, k));
        }
        if k == 0 {
            return Ok(Form::scalar(self.pull(alpha.as_scalar())?));
        }
        let dys = self.pulled_coordinate_forms();
        let mut out = Form::zero(&self.source, k);
        for (mask, e) in alpha.nonzero() {
            let coeff = self.pull(e)?;
            if coeff.is_zero() {
                continue;
            }
            let mut w: Option<Form> = None;
            for a in super::index::indices(mask) {
                w = Some(match w {
                    None => dys[a].clone(),
                    Some(w) => w.wedge(&dys[a]),
                });
            }
            out = &out + &w.unwrap().scale(&coeff);
        }
        Ok(out)
    }

    /// Pushforward of a multivector along a map with a declared section. The
    /// pushed components must be constant along the fibres, i.e. unchanged by
    /// `σ∘φ`; otherwise a projectability failure names a fibre coordinate they
    /// depend on.
    pub fn pushforward(&self, p: &MultiVector) -> Result<MultiVector> {
        let section = self.section.as_ref().ok_or_else(|| GeomError::Precondition("pushforward needs a declared section".into()))?;
        if p.dim() != self.source.dim() {
            return Err(GeomError::ChartMismatch { expected: self.source.name().to_string(), found: p.chart().name().to_string() });
        }
        let k = p.degree();
        if k > self.target.dim() {
            return Ok(MultiVector::zero(&self.target, k));
        }
        if k == 0 {
            let c = p.as_scalar();
            let down = c.substitute(section, &self.target)?;
            self.check_projectable(c, &down, "1")?;
            return Ok(MultiVector::scalar(down));
        }
        let dys = self.pulled_coordinate_forms();
        let mut out = MultiVector::zero(&self.target, k);
        for mask in out.masks().collect::<Vec<_>>() {
            let args: Vec<Form> = super::index::indices(mask).map(|a| dys[a].clone()).collect();
            let c = p.eval(&args);
            if c.is_zero() {
                continue;
            }
            let down = c.substitute(section, &self.target)?;
            self.check_projectable(&c, &down, &out.key(mask))?;
            out.set(mask, down);
        }
        Ok(out)
    }

    fn check_projectable(&self, upstairs: &Expr, down: &Expr, key: &str) -> Result<()> {
        if self.pull(down)? == *upstairs {
            return Ok(());
        }
        let fibre = (0..self.source.dim()).find(|&i| upstairs.depends_on(i) && self.comps.iter().all(|c| !c.depends_on(i)));
        Err(GeomError::Projectability {
            component: key.to_string(),
            coord: fibre.map(|i| self.source.coord(i).to_string()).unwrap_or_else(|| "a fibre direction".into()),
        })
    }
}

impl std::fmt::Debug for SmoothMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmoothMap[{} -> {}](", self.source.name(), self.target.name())?;
        for (i, c) in self.comps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}
