//! Resolution of a scenario into charts and constructed objects.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use twistgeom::apath::APath;
use twistgeom::contact::{jacobi_from_contact, solve, TwistedContact};
use twistgeom::groupoid::{build_pair_groupoid, Composable, GroupoidModel, PairData, SuspendedModel, Triple};
use twistgeom::jacobi::{HomTwistedPoisson, TwistedJacobi};
use twistgeom::tensor::{Form, MultiVector, SmoothMap};
use twistgeom::{Chart, ChartRef, Expr, Report, SampleConfig};

use crate::scenario::{Entries, GroupoidDef, MapDef, PathDef, Scenario, Structure, SuspendedDef};

pub enum Object {
    Jacobi(TwistedJacobi),
    Contact(TwistedContact),
    Homogeneous(HomTwistedPoisson),
    Multivector(MultiVector),
    Groupoid(Box<GroupoidModel>),
    Suspended(Box<SuspendedModel>),
    Path(APath),
}

/// A construction that failed its preconditions is kept as an error message
/// and reported by every check that uses it.
pub type Built = std::result::Result<Object, String>;

pub struct World {
    pub charts: BTreeMap<String, ChartRef>,
    pub objects: BTreeMap<String, Built>,
}

fn entries(e: &Entries) -> Vec<(&str, &str)> {
    e.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect()
}

impl World {
    pub fn build(s: &Scenario, cfg: &SampleConfig) -> Result<World> {
        let mut charts = BTreeMap::new();
        for (name, coords) in &s.charts {
            let c = Chart::from_owned(name.clone(), coords.clone()).with_context(|| format!("chart `{name}`"))?;
            charts.insert(name.clone(), c);
        }
        let mut world = World { charts, objects: BTreeMap::new() };
        for name in s.structures.keys() {
            world.resolve(s, name, cfg, &mut vec![])?;
        }
        Ok(world)
    }

    pub fn chart(&self, name: &str) -> Result<&ChartRef> {
        self.charts.get(name).ok_or_else(|| anyhow!("unresolved chart `{name}`"))
    }

    pub fn get(&self, name: &str) -> std::result::Result<&Object, String> {
        match self.objects.get(name) {
            Some(Ok(o)) => Ok(o),
            Some(Err(e)) => Err(format!("`{name}` could not be constructed: {e}")),
            None => Err(format!("unresolved structure `{name}`")),
        }
    }

    fn resolve(&mut self, s: &Scenario, name: &str, cfg: &SampleConfig, stack: &mut Vec<String>) -> Result<()> {
        if self.objects.contains_key(name) {
            return Ok(());
        }
        if stack.iter().any(|n| n == name) {
            bail!("cyclic structure reference through `{name}`");
        }
        let def = s.structures.get(name).ok_or_else(|| anyhow!("unresolved structure `{name}`"))?;
        stack.push(name.to_string());
        for dep in def.dependencies() {
            self.resolve(s, dep, cfg, stack).with_context(|| format!("structure `{name}`"))?;
        }
        stack.pop();
        let built = self.construct(def, cfg).with_context(|| format!("structure `{name}`"))?;
        self.objects.insert(name.to_string(), built);
        Ok(())
    }

    /// Schema-level problems (unknown charts, malformed expressions, wrong
    /// kinds) are hard errors; failed mathematical preconditions are kept.
    fn construct(&self, def: &Structure, cfg: &SampleConfig) -> Result<Built> {
        let soft = |r: twistgeom::Result<Object>| -> Built { r.map_err(|e| e.to_string()) };
        Ok(match def {
            Structure::Jacobi { chart, lambda, e, omega } => {
                let c = self.chart(chart)?;
                Ok(Object::Jacobi(TwistedJacobi::new(mv(c, 2, lambda)?, mv(c, 1, e)?, form(c, 2, omega)?)?))
            }
            Structure::Contact { chart, theta, omega } => {
                let c = self.chart(chart)?;
                soft(TwistedContact::new(form(c, 1, theta)?, form(c, 2, omega)?).map(Object::Contact))
            }
            Structure::Homogeneous { chart, lambda, omega, z } => {
                let c = self.chart(chart)?;
                Ok(Object::Homogeneous(HomTwistedPoisson { lambda: mv(c, 2, lambda)?, omega: form(c, 2, omega)?, z: mv(c, 1, z)? }))
            }
            Structure::Multivector { chart, degree, entries } => Ok(Object::Multivector(mv(self.chart(chart)?, *degree, entries)?)),
            Structure::PairGroupoid { base } => match self.contact(base)? {
                Ok(c) => soft(build_pair_groupoid(c, cfg).map(|g| Object::Groupoid(Box::new(g)))),
                Err(e) => Err(e),
            },
            Structure::Groupoid(g) => self.groupoid(g)?.map(|g| Object::Groupoid(Box::new(g))),
            Structure::Suspended(d) => self.suspended(d)?.map(|m| Object::Suspended(Box::new(m))),
            Structure::Apath(p) => self.path(p)?,
        })
    }

    fn contact(&self, name: &str) -> Result<std::result::Result<&TwistedContact, String>> {
        match self.get(name) {
            Ok(Object::Contact(c)) => Ok(Ok(c)),
            Ok(_) => bail!("`{name}` is not a contact structure"),
            Err(e) => Ok(Err(e)),
        }
    }

    pub fn map(&self, m: &MapDef) -> Result<SmoothMap> {
        let (source, target) = (self.chart(&m.source)?, self.chart(&m.target)?);
        let comps = m.components.iter().map(|t| Expr::parse(t, source)).collect::<twistgeom::Result<Vec<_>>>()?;
        let map = SmoothMap::new(source, target, comps)?;
        Ok(match &m.section {
            Some(sec) => map.with_section(sec.iter().map(|t| Expr::parse(t, target)).collect::<twistgeom::Result<Vec<_>>>()?)?,
            None => map,
        })
    }

    fn groupoid(&self, g: &GroupoidDef) -> Result<std::result::Result<GroupoidModel, String>> {
        let (base, total) = (self.chart(&g.base)?.clone(), self.chart(&g.total)?.clone());
        let c = &g.composable;
        let composable = Composable {
            chart: self.chart(&c.chart)?.clone(),
            pr1: self.map(&c.pr1)?,
            pr2: self.map(&c.pr2)?,
            mult: self.map(&c.mult)?,
            pair_chart: self.chart(&c.pair_chart)?.clone(),
            join: self.map(&c.join)?,
        };
        let t = &g.triple;
        let triple = Triple { chart: self.chart(&t.chart)?.clone(), q1: self.map(&t.q1)?, q2: self.map(&t.q2)?, q3: self.map(&t.q3)? };
        let pair = match &g.pair_base {
            Some(name) => match self.contact(name)? {
                Ok(c0) => match solve(c0) {
                    Ok(base_data) => Some(PairData { base_contact: c0.clone(), base_data }),
                    Err(e) => return Ok(Err(e.to_string())),
                },
                Err(e) => return Ok(Err(e)),
            },
            None => None,
        };
        Ok(Ok(GroupoidModel {
            alpha: self.map(&g.alpha)?,
            beta: self.map(&g.beta)?,
            iota: self.map(&g.iota)?,
            eps: self.map(&g.eps)?,
            composable,
            triple,
            r: Expr::parse(&g.r, &total)?,
            theta: form(&total, 1, &g.theta)?,
            omega: form(&total, 2, &g.omega)?,
            omega0: form(&base, 2, &g.omega0)?,
            base,
            total,
            pair,
        }))
    }

    fn suspended(&self, d: &SuspendedDef) -> Result<std::result::Result<SuspendedModel, String>> {
        let model = match self.get(&d.of) {
            Ok(Object::Groupoid(g)) => (**g).clone(),
            Ok(_) => bail!("`{}` is not a groupoid", d.of),
            Err(e) => return Ok(Err(e)),
        };
        let (total, base) = (self.chart(&d.total)?.clone(), self.chart(&d.base)?.clone());
        Ok(Ok(SuspendedModel {
            model,
            alpha: self.map(&d.alpha)?,
            beta: self.map(&d.beta)?,
            composable: self.chart(&d.composable)?.clone(),
            pr1: self.map(&d.pr1)?,
            pr2: self.map(&d.pr2)?,
            mult: self.map(&d.mult)?,
            big_omega: form(&total, 2, &d.big_omega)?,
            omega0: form(&base, 2, &d.omega0)?,
            z: mv(&total, 1, &d.z)?,
            z0: mv(&base, 1, &d.z0)?,
            total,
            base,
            report: Report::new("suspension"),
        }))
    }

    /// The twisted Jacobi structure of a jacobi or contact object.
    pub fn jacobi_of(&self, name: &str) -> std::result::Result<TwistedJacobi, String> {
        match self.get(name)? {
            Object::Jacobi(j) => Ok(j.clone()),
            Object::Contact(c) => jacobi_from_contact(c).map_err(|e| e.to_string()),
            _ => Err(format!("`{name}` is neither a jacobi nor a contact structure")),
        }
    }

    fn path(&self, p: &PathDef) -> Result<Built> {
        match s_kind(self.objects.get(&p.structure)) {
            Some("jacobi" | "contact") | None => {}
            Some(k) => bail!("path structure `{}` is a {k}, expected jacobi or contact", p.structure),
        }
        let j = match self.jacobi_of(&p.structure) {
            Ok(j) => j,
            Err(e) => return Ok(Err(e)),
        };
        let time = Chart::new("time", &[p.time.as_str()])?;
        let parse = |t: &String| Expr::parse(t, &time);
        let gamma = p.gamma.iter().map(parse).collect::<twistgeom::Result<Vec<_>>>()?;
        let zeta = p.zeta.iter().map(parse).collect::<twistgeom::Result<Vec<_>>>()?;
        let f = parse(&p.f)?;
        Ok(APath::from_exprs(&j, &time, p.intervals, &gamma, &zeta, &f).map(Object::Path).map_err(|e| e.to_string()))
    }
}

fn s_kind(b: Option<&Built>) -> Option<&'static str> {
    match b {
        Some(Ok(o)) => Some(kind(o)),
        _ => None,
    }
}

pub fn kind(o: &Object) -> &'static str {
    match o {
        Object::Jacobi(_) => "jacobi",
        Object::Contact(_) => "contact",
        Object::Homogeneous(_) => "homogeneous",
        Object::Multivector(_) => "multivector",
        Object::Groupoid(_) => "groupoid",
        Object::Suspended(_) => "suspended",
        Object::Path(_) => "apath",
    }
}

pub fn form(c: &ChartRef, degree: usize, e: &Entries) -> Result<Form> {
    Ok(Form::from_entries(c, degree, &entries(e))?)
}

pub fn mv(c: &ChartRef, degree: usize, e: &Entries) -> Result<MultiVector> {
    Ok(MultiVector::from_entries(c, degree, &entries(e))?)
}
