//! Constructions on scenario objects and their rendering back to scenario syntax.

use std::collections::{BTreeMap, BTreeSet};

use anyhow::{anyhow, bail, Result};
use twistgeom::contact::{jacobi_from_contact, reeb, solve};
use twistgeom::groupoid::{build_pair_groupoid, suspend, GroupoidModel, SuspendedModel};
use twistgeom::jacobi::poissonize;
use twistgeom::tensor::{Alt, Kind, SmoothMap};
use twistgeom::{ChartRef, Report, SampleConfig};

use crate::scenario::{Check, ComposableDef, Entries, GroupoidDef, MapDef, Scenario, Structure, SuspendedDef, TripleDef};
use crate::world::{kind, Object, World};

pub const CONSTRUCTIONS: [&str; 6] = ["reeb", "contact_bivector", "jacobi", "poissonize", "pair_groupoid", "suspend"];

/// `pair-groupoid` and `pair_groupoid` name the same construction.
pub fn normalize(construction: &str) -> String {
    construction.replace('-', "_")
}

/// Applies a construction to a named object.
pub fn construct(world: &World, of: &str, construction: &str, cfg: &SampleConfig) -> std::result::Result<Object, String> {
    let source = world.get(of)?;
    let e = |r: twistgeom::GeomError| r.to_string();
    let wrong = || Err(format!("`{construction}` does not apply to the {} `{of}`", kind(source)));
    match (normalize(construction).as_str(), source) {
        ("reeb", Object::Contact(c)) => reeb(c).map(Object::Multivector).map_err(e),
        ("contact_bivector", Object::Contact(c)) => solve(c).map(|d| Object::Multivector(d.lambda)).map_err(e),
        ("jacobi", Object::Contact(c)) => jacobi_from_contact(c).map(Object::Jacobi).map_err(e),
        ("poissonize", Object::Jacobi(_) | Object::Contact(_)) => Ok(Object::Homogeneous(poissonize(&world.jacobi_of(of)?))),
        ("pair_groupoid", Object::Contact(c)) => build_pair_groupoid(c, cfg).map(|g| Object::Groupoid(Box::new(g))).map_err(e),
        ("suspend", Object::Groupoid(g)) => suspend(g, cfg).map(|m| Object::Suspended(Box::new(m))).map_err(e),
        (c, _) if !CONSTRUCTIONS.contains(&c) => Err(format!("unknown construction `{construction}`")),
        _ => wrong(),
    }
}

/// Collects the charts an emitted structure uses.
#[derive(Default)]
struct Emitter {
    charts: BTreeMap<String, Vec<String>>,
}

impl Emitter {
    fn chart(&mut self, c: &ChartRef) -> Result<String> {
        let coords = c.coords().to_vec();
        match self.charts.get(c.name()) {
            Some(existing) if *existing != coords => bail!("chart name `{}` is used for two coordinate lists", c.name()),
            _ => {
                self.charts.insert(c.name().to_string(), coords);
            }
        }
        Ok(c.name().to_string())
    }

    fn entries<K: Kind>(&mut self, t: &Alt<K>) -> Result<Entries> {
        self.chart(t.chart())?;
        Ok(t.entries().into_iter().collect())
    }

    fn map(&mut self, m: &SmoothMap) -> Result<MapDef> {
        Ok(MapDef {
            source: self.chart(m.source())?,
            target: self.chart(m.target())?,
            components: m.components().iter().map(|e| e.to_string()).collect(),
            section: m.section().map(|s| s.iter().map(|e| e.to_string()).collect()),
        })
    }

    fn groupoid(&mut self, g: &GroupoidModel, pair_base: Option<String>) -> Result<GroupoidDef> {
        let c = &g.composable;
        let t = &g.triple;
        Ok(GroupoidDef {
            base: self.chart(&g.base)?,
            total: self.chart(&g.total)?,
            alpha: self.map(&g.alpha)?,
            beta: self.map(&g.beta)?,
            iota: self.map(&g.iota)?,
            eps: self.map(&g.eps)?,
            composable: ComposableDef {
                chart: self.chart(&c.chart)?,
                pr1: self.map(&c.pr1)?,
                pr2: self.map(&c.pr2)?,
                mult: self.map(&c.mult)?,
                pair_chart: self.chart(&c.pair_chart)?,
                join: self.map(&c.join)?,
            },
            triple: TripleDef { chart: self.chart(&t.chart)?, q1: self.map(&t.q1)?, q2: self.map(&t.q2)?, q3: self.map(&t.q3)? },
            r: g.r.to_string(),
            theta: self.entries(&g.theta)?,
            omega: self.entries(&g.omega)?,
            omega0: self.entries(&g.omega0)?,
            pair_base: g.pair.as_ref().and(pair_base),
        })
    }

    fn suspended(&mut self, m: &SuspendedModel, of: &str) -> Result<SuspendedDef> {
        Ok(SuspendedDef {
            of: of.to_string(),
            total: self.chart(&m.total)?,
            base: self.chart(&m.base)?,
            alpha: self.map(&m.alpha)?,
            beta: self.map(&m.beta)?,
            composable: self.chart(&m.composable)?,
            pr1: self.map(&m.pr1)?,
            pr2: self.map(&m.pr2)?,
            mult: self.map(&m.mult)?,
            big_omega: self.entries(&m.big_omega)?,
            omega0: self.entries(&m.omega0)?,
            z: self.entries(&m.z)?,
            z0: self.entries(&m.z0)?,
        })
    }

    fn object(&mut self, o: &Object, of: &str) -> Result<Structure> {
        Ok(match o {
            Object::Multivector(v) => Structure::Multivector { chart: self.chart(v.chart())?, degree: v.degree(), entries: self.entries(v)? },
            Object::Jacobi(j) => Structure::Jacobi { chart: self.chart(j.chart())?, lambda: self.entries(&j.lambda)?, e: self.entries(&j.e)?, omega: self.entries(&j.omega)? },
            Object::Homogeneous(h) => Structure::Homogeneous {
                chart: self.chart(h.lambda.chart())?,
                lambda: self.entries(&h.lambda)?,
                omega: self.entries(&h.omega)?,
                z: self.entries(&h.z)?,
            },
            Object::Contact(c) => Structure::Contact { chart: self.chart(c.chart())?, theta: self.entries(&c.theta)?, omega: self.entries(&c.omega)? },
            Object::Groupoid(g) => Structure::Groupoid(Box::new(self.groupoid(g, Some(of.to_string()))?)),
            Object::Suspended(m) => Structure::Suspended(Box::new(self.suspended(m, of)?)),
            Object::Path(_) => bail!("paths are sampled and have no scenario rendering"),
        })
    }
}

/// The checks a derived structure is verified with by default.
fn default_checks(kind: &str, name: &str) -> Vec<Check> {
    let names: &[&str] = match kind {
        "jacobi" => &["twisted_jacobi", "poissonization"],
        "homogeneous" => &["homogeneous", "project_homogeneous"],
        "groupoid" => &["axioms", "multiplicativity", "properties", "block_formulas", "induced_base", "suspension", "base_coincidence"],
        "suspended" => &["suspension"],
        _ => &[],
    };
    names.iter().map(|c| Check::new(c, name)).collect()
}

fn closure<'a>(s: &'a Scenario, name: &'a str, out: &mut BTreeSet<&'a str>) {
    if out.insert(name) {
        if let Some(def) = s.structures.get(name) {
            for d in def.dependencies() {
                closure(s, d, out);
            }
        }
    }
}

/// A scenario holding `object`, everything it is built from, and the derived
/// structure named `object.construction` with its default checks and a
/// `derived` check that recomputes it.
pub fn derive(s: &Scenario, world: &World, object: &str, construction: &str, cfg: &SampleConfig) -> Result<Scenario> {
    if !s.structures.contains_key(object) {
        bail!("unresolved structure `{object}`");
    }
    let derived = construct(world, object, construction, cfg).map_err(|e| anyhow!(e))?;
    let name = format!("{object}.{construction}");
    let mut em = Emitter { charts: s.charts.clone() };
    let def = em.object(&derived, object)?;
    let mut keep = BTreeSet::new();
    closure(s, object, &mut keep);
    let mut structures: BTreeMap<String, Structure> = keep.into_iter().filter_map(|n| s.structures.get(n).map(|d| (n.to_string(), d.clone()))).collect();
    let k = def.kind();
    structures.insert(name.clone(), def);
    let mut checks = default_checks(k, &name);
    checks.push(Check { of: Some(object.to_string()), construction: Some(construction.to_string()), ..Check::new("derived", &name) });
    let used: BTreeSet<String> = charts_used(&structures);
    em.charts.retain(|c, _| used.contains(c));
    Ok(Scenario { name: Some(name), charts: em.charts, structures, checks })
}

fn maps(d: &Structure) -> Vec<&MapDef> {
    match d {
        Structure::Groupoid(g) => {
            vec![&g.alpha, &g.beta, &g.iota, &g.eps, &g.composable.pr1, &g.composable.pr2, &g.composable.mult, &g.composable.join, &g.triple.q1, &g.triple.q2, &g.triple.q3]
        }
        Structure::Suspended(m) => vec![&m.alpha, &m.beta, &m.pr1, &m.pr2, &m.mult],
        _ => vec![],
    }
}

/// Chart names referenced by the structures.
fn charts_used(structures: &BTreeMap<String, Structure>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for d in structures.values() {
        match d {
            Structure::Jacobi { chart, .. } | Structure::Contact { chart, .. } | Structure::Homogeneous { chart, .. } | Structure::Multivector { chart, .. } => {
                out.insert(chart.clone());
            }
            Structure::Groupoid(g) => {
                out.extend([g.base.clone(), g.total.clone(), g.composable.chart.clone(), g.composable.pair_chart.clone(), g.triple.chart.clone()]);
            }
            Structure::Suspended(m) => {
                out.extend([m.total.clone(), m.base.clone(), m.composable.clone()]);
            }
            Structure::PairGroupoid { .. } | Structure::Apath(_) => {}
        }
        for m in maps(d) {
            out.extend([m.source.clone(), m.target.clone()]);
        }
    }
    out
}

/// Componentwise comparison of a stored object with a recomputed one.
pub fn compare(report: &mut Report, stored: &Object, fresh: &Object, cfg: &SampleConfig) {
    fn eq<K: Kind>(r: &mut Report, label: &str, a: &Alt<K>, b: &Alt<K>, cfg: &SampleConfig) {
        if a.chart().coords() != b.chart().coords() || a.degree() != b.degree() {
            r.exact(label, false, format!("shape differs: {} vs {}", a.chart().name(), b.chart().name()));
        } else {
            r.tensor_eq(label, a, &b.rechart(a.chart()), cfg);
        }
    }
    fn map_eq(r: &mut Report, label: &str, a: &SmoothMap, b: &SmoothMap, cfg: &SampleConfig) {
        if a.source().coords() != b.source().coords() || a.target().coords() != b.target().coords() {
            r.exact(label, false, "charts differ");
            return;
        }
        let diffs: Vec<(String, twistgeom::Expr)> =
            a.components().iter().zip(b.components()).enumerate().map(|(i, (x, y))| (a.target().coord(i).to_string(), x - &y.rechart(a.source()))).collect();
        r.all_zero(label, &diffs, cfg);
    }
    match (stored, fresh) {
        (Object::Multivector(a), Object::Multivector(b)) => eq(report, "components", a, b, cfg),
        (Object::Jacobi(a), Object::Jacobi(b)) => {
            eq(report, "Λ", &a.lambda, &b.lambda, cfg);
            eq(report, "E", &a.e, &b.e, cfg);
            eq(report, "ω", &a.omega, &b.omega, cfg);
        }
        (Object::Homogeneous(a), Object::Homogeneous(b)) => {
            eq(report, "Λ", &a.lambda, &b.lambda, cfg);
            eq(report, "ω", &a.omega, &b.omega, cfg);
            eq(report, "Z", &a.z, &b.z, cfg);
        }
        (Object::Groupoid(a), Object::Groupoid(b)) => {
            for (l, x, y) in [
                ("α", &a.alpha, &b.alpha),
                ("β", &a.beta, &b.beta),
                ("ι", &a.iota, &b.iota),
                ("ε", &a.eps, &b.eps),
                ("pr₁", &a.composable.pr1, &b.composable.pr1),
                ("pr₂", &a.composable.pr2, &b.composable.pr2),
                ("m", &a.composable.mult, &b.composable.mult),
                ("join", &a.composable.join, &b.composable.join),
                ("q₁", &a.triple.q1, &b.triple.q1),
                ("q₂", &a.triple.q2, &b.triple.q2),
                ("q₃", &a.triple.q3, &b.triple.q3),
            ] {
                map_eq(report, l, x, y, cfg);
            }
            if a.total.coords() == b.total.coords() {
                report.zero("r", &(&a.r - &b.r.rechart(&a.total)), cfg);
            }
            eq(report, "θ", &a.theta, &b.theta, cfg);
            eq(report, "ω", &a.omega, &b.omega, cfg);
            eq(report, "ω₀", &a.omega0, &b.omega0, cfg);
        }
        (Object::Suspended(a), Object::Suspended(b)) => {
            for (l, x, y) in [("α̃", &a.alpha, &b.alpha), ("β̃", &a.beta, &b.beta), ("pr̃₁", &a.pr1, &b.pr1), ("pr̃₂", &a.pr2, &b.pr2), ("m̃", &a.mult, &b.mult)] {
                map_eq(report, l, x, y, cfg);
            }
            eq(report, "Ω̃", &a.big_omega, &b.big_omega, cfg);
            eq(report, "ω̃₀", &a.omega0, &b.omega0, cfg);
            eq(report, "Z", &a.z, &b.z, cfg);
            eq(report, "Z₀", &a.z0, &b.z0, cfg);
        }
        (a, b) => {
            report.exact("kind", false, format!("stored {} but the construction gives {}", kind(a), kind(b)));
        }
    }
}
