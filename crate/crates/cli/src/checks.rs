//! Named check suites over scenario objects.

use anyhow::{bail, Result};
use twistgeom::apath::{anchor_residual, cocycle_integral, concatenate, reparameterize, APath};
use twistgeom::contact::{check_contact, check_reeb_bivector, contact_poissonization_check, solve};
use twistgeom::groupoid::{
    base_coincidence_check, check_axioms, check_block_formulas, check_multiplicativity, check_properties, check_suspension, induced_base_structure,
    suspend, GroupoidModel,
};
use twistgeom::jacobi::{
    check_algebroid, check_homogeneous, check_twisted_jacobi, jacobi_anomaly, poissonize, project_along_e, project_homogeneous, HomTwistedPoisson,
    TwistedJacobi,
};
use twistgeom::tensor::{Form, PairForm};
use twistgeom::{Chart, ChartRef, Expr, Report, SampleConfig, Q};

use crate::derive::{compare, construct};
use crate::scenario::{Check, Scenario};
use crate::world::{form, kind, Object, World};

/// Default tolerance of the numeric path checks.
pub const PATH_TOL: f64 = 1e-8;

/// Checks available for each structure kind. `derived` applies to every kind.
pub fn supported(kind: &str) -> &'static [&'static str] {
    match kind {
        "jacobi" => &["twisted_jacobi", "algebroid", "anomaly", "poissonization", "project_along_e"],
        "contact" => &["contact", "reeb_bivector", "twisted_jacobi", "algebroid", "anomaly", "poissonization", "contact_poissonization", "project_along_e"],
        "homogeneous" => &["homogeneous", "project_homogeneous"],
        "multivector" => &[],
        "groupoid" => &["axioms", "multiplicativity", "properties", "block_formulas", "induced_base", "algebroid_isomorphism", "suspension", "base_coincidence"],
        "suspended" => &["suspension"],
        "apath" => &["anchor", "cocycle", "concatenation", "reparameterization"],
        _ => &[],
    }
}

/// Every check names a defined structure of a kind that supports it, with the
/// parameters it needs.
pub fn validate(s: &Scenario) -> Result<()> {
    for (k, c) in s.checks.iter().enumerate() {
        let at = format!("check #{k} (`{}`)", c.display_name());
        let Some(def) = s.structures.get(&c.structure) else {
            bail!("{at}: unresolved structure `{}`", c.structure);
        };
        let kind = def.kind();
        if c.check == "derived" {
            match (&c.of, &c.construction) {
                (Some(of), Some(_)) if s.structures.contains_key(of) => {}
                (Some(of), Some(_)) => bail!("{at}: unresolved structure `{of}`"),
                _ => bail!("{at}: `derived` needs `of` and `construction`"),
            }
            continue;
        }
        if !supported(kind).contains(&c.check.as_str()) {
            bail!("{at}: unknown check `{}` for a {kind}; expected one of {:?} or `derived`", c.check, supported(kind));
        }
        match c.check.as_str() {
            "cocycle" if c.expected.is_none() => bail!("{at}: `cocycle` needs `expected`"),
            "concatenation" => match c.other.as_deref().map(|o| s.structures.get(o).map(|d| d.kind())) {
                Some(Some("apath")) => {}
                Some(_) => bail!("{at}: `other` must name an apath"),
                None => bail!("{at}: `concatenation` needs `other`"),
            },
            "reparameterization" if c.tau.is_none() => bail!("{at}: `reparameterization` needs `tau`"),
            _ => {}
        }
    }
    Ok(())
}

/// Runs one check. Failed preconditions become an error item; the suite goes on.
pub fn run(world: &World, c: &Check, cfg: &SampleConfig) -> Report {
    match dispatch(world, c, cfg) {
        Ok(r) => r,
        Err(e) => {
            let mut r = Report::new(c.display_name());
            r.push(twistgeom::CheckItem { label: c.check.clone(), verdict: twistgeom::ItemVerdict::Error(e), residual: 0.0, detail: None });
            r
        }
    }
}

type Outcome = std::result::Result<Report, String>;

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn dispatch(world: &World, c: &Check, cfg: &SampleConfig) -> Outcome {
    let object = world.get(&c.structure)?;
    if c.check == "derived" {
        let (of, construction) = (c.of.as_deref().unwrap_or_default(), c.construction.as_deref().unwrap_or_default());
        let fresh = construct(world, of, construction, cfg)?;
        let mut r = Report::new(format!("{} = {construction}({of})", c.structure));
        compare(&mut r, object, &fresh, cfg);
        return Ok(r);
    }
    match object {
        Object::Jacobi(_) | Object::Contact(_) if ["twisted_jacobi", "algebroid", "anomaly", "poissonization", "project_along_e"].contains(&c.check.as_str()) => {
            jacobi_check(&world.jacobi_of(&c.structure)?, c, cfg)
        }
        Object::Contact(ct) => match c.check.as_str() {
            "contact" => Ok(check_contact(ct, cfg)),
            "reeb_bivector" => Ok(check_reeb_bivector(ct, &solve(ct).map_err(err)?, cfg)),
            "contact_poissonization" => contact_poissonization_check(ct, cfg).map_err(err),
            other => Err(format!("unknown check `{other}`")),
        },
        Object::Homogeneous(h) => homogeneous_check(h, c, cfg),
        Object::Groupoid(g) => groupoid_check(g, c, cfg),
        Object::Suspended(m) => Ok(check_suspension(m, cfg)),
        Object::Path(p) => path_check(world, p, c),
        o => Err(format!("no check `{}` for a {}", c.check, kind(o))),
    }
}

fn parse(text: &str, chart: &ChartRef) -> std::result::Result<Expr, String> {
    Expr::parse(text, chart).map_err(err)
}

fn rational(text: Option<&str>) -> std::result::Result<Q, String> {
    let chart = Chart::new("constant", &["c"]).map_err(err)?;
    parse(text.unwrap_or("0"), &chart)?.as_constant().ok_or_else(|| format!("`{}` is not a rational constant", text.unwrap_or("0")))
}

fn coordinate(chart: &ChartRef, name: Option<&str>, field: &twistgeom::tensor::MultiVector, what: &str) -> std::result::Result<usize, String> {
    match name {
        Some(n) => chart.index_of(n).ok_or_else(|| format!("no coordinate `{n}` on `{}`", chart.name())),
        None => field.as_coordinate_field().ok_or_else(|| format!("{what} = {field} is not a coordinate field; give `coord`")),
    }
}

fn sections(c: &Check, chart: &ChartRef) -> std::result::Result<Vec<PairForm>, String> {
    match &c.sections {
        Some(list) => list
            .iter()
            .map(|s| {
                let f = form(chart, 1, &s.form).map_err(err)?;
                Ok(PairForm::of_degree_one(f, parse(&s.function, chart)?))
            })
            .collect(),
        None => {
            let mut out: Vec<PairForm> = (0..chart.dim()).map(|i| PairForm::of_degree_one(Form::basis(chart, &[i]), Expr::zero(chart))).collect();
            out.push(PairForm::of_degree_one(Form::zero(chart, 1), Expr::one(chart)));
            Ok(out)
        }
    }
}

fn jacobi_check(j: &TwistedJacobi, c: &Check, cfg: &SampleConfig) -> Outcome {
    let chart = j.chart().clone();
    match c.check.as_str() {
        "twisted_jacobi" => Ok(check_twisted_jacobi(j, cfg)),
        "algebroid" => Ok(check_algebroid(j, &sections(c, &chart)?, cfg)),
        "anomaly" => {
            let triples: Vec<[String; 3]> = match &c.triples {
                Some(t) => t.clone(),
                None if chart.dim() >= 3 => vec![[0, 1, 2].map(|i| chart.coord(i).to_string())],
                None => return Err("`anomaly` needs `triples` on charts of dimension below 3".into()),
            };
            let mut r = Report::new("bracket anomaly");
            for t in &triples {
                let [f, g, h] = [parse(&t[0], &chart)?, parse(&t[1], &chart)?, parse(&t[2], &chart)?];
                let (lhs, rhs) = jacobi_anomaly(j, &f, &g, &h);
                r.zero(format!("({}, {}, {})", t[0], t[1], t[2]), &(&lhs - &rhs), cfg);
            }
            Ok(r)
        }
        "poissonization" => {
            let h = poissonize(j);
            let mut r = Report::new("poissonization");
            r.merge("homogeneous", check_homogeneous(&h, cfg));
            let ext = h.lambda.chart().clone();
            let s = ext.dim() - 1;
            let (j0, rep) = project_homogeneous(&h, s, &rational(None)?, &parse(&format!("exp({})", ext.coord(s)), &ext)?, cfg).map_err(err)?;
            r.merge("projection", rep);
            let same = j0 == *j;
            r.exact("projection at s = 0 recovers the structure", same, if same { "componentwise equal".into() } else { format!("got ({}, {}, {})", j0.lambda, j0.e, j0.omega) });
            Ok(r)
        }
        "project_along_e" => {
            let i = coordinate(&chart, c.coord.as_deref(), &j.e, "E")?;
            Ok(project_along_e(j, i, &rational(c.value.as_deref())?, cfg).map_err(err)?.report)
        }
        other => Err(format!("unknown check `{other}`")),
    }
}

fn homogeneous_check(h: &HomTwistedPoisson, c: &Check, cfg: &SampleConfig) -> Outcome {
    match c.check.as_str() {
        "homogeneous" => Ok(check_homogeneous(h, cfg)),
        "project_homogeneous" => {
            let chart = h.lambda.chart().clone();
            let i = coordinate(&chart, c.coord.as_deref(), &h.z, "Z")?;
            let value = c.value.as_deref().unwrap_or("0");
            let factor = c.factor.clone().unwrap_or_else(|| format!("exp({} - ({value}))", chart.coord(i)));
            let (_, r) = project_homogeneous(h, i, &rational(Some(value))?, &parse(&factor, &chart)?, cfg).map_err(err)?;
            Ok(r)
        }
        other => Err(format!("unknown check `{other}`")),
    }
}

fn groupoid_check(g: &GroupoidModel, c: &Check, cfg: &SampleConfig) -> Outcome {
    match c.check.as_str() {
        "axioms" => Ok(check_axioms(g, cfg)),
        "multiplicativity" => Ok(check_multiplicativity(g, cfg)),
        "properties" => check_properties(g, cfg).map_err(err),
        "block_formulas" => check_block_formulas(g, cfg).map_err(err),
        "induced_base" => Ok(check_twisted_jacobi(&induced_base_structure(g).map_err(err)?, cfg)),
        "algebroid_isomorphism" => twistgeom::groupoid::check_algebroid_isomorphism(g, &sections(c, &g.base)?, cfg).map_err(err),
        "suspension" => Ok(suspend(g, cfg).map_err(err)?.report),
        "base_coincidence" => base_coincidence_check(g, cfg).map_err(err),
        other => Err(format!("unknown check `{other}`")),
    }
}

fn path_of<'a>(world: &'a World, name: &str) -> std::result::Result<&'a APath, String> {
    match world.get(name)? {
        Object::Path(p) => Ok(p),
        o => Err(format!("`{name}` is a {}, not an apath", kind(o))),
    }
}

fn path_check(world: &World, p: &APath, c: &Check) -> Outcome {
    let tol = c.tol.unwrap_or(PATH_TOL);
    let mut r = Report::new(c.check.clone());
    match c.check.as_str() {
        "anchor" => {
            let v = anchor_residual(p).map_err(err)?;
            r.numeric("max |ρ(c) − γ′|", v <= tol, v, None, Some(format!("tolerance {tol:e}")));
        }
        "cocycle" => {
            let v = cocycle_integral(p).map_err(err)?;
            let want = c.expected.unwrap_or_default();
            r.numeric(format!("r(c) = {want}"), (v - want).abs() <= tol, (v - want).abs(), None, Some(format!("r(c) = {v:.12}, tolerance {tol:e}")));
        }
        "concatenation" => {
            let q = path_of(world, c.other.as_deref().unwrap_or_default())?;
            let whole = cocycle_integral(&concatenate(p, q).map_err(err)?).map_err(err)?;
            let parts = cocycle_integral(p).map_err(err)? + cocycle_integral(q).map_err(err)?;
            let d = (whole - parts).abs();
            r.numeric("r(c₀⊙c₁) − r(c₀) − r(c₁)", d <= tol, d, None, Some(format!("{whole:.12} vs {parts:.12}")));
        }
        "reparameterization" => {
            let time = Chart::new("time", &["t"]).map_err(err)?;
            let tau = parse(c.tau.as_deref().unwrap_or("t"), &time)?;
            let moved = cocycle_integral(&reparameterize(p, &time, &tau).map_err(err)?).map_err(err)?;
            let v = cocycle_integral(p).map_err(err)?;
            let d = (moved - v).abs();
            r.numeric(format!("r(c∘τ) − r(c), τ = {tau}"), d <= tol, d, None, Some(format!("{moved:.12} vs {v:.12}")));
        }
        other => return Err(format!("unknown check `{other}`")),
    }
    Ok(r)
}
