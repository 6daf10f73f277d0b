//! Lie groupoids on product charts carrying a multiplicative twisted contact
//! form: the pair-groupoid model `Γ₀×Γ₀×ℝ`, groupoid axioms, multiplicativity,
//! the invariant properties of the structure and the induced base structure.

use std::thread;

use crate::chart::{Chart, ChartRef};
use crate::contact::{check_contact, solve, ContactData, TwistedContact};
use crate::error::{GeomError, Result};
use crate::expr::{Expr, SampleConfig};
use crate::jacobi::{algebroid_anchor, algebroid_bracket, bracket, hamiltonian, TwistedJacobi};
use crate::numeric;
use crate::report::Report;
use crate::tensor::{sharp_vector, Form, MultiVector, PairForm, SmoothMap};

mod suspension;

pub use suspension::{base_coincidence_check, check_suspension, invert_two_form, suspend, unsuspend, SuspendedModel};

/// Composable pairs `Γ₂`. `join` sends a point `(g,h)` of `Γ×Γ` with
/// `α(g) = β(h)` to its coordinates on `Γ₂`.
#[derive(Clone)]
pub struct Composable {
    pub chart: ChartRef,
    pub pr1: SmoothMap,
    pub pr2: SmoothMap,
    pub mult: SmoothMap,
    pub pair_chart: ChartRef,
    pub join: SmoothMap,
}

/// Composable triples, free coordinates with the three factors `q₁, q₂, q₃`.
#[derive(Clone)]
pub struct Triple {
    pub chart: ChartRef,
    pub q1: SmoothMap,
    pub q2: SmoothMap,
    pub q3: SmoothMap,
}

/// Block layout of the pair model: `Γ = Γ₀×Γ₀×ℝ` with `x` (target) block
/// first, `y` (source) block second and `t` last.
#[derive(Clone)]
pub struct PairData {
    pub base_contact: TwistedContact,
    pub base_data: ContactData,
}

#[derive(Clone)]
pub struct GroupoidModel {
    pub base: ChartRef,
    pub total: ChartRef,
    pub alpha: SmoothMap,
    pub beta: SmoothMap,
    pub iota: SmoothMap,
    pub eps: SmoothMap,
    pub composable: Composable,
    pub triple: Triple,
    pub r: Expr,
    pub theta: Form,
    pub omega: Form,
    pub omega0: Form,
    pub pair: Option<PairData>,
}

fn vars(chart: &ChartRef, range: std::ops::Range<usize>) -> Vec<Expr> {
    range.map(|i| Expr::var(chart, i)).collect()
}

fn concat(parts: &[Vec<Expr>]) -> Vec<Expr> {
    parts.concat()
}

/// `(f₁, …, f_k)` into a chart whose coordinates are the concatenated targets.
pub fn tuple(target: &ChartRef, parts: &[&SmoothMap]) -> Result<SmoothMap> {
    let source = parts.first().ok_or_else(|| GeomError::Precondition("empty tuple".into()))?.source();
    let comps = parts.iter().flat_map(|m| m.components().iter().cloned()).collect();
    SmoothMap::new(source, target, comps)
}

/// `e^{−f}`, for exponents the expression class supports.
fn exp_neg(f: &Expr) -> Result<Expr> {
    (-f).exp()
}

/// One report item stating that two maps agree componentwise.
fn maps_agree(report: &mut Report, label: &str, f: Result<SmoothMap>, g: Result<SmoothMap>, cfg: &SampleConfig) -> bool {
    match (f, g) {
        (Ok(f), Ok(g)) => {
            let target = f.target().clone();
            let diffs: Vec<(String, Expr)> = f.components().iter().zip(g.components()).enumerate().map(|(i, (a, b))| (target.coord(i).to_string(), a - b)).collect();
            report.all_zero(label, &diffs, cfg)
        }
        (Err(e), _) | (_, Err(e)) => {
            report.error(label, &e);
            false
        }
    }
}

impl GroupoidModel {
    /// `join∘(a, b)`, after checking that `a` and `b` are composable.
    pub fn compose_pair(&self, a: &SmoothMap, b: &SmoothMap) -> Result<SmoothMap> {
        let c = &self.composable;
        let j = tuple(&c.pair_chart, &[a, b])?.then(&c.join)?;
        if j.then(&c.pr1)?.components() != a.components() || j.then(&c.pr2)?.components() != b.components() {
            return Err(GeomError::Precondition("maps are not composable: join does not recover them".into()));
        }
        Ok(j)
    }

    /// `m∘(a, b)`.
    pub fn product(&self, a: &SmoothMap, b: &SmoothMap) -> Result<SmoothMap> {
        self.compose_pair(a, b)?.then(&self.composable.mult)
    }

    pub fn contact(&self) -> Result<TwistedContact> {
        TwistedContact::new(self.theta.clone(), self.omega.clone())
    }

    /// Reeb field and bivector of `(θ, ω)` on `Γ`.
    pub fn contact_data(&self) -> Result<ContactData> {
        solve(&self.contact()?)
    }

    pub fn jacobi(&self) -> Result<TwistedJacobi> {
        let d = self.contact_data()?;
        TwistedJacobi::new(d.lambda, d.e, self.omega.clone())
    }

    fn pair_data(&self) -> Result<&PairData> {
        self.pair.as_ref().ok_or_else(|| GeomError::Precondition("block models exist for the pair groupoid only".into()))
    }

    /// `0 + E₀ + 0`: `E₀` on the source block.
    pub fn left_invariant_reeb(&self) -> Result<MultiVector> {
        let p = self.pair_data()?;
        let n = self.base.dim();
        p.base_data.e.transport(&self.total, &(n..2 * n).collect::<Vec<_>>(), &vars(&self.total, n..2 * n))
    }

    /// `E^r = −ι_*E^l`, which is `−E₀ + 0 + 0`.
    pub fn right_invariant_reeb(&self) -> Result<MultiVector> {
        Ok(-self.iota.pushforward(&self.left_invariant_reeb()?)?)
    }

    /// `−e^rΛ₀ + Λ₀ + 0` on the `Γ₀×Γ₀` blocks.
    pub fn block_bivector(&self) -> Result<MultiVector> {
        let p = self.pair_data()?;
        let n = self.base.dim();
        let on = |r: std::ops::Range<usize>| p.base_data.lambda.transport(&self.total, &r.clone().collect::<Vec<_>>(), &vars(&self.total, r));
        let er = self.r.exp()?;
        Ok(&on(n..2 * n)? - &on(0..n)?.scale(&er))
    }

    /// `∂r∧(E^l − e^rE^r)`, the part of `Λ_Γ` forced by `Λ_Γ^#(dr) = E^l − e^rE^r`.
    pub fn block_mixed(&self) -> Result<MultiVector> {
        let t = MultiVector::coordinate_field(&self.total, self.total.dim() - 1);
        let er = self.r.exp()?;
        Ok(t.wedge(&(&self.left_invariant_reeb()? - &self.right_invariant_reeb()?.scale(&er))))
    }
}

/// The pair groupoid of a twisted contact base with `θ = α^*θ₀ − e^{−t}β^*θ₀`,
/// `ω = α^*ω₀ − e^{−t}β^*ω₀` and `r = t`.
pub fn build_pair_groupoid(c0: &TwistedContact, cfg: &SampleConfig) -> Result<GroupoidModel> {
    let pre = check_contact(c0, cfg);
    if !pre.passed() {
        let why = pre.first_failure().map_or_else(String::new, |i| i.label.clone());
        return Err(GeomError::Precondition(format!("base is not twisted contact: {why}")));
    }
    let base_data = solve(c0)?;
    let base = c0.chart().clone();
    let n = base.dim();
    let name = base.name();
    let line = |coords: &[&str]| Chart::new("R", coords);
    let total = Chart::product(format!("{name}x{name}xR"), &[&*base, &*base, &*line(&["t"])?])?;
    let t = Expr::var(&total, 2 * n);

    let alpha = SmoothMap::new(&total, &base, vars(&total, n..2 * n))?;
    let beta = SmoothMap::new(&total, &base, vars(&total, 0..n))?;
    let diag = concat(&[vars(&base, 0..n), vars(&base, 0..n), vec![Expr::zero(&base)]]);
    let eps = SmoothMap::new(&base, &total, diag.clone())?;
    let alpha = alpha.with_section(diag.clone())?;
    let beta = beta.with_section(diag)?;
    let swap = concat(&[vars(&total, n..2 * n), vars(&total, 0..n), vec![-&t]]);
    let iota = SmoothMap::new(&total, &total, swap.clone())?.with_section(swap)?;

    let g2 = Chart::product(format!("{name}2"), &[&*base, &*base, &*base, &*line(&["t", "s"])?])?;
    let (t2, s2) = (Expr::var(&g2, 3 * n), Expr::var(&g2, 3 * n + 1));
    let pr1 = SmoothMap::new(&g2, &total, concat(&[vars(&g2, 0..2 * n), vec![t2.clone()]]))?;
    let pr2 = SmoothMap::new(&g2, &total, concat(&[vars(&g2, n..3 * n), vec![s2.clone()]]))?;
    let mult = SmoothMap::new(&g2, &total, concat(&[vars(&g2, 0..n), vars(&g2, 2 * n..3 * n), vec![&t2 + &s2]]))?;
    let pair_chart = Chart::product(format!("{name}GxG"), &[&*total, &*total])?;
    let h0 = 2 * n + 1;
    let join = SmoothMap::new(
        &pair_chart,
        &g2,
        concat(&[vars(&pair_chart, 0..2 * n), vars(&pair_chart, h0 + n..h0 + 2 * n), vec![Expr::var(&pair_chart, 2 * n), Expr::var(&pair_chart, h0 + 2 * n)]]),
    )?;

    let g3 = Chart::product(format!("{name}3"), &[&*base, &*base, &*base, &*base, &*line(&["t", "s", "u"])?])?;
    let q = |k: usize| SmoothMap::new(&g3, &total, concat(&[vars(&g3, k * n..(k + 2) * n), vec![Expr::var(&g3, 4 * n + k)]]));
    let triple = Triple { chart: g3.clone(), q1: q(0)?, q2: q(1)?, q3: q(2)? };

    let emt = exp_neg(&t)?;
    let theta = &alpha.pullback(&c0.theta)? - &beta.pullback(&c0.theta)?.scale(&emt);
    let omega = &alpha.pullback(&c0.omega)? - &beta.pullback(&c0.omega)?.scale(&emt);
    Ok(GroupoidModel {
        base,
        total,
        alpha,
        beta,
        iota,
        eps,
        composable: Composable { chart: g2, pr1, pr2, mult, pair_chart, join },
        triple,
        r: t,
        theta,
        omega,
        omega0: c0.omega.clone(),
        pair: Some(PairData { base_contact: c0.clone(), base_data }),
    })
}

/// Groupoid axioms as substitution identities, and `ω = α^*ω₀ − e^{−r}β^*ω₀`.
pub fn check_axioms(g: &GroupoidModel, cfg: &SampleConfig) -> Report {
    let mut report = Report::new("groupoid axioms");
    let id_base = SmoothMap::identity(&g.base);
    let id = SmoothMap::identity(&g.total);
    let c = &g.composable;
    maps_agree(&mut report, "α∘ε = id", g.eps.then(&g.alpha), Ok(id_base.clone()), cfg);
    maps_agree(&mut report, "β∘ε = id", g.eps.then(&g.beta), Ok(id_base), cfg);
    maps_agree(&mut report, "ι∘ι = id", g.iota.then(&g.iota), Ok(id.clone()), cfg);
    maps_agree(&mut report, "α∘ι = β", g.iota.then(&g.alpha), Ok(g.beta.clone()), cfg);
    maps_agree(&mut report, "β∘ι = α", g.iota.then(&g.beta), Ok(g.alpha.clone()), cfg);
    maps_agree(&mut report, "α∘pr₁ = β∘pr₂", c.pr1.then(&g.alpha), c.pr2.then(&g.beta), cfg);
    maps_agree(&mut report, "join∘(pr₁,pr₂) = id", tuple(&c.pair_chart, &[&c.pr1, &c.pr2]).and_then(|m| m.then(&c.join)), Ok(SmoothMap::identity(&c.chart)), cfg);
    maps_agree(&mut report, "β∘m = β∘pr₁", c.mult.then(&g.beta), c.pr1.then(&g.beta), cfg);
    maps_agree(&mut report, "α∘m = α∘pr₂", c.mult.then(&g.alpha), c.pr2.then(&g.alpha), cfg);

    let unit_beta = g.beta.then(&g.eps);
    let unit_alpha = g.alpha.then(&g.eps);
    maps_agree(&mut report, "m(ε∘β, id) = id", unit_beta.clone().and_then(|u| g.product(&u, &id)), Ok(id.clone()), cfg);
    maps_agree(&mut report, "m(id, ε∘α) = id", unit_alpha.clone().and_then(|u| g.product(&id, &u)), Ok(id.clone()), cfg);
    maps_agree(&mut report, "m(ι, id) = ε∘α", g.product(&g.iota, &id), unit_alpha, cfg);
    maps_agree(&mut report, "m(id, ι) = ε∘β", g.product(&id, &g.iota), unit_beta, cfg);

    let t = &g.triple;
    maps_agree(&mut report, "triple: α∘q₁ = β∘q₂", t.q1.then(&g.alpha), t.q2.then(&g.beta), cfg);
    maps_agree(&mut report, "triple: α∘q₂ = β∘q₃", t.q2.then(&g.alpha), t.q3.then(&g.beta), cfg);
    let left = g.product(&t.q1, &t.q2).and_then(|gh| g.product(&gh, &t.q3));
    let right = g.product(&t.q2, &t.q3).and_then(|hk| g.product(&t.q1, &hk));
    maps_agree(&mut report, "m(m(q₁,q₂),q₃) = m(q₁,m(q₂,q₃))", left, right, cfg);

    match twisting_residual(g) {
        Ok(res) => {
            report.tensor_zero("ω − α^*ω₀ + e^{−r}β^*ω₀", &res, cfg);
        }
        Err(e) => report.error("ω − α^*ω₀ + e^{−r}β^*ω₀", &e),
    }
    report
}

fn twisting_residual(g: &GroupoidModel) -> Result<Form> {
    let emr = exp_neg(&g.r)?;
    Ok(&(&g.omega - &g.alpha.pullback(&g.omega0)?) + &g.beta.pullback(&g.omega0)?.scale(&emr))
}

/// `m^*F − pr₂^*(e^{−r})pr₁^*F − pr₂^*F` on composable pairs.
fn multiplicative_residual(g: &GroupoidModel, f: &Form) -> Result<Form> {
    let c = &g.composable;
    let weight = exp_neg(&c.pr2.pull(&g.r)?)?;
    Ok(&(&c.mult.pullback(f)? - &c.pr1.pullback(f)?.scale(&weight)) - &c.pr2.pullback(f)?)
}

/// Multiplicativity of `θ`, additivity of `r` and multiplicativity of `ω`.
pub fn check_multiplicativity(g: &GroupoidModel, cfg: &SampleConfig) -> Report {
    let mut report = Report::new("multiplicativity");
    match multiplicative_residual(g, &g.theta) {
        Ok(res) => {
            report.tensor_zero("m^*θ − pr₂^*(e^{−r})pr₁^*θ − pr₂^*θ", &res, cfg);
        }
        Err(e) => report.error("m^*θ − pr₂^*(e^{−r})pr₁^*θ − pr₂^*θ", &e),
    }
    let c = &g.composable;
    match (c.mult.pull(&g.r), c.pr1.pull(&g.r), c.pr2.pull(&g.r)) {
        (Ok(m), Ok(a), Ok(b)) => {
            report.zero("r∘m − r∘pr₁ − r∘pr₂", &(&(&m - &a) - &b), cfg);
        }
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => report.error("r∘m − r∘pr₁ − r∘pr₂", &e),
    }
    match multiplicative_residual(g, &g.omega) {
        Ok(res) => {
            report.tensor_zero("m^*ω − pr₂^*(e^{−r})pr₁^*ω − pr₂^*ω", &res, cfg);
        }
        Err(e) => report.error("m^*ω − pr₂^*(e^{−r})pr₁^*ω − pr₂^*ω", &e),
    }
    report
}

/// Volume of `(θ, ω)` on `Γ`, and the Reeb field and bivector against the
/// block formulas of the pair model.
pub fn check_block_formulas(g: &GroupoidModel, cfg: &SampleConfig) -> Result<Report> {
    let mut report = Report::new("pair-groupoid contact structure");
    report.merge("volume", check_contact(&g.contact()?, cfg));
    let d = g.contact_data()?;
    for a in &d.assumptions {
        report.assume(format!("pivot {a}"));
    }
    report.tensor_eq("E_Γ = 0 + E₀ + 0", &d.e, &g.left_invariant_reeb()?, cfg);
    let t = g.total.dim() - 1;
    let (mut pure, mut mixed) = (MultiVector::zero(&g.total, 2), MultiVector::zero(&g.total, 2));
    for (m, e) in d.lambda.nonzero() {
        if m & (1 << t) == 0 {
            pure.set(m, e.clone());
        } else {
            mixed.set(m, e.clone());
        }
    }
    report.tensor_eq("Λ_Γ on Γ₀×Γ₀ = −e^rΛ₀ + Λ₀ + 0", &pure, &g.block_bivector()?, cfg);
    report.tensor_eq("Λ_Γ along ∂r = ∂r∧(E^l − e^rE^r)", &mixed, &g.block_mixed()?, cfg);
    Ok(report)
}

fn guarded(label: &str, f: impl FnOnce() -> Result<Report>) -> Report {
    f().unwrap_or_else(|e| {
        let mut r = Report::new(label);
        r.error(label, &e);
        r
    })
}

/// The invariant properties of an `r`-multiplicative twisted contact groupoid,
/// one sub-report per property, run concurrently.
pub fn check_properties(g: &GroupoidModel, cfg: &SampleConfig) -> Result<Report> {
    let d = g.contact_data()?;
    let j = TwistedJacobi::new(d.lambda.clone(), d.e.clone(), g.omega.clone())?;
    let parts: Vec<Report> = thread::scope(|s| {
        let tasks: Vec<(&str, Box<dyn FnOnce() -> Result<Report> + Send + '_>)> = vec![
            ("i", Box::new(|| property_i(g, cfg))),
            ("ii", Box::new(|| property_ii(g, cfg))),
            ("iii", Box::new(|| property_iii(g, cfg))),
            ("iv", Box::new(|| property_iv(g, &j, cfg))),
            ("v", Box::new(|| property_v(g, &j, cfg))),
            ("vi", Box::new(|| property_vi(g, &j, cfg))),
            ("viii", Box::new(|| property_viii(g, &j, cfg))),
        ];
        let handles: Vec<_> = tasks.into_iter().map(|(name, f)| (name, s.spawn(move || guarded(name, f)))).collect();
        handles.into_iter().map(|(_, h)| h.join().expect("property thread")).collect()
    });
    let mut report = Report::new("contact groupoid properties");
    for a in &d.assumptions {
        report.assume(format!("pivot {a}"));
    }
    report.assume("base simply connected (not checkable on a chart)");
    report.note("vii: only the block-form invariant fields are checked; the characterization of all of them is assumed");
    for (name, part) in ["i", "ii", "iii", "iv", "v", "vi", "viii"].into_iter().zip(parts) {
        report.merge(name, part);
    }
    Ok(report)
}

fn property_i(g: &GroupoidModel, cfg: &SampleConfig) -> Result<Report> {
    let mut r = Report::new("i");
    let c = &g.composable;
    r.zero("r∘m − r∘pr₁ − r∘pr₂", &(&(&c.mult.pull(&g.r)? - &c.pr1.pull(&g.r)?) - &c.pr2.pull(&g.r)?), cfg);
    r.zero("r∘ε", &g.eps.pull(&g.r)?, cfg);
    r.zero("r∘ι + r", &(&g.iota.pull(&g.r)? + &g.r), cfg);
    Ok(r)
}

fn property_ii(g: &GroupoidModel, cfg: &SampleConfig) -> Result<Report> {
    let mut r = Report::new("ii");
    r.tensor_zero("ι^*θ + e^rθ", &(&g.iota.pullback(&g.theta)? + &g.theta.scale(&g.r.exp()?)), cfg);
    Ok(r)
}

fn property_iii(g: &GroupoidModel, cfg: &SampleConfig) -> Result<Report> {
    let mut r = Report::new("iii");
    r.tensor_zero("ε^*θ", &g.eps.pullback(&g.theta)?, cfg);
    let (n, m) = (g.base.dim(), g.total.dim());
    r.exact("dim Γ = 2 dim Γ₀ + 1", m == 2 * n + 1, format!("dim Γ = {m}, dim Γ₀ = {n}"));
    Ok(r)
}

fn property_iv(g: &GroupoidModel, j: &TwistedJacobi, cfg: &SampleConfig) -> Result<Report> {
    let mut r = Report::new("iv");
    r.zero("E_Γ(r)", &j.e.apply(&g.r), cfg);
    r.tensor_eq("E_Γ = E^l", &j.e, &g.left_invariant_reeb()?, cfg);
    Ok(r)
}

fn property_v(g: &GroupoidModel, j: &TwistedJacobi, cfg: &SampleConfig) -> Result<Report> {
    let mut r = Report::new("v");
    let lhs = sharp_vector(&j.lambda, &Form::exact(&g.r));
    let rhs = &g.left_invariant_reeb()? - &g.right_invariant_reeb()?.scale(&g.r.exp()?);
    r.tensor_zero("Λ_Γ^#(dr) − E^l + e^rE^r", &(&lhs - &rhs), cfg);
    Ok(r)
}

fn property_vi(g: &GroupoidModel, j: &TwistedJacobi, cfg: &SampleConfig) -> Result<Report> {
    let mut r = Report::new("vi");
    let emr = exp_neg(&g.r)?;
    let pushed = g.iota.pushforward(&j.lambda.scale(&-&emr))?;
    r.tensor_eq("ι_*(−e^{−r}Λ_Γ) = Λ_Γ", &pushed, &j.lambda, cfg);
    r.tensor_zero("ι^*ω + e^rω", &(&g.iota.pullback(&g.omega)? + &g.omega.scale(&g.r.exp()?)), cfg);
    let x = hamiltonian(j, &-&emr);
    r.tensor_eq("ι_*X_{−e^{−r}} = E_Γ", &g.iota.pushforward(&x)?, &j.e, cfg);
    Ok(r)
}

fn property_viii(g: &GroupoidModel, j: &TwistedJacobi, cfg: &SampleConfig) -> Result<Report> {
    let mut r = Report::new("viii");
    let emr = exp_neg(&g.r)?;
    let mut fs = vec![Expr::one(&g.base)];
    fs.extend(vars(&g.base, 0..g.base.dim()));
    for f0 in &fs {
        for g0 in &fs {
            let a = g.alpha.pull(f0)?;
            let b = &emr * &g.beta.pull(g0)?;
            r.zero(format!("{{α^*{f0}, e^{{−r}}β^*{g0}}}"), &bracket(j, &a, &b), cfg);
        }
    }
    Ok(r)
}

/// `Λ₀ = Tα∘Λ_Γ^#∘ᵗTα` (evaluated on `α^*` of basis covectors, projectability
/// checked) and `E₀ = α_*E_Γ`, with `ω₀` from the model.
pub fn induced_base_structure(g: &GroupoidModel) -> Result<TwistedJacobi> {
    let d = g.contact_data()?;
    let lambda0 = g.alpha.pushforward(&d.lambda)?;
    let e0 = g.alpha.pushforward(&d.e)?;
    TwistedJacobi::new(lambda0, e0, g.omega0.clone())
}

/// `𝔍(ζ₀,f₀) = Λ_Γ^#(α^*ζ₀) + α^*f₀ E^l`.
pub fn frak_j(g: &GroupoidModel, lambda: &MultiVector, el: &MultiVector, a: &PairForm) -> Result<MultiVector> {
    let zeta = g.alpha.pullback(&a.primary)?;
    Ok(&sharp_vector(lambda, &zeta) + &el.scale(&g.alpha.pull(a.scalar())?))
}

/// The map `𝔍` from sections of `T*Γ₀×ℝ` to vector fields on `Γ`: bracket and
/// anchor compatibility on the given sections, and injectivity at the samples.
pub fn check_algebroid_isomorphism(g: &GroupoidModel, sections: &[PairForm], cfg: &SampleConfig) -> Result<Report> {
    let d = g.contact_data()?;
    let el = g.left_invariant_reeb()?;
    let j0 = induced_base_structure(g)?;
    let mut report = Report::new("𝔍 algebroid isomorphism");
    let images = sections.iter().map(|a| frak_j(g, &d.lambda, &el, a)).collect::<Result<Vec<_>>>()?;
    for (a, ja) in sections.iter().zip(&images) {
        let pushed = g.alpha.pushforward(ja)?;
        report.tensor_eq(format!("Tα∘𝔍{} = ρ{}", show(a), show(a)), &pushed, &algebroid_anchor(&j0, a), cfg);
    }
    for (i, a) in sections.iter().enumerate() {
        for (b, jb) in sections.iter().zip(&images).skip(i + 1) {
            let lhs = frak_j(g, &d.lambda, &el, &algebroid_bracket(&j0, a, b))?;
            let rhs = jb.lie(&images[i]);
            report.tensor_eq(format!("𝔍{{{},{}}} = [𝔍{},𝔍{}]", show(a), show(b), show(a), show(b)), &lhs, &rhs, cfg);
        }
    }
    let n = g.base.dim();
    let mut basis: Vec<PairForm> = (0..n).map(|i| PairForm::of_degree_one(Form::basis(&g.base, &[i]), Expr::zero(&g.base))).collect();
    basis.push(PairForm::of_degree_one(Form::zero(&g.base, 1), Expr::one(&g.base)));
    let cols = basis.iter().map(|a| frak_j(g, &d.lambda, &el, a)).collect::<Result<Vec<_>>>()?;
    let matrix: Vec<Vec<Expr>> = (0..g.total.dim()).map(|k| cols.iter().map(|v| v.at(k).clone()).collect()).collect();
    numeric::check_rank(&mut report, "ker 𝔍 = 0", &matrix, n + 1, cfg);
    Ok(report)
}

fn show(a: &PairForm) -> String {
    let zeta = a.primary.entries().into_iter().map(|(k, v)| if v == "1" { k } else { format!("({v}){k}") }).collect::<Vec<_>>().join(" + ");
    let zeta = if zeta.is_empty() { "0".to_string() } else { zeta };
    format!("({zeta},{})", a.scalar())
}
