//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{corpus, parse, r3, standard_contact, twisted_contact};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twistgeom::apath::{anchor_residual, cocycle_integral, concatenate, reparameterize, APath};
use twistgeom::contact::{check_contact, contact_bivector, jacobi_from_contact, reeb, TwistedContact};
use twistgeom::groupoid::{
    base_coincidence_check, build_pair_groupoid, check_block_formulas, check_multiplicativity, check_properties, suspend, GroupoidModel,
};
use twistgeom::jacobi::{
    check_algebroid, check_homogeneous, check_twisted_jacobi, jacobi_anomaly, poissonize, project_along_e, project_homogeneous,
    HomTwistedPoisson, TwistedJacobi,
};
use twistgeom::tensor::{Form, MultiVector, PairForm};
use twistgeom::{Chart, ChartRef, Expr, ItemVerdict, Overall, Report, SampleConfig, Q};

const SEED: u64 = 0x5EED_2024;
const CALCULUS_CASES: usize = 50;
const ANOMALY_TRIPLES: usize = 10;
const ANOMALY_TOL: f64 = 1e-9;
const VOLUME_SAMPLES: usize = 25;
const PATH_INTERVALS: usize = 64;
const CLOSED_FORM_TOL: f64 = 1e-8;
const ADDITIVITY_TOL: f64 = 1e-8;
const REPARAM_TOL: f64 = 1e-6;
const SIMPSON_FACTOR: f64 = 8.0;

const BUDGET_CALCULUS: Duration = Duration::from_secs(30);
const BUDGET_CONTACT: Duration = Duration::from_secs(10);
const BUDGET_GROUPOID: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;

fn cfg() -> SampleConfig {
    SampleConfig::default()
}

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn symbolic(r: &Report, label: &str) -> Result<(), String> {
    match r.item(label) {
        Some(i) if i.verdict == ItemVerdict::SymbolicZero => Ok(()),
        Some(i) => Err(format!("{label}: {:?}", i.verdict)),
        None => Err(format!("{label}: missing from {}", r.name)),
    }
}

fn passed(r: &Report, label: &str) -> Result<(), String> {
    match r.item(label) {
        Some(i) if i.verdict.passed() => Ok(()),
        Some(i) => Err(format!("{label}: {:?}", i.verdict)),
        None => Err(format!("{label}: missing from {}", r.name)),
    }
}

fn fails_with_witness(r: &Report, label: &str) -> Result<Vec<f64>, String> {
    match r.item(label).map(|i| &i.verdict) {
        Some(ItemVerdict::Fail { witness: Some(w), .. }) => Ok(w.clone()),
        Some(v) => Err(format!("{label}: expected a failure with witness, got {v:?}")),
        None => Err(format!("{label}: missing from {}", r.name)),
    }
}

fn all_symbolic(r: &Report) -> Result<(), String> {
    ensure(r.overall() == Overall::SymbolicZero, || format!("{} is {}:\n{r}", r.name, r.overall()))
}

fn random_poly(rng: &mut ChaCha8Rng, c: &ChartRef) -> Expr {
    let terms: Vec<String> = (0..rng.random_range(1..=3))
        .map(|_| {
            let k: i64 = rng.random_range(-3..=3);
            let [a, b, d]: [u32; 3] = std::array::from_fn(|_| rng.random_range(0..=2));
            format!("({k})*x^{a}*y^{b}*z^{d}")
        })
        .collect();
    parse(&terms.join(" + "), c)
}

fn random_polys(rng: &mut ChaCha8Rng, c: &ChartRef, n: usize) -> Vec<Expr> {
    (0..n).map(|_| random_poly(rng, c)).collect()
}

fn two_form(c: &ChartRef, k: &[Expr]) -> Form {
    let mut w = Form::zero(c, 2);
    for (p, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        w = &w + &Form::basis(c, &[i, j]).scale(&k[p]);
    }
    w
}

fn bivector(c: &ChartRef, k: &[Expr]) -> MultiVector {
    let mut b = MultiVector::zero(c, 2);
    for (p, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        b = &b + &MultiVector::basis(c, &[i, j]).scale(&k[p]);
    }
    b
}

fn calculus_core() -> Outcome {
    let c = r3();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for case in 0..CALCULUS_CASES {
        let f = random_poly(&mut rng, &c);
        let a = Form::from_vec(&c, random_polys(&mut rng, &c, 3));
        let w = two_form(&c, &random_polys(&mut rng, &c, 3));
        ensure(Form::exact(&f).ext_d().is_zero(), || format!("case {case}: d(df) ≠ 0"))?;
        ensure(a.ext_d().ext_d().is_zero(), || format!("case {case}: dd on a 1-form ≠ 0"))?;
        ensure(w.ext_d().ext_d().is_zero(), || format!("case {case}: dd on a 2-form ≠ 0"))?;

        let x = MultiVector::vector(&c, random_polys(&mut rng, &c, 3));
        let y = MultiVector::vector(&c, random_polys(&mut rng, &c, 3));
        let z = MultiVector::vector(&c, random_polys(&mut rng, &c, 3));
        let xy = y.lie(&x);
        let xz = z.lie(&x);
        // (L_X α)(Y) = X(α(Y)) − α([X,Y]), independent of the i∘d + d∘i form of L_X
        let lhs = a.lie(&x).eval(&[y.clone()]);
        let rhs = &x.apply(&a.eval(&[y.clone()])) - &a.eval(&[xy.clone()]);
        ensure((&lhs - &rhs).is_zero(), || format!("case {case}: Lie derivative of a 1-form"))?;
        let lhs = w.lie(&x).eval(&[y.clone(), z.clone()]);
        let rhs = &(&x.apply(&w.eval(&[y.clone(), z.clone()])) - &w.eval(&[xy, z.clone()])) - &w.eval(&[y.clone(), xz]);
        ensure((&lhs - &rhs).is_zero(), || format!("case {case}: Lie derivative of a 2-form"))?;

        let l = bivector(&c, &random_polys(&mut rng, &c, 3));
        let s = |p: &MultiVector, q: &MultiVector| p.schouten(q).map_err(|e| format!("case {case}: {e}"));
        // [X,[Y,Λ]] = [[X,Y],Λ] + [Y,[X,Λ]]
        let lhs = s(&x, &s(&y, &l)?)?;
        let rhs = &s(&s(&x, &y)?, &l)? + &s(&y, &s(&x, &l)?)?;
        ensure((&lhs - &rhs).is_zero(), || format!("case {case}: graded Jacobi (1,1,2)"))?;
    }
    Ok(format!("{CALCULUS_CASES} random cases"))
}

fn contact_pipeline() -> Outcome {
    let c = r3();
    let xi = MultiVector::vector(&c, vec![Expr::one(&c), Expr::zero(&c), parse("y", &c)]);
    let base = xi.wedge(&MultiVector::coordinate_field(&c, 1));
    let expected = [base.clone(), base.scale(&parse("1/(1 + x)", &c))];
    for (b, want) in [standard_contact(), twisted_contact()].iter().zip(expected) {
        let e = reeb(b).map_err(|e| e.to_string())?;
        ensure(e == MultiVector::coordinate_field(&c, 2), || format!("reeb = {e}"))?;
        let l = contact_bivector(b).map_err(|e| e.to_string())?;
        ensure(l == want, || format!("contact bivector {l}, expected {want}"))?;
        all_symbolic(&check_twisted_jacobi(&jacobi_from_contact(b).map_err(|e| e.to_string())?, &cfg()))?;
    }
    Ok("reeb ∂z, both bivectors, Jacobi identities symbolic".into())
}

fn anomaly() -> Outcome {
    let c = r3();
    let j = &corpus()[1];
    let cfg = SampleConfig { tol: ANOMALY_TOL, ..cfg() };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut triples = vec![(0..3).map(|i| Expr::var(&c, i)).collect::<Vec<_>>()];
    triples.extend((0..ANOMALY_TRIPLES).map(|_| random_polys(&mut rng, &c, 3)));
    let mut report = Report::new("anomaly");
    for (k, t) in triples.iter().enumerate() {
        let (lhs, rhs) = jacobi_anomaly(j, &t[0], &t[1], &t[2]);
        report.zero(format!("triple {k}"), &(&lhs - &rhs), &cfg);
    }
    ensure(report.passed(), || format!("{report}"))?;
    Ok(format!("{} triples, {}", triples.len(), report.overall()))
}

fn algebroid_suite() -> Outcome {
    let c = r3();
    let sections = vec![
        PairForm::of_degree_one(Form::basis(&c, &[0]), Expr::zero(&c)),
        PairForm::of_degree_one(Form::basis(&c, &[1]), Expr::zero(&c)),
        PairForm::of_degree_one(Form::basis(&c, &[2]), Expr::zero(&c)),
        PairForm::of_degree_one(Form::zero(&c, 1), Expr::one(&c)),
        PairForm::of_degree_one(Form::from_entries(&c, 1, &[("dy", "x")]).map_err(|e| e.to_string())?, Expr::zero(&c)),
    ];
    let mut items = 0;
    for j in corpus() {
        let r = check_algebroid(&j, &sections, &cfg());
        all_symbolic(&r)?;
        items += r.items.len();
    }
    Ok(format!("{items} items symbolic"))
}

fn poissonization() -> Outcome {
    let zero = Q::from_integer(0.into());
    for j in corpus() {
        let h = poissonize(&j);
        all_symbolic(&check_homogeneous(&h, &cfg()))?;
        let ext = h.lambda.chart().clone();
        let s = ext.dim() - 1;
        let (j0, _) = project_homogeneous(&h, s, &zero, &parse("exp(s)", &ext), &cfg()).map_err(|e| e.to_string())?;
        ensure(j0 == j, || format!("projection returned ({}, {}, {})", j0.lambda, j0.e, j0.omega))?;
    }
    Ok("homogeneous and projected back exactly".into())
}

fn projection_along_e() -> Outcome {
    let j = &corpus()[1];
    let p = project_along_e(j, 2, &Q::from_integer(0.into()), &cfg()).map_err(|e| e.to_string())?;
    symbolic(&p.report, "½[Λ₀,Λ₀] − Λ₀^#(dω₀)")?;
    symbolic(&p.report, "L_{Z₀}Λ₀ + Λ₀ + Λ₀^#(dω₀(Z₀,·,·) − ω₀)")?;
    Ok(format!("Λ₀ = {}, Z₀ = {}", p.poisson.lambda, p.z0))
}

fn models() -> Result<Vec<GroupoidModel>, String> {
    [standard_contact(), twisted_contact()].iter().map(|b| build_pair_groupoid(b, &cfg()).map_err(|e| e.to_string())).collect()
}

fn pair_groupoid() -> Outcome {
    let cfg = SampleConfig { samples: VOLUME_SAMPLES, ..cfg() };
    for g in models()? {
        let m = check_multiplicativity(&g, &cfg);
        symbolic(&m, "m^*θ − pr₂^*(e^{−r})pr₁^*θ − pr₂^*θ")?;
        symbolic(&m, "r∘m − r∘pr₁ − r∘pr₂")?;
        let p = check_properties(&g, &cfg).map_err(|e| e.to_string())?;
        symbolic(&p, "iii: ε^*θ")?;
        symbolic(&p, "ii: ι^*θ + e^rθ")?;
        symbolic(&p, "v: Λ_Γ^#(dr) − E^l + e^rE^r")?;
        let viii: Vec<&str> = p.items.iter().map(|i| i.label.as_str()).filter(|l| l.starts_with("viii")).collect();
        ensure(!viii.is_empty(), || "no property viii items".into())?;
        for l in viii {
            symbolic(&p, l)?;
        }
        let b = check_block_formulas(&g, &cfg).map_err(|e| e.to_string())?;
        passed(&b, "volume: θ∧(dθ+ω)^n ≠ 0")?;
        symbolic(&b, "E_Γ = 0 + E₀ + 0")?;
        symbolic(&b, "Λ_Γ on Γ₀×Γ₀ = −e^rΛ₀ + Λ₀ + 0")?;
        symbolic(&b, "Λ_Γ along ∂r = ∂r∧(E^l − e^rE^r)")?;
    }
    Ok("both bases".into())
}

fn suspension() -> Outcome {
    let cfg = SampleConfig { samples: VOLUME_SAMPLES, ..cfg() };
    for g in models()? {
        let s = suspend(&g, &cfg).map_err(|e| e.to_string())?;
        passed(&s.report, "Ω̃ nondegenerate")?;
        symbolic(&s.report, "dΩ̃ − α̃^*dω̃₀ + β̃^*dω̃₀")?;
        symbolic(&s.report, "m̃^*Ω̃ − pr̃₁^*Ω̃ − pr̃₂^*Ω̃")?;
        symbolic(&s.report, "L_{∂s}Ω̃ − Ω̃")?;
        ensure(s.report.passed(), || format!("{}", s.report))?;
        all_symbolic(&base_coincidence_check(&g, &cfg).map_err(|e| e.to_string())?)?;
    }
    Ok("both models".into())
}

fn time() -> ChartRef {
    Chart::new("time", &["t"]).unwrap()
}

/// A path of the flow `(0, ∂z, 0)` moving up `z` at unit speed from `z0`.
fn flow_path(n: usize, z0: &str, zeta_z: &str) -> Result<APath, String> {
    let c = r3();
    let j = TwistedJacobi::new(MultiVector::zero(&c, 2), MultiVector::coordinate_field(&c, 2), Form::zero(&c, 2)).map_err(|e| e.to_string())?;
    let tc = time();
    let e = |s: &str| parse(s, &tc);
    APath::from_exprs(&j, &tc, n, &[e("0"), e("0"), e(&format!("{z0} + t"))], &[e("0"), e("0"), e(zeta_z)], &e("1")).map_err(|e| e.to_string())
}

fn integral(c: &APath) -> Result<f64, String> {
    cocycle_integral(c).map_err(|e| e.to_string())
}

fn a_paths() -> Outcome {
    let n = PATH_INTERVALS;
    let one = integral(&flow_path(n, "0", "1")?)?;
    let half = integral(&flow_path(n, "0", "t")?)?;
    ensure((one + 1.0).abs() < CLOSED_FORM_TOL && (half + 0.5).abs() < CLOSED_FORM_TOL, || format!("closed forms {one}, {half}"))?;

    let c0 = flow_path(n, "-1", "1 + t^2")?;
    let c1 = flow_path(n, "0", "t")?;
    let whole = integral(&concatenate(&c0, &c1).map_err(|e| e.to_string())?)?;
    let parts = integral(&c0)? + integral(&c1)?;
    ensure((whole - parts).abs() < ADDITIVITY_TOL, || format!("concatenation {whole} vs {parts}"))?;

    let c = flow_path(n, "0", "1")?;
    let r = reparameterize(&c, &time(), &parse("3*t^2 - 2*t^3", &time())).map_err(|e| e.to_string())?;
    let moved = integral(&r)?;
    ensure((moved - one).abs() < REPARAM_TOL, || format!("reparameterized {moved} vs {one}"))?;
    let residual = anchor_residual(&c).map_err(|e| e.to_string())?;

    let exact = -(std::f64::consts::E - 1.0);
    let err = |n| integral(&flow_path(n, "0", "exp(t)")?).map(|v| (v - exact).abs());
    let mut worst = f64::INFINITY;
    for n in [8, 16, 32] {
        let ratio = err(n)? / err(2 * n)?;
        worst = worst.min(ratio);
        ensure(ratio >= SIMPSON_FACTOR, || format!("Simpson ratio {ratio} at N={n}"))?;
    }
    Ok(format!("r = {one:.12}, {half:.12}; anchor residual {residual:.1e}; Simpson ratio ≥ {worst:.2}"))
}

fn negative_controls() -> Outcome {
    let c = r3();
    let flat = TwistedContact::new(Form::basis(&c, &[2]), Form::zero(&c, 2)).map_err(|e| e.to_string())?;
    let r = check_contact(&flat, &cfg());
    let w1 = fails_with_witness(&r, "θ∧(dθ+ω)^n ≠ 0")?;

    let g = models()?.remove(0);
    let t = g.r.clone();
    let bad = GroupoidModel { r: &t * &t, ..g };
    let w2 = fails_with_witness(&check_multiplicativity(&bad, &cfg()), "r∘m − r∘pr₁ − r∘pr₂")?;

    let s = Chart::new("R3+s", &["x", "y", "z", "s"]).unwrap();
    let h = HomTwistedPoisson {
        lambda: MultiVector::zero(&s, 2),
        omega: Form::basis(&s, &[3, 0]),
        z: MultiVector::coordinate_field(&s, 3),
    };
    let r = check_homogeneous(&h, &cfg());
    ensure(!r.passed(), || "ds∧dx passed check_homogeneous".into())?;
    let w3 = fails_with_witness(&r, "i(Z)ω")?;
    Ok(format!("witnesses {w1:.3?}, {w2:.3?}, {w3:.3?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 10] = [
        ("calculus core", Some(BUDGET_CALCULUS), calculus_core),
        ("twisted contact pipeline", Some(BUDGET_CONTACT), contact_pipeline),
        ("bracket anomaly", None, anomaly),
        ("algebroid suite", None, algebroid_suite),
        ("poissonization", None, poissonization),
        ("projection along E", None, projection_along_e),
        ("pair groupoid", Some(BUDGET_GROUPOID), pair_groupoid),
        ("suspension", None, suspension),
        ("A-paths", None, a_paths),
        ("negative controls", None, negative_controls),
    ];
    let mut failures = 0;
    for (k, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("took {took:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({took:.2?}): {detail}", k + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({took:.2?}): {why}", k + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
