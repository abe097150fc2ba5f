//! One function per subcommand. Each returns a JSON value and a text
//! rendering; the caller picks one.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use alcove_hecke::bounds::{self, bounded_constraints, conjectural_bound, empirical_search, is_bounded, l_w0};
use alcove_hecke::heckemod::ensure_equal;
use alcove_hecke::paths::enumerate;
use alcove_hecke::rootdata::unit;
use alcove_hecke::svg::{emit_svg, SvgScene};
use alcove_hecke::{ExtAffineElt, HeckeRep, JContext, JParamSystem, QLaurent, RootSystem, Word};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ConfigError, JobConfig};

pub enum Failure {
    Config(ConfigError),
    /// A verification suite found a discrepancy; the report is still printed.
    Verification(Report),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Failure {
        Failure::Config(e)
    }
}

pub struct Report {
    pub json: Value,
    pub text: String,
    /// Raw output that bypasses JSON/text selection (SVG).
    pub raw: Option<String>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serialisable")
}

fn word_of(ctx: &JContext, x: &ExtAffineElt) -> String {
    let (letters, s) = ctx.aw.reduced_word(x);
    if letters.is_empty() && s == 0 {
        return "e".into();
    }
    Word::with_sigma(letters, s).to_string()
}

fn core_err(field: &str) -> impl Fn(alcove_hecke::Error) -> ConfigError + '_ {
    move |e| ConfigError::new(field, e)
}

pub fn root_info(cfg: &JobConfig) -> Result<Report, Failure> {
    let label = cfg.label()?;
    let rs = RootSystem::from_label(&label).map_err(core_err("type"))?;
    let ctx = JContext::from_label(&label, &[]).map_err(core_err("type"))?;
    let aw = &ctx.aw;
    let all: Vec<usize> = (1..=rs.rank).collect();
    let w0 = aw.finite_word(&aw.longest_in(&all));
    let letters: String = aw.letter.iter().collect();
    let json = json!({
        "label": label,
        "type": rs.kind.to_string(),
        "rank": rs.rank,
        "reduced": rs.reduced,
        "cartan": rs.cartan,
        "marks": rs.marks,
        "highest_root": rs.highest_root,
        "positive_roots": rs.positive_roots,
        "num_roots": rs.all_roots().len(),
        "coxeter": aw.coxeter,
        "weight_letters": letters,
        "sigma_group": aw.sigma_group().iter().map(|s| s.node_perm.clone()).collect::<Vec<_>>(),
        "longest_word": w0,
    });
    let mut text = String::new();
    let _ = writeln!(text, "{label}: rank {}, {} roots{}", rs.rank, rs.all_roots().len(), if rs.reduced { "" } else { " (non-reduced)" });
    let _ = writeln!(text, "highest root {:?}, marks {:?}", rs.highest_root, rs.marks);
    let _ = writeln!(text, "weight letters (nodes 0..n): {letters}");
    let _ = writeln!(text, "|Σ| = {}, longest word {}", aw.sigma_group().len(), Word::new(w0));
    for r in &rs.positive_roots {
        let _ = writeln!(text, "  {r:?}");
    }
    Ok(Report { json, text, raw: None })
}

pub fn jgeom(cfg: &JobConfig) -> Result<Report, Failure> {
    let ctx = cfg.context()?;
    let dom = cfg.domain(&ctx)?;
    let radius = cfg.radius(1) as i64;
    let pts = ctx.aj_points(radius);
    let full = ctx.j.len() == ctx.rank();
    let domain: Vec<Value> = dom
        .members
        .iter()
        .zip(&dom.heights)
        .map(|(m, h)| json!({"element": word_of(&ctx, m), "height": h}))
        .collect();
    let json = json!({
        "label": ctx.rs().label(),
        "J": ctx.j,
        "components": ctx.components.iter().map(|(k, phi)| json!({"nodes": k, "highest_root": phi})).collect::<Vec<_>>(),
        "walls": ctx.walls.iter().map(|w| json!({"root": w.root, "level": w.level})).collect::<Vec<_>>(),
        "zeta_arity": ctx.zeta_arity(),
        "zeta_matrix": ctx.zeta_matrix,
        "wj": ctx.wj_reps().iter().map(|u| Word::new(ctx.aw.finite_word(u)).to_string()).collect::<Vec<_>>(),
        "domain": domain,
        "aj_points": pts,
        "translation_group_order": if full { Some(ctx.aj_points(1).len()) } else { None },
    });
    let mut text = String::new();
    let _ = writeln!(text, "{} J={:?}: |W^J| = {}, ζ-arity {}", ctx.rs().label(), ctx.j, ctx.wj_reps().len(), ctx.zeta_arity());
    for (k, phi) in &ctx.components {
        let _ = writeln!(text, "component {k:?} with highest root {phi:?}");
    }
    for (m, h) in dom.members.iter().zip(&dom.heights) {
        let _ = writeln!(text, "  domain element {} height {h:?}", word_of(&ctx, m));
    }
    let _ = writeln!(text, "points of the J-alcove with coordinates in [-{radius}, {radius}]: {}", pts.len());
    if full {
        let _ = writeln!(text, "|T_J| = {}", ctx.aj_points(1).len());
    }
    Ok(Report { json, text, raw: None })
}

pub fn paths(cfg: &JobConfig) -> Result<Report, Failure> {
    let ctx = cfg.context()?;
    let v = cfg.system(&ctx)?;
    let dom = cfg.domain(&ctx)?;
    let word = cfg.word(&ctx)?;
    let start = cfg.start(&ctx)?;
    if let Some(t) = cfg.theta {
        if t >= dom.len() {
            return Err(ConfigError::new("theta", format!("the domain has {} elements", dom.len())).into());
        }
    }
    let ps = enumerate(&ctx, &word, &start, cfg.theta.map(|t| (t, &dom))).map_err(core_err("start"))?;
    let arity = ctx.zeta_arity();
    let mut totals: BTreeMap<usize, QLaurent> = BTreeMap::new();
    let mut records = Vec::new();
    let mut text = String::new();
    let _ = writeln!(text, "{} paths of type {word} from {}", ps.len(), word_of(&ctx, &start));
    for p in &ps {
        let mass = p.mass(&ctx, &v);
        let (wt, theta) = p.wt_theta(&ctx, &dom).map_err(core_err("domain"))?;
        let z = ctx.zeta_exponent(&wt);
        let t = totals.entry(theta).or_insert_with(|| QLaurent::zero(arity));
        *t = &*t + &mass.mul_monomial(1, 0, &z);
        let _ = writeln!(text, "  {}  mass {mass}  wt {wt:?}  θ {theta}", p.pattern());
        records.push(json!({
            "pattern": p.pattern(),
            "mass": mass.to_string(),
            "mass_terms": to_value(&mass),
            "steps": p.steps.iter().map(|s| to_value(&s.kind)).collect::<Vec<_>>(),
            "folds": p.fold_counts,
            "bounces": p.bounce_counts,
            "end": word_of(&ctx, &p.end),
            "weight": wt,
            "theta": theta,
        }));
    }
    for (theta, t) in &totals {
        let _ = writeln!(text, "θ {theta}: sum of ζ^wt · mass = {t}");
    }
    let json = json!({
        "label": ctx.rs().label(),
        "J": ctx.j,
        "system": v.label(),
        "weights": v.weights.abc,
        "word": word.to_string(),
        "start": word_of(&ctx, &start),
        "theta": cfg.theta,
        "count": ps.len(),
        "records": records,
        "totals": totals.iter().map(|(k, t)| (k.to_string(), json!(t.to_string()))).collect::<serde_json::Map<_, _>>(),
    });
    Ok(Report { json, text, raw: None })
}

fn matrix_strings(m: &alcove_hecke::RepMatrix) -> Vec<Vec<String>> {
    m.entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect()
}

pub fn matrix(cfg: &JobConfig) -> Result<Report, Failure> {
    let ctx = cfg.context()?;
    let v = cfg.system(&ctx)?;
    let dom = cfg.domain(&ctx)?;
    let word = cfg.word(&ctx)?;
    let rep = HeckeRep::new(&ctx, &v, &dom);
    let m = rep.matrix_of_word(&word);
    let agree = if cfg.via_paths.unwrap_or(false) {
        Some(rep.matrix_via_paths_word(&word).map_err(core_err("word"))? == m)
    } else {
        None
    };
    let mut text = String::new();
    let _ = writeln!(text, "π(T_{word}) for {} J={:?} {} (dimension {})", ctx.rs().label(), ctx.j, v.label(), rep.dim());
    for row in matrix_strings(&m) {
        let _ = writeln!(text, "  [{}]", row.join(", "));
    }
    let _ = writeln!(text, "max degree {}", m.max_degree());
    if let Some(a) = agree {
        let _ = writeln!(text, "path formula {}", if a { "agrees" } else { "DISAGREES" });
    }
    let json = json!({
        "label": ctx.rs().label(),
        "J": ctx.j,
        "system": v.label(),
        "weights": v.weights.abc,
        "domain": cfg.domain.clone().unwrap_or_else(|| "default".into()),
        "word": word.to_string(),
        "dim": rep.dim(),
        "entries": matrix_strings(&m),
        "max_degree": m.max_degree().to_string(),
        "paths_agree": agree,
    });
    let report = Report { json, text, raw: None };
    if agree == Some(false) {
        return Err(Failure::Verification(report));
    }
    Ok(report)
}

fn suite_relations(rep: &HeckeRep, failures: &mut Vec<String>) -> usize {
    let ctx = rep.ctx;
    let n = ctx.rank();
    let mut checks = 0;
    for f in rep.check_relations() {
        failures.push(f);
    }
    checks += 1;
    let mut lambdas: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        lambdas.push(unit(n, i));
        lambdas.push(unit(n, i).iter().map(|x| -2 * x).collect());
    }
    let xs: Vec<_> = lambdas.iter().map(|l| rep.matrix_of_x(l)).collect();
    for a in 0..xs.len() {
        for b in a + 1..xs.len() {
            if &xs[a] * &xs[b] != &xs[b] * &xs[a] {
                failures.push(format!("X^{:?} and X^{:?} do not commute", lambdas[a], lambdas[b]));
            }
            checks += 1;
        }
    }
    for i in 1..=n {
        for l in &lambdas {
            let (lhs, rhs) = rep.bernstein_lusztig_sides(i, l);
            if let Err(e) = ensure_equal(&format!("Bernstein-Lusztig i={i} λ={l:?}"), &lhs, &rhs) {
                failures.push(e.to_string());
            }
            checks += 1;
        }
        let t = rep.matrix_of_tau(i);
        if &t * &t != rep.tau_square_rhs(i) {
            failures.push(format!("τ_{i}² relation"));
        }
        checks += 1;
    }
    checks
}

fn suite_paths(rep: &HeckeRep, radius: usize, failures: &mut Vec<String>) -> Result<usize, ConfigError> {
    let ctx = rep.ctx;
    let mut checks = 0;
    for shell in rep.tw_ball(radius) {
        for (x, m) in shell {
            let (letters, _) = ctx.aw.reduced_word(&x);
            for s in 0..ctx.aw.sigma_group().len() {
                let word = Word::with_sigma(letters.clone(), s);
                let got = rep.matrix_via_paths_word(&word).map_err(core_err("word"))?;
                if got != &m * rep.sigma_matrix(s) {
                    failures.push(format!("path formula differs for {word}"));
                }
                checks += 1;
            }
        }
    }
    Ok(checks)
}

fn suite_translations(rep: &HeckeRep, failures: &mut Vec<String>) -> usize {
    let ctx = rep.ctx;
    let n = ctx.rank();
    let mut checks = 0;
    let tsphi = rep.matrix_of_tw(&ExtAffineElt::finite(ctx.aw.gen(0).lin.clone()));
    if rep.gen_matrix(0) * &tsphi != rep.matrix_of_x(&ctx.aw.phi_coroot) {
        failures.push("T_0 T_{s_φ} ≠ X^{φ^∨}".into());
    }
    checks += 1;
    for i in 0..n {
        for k in 0..n {
            let a = unit(n, i);
            let b: Vec<i64> = unit(n, k).iter().map(|x| -x).collect();
            let ab: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            if &rep.matrix_of_x(&a) * &rep.matrix_of_x(&b) != rep.matrix_of_x(&ab) {
                failures.push(format!("X^{a:?} X^{b:?} ≠ X^{ab:?}"));
            }
            if !rep.weight_annihilator(&ab).is_zero() {
                failures.push(format!("weights of X^{ab:?} differ from the prediction"));
            }
            checks += 2;
        }
    }
    checks
}

pub fn verify(cfg: &JobConfig) -> Result<Report, Failure> {
    let ctx = cfg.context()?;
    let dom = cfg.domain(&ctx)?;
    let suite = cfg.suite.clone().unwrap_or_else(|| "all".into());
    let suites: Vec<&str> = match suite.as_str() {
        "all" => vec!["relations", "paths", "translations"],
        s @ ("relations" | "paths" | "translations") => vec![s],
        other => return Err(ConfigError::new("suite", format!("{other:?} is not relations, paths, translations or all")).into()),
    };
    let systems: Vec<JParamSystem> = if cfg.signs.is_some() {
        vec![cfg.system(&ctx)?]
    } else {
        JParamSystem::enumerate(&ctx, &cfg.weight_function(&ctx)?)
    };
    let radius = cfg.radius(4);
    let mut failures = Vec::new();
    let mut checks = 0;
    for v in &systems {
        let rep = HeckeRep::new(&ctx, v, &dom);
        let before = failures.len();
        for s in &suites {
            checks += match *s {
                "relations" => suite_relations(&rep, &mut failures),
                "paths" => suite_paths(&rep, radius, &mut failures)?,
                _ => suite_translations(&rep, &mut failures),
            };
        }
        for f in &mut failures[before..] {
            *f = format!("{}: {f}", v.label());
        }
    }
    let passed = failures.is_empty();
    let mut text = format!(
        "{} suite {suite} on {} J={:?} ({} systems): {checks} checks, {}\n",
        if passed { "PASS" } else { "FAIL" },
        ctx.rs().label(),
        ctx.j,
        systems.len(),
        if passed { "no failures".to_string() } else { format!("{} failures", failures.len()) }
    );
    for f in &failures {
        let _ = writeln!(text, "  {f}");
    }
    let json = json!({
        "suite": suite,
        "label": ctx.rs().label(),
        "J": ctx.j,
        "systems": systems.iter().map(|v| v.label()).collect::<Vec<_>>(),
        "radius": radius,
        "checks": checks,
        "failures": failures,
        "passed": passed,
    });
    let report = Report { json, text, raw: None };
    if passed {
        Ok(report)
    } else {
        Err(Failure::Verification(report))
    }
}

pub fn classify(cfg: &JobConfig) -> Result<Report, Failure> {
    let label = cfg.label()?;
    let rows = bounds::classify(&label).map_err(core_err("type"))?;
    let at = cfg.weights;
    let mut text = String::new();
    let _ = writeln!(text, "one-dimensional representations of {label}:");
    let mut out = Vec::new();
    for r in &rows {
        let cons: Vec<String> = r.constraints.iter().map(|c| c.to_string()).collect();
        let vals: BTreeMap<String, String> = r.values.iter().cloned().collect();
        let bounded_at = at.map(|abc| r.holds(abc));
        let _ = writeln!(
            text,
            "  {:<16} {}  {}{}",
            r.label,
            r.values.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" "),
            if cons.is_empty() { "always bounded".to_string() } else { format!("bounded iff {}", cons.join(" and ")) },
            bounded_at.map_or(String::new(), |b| format!("  [{}]", if b { "bounded" } else { "unbounded" })),
        );
        out.push(json!({
            "label": r.label,
            "values": vals,
            "constraints": cons,
            "forms": r.constraints.iter().map(|c| c.form).collect::<Vec<_>>(),
            "bounded_at_weights": bounded_at,
        }));
    }
    let json = json!({"label": label, "weights": at, "rows": out});
    Ok(Report { json, text, raw: None })
}

pub fn bound_search(cfg: &JobConfig) -> Result<Report, Failure> {
    let ctx = cfg.context()?;
    let v = cfg.system(&ctx)?;
    let dom = cfg.domain(&ctx)?;
    let rep = HeckeRep::new(&ctx, &v, &dom);
    let radius = cfg.radius(8);
    let r = empirical_search(&rep, radius, cfg.include_sigma.unwrap_or(false));
    let words: Vec<String> = r.arg_set.iter().map(|x| x.word.to_string()).collect();
    let mut text = String::new();
    let _ = writeln!(text, "{} J={:?} {} weights {:?}, radius {radius}", ctx.rs().label(), ctx.j, v.label(), v.weights.abc);
    let shells: Vec<String> = r.shell_max.iter().map(|d| opt(*d)).collect();
    let _ = writeln!(text, "max degree {} (per shell {}), stabilised: {}", opt(r.max_degree), shells.join(" "), r.stabilized);
    let _ = writeln!(text, "conjectured bound {}, bounded: {}", opt(r.conjectured_bound), is_bounded(&ctx, &v));
    let _ = writeln!(text, "attained at {} elements: {}", words.len(), words.join(" "));
    let mut json = to_value(&r);
    json["label"] = json!(ctx.rs().label());
    json["J"] = json!(ctx.j);
    json["system"] = json!(v.label());
    json["weights"] = json!(v.weights.abc);
    json["bounded"] = json!(is_bounded(&ctx, &v));
    json["arg_words"] = json!(words);
    Ok(Report { json, text, raw: None })
}

fn opt<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map_or_else(|| "-".into(), |d| d.to_string())
}

pub fn conjecture_eval(cfg: &JobConfig) -> Result<Report, Failure> {
    let ctx = cfg.context()?;
    let v = cfg.system(&ctx)?;
    let bounded = is_bounded(&ctx, &v);
    let cons: Vec<String> = bounded_constraints(&ctx, &v).iter().map(|c| c.to_string()).collect();
    let lw0 = l_w0(&ctx, &v.weights);
    let result = conjectural_bound(&ctx, &v);
    let mut text = String::new();
    let _ = writeln!(text, "{} J={:?} {} weights {:?}", ctx.rs().label(), ctx.j, v.label(), v.weights.abc);
    let _ = writeln!(text, "boundedness: {} ({})", if bounded { "bounded" } else { "unbounded" }, cons.join(", "));
    let _ = writeln!(text, "L(w_0) = {lw0}");
    let (value, detail) = match &result {
        Ok(b) => {
            let _ = writeln!(
                text,
                "conjectural bound {}{}",
                b.value,
                if b.degenerate { " (borderline weights: extra factors vanish)" } else { "" }
            );
            (Some(b.value), to_value(b))
        }
        Err(e) => {
            let _ = writeln!(text, "no conjectural bound: {e}");
            (None, json!({"error": e.to_string()}))
        }
    };
    let json = json!({
        "label": ctx.rs().label(),
        "J": ctx.j,
        "system": v.label(),
        "weights": v.weights.abc,
        "bounded": bounded,
        "constraints": cons,
        "l_w0": lw0,
        "value": value,
        "detail": detail,
    });
    Ok(Report { json, text, raw: None })
}

pub fn plot(cfg: &JobConfig) -> Result<Report, Failure> {
    let ctx = cfg.context()?;
    if ctx.rank() != 2 {
        return Err(ConfigError::new("rank", "pictures are drawn for rank 2 only").into());
    }
    let path = match &cfg.word {
        Some(_) => {
            let word = cfg.word(&ctx)?;
            let start = cfg.start(&ctx)?;
            let ps = enumerate(&ctx, &word, &start, None).map_err(core_err("start"))?;
            let k = cfg.path_index.unwrap_or(0);
            let n = ps.len();
            Some(ps.into_iter().nth(k).ok_or_else(|| ConfigError::new("path_index", format!("only {n} paths")))?)
        }
        None => None,
    };
    let scene = SvgScene::new(&ctx, cfg.bound.unwrap_or(3), path.as_ref()).map_err(core_err("rank"))?;
    let svg = emit_svg(&scene);
    let json = json!({"svg": svg});
    Ok(Report { json, text: svg.clone(), raw: Some(svg) })
}
