use std::collections::BTreeMap;
use std::path::Path;

use num_traits::Zero;
use serde_json::json;

use super::manifest::RunManifest;
use super::output::Outcome;
use super::{CliError, Scope};
use crate::basis::DiffOperator;
use crate::cascade::{
    check_relation, corrected_table, decompose_homogeneous, errata, laguerre_beta_hard_particular, paper_table, relation_ids, solve_next,
    verify_tables, AnsatzSpec, CascadeError,
};
use crate::catalog::{get_operators, verify_catalog, CaseSpec, CatalogError, Edge, EdgeCase, Ensemble};
use crate::exact::{fmt_q, parse_q, q_to_f64, qi, ParamPoly, RatFunc, Var, Q};
use crate::numerics::{convergence_study, verify_finite_ode, PrecisionContext, StudyConfig};
use crate::transforms::{
    hypergeom_ops, recursion_residual, recursion_step, saddle_expand, transform_element, RecursionCase, TransformElement, TransformError,
};

const MAX_GRID: usize = 10_000;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn from_catalog(e: CatalogError) -> CliError {
    CliError::Usage(e.to_string())
}

fn from_cascade(e: CascadeError) -> CliError {
    match e {
        CascadeError::Catalog(c) => from_catalog(c),
        other => CliError::Failed(other.to_string()),
    }
}

fn from_transform(e: TransformError) -> CliError {
    match e {
        TransformError::OrderTooLarge { .. } | TransformError::UnknownCase(_) => CliError::Usage(e.to_string()),
        other => CliError::Failed(other.to_string()),
    }
}

/// Case descriptor with the short aliases gue, goe and gse for the Gaussian
/// soft edges.
pub fn parse_case_alias(s: &str) -> Result<CaseSpec, CliError> {
    let s = s.trim();
    let full = match s {
        "gue" | "goe" | "gse" => format!("{s}-soft"),
        _ => s.to_string(),
    };
    full.parse::<CaseSpec>().map_err(from_catalog)
}

pub fn parse_n_list(s: &str) -> Result<Vec<u32>, CliError> {
    let ns = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| usage(format!("N value {t:?} is not a positive integer"))))
        .collect::<Result<Vec<_>, _>>()?;
    if ns.is_empty() {
        return Err(usage("empty N-list"));
    }
    if ns.contains(&0) {
        return Err(usage("N must be positive"));
    }
    Ok(ns)
}

fn parse_f64(t: &str) -> Result<f64, CliError> {
    t.trim().replace('\u{2212}', "-").parse::<f64>().map_err(|_| usage(format!("{t:?} is not a number")))
}

/// "lo:hi:step" (inclusive, tolerant to rounding at hi) or a comma separated list.
pub fn parse_y_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let ys = match parts.as_slice() {
        [lo, hi, step] => {
            let (lo, hi, step) = (parse_f64(lo)?, parse_f64(hi)?, parse_f64(step)?);
            if !(step > 0.0) || hi < lo {
                return Err(usage(format!("bad y range {s:?}")));
            }
            let n = ((hi - lo) / step + 1e-9).floor() as usize + 1;
            if n > MAX_GRID {
                return Err(usage(format!("y grid has {n} points (limit {MAX_GRID})")));
            }
            (0..n).map(|i| lo + step * i as f64).collect()
        }
        [_] => s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(parse_f64).collect::<Result<Vec<_>, _>>()?,
        _ => return Err(usage(format!("y grid {s:?} must be lo:hi:step or a list"))),
    };
    if ys.is_empty() {
        return Err(usage("empty y grid"));
    }
    Ok(ys)
}

fn parse_rational(label: &str, s: &str) -> Result<Q, CliError> {
    parse_q(&s.trim().replace('\u{2212}', "-")).map_err(|_| usage(format!("--{label} {s:?} is not a rational number")))
}

struct Check {
    suite: &'static str,
    name: String,
    passed: bool,
    detail: String,
}

fn check(suite: &'static str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { suite, name: name.into(), passed, detail: detail.into() }
}

fn identities(corrected: bool) -> Vec<Check> {
    let notes: Vec<(String, &str)> = errata().into_iter().map(|e| (format!("{} j={}", e.case, e.j), e.note)).collect();
    verify_tables(corrected)
        .into_iter()
        .map(|(name, r)| match r {
            Ok(true) => check("identities", name, true, ""),
            Ok(false) => {
                let why = notes.iter().find(|(n, _)| *n == name).map(|(_, note)| format!("nonzero residual; known erratum: {note}"));
                check("identities", name, false, why.unwrap_or_else(|| "nonzero residual".into()))
            }
            Err(e) => check("identities", name, false, e.to_string()),
        })
        .collect()
}

fn relations() -> Vec<Check> {
    relation_ids()
        .into_iter()
        .map(|r| match check_relation(r.id) {
            Ok(res) if res.is_zero() => check("relations", r.id, true, r.description),
            Ok(res) => check("relations", r.id, false, format!("residual {}", res.render())),
            Err(e) => check("relations", r.id, false, e.to_string()),
        })
        .collect()
}

fn operator_diff(want: &DiffOperator, got: &DiffOperator) -> Vec<String> {
    let zero = ParamPoly::zero(Var::Y);
    let mut keys: Vec<u32> = want.terms().keys().chain(got.terms().keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .filter_map(|k| {
            let a = want.terms().get(&k).unwrap_or(&zero);
            let b = got.terms().get(&k).unwrap_or(&zero);
            (a != b).then(|| format!("d^{k}: catalog {a} vs file {b}"))
        })
        .collect()
}

fn catalog_checks(operators: Option<&Path>, manifest: &mut RunManifest) -> Result<Vec<Check>, CliError> {
    let mut out: Vec<Check> = verify_catalog()
        .into_iter()
        .map(|(name, r)| match r {
            Ok(()) => check("catalog", name, true, ""),
            Err(e) => check("catalog", name, false, e.to_string()),
        })
        .collect();
    if let Some(path) = operators {
        let bytes = std::fs::read(path)?;
        manifest.input(&path.display().to_string(), &bytes);
        #[derive(serde::Deserialize)]
        struct OperatorFile {
            case: EdgeCase,
            operators: Vec<DiffOperator>,
        }
        let file: OperatorFile = serde_json::from_slice(&bytes).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let want = get_operators(&file.case).map_err(from_catalog)?;
        if want.len() != file.operators.len() {
            out.push(check(
                "catalog",
                format!("{}: operator count", file.case),
                false,
                format!("catalog has {}, file has {}", want.len(), file.operators.len()),
            ));
        }
        for (k, (w, g)) in want.iter().zip(&file.operators).enumerate() {
            let diff = operator_diff(w, g);
            out.push(check("catalog", format!("{}: operator D{k} matches file", file.case), diff.is_empty(), diff.join("; ")));
        }
    }
    Ok(out)
}

fn finite_checks() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    let lue = EdgeCase::lue(Edge::Hard);
    for n in 1..=4 {
        for a in 0..=2 {
            let c = verify_finite_ode(&lue, n, &qi(a))?;
            out.push(check("finite", format!("LUE raw operator, N={n} a={a}"), c.passed, c.residual));
        }
        let c = verify_finite_ode(&EdgeCase::gue_soft(), n, &qi(0))?;
        out.push(check("finite", format!("GUE unscaled operator, N={n}"), c.passed, c.residual));
    }
    Ok(out)
}

fn decomposition_checks() -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    let want_c = RatFunc::from_poly(ParamPoly::parse(Var::Y, "(1 - A)/4").expect("literal").mpoly().clone());
    for d in ["loe-hard", "lse-hard"] {
        let case = parse_case_alias(d)?.case;
        let r1 = paper_table(&case).map_err(from_cascade)?.entries.swap_remove(1);
        let dec = decompose_homogeneous(&case, &r1).map_err(from_cascade)?;
        let ok = dec.c == want_c && dec.remainder == laguerre_beta_hard_particular(&case);
        out.push(check("decomposition", format!("{d}: r1 = C r0 + particular"), ok, format!("C = {}", dec.c)));
    }
    Ok(out)
}

pub fn verify(scope: Scope, corrected: bool, operators: Option<&Path>) -> Result<Outcome, CliError> {
    let mut manifest = RunManifest::new("verify").param("scope", format!("{scope:?}").to_lowercase()).param("corrected", corrected);
    let all = scope == Scope::All;
    let mut checks = Vec::new();
    if all || scope == Scope::Identities {
        checks.extend(identities(corrected));
    }
    if all || scope == Scope::Relations {
        checks.extend(relations());
    }
    if all || scope == Scope::Catalog {
        checks.extend(catalog_checks(operators, &mut manifest)?);
    }
    if all || scope == Scope::Finite {
        checks.extend(finite_checks()?);
    }
    if all || scope == Scope::Decomposition {
        checks.extend(decomposition_checks()?);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut text = String::new();
    for c in &checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if c.detail.is_empty() || c.passed {
            text.push_str(&format!("{status}  [{}] {}\n", c.suite, c.name));
        } else {
            text.push_str(&format!("{status}  [{}] {}: {}\n", c.suite, c.name, c.detail));
        }
    }
    text.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    let rows = checks
        .iter()
        .map(|c| vec![c.suite.to_string(), c.name.clone(), if c.passed { "PASS" } else { "FAIL" }.to_string(), c.detail.clone()])
        .collect();
    let json = json!({
        "checks": checks.iter().map(|c| json!({"suite": c.suite, "name": c.name, "passed": c.passed, "detail": c.detail})).collect::<Vec<_>>(),
        "total": checks.len(),
        "failed": failed,
    });
    let mut o = Outcome::new("verify", manifest).table(&["suite", "name", "status", "detail"], rows);
    o.passed = failed == 0;
    o.json = json;
    o.text = text;
    Ok(o)
}

pub fn solve(case: &str, j: usize, bounds: Option<&str>) -> Result<Outcome, CliError> {
    let spec = parse_case_alias(case)?;
    let case = spec.case;
    let table = corrected_table(&case).map_err(from_cascade)?;
    if j == 0 || j > table.len() {
        return Err(usage(format!("{case}: j must lie in 1..={} (orders below j must be tabulated)", table.len())));
    }
    let mut ansatz = AnsatzSpec::default_for(&case, &table, j).map_err(from_cascade)?;
    if let Some(b) = bounds {
        let parsed = b
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| usage(format!("bound {t:?} is not a nonnegative integer"))))
            .collect::<Result<Vec<_>, _>>()?;
        if parsed.len() != case.family.size() {
            return Err(usage(format!("{} needs {} bounds, got {}", case.family, case.family.size(), parsed.len())));
        }
        ansatz.bounds = parsed;
    }
    let mut manifest = RunManifest::new("solve").case(case.descriptor()).param("j", j);
    manifest.input("table", table.to_json().to_string().as_bytes());
    if let Some(b) = bounds {
        manifest = manifest.param("bounds", b);
    }
    let solved = solve_next(&case, &table, j, &ansatz).map_err(from_cascade)?;
    let printed = paper_table(&case).map_err(from_cascade)?;
    let matches_printed = printed.entries.get(j).map(|e| *e == solved.particular);
    let matches_corrected = table.entries.get(j).map(|e| *e == solved.particular);
    let dim = solved.nullspace.len();
    let mut text = format!("{case} j = {j}\nnullspace dimension: {dim}\n");
    text.push_str(&format!("bounds: {:?} (escalations: {})\n", solved.ansatz.bounds, solved.escalations));
    text.push_str(&format!("particular: {}\n", solved.particular.render()));
    for (i, h) in solved.nullspace.iter().enumerate() {
        text.push_str(&format!("homogeneous {i}: {}\n", h.render()));
    }
    let yn = |b: Option<bool>| match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "not tabulated",
    };
    text.push_str(&format!("matches printed entry: {}\nmatches corrected entry: {}\n", yn(matches_printed), yn(matches_corrected)));
    let fam = case.family;
    let rows = (1..=fam.size())
        .map(|i| vec![fam.basis_name(i).to_string(), solved.particular.coeff(i).to_string()])
        .collect();
    let mut o = Outcome::new("solve", manifest).table(&["basis", "coefficient"], rows);
    o.json = json!({
        "case": case.descriptor(),
        "j": j,
        "nullspace_dimension": dim,
        "particular": solved.particular,
        "nullspace": solved.nullspace,
        "ansatz": solved.ansatz,
        "escalations": solved.escalations,
        "matches_printed": matches_printed,
        "matches_corrected": matches_corrected,
    });
    o.text = text;
    Ok(o)
}

fn sector_rows(t: &TransformElement) -> Vec<Vec<String>> {
    use crate::transforms::Sector;
    let mut rows = Vec::new();
    for (name, s) in [("A", Sector::A), ("B", Sector::B), ("C", Sector::C)] {
        for (k, c) in t.sector(s) {
            let exp = if s == Sector::A { fmt_q(&Q::new((*k).into(), 2.into())) } else { k.to_string() };
            rows.push(vec![name.to_string(), exp, fmt_q(c)]);
        }
    }
    rows
}

pub fn laplace(case: &str, j: usize, nu: Option<&str>) -> Result<Outcome, CliError> {
    let rcase: RecursionCase = case.trim().parse().map_err(from_transform)?;
    let table_case = match rcase {
        RecursionCase::Gue => EdgeCase::gue_soft(),
        RecursionCase::Beta => {
            let nu = match nu {
                Some(v) => parse_rational("nu", v)?,
                None if case.trim().starts_with("gse") => qi(0),
                None => qi(1),
            };
            let beta = if nu == qi(1) {
                1
            } else if nu.is_zero() {
                4
            } else {
                return Err(usage(format!("--nu must be 1 (beta = 1) or 0 (beta = 4), got {}", fmt_q(&nu))));
            };
            EdgeCase::new(Ensemble::Gaussian, beta, Edge::SoftFixedA).map_err(from_catalog)?
        }
    };
    let table = paper_table(&table_case).map_err(from_cascade)?;
    let max_j = match rcase {
        RecursionCase::Gue => crate::transforms::MAX_SADDLE_ORDER / 2,
        RecursionCase::Beta => table.len(),
    };
    if j > max_j {
        return Err(usage(format!("{table_case}: j must be at most {max_j}")));
    }
    let mut us: Vec<TransformElement> =
        table.entries.iter().take(j + 1).map(transform_element).collect::<Result<_, _>>().map_err(from_transform)?;
    // orders beyond the table come from the saddle expansion, which fixes b
    if rcase == RecursionCase::Gue && us.len() <= j {
        let sad = saddle_expand(2 * j).map_err(from_transform)?;
        while us.len() <= j {
            us.push(sad.u(us.len()).expect("order within expansion"));
        }
    }
    let manifest = RunManifest::new("laplace").case(table_case.descriptor()).param("j", j);
    let mut text = format!("{table_case}: u_{j} = {}\n", us[j]);
    let mut json = json!({ "case": table_case.descriptor(), "j": j, "transform": us[j] });
    let mut passed = true;
    if j > 0 {
        let step = recursion_step(rcase, &us[..j], j).map_err(from_transform)?;
        let residual = recursion_residual(rcase, &us, j);
        passed = residual.is_zero();
        text.push_str(&format!("recursion step: {} free parameter(s)\nparticular: {}\n", step.free_params, step.particular));
        for (i, h) in step.homogeneous.iter().enumerate() {
            text.push_str(&format!("homogeneous {i}: {h}\n"));
        }
        text.push_str(&format!("u_{j} satisfies the recursion: {}\n", if passed { "PASS" } else { "FAIL" }));
        json["recursion"] = serde_json::to_value(&step).expect("serializes");
        json["residual_zero"] = json!(passed);
    }
    let mut o = Outcome::new("laplace", manifest).table(&["sector", "exponent", "coefficient"], sector_rows(&us[j]));
    o.passed = passed;
    o.json = json;
    o.text = text;
    Ok(o)
}

pub fn saddle(order: usize) -> Result<Outcome, CliError> {
    let exp = saddle_expand(order).map_err(from_transform)?;
    let manifest = RunManifest::new("saddle").param("order", order);
    let rows = exp.coeffs.iter().enumerate().map(|(k, c)| vec![format!("{k}"), c.to_string()]).collect();
    let mut o = Outcome::new("saddle", manifest).table(&["k", "coefficient"], rows);
    let b = exp.b_constant();
    o.json = json!({
        "order": order,
        "coefficients": exp.coeffs.iter().enumerate().map(|(k, c)| (format!("N^(-{k}/3)"), serde_json::to_value(c).expect("serializes"))).collect::<BTreeMap<_, _>>(),
        "b": b.as_ref().map(fmt_q),
        "integrand_terms": exp.integrand_terms,
    });
    o.text = exp.to_text();
    Ok(o)
}

pub fn hyper(shift: u8, order: u32, a: &str, ctx: &PrecisionContext) -> Result<Outcome, CliError> {
    let table = hypergeom_ops(shift, order).map_err(from_transform)?;
    let aq = parse_rational("a", a)?;
    let af = q_to_f64(&aq);
    let manifest = RunManifest::new("hyper").param("shift", shift).param("order", order).param("a", fmt_q(&aq));
    let n: f64 = 100.0;
    let tol = 10.0 * n.powi(-(order as i32 + 1));
    let mut checks = Vec::new();
    for x in [1.0, 4.0] {
        let err = table.relative_error(n, af, x, ctx)?;
        checks.push(json!({"n": n, "x": x, "relative_error": format!("{err:.3e}"), "bound": format!("{tol:.3e}"), "passed": err <= tol}));
    }
    let passed = checks.iter().all(|c| c["passed"].as_bool() == Some(true));
    let mut text = format!("{table}\n");
    for c in &checks {
        text.push_str(&format!("N = 100, a = {}, x = {}: relative error {} (bound {})\n", fmt_q(&aq), c["x"], c["relative_error"].as_str().unwrap_or(""), c["bound"].as_str().unwrap_or("")));
    }
    let rows = table
        .entries
        .iter()
        .flat_map(|(k, terms)| terms.iter().map(move |(c, m)| vec![k.to_string(), m.to_string(), fmt_q(c)]))
        .collect();
    let mut o = Outcome::new("hyper", manifest).table(&["n_power", "d_power", "coefficient"], rows);
    o.passed = passed;
    o.json = json!({ "table": table, "numeric_check": checks });
    o.text = text;
    Ok(o)
}

pub fn converge(
    case: &str,
    j: usize,
    ns: Vec<u32>,
    ys: Vec<f64>,
    a: Option<&str>,
    gamma: Option<&str>,
    ctx: &PrecisionContext,
) -> Result<Outcome, CliError> {
    let spec = parse_case_alias(case)?;
    if ns.len() < 2 {
        return Err(usage("a convergence study needs at least two values of N"));
    }
    let a = match a {
        Some(v) => parse_rational("a", v)?,
        None => spec.a.clone().unwrap_or_else(|| qi(0)),
    };
    let gamma = match gamma {
        Some(v) => Some(parse_rational("gamma", v)?),
        None => spec.gamma.clone(),
    };
    let mut manifest = RunManifest::new("converge")
        .case(spec.case.descriptor())
        .param("j", j)
        .param("ns", ns.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
        .param("a", fmt_q(&a))
        .param("digits", ctx.working_digits);
    if let Some(g) = &gamma {
        manifest = manifest.param("gamma", fmt_q(g));
    }
    let cfg = StudyConfig { case: spec.case, j, ns, ys, a, gamma, ctx: *ctx };
    let report = convergence_study(&cfg)?;
    let rows = report
        .rows
        .iter()
        .map(|r| vec![r.n.to_string(), format!("{}", r.size), format!("{}", r.y), r.density.clone(), r.approximation.clone(), r.residual.clone()])
        .collect();
    let mut o = Outcome::new("converge", manifest).table(&["n", "size", "y", "density", "approximation", "residual"], rows);
    o.json = serde_json::to_value(&report).expect("serializes");
    o.text = report.to_text();
    Ok(o)
}
