//! The subcommands. Each returns an [`Outcome`] carrying both report forms and the exit code.

use crate::report::{self, table, yes_no};
use crate::{BasisArgs, BudgetOverrides, Demo};
use serde_json::{json, Value};
use std::path::Path;
use std::time::Instant;
use syz_core::bounds::{evaluate_bound, BoundFormula, DegreeBudget};
use syz_core::ideal::{grade_two_check, ideal_equal, GradeTwoStatus};
use syz_core::instance::{parse_instance, parse_matrix_file};
use syz_core::quillen_suslin::check_completion;
use syz_core::syzygy::{
    basis_from_completion, basis_from_tilde_completion, compute_syzygy_basis, conversion_for, verify_basis,
    StrategyChoice,
};
use syz_core::{Error, Grade2Instance, PolyMatrix};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

pub struct Outcome {
    pub code: u8,
    pub json: Value,
    pub human: String,
}

impl Outcome {
    fn new(code: u8, json: Value, human: String) -> Self {
        Outcome { code, json, human }
    }

    fn error(command: &str, code: u8, message: String) -> Self {
        let json = json!({ "command": command, "status": "error", "error": message });
        Outcome::new(code, json, format!("error: {message}\n"))
    }
}

/// Malformed input maps to exit code 2, failed computations and checks to 1.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse(_)
        | Error::Shape(_)
        | Error::VariableCountMismatch { .. }
        | Error::VariableOutOfRange { .. }
        | Error::IdealMismatch(_)
        | Error::CommonFactor(_)
        | Error::Unsupported(_)
        | Error::MissingParameter { .. }
        | Error::InvalidParameter { .. } => EXIT_INPUT,
        _ => EXIT_FAILED,
    }
}

fn read(path: &Path, command: &str) -> Result<String, Outcome> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome::error(command, EXIT_INPUT, format!("cannot read {}: {e}", path.display())))
}

fn parse(text: &str, origin: &str, command: &str) -> Result<Grade2Instance, Outcome> {
    parse_instance(text).map_err(|e| Outcome::error(command, EXIT_INPUT, format!("{origin}: {e}")))
}

fn load(path: &Path, command: &str) -> Result<Grade2Instance, Outcome> {
    parse(&read(path, command)?, &path.display().to_string(), command)
}

fn choice(arg: crate::StrategyArg) -> StrategyChoice {
    StrategyChoice::from_name(arg.name()).expect("every CLI strategy has a core name")
}

pub fn check(file: &Path) -> Outcome {
    let inst = match load(file, "check") {
        Ok(inst) => inst,
        Err(o) => return o,
    };
    if let Err(e) = inst.check_structure() {
        return Outcome::error("check", exit_code(&e), e.to_string());
    }
    let vars = &inst.vars;
    let grade = match grade_two_check(&inst.p, &inst.q) {
        Ok(g) => g,
        Err(e) => return Outcome::error("check", exit_code(&e), e.to_string()),
    };
    let grade_name = match &grade {
        GradeTwoStatus::GradeTwo => "grade-two".to_string(),
        GradeTwoStatus::UnitIdeal => "unit-ideal".to_string(),
        GradeTwoStatus::CommonFactor(g) => format!("common-factor {}", report::poly(g, vars)),
    };
    let equal = ideal_equal(&inst.a, &[inst.p.clone(), inst.q.clone()]).unwrap_or(false);
    let ok = equal && !matches!(grade, GradeTwoStatus::CommonFactor(_));
    let json = json!({
        "command": "check",
        "status": if ok { "ok" } else { "failed" },
        "variables": inst.nvars(),
        "generators": inst.len(),
        "delta_0": inst.delta_0(),
        "delta_a": inst.delta_a(),
        "grade": grade_name,
        "ideals_equal": equal,
        "m_given": inst.m.is_some(),
        "n_given": inst.n.is_some(),
        "zero_dimensional": inst.zero_dimensional,
    });
    let human = table(&[
        vec!["status".into(), if ok { "ok" } else { "failed" }.into()],
        vec!["variables".into(), vars.join(" ")],
        vec!["generators".into(), inst.len().to_string()],
        vec!["delta_0".into(), inst.delta_0().to_string()],
        vec!["delta_a".into(), inst.delta_a().to_string()],
        vec!["grade".into(), grade_name],
        vec!["<a> = <p, q>".into(), yes_no(equal)],
        vec!["M given".into(), yes_no(inst.m.is_some())],
        vec!["N given".into(), yes_no(inst.n.is_some())],
    ]);
    Outcome::new(if ok { EXIT_OK } else { EXIT_FAILED }, json, human)
}

fn run_basis(inst: &Grade2Instance, args: &BasisArgs) -> Outcome {
    let start = Instant::now();
    let result = compute_syzygy_basis(inst, choice(args.strategy), args.seed, args.strip_gcd);
    let elapsed = start.elapsed();
    let basis = match result {
        Ok(b) => b,
        Err(e) => return Outcome::error("basis", exit_code(&e), e.to_string()),
    };
    let vars = &inst.vars;
    let v = &basis.verification;
    let ok = v.passed();
    let status = if ok { "ok" } else { "failed" };
    let mut json = json!({
        "command": "basis",
        "status": status,
        "strategy": basis.strategy.name(),
        "requested": args.strategy.name(),
        "seed": args.seed,
        "degree": basis.degree(),
        "basis": report::matrix(&basis.b, vars),
        "verification": report::verification(v),
        "completion": {
            "method": basis.certificate.method.name(),
            "degree": basis.certificate.degree,
            "input_degree": basis.certificate.input_degree,
            "degree_bound": basis.certificate.degree_bound.to_string(),
        },
        "warnings": basis.warnings,
    });
    if let Some(pair) = &basis.conversion {
        json["conversion"] = json!({
            "e": report::poly(&pair.e, vars),
            "f": report::poly(&pair.f, vars),
            "orthogonal": pair.is_orthogonal(),
        });
    }
    if let Some(m) = &basis.m_used {
        json["m_used"] = report::matrix(m, vars);
    }
    if args.timing {
        json["time_ms"] = json!(elapsed.as_secs_f64() * 1e3);
    }
    let mut rows = vec![
        vec!["status".into(), status.into()],
        vec!["strategy".into(), basis.strategy.name().into()],
        vec!["seed".into(), args.seed.to_string()],
        vec!["degree".into(), basis.degree().to_string()],
        vec!["completion".into(), basis.certificate.method.name().into()],
    ];
    rows.extend(report::verification_lines(v));
    if args.timing {
        rows.push(vec!["time".into(), format!("{elapsed:.3?}")]);
    }
    let mut human = table(&rows);
    human.push_str(&format!("basis ({}x{})\n", basis.b.rows(), basis.b.cols()));
    human.push_str(&report::matrix_table(&basis.b, vars));
    if !v.bound_comparisons.is_empty() {
        human.push_str("bounds\n");
        human.push_str(&report::bounds_table(&v.bound_comparisons));
    }
    for w in &basis.warnings {
        human.push_str(&format!("warning: {w}\n"));
    }
    Outcome::new(if ok { EXIT_OK } else { EXIT_FAILED }, json, human)
}

pub fn basis(file: &Path, args: &BasisArgs) -> Outcome {
    match load(file, "basis") {
        Ok(inst) => run_basis(&inst, args),
        Err(o) => o,
    }
}

pub fn bounds(file: &Path, overrides: &BudgetOverrides) -> Outcome {
    let inst = match load(file, "bounds") {
        Ok(inst) => inst,
        Err(o) => return o,
    };
    if let Err(e) = inst.check_structure() {
        return Outcome::error("bounds", exit_code(&e), e.to_string());
    }
    let mut budget = DegreeBudget::new()
        .n(inst.nvars() as u64)
        .m(inst.len() as u64)
        .delta_0(inst.delta_0() as u64)
        .delta_a(inst.delta_a() as u64);
    // The completion of [M | (-q, p)] is 2 x (m+1) of degree max(delta_m, delta_0).
    if let Ok(pair) = conversion_for(&inst) {
        let dm = pair.m.degree().or_zero() as u64;
        budget = budget
            .delta_m(dm)
            .delta_n(pair.n.degree().or_zero() as u64)
            .r(2)
            .s(inst.len() as u64 + 1)
            .d(dm.max(inst.delta_0() as u64));
    }
    let o = overrides;
    budget.n = o.n.or(budget.n);
    budget.m = o.m.or(budget.m);
    budget.r = o.r.or(budget.r);
    budget.d = o.d.or(budget.d);
    budget.delta_0 = o.delta_0.or(budget.delta_0);
    budget.delta_a = o.delta_a.or(budget.delta_a);
    budget.delta_m = o.delta_m.or(budget.delta_m);
    budget.delta_n = o.delta_n.or(budget.delta_n);
    let mut entries = Vec::new();
    let mut rows = vec![vec!["formula".to_string(), "value".to_string()]];
    for f in BoundFormula::ALL {
        match evaluate_bound(f, &budget) {
            Ok(v) => {
                entries.push(json!({ "formula": f.id(), "value": v.to_string() }));
                rows.push(vec![f.id().into(), v.to_string()]);
            }
            Err(Error::MissingParameter { parameter, .. }) => {
                entries.push(json!({ "formula": f.id(), "value": null, "missing": parameter }));
                rows.push(vec![f.id().into(), format!("- (needs {parameter})")]);
            }
            Err(e) => return Outcome::error("bounds", exit_code(&e), e.to_string()),
        }
    }
    let param = |v: Option<u64>| v.map_or(Value::Null, |v| json!(v));
    let json = json!({
        "command": "bounds",
        "status": "ok",
        "budget": {
            "n": param(budget.n), "m": param(budget.m),
            "r": param(budget.r), "d": param(budget.d),
            "delta_0": param(budget.delta_0), "delta_a": param(budget.delta_a),
            "delta_m": param(budget.delta_m), "delta_n": param(budget.delta_n),
        },
        "bounds": entries,
    });
    let show = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
    let mut human = format!(
        "n={} m={} delta_0={} delta_a={} delta_m={} delta_n={} r={} d={}\n",
        show(budget.n),
        show(budget.m),
        show(budget.delta_0),
        show(budget.delta_a),
        show(budget.delta_m),
        show(budget.delta_n),
        show(budget.r),
        show(budget.d)
    );
    human.push_str(&table(&rows));
    Outcome::new(EXIT_OK, json, human)
}

fn verify_matrix(inst: &Grade2Instance, b: &PolyMatrix, label: &str) -> (bool, Value, String) {
    let v = verify_basis(&inst.a, b);
    let ok = v.passed();
    let json = json!({ "basis": label, "verification": report::verification(&v) });
    let mut rows = vec![vec!["basis".into(), label.into()], vec!["passed".into(), yes_no(ok)]];
    rows.extend(report::verification_lines(&v));
    (ok, json, table(&rows))
}

pub fn verify(file: &Path, basis: &Path) -> Outcome {
    let inst = match load(file, "verify") {
        Ok(inst) => inst,
        Err(o) => return o,
    };
    let text = match read(basis, "verify") {
        Ok(t) => t,
        Err(o) => return o,
    };
    let b = match parse_matrix_file(&text, &inst.vars) {
        Ok(b) => b,
        Err(e) => return Outcome::error("verify", EXIT_INPUT, format!("{}: {e}", basis.display())),
    };
    let (ok, mut json, human) = verify_matrix(&inst, &b, &basis.display().to_string());
    json["command"] = json!("verify");
    json["status"] = json!(if ok { "ok" } else { "failed" });
    Outcome::new(if ok { EXIT_OK } else { EXIT_FAILED }, json, human)
}

const EX51: &str = include_str!("../../../fixtures/ex51");
const EX51_U_STAR: &str = include_str!("../../../fixtures/ex51_u_star");
const EX51_UHAT_STAR: &str = include_str!("../../../fixtures/ex51_uhat_star");
const EX51_N_HAT: &str = include_str!("../../../fixtures/ex51_n_hat");
const EX52: &str = include_str!("../../../fixtures/ex52");
const EX52_U: &str = include_str!("../../../fixtures/ex52_u");
const EX52_UHAT: &str = include_str!("../../../fixtures/ex52_uhat");
const EX52_N_HAT: &str = include_str!("../../../fixtures/ex52_n_hat");

/// One check of a demo; checks that are not `counted` are reported only.
struct DemoCheck {
    label: String,
    ok: bool,
    counted: bool,
    detail: Option<String>,
}

fn completion_check(label: &str, f: &PolyMatrix, u: &PolyMatrix) -> DemoCheck {
    let res = check_completion(f, u);
    DemoCheck {
        label: label.into(),
        ok: res.is_ok(),
        counted: true,
        detail: res.err().map(|e| e.to_string()),
    }
}

fn basis_check(inst: &Grade2Instance, label: &str, b: &PolyMatrix, counted: bool) -> DemoCheck {
    let v = verify_basis(&inst.a, b);
    DemoCheck {
        label: label.into(),
        ok: v.passed(),
        counted,
        detail: None,
    }
}

fn demo_checks(name: Demo, inst: &Grade2Instance) -> Result<Vec<DemoCheck>, Outcome> {
    let mat = |label: &str, text: &str| {
        parse_matrix_file(text, &inst.vars).map_err(|e| Outcome::error("demo", EXIT_INPUT, format!("{label}: {e}")))
    };
    let (p, q) = (&inst.p, &inst.q);
    let m = inst.m.as_ref().expect("bundled examples carry M");
    let mut checks = Vec::new();
    match name {
        Demo::Ex51 => {
            let u = mat("ex51_u_star", EX51_U_STAR)?;
            checks.push(completion_check("M U* = [I | 0]", m, &u));
            let rebuilt = basis_from_completion(&u, p, q)
                .map_err(|e| Outcome::error("demo", EXIT_FAILED, e.to_string()))?;
            checks.push(basis_check(inst, "basis from U*", &rebuilt, true));
            let printed = mat("ex51_uhat_star", EX51_UHAT_STAR)?;
            let mut c = basis_check(inst, "printed basis from U*", &printed, false);
            if printed != rebuilt {
                c.detail = Some("differs from the basis rebuilt from U* in its first column".into());
            }
            checks.push(c);
            checks.push(basis_check(inst, "basis from N", &mat("ex51_n_hat", EX51_N_HAT)?, true));
        }
        Demo::Ex52 => {
            let tilde = m
                .hstack(&PolyMatrix::from_column(vec![-q, p.clone()], inst.nvars()))
                .map_err(|e| Outcome::error("demo", EXIT_FAILED, e.to_string()))?;
            let u = mat("ex52_u", EX52_U)?;
            checks.push(completion_check("[M | (-q, p)] U = [I | 0]", &tilde, &u));
            checks.push(basis_check(inst, "basis from U", &basis_from_tilde_completion(&u), true));
            checks.push(basis_check(inst, "printed basis from U", &mat("ex52_uhat", EX52_UHAT)?, true));
            checks.push(basis_check(inst, "basis from N", &mat("ex52_n_hat", EX52_N_HAT)?, true));
        }
    }
    Ok(checks)
}

pub fn demo(name: Demo, args: &BasisArgs) -> Outcome {
    let (label, text) = match name {
        Demo::Ex51 => ("ex51", EX51),
        Demo::Ex52 => ("ex52", EX52),
    };
    let inst = match parse(text, label, "demo") {
        Ok(inst) => inst,
        Err(o) => return o,
    };
    let checks = match demo_checks(name, &inst) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let computed = run_basis(&inst, args);
    let all_ok = checks.iter().all(|c| c.ok || !c.counted) && computed.code == EXIT_OK;
    let mut rows = Vec::new();
    for c in &checks {
        let mark = match (c.ok, c.counted) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "fail (not counted)",
        };
        let mut row = vec![c.label.clone(), mark.to_string()];
        row.extend(c.detail.clone());
        rows.push(row);
    }
    let mut human = format!("example {label}\n");
    human.push_str(&report::indent(&table(&rows)));
    human.push_str(&format!("computed with strategy {}\n", args.strategy.name()));
    human.push_str(&report::indent(&computed.human));
    let json = json!({
        "command": "demo",
        "example": label,
        "status": if all_ok { "ok" } else { "failed" },
        "checks": checks.iter().map(|c| json!({
            "check": c.label,
            "passed": c.ok,
            "counted": c.counted,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "computed": computed.json,
    });
    let code = if all_ok { EXIT_OK } else { computed.code.max(EXIT_FAILED) };
    Outcome::new(code, json, human)
}
