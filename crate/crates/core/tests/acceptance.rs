//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Exits 0 even when a criterion fails so that `cargo test` reports the
//! remaining tests; set `ACCEPTANCE_STRICT=1` to exit 1 on any failure.
//! The randomized pipeline criterion runs every instance in a child process
//! (`acceptance --instance SEED`) so that a slow instance can be stopped.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::io::Read;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};
use syz_core::bounds::{evaluate_bound, BoundFormula, DegreeBudget};
use syz_core::instance::{parse_instance, parse_matrix_file};
use syz_core::quillen_suslin::{check_completion, qs_transform};
use syz_core::random::{
    random_grade_two_instance, random_orthogonal_instance, random_unimodular_matrix, PolySampler,
};
use syz_core::syzygy::{
    aligned_bases_check, basis_from_completion, basis_from_tilde_completion, build_tilde_n_star,
    change_of_basis, compute_syzygy_basis, conversion_for, correct_n_star, make_unimodular_m, verify_basis,
    AlignmentStatus,
};
use syz_core::poly::rat;
use syz_core::{Grade2Instance, PolyMatrix, Polynomial, Strategy, StrategyChoice};

/// Tolerances and sizes, fixed here rather than read from the environment.
const FIXTURE_LIMIT: Duration = Duration::from_secs(1);
const PIPELINE_RUN_LIMIT: Duration = Duration::from_secs(30);
const RANDOM_SUITE_LIMIT: Duration = Duration::from_secs(600);
const RANDOM_INSTANCES: u64 = 50;
/// Equal share of the suite budget, so one slow instance cannot starve the rest.
const RANDOM_INSTANCE_LIMIT: Duration = Duration::from_secs(12);
const CONVERSION_INSTANCES: u64 = 25;
const QS_CASES: u64 = 100;
const ALIGNED_INSTANCES: u64 = 10;
const STRATEGIES: [Strategy; 3] = [Strategy::ViaTildeM, Strategy::ViaM, Strategy::ViaN];

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn fixture_text(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn instance(name: &str) -> Grade2Instance {
    parse_instance(&fixture_text(name)).expect("fixture parses")
}

fn matrix(inst: &Grade2Instance, name: &str) -> PolyMatrix {
    parse_matrix_file(&fixture_text(name), &inst.vars).expect("fixture matrix parses")
}

fn det_is_nonzero_constant(u: &PolyMatrix) -> bool {
    u.determinant()
        .ok()
        .and_then(|d| d.constant_value())
        .is_some_and(|c| !c.is_zero())
}

fn row(a: &[Polynomial]) -> PolyMatrix {
    PolyMatrix::from_row(a.to_vec(), a[0].nvars())
}

fn identity(inst: &Grade2Instance) -> PolyMatrix {
    PolyMatrix::identity(2, inst.nvars())
}

fn tilde_m(inst: &Grade2Instance, m: &PolyMatrix) -> PolyMatrix {
    m.hstack(&PolyMatrix::from_column(vec![-&inst.q, inst.p.clone()], inst.nvars()))
        .expect("same row count")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let inst = instance("ex51");
    let m = inst.m.clone().unwrap();
    let n = inst.n.clone().unwrap();
    let (p, q) = (&inst.p, &inst.q);
    let mut notes = Vec::new();
    let mut ok = true;

    let uhat = matrix(&inst, "ex51_uhat_star");
    let v = verify_basis(&inst.a, &uhat);
    if !v.passed() {
        ok = false;
        notes.push(format!("printed U-hat* fails (syzygy columns {:?}, minors {})", v.syzygy_ok, v.minors_ok));
        let u_star = matrix(&inst, "ex51_u_star");
        let rebuilt = basis_from_completion(&u_star, p, q).unwrap();
        let rv = verify_basis(&inst.a, &rebuilt);
        notes.push(format!(
            "rebuilt from printed U*: {}, other columns agree: {}",
            if rv.passed() { "passes" } else { "fails" },
            rebuilt.select_columns(&[1, 2]) == uhat.select_columns(&[1, 2])
        ));
    }

    let n_star = matrix(&inst, "ex51_n_star");
    if !(det_is_nonzero_constant(&n_star) && n_star.select_columns(&[0, 1]) == n) {
        ok = false;
        notes.push("N* is not a unimodular extension of N".into());
    }

    // a N** = (p, q, 0, ..., 0), and N** is what the column correction gives.
    let nss = matrix(&inst, "ex51_n_star_star");
    let image = row(&inst.a).try_mul(&nss).unwrap().row(0);
    let zero = Polynomial::zero(inst.nvars());
    let image_ok = image[0] == *p && image[1] == *q && image[2..].iter().all(|x| *x == zero);
    let corrected = correct_n_star(&m, p, q, &n_star).unwrap().0;
    if !(image_ok && det_is_nonzero_constant(&nss) && corrected == nss) {
        ok = false;
        notes.push(format!("N** postcondition: image {image_ok}, matches correction {}", corrected == nss));
    }

    let nhat = matrix(&inst, "ex51_n_hat");
    if !verify_basis(&inst.a, &nhat).passed() {
        ok = false;
        notes.push("N-hat fails verify_basis".into());
    }
    let elapsed = start.elapsed();
    if elapsed >= FIXTURE_LIMIT {
        ok = false;
    }
    notes.push(format!("{elapsed:.2?}"));
    Outcome {
        pass: ok,
        detail: notes.join("; "),
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let inst = instance("ex52");
    let m = inst.m.clone().unwrap();
    let mt = tilde_m(&inst, &m);
    let mut checks = Vec::new();
    let u = matrix(&inst, "ex52_u");
    let product = mt.try_mul(&u).unwrap();
    let target = PolyMatrix::identity(2, inst.nvars())
        .hstack(&PolyMatrix::zero(2, u.cols() - 2, inst.nvars()))
        .unwrap();
    checks.push(("M~ U = [I | 0]", product == target));
    checks.push(("det U constant", det_is_nonzero_constant(&u)));
    checks.push(("U-hat verified", verify_basis(&inst.a, &matrix(&inst, "ex52_uhat")).passed()));
    checks.push((
        "U-hat read off U",
        basis_from_tilde_completion(&u) == matrix(&inst, "ex52_uhat"),
    ));
    checks.push(("N-hat verified", verify_basis(&inst.a, &matrix(&inst, "ex52_n_hat")).passed()));
    checks.push(("M rejected", m.is_unimodular() == Ok(false)));
    checks.push(("M~ accepted", mt.is_unimodular() == Ok(true)));
    let elapsed = start.elapsed();
    checks.push(("under 1 s", elapsed < FIXTURE_LIMIT));
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    if failed.is_empty() {
        pass(format!("{} checks, {elapsed:.2?}", checks.len()))
    } else {
        fail(format!("failed: {}", failed.join(", ")))
    }
}

fn criterion_3() -> Outcome {
    let mut worst = Duration::ZERO;
    let mut degrees = Vec::new();
    for name in ["ex51", "ex52"] {
        let inst = instance(name);
        for s in STRATEGIES {
            for seed in 0..3 {
                let start = Instant::now();
                let res = compute_syzygy_basis(&inst, StrategyChoice::Fixed(s), seed, false);
                let elapsed = start.elapsed();
                worst = worst.max(elapsed);
                let b = match res {
                    Ok(b) => b,
                    Err(e) => return fail(format!("{name} {s} seed {seed}: {e}")),
                };
                let v = &b.verification;
                if !v.passed() || v.bound_comparisons.is_empty() {
                    return fail(format!("{name} {s} seed {seed}: not verified or no bound compared"));
                }
                if name == "ex51" && s == Strategy::ViaM && b.degree() > 15554 {
                    return fail(format!("ex51 m seed {seed}: degree {} above 15554", b.degree()));
                }
                if elapsed >= PIPELINE_RUN_LIMIT {
                    return fail(format!("{name} {s} seed {seed}: {elapsed:.2?}"));
                }
                if seed == 0 {
                    degrees.push(format!("{name}/{s}={}", b.degree()));
                }
            }
        }
    }
    pass(format!("18 runs, degrees {}, slowest {worst:.2?}", degrees.join(" ")))
}

/// `[[1 - e q, f q], [e p, 1 - f p]]` written out independently of the library's decomposition.
fn expected_k(inst: &Grade2Instance, e: &Polynomial, f: &Polynomial) -> PolyMatrix {
    let one = Polynomial::one(inst.nvars());
    let (p, q) = (&inst.p, &inst.q);
    PolyMatrix::from_rows(
        vec![
            vec![&one - &(e * q), f * q],
            vec![e * p, &one - &(f * p)],
        ],
        inst.nvars(),
    )
    .unwrap()
}

fn conversion_ok(inst: &Grade2Instance) -> Result<(Polynomial, Polynomial), String> {
    let pair = conversion_for(inst).map_err(|e| e.to_string())?;
    let k = pair.m.try_mul(&pair.n).map_err(|e| e.to_string())?;
    if k != expected_k(inst, &pair.e, &pair.f) {
        return Err("M N does not match [[1 - eq, fq], [ep, 1 - fp]]".into());
    }
    if &pair.e * &inst.p != *k.get(1, 0) || &pair.f * &inst.q != *k.get(0, 1) {
        return Err("e, f are not exact quotients".into());
    }
    Ok((pair.e, pair.f))
}

fn random_instance(seed: u64) -> Grade2Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 3 + (seed % 3) as usize;
    random_grade_two_instance(&mut rng, 2, m, 2, 2)
}

fn criterion_4() -> Outcome {
    let nvars = 2;
    let c = |k: i64| Polynomial::constant(nvars, rat(k));
    for (name, expected) in [("ex51", (c(0), c(0))), ("ex52", (c(1), c(1)))] {
        match conversion_ok(&instance(name)) {
            Ok(ef) if ef == expected => {}
            Ok(ef) => return fail(format!("{name}: (e, f) = ({}, {})", ef.0, ef.1)),
            Err(e) => return fail(format!("{name}: {e}")),
        }
    }
    for seed in 0..CONVERSION_INSTANCES {
        if let Err(e) = conversion_ok(&random_instance(1000 + seed)) {
            return fail(format!("random seed {}: {e}", 1000 + seed));
        }
    }
    pass(format!("2 fixtures with (0,0) and (1,1), {CONVERSION_INSTANCES} random instances"))
}

/// Runs all checks of the randomized suite on one instance; prints progress and a final verdict line.
fn run_instance(seed: u64) {
    let inst = random_instance(seed);
    println!("stage m={}", inst.len());
    let verdict = (|| -> Result<String, String> {
        let pair = conversion_for(&inst).map_err(|e| format!("conversion: {e}"))?;
        println!("stage N unimodular");
        if pair.n.transpose().is_unimodular() != Ok(true) {
            return Err("N^t is not unimodular".into());
        }
        println!("stage M'");
        let mp = make_unimodular_m(&pair, &inst.p, &inst.q, 0).map_err(|e| format!("M': {e}"))?;
        if mp.try_mul(&pair.n).ok() != Some(identity(&inst)) {
            return Err("M' N != I".into());
        }
        let mut bases = Vec::new();
        for s in STRATEGIES {
            println!("stage {s}");
            let b = compute_syzygy_basis(&inst, StrategyChoice::Fixed(s), 0, false)
                .map_err(|e| format!("{s}: {e}"))?;
            if !b.verification.passed() {
                return Err(format!("{s}: not verified"));
            }
            bases.push(b);
        }
        println!("stage change of basis");
        for i in 0..bases.len() {
            for j in 0..bases.len() {
                if i != j {
                    let x = change_of_basis(&bases[i].b, &bases[j].b).map_err(|e| e.to_string())?;
                    if !det_is_nonzero_constant(&x) {
                        return Err("change of basis is not invertible".into());
                    }
                }
            }
        }
        let degs: Vec<String> = bases.iter().map(|b| b.degree().to_string()).collect();
        Ok(format!("degrees {}", degs.join("/")))
    })();
    match verdict {
        Ok(d) => println!("result ok {d}"),
        Err(e) => println!("result fail {e}"),
    }
}

enum ChildResult {
    Ok,
    Failed(String),
    TimedOut(String),
}

fn spawn_instance(seed: u64, limit: Duration) -> ChildResult {
    let exe = std::env::current_exe().expect("own path");
    let mut child = Command::new(exe)
        .args(["--instance", &seed.to_string()])
        .stdout(Stdio::piped())
        .stderr(Stdio::null())
        .spawn()
        .expect("child starts");
    let start = Instant::now();
    let timed_out = loop {
        if child.try_wait().expect("child status").is_some() {
            break false;
        }
        if start.elapsed() >= limit {
            let _ = child.kill();
            let _ = child.wait();
            break true;
        }
        std::thread::sleep(Duration::from_millis(20));
    };
    let mut out = String::new();
    child.stdout.take().unwrap().read_to_string(&mut out).ok();
    let last = out.lines().last().unwrap_or("").to_string();
    if timed_out {
        return ChildResult::TimedOut(last.trim_start_matches("stage ").to_string());
    }
    match last.strip_prefix("result ") {
        Some(r) if r.starts_with("ok") => ChildResult::Ok,
        Some(r) => ChildResult::Failed(r.trim_start_matches("fail ").to_string()),
        None => ChildResult::Failed("child exited without a verdict".into()),
    }
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut ok = 0;
    let mut run = 0;
    let mut reasons: BTreeMap<String, Vec<u64>> = BTreeMap::new();
    for seed in 0..RANDOM_INSTANCES {
        let remaining = RANDOM_SUITE_LIMIT.saturating_sub(start.elapsed());
        if remaining.is_zero() {
            break;
        }
        run += 1;
        match spawn_instance(seed, remaining.min(RANDOM_INSTANCE_LIMIT)) {
            ChildResult::Ok => ok += 1,
            ChildResult::Failed(why) => reasons.entry(why).or_default().push(seed),
            ChildResult::TimedOut(stage) => reasons.entry(format!("stopped at {stage}")).or_default().push(seed),
        }
    }
    let elapsed = start.elapsed();
    let tally: Vec<String> = reasons
        .iter()
        .map(|(why, seeds)| format!("{why}: {} (seeds {:?})", seeds.len(), seeds))
        .collect();
    let detail = format!(
        "{ok} of {RANDOM_INSTANCES} instances pass, {} not reached, {elapsed:.0?}{}{}",
        RANDOM_INSTANCES - run,
        if tally.is_empty() { "" } else { "; " },
        tally.join("; ")
    );
    if ok == RANDOM_INSTANCES && elapsed < RANDOM_SUITE_LIMIT {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_6() -> Outcome {
    let sampler = PolySampler::new(2, 1);
    let mut max_deg = 0;
    for case in 0..QS_CASES {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + case);
        let r = 1 + (case % 2) as usize;
        let s = r + 1 + (case / 2 % 3) as usize;
        let f = random_unimodular_matrix(&mut rng, r, s, 4, &sampler);
        let cert = match qs_transform(&f, case) {
            Ok(c) => c,
            Err(e) => return fail(format!("case {case} ({r}x{s}): {e}")),
        };
        if let Err(e) = check_completion(&f, &cert.u) {
            return fail(format!("case {case}: {e}"));
        }
        if !det_is_nonzero_constant(&cert.u) {
            return fail(format!("case {case}: determinant not constant"));
        }
        let n = 2u64;
        let d = f.degree().or_zero() as u64;
        // 3 n^2 (r(d+1))^(2n), evaluated here from scratch
        let bound = BigInt::from(3 * n * n) * num_traits::pow(BigInt::from(r as u64 * (d + 1)), (2 * n) as usize);
        if BigInt::from(cert.degree) > bound {
            return fail(format!("case {case}: degree {} above {bound}", cert.degree));
        }
        max_deg = max_deg.max(cert.degree);
        if case % 10 == 0 {
            let again = qs_transform(&f, case).map(|c| c.u);
            if again.as_ref() != Ok(&cert.u) {
                return fail(format!("case {case}: same seed gave a different completion"));
            }
        }
    }
    pass(format!("{QS_CASES} matrices (1 and 2 rows), max degree {max_deg}, determinism on every tenth"))
}

fn criterion_7() -> Outcome {
    let b = DegreeBudget::new;
    let ev = |f: BoundFormula, budget: DegreeBudget| evaluate_bound(f, &budget).unwrap();
    let values = [
        (ev(BoundFormula::QsExplicit, b().n(2).r(2).d(1)), BigInt::from(3 * 4 * 4i64.pow(4))),
        (ev(BoundFormula::Mtt1, b().n(2).delta_0(2).delta_a(2)), BigInt::from(192 * 7i64.pow(4))),
        (ev(BoundFormula::Citam, b().delta_0(2).delta_a(2)), BigInt::from(192 * 5i64.pow(4))),
        (ev(BoundFormula::DeltaNZerodim, b().delta_0(2).delta_a(2)), BigInt::from(2 * 4 + 2 + 2)),
        (
            ev(BoundFormula::Mtt2, b().n(2).m(4).delta_0(2).delta_a(2)),
            BigInt::from(20 + 768 * 13i64.pow(4)),
        ),
        (ev(BoundFormula::DeltaM, b().delta_0(3).delta_a(2)), BigInt::from(11)),
    ];
    for (i, (got, want)) in values.iter().enumerate() {
        if got != want {
            return fail(format!("value {}: {got} != {want}", i + 1));
        }
    }
    let mut cases = 0;
    for n in 1..=3u64 {
        for d0 in 1..=3u64 {
            for da in 1..=3u64 {
                let dm = ev(BoundFormula::DeltaM, b().delta_0(d0).delta_a(da));
                let dm = u64::try_from(dm).unwrap();
                let dn = u64::try_from(ev(BoundFormula::DeltaNZerodim, b().delta_0(d0).delta_a(da))).unwrap();
                let mtt1 = ev(BoundFormula::Mtt1, b().n(n).delta_0(d0).delta_a(da));
                if dm < d0 || mtt1 != ev(BoundFormula::TildeM, b().n(n).delta_0(d0).delta_m(dm)) {
                    return fail(format!("MTT_1 chain at n={n} d0={d0} da={da}"));
                }
                for m in 2..=5u64 {
                    let mtt2 = ev(BoundFormula::Mtt2, b().n(n).m(m).delta_0(d0).delta_a(da));
                    let via_n = ev(BoundFormula::ViaN, b().n(n).m(m).delta_0(d0).delta_m(dm).delta_n(dn));
                    if mtt2 != via_n {
                        return fail(format!("MTT_2 chain at n={n} m={m} d0={d0} da={da}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    pass(format!("6 values, {cases} chain cases"))
}

fn criterion_8() -> Outcome {
    let cases = [
        ("vars: x\na1: x\na2: 1 - x\np: x\nq: 1 - x\n", "(x, 1 - x)"),
        ("vars: s t\na1: s\na2: t\na3: s*t + 1\np: s\nq: s*t + 1\n", "(s, t, st + 1)"),
    ];
    let mut degrees = Vec::new();
    for (text, label) in cases {
        let inst = parse_instance(text).unwrap();
        match compute_syzygy_basis(&inst, StrategyChoice::Auto, 0, false) {
            Ok(b) if b.strategy == Strategy::UnitIdealDirect && verify_basis(&inst.a, &b.b).passed() => {
                degrees.push(format!("{label}: degree {}", b.degree()))
            }
            Ok(b) => return fail(format!("{label}: strategy {} or verification", b.strategy)),
            Err(e) => return fail(format!("{label}: {e}")),
        }
    }
    pass(degrees.join(", "))
}

fn criterion_9() -> Outcome {
    let inst = instance("ex51");
    let pair = conversion_for(&inst).unwrap();
    if pair.m.try_mul(&pair.n).unwrap() != identity(&inst) {
        return fail("ex51: M N != I");
    }
    match aligned_bases_check(&inst.a, &inst.p, &inst.q, &pair, 0) {
        Ok(AlignmentStatus::Aligned) => {}
        other => return fail(format!("ex51: {other:?}")),
    }
    for k in 0..ALIGNED_INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(7000 + k);
        let m = 3 + (k % 2) as usize;
        let inst = random_orthogonal_instance(&mut rng, 2, m, 2, 3);
        let pair = match conversion_for(&inst) {
            Ok(p) => p,
            Err(e) => return fail(format!("random {k}: {e}")),
        };
        if pair.m.try_mul(&pair.n).unwrap() != identity(&inst) {
            return fail(format!("random {k}: M N != I"));
        }
        match aligned_bases_check(&inst.a, &inst.p, &inst.q, &pair, k) {
            Ok(AlignmentStatus::Aligned) => {}
            other => return fail(format!("random {k}: {other:?}")),
        }
    }
    for name in ["ex51", "ex52"] {
        let inst = instance(name);
        let pair = conversion_for(&inst).unwrap();
        let t = match build_tilde_n_star(&pair, &inst.p, &inst.q) {
            Ok(t) => t,
            Err(e) => return fail(format!("{name}: {e}")),
        };
        // Independent check of the postcondition.
        let product = tilde_m(&inst, &pair.m).try_mul(&t).unwrap();
        let mut target = PolyMatrix::zero(2, 3, inst.nvars());
        target.set(0, 0, Polynomial::one(inst.nvars()));
        target.set(1, 1, Polynomial::one(inst.nvars()));
        if product != target {
            return fail(format!("{name}: M~ N~* != [I | 0]"));
        }
    }
    pass(format!("ex51 and {ALIGNED_INSTANCES} random M N = I instances aligned; M~ N~* = [I | 0] on both fixtures"))
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.len() == 3 && args[1] == "--instance" {
        run_instance(args[2].parse().expect("seed"));
        return;
    }
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("ex51 printed matrices", criterion_1),
        ("ex52 printed matrices", criterion_2),
        ("pipeline on fixtures", criterion_3),
        ("M N decomposition", criterion_4),
        ("randomized pipeline suite", criterion_5),
        ("completion contract", criterion_6),
        ("bounds table", criterion_7),
        ("unit-ideal route", criterion_8),
        ("alignment", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            fail(format!("panicked: {msg}"))
        });
        if !outcome.pass {
            failures += 1;
        }
        println!(
            "criterion {}: {} {name} [{:.1?}] {}",
            i + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            start.elapsed(),
            outcome.detail
        );
    }
    println!("acceptance: {} of 9 criteria pass", 9 - failures);
    if failures > 0 && std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
