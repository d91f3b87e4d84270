//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use visibility_core::analysis::{run_epsilon_suite, run_sweep, verify_compact_type_ii, Status, SweepReport};
use visibility_core::numeric::{
    action_setup, certify, iwasawa_round_trip, planted_recovery, CertificateStatus, CertifyOptions, ACTIONS,
    PLANTED_THRESHOLD,
};
use visibility_core::realizations::{
    build, compact_type_ii_data, expected_dims, expected_fingerprint, Dataset, Family, HolomorphicType, RowFilter,
    TypeIIVariant,
};
use visibility_core::roots::k_epsilon_family;

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn evaluated(report: &SweepReport, table: u8) -> impl Iterator<Item = &visibility_core::analysis::RowReport> {
    report.records.iter().filter(move |r| r.table == table && !matches!(r.status, Status::DataOnly | Status::Boundary))
}

fn table_verification(report: &SweepReport, elapsed: Duration) -> Outcome {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for table in 1..=4u8 {
        let mut n = 0;
        for r in evaluated(report, table) {
            n += 1;
            if r.status != Status::Pass {
                failures.push(format!("table {} row {} {}", r.table, r.label, r.algebra));
            }
        }
        counts.push(n);
    }
    let labels = |t: u8| evaluated(report, t).map(|r| r.label.clone()).collect::<BTreeSet<_>>();
    let rows_t1: BTreeSet<String> = (1..=9).map(|k| k.to_string()).collect();
    let rows_t2: BTreeSet<String> = (20..=27).map(|k| k.to_string()).collect();
    let covered = rows_t1.is_subset(&labels(1)) && rows_t2.is_subset(&labels(2));
    let fast = elapsed < Duration::from_secs(300);
    ok(
        failures.is_empty() && covered && fast,
        format!(
            "instances per table {counts:?}, failures {}, rows 1-9 and 20-27 covered {covered}, {:.1}s{}",
            failures.len(),
            elapsed.as_secs_f64(),
            failures.first().map(|f| format!(", first failure {f}")).unwrap_or_default()
        ),
    )
}

fn epsilon_families(ds: &Dataset) -> Outcome {
    let suite = match run_epsilon_suite(ds, &RowFilter::all(), 8) {
        Ok(s) => s,
        Err(e) => return ok(false, format!("suite error: {e}")),
    };
    let labels: BTreeSet<&str> = suite.records.iter().map(|r| r.label.as_str()).collect();
    let covered = (1..=9).all(|k| labels.contains(k.to_string().as_str()));
    let powers = suite.records.iter().all(|r| r.signatures.is_power_of_two());
    let r = build(&Family::SlR { n: 3 }, 8).expect("sl(3,R)");
    let ex = |s: &str| expected_fingerprint(s, &Default::default()).expect("known fingerprint");
    let computed: BTreeSet<String> = match k_epsilon_family(&r.algebra, &r.theta, &r.p) {
        Ok(f) => f.iter().map(|m| m.fingerprint.to_string()).collect(),
        Err(e) => return ok(false, format!("sl(3,R) family error: {e}")),
    };
    let expected: BTreeSet<String> = [ex("so(3)"), ex("so(2,1)")].iter().map(|f| f.to_string()).collect();
    ok(
        suite.all_pass() && covered && powers && computed == expected,
        format!(
            "{} instances, {} signatures, all pass {}, rows 1-9 covered {covered}, sl(3,R) K_ε fingerprints match {}",
            suite.records.len(),
            suite.total_signatures(),
            suite.all_pass(),
            computed == expected
        ),
    )
}

fn compact_type_ii() -> Outcome {
    let mut cases: Vec<(TypeIIVariant, usize, usize)> = Vec::new();
    for variant in [TypeIIVariant::SuSp, TypeIIVariant::SoU] {
        for p in 1..=2 {
            for q in 1..=2 {
                cases.push((variant, p, q));
            }
        }
    }
    let mut lines = Vec::new();
    let mut pass = true;
    for (variant, p, q) in cases {
        let report = compact_type_ii_data(variant, p, q).and_then(|d| verify_compact_type_ii(&d));
        let good = match &report {
            Ok(r) => r.pass && r.sub_conditions && r.dims == expected_dims(variant, p, q),
            Err(_) => false,
        };
        pass &= good;
        let dims = report.map(|r| format!("{:?}", r.dims)).unwrap_or_else(|e| e.to_string());
        lines.push(format!("{}({p},{q}) {dims} {}", variant_name(variant), if good { "ok" } else { "FAIL" }));
    }
    ok(pass, lines.join("; "))
}

fn variant_name(v: TypeIIVariant) -> &'static str {
    match v {
        TypeIIVariant::SuSp => "II-1",
        TypeIIVariant::SoU => "II-2",
    }
}

fn certificates() -> Outcome {
    let opts = CertifyOptions { samples: 100, tol: 1e-6, seed: 2024, restarts: 32 };
    let mut pass = true;
    let mut parts = Vec::new();
    for id in ACTIONS {
        let setup = match action_setup(id) {
            Ok(s) => s,
            Err(e) => {
                pass = false;
                parts.push(format!("{id} error {e}"));
                continue;
            }
        };
        let start = Instant::now();
        let first = certify(&setup, &opts);
        let elapsed = start.elapsed();
        let second = certify(&setup, &opts);
        match (first, second) {
            (Ok(a), Ok(b)) => {
                let same = a.to_json() == b.to_json();
                let good = a.status == CertificateStatus::Pass && same && elapsed < Duration::from_secs(600);
                pass &= good;
                let r = &a.residuals;
                let worst = [r.slice_meets_orbit, r.sigma_fixes_slice, r.sigma_preserves_orbits, r.j_transversality]
                    .into_iter()
                    .fold(0.0, f64::max);
                parts.push(format!(
                    "{id} {} {worst:.1e}{}",
                    if good { "ok" } else { "FAIL" },
                    if same { "" } else { " nondeterministic" }
                ));
            }
            (Err(e), _) | (_, Err(e)) => {
                pass = false;
                parts.push(format!("{id} error {e}"));
            }
        }
    }
    ok(pass, format!("100 samples at 1e-6: {}", parts.join(", ")))
}

fn round_trips() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for id in ACTIONS {
        let setup = action_setup(id).expect("registered action");
        match planted_recovery(&setup, 1000, 7, 32) {
            Ok(r) => {
                let good = r.rate() >= 0.99;
                pass &= good;
                parts.push(format!("{id} {}/{}", r.recovered, r.trials));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{id} error {e}"));
            }
        }
    }
    let n = action_setup("sl2R:N").expect("unipotent action");
    let iw = iwasawa_round_trip(&n, 1000, 7).unwrap_or(f64::INFINITY);
    pass &= iw < 1e-10;
    ok(pass, format!("planted under {PLANTED_THRESHOLD:.0e}: {}; Iwasawa round trip {iw:.1e}", parts.join(", ")))
}

fn holomorphy(report: &SweepReport) -> Outcome {
    let mut checked = 0;
    let mut wrong = Vec::new();
    for (table, want) in [(1u8, HolomorphicType::Holomorphic), (2, HolomorphicType::AntiHolomorphic)] {
        for r in evaluated(report, table) {
            checked += 1;
            if r.holomorphic_type != Some(want) {
                wrong.push(format!("table {table} row {} {}", r.label, r.algebra));
            }
        }
    }
    ok(
        checked > 0 && wrong.is_empty(),
        format!(
            "{checked} instances classified, {} mismatches{}",
            wrong.len(),
            wrong.first().map(|w| format!(", first {w}")).unwrap_or_default()
        ),
    )
}

fn main() {
    let ds = Dataset::embedded().expect("embedded dataset");
    let start = Instant::now();
    let sweep = run_sweep(&ds, &RowFilter::all(), "", 8).expect("sweep runs");
    let sweep_time = start.elapsed();

    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 table verification", Box::new(|| table_verification(&sweep, sweep_time))),
        ("2 ε-family suite", Box::new(|| epsilon_families(&ds))),
        ("3 compact Type II", Box::new(compact_type_ii)),
        ("4 numeric certificates", Box::new(certificates)),
        ("5 oracle round trips", Box::new(round_trips)),
        ("6 holomorphy classification", Box::new(|| holomorphy(&sweep))),
    ];
    let mut all = true;
    for (name, run) in &criteria {
        let t = Instant::now();
        let o = run();
        all &= o.pass;
        println!("{} {name} [{:.1}s]: {}", if o.pass { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64(), o.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
