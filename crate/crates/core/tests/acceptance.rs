//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Every identity is checked with exact equality in ℚ(α) (or ℚ for the
//! rational-α runs); the only numeric thresholds are the wall-time targets
//! below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use jack_nabla::coeff::{rat, QAlpha};
use jack_nabla::nabla::{positivity_scan, Nabla, ScanKind};
use jack_nabla::verify::{rational_agreement, run_suite, Suite, SuiteReport, VerifyParams};

const DEGREE: usize = 6;
const SCAN_MAX_N: usize = 6;
const RATIONAL_ALPHAS: [(i64, i64); 3] = [(2, 1), (3, 2), (5, 1)];
const AGREEMENT_DEGREE: usize = 5;

const GOLDEN_LIMIT: Duration = Duration::from_secs(60);
const HEISENBERG_LIMIT: Duration = Duration::from_secs(5 * 60);
const MAIN_THEOREM_LIMIT: Duration = Duration::from_secs(10 * 60);
const C_SCAN_LIMIT: Duration = Duration::from_secs(10 * 60);
const DF_SCAN_LIMIT: Duration = Duration::from_secs(15 * 60);
const SYMBOLIC_ALL_LIMIT: Duration = Duration::from_secs(45 * 60);
const RATIONAL_ALL_LIMIT: Duration = Duration::from_secs(5 * 60);

struct Outcome {
    passed: bool,
    summary: String,
    failures: Vec<String>,
}

impl Outcome {
    fn from_reports(reports: &[&SuiteReport], elapsed: Duration, limit: Option<Duration>) -> Self {
        let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
        let mut failures: Vec<String> = reports
            .iter()
            .flat_map(|r| {
                r.failures().map(move |c| {
                    format!("{} / {} [{}]: {}", r.suite, c.name, c.params, c.detail.clone().unwrap_or_default())
                })
            })
            .collect();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        if !in_time {
            failures.push(format!("took {elapsed:.1?}, target {:?}", limit.unwrap()));
        }
        Outcome {
            passed: failures.is_empty() && checks > 0,
            summary: format!("{checks} exact checks in {:.2} s", elapsed.as_secs_f64()),
            failures,
        }
    }
}

fn report(id: usize, title: &str, outcome: &Outcome) {
    let verdict = if outcome.passed { "PASS" } else { "FAIL" };
    println!("{verdict}  criterion {id}: {title} ({})", outcome.summary);
    for f in outcome.failures.iter().take(10) {
        println!("      {f}");
    }
}

fn scans(nabla: &Nabla<QAlpha>, kinds: &[ScanKind], limit: Duration) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut nonzero = 0;
    for &kind in kinds {
        for n in 1..=SCAN_MAX_N {
            match positivity_scan(nabla, kind, n) {
                Ok(r) => {
                    checked += r.checked;
                    nonzero += r.nonzero;
                    for v in &r.violations {
                        failures.push(format!("{} n={n}: π={:?} μ={:?} ν={:?} → {}", kind.name(), v.pi, v.mu, v.nu, v.polynomial));
                    }
                }
                Err(e) => failures.push(format!("{} n={n}: {e}", kind.name())),
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed > limit {
        failures.push(format!("took {elapsed:.1?}, target {limit:?}"));
    }
    Outcome {
        passed: failures.is_empty() && nonzero > 0,
        summary: format!("{checked} triples, {nonzero} nonzero, in {:.2} s", elapsed.as_secs_f64()),
        failures,
    }
}

fn main() -> ExitCode {
    let params = VerifyParams::for_degree(DEGREE);
    let symbolic = Nabla::new(QAlpha::alpha()).expect("symbolic engine");
    println!("acceptance: degree {DEGREE}, symbolic α, exact equality throughout");

    let mut symbolic_time = Duration::ZERO;
    let mut run = |suite: Suite| -> (SuiteReport, Duration) {
        let start = Instant::now();
        let rep = run_suite(&symbolic, suite, &params).unwrap_or_else(|e| panic!("{suite}: {e}"));
        let t = start.elapsed();
        symbolic_time += t;
        (rep, t)
    };

    let mut outcomes = Vec::new();

    let (golden, t) = run(Suite::Golden);
    outcomes.push((1, "golden operator displays", Outcome::from_reports(&[&golden], t, Some(GOLDEN_LIMIT))));

    let (heis, t) = run(Suite::Heisenberg);
    outcomes.push((2, "Heisenberg relations |m|,|ℓ| ≤ 4 at D = 6", Outcome::from_reports(&[&heis], t, Some(HEISENBERG_LIMIT))));

    let (main_thm, t) = run(Suite::MainTheorem);
    outcomes.push((3, "G by conjugation = differential expression, |π| ≤ 5", Outcome::from_reports(&[&main_thm], t, Some(MAIN_THEOREM_LIMIT))));

    let (ns, t6) = run(Suite::NsDiagonal);
    let (rows, t7) = run(Suite::RowInsertion);
    let (chr, t8a) = run(Suite::Characterization);
    let (dual, t8b) = run(Suite::Dualities);

    outcomes.push((4, "c in ℕ[b] for n ≤ 6", scans(&symbolic, &[ScanKind::CInB], C_SCAN_LIMIT)));
    outcomes.push((
        5,
        "d and f in ℕ[α] for n ≤ 6",
        scans(&symbolic, &[ScanKind::DInAlpha, ScanKind::FInAlpha], DF_SCAN_LIMIT),
    ));
    outcomes.push((6, "diagonal actions on Jack polynomials and characters", Outcome::from_reports(&[&ns], t6, None)));
    outcomes.push((7, "row insertion: operator exponential and shifted side", Outcome::from_reports(&[&rows], t7, None)));
    outcomes.push((
        8,
        "characterization of G, dualities and series oracles",
        Outcome::from_reports(&[&chr, &dual], t8a + t8b, None),
    ));

    let mut fast_reports = Vec::new();
    let fast_start = Instant::now();
    for (p, q) in RATIONAL_ALPHAS {
        let fast = Nabla::new(rat(p, q)).expect("rational engine");
        for suite in Suite::ALL {
            fast_reports.push(run_suite(&fast, suite, &params).unwrap_or_else(|e| panic!("{suite} at {p}/{q}: {e}")));
        }
        fast_reports.push(
            rational_agreement(&symbolic, &fast, &VerifyParams::for_degree(AGREEMENT_DEGREE))
                .unwrap_or_else(|e| panic!("agreement at {p}/{q}: {e}")),
        );
    }
    let fast_time = fast_start.elapsed();
    let mut all: Vec<&SuiteReport> = vec![&golden, &heis, &main_thm, &ns, &rows, &chr, &dual];
    all.extend(fast_reports.iter());
    let mut o9 = Outcome::from_reports(&all, symbolic_time, Some(SYMBOLIC_ALL_LIMIT));
    if fast_time > RATIONAL_ALL_LIMIT {
        o9.passed = false;
        o9.failures.push(format!("rational runs took {fast_time:.1?}, target {RATIONAL_ALL_LIMIT:?}"));
    }
    o9.summary = format!(
        "{}; symbolic suites {:.2} s, rational α ∈ {{2, 3/2, 5}} with agreement {:.2} s",
        o9.summary,
        symbolic_time.as_secs_f64(),
        fast_time.as_secs_f64()
    );
    outcomes.push((9, "all suites end to end, symbolic and rational α", o9));

    outcomes.sort_by_key(|(id, _, _)| *id);
    let mut ok = true;
    for (id, title, o) in &outcomes {
        report(*id, title, o);
        ok &= o.passed;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
