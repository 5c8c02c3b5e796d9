use std::fmt::Display;

use jack_nabla::catalytic::{op_matrix, OpSpec};
use jack_nabla::coeff::{BigRational, Field, QAlpha};
use jack_nabla::nabla::{b_form, positivity_scan, CoeffKind, Nabla, ScanKind, ScanReport};
use jack_nabla::partition::{partitions_of, Partition};
use jack_nabla::shifted::moment_h;
use jack_nabla::verify::{rational_agreement, run_suite, Suite, SuiteReport, VerifyParams};
use serde::Serialize;

use crate::output::{self, format_or, partition_label};
use crate::{cache, AlphaMode, Cli, CliError, Command, Format, TableKind, EXIT_VIOLATION};

/// Largest size accepted by `scan` and `table coeff` unless overridden by
/// this variable.
pub const SIZE_LIMIT_ENV: &str = "NABLA_SCAN_MAX_N";
const DEFAULT_SIZE_LIMIT: usize = 9;

/// Coefficient values as the CLI prints them.
trait Value: Field + Display {
    fn b_form(&self) -> Option<String>;
}

impl Value for QAlpha {
    fn b_form(&self) -> Option<String> {
        Some(b_form(self))
    }
}

impl Value for BigRational {
    fn b_form(&self) -> Option<String> {
        None
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn singular(e: impl Display) -> CliError {
    usage(format!("computation failed at this α: {e}"))
}

fn parse_partition(flag: &str, s: &str) -> Result<Partition, CliError> {
    s.parse().map_err(|_| usage(format!("--{flag}: cannot parse partition `{s}`")))
}

fn size_limit() -> Result<usize, CliError> {
    match std::env::var(SIZE_LIMIT_ENV) {
        Ok(v) => v
            .parse()
            .map_err(|_| usage(format!("{SIZE_LIMIT_ENV} must be a nonnegative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_SIZE_LIMIT),
    }
}

fn check_size(n: usize) -> Result<(), CliError> {
    let limit = size_limit()?;
    if n > limit {
        return Err(CliError::Resource(format!(
            "n = {n} exceeds the configured limit {limit}; the number of triples grows like p(n)³ \
             and the symbolic Jack basis of degree n must be held in memory. \
             Raise {SIZE_LIMIT_ENV} if the machine can afford it."
        )));
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.alpha {
        AlphaMode::Symbolic => {
            let nabla = Nabla::new(QAlpha::alpha()).map_err(singular)?;
            let loaded = cache::load(nabla.jacks());
            let result = dispatch(cli, &nabla, Some(&nabla));
            cache::store(nabla.jacks(), &loaded);
            result
        }
        AlphaMode::Rational(r) => {
            let nabla = Nabla::new(r.clone()).map_err(singular)?;
            dispatch(cli, &nabla, None)
        }
    }
}

fn dispatch<F: Value>(cli: &Cli, nabla: &Nabla<F>, symbolic: Option<&Nabla<QAlpha>>) -> Result<u8, CliError> {
    let alpha = cli.alpha.label();
    let (text, code) = match &cli.command {
        Command::Table {
            what,
            n,
            lambda,
            pi,
            kind,
            name,
            degree,
            order,
        } => {
            let text = match what {
                TableKind::Jack => {
                    let fmt = format_or(cli.format, Format::Text);
                    let keys = match (n, lambda) {
                        (_, Some(l)) => vec![parse_partition("lambda", l)?],
                        (Some(n), None) => partitions_of(*n),
                        (None, None) => return Err(usage("table jack needs --n or --lambda")),
                    };
                    jack_table(nabla, &alpha, &keys, fmt)?
                }
                TableKind::Operator => {
                    let name = name.as_deref().ok_or_else(|| usage("table operator needs --name"))?;
                    let fmt = format_or(cli.format, Format::Text);
                    operator_table(nabla, &alpha, name, degree.unwrap_or(4), fmt)?
                }
                TableKind::Coeff => {
                    let kind: CoeffKind = kind
                        .as_deref()
                        .ok_or_else(|| usage("table coeff needs --kind"))?
                        .parse()
                        .map_err(usage)?;
                    let n = n.ok_or_else(|| usage("table coeff needs --n"))?;
                    check_size(n)?;
                    let pi = pi.as_deref().map(|s| parse_partition("pi", s)).transpose()?;
                    if let Some(p) = &pi {
                        if p.size() != n {
                            return Err(usage(format!("--pi {p} is not a partition of {n}")));
                        }
                    }
                    let fmt = format_or(cli.format, Format::Json);
                    coeff_table(nabla, &alpha, kind, n, pi.as_ref(), fmt, symbolic.is_some())?
                }
                TableKind::Moments => {
                    let l = lambda.as_deref().ok_or_else(|| usage("table moments needs --lambda"))?;
                    let l = parse_partition("lambda", l)?;
                    let fmt = format_or(cli.format, Format::Text);
                    moments_table(nabla.alpha(), &alpha, &l, order.unwrap_or(4), fmt)
                }
            };
            (text, 0)
        }
        Command::Verify {
            suite,
            degree,
            range,
            n,
            max_size,
            max_l,
        } => {
            let mut params = VerifyParams::for_degree(*degree);
            if let Some(r) = range {
                params.range = *r;
            }
            if let Some(n) = n {
                params.n = *n;
            }
            if let Some(s) = max_size {
                params.max_size = *s;
            }
            if let Some(l) = max_l {
                params.max_l = *l;
            }
            verify(cli, nabla, symbolic, suite, &params, &alpha)?
        }
        Command::Scan { kind, n } => {
            let kind: ScanKind = kind.parse().map_err(usage)?;
            let Some(sym) = symbolic else {
                return Err(usage("scan needs symbolic α: positivity is a statement about polynomials in α"));
            };
            if *n == 0 {
                return Err(usage("scan needs --n ≥ 1"));
            }
            check_size(*n)?;
            let report = positivity_scan(sym, kind, *n).map_err(singular)?;
            let code = if report.passed { 0 } else { EXIT_VIOLATION };
            (scan_output(&report, format_or(cli.format, Format::Json)), code)
        }
    };
    output::emit(&text, cli.out.as_deref())?;
    Ok(code)
}

fn jack_table<F: Value>(nabla: &Nabla<F>, alpha: &str, keys: &[Partition], fmt: Format) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for l in keys {
        let j = nabla.jacks().jack_poly(l).map_err(singular)?;
        let norm = nabla.jacks().jack_norm(l).map_err(singular)?;
        rows.push(output::JackRow {
            lambda: l.to_vec(),
            jack: j.render(),
            norm: norm.to_string(),
        });
    }
    Ok(match fmt {
        Format::Text => rows
            .iter()
            .map(|r| format!("J{} = {}\n", partition_label(&r.lambda), r.jack))
            .collect(),
        Format::Json => output::json(&output::JackTable {
            table: "jack",
            alpha: alpha.to_string(),
            n: keys.first().map_or(0, |l| l.size()),
            entries: rows,
        }),
        Format::Csv => output::csv(
            &["lambda", "jack", "norm"],
            rows.into_iter().map(|r| vec![partition_label(&r.lambda), r.jack, r.norm]),
        ),
    })
}

fn operator_table<F: Value>(nabla: &Nabla<F>, alpha: &str, name: &str, degree: usize, fmt: Format) -> Result<String, CliError> {
    let spec: OpSpec<F> = OpSpec::parse(name).map_err(|e| usage(e.to_string()))?;
    let m = op_matrix(nabla.ops(), &spec, degree).map_err(|e| usage(e.to_string()))?;
    let columns: Vec<output::OperatorColumn> = m
        .columns()
        .iter()
        .map(|(mu, col)| output::OperatorColumn {
            mu: mu.to_vec(),
            image: col.render(),
        })
        .collect();
    Ok(match fmt {
        Format::Text => m.render(&spec.to_string()),
        Format::Json => output::json(&output::OperatorTable {
            table: "operator",
            name: spec.to_string(),
            alpha: alpha.to_string(),
            degree,
            columns,
        }),
        Format::Csv => output::csv(
            &["mu", "image"],
            columns.into_iter().map(|c| vec![partition_label(&c.mu), c.image]),
        ),
    })
}

fn coeff_table<F: Value>(
    nabla: &Nabla<F>,
    alpha: &str,
    kind: CoeffKind,
    n: usize,
    pi: Option<&Partition>,
    fmt: Format,
    symbolic: bool,
) -> Result<String, CliError> {
    let entries = match pi {
        Some(p) => nabla.coeff_entries(kind, p).map_err(singular)?,
        None => nabla.coeff_table(kind, n).map_err(singular)?.entries,
    };
    let rows: Vec<output::CoeffRow> = entries
        .iter()
        .map(|e| output::CoeffRow {
            pi: e.pi.to_vec(),
            mu: e.mu.to_vec(),
            nu: e.nu.to_vec(),
            value: e.value.to_string(),
            b: e.value.b_form(),
        })
        .collect();
    Ok(match fmt {
        Format::Json => output::json(&output::CoeffTableOut {
            kind: kind.name().to_string(),
            n,
            alpha: (!symbolic).then(|| alpha.to_string()),
            entries: rows,
        }),
        Format::Csv => {
            let header: &[&str] = if symbolic { &["pi", "mu", "nu", "alpha", "b"] } else { &["pi", "mu", "nu", "value"] };
            output::csv(
                header,
                rows.into_iter().map(|r| {
                    let mut v = vec![partition_label(&r.pi), partition_label(&r.mu), partition_label(&r.nu), r.value];
                    v.extend(r.b);
                    v
                }),
            )
        }
        Format::Text => rows
            .iter()
            .map(|r| {
                let head = format!(
                    "{}^{}_{},{} = {}",
                    kind.name(),
                    partition_label(&r.pi),
                    partition_label(&r.mu),
                    partition_label(&r.nu),
                    r.value
                );
                match &r.b {
                    Some(b) => format!("{head}    [b: {b}]\n"),
                    None => format!("{head}\n"),
                }
            })
            .collect(),
    })
}

fn moments_table<F: Value>(a: &F, alpha: &str, lambda: &Partition, order: usize, fmt: Format) -> String {
    let rows: Vec<output::MomentRow> = (0..=order)
        .map(|k| output::MomentRow {
            order: k,
            value: moment_h(k, lambda, a).to_string(),
        })
        .collect();
    match fmt {
        Format::Text => rows
            .iter()
            .map(|r| format!("h_{}[D_{}] = {}\n", r.order, lambda, r.value))
            .collect(),
        Format::Json => output::json(&output::MomentsTable {
            table: "moments",
            lambda: lambda.to_vec(),
            alpha: alpha.to_string(),
            entries: rows,
        }),
        Format::Csv => output::csv(
            &["order", "value"],
            rows.into_iter().map(|r| vec![r.order.to_string(), r.value]),
        ),
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    alpha: &'a str,
    params: &'a VerifyParams,
    passed: bool,
    suites: Vec<SuiteReport>,
}

fn verify<F: Value>(
    cli: &Cli,
    nabla: &Nabla<F>,
    symbolic: Option<&Nabla<QAlpha>>,
    suite: &str,
    params: &VerifyParams,
    alpha: &str,
) -> Result<(String, u8), CliError> {
    let rational = match &cli.alpha {
        AlphaMode::Rational(r) => Some(r.clone()),
        AlphaMode::Symbolic => None,
    };
    let (suites, agreement) = match suite {
        "all" => (Suite::ALL.to_vec(), rational.is_some()),
        "agreement" if rational.is_none() => {
            return Err(usage("the agreement suite compares a rational α with symbolic α; pass --alpha p/q"));
        }
        "agreement" => (Vec::new(), true),
        s => (vec![s.parse::<Suite>().map_err(usage)?], false),
    };
    let mut reports = Vec::new();
    for s in suites {
        reports.push(run_suite(nabla, s, params).map_err(singular)?);
    }
    if agreement {
        let r = rational.expect("rational α");
        let fast = Nabla::new(r).map_err(singular)?;
        let sym = match symbolic {
            Some(s) => rational_agreement(s, &fast, params),
            None => rational_agreement(&Nabla::new(QAlpha::alpha()).map_err(singular)?, &fast, params),
        };
        reports.push(sym.map_err(singular)?);
    }
    let passed = reports.iter().all(|r| r.passed);
    let fmt = format_or(cli.format, Format::Json);
    let text = match fmt {
        Format::Json => output::json(&VerifyOutput {
            alpha,
            params,
            passed,
            suites: reports,
        }),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                s.push_str(&format!("{verdict} {} ({} checks, α = {})\n", r.suite, r.checks.len(), r.alpha));
                for c in r.failures() {
                    s.push_str(&format!("  {} [{}]: {}\n", c.name, c.params, c.detail.as_deref().unwrap_or("")));
                }
            }
            s
        }
        Format::Csv => output::csv(
            &["suite", "alpha", "check", "params", "passed"],
            reports.iter().flat_map(|r| {
                r.checks.iter().map(|c| {
                    vec![r.suite.clone(), r.alpha.clone(), c.name.clone(), c.params.clone(), c.passed.to_string()]
                })
            }),
        ),
    };
    Ok((text, if passed { 0 } else { EXIT_VIOLATION }))
}

fn scan_output(report: &ScanReport, fmt: Format) -> String {
    match fmt {
        Format::Json => output::json(report),
        Format::Text => {
            let verdict = if report.passed { "PASS" } else { "FAIL" };
            let mut s = format!(
                "{verdict} {} n={}: {} triples, {} nonzero, {} violations\n",
                report.kind.name(),
                report.n,
                report.checked,
                report.nonzero,
                report.violations.len()
            );
            for (label, list) in [("violation", &report.violations), ("witness", &report.witnesses)] {
                for e in list {
                    s.push_str(&format!(
                        "  {label} π={} μ={} ν={}: {}\n",
                        partition_label(&e.pi),
                        partition_label(&e.mu),
                        partition_label(&e.nu),
                        e.polynomial
                    ));
                }
            }
            s
        }
        Format::Csv => output::csv(
            &["status", "pi", "mu", "nu", "polynomial"],
            report
                .violations
                .iter()
                .map(|e| ("violation", e))
                .chain(report.witnesses.iter().map(|e| ("witness", e)))
                .map(|(st, e)| {
                    vec![
                        st.to_string(),
                        partition_label(&e.pi),
                        partition_label(&e.mu),
                        partition_label(&e.nu),
                        e.polynomial.clone(),
                    ]
                }),
        ),
    }
}
