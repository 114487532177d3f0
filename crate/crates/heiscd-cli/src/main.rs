//! Command-line frontend: measures, verification suites, element facts,
//! lattice listings and witness pairs over a chosen modular Heisenberg
//! group.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! or computation errors (bad parameters, caps exceeded, invalid input).

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Writes one line to stdout, exiting quietly when the consumer has closed
/// the pipe (e.g. `heiscd measure ... | head`).
macro_rules! say {
    ($($arg:tt)*) => { crate::print_line(format_args!($($arg)*), true) };
}

/// Like [`say!`] without the trailing newline.
macro_rules! say_raw {
    ($($arg:tt)*) => { crate::print_line(format_args!($($arg)*), false) };
}

fn print_line(args: std::fmt::Arguments<'_>, newline: bool) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let res = if newline {
        writeln!(out, "{args}")
    } else {
        write!(out, "{args}")
    };
    if res.is_err() {
        std::process::exit(0);
    }
}
use serde_json::json;

use heiscd::dot::render_dot;
use heiscd::lattice::{all_subgroups, EnumerationCaps};
use heiscd::measure::build_report;
use heiscd::structure::{mu, nu_profile, witness_pair, WitnessCase};
use heiscd::verify::{run_suite, Suite, VerifyOptions};
use heiscd::{Element, ExactSequence, GroupParams};

#[derive(Parser)]
#[command(
    name = "heiscd",
    version,
    about = "Centralizer and pseudocentralizer measures for Heisenberg groups over Z/p^n"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Measure every subgroup and report both maxima.
    Measure {
        #[arg(short, long)]
        p: u32,
        #[arg(short, long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run an invariant suite and report each check.
    Verify {
        #[arg(short, long)]
        p: u32,
        #[arg(short, long)]
        n: u32,
        /// core, pseudo, structure, lattice, oracle or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        sample_budget: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Facts about one element: inverse, order, valuation profile.
    Element {
        #[arg(short, long)]
        p: u32,
        #[arg(short, long)]
        n: u32,
        /// The element, written "c1,c2,c3".
        element: String,
        /// Optional second element for products, commutator and mu.
        #[arg(long)]
        against: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Enumerate the subgroup lattice.
    Subgroups {
        #[arg(short, long)]
        p: u32,
        #[arg(short, long)]
        n: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Construct the witness pair for a qualifying ordered pair.
    Witness {
        #[arg(short, long)]
        p: u32,
        #[arg(short, long)]
        n: u32,
        /// First element of the pair, written "c1,c2,c3".
        h1: String,
        /// Second element of the pair.
        h2: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn caps_from_env() -> Result<EnumerationCaps, String> {
    match std::env::var("HEISCD_MAX_SUBGROUPS") {
        Ok(raw) => {
            let limit: u64 = raw
                .parse()
                .map_err(|_| format!("HEISCD_MAX_SUBGROUPS must be an integer, got {raw:?}"))?;
            Ok(EnumerationCaps::with_max_candidates(limit))
        }
        Err(_) => Ok(EnumerationCaps::default()),
    }
}

fn parse_element(g: &GroupParams, raw: &str) -> Result<Element, String> {
    let e: Element = raw.parse()?;
    g.check_element(e).map_err(|e| e.to_string())?;
    Ok(e)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Measure { p, n, format } => measure(p, n, format),
        Cmd::Verify {
            p,
            n,
            suite,
            seed,
            sample_budget,
            format,
        } => verify(p, n, &suite, seed, sample_budget, format),
        Cmd::Element {
            p,
            n,
            element,
            against,
            format,
        } => element_facts(p, n, &element, against.as_deref(), format),
        Cmd::Subgroups { p, n, format } => subgroups(p, n, format),
        Cmd::Witness {
            p,
            n,
            h1,
            h2,
            format,
        } => witness(p, n, &h1, &h2, format),
    }
}

fn reject_dot(format: Format, what: &str) -> Result<(), String> {
    if format == Format::Dot {
        return Err(format!("dot output only applies to subgroups, not {what}"));
    }
    Ok(())
}

fn measure(p: u32, n: u32, format: Format) -> Result<ExitCode, String> {
    reject_dot(format, "measure")?;
    let seq = ExactSequence::new(p, n).map_err(|e| e.to_string())?;
    let caps = caps_from_env()?;
    let report = build_report(&seq, &caps).map_err(|e| e.to_string())?;
    match format {
        Format::Json => {
            say!(
                "{}",
                serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?
            )
        }
        _ => {
            say!(
                "group p={} n={} order={}  m*={} ({} attaining)  ms*={} ({} attaining)",
                report.p,
                report.n,
                report.order,
                report.m_star,
                report.cd.len(),
                report.ms_star,
                report.pcd.len()
            );
            say!(
                "{:>4} {:>8} {:>8} {:>8} {:>12} {:>12}  generators",
                "#",
                "|H|",
                "|C|",
                "|P|",
                "m",
                "ms"
            );
            for row in &report.table {
                let mark = |hit: bool| if hit { "*" } else { " " };
                say!(
                    "{:>4} {:>8} {:>8} {:>8} {:>11}{} {:>11}{}  <{}>",
                    row.index,
                    row.order,
                    row.centralizer_order,
                    row.pseudocentralizer_order,
                    row.cd_measure,
                    mark(report.cd.contains(&row.index)),
                    row.pcd_measure,
                    mark(report.pcd.contains(&row.index)),
                    row.generators.join(" ")
                );
            }
            say!(
                "(* marks rows attaining a maximum; elapsed {} ms)",
                report.elapsed_ms
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(
    p: u32,
    n: u32,
    suite: &str,
    seed: Option<u64>,
    sample_budget: Option<u32>,
    format: Format,
) -> Result<ExitCode, String> {
    reject_dot(format, "verify")?;
    let suite: Suite = suite.parse().map_err(|e: heiscd::Error| e.to_string())?;
    let seq = ExactSequence::new(p, n).map_err(|e| e.to_string())?;
    let mut opts = VerifyOptions {
        caps: caps_from_env()?,
        ..VerifyOptions::default()
    };
    if let Some(s) = seed {
        opts.seed = s;
    }
    if let Some(b) = sample_budget {
        opts.sample_budget = b;
    }
    let reports = run_suite(&seq, suite, &opts);
    let failed = reports.iter().filter(|r| !r.passed).count();
    match format {
        Format::Json => {
            say!(
                "{}",
                serde_json::to_string_pretty(&reports).map_err(|e| e.to_string())?
            )
        }
        _ => {
            for r in &reports {
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                say!(
                    "{verdict} {}/{} — {} ({} ms)",
                    r.suite,
                    r.name,
                    r.details,
                    r.elapsed_ms
                );
            }
            say!("{}/{} checks passed", reports.len() - failed, reports.len());
        }
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn element_facts(
    p: u32,
    n: u32,
    raw: &str,
    against: Option<&str>,
    format: Format,
) -> Result<ExitCode, String> {
    reject_dot(format, "element")?;
    let g = GroupParams::new(p, n).map_err(|e| e.to_string())?;
    let a = parse_element(&g, raw)?;
    let prof = nu_profile(a, &g);
    let mut doc = json!({
        "element": a.to_string(),
        "index": g.index_of(a),
        "inverse": g.inv(a).to_string(),
        "order": g.element_order(a),
        "central": g.is_central(a),
        "nu": prof.nu,
        "nu_form": prof.nu_form.to_string(),
        "k1": prof.comp1.k,
        "k3": prof.comp3.k,
    });
    if let Some(raw_b) = against {
        let b = parse_element(&g, raw_b)?;
        let mut extra = json!({
            "other": b.to_string(),
            "product": g.mul(a, b).to_string(),
            "product_reversed": g.mul(b, a).to_string(),
            "commutator": g.commutator(a, b).to_string(),
            "commute": g.commutator_slot2(a, b) == 0,
        });
        if !g.is_central(a) && !g.is_central(b) && a != b {
            let pair = mu(a, b, &g).map_err(|e| e.to_string())?;
            extra["mu"] = json!(pair.mu);
            extra["lambda"] = json!(pair.lambda);
        }
        doc["against"] = extra;
    }
    match format {
        Format::Json => say!(
            "{}",
            serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?
        ),
        _ => print_flat(&doc, ""),
    }
    Ok(ExitCode::SUCCESS)
}

/// Renders a JSON object as indented "key: value" lines.
fn print_flat(v: &serde_json::Value, indent: &str) {
    if let Some(map) = v.as_object() {
        for (k, val) in map {
            if val.is_object() {
                say!("{indent}{k}:");
                print_flat(val, &format!("{indent}  "));
            } else {
                say!("{indent}{k}: {val}");
            }
        }
    }
}

fn subgroups(p: u32, n: u32, format: Format) -> Result<ExitCode, String> {
    let g = GroupParams::new(p, n).map_err(|e| e.to_string())?;
    let caps = caps_from_env()?;
    let subs = all_subgroups(g, &caps).map_err(|e| e.to_string())?;
    match format {
        Format::Dot => say_raw!("{}", render_dot(&subs, &format!("lattice_{p}_{n}"))),
        Format::Json => {
            let rows: Vec<_> = subs
                .iter()
                .enumerate()
                .map(|(i, h)| {
                    json!({
                        "index": i,
                        "order": h.order(),
                        "generators": h.generators().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            say!(
                "{}",
                serde_json::to_string_pretty(&rows).map_err(|e| e.to_string())?
            );
        }
        Format::Text => {
            for (i, h) in subs.iter().enumerate() {
                let gens: Vec<String> = h.generators().iter().map(|e| format!("({e})")).collect();
                say!("#{i:<3} order {:<6} <{}>", h.order(), gens.join(" "));
            }
            say!("{} subgroups of the order-{} group", subs.len(), g.order());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn witness(p: u32, n: u32, raw1: &str, raw2: &str, format: Format) -> Result<ExitCode, String> {
    reject_dot(format, "witness")?;
    let seq = ExactSequence::new(p, n).map_err(|e| e.to_string())?;
    let g = seq.big();
    let h1 = parse_element(&g, raw1)?;
    let h2 = parse_element(&g, raw2)?;
    let w = witness_pair(h1, h2, &seq).map_err(|e| e.to_string())?;
    let case = match w.case {
        WitnessCase::NonCommuting => "non-commuting",
        WitnessCase::ProperlyCommuting => "properly-commuting",
        WitnessCase::SearchFallback => "search-fallback",
    };
    match format {
        Format::Json => {
            let doc = json!({
                "h1": h1.to_string(),
                "h2": h2.to_string(),
                "z1": w.z1.to_string(),
                "z2": w.z2.to_string(),
                "w1": w.w1,
                "w2": w.w2,
                "case": case,
                "mirrored": w.mirrored,
            });
            say!(
                "{}",
                serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?
            );
        }
        _ => {
            say!("z1 = {}", w.z1);
            say!("z2 = {}", w.z2);
            if let (Some(w1), Some(w2)) = (w.w1, w.w2) {
                say!("exponents w1 = {w1}, w2 = {w2}");
            }
            say!("case = {case}");
            say!("mirrored = {}", w.mirrored);
        }
    }
    Ok(ExitCode::SUCCESS)
}
