//! Argument parsing and subcommand dispatch.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_trace_core::bounds::Inequality;
use hecke_trace_core::exactmath::BigInt;
use hecke_trace_core::hurwitz::{hurwitz_table, HurwitzValue};
use hecke_trace_core::padic::{omega_const, DEFAULT_PRECISION};
use hecke_trace_core::search::{FingerprintBasis, DEFAULT_PRIMES};
use hecke_trace_core::trace::{trace_es, trace_rec_iter, ASequence};
use serde_json::json;

use crate::config::{ConfigFile, Format};
use crate::pipeline::{self, SearchSequence};
use crate::report::Output;
use crate::SuiteError;

#[derive(Debug, Parser)]
#[command(
    name = "hecke-trace",
    version,
    about = "Verify that Tr T2 on level-one cusp forms never repeats"
)]
pub struct Cli {
    /// Output format [default: text, or the config file's choice].
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tr T_n on S_W(SL2(Z)) by the Eichler–Selberg formula.
    Trace {
        #[arg(long)]
        weight: u64,
        #[arg(long, default_value_t = 2)]
        n: u64,
    },
    /// Tr T2 on S_2k for 2 ≤ k ≤ kmax.
    TraceTable {
        #[arg(long)]
        kmax: u64,
    },
    /// H(n) with the reduced forms it counts.
    Hurwitz {
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// H(0), …, H(max).
    HurwitzTable {
        #[arg(long)]
        max: u64,
    },
    /// a_n, a_n + 2^n or a_n − 2^n for 0 ≤ n ≤ max.
    Sequence {
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Shift::None)]
        shift: Shift,
    },
    /// Ω_t as 2-adic digits and residues.
    Omega {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        t: i64,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Named analytic constants with tolerances.
    Constants,
    /// Certify where the linear-forms inequalities fail.
    Thresholds {
        #[arg(long, value_enum)]
        case: Option<Case>,
        /// Bound to certify instead of the published one.
        #[arg(long)]
        claimed: Option<u64>,
    },
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    Search {
        #[command(subcommand)]
        what: Search,
    },
    /// Every stage in order.
    Pipeline(PipelineArgs),
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// Three trace formulas agree.
    Recurrence {
        #[arg(long, default_value_t = 2000)]
        kmax: u64,
    },
    /// 2-adic valuation law, LTE and the congruence table.
    Valuation {
        #[arg(long, default_value_t = 1000)]
        kmax: u64,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: u32,
    },
    /// Binomial identities and the generating function.
    Identities {
        #[arg(long, default_value_t = 5000)]
        nmax: u64,
        #[arg(long, default_value_t = 2000)]
        degree: u64,
    },
    /// No repeated trace for 6 ≤ k ≤ kmax.
    Theorem {
        #[arg(long, default_value_t = 20_000)]
        kmax: u64,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Search {
    /// Repeated values of one sequence, confirmed exactly.
    Repeats {
        #[arg(long, value_enum)]
        sequence: SearchSequence,
        #[arg(long)]
        max: u64,
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// TOML file; flags given here win over its keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,
    #[arg(long)]
    pub a_max: Option<u64>,
    #[arg(long)]
    pub eps_max: Option<u64>,
    #[arg(long)]
    pub theorem_kmax: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shift {
    None,
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Case {
    A,
    Eps,
}

fn basis(primes: Option<Vec<u64>>) -> Result<FingerprintBasis, SuiteError> {
    FingerprintBasis::new(primes.unwrap_or_else(|| DEFAULT_PRIMES.to_vec()))
        .map_err(|e| SuiteError::Config(e.to_string()))
}

fn check_precision(precision: u32) -> Result<(), SuiteError> {
    if precision < 32 {
        return Err(SuiteError::Usage(format!(
            "precision must be at least 32, got {precision}"
        )));
    }
    Ok(())
}

/// Runs a parsed command line. `Ok(false)` means a claim failed.
pub fn run(cli: Cli) -> Result<bool, SuiteError> {
    let mut format = cli.format;
    let mut out = cli.out;
    let output = match cli.command {
        Command::Trace { weight, n } => {
            let t = trace_es(weight, n)?.to_string();
            Output {
                json: json!({ "weight": weight.to_string(), "n": n.to_string(), "trace": t }),
                headers: vec!["weight".into(), "n".into(), "trace".into()],
                rows: vec![vec![weight.to_string(), n.to_string(), t.clone()]],
                text: format!("{t}\n"),
                success: true,
            }
        }
        Command::TraceTable { kmax } => {
            let rows = trace_rec_iter()
                .take_while(|&(k, _)| k <= kmax)
                .map(|(k, t)| vec![k.to_string(), (2 * k).to_string(), t.to_string()])
                .collect();
            Output::table(&["k", "weight", "trace"], rows)
        }
        Command::Hurwitz { n } => hurwitz_output(n),
        Command::HurwitzTable { max } => {
            let rows = hurwitz_table(max)
                .map(|h| {
                    let twelfths = &h.value * BigInt::from(12);
                    vec![h.n.to_string(), h.value.to_string(), twelfths.to_string()]
                })
                .collect();
            Output::table(&["n", "h", "twelve_h"], rows)
        }
        Command::Sequence { max, shift } => {
            let rows = ASequence::new()
                .take(max as usize + 1)
                .enumerate()
                .map(|(n, a)| {
                    let p = BigInt::from(1) << n;
                    let v = match shift {
                        Shift::None => a,
                        Shift::Plus => a + p,
                        Shift::Minus => a - p,
                    };
                    vec![n.to_string(), v.to_string()]
                })
                .collect();
            Output::table(&["n", "value"], rows)
        }
        Command::Omega { t, precision } => {
            check_precision(precision)?;
            omega_output(t, precision)?
        }
        Command::Constants => Output::from_reports(&[pipeline::constants()]),
        Command::Thresholds { case, claimed } => {
            let cases = match case {
                Some(Case::A) => vec![Inequality::PlainSequence],
                Some(Case::Eps) => vec![Inequality::ShiftedSequence],
                None => vec![Inequality::PlainSequence, Inequality::ShiftedSequence],
            };
            let reports: Vec<_> = cases
                .into_iter()
                .map(|c| pipeline::threshold(c, claimed.unwrap_or(c.claimed_bound())))
                .collect();
            Output::from_reports(&reports)
        }
        Command::Verify { what } => {
            let reports = match what {
                Verify::Recurrence { kmax } => vec![pipeline::oracle_equivalence(kmax)],
                Verify::Valuation { kmax, precision } => {
                    check_precision(precision)?;
                    vec![
                        pipeline::valuation(kmax, precision),
                        pipeline::congruence_table(kmax, precision),
                    ]
                }
                Verify::Identities { nmax, degree } => vec![pipeline::identities(nmax, degree)],
                Verify::Theorem { kmax, primes } => {
                    vec![pipeline::search(
                        SearchSequence::Trace,
                        kmax,
                        &basis(primes)?,
                    )]
                }
            };
            Output::from_reports(&reports)
        }
        Command::Search {
            what:
                Search::Repeats {
                    sequence,
                    max,
                    primes,
                },
        } => Output::from_reports(&[pipeline::search(sequence, max, &basis(primes)?)]),
        Command::Pipeline(args) => {
            let file = match &args.config {
                Some(path) => ConfigFile::load(path)?,
                None => ConfigFile::default(),
            };
            let flags = ConfigFile {
                precision_bits: args.precision,
                primes: args.primes,
                a_max: args.a_max,
                eps_max: args.eps_max,
                theorem_kmax: args.theorem_kmax,
                format,
                out: out.clone(),
                ..Default::default()
            };
            let config = file.merge(flags).resolve()?;
            format = Some(config.format);
            out = config.out.clone();
            Output::from_reports(&pipeline::run_pipeline(&config))
        }
    };
    let rendered = output.render(format.unwrap_or_default())?;
    match out {
        Some(path) => std::fs::write(path, rendered)?,
        None => std::io::stdout().lock().write_all(rendered.as_bytes())?,
    }
    Ok(output.success)
}

fn hurwitz_output(n: i64) -> Output {
    let value = hecke_trace_core::hurwitz::hurwitz(n);
    let forms: Vec<_> = if n > 0 {
        HurwitzValue::compute(n as u64).forms
    } else {
        Vec::new()
    };
    let form_json: Vec<_> = forms
        .iter()
        .map(|(f, w)| {
            json!({
                "a": f.a.to_string(),
                "b": f.b.to_string(),
                "c": f.c.to_string(),
                "weight": w.as_rational().to_string(),
            })
        })
        .collect();
    let rows = forms
        .iter()
        .map(|(f, w)| {
            vec![
                n.to_string(),
                f.a.to_string(),
                f.b.to_string(),
                f.c.to_string(),
                w.as_rational().to_string(),
            ]
        })
        .collect();
    Output {
        json: json!({ "n": n.to_string(), "h": value.to_string(), "forms": form_json }),
        headers: ["n", "a", "b", "c", "weight"].map(String::from).to_vec(),
        rows,
        text: format!("{value}\n"),
        success: true,
    }
}

fn omega_output(t: i64, precision: u32) -> Result<Output, SuiteError> {
    let omega = omega_const(t, precision)?;
    let known = omega.abs_precision().unwrap_or(precision as i64).max(0) as u32;
    let digits = omega.binary_digits(known);
    let mut residues = Vec::new();
    let mut j = 1u32;
    while j <= known.min(64) {
        if let Some(r) = omega.residue(j) {
            residues.push((j, r.to_string()));
        }
        j *= 2;
    }
    let mut text = format!(
        "Ω_{t} = ...{} (2-adic, {known} known bits)\n",
        digits.chars().rev().collect::<String>()
    );
    for (j, r) in &residues {
        text.push_str(&format!("Ω_{t} mod 2^{j} = {r}\n"));
    }
    Ok(Output {
        json: json!({
            "t": t.to_string(),
            "precision_bits": precision.to_string(),
            "known_bits": known.to_string(),
            "digits_lsb_first": digits,
            "residues": residues
                .iter()
                .map(|(j, r)| json!({ "modulus_bits": j.to_string(), "residue": r }))
                .collect::<Vec<_>>(),
        }),
        headers: vec!["modulus_bits".into(), "residue".into()],
        rows: residues
            .iter()
            .map(|(j, r)| vec![j.to_string(), r.clone()])
            .collect(),
        text,
        success: true,
    })
}
