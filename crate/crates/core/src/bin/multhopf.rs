//! `multhopf` command line: suite runner and the smash, pair and duality
//! front ends. Exit code 0 when nothing failed, 1 on a failing check, 2 on
//! an error before any check ran.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use multhopf::actions::json::resolve_action;
use multhopf::duality::{dual_action, duality_isomorphism};
use multhopf::instances::{resolve_hopf, GroupSpec};
use multhopf::pairing::{verify_pairing, DualPair};
use multhopf::report::{CheckResult, Report, Status};
use multhopf::smash::{smash_with, SmashOptions, VerifyLevel};
use multhopf::suite::{plan, run_items, Selection, Suite, SuiteConfig};
use multhopf::algebra::{AlgebraHandle, ScalarAlgebra};
use multhopf::{Error, Scalar};

#[derive(Parser)]
#[command(name = "multhopf", version, about = "Exact verification for multiplier Hopf algebras, smash products and duality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Window radius for countable instances.
    #[arg(long = "sample-range", default_value_t = 5)]
    sample_range: i64,
    /// Certificate level: full or sampled.
    #[arg(long, value_parser = parse_level)]
    verify: Option<VerifyLevel>,
    /// Emit JSON lines instead of text.
    #[arg(long)]
    json: bool,
    /// Seed for randomized sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Recompute cached construction certificates at the full level.
    #[arg(long = "recheck-certificates")]
    recheck: bool,
    /// Attach wall time to each entry.
    #[arg(long)]
    timing: bool,
}

impl Common {
    fn config(&self) -> SuiteConfig {
        SuiteConfig {
            radius: self.sample_range,
            verify: self.verify,
            seed: self.seed,
            recheck: self.recheck,
            timing: self.timing,
            ..SuiteConfig::default()
        }
    }

    fn smash_options(&self) -> SmashOptions {
        SmashOptions { verify: self.verify, seed: self.seed, radius: self.sample_range, ..SmashOptions::default() }
    }
}

fn parse_level(s: &str) -> Result<VerifyLevel, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite: axioms, integrals, actions, smash, pairing, duality or all.
    #[command(alias = "run_suite")]
    RunSuite {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Hopf instance id or instance JSON file (repeatable).
        #[arg(long)]
        instance: Vec<String>,
        /// Group id: Z, Zn or S3 (repeatable).
        #[arg(long)]
        group: Vec<String>,
        /// Action id or action JSON file.
        #[arg(long)]
        action: Option<String>,
        /// Action on R for the duality suite (`trivial` for ℂ).
        #[arg(long = "R")]
        r: Option<String>,
        /// Acting algebra for the duality suite.
        #[arg(long = "A")]
        a: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Build R#A and print its structure constants and certificates.
    Smash {
        #[arg(long)]
        action: String,
        #[command(flatten)]
        common: Common,
    },
    /// Build the canonical pair of a group; `--verify` runs the axiom suite.
    Pair {
        #[arg(long)]
        group: String,
        /// Run the pairing axiom checks.
        #[arg(long)]
        verify: bool,
        #[arg(long = "sample-range", default_value_t = 5)]
        sample_range: i64,
        #[arg(long)]
        json: bool,
    },
    /// Build (R#A)#Â and its identification with R⊗(A◊Â).
    Duality {
        /// Action id or action JSON file, or `trivial`.
        #[arg(long = "R")]
        r: String,
        #[arg(long = "A")]
        a: String,
        #[command(flatten)]
        common: Common,
    },
}

fn text_line(e: &CheckResult) -> String {
    let mut s = format!("{:<12} {} [{}]", e.status.to_string(), e.check, e.instances.join(", "));
    if let Some(ms) = e.elapsed_ms {
        s.push_str(&format!(" {}ms", ms));
    }
    if e.check.ends_with("-summary") {
        if let Some(d) = &e.detail {
            s.push_str(&format!("\n    {}", d));
        }
    }
    if e.status == Status::Fail {
        if let Some(w) = &e.witness {
            s.push_str(&format!("\n    witness: {}", w));
        }
    }
    s
}

struct Printer {
    json: bool,
    index: usize,
    failed: usize,
}

impl Printer {
    fn new(json: bool) -> Self {
        Printer { json, index: 0, failed: 0 }
    }

    fn emit(&mut self, e: &CheckResult) {
        let line = if self.json { e.json_line(self.index) } else { text_line(e) };
        self.index += 1;
        if e.status == Status::Fail {
            self.failed += 1;
        }
        let mut out = io::stdout().lock();
        let _ = writeln!(out, "{}", line);
        let _ = out.flush();
    }

    fn emit_all(&mut self, r: &Report) {
        for e in &r.entries {
            self.emit(e);
        }
    }

    fn finish(&self) -> ExitCode {
        if !self.json {
            eprintln!("{} checks, {} failed", self.index, self.failed);
        }
        if self.failed == 0 {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        }
    }
}

fn print_json(v: &Value) {
    let _ = writeln!(io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn entries(r: &Report) -> Value {
    Value::Array(r.entries.iter().map(|e| serde_json::to_value(e).expect("serializable")).collect())
}

fn exit_for(r: &Report) -> ExitCode {
    if r.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> multhopf::Result<ExitCode> {
    match cli.command {
        Command::RunSuite { suite, instance, group, action, r, a, common } => {
            let sel = Selection { instances: instance, groups: group, action: action.or(r), algebra: a };
            let items = plan(suite, &sel)?;
            let mut printer = Printer::new(common.json);
            run_items(&items, &common.config(), |e| printer.emit(e));
            Ok(printer.finish())
        }
        Command::Smash { action, common } => {
            let action = resolve_action(&action)?;
            let mut s = smash_with(&action, common.smash_options())?;
            if common.recheck {
                s.recheck(Some(VerifyLevel::Full));
            }
            let table = if s.is_finite() { s.structure_constants()? } else { Value::Null };
            print_json(&json!({"structure_constants": table, "certificates": entries(&s.certificates)}));
            Ok(exit_for(&s.certificates))
        }
        Command::Pair { group, verify, sample_range, json } => {
            let g = GroupSpec::parse(&group).ok_or_else(|| Error::UnknownInstance(group.clone()))?;
            let p = DualPair::canonical_pair(g);
            if verify {
                let mut printer = Printer::new(json);
                printer.emit_all(&verify_pairing(&p, sample_range));
                return Ok(printer.finish());
            }
            let sample_a = p.sample_a(sample_range);
            let sample_b = p.sample_b(sample_range);
            let table: Vec<Value> = sample_a
                .iter()
                .flat_map(|x| sample_b.iter().map(move |y| (x, y)))
                .filter_map(|(x, y)| {
                    let c = p.pair_basis(x, y);
                    (c != Scalar::from_int(0)).then(|| json!([x.to_string(), y.to_string(), c.to_string()]))
                })
                .collect();
            print_json(&json!({
                "pair": p.name,
                "a": p.a.id(),
                "b": p.b.id(),
                "finite": p.is_finite(),
                "nonzero_pairings": table,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Duality { r, a, common } => {
            let h = resolve_hopf(&a)?;
            let action = if r == "trivial" {
                let c: AlgebraHandle = std::sync::Arc::new(ScalarAlgebra::new());
                multhopf::actions::trivial(&h, &c)
            } else {
                resolve_action(&r)?
            };
            if action.a().id() != h.id() {
                return Err(Error::AlgebraMismatch(format!("action of {} but --A {}", action.a().id(), h.id())));
            }
            let p = DualPair::from_finite(&h)?;
            let s = smash_with(&action, common.smash_options())?;
            let d = dual_action(&p, &s)?;
            let iso = duality_isomorphism(&d)?;
            let n = h.dim().unwrap_or(0);
            let mut report = d.certificates.clone();
            report.extend(iso.report.clone());
            print_json(&json!({
                "dimensions": {
                    "bismash": iso.bismash.dim(),
                    "r": s.r().finite_basis().map(|b| b.len()),
                    "n": n,
                },
                "isomorphism": {
                    "source": iso.theta.src.id(),
                    "target": iso.theta.dst.id(),
                    "certified": iso.theta.is_certified(),
                },
                "matrix_identification": iso.matrix.as_ref().map(|m| json!({
                    "algebra": format!("M_{}({})", n, s.r().id()),
                    "certified": m.is_certified(),
                })),
                "certificates": entries(&report),
            }));
            Ok(exit_for(&report))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {}", e.kind(), e);
            ExitCode::from(2)
        }
    }
}
