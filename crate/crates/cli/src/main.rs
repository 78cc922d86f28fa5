use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monomial_betti::family::FamilySpec;
use monomial_betti::oracle::{Field, OracleConfig, OracleOutput, DEFAULT_BUDGET};
use monomial_betti::report::{format_rows, oracle_for, table_rows, Format};
use monomial_betti::verify::{self, VerifyGrid};
use monomial_betti::{BettiTable, Execution};

#[derive(Parser)]
#[command(name = "betti", version, about = "Generator counts and Betti numbers of Veronese-type monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal number of generators of I^k.
    Mu(SpecArgs),
    /// Betti numbers of S/I^k as `i,beta_i,shift` rows.
    Betti {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = Mode::Formula)]
        mode: Mode,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Minimal generators of I^k, one exponent vector per line.
    Gens(SpecArgs),
    /// Formula and oracle values for k = 1..kmax.
    Table {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 3)]
        kmax: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Check every closed form against its brute-force oracle over a grid.
    Verify {
        /// Largest number of variables.
        #[arg(long = "n", default_value_t = 4)]
        nmax: usize,
        /// Largest degree.
        #[arg(long = "d", default_value_t = 4)]
        dmax: u32,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        /// Also compare the sums exactly as printed (reports known mismatches).
        #[arg(long)]
        printed_forms: bool,
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// File holding a `key=value` spec; flags below are appended to it.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    /// Bound vector, comma separated.
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    c: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Explicit generators, `e,e,e;e,e,e`.
    #[arg(long)]
    gens: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    /// Largest generator count handed to the homology oracle.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Compute homology over Z/p instead of the rationals.
    #[arg(long)]
    prime: Option<u64>,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            budget: self.budget,
            field: self.prime.map_or(Field::Rational, Field::Prime),
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Tsv,
}

enum Failure {
    Invalid(String),
    Mismatch,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl SpecArgs {
    fn load(&self) -> Result<FamilySpec, Failure> {
        let mut text = match &self.spec {
            Some(path) => std::fs::read_to_string(path)
                .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?,
            None => String::new(),
        };
        let mut flags = Vec::new();
        let pairs: [(&str, Option<String>); 8] = [
            ("family", self.family.clone()),
            ("a", self.a.clone()),
            ("n", self.n.map(|v| v.to_string())),
            ("d", self.d.map(|v| v.to_string())),
            ("c", self.c.map(|v| v.to_string())),
            ("t", self.t.map(|v| v.to_string())),
            ("k", self.k.map(|v| v.to_string())),
            ("gens", self.gens.clone()),
        ];
        for (key, value) in pairs {
            if let Some(v) = value {
                flags.push(format!("{key}={v}"));
            }
        }
        if !flags.is_empty() {
            if !text.is_empty() && !text.ends_with('\n') {
                text.push('\n');
            }
            text.push_str(&flags.join(" "));
        }
        let spec = FamilySpec::parse(&text).map_err(|e| Failure::Invalid(format!("spec {e}")))?;
        if let Some(note) = spec.normalization_note() {
            eprintln!("{note}");
        }
        Ok(spec)
    }
}

fn formula_rows(t: &BettiTable) -> Vec<(usize, String, u64)> {
    t.rows().map(|(i, b, s)| (i, b.to_string(), s)).collect()
}

fn oracle_rows(out: &OracleOutput) -> Vec<(usize, String, u64)> {
    if out.is_linear() {
        formula_rows(&out.table)
    } else {
        out.graded.iter().map(|(&(i, deg), b)| (i, b.to_string(), deg)).collect()
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mut out = String::new();
    match cli.command {
        Command::Mu(args) => {
            let spec = args.load()?;
            writeln!(out, "{}", spec.mu()?).ok();
        }
        Command::Gens(args) => {
            let spec = args.load()?;
            for g in &spec.generators()? {
                writeln!(out, "{g}").ok();
            }
        }
        Command::Betti { spec, mode, oracle } => {
            let spec = spec.load()?;
            let cfg = oracle.config();
            match mode {
                Mode::Formula => {
                    out.push_str("i,beta_i,shift\n");
                    for (i, b, s) in formula_rows(&spec.betti_formula()?) {
                        writeln!(out, "{i},{b},{s}").ok();
                    }
                }
                Mode::Oracle => {
                    out.push_str("i,beta_i,shift\n");
                    for (i, b, s) in oracle_rows(&oracle_for(&spec, &cfg)?) {
                        writeln!(out, "{i},{b},{s}").ok();
                    }
                }
                Mode::Both => {
                    let formula = spec.betti_formula()?;
                    let oracle = oracle_for(&spec, &cfg)?;
                    let len = formula.len().max(oracle.table.len());
                    let (f, o) = (formula.resized(len), oracle.table.resized(len));
                    let mut ok = oracle.is_linear();
                    out.push_str("i,beta_i,shift,oracle_beta_i,agree\n");
                    for ((i, fb, s), (_, ob, _)) in f.rows().zip(o.rows()) {
                        let agree = fb == ob;
                        ok &= agree;
                        writeln!(out, "{i},{fb},{s},{ob},{agree}").ok();
                    }
                    if !ok {
                        print!("{out}");
                        eprintln!("formula and oracle disagree");
                        return Err(Failure::Mismatch);
                    }
                }
            }
        }
        Command::Table { spec, kmax, format, oracle } => {
            if kmax < 1 {
                return Err(Failure::Invalid("--kmax must be at least 1".into()));
            }
            let spec = spec.load()?;
            let format = match format {
                OutputFormat::Csv => Format::Csv,
                OutputFormat::Tsv => Format::Tsv,
            };
            out = format_rows(&table_rows(&spec, kmax, &oracle.config()), format);
        }
        Command::Verify { nmax, dmax, kmax, seed, budget, printed_forms, sequential } => {
            let grid = VerifyGrid { nmax, dmax, kmax, seed, budget, printed_forms };
            let exec = if sequential { Execution::Sequential } else { Execution::default() };
            let report = verify::run(&grid, exec);
            out = report.to_string();
            if !report.passed() {
                print!("{out}");
                return Err(Failure::Mismatch);
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
