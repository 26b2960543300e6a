//! `acfqe`: quantifier elimination and constructible images from the shell.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input,
//! 3 resource limit, 4 inconclusive verification.

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use acfqe::chevalley::{chevalley_image_with, Presentation};
use acfqe::coeff::{BaseDomain, Ring, VarTable};
use acfqe::formula::{parse, render, CanonicalDnf, Formula};
use acfqe::oracle::{equiv_check, OracleConfig, Report, Verdict};
use acfqe::qe::eliminate_all_dnf;
use acfqe::{Error, Limits};
use clap::{Args, Parser, Subcommand, ValueEnum};

const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Parser)]
#[command(
    name = "acfqe",
    version,
    about = "Quantifier elimination over algebraically closed fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eliminate the quantifiers of a formula.
    Qe {
        /// formula text (omit when using --file)
        formula: Option<String>,
        /// read the formula from a file, `-` for standard input
        #[arg(long, short = 'f', conflicts_with = "formula")]
        file: Option<String>,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        oracle: OracleFlags,
    },
    /// Constructible image of Spec S -> Spec R for a presentation file.
    Image {
        /// presentation file, `-` for standard input
        path: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        oracle: OracleFlags,
    },
    /// Compare two formulas pointwise over finite fields.
    Verify {
        lhs: String,
        rhs: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        oracle: OracleFlags,
    },
}

#[derive(Args)]
struct Common {
    /// coefficient ring: z, q or fp:<prime>
    #[arg(long, default_value = "z", value_parser = parse_base)]
    base: BaseDomain,
    /// comma-separated parameter names
    #[arg(long, value_delimiter = ',')]
    params: Vec<String>,
    #[arg(long, default_value_t = Limits::default().max_pieces)]
    max_pieces: usize,
    #[arg(long, default_value_t = Limits::default().max_degree)]
    max_degree: u32,
}

#[derive(Args)]
struct Output {
    /// check the result with the finite-field oracle
    #[arg(long)]
    verify: bool,
    #[arg(long, value_enum, default_value_t = Mode::Pieces)]
    output: Mode,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// one `piece:` line per piece
    Pieces,
    /// the canonical form as a single formula
    Canonical,
}

#[derive(Args)]
struct OracleFlags {
    #[arg(long, value_delimiter = ',', default_values_t = OracleConfig::default().primes)]
    primes: Vec<u64>,
    /// point fields F_{p^m} for m up to this
    #[arg(long, default_value_t = OracleConfig::default().base_ext)]
    ext: u32,
    #[arg(long, default_value_t = OracleConfig::default().witness_cap)]
    witness_cap: u32,
    #[arg(long, default_value_t = OracleConfig::default().sample_cap)]
    sample_cap: u64,
    #[arg(long, default_value_t = OracleConfig::default().seed)]
    seed: u64,
}

impl OracleFlags {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            primes: self.primes.clone(),
            base_ext: self.ext,
            witness_cap: self.witness_cap,
            sample_cap: self.sample_cap,
            seed: self.seed,
        }
    }
}

impl Common {
    fn limits(&self) -> Limits {
        Limits {
            max_pieces: self.max_pieces,
            max_degree: self.max_degree,
        }
    }

    fn ring(&self) -> Result<Ring, Fail> {
        let vars = VarTable::params(self.params.iter().cloned())?;
        Ok(Ring::new(self.base.clone(), vars))
    }
}

fn parse_base(s: &str) -> Result<BaseDomain, String> {
    match s {
        "z" => Ok(BaseDomain::Integers),
        "q" => Ok(BaseDomain::Rationals),
        _ => {
            let p = s
                .strip_prefix("fp:")
                .ok_or_else(|| format!("expected `z`, `q` or `fp:<prime>`, found `{s}`"))?;
            let p: u64 = p.parse().map_err(|_| format!("`{p}` is not a prime"))?;
            BaseDomain::prime_field(p).map_err(|e| e.to_string())
        }
    }
}

enum Fail {
    Engine(Error),
    Io(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Engine(e)
    }
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Engine(Error::Resource { .. }) => 3,
            _ => 2,
        }
    }
}

fn read_input(path: &str) -> Result<String, Fail> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Fail::Io(format!("standard input: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Fail::Io(format!("{path}: {e}")))
    }
}

fn print_dnf(dnf: &CanonicalDnf, mode: Mode) {
    match mode {
        Mode::Pieces => {
            for line in dnf.piece_lines() {
                println!("{line}");
            }
        }
        Mode::Canonical => println!("{}", render(&dnf.to_formula(), dnf.ring())),
    }
}

/// Oracle check after a computation; only a counterexample fails it.
fn check(
    lhs: &Formula,
    lr: &Ring,
    rhs: &Formula,
    rr: &Ring,
    flags: &OracleFlags,
) -> Result<u8, Fail> {
    let report = equiv_check(lhs, lr, rhs, rr, &flags.config())?;
    eprint!("{}", report.summary(MAX_COUNTEREXAMPLES));
    Ok(if report.verdict == Verdict::Fail {
        1
    } else {
        0
    })
}

fn qe(
    formula: Option<String>,
    file: Option<String>,
    common: &Common,
    out: &Output,
    oracle: &OracleFlags,
) -> Result<u8, Fail> {
    let text = match (formula, file) {
        (Some(t), _) => t,
        (None, Some(path)) => read_input(&path)?,
        (None, None) => return Err(Fail::Io("no formula given".into())),
    };
    let (ring, phi) = parse(&text, &common.ring()?)?;
    let dnf = eliminate_all_dnf(&phi, &ring, &common.limits())?;
    print_dnf(&dnf, out.output);
    if out.verify {
        return check(&phi, &ring, &dnf.to_formula(), dnf.ring(), oracle);
    }
    Ok(0)
}

fn image(path: &str, common: &Common, out: &Output, oracle: &OracleFlags) -> Result<u8, Fail> {
    let pres = Presentation::parse(&read_input(path)?, &common.base)?;
    let set = chevalley_image_with(&pres, &common.limits())?;
    print_dnf(set.dnf(), out.output);
    if out.verify {
        return check(
            &pres.image_formula(),
            pres.ring(),
            &set.to_formula(),
            set.ring(),
            oracle,
        );
    }
    Ok(0)
}

fn verify(lhs: &str, rhs: &str, common: &Common, oracle: &OracleFlags) -> Result<u8, Fail> {
    let ring = common.ring()?;
    let (lr, l) = parse(lhs, &ring)?;
    let (rr, r) = parse(rhs, &ring)?;
    let report: Report = equiv_check(&l, &lr, &r, &rr, &oracle.config())?;
    print!("{}", report.summary(MAX_COUNTEREXAMPLES));
    Ok(match report.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
        Verdict::Inconclusive => 4,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Qe {
            formula,
            file,
            common,
            out,
            oracle,
        } => qe(formula, file, &common, &out, &oracle),
        Command::Image {
            path,
            common,
            out,
            oracle,
        } => image(&path, &common, &out, &oracle),
        Command::Verify {
            lhs,
            rhs,
            common,
            oracle,
        } => verify(&lhs, &rhs, &common, &oracle),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(fail) => {
            match &fail {
                Fail::Engine(e) => eprintln!("error: {e}"),
                Fail::Io(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(fail.code())
        }
    }
}
