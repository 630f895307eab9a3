mod render;
mod spec;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use irrcount::counting::{CountKind, Counter};
use irrcount::group::{decompose, GroupStructure, Kind};
use irrcount::oracle::{self, DEFAULT_BUDGET};
use irrcount::Error;

use render::{Format, Row};
use spec::{parse_range, ClassSpec, InstanceSpec};

#[derive(Parser)]
#[command(name = "irrcount", version, about = "Count irreducible polynomials over F_q with prescribed coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TypeArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Quantity {
    #[value(name = "N")]
    N,
    #[value(name = "I")]
    I,
}

#[derive(Args, Clone, Debug)]
struct InstanceArgs {
    /// Field order (a prime power)
    #[arg(long)]
    q: Option<u64>,
    /// Characteristic, as an alternative to --q
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree over F_p
    #[arg(long)]
    r: Option<u32>,
    /// Monic irreducible modulus over F_p, constant first (e.g. 1,1,1)
    #[arg(long)]
    modulus: Option<String>,
    #[arg(long = "type", value_enum)]
    kind: TypeArg,
    /// Number of prescribed leading coefficients
    #[arg(long)]
    ell: usize,
    /// Number of prescribed ending coefficients (type I)
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value_t = 1 << 20)]
    max_group_order: u64,
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
}

impl InstanceArgs {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec {
            q: self.q,
            p: self.p,
            r: self.r,
            modulus: self.modulus.clone(),
            kind: match self.kind {
                TypeArg::I => Kind::TypeI,
                TypeArg::II => Kind::TypeII,
            },
            ell: self.ell,
            t: self.t,
        }
    }

    fn group(&self) -> Result<GroupStructure, Error> {
        decompose(&self.spec().prescription()?, self.max_group_order)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Show the cyclic decomposition of the class group
    Group {
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// N_n (elements of F_{q^n} by characteristic polynomial) or I_d (irreducibles) per class
    Count {
        #[arg(value_enum)]
        which: Quantity,
        #[command(flatten)]
        inst: InstanceArgs,
        /// Degree or inclusive range a..b
        #[arg(long, conflicts_with = "d")]
        n: Option<String>,
        /// Same as --n
        #[arg(long)]
        d: Option<String>,
        /// all | v=E1,E2,.. | rep=C0,C1,.. | "lead=A1,.. end=B0,.."
        #[arg(long, default_value = "all")]
        class: String,
    },
    /// The numerator polynomials P_j and the trivial factor of the log-zeta function
    Zeta {
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// Compare counts with brute-force enumeration
    Verify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 6)]
        d_max: usize,
        /// Largest number of candidates enumerated per degree
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

enum Failure {
    Usage(String),
    Mismatch(String),
    /// stdout was closed early, e.g. by `head`
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            Failure::Closed
        } else {
            Failure::Usage(format!("output error: {e}"))
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<(), Failure> {
    match cli.command {
        Command::Group { inst } => render::group(out, &inst.group()?, inst.format)?,
        Command::Count { which, inst, n, d, class } => {
            let range = n.or(d).ok_or_else(|| Failure::Usage("count needs --n or --d".into()))?;
            let range = parse_range(&range)?;
            let gs = inst.group()?;
            let classes = class.parse::<ClassSpec>()?.resolve(&gs)?;
            let mut counter = Counter::new(gs.clone())?;
            let (kind, table) = match which {
                Quantity::N => (CountKind::N, counter.n_table(*range.end())?),
                Quantity::I => (CountKind::I, counter.i_table(*range.end())?),
            };
            let mut rows = Vec::new();
            for n in range {
                for &idx in &classes {
                    rows.push(Row {
                        n,
                        class: gs.unpack(idx).0,
                        representative: gs.class_at(idx).to_poly().to_text(),
                        value: table.at(n, idx).to_string(),
                    });
                }
            }
            render::counts(out, &gs, &kind.to_string(), &rows, inst.format)?;
        }
        Command::Zeta { inst } => {
            let gs = inst.group()?;
            let counter = Counter::new(gs.clone())?;
            render::zeta(out, &gs, &counter.zeta_numerators(), inst.format)?;
        }
        Command::Verify { inst, n_max, d_max, budget } => {
            let gs = inst.group()?;
            let report = oracle::verify(&gs, n_max, d_max, budget)?;
            render::report(out, &report, inst.format)?;
            if let Some(c) = report.first_mismatch() {
                return Err(Failure::Mismatch(format!(
                    "mismatch: {}_{}({}) <{}>: oracle {}, computed {}",
                    c.quantity,
                    c.n,
                    c.class.to_text(),
                    c.representative,
                    c.expected,
                    c.computed
                )));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) | Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
