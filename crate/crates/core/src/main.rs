use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use slidecube::format::{parse_config, parse_trace, write_config, write_trace};
use slidecube::harness::{
    analyze_report, oracle_reachable, random_connected, stats_run, write_csv, GenSpec, OracleError,
    Style, DEFAULT_MAX_STATES,
};
use slidecube::kinematics::validate_trace;
use slidecube::planner::{canonicalize, plan, PlanError};
use slidecube::{Configuration, Trace};

#[derive(Parser)]
#[command(
    name = "slidecube",
    version,
    about = "Sliding-cube reconfiguration planner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reconfigure into a straight +x1 chain at the lexicographically greatest module.
    Canonicalize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Plan a trace between two configurations of equal size.
    Plan {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Replay a trace, checking every move and every intermediate state.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        trace: PathBuf,
        /// Also require the final state to equal this configuration.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
    /// Write a random connected configuration.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = Style::Blob)]
        style: Style,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print boundary, hole and articulation statistics.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exhaustive reachability search for small instances.
    Oracle {
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
    },
    /// Canonicalize generated instances and print move counts as CSV.
    Stats {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = Style::Serpentine)]
        style: Style,
    },
}

/// Process exit status with its diagnostic.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn validation(msg: impl Into<String>) -> Self {
        Failure {
            code: 1,
            msg: msg.into(),
        }
    }

    fn parse(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            msg: msg.into(),
        }
    }

    fn infeasible(msg: impl Into<String>) -> Self {
        Failure {
            code: 3,
            msg: msg.into(),
        }
    }
}

impl From<PlanError> for Failure {
    fn from(e: PlanError) -> Self {
        Failure {
            code: if e.is_internal() { 4 } else { 3 },
            msg: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure {
        code: 4,
        msg: format!("{}: {e}", path.display()),
    })
}

fn load_config(path: &Path) -> Result<Configuration, Failure> {
    parse_config(&read(path)?).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Canonicalize { input, out } => {
            let config = load_config(&input)?;
            let (trace, chain) = canonicalize(&config)?;
            write(&out, &write_trace(config.dim(), &trace.moves))?;
            println!("moves: {}", trace.len());
            println!("anchor: {}", chain.anchor);
        }
        Command::Plan { from, to, out } => {
            let a = load_config(&from)?;
            let b = load_config(&to)?;
            let trace = plan(&a, &b)?;
            write(&out, &write_trace(a.dim(), &trace.moves))?;
            println!("moves: {}", trace.len());
        }
        Command::Validate {
            config,
            trace,
            expect,
        } => {
            let initial = load_config(&config)?;
            let file = parse_trace(&read(&trace)?)
                .map_err(|e| Failure::parse(format!("{}: {e}", trace.display())))?;
            let expected = expect.as_deref().map(load_config).transpose()?;
            if file.dim != initial.dim() {
                return Err(Failure::validation(format!(
                    "trace dimension {} does not match configuration dimension {}",
                    file.dim,
                    initial.dim()
                )));
            }
            let end = validate_trace(&Trace::new(initial, file.moves))
                .map_err(|e| Failure::validation(e.to_string()))?;
            if let Some(want) = expected {
                if want != end {
                    return Err(Failure::validation(
                        "final configuration differs from the expected one",
                    ));
                }
            }
            print!("{}", write_config(&end));
        }
        Command::Gen {
            n,
            d,
            seed,
            style,
            out,
        } => {
            let config = random_connected(&GenSpec { n, d, seed, style })
                .map_err(|e| Failure::infeasible(e.to_string()))?;
            write(&out, &write_config(&config))?;
        }
        Command::Analyze { input } => {
            let config = load_config(&input)?;
            let report = analyze_report(&config).map_err(|e| Failure::infeasible(e.to_string()))?;
            print!("{report}");
        }
        Command::Oracle {
            from,
            to,
            max_states,
        } => {
            let a = load_config(&from)?;
            let b = load_config(&to)?;
            match oracle_reachable(&a, &b, max_states) {
                Ok(r) => {
                    println!("reachable: {}", r.reachable);
                    match r.min_moves {
                        Some(m) => println!("min_moves: {m}"),
                        None => println!("min_moves: none"),
                    }
                    println!("states_explored: {}", r.states_explored);
                }
                Err(OracleError::BudgetExhausted { states_explored }) => {
                    println!("reachable: unknown");
                    println!("min_moves: none");
                    println!("states_explored: {states_explored}");
                    eprintln!("state budget of {max_states} exhausted");
                }
                Err(e) => return Err(Failure::infeasible(e.to_string())),
            }
        }
        Command::Stats {
            d,
            n,
            trials,
            seed,
            style,
        } => {
            if d < 2 || n.contains(&0) {
                return Err(Failure::infeasible("need d >= 2 and n >= 1"));
            }
            let rows = stats_run(d, &n, trials, seed, style)?;
            write_csv(&rows, io::stdout().lock()).map_err(|e| Failure {
                code: 4,
                msg: e.to_string(),
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
