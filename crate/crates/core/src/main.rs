use std::path::PathBuf;
use std::process::ExitCode;

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use serde_json::json;

use composition_machine::{
    detect_cycle, eval_morphism, export_dot, load_machine, maximal_space, orbit, parse_morphism,
    render_diagram, render_space_text, space_of, Configuration, CycleOutcome, Machine, OrbitReport,
    ProgramSpace, Value,
};

/// Run and inspect composition machines.
#[derive(Debug, Parser)]
#[command(name = "compmachine", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a machine file and report every violated constraint.
    Validate { file: PathBuf },
    /// Print the orbit report as JSON.
    Run {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        /// Override the stored initial configuration ('1'/'0' per arrow).
        #[arg(long)]
        initial: Option<String>,
    },
    /// Print the space-time diagram, one line per time step.
    Diagram {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        initial: Option<String>,
    },
    /// Find the pre-period and period of the orbit.
    Cycle {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
    },
    /// Print the program space at a time step, or the maximal space.
    Space {
        file: PathBuf,
        #[arg(long, conflicts_with = "maximal")]
        at: Option<usize>,
        #[arg(long)]
        maximal: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate a morphism such as "f3∘f2∘f1", "f3.f2.f1" or "id:d1".
    Eval {
        file: PathBuf,
        #[arg(long)]
        morphism: String,
        #[arg(long, allow_hyphen_values = true)]
        input: i64,
        /// Refuse unless the morphism exists in the space at this step.
        #[arg(long)]
        at: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

enum Failure {
    /// Validation or IO problem.
    Invalid(String),
    /// The request is well-formed but cannot be honoured.
    Refused(String),
    Usage(String),
}

impl Failure {
    fn exit(self) -> ExitCode {
        let (code, msg) = match self {
            Failure::Invalid(m) => (1, m),
            Failure::Refused(m) => (2, m),
            Failure::Usage(m) => (64, m),
        };
        eprintln!("{msg}");
        ExitCode::from(code)
    }
}

fn load(file: &PathBuf) -> Result<Machine, Failure> {
    load_machine(file).map_err(|e| Failure::Invalid(e.to_string()))
}

fn start(m: &Machine, initial: Option<&str>) -> Result<Configuration, Failure> {
    match initial {
        None => Ok(m.initial_configuration().clone()),
        Some(bits) => {
            let c: Configuration = bits
                .parse()
                .map_err(|e| Failure::Usage(format!("--initial: {e}")))?;
            m.with_initial(c)
                .map(|m| m.initial_configuration().clone())
                .map_err(|e| Failure::Usage(format!("--initial: {e}")))
        }
    }
}

fn space_at(m: &Machine, t: usize) -> ProgramSpace {
    let o = orbit(m, m.initial_configuration(), t).expect("stored configuration is total");
    space_of(m, o.at(t).expect("orbit has t+1 entries"), t).expect("orbit configurations are total")
}

fn space_json(ps: &ProgramSpace) -> serde_json::Value {
    json!({
        "data_types": ps.data_types(),
        "morphisms": ps.morphisms().iter().map(|m| json!({
            "name": m.to_string(),
            "kind": m.kind(),
            "input": m.input(),
            "output": m.output(),
            "computons": m.computons(),
        })).collect::<Vec<_>>(),
        "stats": ps.stats(),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file } => {
            load(&file)?;
            println!("OK");
        }
        Command::Run {
            file,
            steps,
            initial,
        } => {
            let m = load(&file)?;
            let c0 = start(&m, initial.as_deref())?;
            let o = orbit(&m, &c0, steps).expect("checked length");
            let report = OrbitReport::new(&m, &o);
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serialises")
            );
        }
        Command::Diagram {
            file,
            steps,
            initial,
        } => {
            let m = load(&file)?;
            let c0 = start(&m, initial.as_deref())?;
            print!(
                "{}",
                render_diagram(&orbit(&m, &c0, steps).expect("checked length"))
            );
        }
        Command::Cycle { file, max_steps } => {
            if max_steps == 0 {
                return Err(Failure::Usage("--max-steps must be at least 1".into()));
            }
            let m = load(&file)?;
            match detect_cycle(&m, m.initial_configuration(), max_steps)
                .expect("stored configuration is total")
            {
                CycleOutcome::Found(r) => {
                    println!(
                        "{{\"preperiod\": {}, \"period\": {}}}",
                        r.preperiod, r.period
                    )
                }
                CycleOutcome::NotFoundWithin(n) => println!("no cycle found within {n} steps"),
            }
        }
        Command::Space {
            file,
            at,
            maximal,
            format,
        } => {
            let m = load(&file)?;
            let ps = if maximal {
                maximal_space(&m)
            } else {
                space_at(&m, at.unwrap_or(0))
            };
            match format {
                Format::Text => print!("{}", render_space_text(&ps)),
                Format::Dot => print!("{}", export_dot(&ps)),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&space_json(&ps)).expect("space serialises")
                ),
            }
        }
        Command::Eval {
            file,
            morphism,
            input,
            at,
        } => {
            let m = load(&file)?;
            let mo = parse_morphism(&m, &morphism).map_err(|e| Failure::Refused(e.to_string()))?;
            if let Some(t) = at {
                if !space_at(&m, t).contains(&mo) {
                    return Err(Failure::Refused(format!(
                        "{mo} is not in the program space at t={t}"
                    )));
                }
            }
            let out = eval_morphism(&m, &mo, &Value::new(mo.input().clone(), input))
                .map_err(|e| Failure::Refused(e.to_string()))?;
            println!("{out}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(64);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}
