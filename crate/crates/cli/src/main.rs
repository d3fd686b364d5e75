use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use coxeter::bruhat::DEFAULT_BALL_BUDGET;
use coxeter::system::DEFAULT_ORBIT_BUDGET;
use coxeter::{
    bruhat_leq, decompose_left, decompose_right, find_converse_counterexample, run_check, Ball,
    Check, CoxeterSystem, Element, Error, GeneratorSet, VerificationReport,
};
use serde_json::{json, Value};

/// Coxeter group words, Bruhat order and parabolic coset checks.
#[derive(Debug, Parser)]
#[command(name = "coxeter", version)]
struct Cli {
    /// Preset name (A2, B3, H3, I2(5), I2(inf), affine-A2, ...) or path to a
    /// matrix file.
    #[arg(long, global = true, default_value = "A2")]
    system: String,

    /// Length bound of the ball. Defaults to the whole group when it is finite.
    #[arg(long = "L", global = true)]
    bound: Option<usize>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads for sweeps. Defaults to the number of cores.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,

    #[arg(long, global = true, default_value_t = DEFAULT_ORBIT_BUDGET,
          value_parser = positive)]
    orbit_budget: usize,

    #[arg(long, global = true, default_value_t = DEFAULT_BALL_BUDGET,
          value_parser = positive)]
    ball_budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical word of a JSON word such as "[1,0,1]".
    Normalize { word: String },
    /// Decide u <= w in the Bruhat order.
    Leq { u: String, w: String },
    /// Factor w through the parabolic subgroup generated by J.
    Decompose {
        w: String,
        #[arg(long = "J")]
        j: String,
        /// `right` gives w = w^J * w_J, `left` gives w = w_J * ^J w.
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Run an exhaustive check over the ball.
    Verify {
        #[arg(value_enum)]
        which: Which,
        /// Generator set for `counterexample`; all subsets are tried if omitted.
        #[arg(long = "J")]
        j: Option<String>,
    },
    /// Emit the Hasse diagram of the ball or of an interval in it.
    Export {
        #[arg(value_enum)]
        what: ExportWhat,
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Which {
    Theorem,
    MinRecursion,
    DihedralChain,
    UniqueMax,
    #[value(alias = "descent-pairs")]
    Prop3,
    All,
    Counterexample,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExportWhat {
    Ball,
    Interval,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// What went wrong, mapped onto the exit codes.
enum Failure {
    Usage(String),
    Core(Error),
    Unverified,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.into()).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => run(&cli),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 3 } else { 2 })
        }
        Err(Failure::Unverified) => ExitCode::from(4),
    }
}

fn run(cli: &Cli) -> Outcome {
    let system = CoxeterSystem::resolve(&cli.system)?.with_orbit_budget(cli.orbit_budget);
    match &cli.command {
        Command::Normalize { word } => {
            let w = parse_element(&system, word)?;
            match format(cli, &[Format::Text, Format::Json])? {
                Format::Json => println!("{}", json!({"word": w, "length": w.length()})),
                _ => println!("{} (length {})", w.word(), w.length()),
            }
            Ok(())
        }
        Command::Leq { u, w } => {
            let u = parse_element(&system, u)?;
            let w = parse_element(&system, w)?;
            let leq = bruhat_leq(&system, &u, &w)?;
            match format(cli, &[Format::Text, Format::Json])? {
                Format::Json => println!("{}", json!({"u": u, "w": w, "leq": leq})),
                _ => println!("{leq}"),
            }
            Ok(())
        }
        Command::Decompose { w, j, side } => {
            let w = parse_element(&system, w)?;
            let j = parse_generators(&system, j)?;
            let (first, second, labels) = match side {
                SideArg::Right => {
                    let (quot, sub) = decompose_right(&system, &w, j)?;
                    (quot, sub, ["w^J", "w_J"])
                }
                SideArg::Left => {
                    let (sub, quot) = decompose_left(&system, &w, j)?;
                    (sub, quot, ["w_J", "^J w"])
                }
            };
            match format(cli, &[Format::Text, Format::Json])? {
                Format::Json => println!(
                    "{}",
                    json!({
                        "w": w,
                        "J": j,
                        "side": match side { SideArg::Left => "left", SideArg::Right => "right" },
                        "factors": [first, second],
                        "lengths": [first.length(), second.length()],
                    })
                ),
                _ => {
                    println!("{} = {} (length {})", labels[0], first.word(), first.length());
                    println!("{} = {} (length {})", labels[1], second.word(), second.length());
                }
            }
            Ok(())
        }
        Command::Verify { which, j } => {
            let fmt = format(cli, &[Format::Text, Format::Json])?;
            let ball = build_ball(cli, &system)?;
            if j.is_some() && !matches!(which, Which::Counterexample) {
                return Err(Failure::Usage("--J only applies to `verify counterexample`".into()));
            }
            let checks: Vec<Check> = match which {
                Which::Theorem => vec![Check::Theorem],
                Which::MinRecursion => vec![Check::MinRecursion],
                Which::DihedralChain => vec![Check::DihedralChain],
                Which::UniqueMax => vec![Check::UniqueMax],
                Which::Prop3 => vec![Check::DescentPairs],
                Which::All => Check::ALL.to_vec(),
                Which::Counterexample => {
                    let j = j.as_deref().map(|s| parse_generators(&system, s)).transpose()?;
                    return counterexample(&ball, j, fmt);
                }
            };
            let reports: Vec<VerificationReport> =
                checks.iter().map(|&c| run_check(&ball, c)).collect();
            let verified = reports.iter().all(|r| r.is_verified());
            match (fmt, which) {
                (Format::Json, Which::All) => println!("{}", aggregate(&ball, &reports)),
                (Format::Json, _) => println!("{}", reports[0].to_json()),
                _ => {
                    for r in &reports {
                        print!("{}", r.to_table());
                    }
                    println!("{}", if verified { "verified" } else { "FAILED" });
                }
            }
            if verified {
                Ok(())
            } else {
                Err(Failure::Unverified)
            }
        }
        Command::Export { what, x, y } => {
            let fmt = match cli.format {
                None => Format::Json,
                Some(_) => format(cli, &[Format::Dot, Format::Json])?,
            };
            let ball = build_ball(cli, &system)?;
            let diagram = match what {
                ExportWhat::Ball => {
                    if x.is_some() || y.is_some() {
                        return Err(Failure::Usage("--x/--y only apply to `export interval`".into()));
                    }
                    ball.hasse()
                }
                ExportWhat::Interval => {
                    let (Some(x), Some(y)) = (x, y) else {
                        return Err(Failure::Usage("`export interval` needs --x and --y".into()));
                    };
                    let x = parse_element(&system, x)?;
                    let y = parse_element(&system, y)?;
                    ball.interval_hasse(&x, &y)?
                }
            };
            match fmt {
                Format::Dot => print!("{}", diagram.to_dot()),
                _ => println!("{}", diagram.to_json()),
            }
            Ok(())
        }
    }
}

fn format(cli: &Cli, allowed: &[Format]) -> Result<Format, Failure> {
    let fmt = cli.format.unwrap_or(allowed[0]);
    if allowed.contains(&fmt) {
        Ok(fmt)
    } else {
        Err(Failure::Usage(format!(
            "--format {} is not available for this command",
            fmt.to_possible_value().expect("no skipped variants").get_name()
        )))
    }
}

fn build_ball(cli: &Cli, system: &CoxeterSystem) -> Result<Ball, Failure> {
    match cli.bound {
        Some(bound) => Ok(Ball::with_budget(system, bound, cli.ball_budget)?),
        None if system.is_finite() => Ok(Ball::whole_group(system, cli.ball_budget)?),
        None => Err(Failure::Usage(format!(
            "{} is infinite; pass --L to bound the ball",
            system.name()
        ))),
    }
}

fn parse_indices(text: &str) -> Result<Vec<usize>, Failure> {
    serde_json::from_str(text)
        .map_err(|e| Failure::Usage(format!("expected a JSON array of indices, got `{text}`: {e}")))
}

fn parse_element(system: &CoxeterSystem, text: &str) -> Result<Element, Failure> {
    Ok(system.normalize_letters(&parse_indices(text)?)?)
}

fn parse_generators(system: &CoxeterSystem, text: &str) -> Result<GeneratorSet, Failure> {
    let indices = parse_indices(text)?;
    if let Some(&letter) = indices.iter().find(|&&s| s >= system.rank()) {
        return Err(Error::LetterOutOfRange { letter, rank: system.rank() }.into());
    }
    Ok(indices.into_iter().collect())
}

fn aggregate(ball: &Ball, reports: &[VerificationReport]) -> Value {
    let mut failures = Vec::new();
    for r in reports {
        for f in &r.failures {
            let mut entry = serde_json::to_value(f).expect("failure serializes");
            entry["check"] = json!(r.check);
            failures.push(entry);
        }
    }
    json!({
        "check": "all",
        "system": ball.system().name(),
        "L": ball.bound(),
        "tested": reports.iter().map(|r| r.tested).sum::<u64>(),
        "nonempty": reports.iter().map(|r| r.nonempty).sum::<u64>(),
        "skipped": reports.iter().map(|r| r.skipped).sum::<u64>(),
        "verified": failures.is_empty(),
        "failures": failures,
        "elapsed_ms": reports.iter().map(|r| r.elapsed_ms).sum::<u64>(),
        "reports": reports,
    })
}

fn counterexample(ball: &Ball, j: Option<GeneratorSet>, fmt: Format) -> Outcome {
    let rank = ball.system().rank();
    let candidates: Vec<GeneratorSet> = match j {
        Some(j) => vec![j],
        None => GeneratorSet::all_subsets(rank).collect(),
    };
    let witness = candidates
        .into_iter()
        .find_map(|j| find_converse_counterexample(ball, j));
    let Some(witness) = witness else {
        match fmt {
            Format::Json => println!("{}", json!({"witness": null})),
            _ => println!("no witness among complete cosets of the ball"),
        }
        return Ok(());
    };
    let revalidated = witness.revalidate(ball.system())?;
    match fmt {
        Format::Json => println!(
            "{}",
            json!({"witness": witness, "revalidated": revalidated})
        ),
        _ => {
            println!("J  = {}", witness.j);
            println!("x  = {}", witness.x.word());
            println!("u1 = {} <= u2 = {}", witness.u1.word(), witness.u2.word());
            let kind = serde_json::to_value(witness.kind).expect("kind serializes");
            println!(
                "{} {} is not below {}",
                kind.as_str().unwrap_or_default(),
                witness.first.word(),
                witness.second.word()
            );
            println!("revalidated: {revalidated}");
        }
    }
    if revalidated {
        Ok(())
    } else {
        Err(Failure::Unverified)
    }
}
