//! Command-line front end for skew BCH convolutional codes: build a code
//! from a spec file, push words through encode/corrupt/decode, replay the
//! library's reference examples, and run seeded channel simulations.
//!
//! Exit codes: 0 success, 2 input or validation error, 3 key-equation
//! failure surfaced by `decode --no-recover`, 4 undecodable word.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use skewbch::code::Code;
use skewbch::decode::{decode, plant_random_error, DecodeStatus};
use skewbch::funcfield::{FunctionField, RationalFunction};
use skewbch::replay;
use skewbch::sigma::SigmaField;
use skewbch::sim::{simulate, ErrorCount, SimConfig, ValueMode};
use skewbch::skew::SkewPoly;
use skewbch::Error;

#[derive(Parser)]
#[command(name = "skewbch", version, about = "Skew BCH convolutional codes: exact construction, decoding, and channel simulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArg {
    /// Code description file (field, sigma, and code lines).
    #[arg(long)]
    spec: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Print the parameters and generator of the code in a spec file.
    Build {
        #[command(flatten)]
        spec: SpecArg,
    },
    /// Encode a message (up to k comma-separated elements) into a word.
    Encode {
        #[command(flatten)]
        spec: SpecArg,
        /// Message coefficients, low degree first.
        message: String,
    },
    /// Add an error pattern to a word, explicitly or at random.
    Corrupt {
        #[command(flatten)]
        spec: SpecArg,
        /// The word to corrupt: n comma-separated elements.
        word: String,
        /// Comma-separated error positions (requires --values).
        #[arg(long)]
        positions: Option<String>,
        /// Comma-separated nonzero error values (requires --positions).
        #[arg(long)]
        values: Option<String>,
        /// Plant this many random errors instead.
        #[arg(long, conflicts_with_all = ["positions", "values"])]
        errors: Option<usize>,
        /// Degree bound for random error values.
        #[arg(long, default_value_t = 1)]
        degree_bound: usize,
        /// Seed for random error sampling.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decode a word, reporting status, error estimate, and message.
    Decode {
        #[command(flatten)]
        spec: SpecArg,
        /// The received word: n comma-separated elements.
        word: String,
        /// Surface key-equation failures instead of recovering from them.
        #[arg(long)]
        no_recover: bool,
    },
    /// Run seeded encode/corrupt/decode trials and tally the outcomes.
    Simulate {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Errors per trial: a count up to tau, or "random".
        #[arg(long, default_value = "1")]
        errors: String,
        /// Degree bound for random message and error coefficients.
        #[arg(long, default_value_t = 1)]
        degree_bound: usize,
        /// Sweep several degree bounds (comma-separated); overrides --degree-bound.
        #[arg(long)]
        sweep_bounds: Option<String>,
        /// Worker threads. Results never depend on this.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Count key-equation failures as losses instead of recovering.
        #[arg(long)]
        no_recover: bool,
        /// Force every error value to 1 (guaranteed-failure pattern).
        #[arg(long)]
        forced_dependent: bool,
        /// Print machine-readable key=value lines instead of a table.
        #[arg(long)]
        machine: bool,
    },
    /// Recompute every reference value and diff against the published form.
    PaperExamples,
}

/// A failed command: message for standard error plus the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::KeyEquationFailure => 3,
            Error::Undecodable(_) => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    // Die quietly when the consumer closes the pipe (build | head), instead
    // of panicking on the next print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Build { spec } => cmd_build(&spec),
        Command::Encode { spec, message } => cmd_encode(&spec, &message),
        Command::Corrupt { spec, word, positions, values, errors, degree_bound, seed } => {
            cmd_corrupt(&spec, &word, positions, values, errors, degree_bound, seed)
        }
        Command::Decode { spec, word, no_recover } => cmd_decode(&spec, &word, no_recover),
        Command::Simulate {
            spec,
            seed,
            trials,
            errors,
            degree_bound,
            sweep_bounds,
            jobs,
            no_recover,
            forced_dependent,
            machine,
        } => cmd_simulate(
            &spec,
            seed,
            trials,
            &errors,
            degree_bound,
            sweep_bounds,
            jobs,
            no_recover,
            forced_dependent,
            machine,
        ),
        Command::PaperExamples => cmd_paper_examples(),
    }
}

fn load_code(spec: &SpecArg) -> Result<Code<FunctionField>, Failure> {
    let text = std::fs::read_to_string(&spec.spec)
        .map_err(|e| Failure::input(format!("{}: {e}", spec.spec.display())))?;
    Ok(Code::from_spec_text(&text)?)
}

fn parse_elems(
    code: &Code<FunctionField>,
    s: &str,
    what: &str,
    max: usize,
) -> Result<Vec<RationalFunction>, Failure> {
    let f = code.field();
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() > max {
        return Err(Failure::input(format!(
            "{what} has {} elements, the limit is {max}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| {
            f.parse_elem(p)
                .map_err(|e| Failure::input(format!("{what} element {p:?}: {e}")))
        })
        .collect()
}

fn parse_word(code: &Code<FunctionField>, s: &str) -> Result<SkewPoly<FunctionField>, Failure> {
    let coeffs = parse_elems(code, s, "word", code.n())?;
    // A channel word always carries all n coordinates; padding a short one
    // would hide truncated input.
    if coeffs.len() != code.n() {
        return Err(Failure::input(format!(
            "word has {} coordinates, expected {}",
            coeffs.len(),
            code.n()
        )));
    }
    Ok(SkewPoly::from_coeffs(code.field(), coeffs))
}

/// Comma-separated coordinates 0..n-1, the word serialization format.
fn render_word(code: &Code<FunctionField>, w: &SkewPoly<FunctionField>) -> String {
    (0..code.n())
        .map(|i| w.coeff(i).render())
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_build(spec: &SpecArg) -> Result<(), Failure> {
    let code = load_code(spec)?;
    println!(
        "n={} k={} delta={} tau={}",
        code.n(),
        code.k(),
        code.delta(),
        code.tau()
    );
    println!("beta = {}", code.beta().render());
    println!("g = {}", code.generator().render());
    Ok(())
}

fn cmd_encode(spec: &SpecArg, message: &str) -> Result<(), Failure> {
    let code = load_code(spec)?;
    let coeffs = parse_elems(&code, message, "message", code.k())?;
    let msg = SkewPoly::from_coeffs(code.field(), coeffs);
    let word = code.encode(&msg)?;
    println!("{}", render_word(&code, &word));
    Ok(())
}

fn cmd_corrupt(
    spec: &SpecArg,
    word: &str,
    positions: Option<String>,
    values: Option<String>,
    errors: Option<usize>,
    degree_bound: usize,
    seed: u64,
) -> Result<(), Failure> {
    let code = load_code(spec)?;
    let f = code.field();
    let w = parse_word(&code, word)?;
    let (positions, values) = match (positions, values) {
        (Some(p), Some(v)) => {
            let positions: Vec<usize> = p
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Failure::input(format!("bad position {s:?}")))
                })
                .collect::<Result<_, _>>()?;
            for (i, &d) in positions.iter().enumerate() {
                if d >= code.n() {
                    return Err(Error::PositionOutOfRange { position: d, n: code.n() }.into());
                }
                if positions[..i].contains(&d) {
                    return Err(Failure::input(format!("position {d} repeats")));
                }
            }
            let values = parse_elems(&code, &v, "values", code.n())?;
            if values.len() != positions.len() {
                return Err(Failure::input(format!(
                    "{} positions but {} values",
                    positions.len(),
                    values.len()
                )));
            }
            if values.iter().any(|e| e.is_zero()) {
                return Err(Failure::input("error values must be nonzero"));
            }
            (positions, values)
        }
        (None, None) => {
            let nu = errors.unwrap_or(0);
            if nu > code.n() {
                return Err(Failure::input(format!(
                    "{nu} errors exceed the code length {}",
                    code.n()
                )));
            }
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let planted = plant_random_error(&code, &mut rng, nu, degree_bound, false);
            (planted.positions, planted.values)
        }
        _ => return Err(Failure::input("--positions and --values go together")),
    };
    let mut coeffs: Vec<_> = (0..code.n()).map(|i| w.coeff(i)).collect();
    for (&d, e) in positions.iter().zip(&values) {
        coeffs[d] = &coeffs[d] + e;
    }
    let corrupted = SkewPoly::from_coeffs(f, coeffs);
    if !positions.is_empty() {
        eprintln!(
            "planted positions={} values={}",
            positions.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
            values.iter().map(|e| e.render()).collect::<Vec<_>>().join(",")
        );
    }
    println!("{}", render_word(&code, &corrupted));
    Ok(())
}

fn cmd_decode(spec: &SpecArg, word: &str, no_recover: bool) -> Result<(), Failure> {
    let code = load_code(spec)?;
    let w = parse_word(&code, word)?;
    let outcome = decode(&code, &w, !no_recover)?;
    let status = match outcome.status {
        DecodeStatus::Clean => "clean",
        DecodeStatus::Corrected => "corrected",
        DecodeStatus::Recovered => "recovered",
    };
    println!("status={status}");
    if let Some(est) = &outcome.estimate {
        println!(
            "positions={}",
            est.positions.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
        );
        println!(
            "values={}",
            est.values.iter().map(|e| e.render()).collect::<Vec<_>>().join(",")
        );
        println!("locator={}", est.locator.render());
    }
    println!("codeword={}", render_word(&code, &outcome.codeword));
    println!(
        "message={}",
        (0..code.k())
            .map(|i| outcome.message.coeff(i).render())
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    spec: &SpecArg,
    seed: u64,
    trials: usize,
    errors: &str,
    degree_bound: usize,
    sweep_bounds: Option<String>,
    jobs: usize,
    no_recover: bool,
    forced_dependent: bool,
    machine: bool,
) -> Result<(), Failure> {
    let code = load_code(spec)?;
    let errors = match errors {
        "random" => ErrorCount::Random,
        n => ErrorCount::Fixed(
            n.parse::<usize>()
                .map_err(|_| Failure::input(format!("--errors takes a count or \"random\", got {n:?}")))?,
        ),
    };
    let degree_bounds = match sweep_bounds {
        Some(s) => s
            .split(',')
            .map(|b| {
                b.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::input(format!("bad sweep bound {b:?}")))
            })
            .collect::<Result<_, _>>()?,
        None => vec![degree_bound],
    };
    let cfg = SimConfig {
        seed,
        trials,
        errors,
        degree_bounds,
        jobs,
        auto_recover: !no_recover,
        values: if forced_dependent { ValueMode::AllOnes } else { ValueMode::Random },
    };
    let report = simulate(&code, &cfg)?;
    if machine {
        for line in report.machine_lines() {
            println!("{line}");
        }
    } else {
        print!("{}", report.human_table());
    }
    Ok(())
}

fn cmd_paper_examples() -> Result<(), Failure> {
    let checks = replay::run_all();
    let mut failed = 0usize;
    for c in &checks {
        if c.passed {
            println!("PASS  {}", c.name);
        } else {
            failed += 1;
            println!("FAIL  {}", c.name);
            println!("      expected: {}", c.expected);
            println!("      computed: {}", c.computed);
        }
    }
    println!("{} of {} reference values replayed", checks.len() - failed, checks.len());
    if failed > 0 {
        return Err(Failure { code: 1, message: format!("{failed} reference values diverged") });
    }
    Ok(())
}
