//! Command line interface. JSON goes in on stdin (or `--in`) and comes out
//! on stdout (or `--out`). Exit codes: 0 success, 2 invalid input,
//! 3 not decomposable, 4 suite failure.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use little_cubes::{
    contract, decomposability_threshold, factor, gen_config, gen_config_scattered, gen_word,
    render_svg, run_suite, strip_grouping, AxisBlocks, Configuration, FactorResult, GenParams,
    Rational, Suite, TensorWord,
};

#[derive(Parser)]
#[command(name = "cubes", version, about = "box configurations and tensor words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// input file; stdin when omitted
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random tensor word
    GenWord {
        #[arg(long, default_value = "1,1")]
        blocks: AxisBlocks,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_generators: usize,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
        #[arg(long, default_value_t = 8)]
        denom: u64,
        /// forbid nullary generators
        #[arg(long)]
        no_nullary: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random configuration
    GenConfig {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 4)]
        arity: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// emit the fixed pinwheel configuration
        #[arg(long)]
        pinwheel: bool,
        /// place boxes by rejection sampling instead of binary splitting
        #[arg(long)]
        scattered: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a tensor word to a configuration
    Eval {
        #[arg(long, default_value = "1,1")]
        blocks: AxisBlocks,
        #[command(flatten)]
        io: Io,
    },
    /// Factor a configuration into a canonical tensor word
    Factor {
        #[arg(long, default_value = "1,1")]
        blocks: AxisBlocks,
        #[command(flatten)]
        io: Io,
    },
    /// Contract every box about its center
    Contract {
        /// contraction parameter in [0, 1), e.g. 1/2
        #[arg(long)]
        t: Rational,
        #[command(flatten)]
        io: Io,
    },
    /// Scan for the first grid point at which the contraction factors
    Threshold {
        #[arg(long, default_value = "1,1")]
        blocks: AxisBlocks,
        #[arg(long, default_value_t = 64)]
        grid: u64,
        #[command(flatten)]
        io: Io,
    },
    /// Run a property suite
    Check {
        /// suite name, or "all"
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1,1")]
        blocks: AxisBlocks,
    },
    /// Render a planar configuration as SVG
    Render {
        /// overlay strip hulls for the given axis blocks
        #[arg(long)]
        strips: Option<AxisBlocks>,
        #[command(flatten)]
        io: Io,
    },
}

fn read_input(input: &Option<PathBuf>) -> Result<String, String> {
    match input {
        Some(path) => fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn write_output(out: &Option<PathBuf>, data: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, data).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn emit_json(out: &Option<PathBuf>, value: &impl Serialize) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    write_output(out, &text)
}

fn parse<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

fn load_word(io: &Io, blocks: &AxisBlocks) -> Result<TensorWord, String> {
    let word: TensorWord = parse(&read_input(&io.input)?)?;
    word.validate(blocks).map_err(|e| e.to_string())?;
    Ok(word)
}

fn load_config(io: &Io) -> Result<Configuration, String> {
    parse(&read_input(&io.input)?)
}

const EXIT_INVALID: u8 = 2;
const EXIT_NOT_DECOMPOSABLE: u8 = 3;
const EXIT_SUITE_FAILED: u8 = 4;

fn invalid(message: String) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_INVALID)
}

fn run(command: Command) -> ExitCode {
    match command {
        Command::GenWord {
            blocks,
            seed,
            max_generators,
            max_arity,
            denom,
            no_nullary,
            out,
        } => {
            let mut params = GenParams::new(seed, blocks);
            params.max_generators = max_generators;
            params.max_arity_per_generator = max_arity;
            params.coordinate_denominator_bound = denom;
            params.allow_nullary = !no_nullary;
            match gen_word(&params) {
                Ok(word) => match emit_json(&out, &word) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => invalid(e),
                },
                Err(e) => invalid(e.to_string()),
            }
        }
        Command::GenConfig {
            dim,
            arity,
            seed,
            pinwheel,
            scattered,
            out,
        } => {
            let config = if scattered && !pinwheel {
                Ok(gen_config_scattered(seed, dim, arity))
            } else {
                gen_config(seed, dim, arity, pinwheel)
            };
            match config {
                Ok(config) => match emit_json(&out, &config) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => invalid(e),
                },
                Err(e) => invalid(e.to_string()),
            }
        }
        Command::Eval { blocks, io } => {
            let word = match load_word(&io, &blocks) {
                Ok(w) => w,
                Err(e) => return invalid(e),
            };
            match word.eval(&blocks) {
                Ok(config) => match emit_json(&io.out, &config) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => invalid(e),
                },
                Err(e) => invalid(e.to_string()),
            }
        }
        Command::Factor { blocks, io } => {
            let config = match load_config(&io) {
                Ok(c) => c,
                Err(e) => return invalid(e),
            };
            match factor(&config, &blocks) {
                Ok(FactorResult::Word(word)) => match emit_json(&io.out, &word) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => invalid(e),
                },
                Ok(FactorResult::NotDecomposable(witness)) => {
                    let payload = json!({
                        "decomposable": false,
                        "witness": witness,
                    });
                    match emit_json(&io.out, &payload) {
                        Ok(()) => ExitCode::from(EXIT_NOT_DECOMPOSABLE),
                        Err(e) => invalid(e),
                    }
                }
                Err(e) => invalid(e.to_string()),
            }
        }
        Command::Contract { t, io } => {
            let config = match load_config(&io) {
                Ok(c) => c,
                Err(e) => return invalid(e),
            };
            match contract(&config, &t) {
                Ok(contracted) => match emit_json(&io.out, &contracted) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => invalid(e),
                },
                Err(e) => invalid(e.to_string()),
            }
        }
        Command::Threshold { blocks, grid, io } => {
            let config = match load_config(&io) {
                Ok(c) => c,
                Err(e) => return invalid(e),
            };
            match decomposability_threshold(&config, &blocks, grid) {
                Ok(report) => match emit_json(&io.out, &report) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => invalid(e),
                },
                Err(e) => invalid(e.to_string()),
            }
        }
        Command::Check {
            suite,
            trials,
            seed,
            blocks,
        } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                match suite.parse() {
                    Ok(s) => vec![s],
                    Err(e) => return invalid(format!("{e}")),
                }
            };
            let mut all_passed = true;
            for suite in suites {
                let report = run_suite(suite, trials, seed, &blocks);
                let status = if report.passed() { "pass" } else { "fail" };
                println!(
                    "{}: {} ({} trials, {} failures, {} ms)",
                    report.suite,
                    status,
                    report.trials,
                    report.failures.len(),
                    report.elapsed_ms
                );
                for failure in &report.failures {
                    println!(
                        "  seed {} digest {}: {}",
                        failure.seed, failure.digest, failure.message
                    );
                }
                all_passed &= report.passed();
            }
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_SUITE_FAILED)
            }
        }
        Command::Render { strips, io } => {
            let config = match load_config(&io) {
                Ok(c) => c,
                Err(e) => return invalid(e),
            };
            let groupings = match &strips {
                Some(blocks) => {
                    let mut out = Vec::new();
                    for block in 1..=blocks.count() {
                        match strip_grouping(&config, blocks, block) {
                            Ok(g) => out.push(g),
                            Err(e) => return invalid(e.to_string()),
                        }
                    }
                    out
                }
                None => Vec::new(),
            };
            match render_svg(&config, &groupings) {
                Ok(svg) => match write_output(&io.out, &svg) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => invalid(e),
                },
                Err(e) => invalid(e.to_string()),
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse().command)
}
