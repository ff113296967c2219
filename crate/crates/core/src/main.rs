use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ncfrac::config::{Config, ExperimentKind, KEYS};
use ncfrac::experiments;
use ncfrac::validation::{run_battery, BatteryOptions, Selection};
use ncfrac::Error;

const USAGE_ERROR: u8 = 64;

// Stdout may be a closed pipe; output errors are ignored.
macro_rules! out {
    ($fmt:literal, $arg:expr, end) => {
        let _ = write!(std::io::stdout(), $fmt, $arg);
    };
    ($($t:tt)*) => {
        let _ = writeln!(std::io::stdout(), $($t)*);
    };
}

#[derive(Parser)]
#[command(name = "ncfrac", version, about = "Experiments on quantum Euclidean spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output directory (overrides the config's `out`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Random seed (overrides the config's `seed`).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run { config: PathBuf },
    /// Run the validation battery.
    Validate {
        /// Comma-separated criterion numbers or names.
        #[arg(long, default_value = "all")]
        only: String,
    },
    /// List experiment kinds and their config keys.
    ListExperiments,
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(USAGE_ERROR) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(USAGE_ERROR);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure threads: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    }
    match cli.command {
        Command::ListExperiments => {
            for kind in ExperimentKind::ALL {
                out!("{:<11} {}", kind.name(), kind.description());
                for k in KEYS.iter().filter(|k| k.kinds.contains(&kind) && k.key != "experiment") {
                    out!("    {:<22} = {:<28} {}", k.key, k.default, k.help);
                }
            }
            ExitCode::SUCCESS
        }
        Command::Validate { only } => {
            let selection = match Selection::parse(&only) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(USAGE_ERROR);
                }
            };
            let opts = BatteryOptions { seed: cli.seed.unwrap_or(0), ..BatteryOptions::default() };
            let report = match run_battery(&selection, &opts) {
                Ok(r) => r,
                Err(e) => return fail(&e),
            };
            out!("{}", report.table(), end);
            if let Some(dir) = cli.out {
                let header = vec![("validate.only".to_string(), only), ("seed".to_string(), opts.seed.to_string())];
                if let Err(e) = std::fs::create_dir_all(&dir).map_err(Error::from).and_then(|_| report.write_csv(&dir.join("validation.csv"), &header)) {
                    return fail(&e);
                }
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Command::Run { config } => {
            let mut cfg = match Config::load(&config) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            if let Some(seed) = cli.seed {
                if let Err(e) = cfg.set("seed", seed.to_string()) {
                    return fail(&e);
                }
            }
            if let Some(out) = &cli.out {
                if let Err(e) = cfg.set("out", out.to_string_lossy()) {
                    return fail(&e);
                }
            }
            let out = PathBuf::from(cfg.str("out"));
            match experiments::run(&cfg, &out) {
                Ok(outcome) => {
                    out!("{}", outcome.summary, end);
                    let summary = format!("{}\n{}", cfg.render(), outcome.summary);
                    if let Err(e) = std::fs::write(out.join("summary.txt"), summary) {
                        return fail(&Error::from(e));
                    }
                    for f in &outcome.files {
                        out!("wrote {}", f.display());
                    }
                    if outcome.passed {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail(&e),
            }
        }
    }
}
