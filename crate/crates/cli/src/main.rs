use std::path::PathBuf;
use std::process::ExitCode;

use anbimod::report::Report;
use anbimod::Result;
use anbimod_cli::{commands, RunConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit status for unusable input; 1 and 2 are taken by check outcomes.
const USAGE_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "anbimod", version, about = "Exact A_n(V)-bimodule computations for Virasoro VOAs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimensions and stabilized quotient dimensions.
    Dims(Common),
    /// Run verification suites.
    Verify(Common),
    /// Fusion table from balanced maps.
    Fusion(Common),
    /// Bimodule quotient of V against the Zhu-type quotient, cutoff by cutoff.
    CompareOn(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Key-value settings file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// ising, lee-yang, tricritical-ising, minimal:p:q or virasoro.
    #[arg(long)]
    model: Option<String>,
    /// Central charge as p/q (required for virasoro).
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    /// Extra Verma module of the virasoro model, as `label=h`.
    #[arg(long = "module", allow_hyphen_values = true)]
    modules: Vec<String>,
    /// Space to report: V or a module label.
    #[arg(long)]
    space: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    /// Cutoff range A..B.
    #[arg(long)]
    w: Option<String>,
    /// Number of equal consecutive quotient dims that counts as stable.
    #[arg(long)]
    window: Option<usize>,
    /// Degree budget of sampled instances and balance conditions.
    #[arg(long)]
    budget: Option<u32>,
    /// Number of seeded random instances per suite.
    #[arg(long)]
    random: Option<usize>,
    /// Bound each sampled element's degree rather than the total degree.
    #[arg(long)]
    per_element: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated suite list (verify).
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl Common {
    fn run_config(&self) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(p) = &self.config {
            cfg.apply_file(p)?;
        }
        let flags: [(&str, Option<String>); 12] = [
            ("model", self.model.clone()),
            ("c", self.c.clone()),
            ("space", self.space.clone()),
            ("n", self.n.map(|v| v.to_string())),
            ("t", self.t.map(|v| v.to_string())),
            ("s", self.s.map(|v| v.to_string())),
            ("w", self.w.clone()),
            ("window", self.window.map(|v| v.to_string())),
            ("budget", self.budget.map(|v| v.to_string())),
            ("random", self.random.map(|v| v.to_string())),
            ("seed", self.seed.map(|v| v.to_string())),
            ("suite", self.suite.clone()),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                cfg.set(k, &v)?;
            }
        }
        if !self.modules.is_empty() {
            cfg.modules.clear();
            for m in &self.modules {
                cfg.set("module", &m.replacen('=', " ", 1))?;
            }
        }
        if self.per_element {
            cfg.per_element = true;
        }
        Ok(cfg)
    }
}

fn emit(report: &Report, common: &Common) -> std::io::Result<()> {
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match &common.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (common, run): (&Common, fn(&RunConfig) -> Result<Report>) = match &cli.command {
        Command::Dims(c) => (c, commands::dims),
        Command::Verify(c) => (c, commands::verify),
        Command::Fusion(c) => (c, commands::fusion),
        Command::CompareOn(c) => (c, commands::compare_on),
    };
    let report = match common.run_config().and_then(|cfg| run(&cfg)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    if let Err(e) = emit(&report, common) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(USAGE_ERROR);
    }
    ExitCode::from(report.exit_code() as u8)
}
