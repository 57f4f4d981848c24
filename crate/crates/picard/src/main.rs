use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use picard::cache::CacheStore;
use picard::certify::{self, Options, Surface};
use picard::counting::CountOptions;
use picard::report::Report;
use picard::spec::SurfaceSpec;
use picard::{Error, Result};

/// Picard rank bounds for degree-2 K3 surfaces w^2 = f6(x, y, z) from a single odd prime.
#[derive(Parser)]
#[command(name = "picard", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one stage of the pipeline.
    Stage {
        stage: Stage,
        #[command(flatten)]
        common: Common,
    },
    /// Run the whole pipeline and emit a verdict.
    Certify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Stage {
    Count,
    Zeta,
    Tritangent,
    Obstruct,
    Lattice,
}

#[derive(Args)]
struct Common {
    /// Surface spec (TOML).
    spec: PathBuf,
    /// Odd prime of good reduction.
    #[arg(long, short = 'p')]
    prime: u64,
    /// Count over F_{p^d} for d = 1..dmax (raised to what the zeta step needs).
    #[arg(long)]
    dmax: Option<u32>,
    /// Search tritangents over F_{p^e} for e up to this degree.
    #[arg(long, default_value_t = 2)]
    line_degree: u32,
    /// Append-only count cache (JSON lines).
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Allow counts with q^2 above 4e9.
    #[arg(long)]
    deep: bool,
    /// Worker threads for counting (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn options(&self) -> Options {
        let mut count = CountOptions { deep: self.deep, ..CountOptions::default() };
        if let Some(t) = self.threads {
            count.threads = t.max(1);
        }
        Options { dmax: self.dmax, line_degree: self.line_degree, count }
    }
}

fn run(cli: Cli) -> Result<(Report, bool)> {
    let (stage, common) = match cli.command {
        Command::Stage { stage, common } => (Some(stage), common),
        Command::Certify { common } => (None, common),
    };
    if common.line_degree == 0 {
        return Err(Error::Usage("--line-degree must be at least 1".into()));
    }
    let spec = SurfaceSpec::load(&common.spec)?;
    let surface = Surface::new(spec, common.prime)?;
    let mut cache = match &common.cache {
        Some(path) => CacheStore::open(path)?,
        None => CacheStore::in_memory(),
    };
    let opts = common.options();
    let report = match stage {
        Some(Stage::Count) => {
            let k = surface.spec.k.unwrap_or(2);
            let dmax = opts.dmax.unwrap_or_else(|| certify::traces_needed(k));
            certify::stage_count(&surface, dmax, &mut cache, opts.count)?
        }
        Some(Stage::Zeta) => certify::stage_zeta(&surface, &opts, &mut cache)?,
        Some(Stage::Tritangent) => certify::stage_tritangent(&surface, &opts)?,
        Some(Stage::Obstruct) => certify::stage_obstruct(&surface)?,
        Some(Stage::Lattice) => certify::stage_lattice(&surface)?,
        None => certify::certify(&surface, &opts, &mut cache)?,
    };
    Ok((report, common.json))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok((report, json)) => {
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
