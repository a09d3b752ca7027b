use clap::{Args, Parser, Subcommand};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use facade_synth::building::{export_model, generate_building, BuildError};
use facade_synth::config::{Config, ConfigError};
use facade_synth::dataset::{
    desk_scale_spec, preset_spec, synthesize_dataset_with, DatasetError, MANIFEST_FILE,
    PRESET_GENERATIONS,
};
use facade_synth::eval::{
    compare_reports, evaluate_set, EvalError, EvalOptions, EvalReport, MiouAggregation,
};
use facade_synth::{ClassPalette, SemanticClass};

/// Synthetic facade-segmentation data: generate buildings, render paired
/// datasets and score predictions.
#[derive(Debug, Parser)]
#[command(name = "facade-synth", version)]
struct Cli {
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true, env = "FACADE_SYNTH_WORKERS",
          value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// More output; repeat for extra detail.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build one model from a config's [building] section and export it.
    Generate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Base name of the exported files.
        #[arg(long, default_value = "building")]
        name: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the number of image pairs a config's [dataset] would produce.
    Plan {
        #[arg(long)]
        config: PathBuf,
    },
    /// Render a config's [dataset] into a directory with a manifest.
    Synthesize {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Score predictions against ground truth, or compare saved reports.
    Evaluate(EvaluateArgs),
    /// Write the sixty-building preset as a dataset config.
    Preset {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = PRESET_GENERATIONS as u64,
              value_parser = clap::value_parser!(u64).range(1..))]
        generations: u64,
        /// The 128-pair workstation subset instead of the full preset.
        #[arg(long, conflicts_with = "generations")]
        desk: bool,
    },
}

enum Failure {
    /// Bad input; exit code 2.
    Invalid(String),
    /// Anything else; exit code 1.
    Runtime(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Read { .. } | ConfigError::Serialize(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<DatasetError> for Failure {
    fn from(e: DatasetError) -> Self {
        match e {
            DatasetError::InvalidSpec(_) | DatasetError::CropOffset(_) => {
                Failure::Invalid(e.to_string())
            }
            DatasetError::Build { .. } => Failure::Invalid(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::TooFewReports(_) => Failure::Invalid(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Runtime(format!("{}: {e}", path.display()))
}

fn worker_count(cli: &Cli) -> usize {
    cli.workers.map(|w| w as usize).unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

fn generate(config: &Path, out: &Path, name: &str, seed: Option<u64>) -> Result<(), Failure> {
    let cfg = Config::load(config)?;
    let mut params = cfg.building()?.clone();
    if let Some(s) = seed {
        params.seed = s;
    }
    let model = generate_building(&params)?;
    std::fs::create_dir_all(out).map_err(|e| io_failure(out, e))?;
    let files = export_model(&model, &out.join(format!("{name}.obj")))
        .map_err(|e| Failure::Runtime(e.to_string()))?;
    let counts = model.count_by_class();
    for class in SemanticClass::ALL {
        if class != SemanticClass::Background {
            println!("{:<8} {}", class.name(), counts[class.index()]);
        }
    }
    println!("wrote {}", files.mesh.display());
    Ok(())
}

fn plan(config: &Path) -> Result<(), Failure> {
    let cfg = Config::load(config)?;
    let spec = cfg.dataset()?;
    spec.validate()?;
    println!("generations   {}", spec.generations.len());
    println!("views         {}", spec.view_count);
    println!("hours         {}", spec.hours.len());
    println!("environments  {}", spec.environments.len());
    println!("pairs         {}", spec.plan());
    Ok(())
}

fn synthesize(config: &Path, out: &Path, seed: Option<u64>, workers: usize, verbose: u8) -> Result<(), Failure> {
    let cfg = Config::load(config)?;
    let mut spec = cfg.dataset()?.clone();
    if let Some(s) = seed {
        spec.seed = s;
    }
    spec.validate()?;
    let manifest = synthesize_dataset_with(&spec, out, workers, |b| {
        eprintln!(
            "env {:>2} gen {:>3}: {} rendered, {} reused ({}/{})",
            b.environment, b.generation, b.rendered, b.skipped, b.completed, b.planned
        );
    })?;
    if verbose > 0 {
        eprintln!("fingerprint {}", manifest.fingerprint);
    }
    println!("{}", out.join(MANIFEST_FILE).display());
    Ok(())
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[arg(long, required_unless_present = "compare", conflicts_with = "compare")]
    pred: Option<PathBuf>,
    #[arg(long, required_unless_present = "compare", conflicts_with = "compare")]
    truth: Option<PathBuf>,
    /// Treat 2:1 images as stitched pairs and score their right halves.
    #[arg(long)]
    pairs: bool,
    /// Only score files whose names end with this suffix, e.g. `_id.png`.
    #[arg(long)]
    suffix: Option<String>,
    /// Average mIoU per image instead of over pooled counts.
    #[arg(long)]
    per_image_miou: bool,
    /// JSON report path; a `.txt` table is written next to it.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Saved JSON reports to rank by mIoU.
    #[arg(long, num_args = 2.., value_name = "REPORT")]
    compare: Vec<PathBuf>,
}

fn evaluate(a: EvaluateArgs) -> Result<(), Failure> {
    if !a.compare.is_empty() {
        let reports = a
            .compare
            .iter()
            .map(|p| Ok((p.display().to_string(), EvalReport::read(p)?)))
            .collect::<Result<Vec<_>, EvalError>>()?;
        let cmp = compare_reports(&reports)?;
        print!("{}", cmp.to_table());
        if let Some(path) = &a.report {
            cmp.write(path)?;
        }
        return Ok(());
    }
    let (Some(pred), Some(truth)) = (a.pred, a.truth) else {
        return Err(Failure::Invalid("--pred and --truth are required".into()));
    };
    let opts = EvalOptions {
        pairs: a.pairs,
        suffix: a.suffix,
        aggregation: if a.per_image_miou {
            MiouAggregation::PerImage
        } else {
            MiouAggregation::Dataset
        },
    };
    let report = evaluate_set(&pred, &truth, &ClassPalette::default(), &opts)?;
    print!("{}", report.to_table());
    if let Some(path) = &a.report {
        report.write(path)?;
    }
    Ok(())
}

fn preset(out: &Path, seed: u64, generations: u64, desk: bool) -> Result<(), Failure> {
    let spec = if desk {
        desk_scale_spec(seed)
    } else {
        preset_spec(seed, generations as usize)
    };
    let text = Config::for_dataset(spec.clone()).to_toml()?;
    std::fs::write(out, text).map_err(|e| io_failure(out, e))?;
    println!("{} pairs planned, written to {}", spec.plan(), out.display());
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let workers = worker_count(&cli);
    match cli.command {
        Command::Generate {
            config,
            out,
            name,
            seed,
        } => generate(&config, &out, &name, seed),
        Command::Plan { config } => plan(&config),
        Command::Synthesize { config, out, seed } => {
            synthesize(&config, &out, seed, workers, cli.verbose)
        }
        Command::Evaluate(args) => evaluate(args),
        Command::Preset {
            out,
            seed,
            generations,
            desk,
        } => preset(&out, seed, generations, desk),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
