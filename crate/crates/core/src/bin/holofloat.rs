use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use holofloat::experiment::{run, ExperimentConfig, ExperimentKind, RunError};

/// Runs one experiment and writes `<kind>.csv` and `<kind>.json`.
///
/// Exit codes: 0 success, 2 invalid config, 3 numerical rejection.
#[derive(Parser)]
#[command(name = "holofloat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normalizing constants for n = 1..4.
    Constants(Flags),
    /// Monge–Ampère values and both density paths at boundary points.
    MaDensity(Flags),
    /// Boundary total of the Fefferman measure.
    FeffTotal(Flags),
    /// Transformation law under a complex-linear map.
    TransformCheck(Flags),
    /// Tube density against the profile curvature.
    TubeCheck(Flags),
    /// Convex floating-body convergence study.
    FloatConvex(Flags),
    /// Holomorphic floating-body convergence study.
    FloatHolo(Flags),
}

#[derive(Args)]
struct Flags {
    /// JSON config; its `kind` may be omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn load(kind: ExperimentKind, flags: Flags) -> Result<ExperimentConfig, RunError> {
    let mut config = match &flags.config {
        None => ExperimentConfig::new(kind),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| RunError::Validation(vec![format!("{}: {e}", path.display())]))?;
            let mut value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| RunError::Validation(vec![format!("{}: {e}", path.display())]))?;
            let obj = value.as_object_mut().ok_or_else(|| RunError::Validation(vec!["config must be a JSON object".into()]))?;
            let name = serde_json::Value::from(kind.name());
            match obj.get("kind") {
                Some(k) if *k != name => {
                    return Err(RunError::Validation(vec![format!("config kind {k} does not match subcommand {}", kind.name())]));
                }
                _ => {
                    obj.insert("kind".into(), name);
                }
            }
            ExperimentConfig::from_json(&value.to_string()).map_err(|e| RunError::Validation(vec![e]))?
        }
    };
    if flags.seed.is_some() {
        config.seed = flags.seed;
    }
    if flags.samples.is_some() {
        config.samples = flags.samples;
    }
    if flags.out_dir.is_some() {
        config.out_dir = flags.out_dir;
    }
    Ok(config)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, flags) = match cli.command {
        Command::Constants(f) => (ExperimentKind::Constants, f),
        Command::MaDensity(f) => (ExperimentKind::MaDensity, f),
        Command::FeffTotal(f) => (ExperimentKind::FeffTotal, f),
        Command::TransformCheck(f) => (ExperimentKind::TransformCheck, f),
        Command::TubeCheck(f) => (ExperimentKind::TubeCheck, f),
        Command::FloatConvex(f) => (ExperimentKind::FloatConvex, f),
        Command::FloatHolo(f) => (ExperimentKind::FloatHolo, f),
    };
    let outcome = load(kind, flags).and_then(|c| run(&c).map(|a| (c, a)));
    match outcome {
        Ok((config, artifacts)) => {
            let dir = config.resolved().out_dir.unwrap_or_default();
            println!("{}", serde_json::to_string_pretty(&artifacts.summary["result"]).unwrap_or_default());
            eprintln!("wrote {}/{}.{{csv,json}}", dir.display(), kind.name());
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                RunError::Validation(v) => {
                    for m in v {
                        eprintln!("error: {m}");
                    }
                }
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
