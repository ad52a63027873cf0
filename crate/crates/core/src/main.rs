use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use belief_fusion::algebra::read_mass_file;
use belief_fusion::harness::{self, synthetic, ExperimentConfig, DEMOS};
use belief_fusion::rules::{combine, CombineOptions, RedistributionWeights, Rule, ShapingFunction};
use belief_fusion::texture::DEFAULT_LEVELS;
use belief_fusion::{decide, Criterion, Error, Result};

#[derive(Parser)]
#[command(
    name = "belief-fusion",
    version,
    about = "Belief-function fusion and evidential texture classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a worked example and compare it with its stored tables.
    Demo {
        /// One of the demo names, or `all`.
        name: String,
    },
    /// Combine mass functions read from JSON files and decide.
    Fuse {
        rule: Rule,
        #[arg(required = true)]
        masses: Vec<PathBuf>,
        #[arg(long, default_value = "betP")]
        criterion: Criterion,
        /// Exponent of the x^a shaping function used by pcr6_f and pcr6_g.
        #[arg(long, default_value_t = 1.0)]
        exponent: f64,
        /// Redistribution weights for `weighted`, in the mass-function JSON format.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Compute texture features for every label_id.pgm file in a directory.
    ExtractFeatures {
        dir: PathBuf,
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_LEVELS)]
        levels: usize,
    },
    /// Train, classify and write a confusion matrix as configured in a JSON file.
    Run {
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        rule: Option<Rule>,
        #[arg(long)]
        criterion: Option<Criterion>,
    },
    /// Write a synthetic labeled patch set as PGM files.
    Synth {
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = SynthKind::Separable)]
        kind: SynthKind,
        #[arg(long, default_value_t = 20)]
        per_class: usize,
        #[arg(long, default_value_t = 32)]
        size: usize,
        #[arg(long, default_value_t = DEFAULT_LEVELS)]
        levels: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthKind {
    Separable,
    Overlapping,
}

fn demo(name: &str) -> Result<bool> {
    let names: Vec<&str> = if name == "all" { DEMOS.to_vec() } else { vec![name] };
    let mut ok = true;
    for n in names {
        let report = harness::run_demo(n)?;
        print!("{report}");
        ok &= report.passed();
    }
    Ok(ok)
}

fn fuse(rule: Rule, paths: &[PathBuf], criterion: Criterion, exponent: f64, weights: Option<&PathBuf>) -> Result<()> {
    let sources = paths.iter().map(|p| read_mass_file(p)).collect::<Result<Vec<_>>>()?;
    let mut options = CombineOptions::default();
    if matches!(rule, Rule::Pcr6F | Rule::Pcr6G) {
        options.shaper = Some(ShapingFunction::power(exponent)?);
    }
    if let Some(path) = weights {
        let w = read_mass_file(path)?;
        options.weights = Some(RedistributionWeights::new(
            w.frame(),
            w.focal_elements().iter().copied(),
        )?);
    }
    let combination = combine(rule, &sources, &options)?;
    let frame = combination.mass.frame().clone();
    let decision = match decide(&combination.mass, criterion) {
        Ok(d) => json!({
            "criterion": d.criterion,
            "winner": frame.label(d.winner),
            "score": d.score,
            "ties": d.ties.iter().map(|&i| frame.label(i)).collect::<Vec<_>>(),
        }),
        Err(Error::TotalConflict) => json!(null),
        Err(e) => return Err(e),
    };
    let out = json!({
        "rule": rule,
        "mass": combination.mass,
        "conflict": combination.conflict,
        "decision": decision,
    });
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{}", serde_json::to_string_pretty(&out)?).map_err(|e| Error::Io(format!("stdout: {e}")))
}

fn extract(dir: &Path, out: &Path, levels: usize) -> Result<()> {
    let extraction = harness::extract_features(dir, levels)?;
    let file = File::create(out).map_err(|e| Error::Io(format!("{}: {e}", out.display())))?;
    harness::write_feature_csv(&extraction.rows, file)?;
    println!(
        "{} patches written to {}, {} skipped",
        extraction.rows.len(),
        out.display(),
        extraction.skipped.len()
    );
    Ok(())
}

fn run(path: &Path, seed: Option<u64>, rule: Option<Rule>, criterion: Option<Criterion>) -> Result<()> {
    let mut config = ExperimentConfig::from_path(path)?;
    config.seed = seed.unwrap_or(config.seed);
    config.rule = rule.unwrap_or(config.rule);
    config.criterion = criterion.unwrap_or(config.criterion);
    let outcome = harness::run_experiment(&config)?;
    let s = &outcome.summary;
    println!(
        "{} model, {} rule, max {} decision, {} test samples",
        match s.model {
            harness::ModelKind::Knn => "k-NN",
            harness::ModelKind::Histogram => "histogram",
        },
        s.rule,
        s.criterion,
        s.test_size
    );
    for c in &s.per_class {
        let acc = c.accuracy.map_or("n/a".to_string(), |a| format!("{a:.2}%"));
        println!(
            "  {:<16} {acc:>8}  ({} of {}, {} rejected)",
            c.class, c.correct, c.test_count, c.rejected
        );
    }
    let acc = s.accuracy.map_or("n/a".to_string(), |a| format!("{a:.2}%"));
    println!("  {:<16} {acc:>8}", "overall");
    println!(
        "wrote {} and {}",
        outcome.confusion_path.display(),
        outcome.summary_path.display()
    );
    Ok(())
}

fn synth(dir: &Path, kind: SynthKind, per_class: usize, size: usize, levels: usize, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let patches = match kind {
        SynthKind::Separable => synthetic::separable_patches(&mut rng, per_class, size, levels)?,
        SynthKind::Overlapping => synthetic::overlapping_patches(&mut rng, per_class, size, levels)?,
    };
    synthetic::write_patch_dir(dir, &patches)?;
    println!("{} patches written to {}", patches.len(), dir.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Demo { name } => demo(name),
        Command::Fuse {
            rule,
            masses,
            criterion,
            exponent,
            weights,
        } => fuse(*rule, masses, *criterion, *exponent, weights.as_ref()).map(|_| true),
        Command::ExtractFeatures { dir, out, levels } => extract(dir, out, *levels).map(|_| true),
        Command::Run {
            config,
            seed,
            rule,
            criterion,
        } => run(config, *seed, *rule, *criterion).map(|_| true),
        Command::Synth {
            dir,
            kind,
            per_class,
            size,
            levels,
            seed,
        } => synth(dir, *kind, *per_class, *size, *levels, *seed).map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(2)
        }
    }
}
