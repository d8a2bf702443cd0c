use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sdgverify::checks::registry;
use sdgverify::report::{summarize, write_report};
use sdgverify::scene::Scene;
use sdgverify::{run_suite, scene_check_names, HarnessError, Scenario};

/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.
#[derive(Parser)]
#[command(name = "sdgverify", version)]
#[command(about = "Machine-checks the axioms, lemmas and theorems of exact synthetic metric \
geometry over a nilpotent-extended scalar ring, and renders 2D constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the registered property suites on seeded random configurations.
    Axioms {
        /// Ambient dimension (2..=6)
        #[arg(long, default_value_t = 2)]
        dim: usize,

        /// Trials per suite
        #[arg(long, default_value_t = 25)]
        trials: u32,

        /// RNG seed; the report is a pure function of it
        #[arg(long, default_value_t = 7)]
        seed: u64,

        /// Write the JSONL report here instead of stdout
        #[arg(long)]
        report: Option<PathBuf>,

        /// Comma-separated check ids (default: all)
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },

    /// Operations on scene files.
    Scene {
        #[command(subcommand)]
        command: SceneCommand,
    },

    /// Render a 2D scene (with its plot hints) to SVG.
    Plot {
        scene: PathBuf,

        /// Output file; stdout when omitted
        #[arg(long)]
        svg: Option<PathBuf>,
    },

    /// List the registered check ids.
    ListChecks,

    /// Evaluate one predicate against a scene.
    Check(CheckArgs),

    /// Apply one operation to scene data and print the result.
    Op(OpArgs),
}

#[derive(Subcommand)]
enum SceneCommand {
    /// Run the checks embedded in a scene file.
    Run {
        scene: PathBuf,

        /// Comma-separated subset of the scene's checks to run
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,

        /// Write the JSONL report here instead of stdout
        #[arg(long)]
        report: Option<PathBuf>,

        /// Seed recorded in the report (scene checks are deterministic)
        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Also write a per-sample CSV for the envelope checks
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Predicate: collinear | aligned | triangle-equality | touches
    which: String,

    #[arg(long)]
    scene: PathBuf,

    /// Three point names, for the collinearity predicates
    #[arg(long, num_args = 3)]
    triple: Vec<String>,

    /// Two figure names, for `touches`
    #[arg(long, num_args = 2)]
    figures: Vec<String>,

    /// The candidate touching point, for `touches`
    #[arg(long)]
    at: Option<String>,
}

#[derive(Args)]
struct OpArgs {
    /// Operation: extrapolate | interpolate | dist
    which: String,

    #[arg(long)]
    scene: PathBuf,

    /// Point names consumed by the operation
    points: Vec<String>,

    /// Distance parameter (rational or expression, e.g. 5/2)
    #[arg(long)]
    s: Option<String>,
}

fn main() -> ExitCode {
    if let Ok(cap) = std::env::var("SDGVERIFY_SQRT_DEPTH") {
        match cap.parse::<u32>() {
            Ok(value) if value >= 1 => sdg_core::scalar::set_sqrt_depth_cap(value),
            _ => {
                eprintln!("SDGVERIFY_SQRT_DEPTH must be a positive integer, got {cap:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Axioms {
            dim,
            trials,
            seed,
            report,
            checks,
        } => {
            if !(2..=6).contains(&dim) {
                return Err(HarnessError::Kernel(format!(
                    "generated suites need a dimension between 2 and 6, got {dim}"
                )));
            }
            let mut scenario = Scenario {
                name: "axioms".to_string(),
                dim,
                seed,
                trials,
                checks,
                scene: None,
            };
            let records = run_suite(&mut scenario)?;
            let summary = summarize(&records, seed);
            emit_report(report.as_deref(), &records, &summary)?;
            Ok(summary.ok)
        }
        Command::Scene {
            command: SceneCommand::Run {
                scene,
                checks,
                report,
                seed,
                csv,
            },
        } => {
            let parsed = Scene::load(&scene)?;
            let mut scenario = Scenario {
                name: scene.display().to_string(),
                dim: parsed.dim,
                seed,
                trials: 0,
                checks,
                scene: Some(parsed),
            };
            let records = run_suite(&mut scenario)?;
            if let Some(csv_path) = csv {
                let dump = sdgverify::huygens_sample_csv(
                    scenario.scene.as_mut().expect("scene scenario"),
                )?;
                std::fs::write(csv_path, dump)?;
            }
            let summary = summarize(&records, seed);
            emit_report(report.as_deref(), &records, &summary)?;
            Ok(summary.ok)
        }
        Command::Plot { scene, svg } => {
            let parsed = Scene::load(&scene)?;
            let rendered = sdgverify::svg::render(&parsed)?;
            match svg {
                Some(path) => std::fs::write(path, rendered)?,
                None => print!("{rendered}"),
            }
            Ok(true)
        }
        Command::ListChecks => {
            for def in registry() {
                println!("{:<34} {}", def.id, def.summary);
            }
            println!();
            println!("scene checks: {}", scene_check_names().join(", "));
            Ok(true)
        }
        Command::Check(args) => run_check(args),
        Command::Op(args) => run_op(args),
    }
}

fn emit_report(
    path: Option<&std::path::Path>,
    records: &[sdgverify::report::VerificationRecord],
    summary: &sdgverify::report::Summary,
) -> Result<(), HarnessError> {
    match path {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            write_report(std::io::BufWriter::new(file), records, summary)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_report(&mut lock, records, summary)?;
            lock.flush()?;
        }
    }
    Ok(())
}

fn run_check(args: CheckArgs) -> Result<bool, HarnessError> {
    let mut scene = Scene::load(&args.scene)?;
    let verdict = match args.which.as_str() {
        "collinear" | "aligned" | "triangle-equality" => {
            if args.triple.len() != 3 {
                return Err(HarnessError::BadCheckArgs {
                    check: args.which.clone(),
                    what: "--triple with three point names",
                });
            }
            let get = |name: &String| {
                scene.points.get(name).cloned().ok_or_else(|| {
                    HarnessError::BadCheckArgs {
                        check: args.which.clone(),
                        what: "declared point names",
                    }
                })
            };
            let (a, b, c) = (get(&args.triple[0])?, get(&args.triple[1])?, get(&args.triple[2])?);
            let result = match args.which.as_str() {
                "collinear" => sdg_core::synthetic::collinear(&a, &b, &c),
                "aligned" => sdg_core::synthetic::aligned(&a, &b, &c),
                _ => sdg_core::synthetic::triangle_equality(&a, &b, &c),
            };
            result.map_err(|e| HarnessError::Kernel(e.to_string()))?
        }
        "touches" => {
            if args.figures.len() != 2 {
                return Err(HarnessError::BadCheckArgs {
                    check: args.which.clone(),
                    what: "--figures with two figure names",
                });
            }
            let lookup = |name: &String| {
                scene
                    .spheres
                    .get(name)
                    .cloned()
                    .map(sdg_core::geometry::Figure::from)
                    .or_else(|| {
                        scene
                            .hyperplanes
                            .get(name)
                            .cloned()
                            .map(sdg_core::geometry::Figure::from)
                    })
                    .ok_or_else(|| HarnessError::BadCheckArgs {
                        check: args.which.clone(),
                        what: "declared figure names",
                    })
            };
            let fig_a = lookup(&args.figures[0])?;
            let fig_b = lookup(&args.figures[1])?;
            let at_name = args.at.as_ref().ok_or_else(|| HarnessError::BadCheckArgs {
                check: args.which.clone(),
                what: "--at with a point name",
            })?;
            let at = scene.points.get(at_name).cloned().ok_or_else(|| {
                HarnessError::BadCheckArgs {
                    check: args.which.clone(),
                    what: "a declared --at point",
                }
            })?;
            sdg_core::geometry::touches(&fig_a, &fig_b, &at, &mut scene.table)
                .map_err(|e| HarnessError::Kernel(e.to_string()))?
        }
        other => return Err(HarnessError::UnknownCheck(other.to_string())),
    };
    println!("{verdict}");
    Ok(verdict)
}

fn run_op(args: OpArgs) -> Result<bool, HarnessError> {
    let scene = Scene::load(&args.scene)?;
    let get = |name: &String| {
        scene
            .points
            .get(name)
            .cloned()
            .ok_or_else(|| HarnessError::BadCheckArgs {
                check: args.which.clone(),
                what: "declared point names",
            })
    };
    let parse_s = || -> Result<sdg_core::nilpotent::NilElement, HarnessError> {
        let raw = args.s.as_ref().ok_or_else(|| HarnessError::BadCheckArgs {
            check: args.which.clone(),
            what: "--s with a distance",
        })?;
        let value = serde_json::Value::String(raw.clone());
        Ok(scene.parse_expr(&value, "$.s")?)
    };
    match args.which.as_str() {
        "extrapolate" | "interpolate" => {
            if args.points.len() != 2 {
                return Err(HarnessError::BadCheckArgs {
                    check: args.which.clone(),
                    what: "two point names",
                });
            }
            let a = get(&args.points[0])?;
            let b = get(&args.points[1])?;
            let s = parse_s()?;
            let result = if args.which == "extrapolate" {
                sdg_core::synthetic::extrapolate(&a, &b, &s)
            } else {
                sdg_core::synthetic::interpolate(&a, &b, &s)
            }
            .map_err(|e| HarnessError::Kernel(e.to_string()))?;
            println!("exact:   {result:?}");
            let decimals: Vec<String> = result
                .coords()
                .iter()
                .map(|c| c.pure_part().to_decimal(6))
                .collect();
            println!("decimal: ({})", decimals.join(", "));
            Ok(true)
        }
        "dist" => {
            if args.points.len() != 2 {
                return Err(HarnessError::BadCheckArgs {
                    check: args.which.clone(),
                    what: "two point names",
                });
            }
            let a = get(&args.points[0])?;
            let b = get(&args.points[1])?;
            let d = sdg_core::geometry::dist(&a, &b)
                .map_err(|e| HarnessError::Kernel(e.to_string()))?;
            println!("exact:   {d}");
            println!("decimal: {}", d.pure_part().to_decimal(6));
            Ok(true)
        }
        other => Err(HarnessError::UnknownCheck(other.to_string())),
    }
}
