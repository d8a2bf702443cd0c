//! Verification harness for the exact synthetic-metric kernel: registered
//! property suites over seeded random configurations, scene files with
//! embedded checks, deterministic JSONL reports and SVG plots.

pub mod checks;
pub mod generate;
pub mod report;
pub mod scene;
pub mod svg;

use std::time::Instant;

use sdg_core::geometry::{touches, Figure, MonadRegion};
use sdg_core::nilpotent::NilElement;
use sdg_core::synthetic::{aligned, collinear, triangle_equality};

use checks::CheckContext;
use report::{Recorder, VerificationRecord};
use scene::{Scene, SceneCheck};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown check {0:?} (see `list-checks`)")]
    UnknownCheck(String),

    #[error("configuration generation exhausted retries for: {0}")]
    GenerationExhausted(&'static str),

    #[error("{0}")]
    Scene(#[from] scene::SceneError),

    #[error("kernel error: {0}")]
    Kernel(String),

    #[error("scene check {check:?} needs {what}")]
    BadCheckArgs { check: String, what: &'static str },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One verification run: which suites, at which dimension, how many trials,
/// and optionally an explicit scene whose embedded checks are executed.
pub struct Scenario {
    pub name: String,
    pub dim: usize,
    pub seed: u64,
    pub trials: u32,
    /// Check ids to run; empty means all registered suites (or all scene
    /// checks when a scene is present).
    pub checks: Vec<String>,
    pub scene: Option<Scene>,
}

/// Execute a scenario. Deterministic given the seed; record order is stable
/// (registry order, then scene order).
pub fn run_suite(scenario: &mut Scenario) -> Result<Vec<VerificationRecord>, HarnessError> {
    let mut records = Vec::new();
    if let Some(scene) = scenario.scene.as_mut() {
        let wanted = scenario.checks.clone();
        let selected: Vec<SceneCheck> = scene
            .checks
            .iter()
            .filter(|c| wanted.is_empty() || wanted.iter().any(|w| w == &c.check))
            .cloned()
            .collect();
        for (index, check) in selected.iter().enumerate() {
            records.push(run_scene_check(scene, check, index, scenario.seed)?);
        }
        return Ok(records);
    }

    let ctx = CheckContext {
        dim: scenario.dim,
        trials: scenario.trials,
        seed: scenario.seed,
    };
    let selected: Vec<&checks::CheckDef> = if scenario.checks.is_empty() {
        checks::registry().iter().collect()
    } else {
        scenario
            .checks
            .iter()
            .map(|id| {
                checks::find_check(id).ok_or_else(|| HarnessError::UnknownCheck(id.clone()))
            })
            .collect::<Result<_, _>>()?
    };
    for def in selected {
        records.extend((def.run)(&ctx));
    }
    Ok(records)
}

fn scene_point<'a>(
    scene: &'a Scene,
    check: &SceneCheck,
    name: &str,
) -> Result<&'a sdg_core::geometry::Point, HarnessError> {
    scene.points.get(name).ok_or_else(|| HarnessError::BadCheckArgs {
        check: check.check.clone(),
        what: "a declared point name",
    })
}

fn scene_figure(scene: &Scene, check: &SceneCheck, name: &str) -> Result<Figure, HarnessError> {
    if let Some(s) = scene.spheres.get(name) {
        return Ok(Figure::from(s.clone()));
    }
    if let Some(h) = scene.hyperplanes.get(name) {
        return Ok(Figure::from(h.clone()));
    }
    Err(HarnessError::BadCheckArgs {
        check: check.check.clone(),
        what: "a declared sphere or hyperplane name",
    })
}

fn three_points<'a>(
    scene: &'a Scene,
    check: &SceneCheck,
) -> Result<
    (
        &'a sdg_core::geometry::Point,
        &'a sdg_core::geometry::Point,
        &'a sdg_core::geometry::Point,
    ),
    HarnessError,
> {
    if check.points.len() != 3 {
        return Err(HarnessError::BadCheckArgs {
            check: check.check.clone(),
            what: "exactly three point names",
        });
    }
    Ok((
        scene_point(scene, check, &check.points[0])?,
        scene_point(scene, check, &check.points[1])?,
        scene_point(scene, check, &check.points[2])?,
    ))
}

fn parse_arg_expr(
    scene: &Scene,
    check: &SceneCheck,
    key: &str,
) -> Result<NilElement, HarnessError> {
    let raw = check
        .args
        .get(key)
        .ok_or_else(|| HarnessError::BadCheckArgs {
            check: check.check.clone(),
            what: "a distance argument",
        })?;
    let value = serde_json::Value::String(raw.clone());
    Ok(scene.parse_expr(&value, &format!("$.checks.{key}"))?)
}

/// Run one scene-embedded check; honors the check's `expect` flag, so fixture
/// scenes can demand failure.
fn run_scene_check(
    scene: &mut Scene,
    check: &SceneCheck,
    index: usize,
    seed: u64,
) -> Result<VerificationRecord, HarnessError> {
    let started = Instant::now();
    let outcome: Result<bool, String> = match check.check.as_str() {
        "triangle-equality" => {
            let (a, b, c) = three_points(scene, check)?;
            triangle_equality(a, b, c).map_err(|e| e.to_string())
        }
        "collinear" => {
            let (a, b, c) = three_points(scene, check)?;
            collinear(a, b, c).map_err(|e| e.to_string())
        }
        "aligned" => {
            let (a, b, c) = three_points(scene, check)?;
            aligned(a, b, c).map_err(|e| e.to_string())
        }
        "touches" => {
            if check.figures.len() != 2 {
                return Err(HarnessError::BadCheckArgs {
                    check: check.check.clone(),
                    what: "exactly two figure names",
                });
            }
            let fig_a = scene_figure(scene, check, &check.figures[0])?;
            let fig_b = scene_figure(scene, check, &check.figures[1])?;
            let at_name = check.at.as_ref().ok_or_else(|| HarnessError::BadCheckArgs {
                check: check.check.clone(),
                what: "an `at` point",
            })?;
            let at = scene.points.get(at_name).cloned().ok_or_else(|| {
                HarnessError::BadCheckArgs {
                    check: check.check.clone(),
                    what: "a declared `at` point",
                }
            })?;
            touches(&fig_a, &fig_b, &at, &mut scene.table).map_err(|e| e.to_string())
        }
        "focused" => {
            if check.figures.len() != 1 {
                return Err(HarnessError::BadCheckArgs {
                    check: check.check.clone(),
                    what: "exactly one figure name",
                });
            }
            let fig = scene_figure(scene, check, &check.figures[0])?;
            let at_name = check.at.as_ref().ok_or_else(|| HarnessError::BadCheckArgs {
                check: check.check.clone(),
                what: "an `at` point",
            })?;
            let at = scene.points.get(at_name).cloned().ok_or_else(|| {
                HarnessError::BadCheckArgs {
                    check: check.check.clone(),
                    what: "a declared `at` point",
                }
            })?;
            sdg_core::geometry::is_focused(MonadRegion::OnFigure(&fig), &at, &mut scene.table)
                .map_err(|e| e.to_string())
        }
        "huygens" => {
            let center_name =
                check
                    .args
                    .get("center")
                    .ok_or_else(|| HarnessError::BadCheckArgs {
                        check: check.check.clone(),
                        what: "a `center` point name",
                    })?;
            let center = scene.points.get(center_name).cloned().ok_or_else(|| {
                HarnessError::BadCheckArgs {
                    check: check.check.clone(),
                    what: "a declared `center` point",
                }
            })?;
            let r = parse_arg_expr(scene, check, "r")?;
            let s = parse_arg_expr(scene, check, "s")?;
            let samples: usize = check
                .args
                .get("samples")
                .and_then(|v| v.parse().ok())
                .unwrap_or(12);
            sdg_core::contact::sphere_envelope(&center, &r, &s, samples, &mut scene.table)
                .map(|record| record.all_pass())
                .map_err(|e| e.to_string())
        }
        other => return Err(HarnessError::UnknownCheck(other.to_string())),
    };

    let case = format!("scene-{index:02}");
    let mut rec = Recorder::new(scene_check_id(&check.check), seed);
    if check.expect {
        rec.expect_pass(&case, index as u64, started, outcome, || {
            format!("scene check {:?}", check.check)
        });
    } else {
        rec.negative_control(&case, index as u64, started, outcome, || {
            format!("scene check {:?} expected to fail", check.check)
        });
    }
    Ok(rec.records.into_iter().next().expect("one record"))
}

/// Per-sample CSV dump for the envelope checks of a scene: one row per
/// sampled point and phase, `check,sample,phase,status`.
pub fn huygens_sample_csv(scene: &mut Scene) -> Result<String, HarnessError> {
    let mut out = String::from("check,sample,phase,status\n");
    let checks = scene.checks.clone();
    for (index, check) in checks.iter().enumerate() {
        if check.check != "huygens" {
            continue;
        }
        let center_name = check
            .args
            .get("center")
            .ok_or_else(|| HarnessError::BadCheckArgs {
                check: check.check.clone(),
                what: "a `center` point name",
            })?;
        let center = scene.points.get(center_name).cloned().ok_or_else(|| {
            HarnessError::BadCheckArgs {
                check: check.check.clone(),
                what: "a declared `center` point",
            }
        })?;
        let r = parse_arg_expr(scene, check, "r")?;
        let s = parse_arg_expr(scene, check, "s")?;
        let samples: usize = check
            .args
            .get("samples")
            .and_then(|v| v.parse().ok())
            .unwrap_or(12);
        let record =
            sdg_core::contact::sphere_envelope(&center, &r, &s, samples, &mut scene.table)
                .map_err(|e| HarnessError::Kernel(e.to_string()))?;
        for (k, ok) in record.forward.iter().enumerate() {
            out.push_str(&format!(
                "huygens-{index:02},{k},forward,{}\n",
                if *ok { "pass" } else { "fail" }
            ));
        }
        for (k, ok) in record.converse.iter().enumerate() {
            out.push_str(&format!(
                "huygens-{index:02},{k},converse,{}\n",
                if *ok { "pass" } else { "fail" }
            ));
        }
    }
    Ok(out)
}

fn scene_check_id(name: &str) -> &'static str {
    // stable ids for the scene-facing checks
    match name {
        "triangle-equality" => "scene-triangle-equality",
        "collinear" => "scene-collinear",
        "aligned" => "scene-aligned",
        "touches" => "scene-touches",
        "focused" => "scene-focused",
        "huygens" => "scene-huygens",
        _ => "scene-check",
    }
}

/// The scene-facing check names accepted in scene files and `--checks`.
pub fn scene_check_names() -> &'static [&'static str] {
    &[
        "triangle-equality",
        "collinear",
        "aligned",
        "touches",
        "focused",
        "huygens",
    ]
}
