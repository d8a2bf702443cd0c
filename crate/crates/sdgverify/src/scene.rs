//! Scene files: named points, spheres and hyperplanes over declared
//! generator batches, plus embedded check requests and plot hints.
//!
//! Coordinate expressions: rational literals (`"p/q"`, `"3"`, or a JSON
//! integer), generator references `{"gen": ["eps", 0]}`, and the operators
//! `{"add": [...]}`, `{"mul": [...]}`, `{"neg": e}`, `{"sqrt": e}`. Parse
//! errors carry the JSON path of the offending node.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use sdg_core::geometry::{Hyperplane, Point, Sphere};
use sdg_core::nilpotent::{BatchTable, NilElement};
use sdg_core::scalar::Scalar;

#[derive(Debug, Clone, thiserror::Error)]
#[error("scene error at {path}: {message}")]
pub struct SceneError {
    pub path: String,
    pub message: String,
}

fn err<T>(path: &str, message: impl Into<String>) -> Result<T, SceneError> {
    Err(SceneError {
        path: path.to_string(),
        message: message.into(),
    })
}

/// A check requested by a scene file. `expect` defaults to `true`; fixture
/// scenes with `expect: false` exercise the failure path deliberately.
#[derive(Debug, Clone)]
pub struct SceneCheck {
    pub check: String,
    pub points: Vec<String>,
    pub figures: Vec<String>,
    pub at: Option<String>,
    pub args: BTreeMap<String, String>,
    pub expect: bool,
}

/// Plot hints: extra strokes on top of the declared figures.
#[derive(Debug, Clone, Default)]
pub struct PlotHints {
    pub segments: Vec<(String, String)>,
    pub labels: Vec<(String, String)>,
    pub marks: Vec<String>,
    pub wavefronts: Vec<WavefrontHint>,
}

#[derive(Debug, Clone)]
pub struct WavefrontHint {
    pub center: String,
    pub radius: NilElement,
    pub steps: Vec<NilElement>,
    pub samples: usize,
}

pub struct Scene {
    pub dim: usize,
    pub table: BatchTable,
    pub batches: BTreeMap<String, Vec<NilElement>>,
    pub points: BTreeMap<String, Point>,
    pub spheres: BTreeMap<String, Sphere>,
    pub hyperplanes: BTreeMap<String, Hyperplane>,
    pub checks: Vec<SceneCheck>,
    pub plot: PlotHints,
}

impl Scene {
    pub fn load(path: &Path) -> Result<Scene, SceneError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SceneError {
                path: "$".to_string(),
                message: format!("cannot read {}: {e}", path.display()),
            })?;
        let value: Value = serde_json::from_str(&text).map_err(|e| SceneError {
            path: "$".to_string(),
            message: format!("invalid JSON: {e}"),
        })?;
        Scene::parse(&value)
    }

    pub fn parse(root: &Value) -> Result<Scene, SceneError> {
        let obj = root
            .as_object()
            .ok_or_else(|| SceneError {
                path: "$".to_string(),
                message: "scene must be a JSON object".to_string(),
            })?;
        let dim = obj
            .get("dim")
            .and_then(Value::as_u64)
            .map(|d| d as usize)
            .unwrap_or(2);
        if !(1..=6).contains(&dim) {
            return err("$.dim", "dimension must be between 1 and 6");
        }

        let mut table = BatchTable::new();
        let mut batches = BTreeMap::new();
        if let Some(list) = obj.get("batches") {
            let list = list
                .as_array()
                .ok_or_else(|| SceneError {
                    path: "$.batches".to_string(),
                    message: "must be an array".to_string(),
                })?;
            for (i, entry) in list.iter().enumerate() {
                let path = format!("$.batches[{i}]");
                let entry = entry
                    .as_object()
                    .ok_or_else(|| SceneError {
                        path: path.clone(),
                        message: "must be an object with name and size".to_string(),
                    })?;
                let name = entry
                    .get("name")
                    .and_then(Value::as_str)
                    .ok_or_else(|| SceneError {
                        path: format!("{path}.name"),
                        message: "missing batch name".to_string(),
                    })?;
                let size = entry
                    .get("size")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| SceneError {
                        path: format!("{path}.size"),
                        message: "missing batch size".to_string(),
                    })? as usize;
                if batches.contains_key(name) {
                    return err(&path, format!("duplicate batch name {name:?}"));
                }
                let (_, gens) = table.fresh_batch_named(size, Some(name));
                batches.insert(name.to_string(), gens);
            }
        }

        let mut scene = Scene {
            dim,
            table,
            batches,
            points: BTreeMap::new(),
            spheres: BTreeMap::new(),
            hyperplanes: BTreeMap::new(),
            checks: Vec::new(),
            plot: PlotHints::default(),
        };

        if let Some(points) = obj.get("points") {
            let points = points.as_object().ok_or_else(|| SceneError {
                path: "$.points".to_string(),
                message: "must be an object".to_string(),
            })?;
            for (name, coords) in points {
                let path = format!("$.points.{name}");
                let point = scene.parse_point(coords, &path)?;
                scene.points.insert(name.clone(), point);
            }
        }

        if let Some(spheres) = obj.get("spheres") {
            let spheres = spheres.as_object().ok_or_else(|| SceneError {
                path: "$.spheres".to_string(),
                message: "must be an object".to_string(),
            })?;
            for (name, body) in spheres {
                let path = format!("$.spheres.{name}");
                let body = body.as_object().ok_or_else(|| SceneError {
                    path: path.clone(),
                    message: "must be an object with center and radius".to_string(),
                })?;
                let center = scene.resolve_point(
                    body.get("center").unwrap_or(&Value::Null),
                    &format!("{path}.center"),
                )?;
                let radius = scene.parse_expr(
                    body.get("radius").unwrap_or(&Value::Null),
                    &format!("{path}.radius"),
                )?;
                let sphere = Sphere::new(center, radius)
                    .map_err(|e| SceneError {
                        path: path.clone(),
                        message: e.to_string(),
                    })?;
                scene.spheres.insert(name.clone(), sphere);
            }
        }

        if let Some(planes) = obj.get("hyperplanes") {
            let planes = planes.as_object().ok_or_else(|| SceneError {
                path: "$.hyperplanes".to_string(),
                message: "must be an object".to_string(),
            })?;
            for (name, body) in planes {
                let path = format!("$.hyperplanes.{name}");
                let body = body.as_object().ok_or_else(|| SceneError {
                    path: path.clone(),
                    message: "must be an object with basepoint and normal".to_string(),
                })?;
                let basepoint = scene.resolve_point(
                    body.get("basepoint").unwrap_or(&Value::Null),
                    &format!("{path}.basepoint"),
                )?;
                let normal = scene.resolve_point(
                    body.get("normal").unwrap_or(&Value::Null),
                    &format!("{path}.normal"),
                )?;
                let plane = Hyperplane::new(basepoint, normal).map_err(|e| SceneError {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
                scene.hyperplanes.insert(name.clone(), plane);
            }
        }

        if let Some(checks) = obj.get("checks") {
            let list = checks.as_array().ok_or_else(|| SceneError {
                path: "$.checks".to_string(),
                message: "must be an array".to_string(),
            })?;
            for (i, entry) in list.iter().enumerate() {
                let path = format!("$.checks[{i}]");
                scene.checks.push(parse_check(entry, &path)?);
            }
        }

        if let Some(plot) = obj.get("plot") {
            let path = "$.plot";
            let plot_obj = plot.as_object().ok_or_else(|| SceneError {
                path: path.to_string(),
                message: "must be an object".to_string(),
            })?;
            if let Some(segments) = plot_obj.get("segments").and_then(Value::as_array) {
                for (i, seg) in segments.iter().enumerate() {
                    let pair = seg.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                        SceneError {
                            path: format!("{path}.segments[{i}]"),
                            message: "must be a pair of point names".to_string(),
                        }
                    })?;
                    let a = string_at(&pair[0], &format!("{path}.segments[{i}][0]"))?;
                    let b = string_at(&pair[1], &format!("{path}.segments[{i}][1]"))?;
                    scene.plot.segments.push((a, b));
                }
            }
            if let Some(labels) = plot_obj.get("labels").and_then(Value::as_array) {
                for (i, label) in labels.iter().enumerate() {
                    let lp = format!("{path}.labels[{i}]");
                    let obj = label.as_object().ok_or_else(|| SceneError {
                        path: lp.clone(),
                        message: "must be an object with at and text".to_string(),
                    })?;
                    let at = string_at(obj.get("at").unwrap_or(&Value::Null), &format!("{lp}.at"))?;
                    let text =
                        string_at(obj.get("text").unwrap_or(&Value::Null), &format!("{lp}.text"))?;
                    scene.plot.labels.push((at, text));
                }
            }
            if let Some(marks) = plot_obj.get("marks").and_then(Value::as_array) {
                for (i, mark) in marks.iter().enumerate() {
                    scene
                        .plot
                        .marks
                        .push(string_at(mark, &format!("{path}.marks[{i}]"))?);
                }
            }
            if let Some(fronts) = plot_obj.get("wavefronts").and_then(Value::as_array) {
                for (i, front) in fronts.iter().enumerate() {
                    let fp = format!("{path}.wavefronts[{i}]");
                    let obj = front.as_object().ok_or_else(|| SceneError {
                        path: fp.clone(),
                        message: "must be an object".to_string(),
                    })?;
                    let center =
                        string_at(obj.get("center").unwrap_or(&Value::Null), &format!("{fp}.center"))?;
                    let radius = scene.parse_expr(
                        obj.get("radius").unwrap_or(&Value::Null),
                        &format!("{fp}.radius"),
                    )?;
                    let mut steps = Vec::new();
                    let steps_val = obj.get("steps").and_then(Value::as_array).ok_or_else(|| {
                        SceneError {
                            path: format!("{fp}.steps"),
                            message: "must be an array of step distances".to_string(),
                        }
                    })?;
                    for (j, step) in steps_val.iter().enumerate() {
                        steps.push(scene.parse_expr(step, &format!("{fp}.steps[{j}]"))?);
                    }
                    let samples = obj
                        .get("samples")
                        .and_then(Value::as_u64)
                        .unwrap_or(12) as usize;
                    scene.plot.wavefronts.push(WavefrontHint {
                        center,
                        radius,
                        steps,
                        samples,
                    });
                }
            }
        }

        Ok(scene)
    }

    /// A point literal (array of expressions) at the scene dimension.
    fn parse_point(&self, value: &Value, path: &str) -> Result<Point, SceneError> {
        let coords = value.as_array().ok_or_else(|| SceneError {
            path: path.to_string(),
            message: "point must be an array of coordinate expressions".to_string(),
        })?;
        if coords.len() != self.dim {
            return err(
                path,
                format!("expected {} coordinates, found {}", self.dim, coords.len()),
            );
        }
        let parsed = coords
            .iter()
            .enumerate()
            .map(|(i, c)| self.parse_expr(c, &format!("{path}[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Point::new(parsed))
    }

    /// Either a reference to a named point or an inline point literal.
    fn resolve_point(&self, value: &Value, path: &str) -> Result<Point, SceneError> {
        match value {
            Value::String(name) => self
                .points
                .get(name)
                .cloned()
                .ok_or_else(|| SceneError {
                    path: path.to_string(),
                    message: format!("unknown point {name:?}"),
                }),
            Value::Array(_) => self.parse_point(value, path),
            _ => err(path, "expected a point name or a coordinate array"),
        }
    }

    pub fn parse_expr(&self, value: &Value, path: &str) -> Result<NilElement, SceneError> {
        match value {
            Value::Number(n) => {
                let i = n.as_i64().ok_or_else(|| SceneError {
                    path: path.to_string(),
                    message: "numeric literals must be integers; use \"p/q\" for rationals"
                        .to_string(),
                })?;
                Ok(NilElement::from_int(i))
            }
            Value::String(text) => parse_rational(text)
                .map(|q| NilElement::from_scalar(Scalar::from_big_rational(q)))
                .ok_or_else(|| SceneError {
                    path: path.to_string(),
                    message: format!("not a rational literal: {text:?}"),
                }),
            Value::Object(obj) => {
                if obj.len() != 1 {
                    return err(path, "expression object must have exactly one operator key");
                }
                let (op, body) = obj.iter().next().expect("length checked");
                match op.as_str() {
                    "add" | "mul" => {
                        let items = body.as_array().ok_or_else(|| SceneError {
                            path: format!("{path}.{op}"),
                            message: "operands must be an array".to_string(),
                        })?;
                        let mut acc = if op == "add" {
                            NilElement::zero()
                        } else {
                            NilElement::one()
                        };
                        for (i, item) in items.iter().enumerate() {
                            let operand = self.parse_expr(item, &format!("{path}.{op}[{i}]"))?;
                            acc = if op == "add" {
                                acc + operand
                            } else {
                                acc * operand
                            };
                        }
                        Ok(acc)
                    }
                    "neg" => Ok(-self.parse_expr(body, &format!("{path}.neg"))?),
                    "sqrt" => {
                        let operand = self.parse_expr(body, &format!("{path}.sqrt"))?;
                        operand.sqrt().map_err(|e| SceneError {
                            path: format!("{path}.sqrt"),
                            message: e.to_string(),
                        })
                    }
                    "gen" => {
                        let pair = body.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                            SceneError {
                                path: format!("{path}.gen"),
                                message: "expected [batch-name, index]".to_string(),
                            }
                        })?;
                        let name = pair[0].as_str().ok_or_else(|| SceneError {
                            path: format!("{path}.gen[0]"),
                            message: "batch name must be a string".to_string(),
                        })?;
                        let index = pair[1].as_u64().ok_or_else(|| SceneError {
                            path: format!("{path}.gen[1]"),
                            message: "generator index must be an integer".to_string(),
                        })? as usize;
                        let gens = self.batches.get(name).ok_or_else(|| SceneError {
                            path: format!("{path}.gen[0]"),
                            message: format!("unknown batch {name:?}"),
                        })?;
                        gens.get(index).cloned().ok_or_else(|| SceneError {
                            path: format!("{path}.gen[1]"),
                            message: format!(
                                "batch {name:?} has {} generators, index {index} is out of range",
                                gens.len()
                            ),
                        })
                    }
                    other => err(path, format!("unknown operator {other:?}")),
                }
            }
            _ => err(path, "expected a scalar expression"),
        }
    }
}

fn string_at(value: &Value, path: &str) -> Result<String, SceneError> {
    value
        .as_str()
        .map(str::to_string)
        .ok_or_else(|| SceneError {
            path: path.to_string(),
            message: "expected a string".to_string(),
        })
}

fn parse_check(value: &Value, path: &str) -> Result<SceneCheck, SceneError> {
    let obj = value.as_object().ok_or_else(|| SceneError {
        path: path.to_string(),
        message: "check must be an object".to_string(),
    })?;
    let check = obj
        .get("check")
        .and_then(Value::as_str)
        .ok_or_else(|| SceneError {
            path: format!("{path}.check"),
            message: "missing check name".to_string(),
        })?
        .to_string();
    let mut points = Vec::new();
    if let Some(list) = obj.get("points").and_then(Value::as_array) {
        for (i, p) in list.iter().enumerate() {
            points.push(string_at(p, &format!("{path}.points[{i}]"))?);
        }
    }
    let mut figures = Vec::new();
    if let Some(list) = obj.get("figures").and_then(Value::as_array) {
        for (i, f) in list.iter().enumerate() {
            figures.push(string_at(f, &format!("{path}.figures[{i}]"))?);
        }
    }
    let at = match obj.get("at") {
        Some(v) => Some(string_at(v, &format!("{path}.at"))?),
        None => None,
    };
    let mut args = BTreeMap::new();
    for (key, val) in obj {
        if matches!(key.as_str(), "check" | "points" | "figures" | "at" | "expect") {
            continue;
        }
        let text = match val {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => {
                return err(
                    &format!("{path}.{key}"),
                    "check arguments must be strings or numbers",
                )
            }
        };
        args.insert(key.clone(), text);
    }
    let expect = obj.get("expect").and_then(Value::as_bool).unwrap_or(true);
    Ok(SceneCheck {
        check,
        points,
        figures,
        at,
        args,
        expect,
    })
}

/// `"p/q"` or `"p"` with arbitrary-precision integers.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl fmt::Debug for Scene {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Scene")
            .field("dim", &self.dim)
            .field("points", &self.points.keys().collect::<Vec<_>>())
            .field("spheres", &self.spheres.keys().collect::<Vec<_>>())
            .field("hyperplanes", &self.hyperplanes.keys().collect::<Vec<_>>())
            .field("checks", &self.checks.len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn expression_grammar_evaluates_exactly() {
        let scene = Scene::parse(&json!({
            "dim": 2,
            "batches": [{"name": "eps", "size": 2}]
        }))
        .unwrap();
        // (1/3 + 2/3) * sqrt(2) * sqrt(2) = 2
        let expr = json!({"mul": [
            {"add": ["1/3", "2/3"]},
            {"sqrt": "2"},
            {"sqrt": "2"}
        ]});
        let value = scene.parse_expr(&expr, "$").unwrap();
        assert_eq!(value, NilElement::from_int(2));

        // -(3) + 3 = 0
        let neg = json!({"add": [{"neg": 3}, "3"]});
        assert!(scene.parse_expr(&neg, "$").unwrap().is_zero());

        // 5 * eps_0 has a vanishing square
        let gen_expr = json!({"mul": ["5", {"gen": ["eps", 0]}]});
        let g = scene.parse_expr(&gen_expr, "$").unwrap();
        assert!(!g.is_zero());
        assert!((&g * &g).is_zero());
        // distinct generators of one batch also annihilate
        let other = scene
            .parse_expr(&json!({"gen": ["eps", 1]}), "$")
            .unwrap();
        assert!((&g * &other).is_zero());
    }

    #[test]
    fn parse_errors_carry_paths() {
        let scene = Scene::parse(&json!({"dim": 2})).unwrap();
        let bad_sqrt = scene.parse_expr(&json!({"sqrt": "-1"}), "$.radius");
        let err = bad_sqrt.unwrap_err();
        assert_eq!(err.path, "$.radius.sqrt");

        let unknown_gen = scene.parse_expr(&json!({"gen": ["nope", 0]}), "$.x");
        assert_eq!(unknown_gen.unwrap_err().path, "$.x.gen[0]");

        let zero_denominator = scene.parse_expr(&json!("1/0"), "$.y");
        assert!(zero_denominator.is_err());

        let wrong_len = Scene::parse(&json!({
            "dim": 2,
            "points": {"a": ["1", "2", "3"]}
        }));
        assert_eq!(wrong_len.unwrap_err().path, "$.points.a");
    }

    #[test]
    fn duplicate_batch_names_are_rejected() {
        let result = Scene::parse(&json!({
            "dim": 2,
            "batches": [{"name": "d", "size": 1}, {"name": "d", "size": 2}]
        }));
        assert!(result.unwrap_err().message.contains("duplicate"));
    }

    #[test]
    fn figures_resolve_point_references() {
        let scene = Scene::parse(&json!({
            "dim": 2,
            "points": {"a": ["0", "0"]},
            "spheres": {"A": {"center": "a", "radius": {"sqrt": "2"}}},
            "hyperplanes": {"H": {"basepoint": "a", "normal": ["0", "1"]}}
        }))
        .unwrap();
        let sphere = &scene.spheres["A"];
        let r = sphere.radius();
        assert_eq!(&(r * r), &NilElement::from_int(2));
        assert!(scene.hyperplanes["H"].contains(&sdg_core::geometry::Point::from_ints(&[7, 0])));

        let missing = Scene::parse(&json!({
            "dim": 2,
            "spheres": {"A": {"center": "nope", "radius": "1"}}
        }));
        assert!(missing.unwrap_err().message.contains("unknown point"));
    }
}
