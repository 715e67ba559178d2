//! Job documents: schema validation, then typed parsing with JSON pointers
//! for every rejected value.

use serde::Deserialize;
use serde_json::Value;
use std::sync::OnceLock;

pub const SCHEMA_VERSION: u32 = 1;
pub const SCHEMA: &str = include_str!("../../../docs/jobspec.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    ExtendPlace,
    TensorSplit,
    TwoPlace,
    AbhyankarCheck,
    FiberCount,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::ExtendPlace => "extend-place",
            Command::TensorSplit => "tensor-split",
            Command::TwoPlace => "two-place",
            Command::AbhyankarCheck => "abhyankar-check",
            Command::FiberCount => "fiber-count",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Base {
    Rationals,
    FunctionField { characteristic: u64 },
}

/// A rational `[num, den]`.
pub type Pair = [i64; 2];

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Rational(Pair),
    Series(Vec<Pair>),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct FieldSpec {
    pub name: Option<String>,
    pub poly: Vec<Coefficient>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Center {
    Finite(Pair),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum PlaceSpec {
    Prime { prime: u64 },
    Center { center: Center },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub struct Kummer {
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub f: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
pub struct Options {
    pub precision: Option<usize>,
    pub shift_budget: Option<u32>,
    pub seed: Option<u64>,
    pub oracle: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct JobSpec {
    pub schema: u32,
    pub command: Command,
    pub base: Base,
    #[serde(default)]
    pub fields: Vec<FieldSpec>,
    pub place: Option<PlaceSpec>,
    pub indices: Option<[usize; 2]>,
    pub kummer: Option<Kummer>,
    #[serde(default)]
    pub options: Options,
}

/// A rejected job: where, and why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl SchemaError {
    pub fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError { pointer: pointer.into(), message: message.into() }
    }
}

fn validator() -> &'static jsonschema::Validator {
    static V: OnceLock<jsonschema::Validator> = OnceLock::new();
    V.get_or_init(|| {
        let schema: Value = serde_json::from_str(SCHEMA).expect("shipped schema is valid JSON");
        jsonschema::validator_for(&schema).expect("shipped schema compiles")
    })
}

/// Validate against the published schema, then parse and check the parts
/// the schema cannot express.
pub fn parse(doc: &Value) -> Result<JobSpec, SchemaError> {
    if let Some(err) = validator().iter_errors(doc).next() {
        return Err(SchemaError::new(err.instance_path().as_str(), err.to_string()));
    }
    let job: JobSpec = serde_json::from_value(doc.clone()).map_err(|e| SchemaError::new("", e.to_string()))?;
    check(&job)?;
    Ok(job)
}

fn check(job: &JobSpec) -> Result<(), SchemaError> {
    let function_field = matches!(job.base, Base::FunctionField { .. });
    if let Base::FunctionField { characteristic: p } = job.base {
        if p != 0 && !absval::arith::rational::is_prime(p) {
            return Err(SchemaError::new("/base/characteristic", format!("{p} is neither 0 nor a prime")));
        }
    }
    let needs_fields = match job.command {
        Command::ExtendPlace => 1,
        Command::AbhyankarCheck if job.kummer.is_some() => 0,
        _ => 2,
    };
    if job.fields.len() != needs_fields {
        return Err(SchemaError::new("/fields", format!("{} needs {needs_fields} field(s), got {}", job.command.as_str(), job.fields.len())));
    }
    for (i, f) in job.fields.iter().enumerate() {
        for (j, c) in f.poly.iter().enumerate() {
            let at = format!("/fields/{i}/poly/{j}");
            let pairs: &[Pair] = match c {
                Coefficient::Rational(p) => std::slice::from_ref(p),
                Coefficient::Series(ps) if function_field => ps,
                Coefficient::Series(_) => return Err(SchemaError::new(at, "polynomial coefficients need a function-field base")),
            };
            if let Some(k) = pairs.iter().position(|p| p[1] == 0) {
                let at = if matches!(c, Coefficient::Series(_)) { format!("{at}/{k}") } else { at };
                return Err(SchemaError::new(at, "zero denominator"));
            }
        }
        if f.poly.last().is_some_and(is_zero_coefficient) {
            return Err(SchemaError::new(format!("/fields/{i}/poly/{}", f.poly.len() - 1), "leading coefficient is zero"));
        }
    }
    let needs_place = !matches!(job.command, Command::TensorSplit) && job.kummer.is_none();
    match (&job.place, needs_place) {
        (None, true) => return Err(SchemaError::new("/place", format!("{} needs a place", job.command.as_str()))),
        (Some(PlaceSpec::Prime { prime }), _) => {
            if function_field {
                return Err(SchemaError::new("/place", "a function-field base takes a center, not a prime"));
            }
            if !absval::arith::rational::is_prime(*prime) {
                return Err(SchemaError::new("/place/prime", format!("{prime} is not prime")));
            }
        }
        (Some(PlaceSpec::Center { center }), _) => {
            if !function_field {
                return Err(SchemaError::new("/place", "a base of rationals takes a prime, not a center"));
            }
            match center {
                Center::Finite(p) if p[1] == 0 => return Err(SchemaError::new("/place/center", "zero denominator")),
                Center::Named(s) if s != "infinity" => return Err(SchemaError::new("/place/center", format!("unknown center {s:?}"))),
                _ => {}
            }
        }
        _ => {}
    }
    if job.command == Command::FiberCount && !function_field {
        return Err(SchemaError::new("/base", "fiber-count needs a function-field base"));
    }
    if let Some(k) = &job.kummer {
        if job.command != Command::AbhyankarCheck {
            return Err(SchemaError::new("/kummer", "only abhyankar-check takes a Kummer tower"));
        }
        if !function_field {
            return Err(SchemaError::new("/base", "Kummer towers need a function-field base"));
        }
        let tower = absval::abhyankar::KummerTower { n: k.n, l: k.l, m: k.m, f: k.f };
        if let Err(e) = tower.validate() {
            return Err(SchemaError::new("/kummer", e.to_string()));
        }
    }
    if job.indices.is_some() && matches!(job.command, Command::ExtendPlace | Command::TensorSplit) {
        return Err(SchemaError::new("/indices", format!("{} takes no place indices", job.command.as_str())));
    }
    Ok(())
}

fn is_zero_coefficient(c: &Coefficient) -> bool {
    match c {
        Coefficient::Rational(p) => p[0] == 0,
        Coefficient::Series(ps) => ps.iter().all(|p| p[0] == 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn job(v: Value) -> Result<JobSpec, SchemaError> {
        parse(&v)
    }

    #[test]
    fn accepts_minimal_extend_place() {
        let j = job(json!({"schema": 1, "command": "extend-place", "base": {"kind": "rationals"},
            "fields": [{"poly": [[1, 1], [0, 1], [1, 1]]}], "place": {"prime": 5}}))
        .unwrap();
        assert_eq!(j.command, Command::ExtendPlace);
        assert_eq!(j.fields[0].poly.len(), 3);
    }

    #[test]
    fn schema_violation_points_at_field() {
        let e = job(json!({"schema": 1, "command": "extend-place", "base": {"kind": "rationals"},
            "fields": [{"poly": [[1, 1], [0.5, 1], [1, 1]]}], "place": {"prime": 5}}))
        .unwrap_err();
        assert!(e.pointer.starts_with("/fields/0/poly/1"), "{e:?}");
    }

    #[test]
    fn wrong_version_rejected() {
        let e = job(json!({"schema": 2, "command": "extend-place", "base": {"kind": "rationals"}})).unwrap_err();
        assert_eq!(e.pointer, "/schema");
    }

    #[test]
    fn semantic_checks() {
        let e = job(json!({"schema": 1, "command": "extend-place", "base": {"kind": "rationals"},
            "fields": [{"poly": [[1, 1], [0, 1], [1, 1]]}], "place": {"prime": 6}}))
        .unwrap_err();
        assert_eq!(e.pointer, "/place/prime");
        let e = job(json!({"schema": 1, "command": "fiber-count", "base": {"kind": "rationals"},
            "fields": [{"poly": [[1, 1], [1, 1]]}, {"poly": [[1, 1], [1, 1]]}], "place": {"prime": 5}}))
        .unwrap_err();
        assert_eq!(e.pointer, "/base");
        let e = job(json!({"schema": 1, "command": "two-place", "base": {"kind": "rationals"},
            "fields": [{"poly": [[1, 1], [0, 1], [1, 0]]}, {"poly": [[1, 1], [1, 1]]}], "place": {"prime": 5}}))
        .unwrap_err();
        assert_eq!(e.pointer, "/fields/0/poly/2");
    }
}
