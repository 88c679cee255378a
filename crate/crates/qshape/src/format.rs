//! JSON formats for categories, representations and morphisms.
//!
//! Matrices are row-major arrays of rows. Entries are strings over `Z` and
//! `Q` (`"p/q"` for fractions) and plain integers over `Z/m`. A value
//! `{"rank": g, "relations": M}` is `R^g` modulo the columns of the `g × k`
//! matrix `M`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use qshape_core::matrix::{Matrix, MatrixOps};
use qshape_core::meshcat::MeshCategory;
use qshape_core::module::PresentedModule;
use qshape_core::quiver::{Flavor, Vertex};
use qshape_core::repmod::{RepMorphism, Representation};
use qshape_core::ring::{Integers, IntegersMod, Rationals, Ring};
use serde_json::{json, Map, Value};

/// Anything that stops a command, with the exit code it maps to.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad input; `pointer` locates the offending field.
    Input { pointer: String, message: String },
    Io(String),
    Core(qshape_core::Error),
    /// An internal cross-check failed.
    Verification(String),
}

impl CliError {
    pub fn input(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Input { pointer: pointer.into(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) | CliError::Core(qshape_core::Error::CrossCheck(_)) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input { pointer, message } => write!(f, "error at \"{pointer}\": {message}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
            CliError::Core(e) => write!(f, "error: {e}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<qshape_core::Error> for CliError {
    fn from(e: qshape_core::Error) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Escapes one JSON pointer token.
pub fn pointer_token(s: &str) -> String {
    s.replace('~', "~0").replace('/', "~1")
}

fn at(base: &str, token: &str) -> String {
    format!("{base}/{}", pointer_token(token))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingChoice {
    Z,
    Q,
    Mod(u64),
}

impl RingChoice {
    pub fn to_json(self) -> Value {
        match self {
            RingChoice::Z => json!("Z"),
            RingChoice::Q => json!("Q"),
            RingChoice::Mod(m) => json!({ "mod": m }),
        }
    }

    fn from_json(v: &Value, ptr: &str) -> CliResult<Self> {
        match v {
            Value::String(s) => RingChoice::from_str(s).map_err(|m| CliError::input(ptr, m)),
            Value::Object(o) => match o.get("mod").and_then(Value::as_u64) {
                Some(m) if o.len() == 1 => Ok(RingChoice::Mod(m)),
                _ => Err(CliError::input(ptr, "expected {\"mod\": m}")),
            },
            _ => Err(CliError::input(ptr, "expected \"Z\", \"Q\" or {\"mod\": m}")),
        }
    }
}

impl FromStr for RingChoice {
    type Err = String;

    /// `Z`, `Q`, `mod:m` or `Z/m`.
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Z" => Ok(RingChoice::Z),
            "Q" => Ok(RingChoice::Q),
            _ => {
                let m = s.strip_prefix("mod:").or_else(|| s.strip_prefix("Z/"));
                m.and_then(|m| m.parse().ok())
                    .map(RingChoice::Mod)
                    .ok_or_else(|| format!("unknown ring {s:?}; use Z, Q or mod:m"))
            }
        }
    }
}

/// A ring chosen at run time.
#[derive(Clone, Debug)]
pub enum AnyRing {
    Z(Integers),
    Q(Rationals),
    Mod(IntegersMod),
}

impl AnyRing {
    pub fn new(choice: RingChoice, ptr: &str) -> CliResult<Self> {
        Ok(match choice {
            RingChoice::Z => AnyRing::Z(Integers),
            RingChoice::Q => AnyRing::Q(Rationals),
            RingChoice::Mod(m) => AnyRing::Mod(IntegersMod::new(m).map_err(|e| CliError::input(ptr, e.to_string()))?),
        })
    }
}

/// Runs `$body` with `$r` bound to the concrete ring.
#[macro_export]
macro_rules! with_ring {
    ($ring:expr, $r:ident => $body:expr) => {
        match $ring {
            $crate::format::AnyRing::Z($r) => $body,
            $crate::format::AnyRing::Q($r) => $body,
            $crate::format::AnyRing::Mod($r) => $body,
        }
    };
}

/// Ring elements in JSON.
pub trait JsonRing: Ring {
    fn elem_to_json(&self, e: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, String>;
}

fn integer_text(v: &Value) -> Result<String, String> {
    match v {
        Value::String(s) => Ok(s.trim().to_string()),
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
        _ => Err("expected an integer or a string".into()),
    }
}

impl JsonRing for Integers {
    fn elem_to_json(&self, e: &BigInt) -> Value {
        Value::String(e.to_string())
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigInt, String> {
        let s = integer_text(v)?;
        BigInt::from_str(&s).map_err(|_| format!("{s:?} is not an integer"))
    }
}

impl JsonRing for Rationals {
    fn elem_to_json(&self, e: &BigRational) -> Value {
        Value::String(e.to_string())
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigRational, String> {
        let s = integer_text(v)?;
        let bad = || format!("{s:?} is not a fraction p/q");
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (BigInt::from_str(p.trim()).map_err(|_| bad())?, BigInt::from_str(q.trim()).map_err(|_| bad())?),
            None => (BigInt::from_str(&s).map_err(|_| bad())?, BigInt::from(1)),
        };
        if q == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(p, q))
    }
}

impl JsonRing for IntegersMod {
    fn elem_to_json(&self, e: &u64) -> Value {
        json!(e)
    }
    fn elem_from_json(&self, v: &Value) -> Result<u64, String> {
        let n = v.as_i64().ok_or("expected an integer")?;
        Ok(self.from_i64(n))
    }
}

pub fn matrix_to_json<R: JsonRing>(r: &R, m: &Matrix<R::Elem>) -> Value {
    Value::Array(m.to_rows().iter().map(|row| Value::Array(row.iter().map(|e| r.elem_to_json(e)).collect())).collect())
}

/// Parses a matrix, checking its shape against `(rows, cols)` where given.
pub fn matrix_from_json<R: JsonRing>(
    r: &R,
    v: &Value,
    ptr: &str,
    rows: Option<usize>,
    cols: Option<usize>,
) -> CliResult<Matrix<R::Elem>> {
    let outer = v.as_array().ok_or_else(|| CliError::input(ptr, "expected an array of rows"))?;
    if let Some(k) = rows {
        if outer.len() != k && !(k == 0 && outer.is_empty()) {
            return Err(CliError::input(ptr, format!("expected {k} rows, found {}", outer.len())));
        }
    }
    let mut width = cols;
    let mut data = Vec::with_capacity(outer.len());
    for (i, row) in outer.iter().enumerate() {
        let rp = at(ptr, &i.to_string());
        let row = row.as_array().ok_or_else(|| CliError::input(&rp, "expected a row array"))?;
        match width {
            Some(w) if w != row.len() => {
                return Err(CliError::input(&rp, format!("expected {w} entries, found {}", row.len())))
            }
            None => width = Some(row.len()),
            _ => {}
        }
        let mut parsed = Vec::with_capacity(row.len());
        for (j, e) in row.iter().enumerate() {
            parsed.push(r.elem_from_json(e).map_err(|m| CliError::input(at(&rp, &j.to_string()), m))?);
        }
        data.push(parsed);
    }
    let (nr, nc) = (rows.unwrap_or(data.len()), width.unwrap_or(0));
    if data.is_empty() {
        return Ok(r.zeros(nr, nc));
    }
    Matrix::from_rows(nr, nc, data).map_err(|e| CliError::input(ptr, e.to_string()))
}

/// A category description: flavor, rank, window and base ring.
#[derive(Clone, Debug, PartialEq)]
pub struct CategoryInput {
    pub flavor: Flavor,
    pub ring: RingChoice,
}

impl CategoryInput {
    pub fn from_json(v: &Value, ptr: &str) -> CliResult<Self> {
        let o = v.as_object().ok_or_else(|| CliError::input(ptr, "expected an object"))?;
        let flavor = o.get("flavor").and_then(Value::as_str).ok_or_else(|| CliError::input(at(ptr, "flavor"), "missing flavor"))?;
        let n = o.get("n").and_then(Value::as_u64).ok_or_else(|| CliError::input(at(ptr, "n"), "missing or invalid n"))? as usize;
        if n < 2 {
            return Err(CliError::input(at(ptr, "n"), "n must be at least 2"));
        }
        let ring = match o.get("ring") {
            Some(r) => RingChoice::from_json(r, &at(ptr, "ring"))?,
            None => RingChoice::Z,
        };
        let flavor = match flavor {
            "double_an" => {
                if o.contains_key("window") {
                    return Err(CliError::input(at(ptr, "window"), "the double quiver has no window"));
                }
                Flavor::DoubleAn { n }
            }
            "repetitive_an" => {
                let wp = at(ptr, "window");
                let w = o.get("window").and_then(Value::as_array).ok_or_else(|| CliError::input(&wp, "expected [i_min, i_max]"))?;
                let (lo, hi) = match w.as_slice() {
                    [a, b] => match (a.as_i64(), b.as_i64()) {
                        (Some(a), Some(b)) => (a, b),
                        _ => return Err(CliError::input(&wp, "window bounds must be integers")),
                    },
                    _ => return Err(CliError::input(&wp, "expected [i_min, i_max]")),
                };
                if lo > hi {
                    return Err(CliError::input(&wp, format!("window [{lo}, {hi}] has i_min > i_max")));
                }
                Flavor::RepetitiveAn { n, i_min: lo, i_max: hi }
            }
            other => return Err(CliError::input(at(ptr, "flavor"), format!("unknown flavor {other:?}"))),
        };
        Ok(CategoryInput { flavor, ring })
    }

    pub fn to_json(&self) -> Value {
        match self.flavor {
            Flavor::DoubleAn { n } => json!({"flavor": "double_an", "n": n, "ring": self.ring.to_json()}),
            Flavor::RepetitiveAn { n, i_min, i_max } => {
                json!({"flavor": "repetitive_an", "n": n, "window": [i_min, i_max], "ring": self.ring.to_json()})
            }
        }
    }

    pub fn category(&self) -> CliResult<Arc<MeshCategory>> {
        let cat = match self.flavor {
            Flavor::DoubleAn { n } => MeshCategory::double(n),
            Flavor::RepetitiveAn { n, i_min, i_max } => MeshCategory::repetitive(n, i_min, i_max),
        };
        Ok(Arc::new(cat?))
    }

    pub fn ring(&self) -> CliResult<AnyRing> {
        AnyRing::new(self.ring, "/ring")
    }
}

fn parse_vertex(cat: &MeshCategory, name: &str, ptr: &str) -> CliResult<Vertex> {
    cat.quiver().parse_vertex(name).map_err(|e| CliError::input(ptr, e.to_string()))
}

/// Parses `{"values": ..., "arrows": ...}` under `ptr`.
pub fn representation_from_json<R: JsonRing>(
    cat: &Arc<MeshCategory>,
    r: &R,
    v: &Value,
    ptr: &str,
) -> CliResult<Representation<R>> {
    let o = v.as_object().ok_or_else(|| CliError::input(ptr, "expected an object"))?;
    let empty = Map::new();
    let vp = at(ptr, "values");
    let vals = match o.get("values") {
        Some(x) => x.as_object().ok_or_else(|| CliError::input(&vp, "expected an object"))?,
        None => &empty,
    };
    let mut values = BTreeMap::new();
    let mut ranks = BTreeMap::new();
    for (name, val) in vals {
        let p = at(&vp, name);
        let vert = parse_vertex(cat, name, &p)?;
        let (rank, rel) = match val {
            Value::Number(_) => (val.as_u64().ok_or_else(|| CliError::input(&p, "expected a rank"))? as usize, None),
            Value::Object(m) => {
                let rank = m.get("rank").and_then(Value::as_u64).ok_or_else(|| CliError::input(at(&p, "rank"), "missing rank"))?;
                (rank as usize, m.get("relations"))
            }
            _ => return Err(CliError::input(&p, "expected a rank or {\"rank\", \"relations\"}")),
        };
        let relations = match rel {
            Some(m) => matrix_from_json(r, m, &at(&p, "relations"), Some(rank), None)?,
            None => r.zeros(rank, 0),
        };
        let module = PresentedModule::new(r.clone(), rank, relations).map_err(|e| CliError::input(&p, e.to_string()))?;
        ranks.insert(vert, rank);
        values.insert(vert, module);
    }
    let ap = at(ptr, "arrows");
    let arrs = match o.get("arrows") {
        Some(x) => x.as_object().ok_or_else(|| CliError::input(&ap, "expected an object"))?,
        None => &empty,
    };
    let quiver = cat.quiver();
    let mut arrows = BTreeMap::new();
    for (name, m) in arrs {
        let p = at(&ap, name);
        let a = quiver.parse_arrow(name).map_err(|e| CliError::input(&p, e.to_string()))?;
        let rank = |v: &Vertex| ranks.get(v).copied().unwrap_or(0);
        let mat = matrix_from_json(r, m, &p, Some(rank(&quiver.target(&a))), Some(rank(&quiver.source(&a))))?;
        arrows.insert(a, mat);
    }
    Representation::new(cat.clone(), r.clone(), values, arrows).map_err(|e| CliError::input(ptr, e.to_string()))
}

pub fn representation_to_json<R: JsonRing>(x: &Representation<R>) -> Value {
    let quiver = x.category().quiver();
    let r = x.ring();
    let mut values = Map::new();
    for (v, m) in x.values() {
        let name = quiver.vertex_name(v);
        if m.relations().cols() == 0 {
            values.insert(name, json!(m.generators()));
        } else {
            values.insert(name, json!({"rank": m.generators(), "relations": matrix_to_json(r, m.relations())}));
        }
    }
    let arrows: Map<String, Value> =
        x.arrow_maps().iter().map(|(a, m)| (quiver.arrow_name(a), matrix_to_json(r, m))).collect();
    json!({"values": values, "arrows": arrows})
}

/// Parses `{"source": ..., "target": ..., "components": ...}` under `ptr`.
pub fn morphism_from_json<R: JsonRing>(
    cat: &Arc<MeshCategory>,
    r: &R,
    v: &Value,
    ptr: &str,
) -> CliResult<RepMorphism<R>> {
    let o = v.as_object().ok_or_else(|| CliError::input(ptr, "expected an object"))?;
    let get = |k: &str| o.get(k).ok_or_else(|| CliError::input(at(ptr, k), format!("missing {k}")));
    let source = representation_from_json(cat, r, get("source")?, &at(ptr, "source"))?;
    let target = representation_from_json(cat, r, get("target")?, &at(ptr, "target"))?;
    let cp = at(ptr, "components");
    let comps = get("components")?.as_object().ok_or_else(|| CliError::input(&cp, "expected an object"))?;
    let mut components = BTreeMap::new();
    for (name, m) in comps {
        let p = at(&cp, name);
        let vert = parse_vertex(cat, name, &p)?;
        let mat = matrix_from_json(r, m, &p, Some(target.generators(&vert)), Some(source.generators(&vert)))?;
        components.insert(vert, mat);
    }
    RepMorphism::new(source, target, components).map_err(|e| CliError::input(&cp, e.to_string()))
}

pub fn morphism_to_json<R: JsonRing>(phi: &RepMorphism<R>) -> Value {
    let quiver = phi.source.category().quiver();
    let r = phi.source.ring();
    let comps: Map<String, Value> =
        phi.components().iter().map(|(v, m)| (quiver.vertex_name(v), matrix_to_json(r, m))).collect();
    json!({
        "source": representation_to_json(&phi.source),
        "target": representation_to_json(&phi.target),
        "components": comps,
    })
}

/// What an input file holds.
#[derive(Clone, Debug)]
pub enum InputKind {
    Representation,
    Morphism,
}

/// Splits an input document into its category and its kind.
pub fn read_document(v: &Value) -> CliResult<(CategoryInput, InputKind)> {
    let o = v.as_object().ok_or_else(|| CliError::input("", "expected a JSON object"))?;
    let cat = o.get("category").ok_or_else(|| CliError::input("/category", "missing category"))?;
    let cat = CategoryInput::from_json(cat, "/category")?;
    let kind = if o.contains_key("components") { InputKind::Morphism } else { InputKind::Representation };
    Ok((cat, kind))
}

/// Re-serializes a document in normal form (sorted keys, canonical entries).
pub fn normalize_document(v: &Value) -> CliResult<Value> {
    let (input, kind) = read_document(v)?;
    let cat = input.category()?;
    let body = crate::with_ring!(input.ring()?, r => match kind {
        InputKind::Representation => representation_to_json(&representation_from_json(&cat, &r, v, "")?),
        InputKind::Morphism => morphism_to_json(&morphism_from_json(&cat, &r, v, "")?),
    });
    let mut out = body.as_object().cloned().unwrap_or_default();
    out.insert("category".into(), input.to_json());
    Ok(Value::Object(out))
}
