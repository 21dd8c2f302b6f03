//! JSON file formats. Every scalar is a string in the shared text form
//! (`"3"`, `"-5/6"`), matrices are arrays of rows, and maps act on columns.
//! Errors carry the JSON pointer of the offending value.

use std::path::Path;

use gcq_core::constructions::{IsoDatum, LoopTable};
use gcq_core::exactlin::{Field, Mat, Scalar, Tensor3};
use gcq_core::grading::GroupTable;
use gcq_core::hcq::{ComponentAlgebra, GCHopfCoquasigroup, GradedElement};
use gcq_core::ore::{OreDatum, UnnormalizedGenerators};
use serde_json::{json, Map, Value};

use crate::error::CliError;

type Res<T> = Result<T, CliError>;

/// A JSON value together with its pointer inside the document.
struct At<'a> {
    file: &'a str,
    value: &'a Value,
    pointer: String,
}

impl<'a> At<'a> {
    fn root(file: &'a str, value: &'a Value) -> Self {
        At {
            file,
            value,
            pointer: String::new(),
        }
    }

    fn err(&self, message: impl Into<String>) -> CliError {
        CliError::Parse {
            path: self.file.to_string(),
            pointer: if self.pointer.is_empty() { "/".into() } else { self.pointer.clone() },
            message: message.into(),
        }
    }

    fn child(&self, key: &str, value: &'a Value) -> At<'a> {
        let escaped = key.replace('~', "~0").replace('/', "~1");
        At {
            file: self.file,
            value,
            pointer: format!("{}/{escaped}", self.pointer),
        }
    }

    fn object(&self) -> Res<&'a Map<String, Value>> {
        self.value.as_object().ok_or_else(|| self.err("expected an object"))
    }

    fn get(&self, key: &str) -> Res<At<'a>> {
        let v = self.object()?.get(key).ok_or_else(|| self.err(format!("missing key {key:?}")))?;
        Ok(self.child(key, v))
    }

    fn opt(&self, key: &str) -> Res<Option<At<'a>>> {
        Ok(self.object()?.get(key).filter(|v| !v.is_null()).map(|v| self.child(key, v)))
    }

    fn array(&self) -> Res<Vec<At<'a>>> {
        let a = self.value.as_array().ok_or_else(|| self.err("expected an array"))?;
        Ok(a.iter().enumerate().map(|(i, v)| self.child(&i.to_string(), v)).collect())
    }

    fn array_of(&self, len: usize) -> Res<Vec<At<'a>>> {
        let a = self.array()?;
        if a.len() != len {
            return Err(self.shape(format!("expected {len} entries, got {}", a.len())));
        }
        Ok(a)
    }

    fn shape(&self, message: impl Into<String>) -> CliError {
        CliError::Core(gcq_core::Error::shape(
            if self.pointer.is_empty() { "/".to_string() } else { self.pointer.clone() },
            message,
        ))
    }

    fn index(&self) -> Res<usize> {
        self.value
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| self.err("expected a non-negative integer"))
    }

    fn indices(&self) -> Res<Vec<usize>> {
        self.array()?.iter().map(At::index).collect()
    }

    fn string(&self) -> Res<&'a str> {
        self.value.as_str().ok_or_else(|| self.err("expected a string"))
    }

    fn scalar(&self, field: Field) -> Res<Scalar> {
        let text = match self.value {
            Value::String(s) => s.as_str(),
            Value::Number(_) => return Err(self.err("scalars must be strings")),
            _ => return Err(self.err("expected a scalar string")),
        };
        field.parse_scalar(text).map_err(|e| match e {
            gcq_core::Error::Parse(m) => self.err(m),
            other => self.err(other.to_string()),
        })
    }

    fn vector(&self, field: Field, len: usize) -> Res<Vec<Scalar>> {
        self.array_of(len)?.iter().map(|x| x.scalar(field)).collect()
    }

    fn matrix(&self, field: Field, rows: usize, cols: usize) -> Res<Mat> {
        let rs = self.array()?;
        if rs.len() != rows {
            return Err(self.shape(format!("expected {rows}×{cols}, got {} rows", rs.len())));
        }
        let mut m = Mat::zeros(field, rows, cols);
        for (i, r) in rs.iter().enumerate() {
            let cells = r.array()?;
            if cells.len() != cols {
                return Err(r.shape(format!("expected {cols} columns, got {}", cells.len())));
            }
            for (j, c) in cells.iter().enumerate() {
                m.set(i, j, c.scalar(field)?);
            }
        }
        Ok(m)
    }

    /// An object keyed by grade (`"p"`) holding one entry per grade.
    fn per_grade(&self, n: usize) -> Res<Vec<At<'a>>> {
        self.keyed(n, |k| k.parse::<usize>().ok().filter(|&p| p < n))
    }

    /// An object keyed `"p,q"` holding one entry per grade pair, in `p·n + q` order.
    fn per_pair(&self, n: usize) -> Res<Vec<At<'a>>> {
        self.keyed(n * n, |k| {
            let (p, q) = k.split_once(',')?;
            let (p, q) = (p.trim().parse::<usize>().ok()?, q.trim().parse::<usize>().ok()?);
            (p < n && q < n).then_some(p * n + q)
        })
    }

    fn keyed(&self, count: usize, slot: impl Fn(&str) -> Option<usize>) -> Res<Vec<At<'a>>> {
        let obj = self.object()?;
        let mut out: Vec<Option<At<'a>>> = (0..count).map(|_| None).collect();
        for (k, v) in obj {
            let i = slot(k).ok_or_else(|| self.err(format!("unexpected key {k:?}")))?;
            out[i] = Some(self.child(k, v));
        }
        out.into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| self.shape(format!("missing entry {i} of {count}"))))
            .collect()
    }
}

/// Reads and parses a JSON file.
pub fn read_json(path: &Path) -> Res<(Vec<u8>, Value)> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let value = serde_json::from_slice(&bytes).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        pointer: "/".into(),
        message: e.to_string(),
    })?;
    Ok((bytes, value))
}

/// Moves a core shape error's location under `prefix`.
fn locate(e: gcq_core::Error, prefix: &str) -> CliError {
    match e {
        gcq_core::Error::Shape { location, message } => CliError::Core(gcq_core::Error::Shape {
            location: format!("{prefix}{}", if location == "/" { "" } else { &location }),
            message,
        }),
        other => CliError::Core(other),
    }
}

fn parse_group(at: &At) -> Res<GroupTable> {
    let order = at.get("order")?.index()?;
    let mul_at = at.get("mul")?;
    let rows = mul_at.array_of(order)?;
    let mul = rows.iter().map(|r| r.indices()).collect::<Res<Vec<_>>>()?;
    let identity = at.get("identity")?.index()?;
    let g = GroupTable::new(mul, identity).map_err(|e| locate(e, &at.pointer))?;
    if let Some(inv) = at.opt("inv")? {
        g.check_inverses(&inv.indices()?).map_err(|e| locate(e, &at.pointer))?;
    }
    let report = gcq_core::grading::validate_group(&g);
    if let Some(c) = report.failures().next() {
        return Err(at.shape(format!("not a group: {} fails at {:?}", c.id, c.basis)));
    }
    Ok(g)
}

/// Group file: `{"order", "mul", "identity", "inv"?}`.
pub fn parse_group_doc(file: &str, value: &Value) -> Res<GroupTable> {
    parse_group(&At::root(file, value))
}

fn group_json(g: &GroupTable) -> Value {
    json!({
        "order": g.order(),
        "mul": g.table(),
        "identity": g.identity(),
        "inv": g.elements().map(|p| g.inv(p)).collect::<Vec<_>>(),
    })
}

fn scalars_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

fn mat_json(m: &Mat) -> Value {
    Value::Array(m.to_rows().iter().map(|r| scalars_json(r)).collect())
}

fn grade_map(items: impl IntoIterator<Item = (String, Value)>) -> Value {
    let mut entries: Vec<(String, Value)> = items.into_iter().collect();
    entries.sort_by_key(|(k, _)| k.split(',').map(|x| x.parse::<usize>().unwrap_or(0)).collect::<Vec<_>>());
    Value::Object(entries.into_iter().collect())
}

fn parse_field(at: &At) -> Res<Field> {
    at.string()?.parse::<Field>().map_err(|e| at.err(e.to_string()))
}

/// Structure file: `field`, `group`, `components` (`dim`, `unit`, `mul` as
/// d×d array of length-d rows, optional `labels`), `delta` keyed `"p,q"`,
/// `counit`, `antipode` keyed `"p"`.
pub fn parse_hcq(file: &str, value: &Value) -> Res<GCHopfCoquasigroup> {
    let at = At::root(file, value);
    let field = parse_field(&at.get("field")?)?;
    let group = parse_group(&at.get("group")?)?;
    let n = group.order();
    let comps_at = at.get("components")?;
    let mut components = Vec::with_capacity(n);
    for c in comps_at.array_of(n)? {
        let d = c.get("dim")?.index()?;
        let unit = c.get("unit")?.vector(field, d)?;
        let mut t = Tensor3::zeros(field, [d, d, d]);
        for (i, row) in c.get("mul")?.array_of(d)?.iter().enumerate() {
            for (j, cell) in row.array_of(d)?.iter().enumerate() {
                for (k, x) in cell.vector(field, d)?.into_iter().enumerate() {
                    t.set(i, j, k, x);
                }
            }
        }
        let mut comp = ComponentAlgebra::new(t, unit).map_err(|e| locate(e, &c.pointer))?;
        if let Some(l) = c.opt("labels")? {
            let labels = l.array_of(d)?.iter().map(|x| x.string().map(str::to_string)).collect::<Res<Vec<_>>>()?;
            comp = comp.with_labels(labels).map_err(|e| locate(e, &l.pointer))?;
        }
        components.push(comp);
    }
    let dims: Vec<usize> = components.iter().map(ComponentAlgebra::dim).collect();
    let delta = at
        .get("delta")?
        .per_pair(n)?
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let (p, q) = (i / n, i % n);
            m.matrix(field, dims[p] * dims[q], dims[group.mul(p, q)])
        })
        .collect::<Res<Vec<_>>>()?;
    let counit = at.get("counit")?.vector(field, dims[group.identity()])?;
    let antipode = at
        .get("antipode")?
        .per_grade(n)?
        .iter()
        .enumerate()
        .map(|(p, m)| m.matrix(field, dims[group.inv(p)], dims[p]))
        .collect::<Res<Vec<_>>>()?;
    GCHopfCoquasigroup::new(field, group, components, delta, counit, antipode).map_err(CliError::Core)
}

pub fn hcq_json(h: &GCHopfCoquasigroup) -> Value {
    let g = h.group();
    let n = g.order();
    let components: Vec<Value> = h
        .components()
        .iter()
        .map(|c| {
            let d = c.dim();
            let mul: Vec<Vec<Value>> = (0..d)
                .map(|i| (0..d).map(|j| scalars_json(c.constants().fibre(i, j))).collect())
                .collect();
            json!({"dim": d, "unit": scalars_json(c.unit()), "mul": mul, "labels": c.labels()})
        })
        .collect();
    json!({
        "field": h.field().to_string(),
        "group": group_json(g),
        "components": components,
        "delta": grade_map((0..n * n).map(|i| (format!("{},{}", i / n, i % n), mat_json(h.delta(i / n, i % n))))),
        "counit": scalars_json(h.counit()),
        "antipode": grade_map(g.elements().map(|p| (p.to_string(), mat_json(h.antipode(p))))),
    })
}

/// Ore datum: `chi`, `r` and `delta` keyed by grade, optional `tau`.
pub fn parse_ore(file: &str, value: &Value, h: &GCHopfCoquasigroup) -> Res<OreDatum> {
    let at = At::root(file, value);
    let field = h.field();
    let g = h.group();
    let n = g.order();
    let chi = at.get("chi")?.vector(field, h.dim(g.identity()))?;
    let r = graded_family(&at.get("r")?, h)?;
    let delta = at
        .get("delta")?
        .per_grade(n)?
        .iter()
        .enumerate()
        .map(|(p, m)| m.matrix(field, h.dim(p), h.dim(p)))
        .collect::<Res<Vec<_>>>()?;
    let mut datum = OreDatum::new(chi, r, delta);
    if let Some(t) = at.opt("tau")? {
        let tau = t
            .per_grade(n)?
            .iter()
            .enumerate()
            .map(|(p, m)| m.matrix(field, h.dim(p), h.dim(p)))
            .collect::<Res<Vec<_>>>()?;
        datum = datum.with_tau(tau);
    }
    Ok(datum)
}

fn graded_family(at: &At, h: &GCHopfCoquasigroup) -> Res<Vec<GradedElement>> {
    at.per_grade(h.group().order())?
        .iter()
        .enumerate()
        .map(|(p, v)| Ok(GradedElement::new(p, v.vector(h.field(), h.dim(p))?)))
        .collect()
}

fn family_json(xs: &[GradedElement]) -> Value {
    grade_map(xs.iter().map(|x| (x.grade.to_string(), scalars_json(&x.coeffs))))
}

pub fn ore_json(d: &OreDatum) -> Value {
    let mut v = json!({
        "chi": scalars_json(&d.chi),
        "r": family_json(&d.r),
        "delta": grade_map(d.delta.iter().enumerate().map(|(p, m)| (p.to_string(), mat_json(m)))),
    });
    if let Some(tau) = &d.tau_override {
        v["tau"] = grade_map(tau.iter().enumerate().map(|(p, m)| (p.to_string(), mat_json(m))));
    }
    v
}

/// Iso datum: `phi` keyed by grade (`d'_p × d_p`), `d` keyed by grade.
pub fn parse_iso(file: &str, value: &Value, h: &GCHopfCoquasigroup, h2: &GCHopfCoquasigroup) -> Res<IsoDatum> {
    let at = At::root(file, value);
    let n = h.group().order();
    let phi = at
        .get("phi")?
        .per_grade(n)?
        .iter()
        .enumerate()
        .map(|(p, m)| m.matrix(h.field(), h2.dim(p), h.dim(p)))
        .collect::<Res<Vec<_>>>()?;
    let d = graded_family(&at.get("d")?, h2)?;
    Ok(IsoDatum { phi, d })
}

pub fn iso_json(iso: &IsoDatum) -> Value {
    json!({
        "phi": grade_map(iso.phi.iter().enumerate().map(|(p, m)| (p.to_string(), mat_json(m)))),
        "d": family_json(&iso.d),
    })
}

/// Generator file for normalization: families `r1` and `r2` keyed by grade.
pub fn parse_generators(file: &str, value: &Value, h: &GCHopfCoquasigroup) -> Res<UnnormalizedGenerators> {
    let at = At::root(file, value);
    Ok(UnnormalizedGenerators {
        r1: graded_family(&at.get("r1")?, h)?,
        r2: graded_family(&at.get("r2")?, h)?,
    })
}

pub fn family_to_json(xs: &[GradedElement]) -> Value {
    family_json(xs)
}

/// Loop table: the group-table fragment plus optional `left_inv`/`right_inv`.
pub fn parse_loop(file: &str, value: &Value) -> Res<LoopTable> {
    let at = At::root(file, value);
    let order = at.get("order")?.index()?;
    let mul = at.get("mul")?.array_of(order)?.iter().map(|r| r.indices()).collect::<Res<Vec<_>>>()?;
    let identity = at.get("identity")?.index()?;
    let l = LoopTable::new(mul, identity).map_err(CliError::Core)?;
    let left = at.opt("left_inv")?.map(|x| x.indices()).transpose()?;
    let right = at.opt("right_inv")?.map(|x| x.indices()).transpose()?;
    if left.is_some() || right.is_some() {
        let derive = |f: fn(&LoopTable, usize) -> usize| (0..l.order()).map(|x| f(&l, x)).collect::<Vec<_>>();
        let left = left.unwrap_or_else(|| derive(LoopTable::left_inv));
        let right = right.unwrap_or_else(|| derive(LoopTable::right_inv));
        l.check_inverses(&left, &right).map_err(CliError::Core)?;
    }
    Ok(l)
}

pub fn loop_json(l: &LoopTable) -> Value {
    let n = l.order();
    json!({
        "order": n,
        "mul": l.table(),
        "identity": l.identity(),
        "left_inv": (0..n).map(|x| l.left_inv(x)).collect::<Vec<_>>(),
        "right_inv": (0..n).map(|x| l.right_inv(x)).collect::<Vec<_>>(),
    })
}

/// Indented JSON with flat arrays kept on one line, plus a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let items: Vec<String> = a.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&items.join(", "));
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            out.push_str("{\n");
            for (i, (k, x)) in m.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, x, depth + 1);
                out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
