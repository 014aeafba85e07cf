//! JSON files for packings and unitary lists, and JSON emission of reports.
//!
//! Every floating-point number is written as `{:.16e}` (17 significant
//! digits), which reads back to the same `f64`, so parse-then-write is a
//! fixed point. Negative zero is written as zero; non-finite values as `null`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

use crate::analysis::{CertificationReport, CrossGramSpectrum, Regime, Verdict};
use crate::construct::UnitaryList;
use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::model::{FieldTag, Packing};
use crate::rational::snap;
use crate::tolerance::Tolerance;

/// A float with 17 significant digits, or `null` when not finite.
pub fn fmt_f64(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn write_matrix(out: &mut String, m: &ComplexMatrix, indent: &str) {
    out.push('[');
    for r in 0..m.rows() {
        if r > 0 {
            out.push(',');
        }
        write!(out, "\n{indent}  [").unwrap();
        for c in 0..m.cols() {
            if c > 0 {
                out.push_str(", ");
            }
            let z = m[(r, c)];
            write!(out, "[{}, {}]", fmt_f64(z.re), fmt_f64(z.im)).unwrap();
        }
        out.push(']');
    }
    write!(out, "\n{indent}]").unwrap();
}

/// Packing file text:
/// `{"field", "ambient_dim", "dim", "subspaces": [{"basis": rows}, …]}` with
/// each basis row-major and each entry `[re, im]`.
pub fn packing_to_string(p: &Packing) -> String {
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"field\": \"{}\",", p.field()).unwrap();
    writeln!(out, "  \"ambient_dim\": {},", p.ambient_dim()).unwrap();
    writeln!(out, "  \"dim\": {},", p.dim()).unwrap();
    out.push_str("  \"subspaces\": [");
    for (i, w) in p.subspaces().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("\n    {\"basis\": ");
        write_matrix(&mut out, w.basis(), "    ");
        out.push('}');
    }
    out.push_str("\n  ]\n}\n");
    out
}

/// Unitary list file text: `{"field", "size", "unitaries": [matrix, …]}`.
pub fn unitaries_to_string(us: &UnitaryList) -> String {
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"field\": \"{}\",", us.field()).unwrap();
    writeln!(out, "  \"size\": {},", us.size()).unwrap();
    out.push_str("  \"unitaries\": [");
    for (i, u) in us.matrices().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str("\n    ");
        write_matrix(&mut out, u, "    ");
    }
    out.push_str("\n  ]\n}\n");
    out
}

fn parse_err(location: &str, what: impl std::fmt::Display) -> Error {
    Error::Parse(if location.is_empty() {
        what.to_string()
    } else {
        format!("{location}: {what}")
    })
}

fn field_of<'a>(
    obj: &'a serde_json::Map<String, Value>,
    key: &str,
    location: &str,
) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| parse_err(location, format!("missing field \"{key}\"")))
}

fn as_object<'a>(v: &'a Value, location: &str) -> Result<&'a serde_json::Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_err(location, "expected an object"))
}

fn as_array<'a>(v: &'a Value, location: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(location, "expected an array"))
}

fn as_dim(v: &Value, location: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|d| usize::try_from(d).ok())
        .filter(|&d| d > 0)
        .ok_or_else(|| parse_err(location, "expected a positive integer"))
}

fn as_field(v: &Value) -> Result<FieldTag> {
    v.as_str()
        .ok_or_else(|| parse_err("field", "expected \"R\" or \"C\""))?
        .parse()
}

fn as_real(v: &Value, location: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| parse_err(location, "expected a number"))
}

/// A number `x` is shorthand for `[x, 0]`.
fn as_entry(v: &Value, location: &str) -> Result<C64> {
    match v {
        Value::Number(_) => Ok(C64::new(as_real(v, location)?, 0.0)),
        Value::Array(parts) if parts.len() == 2 => Ok(C64::new(
            as_real(&parts[0], location)?,
            as_real(&parts[1], location)?,
        )),
        _ => Err(parse_err(location, "expected a number or a pair [re, im]")),
    }
}

fn as_matrix(v: &Value, rows: usize, cols: usize, location: &str) -> Result<ComplexMatrix> {
    let row_values = as_array(v, location)?;
    if row_values.len() != rows {
        return Err(parse_err(
            location,
            format!("expected {rows} rows, found {}", row_values.len()),
        ));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (r, row) in row_values.iter().enumerate() {
        let here = format!("{location}, row {r}");
        let entries = as_array(row, &here)?;
        if entries.len() != cols {
            return Err(parse_err(
                &here,
                format!("expected {cols} entries, found {}", entries.len()),
            ));
        }
        for (c, entry) in entries.iter().enumerate() {
            data.push(as_entry(entry, &format!("{here}, entry {c}"))?);
        }
    }
    ComplexMatrix::from_row_major(rows, cols, data)
}

fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Parses and validates packing file text.
pub fn packing_from_str(text: &str, tol: Tolerance) -> Result<Packing> {
    let doc = parse_document(text)?;
    let obj = as_object(&doc, "")?;
    let field = as_field(field_of(obj, "field", "")?)?;
    let k = as_dim(field_of(obj, "ambient_dim", "")?, "ambient_dim")?;
    let m = as_dim(field_of(obj, "dim", "")?, "dim")?;
    let subspaces = as_array(field_of(obj, "subspaces", "")?, "subspaces")?;
    let bases = subspaces
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let location = format!("subspace {i}");
            let basis = field_of(as_object(s, &location)?, "basis", &location)?;
            as_matrix(basis, k, m, &location)
        })
        .collect::<Result<Vec<_>>>()?;
    Packing::from_bases(field, bases, tol)
}

/// Parses and validates unitary list file text.
pub fn unitaries_from_str(text: &str, tol: Tolerance) -> Result<UnitaryList> {
    let doc = parse_document(text)?;
    let obj = as_object(&doc, "")?;
    let field = as_field(field_of(obj, "field", "")?)?;
    let r = as_dim(field_of(obj, "size", "")?, "size")?;
    let matrices = as_array(field_of(obj, "unitaries", "")?, "unitaries")?
        .iter()
        .enumerate()
        .map(|(i, u)| as_matrix(u, r, r, &format!("unitary {i}")))
        .collect::<Result<Vec<_>>>()?;
    UnitaryList::new(field, matrices, tol)
}

fn io_error(path: &Path, source: io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

pub fn read_packing(path: &Path, tol: Tolerance) -> Result<Packing> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    packing_from_str(&text, tol)
}

pub fn write_packing(path: &Path, p: &Packing) -> Result<()> {
    std::fs::write(path, packing_to_string(p)).map_err(|e| io_error(path, e))
}

pub fn read_unitaries(path: &Path, tol: Tolerance) -> Result<UnitaryList> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    unitaries_from_str(&text, tol)
}

pub fn write_unitaries(path: &Path, us: &UnitaryList) -> Result<()> {
    std::fs::write(path, unitaries_to_string(us)).map_err(|e| io_error(path, e))
}

/// serde_json pretty printer with fixed 17-digit floats.
struct FixedDigits(PrettyFormatter<'static>);

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}

/// Serializes any value as pretty JSON with 17-digit floats and a trailing
/// newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, FixedDigits(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .expect("in-memory serialization cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Small-denominator readings of report values, keyed by report field name.
#[derive(Debug, Default, Serialize)]
#[serde(transparent)]
pub struct Fractions(BTreeMap<String, String>);

impl Fractions {
    fn builder(tol: Tolerance) -> FractionBuilder {
        FractionBuilder {
            residual: 10.0 * tol.absolute(),
            map: BTreeMap::new(),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

struct FractionBuilder {
    residual: f64,
    map: BTreeMap<String, String>,
}

impl FractionBuilder {
    fn add(&mut self, key: impl Into<String>, value: Option<f64>) -> &mut Self {
        if let Some(f) = value.and_then(|v| snap(v, 10_000, self.residual)) {
            self.map.insert(key.into(), f.to_string());
        }
        self
    }

    fn finish(&mut self) -> Fractions {
        Fractions(std::mem::take(&mut self.map))
    }
}

#[derive(Debug, Serialize)]
pub struct PairJson {
    pub i: usize,
    pub j: usize,
    pub eigenvalues: Vec<f64>,
    pub cosines: Vec<f64>,
    pub principal_angles: Vec<f64>,
    pub chordal_sq: f64,
}

impl From<&CrossGramSpectrum> for PairJson {
    fn from(s: &CrossGramSpectrum) -> Self {
        PairJson {
            i: s.pair.0,
            j: s.pair.1,
            eigenvalues: s.eigenvalues.clone(),
            cosines: s.cosines.clone(),
            principal_angles: s.principal_angles(),
            chordal_sq: s.chordal_sq,
        }
    }
}

/// Flat JSON view of a [`CertificationReport`]: each property as a boolean
/// next to its value (`null` when absent).
#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub field: FieldTag,
    pub ambient_dim: usize,
    pub dim: usize,
    pub count: usize,
    pub tolerance: f64,
    pub vacuous: bool,
    pub tight: bool,
    pub frame_bound: Option<f64>,
    pub equichordal: bool,
    pub common_chordal_sq: Option<f64>,
    pub strongly_simplicial: bool,
    pub common_spectrum: Option<Vec<f64>>,
    pub equiisoclinic: bool,
    pub alpha: Option<f64>,
    pub min_chordal_sq: f64,
    pub simplex_bound: Option<f64>,
    pub orthoplex_bound: f64,
    pub gerzon: u64,
    pub regime: Regime,
    pub simplex_saturated: bool,
    pub orthoplex_saturated: bool,
    pub fractions: Fractions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<PairJson>>,
}

fn value_of<T: Clone>(v: &Verdict<T>) -> Option<T> {
    v.value().cloned()
}

impl ReportJson {
    pub fn new(
        r: &CertificationReport,
        tol: Tolerance,
        pairs: Option<&[CrossGramSpectrum]>,
    ) -> Self {
        let common_spectrum = value_of(&r.strongly_simplicial);
        let mut fractions = Fractions::builder(tol);
        fractions
            .add("frame_bound", r.tight)
            .add("common_chordal_sq", value_of(&r.equichordal))
            .add("alpha", value_of(&r.equiisoclinic))
            .add("min_chordal_sq", Some(r.min_chordal_sq))
            .add("simplex_bound", r.simplex_bound)
            .add("orthoplex_bound", Some(r.orthoplex_bound));
        for (l, &v) in common_spectrum.iter().flatten().enumerate() {
            fractions.add(format!("common_spectrum[{l}]"), Some(v));
        }
        ReportJson {
            field: r.field,
            ambient_dim: r.ambient_dim,
            dim: r.dim,
            count: r.count,
            tolerance: tol.absolute(),
            vacuous: r.vacuous,
            tight: r.is_tight(),
            frame_bound: r.tight,
            equichordal: r.is_equichordal(),
            common_chordal_sq: value_of(&r.equichordal),
            strongly_simplicial: r.is_strongly_simplicial(),
            common_spectrum,
            equiisoclinic: r.is_equiisoclinic(),
            alpha: value_of(&r.equiisoclinic),
            min_chordal_sq: r.min_chordal_sq,
            simplex_bound: r.simplex_bound,
            orthoplex_bound: r.orthoplex_bound,
            gerzon: r.gerzon,
            regime: r.regime,
            simplex_saturated: r.simplex_saturated,
            orthoplex_saturated: r.orthoplex_saturated,
            fractions: fractions.finish(),
            pairs: pairs.map(|ps| ps.iter().map(PairJson::from).collect()),
        }
    }
}

/// The bounds and regime for given parameters.
#[derive(Debug, Serialize)]
pub struct BoundsJson {
    pub field: FieldTag,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub gerzon: u64,
    pub simplex: Option<f64>,
    pub orthoplex: f64,
    pub regime: Regime,
    pub fractions: Fractions,
}

impl BoundsJson {
    pub fn new(field: FieldTag, k: usize, m: usize, n: usize, tol: Tolerance) -> Result<Self> {
        use crate::analysis::{gerzon_bound, orthoplex_bound, regime, simplex_bound};
        if n == 0 {
            return Err(Error::Domain("need n >= 1".into()));
        }
        let orthoplex = orthoplex_bound(k, m)?;
        let simplex = if n >= 2 {
            Some(simplex_bound(k, m, n)?)
        } else {
            None
        };
        let fractions = Fractions::builder(tol)
            .add("simplex", simplex)
            .add("orthoplex", Some(orthoplex))
            .finish();
        Ok(BoundsJson {
            field,
            k,
            m,
            n,
            gerzon: gerzon_bound(field, k),
            simplex,
            orthoplex,
            regime: regime(field, k, n),
            fractions,
        })
    }
}
