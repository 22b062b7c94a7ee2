//! JSON algebra and map documents.
//!
//! ```json
//! { "field": "Q", "labels": ["x", "y"], "kernel": ["y"],
//!   "products": [ {"l": "x", "r": "x", "out": "y", "c": "1"} ] }
//! ```
//!
//! Over `Q` coefficients are strings `"a"` or `"a/b"`; over `{"p": 5}` they
//! are integers in `0..p`. Omitted products are zero. Without `"kernel"` the
//! split is inferred from the computed kernel ideal.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, BasisSplit, LeibnizAlgebra};
use crate::equivalence::LinearMap;
use crate::scalar::{Field, Scalar};

/// A document problem, anchored to the line of the offending value when
/// that can be determined.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct FormatError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum FieldDoc {
    Name(String),
    Prime { p: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum CoefDoc {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProductDoc {
    l: String,
    r: String,
    out: String,
    c: CoefDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDoc {
    field: FieldDoc,
    labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kernel: Option<Vec<String>>,
    products: Vec<ProductDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    matrix: Vec<Vec<CoefDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Seg {
    Key(String),
    Index(usize),
}

/// Line numbers of every value in a syntactically valid JSON text, keyed by
/// path from the root.
struct Lines(HashMap<Vec<Seg>, usize>);

impl Lines {
    fn scan(text: &str) -> Lines {
        let mut s = Scanner { bytes: text.as_bytes(), pos: 0, line: 1, out: HashMap::new() };
        s.value(&mut Vec::new());
        Lines(s.out)
    }

    /// Line of the deepest recorded prefix of `path`.
    fn find(&self, path: &[Seg]) -> Option<usize> {
        (0..=path.len()).rev().find_map(|n| self.0.get(&path[..n]).copied())
    }
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
    line: usize,
    out: HashMap<Vec<Seg>, usize>,
}

impl Scanner<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
        }
        Some(b)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\r' | b'\n')) {
            self.bump();
        }
    }

    fn string(&mut self) -> String {
        self.bump();
        let start = self.pos;
        while let Some(b) = self.bump() {
            match b {
                b'\\' => {
                    self.bump();
                }
                b'"' => break,
                _ => {}
            }
        }
        let raw = &self.bytes[start..self.pos.saturating_sub(1)];
        serde_json::from_slice::<String>(&[b"\"", raw, b"\""].concat())
            .unwrap_or_else(|_| String::from_utf8_lossy(raw).into_owned())
    }

    fn value(&mut self, path: &mut Vec<Seg>) {
        self.skip_ws();
        self.out.insert(path.clone(), self.line);
        match self.peek() {
            Some(b'{') => {
                self.bump();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(b'"') => {
                            let key = self.string();
                            self.skip_ws();
                            self.bump(); // ':'
                            path.push(Seg::Key(key));
                            self.value(path);
                            path.pop();
                        }
                        Some(b',') => {
                            self.bump();
                        }
                        _ => {
                            self.bump();
                            break;
                        }
                    }
                }
            }
            Some(b'[') => {
                self.bump();
                let mut i = 0;
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(b']') | None => {
                            self.bump();
                            break;
                        }
                        Some(b',') => {
                            self.bump();
                        }
                        _ => {
                            path.push(Seg::Index(i));
                            self.value(path);
                            path.pop();
                            i += 1;
                        }
                    }
                }
            }
            Some(b'"') => {
                self.string();
            }
            _ => {
                while !matches!(self.peek(), None | Some(b',' | b']' | b'}' | b' ' | b'\t' | b'\r' | b'\n')) {
                    self.bump();
                }
            }
        }
    }
}

fn key(k: &str) -> Seg {
    Seg::Key(k.to_string())
}

struct Anchor<'a> {
    lines: &'a Lines,
}

impl Anchor<'_> {
    fn err(&self, path: &[Seg], message: impl Into<String>) -> FormatError {
        FormatError { line: self.lines.find(path), message: message.into() }
    }
}

fn syntax_error(e: serde_json::Error) -> FormatError {
    FormatError {
        line: (e.line() > 0).then_some(e.line()),
        message: e.to_string(),
    }
}

fn parse_field(doc: &FieldDoc) -> Result<Field, String> {
    match doc {
        FieldDoc::Name(n) if n == "Q" => Ok(Field::Rationals),
        FieldDoc::Name(n) => Err(format!("unknown field `{n}`, expected \"Q\" or {{\"p\": <prime>}}")),
        FieldDoc::Prime { p } => Field::prime(*p).map_err(|e| e.to_string()),
    }
}

fn parse_coef(field: Field, c: &CoefDoc) -> Result<Scalar, String> {
    match (field, c) {
        (Field::Rationals, CoefDoc::Text(t)) => field.parse(t).map_err(|e| e.to_string()),
        (Field::Rationals, CoefDoc::Int(i)) => Err(format!("coefficient {i} over Q must be a string such as \"{i}\"")),
        (Field::Prime(p), CoefDoc::Int(i)) => {
            if (0..p as i64).contains(i) {
                Ok(field.from_i64(*i))
            } else {
                Err(format!("coefficient {i} is outside 0..{p}"))
            }
        }
        (Field::Prime(_), CoefDoc::Text(t)) => Err(format!("coefficient \"{t}\" over {field} must be an integer")),
    }
}

fn coef_doc(s: &Scalar) -> CoefDoc {
    match s.residue() {
        Some(r) => CoefDoc::Int(r as i64),
        None => CoefDoc::Text(s.to_string()),
    }
}

fn field_doc(field: Field) -> FieldDoc {
    match field {
        Field::Rationals => FieldDoc::Name("Q".into()),
        Field::Prime(p) => FieldDoc::Prime { p },
    }
}

/// Parses an algebra document and validates the Leibniz identity and the
/// split, given or inferred.
pub fn parse_algebra(text: &str) -> Result<(LeibnizAlgebra, BasisSplit), FormatError> {
    let doc: AlgebraDoc = serde_json::from_str(text).map_err(syntax_error)?;
    let lines = Lines::scan(text);
    let at = Anchor { lines: &lines };

    let field = parse_field(&doc.field).map_err(|m| at.err(&[key("field")], m))?;
    let mut index = HashMap::new();
    for (i, l) in doc.labels.iter().enumerate() {
        if l.is_empty() {
            return Err(at.err(&[key("labels"), Seg::Index(i)], "empty label"));
        }
        if index.insert(l.as_str(), i).is_some() {
            return Err(at.err(&[key("labels"), Seg::Index(i)], format!("duplicate label `{l}`")));
        }
    }
    let n = doc.labels.len();
    let mut tensor = vec![field.zero(); n * n * n];
    let mut seen = BTreeSet::new();
    for (pi, p) in doc.products.iter().enumerate() {
        let path = [key("products"), Seg::Index(pi)];
        let lookup = |name: &str, l: &str| {
            index.get(l).copied().ok_or_else(|| {
                at.err(&[path[0].clone(), path[1].clone(), key(name)], format!("unknown label `{l}`"))
            })
        };
        let (i, j, k) = (lookup("l", &p.l)?, lookup("r", &p.r)?, lookup("out", &p.out)?);
        if !seen.insert((i, j, k)) {
            return Err(at.err(&path, format!("[{}, {}] -> {} listed twice", p.l, p.r, p.out)));
        }
        let c = parse_coef(field, &p.c).map_err(|m| at.err(&[path[0].clone(), path[1].clone(), key("c")], m))?;
        tensor[(i * n + j) * n + k] = c;
    }

    let algebra = LeibnizAlgebra::new(field, doc.labels.clone(), tensor).map_err(|e| match e {
        AlgebraError::NotLeibniz { .. } => at.err(&[key("products")], e.to_string()),
        other => at.err(&[], other.to_string()),
    })?;

    let split = match &doc.kernel {
        Some(ks) => {
            let mut idx = Vec::with_capacity(ks.len());
            for (i, l) in ks.iter().enumerate() {
                let k = index
                    .get(l.as_str())
                    .copied()
                    .ok_or_else(|| at.err(&[key("kernel"), Seg::Index(i)], format!("unknown label `{l}`")))?;
                idx.push(k);
            }
            let split = BasisSplit::new(n, idx).map_err(|e| at.err(&[key("kernel")], e.to_string()))?;
            if !algebra.validate_split(&split) {
                return Err(at.err(&[key("kernel")], "these basis vectors do not span the kernel ideal"));
            }
            split
        }
        None => BasisSplit::infer(&algebra).map_err(|e| at.err(&[], e.to_string()))?,
    };
    Ok((algebra, split))
}

/// Serializes an algebra with its split. Products are listed in basis
/// order of `(l, r, out)`; output is byte-stable.
pub fn algebra_to_json(algebra: &LeibnizAlgebra, split: Option<&BasisSplit>) -> String {
    let n = algebra.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, c) in algebra.basis_product_support(i, j) {
                products.push(ProductDoc {
                    l: algebra.label(i).to_string(),
                    r: algebra.label(j).to_string(),
                    out: algebra.label(*k).to_string(),
                    c: coef_doc(c),
                });
            }
        }
    }
    let doc = AlgebraDoc {
        field: field_doc(algebra.field()),
        labels: algebra.labels().to_vec(),
        kernel: split.map(|s| s.kernel().iter().map(|&k| algebra.label(k).to_string()).collect()),
        products,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable document");
    s.push('\n');
    s
}

/// Parses a map document over `field`. `matrix[i]` is the image of `v_i`.
pub fn parse_map(text: &str, field: Field) -> Result<LinearMap, FormatError> {
    let doc: MapDoc = serde_json::from_str(text).map_err(syntax_error)?;
    let lines = Lines::scan(text);
    let at = Anchor { lines: &lines };
    let mut columns = Vec::with_capacity(doc.matrix.len());
    for (i, col) in doc.matrix.iter().enumerate() {
        let mut c = Vec::with_capacity(col.len());
        for (j, x) in col.iter().enumerate() {
            let path = [key("matrix"), Seg::Index(i), Seg::Index(j)];
            c.push(parse_coef(field, x).map_err(|m| at.err(&path, m))?);
        }
        columns.push(c);
    }
    LinearMap::from_columns(field, columns).map_err(|e| at.err(&[key("matrix")], e.to_string()))
}

pub fn map_to_json(f: &LinearMap) -> String {
    let doc = MapDoc {
        matrix: f.columns().iter().map(|c| c.iter().map(coef_doc).collect()).collect(),
    };
    let mut s = serde_json::to_string(&doc).expect("serializable document");
    s.push('\n');
    s
}
