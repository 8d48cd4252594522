//! Network file parsers (whitespace edge lists and a GML subset) and CSV writers.
//!
//! Edge-list grammar, one record per line:
//!
//! ```text
//! line    := blank | comment | edge
//! comment := ws* '#' any*
//! edge    := ws* label ws+ label (ws+ weight)? ws*
//! ```
//!
//! Labels are arbitrary tokens without whitespace or commas. Vertices are
//! numbered in order of first appearance. A missing weight means 1.0.
//!
//! The GML reader understands `graph [ ... ]` with `node [ id N ]` and
//! `edge [ source N target N value X ]` entries. Other keys, at any depth, are
//! parsed and ignored. The GML `id` becomes the vertex label.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use crate::centrality::CentralityVector;
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetworkFormat {
    EdgeList,
    Gml,
}

impl NetworkFormat {
    /// `.gml` (any case) selects GML, anything else the edge-list reader.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("gml") => NetworkFormat::Gml,
            _ => NetworkFormat::EdgeList,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NetworkFile {
    pub format: NetworkFormat,
    pub path: PathBuf,
    /// True when the file carried at least one explicit edge weight.
    pub declared_weighted: bool,
}

impl NetworkFile {
    /// Opens and parses `path`. The format is inferred from the extension
    /// unless `format` overrides it.
    pub fn read(path: impl AsRef<Path>, format: Option<NetworkFormat>) -> Result<(Self, Graph)> {
        let path = path.as_ref();
        let format = format.unwrap_or_else(|| NetworkFormat::from_path(path));
        let file = File::open(path)?;
        let (graph, declared_weighted) = match format {
            NetworkFormat::EdgeList => edge_list(BufReader::new(file))?,
            NetworkFormat::Gml => gml(BufReader::new(file))?,
        };
        let meta = NetworkFile {
            format,
            path: path.to_path_buf(),
            declared_weighted,
        };
        Ok((meta, graph))
    }
}

pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    edge_list(reader).map(|(g, _)| g)
}

fn edge_list<R: BufRead>(reader: R) -> Result<(Graph, bool)> {
    let mut graph = Graph::new(0);
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut weighted = false;

    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = body.split_whitespace().collect();
        if !(2..=3).contains(&tokens.len()) {
            return Err(Error::parse(
                lineno,
                format!("expected `u v` or `u v w`, found {} tokens", tokens.len()),
            ));
        }
        let w = match tokens.get(2) {
            Some(tok) => {
                weighted = true;
                let w: f64 = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("non-numeric weight {tok:?}")))?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::parse(
                        lineno,
                        format!("weight must be > 0, got {tok}"),
                    ));
                }
                w
            }
            None => 1.0,
        };
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&tokens[..2]) {
            if tok.contains(',') {
                return Err(Error::parse(
                    lineno,
                    format!("label {tok:?} contains a comma"),
                ));
            }
            *slot = match index.get(*tok) {
                Some(&v) => v,
                None => {
                    let v = graph.add_vertex(*tok);
                    index.insert(tok.to_string(), v);
                    v
                }
            };
        }
        graph
            .add_edge(ends[0], ends[1], w)
            .map_err(|e| Error::parse(lineno, e.to_string()))?;
    }
    Ok((graph, weighted))
}

/// Writes `u v` lines, or `u v w` for edges whose weight is not 1.0.
///
/// Weights use Rust's shortest round-trip float formatting, so parsing the
/// output reproduces the graph exactly. Isolated vertices are not representable.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    for (u, v, w) in g.edges() {
        if w == 1.0 {
            writeln!(out, "{} {}", g.label(u), g.label(v))?;
        } else {
            writeln!(out, "{} {} {}", g.label(u), g.label(v), w)?;
        }
    }
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// GML

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Key(String),
    Int(i64),
    Real(f64),
    Str(String),
    Open,
    Close,
}

#[derive(Debug)]
enum Value {
    Int(i64),
    Real(f64),
    Str(#[allow(dead_code)] String),
    List(Vec<Entry>),
}

#[derive(Debug)]
struct Entry {
    key: String,
    value: Value,
    line: usize,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut line = 1;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'[' => {
                tokens.push((Token::Open, line));
                i += 1;
            }
            b']' => {
                tokens.push((Token::Close, line));
                i += 1;
            }
            b'"' => {
                let start_line = line;
                let start = i + 1;
                i = start;
                while i < bytes.len() && bytes[i] != b'"' {
                    if bytes[i] == b'\n' {
                        line += 1;
                    }
                    i += 1;
                }
                if i >= bytes.len() {
                    return Err(Error::parse(start_line, "unterminated string"));
                }
                tokens.push((Token::Str(text[start..i].to_string()), start_line));
                i += 1;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push((Token::Key(text[start..i].to_string()), line));
            }
            c if c.is_ascii_digit() || matches!(c, b'-' | b'+' | b'.') => {
                let start = i;
                i += 1;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || matches!(bytes[i], b'.' | b'-' | b'+'))
                {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = if let Ok(n) = word.parse::<i64>() {
                    Token::Int(n)
                } else if let Ok(x) = word.parse::<f64>() {
                    Token::Real(x)
                } else {
                    return Err(Error::parse(line, format!("malformed number {word:?}")));
                };
                tokens.push((tok, line));
            }
            _ => {
                return Err(Error::parse(
                    line,
                    format!("unexpected character {:?}", c as char),
                ))
            }
        }
    }
    Ok(tokens)
}

struct GmlParser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl GmlParser {
    fn last_line(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.1)
    }

    fn list(&mut self, open_line: Option<usize>) -> Result<Vec<Entry>> {
        let mut entries = Vec::new();
        loop {
            let Some((tok, line)) = self.tokens.get(self.pos).cloned() else {
                return match open_line {
                    Some(l) => Err(Error::parse(l, "unclosed '['")),
                    None => Ok(entries),
                };
            };
            self.pos += 1;
            let key = match tok {
                Token::Key(k) => k,
                Token::Close if open_line.is_some() => return Ok(entries),
                Token::Close => return Err(Error::parse(line, "unmatched ']'")),
                other => {
                    return Err(Error::parse(
                        line,
                        format!("expected a key, found {other:?}"),
                    ))
                }
            };
            let Some((tok, vline)) = self.tokens.get(self.pos).cloned() else {
                return Err(Error::parse(
                    self.last_line(),
                    format!("key `{key}` has no value"),
                ));
            };
            self.pos += 1;
            let value = match tok {
                Token::Int(n) => Value::Int(n),
                Token::Real(x) => Value::Real(x),
                Token::Str(s) => Value::Str(s),
                Token::Open => Value::List(self.list(Some(vline))?),
                other => {
                    return Err(Error::parse(
                        vline,
                        format!("key `{key}` has invalid value {other:?}"),
                    ))
                }
            };
            entries.push(Entry { key, value, line });
        }
    }
}

pub fn parse_gml<R: Read>(reader: R) -> Result<Graph> {
    gml(reader).map(|(g, _)| g)
}

fn int_field(entries: &[Entry], key: &str) -> Option<i64> {
    entries
        .iter()
        .rev()
        .find_map(|e| match (&e.value, e.key == key) {
            (Value::Int(n), true) => Some(*n),
            _ => None,
        })
}

fn gml<R: Read>(mut reader: R) -> Result<(Graph, bool)> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    let mut parser = GmlParser {
        tokens: tokenize(&text)?,
        pos: 0,
    };
    let top = parser.list(None)?;
    let body = top
        .iter()
        .find_map(|e| match (&e.value, e.key == "graph") {
            (Value::List(items), true) => Some(items),
            _ => None,
        })
        .ok_or_else(|| Error::parse(1, "no `graph [ ... ]` block"))?;

    if int_field(body, "directed") == Some(1) {
        log::warn!("GML declares `directed 1`; edges are stored undirected");
    }

    let mut graph = Graph::new(0);
    let mut index: HashMap<i64, usize> = HashMap::new();
    for entry in body.iter().filter(|e| e.key == "node") {
        let Value::List(fields) = &entry.value else {
            return Err(Error::parse(entry.line, "`node` must be a list"));
        };
        let id = int_field(fields, "id")
            .ok_or_else(|| Error::parse(entry.line, "node without integer `id`"))?;
        if index.contains_key(&id) {
            return Err(Error::parse(entry.line, format!("duplicate node id {id}")));
        }
        index.insert(id, graph.add_vertex(id.to_string()));
    }

    let mut weighted = false;
    for entry in body.iter().filter(|e| e.key == "edge") {
        let Value::List(fields) = &entry.value else {
            return Err(Error::parse(entry.line, "`edge` must be a list"));
        };
        let mut ends = [0usize; 2];
        for (slot, key) in ends.iter_mut().zip(["source", "target"]) {
            let id = int_field(fields, key)
                .ok_or_else(|| Error::parse(entry.line, format!("edge without integer `{key}`")))?;
            *slot = *index.get(&id).ok_or_else(|| {
                Error::parse(entry.line, format!("edge references undeclared node {id}"))
            })?;
        }
        let w = match fields
            .iter()
            .rev()
            .find(|f| f.key == "value")
            .map(|f| &f.value)
        {
            Some(Value::Int(n)) => {
                weighted = true;
                *n as f64
            }
            Some(Value::Real(x)) => {
                weighted = true;
                *x
            }
            Some(_) => return Err(Error::parse(entry.line, "edge `value` must be numeric")),
            None => 1.0,
        };
        graph
            .add_edge(ends[0], ends[1], w)
            .map_err(|e| Error::parse(entry.line, e.to_string()))?;
    }
    Ok((graph, weighted))
}

// ---------------------------------------------------------------------------
// CSV

/// Formats `x` with `sig` significant digits, like C's `%.{sig}g`.
pub fn format_significant(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", sig.saturating_sub(1), x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= sig as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes `vertex,<name1>,...` followed by one row per vertex in index order.
pub fn write_centrality_csv<W: Write>(
    g: &Graph,
    columns: &[CentralityVector],
    mut out: W,
) -> Result<()> {
    let n = g.vertex_count();
    for col in columns {
        if col.scores.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: col.scores.len(),
            });
        }
        if let Some((vertex, &value)) = col.scores.iter().enumerate().find(|(_, s)| !s.is_finite())
        {
            return Err(Error::NonFinite {
                column: col.name().to_string(),
                vertex,
                value,
            });
        }
    }
    for label in g.labels() {
        check_label(label)?;
    }

    let mut header = String::from("vertex");
    for col in columns {
        header.push(',');
        header.push_str(col.name());
    }
    writeln!(out, "{header}")?;
    for v in 0..n {
        let mut row = g.label(v).to_string();
        for col in columns {
            row.push(',');
            row.push_str(&format_significant(col.scores[v], 10));
        }
        writeln!(out, "{row}")?;
    }
    out.flush()?;
    Ok(())
}

/// Writes `u,v,psi_bar` rows for the given edge scores.
pub fn write_edge_scores_csv<W: Write>(
    g: &Graph,
    scores: &[(usize, usize, f64)],
    mut out: W,
) -> Result<()> {
    writeln!(out, "u,v,psi_bar")?;
    for &(u, v, s) in scores {
        writeln!(
            out,
            "{},{},{}",
            g.label(u),
            g.label(v),
            format_significant(s, 10)
        )?;
    }
    out.flush()?;
    Ok(())
}

fn check_label(label: &str) -> Result<()> {
    if label.is_empty() || label.contains(',') || label.contains(char::is_whitespace) {
        Err(Error::InvalidLabel(label.to_string()))
    } else {
        Ok(())
    }
}

/// Columns read back from a centrality CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityTable {
    pub labels: Vec<String>,
    pub columns: Vec<(String, Vec<f64>)>,
}

impl CentralityTable {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }
}

/// Reads a file produced by [`write_centrality_csv`].
pub fn read_centrality_csv<R: BufRead>(reader: R) -> Result<CentralityTable> {
    let mut lines = reader.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, line)) => {
                let line = line?;
                if !line.trim().is_empty() {
                    break line;
                }
            }
            None => return Err(Error::parse(1, "empty CSV")),
        }
    };
    let names: Vec<&str> = header.trim().split(',').collect();
    if names.first() != Some(&"vertex") {
        return Err(Error::parse(1, "header must start with `vertex`"));
    }
    let mut table = CentralityTable {
        labels: Vec::new(),
        columns: names[1..]
            .iter()
            .map(|n| (n.to_string(), Vec::new()))
            .collect(),
    };
    for (i, line) in lines {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != names.len() {
            return Err(Error::parse(
                i + 1,
                format!("expected {} fields, found {}", names.len(), fields.len()),
            ));
        }
        table.labels.push(fields[0].to_string());
        for (col, field) in table.columns.iter_mut().zip(&fields[1..]) {
            let x: f64 = field
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("non-numeric score {field:?}")))?;
            col.1.push(x);
        }
    }
    Ok(table)
}
