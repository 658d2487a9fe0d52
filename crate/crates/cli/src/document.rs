//! JSON and CSV documents for node sets and matrices.
//!
//! Scalars are always strings (`"p/q"` or a decimal) so exact values survive
//! the round trip.

use std::fmt;
use std::str::FromStr;

use calogero_core::{Matrix, NodeSet, Scalar, ScalarMode};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MatrixKind {
    X,
    B,
    Z,
    D,
    #[serde(rename = "qD")]
    QD,
    N,
    #[serde(rename = "Nq")]
    NQ,
    V,
    C,
    #[serde(rename = "operator")]
    Operator,
}

impl MatrixKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::X => "X",
            MatrixKind::B => "B",
            MatrixKind::Z => "Z",
            MatrixKind::D => "D",
            MatrixKind::QD => "qD",
            MatrixKind::N => "N",
            MatrixKind::NQ => "Nq",
            MatrixKind::V => "V",
            MatrixKind::C => "C",
            MatrixKind::Operator => "operator",
        }
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl From<Mode> for ScalarMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => ScalarMode::Exact,
            Mode::Float => ScalarMode::Float,
        }
    }
}

impl From<ScalarMode> for Mode {
    fn from(m: ScalarMode) -> Self {
        match m {
            ScalarMode::Exact => Mode::Exact,
            ScalarMode::Float => Mode::Float,
        }
    }
}

/// `{"nodes": [...], "mode": "exact"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodesDocument {
    pub nodes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
}

impl NodesDocument {
    pub fn from_nodes<S: Scalar>(ns: &NodeSet<S>) -> Self {
        NodesDocument {
            nodes: ns.nodes().iter().map(ToString::to_string).collect(),
            mode: Some(S::MODE.into()),
        }
    }

    pub fn to_nodes<S: Scalar>(&self) -> Result<NodeSet<S>, CliError> {
        let values = parse_scalars(&self.nodes)?;
        Ok(NodeSet::new(values)?)
    }

    /// Accepts a nodes object, a bare JSON array of strings or numbers, or the
    /// inline form `[1, 2, 4]`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| CliError::Invalid(format!("nodes document: {e}")))?;
        match value {
            serde_json::Value::Array(items) => Ok(NodesDocument {
                nodes: items
                    .into_iter()
                    .map(json_scalar_text)
                    .collect::<Result<_, _>>()?,
                mode: None,
            }),
            serde_json::Value::Object(mut map) => {
                let nodes = match map.remove("nodes") {
                    Some(serde_json::Value::Array(items)) => items
                        .into_iter()
                        .map(json_scalar_text)
                        .collect::<Result<_, _>>()?,
                    _ => {
                        return Err(CliError::Invalid(
                            "nodes document needs a \"nodes\" array".into(),
                        ))
                    }
                };
                let mode = match map.remove("mode") {
                    Some(m) => Some(
                        serde_json::from_value(m)
                            .map_err(|e| CliError::Invalid(format!("nodes document: {e}")))?,
                    ),
                    None => None,
                };
                Ok(NodesDocument { nodes, mode })
            }
            _ => Err(CliError::Invalid(
                "nodes document must be an array or an object".into(),
            )),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("serializable");
        s.push('\n');
        s
    }
}

fn json_scalar_text(v: serde_json::Value) -> Result<String, CliError> {
    match v {
        serde_json::Value::String(s) => Ok(s),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        other => Err(CliError::Invalid(format!("expected a scalar, found {other}"))),
    }
}

pub fn parse_scalars<S: Scalar>(texts: &[String]) -> Result<Vec<S>, CliError> {
    texts
        .iter()
        .map(|t| S::parse_literal(t).map_err(CliError::from))
        .collect()
}

/// A serialized matrix together with the context it was built in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub kind: MatrixKind,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub nodes: Vec<String>,
    /// Row-major, `n * n` scalar strings.
    pub entries: Vec<String>,
    pub mode: Mode,
}

impl MatrixDocument {
    pub fn new<S: Scalar>(
        kind: MatrixKind,
        ns: &NodeSet<S>,
        q: Option<&S>,
        m: &Matrix<S>,
    ) -> Self {
        MatrixDocument {
            kind,
            n: m.rows(),
            q: q.map(ToString::to_string),
            nodes: ns.nodes().iter().map(ToString::to_string).collect(),
            entries: m.as_slice().iter().map(ToString::to_string).collect(),
            mode: S::MODE.into(),
        }
    }

    pub fn matrix<S: Scalar>(&self) -> Result<Matrix<S>, CliError> {
        if self.entries.len() != self.n * self.n {
            return Err(CliError::Invalid(format!(
                "matrix document has {} entries, expected n^2 = {}",
                self.entries.len(),
                self.n * self.n
            )));
        }
        Ok(Matrix::new(self.n, self.n, parse_scalars(&self.entries)?)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("matrix document: {e}")))
    }
}

/// `n` rows of `n` comma-separated scalar strings, no header.
pub fn matrix_to_csv<S: Scalar>(m: &Matrix<S>) -> String {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    for r in 0..m.rows() {
        w.write_record(m.row(r).iter().map(ToString::to_string))
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}

pub fn matrix_from_csv<S: Scalar>(text: &str) -> Result<Matrix<S>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<S>> = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| CliError::Invalid(format!("csv: {e}")))?;
        let row = record
            .iter()
            .map(|t| S::parse_literal(t).map_err(CliError::from))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Invalid(format!("csv matrix is not {n}x{n}")));
    }
    Ok(Matrix::new(n, n, rows.into_iter().flatten().collect())?)
}

impl FromStr for MatrixKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Ok(match s {
            "X" => MatrixKind::X,
            "B" => MatrixKind::B,
            "Z" => MatrixKind::Z,
            "D" => MatrixKind::D,
            "qD" => MatrixKind::QD,
            "N" => MatrixKind::N,
            "Nq" => MatrixKind::NQ,
            "V" => MatrixKind::V,
            "C" => MatrixKind::C,
            "operator" => MatrixKind::Operator,
            other => return Err(CliError::Invalid(format!("unknown matrix kind {other:?}"))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use calogero_core::calogero::d_matrix_bzb;
    use calogero_core::Rational;

    fn nodes() -> NodeSet<Rational> {
        NodesDocument::parse("[\"0\", \"1/2\", \"-3/2\"]")
            .unwrap()
            .to_nodes()
            .unwrap()
    }

    #[test]
    fn nodes_document_forms() {
        let inline = NodesDocument::parse("[1, 2, 4]").unwrap();
        assert_eq!(inline.nodes, ["1", "2", "4"]);
        let obj = NodesDocument::parse(r#"{"nodes":["0","1/2","1"],"mode":"exact"}"#).unwrap();
        assert_eq!(obj.mode, Some(Mode::Exact));
        assert_eq!(obj.to_json(), "{\"nodes\":[\"0\",\"1/2\",\"1\"],\"mode\":\"exact\"}\n");
        assert!(NodesDocument::parse("{\"mode\":\"exact\"}").is_err());
        assert!(NodesDocument::parse("[true]").is_err());
        assert!(NodesDocument::parse("[\"1\", \"1\"]").unwrap().to_nodes::<Rational>().is_err());
    }

    #[test]
    fn matrix_json_roundtrip_is_string_exact() {
        let ns = nodes();
        let d = d_matrix_bzb(&ns);
        let doc = MatrixDocument::new(MatrixKind::D, &ns, None, &d);
        let text = doc.to_json();
        assert!(text.contains("\"kind\": \"D\""));
        let back = MatrixDocument::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.matrix::<Rational>().unwrap(), d);
    }

    #[test]
    fn kinds_serialize_by_name() {
        for kind in ["X", "B", "Z", "D", "qD", "N", "Nq", "V", "C", "operator"] {
            let k: MatrixKind = kind.parse().unwrap();
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{kind}\""));
        }
    }

    #[test]
    fn csv_and_json_agree() {
        let ns = nodes();
        let d = d_matrix_bzb(&ns);
        let csv = matrix_to_csv(&d);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.ends_with('\n'));
        let from_csv: Matrix<Rational> = matrix_from_csv(&csv).unwrap();
        let from_json = MatrixDocument::from_json(&MatrixDocument::new(MatrixKind::D, &ns, None, &d).to_json())
            .unwrap()
            .matrix::<Rational>()
            .unwrap();
        assert_eq!(from_csv, from_json);
        assert!(matrix_from_csv::<Rational>("1,2\n3\n").is_err());
    }

    #[test]
    fn entry_count_checked() {
        let mut doc = MatrixDocument::new(MatrixKind::D, &nodes(), None, &d_matrix_bzb(&nodes()));
        doc.entries.pop();
        assert!(doc.matrix::<Rational>().is_err());
    }
}
