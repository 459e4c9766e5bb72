//! JSON file formats.
//!
//! Network files list every stored value under the set of node labels it
//! belongs to:
//!
//! ```json
//! {
//!   "order": 1,
//!   "nodes": ["a", "b"],
//!   "class": "proximity",
//!   "epsilon": 0.01,
//!   "values": [
//!     { "key": ["a"], "value": 0.49 },
//!     { "key": ["a", "b"], "value": 0.28 },
//!     { "key": ["b"], "value": 0.39 }
//!   ]
//! }
//! ```
//!
//! Keys may list labels in any order; the writer sorts labels within a key
//! and keys among themselves, so equal networks produce identical bytes.
//! An optional `"relaxed": true` accepts `epsilon = 0`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::distance::{Bottleneck, DistanceMode, DistanceReport, OrderResult};
use crate::error::{Error, Result};
use crate::network::{HighOrderNetwork, NetworkClass};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum ClassName {
    General,
    Dissimilarity,
    Proximity,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    key: Vec<String>,
    value: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkFile {
    order: usize,
    nodes: Vec<String>,
    class: ClassName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    relaxed: bool,
    values: Vec<Entry>,
}

pub(crate) fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io { context: format!("reading {}", path.display()), source })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io { context: format!("writing {}", path.display()), source })
}

pub fn network_from_json(text: &str) -> Result<HighOrderNetwork<f64>> {
    let file: NetworkFile =
        serde_json::from_str(text).map_err(|source| Error::Json { context: "network file".into(), source })?;
    let class = match (file.class, file.epsilon) {
        (ClassName::General, _) => NetworkClass::General,
        (_, None) => return Err(Error::Format(format!("{:?} network without epsilon", file.class))),
        (ClassName::Dissimilarity, Some(epsilon)) => NetworkClass::Dissimilarity { epsilon },
        (ClassName::Proximity, Some(epsilon)) => NetworkClass::Proximity { epsilon },
    };
    let mut net = HighOrderNetwork::new(file.nodes, file.order, class)?.with_relaxed(file.relaxed);
    for entry in file.values {
        let key = net.key_from_labels(&entry.key)?;
        if entry.key.len() != key.len() {
            return Err(Error::Format(format!("key {:?} repeats a node", entry.key)));
        }
        if key.len() > net.order() + 1 {
            return Err(Error::KeyTooLarge(entry.key));
        }
        if !entry.value.is_finite() {
            return Err(Error::NonFinite { key: entry.key, value: entry.value });
        }
        if net.value(&key).is_some() {
            return Err(Error::DuplicateKey(net.key_labels(&key)));
        }
        net.set(&key, entry.value);
    }
    if let Some(key) = net.missing_keys().first() {
        return Err(Error::MissingValue(net.key_labels(key)));
    }
    Ok(net)
}

pub fn network_to_json<T: Scalar>(net: &HighOrderNetwork<T>) -> String {
    let mut values: Vec<Entry> = net
        .entries()
        .filter_map(|(key, v)| {
            let mut labels = net.key_labels(&key);
            labels.sort();
            v.map(|v| Entry { key: labels, value: v.as_f64() })
        })
        .collect();
    values.sort_by(|a, b| a.key.cmp(&b.key));
    let (class, epsilon) = match net.class() {
        NetworkClass::General => (ClassName::General, None),
        NetworkClass::Dissimilarity { epsilon } => (ClassName::Dissimilarity, Some(epsilon.as_f64())),
        NetworkClass::Proximity { epsilon } => (ClassName::Proximity, Some(epsilon.as_f64())),
    };
    let file = NetworkFile {
        order: net.order(),
        nodes: net.labels().to_vec(),
        class,
        epsilon,
        relaxed: net.relaxed(),
        values,
    };
    let mut text = serde_json::to_string_pretty(&file).expect("network serializes");
    text.push('\n');
    text
}

pub fn load_network(path: impl AsRef<Path>) -> Result<HighOrderNetwork<f64>> {
    let path = path.as_ref();
    network_from_json(&read_file(path)?).map_err(|e| match e {
        Error::Json { source, .. } => Error::Json { context: path.display().to_string(), source },
        other => other,
    })
}

pub fn save_network<T: Scalar>(net: &HighOrderNetwork<T>, path: impl AsRef<Path>) -> Result<()> {
    write_file(path.as_ref(), &network_to_json(net))
}

/// Labelled square distance matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
}

impl LabeledMatrix {
    /// Checks shape, symmetry, zero diagonal and nonnegative entries.
    pub fn check(&self) -> Result<()> {
        let n = self.labels.len();
        if self.matrix.len() != n || self.matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidMatrix(format!("expected {n}x{n} entries")));
        }
        for i in 0..n {
            if self.matrix[i][i] != 0.0 {
                return Err(Error::InvalidMatrix(format!("diagonal entry {i} is {}", self.matrix[i][i])));
            }
            for j in 0..n {
                let v = self.matrix[i][j];
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidMatrix(format!("entry ({i}, {j}) is {v}")));
                }
                if v != self.matrix[j][i] {
                    return Err(Error::InvalidMatrix(format!("entries ({i}, {j}) and ({j}, {i}) differ")));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("matrix serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: LabeledMatrix =
            serde_json::from_str(text).map_err(|source| Error::Json { context: "matrix file".into(), source })?;
        m.check()?;
        Ok(m)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&read_file(path.as_ref())?)
    }

    /// Header row of labels, then one row per label.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label");
        for l in &self.labels {
            out.push(',');
            out.push_str(&csv_field(l));
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.matrix) {
            out.push_str(&csv_field(l));
            for v in row {
                out.push_str(&format!(",{v}"));
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn labels_of<T: Scalar>(net: &HighOrderNetwork<T>, nodes: &[usize]) -> Vec<String> {
    nodes.iter().map(|&i| net.labels()[i].clone()).collect()
}

fn bottleneck_json<T: Scalar>(b: &Bottleneck<T>, x: &HighOrderNetwork<T>, y: &HighOrderNetwork<T>) -> Value {
    json!({ "x": labels_of(x, &b.x), "y": labels_of(y, &b.y), "order": b.order, "gap": b.gap.as_f64() })
}

fn correspondence_json<T: Scalar>(r: &OrderResult<T>, x: &HighOrderNetwork<T>, y: &HighOrderNetwork<T>) -> Value {
    r.correspondence.pairs().iter().map(|&(a, b)| json!([x.labels()[a], y.labels()[b]])).collect()
}

fn norm_json(p: crate::distance::PNorm) -> Value {
    match p {
        crate::distance::PNorm::Finite(p) => json!(p),
        crate::distance::PNorm::Infinity => json!("inf"),
    }
}

/// JSON form of a distance report, with nodes given by label.
pub fn report_to_value<T: Scalar>(
    report: &DistanceReport<T>,
    x: &HighOrderNetwork<T>,
    y: &HighOrderNetwork<T>,
) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("mode".into(), json!(report.mode.name()));
    match report.mode {
        DistanceMode::Order(k) => {
            out.insert("k".into(), json!(k));
        }
        DistanceMode::Norm(p) => {
            out.insert("p".into(), norm_json(p));
        }
        DistanceMode::Vector => {}
    }
    out.insert("solver".into(), json!(report.solver.name()));
    if report.mode == DistanceMode::Vector {
        let r = &report.results;
        out.insert("values".into(), r.iter().map(|r| json!(r.value.as_f64())).collect());
        out.insert("correspondences".into(), r.iter().map(|r| correspondence_json(r, x, y)).collect());
        out.insert(
            "bottlenecks".into(),
            r.iter().map(|r| r.bottlenecks.iter().map(|b| bottleneck_json(b, x, y)).collect::<Value>()).collect(),
        );
        if r.iter().all(|r| r.ties.is_some()) {
            out.insert("ties".into(), r.iter().map(|r| json!(r.ties)).collect());
        }
    } else {
        let r = &report.results[0];
        out.insert("value".into(), json!(r.value.as_f64()));
        out.insert("correspondence".into(), correspondence_json(r, x, y));
        out.insert("bottleneck".into(), r.bottlenecks.first().map(|b| bottleneck_json(b, x, y)).unwrap_or(Value::Null));
        out.insert("bottleneck_ties".into(), r.bottlenecks.iter().map(|b| bottleneck_json(b, x, y)).collect());
        if let Some(t) = r.ties {
            out.insert("ties".into(), json!(t));
        }
    }
    out.insert("caveats".into(), report.caveats.iter().map(|c| json!(c.message())).collect());
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{distance, PNorm, Solver};
    use crate::fixtures;

    #[test]
    fn roundtrip_is_byte_stable() {
        let net = fixtures::coauthor_proximity(0.01);
        let text = network_to_json(&net);
        let back = network_from_json(&text).unwrap();
        assert_eq!(back, net);
        assert_eq!(network_to_json(&back), text);
        assert!(!text.contains("relaxed"));
    }

    #[test]
    fn keys_are_canonicalized() {
        let text = r#"{"order":1,"nodes":["b","a"],"class":"general","values":[
            {"key":["a","b"],"value":0.5},{"key":["a"],"value":0.1},{"key":["b"],"value":0.2}]}"#;
        let net = network_from_json(text).unwrap();
        assert_eq!(net.value_by_labels(&["b", "a"]).unwrap(), 0.5);
        assert!(network_to_json(&net).find("\"a\",\n").is_some());
    }

    #[test]
    fn structural_errors() {
        let base = |values: &str| {
            format!(r#"{{"order":1,"nodes":["a","b"],"class":"proximity","epsilon":0.1,"values":[{values}]}}"#)
        };
        let ok = r#"{"key":["a"],"value":0.5},{"key":["b"],"value":0.5},{"key":["a","b"],"value":0.1}"#;
        assert!(network_from_json(&base(ok)).is_ok());
        let missing = r#"{"key":["a"],"value":0.5},{"key":["b"],"value":0.5}"#;
        assert!(matches!(network_from_json(&base(missing)), Err(Error::MissingValue(_))));
        let dup = format!(r#"{ok},{{"key":["b","a"],"value":0.1}}"#);
        assert!(matches!(network_from_json(&base(&dup)), Err(Error::DuplicateKey(_))));
        let unknown = format!(r#"{ok},{{"key":["c"],"value":0.1}}"#);
        assert!(matches!(network_from_json(&base(&unknown)), Err(Error::UnknownNode(_))));
        assert!(matches!(network_from_json("{"), Err(Error::Json { .. })));
        let no_eps = r#"{"order":0,"nodes":["a"],"class":"proximity","values":[{"key":["a"],"value":1}]}"#;
        assert!(matches!(network_from_json(no_eps), Err(Error::Format(_))));
    }

    #[test]
    fn relaxed_flag_roundtrips() {
        let net = fixtures::coauthor_proximity(0.0).with_relaxed(true);
        let text = network_to_json(&net);
        assert!(text.contains("\"relaxed\": true"));
        assert!(network_from_json(&text).unwrap().relaxed());
    }

    #[test]
    fn report_json_shapes() {
        let x = fixtures::uniform_triangle::<f64>();
        let y = fixtures::uniform_edge::<f64>();
        let r = distance(&x, &y, DistanceMode::Order(1), Solver::Exhaustive).unwrap();
        let v = report_to_value(&r, &x, &y);
        assert_eq!(v["mode"], "order");
        assert_eq!(v["value"], 0.0);
        assert!(v["bottleneck"].is_null());
        assert!(!v["caveats"].as_array().unwrap().is_empty());
        let p = fixtures::coauthor_proximity(0.01);
        let q = p.permuted(&[1, 0, 2, 3]).unwrap();
        let r = distance(&p, &q, DistanceMode::Norm(PNorm::Infinity), Solver::BranchAndBound).unwrap();
        assert_eq!(report_to_value(&r, &p, &q)["p"], "inf");
        let r = distance(&p, &q, DistanceMode::Vector, Solver::BranchAndBound).unwrap();
        let v = report_to_value(&r, &p, &q);
        assert_eq!(v["values"].as_array().unwrap().len(), 3);
        assert_eq!(v["correspondences"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn matrix_checks() {
        let good = LabeledMatrix { labels: vec!["a".into(), "b".into()], matrix: vec![vec![0.0, 1.0], vec![1.0, 0.0]] };
        assert!(good.check().is_ok());
        assert_eq!(LabeledMatrix::from_json(&good.to_json()).unwrap(), good);
        assert_eq!(good.to_csv(), "label,a,b\na,0,1\nb,1,0\n");
        let asym = LabeledMatrix { matrix: vec![vec![0.0, 1.0], vec![2.0, 0.0]], ..good.clone() };
        assert!(asym.check().is_err());
        let neg = LabeledMatrix { matrix: vec![vec![0.0, -1.0], vec![-1.0, 0.0]], ..good };
        assert!(neg.check().is_err());
    }
}
