//! Emitters for topograph-shaped trees: JSON, CSV, DOT and SVG.
//!
//! A tree vertex is drawn as a node labeled by the region it introduces (its
//! `top`); the root also shows its `left` and `right` regions. Farey labels
//! come from the primitive vectors of the same regions, so they are identical
//! for every tree rendered at the same depth.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::ser::{SerializeSeq, Serializer};
use serde_json::{json, Value};

use crate::dual::DualInt;
use crate::topograph::{root_vectors, RegionVector, SuperbaseRule};
use crate::tree::{FaceTriple, Tree};

/// Serializes a big integer as a decimal string.
pub fn decimal<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// Serializes a triple as `[left, right, top]` decimal strings.
pub fn decimal_triple<S: Serializer>(t: &FaceTriple<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(3))?;
    for v in t.as_array() {
        seq.serialize_element(&v.to_string())?;
    }
    seq.end()
}

pub fn decimal_triples<S: Serializer>(ts: &[FaceTriple<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(ts.len()))?;
    for t in ts {
        let strings: Vec<String> = t.as_array().iter().map(|v| v.to_string()).collect();
        seq.serialize_element(&strings)?;
    }
    seq.end()
}

/// A value that can sit on a topograph region.
pub trait NodeValue {
    fn label(&self) -> String;
    fn to_json(&self) -> Value;
}

impl NodeValue for BigInt {
    fn label(&self) -> String {
        self.to_string()
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl NodeValue for DualInt {
    fn label(&self) -> String {
        self.to_string()
    }

    fn to_json(&self) -> Value {
        json!({ "re": self.re.to_string(), "sh": self.sh.to_string() })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Labels {
    #[default]
    Values,
    Farey,
    Both,
}

impl std::str::FromStr for Labels {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "values" => Ok(Labels::Values),
            "farey" => Ok(Labels::Farey),
            "both" => Ok(Labels::Both),
            _ => Err(crate::Error::Parse(format!("unknown label mode {s:?}"))),
        }
    }
}

fn vectors_for<T>(tree: &Tree<T>) -> Tree<FaceTriple<RegionVector>> {
    Tree::generate(root_vectors(), tree.depth(), &SuperbaseRule)
}

fn triple_json<T: NodeValue>(t: &FaceTriple<T>) -> Value {
    json!({
        "left": t.left.to_json(),
        "right": t.right.to_json(),
        "top": t.top.to_json(),
    })
}

fn vectors_json(t: &FaceTriple<RegionVector>) -> Value {
    json!({
        "left": [t.left.u.to_string(), t.left.v.to_string()],
        "right": [t.right.u.to_string(), t.right.v.to_string()],
        "top": [t.top.u.to_string(), t.top.v.to_string()],
    })
}

/// `[{word, triple, vectors}, …]` in breadth-first order.
pub fn tree_json<T: NodeValue>(tree: &Tree<FaceTriple<T>>) -> Value {
    let vectors = vectors_for(tree);
    let nodes: Vec<Value> = tree
        .iter()
        .zip(vectors.nodes())
        .map(|((w, t), v)| {
            json!({
                "word": w.to_string(),
                "triple": triple_json(t),
                "vectors": vectors_json(v),
            })
        })
        .collect();
    Value::Array(nodes)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Columns: `word,left,right,top,left_farey,right_farey,top_farey`.
pub fn tree_csv<T: NodeValue>(tree: &Tree<FaceTriple<T>>) -> String {
    let vectors = vectors_for(tree);
    let mut out = String::from("word,left,right,top,left_farey,right_farey,top_farey\n");
    for ((w, t), v) in tree.iter().zip(vectors.nodes()) {
        let fields = [
            w.to_string(),
            t.left.label(),
            t.right.label(),
            t.top.label(),
            v.left.farey(),
            v.right.farey(),
            v.top.farey(),
        ];
        let line: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

fn region_label<T: NodeValue>(value: &T, vector: &RegionVector, labels: Labels) -> String {
    match labels {
        Labels::Values => value.label(),
        Labels::Farey => vector.farey(),
        Labels::Both => format!("{} [{}]", value.label(), vector.farey()),
    }
}

fn node_labels<T: NodeValue>(tree: &Tree<FaceTriple<T>>, labels: Labels) -> Vec<String> {
    let vectors = vectors_for(tree);
    tree.nodes()
        .iter()
        .zip(vectors.nodes())
        .enumerate()
        .map(|(i, (t, v))| {
            let top = region_label(&t.top, &v.top, labels);
            if i == 0 {
                format!(
                    "{} | {} | {}",
                    region_label(&t.left, &v.left, labels),
                    region_label(&t.right, &v.right, labels),
                    top
                )
            } else {
                top
            }
        })
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn tree_dot<T: NodeValue>(tree: &Tree<FaceTriple<T>>, labels: Labels) -> String {
    let names = node_labels(tree, labels);
    let mut out = String::from("digraph topograph {\n  node [shape=box];\n");
    for (i, label) in names.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", label.replace('"', "\\\""));
    }
    for i in 1..names.len() {
        let letter = if i % 2 == 1 { 'L' } else { 'R' };
        let _ = writeln!(out, "  n{} -> n{i} [label=\"{letter}\"];", (i - 1) / 2);
    }
    out.push_str("}\n");
    out
}

const ROW_HEIGHT: usize = 70;
const MIN_SLOT: usize = 90;

/// Levels as rows, each node centered in an equal share of its row.
pub fn tree_svg<T: NodeValue>(tree: &Tree<FaceTriple<T>>, labels: Labels) -> String {
    let names = node_labels(tree, labels);
    let depth = tree.depth();
    let width = (MIN_SLOT << depth).max(400);
    let height = (depth + 1) * ROW_HEIGHT + 20;
    let pos = |i: usize| {
        let level = (usize::BITS - 1 - (i + 1).leading_zeros()) as usize;
        let offset = i + 1 - (1 << level);
        let slot = width as f64 / (1u64 << level) as f64;
        (slot * (offset as f64 + 0.5), (level * ROW_HEIGHT + 30) as f64)
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         font-family=\"monospace\" font-size=\"12\">"
    );
    for i in 1..names.len() {
        let (x1, y1) = pos((i - 1) / 2);
        let (x2, y2) = pos(i);
        let _ = writeln!(
            out,
            "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"#888\"/>"
        );
    }
    for (i, label) in names.iter().enumerate() {
        let (x, y) = pos(i);
        let _ = writeln!(
            out,
            "  <text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"middle\" dy=\"4\">{}</text>",
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topograph::{enumerate, QuadForm};

    #[test]
    fn json_dump_has_words_and_vectors() {
        let t = enumerate(&QuadForm::new(1, 1, 1), 1).unwrap();
        let v = tree_json(&t);
        assert_eq!(v[0]["word"], "");
        assert_eq!(v[0]["triple"]["top"], "3");
        assert_eq!(v[1]["word"], "L");
        assert_eq!(v[1]["vectors"]["top"], json!(["2", "1"]));
        assert_eq!(v.as_array().unwrap().len(), 3);
    }

    #[test]
    fn csv_rows() {
        let t = enumerate(&QuadForm::new(1, 0, 1), 1).unwrap();
        let csv = tree_csv(&t);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[1], ",1,1,2,1/0,0/1,1/1");
        assert_eq!(lines[2], "L,1,2,5,1/0,1/1,2/1");
    }

    #[test]
    fn dot_and_svg_are_deterministic() {
        let t = enumerate(&QuadForm::new(17, -12, 2), 3).unwrap();
        assert_eq!(tree_dot(&t, Labels::Both), tree_dot(&t, Labels::Both));
        let svg = tree_svg(&t, Labels::Farey);
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<text").count(), 15);
        assert_eq!(svg.matches("<line").count(), 14);
        let dot = tree_dot(&t, Labels::Values);
        assert!(dot.contains("n0 [label=\"17 | 2 | 7\"]"));
        assert!(dot.contains("n0 -> n1 [label=\"L\"]"));
    }

    #[test]
    fn dual_labels() {
        let t = Tree::generate(
            FaceTriple::new(
                DualInt::from_i64(1, 1),
                DualInt::from_i64(1, 0),
                DualInt::from_i64(1, 1),
            ),
            0,
            &crate::markov::ShadowMarkovRule,
        );
        let v = tree_json(&t);
        assert_eq!(v[0]["triple"]["left"], json!({"re": "1", "sh": "1"}));
    }
}
