//! Deterministic text and JSON rendering.
//!
//! JSON documents carry the full system (as labels) so that output can be
//! fed back in; field order is fixed by the struct definitions, sets are
//! sorted label arrays, and identical inputs produce byte-identical bytes.

use crate::parse::ParsedSystem;
use cpdyn_core::extension::{PeriodicStrand, Strand};
use cpdyn_core::matrep::DenseMatrix;
use cpdyn_core::PointSet;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SystemJson {
    pub points: Vec<String>,
    pub domain: Vec<String>,
    pub map: Vec<[String; 2]>,
    pub hull: Vec<String>,
}

impl SystemJson {
    pub fn from_parsed(parsed: &ParsedSystem) -> Self {
        SystemJson::from_system(&parsed.system, &parsed.labels)
    }

    pub fn from_system(sys: &cpdyn_core::SystemWithHull, labels: &[String]) -> Self {
        SystemJson {
            points: labels.to_vec(),
            domain: sys.map.domain().iter().map(|i| labels[i].clone()).collect(),
            map: sys
                .map
                .domain()
                .iter()
                .map(|i| {
                    [
                        labels[i].clone(),
                        labels[sys.map.apply(i).expect("domain member")].clone(),
                    ]
                })
                .collect(),
            hull: sys.hull.iter().map(|i| labels[i].clone()).collect(),
        }
    }

    /// Render in the input format, so emitted systems re-parse.
    pub fn to_document(&self) -> String {
        let arrows: Vec<String> = self
            .map
            .iter()
            .map(|[from, to]| format!("{from} -> {to}"))
            .collect();
        format!(
            "points = [{}]\ndomain = [{}]\nmap = [{}]\nhull = [{}]\n",
            self.points.join(", "),
            self.domain.join(", "),
            arrows.join(", "),
            self.hull.join(", ")
        )
    }
}

pub fn label_list(s: PointSet, labels: &[String]) -> Vec<String> {
    s.iter().map(|i| labels[i].clone()).collect()
}

pub fn label_set(s: PointSet, labels: &[String]) -> String {
    format!("{{{}}}", label_list(s, labels).join(","))
}

pub fn strand_text(s: &Strand, labels: &[String]) -> String {
    let names: Vec<&str> = s.coords.iter().map(|&i| labels[i].as_str()).collect();
    format!("({})", names.join(","))
}

pub fn periodic_text(p: &PeriodicStrand, labels: &[String]) -> String {
    let pre: Vec<&str> = p.preperiod.iter().map(|&i| labels[i].as_str()).collect();
    let cyc: Vec<&str> = p.cycle.iter().map(|&i| labels[i].as_str()).collect();
    format!("({}|{})", pre.join(","), cyc.join(","))
}

/// Aligned real/imaginary grid for small matrices.
pub fn matrix_grid(m: &DenseMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.nrows() {
        out.push_str("  ");
        for c in 0..m.ncols() {
            let v = m[(r, c)];
            out.push_str(&format!("{:+.3}{:+.3}i ", v.re, v.im));
        }
        out.push('\n');
    }
    out
}

pub fn json_string<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable reports");
    text.push('\n');
    text
}

/// Complex numbers as `[re, im]` pairs, matrices as row-major nested arrays.
pub fn matrix_json(m: &DenseMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| {
            (0..m.ncols())
                .map(|c| [m[(r, c)].re, m[(r, c)].im])
                .collect()
        })
        .collect()
}
