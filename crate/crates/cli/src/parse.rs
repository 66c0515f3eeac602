//! Parser for the plain-text system format.
//!
//! A document is a sequence of `key = [item, item, …]` lines, one each for
//! `points`, `domain`, `map` and `hull`, in any order.  `map` items are
//! `from -> to` pairs.  `#` starts a comment, blank lines are ignored, and
//! every diagnostic carries the offending line number.
//!
//! ```text
//! # the truncated shift on three points
//! points = [a, b, c]
//! domain = [b, c]
//! map    = [b -> a, c -> b]
//! hull   = [c]
//! ```

use cpdyn_core::dynsys::{minimal_hull, validate_system, PartialMap, SystemWithHull};
use cpdyn_core::PointSet;
use std::collections::HashMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// A parsed system together with its label table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSystem {
    pub system: SystemWithHull,
    pub labels: Vec<String>,
    pub warnings: Vec<String>,
    hull_line: usize,
}

impl ParsedSystem {
    pub fn label_set(&self, s: PointSet) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

const BAD_CHARS: &[char] = &['[', ']', ',', '=', '#', '>', '<', '|', '(', ')', '"'];

fn check_label(label: &str, line: usize) -> Result<(), ParseError> {
    if label.is_empty() {
        return err(line, "empty label");
    }
    if let Some(c) = label
        .chars()
        .find(|c| BAD_CHARS.contains(c) || c.is_whitespace())
    {
        return err(
            line,
            format!("label {label:?} contains forbidden character {c:?}"),
        );
    }
    Ok(())
}

struct Section {
    line: usize,
    items: Vec<String>,
}

fn split_list(value: &str, line: usize) -> Result<Vec<String>, ParseError> {
    let value = value.trim();
    if !value.starts_with('[') || !value.ends_with(']') {
        return err(line, "expected a bracketed list [ … ]");
    }
    let interior = &value[1..value.len() - 1];
    if interior.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(interior.split(',').map(|s| s.trim().to_string()).collect())
}

/// Parse the document structure without enforcing hull validity (the
/// `reduce` command repairs invalid hulls, so it must see them).
pub fn parse_document(text: &str) -> Result<ParsedSystem, ParseError> {
    let mut sections: HashMap<&'static str, Section> = HashMap::new();
    let mut last_line = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if content.trim().is_empty() {
            continue;
        }
        let Some(eq) = content.find('=') else {
            return err(line, "expected `key = [ … ]`");
        };
        let key = content[..eq].trim();
        let known = match key {
            "points" => "points",
            "domain" => "domain",
            "map" => "map",
            "hull" => "hull",
            other => return err(line, format!("unknown key {other:?}")),
        };
        let items = split_list(&content[eq + 1..], line)?;
        if sections.insert(known, Section { line, items }).is_some() {
            return err(line, format!("duplicate {known:?} declaration"));
        }
    }

    let mut take = |key: &'static str| -> Result<Section, ParseError> {
        sections.remove(key).ok_or(ParseError {
            line: last_line,
            message: format!("missing {key:?} declaration"),
        })
    };
    let points = take("points")?;
    let domain = take("domain")?;
    let map = take("map")?;
    let hull = take("hull")?;

    let mut labels = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for label in &points.items {
        check_label(label, points.line)?;
        if index.insert(label.clone(), labels.len()).is_some() {
            return err(points.line, format!("duplicate label {label:?}"));
        }
        labels.push(label.clone());
    }
    let resolve = |label: &str, line: usize| -> Result<usize, ParseError> {
        check_label(label, line)?;
        index.get(label).copied().ok_or(ParseError {
            line,
            message: format!("undeclared label {label:?}"),
        })
    };

    let mut domain_set = PointSet::EMPTY;
    for label in &domain.items {
        let i = resolve(label, domain.line)?;
        if domain_set.contains(i) {
            return err(domain.line, format!("duplicate domain label {label:?}"));
        }
        domain_set.insert(i);
    }

    let mut pairs = Vec::new();
    let mut mapped = PointSet::EMPTY;
    for item in &map.items {
        let Some((from, to)) = item.split_once("->") else {
            return err(map.line, format!("map entry {item:?} is not `from -> to`"));
        };
        let from = resolve(from.trim(), map.line)?;
        let to = resolve(to.trim(), map.line)?;
        if mapped.contains(from) {
            return err(map.line, format!("point {:?} mapped twice", labels[from]));
        }
        if !domain_set.contains(from) {
            return err(
                map.line,
                format!(
                    "map defined on {:?} which is outside the domain",
                    labels[from]
                ),
            );
        }
        mapped.insert(from);
        pairs.push((from, to));
    }
    if mapped != domain_set {
        let missing = domain_set.minus(mapped);
        let names: Vec<&str> = missing.iter().map(|i| labels[i].as_str()).collect();
        return err(
            domain.line,
            format!("domain points without a map entry: {}", names.join(", ")),
        );
    }

    let mut hull_set = PointSet::EMPTY;
    for label in &hull.items {
        let i = resolve(label, hull.line)?;
        hull_set.insert(i);
    }

    let partial_map = PartialMap::new(labels.len(), &pairs).map_err(|e| ParseError {
        line: points.line,
        message: e.to_string(),
    })?;
    let system = SystemWithHull::new(partial_map, hull_set);

    let mut warnings = Vec::new();
    let minimal = minimal_hull(&system.map);
    if minimal.is_subset(hull_set) && hull_set != minimal {
        let extra: Vec<&str> = hull_set
            .minus(minimal)
            .iter()
            .map(|i| labels[i].as_str())
            .collect();
        warnings.push(format!(
            "hull strictly exceeds the minimal hull: extra points {}",
            extra.join(", ")
        ));
    }

    Ok(ParsedSystem {
        system,
        labels,
        warnings,
        hull_line: hull.line,
    })
}

/// Parse and additionally require hull validity, as every command except
/// `reduce` does.
pub fn parse_system(text: &str) -> Result<ParsedSystem, ParseError> {
    let parsed = parse_document(text)?;
    let report = validate_system(&parsed.system);
    if let Some(violation) = report.violations.first() {
        let message = match violation {
            cpdyn_core::dynsys::Violation::HullConditionFailed { uncovered } => {
                let names: Vec<&str> = uncovered
                    .iter()
                    .map(|i| parsed.labels[i].as_str())
                    .collect();
                format!(
                    "hull validity fails: points not covered by hull ∪ φ(domain): {}",
                    names.join(", ")
                )
            }
            other => other.to_string(),
        };
        return err(parsed.hull_line, message);
    }
    Ok(parsed)
}
