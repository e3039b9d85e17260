//! Line-oriented text format for presented modules.
//!
//! ```text
//! # the ideal (X1, X2) twisted up by 2
//! ring: X1 X2
//! degrees: 0
//! relation: X1
//! relation: X2
//! ```
//!
//! Each `relation:` line lists one polynomial per generator, separated by
//! `;`. Blank lines and `#` comments are ignored.

use super::PresentedGradedModule;
use crate::polyring::{GradedRing, ModuleVector, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseModuleError {
    pub line: usize,
    pub msg: String,
}

pub fn parse_module(text: &str) -> Result<PresentedGradedModule, ParseModuleError> {
    let mut ring = None;
    let mut degrees: Option<Vec<i64>> = None;
    let mut rels = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| ParseModuleError { line: n + 1, msg };
        let (key, rest) = line.split_once(':').ok_or_else(|| err("expected `key: value`".into()))?;
        match key.trim() {
            "ring" => {
                let names: Vec<&str> = rest.split_whitespace().collect();
                ring = Some(GradedRing::new(&names).map_err(|e| err(e.to_string()))?);
            }
            "degrees" => {
                degrees = Some(
                    rest.split_whitespace()
                        .map(|t| t.parse::<i64>().map_err(|e| err(format!("degree `{t}`: {e}"))))
                        .collect::<Result<_, _>>()?,
                );
            }
            "relation" => {
                let r = ring.as_ref().ok_or_else(|| err("relation before ring".into()))?;
                let d = degrees.as_ref().ok_or_else(|| err("relation before degrees".into()))?;
                let entries: Vec<Polynomial> = rest
                    .split(';')
                    .map(|s| r.parse(s.trim()).map_err(|e| err(e.to_string())))
                    .collect::<Result<_, _>>()?;
                if entries.len() != d.len() {
                    return Err(err(format!("{} entries for {} generators", entries.len(), d.len())));
                }
                rels.push((n + 1, ModuleVector::from_entries(&entries)));
            }
            other => return Err(err(format!("unknown key `{other}`"))),
        }
    }
    let ring = ring.ok_or(ParseModuleError { line: 0, msg: "missing `ring:`".into() })?;
    let degrees = degrees.ok_or(ParseModuleError { line: 0, msg: "missing `degrees:`".into() })?;
    for (line, r) in &rels {
        if !r.is_zero() && r.degree(&degrees).is_none() {
            return Err(ParseModuleError { line: *line, msg: "inhomogeneous relation".into() });
        }
    }
    PresentedGradedModule::new(ring, degrees, rels.into_iter().map(|(_, r)| r).collect())
        .map_err(|e| ParseModuleError { line: 0, msg: e.to_string() })
}

pub fn format_module(m: &PresentedGradedModule) -> String {
    let mut s = format!("ring: {}\n", m.ring.names().join(" "));
    let degs: Vec<String> = m.degrees.iter().map(|d| d.to_string()).collect();
    s += &format!("degrees: {}\n", degs.join(" "));
    for r in &m.relations {
        let e: Vec<String> = r.entries(m.ngens()).iter().map(|p| m.ring.format(p)).collect();
        s += &format!("relation: {}\n", e.join(" ; "));
    }
    s
}
