//! Report types shared by every subcommand. The JSON form is the schema;
//! the text form is derived from it.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    /// `json:<path>`, `symbolic`, `random`, `complete-graph` or `example`.
    pub source: String,
    /// `rational` or `polynomial`.
    pub ring: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cols: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arities: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub edges: usize,
    pub roots: usize,
    pub count: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub admissible_pairs: Option<u64>,
    /// Admissible pairs by `(|F|, |R|)`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strata: Vec<Stratum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cacti: Option<u64>,
    /// Refined cacti summed over all cacti: one per choice of starting
    /// point in every block.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub refinements: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackendValue {
    pub backend: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootValue {
    pub root: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub blocks: Vec<Vec<usize>>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCheck {
    pub admissible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rejection: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<i8>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Vec<usize>>,
}

/// Outcome of `verify-forest` and `verify-cactus`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub task: String,
    pub inputs: Inputs,
    pub lhs: String,
    pub rhs: String,
    pub difference_is_zero: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lhs_by_root: Vec<RootValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_roots_equal: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub backends: Vec<BackendValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backends_agree: Option<bool>,
    pub counts: Counts,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// Outcome of the evaluation subcommands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueReport {
    pub task: String,
    pub inputs: Inputs,
    pub value: String,
    pub backends: Vec<BackendValue>,
    pub backends_agree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// Outcome of `count`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub task: String,
    pub inputs: Inputs,
    pub total: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strata: Vec<Stratum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<PairCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Report {
    Verification(VerificationReport),
    Value(ValueReport),
    Count(CountReport),
}

impl Report {
    /// Whether every equality the command was asked to establish holds.
    pub fn success(&self) -> bool {
        match self {
            Report::Verification(r) => r.difference_is_zero && r.backends_agree.unwrap_or(true),
            Report::Value(r) => r.backends_agree,
            Report::Count(r) => r.pair.as_ref().is_none_or(|p| p.admissible),
        }
    }

    pub fn set_wall_time(&mut self, ms: f64) {
        let slot = match self {
            Report::Verification(r) => &mut r.wall_time_ms,
            Report::Value(r) => &mut r.wall_time_ms,
            Report::Count(r) => &mut r.wall_time_ms,
        };
        *slot = Some(ms);
    }
}

fn list(v: &[usize]) -> String {
    let items: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn inputs_line(out: &mut String, i: &Inputs) -> fmt::Result {
    write!(out, "input: {} ({}), n = {}", i.source, i.ring, i.n)?;
    if let Some(r) = &i.rows {
        write!(out, ", I = {}", list(r))?;
    }
    if let Some(c) = &i.cols {
        write!(out, ", J = {}", list(c))?;
    }
    if let Some(k) = &i.arities {
        write!(out, ", k = {}", list(k))?;
    }
    if let Some(r) = i.root {
        write!(out, ", root = {r}")?;
    }
    if let Some(s) = i.seed {
        write!(out, ", seed = {s}")?;
    }
    writeln!(out)
}

fn strata_lines(out: &mut String, strata: &[Stratum]) -> fmt::Result {
    for s in strata {
        writeln!(out, "  |F| = {}, |R| = {}: {}", s.edges, s.roots, s.count)?;
    }
    Ok(())
}

fn backend_lines(out: &mut String, backends: &[BackendValue]) -> fmt::Result {
    for b in backends {
        writeln!(out, "  {}: {}", b.backend, b.value)?;
    }
    Ok(())
}

fn pair_lines(out: &mut String, p: &PairCheck) -> fmt::Result {
    writeln!(out, "pair admissible: {}", p.admissible)?;
    if let Some(r) = &p.rejection {
        writeln!(out, "rejected: {r}")?;
    }
    if let Some(s) = p.signature {
        writeln!(out, "signature: {s}")?;
    }
    for c in &p.components {
        writeln!(out, "  component {}", list(c))?;
    }
    Ok(())
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        match self {
            Report::Verification(r) => {
                writeln!(out, "task: {}", r.task)?;
                inputs_line(&mut out, &r.inputs)?;
                if let Some(p) = r.counts.admissible_pairs {
                    writeln!(out, "admissible pairs: {p}")?;
                }
                strata_lines(&mut out, &r.counts.strata)?;
                if let Some(c) = r.counts.cacti {
                    writeln!(out, "cacti: {c}")?;
                }
                if let Some(c) = r.counts.refinements {
                    writeln!(out, "refined cacti: {c}")?;
                }
                for t in &r.terms {
                    let blocks: Vec<String> = t.blocks.iter().map(|b| list(b)).collect();
                    writeln!(out, "  {} -> {}", blocks.join(" "), t.value)?;
                }
                for v in &r.lhs_by_root {
                    writeln!(out, "lhs at root {}: {}", v.root, v.value)?;
                }
                if let Some(e) = r.all_roots_equal {
                    writeln!(out, "all roots equal: {e}")?;
                }
                writeln!(out, "lhs: {}", r.lhs)?;
                writeln!(out, "rhs: {}", r.rhs)?;
                if !r.backends.is_empty() {
                    writeln!(out, "backends:")?;
                    backend_lines(&mut out, &r.backends)?;
                }
                if let Some(a) = r.backends_agree {
                    writeln!(out, "backends agree: {a}")?;
                }
                writeln!(out, "difference is zero: {}", r.difference_is_zero)?;
                if let Some(ms) = r.wall_time_ms {
                    writeln!(out, "wall time: {ms:.3} ms")?;
                }
            }
            Report::Value(r) => {
                writeln!(out, "task: {}", r.task)?;
                inputs_line(&mut out, &r.inputs)?;
                if r.backends.len() > 1 {
                    backend_lines(&mut out, &r.backends)?;
                    writeln!(out, "backends agree: {}", r.backends_agree)?;
                }
                writeln!(out, "value: {}", r.value)?;
                if let Some(ms) = r.wall_time_ms {
                    writeln!(out, "wall time: {ms:.3} ms")?;
                }
            }
            Report::Count(r) => {
                writeln!(out, "task: {}", r.task)?;
                inputs_line(&mut out, &r.inputs)?;
                if let Some(p) = &r.pair {
                    pair_lines(&mut out, p)?;
                } else {
                    strata_lines(&mut out, &r.strata)?;
                    writeln!(out, "total: {}", r.total)?;
                }
                if let Some(ms) = r.wall_time_ms {
                    writeln!(out, "wall time: {ms:.3} ms")?;
                }
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verification(lhs: &str, rhs: &str, agree: Option<bool>) -> Report {
        Report::Verification(VerificationReport {
            task: "verify-forest".into(),
            inputs: Inputs::default(),
            lhs: lhs.into(),
            rhs: rhs.into(),
            difference_is_zero: lhs == rhs,
            lhs_by_root: Vec::new(),
            all_roots_equal: None,
            backends: Vec::new(),
            backends_agree: agree,
            counts: Counts::default(),
            terms: Vec::new(),
            wall_time_ms: None,
        })
    }

    #[test]
    fn success_needs_every_equality() {
        assert!(verification("1", "1", None).success());
        assert!(!verification("1", "2", None).success());
        assert!(!verification("1", "1", Some(false)).success());
        let pair = |admissible| {
            Report::Count(CountReport {
                task: "count-forests".into(),
                inputs: Inputs::default(),
                total: 0,
                strata: Vec::new(),
                pair: Some(PairCheck {
                    admissible,
                    rejection: None,
                    signature: None,
                    components: Vec::new(),
                }),
                wall_time_ms: None,
            })
        };
        assert!(pair(true).success());
        assert!(!pair(false).success());
    }

    #[test]
    fn untagged_round_trip() {
        let r = verification("a", "a", Some(true));
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&text).unwrap(), r);
        let v = Report::Value(ValueReport {
            task: "det".into(),
            inputs: Inputs::default(),
            value: "3".into(),
            backends: vec![BackendValue {
                backend: "direct".into(),
                value: "3".into(),
            }],
            backends_agree: true,
            wall_time_ms: Some(1.5),
        });
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<Report>(&text).unwrap(), v);
    }
}
