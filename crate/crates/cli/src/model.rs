//! The TOML model format.
//!
//! ```toml
//! [[variables]]
//! name = "a"
//! values = [3, 5]
//!
//! [[variables]]
//! name = "b"
//! range = [3, 4]
//!
//! [[constraints]]
//! type = "neq"
//! x = "a"
//! y = "b"
//! ```

use std::collections::HashMap;

use dds_core::models::CspModel;
use dds_core::{ConstraintSpec, Dfa, Domain, LinearRel, PostError, ProblemState, VarRef};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    #[serde(default)]
    pub variables: Vec<VariableDecl>,
    #[serde(default)]
    pub constraints: Vec<ConstraintDecl>,
}

/// A variable with either an explicit value list or an inclusive range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[i64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Eq,
    Leq,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ConstraintDecl {
    Neq {
        x: String,
        y: String,
    },
    Linear {
        coeffs: Vec<i64>,
        vars: Vec<String>,
        rel: Relation,
        rhs: i64,
    },
    AllDifferent {
        vars: Vec<String>,
    },
    Table {
        vars: Vec<String>,
        tuples: Vec<Vec<i64>>,
    },
    /// `transitions` holds `[from, symbol, to]` triples.
    Regular {
        vars: Vec<String>,
        states: usize,
        start: usize,
        finals: Vec<usize>,
        transitions: Vec<(usize, i64, usize)>,
    },
    Slide {
        vars: Vec<String>,
        width: usize,
        tuples: Vec<Vec<i64>>,
    },
}

impl ConstraintDecl {
    pub fn kind(&self) -> &'static str {
        match self {
            ConstraintDecl::Neq { .. } => "neq",
            ConstraintDecl::Linear { .. } => "linear",
            ConstraintDecl::AllDifferent { .. } => "alldifferent",
            ConstraintDecl::Table { .. } => "table",
            ConstraintDecl::Regular { .. } => "regular",
            ConstraintDecl::Slide { .. } => "slide",
        }
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("syntax error: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error("variable `{0}` is declared twice")]
    DuplicateVariable(String),
    #[error("variable `{name}`: {msg}")]
    BadDomain { name: String, msg: String },
    #[error("constraint {index} ({kind}): unknown variable `{name}`")]
    UnknownVariable {
        index: usize,
        kind: &'static str,
        name: String,
    },
    #[error("constraint {index} ({kind}): {source}")]
    Constraint {
        index: usize,
        kind: &'static str,
        source: PostError,
    },
}

/// A checked document: the problem plus the variable names in index order.
#[derive(Debug, Clone)]
pub struct CompiledModel {
    pub csp: CspModel,
    pub names: Vec<String>,
}

impl CompiledModel {
    pub fn state(&self) -> ProblemState {
        self.csp.build().expect("constraints were validated")
    }
}

/// Parses and validates a model document.
pub fn parse_model(text: &str) -> Result<ModelDocument, ModelError> {
    let doc: ModelDocument = toml::from_str(text)?;
    compile(&doc)?;
    Ok(doc)
}

pub fn to_toml(doc: &ModelDocument) -> String {
    toml::to_string(doc).expect("model documents always serialize")
}

fn domain_of(v: &VariableDecl) -> Result<Domain, ModelError> {
    let bad = |msg: &str| ModelError::BadDomain {
        name: v.name.clone(),
        msg: msg.to_string(),
    };
    let d = match (&v.values, &v.range) {
        (Some(vals), None) => Domain::new(vals.iter().copied()),
        (None, Some([lo, hi])) => {
            if lo > hi {
                return Err(bad("range lower bound exceeds upper bound"));
            }
            Domain::range(*lo, *hi)
        }
        (Some(_), Some(_)) => return Err(bad("give either `values` or `range`, not both")),
        (None, None) => return Err(bad("missing `values` or `range`")),
    };
    if d.is_empty() {
        return Err(bad("empty domain"));
    }
    Ok(d)
}

/// Resolves names and checks every constraint.
pub fn compile(doc: &ModelDocument) -> Result<CompiledModel, ModelError> {
    let mut index = HashMap::new();
    let mut domains = Vec::new();
    let mut names = Vec::new();
    for v in &doc.variables {
        if index.insert(v.name.clone(), VarRef(names.len())).is_some() {
            return Err(ModelError::DuplicateVariable(v.name.clone()));
        }
        domains.push(domain_of(v)?);
        names.push(v.name.clone());
    }
    let mut csp = CspModel::new(domains);
    for (i, c) in doc.constraints.iter().enumerate() {
        let kind = c.kind();
        let resolve = |n: &String| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| ModelError::UnknownVariable {
                    index: i,
                    kind,
                    name: n.clone(),
                })
        };
        let resolve_all = |ns: &[String]| ns.iter().map(resolve).collect::<Result<Vec<_>, _>>();
        let wrap = |source| ModelError::Constraint {
            index: i,
            kind,
            source,
        };
        let spec = match c {
            ConstraintDecl::Neq { x, y } => ConstraintSpec::Neq(resolve(x)?, resolve(y)?),
            ConstraintDecl::Linear {
                coeffs,
                vars,
                rel,
                rhs,
            } => ConstraintSpec::Linear {
                coeffs: coeffs.clone(),
                vars: resolve_all(vars)?,
                rel: match rel {
                    Relation::Eq => LinearRel::Eq,
                    Relation::Leq => LinearRel::Leq,
                },
                rhs: *rhs,
            },
            ConstraintDecl::AllDifferent { vars } => {
                ConstraintSpec::AllDifferent(resolve_all(vars)?)
            }
            ConstraintDecl::Table { vars, tuples } => ConstraintSpec::Table {
                vars: resolve_all(vars)?,
                tuples: tuples.clone(),
            },
            ConstraintDecl::Regular {
                vars,
                states,
                start,
                finals,
                transitions,
            } => ConstraintSpec::Regular {
                vars: resolve_all(vars)?,
                dfa: Dfa::new(
                    *states,
                    *start,
                    finals.iter().copied(),
                    transitions.iter().copied(),
                )
                .map_err(wrap)?,
            },
            ConstraintDecl::Slide {
                vars,
                width,
                tuples,
            } => ConstraintSpec::Slide {
                vars: resolve_all(vars)?,
                width: *width,
                window_tuples: tuples.clone(),
            },
        };
        spec.validate(csp.var_count()).map_err(wrap)?;
        csp.post(spec);
    }
    Ok(CompiledModel { csp, names })
}

/// A document for `csp`, naming variable `i` as `names[i]` (or `x{i}`).
pub fn document_from_csp(csp: &CspModel, names: Option<&[String]>) -> ModelDocument {
    let name = |x: VarRef| names.map_or_else(|| format!("x{}", x.0), |n| n[x.0].clone());
    let names_of = |vs: &[VarRef]| vs.iter().map(|&x| name(x)).collect::<Vec<_>>();
    let variables = csp
        .domains
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let (lo, hi) = (d.min().unwrap_or(0), d.max().unwrap_or(-1));
            let contiguous = !d.is_empty() && (hi - lo + 1) as usize == d.size();
            VariableDecl {
                name: name(VarRef(i)),
                values: (!contiguous).then(|| d.values().to_vec()),
                range: contiguous.then_some([lo, hi]),
            }
        })
        .collect();
    let constraints = csp
        .constraints
        .iter()
        .map(|c| match c {
            ConstraintSpec::Neq(x, y) => ConstraintDecl::Neq {
                x: name(*x),
                y: name(*y),
            },
            ConstraintSpec::Linear {
                coeffs,
                vars,
                rel,
                rhs,
            } => ConstraintDecl::Linear {
                coeffs: coeffs.clone(),
                vars: names_of(vars),
                rel: match rel {
                    LinearRel::Eq => Relation::Eq,
                    LinearRel::Leq => Relation::Leq,
                },
                rhs: *rhs,
            },
            ConstraintSpec::AllDifferent(vars) => ConstraintDecl::AllDifferent {
                vars: names_of(vars),
            },
            ConstraintSpec::Table { vars, tuples } => ConstraintDecl::Table {
                vars: names_of(vars),
                tuples: tuples.clone(),
            },
            ConstraintSpec::Regular { vars, dfa } => ConstraintDecl::Regular {
                vars: names_of(vars),
                states: dfa.state_count(),
                start: dfa.start(),
                finals: dfa.finals().collect(),
                transitions: dfa.transitions().collect(),
            },
            ConstraintSpec::Slide {
                vars,
                width,
                window_tuples,
            } => ConstraintDecl::Slide {
                vars: names_of(vars),
                width: *width,
                tuples: window_tuples.clone(),
            },
        })
        .collect();
    ModelDocument {
        variables,
        constraints,
    }
}
