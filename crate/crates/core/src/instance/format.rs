//! JSON instance documents.
//!
//! ```json
//! {
//!   "calculus": "ia",
//!   "variables": ["x", "y"],
//!   "constraints": [
//!     { "scope": ["x", "y"], "relations": ["p", "m"] },
//!     { "scope": ["x", "y"], "dnf": [[{ "rel": "d", "args": ["x", "y"], "neg": true }]] }
//!   ]
//! }
//! ```

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Atom, Constraint, Instance, Literal};
use crate::calculus::Calculus;
use crate::error::{Error, Result};
use crate::network::{RelId, Var};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    calculus: String,
    variables: Vec<String>,
    constraints: Vec<RawConstraint>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstraint {
    scope: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    relations: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dnf: Option<Vec<Vec<RawAtom>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAtom {
    rel: String,
    args: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    neg: bool,
}

/// Parses an instance with the embedded calculus tables.
pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_instance_with_tables(text, None)
}

/// Parses an instance, reading RCC composition tables from `table_dir` when
/// it holds an override for the document's calculus.
pub fn parse_instance_with_tables(text: &str, table_dir: Option<&Path>) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| Error::Syntax {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })?;
    let calc = Arc::new(Calculus::load(&raw.calculus, table_dir)?);
    let mut inst = Instance::new(calc.clone());
    for (i, name) in raw.variables.iter().enumerate() {
        if inst.var(name).is_some() {
            return Err(Error::DuplicateVariable {
                at: format!("variables[{i}]"),
                name: name.clone(),
            });
        }
        inst.add_variable(name.clone())?;
    }
    let var = |inst: &Instance, at: String, name: &str| -> Result<Var> {
        inst.var(name).ok_or_else(|| Error::UnknownVariable {
            at,
            name: name.to_string(),
        })
    };
    let rel = |at: String, name: &str| -> Result<RelId> {
        calc.relation_id(name).ok_or_else(|| Error::UnknownRelation {
            at,
            name: name.to_string(),
            calculus: calc.name(),
        })
    };
    for (ci, rc) in raw.constraints.iter().enumerate() {
        let at = format!("constraints[{ci}]");
        let scope: Vec<Var> = rc
            .scope
            .iter()
            .enumerate()
            .map(|(j, n)| var(&inst, format!("{at}.scope[{j}]"), n))
            .collect::<Result<_>>()?;
        let terms: Vec<Vec<Literal>> = match (&rc.relations, &rc.dnf) {
            (Some(rels), None) => {
                if rels.is_empty() {
                    return Err(Error::invalid(format!("{at}.relations"), "empty disjunction"));
                }
                if scope.len() != calc.arity() {
                    return Err(Error::ArityMismatch {
                        at: format!("{at}.scope"),
                        name: rels[0].clone(),
                        expected: calc.arity(),
                        found: scope.len(),
                    });
                }
                rels.iter()
                    .enumerate()
                    .map(|(j, r)| {
                        Ok(vec![Literal {
                            atom: Atom::new(rel(format!("{at}.relations[{j}]"), r)?, &scope),
                            neg: false,
                        }])
                    })
                    .collect::<Result<_>>()?
            }
            (None, Some(dnf)) => {
                if dnf.is_empty() {
                    return Err(Error::invalid(format!("{at}.dnf"), "empty disjunction"));
                }
                let mut terms = Vec::with_capacity(dnf.len());
                for (ti, term) in dnf.iter().enumerate() {
                    if term.is_empty() {
                        return Err(Error::invalid(format!("{at}.dnf[{ti}]"), "empty conjunction"));
                    }
                    let mut lits = Vec::with_capacity(term.len());
                    for (ai, a) in term.iter().enumerate() {
                        let apath = format!("{at}.dnf[{ti}][{ai}]");
                        let r = rel(format!("{apath}.rel"), &a.rel)?;
                        if a.args.len() != calc.arity() {
                            return Err(Error::ArityMismatch {
                                at: format!("{apath}.args"),
                                name: a.rel.clone(),
                                expected: calc.arity(),
                                found: a.args.len(),
                            });
                        }
                        let args: Vec<Var> = a
                            .args
                            .iter()
                            .enumerate()
                            .map(|(k, n)| var(&inst, format!("{apath}.args[{k}]"), n))
                            .collect::<Result<_>>()?;
                        if let Some(k) = args.iter().position(|v| !scope.contains(v)) {
                            return Err(Error::invalid(
                                format!("{apath}.args[{k}]"),
                                format!("`{}` is not in the scope", a.args[k]),
                            ));
                        }
                        lits.push(Literal {
                            atom: Atom::new(r, &args),
                            neg: a.neg,
                        });
                    }
                    terms.push(lits);
                }
                terms
            }
            _ => {
                return Err(Error::invalid(
                    at,
                    "expected exactly one of `relations` and `dnf`",
                ))
            }
        };
        let c = Constraint::from_literals(&calc, &scope, terms).map_err(|e| match e {
            Error::Invalid { msg, .. } => Error::invalid(at.clone(), msg),
            other => other,
        })?;
        inst.add_constraint(c)?;
    }
    Ok(inst)
}

/// Serializes to the document format. Pure disjunctions use the
/// `relations` shorthand.
pub fn serialize_instance(inst: &Instance) -> String {
    let calc = inst.calculus();
    let name = |v: &Var| inst.name(*v).to_string();
    let raw = RawInstance {
        calculus: calc.name(),
        variables: inst.vars().iter().map(name).collect(),
        constraints: inst
            .constraints()
            .iter()
            .map(|c| {
                let scope = c.scope().iter().map(name).collect();
                match c.relations() {
                    Some(rels) => RawConstraint {
                        scope,
                        relations: Some(rels.iter().map(|&r| calc.relation_name(r).to_string()).collect()),
                        dnf: None,
                    },
                    None => RawConstraint {
                        scope,
                        relations: None,
                        dnf: Some(
                            c.dnf()
                                .iter()
                                .map(|t| {
                                    t.iter()
                                        .map(|a| RawAtom {
                                            rel: calc.relation_name(a.rel).to_string(),
                                            args: a.args.iter().map(name).collect(),
                                            neg: false,
                                        })
                                        .collect()
                                })
                                .collect(),
                        ),
                    },
                }
            })
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("instance serializes")
}
