//! Group input: JSON group files and short builtin names.
//!
//! A group file is either `{"label": str, "cayley_table": [[int]]}` or
//! `{"label": str, "construct": {"family": str, "params": {...}}}`.
//! Builtin names: `c<n>`/`z<n>`, `d<order>`, `q8`, `q<order>`, `klein`/`v4`,
//! `heis<n>`, `es_p3_exp_p2:<p>`, `ab:<m1>,<m2>,…`, `dp:<a>,<b>,…` and
//! `cp:<a>,<b>` where the parts of `dp`/`cp` are themselves simple names.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::group::{Elem, FiniteGroup, GroupError, GroupSpec};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed group file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("group file needs exactly one of \"cayley_table\" or \"construct\"")]
    Shape,
    #[error("unknown builtin group {0:?}")]
    UnknownBuiltin(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    label: Option<String>,
    cayley_table: Option<Vec<Vec<Elem>>>,
    construct: Option<GroupSpec>,
}

/// Parses and validates a group from the JSON file format.
pub fn parse_group_json(text: &str) -> Result<FiniteGroup, InputError> {
    let file: GroupFile = serde_json::from_str(text)?;
    match (file.cayley_table, file.construct) {
        (Some(table), None) => {
            let label = file.label.unwrap_or_else(|| format!("G{}", table.len()));
            Ok(FiniteGroup::from_cayley_table(table, label)?)
        }
        (None, Some(spec)) => {
            let g = spec.build()?;
            Ok(match file.label {
                Some(label) => g.with_label(label),
                None => g,
            })
        }
        _ => Err(InputError::Shape),
    }
}

pub fn load_group_file(path: &Path) -> Result<FiniteGroup, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_group_json(&text)
}

fn parse_simple(name: &str) -> Option<GroupSpec> {
    let num = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|rest| rest.parse::<usize>().ok())
    };
    match name {
        "q8" => return Some(GroupSpec::Quaternion8 {}),
        "klein" | "v4" => {
            return Some(GroupSpec::Abelian {
                factors: vec![2, 2],
            })
        }
        _ => {}
    }
    if let Some(p) = num("es_p3_exp_p2:") {
        return Some(GroupSpec::ExtraspecialP3ExpP2 { p });
    }
    if let Some(n) = num("heis") {
        return Some(GroupSpec::HeisenbergMod { n });
    }
    if let Some(n) = num("c").or_else(|| num("z")) {
        return Some(GroupSpec::Cyclic { n });
    }
    if let Some(order) = num("d") {
        return Some(GroupSpec::Dihedral { order });
    }
    if let Some(order) = num("q") {
        return Some(GroupSpec::Quaternion { order });
    }
    None
}

/// Resolves a builtin name (case-insensitive) to a group spec.
pub fn parse_builtin(name: &str) -> Result<GroupSpec, InputError> {
    let lower = name.trim().to_ascii_lowercase();
    let unknown = || InputError::UnknownBuiltin(name.to_string());
    let parts = |rest: &str| -> Result<Vec<GroupSpec>, InputError> {
        rest.split(',')
            .map(|p| parse_simple(p.trim()).ok_or_else(unknown))
            .collect()
    };
    if let Some(rest) = lower.strip_prefix("ab:") {
        let factors = rest
            .split(',')
            .map(|m| m.trim().parse::<usize>().map_err(|_| unknown()))
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(GroupSpec::Abelian { factors });
    }
    if let Some(rest) = lower.strip_prefix("dp:") {
        return Ok(GroupSpec::DirectProduct {
            factors: parts(rest)?,
        });
    }
    if let Some(rest) = lower.strip_prefix("cp:") {
        let mut factors = parts(rest)?;
        if factors.len() != 2 {
            return Err(unknown());
        }
        let right = Box::new(factors.pop().expect("two factors"));
        let left = Box::new(factors.pop().expect("two factors"));
        return Ok(GroupSpec::CentralProduct {
            left,
            right,
            left_z: None,
            right_z: None,
        });
    }
    parse_simple(&lower).ok_or_else(unknown)
}

/// Builds the group named by a builtin.
pub fn builtin_group(name: &str) -> Result<FiniteGroup, InputError> {
    Ok(parse_builtin(name)?.build()?)
}
