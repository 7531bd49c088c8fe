//! JSON group definitions and map files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{ReflectionGroup, DEFAULT_CAP};
use crate::linalg::Matrix;
use crate::monomial::default_names;
use crate::operators::WMap;
use crate::parse::{parse_poly, parse_scalar};
use crate::{CycMatrix, CycNum};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixText {
    Rows(Vec<Vec<String>>),
    Flat(Vec<String>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub dimension: usize,
    pub conductor: u32,
    #[serde(default)]
    pub variables: Option<Vec<String>>,
    pub generators: Vec<MatrixText>,
}

fn json_error(e: serde_json::Error) -> Error {
    if e.is_data() {
        Error::Schema(format!("{e}"))
    } else {
        Error::Parse { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    fn variable_names(&self) -> Result<Vec<String>> {
        let names = self.variables.clone().unwrap_or_else(|| default_names(self.dimension));
        if names.len() != self.dimension {
            return Err(Error::Schema(format!(
                "{} variable names for dimension {}",
                names.len(),
                self.dimension
            )));
        }
        for (k, v) in names.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || v == "z" || names[..k].contains(v) {
                return Err(Error::Schema(format!("invalid variable name '{v}'")));
            }
        }
        Ok(names)
    }

    fn generator_matrices(&self) -> Result<Vec<CycMatrix>> {
        let n = self.dimension;
        let m = self.conductor;
        let mut out = Vec::new();
        for (g, text) in self.generators.iter().enumerate() {
            let rows: Vec<Vec<String>> = match text {
                MatrixText::Rows(rows) => {
                    if rows.len() != n {
                        return Err(Error::Schema(format!("generator {g}: {} rows, expected {n}", rows.len())));
                    }
                    for (r, row) in rows.iter().enumerate() {
                        if row.len() != n {
                            return Err(Error::Schema(format!(
                                "generator {g}: row {r} has {} entries, expected {n}",
                                row.len()
                            )));
                        }
                    }
                    rows.clone()
                }
                MatrixText::Flat(entries) => {
                    if entries.len() != n * n {
                        return Err(Error::Schema(format!(
                            "generator {g}: {} entries, expected {}",
                            entries.len(),
                            n * n
                        )));
                    }
                    entries.chunks(n).map(<[String]>::to_vec).collect()
                }
            };
            let mut parsed = Vec::with_capacity(n);
            for (r, row) in rows.iter().enumerate() {
                let mut prow = Vec::with_capacity(n);
                for (c, entry) in row.iter().enumerate() {
                    // ζ_1 = 1, so a root of unity at conductor 1 is almost certainly a wrong conductor
                    if m == 1 && entry.contains('z') {
                        return Err(Error::Schema(format!(
                            "generator {g}, entry ({r}, {c}) uses z but the conductor is 1"
                        )));
                    }
                    let v = parse_scalar(entry, m).map_err(|e| match e {
                        Error::Parse { line, column, message } => Error::Parse {
                            line,
                            column,
                            message: format!("generator {g}, entry ({r}, {c}): {message}"),
                        },
                        other => other,
                    })?;
                    prow.push(v);
                }
                parsed.push(prow);
            }
            out.push(Matrix::from_rows(parsed));
        }
        Ok(out)
    }

    /// Validates the file and enumerates the group.
    pub fn build(&self, cap: usize) -> Result<ReflectionGroup> {
        if self.conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        if self.dimension == 0 {
            return Err(Error::Schema("dimension must be positive".into()));
        }
        if self.generators.is_empty() {
            return Err(Error::Schema("no generators".into()));
        }
        let names = self.variable_names()?;
        let gens = self.generator_matrices()?;
        Ok(ReflectionGroup::close(&self.name, self.conductor, gens, cap)?.with_variables(names))
    }
}

pub fn parse_group_str(text: &str) -> Result<ReflectionGroup> {
    GroupFile::from_json(text)?.build(DEFAULT_CAP)
}

pub fn parse_group_file(path: &Path) -> Result<ReflectionGroup> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_group_str(&text)
}

/// A map `W → R` on disk: missing indices are zero.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WMapFile {
    pub group: String,
    pub values: BTreeMap<String, String>,
}

impl WMapFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(json_error)
    }

    pub fn to_map(&self, w: &ReflectionGroup) -> Result<WMap> {
        if self.group != w.name() {
            return Err(Error::Schema(format!("map is for group '{}' but '{}' was loaded", self.group, w.name())));
        }
        let mut values = vec![w.zero_poly(); w.order()];
        for (key, text) in &self.values {
            let x: usize = key
                .parse()
                .ok()
                .filter(|&x| x < w.order())
                .ok_or_else(|| Error::Schema(format!("'{key}' is not an element index below {}", w.order())))?;
            values[x] = parse_poly(text, w.conductor(), w.variables()).map_err(|e| match e {
                Error::Parse { line, column, message } => {
                    Error::Parse { line, column, message: format!("value at {x}: {message}") }
                }
                other => other,
            })?;
        }
        Ok(WMap::new(values))
    }

    pub fn from_map(w: &ReflectionGroup, f: &WMap) -> Self {
        let values = f
            .values()
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(x, v)| (x.to_string(), v.format_with(w.variables())))
            .collect();
        WMapFile { group: w.name().to_string(), values }
    }
}

pub fn read_wmap(path: &Path, w: &ReflectionGroup) -> Result<WMap> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })?;
    WMapFile::from_json(&text)?.to_map(w)
}

/// Text form of a group element's matrix, row by row.
pub fn matrix_text(m: &CycMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(CycNum::to_string).collect()).collect()
}
