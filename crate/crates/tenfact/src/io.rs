//! File formats.
//!
//! Category data (`.cat.json`):
//! `{"simples": [...], "unit": n, "dual": [..], "fusion": [[x,y,z,mult],..],
//!   "cartan": [[..]], "dualD": [..]?, "omega_class": "..."?}`
//! where a fusion quadruple records `N^x_{y,z} = mult` and omitted entries
//! are zero.
//!
//! Groups (`.grp.json`): `{"labels": [...], "table": [[..]]}` with the
//! identity located on load.
//!
//! Embeddings (`.emb.json`):
//! `{"source": "a.cat.json", "target": "b.cat.json", "map": [..]}` with
//! paths resolved relative to the embedding file's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::CategoryData;
use crate::factor::Embedding;
use crate::groups::{FiniteGroup, GroupError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON in {path} at line {line}, column {column}: {message}")]
    Json { path: PathBuf, line: usize, column: usize, message: String },
    #[error("bad data in {path}: {message}")]
    Data { path: PathBuf, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Serialize, Deserialize)]
struct CategoryFile {
    simples: Vec<String>,
    unit: usize,
    dual: Vec<usize>,
    fusion: Vec<(usize, usize, usize, u64)>,
    cartan: Vec<Vec<u64>>,
    #[serde(rename = "dualD", default, skip_serializing_if = "Option::is_none")]
    dual_d: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    omega_class: Option<String>,
}

impl From<&CategoryData> for CategoryFile {
    fn from(c: &CategoryData) -> Self {
        CategoryFile {
            simples: c.simples.clone(),
            unit: c.unit,
            dual: c.dual.clone(),
            fusion: c.fusion.iter().map(|(&(x, y, z), &m)| (x, y, z, m)).collect(),
            cartan: c.cartan.clone(),
            dual_d: c.dual_d.clone(),
            omega_class: c.omega_class.clone(),
        }
    }
}

impl CategoryFile {
    fn into_data(self, path: &Path) -> Result<CategoryData, IoError> {
        let mut fusion = BTreeMap::new();
        for (x, y, z, m) in self.fusion {
            if m == 0 {
                continue;
            }
            if fusion.insert((x, y, z), m).is_some() {
                return Err(IoError::Data {
                    path: path.to_path_buf(),
                    message: format!("duplicate fusion entry ({x},{y},{z})"),
                });
            }
        }
        let data = CategoryData {
            simples: self.simples,
            unit: self.unit,
            dual: self.dual,
            fusion,
            cartan: self.cartan,
            dual_d: self.dual_d,
            omega_class: self.omega_class,
        };
        let shape = data.shape_violations();
        if !shape.is_empty() {
            return Err(IoError::Data {
                path: path.to_path_buf(),
                message: format!("malformed category data: {shape:?}"),
            });
        }
        Ok(data)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingFile {
    source: String,
    target: String,
    map: Vec<usize>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| IoError::Read { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| IoError::Json {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    std::fs::write(path, text).map_err(|source| IoError::Write { path: path.to_path_buf(), source })
}

pub fn load_category(path: impl AsRef<Path>) -> Result<CategoryData, IoError> {
    let path = path.as_ref();
    read_json::<CategoryFile>(path)?.into_data(path)
}

pub fn save_category(path: impl AsRef<Path>, data: &CategoryData) -> Result<(), IoError> {
    write_json(path.as_ref(), &CategoryFile::from(data))
}

pub fn load_group(path: impl AsRef<Path>) -> Result<FiniteGroup, IoError> {
    let file: GroupFile = read_json(path.as_ref())?;
    Ok(FiniteGroup::new(file.labels, file.table)?)
}

/// Like [`load_group`], with the seed used by the sampled associativity
/// check on large tables.
pub fn load_group_with_seed(path: impl AsRef<Path>, seed: u64) -> Result<FiniteGroup, IoError> {
    let file: GroupFile = read_json(path.as_ref())?;
    Ok(FiniteGroup::new_with_seed(file.labels, file.table, seed)?)
}

pub fn save_group(path: impl AsRef<Path>, g: &FiniteGroup) -> Result<(), IoError> {
    let file = GroupFile { labels: g.labels().to_vec(), table: g.table().clone() };
    write_json(path.as_ref(), &file)
}

/// Loads an embedding and the categories it references.
pub fn load_embedding(path: impl AsRef<Path>) -> Result<Embedding, IoError> {
    let path = path.as_ref();
    let file: EmbeddingFile = read_json(path)?;
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let source = load_category(dir.join(&file.source))?;
    let target = load_category(dir.join(&file.target))?;
    Ok(Embedding { source, target, map: file.map })
}

pub fn save_embedding(
    path: impl AsRef<Path>,
    source: &str,
    target: &str,
    map: &[usize],
) -> Result<(), IoError> {
    let file = EmbeddingFile {
        source: source.to_string(),
        target: target.to_string(),
        map: map.to_vec(),
    };
    write_json(path.as_ref(), &file)
}
