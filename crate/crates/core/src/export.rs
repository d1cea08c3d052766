//! GraphWalker JSON model files.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::layout::{generate_plane_data, LayoutConfig};
use crate::model::Model;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("vertex {0} has no coordinates; run the layout first")]
    LayoutMissing(String),
    #[error("failed to write {path}: {source}")]
    StorageFailure {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("failed to encode model: {0}")]
    Encode(#[from] serde_json::Error),
}

/// Top-level file object. Always holds exactly one model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "S: Scalar"))]
pub struct ModelDocument<S = f64> {
    pub models: Vec<ModelEntry<S>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", bound(deserialize = "S: Scalar"))]
pub struct ModelEntry<S = f64> {
    pub name: String,
    pub generator: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_element_id: Option<String>,
    pub vertices: Vec<VertexEntry<S>>,
    pub edges: Vec<EdgeEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(deserialize = "S: Scalar"))]
pub struct VertexEntry<S = f64> {
    pub id: String,
    pub name: String,
    pub properties: VertexProperties<S>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexProperties<S = f64> {
    pub x: S,
    pub y: S,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EdgeEntry {
    pub id: String,
    pub name: String,
    pub source_vertex_id: String,
    pub target_vertex_id: String,
}

impl<S: Scalar> ModelDocument<S> {
    /// The single model of the document.
    pub fn model(&self) -> &ModelEntry<S> {
        &self.models[0]
    }

    pub fn to_json(&self) -> Result<String, ExportError> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Maps a laid-out model onto the file schema, keeping creation order.
pub fn parse_model<S: Scalar>(model: &Model<S>) -> Result<ModelDocument<S>, ExportError> {
    let vertices = model
        .vertices()
        .iter()
        .map(|v| {
            let p = v
                .position()
                .ok_or_else(|| ExportError::LayoutMissing(v.id().to_string()))?;
            Ok(VertexEntry {
                id: v.id().to_string(),
                name: v.name().to_owned(),
                properties: VertexProperties { x: p.x, y: p.y },
            })
        })
        .collect::<Result<Vec<_>, ExportError>>()?;
    let edges = model
        .edges()
        .iter()
        .map(|e| EdgeEntry {
            id: e.id().to_string(),
            name: e.name().to_owned(),
            source_vertex_id: e.source().to_string(),
            target_vertex_id: e.target().to_string(),
        })
        .collect();
    Ok(ModelDocument {
        models: vec![ModelEntry {
            name: model.name().to_owned(),
            generator: model.generator().to_owned(),
            start_element_id: model.start_element_id().map(ToString::to_string),
            vertices,
            edges,
        }],
    })
}

/// Lays out a finalized model and converts it to a document.
pub fn render<S: Scalar>(model: Model<S>, layout: &LayoutConfig<S>) -> Result<ModelDocument<S>, ExportError> {
    parse_model(&generate_plane_data(model, layout))
}

/// File stem for a model name: anything outside `[A-Za-z0-9_-]` becomes `_`.
pub fn file_stem(model_name: &str) -> String {
    model_name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Writes `<stem>.json` into `out_dir`, replacing any existing file, and
/// returns its path.
pub fn save_mbt_json<S: Scalar>(
    document: &ModelDocument<S>,
    model_name: &str,
    out_dir: &Path,
) -> Result<PathBuf, ExportError> {
    let path = out_dir.join(format!("{}.json", file_stem(model_name)));
    write_document(document, &path)?;
    Ok(path)
}

/// Writes the document to an explicit path.
pub fn write_document<S: Scalar>(document: &ModelDocument<S>, path: &Path) -> Result<(), ExportError> {
    let text = document.to_json()?;
    fs::write(path, text).map_err(|source| ExportError::StorageFailure {
        path: path.to_owned(),
        source,
    })
}
