//! Structural checks for model files, independent of how they were produced.

use std::collections::HashSet;
use std::fmt;

use serde_json::{Map, Value};

use crate::naming::{EDGE_PREFIX, VERTEX_PREFIX};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Syntax(String),
    /// JSON path of a missing or mistyped field.
    MissingField(String),
    ModelCount(usize),
    DanglingEndpoint { edge: String, vertex: String },
    DuplicateId(String),
    NamePrefix { id: String, name: String },
    StartElementNotFound(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Syntax(msg) => write!(f, "syntax: {msg}"),
            Violation::MissingField(path) => write!(f, "missing or invalid field: {path}"),
            Violation::ModelCount(n) => write!(f, "expected exactly one model, found {n}"),
            Violation::DanglingEndpoint { edge, vertex } => {
                write!(f, "edge {edge} references unknown vertex {vertex}")
            }
            Violation::DuplicateId(id) => write!(f, "duplicate id {id}"),
            Violation::NamePrefix { id, name } => {
                write!(f, "element {id} has name {name:?} without the required prefix")
            }
            Violation::StartElementNotFound(id) => write!(f, "startElementId {id} is not a vertex"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(f, "ok");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks a model file. An empty report means the file is accepted.
pub fn validate_document(text: &str) -> ValidationReport {
    let mut out = Vec::new();
    match serde_json::from_str::<Value>(text) {
        Err(e) => out.push(Violation::Syntax(e.to_string())),
        Ok(root) => check_root(&root, &mut out),
    }
    ValidationReport { violations: out }
}

fn check_root(root: &Value, out: &mut Vec<Violation>) {
    let Some(models) = root.get("models").and_then(Value::as_array) else {
        out.push(Violation::MissingField("models".into()));
        return;
    };
    if models.len() != 1 {
        out.push(Violation::ModelCount(models.len()));
    }
    for (i, model) in models.iter().enumerate() {
        check_model(model, &format!("models[{i}]"), out);
    }
}

fn string_field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str, out: &mut Vec<Violation>) -> Option<&'a str> {
    let v = obj.get(key).and_then(Value::as_str);
    if v.is_none() {
        out.push(Violation::MissingField(format!("{path}.{key}")));
    }
    v
}

fn check_model(model: &Value, path: &str, out: &mut Vec<Violation>) {
    let Some(model) = model.as_object() else {
        out.push(Violation::MissingField(path.to_owned()));
        return;
    };
    string_field(model, "name", path, out);
    string_field(model, "generator", path, out);

    let mut ids = HashSet::new();
    let mut vertex_ids = HashSet::new();

    match model.get("vertices").and_then(Value::as_array) {
        None => out.push(Violation::MissingField(format!("{path}.vertices"))),
        Some(vertices) => {
            for (i, v) in vertices.iter().enumerate() {
                let vpath = format!("{path}.vertices[{i}]");
                let Some(v) = v.as_object() else {
                    out.push(Violation::MissingField(vpath));
                    continue;
                };
                let id = string_field(v, "id", &vpath, out);
                let name = string_field(v, "name", &vpath, out);
                let props = v.get("properties").and_then(Value::as_object);
                for axis in ["x", "y"] {
                    if !props.is_some_and(|p| p.get(axis).is_some_and(Value::is_number)) {
                        out.push(Violation::MissingField(format!("{vpath}.properties.{axis}")));
                    }
                }
                if let Some(id) = id {
                    if !ids.insert(id.to_owned()) {
                        out.push(Violation::DuplicateId(id.to_owned()));
                    }
                    vertex_ids.insert(id.to_owned());
                    check_prefix(id, name, VERTEX_PREFIX, out);
                }
            }
        }
    }

    match model.get("edges").and_then(Value::as_array) {
        None => out.push(Violation::MissingField(format!("{path}.edges"))),
        Some(edges) => {
            for (i, e) in edges.iter().enumerate() {
                let epath = format!("{path}.edges[{i}]");
                let Some(e) = e.as_object() else {
                    out.push(Violation::MissingField(epath));
                    continue;
                };
                let id = string_field(e, "id", &epath, out);
                let name = string_field(e, "name", &epath, out);
                let label = id.unwrap_or(&epath).to_owned();
                if let Some(id) = id {
                    if !ids.insert(id.to_owned()) {
                        out.push(Violation::DuplicateId(id.to_owned()));
                    }
                    check_prefix(id, name, EDGE_PREFIX, out);
                }
                for key in ["sourceVertexId", "targetVertexId"] {
                    if let Some(vertex) = string_field(e, key, &epath, out) {
                        if !vertex_ids.contains(vertex) {
                            out.push(Violation::DanglingEndpoint {
                                edge: label.clone(),
                                vertex: vertex.to_owned(),
                            });
                        }
                    }
                }
            }
        }
    }

    match model.get("startElementId") {
        None => {}
        Some(Value::String(start)) => {
            if !vertex_ids.contains(start.as_str()) {
                out.push(Violation::StartElementNotFound(start.clone()));
            }
        }
        Some(_) => out.push(Violation::MissingField(format!("{path}.startElementId"))),
    }
}

fn check_prefix(id: &str, name: Option<&str>, prefix: &str, out: &mut Vec<Violation>) {
    if let Some(name) = name {
        if !(name.starts_with(prefix) && name.len() > prefix.len()) {
            out.push(Violation::NamePrefix {
                id: id.to_owned(),
                name: name.to_owned(),
            });
        }
    }
}
