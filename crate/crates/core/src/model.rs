//! Graph types: vertices (UI states), edges (user actions) and the model that owns them.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::naming::{is_edge_name, is_vertex_name};
use crate::scalar::Scalar;

/// Random traversal until every edge has been covered once.
pub const DEFAULT_GENERATOR: &str = "random(edge_coverage(100))";

macro_rules! string_id {
    ($name:ident) => {
        #[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(id: impl Into<String>) -> Self {
                Self(id.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }
    };
}

string_id!(VertexId);
string_id!(EdgeId);

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<S = f64> {
    pub x: S,
    pub y: S,
}

/// A UI state.
#[derive(Debug, Clone, PartialEq)]
pub struct Vertex<S = f64> {
    id: VertexId,
    name: String,
    position: Option<Point<S>>,
    degree: usize,
}

impl<S: Scalar> Vertex<S> {
    pub fn id(&self) -> &VertexId {
        &self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `None` until the model has been laid out.
    pub fn position(&self) -> Option<Point<S>> {
        self.position
    }

    /// Cached count of edge endpoints touching this vertex; a self-loop counts twice.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub(crate) fn set_position(&mut self, p: Point<S>) {
        self.position = Some(p);
    }

    pub(crate) fn set_degree(&mut self, degree: usize) {
        self.degree = degree;
    }
}

/// A user action leading from one UI state to another.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    id: EdgeId,
    name: String,
    source: VertexId,
    target: VertexId,
}

impl Edge {
    pub fn id(&self) -> &EdgeId {
        &self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &VertexId {
        &self.source
    }

    pub fn target(&self) -> &VertexId {
        &self.target
    }

    pub fn is_self_loop(&self) -> bool {
        self.source == self.target
    }
}

type EdgeKey = (String, VertexId, VertexId);

/// A named GraphWalker model.
///
/// Vertices are unique by name, edges by `(name, source, target)`. Ids are
/// unique across both collections. Insertion order is preserved.
#[derive(Debug, Clone)]
pub struct Model<S = f64> {
    name: String,
    generator: String,
    start_element: Option<VertexId>,
    vertices: Vec<Vertex<S>>,
    edges: Vec<Edge>,
    vertex_by_id: HashMap<VertexId, usize>,
    vertex_by_name: HashMap<String, usize>,
    edge_by_key: HashMap<EdgeKey, usize>,
    ids: HashSet<String>,
}

impl<S: Scalar> PartialEq for Model<S> {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.generator == other.generator
            && self.start_element == other.start_element
            && self.vertices == other.vertices
            && self.edges == other.edges
    }
}

impl<S: Scalar> Model<S> {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            generator: DEFAULT_GENERATOR.to_owned(),
            start_element: None,
            vertices: Vec::new(),
            edges: Vec::new(),
            vertex_by_id: HashMap::new(),
            vertex_by_name: HashMap::new(),
            edge_by_key: HashMap::new(),
            ids: HashSet::new(),
        }
    }

    pub fn with_generator(mut self, generator: impl Into<String>) -> Self {
        self.generator = generator.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator(&self) -> &str {
        &self.generator
    }

    pub fn start_element_id(&self) -> Option<&VertexId> {
        self.start_element.as_ref()
    }

    pub fn vertices(&self) -> &[Vertex<S>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, id: &VertexId) -> Option<&Vertex<S>> {
        self.vertex_by_id.get(id).map(|&i| &self.vertices[i])
    }

    pub fn vertex_named(&self, name: &str) -> Option<&Vertex<S>> {
        self.vertex_by_name.get(name).map(|&i| &self.vertices[i])
    }

    pub fn contains_vertex(&self, id: &VertexId) -> bool {
        self.vertex_by_id.contains_key(id)
    }

    pub fn set_start_element(&mut self, id: &VertexId) -> Result<(), ModelError> {
        if !self.contains_vertex(id) {
            return Err(ModelError::DanglingEndpoint(id.to_string()));
        }
        self.start_element = Some(id.clone());
        Ok(())
    }

    /// Fetches the vertex with this name, creating it with the next sequential
    /// id (`n1`, `n2`, ...) when absent.
    pub fn get_or_create_vertex(&mut self, name: &str) -> Result<&Vertex<S>, ModelError> {
        if let Some(&i) = self.vertex_by_name.get(name) {
            return Ok(&self.vertices[i]);
        }
        let id = self.next_id('n', self.vertices.len());
        self.insert_vertex(VertexId(id), name)
    }

    /// Adds a vertex under a caller-chosen id.
    pub fn add_vertex(
        &mut self,
        id: impl Into<VertexId>,
        name: &str,
    ) -> Result<&Vertex<S>, ModelError> {
        let id = id.into();
        if self.vertex_by_name.contains_key(name) {
            return Err(ModelError::DuplicateVertexName(name.to_owned()));
        }
        self.insert_vertex(id, name)
    }

    fn insert_vertex(&mut self, id: VertexId, name: &str) -> Result<&Vertex<S>, ModelError> {
        if !is_vertex_name(name) {
            return Err(ModelError::InvalidVertexName(name.to_owned()));
        }
        if self.ids.contains(id.as_str()) {
            return Err(ModelError::DuplicateId(id.0));
        }
        let index = self.vertices.len();
        self.ids.insert(id.0.clone());
        self.vertex_by_id.insert(id.clone(), index);
        self.vertex_by_name.insert(name.to_owned(), index);
        self.vertices.push(Vertex {
            id,
            name: name.to_owned(),
            position: None,
            degree: 0,
        });
        Ok(&self.vertices[index])
    }

    /// Fetches the edge keyed by `(name, source, target)`, creating it with the
    /// next sequential id (`e1`, `e2`, ...) when absent. Endpoint degrees are
    /// bumped only on creation.
    pub fn get_or_create_edge(
        &mut self,
        name: &str,
        source: &VertexId,
        target: &VertexId,
    ) -> Result<&Edge, ModelError> {
        let key = (name.to_owned(), source.clone(), target.clone());
        if let Some(&i) = self.edge_by_key.get(&key) {
            return Ok(&self.edges[i]);
        }
        let id = self.next_id('e', self.edges.len());
        self.insert_edge(EdgeId(id), key)
    }

    /// Adds an edge under a caller-chosen id.
    pub fn add_edge(
        &mut self,
        id: impl Into<EdgeId>,
        name: &str,
        source: &VertexId,
        target: &VertexId,
    ) -> Result<&Edge, ModelError> {
        let key = (name.to_owned(), source.clone(), target.clone());
        if self.edge_by_key.contains_key(&key) {
            return Err(ModelError::DuplicateEdge {
                name: key.0,
                source_id: key.1 .0,
                target_id: key.2 .0,
            });
        }
        self.insert_edge(id.into(), key)
    }

    fn insert_edge(&mut self, id: EdgeId, key: EdgeKey) -> Result<&Edge, ModelError> {
        let (name, source, target) = key;
        if !is_edge_name(&name) {
            return Err(ModelError::InvalidEdgeName(name));
        }
        for endpoint in [&source, &target] {
            if !self.contains_vertex(endpoint) {
                return Err(ModelError::DanglingEndpoint(endpoint.to_string()));
            }
        }
        if self.ids.contains(id.as_str()) {
            return Err(ModelError::DuplicateId(id.0));
        }
        self.vertices[self.vertex_by_id[&source]].degree += 1;
        self.vertices[self.vertex_by_id[&target]].degree += 1;

        let index = self.edges.len();
        self.ids.insert(id.0.clone());
        self.edge_by_key
            .insert((name.clone(), source.clone(), target.clone()), index);
        self.edges.push(Edge {
            id,
            name,
            source,
            target,
        });
        Ok(&self.edges[index])
    }

    /// First free `<prefix><k>` with `k > count`.
    fn next_id(&self, prefix: char, count: usize) -> String {
        (count + 1..)
            .map(|k| format!("{prefix}{k}"))
            .find(|id| !self.ids.contains(id))
            .expect("unbounded id space")
    }

    pub(crate) fn vertices_mut(&mut self) -> &mut [Vertex<S>] {
        &mut self.vertices
    }

    pub(crate) fn vertex_index(&self, id: &VertexId) -> Option<usize> {
        self.vertex_by_id.get(id).copied()
    }
}
