//! Live recording context that stitches vertex and edge events into a model.
//!
//! Events arrive as bare labels with no linkage between them. The session keeps
//! a cursor on the current vertex and at most one pending edge label:
//!
//! * first vertex with nothing pending becomes the start element;
//! * a pending edge is drawn from the cursor to the next vertex (a self-loop
//!   on that vertex when no cursor exists yet);
//! * a vertex that differs from the cursor with nothing pending gets a
//!   synthesized `e_LOADED_<PAGE>` edge;
//! * repeating the cursor vertex with nothing pending adds no edge.
//!
//! An edge arriving while another is still pending closes the older one as a
//! self-loop on the cursor.

use tracing::warn;

use crate::error::ModelError;
use crate::model::{Model, VertexId};
use crate::naming::{loaded_edge_name, sanitize_edge_name, sanitize_vertex_name};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SessionState {
    Recording,
    Finalized,
}

#[derive(Debug, Clone)]
pub struct Session<S = f64> {
    model: Model<S>,
    current: Option<VertexId>,
    pending_edge: Option<String>,
    state: SessionState,
}

impl<S: Scalar> Session<S> {
    pub fn new(title: &str) -> Result<Self, ModelError> {
        let title = title.trim();
        if title.is_empty() {
            return Err(ModelError::InvalidTitle);
        }
        Ok(Self {
            model: Model::new(title),
            current: None,
            pending_edge: None,
            state: SessionState::Recording,
        })
    }

    pub fn model(&self) -> &Model<S> {
        &self.model
    }

    pub fn current_vertex(&self) -> Option<&VertexId> {
        self.current.as_ref()
    }

    pub fn pending_edge(&self) -> Option<&str> {
        self.pending_edge.as_deref()
    }

    pub fn state(&self) -> SessionState {
        self.state
    }

    pub fn is_recording(&self) -> bool {
        self.state == SessionState::Recording
    }

    fn ensure_recording(&self) -> Result<(), ModelError> {
        if self.is_recording() {
            Ok(())
        } else {
            Err(ModelError::SessionNotActive)
        }
    }

    /// Records a page load and returns the id of the resulting vertex.
    pub fn record_vertex(&mut self, raw_label: &str) -> Result<VertexId, ModelError> {
        self.ensure_recording()?;
        let name = sanitize_vertex_name(raw_label)?;
        let vertex = self.model.get_or_create_vertex(&name)?.id().clone();

        if self.model.start_element_id().is_none() {
            self.model.set_start_element(&vertex)?;
        }

        match (self.pending_edge.take(), self.current.as_ref()) {
            (Some(edge), from) => {
                let from = from.unwrap_or(&vertex).clone();
                self.model.get_or_create_edge(&edge, &from, &vertex)?;
            }
            (None, Some(from)) if *from != vertex => {
                let from = from.clone();
                self.model
                    .get_or_create_edge(&loaded_edge_name(&name), &from, &vertex)?;
            }
            (None, _) => {}
        }

        self.current = Some(vertex.clone());
        Ok(vertex)
    }

    /// Records a user action. The edge is only drawn once the next vertex is known.
    pub fn record_edge(&mut self, raw_label: &str) -> Result<(), ModelError> {
        self.ensure_recording()?;
        let name = sanitize_edge_name(raw_label)?;
        self.resolve_pending_as_self_loop()?;
        self.pending_edge = Some(name);
        Ok(())
    }

    /// Ends the recording and returns the completed model.
    ///
    /// The session keeps its model; any later event or second finalize is
    /// rejected with [`ModelError::SessionNotActive`].
    pub fn finalize(&mut self) -> Result<Model<S>, ModelError> {
        self.ensure_recording()?;
        self.resolve_pending_as_self_loop()?;
        self.state = SessionState::Finalized;
        Ok(self.model.clone())
    }

    fn resolve_pending_as_self_loop(&mut self) -> Result<(), ModelError> {
        let Some(edge) = self.pending_edge.take() else {
            return Ok(());
        };
        match self.current.clone() {
            Some(at) => {
                self.model.get_or_create_edge(&edge, &at, &at)?;
            }
            None => warn!(edge = %edge, "discarding edge recorded before any vertex"),
        }
        Ok(())
    }
}
