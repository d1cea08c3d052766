//! Core of the clickstream model generator.
//!
//! A recording [`Session`] turns an ordered stream of page-load (vertex) and
//! action (edge) events into a GraphWalker [`Model`]. Finalized models are laid
//! out on a circle by [`layout::generate_plane_data`] and serialized with
//! [`export::parse_model`].
//!
//! Coordinates are generic over the [`Scalar`] type; the `*F64` and `*F32`
//! aliases below pin the two supported precisions.

pub mod error;
pub mod eventlog;
pub mod export;
pub mod layout;
pub mod model;
pub mod naming;
pub mod scalar;
pub mod session;
pub mod validate;
pub mod watchdog;

pub use error::ModelError;
pub use export::{parse_model, render, save_mbt_json, ExportError, ModelDocument};
pub use layout::{circle_radius, compute_degree, generate_plane_data, LayoutConfig};
pub use model::{Edge, EdgeId, Model, Point, Vertex, VertexId, DEFAULT_GENERATOR};
pub use naming::{sanitize_edge_name, sanitize_vertex_name};
pub use scalar::Scalar;
pub use session::{Session, SessionState};
pub use validate::{validate_document, ValidationReport, Violation};
pub use watchdog::{TimerError, WatchdogTimer};

pub type ModelF64 = Model<f64>;
pub type ModelF32 = Model<f32>;
pub type VertexF64 = Vertex<f64>;
pub type VertexF32 = Vertex<f32>;
pub type SessionF64 = Session<f64>;
pub type SessionF32 = Session<f32>;
pub type LayoutConfigF64 = LayoutConfig<f64>;
pub type LayoutConfigF32 = LayoutConfig<f32>;
pub type ModelDocumentF64 = ModelDocument<f64>;
pub type ModelDocumentF32 = ModelDocument<f32>;
