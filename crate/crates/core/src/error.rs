use thiserror::Error;

/// Failures raised while building a model or driving a recording session.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("session title must not be empty")]
    InvalidTitle,
    #[error("label {0:?} does not yield a usable name")]
    UnusableName(String),
    #[error("vertex name {0:?} must start with \"v_\" followed by at least one character")]
    InvalidVertexName(String),
    #[error("edge name {0:?} must start with \"e_\" followed by at least one character")]
    InvalidEdgeName(String),
    #[error("id {0:?} is already used in this model")]
    DuplicateId(String),
    #[error("a vertex named {0:?} already exists")]
    DuplicateVertexName(String),
    #[error("edge {name:?} from {source_id} to {target_id} already exists")]
    DuplicateEdge {
        name: String,
        source_id: String,
        target_id: String,
    },
    #[error("vertex {0:?} does not exist in this model")]
    DanglingEndpoint(String),
    #[error("session is not recording")]
    SessionNotActive,
}
