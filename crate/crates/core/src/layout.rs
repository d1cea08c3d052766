//! Circular placement of vertices ordered by degree.

use std::cmp::Ordering;

use thiserror::Error;

use crate::error::ModelError;
use crate::model::{Model, Point, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LayoutError {
    #[error("minimum separation must be positive and finite")]
    InvalidSeparation,
    #[error("rotation offset must lie in [0, 360) degrees")]
    InvalidRotation,
}

/// Separation between neighbouring vertices and the angle (degrees,
/// counterclockwise from +x) at which the first vertex is placed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayoutConfig<S = f64> {
    minimum_separation: S,
    rotation_offset: S,
}

impl<S: Scalar> LayoutConfig<S> {
    pub const DEFAULT_SEPARATION: f64 = 400.0;
    pub const DEFAULT_ROTATION: f64 = 90.0;

    pub fn new(minimum_separation: S, rotation_offset: S) -> Result<Self, LayoutError> {
        if !(minimum_separation.is_finite() && minimum_separation > S::zero()) {
            return Err(LayoutError::InvalidSeparation);
        }
        if !(rotation_offset >= S::zero() && rotation_offset < S::lit(360.0)) {
            return Err(LayoutError::InvalidRotation);
        }
        Ok(Self {
            minimum_separation,
            rotation_offset,
        })
    }

    pub fn minimum_separation(&self) -> S {
        self.minimum_separation
    }

    pub fn rotation_offset(&self) -> S {
        self.rotation_offset
    }
}

impl<S: Scalar> Default for LayoutConfig<S> {
    fn default() -> Self {
        Self {
            minimum_separation: S::lit(Self::DEFAULT_SEPARATION),
            rotation_offset: S::lit(Self::DEFAULT_ROTATION),
        }
    }
}

/// Counts edge endpoints on `vertex` (a self-loop counts twice) and caches the
/// result on the vertex.
pub fn compute_degree<S: Scalar>(model: &mut Model<S>, vertex: &VertexId) -> Result<usize, ModelError> {
    let index = model
        .vertex_index(vertex)
        .ok_or_else(|| ModelError::DanglingEndpoint(vertex.to_string()))?;
    let degree = model
        .edges()
        .iter()
        .map(|e| usize::from(e.source() == vertex) + usize::from(e.target() == vertex))
        .sum();
    model.vertices_mut()[index].set_degree(degree);
    Ok(degree)
}

/// Smallest radius at which `n` equidistant points on a circle are
/// `minimum_separation` apart along the chord. Zero for `n <= 1`.
pub fn circle_radius<S: Scalar>(n: usize, config: &LayoutConfig<S>) -> S {
    if n <= 1 {
        return S::zero();
    }
    let half_step = S::PI() / S::from_usize_lossy(n);
    config.minimum_separation / (S::lit(2.0) * half_step.sin())
}

/// Places every vertex on a circle around the origin.
///
/// Vertices are sorted ascending by degree (ties by id) and the `i`-th one is
/// put at `rotation + i * 360/n` degrees. Graph structure is left untouched.
pub fn generate_plane_data<S: Scalar>(mut model: Model<S>, config: &LayoutConfig<S>) -> Model<S> {
    let ids: Vec<VertexId> = model.vertices().iter().map(|v| v.id().clone()).collect();
    for id in &ids {
        compute_degree(&mut model, id).expect("id taken from the model");
    }

    let n = ids.len();
    let mut order: Vec<usize> = (0..n).collect();
    {
        let vertices = model.vertices();
        order.sort_by(|&a, &b| {
            vertices[a]
                .degree()
                .cmp(&vertices[b].degree())
                .then_with(|| id_order(vertices[a].id(), vertices[b].id()))
        });
    }

    let radius = circle_radius(n, config);
    let full_turn = S::lit(360.0);
    let step = full_turn / S::from_usize_lossy(n.max(1));
    let vertices = model.vertices_mut();
    for (slot, &index) in order.iter().enumerate() {
        let point = if n == 1 {
            Point {
                x: S::zero(),
                y: S::zero(),
            }
        } else {
            let degrees = (config.rotation_offset + S::from_usize_lossy(slot) * step) % full_turn;
            let theta = degrees.to_radians();
            Point {
                x: radius * theta.cos(),
                y: radius * theta.sin(),
            }
        };
        vertices[index].set_position(point);
    }
    model
}

/// Shorter ids first so that sequential ids sort numerically (`n2` < `n10`).
fn id_order(a: &VertexId, b: &VertexId) -> Ordering {
    (a.as_str().len(), a.as_str()).cmp(&(b.as_str().len(), b.as_str()))
}
