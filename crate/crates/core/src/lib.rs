//! Finite-scale computations on fine hyperbolic graphs: metrics and
//! geodesics, circuit counts, shadow-set measures toward boundary proxies,
//! and the measure combiner for group actions with amenable stabilizers.

pub mod action;
pub mod boundary;
pub mod error;
pub mod experiments;
pub mod fineness;
pub mod generators;
pub mod geodesic;
pub mod graph;
pub mod group;
pub mod io;
pub mod measure;
pub mod path;

pub use error::{Error, Result};
pub use graph::{Edge, Graph, GraphBuilder, HalfInt, VertexId};
pub use path::{Circuit, Path};
