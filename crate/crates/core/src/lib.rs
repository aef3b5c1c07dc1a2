//! Bond percolation laboratory on finite patches of regular {p,q} tilings of
//! the hyperbolic plane.
//!
//! The crate is organized around five pieces:
//!
//! * [`tiling`] — combinatorial generation of {p,q} patches, their Poincaré-disc
//!   embedding, dual patches and isoperimetric measurements;
//! * [`mobius`] / [`halfplane`] / [`tree`] — orientation-preserving isometries of
//!   the disc, their fixed-point classification, halfplane-into-halfplane
//!   mapping and the binary-tree embedding;
//! * [`percolation`] — Bernoulli bond percolation samples, cluster
//!   decomposition, dual percolation and coupled parameter sweeps with
//!   incremental union-find;
//! * [`boundary`] — finite-scale ends of clusters, nested boundary arcs on the
//!   ideal circle and the statistics built from them;
//! * [`unionfind`] / [`marks`] / [`graph`] — shared machinery.

pub mod boundary;
pub mod geom;
pub mod graph;
pub mod halfplane;
pub mod halfplane_map;
pub mod marks;
pub mod mobius;
pub mod percolation;
pub mod tiling;
pub mod tree;
pub mod unionfind;

pub use geom::Point;
pub use graph::LayeredGraph;
pub use halfplane::Halfplane;
pub use halfplane_map::map_halfplane_into;
pub use mobius::{IsometryClass, IsometryKind, MobiusIsometry};
pub use percolation::{ClusterDecomposition, PercolationSample, SweepResult};
pub use tiling::{DualPatch, SchlafliSymbol, TilingGraph};
pub use tree::{embed_binary_tree, BinaryTreeGraph, TreeEmbedding};
