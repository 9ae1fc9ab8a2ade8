//! Morphs between planar straight-line grid drawings of a rooted tree,
//! using intermediate 3D grid drawings so that every frame stays
//! crossing-free and all vertices stay on integer grid points.

pub mod canonical;
pub mod decomp;
pub mod exact;
pub mod io;
pub mod lift_edges;
pub mod lift_paths;
pub mod model;
pub mod morph;
pub mod tradeoff;
pub mod verify;
