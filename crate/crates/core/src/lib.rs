//! Twist spaces of real structures over trivalent graphs, real-part
//! circle counting, and combinatorial patchworking of non-singular
//! plane tropical curves.

pub mod corpus;
pub mod gf2;
pub mod graph;
pub mod randgen;
pub mod realpart;
pub mod tropical;
pub mod verify;
pub mod wspace;
