pub mod error;
pub mod graph;
pub mod spectral;
pub mod theorems;
pub mod factors;
pub mod trees;
pub mod packing;
pub mod certify;
pub mod enumerate;
pub mod verify;
mod flow;
