pub mod error;
pub mod fixtures;
pub mod hypergraph;
pub mod io;
pub mod linalg;
pub mod par;
pub mod partitions;
pub mod quantum;
pub mod reduction;
pub mod structure;
pub mod sweep;
