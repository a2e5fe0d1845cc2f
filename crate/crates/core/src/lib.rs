pub mod cli;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod monodromy;
pub mod nekrasov;
pub mod partitions;
pub mod series;
pub mod special_functions;
pub mod summation;
pub mod tau_engine;
