pub mod anneal;
pub mod energy;
pub mod solve;
pub mod specfun;
