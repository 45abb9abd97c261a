//! Exact simulators of the quantum protocols: distributed Fourier sampling,
//! distributed quantum sampling, and the entangled double-output variant.

pub mod ddfs;
pub mod dfs;
pub mod dqs;

pub use ddfs::{ddfs_joint_pmf, ddfs_quantum_sample, ddfs_statevector_joint_pmf};
pub use dfs::{dfs_distribution, dfs_quantum_simulate, dfs_statevector_pmf, DfsInstance};
pub use dqs::{dqs_distribution, DqsInstance};
