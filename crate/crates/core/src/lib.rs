//! Numerical laboratory for the classical communication cost of transmitting
//! quantum states.
//!
//! Two parties hold the halves of a sampling task: Alice a pure state (or a
//! ±1 function table), Bob a measurement (or a second table). The crate
//! provides exact simulators of the quantum protocols that solve these tasks,
//! classical protocols with bit-exact communication accounting, and a battery
//! of checks for the distributional identities and inequalities the analysis
//! of those protocols rests on.
//!
//! Module map:
//!
//! * [`math`] — sign vectors, statevectors, measurements, the Walsh–Hadamard
//!   transform, Haar sampling, and scalar helpers.
//! * [`protocol`] — deterministic protocol trees, rectangle decomposition,
//!   and acceptance accounting for randomized protocols.
//! * [`quantum`] — distributed Fourier sampling and distributed quantum
//!   sampling, both as closed-form distributions and as statevector
//!   pipelines.
//! * [`classical`] — the amplitude-grid state codec, the shared-codebook
//!   protocol for the vector-in-subspace problem, the sampled-positions
//!   gap-orthogonality tester, and query-to-communication adapters.
//! * [`lemma`] — correlated sign-pair distributions and the verification
//!   checks (overlap laws, anticoncentration sweeps, tail bounds, entropy
//!   calculus).
//! * [`rng`] — seeded, splittable random number generators.
//!
//! # Conventions
//!
//! Bit strings `s ∈ {0,1}^n` are packed into integers little-endian: bit `i`
//! of the integer is coordinate `i` of the string, so `s·x mod 2` is
//! `(s & x).count_ones() & 1`. Sign vectors index the hypercube the same way:
//! the pattern bit is `1` exactly where the entry is `-1`.
//!
//! All randomness flows through explicitly passed generators; see [`rng`]
//! for the master/worker split rule. Every sweep in this crate is
//! reproducible from a single 64-bit seed.

pub mod classical;
pub mod lemma;
pub mod math;
pub mod protocol;
pub mod quantum;
pub mod rng;

pub use math::{
    dist::OutcomeDistribution, measurement::Measurement, sign::SignVector, state::PureState,
    MathError,
};
pub use protocol::{run::ProtocolRun, ProtocolError};
