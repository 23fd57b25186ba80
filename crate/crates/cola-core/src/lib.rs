//! Core engines for decentralized consensus optimization over synchronous
//! message-passing networks.
//!
//! The crate simulates a set of `n` nodes, each holding a private smooth
//! convex cost `f_i`, that cooperate to minimize `sum_i f_i(x)` by
//! exchanging `p`-dimensional primal variables with their neighbors. Four
//! round engines are provided:
//!
//! * COLA — communication-censored linearized ADMM (gradient-based primal
//!   step, transmissions suppressed while the local iterate moves less than
//!   a decaying threshold);
//! * DLM — the uncensored special case of COLA (zero threshold);
//! * COCA — communication-censored ADMM (exact per-node subproblem solves);
//! * ADMM — the uncensored special case of COCA;
//! * ETSD — event-triggered subgradient descent with Metropolis mixing.
//!
//! Everything here is `no_std + alloc`: pure state-in/state-out arithmetic
//! with no clocks and no IO. Wall-time enters only through the [`WallClock`]
//! trait so a host crate can attach a real timer. The companion `cola-sim`
//! crate adds configuration files, CSV traces, and a CLI.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algorithms;
pub mod analysis;
pub mod censoring;
pub mod graph;
pub mod linalg;
pub mod problems;

pub use algorithms::{
    run, AlgoParams, AlgoState, AlgorithmKind, NullClock, RoundResult, RunConfig, RunError,
    RunTrace, StopRule, TraceRow, WallClock,
};
pub use censoring::{CensorOutcome, ThresholdSchedule};
pub use graph::{IncidenceSet, Network, SpectralInfo, TopologyKind};
pub use problems::{Problem, ProblemConstants};
