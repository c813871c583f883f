//! Construction and verification engine for Floquet codes built from paired
//! twist-defect networks.
//!
//! The crate simulates measurement schedules on mixed-dimension qudit
//! lattices with an exact stabilizer formalism, verifies persistent
//! stabilizers, logical-operator automorphisms, the no-long-loops criterion
//! and boundary schedules, and evaluates the chiral (GNVW) index of the
//! unitarized dynamics.
//!
//! Entry points by capability:
//! - [`pauli`]: generalized Pauli algebra on qudit registers.
//! - [`stabilizer`]: stabilizer groups, measurement, canonical forms.
//! - [`lattice`] / [`cover`]: honeycomb geometry, dimer covers, homology.
//! - [`chiral`]: Majorana-mode flow and the GNVW index.
//! - [`anyon`]: Abelian anyon theories and automorphisms.
//! - [`builder`]: on-site representations and check schedules.
//! - [`runner`]: schedule execution, persistence and automorphism reports.
//!
//! Runnable examples covering each capability live under `examples/`; the
//! `floquet-forge` binary wires the same library calls behind subcommands.

pub mod anyon;
pub mod builder;
pub mod chiral;
pub mod cli;
pub mod cover;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod pauli;
pub mod report;
pub mod runner;
pub mod stabilizer;

pub use error::{Error, Result};
pub use pauli::{PauliString, QuditRegister};
