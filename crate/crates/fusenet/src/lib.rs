//! Fusion-network simulation toolkit for foliated Floquet color codes (FFCC).
//!
//! The crate builds measurement-based fault-tolerance lattices (the foliated
//! Floquet color code and the Raussendorf cubic lattice), decomposes them into
//! photonic resource states joined by fusion measurements, injects erasure and
//! Pauli noise, decodes with minimum-weight perfect matching plus erasure
//! handling, and estimates logical error rates and thresholds by Monte-Carlo
//! sweeps.
//!
//! Module map:
//!
//! * [`graphstate`] — graph states, local complementation, X-measurement rule,
//!   branched-chain emitter programs, LC-equivalence search.
//! * [`tableau`] — binary-symplectic stabilizer tableau used as an independent
//!   oracle for the graph rewrite rules and emitter circuits.
//! * [`gf2`] — dense GF(2) linear algebra (rank, nullspace, solving).
//! * [`hex`] — periodic honeycomb lattice with face/edge 3-coloring.
//! * [`lattice`] — foliated lattices, detector derivation, primal/dual split,
//!   correlation surfaces.
//! * [`fusion`] — resource-state decompositions and the outcome→detector
//!   incidence ("matching matrix").
//! * [`noise`] — IID, weighted-IID, and fusion-based noise samplers.
//! * [`decode`] — matching-graph construction, MWPM with erasure super-cells,
//!   correlation-surface repair.
//! * [`mc`] — Monte-Carlo logical-rate estimation and threshold scans.
//! * [`emitter`] — Pauli-frame simulation of photon-emitter circuits.
//! * [`report`] — CSV/JSON output schemas.

pub mod decode;
pub mod emitter;
pub mod error;
pub mod fusion;
pub mod gf2;
pub mod graphstate;
pub mod hex;
pub mod lattice;
pub mod mc;
pub mod noise;
pub mod report;
pub mod rng;
pub mod tableau;

pub use error::{Error, Result};
