//! Maslov indices of loops and paths in the Lagrangian Grassmannian of
//! `(R^2n, ω)`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of immutable inputs, so values can be shared across threads.
//!
//! * [`symplectic`]: frames, the standard form, intersection dimensions,
//!   crossing forms, signatures and symplectic reduction.
//! * [`path`]: sampled paths of Lagrangian subspaces and chart paths.
//! * [`index`]: the winding and crossing engines, the Hörmander index and
//!   the relative index of a pair of loops.
//! * [`bundle`]: the Z4 holonomy, Hörmander's chart-transition factor and
//!   the quadratic phase-function machinery.
//! * [`generate`] and [`verify`]: seeded random instances and the property
//!   suites built on them.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bundle;
pub mod error;
pub mod generate;
pub mod index;
mod linalg;
pub mod path;
pub mod symplectic;
pub mod verify;

pub use bundle::{
    check_equivariance, check_signature_relation, holonomy_value, q_psi, transition_factor,
    EighthTurn, PhaseChart, QPsi, QuarterTurn, SignatureRelation, TestFunction,
};
pub use error::{ErrorKind, MaslovError, Result};
pub use index::{
    bracket_index, close_in_transversal_chart, crossing_index, detect_crossings, hormander_index,
    relative_index, winding_index, BetaChoice, ClosingSchedule, CrossingEvent, CrossingReport,
    HormanderMethod, WindingReport,
};
pub use linalg::{Complex64, Matrix};
pub use path::LagrangianPath;
pub use symplectic::{
    graph_form, intersection_dim, reduce, signature, signature_split, transversality_margin,
    IsotropicSubspace, LagrangianFrame, SymQuadForm, SymplecticSpace, Tolerances,
};
