//! Polar spaces and quadrics over GF(p) read off from finite groups.
//!
//! A finite group `G` with a normal subgroup `N` satisfying a few conditions
//! (`G/N` elementary abelian, `|G'| = p`, `N` central) yields a vector space
//! `G/N` over GF(p) with an alternating form given by commutators. For
//! `p = 2` with two extra conditions there is also a quadratic form given by
//! squares. Pauli groups of qubits and qudits are the motivating examples:
//! commuting operators become orthogonal vectors and maximal commuting sets
//! become generators of a symplectic polar space.

pub mod cyclotomic;
pub mod error;
pub mod forms;
pub mod geometry;
pub mod gfp;
pub mod group;
pub mod incidence;
pub mod pauli;
pub mod report;

pub use error::{AxiomViolation, Error, Result};
pub use forms::{
    bilinear_form, check_conditions, choose_generator, enumerate_admissible, quadratic_form,
    AlternatingForm, ConditionReport, GeneratorChoice, Level, QuadraticForm, Violation, Witness,
};
pub use geometry::{
    classify_quadric, derive_gq24, join_with_nucleus, quadric_of_group, quotient_polar_space,
    symplectic_polar_space, Flat, PolarSpace, ProjectivePoint, Quadric, QuadricKind,
};
pub use gfp::{GfVector, Subspace, VectorSpace};
pub use group::{Elem, FactorGroup, FiniteGroup, Subgroup};
pub use incidence::{export_incidence, ExportFormat, IncidenceStructure, Shade};
pub use pauli::{Flavor, PauliSpec};
