//! Invariants of free associative algebras k⟨x1, …, xr⟩ under linear
//! actions of Hopf algebras presented by group-like and skew-primitive
//! generators, computed degree by degree in exact arithmetic.
//!
//! The pieces, bottom up:
//!
//! - [`exactfield`]: ℚ and GF(p) scalars.
//! - [`freealg`]: words, sparse noncommutative polynomials, the insert operator.
//! - [`action`]: generator data and its extension to operators on the whole algebra.
//! - [`invariants`]: graded invariant bases, decomposables, the generation probe.
//! - [`constructions`]: `c_n`, scalar classification, minimal degree, the
//!   Jordan-block element, prefix pumping.
//! - [`specfile`] and [`report`]: the JSON document format and renderings.

pub mod action;
pub mod constructions;
pub mod error;
pub mod exactfield;
pub mod freealg;
pub mod invariants;
pub mod linalg;
pub mod presets;
pub mod report;
pub mod specfile;

pub use action::{validate_spec, ActionSpec, Finding, Matrix, Severity};
pub use constructions::{
    build_prefix_invariant, classify_action, cn_eval, insert_closure_check, jair_element, jair_verify,
    minimal_invariant_degree,
};
pub use error::{Error, Result};
pub use exactfield::{FieldSpec, Scalar};
pub use freealg::{insert, FreePoly, Word};
pub use invariants::{
    decomposable_component, invariant_basis, kernel_basis, probe_generation, GradedInvariants, ProbeReport,
    SizeCap,
};
pub use specfile::{parse_spec_file, serialize_spec};
