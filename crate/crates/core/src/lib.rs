//! Numerical toolkit for classical electromagnetic fields in linear
//! polarizable and magneto-electric media, built on exterior calculus over
//! a fixed Lorentzian orthonormal frame.
//!
//! The crate provides, bottom up:
//!
//! - [`exterior`]: 4-dimensional exterior algebra with signature
//!   (−,+,+,+), wedge, interior product, metric duals and the Hodge dual
//!   pinned by Φ∧⋆Ψ = ⟨Φ,Ψ⟩ vol with vol = e^0∧e^1∧e^2∧e^3;
//! - [`fields`]: observer decompositions of the field and excitation
//!   2-forms, Poynting 1-forms, polarization splits, and finite-difference
//!   exterior derivatives on Minkowski coordinates;
//! - [`media`]: linear constitutive tensors, their spatial blocks relative
//!   to a medium velocity, the Post invariant and a deterministic search
//!   deciding intrinsic magneto-electricity;
//! - [`sem`]: drive 3-forms and stress-energy-momentum tensors, including
//!   the velocity-dependent symmetric tensor and the velocity-free
//!   symmetrized alternative, with conservation residuals;
//! - [`variation`]: one-parameter coframe families, lifted Hodge duals and
//!   constitutive blocks, the medium action density and the
//!   finite-difference verification that its derivative is reproduced by
//!   the drive forms;
//! - [`conformance`]: seeded random suites shared by tests and the CLI
//!   self-test.
//!
//! Units are natural (c = ε0 = μ0 = 1); rescaling belongs at I/O
//! boundaries.

#![allow(clippy::needless_range_loop)] // explicit tensor indices read better here

pub mod conformance;
pub mod error;
pub mod exterior;
pub mod fields;
pub mod lorentz;
pub mod media;
pub mod optim;
pub mod sampling;
pub mod sem;
pub mod variation;

pub use error::{CoreError, Result};
pub use exterior::{Frame, PForm, Vector4};
pub use fields::{FieldDecomp, SpacetimeField, Velocity};
pub use media::{Classification, ClassifyOptions, ConstitutiveZ, Verdict, ZetaBlocks};
pub use sem::{DriveForms, SemTensor};
pub use variation::{CoframeVariation, LiftedState};
