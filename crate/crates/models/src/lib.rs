//! Hamiltonians and symmetry generators of the two-matrix models.
//!
//! Builders come in two flavours: `*_terms` returns a symbolic [`TermSum`]
//! that can be compiled for matrix-free use at large cutoffs, while
//! `build_*` returns an explicit [`SparseOperator`].

mod bosonic;
mod generators;
mod local;
mod minibmn;
mod params;

pub use bosonic::{bosonic_hamiltonian_terms, build_bosonic_hamiltonian};
pub use generators::{
    build_gauge_generators, build_quarter_turn, build_so2_generator, deform, deform_terms,
    fermion_number_terms, fermion_parity_terms, gauge_casimir_terms, gauge_generator_terms,
    quarter_turn, so2_generator_terms,
};
pub use local::{lowering, number, position, momentum, raising};
pub use minibmn::{
    build_minibmn_hamiltonian, build_supercharge, minibmn_hamiltonian_terms, supercharge_terms,
};
pub use params::{BosonicParams, Deformation, MiniBmnParams, Model};

pub use operator_core::{BasisSpec, CoreError, Result, SparseOperator, TermSum};
