//! Exact arithmetic for factored generic Schur elements of cyclotomic Hecke
//! algebras.
//!
//! The crate represents Schur elements in the factored form
//! `xi * N * prod psi_i(M_i)^{n_i}` over exact cyclotomic numbers, computes
//! the valuation and degree of their cyclotomic specializations both by the
//! closed formula and by full Laurent expansion, detects essential monomials
//! and hyperplanes through norms of psi(1), computes Rouquier blocks of a
//! specialization as joins of stored per-hyperplane partitions, and verifies
//! with good sign maps that valuation and degree are constant on every block.
//! Group data is read from strict JSON dataset files; `cli` exposes the whole
//! pipeline as a command-line tool.

pub mod blocks;
pub mod cli;
pub mod cyclotomic;
pub mod dataset;
pub mod error;
pub mod essential;
pub mod rational;
pub mod schur;
pub mod specialization;
pub mod verifier;

pub use blocks::{join, rouquier_blocks, BlockData, Partition};
pub use cyclotomic::{cyclotomic_polynomial, CycNum, CycPoly};
pub use dataset::{AppendixRow, CharacterStub, FieldInfo, GroupDataset, SlotSubstitution};
pub use error::{Error, Result};
pub use essential::{
    essential_hyperplanes, essential_monomials, hyperplanes_containing, EssentialMonomial,
    Hyperplane, Witness,
};
pub use schur::{
    canonical_monomial, validate_model, Monomial, Orbit, SchurFactor, SchurModel, Sign, VarIndex,
    Violation,
};
pub use specialization::{
    expand, index_relation_holds, monomial_exponent, neg_part, pos_part, valuation_degree,
    ExpandedSchur, Specialization, ValDeg,
};
pub use verifier::{
    check_aa_sum, check_theorem, compare, compare_block, compare_full, factor_degrees,
    generic_degree, generic_valuation, is_multiple, reduce_mod_hyperplane, sym_diff_with_mult,
    FactorDegrees, LinearForm, SignAssignment, SumReport, VerifyReport,
};
