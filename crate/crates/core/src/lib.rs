//! Exact symbolic toolkit for difference Riccati equations over `Q(q)(t)`.

pub mod arith;
pub mod criterion;
pub mod difference;
pub mod error;
pub mod expr;
pub mod generic;
pub mod mobius;
pub mod solver;
pub mod tietze;

pub use arith::{Const, Field, FieldElem, Order, Place, Poly, Rat, RatFunc, Valuation};
pub use criterion::{
    build_criterion, build_r, hypothesis_check, lemma_nullspace_check, verify_construction,
    AlgebraicHypothesis, ConstructionCheck, HypothesisReport, Lemma, LemmaCheck, LinearDiffOp,
};
pub use difference::{derive, verify_commutation, DiffOp};
pub use error::{Error, ParseError, Result};
pub use expr::{parse_elem, parse_matrix, render, render_gen, render_matrix};
pub use generic::{commutation_defect, ext_derive, ext_tau, GenStructure};
pub use mobius::{cocycle, eq_pair, eq_residual, gauge, mobius_apply, GenElem, Mat2};
pub use solver::{
    indicial_orders, solve, solve_bounded, solve_linear_qdifference, universal_denominator,
    verify_solution, ObstructionCert, SearchScope, SolveOutcome, SolveReport,
};
pub use tietze::{classify, normalize, step, FormClass, NormalizationResult};
