//! Exact computation in parameter-dependent Clifford-type algebras
//! `A_n(2, α_j, γ_ij)`: multivector and polynomial-field arithmetic,
//! generalized Cauchy-Riemann operators, sufficient conditions for
//! associated operator pairs, and Picard solution of `u_t = F u` with
//! monogenic initial data.
//!
//! All arithmetic is over exact rationals; there are no tolerances anywhere.

pub mod algebra;
pub mod associated;
pub mod error;
pub mod expr;
pub mod ivp;
pub mod linalg;
pub mod operators;
pub mod poly;
pub mod rational;

pub use algebra::{classical_sign_oracle, Algebra, AlgebraSignature, Blade, Multivector};
pub use associated::{
    check_case1, check_case2, check_case_a, empirical_associated, enumerate_admissible,
    monogenic_basis, oracle_on_basis, AdmissibleBasis, Ansatz, CaseKind, ConditionEntry,
    ConditionReport, OracleReport,
};
pub use error::{Error, Result};
pub use expr::{parse_ast, parse_expr, Expr, ParseError};
pub use ivp::{
    monogenicity_trace, picard_step, solve_ivp, time_residual, MonogenicityTrace,
    SolveDiagnostics, SolveOptions, TimeSeriesField,
};
pub use linalg::{nullspace, rref, RatMatrix};
pub use operators::{DiracOperator, EllipticityVerdict, EvolutionOperator};
pub use poly::{Monomial, PolyField};
pub use rational::Rational;
