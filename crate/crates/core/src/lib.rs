//! Parametric positive solutions of signed polynomial inequality systems.
//!
//! A system `f = (s ∘ c) x^e > 0` fixes the sign of every coefficient but
//! leaves the magnitudes free. [`decide::decide`] answers whether one explicit
//! point formula works for every choice of positive magnitudes, and
//! [`witness`] builds and checks that formula exactly.
//!
//! The numeric core is generic over [`scalar::Scalar`]; the aliases below fix
//! it to exact rationals, which every decision and verification path uses.

pub mod cli;
pub mod condition;
pub mod decide;
pub mod lra;
pub mod oracle;
pub mod parser;
pub mod scalar;
pub mod system;
pub mod witness;

pub use condition::{build_cnf, build_dnf_single, Clause, DnfBranch, LinearCondition, LinearLiteral};
pub use decide::{decide, decide_with, DecideOptions, Decision, UnsatReason};
pub use lra::{
    scale_to_integer, shrink_model, solve_cnf, solve_conjunction, ConjunctionSystem, Feasibility, Model,
    Satisfiability,
};
pub use parser::{parse_bindings, parse_system, print_system, ParseError};
pub use scalar::Scalar;
pub use system::{
    Bindings, CoefficientSpec, ExponentMatrix, ExponentSolution, RowSupport, Sign, SignMatrix, SignedSystem,
};
pub use witness::{
    evaluate_system_at, evaluate_t, symbolic_t, uniform_bound, verify_witness, SymbolicWitness,
    VerificationReport,
};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// A system with exact rational coefficients.
pub type System = SignedSystem<Rational>;
/// A system with `f64` coefficients, for approximate evaluation only.
pub type FloatSystem = SignedSystem<f64>;
pub type RationalModel = Model<Rational>;
pub type RationalReport = VerificationReport<Rational>;
