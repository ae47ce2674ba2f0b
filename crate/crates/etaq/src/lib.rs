//! Exact q-series and Rademacher-type coefficient formulas.
//!
//! The crate mechanizes the circle-method workflow for eta-quotient
//! generating functions:
//!
//! - [`qseries`]: exact integer expansion of eta quotients and literal
//!   congruence products — the ground-truth oracle
//! - [`registry`]: named generating functions (partition counts, Slater
//!   product sides) in both forms
//! - [`numtheory`]: Dedekind sums, Jacobi symbols, Farey fractions, Ford
//!   circle geometry
//! - [`omega`]: the eta multiplier omega(h,k) as an exact root of unity,
//!   with two independently computed routes
//! - [`formula`]: the structured representation of Rademacher-type
//!   formulas (JSON-persistent, LaTeX-printable) and the builtin
//!   transcriptions
//! - [`conjecture`]: the automation pipeline that derives a formula from
//!   an eta-quotient spec
//! - [`eval`]: high-precision truncated evaluation (Bessel and
//!   sinh-derivative kernels)
//! - [`verify`]: the numerical verification harness and reference table
//!
//! All exact arithmetic is arbitrary precision; all floating evaluation is
//! performed at a caller-chosen number of significant digits (default 50).

pub mod conjecture;
pub mod error;
pub mod eval;
pub mod formula;
pub mod numtheory;
pub mod omega;
pub mod qseries;
pub mod registry;
pub mod verify;

pub use conjecture::{analyze_cases, compare_formulas, conjecture_formula, CaseAnalysis};
pub use error::{Error, Result};
pub use eval::{
    bessel_i, bessel_i_3_2_elementary, evaluate_formula, hr_asymptotic, sinh_kernel, EvalResult,
    Precision, DEFAULT_DIGITS,
};
pub use formula::{
    builtin_formula, builtin_names, eval_expr, to_latex, BesselKernel, Bindings, Expr,
    FormulaCase, KPower, KRestriction, KernelKind, RademacherFormula, Var, TABLE_FORMULA_NAMES,
};
pub use numtheory::{
    dedekind_sum, dedekind_sum_direct, divisors, farey, ford_arc_endpoints, jacobi_symbol,
    lcm_all, neg_mod_inverse, Fraction, FordArcEndpoints,
};
pub use omega::{
    check_eta_functional_equation, omega, omega_closed_form, ExactRootOfUnity,
    OmegaProductDescriptor,
};
pub use qseries::{
    expand_congruence_product, expand_eta_quotient, series_reciprocal, CongruenceProductSpec,
    EtaQuotientSpec, IntSeries,
};
pub use registry::{registry_lookup, RegistryEntry, REGISTRY_NAMES};
pub use verify::{reproduce_table, verify_formula, Table, TableRow, VerificationReport};
