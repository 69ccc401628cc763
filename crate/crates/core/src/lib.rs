//! Equations over the semiring of permutation digraphs.
//!
//! Elements are finite disjoint unions of cycles, written `C(count,length)`
//! and represented by [`CycleSet`]. Sum is disjoint union, product is the
//! direct (synchronous) product. The crate decides, certifies and enumerates
//! solutions of `C(1,p) * X = C(n,q)` and a few related shapes:
//!
//! - [`decide`]: gcd-only deciders with certificates, plus the
//!   factorization-based criterion used as an oracle.
//! - [`feasible`]: the feasible-divisor view of solutions, lazy enumeration,
//!   counting and the exact decider for sums on the left-hand side.
//! - [`parse`]: text syntax, evaluation and classification of equations.
//! - [`dispatch`] and [`grid`]: the glue behind the `cyclering` binary.
//!
//! ```
//! use cyclering::{deep_decide, CycleSet};
//!
//! let report = deep_decide(8400, 8316000, 6000).unwrap();
//! assert!(report.verdict);
//! let x = report.witness().unwrap();
//! assert_eq!(CycleSet::cycles(1, 8400).mul(x).unwrap(), CycleSet::cycles(6000, 8316000));
//! ```

pub mod arith;
pub mod cycles;
pub mod decide;
pub mod dispatch;
pub mod error;
pub mod feasible;
pub mod grid;
pub mod parse;
pub mod semigroup;

pub use cycles::{explicit_product_oracle, BasicEquation, CycleSet};
pub use decide::{
    decide_multi_target, decide_prime_power, decide_scaled, decide_scaled_paper_strict,
    deep_decide, deficient_part, foreign_part, necessary_gcd_condition, necessary_weight_condition,
    solve_prime_power, theorem_characterization, Certificate, DecisionReport, Intermediates,
    Monomial, Refutation,
};
pub use dispatch::{dispatch, Command, Record};
pub use error::{Error, Result};
pub use feasible::{
    count_solutions, decide_by_enumeration, decide_sum_lhs, enumerate_solutions, feasible_divisors,
    FeasibleDivisorSet, SolutionTuple, Solutions,
};
pub use parse::{
    parse, parse_equation, parse_expression, print_canonical, Classification, EquationAst,
    ExpressionAst, ParseError, Parsed,
};
pub use semigroup::{representable, Semigroup};
