//! Mission-time Linear Temporal Logic (MLTL).
//!
//! MLTL is LTL with a closed integer interval on every temporal operator,
//! interpreted over finite traces. This crate provides:
//!
//! - the formula syntax and structural queries ([`ast`]),
//! - finite-trace satisfaction and bounded semantic equivalence ([`semantics`]),
//! - negation normal form and computation length ([`transforms`]),
//! - formula progression and verdict classification ([`progression`]),
//! - a text syntax for formulas and traces ([`parser`]),
//! - labeled benchmark generation ([`benchgen`]),
//! - randomized checks of the progression correctness properties ([`properties`]).
//!
//! ```
//! use mltl::{parse_formula, parse_trace, evaluate, progress, print_formula};
//!
//! let f = parse_formula("G[0,2] p").unwrap();
//! let t = parse_trace("p\np\n-").unwrap();
//! assert!(!evaluate(&t, &f).unwrap());
//! assert_eq!(
//!     print_formula(&progress(&f, &t).unwrap()),
//!     "(! ((! true) | ((! true) | (! false))))"
//! );
//! ```

pub mod ast;
pub mod benchgen;
pub mod error;
pub mod parser;
pub mod progression;
pub mod properties;
pub mod semantics;
pub mod transforms;

pub use ast::{trace, Formula, Interval, State, Trace};
pub use error::{MltlError, Result};
pub use parser::{parse_formula, parse_trace, print_formula, print_trace, ParseError, SourceSpan};
pub use progression::{check_decomposition, classify, progress, progress_residuals, progress_step, Verdict};
pub use semantics::{
    enumerate_traces, equivalence_witness, evaluate, prefix, semantic_equiv, suffix, EquivBudget,
};
pub use transforms::{complen, convert_nnf, is_nnf};
