//! Form-expression parsing, verification suites and their reports.

pub mod parser;
pub mod report;
pub mod suite;

pub use parser::{parse_expression, parse_form, Expr};
pub use report::{CheckRecord, Status, Summary, VerificationReport};
pub use suite::{run_suite, Level, SuiteConfig, SuiteName};
