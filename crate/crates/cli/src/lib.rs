//! Command-line front end: an expression language for Brauer morphisms and subcommands
//! wrapping the `pfcat` library.

pub mod commands;
pub mod expr;

pub use commands::{run, Cli, CliError, Report};
pub use expr::{parse_expr, Context, Node, SyntaxError, Value};
