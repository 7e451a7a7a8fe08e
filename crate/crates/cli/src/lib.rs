//! Building blocks of the `maxmin` command-line tool: the matrix file
//! format, report generation and SVG output.

pub mod commands;
pub mod document;
pub mod svg;

pub use commands::CliError;
pub use document::{MatrixDocument, ParseError};
