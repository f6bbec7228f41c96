//! Model documents, the formula text grammar and DOT export.

mod document;
mod dot;
mod formula_parser;

pub use document::{parse_model, serialize_model};
pub use dot::{export_dot, export_dot_with, DotOptions};
pub use formula_parser::parse_formula;
