//! Library half of the CLI: the manifold-expression and Steenrod-word
//! parsers, command implementations, and the generator-table cache. The
//! binary in `main.rs` is a thin argv-to-exit-code shell over this.

pub mod cache;
pub mod commands;
pub mod expr;
pub mod failure;
pub mod steenrod_text;
