//! The `.fib` presentation language: lexer, parser with span diagnostics,
//! validated workspaces, a canonical serializer and the example catalog.

pub mod catalog;
pub mod export;
pub mod lexer;
pub mod parser;
pub mod serialize;
pub mod workspace;

pub use catalog::{entry, CatalogEntry, CATALOG};
pub use export::Exporter;
pub use lexer::{Diagnostic, Severity, Span};
pub use serialize::serialize;
pub use workspace::{endo_op, parse, Entity, Entry, ParamData, Workspace, IDENTITY_PREFIX};
#[cfg(test)]
mod tests;
