//! Bundled example fixtures.

pub mod build;
pub mod groups;
