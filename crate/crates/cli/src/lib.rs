//! Model DSL, loader and commands behind the `nori` binary.

pub mod commands;
pub mod dsl;
pub mod model;
