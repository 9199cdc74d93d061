//! Model input/output: the structure-equation DSL, binder, canonical printer,
//! and the fixture catalog.

pub mod bind;
pub mod fixtures;
pub mod parse;
pub mod print;
