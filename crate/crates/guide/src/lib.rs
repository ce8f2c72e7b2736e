//! Compile-checks for the book.
//!
//! mdbook renders `book/src` but does not run the snippets, so every chapter
//! is included here as a doc comment and `cargo test --doc -p metsets-guide`
//! executes each code block as a doctest. One module per chapter keeps test
//! failures attributable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/geodesics.md")]
pub mod geodesics {}

#[doc = include_str!("../../../book/src/families.md")]
pub mod families {}

#[doc = include_str!("../../../book/src/rows.md")]
pub mod rows {}

#[doc = include_str!("../../../book/src/engine.md")]
pub mod engine {}

#[doc = include_str!("../../../book/src/accessible.md")]
pub mod accessible {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
