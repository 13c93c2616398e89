pub mod error;
pub mod kernel;
pub mod matching;
pub mod conv;
pub mod derived;
pub mod fconv;
pub mod syntax;
pub mod tactic;
pub mod repl;

pub use error::{Error, Result};
