pub mod bitset;
pub mod effect;
pub mod error;
pub mod exec;
pub mod kit;
pub mod monads;
pub mod order;
pub mod three;
pub mod transformers;
pub mod wp;

pub use error::{Error, Result};
pub use exec::Strategy;
