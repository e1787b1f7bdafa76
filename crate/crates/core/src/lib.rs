pub mod category;
pub mod checks;
pub mod corpus;
pub mod error;
pub mod filters;
pub mod groupoid;
pub mod io;
pub mod pipeline;
pub mod semigroup;
pub mod zs;

pub use error::{Error, Result};
