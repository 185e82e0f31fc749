pub mod cgw;
pub mod chain;
pub mod error;
pub mod exactqi;
pub mod extcat;
pub mod k0;
pub mod rng;
pub mod sdot;
pub use error::{Error, Result};
