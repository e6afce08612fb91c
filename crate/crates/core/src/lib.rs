pub mod caps;
pub mod chaincomplex;
pub mod diagramcoh;
pub mod error;
pub mod fincat;
pub mod gen;
pub mod groupcoh;
pub mod linalg;
pub mod natsys;
pub mod psiring;

pub use error::{Error, Result};
