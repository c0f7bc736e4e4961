pub mod cli;
pub mod error;
pub mod exactring;
pub mod factorize;
pub mod io;
pub mod matrix;
pub mod relations;
pub mod rootdata;
pub mod sample;
pub mod localglobal;
pub mod words;

pub use error::{Error, Result};
pub use matrix::Matrix;
