pub mod acceptance;
pub mod bridge;
pub mod cli;
pub mod error;
pub mod gf;
pub mod io;
pub mod linalg;
pub mod linpoly;
pub mod linset;
pub mod rmcode;

pub use error::{Error, Result};
