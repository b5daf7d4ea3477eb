#![allow(clippy::needless_range_loop)]
pub mod codes_lattices;
pub mod cyclotomic;
pub mod division_algebras;
pub mod error;
pub mod finite_field;
pub mod group_zoo;
pub mod limits;
pub mod matrix_group;
pub mod moonshine;
pub mod numtheory;
pub mod perm_group;
pub mod serde_util;
pub mod sporadic_data;
pub mod verify;

pub use error::{Error, ErrorKind, Result};
pub use limits::Limits;
