#![allow(clippy::needless_range_loop)]

pub mod bounds;
pub mod budget;
pub mod cli;
pub mod cluster;
pub mod error;
pub mod laurent;
pub mod mutation;
pub mod poly;
pub mod seed;

pub use error::{Error, Result};
