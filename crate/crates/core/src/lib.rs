pub mod commands;
pub mod config;
pub mod conjugacy;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod groups;
pub mod io;
pub mod isocrystal;
pub mod linalg;
pub mod monodromy;
pub mod random;
pub mod sl2;
pub mod wd;
