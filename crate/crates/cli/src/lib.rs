//! File formats shared by the `fairhouse` binary and its tests.

pub mod formats;
