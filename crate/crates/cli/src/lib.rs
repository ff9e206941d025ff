//! Report types behind the `qlink` binary.

pub mod report;
