//! Command implementations and the verification harness behind the `hamcomp` binary.

pub mod commands;
pub mod verify;
