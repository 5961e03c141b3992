//! File formats, JSON certificates, the independent certificate checker,
//! corpus harnesses and the command-line front end for [`hypfree_core`].

pub mod check;
pub mod cli;
pub mod format;
pub mod harness;
pub mod json;

pub use hypfree_core as core;
