//! Report types and text rendering behind the `ratball` binary.

pub mod output;
