//! Registry of named instances, verification of the cofiber theorem and its
//! corollaries, and property suites, shared by the `jmx` binary and its tests.

pub mod output;
pub mod props;
pub mod registry;
pub mod verify;
