//! Identity registry, verification driver and command-line front end for
//! the `qseries` engine.
//!
//! The shipped corpus lives in `registry/identities.json` and is embedded
//! at build time; [`Registry::load`] reads a replacement from disk.

pub mod cli;
pub mod registry;
pub mod report;
pub mod runner;

pub use registry::{Expected, IdentityRecord, Registry, RegistryError};
pub use report::{Status, VerificationReport};
pub use runner::{verify, verify_all, verify_sides};
