//! Harness around the exact-diameter engine: group-spec files, verification
//! sweeps with per-inequality assertions, result records and emission.

pub mod emit;
pub mod record;
pub mod specfile;
pub mod suite;

pub use record::{InstanceRecord, SweepConfig};
pub use specfile::GroupSpecFile;
pub use suite::{run_verification_suite, ENGINE_VERSION};
