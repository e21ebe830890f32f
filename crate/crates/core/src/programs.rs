//! Programs shipped with the crate, used by the demo gallery and tests.

pub const GRANDFATHER: &str = include_str!("../programs/grandfather.ctc");
pub const FORCED_ONE: &str = include_str!("../programs/forced_one.ctc");
pub const ROTATION: &str = include_str!("../programs/rotation.ctc");
pub const GRANDFATHER_CLASSICAL: &str = include_str!("../programs/grandfather_classical.ctc");
pub const DRIFT: &str = include_str!("../programs/drift.ctc");
/// Configuration graph for the PSPACE construction.
pub const ACCEPTING_MACHINE: &str = include_str!("../programs/accepting.machine");
