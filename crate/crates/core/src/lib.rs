//! Flag surfaces with their geodesic duals, plus the group theory used to
//! classify the geodesic self-dual ones.

pub mod classify;
pub mod fp_group;
pub mod perm;
pub mod surface;
pub mod voltage;

pub use classify::{classify, ClassificationEntry, ClassifyError, GroupData, SubgroupRecord};
pub use fp_group::{AbelianInvariants, CosetTable, FpGroupError, GroupPresentation, Word};
pub use perm::{PermError, Permutation};
pub use surface::{FlagSurface, StripKind, SurfaceError, SurfaceStats};
pub use voltage::{CornerVoltageAssignment, VoltageError, VoltageGroupSpec};
