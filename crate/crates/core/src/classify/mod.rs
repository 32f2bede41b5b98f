//! Classification of geodesic self-dual surfaces of small degree through
//! subgroups of `H_d`.

mod collapse;
mod group;
mod search;
mod subgroups;
mod surfaces;

use thiserror::Error;

use crate::fp_group::FpGroupError;
use crate::perm::PermError;
use crate::surface::SurfaceError;

pub use collapse::{
    verify_collapse_identity, verify_uncollapsed, verify_uncollapsed_default, CheckResult, CollapseReport, UncollapsedEvidence,
    UncollapsedVerdict,
};
pub use group::{realize_group, GroupData, A, B, C};
pub use search::{partial_search, PartialEntry};
pub use subgroups::{
    admissible_subgroups, are_conjugate, conjugacy_class, conjugate_subgroup, geodesic_image_subgroup, is_normal,
    subgroup_closure, SubgroupRecord,
};
pub use surfaces::{
    classification_tsv, classify, classify_group, partial_tsv, surface_from_subgroup, ClassificationEntry,
    DEFAULT_GROUP_LIMIT, TSV_HEADER,
};

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Group(#[from] FpGroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("the geodesic automorphism table is inconsistent at element {element}")]
    NotAutomorphism { element: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
