//! Explicit loop constructions.

mod extension;
mod gf;
mod terg;
mod trilinear;

pub use extension::{
    achieve_parameters, add_group_cocycle, build_central_extension, middle_nucleus_four_exemplar, ExtensionSpec,
};
pub use gf::{build_gf, build_qn, enumerate_gf_aloops, gf_conditions, group_automorphisms, GfConditions, GfLoop, GfSpec};
pub use terg::{build_ter_ring, build_terg, overflow_indicator, terg_power, TergParams};
pub use trilinear::{
    build_trilinear_extension, middle_nucleus_report, newforms_form, symmetrize_13, MiddleNucleusReport,
    TrilinearForm,
};
