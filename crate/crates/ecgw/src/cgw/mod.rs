//! The double-category layer: squares and their classification, the
//! kernel/cokernel complement transports, star pushouts, good cubes, and the
//! randomized axiom auditor.

pub mod audit;
mod checks;
mod ext;
mod ops;
mod square;
mod traits;

pub use audit::{audit, AuditReport, Check, CheckReport, Outcome};
pub use checks::{
    appendix_checks, axiom_checks, ext_checks, gen_distinguished, gen_good_cube, gen_good_msq,
    gen_mixed_pc,
};
pub use ext::{ExtCgw, ExtMor};
pub use ops::{
    c_of_mixed, certify_distinguished, classify_hom_e, classify_hom_m, classify_mixed,
    cokernel_with_square, complete_distinguished_em, complete_distinguished_me, esq_boundary_ok,
    is_good_e, is_good_m, is_pseudo_commutative, k_of_mixed, kernel_with_square, mixed_boundary_ok,
    mixed_of_esq, mixed_of_msq, msq_boundary_ok, paste_mixed_h, paste_mixed_v, paste_msq_h,
    paste_msq_v, southern, southern_good_in_axis, span_square_e, span_square_m, transpose,
    Southern,
};
pub use square::{Cube, CubeAxis, Distinguished, HomClass, HomSq, Mixed, MixedClass, Star};
pub use traits::{ESqOf, MSqOf, MixedOf, StarCgw, StarEOf, StarMOf};
