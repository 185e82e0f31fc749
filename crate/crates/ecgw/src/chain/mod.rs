//! Chain complexes over an extensive instance: validation, the two kinds of
//! chain morphisms, kernels and cokernels, square transport, and star
//! pushouts.

mod cgw_impl;
mod complex;
mod maps;
mod ops;

pub use cgw_impl::ChainCgw;
pub use complex::{truncate, ChainComplex, Truncate, Window};
pub use maps::{ChainMapE, ChainMapM, Levels, MapKind};
pub use ops::{chain_iso, coker_chain, ker_chain, oracle, star_chain_e, star_chain_m};

use crate::cgw::{c_of_mixed, k_of_mixed, ESqOf, MSqOf, MixedOf};
use crate::error::Result;
use crate::extcat::ExtensiveInstance;

/// Kernel transport of a pseudo-commutative square of chain maps: the good
/// square between the kernels of its e-sides.
pub fn transport_kernels<I: ExtensiveInstance>(
    c: &ChainCgw<I>,
    sq: &MixedOf<ChainCgw<I>>,
) -> Result<MSqOf<ChainCgw<I>>> {
    k_of_mixed(c, sq)
}

/// Cokernel transport, dual to [`transport_kernels`].
pub fn transport_cokernels<I: ExtensiveInstance>(
    c: &ChainCgw<I>,
    sq: &MixedOf<ChainCgw<I>>,
) -> Result<ESqOf<ChainCgw<I>>> {
    c_of_mixed(c, sq)
}
