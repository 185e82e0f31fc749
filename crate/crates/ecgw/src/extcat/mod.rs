//! Finite-set and finite action-set models of an extensive category.

mod elem;
mod fun;
mod instance;
mod mset;

pub use elem::{Elem, FinSetObj};
pub use fun::{complement_inclusion, coproduct, pullback, Injection, SetFun};
pub use instance::{
    compose, is_coproduct_inclusion, random_relabel_bijection, Carrier, ExtensiveInstance,
    FinSetInstance, MSetInstance,
};
pub use mset::{MActionSet, Monoid};
