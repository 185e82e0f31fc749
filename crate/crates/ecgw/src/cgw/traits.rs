//! The abstract interface of a double category with complements and star
//! pushouts, over which the square calculus, the staircase construction,
//! and the randomized auditor are written once.
//!
//! Implementations ship for the double category of coproduct inclusions of
//! any [`crate::extcat::ExtensiveInstance`] and for chain complexes over
//! such an instance.

use crate::cgw::square::{HomSq, Mixed, Star};
use crate::error::Result;
use crate::rng::Rng;

pub type MixedOf<C> = Mixed<<C as StarCgw>::M, <C as StarCgw>::E>;
pub type MSqOf<C> = HomSq<<C as StarCgw>::M>;
pub type ESqOf<C> = HomSq<<C as StarCgw>::E>;
pub type StarMOf<C> = Star<<C as StarCgw>::Obj, <C as StarCgw>::M>;
pub type StarEOf<C> = Star<<C as StarCgw>::Obj, <C as StarCgw>::E>;

/// A concrete double category with shared isomorphisms, complement
/// (kernel/cokernel) functors, and star pushouts, together with seeded
/// generators for the audit engine.
///
/// `M` and `E` are the two arrow roles. Either role's arrows are monic and
/// point from their domain into their codomain; for the set-based instances
/// the two roles carry the same data, while for chain complexes they carry
/// different side conditions.
pub trait StarCgw: Sync {
    type Obj: Clone + PartialEq + std::fmt::Debug + Send + Sync;
    type M: Clone + PartialEq + std::fmt::Debug + Send + Sync;
    type E: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    // --- objects ----------------------------------------------------------

    fn initial(&self) -> Self::Obj;
    fn is_initial(&self, a: &Self::Obj) -> bool;
    /// Isomorphism of objects, decided through canonical forms.
    fn obj_iso(&self, a: &Self::Obj, b: &Self::Obj) -> bool;
    fn describe_obj(&self, a: &Self::Obj) -> String;

    // --- arrows -----------------------------------------------------------

    fn m_dom(&self, f: &Self::M) -> Self::Obj;
    fn m_cod(&self, f: &Self::M) -> Self::Obj;
    fn e_dom(&self, g: &Self::E) -> Self::Obj;
    fn e_cod(&self, g: &Self::E) -> Self::Obj;

    fn m_id(&self, a: &Self::Obj) -> Self::M;
    fn e_id(&self, a: &Self::Obj) -> Self::E;
    fn m_compose(&self, g: &Self::M, f: &Self::M) -> Result<Self::M>;
    fn e_compose(&self, g: &Self::E, f: &Self::E) -> Result<Self::E>;
    fn m_eq(&self, f: &Self::M, g: &Self::M) -> bool;
    fn e_eq(&self, f: &Self::E, g: &Self::E) -> bool;
    fn m_is_iso(&self, f: &Self::M) -> bool;
    fn e_is_iso(&self, g: &Self::E) -> bool;
    fn m_invert(&self, f: &Self::M) -> Result<Self::M>;
    fn e_invert(&self, g: &Self::E) -> Result<Self::E>;

    /// Factors `f` through the monic `through`: returns `h` with
    /// `through ∘ h = f`, failing when the image of `f` escapes.
    fn m_factor(&self, f: &Self::M, through: &Self::M) -> Result<Self::M>;
    fn e_factor(&self, f: &Self::E, through: &Self::E) -> Result<Self::E>;

    fn m_from_initial(&self, a: &Self::Obj) -> Self::M;
    fn e_from_initial(&self, a: &Self::Obj) -> Self::E;

    /// Reads an invertible m-morphism in the e-role (shared isomorphisms).
    fn m_iso_to_e(&self, f: &Self::M) -> Result<Self::E>;
    fn e_iso_to_m(&self, g: &Self::E) -> Result<Self::M>;

    fn describe_m(&self, f: &Self::M) -> String;
    fn describe_e(&self, g: &Self::E) -> String;

    // --- complements, pullbacks, pushouts ----------------------------------

    /// The cokernel of an m-morphism `A ↣ B`, as the e-morphism
    /// `B∖A ⇢ B` complementing its image.
    fn cokernel(&self, f: &Self::M) -> Self::E;
    /// The kernel of an e-morphism `A ⇢ B`, as the m-morphism `B∖A ↣ B`.
    fn kernel(&self, g: &Self::E) -> Self::M;

    /// Completes a mixed cospan to its pullback square: given
    /// `bottom : BL ↣ BR` and `right : TR ⇢ BR`, returns
    /// `(left : P ⇢ BL, top : P ↣ TR)`.
    fn mixed_pullback(&self, bottom: &Self::M, right: &Self::E)
        -> Result<(Self::E, Self::M)>;
    /// Pullback of an m-cospan: `(left : P ↣ BL, top : P ↣ TR)`.
    fn pullback_m(&self, bottom: &Self::M, right: &Self::M) -> Result<(Self::M, Self::M)>;
    /// Pullback of an e-cospan.
    fn pullback_e(&self, bottom: &Self::E, right: &Self::E) -> Result<(Self::E, Self::E)>;

    /// Star pushout of the m-span `B ↢ A ↣ C` (arguments `left : A ↣ B`,
    /// `right : A ↣ C`).
    fn star_m(&self, left: &Self::M, right: &Self::M) -> Result<StarMOf<Self>>;
    /// Star pushout of an e-span inside a good witness square whose `top`
    /// and `left` must equal the span legs.
    fn star_e(&self, left: &Self::E, right: &Self::E, witness: &ESqOf<Self>)
        -> Result<StarEOf<Self>>;

    /// The mediating arrow from a star pushout into any commuting square
    /// under the same span (corner layout as [`crate::cgw::span_square_m`]).
    fn star_mediate_m(&self, star: &StarMOf<Self>, sq: &MSqOf<Self>) -> Result<Self::M>;
    fn star_mediate_e(&self, star: &StarEOf<Self>, sq: &ESqOf<Self>) -> Result<Self::E>;

    /// The induced e-morphism between star pushouts of two m-spans joined
    /// cornerwise by e-morphisms: `left_e` relates the codomains of the
    /// spans' first legs and `right_e` those of the second legs.
    fn induced_star_e(
        &self,
        src: &StarMOf<Self>,
        dst: &StarMOf<Self>,
        left_e: &Self::E,
        right_e: &Self::E,
    ) -> Result<Self::E>;

    /// For `A ↣ B ↣ C` (`first`, then `second`), the induced m-morphism
    /// `cok(first) ↣ cok(second ∘ first)`.
    fn cok_extend_m(&self, first: &Self::M, second: &Self::M) -> Result<Self::M>;
    /// For `A ↣ B ↣ C` (`inner`, then `outer`), the induced e-morphism
    /// `cok(outer) ⇢ cok(outer ∘ inner)`.
    fn cok_restrict_e(&self, inner: &Self::M, outer: &Self::M) -> Result<Self::E>;

    /// The split extension `A ↣ A ⋆ B ⇠ B` over the initial object.
    fn trivial_extension(&self, a: &Self::Obj, b: &Self::Obj) -> Result<(Self::M, Self::E)>;

    // --- square predicates that need carrier access -------------------------

    /// Whether the mixed square commutes as a diagram of underlying maps.
    fn mixed_commutes(&self, sq: &MixedOf<Self>) -> bool;
    /// Whether the images of `bottom` and `right` jointly cover the
    /// bottom-right object.
    fn mixed_jointly_covers(&self, sq: &MixedOf<Self>) -> bool;

    // --- seeded generation --------------------------------------------------

    fn gen_obj(&self, rng: &mut Rng) -> Self::Obj;
    /// A random m-morphism into `cod`.
    fn gen_sub_m(&self, rng: &mut Rng, cod: &Self::Obj) -> Self::M;
    /// A random e-morphism into `cod`.
    fn gen_sub_e(&self, rng: &mut Rng, cod: &Self::Obj) -> Self::E;
    /// A random m-morphism out of `dom`.
    fn gen_sup_m(&self, rng: &mut Rng, dom: &Self::Obj) -> Self::M;
    /// A random e-morphism out of `dom`.
    fn gen_sup_e(&self, rng: &mut Rng, dom: &Self::Obj) -> Self::E;
    /// A random isomorphism out of `a` (a relabeling).
    fn gen_iso_m(&self, rng: &mut Rng, a: &Self::Obj) -> Self::M;

    /// All m-morphisms from `dom` to `cod`, when enumeration is tractable.
    /// Instances without a tractable enumeration return `None` and the
    /// audit checks that rely on it skip their uniqueness sub-assertions.
    fn enumerate_m(&self, dom: &Self::Obj, cod: &Self::Obj) -> Option<Vec<Self::M>>;
}
