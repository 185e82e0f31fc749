//! The square calculus derived from the [`StarCgw`] primitives: boundary
//! checks, classification, kernel/cokernel transport of squares,
//! distinguished completion, pastings, and the southern square of a cube.

use crate::cgw::square::{Cube, CubeAxis, Distinguished, HomClass, HomSq, Mixed, MixedClass};
use crate::cgw::traits::{ESqOf, MSqOf, MixedOf, StarCgw, StarEOf, StarMOf};
use crate::error::{Error, Result};

fn bad(which: &str) -> Error {
    Error::MalformedSquare(which.to_string())
}

/// Checks that a mixed square's arrows share endpoints.
pub fn mixed_boundary_ok<C: StarCgw + ?Sized>(c: &C, sq: &MixedOf<C>) -> bool {
    c.m_dom(&sq.top) == c.e_dom(&sq.left)
        && c.m_cod(&sq.top) == c.e_dom(&sq.right)
        && c.m_dom(&sq.bottom) == c.e_cod(&sq.left)
        && c.m_cod(&sq.bottom) == c.e_cod(&sq.right)
}

pub fn msq_boundary_ok<C: StarCgw + ?Sized>(c: &C, sq: &MSqOf<C>) -> bool {
    c.m_dom(&sq.top) == c.m_dom(&sq.left)
        && c.m_cod(&sq.top) == c.m_dom(&sq.right)
        && c.m_cod(&sq.left) == c.m_dom(&sq.bottom)
        && c.m_cod(&sq.right) == c.m_cod(&sq.bottom)
}

pub fn esq_boundary_ok<C: StarCgw + ?Sized>(c: &C, sq: &ESqOf<C>) -> bool {
    c.e_dom(&sq.top) == c.e_dom(&sq.left)
        && c.e_cod(&sq.top) == c.e_dom(&sq.right)
        && c.e_cod(&sq.left) == c.e_dom(&sq.bottom)
        && c.e_cod(&sq.right) == c.e_cod(&sq.bottom)
}

/// Pseudo-commutativity is a property here: the square is pseudo-commutative
/// exactly when it is the pullback completion of its own mixed cospan.
pub fn is_pseudo_commutative<C: StarCgw + ?Sized>(c: &C, sq: &MixedOf<C>) -> Result<bool> {
    if !mixed_boundary_ok(c, sq) {
        return Err(bad("mixed boundary mismatch"));
    }
    if !c.mixed_commutes(sq) {
        return Ok(false);
    }
    let (pb_left, pb_top) = c.mixed_pullback(&sq.bottom, &sq.right)?;
    let phi = match c.m_factor(&sq.top, &pb_top) {
        Ok(phi) => phi,
        Err(_) => return Ok(false),
    };
    if !c.m_is_iso(&phi) {
        return Ok(false);
    }
    let left_via = c.e_compose(&pb_left, &c.m_iso_to_e(&phi)?)?;
    Ok(c.e_eq(&left_via, &sq.left))
}

pub fn is_good_m<C: StarCgw + ?Sized>(c: &C, sq: &MSqOf<C>) -> Result<bool> {
    if !msq_boundary_ok(c, sq) {
        return Err(bad("m-square boundary mismatch"));
    }
    let around_left = c.m_compose(&sq.bottom, &sq.left)?;
    let around_right = c.m_compose(&sq.right, &sq.top)?;
    if !c.m_eq(&around_left, &around_right) {
        return Ok(false);
    }
    let (pb_left, pb_top) = c.pullback_m(&sq.bottom, &sq.right)?;
    let phi = match c.m_factor(&sq.top, &pb_top) {
        Ok(phi) => phi,
        Err(_) => return Ok(false),
    };
    if !c.m_is_iso(&phi) {
        return Ok(false);
    }
    let left_via = c.m_compose(&pb_left, &phi)?;
    Ok(c.m_eq(&left_via, &sq.left))
}

pub fn is_good_e<C: StarCgw + ?Sized>(c: &C, sq: &ESqOf<C>) -> Result<bool> {
    if !esq_boundary_ok(c, sq) {
        return Err(bad("e-square boundary mismatch"));
    }
    let around_left = c.e_compose(&sq.bottom, &sq.left)?;
    let around_right = c.e_compose(&sq.right, &sq.top)?;
    if !c.e_eq(&around_left, &around_right) {
        return Ok(false);
    }
    let (pb_left, pb_top) = c.pullback_e(&sq.bottom, &sq.right)?;
    let phi = match c.e_factor(&sq.top, &pb_top) {
        Ok(phi) => phi,
        Err(_) => return Ok(false),
    };
    if !c.e_is_iso(&phi) {
        return Ok(false);
    }
    let left_via = c.e_compose(&pb_left, &phi)?;
    Ok(c.e_eq(&left_via, &sq.left))
}

pub fn classify_hom_m<C: StarCgw + ?Sized>(c: &C, sq: &MSqOf<C>) -> Result<HomClass> {
    if !msq_boundary_ok(c, sq) {
        return Err(bad("m-square boundary mismatch"));
    }
    let commutes = c.m_eq(
        &c.m_compose(&sq.bottom, &sq.left)?,
        &c.m_compose(&sq.right, &sq.top)?,
    );
    let good = commutes && is_good_m(c, sq)?;
    Ok(HomClass { commutes, good })
}

pub fn classify_hom_e<C: StarCgw + ?Sized>(c: &C, sq: &ESqOf<C>) -> Result<HomClass> {
    if !esq_boundary_ok(c, sq) {
        return Err(bad("e-square boundary mismatch"));
    }
    let commutes = c.e_eq(
        &c.e_compose(&sq.bottom, &sq.left)?,
        &c.e_compose(&sq.right, &sq.top)?,
    );
    let good = commutes && is_good_e(c, sq)?;
    Ok(HomClass { commutes, good })
}

/// Classifies a mixed square as commuting, pseudo-commutative (a pullback),
/// and distinguished (pullback whose two final images jointly cover).
pub fn classify_mixed<C: StarCgw + ?Sized>(c: &C, sq: &MixedOf<C>) -> Result<MixedClass> {
    if !mixed_boundary_ok(c, sq) {
        return Err(bad("mixed boundary mismatch"));
    }
    let commutes = c.mixed_commutes(sq);
    let pseudo_commutative = commutes && is_pseudo_commutative(c, sq)?;
    let distinguished = pseudo_commutative && c.mixed_jointly_covers(sq);
    Ok(MixedClass {
        commutes,
        pseudo_commutative,
        distinguished,
    })
}

/// The kernel transport of a pseudo-commutative square: kernels of the two
/// e-morphisms joined by the induced m-morphism, a good square.
pub fn k_of_mixed<C: StarCgw + ?Sized>(c: &C, sq: &MixedOf<C>) -> Result<MSqOf<C>> {
    let kl = c.kernel(&sq.left);
    let kr = c.kernel(&sq.right);
    let top = c.m_factor(&c.m_compose(&sq.bottom, &kl)?, &kr)?;
    Ok(HomSq {
        top,
        bottom: sq.bottom.clone(),
        left: kl,
        right: kr,
    })
}

/// The cokernel transport of a pseudo-commutative square: cokernels of the
/// two m-morphisms joined by the induced e-morphism, a good square.
pub fn c_of_mixed<C: StarCgw + ?Sized>(c: &C, sq: &MixedOf<C>) -> Result<ESqOf<C>> {
    let ct = c.cokernel(&sq.top);
    let cb = c.cokernel(&sq.bottom);
    let top = c.e_factor(&c.e_compose(&sq.right, &ct)?, &cb)?;
    Ok(HomSq {
        top,
        bottom: sq.right.clone(),
        left: ct,
        right: cb,
    })
}

/// Inverse of the kernel transport: rebuilds the mixed square whose kernel
/// square is the given good m-square (cokernels of the vertical arrows).
pub fn mixed_of_msq<C: StarCgw + ?Sized>(c: &C, h: &MSqOf<C>) -> Result<MixedOf<C>> {
    let cl = c.cokernel(&h.left);
    let cr = c.cokernel(&h.right);
    let (pb_left, pb_top) = c.mixed_pullback(&h.bottom, &cr)?;
    let res = c.e_factor(&cl, &pb_left)?;
    if !c.e_is_iso(&res) {
        return Err(bad("vertical cokernel comparison is not invertible"));
    }
    let top = c.m_compose(&pb_top, &c.e_iso_to_m(&res)?)?;
    Ok(Mixed {
        top,
        bottom: h.bottom.clone(),
        left: cl,
        right: cr,
    })
}

/// Inverse of the cokernel transport: rebuilds the mixed square whose
/// cokernel square is the given good e-square (kernels of the verticals).
pub fn mixed_of_esq<C: StarCgw + ?Sized>(c: &C, h: &ESqOf<C>) -> Result<MixedOf<C>> {
    let kt = c.kernel(&h.left);
    let kb = c.kernel(&h.right);
    let (pb_left, pb_top) = c.mixed_pullback(&kb, &h.bottom)?;
    let phi = c.m_factor(&kt, &pb_top)?;
    if !c.m_is_iso(&phi) {
        return Err(bad("vertical kernel comparison is not invertible"));
    }
    let left = c.e_compose(&pb_left, &c.m_iso_to_e(&phi)?)?;
    Ok(Mixed {
        top: kt,
        bottom: kb,
        left,
        right: h.bottom.clone(),
    })
}

/// The kernel of an e-morphism together with its witnessing square
/// `(∅, A; B∖A, B)`.
pub fn kernel_with_square<C: StarCgw + ?Sized>(c: &C, g: &C::E) -> (C::M, MixedOf<C>) {
    let k = c.kernel(g);
    let sq = Mixed {
        top: c.m_from_initial(&c.e_dom(g)),
        bottom: k.clone(),
        left: c.e_from_initial(&c.m_dom(&k)),
        right: g.clone(),
    };
    (k, sq)
}

/// The cokernel of an m-morphism together with its witnessing square
/// `(∅, B/A; A, B)`.
pub fn cokernel_with_square<C: StarCgw + ?Sized>(c: &C, f: &C::M) -> (C::E, MixedOf<C>) {
    let q = c.cokernel(f);
    let sq = Mixed {
        top: c.m_from_initial(&c.e_dom(&q)),
        bottom: f.clone(),
        left: c.e_from_initial(&c.m_dom(f)),
        right: q.clone(),
    };
    (q, sq)
}

/// Certifies a square distinguished, recording the kernel and cokernel
/// comparison isomorphisms as witnesses.
pub fn certify_distinguished<C: StarCgw + ?Sized>(
    c: &C,
    sq: &MixedOf<C>,
) -> Result<Distinguished<C::M, C::E>> {
    let class = classify_mixed(c, sq)?;
    if !class.distinguished {
        return Err(Error::NotKernelCokernelPair);
    }
    let kernel_iso = k_of_mixed(c, sq)?.top;
    let cokernel_iso = c_of_mixed(c, sq)?.top;
    Ok(Distinguished {
        square: sq.clone(),
        kernel_iso,
        cokernel_iso,
    })
}

/// Completes `A ↣ B ⇢ C` to the unique distinguished square over it, with
/// fourth corner `A ∪ (C ∖ B)`.
pub fn complete_distinguished_me<C: StarCgw + ?Sized>(
    c: &C,
    f: &C::M,
    g: &C::E,
) -> Result<Distinguished<C::M, C::E>> {
    if c.m_cod(f) != c.e_dom(g) {
        return Err(Error::NotComposable);
    }
    let q = c.cokernel(f);
    let through = c.e_compose(g, &q)?;
    let bottom = c.kernel(&through);
    let (pb_left, pb_top) = c.mixed_pullback(&bottom, g)?;
    let phi = c.m_factor(f, &pb_top)?;
    let left = c.e_compose(&pb_left, &c.m_iso_to_e(&phi)?)?;
    let sq = Mixed {
        top: f.clone(),
        bottom,
        left,
        right: g.clone(),
    };
    certify_distinguished(c, &sq)
}

/// Mirror completion for `A ⇢ B ↣ C`.
pub fn complete_distinguished_em<C: StarCgw + ?Sized>(
    c: &C,
    f: &C::E,
    g: &C::M,
) -> Result<Distinguished<C::M, C::E>> {
    if c.e_cod(f) != c.m_dom(g) {
        return Err(Error::NotComposable);
    }
    let k = c.kernel(f);
    let through = c.m_compose(g, &k)?;
    let right = c.cokernel(&through);
    let (pb_left, pb_top) = c.mixed_pullback(g, &right)?;
    let phi = c.e_factor(f, &pb_left)?;
    let top = c.m_compose(&pb_top, &c.e_iso_to_m(&phi)?)?;
    let sq = Mixed {
        top,
        bottom: g.clone(),
        left: f.clone(),
        right,
    };
    certify_distinguished(c, &sq)
}

/// The square under an m-span filled by its star pushout.
pub fn span_square_m<C: StarCgw + ?Sized>(left: &C::M, right: &C::M, star: &StarMOf<C>) -> MSqOf<C> {
    HomSq {
        top: left.clone(),
        left: right.clone(),
        right: star.left.clone(),
        bottom: star.right.clone(),
    }
}

pub fn span_square_e<C: StarCgw + ?Sized>(left: &C::E, right: &C::E, star: &StarEOf<C>) -> ESqOf<C> {
    HomSq {
        top: left.clone(),
        left: right.clone(),
        right: star.left.clone(),
        bottom: star.right.clone(),
    }
}

/// Horizontal pasting of mixed squares along a shared vertical e-morphism.
pub fn paste_mixed_h<C: StarCgw + ?Sized>(
    c: &C,
    left_sq: &MixedOf<C>,
    right_sq: &MixedOf<C>,
) -> Result<MixedOf<C>> {
    if !c.e_eq(&left_sq.right, &right_sq.left) {
        return Err(bad("horizontal pasting edge mismatch"));
    }
    Ok(Mixed {
        top: c.m_compose(&right_sq.top, &left_sq.top)?,
        bottom: c.m_compose(&right_sq.bottom, &left_sq.bottom)?,
        left: left_sq.left.clone(),
        right: right_sq.right.clone(),
    })
}

/// Vertical pasting of mixed squares along a shared horizontal m-morphism.
pub fn paste_mixed_v<C: StarCgw + ?Sized>(
    c: &C,
    upper: &MixedOf<C>,
    lower: &MixedOf<C>,
) -> Result<MixedOf<C>> {
    if !c.m_eq(&upper.bottom, &lower.top) {
        return Err(bad("vertical pasting edge mismatch"));
    }
    Ok(Mixed {
        top: upper.top.clone(),
        bottom: lower.bottom.clone(),
        left: c.e_compose(&lower.left, &upper.left)?,
        right: c.e_compose(&lower.right, &upper.right)?,
    })
}

pub fn paste_msq_h<C: StarCgw + ?Sized>(c: &C, l: &MSqOf<C>, r: &MSqOf<C>) -> Result<MSqOf<C>> {
    if !c.m_eq(&l.right, &r.left) {
        return Err(bad("horizontal pasting edge mismatch"));
    }
    Ok(HomSq {
        top: c.m_compose(&r.top, &l.top)?,
        bottom: c.m_compose(&r.bottom, &l.bottom)?,
        left: l.left.clone(),
        right: r.right.clone(),
    })
}

pub fn paste_msq_v<C: StarCgw + ?Sized>(c: &C, u: &MSqOf<C>, w: &MSqOf<C>) -> Result<MSqOf<C>> {
    if !c.m_eq(&u.bottom, &w.top) {
        return Err(bad("vertical pasting edge mismatch"));
    }
    Ok(HomSq {
        top: u.top.clone(),
        bottom: w.bottom.clone(),
        left: c.m_compose(&w.left, &u.left)?,
        right: c.m_compose(&w.right, &u.right)?,
    })
}

/// Transposes a hom square (swap the two directions).
pub fn transpose<A: Clone>(sq: &HomSq<A>) -> HomSq<A> {
    HomSq {
        top: sq.left.clone(),
        left: sq.top.clone(),
        right: sq.bottom.clone(),
        bottom: sq.right.clone(),
    }
}

/// The result of the southern construction on an m-cube.
#[derive(Debug, Clone)]
pub struct Southern<C: StarCgw + ?Sized> {
    pub back_star: StarMOf<C>,
    pub front_star: StarMOf<C>,
    /// Mediating arrow from the back star pushout into the back target.
    pub back_mediator: C::M,
    pub front_mediator: C::M,
    /// The southern square: induced arrow between star pushouts over the
    /// targets.
    pub square: MSqOf<C>,
    pub good: bool,
}

/// Computes both star pushouts of an m-cube's back and front spans, the
/// induced m-morphism between them, and reports goodness of the southern
/// square.
pub fn southern<C: StarCgw + ?Sized>(c: &C, cube: &Cube<C::M>) -> Result<Southern<C>> {
    for face in cube.faces() {
        if !is_good_m(c, &face)? {
            return Err(Error::SquareNotGood);
        }
    }
    let back_star = c.star_m(&cube.back.top, &cube.back.left)?;
    let front_star = c.star_m(&cube.front.top, &cube.front.left)?;
    let back_mediator = c.star_mediate_m(&back_star, &cube.back)?;
    let front_mediator = c.star_mediate_m(&front_star, &cube.front)?;
    // Target square under the back span landing in the front star pushout.
    let to_front = HomSq {
        top: cube.back.top.clone(),
        left: cube.back.left.clone(),
        right: c.m_compose(&front_star.left, &cube.edge_b)?,
        bottom: c.m_compose(&front_star.right, &cube.edge_c)?,
    };
    let induced = c.star_mediate_m(&back_star, &to_front)?;
    let square = HomSq {
        top: induced,
        left: back_mediator.clone(),
        right: front_mediator.clone(),
        bottom: cube.edge_d.clone(),
    };
    let good = is_good_m(c, &square)?;
    Ok(Southern {
        back_star,
        front_star,
        back_mediator,
        front_mediator,
        square,
        good,
    })
}

/// Goodness of the southern square computed along a chosen axis.
pub fn southern_good_in_axis<C: StarCgw + ?Sized>(
    c: &C,
    cube: &Cube<C::M>,
    axis: CubeAxis,
) -> Result<bool> {
    Ok(southern(c, &cube.rotated(axis))?.good)
}
