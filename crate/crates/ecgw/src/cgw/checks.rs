//! The randomized property suites fed to the audit engine: one check per
//! axiom of the double-category structure, one per supporting lemma, and a
//! suite for the star-pushout properties.
//!
//! Checks are written against [`StarCgw`] only, so the same suites run over
//! finite sets, finite action sets, and chain complexes.

use crate::cgw::audit::{Check, Outcome};
use crate::cgw::ext::ExtCgw;
use crate::cgw::ops::{
    c_of_mixed, classify_mixed, cokernel_with_square, complete_distinguished_em,
    complete_distinguished_me, is_good_e, is_good_m, is_pseudo_commutative, k_of_mixed,
    kernel_with_square, mixed_of_esq, mixed_of_msq, paste_mixed_h, paste_mixed_v, paste_msq_h,
    paste_msq_v, southern, southern_good_in_axis, span_square_e, span_square_m, transpose,
};
use crate::cgw::square::{Cube, CubeAxis, Distinguished, HomSq, Mixed};
use crate::cgw::traits::{MixedOf, StarCgw, StarMOf};
use crate::error::Error;
use crate::extcat::{ExtensiveInstance, Injection};
use crate::rng::Rng;

type Verdict = Result<(), String>;

trait Ctx<T> {
    fn ctx(self, what: &str) -> Result<T, String>;
}

impl<T> Ctx<T> for crate::error::Result<T> {
    fn ctx(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Verdict {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn check<C: StarCgw + ?Sized>(
    name: &'static str,
    body: impl Fn(&C, &mut Rng) -> Verdict + Send + Sync + 'static,
) -> Check<C> {
    Check::new(name, move |c, rng| match body(c, rng) {
        Ok(()) => Outcome::Pass,
        Err(cex) => Outcome::Fail(cex),
    })
}

fn show_mixed<C: StarCgw + ?Sized>(c: &C, sq: &MixedOf<C>) -> String {
    format!(
        "mixed[top {} | bottom {} | left {} | right {}]",
        c.describe_m(&sq.top),
        c.describe_m(&sq.bottom),
        c.describe_e(&sq.left),
        c.describe_e(&sq.right)
    )
}

fn show_msq<C: StarCgw + ?Sized>(c: &C, sq: &HomSq<C::M>) -> String {
    format!(
        "m-square[top {} | bottom {} | left {} | right {}]",
        c.describe_m(&sq.top),
        c.describe_m(&sq.bottom),
        c.describe_m(&sq.left),
        c.describe_m(&sq.right)
    )
}

// --- generation helpers ----------------------------------------------------

/// A pseudo-commutative square grown from a random mixed cospan.
pub fn gen_mixed_pc<C: StarCgw + ?Sized>(c: &C, rng: &mut Rng) -> crate::Result<MixedOf<C>> {
    let cod = c.gen_obj(rng);
    let bottom = c.gen_sub_m(rng, &cod);
    let right = c.gen_sub_e(rng, &cod);
    let (left, top) = c.mixed_pullback(&bottom, &right)?;
    Ok(Mixed {
        top,
        bottom,
        left,
        right,
    })
}

/// A distinguished square grown by completing a random composable pair.
pub fn gen_distinguished<C: StarCgw + ?Sized>(
    c: &C,
    rng: &mut Rng,
) -> crate::Result<Distinguished<C::M, C::E>> {
    let b = c.gen_obj(rng);
    let f = c.gen_sub_m(rng, &b);
    let g = c.gen_sup_e(rng, &b);
    complete_distinguished_me(c, &f, &g)
}

/// A good square grown from a random m-cospan.
pub fn gen_good_msq<C: StarCgw + ?Sized>(c: &C, rng: &mut Rng) -> crate::Result<HomSq<C::M>> {
    let cod = c.gen_obj(rng);
    let bottom = c.gen_sub_m(rng, &cod);
    let right = c.gen_sub_m(rng, &cod);
    let (left, top) = c.pullback_m(&bottom, &right)?;
    Ok(HomSq {
        top,
        bottom,
        left,
        right,
    })
}

/// A cube with all six faces good, grown from three subobjects of a common
/// target and their pullbacks.
pub fn gen_good_cube<C: StarCgw + ?Sized>(c: &C, rng: &mut Rng) -> crate::Result<Cube<C::M>> {
    let dp = c.gen_obj(rng);
    let edge_d = c.gen_sub_m(rng, &dp);
    let bp_in = c.gen_sub_m(rng, &dp);
    let cp_in = c.gen_sub_m(rng, &dp);
    let (b_in_d, edge_b) = c.pullback_m(&edge_d, &bp_in)?;
    let (c_in_d, edge_c) = c.pullback_m(&edge_d, &cp_in)?;
    let (ap_in_cp, front_top) = c.pullback_m(&cp_in, &bp_in)?;
    let front = HomSq {
        top: front_top,
        left: ap_in_cp,
        right: bp_in,
        bottom: cp_in,
    };
    let (a_in_c, back_top) = c.pullback_m(&c_in_d, &b_in_d)?;
    let back = HomSq {
        top: back_top,
        left: a_in_c,
        right: b_in_d,
        bottom: c_in_d,
    };
    let a_to_bp = c.m_compose(&edge_b, &back.top)?;
    let edge_a = c.m_factor(&a_to_bp, &front.top)?;
    Ok(Cube {
        back,
        front,
        edge_a,
        edge_b,
        edge_c,
        edge_d,
    })
}

/// Cornerwise coproduct of two mixed squares. Returns the coproduct square
/// and the four connecting m-morphisms out of the first summand's corners.
fn coproduct_mixed<C: StarCgw + ?Sized>(
    c: &C,
    s: &MixedOf<C>,
    extra: &MixedOf<C>,
) -> crate::Result<(MixedOf<C>, [C::M; 4])> {
    // A star pushout over the initial object is exactly the coproduct with
    // its two inclusions in the m-role.
    let corner = |x: &C::Obj, y: &C::Obj| -> crate::Result<StarMOf<C>> {
        c.star_m(&c.m_from_initial(x), &c.m_from_initial(y))
    };
    let tl = corner(&c.m_dom(&s.top), &c.m_dom(&extra.top))?;
    let tr = corner(&c.m_cod(&s.top), &c.m_cod(&extra.top))?;
    let bl = corner(&c.m_dom(&s.bottom), &c.m_dom(&extra.bottom))?;
    let br = corner(&c.m_cod(&s.bottom), &c.m_cod(&extra.bottom))?;
    let sum_m = |src: &StarMOf<C>, dst: &StarMOf<C>, f: &C::M, g: &C::M| -> crate::Result<C::M> {
        let sq = HomSq {
            top: c.m_from_initial(&c.m_dom(f)),
            left: c.m_from_initial(&c.m_dom(g)),
            right: c.m_compose(&dst.left, f)?,
            bottom: c.m_compose(&dst.right, g)?,
        };
        c.star_mediate_m(src, &sq)
    };
    let top = sum_m(&tl, &tr, &s.top, &extra.top)?;
    let bottom = sum_m(&bl, &br, &s.bottom, &extra.bottom)?;
    let left = c.induced_star_e(&tl, &bl, &s.left, &extra.left)?;
    let right = c.induced_star_e(&tr, &br, &s.right, &extra.right)?;
    let square = Mixed {
        top,
        bottom,
        left,
        right,
    };
    Ok((square, [tl.left, tr.left, bl.left, br.left]))
}

// --- axiom suite -------------------------------------------------------------

pub fn axiom_checks<C: StarCgw + 'static>() -> Vec<Check<C>> {
    vec![
        check("axiom_z_initial", |c: &C, rng| {
            let a = c.gen_obj(rng);
            let from_m = c.m_from_initial(&a);
            let from_e = c.e_from_initial(&a);
            ensure(c.is_initial(&c.m_dom(&from_m)), || "m-arrow from initial has wrong domain".into())?;
            ensure(c.is_initial(&c.e_dom(&from_e)), || "e-arrow from initial has wrong domain".into())?;
            let cok = c.cokernel(&from_m);
            ensure(c.e_is_iso(&cok), || "cokernel of the initial inclusion is not invertible".into())?;
            let ker = c.kernel(&from_e);
            ensure(c.m_is_iso(&ker), || "kernel of the initial inclusion is not invertible".into())?;
            if let Some(arrows) = c.enumerate_m(&c.initial(), &a) {
                ensure(arrows.len() == 1, || {
                    format!("{} arrows out of the initial object into {}", arrows.len(), c.describe_obj(&a))
                })?;
            }
            Ok(())
        }),
        check("axiom_m_monic", |c: &C, rng| {
            let b = c.gen_obj(rng);
            let f = c.gen_sub_m(rng, &b);
            let a = c.m_dom(&f);
            let probe = c.gen_sub_m(rng, &a);
            let x = c.m_dom(&probe);
            if let Some(arrows) = c.enumerate_m(&x, &a) {
                // Cancellation over the whole hom-set: the arrows are
                // pairwise distinct, so composition with a monic must keep
                // them distinct. Composites are compared through their
                // printed forms to stay linear in the hom-set size.
                let mut keys: Vec<String> = arrows
                    .iter()
                    .map(|g| Ok(c.describe_m(&c.m_compose(&f, g).ctx("compose")?)))
                    .collect::<Result<_, String>>()?;
                let total = keys.len();
                keys.sort();
                keys.dedup();
                ensure(keys.len() == total, || {
                    format!("cancellation fails through {}", c.describe_m(&f))
                })?;
            } else {
                let through = c.m_compose(&f, &probe).ctx("compose")?;
                let back = c.m_factor(&through, &f).ctx("factor")?;
                ensure(c.m_eq(&back, &probe), || "factorization through a monic is not unique".into())?;
            }
            Ok(())
        }),
        check("axiom_g_good_squares", |c: &C, rng| {
            // Weak triangles are good.
            let a = c.gen_obj(rng);
            let phi = c.gen_iso_m(rng, &a);
            let u = c.gen_sup_m(rng, &a);
            let w = c.gen_sup_m(rng, &c.m_cod(&u));
            let right = c
                .m_compose(&c.m_compose(&w, &u).ctx("compose")?, &c.m_invert(&phi).ctx("invert")?)
                .ctx("compose")?;
            let tri = HomSq {
                top: phi,
                left: u,
                bottom: w,
                right,
            };
            ensure(is_good_m(c, &tri).ctx("classify")?, || {
                format!("weak triangle not good: {}", show_msq(c, &tri))
            })?;
            // Good squares satisfy the pullback cone property.
            let sq = gen_good_msq(c, rng).ctx("generate")?;
            let z = c.gen_sub_m(rng, &c.m_dom(&sq.top));
            let cone_left = c.m_compose(&sq.left, &z).ctx("compose")?;
            let cone_top = c.m_compose(&sq.top, &z).ctx("compose")?;
            let med = c.m_factor(&cone_left, &sq.left).ctx("mediate")?;
            ensure(c.m_eq(&med, &z), || "mediating cone arrow is not unique".into())?;
            let via_top = c.m_compose(&sq.top, &med).ctx("compose")?;
            ensure(c.m_eq(&via_top, &cone_top), || "mediating cone arrow fails to commute".into())?;
            Ok(())
        }),
        check("axiom_d_distinguished", |c: &C, rng| {
            let sq = gen_mixed_pc(c, rng).ctx("generate")?;
            let covers = c.mixed_jointly_covers(&sq);
            let ksq = k_of_mixed(c, &sq).ctx("kernel transport")?;
            ensure(is_good_m(c, &ksq).ctx("classify")?, || {
                format!("kernel square not good for {}", show_mixed(c, &sq))
            })?;
            let csq = c_of_mixed(c, &sq).ctx("cokernel transport")?;
            ensure(is_good_e(c, &csq).ctx("classify")?, || {
                format!("cokernel square not good for {}", show_mixed(c, &sq))
            })?;
            let k_iso = c.m_is_iso(&ksq.top);
            let c_iso = c.e_is_iso(&csq.top);
            ensure(covers == k_iso && k_iso == c_iso, || {
                format!(
                    "cover={covers} kernel-iso={k_iso} cokernel-iso={c_iso} disagree on {}",
                    show_mixed(c, &sq)
                )
            })?;
            let class = classify_mixed(c, &sq).ctx("classify")?;
            ensure(class.pseudo_commutative, || "generated square not pseudo-commutative".into())?;
            ensure(class.distinguished == covers, || "classification disagrees with cover test".into())
        }),
        check("axiom_k_complement_squares", |c: &C, rng| {
            let b = c.gen_obj(rng);
            let f = c.gen_sub_m(rng, &b);
            let (_, sq) = cokernel_with_square(c, &f);
            ensure(
                classify_mixed(c, &sq).ctx("classify")?.distinguished,
                || format!("cokernel square not distinguished: {}", show_mixed(c, &sq)),
            )?;
            let g = c.gen_sub_e(rng, &b);
            let (_, sq2) = kernel_with_square(c, &g);
            ensure(
                classify_mixed(c, &sq2).ctx("classify")?.distinguished,
                || format!("kernel square not distinguished: {}", show_mixed(c, &sq2)),
            )
        }),
        check("axiom_gs_symmetry", |c: &C, rng| {
            let sq = gen_good_msq(c, rng).ctx("generate")?;
            ensure(is_good_m(c, &transpose(&sq)).ctx("classify")?, || {
                format!("goodness is direction-dependent on {}", show_msq(c, &sq))
            })?;
            // Closure under horizontal pasting.
            let r = gen_good_msq(c, rng).ctx("generate")?;
            let bottom1 = c.gen_sub_m(rng, &c.m_dom(&r.bottom));
            let (left1, top1) = c.pullback_m(&bottom1, &r.left).ctx("pullback")?;
            let l = HomSq {
                top: top1,
                bottom: bottom1,
                left: left1,
                right: r.left.clone(),
            };
            let pasted = paste_msq_h(c, &l, &r).ctx("paste")?;
            ensure(is_good_m(c, &pasted).ctx("classify")?, || {
                "horizontal pasting of good squares is not good".into()
            })?;
            // Closure under vertical pasting.
            let u = gen_good_msq(c, rng).ctx("generate")?;
            let wleft = c.gen_sup_m(rng, &c.m_dom(&u.bottom));
            let star = c.star_m(&u.bottom, &wleft).ctx("star")?;
            let w = span_square_m::<C>(&u.bottom, &wleft, &star);
            let pasted_v = paste_msq_v(c, &u, &w).ctx("paste")?;
            ensure(is_good_m(c, &pasted_v).ctx("classify")?, || {
                "vertical pasting of good squares is not good".into()
            })
        }),
        check("axiom_star_comparisons", |c: &C, rng| {
            let a = c.gen_obj(rng);
            let u = c.gen_sup_m(rng, &a);
            let v = c.gen_sup_m(rng, &a);
            let star = c.star_m(&u, &v).ctx("star")?;
            let sq = span_square_m::<C>(&u, &v, &star);
            ensure(is_good_m(c, &sq).ctx("classify")?, || {
                format!("star square not good: {}", show_msq(c, &sq))
            })?;
            let cmp1 = mixed_of_msq(c, &sq).ctx("comparison")?;
            ensure(c.m_is_iso(&cmp1.top), || "comparison C/A -> star/B is not invertible".into())?;
            let cmp2 = mixed_of_msq(c, &transpose(&sq)).ctx("comparison")?;
            ensure(c.m_is_iso(&cmp2.top), || "comparison B/A -> star/C is not invertible".into())?;
            // The e-span version, inside a generated witness.
            let d0 = c.gen_obj(rng);
            let e1 = c.gen_sub_e(rng, &d0);
            let e2 = c.gen_sub_e(rng, &d0);
            let (pleft, ptop) = c.pullback_e(&e1, &e2).ctx("pullback")?;
            let witness = HomSq {
                top: pleft.clone(),
                left: ptop.clone(),
                right: e1,
                bottom: e2,
            };
            let estar = c.star_e(&pleft, &ptop, &witness).ctx("star")?;
            let esq = span_square_e::<C>(&pleft, &ptop, &estar);
            ensure(is_good_e(c, &esq).ctx("classify")?, || "e-star square not good".into())?;
            let m1 = mixed_of_esq(c, &esq).ctx("comparison")?;
            ensure(c.e_is_iso(&m1.left), || "e-span kernel comparison is not invertible".into())?;
            let m2 = mixed_of_esq(c, &transpose(&esq)).ctx("comparison")?;
            ensure(c.e_is_iso(&m2.left), || "e-span kernel comparison is not invertible".into())
        }),
        check("axiom_po_universal", |c: &C, rng| {
            let a = c.gen_obj(rng);
            let u = c.gen_sup_m(rng, &a);
            let v = c.gen_sup_m(rng, &a);
            let star = c.star_m(&u, &v).ctx("star")?;
            let w = c.gen_sup_m(rng, &star.obj);
            let sq = HomSq {
                top: u,
                left: v,
                right: c.m_compose(&w, &star.left).ctx("compose")?,
                bottom: c.m_compose(&w, &star.right).ctx("compose")?,
            };
            let med = c.star_mediate_m(&star, &sq).ctx("mediate")?;
            ensure(c.m_eq(&med, &w), || "mediating arrow disagrees with the construction".into())?;
            // Uniqueness by enumeration, on hom-sets small enough to scan.
            if let Some(arrows) = c
                .enumerate_m(&star.obj, &c.m_cod(&w))
                .filter(|arrows| arrows.len() <= 2_500)
            {
                let mut hits = 0;
                for x in &arrows {
                    let lhs = c.m_compose(x, &star.left).ctx("compose")?;
                    let rhs = c.m_compose(x, &star.right).ctx("compose")?;
                    if c.m_eq(&lhs, &sq.right) && c.m_eq(&rhs, &sq.bottom) {
                        hits += 1;
                    }
                }
                ensure(hits == 1, || format!("{hits} mediating arrows found, expected exactly 1"))?;
            }
            Ok(())
        }),
        check("axiom_pbl", |c: &C, rng| {
            // m-direction: outer and right pullbacks force the left square.
            let ap = c.gen_obj(rng);
            let u2 = c.gen_sup_m(rng, &ap);
            let v2 = c.gen_sup_m(rng, &c.m_cod(&u2));
            let rc = c.gen_sub_e(rng, &c.m_cod(&v2));
            let (rb, top_bc) = c.mixed_pullback(&v2, &rc).ctx("pullback")?;
            let composite = c.m_compose(&v2, &u2).ctx("compose")?;
            let (ra, top_ac) = c.mixed_pullback(&composite, &rc).ctx("pullback")?;
            let top_ab = c.m_factor(&top_ac, &top_bc).ctx("factor")?;
            let left_sq = Mixed {
                top: top_ab,
                bottom: u2,
                left: ra,
                right: rb,
            };
            ensure(is_pseudo_commutative(c, &left_sq).ctx("classify")?, || {
                format!("pullback lemma fails: {}", show_mixed(c, &left_sq))
            })?;
            // e-direction.
            let bl = c.gen_obj(rng);
            let w = c.gen_sup_m(rng, &bl);
            let mr = c.gen_sub_e(rng, &c.m_cod(&w));
            let (ml, mid_top) = c.mixed_pullback(&w, &mr).ctx("pullback")?;
            let tr = c.gen_sub_e(rng, &c.e_dom(&mr));
            let outer_right = c.e_compose(&mr, &tr).ctx("compose")?;
            let (ol, otop) = c.mixed_pullback(&w, &outer_right).ctx("pullback")?;
            let uleft = c.e_factor(&ol, &ml).ctx("factor")?;
            let upper = Mixed {
                top: otop,
                bottom: mid_top,
                left: uleft,
                right: tr,
            };
            ensure(is_pseudo_commutative(c, &upper).ctx("classify")?, || {
                format!("pullback lemma (e-direction) fails: {}", show_mixed(c, &upper))
            })
        }),
        check("axiom_pol", |c: &C, rng| {
            // m-version: outer good rectangle forces the right square.
            let a = c.gen_obj(rng);
            let u = c.gen_sup_m(rng, &a);
            let w = c.gen_sup_m(rng, &c.m_cod(&u));
            let v = c.gen_sup_m(rng, &a);
            let star1 = c.star_m(&u, &v).ctx("star")?;
            let star2 = c.star_m(&c.m_compose(&w, &u).ctx("compose")?, &v).ctx("star")?;
            let to_e = HomSq {
                top: u,
                left: v,
                right: c.m_compose(&star2.left, &w).ctx("compose")?,
                bottom: star2.right.clone(),
            };
            let med = c.star_mediate_m(&star1, &to_e).ctx("mediate")?;
            let right_sq = HomSq {
                top: w,
                left: star1.left.clone(),
                right: star2.left.clone(),
                bottom: med,
            };
            ensure(is_good_m(c, &right_sq).ctx("classify")?, || {
                format!("pushout lemma fails: {}", show_msq(c, &right_sq))
            })?;
            // e-version, inside a common ambient object.
            let z = c.gen_obj(rng);
            let dz = c.gen_sub_e(rng, &z);
            let bd = c.gen_sub_e(rng, &c.e_dom(&dz));
            let b_in_z = c.e_compose(&dz, &bd).ctx("compose")?;
            let mut cz = None;
            for _ in 0..20 {
                let cand = c.gen_sub_e(rng, &z);
                let (cd_left, _) = c.pullback_e(&dz, &cand).ctx("pullback")?;
                if c.e_factor(&cd_left, &bd).is_ok() {
                    cz = Some(cand);
                    break;
                }
            }
            let cz = cz.unwrap_or_else(|| b_in_z.clone());
            let (aleft, atop) = c.pullback_e(&b_in_z, &cz).ctx("pullback")?;
            let wit1 = HomSq {
                top: aleft.clone(),
                left: atop.clone(),
                right: b_in_z,
                bottom: cz.clone(),
            };
            let star1e = c.star_e(&aleft, &atop, &wit1).ctx("star")?;
            let ad = c.e_compose(&bd, &aleft).ctx("compose")?;
            let wit2 = HomSq {
                top: ad.clone(),
                left: atop.clone(),
                right: dz,
                bottom: cz,
            };
            ensure(is_good_e(c, &wit2).ctx("classify")?, || "outer e-witness not good".into())?;
            let star2e = c.star_e(&ad, &atop, &wit2).ctx("star")?;
            let to_e2 = HomSq {
                top: aleft,
                left: atop,
                right: c.e_compose(&star2e.left, &bd).ctx("compose")?,
                bottom: star2e.right.clone(),
            };
            let med_e = c.star_mediate_e(&star1e, &to_e2).ctx("mediate")?;
            let right_sq_e = HomSq {
                top: bd,
                left: star1e.left.clone(),
                right: star2e.left.clone(),
                bottom: med_e,
            };
            ensure(is_good_e(c, &right_sq_e).ctx("classify")?, || {
                "pushout lemma (e-version) fails".into()
            })
        }),
        check("distinguished_completion", |c: &C, rng| {
            let b = c.gen_obj(rng);
            let f = c.gen_sub_m(rng, &b);
            let g = c.gen_sup_e(rng, &b);
            let d = complete_distinguished_me(c, &f, &g).ctx("complete")?;
            ensure(c.m_eq(&d.square.top, &f) && c.e_eq(&d.square.right, &g), || {
                "completion changed the given boundary".into()
            })?;
            let b2 = c.gen_obj(rng);
            let f2 = c.gen_sub_e(rng, &b2);
            let g2 = c.gen_sup_m(rng, &b2);
            let d2 = complete_distinguished_em(c, &f2, &g2).ctx("complete (mirrored)")?;
            ensure(c.e_eq(&d2.square.left, &f2) && c.m_eq(&d2.square.bottom, &g2), || {
                "mirrored completion changed the given boundary".into()
            })
        }),
        check("cokernel_comparison", |c: &C, rng| {
            let b = c.gen_obj(rng);
            let u = c.gen_sub_m(rng, &b);
            let v = c.gen_sup_m(rng, &b);
            let composite = c.m_compose(&v, &u).ctx("compose")?;
            let e_cmp = c.cok_restrict_e(&u, &v).ctx("restrict")?;
            let via = c.e_compose(&c.cokernel(&composite), &e_cmp).ctx("compose")?;
            ensure(c.e_eq(&via, &c.cokernel(&v)), || {
                "cokernel comparison composite disagrees".into()
            })?;
            let m_cmp = c.cok_extend_m(&u, &v).ctx("extend")?;
            let mix = Mixed {
                top: m_cmp,
                bottom: v,
                left: c.cokernel(&u),
                right: c.cokernel(&composite),
            };
            ensure(is_pseudo_commutative(c, &mix).ctx("classify")?, || {
                "cokernel comparison square is not pseudo-commutative".into()
            })?;
            // Dual comparison via kernels of a composable e-pair.
            let b3 = c.gen_obj(rng);
            let ue = c.gen_sub_e(rng, &b3);
            let ve = c.gen_sup_e(rng, &b3);
            let comp_e = c.e_compose(&ve, &ue).ctx("compose")?;
            let cmp = c.m_factor(&c.kernel(&ve), &c.kernel(&comp_e)).ctx("factor")?;
            let _ = cmp;
            Ok(())
        }),
        check("iso_transport", |c: &C, rng| {
            // Pullback along anything preserves bottom isomorphisms.
            let b = c.gen_obj(rng);
            let bottom = c.gen_iso_m(rng, &b);
            let right = c.gen_sub_e(rng, &c.m_cod(&bottom));
            let (_, top) = c.mixed_pullback(&bottom, &right).ctx("pullback")?;
            ensure(c.m_is_iso(&top), || "pullback of an isomorphism is not an isomorphism".into())?;
            // Dual: e-parallel transport.
            let d = c.gen_obj(rng);
            let bottom2 = c.gen_sub_m(rng, &d);
            let phi = c.gen_iso_m(rng, &d);
            let right2 = c.m_iso_to_e(&c.m_invert(&phi).ctx("invert")?).ctx("role swap")?;
            let (left2, _) = c.mixed_pullback(&bottom2, &right2).ctx("pullback")?;
            ensure(c.e_is_iso(&left2), || "transport of an e-isomorphism failed".into())
        }),
        check("iso_iff_initial_complement", |c: &C, rng| {
            let b = c.gen_obj(rng);
            let f = if rng.chance(1, 2) {
                c.gen_iso_m(rng, &b)
            } else {
                c.gen_sub_m(rng, &b)
            };
            let lhs = c.m_is_iso(&f);
            let rhs = c.is_initial(&c.e_dom(&c.cokernel(&f)));
            ensure(lhs == rhs, || {
                format!("iso={lhs} but empty-complement={rhs} for {}", c.describe_m(&f))
            })?;
            let g = if rng.chance(1, 2) {
                c.m_iso_to_e(&c.gen_iso_m(rng, &b)).ctx("role swap")?
            } else {
                c.gen_sub_e(rng, &b)
            };
            let lhs = c.e_is_iso(&g);
            let rhs = c.is_initial(&c.m_dom(&c.kernel(&g)));
            ensure(lhs == rhs, || {
                format!("iso={lhs} but empty-kernel={rhs} for {}", c.describe_e(&g))
            })
        }),
        check("distinguished_two_of_three", |c: &C, rng| {
            let two_of_three = |a: bool, b: bool, o: bool| -> bool {
                !((a && b && !o) || (a && o && !b) || (b && o && !a))
            };
            // Horizontal pasting.
            let r = gen_mixed_pc(c, rng).ctx("generate")?;
            let bottom1 = c.gen_sub_m(rng, &c.m_dom(&r.bottom));
            let (left1, top1) = c.mixed_pullback(&bottom1, &r.left).ctx("pullback")?;
            let l = Mixed {
                top: top1,
                bottom: bottom1,
                left: left1,
                right: r.left.clone(),
            };
            let o = paste_mixed_h(c, &l, &r).ctx("paste")?;
            let dl = classify_mixed(c, &l).ctx("classify")?.distinguished;
            let dr = classify_mixed(c, &r).ctx("classify")?.distinguished;
            let dout = classify_mixed(c, &o).ctx("classify")?.distinguished;
            ensure(two_of_three(dl, dr, dout), || {
                format!("horizontal 2-of-3 fails ({dl},{dr},{dout}) on {}", show_mixed(c, &o))
            })?;
            // Vertical pasting.
            let big = c.gen_obj(rng);
            let bot = c.gen_sub_m(rng, &big);
            let r1 = c.gen_sub_e(rng, &c.m_cod(&bot));
            let (l1, t1) = c.mixed_pullback(&bot, &r1).ctx("pullback")?;
            let r2 = c.gen_sub_e(rng, &c.e_dom(&r1));
            let (l2, t2) = c.mixed_pullback(&t1, &r2).ctx("pullback")?;
            let upper = Mixed {
                top: t2,
                bottom: t1.clone(),
                left: l2,
                right: r2,
            };
            let lower = Mixed {
                top: t1,
                bottom: bot,
                left: l1,
                right: r1,
            };
            let outer = paste_mixed_v(c, &upper, &lower).ctx("paste")?;
            let du = classify_mixed(c, &upper).ctx("classify")?.distinguished;
            let dw = classify_mixed(c, &lower).ctx("classify")?.distinguished;
            let dv = classify_mixed(c, &outer).ctx("classify")?.distinguished;
            ensure(two_of_three(du, dw, dv), || {
                format!("vertical 2-of-3 fails ({du},{dw},{dv})")
            })
        }),
        check("complement_involution", |c: &C, rng| {
            let b = c.gen_obj(rng);
            let f = c.gen_sub_m(rng, &b);
            let double = c.kernel(&c.cokernel(&f));
            let fwd = c.m_factor(&double, &f).ctx("factor")?;
            ensure(c.m_is_iso(&fwd), || "double complement is a strict subobject".into())?;
            let bwd = c.m_factor(&f, &double).ctx("factor")?;
            ensure(c.m_is_iso(&bwd), || "double complement is a strict superobject".into())
        }),
    ]
}

// --- star-pushout property suite ---------------------------------------------

pub fn appendix_checks<C: StarCgw + 'static>() -> Vec<Check<C>> {
    vec![
        check("pushout_comparison_iso", |c: &C, rng| {
            let sq = gen_good_msq(c, rng).ctx("generate")?;
            let star = c.star_m(&sq.top, &sq.left).ctx("star")?;
            let med = c.star_mediate_m(&star, &sq).ctx("mediate")?;
            let cmp = mixed_of_msq(c, &transpose(&sq)).ctx("comparison")?;
            let med_iso = c.m_is_iso(&med);
            let cok_iso = c.m_is_iso(&cmp.top);
            ensure(med_iso == cok_iso, || {
                format!("mediator-iso={med_iso} cokernel-comparison-iso={cok_iso} on {}", show_msq(c, &sq))
            })
        }),
        check("pushout_composition", |c: &C, rng| {
            let a = c.gen_obj(rng);
            let u = c.gen_sup_m(rng, &a);
            let v = c.gen_sup_m(rng, &a);
            let w = c.gen_sup_m(rng, &c.m_cod(&u));
            let star1 = c.star_m(&u, &v).ctx("star")?;
            let star2 = c.star_m(&w, &star1.left).ctx("star")?;
            let star3 = c.star_m(&c.m_compose(&w, &u).ctx("compose")?, &v).ctx("star")?;
            let outer = HomSq {
                top: c.m_compose(&w, &u).ctx("compose")?,
                left: v,
                right: star2.left.clone(),
                bottom: c.m_compose(&star2.right, &star1.right).ctx("compose")?,
            };
            let med = c.star_mediate_m(&star3, &outer).ctx("mediate")?;
            ensure(c.m_is_iso(&med), || "composite of star pushouts is not the outer star pushout".into())
        }),
        check("pushout_functorial_m", |c: &C, rng| {
            let cube = gen_good_cube(c, rng).ctx("generate")?;
            let south = southern(c, &cube).ctx("southern")?;
            // The two created squares commute: mediators against the edges.
            let via_back = c.m_compose(&south.square.bottom, &south.back_mediator).ctx("compose")?;
            let via_front = c.m_compose(&south.front_mediator, &south.square.top).ctx("compose")?;
            ensure(c.m_eq(&via_back, &via_front), || "southern square does not commute".into())?;
            ensure(south.good, || "southern square of an all-good cube is not good".into())
        }),
        check("pushout_functorial_e", |c: &C, rng| {
            let ap = c.gen_obj(rng);
            let u1 = c.gen_sup_m(rng, &ap);
            let v1 = c.gen_sup_m(rng, &ap);
            let star1 = c.star_m(&u1, &v1).ctx("star")?;
            let q = c.gen_sub_e(rng, &star1.obj);
            let (eb, tb) = c.mixed_pullback(&star1.left, &q).ctx("pullback")?;
            let (ec, tc) = c.mixed_pullback(&star1.right, &q).ctx("pullback")?;
            let w1 = c.m_compose(&star1.left, &u1).ctx("compose")?;
            let (ea, ta) = c.mixed_pullback(&w1, &q).ctx("pullback")?;
            let u0 = c.m_factor(&ta, &tb).ctx("factor")?;
            let v0 = c.m_factor(&ta, &tc).ctx("factor")?;
            let star0 = c.star_m(&u0, &v0).ctx("star")?;
            let ind = c.induced_star_e(&star0, &star1, &eb, &ec).ctx("induce")?;
            let sq_b = Mixed {
                top: star0.left.clone(),
                bottom: star1.left.clone(),
                left: eb.clone(),
                right: ind.clone(),
            };
            ensure(is_pseudo_commutative(c, &sq_b).ctx("classify")?, || {
                "created star square (left leg) is not pseudo-commutative".into()
            })?;
            let sq_c = Mixed {
                top: star0.right.clone(),
                bottom: star1.right.clone(),
                left: ec.clone(),
                right: ind,
            };
            ensure(is_pseudo_commutative(c, &sq_c).ctx("classify")?, || {
                "created star square (right leg) is not pseudo-commutative".into()
            })?;
            // Distinguished legs transfer to the parallel created square.
            let leg_u = Mixed {
                top: u0,
                bottom: u1,
                left: ea.clone(),
                right: eb,
            };
            let leg_v = Mixed {
                top: v0,
                bottom: v1,
                left: ea,
                right: ec,
            };
            if classify_mixed(c, &leg_u).ctx("classify")?.distinguished {
                ensure(classify_mixed(c, &sq_c).ctx("classify")?.distinguished, || {
                    "distinguished leg did not transfer to the parallel star square".into()
                })?;
            }
            if classify_mixed(c, &leg_v).ctx("classify")?.distinguished {
                ensure(classify_mixed(c, &sq_b).ctx("classify")?.distinguished, || {
                    "distinguished leg did not transfer to the parallel star square".into()
                })?;
            }
            Ok(())
        }),
        check("southern_kernel_cokernel", |c: &C, rng| {
            let sq = gen_good_msq(c, rng).ctx("generate")?;
            let star = c.star_m(&sq.top, &sq.left).ctx("star")?;
            let med = c.star_mediate_m(&star, &sq).ctx("mediate")?;
            let direct = c.cokernel(&med);
            let mixed = mixed_of_msq(c, &sq).ctx("transport")?;
            let inner = c.cokernel(&mixed.top);
            let via = c.e_compose(&mixed.right, &inner).ctx("compose")?;
            ensure(c.e_eq(&direct, &via), || {
                "southern complement disagrees with the transported construction".into()
            })?;
            let pair = Mixed {
                top: c.m_from_initial(&c.e_dom(&direct)),
                bottom: med,
                left: c.e_from_initial(&star.obj),
                right: direct,
            };
            ensure(classify_mixed(c, &pair).ctx("classify")?.distinguished, || {
                "mediator and its complement are not a kernel-cokernel pair".into()
            })
        }),
        check("cube_correspondence", |c: &C, rng| {
            let cube = gen_good_cube(c, rng).ctx("generate")?;
            let south = southern(c, &cube).ctx("southern")?;
            let top_mx = mixed_of_msq(c, &cube.top_face()).ctx("transport")?;
            let left_mx = mixed_of_msq(c, &cube.left_face()).ctx("transport")?;
            let right_mx = mixed_of_msq(c, &cube.right_face()).ctx("transport")?;
            let bottom_mx = mixed_of_msq(c, &cube.bottom_face()).ctx("transport")?;
            for mx in [&top_mx, &left_mx, &right_mx, &bottom_mx] {
                ensure(is_pseudo_commutative(c, mx).ctx("classify")?, || {
                    "complement cube face is not pseudo-commutative".into()
                })?;
            }
            let cok_sq = HomSq {
                top: top_mx.top.clone(),
                left: left_mx.top.clone(),
                right: right_mx.top.clone(),
                bottom: bottom_mx.top.clone(),
            };
            let cok_good = is_good_m(c, &cok_sq).ctx("classify")?;
            ensure(cok_good == south.good, || {
                format!("complement face good={cok_good} but southern good={} disagree", south.good)
            })?;
            // Kernel round trip recovers the original faces.
            for (mx, face) in [
                (&top_mx, cube.top_face()),
                (&left_mx, cube.left_face()),
                (&right_mx, cube.right_face()),
                (&bottom_mx, cube.bottom_face()),
            ] {
                let back = k_of_mixed(c, mx).ctx("kernel transport")?;
                ensure(is_good_m(c, &back).ctx("classify")?, || {
                    "kernel of a complement face is not good".into()
                })?;
                let fwd = c.m_factor(&back.left, &face.left).ctx("factor")?;
                ensure(c.m_is_iso(&fwd), || "kernel round trip lost the original face".into())?;
            }
            Ok(())
        }),
        check("mixed_cube_southern", |c: &C, rng| {
            let front = gen_good_msq(c, rng).ctx("generate")?;
            let q = c.gen_sub_e(rng, &c.m_cod(&front.bottom));
            let (ec, tc) = c.mixed_pullback(&front.bottom, &q).ctx("pullback")?;
            let (eb, tb) = c.mixed_pullback(&front.right, &q).ctx("pullback")?;
            let diag = c.m_compose(&front.bottom, &front.left).ctx("compose")?;
            let (ea, ta) = c.mixed_pullback(&diag, &q).ctx("pullback")?;
            let back = HomSq {
                top: c.m_factor(&ta, &tb).ctx("factor")?,
                left: c.m_factor(&ta, &tc).ctx("factor")?,
                right: tb,
                bottom: tc,
            };
            ensure(is_good_m(c, &back).ctx("classify")?, || "pulled-back face is not good".into())?;
            let star_back = c.star_m(&back.top, &back.left).ctx("star")?;
            let star_front = c.star_m(&front.top, &front.left).ctx("star")?;
            let med_back = c.star_mediate_m(&star_back, &back).ctx("mediate")?;
            let med_front = c.star_mediate_m(&star_front, &front).ctx("mediate")?;
            let ind = c.induced_star_e(&star_back, &star_front, &eb, &ec).ctx("induce")?;
            let _ = ea;
            let southern_sq = Mixed {
                top: med_back,
                bottom: med_front,
                left: ind,
                right: q,
            };
            ensure(is_pseudo_commutative(c, &southern_sq).ctx("classify")?, || {
                format!("mixed-cube southern square not pseudo-commutative: {}", show_mixed(c, &southern_sq))
            })
        }),
        check("star_preserves_pc", |c: &C, rng| {
            star_square_transfer(c, rng, false)
        }),
        check("star_preserves_distinguished", |c: &C, rng| {
            star_square_transfer(c, rng, true)
        }),
        check("southern_direction_independence", |c: &C, rng| {
            let cube = gen_good_cube(c, rng).ctx("generate")?;
            let g1 = southern_good_in_axis(c, &cube, CubeAxis::Depth).ctx("southern")?;
            let g2 = southern_good_in_axis(c, &cube, CubeAxis::Width).ctx("southern")?;
            let g3 = southern_good_in_axis(c, &cube, CubeAxis::Height).ctx("southern")?;
            ensure(g1 == g2 && g2 == g3, || {
                format!("southern goodness depends on the direction: {g1},{g2},{g3}")
            })
        }),
    ]
}

/// Extra checks for the set-based instances: the complement must accept
/// exactly the coproduct inclusions (refusals are counted, not failed), and
/// the distinguished completion must be unique up to isomorphism among all
/// enumerable squares over the same composable pair.
pub fn ext_checks<I: ExtensiveInstance + Clone + 'static>() -> Vec<Check<ExtCgw<I>>> {
    vec![
        Check::new("complement_totality", |c: &ExtCgw<I>, rng| {
            let (dom, cod, inc) = c.instance.gen_inclusion_probe(rng, c.max_size);
            let is_inclusion = c.instance.is_coproduct_inclusion(&dom, &cod, inc.fun());
            match c.instance.complement(&dom, &cod, &inc) {
                Ok((_, comp_inc)) => {
                    if !is_inclusion {
                        return Outcome::Fail(format!(
                            "complement accepted a non-coproduct-inclusion {:?}",
                            inc
                        ));
                    }
                    let image = inc.image();
                    let rest = comp_inc.image();
                    if !rest.is_disjoint_from(&image)
                        || rest.union(&image) != *crate::extcat::Carrier::carrier(&cod)
                    {
                        return Outcome::Fail(format!(
                            "complement of {:?} does not partition the codomain",
                            inc
                        ));
                    }
                    Outcome::Pass
                }
                Err(Error::NotCoproductInclusion) => {
                    if is_inclusion {
                        Outcome::Fail(format!("complement refused the inclusion {:?}", inc))
                    } else {
                        Outcome::Refused
                    }
                }
                Err(e) => Outcome::Fail(format!("complement failed: {e}")),
            }
        }),
        check("completion_uniqueness_enumerated", |c: &ExtCgw<I>, rng| {
            // Small configurations keep the enumeration under control.
            let small = ExtCgw::new(c.instance.clone(), 2);
            let b = small.gen_obj(rng);
            let f = small.gen_sub_m(rng, &b);
            let g = small.gen_sup_e(rng, &b);
            let std = complete_distinguished_me(&small, &f, &g).ctx("complete")?;
            let std_corner = small.m_dom(&std.square.bottom);
            let c_obj = small.e_cod(&g);
            let carrier = crate::extcat::Carrier::carrier(&c_obj).clone();
            let mut found = 0usize;
            for mask in 0..(1u32 << carrier.len().min(12)) {
                let sub: crate::extcat::FinSetObj = carrier
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask & (1 << *k) != 0)
                    .map(|(_, e)| e.clone())
                    .collect();
                let Ok(dobj) = small.instance.restrict(&c_obj, &sub) else {
                    continue;
                };
                let Ok(inc) = Injection::inclusion(&sub, &carrier) else {
                    continue;
                };
                let Ok(bottom) = small.mor(dobj.clone(), c_obj.clone(), inc) else {
                    continue;
                };
                let Some(arrows) = small.enumerate_m(&small.m_dom(&f), &dobj) else {
                    continue;
                };
                for left in arrows {
                    let sq = Mixed {
                        top: f.clone(),
                        bottom: bottom.clone(),
                        left,
                        right: g.clone(),
                    };
                    if classify_mixed(&small, &sq).ctx("classify")?.distinguished {
                        found += 1;
                        ensure(small.obj_iso(&dobj, &std_corner), || {
                            format!(
                                "second non-isomorphic completion corner {}",
                                small.describe_obj(&dobj)
                            )
                        })?;
                    }
                }
            }
            ensure(found >= 1, || "enumeration missed the canonical completion".into())
        }),
    ]
}

/// Shared body for the star-pushout square-transfer checks: builds a span of
/// mixed squares by cornerwise coproduct and verifies the induced square
/// between star pushouts is pseudo-commutative (resp. distinguished).
fn star_square_transfer<C: StarCgw + ?Sized>(c: &C, rng: &mut Rng, distinguished: bool) -> Verdict {
    let base = if distinguished {
        gen_distinguished(c, rng).ctx("generate")?.square
    } else {
        gen_mixed_pc(c, rng).ctx("generate")?
    };
    let extra1 = if distinguished {
        gen_distinguished(c, rng).ctx("generate")?.square
    } else {
        gen_mixed_pc(c, rng).ctx("generate")?
    };
    let extra2 = if distinguished {
        gen_distinguished(c, rng).ctx("generate")?.square
    } else {
        gen_mixed_pc(c, rng).ctx("generate")?
    };
    let (sq_p, legs_p) = coproduct_mixed(c, &base, &extra1).ctx("enlarge")?;
    let (sq_pp, legs_pp) = coproduct_mixed(c, &base, &extra2).ctx("enlarge")?;
    // Corner star pushouts of the spans formed by the two enlargements.
    let mut stars = Vec::with_capacity(4);
    for k in 0..4 {
        stars.push(c.star_m(&legs_p[k], &legs_pp[k]).ctx("star")?);
    }
    let induced_m = |src: usize, dst: usize, f_p: &C::M, f_pp: &C::M| -> crate::Result<C::M> {
        let sq = HomSq {
            top: legs_p[src].clone(),
            left: legs_pp[src].clone(),
            right: c.m_compose(&stars[dst].left, f_p)?,
            bottom: c.m_compose(&stars[dst].right, f_pp)?,
        };
        c.star_mediate_m(&stars[src], &sq)
    };
    let top = induced_m(0, 1, &sq_p.top, &sq_pp.top).ctx("induce")?;
    let bottom = induced_m(2, 3, &sq_p.bottom, &sq_pp.bottom).ctx("induce")?;
    let left = c
        .induced_star_e(&stars[0], &stars[2], &sq_p.left, &sq_pp.left)
        .ctx("induce")?;
    let right = c
        .induced_star_e(&stars[1], &stars[3], &sq_p.right, &sq_pp.right)
        .ctx("induce")?;
    let induced = Mixed {
        top,
        bottom,
        left,
        right,
    };
    let class = classify_mixed(c, &induced).ctx("classify")?;
    ensure(class.pseudo_commutative, || {
        format!("induced star square not pseudo-commutative: {}", show_mixed(c, &induced))
    })?;
    if distinguished {
        ensure(class.distinguished, || {
            format!("induced star square not distinguished: {}", show_mixed(c, &induced))
        })?;
    }
    Ok(())
}
