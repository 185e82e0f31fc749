//! The double category of coproduct inclusions of an extensive instance,
//! packaged as a [`StarCgw`].

use std::fmt;

use crate::cgw::square::Star;
use crate::cgw::traits::{ESqOf, MSqOf, StarCgw, StarEOf, StarMOf};
use crate::error::{Error, Result};
use crate::extcat::{
    random_relabel_bijection, Carrier, Elem, ExtensiveInstance, FinSetObj, Injection, SetFun,
};
use crate::rng::Rng;

/// An arrow between instance objects: a carrier-level injection together
/// with its typed endpoints. Both arrow roles are carried by this type.
#[derive(Clone, PartialEq)]
pub struct ExtMor<O> {
    pub dom: O,
    pub cod: O,
    pub fun: Injection,
}

impl<O: Carrier + fmt::Debug> fmt::Debug for ExtMor<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.fun)
    }
}

/// The [`StarCgw`] structure on the coproduct inclusions of `I`, with a
/// size bound for the random generators.
#[derive(Debug)]
pub struct ExtCgw<I: ExtensiveInstance> {
    pub instance: I,
    pub max_size: usize,
}

impl<I: ExtensiveInstance> ExtCgw<I> {
    pub fn new(instance: I, max_size: usize) -> Self {
        ExtCgw { instance, max_size }
    }

    /// Builds and validates an arrow of the double category.
    pub fn mor(&self, dom: I::Obj, cod: I::Obj, fun: Injection) -> Result<ExtMor<I::Obj>> {
        if !self.instance.is_coproduct_inclusion(&dom, &cod, fun.fun()) {
            return Err(Error::NotCoproductInclusion);
        }
        Ok(ExtMor { dom, cod, fun })
    }

    fn unchecked(&self, dom: I::Obj, cod: I::Obj, fun: Injection) -> ExtMor<I::Obj> {
        debug_assert!(
            self.instance.is_coproduct_inclusion(&dom, &cod, fun.fun()),
            "constructed arrow is not a coproduct inclusion"
        );
        ExtMor { dom, cod, fun }
    }

    /// Shared pullback computation for any cospan of inclusions into one
    /// object: returns the subobject of `bottom`'s domain given by the
    /// preimage of `right`'s image, with its inclusion and comparison.
    fn corner_pullback(
        &self,
        bottom: &ExtMor<I::Obj>,
        right: &ExtMor<I::Obj>,
    ) -> Result<(ExtMor<I::Obj>, ExtMor<I::Obj>)> {
        if bottom.cod != right.cod {
            return Err(Error::NotComposable);
        }
        let image = right.fun.image();
        let sub: FinSetObj = bottom
            .fun
            .fun()
            .pairs()
            .filter(|(_, y)| image.contains(y))
            .map(|(x, _)| x.clone())
            .collect();
        let p_obj = self.instance.restrict(&bottom.dom, &sub)?;
        let left = self.unchecked(
            p_obj.clone(),
            bottom.dom.clone(),
            Injection::inclusion(&sub, bottom.dom.carrier()).expect("subset"),
        );
        let top_fun = Injection::new(
            SetFun::from_fn(sub, right.dom.carrier().clone(), |x| {
                let y = bottom.fun.apply(x).expect("total");
                right.fun.invert_at(y).expect("image membership").clone()
            })
            .expect("lands in the domain of right"),
        )
        .expect("restriction of an injection");
        let top = self.unchecked(p_obj, right.dom.clone(), top_fun);
        Ok((left, top))
    }

    fn mediate(
        &self,
        star: &Star<I::Obj, ExtMor<I::Obj>>,
        into_left: &ExtMor<I::Obj>,
        into_right: &ExtMor<I::Obj>,
    ) -> Result<ExtMor<I::Obj>> {
        if into_left.cod != into_right.cod
            || into_left.dom != star.left.dom
            || into_right.dom != star.right.dom
        {
            return Err(Error::MalformedSquare("mediator endpoints mismatch".into()));
        }
        let target = into_left.cod.clone();
        let mut assign = std::collections::BTreeMap::new();
        for p in star.obj.carrier().iter() {
            let via_left = star
                .left
                .fun
                .invert_at(p)
                .and_then(|b| into_left.fun.apply(b));
            let via_right = star
                .right
                .fun
                .invert_at(p)
                .and_then(|c| into_right.fun.apply(c));
            let y = match (via_left, via_right) {
                (Some(l), Some(r)) if l != r => return Err(Error::SquareNotGood),
                (Some(l), _) => l.clone(),
                (None, Some(r)) => r.clone(),
                (None, None) => {
                    return Err(Error::MalformedSquare(
                        "star apex not covered by its legs".into(),
                    ))
                }
            };
            assign.insert(p.clone(), y);
        }
        let fun = SetFun::from_pairs(
            star.obj.carrier().clone(),
            target.carrier().clone(),
            &assign,
        )?;
        let fun = Injection::new(fun).map_err(|_| Error::SquareNotGood)?;
        if !self
            .instance
            .is_coproduct_inclusion(&star.obj, &target, fun.fun())
        {
            return Err(Error::SquareNotGood);
        }
        Ok(ExtMor {
            dom: star.obj.clone(),
            cod: target,
            fun,
        })
    }
}

impl<I: ExtensiveInstance> StarCgw for ExtCgw<I> {
    type Obj = I::Obj;
    type M = ExtMor<I::Obj>;
    type E = ExtMor<I::Obj>;

    fn initial(&self) -> I::Obj {
        self.instance.initial()
    }

    fn is_initial(&self, a: &I::Obj) -> bool {
        a.carrier().is_empty()
    }

    fn obj_iso(&self, a: &I::Obj, b: &I::Obj) -> bool {
        self.instance.iso(a, b)
    }

    fn describe_obj(&self, a: &I::Obj) -> String {
        self.instance.describe(a)
    }

    fn m_dom(&self, f: &Self::M) -> I::Obj {
        f.dom.clone()
    }

    fn m_cod(&self, f: &Self::M) -> I::Obj {
        f.cod.clone()
    }

    fn e_dom(&self, g: &Self::E) -> I::Obj {
        g.dom.clone()
    }

    fn e_cod(&self, g: &Self::E) -> I::Obj {
        g.cod.clone()
    }

    fn m_id(&self, a: &I::Obj) -> Self::M {
        ExtMor {
            dom: a.clone(),
            cod: a.clone(),
            fun: Injection::identity(a.carrier()),
        }
    }

    fn e_id(&self, a: &I::Obj) -> Self::E {
        self.m_id(a)
    }

    fn m_compose(&self, g: &Self::M, f: &Self::M) -> Result<Self::M> {
        if f.cod != g.dom {
            return Err(Error::NotComposable);
        }
        Ok(ExtMor {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            fun: Injection::compose(&g.fun, &f.fun)?,
        })
    }

    fn e_compose(&self, g: &Self::E, f: &Self::E) -> Result<Self::E> {
        self.m_compose(g, f)
    }

    fn m_eq(&self, f: &Self::M, g: &Self::M) -> bool {
        f == g
    }

    fn e_eq(&self, f: &Self::E, g: &Self::E) -> bool {
        f == g
    }

    fn m_is_iso(&self, f: &Self::M) -> bool {
        f.fun.is_iso()
    }

    fn e_is_iso(&self, g: &Self::E) -> bool {
        g.fun.is_iso()
    }

    fn m_invert(&self, f: &Self::M) -> Result<Self::M> {
        Ok(ExtMor {
            dom: f.cod.clone(),
            cod: f.dom.clone(),
            fun: f.fun.inverse()?,
        })
    }

    fn e_invert(&self, g: &Self::E) -> Result<Self::E> {
        self.m_invert(g)
    }

    fn m_factor(&self, f: &Self::M, through: &Self::M) -> Result<Self::M> {
        if f.cod != through.cod {
            return Err(Error::NotComposable);
        }
        let mut assign = std::collections::BTreeMap::new();
        for (x, y) in f.fun.fun().pairs() {
            match through.fun.invert_at(y) {
                Some(p) => {
                    assign.insert(x.clone(), p.clone());
                }
                None => return Err(Error::NoFactorization),
            }
        }
        let fun = SetFun::from_pairs(
            f.dom.carrier().clone(),
            through.dom.carrier().clone(),
            &assign,
        )?;
        let fun = Injection::new(fun).map_err(|_| Error::NoFactorization)?;
        if !self
            .instance
            .is_coproduct_inclusion(&f.dom, &through.dom, fun.fun())
        {
            return Err(Error::NoFactorization);
        }
        Ok(ExtMor {
            dom: f.dom.clone(),
            cod: through.dom.clone(),
            fun,
        })
    }

    fn e_factor(&self, f: &Self::E, through: &Self::E) -> Result<Self::E> {
        self.m_factor(f, through)
    }

    fn m_from_initial(&self, a: &I::Obj) -> Self::M {
        ExtMor {
            dom: self.instance.initial(),
            cod: a.clone(),
            fun: Injection::from_empty(a.carrier()),
        }
    }

    fn e_from_initial(&self, a: &I::Obj) -> Self::E {
        self.m_from_initial(a)
    }

    fn m_iso_to_e(&self, f: &Self::M) -> Result<Self::E> {
        if !f.fun.is_iso() {
            return Err(Error::NotIso);
        }
        Ok(f.clone())
    }

    fn e_iso_to_m(&self, g: &Self::E) -> Result<Self::M> {
        self.m_iso_to_e(g)
    }

    fn describe_m(&self, f: &Self::M) -> String {
        format!("{:?}", f.fun)
    }

    fn describe_e(&self, g: &Self::E) -> String {
        format!("{:?}", g.fun)
    }

    fn cokernel(&self, f: &Self::M) -> Self::E {
        let (obj, inc) = self
            .instance
            .complement(&f.dom, &f.cod, &f.fun)
            .expect("arrows of the double category are coproduct inclusions");
        ExtMor {
            dom: obj,
            cod: f.cod.clone(),
            fun: inc,
        }
    }

    fn kernel(&self, g: &Self::E) -> Self::M {
        self.cokernel(g)
    }

    fn mixed_pullback(&self, bottom: &Self::M, right: &Self::E) -> Result<(Self::E, Self::M)> {
        self.corner_pullback(bottom, right)
    }

    fn pullback_m(&self, bottom: &Self::M, right: &Self::M) -> Result<(Self::M, Self::M)> {
        self.corner_pullback(bottom, right)
    }

    fn pullback_e(&self, bottom: &Self::E, right: &Self::E) -> Result<(Self::E, Self::E)> {
        self.corner_pullback(bottom, right)
    }

    fn star_m(&self, left: &Self::M, right: &Self::M) -> Result<StarMOf<Self>> {
        if left.dom != right.dom {
            return Err(Error::NotComposable);
        }
        let (bc_obj, bc_inc) = self
            .instance
            .complement(&left.dom, &left.cod, &left.fun)?;
        let (cc_obj, cc_inc) = self
            .instance
            .complement(&right.dom, &right.cod, &right.fun)?;
        let (mid, i_bc, i_a) = self.instance.coproduct(&bc_obj, &left.dom);
        let (apex, j_mid, j_cc) = self.instance.coproduct(&mid, &cc_obj);
        let into_left = |b: &Elem| -> Elem {
            let inner = match left.fun.invert_at(b) {
                Some(a) => i_a.apply(a).expect("total").clone(),
                None => {
                    let x = bc_inc.invert_at(b).expect("complement covers");
                    i_bc.apply(x).expect("total").clone()
                }
            };
            j_mid.apply(&inner).expect("total").clone()
        };
        let into_right = |c: &Elem| -> Elem {
            match right.fun.invert_at(c) {
                Some(a) => {
                    let inner = i_a.apply(a).expect("total").clone();
                    j_mid.apply(&inner).expect("total").clone()
                }
                None => {
                    let x = cc_inc.invert_at(c).expect("complement covers");
                    j_cc.apply(x).expect("total").clone()
                }
            }
        };
        let lf = Injection::new(SetFun::from_fn(
            left.cod.carrier().clone(),
            apex.carrier().clone(),
            into_left,
        )?)
        .expect("disjoint parts");
        let rf = Injection::new(SetFun::from_fn(
            right.cod.carrier().clone(),
            apex.carrier().clone(),
            into_right,
        )?)
        .expect("disjoint parts");
        Ok(Star {
            left: self.unchecked(left.cod.clone(), apex.clone(), lf),
            right: self.unchecked(right.cod.clone(), apex.clone(), rf),
            obj: apex,
        })
    }

    fn star_e(
        &self,
        left: &Self::E,
        right: &Self::E,
        witness: &ESqOf<Self>,
    ) -> Result<StarEOf<Self>> {
        if left.dom != right.dom {
            return Err(Error::NotComposable);
        }
        if !self.e_eq(&witness.top, left) || !self.e_eq(&witness.left, right) {
            return Err(Error::MalformedSquare("witness span mismatch".into()));
        }
        if !crate::cgw::ops::is_good_e(self, witness)? {
            return Err(Error::SquareNotGood);
        }
        let union = witness
            .right
            .fun
            .image()
            .union(&witness.bottom.fun.image());
        let apex = self.instance.restrict(&witness.right.cod, &union)?;
        let lf = Injection::new(witness.right.fun.fun().with_cod(union.clone())?)
            .expect("restriction of an injection");
        let rf = Injection::new(witness.bottom.fun.fun().with_cod(union)?)
            .expect("restriction of an injection");
        Ok(Star {
            left: self.unchecked(left.cod.clone(), apex.clone(), lf),
            right: self.unchecked(right.cod.clone(), apex.clone(), rf),
            obj: apex,
        })
    }

    fn star_mediate_m(&self, star: &StarMOf<Self>, sq: &MSqOf<Self>) -> Result<Self::M> {
        self.mediate(star, &sq.right, &sq.bottom)
    }

    fn star_mediate_e(&self, star: &StarEOf<Self>, sq: &ESqOf<Self>) -> Result<Self::E> {
        self.mediate(star, &sq.right, &sq.bottom)
    }

    fn induced_star_e(
        &self,
        src: &StarMOf<Self>,
        dst: &StarMOf<Self>,
        left_e: &Self::E,
        right_e: &Self::E,
    ) -> Result<Self::E> {
        if left_e.dom != src.left.dom
            || left_e.cod != dst.left.dom
            || right_e.dom != src.right.dom
            || right_e.cod != dst.right.dom
        {
            return Err(Error::MalformedSquare(
                "induced star arrow endpoints mismatch".into(),
            ));
        }
        let mut assign = std::collections::BTreeMap::new();
        for p in src.obj.carrier().iter() {
            let via_left = src
                .left
                .fun
                .invert_at(p)
                .and_then(|b| left_e.fun.apply(b))
                .and_then(|b2| dst.left.fun.apply(b2));
            let via_right = src
                .right
                .fun
                .invert_at(p)
                .and_then(|x| right_e.fun.apply(x))
                .and_then(|x2| dst.right.fun.apply(x2));
            let y = match (via_left, via_right) {
                (Some(l), Some(r)) if l != r => return Err(Error::SquareNotGood),
                (Some(l), _) => l.clone(),
                (None, Some(r)) => r.clone(),
                (None, None) => {
                    return Err(Error::MalformedSquare(
                        "star apex not covered by its legs".into(),
                    ))
                }
            };
            assign.insert(p.clone(), y);
        }
        let fun = SetFun::from_pairs(
            src.obj.carrier().clone(),
            dst.obj.carrier().clone(),
            &assign,
        )?;
        let fun = Injection::new(fun).map_err(|_| Error::SquareNotGood)?;
        if !self
            .instance
            .is_coproduct_inclusion(&src.obj, &dst.obj, fun.fun())
        {
            return Err(Error::SquareNotGood);
        }
        Ok(ExtMor {
            dom: src.obj.clone(),
            cod: dst.obj.clone(),
            fun,
        })
    }

    fn cok_extend_m(&self, first: &Self::M, second: &Self::M) -> Result<Self::M> {
        let composite = self.m_compose(second, first)?;
        let cok_first = self.cokernel(first);
        let cok_comp = self.cokernel(&composite);
        let fun = Injection::new(SetFun::from_fn(
            cok_first.dom.carrier().clone(),
            cok_comp.dom.carrier().clone(),
            |x| {
                let in_mid = cok_first.fun.apply(x).expect("total");
                second.fun.apply(in_mid).expect("total").clone()
            },
        )?)
        .expect("composite of injections");
        Ok(self.unchecked(cok_first.dom.clone(), cok_comp.dom.clone(), fun))
    }

    fn cok_restrict_e(&self, inner: &Self::M, outer: &Self::M) -> Result<Self::E> {
        let composite = self.m_compose(outer, inner)?;
        let cok_outer = self.cokernel(outer);
        let cok_comp = self.cokernel(&composite);
        let fun = Injection::new(SetFun::from_fn(
            cok_outer.dom.carrier().clone(),
            cok_comp.dom.carrier().clone(),
            |x| x.clone(),
        )?)
        .expect("literal subset");
        Ok(self.unchecked(cok_outer.dom.clone(), cok_comp.dom.clone(), fun))
    }

    fn trivial_extension(&self, a: &I::Obj, b: &I::Obj) -> Result<(Self::M, Self::E)> {
        let (apex, li, ri) = self.instance.coproduct(a, b);
        Ok((
            self.unchecked(a.clone(), apex.clone(), li),
            self.unchecked(b.clone(), apex, ri),
        ))
    }

    fn mixed_commutes(&self, sq: &super::traits::MixedOf<Self>) -> bool {
        sq.top.dom.carrier().iter().all(|x| {
            let down_then_across = sq
                .left
                .fun
                .apply(x)
                .and_then(|y| sq.bottom.fun.apply(y));
            let across_then_down = sq.top.fun.apply(x).and_then(|y| sq.right.fun.apply(y));
            down_then_across == across_then_down
        })
    }

    fn mixed_jointly_covers(&self, sq: &super::traits::MixedOf<Self>) -> bool {
        let covered = sq.bottom.fun.image().union(&sq.right.fun.image());
        covered == *sq.bottom.cod.carrier()
    }

    fn gen_obj(&self, rng: &mut Rng) -> I::Obj {
        self.instance.gen_obj(rng, self.max_size)
    }

    fn gen_sub_m(&self, rng: &mut Rng, cod: &I::Obj) -> Self::M {
        let sub = self.instance.gen_summand(rng, cod);
        let inc = Injection::inclusion(&sub, cod.carrier()).expect("subset");
        let dom = self.instance.restrict(cod, &sub).expect("summand");
        if rng.chance(1, 2) {
            // Compose with a relabeling so arrows are not always literal
            // inclusions.
            let bij = random_relabel_bijection(rng, &sub);
            let dom2 = self.instance.relabel(&dom, &bij).expect("bijection");
            let fun = Injection::compose(&inc, &bij.inverse().expect("bijection"))
                .expect("composable");
            return self.unchecked(dom2, cod.clone(), fun);
        }
        self.unchecked(dom, cod.clone(), inc)
    }

    fn gen_sub_e(&self, rng: &mut Rng, cod: &I::Obj) -> Self::E {
        self.gen_sub_m(rng, cod)
    }

    fn gen_sup_m(&self, rng: &mut Rng, dom: &I::Obj) -> Self::M {
        let room = self.max_size.saturating_sub(dom.carrier().len());
        let extension = self.instance.gen_obj(rng, room);
        let (apex, li, _) = self.instance.coproduct(dom, &extension);
        self.unchecked(dom.clone(), apex, li)
    }

    fn gen_sup_e(&self, rng: &mut Rng, dom: &I::Obj) -> Self::E {
        self.gen_sup_m(rng, dom)
    }

    fn gen_iso_m(&self, rng: &mut Rng, a: &I::Obj) -> Self::M {
        let bij = random_relabel_bijection(rng, a.carrier());
        let cod = self.instance.relabel(a, &bij).expect("bijection");
        self.unchecked(a.clone(), cod, bij)
    }

    fn enumerate_m(&self, dom: &I::Obj, cod: &I::Obj) -> Option<Vec<Self::M>> {
        let n = dom.carrier().len();
        let m = cod.carrier().len();
        if n > m {
            return Some(Vec::new());
        }
        // Bail out when the injection count gets out of hand.
        let mut count: u64 = 1;
        for k in 0..n {
            count = count.saturating_mul((m - k) as u64);
            if count > 2_500 {
                return None;
            }
        }
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; m];
        fn rec<I: ExtensiveInstance>(
            this: &ExtCgw<I>,
            dom: &I::Obj,
            cod: &I::Obj,
            chosen: &mut Vec<usize>,
            used: &mut [bool],
            out: &mut Vec<ExtMor<I::Obj>>,
        ) {
            let n = dom.carrier().len();
            if chosen.len() == n {
                let fun = SetFun::from_fn(
                    dom.carrier().clone(),
                    cod.carrier().clone(),
                    |x| {
                        let k = dom.carrier().index_of(x).expect("element");
                        cod.carrier().elems()[chosen[k]].clone()
                    },
                )
                .expect("lands in codomain");
                let fun = Injection::new(fun).expect("distinct images");
                if this
                    .instance
                    .is_coproduct_inclusion(dom, cod, fun.fun())
                {
                    out.push(ExtMor {
                        dom: dom.clone(),
                        cod: cod.clone(),
                        fun,
                    });
                }
                return;
            }
            for y in 0..used.len() {
                if !used[y] {
                    used[y] = true;
                    chosen.push(y);
                    rec(this, dom, cod, chosen, used, out);
                    chosen.pop();
                    used[y] = false;
                }
            }
        }
        rec(self, dom, cod, &mut chosen, &mut used, &mut out);
        Some(out)
    }
}
