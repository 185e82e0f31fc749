//! The abstract extensive-category interface consumed by every other module,
//! with its two shipped models: finite sets and finite sets with a monoid
//! action.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extcat::elem::{Elem, FinSetObj};
use crate::extcat::fun::{self, Injection, SetFun};
use crate::extcat::mset::{MActionSet, Monoid};
use crate::rng::Rng;

/// Objects that expose an underlying finite set of tokens.
pub trait Carrier {
    fn carrier(&self) -> &FinSetObj;
}

impl Carrier for FinSetObj {
    fn carrier(&self) -> &FinSetObj {
        self
    }
}

impl Carrier for MActionSet {
    fn carrier(&self) -> &FinSetObj {
        MActionSet::carrier(self)
    }
}

/// A model of an extensive category: finite coproducts whose inclusions are
/// complemented, pullbacks of arbitrary cospans, and an isomorphism test.
/// Morphisms are carrier-level maps; instance methods take the endpoint
/// objects where extra structure (such as an action) must be consulted.
pub trait ExtensiveInstance: fmt::Debug + Sync {
    type Obj: Carrier + Clone + PartialEq + Eq + fmt::Debug + Send + Sync;

    fn initial(&self) -> Self::Obj;

    /// Whether `f` is a morphism of the instance between the given objects.
    fn is_map(&self, dom: &Self::Obj, cod: &Self::Obj, f: &SetFun) -> bool;

    /// The coproduct-inclusion predicate classifying the arrows that carry
    /// the two roles of the double category.
    fn is_coproduct_inclusion(&self, dom: &Self::Obj, cod: &Self::Obj, f: &SetFun) -> bool;

    fn coproduct(&self, a: &Self::Obj, b: &Self::Obj) -> (Self::Obj, Injection, Injection);

    /// Pullback of the cospan `f : A -> C <- B : g`.
    fn pullback(
        &self,
        a: &Self::Obj,
        b: &Self::Obj,
        c: &Self::Obj,
        f: &SetFun,
        g: &SetFun,
    ) -> Result<(Self::Obj, SetFun, SetFun)>;

    /// The complement of a coproduct inclusion, as an object together with
    /// its inclusion into the codomain.
    fn complement(
        &self,
        dom: &Self::Obj,
        cod: &Self::Obj,
        inc: &Injection,
    ) -> Result<(Self::Obj, Injection)>;

    /// The subobject on a carrier subset, when the subset supports one.
    fn restrict(&self, obj: &Self::Obj, sub: &FinSetObj) -> Result<Self::Obj>;

    /// Transports an object along a carrier bijection onto fresh tokens.
    fn relabel(&self, obj: &Self::Obj, bij: &Injection) -> Result<Self::Obj>;

    fn iso(&self, a: &Self::Obj, b: &Self::Obj) -> bool;

    fn describe(&self, a: &Self::Obj) -> String;

    /// The minimal complemented summands of an object: subsets supporting a
    /// coproduct inclusion are exactly the unions of these.
    fn components(&self, obj: &Self::Obj) -> Vec<FinSetObj>;

    // --- randomized generation -------------------------------------------

    /// A random object on at most `max_size` carrier elements.
    fn gen_obj(&self, rng: &mut Rng, max_size: usize) -> Self::Obj;

    /// A random carrier subset supporting a subobject that is a coproduct
    /// inclusion (for sets: any subset; for action sets: a component union).
    fn gen_summand(&self, rng: &mut Rng, obj: &Self::Obj) -> FinSetObj {
        let mut out = FinSetObj::empty();
        for c in self.components(obj) {
            if rng.chance(1, 2) {
                out = out.union(&c);
            }
        }
        out
    }

    /// The smallest complemented summand containing `sub`.
    fn summand_closure(&self, obj: &Self::Obj, sub: &FinSetObj) -> FinSetObj {
        let mut out = FinSetObj::empty();
        for c in self.components(obj) {
            if !c.is_disjoint_from(sub) {
                out = out.union(&c);
            }
        }
        out
    }

    /// A random morphism `dom -> cod` of the instance, when one exists.
    fn gen_map(&self, rng: &mut Rng, dom: &Self::Obj, cod: &Self::Obj) -> Option<SetFun>;

    /// A random injection probe for the complement-refusal audit: valid as a
    /// morphism of the instance, but not necessarily a coproduct inclusion.
    fn gen_inclusion_probe(
        &self,
        rng: &mut Rng,
        max_size: usize,
    ) -> (Self::Obj, Self::Obj, Injection);
}

impl<I: ExtensiveInstance> ExtensiveInstance for &I {
    type Obj = I::Obj;

    fn initial(&self) -> Self::Obj {
        (**self).initial()
    }

    fn is_map(&self, dom: &Self::Obj, cod: &Self::Obj, f: &SetFun) -> bool {
        (**self).is_map(dom, cod, f)
    }

    fn is_coproduct_inclusion(&self, dom: &Self::Obj, cod: &Self::Obj, f: &SetFun) -> bool {
        (**self).is_coproduct_inclusion(dom, cod, f)
    }

    fn coproduct(&self, a: &Self::Obj, b: &Self::Obj) -> (Self::Obj, Injection, Injection) {
        (**self).coproduct(a, b)
    }

    fn pullback(
        &self,
        a: &Self::Obj,
        b: &Self::Obj,
        c: &Self::Obj,
        f: &SetFun,
        g: &SetFun,
    ) -> Result<(Self::Obj, SetFun, SetFun)> {
        (**self).pullback(a, b, c, f, g)
    }

    fn complement(
        &self,
        dom: &Self::Obj,
        cod: &Self::Obj,
        inc: &Injection,
    ) -> Result<(Self::Obj, Injection)> {
        (**self).complement(dom, cod, inc)
    }

    fn restrict(&self, obj: &Self::Obj, sub: &FinSetObj) -> Result<Self::Obj> {
        (**self).restrict(obj, sub)
    }

    fn relabel(&self, obj: &Self::Obj, bij: &Injection) -> Result<Self::Obj> {
        (**self).relabel(obj, bij)
    }

    fn iso(&self, a: &Self::Obj, b: &Self::Obj) -> bool {
        (**self).iso(a, b)
    }

    fn describe(&self, a: &Self::Obj) -> String {
        (**self).describe(a)
    }

    fn components(&self, obj: &Self::Obj) -> Vec<FinSetObj> {
        (**self).components(obj)
    }

    fn gen_obj(&self, rng: &mut Rng, max_size: usize) -> Self::Obj {
        (**self).gen_obj(rng, max_size)
    }

    fn gen_summand(&self, rng: &mut Rng, obj: &Self::Obj) -> FinSetObj {
        (**self).gen_summand(rng, obj)
    }

    fn gen_map(&self, rng: &mut Rng, dom: &Self::Obj, cod: &Self::Obj) -> Option<SetFun> {
        (**self).gen_map(rng, dom, cod)
    }

    fn gen_inclusion_probe(
        &self,
        rng: &mut Rng,
        max_size: usize,
    ) -> (Self::Obj, Self::Obj, Injection) {
        (**self).gen_inclusion_probe(rng, max_size)
    }
}

fn fresh_tokens(rng: &mut Rng, count: usize, avoid: &FinSetObj) -> Vec<Elem> {
    const LETTERS: &str = "abcdefghijklmnopqrstuvwxyz";
    let mut out = Vec::with_capacity(count);
    let mut taken = avoid.clone();
    let mut salt = 0usize;
    while out.len() < count {
        let k = rng.below(26);
        let base = &LETTERS[k..k + 1];
        let tok = if salt == 0 {
            Elem::new(base)
        } else {
            Elem::new(format!("{base}{salt}"))
        };
        if !taken.contains(&tok) {
            taken = taken.union(&FinSetObj::new([tok.clone()]).expect("fresh"));
            out.push(tok);
        } else {
            salt += 1;
        }
    }
    out
}

/// Random bijection from `obj`'s carrier onto fresh tokens.
pub fn random_relabel_bijection(rng: &mut Rng, carrier: &FinSetObj) -> Injection {
    let mut fresh = fresh_tokens(rng, carrier.len(), carrier);
    rng.shuffle(&mut fresh);
    let cod: FinSetObj = fresh.iter().cloned().collect();
    let assign: BTreeMap<Elem, Elem> = carrier
        .iter()
        .cloned()
        .zip(fresh.into_iter())
        .collect();
    Injection::new(SetFun::from_pairs(carrier.clone(), cod, &assign).expect("total"))
        .expect("bijective")
}

/// The category of finite sets. Every injection is a coproduct inclusion.
#[derive(Debug, Clone, Default)]
pub struct FinSetInstance;

impl ExtensiveInstance for FinSetInstance {
    type Obj = FinSetObj;

    fn initial(&self) -> FinSetObj {
        FinSetObj::empty()
    }

    fn is_map(&self, dom: &FinSetObj, cod: &FinSetObj, f: &SetFun) -> bool {
        f.dom() == dom && f.cod() == cod
    }

    fn is_coproduct_inclusion(&self, dom: &FinSetObj, cod: &FinSetObj, f: &SetFun) -> bool {
        self.is_map(dom, cod, f) && f.is_injective()
    }

    fn coproduct(&self, a: &FinSetObj, b: &FinSetObj) -> (FinSetObj, Injection, Injection) {
        fun::coproduct(a, b)
    }

    fn pullback(
        &self,
        a: &FinSetObj,
        b: &FinSetObj,
        c: &FinSetObj,
        f: &SetFun,
        g: &SetFun,
    ) -> Result<(FinSetObj, SetFun, SetFun)> {
        if !self.is_map(a, c, f) || !self.is_map(b, c, g) {
            return Err(Error::NotComposable);
        }
        fun::pullback(f, g)
    }

    fn complement(
        &self,
        dom: &FinSetObj,
        cod: &FinSetObj,
        inc: &Injection,
    ) -> Result<(FinSetObj, Injection)> {
        if !self.is_coproduct_inclusion(dom, cod, inc.fun()) {
            return Err(Error::NotCoproductInclusion);
        }
        let c = fun::complement_inclusion(inc);
        Ok((c.dom().clone(), c))
    }

    fn restrict(&self, obj: &FinSetObj, sub: &FinSetObj) -> Result<FinSetObj> {
        if !sub.is_subset_of(obj) {
            return Err(Error::MissingAssignment(format!("{sub:?}")));
        }
        Ok(sub.clone())
    }

    fn relabel(&self, obj: &FinSetObj, bij: &Injection) -> Result<FinSetObj> {
        if bij.dom() != obj || !bij.is_iso() {
            return Err(Error::NotIso);
        }
        Ok(bij.cod().clone())
    }

    fn iso(&self, a: &FinSetObj, b: &FinSetObj) -> bool {
        a.len() == b.len()
    }

    fn describe(&self, a: &FinSetObj) -> String {
        format!("{a:?}")
    }

    fn components(&self, obj: &FinSetObj) -> Vec<FinSetObj> {
        obj.iter()
            .map(|e| FinSetObj::new([e.clone()]).expect("singleton"))
            .collect()
    }

    fn gen_obj(&self, rng: &mut Rng, max_size: usize) -> FinSetObj {
        let size = rng.below(max_size + 1);
        fresh_tokens(rng, size, &FinSetObj::empty())
            .into_iter()
            .collect()
    }

    fn gen_summand(&self, rng: &mut Rng, obj: &FinSetObj) -> FinSetObj {
        rng.subset(obj.len())
            .into_iter()
            .map(|k| obj.elems()[k].clone())
            .collect()
    }

    fn gen_map(&self, rng: &mut Rng, dom: &FinSetObj, cod: &FinSetObj) -> Option<SetFun> {
        if cod.is_empty() {
            return dom.is_empty().then(|| SetFun::from_empty(cod));
        }
        let img: BTreeMap<Elem, Elem> = dom
            .iter()
            .map(|e| (e.clone(), cod.elems()[rng.below(cod.len())].clone()))
            .collect();
        Some(SetFun::from_pairs(dom.clone(), cod.clone(), &img).expect("targets in codomain"))
    }

    fn gen_inclusion_probe(
        &self,
        rng: &mut Rng,
        max_size: usize,
    ) -> (FinSetObj, FinSetObj, Injection) {
        let cod = self.gen_obj(rng, max_size);
        let sub = self.gen_summand(rng, &cod);
        let inc = Injection::inclusion(&sub, &cod).expect("subset");
        (sub, cod, inc)
    }
}

/// Finite sets with an action of a fixed finite monoid. The m- and
/// e-morphisms are the coproduct inclusions: equivariant injections whose
/// image complement is closed under the action.
#[derive(Clone)]
pub struct MSetInstance {
    monoid: Arc<Monoid>,
}

impl fmt::Debug for MSetInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MSetInstance(|M|={})", self.monoid.size())
    }
}

impl MSetInstance {
    pub fn new(monoid: Arc<Monoid>) -> Self {
        MSetInstance { monoid }
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }
}

impl ExtensiveInstance for MSetInstance {
    type Obj = MActionSet;

    fn initial(&self) -> MActionSet {
        MActionSet::empty(self.monoid.clone())
    }

    fn is_map(&self, dom: &MActionSet, cod: &MActionSet, f: &SetFun) -> bool {
        f.dom() == dom.carrier() && f.cod() == cod.carrier() && dom.is_equivariant(f, cod)
    }

    fn is_coproduct_inclusion(&self, dom: &MActionSet, cod: &MActionSet, f: &SetFun) -> bool {
        if !self.is_map(dom, cod, f) || !f.is_injective() {
            return false;
        }
        // Equivariance already forces the image to be closed; the inclusion
        // is complemented exactly when the rest of the carrier is closed too.
        cod.is_closed(&f.cod().difference(&f.image()))
    }

    fn coproduct(&self, a: &MActionSet, b: &MActionSet) -> (MActionSet, Injection, Injection) {
        let (carrier, li, ri) = fun::coproduct(a.carrier(), b.carrier());
        let obj = MActionSet::new(self.monoid.clone(), carrier, |g, e| {
            if let Some(x) = li.invert_at(e) {
                li.apply(a.act(g, x)).expect("total").clone()
            } else {
                let x = ri.invert_at(e).expect("coproduct covers");
                ri.apply(b.act(g, x)).expect("total").clone()
            }
        })
        .expect("componentwise action is compatible");
        (obj, li, ri)
    }

    fn pullback(
        &self,
        a: &MActionSet,
        b: &MActionSet,
        c: &MActionSet,
        f: &SetFun,
        g: &SetFun,
    ) -> Result<(MActionSet, SetFun, SetFun)> {
        if !self.is_map(a, c, f) || !self.is_map(b, c, g) {
            return Err(Error::NotComposable);
        }
        let (carrier, pa, pb) = fun::pullback(f, g)?;
        let obj = MActionSet::new(self.monoid.clone(), carrier, |h, e| {
            let x = pa.apply(e).expect("total");
            let y = pb.apply(e).expect("total");
            Elem::new(format!("({},{})", a.act(h, x), b.act(h, y)))
        })
        .map_err(|_| Error::MalformedAction("pullback action escapes carrier".into()))?;
        Ok((obj, pa, pb))
    }

    fn complement(
        &self,
        dom: &MActionSet,
        cod: &MActionSet,
        inc: &Injection,
    ) -> Result<(MActionSet, Injection)> {
        if !self.is_coproduct_inclusion(dom, cod, inc.fun()) {
            return Err(Error::NotCoproductInclusion);
        }
        let rest = inc.cod().difference(&inc.image());
        let obj = cod.restrict(&rest)?;
        Ok((obj, Injection::inclusion(&rest, inc.cod()).expect("subset")))
    }

    fn restrict(&self, obj: &MActionSet, sub: &FinSetObj) -> Result<MActionSet> {
        obj.restrict(sub)
    }

    fn relabel(&self, obj: &MActionSet, bij: &Injection) -> Result<MActionSet> {
        if bij.dom() != obj.carrier() || !bij.is_iso() {
            return Err(Error::NotIso);
        }
        obj.relabel(|e| bij.apply(e).expect("total").clone())
    }

    fn iso(&self, a: &MActionSet, b: &MActionSet) -> bool {
        a.is_isomorphic(b)
    }

    fn describe(&self, a: &MActionSet) -> String {
        format!("{a:?}")
    }

    fn components(&self, obj: &MActionSet) -> Vec<FinSetObj> {
        obj.components()
    }

    fn gen_obj(&self, rng: &mut Rng, max_size: usize) -> MActionSet {
        MActionSet::random(&self.monoid, rng, max_size)
    }

    fn gen_map(&self, rng: &mut Rng, dom: &MActionSet, cod: &MActionSet) -> Option<SetFun> {
        if cod.carrier().is_empty() {
            return dom
                .carrier()
                .is_empty()
                .then(|| SetFun::from_empty(cod.carrier()));
        }
        // Pick images for unassigned elements and propagate equivariance;
        // retry on conflicts.
        'attempt: for _ in 0..20 {
            let mut assign: BTreeMap<Elem, Elem> = BTreeMap::new();
            for x in dom.carrier().iter() {
                if assign.contains_key(x) {
                    continue;
                }
                let y = cod.carrier().elems()[rng.below(cod.carrier().len())].clone();
                let mut queue = vec![(x.clone(), y)];
                while let Some((px, py)) = queue.pop() {
                    match assign.get(&px) {
                        Some(existing) if *existing != py => continue 'attempt,
                        Some(_) => continue,
                        None => {
                            assign.insert(px.clone(), py.clone());
                            for g in 0..self.monoid.size() {
                                queue.push((dom.act(g, &px).clone(), cod.act(g, &py).clone()));
                            }
                        }
                    }
                }
            }
            let fun = SetFun::from_pairs(dom.carrier().clone(), cod.carrier().clone(), &assign)
                .expect("assignment total");
            if self.is_map(dom, cod, &fun) {
                return Some(fun);
            }
        }
        None
    }

    fn gen_inclusion_probe(
        &self,
        rng: &mut Rng,
        max_size: usize,
    ) -> (MActionSet, MActionSet, Injection) {
        let cod = self.gen_obj(rng, max_size);
        // Forward closure of a random seed subset: always a sub-action-set,
        // not always complemented.
        let mut sub = self.gen_summand(rng, &cod);
        if rng.chance(2, 3) {
            let seed: FinSetObj = rng
                .subset(cod.carrier().len())
                .into_iter()
                .map(|k| cod.carrier().elems()[k].clone())
                .collect();
            let mut closure = seed;
            loop {
                let mut next = closure.clone();
                for e in closure.iter() {
                    for g in 0..self.monoid.size() {
                        next = next.union(&FinSetObj::new([cod.act(g, e).clone()]).expect("one"));
                    }
                }
                if next == closure {
                    break;
                }
                closure = next;
            }
            sub = closure;
        }
        let dom = cod.restrict(&sub).expect("forward closure is closed");
        let inc = Injection::inclusion(&sub, cod.carrier()).expect("subset");
        (dom, cod, inc)
    }
}

/// Module-level convenience wrappers mirroring the primitive operation set.
pub fn compose(g: &SetFun, f: &SetFun) -> Result<SetFun> {
    SetFun::compose(g, f)
}

pub fn is_coproduct_inclusion<I: ExtensiveInstance>(
    instance: &I,
    dom: &I::Obj,
    cod: &I::Obj,
    f: &SetFun,
) -> bool {
    instance.is_coproduct_inclusion(dom, cod, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(tokens: &[&str]) -> FinSetObj {
        FinSetObj::new(tokens.iter().copied()).unwrap()
    }

    #[test]
    fn finset_every_injection_included() {
        let inst = FinSetInstance;
        let dom = set(&["a"]);
        let cod = set(&["a", "b"]);
        let inc = Injection::inclusion(&dom, &cod).unwrap();
        assert!(inst.is_coproduct_inclusion(&dom, &cod, inc.fun()));
        let collapse =
            SetFun::from_fn(set(&["a", "b"]), set(&["x"]), |_| Elem::new("x")).unwrap();
        assert!(!inst.is_coproduct_inclusion(&set(&["a", "b"]), &set(&["x"]), &collapse));
    }

    #[test]
    fn finset_coproduct_pullback_is_initial() {
        let inst = FinSetInstance;
        let a = set(&["p", "q", "r"]);
        let b = set(&["w", "x", "y", "z"]);
        let (c, li, ri) = inst.coproduct(&a, &b);
        assert_eq!(c.len(), 7);
        let (p, _, _) = inst
            .pullback(&a, &b, &c, li.fun(), ri.fun())
            .unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn map_into_coproduct_decomposes() {
        // Pulling any map X -> A ⊔ B back along the inclusions splits X.
        let inst = FinSetInstance;
        let a = set(&["a1", "a2"]);
        let b = set(&["b1"]);
        let (c, li, ri) = inst.coproduct(&a, &b);
        let x = set(&["u", "v", "w"]);
        let f = SetFun::from_fn(x.clone(), c.clone(), |e| {
            if e == &Elem::new("u") {
                li.apply(&Elem::new("a1")).unwrap().clone()
            } else {
                ri.apply(&Elem::new("b1")).unwrap().clone()
            }
        })
        .unwrap();
        let (y, ya, _) = inst.pullback(&x, &a, &c, &f, li.fun()).unwrap();
        let (z, za, _) = inst.pullback(&x, &b, &c, &f, ri.fun()).unwrap();
        assert_eq!(y.len() + z.len(), x.len());
        let back_y = SetFun::compose(&SetFun::identity(&x), &ya).unwrap();
        let back_z = SetFun::compose(&SetFun::identity(&x), &za).unwrap();
        assert!(back_y.image().is_disjoint_from(&back_z.image()));
        assert_eq!(back_y.image().union(&back_z.image()), x);
    }

    #[test]
    fn mset_coproduct_inclusion_requires_closed_complement() {
        // m·x = y: {y} is a sub-action-set but not a coproduct inclusion,
        // because its complement {x} is not closed.
        let inst = MSetInstance::new(Monoid::idempotent_pair());
        let cod = MActionSet::new(
            inst.monoid().clone(),
            set(&["x", "y"]),
            |g, e| {
                if g == 1 {
                    Elem::new("y")
                } else {
                    e.clone()
                }
            },
        )
        .unwrap();
        let sub_y = cod.restrict(&set(&["y"])).unwrap();
        let inc_y = Injection::inclusion(&set(&["y"]), &set(&["x", "y"])).unwrap();
        assert!(!inst.is_coproduct_inclusion(&sub_y, &cod, inc_y.fun()));
        assert_eq!(
            inst.complement(&sub_y, &cod, &inc_y),
            Err(Error::NotCoproductInclusion)
        );

        // {x} is not even equivariant for any action on a singleton.
        let singleton_x = MActionSet::new(inst.monoid().clone(), set(&["x"]), |_, e| e.clone())
            .unwrap();
        let inc_x = Injection::inclusion(&set(&["x"]), &set(&["x", "y"])).unwrap();
        assert!(!inst.is_coproduct_inclusion(&singleton_x, &cod, inc_x.fun()));
    }

    #[test]
    fn mset_trivial_action_inclusions_are_complemented() {
        let inst = MSetInstance::new(Monoid::idempotent_pair());
        let cod = MActionSet::new(inst.monoid().clone(), set(&["x", "y"]), |_, e| e.clone())
            .unwrap();
        let sub = cod.restrict(&set(&["y"])).unwrap();
        let inc = Injection::inclusion(&set(&["y"]), &set(&["x", "y"])).unwrap();
        assert!(inst.is_coproduct_inclusion(&sub, &cod, inc.fun()));
        let (comp, _) = inst.complement(&sub, &cod, &inc).unwrap();
        assert_eq!(comp.carrier(), &set(&["x"]));
    }
}
