//! Total maps and injections between finite sets, with the carrier-level
//! coproduct, pullback, and complement constructions.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::extcat::elem::{Elem, FinSetObj};

/// A total map between finite sets. The image of each domain element is
/// stored in domain order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFun {
    dom: FinSetObj,
    cod: FinSetObj,
    img: Vec<Elem>,
}

impl SetFun {
    /// Builds a map from an assignment table. Every domain element must be
    /// assigned, and every image must lie in the codomain.
    pub fn from_pairs(
        dom: FinSetObj,
        cod: FinSetObj,
        assign: &BTreeMap<Elem, Elem>,
    ) -> Result<Self> {
        let mut img = Vec::with_capacity(dom.len());
        for e in dom.iter() {
            let target = assign
                .get(e)
                .ok_or_else(|| Error::MissingAssignment(e.to_string()))?;
            if !cod.contains(target) {
                return Err(Error::NotInCodomain(target.to_string()));
            }
            img.push(target.clone());
        }
        Ok(SetFun { dom, cod, img })
    }

    /// Builds a map by evaluating `f` on each domain element.
    pub fn from_fn(
        dom: FinSetObj,
        cod: FinSetObj,
        f: impl Fn(&Elem) -> Elem,
    ) -> Result<Self> {
        let mut img = Vec::with_capacity(dom.len());
        for e in dom.iter() {
            let target = f(e);
            if !cod.contains(&target) {
                return Err(Error::NotInCodomain(target.to_string()));
            }
            img.push(target);
        }
        Ok(SetFun { dom, cod, img })
    }

    pub fn identity(a: &FinSetObj) -> Self {
        SetFun {
            dom: a.clone(),
            cod: a.clone(),
            img: a.elems().to_vec(),
        }
    }

    /// The unique map out of the empty set.
    pub fn from_empty(cod: &FinSetObj) -> Self {
        SetFun {
            dom: FinSetObj::empty(),
            cod: cod.clone(),
            img: Vec::new(),
        }
    }

    /// The inclusion of a subset into its ambient set.
    pub fn inclusion(sub: &FinSetObj, ambient: &FinSetObj) -> Result<Self> {
        if !sub.is_subset_of(ambient) {
            return Err(Error::NotInCodomain(format!("{sub:?} into {ambient:?}")));
        }
        Ok(SetFun {
            dom: sub.clone(),
            cod: ambient.clone(),
            img: sub.elems().to_vec(),
        })
    }

    pub fn dom(&self) -> &FinSetObj {
        &self.dom
    }

    pub fn cod(&self) -> &FinSetObj {
        &self.cod
    }

    pub fn apply(&self, e: &Elem) -> Option<&Elem> {
        self.dom.index_of(e).map(|k| &self.img[k])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Elem, &Elem)> {
        self.dom.iter().zip(self.img.iter())
    }

    pub fn image(&self) -> FinSetObj {
        self.img.iter().cloned().collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.img.len()
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.dom.elems() == self.img.as_slice()
    }

    /// Composition `g ∘ f`.
    pub fn compose(g: &SetFun, f: &SetFun) -> Result<SetFun> {
        if f.cod != g.dom {
            return Err(Error::NotComposable);
        }
        let img = f
            .img
            .iter()
            .map(|e| g.apply(e).expect("codomain matches").clone())
            .collect();
        Ok(SetFun {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            img,
        })
    }

    /// Restricts the map to a subset of its domain.
    pub fn restrict(&self, sub: &FinSetObj) -> Result<SetFun> {
        if !sub.is_subset_of(&self.dom) {
            return Err(Error::MissingAssignment(format!("{sub:?}")));
        }
        let img = sub
            .iter()
            .map(|e| self.apply(e).expect("subset of domain").clone())
            .collect();
        Ok(SetFun {
            dom: sub.clone(),
            cod: self.cod.clone(),
            img,
        })
    }

    /// Replaces the codomain by a superset-compatible set containing the
    /// image (used to corestrict onto unions and subobjects).
    pub fn with_cod(&self, cod: FinSetObj) -> Result<SetFun> {
        if !self.image().is_subset_of(&cod) {
            return Err(Error::NotInCodomain(format!("{:?}", self.image())));
        }
        Ok(SetFun {
            dom: self.dom.clone(),
            cod,
            img: self.img.clone(),
        })
    }

    pub fn preimage(&self, target: &FinSetObj) -> FinSetObj {
        self.dom
            .iter()
            .zip(self.img.iter())
            .filter(|(_, y)| target.contains(y))
            .map(|(x, _)| x.clone())
            .collect()
    }
}

impl fmt::Debug for SetFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (x, y)) in self.pairs().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}>{y}")?;
        }
        write!(f, "]: {:?}->{:?}", self.dom, self.cod)
    }
}

/// An injective map. Injections house both arrow roles of the double
/// category of finite sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Injection(SetFun);

impl Injection {
    pub fn new(f: SetFun) -> Result<Self> {
        if !f.is_injective() {
            return Err(Error::NotInjective);
        }
        Ok(Injection(f))
    }

    pub fn identity(a: &FinSetObj) -> Self {
        Injection(SetFun::identity(a))
    }

    pub fn from_empty(cod: &FinSetObj) -> Self {
        Injection(SetFun::from_empty(cod))
    }

    pub fn inclusion(sub: &FinSetObj, ambient: &FinSetObj) -> Result<Self> {
        Ok(Injection(SetFun::inclusion(sub, ambient)?))
    }

    pub fn fun(&self) -> &SetFun {
        &self.0
    }

    pub fn into_fun(self) -> SetFun {
        self.0
    }

    pub fn dom(&self) -> &FinSetObj {
        self.0.dom()
    }

    pub fn cod(&self) -> &FinSetObj {
        self.0.cod()
    }

    pub fn apply(&self, e: &Elem) -> Option<&Elem> {
        self.0.apply(e)
    }

    pub fn image(&self) -> FinSetObj {
        self.0.image()
    }

    /// The unique preimage of a codomain element, if any.
    pub fn invert_at(&self, y: &Elem) -> Option<&Elem> {
        self.0
            .pairs()
            .find_map(|(x, fy)| if fy == y { Some(x) } else { None })
    }

    pub fn compose(g: &Injection, f: &Injection) -> Result<Injection> {
        Ok(Injection(SetFun::compose(&g.0, &f.0)?))
    }

    pub fn is_iso(&self) -> bool {
        self.0.dom.len() == self.0.cod.len()
    }

    pub fn inverse(&self) -> Result<Injection> {
        if !self.is_iso() {
            return Err(Error::NotIso);
        }
        let f = SetFun::from_fn(self.0.cod.clone(), self.0.dom.clone(), |y| {
            self.invert_at(y).expect("bijection").clone()
        })?;
        Ok(Injection(f))
    }

    pub fn with_cod(&self, cod: FinSetObj) -> Result<Injection> {
        Ok(Injection(self.0.with_cod(cod)?))
    }

    pub fn restrict(&self, sub: &FinSetObj) -> Result<Injection> {
        Ok(Injection(self.0.restrict(sub)?))
    }
}

impl fmt::Debug for Injection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

/// Carrier-level coproduct. Elements are tagged `L.<t>` / `R.<t>` and then
/// relabeled into the canonical namespace `0..n-1` following the tagged
/// order, so nested coproducts normalize to identical carriers.
pub fn coproduct(a: &FinSetObj, b: &FinSetObj) -> (FinSetObj, Injection, Injection) {
    let mut tagged: Vec<(Elem, bool, Elem)> = Vec::with_capacity(a.len() + b.len());
    for e in a.iter() {
        tagged.push((Elem::new(format!("L.{e}")), false, e.clone()));
    }
    for e in b.iter() {
        tagged.push((Elem::new(format!("R.{e}")), true, e.clone()));
    }
    tagged.sort_by(|x, y| x.0.cmp(&y.0));
    let carrier = FinSetObj::canonical(tagged.len());
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for (k, (_, is_right, orig)) in tagged.into_iter().enumerate() {
        let fresh = Elem::new(k.to_string());
        if is_right {
            right.insert(orig, fresh);
        } else {
            left.insert(orig, fresh);
        }
    }
    let li = Injection::new(
        SetFun::from_pairs(a.clone(), carrier.clone(), &left).expect("total by construction"),
    )
    .expect("tagging forces injectivity");
    let ri = Injection::new(
        SetFun::from_pairs(b.clone(), carrier.clone(), &right).expect("total by construction"),
    )
    .expect("tagging forces injectivity");
    (carrier, li, ri)
}

/// Carrier-level pullback of a cospan `f : A -> C <- B : g`. The carrier
/// canonically represents the pairs `(a, b)` with `f(a) = g(b)`.
pub fn pullback(f: &SetFun, g: &SetFun) -> Result<(FinSetObj, SetFun, SetFun)> {
    if f.cod() != g.cod() {
        return Err(Error::NotComposable);
    }
    let mut tokens = Vec::new();
    let mut to_a = BTreeMap::new();
    let mut to_b = BTreeMap::new();
    for (a, fa) in f.pairs() {
        for (b, gb) in g.pairs() {
            if fa == gb {
                let t = Elem::new(format!("({a},{b})"));
                to_a.insert(t.clone(), a.clone());
                to_b.insert(t.clone(), b.clone());
                tokens.push(t);
            }
        }
    }
    let carrier = FinSetObj::new(tokens)?;
    let pa = SetFun::from_pairs(carrier.clone(), f.dom().clone(), &to_a)?;
    let pb = SetFun::from_pairs(carrier.clone(), g.dom().clone(), &to_b)?;
    Ok((carrier, pa, pb))
}

/// The inclusion of the complement of an injection's image.
pub fn complement_inclusion(i: &Injection) -> Injection {
    let rest = i.cod().difference(&i.image());
    Injection::inclusion(&rest, i.cod()).expect("complement is a subset")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(tokens: &[&str]) -> FinSetObj {
        FinSetObj::new(tokens.iter().copied()).unwrap()
    }

    #[test]
    fn identity_composes_as_unit() {
        let a = set(&["a", "b"]);
        let c = set(&["x"]);
        let f = SetFun::from_fn(a.clone(), c.clone(), |_| Elem::new("x")).unwrap();
        let left = SetFun::compose(&f, &SetFun::identity(&a)).unwrap();
        let right = SetFun::compose(&SetFun::identity(&c), &f).unwrap();
        assert_eq!(left, f);
        assert_eq!(right, f);
    }

    #[test]
    fn singleton_chase() {
        // f:{a}->{x}, g:{x}->{p,q} with x↦p gives a↦p.
        let f = SetFun::from_fn(set(&["a"]), set(&["x"]), |_| Elem::new("x")).unwrap();
        let g = SetFun::from_fn(set(&["x"]), set(&["p", "q"]), |_| Elem::new("p")).unwrap();
        let gf = SetFun::compose(&g, &f).unwrap();
        assert_eq!(gf.apply(&Elem::new("a")), Some(&Elem::new("p")));
    }

    #[test]
    fn compose_mismatch_rejected() {
        let f = SetFun::identity(&set(&["a"]));
        let g = SetFun::identity(&set(&["b"]));
        assert_eq!(SetFun::compose(&g, &f), Err(Error::NotComposable));
    }

    #[test]
    fn coproduct_of_equal_singletons_is_disjoint() {
        let a = set(&["a"]);
        let (carrier, li, ri) = coproduct(&a, &a);
        assert_eq!(carrier.len(), 2);
        assert!(li.image().is_disjoint_from(&ri.image()));
    }

    #[test]
    fn coproduct_with_empty_is_iso() {
        let b = set(&["x", "y"]);
        let (carrier, _, ri) = coproduct(&FinSetObj::empty(), &b);
        assert_eq!(carrier.len(), 2);
        assert!(ri.is_iso());
    }

    #[test]
    fn nested_coproducts_share_carriers() {
        let a = set(&["a"]);
        let b = set(&["b", "c"]);
        let c = set(&["d"]);
        let (ab, _, _) = coproduct(&a, &b);
        let (left_first, _, _) = coproduct(&ab, &c);
        let (bc, _, _) = coproduct(&b, &c);
        let (right_first, _, _) = coproduct(&a, &bc);
        assert_eq!(left_first, right_first);
    }

    #[test]
    fn pullback_of_identities_is_diagonal() {
        let c = set(&["1", "2"]);
        let id = SetFun::identity(&c);
        let (p, pa, pb) = pullback(&id, &id).unwrap();
        assert_eq!(p.len(), 2);
        assert!(Injection::new(pa).unwrap().is_iso());
        assert!(Injection::new(pb).unwrap().is_iso());
    }

    #[test]
    fn pullback_of_overlapping_inclusions() {
        // {1,2} and {2,3} inside {1,2,3} meet in one element over 2.
        let amb = set(&["1", "2", "3"]);
        let f = SetFun::inclusion(&set(&["1", "2"]), &amb).unwrap();
        let g = SetFun::inclusion(&set(&["2", "3"]), &amb).unwrap();
        let (p, pa, _) = pullback(&f, &g).unwrap();
        assert_eq!(p.len(), 1);
        let witness = p.iter().next().unwrap();
        assert_eq!(pa.apply(witness), Some(&Elem::new("2")));
    }

    #[test]
    fn complement_is_set_difference() {
        let amb = set(&["1", "2", "3"]);
        let i = Injection::inclusion(&set(&["1", "2"]), &amb).unwrap();
        let c = complement_inclusion(&i);
        assert_eq!(c.dom(), &set(&["3"]));
        assert!(c.image().is_disjoint_from(&i.image()));
        assert_eq!(c.image().union(&i.image()), amb);
    }

    #[test]
    fn double_complement_recovers_image() {
        let amb = set(&["1", "2", "3", "4"]);
        let i = Injection::inclusion(&set(&["2", "4"]), &amb).unwrap();
        let cc = complement_inclusion(&complement_inclusion(&i));
        assert_eq!(cc.image(), i.image());
    }
}
