//! Chain complexes over an extensive instance, stored on explicit finite
//! windows with partial-function differentials.
//!
//! A complex holds, for every degree `i` in its window, a degree object
//! `X_i`, an image subobject `X̄_i ⊆ X_i`, and a total map
//! `d_i : X̄_i → X_{i-1}`; everything outside the window is the initial
//! object. The chain condition demands that consecutive differentials miss
//! each other: the image of `d_{i+1}` avoids `X̄_i`.

use std::fmt;

use crate::error::{Error, Result};
use crate::extcat::{Carrier, ExtensiveInstance, FinSetObj, SetFun};

/// A closed integer interval of degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo > hi {
            return Err(Error::MalformedComplex(format!("window [{lo},{hi}] is empty")));
        }
        Ok(Window { lo, hi })
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: i32) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi
    }

    pub fn union(&self, other: &Window) -> Window {
        Window {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    fn index(&self, i: i32) -> Option<usize> {
        self.contains(i).then_some((i - self.lo) as usize)
    }
}

/// A validated chain complex over the instance `I`.
pub struct ChainComplex<I: ExtensiveInstance> {
    window: Window,
    degrees: Vec<I::Obj>,
    images: Vec<I::Obj>,
    diffs: Vec<SetFun>,
    empty: I::Obj,
}

// Manual impl: the instance type itself is never stored, so no `I: Clone`
// bound is wanted.
impl<I: ExtensiveInstance> Clone for ChainComplex<I> {
    fn clone(&self) -> Self {
        ChainComplex {
            window: self.window,
            degrees: self.degrees.clone(),
            images: self.images.clone(),
            diffs: self.diffs.clone(),
            empty: self.empty.clone(),
        }
    }
}

impl<I: ExtensiveInstance> fmt::Debug for ChainComplex<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ch[{},{}]", self.window.lo, self.window.hi)?;
        for i in self.window.iter().rev() {
            write!(
                f,
                " {}:{:?}⊇{:?}",
                i,
                self.degree(i).carrier(),
                self.image(i).carrier()
            )?;
            if i > self.window.lo {
                write!(f, " d{}={:?}", i, self.diff(i))?;
            }
        }
        Ok(())
    }
}

impl<I: ExtensiveInstance> PartialEq for ChainComplex<I> {
    /// Window-insensitive equality: padding by empty degrees is invisible.
    fn eq(&self, other: &Self) -> bool {
        let w = self.window.union(&other.window);
        w.iter().all(|i| {
            self.degree(i) == other.degree(i)
                && self.image(i) == other.image(i)
                && self.diff(i) == other.diff(i)
        })
    }
}

impl<I: ExtensiveInstance> ChainComplex<I> {
    /// Validates and certifies a candidate complex. The rejection carries
    /// the offending degree.
    pub fn new(
        inst: &I,
        window: Window,
        degrees: Vec<I::Obj>,
        images: Vec<I::Obj>,
        diffs: Vec<SetFun>,
    ) -> Result<Self> {
        if degrees.len() != window.len() || images.len() != window.len() || diffs.len() != window.len()
        {
            return Err(Error::MalformedComplex(
                "degree, image, and differential lists must match the window".into(),
            ));
        }
        let complex = ChainComplex {
            window,
            degrees,
            images,
            diffs,
            empty: inst.initial(),
        };
        complex.validate(inst)?;
        Ok(complex)
    }

    fn validate(&self, inst: &I) -> Result<()> {
        for i in self.window.iter() {
            let k = self.window.index(i).expect("in window");
            let degree = &self.degrees[k];
            let image = &self.images[k];
            if !image.carrier().is_subset_of(degree.carrier()) {
                return Err(Error::MalformedComplex(format!(
                    "image at degree {i} is not a subset of the degree"
                )));
            }
            let restricted = inst
                .restrict(degree, image.carrier())
                .map_err(|e| Error::MalformedComplex(format!("image at degree {i}: {e}")))?;
            if &restricted != image {
                return Err(Error::MalformedComplex(format!(
                    "image at degree {i} carries the wrong substructure"
                )));
            }
            let inc = crate::extcat::Injection::inclusion(image.carrier(), degree.carrier())
                .expect("subset");
            if !inst.is_coproduct_inclusion(image, degree, inc.fun()) {
                return Err(Error::MalformedComplex(format!(
                    "image at degree {i} is not a complemented inclusion"
                )));
            }
            let d = &self.diffs[k];
            if d.dom() != image.carrier() {
                return Err(Error::MalformedComplex(format!(
                    "differential at degree {i} has the wrong domain"
                )));
            }
            if i == self.window.lo {
                if !image.carrier().is_empty() {
                    return Err(Error::MalformedComplex(format!(
                        "image at the bottom degree {i} must be empty"
                    )));
                }
            } else {
                let prev = &self.degrees[k - 1];
                if d.cod() != prev.carrier() || !inst.is_map(image, prev, d) {
                    return Err(Error::MalformedComplex(format!(
                        "differential at degree {i} is not a morphism into degree {}",
                        i - 1
                    )));
                }
            }
        }
        // Chain condition: the image of each differential avoids the next
        // image subobject.
        for i in self.window.iter() {
            let above = self.diff(i + 1);
            if !above.image().is_disjoint_from(self.image(i).carrier()) {
                return Err(Error::ChainConditionViolated(i));
            }
        }
        Ok(())
    }

    /// The empty complex.
    pub fn empty(inst: &I) -> Self {
        let e = inst.initial();
        ChainComplex {
            window: Window { lo: 0, hi: 0 },
            degrees: vec![e.clone()],
            images: vec![e.clone()],
            diffs: vec![SetFun::from_empty(&FinSetObj::empty())],
            empty: e,
        }
    }

    /// The complex with `a` concentrated in degree `n` and every image
    /// empty.
    pub fn concentrated(inst: &I, a: &I::Obj, n: i32) -> Self {
        let e = inst.initial();
        ChainComplex {
            window: Window { lo: n, hi: n },
            degrees: vec![a.clone()],
            images: vec![e.clone()],
            diffs: vec![SetFun::from_empty(&FinSetObj::empty())],
            empty: e,
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn degree(&self, i: i32) -> &I::Obj {
        match self.window.index(i) {
            Some(k) => &self.degrees[k],
            None => &self.empty,
        }
    }

    pub fn image(&self, i: i32) -> &I::Obj {
        match self.window.index(i) {
            Some(k) => &self.images[k],
            None => &self.empty,
        }
    }

    /// The differential at degree `i` (the empty map outside the window).
    pub fn diff(&self, i: i32) -> SetFun {
        match self.window.index(i) {
            Some(k) => self.diffs[k].clone(),
            None => SetFun::from_empty(self.degree(i - 1).carrier()),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.window.iter().all(|i| self.degree(i).carrier().is_empty())
    }

    /// The degrees carrying a nonempty object.
    pub fn support(&self) -> Vec<i32> {
        self.window
            .iter()
            .filter(|&i| !self.degree(i).carrier().is_empty())
            .collect()
    }

    /// Reinterprets the complex on a larger window.
    pub fn pad_to(&self, window: Window) -> ChainComplex<I> {
        let w = self.window.union(&window);
        let degrees = w.iter().map(|i| self.degree(i).clone()).collect();
        let images = w.iter().map(|i| self.image(i).clone()).collect();
        let diffs = w.iter().map(|i| self.diff(i)).collect();
        ChainComplex {
            window: w,
            degrees,
            images,
            diffs,
            empty: self.empty.clone(),
        }
    }
}

/// The truncation modes: drop the top degree, or keep only the top degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncate {
    DropTop,
    KeepTop,
}

/// Truncates at the top of the window. `DropTop` removes the top degree and
/// its image; `KeepTop` concentrates the top degree.
pub fn truncate<I: ExtensiveInstance>(
    inst: &I,
    x: &ChainComplex<I>,
    mode: Truncate,
) -> ChainComplex<I> {
    let w = x.window();
    match mode {
        Truncate::KeepTop => ChainComplex::concentrated(inst, x.degree(w.hi), w.hi),
        Truncate::DropTop => {
            if w.lo == w.hi {
                return ChainComplex::concentrated(inst, &inst.initial(), w.lo);
            }
            let sub = Window {
                lo: w.lo,
                hi: w.hi - 1,
            };
            ChainComplex::new(
                inst,
                sub,
                sub.iter().map(|i| x.degree(i).clone()).collect(),
                sub.iter().map(|i| x.image(i).clone()).collect(),
                sub.iter().map(|i| x.diff(i)).collect(),
            )
            .expect("dropping the top degree only relaxes the chain condition")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extcat::{Elem, FinSetInstance};

    fn set(tokens: &[&str]) -> FinSetObj {
        FinSetObj::new(tokens.iter().copied()).unwrap()
    }

    fn two_step(image0: &[&str]) -> Result<ChainComplex<FinSetInstance>> {
        // X_1 = {x} = X̄_1, d_1(x) = y, X_0 = {y,z}, X̄_0 as given; the
        // window extends one degree down so the image at 0 has somewhere
        // to go.
        let inst = FinSetInstance;
        let d1 = SetFun::from_fn(set(&["x"]), set(&["y", "z"]), |_| Elem::new("y")).unwrap();
        let d0 = SetFun::from_fn(set(image0), set(&["w"]), |_| Elem::new("w")).unwrap();
        ChainComplex::new(
            &inst,
            Window::new(-1, 1).unwrap(),
            vec![set(&["w"]), set(&["y", "z"]), set(&["x"])],
            vec![FinSetObj::empty(), set(image0), set(&["x"])],
            vec![SetFun::from_empty(&FinSetObj::empty()), d0, d1],
        )
    }

    #[test]
    fn all_empty_complex_is_valid() {
        let inst = FinSetInstance;
        let x = ChainComplex::empty(&inst);
        assert!(x.is_empty());
        assert_eq!(x.degree(7), &FinSetObj::empty());
    }

    #[test]
    fn chain_condition_checked() {
        // im d_1 = {y} must avoid X̄_0.
        assert!(two_step(&["z"]).is_ok());
        assert_eq!(
            two_step(&["y"]).unwrap_err(),
            Error::ChainConditionViolated(0)
        );
    }

    #[test]
    fn bottom_image_must_be_empty() {
        let inst = FinSetInstance;
        let err = ChainComplex::new(
            &inst,
            Window::new(0, 0).unwrap(),
            vec![set(&["a"])],
            vec![set(&["a"])],
            vec![SetFun::from_empty(&set(&["a"]))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::MalformedComplex(_)));
    }

    #[test]
    fn concentrated_and_truncate() {
        let inst = FinSetInstance;
        let x = two_step(&["z"]).unwrap();
        let dropped = truncate(&inst, &x, Truncate::DropTop);
        assert_eq!(dropped.window(), Window { lo: -1, hi: 0 });
        assert_eq!(dropped.degree(0), x.degree(0));
        let kept = truncate(&inst, &x, Truncate::KeepTop);
        assert_eq!(kept.degree(1), x.degree(1));
        assert!(kept.degree(0).is_empty());
        let c = ChainComplex::concentrated(&inst, &set(&["a", "b"]), 0);
        assert_eq!(truncate(&inst, &c, Truncate::DropTop).support(), Vec::<i32>::new());
    }

    #[test]
    fn window_padding_is_invisible() {
        let x = two_step(&["z"]).unwrap();
        let padded = x.pad_to(Window::new(-2, 2).unwrap());
        assert_eq!(x, padded);
    }
}
