//! The two arrow roles between chain complexes: levelwise complemented
//! inclusions with a pullback condition on one side and a commutation
//! condition on the other.

use std::collections::BTreeMap;
use std::fmt;

use crate::chain::complex::{ChainComplex, Window};
use crate::error::{Error, Result};
use crate::extcat::{Carrier, ExtensiveInstance, Injection};

/// Per-degree arrow data supplied to the map constructors. Degrees with an
/// empty source may be omitted.
pub type Levels = BTreeMap<i32, Injection>;

fn level<'a>(levels: &'a Levels, i: i32) -> Option<&'a Injection> {
    levels.get(&i)
}

/// A chain m-morphism `X ↣ Y`: levelwise inclusions `f_i : X_i ↣ Y_i`,
/// `f̄_i : X̄_i ↣ Ȳ_i` whose image square is a pullback (`X̄_i` is the full
/// preimage of `Ȳ_i`) and whose differential square commutes.
pub struct ChainMapM<I: ExtensiveInstance> {
    src: ChainComplex<I>,
    dst: ChainComplex<I>,
    window: Window,
    f: Vec<Injection>,
    fbar: Vec<Injection>,
}

/// A chain e-morphism `Z ⇢ Y`: levelwise inclusions whose image square
/// commutes and whose differential square is a pullback (`Z̄_i` is the full
/// preimage of `Z_{i-1}` under the differential of `Y`).
pub struct ChainMapE<I: ExtensiveInstance> {
    src: ChainComplex<I>,
    dst: ChainComplex<I>,
    window: Window,
    g: Vec<Injection>,
    gbar: Vec<Injection>,
}

impl<I: ExtensiveInstance> Clone for ChainMapM<I> {
    fn clone(&self) -> Self {
        ChainMapM {
            src: self.src.clone(),
            dst: self.dst.clone(),
            window: self.window,
            f: self.f.clone(),
            fbar: self.fbar.clone(),
        }
    }
}

impl<I: ExtensiveInstance> Clone for ChainMapE<I> {
    fn clone(&self) -> Self {
        ChainMapE {
            src: self.src.clone(),
            dst: self.dst.clone(),
            window: self.window,
            g: self.g.clone(),
            gbar: self.gbar.clone(),
        }
    }
}

fn fill_levels<I: ExtensiveInstance>(
    inst: &I,
    window: Window,
    src: &ChainComplex<I>,
    dst: &ChainComplex<I>,
    provided: &Levels,
    images: bool,
) -> Result<Vec<Injection>> {
    let mut out = Vec::with_capacity(window.len());
    for i in window.iter() {
        let (s, d) = if images {
            (src.image(i), dst.image(i))
        } else {
            (src.degree(i), dst.degree(i))
        };
        let arrow = match level(provided, i) {
            Some(a) => a.clone(),
            None if s.carrier().is_empty() => Injection::from_empty(d.carrier()),
            None => {
                return Err(Error::MalformedComplex(format!(
                    "missing level {i} of a chain map with nonempty source"
                )))
            }
        };
        if arrow.dom() != s.carrier()
            || arrow.cod() != d.carrier()
            || !inst.is_coproduct_inclusion(s, d, arrow.fun())
        {
            return Err(Error::NotCoproductInclusion);
        }
        out.push(arrow);
    }
    Ok(out)
}

impl<I: ExtensiveInstance> ChainMapM<I> {
    /// Validates the side conditions levelwise and certifies the map.
    pub fn new(
        inst: &I,
        src: ChainComplex<I>,
        dst: ChainComplex<I>,
        f: &Levels,
        fbar: &Levels,
    ) -> Result<Self> {
        let window = src.window().union(&dst.window());
        let f = fill_levels(inst, window, &src, &dst, f, false)?;
        let fbar = fill_levels(inst, window, &src, &dst, fbar, true)?;
        let map = ChainMapM {
            src,
            dst,
            window,
            f,
            fbar,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<()> {
        for i in self.window.iter() {
            let fi = self.level(i);
            let fbari = self.level_bar(i);
            // Image square is a pullback: f̄ agrees with f on the image and
            // nothing outside the image lands in the target image.
            for x in self.src.image(i).carrier().iter() {
                if fbari.apply(x) != fi.apply(x) {
                    return Err(Error::NotPullback(i));
                }
            }
            let target_image = self.dst.image(i).carrier();
            for x in self.src.degree(i).carrier().iter() {
                let hit = target_image.contains(fi.apply(x).expect("total"));
                if hit != self.src.image(i).carrier().contains(x) {
                    return Err(Error::NotPullback(i));
                }
            }
            // Differential square commutes.
            let dx = self.src.diff(i);
            let dy = self.dst.diff(i);
            let f_prev = self.level(i - 1);
            for x in self.src.image(i).carrier().iter() {
                let via_src = f_prev.apply(dx.apply(x).expect("total"));
                let via_dst = dy.apply(fbari.apply(x).expect("total"));
                if via_src != via_dst {
                    return Err(Error::SquareNotCommuting(i));
                }
            }
        }
        Ok(())
    }

    pub fn identity(inst: &I, x: &ChainComplex<I>) -> Self {
        let ids: Levels = x
            .window()
            .iter()
            .map(|i| (i, Injection::identity(x.degree(i).carrier())))
            .collect();
        let idbars: Levels = x
            .window()
            .iter()
            .map(|i| (i, Injection::identity(x.image(i).carrier())))
            .collect();
        ChainMapM::new(inst, x.clone(), x.clone(), &ids, &idbars)
            .expect("identity levels satisfy both side conditions")
    }

    /// The unique map out of the empty complex.
    pub fn from_empty(inst: &I, dst: &ChainComplex<I>) -> Self {
        ChainMapM::new(
            inst,
            ChainComplex::empty(inst),
            dst.clone(),
            &Levels::new(),
            &Levels::new(),
        )
        .expect("empty levels satisfy both side conditions")
    }

    pub fn src(&self) -> &ChainComplex<I> {
        &self.src
    }

    pub fn dst(&self) -> &ChainComplex<I> {
        &self.dst
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn level(&self, i: i32) -> Injection {
        match self.window.contains(i) {
            true => self.f[(i - self.window.lo) as usize].clone(),
            false => Injection::from_empty(self.dst.degree(i).carrier()),
        }
    }

    pub fn level_bar(&self, i: i32) -> Injection {
        match self.window.contains(i) {
            true => self.fbar[(i - self.window.lo) as usize].clone(),
            false => Injection::from_empty(self.dst.image(i).carrier()),
        }
    }

    pub fn compose(inst: &I, g: &Self, f: &Self) -> Result<Self> {
        if f.dst != g.src {
            return Err(Error::NotComposable);
        }
        let w = f.window.union(&g.window);
        let levels: Levels = w
            .iter()
            .map(|i| Ok((i, Injection::compose(&g.level(i), &f.level(i))?)))
            .collect::<Result<_>>()?;
        let bars: Levels = w
            .iter()
            .map(|i| Ok((i, Injection::compose(&g.level_bar(i), &f.level_bar(i))?)))
            .collect::<Result<_>>()?;
        ChainMapM::new(inst, f.src.clone(), g.dst.clone(), &levels, &bars)
    }

    pub fn is_iso(&self) -> bool {
        self.window.iter().all(|i| self.level(i).is_iso())
    }

    pub fn invert(&self, inst: &I) -> Result<Self> {
        if !self.is_iso() {
            return Err(Error::NotIso);
        }
        let levels: Levels = self
            .window
            .iter()
            .map(|i| Ok((i, self.level(i).inverse()?)))
            .collect::<Result<_>>()?;
        let bars: Levels = self
            .window
            .iter()
            .map(|i| Ok((i, self.level_bar(i).inverse()?)))
            .collect::<Result<_>>()?;
        ChainMapM::new(inst, self.dst.clone(), self.src.clone(), &levels, &bars)
    }
}

impl<I: ExtensiveInstance> PartialEq for ChainMapM<I> {
    fn eq(&self, other: &Self) -> bool {
        let w = self.window.union(&other.window);
        self.src == other.src
            && self.dst == other.dst
            && w.iter().all(|i| {
                self.level(i) == other.level(i) && self.level_bar(i) == other.level_bar(i)
            })
    }
}

impl<I: ExtensiveInstance> fmt::Debug for ChainMapM<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChM")?;
        for i in self.window.iter().rev() {
            if !self.src.degree(i).carrier().is_empty() || !self.dst.degree(i).carrier().is_empty()
            {
                write!(f, " {}:{:?}", i, self.level(i))?;
            }
        }
        Ok(())
    }
}

impl<I: ExtensiveInstance> ChainMapE<I> {
    pub fn new(
        inst: &I,
        src: ChainComplex<I>,
        dst: ChainComplex<I>,
        g: &Levels,
        gbar: &Levels,
    ) -> Result<Self> {
        let window = src.window().union(&dst.window());
        let g = fill_levels(inst, window, &src, &dst, g, false)?;
        let gbar = fill_levels(inst, window, &src, &dst, gbar, true)?;
        let map = ChainMapE {
            src,
            dst,
            window,
            g,
            gbar,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<()> {
        for i in self.window.iter() {
            let gi = self.level(i);
            let gbari = self.level_bar(i);
            // Image square commutes.
            for x in self.src.image(i).carrier().iter() {
                if gbari.apply(x) != gi.apply(x) {
                    return Err(Error::SquareNotCommuting(i));
                }
            }
            // Differential square is a pullback: the source image is the
            // full preimage of the source complex under the target
            // differential.
            let dy = self.dst.diff(i);
            let prev_image = self.level(i - 1).image();
            let gbar_image = gbari.image();
            for y in self.dst.image(i).carrier().iter() {
                let lands_in_src = prev_image.contains(dy.apply(y).expect("total"));
                if lands_in_src != gbar_image.contains(y) {
                    return Err(Error::NotPullback(i));
                }
            }
            // Differential square commutes with the restriction.
            let dz = self.src.diff(i);
            let g_prev = self.level(i - 1);
            for x in self.src.image(i).carrier().iter() {
                let via_src = g_prev.apply(dz.apply(x).expect("total"));
                let via_dst = dy.apply(gbari.apply(x).expect("total"));
                if via_src != via_dst {
                    return Err(Error::SquareNotCommuting(i));
                }
            }
        }
        Ok(())
    }

    pub fn identity(inst: &I, x: &ChainComplex<I>) -> Self {
        let ids: Levels = x
            .window()
            .iter()
            .map(|i| (i, Injection::identity(x.degree(i).carrier())))
            .collect();
        let idbars: Levels = x
            .window()
            .iter()
            .map(|i| (i, Injection::identity(x.image(i).carrier())))
            .collect();
        ChainMapE::new(inst, x.clone(), x.clone(), &ids, &idbars)
            .expect("identity levels satisfy both side conditions")
    }

    pub fn from_empty(inst: &I, dst: &ChainComplex<I>) -> Self {
        ChainMapE::new(
            inst,
            ChainComplex::empty(inst),
            dst.clone(),
            &Levels::new(),
            &Levels::new(),
        )
        .expect("empty levels satisfy both side conditions")
    }

    pub fn src(&self) -> &ChainComplex<I> {
        &self.src
    }

    pub fn dst(&self) -> &ChainComplex<I> {
        &self.dst
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn level(&self, i: i32) -> Injection {
        match self.window.contains(i) {
            true => self.g[(i - self.window.lo) as usize].clone(),
            false => Injection::from_empty(self.dst.degree(i).carrier()),
        }
    }

    pub fn level_bar(&self, i: i32) -> Injection {
        match self.window.contains(i) {
            true => self.gbar[(i - self.window.lo) as usize].clone(),
            false => Injection::from_empty(self.dst.image(i).carrier()),
        }
    }

    pub fn compose(inst: &I, g: &Self, f: &Self) -> Result<Self> {
        if f.dst != g.src {
            return Err(Error::NotComposable);
        }
        let w = f.window.union(&g.window);
        let levels: Levels = w
            .iter()
            .map(|i| Ok((i, Injection::compose(&g.level(i), &f.level(i))?)))
            .collect::<Result<_>>()?;
        let bars: Levels = w
            .iter()
            .map(|i| Ok((i, Injection::compose(&g.level_bar(i), &f.level_bar(i))?)))
            .collect::<Result<_>>()?;
        ChainMapE::new(inst, f.src.clone(), g.dst.clone(), &levels, &bars)
    }

    pub fn is_iso(&self) -> bool {
        self.window.iter().all(|i| self.level(i).is_iso())
    }

    pub fn invert(&self, inst: &I) -> Result<Self> {
        if !self.is_iso() {
            return Err(Error::NotIso);
        }
        let levels: Levels = self
            .window
            .iter()
            .map(|i| Ok((i, self.level(i).inverse()?)))
            .collect::<Result<_>>()?;
        let bars: Levels = self
            .window
            .iter()
            .map(|i| Ok((i, self.level_bar(i).inverse()?)))
            .collect::<Result<_>>()?;
        ChainMapE::new(inst, self.dst.clone(), self.src.clone(), &levels, &bars)
    }
}

impl<I: ExtensiveInstance> PartialEq for ChainMapE<I> {
    fn eq(&self, other: &Self) -> bool {
        let w = self.window.union(&other.window);
        self.src == other.src
            && self.dst == other.dst
            && w.iter().all(|i| {
                self.level(i) == other.level(i) && self.level_bar(i) == other.level_bar(i)
            })
    }
}

impl<I: ExtensiveInstance> fmt::Debug for ChainMapE<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChE")?;
        for i in self.window.iter().rev() {
            if !self.src.degree(i).carrier().is_empty() || !self.dst.degree(i).carrier().is_empty()
            {
                write!(f, " {}:{:?}", i, self.level(i))?;
            }
        }
        Ok(())
    }
}

/// The kind tag used by callers that treat both map roles uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    M,
    E,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extcat::{Elem, FinSetInstance, FinSetObj, SetFun};

    fn set(tokens: &[&str]) -> FinSetObj {
        FinSetObj::new(tokens.iter().copied()).unwrap()
    }

    fn sample() -> ChainComplex<FinSetInstance> {
        // Y_1 = {x,w} ⊇ Ȳ_1 = {x}, d(x) = y, Y_0 = {y,z}.
        let inst = FinSetInstance;
        let d1 = SetFun::from_fn(set(&["x"]), set(&["y", "z"]), |_| Elem::new("y")).unwrap();
        ChainComplex::new(
            &inst,
            Window::new(0, 1).unwrap(),
            vec![set(&["y", "z"]), set(&["x", "w"])],
            vec![FinSetObj::empty(), set(&["x"])],
            vec![SetFun::from_empty(&FinSetObj::empty()), d1],
        )
        .unwrap()
    }

    #[test]
    fn identity_is_valid_in_both_roles() {
        let inst = FinSetInstance;
        let y = sample();
        let m = ChainMapM::identity(&inst, &y);
        assert!(m.is_iso());
        let e = ChainMapE::identity(&inst, &y);
        assert!(e.is_iso());
    }

    #[test]
    fn empty_complex_maps_in_both_roles() {
        let inst = FinSetInstance;
        let y = sample();
        let m = ChainMapM::from_empty(&inst, &y);
        assert!(m.src().is_empty());
        let e = ChainMapE::from_empty(&inst, &y);
        assert!(e.src().is_empty());
    }

    #[test]
    fn m_map_image_must_be_full_preimage() {
        // X = Y with X̄_1 = ∅ strictly smaller than the preimage of Ȳ_1.
        let inst = FinSetInstance;
        let y = sample();
        let x = ChainComplex::new(
            &inst,
            Window::new(0, 1).unwrap(),
            vec![set(&["y", "z"]), set(&["x", "w"])],
            vec![FinSetObj::empty(), FinSetObj::empty()],
            vec![
                SetFun::from_empty(&FinSetObj::empty()),
                SetFun::from_empty(&set(&["y", "z"])),
            ],
        )
        .unwrap();
        let ids: Levels = [
            (0, Injection::identity(&set(&["y", "z"]))),
            (1, Injection::identity(&set(&["x", "w"]))),
        ]
        .into_iter()
        .collect();
        let err = ChainMapM::new(&inst, x, y, &ids, &Levels::new()).unwrap_err();
        assert_eq!(err, Error::NotPullback(1));
    }

    #[test]
    fn e_map_image_must_be_differential_preimage() {
        // Z = degree-0 part {y,z}: the preimage of Z_0 in Ȳ_1 is {x}, so Z̄_1
        // must account for it; an empty Z at degree 1 fails the pullback.
        let inst = FinSetInstance;
        let y = sample();
        let z = ChainComplex::new(
            &inst,
            Window::new(0, 0).unwrap(),
            vec![set(&["y", "z"])],
            vec![FinSetObj::empty()],
            vec![SetFun::from_empty(&FinSetObj::empty())],
        )
        .unwrap();
        let levels: Levels = [(0, Injection::identity(&set(&["y", "z"])))]
            .into_iter()
            .collect();
        let err = ChainMapE::new(&inst, z, y, &levels, &Levels::new()).unwrap_err();
        assert_eq!(err, Error::NotPullback(1));
    }
}
