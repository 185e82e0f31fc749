//! Euler characteristics, degree and image vectors of bounded complexes,
//! and the relation audit verifying that the chosen class functions respect
//! distinguished squares and weak equivalences.

use std::fmt::Write as _;

use crate::cgw::{complete_distinguished_me, StarCgw};
use crate::chain::{ChainCgw, ChainComplex, Window};
use crate::error::{Error, Result};
use crate::exactqi::{exactness, gen_exact, gen_quasi_iso_m};
use crate::extcat::{Carrier, ExtensiveInstance, FinSetObj, Injection, SetFun};
use crate::rng::{derive, Rng};

/// The alternating sum of degree cardinalities over the window.
pub fn euler_char<I: ExtensiveInstance>(x: &ChainComplex<I>) -> i64 {
    x.window()
        .iter()
        .map(|i| {
            let size = x.degree(i).carrier().len() as i64;
            if i.rem_euclid(2) == 0 {
                size
            } else {
                -size
            }
        })
        .sum()
}

/// The degree tuple `(X_{b-1}, X_{b-2}, …, X_a, X_b)` of a complex
/// supported in `[a, b]`.
pub fn degree_vector<I: ExtensiveInstance>(
    x: &ChainComplex<I>,
    a: i32,
    b: i32,
) -> Result<Vec<I::Obj>> {
    if a > b {
        return Err(Error::IndexOutOfWindow(a));
    }
    for i in x.support() {
        if i < a || i > b {
            return Err(Error::IndexOutOfWindow(i));
        }
    }
    let mut tuple: Vec<I::Obj> = (a..b).rev().map(|i| x.degree(i).clone()).collect();
    tuple.push(x.degree(b).clone());
    Ok(tuple)
}

/// The image tuple `(X̄_b, X̄_{b-1}, …, X̄_{a+1})` of an exact complex.
pub fn image_vector<I: ExtensiveInstance>(
    inst: &I,
    x: &ChainComplex<I>,
    a: i32,
    b: i32,
) -> Result<Vec<I::Obj>> {
    exactness(inst, x)?;
    for i in x.support() {
        if i < a || i > b {
            return Err(Error::IndexOutOfWindow(i));
        }
    }
    Ok(((a + 1)..=b).rev().map(|i| x.image(i).clone()).collect())
}

/// Rebuilds an exact complex from its image tuple (highest degree first),
/// the inverse of [`image_vector`] up to isomorphism.
pub fn rebuild_from_images<I: ExtensiveInstance>(
    inst: &I,
    images: &[I::Obj],
    a: i32,
    b: i32,
) -> Result<ChainComplex<I>> {
    if images.len() != (b - a) as usize {
        return Err(Error::Precondition(
            "image tuple length must match the window".into(),
        ));
    }
    let bar = |i: i32| -> I::Obj {
        // images[0] is X̄_b, images[k] is X̄_{b-k}.
        if i <= a || i > b {
            inst.initial()
        } else {
            images[(b - i) as usize].clone()
        }
    };
    let w = Window::new(a, b)?;
    let mut degrees: Vec<I::Obj> = Vec::with_capacity(w.len());
    let mut imgs: Vec<I::Obj> = Vec::with_capacity(w.len());
    let mut diffs: Vec<SetFun> = Vec::with_capacity(w.len());
    let mut prev_left: Option<Injection> = None;
    for i in w.iter() {
        let (degree, li, ri) = inst.coproduct(&bar(i + 1), &bar(i));
        let image = inst.restrict(&degree, &ri.image())?;
        let prev = if i == a {
            FinSetObj::empty()
        } else {
            degrees.last().expect("built in order").carrier().clone()
        };
        let pl = prev_left.clone();
        let d = SetFun::from_fn(ri.image(), prev, |e| {
            let orig = ri.invert_at(e).expect("right part");
            pl.as_ref()
                .expect("lower degree exists")
                .apply(orig)
                .expect("total")
                .clone()
        })?;
        prev_left = Some(li);
        degrees.push(degree);
        imgs.push(image);
        diffs.push(d);
    }
    ChainComplex::new(inst, w, degrees, imgs, diffs)
}

/// Verifies the canonical comparison between an exact complex and the
/// rebuild from its image tuple: each degree decomposes as the differential
/// image next to the image subobject.
pub fn reconstructs<I: ExtensiveInstance>(
    inst: &I,
    x: &ChainComplex<I>,
    a: i32,
    b: i32,
) -> Result<bool> {
    let tuple = image_vector(inst, x, a, b)?;
    let rebuilt = rebuild_from_images(inst, &tuple, a, b)?;
    // The canonical comparison sends the upper summand through the
    // differential and the lower summand through the image inclusion; it is
    // an isomorphism of complexes exactly when it is degreewise bijective.
    for i in rebuilt.window().iter() {
        if rebuilt.degree(i).carrier().len() != x.degree(i).carrier().len() {
            return Ok(false);
        }
        let dx = x.diff(i + 1);
        let mut seen = FinSetObj::empty();
        for e in x.image(i + 1).carrier().iter() {
            let target = dx.apply(e).expect("total");
            if seen.contains(target) {
                return Ok(false);
            }
            seen = seen.union(&FinSetObj::new([target.clone()]).expect("one"));
        }
        for e in x.image(i).carrier().iter() {
            if seen.contains(e) {
                return Ok(false);
            }
            seen = seen.union(&FinSetObj::new([e.clone()]).expect("one"));
        }
        if seen != *x.degree(i).carrier() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome counters of the relation audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Report {
    pub seed: u64,
    pub trials: u64,
    pub distinguished_checked: u64,
    pub weak_equivalence_checked: u64,
    pub sum_checked: u64,
    pub violations: u64,
    pub first_violation: Option<(u64, String)>,
}

impl K0Report {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "seed={} trials={}", self.seed, self.trials);
        let _ = writeln!(
            out,
            "distinguished-square relations checked: {}",
            self.distinguished_checked
        );
        let _ = writeln!(
            out,
            "weak-equivalence relations checked: {}",
            self.weak_equivalence_checked
        );
        let _ = writeln!(out, "sum relations checked: {}", self.sum_checked);
        let _ = writeln!(out, "violations: {}", self.violations);
        if let Some((t, v)) = &self.first_violation {
            let _ = writeln!(out, "first violation@{t}: {v}");
        }
        out
    }
}

/// Samples distinguished squares, weak-equivalence pairs, and split sums,
/// and verifies the class function respects every sampled relation.
pub fn relation_audit<C: StarCgw + ?Sized>(
    c: &C,
    class: impl Fn(&C::Obj) -> i64,
    gen_we: impl Fn(&C, &mut Rng) -> Option<(C::Obj, C::Obj)>,
    trials: u64,
    seed: u64,
) -> K0Report {
    assert!(trials >= 1, "relation audit requires at least one trial");
    let mut report = K0Report {
        seed,
        trials,
        distinguished_checked: 0,
        weak_equivalence_checked: 0,
        sum_checked: 0,
        violations: 0,
        first_violation: None,
    };
    let record = |report: &mut K0Report, t: u64, msg: String| {
        report.violations += 1;
        if report.first_violation.is_none() {
            report.first_violation = Some((t, msg));
        }
    };
    for t in 0..trials {
        let mut rng = Rng::new(derive(seed, 0, t));
        // Distinguished-square relation [TL] + [BR] = [TR] + [BL].
        let b = c.gen_obj(&mut rng);
        let f = c.gen_sub_m(&mut rng, &b);
        let g = c.gen_sup_e(&mut rng, &b);
        match complete_distinguished_me(c, &f, &g) {
            Ok(d) => {
                report.distinguished_checked += 1;
                let tl = class(&c.m_dom(&d.square.top));
                let tr = class(&c.m_cod(&d.square.top));
                let bl = class(&c.m_dom(&d.square.bottom));
                let br = class(&c.m_cod(&d.square.bottom));
                if tl + br != tr + bl {
                    record(
                        &mut report,
                        t,
                        format!("distinguished square breaks the relation: {tl}+{br} != {tr}+{bl}"),
                    );
                }
            }
            Err(e) => record(&mut report, t, format!("completion failed: {e}")),
        }
        // Weak-equivalence relation [A] = [B].
        if let Some((a, b2)) = gen_we(c, &mut rng) {
            report.weak_equivalence_checked += 1;
            if class(&a) != class(&b2) {
                record(
                    &mut report,
                    t,
                    format!(
                        "weak equivalence breaks the relation: {} != {}",
                        class(&a),
                        class(&b2)
                    ),
                );
            }
        }
        // Sum relation [A] + [B] = [A ⊔ B] through the trivial extension.
        let a = c.gen_obj(&mut rng);
        let b3 = c.gen_obj(&mut rng);
        match c.trivial_extension(&a, &b3) {
            Ok((m, _)) => {
                report.sum_checked += 1;
                let total = class(&c.m_cod(&m));
                if class(&a) + class(&b3) != total {
                    record(
                        &mut report,
                        t,
                        format!(
                            "sum breaks the relation: {}+{} != {total}",
                            class(&a),
                            class(&b3)
                        ),
                    );
                }
            }
            Err(e) => record(&mut report, t, format!("trivial extension failed: {e}")),
        }
    }
    report
}

/// Relation audit over finite sets with cardinality as the class function
/// and relabeling isomorphisms as the weak equivalences.
pub fn relation_audit_finset(max_size: usize, trials: u64, seed: u64) -> K0Report {
    let c = crate::cgw::ExtCgw::new(crate::extcat::FinSetInstance, max_size);
    relation_audit(
        &c,
        |o: &FinSetObj| o.len() as i64,
        |c, rng| {
            let a = c.gen_obj(rng);
            let iso = c.gen_iso_m(rng, &a);
            Some((a, iso.cod))
        },
        trials,
        seed,
    )
}

/// Relation audit over chain complexes with the Euler characteristic as the
/// class function and quasi-isomorphisms as the weak equivalences.
pub fn relation_audit_chain(
    window: Window,
    max_degree_size: usize,
    trials: u64,
    seed: u64,
) -> K0Report {
    let c = ChainCgw::new(crate::extcat::FinSetInstance, window, max_degree_size);
    relation_audit(
        &c,
        euler_char,
        |c, rng| {
            let a = if rng.chance(1, 2) {
                gen_exact(c, rng)
            } else {
                c.gen_obj(rng)
            };
            let q = gen_quasi_iso_m(c, rng, &a);
            Some((a, q.dst().clone()))
        },
        trials,
        seed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::truncate;
    use crate::chain::Truncate;
    use crate::extcat::FinSetInstance;

    fn set(tokens: &[&str]) -> FinSetObj {
        FinSetObj::new(tokens.iter().copied()).unwrap()
    }

    #[test]
    fn euler_of_concentrated() {
        let inst = FinSetInstance;
        assert_eq!(
            euler_char(&ChainComplex::concentrated(&inst, &set(&["a", "b"]), 0)),
            2
        );
        assert_eq!(
            euler_char(&ChainComplex::concentrated(&inst, &set(&["a"]), 1)),
            -1
        );
    }

    #[test]
    fn euler_of_exact_is_zero() {
        let c = ChainCgw::new(FinSetInstance, Window::new(-2, 2).unwrap(), 4);
        let mut rng = Rng::new(17);
        for _ in 0..20 {
            let e = gen_exact(&c, &mut rng);
            assert_eq!(euler_char(&e), 0, "{e:?}");
        }
    }

    #[test]
    fn euler_additive_across_truncation() {
        let c = ChainCgw::new(FinSetInstance, Window::new(0, 2).unwrap(), 4);
        let mut rng = Rng::new(23);
        for _ in 0..20 {
            let x = c.gen_obj(&mut rng);
            let f = truncate(&c.inst, &x, Truncate::DropTop);
            let g = truncate(&c.inst, &x, Truncate::KeepTop);
            assert_eq!(euler_char(&x), euler_char(&f) + euler_char(&g));
        }
    }

    #[test]
    fn degree_vector_order() {
        let inst = FinSetInstance;
        let x = ChainComplex::concentrated(&inst, &set(&["a"]), 2);
        let v = degree_vector(&x, 0, 2).unwrap();
        // (X_1, X_0, X_2)
        assert_eq!(v.len(), 3);
        assert!(v[0].is_empty() && v[1].is_empty());
        assert_eq!(v[2], set(&["a"]));
        assert_eq!(degree_vector(&x, 0, 1), Err(Error::IndexOutOfWindow(2)));
    }

    #[test]
    fn single_degree_vector_is_the_object() {
        let inst = FinSetInstance;
        let x = ChainComplex::concentrated(&inst, &set(&["a", "b"]), 0);
        assert_eq!(degree_vector(&x, 0, 0).unwrap(), vec![set(&["a", "b"])]);
    }

    #[test]
    fn image_vector_requires_exactness() {
        let inst = FinSetInstance;
        let x = ChainComplex::concentrated(&inst, &set(&["a"]), 0);
        assert_eq!(image_vector(&inst, &x, 0, 1), Err(Error::NotExact(0)));
    }

    #[test]
    fn exact_reconstruction_round_trip() {
        let c = ChainCgw::new(FinSetInstance, Window::new(-2, 2).unwrap(), 4);
        let mut rng = Rng::new(31);
        for _ in 0..25 {
            let e = gen_exact(&c, &mut rng);
            assert!(reconstructs(&c.inst, &e, -2, 2).unwrap(), "{e:?}");
        }
    }

    #[test]
    fn relation_audits_pass() {
        let r = relation_audit_finset(6, 100, 9);
        assert_eq!(r.violations, 0, "\n{}", r.render());
        let r = relation_audit_chain(Window::new(-1, 1).unwrap(), 3, 60, 10);
        assert_eq!(r.violations, 0, "\n{}", r.render());
    }
}
