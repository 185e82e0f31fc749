//! The staircase construction: triangular arrays of complement objects with
//! distinguished squares, their face and degeneracy maps, and extension
//! objects for the additivity projection.
//!
//! A level-`n` staircase is built from a row of composable m-morphisms
//! `∅ = A_0 ↣ A_1 ↣ … ↣ A_n`: the cell `(i, j)` holds the complement
//! `A_j ∖ A_i`, rows are connected by m-morphisms, columns by e-morphisms,
//! and every square carries a distinguished-square certificate.

use std::collections::BTreeMap;

use crate::cgw::{certify_distinguished, Distinguished, Mixed, MixedOf, StarCgw};
use crate::error::{Error, Result};

pub struct Staircase<C: StarCgw + ?Sized> {
    n: usize,
    objs: BTreeMap<(usize, usize), C::Obj>,
    horiz: BTreeMap<(usize, usize), C::M>,
    vert: BTreeMap<(usize, usize), C::E>,
    certs: BTreeMap<(usize, usize), Distinguished<C::M, C::E>>,
}

impl<C: StarCgw + ?Sized> Clone for Staircase<C> {
    fn clone(&self) -> Self {
        Staircase {
            n: self.n,
            objs: self.objs.clone(),
            horiz: self.horiz.clone(),
            vert: self.vert.clone(),
            certs: self.certs.clone(),
        }
    }
}

impl<C: StarCgw + ?Sized> std::fmt::Debug for Staircase<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Staircase(n={})", self.n)
    }
}

impl<C: StarCgw + ?Sized> Staircase<C> {
    pub fn level(&self) -> usize {
        self.n
    }

    pub fn obj(&self, i: usize, j: usize) -> &C::Obj {
        &self.objs[&(i, j)]
    }

    /// The m-morphism `(i,j) ↣ (i,j+1)`.
    pub fn horiz(&self, i: usize, j: usize) -> &C::M {
        &self.horiz[&(i, j)]
    }

    /// The e-morphism `(i+1,j) ⇢ (i,j)`.
    pub fn vert(&self, i: usize, j: usize) -> &C::E {
        &self.vert[&(i, j)]
    }

    pub fn cert(&self, i: usize, j: usize) -> &Distinguished<C::M, C::E> {
        &self.certs[&(i, j)]
    }

    /// The grid square with rows `i, i+1` and columns `j, j+1`.
    pub fn square(&self, c: &C, i: usize, j: usize) -> MixedOf<C> {
        let _ = c;
        Mixed {
            top: self.horiz[&(i + 1, j)].clone(),
            bottom: self.horiz[&(i, j)].clone(),
            left: self.vert[&(i, j)].clone(),
            right: self.vert[&(i, j + 1)].clone(),
        }
    }

    pub fn squares(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.certs.keys().copied()
    }

    /// Object-level comparison up to canonical isomorphism.
    pub fn iso(&self, c: &C, other: &Staircase<C>) -> bool {
        self.n == other.n
            && self
                .objs
                .iter()
                .all(|(k, o)| c.obj_iso(o, &other.objs[k]))
    }
}

fn assemble<C: StarCgw + ?Sized>(
    c: &C,
    n: usize,
    objs: BTreeMap<(usize, usize), C::Obj>,
    horiz: BTreeMap<(usize, usize), C::M>,
    vert: BTreeMap<(usize, usize), C::E>,
) -> Result<Staircase<C>> {
    let mut certs = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let sq = Mixed {
                top: horiz[&(i + 1, j)].clone(),
                bottom: horiz[&(i, j)].clone(),
                left: vert[&(i, j)].clone(),
                right: vert[&(i, j + 1)].clone(),
            };
            certs.insert((i, j), certify_distinguished(c, &sq)?);
        }
    }
    for i in 0..=n {
        if !c.is_initial(&objs[&(i, i)]) {
            return Err(Error::Precondition(format!(
                "diagonal cell ({i},{i}) is not initial"
            )));
        }
    }
    Ok(Staircase {
        n,
        objs,
        horiz,
        vert,
        certs,
    })
}

/// Builds the staircase of a composable row `∅ = A_0 ↣ A_1 ↣ … ↣ A_n`.
pub fn staircase_build<C: StarCgw + ?Sized>(c: &C, row: &[C::M]) -> Result<Staircase<C>> {
    let n = row.len();
    if n > 0 && !c.is_initial(&c.m_dom(&row[0])) {
        return Err(Error::Precondition("row must start at the initial object".into()));
    }
    for pair in row.windows(2) {
        if c.m_cod(&pair[0]) != c.m_dom(&pair[1]) {
            return Err(Error::NotComposable);
        }
    }
    // Composites comp[i][j] : A_i ↣ A_j.
    let bottom = if n == 0 {
        c.initial()
    } else {
        c.m_dom(&row[0])
    };
    let mut comp: Vec<Vec<Option<C::M>>> = vec![vec![None; n + 1]; n + 1];
    for i in 0..=n {
        let obj = if i == 0 {
            bottom.clone()
        } else {
            c.m_cod(&row[i - 1])
        };
        comp[i][i] = Some(c.m_id(&obj));
        for j in (i + 1)..=n {
            let prev = comp[i][j - 1].clone().expect("filled in order");
            comp[i][j] = Some(c.m_compose(&row[j - 1], &prev)?);
        }
    }
    let comp = |i: usize, j: usize| comp[i][j].clone().expect("triangular");
    let mut objs = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for i in 0..=n {
        for j in i..=n {
            objs.insert((i, j), c.e_dom(&c.cokernel(&comp(i, j))));
        }
    }
    for i in 0..=n {
        for j in i..n {
            horiz.insert((i, j), c.cok_extend_m(&comp(i, j), &row[j])?);
        }
    }
    for i in 0..n {
        for j in (i + 1)..=n {
            vert.insert((i, j), c.cok_restrict_e(&row[i], &comp(i + 1, j))?);
        }
    }
    assemble(c, n, objs, horiz, vert)
}

/// The face map: deletes row and column `k` and composes across the gap.
pub fn face<C: StarCgw + ?Sized>(c: &C, s: &Staircase<C>, k: usize) -> Result<Staircase<C>> {
    let n = s.level();
    if k > n || n == 0 {
        return Err(Error::IndexOutOfWindow(k as i32));
    }
    let m = n - 1;
    let old = |t: usize| if t < k { t } else { t + 1 };
    let mut objs = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for i in 0..=m {
        for j in i..=m {
            objs.insert((i, j), s.obj(old(i), old(j)).clone());
        }
    }
    for i in 0..=m {
        for j in i..m {
            let (oi, oj, onext) = (old(i), old(j), old(j + 1));
            let arrow = if onext == oj + 1 {
                s.horiz(oi, oj).clone()
            } else {
                c.m_compose(s.horiz(oi, oj + 1), s.horiz(oi, oj))?
            };
            horiz.insert((i, j), arrow);
        }
    }
    for i in 0..m {
        for j in (i + 1)..=m {
            let (oi, oj) = (old(i), old(j));
            let inext = old(i + 1);
            let arrow = if inext == oi + 1 {
                s.vert(oi, oj).clone()
            } else {
                c.e_compose(s.vert(oi, oj), s.vert(oi + 1, oj))?
            };
            vert.insert((i, j), arrow);
        }
    }
    assemble(c, m, objs, horiz, vert)
}

/// The degeneracy map: duplicates index `k`, inserting identity arrows.
pub fn degeneracy<C: StarCgw + ?Sized>(c: &C, s: &Staircase<C>, k: usize) -> Result<Staircase<C>> {
    let n = s.level();
    if k > n {
        return Err(Error::IndexOutOfWindow(k as i32));
    }
    let m = n + 1;
    let old = |t: usize| if t <= k { t } else { t - 1 };
    let mut objs = BTreeMap::new();
    let mut horiz = BTreeMap::new();
    let mut vert = BTreeMap::new();
    for i in 0..=m {
        for j in i..=m {
            objs.insert((i, j), s.obj(old(i), old(j)).clone());
        }
    }
    for i in 0..=m {
        for j in i..m {
            let arrow = if old(j + 1) == old(j) {
                c.m_id(s.obj(old(i), old(j)))
            } else {
                s.horiz(old(i), old(j)).clone()
            };
            horiz.insert((i, j), arrow);
        }
    }
    for i in 0..m {
        for j in (i + 1)..=m {
            let arrow = if old(i + 1) == old(i) {
                c.e_id(s.obj(old(i), old(j)))
            } else {
                s.vert(old(i), old(j)).clone()
            };
            vert.insert((i, j), arrow);
        }
    }
    assemble(c, m, objs, horiz, vert)
}

/// A certified extension: a kernel-cokernel pair `A ↣ C ⇠ B` with its
/// distinguished-square witness.
pub struct ExtensionObj<C: StarCgw + ?Sized> {
    pub kernel: C::M,
    pub quotient: C::E,
    pub cert: Distinguished<C::M, C::E>,
}

impl<C: StarCgw + ?Sized> Clone for ExtensionObj<C> {
    fn clone(&self) -> Self {
        ExtensionObj {
            kernel: self.kernel.clone(),
            quotient: self.quotient.clone(),
            cert: self.cert.clone(),
        }
    }
}

/// Certifies that `f : A ↣ C` and `g : B ⇢ C` form a kernel-cokernel pair.
pub fn extension_build<C: StarCgw + ?Sized>(
    c: &C,
    f: &C::M,
    g: &C::E,
) -> Result<ExtensionObj<C>> {
    if c.m_cod(f) != c.e_cod(g) {
        return Err(Error::NotKernelCokernelPair);
    }
    let sq = Mixed {
        top: c.m_from_initial(&c.e_dom(g)),
        bottom: f.clone(),
        left: c.e_from_initial(&c.m_dom(f)),
        right: g.clone(),
    };
    let cert = certify_distinguished(c, &sq).map_err(|_| Error::NotKernelCokernelPair)?;
    Ok(ExtensionObj {
        kernel: f.clone(),
        quotient: g.clone(),
        cert,
    })
}

/// The additivity projection `(A ↣ C ⇠ B) ↦ (A, B)`.
pub fn additivity_projection<C: StarCgw + ?Sized>(
    c: &C,
    ext: &ExtensionObj<C>,
) -> (C::Obj, C::Obj) {
    (c.m_dom(&ext.kernel), c.e_dom(&ext.quotient))
}

/// The trivial (split) extension of `a` by `b`.
pub fn trivial_extension<C: StarCgw + ?Sized>(
    c: &C,
    a: &C::Obj,
    b: &C::Obj,
) -> Result<ExtensionObj<C>> {
    let (m, e) = c.trivial_extension(a, b)?;
    extension_build(c, &m, &e)
}

/// A random composable row out of the initial object.
pub fn gen_row<C: StarCgw + ?Sized>(c: &C, rng: &mut crate::rng::Rng, n: usize) -> Vec<C::M> {
    let mut row = Vec::with_capacity(n);
    let mut current = c.initial();
    for _ in 0..n {
        let step = c.gen_sup_m(rng, &current);
        current = c.m_cod(&step);
        row.push(step);
    }
    row
}

/// Verifies every simplicial identity on `s` up to canonical isomorphism.
/// Returns the name of the first failing identity.
pub fn check_identities<C: StarCgw + ?Sized>(c: &C, s: &Staircase<C>) -> Result<()> {
    let n = s.level();
    let bad = |what: String| Err(Error::Precondition(what));
    if n >= 2 {
        for j in 1..=n {
            for i in 0..j {
                let lhs = face(c, &face(c, s, j)?, i)?;
                let rhs = face(c, &face(c, s, i)?, j - 1)?;
                if !lhs.iso(c, &rhs) {
                    return bad(format!("d_{i} d_{j} != d_{} d_{i}", j - 1));
                }
            }
        }
    }
    for j in 0..=n {
        for i in 0..=j {
            let lhs = degeneracy(c, &degeneracy(c, s, j)?, i)?;
            let rhs = degeneracy(c, &degeneracy(c, s, i)?, j + 1)?;
            if !lhs.iso(c, &rhs) {
                return bad(format!("s_{i} s_{j} != s_{} s_{i}", j + 1));
            }
        }
    }
    for j in 0..=n {
        let sj = degeneracy(c, s, j)?;
        for i in 0..=(n + 1) {
            let left = face(c, &sj, i)?;
            let ok = if i == j || i == j + 1 {
                left.iso(c, s)
            } else if i < j {
                left.iso(c, &degeneracy(c, &face(c, s, i)?, j - 1)?)
            } else {
                left.iso(c, &degeneracy(c, &face(c, s, i - 1)?, j)?)
            };
            if !ok {
                return bad(format!("d_{i} s_{j} identity fails"));
            }
        }
    }
    Ok(())
}

/// Seeded audit of the simplicial identities on random staircases of level
/// up to `max_level`.
pub fn identities_audit<C: StarCgw + 'static>(
    c: &C,
    max_level: usize,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> crate::cgw::AuditReport {
    let check = crate::cgw::Check::new("simplicial_identities", move |c: &C, rng| {
        let n = 1 + rng.below(max_level.max(1));
        let row = gen_row(c, rng, n);
        let s = match staircase_build(c, &row) {
            Ok(s) => s,
            Err(e) => return crate::cgw::Outcome::Fail(format!("build: {e}")),
        };
        match check_identities(c, &s) {
            Ok(()) => crate::cgw::Outcome::Pass,
            Err(e) => crate::cgw::Outcome::Fail(e.to_string()),
        }
    });
    crate::cgw::audit(c, &[check], trials, seed, jobs)
}
