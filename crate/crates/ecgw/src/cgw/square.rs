//! Square and cube shapes of the double-category layer.
//!
//! Layout conventions, fixed once for the whole crate:
//!
//! A mixed square has m-morphisms across and e-morphisms downward,
//!
//! ```text
//!        top (m)
//!    TL ────────▶ TR
//!     ┆ left        ┆ right      (e-morphisms point from the top object
//!     ▼           ▼             of each column to the bottom object)
//!    BL ────────▶ BR
//!       bottom (m)
//! ```
//!
//! A hom square has four arrows of a single role,
//!
//! ```text
//!        top
//!    TL ─────▶ TR
//!    left│        │right
//!      ▼        ▼
//!    BL ─────▶ BR
//!       bottom
//! ```

/// A mixed square: two m-morphisms (`top`, `bottom`) and two e-morphisms
/// (`left`, `right`).
#[derive(Debug, Clone, PartialEq)]
pub struct Mixed<M, E> {
    pub top: M,
    pub bottom: M,
    pub left: E,
    pub right: E,
}

/// A square of four arrows of one role.
#[derive(Debug, Clone, PartialEq)]
pub struct HomSq<A> {
    pub top: A,
    pub bottom: A,
    pub left: A,
    pub right: A,
}

/// Classification flags of a mixed square. The flags are cumulative:
/// a distinguished square is pseudo-commutative, and a pseudo-commutative
/// square commutes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MixedClass {
    pub commutes: bool,
    pub pseudo_commutative: bool,
    pub distinguished: bool,
}

/// Classification flags of a hom square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomClass {
    pub commutes: bool,
    pub good: bool,
}

/// A certified distinguished square: the square together with the
/// comparison isomorphisms produced by the kernel and cokernel transports.
#[derive(Debug, Clone)]
pub struct Distinguished<M, E> {
    pub square: Mixed<M, E>,
    pub kernel_iso: M,
    pub cokernel_iso: E,
}

/// A star pushout of a span out of `A`: the apex object and the two arrows
/// `B -> obj` (`left`, under the span's first leg) and `C -> obj` (`right`).
#[derive(Debug, Clone)]
pub struct Star<O, A> {
    pub obj: O,
    pub left: A,
    pub right: A,
}

/// A commutative cube of one arrow role: two parallel squares joined by
/// four edge arrows. `back` has corners `(A, B; C, D)` and `front` has
/// corners `(A', B'; C', D')`; the edges send unprimed to primed.
#[derive(Debug, Clone)]
pub struct Cube<A> {
    pub back: HomSq<A>,
    pub front: HomSq<A>,
    pub edge_a: A,
    pub edge_b: A,
    pub edge_c: A,
    pub edge_d: A,
}

/// The three axes along which a cube's star pushouts can be taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeAxis {
    /// Pushouts of the back and front spans (the default direction).
    Depth,
    /// Pushouts of the top-edge spans `(A; B, A')`, `(C; D, C')`.
    Width,
    /// Pushouts of the left-edge spans `(A; C, A')`, `(B; D, B')`.
    Height,
}

impl<A: Clone> Cube<A> {
    /// The face joining the `top` arrows of back and front.
    pub fn top_face(&self) -> HomSq<A> {
        HomSq {
            top: self.back.top.clone(),
            bottom: self.front.top.clone(),
            left: self.edge_a.clone(),
            right: self.edge_b.clone(),
        }
    }

    /// The face joining the `left` arrows of back and front.
    pub fn left_face(&self) -> HomSq<A> {
        HomSq {
            top: self.back.left.clone(),
            bottom: self.front.left.clone(),
            left: self.edge_a.clone(),
            right: self.edge_c.clone(),
        }
    }

    /// The face joining the `right` arrows of back and front.
    pub fn right_face(&self) -> HomSq<A> {
        HomSq {
            top: self.back.right.clone(),
            bottom: self.front.right.clone(),
            left: self.edge_b.clone(),
            right: self.edge_d.clone(),
        }
    }

    /// The face joining the `bottom` arrows of back and front.
    pub fn bottom_face(&self) -> HomSq<A> {
        HomSq {
            top: self.back.bottom.clone(),
            bottom: self.front.bottom.clone(),
            left: self.edge_c.clone(),
            right: self.edge_d.clone(),
        }
    }

    pub fn faces(&self) -> [HomSq<A>; 6] {
        [
            self.back.clone(),
            self.front.clone(),
            self.top_face(),
            self.left_face(),
            self.right_face(),
            self.bottom_face(),
        ]
    }

    /// The same cube presented with a different axis in the depth role, so
    /// that the southern construction can be run in any direction.
    pub fn rotated(&self, axis: CubeAxis) -> Cube<A> {
        match axis {
            CubeAxis::Depth => self.clone(),
            CubeAxis::Width => Cube {
                back: HomSq {
                    top: self.back.top.clone(),
                    left: self.edge_a.clone(),
                    right: self.edge_b.clone(),
                    bottom: self.front.top.clone(),
                },
                front: HomSq {
                    top: self.back.bottom.clone(),
                    left: self.edge_c.clone(),
                    right: self.edge_d.clone(),
                    bottom: self.front.bottom.clone(),
                },
                edge_a: self.back.left.clone(),
                edge_b: self.back.right.clone(),
                edge_c: self.front.left.clone(),
                edge_d: self.front.right.clone(),
            },
            CubeAxis::Height => Cube {
                back: HomSq {
                    top: self.back.left.clone(),
                    left: self.edge_a.clone(),
                    right: self.edge_c.clone(),
                    bottom: self.front.left.clone(),
                },
                front: HomSq {
                    top: self.back.right.clone(),
                    left: self.edge_b.clone(),
                    right: self.edge_d.clone(),
                    bottom: self.front.right.clone(),
                },
                edge_a: self.back.top.clone(),
                edge_b: self.back.bottom.clone(),
                edge_c: self.front.top.clone(),
                edge_d: self.front.bottom.clone(),
            },
        }
    }
}
