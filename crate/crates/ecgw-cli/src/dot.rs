//! Plain-text and DOT renderings of staircases.

use ecgw::cgw::StarCgw;
use ecgw::sdot::Staircase;

/// One line per cell plus one per arrow, in grid order.
pub fn describe<C: StarCgw>(c: &C, s: &Staircase<C>) -> String {
    let n = s.level();
    let mut out = String::new();
    out.push_str(&format!("staircase level {n}\n"));
    for i in 0..=n {
        for j in i..=n {
            out.push_str(&format!("A[{i},{j}] = {}\n", c.describe_obj(s.obj(i, j))));
        }
    }
    for i in 0..=n {
        for j in i..n {
            out.push_str(&format!(
                "m A[{i},{j}] -> A[{i},{}]: {}\n",
                j + 1,
                c.describe_m(s.horiz(i, j))
            ));
        }
    }
    for i in 0..n {
        for j in (i + 1)..=n {
            out.push_str(&format!(
                "e A[{},{j}] -> A[{i},{j}]: {}\n",
                i + 1,
                c.describe_e(s.vert(i, j))
            ));
        }
    }
    out.push_str(&format!(
        "squares: {} distinguished\n",
        s.squares().count()
    ));
    out
}

/// DOT graph text with nodes labeled by the object names.
pub fn render<C: StarCgw>(c: &C, s: &Staircase<C>) -> String {
    let n = s.level();
    let mut out = String::new();
    out.push_str("digraph staircase {\n");
    out.push_str("  rankdir=LR;\n  node [shape=box];\n");
    for i in 0..=n {
        for j in i..=n {
            out.push_str(&format!(
                "  a_{i}_{j} [label=\"A[{i},{j}] {}\"];\n",
                c.describe_obj(s.obj(i, j)).replace('"', "'")
            ));
        }
    }
    for i in 0..=n {
        for j in i..n {
            out.push_str(&format!("  a_{i}_{j} -> a_{i}_{} [style=solid];\n", j + 1));
        }
    }
    for i in 0..n {
        for j in (i + 1)..=n {
            out.push_str(&format!(
                "  a_{}_{j} -> a_{i}_{j} [style=dashed];\n",
                i + 1
            ));
        }
    }
    out.push_str("}\n");
    out
}
