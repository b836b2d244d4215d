//! The strong exceptional collection of a balloon chain or ring.
//!
//! Component `i` contributes the bundles `P_i(j, m)` on an x-row and a y-row
//! starting at its base `(j_i, m_i)`; node `i` contributes the torsion
//! objects `S_i{c}`, `c` in `Z/r_i`, placed at shift -1.

use crate::error::{Error, Result};
use crate::gluing::StackyCurveSpec;
use crate::quiver::{ArrowLabel, GradedQuiver, VertexLabel};

pub const DEFAULT_BASE: (i64, i64) = (0, -1);

pub fn build_bside(c: &StackyCurveSpec) -> GradedQuiver {
    let bases = vec![DEFAULT_BASE; c.components()];
    build_bside_with_base(c, &bases).expect("default bases are valid")
}

pub fn build_bside_with_base(c: &StackyCurveSpec, bases: &[(i64, i64)]) -> Result<GradedQuiver> {
    if bases.len() != c.components() {
        return Err(Error::InvalidSpec(format!(
            "{} bases for {} components",
            bases.len(),
            c.components()
        )));
    }
    let mut q = GradedQuiver::new();
    let mut xrows = Vec::new();
    let mut yrows = Vec::new();
    for i in 1..=c.components() {
        let (j0, m0) = bases[i - 1];
        let (rm, rp) = (c.minus_rank(i) as i64, c.plus_rank(i) as i64);
        let proj = |j: i64, m: i64| VertexLabel::Proj { comp: i, j, m };
        let start = q.add_vertex(vec![proj(j0, m0)], 0);
        let mut xrow = vec![start];
        for t in 1..rm {
            xrow.push(q.add_vertex(vec![proj(j0 + t, m0)], 0));
        }
        let mut yrow = vec![start];
        for t in 1..rp {
            yrow.push(q.add_vertex(vec![proj(j0, m0 + t)], 0));
        }
        let end = q.add_vertex(vec![proj(j0 + rm, m0), proj(j0, m0 + rp)], 0);
        xrow.push(end);
        yrow.push(end);
        let xs: Vec<usize> = (0..rm as usize)
            .map(|t| q.add_arrow(xrow[t], xrow[t + 1], 0, ArrowLabel::X { comp: i, pos: t }))
            .collect();
        let ys: Vec<usize> = (0..rp as usize)
            .map(|t| q.add_arrow(yrow[t], yrow[t + 1], 0, ArrowLabel::Y { comp: i, pos: t }))
            .collect();
        xrows.push((xrow, xs));
        yrows.push((yrow, ys));
    }
    for i in 1..=c.node_count() {
        let r = c.node_rank(i);
        let rr = r as i64;
        let k = c.twist(i);
        let next = c.next_component(i);
        let simples: Vec<usize> = (0..r)
            .map(|twist| q.add_vertex(vec![VertexLabel::Simple { node: i, twist }], -1))
            .collect();
        let (j_next, _) = bases[next - 1];
        let (_, m_here) = bases[i - 1];
        for j in 0..r {
            let src = simples[(-j_next - j as i64 - 1).rem_euclid(rr) as usize];
            let (row, xs) = &xrows[next - 1];
            let b = q.add_arrow(src, row[j], 0, ArrowLabel::B { node: i, pos: j });
            q.add_relation(b, xs[j]).expect("composable");
        }
        for m in 0..r {
            let src = simples[(-k * (m_here + m as i64 + 1)).rem_euclid(rr) as usize];
            let (row, ys) = &yrows[i - 1];
            let a = q.add_arrow(src, row[m], 0, ArrowLabel::A { node: i, pos: m });
            q.add_relation(a, ys[m]).expect("composable");
        }
    }
    Ok(q)
}
