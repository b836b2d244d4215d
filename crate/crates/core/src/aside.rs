//! Generating objects of the partially wrapped Fukaya category of a glued surface.

use crate::gluing::{GluingShape, GluingSpec};
use crate::quiver::{ArrowLabel, GradedQuiver, VertexLabel};

pub fn build_aside(g: &GluingSpec) -> GradedQuiver {
    let mut q = GradedQuiver::new();
    let n = g.components();
    for i in 1..=n {
        let (rm, rp) = (g.minus_rank(i), g.plus_rank(i));
        let start = q.add_vertex(
            vec![
                VertexLabel::PMinus { comp: i, pos: 0 },
                VertexLabel::PPlus { comp: i, pos: 0 },
            ],
            0,
        );
        let mut xrow = vec![start];
        for j in 1..rm {
            xrow.push(q.add_vertex(vec![VertexLabel::PMinus { comp: i, pos: j }], 0));
        }
        let mut yrow = vec![start];
        for j in 1..rp {
            yrow.push(q.add_vertex(vec![VertexLabel::PPlus { comp: i, pos: j }], 0));
        }
        let end = q.add_vertex(
            vec![
                VertexLabel::PMinus { comp: i, pos: rm },
                VertexLabel::PPlus { comp: i, pos: rp },
            ],
            0,
        );
        xrow.push(end);
        yrow.push(end);
        for j in 0..rm {
            q.add_arrow(xrow[j], xrow[j + 1], 0, ArrowLabel::X { comp: i, pos: j });
        }
        for j in 0..rp {
            q.add_arrow(yrow[j], yrow[j + 1], 0, ArrowLabel::Y { comp: i, pos: j });
        }
    }
    for i in 1..=g.layer_count() {
        let r = g.layer_rank(i);
        let sigma = g.layer_perm(i);
        let next = g.next_component(i);
        for j in 0..r {
            let s = q.add_vertex(vec![VertexLabel::Strip { layer: i, pos: j }], 0);
            let t = r - 1 - sigma.apply(j);
            let plus = q.find(&VertexLabel::PPlus { comp: i, pos: j }).expect("y-row vertex");
            let minus = q
                .find(&VertexLabel::PMinus { comp: next, pos: t })
                .expect("x-row vertex");
            let a = q.add_arrow(s, plus, 0, ArrowLabel::A { node: i, pos: j });
            let b = q.add_arrow(s, minus, 0, ArrowLabel::B { node: i, pos: j });
            let y = q.find_arrow(&ArrowLabel::Y { comp: i, pos: j }).expect("y arrow");
            let x = q.find_arrow(&ArrowLabel::X { comp: next, pos: t }).expect("x arrow");
            q.add_relation(a, y).expect("composable");
            q.add_relation(b, x).expect("composable");
        }
    }
    q
}

/// `r0 + 3 sum r_i + r_n` for linear data, `3 sum r_i` for circular data.
pub fn object_count(g: &GluingSpec) -> usize {
    let interior: usize = match g.shape {
        GluingShape::Linear => g.ranks[1..g.ranks.len() - 1].iter().sum(),
        GluingShape::Circular => g.ranks.iter().sum(),
    };
    3 * interior + g.end_marks()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;
    use crate::quiver::path_dims;

    #[test]
    fn annulus_quiver() {
        let g = GluingSpec::linear(vec![1, 1], vec![]).unwrap();
        let q = build_aside(&g);
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.arrows.len(), 2);
        assert!(q.relations.is_empty());
        assert_eq!(q.find(&VertexLabel::PMinus { comp: 1, pos: 0 }), Some(0));
        assert_eq!(q.find(&VertexLabel::PPlus { comp: 1, pos: 1 }), Some(1));
        assert_eq!(path_dims(&q).unwrap().dim(0, 1, 0), 2);
    }

    #[test]
    fn swapped_linear_count() {
        let s = Permutation::transposition(3, 0, 1).unwrap();
        let g = GluingSpec::linear(vec![1, 3, 3, 1], vec![s.clone(), s]).unwrap();
        assert_eq!(build_aside(&g).vertex_count(), 20);
        assert_eq!(object_count(&g), 20);
    }

    #[test]
    fn circular_two() {
        let g = GluingSpec::circular(vec![2], vec![Permutation::identity(2)]).unwrap();
        let q = build_aside(&g);
        assert_eq!(q.vertex_count(), 6);
        assert_eq!(object_count(&g), 6);
        for j in 0..2 {
            let b = q.find_arrow(&ArrowLabel::B { node: 1, pos: j }).unwrap();
            let tgt = q.find(&VertexLabel::PMinus { comp: 1, pos: 1 - j }).unwrap();
            assert_eq!(q.arrows[b].tgt, tgt);
        }
        q.topological_order().unwrap();
    }

    #[test]
    fn x_after_a_survives() {
        let g = GluingSpec::linear(vec![1, 2, 1], vec![Permutation::identity(2)]).unwrap();
        let q = build_aside(&g);
        let a = q.find_arrow(&ArrowLabel::A { node: 1, pos: 0 }).unwrap();
        let x = q.find_arrow(&ArrowLabel::X { comp: 1, pos: 0 }).unwrap();
        let y = q.find_arrow(&ArrowLabel::Y { comp: 1, pos: 0 }).unwrap();
        assert!(!q.is_relation(a, x));
        assert!(q.is_relation(a, y));
    }
}
