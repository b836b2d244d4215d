use proptest::prelude::*;

use mirrorcheck::homology::{path_count_euler, Context, TwistedComplex};
use mirrorcheck::linalg::{self, Q};
use mirrorcheck::quiver::{find_isomorphism, map_equals, path_dims, ArrowLabel, GradedQuiver, VertexLabel};

/// A random acyclic quiver: arrows only go from lower to higher index.
fn quiver(n: usize, edges: &[(usize, usize, i64)], rel_mask: u64) -> GradedQuiver {
    let mut q = GradedQuiver::new();
    for v in 0..n {
        q.add_vertex(vec![VertexLabel::Named(format!("v{v}"))], 0);
    }
    for (k, &(s, t, d)) in edges.iter().enumerate() {
        let (s, t) = (s % n, t % n);
        let (s, t) = if s < t {
            (s, t)
        } else if t < s {
            (t, s)
        } else {
            continue;
        };
        q.add_arrow(s, t, d, ArrowLabel::Named(format!("e{k}")));
    }
    let pairs: Vec<(usize, usize)> = q
        .arrows
        .iter()
        .flat_map(|f| {
            q.arrows
                .iter()
                .filter(move |g| g.src == f.tgt)
                .map(move |g| (f.id, g.id))
        })
        .collect();
    for (bit, &(f, g)) in pairs.iter().enumerate() {
        if bit < 64 && rel_mask >> bit & 1 == 1 {
            q.add_relation(f, g).unwrap();
        }
    }
    q
}

fn arb_quiver() -> impl Strategy<Value = GradedQuiver> {
    (
        2usize..7,
        prop::collection::vec((0usize..7, 0usize..7, -1i64..=1), 0..12),
        any::<u64>(),
    )
        .prop_map(|(n, e, m)| quiver(n, &e, m))
}

fn arb_flat_quiver() -> impl Strategy<Value = GradedQuiver> {
    (
        2usize..7,
        prop::collection::vec((0usize..7, 0usize..7, 0i64..=0), 0..12),
        any::<u64>(),
    )
        .prop_map(|(n, e, m)| quiver(n, &e, m))
}

fn matrix_paths(q: &GradedQuiver) -> Vec<Vec<u64>> {
    let n = q.vertex_count();
    let mut adj = vec![vec![0u64; n]; n];
    for a in &q.arrows {
        adj[a.src][a.tgt] += 1;
    }
    let mut total = vec![vec![0u64; n]; n];
    let mut power: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u64).collect()).collect();
    for _ in 0..=n {
        for i in 0..n {
            for j in 0..n {
                total[i][j] += power[i][j];
            }
        }
        power = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| power[i][k] * adj[k][j]).sum()).collect())
            .collect();
    }
    total
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_path_counts_match_matrix_powers(q in arb_quiver()) {
        let mut free = q.clone();
        free.relations.clear();
        let table = path_dims(&free).unwrap();
        let m = matrix_paths(&free);
        for (u, row) in m.iter().enumerate() {
            for (v, &count) in row.iter().enumerate() {
                prop_assert_eq!(table.total(u, v) as u64, count);
            }
        }
    }

    #[test]
    fn deleting_a_relation_never_shrinks_homs(q in arb_quiver(), pick in any::<prop::sample::Index>()) {
        prop_assume!(!q.relations.is_empty());
        let rels: Vec<(usize, usize)> = q.relations.iter().copied().collect();
        let (f, g) = *pick.get(&rels);
        let before = path_dims(&q).unwrap();
        let after = path_dims(&q.without_relation(f, g)).unwrap();
        for (&key, &d) in &before.dims {
            prop_assert!(after.dims.get(&key).copied().unwrap_or(0) >= d);
        }
        let (s, t) = (q.arrows[f].src, q.arrows[g].tgt);
        prop_assert!(after.total(s, t) > before.total(s, t));
    }

    #[test]
    fn relabelled_quivers_match(q in arb_quiver(), seed in any::<u64>()) {
        let n = q.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = q.permute_vertices(&perm);
        let rep = map_equals(&q, &p, &perm).unwrap();
        prop_assert!(rep.equal);
        let (t1, t2) = (path_dims(&q).unwrap(), path_dims(&p).unwrap());
        for (&(u, v, d), &c) in &t1.dims {
            prop_assert_eq!(t2.dim(perm[u], perm[v], d), c);
        }
        let iso = find_isomorphism(&q, &p);
        prop_assert!(iso.is_some());
        prop_assert!(map_equals(&q, &p, &iso.unwrap()).unwrap().equal);
    }

    #[test]
    fn cones_of_arrows(q in arb_flat_quiver(), pick in any::<prop::sample::Index>(), other in any::<prop::sample::Index>()) {
        prop_assume!(!q.arrows.is_empty());
        let a = &q.arrows[pick.index(q.arrows.len())];
        let ctx = Context::new(q.clone()).unwrap();
        let cone = TwistedComplex::chain(&q, &[(a.src, 1), (a.tgt, 0)], &[a.id]).unwrap();
        let p = TwistedComplex::projective(other.index(q.vertex_count()));
        for (x, y) in [(&cone, &cone), (&p, &cone), (&cone, &p)] {
            let hc = ctx.hom(x, y).unwrap();
            let h = hc.cohomology();
            prop_assert_eq!(h.euler(), path_count_euler(&ctx, x, y));
            prop_assert_eq!(h.euler(), hc.chain_dims().euler());
        }
        let end = ctx.hom(&cone, &cone).unwrap();
        let id = end.identity().unwrap();
        prop_assert!(end.is_cocycle(&id));
        prop_assert!(!end.is_coboundary(&id));
        prop_assert!(end.cohomology().get(0) >= 1);
    }

    #[test]
    fn bareiss_rank_matches_rational(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..6)) {
        let m: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| linalg::q(x)).collect()).collect();
        prop_assert_eq!(linalg::rank(&m), linalg::rank_rational(&m));
        let k = linalg::kernel(&m, 5);
        prop_assert_eq!(k.len() + linalg::rank(&m), 5);
    }
}
