use mirrorcheck::aside::build_aside;
use mirrorcheck::bside::{build_bside, build_bside_with_base};
use mirrorcheck::gluing::{from_curve, GluingSpec, StackyCurveSpec};
use mirrorcheck::mirror::{
    base_offsets, canonical_correspondence, gluing_for_base, search_ring_mirror, verify_quivers, verify_theorem_a,
};
use mirrorcheck::perm::Permutation;
use mirrorcheck::quiver::{find_isomorphism, map_equals, ArrowLabel, VertexLabel};
use mirrorcheck::surface::oracle_topology;
use mirrorcheck::sweep::{curve_sweep, subsample, DEFAULT_SEED};

#[test]
fn linear_121_matches_chain_121() {
    let c = StackyCurveSpec::chain(vec![1, 2, 1], vec![1]).unwrap();
    let g = GluingSpec::linear(vec![1, 2, 1], vec![Permutation::identity(2)]).unwrap();
    assert_eq!(from_curve(&c).unwrap(), g);
    let (bq, aq) = (build_bside(&c), build_aside(&g));
    let corr = canonical_correspondence(&c, &bq, &aq).unwrap();
    assert!(map_equals(&bq, &aq, &corr.vertices).unwrap().equal);
}

#[test]
fn nodal_chain_correspondence_by_name() {
    let c = StackyCurveSpec::chain(vec![1, 1, 1], vec![0]).unwrap();
    let (bq, aq) = (build_bside(&c), build_aside(&from_curve(&c).unwrap()));
    assert_eq!(bq.vertex_count(), 5);
    let corr = canonical_correspondence(&c, &bq, &aq).unwrap();
    let pairs = [
        (
            VertexLabel::Proj { comp: 1, j: 0, m: -1 },
            VertexLabel::PMinus { comp: 1, pos: 0 },
        ),
        (
            VertexLabel::Proj { comp: 1, j: 1, m: -1 },
            VertexLabel::PMinus { comp: 1, pos: 1 },
        ),
        (
            VertexLabel::Proj { comp: 2, j: 0, m: -1 },
            VertexLabel::PMinus { comp: 2, pos: 0 },
        ),
        (
            VertexLabel::Proj { comp: 2, j: 0, m: 0 },
            VertexLabel::PPlus { comp: 2, pos: 1 },
        ),
        (
            VertexLabel::Simple { node: 1, twist: 0 },
            VertexLabel::Strip { layer: 1, pos: 0 },
        ),
    ];
    for (b, a) in pairs {
        assert_eq!(corr.vertices[bq.find(&b).unwrap()], aq.find(&a).unwrap(), "{b}");
    }
    // y a = 0 and x b = 0 on both sides
    for q in [&bq, &aq] {
        let a = q.find_arrow(&ArrowLabel::A { node: 1, pos: 0 }).unwrap();
        let b = q.find_arrow(&ArrowLabel::B { node: 1, pos: 0 }).unwrap();
        let y = q.find_arrow(&ArrowLabel::Y { comp: 1, pos: 0 }).unwrap();
        let x = q.find_arrow(&ArrowLabel::X { comp: 2, pos: 0 }).unwrap();
        assert!(q.is_relation(a, y) && q.is_relation(b, x));
        assert_eq!(q.relations.len(), 2);
    }
}

#[test]
fn chain_with_two_nodes_passes() {
    let c = StackyCurveSpec::chain(vec![1, 2, 2, 1], vec![1, 1]).unwrap();
    let rep = verify_theorem_a(&c).unwrap();
    assert!(rep.pass(), "{:?}", rep.checks);
    assert_eq!(rep.oracle.genus, 0);
}

#[test]
fn ring_three_passes() {
    let rep = verify_theorem_a(&StackyCurveSpec::ring(vec![3], vec![1]).unwrap()).unwrap();
    assert!(rep.pass());
    assert_eq!((rep.oracle.genus, rep.oracle.boundaries.clone()), (2, vec![6]));
}

#[test]
fn sweep_n2_r5() {
    for c in curve_sweep(2, 5) {
        let rep = verify_theorem_a(&c).unwrap();
        assert!(rep.pass(), "{c:?}: {:?}", rep.checks);
    }
}

#[test]
fn isomorphism_found_without_correspondence() {
    for c in subsample(&curve_sweep(2, 4), 12, DEFAULT_SEED) {
        let (bq, aq) = (build_bside(&c), build_aside(&from_curve(&c).unwrap()));
        let iso = find_isomorphism(&bq, &aq).unwrap_or_else(|| panic!("{c:?}"));
        assert!(map_equals(&bq, &aq, &iso).unwrap().equal);
    }
}

#[test]
fn removed_relation_is_reported() {
    let c = StackyCurveSpec::ring(vec![3], vec![2]).unwrap();
    let bq = build_bside(&c);
    let aq = build_aside(&from_curve(&c).unwrap());
    let a = aq.find_arrow(&ArrowLabel::A { node: 1, pos: 1 }).unwrap();
    let y = aq.find_arrow(&ArrowLabel::Y { comp: 1, pos: 1 }).unwrap();
    let rep = verify_quivers(&c, &bq, &aq.without_relation(a, y)).unwrap();
    assert!(!rep.pass());
    let quivers = &rep.checks[0];
    assert!(!quivers.pass);
    assert!(
        quivers.detail.contains("(a(1,1), y(1,1)) of first quiver missing"),
        "{}",
        quivers.detail
    );
}

#[test]
fn changed_degree_is_reported() {
    let c = StackyCurveSpec::chain(vec![1, 3, 1], vec![2]).unwrap();
    let bq = build_bside(&c);
    let mut aq = build_aside(&from_curve(&c).unwrap());
    let x = aq.find_arrow(&ArrowLabel::X { comp: 2, pos: 1 }).unwrap();
    aq.arrows[x].degree = 1;
    let rep = verify_quivers(&c, &bq, &aq).unwrap();
    assert!(!rep.checks[0].pass);
    assert!(
        rep.checks[0].detail.contains("P-(2,1) -> P-(2,2)"),
        "{}",
        rep.checks[0].detail
    );
    assert!(rep.checks[0]
        .detail
        .contains("in degree 0: 1 in first quiver, 0 in second"));
}

#[test]
fn wrong_permutation_is_reported() {
    let c = StackyCurveSpec::chain(vec![1, 3, 1], vec![1]).unwrap();
    let bq = build_bside(&c);
    let wrong = GluingSpec::linear(vec![1, 3, 1], vec![Permutation::identity(3)]).unwrap();
    let rep = verify_quivers(&c, &bq, &build_aside(&wrong)).unwrap();
    assert!(!rep.checks[0].pass);
    assert!(
        rep.checks[0].detail.starts_with("arrows S(1,"),
        "{}",
        rep.checks[0].detail
    );
    // the surfaces differ too: identity gives genus 0, k = 1 gives genus 1
    assert_ne!(oracle_topology(&wrong).genus, rep.oracle.genus);
}

#[test]
fn bases_match_shifted_gluings() {
    let choices: Vec<(i64, i64)> = (-2..=2).flat_map(|j| (-2..=2).map(move |m| (j, m))).collect();
    for c in curve_sweep(2, 3) {
        let default = build_bside(&c);
        let topo = oracle_topology(&from_curve(&c).unwrap());
        let mut all = vec![Vec::new()];
        for _ in 0..c.components() {
            all = all
                .into_iter()
                .flat_map(|b: Vec<(i64, i64)>| {
                    choices.iter().map(move |&x| {
                        let mut b = b.clone();
                        b.push(x);
                        b
                    })
                })
                .collect();
        }
        let stride = if c.components() == 1 { 1 } else { 11 };
        for bases in all.iter().step_by(stride) {
            let bq = build_bside_with_base(&c, bases).unwrap();
            let g = gluing_for_base(&c, bases).unwrap();
            assert!(find_isomorphism(&bq, &build_aside(&g)).is_some(), "{c:?} {bases:?}");
            assert_eq!(oracle_topology(&g), topo);
            if base_offsets(&c, bases).unwrap().iter().all(|&o| o == 0) {
                assert!(find_isomorphism(&default, &bq).is_some(), "{c:?} {bases:?}");
            }
        }
    }
}

#[test]
fn ring_mirror_search() {
    assert_eq!(search_ring_mirror(2, 1).unwrap().twists, vec![1]);
    for genus in 2..=4 {
        for punctures in 1..=2 {
            let rep = search_ring_mirror(genus, punctures).unwrap();
            assert!(rep.pass(), "{rep:?}");
        }
    }
    assert!(search_ring_mirror(1, 1).is_err());
    assert!(search_ring_mirror(3, 0).is_err());
}
