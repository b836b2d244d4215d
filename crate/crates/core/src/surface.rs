//! Brute-force topology: glue explicit polygons and trace the boundary.
//!
//! Each component is a cylinder cut into two faces by two seams. Both of its
//! circles are listed in the order induced by the surface orientation, as
//! alternating `slot, gap, slot, gap, ..`. A strip is a quadrilateral whose
//! two ends are glued to a plus slot of one component and a minus slot of the
//! next, so every face keeps the orientation it was built with. Every gap and
//! every arc of a distinguished end circle carries one marked point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gluing::{GluingSpec, SurfaceTopology};

/// Half-edge structure. Darts fixed by `edge_pairing` lie on the boundary.
#[derive(Clone, Debug, Serialize)]
pub struct CombinatorialMap {
    pub edge_pairing: Vec<usize>,
    pub next_around_face: Vec<usize>,
    pub face_of: Vec<usize>,
    pub marked: Vec<bool>,
    pub labels: Vec<String>,
    pub faces: usize,
}

#[derive(Default)]
struct Builder {
    edge_labels: Vec<String>,
    edge_marked: Vec<bool>,
    faces: Vec<Vec<(usize, bool)>>,
}

impl Builder {
    fn edge(&mut self, label: String, marked: bool) -> usize {
        self.edge_labels.push(label);
        self.edge_marked.push(marked);
        self.edge_labels.len() - 1
    }

    fn face(&mut self, sides: Vec<(usize, bool)>) {
        self.faces.push(sides);
    }

    fn finish(self) -> CombinatorialMap {
        let mut next = Vec::new();
        let mut face_of = Vec::new();
        let mut labels = Vec::new();
        let mut marked = Vec::new();
        let mut occurrences: Vec<Vec<(usize, bool)>> = vec![Vec::new(); self.edge_labels.len()];
        for (f, sides) in self.faces.iter().enumerate() {
            let base = next.len();
            for (k, &(e, fwd)) in sides.iter().enumerate() {
                let dart = base + k;
                next.push(base + (k + 1) % sides.len());
                face_of.push(f);
                let arrow = if fwd { "" } else { "~" };
                labels.push(format!("{arrow}{}", self.edge_labels[e]));
                marked.push(self.edge_marked[e]);
                occurrences[e].push((dart, fwd));
            }
        }
        let mut pairing: Vec<usize> = (0..next.len()).collect();
        for (e, occ) in occurrences.iter().enumerate() {
            match occ.as_slice() {
                [_] => {}
                [(d1, f1), (d2, f2)] => {
                    assert_ne!(f1, f2, "edge {} glued without reversing", self.edge_labels[e]);
                    pairing[*d1] = *d2;
                    pairing[*d2] = *d1;
                }
                _ => panic!("edge {} used {} times", self.edge_labels[e], occ.len()),
            }
        }
        for (d, &p) in pairing.iter().enumerate() {
            if p != d {
                marked[d] = false;
            }
        }
        CombinatorialMap {
            edge_pairing: pairing,
            next_around_face: next,
            face_of,
            marked,
            labels,
            faces: self.faces.len(),
        }
    }
}

struct Circle {
    arcs: Vec<usize>,
    slots: Vec<usize>,
}

fn circle(b: &mut Builder, name: &str, count: usize, with_slots: bool) -> Circle {
    let mut arcs = Vec::new();
    let mut slots = Vec::new();
    for j in 0..count {
        if with_slots {
            let s = b.edge(format!("{name}.slot{j}"), false);
            slots.push(s);
            arcs.push(s);
            arcs.push(b.edge(format!("{name}.gap{j}"), true));
        } else {
            arcs.push(b.edge(format!("{name}.mark{j}"), true));
        }
    }
    Circle { arcs, slots }
}

pub fn build_map(g: &GluingSpec) -> CombinatorialMap {
    let mut b = Builder::default();
    let n = g.components();
    let mut plus = Vec::with_capacity(n);
    let mut minus = Vec::with_capacity(n);
    for i in 1..=n {
        let p = circle(&mut b, &format!("C{i}+"), g.plus_rank(i), g.outgoing_layer(i).is_some());
        let q = circle(
            &mut b,
            &format!("C{i}-"),
            g.minus_rank(i),
            g.incoming_layer(i).is_some(),
        );
        let s1 = b.edge(format!("C{i}.seam1"), false);
        let s2 = b.edge(format!("C{i}.seam2"), false);
        let (h, hq) = (p.arcs.len() / 2, q.arcs.len() / 2);
        let mut face_a: Vec<(usize, bool)> = p.arcs[..h].iter().map(|&e| (e, true)).collect();
        face_a.push((s2, true));
        face_a.extend(q.arcs[hq..].iter().map(|&e| (e, true)));
        face_a.push((s1, true));
        let mut face_b: Vec<(usize, bool)> = p.arcs[h..].iter().map(|&e| (e, true)).collect();
        face_b.push((s1, false));
        face_b.extend(q.arcs[..hq].iter().map(|&e| (e, true)));
        face_b.push((s2, false));
        b.face(face_a);
        b.face(face_b);
        plus.push(p);
        minus.push(q);
    }
    for i in 1..=g.layer_count() {
        let r = g.layer_rank(i);
        let sigma = g.layer_perm(i);
        let target = g.next_component(i);
        for j in 0..r {
            let t = r - 1 - sigma.apply(j);
            let side1 = b.edge(format!("L{i}.strip{j}.side1"), false);
            let side2 = b.edge(format!("L{i}.strip{j}.side2"), false);
            b.face(vec![
                (plus[i - 1].slots[j], false),
                (side1, true),
                (minus[target - 1].slots[t], false),
                (side2, true),
            ]);
        }
    }
    b.finish()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut y = x;
        while self.0[y] != root {
            let up = self.0[y];
            self.0[y] = root;
            y = up;
        }
        root
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

impl CombinatorialMap {
    pub fn darts(&self) -> usize {
        self.edge_pairing.len()
    }

    pub fn is_boundary(&self, d: usize) -> bool {
        self.edge_pairing[d] == d
    }

    /// Vertices are classes of dart start corners; a glued pair identifies
    /// the start of each dart with the end of the other.
    pub fn vertex_count(&self) -> usize {
        let mut uf = UnionFind::new(self.darts());
        for d in 0..self.darts() {
            let e = self.edge_pairing[d];
            if e != d {
                uf.union(d, self.next_around_face[e]);
            }
        }
        uf.classes()
    }

    pub fn edge_count(&self) -> usize {
        let glued = (0..self.darts()).filter(|&d| !self.is_boundary(d)).count();
        glued / 2 + (self.darts() - glued)
    }

    pub fn euler(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.faces as i64
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.darts());
        for d in 0..self.darts() {
            uf.union(d, self.next_around_face[d]);
            uf.union(d, self.edge_pairing[d]);
        }
        uf.classes() == 1
    }

    /// Next boundary dart after the boundary dart `d`, turning around its end vertex.
    pub fn boundary_successor(&self, d: usize) -> usize {
        let mut e = self.next_around_face[d];
        while !self.is_boundary(e) {
            e = self.next_around_face[self.edge_pairing[e]];
        }
        e
    }

    /// Boundary walks as lists of darts.
    pub fn boundary_walks(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.darts()];
        let mut walks = Vec::new();
        for start in 0..self.darts() {
            if seen[start] || !self.is_boundary(start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                walk.push(d);
                d = self.boundary_successor(d);
            }
            walks.push(walk);
        }
        walks
    }

    pub fn check_invariants(&self) -> Result<()> {
        let n = self.darts();
        for d in 0..n {
            if self.edge_pairing[self.edge_pairing[d]] != d {
                return Err(Error::InvalidSpec(format!("pairing is not an involution at {d}")));
            }
            if self.marked[d] && !self.is_boundary(d) {
                return Err(Error::InvalidSpec(format!("marked dart {d} is interior")));
            }
        }
        let mut hit = vec![false; n];
        for &x in &self.next_around_face {
            if hit[x] {
                return Err(Error::InvalidSpec("face successor is not a bijection".into()));
            }
            hit[x] = true;
        }
        if !self.is_connected() {
            return Err(Error::InvalidSpec("map is disconnected".into()));
        }
        Ok(())
    }
}

pub fn boundary_components(m: &CombinatorialMap) -> SurfaceTopology {
    let boundaries: Vec<usize> = m
        .boundary_walks()
        .iter()
        .map(|w| w.iter().filter(|&&d| m.marked[d]).count())
        .collect();
    SurfaceTopology::from_euler(m.euler(), boundaries).expect("oracle genus must be integral")
}

/// Builds the map and reads off its topology.
pub fn oracle_topology(g: &GluingSpec) -> SurfaceTopology {
    let m = build_map(g);
    m.check_invariants().expect("glued map must be a connected surface");
    boundary_components(&m)
}
