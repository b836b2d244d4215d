//! Graded quivers with quadratic monomial relations.
//!
//! Arrows are morphisms: an arrow `u -> v` is an element of `Hom(P(u), P(v))`
//! and a path is read in traversal order, first arrow first. A relation
//! `(f, g)` says that the path `f` then `g` (the composite `g . f`) vanishes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexLabel {
    /// A-side object on the x-row of component `comp`.
    PMinus {
        comp: usize,
        pos: usize,
    },
    /// A-side object on the y-row of component `comp`.
    PPlus {
        comp: usize,
        pos: usize,
    },
    /// A-side strip object of layer `layer`.
    Strip {
        layer: usize,
        pos: usize,
    },
    /// B-side vector bundle `P_comp(j, m)`.
    Proj {
        comp: usize,
        j: i64,
        m: i64,
    },
    /// B-side torsion object `S_node{twist}`.
    Simple {
        node: usize,
        twist: usize,
    },
    Named(String),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::PMinus { comp, pos } => write!(f, "P-({comp},{pos})"),
            VertexLabel::PPlus { comp, pos } => write!(f, "P+({comp},{pos})"),
            VertexLabel::Strip { layer, pos } => write!(f, "S({layer},{pos})"),
            VertexLabel::Proj { comp, j, m } => write!(f, "P{comp}({j},{m})"),
            VertexLabel::Simple { node, twist } => write!(f, "S{node}{{{twist}}}"),
            VertexLabel::Named(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowLabel {
    X { comp: usize, pos: usize },
    Y { comp: usize, pos: usize },
    A { node: usize, pos: usize },
    B { node: usize, pos: usize },
    Named(String),
}

impl fmt::Display for ArrowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArrowLabel::X { comp, pos } => write!(f, "x({comp},{pos})"),
            ArrowLabel::Y { comp, pos } => write!(f, "y({comp},{pos})"),
            ArrowLabel::A { node, pos } => write!(f, "a({node},{pos})"),
            ArrowLabel::B { node, pos } => write!(f, "b({node},{pos})"),
            ArrowLabel::Named(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    /// All names of this object; identified objects carry several.
    pub labels: Vec<VertexLabel>,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: usize,
    pub src: usize,
    pub tgt: usize,
    pub degree: i64,
    pub label: ArrowLabel,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedQuiver {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    pub relations: BTreeSet<(usize, usize)>,
}

/// A nonzero path. Identity paths have no arrows and `src == tgt`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub src: usize,
    pub tgt: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn identity(v: usize) -> Self {
        Path {
            src: v,
            tgt: v,
            arrows: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl GradedQuiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, labels: Vec<VertexLabel>, shift: i64) -> usize {
        self.vertices.push(Vertex { labels, shift });
        self.vertices.len() - 1
    }

    pub fn add_arrow(&mut self, src: usize, tgt: usize, degree: i64, label: ArrowLabel) -> usize {
        let id = self.arrows.len();
        self.arrows.push(Arrow {
            id,
            src,
            tgt,
            degree,
            label,
        });
        id
    }

    /// Declares `g . f = 0`.
    pub fn add_relation(&mut self, f: usize, g: usize) -> Result<()> {
        if self.arrows[f].tgt != self.arrows[g].src {
            return Err(Error::InvalidSpec(format!(
                "relation ({}, {}) is not composable",
                self.arrows[f].label, self.arrows[g].label
            )));
        }
        self.relations.insert((f, g));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn find(&self, label: &VertexLabel) -> Option<usize> {
        self.vertices.iter().position(|v| v.labels.contains(label))
    }

    pub fn find_arrow(&self, label: &ArrowLabel) -> Option<usize> {
        self.arrows.iter().position(|a| &a.label == label)
    }

    pub fn name(&self, v: usize) -> String {
        let names: Vec<String> = self.vertices[v].labels.iter().map(|l| l.to_string()).collect();
        names.join("=")
    }

    pub fn out_arrows(&self, v: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.src == v)
    }

    pub fn in_arrows(&self, v: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.tgt == v)
    }

    pub fn is_relation(&self, f: usize, g: usize) -> bool {
        self.relations.contains(&(f, g))
    }

    pub fn path_degree(&self, p: &Path) -> i64 {
        p.arrows.iter().map(|&a| self.arrows[a].degree).sum()
    }

    /// `p` followed by `q`, or `None` if the junction is a relation.
    pub fn concat(&self, p: &Path, q: &Path) -> Option<Path> {
        assert_eq!(p.tgt, q.src, "paths are not composable");
        if let (Some(&f), Some(&g)) = (p.arrows.last(), q.arrows.first()) {
            if self.is_relation(f, g) {
                return None;
            }
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path {
            src: p.src,
            tgt: q.tgt,
            arrows,
        })
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.is_identity() {
            return format!("id[{}]", self.name(p.src));
        }
        let parts: Vec<String> = p.arrows.iter().map(|&a| self.arrows[a].label.to_string()).collect();
        parts.join(" ")
    }

    pub fn validate(&self) -> Result<()> {
        for (k, a) in self.arrows.iter().enumerate() {
            if a.id != k || a.src >= self.vertices.len() || a.tgt >= self.vertices.len() {
                return Err(Error::InvalidSpec(format!("bad arrow {k}")));
            }
        }
        for &(f, g) in &self.relations {
            if f >= self.arrows.len() || g >= self.arrows.len() {
                return Err(Error::InvalidSpec(format!("relation ({f}, {g}) out of range")));
            }
            if self.arrows[f].tgt != self.arrows[g].src {
                return Err(Error::InvalidSpec(format!("relation ({f}, {g}) is not composable")));
            }
        }
        Ok(())
    }

    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indeg = vec![0usize; self.vertices.len()];
        for a in &self.arrows {
            indeg[a.tgt] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.vertices.len()).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in self.out_arrows(v) {
                indeg[a.tgt] -= 1;
                if indeg[a.tgt] == 0 {
                    queue.push_back(a.tgt);
                }
            }
        }
        if order.len() != self.vertices.len() {
            return Err(Error::CyclicQuiver);
        }
        Ok(order)
    }

    /// Same objects with every arrow reversed; relation `(f, g)` becomes `(g, f)`.
    pub fn opposite(&self) -> Self {
        GradedQuiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    src: a.tgt,
                    tgt: a.src,
                    ..a.clone()
                })
                .collect(),
            relations: self.relations.iter().map(|&(f, g)| (g, f)).collect(),
        }
    }

    pub fn without_relation(&self, f: usize, g: usize) -> Self {
        let mut out = self.clone();
        out.relations.remove(&(f, g));
        out
    }

    /// Relabels vertices: vertex `v` of `self` becomes vertex `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Self {
        let mut vertices = self.vertices.clone();
        for (v, &w) in perm.iter().enumerate() {
            vertices[w] = self.vertices[v].clone();
        }
        GradedQuiver {
            vertices,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    src: perm[a.src],
                    tgt: perm[a.tgt],
                    ..a.clone()
                })
                .collect(),
            relations: self.relations.clone(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n  rankdir=LR;\n");
        for v in 0..self.vertices.len() {
            out.push_str(&format!("  v{v} [label=\"{}\"];\n", self.name(v)));
        }
        for a in &self.arrows {
            let deg = if a.degree == 0 {
                String::new()
            } else {
                format!(" [{}]", a.degree)
            };
            out.push_str(&format!("  v{} -> v{} [label=\"{}{deg}\"];\n", a.src, a.tgt, a.label));
        }
        for &(f, g) in &self.relations {
            out.push_str(&format!(
                "  // relation: {} then {} = 0\n",
                self.arrows[f].label, self.arrows[g].label
            ));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomTable {
    /// Number of basis paths per (source, target, degree).
    pub dims: BTreeMap<(usize, usize, i64), usize>,
    /// Basis paths per (source, target).
    pub basis: BTreeMap<(usize, usize), Vec<Path>>,
}

impl HomTable {
    pub fn paths(&self, src: usize, tgt: usize) -> &[Path] {
        self.basis.get(&(src, tgt)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, src: usize, tgt: usize, degree: i64) -> usize {
        self.dims.get(&(src, tgt, degree)).copied().unwrap_or(0)
    }

    pub fn total(&self, src: usize, tgt: usize) -> usize {
        self.paths(src, tgt).len()
    }
}

/// All nonzero paths, by dynamic programming over a topological order with
/// the last arrow as state.
pub fn path_dims(q: &GradedQuiver) -> Result<HomTable> {
    let order = q.topological_order()?;
    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
    let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
    for a in &q.arrows {
        incoming[a.tgt].push(a.id);
        outgoing[a.src].push(a.id);
    }
    let mut table = HomTable::default();
    for &u in &order {
        let mut ending: Vec<Vec<Path>> = vec![Vec::new(); q.arrows.len()];
        for &v in order.iter().skip_while(|&&w| w != u) {
            let mut here: Vec<Path> = Vec::new();
            if v == u {
                here.push(Path::identity(u));
            }
            for &b in &incoming[v] {
                here.extend(ending[b].iter().cloned());
            }
            for &a in &outgoing[v] {
                let step = Path {
                    src: v,
                    tgt: q.arrows[a].tgt,
                    arrows: vec![a],
                };
                let extended: Vec<Path> = here.iter().filter_map(|p| q.concat(p, &step)).collect();
                ending[a] = extended;
            }
            if !here.is_empty() {
                for p in &here {
                    *table.dims.entry((u, v, q.path_degree(p))).or_insert(0) += 1;
                }
                table.basis.insert((u, v), here);
            }
        }
    }
    Ok(table)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapReport {
    pub equal: bool,
    pub diffs: Vec<String>,
    /// Arrow `a` of the first quiver goes to `arrow_map[a]` of the second.
    pub arrow_map: Option<Vec<usize>>,
}

fn check_bijection(n1: usize, n2: usize, vmap: &[usize]) -> Result<()> {
    if n1 != n2 || vmap.len() != n1 {
        return Err(Error::NotBijective(format!(
            "{} entries for quivers with {n1} and {n2} vertices",
            vmap.len()
        )));
    }
    let mut hit = vec![false; n2];
    for &w in vmap {
        if w >= n2 || hit[w] {
            return Err(Error::NotBijective(format!("target {w} repeated or out of range")));
        }
        hit[w] = true;
    }
    Ok(())
}

/// Compares arrows per (source, target, degree) and relation sets after
/// transporting along `vmap`. Vertex shifts are not compared.
pub fn map_equals(q1: &GradedQuiver, q2: &GradedQuiver, vmap: &[usize]) -> Result<MapReport> {
    check_bijection(q1.vertex_count(), q2.vertex_count(), vmap)?;
    let mut groups1: BTreeMap<(usize, usize, i64), Vec<usize>> = BTreeMap::new();
    let mut groups2: BTreeMap<(usize, usize, i64), Vec<usize>> = BTreeMap::new();
    for a in &q1.arrows {
        groups1
            .entry((vmap[a.src], vmap[a.tgt], a.degree))
            .or_default()
            .push(a.id);
    }
    for a in &q2.arrows {
        groups2.entry((a.src, a.tgt, a.degree)).or_default().push(a.id);
    }
    let keys: BTreeSet<_> = groups1.keys().chain(groups2.keys()).copied().collect();
    for key in keys {
        let c1 = groups1.get(&key).map_or(0, Vec::len);
        let c2 = groups2.get(&key).map_or(0, Vec::len);
        if c1 != c2 {
            let (s, t, d) = key;
            return Ok(MapReport {
                equal: false,
                diffs: vec![format!(
                    "arrows {} -> {} in degree {d}: {c1} in first quiver, {c2} in second",
                    q2.name(s),
                    q2.name(t)
                )],
                arrow_map: None,
            });
        }
    }
    if q1.relations.len() != q2.relations.len() {
        let first = relation_diff(q1, q2, &forced_arrow_map(&groups1, &groups2, q1.arrows.len()));
        return Ok(MapReport {
            equal: false,
            diffs: first,
            arrow_map: None,
        });
    }
    let group_list: Vec<(Vec<usize>, Vec<usize>)> =
        groups1.iter().map(|(k, v)| (v.clone(), groups2[k].clone())).collect();
    let mut amap = vec![usize::MAX; q1.arrows.len()];
    if assign_arrows(q1, q2, &group_list, 0, &mut amap) {
        return Ok(MapReport {
            equal: true,
            diffs: Vec::new(),
            arrow_map: Some(amap),
        });
    }
    let amap = forced_arrow_map(&groups1, &groups2, q1.arrows.len());
    Ok(MapReport {
        equal: false,
        diffs: relation_diff(q1, q2, &amap),
        arrow_map: None,
    })
}

fn forced_arrow_map(
    groups1: &BTreeMap<(usize, usize, i64), Vec<usize>>,
    groups2: &BTreeMap<(usize, usize, i64), Vec<usize>>,
    n: usize,
) -> Vec<usize> {
    let mut amap = vec![usize::MAX; n];
    for (k, v) in groups1 {
        for (a, b) in v.iter().zip(groups2[k].iter()) {
            amap[*a] = *b;
        }
    }
    amap
}

fn relation_diff(q1: &GradedQuiver, q2: &GradedQuiver, amap: &[usize]) -> Vec<String> {
    let mut diffs = Vec::new();
    let moved: BTreeSet<(usize, usize)> = q1.relations.iter().map(|&(f, g)| (amap[f], amap[g])).collect();
    for &(f, g) in &q1.relations {
        if !q2.relations.contains(&(amap[f], amap[g])) {
            diffs.push(format!(
                "relation ({}, {}) of first quiver missing from second",
                q1.arrows[f].label, q1.arrows[g].label
            ));
        }
    }
    for &(f, g) in &q2.relations {
        if !moved.contains(&(f, g)) {
            diffs.push(format!(
                "relation ({}, {}) of second quiver missing from first",
                q2.arrows[f].label, q2.arrows[g].label
            ));
        }
    }
    if diffs.is_empty() {
        diffs.push("no arrow matching carries relations onto relations".into());
    }
    diffs
}

fn assign_arrows(
    q1: &GradedQuiver,
    q2: &GradedQuiver,
    groups: &[(Vec<usize>, Vec<usize>)],
    k: usize,
    amap: &mut Vec<usize>,
) -> bool {
    if k == groups.len() {
        return q1
            .relations
            .iter()
            .all(|&(f, g)| q2.relations.contains(&(amap[f], amap[g])));
    }
    let (src, dst) = &groups[k];
    let mut used = vec![false; dst.len()];
    permute_into(q1, q2, groups, k, src, dst, 0, &mut used, amap)
}

#[allow(clippy::too_many_arguments)]
fn permute_into(
    q1: &GradedQuiver,
    q2: &GradedQuiver,
    groups: &[(Vec<usize>, Vec<usize>)],
    k: usize,
    src: &[usize],
    dst: &[usize],
    idx: usize,
    used: &mut Vec<bool>,
    amap: &mut Vec<usize>,
) -> bool {
    if idx == src.len() {
        return assign_arrows(q1, q2, groups, k + 1, amap);
    }
    for slot in 0..dst.len() {
        if used[slot] {
            continue;
        }
        used[slot] = true;
        amap[src[idx]] = dst[slot];
        let consistent = q1.relations.iter().all(|&(f, g)| {
            amap[f] == usize::MAX || amap[g] == usize::MAX || q2.relations.contains(&(amap[f], amap[g]))
        });
        if consistent && permute_into(q1, q2, groups, k, src, dst, idx + 1, used, amap) {
            return true;
        }
        amap[src[idx]] = usize::MAX;
        used[slot] = false;
    }
    false
}

struct Shape {
    adj: BTreeMap<(usize, usize), Vec<i64>>,
    neighbors: Vec<BTreeSet<usize>>,
    signature: Vec<(usize, usize, usize, usize)>,
}

fn shape(q: &GradedQuiver) -> Shape {
    let n = q.vertex_count();
    let mut adj: BTreeMap<(usize, usize), Vec<i64>> = BTreeMap::new();
    let mut neighbors = vec![BTreeSet::new(); n];
    let mut indeg = vec![0; n];
    let mut outdeg = vec![0; n];
    for a in &q.arrows {
        adj.entry((a.src, a.tgt)).or_default().push(a.degree);
        neighbors[a.src].insert(a.tgt);
        neighbors[a.tgt].insert(a.src);
        outdeg[a.src] += 1;
        indeg[a.tgt] += 1;
    }
    for v in adj.values_mut() {
        v.sort_unstable();
    }
    let mut rel_in = vec![0; n];
    let mut rel_out = vec![0; n];
    for &(f, g) in &q.relations {
        rel_in[q.arrows[f].src] += 1;
        rel_out[q.arrows[g].tgt] += 1;
    }
    let signature = (0..n).map(|v| (indeg[v], outdeg[v], rel_in[v], rel_out[v])).collect();
    Shape {
        adj,
        neighbors,
        signature,
    }
}

/// Backtracking search for a vertex bijection accepted by `map_equals`.
pub fn find_isomorphism(q1: &GradedQuiver, q2: &GradedQuiver) -> Option<Vec<usize>> {
    let n = q1.vertex_count();
    if n != q2.vertex_count() || q1.arrows.len() != q2.arrows.len() || q1.relations.len() != q2.relations.len() {
        return None;
    }
    let s1 = shape(q1);
    let s2 = shape(q2);
    let mut sig1 = s1.signature.clone();
    let mut sig2 = s2.signature.clone();
    sig1.sort_unstable();
    sig2.sort_unstable();
    if sig1 != sig2 {
        return None;
    }
    // Breadth-first order so that most vertices have an already placed neighbour.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for root in 0..n {
        if placed[root] {
            continue;
        }
        placed[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &s1.neighbors[v] {
                if !placed[w] {
                    placed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut vmap = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if search(q1, q2, &s1, &s2, &order, 0, &mut vmap, &mut used) {
        Some(vmap)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    q1: &GradedQuiver,
    q2: &GradedQuiver,
    s1: &Shape,
    s2: &Shape,
    order: &[usize],
    k: usize,
    vmap: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if k == order.len() {
        return map_equals(q1, q2, vmap).map(|r| r.equal).unwrap_or(false);
    }
    let v = order[k];
    let anchor = s1.neighbors[v].iter().find(|&&u| vmap[u] != usize::MAX).copied();
    let candidates: Vec<usize> = match anchor {
        Some(u) => s2.neighbors[vmap[u]].iter().copied().collect(),
        None => (0..q2.vertex_count()).collect(),
    };
    let empty = Vec::new();
    for w in candidates {
        if used[w] || s1.signature[v] != s2.signature[w] {
            continue;
        }
        let fits = s1.neighbors[v].iter().chain(std::iter::once(&v)).all(|&u| {
            let img = if u == v { w } else { vmap[u] };
            if img == usize::MAX {
                return true;
            }
            s1.adj.get(&(u, v)).unwrap_or(&empty) == s2.adj.get(&(img, w)).unwrap_or(&empty)
                && s1.adj.get(&(v, u)).unwrap_or(&empty) == s2.adj.get(&(w, img)).unwrap_or(&empty)
        }) && s2.neighbors[w].iter().all(|&x| {
            // a placed neighbour of w must come from a neighbour of v
            !used[x] || s1.neighbors[v].iter().any(|&u| vmap[u] == x)
        });
        if !fits {
            continue;
        }
        vmap[v] = w;
        used[w] = true;
        if search(q1, q2, s1, s2, order, k + 1, vmap, used) {
            return true;
        }
        vmap[v] = usize::MAX;
        used[w] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(q: &mut GradedQuiver, s: &str) -> usize {
        q.add_vertex(vec![VertexLabel::Named(s.into())], 0)
    }

    /// Linear quiver L1 -> .. -> L_len with every consecutive composite zero.
    pub(crate) fn disk(len: usize, reversed: bool) -> GradedQuiver {
        let mut q = GradedQuiver::new();
        let vs: Vec<usize> = (1..=len).map(|k| named(&mut q, &format!("L{k}"))).collect();
        let mut arrows = Vec::new();
        for k in 0..len - 1 {
            let (s, t) = if reversed {
                (vs[k + 1], vs[k])
            } else {
                (vs[k], vs[k + 1])
            };
            arrows.push(q.add_arrow(s, t, 0, ArrowLabel::Named(format!("a{}", k + 1))));
        }
        for k in 0..arrows.len().saturating_sub(1) {
            let (f, g) = if reversed {
                (arrows[k + 1], arrows[k])
            } else {
                (arrows[k], arrows[k + 1])
            };
            q.add_relation(f, g).unwrap();
        }
        q
    }

    #[test]
    fn disk_homs() {
        let q = disk(3, false);
        let t = path_dims(&q).unwrap();
        assert_eq!(t.dim(0, 1, 0), 1);
        assert_eq!(t.dim(0, 2, 0), 0);
        for v in 0..3 {
            assert_eq!(t.dim(v, v, 0), 1);
        }
    }

    #[test]
    fn annulus_two_two() {
        let mut q = GradedQuiver::new();
        let start = named(&mut q, "P0");
        let end = named(&mut q, "P2");
        let xm = named(&mut q, "P-1");
        let ym = named(&mut q, "P+1");
        q.add_arrow(start, xm, 0, ArrowLabel::Named("x0".into()));
        q.add_arrow(xm, end, 0, ArrowLabel::Named("x1".into()));
        q.add_arrow(start, ym, 0, ArrowLabel::Named("y0".into()));
        q.add_arrow(ym, end, 0, ArrowLabel::Named("y1".into()));
        let t = path_dims(&q).unwrap();
        assert_eq!(t.dim(start, end, 0), 2);
    }

    #[test]
    fn cyclic_rejected() {
        let mut q = GradedQuiver::new();
        let a = named(&mut q, "a");
        let b = named(&mut q, "b");
        q.add_arrow(a, b, 0, ArrowLabel::Named("f".into()));
        q.add_arrow(b, a, 0, ArrowLabel::Named("g".into()));
        assert_eq!(path_dims(&q), Err(Error::CyclicQuiver));
    }

    #[test]
    fn relation_must_compose() {
        let mut q = disk(3, false);
        assert!(q.add_relation(1, 0).is_err());
    }

    #[test]
    fn self_map_and_perturbation() {
        let q = disk(4, false);
        let id: Vec<usize> = (0..4).collect();
        assert!(map_equals(&q, &q, &id).unwrap().equal);
        let broken = q.without_relation(0, 1);
        let rep = map_equals(&q, &broken, &id).unwrap();
        assert!(!rep.equal);
        assert!(
            rep.diffs[0].contains("a1") && rep.diffs[0].contains("a2"),
            "{:?}",
            rep.diffs
        );
        assert!(map_equals(&q, &q, &[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn reversed_chain_is_not_isomorphic() {
        let q = disk(3, false);
        let r = disk(3, true);
        // A3 with its arrows flipped but the relation kept is still A3 up to relabelling.
        assert!(find_isomorphism(&q, &r).is_some());
        let mut plain = GradedQuiver::new();
        let a = named(&mut plain, "1");
        let b = named(&mut plain, "2");
        let c = named(&mut plain, "3");
        plain.add_arrow(a, b, 0, ArrowLabel::Named("f".into()));
        plain.add_arrow(b, c, 0, ArrowLabel::Named("g".into()));
        let mut flipped = plain.clone();
        flipped.arrows[0].src = b;
        flipped.arrows[0].tgt = a;
        assert!(find_isomorphism(&plain, &flipped).is_none());
    }

    #[test]
    fn permuted_vertices_found() {
        let q = disk(5, false);
        let perm = vec![3, 0, 4, 1, 2];
        let p = q.permute_vertices(&perm);
        let w = find_isomorphism(&q, &p).unwrap();
        assert!(map_equals(&q, &p, &w).unwrap().equal);
    }

    #[test]
    fn opposite_twice_is_identity() {
        let q = disk(4, false);
        assert_eq!(q.opposite().opposite(), q);
    }

    #[test]
    fn dot_is_deterministic() {
        let q = disk(3, false);
        assert_eq!(q.to_dot(), q.clone().to_dot());
        assert!(q.to_dot().contains("// relation: a1 then a2 = 0"));
    }
}
