//! Twisted complexes of projectives over a graded path algebra, their Hom
//! complexes and cohomology, localization objects and the modules they
//! represent.
//!
//! A twisted complex lists summands `P(v)[n]` left to right; differential
//! entries only go from a summand to a later one. A Hom-complex element is a
//! path `p` from `X_b` to `Y_a` and has degree `|p| + n_b - n_a`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gluing::GluingSpec;
use crate::linalg::{self, Q};
use crate::quiver::{path_dims, ArrowLabel, GradedQuiver, HomTable, Path, VertexLabel};

/// A linear combination of paths with the same endpoints.
pub type Morphism = BTreeMap<Path, Q>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub vertex: usize,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    pub summands: Vec<Summand>,
    /// `(from, to)` with `from < to`.
    pub differential: BTreeMap<(usize, usize), Morphism>,
}

impl TwistedComplex {
    pub fn projective(v: usize) -> Self {
        TwistedComplex {
            summands: vec![Summand { vertex: v, shift: 0 }],
            differential: BTreeMap::new(),
        }
    }

    /// `P(v_0)[n_0] -> P(v_1)[n_1] -> ...` with single arrows as maps.
    pub fn chain(q: &GradedQuiver, terms: &[(usize, i64)], arrows: &[usize]) -> Result<Self> {
        if arrows.len() + 1 != terms.len() {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} maps, got {}",
                terms.len(),
                terms.len() - 1,
                arrows.len()
            )));
        }
        let mut differential = BTreeMap::new();
        for (k, &a) in arrows.iter().enumerate() {
            let arrow = q
                .arrows
                .get(a)
                .ok_or_else(|| Error::InvalidComplex(format!("no arrow {a}")))?;
            let path = Path {
                src: arrow.src,
                tgt: arrow.tgt,
                arrows: vec![a],
            };
            differential.insert((k, k + 1), BTreeMap::from([(path, Q::one())]));
        }
        let x = TwistedComplex {
            summands: terms.iter().map(|&(vertex, shift)| Summand { vertex, shift }).collect(),
            differential,
        };
        x.validate(q)?;
        Ok(x)
    }

    pub fn shifted(&self, s: i64) -> Self {
        let mut out = self.clone();
        for t in &mut out.summands {
            t.shift += s;
        }
        out
    }

    /// Filtration, endpoints, degrees and `delta^2 = 0`.
    pub fn validate(&self, q: &GradedQuiver) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidComplex(m));
        for t in &self.summands {
            if t.vertex >= q.vertex_count() {
                return bad(format!("summand vertex {} out of range", t.vertex));
            }
        }
        for (&(b, a), m) in &self.differential {
            if b >= a || a >= self.summands.len() {
                return bad(format!("entry {b} -> {a} breaks the filtration"));
            }
            let (sb, sa) = (&self.summands[b], &self.summands[a]);
            for (p, c) in m {
                if c.is_zero() {
                    continue;
                }
                if p.src != sb.vertex || p.tgt != sa.vertex {
                    return bad(format!("path {} has wrong endpoints for {b} -> {a}", q.path_name(p)));
                }
                if !is_nonzero_path(q, p) {
                    return bad(format!("path {} vanishes", q.path_name(p)));
                }
                if q.path_degree(p) != 1 + sa.shift - sb.shift {
                    return bad(format!(
                        "path {} in entry {b} -> {a} has the wrong degree",
                        q.path_name(p)
                    ));
                }
            }
        }
        for b in 0..self.summands.len() {
            for a in b + 2..self.summands.len() {
                let mut sum = Morphism::new();
                for mid in b + 1..a {
                    let (Some(f), Some(g)) = (self.differential.get(&(b, mid)), self.differential.get(&(mid, a)))
                    else {
                        continue;
                    };
                    add_into(&mut sum, &compose_morphisms(q, f, g), &Q::one());
                }
                if !sum.is_empty() {
                    return bad(format!("delta^2 is nonzero from {b} to {a}"));
                }
            }
        }
        Ok(())
    }

    pub fn describe(&self, q: &GradedQuiver) -> String {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|t| format!("{}[{}]", q.name(t.vertex), t.shift))
            .collect();
        parts.join(" -> ")
    }
}

fn is_nonzero_path(q: &GradedQuiver, p: &Path) -> bool {
    p.arrows.windows(2).all(|w| !q.is_relation(w[0], w[1]))
}

/// `f` then `g`, reduced modulo the relations.
fn compose_morphisms(q: &GradedQuiver, f: &Morphism, g: &Morphism) -> Morphism {
    let mut out = Morphism::new();
    for (p, c1) in f {
        for (r, c2) in g {
            if let Some(pr) = q.concat(p, r) {
                *out.entry(pr).or_insert_with(Q::zero) += c1 * c2;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn add_into(acc: &mut Morphism, m: &Morphism, scale: &Q) {
    for (p, c) in m {
        *acc.entry(p.clone()).or_insert_with(Q::zero) += c * scale;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// Cohomology dimensions by degree; zero entries are omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims(pub BTreeMap<i64, usize>);

impl GradedDims {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn get(&self, k: i64) -> usize {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .map(|(&k, &d)| if k.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

impl<const N: usize> From<[(i64, usize); N]> for GradedDims {
    fn from(items: [(i64, usize); N]) -> Self {
        GradedDims(items.into_iter().filter(|&(_, d)| d > 0).collect())
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, d)| format!("{k}:{d}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Sign rule for the Hom-complex differential. `Flipped` multiplies the
/// standard differential by `(-1)^|f|`, which cannot change any dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    Standard,
    Flipped,
}

/// A quiver together with its nonzero paths.
#[derive(Clone, Debug)]
pub struct Context {
    pub quiver: GradedQuiver,
    pub table: HomTable,
}

impl Context {
    pub fn new(quiver: GradedQuiver) -> Result<Self> {
        let table = path_dims(&quiver)?;
        Ok(Context { quiver, table })
    }

    pub fn hom<'a>(&'a self, x: &'a TwistedComplex, y: &'a TwistedComplex) -> Result<HomComplex<'a>> {
        HomComplex::new(self, x, y, SignRule::Standard)
    }

    pub fn hom_cohomology(&self, x: &TwistedComplex, y: &TwistedComplex) -> Result<GradedDims> {
        Ok(self.hom(x, y)?.cohomology())
    }

    pub fn projective(&self, label: &VertexLabel) -> Result<TwistedComplex> {
        let v = self
            .quiver
            .find(label)
            .ok_or_else(|| Error::OutOfRange(format!("no vertex {label}")))?;
        Ok(TwistedComplex::projective(v))
    }
}

pub fn hom_cohomology(q: &GradedQuiver, x: &TwistedComplex, y: &TwistedComplex) -> Result<GradedDims> {
    Context::new(q.clone())?.hom_cohomology(x, y)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Elem {
    from: usize,
    to: usize,
    path: Path,
}

/// A homogeneous element of a Hom complex, in the coordinates of its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: i64,
    pub terms: BTreeMap<usize, Q>,
}

pub struct HomComplex<'a> {
    ctx: &'a Context,
    pub x: &'a TwistedComplex,
    pub y: &'a TwistedComplex,
    sign: SignRule,
    elems: Vec<Elem>,
    index: HashMap<Elem, usize>,
    by_degree: BTreeMap<i64, Vec<usize>>,
    slot: Vec<usize>,
}

impl<'a> HomComplex<'a> {
    pub fn new(ctx: &'a Context, x: &'a TwistedComplex, y: &'a TwistedComplex, sign: SignRule) -> Result<Self> {
        let q = &ctx.quiver;
        x.validate(q)?;
        y.validate(q)?;
        let mut hc = HomComplex {
            ctx,
            x,
            y,
            sign,
            elems: Vec::new(),
            index: HashMap::new(),
            by_degree: BTreeMap::new(),
            slot: Vec::new(),
        };
        for (b, sb) in x.summands.iter().enumerate() {
            for (a, sa) in y.summands.iter().enumerate() {
                for p in ctx.table.paths(sb.vertex, sa.vertex) {
                    let e = Elem {
                        from: b,
                        to: a,
                        path: p.clone(),
                    };
                    let d = q.path_degree(p) + sb.shift - sa.shift;
                    let id = hc.elems.len();
                    let list = hc.by_degree.entry(d).or_default();
                    hc.slot.push(list.len());
                    list.push(id);
                    hc.index.insert(e.clone(), id);
                    hc.elems.push(e);
                }
            }
        }
        Ok(hc)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn degree_of(&self, e: usize) -> i64 {
        let el = &self.elems[e];
        self.ctx.quiver.path_degree(&el.path) + self.x.summands[el.from].shift - self.y.summands[el.to].shift
    }

    pub fn chain_dims(&self) -> GradedDims {
        GradedDims(self.by_degree.iter().map(|(&k, v)| (k, v.len())).collect())
    }

    /// Basis element `path` from summand `from` of X to summand `to` of Y.
    pub fn element(&self, from: usize, to: usize, path: &Path) -> Option<Cochain> {
        let id = *self.index.get(&Elem {
            from,
            to,
            path: path.clone(),
        })?;
        Some(Cochain {
            degree: self.degree_of(id),
            terms: BTreeMap::from([(id, Q::one())]),
        })
    }

    /// Sum of the identity paths `X_b -> X_b`; only for `Hom(X, X)`.
    pub fn identity(&self) -> Option<Cochain> {
        if self.x != self.y {
            return None;
        }
        let terms = self
            .x
            .summands
            .iter()
            .enumerate()
            .map(|(b, s)| {
                self.index[&Elem {
                    from: b,
                    to: b,
                    path: Path::identity(s.vertex),
                }]
            })
            .map(|e| (e, Q::one()))
            .collect();
        Some(Cochain { degree: 0, terms })
    }

    pub fn describe(&self, c: &Cochain) -> String {
        if c.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = c
            .terms
            .iter()
            .map(|(&e, coeff)| format!("{coeff}*{}", self.ctx.quiver.path_name(&self.elems[e].path)))
            .collect();
        parts.join(" + ")
    }

    fn push(&self, out: &mut BTreeMap<usize, Q>, from: usize, to: usize, path: Path, c: Q) {
        let id = self.index[&Elem { from, to, path }];
        *out.entry(id).or_insert_with(Q::zero) += c;
    }

    /// `delta_Y . f - (-1)^|f| f . delta_X`.
    pub fn differential(&self, c: &Cochain) -> Cochain {
        let q = &self.ctx.quiver;
        let sign = if c.degree.rem_euclid(2) == 0 {
            Q::one()
        } else {
            -Q::one()
        };
        let (outer, inner) = match self.sign {
            SignRule::Standard => (Q::one(), -sign),
            SignRule::Flipped => (sign, -Q::one()),
        };
        let mut out = BTreeMap::new();
        for (&e, coeff) in &c.terms {
            let el = &self.elems[e];
            for (&(from, to), m) in self.y.differential.range((el.to, 0)..(el.to + 1, 0)) {
                debug_assert_eq!(from, el.to);
                for (p, dc) in m {
                    if let Some(path) = q.concat(&el.path, p) {
                        self.push(&mut out, el.from, to, path, coeff * dc * &outer);
                    }
                }
            }
            for (&(from, to), m) in &self.x.differential {
                if to != el.from {
                    continue;
                }
                for (p, dc) in m {
                    if let Some(path) = q.concat(p, &el.path) {
                        self.push(&mut out, from, el.to, path, coeff * dc * &inner);
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Cochain {
            degree: c.degree + 1,
            terms: out,
        }
    }

    fn basis(&self, k: i64) -> &[usize] {
        self.by_degree.get(&k).map(Vec::as_slice).unwrap_or(&[])
    }

    fn dense(&self, c: &Cochain) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.basis(c.degree).len()];
        for (&e, coeff) in &c.terms {
            v[self.slot[e]] = coeff.clone();
        }
        v
    }

    fn sparse(&self, k: i64, v: &[Q]) -> Cochain {
        Cochain {
            degree: k,
            terms: self
                .basis(k)
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&e, c)| (e, c.clone()))
                .collect(),
        }
    }

    /// Matrix of `D` from degree `k` to `k + 1`.
    pub fn matrix(&self, k: i64) -> Vec<Vec<Q>> {
        let rows = self.basis(k + 1).len();
        let cols = self.basis(k);
        let mut m = vec![vec![Q::zero(); cols.len()]; rows];
        for (j, &e) in cols.iter().enumerate() {
            let unit = Cochain {
                degree: k,
                terms: BTreeMap::from([(e, Q::one())]),
            };
            for (&f, c) in &self.differential(&unit).terms {
                m[self.slot[f]][j] = c.clone();
            }
        }
        m
    }

    pub fn cohomology(&self) -> GradedDims {
        let mut out = BTreeMap::new();
        for (&k, list) in &self.by_degree {
            let d = list.len() - linalg::rank(&self.matrix(k)) - linalg::rank(&self.matrix(k - 1));
            if d > 0 {
                out.insert(k, d);
            }
        }
        GradedDims(out)
    }

    pub fn is_cocycle(&self, c: &Cochain) -> bool {
        self.differential(c).terms.is_empty()
    }

    fn boundaries(&self, k: i64) -> Vec<Vec<Q>> {
        let m = self.matrix(k - 1);
        let ncols = self.basis(k - 1).len();
        (0..ncols)
            .map(|j| m.iter().map(|row| row[j].clone()).collect())
            .collect()
    }

    pub fn is_coboundary(&self, c: &Cochain) -> bool {
        linalg::solve(&self.boundaries(c.degree), &self.dense(c)).is_some()
    }

    /// Cocycles whose classes form a basis of `H^k`.
    pub fn cohomology_basis(&self, k: i64) -> Vec<Cochain> {
        let n = self.basis(k).len();
        let kernel = linalg::kernel(&self.matrix(k), n);
        let mut span = self.boundaries(k);
        let mut chosen = Vec::new();
        for z in kernel {
            let before = linalg::rank(&span);
            span.push(z.clone());
            if linalg::rank(&span) > before {
                chosen.push(self.sparse(k, &z));
            } else {
                span.pop();
            }
        }
        chosen
    }

    /// Coordinates of the class of `c` in `cohomology_basis(c.degree)`.
    pub fn class_coords(&self, c: &Cochain) -> Result<Vec<Q>> {
        if !self.is_cocycle(c) {
            return Err(Error::NotACocycle);
        }
        let basis = self.cohomology_basis(c.degree);
        let mut columns: Vec<Vec<Q>> = basis.iter().map(|z| self.dense(z)).collect();
        columns.extend(self.boundaries(c.degree));
        let x = linalg::solve(&columns, &self.dense(c)).expect("cocycles lie in cocycle span");
        Ok(x[..basis.len()].to_vec())
    }
}

/// `g . f` at chain level: `f` in Hom(X, Y) then `g` in Hom(Y, Z).
pub fn compose(f_hc: &HomComplex, f: &Cochain, g_hc: &HomComplex, g: &Cochain, out: &HomComplex) -> Result<Cochain> {
    if f_hc.y != g_hc.x || f_hc.x != out.x || g_hc.y != out.y {
        return Err(Error::InvalidComplex("complexes are not composable".into()));
    }
    let q = &out.ctx.quiver;
    let mut terms = BTreeMap::new();
    for (&e1, c1) in &f.terms {
        let a = &f_hc.elems[e1];
        for (&e2, c2) in &g.terms {
            let b = &g_hc.elems[e2];
            if a.to != b.from {
                continue;
            }
            if let Some(path) = q.concat(&a.path, &b.path) {
                out.push(&mut terms, a.from, b.to, path, c1 * c2);
            }
        }
    }
    terms.retain(|_, v: &mut Q| !v.is_zero());
    Ok(Cochain {
        degree: f.degree + g.degree,
        terms,
    })
}

/// The class of `g . f` in the cohomology basis of `out`.
pub fn ext_product(f_hc: &HomComplex, f: &Cochain, g_hc: &HomComplex, g: &Cochain, out: &HomComplex) -> Result<Vec<Q>> {
    if !f_hc.is_cocycle(f) || !g_hc.is_cocycle(g) {
        return Err(Error::NotACocycle);
    }
    out.class_coords(&compose(f_hc, f, g_hc, g, out)?)
}

/// `sum_k (-1)^k dim C^k` straight from the path table.
pub fn path_count_euler(ctx: &Context, x: &TwistedComplex, y: &TwistedComplex) -> i64 {
    let q = &ctx.quiver;
    let mut total = 0;
    for sb in &x.summands {
        for sa in &y.summands {
            for p in ctx.table.paths(sb.vertex, sa.vertex) {
                let d = q.path_degree(p) + sb.shift - sa.shift;
                total += if d.rem_euclid(2) == 0 { 1 } else { -1 };
            }
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Minus => "E-",
            Side::Plus => "E+",
        })
    }
}

fn vertex(q: &GradedQuiver, label: VertexLabel) -> Result<usize> {
    q.find(&label)
        .ok_or_else(|| Error::OutOfRange(format!("no vertex {label}")))
}

fn arrow(q: &GradedQuiver, label: ArrowLabel) -> Result<usize> {
    q.find_arrow(&label)
        .ok_or_else(|| Error::OutOfRange(format!("no arrow {label}")))
}

/// `E-(i,j)` or `E+(i,j)` over the A-side quiver of `g`, `0 <= j < rank`.
pub fn localization_object(g: &GluingSpec, q: &GradedQuiver, side: Side, i: usize, j: usize) -> Result<TwistedComplex> {
    if i == 0 || i > g.components() {
        return Err(Error::OutOfRange(format!("component {i}")));
    }
    let (rank, layer) = match side {
        Side::Minus => (g.minus_rank(i), g.incoming_layer(i)),
        Side::Plus => (g.plus_rank(i), g.outgoing_layer(i)),
    };
    if j >= rank {
        return Err(Error::OutOfRange(format!("{side}({i},{j}) with rank {rank}")));
    }
    let (p, x) = match side {
        Side::Minus => (
            [
                VertexLabel::PMinus { comp: i, pos: j },
                VertexLabel::PMinus { comp: i, pos: j + 1 },
            ],
            ArrowLabel::X { comp: i, pos: j },
        ),
        Side::Plus => (
            [
                VertexLabel::PPlus { comp: i, pos: j },
                VertexLabel::PPlus { comp: i, pos: j + 1 },
            ],
            ArrowLabel::Y { comp: i, pos: j },
        ),
    };
    let p0 = vertex(q, p[0].clone())?;
    let p1 = vertex(q, p[1].clone())?;
    let x = arrow(q, x)?;
    let Some(l) = layer else {
        return TwistedComplex::chain(q, &[(p0, 2), (p1, 1)], &[x]);
    };
    let (strip, first) = match side {
        Side::Minus => {
            let s = g.layer_perm(l).inverse().apply(rank - 1 - j);
            (s, ArrowLabel::B { node: l, pos: s })
        }
        Side::Plus => (j, ArrowLabel::A { node: l, pos: j }),
    };
    let s = vertex(q, VertexLabel::Strip { layer: l, pos: strip })?;
    let first = arrow(q, first)?;
    TwistedComplex::chain(q, &[(s, 3), (p0, 2), (p1, 1)], &[first, x])
}

/// Every `E-(i,j)` and `E+(i,j)` of `g`.
pub fn localization_objects(g: &GluingSpec, q: &GradedQuiver) -> Result<Vec<(Side, usize, usize, TwistedComplex)>> {
    let mut out = Vec::new();
    for i in 1..=g.components() {
        for j in 0..g.minus_rank(i) {
            out.push((Side::Minus, i, j, localization_object(g, q, Side::Minus, i, j)?));
        }
        for j in 0..g.plus_rank(i) {
            out.push((Side::Plus, i, j, localization_object(g, q, Side::Plus, i, j)?));
        }
    }
    Ok(out)
}

/// A representation with every vertex space of dimension at most one. An
/// arrow `u -> v` acts from the space at `v` to the space at `u`, by
/// precomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinModule {
    /// Cohomological degree the module sits in.
    pub degree: i64,
    pub dims: Vec<usize>,
    pub actions: Vec<Q>,
}

impl ThinModule {
    /// Dimension vector and which arrows act by a nonzero scalar.
    pub fn pattern(&self) -> (Vec<usize>, Vec<bool>) {
        (self.dims.clone(), self.actions.iter().map(|c| !c.is_zero()).collect())
    }

    pub fn relations_hold(&self, q: &GradedQuiver) -> bool {
        q.relations
            .iter()
            .all(|&(f, g)| (&self.actions[f] * &self.actions[g]).is_zero())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    pub fn table(&self, q: &GradedQuiver) -> String {
        let mut out = format!("degree {}\n", self.degree);
        for v in self.support() {
            out.push_str(&format!("  {}: {}\n", q.name(v), self.dims[v]));
        }
        for (a, c) in self.actions.iter().enumerate() {
            if !c.is_zero() {
                let ar = &q.arrows[a];
                out.push_str(&format!(
                    "  {} : {} -> {}  acts by {}\n",
                    ar.label,
                    q.name(ar.src),
                    q.name(ar.tgt),
                    c
                ));
            }
        }
        out
    }
}

/// The module `v |-> H(Hom(P(v), e))`, with arrows acting by precomposition.
pub fn module_of(ctx: &Context, e: &TwistedComplex) -> Result<ThinModule> {
    let q = &ctx.quiver;
    let n = q.vertex_count();
    let projectives: Vec<TwistedComplex> = (0..n).map(TwistedComplex::projective).collect();
    let homs: Vec<HomComplex> = projectives.iter().map(|p| ctx.hom(p, e)).collect::<Result<_>>()?;
    let mut degree = None;
    let mut dims = vec![0; n];
    let mut gens: Vec<Option<Cochain>> = vec![None; n];
    for (v, hc) in homs.iter().enumerate() {
        let h = hc.cohomology();
        for (&k, &d) in &h.0 {
            if *degree.get_or_insert(k) != k {
                return Err(Error::NotApplicable(format!(
                    "cohomology of {} is spread over several degrees",
                    e.describe(q)
                )));
            }
            if d > 1 {
                return Err(Error::NotApplicable(format!("dimension {d} at {}", q.name(v))));
            }
            dims[v] = d;
            gens[v] = hc.cohomology_basis(k).into_iter().next();
        }
    }
    let mut actions = vec![Q::zero(); q.arrows.len()];
    for a in &q.arrows {
        let (Some(z), true) = (&gens[a.tgt], dims[a.src] == 1) else {
            continue;
        };
        let hom_uv = ctx.hom(&projectives[a.src], &projectives[a.tgt])?;
        let path = Path {
            src: a.src,
            tgt: a.tgt,
            arrows: vec![a.id],
        };
        let f = hom_uv.element(0, 0, &path).expect("arrow is a basis path");
        let coords = ext_product(&hom_uv, &f, &homs[a.tgt], z, &homs[a.src])?;
        actions[a.id] = coords[0].clone();
    }
    Ok(ThinModule {
        degree: degree.unwrap_or(0),
        dims,
        actions,
    })
}

/// True when every Hom complex between `x` and the generators is acyclic.
pub fn is_stop_orthogonal(ctx: &Context, x: &TwistedComplex, generators: &[TwistedComplex]) -> Result<bool> {
    for e in generators {
        if !ctx.hom_cohomology(x, e)?.is_zero() || !ctx.hom_cohomology(e, x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Three objects `M1 = [P3 -> P2]` (by `y`), `M2 = [P2 -> P1]` (by `b`) over the
/// quiver `1 => 2 => 3` with arrows `a, b : 1 -> 2`, `x, y : 2 -> 3` and
/// relations `ya = 0`, `xb = 0`, taken with arrows reversed so that maps of
/// projectives run along arrows.
pub fn ext_example() -> (Context, TwistedComplex, TwistedComplex) {
    let mut q = GradedQuiver::new();
    let v: Vec<usize> = (1..=3)
        .map(|k| q.add_vertex(vec![VertexLabel::Named(k.to_string())], 0))
        .collect();
    let named = |s: &str| ArrowLabel::Named(s.into());
    let a = q.add_arrow(v[0], v[1], 0, named("a"));
    let b = q.add_arrow(v[0], v[1], 0, named("b"));
    let x = q.add_arrow(v[1], v[2], 0, named("x"));
    let y = q.add_arrow(v[1], v[2], 0, named("y"));
    q.add_relation(a, y).expect("composable");
    q.add_relation(b, x).expect("composable");
    let q = q.opposite();
    let m1 = TwistedComplex::chain(&q, &[(v[2], 1), (v[1], 0)], &[y]).expect("valid");
    let m2 = TwistedComplex::chain(&q, &[(v[1], 1), (v[0], 0)], &[b]).expect("valid");
    (Context::new(q).expect("acyclic"), m1, m2)
}

/// The Ext algebra of `M1 + M2` from `ext_example`, with products by the
/// degree-one class `b` in `H(M2, M1)` taken against `H^0(M1, M2)`.
#[derive(Clone, Debug, Serialize)]
pub struct ExtAlgebra {
    /// `dims[i][j]` is the cohomology of `Hom(M_{i+1}, M_{j+1})`.
    pub dims: [[GradedDims; 2]; 2],
    /// Dimension of `{f in H^0(M1,M2) : f then b = 0}`; spanned by `a`.
    pub ab_kernel: usize,
    /// Dimension of `{f in H^0(M1,M2) : b then f = 0}`; spanned by `c`.
    pub bc_kernel: usize,
    /// Dimension of the intersection of the two kernels.
    pub kernels_meet: usize,
    /// Whether `c` then `b` then `a` is a nonzero class.
    pub cba_nonzero: bool,
}

fn combination(cs: &[Cochain], coeffs: &[Q]) -> Cochain {
    let mut terms: BTreeMap<usize, Q> = BTreeMap::new();
    for (c, k) in cs.iter().zip(coeffs) {
        for (&e, v) in &c.terms {
            *terms.entry(e).or_insert_with(Q::zero) += v * k;
        }
    }
    terms.retain(|_, v| !v.is_zero());
    Cochain {
        degree: cs.first().map_or(0, |c| c.degree),
        terms,
    }
}

pub fn ext_algebra() -> Result<ExtAlgebra> {
    let (ctx, m1, m2) = ext_example();
    let h11 = ctx.hom(&m1, &m1)?;
    let h12 = ctx.hom(&m1, &m2)?;
    let h21 = ctx.hom(&m2, &m1)?;
    let h22 = ctx.hom(&m2, &m2)?;
    let dims = [
        [h11.cohomology(), h12.cohomology()],
        [h21.cohomology(), h22.cohomology()],
    ];
    let zs = h12.cohomology_basis(0);
    let b = h21
        .cohomology_basis(1)
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotApplicable("no degree-one class from M2 to M1".into()))?;
    // columns: f then b in H(M1,M1); b then f in H(M2,M2)
    let mut after: Vec<Vec<Q>> = Vec::new();
    let mut before: Vec<Vec<Q>> = Vec::new();
    for z in &zs {
        after.push(ext_product(&h12, z, &h21, &b, &h11)?);
        before.push(ext_product(&h21, &b, &h12, z, &h22)?);
    }
    let transpose = |cols: &[Vec<Q>]| -> Vec<Vec<Q>> {
        let rows = cols.first().map_or(0, Vec::len);
        (0..rows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
    };
    let (ma, mc) = (transpose(&after), transpose(&before));
    let ka = linalg::kernel(&ma, zs.len());
    let kc = linalg::kernel(&mc, zs.len());
    let stacked: Vec<Vec<Q>> = ma.iter().chain(mc.iter()).cloned().collect();
    let kernels_meet = zs.len() - linalg::rank(&stacked);
    let cba_nonzero = match (ka.first(), kc.first()) {
        (Some(ca), Some(cc)) => {
            let a = combination(&zs, ca);
            let c = combination(&zs, cc);
            let cb = compose(&h12, &c, &h21, &b, &h11)?;
            let cba = compose(&h11, &cb, &h12, &a, &h12)?;
            h12.class_coords(&cba)?.iter().any(|x| !x.is_zero())
        }
        _ => false,
    };
    Ok(ExtAlgebra {
        dims,
        ab_kernel: ka.len(),
        bc_kernel: kc.len(),
        kernels_meet,
        cba_nonzero,
    })
}

/// JSON form of a twisted complex: vertices and arrows by name,
/// coefficients as exact rationals such as `"-1/2"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub summands: Vec<SummandJson>,
    #[serde(default)]
    pub maps: Vec<MapJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    pub vertex: String,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub from: usize,
    pub to: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub path: Vec<String>,
}

fn lookup_vertex(q: &GradedQuiver, name: &str) -> Result<usize> {
    let hits: Vec<usize> = (0..q.vertex_count())
        .filter(|&v| q.name(v) == name || q.vertices[v].labels.iter().any(|l| l.to_string() == name))
        .collect();
    match hits.as_slice() {
        [v] => Ok(*v),
        [] => Err(Error::InvalidComplex(format!("unknown vertex {name:?}"))),
        _ => Err(Error::InvalidComplex(format!("ambiguous vertex {name:?}"))),
    }
}

fn lookup_arrow(q: &GradedQuiver, name: &str) -> Result<usize> {
    let hits: Vec<usize> = q
        .arrows
        .iter()
        .filter(|a| a.label.to_string() == name)
        .map(|a| a.id)
        .collect();
    match hits.as_slice() {
        [a] => Ok(*a),
        [] => Err(Error::InvalidComplex(format!("unknown arrow {name:?}"))),
        _ => Err(Error::InvalidComplex(format!("ambiguous arrow {name:?}"))),
    }
}

impl ComplexJson {
    pub fn resolve(&self, q: &GradedQuiver) -> Result<TwistedComplex> {
        let summands = self
            .summands
            .iter()
            .map(|s| {
                Ok(Summand {
                    vertex: lookup_vertex(q, &s.vertex)?,
                    shift: s.shift,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut differential = BTreeMap::new();
        for m in &self.maps {
            let (Some(sb), Some(sa)) = (summands.get(m.from), summands.get(m.to)) else {
                return Err(Error::InvalidComplex(format!(
                    "map {} -> {} out of range",
                    m.from, m.to
                )));
            };
            let mut entry = Morphism::new();
            for t in &m.terms {
                let coeff: Q = t
                    .coeff
                    .parse()
                    .map_err(|_| Error::InvalidComplex(format!("bad coefficient {:?}", t.coeff)))?;
                let arrows = t.path.iter().map(|s| lookup_arrow(q, s)).collect::<Result<Vec<_>>>()?;
                let path = Path {
                    src: sb.vertex,
                    tgt: sa.vertex,
                    arrows,
                };
                let mut at = path.src;
                for &a in &path.arrows {
                    if q.arrows[a].src != at {
                        return Err(Error::InvalidComplex(format!("path {:?} is not connected", t.path)));
                    }
                    at = q.arrows[a].tgt;
                }
                if at != path.tgt {
                    return Err(Error::InvalidComplex(format!(
                        "path {:?} ends in the wrong place",
                        t.path
                    )));
                }
                *entry.entry(path).or_insert_with(Q::zero) += coeff;
            }
            entry.retain(|_, c| !c.is_zero());
            differential.insert((m.from, m.to), entry);
        }
        let x = TwistedComplex { summands, differential };
        x.validate(q)?;
        Ok(x)
    }

    pub fn from_complex(q: &GradedQuiver, x: &TwistedComplex) -> Self {
        ComplexJson {
            summands: x
                .summands
                .iter()
                .map(|s| SummandJson {
                    vertex: q.name(s.vertex),
                    shift: s.shift,
                })
                .collect(),
            maps: x
                .differential
                .iter()
                .map(|(&(from, to), m)| MapJson {
                    from,
                    to,
                    terms: m
                        .iter()
                        .map(|(p, c)| TermJson {
                            coeff: c.to_string(),
                            path: p.arrows.iter().map(|&a| q.arrows[a].label.to_string()).collect(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}
