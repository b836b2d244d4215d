//! Input data for both sides and the closed-form topology predictors.
//!
//! Components are numbered from 1. A Linear spec with ranks `r0..rn` has
//! components `1..n`; component `i` has `r_{i-1}` marks or slots on its
//! minus circle and `r_i` on its plus circle, and strip layer `i` (for
//! `1 <= i < n`) joins the plus circle of component `i` to the minus circle of
//! component `i+1`. A Circular spec with ranks `r1..rn` has layers `1..n`,
//! layer `n` closing back onto component 1.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{commutator, cycle_decomposition, Permutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GluingShape {
    Linear,
    Circular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveShape {
    Chain,
    Ring,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGluing")]
pub struct GluingSpec {
    pub shape: GluingShape,
    pub ranks: Vec<usize>,
    pub perms: Vec<Permutation>,
}

#[derive(Deserialize)]
struct RawGluing {
    shape: GluingShape,
    ranks: Vec<usize>,
    #[serde(default)]
    perms: Vec<Permutation>,
}

impl TryFrom<RawGluing> for GluingSpec {
    type Error = Error;
    fn try_from(raw: RawGluing) -> Result<Self> {
        GluingSpec::new(raw.shape, raw.ranks, raw.perms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCurve")]
pub struct StackyCurveSpec {
    pub shape: CurveShape,
    pub ranks: Vec<usize>,
    pub twists: Vec<i64>,
}

#[derive(Deserialize)]
struct RawCurve {
    shape: CurveShape,
    ranks: Vec<usize>,
    #[serde(default)]
    twists: Vec<i64>,
}

impl TryFrom<RawCurve> for StackyCurveSpec {
    type Error = Error;
    fn try_from(raw: RawCurve) -> Result<Self> {
        StackyCurveSpec::new(raw.shape, raw.ranks, raw.twists)
    }
}

/// Either kind of input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSpec {
    Gluing(GluingSpec),
    Curve(StackyCurveSpec),
}

impl InputSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let shape = value
            .get("shape")
            .and_then(|s| s.as_str())
            .ok_or_else(|| Error::InvalidSpec("missing field `shape`".into()))?;
        match shape {
            "linear" | "circular" => serde_json::from_value(value)
                .map(InputSpec::Gluing)
                .map_err(|e| Error::InvalidSpec(e.to_string())),
            "chain" | "ring" => serde_json::from_value(value)
                .map(InputSpec::Curve)
                .map_err(|e| Error::InvalidSpec(e.to_string())),
            other => Err(Error::InvalidSpec(format!("unknown shape {other:?}"))),
        }
    }

    /// The gluing data, converting curve data through `from_curve`.
    pub fn gluing(&self) -> Result<GluingSpec> {
        match self {
            InputSpec::Gluing(g) => Ok(g.clone()),
            InputSpec::Curve(c) => from_curve(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceTopology {
    pub genus: usize,
    /// Marked points per boundary component, sorted.
    pub boundaries: Vec<usize>,
    pub euler: i64,
}

impl SurfaceTopology {
    /// Solves `euler = 2 - 2g - d` for the genus.
    pub fn from_euler(euler: i64, mut boundaries: Vec<usize>) -> Result<Self> {
        boundaries.sort_unstable();
        let twice_genus = 2 - euler - boundaries.len() as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(Error::InvalidSpec(format!(
                "no integral genus for euler {euler} with {} boundaries",
                boundaries.len()
            )));
        }
        Ok(SurfaceTopology {
            genus: (twice_genus / 2) as usize,
            boundaries,
            euler,
        })
    }

    pub fn marked_points(&self) -> usize {
        self.boundaries.iter().sum()
    }
}

impl GluingSpec {
    pub fn new(shape: GluingShape, ranks: Vec<usize>, perms: Vec<Permutation>) -> Result<Self> {
        if ranks.contains(&0) {
            return Err(Error::InvalidSpec("ranks must be positive".into()));
        }
        let (min_len, expected) = match shape {
            GluingShape::Linear => (2, ranks.len().saturating_sub(2)),
            GluingShape::Circular => (1, ranks.len()),
        };
        if ranks.len() < min_len {
            return Err(Error::InvalidSpec(format!(
                "{shape:?} spec needs at least {min_len} ranks, got {}",
                ranks.len()
            )));
        }
        if perms.len() != expected {
            return Err(Error::InvalidSpec(format!(
                "expected {expected} permutations, got {}",
                perms.len()
            )));
        }
        let spec = GluingSpec { shape, ranks, perms };
        for i in 1..=spec.layer_count() {
            let (r, p) = (spec.layer_rank(i), spec.layer_perm(i));
            if p.size() != r {
                return Err(Error::InvalidSpec(format!(
                    "permutation {i} has size {} but rank is {r}",
                    p.size()
                )));
            }
        }
        Ok(spec)
    }

    pub fn linear(ranks: Vec<usize>, perms: Vec<Permutation>) -> Result<Self> {
        Self::new(GluingShape::Linear, ranks, perms)
    }

    pub fn circular(ranks: Vec<usize>, perms: Vec<Permutation>) -> Result<Self> {
        Self::new(GluingShape::Circular, ranks, perms)
    }

    /// Linear or circular data with every permutation the identity.
    pub fn untwisted(shape: GluingShape, ranks: Vec<usize>) -> Result<Self> {
        let perms = match shape {
            GluingShape::Linear if ranks.len() >= 2 => ranks[1..ranks.len() - 1]
                .iter()
                .map(|&r| Permutation::identity(r.max(1)))
                .collect(),
            GluingShape::Linear => Vec::new(),
            GluingShape::Circular => ranks.iter().map(|&r| Permutation::identity(r.max(1))).collect(),
        };
        Self::new(shape, ranks, perms)
    }

    pub fn components(&self) -> usize {
        match self.shape {
            GluingShape::Linear => self.ranks.len() - 1,
            GluingShape::Circular => self.ranks.len(),
        }
    }

    pub fn layer_count(&self) -> usize {
        self.perms.len()
    }

    pub fn layer_rank(&self, i: usize) -> usize {
        match self.shape {
            GluingShape::Linear => self.ranks[i],
            GluingShape::Circular => self.ranks[i - 1],
        }
    }

    pub fn layer_perm(&self, i: usize) -> &Permutation {
        &self.perms[i - 1]
    }

    /// Component receiving the minus ends of layer `i`.
    pub fn next_component(&self, i: usize) -> usize {
        match self.shape {
            GluingShape::Linear => i + 1,
            GluingShape::Circular => i % self.components() + 1,
        }
    }

    /// Layer feeding the minus circle of component `i`, if any.
    pub fn incoming_layer(&self, i: usize) -> Option<usize> {
        match self.shape {
            GluingShape::Linear => (i >= 2).then(|| i - 1),
            GluingShape::Circular => Some(if i == 1 { self.components() } else { i - 1 }),
        }
    }

    /// Layer leaving the plus circle of component `i`, if any.
    pub fn outgoing_layer(&self, i: usize) -> Option<usize> {
        match self.shape {
            GluingShape::Linear => (i < self.components()).then_some(i),
            GluingShape::Circular => Some(i),
        }
    }

    pub fn minus_rank(&self, i: usize) -> usize {
        match self.shape {
            GluingShape::Linear => self.ranks[i - 1],
            GluingShape::Circular => self.layer_rank(self.incoming_layer(i).unwrap()),
        }
    }

    pub fn plus_rank(&self, i: usize) -> usize {
        match self.shape {
            GluingShape::Linear => self.ranks[i],
            GluingShape::Circular => self.ranks[i - 1],
        }
    }

    /// Sum of the ranks carrying strips.
    pub fn strip_count(&self) -> usize {
        (1..=self.layer_count()).map(|i| self.layer_rank(i)).sum()
    }

    /// Marks on the distinguished end circles (zero for circular data).
    pub fn end_marks(&self) -> usize {
        match self.shape {
            GluingShape::Linear => self.ranks[0] + self.ranks[self.ranks.len() - 1],
            GluingShape::Circular => 0,
        }
    }

    /// Replaces perm `i` by `tau^c . perm_i`, i.e. `x |-> perm_i(x) - c`.
    pub fn with_shifted_perm(&self, i: usize, c: i64) -> Self {
        let mut out = self.clone();
        let r = self.layer_rank(i);
        out.perms[i - 1] = crate::perm::compose(&Permutation::tau(r).pow(c), &self.perms[i - 1]).expect("same size");
        out
    }
}

impl StackyCurveSpec {
    pub fn new(shape: CurveShape, ranks: Vec<usize>, twists: Vec<i64>) -> Result<Self> {
        if ranks.contains(&0) {
            return Err(Error::InvalidSpec("ranks must be positive".into()));
        }
        let (min_len, expected) = match shape {
            CurveShape::Chain => (2, ranks.len().saturating_sub(2)),
            CurveShape::Ring => (1, ranks.len()),
        };
        if ranks.len() < min_len {
            return Err(Error::InvalidSpec(format!(
                "{shape:?} spec needs at least {min_len} ranks, got {}",
                ranks.len()
            )));
        }
        if twists.len() != expected {
            return Err(Error::InvalidSpec(format!(
                "expected {expected} twists, got {}",
                twists.len()
            )));
        }
        let spec = StackyCurveSpec { shape, ranks, twists };
        for i in 1..=spec.node_count() {
            let (k, r) = (spec.twist(i), spec.node_rank(i));
            if k.gcd(&(r as i64)) != 1 {
                return Err(Error::InvalidTwist { k, r });
            }
        }
        Ok(spec)
    }

    pub fn chain(ranks: Vec<usize>, twists: Vec<i64>) -> Result<Self> {
        Self::new(CurveShape::Chain, ranks, twists)
    }

    pub fn ring(ranks: Vec<usize>, twists: Vec<i64>) -> Result<Self> {
        Self::new(CurveShape::Ring, ranks, twists)
    }

    pub fn components(&self) -> usize {
        match self.shape {
            CurveShape::Chain => self.ranks.len() - 1,
            CurveShape::Ring => self.ranks.len(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.twists.len()
    }

    pub fn node_rank(&self, i: usize) -> usize {
        match self.shape {
            CurveShape::Chain => self.ranks[i],
            CurveShape::Ring => self.ranks[i - 1],
        }
    }

    pub fn twist(&self, i: usize) -> i64 {
        self.twists[i - 1]
    }

    /// Component on the far side of node `i`.
    pub fn next_component(&self, i: usize) -> usize {
        match self.shape {
            CurveShape::Chain => i + 1,
            CurveShape::Ring => i % self.components() + 1,
        }
    }

    /// Length of the x-row of component `i`.
    pub fn minus_rank(&self, i: usize) -> usize {
        match self.shape {
            CurveShape::Chain => self.ranks[i - 1],
            CurveShape::Ring => self.ranks[(i + self.components() - 2) % self.components()],
        }
    }

    /// Length of the y-row of component `i`.
    pub fn plus_rank(&self, i: usize) -> usize {
        match self.shape {
            CurveShape::Chain => self.ranks[i],
            CurveShape::Ring => self.ranks[i - 1],
        }
    }

    /// Node on the minus side of component `i`, if that side is a node.
    pub fn node_before(&self, i: usize) -> Option<usize> {
        match self.shape {
            CurveShape::Chain => (i >= 2).then(|| i - 1),
            CurveShape::Ring => Some(if i == 1 { self.components() } else { i - 1 }),
        }
    }

    /// Node on the plus side of component `i`, if that side is a node.
    pub fn node_after(&self, i: usize) -> Option<usize> {
        match self.shape {
            CurveShape::Chain => (i < self.components()).then_some(i),
            CurveShape::Ring => Some(i),
        }
    }
}

pub fn from_curve(c: &StackyCurveSpec) -> Result<GluingSpec> {
    let perms = (1..=c.node_count())
        .map(|i| Permutation::from_twist(c.twist(i), c.node_rank(i)))
        .collect::<Result<Vec<_>>>()?;
    let shape = match c.shape {
        CurveShape::Chain => GluingShape::Linear,
        CurveShape::Ring => GluingShape::Circular,
    };
    GluingSpec::new(shape, c.ranks.clone(), perms)
}

pub fn predicted_topology(g: &GluingSpec) -> SurfaceTopology {
    let mut boundaries = Vec::new();
    if g.shape == GluingShape::Linear {
        boundaries.push(g.ranks[0]);
        boundaries.push(g.ranks[g.ranks.len() - 1]);
    }
    for i in 1..=g.layer_count() {
        let r = g.layer_rank(i);
        let c = commutator(g.layer_perm(i), &Permutation::tau(r)).expect("sizes checked");
        for cycle in cycle_decomposition(&c).cycles {
            boundaries.push(2 * cycle.len());
        }
    }
    let euler = -(g.strip_count() as i64);
    SurfaceTopology::from_euler(euler, boundaries).expect("predicted genus must be integral")
}

pub fn predicted_topology_curve(c: &StackyCurveSpec) -> SurfaceTopology {
    let mut boundaries = Vec::new();
    let mut excess = 0usize;
    for i in 1..=c.node_count() {
        let r = c.node_rank(i);
        let p = (c.twist(i) + 1).gcd(&(r as i64)) as usize;
        excess += r - p;
        boundaries.extend(std::iter::repeat_n(2 * (r / p), p));
    }
    let genus = match c.shape {
        CurveShape::Chain => {
            boundaries.push(c.ranks[0]);
            boundaries.push(c.ranks[c.ranks.len() - 1]);
            excess / 2
        }
        CurveShape::Ring => 1 + excess / 2,
    };
    assert!(excess.is_multiple_of(2), "r_i - p_i sums to an odd number");
    boundaries.sort_unstable();
    let euler = 2 - 2 * genus as i64 - boundaries.len() as i64;
    SurfaceTopology {
        genus,
        boundaries,
        euler,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap01(r: usize) -> Permutation {
        Permutation::transposition(r, 0, 1).unwrap()
    }

    #[test]
    fn swapped_linear_prediction() {
        let g = GluingSpec::linear(vec![1, 3, 3, 1], vec![swap01(3), swap01(3)]).unwrap();
        let t = predicted_topology(&g);
        assert_eq!(t.genus, 2);
        assert_eq!(t.boundaries, vec![1, 1, 6, 6]);
        assert_eq!(t.euler, -6);
    }

    #[test]
    fn untwisted_linear_is_genus_zero() {
        let g = GluingSpec::untwisted(GluingShape::Linear, vec![2, 3, 1, 4]).unwrap();
        let t = predicted_topology(&g);
        assert_eq!(t.genus, 0);
        assert_eq!(t.boundaries, vec![2, 2, 2, 2, 2, 4]);
    }

    #[test]
    fn untwisted_circular_is_genus_one() {
        let g = GluingSpec::untwisted(GluingShape::Circular, vec![2, 1]).unwrap();
        let t = predicted_topology(&g);
        assert_eq!(t.genus, 1);
        assert_eq!(t.boundaries, vec![2, 2, 2]);
    }

    #[test]
    fn curve_to_gluing() {
        let c = StackyCurveSpec::chain(vec![1, 3, 1], vec![2]).unwrap();
        assert!(from_curve(&c).unwrap().perms[0].is_identity());
        let c = StackyCurveSpec::ring(vec![5], vec![2]).unwrap();
        assert_eq!(from_curve(&c).unwrap().perms[0].image(), &[0, 3, 1, 4, 2]);
        let c = StackyCurveSpec::ring(vec![3, 1, 1], vec![1, 0, 0]).unwrap();
        let g = from_curve(&c).unwrap();
        assert_eq!(g.perms[0].image(), &[0, 2, 1]);
        assert!(g.perms[1].is_identity() && g.perms[2].is_identity());
    }

    #[test]
    fn curve_formulas() {
        let t = predicted_topology_curve(&StackyCurveSpec::ring(vec![3], vec![1]).unwrap());
        assert_eq!((t.genus, t.boundaries.clone()), (2, vec![6]));
        let t = predicted_topology_curve(&StackyCurveSpec::ring(vec![5], vec![2]).unwrap());
        assert_eq!((t.genus, t.boundaries.clone(), t.euler), (3, vec![10], -5));
        let t = predicted_topology_curve(&StackyCurveSpec::ring(vec![2, 2], vec![1, 1]).unwrap());
        assert_eq!((t.genus, t.boundaries.clone()), (1, vec![2, 2, 2, 2]));
        let t = predicted_topology_curve(&StackyCurveSpec::chain(vec![2, 3, 1], vec![2]).unwrap());
        assert_eq!((t.genus, t.boundaries.clone()), (0, vec![1, 2, 2, 2, 2]));
    }

    #[test]
    fn validation() {
        assert!(GluingSpec::linear(vec![1], vec![]).is_err());
        assert!(GluingSpec::linear(vec![1, 0], vec![]).is_err());
        assert!(GluingSpec::linear(vec![1, 2, 1], vec![]).is_err());
        assert!(GluingSpec::circular(vec![2], vec![Permutation::identity(3)]).is_err());
        assert!(GluingSpec::circular(vec![], vec![]).is_err());
        assert!(StackyCurveSpec::ring(vec![4], vec![2]).is_err());
        assert!(StackyCurveSpec::chain(vec![1, 1, 1], vec![0]).is_ok());
    }

    #[test]
    fn json_shapes() {
        let s = InputSpec::from_json(r#"{"shape":"linear","ranks":[1,3,3,1],"perms":[[1,0,2],[1,0,2]]}"#).unwrap();
        assert!(matches!(s, InputSpec::Gluing(_)));
        let s = InputSpec::from_json(r#"{"shape":"ring","ranks":[2,2],"twists":[1,1]}"#).unwrap();
        assert!(matches!(s, InputSpec::Curve(_)));
        assert!(InputSpec::from_json(r#"{"shape":"ring","ranks":[],"twists":[]}"#).is_err());
        assert!(InputSpec::from_json(r#"{"shape":"blob","ranks":[1]}"#).is_err());
        let g = GluingSpec::linear(vec![1, 3, 3, 1], vec![swap01(3), swap01(3)]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<GluingSpec>(&text).unwrap(), g);
    }
}
