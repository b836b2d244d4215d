//! Permutations of `{0, .., r-1}`.
//!
//! Composition is right-to-left: `compose(p, q)(x) = p(q(x))`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, .., r-1}` stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(image: Vec<usize>) -> Result<Self> {
        Permutation::new(image)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.image
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    /// Orbits, each starting at its smallest element, sorted by that element.
    pub cycles: Vec<Vec<usize>>,
    /// Number of cycles of each length.
    pub counts: BTreeMap<usize, usize>,
}

impl CycleDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        out.sort_unstable();
        out
    }
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let r = image.len();
        if r == 0 {
            return Err(Error::NotAPermutation(image));
        }
        let mut seen = vec![false; r];
        for &y in &image {
            if y >= r || seen[y] {
                return Err(Error::NotAPermutation(image));
            }
            seen[y] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(r: usize) -> Self {
        Permutation {
            image: (0..r).collect(),
        }
    }

    /// `x -> x + shift mod r`.
    pub fn rotation(r: usize, shift: i64) -> Self {
        let rr = r as i64;
        Permutation {
            image: (0..rr).map(|x| (x + shift).rem_euclid(rr) as usize).collect(),
        }
    }

    /// The standard rotation `x -> x - 1 mod r`.
    pub fn tau(r: usize) -> Self {
        Self::rotation(r, -1)
    }

    pub fn transposition(r: usize, a: usize, b: usize) -> Result<Self> {
        if a >= r || b >= r {
            return Err(Error::OutOfRange(format!("transposition ({a} {b}) on {r} points")));
        }
        let mut image: Vec<usize> = (0..r).collect();
        image.swap(a, b);
        Ok(Permutation { image })
    }

    /// `x -> -k x mod r`, defined when `gcd(k, r) = 1`.
    pub fn from_twist(k: i64, r: usize) -> Result<Self> {
        if r == 0 || k.gcd(&(r as i64)) != 1 {
            return Err(Error::InvalidTwist { k, r });
        }
        let rr = r as i64;
        Ok(Permutation {
            image: (0..rr).map(|x| (-k * x).rem_euclid(rr) as usize).collect(),
        })
    }

    /// Parses 1-based cycle notation such as `(1,2)(3)` into a permutation of `r` points.
    pub fn from_cycles_one_based(r: usize, text: &str) -> Result<Self> {
        let mut image: Vec<usize> = (0..r).collect();
        for chunk in text.split(')') {
            let body = chunk.trim().trim_start_matches('(');
            if body.trim().is_empty() {
                continue;
            }
            let pts = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .ok()
                        .filter(|&v| v >= 1 && v <= r)
                        .map(|v| v - 1)
                        .ok_or_else(|| Error::InvalidSpec(format!("bad cycle entry {s:?}")))
                })
                .collect::<Result<Vec<usize>>>()?;
            for w in 0..pts.len() {
                image[pts[w]] = pts[(w + 1) % pts.len()];
            }
        }
        Permutation::new(image)
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// `self^e` for any integer exponent.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Permutation::identity(self.size());
        for _ in 0..e.unsigned_abs() {
            out = compose(&base, &out).expect("same size");
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cd = cycle_decomposition(self);
        for c in &cd.cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.size() != q.size() {
        return Err(Error::SizeMismatch(p.size(), q.size()));
    }
    Ok(Permutation {
        image: q.image.iter().map(|&y| p.image[y]).collect(),
    })
}

/// `p q p^-1 q^-1`.
pub fn commutator(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    let pq = compose(p, q)?;
    let pqp = compose(&pq, &p.inverse())?;
    compose(&pqp, &q.inverse())
}

pub fn cycle_decomposition(p: &Permutation) -> CycleDecomposition {
    let r = p.size();
    let mut seen = vec![false; r];
    let mut cycles = Vec::new();
    let mut counts = BTreeMap::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = p.apply(x);
        }
        *counts.entry(cycle.len()).or_insert(0) += 1;
        cycles.push(cycle);
    }
    CycleDecomposition { cycles, counts }
}
