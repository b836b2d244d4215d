//! Parameter enumerations shared by the tests and the `sweep` command.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gluing::{CurveShape, GluingShape, GluingSpec, StackyCurveSpec};
use crate::perm::Permutation;

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Ranks up to which every permutation is tried.
pub const EXHAUSTIVE_RANK: usize = 3;
/// Random draws per rank tuple once some layer is too large to enumerate.
pub const RANDOM_DRAWS: usize = 50;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All tuples in `{1..=max_r}^len`.
pub fn rank_tuples(len: usize, max_r: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=max_r).map(move |r| {
                    let mut t = t.clone();
                    t.push(r);
                    t
                })
            })
            .collect();
    }
    out
}

pub fn all_permutations(r: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..r).collect();
    heap(&mut items, r, &mut out);
    out.sort();
    out
}

fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k <= 1 {
        out.push(Permutation::new(items.clone()).expect("permutation"));
        return;
    }
    for i in 0..k {
        heap(items, k - 1, out);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        items.swap(j, k - 1);
    }
}

pub fn random_permutation(r: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut image: Vec<usize> = (0..r).collect();
    image.shuffle(rng);
    Permutation::new(image).expect("shuffled identity")
}

/// Gluing data with `1 <= n <= max_n` components and ranks up to `max_r`.
/// Permutations are exhaustive on layers of rank at most 3; when some layer
/// is larger, the small layers stay exhaustive and the large ones receive
/// `RANDOM_DRAWS` joint random draws.
pub fn gluing_sweep(max_n: usize, max_r: usize, seed: u64) -> Vec<GluingSpec> {
    let mut rng = rng(seed);
    let mut out = Vec::new();
    for shape in [GluingShape::Linear, GluingShape::Circular] {
        for n in 1..=max_n {
            let len = if shape == GluingShape::Linear { n + 1 } else { n };
            for ranks in rank_tuples(len, max_r) {
                let skeleton = GluingSpec::untwisted(shape, ranks.clone()).expect("valid ranks");
                let layer_ranks: Vec<usize> = (1..=skeleton.layer_count()).map(|i| skeleton.layer_rank(i)).collect();
                for perms in perm_tuples(&layer_ranks, &mut rng) {
                    out.push(GluingSpec::new(shape, ranks.clone(), perms).expect("sizes match"));
                }
            }
        }
    }
    out
}

fn perm_tuples(layer_ranks: &[usize], rng: &mut ChaCha8Rng) -> Vec<Vec<Permutation>> {
    let mut small = vec![Vec::new()];
    for &r in layer_ranks {
        if r <= EXHAUSTIVE_RANK {
            small = small
                .into_iter()
                .flat_map(|t: Vec<Option<Permutation>>| {
                    all_permutations(r).into_iter().map(move |p| {
                        let mut t = t.clone();
                        t.push(Some(p));
                        t
                    })
                })
                .collect();
        } else {
            for t in small.iter_mut() {
                t.push(None);
            }
        }
    }
    let needs_draws = layer_ranks.iter().any(|&r| r > EXHAUSTIVE_RANK);
    let mut out = Vec::new();
    for t in small {
        let draws = if needs_draws { RANDOM_DRAWS } else { 1 };
        for _ in 0..draws {
            out.push(
                t.iter()
                    .zip(layer_ranks)
                    .map(|(p, &r)| p.clone().unwrap_or_else(|| random_permutation(r, rng)))
                    .collect(),
            );
        }
    }
    out
}

pub fn units(r: usize) -> Vec<i64> {
    (0..r as i64).filter(|k| k.gcd(&(r as i64)) == 1).collect()
}

/// Every chain and ring with at most `max_n` components, ranks up to `max_r`
/// and every twist in `(Z/r)*`.
pub fn curve_sweep(max_n: usize, max_r: usize) -> Vec<StackyCurveSpec> {
    let mut out = Vec::new();
    for shape in [CurveShape::Chain, CurveShape::Ring] {
        for n in 1..=max_n {
            let len = if shape == CurveShape::Chain { n + 1 } else { n };
            for ranks in rank_tuples(len, max_r) {
                let node_ranks: Vec<usize> = match shape {
                    CurveShape::Chain => ranks[1..ranks.len() - 1].to_vec(),
                    CurveShape::Ring => ranks.clone(),
                };
                let mut twists = vec![Vec::new()];
                for &r in &node_ranks {
                    twists = twists
                        .into_iter()
                        .flat_map(|t: Vec<i64>| {
                            units(r).into_iter().map(move |k| {
                                let mut t = t.clone();
                                t.push(k);
                                t
                            })
                        })
                        .collect();
                }
                for t in twists {
                    out.push(StackyCurveSpec::new(shape, ranks.clone(), t).expect("valid twists"));
                }
            }
        }
    }
    out
}

/// `count` distinct members of `items`, chosen reproducibly.
pub fn subsample<T: Clone>(items: &[T], count: usize, seed: u64) -> Vec<T> {
    let mut rng = rng(seed);
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.shuffle(&mut rng);
    idx.truncate(count);
    idx.sort_unstable();
    idx.into_iter().map(|i| items[i].clone()).collect()
}
