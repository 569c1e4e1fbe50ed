//! Seeded random generation of words and configurations. The generator is
//! ChaCha8 seeded from a 64-bit value, so identical parameters reproduce
//! identical output on every platform. Coordinates are fractions with
//! denominators built from the configured bound, which keeps the exact
//! arithmetic in downstream factorizations small.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorization::pinwheel;
use crate::geometry::{Configuration, Cube, Interval, Permutation};
use crate::rational::Rational;
use crate::words::{AxisBlocks, Generator, TensorWord};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub seed: u64,
    pub blocks: AxisBlocks,
    pub max_generators: usize,
    pub max_arity_per_generator: usize,
    pub coordinate_denominator_bound: u64,
    pub allow_nullary: bool,
}

impl GenParams {
    pub fn new(seed: u64, blocks: AxisBlocks) -> GenParams {
        GenParams {
            seed,
            blocks,
            max_generators: 4,
            max_arity_per_generator: 3,
            coordinate_denominator_bound: 8,
            allow_nullary: true,
        }
    }
}

/// SplitMix64; used to derive independent trial seeds from a suite seed.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A fraction k/D with 0 < k < D, strictly inside the given interval.
fn cut_point(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational, denom: u64) -> Rational {
    let k = rng.random_range(1..denom);
    let frac = Rational::from_big(k.into(), denom.into()).expect("denom > 0");
    lo + &(&(hi - lo) * &frac)
}

/// `arity` pairwise disjoint boxes inside the unit cube, produced by random
/// binary splitting followed by optional per-box shrinking.
fn random_config(rng: &mut ChaCha8Rng, dim: usize, arity: usize, denom: u64) -> Configuration {
    if arity == 0 {
        return Configuration::empty(dim);
    }
    let mut boxes = vec![Cube::full(dim)];
    while boxes.len() < arity {
        let idx = rng.random_range(0..boxes.len());
        let axis = rng.random_range(0..dim);
        let cube = boxes.swap_remove(idx);
        let iv = cube.interval(axis);
        let cut = cut_point(rng, iv.lo(), iv.hi(), denom);
        let mut left = cube.intervals().to_vec();
        let mut right = cube.intervals().to_vec();
        left[axis] = Interval::new(iv.lo().clone(), cut.clone()).expect("cut inside");
        right[axis] = Interval::new(cut, iv.hi().clone()).expect("cut inside");
        boxes.push(Cube::new(left));
        boxes.push(Cube::new(right));
    }
    let shrunk = boxes
        .into_iter()
        .map(|cube| {
            if !rng.random_bool(0.5) {
                return cube;
            }
            let intervals = cube
                .intervals()
                .iter()
                .map(|iv| {
                    let mut s1 = rng.random_range(0..denom);
                    let mut s2 = rng.random_range(1..=denom);
                    if s1 >= s2 {
                        std::mem::swap(&mut s1, &mut s2);
                        if s1 == s2 {
                            s1 -= 1;
                        }
                    }
                    let len = iv.length();
                    let at = |k: u64| {
                        iv.lo()
                            + &(&len * &Rational::from_big(k.into(), denom.into()).expect("denom"))
                    };
                    Interval::new(at(s1), at(s2)).expect("s1 < s2")
                })
                .collect();
            Cube::new(intervals)
        })
        .collect();
    Configuration::new(dim, shrunk).expect("splitting preserves disjointness")
}

/// Seeded random operation of the little `dim`-cubes operad.
pub fn gen_operation(seed: u64, dim: usize, arity: usize, denom: u64) -> Configuration {
    let mut rng = rng_for(seed);
    random_config(&mut rng, dim, arity, denom.max(2))
}

/// Deterministic random tensor word: repeatedly replace a random leaf with
/// a random generator carrying fresh leaves, then assign a random
/// permutation of 1..=j to the leaves.
pub fn gen_word(params: &GenParams) -> Result<TensorWord> {
    if params.coordinate_denominator_bound < 2 {
        return Err(Error::InvalidBlocks(
            "coordinate denominator bound must be at least 2".into(),
        ));
    }
    let mut rng = rng_for(params.seed);
    let denom = params.coordinate_denominator_bound;
    let n_gens = rng.random_range(0..=params.max_generators);

    // grow with placeholder leaves (label 0)
    let mut word = TensorWord::leaf(0);
    for _ in 0..n_gens {
        let mut paths = Vec::new();
        collect_leaf_paths(&word, &mut Vec::new(), &mut paths);
        if paths.is_empty() {
            break; // word became nullary
        }
        let path = &paths[rng.random_range(0..paths.len())];
        let block = rng.random_range(1..=params.blocks.count());
        let min_arity = usize::from(!params.allow_nullary);
        let arity = rng.random_range(min_arity..=params.max_arity_per_generator.max(min_arity));
        let op = random_config(&mut rng, params.blocks.size(block)?, arity, denom);
        let node = TensorWord::node(
            Generator::new(block, op),
            (0..arity).map(|_| TensorWord::leaf(0)).collect(),
        );
        word = replace_leaf(&word, path, node);
    }

    // random leaf labeling
    let arity = word.arity();
    let sigma = random_permutation(&mut rng, arity);
    let mut next = 0;
    let word = assign_labels(&word, &mut next, &sigma);
    word.validate(&params.blocks)?;
    Ok(word)
}

fn collect_leaf_paths(word: &TensorWord, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    match word {
        TensorWord::Leaf { .. } => out.push(prefix.clone()),
        TensorWord::Node { children, .. } => {
            for (idx, child) in children.iter().enumerate() {
                prefix.push(idx);
                collect_leaf_paths(child, prefix, out);
                prefix.pop();
            }
        }
    }
}

fn replace_leaf(word: &TensorWord, path: &[usize], new: TensorWord) -> TensorWord {
    if path.is_empty() {
        return new;
    }
    let TensorWord::Node { gen, children } = word else {
        unreachable!("path leads through nodes");
    };
    let mut children = children.clone();
    children[path[0]] = replace_leaf(&children[path[0]], &path[1..], new);
    TensorWord::node(gen.clone(), children)
}

fn assign_labels(word: &TensorWord, next: &mut usize, sigma: &Permutation) -> TensorWord {
    match word {
        TensorWord::Leaf { .. } => {
            let label = sigma.apply(*next) + 1;
            *next += 1;
            TensorWord::leaf(label)
        }
        TensorWord::Node { gen, children } => TensorWord::node(
            gen.clone(),
            children
                .iter()
                .map(|c| assign_labels(c, next, sigma))
                .collect(),
        ),
    }
}

pub fn random_permutation(rng: &mut ChaCha8Rng, size: usize) -> Permutation {
    let mut images: Vec<usize> = (0..size).collect();
    // Fisher-Yates
    for i in (1..size).rev() {
        let j = rng.random_range(0..=i);
        images.swap(i, j);
    }
    Permutation::new(images).expect("shuffle is a bijection")
}

/// Seeded random configuration, or the fixed pinwheel preset.
pub fn gen_config(seed: u64, dim: usize, arity: usize, use_pinwheel: bool) -> Result<Configuration> {
    if use_pinwheel {
        if dim != 2 || arity != 4 {
            return Err(Error::PinwheelShape { dim, arity });
        }
        return Ok(pinwheel());
    }
    let mut rng = rng_for(seed);
    Ok(random_config(&mut rng, dim, arity, 8))
}

/// Rejection-sampled configuration: boxes are placed independently and
/// retried on overlap, which (unlike binary splitting) can produce
/// non-decomposable layouts. Falls back to splitting when placement keeps
/// failing.
pub fn gen_config_scattered(seed: u64, dim: usize, arity: usize) -> Configuration {
    let mut rng = rng_for(seed);
    let denom = 16u64;
    let mut cubes: Vec<Cube> = Vec::new();
    let mut attempts = 0;
    while cubes.len() < arity && attempts < 200 {
        attempts += 1;
        let intervals = (0..dim)
            .map(|_| {
                let mut a = rng.random_range(0..denom);
                let mut b = rng.random_range(1..=denom);
                if a >= b {
                    std::mem::swap(&mut a, &mut b);
                    if a == b {
                        a -= 1;
                    }
                }
                // cap the side length to keep boxes small
                let b = b.min(a + denom / 4 + 1);
                Interval::new(
                    Rational::from_big(a.into(), denom.into()).expect("denom"),
                    Rational::from_big(b.into(), denom.into()).expect("denom"),
                )
                .expect("a < b")
            })
            .collect();
        let cube = Cube::new(intervals);
        if cubes.iter().all(|c| !c.overlaps(&cube)) {
            cubes.push(cube);
        }
    }
    if cubes.len() < arity {
        return random_config(&mut rng, dim, arity, 8);
    }
    Configuration::new(dim, cubes).expect("rejection sampling keeps cubes disjoint")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blocks11() -> AxisBlocks {
        AxisBlocks::new(vec![1, 1]).unwrap()
    }

    #[test]
    fn zero_generators_gives_single_leaf() {
        let mut params = GenParams::new(7, blocks11());
        params.max_generators = 0;
        assert_eq!(gen_word(&params).unwrap(), TensorWord::leaf(1));
    }

    #[test]
    fn same_seed_same_word() {
        let params = GenParams::new(42, blocks11());
        assert_eq!(gen_word(&params).unwrap(), gen_word(&params).unwrap());
        let other = GenParams::new(43, blocks11());
        // different seeds almost surely differ; if not, determinism still holds
        let _ = gen_word(&other).unwrap();
    }

    #[test]
    fn generated_words_validate_and_eval() {
        let blocks = blocks11();
        for seed in 0..50 {
            let params = GenParams::new(seed, blocks.clone());
            let w = gen_word(&params).unwrap();
            w.validate(&blocks).unwrap();
            w.eval(&blocks).unwrap();
        }
    }

    #[test]
    fn gen_config_pinwheel_preset() {
        assert_eq!(gen_config(0, 2, 4, true).unwrap(), pinwheel());
        assert!(gen_config(0, 3, 4, true).is_err());
        assert_eq!(gen_config(0, 2, 0, false).unwrap(), Configuration::empty(2));
    }

    #[test]
    fn gen_config_valid_and_deterministic() {
        for seed in 0..30 {
            let c = gen_config(seed, 2, 5, false).unwrap();
            assert_eq!(c.arity(), 5);
            assert_eq!(c, gen_config(seed, 2, 5, false).unwrap());
            let s = gen_config_scattered(seed, 2, 4);
            assert_eq!(s.arity(), 4);
            assert_eq!(s, gen_config_scattered(seed, 2, 4));
        }
    }
}
