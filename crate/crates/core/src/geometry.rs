//! Exact-rational boxes and configurations of little cubes, together with
//! the operad structure on them: composition, identity, and the symmetric
//! group action by relabeling.
//!
//! A "cube" here is an axis-aligned box in the open unit d-cube, i.e. the
//! image of an orientation-preserving affine embedding with independent
//! scaling per axis. A configuration is an ordered list of such boxes with
//! pairwise disjoint interiors; the list position is the input label.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// One axis factor of a cube: the open interval ]lo, hi[ with
/// 0 <= lo < hi <= 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval")]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

#[derive(Deserialize)]
struct RawInterval {
    lo: Rational,
    hi: Rational,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;
    fn try_from(raw: RawInterval) -> Result<Interval> {
        Interval::new(raw.lo, raw.hi)
    }
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Interval> {
        if lo.is_negative() || lo >= hi || hi > Rational::one() {
            return Err(Error::InvalidInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn full() -> Interval {
        Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_full(&self) -> bool {
        self.lo.is_zero() && self.hi == Rational::one()
    }

    /// Open intervals share a point.
    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    /// Containment as open sets: ]other[ a subset of ]self[.
    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Image of `inner` under the affine map sending ]0,1[ onto self.
    pub fn apply(&self, inner: &Interval) -> Interval {
        let len = self.length();
        Interval {
            lo: &self.lo + &(&len * &inner.lo),
            hi: &self.lo + &(&len * &inner.hi),
        }
    }

    /// Preimage of `sub` (a subinterval of self) under the same affine map.
    pub fn preimage(&self, sub: &Interval) -> Result<Interval> {
        let len = self.length();
        Interval::new(&(&sub.lo - &self.lo) / &len, &(&sub.hi - &self.lo) / &len)
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: if self.lo <= other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi >= other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = if self.lo >= other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi <= other.hi { self.hi.clone() } else { other.hi.clone() };
        if lo < hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }
}

/// A single little cube: the product of one open interval per axis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cube {
    intervals: Vec<Interval>,
}

impl Cube {
    pub fn new(intervals: Vec<Interval>) -> Cube {
        Cube { intervals }
    }

    pub fn full(dim: usize) -> Cube {
        Cube {
            intervals: vec![Interval::full(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, axis: usize) -> &Interval {
        &self.intervals[axis]
    }

    pub fn is_full(&self) -> bool {
        self.intervals.iter().all(Interval::is_full)
    }

    pub fn volume(&self) -> Rational {
        self.intervals
            .iter()
            .fold(Rational::one(), |acc, iv| &acc * &iv.length())
    }

    /// Open boxes share a point iff they overlap on every axis.
    pub fn overlaps(&self, other: &Cube) -> bool {
        debug_assert_eq!(self.dim(), other.dim());
        self.intervals
            .iter()
            .zip(&other.intervals)
            .all(|(a, b)| a.overlaps(b))
    }

    pub fn contains(&self, other: &Cube) -> bool {
        self.intervals
            .iter()
            .zip(&other.intervals)
            .all(|(a, b)| a.contains(b))
    }

    /// Composite of affine embeddings: the image of `inner` under the map
    /// whose image is self.
    pub fn apply(&self, inner: &Cube) -> Result<Cube> {
        if self.dim() != inner.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: inner.dim(),
            });
        }
        Ok(Cube {
            intervals: self
                .intervals
                .iter()
                .zip(&inner.intervals)
                .map(|(o, i)| o.apply(i))
                .collect(),
        })
    }

    /// Restriction to a contiguous range of axes.
    pub fn project(&self, axes: std::ops::Range<usize>) -> Cube {
        Cube {
            intervals: self.intervals[axes].to_vec(),
        }
    }

    pub fn hull(&self, other: &Cube) -> Cube {
        Cube {
            intervals: self
                .intervals
                .iter()
                .zip(&other.intervals)
                .map(|(a, b)| a.hull(b))
                .collect(),
        }
    }

    pub fn center(&self) -> Vec<Rational> {
        let half = Rational::new(1, 2);
        self.intervals
            .iter()
            .map(|iv| &(iv.lo() + iv.hi()) * &half)
            .collect()
    }
}

/// An operation of the little d-cubes operad: j labeled cubes with pairwise
/// disjoint interiors. j = 0 is the nullary operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawConfiguration")]
pub struct Configuration {
    dim: usize,
    cubes: Vec<Cube>,
}

#[derive(Deserialize)]
struct RawConfiguration {
    dim: usize,
    cubes: Vec<Cube>,
}

impl TryFrom<RawConfiguration> for Configuration {
    type Error = Error;
    fn try_from(raw: RawConfiguration) -> Result<Configuration> {
        Configuration::new(raw.dim, raw.cubes)
    }
}

impl Configuration {
    pub fn new(dim: usize, cubes: Vec<Cube>) -> Result<Configuration> {
        for cube in &cubes {
            if cube.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: cube.dim(),
                });
            }
        }
        for a in 0..cubes.len() {
            for b in a + 1..cubes.len() {
                if cubes[a].overlaps(&cubes[b]) {
                    return Err(Error::OverlappingCubes { a: a + 1, b: b + 1 });
                }
            }
        }
        Ok(Configuration { dim, cubes })
    }

    /// The unique nullary operation.
    pub fn empty(dim: usize) -> Configuration {
        Configuration { dim, cubes: vec![] }
    }

    /// The operad unit: one cube equal to the full open unit d-cube.
    pub fn identity(dim: usize) -> Configuration {
        Configuration {
            dim,
            cubes: vec![Cube::full(dim)],
        }
    }

    pub fn single(cube: Cube) -> Configuration {
        Configuration {
            dim: cube.dim(),
            cubes: vec![cube],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.cubes.len()
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn cube(&self, index: usize) -> &Cube {
        &self.cubes[index]
    }

    pub fn is_identity(&self) -> bool {
        self.cubes.len() == 1 && self.cubes[0].is_full()
    }

    /// Operadic composition: plug `inners[i]` into the i-th cube.
    pub fn compose(&self, inners: &[Configuration]) -> Result<Configuration> {
        if inners.len() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: inners.len(),
            });
        }
        let mut cubes = Vec::new();
        for (outer, inner) in self.cubes.iter().zip(inners) {
            if inner.dim != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    got: inner.dim,
                });
            }
            for cube in &inner.cubes {
                cubes.push(outer.apply(cube)?);
            }
        }
        let result = Configuration {
            dim: self.dim,
            cubes,
        };
        debug_assert!(result.clone().revalidate().is_ok());
        Ok(result)
    }

    /// Partial composition at input `index` (0-based), identities elsewhere.
    pub fn compose_at(&self, index: usize, inner: &Configuration) -> Result<Configuration> {
        let mut inners = vec![Configuration::identity(self.dim); self.arity()];
        inners[index] = inner.clone();
        self.compose(&inners)
    }

    /// Drop the cube at `index`: composition with the nullary operation there.
    pub fn drop_cube(&self, index: usize) -> Configuration {
        let mut cubes = self.cubes.clone();
        cubes.remove(index);
        Configuration {
            dim: self.dim,
            cubes,
        }
    }

    /// Right action of a permutation: cube i of the result is cube sigma(i).
    pub fn act(&self, sigma: &Permutation) -> Result<Configuration> {
        if sigma.size() != self.arity() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                got: sigma.size(),
            });
        }
        Ok(Configuration {
            dim: self.dim,
            cubes: (0..self.arity())
                .map(|i| self.cubes[sigma.apply(i)].clone())
                .collect(),
        })
    }

    /// Minimum cube volume; the computational shadow of escape to infinity.
    pub fn min_cube_volume(&self) -> Result<Rational> {
        self.cubes
            .iter()
            .map(Cube::volume)
            .min()
            .ok_or(Error::EmptyConfiguration)
    }

    fn revalidate(self) -> Result<Configuration> {
        Configuration::new(self.dim, self.cubes)
    }
}

/// A bijection of {0..size-1}; externally labels run 1..=size.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i]` is the 0-based image of i.
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let size = images.len();
        let mut seen = vec![false; size];
        for &img in &images {
            if img >= size || seen[img] {
                return Err(Error::InvalidPermutation { size });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(size: usize) -> Permutation {
        Permutation {
            images: (0..size).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    /// self after other: (self * other)(i) = self(other(i)), so that
    /// act(act(c, self), other) = act(c, self * other).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }
}

/// The identity operad element of dimension d (exposed free function to
/// match the rest of the operation surface).
pub fn identity(dim: usize) -> Configuration {
    Configuration::identity(dim)
}

/// The permutation induced on composite inputs when the outer operation is
/// permuted by `sigma` and the inner operations (arities given in their
/// original order) move with it:
/// act(outer, sigma) ∘ (inners ∘ sigma) = act(outer ∘ inners, result).
pub fn block_permutation(sigma: &Permutation, arities: &[usize]) -> Permutation {
    let offsets: Vec<usize> = arities
        .iter()
        .scan(0, |acc, &n| {
            let here = *acc;
            *acc += n;
            Some(here)
        })
        .collect();
    let mut images = Vec::with_capacity(arities.iter().sum());
    for i in 0..arities.len() {
        let src = sigma.apply(i);
        for r in 0..arities[src] {
            images.push(offsets[src] + r);
        }
    }
    Permutation::new(images).expect("block permutation is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    pub fn iv(lo: (i64, i64), hi: (i64, i64)) -> Interval {
        Interval::new(rat(lo.0, lo.1), rat(hi.0, hi.1)).unwrap()
    }

    fn cube1(lo: (i64, i64), hi: (i64, i64)) -> Cube {
        Cube::new(vec![iv(lo, hi)])
    }

    fn config1(ivs: &[((i64, i64), (i64, i64))]) -> Configuration {
        Configuration::new(1, ivs.iter().map(|&(l, h)| cube1(l, h)).collect()).unwrap()
    }

    #[test]
    fn interval_invariants() {
        assert!(Interval::new(rat(1, 2), rat(1, 2)).is_err());
        assert!(Interval::new(rat(-1, 2), rat(1, 2)).is_err());
        assert!(Interval::new(rat(1, 2), rat(3, 2)).is_err());
        assert!(Interval::new(rat(0, 1), rat(1, 1)).is_ok());
    }

    #[test]
    fn identity_is_full_cube() {
        let id = identity(2);
        assert_eq!(id.arity(), 1);
        assert!(id.cube(0).is_full());
    }

    #[test]
    fn box_apply_examples() {
        // ]0,1/2[ applied to ]1/3,1[ gives ]1/6,1/2[
        assert_eq!(iv((0, 1), (1, 2)).apply(&iv((1, 3), (1, 1))), iv((1, 6), (1, 2)));
        // full box is the identity
        assert_eq!(Interval::full().apply(&iv((1, 3), (1, 1))), iv((1, 3), (1, 1)));
        // ]1/2,1[ applied to ]1/3,1[ gives ]2/3,1[
        assert_eq!(iv((1, 2), (1, 1)).apply(&iv((1, 3), (1, 1))), iv((2, 3), (1, 1)));
    }

    #[test]
    fn compose_unit_laws() {
        let c = config1(&[((0, 1), (1, 2)), ((1, 2), (1, 1))]);
        assert_eq!(identity(1).compose(std::slice::from_ref(&c)).unwrap(), c);
        assert_eq!(
            c.compose(&[Configuration::identity(1), Configuration::identity(1)])
                .unwrap(),
            c
        );
    }

    #[test]
    fn compose_interval_example() {
        let halves = config1(&[((0, 1), (1, 2)), ((1, 2), (1, 1))]);
        let out = halves
            .compose(&[halves.clone(), Configuration::identity(1)])
            .unwrap();
        assert_eq!(
            out,
            config1(&[((0, 1), (1, 4)), ((1, 4), (1, 2)), ((1, 2), (1, 1))])
        );
    }

    #[test]
    fn compose_all_nullary() {
        let p = config1(&[((0, 1), (1, 2)), ((1, 2), (1, 1))]);
        let out = p
            .compose(&[Configuration::empty(1), Configuration::empty(1)])
            .unwrap();
        assert_eq!(out, Configuration::empty(1));
    }

    #[test]
    fn act_examples() {
        let c = config1(&[((0, 1), (1, 2)), ((1, 2), (1, 1))]);
        let id = Permutation::identity(2);
        assert_eq!(c.act(&id).unwrap(), c);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let swapped = c.act(&swap).unwrap();
        assert_eq!(swapped, config1(&[((1, 2), (1, 1)), ((0, 1), (1, 2))]));
        assert_eq!(swapped.act(&swap.inverse()).unwrap(), c);
    }

    #[test]
    fn min_volume_examples() {
        assert_eq!(identity(2).min_cube_volume().unwrap(), rat(1, 1));
        let grid = Configuration::new(
            2,
            vec![
                Cube::new(vec![iv((0, 1), (1, 2)), iv((0, 1), (1, 2))]),
                Cube::new(vec![iv((0, 1), (1, 2)), iv((1, 2), (1, 1))]),
                Cube::new(vec![iv((1, 2), (1, 1)), iv((0, 1), (1, 2))]),
                Cube::new(vec![iv((1, 2), (1, 1)), iv((1, 2), (1, 1))]),
            ],
        )
        .unwrap();
        assert_eq!(grid.min_cube_volume().unwrap(), rat(1, 4));
        assert!(Configuration::empty(2).min_cube_volume().is_err());
    }

    #[test]
    fn disjointness_rejected() {
        let overlapping = Configuration::new(
            1,
            vec![cube1((0, 1), (1, 2)), cube1((1, 3), (2, 3))],
        );
        assert!(matches!(overlapping, Err(Error::OverlappingCubes { .. })));
        // boundary contact is fine
        assert!(Configuration::new(1, vec![cube1((0, 1), (1, 2)), cube1((1, 2), (1, 1))]).is_ok());
    }

    #[test]
    fn config_json_roundtrip_and_validation() {
        let c = config1(&[((0, 1), (1, 2)), ((1, 2), (3, 4))]);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Configuration>(&json).unwrap(), c);
        // overlapping input is rejected at deserialization time
        let bad = r#"{"dim":1,"cubes":[{"intervals":[{"lo":"0","hi":"1/2"}]},{"intervals":[{"lo":"1/3","hi":"2/3"}]}]}"#;
        assert!(serde_json::from_str::<Configuration>(bad).is_err());
        let bad_interval = r#"{"dim":1,"cubes":[{"intervals":[{"lo":"1/2","hi":"1/3"}]}]}"#;
        assert!(serde_json::from_str::<Configuration>(bad_interval).is_err());
    }
}
