//! Deciding whether a configuration splits along the axis blocks and, when
//! it does, producing its canonical tensor word by recursive strip
//! grouping. Also the wedge refinement of two compatible strip heads and
//! an independent brute-force decomposability oracle used to validate the
//! deterministic algorithm.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Configuration, Cube, Interval};
use crate::words::{AxisBlocks, Generator, TensorWord};

/// Partition of a configuration's cubes into groups whose block-i
/// projection hulls have pairwise disjoint interiors. Labels are 1-based
/// cube labels; groups are ordered by minimal label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripGrouping {
    pub block: usize,
    pub groups: Vec<Vec<usize>>,
    pub hulls: Vec<Cube>,
}

impl StripGrouping {
    pub fn group_count(&self) -> usize {
        self.groups.len()
    }
}

/// Deterministic closure: start from single cubes, merge any two groups
/// whose hulls share an interior point, repeat until the hulls are
/// pairwise interior-disjoint.
pub fn strip_grouping(
    config: &Configuration,
    blocks: &AxisBlocks,
    block: usize,
) -> Result<StripGrouping> {
    if config.arity() == 0 {
        return Err(Error::EmptyConfiguration);
    }
    check_dim(config, blocks)?;
    let range = blocks.axis_range(block)?;
    let labeled: Vec<(usize, Cube)> = config
        .cubes()
        .iter()
        .enumerate()
        .map(|(i, c)| (i + 1, c.clone()))
        .collect();
    Ok(grouping_of(&labeled, range, block))
}

fn grouping_of(
    labeled: &[(usize, Cube)],
    range: std::ops::Range<usize>,
    block: usize,
) -> StripGrouping {
    let mut groups: Vec<(Vec<usize>, Cube)> = labeled
        .iter()
        .map(|(label, cube)| (vec![*label], cube.project(range.clone())))
        .collect();
    loop {
        let mut merged = None;
        'scan: for a in 0..groups.len() {
            for b in a + 1..groups.len() {
                if groups[a].1.overlaps(&groups[b].1) {
                    merged = Some((a, b));
                    break 'scan;
                }
            }
        }
        match merged {
            Some((a, b)) => {
                let (labels_b, hull_b) = groups.remove(b);
                groups[a].0.extend(labels_b);
                groups[a].0.sort_unstable();
                groups[a].1 = groups[a].1.hull(&hull_b);
            }
            None => break,
        }
    }
    groups.sort_by_key(|(labels, _)| labels[0]);
    let (groups, hulls) = groups.into_iter().unzip();
    StripGrouping {
        block,
        groups,
        hulls,
    }
}

/// Witness that no block admits a top-level split of the (sub)configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NotDecomposable {
    pub config: Configuration,
    pub single_groups: Vec<StripGrouping>,
}

/// Outcome of `factor`: a canonical word re-evaluating to the input, or a
/// witness configuration on which every block yields a single group.
#[derive(Debug, Clone, PartialEq)]
pub enum FactorResult {
    Word(TensorWord),
    NotDecomposable(NotDecomposable),
}

impl FactorResult {
    pub fn word(&self) -> Option<&TensorWord> {
        match self {
            FactorResult::Word(w) => Some(w),
            FactorResult::NotDecomposable(_) => None,
        }
    }

    pub fn is_word(&self) -> bool {
        matches!(self, FactorResult::Word(_))
    }
}

fn check_dim(config: &Configuration, blocks: &AxisBlocks) -> Result<()> {
    if config.dim() != blocks.dim() {
        return Err(Error::DimensionMismatch {
            expected: blocks.dim(),
            got: config.dim(),
        });
    }
    Ok(())
}

/// Canonical factorization. Scans blocks in order; at the first block whose
/// strip grouping splits, emits the ordered hulls as the head generator and
/// recurses on each group rescaled into its hull. Unary heads are never
/// emitted for arity >= 2 (an order-preserving rescale of one block cannot
/// change any overlap relation, so it cannot enable a split).
pub fn factor(config: &Configuration, blocks: &AxisBlocks) -> Result<FactorResult> {
    check_dim(config, blocks)?;
    let labeled: Vec<(usize, Cube)> = config
        .cubes()
        .iter()
        .enumerate()
        .map(|(i, c)| (i + 1, c.clone()))
        .collect();
    let result = factor_rec(&labeled, blocks)?;
    if let FactorResult::Word(word) = &result {
        debug_assert_eq!(&word.eval(blocks)?, config);
    }
    Ok(result)
}

fn factor_rec(labeled: &[(usize, Cube)], blocks: &AxisBlocks) -> Result<FactorResult> {
    match labeled.len() {
        0 => {
            let k = blocks.size(1)?;
            Ok(FactorResult::Word(TensorWord::node(
                Generator::new(1, Configuration::empty(k)),
                vec![],
            )))
        }
        1 => {
            let (label, cube) = &labeled[0];
            Ok(FactorResult::Word(unary_chain(*label, cube, blocks)?))
        }
        _ => {
            let mut single_groups = Vec::new();
            for block in 1..=blocks.count() {
                let range = blocks.axis_range(block)?;
                let grouping = grouping_of(labeled, range.clone(), block);
                if grouping.group_count() < 2 {
                    single_groups.push(grouping);
                    continue;
                }
                let k = blocks.size(block)?;
                let head_op = Configuration::new(k, grouping.hulls.clone())?;
                let mut children = Vec::with_capacity(grouping.group_count());
                for (labels, hull) in grouping.groups.iter().zip(&grouping.hulls) {
                    let part: Vec<(usize, Cube)> = labeled
                        .iter()
                        .filter(|(label, _)| labels.contains(label))
                        .map(|(label, cube)| {
                            Ok((*label, rescale_into_hull(cube, hull, range.clone())?))
                        })
                        .collect::<Result<_>>()?;
                    match factor_rec(&part, blocks)? {
                        FactorResult::Word(w) => children.push(w),
                        nd @ FactorResult::NotDecomposable(_) => return Ok(nd),
                    }
                }
                return Ok(FactorResult::Word(TensorWord::node(
                    Generator::new(block, head_op),
                    children,
                )));
            }
            let cubes: Vec<Cube> = labeled.iter().map(|(_, c)| c.clone()).collect();
            Ok(FactorResult::NotDecomposable(NotDecomposable {
                config: Configuration::new(blocks.dim(), cubes)?,
                single_groups,
            }))
        }
    }
}

/// Arity-1 case: a chain of unary generators extracting each block's
/// coordinates, identity factors omitted; a full cube is the bare leaf.
fn unary_chain(label: usize, cube: &Cube, blocks: &AxisBlocks) -> Result<TensorWord> {
    let mut word = TensorWord::leaf(label);
    for block in (1..=blocks.count()).rev() {
        let range = blocks.axis_range(block)?;
        let projection = cube.project(range);
        if projection.is_full() {
            continue;
        }
        word = TensorWord::node(
            Generator::new(block, Configuration::single(projection)),
            vec![word],
        );
    }
    Ok(word)
}

/// Replace the block axes of `cube` by their preimage under the affine map
/// of `hull` (identity on the other axes).
fn rescale_into_hull(
    cube: &Cube,
    hull: &Cube,
    range: std::ops::Range<usize>,
) -> Result<Cube> {
    let mut intervals: Vec<Interval> = cube.intervals().to_vec();
    for (offset, axis) in range.enumerate() {
        intervals[axis] = hull.interval(offset).preimage(&intervals[axis])?;
    }
    Ok(Cube::new(intervals))
}

/// True iff `factor` produces a word.
pub fn is_decomposable(config: &Configuration, blocks: &AxisBlocks) -> Result<bool> {
    Ok(factor(config, blocks)?.is_word())
}

pub const BRUTE_FORCE_DEFAULT_BOUND: usize = 6;

/// Independent oracle: exhaustive search over all set partitions of the
/// cubes, any block, pairwise interior-disjoint projection hulls, applied
/// recursively. Overlap relations are invariant under per-block
/// order-preserving rescales, so parts recurse without rescaling.
pub fn brute_force_decomposable(
    config: &Configuration,
    blocks: &AxisBlocks,
    bound: usize,
) -> Result<bool> {
    check_dim(config, blocks)?;
    if config.arity() > bound {
        return Err(Error::BruteForceBound {
            got: config.arity(),
            bound,
        });
    }
    Ok(brute_force_rec(config.cubes(), blocks))
}

fn brute_force_rec(cubes: &[Cube], blocks: &AxisBlocks) -> bool {
    if cubes.len() <= 1 {
        return true;
    }
    let mut found = false;
    for_each_partition(cubes.len(), &mut |parts| {
        if found || parts.len() < 2 {
            return;
        }
        for block in 1..=blocks.count() {
            let range = blocks.axis_range(block).expect("valid block");
            let hulls: Vec<Cube> = parts
                .iter()
                .map(|part| {
                    part.iter()
                        .map(|&i| cubes[i].project(range.clone()))
                        .reduce(|a, b| a.hull(&b))
                        .expect("nonempty part")
                })
                .collect();
            let disjoint = (0..hulls.len()).all(|a| {
                (a + 1..hulls.len()).all(|b| !hulls[a].overlaps(&hulls[b]))
            });
            if !disjoint {
                continue;
            }
            if parts.iter().all(|part| {
                let sub: Vec<Cube> = part.iter().map(|&i| cubes[i].clone()).collect();
                brute_force_rec(&sub, blocks)
            }) {
                found = true;
                return;
            }
        }
    });
    found
}

/// Enumerate all set partitions of {0..n-1}.
fn for_each_partition(n: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
    fn rec(n: usize, next: usize, parts: &mut Vec<Vec<usize>>, visit: &mut dyn FnMut(&[Vec<usize>])) {
        if next == n {
            visit(parts);
            return;
        }
        for i in 0..parts.len() {
            parts[i].push(next);
            rec(n, next + 1, parts, visit);
            parts[i].pop();
        }
        parts.push(vec![next]);
        rec(n, next + 1, parts, visit);
        parts.pop();
    }
    rec(n, 0, &mut Vec::new(), visit);
}

/// The wedge of two strip heads compatible with the same configuration:
/// the ordered nonempty pairwise intersections inhabited by at least one
/// cube projection, with the per-head witness cubes realizing the two
/// decompositions of the wedge.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    /// Intersection cubes, ordered by minimal contained cube label.
    pub meet: Configuration,
    /// For each meet cube: index of the containing cube of the first head
    /// and the preimage of the meet cube under that cube's affine map.
    pub from_first: Vec<(usize, Cube)>,
    /// Same for the second head.
    pub from_second: Vec<(usize, Cube)>,
}

/// Strict interior containment, except along the boundary of the ambient
/// unit cube where touching is allowed (a strip flush with the unit
/// boundary still contains such cubes in its interior relative to the
/// operation space).
fn interior_contains(outer: &Cube, inner: &Cube) -> bool {
    outer.intervals().iter().zip(inner.intervals()).all(|(o, i)| {
        let lo_ok = o.lo() < i.lo() || (o.lo() == i.lo() && o.lo().is_zero());
        let hi_ok = i.hi() < o.hi() || (i.hi() == o.hi() && *o.hi() == crate::rational::Rational::one());
        lo_ok && hi_ok
    })
}

/// Common refinement of two heads `p` and `pbar` in the same block, both
/// compatible with `config`: every cube's block projection must lie in the
/// interior of exactly one cube of each head.
pub fn common_refinement(
    p: &Configuration,
    pbar: &Configuration,
    config: &Configuration,
    blocks: &AxisBlocks,
    block: usize,
) -> Result<Refinement> {
    check_dim(config, blocks)?;
    let range = blocks.axis_range(block)?;
    let k = blocks.size(block)?;
    for head in [p, pbar] {
        if head.dim() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: head.dim(),
            });
        }
    }

    // locate each cube projection inside both heads
    let mut pair_of_cube = Vec::with_capacity(config.arity());
    for (idx, cube) in config.cubes().iter().enumerate() {
        let proj = cube.project(range.clone());
        let a = locate(p, &proj, idx, block, "first")?;
        let b = locate(pbar, &proj, idx, block, "second")?;
        pair_of_cube.push((a, b));
    }

    // inhabited intersections, ordered by minimal contained label
    let mut seen: Vec<(usize, usize)> = Vec::new();
    for &pair in &pair_of_cube {
        if !seen.contains(&pair) {
            seen.push(pair);
        }
    }
    let mut meet = Vec::with_capacity(seen.len());
    let mut from_first = Vec::with_capacity(seen.len());
    let mut from_second = Vec::with_capacity(seen.len());
    for (a, b) in seen {
        let cube_a = p.cube(a);
        let cube_b = pbar.cube(b);
        let intersection = Cube::new(
            cube_a
                .intervals()
                .iter()
                .zip(cube_b.intervals())
                .map(|(x, y)| {
                    x.intersect(y).ok_or({
                        Error::RefinementContainment {
                            cube: 0,
                            block,
                            side: "first",
                        }
                    })
                })
                .collect::<Result<_>>()?,
        );
        from_first.push((a, preimage_cube(cube_a, &intersection)?));
        from_second.push((b, preimage_cube(cube_b, &intersection)?));
        meet.push(intersection);
    }
    Ok(Refinement {
        meet: Configuration::new(k, meet)?,
        from_first,
        from_second,
    })
}

fn locate(
    head: &Configuration,
    proj: &Cube,
    cube_index: usize,
    block: usize,
    side: &'static str,
) -> Result<usize> {
    let mut found = None;
    for (i, candidate) in head.cubes().iter().enumerate() {
        if interior_contains(candidate, proj) {
            if found.is_some() {
                return Err(Error::RefinementContainment {
                    cube: cube_index + 1,
                    block,
                    side,
                });
            }
            found = Some(i);
        }
    }
    found.ok_or(Error::RefinementContainment {
        cube: cube_index + 1,
        block,
        side,
    })
}

fn preimage_cube(outer: &Cube, inner: &Cube) -> Result<Cube> {
    Ok(Cube::new(
        outer
            .intervals()
            .iter()
            .zip(inner.intervals())
            .map(|(o, i)| o.preimage(i))
            .collect::<Result<_>>()?,
    ))
}

/// The standard 4-rectangle configuration with no strip split in either
/// axis: the stock non-decomposable example.
pub fn pinwheel() -> Configuration {
    use crate::rational::rat;
    let iv = |a: (i64, i64), b: (i64, i64)| {
        Interval::new(rat(a.0, a.1), rat(b.0, b.1)).expect("valid preset interval")
    };
    Configuration::new(
        2,
        vec![
            Cube::new(vec![iv((0, 1), (2, 3)), iv((0, 1), (1, 3))]),
            Cube::new(vec![iv((2, 3), (1, 1)), iv((0, 1), (2, 3))]),
            Cube::new(vec![iv((1, 3), (1, 1)), iv((2, 3), (1, 1))]),
            Cube::new(vec![iv((0, 1), (1, 3)), iv((1, 3), (1, 1))]),
        ],
    )
    .expect("pinwheel is a valid configuration")
}
