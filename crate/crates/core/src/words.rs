//! Tensor words: the free-operad representation of elements of
//! C_{k_1} (x) ... (x) C_{k_N} over an ordered axis-block partition, and the
//! evaluation map that realizes a word as a configuration of strips in the
//! full-dimensional cube operad.
//!
//! The symmetric structure lives entirely in the leaf labels: an internal
//! node is a block-tagged generator whose ordered children sit in the
//! generator's cubes, and a leaf carries the input label it feeds.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Configuration, Cube, Interval};

/// Ordered partition of the d axes into contiguous blocks k_1,...,k_N.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBlocks")]
pub struct AxisBlocks {
    blocks: Vec<usize>,
}

#[derive(Deserialize)]
struct RawBlocks {
    blocks: Vec<usize>,
}

impl TryFrom<RawBlocks> for AxisBlocks {
    type Error = Error;
    fn try_from(raw: RawBlocks) -> Result<AxisBlocks> {
        AxisBlocks::new(raw.blocks)
    }
}

impl AxisBlocks {
    pub fn new(blocks: Vec<usize>) -> Result<AxisBlocks> {
        if blocks.is_empty() {
            return Err(Error::InvalidBlocks("no blocks".into()));
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidBlocks("zero-size block".into()));
        }
        Ok(AxisBlocks { blocks })
    }

    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Size k_i of the 1-based block `i`.
    pub fn size(&self, block: usize) -> Result<usize> {
        self.check(block)?;
        Ok(self.blocks[block - 1])
    }

    /// Axis range (0-based, half-open) owned by the 1-based block `i`.
    pub fn axis_range(&self, block: usize) -> Result<std::ops::Range<usize>> {
        self.check(block)?;
        let start: usize = self.blocks[..block - 1].iter().sum();
        Ok(start..start + self.blocks[block - 1])
    }

    pub fn sizes(&self) -> &[usize] {
        &self.blocks
    }

    fn check(&self, block: usize) -> Result<()> {
        if block == 0 || block > self.blocks.len() {
            return Err(Error::BlockOutOfRange {
                block,
                count: self.blocks.len(),
            });
        }
        Ok(())
    }
}

impl FromStr for AxisBlocks {
    type Err = Error;

    /// CLI form: comma-separated block sizes, e.g. "1,1" or "2,3".
    fn from_str(s: &str) -> Result<AxisBlocks> {
        let blocks = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidBlocks(s.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        AxisBlocks::new(blocks)
    }
}

impl fmt::Display for AxisBlocks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// An elementary operation 1 (x) ... (x) p (x) ... (x) 1: an operation `op`
/// of the little k_i-cubes operad placed in the 1-based tensor factor
/// `block`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub block: usize,
    pub op: Configuration,
}

impl Generator {
    pub fn new(block: usize, op: Configuration) -> Generator {
        Generator { block, op }
    }

    pub fn arity(&self) -> usize {
        self.op.arity()
    }

    pub fn validate(&self, blocks: &AxisBlocks) -> Result<()> {
        let k = blocks.size(self.block)?;
        if self.op.dim() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                got: self.op.dim(),
            });
        }
        Ok(())
    }
}

/// A rooted tree of generators with labeled leaves. A bare leaf is the
/// identity word of arity 1; a node with a nullary generator has no
/// children and no leaves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TensorWord {
    Leaf {
        leaf: usize,
    },
    Node {
        gen: Generator,
        children: Vec<TensorWord>,
    },
}

impl TensorWord {
    pub fn leaf(label: usize) -> TensorWord {
        TensorWord::Leaf { leaf: label }
    }

    pub fn node(gen: Generator, children: Vec<TensorWord>) -> TensorWord {
        TensorWord::Node { gen, children }
    }

    /// Number of leaves.
    pub fn arity(&self) -> usize {
        match self {
            TensorWord::Leaf { .. } => 1,
            TensorWord::Node { children, .. } => children.iter().map(TensorWord::arity).sum(),
        }
    }

    /// Number of internal nodes; an upper bound for the length of the
    /// represented element.
    pub fn generator_count(&self) -> usize {
        match self {
            TensorWord::Leaf { .. } => 0,
            TensorWord::Node { children, .. } => {
                1 + children.iter().map(TensorWord::generator_count).sum::<usize>()
            }
        }
    }

    /// Leaf labels in left-to-right order.
    pub fn leaf_labels(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<usize>) {
        match self {
            TensorWord::Leaf { leaf } => out.push(*leaf),
            TensorWord::Node { children, .. } => {
                for child in children {
                    child.collect_labels(out);
                }
            }
        }
    }

    pub fn min_leaf_label(&self) -> Option<usize> {
        self.leaf_labels().into_iter().min()
    }

    /// Structural check against a block partition: generator dims, child
    /// counts, and (at this root) leaf labels exactly 1..=arity.
    pub fn validate(&self, blocks: &AxisBlocks) -> Result<()> {
        self.validate_inner(blocks)?;
        let mut labels = self.leaf_labels();
        labels.sort_unstable();
        let j = labels.len();
        if labels != (1..=j).collect::<Vec<_>>() {
            return Err(Error::InvalidWord(format!(
                "leaf labels must be exactly 1..={j}, got {labels:?}"
            )));
        }
        Ok(())
    }

    fn validate_inner(&self, blocks: &AxisBlocks) -> Result<()> {
        match self {
            TensorWord::Leaf { leaf } => {
                if *leaf == 0 {
                    return Err(Error::InvalidWord("leaf label 0".into()));
                }
            }
            TensorWord::Node { gen, children } => {
                gen.validate(blocks)?;
                if children.len() != gen.arity() {
                    return Err(Error::InvalidWord(format!(
                        "generator arity {} but {} children",
                        gen.arity(),
                        children.len()
                    )));
                }
                for child in children {
                    child.validate_inner(blocks)?;
                }
            }
        }
        Ok(())
    }

    /// Relabel every leaf through `map` (old label -> new label).
    pub fn relabel(&self, map: &dyn Fn(usize) -> usize) -> TensorWord {
        match self {
            TensorWord::Leaf { leaf } => TensorWord::leaf(map(*leaf)),
            TensorWord::Node { gen, children } => TensorWord::node(
                gen.clone(),
                children.iter().map(|c| c.relabel(map)).collect(),
            ),
        }
    }

    /// Evaluate to a configuration; requires leaf labels exactly 1..=arity.
    pub fn eval(&self, blocks: &AxisBlocks) -> Result<Configuration> {
        self.validate(blocks)?;
        let mut pairs = self.eval_labeled(blocks)?;
        pairs.sort_by_key(|(label, _)| *label);
        Configuration::new(blocks.dim(), pairs.into_iter().map(|(_, c)| c).collect())
    }

    /// Evaluation keeping the leaf labels; does not require labels 1..=j,
    /// only distinctness (used by the factorization recursion).
    pub fn eval_labeled(&self, blocks: &AxisBlocks) -> Result<Vec<(usize, Cube)>> {
        match self {
            TensorWord::Leaf { leaf } => Ok(vec![(*leaf, Cube::full(blocks.dim()))]),
            TensorWord::Node { gen, children } => {
                let strips = mu_embed(gen, blocks)?;
                if children.len() != strips.arity() {
                    return Err(Error::ArityMismatch {
                        expected: strips.arity(),
                        got: children.len(),
                    });
                }
                let mut out = Vec::new();
                for (strip, child) in strips.cubes().iter().zip(children) {
                    for (label, cube) in child.eval_labeled(blocks)? {
                        out.push((label, strip.apply(&cube)?));
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Embed a generator into the full-dimensional operad: each cube of the
/// generator's operation becomes a strip, full on every axis outside the
/// generator's block.
pub fn mu_embed(gen: &Generator, blocks: &AxisBlocks) -> Result<Configuration> {
    gen.validate(blocks)?;
    let d = blocks.dim();
    let range = blocks.axis_range(gen.block)?;
    let cubes = gen
        .op
        .cubes()
        .iter()
        .map(|cube| {
            let mut intervals = vec![Interval::full(); d];
            for (offset, iv) in cube.intervals().iter().enumerate() {
                intervals[range.start + offset] = iv.clone();
            }
            Cube::new(intervals)
        })
        .collect();
    Configuration::new(d, cubes)
}

/// Rewrite a word of arity >= 2 into the normal form head ∘ (t_1,...,t_a)
/// with head arity a >= 2 and every t_i of positive arity. Evaluation is
/// unchanged.
pub fn normalize_gen_pos(word: &TensorWord) -> Result<TensorWord> {
    let j = word.arity();
    if j < 2 {
        return Err(Error::ArityTooSmall(j));
    }
    let TensorWord::Node { gen, children } = word else {
        // a leaf has arity 1
        unreachable!("arity >= 2 word must be a node");
    };

    // Drop children with no leaves: compose the head with the nullary
    // operation at those inputs.
    let mut kept_cubes = Vec::new();
    let mut kept_children = Vec::new();
    for (cube, child) in gen.op.cubes().iter().zip(children) {
        if child.arity() > 0 {
            kept_cubes.push(cube.clone());
            kept_children.push(child.clone());
        }
    }
    let head_op = Configuration::new(gen.op.dim(), kept_cubes)?;

    if kept_children.len() >= 2 {
        return Ok(TensorWord::node(
            Generator::new(gen.block, head_op),
            kept_children,
        ));
    }

    // Exactly one surviving child (zero would mean arity 0). The head is
    // unary; normalize the child and either merge into a same-block head or
    // push the unary head through by the interchange relation.
    let child = kept_children.pop().expect("arity >= 2 word has a leafy child");
    let normal = normalize_gen_pos(&child)?;
    let TensorWord::Node {
        gen: sub_gen,
        children: sub_children,
    } = normal
    else {
        unreachable!("normalized word of arity >= 2 is a node");
    };

    if sub_gen.block == gen.block {
        let merged = head_op.compose(&[sub_gen.op])?;
        Ok(TensorWord::node(
            Generator::new(gen.block, merged),
            sub_children,
        ))
    } else {
        let unary = Generator::new(gen.block, head_op);
        let pushed = sub_children
            .into_iter()
            .map(|sub| TensorWord::node(unary.clone(), vec![sub]))
            .collect();
        Ok(TensorWord::node(sub_gen, pushed))
    }
}

/// Reorder, at every node, the (cube, child) pairs by minimal leaf label
/// (children without leaves sort last, tied by cube coordinates). The
/// leaf labels absorb the reordering, so the represented element and the
/// evaluation are unchanged.
pub fn canonical_order(word: &TensorWord) -> TensorWord {
    match word {
        TensorWord::Leaf { leaf } => TensorWord::leaf(*leaf),
        TensorWord::Node { gen, children } => {
            let ordered: Vec<TensorWord> = children.iter().map(canonical_order).collect();
            let mut pairs: Vec<(Cube, TensorWord)> = gen
                .op
                .cubes()
                .iter()
                .cloned()
                .zip(ordered)
                .collect();
            pairs.sort_by(|(ca, wa), (cb, wb)| {
                let ka = wa.min_leaf_label();
                let kb = wb.min_leaf_label();
                match (ka, kb) {
                    (Some(a), Some(b)) => a.cmp(&b),
                    (Some(_), None) => std::cmp::Ordering::Less,
                    (None, Some(_)) => std::cmp::Ordering::Greater,
                    (None, None) => ca.cmp(cb),
                }
            });
            let (cubes, children): (Vec<Cube>, Vec<TensorWord>) = pairs.into_iter().unzip();
            let op = Configuration::new(gen.op.dim(), cubes)
                .expect("reordering cubes preserves validity");
            TensorWord::node(Generator::new(gen.block, op), children)
        }
    }
}
