//! Naive reference implementations, kept deliberately close to the
//! definitions and free of the production code paths: they partition
//! alphabet intervals recursively instead of using `C`-array arithmetic, so
//! tests can compare two independent routes to the same answer.

use crate::alphabet::{bitrev, EffectiveText};

/// One node of the decomposition: its bit sequence and the text positions
/// contributing those bits, both in text order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecord {
    pub bits: Vec<bool>,
    pub positions: Vec<usize>,
}

/// The full per-level node decomposition of a text, built by recursive
/// alphabet-interval splitting: the node over `[a, b]` sends position `i`
/// left (bit 0) when `codes[i] <= (a + b) / 2`, right (bit 1) otherwise.
/// Level `l` holds its `2^l` nodes in rank (left-to-right) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeDecomposition {
    levels: Vec<Vec<NodeRecord>>,
    height: usize,
    n: usize,
}

impl NodeDecomposition {
    pub fn new(text: &EffectiveText) -> Self {
        let height = text.height();
        let mut levels: Vec<Vec<NodeRecord>> = (0..height).map(|_| Vec::new()).collect();
        split(
            text.codes(),
            0,
            text.sigma_padded() - 1,
            0,
            (0..text.len()).collect(),
            &mut levels,
        );
        Self {
            levels,
            height,
            n: text.len(),
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn node(&self, level: usize, v: usize) -> &NodeRecord {
        &self.levels[level][v]
    }

    pub fn nodes(&self, level: usize) -> &[NodeRecord] {
        &self.levels[level]
    }

    /// The level's bits with nodes concatenated in rank order — the tree
    /// layout.
    pub fn tree_level(&self, level: usize) -> Vec<bool> {
        self.levels[level].iter().flat_map(|node| node.bits.iter().copied()).collect()
    }

    /// The level's bits with nodes concatenated in bit-reversed rank order —
    /// the matrix layout.
    pub fn matrix_level(&self, level: usize) -> Vec<bool> {
        matrix_order(level, self.levels[level].len())
            .flat_map(|v| self.levels[level][v].bits.iter().copied())
            .collect()
    }

    /// Maps a tree-layout position to its matrix-layout position by locating
    /// the node, keeping the offset and re-basing onto the node's position
    /// in the matrix concatenation.
    pub fn matrix_position(&self, level: usize, pos: usize) -> usize {
        let (v, offset) = self.locate(level, pos);
        let start: usize = matrix_order(level, self.levels[level].len())
            .take_while(|&w| w != v)
            .map(|w| self.levels[level][w].bits.len())
            .sum();
        start + offset
    }

    /// The text position contributing the bit at tree-layout position `pos`.
    pub fn text_position(&self, level: usize, pos: usize) -> usize {
        let (v, offset) = self.locate(level, pos);
        self.levels[level][v].positions[offset]
    }

    /// Node rank and in-node offset of a tree-layout position.
    fn locate(&self, level: usize, pos: usize) -> (usize, usize) {
        assert!(pos < self.n, "position {pos} out of range");
        let mut v = 0;
        let mut acc = 0;
        while acc + self.levels[level][v].bits.len() <= pos {
            acc += self.levels[level][v].bits.len();
            v += 1;
        }
        (v, pos - acc)
    }
}

fn split(
    codes: &[u16],
    a: usize,
    b: usize,
    level: usize,
    positions: Vec<usize>,
    levels: &mut Vec<Vec<NodeRecord>>,
) {
    if level == levels.len() {
        return;
    }
    let mid = (a + b) / 2;
    let mut bits = Vec::with_capacity(positions.len());
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &i in &positions {
        if codes[i] as usize <= mid {
            bits.push(false);
            left.push(i);
        } else {
            bits.push(true);
            right.push(i);
        }
    }
    levels[level].push(NodeRecord { bits, positions });
    split(codes, a, mid, level + 1, left, levels);
    split(codes, mid + 1, b, level + 1, right, levels);
}

/// Node ranks of a level in matrix (bit-reversed) concatenation order.
fn matrix_order(level: usize, count: usize) -> impl Iterator<Item = usize> {
    (0..count).map(move |u| if level == 0 { 0 } else { bitrev(level, u) })
}

/// Reference wavelet tree: the per-level bit vectors in tree layout.
pub fn naive_wt(text: &EffectiveText) -> Vec<Vec<bool>> {
    let d = NodeDecomposition::new(text);
    (0..d.height()).map(|l| d.tree_level(l)).collect()
}

/// Reference wavelet matrix: the per-level bit vectors in matrix layout and
/// the per-level zero counts.
pub fn naive_wm(text: &EffectiveText) -> (Vec<Vec<bool>>, Vec<usize>) {
    let d = NodeDecomposition::new(text);
    let levels: Vec<Vec<bool>> = (0..d.height()).map(|l| d.matrix_level(l)).collect();
    let zeros = levels.iter().map(|l| l.iter().filter(|&&b| !b).count()).collect();
    (levels, zeros)
}

/// Reference position translation: tree-layout position to matrix-layout
/// position, via the explicit decomposition rather than any arithmetic.
pub fn naive_position_map(text: &EffectiveText, level: usize, pos: usize) -> usize {
    NodeDecomposition::new(text).matrix_position(level, pos)
}
