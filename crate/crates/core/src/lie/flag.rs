use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Block structure of a parabolic subgroup `P ⊂ SL(n,R)`.
///
/// `P` is block upper triangular for the composition `blocks` of `n`. The
/// nilradical `n` sits strictly below the diagonal blocks, `U` strictly above,
/// and the Levi factor `L` on the diagonal blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FlagContextRepr", into = "FlagContextRepr")]
pub struct FlagContext {
    n: usize,
    blocks: Vec<usize>,
    block_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct FlagContextRepr {
    n: usize,
    blocks: Vec<usize>,
}

impl TryFrom<FlagContextRepr> for FlagContext {
    type Error = Error;
    fn try_from(r: FlagContextRepr) -> Result<Self> {
        FlagContext::with_size(r.n, r.blocks)
    }
}

impl From<FlagContext> for FlagContextRepr {
    fn from(c: FlagContext) -> Self {
        FlagContextRepr { n: c.n, blocks: c.blocks }
    }
}

impl FlagContext {
    pub fn new(blocks: Vec<usize>) -> Result<Self> {
        let n = blocks.iter().sum();
        Self::with_size(n, blocks)
    }

    pub fn with_size(n: usize, blocks: Vec<usize>) -> Result<Self> {
        if n < 2 || blocks.contains(&0) || blocks.iter().sum::<usize>() != n {
            return Err(Error::InvalidBlocks { n, blocks });
        }
        let block_of = blocks
            .iter()
            .enumerate()
            .flat_map(|(b, &size)| std::iter::repeat_n(b, size))
            .collect();
        Ok(FlagContext { n, blocks, block_of })
    }

    /// All blocks of size one: `P` is the Borel subgroup of upper triangular matrices.
    pub fn borel(n: usize) -> Self {
        Self::new(vec![1; n]).expect("n >= 2")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn is_borel(&self) -> bool {
        self.blocks.iter().all(|&b| b == 1)
    }

    pub fn block(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.blocks
            .iter()
            .map(|&b| {
                let r = start..start + b;
                start += b;
                r
            })
            .collect()
    }

    pub fn is_below_block(&self, i: usize, j: usize) -> bool {
        self.block_of[i] > self.block_of[j]
    }

    pub fn is_above_block(&self, i: usize, j: usize) -> bool {
        self.block_of[i] < self.block_of[j]
    }

    pub fn is_diag_block(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }

    /// Positions of the nilradical, row-major.
    pub fn below_block(&self) -> Vec<(usize, usize)> {
        self.positions(|i, j| self.is_below_block(i, j))
    }

    /// Positions of the unipotent radical of `P`, row-major.
    pub fn above_block(&self) -> Vec<(usize, usize)> {
        self.positions(|i, j| self.is_above_block(i, j))
    }

    pub fn diag_block(&self) -> Vec<(usize, usize)> {
        self.positions(|i, j| self.is_diag_block(i, j))
    }

    fn positions(&self, keep: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .filter(|&(i, j)| keep(i, j))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_sets_partition() {
        for blocks in [vec![1, 1, 1], vec![2, 1], vec![1, 2, 1], vec![3]] {
            let ctx = FlagContext::new(blocks).unwrap();
            let n = ctx.n();
            let total = ctx.below_block().len() + ctx.above_block().len() + ctx.diag_block().len();
            assert_eq!(total, n * n);
            assert_eq!(ctx.below_block().len(), ctx.above_block().len());
        }
    }

    #[test]
    fn borel_nilradical_is_strictly_lower() {
        let ctx = FlagContext::borel(3);
        assert_eq!(ctx.below_block(), vec![(1, 0), (2, 0), (2, 1)]);
        assert_eq!(ctx.above_block(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn two_one_blocks() {
        let ctx = FlagContext::new(vec![2, 1]).unwrap();
        assert_eq!(ctx.below_block(), vec![(2, 0), (2, 1)]);
    }

    #[test]
    fn rejects_bad_compositions() {
        assert!(FlagContext::with_size(3, vec![1, 1]).is_err());
        assert!(FlagContext::new(vec![1]).is_err());
        assert!(FlagContext::new(vec![2, 0, 1]).is_err());
    }
}
