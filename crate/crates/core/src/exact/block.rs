use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::linalg::determinant;
use super::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::graphs::Partition;

/// `B_1 ⊕ ... ⊕ B_l`. Fails if any block is not square.
pub fn block_diag(blocks: &[ExactMatrix]) -> Result<ExactMatrix> {
    if let Some(b) = blocks.iter().find(|b| !b.is_square()) {
        return Err(Error::Shape(format!(
            "block of shape {}x{} is not square",
            b.rows(),
            b.cols()
        )));
    }
    let n = blocks.iter().map(ExactMatrix::rows).sum();
    let mut out = ExactMatrix::zeros(n, n);
    let mut offset = 0;
    for b in blocks {
        for r in 0..b.rows() {
            for c in 0..b.cols() {
                out.set(offset + r, offset + c, b.get(r, c).clone());
            }
        }
        offset += b.rows();
    }
    Ok(out)
}

/// Block-diagonal matrix aligned to a vertex partition: block `i` acts on
/// the vertices of class `i` in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSimilarity {
    blocks: Vec<ExactMatrix>,
    partition: Partition,
}

impl BlockSimilarity {
    pub fn new(partition: Partition, blocks: Vec<ExactMatrix>) -> Result<Self> {
        if blocks.len() != partition.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} blocks for {} classes",
                blocks.len(),
                partition.len()
            )));
        }
        for (i, (b, class)) in blocks.iter().zip(partition.classes()).enumerate() {
            if b.rows() != class.len() || b.cols() != class.len() {
                return Err(Error::ShapeMismatch(format!(
                    "block {} is {}x{} but class {} has {} vertices",
                    i + 1,
                    b.rows(),
                    b.cols(),
                    i + 1,
                    class.len()
                )));
            }
        }
        Ok(BlockSimilarity { blocks, partition })
    }

    pub fn identity(partition: Partition) -> Self {
        let blocks = partition
            .sizes()
            .into_iter()
            .map(ExactMatrix::identity)
            .collect();
        BlockSimilarity { blocks, partition }
    }

    pub fn blocks(&self) -> &[ExactMatrix] {
        &self.blocks
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// `B_1 ⊕ ... ⊕ B_l` in class-major row order.
    pub fn assembled(&self) -> ExactMatrix {
        block_diag(&self.blocks).expect("blocks are square by construction")
    }

    /// The same operator written in the vertices' own order:
    /// entry `(u, v)` is the block entry for `u` and `v` when they share a
    /// class, zero otherwise.
    pub fn in_vertex_order(&self) -> ExactMatrix {
        let n = self.partition.order();
        let mut out = ExactMatrix::zeros(n, n);
        for (b, class) in self.blocks.iter().zip(self.partition.classes()) {
            for (r, &u) in class.iter().enumerate() {
                for (c, &v) in class.iter().enumerate() {
                    out.set(u, v, b.get(r, c).clone());
                }
            }
        }
        out
    }

    /// Product of the block determinants.
    pub fn determinant(&self) -> BigRational {
        self.blocks.iter().fold(BigRational::one(), |acc, b| {
            acc * determinant(b).expect("square block")
        })
    }

    pub fn transpose(&self) -> BlockSimilarity {
        BlockSimilarity {
            blocks: self.blocks.iter().map(ExactMatrix::transpose).collect(),
            partition: self.partition.clone(),
        }
    }
}
