//! Block-diagonal similarity matrices `S = B_1 ⊕ ... ⊕ B_l` with
//! `S M(g1) = M(g2) S`: exact checking, search, and extension to coalesced
//! graphs.
//!
//! Because `S` is block diagonal, `S M1 = M2 S` splits into one equation per
//! ordered pair of classes,
//!
//! ```text
//! B_{i1} M1[V_{i1}, V_{i2}] = M2[V_{i1}, V_{i2}] B_{i2},
//! ```
//!
//! and `SJ = JS` becomes `B_{i1} J = J B_{i2}`: every row sum and every
//! column sum of every block equals one common value.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{determinant_integer, nullspace_integer, primitive_integer, BlockSimilarity, ExactMatrix};
use crate::graphs::{distance_t_graph, CoalescingSpec, Graph, Partition};
use crate::matrices::{build_matrix, MatrixKind};

pub const DEFAULT_TRIALS: usize = 64;
pub const DEFAULT_COEFF_BOUND: u64 = 1_000_000;

/// Extra conditions imposed on `S` besides `S M1 = M2 S`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Constraints {
    /// `SJ = JS`.
    pub sj_eq_js: bool,
    /// `S A^(t)(g1) = A^(t)(g2) S` for every `t` from `0` to the larger
    /// diameter.
    pub simultaneous: bool,
}

#[derive(Clone, Debug)]
pub struct SimilarityProblem {
    pub g1: Graph,
    pub g2: Graph,
    pub partition: Partition,
    pub kind: MatrixKind,
    pub constraints: Constraints,
}

impl SimilarityProblem {
    pub fn new(g1: Graph, g2: Graph, partition: Partition, kind: MatrixKind) -> Result<Self> {
        if g1.order() != g2.order() {
            return Err(Error::ShapeMismatch(format!(
                "graphs have {} and {} vertices",
                g1.order(),
                g2.order()
            )));
        }
        if partition.order() != g1.order() {
            return Err(Error::ShapeMismatch(format!(
                "partition covers {} vertices, graphs have {}",
                partition.order(),
                g1.order()
            )));
        }
        Ok(SimilarityProblem {
            g1,
            g2,
            partition,
            kind,
            constraints: Constraints::default(),
        })
    }

    pub fn with_sj_eq_js(mut self) -> Self {
        self.constraints.sj_eq_js = true;
        self
    }

    pub fn with_simultaneous(mut self) -> Self {
        self.constraints.simultaneous = true;
        self
    }

    /// The problem with the two graphs exchanged. `S` solves `self` iff
    /// `S^-1` solves the swapped problem.
    pub fn swapped(&self) -> Self {
        SimilarityProblem {
            g1: self.g2.clone(),
            g2: self.g1.clone(),
            ..self.clone()
        }
    }

    /// Pairs `(X1, X2)` for which `S X1 = X2 S` is required, with a label.
    fn equation_matrices(&self) -> Result<Vec<(String, ExactMatrix, ExactMatrix)>> {
        let mut out = vec![(
            self.kind.to_string(),
            build_matrix(&self.g1, &self.kind)?,
            build_matrix(&self.g2, &self.kind)?,
        )];
        if self.constraints.simultaneous {
            let n = self.g1.order();
            let diam = |g: &Graph| {
                let d = g.all_pairs_distances();
                if d.is_connected() {
                    Ok(d.diameter().unwrap_or(0))
                } else {
                    Err(Error::NotConnected)
                }
            };
            let top = diam(&self.g1)?.max(diam(&self.g2)?);
            out.push(("A^(0)".into(), ExactMatrix::identity(n), ExactMatrix::identity(n)));
            let adjacency = MatrixKind::adjacency();
            for t in 1..=top {
                out.push((
                    format!("A^({t})"),
                    build_matrix(&distance_t_graph(&self.g1, t)?, &adjacency)?,
                    build_matrix(&distance_t_graph(&self.g2, t)?, &adjacency)?,
                ));
            }
        }
        Ok(out)
    }

    fn max_t(&self) -> Result<Option<u32>> {
        if !self.constraints.simultaneous {
            return Ok(None);
        }
        let diam = |g: &Graph| g.all_pairs_distances().diameter().unwrap_or(0);
        Ok(Some(diam(&self.g1).max(diam(&self.g2))))
    }
}

/// Exact evidence attached to a verified similarity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `S M1 − M2 S = O`, checked exactly block by block.
    pub residual_zero: bool,
    #[serde(serialize_with = "crate::exact::serialize_rational")]
    pub det_s: BigRational,
    /// Whether `SJ = JS`; always `true` when it was required.
    pub sj_eq_js: bool,
    /// Largest `t` for which `S A^(t)(g1) = A^(t)(g2) S` was checked, when
    /// the simultaneous condition was required.
    pub simultaneous_max_t: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimilarityWitness {
    pub s: BlockSimilarity,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// The linear system has only the zero solution. Exact.
    NoSolutionSpace,
    /// Every sampled element of the solution space was singular.
    /// Probabilistic.
    AllSampledSingular,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NonexistenceReport {
    pub solution_space_dim: usize,
    pub trials: usize,
    pub coefficient_bound: u64,
    pub verdict: Verdict,
    /// `log10` of the Schwartz–Zippel bound `(n / (2B + 1))^trials` on the
    /// probability that an invertible element exists yet every sample was
    /// singular; `None` for exact verdicts.
    pub log10_failure_bound: Option<f64>,
}

impl NonexistenceReport {
    pub fn is_exact(&self) -> bool {
        self.verdict == Verdict::NoSolutionSpace
    }
}

impl fmt::Display for NonexistenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::NoSolutionSpace => {
                write!(f, "no block similarity: the linear system has only the zero solution (exact)")
            }
            Verdict::AllSampledSingular => write!(
                f,
                "no invertible element found in a {}-dimensional solution space after {} samples \
                 with coefficients in [-{b}, {b}]; if one exists, this happens with probability \
                 at most 10^{:.1}",
                self.solution_space_dim,
                self.trials,
                self.log10_failure_bound.unwrap_or(0.0),
                b = self.coefficient_bound
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SimilaritySearch {
    Witness(SimilarityWitness),
    Nonexistence(NonexistenceReport),
}

impl SimilaritySearch {
    pub fn witness(&self) -> Option<&SimilarityWitness> {
        match self {
            SimilaritySearch::Witness(w) => Some(w),
            SimilaritySearch::Nonexistence(_) => None,
        }
    }

    pub fn is_witness(&self) -> bool {
        self.witness().is_some()
    }
}

fn blocks_of(m: &ExactMatrix, partition: &Partition, i1: usize, i2: usize) -> ExactMatrix {
    let c = partition.classes();
    m.submatrix(&c[i1], &c[i2]).expect("partition indexes the matrix")
}

fn sums_agree(blocks: &[ExactMatrix]) -> bool {
    let mut common: Option<BigRational> = None;
    for b in blocks {
        let rows = (0..b.rows()).map(|r| b.row_vec(r).iter().sum::<BigRational>());
        let cols = (0..b.cols()).map(|c| (0..b.rows()).map(|r| b.get(r, c)).sum::<BigRational>());
        for s in rows.chain(cols) {
            match &common {
                None => common = Some(s),
                Some(v) if *v != s => return false,
                Some(_) => {}
            }
        }
    }
    true
}

/// Verifies `S M1 = M2 S` and the requested constraints exactly.
pub fn check_similarity(s: &BlockSimilarity, prob: &SimilarityProblem) -> Result<SimilarityWitness> {
    if s.partition() != &prob.partition {
        return Err(Error::ShapeMismatch(
            "similarity is not aligned to the problem's partition".into(),
        ));
    }
    if prob.g1.order() != prob.g2.order() || prob.partition.order() != prob.g1.order() {
        return Err(Error::ShapeMismatch("graph orders differ from the partition".into()));
    }
    let ell = prob.partition.len();
    let blocks = s.blocks();
    for (label, x1, x2) in prob.equation_matrices()? {
        for i1 in 0..ell {
            for i2 in 0..ell {
                let lhs = &blocks[i1] * &blocks_of(&x1, &prob.partition, i1, i2);
                let rhs = &blocks_of(&x2, &prob.partition, i1, i2) * &blocks[i2];
                if lhs != rhs {
                    return Err(Error::ConstraintViolated(format!(
                        "block equation ({}, {}) fails for {label}",
                        i1 + 1,
                        i2 + 1
                    )));
                }
            }
        }
    }
    let det_s = s.determinant();
    if det_s.is_zero() {
        return Err(Error::ConstraintViolated("S is singular".into()));
    }
    let sj_eq_js = sums_agree(blocks);
    if prob.constraints.sj_eq_js && !sj_eq_js {
        return Err(Error::ConstraintViolated(
            "SJ != JS: block row and column sums are not all equal".into(),
        ));
    }
    Ok(SimilarityWitness {
        s: s.clone(),
        certificate: Certificate {
            residual_zero: true,
            det_s,
            sj_eq_js,
            simultaneous_max_t: prob.max_t()?,
        },
    })
}

/// Unknowns are the entries of the blocks, block after block, row-major.
struct Unknowns {
    offsets: Vec<usize>,
    sizes: Vec<usize>,
    total: usize,
}

impl Unknowns {
    fn new(sizes: Vec<usize>) -> Self {
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut total = 0;
        for &s in &sizes {
            offsets.push(total);
            total += s * s;
        }
        Unknowns { offsets, sizes, total }
    }

    #[inline]
    fn var(&self, block: usize, r: usize, c: usize) -> usize {
        self.offsets[block] + r * self.sizes[block] + c
    }
}

fn push_row(rows: &mut Vec<Vec<BigInt>>, coeffs: Vec<BigRational>) {
    if coeffs.iter().all(Zero::is_zero) {
        return;
    }
    let den = coeffs
        .iter()
        .fold(BigInt::one(), |acc, x| num_integer::Integer::lcm(&acc, x.denom()));
    let row: Vec<BigInt> = coeffs.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let row = primitive_integer(row);
    if !rows.contains(&row) {
        rows.push(row);
    }
}

/// The homogeneous system whose solutions are the block matrices satisfying
/// every requested equation (invertibility aside).
fn linear_system(prob: &SimilarityProblem, unknowns: &Unknowns) -> Result<Vec<Vec<BigInt>>> {
    let classes = prob.partition.classes();
    let ell = classes.len();
    let mut rows = Vec::new();
    for (_, x1, x2) in prob.equation_matrices()? {
        for i1 in 0..ell {
            for i2 in 0..ell {
                let p = blocks_of(&x1, &prob.partition, i1, i2);
                let q = blocks_of(&x2, &prob.partition, i1, i2);
                let (s1, s2) = (classes[i1].len(), classes[i2].len());
                // (B_{i1} P − Q B_{i2})[r, c] = 0
                for r in 0..s1 {
                    for c in 0..s2 {
                        let mut coeffs = vec![BigRational::zero(); unknowns.total];
                        for k in 0..s1 {
                            coeffs[unknowns.var(i1, r, k)] += p.get(k, c);
                        }
                        for k in 0..s2 {
                            coeffs[unknowns.var(i2, k, c)] -= q.get(r, k);
                        }
                        push_row(&mut rows, coeffs);
                    }
                }
            }
        }
    }
    if prob.constraints.sj_eq_js {
        // all row and column sums equal the first row sum of block 0
        let reference: Vec<usize> = (0..unknowns.sizes[0]).map(|k| unknowns.var(0, 0, k)).collect();
        for (i, &size) in unknowns.sizes.iter().enumerate() {
            for r in 0..size {
                for is_col in [false, true] {
                    let mut coeffs = vec![BigRational::zero(); unknowns.total];
                    for k in 0..size {
                        let v = if is_col { unknowns.var(i, k, r) } else { unknowns.var(i, r, k) };
                        coeffs[v] += BigRational::one();
                    }
                    for &v in &reference {
                        coeffs[v] -= BigRational::one();
                    }
                    push_row(&mut rows, coeffs);
                }
            }
        }
    }
    Ok(rows)
}

/// Integer basis of the space of block matrices satisfying the linear part
/// of `prob`, one vector per basis element (entries of `B_1`, then `B_2`,
/// ... row-major).
pub fn solution_space(prob: &SimilarityProblem) -> Result<Vec<BlockSimilarity>> {
    let unknowns = Unknowns::new(prob.partition.sizes());
    let rows = linear_system(prob, &unknowns)?;
    nullspace_integer(rows, unknowns.total)
        .iter()
        .map(|v| assemble(v, &unknowns, &prob.partition))
        .collect()
}

fn assemble(v: &[BigInt], unknowns: &Unknowns, partition: &Partition) -> Result<BlockSimilarity> {
    let blocks = unknowns
        .sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            ExactMatrix::from_fn(s, s, |r, c| {
                BigRational::from_integer(v[unknowns.var(i, r, c)].clone())
            })
        })
        .collect();
    BlockSimilarity::new(partition.clone(), blocks)
}

fn is_invertible(v: &[BigInt], unknowns: &Unknowns) -> bool {
    (0..unknowns.sizes.len()).all(|i| {
        let s = unknowns.sizes[i];
        let rows: Vec<Vec<BigInt>> = (0..s)
            .map(|r| (0..s).map(|c| v[unknowns.var(i, r, c)].clone()).collect())
            .collect();
        !determinant_integer(&rows).expect("square block").is_zero()
    })
}

/// Solves the linear system for `S` exactly, then samples integer
/// combinations of a basis of its solution space with coefficients uniform
/// in `[-coeff_bound, coeff_bound]` until one is invertible.
///
/// `det S` restricted to the solution space is a polynomial of degree at
/// most `n` in the coefficients, so if it is not identically zero a single
/// sample is singular with probability at most `n / (2 coeff_bound + 1)`.
pub fn find_block_similarity(
    prob: &SimilarityProblem,
    rng_seed: u64,
    trials: usize,
    coeff_bound: u64,
) -> Result<SimilaritySearch> {
    if prob.g1.order() != prob.g2.order() || prob.partition.order() != prob.g1.order() {
        return Err(Error::ShapeMismatch("graph orders differ from the partition".into()));
    }
    let unknowns = Unknowns::new(prob.partition.sizes());
    let rows = linear_system(prob, &unknowns)?;
    let basis = nullspace_integer(rows, unknowns.total);
    let n = prob.g1.order();
    if basis.is_empty() {
        return Ok(SimilaritySearch::Nonexistence(NonexistenceReport {
            solution_space_dim: 0,
            trials: 0,
            coefficient_bound: coeff_bound,
            verdict: Verdict::NoSolutionSpace,
            log10_failure_bound: None,
        }));
    }
    let bound = i64::try_from(coeff_bound).unwrap_or(i64::MAX);
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..trials {
        let coeffs: Vec<BigInt> = (0..basis.len())
            .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
            .collect();
        let mut x = vec![BigInt::zero(); unknowns.total];
        for (c, v) in coeffs.iter().zip(&basis) {
            if c.is_zero() {
                continue;
            }
            for (xi, vi) in x.iter_mut().zip(v) {
                if !vi.is_zero() {
                    *xi += c * vi;
                }
            }
        }
        if x.iter().all(Zero::is_zero) {
            continue;
        }
        let x = primitive_integer(x);
        if is_invertible(&x, &unknowns) {
            let s = assemble(&x, &unknowns, &prob.partition)?;
            return check_similarity(&s, prob).map(SimilaritySearch::Witness);
        }
    }
    let per_trial = (n as f64 / (2.0 * coeff_bound as f64 + 1.0)).log10();
    Ok(SimilaritySearch::Nonexistence(NonexistenceReport {
        solution_space_dim: basis.len(),
        trials,
        coefficient_bound: coeff_bound,
        verdict: Verdict::AllSampledSingular,
        log10_failure_bound: Some(trials as f64 * per_trial),
    }))
}

/// `Ŝ`: block `B_i` repeated once per vertex of `H_i`, aligned to the
/// `(i, j)` blocks of the coalesced graph.
pub fn extend_similarity(s: &BlockSimilarity, spec: &CoalescingSpec) -> Result<BlockSimilarity> {
    if s.partition() != &spec.partition {
        return Err(Error::ShapeMismatch(
            "similarity is not aligned to the coalescing partition".into(),
        ));
    }
    let layout = spec.layout();
    let mut classes = Vec::new();
    let mut blocks = Vec::new();
    for (i, b) in s.blocks().iter().enumerate() {
        let size = layout.class_size(i);
        for j in 0..layout.attach_size(i) {
            let start = layout.offset(i, j);
            classes.push((start..start + size).collect());
            blocks.push(b.clone());
        }
    }
    BlockSimilarity::new(Partition::new(layout.total(), classes)?, blocks)
}

/// `S` with every entry multiplied by the least common denominator and the
/// result divided by the gcd, with a positive first nonzero entry.
pub fn normalized(s: &BlockSimilarity) -> BlockSimilarity {
    let den = s
        .blocks()
        .iter()
        .fold(BigInt::one(), |acc, b| num_integer::Integer::lcm(&acc, &b.common_denominator()));
    let flat: Vec<BigInt> = s
        .blocks()
        .iter()
        .flat_map(|b| b.entries().iter().map(|x| x.numer() * (&den / x.denom())))
        .collect();
    let mut flat = primitive_integer(flat).into_iter();
    let blocks = s
        .blocks()
        .iter()
        .map(|b| {
            ExactMatrix::from_fn(b.rows(), b.cols(), |_, _| {
                BigRational::from_integer(flat.next().expect("same entry count"))
            })
        })
        .collect();
    BlockSimilarity::new(s.partition().clone(), blocks).expect("same shapes")
}

/// Whether some rational multiple of `s` satisfies every equation of
/// `prob` (invertibility aside). Used to test membership of printed
/// matrices in a computed solution space.
pub fn in_solution_space(s: &BlockSimilarity, prob: &SimilarityProblem) -> Result<bool> {
    let unknowns = Unknowns::new(prob.partition.sizes());
    let rows = linear_system(prob, &unknowns)?;
    let x: Vec<BigInt> = normalized(s)
        .blocks()
        .iter()
        .flat_map(|b| b.entries().iter().map(|e| e.to_integer()).collect::<Vec<_>>())
        .collect();
    Ok(rows.iter().all(|row| {
        row.iter()
            .zip(&x)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, b)| a * b)
            .sum::<BigInt>()
            .is_zero()
    }))
}
