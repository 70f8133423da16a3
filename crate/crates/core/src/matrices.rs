//! Matrix families of a graph: the q-Laplacian `L^(q)` (`q deg(u)` on the
//! diagonal, `1` on edges), the distance matrix, and the generalized
//! distance matrix `f(dist(u, v))`.
//!
//! [`shifted_block_matrix`] assembles the matrix of a coalesced graph from
//! the base graph's blocks and the attached graphs alone, without building
//! the coalesced graph.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{charpoly, charpoly_small, ExactMatrix, Polynomial, RatPolynomial};
use crate::graphs::{distance_t_graph, CoalescingSpec, Distances, Graph};

/// `f` on the nonnegative integers. Named families are evaluated on demand
/// and expand to a table with [`DistanceFunction::table`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DistanceFunction {
    /// `f(d)` is the `d`-th entry; undefined beyond the table.
    Table(Vec<BigRational>),
    Identity,
    Square,
    /// `f(d) = base^d`.
    Exponential(BigRational),
    /// `f(d) = 1` if `d` is in the set, else `0`.
    Indicator(BTreeSet<u32>),
}

impl DistanceFunction {
    pub fn at(&self, d: u32) -> Option<BigRational> {
        let int = |v: u64| BigRational::from_integer(BigInt::from(v));
        match self {
            DistanceFunction::Table(values) => values.get(d as usize).cloned(),
            DistanceFunction::Identity => Some(int(u64::from(d))),
            DistanceFunction::Square => Some(int(u64::from(d) * u64::from(d))),
            DistanceFunction::Exponential(base) => Some(num_traits::pow(base.clone(), d as usize)),
            DistanceFunction::Indicator(set) => Some(int(u64::from(set.contains(&d)))),
        }
    }

    /// `f(0), ..., f(d_max)`.
    pub fn table(&self, d_max: u32) -> Result<Vec<BigRational>> {
        (0..=d_max)
            .map(|d| self.at(d).ok_or(Error::FUndefinedAtDistance(d)))
            .collect()
    }
}

impl fmt::Display for DistanceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceFunction::Table(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                f.write_str(&parts.join(","))
            }
            DistanceFunction::Identity => f.write_str("identity"),
            DistanceFunction::Square => f.write_str("square"),
            DistanceFunction::Exponential(b) => write!(f, "exp:{b}"),
            DistanceFunction::Indicator(s) => {
                let parts: Vec<String> = s.iter().map(ToString::to_string).collect();
                write!(f, "indicator:{}", parts.join(","))
            }
        }
    }
}

/// Which matrix of a graph to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// `q = 0` adjacency, `q = 1` signless Laplacian, `q = -1` negative
    /// Laplacian.
    QLaplacian(BigRational),
    Distance,
    GeneralizedDistance(DistanceFunction),
}

impl MatrixKind {
    pub fn adjacency() -> Self {
        MatrixKind::QLaplacian(BigRational::zero())
    }

    pub fn is_distance_based(&self) -> bool {
        !matches!(self, MatrixKind::QLaplacian(_))
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixKind::QLaplacian(q) => write!(f, "qlap:{q}"),
            MatrixKind::Distance => f.write_str("dist"),
            MatrixKind::GeneralizedDistance(func) => write!(f, "gendist:{func}"),
        }
    }
}

impl Serialize for MatrixKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("bad rational {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for DistanceFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parse_set = |list: &str| -> Result<BTreeSet<u32>> {
            list.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad distance {t:?}")))
                })
                .collect()
        };
        match s.trim() {
            "identity" => Ok(DistanceFunction::Identity),
            "square" => Ok(DistanceFunction::Square),
            other => {
                if let Some(base) = other.strip_prefix("exp:") {
                    Ok(DistanceFunction::Exponential(parse_rational(base)?))
                } else if let Some(list) = other.strip_prefix("indicator:") {
                    Ok(DistanceFunction::Indicator(parse_set(list)?))
                } else {
                    let values = other
                        .split(',')
                        .map(parse_rational)
                        .collect::<Result<Vec<_>>>()?;
                    Ok(DistanceFunction::Table(values))
                }
            }
        }
    }
}

impl FromStr for MatrixKind {
    type Err = Error;

    /// `adj`, `qlap:q`, `dist`, or `gendist:<f>` where `<f>` is a comma
    /// separated table `f(0),f(1),...` or one of `identity`, `square`,
    /// `exp:b`, `indicator:t1,t2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "adj" | "adjacency" => Ok(MatrixKind::adjacency()),
            "dist" | "distance" => Ok(MatrixKind::Distance),
            _ => {
                if let Some(q) = s.strip_prefix("qlap:") {
                    Ok(MatrixKind::QLaplacian(parse_rational(q)?))
                } else if let Some(f) = s.strip_prefix("gendist:") {
                    Ok(MatrixKind::GeneralizedDistance(f.parse()?))
                } else {
                    Err(Error::Parse(format!("unknown matrix kind {s:?}")))
                }
            }
        }
    }
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn connected_distances(g: &Graph) -> Result<Distances> {
    let d = g.all_pairs_distances();
    if !d.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(d)
}

/// The `kind` matrix of `g` in `g`'s vertex order.
pub fn build_matrix(g: &Graph, kind: &MatrixKind) -> Result<ExactMatrix> {
    let n = g.order();
    match kind {
        MatrixKind::QLaplacian(q) => Ok(ExactMatrix::from_fn(n, n, |u, v| {
            if u == v {
                q * int(g.degree(u) as u64)
            } else if g.has_edge(u, v) {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })),
        MatrixKind::Distance => {
            let d = connected_distances(g)?;
            Ok(ExactMatrix::from_fn(n, n, |u, v| int(u64::from(d.raw(u, v)))))
        }
        MatrixKind::GeneralizedDistance(f) => {
            let d = connected_distances(g)?;
            let table = f.table(d.diameter().unwrap_or(0))?;
            Ok(ExactMatrix::from_fn(n, n, |u, v| table[d.raw(u, v) as usize].clone()))
        }
    }
}

/// `kind` matrix of `g` scaled by `scale` to integers, row-major, as
/// machine integers. `None` if an entry does not fit or is not integral.
pub(crate) fn small_integer_matrix(
    g: &Graph,
    kind: &MatrixKind,
    scale: &BigInt,
) -> Result<Option<Vec<i64>>> {
    let n = g.order();
    let to_i64 = |x: BigRational| -> Option<i64> {
        let y = x * BigRational::from_integer(scale.clone());
        if !y.is_integer() {
            return None;
        }
        i64::try_from(y.to_integer()).ok()
    };
    let mut out = Vec::with_capacity(n * n);
    match kind {
        MatrixKind::Distance => {
            let d = connected_distances(g)?;
            let s = i64::try_from(scale.clone()).ok();
            for u in 0..n {
                for v in 0..n {
                    match s.and_then(|s| s.checked_mul(i64::from(d.raw(u, v)))) {
                        Some(x) => out.push(x),
                        None => return Ok(None),
                    }
                }
            }
        }
        _ => {
            let m = build_matrix(g, kind)?;
            for x in m.entries() {
                match to_i64(x.clone()) {
                    Some(v) => out.push(v),
                    None => return Ok(None),
                }
            }
        }
    }
    Ok(Some(out))
}

/// Least common denominator of every value the kind can place in a matrix
/// of a graph with diameter at most `d_max`.
pub(crate) fn kind_denominator(kind: &MatrixKind, d_max: u32) -> Result<BigInt> {
    Ok(match kind {
        MatrixKind::QLaplacian(q) => q.denom().clone(),
        MatrixKind::Distance => BigInt::one(),
        MatrixKind::GeneralizedDistance(f) => f
            .table(d_max)?
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom())),
    })
}

/// `det(xI − M)` for the `kind` matrix of `g`. Integral matrices with small
/// entries take a machine-integer path; everything else goes through exact
/// rationals.
pub fn characteristic_polynomial(g: &Graph, kind: &MatrixKind) -> Result<RatPolynomial> {
    let d_max = match kind {
        MatrixKind::QLaplacian(_) => 0,
        _ => connected_distances(g)?.diameter().unwrap_or(0),
    };
    let den = kind_denominator(kind, d_max)?;
    let n = g.order();
    match small_integer_matrix(g, kind, &den)? {
        Some(entries) => {
            let scaled = charpoly_small(n, &entries).into_coeffs();
            // charpoly of d*M is d^n p(x/d)
            let coeffs = scaled
                .into_iter()
                .enumerate()
                .map(|(k, c)| BigRational::new(c, num_traits::pow(den.clone(), n - k)))
                .collect();
            Ok(Polynomial::new(coeffs))
        }
        None => charpoly(&build_matrix(g, kind)?),
    }
}

/// Matrix of `coalesce(spec)` in `(i, j, k)` order, assembled block by block
/// from the base graph's matrix:
///
/// * distance: `M[i1:1, i2:1] + αJ`, plus `(β − α)I` when `i1 = i2`;
/// * `L^(q)`: the base block (plus `q deg_H(root) I` on the diagonal block)
///   for root blocks, `q deg_H(j) I` on other diagonal blocks, `I` between
///   blocks joined by an edge of `H_i`, `O` elsewhere;
/// * `D^f`: `Σ_t f(t + α) A^(t)[i1:1, i2:1]`, with the `t = 0` term replaced
///   by `f(β) I` when `i1 = i2`;
///
/// where `α = dist_H(root, j1) + dist_H(root, j2)` and
/// `β = dist_H(j1, j2)`.
pub fn shifted_block_matrix(spec: &CoalescingSpec, kind: &MatrixKind) -> Result<ExactMatrix> {
    let layout = spec.layout();
    let classes = spec.partition.classes();
    let ell = classes.len();
    let mut out = ExactMatrix::zeros(layout.total(), layout.total());

    match kind {
        MatrixKind::QLaplacian(q) => {
            let base = build_matrix(&spec.base, kind)?;
            for i1 in 0..ell {
                let h = spec.attachments[i1].graph();
                for i2 in 0..ell {
                    let block = base.submatrix(&classes[i1], &classes[i2])?;
                    for r in 0..classes[i1].len() {
                        for c in 0..classes[i2].len() {
                            let mut v = block.get(r, c).clone();
                            if i1 == i2 && r == c {
                                v += q * int(h.degree(0) as u64);
                            }
                            out.set(layout.offset(i1, 0) + r, layout.offset(i2, 0) + c, v);
                        }
                    }
                }
                let s = classes[i1].len();
                for j1 in 0..h.order() {
                    for j2 in 0..h.order() {
                        if j1 == 0 && j2 == 0 {
                            continue;
                        }
                        let diag = if j1 == j2 {
                            q * int(h.degree(j1) as u64)
                        } else if h.has_edge(j1, j2) {
                            BigRational::one()
                        } else {
                            continue;
                        };
                        for k in 0..s {
                            out.set(layout.offset(i1, j1) + k, layout.offset(i1, j2) + k, diag.clone());
                        }
                    }
                }
            }
        }
        MatrixKind::Distance | MatrixKind::GeneralizedDistance(_) => {
            let base_dist = connected_distances(&spec.base)?;
            let h_dist = spec
                .attachments
                .iter()
                .map(|h| connected_distances(h.graph()))
                .collect::<Result<Vec<_>>>()?;
            let base_diam = base_dist.diameter().unwrap_or(0);
            // A^(t) of the base graph, t = 1..=diam
            let layers = match kind {
                MatrixKind::GeneralizedDistance(_) => (1..=base_diam)
                    .map(|t| distance_t_graph(&spec.base, t))
                    .collect::<Result<Vec<_>>>()?,
                _ => Vec::new(),
            };
            for i1 in 0..ell {
                for i2 in 0..ell {
                    let (c1, c2) = (&classes[i1], &classes[i2]);
                    for j1 in 0..layout.attach_size(i1) {
                        for j2 in 0..layout.attach_size(i2) {
                            let alpha = h_dist[i1].raw(0, j1) + h_dist[i2].raw(0, j2);
                            let beta = (i1 == i2).then(|| h_dist[i1].raw(j1, j2));
                            let (o1, o2) = (layout.offset(i1, j1), layout.offset(i2, j2));
                            match kind {
                                MatrixKind::Distance => {
                                    for (r, &u) in c1.iter().enumerate() {
                                        for (c, &v) in c2.iter().enumerate() {
                                            // M + αJ + (β − α)I
                                            let mut x = i64::from(base_dist.raw(u, v)) + i64::from(alpha);
                                            if let (Some(b), true) = (beta, r == c) {
                                                x += i64::from(b) - i64::from(alpha);
                                            }
                                            out.set(o1 + r, o2 + c, BigRational::from_integer(x.into()));
                                        }
                                    }
                                }
                                MatrixKind::GeneralizedDistance(f) => {
                                    let at = |d: u32| f.at(d).ok_or(Error::FUndefinedAtDistance(d));
                                    // t = 0 term: f(α) A^(0) off the diagonal case,
                                    // f(β) I on it
                                    let diag_value = match beta {
                                        Some(b) => at(b)?,
                                        None => at(alpha)?,
                                    };
                                    for (r, &u) in c1.iter().enumerate() {
                                        for (c, &v) in c2.iter().enumerate() {
                                            if u == v {
                                                out.set(o1 + r, o2 + c, diag_value.clone());
                                            }
                                        }
                                    }
                                    for (t, layer) in layers.iter().enumerate() {
                                        let t = t as u32 + 1;
                                        let weight = at(t + alpha)?;
                                        for (r, &u) in c1.iter().enumerate() {
                                            for (c, &v) in c2.iter().enumerate() {
                                                if layer.has_edge(u, v) {
                                                    out.set(o1 + r, o2 + c, weight.clone());
                                                }
                                            }
                                        }
                                    }
                                }
                                MatrixKind::QLaplacian(_) => unreachable!(),
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}
