//! Random graphs for randomized checks of "for arbitrary H" statements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::rat;
use crate::graphs::{CoalescingSpec, Graph, Partition, RootedGraph};
use crate::matrices::DistanceFunction;

/// The generator used wherever a seed is accepted.
pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random labeled tree: each vertex joins a uniformly chosen earlier vertex,
/// then labels are shuffled.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.set_edge(perm[u], perm[v], true);
    }
    g
}

/// Random connected graph: a random tree plus each remaining pair with
/// probability `p`.
pub fn random_connected<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = random_tree(n, rng);
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.set_edge(u, v, true);
            }
        }
    }
    g
}

/// Random connected graph on `1..=max_order` vertices with a random root.
pub fn random_rooted<R: Rng + ?Sized>(max_order: usize, rng: &mut R) -> RootedGraph {
    let n = rng.gen_range(1..=max_order.max(1));
    let g = random_connected(n, 0.4, rng);
    let root = rng.gen_range(0..n);
    RootedGraph::new(g, root).expect("root in range")
}

/// Random tree on `1..=max_order` vertices with a random root.
pub fn random_rooted_tree<R: Rng + ?Sized>(max_order: usize, rng: &mut R) -> RootedGraph {
    let n = rng.gen_range(1..=max_order.max(1));
    let root = rng.gen_range(0..n);
    RootedGraph::new(random_tree(n, rng), root).expect("root in range")
}

/// Table `f(0), ..., f(len - 1)` with integer entries uniform in `lo..=hi`.
pub fn random_table<R: Rng + ?Sized>(len: usize, lo: i64, hi: i64, rng: &mut R) -> DistanceFunction {
    DistanceFunction::Table((0..len).map(|_| rat(rng.gen_range(lo..=hi))).collect())
}

/// Random partition of `0..n` into `1..=max_classes` nonempty classes.
pub fn random_partition<R: Rng + ?Sized>(n: usize, max_classes: usize, rng: &mut R) -> Partition {
    let ell = rng.gen_range(1..=max_classes.clamp(1, n.max(1)));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut classes: Vec<Vec<usize>> = order[..ell].iter().map(|&v| vec![v]).collect();
    for &v in &order[ell..] {
        classes[rng.gen_range(0..ell)].push(v);
    }
    Partition::new(n, classes).expect("classes cover every vertex once")
}

/// Random connected base on `1..=max_base` vertices, random partition and
/// random rooted attachments on at most `max_attach` vertices.
pub fn random_spec<R: Rng + ?Sized>(max_base: usize, max_attach: usize, rng: &mut R) -> CoalescingSpec {
    let n = rng.gen_range(1..=max_base);
    let base = random_connected(n, 0.3, rng);
    let partition = random_partition(n, 3, rng);
    let attachments = (0..partition.len())
        .map(|_| random_rooted(max_attach, rng))
        .collect();
    CoalescingSpec::new(base, partition, attachments).expect("consistent spec")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_connected_and_sized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..9 {
            let t = random_tree(n, &mut rng);
            assert!(t.is_connected());
            assert_eq!(t.edge_count(), n - 1);
            assert!(random_connected(n, 0.5, &mut rng).is_connected());
        }
        for _ in 0..20 {
            let spec = random_spec(7, 4, &mut rng);
            assert!(spec.base.is_connected());
            assert_eq!(spec.partition.order(), spec.base.order());
        }
    }
}
