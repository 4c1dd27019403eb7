//! Seeded random real trivalent graphs for property testing.
//!
//! Cubic graphs come from the configuration (pairing) model with rejection
//! on connectivity; involutions are built by three constructions that
//! together exercise fixed edges, swapped pairs and free actions.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::graph::{validate, GraphInvolution, HalfEdgeGraph, HalfEdgeId};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn graph_from_vertex_pairs(n: u32, pairs: &[(u32, u32)]) -> HalfEdgeGraph {
    HalfEdgeGraph::from_edge_list(n, pairs).expect("well-formed edge list")
}

/// Connected cubic multigraph on `n` vertices (n even) by stub pairing.
pub fn random_cubic(rng: &mut ChaCha8Rng, n: u32) -> HalfEdgeGraph {
    assert!(n >= 2 && n % 2 == 0, "cubic graphs need an even vertex count");
    loop {
        let mut stubs: Vec<u32> = (0..n).flat_map(|v| [v, v, v]).collect();
        stubs.shuffle(rng);
        let pairs: Vec<(u32, u32)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        let g = graph_from_vertex_pairs(n, &pairs);
        if g.is_connected() {
            return g;
        }
    }
}

/// Connected trivalent graph (valencies 3 and 1) with the identity
/// involution: `n3` trivalent vertices plus `n1` leaves.
pub fn random_trivalent_with_leaves(
    rng: &mut ChaCha8Rng,
    n3: u32,
    n1: u32,
) -> (HalfEdgeGraph, GraphInvolution) {
    assert!((3 * n3 + n1) % 2 == 0, "odd stub total cannot be paired");
    assert!(n3 >= 1);
    loop {
        let mut stubs: Vec<u32> = (0..n3)
            .flat_map(|v| [v, v, v])
            .chain(n3..n3 + n1)
            .collect();
        stubs.shuffle(rng);
        let pairs: Vec<(u32, u32)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        let g = graph_from_vertex_pairs(n3 + n1, &pairs);
        let t = GraphInvolution::identity();
        if validate(&g, &t).is_ok() {
            return (g, t);
        }
    }
}

/// Mirror construction: two copies of a cubic-with-stubs half joined
/// through axis vertices. Each axis vertex is fixed with one fixed
/// half-edge (on an axis edge) and a swapped pair into the two copies.
///
/// `n` = vertices per copy, `m` = number of axis vertices (even, >= 2);
/// total vertex count is 2n + m.
pub fn random_mirror(
    rng: &mut ChaCha8Rng,
    n: u32,
    m: u32,
) -> (HalfEdgeGraph, GraphInvolution) {
    assert!(m >= 2 && m % 2 == 0);
    assert!(n >= 1 && (3 * n >= m) && (3 * n - m) % 2 == 0);
    loop {
        // one copy: n vertices, m dangling stubs, the rest paired
        let mut stubs: Vec<u32> = (0..n).flat_map(|v| [v, v, v]).collect();
        stubs.shuffle(rng);
        let dangling: Vec<u32> = stubs.split_off(stubs.len() - m as usize);
        let inner: Vec<(u32, u32)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();

        // vertices: 0..n copy 1, n..2n copy 2, 2n..2n+m axis
        let total = 2 * n + m;
        let axis = |i: u32| 2 * n + i;
        let mut vertex_pairs: Vec<(u32, u32)> = Vec::new();
        let mut edge_copy_mate: Vec<Option<usize>> = Vec::new(); // swapped partner
        for &(u, v) in &inner {
            let a = vertex_pairs.len();
            vertex_pairs.push((u, v));
            vertex_pairs.push((u + n, v + n));
            edge_copy_mate.push(Some(a + 1));
            edge_copy_mate.push(Some(a));
        }
        for (i, &s) in dangling.iter().enumerate() {
            let a = vertex_pairs.len();
            vertex_pairs.push((s, axis(i as u32)));
            vertex_pairs.push((s + n, axis(i as u32)));
            edge_copy_mate.push(Some(a + 1));
            edge_copy_mate.push(Some(a));
        }
        for i in (0..m).step_by(2) {
            vertex_pairs.push((axis(i), axis(i + 1)));
            edge_copy_mate.push(None); // pointwise fixed
        }
        let g = graph_from_vertex_pairs(total, &vertex_pairs);
        // half-edges of edge i are 2i, 2i+1 in from_edge_list order
        let mut t_pairs = Vec::new();
        for (i, mate) in edge_copy_mate.iter().enumerate() {
            if let Some(j) = *mate {
                if j > i {
                    t_pairs.push((HalfEdgeId(2 * i as u32), HalfEdgeId(2 * j as u32)));
                    t_pairs.push((HalfEdgeId(2 * i as u32 + 1), HalfEdgeId(2 * j as u32 + 1)));
                }
            }
        }
        let t = GraphInvolution::from_pairs(t_pairs);
        if validate(&g, &t).is_ok() {
            return (g, t);
        }
    }
}

/// Free construction: two copies of a cubic graph minus a non-loop edge
/// (u, v), joined crosswise u1-v2 and u2-v1; the copy swap acts freely.
pub fn random_free(rng: &mut ChaCha8Rng, n: u32) -> (HalfEdgeGraph, GraphInvolution) {
    loop {
        let h = random_cubic(rng, n);
        let non_loops: Vec<usize> = h
            .edge_ids()
            .filter(|&e| !h.is_loop(e))
            .map(|e| e.0)
            .collect();
        if non_loops.is_empty() {
            continue;
        }
        let cut = *non_loops.choose(rng).unwrap();
        let (u, v) = h.endpoints(crate::graph::EdgeId(cut));
        let kept: Vec<(u32, u32)> = h
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != cut)
            .map(|(_, &(a, b))| (h.vertex_of(a).0, h.vertex_of(b).0))
            .collect();
        let mut vertex_pairs: Vec<(u32, u32)> = Vec::new();
        let mut mate: Vec<usize> = Vec::new();
        for &(a, b) in &kept {
            let i = vertex_pairs.len();
            vertex_pairs.push((a, b));
            vertex_pairs.push((a + n, b + n));
            mate.push(i + 1);
            mate.push(i);
        }
        // crossed edges: (u1, v2) and (u2, v1), swapped by tau with the
        // u-side half-edges exchanged and the v-side half-edges exchanged
        let i = vertex_pairs.len();
        vertex_pairs.push((u.0, v.0 + n));
        vertex_pairs.push((u.0 + n, v.0));
        mate.push(i + 1);
        mate.push(i);
        let g = graph_from_vertex_pairs(2 * n, &vertex_pairs);
        let mut t_pairs = Vec::new();
        for (a, &b) in mate.iter().enumerate() {
            if b > a {
                t_pairs.push((HalfEdgeId(2 * a as u32), HalfEdgeId(2 * b as u32)));
                t_pairs.push((HalfEdgeId(2 * a as u32 + 1), HalfEdgeId(2 * b as u32 + 1)));
            }
        }
        let t = GraphInvolution::from_pairs(t_pairs);
        if validate(&g, &t).is_ok() {
            return (g, t);
        }
    }
}

/// A random real trivalent graph with at most `max_vertices` vertices,
/// drawn from the three constructions above.
pub fn random_real_trivalent(
    rng: &mut ChaCha8Rng,
    max_vertices: u32,
) -> (HalfEdgeGraph, GraphInvolution) {
    let max_vertices = max_vertices.max(6);
    match rng.gen_range(0..4u32) {
        0 => {
            let n = 2 * rng.gen_range(1..=max_vertices / 2);
            (random_cubic(rng, n), GraphInvolution::identity())
        }
        1 => {
            // trivalent with leaves: 3*n3 + n1 even, and connectivity
            // requires n1 <= n3 + 2 (tree case is extremal)
            let n3 = rng.gen_range(1..=(max_vertices * 3 / 4).max(1));
            let max_leaves = (n3 + 2).min(max_vertices.saturating_sub(n3));
            let parity = (3 * n3) % 2;
            let mut n1 = rng.gen_range(0..=max_leaves);
            if (n1 + parity) % 2 == 1 {
                n1 = if n1 > parity { n1 - 1 } else { n1 + 1 };
            }
            random_trivalent_with_leaves(rng, n3, n1)
        }
        2 => {
            // mirror: 2n + m <= max; n even keeps the leftover stubs pairable
            let n = 2 * rng.gen_range(1..=((max_vertices - 2) / 6).max(1));
            let m_max = (3 * n).min(max_vertices - 2 * n) / 2;
            let m = 2 * rng.gen_range(1..=m_max.max(1));
            random_mirror(rng, n, m)
        }
        _ => {
            let n = 2 * rng.gen_range(1..=max_vertices / 4).max(1);
            random_free(rng, n)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wspace::{w_kernel, w_structural};

    #[test]
    fn generators_produce_valid_graphs() {
        let mut rng = rng_from_seed(7);
        for _ in 0..30 {
            let (g, t) = random_real_trivalent(&mut rng, 20);
            validate(&g, &t).unwrap();
            assert!(g.vertices().len() <= 20);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let run = |seed| {
            let mut rng = rng_from_seed(seed);
            let (g, t) = random_real_trivalent(&mut rng, 16);
            crate::graph::to_json_string(&g, &t)
        };
        assert_eq!(run(3), run(3));
        assert_ne!(run(3), run(4));
    }

    #[test]
    fn mirror_has_fixed_axis_and_swapped_copies() {
        let mut rng = rng_from_seed(1);
        let (g, t) = random_mirror(&mut rng, 2, 4);
        validate(&g, &t).unwrap();
        assert!(!t.is_identity());
        assert_eq!(g.vertices().len(), 8);
        let fixed = g
            .vertices()
            .iter()
            .filter(|&&v| t.vertex_fixed(&g, v))
            .count();
        assert_eq!(fixed, 4);
    }

    #[test]
    fn kernel_matches_structural_on_random_sample() {
        let mut rng = rng_from_seed(42);
        for _ in 0..40 {
            let (g, t) = random_real_trivalent(&mut rng, 14);
            let wk = w_kernel(&g, &t);
            let ws = w_structural(&g, &t);
            assert!(
                wk.subspace_equal(&ws).unwrap(),
                "counterexample: {}",
                crate::graph::to_json_string(&g, &t)
            );
        }
    }
}
