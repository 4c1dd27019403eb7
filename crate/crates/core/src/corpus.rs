//! Bundled example graphs. Each constructor returns a validated pair
//! `(graph, involution)`; planar graphs carry a planar rotation system.
//!
//! The same graphs are shipped as JSON under `corpus/` at the workspace
//! root; the ignored `regenerate_corpus` test rewrites those files.

use std::path::PathBuf;

use crate::graph::{GraphInvolution, HalfEdgeGraph, HalfEdgeId, Rotation, VertexId};

fn rot(entries: &[(u32, &[u32])]) -> Rotation {
    entries
        .iter()
        .map(|(v, hs)| (VertexId(*v), hs.iter().map(|h| HalfEdgeId(*h)).collect()))
        .collect()
}

fn build(
    n: u32,
    pairs: &[(u32, u32)],
    rotation: Option<Rotation>,
    tau: GraphInvolution,
) -> (HalfEdgeGraph, GraphInvolution) {
    let g = HalfEdgeGraph::from_edge_list(n, pairs).unwrap();
    let g = HalfEdgeGraph::new(
        g.vertices().to_vec(),
        g.half_edges().to_vec(),
        g.edges().to_vec(),
        rotation,
    )
    .unwrap();
    (g, tau)
}

/// Two vertices joined by three parallel edges; genus 2.
pub fn theta() -> (HalfEdgeGraph, GraphInvolution) {
    build(
        2,
        &[(0, 1), (0, 1), (0, 1)],
        Some(rot(&[(0, &[0, 2, 4]), (1, &[5, 3, 1])])),
        GraphInvolution::identity(),
    )
}

/// A loop at each of two vertices, joined by a bridge; genus 2.
pub fn dumbbell() -> (HalfEdgeGraph, GraphInvolution) {
    build(
        2,
        &[(0, 0), (1, 1), (0, 1)],
        Some(rot(&[(0, &[0, 1, 4]), (1, &[2, 5, 3])])),
        GraphInvolution::identity(),
    )
}

/// Complete graph on four vertices; genus 3, three-edge-connected.
pub fn k4() -> (HalfEdgeGraph, GraphInvolution) {
    build(
        4,
        &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        Some(rot(&[
            (0, &[0, 4, 2]),
            (1, &[6, 8, 1]),
            (2, &[3, 10, 7]),
            (3, &[5, 9, 11]),
        ])),
        GraphInvolution::identity(),
    )
}

/// 4-cycle a-b-c-d with edges ab and cd doubled; genus 3.
/// Edge ids: 0,1 = ab pair, 2 = bc, 3,4 = cd pair, 5 = da.
pub fn doubled4cycle() -> (HalfEdgeGraph, GraphInvolution) {
    build(
        4,
        &[(0, 1), (0, 1), (1, 2), (2, 3), (2, 3), (3, 0)],
        Some(rot(&[
            (0, &[0, 11, 2]),
            (1, &[1, 3, 4]),
            (2, &[5, 6, 8]),
            (3, &[7, 10, 9]),
        ])),
        GraphInvolution::identity(),
    )
}

/// Genus-3 graph with a reflection: pointwise-fixed edges e1 = (u,v) and
/// e2 = (w,x), plus mirrored double edges (u,w) and (v,x). All four
/// vertices are fixed, each with exactly one fixed half-edge.
/// Edge ids: 0 = e1, 1 = e2, {2,3} and {4,5} the swapped pairs.
pub fn fig2b() -> (HalfEdgeGraph, GraphInvolution) {
    build(
        4,
        &[(0, 1), (2, 3), (0, 2), (0, 2), (1, 3), (1, 3)],
        Some(rot(&[
            (0, &[0, 4, 6]),
            (1, &[1, 10, 8]),
            (2, &[2, 7, 5]),
            (3, &[9, 11, 3]),
        ])),
        GraphInvolution::from_pairs([
            (HalfEdgeId(4), HalfEdgeId(6)),
            (HalfEdgeId(5), HalfEdgeId(7)),
            (HalfEdgeId(8), HalfEdgeId(10)),
            (HalfEdgeId(9), HalfEdgeId(11)),
        ]),
    )
}

/// Two copies of the theta graph, each with one edge removed, joined
/// crosswise; the copy swap is a free involution with quotient theta.
pub fn freepair() -> (HalfEdgeGraph, GraphInvolution) {
    build(
        4,
        &[(0, 1), (0, 1), (2, 3), (2, 3), (0, 3), (2, 1)],
        None,
        GraphInvolution::from_pairs([
            (HalfEdgeId(0), HalfEdgeId(4)),
            (HalfEdgeId(1), HalfEdgeId(5)),
            (HalfEdgeId(2), HalfEdgeId(6)),
            (HalfEdgeId(3), HalfEdgeId(7)),
            (HalfEdgeId(8), HalfEdgeId(10)),
            (HalfEdgeId(9), HalfEdgeId(11)),
        ]),
    )
}

/// The Petersen graph; genus 6, three-edge-connected, non-planar.
pub fn petersen() -> (HalfEdgeGraph, GraphInvolution) {
    build(
        10,
        &[
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0), // outer cycle
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), // spokes
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5), // inner pentagram
        ],
        None,
        GraphInvolution::identity(),
    )
}

pub fn all() -> Vec<(&'static str, HalfEdgeGraph, GraphInvolution)> {
    let mut out = Vec::new();
    for (name, f) in NAMED {
        let (g, t) = f();
        out.push((*name, g, t));
    }
    out
}

type Ctor = fn() -> (HalfEdgeGraph, GraphInvolution);

pub const NAMED: &[(&str, Ctor)] = &[
    ("theta", theta),
    ("dumbbell", dumbbell),
    ("k4", k4),
    ("doubled4cycle", doubled4cycle),
    ("fig2b", fig2b),
    ("freepair", freepair),
    ("petersen", petersen),
];

/// Directory of the shipped JSON corpus (workspace root `corpus/`).
pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .canonicalize()
        .unwrap_or_else(|_| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus"))
}

pub fn lookup(name: &str) -> Option<(HalfEdgeGraph, GraphInvolution)> {
    NAMED.iter().find(|(n, _)| *n == name).map(|(_, f)| f())
}
