//! Half-edge model of real trivalent graphs.
//!
//! Graphs are multigraphs: loops and parallel edges are first-class, which
//! is why edges are unordered pairs of half-edges rather than vertex pairs.
//! An involution acts on half-edges; it induces the vertex and edge maps.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{labels_from, Gf2Vector, Labels};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfEdgeId(pub u32);

/// Index into the edge list of a [`HalfEdgeGraph`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0:?} has valency {1}, expected 1 or 3")]
    NonTrivalent(VertexId, usize),
    #[error("edge {0:?} is mapped to itself with its half-edges swapped")]
    EdgeReversal(EdgeId),
    #[error("half-edge map is not an involution at half-edge {0:?}")]
    NotInvolution(HalfEdgeId),
    #[error("graph is not connected")]
    Disconnected,
    #[error("half-edge {0:?} does not induce a graph map (vertices or edges torn apart)")]
    NotGraphMap(HalfEdgeId),
    #[error("unknown half-edge id {0:?}")]
    UnknownHalfEdge(HalfEdgeId),
    #[error("unknown vertex id {0:?}")]
    UnknownVertex(VertexId),
    #[error("half-edge {0:?} belongs to {1} edges, expected exactly 1")]
    HalfEdgeUse(HalfEdgeId, usize),
    #[error("duplicate id {0}")]
    DuplicateId(u32),
    #[error("rotation at vertex {0:?} is not a permutation of its half-edges")]
    BadRotation(VertexId),
    #[error("rotation system is missing")]
    MissingRotation,
    #[error("malformed graph file: {0}")]
    Format(String),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HalfEdge {
    pub id: HalfEdgeId,
    pub vertex: VertexId,
}

pub type Rotation = BTreeMap<VertexId, Vec<HalfEdgeId>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfEdgeGraph {
    vertices: Vec<VertexId>,
    half_edges: Vec<HalfEdge>,
    edges: Vec<(HalfEdgeId, HalfEdgeId)>,
    rotation: Option<Rotation>,
    he_vertex: BTreeMap<HalfEdgeId, VertexId>,
    he_edge: BTreeMap<HalfEdgeId, EdgeId>,
    vertex_half_edges: BTreeMap<VertexId, Vec<HalfEdgeId>>,
}

impl HalfEdgeGraph {
    pub fn new(
        vertices: Vec<VertexId>,
        half_edges: Vec<HalfEdge>,
        edges: Vec<(HalfEdgeId, HalfEdgeId)>,
        rotation: Option<Rotation>,
    ) -> Result<Self, GraphError> {
        let mut vset = BTreeSet::new();
        for v in &vertices {
            if !vset.insert(*v) {
                return Err(GraphError::DuplicateId(v.0));
            }
        }
        let mut he_vertex = BTreeMap::new();
        let mut vertex_half_edges: BTreeMap<VertexId, Vec<HalfEdgeId>> =
            vertices.iter().map(|v| (*v, Vec::new())).collect();
        for he in &half_edges {
            if he_vertex.insert(he.id, he.vertex).is_some() {
                return Err(GraphError::DuplicateId(he.id.0));
            }
            vertex_half_edges
                .get_mut(&he.vertex)
                .ok_or(GraphError::UnknownVertex(he.vertex))?
                .push(he.id);
        }
        let mut he_edge = BTreeMap::new();
        let mut use_count: BTreeMap<HalfEdgeId, usize> =
            he_vertex.keys().map(|h| (*h, 0)).collect();
        for (i, (a, b)) in edges.iter().enumerate() {
            for h in [a, b] {
                *use_count.get_mut(h).ok_or(GraphError::UnknownHalfEdge(*h))? += 1;
                he_edge.insert(*h, EdgeId(i));
            }
            if a == b {
                return Err(GraphError::HalfEdgeUse(*a, 2));
            }
        }
        for (h, c) in &use_count {
            if *c != 1 {
                return Err(GraphError::HalfEdgeUse(*h, *c));
            }
        }
        if let Some(rot) = &rotation {
            for (v, order) in rot {
                let incident: BTreeSet<HalfEdgeId> = vertex_half_edges
                    .get(v)
                    .ok_or(GraphError::UnknownVertex(*v))?
                    .iter()
                    .copied()
                    .collect();
                let given: BTreeSet<HalfEdgeId> = order.iter().copied().collect();
                if given != incident || order.len() != incident.len() {
                    return Err(GraphError::BadRotation(*v));
                }
            }
        }
        Ok(HalfEdgeGraph {
            vertices,
            half_edges,
            edges,
            rotation,
            he_vertex,
            he_edge,
            vertex_half_edges,
        })
    }

    /// Convenience constructor: vertices 0..n, one edge per `(u, v)` pair,
    /// half-edges 2i (at u) and 2i+1 (at v) for edge i.
    pub fn from_edge_list(n_vertices: u32, pairs: &[(u32, u32)]) -> Result<Self, GraphError> {
        let vertices = (0..n_vertices).map(VertexId).collect();
        let mut half_edges = Vec::new();
        let mut edges = Vec::new();
        for (i, (u, v)) in pairs.iter().enumerate() {
            let a = HalfEdgeId(2 * i as u32);
            let b = HalfEdgeId(2 * i as u32 + 1);
            half_edges.push(HalfEdge { id: a, vertex: VertexId(*u) });
            half_edges.push(HalfEdge { id: b, vertex: VertexId(*v) });
            edges.push((a, b));
        }
        Self::new(vertices, half_edges, edges, None)
    }

    pub fn with_rotation(self, rotation: Rotation) -> Result<Self, GraphError> {
        Self::new(self.vertices, self.half_edges, self.edges, Some(rotation))
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn edges(&self) -> &[(HalfEdgeId, HalfEdgeId)] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn rotation(&self) -> Option<&Rotation> {
        self.rotation.as_ref()
    }

    /// Stored rotation, or the half-edge input order at each vertex.
    pub fn rotation_or_default(&self) -> Rotation {
        match &self.rotation {
            Some(r) => r.clone(),
            None => self.vertex_half_edges.clone(),
        }
    }

    pub fn vertex_of(&self, h: HalfEdgeId) -> VertexId {
        self.he_vertex[&h]
    }

    pub fn edge_of(&self, h: HalfEdgeId) -> EdgeId {
        self.he_edge[&h]
    }

    pub fn half_edges_at(&self, v: VertexId) -> &[HalfEdgeId] {
        &self.vertex_half_edges[&v]
    }

    pub fn valency(&self, v: VertexId) -> usize {
        self.vertex_half_edges[&v].len()
    }

    pub fn halves(&self, e: EdgeId) -> (HalfEdgeId, HalfEdgeId) {
        self.edges[e.0]
    }

    pub fn twin(&self, h: HalfEdgeId) -> HalfEdgeId {
        let (a, b) = self.edges[self.he_edge[&h].0];
        if a == h { b } else { a }
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        let (a, b) = self.edges[e.0];
        (self.he_vertex[&a], self.he_vertex[&b])
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.endpoints(e);
        u == v
    }

    /// Edges adjacent to two vertices of valency != 1.
    pub fn edge0(&self) -> Vec<EdgeId> {
        self.edge_ids()
            .filter(|&e| {
                let (u, v) = self.endpoints(e);
                self.valency(u) != 1 && self.valency(v) != 1
            })
            .collect()
    }

    /// First Betti number |Edge| - |Vert| + 1 (the genus of the associated surface).
    pub fn genus(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_without(&BTreeSet::new())
    }

    /// Connectivity of the graph with the given edges removed (vertices kept).
    pub fn connected_without(&self, removed: &BTreeSet<EdgeId>) -> bool {
        connected(
            &self.vertices,
            self.edge_ids()
                .filter(|e| !removed.contains(e))
                .map(|e| self.endpoints(e)),
        )
    }

    /// Edges whose removal disconnects the graph.
    pub fn bridges(&self) -> BTreeSet<EdgeId> {
        self.edge_ids()
            .filter(|&e| !self.connected_without(&BTreeSet::from([e])))
            .collect()
    }

    /// True iff no single edge or pair of edges disconnects the graph.
    pub fn is_three_edge_connected(&self) -> bool {
        if !self.is_connected() {
            return false;
        }
        let n = self.edges.len();
        for i in 0..n {
            if !self.connected_without(&BTreeSet::from([EdgeId(i)])) {
                return false;
            }
            for j in i + 1..n {
                if !self.connected_without(&BTreeSet::from([EdgeId(i), EdgeId(j)])) {
                    return false;
                }
            }
        }
        true
    }
}

fn connected(
    vertices: &[VertexId],
    edges: impl IntoIterator<Item = (VertexId, VertexId)>,
) -> bool {
    let Some(&start) = vertices.first() else { return true };
    let mut adj: BTreeMap<VertexId, Vec<VertexId>> =
        vertices.iter().map(|v| (*v, Vec::new())).collect();
    for (u, v) in edges {
        adj.get_mut(&u).unwrap().push(v);
        adj.get_mut(&v).unwrap().push(u);
    }
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == vertices.len()
}

/// An involution of the graph, given as a permutation of half-edge ids.
/// Half-edges missing from the map are fixed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphInvolution {
    map: BTreeMap<HalfEdgeId, HalfEdgeId>,
}

impl GraphInvolution {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (HalfEdgeId, HalfEdgeId)>) -> Self {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            map.insert(a, b);
            map.insert(b, a);
        }
        GraphInvolution { map }
    }

    pub fn from_map(map: BTreeMap<HalfEdgeId, HalfEdgeId>) -> Self {
        GraphInvolution { map }
    }

    pub fn apply(&self, h: HalfEdgeId) -> HalfEdgeId {
        *self.map.get(&h).unwrap_or(&h)
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    pub fn entries(&self) -> &BTreeMap<HalfEdgeId, HalfEdgeId> {
        &self.map
    }

    pub fn vertex_image(&self, g: &HalfEdgeGraph, v: VertexId) -> VertexId {
        let h = g.half_edges_at(v)[0];
        g.vertex_of(self.apply(h))
    }

    pub fn edge_image(&self, g: &HalfEdgeGraph, e: EdgeId) -> EdgeId {
        let (a, _) = g.halves(e);
        g.edge_of(self.apply(a))
    }

    pub fn vertex_fixed(&self, g: &HalfEdgeGraph, v: VertexId) -> bool {
        self.vertex_image(g, v) == v
    }
}

/// Check that `(g, t)` is a real trivalent graph: valencies 1 or 3, `t` an
/// involution inducing a graph map, no edge mapped to itself with its
/// half-edges swapped, and `g` connected.
pub fn validate(g: &HalfEdgeGraph, t: &GraphInvolution) -> Result<(), GraphError> {
    for &v in g.vertices() {
        let val = g.valency(v);
        if val != 1 && val != 3 {
            return Err(GraphError::NonTrivalent(v, val));
        }
    }
    for (a, _) in t.entries() {
        if !g.half_edges().iter().any(|he| he.id == *a) {
            return Err(GraphError::UnknownHalfEdge(*a));
        }
    }
    for he in g.half_edges() {
        let h = he.id;
        if t.apply(t.apply(h)) != h {
            return Err(GraphError::NotInvolution(h));
        }
    }
    // must induce a vertex map and an edge map
    for &v in g.vertices() {
        let images: BTreeSet<VertexId> = g
            .half_edges_at(v)
            .iter()
            .map(|&h| g.vertex_of(t.apply(h)))
            .collect();
        if images.len() != 1 {
            return Err(GraphError::NotGraphMap(g.half_edges_at(v)[0]));
        }
    }
    for e in g.edge_ids() {
        let (a, b) = g.halves(e);
        let (ta, tb) = (t.apply(a), t.apply(b));
        if g.edge_of(ta) != g.edge_of(tb) {
            return Err(GraphError::NotGraphMap(a));
        }
        // tau(e) = e must fix both half-edges individually
        if g.edge_of(ta) == e && ta != a {
            return Err(GraphError::EdgeReversal(e));
        }
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(())
}

/// The quotient graph Gamma/tau together with the projection maps.
#[derive(Clone, Debug)]
pub struct QuotientGraph {
    /// tau-orbits of vertices, each sorted; ordered by smallest member.
    pub vertex_orbits: Vec<Vec<VertexId>>,
    /// tau-orbits of edges, each sorted; ordered by smallest member.
    pub edge_orbits: Vec<Vec<EdgeId>>,
    /// endpoints of each quotient edge, as indices into `vertex_orbits`.
    pub endpoints: Vec<(usize, usize)>,
    vertex_proj: BTreeMap<VertexId, usize>,
    edge_proj: BTreeMap<EdgeId, usize>,
    /// valency of each quotient vertex (number of half-edge orbits).
    pub valencies: Vec<usize>,
}

impl QuotientGraph {
    pub fn project_vertex(&self, v: VertexId) -> usize {
        self.vertex_proj[&v]
    }

    pub fn project_edge(&self, e: EdgeId) -> usize {
        self.edge_proj[&e]
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_orbits.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edge_orbits.len()
    }

    /// Quotient edges adjacent to two quotient vertices of valency != 1.
    pub fn edge0(&self) -> Vec<usize> {
        (0..self.n_edges())
            .filter(|&q| {
                let (u, v) = self.endpoints[q];
                self.valencies[u] != 1 && self.valencies[v] != 1
            })
            .collect()
    }

    pub fn connected_without(&self, removed: &BTreeSet<usize>) -> bool {
        let vertices: Vec<VertexId> = (0..self.n_vertices() as u32).map(VertexId).collect();
        connected(
            &vertices,
            self.endpoints
                .iter()
                .enumerate()
                .filter(|(q, _)| !removed.contains(q))
                .map(|(_, (u, v))| (VertexId(*u as u32), VertexId(*v as u32))),
        )
    }

    /// Quotient edges whose removal disconnects the quotient graph.
    pub fn bridges(&self) -> BTreeSet<usize> {
        (0..self.n_edges())
            .filter(|&q| !self.connected_without(&BTreeSet::from([q])))
            .collect()
    }
}

/// Quotient of `g` by `t`: vertices and edges exchanged by `t` are identified.
pub fn quotient(g: &HalfEdgeGraph, t: &GraphInvolution) -> QuotientGraph {
    let mut vertex_orbits: Vec<Vec<VertexId>> = Vec::new();
    let mut vertex_proj = BTreeMap::new();
    for &v in g.vertices() {
        if vertex_proj.contains_key(&v) {
            continue;
        }
        let w = t.vertex_image(g, v);
        let orbit = if w == v { vec![v] } else { vec![v.min(w), v.max(w)] };
        for m in &orbit {
            vertex_proj.insert(*m, vertex_orbits.len());
        }
        vertex_orbits.push(orbit);
    }
    let mut edge_orbits: Vec<Vec<EdgeId>> = Vec::new();
    let mut edge_proj = BTreeMap::new();
    for e in g.edge_ids() {
        if edge_proj.contains_key(&e) {
            continue;
        }
        let f = t.edge_image(g, e);
        let orbit = if f == e { vec![e] } else { vec![e.min(f), e.max(f)] };
        for m in &orbit {
            edge_proj.insert(*m, edge_orbits.len());
        }
        edge_orbits.push(orbit);
    }
    let endpoints: Vec<(usize, usize)> = edge_orbits
        .iter()
        .map(|orbit| {
            let (u, v) = g.endpoints(orbit[0]);
            (vertex_proj[&u], vertex_proj[&v])
        })
        .collect();
    // valency = number of half-edge orbits at a representative vertex
    let valencies: Vec<usize> = vertex_orbits
        .iter()
        .map(|orbit| {
            let v = orbit[0];
            if orbit.len() == 2 {
                g.valency(v)
            } else {
                let mut seen: BTreeSet<HalfEdgeId> = BTreeSet::new();
                let mut count = 0;
                for &h in g.half_edges_at(v) {
                    if seen.contains(&h) {
                        continue;
                    }
                    seen.insert(h);
                    seen.insert(t.apply(h));
                    count += 1;
                }
                count
            }
        })
        .collect();
    QuotientGraph {
        vertex_orbits,
        edge_orbits,
        endpoints,
        vertex_proj,
        edge_proj,
        valencies,
    }
}

/// A fundamental-cycle basis of H_1(Gamma; Z/2Z) from a deterministic
/// spanning tree (BFS from the smallest vertex id, edges in id order).
#[derive(Clone, Debug)]
pub struct CycleBasis {
    pub tree_edges: BTreeSet<EdgeId>,
    /// the non-tree edges e_1..e_g, in id order
    pub cycle_edges: Vec<EdgeId>,
    /// fundamental cycle of each non-tree edge, as an edge set
    pub cycles: Vec<BTreeSet<EdgeId>>,
    /// coordinate labels "a0".."a{g-1}" for the cycle space
    pub labels: Labels,
}

impl CycleBasis {
    pub fn genus(&self) -> usize {
        self.cycle_edges.len()
    }

    /// Incidence vector u_f = ([f in alpha_1], ..., [f in alpha_g]).
    pub fn incidence(&self, f: EdgeId) -> Gf2Vector {
        Gf2Vector::from_indices(
            self.labels.clone(),
            self.cycles
                .iter()
                .enumerate()
                .filter(|(_, c)| c.contains(&f))
                .map(|(i, _)| i),
        )
    }
}

pub fn cycle_basis(g: &HalfEdgeGraph) -> CycleBasis {
    // adjacency sorted by edge id
    let mut adj: BTreeMap<VertexId, Vec<(EdgeId, VertexId)>> =
        g.vertices().iter().map(|v| (*v, Vec::new())).collect();
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        if u == v {
            continue; // loops are never tree edges
        }
        adj.get_mut(&u).unwrap().push((e, v));
        adj.get_mut(&v).unwrap().push((e, u));
    }
    for list in adj.values_mut() {
        list.sort();
    }
    let root = *g.vertices().iter().min().expect("nonempty graph");
    let mut parent: BTreeMap<VertexId, (EdgeId, VertexId)> = BTreeMap::new();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    let mut tree_edges = BTreeSet::new();
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &adj[&v] {
            if seen.insert(w) {
                parent.insert(w, (e, v));
                tree_edges.insert(e);
                queue.push_back(w);
            }
        }
    }
    let cycle_edges: Vec<EdgeId> = g.edge_ids().filter(|e| !tree_edges.contains(e)).collect();
    let path_to_root = |mut v: VertexId| -> BTreeSet<EdgeId> {
        let mut path = BTreeSet::new();
        while let Some(&(e, p)) = parent.get(&v) {
            path.insert(e);
            v = p;
        }
        path
    };
    let cycles: Vec<BTreeSet<EdgeId>> = cycle_edges
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            // symmetric difference of the two root paths, plus e itself
            let mut cycle: BTreeSet<EdgeId> = path_to_root(u)
                .symmetric_difference(&path_to_root(v))
                .copied()
                .collect();
            cycle.insert(e);
            cycle
        })
        .collect();
    let labels = labels_from((0..cycle_edges.len()).map(|i| format!("a{i}")));
    CycleBasis { tree_edges, cycle_edges, cycles, labels }
}

/// All pairs {pi(e), pi(e')} of quotient edges with e, e' distinct edges of
/// Edge0(Gamma), neither image a quotient bridge, and Gamma minus {e, e'}
/// disconnected. When e' = tau(e) the two images coincide and the pair is
/// returned as (p, p). Computed literally by removal and connectivity tests.
pub fn disconnecting_pairs(g: &HalfEdgeGraph, t: &GraphInvolution) -> BTreeSet<(usize, usize)> {
    let q = quotient(g, t);
    let edge0: Vec<EdgeId> = g.edge0();
    let edge0_q: BTreeSet<usize> = q.edge0().into_iter().collect();
    let quotient_bridges: BTreeSet<usize> = q
        .bridges()
        .into_iter()
        .filter(|b| edge0_q.contains(b))
        .collect();
    let mut pairs = BTreeSet::new();
    for (i, &e) in edge0.iter().enumerate() {
        for &f in edge0.iter().skip(i + 1) {
            let (pe, pf) = (q.project_edge(e), q.project_edge(f));
            if quotient_bridges.contains(&pe) || quotient_bridges.contains(&pf) {
                continue;
            }
            if !g.connected_without(&BTreeSet::from([e, f])) {
                pairs.insert((pe.min(pf), pe.max(pf)));
            }
        }
    }
    pairs
}

// ---------------------------------------------------------------------------
// JSON file format

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<VertexId>,
    half_edges: Vec<HalfEdge>,
    edges: Vec<(HalfEdgeId, HalfEdgeId)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rotation: Option<BTreeMap<u32, Vec<HalfEdgeId>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tau: Option<BTreeMap<u32, u32>>,
}

/// Parse the JSON graph file format. `tau` defaults to the identity.
pub fn from_json_str(text: &str) -> Result<(HalfEdgeGraph, GraphInvolution), GraphError> {
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| GraphError::Format(e.to_string()))?;
    let rotation = file.rotation.map(|r| {
        r.into_iter()
            .map(|(v, order)| (VertexId(v), order))
            .collect::<Rotation>()
    });
    let g = HalfEdgeGraph::new(file.vertices, file.half_edges, file.edges, rotation)?;
    let tau = match file.tau {
        None => GraphInvolution::identity(),
        Some(m) => GraphInvolution::from_map(
            m.into_iter()
                .map(|(a, b)| (HalfEdgeId(a), HalfEdgeId(b)))
                .collect(),
        ),
    };
    Ok((g, tau))
}

pub fn to_json_string(g: &HalfEdgeGraph, t: &GraphInvolution) -> String {
    let file = GraphFile {
        vertices: g.vertices().to_vec(),
        half_edges: g.half_edges().to_vec(),
        edges: g.edges().to_vec(),
        rotation: g
            .rotation()
            .map(|r| r.iter().map(|(v, o)| (v.0, o.clone())).collect()),
        tau: if t.is_identity() {
            None
        } else {
            Some(t.entries().iter().map(|(a, b)| (a.0, b.0)).collect())
        },
    };
    serde_json::to_string_pretty(&file).expect("graph serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn theta_validates_and_has_genus_2() {
        let (g, t) = corpus::theta();
        validate(&g, &t).unwrap();
        assert_eq!(g.genus(), 2);
    }

    #[test]
    fn k4_genus_and_connectivity() {
        let (g, t) = corpus::k4();
        validate(&g, &t).unwrap();
        assert_eq!(g.genus(), 3);
        assert!(g.is_three_edge_connected());
        assert!(g.bridges().is_empty());
    }

    #[test]
    fn path_graph_is_rejected() {
        let g = HalfEdgeGraph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let err = validate(&g, &GraphInvolution::identity()).unwrap_err();
        assert_eq!(err, GraphError::NonTrivalent(VertexId(1), 2));
    }

    #[test]
    fn reversed_loop_is_rejected() {
        // loop at vertex 0 whose half-edges are swapped by tau, plus a tail
        // so the vertex is trivalent and the leaf keeps the graph legal
        let g = HalfEdgeGraph::from_edge_list(2, &[(0, 0), (0, 1)]).unwrap();
        let t = GraphInvolution::from_pairs([(HalfEdgeId(0), HalfEdgeId(1))]);
        let err = validate(&g, &t).unwrap_err();
        assert_eq!(err, GraphError::EdgeReversal(EdgeId(0)));
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let g = HalfEdgeGraph::from_edge_list(4, &[(0, 0), (0, 1), (2, 2), (2, 3)]).unwrap();
        let err = validate(&g, &GraphInvolution::identity()).unwrap_err();
        assert_eq!(err, GraphError::Disconnected);
    }

    #[test]
    fn non_involution_is_rejected() {
        let (g, _) = corpus::theta();
        // 0 -> 2 -> 4 -> 0 is a 3-cycle, not an involution
        let t = GraphInvolution::from_map(BTreeMap::from([
            (HalfEdgeId(0), HalfEdgeId(2)),
            (HalfEdgeId(2), HalfEdgeId(4)),
            (HalfEdgeId(4), HalfEdgeId(0)),
        ]));
        assert!(matches!(validate(&g, &t), Err(GraphError::NotInvolution(_))));
    }

    #[test]
    fn quotient_by_identity_is_a_copy() {
        let (g, t) = corpus::theta();
        let q = quotient(&g, &t);
        assert_eq!(q.n_vertices(), g.vertices().len());
        assert_eq!(q.n_edges(), g.edges().len());
        for e in g.edge_ids() {
            assert_eq!(q.edge_orbits[q.project_edge(e)], vec![e]);
        }
        // quotient by the identity again: same shape (idempotence at the level
        // of vertex/edge counts and projections)
        assert_eq!(q.edge0().len(), 3);
    }

    #[test]
    fn quotient_of_free_swap_halves_everything() {
        // two triangles-with-tails swapped by tau (disconnected on purpose:
        // quotient itself does not require connectivity)
        let g = HalfEdgeGraph::from_edge_list(
            8,
            &[
                (0, 1), (1, 2), (2, 0), (0, 3), // triangle 0,1,2 with tail to 3
                (4, 5), (5, 6), (6, 4), (4, 7), // mirror copy
            ],
        )
        .unwrap();
        let t = GraphInvolution::from_pairs(
            (0..8u32).map(|i| (HalfEdgeId(i), HalfEdgeId(i + 8))),
        );
        let q = quotient(&g, &t);
        assert_eq!(q.n_vertices(), 4);
        assert_eq!(q.n_edges(), 4);
    }

    #[test]
    fn fig2b_quotient_has_fixed_edges_with_singleton_fibers() {
        let (g, t) = corpus::fig2b();
        validate(&g, &t).unwrap();
        assert_eq!(g.genus(), 3);
        let q = quotient(&g, &t);
        let singleton_fibers: Vec<_> = (0..q.n_edges())
            .filter(|&qe| q.edge_orbits[qe].len() == 1)
            .collect();
        assert_eq!(singleton_fibers.len(), 2);
        assert_eq!(q.edge0().len(), 4);
    }

    #[test]
    fn theta_cycle_basis() {
        let (g, _) = corpus::theta();
        let cb = cycle_basis(&g);
        assert_eq!(cb.genus(), 2);
        // BFS from vertex 0 in edge order: edge 0 is the tree edge
        assert_eq!(cb.tree_edges, BTreeSet::from([EdgeId(0)]));
        assert_eq!(cb.cycle_edges, vec![EdgeId(1), EdgeId(2)]);
        assert_eq!(cb.cycles[0], BTreeSet::from([EdgeId(0), EdgeId(1)]));
        assert_eq!(cb.cycles[1], BTreeSet::from([EdgeId(0), EdgeId(2)]));
        // rank of {u_f} over all edges equals g
        let vectors: Vec<_> = g.edge_ids().map(|e| cb.incidence(e)).collect();
        let span =
            crate::gf2::Gf2Subspace::from_spanning(cb.labels.clone(), vectors).unwrap();
        assert_eq!(span.dim(), 2);
    }

    #[test]
    fn dumbbell_cycle_basis_and_bridges() {
        let (g, _) = corpus::dumbbell();
        let cb = cycle_basis(&g);
        assert_eq!(cb.genus(), 2);
        // each loop is its own cycle, the bridge is in none
        assert_eq!(cb.cycles[0], BTreeSet::from([EdgeId(0)]));
        assert_eq!(cb.cycles[1], BTreeSet::from([EdgeId(1)]));
        assert!(cb.incidence(EdgeId(2)).is_zero());
        assert_eq!(g.bridges(), BTreeSet::from([EdgeId(2)]));
        assert!(!g.is_three_edge_connected());
    }

    #[test]
    fn tree_has_empty_cycle_basis() {
        let g = HalfEdgeGraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(g.genus(), 0);
        assert_eq!(cycle_basis(&g).genus(), 0);
    }

    #[test]
    fn bridge_iff_incidence_zero_and_removal_disconnects() {
        // cross-check the two characterizations on the corpus
        for (g, _) in [corpus::theta(), corpus::dumbbell(), corpus::k4(), corpus::doubled4cycle()]
        {
            let cb = cycle_basis(&g);
            let bridges = g.bridges();
            for e in g.edge_ids() {
                assert_eq!(cb.incidence(e).is_zero(), bridges.contains(&e), "{e:?}");
            }
        }
    }

    #[test]
    fn disconnecting_pairs_examples() {
        let (g, t) = corpus::theta();
        assert!(disconnecting_pairs(&g, &t).is_empty());

        let (g, t) = corpus::dumbbell();
        assert!(disconnecting_pairs(&g, &t).is_empty());

        let (g, t) = corpus::doubled4cycle();
        let pairs = disconnecting_pairs(&g, &t);
        // bc and da are the two single edges of the 4-cycle (ids 2 and 5)
        assert_eq!(pairs, BTreeSet::from([(2usize, 5usize)]));
        // symmetric by construction and disjoint from bridge images
        let q = quotient(&g, &t);
        for &(a, b) in &pairs {
            assert!(!q.bridges().contains(&a) && !q.bridges().contains(&b));
        }
    }

    #[test]
    fn json_round_trip() {
        let (g, t) = corpus::fig2b();
        let text = to_json_string(&g, &t);
        let (g2, t2) = from_json_str(&text).unwrap();
        assert_eq!(g, g2);
        assert_eq!(t, t2);
    }
}
