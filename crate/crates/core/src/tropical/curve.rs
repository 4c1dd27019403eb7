//! Geometry of a non-singular plane tropical curve: vertices dual to
//! triangles, bounded edges dual to interior segments, rays dual to
//! boundary segments, and the underlying trivalent graph with its planar
//! rotation system.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num::integer::gcd;
use num::rational::BigRational;
use num::{Signed, Zero};

use crate::gf2::Gf2Vector;
use crate::graph::{cycle_basis, EdgeId, GraphInvolution, HalfEdgeGraph, HalfEdgeId, Rotation, VertexId};
use crate::wspace::direction_basis;

use super::subdivision::{convex_hull, dual_subdivision};
use super::{DualSubdivision, TropicalError, TropicalPoly};

/// Curve vertex dual to the triangle `cell` of the subdivision.
#[derive(Clone, Debug)]
pub struct Vertex {
    pub cell: usize,
    pub pos: (BigRational, BigRational),
}

/// Bounded edge dual to the segment shared by two triangles.
#[derive(Clone, Debug)]
pub struct BoundedEdge {
    /// incident cells, smaller index first
    pub cells: (usize, usize),
    /// dual segment, as sorted support-point indices
    pub dual: (usize, usize),
    /// primitive direction, oriented from the vertex of `cells.0` to the
    /// vertex of `cells.1`
    pub dir: (i64, i64),
}

/// Unbounded ray dual to a segment on the Newton polygon boundary.
#[derive(Clone, Debug)]
pub struct Ray {
    pub cell: usize,
    pub dual: (usize, usize),
    /// primitive direction, pointing away from the vertex
    pub dir: (i64, i64),
}

/// A non-singular plane tropical curve together with its graph model:
/// one graph vertex per curve vertex plus one leaf per ray; graph edge i
/// is bounded edge i, rays follow.
#[derive(Clone, Debug)]
pub struct TropicalCurve {
    pub poly: TropicalPoly,
    pub subdivision: DualSubdivision,
    /// indexed like `subdivision.cells`
    pub vertices: Vec<Vertex>,
    pub edges: Vec<BoundedEdge>,
    pub rays: Vec<Ray>,
    pub graph: HalfEdgeGraph,
    /// `Some(d)` when the Newton polygon is the standard triangle d-Delta
    pub degree: Option<u32>,
    /// (cell, sorted dual pair) -> graph edge on that side of the cell
    side_edges: BTreeMap<(usize, (usize, usize)), EdgeId>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

fn primitive(d: (i64, i64)) -> (i64, i64) {
    let g = gcd(d.0.abs(), d.1.abs());
    (d.0 / g, d.1 / g)
}

/// counterclockwise angular order of nonzero integer directions,
/// starting from (1, 0)
fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |d: (i64, i64)| u8::from(!(d.1 > 0 || (d.1 == 0 && d.0 > 0)));
    half(a).cmp(&half(b)).then_with(|| {
        let cross = a.0 * b.1 - a.1 * b.0;
        0.cmp(&cross)
    })
}

impl TropicalCurve {
    pub fn new(poly: TropicalPoly) -> Result<Self, TropicalError> {
        let subdivision = dual_subdivision(&poly)?;
        if !subdivision.non_singular {
            return Err(TropicalError::NotNonSingular);
        }
        let points = &subdivision.points;
        let lifts = &subdivision.lifts;

        // vertex of each triangle: the point where its three monomials tie
        let vertices: Vec<Vertex> = subdivision
            .cells
            .iter()
            .enumerate()
            .map(|(cell, tri)| {
                let (p0, p1, p2) = (points[tri[0]], points[tri[1]], points[tri[2]]);
                let a1 = (rat(p1.0 - p0.0), rat(p1.1 - p0.1));
                let a2 = (rat(p2.0 - p0.0), rat(p2.1 - p0.1));
                let b1 = &lifts[tri[0]] - &lifts[tri[1]];
                let b2 = &lifts[tri[0]] - &lifts[tri[2]];
                let det = &a1.0 * &a2.1 - &a1.1 * &a2.0;
                let x = (&b1 * &a2.1 - &b2 * &a1.1) / &det;
                let y = (&a1.0 * &b2 - &a2.0 * &b1) / &det;
                Vertex { cell, pos: (x, y) }
            })
            .collect();

        // classify triangle sides: shared by two cells (bounded edge) or on
        // the polygon boundary (ray)
        let mut side_cells: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (cell, tri) in subdivision.cells.iter().enumerate() {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                side_cells.entry((tri[i], tri[j])).or_default().push(cell);
            }
        }
        let mut edges: Vec<BoundedEdge> = Vec::new();
        let mut rays: Vec<Ray> = Vec::new();
        for (&(p, q), cells) in &side_cells {
            let seg = (points[q].0 - points[p].0, points[q].1 - points[p].1);
            let perp = primitive((-seg.1, seg.0));
            match cells.as_slice() {
                &[c0, c1] => {
                    let (v0, v1) = (&vertices[c0].pos, &vertices[c1].pos);
                    let dot = (&v1.0 - &v0.0) * rat(perp.0) + (&v1.1 - &v0.1) * rat(perp.1);
                    if dot.is_zero() {
                        return Err(TropicalError::DegenerateEdge);
                    }
                    let dir = if dot.is_positive() { perp } else { (-perp.0, -perp.1) };
                    edges.push(BoundedEdge { cells: (c0, c1), dual: (p, q), dir });
                }
                &[c0] => {
                    // the third monomial must grow along the ray (min-plus)
                    let r = subdivision.cells[c0]
                        .iter()
                        .copied()
                        .find(|&i| i != p && i != q)
                        .expect("triangle has a third point");
                    let side = (points[r].0 - points[p].0) * perp.0
                        + (points[r].1 - points[p].1) * perp.1;
                    let dir = if side > 0 { perp } else { (-perp.0, -perp.1) };
                    rays.push(Ray { cell: c0, dual: (p, q), dir });
                }
                other => unreachable!("side shared by {} cells", other.len()),
            }
        }

        // graph: curve vertices, then one leaf per ray; bounded edges first
        let n_cells = subdivision.cells.len() as u32;
        let mut pairs: Vec<(u32, u32)> = edges
            .iter()
            .map(|e| (e.cells.0 as u32, e.cells.1 as u32))
            .collect();
        pairs.extend(
            rays.iter()
                .enumerate()
                .map(|(r, ray)| (ray.cell as u32, n_cells + r as u32)),
        );
        // planar rotation from the exact embedding
        let mut outgoing: BTreeMap<VertexId, Vec<((i64, i64), HalfEdgeId)>> = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            outgoing
                .entry(VertexId(e.cells.0 as u32))
                .or_default()
                .push((e.dir, HalfEdgeId(2 * i as u32)));
            outgoing
                .entry(VertexId(e.cells.1 as u32))
                .or_default()
                .push(((-e.dir.0, -e.dir.1), HalfEdgeId(2 * i as u32 + 1)));
        }
        for (r, ray) in rays.iter().enumerate() {
            let i = edges.len() + r;
            outgoing
                .entry(VertexId(ray.cell as u32))
                .or_default()
                .push((ray.dir, HalfEdgeId(2 * i as u32)));
            outgoing
                .entry(VertexId(n_cells + r as u32))
                .or_default()
                .push(((-ray.dir.0, -ray.dir.1), HalfEdgeId(2 * i as u32 + 1)));
        }
        let rotation: Rotation = outgoing
            .into_iter()
            .map(|(v, mut list)| {
                list.sort_by(|a, b| angle_cmp(a.0, b.0));
                (v, list.into_iter().map(|(_, h)| h).collect())
            })
            .collect();
        let graph = HalfEdgeGraph::from_edge_list(n_cells + rays.len() as u32, &pairs)
            .expect("curve graph is well-formed")
            .with_rotation(rotation)
            .expect("rotation covers every vertex");

        let mut side_edges = BTreeMap::new();
        for (i, e) in edges.iter().enumerate() {
            side_edges.insert((e.cells.0, e.dual), EdgeId(i));
            side_edges.insert((e.cells.1, e.dual), EdgeId(i));
        }
        for (r, ray) in rays.iter().enumerate() {
            side_edges.insert((ray.cell, ray.dual), EdgeId(edges.len() + r));
        }

        let degree = detect_degree(points);
        Ok(TropicalCurve {
            poly,
            subdivision,
            vertices,
            edges,
            rays,
            graph,
            degree,
            side_edges,
        })
    }

    /// genus = number of interior lattice points of the Newton polygon
    /// (all of them carry support points in the non-singular case)
    pub fn genus(&self) -> usize {
        self.subdivision.interior_points().len()
    }

    pub fn bounded_edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    /// graph edge dual to the given side of a cell
    pub fn side_edge(&self, cell: usize, p: usize, q: usize) -> Option<EdgeId> {
        self.side_edges.get(&(cell, (p.min(q), p.max(q)))).copied()
    }

    /// direction parities (x_e mod 2, y_e mod 2) of a bounded edge
    pub fn edge_parity(&self, e: EdgeId) -> Result<(bool, bool), TropicalError> {
        let be = self.edges.get(e.0).ok_or(TropicalError::UnknownEdge(e.0))?;
        Ok((be.dir.0.rem_euclid(2) == 1, be.dir.1.rem_euclid(2) == 1))
    }

    fn check_bounded(&self, t: &BTreeSet<EdgeId>) -> Result<(), TropicalError> {
        match t.iter().find(|e| e.0 >= self.edges.len()) {
            Some(e) => Err(TropicalError::UnknownEdge(e.0)),
            None => Ok(()),
        }
    }

    /// A twist set is admissible when the direction parities of its edges
    /// sum to zero around every cycle.
    pub fn is_twist_admissible(&self, t: &BTreeSet<EdgeId>) -> Result<bool, TropicalError> {
        self.check_bounded(t)?;
        let cb = cycle_basis(&self.graph);
        for cycle in &cb.cycles {
            let (mut x, mut y) = (false, false);
            for e in cycle.iter().filter(|e| t.contains(e)) {
                let (px, py) = self.edge_parity(*e)?;
                x ^= px;
                y ^= py;
            }
            if x || y {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Maximality criterion for an admissible twist set: every cycle meets
    /// it in an even number of edges, and every twisted edge is a bridge or
    /// disconnects the graph together with another twisted edge.
    pub fn is_haas_maximal(&self, t: &BTreeSet<EdgeId>) -> Result<bool, TropicalError> {
        if !self.is_twist_admissible(t)? {
            return Err(TropicalError::NotTwistAdmissible);
        }
        let cb = cycle_basis(&self.graph);
        for cycle in &cb.cycles {
            if cycle.iter().filter(|e| t.contains(e)).count() % 2 != 0 {
                return Ok(false);
            }
        }
        let bridges = self.graph.bridges();
        for &e in t {
            if bridges.contains(&e) {
                continue;
            }
            let paired = t.iter().any(|&f| {
                f != e && !self.graph.connected_without(&BTreeSet::from([e, f]))
            });
            if !paired {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The twist set as a vector in the coordinates of the curve graph
    /// (one per bounded edge, labelled "e{i}").
    pub fn twist_vector(&self, t: &BTreeSet<EdgeId>) -> Result<Gf2Vector, TropicalError> {
        self.check_bounded(t)?;
        let basis = direction_basis(&self.graph, &GraphInvolution::identity());
        Ok(basis
            .twist_from_edges(t.iter().copied())
            .expect("bounded edges are twist coordinates"))
    }
}

fn detect_degree(points: &[(i64, i64)]) -> Option<u32> {
    let d = points.iter().map(|p| p.0 + p.1).max()?;
    let hull: BTreeSet<(i64, i64)> = convex_hull(points).into_iter().collect();
    (hull == BTreeSet::from([(0, 0), (d, 0), (0, d)])).then_some(d as u32)
}

#[cfg(test)]
mod tests {
    use super::super::parse_poly;
    use super::super::subdivision::standard_poly;
    use super::*;
    use crate::wspace::w_kernel;

    fn line() -> TropicalCurve {
        TropicalCurve::new(parse_poly("0 + 0*x + 0*y").unwrap()).unwrap()
    }

    #[test]
    fn line_geometry() {
        let c = line();
        assert_eq!(c.degree, Some(1));
        assert_eq!(c.genus(), 0);
        assert_eq!(c.vertices.len(), 1);
        assert_eq!(c.vertices[0].pos, (rat(0), rat(0)));
        assert!(c.edges.is_empty());
        let dirs: BTreeSet<(i64, i64)> = c.rays.iter().map(|r| r.dir).collect();
        assert_eq!(dirs, BTreeSet::from([(1, 0), (0, 1), (-1, -1)]));
        assert_eq!(c.graph.vertices().len(), 4);
        assert_eq!(c.graph.valency(VertexId(0)), 3);
    }

    #[test]
    fn conic_geometry() {
        let c = TropicalCurve::new(standard_poly(2)).unwrap();
        assert_eq!(c.degree, Some(2));
        assert_eq!(c.genus(), 0);
        assert_eq!(c.vertices.len(), 4);
        assert_eq!(c.edges.len(), 3);
        assert_eq!(c.rays.len(), 6);
        assert_eq!(c.graph.genus(), 0);
    }

    #[test]
    fn cubic_geometry() {
        let c = TropicalCurve::new(standard_poly(3)).unwrap();
        assert_eq!(c.degree, Some(3));
        assert_eq!(c.genus(), 1);
        assert_eq!(c.vertices.len(), 9);
        assert_eq!(c.edges.len(), 9);
        assert_eq!(c.rays.len(), 9);
        assert_eq!(c.graph.genus(), 1);
    }

    #[test]
    fn vertices_are_balanced() {
        for d in 1..=4 {
            let c = TropicalCurve::new(standard_poly(d)).unwrap();
            let mut sums = vec![(0i64, 0i64); c.vertices.len()];
            for e in &c.edges {
                sums[e.cells.0].0 += e.dir.0;
                sums[e.cells.0].1 += e.dir.1;
                sums[e.cells.1].0 -= e.dir.0;
                sums[e.cells.1].1 -= e.dir.1;
            }
            for r in &c.rays {
                sums[r.cell].0 += r.dir.0;
                sums[r.cell].1 += r.dir.1;
            }
            assert!(sums.iter().all(|&s| s == (0, 0)), "degree {d}");
        }
    }

    #[test]
    fn quadrilateral_newton_polygon_has_no_degree() {
        let c = TropicalCurve::new(parse_poly("1 + 0*x + 0*y + 1*x*y").unwrap()).unwrap();
        assert_eq!(c.degree, None);
        assert_eq!(c.edges.len(), 1);
        assert_eq!(c.rays.len(), 4);
    }

    #[test]
    fn singular_polynomial_is_rejected() {
        let p = parse_poly("0 + 0*x + 0*y + 0*x*y").unwrap();
        assert!(matches!(
            TropicalCurve::new(p),
            Err(TropicalError::NotNonSingular)
        ));
    }

    #[test]
    fn side_edges_cover_every_cell_side() {
        let c = TropicalCurve::new(standard_poly(3)).unwrap();
        for (cell, tri) in c.subdivision.cells.iter().enumerate() {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                assert!(c.side_edge(cell, tri[i], tri[j]).is_some());
            }
        }
        assert_eq!(c.side_edges.len(), 3 * c.subdivision.cells.len());
    }

    #[test]
    fn empty_twist_set_is_admissible_and_maximal() {
        let c = TropicalCurve::new(standard_poly(3)).unwrap();
        let t = BTreeSet::new();
        assert!(c.is_twist_admissible(&t).unwrap());
        assert!(c.is_haas_maximal(&t).unwrap());
    }

    #[test]
    fn unknown_edge_is_rejected() {
        let c = line();
        let t = BTreeSet::from([EdgeId(0)]);
        assert_eq!(
            c.is_twist_admissible(&t),
            Err(TropicalError::UnknownEdge(0))
        );
    }

    #[test]
    fn haas_criterion_matches_twist_space_membership() {
        for poly in [standard_poly(2), standard_poly(3)] {
            let c = TropicalCurve::new(poly).unwrap();
            let w = w_kernel(&c.graph, &GraphInvolution::identity());
            let k = c.edges.len();
            for bits in 0..1u64 << k {
                let t: BTreeSet<EdgeId> =
                    (0..k).filter(|i| bits >> i & 1 == 1).map(EdgeId).collect();
                if !c.is_twist_admissible(&t).unwrap() {
                    assert!(matches!(
                        c.is_haas_maximal(&t),
                        Err(TropicalError::NotTwistAdmissible)
                    ));
                    continue;
                }
                let v = c.twist_vector(&t).unwrap();
                assert_eq!(
                    c.is_haas_maximal(&t).unwrap(),
                    w.in_span(&v).unwrap(),
                    "degree {:?} bits {bits:b}",
                    c.degree
                );
            }
        }
    }
}
