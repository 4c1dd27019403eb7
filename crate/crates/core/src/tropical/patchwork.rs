//! Combinatorial patchworking: one arc per cell and quadrant where the
//! signs are not constant, glued across dual edges quadrant by quadrant
//! (the twists are already absorbed into the sign distribution).

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::EdgeId;

use super::signs::twists_to_signs;
use super::{TropicalCurve, TropicalError};

pub const QUADRANTS: [(i8, i8); 4] = [(1, 1), (-1, 1), (1, -1), (-1, -1)];

/// An arc of the patchworked curve: it crosses the two cell sides adjacent
/// to the support point whose sign differs from the other two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub cell: usize,
    pub quadrant: (i8, i8),
    /// the support point (index) isolated by its sign in this quadrant
    pub odd: usize,
    /// the two graph edges dual to the crossed cell sides
    pub slots: [EdgeId; 2],
}

/// All arcs of a patchworking; each cell carries exactly one arc in each
/// of exactly three quadrants.
#[derive(Clone, Debug)]
pub struct ArcSet {
    pub arcs: Vec<Arc>,
    by_cell_quadrant: BTreeMap<(usize, (i8, i8)), usize>,
}

impl ArcSet {
    pub fn arc_at(&self, cell: usize, quadrant: (i8, i8)) -> Option<&Arc> {
        self.by_cell_quadrant
            .get(&(cell, quadrant))
            .map(|&i| &self.arcs[i])
    }

    fn index_at(&self, cell: usize, quadrant: (i8, i8)) -> Option<usize> {
        self.by_cell_quadrant.get(&(cell, quadrant)).copied()
    }
}

pub fn patchwork_arcs(
    c: &TropicalCurve,
    t: &BTreeSet<EdgeId>,
) -> Result<ArcSet, TropicalError> {
    let nu = twists_to_signs(c, t)?;
    let mut arcs = Vec::new();
    let mut by_cell_quadrant = BTreeMap::new();
    for (cell, tri) in c.subdivision.cells.iter().enumerate() {
        let pts: Vec<(u32, u32)> = tri
            .iter()
            .map(|&i| {
                let (x, y) = c.subdivision.points[i];
                (x as u32, y as u32)
            })
            .collect();
        for quadrant in QUADRANTS {
            let signs: Vec<i8> = pts
                .iter()
                .map(|&(px, py)| {
                    let flip = (quadrant.0 < 0 && px % 2 == 1)
                        ^ (quadrant.1 < 0 && py % 2 == 1);
                    if flip {
                        -nu[&(px, py)]
                    } else {
                        nu[&(px, py)]
                    }
                })
                .collect();
            let Some(odd_k) = (0..3).find(|&k| {
                signs[k] != signs[(k + 1) % 3] && signs[k] != signs[(k + 2) % 3]
            }) else {
                continue; // constant signs: no arc in this quadrant
            };
            let others: Vec<usize> = (0..3).filter(|&k| k != odd_k).collect();
            let slot = |k: usize| {
                c.side_edge(cell, tri[odd_k], tri[k])
                    .expect("every cell side has a dual edge")
            };
            by_cell_quadrant.insert((cell, quadrant), arcs.len());
            arcs.push(Arc {
                cell,
                quadrant,
                odd: tri[odd_k],
                slots: [slot(others[0]), slot(others[1])],
            });
        }
    }
    Ok(ArcSet { arcs, by_cell_quadrant })
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }

    fn count(&mut self, n: usize) -> usize {
        (0..n).map(|x| self.find(x)).collect::<BTreeSet<_>>().len()
    }
}

fn glue_bounded(c: &TropicalCurve, arcs: &ArcSet, dsu: &mut Dsu) {
    for e in c.bounded_edge_ids() {
        let (c0, c1) = c.edges[e.0].cells;
        for q in QUADRANTS {
            let a0 = arcs.index_at(c0, q).filter(|&i| arcs.arcs[i].slots.contains(&e));
            let a1 = arcs.index_at(c1, q).filter(|&i| arcs.arcs[i].slots.contains(&e));
            match (a0, a1) {
                (Some(i0), Some(i1)) => dsu.union(i0, i1),
                (None, None) => {}
                _ => unreachable!("a crossed side is crossed from both cells"),
            }
        }
    }
}

/// Connected strands of the patchworked curve in the four quadrants, with
/// the ray ends left open.
pub fn count_components(c: &TropicalCurve, arcs: &ArcSet) -> usize {
    let mut dsu = Dsu::new(arcs.arcs.len());
    glue_bounded(c, arcs, &mut dsu);
    dsu.count(arcs.arcs.len())
}

/// Components after also joining the two strand ends of every ray (the
/// projective closure of the patchworked curve).
pub fn compact_component_count(c: &TropicalCurve, arcs: &ArcSet) -> usize {
    let mut dsu = Dsu::new(arcs.arcs.len());
    glue_bounded(c, arcs, &mut dsu);
    for (r, ray) in c.rays.iter().enumerate() {
        let e = EdgeId(c.edges.len() + r);
        let ends: Vec<usize> = QUADRANTS
            .iter()
            .filter_map(|&q| {
                arcs.index_at(ray.cell, q)
                    .filter(|&i| arcs.arcs[i].slots.contains(&e))
            })
            .collect();
        assert_eq!(ends.len(), 2, "a ray side is crossed in exactly two quadrants");
        dsu.union(ends[0], ends[1]);
    }
    dsu.count(arcs.arcs.len())
}

#[cfg(test)]
mod tests {
    use super::super::subdivision::standard_poly;
    use super::super::TropicalCurve;
    use super::*;
    use crate::graph::GraphInvolution;
    use crate::realpart::trace_real_part;
    use crate::wspace::w_kernel;

    fn curve(d: u32) -> TropicalCurve {
        TropicalCurve::new(standard_poly(d)).unwrap()
    }

    #[test]
    fn line_strands_and_closure() {
        let c = curve(1);
        let arcs = patchwork_arcs(&c, &BTreeSet::new()).unwrap();
        assert_eq!(arcs.arcs.len(), 3);
        let quadrants: BTreeSet<(i8, i8)> =
            arcs.arcs.iter().map(|a| a.quadrant).collect();
        assert_eq!(quadrants.len(), 3);
        assert!(!quadrants.contains(&(-1, -1)));
        assert_eq!(count_components(&c, &arcs), 3);
        assert_eq!(compact_component_count(&c, &arcs), 1);
    }

    #[test]
    fn each_cell_has_three_arcs() {
        for d in 1..=4 {
            let c = curve(d);
            let arcs = patchwork_arcs(&c, &BTreeSet::new()).unwrap();
            assert_eq!(arcs.arcs.len(), 3 * c.subdivision.cells.len(), "degree {d}");
        }
    }

    #[test]
    fn untwisted_standard_curves_are_maximal() {
        for (d, expected) in [(1u32, 1usize), (2, 1), (3, 2), (6, 11)] {
            let c = curve(d);
            let t = BTreeSet::new();
            assert!(c.is_haas_maximal(&t).unwrap(), "degree {d}");
            let arcs = patchwork_arcs(&c, &t).unwrap();
            let count = compact_component_count(&c, &arcs);
            assert_eq!(count, expected, "degree {d}");
            assert_eq!(count, c.genus() + 1, "degree {d}");
        }
    }

    #[test]
    fn closure_count_matches_the_graph_tracer() {
        let id = GraphInvolution::identity();
        for d in [2u32, 3] {
            let c = curve(d);
            let k = c.edges.len();
            for bits in 0..1u64 << k {
                let t: BTreeSet<EdgeId> =
                    (0..k).filter(|i| bits >> i & 1 == 1).map(EdgeId).collect();
                if !c.is_twist_admissible(&t).unwrap() {
                    continue;
                }
                let arcs = patchwork_arcs(&c, &t).unwrap();
                let compact = compact_component_count(&c, &arcs);
                let report =
                    trace_real_part(&c.graph, &id, &c.twist_vector(&t).unwrap()).unwrap();
                assert_eq!(compact, report.count, "degree {d} bits {bits:b}");
                assert!(compact <= c.genus() + 1, "degree {d}");
            }
        }
    }

    #[test]
    fn maximality_criteria_agree_three_ways() {
        let id = GraphInvolution::identity();
        for d in [1u32, 2, 3] {
            let c = curve(d);
            let w = w_kernel(&c.graph, &id);
            let k = c.edges.len();
            for bits in 0..1u64 << k {
                let t: BTreeSet<EdgeId> =
                    (0..k).filter(|i| bits >> i & 1 == 1).map(EdgeId).collect();
                if !c.is_twist_admissible(&t).unwrap() {
                    continue;
                }
                let haas = c.is_haas_maximal(&t).unwrap();
                let v = c.twist_vector(&t).unwrap();
                let in_w = w.in_span(&v).unwrap();
                let arcs = patchwork_arcs(&c, &t).unwrap();
                let patchwork_maximal =
                    compact_component_count(&c, &arcs) == c.genus() + 1;
                assert_eq!(haas, in_w, "degree {d} bits {bits:b}");
                assert_eq!(haas, patchwork_maximal, "degree {d} bits {bits:b}");
            }
        }
    }
}
