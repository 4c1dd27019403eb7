//! Sign distributions on the support and their correspondence with twist
//! sets: a distribution is encoded relative to the reference (Harnack)
//! distribution by one affine-linear modification per cell, and the twist
//! of an edge is the disagreement of the modifications across it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::EdgeId;

use super::{TropicalCurve, TropicalError};

pub type Sign = i8;

/// sign at each support point, +1 or -1
pub type SignDistribution = BTreeMap<(u32, u32), Sign>;

/// The reference distribution: +1 exactly at the points with both
/// coordinates even.
pub fn harnack_signs(support: impl IntoIterator<Item = (u32, u32)>) -> SignDistribution {
    support
        .into_iter()
        .map(|(i, j)| ((i, j), if i % 2 == 0 && j % 2 == 0 { 1 } else { -1 }))
        .collect()
}

fn point_of(c: &TropicalCurve, idx: usize) -> (u32, u32) {
    let (x, y) = c.subdivision.points[idx];
    (x as u32, y as u32)
}

/// Per-cell affine modification (a, b, c) over GF(2): the unique solution
/// of a*px + b*py + c = f(p) on the three cell points.
fn solve_cell(points: [(u32, u32); 3], f: [bool; 3]) -> (bool, bool, bool) {
    for bits in 0..8u8 {
        let (a, b, c) = (bits & 1 != 0, bits & 2 != 0, bits & 4 != 0);
        let ok = (0..3).all(|k| {
            let (px, py) = points[k];
            (a & (px % 2 == 1)) ^ (b & (py % 2 == 1)) ^ c == f[k]
        });
        if ok {
            return (a, b, c);
        }
    }
    unreachable!("unimodular cells have affinely independent point parities")
}

/// The twist set of a sign distribution: per cell, express the deviation
/// from the reference distribution as an affine modification; an edge is
/// twisted when the modifications of its two cells differ.
pub fn signs_to_twists(
    c: &TropicalCurve,
    nu: &SignDistribution,
) -> Result<BTreeSet<EdgeId>, TropicalError> {
    let reference = harnack_signs(c.poly.support());
    let mods: Vec<(bool, bool)> = c
        .subdivision
        .cells
        .iter()
        .map(|tri| {
            let mut points = [(0, 0); 3];
            let mut f = [false; 3];
            for k in 0..3 {
                let p = point_of(c, tri[k]);
                let s = *nu
                    .get(&p)
                    .ok_or(TropicalError::MissingSign(p.0, p.1))?;
                points[k] = p;
                f[k] = (s < 0) != (reference[&p] < 0);
            }
            let (a, b, _) = solve_cell(points, f);
            Ok((a, b))
        })
        .collect::<Result<_, TropicalError>>()?;
    Ok(c
        .bounded_edge_ids()
        .filter(|e| {
            let (c0, c1) = c.edges[e.0].cells;
            mods[c0] != mods[c1]
        })
        .collect())
}

/// A sign distribution realizing the given admissible twist set: propagate
/// the per-cell modifications from the first cell, then apply them to the
/// reference distribution.
pub fn twists_to_signs(
    c: &TropicalCurve,
    t: &BTreeSet<EdgeId>,
) -> Result<SignDistribution, TropicalError> {
    if let Some(e) = t.iter().find(|e| e.0 >= c.edges.len()) {
        return Err(TropicalError::UnknownEdge(e.0));
    }
    // adjacency of cells through bounded edges
    let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); c.subdivision.cells.len()];
    for e in c.bounded_edge_ids() {
        let (c0, c1) = c.edges[e.0].cells;
        adj[c0].push((c1, e));
        adj[c1].push((c0, e));
    }
    let mut mods: Vec<Option<(bool, bool, bool)>> = vec![None; adj.len()];
    mods[0] = Some((false, false, false));
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let (a, b, cc) = mods[u].expect("queued cells are assigned");
        for &(v, e) in &adj[u] {
            let mut next = (a, b, cc);
            if t.contains(&e) {
                let (px, py) = c.edge_parity(e)?;
                next.0 ^= px;
                next.1 ^= py;
                // shift the constant so the values agree on the shared
                // points (equivalent for both, as the twist parity is
                // perpendicular to the dual segment)
                let (qx, qy) = point_of(c, c.edges[e.0].dual.0);
                next.2 ^= (px & (qx % 2 == 1)) ^ (py & (qy % 2 == 1));
            }
            match mods[v] {
                None => {
                    mods[v] = Some(next);
                    queue.push_back(v);
                }
                Some(prev) if prev != next => {
                    return Err(TropicalError::NotTwistAdmissible);
                }
                Some(_) => {}
            }
        }
    }
    // apply the modifications; cells sharing a point must agree on its sign
    let reference = harnack_signs(c.poly.support());
    let mut nu = SignDistribution::new();
    for (cell, tri) in c.subdivision.cells.iter().enumerate() {
        let (a, b, cc) = mods[cell].expect("curve graphs are connected");
        for &idx in tri {
            let p = point_of(c, idx);
            let flip = (a & (p.0 % 2 == 1)) ^ (b & (p.1 % 2 == 1)) ^ cc;
            let s = if flip { -reference[&p] } else { reference[&p] };
            match nu.insert(p, s) {
                Some(prev) if prev != s => return Err(TropicalError::NotTwistAdmissible),
                _ => {}
            }
        }
    }
    Ok(nu)
}
