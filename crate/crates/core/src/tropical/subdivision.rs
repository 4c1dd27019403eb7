//! Regular subdivision of the Newton polygon induced by the lower convex
//! hull of the lifted support points (min-plus convention), in exact
//! rational arithmetic.

use std::collections::BTreeSet;

use num::rational::BigRational;
use num::{BigInt, Signed, Zero};

use super::{TropicalError, TropicalPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSubdivision {
    /// support points, in the polynomial's term order
    pub points: Vec<(i64, i64)>,
    pub lifts: Vec<BigRational>,
    /// cells as sorted index lists into `points`; every lower-hull facet
    /// lists all its tied points
    pub cells: Vec<Vec<usize>>,
    /// all cells are triangles of Euclidean area 1/2
    pub non_singular: bool,
}

pub(crate) fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

impl DualSubdivision {
    /// twice the Euclidean area of a cell (its convex hull)
    pub fn cell_area2(&self, cell: &[usize]) -> BigInt {
        let hull = convex_hull(&cell.iter().map(|&i| self.points[i]).collect::<Vec<_>>());
        BigInt::from(shoelace2(&hull).abs())
    }

    /// twice the area of the Newton polygon
    pub fn polygon_area2(&self) -> BigInt {
        BigInt::from(shoelace2(&convex_hull(&self.points)).abs())
    }

    /// support points strictly inside the Newton polygon
    pub fn interior_points(&self) -> Vec<usize> {
        let hull = convex_hull(&self.points);
        (0..self.points.len())
            .filter(|&i| {
                let p = self.points[i];
                hull.iter().enumerate().all(|(k, &a)| {
                    let b = hull[(k + 1) % hull.len()];
                    cross(a, b, p) > 0
                })
            })
            .collect()
    }
}

fn shoelace2(hull: &[(i64, i64)]) -> i64 {
    let n = hull.len();
    (0..n)
        .map(|i| {
            let (x0, y0) = hull[i];
            let (x1, y1) = hull[(i + 1) % n];
            x0 * y1 - x1 * y0
        })
        .sum()
}

/// counterclockwise convex hull (strict: no collinear points kept)
pub(crate) fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Cells of the lower-hull subdivision: for every non-collinear point
/// triple, fit the plane through the three lifted points; a facet is a
/// plane below all lifts, its cell the set of tied points.
pub fn dual_subdivision(poly: &TropicalPoly) -> Result<DualSubdivision, TropicalError> {
    let points: Vec<(i64, i64)> = poly
        .terms()
        .keys()
        .map(|&(i, j)| (i as i64, j as i64))
        .collect();
    let lifts: Vec<BigRational> = poly.terms().values().cloned().collect();
    let n = points.len();
    if convex_hull(&points).len() < 3 {
        return Err(TropicalError::DegenerateSupport);
    }
    let mut cells: BTreeSet<Vec<usize>> = BTreeSet::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let det = cross(points[a], points[b], points[c]);
                if det == 0 {
                    continue;
                }
                // plane z = alpha x + beta y + gamma through the lifts of a, b, c
                let (pa, pb, pc) = (points[a], points[b], points[c]);
                let det_r = BigRational::from_integer(det.into());
                let (za, zb, zc) = (&lifts[a], &lifts[b], &lifts[c]);
                let r = |v: i64| BigRational::from_integer(v.into());
                let alpha = ((zb - za) * (r(pc.1) - r(pa.1)) - (zc - za) * (r(pb.1) - r(pa.1)))
                    / &det_r;
                let beta = ((zc - za) * (r(pb.0) - r(pa.0)) - (zb - za) * (r(pc.0) - r(pa.0)))
                    / &det_r;
                let gamma = za - &alpha * r(pa.0) - &beta * r(pa.1);
                let mut tied = Vec::new();
                let mut lower = true;
                for i in 0..n {
                    let plane = &alpha * r(points[i].0) + &beta * r(points[i].1) + &gamma;
                    let diff = &lifts[i] - plane;
                    if diff.is_negative() {
                        lower = false;
                        break;
                    }
                    if diff.is_zero() {
                        tied.push(i);
                    }
                }
                if lower {
                    cells.insert(tied);
                }
            }
        }
    }
    let cells: Vec<Vec<usize>> = cells.into_iter().collect();
    let sub = DualSubdivision { points, lifts, cells, non_singular: false };
    let non_singular = sub
        .cells
        .iter()
        .all(|cell| cell.len() == 3 && sub.cell_area2(cell) == BigInt::from(1));
    Ok(DualSubdivision { non_singular, ..sub })
}

/// The standard lift b_ij = i^2 + i j + j^2 over the degree-d triangle,
/// inducing the unimodular triangulation of d-Delta for every d.
pub fn standard_poly(d: u32) -> TropicalPoly {
    TropicalPoly::from_terms((0..=d).flat_map(|i| {
        (0..=d - i).map(move |j| {
            (
                (i, j),
                BigRational::from_integer(BigInt::from(i * i + i * j + j * j)),
            )
        })
    }))
    .expect("distinct support points")
}
