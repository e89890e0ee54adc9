use std::collections::BTreeSet;

use num_integer::Integer;

use super::MonomialIdeal;
use crate::error::{Error, Result};

/// Largest dimension for which facets are enumerated.
pub const MAX_NEWTON_DIM: usize = 4;

/// The half-space `⟨normal, x⟩ >= offset`. Normals are non-negative with
/// gcd one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<u64>,
    pub offset: u64,
}

impl Facet {
    fn value(&self, point: &[i64]) -> i128 {
        self.normal
            .iter()
            .zip(point)
            .map(|(&v, &p)| v as i128 * p as i128)
            .sum()
    }

    /// The point satisfies the inequality scaled by `scale`.
    pub fn holds(&self, point: &[i64], scale: u64, strict: bool) -> bool {
        let lhs = self.value(point);
        let rhs = scale as i128 * self.offset as i128;
        if strict {
            lhs > rhs
        } else {
            lhs >= rhs
        }
    }
}

/// `conv{A_i} + R^d_{>=0}` as an irredundant list of facets, together with
/// its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    dim: usize,
    facets: Vec<Facet>,
    vertices: Vec<Vec<u32>>,
}

impl NewtonPolyhedron {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sorted by descending offset, then descending normal.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Descending lexicographic order.
    pub fn vertices(&self) -> &[Vec<u32>] {
        &self.vertices
    }
}

/// Facets of the Newton polyhedron, by brute force over hyperplanes through
/// `d` of the generator points and coordinate rays (at least one point).
pub fn newton_polyhedron(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    let d = ideal.dim();
    if d > MAX_NEWTON_DIM {
        return Err(Error::DimensionBound {
            max: MAX_NEWTON_DIM,
            found: d,
        });
    }
    let points: Vec<Vec<i64>> = ideal
        .exponents()
        .iter()
        .map(|e| e.iter().map(|&x| x as i64).collect())
        .collect();
    let n = points.len();
    let mut facets = BTreeSet::new();
    let mut chosen = Vec::with_capacity(d);
    // objects 0..n are points, n..n+d are rays; the first chosen is a point
    for first in 0..n {
        chosen.clear();
        chosen.push(first);
        enumerate(first + 1, n + d, d, &mut chosen, &mut |subset| {
            if let Some(f) = hyperplane(&points, subset, d) {
                facets.insert(f);
            }
        });
    }
    let mut facets: Vec<Facet> = facets.into_iter().collect();
    facets.sort_by(|a, b| b.offset.cmp(&a.offset).then_with(|| b.normal.cmp(&a.normal)));

    let vertices = ideal
        .exponents()
        .iter()
        .zip(&points)
        .filter(|(_, p)| {
            let tight: Vec<Vec<i128>> = facets
                .iter()
                .filter(|f| f.value(p) == f.offset as i128)
                .map(|f| f.normal.iter().map(|&v| v as i128).collect())
                .collect();
            rank(tight) == d
        })
        .map(|(e, _)| e.clone())
        .collect();
    Ok(NewtonPolyhedron {
        dim: d,
        facets,
        vertices,
    })
}

fn enumerate(start: usize, total: usize, size: usize, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if chosen.len() == size {
        visit(chosen);
        return;
    }
    for k in start..total {
        chosen.push(k);
        enumerate(k + 1, total, size, chosen, visit);
        chosen.pop();
    }
}

/// The valid inequality whose boundary contains the chosen objects, if they
/// span a hyperplane and the polyhedron lies on one side of it.
fn hyperplane(points: &[Vec<i64>], subset: &[usize], d: usize) -> Option<Facet> {
    let p0 = &points[subset[0]];
    let rows: Vec<Vec<i128>> = subset[1..]
        .iter()
        .map(|&k| {
            if k < points.len() {
                points[k].iter().zip(p0).map(|(a, b)| (a - b) as i128).collect()
            } else {
                let mut ray = vec![0i128; d];
                ray[k - points.len()] = 1;
                ray
            }
        })
        .collect();
    // null vector of the (d-1) x d matrix by signed maximal minors
    let mut normal: Vec<i128> = (0..d)
        .map(|j| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * det(&minor)
        })
        .collect();
    if normal.iter().all(|&v| v == 0) {
        return None;
    }
    // rays force a non-negative normal
    if normal.iter().all(|&v| v <= 0) {
        normal.iter_mut().for_each(|v| *v = -*v);
    } else if normal.iter().any(|&v| v < 0) {
        return None;
    }
    let value = |p: &[i64]| -> i128 { normal.iter().zip(p).map(|(&v, &x)| v * x as i128).sum() };
    let offset = value(p0);
    if points.iter().any(|p| value(p) < offset) {
        return None;
    }
    let g = normal.iter().fold(0i128, |g, &v| g.gcd(&v));
    Some(Facet {
        normal: normal.iter().map(|&v| (v / g) as u64).collect(),
        offset: (offset / g) as u64,
    })
}

/// Determinant by cofactor expansion; matrices here are at most 3 x 3.
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Rank of an integer matrix by fraction-free elimination.
pub(crate) fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let a = row[c];
            if a == 0 {
                continue;
            }
            for k in 0..ncols {
                row[k] = row[k] * pivot[c] - pivot[k] * a;
            }
            let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

/// `point ∈ scale·P`, or in its interior when `strict`.
pub fn np_contains(poly: &NewtonPolyhedron, point: &[i64], scale: u64, strict: bool) -> Result<bool> {
    if point.len() != poly.dim {
        return Err(Error::DimensionMismatch {
            expected: poly.dim,
            found: point.len(),
        });
    }
    Ok(poly.facets.iter().all(|f| f.holds(point, scale, strict)))
}
