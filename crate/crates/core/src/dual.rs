//! Conversion between the generator and inequality descriptions of a rational
//! polyhedron, by incremental double description on the homogenization cone.
//!
//! A polyhedron `P = conv(V) + cone(R)` in dimension `d` is identified with the
//! cone `C` in dimension `d + 1` generated by `(v, 1)` and `(r, 0)`. Facets of
//! `C` are the extreme rays of its dual `{a : <a, g> >= 0}`; a dual ray
//! `(b, -c)` is the half-space `<x, b> >= c`. The dual ray `(0, ..., 0, 1)` is
//! the face at infinity and is not reported as an inequality of `P`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{
    clear_denominators, independent_rows, integer_direction, inverse, nullspace, primitive_part,
    rank, Hyperplane, Rational, RationalVector,
};

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_subset_of(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

fn ip(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn to_rational_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

/// Extreme rays of `{a : <a, g> >= 0 for every g in gens}`.
///
/// The generators must span the whole space, which makes the dual cone pointed;
/// otherwise the rank they do span is returned as the error.
fn dual_extreme_rays(gens: &[Vec<BigInt>]) -> std::result::Result<Vec<Vec<BigInt>>, usize> {
    let dim = gens.first().map_or(0, Vec::len);
    let rational = to_rational_rows(gens);
    let basis = independent_rows(&rational);
    if basis.len() < dim {
        return Err(basis.len());
    }

    // Initial simplicial cone: the columns of the inverse of the basis matrix.
    let square: Vec<Vec<Rational>> = basis.iter().map(|&i| rational[i].clone()).collect();
    let inv = inverse(&square).expect("independent rows form an invertible matrix");
    let mut rays: Vec<(Vec<BigInt>, Bits)> = (0..dim)
        .map(|j| {
            let col: Vec<Rational> = inv.iter().map(|row| row[j].clone()).collect();
            let ray = integer_direction(&col).expect("inverse has no zero column");
            let mut zeros = Bits::new(gens.len());
            for (k, &gi) in basis.iter().enumerate() {
                if k != j {
                    zeros.set(gi);
                }
            }
            (ray, zeros)
        })
        .collect();

    for (k, g) in gens.iter().enumerate() {
        if basis.contains(&k) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|(r, _)| ip(r, g)).collect();
        if values.iter().all(|v| !v.is_negative()) {
            for ((_, z), v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    z.set(k);
                }
            }
            continue;
        }

        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        let mut next: Vec<(Vec<BigInt>, Bits)> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].1.intersect(&rays[q].1);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, (_, z))| t == p || t == q || !common.is_subset_of(z));
                if !adjacent {
                    continue;
                }
                let (sp, sq) = (&values[p], -&values[q]);
                let combined: Vec<BigInt> = rays[p]
                    .0
                    .iter()
                    .zip(&rays[q].0)
                    .map(|(a, b)| sp * b + &sq * a)
                    .collect();
                let ray = primitive_part(&combined).expect("adjacent rays are independent");
                let mut zeros = common;
                zeros.set(k);
                next.push((ray, zeros));
            }
        }
        for (i, (r, mut z)) in rays.into_iter().enumerate() {
            if values[i].is_zero() {
                z.set(k);
                next.push((r, z));
            } else if values[i].is_positive() {
                next.push((r, z));
            }
        }
        rays = next;
    }
    Ok(rays.into_iter().map(|(r, _)| r).collect())
}

/// A rational polyhedron held in both descriptions.
///
/// `inequalities` are irredundant and each reads `<x, normal> >= offset`;
/// `vertices` and `rays` are the extreme generators. All three lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    dim: usize,
    vertices: Vec<RationalVector>,
    rays: Vec<Vec<BigInt>>,
    inequalities: Vec<Hyperplane>,
}

/// A facet together with the generators lying on it. Indices refer to
/// [`Polyhedron::vertices`] and [`Polyhedron::rays`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub hyperplane: Hyperplane,
    pub bounded: bool,
    pub incident_vertices: Vec<usize>,
    pub incident_rays: Vec<usize>,
}

impl Polyhedron {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }

    pub fn inequalities(&self) -> &[Hyperplane] {
        &self.inequalities
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        for h in &self.inequalities {
            if !h.satisfied_by(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// One facet per inequality, classified as bounded when no ray lies on it.
    pub fn facets(&self) -> Vec<Facet> {
        self.inequalities
            .iter()
            .map(|h| {
                let incident_vertices = (0..self.vertices.len())
                    .filter(|&i| h.is_tight(&self.vertices[i]).unwrap_or(false))
                    .collect();
                let incident_rays: Vec<usize> = (0..self.rays.len())
                    .filter(|&i| h.evaluate_direction(&self.rays[i]).is_zero())
                    .collect();
                Facet {
                    hyperplane: h.clone(),
                    bounded: incident_rays.is_empty(),
                    incident_vertices,
                    incident_rays,
                }
            })
            .collect()
    }
}

/// Computes the irredundant inequality description of `conv(verts) + cone(rays)`.
///
/// Input points that are not vertices, and rays that are not extreme, are
/// dropped. A hull that is not full-dimensional is reported as
/// [`Error::NotFullDimensional`].
pub fn generators_to_inequalities(
    verts: &[RationalVector],
    rays: &[Vec<BigInt>],
) -> Result<Polyhedron> {
    let Some(first) = verts.first() else {
        return Err(Error::Degenerate("empty vertex set".into()));
    };
    let dim = first.len();
    if dim == 0 {
        return Err(Error::Degenerate("zero-dimensional ambient space".into()));
    }
    for v in verts {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: v.len(),
            });
        }
    }
    let mut points = verts.to_vec();
    points.sort();
    points.dedup();
    let mut directions = Vec::with_capacity(rays.len());
    for r in rays {
        if r.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: r.len(),
            });
        }
        directions.push(primitive_part(r)?);
    }
    directions.sort();
    directions.dedup();

    let mut gens: Vec<Vec<BigInt>> = Vec::with_capacity(points.len() + directions.len());
    for v in &points {
        let mut h = v.clone();
        h.push(Rational::one());
        gens.push(clear_denominators(&h).0);
    }
    for r in &directions {
        let mut h = r.clone();
        h.push(BigInt::zero());
        gens.push(h);
    }

    let dual = dual_extreme_rays(&gens).map_err(|rank| Error::NotFullDimensional {
        affine_dim: rank.saturating_sub(1),
        dim,
    })?;

    let mut inequalities = Vec::new();
    for a in &dual {
        let normal = a[..dim].to_vec();
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        inequalities.push(Hyperplane::new(normal, Rational::from_integer(-&a[dim]))?);
    }
    inequalities.sort();

    let mut vertices = Vec::new();
    for v in points {
        let tight: Vec<Vec<Rational>> = inequalities
            .iter()
            .filter(|h| h.is_tight(&v).unwrap_or(false))
            .map(|h| {
                h.normal
                    .iter()
                    .map(|x| Rational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        if rank(&tight) == dim {
            vertices.push(v);
        }
    }

    let mut extreme_rays = Vec::new();
    for r in directions {
        let tight: Vec<Vec<BigInt>> = dual
            .iter()
            .filter(|a| ip(&a[..dim], &r).is_zero())
            .cloned()
            .collect();
        if rank(&to_rational_rows(&tight)) == dim {
            extreme_rays.push(r);
        }
    }

    Ok(Polyhedron {
        dim,
        vertices,
        rays: extreme_rays,
        inequalities,
    })
}

/// Vertices of the polytope `{x : <x, b_i> >= c_i}`.
///
/// An infeasible system yields an empty vertex list; a feasible unbounded one
/// is [`Error::Unbounded`].
pub fn inequalities_to_vertices(ineqs: &[Hyperplane], dim: usize) -> Result<Vec<RationalVector>> {
    if dim == 0 {
        return Err(Error::Degenerate("zero-dimensional ambient space".into()));
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(ineqs.len() + 1);
    for h in ineqs {
        if h.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: h.dim(),
            });
        }
        let mut row: Vec<Rational> = h
            .normal
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect();
        row.push(-h.offset.clone());
        rows.push(clear_denominators(&row).0);
    }
    let mut t = vec![BigInt::zero(); dim + 1];
    t[dim] = BigInt::one();
    rows.push(t);

    // Pin down the lineality space so the homogenized cone becomes pointed.
    let lineality = nullspace(&to_rational_rows(&rows), dim + 1);
    for l in &lineality {
        let l = integer_direction(l)?;
        rows.push(l.iter().map(|x| -x).collect());
        rows.push(l);
    }

    let extreme = dual_extreme_rays(&rows).expect("rows span after adding lineality");
    let (finite, infinite): (Vec<_>, Vec<_>) =
        extreme.into_iter().partition(|y| y[dim].is_positive());
    if finite.is_empty() {
        return Ok(Vec::new());
    }
    if !infinite.is_empty() || !lineality.is_empty() {
        return Err(Error::Unbounded);
    }
    let mut vertices: Vec<RationalVector> = finite
        .into_iter()
        .map(|y| {
            y[..dim]
                .iter()
                .map(|x| Rational::new(x.clone(), y[dim].clone()))
                .collect()
        })
        .collect();
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}
