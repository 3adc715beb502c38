//! Monomial ideals of a normal affine semigroup ring `k[Z^d ∩ σ]`.
//!
//! The cone `σ` is given by ray generators; its inequality description is
//! computed once and kept alongside. Newton polyhedra become
//! `conv(generators) + σ` and the pyramid formula for `j` carries over.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dual::{generators_to_inequalities, Facet};
use crate::error::{Error, Result};
use crate::geometry::{rank, to_bigint_vector, Rational};
use crate::multiplicity::j_from_newton;
use crate::newton::{minimal_elements, NewtonData};

/// A full-dimensional pointed rational cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedCone {
    dim: usize,
    rays: Vec<Vec<i64>>,
    inequalities: Vec<Vec<i64>>,
}

impl PointedCone {
    /// Builds the cone generated by `rays`. Each ray is scaled to its primitive
    /// lattice point and rays that are not extremal are discarded.
    pub fn new(rays: &[Vec<i64>]) -> Result<Self> {
        let Some(first) = rays.first() else {
            return Err(Error::Degenerate("cone needs at least one ray".into()));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::Degenerate("zero-dimensional ambient space".into()));
        }
        let mut big = Vec::with_capacity(rays.len());
        for r in rays {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            if r.iter().all(|&x| x == 0) {
                return Err(Error::Degenerate("zero ray".into()));
            }
            big.push(to_bigint_vector(r));
        }
        let as_rows = |v: &[Vec<BigInt>]| -> Vec<Vec<Rational>> {
            v.iter()
                .map(|r| {
                    r.iter()
                        .map(|x| Rational::from_integer(x.clone()))
                        .collect()
                })
                .collect()
        };
        let r = rank(&as_rows(&big));
        if r < dim {
            return Err(Error::ConeNotFullDimensional { rank: r, dim });
        }
        let origin = vec![vec![Rational::zero(); dim]];
        let hull = generators_to_inequalities(&origin, &big).map_err(|_| Error::ConeNotPointed)?;
        // a line in the cone shows up as the apex failing to be a vertex, or as
        // dual inequalities that do not span
        let normals: Vec<Vec<BigInt>> = hull
            .inequalities()
            .iter()
            .map(|h| h.normal.clone())
            .collect();
        if hull.vertices().len() != 1
            || rank(&as_rows(&normals)) < dim
            || hull.inequalities().iter().any(|h| !h.offset.is_zero())
        {
            return Err(Error::ConeNotPointed);
        }
        let to_i64 = |v: &Vec<BigInt>| -> Result<Vec<i64>> {
            v.iter()
                .map(|x| x.to_i64().ok_or(Error::Overflow))
                .collect()
        };
        Ok(Self {
            dim,
            rays: hull.rays().iter().map(to_i64).collect::<Result<_>>()?,
            inequalities: normals.iter().map(to_i64).collect::<Result<_>>()?,
        })
    }

    /// The nonnegative orthant of `R^dim`.
    pub fn orthant(dim: usize) -> Self {
        let e: Vec<Vec<i64>> = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(&e).expect("orthant is pointed and full-dimensional")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Primitive generators of the extremal rays, sorted.
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Primitive inward normals `a` with `σ = {x : <x, a> >= 0}`, sorted.
    pub fn inequalities(&self) -> &[Vec<i64>] {
        &self.inequalities
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.inequalities
            .iter()
            .all(|a| a.iter().zip(p).map(|(x, y)| x * y).sum::<i64>() >= 0)
    }
}

/// A monomial ideal of `k[Z^d ∩ σ]`, held as its minimal generators under the
/// semigroup order `v <= w iff w - v ∈ σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricIdeal {
    cone: PointedCone,
    generators: Vec<Vec<i64>>,
}

impl ToricIdeal {
    pub fn new(cone: PointedCone, generators: Vec<Vec<i64>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        for g in &generators {
            if g.len() != cone.dim() {
                return Err(Error::DimensionMismatch {
                    expected: cone.dim(),
                    found: g.len(),
                });
            }
            if !cone.contains(g) {
                return Err(Error::OutsideCone(g.clone()));
            }
        }
        let mut gens = generators;
        gens.sort();
        gens.dedup();
        let divides = |v: &Vec<i64>, w: &Vec<i64>| {
            let diff: Vec<i64> = w.iter().zip(v).map(|(a, b)| a - b).collect();
            cone.contains(&diff)
        };
        let minimal = gens
            .iter()
            .filter(|w| !gens.iter().any(|v| v != *w && divides(v, w)))
            .cloned()
            .collect();
        Ok(Self {
            cone,
            generators: minimal,
        })
    }

    /// An ideal of the polynomial ring, seen over the orthant.
    pub fn from_orthant(generators: Vec<Vec<i64>>) -> Result<Self> {
        let dim = generators.first().map_or(0, Vec::len);
        if dim == 0 {
            return Err(Error::ZeroIdeal);
        }
        let minimal = minimal_elements(generators);
        Self::new(PointedCone::orthant(dim), minimal)
    }

    pub fn cone(&self) -> &PointedCone {
        &self.cone
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&x| x == 0))
    }
}

/// Newton polyhedron `conv(generators) + σ`.
pub fn toric_newton(ideal: &ToricIdeal) -> Result<NewtonData> {
    let cone = ideal.cone();
    if ideal.is_unit() {
        return Ok(NewtonData::unit(ideal.dim(), cone.inequalities().to_vec()));
    }
    let rays: Vec<Vec<BigInt>> = cone.rays().iter().map(|r| to_bigint_vector(r)).collect();
    NewtonData::from_generators(
        ideal.dim(),
        ideal.generators(),
        &rays,
        cone.inequalities().to_vec(),
    )
}

/// Boundedness read off the normal: `<r, b> > 0` for every ray generator `r`.
pub fn bounded_by_rays(cone: &PointedCone, facet: &Facet) -> bool {
    cone.rays().iter().all(|r| {
        let s: BigInt = r
            .iter()
            .zip(&facet.hyperplane.normal)
            .map(|(x, b)| BigInt::from(*x) * b)
            .sum();
        s.is_positive()
    })
}

/// `j(I) = d! vol(pyr(I))` with the pyramid taken over the bounded facets of
/// `conv(I) = conv(generators) + σ`.
pub fn toric_j_multiplicity(ideal: &ToricIdeal) -> Result<BigInt> {
    j_from_newton(&toric_newton(ideal)?)
}
