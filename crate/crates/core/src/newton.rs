//! Monomial ideals and their Newton polyhedra.
//!
//! A monomial ideal is stored as its minimal generating exponents. Its Newton
//! polyhedron `conv(I) = conv(generators) + R^d_{>=0}` carries the facet data
//! every other module works from: which facets are bounded, the polytopal
//! complex they form, and the pyramid over that complex from the origin.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dual::{generators_to_inequalities, Facet, Polyhedron};
use crate::error::{Error, Result};
use crate::geometry::{affine_dimension, to_rational_vector, Rational, RationalVector};
use crate::scan;

/// Exponent of a monomial: a point of `Z^d_{>=0}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if let Some((index, &value)) = entries.iter().enumerate().find(|(_, &e)| e < 0) {
            return Err(Error::NegativeExponent { index, value });
        }
        Ok(Self(entries))
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    /// Componentwise `self <= other`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &[i64]) -> bool {
        self.0.iter().zip(other).all(|(a, b)| a <= b)
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for ExponentVector {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

/// Minimal elements of a point set under the componentwise order, sorted.
pub(crate) fn minimal_elements(mut points: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    points.sort();
    points.dedup();
    let dominated = |p: &Vec<i64>, q: &Vec<i64>| p != q && q.iter().zip(p).all(|(a, b)| a <= b);
    points
        .iter()
        .filter(|p| !points.iter().any(|q| dominated(p, q)))
        .cloned()
        .collect()
}

/// A monomial ideal of `k[x_1, ..., x_d]`, held as its minimal generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    dim: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal generated by the given exponents, reducing to a minimal
    /// generating set. The zero ideal (no generators) is rejected.
    pub fn new(dim: usize, generators: Vec<Vec<i64>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        if dim == 0 {
            return Err(Error::Degenerate(
                "polynomial ring needs at least one variable".into(),
            ));
        }
        for (index, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: g.len(),
                });
            }
            if let Some(&value) = g.iter().find(|&&e| e < 0) {
                return Err(Error::NegativeExponent { index, value });
            }
        }
        let generators = minimal_elements(generators)
            .into_iter()
            .map(ExponentVector)
            .collect();
        Ok(Self { dim, generators })
    }

    /// Convenience constructor inferring the dimension from the first generator.
    pub fn from_exponents(generators: &[&[i64]]) -> Result<Self> {
        let dim = generators.first().map_or(0, |g| g.len());
        Self::new(dim, generators.iter().map(|g| g.to_vec()).collect())
    }

    /// The maximal ideal `(x_1, ..., x_d)`.
    pub fn maximal(dim: usize) -> Self {
        let gens = (0..dim)
            .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(dim, gens).expect("maximal ideal is valid")
    }

    pub fn unit(dim: usize) -> Self {
        Self {
            dim,
            generators: vec![ExponentVector::zero(dim)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn exponent_vectors(&self) -> Vec<Vec<i64>> {
        self.generators.iter().map(|g| g.0.clone()).collect()
    }

    /// The ideal is the whole ring (generated by `1`).
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    /// Every variable has a pure power among the generators.
    pub fn is_m_primary(&self) -> bool {
        !self.is_unit()
            && (0..self.dim).all(|i| {
                self.generators
                    .iter()
                    .any(|g| g.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
            })
    }

    /// Membership of the monomial `x^p`.
    pub fn contains(&self, p: &[i64]) -> bool {
        self.generators.iter().any(|g| g.divides(p))
    }

    /// Largest exponent of each variable among the generators.
    pub fn max_exponents(&self) -> Vec<i64> {
        (0..self.dim)
            .map(|i| self.generators.iter().map(|g| g[i]).max().unwrap_or(0))
            .collect()
    }

    /// Product of the two ideals.
    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let sums = self
            .generators
            .iter()
            .flat_map(|a| {
                other
                    .generators
                    .iter()
                    .map(move |b| a.iter().zip(b.iter()).map(|(x, y)| x + y).collect())
            })
            .collect();
        MonomialIdeal::new(self.dim, sums)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let mut wrote = false;
            for (i, &e) in g.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
            if !wrote {
                write!(f, "1")?;
            }
        }
        write!(f, ")")
    }
}

/// `I^n`, reduced to minimal generators. `I^0` is the unit ideal.
pub fn power(ideal: &MonomialIdeal, n: u32) -> MonomialIdeal {
    let mut acc = MonomialIdeal::unit(ideal.dim());
    for _ in 0..n {
        acc = acc.product(ideal).expect("same dimension");
    }
    acc
}

/// A facet inequality `<x, normal> >= num / den` in machine integers, for lattice scans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFacet {
    pub normal: Vec<i64>,
    pub offset_num: i64,
    pub offset_den: i64,
    pub bounded: bool,
}

impl LatticeFacet {
    fn from_facet(f: &Facet) -> Result<Self> {
        let normal = f
            .hyperplane
            .normal
            .iter()
            .map(|b| b.to_i64().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        let offset_num = f
            .hyperplane
            .offset
            .numer()
            .to_i64()
            .ok_or(Error::Overflow)?;
        let offset_den = f
            .hyperplane
            .offset
            .denom()
            .to_i64()
            .ok_or(Error::Overflow)?;
        Ok(Self {
            normal,
            offset_num,
            offset_den,
            bounded: f.bounded,
        })
    }

    #[inline]
    pub fn evaluate(&self, p: &[i64]) -> i128 {
        self.normal
            .iter()
            .zip(p)
            .map(|(&b, &x)| i128::from(b) * i128::from(x))
            .sum()
    }

    /// `<p, normal> >= scale * offset`: the inequality of `scale * conv(I)`.
    #[inline]
    pub fn holds_at_scale(&self, p: &[i64], scale: i64) -> bool {
        self.evaluate(p) * i128::from(self.offset_den)
            >= i128::from(scale) * i128::from(self.offset_num)
    }
}

/// Dual description of a Newton polyhedron with its facet classification.
///
/// Facets are ordered lexicographically by normal. The unit ideal is
/// represented by a flagged value with no facet data.
#[derive(Clone, Debug)]
pub struct NewtonData {
    dim: usize,
    unit: bool,
    polyhedron: Option<Polyhedron>,
    facets: Vec<Facet>,
    lattice: Vec<LatticeFacet>,
    cone: Vec<Vec<i64>>,
    vertices: Vec<Vec<i64>>,
}

impl NewtonData {
    /// Newton polyhedron `conv(points) + cone(rays)`; `cone_inequalities` cut
    /// out the lattice points of the recession cone (`<p, a> >= 0`).
    pub(crate) fn from_generators(
        dim: usize,
        points: &[Vec<i64>],
        rays: &[Vec<BigInt>],
        cone_inequalities: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let verts: Vec<RationalVector> = points.iter().map(|p| to_rational_vector(p)).collect();
        let polyhedron = generators_to_inequalities(&verts, rays)?;
        let facets = polyhedron.facets();
        let lattice = facets
            .iter()
            .map(LatticeFacet::from_facet)
            .collect::<Result<_>>()?;
        let vertices = polyhedron
            .vertices()
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.to_integer().to_i64().ok_or(Error::Overflow))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            dim,
            unit: false,
            polyhedron: Some(polyhedron),
            facets,
            lattice,
            cone: cone_inequalities,
            vertices,
        })
    }

    pub(crate) fn unit(dim: usize, cone_inequalities: Vec<Vec<i64>>) -> Self {
        Self {
            dim,
            unit: true,
            polyhedron: None,
            facets: Vec::new(),
            lattice: Vec::new(),
            cone: cone_inequalities,
            vertices: vec![vec![0; dim]],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }

    pub fn polyhedron(&self) -> Option<&Polyhedron> {
        self.polyhedron.as_ref()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn bounded_facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.bounded)
    }

    pub fn unbounded_facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| !f.bounded)
    }

    pub fn has_bounded_facet(&self) -> bool {
        self.facets.iter().any(|f| f.bounded)
    }

    /// Vertices of the polyhedron as rational vectors (the origin for the unit ideal).
    pub fn rational_vertices(&self) -> Vec<RationalVector> {
        self.vertices
            .iter()
            .map(|v| to_rational_vector(v))
            .collect()
    }

    /// Vertices as integer points; `vert(I)`.
    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    /// Rays of the recession cone.
    pub fn rays(&self) -> &[Vec<BigInt>] {
        self.polyhedron.as_ref().map_or(&[], |p| p.rays())
    }

    /// Vertex set of a facet as rational points.
    pub fn facet_vertices(&self, facet: &Facet) -> Vec<RationalVector> {
        facet
            .incident_vertices
            .iter()
            .map(|&i| to_rational_vector(&self.vertices[i]))
            .collect()
    }

    pub fn lattice_facets(&self) -> &[LatticeFacet] {
        &self.lattice
    }

    pub fn cone_inequalities(&self) -> &[Vec<i64>] {
        &self.cone
    }

    /// Lattice point lies in the recession cone (the semigroup of the ring).
    pub fn in_cone(&self, p: &[i64]) -> bool {
        self.cone
            .iter()
            .all(|a| a.iter().zip(p).map(|(x, y)| x * y).sum::<i64>() >= 0)
    }

    /// `p` lies in `scale * conv(I)`. For `scale = 0` this is the recession cone.
    pub fn contains_scaled(&self, p: &[i64], scale: i64) -> bool {
        if self.unit {
            return self.in_cone(p);
        }
        self.in_cone(p) && self.lattice.iter().all(|f| f.holds_at_scale(p, scale))
    }

    /// `p` satisfies every unbounded-facet inequality of `scale * conv(I)`.
    pub fn satisfies_unbounded_at_scale(&self, p: &[i64], scale: i64) -> bool {
        self.in_cone(p)
            && self
                .lattice
                .iter()
                .filter(|f| !f.bounded)
                .all(|f| f.holds_at_scale(p, scale))
    }

    /// Largest coordinate over all vertices.
    pub fn max_vertex_coordinate(&self) -> i64 {
        self.vertices.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Bounding box of `conv(0, vert(I))`, the region containing `pyr(I)`.
    pub fn pyramid_box(&self) -> (Vec<i64>, Vec<i64>) {
        let lo = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i]).min().unwrap_or(0).min(0))
            .collect();
        let hi = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap_or(0).max(0))
            .collect();
        (lo, hi)
    }

    /// The scaling factor `T(p) = min <p, b_k> / c_k` over facets with `c_k > 0`,
    /// as `(numerator, denominator)`, provided the minimum is attained at a
    /// bounded facet. Then `p / T(p)` lies in `bd(I)`.
    pub fn bounded_scaling_factor(&self, p: &[i64]) -> Option<(i128, i128)> {
        let mut best: Option<(i128, i128, bool)> = None;
        for f in self.lattice.iter().filter(|f| f.offset_num > 0) {
            let num = f.evaluate(p) * i128::from(f.offset_den);
            let den = i128::from(f.offset_num);
            best = match best {
                None => Some((num, den, f.bounded)),
                Some((bn, bd, bb)) => {
                    let (lhs, rhs) = (num * bd, bn * den);
                    if lhs < rhs {
                        Some((num, den, f.bounded))
                    } else if lhs == rhs {
                        Some((bn, bd, bb || f.bounded))
                    } else {
                        Some((bn, bd, bb))
                    }
                }
            };
        }
        match best {
            Some((num, den, true)) => Some((num, den)),
            _ => None,
        }
    }

    /// Largest dimension of a bounded face, `None` for the unit ideal.
    ///
    /// Faces are enumerated as intersections of facet incidence sets; a face is
    /// bounded when no ray of the recession cone lies in it.
    pub fn max_bounded_face_dim(&self) -> Option<usize> {
        if self.unit {
            return None;
        }
        if self.has_bounded_facet() {
            return Some(self.dim - 1);
        }
        type Face = (Vec<usize>, Vec<usize>);
        let mut seen: BTreeSet<Face> = BTreeSet::new();
        let mut queue: Vec<Face> = self
            .facets
            .iter()
            .map(|f| (f.incident_vertices.clone(), f.incident_rays.clone()))
            .collect();
        while let Some(face) = queue.pop() {
            if face.0.is_empty() || !seen.insert(face.clone()) {
                continue;
            }
            for f in &self.facets {
                let meet = |a: &[usize], b: &[usize]| -> Vec<usize> {
                    a.iter().filter(|x| b.contains(x)).copied().collect()
                };
                let next = (
                    meet(&face.0, &f.incident_vertices),
                    meet(&face.1, &f.incident_rays),
                );
                if next != face && !next.0.is_empty() && !seen.contains(&next) {
                    queue.push(next);
                }
            }
        }
        let best = seen
            .iter()
            .filter(|(_, rays)| rays.is_empty())
            .filter_map(|(verts, _)| {
                let pts = self.rational_vertices_of(verts);
                let refs: Vec<&[Rational]> = pts.iter().map(Vec::as_slice).collect();
                affine_dimension(&refs)
            })
            .max();
        // every vertex is a bounded face of dimension 0
        Some(best.unwrap_or(0))
    }

    fn rational_vertices_of(&self, idx: &[usize]) -> Vec<RationalVector> {
        idx.iter()
            .map(|&i| to_rational_vector(&self.vertices[i]))
            .collect()
    }
}

pub(crate) fn orthant_rays(dim: usize) -> Vec<Vec<BigInt>> {
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub(crate) fn orthant_inequalities(dim: usize) -> Vec<Vec<i64>> {
    (0..dim)
        .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Newton polyhedron `conv(I) = conv(generators) + R^d_{>=0}`.
pub fn newton(ideal: &MonomialIdeal) -> Result<NewtonData> {
    let dim = ideal.dim();
    if ideal.is_unit() {
        return Ok(NewtonData::unit(dim, orthant_inequalities(dim)));
    }
    let nd = NewtonData::from_generators(
        dim,
        &ideal.exponent_vectors(),
        &orthant_rays(dim),
        orthant_inequalities(dim),
    )?;
    for f in nd.facets() {
        debug_assert!(f.hyperplane.normal.iter().all(|b| !b.is_negative()));
        debug_assert_eq!(f.bounded, f.hyperplane.has_positive_normal());
    }
    Ok(nd)
}

/// Analytic spread: one more than the largest dimension of a bounded face of
/// `conv(I)`. The unit ideal is assigned 0.
pub fn analytic_spread(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(newton(ideal)?.max_bounded_face_dim().map_or(0, |c| c + 1))
}

/// Integral closure: the minimal lattice points of `conv(I)`.
///
/// Search box `[0, M_i]` with `M_i` the largest `i`-th vertex coordinate: a
/// lattice point of `conv(I)` with `p_i > M_i` stays in `conv(I)` after
/// lowering `p_i` by one, so it is not minimal.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if ideal.is_unit() {
        return Ok(ideal.clone());
    }
    let nd = newton(ideal)?;
    let dim = ideal.dim();
    let hi: Vec<i64> = (0..dim)
        .map(|i| nd.vertices().iter().map(|v| v[i]).max().unwrap_or(0))
        .collect();
    let member = |p: &[i64]| nd.contains_scaled(p, 1);
    let gens = scan::collect_points(&vec![0; dim], &hi, |p| {
        member(p) && is_minimal_in(p, &member)
    });
    MonomialIdeal::new(dim, gens)
}

fn is_minimal_in(p: &[i64], member: &impl Fn(&[i64]) -> bool) -> bool {
    let mut q = p.to_vec();
    for i in 0..p.len() {
        if q[i] > 0 {
            q[i] -= 1;
            let inside = member(&q);
            q[i] += 1;
            if inside {
                return false;
            }
        }
    }
    true
}

/// `(Ī : m^∞)`: the minimal lattice points cut out by the unbounded-facet
/// inequalities alone.
///
/// Search bound `B_i = 1 + max c_k / b_{k,i}` over unbounded facets with
/// `b_{k,i} > 0`: a minimal element with `p_i > 0` violates some such
/// inequality once `p_i` drops by one, so `p_i * b_{k,i} < c_k + b_{k,i}`.
pub fn saturation_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let dim = ideal.dim();
    if ideal.is_unit() {
        return Ok(MonomialIdeal::unit(dim));
    }
    let nd = newton(ideal)?;
    let unbounded: Vec<&LatticeFacet> = nd.lattice_facets().iter().filter(|f| !f.bounded).collect();
    if unbounded.is_empty() {
        return Ok(MonomialIdeal::unit(dim));
    }
    let hi: Vec<i64> = (0..dim)
        .map(|i| {
            unbounded
                .iter()
                .filter(|f| f.normal[i] > 0)
                .map(|f| {
                    let c = Rational::new(f.offset_num.into(), f.offset_den.into());
                    let q = c / Rational::from_integer(f.normal[i].into());
                    q.floor().to_integer().to_i64().unwrap_or(i64::MAX - 1) + 1
                })
                .max()
                .unwrap_or(0)
        })
        .collect();
    let member = |p: &[i64]| unbounded.iter().all(|f| f.holds_at_scale(p, 1));
    let gens = scan::collect_points(&vec![0; dim], &hi, |p| {
        member(p) && is_minimal_in(p, &member)
    });
    MonomialIdeal::new(dim, gens)
}

/// Whether `p` lies in the `n`-th cone section `cs_n(I) = ⋃_{n <= s < n+1} s·bd(I)`.
pub fn cone_section_membership(nd: &NewtonData, p: &[i64], n: u64) -> bool {
    if !nd.has_bounded_facet() || !nd.in_cone(p) {
        return false;
    }
    if p.iter().all(|&x| x == 0) {
        return n == 0;
    }
    match nd.bounded_scaling_factor(p) {
        Some((num, den)) => {
            let n = i128::from(n);
            n * den <= num && num < (n + 1) * den
        }
        None => false,
    }
}
