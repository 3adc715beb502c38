//! Exact volumes of polytopes, pyramids over the bounded complex, and the
//! region `out(I)`.
//!
//! Everything is exact. Normalized volume means `d!` times Euclidean volume,
//! which is an integer for lattice simplices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::dual::{generators_to_inequalities, inequalities_to_vertices};
use crate::error::{Error, Result};
use crate::geometry::{affine_dimension, determinant, rat, Hyperplane, Rational, RationalVector};
use crate::newton::NewtonData;

/// Which vertex the recursive fan triangulation pulls first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Apex {
    #[default]
    First,
    Last,
}

/// A simplex given by its vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: Vec<RationalVector>,
}

impl Simplex {
    /// `|det|` of the matrix whose rows are the vertices: the normalized
    /// volume of the pyramid over this simplex with apex at the origin.
    pub fn origin_normalized_volume(&self) -> Result<Rational> {
        Ok(determinant(&self.vertices)?.abs())
    }

    /// `|det(v_i - v_0)|`: the normalized volume of the simplex itself.
    pub fn normalized_volume(&self) -> Result<Rational> {
        let Some((v0, rest)) = self.vertices.split_first() else {
            return Ok(Rational::zero());
        };
        let rows: Vec<RationalVector> = rest
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        Ok(determinant(&rows)?.abs())
    }
}

/// `d!` times a Euclidean volume.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RegionVolume {
    pub normalized: Rational,
}

impl RegionVolume {
    pub fn zero() -> Self {
        Self {
            normalized: Rational::zero(),
        }
    }

    pub fn euclidean(&self, dim: usize) -> Rational {
        &self.normalized / factorial(dim)
    }
}

pub(crate) fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * rat(k as i64))
}

/// Columns on which the projection of `points` keeps its affine dimension `k`.
fn spanning_coordinates(points: &[RationalVector], k: usize) -> Vec<usize> {
    let dim = points[0].len();
    let base = &points[0];
    let diffs: Vec<RationalVector> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    // columns of the difference matrix that are linearly independent
    let columns: Vec<RationalVector> = (0..dim)
        .map(|c| diffs.iter().map(|row| row[c].clone()).collect())
        .collect();
    let picked = crate::geometry::independent_rows(&columns);
    debug_assert_eq!(picked.len(), k);
    picked
}

/// Triangulates `conv(points)` into simplices of its own dimension, using only
/// the given points as vertices. Each simplex is a list of indices into
/// `points`. Lower-dimensional input is triangulated within its affine hull.
pub fn triangulate(points: &[RationalVector], apex: Apex) -> Result<Vec<Vec<usize>>> {
    let Some(first) = points.first() else {
        return Ok(Vec::new());
    };
    if points.iter().any(|p| p.len() != first.len()) {
        let found = points
            .iter()
            .map(Vec::len)
            .find(|&l| l != first.len())
            .unwrap_or(0);
        return Err(Error::DimensionMismatch {
            expected: first.len(),
            found,
        });
    }
    let refs: Vec<&[Rational]> = points.iter().map(Vec::as_slice).collect();
    let k = affine_dimension(&refs).unwrap_or(0);
    let all: Vec<usize> = (0..points.len()).collect();
    triangulate_indices(points, &all, k, apex)
}

fn triangulate_indices(
    points: &[RationalVector],
    idx: &[usize],
    k: usize,
    apex: Apex,
) -> Result<Vec<Vec<usize>>> {
    let local: Vec<RationalVector> = idx.iter().map(|&i| points[i].clone()).collect();
    if k == 0 {
        return Ok(vec![vec![idx[0]]]);
    }
    let coords = spanning_coordinates(&local, k);
    let projected: Vec<RationalVector> = local
        .iter()
        .map(|p| coords.iter().map(|&c| p[c].clone()).collect())
        .collect();
    if k == 1 {
        let lo = (0..idx.len())
            .min_by(|&a, &b| projected[a].cmp(&projected[b]))
            .unwrap();
        let hi = (0..idx.len())
            .max_by(|&a, &b| projected[a].cmp(&projected[b]))
            .unwrap();
        return Ok(vec![vec![idx[lo], idx[hi]]]);
    }
    let hull = generators_to_inequalities(&projected, &[])?;
    // vertex positions back in `idx`; projection is injective on the affine hull
    let vertex_idx: Vec<usize> = hull
        .vertices()
        .iter()
        .map(|v| {
            projected
                .iter()
                .position(|p| p == v)
                .expect("vertex comes from input")
        })
        .collect();
    let apex_pos = match apex {
        Apex::First => *vertex_idx.iter().min().expect("nonempty hull"),
        Apex::Last => *vertex_idx.iter().max().expect("nonempty hull"),
    };
    let mut out = Vec::new();
    for f in hull.facets() {
        let on_facet: Vec<usize> = f.incident_vertices.iter().map(|&v| vertex_idx[v]).collect();
        if on_facet.contains(&apex_pos) {
            continue;
        }
        let facet_idx: Vec<usize> = on_facet.iter().map(|&j| idx[j]).collect();
        for mut s in triangulate_indices(points, &facet_idx, k - 1, apex)? {
            s.insert(0, idx[apex_pos]);
            out.push(s);
        }
    }
    Ok(out)
}

/// Euclidean volume of `conv(verts)`; zero when the hull is not full-dimensional.
pub fn polytope_volume(verts: &[RationalVector]) -> Result<Rational> {
    Ok(polytope_normalized_volume(verts, Apex::First)?
        / factorial(verts.first().map_or(0, Vec::len)))
}

/// `d!` times the volume of `conv(verts)`, triangulating from the chosen apex.
pub fn polytope_normalized_volume(verts: &[RationalVector], apex: Apex) -> Result<Rational> {
    let Some(first) = verts.first() else {
        return Ok(Rational::zero());
    };
    let refs: Vec<&[Rational]> = verts.iter().map(Vec::as_slice).collect();
    if affine_dimension(&refs) != Some(first.len()) {
        return Ok(Rational::zero());
    }
    let mut total = Rational::zero();
    for s in triangulate(verts, apex)? {
        let simplex = Simplex {
            vertices: s.iter().map(|&i| verts[i].clone()).collect(),
        };
        total += simplex.normalized_volume()?;
    }
    Ok(total)
}

/// Normalized volume of the pyramid from the origin over each bounded facet,
/// in facet order. Unbounded facets are skipped.
pub fn pyr_facet_volumes(nd: &NewtonData, apex: Apex) -> Result<Vec<(usize, Rational)>> {
    let mut out = Vec::new();
    for (k, f) in nd.facets().iter().enumerate() {
        if !f.bounded {
            continue;
        }
        let verts = nd.facet_vertices(f);
        let mut vol = Rational::zero();
        for s in triangulate(&verts, apex)? {
            let simplex = Simplex {
                vertices: s.iter().map(|&i| verts[i].clone()).collect(),
            };
            vol += simplex.origin_normalized_volume()?;
        }
        out.push((k, vol));
    }
    Ok(out)
}

/// `d! vol(pyr(I))`: the sum over bounded facets of the origin-apex simplex
/// determinants of a triangulation of each facet.
pub fn pyr_normalized_volume(nd: &NewtonData) -> Result<RegionVolume> {
    pyr_normalized_volume_with(nd, Apex::First)
}

pub fn pyr_normalized_volume_with(nd: &NewtonData, apex: Apex) -> Result<RegionVolume> {
    let normalized = pyr_facet_volumes(nd, apex)?
        .into_iter()
        .map(|(_, v)| v)
        .sum();
    Ok(RegionVolume { normalized })
}

fn box_inequalities(dim: usize, m: i64) -> Vec<Hyperplane> {
    let mut out = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        let mut e = vec![BigInt::zero(); dim];
        e[i] = BigInt::one();
        out.push(Hyperplane::new(e.clone(), Rational::zero()).expect("nonzero normal"));
        e[i] = -BigInt::one();
        out.push(Hyperplane::new(e, rat(-m)).expect("nonzero normal"));
    }
    out
}

fn clipped_volume(ineqs: &[Hyperplane], dim: usize) -> Result<Rational> {
    let verts = inequalities_to_vertices(ineqs, dim)?;
    polytope_normalized_volume(&verts, Apex::First)
}

/// Default clipping box side for the out region: one more than the largest
/// vertex coordinate.
pub fn default_box_side(nd: &NewtonData) -> i64 {
    1 + nd.max_vertex_coordinate()
}

/// `d! vol(out(I))` for an ideal of the polynomial ring.
///
/// Computed as `d!(vol(P1) - vol(P2))` where, inside the box `[0, M]^d`,
/// `P1` is cut out by the unbounded-facet inequalities and `P2` is `conv(I)`.
/// `out(I)` lies in `conv(0, vert(I))`, so the box loses nothing. Zero when
/// no facet is bounded.
pub fn out_normalized_volume(nd: &NewtonData) -> Result<RegionVolume> {
    out_normalized_volume_with_box(nd, default_box_side(nd))
}

/// As [`out_normalized_volume`] with an explicit box side `m`, which must be
/// at least the largest vertex coordinate.
pub fn out_normalized_volume_with_box(nd: &NewtonData, m: i64) -> Result<RegionVolume> {
    if nd.is_unit() || !nd.has_bounded_facet() {
        return Ok(RegionVolume::zero());
    }
    if m < nd.max_vertex_coordinate() {
        return Err(Error::InvalidInput(format!(
            "box side {m} is smaller than the largest vertex coordinate"
        )));
    }
    let dim = nd.dim();
    let boxed = box_inequalities(dim, m);
    let mut p1 = boxed.clone();
    p1.extend(nd.unbounded_facets().map(|f| f.hyperplane.clone()));
    let mut p2 = boxed;
    p2.extend(nd.facets().iter().map(|f| f.hyperplane.clone()));
    let normalized = clipped_volume(&p1, dim)? - clipped_volume(&p2, dim)?;
    Ok(RegionVolume { normalized })
}

/// `d!` times the volume of the orthant minus `conv(I)`, clipped to
/// `[0, M]^d`. For an m-primary ideal this is the whole complement.
pub fn orthant_complement_normalized_volume(nd: &NewtonData) -> Result<RegionVolume> {
    let dim = nd.dim();
    let m = default_box_side(nd);
    let mut p2 = box_inequalities(dim, m);
    p2.extend(nd.facets().iter().map(|f| f.hyperplane.clone()));
    let cube = factorial(dim) * num_traits::pow(rat(m), dim);
    Ok(RegionVolume {
        normalized: cube - clipped_volume(&p2, dim)?,
    })
}

/// Vertices of the closed part of `out(I)` lying beyond bounded facet `k`:
/// the unbounded-facet inequalities together with `<x, b_k> <= c_k`.
/// When `k` is the only bounded facet this is the closure of `out(I)`.
pub fn out_region_piece(nd: &NewtonData, k: usize) -> Result<Vec<RationalVector>> {
    let f = nd
        .facets()
        .get(k)
        .filter(|f| f.bounded)
        .ok_or_else(|| Error::InvalidInput(format!("facet {k} is not a bounded facet")))?;
    let dim = nd.dim();
    let mut ineqs: Vec<Hyperplane> = nd
        .unbounded_facets()
        .map(|f| f.hyperplane.clone())
        .collect();
    for a in nd.cone_inequalities() {
        ineqs.push(Hyperplane::from_i64(a, Rational::zero())?);
    }
    let flipped = f.hyperplane.normal.iter().map(|b| -b).collect();
    ineqs.push(Hyperplane::new(flipped, -f.hyperplane.offset.clone())?);
    inequalities_to_vertices(&ineqs, dim)
}
