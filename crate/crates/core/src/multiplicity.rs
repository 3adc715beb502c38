//! j-, ε- and Hilbert–Samuel multiplicities of monomial ideals, computed from
//! volumes of regions attached to the Newton polyhedron.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::Rational;
use crate::newton::{analytic_spread, newton, MonomialIdeal, NewtonData};
use crate::volume::{
    orthant_complement_normalized_volume, out_normalized_volume, pyr_normalized_volume,
};

/// All multiplicity data of one ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityReport {
    pub j: BigInt,
    pub epsilon: Rational,
    /// Present exactly when the ideal is m-primary.
    pub hilbert_samuel: Option<BigInt>,
    pub analytic_spread: usize,
    pub is_m_primary: bool,
}

fn integral(v: Rational) -> BigInt {
    debug_assert!(v.is_integer(), "lattice volume {v} is not an integer");
    v.to_integer()
}

/// `j(I) = d! vol(pyr(I))`. Zero for the unit ideal and whenever no facet of
/// `conv(I)` is bounded.
pub fn j_multiplicity(ideal: &MonomialIdeal) -> Result<BigInt> {
    j_from_newton(&newton(ideal)?)
}

pub fn j_from_newton(nd: &NewtonData) -> Result<BigInt> {
    if nd.is_unit() {
        return Ok(BigInt::zero());
    }
    Ok(integral(pyr_normalized_volume(nd)?.normalized))
}

/// `ε(I) = d! vol(out(I))`, an exact rational.
pub fn epsilon_multiplicity(ideal: &MonomialIdeal) -> Result<Rational> {
    epsilon_from_newton(&newton(ideal)?)
}

pub fn epsilon_from_newton(nd: &NewtonData) -> Result<Rational> {
    Ok(out_normalized_volume(nd)?.normalized)
}

/// Hilbert–Samuel multiplicity of an m-primary ideal, `None` otherwise.
///
/// Computed as `d!` times the volume of the orthant minus `conv(I)`, a route
/// independent of the pyramid triangulation used for `j`.
pub fn hs_multiplicity(ideal: &MonomialIdeal) -> Result<Option<BigInt>> {
    if !ideal.is_m_primary() {
        return Ok(None);
    }
    let nd = newton(ideal)?;
    Ok(Some(integral(
        orthant_complement_normalized_volume(&nd)?.normalized,
    )))
}

pub fn multiplicity_report(ideal: &MonomialIdeal) -> Result<MultiplicityReport> {
    let nd = newton(ideal)?;
    Ok(MultiplicityReport {
        j: j_from_newton(&nd)?,
        epsilon: epsilon_from_newton(&nd)?,
        hilbert_samuel: hs_multiplicity(ideal)?,
        analytic_spread: analytic_spread(ideal)?,
        is_m_primary: ideal.is_m_primary(),
    })
}

/// Edge ideal `(x_i x_j : {i, j} an edge)` of a simple graph on vertices `1..=dim`.
pub fn edge_ideal(dim: usize, edges: &[(usize, usize)]) -> Result<MonomialIdeal> {
    if dim < 2 {
        return Err(Error::InvalidInput(
            "a graph needs at least two vertices".into(),
        ));
    }
    if edges.is_empty() {
        return Err(Error::InvalidInput("edge list is empty".into()));
    }
    let mut gens = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        if a == b {
            return Err(Error::InvalidInput(format!("loop at vertex {a}")));
        }
        for v in [a, b] {
            if v == 0 || v > dim {
                return Err(Error::InvalidInput(format!("vertex {v} outside 1..={dim}")));
            }
        }
        let mut g = vec![0; dim];
        g[a - 1] = 1;
        g[b - 1] = 1;
        gens.push(g);
    }
    MonomialIdeal::new(dim, gens)
}

/// Edges of the cycle `1 - 2 - ... - d - 1`.
pub fn cycle_edges(d: usize) -> Vec<(usize, usize)> {
    (1..=d).map(|i| (i, i % d + 1)).collect()
}
