//! Brute-force lattice counts for the length sequences whose limits define the
//! j- and ε-multiplicities.
//!
//! Nothing here touches the volume code: every count is a scan of an explicit
//! box with membership tests taken straight from the definitions. The box
//! bounds are recorded next to each scan.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::geometry::{rat, Rational};
use crate::newton::{cone_section_membership, power, MonomialIdeal, NewtonData};
use crate::scan::count_points;

/// Which length sequence a [`LengthSequence`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LengthKind {
    ClosureFiltrationJ,
    ConeSectionCount,
    DirectPowerJ,
    ClosureEpsilon,
    DirectPowerEpsilon,
}

impl LengthKind {
    pub fn normalization(self) -> Normalization {
        match self {
            Self::ClosureFiltrationJ | Self::ConeSectionCount | Self::DirectPowerJ => {
                Normalization::JType
            }
            Self::ClosureEpsilon | Self::DirectPowerEpsilon => Normalization::EpsilonType,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::ClosureFiltrationJ => "closure_filtration_j",
            Self::ConeSectionCount => "cone_section_count",
            Self::DirectPowerJ => "direct_power_j",
            Self::ClosureEpsilon => "closure_epsilon",
            Self::DirectPowerEpsilon => "direct_power_epsilon",
        }
    }
}

impl fmt::Display for LengthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a length at level `n` is scaled before comparing with a multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `(d-1)! / n^(d-1)`
    JType,
    /// `d! / n^d`
    EpsilonType,
}

impl Normalization {
    pub fn factor(self, dim: usize, n: u64) -> Rational {
        let k = match self {
            Self::JType => dim - 1,
            Self::EpsilonType => dim,
        };
        let fact: BigInt = (1..=k).map(BigInt::from).product();
        Rational::new(fact, BigInt::from(n).pow(k as u32))
    }
}

/// Lengths `n -> λ_n` for consecutive levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LengthSequence {
    pub kind: LengthKind,
    pub dim: usize,
    pub values: BTreeMap<u64, u64>,
}

impl LengthSequence {
    pub fn collect(
        kind: LengthKind,
        dim: usize,
        levels: impl IntoIterator<Item = u64>,
        mut f: impl FnMut(u64) -> u64,
    ) -> Self {
        let values = levels.into_iter().map(|n| (n, f(n))).collect();
        Self { kind, dim, values }
    }
}

/// `[lo, hi]` bounding `scale * conv(0, vert(I))` intersected with the lattice.
fn scaled_pyramid_box(nd: &NewtonData, scale: i64) -> (Vec<i64>, Vec<i64>) {
    let (lo, hi) = nd.pyramid_box();
    (
        lo.iter().map(|x| x * scale).collect(),
        hi.iter().map(|x| x * scale).collect(),
    )
}

fn level(n: u64) -> i64 {
    i64::try_from(n).expect("level fits in i64")
}

/// `#(Z^d ∩ cs_n(I))`.
///
/// Box: `cs_n(I) ⊆ (n+1) pyr(I) ⊆ (n+1) conv(0, vert(I))`, whose bounding box
/// is scanned (inside `[0, (n+1)M]^d` for the orthant).
pub fn count_cone_section(nd: &NewtonData, n: u64) -> u64 {
    if !nd.has_bounded_facet() {
        return 0;
    }
    let (lo, hi) = scaled_pyramid_box(nd, level(n) + 1);
    count_points(&lo, &hi, |p| cone_section_membership(nd, p, n))
}

/// `λ(H^0_m(Ī^n / Ī^{n+1}))`: lattice points of `n conv(I)` outside
/// `(n+1) conv(I)` that satisfy the unbounded-facet inequalities at scale `n+1`.
///
/// Box: such a point is saturated at level `n+1` but outside `(n+1) conv(I)`,
/// so it lies in `(n+1) pyr(I)`; the same box as [`count_cone_section`] covers it.
pub fn closure_filtration_length(nd: &NewtonData, n: u64) -> u64 {
    if nd.is_unit() {
        return 0;
    }
    let n = level(n);
    let (lo, hi) = scaled_pyramid_box(nd, n + 1);
    count_points(&lo, &hi, |p| {
        nd.satisfies_unbounded_at_scale(p, n + 1)
            && !nd.contains_scaled(p, n + 1)
            && nd.contains_scaled(p, n)
    })
}

fn max_generator_coordinates(ideal: &MonomialIdeal) -> Vec<i64> {
    ideal.max_exponents()
}

/// For every coordinate `j` some generator divides `p` away from `j`: then
/// `x_j^t x^p` lies in the ideal for large `t`, i.e. `x^p` is in the saturation.
fn saturated_by_generators(gens: &[Vec<i64>], p: &[i64]) -> bool {
    (0..p.len()).all(|j| {
        gens.iter().any(|g| {
            g.iter()
                .zip(p)
                .enumerate()
                .all(|(i, (a, b))| i == j || a <= b)
        })
    })
}

fn in_ideal(gens: &[Vec<i64>], p: &[i64]) -> bool {
    gens.iter().any(|g| g.iter().zip(p).all(|(a, b)| a <= b))
}

/// `λ(H^0_m(I^n / I^{n+1}))` for the honest powers.
///
/// Box `∏ [0, (n+1)G_i)`: a saturated point outside `I^{n+1}` is dominated off
/// coordinate `i` by a generator `g` of `I^{n+1}` and still avoids `g`, so
/// `p_i < g_i <= (n+1)G_i`.
pub fn direct_power_j_length(ideal: &MonomialIdeal, n: u64) -> u64 {
    if ideal.is_unit() {
        return 0;
    }
    let n32 = u32::try_from(n).expect("level fits in u32");
    let lower = power(ideal, n32).exponent_vectors();
    let upper = power(ideal, n32 + 1).exponent_vectors();
    let g = max_generator_coordinates(ideal);
    let hi: Vec<i64> = g.iter().map(|gi| (level(n) + 1) * gi - 1).collect();
    count_points(&vec![0; ideal.dim()], &hi, |p| {
        in_ideal(&lower, p) && !in_ideal(&upper, p) && saturated_by_generators(&upper, p)
    })
}

/// `λ(H^0_m(R / J))` for `J = Ī^n` (`use_closure`) or `J = I^n`.
///
/// Closure path: points satisfying the unbounded-facet inequalities at scale
/// `n` but outside `n conv(I)`; that is `n out(I)` minus `n bd(I)`, inside
/// `n conv(0, vert(I))`. Direct path: box `∏ [0, nG_i)` by the argument of
/// [`direct_power_j_length`].
pub fn epsilon_lengths(ideal: &MonomialIdeal, nd: &NewtonData, n: u64, use_closure: bool) -> u64 {
    if ideal.is_unit() || n == 0 {
        return 0;
    }
    if use_closure {
        let (lo, hi) = scaled_pyramid_box(nd, level(n));
        count_points(&lo, &hi, |p| {
            nd.satisfies_unbounded_at_scale(p, level(n)) && !nd.contains_scaled(p, level(n))
        })
    } else {
        let gens = power(ideal, u32::try_from(n).expect("level fits in u32")).exponent_vectors();
        let g = max_generator_coordinates(ideal);
        let hi: Vec<i64> = g.iter().map(|gi| level(n) * gi - 1).collect();
        count_points(&vec![0; ideal.dim()], &hi, |p| {
            !in_ideal(&gens, p) && saturated_by_generators(&gens, p)
        })
    }
}

/// A second count of `Z^d ∩ (n out(I) \ n bd(I))`, written from the out-region
/// description: every unbounded-facet inequality holds at scale `n` and some
/// bounded-facet inequality fails. Uses the exact facet hyperplanes and the
/// box `[0, nM]^d` with `M = 1 + max vertex coordinate`.
pub fn out_region_count(nd: &NewtonData, n: u64) -> u64 {
    if nd.is_unit() || !nd.has_bounded_facet() || n == 0 {
        return 0;
    }
    let scale = BigInt::from(n);
    let facets: Vec<(Vec<BigInt>, BigInt, BigInt, bool)> = nd
        .facets()
        .iter()
        .map(|f| {
            let c = &f.hyperplane.offset;
            (
                f.hyperplane.normal.clone(),
                c.numer() * &scale,
                c.denom().clone(),
                f.bounded,
            )
        })
        .collect();
    let m = level(n) * (1 + nd.max_vertex_coordinate());
    let d = nd.dim();
    count_points(&vec![0; d], &vec![m; d], |p| {
        let above = |(b, num, den, _): &(Vec<BigInt>, BigInt, BigInt, bool)| {
            let s: BigInt = b.iter().zip(p).map(|(x, y)| x * y).sum();
            s * den >= *num
        };
        facets.iter().filter(|f| !f.3).all(above)
            && facets.iter().filter(|f| f.3).any(|f| !above(f))
    })
}

/// Normalized values of a length sequence and the distance to a target at the
/// top level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub kind: LengthKind,
    pub target: Rational,
    pub normalized: Vec<(u64, Rational)>,
    pub n_max: u64,
    pub gap: Rational,
}

impl ConvergenceReport {
    /// `gap / target`, or the gap itself for a zero target.
    pub fn relative_gap(&self) -> Rational {
        if self.target.is_zero() {
            self.gap.clone()
        } else {
            &self.gap / self.target.abs()
        }
    }

    pub fn normalized_at(&self, n: u64) -> Option<&Rational> {
        self.normalized
            .iter()
            .find(|(k, _)| *k == n)
            .map(|(_, v)| v)
    }
}

/// Scales every `n >= 1` entry by the normalization of the sequence kind and
/// reports `|normalized(n_max) - target|`.
pub fn convergence_report(seq: &LengthSequence, target: &Rational) -> Result<ConvergenceReport> {
    let norm = seq.kind.normalization();
    let normalized: Vec<(u64, Rational)> = seq
        .values
        .iter()
        .filter(|(&n, _)| n > 0)
        .map(|(&n, &v)| (n, norm.factor(seq.dim, n) * rat(v as i64)))
        .collect();
    let Some((n_max, last)) = normalized.last().cloned() else {
        return Err(Error::InvalidInput(
            "length sequence has no level n >= 1".into(),
        ));
    };
    Ok(ConvergenceReport {
        kind: seq.kind,
        target: target.clone(),
        gap: (last - target).abs(),
        normalized,
        n_max,
    })
}

/// Period of the cone-section count quasi-polynomial: the lcm of the facet
/// offset denominators (1 when every offset is an integer).
pub fn quasi_period(nd: &NewtonData) -> u64 {
    nd.facets()
        .iter()
        .fold(BigInt::one(), |acc, f| acc.lcm(f.hyperplane.offset.denom()))
        .to_u64()
        .unwrap_or(u64::MAX)
}

/// True when the values at `start, start + step, ...` satisfy a polynomial of
/// the given degree: all finite differences of order `degree + 1` vanish.
/// Needs at least `degree + 2` samples to say anything.
pub fn fits_polynomial(
    values: &BTreeMap<u64, u64>,
    start: u64,
    step: u64,
    degree: usize,
) -> Option<bool> {
    let mut samples: Vec<BigInt> = Vec::new();
    let mut n = start;
    while let Some(&v) = values.get(&n) {
        samples.push(BigInt::from(v));
        n += step;
    }
    if samples.len() < degree + 2 {
        return None;
    }
    for _ in 0..=degree {
        samples = samples.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    Some(samples.iter().all(Zero::is_zero))
}
