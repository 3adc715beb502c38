//! Exact rational linear algebra.
//!
//! Everything downstream (hulls, volumes, multiplicities) runs on these
//! primitives. There is no floating point anywhere in the crate.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// A point or direction with rational coordinates.
pub type RationalVector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_rational_vector(v: &[i64]) -> RationalVector {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn to_bigint_vector(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Exact inner product.
pub fn dot(a: &[Rational], b: &[Rational]) -> Result<Rational> {
    check_len(a.len(), b.len())?;
    Ok(a.iter().zip(b).map(|(x, y)| x * y).sum())
}

/// Inner product of a rational point with an integer normal.
pub fn dot_int(x: &[Rational], b: &[BigInt]) -> Result<Rational> {
    check_len(b.len(), x.len())?;
    let mut acc = Rational::zero();
    for (xi, bi) in x.iter().zip(b) {
        if !bi.is_zero() {
            acc += xi * Rational::from_integer(bi.clone());
        }
    }
    Ok(acc)
}

/// Fraction-free (Bareiss) determinant of an integer matrix. Consumes the matrix.
pub fn determinant_int(mut m: Vec<Vec<BigInt>>) -> Result<BigInt> {
    let n = m.len();
    for row in &m {
        check_len(n, row.len())?;
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // exact division: Sylvester's identity
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// Exact determinant of a rational matrix.
///
/// Each row is scaled to integers by the lcm of its denominators, the integer
/// determinant is taken with Bareiss elimination, and the scaling is divided out.
pub fn determinant(m: &[Vec<Rational>]) -> Result<Rational> {
    let n = m.len();
    let mut scale = BigInt::one();
    let mut rows = Vec::with_capacity(n);
    for row in m {
        check_len(n, row.len())?;
        let (ints, l) = clear_denominators(row);
        scale *= l;
        rows.push(ints);
    }
    Ok(Rational::new(determinant_int(rows)?, scale))
}

/// Scales a rational vector by the lcm `l` of its denominators, returning `(l * v, l)`.
pub fn clear_denominators(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (ints, l)
}

fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides an integer vector by the gcd of its entries, keeping its direction.
pub fn primitive_part(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::Degenerate(
            "zero vector has no primitive part".into(),
        ));
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Primitive representative of the line through `v`: gcd 1 and first nonzero
/// entry positive. Oriented facet normals use [`primitive_part`] instead.
pub fn primitive_normal(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut p = primitive_part(v)?;
    if p.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        p.iter_mut().for_each(|x| *x = -&*x);
    }
    Ok(p)
}

/// Positive multiple of a rational direction that is a primitive integer vector.
pub fn integer_direction(v: &[Rational]) -> Result<Vec<BigInt>> {
    primitive_part(&clear_denominators(v).0)
}

/// Row-echelon reduction in place; returns the pivot columns.
fn echelon(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[i][c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a set of rational row vectors.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m).len()
}

/// Affine dimension of a point set, `None` for the empty set.
pub fn affine_dimension(points: &[&[Rational]]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let diffs: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    Some(rank(&diffs))
}

/// Basis of the right null space `{x : rows * x = 0}`; `ncols` is the ambient dimension.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

/// Greedily selects indices of rows forming a maximal linearly independent subset.
pub fn independent_rows(rows: &[Vec<Rational>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        basis.push(row.clone());
        if rank(&basis) == basis.len() {
            chosen.push(i);
        } else {
            basis.pop();
        }
    }
    chosen
}

/// Inverse of a square nonsingular rational matrix, `None` when singular.
pub fn inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = echelon(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// The affine hyperplane `<x, normal> = offset`, read as the closed half-space
/// `<x, normal> >= offset` wherever orientation matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Hyperplane {
    /// Builds the half-space `<x, normal> >= offset`, rescaling so the normal is
    /// primitive. Orientation is preserved.
    pub fn new(normal: Vec<BigInt>, offset: Rational) -> Result<Self> {
        let g = gcd_all(&normal);
        if g.is_zero() {
            return Err(Error::Degenerate("hyperplane with zero normal".into()));
        }
        let normal = normal.iter().map(|x| x / &g).collect();
        let offset = offset / Rational::from_integer(g);
        Ok(Self { normal, offset })
    }

    pub fn from_i64(normal: &[i64], offset: Rational) -> Result<Self> {
        Self::new(to_bigint_vector(normal), offset)
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `<x, normal>`.
    pub fn evaluate(&self, x: &[Rational]) -> Result<Rational> {
        dot_int(x, &self.normal)
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> Result<bool> {
        Ok(self.evaluate(x)? >= self.offset)
    }

    pub fn is_tight(&self, x: &[Rational]) -> Result<bool> {
        Ok(self.evaluate(x)? == self.offset)
    }

    /// `<r, normal>` for an integer direction.
    pub fn evaluate_direction(&self, r: &[BigInt]) -> BigInt {
        r.iter().zip(&self.normal).map(|(a, b)| a * b).sum()
    }

    /// True when every normal entry is strictly positive.
    pub fn has_positive_normal(&self) -> bool {
        self.normal.iter().all(|x| x.is_positive())
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, b) in self.normal.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let sep = if first {
                if b.is_negative() {
                    "-"
                } else {
                    ""
                }
            } else if b.is_negative() {
                " - "
            } else {
                " + "
            };
            let mag = b.abs();
            if mag.is_one() {
                write!(f, "{sep}x{}", i + 1)?;
            } else {
                write!(f, "{sep}{mag}*x{}", i + 1)?;
            }
            first = false;
        }
        write!(f, " >= {}", self.offset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[(i64, i64)]) -> RationalVector {
        v.iter().map(|&(n, d)| ratio(n, d)).collect()
    }

    fn bi(v: &[i64]) -> Vec<BigInt> {
        to_bigint_vector(v)
    }

    fn rmat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| to_rational_vector(r)).collect()
    }

    #[test]
    fn dot_examples() {
        assert_eq!(
            dot(&to_rational_vector(&[1, 5]), &to_rational_vector(&[2, 1])).unwrap(),
            rat(7)
        );
        assert_eq!(
            dot(
                &to_rational_vector(&[0, 0, 0]),
                &to_rational_vector(&[4, -2, 9])
            )
            .unwrap(),
            rat(0)
        );
        assert_eq!(
            dot(&rv(&[(1, 2), (1, 3)]), &to_rational_vector(&[2, 3])).unwrap(),
            rat(2)
        );
    }

    #[test]
    fn dot_length_mismatch() {
        let err = dot(&to_rational_vector(&[1, 2]), &to_rational_vector(&[1])).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&rmat(&[&[1, 5], &[2, 3]])).unwrap(), rat(-7));
        let id: Vec<Vec<i64>> = (0..5)
            .map(|i| (0..5).map(|j| i64::from(i == j)).collect())
            .collect();
        let id: Vec<&[i64]> = id.iter().map(Vec::as_slice).collect();
        assert_eq!(determinant(&rmat(&id)).unwrap(), rat(1));
        assert_eq!(
            determinant(&rmat(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap(),
            rat(2)
        );
    }

    #[test]
    fn determinant_needs_pivoting_and_rationals() {
        assert_eq!(determinant(&rmat(&[&[0, 1], &[1, 0]])).unwrap(), rat(-1));
        let m = vec![rv(&[(1, 2), (1, 3)]), rv(&[(2, 1), (3, 4)])];
        // 3/8 - 2/3
        assert_eq!(determinant(&m).unwrap(), ratio(-7, 24));
        assert_eq!(determinant(&rmat(&[&[1, 2], &[2, 4]])).unwrap(), rat(0));
    }

    #[test]
    fn determinant_non_square() {
        assert!(matches!(
            determinant(&rmat(&[&[1, 2, 3], &[4, 5, 6]])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn primitive_normal_examples() {
        assert_eq!(primitive_normal(&bi(&[2, 4, 6])).unwrap(), bi(&[1, 2, 3]));
        assert_eq!(primitive_normal(&bi(&[0, -3])).unwrap(), bi(&[0, 1]));
        assert_eq!(primitive_normal(&bi(&[1, 1])).unwrap(), bi(&[1, 1]));
        assert!(matches!(
            primitive_normal(&bi(&[0, 0])),
            Err(Error::Degenerate(_))
        ));
        assert_eq!(primitive_part(&bi(&[0, -3])).unwrap(), bi(&[0, -1]));
    }

    #[test]
    fn hyperplane_normalizes() {
        let h = Hyperplane::from_i64(&[2, 4], rat(7)).unwrap();
        assert_eq!(h.normal, bi(&[1, 2]));
        assert_eq!(h.offset, ratio(7, 2));
        assert!(h.satisfied_by(&to_rational_vector(&[4, 0])).unwrap());
        assert!(!h.satisfied_by(&to_rational_vector(&[3, 0])).unwrap());
        assert_eq!(h.to_string(), "x1 + 2*x2 >= 7/2");
    }

    #[test]
    fn nullspace_and_inverse() {
        let ns = nullspace(&rmat(&[&[1, 1, 0], &[0, 1, 1]]), 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], to_rational_vector(&[1, -1, 1]));
        let inv = inverse(&rmat(&[&[2, 0], &[0, 4]])).unwrap();
        assert_eq!(inv, vec![rv(&[(1, 2), (0, 1)]), rv(&[(0, 1), (1, 4)])]);
        assert!(inverse(&rmat(&[&[1, 2], &[2, 4]])).is_none());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
            prop::collection::vec(-20i64..20, n)
        }

        proptest! {
            #[test]
            fn dot_is_additive(a in small_vec(4), b in small_vec(4), c in small_vec(4), den in 1i64..9) {
                let a: RationalVector = a.iter().map(|&x| ratio(x, den)).collect();
                let b = to_rational_vector(&b);
                let c = to_rational_vector(&c);
                let bc: RationalVector = b.iter().zip(&c).map(|(x, y)| x + y).collect();
                prop_assert_eq!(dot(&a, &bc).unwrap(), dot(&a, &b).unwrap() + dot(&a, &c).unwrap());
            }

            #[test]
            fn determinant_alternates(rows in prop::collection::vec(small_vec(3), 3), i in 0usize..3, j in 0usize..3) {
                prop_assume!(i != j);
                let m: Vec<Vec<Rational>> = rows.iter().map(|r| to_rational_vector(r)).collect();
                let mut swapped = m.clone();
                swapped.swap(i, j);
                let d = determinant(&m).unwrap();
                prop_assert_eq!(determinant(&swapped).unwrap(), -d.clone());
                prop_assert!(d.is_integer());
            }

            #[test]
            fn primitive_normal_idempotent(v in small_vec(4)) {
                prop_assume!(v.iter().any(|&x| x != 0));
                let p = primitive_normal(&bi(&v)).unwrap();
                prop_assert_eq!(primitive_normal(&p).unwrap(), p);
            }
        }
    }
}
