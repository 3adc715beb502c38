//! Lattice-point scans over integer boxes.
//!
//! Boxes are inclusive on both ends. The parallel variants split the box into
//! slabs along the first coordinate; totals and collected point lists are
//! identical to a sequential row-major scan.

use rayon::prelude::*;

/// Calls `f` on every lattice point of `[lo, hi]` in row-major order.
pub(crate) fn for_each_point(lo: &[i64], hi: &[i64], mut f: impl FnMut(&[i64])) {
    let d = lo.len();
    if d == 0 || lo.iter().zip(hi).any(|(a, b)| a > b) {
        return;
    }
    let mut p = lo.to_vec();
    loop {
        f(&p);
        let mut i = d;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if p[i] < hi[i] {
                p[i] += 1;
                break;
            }
            p[i] = lo[i];
        }
    }
}

fn slabs(lo: &[i64], hi: &[i64]) -> Option<std::ops::RangeInclusive<i64>> {
    if lo.is_empty() || lo.iter().zip(hi).any(|(a, b)| a > b) {
        None
    } else {
        Some(lo[0]..=hi[0])
    }
}

/// Number of lattice points of `[lo, hi]` satisfying `pred`.
pub(crate) fn count_points<F>(lo: &[i64], hi: &[i64], pred: F) -> u64
where
    F: Fn(&[i64]) -> bool + Sync,
{
    let Some(first) = slabs(lo, hi) else {
        return 0;
    };
    first
        .into_par_iter()
        .map(|x0| {
            let mut slab_lo = lo.to_vec();
            let mut slab_hi = hi.to_vec();
            slab_lo[0] = x0;
            slab_hi[0] = x0;
            let mut n = 0u64;
            for_each_point(&slab_lo, &slab_hi, |p| {
                if pred(p) {
                    n += 1;
                }
            });
            n
        })
        .sum()
}

/// Lattice points of `[lo, hi]` satisfying `pred`, in row-major order.
pub(crate) fn collect_points<F>(lo: &[i64], hi: &[i64], pred: F) -> Vec<Vec<i64>>
where
    F: Fn(&[i64]) -> bool + Sync,
{
    let Some(first) = slabs(lo, hi) else {
        return Vec::new();
    };
    let per_slab: Vec<Vec<Vec<i64>>> = first
        .into_par_iter()
        .map(|x0| {
            let mut slab_lo = lo.to_vec();
            let mut slab_hi = hi.to_vec();
            slab_lo[0] = x0;
            slab_hi[0] = x0;
            let mut out = Vec::new();
            for_each_point(&slab_lo, &slab_hi, |p| {
                if pred(p) {
                    out.push(p.to_vec());
                }
            });
            out
        })
        .collect();
    per_slab.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_major_order() {
        let mut seen = Vec::new();
        for_each_point(&[0, 1], &[1, 2], |p| seen.push(p.to_vec()));
        assert_eq!(seen, vec![vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn parallel_matches_sequential() {
        let lo = [0, -2, 1];
        let hi = [5, 3, 4];
        let pred = |p: &[i64]| (p[0] + 2 * p[1] - p[2]).rem_euclid(3) == 0;
        let mut seq = Vec::new();
        for_each_point(&lo, &hi, |p| {
            if pred(p) {
                seq.push(p.to_vec());
            }
        });
        assert_eq!(collect_points(&lo, &hi, pred), seq);
        assert_eq!(count_points(&lo, &hi, pred), seq.len() as u64);
    }

    #[test]
    fn empty_box() {
        assert_eq!(count_points(&[1, 0], &[0, 5], |_| true), 0);
        assert_eq!(count_points(&[0, 0], &[0, 0], |_| true), 1);
    }
}
