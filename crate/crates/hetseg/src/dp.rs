//! Exact segmentation engine, generic over the per-segment cost.
//!
//! `solve` fills the classic dynamic program over (number of segments,
//! prefix length); `brute_force` enumerates every admissible segmentation.
//! Both break cost ties the same way, preferring the smaller last breakpoint
//! and recursing leftwards, so their results are bit-comparable: for the same
//! segmentation both accumulate segment costs left to right, hence produce
//! identical floating-point totals.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Row-parallel threshold: below this the serial inner loop wins.
const PAR_MIN_N: usize = 2048;

pub(crate) struct DpTables {
    /// Optimal cost for K = 1..=kmax segments, index K - 1. Infeasible K
    /// (K * min_len > n) would be infinite; callers bound kmax to avoid that.
    pub contrast: Vec<f64>,
    /// back[K - 2][t]: optimal last breakpoint when covering 1..=t with K
    /// segments.
    back: Vec<Vec<usize>>,
    n: usize,
}

impl DpTables {
    /// Breakpoints of the optimal K-segmentation of the full series.
    pub fn breakpoints(&self, k: usize) -> Vec<usize> {
        assert!(k >= 1 && k <= self.contrast.len());
        let mut bp = Vec::with_capacity(k - 1);
        let mut t = self.n;
        for kk in (2..=k).rev() {
            let s = self.back[kk - 2][t];
            bp.push(s);
            t = s;
        }
        bp.reverse();
        bp
    }
}

/// Fills the dynamic program for segment costs given by `cost(a, b)` over
/// 1-based inclusive ranges. Requires kmax * min_len <= n and min_len >= 1.
pub(crate) fn solve<F>(n: usize, kmax: usize, min_len: usize, cost: F) -> DpTables
where
    F: Fn(usize, usize) -> f64 + Sync,
{
    assert!(min_len >= 1);
    assert!(kmax >= 1);
    assert!(kmax * min_len <= n, "kmax {kmax} infeasible for n {n}");

    let mut prev: Vec<f64> = (0..=n)
        .map(|t| {
            if t >= min_len {
                cost(1, t)
            } else {
                f64::INFINITY
            }
        })
        .collect();
    let mut contrast = vec![0.0; kmax];
    contrast[0] = prev[n];
    let mut back: Vec<Vec<usize>> = Vec::with_capacity(kmax - 1);

    for k in 2..=kmax {
        let first_s = (k - 1) * min_len;
        let cell = |t: usize| -> (f64, usize) {
            if t < k * min_len {
                return (f64::INFINITY, 0);
            }
            let mut best = f64::INFINITY;
            let mut arg = 0usize;
            // Ascending scan with strict improvement keeps the smallest
            // optimal split, which is the tie-break contract.
            for (s, &head) in (first_s..).zip(&prev[first_s..=t - min_len]) {
                if head.is_finite() {
                    let total = head + cost(s + 1, t);
                    if total < best {
                        best = total;
                        arg = s;
                    }
                }
            }
            (best, arg)
        };
        let row: Vec<(f64, usize)> = if n >= PAR_MIN_N {
            (0..=n).into_par_iter().map(cell).collect()
        } else {
            (0..=n).map(cell).collect()
        };
        let mut vals = Vec::with_capacity(n + 1);
        let mut args = Vec::with_capacity(n + 1);
        for (v, a) in row {
            vals.push(v);
            args.push(a);
        }
        contrast[k - 1] = vals[n];
        back.push(args);
        prev = vals;
    }

    DpTables { contrast, back, n }
}

fn binomial_capped(n: usize, k: usize, cap: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if acc > cap {
            return acc;
        }
    }
    acc
}

/// True when `a` precedes `b` in the tie-break order: compare breakpoints
/// from the last one backwards, smaller first.
fn tie_break_less(a: &[usize], b: &[usize]) -> bool {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return x < y;
        }
    }
    false
}

/// Exhaustive optimal K-segmentation with the same tie-break as `solve`.
/// Refuses instances with more than `cap` candidate segmentations.
pub(crate) fn brute_force<F>(
    n: usize,
    k: usize,
    min_len: usize,
    cost: F,
    cap: u128,
) -> Result<(f64, Vec<usize>)>
where
    F: Fn(usize, usize) -> f64,
{
    assert!(min_len >= 1);
    if k < 1 || k * min_len > n {
        return Err(Error::InvalidArgument(format!(
            "{k} segments of length >= {min_len} do not fit in {n} observations"
        )));
    }
    let candidates = binomial_capped(n - 1, k - 1, cap);
    if candidates > cap {
        return Err(Error::TooManySegmentations { candidates, cap });
    }

    struct Search<'a, F> {
        n: usize,
        k: usize,
        min_len: usize,
        cost: &'a F,
        current: Vec<usize>,
        best_cost: f64,
        best: Option<Vec<usize>>,
    }

    impl<F: Fn(usize, usize) -> f64> Search<'_, F> {
        fn descend(&mut self, depth: usize, prev: usize, acc: f64) {
            if depth == self.k - 1 {
                let total = acc + (self.cost)(prev + 1, self.n);
                let better = total < self.best_cost
                    || (total == self.best_cost
                        && self
                            .best
                            .as_ref()
                            .is_some_and(|b| tie_break_less(&self.current, b)));
                if better || self.best.is_none() {
                    self.best_cost = total;
                    self.best = Some(self.current.clone());
                }
                return;
            }
            let remaining = (self.k - 1 - depth) * self.min_len;
            for t in prev + self.min_len..=self.n - remaining {
                let acc_t = acc + (self.cost)(prev + 1, t);
                self.current.push(t);
                self.descend(depth + 1, t, acc_t);
                self.current.pop();
            }
        }
    }

    let mut search = Search {
        n,
        k,
        min_len,
        cost: &cost,
        current: Vec::with_capacity(k - 1),
        best_cost: f64::INFINITY,
        best: None,
    };
    search.descend(0, 0, 0.0);
    let bp = search.best.expect("at least one segmentation exists");
    Ok((search.best_cost, bp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sse_cost(y: &[f64]) -> impl Fn(usize, usize) -> f64 + Sync + '_ {
        move |a: usize, b: usize| {
            let seg = &y[a - 1..b];
            let mean = seg.iter().sum::<f64>() / seg.len() as f64;
            seg.iter().map(|v| (v - mean) * (v - mean)).sum()
        }
    }

    #[test]
    fn recovers_a_clean_step() {
        let y = [0.0, 0.0, 0.0, 5.0, 5.0, 5.0];
        let tables = solve(6, 2, 1, sse_cost(&y));
        assert_eq!(tables.breakpoints(2), vec![3]);
        assert_eq!(tables.contrast[1], 0.0);
    }

    #[test]
    fn ties_prefer_the_smaller_last_breakpoint() {
        // Constant series: every 2-segmentation costs zero.
        let y = [1.0; 6];
        let tables = solve(6, 3, 1, sse_cost(&y));
        assert_eq!(tables.breakpoints(2), vec![1]);
        assert_eq!(tables.breakpoints(3), vec![1, 2]);
        let (c, bp) = brute_force(6, 3, 1, sse_cost(&y), 1 << 20).unwrap();
        assert_eq!(c, 0.0);
        assert_eq!(bp, vec![1, 2]);
    }

    #[test]
    fn brute_force_rejects_oversized_instances() {
        let y = vec![0.0; 64];
        let err = brute_force(64, 9, 1, sse_cost(&y), 1_000_000).unwrap_err();
        assert!(matches!(err, Error::TooManySegmentations { .. }));
    }

    #[test]
    fn min_len_is_respected() {
        let y = [0.0, 9.0, 0.0, 0.0, 9.0, 9.0];
        let tables = solve(6, 3, 2, sse_cost(&y));
        for k in 1..=3 {
            for w in tables.breakpoints(k).windows(2) {
                assert!(w[1] - w[0] >= 2);
            }
            let bp = tables.breakpoints(k);
            if let Some(&first) = bp.first() {
                assert!(first >= 2);
            }
            if let Some(&last) = bp.last() {
                assert!(last <= 4);
            }
        }
    }

    #[test]
    fn tie_break_order_reads_from_the_tail() {
        assert!(tie_break_less(&[2, 3], &[1, 5]));
        assert!(!tie_break_less(&[1, 5], &[2, 3]));
        assert!(tie_break_less(&[1, 5], &[2, 5]));
        assert!(!tie_break_less(&[2, 5], &[2, 5]));
    }

    #[test]
    fn binomial_counts_are_exact_below_the_cap() {
        assert_eq!(binomial_capped(14, 3, 1 << 30), 364);
        assert_eq!(binomial_capped(5, 0, 10), 1);
        assert_eq!(binomial_capped(5, 6, 10), 0);
        assert!(binomial_capped(199, 39, 1_000_000) > 1_000_000);
    }
}
