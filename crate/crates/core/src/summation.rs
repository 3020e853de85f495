//! Pairwise (tree) summation with a fixed block shape.
//!
//! The recursion always splits a range of length `len` at `len / 2`, so the
//! reduction order depends only on the length. This is what makes results
//! bit-identical regardless of how callers schedule work across threads.

use std::ops::Add;

use num_complex::Complex64;

const BLOCK: usize = 64;

/// Sums `term(0) + ... + term(len - 1)` pairwise without materializing the terms.
pub fn pairwise_sum_by<T, F>(len: usize, term: F) -> T
where
    T: Copy + Default + Add<Output = T>,
    F: Fn(usize) -> T,
{
    pairwise_range(0, len, &term)
}

fn pairwise_range<T, F>(start: usize, end: usize, term: &F) -> T
where
    T: Copy + Default + Add<Output = T>,
    F: Fn(usize) -> T,
{
    let len = end - start;
    if len <= BLOCK {
        let mut acc = T::default();
        for i in start..end {
            acc = acc + term(i);
        }
        return acc;
    }
    let mid = start + len / 2;
    pairwise_range(start, mid, term) + pairwise_range(mid, end, term)
}

pub fn pairwise_sum(values: &[f64]) -> f64 {
    pairwise_sum_by(values.len(), |i| values[i])
}

pub fn pairwise_sum_complex(values: &[Complex64]) -> Complex64 {
    pairwise_sum_by(values.len(), |i| values[i])
}

/// Running sum with Neumaier compensation, for prefix sums that cannot be
/// expressed as a single tree reduction.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_small() {
        assert_eq!(pairwise_sum(&[]), 0.0);
        assert_eq!(pairwise_sum(&[1.5]), 1.5);
        assert_eq!(pairwise_sum(&[1.0, 2.0, 3.0]), 6.0);
    }

    #[test]
    fn integer_valued_sums_are_exact() {
        let v: Vec<f64> = (1..=10_000).map(|i| i as f64).collect();
        assert_eq!(pairwise_sum(&v), 50_005_000.0);
    }

    #[test]
    fn beats_naive_fold_on_ill_conditioned_input() {
        // 1 followed by many tiny values: the naive fold drops every tiny term.
        let n = 1 << 20;
        let tiny = 1e-16;
        let mut v = vec![tiny; n];
        v[0] = 1.0;
        let exact = 1.0 + (n - 1) as f64 * tiny;
        let naive: f64 = v.iter().sum();
        let tree = pairwise_sum(&v);
        assert!((tree - exact).abs() < (naive - exact).abs());
        // Only the first block's 63 tiny terms are absorbed by the leading one.
        assert!((tree - exact).abs() <= 64.0 * tiny);
    }

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let mut s = NeumaierSum::new();
        for x in [1.0, 1e100, 1.0, -1e100] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn complex_sum() {
        let v = vec![Complex64::new(1.0, -1.0); 1000];
        assert_eq!(pairwise_sum_complex(&v), Complex64::new(1000.0, -1000.0));
    }
}
