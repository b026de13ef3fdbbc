//! Compensated (Kahan-Babuska / Neumaier) accumulation.

use std::ops::AddAssign;

#[derive(Debug, Default, Clone, Copy)]
pub struct NeumaierSum {
    sum: f64,
    carry: f64,
    magnitude: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total(&self) -> f64 {
        self.sum + self.carry
    }

    /// Sum of the absolute values of every term added so far.
    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
        self.magnitude += x.abs();
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::new();
        for x in iter {
            s += x;
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_small_terms_next_to_large_ones() {
        let s: NeumaierSum = [1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.total(), 1.0);
    }

    #[test]
    fn many_tenths() {
        let s: NeumaierSum = std::iter::repeat(0.1).take(1_000_000).collect();
        assert!((s.total() - 100_000.0).abs() < 1e-9);
        let naive: f64 = std::iter::repeat(0.1).take(1_000_000).sum();
        assert!((s.total() - 100_000.0).abs() <= (naive - 100_000.0).abs());
    }
}
