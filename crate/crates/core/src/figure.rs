//! Stage-by-person survival table: entry `(i, j)` is the probability that
//! person `j` succeeds when served at stage `i`.

use alloc::vec;
use alloc::vec::Vec;

use crate::analysis::{fill_uniform, seeded_rng};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FigureMatrix {
    n: usize,
    /// Initial probabilities, ascending; column `j` is person `j`.
    initial: Vec<f64>,
    /// Row-major, `n * n`.
    cells: Vec<f64>,
}

impl FigureMatrix {
    /// Tabulates `(P0(j) - rate * i)^+` for zero-based stage `i`, after
    /// sorting `initial` ascending so the weakest person is column 0.
    pub fn tabulate(mut initial: Vec<f64>, rate: f64) -> Result<Self> {
        if initial.is_empty() {
            return Err(Error::Empty);
        }
        if !(rate >= 0.0 && rate.is_finite()) {
            return Err(Error::NegativeDecay { index: 0, value: rate });
        }
        if let Some((index, &value)) =
            initial.iter().enumerate().find(|(_, p)| !(0.0..=1.0).contains(*p))
        {
            return Err(Error::ProbabilityOutOfRange { index, value });
        }
        initial.sort_unstable_by(f64::total_cmp);
        let n = initial.len();
        let mut cells = vec![0.0; n * n];
        for (i, row) in cells.chunks_exact_mut(n).enumerate() {
            let drop = rate * i as f64;
            for (cell, &p) in row.iter_mut().zip(&initial) {
                let x = p - drop;
                *cell = if x > 0.0 { x } else { 0.0 };
            }
        }
        Ok(FigureMatrix { n, initial, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn initial(&self) -> &[f64] {
        &self.initial
    }

    /// Zero-based stage `i`, person `j`.
    pub fn cell(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.cells.chunks_exact(self.n)
    }

    /// Product along the main diagonal: weakest first, all succeed.
    pub fn diagonal_product(&self) -> f64 {
        (0..self.n).map(|i| self.cell(i, i)).product()
    }

    /// Product along the anti-diagonal: strongest first, all succeed.
    pub fn anti_diagonal_product(&self) -> f64 {
        (0..self.n).map(|i| self.cell(i, self.n - 1 - i)).product()
    }
}

/// Draws `n` initial probabilities from `Uniform(low, high)` with the
/// seeded generator and tabulates them.
pub fn generate_figure_matrix(
    seed: u64,
    n: usize,
    rate: f64,
    low: f64,
    high: f64,
) -> Result<FigureMatrix> {
    if !(0.0 <= low && low < high && high <= 1.0) {
        return Err(Error::InvalidModel("bounds must satisfy 0 <= low < high <= 1"));
    }
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut initial = vec![0.0; n];
    fill_uniform(&mut seeded_rng(seed), low, high, &mut initial);
    FigureMatrix::tabulate(initial, rate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cave_matrix_shape() {
        let m = generate_figure_matrix(11, 13, 0.06, 0.5, 1.0).unwrap();
        assert_eq!(m.n(), 13);
        assert!(m.cell(0, 12) > 0.5 && m.cell(0, 12) < 1.0);
        let weakest = m.initial()[0];
        let corner = m.cell(12, 0);
        if weakest < 0.72 {
            assert_eq!(corner, 0.0);
        } else {
            assert_eq!(corner, weakest - 0.72);
        }
    }

    #[test]
    fn no_decay_repeats_first_row() {
        let m = generate_figure_matrix(5, 6, 0.0, 0.2, 0.8).unwrap();
        let first = m.rows().next().unwrap().to_vec();
        assert!(m.rows().all(|r| r == first.as_slice()));
    }

    #[test]
    fn tabulate_sorts_columns() {
        let m = FigureMatrix::tabulate(alloc::vec![0.9, 0.3, 0.6], 0.25).unwrap();
        assert_eq!(m.initial(), &[0.3, 0.6, 0.9]);
        assert_eq!(m.cell(1, 0), 0.3 - 0.25);
        assert_eq!(m.cell(2, 0), 0.0);
        assert_eq!(m.cell(2, 2), 0.9 - 0.5);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(generate_figure_matrix(1, 0, 0.1, 0.5, 1.0).is_err());
        assert!(generate_figure_matrix(1, 3, 0.1, 0.7, 0.5).is_err());
        assert!(generate_figure_matrix(1, 3, -0.1, 0.5, 1.0).is_err());
    }
}
