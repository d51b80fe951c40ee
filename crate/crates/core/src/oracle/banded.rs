//! Banded LU with partial pivoting and a 1-norm condition estimate.

/// Square matrix with `kl` sub- and `ku` superdiagonals; storage leaves room
/// for the `kl` extra superdiagonals created by row interchanges.
#[derive(Debug, Clone)]
pub struct Banded {
    n: usize,
    kl: usize,
    ku: usize,
    width: usize,
    data: Vec<f64>,
}

impl Banded {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let width = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            width,
            data: vec![0.0; n * width],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(j + self.kl >= i && j <= i + self.ku + self.kl, "({i},{j}) outside band");
        i * self.width + (j + self.kl - i)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j + self.kl < i || j > i + self.ku + self.kl {
            0.0
        } else {
            self.data[self.slot(i, j)]
        }
    }

    /// Add `v` to entry `(i, j)`, which must lie within the declared band.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        assert!(j + self.kl >= i && j <= i + self.ku, "({i},{j}) outside band");
        let s = self.slot(i, j);
        self.data[s] += v;
    }

    /// Zero row `i` inside the band.
    pub fn clear_row(&mut self, i: usize) {
        let start = i * self.width;
        self.data[start..start + self.width].fill(0.0);
    }

    fn col_range(&self, i: usize) -> std::ops::Range<usize> {
        i.saturating_sub(self.kl)..(i + self.ku + 1).min(self.n)
    }

    pub fn norm1(&self) -> f64 {
        let mut cols = vec![0.0; self.n];
        for i in 0..self.n {
            for j in self.col_range(i) {
                cols[j] += self.get(i, j).abs();
            }
        }
        cols.into_iter().fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.col_range(i).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Factor in place. Returns `None` when a zero pivot is met.
    pub fn factor(mut self) -> Option<BandedLu> {
        let (n, kl, ku) = (self.n, self.kl, self.ku);
        let mut pivots = vec![0usize; n];
        for k in 0..n {
            let last_row = (k + kl).min(n - 1);
            let last_col = (k + ku + kl).min(n - 1);
            let p = (k..=last_row)
                .max_by(|&x, &y| self.get(x, k).abs().total_cmp(&self.get(y, k).abs()))
                .unwrap_or(k);
            pivots[k] = p;
            if self.get(p, k) == 0.0 {
                return None;
            }
            if p != k {
                for j in k..=last_col {
                    let (sk, sp) = (self.slot(k, j), self.slot(p, j));
                    self.data.swap(sk, sp);
                }
            }
            let pivot = self.get(k, k);
            for i in k + 1..=last_row {
                let si = self.slot(i, k);
                let l = self.data[si] / pivot;
                self.data[si] = l;
                if l == 0.0 {
                    continue;
                }
                for j in k + 1..=last_col {
                    let (sij, skj) = (self.slot(i, j), self.slot(k, j));
                    self.data[sij] -= l * self.data[skj];
                }
            }
        }
        Some(BandedLu { a: self, pivots })
    }
}

#[derive(Debug, Clone)]
pub struct BandedLu {
    a: Banded,
    pivots: Vec<usize>,
}

impl BandedLu {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let a = &self.a;
        let (n, kl, reach) = (a.n, a.kl, a.ku + a.kl);
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.pivots[k]);
            for i in k + 1..=(k + kl).min(n - 1) {
                x[i] -= a.get(i, k) * x[k];
            }
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..=(i + reach).min(n - 1) {
                s -= a.get(i, j) * x[j];
            }
            x[i] = s / a.get(i, i);
        }
        x
    }

    /// Solve `Aᵀ x = b`.
    pub fn solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        let a = &self.a;
        let (n, kl, reach) = (a.n, a.kl, a.ku + a.kl);
        let mut x = b.to_vec();
        for i in 0..n {
            let mut s = x[i];
            for j in i.saturating_sub(reach)..i {
                s -= a.get(j, i) * x[j];
            }
            x[i] = s / a.get(i, i);
        }
        for k in (0..n).rev() {
            for i in k + 1..=(k + kl).min(n - 1) {
                x[k] -= a.get(i, k) * x[i];
            }
            x.swap(k, self.pivots[k]);
        }
        x
    }

    /// Hager's estimate of `‖A⁻¹‖₁`.
    pub fn inverse_norm1_estimate(&self) -> f64 {
        let n = self.a.n;
        let mut x = vec![1.0 / n as f64; n];
        let mut estimate = 0.0;
        let mut last_j = usize::MAX;
        for _ in 0..5 {
            let y = self.solve(&x);
            estimate = y.iter().map(|v| v.abs()).sum();
            let xi: Vec<f64> = y.iter().map(|&v| if v >= 0.0 { 1.0 } else { -1.0 }).collect();
            let z = self.solve_transpose(&xi);
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(j, v)| (j, v.abs()))
                .fold((0, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| a * b).sum();
            if zmax <= ztx || j == last_j {
                break;
            }
            last_j = j;
            x.fill(0.0);
            x[j] = 1.0;
        }
        estimate
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize) -> Banded {
        let mut m = Banded::zeros(n, 2, 1);
        for i in 0..n {
            // weak diagonal forces row interchanges
            m.add(i, i, 0.1 + i as f64 * 0.01);
            if i + 1 < n {
                m.add(i, i + 1, -1.0);
            }
            if i >= 1 {
                m.add(i, i - 1, 2.0);
            }
            if i >= 2 {
                m.add(i, i - 2, 0.5);
            }
        }
        m
    }

    #[test]
    fn solves_and_transposes() {
        let n = 40;
        let m = sample(n);
        let x: Vec<f64> = (0..n).map(|i| (i as f64 * 0.37).sin()).collect();
        let b = m.mul_vec(&x);
        let lu = m.clone().factor().unwrap();
        let got = lu.solve(&b);
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).abs() < 1e-10);
        }
        // Aᵀ from explicit entries
        let bt: Vec<f64> = (0..n).map(|j| (0..n).map(|i| m.get(i, j) * x[i]).sum()).collect();
        let got = lu.solve_transpose(&bt);
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).abs() < 1e-10);
        }
    }

    #[test]
    fn condition_of_diagonal() {
        let mut m = Banded::zeros(5, 1, 1);
        for (i, d) in [1.0, 2.0, 4.0, 0.5, 10.0].into_iter().enumerate() {
            m.add(i, i, d);
        }
        let norm = m.norm1();
        let lu = m.factor().unwrap();
        assert_eq!(norm, 10.0);
        assert!((lu.inverse_norm1_estimate() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn singular_detected() {
        let mut m = Banded::zeros(3, 1, 1);
        m.add(0, 0, 1.0);
        m.add(1, 1, 1.0);
        assert!(m.factor().is_none());
    }
}
