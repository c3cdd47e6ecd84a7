//! Dense linear algebra over F_p.

use crate::field::{inv_mod, mul_mod, sub_mod};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    p: u32,
    cols: usize,
    rows: Vec<Vec<u32>>,
}

impl DenseMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            p,
            cols,
            rows: vec![vec![0; cols]; rows],
        }
    }

    pub fn from_rows(p: u32, cols: usize, rows: Vec<Vec<u32>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        DenseMatrix { p, cols, rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.rows[r][c] = v % self.p;
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.rows[r][c]
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows.len() {
                break;
            }
            let Some(k) = (r..self.rows.len()).find(|&k| self.rows[k][c] != 0) else {
                continue;
            };
            self.rows.swap(r, k);
            let inv = inv_mod(self.rows[r][c], p).unwrap();
            for v in self.rows[r].iter_mut() {
                *v = mul_mod(*v, inv, p);
            }
            let pivot_row = self.rows[r].clone();
            for (k, row) in self.rows.iter_mut().enumerate() {
                if k == r || row[c] == 0 {
                    continue;
                }
                let f = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *v = sub_mod(*v, mul_mod(f, pv, p), p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let p = self.p;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = sub_mod(0, m.rows[r][f], p);
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_small_matrix() {
        // over F_5: [1 2 3; 2 4 2]
        let m = DenseMatrix::from_rows(5, 3, vec![vec![1, 2, 3], vec![2, 4, 2]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        for row in [[1u32, 2, 3], [2, 4, 2]] {
            let dot: u32 = row.iter().zip(&ker[0]).map(|(a, b)| a * b).sum::<u32>() % 5;
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn kernel_dimension_matches_rank() {
        let m = DenseMatrix::from_rows(2, 4, vec![vec![1, 1, 0, 0], vec![0, 1, 1, 0], vec![1, 0, 1, 0]]);
        assert_eq!(m.rank() + m.kernel().len(), 4);
    }
}
