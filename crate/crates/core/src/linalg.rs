//! Dense matrices over a `Field`: row reduction, kernels, inverses.

use std::fmt;

use crate::gf::Field;

/// Row-major dense matrix.
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Clone for Matrix<F> {
    fn clone(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.clone(),
        }
    }
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} {:?}", self.rows, self.cols, self.data)
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(f: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn identity(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.data[i * n + i] = f.one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, f: &F, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    /// `row[dst] += c * row[src]`.
    fn add_row_multiple(&mut self, f: &F, dst: usize, src: usize, c: &F::Elem) {
        let n = self.cols;
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * n);
            (&mut lo[dst * n..dst * n + n], &hi[..n])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * n);
            (&mut hi[..n], &lo[src * n..src * n + n])
        };
        f.axpy(a, c, b);
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let n = self.cols;
        for k in 0..n {
            self.data.swap(i * n + k, j * n + k);
        }
    }

    fn scale_row(&mut self, f: &F, i: usize, c: &F::Elem) {
        let n = self.cols;
        for x in &mut self.data[i * n..(i + 1) * n] {
            *x = f.mul(x, c);
        }
    }

    /// Reduced row echelon form in place; pivots are the first nonzero
    /// entries found scanning columns left to right. Returns pivot columns.
    pub fn rref(&mut self, f: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c));
            self.scale_row(f, r, &inv);
            for i in 0..self.rows {
                if i != r && !f.is_zero(self.get(i, c)) {
                    let nc = f.neg(self.get(i, c));
                    self.add_row_multiple(f, i, r, &nc);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &F) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the right kernel {v : M v = 0}, one vector per free column,
    /// with a 1 in that column.
    pub fn kernel_basis(&self, f: &F) -> Vec<Vec<F::Elem>> {
        let mut m = self.clone();
        let pivots = m.forward_reduce(f);
        m.back_substitute(f, &pivots);
        let mut is_pivot = vec![None; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(r);
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Row echelon form with unit pivots; rows are eliminated only below the
    /// pivot. Cheaper than `rref` on tall matrices.
    fn forward_reduce(&mut self, f: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.get(r, c));
            self.scale_row(f, r, &inv);
            for i in r + 1..self.rows {
                if !f.is_zero(self.get(i, c)) {
                    let nc = f.neg(self.get(i, c));
                    self.add_row_multiple(f, i, r, &nc);
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.rows = r;
        self.data.truncate(r * self.cols);
        pivots
    }

    fn back_substitute(&mut self, f: &F, pivots: &[usize]) {
        for (r, &c) in pivots.iter().enumerate().rev() {
            for i in 0..r {
                if !f.is_zero(self.get(i, c)) {
                    let nc = f.neg(self.get(i, c));
                    self.add_row_multiple(f, i, r, &nc);
                }
            }
        }
    }

    pub fn inverse(&self, f: &F) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let piv = aug.rref(f);
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    pub fn determinant(&self, f: &F) -> F::Elem {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv);
            for i in c + 1..n {
                if !f.is_zero(m.get(i, c)) {
                    let nc = f.neg(&f.mul(m.get(i, c), &inv));
                    m.add_row_multiple(f, i, c, &nc);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    #[test]
    fn kernel_of_dependent_rows() {
        let f = Gf::new(5, 1, 0).unwrap();
        let e = |x: i64| f.from_int(x);
        let m = Matrix::<Gf>::from_rows(vec![vec![e(1), e(2), e(3)], vec![e(2), e(4), e(0)]]);
        let k = m.kernel_basis(&f);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&f, &k[0]).iter().all(|x| f.is_zero(x)));
    }

    #[test]
    fn inverse_and_determinant() {
        let f = Gf::new(7, 1, 0).unwrap();
        let e = |x: i64| f.from_int(x);
        let m = Matrix::<Gf>::from_rows(vec![vec![e(2), e(1)], vec![e(1), e(1)]]);
        assert_eq!(m.determinant(&f), e(1));
        let inv = m.inverse(&f).unwrap();
        assert_eq!(inv.row(0), &[e(1), e(-1)]);
        let sing = Matrix::<Gf>::from_rows(vec![vec![e(1), e(2)], vec![e(2), e(4)]]);
        assert!(sing.inverse(&f).is_none());
        assert_eq!(sing.determinant(&f), e(0));
    }
}
