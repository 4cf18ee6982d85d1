//! Dense bivariate polynomials, used on the hot paths (elimination, local
//! intersection numbers) where sparse bookkeeping costs too much.

use std::fmt;

use super::MPoly;
use crate::gf::{Extends, Field, UniPoly};

/// `rows[j][i]` is the coefficient of x^i y^j. Rows and the row list carry
/// no trailing zeros.
pub struct BiPoly<F: Field> {
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> Clone for BiPoly<F> {
    fn clone(&self) -> Self {
        BiPoly {
            rows: self.rows.clone(),
        }
    }
}

impl<F: Field> PartialEq for BiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
    }
}

impl<F: Field> fmt::Debug for BiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly{:?}", self.rows)
    }
}

impl<F: Field> BiPoly<F> {
    pub fn zero() -> Self {
        BiPoly { rows: Vec::new() }
    }

    pub fn from_rows(f: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let mut b = BiPoly { rows };
        b.trim(f);
        b
    }

    /// Converts a polynomial in variables (x, y) = (`vars[0]`, `vars[1]`)
    /// over a subfield; other variables must not occur.
    pub fn from_mpoly<G: Field>(f: &F, p: &MPoly<G>, vars: [usize; 2]) -> Self
    where
        F: Extends<G>,
    {
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();
        for (m, c) in p.terms() {
            debug_assert!(m
                .iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || i == vars[0] || i == vars[1]));
            let (i, j) = (m[vars[0]] as usize, m[vars[1]] as usize);
            if rows.len() <= j {
                rows.resize(j + 1, Vec::new());
            }
            if rows[j].len() <= i {
                rows[j].resize(i + 1, f.zero());
            }
            rows[j][i] = f.add(&rows[j][i], &f.embed(c));
        }
        Self::from_rows(f, rows)
    }

    pub fn to_mpoly(&self, f: &F) -> MPoly<F> {
        let mut terms = Vec::new();
        for (j, row) in self.rows.iter().enumerate() {
            for (i, c) in row.iter().enumerate() {
                if !f.is_zero(c) {
                    terms.push((smallvec::smallvec![i as u32, j as u32], c.clone()));
                }
            }
        }
        MPoly::from_terms(f, 2, terms)
    }

    fn trim(&mut self, f: &F) {
        for r in &mut self.rows {
            while r.last().is_some_and(|c| f.is_zero(c)) {
                r.pop();
            }
        }
        while self.rows.last().is_some_and(|r| r.is_empty()) {
            self.rows.pop();
        }
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn coeff(&self, f: &F, i: usize, j: usize) -> F::Elem {
        self.rows
            .get(j)
            .and_then(|r| r.get(i))
            .cloned()
            .unwrap_or_else(|| f.zero())
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.rows
            .iter()
            .filter_map(|r| r.len().checked_sub(1))
            .max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(j, r)| r.len().checked_sub(1).map(|d| d + j))
            .max()
    }

    /// f(x, 0).
    pub fn restrict_y0(&self, f: &F) -> UniPoly<F> {
        UniPoly::from_coeffs(f, self.rows.first().cloned().unwrap_or_default())
    }

    /// f / y; the caller guarantees y divides f.
    pub fn div_y(&self) -> Self {
        debug_assert!(self.rows.first().is_none_or(|r| r.is_empty()));
        BiPoly {
            rows: self.rows.iter().skip(1).cloned().collect(),
        }
    }

    /// Coefficients in y of f(a, y), keeping the formal length
    /// `y_degree + 1` (the top entries may vanish).
    pub fn eval_x(&self, f: &F, a: &F::Elem) -> Vec<F::Elem> {
        self.rows
            .iter()
            .map(|r| {
                let mut acc = f.zero();
                for c in r.iter().rev() {
                    acc = f.add(&f.mul(&acc, a), c);
                }
                acc
            })
            .collect()
    }

    /// f(x, y) with x specialised to an element of an extension, given the
    /// powers 1, a, a^2, ... of that element.
    pub fn eval_x_powers<E: Extends<F>>(&self, e: &E, apow: &[E::Elem]) -> Vec<E::Elem> {
        self.rows
            .iter()
            .map(|r| {
                let mut acc = e.zero();
                for (c, p) in r.iter().zip(apow) {
                    e.scale_acc(&mut acc, c, p);
                }
                acc
            })
            .collect()
    }

    /// f(x + a, y + b).
    pub fn translate(&self, f: &F, a: &F::Elem, b: &F::Elem) -> Self {
        let mut rows: Vec<Vec<F::Elem>> = self
            .rows
            .iter()
            .map(|r| {
                UniPoly::from_coeffs(f, r.clone())
                    .taylor_shift(f, a)
                    .into_coeffs()
            })
            .collect();
        if !f.is_zero(b) {
            let n = rows.len();
            for i in 0..n {
                for j in (i..n.saturating_sub(1)).rev() {
                    let (lo, hi) = rows.split_at_mut(j + 1);
                    let src = &hi[0];
                    let dst = &mut lo[j];
                    if dst.len() < src.len() {
                        dst.resize(src.len(), f.zero());
                    }
                    f.axpy(&mut dst[..src.len()], b, src);
                }
            }
        }
        Self::from_rows(f, rows)
    }

    /// self - c * x^k * other.
    pub fn sub_shifted(&self, f: &F, c: &F::Elem, k: usize, other: &Self) -> Self {
        let mut rows = self.rows.clone();
        if rows.len() < other.rows.len() {
            rows.resize(other.rows.len(), Vec::new());
        }
        let nc = f.neg(c);
        for (j, r) in other.rows.iter().enumerate() {
            if r.is_empty() {
                continue;
            }
            let need = r.len() + k;
            if rows[j].len() < need {
                rows[j].resize(need, f.zero());
            }
            f.axpy(&mut rows[j][k..need], &nc, r);
        }
        Self::from_rows(f, rows)
    }

    pub fn scale(&self, f: &F, c: &F::Elem) -> Self {
        Self::from_rows(
            f,
            self.rows
                .iter()
                .map(|r| r.iter().map(|x| f.mul(x, c)).collect())
                .collect(),
        )
    }

    /// Partial derivative in x (`var` = 0) or y (`var` = 1).
    pub fn derivative(&self, f: &F, var: usize) -> Self {
        let rows = if var == 0 {
            self.rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .skip(1)
                        .map(|(i, c)| f.mul(c, &f.from_int(i as i64)))
                        .collect()
                })
                .collect()
        } else {
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, r)| r.iter().map(|c| f.mul(c, &f.from_int(j as i64))).collect())
                .collect()
        };
        Self::from_rows(f, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;
    use crate::mpoly::vars;

    #[test]
    fn translate_matches_substitution() {
        let f = Gf::new(5, 1, 0).unwrap();
        let v = vars(&f, 2);
        let p = v[0]
            .pow(&f, 3)
            .add(&f, &v[0].mul(&f, &v[1].pow(&f, 2)))
            .add(&f, &v[1].scale(&f, &f.from_int(2)));
        let (a, b) = (f.from_int(2), f.from_int(3));
        let shifted = p.substitute(
            &f,
            &[
                v[0].add(&f, &MPoly::constant(&f, a, 2)),
                v[1].add(&f, &MPoly::constant(&f, b, 2)),
            ],
        );
        let bp = BiPoly::from_mpoly(&f, &p, [0, 1]);
        assert_eq!(bp.translate(&f, &a, &b).to_mpoly(&f), shifted);
    }

    #[test]
    fn derivative_matches_sparse() {
        let f = Gf::new(3, 1, 0).unwrap();
        let v = vars(&f, 2);
        let p = v[0]
            .pow(&f, 4)
            .mul(&f, &v[1].pow(&f, 2))
            .add(&f, &v[1].pow(&f, 5));
        let bp = BiPoly::from_mpoly(&f, &p, [0, 1]);
        assert_eq!(bp.derivative(&f, 0).to_mpoly(&f), p.derivative(&f, 0));
        assert_eq!(bp.derivative(&f, 1).to_mpoly(&f), p.derivative(&f, 1));
    }
}
