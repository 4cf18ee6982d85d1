//! Dense univariate polynomials over a `Field`.

use std::fmt;

use num_bigint::BigUint;

use super::field::{Extends, Field};

/// Polynomial with coefficients low degree first; never has a zero leading
/// coefficient, the zero polynomial is the empty vector.
pub struct UniPoly<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Clone for UniPoly<F> {
    fn clone(&self) -> Self {
        UniPoly {
            coeffs: self.coeffs.clone(),
        }
    }
}

impl<F: Field> PartialEq for UniPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> Eq for UniPoly<F> {}

impl<F: Field> fmt::Debug for UniPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly{:?}", self.coeffs)
    }
}

impl<F: Field> UniPoly<F> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(f: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(f: &F, c: F::Elem) -> Self {
        Self::from_coeffs(f, vec![c])
    }

    pub fn one(f: &F) -> Self {
        Self::constant(f, f.one())
    }

    pub fn x(f: &F) -> Self {
        Self::monomial(f, f.one(), 1)
    }

    pub fn monomial(f: &F, c: F::Elem, e: usize) -> Self {
        let mut v = vec![f.zero(); e + 1];
        v[e] = c;
        Self::from_coeffs(f, v)
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, f: &F, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| f.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lc(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self, f: &F) -> Option<usize> {
        self.coeffs.iter().position(|c| !f.is_zero(c))
    }

    pub fn eval(&self, f: &F, x: &F::Elem) -> F::Elem {
        let mut acc = f.zero();
        for c in self.coeffs.iter().rev() {
            acc = f.add(&f.mul(&acc, x), c);
        }
        acc
    }

    /// Evaluates at a point of an extension field.
    pub fn eval_in<E: Extends<F>>(&self, e: &E, x: &E::Elem) -> E::Elem {
        let mut acc = e.zero();
        for c in self.coeffs.iter().rev() {
            acc = e.add(&e.mul(&acc, x), &e.embed(c));
        }
        acc
    }

    pub fn map<G: Field>(&self, g: &G, phi: impl Fn(&F::Elem) -> G::Elem) -> UniPoly<G> {
        UniPoly::from_coeffs(g, self.coeffs.iter().map(phi).collect())
    }

    pub fn add(&self, f: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(f, v)
    }

    pub fn neg(&self, f: &F) -> Self {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| f.neg(c)).collect(),
        }
    }

    pub fn sub(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn scale(&self, f: &F, c: &F::Elem) -> Self {
        if f.is_zero(c) {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| f.mul(a, c)).collect(),
        }
    }

    /// Multiplies by x^k.
    pub fn shift(&self, f: &F, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![f.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }

    pub fn mul(&self, f: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let nb = other.coeffs.len();
        let mut r = vec![f.zero(); self.coeffs.len() + nb - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut r[i..i + nb], a, &other.coeffs);
        }
        Self::from_coeffs(f, r)
    }

    pub fn divrem(&self, f: &F, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(da) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if da < dd {
            return (Self::zero(), self.clone());
        }
        let inv = f.inv(d.lc().unwrap());
        let mut r = self.coeffs.clone();
        let mut q = vec![f.zero(); da - dd + 1];
        for i in (dd..=da).rev() {
            if f.is_zero(&r[i]) {
                continue;
            }
            let c = f.mul(&r[i], &inv);
            let nc = f.neg(&c);
            f.axpy(&mut r[i - dd..=i], &nc, &d.coeffs);
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(f, q), Self::from_coeffs(f, r))
    }

    pub fn rem(&self, f: &F, d: &Self) -> Self {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(da) = self.degree() else {
            return Self::zero();
        };
        if da < dd {
            return self.clone();
        }
        let inv = f.inv(d.lc().unwrap());
        let mut r = self.coeffs.clone();
        for i in (dd..=da).rev() {
            if f.is_zero(&r[i]) {
                continue;
            }
            let nc = f.neg(&f.mul(&r[i], &inv));
            f.axpy(&mut r[i - dd..=i], &nc, &d.coeffs);
        }
        r.truncate(dd);
        Self::from_coeffs(f, r)
    }

    /// Quotient of an exact division; panics if the remainder is nonzero.
    pub fn div_exact(&self, f: &F, d: &Self) -> Self {
        let (q, r) = self.divrem(f, d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn mul_mod(&self, f: &F, other: &Self, m: &Self) -> Self {
        self.mul(f, other).rem(f, m)
    }

    pub fn monic(&self, f: &F) -> Self {
        match self.lc() {
            None => Self::zero(),
            Some(c) if f.is_one(c) => self.clone(),
            Some(c) => self.scale(f, &f.inv(c)),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, f: &F, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Returns (g, s, t) with s*self + t*other = g monic.
    pub fn xgcd(&self, f: &F, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(f, &r1);
            let s2 = s0.sub(f, &q.mul(f, &s1));
            let t2 = t0.sub(f, &q.mul(f, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(c) => {
                let i = f.inv(c);
                (r0.scale(f, &i), s0.scale(f, &i), t0.scale(f, &i))
            }
        }
    }

    pub fn derivative(&self, f: &F) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let v = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| f.mul(c, &f.from_int(i as i64 + 1)))
            .collect();
        Self::from_coeffs(f, v)
    }

    pub fn pow_mod(&self, f: &F, e: &BigUint, m: &Self) -> Self {
        let base = self.rem(f, m);
        let mut acc = Self::one(f).rem(f, m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul_mod(f, &acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(f, &base, m);
            }
        }
        acc
    }

    pub fn pow(&self, f: &F, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(f, &base);
            }
        }
        acc
    }

    /// p-th root of a polynomial whose derivative vanishes.
    pub fn pth_root(&self, f: &F) -> Self {
        let p = f.characteristic() as usize;
        let v = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|c| f.pth_root(c))
            .collect();
        debug_assert!(self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % p == 0 || f.is_zero(c)));
        Self::from_coeffs(f, v)
    }

    /// f(x + a).
    pub fn taylor_shift(&self, f: &F, a: &F::Elem) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        if n == 0 || f.is_zero(a) {
            return self.clone();
        }
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = f.mul(a, &c[j + 1]);
                c[j] = f.add(&c[j], &t);
            }
        }
        Self::from_coeffs(f, c)
    }

    /// Newton interpolation through (xs[i], ys[i]) with distinct xs.
    pub fn interpolate(f: &F, xs: &[F::Elem], ys: &[F::Elem]) -> Self {
        let mut c = ys.to_vec();
        let n = xs.len();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = f.sub(&c[i], &c[i - 1]);
                let den = f.sub(&xs[i], &xs[i - j]);
                c[i] = f.div(&num, &den);
            }
        }
        let mut p = vec![f.zero(); n];
        // Horner in the Newton basis, p held as a dense coefficient vector
        let mut len = 0;
        for k in (0..n).rev() {
            // p <- p * (x - xs[k]) + c[k]
            let nx = f.neg(&xs[k]);
            if len > 0 {
                p[len] = p[len - 1].clone();
                for i in (1..len).rev() {
                    p[i] = f.add(&p[i - 1], &f.mul(&p[i], &nx));
                }
                p[0] = f.mul(&p[0], &nx);
            }
            p[0] = f.add(&p[0], &c[k]);
            len += 1;
        }
        UniPoly::from_coeffs(f, p)
    }

    /// Composition self(g).
    pub fn compose(&self, f: &F, g: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(f, g).add(f, &Self::constant(f, c.clone()));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    fn p(f: &Gf, c: &[i64]) -> UniPoly<Gf> {
        UniPoly::from_coeffs(f, c.iter().map(|&x| f.from_int(x)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let f = Gf::new(5, 1, 0).unwrap();
        let a = p(&f, &[1, 2, 3, 4, 1, 2]);
        let b = p(&f, &[3, 0, 1]);
        let (q, r) = a.divrem(&f, &b);
        assert_eq!(q.mul(&f, &b).add(&f, &r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn xgcd_bezout() {
        let f = Gf::new(7, 1, 0).unwrap();
        let a = p(&f, &[1, 0, 1]).mul(&f, &p(&f, &[2, 1]));
        let b = p(&f, &[1, 0, 1]).mul(&f, &p(&f, &[3, 1]));
        let (g, s, t) = a.xgcd(&f, &b);
        assert_eq!(g, p(&f, &[1, 0, 1]));
        assert_eq!(s.mul(&f, &a).add(&f, &t.mul(&f, &b)), g);
    }

    #[test]
    fn taylor_shift_matches_composition() {
        let f = Gf::new(3, 2, 0).unwrap();
        let a = p(&f, &[1, 2, 0, 1, 1]);
        let s = f.from_index(5);
        let lin = UniPoly::from_coeffs(&f, vec![s, f.one()]);
        assert_eq!(a.taylor_shift(&f, &s), a.compose(&f, &lin));
    }

    #[test]
    fn derivative_in_char_two_kills_even_powers() {
        let f = Gf::new(2, 1, 0).unwrap();
        assert_eq!(p(&f, &[1, 1, 1, 1]).derivative(&f), p(&f, &[1, 0, 1]));
    }
}
