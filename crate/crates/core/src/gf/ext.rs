//! Simple algebraic extensions F[x]/(m) of a `Field`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use super::field::{Extends, Field};
use super::poly::UniPoly;
use crate::linalg::Matrix;

/// F[x]/(m) for a monic irreducible m. Elements are coefficient vectors of
/// length deg m in the power basis of x.
pub struct Ext<F: Field>(Arc<ExtInner<F>>);

struct ExtInner<F: Field> {
    base: F,
    modulus: Vec<F::Elem>,
    d: usize,
    /// Inverse of the matrix of a -> a^p on coefficient vectors (after the
    /// coefficients themselves are raised to the p-th power).
    frob_inv: OnceLock<Matrix<F>>,
}

impl<F: Field> Clone for Ext<F> {
    fn clone(&self) -> Self {
        Ext(Arc::clone(&self.0))
    }
}

impl<F: Field> PartialEq for Ext<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.base == other.0.base && self.0.modulus == other.0.modulus)
    }
}

impl<F: Field> fmt::Debug for Ext<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ext[{:?} / {:?}]", self.0.base, self.0.modulus)
    }
}

impl<F: Field> Ext<F> {
    /// The modulus must be monic irreducible; this is not checked.
    pub fn new(base: &F, modulus: &UniPoly<F>) -> Self {
        let m = modulus.monic(base);
        let d = m.degree().expect("modulus must be nonconstant");
        assert!(d >= 1, "modulus must be nonconstant");
        Ext(Arc::new(ExtInner {
            base: base.clone(),
            modulus: m.into_coeffs(),
            d,
            frob_inv: OnceLock::new(),
        }))
    }

    pub fn base(&self) -> &F {
        &self.0.base
    }

    /// Degree over the base field.
    pub fn rel_degree(&self) -> usize {
        self.0.d
    }

    pub fn modulus(&self) -> UniPoly<F> {
        UniPoly::from_coeffs(&self.0.base, self.0.modulus.clone())
    }

    /// Class of x.
    pub fn gen(&self) -> Vec<F::Elem> {
        self.from_poly(&UniPoly::x(&self.0.base))
    }

    pub fn from_poly(&self, p: &UniPoly<F>) -> Vec<F::Elem> {
        let r = p.rem(&self.0.base, &self.modulus());
        let mut v = r.into_coeffs();
        v.resize(self.0.d, self.0.base.zero());
        v
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> UniPoly<F> {
        UniPoly::from_coeffs(&self.0.base, a.to_vec())
    }

    /// The base-field value of an element that lies in the base field.
    pub fn as_base(&self, a: &[F::Elem]) -> Option<F::Elem> {
        let b = &self.0.base;
        if a[1..].iter().all(|c| b.is_zero(c)) {
            Some(a[0].clone())
        } else {
            None
        }
    }

    /// a^|F|, the Frobenius relative to the base field.
    pub fn rel_frobenius(&self, a: &Vec<F::Elem>) -> Vec<F::Elem> {
        self.pow_big(a, &self.0.base.order())
    }

    fn reduce(&self, mut prod: Vec<F::Elem>) -> Vec<F::Elem> {
        let b = &self.0.base;
        let d = self.0.d;
        let m = &self.0.modulus;
        if prod.len() > d {
            for i in (d..prod.len()).rev() {
                if b.is_zero(&prod[i]) {
                    continue;
                }
                let nc = b.neg(&prod[i]);
                b.axpy(&mut prod[i - d..i], &nc, &m[..d]);
                prod[i] = b.zero();
            }
        }
        prod.resize(d, b.zero());
        prod
    }

    fn frob_inverse(&self) -> &Matrix<F> {
        self.0.frob_inv.get_or_init(|| {
            let b = &self.0.base;
            let d = self.0.d;
            let xp = self.pow(&self.gen(), b.characteristic());
            let mut cols = Vec::with_capacity(d);
            let mut cur = self.one();
            for _ in 0..d {
                cols.push(cur.clone());
                cur = self.mul(&cur, &xp);
            }
            let mut m = Matrix::zeros(b, d, d);
            for (j, col) in cols.iter().enumerate() {
                for (i, c) in col.iter().enumerate() {
                    m.set(i, j, c.clone());
                }
            }
            m.inverse(b)
                .expect("Frobenius is bijective on a finite field")
        })
    }
}

impl<F: Field> Field for Ext<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.0.base.zero(); self.0.d]
    }

    fn one(&self) -> Self::Elem {
        let mut v = self.zero();
        v[0] = self.0.base.one();
        v
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.0.base.is_zero(c))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        let b = &self.0.base;
        b.is_one(&a[0]) && a[1..].iter().all(|c| b.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.0.base;
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.0.base;
        a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        let f = &self.0.base;
        a.iter().map(|x| f.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.0.base;
        let d = self.0.d;
        if d == 1 {
            return vec![f.mul(&a[0], &b[0])];
        }
        let mut prod = vec![f.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            f.axpy(&mut prod[i..i + d], x, b);
        }
        self.reduce(prod)
    }

    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        assert!(!self.is_zero(a), "inverse of zero");
        let f = &self.0.base;
        if self.0.d == 1 {
            return vec![f.inv(&a[0])];
        }
        let (g, s, _) = self.to_poly(a).xgcd(f, &self.modulus());
        debug_assert_eq!(g.degree(), Some(0));
        self.from_poly(&s)
    }

    fn characteristic(&self) -> u64 {
        self.0.base.characteristic()
    }

    fn degree(&self) -> usize {
        self.0.base.degree() * self.0.d
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        Extends::<F>::embed(self, &self.0.base.from_int(n))
    }

    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let f = &self.0.base;
        if self.0.d == 1 {
            return vec![f.pth_root(&a[0])];
        }
        let v = self.frob_inverse().mul_vec(f, a);
        v.iter().map(|c| f.pth_root(c)).collect()
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        (0..self.0.d).map(|_| self.0.base.random(rng)).collect()
    }

    fn coords(&self, a: &Self::Elem) -> Vec<u64> {
        a.iter().flat_map(|c| self.0.base.coords(c)).collect()
    }

    fn nth_element(&self, mut i: u64) -> Self::Elem {
        let b = &self.0.base;
        let n = b.small_order().unwrap_or(u64::MAX);
        (0..self.0.d)
            .map(|_| {
                let c = b.nth_element(i % n);
                i /= n;
                c
            })
            .collect()
    }
}

impl<F: Field> Extends<F> for Ext<F> {
    fn embed(&self, a: &F::Elem) -> Vec<F::Elem> {
        let mut v = self.zero();
        v[0] = a.clone();
        v
    }

    fn scale(&self, c: &F::Elem, a: &Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.0.base;
        a.iter().map(|x| f.mul(c, x)).collect()
    }

    fn scale_acc(&self, acc: &mut Vec<F::Elem>, c: &F::Elem, a: &Vec<F::Elem>) {
        self.0.base.axpy(acc, c, a);
    }
}
