use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;

/// Arithmetic context of a finite field.
///
/// Elements carry no reference to their field; every operation goes through
/// the context, so one field value can be shared by many polynomials.
pub trait Field: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn characteristic(&self) -> u64;
    /// Degree over the prime field.
    fn degree(&self) -> usize;
    /// Image of an integer under the canonical map from Z.
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Inverse of the absolute Frobenius a -> a^p.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Coordinates over the prime field in the defining power bases,
    /// flattened from the outermost extension inwards.
    fn coords(&self, a: &Self::Elem) -> Vec<u64>;
    /// The i-th element in a fixed enumeration, 0 first; i < |F|.
    fn nth_element(&self, i: u64) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn square(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, a)
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic())
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    fn pow_big(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.square(&acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Number of elements.
    fn order(&self) -> BigUint {
        let mut n = BigUint::one();
        let p = BigUint::from(self.characteristic());
        for _ in 0..self.degree() {
            n *= &p;
        }
        n
    }

    /// `dst[i] += c * src[i]`.
    fn axpy(&self, dst: &mut [Self::Elem], c: &Self::Elem, src: &[Self::Elem]) {
        if self.is_zero(c) {
            return;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.add(d, &self.mul(c, s));
            }
        }
    }

    /// Order of the field if it fits in a u64.
    fn small_order(&self) -> Option<u64> {
        let n = self.order();
        if n.bits() <= 62 {
            Some(n.iter_u64_digits().next().unwrap_or(0))
        } else {
            None
        }
    }

    /// Whether the field has at least `n` elements.
    fn has_at_least(&self, n: u64) -> bool {
        self.small_order().is_none_or(|o| o >= n)
    }
}

/// A field that contains a copy of `F`.
pub trait Extends<F: Field>: Field {
    fn embed(&self, a: &F::Elem) -> Self::Elem;

    /// `c * a` with `c` from the subfield.
    fn scale(&self, c: &F::Elem, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.embed(c), a)
    }

    /// `acc += c * a` with `c` from the subfield.
    fn scale_acc(&self, acc: &mut Self::Elem, c: &F::Elem, a: &Self::Elem) {
        *acc = self.add(acc, &self.scale(c, a));
    }
}

impl<F: Field> Extends<F> for F {
    fn embed(&self, a: &F::Elem) -> F::Elem {
        a.clone()
    }

    fn scale(&self, c: &F::Elem, a: &F::Elem) -> F::Elem {
        self.mul(c, a)
    }
}
