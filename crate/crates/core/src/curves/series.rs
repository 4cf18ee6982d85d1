//! Truncated power series and local parametrizations at smooth points.

use super::{cross, dot, transform_coordinates, CurveC};
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Matrix;

/// c_0 + c_1 t + ... + c_N t^N, everything above t^N discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PowerSeries<F> {
    /// Series known modulo t^(order + 1).
    pub fn zero(f: &F, order: usize) -> Self {
        PowerSeries {
            coeffs: vec![f.zero(); order + 1],
        }
    }

    pub fn from_coeffs(f: &F, order: usize, mut c: Vec<F::Elem>) -> Self {
        c.resize(order + 1, f.zero());
        PowerSeries { coeffs: c }
    }

    pub fn constant(f: &F, order: usize, c: F::Elem) -> Self {
        Self::from_coeffs(f, order, vec![c])
    }

    /// The series t.
    pub fn t(f: &F, order: usize) -> Self {
        Self::from_coeffs(f, order, vec![f.zero(), f.one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &F::Elem {
        &self.coeffs[i]
    }

    pub fn valuation(&self, f: &F) -> Option<usize> {
        self.coeffs.iter().position(|c| !f.is_zero(c))
    }

    pub fn add(&self, f: &F, o: &Self) -> Self {
        let n = self.order().min(o.order());
        PowerSeries {
            coeffs: (0..=n)
                .map(|i| f.add(&self.coeffs[i], &o.coeffs[i]))
                .collect(),
        }
    }

    pub fn scale(&self, f: &F, c: &F::Elem) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| f.mul(x, c)).collect(),
        }
    }

    pub fn mul(&self, f: &F, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut c = vec![f.zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            f.axpy(&mut c[i..], a, &o.coeffs[..=n - i]);
        }
        PowerSeries { coeffs: c }
    }

    /// s^q for q a power of the characteristic: c_n^q at t^(nq).
    pub fn frobenius_power(&self, f: &F, q: u64) -> Self {
        let n = self.order();
        let mut c = vec![f.zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            let j = i * q as usize;
            if j > n {
                break;
            }
            c[j] = f.pow(a, q);
        }
        PowerSeries { coeffs: c }
    }
}

/// F evaluated at a triple of series, using the Frobenius for the q- and
/// q^2-powers.
pub fn eval_curve<F: Field>(c: &CurveC<F>, x: &[PowerSeries<F>; 3]) -> PowerSeries<F> {
    let f = c.field();
    let q = c.q();
    let xq = [0, 1, 2].map(|i| x[i].frobenius_power(f, q));
    let xqq = [0, 1, 2].map(|i| xq[i].frobenius_power(f, q));
    let order = x.iter().map(|s| s.order()).min().unwrap_or(0);
    let mut acc = PowerSeries::zero(f, order);
    for j in 0..3 {
        for k in 0..3 {
            let jk = xq[j].mul(f, &xqq[k]);
            for i in 0..3 {
                let a = c.a(i, j, k);
                if !f.is_zero(a) {
                    acc = acc.add(f, &x[i].mul(f, &jk).scale(f, a));
                }
            }
        }
    }
    acc
}

/// Coordinates x = T y in which P = [0:0:1] and the tangent at P is
/// {y_0 = 0}. The columns of T are a point off the tangent, a second
/// point of the tangent and P, so T is the identity when C is already
/// adapted.
pub fn adapt<F: Field>(c: &CurveC<F>, p: &[F::Elem; 3]) -> Result<(Matrix<F>, CurveC<F>)> {
    let f = c.field();
    let l = c.gauss_map(f, p)?;
    let unit = |i: usize| {
        let mut v = [f.zero(), f.zero(), f.zero()];
        v[i] = f.one();
        v
    };
    let apart = |a: &[F::Elem; 3], b: &[F::Elem; 3]| cross(f, a, b).iter().any(|x| !f.is_zero(x));
    let r = (0..3)
        .map(unit)
        .find(|e| !f.is_zero(&dot(f, &l, e)))
        .ok_or(Error::AdaptationFailure)?;
    let e1 = unit(1);
    let b = if f.is_zero(&dot(f, &l, &e1)) && apart(&e1, p) {
        e1
    } else {
        (0..3)
            .map(|i| cross(f, &l, &unit(i)))
            .find(|v| v.iter().any(|x| !f.is_zero(x)) && apart(v, p))
            .ok_or(Error::AdaptationFailure)?
    };
    let mut t = Matrix::zeros(f, 3, 3);
    for (col, v) in [r, b, p.clone()].iter().enumerate() {
        for (row, x) in v.iter().enumerate() {
            t.set(row, col, x.clone());
        }
    }
    let adapted = transform_coordinates(c, &t).map_err(|e| match e {
        Error::SingularMatrix => Error::AdaptationFailure,
        e => e,
    })?;
    Ok((t, adapted))
}

/// The branch x_0 = phi(t), x_1 = t, x_2 = 1 of C through P in adapted
/// coordinates, to order N.
pub fn local_parametrization<F: Field>(
    c: &CurveC<F>,
    p: &[F::Elem; 3],
    n: usize,
) -> Result<PowerSeries<F>> {
    let f = c.field();
    let (_, ad) = adapt(c, p)?;
    // F(x, t, 1) = a_022 x + (higher); a_022 != 0 is smoothness at P
    let fx = ad.a(0, 2, 2).clone();
    if f.is_zero(&fx) {
        return Err(Error::SingularPoint);
    }
    let neg_inv = f.neg(&f.inv(&fx));
    let t = PowerSeries::t(f, n);
    let one = PowerSeries::constant(f, n, f.one());
    let mut phi = PowerSeries::zero(f, n);
    for k in 1..=n {
        let r = eval_curve(&ad, &[phi.clone(), t.clone(), one.clone()]);
        phi.coeffs[k] = f.mul(r.coeff(k), &neg_inv);
    }
    Ok(phi)
}
