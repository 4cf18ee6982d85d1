//! Local intersection numbers of plane curves by Fulton's algorithm, and
//! Milnor numbers as intersection numbers of the two partials.

use crate::error::{Error, Result};
use crate::gf::{Extends, Field};
use crate::mpoly::{BiPoly, MPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(self) -> Option<u64> {
        match self {
            Multiplicity::Finite(n) => Some(n),
            Multiplicity::Infinite => None,
        }
    }
}

/// I_P(f, g) for f, g in two variables over F and P an affine point with
/// coordinates in an extension E.
pub fn intersection_number<F: Field, E: Extends<F>>(
    e: &E,
    f: &MPoly<F>,
    g: &MPoly<F>,
    pt: &[E::Elem; 2],
) -> Multiplicity {
    assert!(f.nvars() == 2 && g.nvars() == 2, "plane curves expected");
    let fb = BiPoly::<E>::from_mpoly(e, f, [0, 1]).translate(e, &pt[0], &pt[1]);
    let gb = BiPoly::<E>::from_mpoly(e, g, [0, 1]).translate(e, &pt[0], &pt[1]);
    intersection_at_origin(e, fb, gb)
}

/// I_0(f, g) for dense bivariate polynomials.
pub fn intersection_at_origin<E: Field>(e: &E, f: BiPoly<E>, g: BiPoly<E>) -> Multiplicity {
    if f.is_zero() || g.is_zero() {
        return Multiplicity::Infinite;
    }
    // Sum of local numbers never exceeds the Bezout bound unless there is a
    // common component.
    let bound = (f.total_degree().unwrap() * g.total_degree().unwrap()) as u64;
    let (mut f, mut g) = (f, g);
    if !e.is_zero(&f.coeff(e, 0, 0)) || !e.is_zero(&g.coeff(e, 0, 0)) {
        return Multiplicity::Finite(0);
    }
    // independent linear parts: transversal
    let det = e.sub(
        &e.mul(&f.coeff(e, 1, 0), &g.coeff(e, 0, 1)),
        &e.mul(&f.coeff(e, 0, 1), &g.coeff(e, 1, 0)),
    );
    if !e.is_zero(&det) {
        return Multiplicity::Finite(1);
    }
    let mut acc = 0u64;
    loop {
        if f.is_zero() || g.is_zero() {
            return Multiplicity::Infinite;
        }
        if !e.is_zero(&f.coeff(e, 0, 0)) || !e.is_zero(&g.coeff(e, 0, 0)) {
            return Multiplicity::Finite(acc);
        }
        let mut f0 = f.restrict_y0(e);
        let mut g0 = g.restrict_y0(e);
        if f0.is_zero() && g0.is_zero() {
            return Multiplicity::Infinite;
        }
        if f0.is_zero() {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut f0, &mut g0);
        }
        if g0.is_zero() {
            // g = y h: I(f, y) = ord_x f(x, 0)
            acc += f0.valuation(e).unwrap() as u64;
            if acc > bound {
                return Multiplicity::Infinite;
            }
            g = g.div_y();
            continue;
        }
        let (r, s) = (f0.degree().unwrap(), g0.degree().unwrap());
        if r > s {
            std::mem::swap(&mut f, &mut g);
            std::mem::swap(&mut f0, &mut g0);
        }
        let (r, s) = (r.min(s), r.max(s));
        let c = e.div(g0.lc().unwrap(), f0.lc().unwrap());
        g = g.sub_shifted(e, &c, s - r, &f);
    }
}

/// Milnor number of f at P, computed as I_P(f_x, f_y).
pub fn milnor_number<F: Field, E: Extends<F>>(
    e: &E,
    f: &MPoly<F>,
    pt: &[E::Elem; 2],
) -> Result<u64> {
    let fb = BiPoly::<E>::from_mpoly(e, f, [0, 1]).translate(e, &pt[0], &pt[1]);
    milnor_at_origin(e, &fb)
}

/// Milnor number at the origin of a dense bivariate polynomial.
pub fn milnor_at_origin<E: Field>(e: &E, f: &BiPoly<E>) -> Result<u64> {
    match intersection_at_origin(e, f.derivative(e, 0), f.derivative(e, 1)) {
        Multiplicity::Finite(n) => Ok(n),
        Multiplicity::Infinite => Err(Error::InfiniteMilnor),
    }
}
