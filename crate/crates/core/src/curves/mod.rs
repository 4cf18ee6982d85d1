//! Plane curves F = sum a_ijk x_i x_j^q x_k^(q^2) of degree q^2 + q + 1.
//!
//! Every partial F_i = sum_jk a_ijk x_j^q x_k^(q^2) is the q-th power of
//! G_i = sum_jk a_ijk^(1/q) x_j x_k^q, so the Gauss map factors through the
//! reduced Gauss map [G_0 : G_1 : G_2].

mod ballico_hefez;
mod series;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use ballico_hefez::ballico_hefez;
pub use series::{local_parametrization, PowerSeries};

use crate::error::{Error, Result};
use crate::gf::{Extends, Field, Gf, GfEmbedding, UniPoly};
use crate::ideals::{projective_zeros, Multiplicity};
use crate::linalg::Matrix;
use crate::mpoly::{MPoly, Mono};

/// Homogeneous coordinates of a point of P^2 or of a line (dual
/// coordinates), normalized so the last nonzero entry is 1.
pub type ProjPoint<E> = [<E as Field>::Elem; 3];
pub type Line<E> = ProjPoint<E>;

/// Normalizes so the last nonzero coordinate is 1; None for the zero vector.
pub fn normalize<E: Field>(e: &E, p: &[E::Elem; 3]) -> Option<ProjPoint<E>> {
    let last = (0..3).rev().find(|&i| !e.is_zero(&p[i]))?;
    let inv = e.inv(&p[last]);
    Some([0, 1, 2].map(|i| e.mul(&p[i], &inv)))
}

pub fn cross<E: Field>(e: &E, a: &[E::Elem; 3], b: &[E::Elem; 3]) -> [E::Elem; 3] {
    [(1, 2), (2, 0), (0, 1)].map(|(i, j)| e.sub(&e.mul(&a[i], &b[j]), &e.mul(&a[j], &b[i])))
}

pub fn dot<E: Field>(e: &E, a: &[E::Elem; 3], b: &[E::Elem; 3]) -> E::Elem {
    (0..3).fold(e.zero(), |acc, i| e.add(&acc, &e.mul(&a[i], &b[i])))
}

/// Whether `q` is a positive power of `p`.
pub fn is_power_of(p: u64, q: u64) -> bool {
    let mut t = q;
    while t > 1 && t.is_multiple_of(p) {
        t /= p;
    }
    t == 1 && q > 1
}

/// The field in which the heavy computations for curves over `base` run:
/// the smallest extension of degree divisible by lcm(k, 8) with at least
/// 4096 elements.
pub fn work_field(base: &Gf) -> Result<(Gf, GfEmbedding)> {
    let k = base.k();
    let step = num_lcm(k, 8);
    let mut big_k = step;
    while (base.p() as f64).powi(big_k as i32) < 4096.0 {
        big_k += step;
    }
    let w = Gf::new(base.p(), big_k, 0)?;
    let emb = GfEmbedding::new(base, &w)?;
    Ok((w, emb))
}

fn num_lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// A member of the family: the 27 coefficients a_ijk, stored at 9i + 3j + k.
pub struct CurveC<F: Field> {
    q: u64,
    field: F,
    a: Vec<F::Elem>,
}

impl<F: Field> Clone for CurveC<F> {
    fn clone(&self) -> Self {
        CurveC {
            q: self.q,
            field: self.field.clone(),
            a: self.a.clone(),
        }
    }
}

impl<F: Field> PartialEq for CurveC<F> {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.field == other.field && self.a == other.a
    }
}

impl<F: Field> std::fmt::Debug for CurveC<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CurveC(q = {}, a = {:?})", self.q, self.a)
    }
}

impl<F: Field> CurveC<F> {
    pub fn new(field: &F, q: u64, a: Vec<F::Elem>) -> Result<Self> {
        if !is_power_of(field.characteristic(), q) {
            return Err(Error::InvalidInput(format!(
                "q = {q} is not a power of the characteristic {}",
                field.characteristic()
            )));
        }
        if a.len() != 27 {
            return Err(Error::InvalidInput(format!(
                "expected 27 coefficients, got {}",
                a.len()
            )));
        }
        if a.iter().all(|c| field.is_zero(c)) {
            return Err(Error::ZeroTensor);
        }
        Ok(CurveC {
            q,
            field: field.clone(),
            a,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> u64 {
        self.q * self.q + self.q + 1
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.a
    }

    pub fn a(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.a[9 * i + 3 * j + k]
    }

    /// a_ijk^(1/q).
    pub fn alpha(&self, i: usize, j: usize, k: usize) -> F::Elem {
        qth_root(&self.field, self.a(i, j, k), self.q)
    }

    pub fn map<G: Field>(&self, g: &G, phi: impl Fn(&F::Elem) -> G::Elem) -> CurveC<G> {
        CurveC {
            q: self.q,
            field: g.clone(),
            a: self.a.iter().map(phi).collect(),
        }
    }

    pub fn embed<E: Extends<F>>(&self, e: &E) -> CurveC<E> {
        self.map(e, |c| e.embed(c))
    }

    /// The polynomial F.
    pub fn expand(&self) -> MPoly<F> {
        let q = self.q as u32;
        let mut terms = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let mut m = Mono::from_elem(0, 3);
                    m[i] += 1;
                    m[j] += q;
                    m[k] += q * q;
                    terms.push((m, self.a(i, j, k).clone()));
                }
            }
        }
        MPoly::from_terms(&self.field, 3, terms)
    }

    /// The partials F_0, F_1, F_2.
    pub fn partials(&self) -> [MPoly<F>; 3] {
        let f = self.expand();
        [0, 1, 2].map(|i| f.derivative(&self.field, i))
    }

    /// G_i with G_i^q = F_i, each of degree q + 1.
    pub fn reduced_gauss_polys(&self) -> [MPoly<F>; 3] {
        self.partials().map(|p| {
            p.qth_root(&self.field, self.q)
                .expect("partials are q-th powers")
        })
    }

    /// F(A + uB) as a polynomial in u. Only the exponents 0, 1, q, q + 1,
    /// q^2, ... occur because the Frobenius is additive.
    pub fn restrict_to_line<E: Extends<F>>(
        &self,
        e: &E,
        a: &[E::Elem; 3],
        b: &[E::Elem; 3],
    ) -> UniPoly<E> {
        let q = self.q;
        let (aq, bq) = (
            a.clone().map(|x| e.pow(&x, q)),
            b.clone().map(|x| e.pow(&x, q)),
        );
        let (aqq, bqq) = (
            aq.clone().map(|x| e.pow(&x, q)),
            bq.clone().map(|x| e.pow(&x, q)),
        );
        let qu = q as usize;
        let mut c = vec![e.zero(); qu * qu + qu + 2];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let coef = self.a(i, j, k);
                    if self.field.is_zero(coef) {
                        continue;
                    }
                    let f1 = [(0, &a[i]), (1, &b[i])];
                    let f2 = [(0, &aq[j]), (qu, &bq[j])];
                    let f3 = [(0, &aqq[k]), (qu * qu, &bqq[k])];
                    for (d1, x1) in f1 {
                        for (d2, x2) in f2 {
                            let x12 = e.mul(x1, x2);
                            for (d3, x3) in f3 {
                                let t = e.mul(&x12, x3);
                                e.scale_acc(&mut c[d1 + d2 + d3], coef, &t);
                            }
                        }
                    }
                }
            }
        }
        UniPoly::from_coeffs(e, c)
    }

    /// G_i(A + uB) for i = 0, 1, 2.
    pub fn restrict_gauss_to_line<E: Extends<F>>(
        &self,
        e: &E,
        a: &[E::Elem; 3],
        b: &[E::Elem; 3],
    ) -> [UniPoly<E>; 3] {
        let q = self.q;
        let qu = q as usize;
        let (aq, bq) = (
            a.clone().map(|x| e.pow(&x, q)),
            b.clone().map(|x| e.pow(&x, q)),
        );
        [0, 1, 2].map(|i| {
            let mut c = vec![e.zero(); qu + 2];
            for j in 0..3 {
                for k in 0..3 {
                    let al = self.alpha(i, j, k);
                    if self.field.is_zero(&al) {
                        continue;
                    }
                    for (d1, x1) in [(0, &a[j]), (1, &b[j])] {
                        for (d2, x2) in [(0, &aq[k]), (qu, &bq[k])] {
                            e.scale_acc(&mut c[d1 + d2], &al, &e.mul(x1, x2));
                        }
                    }
                }
            }
            UniPoly::from_coeffs(e, c)
        })
    }

    pub fn contains<E: Extends<F>>(&self, e: &E, p: &[E::Elem; 3]) -> bool {
        e.is_zero(&self.expand().eval_ext(e, p))
    }

    /// Tangent line [F_0(P) : F_1(P) : F_2(P)].
    pub fn gauss_map<E: Extends<F>>(&self, e: &E, p: &[E::Elem; 3]) -> Result<Line<E>> {
        if !self.contains(e, p) {
            return Err(Error::NotOnCurve);
        }
        let v = self.partials().map(|g| g.eval_ext(e, p));
        normalize(e, &v).ok_or(Error::SingularPoint)
    }

    /// [G_0(P) : G_1(P) : G_2(P)].
    pub fn reduced_gauss_map<E: Extends<F>>(&self, e: &E, p: &[E::Elem; 3]) -> Result<Line<E>> {
        if !self.contains(e, p) {
            return Err(Error::NotOnCurve);
        }
        let v = self.reduced_gauss_polys().map(|g| g.eval_ext(e, p));
        normalize(e, &v).ok_or(Error::SingularPoint)
    }

    /// Order of contact of the line L with C at P.
    pub fn line_mult<E: Extends<F>>(
        &self,
        e: &E,
        l: &[E::Elem; 3],
        p: &[E::Elem; 3],
    ) -> Result<Multiplicity> {
        if !e.is_zero(&dot(e, l, p)) {
            return Err(Error::PointNotOnLine);
        }
        let b = second_point(e, l, p);
        let r = self.restrict_to_line(e, p, &b);
        Ok(match r.valuation(e) {
            None => Multiplicity::Infinite,
            Some(v) => Multiplicity::Finite(v as u64),
        })
    }

    /// Whether the tangent at the smooth point P meets C there with
    /// multiplicity exactly q + 1.
    pub fn is_flex<E: Extends<F>>(&self, e: &E, p: &[E::Elem; 3]) -> Result<bool> {
        let t = self.gauss_map(e, p)?;
        Ok(self.line_mult(e, &t, p)? == Multiplicity::Finite(self.q + 1))
    }

    /// Phi = coefficient of s^q in F(P + s Q(P)), where Q(P) is the point
    /// where the tangent at P meets the auxiliary line `aux`. On C off
    /// `aux`, Phi(P) = 0 exactly when the tangent has contact > q.
    pub fn flex_scheme(&self, aux: &[F::Elem; 3]) -> MPoly<F> {
        let f = &self.field;
        let q = self.q as u32;
        let t = self.partials();
        let lam = aux.clone().map(|c| MPoly::constant(f, c, 3));
        let qpt = [(1, 2), (2, 0), (0, 1)]
            .map(|(i, j)| t[i].mul(f, &lam[j]).sub(f, &t[j].mul(f, &lam[i])));
        let mut phi = MPoly::zero(3);
        for j in 0..3 {
            let mut mj = Vec::new();
            for i in 0..3 {
                for k in 0..3 {
                    let mut m = Mono::from_elem(0, 3);
                    m[i] += 1;
                    m[k] += q * q;
                    mj.push((m, self.a(i, j, k).clone()));
                }
            }
            let mj = MPoly::from_terms(f, 3, mj);
            phi = phi.add(f, &qpt[j].frobenius_power(f, self.q).mul(f, &mj));
        }
        phi
    }

    /// Points P of C (over extensions of E) with reduced Gauss image y.
    /// The tangent at such P is [y_0^q : y_1^q : y_2^q], so they all lie on
    /// that line.
    pub fn reduced_gauss_fibre<E: Extends<F>>(&self, e: &E, y: &[E::Elem; 3]) -> GaussFibre<E> {
        let tangent = y.clone().map(|c| e.pow(&c, self.q));
        let (a, b) = line_basis(e, &tangent);
        let fl = self.restrict_to_line(e, &a, &b);
        let gl = self.restrict_gauss_to_line(e, &a, &b);
        // y_i G_j - y_j G_i along the line
        let mut g = fl;
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            let u = gl[j].scale(e, &y[i]).sub(e, &gl[i].scale(e, &y[j]));
            g = g.gcd(e, &u);
        }
        let at_b = {
            let fb = self.restrict_to_line(e, &b, &a);
            let gb = self.restrict_gauss_to_line(e, &b, &a);
            let vals = gb.map(|p| p.coeff(e, 0));
            e.is_zero(&fb.coeff(e, 0))
                && (0..3).all(|i| {
                    (0..3).all(|j| {
                        e.is_zero(&e.sub(&e.mul(&y[i], &vals[j]), &e.mul(&y[j], &vals[i])))
                    })
                })
                && vals.iter().any(|v| !e.is_zero(v))
        };
        GaussFibre {
            a,
            b,
            poly: g,
            at_b,
        }
    }

    /// Preimage count of y under the reduced Gauss map, over the closure.
    pub fn reduced_gauss_preimage_count<E: Extends<F>>(&self, e: &E, y: &[E::Elem; 3]) -> usize {
        self.reduced_gauss_fibre(e, y).count(e)
    }
}

/// A fibre of the reduced Gauss map: points A + uB with u a root of
/// `poly`, plus B itself when `at_b` holds.
pub struct GaussFibre<E: Field> {
    pub a: [E::Elem; 3],
    pub b: [E::Elem; 3],
    pub poly: UniPoly<E>,
    pub at_b: bool,
}

impl<E: Field> GaussFibre<E> {
    /// Number of distinct geometric points.
    pub fn count(&self, e: &E) -> usize {
        let affine = if self.poly.is_zero() {
            usize::MAX
        } else {
            crate::gf::squarefree_part(e, &self.poly)
                .degree()
                .unwrap_or(0)
        };
        affine.saturating_add(self.at_b as usize)
    }
}

/// Two distinct points spanning the line l.
pub fn line_basis<E: Field>(e: &E, l: &[E::Elem; 3]) -> ([E::Elem; 3], [E::Elem; 3]) {
    let unit = |i: usize| {
        let mut v = [e.zero(), e.zero(), e.zero()];
        v[i] = e.one();
        v
    };
    let mut pts: Vec<[E::Elem; 3]> = Vec::new();
    for i in 0..3 {
        let c = cross(e, l, &unit(i));
        if c.iter().any(|x| !e.is_zero(x))
            && pts
                .iter()
                .all(|p| cross(e, p, &c).iter().any(|x| !e.is_zero(x)))
        {
            pts.push(c);
        }
    }
    (pts[0].clone(), pts[1].clone())
}

/// A point of l other than p, preferring coordinate points.
fn second_point<E: Field>(e: &E, l: &[E::Elem; 3], p: &[E::Elem; 3]) -> [E::Elem; 3] {
    let distinct = |c: &[E::Elem; 3]| cross(e, p, c).iter().any(|x| !e.is_zero(x));
    for i in [1, 0, 2] {
        let mut v = [e.zero(), e.zero(), e.zero()];
        v[i] = e.one();
        if e.is_zero(&l[i]) && distinct(&v) {
            return v;
        }
    }
    let (a, b) = line_basis(e, l);
    if distinct(&a) {
        a
    } else {
        b
    }
}

pub(crate) fn qth_root<F: Field>(f: &F, a: &F::Elem, q: u64) -> F::Elem {
    let mut r = a.clone();
    let mut t = q;
    while t > 1 {
        r = f.pth_root(&r);
        t /= f.characteristic();
    }
    r
}

/// The Fermat curve: a_iii = 1, all else 0.
pub fn fermat_curve<F: Field>(field: &F, q: u64) -> Result<CurveC<F>> {
    let mut a = vec![field.zero(); 27];
    for i in 0..3 {
        a[13 * i] = field.one();
    }
    CurveC::new(field, q, a)
}

/// Smoothness: the G_i have no common projective zero.
pub fn is_smooth<F: Field>(c: &CurveC<F>) -> bool {
    let g = c.reduced_gauss_polys();
    matches!(projective_zeros(c.field(), &g, 0x5100), Ok(z) if z.is_empty())
}

/// The curve in coordinates y with x = T y, re-collected into the
/// (1, q, q^2) exponent pattern.
pub fn transform_coordinates<F: Field>(c: &CurveC<F>, t: &Matrix<F>) -> Result<CurveC<F>> {
    let f = c.field();
    if f.is_zero(&t.determinant(f)) {
        return Err(Error::SingularMatrix);
    }
    let images: Vec<MPoly<F>> = (0..3)
        .map(|i| {
            let terms = (0..3)
                .map(|l| {
                    let mut m = Mono::from_elem(0, 3);
                    m[l] = 1;
                    (m, t.get(i, l).clone())
                })
                .collect();
            MPoly::from_terms(f, 3, terms)
        })
        .collect();
    let g = c.expand().substitute(f, &images);
    let q = c.q() as u32;
    let mut b = vec![f.zero(); 27];
    for (m, coef) in g.terms() {
        let mut slot = [None; 3];
        for (v, &e) in m.iter().enumerate() {
            let digits = [e % q, (e / q) % q, e / (q * q)];
            for (level, &dg) in digits.iter().enumerate() {
                match dg {
                    0 => {}
                    1 if slot[level].is_none() => slot[level] = Some(v),
                    _ => {
                        return Err(Error::CrossValidationFailure(
                            "transformed polynomial left the family".into(),
                        ))
                    }
                }
            }
        }
        let [Some(l), Some(mm), Some(n)] = slot else {
            return Err(Error::CrossValidationFailure(
                "transformed polynomial left the family".into(),
            ));
        };
        b[9 * l + 3 * mm + n] = coef.clone();
    }
    CurveC::new(f, c.q(), b)
}

/// Random member of the family over `field`, redrawn (at most
/// `max_retries` times) until it is smooth and passes `accept`. Returns the
/// curve and the number of rejected draws.
pub fn random_curve_with<F: Field>(
    field: &F,
    q: u64,
    seed: u64,
    max_retries: usize,
    mut accept: impl FnMut(&CurveC<F>) -> bool,
) -> Result<(CurveC<F>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0;
    while rejected <= max_retries {
        let a: Vec<F::Elem> = (0..27).map(|_| field.random(&mut rng)).collect();
        match CurveC::new(field, q, a) {
            Ok(c) if is_smooth(&c) && accept(&c) => return Ok((c, rejected)),
            Err(Error::ZeroTensor) | Ok(_) => rejected += 1,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenericityFailure(rejected))
}

/// Random smooth member of the family whose dual has the expected degree
/// and whose reduced Gauss map has generic fibre 1.
pub fn random_curve(field: &Gf, q: u64, seed: u64) -> Result<(CurveC<Gf>, usize)> {
    random_curve_with(field, q, seed, 2, |c| {
        crate::dualize::passes_dual_degree_check(c, seed)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::vars;

    fn gf(p: u64, k: usize) -> Gf {
        Gf::new(p, k, 0).unwrap()
    }

    #[test]
    fn fermat_expansion() {
        let f = gf(2, 1);
        let c = fermat_curve(&f, 2).unwrap();
        let v = vars(&f, 3);
        let want = v[0]
            .pow(&f, 7)
            .add(&f, &v[1].pow(&f, 7))
            .add(&f, &v[2].pow(&f, 7));
        assert_eq!(c.expand(), want);
    }

    #[test]
    fn single_coefficient_expansion() {
        let f = gf(2, 1);
        let mut a = vec![0u32; 27];
        a[3 + 2] = f.one(); // a_012
        let c = CurveC::new(&f, 2, a).unwrap();
        let v = vars(&f, 3);
        let want = v[0].mul(&f, &v[1].pow(&f, 2)).mul(&f, &v[2].pow(&f, 4));
        assert_eq!(c.expand(), want);
    }

    #[test]
    fn zero_tensor_rejected() {
        let f = gf(2, 1);
        assert_eq!(
            CurveC::new(&f, 2, vec![0; 27]).unwrap_err(),
            Error::ZeroTensor
        );
        assert!(CurveC::new(&f, 3, vec![1; 27]).is_err());
    }

    #[test]
    fn fermat_is_smooth_and_a_line_is_not() {
        let f = gf(2, 1);
        assert!(is_smooth(&fermat_curve(&f, 2).unwrap()));
        let f3 = gf(3, 1);
        assert!(is_smooth(&fermat_curve(&f3, 3).unwrap()));
        let mut a = vec![0u32; 27];
        a[0] = f.one();
        assert!(!is_smooth(&CurveC::new(&f, 2, a).unwrap()));
    }

    #[test]
    fn fermat_reduced_gauss_and_tangent() {
        let f = gf(2, 1);
        let c = fermat_curve(&f, 2).unwrap();
        let v = vars(&f, 3);
        let g = c.reduced_gauss_polys();
        for i in 0..3 {
            assert_eq!(g[i], v[i].pow(&f, 3));
        }
        let p = [0, 1, 1];
        assert_eq!(c.gauss_map(&f, &p).unwrap(), [0, 1, 1]);
        assert_eq!(
            c.line_mult(&f, &[0, 1, 1], &p).unwrap(),
            Multiplicity::Finite(7)
        );
        assert!(!c.is_flex(&f, &p).unwrap());
        assert_eq!(
            c.line_mult(&f, &[0, 0, 1], &p).unwrap_err(),
            Error::PointNotOnLine
        );
    }

    #[test]
    fn identity_transform() {
        let f = gf(5, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a: Vec<u32> = (0..27).map(|_| f.random(&mut rng)).collect();
        let c = CurveC::new(&f, 5, a).unwrap();
        assert_eq!(
            transform_coordinates(&c, &Matrix::identity(&f, 3)).unwrap(),
            c
        );
        let sing = Matrix::<Gf>::zeros(&f, 3, 3);
        assert_eq!(
            transform_coordinates(&c, &sing).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn work_fields() {
        let (w, _) = work_field(&gf(2, 8)).unwrap();
        assert_eq!(w.k(), 16);
        let (w, _) = work_field(&gf(2, 1)).unwrap();
        assert_eq!(w.k(), 16);
        let (w, _) = work_field(&gf(3, 1)).unwrap();
        assert_eq!(w.k(), 8);
    }
}
