//! Projective zeros of homogeneous systems in three variables, found over
//! the algebraic closure by elimination in random coordinates.
//!
//! After a random change of coordinates the affine chart z = 1 is solved by
//! a resultant in y, computed by evaluation and interpolation. Every
//! irreducible factor of the eliminant gives a residue field in which the
//! y-coordinate is read off a gcd. The line z = 0 and the point [1:0:0] are
//! handled separately.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::fulton::{intersection_number, Multiplicity};
use super::groebner::local_length_at_origin;
use crate::error::{Error, Result};
use crate::gf::{factor, roots_over_closure, squarefree_part, Ext, Extends, Field, UniPoly};
use crate::linalg::Matrix;
use crate::mpoly::{binom_mod_p, resultant, BiPoly, MPoly, Mono};

const MAX_ATTEMPTS: usize = 8;

/// A closed point of P^2: one representative of a Galois orbit, with
/// coordinates in its residue field, normalized so the last nonzero
/// coordinate is 1.
pub struct PointClass<F: Field> {
    pub field: Ext<F>,
    pub coords: [Vec<F::Elem>; 3],
}

impl<F: Field> Clone for PointClass<F> {
    fn clone(&self) -> Self {
        PointClass {
            field: self.field.clone(),
            coords: self.coords.clone(),
        }
    }
}

impl<F: Field> std::fmt::Debug for PointClass<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PointClass(deg {}, {:?})", self.degree(), self.coords)
    }
}

impl<F: Field> PointClass<F> {
    pub fn new(field: Ext<F>, coords: [Vec<F::Elem>; 3]) -> Self {
        let mut p = PointClass { field, coords };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        let k = &self.field;
        let last = (0..3)
            .rev()
            .find(|&i| !k.is_zero(&self.coords[i]))
            .expect("the zero vector is not a projective point");
        let inv = k.inv(&self.coords[last]);
        for c in &mut self.coords {
            *c = k.mul(c, &inv);
        }
    }

    /// Residue degree over the base field: the number of geometric points
    /// in the orbit.
    pub fn degree(&self) -> usize {
        self.field.rel_degree()
    }

    /// Index of the last nonzero coordinate (which equals 1).
    pub fn chart(&self) -> usize {
        (0..3)
            .rev()
            .find(|&i| !self.field.is_zero(&self.coords[i]))
            .unwrap()
    }

    /// The two coordinates other than the chart one, as an affine point.
    pub fn affine(&self) -> [Vec<F::Elem>; 2] {
        let c = self.chart();
        let mut it = (0..3).filter(|&i| i != c).map(|i| self.coords[i].clone());
        [it.next().unwrap(), it.next().unwrap()]
    }

    pub fn is_zero_of(&self, p: &MPoly<F>) -> bool {
        self.field.is_zero(&p.eval_ext(&self.field, &self.coords))
    }

    /// Whether the point lies in the base field.
    pub fn is_rational(&self) -> bool {
        self.coords.iter().all(|c| self.field.as_base(c).is_some())
    }

    /// All conjugates, by iterating the relative Frobenius.
    pub fn conjugates(&self) -> Vec<[Vec<F::Elem>; 3]> {
        let k = &self.field;
        let mut out = vec![self.coords.clone()];
        for _ in 1..self.degree() {
            let prev = out.last().unwrap();
            let next = [0, 1, 2].map(|i| k.rel_frobenius(&prev[i]));
            out.push(next);
        }
        out
    }
}

/// Finite zero set of a homogeneous system, one entry per Galois orbit.
pub struct ZeroLocus<F: Field> {
    pub points: Vec<PointClass<F>>,
}

impl<F: Field> std::fmt::Debug for ZeroLocus<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.points).finish()
    }
}

impl<F: Field> ZeroLocus<F> {
    /// Number of geometric points.
    pub fn count(&self) -> usize {
        self.points.iter().map(|p| p.degree()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Resultant in y of two dense bivariate polynomials, taken with their
/// formal y-degrees, as a polynomial in x.
pub fn eliminant<F: Field>(f: &F, a: &BiPoly<F>, b: &BiPoly<F>) -> UniPoly<F> {
    let (Some(m), Some(n)) = (a.y_degree(), b.y_degree()) else {
        return UniPoly::zero();
    };
    if m == 0 {
        return a.restrict_y0(f).pow(f, n as u64);
    }
    if n == 0 {
        return b.restrict_y0(f).pow(f, m as u64);
    }
    let xa = a.x_degree().unwrap();
    let xb = b.x_degree().unwrap();
    let bound = (m * xb + n * xa).min(a.total_degree().unwrap() * b.total_degree().unwrap());
    if !f.has_at_least(bound as u64 + 1) {
        let r = resultant(f, &a.to_mpoly(f), &b.to_mpoly(f), 1);
        return r.to_univariate(f, 0).expect("resultant free of y");
    }
    let xs: Vec<F::Elem> = (0..=bound as u64).map(|i| f.nth_element(i)).collect();
    let ys: Vec<F::Elem> = xs
        .iter()
        .map(|x| formal_resultant(f, a.eval_x(f, x), b.eval_x(f, x)))
        .collect();
    UniPoly::interpolate(f, &xs, &ys)
}

/// Resultant of univariate polynomials given by coefficient vectors whose
/// lengths fix the formal degrees.
fn formal_resultant<F: Field>(f: &F, a: Vec<F::Elem>, b: Vec<F::Elem>) -> F::Elem {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let am = a[m].clone();
    let bn = b[n].clone();
    let a = UniPoly::from_coeffs(f, a);
    let b = UniPoly::from_coeffs(f, b);
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return f.zero();
    };
    match (da < m, db < n) {
        (true, true) => f.zero(),
        (true, false) => {
            let mut r = f.mul(&f.pow(&bn, (m - da) as u64), &uni_resultant(f, a, b));
            if (n * (m - da)) % 2 == 1 {
                r = f.neg(&r);
            }
            r
        }
        (false, true) => f.mul(&f.pow(&am, (n - db) as u64), &uni_resultant(f, a, b)),
        (false, false) => uni_resultant(f, a, b),
    }
}

/// Res(a, b) for nonzero a, b by the Euclidean algorithm.
fn uni_resultant<F: Field>(f: &F, mut a: UniPoly<F>, mut b: UniPoly<F>) -> F::Elem {
    let mut acc = f.one();
    loop {
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        if n == 0 {
            return f.mul(&acc, &f.pow(b.lc().unwrap(), m as u64));
        }
        let r = a.rem(f, &b);
        let Some(k) = r.degree() else {
            return f.zero();
        };
        if (m * n) % 2 == 1 {
            acc = f.neg(&acc);
        }
        acc = f.mul(&acc, &f.pow(b.lc().unwrap(), (m - k) as u64));
        a = b;
        b = r;
    }
}

/// x_i -> x_i + c x_j on a polynomial.
fn shear<F: Field>(f: &F, g: &MPoly<F>, i: usize, j: usize, c: &F::Elem) -> MPoly<F> {
    if f.is_zero(c) {
        return g.clone();
    }
    let p = f.characteristic();
    let maxe = g.degree_in(i).unwrap_or(0) as usize;
    let mut cpow = vec![f.one()];
    for k in 0..maxe {
        cpow.push(f.mul(&cpow[k], c));
    }
    let mut terms: Vec<(Mono, F::Elem)> = Vec::new();
    for (m, a) in g.terms() {
        let e = m[i];
        for k in 0..=e {
            let b = binom_mod_p(e as u64, k as u64, p);
            if b == 0 {
                continue;
            }
            let coef = f.mul(a, &f.mul(&cpow[k as usize], &f.from_int(b as i64)));
            let mut m2 = m.clone();
            m2[i] -= k;
            m2[j] += k;
            terms.push((m2, coef));
        }
    }
    MPoly::from_terms(f, g.nvars(), terms)
}

enum Failure {
    /// Eliminant vanished identically.
    Collapsed,
    /// Some fibre of the projection held several non-rational points.
    Unseparated,
    Fatal(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Fatal(e)
    }
}

/// All projective zeros of homogeneous `gens` in three variables over the
/// algebraic closure of F.
pub fn projective_zeros<F: Field>(f: &F, gens: &[MPoly<F>], seed: u64) -> Result<ZeroLocus<F>> {
    let gens: Vec<MPoly<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for g in &gens {
        if g.nvars() != 3 || !g.is_homogeneous() {
            return Err(Error::InvalidInput(
                "homogeneous polynomials in 3 variables expected".into(),
            ));
        }
    }
    if gens.iter().any(|g| g.is_constant()) {
        return Ok(ZeroLocus { points: Vec::new() });
    }
    if gens.len() < 2 {
        return Err(Error::NotFinite);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut collapsed = 0;
    for _ in 0..MAX_ATTEMPTS {
        match solve_once(f, &gens, &mut rng) {
            Ok(points) => return Ok(ZeroLocus { points }),
            Err(Failure::Collapsed) => collapsed += 1,
            Err(Failure::Unseparated) => {}
            Err(Failure::Fatal(e)) => return Err(e),
        }
    }
    if collapsed == MAX_ATTEMPTS {
        Err(Error::NotFinite)
    } else {
        Err(Error::NoGenericCoordinates(MAX_ATTEMPTS))
    }
}

fn solve_once<F: Field>(
    f: &F,
    gens: &[MPoly<F>],
    rng: &mut ChaCha8Rng,
) -> std::result::Result<Vec<PointClass<F>>, Failure> {
    // x = T y with T a product of random shears
    let mut t = Matrix::identity(f, 3);
    let mut gs: Vec<MPoly<F>> = gens.to_vec();
    for (i, j) in [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)] {
        let c = f.random(rng);
        gs = gs.iter().map(|g| shear(f, g, i, j, &c)).collect();
        // T <- T (I + c e_ij): column j gains c times column i
        for r in 0..3 {
            let v = f.add(t.get(r, j), &f.mul(&c, t.get(r, i)));
            t.set(r, j, v);
        }
    }
    let fseed: u64 = rng.gen();
    let mut pts: Vec<PointClass<F>> = Vec::new();

    // affine chart z = 1
    let aff: Vec<BiPoly<F>> = gs
        .iter()
        .map(|g| BiPoly::from_mpoly(f, &g.dehomogenize(f, 2), [0, 1]))
        .collect();
    let elim = if aff.len() == 2 {
        eliminant(f, &aff[0], &aff[1])
    } else {
        let combo = |rng: &mut ChaCha8Rng| {
            aff.iter().fold(BiPoly::zero(), |acc: BiPoly<F>, a| {
                let c = f.random(rng);
                acc.sub_shifted(f, &f.neg(&c), 0, a)
            })
        };
        let a = combo(rng);
        let b1 = combo(rng);
        let b2 = combo(rng);
        let r1 = eliminant(f, &a, &b1);
        if r1.is_zero() {
            return Err(Failure::Collapsed);
        }
        r1.gcd(f, &eliminant(f, &a, &b2))
    };
    if elim.is_zero() {
        return Err(Failure::Collapsed);
    }
    let maxx = aff.iter().filter_map(|a| a.x_degree()).max().unwrap_or(0);
    if !elim.is_constant() {
        let sq = squarefree_part(f, &elim);
        for (phi, _) in factor(f, &sq, fseed) {
            let d = phi.degree().unwrap();
            let k = if d == 1 {
                Ext::new(f, &UniPoly::x(f))
            } else {
                Ext::new(f, &phi)
            };
            let xi = if d == 1 {
                let r = f.neg(&phi.coeff(f, 0));
                Extends::<F>::embed(&k, &r)
            } else {
                k.gen()
            };
            let mut xpow = vec![k.one()];
            for i in 0..maxx {
                xpow.push(k.mul(&xpow[i], &xi));
            }
            let mut psi: Option<UniPoly<Ext<F>>> = None;
            for a in &aff {
                let s = UniPoly::from_coeffs(&k, a.eval_x_powers(&k, &xpow));
                psi = Some(match psi {
                    None => s.monic(&k),
                    Some(p) => p.gcd(&k, &s),
                });
                let p = psi.as_ref().unwrap();
                if p.is_constant() && !p.is_zero() {
                    break;
                }
            }
            let psi = psi.unwrap();
            if psi.is_zero() {
                // every generator vanishes on the line x = xi
                return Err(Failure::Fatal(Error::NotFinite));
            }
            if psi.is_constant() {
                continue;
            }
            let psi = squarefree_part(&k, &psi);
            if psi.degree() == Some(1) {
                let eta = k.neg(&k.div(&psi.coeff(&k, 0), &psi.coeff(&k, 1)));
                pts.push(back(&t, k.clone(), [xi.clone(), eta, k.one()]));
            } else if d == 1 {
                let base = psi.map(f, |c| k.as_base(c).unwrap());
                let x0 = k.as_base(&xi).unwrap();
                for rc in roots_over_closure(f, &base, fseed ^ 0x5eed)? {
                    let l = rc.field.clone();
                    let xl = Extends::<F>::embed(&l, &x0);
                    pts.push(back(&t, l.clone(), [xl, rc.root, l.one()]));
                }
            } else {
                return Err(Failure::Unseparated);
            }
        }
    }

    // the line z = 0, chart y = 1
    let at_inf: Vec<UniPoly<F>> = gs
        .iter()
        .map(|g| {
            let n = g.nvars();
            let terms = g
                .terms()
                .iter()
                .filter(|(m, _)| m[2] == 0)
                .map(|(m, c)| (Mono::from_slice(&[m[0], 0, 0]), c.clone()))
                .collect();
            MPoly::from_terms(f, n, terms).to_univariate(f, 0).unwrap()
        })
        .collect();
    if at_inf.iter().all(|u| u.is_zero()) {
        return Err(Failure::Fatal(Error::NotFinite));
    }
    let u = at_inf.iter().fold(UniPoly::zero(), |acc, v| acc.gcd(f, v));
    if !u.is_constant() {
        for rc in roots_over_closure(f, &u, fseed ^ 0x1ef)? {
            let l = rc.field.clone();
            pts.push(back(&t, l.clone(), [rc.root, l.one(), l.zero()]));
        }
    }

    // [1:0:0]
    if gs
        .iter()
        .all(|g| f.is_zero(&g.coeff(f, &[g.total_degree().unwrap(), 0, 0])))
    {
        let l = Ext::new(f, &UniPoly::x(f));
        pts.push(back(&t, l.clone(), [l.one(), l.zero(), l.zero()]));
    }

    for p in &pts {
        if !gens.iter().all(|g| p.is_zero_of(g)) {
            return Err(Failure::Fatal(Error::CrossValidationFailure(
                "solver returned a non-zero of the system".into(),
            )));
        }
    }
    Ok(pts)
}

fn back<F: Field>(t: &Matrix<F>, k: Ext<F>, y: [Vec<F::Elem>; 3]) -> PointClass<F> {
    let coords = [0, 1, 2].map(|r| {
        let mut acc = k.zero();
        for (c, yc) in y.iter().enumerate() {
            Extends::<F>::scale_acc(&k, &mut acc, t.get(r, c), yc);
        }
        acc
    });
    PointClass::new(k, coords)
}

/// Local multiplicity of the system at a point: the intersection number in
/// the point's chart for two generators, otherwise the length of the local
/// ring computed with a Groebner basis over the residue field.
pub fn local_multiplicity<F: Field>(
    f: &F,
    gens: &[MPoly<F>],
    pt: &PointClass<F>,
) -> Result<Multiplicity> {
    let c = pt.chart();
    let k = &pt.field;
    let aff = pt.affine();
    let deh: Vec<MPoly<F>> = gens.iter().map(|g| g.dehomogenize(f, c)).collect();
    if deh.len() == 2 {
        return Ok(intersection_number(k, &deh[0], &deh[1], &aff));
    }
    let local: Vec<MPoly<Ext<F>>> = deh
        .iter()
        .map(|g| {
            BiPoly::<Ext<F>>::from_mpoly(k, g, [0, 1])
                .translate(k, &aff[0], &aff[1])
                .to_mpoly(k)
        })
        .collect();
    match local_length_at_origin(k, &local) {
        Ok(n) => Ok(Multiplicity::Finite(n)),
        Err(Error::NotZeroDimensional) => Ok(Multiplicity::Infinite),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;
    use crate::mpoly::vars;

    #[test]
    fn eliminant_matches_sylvester() {
        let f = Gf::new(7, 1, 0).unwrap();
        let v = vars(&f, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let mut rand_poly = |d: u32| {
                let mut p = MPoly::zero(2);
                for m in (0..=d).flat_map(|t| crate::mpoly::monomials_of_degree(2, t)) {
                    p = p.add(&f, &MPoly::monomial(&f, 2, m, f.random(&mut rng)));
                }
                p
            };
            // force y-degree drops at some x by making leading coefficients vanish at x = 1
            let a = rand_poly(3).mul(&f, &v[1]).add(&f, &rand_poly(2));
            let b = rand_poly(2);
            let ba = BiPoly::from_mpoly(&f, &a, [0, 1]);
            let bb = BiPoly::from_mpoly(&f, &b, [0, 1]);
            let want = resultant(&f, &a, &b, 1).to_univariate(&f, 0).unwrap();
            assert_eq!(eliminant(&f, &ba, &bb), want);
        }
    }

    #[test]
    fn single_point() {
        let f = Gf::new(5, 1, 0).unwrap();
        let v = vars(&f, 3);
        let z = projective_zeros(&f, &[v[0].clone(), v[1].clone()], 1).unwrap();
        assert_eq!(z.count(), 1);
        let p = &z.points[0];
        assert_eq!(p.coords, [vec![0], vec![0], p.field.one()]);
    }

    #[test]
    fn seventh_roots_of_unity_on_a_line() {
        let f = Gf::new(2, 1, 0).unwrap();
        let v = vars(&f, 3);
        let g = v[1].pow(&f, 7).sub(&f, &v[2].pow(&f, 7));
        let z = projective_zeros(&f, &[v[0].clone(), g], 4).unwrap();
        let mut degs: Vec<usize> = z.points.iter().map(|p| p.degree()).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 3, 3]);
        for p in &z.points {
            assert!(p.field.is_zero(&p.coords[0]));
        }
    }

    #[test]
    fn conic_and_line_over_a_large_field() {
        let f = Gf::new(3, 8, 0).unwrap();
        let v = vars(&f, 3);
        // x^2 + y^2 - z^2 meets x = 0 in [0:1:1], [0:-1:1]
        let conic = v[0]
            .pow(&f, 2)
            .add(&f, &v[1].pow(&f, 2))
            .sub(&f, &v[2].pow(&f, 2));
        let z = projective_zeros(&f, &[conic.clone(), v[0].clone()], 9).unwrap();
        assert_eq!(z.count(), 2);
        assert!(z.points.iter().all(|p| p.is_rational()));
        // an irreducible intersection: y^2 = 2 z^2 has no root in GF(3) but
        // GF(3^8) contains sqrt(2)
        let g = v[1]
            .pow(&f, 2)
            .sub(&f, &v[2].pow(&f, 2).scale(&f, &f.from_int(2)));
        let z = projective_zeros(&f, &[g, v[0].clone()], 9).unwrap();
        assert_eq!(z.count(), 2);
    }

    #[test]
    fn common_component_is_not_finite() {
        let f = Gf::new(5, 1, 0).unwrap();
        let v = vars(&f, 3);
        let a = v[0].mul(&f, &v[1]);
        let b = v[0].mul(&f, &v[2]);
        assert_eq!(
            projective_zeros(&f, &[a, b], 2).unwrap_err(),
            Error::NotFinite
        );
    }

    #[test]
    fn three_generators_and_multiplicity() {
        let f = Gf::new(101, 1, 0).unwrap();
        let v = vars(&f, 3);
        // partials of the nodal cubic y^2 z - x^2 (x + z)
        let cubic = v[1]
            .pow(&f, 2)
            .mul(&f, &v[2])
            .sub(&f, &v[0].pow(&f, 2).mul(&f, &v[0].add(&f, &v[2])));
        let jac: Vec<MPoly<Gf>> = (0..3).map(|i| cubic.derivative(&f, i)).collect();
        let z = projective_zeros(&f, &jac, 5).unwrap();
        assert_eq!(z.count(), 1);
        let p = &z.points[0];
        assert_eq!(p.coords, [vec![0], vec![0], vec![1]]);
        assert_eq!(
            local_multiplicity(&f, &jac, p).unwrap(),
            Multiplicity::Finite(1)
        );
        let two = [jac[0].clone(), jac[1].clone()];
        assert_eq!(
            local_multiplicity(&f, &two, p).unwrap(),
            Multiplicity::Finite(1)
        );
    }
}
