//! Sparse multivariate polynomials, resultants and canonical text form.

mod bipoly;
mod resultant;
mod text;

pub use bipoly::BiPoly;
pub use resultant::resultant;
pub use text::{parse_poly, poly_to_text};

pub use crate::linalg::Matrix;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gf::{Extends, Field, UniPoly};

/// Exponent vector.
pub type Mono = SmallVec<[u32; 4]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Lex,
    GrLex,
    GrevLex,
}

impl TermOrder {
    /// Variables are ordered x0 > x1 > ... .
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let deg = |m: &[u32]| m.iter().map(|&e| e as u64).sum::<u64>();
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::GrLex => deg(a).cmp(&deg(b)).then_with(|| a.cmp(b)),
            TermOrder::GrevLex => deg(a).cmp(&deg(b)).then_with(|| {
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

/// C(n, k) mod p by Lucas' theorem.
pub fn binom_mod_p(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (a, b) = (n % p, k % p);
        if b > a {
            return 0;
        }
        let mut c = 1u64;
        for i in 0..b {
            c = c * ((a - i) % p) % p;
        }
        let mut den = 1u64;
        for i in 1..=b {
            den = den * (i % p) % p;
        }
        // den is invertible since b < p
        let mut inv = 1u64;
        let mut e = p - 2;
        let mut base = den;
        while e > 0 {
            if e & 1 == 1 {
                inv = inv * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc = acc * c % p * inv % p;
        n /= p;
        k /= p;
    }
    acc
}

/// Polynomial in `nvars` variables; terms sorted by descending graded-lex
/// order with nonzero coefficients.
pub struct MPoly<F: Field> {
    nvars: usize,
    terms: Vec<(Mono, F::Elem)>,
}

impl<F: Field> Clone for MPoly<F> {
    fn clone(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.clone(),
        }
    }
}

impl<F: Field> PartialEq for MPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl<F: Field> Eq for MPoly<F> {}

impl<F: Field> fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly{:?}", self.terms)
    }
}

fn grlex_desc(a: &[u32], b: &[u32]) -> Ordering {
    TermOrder::GrLex.cmp(b, a)
}

impl<F: Field> MPoly<F> {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(f: &F, c: F::Elem, nvars: usize) -> Self {
        Self::monomial(f, nvars, Mono::from_elem(0, nvars), c)
    }

    pub fn one(f: &F, nvars: usize) -> Self {
        Self::constant(f, f.one(), nvars)
    }

    pub fn var(f: &F, i: usize, nvars: usize) -> Self {
        let mut e = Mono::from_elem(0, nvars);
        e[i] = 1;
        Self::monomial(f, nvars, e, f.one())
    }

    pub fn monomial(f: &F, nvars: usize, exps: Mono, c: F::Elem) -> Self {
        assert_eq!(exps.len(), nvars);
        if f.is_zero(&c) {
            return Self::zero(nvars);
        }
        MPoly {
            nvars,
            terms: vec![(exps, c)],
        }
    }

    /// Collects like terms, drops zeros and sorts.
    pub fn from_terms(f: &F, nvars: usize, terms: Vec<(Mono, F::Elem)>) -> Self {
        let mut terms = terms;
        terms.sort_by(|a, b| grlex_desc(&a.0, &b.0));
        let mut out: Vec<(Mono, F::Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = f.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !f.is_zero(c));
        MPoly { nvars, terms: out }
    }

    fn from_map(f: &F, nvars: usize, map: HashMap<Mono, F::Elem>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| grlex_desc(&a.0, &b.0));
        MPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Mono, F::Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.iter().sum())
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(m, _)| m.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, f: &F, exps: &[u32]) -> F::Elem {
        self.terms
            .binary_search_by(|(m, _)| grlex_desc(m, exps))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| f.zero())
    }

    /// Leading term in graded-lex order.
    pub fn leading_term(&self) -> Option<&(Mono, F::Elem)> {
        self.terms.first()
    }

    /// Scales so that the graded-lex leading coefficient is 1.
    pub fn normalize(&self, f: &F) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(f, &f.inv(c)),
        }
    }

    pub fn map_coeffs<G: Field>(&self, g: &G, phi: impl Fn(&F::Elem) -> G::Elem) -> MPoly<G> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), phi(c)))
            .filter(|(_, c)| !g.is_zero(c))
            .collect();
        MPoly {
            nvars: self.nvars,
            terms,
        }
    }

    /// The same polynomial over an extension field.
    pub fn embed<E: Extends<F>>(&self, e: &E) -> MPoly<E> {
        self.map_coeffs(e, |c| e.embed(c))
    }

    pub fn add(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match grlex_desc(&a.0, &b.0) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&a.1, &b.1);
                    if !f.is_zero(&c) {
                        out.push((a.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        MPoly {
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn neg(&self, f: &F) -> Self {
        self.map_coeffs(f, |c| f.neg(c))
    }

    pub fn sub(&self, f: &F, other: &Self) -> Self {
        self.add(f, &other.neg(f))
    }

    pub fn scale(&self, f: &F, c: &F::Elem) -> Self {
        if f.is_zero(c) {
            return Self::zero(self.nvars);
        }
        self.map_coeffs(f, |a| f.mul(a, c))
    }

    /// Multiplies by the monomial c * x^exps.
    pub fn mul_term(&self, f: &F, exps: &[u32], c: &F::Elem) -> Self {
        if f.is_zero(c) {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| {
                (
                    m.iter().zip(exps).map(|(x, y)| x + y).collect(),
                    f.mul(a, c),
                )
            })
            .collect();
        MPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn mul(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(f, m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(f, m, c);
        }
        let mut map: HashMap<Mono, F::Elem> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                let p = f.mul(ca, cb);
                map.entry(m).and_modify(|v| *v = f.add(v, &p)).or_insert(p);
            }
        }
        Self::from_map(f, self.nvars, map)
    }

    pub fn pow(&self, f: &F, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(f, self.nvars);
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

    /// self^q for q a power of the characteristic: coefficients are raised to
    /// the q-th power and exponents multiplied by q.
    pub fn frobenius_power(&self, f: &F, q: u64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.iter().map(|&e| e * q as u32).collect(), f.pow(c, q)))
            .collect();
        MPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn derivative(&self, f: &F, var: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[var] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2[var] -= 1;
                (m2, f.mul(c, &f.from_int(m[var] as i64)))
            })
            .collect();
        Self::from_terms(f, self.nvars, terms)
    }

    /// Hasse derivative D^(k): the coefficient of t^k in self(x + t),
    /// expanded around x.
    pub fn hasse(&self, f: &F, k: &[u32]) -> Self {
        let p = f.characteristic();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.iter().zip(k).all(|(a, b)| a >= b))
            .filter_map(|(m, c)| {
                let mut b = 1u64;
                for (&a, &kk) in m.iter().zip(k) {
                    b = b * binom_mod_p(a as u64, kk as u64, p) % p;
                }
                (b != 0).then(|| {
                    (
                        m.iter().zip(k).map(|(a, kk)| a - kk).collect(),
                        f.mul(c, &f.from_int(b as i64)),
                    )
                })
            })
            .collect();
        Self::from_terms(f, self.nvars, terms)
    }

    /// The unique G with G^q = self, for q a power of the characteristic.
    pub fn qth_root(&self, f: &F, q: u64) -> Result<Self> {
        let p = f.characteristic();
        let mut nu = 0;
        let mut t = q;
        while t > 1 {
            if !t.is_multiple_of(p) {
                return Err(Error::InvalidInput(format!("{q} is not a power of {p}")));
            }
            t /= p;
            nu += 1;
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.iter().any(|&e| !(e as u64).is_multiple_of(q)) {
                return Err(Error::NotAQthPower(q));
            }
            let mut r = c.clone();
            for _ in 0..nu {
                r = f.pth_root(&r);
            }
            terms.push((m.iter().map(|&e| e / q as u32).collect(), r));
        }
        Ok(MPoly {
            nvars: self.nvars,
            terms,
        })
    }

    /// Evaluates at a point of an extension field.
    ///
    /// Coordinates equal to 0 or 1 are treated specially, so evaluating a
    /// form at a normalized projective point costs about one scalar-by-
    /// extension product per term plus a few products per distinct exponent
    /// of the remaining variables.
    pub fn eval_ext<E: Extends<F>>(&self, e: &E, pt: &[E::Elem]) -> E::Elem {
        assert_eq!(pt.len(), self.nvars);
        let zero_vars: Vec<bool> = pt.iter().map(|x| e.is_zero(x)).collect();
        let free: Vec<usize> = (0..self.nvars)
            .filter(|&i| !zero_vars[i] && !e.is_one(&pt[i]))
            .collect();
        let alive = |m: &Mono| (0..self.nvars).all(|i| !zero_vars[i] || m[i] == 0);
        match free.len() {
            0 => {
                let mut acc = e.zero();
                for (m, c) in &self.terms {
                    if alive(m) {
                        acc = e.add(&acc, &e.embed(c));
                    }
                }
                acc
            }
            _ => {
                let u = free[0];
                let rest = &free[1..];
                let max_u = self.terms.iter().map(|(m, _)| m[u]).max().unwrap_or(0);
                let pu = powers(e, &pt[u], max_u);
                let mut groups: HashMap<SmallVec<[u32; 4]>, E::Elem> = HashMap::new();
                for (m, c) in &self.terms {
                    if !alive(m) {
                        continue;
                    }
                    let key: SmallVec<[u32; 4]> = rest.iter().map(|&i| m[i]).collect();
                    let slot = groups.entry(key).or_insert_with(|| e.zero());
                    e.scale_acc(slot, c, &pu[m[u] as usize]);
                }
                let rest_pows: Vec<Vec<E::Elem>> = rest
                    .iter()
                    .enumerate()
                    .map(|(j, &i)| {
                        let mx = groups.keys().map(|k| k[j]).max().unwrap_or(0);
                        powers(e, &pt[i], mx)
                    })
                    .collect();
                let mut acc = e.zero();
                for (k, v) in groups {
                    let mut t = v;
                    for (j, &ex) in k.iter().enumerate() {
                        if ex > 0 {
                            t = e.mul(&t, &rest_pows[j][ex as usize]);
                        }
                    }
                    acc = e.add(&acc, &t);
                }
                acc
            }
        }
    }

    pub fn eval(&self, f: &F, pt: &[F::Elem]) -> F::Elem {
        self.eval_ext(f, pt)
    }

    /// Replaces variable i by images[i].
    pub fn substitute(&self, f: &F, images: &[MPoly<F>]) -> MPoly<F> {
        assert_eq!(images.len(), self.nvars);
        let nv = images.first().map_or(0, |p| p.nvars);
        let mut cache: Vec<HashMap<u32, MPoly<F>>> = vec![HashMap::new(); self.nvars];
        let mut acc = MPoly::zero(nv);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(f, c.clone(), nv);
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache[i]
                    .entry(e)
                    .or_insert_with(|| images[i].pow(f, e))
                    .clone();
                t = t.mul(f, &p);
            }
            acc = acc.add(f, &t);
        }
        acc
    }

    /// Sets variable `var` to 1 and drops it.
    pub fn dehomogenize(&self, f: &F, var: usize) -> MPoly<F> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2.remove(var);
                (m2, c.clone())
            })
            .collect();
        MPoly::from_terms(f, self.nvars - 1, terms)
    }

    /// Coefficients as a polynomial in `var`: entry j is the coefficient of
    /// var^j, with var's exponent set to zero.
    pub fn coeffs_in(&self, f: &F, var: usize) -> Vec<MPoly<F>> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<(Mono, F::Elem)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let j = m2[var] as usize;
            m2[var] = 0;
            buckets[j].push((m2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| MPoly::from_terms(f, self.nvars, t))
            .collect()
    }

    /// Exact quotient by `d` if `d` divides self.
    pub fn div_exact(&self, f: &F, d: &Self) -> Option<Self> {
        let (lm, lc) = d.terms.first()?;
        let inv = f.inv(lc);
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, F::Elem)> = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !m.iter().zip(lm).all(|(a, b)| a >= b) {
                return None;
            }
            let qm: Mono = m.iter().zip(lm).map(|(a, b)| a - b).collect();
            let qc = f.mul(c, &inv);
            rem = rem.sub(f, &d.mul_term(f, &qm, &qc));
            quot.push((qm, qc));
        }
        Some(MPoly::from_terms(f, self.nvars, quot))
    }

    /// Univariate polynomial when only `var` occurs.
    pub fn to_univariate(&self, f: &F, var: usize) -> Option<UniPoly<F>> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut c = vec![f.zero(); d + 1];
        for (m, a) in &self.terms {
            if m.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            c[m[var] as usize] = a.clone();
        }
        Some(UniPoly::from_coeffs(f, c))
    }

    pub fn from_univariate(f: &F, u: &UniPoly<F>, var: usize, nvars: usize) -> Self {
        let terms = u
            .coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut m = Mono::from_elem(0, nvars);
                m[var] = j as u32;
                (m, c.clone())
            })
            .collect();
        MPoly::from_terms(f, nvars, terms)
    }
}

fn powers<E: Field>(e: &E, x: &E::Elem, n: u32) -> Vec<E::Elem> {
    let mut v = Vec::with_capacity(n as usize + 1);
    v.push(e.one());
    for i in 0..n as usize {
        let next = e.mul(&v[i], x);
        v.push(next);
    }
    v
}

/// Monomials of total degree `d` in `nvars` variables, descending graded lex.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Mono> {
    fn rec(nvars: usize, d: u32, prefix: &mut Mono, out: &mut Vec<Mono>) {
        if prefix.len() == nvars - 1 {
            let mut m = prefix.clone();
            m.push(d);
            out.push(m);
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        return out;
    }
    rec(nvars, d, &mut Mono::new(), &mut out);
    out
}

/// The variables x_0, ..., x_{n-1}.
pub fn vars<F: Field>(f: &F, nvars: usize) -> Vec<MPoly<F>> {
    (0..nvars).map(|i| MPoly::var(f, i, nvars)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;

    #[test]
    fn grlex_and_grevlex_differ() {
        // same total degree: grlex prefers x0 x2^2, grevlex prefers x1^3
        let a = [1, 0, 2];
        let b = [0, 3, 0];
        assert_eq!(TermOrder::GrLex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(TermOrder::GrevLex.cmp(&a, &b), Ordering::Less);
        assert_eq!(TermOrder::Lex.cmp(&[0, 5, 5], &[1, 0, 0]), Ordering::Less);
    }

    #[test]
    fn partial_derivative_in_char_two() {
        let f = Gf::new(2, 1, 0).unwrap();
        let x = vars(&f, 3);
        // x0^3 + x0 x1 -> 3x0^2 + x1 = x0^2 + x1
        let p = x[0].pow(&f, 3).add(&f, &x[0].mul(&f, &x[1]));
        assert_eq!(p.derivative(&f, 0), x[0].pow(&f, 2).add(&f, &x[1]));
        assert!(x[0].pow(&f, 2).derivative(&f, 0).is_zero());
    }

    #[test]
    fn qth_root_examples() {
        let f = Gf::new(2, 1, 0).unwrap();
        let x = vars(&f, 3);
        let p = x[0]
            .pow(&f, 6)
            .add(&f, &x[1].pow(&f, 2).mul(&f, &x[2].pow(&f, 4)));
        let r = p.qth_root(&f, 2).unwrap();
        assert_eq!(r, x[0].pow(&f, 3).add(&f, &x[1].mul(&f, &x[2].pow(&f, 2))));
        let bad = x[0].pow(&f, 3);
        assert_eq!(bad.qth_root(&f, 2).unwrap_err(), Error::NotAQthPower(2));
    }

    #[test]
    fn lucas_binomials() {
        assert_eq!(binom_mod_p(7, 3, 2), 1);
        assert_eq!(binom_mod_p(4, 2, 2), 0);
        assert_eq!(binom_mod_p(10, 3, 3), 0);
        assert_eq!(binom_mod_p(10, 1, 3), 1);
        assert_eq!(binom_mod_p(5, 2, 7), 3);
    }

    #[test]
    fn hasse_derivative_in_char_two() {
        let f = Gf::new(2, 1, 0).unwrap();
        let x = vars(&f, 2);
        // D^(2) of x0^3 = C(3,2) x0 = x0, although the ordinary second derivative vanishes.
        assert_eq!(x[0].pow(&f, 3).hasse(&f, &[2, 0]), x[0]);
    }

    #[test]
    fn eval_ext_matches_naive_evaluation() {
        use rand::SeedableRng;
        let f = Gf::new(3, 2, 0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mons = monomials_of_degree(3, 5);
        let p = MPoly::from_terms(
            &f,
            3,
            mons.iter()
                .map(|m| (m.clone(), f.random(&mut rng)))
                .collect(),
        );
        for pt in [
            vec![f.random(&mut rng), f.random(&mut rng), f.one()],
            vec![f.random(&mut rng), f.one(), f.zero()],
            vec![f.random(&mut rng), f.random(&mut rng), f.random(&mut rng)],
        ] {
            let mut naive = f.zero();
            for (m, c) in p.terms() {
                let mut t = *c;
                for (i, &e) in m.iter().enumerate() {
                    t = f.mul(&t, &f.pow(&pt[i], e as u64));
                }
                naive = f.add(&naive, &t);
            }
            assert_eq!(p.eval(&f, &pt), naive);
        }
    }

    #[test]
    fn exact_division() {
        let f = Gf::new(5, 1, 0).unwrap();
        let x = vars(&f, 2);
        let a = x[0].add(&f, &x[1]);
        let b = x[0].sub(&f, &x[1].scale(&f, &f.from_int(2)));
        let p = a.mul(&f, &b);
        assert_eq!(p.div_exact(&f, &a), Some(b.clone()));
        assert_eq!(p.add(&f, &MPoly::one(&f, 2)).div_exact(&f, &a), None);
    }
}
