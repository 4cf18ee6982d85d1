//! Squarefree decomposition, distinct- and equal-degree factorisation,
//! root finding over finite fields.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ext::Ext;
use super::field::Field;
use super::poly::UniPoly;
use crate::error::{Error, Result};

/// Degrees from which the q-power Frobenius modulo a polynomial is applied
/// through a precomputed matrix instead of repeated squaring.
const FROBENIUS_MATRIX_MIN_DEGREE: usize = 24;

/// h -> h^Q mod m with Q = |F|.
struct FrobeniusMod<F: Field> {
    modulus: UniPoly<F>,
    q: BigUint,
    cols: Option<Vec<Vec<F::Elem>>>,
}

impl<F: Field> FrobeniusMod<F> {
    fn new(f: &F, modulus: &UniPoly<F>) -> Self {
        let q = f.order();
        let n = modulus.degree().unwrap_or(0);
        let cols = (n >= FROBENIUS_MATRIX_MIN_DEGREE).then(|| {
            let xq = UniPoly::x(f).pow_mod(f, &q, modulus);
            let mut cols = Vec::with_capacity(n);
            let mut cur = UniPoly::one(f);
            for _ in 0..n {
                let mut c = cur.coeffs().to_vec();
                c.resize(n, f.zero());
                cols.push(c);
                cur = cur.mul_mod(f, &xq, modulus);
            }
            cols
        });
        FrobeniusMod {
            modulus: modulus.clone(),
            q,
            cols,
        }
    }

    fn apply(&self, f: &F, h: &UniPoly<F>) -> UniPoly<F> {
        let h = h.rem(f, &self.modulus);
        match &self.cols {
            Some(cols) => {
                let n = cols.len();
                let mut acc = vec![f.zero(); n];
                for (c, col) in h.coeffs().iter().zip(cols) {
                    f.axpy(&mut acc, c, col);
                }
                UniPoly::from_coeffs(f, acc)
            }
            None => h.pow_mod(f, &self.q, &self.modulus),
        }
    }
}

/// Squarefree decomposition of a nonzero polynomial: monic pairwise coprime
/// squarefree factors with their multiplicities, sorted by multiplicity.
pub fn squarefree_decomposition<F: Field>(f: &F, g: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    assert!(!g.is_zero(), "squarefree decomposition of zero");
    let mut out: Vec<(UniPoly<F>, usize)> = Vec::new();
    sqf_rec(f, &g.monic(f), 1, &mut out);
    out.sort_by_key(|x| x.1);
    // merge equal multiplicities
    let mut merged: Vec<(UniPoly<F>, usize)> = Vec::new();
    for (h, m) in out {
        match merged.last_mut() {
            Some((g, k)) if *k == m => *g = g.mul(f, &h),
            _ => merged.push((h, m)),
        }
    }
    merged
}

fn sqf_rec<F: Field>(f: &F, g: &UniPoly<F>, mult: usize, out: &mut Vec<(UniPoly<F>, usize)>) {
    if g.is_constant() {
        return;
    }
    let p = f.characteristic() as usize;
    let d = g.derivative(f);
    if d.is_zero() {
        sqf_rec(f, &g.pth_root(f), mult * p, out);
        return;
    }
    let mut c = g.gcd(f, &d);
    let mut w = g.div_exact(f, &c);
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(f, &c);
        let fac = w.div_exact(f, &y);
        if !fac.is_constant() {
            out.push((fac, i * mult));
        }
        w = y;
        c = c.div_exact(f, &w);
        i += 1;
    }
    if !c.is_constant() {
        sqf_rec(f, &c.pth_root(f), mult * p, out);
    }
}

/// Product of the distinct monic irreducible factors.
pub fn squarefree_part<F: Field>(f: &F, g: &UniPoly<F>) -> UniPoly<F> {
    let d = g.derivative(f);
    if !d.is_zero() && g.gcd(f, &d).is_constant() {
        return g.monic(f);
    }
    squarefree_decomposition(f, g)
        .into_iter()
        .fold(UniPoly::one(f), |acc, (h, _)| acc.mul(f, &h))
}

/// Splits a monic squarefree polynomial into products of irreducibles of
/// equal degree: pairs (product, degree).
pub fn distinct_degree<F: Field>(f: &F, g: &UniPoly<F>) -> Vec<(UniPoly<F>, usize)> {
    let mut out = Vec::new();
    let mut rest = g.monic(f);
    if rest.is_constant() {
        return out;
    }
    let mut frob = FrobeniusMod::new(f, &rest);
    let mut x = UniPoly::x(f).rem(f, &rest);
    let mut h = x.clone();
    let mut i = 0;
    while rest.degree().unwrap() >= 2 * (i + 1) {
        i += 1;
        h = frob.apply(f, &h);
        let d = rest.gcd(f, &h.sub(f, &x));
        if !d.is_constant() {
            rest = rest.div_exact(f, &d);
            out.push((d, i));
            if rest.is_constant() {
                break;
            }
            let dr = rest.degree().unwrap();
            if 2 * dr < frob.modulus.degree().unwrap() {
                frob = FrobeniusMod::new(f, &rest);
                h = h.rem(f, &rest);
                x = x.rem(f, &rest);
            }
        }
    }
    if !rest.is_constant() {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

/// Splits a monic squarefree product of irreducibles of degree `d` into its
/// irreducible factors (Cantor-Zassenhaus).
pub fn equal_degree<F: Field, R: Rng + ?Sized>(
    f: &F,
    g: &UniPoly<F>,
    d: usize,
    rng: &mut R,
) -> Vec<UniPoly<F>> {
    let mut out = Vec::new();
    edf_rec(f, &g.monic(f), d, rng, &mut out);
    out
}

fn edf_rec<F: Field, R: Rng + ?Sized>(
    f: &F,
    g: &UniPoly<F>,
    d: usize,
    rng: &mut R,
    out: &mut Vec<UniPoly<F>>,
) {
    let n = match g.degree() {
        None | Some(0) => return,
        Some(n) => n,
    };
    if n == d {
        out.push(g.clone());
        return;
    }
    let frob = (d > 1).then(|| FrobeniusMod::new(f, g));
    let p = f.characteristic();
    loop {
        let a = UniPoly::from_coeffs(f, (0..n).map(|_| f.random(rng)).collect());
        if a.is_constant() {
            continue;
        }
        let c = g.gcd(f, &a);
        let split = if !c.is_constant() {
            c
        } else {
            let b = if p == 2 {
                trace_map(f, &a, d, frob.as_ref(), g)
            } else {
                norm_power(f, &a, d, frob.as_ref(), g).sub(f, &UniPoly::one(f))
            };
            g.gcd(f, &b)
        };
        let ds = split.degree().unwrap_or(0);
        if ds > 0 && ds < n {
            let other = g.div_exact(f, &split);
            edf_rec(f, &split, d, rng, out);
            edf_rec(f, &other, d, rng, out);
            return;
        }
    }
}

/// a^((Q^d - 1) / 2) mod g, odd characteristic.
fn norm_power<F: Field>(
    f: &F,
    a: &UniPoly<F>,
    d: usize,
    frob: Option<&FrobeniusMod<F>>,
    g: &UniPoly<F>,
) -> UniPoly<F> {
    let mut t = a.rem(f, g);
    let mut norm = t.clone();
    for _ in 1..d {
        t = frob.expect("frobenius map for d > 1").apply(f, &t);
        norm = norm.mul_mod(f, &t, g);
    }
    let e = (f.order() - BigUint::one()) >> 1u32;
    norm.pow_mod(f, &e, g)
}

/// Absolute trace of a in (F[x]/g) down to GF(2), characteristic 2.
fn trace_map<F: Field>(
    f: &F,
    a: &UniPoly<F>,
    d: usize,
    frob: Option<&FrobeniusMod<F>>,
    g: &UniPoly<F>,
) -> UniPoly<F> {
    let mut t = a.rem(f, g);
    let mut rel = t.clone();
    for _ in 1..d {
        t = frob.expect("frobenius map for d > 1").apply(f, &t);
        rel = rel.add(f, &t);
    }
    let mut s = rel.clone();
    let mut acc = rel;
    for _ in 1..f.degree() {
        s = s.mul_mod(f, &s, g);
        acc = acc.add(f, &s);
    }
    acc
}

fn poly_key<F: Field>(f: &F, g: &UniPoly<F>) -> (usize, Vec<Vec<u64>>) {
    (
        g.degree().unwrap_or(0),
        g.coeffs().iter().rev().map(|c| f.coords(c)).collect(),
    )
}

/// Factorisation into monic irreducibles with multiplicities, sorted by
/// degree and then by coefficients.
pub fn factor<F: Field>(f: &F, g: &UniPoly<F>, seed: u64) -> Vec<(UniPoly<F>, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (s, m) in squarefree_decomposition(f, g) {
        for (h, d) in distinct_degree(f, &s) {
            for fac in equal_degree(f, &h, d, &mut rng) {
                out.push((fac, m));
            }
        }
    }
    out.sort_by_cached_key(|(h, _)| poly_key(f, h));
    out
}

/// `factor` for callers that may hold the zero polynomial.
pub fn factor_univariate<F: Field>(
    f: &F,
    g: &UniPoly<F>,
    seed: u64,
) -> Result<Vec<(UniPoly<F>, usize)>> {
    if g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(factor(f, g, seed))
}

pub fn is_irreducible<F: Field>(f: &F, g: &UniPoly<F>) -> bool {
    let n = match g.degree() {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(n) => n,
    };
    let g = g.monic(f);
    let frob = FrobeniusMod::new(f, &g);
    let x = UniPoly::x(f).rem(f, &g);
    let mut powers = vec![x.clone()];
    for i in 0..n {
        let next = frob.apply(f, &powers[i]);
        powers.push(next);
    }
    if powers[n] != x {
        return false;
    }
    let mut k = n;
    let mut r = 2;
    let mut primes = Vec::new();
    while r * r <= k {
        if k % r == 0 {
            primes.push(r);
            while k % r == 0 {
                k /= r;
            }
        }
        r += 1;
    }
    if k > 1 {
        primes.push(k);
    }
    primes
        .into_iter()
        .all(|r| g.gcd(f, &powers[n / r].sub(f, &x)).is_constant())
}

/// A monic irreducible polynomial of degree `deg`, by seeded random search.
pub fn random_irreducible<F: Field>(f: &F, deg: usize, seed: u64) -> UniPoly<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut c: Vec<F::Elem> = (0..deg).map(|_| f.random(&mut rng)).collect();
        c.push(f.one());
        let g = UniPoly::from_coeffs(f, c);
        if is_irreducible(f, &g) {
            return g;
        }
    }
}

/// Roots lying in F itself, without multiplicity, sorted by coordinates.
pub fn roots_in_field<F: Field>(f: &F, g: &UniPoly<F>, seed: u64) -> Vec<F::Elem> {
    if g.is_constant() {
        return Vec::new();
    }
    let g = g.monic(f);
    let frob = FrobeniusMod::new(f, &g);
    let xq = frob.apply(f, &UniPoly::x(f));
    let lin = g.gcd(f, &xq.sub(f, &UniPoly::x(f)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots: Vec<F::Elem> = equal_degree(f, &lin, 1, &mut rng)
        .into_iter()
        .map(|h| f.neg(&h.coeffs()[0]))
        .collect();
    roots.sort_by_cached_key(|r| f.coords(r));
    roots
}

/// One Galois orbit of roots of a polynomial: the residue field of an
/// irreducible factor and the class of x in it.
pub struct RootClass<F: Field> {
    pub field: Ext<F>,
    pub root: Vec<F::Elem>,
    pub multiplicity: usize,
}

impl<F: Field> RootClass<F> {
    /// Number of conjugate roots in the class.
    pub fn degree(&self) -> usize {
        self.field.rel_degree()
    }

    /// All conjugates root^(Q^i), i < degree.
    pub fn conjugates(&self) -> Vec<Vec<F::Elem>> {
        let mut out = vec![self.root.clone()];
        for _ in 1..self.degree() {
            let next = self.field.rel_frobenius(out.last().unwrap());
            out.push(next);
        }
        out
    }
}

/// Roots over the algebraic closure, one class per irreducible factor.
pub fn roots_over_closure<F: Field>(f: &F, g: &UniPoly<F>, seed: u64) -> Result<Vec<RootClass<F>>> {
    Ok(factor_univariate(f, g, seed)?
        .into_iter()
        .map(|(h, m)| {
            let field = Ext::new(f, &h);
            let root = field.gen();
            RootClass {
                field,
                root,
                multiplicity: m,
            }
        })
        .collect())
}
