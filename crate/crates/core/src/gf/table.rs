//! Table-driven GF(p^k) in Zech-logarithm representation.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::Field;
use crate::error::{Error, Result};

/// Largest field order for which log/exp/Zech tables are built.
pub const TABLE_LIMIT: u64 = 1 << 22;

/// GF(p^k) = GF(p)[x]/(m).
///
/// An element is stored as 0 for zero and `e + 1` for `g^e`, where `g` is a
/// fixed primitive element. Addition uses a Zech table, so every operation
/// is a couple of table lookups.
#[derive(Clone)]
pub struct Gf(Arc<GfInner>);

struct GfInner {
    p: u64,
    k: usize,
    modulus: Vec<u64>,
    /// p^k - 1
    m: u32,
    /// discrete log -> integer index of the element
    exp: Vec<u32>,
    /// integer index -> discrete log
    log: Vec<u32>,
    /// zech[d] = encoding of 1 + g^d
    zech: Vec<u32>,
    /// p^{-1} mod (p^k - 1)
    inv_p: u64,
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.p, self.0.k, self.0.modulus)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomial arithmetic over GF(p) on coefficient vectors, used only
// while the tables do not exist yet.
mod dense {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let li = inv_mod(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * li % p;
            for (j, &mj) in m.iter().enumerate() {
                let idx = top - dm + j;
                r[idx] = (r[idx] + p - c * mj % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        rem(&r, m, p)
    }

    pub fn pow_mod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut base = rem(a, m, p);
        let mut acc = rem(&[1], m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &base, m, p);
            }
            base = mul_mod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut r: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut r);
        r
    }
}

/// Rabin's irreducibility test for a monic polynomial over GF(p).
pub(crate) fn is_irreducible_prime(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    if k == 0 || m[k] != 1 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^(p^i) mod m for i = 0..=k
    let mut frob = vec![dense::rem(&x, m, p)];
    for i in 0..k {
        let next = dense::pow_mod(&frob[i], p, m, p);
        frob.push(next);
    }
    if dense::sub(&frob[k], &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    for r in prime_factors(k as u64) {
        let t = dense::sub(&frob[k / r as usize], &x, p);
        let g = dense::gcd(m, &t, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl Gf {
    /// Builds GF(p^k) with a modulus chosen by a seeded search.
    ///
    /// k = 1 gives the prime field with modulus `x`.
    pub fn new(p: u64, k: usize, seed: u64) -> Result<Gf> {
        check_params(p, k)?;
        if k == 1 {
            return Gf::with_modulus(p, &[0, 1]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut m: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            if m[0] == 0 {
                continue;
            }
            m.push(1);
            if is_irreducible_prime(&m, p) {
                return Gf::with_modulus(p, &m);
            }
        }
    }

    /// Builds GF(p)[x]/(modulus); the modulus is given low degree first.
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Gf> {
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus);
        }
        let k = modulus.len() - 1;
        check_params(p, k)?;
        if modulus.iter().any(|&c| c >= p) || !is_irreducible_prime(modulus, p) {
            return Err(Error::InvalidModulus);
        }
        let n = p.pow(k as u32);
        let m = n - 1;
        let to_index = |d: &[u64]| -> u64 { d.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let from_index = |mut i: u64| -> Vec<u64> {
            let mut d = Vec::with_capacity(k);
            for _ in 0..k {
                d.push(i % p);
                i /= p;
            }
            dense::trim(&mut d);
            d
        };
        let one = dense::rem(&[1], modulus, p);
        let factors = prime_factors(m);
        let mut gen = None;
        for cand in 1..n {
            let g = from_index(cand);
            if factors
                .iter()
                .all(|&l| dense::pow_mod(&g, m / l, modulus, p) != one)
            {
                gen = Some(g);
                break;
            }
        }
        let g = gen.expect("multiplicative group of a finite field is cyclic");
        let mut exp = vec![0u32; m as usize];
        let mut log = vec![0u32; n as usize];
        let mut cur = one.clone();
        for e in 0..m as usize {
            let idx = to_index(&cur);
            exp[e] = idx as u32;
            log[idx as usize] = e as u32;
            cur = dense::mul_mod(&cur, &g, modulus, p);
        }
        let mut zech = vec![0u32; m as usize];
        for d in 0..m as usize {
            let idx = exp[d] as u64;
            let c0 = idx % p;
            let shifted = idx - c0 + (c0 + 1) % p;
            zech[d] = if shifted == 0 {
                0
            } else {
                log[shifted as usize] + 1
            };
        }
        let inv_p = if m == 1 { 0 } else { mod_inverse(p % m, m) };
        Ok(Gf(Arc::new(GfInner {
            p,
            k,
            modulus: modulus.to_vec(),
            m: m as u32,
            exp,
            log,
            zech,
            inv_p,
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    /// Defining modulus, low degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn size(&self) -> u64 {
        self.0.m as u64 + 1
    }

    /// Integer index sum c_i p^i of the power-basis coordinates.
    #[inline]
    pub fn index_of(&self, a: u32) -> u64 {
        if a == 0 {
            0
        } else {
            self.0.exp[(a - 1) as usize] as u64
        }
    }

    #[inline]
    pub fn from_index(&self, i: u64) -> u32 {
        if i == 0 {
            0
        } else {
            self.0.log[i as usize] + 1
        }
    }

    pub fn from_coords(&self, c: &[u64]) -> Result<u32> {
        if c.len() != self.0.k || c.iter().any(|&x| x >= self.0.p) {
            return Err(Error::Parse(format!(
                "expected {} coordinates below {}",
                self.0.k, self.0.p
            )));
        }
        Ok(self.from_index(c.iter().rev().fold(0, |acc, &x| acc * self.0.p + x)))
    }

    /// Every element, in index order.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.size()).map(move |i| self.from_index(i))
    }
}

fn check_params(p: u64, k: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidDegree(k));
    }
    let mut n: u64 = 1;
    for _ in 0..k {
        n = n.saturating_mul(p);
        if n > TABLE_LIMIT {
            return Err(Error::FieldTooLarge { p, k });
        }
    }
    Ok(())
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(m as i128) as u64
}

impl Field for Gf {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }

    #[inline]
    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    #[inline]
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }

    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let (a, b) = (*a, *b);
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let m = self.0.m;
        let la = a - 1;
        let lb = b - 1;
        let d = if lb >= la { lb - la } else { lb + m - la };
        let z = self.0.zech[d as usize];
        if z == 0 {
            return 0;
        }
        let s = la + z - 1;
        (if s >= m { s - m } else { s }) + 1
    }

    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        let a = *a;
        if a == 0 || self.0.p == 2 {
            return a;
        }
        let m = self.0.m;
        let s = a - 1 + m / 2;
        (if s >= m { s - m } else { s }) + 1
    }

    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        let (a, b) = (*a, *b);
        if a == 0 || b == 0 {
            return 0;
        }
        let m = self.0.m;
        let s = a - 1 + b - 1;
        (if s >= m { s - m } else { s }) + 1
    }

    #[inline]
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero");
        let l = a - 1;
        (if l == 0 { 0 } else { self.0.m - l }) + 1
    }

    fn characteristic(&self) -> u64 {
        self.0.p
    }

    fn degree(&self) -> usize {
        self.0.k
    }

    fn from_int(&self, n: i64) -> u32 {
        self.from_index(n.rem_euclid(self.0.p as i64) as u64)
    }

    fn pow(&self, a: &u32, e: u64) -> u32 {
        if *a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let m = self.0.m as u64;
        (((a - 1) as u64 * (e % m)) % m) as u32 + 1
    }

    fn frobenius(&self, a: &u32) -> u32 {
        self.pow(a, self.0.p)
    }

    fn pth_root(&self, a: &u32) -> u32 {
        if *a == 0 {
            return 0;
        }
        let m = self.0.m as u64;
        if m == 1 {
            return *a;
        }
        (((a - 1) as u64 * self.0.inv_p) % m) as u32 + 1
    }

    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        self.from_index(rng.gen_range(0..self.size()))
    }

    fn coords(&self, a: &u32) -> Vec<u64> {
        let mut i = self.index_of(*a);
        (0..self.0.k)
            .map(|_| {
                let c = i % self.0.p;
                i /= self.0.p;
                c
            })
            .collect()
    }

    fn nth_element(&self, i: u64) -> u32 {
        self.from_index(i)
    }

    fn small_order(&self) -> Option<u64> {
        Some(self.size())
    }

    fn axpy(&self, dst: &mut [u32], c: &u32, src: &[u32]) {
        let c = *c;
        if c == 0 {
            return;
        }
        let m = self.0.m;
        let lc = c - 1;
        let zech = &self.0.zech;
        for (d, &s) in dst.iter_mut().zip(src) {
            if s == 0 {
                continue;
            }
            let t = s - 1 + lc;
            let lp = if t >= m { t - m } else { t };
            if *d == 0 {
                *d = lp + 1;
                continue;
            }
            let la = *d - 1;
            let diff = if lp >= la { lp - la } else { lp + m - la };
            let z = zech[diff as usize];
            *d = if z == 0 {
                0
            } else {
                let s2 = la + z - 1;
                (if s2 >= m { s2 - m } else { s2 }) + 1
            };
        }
    }
}
