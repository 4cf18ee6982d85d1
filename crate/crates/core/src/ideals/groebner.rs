//! Buchberger's algorithm and degrees of zero-dimensional ideals.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::mpoly::{MPoly, Mono, TermOrder};

/// Terms sorted ascending in the chosen order, so the leading term is last.
type Terms<F> = Vec<(Mono, <F as Field>::Elem)>;

/// Reduced Groebner basis.
pub struct GroebnerBasis<F: Field> {
    pub order: TermOrder,
    pub nvars: usize,
    pub gens: Vec<MPoly<F>>,
    leading: Vec<Mono>,
}

impl<F: Field> std::fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroebnerBasis({:?}, {:?})", self.order, self.gens)
    }
}

impl<F: Field> GroebnerBasis<F> {
    /// Leading monomials in the basis order.
    pub fn leading_monomials(&self) -> &[Mono] {
        &self.leading
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.leading.iter().any(|m| m.iter().all(|&e| e == 0))
    }
}

fn to_terms<F: Field>(p: &MPoly<F>, order: TermOrder) -> Terms<F> {
    let mut t: Terms<F> = p.terms().to_vec();
    t.sort_by(|a, b| order.cmp(&a.0, &b.0));
    t
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn make_monic<F: Field>(f: &F, t: &mut Terms<F>) {
    if let Some((_, c)) = t.last() {
        let inv = f.inv(c);
        for (_, x) in t.iter_mut() {
            *x = f.mul(x, &inv);
        }
    }
}

/// p - c * x^shift * g, all ascending.
fn sub_scaled<F: Field>(
    f: &F,
    order: TermOrder,
    p: &Terms<F>,
    c: &F::Elem,
    shift: &[u32],
    g: &Terms<F>,
) -> Terms<F> {
    let nc = f.neg(c);
    let shifted: Vec<(Mono, F::Elem)> = g
        .iter()
        .map(|(m, x)| {
            (
                m.iter().zip(shift).map(|(a, b)| a + b).collect(),
                f.mul(x, &nc),
            )
        })
        .collect();
    let mut out = Vec::with_capacity(p.len() + shifted.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() && j < shifted.len() {
        match order.cmp(&p[i].0, &shifted[j].0) {
            Ordering::Less => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(shifted[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                let s = f.add(&p[i].1, &shifted[j].1);
                if !f.is_zero(&s) {
                    out.push((p[i].0.clone(), s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    out.extend(shifted.into_iter().skip(j));
    out
}

/// Full reduction of p by monic g's.
fn reduce<F: Field>(f: &F, order: TermOrder, p: Terms<F>, basis: &[Terms<F>]) -> Terms<F> {
    let mut p = p;
    let mut rem: Terms<F> = Vec::new();
    while let Some((m, c)) = p.last().cloned() {
        match basis
            .iter()
            .find(|g| g.last().is_some_and(|(lm, _)| divides(lm, &m)))
        {
            Some(g) => {
                let lm = &g.last().unwrap().0;
                let shift: Mono = m.iter().zip(lm).map(|(a, b)| a - b).collect();
                p = sub_scaled(f, order, &p, &c, &shift, g);
            }
            None => {
                rem.push(p.pop().unwrap());
            }
        }
    }
    rem.reverse();
    rem
}

fn s_poly<F: Field>(f: &F, order: TermOrder, a: &Terms<F>, b: &Terms<F>) -> Terms<F> {
    let (la, lb) = (&a.last().unwrap().0, &b.last().unwrap().0);
    let l = lcm(la, lb);
    let sa: Mono = l.iter().zip(la).map(|(x, y)| x - y).collect();
    let sb: Mono = l.iter().zip(lb).map(|(x, y)| x - y).collect();
    let zero: Terms<F> = Vec::new();
    let pa = sub_scaled(f, order, &zero, &f.neg(&f.one()), &sa, a);
    sub_scaled(f, order, &pa, &f.one(), &sb, b)
}

/// Reduced Groebner basis by Buchberger's algorithm with the normal
/// selection strategy and the coprime-leading-monomial criterion.
pub fn buchberger<F: Field>(f: &F, gens: &[MPoly<F>], order: TermOrder) -> GroebnerBasis<F> {
    let nvars = gens.first().map_or(0, |g| g.nvars());
    let mut basis: Vec<Terms<F>> = Vec::new();
    for g in gens {
        let mut t = to_terms(g, order);
        t = reduce(f, order, t, &basis);
        if !t.is_empty() {
            make_monic(f, &mut t);
            basis.push(t);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while !pairs.is_empty() {
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = lcm(&basis[a.0].last().unwrap().0, &basis[a.1].last().unwrap().0);
                let lb = lcm(&basis[b.0].last().unwrap().0, &basis[b.1].last().unwrap().0);
                order.cmp(&la, &lb)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        let (li, lj) = (&basis[i].last().unwrap().0, &basis[j].last().unwrap().0);
        if li.iter().zip(lj.iter()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let s = s_poly(f, order, &basis[i], &basis[j]);
        let mut r = reduce(f, order, s, &basis);
        if r.is_empty() {
            continue;
        }
        make_monic(f, &mut r);
        let n = basis.len();
        basis.push(r);
        for k in 0..n {
            pairs.push((k, n));
        }
    }
    // minimise
    let mut keep: Vec<Terms<F>> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = &g.last().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = &h.last().unwrap().0;
            j != i && divides(lh, lm) && (lh != lm || j < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce
    let mut reduced: Vec<Terms<F>> = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Terms<F>> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = keep[i].last().unwrap().clone();
        let tail: Terms<F> = keep[i][..keep[i].len() - 1].to_vec();
        let mut r = reduce(f, order, tail, &others);
        r.push((lm, lc));
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(&a.last().unwrap().0, &b.last().unwrap().0));
    let leading = reduced
        .iter()
        .map(|t| t.last().unwrap().0.clone())
        .collect();
    let gens = reduced
        .into_iter()
        .map(|t| MPoly::from_terms(f, nvars, t))
        .collect();
    GroebnerBasis {
        order,
        nvars,
        gens,
        leading,
    }
}

/// Dimension over the field of k[x]/I for a zero-dimensional ideal, by
/// counting standard monomials.
pub fn zero_dim_degree<F: Field>(gb: &GroebnerBasis<F>) -> Result<u64> {
    if gb.is_unit_ideal() {
        return Ok(0);
    }
    let n = gb.nvars;
    let mut bounds = vec![0u32; n];
    for (i, b) in bounds.iter_mut().enumerate() {
        *b = gb
            .leading
            .iter()
            .filter(|m| m.iter().enumerate().all(|(j, &e)| j == i || e == 0))
            .map(|m| m[i])
            .min()
            .ok_or(Error::NotZeroDimensional)?;
    }
    let mut count = 0u64;
    let mut m: Mono = Mono::from_elem(0, n);
    loop {
        if !gb.leading.iter().any(|l| divides(l, &m)) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return Ok(count);
            }
            m[k] += 1;
            if m[k] < bounds[k] {
                break;
            }
            m[k] = 0;
            k += 1;
        }
    }
}

/// Length of the local ring at the origin of the ideal generated by
/// `gens`: dim k[x]/(I + m^N) for N large enough that it stabilises.
pub fn local_length_at_origin<F: Field>(f: &F, gens: &[MPoly<F>]) -> Result<u64> {
    let n = gens.first().map_or(0, |g| g.nvars());
    let mut prev = None;
    for big_n in 1..=512u32 {
        let mut all: Vec<MPoly<F>> = gens.to_vec();
        all.extend(
            crate::mpoly::monomials_of_degree(n, big_n)
                .into_iter()
                .map(|m| MPoly::monomial(f, n, m, f.one())),
        );
        let gb = buchberger(f, &all, TermOrder::GrevLex);
        let d = zero_dim_degree(&gb)?;
        if d == 0 {
            return Ok(0);
        }
        if prev == Some(d) {
            return Ok(d);
        }
        prev = Some(d);
    }
    Err(Error::NotZeroDimensional)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Gf;
    use crate::mpoly::vars;

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let f = Gf::new(5, 1, 0).unwrap();
        let v = vars(&f, 2);
        let gb = buchberger(&f, &[v[0].pow(&f, 2), v[1].pow(&f, 3)], TermOrder::GrLex);
        assert_eq!(gb.gens.len(), 2);
        assert_eq!(zero_dim_degree(&gb).unwrap(), 6);
    }

    #[test]
    fn linear_ideal_over_gf3() {
        let f = Gf::new(3, 1, 0).unwrap();
        let v = vars(&f, 2);
        let gb = buchberger(
            &f,
            &[v[0].add(&f, &v[1]), v[0].sub(&f, &v[1])],
            TermOrder::Lex,
        );
        let mut g = gb.gens.clone();
        g.sort_by_key(|p| p.terms()[0].0.clone());
        assert_eq!(g, vec![v[1].clone(), v[0].clone()]);
    }

    #[test]
    fn not_zero_dimensional() {
        let f = Gf::new(5, 1, 0).unwrap();
        let v = vars(&f, 2);
        let gb = buchberger(&f, &[v[0].mul(&f, &v[1])], TermOrder::GrLex);
        assert_eq!(zero_dim_degree(&gb).unwrap_err(), Error::NotZeroDimensional);
    }

    #[test]
    fn local_length_ignores_other_points() {
        let f = Gf::new(5, 1, 0).unwrap();
        let v = vars(&f, 2);
        // locally (x^2, y) at the origin; the zero at (1, 1) must not count
        let g1 = v[0].pow(&f, 2).mul(&f, &v[0].sub(&f, &MPoly::one(&f, 2)));
        let g2 = v[1].mul(&f, &v[1].sub(&f, &MPoly::one(&f, 2)));
        assert_eq!(local_length_at_origin(&f, &[g1, g2]).unwrap(), 2);
    }
}
