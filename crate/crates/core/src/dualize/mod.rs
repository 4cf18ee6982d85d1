//! Dual curves: interpolation through reduced Gauss images, and the closed
//! form for the Fermat curve.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curves::{ballico_hefez, work_field, CurveC};
use crate::error::{Error, Result};
use crate::gf::{roots_in_field, squarefree_part, Field, Gf, UniPoly};
use crate::ideals::projective_zeros;
use crate::linalg::Matrix;
use crate::mpoly::{monomials_of_degree, MPoly, Mono};

/// (q^2 + q + 1)(q + 1).
pub fn expected_dual_degree(q: u64) -> u64 {
    (q * q + q + 1) * (q + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualMethod {
    Interpolation,
    ClosedForm,
}

impl DualMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            DualMethod::Interpolation => "interpolation",
            DualMethod::ClosedForm => "closed-form",
        }
    }
}

/// The defining polynomial of C^ in the dual plane, normalized so its
/// graded-lex leading coefficient is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct DualCurve<F: Field> {
    pub h: MPoly<F>,
    pub degree: u32,
    pub method: DualMethod,
}

/// Oversampling factor over the number of monomials.
const MARGIN: f64 = 1.2;

/// Distinct affine points (x0 : y : 1) of C over its own field, x0 running
/// through a shuffled enumeration of the field.
pub fn sample_points(c: &CurveC<Gf>, n: usize, seed: u64) -> Vec<[u32; 3]> {
    let f = c.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs: Vec<u32> = f.elements().collect();
    xs.shuffle(&mut rng);
    let mut out = Vec::with_capacity(n);
    let b = [0, f.one(), 0];
    for x0 in xs {
        let a = [x0, 0, f.one()];
        let r = c.restrict_to_line(f, &a, &b);
        if r.is_zero() {
            continue;
        }
        for y in roots_in_field(f, &r, seed ^ x0 as u64) {
            out.push([x0, y, f.one()]);
            if out.len() == n {
                return out;
            }
        }
    }
    out
}

/// Reduced Gauss images of sampled points, skipping any singular point.
fn gauss_images(c: &CurveC<Gf>, g: &[MPoly<Gf>; 3], pts: &[[u32; 3]]) -> Vec<[u32; 3]> {
    let f = c.field();
    pts.iter()
        .filter_map(|p| crate::curves::normalize(f, &g.clone().map(|gi| gi.eval(f, p))))
        .collect()
}

fn monomial_row(f: &Gf, monos: &[Mono], e: u32, y: &[u32; 3]) -> Vec<u32> {
    let pw: Vec<Vec<u32>> = y
        .iter()
        .map(|&v| {
            let mut row = Vec::with_capacity(e as usize + 1);
            let mut cur = f.one();
            for _ in 0..=e {
                row.push(cur);
                cur = f.mul(&cur, &v);
            }
            row
        })
        .collect();
    monos
        .iter()
        .map(|m| {
            f.mul(
                &f.mul(&pw[0][m[0] as usize], &pw[1][m[1] as usize]),
                &pw[2][m[2] as usize],
            )
        })
        .collect()
}

enum Kernel {
    None,
    One(MPoly<Gf>),
    Big(usize),
}

fn kernel_in_degree(f: &Gf, e: u32, images: &[[u32; 3]]) -> Kernel {
    let monos = monomials_of_degree(3, e);
    let rows: Vec<Vec<u32>> = images
        .iter()
        .map(|y| monomial_row(f, &monos, e, y))
        .collect();
    let k = Matrix::from_rows(rows).kernel_basis(f);
    match k.len() {
        0 => Kernel::None,
        1 => {
            let terms = monos.into_iter().zip(k[0].iter().copied()).collect();
            Kernel::One(MPoly::from_terms(f, 3, terms).normalize(f))
        }
        n => Kernel::Big(n),
    }
}

fn samples_for(e: u32) -> usize {
    let m = ((e + 1) * (e + 2) / 2) as f64;
    (m * MARGIN).ceil() as usize + 8
}

/// The dual curve by interpolation through reduced Gauss images over the
/// work field, pulled back to the field of C. Without a hint the degree is
/// the least e with a nonzero kernel, found by doubling and bisection from
/// the expected degree (the kernel is nonzero exactly from deg H on).
pub fn dual_curve_interpolate(
    c: &CurveC<Gf>,
    hint: Option<u32>,
    seed: u64,
) -> Result<DualCurve<Gf>> {
    let (w, emb) = work_field(c.field())?;
    let cw = c.map(&w, |a| emb.apply(*a));
    let g = cw.reduced_gauss_polys();
    let mut images: Vec<[u32; 3]> = Vec::new();
    let ensure = |e: u32, images: &mut Vec<[u32; 3]>| -> Result<()> {
        let need = samples_for(e);
        if images.len() < need {
            let pts = sample_points(&cw, need, seed);
            *images = gauss_images(&cw, &g, &pts);
            if images.len() < need {
                return Err(Error::KernelTooBig {
                    degree: e as usize,
                    dim: 0,
                });
            }
        }
        Ok(())
    };
    let h = match hint {
        Some(e) => {
            ensure(e, &mut images)?;
            match kernel_in_degree(&w, e, &images[..samples_for(e)]) {
                Kernel::None => return Err(Error::NoKernel(e as usize)),
                Kernel::Big(n) => {
                    return Err(Error::KernelTooBig {
                        degree: e as usize,
                        dim: n,
                    })
                }
                Kernel::One(h) => h,
            }
        }
        None => {
            let mut lo = 0u32; // no kernel at lo
            let mut hi = expected_dual_degree(c.q()) as u32;
            let mut found: Option<(u32, Kernel)> = None;
            loop {
                ensure(hi, &mut images)?;
                let k = kernel_in_degree(&w, hi, &images[..samples_for(hi)]);
                if matches!(k, Kernel::None) {
                    lo = hi;
                    hi *= 2;
                } else {
                    found = Some((hi, k));
                    break;
                }
                if hi > 4 * expected_dual_degree(c.q()) as u32 {
                    break;
                }
            }
            let (mut hi, mut best) = found.ok_or(Error::NoKernel(lo as usize))?;
            // the expected degree is usually right: one step down settles it
            if hi > lo + 1 {
                let k = kernel_in_degree(&w, hi - 1, &images[..samples_for(hi - 1)]);
                if matches!(k, Kernel::None) {
                    lo = hi - 1;
                } else {
                    hi -= 1;
                    best = k;
                }
            }
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                let k = kernel_in_degree(&w, mid, &images[..samples_for(mid)]);
                if matches!(k, Kernel::None) {
                    lo = mid;
                } else {
                    hi = mid;
                    best = k;
                }
            }
            match best {
                Kernel::One(h) => h,
                Kernel::Big(n) => {
                    return Err(Error::KernelTooBig {
                        degree: hi as usize,
                        dim: n,
                    })
                }
                Kernel::None => unreachable!(),
            }
        }
    };
    let f = c.field();
    let mut terms = Vec::with_capacity(h.len());
    for (m, a) in h.terms() {
        let b = emb.preimage(*a).ok_or_else(|| {
            Error::CrossValidationFailure(
                "interpolated dual is not defined over the curve's field".into(),
            )
        })?;
        terms.push((m.clone(), b));
    }
    let h = MPoly::from_terms(f, 3, terms);
    let degree = h.total_degree().unwrap_or(0);
    Ok(DualCurve {
        h,
        degree,
        method: DualMethod::Interpolation,
    })
}

/// H(x) = h(x_0^d, x_1^d, x_2^d), h the Ballico-Hefez polynomial.
pub fn fermat_dual_closed_form<F: Field>(q: u64, field: &F) -> Result<DualCurve<F>> {
    let h = ballico_hefez(q, field)?;
    let d = (q * q + q + 1) as u32;
    let images: Vec<MPoly<F>> = (0..3)
        .map(|i| MPoly::var(field, i, 3).pow(field, d))
        .collect();
    let big = h.substitute(field, &images).normalize(field);
    let degree = big.total_degree().unwrap_or(0);
    Ok(DualCurve {
        h: big,
        degree,
        method: DualMethod::ClosedForm,
    })
}

/// Outcome of the independent checks on a dual polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualReport {
    pub samples: usize,
    pub vanishing: bool,
    pub degree: u32,
    pub degree_matches: bool,
    pub squarefree: bool,
}

impl DualReport {
    pub fn pass(&self) -> bool {
        self.vanishing && self.degree_matches && self.squarefree
    }
}

const HOLDOUT: usize = 100;

/// Checks H against fresh reduced Gauss images, the expected degree, and
/// squarefreeness along a random line.
pub fn verify_dual(c: &CurveC<Gf>, d: &DualCurve<Gf>, seed: u64) -> Result<DualReport> {
    let (w, emb) = work_field(c.field())?;
    let cw = c.map(&w, |a| emb.apply(*a));
    let hw = d.h.map_coeffs(&w, |a| emb.apply(*a));
    let g = cw.reduced_gauss_polys();
    let pts = sample_points(&cw, HOLDOUT, seed.wrapping_add(0x40_1d));
    let images = gauss_images(&cw, &g, &pts);
    let vanishing = !images.is_empty() && images.iter().all(|y| w.is_zero(&hw.eval(&w, y)));
    let degree = d.h.total_degree().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let squarefree = is_squarefree_on_random_line(&w, &hw, &mut rng);
    Ok(DualReport {
        samples: images.len(),
        vanishing,
        degree,
        degree_matches: degree as u64 == expected_dual_degree(c.q()),
        squarefree,
    })
}

/// H restricted to a random line has deg H distinct roots. For a reduced
/// plane curve this holds for a general line.
pub fn is_squarefree_on_random_line<R: rand::Rng>(w: &Gf, h: &MPoly<Gf>, rng: &mut R) -> bool {
    let Some(deg) = h.total_degree() else {
        return false;
    };
    let a: [u32; 3] = [0, 1, 2].map(|_| w.random(rng));
    let b: [u32; 3] = [0, 1, 2].map(|_| w.random(rng));
    let r = restrict_poly(w, h, &a, &b);
    r.degree() == Some(deg as usize) && squarefree_part(w, &r).degree() == Some(deg as usize)
}

/// h(A + uB) as a polynomial in u, by evaluation and interpolation.
pub fn restrict_poly(w: &Gf, h: &MPoly<Gf>, a: &[u32; 3], b: &[u32; 3]) -> UniPoly<Gf> {
    let deg = h.total_degree().unwrap_or(0) as usize;
    let xs: Vec<u32> = (0..=deg as u64).map(|i| w.nth_element(i)).collect();
    let ys: Vec<u32> = xs
        .iter()
        .map(|u| {
            let p = [0, 1, 2].map(|i| w.add(&a[i], &w.mul(u, &b[i])));
            h.eval(w, &p)
        })
        .collect();
    UniPoly::interpolate(w, &xs, &ys)
}

/// Number of distinct tangent lines through a random point z of the plane:
/// the points of C where sum z_i G_i vanishes. Equals deg C^ when the
/// reduced Gauss map is birational.
pub fn dual_degree_by_section(c: &CurveC<Gf>, seed: u64) -> Result<u64> {
    let (w, emb) = work_field(c.field())?;
    let cw = c.map(&w, |a| emb.apply(*a));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z: [u32; 3] = [0, 1, 2].map(|_| w.random(&mut rng));
    let g = cw.reduced_gauss_polys();
    let mut s = MPoly::zero(3);
    for i in 0..3 {
        s = s.add(&w, &g[i].scale(&w, &z[i]));
    }
    let locus = projective_zeros(&w, &[cw.expand(), s], seed)?;
    Ok(locus.count() as u64)
}

/// Largest reduced Gauss fibre over the images of a few random points.
/// 1 means the reduced Gauss map is generically injective.
pub fn generic_fibre_size(c: &CurveC<Gf>, seed: u64) -> Result<usize> {
    let (w, emb) = work_field(c.field())?;
    let cw = c.map(&w, |a| emb.apply(*a));
    let g = cw.reduced_gauss_polys();
    let pts = sample_points(&cw, 3, seed ^ 0xf1b);
    let images = gauss_images(&cw, &g, &pts);
    if images.is_empty() {
        return Err(Error::GenericityFailure(0));
    }
    Ok(images
        .iter()
        .map(|y| cw.reduced_gauss_preimage_count(&w, y))
        .max()
        .unwrap_or(0))
}

/// The post-checks on a random member: degree of the dual by a section and
/// a generic fibre of size 1.
pub fn passes_dual_degree_check(c: &CurveC<Gf>, seed: u64) -> bool {
    matches!(dual_degree_by_section(c, seed), Ok(n) if n == expected_dual_degree(c.q()))
        && matches!(generic_fibre_size(c, seed), Ok(1))
}
