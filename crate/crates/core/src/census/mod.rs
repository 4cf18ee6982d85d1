//! Singularity census of dual curves, flex census of source curves, genus
//! bookkeeping and the verification drivers for both theorems.

mod verify;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use verify::{
    bh_census, expected_flexes, expected_nodes, trial_seed, verify_theorem1, verify_theorem2,
    BhReport, CensusReport, Check, SpecialGroup, TrialOutcome,
};

use crate::curves::{dot, work_field, CurveC};
use crate::dualize::DualCurve;
use crate::error::{Error, Result};
use crate::gf::{Ext, Extends, Field, Gf, GfEmbedding, UniPoly};
use crate::ideals::{milnor_number, projective_zeros, Multiplicity, PointClass};
use crate::mpoly::MPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingClass {
    Node,
    Special { mu: u64, r: usize },
    Unknown,
}

/// One Galois orbit of singular points of a plane curve. `degree` is the
/// number of conjugate points the entry stands for.
#[derive(Clone, Debug)]
pub struct SingReport {
    pub point: PointClass<Gf>,
    pub degree: usize,
    /// None when the Milnor number is infinite.
    pub mu: Option<u64>,
    pub branches: usize,
    pub class: SingClass,
}

/// Taylor data of order 2 of an affine plane curve at a point: whether the
/// point is singular and whether the tangent cone is two distinct lines.
fn ordinary_double_point<E: Extends<Gf>>(
    e: &E,
    taylor: &[MPoly<Gf>; 6],
    pt: &[E::Elem; 2],
) -> (bool, bool) {
    let v: Vec<E::Elem> = taylor.iter().map(|t| t.eval_ext(e, pt)).collect();
    let singular = v[..3].iter().all(|x| e.is_zero(x));
    let (a, b, c) = (&v[3], &v[4], &v[5]);
    let node = singular && {
        if e.is_zero(a) {
            !e.is_zero(b)
        } else {
            let g = UniPoly::from_coeffs(e, vec![c.clone(), b.clone(), a.clone()]);
            g.gcd(e, &g.derivative(e)).is_constant()
        }
    };
    (singular, node)
}

/// h, h_x, h_y and the Hasse coefficients of x^2, xy, y^2 in each chart.
fn chart_taylor(w: &Gf, h: &MPoly<Gf>) -> Vec<[MPoly<Gf>; 6]> {
    (0..3)
        .map(|chart| {
            let g = h.dehomogenize(w, chart);
            [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]].map(|k| g.hasse(w, &k))
        })
        .collect()
}

fn embed_curve(c: &CurveC<Gf>) -> Result<(Gf, GfEmbedding, CurveC<Gf>)> {
    let (w, emb) = work_field(c.field())?;
    let cw = c.map(&w, |a| emb.apply(*a));
    Ok((w, emb, cw))
}

fn sort_classes(w: &Gf, pts: &mut [PointClass<Gf>]) {
    pts.sort_by_cached_key(|p| {
        let key: Vec<u64> = p
            .coords
            .iter()
            .flat_map(|c| c.iter().map(|x| w.index_of(*x)))
            .collect();
        (p.degree(), key)
    });
}

/// Singular points of an arbitrary plane curve h over the work field,
/// classified by the order-2 Taylor test and the Milnor number, with branch
/// counts supplied by `branches` (which is told whether the point passed
/// the ordinary double point test).
fn classify_singularities(
    w: &Gf,
    h: &MPoly<Gf>,
    seed: u64,
    branches: impl Fn(&Ext<Gf>, &[Vec<u32>; 3], bool) -> usize + Sync,
) -> Result<Vec<SingReport>> {
    let partials: Vec<MPoly<Gf>> = (0..3).map(|i| h.derivative(w, i)).collect();
    // deg h = 1 mod p on this family, so Euler's identity puts h in the
    // ideal of its partials
    let mut gens = partials.clone();
    if (h.total_degree().unwrap_or(0) as u64) % w.p() != 1 {
        gens.push(h.clone());
    }
    let mut pts = projective_zeros(w, &gens, seed)?.points;
    sort_classes(w, &mut pts);
    let taylor = chart_taylor(w, h);
    let charts: Vec<MPoly<Gf>> = (0..3).map(|c| h.dehomogenize(w, c)).collect();
    pts.into_par_iter()
        .map(|pt| {
            let k = pt.field.clone();
            let chart = pt.chart();
            let aff = pt.affine();
            let (singular, node) = ordinary_double_point(&k, &taylor[chart], &aff);
            if !singular {
                return Err(Error::CrossValidationFailure(
                    "reported point is not singular".into(),
                ));
            }
            let mu = if node {
                Some(1)
            } else {
                match milnor_number(&k, &charts[chart], &aff) {
                    Ok(m) => Some(m),
                    Err(Error::InfiniteMilnor) => None,
                    Err(e) => return Err(e),
                }
            };
            let r = branches(&k, &pt.coords, node);
            let class = match mu {
                Some(1) if r == 2 => SingClass::Node,
                Some(m) => SingClass::Special { mu: m, r },
                None => SingClass::Unknown,
            };
            Ok(SingReport {
                degree: pt.degree(),
                point: pt,
                mu,
                branches: r,
                class,
            })
        })
        .collect()
}

/// Singular points of the dual curve over the closure, one entry per Galois
/// orbit over the work field. Branch counts are fibre sizes of the reduced
/// Gauss map of C, which is the normalization of C^.
pub fn singularity_census(d: &DualCurve<Gf>, c: &CurveC<Gf>, seed: u64) -> Result<Vec<SingReport>> {
    let (w, emb, cw) = embed_curve(c)?;
    let hw = d.h.map_coeffs(&w, |a| emb.apply(*a));
    classify_singularities(&w, &hw, seed, |k, y, _| {
        cw.reduced_gauss_preimage_count(k, y)
    })
}

/// Number of geometric points in entries matching `pred`.
pub fn count_where(reports: &[SingReport], pred: impl Fn(&SingReport) -> bool) -> usize {
    reports.iter().filter(|r| pred(r)).map(|r| r.degree).sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlexKind {
    Flex,
    Hyperflex,
}

#[derive(Clone, Debug)]
pub struct FlexPoint {
    pub point: PointClass<Gf>,
    pub degree: usize,
    pub line_mult: Option<u64>,
    pub kind: FlexKind,
}

#[derive(Clone, Debug)]
pub struct FlexCensus {
    pub flex_count: usize,
    pub hyperflex_count: usize,
    pub points: Vec<FlexPoint>,
    /// Every flex also lies on the flex scheme of a second auxiliary line.
    pub certified: bool,
}

/// Flexes of a smooth member: the zeros of (F, Phi) over the closure,
/// sorted by the contact order of the tangent. Zeros on the auxiliary line
/// with contact exactly q are the known spurious part of the scheme.
pub fn flex_census(c: &CurveC<Gf>, seed: u64) -> Result<FlexCensus> {
    let (w, _, cw) = embed_curve(c)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf1e);
    let aux: [u32; 3] = [0, 1, 2].map(|_| w.random(&mut rng));
    let aux2: [u32; 3] = [0, 1, 2].map(|_| w.random(&mut rng));
    let phi = cw.flex_scheme(&aux);
    let phi2 = cw.flex_scheme(&aux2);
    let f = cw.expand();
    let mut pts = projective_zeros(&w, &[f, phi], seed)?.points;
    sort_classes(&w, &mut pts);
    let q = c.q();
    let classified: Vec<Result<Option<(FlexPoint, bool)>>> = pts
        .into_par_iter()
        .map(|pt| {
            let k = &pt.field;
            let t = cw.gauss_map(k, &pt.coords)?;
            let m = cw.line_mult(k, &t, &pt.coords)?;
            let kind = match m {
                Multiplicity::Finite(n) if n == q + 1 => FlexKind::Flex,
                Multiplicity::Finite(n) if n > q + 1 => FlexKind::Hyperflex,
                Multiplicity::Infinite => FlexKind::Hyperflex,
                Multiplicity::Finite(_) => {
                    let lam = aux.map(|a| Extends::<Gf>::embed(k, &a));
                    if k.is_zero(&dot(k, &lam, &pt.coords)) {
                        return Ok(None);
                    }
                    return Err(Error::CrossValidationFailure(
                        "flex scheme vanishes at a point of contact q off the auxiliary line"
                            .into(),
                    ));
                }
            };
            let second = pt.is_zero_of(&phi2);
            Ok(Some((
                FlexPoint {
                    degree: pt.degree(),
                    point: pt,
                    line_mult: m.finite(),
                    kind,
                },
                second,
            )))
        })
        .collect();
    let mut points = Vec::new();
    let mut certified = true;
    for r in classified {
        if let Some((fp, ok)) = r? {
            certified &= ok;
            points.push(fp);
        }
    }
    let flex_count = points
        .iter()
        .filter(|p| p.kind == FlexKind::Flex)
        .map(|p| p.degree)
        .sum();
    let hyperflex_count = points
        .iter()
        .filter(|p| p.kind == FlexKind::Hyperflex)
        .map(|p| p.degree)
        .sum();
    Ok(FlexCensus {
        flex_count,
        hyperflex_count,
        points,
        certified,
    })
}

/// (d - 1)(d - 2)/2.
pub fn genus_smooth(d: u64) -> u64 {
    (d - 1) * (d - 2) / 2
}

/// Arithmetic genus of the dual minus half the sum of mu_P + r_P - 1.
pub fn genus_from_census(d_dual: u64, census: &[SingReport]) -> Result<i64> {
    let mut sum: u64 = 0;
    for r in census {
        let mu = r.mu.ok_or(Error::InfiniteMilnor)?;
        sum += (mu + r.branches as u64 - 1) * r.degree as u64;
    }
    if sum % 2 == 1 {
        return Err(Error::OddSum(sum));
    }
    Ok(genus_smooth(d_dual) as i64 - (sum / 2) as i64)
}

/// Whether the reduced Gauss image of every flex is a smooth point of H.
pub fn flex_images_smooth(c: &CurveC<Gf>, d: &DualCurve<Gf>, flexes: &FlexCensus) -> Result<bool> {
    let (w, emb, cw) = embed_curve(c)?;
    let hw = d.h.map_coeffs(&w, |a| emb.apply(*a));
    let partials: Vec<MPoly<Gf>> = (0..3).map(|i| hw.derivative(&w, i)).collect();
    for fp in flexes.points.iter().filter(|p| p.kind == FlexKind::Flex) {
        let k = &fp.point.field;
        let y = cw.reduced_gauss_map(k, &fp.point.coords)?;
        if partials.iter().all(|g| k.is_zero(&g.eval_ext(k, &y))) {
            return Ok(false);
        }
    }
    Ok(true)
}
