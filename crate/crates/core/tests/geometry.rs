//! Geometric cross-checks of the census on a random member and the Fermat
//! curve at q = 2.

use std::sync::OnceLock;

use gauss_dual::census::{count_where, singularity_census, SingClass, SingReport};
use gauss_dual::curves::{fermat_curve, line_basis, random_curve, work_field, CurveC};
use gauss_dual::dualize::{
    dual_curve_interpolate, fermat_dual_closed_form, verify_dual, DualCurve,
};
use gauss_dual::gf::{squarefree_decomposition, Ext, Field, Gf};
use gauss_dual::ideals::milnor_number;
use gauss_dual::mpoly::{BiPoly, MPoly};
use gauss_dual::Error;

struct Setup {
    w: Gf,
    cw: CurveC<Gf>,
    hw: MPoly<Gf>,
    census: Vec<SingReport>,
}

fn setup(c: &CurveC<Gf>, d: &DualCurve<Gf>) -> Setup {
    let (w, emb) = work_field(c.field()).unwrap();
    let cw = c.map(&w, |a| emb.apply(*a));
    let hw = d.h.map_coeffs(&w, |a| emb.apply(*a));
    let census = singularity_census(d, c, 3).unwrap();
    Setup { w, cw, hw, census }
}

fn base() -> Gf {
    Gf::new(2, 8, 0).unwrap()
}

fn generic() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let (c, _) = random_curve(&base(), 2, 5).unwrap();
        let d = dual_curve_interpolate(&c, None, 5).unwrap();
        setup(&c, &d)
    })
}

fn fermat() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let f = base();
        let c = fermat_curve(&f, 2).unwrap();
        let d = fermat_dual_closed_form(2, &f).unwrap();
        setup(&c, &d)
    })
}

/// Contact orders of the line l with C at its points, over the closure,
/// as (multiplicity, number of points).
fn contact_profile(k: &Ext<Gf>, cw: &CurveC<Gf>, l: &[Vec<u32>; 3]) -> Vec<(usize, usize)> {
    let (a, b) = line_basis(k, l);
    let r = cw.restrict_to_line(k, &a, &b);
    let d = cw.degree() as usize;
    let mut out: Vec<(usize, usize)> = squarefree_decomposition(k, &r)
        .into_iter()
        .map(|(g, m)| (m, g.degree().unwrap_or(0)))
        .filter(|&(_, n)| n > 0)
        .collect();
    // the point b itself, where the parametrization a + ub reaches u = oo
    let at_b = d - r.degree().unwrap();
    if at_b > 0 {
        out.push((at_b, 1));
    }
    let mut merged: Vec<(usize, usize)> = Vec::new();
    for (m, n) in out {
        match merged.iter_mut().find(|e| e.0 == m) {
            Some(e) => e.1 += n,
            None => merged.push((m, n)),
        }
    }
    merged.sort();
    merged
}

fn delta(q: u64) -> usize {
    (q * (q * q + q + 1) * (q * q * q + 3 * q * q + 3 * q - 1) / 2) as usize
}

#[test]
fn generic_member_has_only_nodes() {
    let s = generic();
    assert_eq!(
        count_where(&s.census, |r| r.class == SingClass::Node),
        delta(2)
    );
    assert_eq!(count_where(&s.census, |r| r.class != SingClass::Node), 0);
}

#[test]
fn node_branches_sum_to_twice_delta() {
    let s = generic();
    let total: usize = s.census.iter().map(|r| r.branches * r.degree).sum();
    assert_eq!(total, 2 * delta(2));
}

#[test]
fn nodes_are_double_tangents() {
    let s = generic();
    let (q, d) = (2usize, 7usize);
    for r in &s.census {
        let k = &r.point.field;
        let tangent = r.point.coords.clone().map(|c| k.pow(&c, q as u64));
        let profile = contact_profile(k, &s.cw, &tangent);
        assert_eq!(profile, vec![(1, d - 2 * q), (q, 2)], "at {:?}", r.point);
    }
}

#[test]
fn node_classification_matches_tangent_cone() {
    let s = generic();
    let w = &s.w;
    for r in &s.census {
        let k = &r.point.field;
        let chart = s.hw.dehomogenize(w, r.point.chart());
        let aff = r.point.affine();
        let local = BiPoly::<Ext<Gf>>::from_mpoly(k, &chart, [0, 1]).translate(k, &aff[0], &aff[1]);
        let b = local.coeff(k, 1, 1);
        // a x^2 + bxy + c y^2 is the square of a linear form iff b = 0 in
        // characteristic 2
        assert!(
            !k.is_zero(&b),
            "tangent cone is a double line at {:?}",
            r.point
        );
        assert_eq!(milnor_number(k, &chart, &aff).unwrap(), 1);
        assert_eq!((r.mu, r.branches, r.class), (Some(1), 2, SingClass::Node));
    }
}

#[test]
fn fermat_specials_match_the_semi_quasihomogeneous_formula() {
    let s = fermat();
    let q = 2u64;
    let (alpha, beta) = (q * q + q + 1, q + 1);
    let specials: Vec<&SingReport> = s
        .census
        .iter()
        .filter(|r| r.class != SingClass::Node)
        .collect();
    assert_eq!(specials.iter().map(|r| r.degree).sum::<usize>(), 21);
    for r in specials {
        let k = &r.point.field;
        let chart = s.hw.dehomogenize(&s.w, r.point.chart());
        let mu = milnor_number(k, &chart, &r.point.affine()).unwrap();
        assert_eq!(mu, (alpha - 1) * (beta - 1));
        assert_eq!(r.branches, 1);
        assert!(
            r.point.coords.iter().any(|c| k.is_zero(c)),
            "special point off the triangle"
        );
    }
}

#[test]
fn fermat_nodes_are_double_tangents() {
    let s = fermat();
    for r in s.census.iter().filter(|r| r.class == SingClass::Node) {
        let k = &r.point.field;
        let tangent = r.point.coords.clone().map(|c| k.pow(&c, 2));
        assert_eq!(contact_profile(k, &s.cw, &tangent), vec![(1, 3), (2, 2)]);
    }
}

#[test]
fn random_members_depend_on_the_seed() {
    let f = base();
    let (a, _) = random_curve(&f, 2, 7).unwrap();
    let (b, _) = random_curve(&f, 2, 8).unwrap();
    let (a2, _) = random_curve(&f, 2, 7).unwrap();
    assert_ne!(a, b);
    assert_eq!(a, a2);
}

#[test]
fn too_small_degree_has_no_kernel() {
    let (c, _) = random_curve(&base(), 2, 5).unwrap();
    assert_eq!(
        dual_curve_interpolate(&c, Some(20), 1).unwrap_err(),
        Error::NoKernel(20)
    );
}

#[test]
fn interpolated_dual_passes_holdout() {
    let (c, _) = random_curve(&base(), 2, 5).unwrap();
    let d = dual_curve_interpolate(&c, None, 5).unwrap();
    assert_eq!(d.degree, 21);
    let r = verify_dual(&c, &d, 99).unwrap();
    assert!(r.pass(), "{r:?}");
    assert_eq!(r.samples, 100);
}
