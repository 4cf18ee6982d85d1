//! Acceptance suite: one PASS/FAIL line per criterion. Expected values are
//! recomputed here from first principles before comparing.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gauss_dual::census::{bh_census, verify_theorem1, verify_theorem2, CensusReport};
use gauss_dual::curves::{ballico_hefez, fermat_curve, transform_coordinates, CurveC};
use gauss_dual::dualize::dual_curve_interpolate;
use gauss_dual::gf::{Field, Gf};
use gauss_dual::ideals::{intersection_number, milnor_at_origin, Multiplicity};
use gauss_dual::linalg::Matrix;
use gauss_dual::mpoly::{monomials_of_degree, vars, BiPoly, MPoly};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gf(p: u64, k: usize) -> Gf {
    Gf::new(p, k, 0).unwrap()
}

fn genus(d: u64) -> i64 {
    ((d - 1) * (d - 2) / 2) as i64
}

/// Class of a smooth member: deg of the Gauss image d(d-1), divided by the
/// inseparable degree q.
fn class(q: u64) -> u64 {
    let d = q * q + q + 1;
    d * (d - 1) / q
}

fn all_checks(r: &CensusReport) -> Outcome {
    let bad: Vec<String> = r
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{} = {}", c.name, c.found))
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))
}

fn criterion1() -> Outcome {
    let f = gf(2, 8);
    // every cubic monomial with coefficient 1
    let h = MPoly::from_terms(
        &f,
        3,
        monomials_of_degree(3, 3)
            .into_iter()
            .map(|m| (m, 1))
            .collect(),
    );
    let x7: Vec<MPoly<Gf>> = vars(&f, 3).iter().map(|v| v.pow(&f, 7)).collect();
    let want = h.substitute(&f, &x7).normalize(&f);
    let c = fermat_curve(&f, 2).unwrap();
    let d = dual_curve_interpolate(&c, None, 1).map_err(|e| e.to_string())?;
    ensure(d.h.normalize(&f) == want, || {
        format!("interpolated dual of degree {} differs", d.degree)
    })
}

fn criterion2() -> Outcome {
    let r = verify_theorem2(&gf(2, 8), 2).map_err(|e| e.to_string())?;
    all_checks(&r)?;
    ensure(r.node_count == 49, || format!("nodes {}", r.node_count))?;
    let sp = &r.specials;
    ensure(
        sp.len() == 1 && sp[0].count == 21 && sp[0].mu == Some(12) && sp[0].r == 1,
        || format!("{sp:?}"),
    )?;
    let want = genus(class(2)) - (49 * 2 + 21 * 12) / 2;
    ensure(want == genus(7) && r.genus_dual == Some(want), || {
        format!("genus {:?}", r.genus_dual)
    })
}

fn theorem1_numbers(r: &CensusReport, q: u64) -> Outcome {
    let d = q * q + q + 1;
    let delta = (genus(class(q)) - genus(d)) as u64;
    let flexes = (q * q * q + 2 * q * q - q + 1) * d;
    ensure(r.dual_degree as u64 == class(q), || {
        format!("dual degree {}", r.dual_degree)
    })?;
    ensure(
        r.node_count as u64 == delta && r.specials.is_empty(),
        || format!("nodes {}", r.node_count),
    )?;
    ensure(r.flex_count == Some(flexes as usize), || {
        format!("flexes {:?}", r.flex_count)
    })?;
    ensure(r.hyperflex_count == Some(0), || {
        format!("hyperflexes {:?}", r.hyperflex_count)
    })?;
    ensure(r.genus_dual == Some(genus(d)), || {
        format!("genus {:?}", r.genus_dual)
    })?;
    ensure(r.retries <= 2, || format!("{} resamples", r.retries))?;
    all_checks(r)
}

fn criterion3() -> Outcome {
    let outcomes = verify_theorem1(&gf(2, 8), 2, 1, 3);
    ensure(outcomes.len() == 3, || "trial count".into())?;
    for o in &outcomes {
        let r = o
            .report
            .as_ref()
            .ok_or_else(|| format!("trial {}: {:?}", o.trial, o.error))?;
        theorem1_numbers(r, 2).map_err(|e| format!("trial {}: {e}", o.trial))?;
    }
    Ok(())
}

fn criterion4() -> Outcome {
    let f = gf(3, 8);
    let t1 = verify_theorem1(&f, 3, 1, 1);
    let r = t1[0]
        .report
        .as_ref()
        .ok_or_else(|| format!("{:?}", t1[0].error))?;
    ensure(class(3) == 52, || "class".into())?;
    theorem1_numbers(r, 3)?;
    let t2 = verify_theorem2(&f, 3).map_err(|e| e.to_string())?;
    all_checks(&t2)?;
    ensure(t2.node_count == 13 * 13 * 6 / 2, || {
        format!("nodes {}", t2.node_count)
    })?;
    let sp = &t2.specials;
    ensure(
        sp.len() == 1 && sp[0].count == 39 && sp[0].mu == Some(9 * 4) && sp[0].r == 1,
        || format!("{sp:?}"),
    )
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// a x^alpha + b y^beta plus random terms of weighted degree above
/// alpha beta for the weights (beta, alpha).
fn semi_quasihomogeneous(f: &Gf, alpha: u32, beta: u32, rng: &mut ChaCha8Rng) -> BiPoly<Gf> {
    let (nx, ny) = (2 * alpha as usize + 1, 2 * beta as usize + 1);
    let mut rows = vec![vec![f.zero(); nx]; ny];
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let c = f.random(rng);
        if !f.is_zero(&c) {
            break c;
        }
    };
    rows[0][alpha as usize] = nonzero(rng);
    rows[beta as usize][0] = nonzero(rng);
    for (j, row) in rows.iter_mut().enumerate() {
        for (i, c) in row.iter_mut().enumerate() {
            if i as u32 * beta + j as u32 * alpha > alpha * beta && rng.gen_bool(0.3) {
                *c = f.random(rng);
            }
        }
    }
    BiPoly::from_rows(f, rows)
}

fn criterion5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let fields = [gf(2, 1), gf(3, 1), gf(5, 1)];
    let mut done = 0;
    while done < 50 {
        let f = &fields[done % 3];
        let p = f.p() as u32;
        let alpha = rng.gen_range(2..=7);
        let beta = rng.gen_range(2..=7);
        if gcd(alpha, beta) != 1 || alpha % p == 0 || beta % p == 0 {
            continue;
        }
        let g = semi_quasihomogeneous(f, alpha, beta, &mut rng);
        let want = ((alpha - 1) * (beta - 1)) as u64;
        let got =
            milnor_at_origin(f, &g).map_err(|e| format!("p = {p}, ({alpha}, {beta}): {e}"))?;
        ensure(got == want, || {
            format!("p = {p}, ({alpha}, {beta}): mu = {got}, expected {want}")
        })?;
        done += 1;
    }
    Ok(())
}

/// Random polynomial of degree at most 3 vanishing at the origin.
fn random_through_origin(f: &Gf, rng: &mut ChaCha8Rng) -> MPoly<Gf> {
    let mut terms = Vec::new();
    for d in 1..=3 {
        for m in monomials_of_degree(2, d) {
            if rng.gen_bool(0.4) {
                terms.push((m, f.random(rng)));
            }
        }
    }
    MPoly::from_terms(f, 2, terms)
}

fn add(a: Multiplicity, b: Multiplicity) -> Multiplicity {
    match (a, b) {
        (Multiplicity::Finite(x), Multiplicity::Finite(y)) => Multiplicity::Finite(x + y),
        _ => Multiplicity::Infinite,
    }
}

fn criterion6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for trial in 0..100 {
        let f = gf([2, 3, 5][trial % 3], 1);
        let o = [f.zero(), f.zero()];
        let i = |a: &MPoly<Gf>, b: &MPoly<Gf>| intersection_number(&f, a, b, &o);
        let (a, b, c) = (
            random_through_origin(&f, &mut rng),
            random_through_origin(&f, &mut rng),
            random_through_origin(&f, &mut rng),
        );
        let h = random_through_origin(&f, &mut rng).add(&f, &MPoly::one(&f, 2));
        ensure(i(&a, &b) == i(&b, &a), || {
            format!("symmetry, trial {trial}")
        })?;
        ensure(i(&a, &b.mul(&f, &c)) == add(i(&a, &b), i(&a, &c)), || {
            format!("additivity, trial {trial}")
        })?;
        ensure(i(&a, &b) == i(&a, &b.add(&f, &h.mul(&f, &a))), || {
            format!("invariance, trial {trial}")
        })?;
        let m = 1 + trial as u32 % 6;
        let x = vars(&f, 2);
        ensure(
            i(&x[0], &x[1].pow(&f, m)) == Multiplicity::Finite(m as u64),
            || format!("I(x, y^{m})"),
        )?;
    }
    Ok(())
}

fn criterion7() -> Outcome {
    for (q, f) in [(2, gf(2, 8)), (3, gf(3, 8))] {
        let r = bh_census(q, &f).map_err(|e| e.to_string())?;
        let want = (q * q - q) / 2;
        ensure(r.nodes_off_triangle as u64 == want, || {
            format!("q = {q}: {} nodes", r.nodes_off_triangle)
        })?;
        ensure(r.pass(), || format!("q = {q}: other singular points"))?;
        // image of the line under the (q + 1)-power map, over GF(p^16)
        let k = gf(q, 16 / if q == 2 { 1 } else { 2 });
        let h = ballico_hefez(q, &k).map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..200 {
            let (s, t) = (k.random(&mut rng), k.random(&mut rng));
            let u = k.neg(&k.add(&s, &t));
            let img = [s, t, u].map(|c| k.pow(&c, q + 1));
            ensure(k.is_zero(&h.eval(&k, &img)), || {
                format!("q = {q}: h does not vanish on the image")
            })?;
        }
    }
    Ok(())
}

fn random_member(f: &Gf, q: u64, rng: &mut ChaCha8Rng) -> CurveC<Gf> {
    let a: Vec<u32> = (0..27).map(|_| f.random(rng)).collect();
    CurveC::new(f, q, a).unwrap()
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    for trial in 0..20 {
        let (f, q) = if trial % 2 == 0 {
            (gf(2, 8), 2)
        } else {
            (gf(3, 4), 3)
        };
        let c = random_member(&f, q, &mut rng);
        let big = c.expand();
        let x = vars(&f, 3);
        let parts: Vec<MPoly<Gf>> = (0..3).map(|i| big.derivative(&f, i)).collect();
        let euler = (0..3).fold(MPoly::zero(3), |s, i| s.add(&f, &x[i].mul(&f, &parts[i])));
        ensure(euler == big, || format!("Euler identity, trial {trial}"))?;
        let g = c.reduced_gauss_polys();
        for i in 0..3 {
            let root = parts[i]
                .qth_root(&f, q)
                .map_err(|e| format!("partial {i} is not a q-th power: {e}"))?;
            ensure(root.frobenius_power(&f, q) == parts[i], || {
                format!("q-th root, trial {trial}")
            })?;
            ensure(root == g[i], || {
                format!("reduced Gauss polynomial {i}, trial {trial}")
            })?;
        }
    }
    for trial in 0..10 {
        let (f, q) = if trial % 2 == 0 {
            (gf(2, 8), 2)
        } else {
            (gf(3, 4), 3)
        };
        let c = random_member(&f, q, &mut rng);
        let t = loop {
            let m = Matrix::from_rows(
                (0..3)
                    .map(|_| (0..3).map(|_| f.random(&mut rng)).collect())
                    .collect(),
            );
            if !f.is_zero(&m.determinant(&f)) {
                break m;
            }
        };
        let y = vars(&f, 3);
        let images: Vec<MPoly<Gf>> = (0..3)
            .map(|i| {
                (0..3).fold(MPoly::zero(3), |s, l| {
                    s.add(&f, &y[l].scale(&f, t.get(i, l)))
                })
            })
            .collect();
        let tc = transform_coordinates(&c, &t).map_err(|e| e.to_string())?;
        ensure(tc.expand() == c.expand().substitute(&f, &images), || {
            format!("transform, trial {trial}")
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "Fermat q=2: interpolated dual equals h(x0^7, x1^7, x2^7)",
            criterion1,
        ),
        (
            "Fermat q=2: 49 nodes, 21 points with mu = 12, r = 1, genus 15",
            criterion2,
        ),
        (
            "random members q=2: degree 21, 175 nodes, 105 flexes, genus 15",
            criterion3,
        ),
        (
            "q=3: degree 52, 1209 nodes, 559 flexes; Fermat 507 nodes, 39 with mu = 36",
            criterion4,
        ),
        (
            "semi-quasihomogeneous Milnor numbers (alpha - 1)(beta - 1)",
            criterion5,
        ),
        (
            "intersection multiplicity axioms on 100 random pairs",
            criterion6,
        ),
        (
            "Ballico-Hefez: 1 and 3 nodes, vanishing on 200 image points",
            criterion7,
        ),
        (
            "Euler identity, q-th power partials, q-th roots, coordinate changes",
            criterion8,
        ),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {} {name} ({secs:.1}s)", n + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.1}s): {e}", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
