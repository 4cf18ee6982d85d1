use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gauss_dual::curves::{transform_coordinates, CurveC};
use gauss_dual::gf::{Field, Gf};
use gauss_dual::io::{curve_from_json, curve_to_json};
use gauss_dual::linalg::Matrix;
use gauss_dual::mpoly::{parse_poly, poly_to_text, vars, MPoly};

fn setting(which: u8) -> (Gf, u64) {
    match which % 3 {
        0 => (Gf::new(2, 8, 0).unwrap(), 2),
        1 => (Gf::new(3, 4, 0).unwrap(), 3),
        _ => (Gf::new(2, 4, 0).unwrap(), 4),
    }
}

fn member(f: &Gf, q: u64, seed: u64) -> CurveC<Gf> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let a: Vec<u32> = (0..27).map(|_| f.random(&mut rng)).collect();
        if let Ok(c) = CurveC::new(f, q, a) {
            return c;
        }
    }
}

fn invertible(f: &Gf, seed: u64) -> Matrix<Gf> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = Matrix::from_rows(
            (0..3)
                .map(|_| (0..3).map(|_| f.random(&mut rng)).collect())
                .collect(),
        );
        if !f.is_zero(&m.determinant(f)) {
            return m;
        }
    }
}

fn matmul(f: &Gf, a: &Matrix<Gf>, b: &Matrix<Gf>) -> Matrix<Gf> {
    let rows = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| (0..3).fold(f.zero(), |s, l| f.add(&s, &f.mul(a.get(i, l), b.get(l, j)))))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows)
}

/// x_i = sum_l t_il y_l.
fn linear_images(f: &Gf, t: &Matrix<Gf>) -> Vec<MPoly<Gf>> {
    let y = vars(f, 3);
    (0..3)
        .map(|i| (0..3).fold(MPoly::zero(3), |s, l| s.add(f, &y[l].scale(f, t.get(i, l)))))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_identity(which in 0u8..3, seed in any::<u64>()) {
        let (f, q) = setting(which);
        let c = member(&f, q, seed);
        let x = vars(&f, 3);
        let parts = c.partials();
        let sum = (0..3).fold(MPoly::zero(3), |s, i| s.add(&f, &x[i].mul(&f, &parts[i])));
        prop_assert_eq!(sum, c.expand());
    }

    #[test]
    fn partials_are_qth_powers(which in 0u8..3, seed in any::<u64>()) {
        let (f, q) = setting(which);
        let c = member(&f, q, seed);
        let big = c.expand();
        let g = c.reduced_gauss_polys();
        for i in 0..3 {
            let d = big.derivative(&f, i);
            prop_assert_eq!(&c.partials()[i], &d);
            prop_assert_eq!(g[i].frobenius_power(&f, q), d.clone());
            prop_assert_eq!(d.qth_root(&f, q).unwrap(), g[i].clone());
        }
    }

    #[test]
    fn transform_matches_substitution(which in 0u8..3, seed in any::<u64>()) {
        let (f, q) = setting(which);
        let c = member(&f, q, seed);
        let t = invertible(&f, seed ^ 1);
        let tc = transform_coordinates(&c, &t).unwrap();
        prop_assert_eq!(tc.expand(), c.expand().substitute(&f, &linear_images(&f, &t)));
    }

    #[test]
    fn transform_tensor_formula(which in 0u8..3, seed in any::<u64>()) {
        // b_lmn = sum_ijk a_ijk t_il t_jm^q t_kn^(q^2)
        let (f, q) = setting(which);
        let c = member(&f, q, seed);
        let t = invertible(&f, seed ^ 2);
        let tc = transform_coordinates(&c, &t).unwrap();
        for l in 0..3 {
            for m in 0..3 {
                for n in 0..3 {
                    let mut b = f.zero();
                    for i in 0..3 {
                        for j in 0..3 {
                            for k in 0..3 {
                                let term = f.mul(
                                    &f.mul(c.a(i, j, k), t.get(i, l)),
                                    &f.mul(&f.pow(t.get(j, m), q), &f.pow(t.get(k, n), q * q)),
                                );
                                b = f.add(&b, &term);
                            }
                        }
                    }
                    prop_assert_eq!(tc.a(l, m, n), &b);
                }
            }
        }
    }

    #[test]
    fn transforms_compose(which in 0u8..3, seed in any::<u64>()) {
        let (f, q) = setting(which);
        let c = member(&f, q, seed);
        let s = invertible(&f, seed ^ 3);
        let t = invertible(&f, seed ^ 4);
        let two_steps = transform_coordinates(&transform_coordinates(&c, &s).unwrap(), &t).unwrap();
        prop_assert_eq!(two_steps, transform_coordinates(&c, &matmul(&f, &s, &t)).unwrap());
    }

    #[test]
    fn identity_transform_is_trivial(which in 0u8..3, seed in any::<u64>()) {
        let (f, q) = setting(which);
        let c = member(&f, q, seed);
        prop_assert_eq!(transform_coordinates(&c, &Matrix::identity(&f, 3)).unwrap(), c);
    }

    #[test]
    fn text_round_trip(which in 0u8..3, seed in any::<u64>()) {
        let (f, q) = setting(which);
        let big = member(&f, q, seed).expand();
        prop_assert_eq!(parse_poly(&f, &poly_to_text(&f, &big), 3).unwrap(), big);
    }

    #[test]
    fn curve_json_round_trip(which in 0u8..3, seed in any::<u64>()) {
        let (f, q) = setting(which);
        let c = member(&f, q, seed);
        let text = curve_to_json(&c);
        let back = curve_from_json(&text).unwrap();
        prop_assert_eq!(curve_to_json(&back), text);
        prop_assert_eq!(back, c);
    }
}
