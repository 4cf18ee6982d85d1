//! The Ballico-Hefez curve: image of the line x_0 + x_1 + x_2 = 0 under
//! [x_0 : x_1 : x_2] -> [x_0^(q+1) : x_1^(q+1) : x_2^(q+1)].

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::is_power_of;
use crate::error::{Error, Result};
use crate::gf::{random_irreducible, Ext, Field};
use crate::mpoly::{vars, MPoly};

const SAMPLES: usize = 200;

/// The defining polynomial h of degree q + 1, checked against 200 image
/// points over an extension.
pub fn ballico_hefez<F: Field>(q: u64, field: &F) -> Result<MPoly<F>> {
    let p = field.characteristic();
    if !is_power_of(p, q) {
        return Err(Error::InvalidInput(format!(
            "q = {q} is not a power of {p}"
        )));
    }
    let h = if p == 2 {
        formula_even(q, field)
    } else {
        formula_odd(q, field)
    };
    cross_validate(q, field, &h)?;
    Ok(h)
}

fn formula_even<F: Field>(q: u64, f: &F) -> MPoly<F> {
    let x = vars(f, 3);
    let q32 = q as u32;
    let mut h = MPoly::zero(3);
    for v in &x {
        h = h.add(f, &v.pow(f, q32 + 1));
    }
    for (a, b) in [(0, 2), (1, 2), (2, 0), (2, 1)] {
        h = h.add(f, &x[a].pow(f, q32).mul(f, &x[b]));
    }
    let s = x[0].add(f, &x[1]).add(f, &x[2]);
    let mut e = 1u32;
    while e < q32 {
        let t = x[0]
            .mul(f, &x[1])
            .pow(f, e)
            .mul(f, &s.pow(f, q32 + 1 - 2 * e));
        h = h.add(f, &t);
        e *= 2;
    }
    h
}

fn formula_odd<F: Field>(q: u64, f: &F) -> MPoly<F> {
    let x = vars(f, 3);
    let q32 = q as u32;
    let mut h = MPoly::zero(3);
    for v in &x {
        h = h.add(f, &v.pow(f, q32 + 1));
    }
    for a in 0..3 {
        for b in 0..3 {
            if a != b {
                h = h.sub(f, &x[a].pow(f, q32).mul(f, &x[b]));
            }
        }
    }
    let two = f.from_int(2);
    let mut quad = MPoly::zero(3);
    for v in &x {
        quad = quad.add(f, &v.pow(f, 2));
    }
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        quad = quad.sub(f, &x[a].mul(f, &x[b]).scale(f, &two));
    }
    h.add(f, &quad.pow(f, q32.div_ceil(2)))
}

fn cross_validate<F: Field>(q: u64, f: &F, h: &MPoly<F>) -> Result<()> {
    // an extension with comfortably more than 200 points on the line
    let mut deg = 1;
    if let Some(n) = f.small_order() {
        while (n as f64).powi(deg as i32) < 65536.0 {
            deg += 1;
        }
    }
    let k = Ext::new(f, &random_irreducible(f, deg, 0xb4));
    let mut rng = ChaCha8Rng::seed_from_u64(0xb4);
    for _ in 0..SAMPLES {
        let s = k.random(&mut rng);
        let t = k.random(&mut rng);
        let u = k.neg(&k.add(&s, &t));
        let img = [s, t, u].map(|c| k.pow(&c, q + 1));
        if !k.is_zero(&h.eval_ext(&k, &img)) {
            return Err(Error::CrossValidationFailure(
                "Ballico-Hefez polynomial does not vanish on the image of the line".into(),
            ));
        }
    }
    if h.is_zero() {
        return Err(Error::CrossValidationFailure(
            "Ballico-Hefez polynomial is zero".into(),
        ));
    }
    Ok(())
}
