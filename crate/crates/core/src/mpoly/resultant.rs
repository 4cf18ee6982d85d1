use super::MPoly;
use crate::gf::Field;

/// Resultant with respect to `var`, as the determinant of the Sylvester
/// matrix computed by fraction-free (Bareiss) elimination.
pub fn resultant<F: Field>(f: &F, a: &MPoly<F>, b: &MPoly<F>, var: usize) -> MPoly<F> {
    let nv = a.nvars();
    if a.is_zero() || b.is_zero() {
        return MPoly::zero(nv);
    }
    let ca = a.coeffs_in(f, var);
    let cb = b.coeffs_in(f, var);
    let (m, n) = (ca.len() - 1, cb.len() - 1);
    if m == 0 {
        return ca[0].pow(f, n as u32);
    }
    if n == 0 {
        return cb[0].pow(f, m as u32);
    }
    let size = m + n;
    let mut mat: Vec<Vec<MPoly<F>>> = vec![vec![MPoly::zero(nv); size]; size];
    for i in 0..n {
        for (j, c) in ca.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in cb.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(f, mat, nv)
}

fn bareiss_det<F: Field>(f: &F, mut m: Vec<Vec<MPoly<F>>>, nv: usize) -> MPoly<F> {
    let n = m.len();
    let mut negate = false;
    let mut prev = MPoly::one(f, nv);
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return MPoly::zero(nv),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i][j].mul(f, &m[k][k]).sub(f, &m[i][k].mul(f, &m[k][j]));
                m[i][j] = t.div_exact(f, &prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg(f)
    } else {
        d
    }
}
