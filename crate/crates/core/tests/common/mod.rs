#![allow(dead_code)]

pub mod roots;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use fourfold::polyring::IntPoly;

pub fn complex_roots(h: &IntPoly) -> Vec<Complex64> {
    let c: Vec<f64> = h.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
    roots::complex_roots_f64(&c)
}

/// Some proper subset of the roots has a monic product with integer
/// coefficients (to `1e-6`).
pub fn numerically_reducible(h: &IntPoly) -> bool {
    let roots = complex_roots(h);
    let n = roots.len();
    (1u32..(1 << n) - 1).any(|mask| {
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        for (i, z) in roots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
                for (j, c) in poly.iter().enumerate() {
                    next[j + 1] += c;
                    next[j] -= c * z;
                }
                poly = next;
            }
        }
        poly.iter()
            .all(|c| c.im.abs() < 1e-6 && (c.re - c.re.round()).abs() < 1e-6)
    })
}

/// Irreducible with every root of modulus `√q` up to relative `tol`.
pub fn numeric_weil(h: &IntPoly, q: u64, tol: f64) -> bool {
    let r = (q as f64).sqrt();
    !numerically_reducible(h)
        && complex_roots(h)
            .iter()
            .all(|z| (z.norm() / r - 1.0).abs() < tol)
}
