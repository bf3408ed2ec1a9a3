use num_traits::ToPrimitive;

use crate::polyring::IntPoly;

include!("../tests/common/roots.rs");

pub fn complex_roots(h: &IntPoly) -> Vec<Complex64> {
    let c: Vec<f64> = h.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
    complex_roots_f64(&c)
}
