// Floating-point root finder used only as an independent test oracle.

use num_complex::Complex64;

/// All complex roots of `Σ coeffs[i]·t^i` (ascending), by Aberth iteration on
/// the polynomial rescaled so its roots have modulus near one.
pub fn complex_roots_f64(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = coeffs[n];
    // Cauchy-style scale: geometric mean of |c_0/c_n|
    let scale = (coeffs[0].abs() / lead.abs()).powf(1.0 / n as f64).max(1e-3);
    let c: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .map(|(i, &a)| a * scale.powi(i as i32) / (lead * scale.powi(n as i32)))
        .collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (k as f64 + 0.4) / n as f64 + 0.3))
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            z[i] -= w;
            max_step = max_step.max(w.norm());
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // Newton polish against the rescaled polynomial
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*zi);
            if dp.norm() > 0.0 {
                *zi -= p / dp;
            }
        }
    }
    z.into_iter().map(|r| r * scale).collect()
}
