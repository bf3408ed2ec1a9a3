//! `q`-Weil numbers given by their minimal polynomials.
//!
//! The circle test is exact: for `h` of degree `2d` satisfying
//! `t^{2d}·h(q/t) = q^d·h(t)` there is a unique `g` of degree `d` with
//! `h(t) = t^d·g(t + q/t)`, and every root of `h` lies on `|z| = √q` exactly
//! when every root of `g` is real with `β² < 4q`.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::abelianfield::{AbelianFieldModel, FieldError};
use crate::intmath::{euler_phi, factorize, squarefree_part};
use crate::polyring::{
    is_irreducible, is_q_symmetric, scaled_root_min_poly, sturm_count, Bound, IntPoly, PolyError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeilError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("polynomial is not {q}-symmetric")]
    NotSymmetric { q: u64 },
    #[error("declared center has degree {model}, polynomial has degree {poly}")]
    ModelDegreeMismatch { model: u64, poly: usize },
    #[error("expected a quartic, got degree {0}")]
    NotQuartic(usize),
    #[error("{poly} is not a {q}-Weil polynomial")]
    NotWeil { poly: String, q: u64 },
    #[error("scaling factor c = {0} must be a prime power")]
    BadScaling(u64),
}

/// `q = p^a`, `h` monic, optionally with a declared abelian model of `Q(π)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeilCandidate {
    pub q: u64,
    pub p: u64,
    pub a: u32,
    pub h: IntPoly,
    pub model: Option<AbelianFieldModel>,
}

impl WeilCandidate {
    pub fn new(q: u64, h: IntPoly, model: Option<AbelianFieldModel>) -> Result<Self, WeilError> {
        let (p, a) = prime_power(q)?;
        if !h.is_monic() {
            return Err(PolyError::NotMonic.into());
        }
        if let Some(m) = &model {
            let deg = h.degree().unwrap_or(0);
            if m.degree() != deg as u64 {
                return Err(WeilError::ModelDegreeMismatch {
                    model: m.degree(),
                    poly: deg,
                });
            }
        }
        Ok(WeilCandidate { q, p, a, h, model })
    }

    pub fn degree(&self) -> usize {
        self.h.degree().unwrap_or(0)
    }
}

fn prime_power(q: u64) -> Result<(u64, u32), WeilError> {
    if q < 2 {
        return Err(WeilError::NotPrimePower(q));
    }
    factorize(q)
        .as_prime_power()
        .ok_or(WeilError::NotPrimePower(q))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WeilKind {
    /// No real roots: the CM case.
    Cm,
    /// `π = ±√q`.
    Real,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeilVerdict {
    pub is_weil: bool,
    pub kind: Option<WeilKind>,
    pub reason: String,
}

impl WeilVerdict {
    fn no(reason: impl Into<String>) -> Self {
        WeilVerdict {
            is_weil: false,
            kind: None,
            reason: reason.into(),
        }
    }

    fn yes(kind: WeilKind, reason: impl Into<String>) -> Self {
        WeilVerdict {
            is_weil: true,
            kind: Some(kind),
            reason: reason.into(),
        }
    }
}

fn exact_sqrt(q: u64) -> Option<u64> {
    let r = q.sqrt();
    (r * r == q).then_some(r)
}

/// Exact test that `h` is the minimal polynomial of a `q`-Weil number.
pub fn check_weil(h: &IntPoly, q: u64) -> Result<WeilVerdict, WeilError> {
    prime_power(q)?;
    let deg = h.degree().ok_or(PolyError::ZeroPolynomial)?;
    if !h.is_monic() {
        return Err(PolyError::NotMonic.into());
    }
    if deg == 0 {
        return Ok(WeilVerdict::no("constant polynomial"));
    }
    let sq = exact_sqrt(q);
    if deg == 1 {
        let c = -h.coeff(0);
        return Ok(if &c * &c == BigInt::from(q) {
            WeilVerdict::yes(WeilKind::Real, "π = ±√q is rational; out of fourfold scope")
        } else {
            WeilVerdict::no("linear root of modulus ≠ √q")
        });
    }
    if sq.is_none() && *h == IntPoly::from_i64s(&[-(q as i64), 0, 1]) {
        return Ok(WeilVerdict::yes(
            WeilKind::Real,
            "h = t² − q with q non-square; real Weil number, out of fourfold scope",
        ));
    }
    if deg % 2 == 1 {
        return Ok(WeilVerdict::no("odd degree above 1"));
    }
    if !is_irreducible(h)? {
        return Ok(WeilVerdict::no("reducible over Q"));
    }
    if !is_q_symmetric(h, q)? {
        return Ok(WeilVerdict::no("roots not stable under z ↦ q/z"));
    }
    if let Some(r) = sq {
        let r = BigInt::from(r);
        if h.eval(&r).is_zero() || h.eval(&-r).is_zero() {
            return Ok(WeilVerdict::no("±√q is a root"));
        }
    }
    let g = real_weil_transform(h, q)?;
    let d = deg / 2;
    if sturm_count(&g, &Bound::NegInfinity, &Bound::PosInfinity) != d {
        return Ok(WeilVerdict::no("real Weil transform has non-real roots"));
    }
    if sturm_count(&square_roots_poly(&g), &Bound::big(BigInt::from(4) * q), &Bound::PosInfinity)
        != 0
    {
        return Ok(WeilVerdict::no("a root β of the transform has β² > 4q"));
    }
    Ok(WeilVerdict::yes(WeilKind::Cm, "all roots on |z| = √q"))
}

pub fn is_weil_poly(h: &IntPoly, q: u64) -> Result<bool, WeilError> {
    Ok(check_weil(h, q)?.is_weil)
}

/// `G(y) = E(y)² − y·O(y)²` for `g(x) = E(x²) + x·O(x²)`; roots are `β²`.
fn square_roots_poly(g: &IntPoly) -> IntPoly {
    let split = |offset: usize| {
        IntPoly::new(g.coeffs().iter().skip(offset).step_by(2).cloned().collect())
    };
    let (e, o) = (split(0), split(1));
    let e2 = &e * &e;
    let o2 = (&o * &o).shift(1);
    let out = &e2 - &o2;
    if out.leading().is_some_and(Signed::is_negative) {
        -&out
    } else {
        out
    }
}

/// Monic `g` of degree `d` with `h(t) = t^d·g(t + q/t)`.
pub fn real_weil_transform(h: &IntPoly, q: u64) -> Result<IntPoly, WeilError> {
    if !h.is_monic() {
        return Err(PolyError::NotMonic.into());
    }
    if !is_q_symmetric(h, q)? {
        return Err(WeilError::NotSymmetric { q });
    }
    let d = h.degree().unwrap() / 2;
    let qb = BigInt::from(q);
    // P_0 = 2, P_1 = x, P_{k+1} = x·P_k − q·P_{k−1}; t^k + (q/t)^k = P_k(t + q/t)
    let mut prev = IntPoly::from_i64s(&[2]);
    let mut cur = IntPoly::t();
    let mut g = IntPoly::new(vec![h.coeff(d)]);
    for k in 1..=d {
        g = &g + &cur.scale(&h.coeff(d + k));
        let next = &cur.shift(1) - &prev.scale(&qb);
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(g)
}

/// `π = c·ζ_n` with `q = c²` and declared center `Q(ζ_n)`.
pub fn weil_from_cyclotomic_scaling(c: u64, n: u64) -> Result<WeilCandidate, WeilError> {
    if c < 2 || factorize(c).as_prime_power().is_none() {
        return Err(WeilError::BadScaling(c));
    }
    let q = c * c;
    let h = scaled_root_min_poly(c, n);
    debug_assert_eq!(h.degree(), Some(euler_phi(n) as usize));
    if !is_weil_poly(&h, q)? {
        return Err(WeilError::NotWeil {
            poly: h.to_string(),
            q,
        });
    }
    WeilCandidate::new(q, h, Some(AbelianFieldModel::cyclotomic(n)))
}

/// Squarefree `d` with `Q(π + q/π) = Q(√d)` for a quartic Weil polynomial.
pub fn real_quadratic_subfield(h: &IntPoly, q: u64) -> Result<i64, WeilError> {
    let deg = h.degree().ok_or(PolyError::ZeroPolynomial)?;
    if deg != 4 {
        return Err(WeilError::NotQuartic(deg));
    }
    if !is_weil_poly(h, q)? {
        return Err(WeilError::NotWeil {
            poly: h.to_string(),
            q,
        });
    }
    let disc = h.coeff(3) * h.coeff(3) - BigInt::from(4) * h.coeff(2) + BigInt::from(8u64) * q;
    let disc = disc.to_i64().expect("discriminant fits in i64 for desk-scale q");
    Ok(squarefree_part(disc).expect("nonzero: the transform is squarefree"))
}

/// Number of real roots of `h`, i.e. real embeddings of `Q(π)`.
pub fn real_root_count(h: &IntPoly) -> usize {
    if h.degree().unwrap_or(0) == 0 {
        return 0;
    }
    sturm_count(h, &Bound::NegInfinity, &Bound::PosInfinity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Floating-point oracle: irreducible and every root within relative
    /// `1e-9` of `√q`.
    pub(crate) fn numeric_weil(h: &IntPoly, q: u64) -> bool {
        let roots = crate::testutil::complex_roots(h);
        let r = (q as f64).sqrt();
        is_irreducible(h).unwrap() && roots.iter().all(|z| (z.norm() / r - 1.0).abs() < 1e-9)
    }

    #[test]
    fn examples() {
        assert!(is_weil_poly(&ip(&[625, -30, 1]), 625).unwrap());
        assert!(is_weil_poly(&ip(&[16, 0, 8, -2, 1, -1, 2, 0, 1]), 2).unwrap());
        assert!(!is_weil_poly(&ip(&[625, -51, 1]), 625).unwrap());
        assert_eq!(
            is_weil_poly(&ip(&[625, -30, 2]), 625),
            Err(WeilError::Poly(PolyError::NotMonic))
        );
        assert_eq!(is_weil_poly(&ip(&[1, 1]), 6), Err(WeilError::NotPrimePower(6)));
    }

    #[test]
    fn real_weil_numbers() {
        let v = check_weil(&ip(&[-2, 0, 1]), 2).unwrap();
        assert_eq!(v.kind, Some(WeilKind::Real));
        let v = check_weil(&ip(&[-5, 1]), 25).unwrap();
        assert_eq!(v.kind, Some(WeilKind::Real));
        assert!(!is_weil_poly(&ip(&[-25, 0, 1]), 25).unwrap());
    }

    #[test]
    fn transforms() {
        assert_eq!(real_weil_transform(&ip(&[625, 0, -30, 0, 1]), 25).unwrap(), ip(&[-80, 0, 1]));
        assert_eq!(real_weil_transform(&ip(&[625, -30, 1]), 625).unwrap(), ip(&[-30, 1]));
        assert_eq!(
            real_weil_transform(&ip(&[97i64.pow(4), 0, 0, 0, 1]), 9409).unwrap(),
            ip(&[-18818, 0, 1])
        );
        assert_eq!(
            real_weil_transform(&ip(&[1, -1, 1]), 2),
            Err(WeilError::NotSymmetric { q: 2 })
        );
    }

    #[test]
    fn transform_roots_match_numerically() {
        let cases: [(IntPoly, u64); 4] = [
            (ip(&[16, 0, 8, -2, 1, -1, 2, 0, 1]), 2),
            (ip(&[625, 0, -30, 0, 1]), 25),
            (ip(&[6561, 0, -126, 0, 1]), 81),
            (scaled_root_min_poly(5, 30), 25),
        ];
        for (h, q) in cases {
            let g = real_weil_transform(&h, q).unwrap();
            assert_eq!(g.degree().unwrap() * 2, h.degree().unwrap());
            let betas = crate::testutil::complex_roots(&g);
            for z in crate::testutil::complex_roots(&h) {
                let b = z + (q as f64) / z;
                let best = betas.iter().map(|x| (x - b).norm()).fold(f64::MAX, f64::min);
                assert!(best < 1e-9 * (1.0 + b.norm()), "{h}: {b}");
            }
        }
    }

    #[test]
    fn cyclotomic_scalings() {
        let w = weil_from_cyclotomic_scaling(97, 8).unwrap();
        assert_eq!((w.q, w.h.clone()), (9409, ip(&[97i64.pow(4), 0, 0, 0, 1])));
        let w = weil_from_cyclotomic_scaling(5, 30).unwrap();
        assert_eq!(w.q, 25);
        assert_eq!(w.h, scaled_root_min_poly(5, 30));
        let w = weil_from_cyclotomic_scaling(2, 16).unwrap();
        assert_eq!((w.q, w.h), (4, ip(&[256, 0, 0, 0, 0, 0, 0, 0, 1])));
        assert_eq!(weil_from_cyclotomic_scaling(6, 8), Err(WeilError::BadScaling(6)));
        for (c, n) in [(97u64, 8u64), (61, 10), (73, 12), (2, 16), (2, 20), (2, 24), (5, 30)] {
            let w = weil_from_cyclotomic_scaling(c, n).unwrap();
            assert_eq!(w.degree() as u64, euler_phi(n));
            let c_ = c as f64;
            for k in (1..n).filter(|k| num_integer::Integer::gcd(k, &n) == 1) {
                let z = num_complex::Complex64::from_polar(
                    c_,
                    2.0 * std::f64::consts::PI * k as f64 / n as f64,
                );
                let val = w
                    .h
                    .coeffs()
                    .iter()
                    .rev()
                    .fold(num_complex::Complex64::new(0.0, 0.0), |acc, a| {
                        acc * z + a.to_f64().unwrap()
                    });
                let scale = c_.powi(w.degree() as i32);
                assert!(val.norm() / scale < 1e-9, "c = {c}, n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn quadratic_subfields() {
        assert_eq!(real_quadratic_subfield(&ip(&[625, 0, -30, 0, 1]), 25).unwrap(), 5);
        assert_eq!(real_quadratic_subfield(&ip(&[6561, 0, -126, 0, 1]), 81).unwrap(), 2);
        assert_eq!(real_quadratic_subfield(&ip(&[97i64.pow(4), 0, 0, 0, 1]), 9409).unwrap(), 2);
        assert_eq!(
            real_quadratic_subfield(&ip(&[625, -30, 1]), 625),
            Err(WeilError::NotQuartic(2))
        );
    }

    fn symmetric_from_transform(g: &[i64], q: u64) -> IntPoly {
        // h(t) = t^d·g(t + q/t)
        let d = g.len() - 1;
        let x = ip(&[q as i64, 0, 1]); // t² + q = t·(t + q/t)
        let mut h = IntPoly::zero();
        for (k, &c) in g.iter().enumerate() {
            let mut term = IntPoly::from_i64s(&[c]);
            for _ in 0..k {
                term = &term * &x;
            }
            h = &h + &term.shift(d - k);
        }
        h
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn symmetric_candidates_agree_with_numeric_oracle(
            q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 9, 25]),
            betas in proptest::collection::vec(-9i64..=9, 1..5),
            shift in -2i64..=2,
        ) {
            let bound = 2.0 * (q as f64).sqrt();
            let mut g = vec![1i64];
            for b in &betas {
                let b = ((*b as f64).clamp(-bound + 0.5, bound - 0.5)) as i64;
                let mut next = vec![0i64; g.len() + 1];
                for (i, c) in g.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * b;
                }
                g = next;
            }
            g[0] += shift;
            let h = symmetric_from_transform(&g, q);
            prop_assert!(is_q_symmetric(&h, q).unwrap());
            prop_assert_eq!(is_weil_poly(&h, q).unwrap(), numeric_weil(&h, q), "{}", h);
        }

        #[test]
        fn random_candidates_agree_with_numeric_oracle(
            q in prop::sample::select(vec![2u64, 3, 4, 5, 9]),
            coeffs in proptest::collection::vec(-6i64..=6, 1..8),
        ) {
            let mut c = coeffs;
            c.push(1);
            let h = ip(&c);
            prop_assert_eq!(is_weil_poly(&h, q).unwrap(), numeric_weil(&h, q), "{}", h);
        }
    }
}
