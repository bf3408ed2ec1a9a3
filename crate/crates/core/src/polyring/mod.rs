//! Exact univariate polynomials over `Z`, with the pieces needed to study
//! Weil polynomials: cyclotomic polynomials, Sturm counting, the
//! `q`-symmetry test, factorization modulo `p`, Newton polygons and one-level
//! `p`-adic factor shapes.

mod fp;
mod irreducible;
mod newton;
mod sturm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use fp::{factor_mod_p, FpPoly, ModPFactorization};
pub use irreducible::is_irreducible;
pub use newton::{
    newton_polygon, padic_factor_shape, residual_polynomials, shape_with_uniform_local_degree,
    NewtonSegment, PadicFactor, PadicFactorShape, Rational,
};
pub use sturm::{sturm_count, Bound};

use crate::intmath::euler_phi;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("cannot parse polynomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must be nonzero")]
    ZeroPolynomial,
    #[error("polynomial has odd degree {0}; the q-symmetry test needs even degree")]
    OddDegree(usize),
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("leading coefficient vanishes modulo {0}")]
    LeadingVanishesModP(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(
        "residual polynomial of the slope-{slope} segment at p = {p} has a repeated factor; \
         one-level splitting is insufficient"
    )]
    OreIrregular { p: u64, slope: Rational },
    #[error("segment of width {width} is not a multiple of local degree {local_degree}")]
    IncompatibleLocalDegree { width: usize, local_degree: usize },
}

/// Polynomial with exact integer coefficients, ascending degree, no leading zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::from_i64s(&[0, 1])
    }

    /// `c·t^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `t^k·self`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[i]);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate().take(dd) {
                rem[i - dd + j] -= &c * dc;
            }
            quot[i - dd] = c;
        }
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Exact quotient by a monic divisor, `None` when the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    /// Euclidean norm rounded up, `⌈‖self‖₂⌉`.
    pub fn l2_norm_ceil(&self) -> BigInt {
        let sq: BigInt = self.coeffs.iter().map(|c| c * c).sum();
        let r = sq.sqrt();
        if &r * &r == sq {
            r
        } else {
            r + 1
        }
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    }

    /// Comma-separated ascending coefficients, the shared text format.
    pub fn to_csv(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

impl FromStr for IntPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| PolyError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(err("empty input"));
        }
        let coeffs = trimmed
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<BigInt>()
                    .map_err(|_| err(&format!("bad coefficient {:?}", tok.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPoly::new(coeffs))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl serde::Serialize for IntPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_csv())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

/// The `n`-th cyclotomic polynomial, by dividing `t^n − 1` by `Φ_d` for the
/// proper divisors `d` of `n`.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic_poly requires n >= 1");
    let mut num = IntPoly::monomial(BigInt::one(), n as usize);
    num.coeffs[0] = BigInt::from(-1);
    for d in crate::intmath::divisors(n) {
        if d == n {
            continue;
        }
        num = num
            .div_exact_monic(&cyclotomic_poly(d))
            .expect("Φ_d divides t^n − 1");
    }
    num
}

/// Minimal polynomial of `c·ζ_n`: `c^{φ(n)}·Φ_n(t/c)`.
pub fn scaled_root_min_poly(c: u64, n: u64) -> IntPoly {
    assert!(c >= 1 && n >= 1);
    let phi = euler_phi(n) as usize;
    let base = cyclotomic_poly(n);
    let c = BigInt::from(c);
    IntPoly::new(
        base.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * num_traits::pow(c.clone(), phi - i))
            .collect(),
    )
}

/// `t^{2d}·h(q/t) = q^d·h(t)` for `h` of even degree `2d`.
pub fn is_q_symmetric(h: &IntPoly, q: u64) -> Result<bool, PolyError> {
    let deg = h.degree().ok_or(PolyError::ZeroPolynomial)?;
    if deg % 2 == 1 {
        return Err(PolyError::OddDegree(deg));
    }
    let d = deg / 2;
    let q = BigInt::from(q);
    // coefficient of t^{2d−i} on the left is c_i·q^i
    Ok((0..=deg).all(|i| {
        let lhs = h.coeff(i) * num_traits::pow(q.clone(), i);
        let rhs = h.coeff(deg - i) * num_traits::pow(q.clone(), d);
        lhs == rhs
    }))
}

pub fn valuation_big(c: &BigInt, p: u64) -> Option<u32> {
    if c.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut c = c.clone();
    let mut v = 0;
    loop {
        let (q, r) = c.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        c = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Product formula `Φ_n = ∏_{d|n} (t^d − 1)^{μ(n/d)}`, independent of the
    /// recursive division used by `cyclotomic_poly`.
    fn mobius_cyclotomic(n: u64) -> IntPoly {
        fn mobius(n: u64) -> i32 {
            let f = crate::intmath::factorize(n);
            if f.factors().iter().any(|&(_, e)| e > 1) {
                0
            } else if f.factors().len().is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        let mut num = IntPoly::one();
        let mut den = IntPoly::one();
        for d in crate::intmath::divisors(n) {
            let mut f = IntPoly::monomial(BigInt::one(), d as usize);
            f.coeffs[0] = BigInt::from(-1);
            match mobius(n / d) {
                1 => num = &num * &f,
                -1 => den = &den * &f,
                _ => {}
            }
        }
        // den is ± monic; normalize sign
        if den.leading().unwrap().is_negative() {
            den = -&den;
            num = -&num;
        }
        num.div_exact_monic(&den).unwrap()
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1), p(&[-1, 1]));
        assert_eq!(cyclotomic_poly(8), p(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic_poly(12), p(&[1, 0, -1, 0, 1]));
        for n in 1..=60 {
            let phi = cyclotomic_poly(n);
            assert_eq!(phi, mobius_cyclotomic(n), "n = {n}");
            assert_eq!(phi.degree(), Some(euler_phi(n) as usize));
        }
    }

    #[test]
    fn scaled_examples() {
        let q4 = BigInt::from(97).pow(4u32);
        assert_eq!(
            scaled_root_min_poly(97, 8),
            IntPoly::new(vec![q4, 0.into(), 0.into(), 0.into(), 1.into()])
        );
        assert_eq!(scaled_root_min_poly(2, 16), p(&[256, 0, 0, 0, 0, 0, 0, 0, 1]));
        for n in 1..20 {
            assert_eq!(scaled_root_min_poly(1, n), cyclotomic_poly(n));
        }
    }

    #[test]
    fn q_symmetry_examples() {
        assert_eq!(is_q_symmetric(&p(&[625, -30, 1]), 625), Ok(true));
        assert_eq!(is_q_symmetric(&scaled_root_min_poly(97, 8), 9409), Ok(true));
        assert_eq!(is_q_symmetric(&p(&[1, -1, 1]), 2), Ok(false));
        assert_eq!(is_q_symmetric(&p(&[1, 1]), 2), Err(PolyError::OddDegree(1)));
    }

    #[test]
    fn parse_and_display() {
        let h: IntPoly = "625,0,-30,0,1".parse().unwrap();
        assert_eq!(h, p(&[625, 0, -30, 0, 1]));
        assert_eq!(h.to_string(), "t^4 - 30t^2 + 625");
        assert_eq!(h.to_csv(), "625,0,-30,0,1");
        assert_eq!(p(&[-1, -1]).to_string(), "-t - 1");
        assert!("1,x".parse::<IntPoly>().is_err());
        assert!("".parse::<IntPoly>().is_err());
    }

    fn eval_c(h: &IntPoly, z: Complex64) -> Complex64 {
        h.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap())
    }

    #[test]
    fn scaled_roots_vanish_numerically() {
        for (c, n) in [(97u64, 8u64), (61, 10), (73, 12), (2, 16), (2, 20), (2, 24), (5, 30)] {
            let h = scaled_root_min_poly(c, n);
            for k in (1..n).filter(|k| k.gcd(&n) == 1) {
                let z = Complex64::from_polar(c as f64, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
                let scale = (c as f64).powi(euler_phi(n) as i32);
                assert!(eval_c(&h, z).norm() / scale < 1e-9, "c={c} n={n} k={k}");
            }
        }
    }

    proptest! {
        // q-symmetric polynomials built as products of distinct (t² − b t + q)
        // have root sets stable under z ↦ q/z.
        #[test]
        fn symmetric_roots_pair_up(q in 2u64..30, bs in proptest::collection::btree_set(-12i64..12, 1..4)) {
            let mut h = IntPoly::one();
            for b in &bs {
                h = &h * &p(&[q as i64, -b, 1]);
            }
            prop_assert_eq!(is_q_symmetric(&h, q), Ok(true));
            let roots = crate::testutil::complex_roots(&h);
            for z in &roots {
                let w = Complex64::new(q as f64, 0.0) / z;
                let best = roots.iter().map(|r| (r - w).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(best < 1e-6 * (1.0 + w.norm()), "root {z} has no partner");
            }
        }
    }
}
