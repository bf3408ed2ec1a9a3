use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::fp::{factor_fp, FpPoly};
use super::{valuation_big, IntPoly, PolyError};
use crate::intmath::is_prime;

pub type Rational = Ratio<i64>;

/// One edge of a Newton polygon. `slope` is the root valuation `λ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonSegment {
    #[serde(serialize_with = "crate::serde_rational")]
    pub slope: Rational,
    pub width: usize,
    /// Left endpoint `(i, v_p(c_i))`.
    pub start: (usize, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicFactor {
    pub local_degree: usize,
    #[serde(serialize_with = "crate::serde_rational")]
    pub valuation: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicFactorShape {
    pub p: u64,
    pub factors: Vec<PadicFactor>,
}

impl PadicFactorShape {
    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(|f| f.local_degree).sum()
    }

    /// `Σ d_i·λ_i`, equal to `v_p` of the constant term for monic input.
    pub fn total_valuation(&self) -> Rational {
        self.factors
            .iter()
            .map(|f| f.valuation * Rational::from_integer(f.local_degree as i64))
            .sum()
    }
}

fn check_input(h: &IntPoly, p: u64) -> Result<(), PolyError> {
    if h.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if !is_prime(p) {
        return Err(PolyError::NotPrime(p));
    }
    if h.coeff(0).is_zero() {
        return Err(PolyError::ZeroConstantTerm);
    }
    Ok(())
}

/// Lower convex hull of `{(i, v_p(c_i))}`, segments in strictly decreasing slope.
pub fn newton_polygon(h: &IntPoly, p: u64) -> Result<Vec<NewtonSegment>, PolyError> {
    check_input(h, p)?;
    let pts: Vec<(i64, i64)> = h
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| valuation_big(c, p).map(|v| (i as i64, v as i64)))
        .collect();
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        // drop the middle point unless it turns strictly left
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], pt) <= 0 {
            hull.pop();
        }
        hull.push(pt);
    }
    Ok(hull
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            NewtonSegment {
                slope: Rational::new(a.1 - b.1, b.0 - a.0),
                width: (b.0 - a.0) as usize,
                start: (a.0 as usize, a.1 as u32),
            }
        })
        .collect())
}

fn residual(h: &IntPoly, p: u64, seg: &NewtonSegment) -> FpPoly {
    let u = *seg.slope.numer();
    let e = *seg.slope.denom() as usize;
    let (i0, y0) = seg.start;
    let pb = BigInt::from(p);
    let coeffs = (0..=seg.width / e)
        .map(|k| {
            let i = i0 + k * e;
            let y = y0 as i64 - k as i64 * u;
            let c = h.coeff(i) / num_traits::pow(pb.clone(), y as usize);
            c.mod_floor(&pb).to_u64().unwrap()
        })
        .collect();
    FpPoly::new(p, coeffs)
}

/// Residual polynomial of each segment, constant term read at the left endpoint.
pub fn residual_polynomials(
    h: &IntPoly,
    p: u64,
) -> Result<Vec<(NewtonSegment, FpPoly)>, PolyError> {
    Ok(newton_polygon(h, p)?
        .into_iter()
        .map(|seg| {
            let r = residual(h, p, &seg);
            (seg, r)
        })
        .collect())
}

/// One-level Ore splitting of `h` over `Q_p`.
pub fn padic_factor_shape(h: &IntPoly, p: u64) -> Result<PadicFactorShape, PolyError> {
    let mut factors = Vec::new();
    for (seg, res) in residual_polynomials(h, p)? {
        let e = *seg.slope.denom() as usize;
        let fact = factor_fp(&res);
        if !fact.is_squarefree() {
            return Err(PolyError::OreIrregular { p, slope: seg.slope });
        }
        for (g, _) in fact.factors {
            factors.push(PadicFactor {
                local_degree: g.degree().unwrap() * e,
                valuation: seg.slope,
            });
        }
    }
    Ok(PadicFactorShape { p, factors })
}

/// Shape for a Galois extension where every place above `p` is known to have
/// local degree `ef`: each segment of width `W` splits into `W/ef` factors.
pub fn shape_with_uniform_local_degree(
    polygon: &[NewtonSegment],
    p: u64,
    ef: usize,
) -> Result<PadicFactorShape, PolyError> {
    let mut factors = Vec::new();
    for seg in polygon {
        if ef == 0 || seg.width % ef != 0 {
            return Err(PolyError::IncompatibleLocalDegree {
                width: seg.width,
                local_degree: ef,
            });
        }
        for _ in 0..seg.width / ef {
            factors.push(PadicFactor {
                local_degree: ef,
                valuation: seg.slope,
            });
        }
    }
    Ok(PadicFactorShape { p, factors })
}
