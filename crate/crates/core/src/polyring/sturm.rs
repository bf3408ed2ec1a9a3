use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::IntPoly;

/// Endpoint of a Sturm interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(BigRational),
    PosInfinity,
}

impl Bound {
    pub fn int(x: i64) -> Self {
        Bound::Finite(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn big(x: BigInt) -> Self {
        Bound::Finite(BigRational::from_integer(x))
    }
}

type RPoly = Vec<BigRational>;

fn trim(p: &mut RPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn rem(a: &RPoly, b: &RPoly) -> RPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        let c = lr / &lb;
        let shift = r.len() - 1 - db;
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &c * bc;
        }
        r.pop();
    }
    trim(&mut r);
    r
}

fn derivative(p: &RPoly) -> RPoly {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

fn monic_gcd(a: &RPoly, b: &RPoly) -> RPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().unwrap().clone();
    a.iter().map(|c| c / &lead).collect()
}

fn exact_div(a: &RPoly, b: &RPoly) -> RPoly {
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut r = a.clone();
    let mut q = vec![BigRational::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lb;
        for (j, bc) in b.iter().enumerate() {
            r[i + j] -= &c * bc;
        }
        q[i] = c;
    }
    q
}

/// Divide out by a positive rational so coefficients become coprime
/// integers; signs at every point are unchanged.
fn normalize_positive(p: RPoly) -> RPoly {
    use num_integer::Integer;
    let den_lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * &den_lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter()
        .map(|c| BigRational::from_integer(c / &g))
        .collect()
}

fn sign_at(p: &RPoly, x: &Bound) -> i8 {
    let sgn = |v: &BigRational| {
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    };
    let lead = sgn(p.last().unwrap());
    match x {
        Bound::PosInfinity => lead,
        Bound::NegInfinity => {
            if (p.len() - 1).is_multiple_of(2) {
                lead
            } else {
                -lead
            }
        }
        Bound::Finite(x) => {
            let v = p
                .iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * x + c);
            sgn(&v)
        }
    }
}

fn variations(seq: &[RPoly], x: &Bound) -> usize {
    let signs: Vec<i8> = seq.iter().map(|p| sign_at(p, x)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// True when `h` has no repeated complex root.
pub(super) fn is_squarefree_over_q(h: &IntPoly) -> bool {
    let p = h.to_rational();
    p.len() <= 2 || monic_gcd(&p, &derivative(&p)).len() == 1
}

/// Number of distinct real roots of `h` in `(lo, hi]`.
///
/// Runs on the squarefree part of `h`, so `V(x) = V(x⁺)` at every root and
/// the half-open count is exact for any endpoints.
pub fn sturm_count(h: &IntPoly, lo: &Bound, hi: &Bound) -> usize {
    assert!(!h.is_zero(), "sturm_count on the zero polynomial");
    let p = h.to_rational();
    if p.len() == 1 {
        return 0;
    }
    let g = monic_gcd(&p, &derivative(&p));
    let p0 = normalize_positive(if g.len() > 1 { exact_div(&p, &g) } else { p });
    let mut seq = vec![p0.clone()];
    if p0.len() > 1 {
        seq.push(normalize_positive(derivative(&p0)));
        loop {
            let n = seq.len();
            let r = rem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            let neg: RPoly = r.iter().map(|c| -c).collect();
            seq.push(normalize_positive(neg));
        }
    }
    let (vl, vh) = (variations(&seq, lo), variations(&seq, hi));
    vl.saturating_sub(vh)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn examples() {
        assert_eq!(sturm_count(&p(&[-5, 0, 1]), &Bound::int(-3), &Bound::int(3)), 2);
        assert_eq!(
            sturm_count(&p(&[625, 0, -30, 0, 1]), &Bound::NegInfinity, &Bound::PosInfinity),
            0
        );
        assert_eq!(
            sturm_count(&p(&[-18818, 0, 1]), &Bound::int(-194), &Bound::int(194)),
            2
        );
    }

    #[test]
    fn half_open_endpoints() {
        // roots 1, 2, 3
        let h = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[-3, 1]);
        assert_eq!(sturm_count(&h, &Bound::int(1), &Bound::int(3)), 2);
        assert_eq!(sturm_count(&h, &Bound::int(0), &Bound::int(1)), 1);
        assert_eq!(sturm_count(&h, &Bound::int(3), &Bound::PosInfinity), 0);
        // repeated roots are counted once
        let sq = &h * &h;
        assert_eq!(sturm_count(&sq, &Bound::NegInfinity, &Bound::PosInfinity), 3);
    }

    #[test]
    fn agrees_with_numeric_root_count() {
        let polys = [
            p(&[16, 0, 8, -2, 1, -1, 2, 0, 1]),
            p(&[625, 0, -30, 0, 1]),
            p(&[-2, 0, 0, 1]),
            p(&[6, -5, -2, 1]),
            p(&[1, 0, -4, 0, 1]),
            p(&[-1, 3, 0, -1, 0, 1]),
        ];
        for h in &polys {
            let roots = crate::testutil::complex_roots(h);
            let real = roots.iter().filter(|z| z.im.abs() < 1e-7).count();
            assert_eq!(
                sturm_count(h, &Bound::NegInfinity, &Bound::PosInfinity),
                real,
                "{h}"
            );
        }
    }
}
