use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::fp::{factor_fp, FpPoly};
use super::sturm::is_squarefree_over_q;
use super::{IntPoly, PolyError};
use crate::intmath::is_prime;

const TRIAL_PRIMES: usize = 8;

/// Irreducibility over `Q` of a monic integer polynomial (Zassenhaus).
pub fn is_irreducible(h: &IntPoly) -> Result<bool, PolyError> {
    let n = h.degree().ok_or(PolyError::ZeroPolynomial)?;
    if !h.is_monic() {
        return Err(PolyError::NotMonic);
    }
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    if !is_squarefree_over_q(h) {
        return Ok(false);
    }

    // Factor modulo a few primes where h stays squarefree; intersect the
    // possible factor degrees and keep the prime with the fewest factors.
    let mut possible: BTreeSet<usize> = (0..=n).collect();
    let mut best: Option<Vec<FpPoly>> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < TRIAL_PRIMES {
        p += 1;
        if !is_prime(p) {
            continue;
        }
        let fact = factor_fp(&FpPoly::from_int_poly(h, p));
        if !fact.is_squarefree() {
            continue;
        }
        tried += 1;
        let mut sums = BTreeSet::from([0usize]);
        for d in fact.degrees() {
            let shifted: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(shifted);
        }
        possible = possible.intersection(&sums).copied().collect();
        if possible.len() <= 2 {
            return Ok(true);
        }
        let factors: Vec<FpPoly> = fact.factors.into_iter().map(|(g, _)| g).collect();
        if best.as_ref().is_none_or(|b| factors.len() < b.len()) {
            best = Some(factors);
        }
    }
    let factors = best.expect("a squarefree reduction exists for squarefree input");
    let p = factors[0].modulus();

    let bound = BigInt::from(2) * (BigInt::one() << n) * h.l2_norm_ceil();
    let mut modulus = BigInt::from(p);
    let mut k = 1u32;
    while modulus <= bound {
        modulus *= p;
        k += 1;
    }
    let lifted = hensel_lift(h, &factors, p, k);
    Ok(!has_true_factor(h, &lifted, &modulus))
}

fn reduce_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn fp_product(factors: &[FpPoly], p: u64) -> FpPoly {
    factors.iter().fold(FpPoly::one(p), |acc, f| acc.mul(f))
}

/// Lift the monic factorization `f ≡ ∏ factors (mod p)` to `mod p^k`.
fn hensel_lift(f: &IntPoly, factors: &[FpPoly], p: u64, k: u32) -> Vec<IntPoly> {
    if factors.len() == 1 {
        return vec![reduce_mod(f, &num_traits::pow(BigInt::from(p), k as usize))];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let (g, h) = lift_pair(f, &fp_product(left, p), &fp_product(right, p), p, k);
    let mut out = hensel_lift(&g, left, p, k);
    out.extend(hensel_lift(&h, right, p, k));
    out
}

/// Linear Hensel lifting of `f ≡ g0·h0 (mod p)` with `g0, h0` monic and coprime.
fn lift_pair(f: &IntPoly, g0: &FpPoly, h0: &FpPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, _s, t) = g0.ext_gcd(h0);
    debug_assert!(one.is_one());
    let mut g = g0.to_int_poly();
    let mut h = h0.to_int_poly();
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = f - &(&g * &h);
        let e_int = IntPoly::new(diff.coeffs().iter().map(|c| c / &pj).collect());
        let e = FpPoly::from_int_poly(&e_int, p);
        let dg = e.mul(&t).rem(g0);
        let dh = e.sub(&dg.mul(h0)).div_exact(g0);
        g = &g + &dg.to_int_poly().scale(&pj);
        h = &h + &dh.to_int_poly().scale(&pj);
        pj *= &pb;
        g = reduce_mod(&g, &pj);
        h = reduce_mod(&h, &pj);
    }
    (g, h)
}

fn symmetric(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m / 2;
    IntPoly::new(
        f.coeffs()
            .iter()
            .map(|c| {
                let c = c.mod_floor(m);
                if c > half {
                    c - m
                } else {
                    c
                }
            })
            .collect(),
    )
}

/// Search subsets of at most half the lifted factors for an integer divisor.
fn has_true_factor(h: &IntPoly, lifted: &[IntPoly], m: &BigInt) -> bool {
    let r = lifted.len();
    for mask in 1u64..(1u64 << r) - 1 {
        if mask.count_ones() as usize > r / 2 {
            continue;
        }
        let mut prod = IntPoly::one();
        for (i, f) in lifted.iter().enumerate() {
            if mask >> i & 1 == 1 {
                prod = reduce_mod(&(&prod * f), m);
            }
        }
        let cand = symmetric(&prod, m);
        if !cand.coeff(0).is_zero() && !(h.coeff(0).is_multiple_of(&cand.coeff(0))) {
            continue;
        }
        if h.div_exact_monic(&cand).is_some() {
            return true;
        }
    }
    false
}
