use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{IntPoly, PolyError};
use crate::intmath::{is_prime, mul_mod, pow_mod};

/// Polynomial over `F_p`, ascending coefficients in `[0, p)`, no leading zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut f = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        f.trim();
        f
    }

    pub fn from_int_poly(h: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            h.coeffs()
                .iter()
                .map(|c| {
                    let r = c % &pb;
                    let r = if r < BigInt::zero() { r + &pb } else { r };
                    r.to_u64().unwrap()
                })
                .collect(),
        )
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn zero(p: u64) -> Self {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("nonzero polynomial")
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    fn inv(&self, a: u64) -> u64 {
        pow_mod(a, self.p - 2, self.p)
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| (self.c(i) + o.c(i)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| (self.c(i) + self.p - o.c(i)) % self.p)
            .collect();
        FpPoly::new(self.p, c)
    }

    fn c(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        FpPoly::new(self.p, out)
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs.iter().map(|&c| mul_mod(c, k, self.p)).collect(),
        )
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.inv(self.leading()))
    }

    pub fn div_rem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = d.deg();
        let inv_lead = self.inv(d.leading());
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (FpPoly::zero(p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = mul_mod(r[i], inv_lead, p);
            if c == 0 {
                continue;
            }
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] = (r[i - dd + j] + p - mul_mod(c, dc, p)) % p;
            }
            q[i - dd] = c;
        }
        (FpPoly::new(p, q), FpPoly::new(p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.div_rem(d).1
    }

    pub fn div_exact(&self, d: &FpPoly) -> FpPoly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }

    pub fn derivative(&self) -> FpPoly {
        FpPoly::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·o = g` monic.
    pub fn ext_gcd(&self, o: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let k = self.inv(r0.leading());
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &FpPoly) -> FpPoly {
        let mut base = self.rem(m);
        let mut acc = FpPoly::one(self.p).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Evaluate at an element of `F_p`.
    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// Lift coefficients to integers in `[0, p)`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        FpPoly::new(
            self.p,
            self.coeffs.iter().step_by(p).copied().collect(),
        )
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "y".to_string(),
                (1, c) => format!("{c}y"),
                (i, 1) => format!("y^{i}"),
                (i, c) => format!("{c}y^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpPoly[{}]({self})", self.p)
    }
}

/// `lead · ∏ factor^multiplicity` over `F_p`, factors monic irreducible and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPFactorization {
    pub p: u64,
    pub lead: u64,
    pub factors: Vec<(FpPoly, u32)>,
}

impl ModPFactorization {
    pub fn degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (f, m) in &self.factors {
            for _ in 0..*m {
                out.push(f.deg());
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }

    pub fn product(&self) -> FpPoly {
        let mut acc = FpPoly::new(self.p, vec![self.lead]);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

pub fn factor_mod_p(h: &IntPoly, p: u64) -> Result<ModPFactorization, PolyError> {
    if !is_prime(p) {
        return Err(PolyError::NotPrime(p));
    }
    let f = FpPoly::from_int_poly(h, p);
    if h.is_zero() || f.degree() != h.degree() {
        return Err(PolyError::LeadingVanishesModP(p));
    }
    Ok(factor_fp(&f))
}

pub(crate) fn factor_fp(f: &FpPoly) -> ModPFactorization {
    let p = f.p;
    let lead = f.leading();
    let mut factors = Vec::new();
    for (g, m) in squarefree_decomposition(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d) {
                factors.push((irr, m));
            }
        }
    }
    factors.sort_by(|a, b| (a.0.degree(), &a.0.coeffs).cmp(&(b.0.degree(), &b.0.coeffs)));
    ModPFactorization { p, lead, factors }
}

fn squarefree_decomposition(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let p = f.p;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut c = c;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, m) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, m * p as u32));
        }
    }
    out
}

fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.clone();
    let mut i = 1;
    while rest.deg() >= 2 * i {
        h = h.pow_mod(p as u128, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.div_exact(&g);
            h = h.rem(&rest);
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg() > 0 {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Deterministic sequence of nonconstant trial polynomials of degree `< n`.
fn trial_poly(p: u64, n: usize, k: u64) -> FpPoly {
    let mut coeffs = Vec::with_capacity(n);
    let mut k = k + p; // skip the constants
    for _ in 0..n {
        coeffs.push(k % p);
        k /= p;
    }
    FpPoly::new(p, coeffs)
}

/// Split a squarefree product of irreducibles of common degree `d`
/// (Cantor–Zassenhaus, with the trace map in characteristic 2).
fn equal_degree(f: &FpPoly, d: usize) -> Vec<FpPoly> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let p = f.p;
    let mut k = 0u64;
    loop {
        let a = trial_poly(p, n, k);
        k += 1;
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^{(p^d − 1)/2} = (∏_{i<d} a^{p^i})^{(p−1)/2}
            let mut frob = a.rem(f);
            let mut norm = frob.clone();
            for _ in 1..d {
                frob = frob.pow_mod(p as u128, f);
                norm = norm.mul(&frob).rem(f);
            }
            norm.pow_mod(((p - 1) / 2) as u128, f).sub(&FpPoly::one(p))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let mut out = equal_degree(&g, d);
            out.extend(equal_degree(&f.div_exact(&g), d));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    /// Irreducibility oracle: no factor in common with `y^{p^j} − y` for `j ≤ deg/2`.
    fn is_irreducible_oracle(f: &FpPoly) -> bool {
        let n = f.deg();
        let x = FpPoly::x(f.p);
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = h.pow_mod(f.p as u128, f);
            if !f.gcd(&h.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }

    #[test]
    fn examples() {
        let f = factor_mod_p(&ip(&[1, 0, 0, 0, 1]), 97).unwrap();
        assert_eq!(f.degrees(), vec![1, 1, 1, 1]);
        assert!(f.is_squarefree());

        let f = factor_mod_p(&ip(&[1, 0, 0, 0, 1]), 3).unwrap();
        assert_eq!(f.degrees(), vec![2, 2]);
        assert!(f.is_squarefree());

        let f = factor_mod_p(&ip(&[1, 0, 1]), 2).unwrap();
        assert_eq!(f.factors, vec![(FpPoly::new(2, vec![1, 1]), 2)]);

        assert_eq!(
            factor_mod_p(&ip(&[1, 0, 3]), 3),
            Err(PolyError::LeadingVanishesModP(3))
        );
        assert_eq!(factor_mod_p(&ip(&[1, 1]), 4), Err(PolyError::NotPrime(4)));
    }

    #[test]
    fn inseparable_inputs() {
        // t^8 + 1 ≡ (t + 1)^8 over F_2
        let f = factor_mod_p(&ip(&[1, 0, 0, 0, 0, 0, 0, 0, 1]), 2).unwrap();
        assert_eq!(f.factors, vec![(FpPoly::new(2, vec![1, 1]), 8)]);
        // Φ_30 = Φ_6(t^5)/Φ_6 ≡ Φ_6^4 over F_5
        let phi30 = crate::polyring::cyclotomic_poly(30);
        let f = factor_mod_p(&phi30, 5).unwrap();
        // Φ_6 = y² − y + 1 stays irreducible mod 5
        assert_eq!(f.factors, vec![(FpPoly::new(5, vec![1, 4, 1]), 4)]);
    }

    proptest! {
        #[test]
        fn factorization_reproduces_input(
            p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 97]),
            coeffs in proptest::collection::vec(-50i64..50, 2..10),
        ) {
            let mut coeffs = coeffs;
            *coeffs.last_mut().unwrap() = 1;
            let h = ip(&coeffs);
            let fact = factor_mod_p(&h, p).unwrap();
            prop_assert_eq!(fact.product(), FpPoly::from_int_poly(&h, p));
            for (g, _) in &fact.factors {
                prop_assert!(is_irreducible_oracle(g), "{:?} reducible", g);
                prop_assert_eq!(g.leading(), 1);
            }
        }
    }
}
