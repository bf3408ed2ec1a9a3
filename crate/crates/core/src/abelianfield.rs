//! Abelian number fields as pairs `(N, H)`: the subfield of `Q(ζ_N)` fixed by
//! `H ≤ (Z/N)^×`, stored with `N` reduced to the conductor.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::intmath::{
    divisors, euler_phi, generate_subgroup, is_prime, mul_mod, valuation, IntMathError,
    UnitSubgroup,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error(transparent)]
    IntMath(#[from] IntMathError),
    #[error("cannot parse field model {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{sub} is not a subfield of {sup}")]
    NotSubfield { sub: String, sup: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplittingData {
    pub e: u64,
    pub f: u64,
    pub g: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub r1: u64,
    pub r2: u64,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianFieldModel {
    h: UnitSubgroup,
}

/// `ker((Z/modulus)^× → (Z/small)^×)`.
fn kernel_to(modulus: u64, small: u64) -> UnitSubgroup {
    trivial(small).lift(modulus)
}

fn trivial(modulus: u64) -> UnitSubgroup {
    generate_subgroup(modulus, &[]).expect("positive modulus")
}

impl AbelianFieldModel {
    /// Fixed field of `⟨gens⟩ ≤ (Z/N)^×`, with the conductor reduced.
    pub fn new(modulus: u64, gens: &[i64]) -> Result<Self, FieldError> {
        Ok(Self::from_subgroup(generate_subgroup(modulus, gens)?))
    }

    pub fn from_subgroup(h: UnitSubgroup) -> Self {
        let n = h.modulus();
        let conductor = divisors(n)
            .into_iter()
            .find(|&d| kernel_to(n, d).is_subset_of(&h))
            .expect("N itself qualifies");
        AbelianFieldModel {
            h: h.project(conductor),
        }
    }

    pub fn rationals() -> Self {
        Self::from_subgroup(UnitSubgroup::full(1))
    }

    pub fn cyclotomic(n: u64) -> Self {
        Self::new(n, &[]).expect("empty generating set")
    }

    pub fn conductor(&self) -> u64 {
        self.h.modulus()
    }

    pub fn subgroup(&self) -> &UnitSubgroup {
        &self.h
    }

    pub fn degree(&self) -> u64 {
        euler_phi(self.conductor()) / self.h.order()
    }

    pub fn is_totally_real(&self) -> bool {
        let n = self.conductor();
        self.h.contains((n - 1) % n.max(1))
    }

    /// Abelian fields are totally real or totally imaginary.
    pub fn signature(&self) -> Signature {
        let deg = self.degree();
        if self.is_totally_real() {
            Signature { r1: deg, r2: 0 }
        } else {
            Signature { r1: 0, r2: deg / 2 }
        }
    }

    /// Rank of the unit group, `r1 + r2 − 1`.
    pub fn unit_rank(&self) -> u64 {
        let s = self.signature();
        s.r1 + s.r2 - 1
    }

    /// `H` pulled back to `(Z/M)^×` for a multiple `M` of the conductor.
    fn subgroup_at(&self, m: u64) -> UnitSubgroup {
        self.h.lift(m)
    }

    pub fn splitting_efg(&self, p: u64) -> Result<SplittingData, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let n = self.conductor();
        let v = if n == 1 { 0 } else { valuation(n, p) };
        let pv = p.pow(v);
        let n_prime = n / pv;
        let inertia = kernel_to(n, n_prime);
        let ih = inertia.join(&self.h);
        let e = ih.order() / self.h.order();
        // Frobenius: p mod N', 1 mod p^v
        let frob = crt(p % n_prime, n_prime, 1 % pv, pv);
        let mut f = 1;
        let mut x = frob;
        while !ih.contains(x) {
            x = mul_mod(x, frob, n);
            f += 1;
        }
        let deg = self.degree();
        Ok(SplittingData {
            e,
            f,
            g: deg / (e * f),
        })
    }

    /// True when `other ⊆ self`.
    pub fn contains(&self, other: &AbelianFieldModel) -> bool {
        let m = self.conductor().lcm(&other.conductor());
        self.subgroup_at(m).is_subset_of(&other.subgroup_at(m))
    }

    pub fn compositum(&self, other: &AbelianFieldModel) -> AbelianFieldModel {
        let m = self.conductor().lcm(&other.conductor());
        Self::from_subgroup(self.subgroup_at(m).intersect(&other.subgroup_at(m)))
    }

    /// `[F(ζ_m) : F]`.
    pub fn adjoin_zeta_degree(&self, m: u64) -> u64 {
        self.compositum(&Self::cyclotomic(m)).degree() / self.degree()
    }

    pub fn contains_zeta(&self, k: u64) -> bool {
        self.contains(&Self::cyclotomic(k))
    }

    /// Local degree `[L_P : K_p]` at primes over `p`, for `K ⊆ L`.
    pub fn relative_local_degree(
        l: &AbelianFieldModel,
        k: &AbelianFieldModel,
        p: u64,
    ) -> Result<u64, FieldError> {
        if !l.contains(k) {
            return Err(FieldError::NotSubfield {
                sub: k.to_string(),
                sup: l.to_string(),
            });
        }
        let sl = l.splitting_efg(p)?;
        let sk = k.splitting_efg(p)?;
        Ok((sl.e * sl.f) / (sk.e * sk.f))
    }

    /// A small generating set of `H`, for display.
    pub fn generators(&self) -> Vec<u64> {
        let n = self.conductor();
        let mut gens = Vec::new();
        let mut span = trivial(n);
        for &x in self.h.elements() {
            if !span.contains(x) {
                gens.push(x);
                span = span.join(&generate_subgroup(n, &[x as i64]).unwrap());
            }
        }
        gens
    }
}

fn crt(a: u64, m: u64, b: u64, n: u64) -> u64 {
    let modulus = m * n;
    (0..n)
        .map(|k| a + k * m)
        .find(|x| x % n == b % n)
        .map_or(0, |x| x % modulus.max(1))
}

impl fmt::Display for AbelianFieldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators().iter().map(u64::to_string).collect();
        write!(f, "{}:{}", self.conductor(), gens.join(","))
    }
}

impl fmt::Debug for AbelianFieldModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbelianFieldModel({self})")
    }
}

impl Serialize for AbelianFieldModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for AbelianFieldModel {
    type Err = FieldError;

    /// `"N:g1,g2,..."`, e.g. `"20:9"` or `"8:"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| FieldError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (n, gens) = s.trim().split_once(':').ok_or_else(|| err("missing ':'"))?;
        let n: u64 = n.trim().parse().map_err(|_| err("bad modulus"))?;
        if n == 0 {
            return Err(err("modulus must be positive"));
        }
        let gens = gens
            .split(',')
            .map(str::trim)
            .filter(|g| !g.is_empty())
            .map(|g| g.parse::<i64>().map_err(|_| err(&format!("bad generator {g:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, &gens)
    }
}
