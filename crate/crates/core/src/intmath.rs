//! Small exact integer utilities: factorization, totients, multiplicative
//! orders and subgroups of `(Z/N)^×`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntMathError {
    #[error("{value} is not coprime to the modulus {modulus}")]
    NotCoprime { value: i64, modulus: u64 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("argument must be nonzero")]
    Zero,
}

/// Prime factorization `n = ∏ p^e`, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct IntFactorization {
    factors: Vec<(u64, u32)>,
}

impl IntFactorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` (zero if absent).
    pub fn exponent(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// `Some((p, a))` when the factored number is a prime power `p^a`, `a ≥ 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [(p, a)] => Some((*p, *a)),
            _ => None,
        }
    }

    pub fn value(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }
}

impl fmt::Display for IntFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Trial division. Inputs in this crate are at most a few billion.
pub fn factorize(mut n: u64) -> IntFactorization {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut factors = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        push(d, &mut n);
        push(d + 2, &mut n);
        d += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    IntFactorization { factors }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    matches!(factorize(n).factors(), [(_, 1)])
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires n >= 1");
    factorize(n)
        .factors()
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product()
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, e) in factorize(n).factors() {
        let current = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(current.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Residue of `r` in `[0, m)`.
pub fn reduce(r: i64, m: u64) -> u64 {
    r.rem_euclid(m as i64) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Least `n ≥ 1` with `r^n ≡ 1 (mod m)`; `1` when `m = 1`.
pub fn mult_order(r: i64, m: u64) -> Result<u64, IntMathError> {
    if m == 0 {
        return Err(IntMathError::ZeroModulus);
    }
    if m == 1 {
        return Ok(1);
    }
    let r = reduce(r, m);
    if r.gcd(&m) != 1 {
        return Err(IntMathError::NotCoprime {
            value: r as i64,
            modulus: m,
        });
    }
    // The order divides φ(m); test divisors in increasing order.
    let phi = euler_phi(m);
    Ok(divisors(phi)
        .into_iter()
        .find(|&d| pow_mod(r, d, m) == 1)
        .expect("r^φ(m) ≡ 1"))
}

/// The squarefree `d` with `n = d·k²`, keeping the sign of `n`.
pub fn squarefree_part(n: i64) -> Result<i64, IntMathError> {
    if n == 0 {
        return Err(IntMathError::Zero);
    }
    let core: i64 = factorize(n.unsigned_abs())
        .factors()
        .iter()
        .filter(|&&(_, e)| e % 2 == 1)
        .map(|&(p, _)| p as i64)
        .product();
    Ok(n.signum() * core)
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0 && p >= 2);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Subgroup of `(Z/N)^×`, stored as a sorted residue set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UnitSubgroup {
    modulus: u64,
    elements: Vec<u64>,
}

impl UnitSubgroup {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&(x % self.modulus)).is_ok()
    }

    pub fn is_subset_of(&self, other: &UnitSubgroup) -> bool {
        debug_assert_eq!(self.modulus, other.modulus);
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Full unit group `(Z/N)^×`.
    pub fn full(modulus: u64) -> Self {
        let elements = units(modulus).collect();
        UnitSubgroup { modulus, elements }
    }

    /// Preimage under the reduction `(Z/M)^× → (Z/N)^×`, `N | M`.
    pub fn lift(&self, big_modulus: u64) -> Self {
        assert!(big_modulus.is_multiple_of(self.modulus));
        let elements = units(big_modulus)
            .filter(|&x| self.contains(x % self.modulus))
            .collect();
        UnitSubgroup {
            modulus: big_modulus,
            elements,
        }
    }

    /// Image under the reduction to a divisor of the modulus.
    pub fn project(&self, small_modulus: u64) -> Self {
        assert!(self.modulus.is_multiple_of(small_modulus));
        let elements: BTreeSet<u64> = self.elements.iter().map(|&x| x % small_modulus).collect();
        UnitSubgroup {
            modulus: small_modulus,
            elements: elements.into_iter().collect(),
        }
    }

    pub fn intersect(&self, other: &UnitSubgroup) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        UnitSubgroup {
            modulus: self.modulus,
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    /// The subgroup generated by `self ∪ other`.
    pub fn join(&self, other: &UnitSubgroup) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        close(self.modulus, self.elements.iter().chain(&other.elements).copied())
    }
}

pub(crate) fn units(modulus: u64) -> impl Iterator<Item = u64> {
    let one = 1 % modulus;
    std::iter::once(one).chain((2..modulus).filter(move |x| x.gcd(&modulus) == 1))
}

fn close(modulus: u64, gens: impl IntoIterator<Item = u64>) -> UnitSubgroup {
    let gens: Vec<u64> = gens.into_iter().map(|g| g % modulus).collect();
    let mut seen = BTreeSet::from([1 % modulus]);
    let mut frontier = vec![1 % modulus];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = mul_mod(x, g, modulus);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    UnitSubgroup {
        modulus,
        elements: seen.into_iter().collect(),
    }
}

/// Smallest multiplicatively closed subset of `(Z/N)^×` containing the
/// generators. Finite, so closure under products already gives inverses.
pub fn generate_subgroup(modulus: u64, gens: &[i64]) -> Result<UnitSubgroup, IntMathError> {
    if modulus == 0 {
        return Err(IntMathError::ZeroModulus);
    }
    let mut reduced = Vec::with_capacity(gens.len());
    for &g in gens {
        let r = reduce(g, modulus);
        if r.gcd(&modulus) != 1 {
            return Err(IntMathError::NotCoprime { value: g, modulus });
        }
        reduced.push(r);
    }
    Ok(close(modulus, reduced))
}
