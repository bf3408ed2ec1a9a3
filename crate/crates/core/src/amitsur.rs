//! Metacyclic groups `G_{m,r} = ⟨a, b | a^m = 1, b^n = a^t, bab⁻¹ = a^r⟩`
//! and the criterion for their embedding in a division ring.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::finitegroup::{build_from_params, identify, GroupError};
use crate::intmath::{
    euler_phi, factorize, mult_order, pow_mod, reduce, valuation, IntMathError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmitsurError {
    #[error(transparent)]
    IntMath(#[from] IntMathError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("m must be positive")]
    ZeroModulus,
    #[error("r^{n} ≢ 1 (mod {m}) for r = {r}")]
    BadOrder { m: u64, r: u64, n: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GmrParams {
    pub m: u64,
    pub r: u64,
    pub n: u64,
    pub s: u64,
    pub t: u64,
}

impl GmrParams {
    /// `n = ord_m(r)`, `s = gcd(r − 1, m)`, `t = m/s`; `r = 1` gives `C_m`.
    pub fn new(m: u64, r: i64) -> Result<Self, AmitsurError> {
        if m == 0 {
            return Err(AmitsurError::ZeroModulus);
        }
        let n = mult_order(r, m)?;
        Self::with_order(m, reduce(r, m), n)
    }

    /// Explicit `n` with `r^n ≡ 1 (mod m)`. Only used beyond `ord_m(r)` for
    /// `m = 2, r = 1, n = 2`, where `r ≡ −1` and the presentation gives `C_4`.
    pub fn with_order(m: u64, r: u64, n: u64) -> Result<Self, AmitsurError> {
        if m == 0 {
            return Err(AmitsurError::ZeroModulus);
        }
        mult_order(r as i64, m)?;
        if n == 0 || pow_mod(r, n, m) != 1 % m {
            return Err(AmitsurError::BadOrder { m, r, n });
        }
        let r = if m == 1 { 1 } else { r % m };
        let s = (r - 1).gcd(&m);
        Ok(GmrParams {
            m,
            r,
            n,
            s,
            t: m / s,
        })
    }

    pub fn order(&self) -> u64 {
        self.m * self.n
    }

    pub fn is_cyclic_presentation(&self) -> bool {
        self.n == 1
    }

    fn r_is_minus_one(&self, modulus: u64) -> bool {
        (self.r + 1).is_multiple_of(modulus)
    }

    pub fn prime_data(&self) -> Vec<GmrPrimeData> {
        factorize(self.m)
            .factors()
            .iter()
            .map(|&(p, alpha)| {
                let rest = self.m / p.pow(alpha);
                GmrPrimeData {
                    p,
                    alpha,
                    n_p: mult_order(self.r as i64, rest).expect("r coprime to m"),
                    delta_p: mult_order(p as i64, rest).expect("p coprime to m/p^α"),
                }
            })
            .collect()
    }
}

impl fmt::Display for GmrParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "G({},{}) [n={}, s={}, t={}]",
            self.m, self.r, self.n, self.s, self.t
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GmrPrimeData {
    pub p: u64,
    pub alpha: u32,
    pub n_p: u64,
    pub delta_p: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Condition {
    #[serde(rename = "NONE")]
    None,
    C1,
    C2,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::None => "NONE",
            Condition::C1 => "C1",
            Condition::C2 => "C2",
        })
    }
}

fn is_c2(gp: &GmrParams) -> bool {
    let alpha = valuation(gp.m, 2);
    gp.n.is_multiple_of(2)
        && (gp.n / 2) % 2 == 1
        && alpha >= 2
        && gp.s.is_multiple_of(2)
        && (gp.s / 2) % 2 == 1
        && gp.n.gcd(&gp.t) == 2
        && gp.s.gcd(&gp.t) == 2
        && gp.r_is_minus_one(1 << alpha)
}

/// `C1` is tested first; the two are mutually exclusive (C1 forces `t` odd
/// when `n` is even, C2 forces `t` even).
pub fn check_conditions(gp: &GmrParams) -> Condition {
    if gp.n.gcd(&gp.t) == 1 && gp.s.gcd(&gp.t) == 1 {
        Condition::C1
    } else if is_c2(gp) {
        Condition::C2
    } else {
        Condition::None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    None,
    Cond1,
    Cond2a,
    Cond2b,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::None => "NONE",
            Branch::Cond1 => "COND1",
            Branch::Cond2a => "COND2A",
            Branch::Cond2b => "COND2B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddabilityVerdict {
    pub params: GmrParams,
    pub embeddable: bool,
    pub condition: Condition,
    pub branch: Branch,
    /// `(q, p)` pairs used in branch (2).
    pub witnesses: Vec<(u64, u64)>,
    pub reason: String,
}

/// `gcd(q, (p^δ − 1)/s) = 1` read on `q`-adic valuations, so that it also
/// makes sense when `s ∤ p^δ − 1`.
fn q_coprime_to_quotient(q: u64, p: u64, delta: u64, s: u64) -> bool {
    let num = (p as u128).pow(delta as u32) - 1;
    let vq = |mut x: u128| {
        let mut v = 0;
        while x.is_multiple_of(q as u128) {
            x /= q as u128;
            v += 1;
        }
        v
    };
    vq(num) <= vq(s as u128)
}

pub fn gmr_embeddable(m: u64, r: i64) -> Result<EmbeddabilityVerdict, AmitsurError> {
    Ok(embeddable_params(&GmrParams::new(m, r)?))
}

pub fn embeddable_params(gp: &GmrParams) -> EmbeddabilityVerdict {
    let condition = check_conditions(gp);
    let verdict = |embeddable, branch, witnesses, reason: String| EmbeddabilityVerdict {
        params: *gp,
        embeddable,
        condition,
        branch,
        witnesses,
        reason,
    };
    if gp.is_cyclic_presentation() {
        return verdict(true, Branch::Cond1, vec![], "cyclic group".into());
    }
    if condition == Condition::None {
        return verdict(false, Branch::None, vec![], "neither (C1) nor (C2) holds".into());
    }
    if gp.n == 2 && gp.s == 2 && gp.r_is_minus_one(gp.m) {
        return verdict(true, Branch::Cond1, vec![], "n = s = 2 and r ≡ −1 (mod m)".into());
    }
    let data = gp.prime_data();
    let mut witnesses = Vec::new();
    let mut used_b = false;
    for q in factorize(gp.n).primes() {
        let found = data.iter().find_map(|d| {
            if d.n_p % q == 0 {
                return None;
            }
            if d.p != 2 && q_coprime_to_quotient(q, d.p, d.delta_p, gp.s) {
                return Some((d.p, false));
            }
            let b = d.p == 2
                && q == 2
                && condition == Condition::C2
                && (gp.m / 4) % 2 == 1
                && d.delta_p % 2 == 1;
            b.then_some((d.p, true))
        });
        match found {
            Some((p, b)) => {
                witnesses.push((q, p));
                used_b |= b;
            }
            None => {
                return verdict(
                    false,
                    Branch::None,
                    witnesses,
                    format!("no prime p | {} serves q = {q}", gp.m),
                )
            }
        }
    }
    let branch = if used_b { Branch::Cond2b } else { Branch::Cond2a };
    verdict(true, branch, witnesses, "condition (2) holds for every q | n".into())
}

/// Side condition for `𝔗* × G_{m,r}`.
pub fn tstar_compatible(m: u64, r: i64) -> Result<bool, AmitsurError> {
    let gp = GmrParams::new(m, r)?;
    if gp.order().gcd(&6) != 1 {
        return Ok(false);
    }
    if !embeddable_params(&gp).embeddable {
        return Ok(false);
    }
    Ok(factorize(m)
        .primes()
        .all(|p| mult_order(2, p).expect("p odd") % 2 == 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumeratedGroup {
    pub name: String,
    pub m: u64,
    pub residues: Vec<u64>,
}

/// `m ≥ 2` with `φ(m) | phi_divisor`.
pub fn moduli(phi_divisor: u64) -> Vec<u64> {
    // φ(m) ≥ √(m/2), so m ≤ 2·phi_divisor² bounds the search.
    (2..=2 * phi_divisor * phi_divisor + 2)
        .filter(|&m| phi_divisor.is_multiple_of(euler_phi(m)))
        .collect()
}

/// All `(m, r)` with `φ(m) | phi_divisor`, `n = n_target`, the given
/// condition, and an embeddable `G_{m,r}`, grouped by isomorphism type.
pub fn enumerate_gmr(
    n_target: u64,
    phi_divisor: u64,
    condition: Condition,
) -> Result<Vec<EnumeratedGroup>, AmitsurError> {
    enumerate_in_order(n_target, phi_divisor, condition, false)
}

pub fn enumerate_in_order(
    n_target: u64,
    phi_divisor: u64,
    condition: Condition,
    reversed: bool,
) -> Result<Vec<EnumeratedGroup>, AmitsurError> {
    let mut pairs = Vec::new();
    for m in moduli(phi_divisor) {
        if m == 2 && n_target == 2 {
            // r = 1 ≡ −1 (mod 2) with b² = a: the degenerate dicyclic group C_4
            pairs.push(GmrParams::with_order(2, 1, 2)?);
            continue;
        }
        for r in 1..m {
            if r.gcd(&m) == 1 && mult_order(r as i64, m)? == n_target {
                pairs.push(GmrParams::new(m, r as i64)?);
            }
        }
    }
    if reversed {
        pairs.reverse();
    }
    let mut groups: BTreeMap<(u64, String), Vec<u64>> = BTreeMap::new();
    for gp in pairs {
        if check_conditions(&gp) != condition || !embeddable_params(&gp).embeddable {
            continue;
        }
        let name = identify(&build_from_params(&gp)?);
        groups.entry((gp.m, name)).or_default().push(gp.r);
    }
    Ok(groups
        .into_iter()
        .map(|((m, name), mut residues)| {
            residues.sort_unstable();
            EnumeratedGroup { name, m, residues }
        })
        .collect())
}
