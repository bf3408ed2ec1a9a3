//! Cayley tables of small groups, their subgroup lattices and Jordan
//! constants.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::amitsur::{AmitsurError, GmrParams};
use crate::intmath::{factorize, pow_mod};

/// Largest group order handled.
pub const ORDER_BOUND: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order {0} exceeds the bound {ORDER_BOUND}")]
    OrderBound(u64),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("not a group table: {0}")]
    NotAGroup(String),
}

impl From<AmitsurError> for GroupError {
    fn from(e: AmitsurError) -> Self {
        GroupError::Params(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    identity: usize,
    table: Vec<u16>,
    inverse: Vec<usize>,
    /// `(i, j)` with element `a^i b^j`, when built from a presentation.
    labels: Option<Vec<(u64, u64)>>,
}

impl FiniteGroupTable {
    /// Checks closure, associativity, identity and inverses.
    pub fn from_cayley(order: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        if order == 0 || order > ORDER_BOUND {
            return Err(GroupError::OrderBound(order as u64));
        }
        if table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(GroupError::NotAGroup("table shape".into()));
        }
        let at = |x: usize, y: usize| table[x * order + y];
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| GroupError::NotAGroup("no identity".into()))?;
        let mut inverse = vec![0; order];
        for (x, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&y| at(x, y) == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("{x} has no inverse")))?;
        }
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    if at(at(x, y), z) != at(x, at(y, z)) {
                        return Err(GroupError::NotAGroup("not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroupTable {
            order,
            identity,
            table: table.into_iter().map(|x| x as u16).collect(),
            inverse,
            labels: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn label(&self, x: usize) -> Option<(u64, u64)> {
        self.labels.as_ref().map(|l| l[x])
    }

    /// Multiset of element orders as `order → count`.
    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for x in 0..self.order {
            *h.entry(self.element_order(x)).or_insert(0) += 1;
        }
        h
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// Relabels elements by `perm`: element `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, GroupError> {
        let n = self.order;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[perm[x] * n + perm[y]] = perm[self.mul(x, y)];
            }
        }
        Self::from_cayley(n, table)
    }
}

/// Element `a^i b^j` has index `i + m·j`.
pub fn build_from_params(gp: &GmrParams) -> Result<FiniteGroupTable, GroupError> {
    let order = gp.order();
    if order > ORDER_BOUND as u64 {
        return Err(GroupError::OrderBound(order));
    }
    let (m, n) = (gp.m as usize, gp.n as usize);
    let r_pow: Vec<u64> = (0..n).map(|j| pow_mod(gp.r, j as u64, gp.m)).collect();
    let size = m * n;
    let mut table = vec![0u16; size * size];
    for x in 0..size {
        let (i, j) = (x % m, x / m);
        for y in 0..size {
            let (k, l) = (y % m, y / m);
            // b^j a^k = a^{k r^j} b^j, and b^n = a^t
            let mut e = i as u64 + k as u64 * r_pow[j];
            let mut jl = j + l;
            if jl >= n {
                jl -= n;
                e += gp.t;
            }
            table[x * size + y] = ((e % gp.m) as usize + m * jl) as u16;
        }
    }
    let inverse = (0..size)
        .map(|x| (0..size).find(|&y| table[x * size + y] == 0).expect("group"))
        .collect();
    Ok(FiniteGroupTable {
        order: size,
        identity: 0,
        table,
        inverse,
        labels: Some((0..size).map(|x| ((x % m) as u64, (x / m) as u64)).collect()),
    })
}

pub fn build_gmr(m: u64, r: i64) -> Result<FiniteGroupTable, GroupError> {
    build_from_params(&GmrParams::new(m, r)?)
}

/// A subgroup as a bitset over element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, x: usize) -> bool {
        let (w, b) = (x / 64, 1u64 << (x % 64));
        let fresh = self.0[w] & b == 0;
        self.0[w] |= b;
        fresh
    }
    fn has(&self, x: usize) -> bool {
        self.0[x / 64] >> (x % 64) & 1 == 1
    }
    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupRecord {
    pub order: usize,
    pub elements: Vec<usize>,
    pub normal: bool,
    pub abelian: bool,
    pub cyclic: bool,
}

fn closure(g: &FiniteGroupTable, gens: &[usize]) -> Bits {
    let mut bits = Bits::empty(g.order);
    bits.set(g.identity);
    let mut elems = vec![g.identity];
    let mut idx = 0;
    while idx < elems.len() {
        let x = elems[idx];
        for &s in gens {
            let y = g.mul(x, s);
            if bits.set(y) {
                elems.push(y);
            }
        }
        idx += 1;
    }
    bits
}

fn members(g: &FiniteGroupTable, bits: &Bits) -> Vec<usize> {
    (0..g.order).filter(|&x| bits.has(x)).collect()
}

fn record(g: &FiniteGroupTable, bits: &Bits) -> SubgroupRecord {
    let elements = members(g, bits);
    let normal = (0..g.order).all(|x| {
        elements
            .iter()
            .all(|&h| bits.has(g.mul(g.mul(x, h), g.inv(x))))
    });
    let abelian = elements
        .iter()
        .all(|&x| elements.iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
    let cyclic = elements.iter().any(|&x| g.element_order(x) == elements.len());
    SubgroupRecord {
        order: elements.len(),
        elements,
        normal,
        abelian,
        cyclic,
    }
}

/// All subgroups, sorted by order then elements. Starts from the cyclic
/// subgroups and joins pairs until nothing new appears, so it is complete
/// for any group, not only metacyclic ones.
pub fn subgroups(g: &FiniteGroupTable) -> Result<Vec<SubgroupRecord>, GroupError> {
    if g.order > ORDER_BOUND {
        return Err(GroupError::OrderBound(g.order as u64));
    }
    Ok(lattice(g).iter().map(|b| record(g, b)).collect())
}

fn lattice(g: &FiniteGroupTable) -> Vec<Bits> {
    let mut seen: HashSet<Bits> = HashSet::new();
    let mut cyclic_gens = Vec::new();
    for x in 0..g.order {
        let b = closure(g, &[x]);
        if seen.insert(b) {
            cyclic_gens.push(x);
        }
    }
    let mut all: Vec<(Bits, Vec<usize>)> = seen
        .iter()
        .map(|b| (b.clone(), members(g, b)))
        .collect();
    let mut frontier = 0;
    while frontier < all.len() {
        let end = all.len();
        for i in frontier..end {
            for &c in &cyclic_gens {
                if all[i].0.has(c) {
                    continue;
                }
                let mut gens = all[i].1.clone();
                gens.push(c);
                let b = closure(g, &gens);
                if seen.insert(b.clone()) {
                    let m = members(g, &b);
                    all.push((b, m));
                }
            }
        }
        frontier = end;
    }
    let mut out: Vec<Bits> = all.into_iter().map(|(b, _)| b).collect();
    out.sort_by_key(|b| (b.0.iter().map(|w| w.count_ones()).sum::<u32>(), members(g, b)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JordanReport {
    pub group_order: usize,
    pub jordan_constant: usize,
    /// Subgroup attaining the maximum.
    pub witness_order: usize,
    pub witness_elements: Vec<usize>,
    /// Normal abelian subgroup of the witness of minimal index.
    pub abelian_order: usize,
    pub abelian_elements: Vec<usize>,
    /// Minimal index of a normal abelian subgroup of the whole group.
    pub group_index: usize,
}

/// Minimal `[G : A]` over normal abelian `A ⊴ G`.
pub fn min_normal_abelian_index(g: &FiniteGroupTable) -> Result<usize, GroupError> {
    Ok(subgroups(g)?
        .iter()
        .filter(|h| h.normal && h.abelian)
        .map(|h| g.order / h.order)
        .min()
        .expect("trivial subgroup"))
}

/// `J(G) = max_{H ≤ G} min_{A ⊴ H abelian} [H : A]`.
pub fn jordan_constant(g: &FiniteGroupTable) -> Result<JordanReport, GroupError> {
    if g.order > ORDER_BOUND {
        return Err(GroupError::OrderBound(g.order as u64));
    }
    let lat = lattice(g);
    let recs: Vec<SubgroupRecord> = lat.iter().map(|b| record(g, b)).collect();
    let mut best: Option<(usize, usize, usize)> = None;
    let mut group_index = g.order;
    for (hi, h) in lat.iter().enumerate() {
        let hel = &recs[hi].elements;
        let (idx, ai) = lat
            .iter()
            .enumerate()
            .filter(|(ai, a)| {
                recs[*ai].abelian
                    && a.is_subset(h)
                    && hel.iter().all(|&x| {
                        recs[*ai]
                            .elements
                            .iter()
                            .all(|&y| a.has(g.mul(g.mul(x, y), g.inv(x))))
                    })
            })
            .map(|(ai, _)| (hel.len() / recs[ai].order, ai))
            .min()
            .expect("trivial subgroup");
        if hel.len() == g.order {
            group_index = idx;
        }
        if best.is_none_or(|(b, _, _)| idx > b) {
            best = Some((idx, hi, ai));
        }
    }
    let (j, hi, ai) = best.expect("nonempty lattice");
    Ok(JordanReport {
        group_order: g.order,
        jordan_constant: j,
        witness_order: recs[hi].order,
        witness_elements: recs[hi].elements.clone(),
        abelian_order: recs[ai].order,
        abelian_elements: recs[ai].elements.clone(),
        group_index,
    })
}

/// All Sylow subgroups cyclic.
pub fn is_z_group(g: &FiniteGroupTable) -> Result<bool, GroupError> {
    let subs = subgroups(g)?;
    Ok(factorize(g.order as u64).factors().iter().all(|&(p, e)| {
        let size = p.pow(e) as usize;
        subs.iter().filter(|h| h.order == size).all(|h| h.cyclic)
    }))
}

/// Named groups recognised by [`identify`], as `(name, m, r)` presentations.
pub fn catalog_presentations(order: usize) -> Vec<(String, u64, u64)> {
    let mut out = Vec::new();
    if order == 8 {
        out.push(("Q8".to_string(), 4, 3));
    } else if order.is_multiple_of(4) && order >= 12 {
        let k = order as u64 / 2;
        out.push((format!("Dic{order}"), k, k - 1));
    }
    match order {
        40 => out.push(("C5⋊C8".into(), 20, 9)),
        48 => out.push(("C3⋊C16".into(), 24, 17)),
        80 => out.push(("C5⋊C16".into(), 20, 13)),
        _ => {}
    }
    out
}

/// Tries to map `a ↦ x`, `b ↦ y` for the presentation `gp`.
fn presentation_matches(g: &FiniteGroupTable, gp: &GmrParams) -> bool {
    let ord = |x| g.element_order(x) as u64;
    let a_order = gp.m;
    let b_order = gp.n * gp.m / gcd(gp.t, gp.m);
    for x in (0..g.order).filter(|&x| ord(x) == a_order) {
        let x_t = g.pow(x, gp.t);
        let x_r = g.pow(x, gp.r);
        for y in (0..g.order).filter(|&y| ord(y) == b_order) {
            if g.pow(y, gp.n) != x_t || g.mul(g.mul(y, x), g.inv(y)) != x_r {
                continue;
            }
            let mut hit = vec![false; g.order];
            let mut yj = g.identity;
            let mut ok = true;
            'outer: for _ in 0..gp.n {
                let mut e = yj;
                for _ in 0..gp.m {
                    // x^i y^j, built as x·(x^{i−1} y^j)
                    if hit[e] {
                        ok = false;
                        break 'outer;
                    }
                    hit[e] = true;
                    e = g.mul(x, e);
                }
                yj = g.mul(yj, y);
            }
            if ok {
                return true;
            }
        }
    }
    false
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Name of `g` up to isomorphism among `C_n`, `Q8`, `Dic_{4k}`, `C5⋊C8`,
/// `C3⋊C16`, `C5⋊C16`; otherwise `"UNKNOWN"`.
pub fn identify(g: &FiniteGroupTable) -> String {
    let n = g.order;
    if (0..n).any(|x| g.element_order(x) == n) {
        return format!("C{n}");
    }
    let hist = g.order_histogram();
    for (name, m, r) in catalog_presentations(n) {
        let gp = GmrParams::new(m, r as i64).expect("catalog parameters");
        let model = build_from_params(&gp).expect("small");
        if model.order_histogram() == hist && presentation_matches(g, &gp) {
            return name;
        }
    }
    "UNKNOWN".into()
}
