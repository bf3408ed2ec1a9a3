//! Shape of `End⁰` of a simple abelian variety over `F_q` from its Weil
//! number: local invariants, division degree, dimension, Albert
//! restrictions and the three possible shapes in dimension four.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::abelianfield::{AbelianFieldModel, FieldError};
use crate::polyring::{
    newton_polygon, padic_factor_shape, shape_with_uniform_local_degree, PadicFactorShape,
    PolyError, Rational,
};
use crate::weil::{check_weil, real_quadratic_subfield, real_root_count, WeilCandidate, WeilError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EndAlgError {
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{poly} is not a {q}-Weil polynomial: {reason}")]
    NotWeil { poly: String, q: u64, reason: String },
    #[error("e·d = {e}·{d} is odd")]
    OddProduct { e: u64, d: u64 },
    #[error("inconsistent Albert parameters: {0}")]
    InconsistentAlbert(String),
    #[error("no invariants given")]
    NoInvariants,
    #[error("dimension g = {g}, not a fourfold")]
    NotAFourfold { g: u64 },
    #[error(
        "(e, d) = ({e}, {d}) is none of (8,1), (4,2) over a CM field, (2,4); \
         a simple fourfold over a finite field has one of these shapes"
    )]
    UnsupportedShape { e: u64, d: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlaceTag {
    /// The `index`-th place above `p`.
    AboveP { p: u64, index: usize },
    Real { index: usize },
    /// All remaining places, each with invariant 0.
    Other,
}

impl fmt::Display for PlaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceTag::AboveP { p, index } => write!(f, "{p}#{index}"),
            PlaceTag::Real { index } => write!(f, "∞#{index}"),
            PlaceTag::Other => write!(f, "other"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlaceInvariant {
    pub place: PlaceTag,
    #[serde(serialize_with = "crate::serde_rational")]
    pub invariant: Rational,
}

/// Reduce into `[0, 1)`.
pub fn mod_one(r: Rational) -> Rational {
    r - r.floor()
}

fn half() -> Rational {
    Rational::new(1, 2)
}

/// How the places above `p` were found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LocalDataSource {
    /// Newton polygon plus residual factorization.
    OreSplitting,
    /// Residuals inseparable; `Q(π)` is abelian, so every place above `p`
    /// has the local degree `e·f` of the declared model.
    UniformLocalDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalInvariants {
    pub shape: PadicFactorShape,
    pub source: LocalDataSource,
    pub invariants: Vec<PlaceInvariant>,
}

fn shape_at_p(w: &WeilCandidate) -> Result<(PadicFactorShape, LocalDataSource), EndAlgError> {
    match padic_factor_shape(&w.h, w.p) {
        Ok(shape) => Ok((shape, LocalDataSource::OreSplitting)),
        Err(PolyError::OreIrregular { .. }) if w.model.is_some() => {
            let s = w.model.as_ref().unwrap().splitting_efg(w.p)?;
            let poly = newton_polygon(&w.h, w.p)?;
            let shape = shape_with_uniform_local_degree(&poly, w.p, (s.e * s.f) as usize)?;
            Ok((shape, LocalDataSource::UniformLocalDegree))
        }
        Err(e) => Err(e.into()),
    }
}

fn require_weil(w: &WeilCandidate) -> Result<(), EndAlgError> {
    let v = check_weil(&w.h, w.q)?;
    if v.is_weil {
        Ok(())
    } else {
        Err(EndAlgError::NotWeil {
            poly: w.h.to_string(),
            q: w.q,
            reason: v.reason,
        })
    }
}

/// Invariants of `End⁰` at the places of `Q(π)`: `(λ/a)·[K_v:Q_p]` above
/// `p` (with `λ = v(π)`, `v(p) = 1`), `1/2` at real places, `0` elsewhere.
pub fn local_invariants(w: &WeilCandidate) -> Result<LocalInvariants, EndAlgError> {
    require_weil(w)?;
    let (shape, source) = shape_at_p(w)?;
    let a = Rational::from_integer(w.a as i64);
    let mut invariants: Vec<PlaceInvariant> = shape
        .factors
        .iter()
        .enumerate()
        .map(|(index, f)| PlaceInvariant {
            place: PlaceTag::AboveP { p: w.p, index },
            invariant: mod_one(f.valuation / a * Rational::from_integer(f.local_degree as i64)),
        })
        .collect();
    for index in 0..real_root_count(&w.h) {
        invariants.push(PlaceInvariant {
            place: PlaceTag::Real { index },
            invariant: half(),
        });
    }
    invariants.push(PlaceInvariant {
        place: PlaceTag::Other,
        invariant: Rational::from_integer(0),
    });
    Ok(LocalInvariants {
        shape,
        source,
        invariants,
    })
}

/// Least common denominator of the invariants.
pub fn division_degree(invs: &[PlaceInvariant]) -> Result<u64, EndAlgError> {
    if invs.is_empty() {
        return Err(EndAlgError::NoInvariants);
    }
    Ok(invs
        .iter()
        .fold(1i64, |acc, i| acc.lcm(mod_one(i.invariant).denom())) as u64)
}

pub fn invariant_sum(invs: &[PlaceInvariant]) -> Rational {
    mod_one(invs.iter().map(|i| i.invariant).sum())
}

/// `g = e·d/2`.
pub fn abelian_dimension(e: u64, d: u64) -> Result<u64, EndAlgError> {
    if (e * d) % 2 == 1 {
        return Err(EndAlgError::OddProduct { e, d });
    }
    Ok(e * d / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlbertType {
    I,
    II,
    III,
    IV,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Characteristic {
    Zero,
    Positive,
}

/// Divisibility restriction on `(e0, e, d, g)` for each Albert type.
pub fn albert_allowed(
    kind: AlbertType,
    e0: u64,
    e: u64,
    d: u64,
    g: u64,
    char: Characteristic,
) -> Result<bool, EndAlgError> {
    let consistent = match kind {
        AlbertType::IV => e == 2 * e0,
        _ => e == e0,
    };
    if !consistent || e0 == 0 || d == 0 || g == 0 {
        return Err(EndAlgError::InconsistentAlbert(format!(
            "type {kind:?} with e0 = {e0}, e = {e}, d = {d}, g = {g}"
        )));
    }
    let divisor = match (kind, char) {
        (AlbertType::I, _) => e,
        (AlbertType::II, _) => 2 * e,
        (AlbertType::III, Characteristic::Zero) => 2 * e,
        (AlbertType::III, Characteristic::Positive) => e,
        (AlbertType::IV, Characteristic::Zero) => e0 * d * d,
        (AlbertType::IV, Characteristic::Positive) => e0 * d,
    };
    Ok(g.is_multiple_of(divisor))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FourfoldKind {
    CmOctic,
    QuaternionOverQuarticCm,
    Degree4OverImaginaryQuadratic,
    Other,
}

impl fmt::Display for FourfoldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FourfoldKind::CmOctic => "CM_OCTIC",
            FourfoldKind::QuaternionOverQuarticCm => "QUATERNION_OVER_QUARTIC_CM",
            FourfoldKind::Degree4OverImaginaryQuadratic => "DEGREE4_OVER_IMAGINARY_QUADRATIC",
            FourfoldKind::Other => "OTHER",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndAlgebraShape {
    pub q: u64,
    pub e: u64,
    pub d: u64,
    pub g: u64,
    pub invariants: Vec<PlaceInvariant>,
    pub source: LocalDataSource,
    pub padic_shape: PadicFactorShape,
    pub totally_imaginary: bool,
    pub kind: FourfoldKind,
    /// Degree of the maximal totally real subfield `K0`.
    pub e0: Option<u64>,
    /// Squarefree `d0` with `K0 = Q(√d0)`, for quartic centers.
    pub real_subfield: Option<i64>,
}

impl EndAlgebraShape {
    pub fn nonzero_invariants(&self) -> Vec<Rational> {
        self.invariants
            .iter()
            .map(|i| i.invariant)
            .filter(|r| *r.numer() != 0)
            .collect()
    }
}

/// Full shape for any `g`; `kind` is `Other` off the three fourfold profiles.
pub fn shape(w: &WeilCandidate) -> Result<EndAlgebraShape, EndAlgError> {
    let local = local_invariants(w)?;
    let e = w.degree() as u64;
    let d = division_degree(&local.invariants)?;
    let g = abelian_dimension(e, d)?;
    let totally_imaginary = real_root_count(&w.h) == 0;
    let kind = match (e, d) {
        (8, 1) if totally_imaginary => FourfoldKind::CmOctic,
        (4, 2) if totally_imaginary => FourfoldKind::QuaternionOverQuarticCm,
        (2, 4) if totally_imaginary => FourfoldKind::Degree4OverImaginaryQuadratic,
        _ => FourfoldKind::Other,
    };
    let (e0, real_subfield) = match (totally_imaginary, e) {
        (true, 2) => (Some(1), Some(1)),
        (true, 4) => (Some(2), Some(real_quadratic_subfield(&w.h, w.q)?)),
        _ => (None, None),
    };
    Ok(EndAlgebraShape {
        q: w.q,
        e,
        d,
        g,
        invariants: local.invariants,
        source: local.source,
        padic_shape: local.shape,
        totally_imaginary,
        kind,
        e0,
        real_subfield,
    })
}

/// Shape of a simple fourfold; rejects anything off the three profiles.
pub fn classify_fourfold(w: &WeilCandidate) -> Result<EndAlgebraShape, EndAlgError> {
    let s = shape(w)?;
    if s.g != 4 {
        return Err(EndAlgError::NotAFourfold { g: s.g });
    }
    if s.kind == FourfoldKind::Other {
        return Err(EndAlgError::UnsupportedShape { e: s.e, d: s.d });
    }
    Ok(s)
}

/// `(p, local index)` for each finite place with nonzero invariant.
pub fn ramified_places(invs: &[PlaceInvariant]) -> Vec<(u64, u64)> {
    invs.iter()
        .filter_map(|i| match i.place {
            PlaceTag::AboveP { p, .. } if *i.invariant.numer() != 0 => {
                Some((p, *i.invariant.denom() as u64))
            }
            _ => None,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseChange {
    pub invariants: Vec<PlaceInvariant>,
    pub is_division: bool,
}

/// Invariants of `D_{ℓ,∞} ⊗ K` for the quaternion algebra over `Q`
/// ramified exactly at `ℓ` and `∞`.
pub fn quaternion_base_change_invariants(
    ell: u64,
    k: &AbelianFieldModel,
) -> Result<BaseChange, EndAlgError> {
    let s = k.splitting_efg(ell)?;
    let local = mod_one(half() * Rational::from_integer((s.e * s.f) as i64));
    let mut invariants: Vec<PlaceInvariant> = (0..s.g as usize)
        .map(|index| PlaceInvariant {
            place: PlaceTag::AboveP { p: ell, index },
            invariant: local,
        })
        .collect();
    if k.is_totally_real() {
        for index in 0..k.degree() as usize {
            invariants.push(PlaceInvariant {
                place: PlaceTag::Real { index },
                invariant: half(),
            });
        }
    }
    invariants.push(PlaceInvariant {
        place: PlaceTag::Other,
        invariant: Rational::from_integer(0),
    });
    let is_division = invariants.iter().any(|i| *i.invariant.numer() != 0);
    Ok(BaseChange {
        invariants,
        is_division,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub admissible: bool,
    /// `[K(ζ_m) : K]`.
    pub subfield_degree: u64,
    pub reason: String,
    /// Set when `K(ζ_m)` is smaller than a maximal subfield, so a positive
    /// verdict only records necessary conditions.
    pub necessary_only: bool,
}

/// Whether `K(ζ_m)` can embed in a central division algebra of degree
/// `deg` over `K` with the given finite ramification `(p, local index)`.
///
/// A field `L ⊇ K` with `[L:K] = r` embeds iff `r | deg` and at every place
/// `w | v` the index of `D_v ⊗ L_w`, namely `m_v / gcd(m_v, [L_w:K_v])`,
/// divides `deg / r`.
pub fn cyclic_subgroup_admissible(
    m: u64,
    k: &AbelianFieldModel,
    deg: u64,
    ram: &[(u64, u64)],
) -> Result<Admissibility, EndAlgError> {
    let l = k.compositum(&AbelianFieldModel::cyclotomic(m));
    let r = l.degree() / k.degree();
    let necessary_only = r < deg;
    if !deg.is_multiple_of(r) {
        return Ok(Admissibility {
            admissible: false,
            subfield_degree: r,
            reason: format!("[K(ζ_{m}) : K] = {r} does not divide {deg}"),
            necessary_only,
        });
    }
    for &(p, idx) in ram {
        let ld = AbelianFieldModel::relative_local_degree(&l, k, p)?;
        let residual = idx / idx.gcd(&ld);
        if !(deg / r).is_multiple_of(residual) {
            return Ok(Admissibility {
                admissible: false,
                subfield_degree: r,
                reason: format!(
                    "at {p}: local index {idx}, [L_w : K_v] = {ld}, \
                     residual index {residual} does not divide {}",
                    deg / r
                ),
                necessary_only,
            });
        }
    }
    Ok(Admissibility {
        admissible: true,
        subfield_degree: r,
        reason: format!("[K(ζ_{m}) : K] = {r} and every local condition holds"),
        necessary_only,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::IntPoly;
    use crate::weil::weil_from_cyclotomic_scaling;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn cand(q: u64, c: &[i64], model: Option<&str>) -> WeilCandidate {
        WeilCandidate::new(
            q,
            IntPoly::from_i64s(c),
            model.map(|m| m.parse().unwrap()),
        )
        .unwrap()
    }

    fn finite(invs: &[PlaceInvariant]) -> Vec<Rational> {
        invs.iter()
            .filter(|i| matches!(i.place, PlaceTag::AboveP { .. }))
            .map(|i| i.invariant)
            .collect()
    }

    fn octic() -> WeilCandidate {
        cand(2, &[16, 0, 8, -2, 1, -1, 2, 0, 1], None)
    }

    fn w2() -> WeilCandidate {
        cand(241u64.pow(4), &[241i64.pow(4), 240 * 241, 1], Some("4:"))
    }

    #[test]
    fn invariants_examples() {
        let li = local_invariants(&w2()).unwrap();
        assert_eq!(finite(&li.invariants), vec![r(3, 4), r(1, 4)]);
        let w4 = weil_from_cyclotomic_scaling(97, 8).unwrap();
        assert_eq!(finite(&local_invariants(&w4).unwrap().invariants), vec![r(1, 2); 4]);
        let li = local_invariants(&octic()).unwrap();
        assert!(li.invariants.iter().all(|i| *i.invariant.numer() == 0));
        assert_eq!(li.source, LocalDataSource::OreSplitting);
    }

    #[test]
    fn irregular_witnesses_use_the_model() {
        for (c, n) in [(2u64, 16u64), (2, 20), (2, 24), (5, 30)] {
            let w = weil_from_cyclotomic_scaling(c, n).unwrap();
            let li = local_invariants(&w).unwrap();
            assert_eq!(li.source, LocalDataSource::UniformLocalDegree);
            assert!(li.invariants.iter().all(|i| *i.invariant.numer() == 0));
            let no_model = WeilCandidate { model: None, ..w };
            assert!(matches!(
                local_invariants(&no_model),
                Err(EndAlgError::Poly(PolyError::OreIrregular { .. }))
            ));
        }
    }

    #[test]
    fn degrees_and_dimensions() {
        let inv = |xs: &[Rational]| -> Vec<PlaceInvariant> {
            xs.iter()
                .enumerate()
                .map(|(index, &invariant)| PlaceInvariant {
                    place: PlaceTag::AboveP { p: 2, index },
                    invariant,
                })
                .collect()
        };
        assert_eq!(division_degree(&inv(&[r(3, 4), r(1, 4)])).unwrap(), 4);
        assert_eq!(division_degree(&inv(&[r(1, 2); 4])).unwrap(), 2);
        assert_eq!(division_degree(&inv(&[r(0, 1); 3])).unwrap(), 1);
        assert_eq!(division_degree(&[]), Err(EndAlgError::NoInvariants));
        assert_eq!(abelian_dimension(2, 4).unwrap(), 4);
        assert_eq!(abelian_dimension(8, 1).unwrap(), 4);
        assert_eq!(abelian_dimension(4, 2).unwrap(), 4);
        assert_eq!(abelian_dimension(3, 1), Err(EndAlgError::OddProduct { e: 3, d: 1 }));
    }

    #[test]
    fn albert_table() {
        use AlbertType::*;
        use Characteristic::*;
        assert!(albert_allowed(III, 2, 2, 2, 4, Positive).unwrap());
        assert!(!albert_allowed(II, 4, 4, 2, 4, Positive).unwrap());
        assert!(albert_allowed(IV, 4, 8, 1, 4, Positive).unwrap());
        assert!(!albert_allowed(III, 4, 4, 2, 4, Zero).unwrap());
        assert!(!albert_allowed(IV, 1, 2, 4, 4, Zero).unwrap());
        assert!(albert_allowed(IV, 1, 2, 4, 4, Positive).unwrap());
        assert!(albert_allowed(IV, 2, 3, 1, 4, Positive).is_err());
    }

    #[test]
    fn fourfold_kinds() {
        assert_eq!(classify_fourfold(&octic()).unwrap().kind, FourfoldKind::CmOctic);
        let w4 = weil_from_cyclotomic_scaling(97, 8).unwrap();
        let s = classify_fourfold(&w4).unwrap();
        assert_eq!(s.kind, FourfoldKind::QuaternionOverQuarticCm);
        assert_eq!((s.e0, s.real_subfield), (Some(2), Some(2)));
        assert_eq!(
            classify_fourfold(&w2()).unwrap().kind,
            FourfoldKind::Degree4OverImaginaryQuadratic
        );
        // an ordinary elliptic curve: e = 2, all invariants zero, g = 1
        let ell = cand(5, &[5, -1, 1], None);
        assert_eq!(classify_fourfold(&ell), Err(EndAlgError::NotAFourfold { g: 1 }));
        // supersingular curve over F_p with π = √−p: (e, d) = (2, 1), g = 1
        let ss = cand(5, &[5, 0, 1], None);
        assert_eq!(shape(&ss).unwrap().g, 1);
        // π = √q real: D_{p,∞} over Q(√p), g = 2
        let real = cand(2, &[-2, 0, 1], None);
        let s = shape(&real).unwrap();
        assert_eq!((s.e, s.d, s.g), (2, 2, 2));
        assert_eq!(invariant_sum(&s.invariants), r(0, 1));
    }

    #[test]
    fn base_change() {
        let b = quaternion_base_change_invariants(2, &"5:".parse().unwrap()).unwrap();
        assert!(!b.is_division);
        let b = quaternion_base_change_invariants(2, &"5:4".parse().unwrap()).unwrap();
        assert!(b.is_division);
        let reals: Vec<_> = b
            .invariants
            .iter()
            .filter(|i| matches!(i.place, PlaceTag::Real { .. }))
            .map(|i| i.invariant)
            .collect();
        assert_eq!(reals, vec![r(1, 2), r(1, 2)]);
        assert!(finite(&b.invariants).iter().all(|x| *x.numer() == 0));
        let b = quaternion_base_change_invariants(3, &"4:".parse().unwrap()).unwrap();
        assert!(!b.is_division);
        // Q(√−1): 2 ramified, local degree 2 -> splits; Q(√−7): 2 splits -> division
        assert!(!quaternion_base_change_invariants(2, &"4:".parse().unwrap()).unwrap().is_division);
        assert!(quaternion_base_change_invariants(2, &"7:2".parse().unwrap()).unwrap().is_division);
    }

    #[test]
    fn base_change_splits_when_local_degrees_even() {
        let fields = ["5:", "8:", "12:", "16:", "20:", "20:9", "24:", "3:", "4:", "40:"];
        for f in fields {
            let k: AbelianFieldModel = f.parse().unwrap();
            for ell in [2u64, 3, 5, 7, 11, 13] {
                let s = k.splitting_efg(ell).unwrap();
                if !k.is_totally_real() && (s.e * s.f).is_multiple_of(2) {
                    assert!(!quaternion_base_change_invariants(ell, &k).unwrap().is_division);
                }
            }
        }
    }

    #[test]
    fn admissibility() {
        let z8: AbelianFieldModel = "8:".parse().unwrap();
        let a = cyclic_subgroup_admissible(16, &z8, 2, &[(97, 2)]).unwrap();
        assert!(!a.admissible);
        let a = cyclic_subgroup_admissible(24, &z8, 2, &[(97, 2)]).unwrap();
        assert!(!a.admissible);
        let k11: AbelianFieldModel = "20:9".parse().unwrap();
        assert!(cyclic_subgroup_admissible(20, &k11, 2, &[(5, 2), (5, 2)]).unwrap().admissible);
        assert!(!cyclic_subgroup_admissible(20, &z8, 2, &[(97, 2)]).unwrap().admissible);
        // witness-2 algebra: degree 4 over Q(i), ramified at both places over 241
        let qi: AbelianFieldModel = "4:".parse().unwrap();
        let ram = [(241, 4), (241, 4)];
        let c4 = cyclic_subgroup_admissible(4, &qi, 4, &ram).unwrap();
        assert!(c4.admissible && c4.necessary_only);
        for m in [8, 12, 16, 20, 24] {
            assert!(!cyclic_subgroup_admissible(m, &qi, 4, &ram).unwrap().admissible, "m = {m}");
        }
    }

    #[test]
    fn reciprocity_and_de_law_on_witness_shapes() {
        let mut ws = vec![octic(), w2()];
        for (c, n) in [(97u64, 8u64), (61, 10), (73, 12), (2, 16), (2, 20), (2, 24), (5, 30)] {
            ws.push(weil_from_cyclotomic_scaling(c, n).unwrap());
        }
        for w in &ws {
            let s = shape(w).unwrap();
            assert_eq!(invariant_sum(&s.invariants), r(0, 1));
            assert_eq!(s.d * s.e, 2 * s.g);
            assert!(2 * s.g <= s.e * s.d * s.d);
        }
    }
}
