//! Exact arithmetic for Weil numbers, endomorphism algebras of abelian
//! varieties over finite fields, and finite subgroups of division rings.

pub mod abelianfield;
pub mod amitsur;
pub mod catalog;
pub mod endalg;
pub mod finitegroup;
pub mod intmath;
pub mod polyring;
pub mod weil;

#[cfg(test)]
mod testutil;

pub use polyring::Rational;
use serde::ser::SerializeStruct;
use serde::Serializer;

/// Serialize a rational as `{"num": n, "den": d}`.
pub fn serde_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    let mut st = s.serialize_struct("Rational", 2)?;
    st.serialize_field("num", r.numer())?;
    st.serialize_field("den", r.denom())?;
    st.end()
}
