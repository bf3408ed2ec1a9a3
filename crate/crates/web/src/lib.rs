//! Browser bindings. Each exported function takes plain strings and
//! numbers and returns a JSON document; failures come back as
//! `{"error": "..."}` rather than exceptions.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use fourfold::abelianfield::AbelianFieldModel;
use fourfold::amitsur;
use fourfold::endalg;
use fourfold::finitegroup::{self, ORDER_BOUND};
use fourfold::intmath::factorize;
use fourfold::polyring::{newton_polygon, IntPoly};
use fourfold::weil::{self, WeilCandidate};

fn err(e: impl ToString) -> Value {
    json!({ "error": e.to_string() })
}

fn to_string(v: Value) -> String {
    serde_json::to_string(&v).expect("serializable")
}

/// Newton polygon vertices `(i, v_p(c_i))` from left to right.
fn vertices(h: &IntPoly, p: u64) -> Result<Vec<(usize, i64)>, String> {
    let segs = newton_polygon(h, p).map_err(|e| e.to_string())?;
    let mut pts: Vec<(usize, i64)> = segs.iter().map(|s| (s.start.0, s.start.1 as i64)).collect();
    if let Some(last) = segs.last() {
        let rise = last.slope * fourfold::Rational::from_integer(last.width as i64);
        pts.push((last.start.0 + last.width, last.start.1 as i64 - rise.to_integer()));
    }
    Ok(pts)
}

/// Newton polygon at the characteristic, the p-adic factor shape, and the
/// endomorphism algebra shape when it can be computed.
pub fn newton_report(q: u64, poly: &str, model: &str) -> Value {
    let h: IntPoly = match poly.parse() {
        Ok(h) => h,
        Err(e) => return err(e),
    };
    let Some((p, a)) = factorize(q).as_prime_power() else {
        return err(format!("q = {q} is not a prime power"));
    };
    let model = match model.trim() {
        "" => None,
        s => match s.parse::<AbelianFieldModel>() {
            Ok(m) => Some(m),
            Err(e) => return err(e),
        },
    };
    let segments = match newton_polygon(&h, p) {
        Ok(s) => s,
        Err(e) => return err(e),
    };
    let points = vertices(&h, p).expect("polygon already computed");
    let verdict = weil::check_weil(&h, q);
    let shape = WeilCandidate::new(q, h.clone(), model)
        .map_err(|e| e.to_string())
        .and_then(|w| endalg::shape(&w).map_err(|e| e.to_string()));
    json!({
        "q": q,
        "p": p,
        "a": a,
        "poly": h.to_string(),
        "degree": h.degree(),
        "segments": serde_json::to_value(&segments).unwrap(),
        "vertices": points,
        "weil": match verdict {
            Ok(v) => serde_json::to_value(&v).unwrap(),
            Err(e) => err(e),
        },
        "shape": match shape {
            Ok(s) => serde_json::to_value(&s).unwrap(),
            Err(e) => err(e),
        },
    })
}

/// Embeddability of `G(m, r)` together with the group table summary.
pub fn group_report(m: u64, r: i64) -> Value {
    let v = match amitsur::gmr_embeddable(m, r) {
        Ok(v) => v,
        Err(e) => return err(e),
    };
    let order = v.params.order();
    let mut doc = json!({
        "verdict": serde_json::to_value(&v).unwrap(),
        "prime_data": serde_json::to_value(v.params.prime_data()).unwrap(),
        "order": order,
    });
    if order > ORDER_BOUND as u64 {
        doc["table"] = err(format!("order {order} exceeds the table bound {ORDER_BOUND}"));
        return doc;
    }
    let table = finitegroup::build_from_params(&v.params).map_err(|e| e.to_string());
    doc["table"] = match table.and_then(|g| {
        let j = finitegroup::jordan_constant(&g).map_err(|e| e.to_string())?;
        let z = finitegroup::is_z_group(&g).map_err(|e| e.to_string())?;
        let hist: Vec<(usize, usize)> = g.order_histogram().into_iter().collect();
        Ok(json!({
            "name": finitegroup::identify(&g),
            "abelian": g.is_abelian(),
            "z_group": z,
            "element_orders": hist,
            "jordan": serde_json::to_value(&j).unwrap(),
        }))
    }) {
        Ok(t) => t,
        Err(e) => err(e),
    };
    doc
}

/// Weil test with the real transform and local invariants.
pub fn weil_report(q: u64, poly: &str) -> Value {
    let h: IntPoly = match poly.parse() {
        Ok(h) => h,
        Err(e) => return err(e),
    };
    let v = match weil::check_weil(&h, q) {
        Ok(v) => v,
        Err(e) => return err(e),
    };
    let mut doc = json!({
        "q": q,
        "poly": h.to_string(),
        "verdict": serde_json::to_value(&v).unwrap(),
    });
    if let Ok(t) = weil::real_weil_transform(&h, q) {
        doc["real_transform"] = json!(t.to_string());
    }
    if v.is_weil {
        doc["invariants"] = match WeilCandidate::new(q, h, None)
            .map_err(|e| e.to_string())
            .and_then(|w| endalg::local_invariants(&w).map_err(|e| e.to_string()))
        {
            Ok(li) => serde_json::to_value(&li).unwrap(),
            Err(e) => err(e),
        };
    }
    doc
}

#[wasm_bindgen]
pub fn newton(q: u32, poly: &str, model: &str) -> String {
    to_string(newton_report(q.into(), poly, model))
}

#[wasm_bindgen]
pub fn group(m: u32, r: i32) -> String {
    to_string(group_report(m.into(), r.into()))
}

#[wasm_bindgen]
pub fn weil_check(q: u32, poly: &str) -> String {
    to_string(weil_report(q.into(), poly))
}
