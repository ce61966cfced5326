//! wasm-bindgen bindings behind `www/index.html`. Each export returns a JSON
//! string; the native tests call the plain `*_json` functions.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use repzeta::arith::global_coeffs_from_local;
use repzeta::schemes::{local_coefficients, local_zeta_multiplicative, pole_set, product_form, GroupScheme};
use repzeta::weyl::conjecture_l_report;

const MAX_N: usize = 8;
const MAX_BOUND: usize = 2000;

fn scheme(family: &str, n: usize, delta: usize) -> Result<GroupScheme, String> {
    if n > MAX_N {
        return Err(format!("n is limited to {MAX_N} in the browser"));
    }
    GroupScheme::new(family.parse().map_err(|e| format!("{e}"))?, n, delta).map_err(|e| e.to_string())
}

fn num(x: &BigInt) -> Value {
    x.to_u64().map_or_else(|| json!(x.to_string()), |v| json!(v))
}

pub fn local_zeta_json(family: &str, n: usize, delta: usize, q: u64) -> Result<String, String> {
    let g = scheme(family, n, delta)?;
    let coeffs = local_coefficients(&g, q, 8).map_err(|e| e.to_string())?;
    Ok(json!({
        "label": g.label(),
        "local_zeta": local_zeta_multiplicative(&g).to_string(),
        "product_form": product_form(&g).to_string(),
        "abscissa": g.alpha(),
        "poles": pole_set(&g).iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "q": q,
        "coefficients": coeffs.iter().map(num).collect::<Vec<_>>(),
    })
    .to_string())
}

pub fn global_coeffs_json(family: &str, n: usize, delta: usize, bound: usize) -> Result<String, String> {
    if bound > MAX_BOUND {
        return Err(format!("bound is limited to {MAX_BOUND} in the browser"));
    }
    let g = scheme(family, n, delta)?;
    let c = global_coeffs_from_local(&g, bound).map_err(|e| e.to_string())?;
    Ok(Value::Array(c.coeffs.iter().map(num).collect()).to_string())
}

pub fn conjecture_l_json(n: usize) -> Result<String, String> {
    if n > 5 {
        return Err("n is limited to 5 in the browser".into());
    }
    let rows = conjecture_l_report(n).map_err(|e| e.to_string())?;
    serde_json::to_string(&rows).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = localZeta)]
pub fn local_zeta(family: &str, n: usize, delta: usize, q: u32) -> Result<String, JsError> {
    local_zeta_json(family, n, delta, q.into()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = globalCoeffs)]
pub fn global_coeffs(family: &str, n: usize, delta: usize, bound: usize) -> Result<String, JsError> {
    global_coeffs_json(family, n, delta, bound).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = conjectureL)]
pub fn conjecture_l(n: usize) -> Result<String, JsError> {
    conjecture_l_json(n).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg() {
        let v: Value = serde_json::from_str(&local_zeta_json("G", 1, 0, 2).unwrap()).unwrap();
        assert_eq!(v["local_zeta"], "(1 - t)/(1 - q*t)");
        assert_eq!(v["coefficients"][3], 4);
        assert_eq!(global_coeffs_json("G", 1, 0, 6).unwrap(), "[1,1,2,2,4,2]");
    }

    #[test]
    fn limits_and_bad_input() {
        assert!(local_zeta_json("K", 1, 0, 2).is_err());
        assert!(local_zeta_json("G", 9, 0, 2).is_err());
        assert!(global_coeffs_json("G", 1, 0, 5000).is_err());
        assert!(conjecture_l_json(6).is_err());
    }

    #[test]
    fn conjecture_rows() {
        let v: Value = serde_json::from_str(&conjecture_l_json(2).unwrap()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 4);
        assert!(v.as_array().unwrap().iter().all(|r| r["matches"] == true));
    }
}
