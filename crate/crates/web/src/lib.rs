//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export takes and returns JSON strings. The plain functions in
//! [`api`] do the work so they can be tested natively.

use wasm_bindgen::prelude::*;

pub mod api;

fn js(r: Result<String, String>) -> Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

/// Polar space (and quadric shading when present) of a group spec.
#[wasm_bindgen]
pub fn explore(spec: &str, n_select: &str) -> Result<String, JsValue> {
    js(api::explore(spec, n_select))
}

/// Points conjugate to `point`, with the group elements on it.
#[wasm_bindgen]
pub fn conjugates(spec: &str, n_select: &str, point: usize) -> Result<String, JsValue> {
    js(api::conjugates(spec, n_select, point))
}

/// GQ(2,4) from the two-qutrit W_3(3) at point `u`.
#[wasm_bindgen]
pub fn quadrangle(u: usize) -> Result<String, JsValue> {
    js(api::quadrangle(u))
}
