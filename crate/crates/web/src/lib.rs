//! Browser front end: validate a gadget, build one of the five constructions,
//! or divide a gadget into stacked levels. Each operation has a plain Rust
//! function returning `Result<String, String>`, which the native tests call,
//! and a thin `wasm_bindgen` export for the page.

use gadget_forge::cheng::build_cheng;
use gadget_forge::division::{build_division, psi_avoiding_g, validate_plan, DivisionPlan};
use gadget_forge::export::{export_fold, export_svg, ExportOptions};
use gadget_forge::first::{build_first, FirstParams};
use gadget_forge::onepleat::build_onepleat;
use gadget_forge::second::build_second;
use gadget_forge::third::build_third;
use gadget_forge::{validate, Angle, CreasePattern, GadgetSpec, Side};
use wasm_bindgen::prelude::*;

fn spec(alpha: f64, beta_l: f64, beta_r: f64, delta_l: f64, delta_r: f64) -> GadgetSpec {
    GadgetSpec::from_degrees(alpha, beta_l, beta_r, delta_l, delta_r)
}

fn side(tau: &str) -> Result<Side, String> {
    match tau {
        "L" | "l" => Ok(Side::L),
        "R" | "r" => Ok(Side::R),
        _ => Err(format!("unknown side {tau:?}")),
    }
}

fn render(cp: &CreasePattern, format: &str, flip: bool) -> Result<String, String> {
    let cp = if flip { cp.flipped() } else { cp.clone() };
    let opts = ExportOptions::default();
    match format {
        "svg" => export_svg(&cp, &opts),
        "fold" => export_fold(&cp, &opts),
        _ => return Err(format!("unknown format {format:?}")),
    }
    .map_err(|e| e.to_string())
}

/// JSON object with `valid`, `flat`, `gamma_deg` and the violated conditions.
pub fn validate_json(alpha: f64, beta_l: f64, beta_r: f64, delta_l: f64, delta_r: f64) -> String {
    let s = spec(alpha, beta_l, beta_r, delta_l, delta_r);
    let report = validate(&s);
    serde_json::json!({
        "valid": report.is_valid(),
        "flat": report.flat,
        "gamma_deg": s.gamma().deg(),
        "summary": report.to_string(),
        "violations": report.violations.iter().map(|v| v.detail.clone()).collect::<Vec<_>>(),
    })
    .to_string()
}

/// Renders one construction as SVG or FOLD. `abe` (first) and `theta`
/// (second) are in degrees; NaN selects the default.
#[allow(clippy::too_many_arguments)]
pub fn build(
    construction: &str,
    alpha: f64,
    beta_l: f64,
    beta_r: f64,
    delta_l: f64,
    delta_r: f64,
    tau: &str,
    abe: f64,
    theta: f64,
    format: &str,
    flip: bool,
) -> Result<String, String> {
    let s = spec(alpha, beta_l, beta_r, delta_l, delta_r);
    let tau = side(tau)?;
    let cp = match construction {
        "onepleat" => build_onepleat(&s, tau),
        "cheng" => build_cheng(&s, tau),
        "first" => {
            let params =
                if abe.is_nan() { FirstParams::with_default_abe(&s, tau) } else { FirstParams { tau, abe: Angle::from_deg(abe) } };
            build_first(&s, params)
        }
        "second" => build_second(&s, (!theta.is_nan()).then(|| Angle::from_deg(theta))),
        "third" => build_third(&s),
        _ => return Err(format!("unknown construction {construction:?}")),
    }
    .map_err(|e| e.to_string())?;
    render(&cp, format, flip)
}

/// Divides a zero-turn gadget into levels with the given comma-separated
/// proportions (an integer `d` alone means d equal parts).
pub fn divide(
    alpha: f64,
    beta_l: f64,
    beta_r: f64,
    proportions: &str,
    avoid_g: bool,
    format: &str,
) -> Result<String, String> {
    let s = spec(alpha, beta_l, beta_r, 0.0, 0.0);
    let ratio: Vec<f64> = match proportions.trim().parse::<usize>() {
        Ok(d) => vec![1.0; d],
        Err(_) => proportions
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("cannot parse {t:?}")))
            .collect::<Result<_, _>>()?,
    };
    let mut plan = DivisionPlan::from_ratio(&ratio, None).map_err(|e| e.to_string())?;
    if avoid_g {
        let psi = psi_avoiding_g(&s, &plan.proportions)
            .map_err(|e| e.to_string())?
            .ok_or("no ψ avoids G on every level")?;
        plan = plan.with_psi(psi).map_err(|e| e.to_string())?;
    }
    let report = validate_plan(&s, &plan).map_err(|e| e.to_string())?;
    if !report.is_valid() {
        return Err(report.violations.join("\n"));
    }
    let cp = build_division(&s, &plan).map_err(|e| e.to_string())?;
    render(&cp, format, false)
}

#[wasm_bindgen(js_name = validateSpec)]
pub fn validate_spec(alpha: f64, beta_l: f64, beta_r: f64, delta_l: f64, delta_r: f64) -> String {
    validate_json(alpha, beta_l, beta_r, delta_l, delta_r)
}

#[wasm_bindgen(js_name = buildPattern)]
#[allow(clippy::too_many_arguments)]
pub fn build_pattern(
    construction: &str,
    alpha: f64,
    beta_l: f64,
    beta_r: f64,
    delta_l: f64,
    delta_r: f64,
    tau: &str,
    abe: f64,
    theta: f64,
    format: &str,
    flip: bool,
) -> Result<String, JsValue> {
    build(construction, alpha, beta_l, beta_r, delta_l, delta_r, tau, abe, theta, format, flip).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = dividePattern)]
pub fn divide_pattern(
    alpha: f64,
    beta_l: f64,
    beta_r: f64,
    proportions: &str,
    avoid_g: bool,
    format: &str,
) -> Result<String, JsValue> {
    divide(alpha, beta_l, beta_r, proportions, avoid_g, format).map_err(|e| JsValue::from_str(&e))
}
