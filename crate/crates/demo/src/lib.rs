//! Browser bindings for a few library operations. Each export returns a
//! string or throws the error message.

use wasm_bindgen::prelude::*;

use curvecount::rational;
use curvecount::svg;
use curvecount::tables::GvTable;
use curvecount::transforms;
use curvecount::walls;

/// Candidate walls of an ideal sheaf as an SVG document.
pub fn wall_diagram_inner(n: u32, d: u32, b: &str) -> Result<String, String> {
    let b = rational::parse(b).map_err(|e| e.to_string())?;
    let cands = walls::enumerate_destabilizers(n, d, &b).map_err(|e| e.to_string())?;
    Ok(svg::walls_svg(n, d, &b, &cands))
}

/// Genus bound curves for a hypersurface of degree `n` as an SVG document.
pub fn bound_curves_inner(n: u32, d_max: u32) -> Result<String, String> {
    svg::bound_curves_svg(n, d_max).map_err(|e| e.to_string())
}

/// Gromov-Witten table (CSV) from a Gopakumar-Vafa table (CSV).
pub fn gv_to_gw_inner(gv_csv: &str, g_max: u32, d_max: u32) -> Result<String, String> {
    let gv = GvTable::read_csv(gv_csv.as_bytes(), Some(g_max), Some(d_max)).map_err(|e| e.to_string())?;
    let gw = transforms::gv_to_gw(&gv, g_max, d_max).map_err(|e| e.to_string())?;
    Ok(gw.to_csv_string())
}

#[wasm_bindgen]
pub fn wall_diagram(n: u32, d: u32, b: &str) -> Result<String, JsError> {
    wall_diagram_inner(n, d, b).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn bound_curves(n: u32, d_max: u32) -> Result<String, JsError> {
    bound_curves_inner(n, d_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn gv_to_gw(gv_csv: &str, g_max: u32, d_max: u32) -> Result<String, JsError> {
    gv_to_gw_inner(gv_csv, g_max, d_max).map_err(|e| JsError::new(&e))
}
