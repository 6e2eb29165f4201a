//! wasm-bindgen bindings for the static demo page in `www/`.
//!
//! Each export has a plain-Rust twin returning `Result<String, String>` so
//! the logic is testable off the browser.

use glfq_core::conjtype::{class_size, type_of, Polypartition};
use glfq_core::degree1::{degree1_product, Degree1Case};
use glfq_core::field::Field;
use glfq_core::matrix::Mat;
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Conjugacy type of a matrix written "a,b;c,d".
pub fn matrix_type_text(q: u32, mat: &str) -> Result<String, String> {
    let f = Field::with_order(q).map_err(err)?;
    let m = Mat::parse(&f, mat).map_err(err)?;
    Ok(type_of(&f, &m).map_err(err)?.to_string(&f))
}

/// Size of the class of type `ty` in GL(n, F_q), in decimal.
pub fn class_size_text(q: u32, n: usize, ty: &str) -> Result<String, String> {
    let f = Field::with_order(q).map_err(err)?;
    let mu = Polypartition::parse(&f, ty).map_err(err)?;
    Ok(class_size(&f, &mu, n).map_err(err)?.to_string())
}

/// The degree-1 multiplication table over F_q as an HTML fragment: one
/// section per pair (a, b), listing Â_{X-a} * Â_{X-b} in the Â basis.
pub fn degree1_table_html(q: u32) -> Result<String, String> {
    if q > 16 {
        return Err("the demo table is limited to q <= 16".into());
    }
    let f = Field::with_order(q).map_err(err)?;
    let mut html = String::new();
    for a in f.units() {
        for b in f.units().filter(|&b| b >= a) {
            let case = Degree1Case::classify(&f, a, b).map_err(err)?;
            let prod = degree1_product(&f, a, b).map_err(err)?;
            html += &format!(
                "<section><h3>X-{} * X-{} <small>({})</small></h3><table>",
                f.fmt_elem(a),
                f.fmt_elem(b),
                case.tag.name()
            );
            for (nu, c) in &prod {
                html += &format!("<tr><td>{}</td><td>{c}</td></tr>", escape(&nu.to_string(&f)));
            }
            html += "</table></section>\n";
        }
    }
    Ok(html)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[wasm_bindgen]
pub fn matrix_type(q: u32, mat: &str) -> Result<String, JsValue> {
    matrix_type_text(q, mat).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn class_size_of(q: u32, n: usize, ty: &str) -> Result<String, JsValue> {
    class_size_text(q, n, ty).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn degree1_table(q: u32) -> Result<String, JsValue> {
    degree1_table_html(q).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exports() {
        assert_eq!(matrix_type_text(5, "0,2;1,2").unwrap(), "{X^2+3*X+3:(1)}");
        assert_eq!(class_size_text(5, 6, "{X^2+X+1:(2);X+3:(1,1)}").unwrap(), "38418317437500000000");
        assert!(class_size_text(6, 2, "{}").is_err());
        let t = degree1_table_html(3).unwrap();
        assert_eq!(t.matches("<section>").count(), 3);
        assert!(t.contains("odd-equal"));
        assert!(degree1_table_html(32).is_err());
    }
}
