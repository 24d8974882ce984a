use std::fmt::Write;

use super::{prepared, rounded_graph, ExportError, ExportOptions};
use crate::pattern::{CreasePattern, Fold};

const MOUNTAIN_STYLE: &str = r##"stroke="#c0392b" stroke-width="1.5""##;
const VALLEY_STYLE: &str = r##"stroke="#1f5fbf" stroke-width="1.5" stroke-dasharray="6,3""##;
const BORDER_STYLE: &str = r##"stroke="#000000" stroke-width="3""##;

fn px(v: f64) -> String {
    let s = format!("{v:.3}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000".into()
    } else {
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Mountains solid red, valleys dashed blue, the border heavy black. The y
/// axis points up in the pattern and down on screen.
pub fn export_svg(cp: &CreasePattern, opts: &ExportOptions) -> Result<String, ExportError> {
    let (cp, g) = prepared(cp, opts)?;
    let r = rounded_graph(&g, opts.precision);
    let k = opts.units_per_ab / cp.ab_len;
    let h = cp.half_size * k;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="{}" height="{}">"#,
        px(-h),
        px(-h),
        px(2.0 * h),
        px(2.0 * h),
        px(2.0 * h),
        px(2.0 * h)
    )
    .unwrap();
    writeln!(out, r#"<g fill="none" stroke-linecap="round">"#).unwrap();
    for (e, fold, label) in &r.edges {
        let (a, b) = (r.vertices[e[0]], r.vertices[e[1]]);
        let style = match fold {
            Fold::Mountain => MOUNTAIN_STYLE,
            Fold::Valley => VALLEY_STYLE,
            Fold::Border => BORDER_STYLE,
        };
        writeln!(
            out,
            r#"<path class="{}" d="M {} {} L {} {}" {style}><title>{}</title></path>"#,
            fold.code(),
            px(a[0] * k),
            px(-a[1] * k),
            px(b[0] * k),
            px(-b[1] * k),
            escape(label)
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}
