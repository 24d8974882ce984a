//! FOLD and SVG emission. Both formats are written from the same planarized
//! edge list so their crease counts agree.

mod fold;
mod svg;

use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::pattern::{CreasePattern, Fold, PlanarGraph, DEFAULT_BBOX_SCALE};

pub use fold::{export_fold, parse_fold, FoldDoc};
pub use svg::export_svg;

pub const DEFAULT_PRECISION: u32 = 9;
pub const MIN_PRECISION: u32 = 6;
pub const MAX_PRECISION: u32 = 15;
pub const DEFAULT_UNITS_PER_AB: f64 = 100.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExportError {
    #[error("pattern has no creases to export")]
    Empty,
    #[error("pattern is not planar: {0} crossing pairs")]
    NotPlanar(usize),
    #[error("precision {0} outside [{MIN_PRECISION}, {MAX_PRECISION}]")]
    Precision(u32),
    #[error("FOLD parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Format {
    Fold,
    Svg,
    Both,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fold" => Ok(Format::Fold),
            "svg" => Ok(Format::Svg),
            "both" => Ok(Format::Both),
            _ => Err(format!("unknown format {s:?}, expected fold, svg or both")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExportOptions {
    pub format: Format,
    pub units_per_ab: f64,
    /// Side of the clipping square in units of |AB|.
    pub bbox_scale: f64,
    /// Decimal places kept in FOLD coordinates.
    pub precision: u32,
}

impl Default for ExportOptions {
    fn default() -> Self {
        ExportOptions {
            format: Format::Fold,
            units_per_ab: DEFAULT_UNITS_PER_AB,
            bbox_scale: DEFAULT_BBOX_SCALE,
            precision: DEFAULT_PRECISION,
        }
    }
}

impl ExportOptions {
    pub fn check(&self) -> Result<(), ExportError> {
        if !(MIN_PRECISION..=MAX_PRECISION).contains(&self.precision) {
            return Err(ExportError::Precision(self.precision));
        }
        Ok(())
    }
}

/// Rounds to `precision` places and folds −0 into 0.
pub fn round_to(x: f64, precision: u32) -> f64 {
    let s = 10f64.powi(precision as i32);
    let r = (x * s).round() / s;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Reclipped, checked and split at every vertex.
fn prepared(cp: &CreasePattern, opts: &ExportOptions) -> Result<(CreasePattern, PlanarGraph), ExportError> {
    opts.check()?;
    if cp.creases.iter().all(|c| c.fold == Fold::Border) {
        return Err(ExportError::Empty);
    }
    let cp = if (opts.bbox_scale - DEFAULT_BBOX_SCALE).abs() > 1e-12 {
        cp.reclipped(opts.bbox_scale)
    } else {
        cp.clone()
    };
    let bad = cp.check_planarity();
    if !bad.is_empty() {
        return Err(ExportError::NotPlanar(bad.len()));
    }
    let g = cp.planarize();
    Ok((cp, g))
}

/// One edge after rounding, with endpoints in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RoundedGraph {
    pub vertices: Vec<[f64; 2]>,
    pub edges: Vec<([usize; 2], Fold, String)>,
}

/// Vertices sorted lexicographically by rounded coordinates, edges by
/// endpoint indices; duplicates after rounding are merged.
pub(crate) fn rounded_graph(g: &PlanarGraph, precision: u32) -> RoundedGraph {
    let rounded: Vec<[f64; 2]> = g.vertices.iter().map(|p| [round_to(p.x, precision), round_to(p.y, precision)]).collect();
    let mut order: Vec<[f64; 2]> = rounded.clone();
    order.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    order.dedup();
    let index = |v: &[f64; 2]| {
        order
            .binary_search_by(|o| o[0].total_cmp(&v[0]).then(o[1].total_cmp(&v[1])))
            .expect("vertex present")
    };
    let mut edges: Vec<([usize; 2], Fold, String)> = g
        .edges
        .iter()
        .filter_map(|e| {
            let (a, b) = (index(&rounded[e.a]), index(&rounded[e.b]));
            (a != b).then(|| ([a.min(b), a.max(b)], e.fold, e.label.clone()))
        })
        .collect();
    edges.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    edges.dedup_by(|x, y| x.0 == y.0);
    RoundedGraph { vertices: order, edges }
}
