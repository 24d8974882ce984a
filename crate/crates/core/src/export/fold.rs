use serde::{Deserialize, Serialize};

use super::{prepared, rounded_graph, ExportError, ExportOptions};
use crate::pattern::{ConstructionReport, CreasePattern};

/// The FOLD 1.1 document as written; parsing and re-serializing it gives
/// the same bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldDoc {
    pub file_spec: f64,
    pub file_creator: String,
    pub file_classes: Vec<String>,
    pub frame_classes: Vec<String>,
    pub vertices_coords: Vec<[f64; 2]>,
    pub edges_vertices: Vec<[usize; 2]>,
    pub edges_assignment: Vec<String>,
    #[serde(rename = "gadget_forge:edges_label")]
    pub edges_label: Vec<String>,
    #[serde(rename = "gadget_forge:report")]
    pub report: ConstructionReport,
}

impl FoldDoc {
    pub fn from_pattern(cp: &CreasePattern, opts: &ExportOptions) -> Result<FoldDoc, ExportError> {
        let (cp, g) = prepared(cp, opts)?;
        let r = rounded_graph(&g, opts.precision);
        let mut report = cp.report.clone();
        // JSON has no NaN or infinity.
        report.values.retain(|_, v| v.is_finite());
        report.interference.retain(|_, v| v.is_finite());
        Ok(FoldDoc {
            file_spec: 1.1,
            file_creator: "gadget-forge".into(),
            file_classes: vec!["singleModel".into()],
            frame_classes: vec!["creasePattern".into()],
            vertices_coords: r.vertices,
            edges_vertices: r.edges.iter().map(|e| e.0).collect(),
            edges_assignment: r.edges.iter().map(|e| e.1.code().to_string()).collect(),
            edges_label: r.edges.iter().map(|e| e.2.clone()).collect(),
            report,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("FOLD document serializes");
        s.push('\n');
        s
    }
}

pub fn export_fold(cp: &CreasePattern, opts: &ExportOptions) -> Result<String, ExportError> {
    Ok(FoldDoc::from_pattern(cp, opts)?.to_json())
}

pub fn parse_fold(text: &str) -> Result<FoldDoc, ExportError> {
    serde_json::from_str(text).map_err(|e| ExportError::Parse(e.to_string()))
}
