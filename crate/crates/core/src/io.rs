//! Plot-ready serialization: CSV for grid functions and nets, JSON for
//! grid metadata, spectra, bound checks and residual reports. Formats are
//! stable so downstream plotting never parses solver internals.

use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::grid::{Grid, GridFunction};
use crate::operators::BoundCheckReport;
use crate::stages::{LimitEstimate, Net};

/// `x,value_re,value_im` rows, one per grid point.
pub fn grid_function_csv<W: Write>(gf: &GridFunction<f64>, mut w: W) -> std::io::Result<()> {
    writeln!(w, "x,value_re,value_im")?;
    for j in 0..gf.grid().n() {
        writeln!(w, "{},{},{}", gf.grid().point(j), gf.value(j), 0.0)?;
    }
    Ok(())
}

pub fn grid_function_csv_complex<W: Write>(
    gf: &GridFunction<Complex64>,
    mut w: W,
) -> std::io::Result<()> {
    writeln!(w, "x,value_re,value_im")?;
    for j in 0..gf.grid().n() {
        let v = gf.value(j);
        writeln!(w, "{},{},{}", gf.grid().point(j), v.re, v.im)?;
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridMetadata {
    pub n: usize,
    pub h: f64,
    pub weights_uniform: bool,
}

impl GridMetadata {
    pub fn of(grid: &Grid) -> Self {
        GridMetadata {
            n: grid.n(),
            h: grid.h(),
            weights_uniform: true,
        }
    }
}

/// Potential description carried in output documents.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct PotentialSpec {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_half_length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_height: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumParams {
    pub n: usize,
    pub h: f64,
    pub variant: String,
    pub potential: PotentialSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundCheckDoc {
    pub tau: f64,
    pub min_eigenvalue: f64,
    pub bound: f64,
    pub pass: bool,
}

impl From<&BoundCheckReport> for BoundCheckDoc {
    fn from(r: &BoundCheckReport) -> Self {
        BoundCheckDoc {
            tau: r.tau,
            min_eigenvalue: r.min_eigenvalue,
            bound: r.bound,
            pass: r.pass,
        }
    }
}

/// Analytic reference block carried alongside grid spectra.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalyticBlock {
    pub source: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub even_wavenumbers: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub even_energies: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub odd_wavenumbers: Vec<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub odd_energies: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_state_energy: Option<f64>,
}

/// Top-level spectrum document; `source` distinguishes grid solves from
/// analytic-only runs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumDocument {
    pub source: String,
    pub params: SpectrumParams,
    pub eigenvalues: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_check: Option<BoundCheckDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub analytic: Option<AnalyticBlock>,
}

/// `stage_n,stage_h,value,delta` rows.
pub fn net_csv<W: Write>(net: &Net, mut w: W) -> std::io::Result<()> {
    writeln!(w, "stage_n,stage_h,value,delta")?;
    let mut prev: Option<f64> = None;
    for (stage, v) in net.entries() {
        let delta = prev.map(|p| v - p).unwrap_or(0.0);
        writeln!(w, "{},{},{},{}", stage.n, stage.h, v, delta)?;
        prev = Some(*v);
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetSummary {
    pub estimate: f64,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
}

impl From<&LimitEstimate> for NetSummary {
    fn from(e: &LimitEstimate) -> Self {
        NetSummary {
            estimate: e.value,
            converged: e.converged,
            rate: e.rate,
        }
    }
}

/// One pairing record of a residual report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResidualRecord {
    pub phi_id: String,
    pub pairing: f64,
    pub classification: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{embed_total, make_grid};

    #[test]
    fn grid_function_csv_round_trips_by_eye() {
        let g = make_grid(5, 0.5).unwrap();
        let f = embed_total(|x| x * x, &g).unwrap();
        let mut buf = Vec::new();
        grid_function_csv(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,value_re,value_im");
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[4], "0.5,0.25,0");
    }

    #[test]
    fn spectrum_document_serializes_stably() {
        let doc = SpectrumDocument {
            source: "grid".into(),
            params: SpectrumParams {
                n: 101,
                h: 0.1,
                variant: "compact".into(),
                potential: PotentialSpec {
                    kind: "delta".into(),
                    tau: Some(-2.0),
                    ..Default::default()
                },
            },
            eigenvalues: vec![-1.99, 0.01],
            bound_check: Some(BoundCheckDoc {
                tau: -2.0,
                min_eigenvalue: -1.99,
                bound: -20.0,
                pass: true,
            }),
            analytic: None,
        };
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back: SpectrumDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back.eigenvalues, doc.eigenvalues);
        assert_eq!(back.params.potential.tau, Some(-2.0));
    }

    #[test]
    fn net_csv_includes_deltas() {
        use crate::grid::Stage;
        let net = Net::from_entries(vec![
            (Stage::new(101, 0.2).unwrap(), 1.0),
            (Stage::new(201, 0.1).unwrap(), 0.5),
            (Stage::new(401, 0.05).unwrap(), 0.25),
        ])
        .unwrap();
        let mut buf = Vec::new();
        net_csv(&net, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("201,0.1,0.5,-0.5"));
    }
}
