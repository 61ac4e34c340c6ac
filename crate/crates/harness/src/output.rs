//! Result files. Every file is written to a temporary sibling and renamed
//! into place, so readers never see a partial document.

use std::io::Write;
use std::path::Path;

use faddeev_core::diagnostics::DiagnosticsReport;
use faddeev_core::RadialGrid;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const SUMMARY_FILE: &str = "summary.json";
pub const TIMESERIES_FILE: &str = "diagnostics.csv";
pub const TIMING_FILE: &str = "timing.json";

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("out");
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    let write = || -> std::io::Result<()> {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        std::fs::rename(&tmp, path)
    };
    write().map_err(|e| HarnessError::io(path, e))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| HarnessError::Serialize(e.to_string()))?;
    text.push('\n');
    write_atomic(path, text.as_bytes())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| HarnessError::Serialize(format!("{}: {e}", path.display())))
}

pub const TIMESERIES_HEADER: [&str; 15] = [
    "t",
    "energy",
    "kinetic",
    "gradient",
    "potential",
    "tail_estimate",
    "charge",
    "charge_raw",
    "u_axis",
    "v_weighted",
    "phi_weighted",
    "a_tilde_weighted",
    "sin_u",
    "continuation",
    "energy_drift",
];

/// One row per checkpoint; `energy_drift` is relative to the first row.
pub fn timeseries_csv(reports: &[DiagnosticsReport]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let ser = |e: csv::Error| HarnessError::Serialize(e.to_string());
    w.write_record(TIMESERIES_HEADER).map_err(ser)?;
    let e0 = reports.first().map_or(0.0, |d| d.energy.total);
    for d in reports {
        let m = &d.monitors;
        let drift = relative_drift(d.energy.total, e0);
        let row = [
            d.t,
            d.energy.total,
            d.energy.kinetic,
            d.energy.gradient,
            d.energy.potential,
            d.energy.tail_estimate,
            d.charge as f64,
            d.charge_raw,
            m.u_axis,
            m.v_weighted,
            m.phi_weighted,
            m.a_tilde_weighted,
            m.sin_u,
            m.continuation,
            drift,
        ];
        w.write_record(row.iter().map(|x| format!("{x:e}"))).map_err(ser)?;
    }
    w.into_inner().map_err(|e| HarnessError::Serialize(e.to_string()))
}

/// `|e − e0| / e0`, or the absolute change when `e0` vanishes.
pub fn relative_drift(e: f64, e0: f64) -> f64 {
    if e0 == 0.0 {
        (e - e0).abs()
    } else {
        (e - e0).abs() / e0.abs()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMetadata {
    pub r_max: f64,
    pub n_cells: usize,
    pub dr: f64,
    /// Node `j` sits at `(j + node_offset) · dr`.
    pub node_offset: f64,
}

impl GridMetadata {
    pub fn of(grid: &RadialGrid) -> Self {
        Self { r_max: grid.r_max(), n_cells: grid.n_cells(), dr: grid.dr(), node_offset: 0.5 }
    }
}

/// Sidecar of a flat binary snapshot: `shape[0]` fields of `shape[1]`
/// values each, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnapshotMeta {
    pub fields: Vec<String>,
    pub shape: [usize; 2],
    pub dtype: String,
    pub byte_order: String,
    pub t: f64,
    pub grid: GridMetadata,
}

/// Writes `<stem>.bin` and `<stem>.json` into `dir`.
pub fn write_snapshot(dir: &Path, stem: &str, t: f64, grid: &RadialGrid, fields: &[(&str, &[f64])]) -> Result<()> {
    let n = grid.n_cells();
    let mut bytes = Vec::with_capacity(8 * n * fields.len());
    for (name, values) in fields {
        if values.len() != n {
            return Err(HarnessError::Serialize(format!("snapshot field {name} has {} values, grid has {n}", values.len())));
        }
        for x in *values {
            bytes.extend_from_slice(&x.to_le_bytes());
        }
    }
    let meta = SnapshotMeta {
        fields: fields.iter().map(|(s, _)| s.to_string()).collect(),
        shape: [fields.len(), n],
        dtype: "float64".into(),
        byte_order: "little".into(),
        t,
        grid: GridMetadata::of(grid),
    };
    write_atomic(&dir.join(format!("{stem}.bin")), &bytes)?;
    write_json(&dir.join(format!("{stem}.json")), &meta)
}

/// Reads a snapshot back as one vector per field.
pub fn read_snapshot(dir: &Path, stem: &str) -> Result<(SnapshotMeta, Vec<Vec<f64>>)> {
    let meta: SnapshotMeta = read_json(&dir.join(format!("{stem}.json")))?;
    let path = dir.join(format!("{stem}.bin"));
    let bytes = std::fs::read(&path).map_err(|e| HarnessError::io(&path, e))?;
    let [k, n] = meta.shape;
    if bytes.len() != 8 * k * n {
        return Err(HarnessError::Serialize(format!("{} holds {} bytes, expected {}", path.display(), bytes.len(), 8 * k * n)));
    }
    let values: Vec<f64> = bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    Ok((meta, values.chunks(n).map(<[f64]>::to_vec).collect()))
}
