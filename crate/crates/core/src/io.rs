//! JSON files for curves, isotopy traces and contact forms.
//!
//! A curve is `{"dim": 2|3, "closed": bool, "vertices": [[x, y(, z)], …]}`.
//! A trace is `{"times": […], "frames": [curve, …], "reports": […]}`.
//! Floats are written with shortest round-trip formatting, so reading a file
//! back gives bit-identical vertices.

use std::fs;
use std::path::Path;

use nalgebra::SVector;
use serde::{Deserialize, Serialize};

use crate::contact::{ContactForm, FormSpec};
use crate::error::{Error, Result};
use crate::geometry::{Curve, PlaneCurve, SpaceCurve};
use crate::moves::{FrameReport, IsotopyTrace};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveFile {
    pub dim: usize,
    pub closed: bool,
    pub vertices: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceFile {
    pub times: Vec<f64>,
    pub frames: Vec<CurveFile>,
    #[serde(default)]
    pub reports: Vec<FrameReport>,
}

/// A curve of either dimension as read from disk.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyCurve {
    Plane(PlaneCurve),
    Space(SpaceCurve),
}

impl<const D: usize> From<&Curve<D>> for CurveFile {
    fn from(c: &Curve<D>) -> Self {
        CurveFile {
            dim: D,
            closed: c.is_closed(),
            vertices: c.vertices().iter().map(|v| v.iter().copied().collect()).collect(),
        }
    }
}

impl CurveFile {
    pub fn to_curve<const D: usize>(&self) -> Result<Curve<D>> {
        if self.dim != D {
            return Err(Error::Format(format!("expected a {D}-dimensional curve, got dim {}", self.dim)));
        }
        let pts = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if v.len() == D {
                    Ok(SVector::<f64, D>::from_column_slice(v))
                } else {
                    Err(Error::Format(format!("vertex {i} has {} coordinates, expected {D}", v.len())))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Curve::new(pts, self.closed)
    }

    pub fn to_any(&self) -> Result<AnyCurve> {
        match self.dim {
            2 => Ok(AnyCurve::Plane(self.to_curve()?)),
            3 => Ok(AnyCurve::Space(self.to_curve()?)),
            d => Err(Error::Format(format!("unsupported dimension {d}"))),
        }
    }
}

impl AnyCurve {
    pub fn to_file(&self) -> CurveFile {
        match self {
            AnyCurve::Plane(c) => c.into(),
            AnyCurve::Space(c) => c.into(),
        }
    }
}

impl<const D: usize> From<&IsotopyTrace<D>> for TraceFile {
    fn from(t: &IsotopyTrace<D>) -> Self {
        TraceFile {
            times: t.times.clone(),
            frames: t.frames.iter().map(CurveFile::from).collect(),
            reports: t.reports.clone(),
        }
    }
}

impl TraceFile {
    pub fn to_trace<const D: usize>(&self) -> Result<IsotopyTrace<D>> {
        if self.times.len() != self.frames.len() {
            return Err(Error::Format(format!(
                "{} times for {} frames",
                self.times.len(),
                self.frames.len()
            )));
        }
        Ok(IsotopyTrace {
            times: self.times.clone(),
            frames: self.frames.iter().map(|f| f.to_curve()).collect::<Result<_>>()?,
            reports: self.reports.clone(),
        })
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn read_any_curve(path: &Path) -> Result<AnyCurve> {
    let file: CurveFile = serde_json::from_str(&read_text(path)?)?;
    file.to_any()
}

pub fn read_curve<const D: usize>(path: &Path) -> Result<Curve<D>> {
    let file: CurveFile = serde_json::from_str(&read_text(path)?)?;
    file.to_curve()
}

pub fn write_curve<const D: usize>(path: &Path, curve: &Curve<D>) -> Result<()> {
    write_text(path, &to_json(&CurveFile::from(curve))?)
}

pub fn read_trace<const D: usize>(path: &Path) -> Result<IsotopyTrace<D>> {
    let file: TraceFile = serde_json::from_str(&read_text(path)?)?;
    file.to_trace()
}

pub fn write_trace<const D: usize>(path: &Path, trace: &IsotopyTrace<D>) -> Result<()> {
    write_text(path, &to_json(&TraceFile::from(trace))?)
}

/// A form given by name (`xdy`, `minus_ydx`, `rot`) or by a JSON file holding
/// a form spec.
pub fn load_form(arg: &str) -> Result<ContactForm> {
    match arg {
        "xdy" | "minus_ydx" | "rot" => FormSpec::named(arg).build(),
        path => {
            let spec: FormSpec = serde_json::from_str(&read_text(Path::new(path))?)?;
            spec.build()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{P2, P3};

    #[test]
    fn curve_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let c = SpaceCurve::closed_from(vec![
            P3::new(0.1, 1.0 / 3.0, -2e-17),
            P3::new(std::f64::consts::PI, 0.7, 12345.678901234567),
            P3::new(-0.3, 5.551115123125783e-17, 0.0),
        ])
        .unwrap();
        write_curve(&path, &c).unwrap();
        assert_eq!(read_curve::<3>(&path).unwrap(), c);
        assert!(matches!(read_any_curve(&path).unwrap(), AnyCurve::Space(_)));
        assert!(read_curve::<2>(&path).is_err());
    }

    #[test]
    fn trace_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.json");
        let a = PlaneCurve::open(vec![P2::new(0.0, 0.0), P2::new(1.0, 0.1)]).unwrap();
        let b = PlaneCurve::open(vec![P2::new(0.0, 0.0), P2::new(0.9, 0.2)]).unwrap();
        let t = IsotopyTrace {
            times: vec![0.0, 1.0],
            frames: vec![a, b],
            reports: vec![FrameReport { time: 1.0, chord_arc: Some(1.25), ..Default::default() }],
        };
        write_trace(&path, &t).unwrap();
        assert_eq!(read_trace::<2>(&path).unwrap(), t);
    }

    #[test]
    fn malformed_inputs() {
        let bad = CurveFile { dim: 2, closed: false, vertices: vec![vec![0.0, 0.0], vec![1.0]] };
        assert!(matches!(bad.to_curve::<2>(), Err(Error::Format(_))));
        let bad = CurveFile { dim: 4, closed: false, vertices: vec![] };
        assert!(bad.to_any().is_err());
        assert!(load_form("no/such/file.json").is_err());
        assert!(load_form("rot").is_ok());
    }
}
