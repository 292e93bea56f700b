use super::Curve;
use crate::error::{Error, Result};

/// Open polyline through vertices `i..=j`.
///
/// On an open curve `i > j` walks backwards. On a closed curve the shorter of
/// the two ways around is taken (forward on ties).
pub fn subarc<const D: usize>(curve: &Curve<D>, i: usize, j: usize) -> Result<Curve<D>> {
    let n = curve.len();
    if i == j {
        return Err(Error::InvalidArgument("subarc endpoints coincide".into()));
    }
    if i >= n || j >= n {
        return Err(Error::InvalidArgument(format!(
            "subarc index out of range for {n} vertices"
        )));
    }
    let v = curve.vertices();
    let idx: Vec<usize> = if curve.is_closed() {
        let cum = curve.cumulative_lengths();
        let total = cum[n];
        let fwd = (cum[j] - cum[i]).rem_euclid(total);
        if fwd <= total - fwd {
            let steps = (j + n - i) % n;
            (0..=steps).map(|k| (i + k) % n).collect()
        } else {
            let steps = (i + n - j) % n;
            (0..=steps).map(|k| (i + n - k) % n).collect()
        }
    } else if i < j {
        (i..=j).collect()
    } else {
        (j..=i).rev().collect()
    };
    Curve::open(idx.into_iter().map(|k| v[k]).collect())
}

/// Splits every edge into equal parts no longer than `max_edge`.
pub fn resample<const D: usize>(curve: &Curve<D>, max_edge: f64) -> Result<Curve<D>> {
    if !(max_edge > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "max_edge must be positive, got {max_edge}"
        )));
    }
    let mut out = Vec::new();
    for e in 0..curve.edge_count() {
        let (a, b) = curve.edge(e);
        let parts = ((curve.edge_len(e) / max_edge) - 1e-12).ceil().max(1.0) as usize;
        for k in 0..parts {
            out.push(a + (b - a) * (k as f64 / parts as f64));
        }
    }
    if !curve.is_closed() {
        out.push(curve.vertex(curve.len() - 1));
    }
    Curve::new(out, curve.is_closed())
}
