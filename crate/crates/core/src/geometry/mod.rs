//! Polyline curves in the plane and in space, and their metric diagnostics.

mod edit;
mod metrics;
pub mod segment;

pub use edit::{resample, subarc};
pub use metrics::{
    arc_length, bilipschitz_constant, chord_arc_constant, corner_angles, min_corner_angle,
    ChordArcReport, CornerAngle,
};

use nalgebra::SVector;

use crate::error::{Error, Result};

pub type P2 = nalgebra::Vector2<f64>;
pub type P3 = nalgebra::Vector3<f64>;

/// Consecutive vertices closer than this fraction of the bounding-box
/// diagonal are rejected.
pub const DISTINCT_TOL: f64 = 1e-14;
/// Non-adjacent edges closer than this fraction of the bounding-box diagonal
/// count as intersecting.
pub const EMBED_TOL: f64 = 1e-12;

/// An ordered polyline in `ℝ^D`, open or closed.
///
/// Construction only checks the vertex count and that consecutive vertices
/// are distinct. Embeddedness is checked by [`Curve::check_embedded`] and by
/// the operations that require it; Lagrangian projections of Legendrian knots
/// have crossings, so plane curves are allowed to self-intersect.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve<const D: usize> {
    vertices: Vec<SVector<f64, D>>,
    closed: bool,
}

pub type PlaneCurve = Curve<2>;
pub type SpaceCurve = Curve<3>;

/// A point on a polyline: `edge` is the index of the edge, `t ∈ [0, 1]` the
/// affine parameter along it. Vertex `i` is `CurvePoint { edge: i, t: 0.0 }`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub edge: usize,
    pub t: f64,
}

impl CurvePoint {
    pub fn vertex(i: usize) -> Self {
        CurvePoint { edge: i, t: 0.0 }
    }
}

impl<const D: usize> Curve<D> {
    pub fn new(vertices: Vec<SVector<f64, D>>, closed: bool) -> Result<Self> {
        let min = if closed { 3 } else { 2 };
        if vertices.len() < min {
            return Err(Error::Degenerate(format!(
                "{} curve needs at least {min} vertices, got {}",
                if closed { "closed" } else { "open" },
                vertices.len()
            )));
        }
        if let Some(i) = vertices.iter().position(|v| v.iter().any(|c| !c.is_finite())) {
            return Err(Error::Degenerate(format!("vertex {i} is not finite")));
        }
        let curve = Curve { vertices, closed };
        let tol = DISTINCT_TOL * curve.bbox_diagonal();
        for e in 0..curve.edge_count() {
            let (a, b) = curve.edge(e);
            if (b - a).norm() <= tol {
                return Err(Error::Degenerate(format!(
                    "edge {e} has coincident endpoints"
                )));
            }
        }
        Ok(curve)
    }

    pub fn open(vertices: Vec<SVector<f64, D>>) -> Result<Self> {
        Self::new(vertices, false)
    }

    pub fn closed_from(vertices: Vec<SVector<f64, D>>) -> Result<Self> {
        Self::new(vertices, true)
    }

    pub fn vertices(&self) -> &[SVector<f64, D>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<SVector<f64, D>> {
        self.vertices
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> SVector<f64, D> {
        self.vertices[i]
    }

    pub fn edge_count(&self) -> usize {
        if self.closed {
            self.vertices.len()
        } else {
            self.vertices.len() - 1
        }
    }

    /// Endpoints of edge `e`; for closed curves the last edge returns to
    /// vertex 0.
    pub fn edge(&self, e: usize) -> (SVector<f64, D>, SVector<f64, D>) {
        let n = self.vertices.len();
        (self.vertices[e], self.vertices[(e + 1) % n])
    }

    pub fn edge_len(&self, e: usize) -> f64 {
        let (a, b) = self.edge(e);
        (b - a).norm()
    }

    pub fn point(&self, p: CurvePoint) -> SVector<f64, D> {
        let (a, b) = self.edge(p.edge.min(self.edge_count() - 1));
        a + (b - a) * p.t
    }

    pub fn bbox(&self) -> (SVector<f64, D>, SVector<f64, D>) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }

    pub fn bbox_diagonal(&self) -> f64 {
        let (lo, hi) = self.bbox();
        (hi - lo).norm()
    }

    pub fn arc_length(&self) -> f64 {
        (0..self.edge_count()).map(|e| self.edge_len(e)).sum()
    }

    /// Cumulative arc length at each vertex; for closed curves one extra
    /// entry holds the total length.
    pub fn cumulative_lengths(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.edge_count() + 1);
        let mut s = 0.0;
        out.push(0.0);
        for e in 0..self.edge_count() {
            s += self.edge_len(e);
            out.push(s);
        }
        out
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Curve {
            vertices: v,
            closed: self.closed,
        }
    }

    /// Applies `f` to every vertex and revalidates.
    pub fn map<const E: usize>(
        &self,
        f: impl Fn(&SVector<f64, D>) -> SVector<f64, E>,
    ) -> Result<Curve<E>> {
        Curve::new(self.vertices.iter().map(f).collect(), self.closed)
    }

    /// Fails with [`Error::NotEmbedded`] if two non-adjacent edges come within
    /// `EMBED_TOL × diagonal` of each other or two adjacent edges fold back.
    pub fn check_embedded(&self) -> Result<()> {
        match segment::first_self_contact(self, EMBED_TOL * self.bbox_diagonal()) {
            None => Ok(()),
            Some((i, j)) => Err(Error::NotEmbedded(format!("edges {i} and {j} touch"))),
        }
    }

    pub fn is_embedded(&self) -> bool {
        self.check_embedded().is_ok()
    }

    /// Whether edges `i` and `j` share a vertex.
    pub fn edges_adjacent(&self, i: usize, j: usize) -> bool {
        let m = self.edge_count();
        if i == j {
            return true;
        }
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        hi == lo + 1 || (self.closed && lo == 0 && hi == m - 1)
    }
}

impl PlaneCurve {
    /// Attaches z-values to the vertices.
    pub fn with_heights(&self, z: &[f64]) -> Result<SpaceCurve> {
        if z.len() != self.len() {
            return Err(Error::InvalidArgument(format!(
                "{} heights for {} vertices",
                z.len(),
                self.len()
            )));
        }
        SpaceCurve::new(
            self.vertices
                .iter()
                .zip(z)
                .map(|(p, &z)| P3::new(p.x, p.y, z))
                .collect(),
            self.closed,
        )
    }
}

impl SpaceCurve {
    pub fn heights(&self) -> Vec<f64> {
        self.vertices.iter().map(|p| p.z).collect()
    }

    pub fn xy_points(&self) -> Vec<P2> {
        self.vertices.iter().map(|p| P2::new(p.x, p.y)).collect()
    }
}
