//! Graph-form jets `y = y(x)`, the equivariant moving frame and
//! invariantization of jet coordinates.

use crate::error::{Error, Result};
use crate::geometry::Derivatives3;

use super::invariants::Eps;

/// Ratio between the parametric curvature and the frame-normalized third
/// jet coordinate `ι(y_xxx)`: `κ = GRAPH_CURVATURE_FACTOR · ε · ι(y_xxx)` for a
/// graph traversed with increasing `x`.
pub const GRAPH_CURVATURE_FACTOR: f64 = 0.5;

/// Jet of a graph `y(x)` up to order 3 (order 4 optional).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveJet {
    pub x: f64,
    pub y: f64,
    pub y1: f64,
    pub y2: f64,
    pub y3: f64,
    pub y4: Option<f64>,
}

impl CurveJet {
    pub fn new(x: f64, y: f64, y1: f64, y2: f64, y3: f64) -> Self {
        CurveJet { x, y, y1, y2, y3, y4: None }
    }

    pub fn with_y4(mut self, y4: f64) -> Self {
        self.y4 = Some(y4);
        self
    }

    /// Graph jet of a parametrized curve at a point where `ẋ ≠ 0`.
    pub fn from_derivatives(d: &Derivatives3) -> Option<CurveJet> {
        let (xp, yp) = (d.d1.x, d.d1.y);
        let (xpp, ypp) = (d.d2.x, d.d2.y);
        let (xppp, yppp) = (d.d3.x, d.d3.y);
        if xp == 0.0 {
            return None;
        }
        let y1 = yp / xp;
        let y1p = (ypp * xp - yp * xpp) / (xp * xp);
        let y2 = y1p / xp;
        let y1pp = (yppp * xp - yp * xppp) / (xp * xp) - 2.0 * xpp * (ypp * xp - yp * xpp) / xp.powi(3);
        let y2p = (y1pp * xp - y1p * xpp) / (xp * xp);
        let y3 = y2p / xp;
        Some(CurveJet::new(d.pos.x, d.pos.y, y1, y2, y3))
    }

    /// `y - x·y_x`, the bracket of position and tangent `(1, y_x)`.
    pub fn offset(&self) -> f64 {
        self.y - self.x * self.y1
    }

    fn check(&self) -> Result<()> {
        let scale = self.y.abs() + (self.x * self.y1).abs();
        let finite = [self.x, self.y, self.y1, self.y2, self.y3].iter().all(|v| v.is_finite());
        if !finite || self.y2 == 0.0 || self.offset().abs() <= 1e-14 * scale {
            return Err(Error::IrregularPoint { index: 0 });
        }
        Ok(())
    }

    /// Sign ε of `y_xx / (x·y_x - y)`.
    pub fn eps(&self) -> Eps {
        Eps::from_sign(self.y2 / -self.offset())
    }

    /// Arc-length density `ds/dx` along the graph.
    pub fn arc_density(&self) -> Result<f64> {
        self.check()?;
        Ok((self.y2 / self.offset()).abs().sqrt())
    }
}

/// `ι(y_xxx)`, the curvature invariant in its frame-normalized scaling.
pub fn invariantize_jet3(jet: &CurveJet) -> Result<f64> {
    jet.check()?;
    let c = jet.offset();
    let y2sq = jet.y2 * jet.y2;
    Ok((3.0 * jet.x * y2sq + c * jet.y3) / y2sq * (jet.y2 / c).abs().sqrt())
}

/// ε and the curvature κ computed from a graph jet. The value coincides with
/// [`super::invariants_at`] on `(x, y(x))` parametrized by `x`.
pub fn curvature_graph(jet: &CurveJet) -> Result<(Eps, f64)> {
    let iota3 = invariantize_jet3(jet)?;
    let eps = jet.eps();
    Ok((eps, GRAPH_CURVATURE_FACTOR * eps.as_f64() * iota3))
}

/// Group element `λ·[[a, b], [c, d]]` with `ad - bc = 1` that normalizes a jet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MovingFrame {
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

/// Jet coordinates after the prolonged group action.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformedJet {
    pub u: f64,
    pub v: f64,
    pub v_u: f64,
    pub v_uu: f64,
    pub v_uuu: f64,
    pub v_uuuu: Option<f64>,
}

impl MovingFrame {
    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Prolonged action of this group element on a graph jet.
    pub fn act(&self, jet: &CurveJet) -> TransformedJet {
        let MovingFrame { lambda: l, a, b, c, d } = *self;
        let p = a + b * jet.y1;
        let u = l * (a * jet.x + b * jet.y);
        let v = l * (c * jet.x + d * jet.y);
        let v_u = (c + d * jet.y1) / p;
        let v_uu = jet.y2 / (l * p.powi(3));
        let v_uuu = (p * jet.y3 - 3.0 * b * jet.y2 * jet.y2) / (l * l * p.powi(5));
        let v_uuuu = jet.y4.map(|y4| {
            (p * p * y4 - 10.0 * b * p * jet.y2 * jet.y3 + 15.0 * b * b * jet.y2.powi(3)) / (l.powi(3) * p.powi(7))
        });
        TransformedJet { u, v, v_u, v_uu, v_uuu, v_uuuu }
    }
}

/// Frame sending the jet to `u = 0, v = 1, v_u = 0, v_uu = -ε`.
///
/// Requires `y - x·y_x > 0`; the opposite orientation is rejected.
pub fn moving_frame(jet: &CurveJet) -> Result<MovingFrame> {
    jet.check()?;
    let c = jet.offset();
    if c < 0.0 {
        return Err(Error::WrongOrientation);
    }
    let lambda = (jet.y2.abs() / c.powi(3)).powf(0.25);
    Ok(MovingFrame {
        lambda,
        a: lambda * jet.y,
        b: -lambda * jet.x,
        c: -jet.y1 / (lambda * c),
        d: 1.0 / (lambda * c),
    })
}

/// `ι(y_xxxx)`: the order-4 jet coordinate after applying the moving frame.
pub fn invariantize_jet4(jet: &CurveJet) -> Result<f64> {
    let frame = moving_frame(jet)?;
    frame
        .act(jet)
        .v_uuuu
        .ok_or_else(|| Error::InvalidInput("fourth derivative y_xxxx required".into()))
}

/// Right-hand side of the order-4 recurrence in terms of `κ = ι(y_xxx)` and
/// its derivative along the graph arc-length: `κ_s - (3/2)·ε·κ² - 3`.
pub fn recurrence_rhs(kappa: f64, kappa_s: f64, eps: Eps) -> f64 {
    kappa_s - 1.5 * eps.as_f64() * kappa * kappa - 3.0
}
