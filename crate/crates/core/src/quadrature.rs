//! Product quadrature over R^3 in spherical coordinates.
//!
//! Radial: Gauss-Legendre panels on `[0, r_cut]` with quadratic grading
//! toward the origin, plus a Gauss-Laguerre tail `r = r_cut + L s`. Polar: Gauss-Legendre in `cos(theta)`.
//! Azimuthal: uniform trapezoid.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::laguerre::GaussLaguerre;
use gauss_quad::legendre::GaussLegendre;
use gauss_quad::FiniteAboveNegOneF64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::PhysicalParams;
use crate::spectrum::QuantumNumbers;

/// Settings from which a [`QuadratureGrid`] is built.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    /// End of the panel region.
    pub r_cut: f64,
    /// Number of radial panels on `[0, r_cut]`.
    pub panels: usize,
    /// Gauss-Legendre nodes per panel.
    pub panel_order: usize,
    /// Gauss-Laguerre nodes for the tail.
    pub tail_order: usize,
    /// Decay length `L` of the tail map.
    pub tail_scale: f64,
    /// Polar Gauss-Legendre nodes.
    pub n_theta: usize,
    /// Azimuthal trapezoid nodes.
    pub n_phi: usize,
}

impl GridConfig {
    /// Default orders for a band of states: 10 panels of 36 nodes plus a
    /// 40-node tail (400 radial nodes), `l_max + 1` polar and `2 l_max + 2`
    /// azimuthal nodes.
    pub fn for_states(states: &[QuantumNumbers], params: &PhysicalParams) -> Self {
        let n_max = states.iter().map(|q| q.n1.max(q.n2)).max().unwrap_or(1);
        let l_max = states.iter().map(|q| q.l1.max(q.l2)).max().unwrap_or(0);
        Self::for_band(n_max, l_max, params)
    }

    pub fn for_band(n_max: u32, l_max: u32, params: &PhysicalParams) -> Self {
        let a_max = params.scaled_bohr_radius(params.xi1.max(params.xi2)) / params.z;
        let n = n_max.max(1) as f64;
        // |u|^2 decays like exp(-r / L) with L = n a0_s / (2Z)
        let tail_scale = 0.5 * n * a_max;
        GridConfig {
            r_cut: (2.0 * n * n + 10.0 * n) * a_max,
            panels: 10,
            panel_order: 36,
            tail_order: 40,
            tail_scale,
            n_theta: l_max as usize + 1,
            n_phi: 2 * l_max as usize + 2,
        }
    }

    /// Same grid with every radial order doubled.
    pub fn refined(&self) -> Self {
        GridConfig {
            panel_order: 2 * self.panel_order,
            tail_order: 2 * self.tail_order,
            ..*self
        }
    }

    pub fn with_angular(mut self, n_theta: usize, n_phi: usize) -> Self {
        self.n_theta = n_theta;
        self.n_phi = n_phi;
        self
    }

    pub fn radial_count(&self) -> usize {
        self.panels * self.panel_order + self.tail_order
    }
}

/// Nodes and weights of the product rule. Radial weights exclude the `r^2`
/// Jacobian, which [`QuadratureGrid::nodes`] folds in.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureGrid {
    pub radial: Vec<(f64, f64)>,
    /// `(theta, weight)` pairs; weights sum to 2.
    pub polar: Vec<(f64, f64)>,
    pub azimuthal: Vec<f64>,
}

fn gauss_legendre(n: usize) -> Result<GaussLegendre> {
    let n = NonZeroUsize::new(n)
        .ok_or_else(|| Error::Grid("quadrature order must be positive".into()))?;
    Ok(GaussLegendre::new(n))
}

impl QuadratureGrid {
    pub fn new(cfg: &GridConfig) -> Result<Self> {
        if !(cfg.r_cut > 0.0 && cfg.tail_scale > 0.0) || cfg.panels == 0 {
            return Err(Error::Grid(format!("invalid radial configuration {cfg:?}")));
        }
        if cfg.n_phi == 0 {
            return Err(Error::Grid("azimuthal node count must be positive".into()));
        }
        let mut radial = Vec::with_capacity(cfg.radial_count());
        let panel = gauss_legendre(cfg.panel_order)?;
        let p = cfg.panels as f64;
        for i in 0..cfg.panels {
            let a = cfg.r_cut * (i as f64 / p).powi(2);
            let b = cfg.r_cut * ((i + 1) as f64 / p).powi(2);
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            radial.extend(
                panel
                    .as_node_weight_pairs()
                    .iter()
                    .map(|&(x, w)| (mid + half * x, half * w)),
            );
        }
        let order = NonZeroUsize::new(cfg.tail_order)
            .ok_or_else(|| Error::Grid("tail order must be positive".into()))?;
        let alpha = FiniteAboveNegOneF64::new(0.0).expect("zero is a valid Laguerre exponent");
        for &(s, w) in GaussLaguerre::new(order, alpha).as_node_weight_pairs() {
            // the rule carries e^{-s}; undo it so plain integrands can be used
            radial.push((cfg.r_cut + cfg.tail_scale * s, cfg.tail_scale * w * s.exp()));
        }
        let polar = gauss_legendre(cfg.n_theta)?
            .as_node_weight_pairs()
            .iter()
            .map(|&(u, w)| (u.clamp(-1.0, 1.0).acos(), w))
            .collect();
        let azimuthal = (0..cfg.n_phi)
            .map(|j| 2.0 * PI * j as f64 / cfg.n_phi as f64)
            .collect();
        let grid = QuadratureGrid {
            radial,
            polar,
            azimuthal,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn for_states(states: &[QuantumNumbers], params: &PhysicalParams) -> Result<Self> {
        Self::new(&GridConfig::for_states(states, params))
    }

    pub fn azimuthal_weight(&self) -> f64 {
        2.0 * PI / self.azimuthal.len() as f64
    }

    /// Checks positivity and finiteness of the weights and that the angular
    /// weights integrate the unit sphere to `4 pi`.
    pub fn validate(&self) -> Result<()> {
        if self.radial.is_empty() || self.polar.is_empty() || self.azimuthal.is_empty() {
            return Err(Error::Grid("grid has an empty axis".into()));
        }
        if let Some(&(r, w)) = self
            .radial
            .iter()
            .find(|&&(r, w)| !(r >= 0.0 && r.is_finite() && w > 0.0 && w.is_finite()))
        {
            return Err(Error::Grid(format!("bad radial node r={r}, w={w}")));
        }
        if let Some(&(t, w)) = self
            .polar
            .iter()
            .find(|&&(t, w)| !(t.is_finite() && w > 0.0 && w.is_finite()))
        {
            return Err(Error::Grid(format!("bad polar node theta={t}, w={w}")));
        }
        let sphere: f64 = self.polar.iter().map(|p| p.1).sum::<f64>()
            * self.azimuthal_weight()
            * self.azimuthal.len() as f64;
        if (sphere - 4.0 * PI).abs() > 1e-12 {
            return Err(Error::Grid(format!(
                "angular weights sum to {sphere}, expected 4 pi"
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.radial.len() * self.polar.len() * self.azimuthal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every node as `(r, theta, phi, weight)`, with `r^2` folded into the
    /// weight. Order: radial outermost, azimuthal innermost.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64, f64, f64)> + '_ {
        let wphi = self.azimuthal_weight();
        self.radial.iter().flat_map(move |&(r, wr)| {
            self.polar.iter().flat_map(move |&(t, wt)| {
                self.azimuthal
                    .iter()
                    .map(move |&p| (r, t, p, wr * r * r * wt * wphi))
            })
        })
    }

    /// Nodes belonging to radial node `i`, in the same order as [`Self::nodes`].
    pub(crate) fn shell(&self, i: usize) -> impl Iterator<Item = (f64, f64, f64, f64)> + '_ {
        let (r, wr) = self.radial[i];
        let wphi = self.azimuthal_weight();
        self.polar.iter().flat_map(move |&(t, wt)| {
            self.azimuthal
                .iter()
                .map(move |&p| (r, t, p, wr * r * r * wt * wphi))
        })
    }
}
