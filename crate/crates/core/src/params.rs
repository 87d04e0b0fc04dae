use serde::{Deserialize, Serialize};

use crate::bicomplex::{Hyperbolic, NULL_CONE_TOL};
use crate::error::{Error, Result};

/// Physical constants of the Coulomb problem together with the commutator
/// scalar `xi = xi1 e1 + xi2 e2`.
///
/// Defaults to atomic units (`mu = hbar = e2 = Z = 1`) and `xi = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub mu: f64,
    pub z: f64,
    pub e2: f64,
    pub hbar: f64,
    pub xi1: f64,
    pub xi2: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        Self::atomic()
    }
}

impl PhysicalParams {
    pub const fn atomic() -> Self {
        PhysicalParams {
            mu: 1.0,
            z: 1.0,
            e2: 1.0,
            hbar: 1.0,
            xi1: 1.0,
            xi2: 1.0,
        }
    }

    pub fn with_xi(mut self, xi1: f64, xi2: f64) -> Self {
        self.xi1 = xi1;
        self.xi2 = xi2;
        self
    }

    /// Checks positivity and finiteness. A vanishing `xi` component is reported
    /// as a null-cone error, other violations as domain errors.
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mu", self.mu),
            ("Z", self.z),
            ("e2", self.e2),
            ("hbar", self.hbar),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!(
                    "{name} must be a positive finite number, got {v}"
                )));
            }
        }
        if self.xi().is_null_cone(NULL_CONE_TOL) {
            return Err(Error::NullCone(format!(
                "xi = ({}, {}) has a vanishing idempotent component",
                self.xi1, self.xi2
            )));
        }
        for (s, v) in [(1, self.xi1), (2, self.xi2)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain(format!(
                    "xi component {s} must be positive, got {v}"
                )));
            }
        }
        Ok(())
    }

    pub fn xi(&self) -> Hyperbolic {
        Hyperbolic::from_idempotent(self.xi1, self.xi2)
    }

    /// Idempotent component `s` of `xi`.
    pub fn xi_component(&self, s: usize) -> f64 {
        match s {
            1 => self.xi1,
            2 => self.xi2,
            _ => panic!("idempotent component index must be 1 or 2, got {s}"),
        }
    }

    /// `eta_s = hbar xi_s`.
    pub fn eta_component(&self, s: usize) -> f64 {
        self.hbar * self.xi_component(s)
    }

    /// `a0 = hbar^2 / (mu e2)`.
    pub fn bohr_radius(&self) -> f64 {
        self.hbar * self.hbar / (self.mu * self.e2)
    }

    /// `a0_s = a0 xi_s^2` for an arbitrary positive `xi_s`.
    pub fn scaled_bohr_radius(&self, xi_s: f64) -> f64 {
        self.bohr_radius() * xi_s * xi_s
    }

    /// `mu Z^2 e2^2 / (2 hbar^2)`, the magnitude of the standard ground-state energy.
    pub fn rydberg(&self) -> f64 {
        self.mu * self.z * self.z * self.e2 * self.e2 / (2.0 * self.hbar * self.hbar)
    }
}
