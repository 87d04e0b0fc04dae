//! Bicomplex Coulomb spectrum: quantum numbers, energies, eigenfunctions and
//! the radial-equation residual.
//!
//! Everything decomposes on the idempotent basis: sector `s` is an ordinary
//! hydrogen-like problem with `hbar` replaced by `eta_s = hbar xi_s`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{Bicomplex, Complex1, Hyperbolic, NULL_CONE_TOL};
use crate::error::{Error, Result};
use crate::params::PhysicalParams;
use crate::special::{radial_u, spherical_harmonic};

/// A bicomplex eigenstate label `(n1, n2, l1, l2, m1, m2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n1: u32,
    pub n2: u32,
    pub l1: u32,
    pub l2: u32,
    pub m1: i32,
    pub m2: i32,
}

impl QuantumNumbers {
    pub fn new(n1: u32, n2: u32, l1: u32, l2: u32, m1: i32, m2: i32) -> Result<Self> {
        let q = QuantumNumbers {
            n1,
            n2,
            l1,
            l2,
            m1,
            m2,
        };
        q.validate()?;
        Ok(q)
    }

    /// Builds the standard (component-equal) state `(n, l, m)`.
    pub fn standard(n: u32, l: u32, m: i32) -> Result<Self> {
        Self::new(n, n, l, l, m, m)
    }

    /// Combines two single-sector triples.
    pub fn from_sectors(s1: SectorState, s2: SectorState) -> Self {
        QuantumNumbers {
            n1: s1.n,
            n2: s2.n,
            l1: s1.l,
            l2: s2.l,
            m1: s1.m,
            m2: s2.m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        SectorState::new(self.n1, self.l1, self.m1)
            .and_then(|_| SectorState::new(self.n2, self.l2, self.m2))
            .map(|_| ())
            .map_err(|e| match e {
                Error::Domain(msg) => {
                    Error::Domain(format!("invalid quantum numbers {self}: {msg}"))
                }
                other => other,
            })
    }

    /// The `(n, l, m)` triple of idempotent sector `s`.
    pub fn sector(&self, s: usize) -> SectorState {
        match s {
            1 => SectorState {
                n: self.n1,
                l: self.l1,
                m: self.m1,
            },
            2 => SectorState {
                n: self.n2,
                l: self.l2,
                m: self.m2,
            },
            _ => panic!("idempotent component index must be 1 or 2, got {s}"),
        }
    }

    /// Every valid sextuplet sharing the principal pair `(n1, n2)`.
    pub fn enumerate(n1: u32, n2: u32) -> Vec<QuantumNumbers> {
        let a = SectorState::enumerate(n1);
        let b = SectorState::enumerate(n2);
        a.iter()
            .flat_map(|&s1| {
                b.iter()
                    .map(move |&s2| QuantumNumbers::from_sectors(s1, s2))
            })
            .collect()
    }

    /// Every valid sextuplet with both principal numbers at most `n_max`.
    pub fn enumerate_up_to(n_max: u32) -> Vec<QuantumNumbers> {
        let sectors: Vec<SectorState> = (1..=n_max).flat_map(SectorState::enumerate).collect();
        sectors
            .iter()
            .flat_map(|&s1| {
                sectors
                    .iter()
                    .map(move |&s2| QuantumNumbers::from_sectors(s1, s2))
            })
            .collect()
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{},{})",
            self.n1, self.n2, self.l1, self.l2, self.m1, self.m2
        )
    }
}

impl std::str::FromStr for QuantumNumbers {
    type Err = Error;

    /// Parses `n1,n2,l1,l2,m1,m2`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(Error::Domain(format!(
                "expected six comma-separated quantum numbers, got {s:?}"
            )));
        }
        let bad = |p: &str| Error::Domain(format!("invalid quantum number {p:?} in {s:?}"));
        let u = |p: &str| p.parse::<u32>().map_err(|_| bad(p));
        let i = |p: &str| p.parse::<i32>().map_err(|_| bad(p));
        QuantumNumbers::new(
            u(parts[0])?,
            u(parts[1])?,
            u(parts[2])?,
            u(parts[3])?,
            i(parts[4])?,
            i(parts[5])?,
        )
    }
}

/// One idempotent sector's `(n, l, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SectorState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
}

impl SectorState {
    pub fn new(n: u32, l: u32, m: i32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be at least 1".into()));
        }
        if l >= n {
            return Err(Error::Domain(format!("l must be below n (n={n}, l={l})")));
        }
        if m.unsigned_abs() > l {
            return Err(Error::Domain(format!(
                "|m| must not exceed l (l={l}, m={m})"
            )));
        }
        Ok(SectorState { n, l, m })
    }

    /// The `n^2` states with principal number `n`, ordered by `(l, m)`.
    pub fn enumerate(n: u32) -> Vec<SectorState> {
        (0..n)
            .flat_map(|l| (-(l as i32)..=l as i32).map(move |m| SectorState { n, l, m }))
            .collect()
    }
}

fn sector_energy(n: u32, xi_s: Complex64, params: &PhysicalParams) -> Complex64 {
    let denom = xi_s * xi_s * (2.0 * params.hbar * params.hbar * (n as f64) * (n as f64));
    Complex64::new(
        -params.mu * params.z * params.z * params.e2 * params.e2,
        0.0,
    ) / denom
}

fn check_principal(n1: u32, n2: u32) -> Result<()> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::Domain(format!(
            "principal quantum numbers must be positive, got ({n1}, {n2})"
        )));
    }
    Ok(())
}

/// Energy `E_n` with components `-mu Z^2 e^4 / (2 hbar^2 xi_s^2 n_s^2)`.
pub fn energy(n1: u32, n2: u32, params: &PhysicalParams) -> Result<Hyperbolic> {
    check_principal(n1, n2)?;
    params.validate()?;
    let e1 = sector_energy(n1, Complex64::new(params.xi1, 0.0), params).re;
    let e2 = sector_energy(n2, Complex64::new(params.xi2, 0.0), params).re;
    Ok(Hyperbolic::from_idempotent(e1, e2))
}

/// Energy for an arbitrary commutator scalar `xi` off the null cone. Only
/// `mu`, `Z`, `e2` and `hbar` are taken from `params`.
pub fn energy_with_xi(
    n1: u32,
    n2: u32,
    xi: Bicomplex,
    params: &PhysicalParams,
) -> Result<Bicomplex> {
    check_principal(n1, n2)?;
    if xi.is_null_cone(NULL_CONE_TOL) {
        return Err(Error::NullCone(format!(
            "xi = {xi} has a vanishing idempotent component"
        )));
    }
    Ok(Bicomplex::new(
        sector_energy(n1, xi.c1, params),
        sector_energy(n2, xi.c2, params),
    ))
}

/// Result of comparing `E(xi)` with `E(xi sqrt j)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetryReport {
    /// Real part of `E(xi)`.
    pub re_xi: f64,
    /// Hyperbolic part of `E(xi)`.
    pub hy_xi: f64,
    /// Real part of `E(xi sqrt j)`.
    pub re_rot: Complex64,
    /// Hyperbolic part of `E(xi sqrt j)`.
    pub hy_rot: Complex64,
    /// Largest mismatch over the two swap identities, relative to `|E(xi)|`.
    pub max_rel_error: f64,
}

impl SymmetryReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.max_rel_error <= tol
    }
}

/// Evaluates `Re{E, xi} = Hy{E, xi sqrt j}` and `Re{E, xi sqrt j} = Hy{E, xi}`.
pub fn energy_symmetry(q: &QuantumNumbers, params: &PhysicalParams) -> Result<SymmetryReport> {
    let xi = Bicomplex::from_reals(params.xi1, params.xi2);
    let plain = energy_with_xi(q.n1, q.n2, xi, params)?;
    let rotated = energy_with_xi(q.n1, q.n2, xi * Bicomplex::sqrt_j(), params)?;
    let (re_xi, hy_xi) = plain.hyperbolic_parts();
    let (re_rot, hy_rot) = rotated.hyperbolic_parts();
    // relative to the size of the level, so near-degenerate components do not
    // turn rounding noise into a relative error of order one
    let scale = plain.real_norm();
    let rel = |a: Complex64, b: Complex64| (a - b).norm() / scale;
    let max_rel_error = rel(re_xi, hy_rot).max(rel(re_rot, hy_xi));
    Ok(SymmetryReport {
        re_xi: re_xi.re,
        hy_xi: hy_xi.re,
        re_rot,
        hy_rot,
        max_rel_error,
    })
}

/// True when both swap identities hold to `1e-12` relative.
pub fn energy_symmetry_check(q: &QuantumNumbers, params: &PhysicalParams) -> Result<bool> {
    Ok(energy_symmetry(q, params)?.holds(1e-12))
}

/// Degeneracy `n1^2 n2^2` of the level `(n1, n2)`.
pub fn degeneracy(n1: u32, n2: u32) -> u64 {
    let (a, b) = (n1 as u64, n2 as u64);
    a * a * b * b
}

/// `psi_nlm = sum_s u_{n_s l_s}(r) Y_{l_s m_s}(theta, phi) e_s`.
pub fn wavefunction_eval(
    q: &QuantumNumbers,
    params: &PhysicalParams,
    r: f64,
    theta: f64,
    phi: f64,
) -> Result<Bicomplex> {
    q.validate()?;
    let comp = |s: usize| -> Result<Complex1> {
        let st = q.sector(s);
        let u = radial_u(st.n, st.l, params.xi_component(s), params, r)?;
        Ok(spherical_harmonic(st.l, st.m, theta, phi)? * u)
    };
    Ok(Bicomplex::new(comp(1)?, comp(2)?))
}

/// Key of one term in a general eigenfunction: sector `s` with `(l, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TermKey {
    pub sector: u8,
    pub l: u32,
    pub m: i32,
}

/// A general eigenfunction of the level `(n1, n2)`: a finite sum of
/// `C_{l_s m_s} u_{n_s l_s} Y_{l_s m_s} e_s` with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenfunctionSpec {
    pub n1: u32,
    pub n2: u32,
    pub coefficients: BTreeMap<TermKey, Complex1>,
}

impl EigenfunctionSpec {
    pub fn new(n1: u32, n2: u32) -> Result<Self> {
        check_principal(n1, n2)?;
        Ok(EigenfunctionSpec {
            n1,
            n2,
            coefficients: BTreeMap::new(),
        })
    }

    /// The single-term spec reproducing `psi_nlm` for `q`.
    pub fn from_state(q: &QuantumNumbers) -> Result<Self> {
        q.validate()?;
        let mut spec = Self::new(q.n1, q.n2)?;
        spec.coefficients.insert(
            TermKey {
                sector: 1,
                l: q.l1,
                m: q.m1,
            },
            Complex64::new(1.0, 0.0),
        );
        spec.coefficients.insert(
            TermKey {
                sector: 2,
                l: q.l2,
                m: q.m2,
            },
            Complex64::new(1.0, 0.0),
        );
        Ok(spec)
    }

    /// Adds `c` to the coefficient of the term `(sector, l, m)`.
    pub fn with_term(mut self, sector: u8, l: u32, m: i32, c: Complex1) -> Result<Self> {
        let key = TermKey { sector, l, m };
        self.check_key(&key)?;
        *self
            .coefficients
            .entry(key)
            .or_insert(Complex64::new(0.0, 0.0)) += c;
        Ok(self)
    }

    fn check_key(&self, key: &TermKey) -> Result<()> {
        let n = match key.sector {
            1 => self.n1,
            2 => self.n2,
            s => return Err(Error::Domain(format!("sector must be 1 or 2, got {s}"))),
        };
        SectorState::new(n, key.l, key.m)
            .map(|_| ())
            .map_err(|e| match e {
                Error::Domain(msg) => {
                    Error::Domain(format!("malformed coefficient key {key:?}: {msg}"))
                }
                other => other,
            })
    }

    pub fn validate(&self) -> Result<()> {
        check_principal(self.n1, self.n2)?;
        self.coefficients.keys().try_for_each(|k| self.check_key(k))
    }
}

/// Evaluates a general eigenfunction at `(r, theta, phi)`.
pub fn general_eigenfunction_eval(
    spec: &EigenfunctionSpec,
    params: &PhysicalParams,
    r: f64,
    theta: f64,
    phi: f64,
) -> Result<Bicomplex> {
    spec.validate()?;
    let mut out = Bicomplex::ZERO;
    for (key, &c) in &spec.coefficients {
        let s = key.sector as usize;
        let n = if s == 1 { spec.n1 } else { spec.n2 };
        let u = radial_u(n, key.l, params.xi_component(s), params, r)?;
        let v = c * spherical_harmonic(key.l, key.m, theta, phi)? * u;
        if s == 1 {
            out.c1 += v;
        } else {
            out.c2 += v;
        }
    }
    Ok(out)
}

/// First and second derivatives by the 5-point central stencil.
pub(crate) fn central_derivatives<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> (f64, f64, f64) {
    let (fm2, fm1, f0, fp1, fp2) = (f(x - 2.0 * h), f(x - h), f(x), f(x + h), f(x + 2.0 * h));
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h);
    (f0, d1, d2)
}

/// Finite-difference step as a fraction of the radius.
pub const FD_RELATIVE_STEP: f64 = 1e-3;

/// Radial residual of an arbitrary trial function `u` for the sector problem
/// with orbital number `l`, energy `energy_s` and `eta_s`.
///
/// Derivatives use the 5-point central stencil with step `1e-3 r`.
/// Returns the maximum over `r_samples` of
/// `|u'' + 2u'/r - [l(l+1)/r^2 - (2mu/eta^2)(Z e2/r + E)] u| / max(|u|, |u'|/r)`.
pub fn radial_residual_of<F: Fn(f64) -> f64>(
    u: F,
    l: u32,
    energy_s: f64,
    eta_s: f64,
    params: &PhysicalParams,
    r_samples: &[f64],
) -> Result<f64> {
    let ll = (l * (l + 1)) as f64;
    let k = 2.0 * params.mu / (eta_s * eta_s);
    let mut worst: f64 = 0.0;
    for &r in r_samples {
        let h = FD_RELATIVE_STEP * r;
        if !(r - 2.0 * h > 0.0) {
            return Err(Error::Domain(format!("radial sample {r} must be positive")));
        }
        let (f0, d1, d2) = central_derivatives(&u, r, h);
        let residual =
            d2 + 2.0 * d1 / r - (ll / (r * r) - k * (params.z * params.e2 / r + energy_s)) * f0;
        let scale = f0.abs().max(d1.abs() / r);
        if scale == 0.0 {
            continue;
        }
        worst = worst.max(residual.abs() / scale);
    }
    Ok(worst)
}

/// Residual of the exact radial eigenfunction `u_{n_s l_s}` in its own sector equation.
pub fn radial_ode_residual(
    n_s: u32,
    l_s: u32,
    xi_s: f64,
    params: &PhysicalParams,
    r_samples: &[f64],
) -> Result<f64> {
    // validates n, l, xi
    radial_u(n_s, l_s, xi_s, params, 1.0)?;
    let eta = params.hbar * xi_s;
    let e = sector_energy(n_s, Complex64::new(xi_s, 0.0), params).re;
    radial_residual_of(
        |r| radial_u(n_s, l_s, xi_s, params, r).unwrap_or(f64::NAN),
        l_s,
        e,
        eta,
        params,
        r_samples,
    )
}

/// Sample radii covering the classically relevant region of the level `n`:
/// `count` points spread over `[0.1 a, (2.5 n^2 + 10) a]` with
/// `a = a0_s / Z`.
pub fn default_radial_samples(
    n: u32,
    xi_s: f64,
    params: &PhysicalParams,
    count: usize,
) -> Vec<f64> {
    let a = params.scaled_bohr_radius(xi_s) / params.z;
    let lo = 0.1 * a;
    let hi = (2.5 * (n * n) as f64 + 10.0) * a;
    let count = count.max(2);
    (0..count)
        .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ground_state_energy() {
        let e = energy(1, 1, &PhysicalParams::atomic()).unwrap();
        assert_eq!(e.x, -0.5);
        assert_eq!(e.y, 0.0);
    }

    #[test]
    fn mixed_level_energy() {
        // E1 = -1/2, E2 = -1/8: x = -5/16, y = -3/16
        let e = energy(1, 2, &PhysicalParams::atomic()).unwrap();
        assert_eq!(e.x, -0.3125);
        assert_eq!(e.y, -0.1875);
    }

    #[test]
    fn diagonal_levels_are_real() {
        let p = PhysicalParams::atomic();
        for n in 1..20 {
            assert_eq!(energy(n, n, &p).unwrap().y, 0.0);
        }
    }

    #[test]
    fn energy_rejects_zero_n() {
        assert!(matches!(
            energy(0, 1, &PhysicalParams::atomic()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn symmetry_examples() {
        let q = QuantumNumbers::standard(1, 0, 0).unwrap();
        assert!(energy_symmetry_check(&q, &PhysicalParams::atomic()).unwrap());
        let q = QuantumNumbers::new(2, 3, 0, 0, 0, 0).unwrap();
        let p = PhysicalParams::atomic().with_xi(0.7, 1.3);
        let rep = energy_symmetry(&q, &p).unwrap();
        assert!(rep.holds(1e-12));
        // direct evaluation: E1 = -1/(2 0.49 4), E2 = -1/(2 1.69 9)
        let e1 = -1.0 / (2.0 * 0.49 * 4.0);
        let e2 = -1.0 / (2.0 * 1.69 * 9.0);
        assert!((rep.re_xi - 0.5 * (e1 + e2)).abs() < 1e-15);
        assert!((rep.hy_rot.re - 0.5 * (e1 + e2)).abs() < 1e-15);
        assert!((rep.re_rot.re - 0.5 * (e1 - e2)).abs() < 1e-15);
    }

    #[test]
    fn symmetry_null_cone_xi() {
        let q = QuantumNumbers::standard(1, 0, 0).unwrap();
        let p = PhysicalParams::atomic().with_xi(0.0, 1.0);
        assert!(matches!(
            energy_symmetry_check(&q, &p),
            Err(Error::NullCone(_))
        ));
    }

    #[test]
    fn degeneracy_examples() {
        assert_eq!(degeneracy(1, 1), 1);
        assert_eq!(degeneracy(2, 3), 36);
        let brute: u64 = (0..3u64).map(|l| 2 * l + 1).sum::<u64>().pow(2);
        assert_eq!(degeneracy(3, 3), brute);
        assert_eq!(QuantumNumbers::enumerate(3, 3).len(), 81);
    }

    #[test]
    fn quantum_number_validation() {
        assert!(QuantumNumbers::new(1, 1, 1, 0, 0, 0).is_err());
        assert!(QuantumNumbers::new(2, 2, 1, 1, 2, 0).is_err());
        assert!(QuantumNumbers::new(0, 1, 0, 0, 0, 0).is_err());
        let q: QuantumNumbers = "(3,2,2,1,-2,1)".parse().unwrap();
        assert_eq!(q.sector(1), SectorState { n: 3, l: 2, m: -2 });
        assert!("1,1,0,0,0".parse::<QuantumNumbers>().is_err());
    }

    #[test]
    fn ground_state_wavefunction() {
        let p = PhysicalParams::atomic();
        let q = QuantumNumbers::standard(1, 0, 0).unwrap();
        for &(r, t, f) in &[(0.3, 0.2, 1.0), (2.0, 2.9, 5.5)] {
            let psi = wavefunction_eval(&q, &p, r, t, f).unwrap();
            let want = 2.0 * (-r as f64).exp() / (4.0 * PI).sqrt();
            assert!((psi.c1.re - want).abs() < 1e-15);
            assert_eq!(psi.c1, psi.c2);
        }
    }

    #[test]
    fn mixed_wavefunction_components() {
        let p = PhysicalParams::atomic();
        let q = QuantumNumbers::new(1, 2, 0, 0, 0, 0).unwrap();
        let psi = wavefunction_eval(&q, &p, 1.0, 0.0, 0.0).unwrap();
        let y00 = 1.0 / (4.0 * PI).sqrt();
        assert!((psi.c1.re - 2.0 * (-1.0f64).exp() * y00).abs() < 1e-15);
        let u20 = radial_u(2, 0, 1.0, &p, 1.0).unwrap();
        assert!((psi.c2.re - u20 * y00).abs() < 1e-15);
        assert!(!psi.is_null_cone(NULL_CONE_TOL));
    }

    #[test]
    fn general_eigenfunction_single_term() {
        let p = PhysicalParams::atomic().with_xi(1.2, 0.8);
        let q = QuantumNumbers::new(3, 2, 2, 1, -1, 1).unwrap();
        let spec = EigenfunctionSpec::from_state(&q).unwrap();
        let a = general_eigenfunction_eval(&spec, &p, 1.7, 0.9, 2.2).unwrap();
        let b = wavefunction_eval(&q, &p, 1.7, 0.9, 2.2).unwrap();
        assert!((a - b).real_norm() < 1e-15);
    }

    #[test]
    fn general_eigenfunction_linearity() {
        let p = PhysicalParams::atomic();
        let c = Complex64::new(0.5, -0.25);
        let spec = EigenfunctionSpec::new(2, 2)
            .unwrap()
            .with_term(1, 0, 0, c)
            .unwrap()
            .with_term(1, 1, 1, c)
            .unwrap()
            .with_term(2, 1, 0, c)
            .unwrap();
        let (r, t, f) = (1.4, 1.1, 0.3);
        let total = general_eigenfunction_eval(&spec, &p, r, t, f).unwrap();
        let a = wavefunction_eval(&QuantumNumbers::new(2, 2, 0, 1, 0, 0).unwrap(), &p, r, t, f)
            .unwrap();
        let b = wavefunction_eval(&QuantumNumbers::new(2, 2, 1, 1, 1, 0).unwrap(), &p, r, t, f)
            .unwrap();
        let want = Bicomplex::new((a.c1 + b.c1) * c, a.c2 * c);
        assert!((total - want).real_norm() < 1e-15);
    }

    #[test]
    fn single_sector_eigenfunction_is_null_cone() {
        let p = PhysicalParams::atomic();
        let spec = EigenfunctionSpec::new(2, 3)
            .unwrap()
            .with_term(1, 1, -1, Complex64::new(1.0, 1.0))
            .unwrap();
        let v = general_eigenfunction_eval(&spec, &p, 0.8, 1.0, 1.0).unwrap();
        assert_eq!(v.c2, Complex64::new(0.0, 0.0));
        assert!(v.is_null_cone(0.0));
    }

    #[test]
    fn malformed_coefficient_key() {
        assert!(matches!(
            EigenfunctionSpec::new(2, 2)
                .unwrap()
                .with_term(1, 2, 0, Complex64::new(1.0, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(EigenfunctionSpec::new(2, 2)
            .unwrap()
            .with_term(3, 0, 0, Complex64::new(1.0, 0.0))
            .is_err());
    }

    #[test]
    fn ground_state_residual() {
        let p = PhysicalParams::atomic();
        let samples: Vec<f64> = (0..200).map(|i| 0.1 + 19.9 * i as f64 / 199.0).collect();
        let res = radial_ode_residual(1, 0, 1.0, &p, &samples).unwrap();
        assert!(res < 1e-6, "residual {res:e}");
    }

    #[test]
    fn perturbed_function_fails_residual() {
        let p = PhysicalParams::atomic();
        let samples: Vec<f64> = (0..200).map(|i| 0.1 + 19.9 * i as f64 / 199.0).collect();
        let res = radial_residual_of(
            |r| (1.0 + 0.01 * r) * radial_u(1, 0, 1.0, &p, r).unwrap(),
            0,
            -0.5,
            1.0,
            &p,
            &samples,
        )
        .unwrap();
        assert!(res > 1e-2, "residual {res:e}");
    }

    #[test]
    fn residual_rejects_origin() {
        let p = PhysicalParams::atomic();
        assert!(radial_ode_residual(1, 0, 1.0, &p, &[0.0]).is_err());
        assert!(radial_ode_residual(1, 0, 1.0, &p, &[-1.0]).is_err());
        assert!(radial_ode_residual(2, 2, 1.0, &p, &[1.0]).is_err());
    }
}
