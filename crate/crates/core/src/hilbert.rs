//! The bicomplex scalar product `(f, g) = sum_s e_s int conj(f_s) g_s d^3r`
//! realized by quadrature, and the checks built on it.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bicomplex::{Bicomplex, NULL_CONE_TOL};
use crate::error::{Error, Result};
use crate::params::PhysicalParams;
use crate::quadrature::QuadratureGrid;
use crate::spectrum::{
    energy, general_eigenfunction_eval, wavefunction_eval, EigenfunctionSpec, QuantumNumbers,
};

type Evaluator = dyn Fn(f64, f64, f64) -> Bicomplex + Send + Sync;

/// A bicomplex function of `(r, theta, phi)` that can be sampled on a grid.
#[derive(Clone)]
pub struct SampledKet {
    evaluator: Arc<Evaluator>,
    pub metadata: Option<QuantumNumbers>,
}

impl fmt::Debug for SampledKet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledKet")
            .field("metadata", &self.metadata)
            .finish_non_exhaustive()
    }
}

impl SampledKet {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(f64, f64, f64) -> Bicomplex + Send + Sync + 'static,
    {
        SampledKet {
            evaluator: Arc::new(f),
            metadata: None,
        }
    }

    pub fn zero() -> Self {
        Self::new(|_, _, _| Bicomplex::ZERO)
    }

    /// The eigenfunction `psi_nlm` of `q`.
    pub fn from_state(q: QuantumNumbers, params: PhysicalParams) -> Result<Self> {
        q.validate()?;
        params.validate()?;
        let mut ket = Self::new(move |r, t, p| {
            wavefunction_eval(&q, &params, r, t, p)
                .expect("quantum numbers and parameters validated")
        });
        ket.metadata = Some(q);
        Ok(ket)
    }

    /// A general eigenfunction given as a finite coefficient sum.
    pub fn from_spec(spec: EigenfunctionSpec, params: PhysicalParams) -> Result<Self> {
        spec.validate()?;
        params.validate()?;
        Ok(Self::new(move |r, t, p| {
            general_eigenfunction_eval(&spec, &params, r, t, p)
                .expect("eigenfunction spec validated")
        }))
    }

    pub fn eval(&self, r: f64, theta: f64, phi: f64) -> Bicomplex {
        (self.evaluator)(r, theta, phi)
    }

    /// `alpha f`.
    pub fn scaled(&self, alpha: Bicomplex) -> Self {
        let f = Arc::clone(&self.evaluator);
        SampledKet {
            evaluator: Arc::new(move |r, t, p| alpha * f(r, t, p)),
            metadata: None,
        }
    }

    /// `f + g`.
    pub fn plus(&self, other: &SampledKet) -> Self {
        let (f, g) = (Arc::clone(&self.evaluator), Arc::clone(&other.evaluator));
        SampledKet {
            evaluator: Arc::new(move |r, t, p| f(r, t, p) + g(r, t, p)),
            metadata: None,
        }
    }

    /// Values at every node of `grid`, in [`QuadratureGrid::nodes`] order.
    pub fn sample(&self, grid: &QuadratureGrid) -> Vec<Bicomplex> {
        (0..grid.radial.len())
            .into_par_iter()
            .flat_map_iter(|i| {
                grid.shell(i)
                    .map(|(r, t, p, _)| self.eval(r, t, p))
                    .collect::<Vec<_>>()
            })
            .collect()
    }
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Default)]
struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    fn add_real(sum: &mut f64, comp: &mut f64, x: f64) {
        let t = *sum + x;
        if sum.abs() >= x.abs() {
            *comp += (*sum - t) + x;
        } else {
            *comp += (x - t) + *sum;
        }
        *sum = t;
    }

    fn add(&mut self, z: Complex64) {
        Self::add_real(&mut self.sum.re, &mut self.comp.re, z.re);
        Self::add_real(&mut self.sum.im, &mut self.comp.im, z.im);
    }

    fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

const PARALLEL_DOT_THRESHOLD: usize = 50_000;

/// Scalar product of two sampled value vectors. Partial sums are formed per
/// radial shell in parallel and combined in shell order, so the result does
/// not depend on the thread count.
fn dot_samples(grid: &QuadratureGrid, f: &[Bicomplex], g: &[Bicomplex]) -> Bicomplex {
    let shell = grid.polar.len() * grid.azimuthal.len();
    let weights: Vec<f64> = grid.shell(0).map(|(_, _, _, w)| w).collect();
    let shell_sum = |i: usize| {
        let (r, wr) = grid.radial[i];
        let (r0, wr0) = grid.radial[0];
        // shell(i) weights are shell(0) weights rescaled by wr r^2
        let scale = (wr * r * r) / (wr0 * r0 * r0);
        let (mut a, mut b) = (CompensatedSum::default(), CompensatedSum::default());
        for k in 0..shell {
            let idx = i * shell + k;
            let w = weights[k] * scale;
            a.add(f[idx].c1.conj() * g[idx].c1 * w);
            b.add(f[idx].c2.conj() * g[idx].c2 * w);
        }
        (a.value(), b.value())
    };
    // same per-shell partials either way, so the result is bit-identical
    let partial: Vec<(Complex64, Complex64)> = if grid.len() < PARALLEL_DOT_THRESHOLD {
        (0..grid.radial.len()).map(shell_sum).collect()
    } else {
        (0..grid.radial.len())
            .into_par_iter()
            .map(shell_sum)
            .collect()
    };
    let (mut a, mut b) = (CompensatedSum::default(), CompensatedSum::default());
    for (x, y) in partial {
        a.add(x);
        b.add(y);
    }
    Bicomplex::new(a.value(), b.value())
}

/// `(f, g) = sum_s e_s int conj(f_s) g_s d^3r` by quadrature.
pub fn scalar_product(f: &SampledKet, g: &SampledKet, grid: &QuadratureGrid) -> Result<Bicomplex> {
    grid.validate()?;
    Ok(dot_samples(grid, &f.sample(grid), &g.sample(grid)))
}

/// Scalar product of kets already sampled with [`SampledKet::sample`].
pub fn sampled_product(
    grid: &QuadratureGrid,
    f: &[Bicomplex],
    g: &[Bicomplex],
) -> Result<Bicomplex> {
    if f.len() != grid.len() || g.len() != grid.len() {
        return Err(Error::Grid(format!(
            "sample lengths {} and {} do not match the grid size {}",
            f.len(),
            g.len(),
            grid.len()
        )));
    }
    Ok(dot_samples(grid, f, g))
}

/// Induced norm `(1/sqrt 2) sqrt((f,f)_1 + (f,f)_2)`.
pub fn induced_norm(f: &SampledKet, grid: &QuadratureGrid) -> Result<f64> {
    let p = scalar_product(f, f, grid)?;
    Ok((0.5 * (p.c1.re + p.c2.re)).max(0.0).sqrt())
}

/// Rescales `f` componentwise by `(f,f)^{-1/2}`.
///
/// Fails with [`Error::NullCone`] when an idempotent component of `(f,f)` is
/// zero relative to the other (the ket is a zero divisor).
pub fn normalize(f: &SampledKet, grid: &QuadratureGrid) -> Result<SampledKet> {
    let p = scalar_product(f, f, grid)?;
    let (a, b) = (p.c1.re, p.c2.re);
    let scale = a.abs().max(b.abs());
    if scale == 0.0 || a <= NULL_CONE_TOL * scale || b <= NULL_CONE_TOL * scale {
        return Err(Error::NullCone(format!(
            "(f,f) = {p} lies in the null cone; the ket cannot be normalized"
        )));
    }
    let mut out = f.scaled(Bicomplex::from_reals(a.sqrt().recip(), b.sqrt().recip()));
    out.metadata = f.metadata;
    Ok(out)
}

/// Gram matrix of a list of eigenstates with the expected delta pattern.
#[derive(Clone, Debug)]
pub struct OrthonormalityMatrix {
    pub states: Vec<QuantumNumbers>,
    /// Row-major entries `(psi_i, psi_j)`.
    pub entries: Vec<Bicomplex>,
}

/// One CSV row of an orthonormality report.
#[derive(Clone, Debug, Serialize)]
pub struct OrthoRow {
    pub i: usize,
    pub j: usize,
    pub state_i: String,
    pub state_j: String,
    pub re1: f64,
    pub im1: f64,
    pub re2: f64,
    pub im2: f64,
    pub expected1: f64,
    pub expected2: f64,
    pub deviation: f64,
}

impl OrthonormalityMatrix {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Bicomplex {
        self.entries[i * self.dim() + j]
    }

    /// `sum_s e_s delta(n_s) delta(l_s) delta(m_s)`.
    pub fn expected(&self, i: usize, j: usize) -> Bicomplex {
        let (a, b) = (self.states[i], self.states[j]);
        let d1 = if a.sector(1) == b.sector(1) { 1.0 } else { 0.0 };
        let d2 = if a.sector(2) == b.sector(2) { 1.0 } else { 0.0 };
        Bicomplex::from_reals(d1, d2)
    }

    /// Largest per-component modulus of `entry - expected`.
    pub fn deviation(&self, i: usize, j: usize) -> f64 {
        let d = self.get(i, j) - self.expected(i, j);
        d.c1.norm().max(d.c2.norm())
    }

    pub fn max_deviation(&self) -> f64 {
        let n = self.dim();
        (0..n * n)
            .map(|k| self.deviation(k / n, k % n))
            .fold(0.0, f64::max)
    }

    pub fn rows(&self) -> impl Iterator<Item = OrthoRow> + '_ {
        let n = self.dim();
        (0..n * n).map(move |k| {
            let (i, j) = (k / n, k % n);
            let v = self.get(i, j);
            let e = self.expected(i, j);
            OrthoRow {
                i,
                j,
                state_i: self.states[i].to_string(),
                state_j: self.states[j].to_string(),
                re1: v.c1.re,
                im1: v.c1.im,
                re2: v.c2.re,
                im2: v.c2.im,
                expected1: e.c1.re,
                expected2: e.c2.re,
                deviation: self.deviation(i, j),
            }
        })
    }

    /// Writes every entry as CSV with a header row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in self.rows() {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Computes `(psi_i, psi_j)` for every pair of `states`.
pub fn orthonormality_matrix(
    states: &[QuantumNumbers],
    params: &PhysicalParams,
    grid: &QuadratureGrid,
) -> Result<OrthonormalityMatrix> {
    grid.validate()?;
    let kets = states
        .iter()
        .map(|&q| SampledKet::from_state(q, *params))
        .collect::<Result<Vec<_>>>()?;
    let samples: Vec<Vec<Bicomplex>> = kets.iter().map(|k| k.sample(grid)).collect();
    Ok(gram(grid, states.to_vec(), &samples, &samples))
}

fn gram(
    grid: &QuadratureGrid,
    states: Vec<QuantumNumbers>,
    left: &[Vec<Bicomplex>],
    right: &[Vec<Bicomplex>],
) -> OrthonormalityMatrix {
    let n = left.len();
    let entries = (0..n * n)
        .into_par_iter()
        .map(|k| dot_samples(grid, &left[k / n], &right[k % n]))
        .collect();
    OrthonormalityMatrix { states, entries }
}

/// Cartesian axis index for the position and momentum operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

const COMMUTATOR_STEP: f64 = 1e-3;

fn partial<F: Fn([f64; 3]) -> Bicomplex>(f: &F, x: [f64; 3], axis: usize, h: f64) -> Bicomplex {
    let at = |d: f64| {
        let mut y = x;
        y[axis] += d;
        f(y)
    };
    (at(-2.0 * h) - at(-h) * 8.0 + at(h) * 8.0 - at(2.0 * h)) / (12.0 * h)
}

/// `[X_i, P_k] f` at `x`, with `X_i f = x_i f` and `P_k f = -i1 eta d_k f`.
/// Derivatives are 5-point central differences.
pub fn commutator_action<F>(
    i: Axis,
    k: Axis,
    f: &F,
    params: &PhysicalParams,
    x: [f64; 3],
) -> Bicomplex
where
    F: Fn([f64; 3]) -> Bicomplex,
{
    let eta = Bicomplex::from_reals(params.eta_component(1), params.eta_component(2));
    let minus_i_eta = eta * Complex64::new(0.0, -1.0);
    let (ii, kk) = (i.index(), k.index());
    let x_f = |y: [f64; 3]| f(y) * y[ii];
    // X_i P_k f - P_k X_i f = -i1 eta (x_i d_k f - d_k (x_i f))
    let term = partial(f, x, kk, COMMUTATOR_STEP) * x[ii] - partial(&x_f, x, kk, COMMUTATOR_STEP);
    minus_i_eta * term
}

/// Max over `probes` and both components of
/// `|([X_i,P_k] f - i1 eta delta_ik f)_s| / |eta_s f_s|`.
pub fn commutator_residual<F>(
    i: Axis,
    k: Axis,
    f: &F,
    params: &PhysicalParams,
    probes: &[[f64; 3]],
) -> Result<f64>
where
    F: Fn([f64; 3]) -> Bicomplex,
{
    params.validate()?;
    let eta = [params.eta_component(1), params.eta_component(2)];
    let delta = if i == k { 1.0 } else { 0.0 };
    let mut worst: f64 = 0.0;
    for &x in probes {
        let lhs = commutator_action(i, k, f, params, x);
        let fx = f(x);
        for (s, (l, v)) in [(lhs.c1, fx.c1), (lhs.c2, fx.c2)].into_iter().enumerate() {
            let scale = eta[s] * v.norm();
            if scale == 0.0 {
                continue;
            }
            let want = Complex64::new(0.0, eta[s] * delta) * v;
            worst = worst.max((l - want).norm() / scale);
        }
    }
    Ok(worst)
}

/// A linear operator acting on sampled kets.
pub trait KetOperator: Sync {
    fn apply(&self, ket: &SampledKet, params: &PhysicalParams) -> SampledKet;
}

/// The identity operator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Identity;

impl KetOperator for Identity {
    fn apply(&self, ket: &SampledKet, _params: &PhysicalParams) -> SampledKet {
        ket.clone()
    }
}

/// Rotation about the z axis: `(U f)(r, theta, phi) = f(r, theta, phi - angle)`.
#[derive(Clone, Copy, Debug)]
pub struct AzimuthalRotation {
    pub angle: f64,
}

impl KetOperator for AzimuthalRotation {
    fn apply(&self, ket: &SampledKet, _params: &PhysicalParams) -> SampledKet {
        let inner = ket.clone();
        let angle = self.angle;
        SampledKet::new(move |r, t, p| inner.eval(r, t, p - angle))
    }
}

/// `L_3 = -i1 eta d/dphi`, with the derivative taken by central differences.
#[derive(Clone, Copy, Debug, Default)]
pub struct AngularMomentumZ;

impl KetOperator for AngularMomentumZ {
    fn apply(&self, ket: &SampledKet, params: &PhysicalParams) -> SampledKet {
        let inner = ket.clone();
        let eta = Bicomplex::from_reals(params.eta_component(1), params.eta_component(2));
        let factor = eta * Complex64::new(0.0, -1.0);
        SampledKet::new(move |r, t, p| {
            let h = COMMUTATOR_STEP;
            let d = (inner.eval(r, t, p - 2.0 * h) - inner.eval(r, t, p - h) * 8.0
                + inner.eval(r, t, p + h) * 8.0
                - inner.eval(r, t, p + 2.0 * h))
                / (12.0 * h);
            factor * d
        })
    }
}

/// Outcome of [`commuting_block_check`].
#[derive(Clone, Debug)]
pub struct BlockCheck {
    pub passed: bool,
    /// Largest `|(psi_i, U psi_j)_s|` over sectors where the energies differ.
    pub max_violation: f64,
    /// Number of `(pair, sector)` combinations with distinct energies.
    pub constrained: usize,
    /// Pairs whose energy difference lies outside the null cone.
    pub off_null_cone_pairs: usize,
    pub matrix: OrthonormalityMatrix,
}

/// Checks `(E_n - E_n') (psi, U psi') = 0` componentwise for an operator `U`
/// that commutes with the hamiltonian: in every sector where the energies
/// differ the matrix element must vanish to `tol`.
pub fn commuting_block_check(
    op: &dyn KetOperator,
    states: &[QuantumNumbers],
    params: &PhysicalParams,
    grid: &QuadratureGrid,
    tol: f64,
) -> Result<BlockCheck> {
    grid.validate()?;
    let kets = states
        .iter()
        .map(|&q| SampledKet::from_state(q, *params))
        .collect::<Result<Vec<_>>>()?;
    let left: Vec<Vec<Bicomplex>> = kets.iter().map(|k| k.sample(grid)).collect();
    let right: Vec<Vec<Bicomplex>> = kets
        .iter()
        .map(|k| op.apply(k, params).sample(grid))
        .collect();
    let matrix = gram(grid, states.to_vec(), &left, &right);
    let energies = states
        .iter()
        .map(|q| energy(q.n1, q.n2, params).map(|e| e.idempotent()))
        .collect::<Result<Vec<_>>>()?;
    let n = states.len();
    let mut max_violation: f64 = 0.0;
    let mut constrained = 0;
    let mut off_null_cone_pairs = 0;
    for i in 0..n {
        for j in 0..n {
            let (ei, ej) = (energies[i], energies[j]);
            let scale = ei.0.abs().max(ei.1.abs()).max(ej.0.abs()).max(ej.1.abs());
            let differs = [
                (ei.0 - ej.0).abs() > NULL_CONE_TOL * scale,
                (ei.1 - ej.1).abs() > NULL_CONE_TOL * scale,
            ];
            if differs[0] && differs[1] {
                off_null_cone_pairs += 1;
            }
            let v = matrix.get(i, j);
            for (s, d) in differs.into_iter().enumerate() {
                if d {
                    constrained += 1;
                    max_violation = max_violation.max(v.component(s + 1).norm());
                }
            }
        }
    }
    Ok(BlockCheck {
        passed: max_violation < tol,
        max_violation,
        constrained,
        off_null_cone_pairs,
        matrix,
    })
}
