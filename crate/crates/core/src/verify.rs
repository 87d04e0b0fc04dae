//! Named numerical checks run by `bicoulomb verify`.
//!
//! Every check is deterministic for a given seed.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bicomplex::{Bicomplex, Hyperbolic, NULL_CONE_TOL};
use crate::error::{Error, Result};
use crate::hilbert::{
    commutator_residual, normalize, orthonormality_matrix, sampled_product, Axis, SampledKet,
};
use crate::params::PhysicalParams;
use crate::quadrature::{GridConfig, QuadratureGrid};
use crate::spectrum::{
    default_radial_samples, degeneracy, energy, energy_symmetry, radial_ode_residual,
    wavefunction_eval, EigenfunctionSpec, QuantumNumbers,
};
use crate::surfaces::{
    relative_disagreement, surface_eval_idempotent, AxisRange, PolynomialSurface,
    RadialQuantumNumbers, SurfaceGrid,
};

/// Names accepted by `--only`, in run order.
pub const CHECK_NAMES: &[&str] = &[
    "ground-state",
    "standard-limit",
    "ring-axioms",
    "norm-inequalities",
    "scalar-product",
    "orthonormality",
    "ode-residual",
    "degeneracy",
    "symmetry",
    "commutator",
    "path-equivalence",
    "null-cone",
];

/// Settings for [`run_checks`].
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Restrict to these checks; empty runs all.
    pub only: Vec<String>,
    /// Principal quantum number for the ODE residual and surface checks.
    pub n: Option<u32>,
    /// Angular quantum number for the ODE residual and surface checks.
    pub l: Option<u32>,
    /// Random samples for the algebraic checks.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            only: Vec::new(),
            n: None,
            l: None,
            samples: 10_000,
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Worst observed error.
    pub metric: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, metric: f64, tolerance: f64, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: metric.is_finite() && metric < tolerance,
            metric,
            tolerance,
            detail,
        }
    }
}

/// Runs the selected checks in [`CHECK_NAMES`] order.
pub fn run_checks(cfg: &VerifyConfig) -> Result<Vec<CheckResult>> {
    if let Some(bad) = cfg.only.iter().find(|n| !CHECK_NAMES.contains(&n.as_str())) {
        return Err(Error::Domain(format!(
            "unknown check '{bad}'; known checks: {}",
            CHECK_NAMES.join(", ")
        )));
    }
    if let (Some(n), Some(l)) = (cfg.n, cfg.l) {
        if n == 0 || l >= n {
            return Err(Error::Domain(format!(
                "need n >= 1 and l < n, got n = {n}, l = {l}"
            )));
        }
    }
    let selected = |name: &str| cfg.only.is_empty() || cfg.only.iter().any(|o| o == name);
    let mut out = Vec::new();
    for &name in CHECK_NAMES {
        if !selected(name) {
            continue;
        }
        let res = match name {
            "ground-state" => ground_state()?,
            "standard-limit" => standard_limit(cfg.seed, 100)?,
            "ring-axioms" => ring_axioms(cfg.seed, cfg.samples),
            "norm-inequalities" => norm_inequalities(cfg.seed, cfg.samples),
            "scalar-product" => scalar_product_axioms(cfg.seed, cfg.samples)?,
            "orthonormality" => orthonormality(cfg.n.unwrap_or(3).min(4))?,
            "ode-residual" => ode_residual(cfg.n, cfg.l)?,
            "degeneracy" => degeneracy_count(6),
            "symmetry" => symmetry(cfg.seed, 1000)?,
            "commutator" => commutator(cfg.seed)?,
            "path-equivalence" => path_equivalence(cfg.n.unwrap_or(25), cfg.l.unwrap_or(12), 100)?,
            "null-cone" => null_cone()?,
            _ => unreachable!("name checked against CHECK_NAMES"),
        };
        out.push(res);
    }
    Ok(out)
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_bicomplex(r: &mut impl Rng, scale: f64) -> Bicomplex {
    let mut c = || Complex64::new(r.gen_range(-scale..scale), r.gen_range(-scale..scale));
    Bicomplex::new(c(), c())
}

/// `|E(1,1)| + 0.5` in atomic units with `xi = 1`.
pub fn ground_state() -> Result<CheckResult> {
    let e = energy(1, 1, &PhysicalParams::atomic())?;
    let err = (e.re() + 0.5).abs().max(e.hy().abs());
    Ok(CheckResult::new(
        "ground-state",
        err,
        1e-14,
        format!("E(1,1) = {e}"),
    ))
}

fn textbook_radial(n: u32, l: u32, r: f64) -> f64 {
    match (n, l) {
        (1, 0) => 2.0 * (-r).exp(),
        (2, 0) => (1.0 - r / 2.0) * (-r / 2.0).exp() / 2f64.sqrt(),
        (2, 1) => r * (-r / 2.0).exp() / (2.0 * 6f64.sqrt()),
        (3, 0) => {
            2.0 / (3.0 * 3f64.sqrt())
                * (1.0 - 2.0 * r / 3.0 + 2.0 * r * r / 27.0)
                * (-r / 3.0).exp()
        }
        (3, 1) => 8.0 / (27.0 * 6f64.sqrt()) * r * (1.0 - r / 6.0) * (-r / 3.0).exp(),
        (3, 2) => 4.0 / (81.0 * 30f64.sqrt()) * r * r * (-r / 3.0).exp(),
        _ => unreachable!("table covers n <= 3"),
    }
}

fn textbook_harmonic(l: u32, m: i32, t: f64, p: f64) -> Complex64 {
    if m < 0 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        return textbook_harmonic(l, -m, t, p).conj() * sign;
    }
    let (c, s) = (t.cos(), t.sin());
    let phase = Complex64::from_polar(1.0, m as f64 * p);
    let v = match (l, m) {
        (0, 0) => 0.5 / PI.sqrt(),
        (1, 0) => (3.0 / (4.0 * PI)).sqrt() * c,
        (1, 1) => -(3.0 / (8.0 * PI)).sqrt() * s,
        (2, 0) => (5.0 / (16.0 * PI)).sqrt() * (3.0 * c * c - 1.0),
        (2, 1) => -(15.0 / (8.0 * PI)).sqrt() * s * c,
        (2, 2) => (15.0 / (32.0 * PI)).sqrt() * s * s,
        _ => unreachable!("table covers l <= 2"),
    };
    phase * v
}

/// With `xi = 1` and equal sector numbers, both components equal the
/// textbook hydrogen orbital.
pub fn standard_limit(seed: u64, points: usize) -> Result<CheckResult> {
    let params = PhysicalParams::atomic();
    let states: Vec<_> = (1..=3u32)
        .flat_map(|n| {
            (0..n).flat_map(move |l| {
                (-(l as i32)..=l as i32)
                    .map(move |m| QuantumNumbers::standard(n, l, m).expect("valid"))
            })
        })
        .collect();
    let mut r = rng(seed, 1);
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let q = states[r.gen_range(0..states.len())];
        let (rad, t, p) = (
            r.gen_range(0.01..20.0),
            r.gen_range(0.0..PI),
            r.gen_range(0.0..2.0 * PI),
        );
        let psi = wavefunction_eval(&q, &params, rad, t, p)?;
        let want = textbook_radial(q.n1, q.l1, rad) * textbook_harmonic(q.l1, q.m1, t, p);
        let scale = want.norm().max(psi.c1.norm());
        if scale == 0.0 {
            continue;
        }
        worst = worst
            .max((psi.c1 - psi.c2).norm() / scale)
            .max((psi.c1 - want).norm() / scale);
    }
    Ok(CheckResult::new(
        "standard-limit",
        worst,
        1e-10,
        format!("{points} random points, states with n <= 3"),
    ))
}

fn rel_err(a: Bicomplex, b: Bicomplex, scale: f64) -> f64 {
    (a - b).real_norm() / scale.max(f64::MIN_POSITIVE)
}

/// Commutative ring axioms and inverses off the null cone.
pub fn ring_axioms(seed: u64, samples: usize) -> CheckResult {
    let worst = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut r = rng(seed, 1000 + k as u64);
            let (a, b, c) = (
                random_bicomplex(&mut r, 10.0),
                random_bicomplex(&mut r, 10.0),
                random_bicomplex(&mut r, 10.0),
            );
            let (na, nb, nc) = (a.real_norm(), b.real_norm(), c.real_norm());
            let mut e: f64 = 0.0;
            e = e.max(rel_err(a + b, b + a, na + nb));
            e = e.max(rel_err((a + b) + c, a + (b + c), na + nb + nc));
            e = e.max(rel_err(a * b, b * a, 2.0 * na * nb));
            e = e.max(rel_err((a * b) * c, a * (b * c), 4.0 * na * nb * nc));
            e = e.max(rel_err(a * (b + c), a * b + a * c, 2.0 * na * (nb + nc)));
            e = e.max(rel_err(a * Bicomplex::ONE, a, na));
            e = e.max(rel_err(a + (-a), Bicomplex::ZERO, na));
            if let Ok(inv) = a.inverse(NULL_CONE_TOL) {
                e = e.max(rel_err(a * inv, Bicomplex::ONE, 2.0 * na * inv.real_norm()));
            }
            e
        })
        .reduce(|| 0.0, f64::max);
    CheckResult::new(
        "ring-axioms",
        worst,
        1e-13,
        format!("{samples} random triples: commutativity, associativity, distributivity, identities, inverses"),
    )
}

/// `|a| >= 0`, `|z a| = |z||a|`, `|a + b| <= |a| + |b|`, `|ab| <= sqrt 2 |a||b|`.
pub fn norm_inequalities(seed: u64, samples: usize) -> CheckResult {
    let worst = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut r = rng(seed, 2_000_000 + k as u64);
            let (a, b) = (
                random_bicomplex(&mut r, 10.0),
                random_bicomplex(&mut r, 10.0),
            );
            let z = Complex64::new(r.gen_range(-5.0..5.0), r.gen_range(-5.0..5.0));
            let (na, nb) = (a.real_norm(), b.real_norm());
            let mut e: f64 = 0.0;
            if na < 0.0 {
                e = f64::INFINITY;
            }
            e = e.max(
                ((a * z).real_norm() - z.norm() * na).abs()
                    / (z.norm() * na).max(f64::MIN_POSITIVE),
            );
            e = e.max(((a + b).real_norm() - (na + nb)).max(0.0) / (na + nb));
            e = e.max(((a * b).real_norm() - 2f64.sqrt() * na * nb).max(0.0) / (na * nb));
            e
        })
        .reduce(|| 0.0, f64::max);
    CheckResult::new(
        "norm-inequalities",
        worst,
        1e-13,
        format!("{samples} random pairs; metric is the worst relative violation"),
    )
}

/// Scalar-product axioms on random combinations of eigenstates with `n <= 2`:
/// additivity and homogeneity in the second argument, `(f,g) = (g,f)^dagger`,
/// and `(f,f)` hyperbolic with nonnegative components.
pub fn scalar_product_axioms(seed: u64, samples: usize) -> Result<CheckResult> {
    let params = PhysicalParams::atomic().with_xi(0.75, 1.5);
    let states = QuantumNumbers::enumerate_up_to(2);
    // the axioms hold for any positive rule, so a coarse radial grid suffices
    let grid = QuadratureGrid::new(&GridConfig {
        panels: 4,
        panel_order: 12,
        tail_order: 16,
        ..GridConfig::for_band(2, 1, &params)
    })?;
    let basis = states
        .iter()
        .map(|&q| Ok(SampledKet::from_state(q, params)?.sample(&grid)))
        .collect::<Result<Vec<_>>>()?;
    let combine = |r: &mut ChaCha8Rng| -> Vec<Bicomplex> {
        let mut v = vec![Bicomplex::ZERO; grid.len()];
        for _ in 0..3 {
            let (k, c) = (r.gen_range(0..basis.len()), random_bicomplex(r, 1.0));
            for (x, y) in v.iter_mut().zip(&basis[k]) {
                *x += c * *y;
            }
        }
        v
    };
    let worst = (0..samples)
        .into_par_iter()
        .map(|k| -> Result<f64> {
            let mut r = rng(seed, 3_000_000 + k as u64);
            let (f, g, h) = (combine(&mut r), combine(&mut r), combine(&mut r));
            let alpha = random_bicomplex(&mut r, 2.0);
            let gh: Vec<Bicomplex> = g.iter().zip(&h).map(|(a, b)| *a + *b).collect();
            let ag: Vec<Bicomplex> = g.iter().map(|a| alpha * *a).collect();
            let fg = sampled_product(&grid, &f, &g)?;
            let fh = sampled_product(&grid, &f, &h)?;
            let gf = sampled_product(&grid, &g, &f)?;
            let ff = sampled_product(&grid, &f, &f)?;
            let gg = sampled_product(&grid, &g, &g)?;
            let hh = sampled_product(&grid, &h, &h)?;
            let scale = (ff.real_norm() * (gg.real_norm() + hh.real_norm()))
                .sqrt()
                .max(1e-300);
            let mut e: f64 = 0.0;
            e = e.max((sampled_product(&grid, &f, &gh)? - fg - fh).real_norm() / scale);
            e = e.max(
                (sampled_product(&grid, &f, &ag)? - alpha * fg).real_norm()
                    / (alpha.real_norm() * scale),
            );
            e = e.max((fg - gf.dagger()).real_norm() / scale);
            let self_scale = ff.real_norm();
            e = e.max(ff.c1.im.abs().max(ff.c2.im.abs()) / self_scale);
            e = e.max((-ff.c1.re).max(-ff.c2.re).max(0.0) / self_scale);
            Ok(e)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(CheckResult::new(
        "scalar-product",
        worst,
        1e-10,
        format!("{samples} random kets over the n <= 2 eigenstates"),
    ))
}

/// Gram matrix of every state with both principal numbers `<= n_max`.
pub fn orthonormality(n_max: u32) -> Result<CheckResult> {
    let params = PhysicalParams::atomic();
    let states = QuantumNumbers::enumerate_up_to(n_max);
    let grid = QuadratureGrid::for_states(&states, &params)?;
    let m = orthonormality_matrix(&states, &params, &grid)?;
    Ok(CheckResult::new(
        "orthonormality",
        m.max_deviation(),
        1e-8,
        format!(
            "{} states with n <= {n_max}, {} quadrature nodes",
            states.len(),
            grid.len()
        ),
    ))
}

fn residual_tolerance(n: u32) -> f64 {
    if n <= 10 {
        1e-6
    } else {
        1e-4
    }
}

/// Radial equation residual, as a ratio to its tolerance. With `n` and `l`
/// given only that pair is checked; otherwise every `n <= 10` and `(25, 12)`
/// at `xi = 1`, `0.5` and `2`.
pub fn ode_residual(n: Option<u32>, l: Option<u32>) -> Result<CheckResult> {
    let params = PhysicalParams::atomic();
    let cases: Vec<(u32, u32)> = match (n, l) {
        (Some(n), Some(l)) => vec![(n, l)],
        (Some(n), None) => (0..n).map(|l| (n, l)).collect(),
        (None, Some(l)) => ((l + 1)..=10).map(|n| (n, l)).collect(),
        (None, None) => (1..=10)
            .flat_map(|n| (0..n).map(move |l| (n, l)))
            .chain([(25, 12)])
            .collect(),
    };
    let xis = [1.0, 0.5, 2.0];
    let work: Vec<(u32, u32, f64)> = cases
        .iter()
        .flat_map(|&(n, l)| xis.iter().map(move |&x| (n, l, x)))
        .collect();
    let results = work
        .par_iter()
        .map(|&(n, l, xi)| {
            let samples = default_radial_samples(n, xi, &params, 400);
            radial_ode_residual(n, l, xi, &params, &samples)
                .map(|r| (r / residual_tolerance(n), r, n, l, xi))
        })
        .collect::<Result<Vec<_>>>()?;
    let worst = results
        .iter()
        .cloned()
        .fold((0.0, 0.0, 0, 0, 0.0), |a, b| if b.0 > a.0 { b } else { a });
    Ok(CheckResult::new(
        "ode-residual",
        worst.0,
        1.0,
        format!(
            "{} cases; worst residual {:.3e} at n = {}, l = {}, xi = {} (metric is residual / tolerance)",
            results.len(),
            worst.1,
            worst.2,
            worst.3,
            worst.4
        ),
    ))
}

/// Counts sextuplets level by level and compares with `n1^2 n2^2`.
pub fn degeneracy_count(n_max: u32) -> CheckResult {
    let mut mismatches = 0;
    for n1 in 1..=n_max {
        for n2 in 1..=n_max {
            let mut count = 0u64;
            for l1 in 0..n1 {
                for l2 in 0..n2 {
                    count += (2 * l1 as u64 + 1) * (2 * l2 as u64 + 1);
                }
            }
            if count != degeneracy(n1, n2)
                || QuantumNumbers::enumerate(n1, n2).len() as u64 != count
            {
                mismatches += 1;
            }
        }
    }
    CheckResult::new(
        "degeneracy",
        mismatches as f64,
        0.5,
        format!("levels with n <= {n_max}; metric counts mismatching levels"),
    )
}

/// `Re{E, xi} = Hy{E, xi sqrt j}` and `Re{E, xi sqrt j} = Hy{E, xi}`.
pub fn symmetry(seed: u64, samples: usize) -> Result<CheckResult> {
    let mut r = rng(seed, 4);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let (n1, n2) = (r.gen_range(1..=30), r.gen_range(1..=30));
        let (l1, l2) = (r.gen_range(0..n1), r.gen_range(0..n2));
        let q = QuantumNumbers::new(n1, n2, l1, l2, 0, 0)?;
        let params =
            PhysicalParams::atomic().with_xi(r.gen_range(0.05..5.0), r.gen_range(0.05..5.0));
        worst = worst.max(energy_symmetry(&q, &params)?.max_rel_error);
    }
    Ok(CheckResult::new(
        "symmetry",
        worst,
        1e-12,
        format!("{samples} random levels and xi in D+"),
    ))
}

/// Gaussian test kets with distinct widths and centers per component.
pub fn gaussian_test_ket(
    center: [f64; 3],
    widths: (f64, f64),
    phase: f64,
) -> impl Fn([f64; 3]) -> Bicomplex {
    move |x: [f64; 3]| {
        let d2 = (0..3).map(|k| (x[k] - center[k]).powi(2)).sum::<f64>();
        let ph = Complex64::from_polar(1.0, phase * x[0]);
        Bicomplex::new(
            ph * (-d2 / (2.0 * widths.0)).exp(),
            ph.conj() * (-d2 / (2.0 * widths.1)).exp(),
        )
    }
}

/// `[X_i, P_k] f = i1 eta delta_ik f` for all nine pairs.
pub fn commutator(seed: u64) -> Result<CheckResult> {
    let mut r = rng(seed, 5);
    let probes: Vec<[f64; 3]> = (0..16)
        .map(|_| {
            [
                r.gen_range(-1.5..1.5),
                r.gen_range(-1.5..1.5),
                r.gen_range(-1.5..1.5),
            ]
        })
        .collect();
    let kets = [
        gaussian_test_ket([0.0; 3], (1.0, 1.0), 0.0),
        gaussian_test_ket([0.3, -0.2, 0.1], (0.7, 1.6), 0.8),
    ];
    let mut worst: f64 = 0.0;
    for (x1, x2) in [(1.0, 1.0), (0.5, 2.0)] {
        let params = PhysicalParams::atomic().with_xi(x1, x2);
        for f in &kets {
            for i in Axis::ALL {
                for k in Axis::ALL {
                    worst = worst.max(commutator_residual(i, k, f, &params, &probes)?);
                }
            }
        }
    }
    Ok(CheckResult::new(
        "commutator",
        worst,
        1e-6,
        "9 (i,k) pairs, xi in {(1,1), (0.5,2)}, 2 Gaussian kets, 16 probes".to_string(),
    ))
}

/// Idempotent against polynomial evaluation of the surface for `(n, n, l, l)`
/// on an `size x size` grid over `x in [0, 120]`, `y in [-40, 40]`, plus the
/// `y = 0` cut.
pub fn path_equivalence(n: u32, l: u32, size: usize) -> Result<CheckResult> {
    let params = PhysicalParams::atomic();
    let q = RadialQuantumNumbers::new(n, n, l, l)?;
    let xi = Hyperbolic::ONE;
    let x = AxisRange::new(0.0, 120.0, size)?;
    let y = AxisRange::new(-40.0, 40.0, size)?;
    let a = SurfaceGrid::compute(
        &q,
        xi,
        &params,
        x,
        y,
        crate::surfaces::SurfaceMethod::Idempotent,
    )?;
    let b = SurfaceGrid::compute(
        &q,
        xi,
        &params,
        x,
        y,
        crate::surfaces::SurfaceMethod::Polynomial,
    )?;
    let mut worst: f64 = 0.0;
    for ((_, _, u), (_, _, v)) in a.points().zip(b.points()) {
        if u.norm() > 1e-12 {
            worst = worst.max(relative_disagreement(&u, &v));
        }
    }
    let poly = PolynomialSurface::new(&q, xi, &params)?;
    let mut cut: f64 = 0.0;
    for xv in x.nodes() {
        let u = surface_eval_idempotent(&q, xi, &params, xv, 0.0)?;
        cut = cut.max(u.hy.abs()).max(poly.eval(xv, 0.0)?.hy.abs());
    }
    // both conditions folded into one ratio
    let metric = (worst / 1e-9).max(cut / 1e-12);
    Ok(CheckResult::new(
        "path-equivalence",
        metric,
        1.0,
        format!("n = {n}, l = {l}, {size}x{size} grid: worst relative disagreement {worst:.3e}, max |Hy| on y = 0 {cut:.3e}"),
    ))
}

/// A single-sector eigenfunction cannot be normalized.
pub fn null_cone() -> Result<CheckResult> {
    let params = PhysicalParams::atomic();
    let spec = EigenfunctionSpec::new(2, 2)?
        .with_term(1, 1, 0, Complex64::new(1.0, 0.0))?
        .with_term(1, 0, 0, Complex64::new(0.0, 0.5))?;
    let ket = SampledKet::from_spec(spec, params)?;
    let grid = QuadratureGrid::new(&GridConfig::for_band(2, 1, &params))?;
    let raised = matches!(normalize(&ket, &grid), Err(Error::NullCone(_)));
    Ok(CheckResult::new(
        "null-cone",
        if raised { 0.0 } else { 1.0 },
        0.5,
        format!(
            "normalize on an e1-only ket {}",
            if raised {
                "rejected it"
            } else {
                "did not fail"
            }
        ),
    ))
}
