//! Radial eigenfunctions continued to the hyperbolic plane `zeta = x + y j`.
//!
//! Two evaluators are provided. The idempotent one evaluates each sector at
//! `zeta_1 = x + y`, `zeta_2 = x - y` and recombines. The polynomial one
//! expands `l_nl(zeta) = zeta^l L_{n-l-1}^{2l+1}(zeta)` over the hyperbolic
//! numbers with exact coefficients and applies the exponential and `xi^{-3}`
//! factors in the `{1, j}` basis. The `{1, j}` form cancels by up to
//! `e^{|y|}`, so it is evaluated in arbitrary precision.

use std::cell::RefCell;
use std::collections::HashMap;
use std::io::{Read, Write};
use std::sync::{Arc, Mutex, OnceLock};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicomplex::{Hyperbolic, NULL_CONE_TOL};
use crate::error::{Error, Result};
use crate::params::PhysicalParams;
use crate::special::{binomial, laguerre_coeffs_exact, radial_normalization, radial_shape};
use crate::spectrum::QuantumNumbers;

/// Working precision of the polynomial path, in bits.
pub const SURFACE_PRECISION_BITS: usize = 320;

const RM: RoundingMode = RoundingMode::ToEven;

/// The radial part `(n1, n2, l1, l2)` of a set of quantum numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RadialQuantumNumbers {
    pub n1: u32,
    pub n2: u32,
    pub l1: u32,
    pub l2: u32,
}

impl RadialQuantumNumbers {
    pub fn new(n1: u32, n2: u32, l1: u32, l2: u32) -> Result<Self> {
        let q = RadialQuantumNumbers { n1, n2, l1, l2 };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        for (n, l) in [(self.n1, self.l1), (self.n2, self.l2)] {
            if n == 0 || l >= n {
                return Err(Error::Domain(format!(
                    "need n >= 1 and l < n, got n = {n}, l = {l}"
                )));
            }
        }
        Ok(())
    }

    fn sector(&self, s: usize) -> (u32, u32) {
        if s == 1 {
            (self.n1, self.l1)
        } else {
            (self.n2, self.l2)
        }
    }
}

impl From<QuantumNumbers> for RadialQuantumNumbers {
    fn from(q: QuantumNumbers) -> Self {
        RadialQuantumNumbers {
            n1: q.n1,
            n2: q.n2,
            l1: q.l1,
            l2: q.l2,
        }
    }
}

/// Value of `u_nl` at one point of the hyperbolic plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub re: f64,
    pub hy: f64,
    pub norm2: f64,
}

impl SurfacePoint {
    pub fn new(re: f64, hy: f64) -> Self {
        SurfacePoint {
            re,
            hy,
            norm2: re * re + hy * hy,
        }
    }

    pub fn norm(&self) -> f64 {
        self.norm2.sqrt()
    }
}

fn check_xi(xi: Hyperbolic) -> Result<()> {
    if xi.is_null_cone(NULL_CONE_TOL) {
        return Err(Error::NullCone(format!("xi = {xi} lies in the null cone")));
    }
    if !xi.is_positive() {
        return Err(Error::Domain(format!(
            "xi = {xi} must have positive idempotent components"
        )));
    }
    Ok(())
}

fn finite_point(re: f64, hy: f64, x: f64, y: f64) -> Result<SurfacePoint> {
    let p = SurfacePoint::new(re, hy);
    if p.norm2.is_finite() {
        Ok(p)
    } else {
        Err(Error::Domain(format!("u overflows at (x, y) = ({x}, {y})")))
    }
}

/// `u_nl(x + y j)` from the idempotent components `u_s(zeta_s)`.
pub fn surface_eval_idempotent(
    q: &RadialQuantumNumbers,
    xi: Hyperbolic,
    params: &PhysicalParams,
    x: f64,
    y: f64,
) -> Result<SurfacePoint> {
    q.validate()?;
    check_xi(xi)?;
    let (xi1, xi2) = xi.idempotent();
    let u1 = radial_normalization(q.n1, q.l1, xi1, params)? * radial_shape(q.n1, q.l1, x + y);
    let u2 = radial_normalization(q.n2, q.l2, xi2, params)? * radial_shape(q.n2, q.l2, x - y);
    finite_point(0.5 * (u1 + u2), 0.5 * (u1 - u2), x, y)
}

/// A polynomial in `(x, y)` with hyperbolic coefficients, stored as exact
/// `Re` and `Hy` tables indexed by `(power of x, power of y)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateHyperbolicPoly {
    degree: usize,
    re: Vec<Vec<BigRational>>,
    hy: Vec<Vec<BigRational>>,
}

impl BivariateHyperbolicPoly {
    fn zeros(degree: usize) -> Self {
        let table = || {
            (0..=degree)
                .map(|a| vec![BigRational::zero(); degree + 1 - a])
                .collect()
        };
        BivariateHyperbolicPoly {
            degree,
            re: table(),
            hy: table(),
        }
    }

    /// Total degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `x^a y^b` in the real part.
    pub fn re_coeff(&self, a: usize, b: usize) -> BigRational {
        self.re
            .get(a)
            .and_then(|row| row.get(b))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of `x^a y^b` in the hyperbolic part.
    pub fn hy_coeff(&self, a: usize, b: usize) -> BigRational {
        self.hy
            .get(a)
            .and_then(|row| row.get(b))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// `(a, b)` of every nonzero monomial of the real or hyperbolic part.
    pub fn support(&self, hyperbolic: bool) -> Vec<(usize, usize)> {
        let t = if hyperbolic { &self.hy } else { &self.re };
        let mut out = Vec::new();
        for (a, row) in t.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Double-precision evaluation. Loses accuracy quickly away from `y = 0`;
    /// see [`PolynomialSurface`] for the accurate path.
    pub fn eval_f64(&self, x: f64, y: f64) -> (f64, f64) {
        let (mut re, mut hy) = (0.0, 0.0);
        for a in 0..=self.degree {
            for b in 0..=self.degree - a {
                let m = x.powi(a as i32) * y.powi(b as i32);
                re += crate::special::rational_to_f64(&self.re[a][b]) * m;
                hy += crate::special::rational_to_f64(&self.hy[a][b]) * m;
            }
        }
        (re, hy)
    }
}

/// Expands `l_nl(zeta)` with `zeta = x + y j` and sector coefficients
/// combined as `c_p = (c1_p + c2_p)/2 + (c1_p - c2_p)/2 j`.
pub fn build_ell_polynomial(q: &RadialQuantumNumbers) -> Result<BivariateHyperbolicPoly> {
    q.validate()?;
    // coefficients of zeta^p in each sector
    let sector = |s: usize| -> Vec<BigRational> {
        let (n, l) = q.sector(s);
        let mut c = vec![BigRational::zero(); l as usize];
        c.extend(laguerre_coeffs_exact(n - l - 1, 2 * l + 1));
        c
    };
    let (c1, c2) = (sector(1), sector(2));
    let degree = c1.len().max(c2.len()) - 1;
    let half = BigRational::new(1.into(), 2.into());
    let mut poly = BivariateHyperbolicPoly::zeros(degree);
    for p in 0..=degree {
        let a1 = c1.get(p).cloned().unwrap_or_else(BigRational::zero);
        let a2 = c2.get(p).cloned().unwrap_or_else(BigRational::zero);
        let re_p = (&a1 + &a2) * &half;
        let hy_p = (&a1 - &a2) * &half;
        if re_p.is_zero() && hy_p.is_zero() {
            continue;
        }
        // (x + y j)^p = sum_b C(p, b) x^{p-b} y^b j^b, with j^2 = 1
        for b in 0..=p {
            let binom = BigRational::from_integer(binomial(p as u32, b as u32));
            let (to_re, to_hy) = if b % 2 == 0 {
                (&re_p, &hy_p)
            } else {
                (&hy_p, &re_p)
            };
            poly.re[p - b][b] += to_re * &binom;
            poly.hy[p - b][b] += to_hy * &binom;
        }
    }
    Ok(poly)
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
}

fn big(x: f64) -> BigFloat {
    BigFloat::from_f64(x, SURFACE_PRECISION_BITS)
}

fn rational_to_big(r: &BigRational, cc: &mut Consts) -> BigFloat {
    let p = SURFACE_PRECISION_BITS;
    let num = BigFloat::parse(&r.numer().to_string(), Radix::Dec, p, RM, cc);
    let den = BigFloat::parse(&r.denom().to_string(), Radix::Dec, p, RM, cc);
    num.div(&den, p, RM)
}

fn big_to_f64(b: &BigFloat) -> f64 {
    if b.is_zero() {
        return 0.0;
    }
    if b.is_nan() {
        return f64::NAN;
    }
    if b.is_inf() {
        return if b.is_inf_neg() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    let (m, _, s, e, _) = b.as_raw_parts().expect("finite value");
    // value = 0.m * 2^e with the leading word last
    let top = *m.last().expect("nonempty mantissa");
    let mut v = top as f64;
    let mut k = e as i64 - 64;
    while k > 1000 {
        v *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        v *= 2f64.powi(-1000);
        k += 1000;
    }
    v *= 2f64.powi(k as i32);
    if s == Sign::Neg {
        -v
    } else {
        v
    }
}

struct CachedPoly {
    poly: BivariateHyperbolicPoly,
    /// Nonzero monomials `(a, b, re, hy)` in working precision.
    terms: Vec<(usize, usize, BigFloat, BigFloat)>,
}

fn cached_poly(q: &RadialQuantumNumbers) -> Result<Arc<CachedPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<RadialQuantumNumbers, Arc<CachedPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(q) {
        return Ok(Arc::clone(hit));
    }
    let poly = build_ell_polynomial(q)?;
    let terms = CONSTS.with(|cc| {
        let cc = &mut cc.borrow_mut();
        let mut terms = Vec::new();
        for a in 0..=poly.degree {
            for b in 0..=poly.degree - a {
                let (r, h) = (&poly.re[a][b], &poly.hy[a][b]);
                if !(r.is_zero() && h.is_zero()) {
                    terms.push((a, b, rational_to_big(r, cc), rational_to_big(h, cc)));
                }
            }
        }
        terms
    });
    let entry = Arc::new(CachedPoly { poly, terms });
    cache
        .lock()
        .expect("cache lock")
        .insert(*q, Arc::clone(&entry));
    Ok(entry)
}

/// Polynomial-path evaluator for fixed quantum numbers and `xi`.
#[derive(Clone)]
pub struct PolynomialSurface {
    q: RadialQuantumNumbers,
    poly: Arc<CachedPoly>,
    /// `xi^{-3} = x' + y' j`.
    xi_inv3: (f64, f64),
    /// `sqrt(u0)` in the `{1, j}` basis.
    sqrt_u0: (f64, f64),
}

impl std::fmt::Debug for PolynomialSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PolynomialSurface")
            .field("q", &self.q)
            .field("xi_inv3", &self.xi_inv3)
            .field("sqrt_u0", &self.sqrt_u0)
            .finish()
    }
}

/// `(x', y')` with `xi^{-3} = x' + y' j` for `xi = x_xi + y_xi j`.
pub fn xi_inverse_cubed(xi: Hyperbolic) -> Result<(f64, f64)> {
    check_xi(xi)?;
    let (a, b) = xi.idempotent();
    let (a3, b3) = (a.powi(-3), b.powi(-3));
    Ok((0.5 * (a3 + b3), 0.5 * (a3 - b3)))
}

impl PolynomialSurface {
    pub fn new(q: &RadialQuantumNumbers, xi: Hyperbolic, params: &PhysicalParams) -> Result<Self> {
        q.validate()?;
        let xi_inv3 = xi_inverse_cubed(xi)?;
        // sqrt(u0_s) is the normalization at xi_s = 1
        let s1 = radial_normalization(q.n1, q.l1, 1.0, params)?;
        let s2 = radial_normalization(q.n2, q.l2, 1.0, params)?;
        Ok(PolynomialSurface {
            q: *q,
            poly: cached_poly(q)?,
            xi_inv3,
            sqrt_u0: (0.5 * (s1 + s2), 0.5 * (s1 - s2)),
        })
    }

    pub fn polynomial(&self) -> &BivariateHyperbolicPoly {
        &self.poly.poly
    }

    /// `Re u = sqrt(u0) e^{-x/2} [A Re l + B Hy l]`,
    /// `Hy u = sqrt(u0) e^{-x/2} [A Hy l + B Re l]` with
    /// `A = x' cosh(y/2) - y' sinh(y/2)`, `B = y' cosh(y/2) - x' sinh(y/2)`.
    /// A hyperbolic `sqrt(u0)` (unequal sectors) multiplies in the `{1, j}` basis.
    pub fn eval(&self, x: f64, y: f64) -> Result<SurfacePoint> {
        let p = SURFACE_PRECISION_BITS;
        let (bx, by) = (big(x), big(y));
        let deg = self.poly.poly.degree;
        let mut xp = Vec::with_capacity(deg + 1);
        let mut yp = Vec::with_capacity(deg + 1);
        xp.push(big(1.0));
        yp.push(big(1.0));
        for k in 1..=deg {
            xp.push(xp[k - 1].mul(&bx, p, RM));
            yp.push(yp[k - 1].mul(&by, p, RM));
        }
        let (mut lre, mut lhy) = (big(0.0), big(0.0));
        for (a, b, cr, ch) in &self.poly.terms {
            let m = xp[*a].mul(&yp[*b], p, RM);
            lre = lre.add(&cr.mul(&m, p, RM), p, RM);
            lhy = lhy.add(&ch.mul(&m, p, RM), p, RM);
        }
        let (ch, sh, ex) = CONSTS.with(|cc| {
            let cc = &mut cc.borrow_mut();
            let half_y = big(0.5 * y);
            (
                half_y.cosh(p, RM, cc),
                half_y.sinh(p, RM, cc),
                big(-0.5 * x).exp(p, RM, cc),
            )
        });
        let (xq, yq) = (big(self.xi_inv3.0), big(self.xi_inv3.1));
        let a = xq.mul(&ch, p, RM).sub(&yq.mul(&sh, p, RM), p, RM);
        let b = yq.mul(&ch, p, RM).sub(&xq.mul(&sh, p, RM), p, RM);
        let vre = a.mul(&lre, p, RM).add(&b.mul(&lhy, p, RM), p, RM);
        let vhy = a.mul(&lhy, p, RM).add(&b.mul(&lre, p, RM), p, RM);
        let (s0, s1) = (big(self.sqrt_u0.0), big(self.sqrt_u0.1));
        let re = s0
            .mul(&vre, p, RM)
            .add(&s1.mul(&vhy, p, RM), p, RM)
            .mul(&ex, p, RM);
        let hy = s0
            .mul(&vhy, p, RM)
            .add(&s1.mul(&vre, p, RM), p, RM)
            .mul(&ex, p, RM);
        finite_point(big_to_f64(&re), big_to_f64(&hy), x, y)
    }
}

/// One-shot polynomial-path evaluation; the expansion is cached per `(n, l)`.
pub fn surface_eval_polynomial(
    q: &RadialQuantumNumbers,
    xi: Hyperbolic,
    params: &PhysicalParams,
    x: f64,
    y: f64,
) -> Result<SurfacePoint> {
    PolynomialSurface::new(q, xi, params)?.eval(x, y)
}

/// Relative disagreement `max(|d re|, |d hy|) / |u|` between two evaluations.
pub fn relative_disagreement(a: &SurfacePoint, b: &SurfacePoint) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        return 0.0;
    }
    (a.re - b.re).abs().max((a.hy - b.hy).abs()) / scale
}

/// Uniformly spaced closed interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisRange {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn new(start: f64, end: f64, count: usize) -> Result<Self> {
        if count == 0 || !start.is_finite() || !end.is_finite() || (count > 1 && start == end) {
            return Err(Error::Grid(format!(
                "bad axis range [{start}, {end}] with {count} nodes"
            )));
        }
        Ok(AxisRange { start, end, count })
    }

    pub fn node(&self, i: usize) -> f64 {
        if self.count == 1 {
            return self.start;
        }
        if i + 1 == self.count {
            return self.end;
        }
        self.start + (self.end - self.start) * i as f64 / (self.count - 1) as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.node(i)).collect()
    }
}

/// Which evaluator fills a [`SurfaceGrid`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceMethod {
    Idempotent,
    Polynomial,
}

/// Sampled surface; `values[i * y.count + j]` holds the point `(x_i, y_j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceGrid {
    pub x: AxisRange,
    pub y: AxisRange,
    pub values: Vec<SurfacePoint>,
}

impl SurfaceGrid {
    /// `x in [0, 120]` with 400 nodes, `y in [-40, 40]` with 267 nodes.
    pub fn default_ranges() -> (AxisRange, AxisRange) {
        (
            AxisRange {
                start: 0.0,
                end: 120.0,
                count: 400,
            },
            AxisRange {
                start: -40.0,
                end: 40.0,
                count: 267,
            },
        )
    }

    pub fn compute(
        q: &RadialQuantumNumbers,
        xi: Hyperbolic,
        params: &PhysicalParams,
        x: AxisRange,
        y: AxisRange,
        method: SurfaceMethod,
    ) -> Result<Self> {
        q.validate()?;
        check_xi(xi)?;
        let (xs, ys) = (x.nodes(), y.nodes());
        let poly = match method {
            SurfaceMethod::Polynomial => Some(PolynomialSurface::new(q, xi, params)?),
            SurfaceMethod::Idempotent => None,
        };
        let values = (0..xs.len() * ys.len())
            .into_par_iter()
            .map(|k| {
                let (px, py) = (xs[k / ys.len()], ys[k % ys.len()]);
                match &poly {
                    Some(s) => s.eval(px, py),
                    None => surface_eval_idempotent(q, xi, params, px, py),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SurfaceGrid { x, y, values })
    }

    pub fn get(&self, i: usize, j: usize) -> SurfacePoint {
        self.values[i * self.y.count + j]
    }

    /// `(x, y, point)` in row-major order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64, SurfacePoint)> + '_ {
        let (xs, ys) = (self.x.nodes(), self.y.nodes());
        let ny = ys.len();
        self.values
            .iter()
            .enumerate()
            .map(move |(k, v)| (xs[k / ny], ys[k % ny], *v))
    }
}

/// Output format of [`export_surface`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceFormat {
    Csv,
    Json,
}

impl std::str::FromStr for SurfaceFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(SurfaceFormat::Csv),
            "json" => Ok(SurfaceFormat::Json),
            other => Err(Error::Format(format!("unknown surface format '{other}'"))),
        }
    }
}

fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes a surface as CSV (`x,y,re,hy,norm2`, 17 significant digits) or JSON.
pub fn export_surface<W: Write>(grid: &SurfaceGrid, format: SurfaceFormat, out: W) -> Result<()> {
    match format {
        SurfaceFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["x", "y", "re", "hy", "norm2"])?;
            for (x, y, p) in grid.points() {
                w.write_record([sci(x), sci(y), sci(p.re), sci(p.hy), sci(p.norm2)])?;
            }
            w.flush()?;
        }
        SurfaceFormat::Json => {
            let mut out = out;
            serde_json::to_writer(&mut out, grid)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

fn axis_from_values(v: &[f64]) -> Result<AxisRange> {
    match v {
        [] => Err(Error::Format("surface file has no rows".into())),
        [a] => AxisRange::new(*a, *a, 1),
        _ => AxisRange::new(v[0], v[v.len() - 1], v.len()),
    }
}

/// Reads a surface written by [`export_surface`].
pub fn import_surface<R: Read>(input: R, format: SurfaceFormat) -> Result<SurfaceGrid> {
    match format {
        SurfaceFormat::Json => Ok(serde_json::from_reader(input)?),
        SurfaceFormat::Csv => {
            let mut r = csv::Reader::from_reader(input);
            let mut rows = Vec::new();
            for rec in r.deserialize() {
                let (x, y, re, hy, norm2): (f64, f64, f64, f64, f64) = rec?;
                rows.push((x, y, SurfacePoint { re, hy, norm2 }));
            }
            let first_x = rows
                .first()
                .map(|r| r.0)
                .ok_or_else(|| Error::Format("surface file has no rows".into()))?;
            let ys: Vec<f64> = rows
                .iter()
                .take_while(|r| r.0 == first_x)
                .map(|r| r.1)
                .collect();
            if rows.len() % ys.len() != 0 {
                return Err(Error::Format(
                    "surface rows do not form a rectangular grid".into(),
                ));
            }
            let xs: Vec<f64> = rows.iter().step_by(ys.len()).map(|r| r.0).collect();
            let grid = SurfaceGrid {
                x: axis_from_values(&xs)?,
                y: axis_from_values(&ys)?,
                values: rows.iter().map(|r| r.2).collect(),
            };
            for ((x, y, _), (ex, ey, _)) in grid.points().zip(&rows) {
                if x != *ex || y != *ey {
                    return Err(Error::Format(format!(
                        "node ({ex}, {ey}) does not lie on a uniform grid"
                    )));
                }
            }
            Ok(grid)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{radial_u, zeta};

    fn rq(n1: u32, n2: u32, l1: u32, l2: u32) -> RadialQuantumNumbers {
        RadialQuantumNumbers::new(n1, n2, l1, l2).unwrap()
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn ell_examples() {
        let p = build_ell_polynomial(&rq(1, 1, 0, 0)).unwrap();
        assert_eq!(p.degree(), 0);
        assert_eq!(p.re_coeff(0, 0), int(1));
        assert!(p.support(true).is_empty());

        let p = build_ell_polynomial(&rq(2, 2, 0, 0)).unwrap();
        assert_eq!(p.re_coeff(0, 0), int(2));
        assert_eq!(p.re_coeff(1, 0), int(-1));
        assert_eq!(p.hy_coeff(0, 1), int(-1));
        assert_eq!(p.support(false), vec![(0, 0), (1, 0)]);
        assert_eq!(p.support(true), vec![(0, 1)]);
    }

    #[test]
    fn equal_sectors_hy_is_odd_in_y() {
        for (n, l) in [(3, 1), (6, 2), (25, 12)] {
            let p = build_ell_polynomial(&rq(n, n, l, l)).unwrap();
            assert!(p.support(true).iter().all(|&(_, b)| b % 2 == 1));
            assert!(p.support(false).iter().all(|&(_, b)| b % 2 == 0));
        }
    }

    #[test]
    fn polynomial_matches_sector_values_in_f64() {
        // small degree: plain float evaluation is accurate enough
        let q = rq(4, 3, 1, 0);
        let p = build_ell_polynomial(&q).unwrap();
        for (x, y) in [(0.5, 0.25), (2.0, -1.0), (3.0, 1.5)] {
            let l1 = (x + y as f64).powi(1) * crate::special::laguerre(2, 3, x + y);
            let l2 = crate::special::laguerre(2, 1, x - y);
            let (re, hy) = p.eval_f64(x, y);
            assert!((re - 0.5 * (l1 + l2)).abs() < 1e-12);
            assert!((hy - 0.5 * (l1 - l2)).abs() < 1e-12);
        }
    }

    #[test]
    fn xi_inverse_cubed_examples() {
        assert_eq!(xi_inverse_cubed(Hyperbolic::ONE).unwrap(), (1.0, 0.0));
        let (a, b) = xi_inverse_cubed(Hyperbolic::from_idempotent(0.5, 2.0)).unwrap();
        assert!((a - 0.5 * (8.0 + 0.125)).abs() < 1e-15 && (b - 0.5 * (8.0 - 0.125)).abs() < 1e-15);
        assert!(matches!(
            xi_inverse_cubed(Hyperbolic::new(1.0, 1.0)),
            Err(Error::NullCone(_))
        ));
        assert!(matches!(
            xi_inverse_cubed(Hyperbolic::new(-1.0, 0.0)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn cut_at_y_zero_is_standard() {
        let params = PhysicalParams::atomic();
        for (n, l) in [(1, 0), (3, 2), (8, 3)] {
            let q = rq(n, n, l, l);
            for x in [0.0, 0.7, 3.0, 11.0] {
                let p = surface_eval_idempotent(&q, Hyperbolic::ONE, &params, x, 0.0).unwrap();
                assert_eq!(p.hy, 0.0);
                let r = x * n as f64 / 2.0;
                assert!((zeta(n, 1.0, &params, r) - x).abs() < 1e-15);
                let u = radial_u(n, l, 1.0, &params, r).unwrap();
                assert!((p.re - u).abs() <= 1e-13 * u.abs().max(1e-3));
            }
        }
    }

    #[test]
    fn symmetric_numbers_swap_under_reflection() {
        let params = PhysicalParams::atomic();
        let q = rq(5, 5, 2, 2);
        for (x, y) in [(1.0, 0.5), (4.0, -2.5), (10.0, 7.0)] {
            let a = surface_eval_idempotent(&q, Hyperbolic::ONE, &params, x, y).unwrap();
            let b = surface_eval_idempotent(&q, Hyperbolic::ONE, &params, x, -y).unwrap();
            assert_eq!(a.re, b.re);
            assert_eq!(a.hy, -b.hy);
        }
    }

    #[test]
    fn paths_agree_small_and_unequal() {
        let params = PhysicalParams::atomic();
        let xi = Hyperbolic::from_idempotent(0.8, 1.3);
        for q in [rq(3, 3, 1, 1), rq(4, 2, 2, 0), rq(6, 7, 0, 3)] {
            let s = PolynomialSurface::new(&q, xi, &params).unwrap();
            for (x, y) in [(0.0, 0.0), (1.5, -0.5), (6.0, 3.0), (20.0, -12.0)] {
                let a = surface_eval_idempotent(&q, xi, &params, x, y).unwrap();
                let b = s.eval(x, y).unwrap();
                assert!(
                    relative_disagreement(&a, &b) < 1e-12,
                    "{q:?} ({x}, {y}) {a:?} {b:?}"
                );
            }
        }
    }

    #[test]
    fn norm2_is_sum_of_squares() {
        let params = PhysicalParams::atomic();
        let (x, y) = (
            AxisRange::new(0.0, 10.0, 5).unwrap(),
            AxisRange::new(-3.0, 3.0, 4).unwrap(),
        );
        let g = SurfaceGrid::compute(
            &rq(3, 3, 1, 1),
            Hyperbolic::ONE,
            &params,
            x,
            y,
            SurfaceMethod::Idempotent,
        )
        .unwrap();
        assert_eq!(g.values.len(), 20);
        for (_, _, p) in g.points() {
            assert_eq!(p.norm2, p.re * p.re + p.hy * p.hy);
        }
    }

    #[test]
    fn csv_and_json_round_trip() {
        let params = PhysicalParams::atomic();
        let (x, y) = (
            AxisRange::new(0.0, 7.3, 2).unwrap(),
            AxisRange::new(-1.1, 2.9, 2).unwrap(),
        );
        let g = SurfaceGrid::compute(
            &rq(4, 4, 1, 1),
            Hyperbolic::from_idempotent(1.0, 1.7),
            &params,
            x,
            y,
            SurfaceMethod::Idempotent,
        )
        .unwrap();
        let mut buf = Vec::new();
        export_surface(&g, SurfaceFormat::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("x,y,re,hy,norm2\n"));
        assert_eq!(
            import_surface(buf.as_slice(), SurfaceFormat::Csv).unwrap(),
            g
        );

        let mut buf = Vec::new();
        export_surface(&g, SurfaceFormat::Json, &mut buf).unwrap();
        assert_eq!(
            import_surface(buf.as_slice(), SurfaceFormat::Json).unwrap(),
            g
        );
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            RadialQuantumNumbers::new(2, 2, 2, 0),
            Err(Error::Domain(_))
        ));
        let params = PhysicalParams::atomic();
        let q = rq(2, 2, 0, 0);
        assert!(surface_eval_idempotent(&q, Hyperbolic::new(1.0, 1.0), &params, 1.0, 0.0).is_err());
        assert!(matches!(
            surface_eval_idempotent(&rq(25, 25, 12, 12), Hyperbolic::ONE, &params, 0.0, 3000.0),
            Err(Error::Domain(_))
        ));
        assert!(AxisRange::new(0.0, 1.0, 0).is_err());
        assert!("xml".parse::<SurfaceFormat>().is_err());
    }

    #[test]
    fn big_float_conversion() {
        for v in [1.0, -3.5, 1e-200, 7.25e250, 0.1] {
            assert_eq!(big_to_f64(&big(v)), v);
        }
    }
}
