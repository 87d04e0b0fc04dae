//! Real special functions behind the Coulomb eigenfunctions.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bicomplex::Complex1;
use crate::error::{Error, Result};
use crate::params::PhysicalParams;

/// Real polynomial stored with ascending-degree coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialCoeffs {
    pub coeffs: Vec<f64>,
}

impl PolynomialCoeffs {
    /// Drops trailing zero coefficients so the leading coefficient is nonzero.
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        PolynomialCoeffs { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// Generalized Laguerre polynomial `L_q^k(x)` by the three-term recurrence
/// `(i+1) L_{i+1} = (2i + 1 + k - x) L_i - (i + k) L_{i-1}`.
pub fn laguerre(q: u32, k: u32, x: f64) -> f64 {
    let k = k as f64;
    let mut prev = 1.0;
    if q == 0 {
        return prev;
    }
    let mut cur = 1.0 + k - x;
    for i in 1..q {
        let i = i as f64;
        let next = ((2.0 * i + 1.0 + k - x) * cur - (i + k) * prev) / (i + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Exact coefficients of `L_q^k`, ascending in degree:
/// `c_m = (-1)^m C(q + k, q - m) / m!`.
pub fn laguerre_coeffs_exact(q: u32, k: u32) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(q as usize + 1);
    // C(q+k, q-m) / m! built incrementally from m = 0.
    let mut binom = binomial(q + k, q);
    let mut fact = BigInt::one();
    for m in 0..=q {
        if m > 0 {
            // C(n, r-1) = C(n, r) * r / (n - r + 1) with n = q + k, r = q - m + 1
            let r = q - m + 1;
            binom = binom * BigInt::from(r) / BigInt::from(q + k - r + 1);
            fact *= BigInt::from(m);
        }
        let mut c = BigRational::new(binom.clone(), fact.clone());
        if m % 2 == 1 {
            c = -c;
        }
        out.push(c);
    }
    out
}

/// Floating-point coefficients of `L_q^k`.
pub fn laguerre_coeffs(q: u32, k: u32) -> PolynomialCoeffs {
    PolynomialCoeffs::new(
        laguerre_coeffs_exact(q, k)
            .iter()
            .map(rational_to_f64)
            .collect(),
    )
}

pub(crate) fn binomial(n: u32, r: u32) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// `ln(n!)` by direct summation; exact enough for the normalization brackets.
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// Associated Legendre function `P_l^m(u)` including the Condon-Shortley phase.
pub fn assoc_legendre(l: u32, m: i32, u: f64) -> Result<f64> {
    if m.unsigned_abs() > l {
        return Err(Error::Domain(format!(
            "associated Legendre requires |m| <= l, got l={l}, m={m}"
        )));
    }
    if !(-1.0..=1.0).contains(&u) {
        return Err(Error::Domain(format!(
            "associated Legendre argument must lie in [-1, 1], got {u}"
        )));
    }
    let ma = m.unsigned_abs();
    let p = legendre_nonneg(l, ma, u);
    if m >= 0 {
        Ok(p)
    } else {
        // P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m
        let ratio = (ln_factorial(l - ma) - ln_factorial(l + ma)).exp();
        let sign = if ma % 2 == 0 { 1.0 } else { -1.0 };
        Ok(sign * ratio * p)
    }
}

fn legendre_nonneg(l: u32, m: u32, u: f64) -> f64 {
    let s = ((1.0 - u) * (1.0 + u)).max(0.0).sqrt();
    let mut pmm = 1.0;
    for i in 1..=m {
        pmm *= -((2 * i - 1) as f64) * s;
    }
    if l == m {
        return pmm;
    }
    let mut pm1 = u * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pm1;
    }
    let mut pm2 = pmm;
    for ll in (m + 2)..=l {
        let p = (u * (2 * ll - 1) as f64 * pm1 - (ll + m - 1) as f64 * pm2) / (ll - m) as f64;
        pm2 = pm1;
        pm1 = p;
    }
    pm1
}

/// Orthonormal complex spherical harmonic `Y_lm(theta, phi)` with the
/// Condon-Shortley phase.
pub fn spherical_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Result<Complex1> {
    let ma = m.unsigned_abs();
    if ma > l {
        return Err(Error::Domain(format!(
            "spherical harmonic requires |m| <= l, got l={l}, m={m}"
        )));
    }
    let ln_norm = 0.5
        * (((2 * l + 1) as f64 / (4.0 * PI)).ln() + ln_factorial(l - ma) - ln_factorial(l + ma));
    let p = legendre_nonneg(l, ma, theta.cos().clamp(-1.0, 1.0));
    let y = Complex64::from_polar(ln_norm.exp() * p, ma as f64 * phi);
    if m >= 0 {
        Ok(y)
    } else if ma % 2 == 0 {
        Ok(y.conj())
    } else {
        Ok(-y.conj())
    }
}

fn check_radial(n: u32, l: u32, xi: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain(
            "principal quantum number must be positive".into(),
        ));
    }
    if l >= n {
        return Err(Error::Domain(format!(
            "orbital quantum number must satisfy l < n, got n={n}, l={l}"
        )));
    }
    if !(xi.is_finite() && xi > 0.0) {
        return Err(Error::Domain(format!(
            "xi component must be positive, got {xi}"
        )));
    }
    Ok(())
}

/// Normalization constant `[(2Z/(n a0_s))^3 (n-l-1)! / (2n (n+l)!)]^{1/2}`
/// with `a0_s = a0 xi_s^2`, evaluated in log space.
pub fn radial_normalization(n: u32, l: u32, xi_s: f64, params: &PhysicalParams) -> Result<f64> {
    check_radial(n, l, xi_s)?;
    let a0s = params.scaled_bohr_radius(xi_s);
    let k = 2.0 * params.z / (n as f64 * a0s);
    let ln = 3.0 * k.ln() + ln_factorial(n - l - 1) - (2.0 * n as f64).ln() - ln_factorial(n + l);
    Ok((0.5 * ln).exp())
}

/// `zeta_s = 2 Z r / (n a0_s)`.
pub fn zeta(n: u32, xi_s: f64, params: &PhysicalParams, r: f64) -> f64 {
    2.0 * params.z * r / (n as f64 * params.scaled_bohr_radius(xi_s))
}

/// `e^{-zeta/2} zeta^l L_{n-l-1}^{2l+1}(zeta)`, without the normalization.
/// Valid for any real `zeta`, including the negative values reached on the
/// hyperbolic plane.
pub fn radial_shape(n: u32, l: u32, zeta: f64) -> f64 {
    (-0.5 * zeta).exp() * zeta.powi(l as i32) * laguerre(n - l - 1, 2 * l + 1, zeta)
}

/// Normalized radial function `u_{n l}(r)` of one idempotent sector.
pub fn radial_u(n_s: u32, l_s: u32, xi_s: f64, params: &PhysicalParams, r: f64) -> Result<f64> {
    let norm = radial_normalization(n_s, l_s, xi_s, params)?;
    if !(r >= 0.0) {
        return Err(Error::Domain(format!(
            "radius must be nonnegative, got {r}"
        )));
    }
    Ok(norm * radial_shape(n_s, l_s, zeta(n_s, xi_s, params, r)))
}

/// Derivative `du/dr` of [`radial_u`], using
/// `d/dz [z^l L_q^k(z)] = l z^{l-1} L_q^k(z) - z^l L_{q-1}^{k+1}(z)`.
pub fn radial_u_derivative(
    n_s: u32,
    l_s: u32,
    xi_s: f64,
    params: &PhysicalParams,
    r: f64,
) -> Result<f64> {
    let norm = radial_normalization(n_s, l_s, xi_s, params)?;
    let dz = 2.0 * params.z / (n_s as f64 * params.scaled_bohr_radius(xi_s));
    let z = dz * r;
    let q = n_s - l_s - 1;
    let k = 2 * l_s + 1;
    let lag = laguerre(q, k, z);
    let dlag = if q == 0 {
        0.0
    } else {
        -laguerre(q - 1, k + 1, z)
    };
    let zl = z.powi(l_s as i32);
    let dzl = if l_s == 0 {
        0.0
    } else {
        l_s as f64 * z.powi(l_s as i32 - 1)
    };
    let e = (-0.5 * z).exp();
    Ok(norm * dz * e * (dzl * lag + zl * dlag - 0.5 * zl * lag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    /// Independent oracle: the explicit Laguerre series evaluated exactly.
    fn laguerre_series_exact(q: u32, k: u32, x: &BigRational) -> BigRational {
        let mut sum = BigRational::zero();
        let mut fact = BigInt::one();
        let mut xp = BigRational::one();
        for m in 0..=q {
            if m > 0 {
                fact *= BigInt::from(m);
                xp = &xp * x;
            }
            let term =
                BigRational::from(binomial(q + k, q - m)) * &xp / BigRational::from(fact.clone());
            if m % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        sum
    }

    /// Rodrigues oracle: P_l^m(u) = (-1)^m (1-u^2)^{m/2} d^{l+m}/du^{l+m} (u^2-1)^l / (2^l l!).
    fn legendre_rodrigues(l: u32, m: u32, u: f64) -> f64 {
        let mut poly = vec![0i128; 2 * l as usize + 1];
        for i in 0..=l {
            let c = binomial(l, i).to_i128().unwrap();
            let sign = if (l - i) % 2 == 0 { 1 } else { -1 };
            poly[2 * i as usize] = sign * c;
        }
        for _ in 0..(l + m) {
            poly = poly
                .iter()
                .enumerate()
                .skip(1)
                .map(|(p, c)| c * p as i128)
                .collect();
        }
        let val = poly.iter().rev().fold(0.0, |acc, &c| acc * u + c as f64);
        let denom = 2f64.powi(l as i32) * ln_factorial(l).exp();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        sign * (1.0 - u * u).powf(m as f64 / 2.0) * val / denom
    }

    #[test]
    fn laguerre_low_order() {
        for &x in &[0.0, 0.3, 1.7, 12.0] {
            assert_eq!(laguerre(0, 5, x), 1.0);
            assert!((laguerre(1, 1, x) - (2.0 - x)).abs() < 1e-14);
            assert!((laguerre(2, 1, x) - (x * x / 2.0 - 3.0 * x + 3.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn laguerre_exact_coefficients_match_series() {
        let c = laguerre_coeffs_exact(2, 1);
        let expect = [
            BigRational::from_integer(3.into()),
            BigRational::from_integer((-3).into()),
            BigRational::new(1.into(), 2.into()),
        ];
        assert_eq!(c, expect);
        let f = laguerre_coeffs(2, 1);
        assert_eq!(f.degree(), 2);
        assert!((f.eval(1.5) - laguerre(2, 1, 1.5)).abs() < 1e-14);
    }

    #[test]
    fn recurrence_agrees_with_exact_series() {
        let mut worst: f64 = 0.0;
        for q in 0..=30u32 {
            for k in (0..=30u32).step_by(3) {
                for i in 0..=40 {
                    let x = 2.5 * i as f64 + 0.125;
                    let exact = laguerre_series_exact(q, k, &BigRational::from_float(x).unwrap())
                        .to_f64()
                        .unwrap();
                    let rec = laguerre(q, k, x);
                    let err = (rec - exact).abs() / exact.abs().max(f64::MIN_POSITIVE);
                    worst = worst.max(err);
                }
            }
        }
        assert!(worst < 1e-10, "worst relative error {worst:e}");
    }

    #[test]
    fn legendre_examples() {
        for &u in &[-0.9, -0.2, 0.0, 0.4, 1.0] {
            assert_eq!(assoc_legendre(0, 0, u).unwrap(), 1.0);
            assert!((assoc_legendre(1, 0, u).unwrap() - u).abs() < 1e-15);
        }
        assert!((assoc_legendre(1, 1, 0.0).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn legendre_matches_rodrigues() {
        for l in 0..=8u32 {
            for m in 0..=l {
                for &u in &[-0.95, -0.5, 0.1, 0.33, 0.8] {
                    let a = assoc_legendre(l, m as i32, u).unwrap();
                    let b = legendre_rodrigues(l, m, u);
                    assert!(
                        (a - b).abs() <= 1e-11 * b.abs().max(1.0),
                        "l={l} m={m} u={u}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn legendre_domain_errors() {
        assert!(matches!(assoc_legendre(1, 2, 0.0), Err(Error::Domain(_))));
        assert!(matches!(assoc_legendre(2, 1, 1.5), Err(Error::Domain(_))));
        assert!(matches!(
            spherical_harmonic(1, -2, 0.0, 0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn y00_is_constant() {
        let y = spherical_harmonic(0, 0, 1.1, 2.3).unwrap();
        assert!((y.re - 0.28209479177387814).abs() < 1e-15);
        assert_eq!(y.im, 0.0);
    }

    #[test]
    fn negative_m_symmetry() {
        for l in 0..6u32 {
            for m in 1..=l as i32 {
                let (t, p) = (0.7, 1.9);
                let a = spherical_harmonic(l, -m, t, p).unwrap();
                let b = spherical_harmonic(l, m, t, p).unwrap().conj()
                    * if m % 2 == 0 { 1.0 } else { -1.0 };
                assert!((a - b).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn y21_unit_norm_on_sphere() {
        use gauss_quad::legendre::GaussLegendre;
        let gl = GaussLegendre::new(12.try_into().unwrap());
        let nphi = 16;
        let mut total = 0.0;
        for &(u, w) in gl.as_node_weight_pairs() {
            for j in 0..nphi {
                let phi = 2.0 * PI * j as f64 / nphi as f64;
                let y = spherical_harmonic(2, 1, u.acos(), phi).unwrap();
                total += w * (2.0 * PI / nphi as f64) * y.norm_sqr();
            }
        }
        assert!((total - 1.0).abs() < 1e-10);
    }

    #[test]
    fn radial_closed_forms() {
        let p = PhysicalParams::atomic();
        for &r in &[0.01, 0.5, 1.0, 3.7, 11.0] {
            let u10 = radial_u(1, 0, 1.0, &p, r).unwrap();
            assert!((u10 - 2.0 * (-r).exp()).abs() < 1e-14 * u10.abs().max(1e-300) + 1e-300);
            let u21 = radial_u(2, 1, 1.0, &p, r).unwrap();
            let want = r * (-r / 2.0).exp() / 24f64.sqrt();
            assert!((u21 - want).abs() <= 1e-14 * want.abs());
        }
    }

    #[test]
    fn radial_domain_error() {
        let p = PhysicalParams::atomic();
        assert!(matches!(
            radial_u(2, 2, 1.0, &p, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            radial_u(0, 0, 1.0, &p, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            radial_u(2, 0, 0.0, &p, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn radial_derivative_matches_finite_difference() {
        let p = PhysicalParams::atomic();
        for (n, l) in [(1, 0), (3, 1), (6, 4), (10, 2)] {
            for &r in &[0.3f64, 2.0, 9.0, 40.0] {
                let h = 1e-5 * r.max(1.0);
                let fd = (radial_u(n, l, 1.3, &p, r + h).unwrap()
                    - radial_u(n, l, 1.3, &p, r - h).unwrap())
                    / (2.0 * h);
                let d = radial_u_derivative(n, l, 1.3, &p, r).unwrap();
                let scale = d
                    .abs()
                    .max(radial_u(n, l, 1.3, &p, r).unwrap().abs())
                    .max(1e-300);
                assert!(
                    (fd - d).abs() / scale < 1e-6,
                    "n={n} l={l} r={r}: {fd} vs {d}"
                );
            }
        }
    }

    #[test]
    fn xi_scaling_law() {
        // u(xi = c; r) = c^{-3} u(xi = 1; r / c^2)
        let p = PhysicalParams::atomic();
        for &c in &[0.5, 2.0, 1.7] {
            for &r in &[0.2, 1.3, 6.0] {
                let a = radial_u(4, 2, c, &p, r).unwrap();
                let b = radial_u(4, 2, 1.0, &p, r / (c * c)).unwrap() / (c * c * c);
                assert!((a - b).abs() <= 1e-13 * a.abs().max(1e-300));
            }
        }
    }
}
