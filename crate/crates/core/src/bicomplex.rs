//! Bicomplex numbers in the idempotent representation.
//!
//! A bicomplex number is stored as the pair `(c1, c2)` of its complex
//! coefficients on the idempotent basis `{e1, e2}`:
//!
//! ```text
//! a = c1 e1 + c2 e2,   e1^2 = e1, e2^2 = e2, e1 e2 = 0, e1 + e2 = 1
//! ```
//!
//! so every ring operation reduces to two complex operations. The hyperbolic
//! unit is `j = e1 - e2` and the hyperbolic form of `a` is `x + y j` with
//! `x = (c1 + c2) / 2` and `y = (c1 - c2) / 2`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex numbers over the imaginary unit `i1`.
pub type Complex1 = Complex64;

/// Default absolute tolerance, per idempotent component, for null-cone tests.
pub const NULL_CONE_TOL: f64 = 1e-12;

const I1: Complex64 = Complex64::new(0.0, 1.0);
const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);

/// An element of the bicomplex ring, stored on the idempotent basis.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Bicomplex {
    /// Coefficient of `e1`.
    pub c1: Complex1,
    /// Coefficient of `e2`.
    pub c2: Complex1,
}

impl Bicomplex {
    pub const ZERO: Bicomplex = Bicomplex { c1: C0, c2: C0 };
    pub const ONE: Bicomplex = Bicomplex { c1: C1, c2: C1 };
    pub const E1: Bicomplex = Bicomplex { c1: C1, c2: C0 };
    pub const E2: Bicomplex = Bicomplex { c1: C0, c2: C1 };
    /// Hyperbolic unit `j = e1 - e2`.
    pub const J: Bicomplex = Bicomplex {
        c1: C1,
        c2: Complex64::new(-1.0, 0.0),
    };
    /// Imaginary unit `i1`, shared by both components.
    pub const I1: Bicomplex = Bicomplex { c1: I1, c2: I1 };
    /// Imaginary unit `i2 = -i1 j`.
    pub const I2: Bicomplex = Bicomplex {
        c1: Complex64::new(0.0, -1.0),
        c2: I1,
    };

    pub const fn new(c1: Complex1, c2: Complex1) -> Self {
        Bicomplex { c1, c2 }
    }

    /// Builds a bicomplex number, rejecting NaN or infinite components.
    pub fn checked(c1: Complex1, c2: Complex1) -> Result<Self> {
        let b = Bicomplex { c1, c2 };
        if b.is_finite() {
            Ok(b)
        } else {
            Err(Error::Domain(format!(
                "non-finite bicomplex component in {b}"
            )))
        }
    }

    /// `a e1 + b e2` with real coefficients.
    pub const fn from_reals(a: f64, b: f64) -> Self {
        Bicomplex {
            c1: Complex64::new(a, 0.0),
            c2: Complex64::new(b, 0.0),
        }
    }

    /// Embeds a complex number `z` of `C(i1)` as `z e1 + z e2`.
    pub const fn from_complex(z: Complex1) -> Self {
        Bicomplex { c1: z, c2: z }
    }

    pub const fn from_real(x: f64) -> Self {
        Bicomplex::from_reals(x, x)
    }

    /// Builds `x + y j` from complex hyperbolic coordinates.
    pub fn from_hyperbolic_parts(x: Complex1, y: Complex1) -> Self {
        Bicomplex {
            c1: x + y,
            c2: x - y,
        }
    }

    /// Complex coordinates `(x, y)` of the hyperbolic form `x + y j`.
    pub fn hyperbolic_parts(&self) -> (Complex1, Complex1) {
        ((self.c1 + self.c2) * 0.5, (self.c1 - self.c2) * 0.5)
    }

    /// Idempotent component `s` (1 or 2).
    pub fn component(&self, s: usize) -> Complex1 {
        match s {
            1 => self.c1,
            2 => self.c2,
            _ => panic!("idempotent component index must be 1 or 2, got {s}"),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.c1.re.is_finite()
            && self.c1.im.is_finite()
            && self.c2.re.is_finite()
            && self.c2.im.is_finite()
    }

    /// `conj(c1) e1 + conj(c2) e2`.
    pub fn dagger(&self) -> Self {
        Bicomplex {
            c1: self.c1.conj(),
            c2: self.c2.conj(),
        }
    }

    /// `(1/sqrt 2) sqrt(|c1|^2 + |c2|^2)`.
    pub fn real_norm(&self) -> f64 {
        (0.5 * (self.c1.norm_sqr() + self.c2.norm_sqr())).sqrt()
    }

    /// True when either idempotent component has modulus at most `tol`.
    pub fn is_null_cone(&self, tol: f64) -> bool {
        self.c1.norm() <= tol || self.c2.norm() <= tol
    }

    /// Multiplicative inverse, defined off the null cone.
    pub fn inverse(&self, tol: f64) -> Result<Self> {
        if self.is_null_cone(tol) {
            return Err(Error::NullCone(format!(
                "{self} is a zero divisor and has no inverse"
            )));
        }
        Ok(Bicomplex {
            c1: self.c1.inv(),
            c2: self.c2.inv(),
        })
    }

    /// Principal square root of `j`: `e1 + i1 e2`.
    pub const fn sqrt_j() -> Self {
        Bicomplex { c1: C1, c2: I1 }
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    pub fn powi(&self, n: i32) -> Self {
        Bicomplex {
            c1: self.c1.powi(n),
            c2: self.c2.powi(n),
        }
    }

    /// Returns the hyperbolic number when both components are real within `tol`.
    pub fn to_hyperbolic(&self, tol: f64) -> Option<Hyperbolic> {
        if self.c1.im.abs() <= tol && self.c2.im.abs() <= tol {
            Some(Hyperbolic::from_idempotent(self.c1.re, self.c2.re))
        } else {
            None
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        Bicomplex {
            c1: self.c1 * k,
            c2: self.c2 * k,
        }
    }

    /// Keeps only idempotent sector `s`, i.e. `e_s a`.
    pub fn project(&self, s: usize) -> Self {
        match s {
            1 => Bicomplex {
                c1: self.c1,
                c2: C0,
            },
            2 => Bicomplex {
                c1: C0,
                c2: self.c2,
            },
            _ => panic!("idempotent component index must be 1 or 2, got {s}"),
        }
    }
}

impl fmt::Display for Bicomplex {
    /// Renders the idempotent pair as `a+bi1 | c+di1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn one(f: &mut fmt::Formatter<'_>, z: Complex64) -> fmt::Result {
            if z.im.is_sign_negative() {
                write!(f, "{}-{}i1", z.re, -z.im)
            } else {
                write!(f, "{}+{}i1", z.re, z.im)
            }
        }
        one(f, self.c1)?;
        f.write_str(" | ")?;
        one(f, self.c2)
    }
}

impl Add for Bicomplex {
    type Output = Bicomplex;
    fn add(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex {
            c1: self.c1 + rhs.c1,
            c2: self.c2 + rhs.c2,
        }
    }
}

impl Sub for Bicomplex {
    type Output = Bicomplex;
    fn sub(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex {
            c1: self.c1 - rhs.c1,
            c2: self.c2 - rhs.c2,
        }
    }
}

impl Mul for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: Bicomplex) -> Bicomplex {
        Bicomplex {
            c1: self.c1 * rhs.c1,
            c2: self.c2 * rhs.c2,
        }
    }
}

impl Mul<Complex64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: Complex64) -> Bicomplex {
        Bicomplex {
            c1: self.c1 * rhs,
            c2: self.c2 * rhs,
        }
    }
}

impl Mul<f64> for Bicomplex {
    type Output = Bicomplex;
    fn mul(self, rhs: f64) -> Bicomplex {
        self.scale(rhs)
    }
}

impl Div<f64> for Bicomplex {
    type Output = Bicomplex;
    fn div(self, rhs: f64) -> Bicomplex {
        self.scale(1.0 / rhs)
    }
}

impl Neg for Bicomplex {
    type Output = Bicomplex;
    fn neg(self) -> Bicomplex {
        Bicomplex {
            c1: -self.c1,
            c2: -self.c2,
        }
    }
}

impl AddAssign for Bicomplex {
    fn add_assign(&mut self, rhs: Bicomplex) {
        self.c1 += rhs.c1;
        self.c2 += rhs.c2;
    }
}

impl SubAssign for Bicomplex {
    fn sub_assign(&mut self, rhs: Bicomplex) {
        self.c1 -= rhs.c1;
        self.c2 -= rhs.c2;
    }
}

impl MulAssign for Bicomplex {
    fn mul_assign(&mut self, rhs: Bicomplex) {
        self.c1 *= rhs.c1;
        self.c2 *= rhs.c2;
    }
}

impl std::iter::Sum for Bicomplex {
    fn sum<I: Iterator<Item = Bicomplex>>(iter: I) -> Bicomplex {
        iter.fold(Bicomplex::ZERO, |a, b| a + b)
    }
}

/// A hyperbolic number `x + y j`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Hyperbolic {
    /// Real part.
    pub x: f64,
    /// Hyperbolic part, coefficient of `j`.
    pub y: f64,
}

impl Hyperbolic {
    pub const ONE: Hyperbolic = Hyperbolic { x: 1.0, y: 0.0 };
    pub const J: Hyperbolic = Hyperbolic { x: 0.0, y: 1.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Hyperbolic { x, y }
    }

    /// Builds `a e1 + b e2` from real idempotent components.
    pub fn from_idempotent(a: f64, b: f64) -> Self {
        Hyperbolic {
            x: 0.5 * (a + b),
            y: 0.5 * (a - b),
        }
    }

    /// Real idempotent components `(x + y, x - y)`.
    pub fn idempotent(&self) -> (f64, f64) {
        (self.x + self.y, self.x - self.y)
    }

    /// Real part.
    pub fn re(&self) -> f64 {
        self.x
    }

    /// Hyperbolic part.
    pub fn hy(&self) -> f64 {
        self.y
    }

    /// `sqrt(x^2 + y^2)`, which agrees with [`Bicomplex::real_norm`].
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Membership in the positive cone: both idempotent components strictly positive.
    pub fn is_positive(&self) -> bool {
        let (a, b) = self.idempotent();
        a > 0.0 && b > 0.0
    }

    pub fn is_null_cone(&self, tol: f64) -> bool {
        let (a, b) = self.idempotent();
        a.abs() <= tol || b.abs() <= tol
    }

    pub fn powi(&self, n: i32) -> Self {
        let (a, b) = self.idempotent();
        Hyperbolic::from_idempotent(a.powi(n), b.powi(n))
    }

    pub fn inverse(&self, tol: f64) -> Result<Self> {
        if self.is_null_cone(tol) {
            return Err(Error::NullCone(format!(
                "hyperbolic number {self} is a zero divisor"
            )));
        }
        let (a, b) = self.idempotent();
        Ok(Hyperbolic::from_idempotent(1.0 / a, 1.0 / b))
    }
}

impl fmt::Display for Hyperbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_sign_negative() {
            write!(f, "{}-{}j", self.x, -self.y)
        } else {
            write!(f, "{}+{}j", self.x, self.y)
        }
    }
}

impl From<Hyperbolic> for Bicomplex {
    fn from(h: Hyperbolic) -> Bicomplex {
        let (a, b) = h.idempotent();
        Bicomplex::from_reals(a, b)
    }
}

impl Add for Hyperbolic {
    type Output = Hyperbolic;
    fn add(self, rhs: Hyperbolic) -> Hyperbolic {
        Hyperbolic::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Hyperbolic {
    type Output = Hyperbolic;
    fn sub(self, rhs: Hyperbolic) -> Hyperbolic {
        Hyperbolic::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul for Hyperbolic {
    type Output = Hyperbolic;
    /// `(a + b j)(c + d j) = (ac + bd) + (ad + bc) j` since `j^2 = 1`.
    fn mul(self, rhs: Hyperbolic) -> Hyperbolic {
        Hyperbolic::new(
            self.x * rhs.x + self.y * rhs.y,
            self.x * rhs.y + self.y * rhs.x,
        )
    }
}

impl Mul<f64> for Hyperbolic {
    type Output = Hyperbolic;
    fn mul(self, k: f64) -> Hyperbolic {
        Hyperbolic::new(self.x * k, self.y * k)
    }
}

impl Neg for Hyperbolic {
    type Output = Hyperbolic;
    fn neg(self) -> Hyperbolic {
        Hyperbolic::new(-self.x, -self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn idempotent_identities() {
        assert_eq!(Bicomplex::E1 * Bicomplex::E2, Bicomplex::ZERO);
        assert_eq!(Bicomplex::E1 * Bicomplex::E1, Bicomplex::E1);
        assert_eq!(Bicomplex::E2 * Bicomplex::E2, Bicomplex::E2);
        assert_eq!(Bicomplex::E1 + Bicomplex::E2, Bicomplex::ONE);
        assert_eq!(Bicomplex::J * Bicomplex::J, Bicomplex::ONE);
        assert_eq!(Bicomplex::I2 * Bicomplex::I2, -Bicomplex::ONE);
        assert_eq!(Bicomplex::I1 * Bicomplex::I1, -Bicomplex::ONE);
    }

    #[test]
    fn componentwise_product() {
        let a = Bicomplex::from_reals(1.0, 2.0);
        let b = Bicomplex::from_reals(3.0, 5.0);
        assert_eq!(a * b, Bicomplex::from_reals(3.0, 10.0));
    }

    #[test]
    fn dagger_examples() {
        let a = Bicomplex::new(c(0.0, 1.0), c(2.0, 0.0));
        assert_eq!(a.dagger(), Bicomplex::new(c(0.0, -1.0), c(2.0, 0.0)));
        let b = Bicomplex::new(c(3.0, 4.0), c(2.0, 0.0));
        assert_eq!(b.dagger() * b, Bicomplex::from_reals(25.0, 4.0));
    }

    #[test]
    fn real_norm_examples() {
        assert!((Bicomplex::E1.real_norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((Bicomplex::from_reals(3.0, 4.0).real_norm() - 12.5f64.sqrt()).abs() < 1e-15);
        let h = Hyperbolic::new(1.5, -0.25);
        assert!((Bicomplex::from(h).real_norm() - h.norm()).abs() < 1e-15);
    }

    #[test]
    fn null_cone_examples() {
        assert!(Bicomplex::from_reals(5.0, 0.0).is_null_cone(0.0));
        assert!(!Bicomplex::J.is_null_cone(0.0));
        assert!(Bicomplex::ZERO.is_null_cone(0.0));
    }

    #[test]
    fn inverse_examples() {
        let inv = Bicomplex::from_reals(2.0, 4.0)
            .inverse(NULL_CONE_TOL)
            .unwrap();
        assert_eq!(inv, Bicomplex::from_reals(0.5, 0.25));
        assert_eq!(
            Bicomplex::ONE.inverse(NULL_CONE_TOL).unwrap(),
            Bicomplex::ONE
        );
        assert!(matches!(
            Bicomplex::from_reals(5.0, 0.0).inverse(NULL_CONE_TOL),
            Err(Error::NullCone(_))
        ));
    }

    #[test]
    fn sqrt_j_examples() {
        assert_eq!(Bicomplex::sqrt_j().square(), Bicomplex::J);
        let xi = Bicomplex::from_reals(2.0, 3.0);
        assert_eq!(
            xi * Bicomplex::sqrt_j(),
            Bicomplex::new(c(2.0, 0.0), c(0.0, 3.0))
        );
        assert!((Bicomplex::sqrt_j().real_norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hyperbolic_round_trip() {
        let h = Hyperbolic::new(0.75, -2.5);
        let b: Bicomplex = h.into();
        assert_eq!(b.to_hyperbolic(0.0), Some(h));
        let (x, y) = b.hyperbolic_parts();
        assert_eq!((x.re, y.re), (0.75, -2.5));
        assert!(Bicomplex::I1.to_hyperbolic(1e-12).is_none());
    }

    #[test]
    fn checked_rejects_nan() {
        assert!(Bicomplex::checked(c(f64::NAN, 0.0), c(1.0, 0.0)).is_err());
        assert!(Bicomplex::checked(c(1.0, 0.0), c(1.0, f64::INFINITY)).is_err());
    }

    #[test]
    fn display_idempotent_pair() {
        let a = Bicomplex::new(c(1.0, -2.0), c(3.0, 4.0));
        assert_eq!(a.to_string(), "1-2i1 | 3+4i1");
    }

    #[test]
    fn hyperbolic_product_matches_bicomplex() {
        let a = Hyperbolic::new(0.3, 1.2);
        let b = Hyperbolic::new(-2.0, 0.7);
        let p: Bicomplex = (a * b).into();
        let q = Bicomplex::from(a) * Bicomplex::from(b);
        assert!((p - q).real_norm() < 1e-15);
    }
}
