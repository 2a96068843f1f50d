//! Dense complex polynomials with an explicit nominal degree.
//!
//! The nominal degree is stored, not inferred: the n-inversion of a
//! polynomial depends on the declared degree even when the leading
//! coefficient vanishes (the 4-inverse of `z` is `z^3`). Coefficients are
//! kept zero-padded to the nominal degree so that inversion is a pure slice
//! reversal with no arithmetic.

use crate::{Error, Result};

pub use num_complex::Complex64 as Complex;

/// Whether a disk includes its boundary circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Closure {
    Open,
    Closed,
}

/// A disk in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Complex,
    pub radius: f64,
    pub closure: Closure,
}

impl Disk {
    pub fn new(center: Complex, radius: f64, closure: Closure) -> Result<Self> {
        if !center.re.is_finite() || !center.im.is_finite() || !radius.is_finite() {
            return Err(Error::NonFinite("Disk::new"));
        }
        if radius < 0.0 {
            return Err(Error::Precondition("disk radius must be >= 0".into()));
        }
        Ok(Disk { center, radius, closure })
    }

    /// The open unit disk Δ.
    pub fn unit_open() -> Self {
        Disk { center: Complex::new(0.0, 0.0), radius: 1.0, closure: Closure::Open }
    }

    /// The closed unit disk.
    pub fn unit_closed() -> Self {
        Disk { center: Complex::new(0.0, 0.0), radius: 1.0, closure: Closure::Closed }
    }

    /// The open disk of radius `r` about the origin.
    pub fn origin_open(r: f64) -> Self {
        Disk { center: Complex::new(0.0, 0.0), radius: r, closure: Closure::Open }
    }
}

/// Binomial coefficient C(n, k) as a float.
///
/// Exact 64-bit integer Pascal recurrence for n <= 62 (C(62, 31) still fits
/// in a u64); a guarded multiplicative float path above that.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    if n <= 62 {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc as f64
    } else {
        let mut acc = 1.0f64;
        for i in 0..k {
            acc = acc * (n - i) as f64 / (i + 1) as f64;
            if !acc.is_finite() {
                return f64::INFINITY;
            }
        }
        acc
    }
}

/// A complex polynomial `q(z) = q̂(0) + q̂(1) z + … + q̂(n) z^n` stored densely
/// at its nominal degree `n`. `coeffs()[k]` is the coefficient of `z^k` and
/// the vector always has length `n + 1`; trailing zeros are never trimmed.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

fn check_finite(coeffs: &[Complex]) -> Result<()> {
    for c in coeffs {
        if !c.re.is_finite() || !c.im.is_finite() {
            return Err(Error::NonFinite("polynomial coefficient"));
        }
    }
    Ok(())
}

impl Polynomial {
    /// Construct with an explicit nominal degree. Coefficient lists shorter
    /// than `nominal_degree + 1` are zero-padded; longer lists are rejected.
    pub fn new(coeffs: Vec<Complex>, nominal_degree: usize) -> Result<Self> {
        check_finite(&coeffs)?;
        if coeffs.len() > nominal_degree + 1 {
            return Err(Error::Precondition(format!(
                "{} coefficients exceed nominal degree {}",
                coeffs.len(),
                nominal_degree
            )));
        }
        let mut coeffs = coeffs;
        coeffs.resize(nominal_degree + 1, Complex::new(0.0, 0.0));
        Ok(Polynomial { coeffs })
    }

    /// Convenience constructor: nominal degree inferred as `coeffs.len() - 1`
    /// (the zero polynomial of degree 0 for an empty list).
    pub fn from_coeffs(coeffs: Vec<Complex>) -> Result<Self> {
        check_finite(&coeffs)?;
        let mut coeffs = coeffs;
        if coeffs.is_empty() {
            coeffs.push(Complex::new(0.0, 0.0));
        }
        Ok(Polynomial { coeffs })
    }

    /// Real-coefficient convenience constructor, nominal degree inferred.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    /// The monomial `z` at nominal degree 1.
    pub fn identity() -> Self {
        Polynomial { coeffs: vec![Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)] }
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the nominal degree.
    pub fn coeff(&self, k: usize) -> Complex {
        self.coeffs.get(k).copied().unwrap_or(Complex::new(0.0, 0.0))
    }

    pub fn nominal_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest k with a nonzero coefficient; `None` for the zero polynomial.
    pub fn actual_degree(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .rposition(|c| c.re != 0.0 || c.im != 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.actual_degree().is_none()
    }

    /// `max_k |q̂(k)|`, the coefficient scale used in relative judgments.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation, highest coefficient first.
    pub fn evaluate(&self, z: Complex) -> Result<Complex> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite("evaluate argument"));
        }
        let mut acc = Complex::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        Ok(acc)
    }

    /// Absolute rounding-noise level of Horner evaluation at `z`: values of
    /// `|q(z)|` below this are indistinguishable from zero in f64.
    pub fn evaluation_noise(&self, z: Complex) -> f64 {
        let zabs = z.norm();
        let mut acc = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * zabs + c.norm();
        }
        4.0 * f64::EPSILON * acc
    }

    /// The n-inversion: coefficient reversal at the nominal degree, so that
    /// `q*(z) = z^n q(1/z)`. A pure reversal, bit-exact, and an involution.
    pub fn n_inverse(&self) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Polynomial { coeffs }
    }

    /// `max_k |q̂(k)| / C(n, k)` over k = 0…n.
    pub fn norm_nq(&self) -> f64 {
        let n = self.nominal_degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm() / binomial(n, k))
            .fold(0.0, f64::max)
    }

    /// The rescale `q̃(z) = q(Rz)/R`: coefficient k is multiplied by
    /// `R^(k-1)`, so the linear coefficient is preserved exactly.
    pub fn rescale(&self, r: f64) -> Result<Polynomial> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Precondition("rescale requires R > 0".into()));
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            let scaled = if k == 1 { *c } else { c * r.powi(k as i32 - 1) };
            if !scaled.re.is_finite() || !scaled.im.is_finite() {
                return Err(Error::NumericRange(format!(
                    "rescale overflowed at coefficient {k}"
                )));
            }
            coeffs.push(scaled);
        }
        Ok(Polynomial { coeffs })
    }

    /// Coefficient-wise derivative; nominal degree drops by one (floor 0).
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial { coeffs: vec![Complex::new(0.0, 0.0)] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        Polynomial { coeffs }
    }

    /// `q(z) - w`, same nominal degree.
    pub fn subtract_const(&self, w: Complex) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] -= w;
        Polynomial { coeffs }
    }

    /// The composition `p(a + b z)` at the same nominal degree, expanded by
    /// exact binomial combinatorics on floating coefficients.
    pub fn compose_affine(&self, a: Complex, b: Complex) -> Polynomial {
        let n = self.nominal_degree();
        let mut out = vec![Complex::new(0.0, 0.0); n + 1];
        // a^(k-j) powers reused per k; C(k, j) exact for k <= 62.
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.re == 0.0 && c.im == 0.0 {
                continue;
            }
            let mut a_pow = vec![Complex::new(1.0, 0.0); k + 1];
            for i in 1..=k {
                a_pow[i] = a_pow[i - 1] * a;
            }
            let mut b_pow = Complex::new(1.0, 0.0);
            for j in 0..=k {
                out[j] += c * binomial(k, j) * a_pow[k - j] * b_pow;
                b_pow *= b;
            }
        }
        Polynomial { coeffs: out }
    }
}
