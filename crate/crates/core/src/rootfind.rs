//! All-roots solver: Aberth–Ehrlich simultaneous iteration with residual
//! certification and three-valued disk classification.
//!
//! Everything is deterministic: fixed initial guesses on a Cauchy-bound
//! circle, fixed sweep order, at most one restart with a doubled radius.
//! Residuals are always recomputed by direct evaluation of the input
//! polynomial, never taken from iteration internals.

use crate::poly::{Complex, Disk, Polynomial};
use crate::{Error, Result};

const STEP_TOL: f64 = 1e-14;
const MAX_SWEEPS: usize = 200;

/// Roots of a polynomial together with recomputed residuals and a per-root
/// accuracy estimate. `roots.len()` equals the actual degree of the input.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<Complex>,
    /// `|p(root)|` recomputed by direct evaluation.
    pub residuals: Vec<f64>,
    /// Radius within which a true root is guaranteed/estimated to lie;
    /// large for clustered or multiple roots, near rounding for simple ones.
    pub uncertainties: Vec<f64>,
    /// `max_k |coefficient|` of the input, for relative residual judgments.
    pub scale: f64,
    pub converged: bool,
}

/// Per-root verdict relative to a disk and a margin band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootLocation {
    Inside,
    Outside,
    Marginal,
}

#[derive(Debug, Clone)]
pub struct DiskClassification {
    pub verdicts: Vec<RootLocation>,
}

impl DiskClassification {
    pub fn all_inside(&self) -> bool {
        self.verdicts.iter().all(|v| *v == RootLocation::Inside)
    }
    pub fn all_outside(&self) -> bool {
        self.verdicts.iter().all(|v| *v == RootLocation::Outside)
    }
    pub fn any_marginal(&self) -> bool {
        self.verdicts.contains(&RootLocation::Marginal)
    }
}

/// Classify a single point against a disk with an absolute margin band.
pub fn classify_point(z: Complex, d: &Disk, margin: f64) -> RootLocation {
    let dist = (z - d.center).norm();
    if dist < d.radius - margin {
        RootLocation::Inside
    } else if dist > d.radius + margin {
        RootLocation::Outside
    } else {
        RootLocation::Marginal
    }
}

/// Three-valued verdict for every root: inside / outside / marginal with
/// respect to `d`, using the absolute band `margin` around the boundary.
pub fn classify_roots(rs: &RootSet, d: &Disk, margin: f64) -> DiskClassification {
    let verdicts = rs
        .roots
        .iter()
        .map(|&r| classify_point(r, d, margin))
        .collect();
    DiskClassification { verdicts }
}

/// Like [`classify_roots`] but widens the band per root by the solver's own
/// accuracy estimate, so a poorly determined root (e.g. from a multiple-root
/// cluster) is never claimed to be strictly inside or outside.
pub fn classify_roots_certified(rs: &RootSet, d: &Disk, margin: f64) -> DiskClassification {
    let verdicts = rs
        .roots
        .iter()
        .zip(&rs.uncertainties)
        .map(|(&r, &u)| classify_point(r, d, margin.max(u)))
        .collect();
    DiskClassification { verdicts }
}

fn horner_with_derivative(coeffs: &[Complex], z: Complex) -> (Complex, Complex) {
    let mut p = Complex::new(0.0, 0.0);
    let mut dp = Complex::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Rounding-noise level of evaluating these coefficients at `z`; a residual
/// at or below this is indistinguishable from an exact zero in f64.
fn eval_noise(coeffs: &[Complex], z: Complex) -> f64 {
    let zabs = z.norm();
    let mut acc = 0.0f64;
    for c in coeffs.iter().rev() {
        acc = acc * zabs + c.norm();
    }
    4.0 * f64::EPSILON * acc
}

/// One full Aberth–Ehrlich run from the given initial circle. Returns the
/// roots and whether the step criterion was met within the sweep cap.
fn aberth_sweeps(coeffs: &[Complex], radius: f64, angle_offset: f64) -> (Vec<Complex>, bool) {
    let d = coeffs.len() - 1;
    let mut z: Vec<Complex> = (0..d)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + angle_offset;
            Complex::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut max_rel_step = 0.0f64;
        for j in 0..d {
            let (p, dp) = horner_with_derivative(coeffs, z[j]);
            // A residual below evaluation noise cannot be improved in f64;
            // treat the root as settled so clusters stop rather than jitter.
            if p.norm() <= eval_noise(coeffs, z[j]) {
                continue;
            }
            let newton = if dp.norm() == 0.0 {
                // Flat spot: nudge deterministically off the stationary point.
                Complex::new(STEP_TOL.sqrt(), STEP_TOL.sqrt())
            } else {
                p / dp
            };
            let mut repulse = Complex::new(0.0, 0.0);
            for k in 0..d {
                if k != j {
                    let diff = z[j] - z[k];
                    if diff.norm() > 0.0 {
                        repulse += diff.inv();
                    }
                }
            }
            let denom = Complex::new(1.0, 0.0) - newton * repulse;
            let step = if denom.norm() == 0.0 { newton } else { newton / denom };
            z[j] -= step;
            let rel = step.norm() / (1.0 + z[j].norm());
            if rel > max_rel_step {
                max_rel_step = rel;
            }
        }
        if max_rel_step < STEP_TOL {
            return (z, true);
        }
    }
    (z, false)
}

/// Per-root accuracy estimate from the Newton correction; falls back to the
/// geometric-mean bound `(|p(r)|/|lead|)^(1/d)` when the derivative is tiny
/// (multiple roots), where that bound is the sharp one.
fn root_uncertainty(coeffs: &[Complex], z: Complex) -> f64 {
    let d = coeffs.len() - 1;
    let (p, dp) = horner_with_derivative(coeffs, z);
    // The measured residual is floored at evaluation noise: a computed zero
    // still only locates the root to what f64 evaluation can resolve.
    let p_eff = p.norm().max(eval_noise(coeffs, z));
    let lead = coeffs[d].norm();
    let cluster = if lead > 0.0 {
        (p_eff / lead).powf(1.0 / d as f64)
    } else {
        f64::INFINITY
    };
    if dp.norm() > 0.0 {
        let newton = d as f64 * p_eff / dp.norm();
        newton.min(cluster)
    } else {
        cluster
    }
}

/// Find all roots of `p` (actual degree many) by Aberth–Ehrlich iteration.
///
/// Leading zero coefficients are deflated explicitly: each contributes a
/// root at exactly 0. Initial guesses sit on the Cauchy-bound circle
/// `1 + max_{k<d} |a_k / a_d|` at equispaced angles with a fixed offset; on
/// non-convergence one retry runs with the radius doubled and a different
/// offset, and the attempt with the smaller worst residual is kept.
/// Non-convergence is reported in-band via `converged = false`.
pub fn find_roots(p: &Polynomial) -> Result<RootSet> {
    let deg = match p.actual_degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => {
            return Err(Error::Precondition(
                "constant polynomial has no roots to find".into(),
            ))
        }
        Some(d) => d,
    };
    let scale = p.scale();
    let work: Vec<Complex> = p.coeffs()[..=deg].to_vec();

    // Deflate exact zero roots: leading (low-order) exactly-zero coefficients.
    let zeros_at_origin = work
        .iter()
        .take_while(|c| c.re == 0.0 && c.im == 0.0)
        .count();
    let reduced: Vec<Complex> = work[zeros_at_origin..].to_vec();

    let mut roots: Vec<Complex> = vec![Complex::new(0.0, 0.0); zeros_at_origin];
    let mut converged = true;

    if reduced.len() > 1 {
        let lead = reduced[reduced.len() - 1];
        let cauchy = 1.0
            + reduced[..reduced.len() - 1]
                .iter()
                .map(|c| (c / lead).norm())
                .fold(0.0, f64::max);
        if !cauchy.is_finite() {
            return Err(Error::NumericRange("Cauchy bound overflowed".into()));
        }

        let (first, ok1) = aberth_sweeps(&reduced, cauchy, 0.25);
        let (mut found, mut ok) = (first, ok1);
        if !ok {
            let (second, ok2) = aberth_sweeps(&reduced, 2.0 * cauchy, 1.25);
            let worst = |zs: &[Complex]| -> f64 {
                zs.iter()
                    .map(|&z| horner_with_derivative(&reduced, z).0.norm())
                    .fold(0.0, f64::max)
            };
            if ok2 || worst(&second) < worst(&found) {
                found = second;
                ok = ok2;
            }
        }
        converged = ok;
        roots.extend(found);
    }

    let full: Vec<Complex> = work;
    let residuals: Vec<f64> = roots
        .iter()
        .map(|&r| horner_with_derivative(&full, r).0.norm())
        .collect();
    let uncertainties: Vec<f64> = roots
        .iter()
        .map(|&r| {
            if r.re == 0.0 && r.im == 0.0 && zeros_at_origin > 0 {
                0.0
            } else {
                root_uncertainty(&full, r)
            }
        })
        .collect();

    Ok(RootSet { roots, residuals, uncertainties, scale, converged })
}
