//! Constructive distortion witness: given `p`, `z1`, `z2`, produce a point
//! `ζ` with `p(ζ) = p(z2)` and `|p(z1) − p(z2)| ≥ (1/n)|p'(z1)||z1 − ζ|`.
//!
//! The construction normalizes `q(z) = (p(z1) − p(z1 − z)) / p'(z1)` so that
//! `q(0) = 0` and `q'(0) = 1`, takes `w = q(z1 − z2)`, and picks a preimage
//! `η` of `w` under `q` inside the closed disk of radius `R = n|w|`, which
//! the covering bound guarantees to exist. Then `ζ = z1 − η`.

use crate::poly::{Complex, Polynomial};
use crate::rootfind::find_roots;
use crate::{Error, Result};

/// Which branch of the construction produced the witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessBranch {
    /// The full construction via `q` and the covering bound.
    Constructive,
    /// `p(z1) = p(z2)` already: `ζ = z1` and both sides vanish.
    EqualValues,
    /// `p'(z1) = 0`: `ζ = z2` makes the right-hand side vanish.
    CriticalPoint,
}

/// A verified witness for the distortion inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionWitness {
    pub z1: Complex,
    pub z2: Complex,
    pub zeta: Complex,
    /// `|p(ζ) − p(z2)|`.
    pub residual: f64,
    /// `|p(z1) − p(z2)|`.
    pub lhs: f64,
    /// `(1/n) |p'(z1)| |z1 − ζ|`.
    pub rhs: f64,
    /// `lhs − rhs`; nonnegative up to rounding when the theorem holds.
    pub slack: f64,
    /// `w = (p(z1) − p(z2)) / p'(z1)` (zero on degenerate branches).
    pub w: Complex,
    /// `R = n |w|`.
    pub big_r: f64,
    /// `η = z1 − ζ`.
    pub eta: Complex,
    pub branch: WitnessBranch,
}

impl DistortionWitness {
    /// The three witness invariants, as one predicate (the `|η| ≤ R` bound
    /// only applies to the constructive branch).
    pub fn invariants_hold(&self, p_z2_abs: f64) -> bool {
        let residual_ok = self.residual <= 1e-8 * (1.0 + p_z2_abs);
        let slack_ok = self.slack >= -1e-9 * (1.0 + self.lhs);
        let eta_ok = self.branch != WitnessBranch::Constructive
            || self.eta.norm() <= self.big_r * (1.0 + 1e-9);
        residual_ok && slack_ok && eta_ok
    }
}

/// The normalized polynomial `q(z) = (p(z1) − p(z1 − z)) / p'(z1)`, expanded
/// at the actual degree of `p` by exact binomial combinatorics. The constant
/// term is forced to exactly zero and the linear coefficient to exactly one.
pub fn q_construction(p: &Polynomial, z1: Complex) -> Result<Polynomial> {
    let n = match p.actual_degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::Precondition("q construction requires degree >= 1".into())),
    };
    let dp = p.derivative().evaluate(z1)?;
    if dp.norm() <= 1e-12 * p.scale() {
        return Err(Error::Precondition("p'(z1) vanishes (within tolerance)".into()));
    }
    let trimmed = Polynomial::new(p.coeffs()[..=n].to_vec(), n)?;
    // p(z1 - z), then negate and divide: q̂(k) = -comp[k]/p'(z1) for k >= 1.
    let comp = trimmed.compose_affine(z1, Complex::new(-1.0, 0.0));
    let mut coeffs = vec![Complex::new(0.0, 0.0); n + 1];
    #[allow(clippy::needless_range_loop)]
    for k in 1..=n {
        coeffs[k] = -comp.coeff(k) / dp;
    }
    coeffs[1] = Complex::new(1.0, 0.0);
    Polynomial::new(coeffs, n)
}

fn refine_multiple_root(chi: &Polynomial, multiplicity: usize, start: Complex) -> Complex {
    let mut der = chi.clone();
    for _ in 1..multiplicity {
        der = der.derivative();
    }
    let dder = der.derivative();
    let mut z = start;
    for _ in 0..60 {
        let (Ok(f), Ok(df)) = (der.evaluate(z), dder.evaluate(z)) else { return start };
        if df.norm() == 0.0 {
            break;
        }
        let step = f / df;
        z -= step;
        if !z.re.is_finite() || !z.im.is_finite() {
            return start;
        }
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Construct and verify the distortion witness `ζ` for `(p, z1, z2)`.
///
/// Among the preimages of `w` under `q` the minimum-modulus root is chosen
/// as `η` (ties broken by smaller argument); the covering bound guarantees
/// it lies in the closed disk of radius `n|w|`.
pub fn distortion_witness(p: &Polynomial, z1: Complex, z2: Complex) -> Result<DistortionWitness> {
    for z in [z1, z2] {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite("distortion witness input point"));
        }
    }
    let n = match p.actual_degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::Precondition("distortion witness requires degree >= 1".into())),
    };
    let p_z1 = p.evaluate(z1)?;
    let p_z2 = p.evaluate(z2)?;
    let lhs = (p_z1 - p_z2).norm();
    let dp = p.derivative().evaluate(z1)?;

    if lhs <= 1e-13 * (1.0 + p_z2.norm()) {
        // p(z1) = p(z2) within tolerance: ζ = z1 works with both sides 0.
        return Ok(DistortionWitness {
            z1,
            z2,
            zeta: z1,
            residual: lhs,
            lhs,
            rhs: 0.0,
            slack: lhs,
            w: Complex::new(0.0, 0.0),
            big_r: 0.0,
            eta: Complex::new(0.0, 0.0),
            branch: WitnessBranch::EqualValues,
        });
    }
    if dp.norm() <= 1e-12 * p.scale() {
        // Critical point: ζ = z2 satisfies the inequality with rhs ≈ 0.
        let rhs = dp.norm() * (z1 - z2).norm() / n as f64;
        return Ok(DistortionWitness {
            z1,
            z2,
            zeta: z2,
            residual: 0.0,
            lhs,
            rhs,
            slack: lhs - rhs,
            w: Complex::new(0.0, 0.0),
            big_r: 0.0,
            eta: z1 - z2,
            branch: WitnessBranch::CriticalPoint,
        });
    }

    let q = q_construction(p, z1)?;
    let w = (p_z1 - p_z2) / dp; // equals q(z1 - z2) by construction
    let big_r = n as f64 * w.norm();
    let chi = q.subtract_const(w);
    let rs = find_roots(&chi)?;
    if !rs.converged {
        return Err(Error::NonConvergence);
    }
    // Candidate preimages: the roots, except that a cluster of roots is
    // collapsed to its centroid. A multiplicity-m root is only located to
    // ~ε^(1/m) by any individual cluster member (spurious splittings that
    // the min-modulus rule would otherwise latch onto), but the centroid
    // recovers it to near machine precision. A centroid stands in for its
    // members only when its residual is at least as good as theirs.
    let d = rs.roots.len();
    let mut candidates: Vec<Complex> = Vec::with_capacity(d);
    let mut grouped = vec![false; d];
    for i in 0..d {
        if grouped[i] {
            continue;
        }
        let mut members = vec![i];
        #[allow(clippy::needless_range_loop)]
        for j in (i + 1)..d {
            if !grouped[j]
                && (rs.roots[i] - rs.roots[j]).norm()
                    <= 3.0 * (rs.uncertainties[i] + rs.uncertainties[j])
            {
                members.push(j);
            }
        }
        if members.len() >= 2 {
            let mean = members.iter().map(|&m| rs.roots[m]).sum::<Complex>()
                / members.len() as f64;
            // A multiplicity-m root is a simple zero of the (m-1)-th
            // derivative; Newton there locates it far beyond the cloud of
            // cluster members.
            let centroid = refine_multiple_root(&chi, members.len(), mean);
            let centroid_res = chi.evaluate(centroid)?.norm();
            let floor = chi.evaluation_noise(centroid);
            let worst_member = members
                .iter()
                .map(|&m| rs.residuals[m])
                .fold(0.0, f64::max);
            if centroid_res <= worst_member.max(floor) {
                candidates.push(centroid);
                for &m in &members {
                    grouped[m] = true;
                }
                continue;
            }
        }
        candidates.push(rs.roots[i]);
    }
    let eta = candidates
        .iter()
        .copied()
        .min_by(|a, b| {
            a.norm()
                .partial_cmp(&b.norm())
                .unwrap()
                .then(a.arg().partial_cmp(&b.arg()).unwrap())
        })
        .expect("degree >= 1 yields at least one root");
    let zeta = z1 - eta;
    let residual = (p.evaluate(zeta)? - p_z2).norm();
    let rhs = dp.norm() * eta.norm() / n as f64;
    let witness = DistortionWitness {
        z1,
        z2,
        zeta,
        residual,
        lhs,
        rhs,
        slack: lhs - rhs,
        w,
        big_r,
        eta,
        branch: WitnessBranch::Constructive,
    };
    if eta.norm() > big_r * (1.0 + 1e-9) {
        return Err(Error::OracleFailure(format!(
            "selected preimage violates |η| ≤ n|w|: |η| = {}, R = {}",
            eta.norm(),
            big_r
        )));
    }
    Ok(witness)
}
