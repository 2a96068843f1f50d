//! Coefficient bounds for omitted values, guaranteed covering disks, the
//! sharpness extremals, and the brute-force image oracle they are checked
//! against.
//!
//! For `q(0) = 0` and any value `w` omitted by `q` on the unit disk,
//! `|q̂(k)| ≤ C(n,k)|w|`; hence `q(Δ_R)` always contains the disk of radius
//! `R · n(q̃)` about the origin, and at least `R/n` when `q'(0) = 1`. The
//! extremal polynomials realize equality. The oracle estimates the true
//! inradius by sampling the image of the source circle and keeping only
//! points the membership test cannot place strictly inside.

use crate::poly::{binomial, Complex, Disk, Polynomial};
use crate::rootfind::{classify_point, find_roots};
use crate::stability::DEFAULT_MARGIN;
use crate::{Error, Result};

const TAU: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipVerdict {
    Inside,
    Outside,
    BoundaryMarginal,
    /// The root solve behind the test did not converge; no verdict.
    Indeterminate,
}

/// Outcome of the preimage-based membership test `w ∈ q(d)?`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipResult {
    pub verdict: MembershipVerdict,
    /// Present iff `verdict == Inside`: a preimage strictly inside `d`.
    pub witness_preimage: Option<Complex>,
}

/// Decide whether `w` lies in the image `q(d)` by solving `q(z) = w` and
/// classifying the preimages against `d`.
///
/// Classification widens the margin per root by the solver's accuracy
/// estimate, so clustered preimages near the boundary yield
/// `BoundaryMarginal` rather than a false `Inside`/`Outside`.
pub fn membership(q: &Polynomial, w: Complex, d: &Disk, margin: f64) -> Result<MembershipResult> {
    if !w.re.is_finite() || !w.im.is_finite() {
        return Err(Error::NonFinite("membership value w"));
    }
    if margin <= 0.0 {
        return Err(Error::Precondition("margin must be > 0".into()));
    }
    match q.actual_degree() {
        Some(deg) if deg >= 1 => {}
        _ => return Err(Error::Precondition("membership requires a non-constant q".into())),
    }
    let chi = q.subtract_const(w);
    if chi.is_zero() {
        // q constant is excluded above; unreachable, kept for totality.
        return Err(Error::Precondition("membership requires a non-constant q".into()));
    }
    let rs = find_roots(&chi)?;
    if !rs.converged {
        return Ok(MembershipResult {
            verdict: MembershipVerdict::Indeterminate,
            witness_preimage: None,
        });
    }
    let mut best_inside: Option<(f64, Complex)> = None;
    let mut all_outside = true;
    for ((r, u), res) in rs.roots.iter().zip(&rs.uncertainties).zip(&rs.residuals) {
        match classify_point(*r, d, margin.max(*u)) {
            crate::rootfind::RootLocation::Inside => {
                all_outside = false;
                if best_inside.is_none_or(|(b, _)| *res < b) {
                    best_inside = Some((*res, *r));
                }
            }
            crate::rootfind::RootLocation::Marginal => all_outside = false,
            crate::rootfind::RootLocation::Outside => {}
        }
    }
    Ok(if let Some((_, z)) = best_inside {
        MembershipResult { verdict: MembershipVerdict::Inside, witness_preimage: Some(z) }
    } else if all_outside {
        MembershipResult { verdict: MembershipVerdict::Outside, witness_preimage: None }
    } else {
        MembershipResult { verdict: MembershipVerdict::BoundaryMarginal, witness_preimage: None }
    })
}

/// One row of the coefficient-bound report: `|q̂(k)|` against `C(n,k)|w|`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Lemma3Row {
    pub k: usize,
    pub coeff_abs: f64,
    pub bound: f64,
    pub slack: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma3Report {
    pub rows: Vec<Lemma3Row>,
    pub pass: bool,
}

/// Check `|q̂(k)| ≤ C(n,k)|w|` for every k = 1…n, after verifying that `w`
/// really is omitted by `q` on the open unit disk.
pub fn lemma3_bound_check(q: &Polynomial, w: Complex) -> Result<Lemma3Report> {
    let c0 = q.coeff(0);
    if c0.re != 0.0 || c0.im != 0.0 {
        return Err(Error::Precondition(
            "coefficient bound requires q(0) = 0 exactly".into(),
        ));
    }
    let m = membership(q, w, &Disk::unit_open(), DEFAULT_MARGIN)?;
    match m.verdict {
        MembershipVerdict::Inside => {
            return Err(Error::Precondition(
                "w lies inside q(Δ); the coefficient bound does not apply".into(),
            ))
        }
        MembershipVerdict::Indeterminate => {
            return Err(Error::OracleFailure("membership test for w was indeterminate".into()))
        }
        MembershipVerdict::Outside | MembershipVerdict::BoundaryMarginal => {}
    }
    let n = q.nominal_degree();
    let wabs = w.norm();
    let mut rows = Vec::with_capacity(n);
    let mut pass = true;
    for k in 1..=n {
        let bound = binomial(n, k) * wabs;
        let coeff_abs = q.coeff(k).norm();
        let slack = bound - coeff_abs;
        let row_pass = slack >= -1e-10 * bound;
        pass &= row_pass;
        rows.push(Lemma3Row { k, coeff_abs, bound, slack, pass: row_pass });
    }
    Ok(Lemma3Report { rows, pass })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CoveringStatus {
    Verified,
    Refuted,
    /// `q ≡ 0`: bound 0, nothing to check.
    Degenerate,
}

/// A guaranteed covering radius together with the evidence gathered for it.
#[derive(Debug, Clone, PartialEq)]
pub struct CoveringCertificate {
    /// Guaranteed radius `R · n(q̃)` of a disk around the origin inside `q(Δ_R)`.
    pub bound: f64,
    pub radius: f64,
    /// Brute-force inradius estimate, when one was computed alongside.
    pub oracle_inradius: Option<f64>,
    pub grid_size: Option<usize>,
    /// `(θ, |w|)` samples on the spot-check circle that failed to verify,
    /// or boundary samples the oracle kept as uncovered.
    pub uncovered_boundary_samples: Vec<(f64, f64)>,
    pub status: CoveringStatus,
}

/// Guaranteed lower bound on the inradius of `q(Δ_R)` at the origin:
/// `bound = R · n(q̃)` with `q̃(z) = q(Rz)/R`. The bound is spot-checked by
/// membership at 64 points just inside the claimed circle; any failure marks
/// the certificate `REFUTED` (a theorem violation, hence a test failure).
pub fn covering_lower_bound(q: &Polynomial, radius: f64) -> Result<CoveringCertificate> {
    let c0 = q.coeff(0);
    if c0.re != 0.0 || c0.im != 0.0 {
        return Err(Error::Precondition("covering bound requires q(0) = 0".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Precondition("covering bound requires R > 0".into()));
    }
    if q.nominal_degree() < 1 {
        return Err(Error::Precondition("covering bound requires degree >= 1".into()));
    }
    if q.is_zero() {
        return Ok(CoveringCertificate {
            bound: 0.0,
            radius,
            oracle_inradius: None,
            grid_size: None,
            uncovered_boundary_samples: Vec::new(),
            status: CoveringStatus::Degenerate,
        });
    }
    let bound = radius * q.rescale(radius)?.norm_nq();
    let source = Disk::origin_open(radius);
    let spot_radius = bound * (1.0 - 1e-6);
    let mut uncovered = Vec::new();
    for j in 0..64usize {
        let theta = TAU * j as f64 / 64.0;
        let w = Complex::from_polar(spot_radius, theta);
        let m = membership(q, w, &source, DEFAULT_MARGIN)?;
        if m.verdict != MembershipVerdict::Inside {
            uncovered.push((theta, spot_radius));
        }
    }
    let status = if uncovered.is_empty() { CoveringStatus::Verified } else { CoveringStatus::Refuted };
    Ok(CoveringCertificate {
        bound,
        radius,
        oracle_inradius: None,
        grid_size: None,
        uncovered_boundary_samples: uncovered,
        status,
    })
}

/// Brute-force estimate of the inradius of `q(Δ_R)` at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct InradiusEstimate {
    /// Minimum modulus over kept boundary samples; `+∞` when no sample on
    /// this grid could be placed outside the image.
    pub value: f64,
    pub grid: usize,
    /// `(θ, |q(Re^{iθ})|)` for every kept (not-strictly-inside) sample.
    pub kept: Vec<(f64, f64)>,
    /// Angle at which the minimum was attained, if any sample was kept.
    pub argmin_theta: Option<f64>,
}

fn membership_keeps(q: &Polynomial, w: Complex, source: &Disk) -> Result<bool> {
    let m = membership(q, w, source, DEFAULT_MARGIN)?;
    match m.verdict {
        MembershipVerdict::Inside => Ok(false),
        MembershipVerdict::Outside | MembershipVerdict::BoundaryMarginal => Ok(true),
        MembershipVerdict::Indeterminate => Err(Error::OracleFailure(
            "indeterminate membership while sampling the image boundary".into(),
        )),
    }
}

/// Estimate the inradius of `q(Δ_R)` at the origin by brute force.
///
/// Samples `w_j = q(R e^{iθ_j})` on the source circle (whose image contains
/// the boundary of `q(Δ_R)`), keeps the samples membership cannot place
/// strictly inside the image, and returns their minimum modulus after one
/// bisection refinement pass in θ around the minimizer. A sample whose only
/// preimages sit on the source circle itself is kept, never counted inside.
pub fn inradius_oracle(q: &Polynomial, radius: f64, grid: usize) -> Result<InradiusEstimate> {
    let c0 = q.coeff(0);
    if c0.re != 0.0 || c0.im != 0.0 {
        return Err(Error::Precondition("inradius oracle requires q(0) = 0".into()));
    }
    match q.actual_degree() {
        Some(d) if d >= 1 => {}
        None => {
            return Ok(InradiusEstimate { value: 0.0, grid, kept: Vec::new(), argmin_theta: None })
        }
        _ => return Err(Error::Precondition("inradius oracle requires a non-constant q".into())),
    }
    if grid < 256 {
        return Err(Error::Precondition("oracle grid must be >= 256".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Precondition("inradius oracle requires R > 0".into()));
    }
    let source = Disk::origin_open(radius);
    let mut kept: Vec<(f64, f64)> = Vec::new();
    let mut min: Option<(f64, f64)> = None; // (|w|, θ); smallest θ wins ties
    for j in 0..grid {
        let theta = TAU * j as f64 / grid as f64;
        let w = q.evaluate(Complex::from_polar(radius, theta))?;
        if !membership_keeps(q, w, &source)? {
            continue;
        }
        let wabs = w.norm();
        kept.push((theta, wabs));
        if min.is_none_or(|(m, _)| wabs < m) {
            min = Some((wabs, theta));
        }
    }
    let Some((mut best, theta0)) = min else {
        return Ok(InradiusEstimate { value: f64::INFINITY, grid, kept, argmin_theta: None });
    };
    // One refinement pass: bisect |q(Re^{iθ})| on the bracket around the
    // minimizing sample, then accept the refined point only if the keep
    // filter still holds for it.
    let h = TAU / grid as f64;
    let (mut lo, mut hi) = (theta0 - h, theta0 + h);
    let modulus = |theta: f64| -> f64 {
        q.evaluate(Complex::from_polar(radius, theta)).map(|v| v.norm()).unwrap_or(f64::INFINITY)
    };
    for _ in 0..48 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if modulus(m1) <= modulus(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let theta_ref = 0.5 * (lo + hi);
    let w_ref = q.evaluate(Complex::from_polar(radius, theta_ref))?;
    let mut argmin = theta0;
    if w_ref.norm() < best && membership_keeps(q, w_ref, &source)? {
        best = w_ref.norm();
        argmin = theta_ref;
    }
    Ok(InradiusEstimate { value: best, grid, kept, argmin_theta: Some(argmin) })
}

/// [`covering_lower_bound`] with the oracle estimate filled in alongside.
pub fn covering_certificate(q: &Polynomial, radius: f64, grid: usize) -> Result<CoveringCertificate> {
    let mut cert = covering_lower_bound(q, radius)?;
    if cert.status != CoveringStatus::Degenerate {
        let est = inradius_oracle(q, radius, grid)?;
        cert.oracle_inradius = Some(est.value);
        cert.grid_size = Some(grid);
        if cert.uncovered_boundary_samples.is_empty() {
            cert.uncovered_boundary_samples = est.kept;
        }
    }
    Ok(cert)
}

/// The sharpness polynomial `q(z) = w − w(1−z)^n` in expanded coefficient
/// form: `q̂(k) = (−1)^{k+1} C(n,k) w`, constant term exactly zero.
pub fn extremal_lemma3(n: usize, w: Complex) -> Result<Polynomial> {
    if n < 1 {
        return Err(Error::Precondition("extremal requires n >= 1".into()));
    }
    if w.norm() == 0.0 {
        return Err(Error::Precondition("extremal requires w != 0".into()));
    }
    let mut coeffs = vec![Complex::new(0.0, 0.0); n + 1];
    #[allow(clippy::needless_range_loop)]
    for k in 1..=n {
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        coeffs[k] = w * (sign * binomial(n, k));
    }
    Polynomial::new(coeffs, n)
}

/// The sharpness polynomial `q(z) = (R/n)((1 + z/R)^n − 1)` in expanded
/// form: `q̂(k) = C(n,k) R^(1−k) / n`; the linear coefficient is exactly 1.
pub fn extremal_corollary3(n: usize, radius: f64) -> Result<Polynomial> {
    if n < 1 {
        return Err(Error::Precondition("extremal requires n >= 1".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Precondition("extremal requires R > 0".into()));
    }
    let mut coeffs = vec![Complex::new(0.0, 0.0); n + 1];
    coeffs[1] = Complex::new(1.0, 0.0);
    #[allow(clippy::needless_range_loop)]
    for k in 2..=n {
        coeffs[k] = Complex::new(binomial(n, k) * radius.powi(1 - k as i32) / n as f64, 0.0);
    }
    Polynomial::new(coeffs, n)
}
