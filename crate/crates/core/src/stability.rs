//! Schur stability and its dual reading through omitted values of the
//! reversed polynomial.
//!
//! A polynomial with nonzero leading coefficient has all roots strictly
//! inside the unit disk exactly when its n-inversion never takes the value 0
//! on the closed disk. Both sides are computed by independent numerical
//! routes (roots on one side, a boundary-grid modulus minimum backed by a
//! root-distance floor on the other) so that checking the equivalence is a
//! genuine cross-check.

use crate::poly::{Complex, Disk, Polynomial};
use crate::rootfind::{classify_roots_certified, find_roots, RootLocation};
use crate::{Error, Result};

pub const DEFAULT_MARGIN: f64 = 1e-9;
pub const BOUNDARY_GRID: usize = 1024;

/// Three-valued outcome of a boundary-sensitive predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ternary {
    Holds,
    Fails,
    Marginal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stability {
    Stable,
    Unstable,
    Marginal,
}

/// Evidence accompanying a stability verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StabilityWitness {
    /// A root with modulus at or beyond the margin band.
    OffendingRoot(Complex),
    /// Minimum modulus of the n-inversion on the unit circle grid.
    MinBoundaryModulus(f64),
    /// Marginal verdicts carry no certificate.
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityVerdict {
    pub verdict: Stability,
    pub witness: StabilityWitness,
    pub margin: f64,
}

fn min_boundary_modulus(p: &Polynomial, grid: usize) -> f64 {
    let mut min = f64::INFINITY;
    for j in 0..grid {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / grid as f64;
        let v = p.evaluate(Complex::from_polar(1.0, theta)).unwrap().norm();
        if v < min {
            min = v;
        }
    }
    min
}

/// Schur stability of `χ`: all roots strictly inside the open unit disk.
///
/// Requires a nonzero leading coefficient at the nominal degree. Stable
/// verdicts carry the minimum boundary modulus of the n-inversion; unstable
/// verdicts carry the offending root of largest modulus.
pub fn is_schur_stable(chi: &Polynomial, margin: f64) -> Result<StabilityVerdict> {
    if margin <= 0.0 {
        return Err(Error::Precondition("margin must be > 0".into()));
    }
    if chi.actual_degree() != Some(chi.nominal_degree()) || chi.nominal_degree() == 0 {
        return Err(Error::Precondition(
            "leading coefficient a_n must be nonzero (degree >= 1)".into(),
        ));
    }
    let rs = find_roots(chi)?;
    if !rs.converged {
        return Err(Error::NonConvergence);
    }
    let cls = classify_roots_certified(&rs, &Disk::unit_open(), margin);
    let outside = rs
        .roots
        .iter()
        .zip(&cls.verdicts)
        .filter(|(_, v)| **v == RootLocation::Outside)
        .map(|(r, _)| *r)
        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap());
    let verdict = if let Some(root) = outside {
        StabilityVerdict {
            verdict: Stability::Unstable,
            witness: StabilityWitness::OffendingRoot(root),
            margin,
        }
    } else if cls.any_marginal() {
        StabilityVerdict { verdict: Stability::Marginal, witness: StabilityWitness::None, margin }
    } else {
        let min = min_boundary_modulus(&chi.n_inverse(), BOUNDARY_GRID);
        StabilityVerdict {
            verdict: Stability::Stable,
            witness: StabilityWitness::MinBoundaryModulus(min),
            margin,
        }
    };
    Ok(verdict)
}

/// Does `χ*` omit the value 0 on the closed unit disk?
///
/// Two independent routes must agree: no root within `1 + margin` of the
/// origin, and the boundary-grid modulus minimum above the rigorous floor
/// `|lead| · Π(|root| − 1)` implied by the root distances. Disagreement is
/// reported as `Marginal`, never resolved silently.
pub fn zero_omitted_closed_disk(chistar: &Polynomial, margin: f64) -> Result<Ternary> {
    if margin <= 0.0 {
        return Err(Error::Precondition("margin must be > 0".into()));
    }
    match chistar.actual_degree() {
        None => return Ok(Ternary::Fails), // zero polynomial attains 0 everywhere
        Some(0) => return Ok(Ternary::Holds),
        Some(_) => {}
    }
    let rs = find_roots(chistar)?;
    if !rs.converged {
        return Ok(Ternary::Marginal);
    }
    let mut any_marginal = false;
    for (r, u) in rs.roots.iter().zip(&rs.uncertainties) {
        let band = margin.max(*u);
        let m = r.norm();
        if m < 1.0 - band {
            return Ok(Ternary::Fails);
        }
        if m <= 1.0 + band {
            any_marginal = true;
        }
    }
    if any_marginal {
        return Ok(Ternary::Marginal);
    }
    // Cross-check: grid minimum on |z| = 1 must respect the root-distance
    // floor (it is a true lower bound for the modulus on the circle).
    let deg = chistar.actual_degree().unwrap();
    let lead = chistar.coeff(deg).norm();
    let floor = rs.roots.iter().map(|r| r.norm() - 1.0).fold(lead, |acc, d| acc * d);
    let grid_min = min_boundary_modulus(chistar, BOUNDARY_GRID);
    if grid_min > 0.0 && grid_min >= floor * (1.0 - 1e-6) {
        Ok(Ternary::Holds)
    } else {
        Ok(Ternary::Marginal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Agreement {
    Agree,
    Disagree,
    Marginal,
}

/// One lemma, both sides evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaSides {
    /// Verdict computed from root locations.
    pub root_side: Ternary,
    /// Verdict computed from omitted-value / grid evidence.
    pub omitted_side: Ternary,
    pub agreement: Agreement,
}

fn agree(a: Ternary, b: Ternary) -> Agreement {
    match (a, b) {
        (Ternary::Marginal, _) | (_, Ternary::Marginal) => Agreement::Marginal,
        (x, y) if x == y => Agreement::Agree,
        _ => Agreement::Disagree,
    }
}

/// Report of the two root/omitted-value equivalences, each side evaluated by
/// its own numerical route. Entries are `None` when the corresponding
/// precondition (`a_n ≠ 0`, `a_0 ≠ 0`) does not hold.
#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    /// Roots of χ in Δ ⟺ 0 omitted by χ* on the closed disk.
    pub open_disk_duality: Option<LemmaSides>,
    /// 0 omitted by χ on Δ ⟺ roots of χ* in the closed disk.
    pub closed_disk_duality: Option<LemmaSides>,
    pub margin: f64,
}

/// Evaluate both dualities on `χ` independently and report agreement.
pub fn lemma_equivalence_check(chi: &Polynomial, margin: f64) -> Result<LemmaReport> {
    if margin <= 0.0 {
        return Err(Error::Precondition("margin must be > 0".into()));
    }
    let n = chi.nominal_degree();
    let a0 = chi.coeff(0);
    let an = chi.coeff(n);
    let chistar = chi.n_inverse();

    let open_disk_duality = if (an.re != 0.0 || an.im != 0.0) && n >= 1 {
        let root_side = match is_schur_stable(chi, margin)?.verdict {
            Stability::Stable => Ternary::Holds,
            Stability::Unstable => Ternary::Fails,
            Stability::Marginal => Ternary::Marginal,
        };
        let omitted_side = zero_omitted_closed_disk(&chistar, margin)?;
        Some(LemmaSides { root_side, omitted_side, agreement: agree(root_side, omitted_side) })
    } else {
        None
    };

    let closed_disk_duality = if a0.re != 0.0 || a0.im != 0.0 {
        // Omitted side: 0 ∉ χ(Δ) means no root of χ strictly inside Δ.
        let omitted_side = match chi.actual_degree() {
            Some(d) if d >= 1 => {
                let rs = find_roots(chi)?;
                if !rs.converged {
                    Ternary::Marginal
                } else {
                    let cls = classify_roots_certified(&rs, &Disk::unit_open(), margin);
                    if cls.verdicts.contains(&RootLocation::Inside) {
                        Ternary::Fails
                    } else if cls.any_marginal() {
                        Ternary::Marginal
                    } else {
                        Ternary::Holds
                    }
                }
            }
            _ => Ternary::Holds, // nonzero constant never attains 0
        };
        // Root side: all roots of χ* in the closed unit disk (boundary roots
        // can genuinely occur, so inside-or-marginal counts as holding).
        let root_side = match chistar.actual_degree() {
            Some(d) if d >= 1 => {
                let rs = find_roots(&chistar)?;
                if !rs.converged {
                    Ternary::Marginal
                } else {
                    let cls = classify_roots_certified(&rs, &Disk::unit_closed(), margin);
                    if cls.verdicts.contains(&RootLocation::Outside) {
                        Ternary::Fails
                    } else {
                        Ternary::Holds
                    }
                }
            }
            _ => Ternary::Holds,
        };
        Some(LemmaSides { root_side, omitted_side, agreement: agree(root_side, omitted_side) })
    } else {
        None
    };

    Ok(LemmaReport { open_disk_duality, closed_disk_duality, margin })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn linear_stable_and_unstable() {
        let stable = Polynomial::from_real(&[-0.5, 1.0]).unwrap();
        let v = is_schur_stable(&stable, DEFAULT_MARGIN).unwrap();
        assert_eq!(v.verdict, Stability::Stable);
        if let StabilityWitness::MinBoundaryModulus(m) = v.witness {
            assert!(m > 0.0);
        } else {
            panic!("expected boundary witness");
        }

        let unstable = Polynomial::from_real(&[-2.0, 1.0]).unwrap();
        let v = is_schur_stable(&unstable, DEFAULT_MARGIN).unwrap();
        assert_eq!(v.verdict, Stability::Unstable);
        match v.witness {
            StabilityWitness::OffendingRoot(r) => assert!((r - c(2.0, 0.0)).norm() < 1e-12),
            _ => panic!("expected offending root"),
        }
    }

    #[test]
    fn vanishing_leading_coefficient_is_rejected() {
        let p = Polynomial::new(vec![c(1.0, 0.0), c(1.0, 0.0)], 3).unwrap();
        assert!(matches!(is_schur_stable(&p, 1e-9), Err(Error::Precondition(_))));
    }

    #[test]
    fn stable_product_and_its_inverse_boundary_minimum() {
        // (z - 0.9)(z - 0.5i) = z^2 - (0.9 + 0.5i)z + 0.45i
        let chi = Polynomial::from_coeffs(vec![c(0.0, 0.45), c(-0.9, -0.5), c(1.0, 0.0)]).unwrap();
        let v = is_schur_stable(&chi, DEFAULT_MARGIN).unwrap();
        assert_eq!(v.verdict, Stability::Stable);
        match v.witness {
            StabilityWitness::MinBoundaryModulus(m) => assert!(m > 0.0),
            _ => panic!(),
        }
        assert_eq!(
            zero_omitted_closed_disk(&chi.n_inverse(), DEFAULT_MARGIN).unwrap(),
            Ternary::Holds
        );
    }

    #[test]
    fn omitted_value_cases() {
        // 1 - z/2: min boundary modulus 1/2, no root in the closed disk.
        let p = Polynomial::from_real(&[1.0, -0.5]).unwrap();
        assert_eq!(zero_omitted_closed_disk(&p, DEFAULT_MARGIN).unwrap(), Ternary::Holds);

        // 1 - z vanishes on the boundary: marginal, not a clean verdict.
        let p = Polynomial::from_real(&[1.0, -1.0]).unwrap();
        assert_eq!(zero_omitted_closed_disk(&p, DEFAULT_MARGIN).unwrap(), Ternary::Marginal);

        // Nonzero constant omits everything but itself.
        let p = Polynomial::from_real(&[3.0]).unwrap();
        assert_eq!(zero_omitted_closed_disk(&p, DEFAULT_MARGIN).unwrap(), Ternary::Holds);

        // Zero polynomial attains 0.
        let p = Polynomial::new(vec![], 2).unwrap();
        assert_eq!(zero_omitted_closed_disk(&p, DEFAULT_MARGIN).unwrap(), Ternary::Fails);
    }

    #[test]
    fn equivalence_on_constructed_roots() {
        // (z - 0.3)(z - 0.7): both sides hold.
        let chi = Polynomial::from_real(&[0.21, -1.0, 1.0]).unwrap();
        let rep = lemma_equivalence_check(&chi, DEFAULT_MARGIN).unwrap();
        let l1 = rep.open_disk_duality.unwrap();
        assert_eq!(l1.root_side, Ternary::Holds);
        assert_eq!(l1.omitted_side, Ternary::Holds);
        assert_eq!(l1.agreement, Agreement::Agree);

        // (z - 0.3)(z - 3): both sides fail (0 = χ*(1/3) with 1/3 in the disk).
        let chi = Polynomial::from_real(&[0.9, -3.3, 1.0]).unwrap();
        let rep = lemma_equivalence_check(&chi, DEFAULT_MARGIN).unwrap();
        let l1 = rep.open_disk_duality.unwrap();
        assert_eq!(l1.root_side, Ternary::Fails);
        assert_eq!(l1.omitted_side, Ternary::Fails);
        assert_eq!(l1.agreement, Agreement::Agree);
    }
}
