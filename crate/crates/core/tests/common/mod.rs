use koebe_poly::{Complex, Polynomial};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_unit_box(rng: &mut ChaCha8Rng) -> Complex {
    Complex::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// Random polynomial of exact degree `degree` with unit-box coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> Polynomial {
    let mut coeffs: Vec<Complex> = (0..=degree).map(|_| random_unit_box(rng)).collect();
    while coeffs[degree].norm() < 0.1 {
        coeffs[degree] = random_unit_box(rng);
    }
    Polynomial::new(coeffs, degree).unwrap()
}

/// Random polynomial with q(0) = 0 exactly and unit-box coefficients.
pub fn random_poly_zero_const(rng: &mut ChaCha8Rng, degree: usize) -> Polynomial {
    let mut coeffs: Vec<Complex> = (0..=degree).map(|_| random_unit_box(rng)).collect();
    coeffs[0] = Complex::new(0.0, 0.0);
    while coeffs[degree].norm() < 0.1 {
        coeffs[degree] = random_unit_box(rng);
    }
    Polynomial::new(coeffs, degree).unwrap()
}

/// A value certified outside q(Δ): scale up from the maximum boundary
/// modulus in a random direction until membership agrees.
pub fn omitted_value(
    rng: &mut ChaCha8Rng,
    q: &Polynomial,
) -> Option<Complex> {
    use koebe_poly::{membership, Disk, MembershipVerdict};
    let mut max_mod = 0.0f64;
    for j in 0..512 {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / 512.0;
        let v = q.evaluate(Complex::from_polar(1.0, theta)).unwrap().norm();
        max_mod = max_mod.max(v);
    }
    let phi = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    let mut w = Complex::from_polar(1.1 * max_mod.max(1e-6), phi);
    for _ in 0..20 {
        let m = membership(q, w, &Disk::unit_open(), 1e-9).unwrap();
        if m.verdict == MembershipVerdict::Outside {
            return Some(w);
        }
        w *= 1.5;
    }
    None
}
