//! Root bounds and the escape radius used to certify divergence of
//! forward orbits.

use super::{sturm::cauchy_bound_q, Poly, PolyError};
use crate::{q_to_f64, Q};
use num_traits::{One, Signed, Zero};

/// Root/escape bounds for a polynomial `f = sum c_i p^i` of degree `d >= 2`,
/// with `C = max_(i<d) |c_i|`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    /// Cauchy bound `1 + C / |c_d|`: every root has modulus strictly below it.
    pub cauchy_bound: f64,
    /// Escape radius `max(1, (C*d + 2) / |c_d|)`: if `|z| >= escape_radius`
    /// then `|f(z)| >= 2|z|`, so the forward orbit of `z` diverges.
    pub escape_radius: f64,
    /// The radius `max((2/|c_d|)^(1/(d-1)), C/|c_d| + 1)`, reported for
    /// comparison alongside the escape radius used by the orbit certifier.
    pub hickman_r: f64,
}

/// Compute [`BoundsReport`] for `f`; requires `deg f >= 2`.
pub fn root_bounds(f: &Poly) -> Result<BoundsReport, PolyError> {
    if f.is_zero() || f.degree() < 2 {
        return Err(PolyError::DegreeTooSmall {
            required: 2,
            degree: f.degree(),
        });
    }
    let d = f.degree();
    let lead = f.leading().abs();
    let c_over = {
        // C / |c_d| as an exact rational
        let mut top = Q::zero();
        for c in &f.coeffs()[..d] {
            let a = c.abs();
            if a > top {
                top = a;
            }
        }
        top / &lead
    };
    let cauchy = q_to_f64(&cauchy_bound_q(f));
    let escape = q_to_f64(&escape_radius_q(f).expect("degree checked"));
    let lead_f = q_to_f64(&lead);
    let hickman = ((2.0 / lead_f).powf(1.0 / (d as f64 - 1.0))).max(q_to_f64(&c_over) + 1.0);
    Ok(BoundsReport {
        cauchy_bound: cauchy,
        escape_radius: escape,
        hickman_r: hickman,
    })
}

/// Exact rational escape radius `max(1, (C*d + 2) / |c_d|)` for `deg f >= 2`;
/// used when a triggered escape must be confirmed in exact arithmetic.
///
/// Why it works: for `|z| >= R >= 1`,
/// `|f(z)| >= |c_d| |z|^d - C (|z|^(d-1) + ... + 1) >= |z|^(d-1) (|c_d| |z| - C d)`,
/// and `|z| >= (C d + 2)/|c_d|` makes the bracket at least 2.
pub fn escape_radius_q(f: &Poly) -> Result<Q, PolyError> {
    if f.is_zero() || f.degree() < 2 {
        return Err(PolyError::DegreeTooSmall {
            required: 2,
            degree: f.degree(),
        });
    }
    let d = f.degree();
    let lead = f.leading().abs();
    let mut top = Q::zero();
    for c in &f.coeffs()[..d] {
        let a = c.abs();
        if a > top {
            top = a;
        }
    }
    let r = (top * crate::q_from_i64(d as i64) + crate::q_from_i64(2)) / lead;
    Ok(if r < Q::one() { Q::one() } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        // 2p^2 - p^4: C = 2, d = 4, |c_d| = 1
        let f = Poly::from_i64(&[0, 0, 2, 0, -1]);
        let b = root_bounds(&f).unwrap();
        assert_eq!(b.cauchy_bound, 3.0);
        assert_eq!(b.escape_radius, 10.0);
        assert_eq!(b.hickman_r, 3.0); // max(2^(1/3), 3)

        // p^2: C = 0
        let g = Poly::from_i64(&[0, 0, 1]);
        let b = root_bounds(&g).unwrap();
        assert_eq!(b.cauchy_bound, 1.0);
        assert_eq!(b.escape_radius, 2.0);
        assert_eq!(b.hickman_r, 2.0); // max(2, 1)

        // p + 2p^3 - 2p^4 - p^5 + p^6: C = 2, d = 6
        let h = Poly::from_i64(&[0, 1, 0, 2, -2, -1, 1]);
        let b = root_bounds(&h).unwrap();
        assert_eq!(b.cauchy_bound, 3.0);
        assert_eq!(b.escape_radius, 14.0);
    }

    #[test]
    fn low_degree_is_rejected() {
        assert!(root_bounds(&Poly::from_i64(&[1, 1])).is_err());
        assert!(root_bounds(&Poly::from_i64(&[5])).is_err());
        assert!(root_bounds(&Poly::zero()).is_err());
        assert!(escape_radius_q(&Poly::from_i64(&[1, 1])).is_err());
    }

    #[test]
    fn escape_bound_certifies_growth() {
        let f = Poly::from_i64(&[0, 0, 2, 0, -1]);
        let r = root_bounds(&f).unwrap().escape_radius;
        for z in [r, -r, 2.0 * r] {
            let fz = f.eval_c(crate::C64::new(z, 0.0));
            assert!(fz.norm() >= 2.0 * z.abs());
        }
    }
}
