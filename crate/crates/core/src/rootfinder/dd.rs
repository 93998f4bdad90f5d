//! Minimal double-double ("quadruple-equivalent") arithmetic: an unevaluated
//! sum `hi + lo` of two doubles giving ~31 significant decimal digits.
//! Used only for Newton polishing and residual evaluation, where plain
//! `f64` cancellation would swamp the quantities being certified.

use crate::{q_to_f64, C64, Q};


#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    // requires |a| >= |b| (or a == 0)
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Nearest double-double to an exact rational: round once to `f64`,
    /// then round the exact remainder.
    pub fn from_q(q: &Q) -> Dd {
        let hi = q_to_f64(q);
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        let hi_q = Q::from_float(hi).expect("finite double is rational");
        let lo = q_to_f64(&(q - &hi_q));
        Dd { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn add(self, rhs: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, rhs.hi);
        let (t1, t2) = two_sum(self.lo, rhs.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        Dd { hi, lo }
    }

    pub fn sub(self, rhs: Dd) -> Dd {
        self.add(rhs.neg())
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn mul(self, rhs: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, rhs.hi);
        let p2 = p2 + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p1, p2);
        Dd { hi, lo }
    }

    pub fn div(self, rhs: Dd) -> Dd {
        let q1 = self.hi / rhs.hi;
        let r = self.sub(rhs.mul(Dd::from_f64(q1)));
        let q2 = r.hi / rhs.hi;
        let r = r.sub(rhs.mul(Dd::from_f64(q2)));
        let q3 = r.hi / rhs.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }

}

/// Complex number with double-double real and imaginary parts.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct DdC {
    pub re: Dd,
    pub im: Dd,
}

impl DdC {
    pub fn from_c64(z: C64) -> DdC {
        DdC {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    pub fn from_q_re(q: &Q) -> DdC {
        DdC {
            re: Dd::from_q(q),
            im: Dd::from_f64(0.0),
        }
    }

    pub fn to_c64(self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(self, rhs: DdC) -> DdC {
        DdC {
            re: self.re.add(rhs.re),
            im: self.im.add(rhs.im),
        }
    }

    pub fn sub(self, rhs: DdC) -> DdC {
        DdC {
            re: self.re.sub(rhs.re),
            im: self.im.sub(rhs.im),
        }
    }

    pub fn mul(self, rhs: DdC) -> DdC {
        DdC {
            re: self.re.mul(rhs.re).sub(self.im.mul(rhs.im)),
            im: self.re.mul(rhs.im).add(self.im.mul(rhs.re)),
        }
    }

    pub fn div(self, rhs: DdC) -> DdC {
        let den = rhs.norm_sqr();
        let num = self.mul(DdC {
            re: rhs.re,
            im: rhs.im.neg(),
        });
        DdC {
            re: num.re.div(den),
            im: num.im.div(den),
        }
    }

    pub fn norm_sqr(self) -> Dd {
        self.re.mul(self.re).add(self.im.mul(self.im))
    }

    /// `|self|` as a double (plenty for residual magnitudes).
    pub fn norm(self) -> f64 {
        self.norm_sqr().to_f64().max(0.0).sqrt()
    }
}

/// Evaluate the polynomial (ascending double-double coefficients) and its
/// derivative at `z`, by a joint Horner recurrence.
pub(crate) fn eval_poly_and_deriv(coeffs: &[DdC], z: DdC) -> (DdC, DdC) {
    let mut p = DdC::default();
    let mut dp = DdC::default();
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(p);
        p = p.mul(z).add(*c);
    }
    (p, dp)
}

/// Convert exact rational coefficients to double-double complex ones.
pub(crate) fn coeffs_from_q(coeffs: &[Q]) -> Vec<DdC> {
    coeffs.iter().map(DdC::from_q_re).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Signed;

    #[test]
    fn from_q_captures_106_bits() {
        // 1/3 in double-double: hi = nearest double, lo = the remainder.
        let third = Q::new(BigInt::from(1), BigInt::from(3));
        let d = Dd::from_q(&third);
        assert_eq!(d.hi, 1.0 / 3.0);
        assert!(d.lo.abs() < f64::EPSILON);
        assert!(d.lo != 0.0);
        // round-trip error below 2^-100
        let back = Q::from_float(d.hi).unwrap() + Q::from_float(d.lo).unwrap();
        let err = (third - back).abs();
        assert!(err < Q::new(BigInt::from(1), BigInt::from(2u8).pow(100)));
    }

    #[test]
    fn arithmetic_beats_f64_cancellation() {
        // (1 + 2^-60) - 1 == 2^-60 exactly in double-double
        let tiny = 2f64.powi(-60);
        let one_plus = Dd::from_f64(1.0).add(Dd::from_f64(tiny));
        let diff = one_plus.sub(Dd::from_f64(1.0));
        assert_eq!(diff.to_f64(), tiny);

        // multiplication keeps the full product: (1+2^-30)^2
        let x = Dd::from_f64(1.0).add(Dd::from_f64(2f64.powi(-30)));
        let sq = x.mul(x);
        let expect_lo = 2f64.powi(-60); // 1 + 2^-29 + 2^-60
        let residue = sq.sub(Dd::from_f64(1.0)).sub(Dd::from_f64(2f64.powi(-29)));
        assert_eq!(residue.to_f64(), expect_lo);
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = Dd::from_q(&Q::new(BigInt::from(355), BigInt::from(113)));
        let b = Dd::from_q(&Q::new(BigInt::from(7), BigInt::from(3)));
        let q = a.div(b);
        let back = q.mul(b).sub(a);
        assert!(back.to_f64().abs() < 1e-30);
    }

    #[test]
    fn complex_division_and_norm() {
        let a = DdC::from_c64(C64::new(3.0, 4.0));
        assert_eq!(a.norm(), 5.0);
        let b = DdC::from_c64(C64::new(1.0, -2.0));
        let q = a.div(b);
        let back = q.mul(b).sub(a);
        assert!(back.norm() < 1e-30);
    }

    #[test]
    fn horner_evaluates_polynomial_and_derivative() {
        // f = 1 - 2p + 3p^2, f' = -2 + 6p at z = 2+i
        let coeffs: Vec<DdC> = [1.0, -2.0, 3.0]
            .iter()
            .map(|&c| DdC::from_c64(C64::new(c, 0.0)))
            .collect();
        let z = DdC::from_c64(C64::new(2.0, 1.0));
        let (p, dp) = eval_poly_and_deriv(&coeffs, z);
        // f(2+i) = 1 - 2(2+i) + 3(3+4i) = 6 + 10i
        assert!((p.to_c64() - C64::new(6.0, 10.0)).norm() < 1e-30);
        // f'(2+i) = -2 + 6(2+i) = 10 + 6i
        assert!((dp.to_c64() - C64::new(10.0, 6.0)).norm() < 1e-30);
    }
}
