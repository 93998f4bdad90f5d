//! Dense univariate polynomials over arbitrary-precision rationals.
//!
//! Coefficients are stored in ascending order of the exponent and the
//! representation is kept normalized: the zero polynomial is the empty
//! coefficient vector, and every other polynomial ends with a nonzero
//! leading coefficient. All ring operations are exact.

mod bounds;
mod fform;
mod sturm;

pub use bounds::{escape_radius_q, root_bounds, BoundsReport};
pub(crate) use sturm::cauchy_bound_q;
pub use fform::FForm;
pub use sturm::{
    count_real_roots_in, isolate_real_roots, real_roots_with_multiplicity, sturm_chain,
    IsolatedRoot,
};

use crate::{q_from_i64, q_to_f64, C64, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Errors reported by polynomial-level operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    /// Division (or a derived operation such as gcd) met a zero divisor.
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// The polynomial degree exceeds the requested basis degree `m`.
    #[error("degree {degree} exceeds the requested basis degree {m}")]
    DegreeTooLarge { degree: usize, m: u32 },
    /// An operation requires a higher-degree polynomial than it was given.
    #[error("operation requires degree at least {required}, got {degree}")]
    DegreeTooSmall { required: usize, degree: usize },
}

/// A dense univariate polynomial with exact rational coefficients, in the
/// indeterminate `p`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    /// Build a polynomial from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Convenience constructor from machine integers (ascending powers).
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| q_from_i64(c)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Poly {
            coeffs: vec![Q::one()],
        }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `c * p^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// The identity polynomial `p`.
    pub fn var() -> Self {
        Poly::monomial(Q::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree of the polynomial; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Ascending coefficient slice (empty for the zero polynomial).
    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `p^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Exact evaluation at a rational point (Horner).
    pub fn eval_q(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Double-precision evaluation at a complex point (Horner).
    pub fn eval_c(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + C64::new(q_to_f64(c), 0.0);
        }
        acc
    }

    /// Coefficients converted to `f64`, ascending.
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(q_to_f64).collect()
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q_from_i64(i as i64))
                .collect(),
        )
    }

    /// Polynomial composition `self(other(p))` via Horner's rule.
    pub fn compose(&self, other: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Poly::constant(c.clone());
        }
        acc
    }

    /// `self^k` by repeated multiplication.
    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiply by the scalar `c`.
    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divide by the leading coefficient; the zero polynomial is returned as is.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lead = self.leading();
        Poly {
            coeffs: self.coeffs.iter().map(|a| a / &lead).collect(),
        }
    }

    /// Exact Euclidean division: returns `(quotient, remainder)` with
    /// `self = q * divisor + r` and `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Q::zero(); self.degree() - dd + 1];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let factor = &rem[i] / &lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                let val = &rem[idx] - &(dc * &factor);
                rem[idx] = val;
            }
            quo[i - dd] = factor;
        }
        Ok((Poly::new(quo), Poly::new(rem)))
    }

    /// Monic greatest common divisor (Euclid's algorithm over the rationals).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition. Returns pairs `(g, k)` of monic,
    /// pairwise-coprime, square-free factors with `self = lc * prod g^k`;
    /// factors of multiplicity without content (constant `g`) are omitted.
    pub fn square_free_decomposition(&self) -> Vec<(Poly, u32)> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let df = f.derivative();
        let g0 = f.gcd(&df);
        let mut out = Vec::new();
        if g0.degree() == 0 {
            out.push((f, 1));
            return out;
        }
        let mut b = f.divrem(&g0).expect("gcd divides").0;
        let mut c = df.divrem(&g0).expect("gcd divides f'").0;
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if a.degree() > 0 {
                out.push((a.monic(), i));
            }
            b = b.divrem(&a).expect("factor divides").0;
            c = d.divrem(&a).expect("factor divides").0;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// The square-free part: the monic product of the distinct irreducible
    /// factors of `self`.
    pub fn square_free_part(&self) -> Poly {
        let mut acc = Poly::one();
        for (g, _) in self.square_free_decomposition() {
            acc = &acc * &g;
        }
        acc
    }

    /// Write `self = p^k * g` with `g(0) != 0`; returns `(k, g)`.
    /// The zero polynomial deflates to `(0, 0)`.
    pub fn deflate_zero_root(&self) -> (u32, Poly) {
        if self.is_zero() {
            return (0, Poly::zero());
        }
        let k = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("normalized nonzero polynomial");
        (k as u32, Poly::new(self.coeffs[k..].to_vec()))
    }

    /// `self(-p)`: reflect through the imaginary axis.
    pub fn reflect(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Split into even and odd parts: `self(p) = fe(p^2) + p * fo(p^2)`.
    pub fn even_odd_split(&self) -> (Poly, Poly) {
        let mut even = Vec::new();
        let mut odd = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % 2 == 0 {
                even.push(c.clone());
            } else {
                odd.push(c.clone());
            }
        }
        (Poly::new(even), Poly::new(odd))
    }

    /// Number of sign changes in the coefficient sequence (Descartes' rule:
    /// an upper bound, of matching parity, on the positive real roots).
    pub fn sign_changes(&self) -> usize {
        let mut changes = 0usize;
        let mut last = 0i32;
        for c in &self.coeffs {
            let s = sign_q(c);
            if s != 0 {
                if last != 0 && s != last {
                    changes += 1;
                }
                last = s;
            }
        }
        changes
    }

    /// Clear denominators: returns the integer coefficient vector of
    /// `scale * self` where `scale` is the lcm of all coefficient denominators.
    pub(crate) fn integer_coeffs(&self) -> Vec<BigInt> {
        use num_integer::Integer;
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        self.coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect()
    }
}

pub(crate) fn sign_q(q: &Q) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let val = &out[i + j] + &(a * b);
                out[i + j] = val;
            }
        }
        Poly::new(out)
    }
}

fn fmt_coeff(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_term(c: &Q, i: usize) -> String {
    let mag = c.abs();
    let power = match i {
        0 => String::new(),
        1 => "p".to_string(),
        _ => format!("p^{i}"),
    };
    if i == 0 {
        fmt_coeff(&mag)
    } else if mag.is_one() {
        power
    } else {
        format!("{}*{}", fmt_coeff(&mag), power)
    }
}

impl fmt::Display for Poly {
    /// Ascending-power rendering, e.g. `2*p^2 - p^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{}", fmt_term(c, i))?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}", fmt_term(c, i))?;
            } else {
                write!(f, " + {}", fmt_term(c, i))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Poly {
    /// Render with the power of `p` at the origin factored out,
    /// e.g. `p^2 * (2 - p^2)`. Polynomials without a root at the origin
    /// (and the zero polynomial) render as in [`Display`](fmt::Display).
    pub fn display_factored(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let (k, g) = self.deflate_zero_root();
        let prefix = match k {
            0 => return format!("{self}"),
            1 => "p".to_string(),
            _ => format!("p^{k}"),
        };
        if g.is_constant() && g.coeff(0).is_one() {
            prefix
        } else {
            format!("{prefix} * ({g})")
        }
    }
}
