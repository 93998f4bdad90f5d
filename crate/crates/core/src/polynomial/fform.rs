//! The F-form of a reliability polynomial: coefficients over the basis
//! `p^i (1-p)^(m-i)` for a graph with `m` edges.
//!
//! For a reliability polynomial, the count `N_i` is the number of edge
//! subsets of size `i` that connect the terminals, so the F-form exposes
//! combinatorial structure (nonnegativity, integrality, and the upward
//! closure inherited from monotonicity) that the power basis hides.

use super::{Poly, PolyError};
use crate::{q_from_i64, Q};
use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

/// A polynomial expressed in the basis `p^i (1-p)^(m-i)`, `i = 0..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FForm {
    m: u32,
    counts: Vec<Q>,
}

impl FForm {
    /// Convert `f` into the degree-`m` F-form basis; fails when
    /// `deg f > m`.
    ///
    /// Substituting the binomial expansion of `p^j = p^j (p + (1-p))^(m-j)`
    /// gives `N_i = sum_(j <= i) a_j * C(m-j, i-j)` for `f = sum a_j p^j`.
    pub fn from_poly(f: &Poly, m: u32) -> Result<FForm, PolyError> {
        if !f.is_zero() && f.degree() > m as usize {
            return Err(PolyError::DegreeTooLarge {
                degree: f.degree(),
                m,
            });
        }
        let mu = m as usize;
        let mut counts = Vec::with_capacity(mu + 1);
        for i in 0..=mu {
            let mut n_i = Q::zero();
            for j in 0..=i.min(f.degree()) {
                let a_j = f.coeff(j);
                if a_j.is_zero() {
                    continue;
                }
                let c = binomial(BigInt::from(mu - j), BigInt::from(i - j));
                n_i += a_j * Q::from_integer(c);
            }
            counts.push(n_i);
        }
        Ok(FForm { m, counts })
    }

    /// Build an F-form directly from its counts `N_0 ..= N_m`; fails when
    /// the length is not `m + 1`.
    pub fn from_counts(m: u32, counts: Vec<Q>) -> Result<FForm, PolyError> {
        if counts.len() != m as usize + 1 {
            return Err(PolyError::DegreeTooLarge {
                degree: counts.len().saturating_sub(1),
                m,
            });
        }
        Ok(FForm { m, counts })
    }

    /// Reconstruct the power-basis polynomial
    /// `sum_i N_i p^i (1-p)^(m-i)`.
    pub fn to_poly(&self) -> Poly {
        let one_minus_p = Poly::from_i64(&[1, -1]);
        let mut acc = Poly::zero();
        for (i, n_i) in self.counts.iter().enumerate() {
            if n_i.is_zero() {
                continue;
            }
            let term = &Poly::monomial(n_i.clone(), i) * &one_minus_p.pow(self.m - i as u32);
            acc = &acc + &term;
        }
        acc
    }

    /// Basis degree `m` (the number of edges for a reliability polynomial).
    pub fn m(&self) -> u32 {
        self.m
    }

    /// The coefficients `N_0 ..= N_m`.
    pub fn counts(&self) -> &[Q] {
        &self.counts
    }

    /// Whether every `N_i` is a nonnegative integer; as subset counts
    /// must be.
    pub fn is_integral_and_nonnegative(&self) -> bool {
        self.counts
            .iter()
            .all(|n| n.denom().is_one() && !n.is_negative())
    }

    /// The upward-closure (monotonicity) inequality
    /// `(i+1) * N_(i+1) >= (m-i) * N_i` for all `0 <= i < m`: every working
    /// subset stays working when one more edge works, and the inequality is
    /// the double count of that injection.
    pub fn upward_closure_ok(&self) -> bool {
        let m = self.m as i64;
        self.counts.windows(2).enumerate().all(|(i, w)| {
            let i = i as i64;
            q_from_i64(i + 1) * &w[1] >= q_from_i64(m - i) * &w[0]
        })
    }
}
