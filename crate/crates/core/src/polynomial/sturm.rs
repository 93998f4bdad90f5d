//! Exact real-root location: Sturm chains, bisection-based isolation, and
//! multiplicity assignment through the square-free decomposition.
//!
//! All interval endpoints are rationals and every comparison is exact, so the
//! isolation output is a certificate: each returned interval contains exactly
//! one distinct real root of the input, with its exact multiplicity.

use super::{sign_q, Poly};
use crate::{q_from_i64, q_to_f64, Q};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// One isolated real root: the half-open isolating interval `(lo, hi)`
/// (collapsed to a point when the root is known exactly), the multiplicity
/// of the root in the original polynomial, and the exact rational value
/// when the root is rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub lo: Q,
    pub hi: Q,
    pub multiplicity: u32,
    pub exact: Option<Q>,
}

impl IsolatedRoot {
    /// Double-precision approximation (interval midpoint; exact value when
    /// known). Isolation refines intervals to width `2^-60`, so this is
    /// accurate to roughly machine precision.
    pub fn approx(&self) -> f64 {
        match &self.exact {
            Some(r) => q_to_f64(r),
            None => q_to_f64(&((&self.lo + &self.hi) / q_from_i64(2))),
        }
    }

    fn point(r: Q, multiplicity: u32) -> Self {
        IsolatedRoot {
            lo: r.clone(),
            hi: r.clone(),
            multiplicity,
            exact: Some(r),
        }
    }
}

/// Rational Cauchy root bound: every complex root of `f` has modulus
/// strictly below `1 + max_i |c_i| / |c_d|`.
pub(crate) fn cauchy_bound_q(f: &Poly) -> Q {
    let lead = f.leading().abs();
    let mut top = Q::zero();
    let coeffs = f.coeffs();
    for c in &coeffs[..coeffs.len().saturating_sub(1)] {
        let a = c.abs();
        if a > top {
            top = a;
        }
    }
    Q::one() + top / lead
}

/// The generalized Sturm chain of `f`: `p_0 = f`, `p_1 = f'`, and
/// `p_(i+1) = -rem(p_(i-1), p_i)` until the remainder vanishes.
pub fn sturm_chain(f: &Poly) -> Vec<Poly> {
    let mut chain = vec![f.clone(), f.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2]
            .divrem(&chain[n - 1])
            .expect("nonzero divisor in Sturm chain")
            .1;
        chain.push(-&r);
    }
}

fn sign_variations(chain: &[Poly], x: &Q) -> usize {
    let mut changes = 0usize;
    let mut last = 0i32;
    for p in chain {
        let s = sign_q(&p.eval_q(x));
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Exact number of **distinct** real roots of `f` in the half-open
/// interval `(a, b]`. The zero polynomial and empty intervals report 0.
pub fn count_real_roots_in(f: &Poly, a: &Q, b: &Q) -> usize {
    if f.is_zero() || a >= b {
        return 0;
    }
    // Clear roots sitting exactly on the endpoints so the Sturm counts are
    // unconditional; a root at `b` belongs to the interval, one at `a`
    // does not.
    let mut g = f.clone();
    let mut at_b = 0usize;
    while g.degree() >= 1 && g.eval_q(a).is_zero() {
        let lin = Poly::new(vec![-a.clone(), Q::one()]);
        g = g.divrem(&lin).expect("exact root divides").0;
    }
    if g.degree() >= 1 && g.eval_q(b).is_zero() {
        at_b = 1;
        loop {
            let lin = Poly::new(vec![-b.clone(), Q::one()]);
            g = g.divrem(&lin).expect("exact root divides").0;
            if g.degree() == 0 || !g.eval_q(b).is_zero() {
                break;
            }
        }
    }
    if g.degree() == 0 {
        return at_b;
    }
    let chain = sturm_chain(&g);
    sign_variations(&chain, a) - sign_variations(&chain, b) + at_b
}

/// Isolate the real roots of a square-free `g` inside `(lo, hi)`,
/// assuming `g(lo) != 0` and `g(hi) != 0`. Appends `(lo_i, hi_i, exact_i)`
/// triples; sign-change intervals satisfy `g(lo_i) * g(hi_i) < 0`.
fn isolate_square_free(g: &Poly, chain: &[Poly], lo: &Q, hi: &Q, out: &mut Vec<(Q, Q, Option<Q>)>) {
    let count = sign_variations(chain, lo) - sign_variations(chain, hi);
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push((lo.clone(), hi.clone(), None));
        return;
    }
    let mid = (lo + hi) / q_from_i64(2);
    if g.eval_q(&mid).is_zero() {
        // The midpoint is an exact root: record it, then step far enough off
        // the root on both sides that the sub-searches keep endpoints where
        // `g` is nonzero and `mid` is the only root skipped between them.
        out.push((mid.clone(), mid.clone(), Some(mid.clone())));
        let mut delta = (hi - lo) / q_from_i64(4);
        loop {
            let a = &mid - &delta;
            let b = &mid + &delta;
            if !g.eval_q(&a).is_zero()
                && !g.eval_q(&b).is_zero()
                && sign_variations(chain, &a) - sign_variations(chain, &b) == 1
            {
                isolate_square_free(g, chain, lo, &a, out);
                isolate_square_free(g, chain, &b, hi, out);
                return;
            }
            delta /= q_from_i64(2);
        }
    } else {
        isolate_square_free(g, chain, lo, &mid, out);
        isolate_square_free(g, chain, &mid, hi, out);
    }
}

/// Shrink a sign-change isolating interval of a simple root of `g` by
/// bisection until `hi - lo <= width` or the root is found exactly.
pub fn refine_interval(g: &Poly, root: &mut IsolatedRoot, width: &Q) {
    if root.exact.is_some() {
        return;
    }
    let mut f_lo = g.eval_q(&root.lo);
    debug_assert!(sign_q(&f_lo) * sign_q(&g.eval_q(&root.hi)) < 0);
    while &(&root.hi - &root.lo) > width {
        let mid = (&root.lo + &root.hi) / q_from_i64(2);
        let f_mid = g.eval_q(&mid);
        if f_mid.is_zero() {
            root.lo = mid.clone();
            root.hi = mid.clone();
            root.exact = Some(mid);
            return;
        }
        if sign_q(&f_lo) * sign_q(&f_mid) < 0 {
            root.hi = mid;
        } else {
            root.lo = mid;
            f_lo = f_mid;
        }
    }
}

/// Divisors of `n` (by trial division), or `None` when `n` is too large to
/// factor cheaply or has too many divisors to enumerate.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut n = n.abs();
    if n.is_zero() {
        return None;
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut p = BigInt::from(2);
    let cap = BigInt::from(1_000_000u32);
    while &p * &p <= n && p <= cap {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        // No factor up to min(sqrt, 1e6); if n survived past the cap it may
        // be a large composite we cannot certify prime; give up then.
        if n > BigInt::from(1_000_000_000_000u64) {
            return None;
        }
        factors.push((n, 1));
    }
    let mut divisors = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &divisors {
            let mut pe = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pe);
                pe *= &p;
            }
        }
        divisors = next;
        if divisors.len() > 4096 {
            return None;
        }
    }
    Some(divisors)
}

/// Rational-root candidates of a polynomial with the given integer
/// coefficients (constant term nonzero): `± num / den` with
/// `num | c_0`, `den | c_d`.
fn rational_root_candidates(ints: &[BigInt]) -> Option<Vec<Q>> {
    let nums = small_divisors(ints.first()?)?;
    let dens = small_divisors(ints.last()?)?;
    if nums.len().saturating_mul(dens.len()) > 100_000 {
        return None;
    }
    let mut out = Vec::new();
    for num in &nums {
        for den in &dens {
            let r = Q::new(num.clone(), den.clone());
            out.push(-r.clone());
            out.push(r);
        }
    }
    Some(out)
}

/// Isolate all real roots of `f` with exact multiplicities.
///
/// Returns one entry per distinct real root, ordered left to right:
/// a rational isolating interval (refined to width `2^-60`, or a point when
/// the root is rational and recognized), the exact multiplicity of the root
/// in `f`, and the exact value when available. The zero polynomial and
/// nonzero constants report no roots.
pub fn isolate_real_roots(f: &Poly) -> Vec<IsolatedRoot> {
    if f.is_zero() || f.degree() == 0 {
        return Vec::new();
    }
    let mut out: Vec<IsolatedRoot> = Vec::new();
    let (k, g) = f.deflate_zero_root();
    if k > 0 {
        out.push(IsolatedRoot::point(Q::zero(), k));
    }
    if g.degree() == 0 {
        return out;
    }

    let target = Q::new(BigInt::one(), BigInt::from(2u8).pow(60));
    let mut layered: Vec<(Poly, IsolatedRoot)> = Vec::new();
    for (layer, mult) in g.square_free_decomposition() {
        if layer.degree() == 0 {
            continue;
        }
        let bound = cauchy_bound_q(&layer);
        let chain = sturm_chain(&layer);
        let mut raw = Vec::new();
        isolate_square_free(&layer, &chain, &-bound.clone(), &bound, &mut raw);

        // Recognize rational roots where factoring is cheap.
        let candidates = rational_root_candidates(&layer.integer_coeffs());
        for (lo, hi, exact) in raw {
            let mut root = match exact {
                Some(r) => IsolatedRoot::point(r, mult),
                None => IsolatedRoot {
                    lo,
                    hi,
                    multiplicity: mult,
                    exact: None,
                },
            };
            refine_interval(&layer, &mut root, &target);
            if root.exact.is_none() {
                if let Some(cands) = &candidates {
                    for r in cands {
                        if *r > root.lo && *r < root.hi && layer.eval_q(r).is_zero() {
                            root = IsolatedRoot::point(r.clone(), mult);
                            break;
                        }
                    }
                }
            }
            layered.push((layer.clone(), root));
        }
    }

    // Distinct layers have distinct roots; keep refining any overlapping
    // pair until all intervals are pairwise disjoint.
    let half = Q::new(BigInt::one(), BigInt::from(2));
    loop {
        layered.sort_by(|a, b| (&a.1.lo, &a.1.hi).cmp(&(&b.1.lo, &b.1.hi)));
        // Sorted by lo, so only adjacent intervals can overlap first.
        let overlap = (1..layered.len())
            .find(|&j| layered[j].1.lo < layered[j - 1].1.hi)
            .map(|j| (j - 1, j));
        let Some((i, j)) = overlap else { break };
        for idx in [i, j] {
            let (layer, root) = &mut layered[idx];
            let w = (&root.hi - &root.lo) * &half;
            refine_interval(layer, root, &w);
        }
    }

    out.extend(layered.into_iter().map(|(_, r)| r));
    out.sort_by(|a, b| (&a.lo, &a.hi).cmp(&(&b.lo, &b.hi)));
    out
}

/// Convenience: `(approximate value, multiplicity)` per distinct real root,
/// ordered left to right.
pub fn real_roots_with_multiplicity(f: &Poly) -> Vec<(f64, u32)> {
    isolate_real_roots(f)
        .into_iter()
        .map(|r| (r.approx(), r.multiplicity))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_i64(coeffs)
    }

    #[test]
    fn sturm_counts_distinct_roots() {
        // (p-1)(p+2)p has roots -2, 0, 1
        let f = &(&p(&[-1, 1]) * &p(&[2, 1])) * &p(&[0, 1]);
        let c = |a: i64, b: i64| count_real_roots_in(&f, &q_from_i64(a), &q_from_i64(b));
        assert_eq!(c(-3, 2), 3);
        assert_eq!(c(-3, -1), 1);
        assert_eq!(c(0, 2), 1); // half-open: 0 excluded, 1 included
        assert_eq!(c(-3, 0), 2); // 0 included at the right endpoint
        assert_eq!(c(1, 5), 0); // 1 sits on the excluded left endpoint
    }

    #[test]
    fn endpoint_roots_are_handled_exactly() {
        let f = p(&[-1, 0, 1]); // p^2 - 1
        assert_eq!(count_real_roots_in(&f, &q_from_i64(-1), &q_from_i64(1)), 1);
        assert_eq!(count_real_roots_in(&f, &q_from_i64(-2), &q_from_i64(-1)), 1);
        // multiple root at endpoint
        let g = p(&[-1, 1]).pow(3);
        assert_eq!(count_real_roots_in(&g, &q_from_i64(0), &q_from_i64(1)), 1);
        assert_eq!(count_real_roots_in(&g, &q_from_i64(1), &q_from_i64(2)), 0);
    }

    #[test]
    fn isolation_with_multiplicities() {
        // p^2 (p-1)^3 (p^2 - 2)
        let f = &(&p(&[0, 1]).pow(2) * &p(&[-1, 1]).pow(3)) * &p(&[-2, 0, 1]);
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 4);
        let mults: Vec<u32> = roots.iter().map(|r| r.multiplicity).collect();
        assert_eq!(mults, vec![1, 2, 3, 1]); // -sqrt2, 0, 1, sqrt2
        assert_eq!(roots[1].exact, Some(Q::zero()));
        assert_eq!(roots[2].exact, Some(q_from_i64(1)));
        assert!(roots[0].exact.is_none());
        assert!((roots[0].approx() + 2f64.sqrt()).abs() < 1e-12);
        assert!((roots[3].approx() - 2f64.sqrt()).abs() < 1e-12);
        // intervals pairwise disjoint and ordered
        for w in roots.windows(2) {
            assert!(w[0].hi <= w[1].lo);
        }
    }

    #[test]
    fn rational_roots_are_recognized() {
        // (3p - 1)(p + 5)(p^2 + 1)
        let f = &(&p(&[-1, 3]) * &p(&[5, 1])) * &p(&[1, 0, 1]);
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].exact, Some(q_from_i64(-5)));
        assert_eq!(
            roots[1].exact,
            Some(Q::new(BigInt::from(1), BigInt::from(3)))
        );
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&p(&[1, 0, 1])).is_empty());
        assert!(isolate_real_roots(&p(&[7])).is_empty());
        assert!(isolate_real_roots(&Poly::zero()).is_empty());
    }

    #[test]
    fn close_roots_get_separated() {
        // roots at 1/1024 and 1/1025: denominators beyond dyadic midpoints
        let a = Q::new(BigInt::from(1), BigInt::from(1024));
        let b = Q::new(BigInt::from(1), BigInt::from(1025));
        let f = &Poly::new(vec![-a.clone(), Q::one()]) * &Poly::new(vec![-b.clone(), Q::one()]);
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 2);
        assert!(roots[0].hi <= roots[1].lo);
        assert_eq!(roots[0].exact, Some(b));
        assert_eq!(roots[1].exact, Some(a));
    }

    #[test]
    fn golden_ratio_polynomial() {
        // p^2 - p - 1: roots phi and 1 - phi
        let f = p(&[-1, -1, 1]);
        let roots = isolate_real_roots(&f);
        assert_eq!(roots.len(), 2);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((roots[1].approx() - phi).abs() < 1e-12);
        assert!((roots[0].approx() - (1.0 - phi)).abs() < 1e-12);
    }
}
