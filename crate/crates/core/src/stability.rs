//! Half-plane and real-root analysis: the Hermite-Biehler weak-stability
//! test with exact interlacing, the cycle left-half-plane witness, and an
//! exact real-root census with Descartes bounds.
//!
//! "Weakly stable" means all roots lie in the closed left half-plane. The
//! Hermite-Biehler criterion reduces this to conditions on the even/odd
//! split `f(p) = fe(p^2) + p * fo(p^2)`: both parts have positive leading
//! coefficients, all their roots are real and nonpositive, the degrees fit
//! the pattern forced by `deg f`, and the root lists interlace (weak
//! inequalities allowed, so shared roots are fine). Every comparison here
//! is exact: roots are isolated by Sturm sequences, refined until ordered,
//! and cross-polynomial equalities are settled by gcd root counting.

use crate::polynomial::{
    count_real_roots_in, isolate_real_roots, IsolatedRoot, Poly,
};
use crate::rootfinder::{all_roots, region_filter, Region, RootFindError};
use crate::{q_from_i64, C64, Q};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, thiserror::Error)]
pub enum StabilityError {
    #[error("the zero polynomial has no stability classification")]
    ZeroPolynomial,
    #[error("invalid cycle parameters: need n >= 3 and 1 <= k <= n/2, got n = {n}, k = {k}")]
    InvalidCycle { n: u32, k: u32 },
    #[error(transparent)]
    Root(#[from] RootFindError),
}

/// Which Hermite-Biehler condition failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HbFailure {
    /// The even part has a negative leading coefficient.
    NonpositiveLeadingEven,
    /// The odd part has a negative leading coefficient.
    NonpositiveLeadingOdd,
    /// The even part has a complex or positive root.
    EvenRootsNotRealNonpositive,
    /// The odd part has a complex or positive root.
    OddRootsNotRealNonpositive,
    /// The degrees of the parts cannot interlace (for weakly stable `f` the
    /// subleading coefficient cannot vanish unless one part is identically
    /// zero, so the root counts must differ by exactly the forced amount).
    DegreePattern {
        even_degree: Option<usize>,
        odd_degree: Option<usize>,
    },
    /// Interlacing breaks at the given merge position.
    InterlacingViolated { index: usize },
}

impl fmt::Display for HbFailure {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HbFailure::NonpositiveLeadingEven => write!(out, "even part has negative leading coefficient"),
            HbFailure::NonpositiveLeadingOdd => write!(out, "odd part has negative leading coefficient"),
            HbFailure::EvenRootsNotRealNonpositive => {
                write!(out, "even part has a complex or positive root")
            }
            HbFailure::OddRootsNotRealNonpositive => {
                write!(out, "odd part has a complex or positive root")
            }
            HbFailure::DegreePattern {
                even_degree,
                odd_degree,
            } => write!(
                out,
                "part degrees cannot interlace (even: {even_degree:?}, odd: {odd_degree:?})"
            ),
            HbFailure::InterlacingViolated { index } => {
                write!(out, "interlacing violated at merge position {index}")
            }
        }
    }
}

/// Outcome of the Hermite-Biehler test, with the split and certificate.
#[derive(Clone, Debug)]
pub struct HermiteBiehlerReport {
    pub weakly_stable: bool,
    /// `fe` with `f(p) = fe(p^2) + p * fo(p^2)` (after normalizing the
    /// leading coefficient of `f` to be positive).
    pub f_even: Poly,
    pub f_odd: Poly,
    /// Isolated real roots of the even part (empty when the check failed
    /// before isolation or the part is constant/zero).
    pub even_roots: Vec<IsolatedRoot>,
    pub odd_roots: Vec<IsolatedRoot>,
    pub failure: Option<HbFailure>,
}

/// Sign of the root of `r`: -1, 0, or +1, decided exactly.
fn root_sign(r: &IsolatedRoot, f: &Poly) -> i32 {
    if let Some(q) = &r.exact {
        return if q.is_zero() {
            0
        } else if q.is_positive() {
            1
        } else {
            -1
        };
    }
    let zero = Q::zero();
    if r.hi <= zero {
        return -1;
    }
    if r.lo >= zero {
        return 1;
    }
    // interval straddles 0 but the root is irrational, hence nonzero
    if count_real_roots_in(f, &zero, &r.hi) == 1 {
        1
    } else {
        -1
    }
}

/// One bisection step on a strict sign-change bracket of a square-free `f`.
fn refine_step(r: &mut IsolatedRoot, f: &Poly) {
    let mid = (&r.lo + &r.hi) / q_from_i64(2);
    let vm = f.eval_q(&mid);
    if vm.is_zero() {
        r.exact = Some(mid.clone());
        r.lo = mid.clone();
        r.hi = mid;
        return;
    }
    let vl = f.eval_q(&r.lo);
    if (vl.is_positive() && vm.is_negative()) || (vl.is_negative() && vm.is_positive()) {
        r.hi = mid;
    } else {
        r.lo = mid;
    }
}

/// Exact order of two isolated roots of (square-free) `fa` and `fb`.
/// Equality across the two polynomials is settled by counting roots of
/// `gcd(fa, fb)` in the interval overlap; otherwise the brackets are
/// refined until they separate.
fn cmp_roots(a: &IsolatedRoot, fa: &Poly, b: &IsolatedRoot, fb: &Poly) -> Ordering {
    if let (Some(x), Some(y)) = (&a.exact, &b.exact) {
        return x.cmp(y);
    }
    let mut a = a.clone();
    let mut b = b.clone();
    // An exact root against a bracket: locate the point in the bracket.
    if let Some(q) = a.exact.clone() {
        loop {
            if q <= b.lo {
                return Ordering::Less;
            }
            if q >= b.hi {
                return Ordering::Greater;
            }
            if fb.eval_q(&q).is_zero() {
                return Ordering::Equal;
            }
            refine_step(&mut b, fb);
        }
    }
    if b.exact.is_some() {
        return cmp_roots(&b, fb, &a, fa).reverse();
    }
    let shared = fa.gcd(fb);
    loop {
        if a.hi <= b.lo {
            return Ordering::Less;
        }
        if b.hi <= a.lo {
            return Ordering::Greater;
        }
        if shared.degree() >= 1 {
            let lo = if a.lo >= b.lo { a.lo.clone() } else { b.lo.clone() };
            let hi = if a.hi <= b.hi { a.hi.clone() } else { b.hi.clone() };
            // Bracket endpoints are never roots of the layers, hence never
            // roots of the gcd, so the half-open count is exact here.
            if lo < hi && count_real_roots_in(&shared, &lo, &hi) >= 1 {
                return Ordering::Equal;
            }
        }
        refine_step(&mut a, fa);
        refine_step(&mut b, fb);
    }
}

/// Expand isolated roots by multiplicity (ascending order preserved).
fn expand(roots: &[IsolatedRoot]) -> Vec<IsolatedRoot> {
    let mut out = Vec::new();
    for r in roots {
        for _ in 0..r.multiplicity {
            out.push(r.clone());
        }
    }
    out
}

/// Hermite-Biehler weak-stability test. The sign of `f` is normalized so
/// the leading coefficient is positive; fails only on the zero polynomial.
pub fn hermite_biehler(f: &Poly) -> Result<HermiteBiehlerReport, StabilityError> {
    if f.is_zero() {
        return Err(StabilityError::ZeroPolynomial);
    }
    let f = if f.leading().is_negative() {
        -f
    } else {
        f.clone()
    };
    let (fe, fo) = f.even_odd_split();
    let mut report = HermiteBiehlerReport {
        weakly_stable: false,
        f_even: fe.clone(),
        f_odd: fo.clone(),
        even_roots: Vec::new(),
        odd_roots: Vec::new(),
        failure: None,
    };
    let fail = |mut report: HermiteBiehlerReport, failure: HbFailure| {
        report.failure = Some(failure);
        Ok(report)
    };

    // (a) leading coefficients
    if !fe.is_zero() && fe.leading().is_negative() {
        return fail(report, HbFailure::NonpositiveLeadingEven);
    }
    if !fo.is_zero() && fo.leading().is_negative() {
        return fail(report, HbFailure::NonpositiveLeadingOdd);
    }

    // (b) all roots real and nonpositive, exactly
    let even_roots = isolate_real_roots(&fe);
    let odd_roots = isolate_real_roots(&fo);
    report.even_roots = even_roots.clone();
    report.odd_roots = odd_roots.clone();
    let all_real_nonpositive = |part: &Poly, roots: &[IsolatedRoot]| -> bool {
        if part.is_zero() || part.degree() == 0 {
            return true;
        }
        let total: u32 = roots.iter().map(|r| r.multiplicity).sum();
        if total as usize != part.degree() {
            return false; // complex roots exist
        }
        roots.iter().all(|r| root_sign(r, part) <= 0)
    };
    if !all_real_nonpositive(&fe, &even_roots) {
        return fail(report, HbFailure::EvenRootsNotRealNonpositive);
    }
    if !all_real_nonpositive(&fo, &odd_roots) {
        return fail(report, HbFailure::OddRootsNotRealNonpositive);
    }

    // Degree pattern: with n = deg f, a weakly stable f has
    // sum(roots) = -a_(n-1)/a_n <= 0 vanishing only when all roots are
    // imaginary, i.e. when one part is identically zero. So when both
    // parts are nonzero the subleading part's degree is forced.
    let n = f.degree();
    let pattern_ok = if fe.is_zero() || fo.is_zero() {
        true
    } else if n % 2 == 0 {
        fo.degree() == n / 2 - 1
    } else {
        fe.degree() == (n - 1) / 2
    };
    if !pattern_ok {
        return fail(
            report,
            HbFailure::DegreePattern {
                even_degree: if fe.is_zero() { None } else { Some(fe.degree()) },
                odd_degree: if fo.is_zero() { None } else { Some(fo.degree()) },
            },
        );
    }

    // (c) interlacing with weak inequalities. Comparisons run on the
    // square-free parts (same roots, strict sign-change brackets).
    if !fe.is_zero() && !fo.is_zero() && fe.degree() >= 1 && fo.degree() >= 1 {
        let fe_sf = fe.square_free_part();
        let fo_sf = fo.square_free_part();
        let r = expand(&even_roots);
        let s = expand(&odd_roots);
        // n even: r1 <= s1 <= r2 <= ... <= r_m   (|r| = |s| + 1)
        // n odd:  s1 <= r1 <= s2 <= ... <= r_m   (|s| = |r|)
        let merged: Vec<(&IsolatedRoot, &Poly)> = if n % 2 == 0 {
            itertools_interleave(&r, &fe_sf, &s, &fo_sf)
        } else {
            itertools_interleave(&s, &fo_sf, &r, &fe_sf)
        };
        for (idx, pair) in merged.windows(2).enumerate() {
            let (x, fx) = pair[0];
            let (y, fy) = pair[1];
            if cmp_roots(x, fx, y, fy) == Ordering::Greater {
                return fail(report, HbFailure::InterlacingViolated { index: idx });
            }
        }
    }

    report.weakly_stable = true;
    Ok(report)
}

/// Alternate two multiplicity-expanded root lists: a1, b1, a2, b2, ...
fn itertools_interleave<'a>(
    a: &'a [IsolatedRoot],
    fa: &'a Poly,
    b: &'a [IsolatedRoot],
    fb: &'a Poly,
) -> Vec<(&'a IsolatedRoot, &'a Poly)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    loop {
        let mut progressed = false;
        if i < a.len() {
            out.push((&a[i], fa));
            progressed = true;
        }
        if i < b.len() {
            out.push((&b[i], fb));
            progressed = true;
        }
        if !progressed {
            break;
        }
        i += 1;
    }
    out
}

/// Parity of the cycle parameters, which selects the structural argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParityCase {
    EvenEven,
    EvenOdd,
    OddEven,
    OddOdd,
}

impl fmt::Display for ParityCase {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParityCase::EvenEven => write!(out, "n and k both even"),
            ParityCase::EvenOdd => write!(out, "n even, k odd"),
            ParityCase::OddEven => write!(out, "n odd, k even"),
            ParityCase::OddOdd => write!(out, "n and k both odd"),
        }
    }
}

/// The constructive witness that every cycle reliability has a root in the
/// open left half-plane.
#[derive(Clone, Debug)]
pub struct CycleWitnessReport {
    pub n: u32,
    pub k: u32,
    /// `g(p) = p^(n-k) - p^(n-2k) - 1`: the nonzero-root factor of the
    /// cycle reliability, up to sign (`trel = -p^k g`).
    pub g: Poly,
    /// `f(p) = (-1)^(n-k) g(-p)`, leading coefficient positive.
    pub f: Poly,
    pub parity_case: ParityCase,
    /// `n = 2k`: the antipodal (theta-degenerate) case the structural
    /// argument treats separately.
    pub degenerate_theta: bool,
    pub hb: HermiteBiehlerReport,
    /// Numeric cross-check: roots of `g` strictly inside the left
    /// half-plane, counted with multiplicity.
    pub lhp_root_count: u32,
    /// One left-half-plane root of `g` (a two-terminal root of the cycle).
    pub witness_root: C64,
    pub boundary_ambiguous: usize,
}

/// Build `g(p) = p^(n-k) - p^(n-2k) - 1` and `f(p) = (-1)^(n-k) g(-p)`;
/// show `f` is not weakly stable (so `f` has a root with `Re > 0`, hence
/// `g` (and the cycle) has one with `Re < 0`), and cross-validate
/// numerically.
pub fn cycle_left_halfplane_witness(n: u32, k: u32) -> Result<CycleWitnessReport, StabilityError> {
    if n < 3 || k < 1 || 2 * k > n {
        return Err(StabilityError::InvalidCycle { n, k });
    }
    let g = {
        let mut t = &Poly::monomial(Q::one(), (n - k) as usize)
            - &Poly::monomial(Q::one(), (n - 2 * k) as usize);
        t = &t - &Poly::one();
        t
    };
    let mut f = g.reflect();
    if (n - k) % 2 == 1 {
        f = -&f;
    }
    let parity_case = match (n.is_multiple_of(2), k.is_multiple_of(2)) {
        (true, true) => ParityCase::EvenEven,
        (true, false) => ParityCase::EvenOdd,
        (false, true) => ParityCase::OddEven,
        (false, false) => ParityCase::OddOdd,
    };
    let hb = hermite_biehler(&f)?;

    let rs = all_roots(&g)?;
    let sel = region_filter(&rs, &Region::LeftHalfPlane);
    let witness_root = sel
        .inside
        .first()
        .map(|r| r.value)
        .unwrap_or(C64::new(f64::NAN, f64::NAN));
    Ok(CycleWitnessReport {
        n,
        k,
        g,
        f,
        parity_case,
        degenerate_theta: n == 2 * k,
        lhp_root_count: sel.count_with_multiplicity(),
        witness_root,
        boundary_ambiguous: sel.boundary_ambiguous.len(),
        hb,
    })
}

/// Exact counts of positive, negative, and zero real roots, with the
/// Descartes sign-change bounds they must respect.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub degree: usize,
    pub zero_multiplicity: u32,
    pub positive_distinct: usize,
    pub negative_distinct: usize,
    pub positive_with_multiplicity: u32,
    pub negative_with_multiplicity: u32,
    /// Sign changes of `f`: an upper bound (of matching parity) on the
    /// positive roots counted with multiplicity.
    pub descartes_positive_bound: usize,
    /// Sign changes of `f(-p)`: same bound for the negative roots.
    pub descartes_negative_bound: usize,
    /// Whether every root of `f` is real.
    pub all_roots_real: bool,
}

/// Exact real-root census via Sturm isolation.
pub fn real_root_census(f: &Poly) -> Result<CensusReport, StabilityError> {
    if f.is_zero() {
        return Err(StabilityError::ZeroPolynomial);
    }
    let sf = f.square_free_part();
    let roots = isolate_real_roots(f);
    let mut report = CensusReport {
        degree: f.degree(),
        zero_multiplicity: 0,
        positive_distinct: 0,
        negative_distinct: 0,
        positive_with_multiplicity: 0,
        negative_with_multiplicity: 0,
        descartes_positive_bound: f.sign_changes(),
        descartes_negative_bound: f.reflect().sign_changes(),
        all_roots_real: false,
    };
    let mut real_mult = 0u32;
    for r in &roots {
        real_mult += r.multiplicity;
        match root_sign(r, &sf) {
            0 => report.zero_multiplicity = r.multiplicity,
            1 => {
                report.positive_distinct += 1;
                report.positive_with_multiplicity += r.multiplicity;
            }
            _ => {
                report.negative_distinct += 1;
                report.negative_with_multiplicity += r.multiplicity;
            }
        }
    }
    report.all_roots_real = real_mult as usize == f.degree();
    Ok(report)
}
