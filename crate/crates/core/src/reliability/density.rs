//! Constructive density of theta-graph roots in the punctured unit disk.
//!
//! A theta graph with `k` internally disjoint terminal paths of length `l`
//! has reliability `1 - (1 - p^l)^k`, whose roots are `nu` with
//! `nu^l = 1 - omega` for `omega` a `k`-th root of unity. Sweeping `omega`
//! along the unit circle and picking the right `l`-th root branch lets these
//! roots approach any point of the punctured disk: the modulus is matched by
//! solving `2 sin(theta/2) = |target|^l` for `theta = arg(omega)`, and the
//! argument is matched by the branch, with resolution improving like
//! `pi / (2 l)`. Angles are realized as `2 pi j / k` through
//! continued-fraction approximation, so the `k` cap is used optimally. The
//! search honors hard caps on `l` and `k`; when the caps cannot reach the
//! requested tolerance the error reports the best candidate found.

use crate::rootfinder::dd::DdC;
use crate::C64;
use std::f64::consts::{PI, TAU};

/// Largest path length tried by the search.
pub const MAX_L: u32 = 512;
/// Largest root-of-unity order tried by the search.
pub const MAX_K: u32 = 4096;
/// A hit must certify `|1 - (1 - nu^l)^k|` below this, evaluated in
/// double-double arithmetic after Newton polishing.
pub const DENSITY_RESIDUAL_TOL: f64 = 1e-10;

/// A theta-root found near the requested target.
#[derive(Clone, Copy, Debug)]
pub struct DiskRootHit {
    /// Path length: the root satisfies `nu^l = 1 - omega`.
    pub l: u32,
    /// Path count: `omega^k = 1`.
    pub k: u32,
    /// `omega = exp(2 pi i j / k)`.
    pub j: u32,
    /// Which of the `l` root branches was taken.
    pub branch: u32,
    /// The root of unity driving the construction.
    pub omega: C64,
    /// The polished root of `1 - (1 - p^l)^k`.
    pub nu: C64,
    /// `|nu - target|`.
    pub distance: f64,
    /// `|1 - (1 - nu^l)^k|` evaluated in double-double arithmetic.
    pub residual: f64,
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum DensityError {
    #[error("eps must be > 0, got {0}")]
    EpsNotPositive(f64),
    #[error("target must lie in the punctured open unit disk, got modulus {0}")]
    TargetOutsideDisk(f64),
    #[error(
        "search budget exhausted (l <= {MAX_L}, k <= {MAX_K}); best candidate at distance {distance:.3e}"
    )]
    BudgetExhausted {
        distance: f64,
        best: Box<DiskRootHit>,
    },
}

#[derive(Clone, Copy)]
struct Candidate {
    l: u32,
    k: u32,
    j: u32,
    branch: u32,
    nu0: C64,
    d0: f64,
}

/// Best rational approximations `j/k` to `x` in `(0, 1)` with `k <= max_den`:
/// the continued-fraction convergents that fit, plus the final
/// semiconvergent squeezed under the cap. Returns at most the last four.
fn rational_approximations(x: f64, max_den: u32) -> Vec<(u32, u32)> {
    let max_den = max_den as u64;
    let mut out: Vec<(u64, u64)> = Vec::new();
    // convergents h_n/k_n with h_n = a_n h_(n-1) + h_(n-2); x < 1 makes the
    // zeroth convergent 0/1, seeded here together with the virtual 1/0
    let (mut p0, mut q0, mut p1, mut q1): (u64, u64, u64, u64) = (1, 0, 0, 1);
    let mut frac = x;
    for _ in 0..48 {
        if frac <= 1e-15 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.floor();
        if !(1.0..=1e18).contains(&a) {
            break;
        }
        let a_int = a as u64;
        let (Some(p2), Some(q2)) = (
            a_int.checked_mul(p1).and_then(|v| v.checked_add(p0)),
            a_int.checked_mul(q1).and_then(|v| v.checked_add(q0)),
        ) else {
            break;
        };
        if q2 > max_den {
            // the largest semiconvergent still within the cap
            let a_fit = (max_den - q0) / q1;
            if a_fit >= 1 {
                out.push((a_fit * p1 + p0, a_fit * q1 + q0));
            }
            break;
        }
        out.push((p2, q2));
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        frac = inv - a;
    }
    out.retain(|&(p, q)| p >= 1 && p < q);
    if out.len() > 4 {
        out.drain(..out.len() - 4);
    }
    out.into_iter().map(|(p, q)| (p as u32, q as u32)).collect()
}

/// Realize the theta-root candidate for `omega = exp(2 pi i j / k)` at path
/// length `l`, taking the branch whose argument lands closest to `phi`.
fn eval_candidate(l: u32, k: u32, j: u32, target: C64, phi: f64) -> Candidate {
    let theta = TAU * j as f64 / k as f64;
    let base_arg = (theta - PI) / 2.0;
    let b = ((phi * l as f64 - base_arg) / TAU).round() as i64;
    let b = b.rem_euclid(l as i64) as u32;
    let rad = (2.0 * (theta / 2.0).sin()).powf(1.0 / l as f64);
    let ang = (base_arg + TAU * b as f64) / l as f64;
    let nu0 = C64::from_polar(rad, ang);
    Candidate {
        l,
        k,
        j,
        branch: b,
        nu0,
        d0: (nu0 - target).norm(),
    }
}

/// Find a theta-graph root within `eps` of `target`, `0 < |target| < 1`.
///
/// For each path length `l` the reachable roots form arcs
/// `theta -> (2 sin(theta/2))^(1/l) * exp(i((theta - pi)/2 + 2 pi b)/l)`
/// parametrized by `theta = 2 pi j / k` in `(0, 2 pi)`. The search samples,
/// per `l`, the modulus-matching angle `2 asin(|target|^l / 2)` (and its
/// mirror), the argument-matching angle of the nearest branch window, and
/// blends between them, realizing each sample by its best rational
/// approximations with `k` under the cap. Promising candidates are polished
/// by double-double Newton steps on `1 - (1 - p^l)^k` and accepted only when
/// the polished residual clears [`DENSITY_RESIDUAL_TOL`].
pub fn find_root_near_disk0(target: C64, eps: f64) -> Result<DiskRootHit, DensityError> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(DensityError::EpsNotPositive(eps));
    }
    let rho = target.norm();
    if !(rho > 0.0 && rho < 1.0) {
        return Err(DensityError::TargetOutsideDisk(rho));
    }
    let phi = target.arg();

    let mut best: Option<Candidate> = None;
    for l in 1..=MAX_L {
        let rl = rho.powi(l as i32);
        // theta solving 2 sin(theta/2) = rho^l on (0, pi]
        let theta_m = 2.0 * (rl / 2.0).asin();
        // theta putting the nearest branch window's argument exactly on phi
        let u = phi * l as f64;
        let theta_phi = (PI + 2.0 * (u - TAU * (u / TAU).round())).clamp(1e-9, TAU - 1e-9);

        let mut thetas = Vec::with_capacity(11);
        for side in [theta_m, TAU - theta_m] {
            for step in 0..=4 {
                let w = step as f64 / 4.0;
                thetas.push((side * (1.0 - w) + theta_phi * w).clamp(1e-9, TAU - 1e-9));
            }
        }
        thetas.push(theta_phi);

        for theta_t in thetas {
            for (j, k) in rational_approximations(theta_t / TAU, MAX_K) {
                let cand = eval_candidate(l, k, j, target, phi);
                if best.is_none_or(|p| cand.d0 < p.d0) {
                    best = Some(cand);
                }
                if cand.d0 < eps {
                    let hit = polish_candidate(&cand, target);
                    if hit.distance < eps && hit.residual < DENSITY_RESIDUAL_TOL {
                        return Ok(hit);
                    }
                }
            }
        }

        // smallest modulus reachable at this l given the k cap; it grows
        // with l, so once it clears the band no later level can do better
        let m_min = (2.0 * (PI / MAX_K as f64).sin()).powf(1.0 / l as f64);
        if m_min > rho + eps {
            break;
        }
    }

    let best = best.expect("l = 1 always yields at least one candidate");
    let hit = polish_candidate(&best, target);
    Err(DensityError::BudgetExhausted {
        distance: hit.distance,
        best: Box::new(hit),
    })
}

fn polish_candidate(cand: &Candidate, target: C64) -> DiskRootHit {
    let (nu, residual) = polish_theta_root(cand.nu0, cand.l, cand.k);
    DiskRootHit {
        l: cand.l,
        k: cand.k,
        j: cand.j,
        branch: cand.branch,
        omega: C64::from_polar(1.0, TAU * cand.j as f64 / cand.k as f64),
        nu,
        distance: (nu - target).norm(),
        residual,
    }
}

/// Residual `|1 - (1 - (1 - (1 - z)^m)^l)^k|` of `z` on the reliability of
/// the theta graph with every edge replaced by an `m`-bundle, evaluated in
/// double-double arithmetic. The expanded polynomial has degree `l k m` with
/// enormous coefficients, so evaluating the nested closed form is the only
/// numerically honest route. Requires `l, k, m >= 1`.
pub fn theta_bundle_residual(l: u32, k: u32, m: u32, z: C64) -> f64 {
    assert!(l >= 1 && k >= 1 && m >= 1, "family parameters must be >= 1");
    let one = DdC::from_c64(C64::new(1.0, 0.0));
    let nu = one.sub(ddc_powu(one.sub(DdC::from_c64(z)), m));
    let (f, _) = theta_f_fprime(nu, l, k);
    f.norm()
}

fn ddc_powu(base: DdC, mut e: u32) -> DdC {
    let mut acc = DdC::from_c64(C64::new(1.0, 0.0));
    let mut sq = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(sq);
        }
        sq = sq.mul(sq);
        e >>= 1;
    }
    acc
}

/// `f = 1 - (1 - nu^l)^k` and `f' = k l nu^(l-1) (1 - nu^l)^(k-1)`.
fn theta_f_fprime(nu: DdC, l: u32, k: u32) -> (DdC, DdC) {
    let one = DdC::from_c64(C64::new(1.0, 0.0));
    let nul1 = ddc_powu(nu, l - 1);
    let nul = nul1.mul(nu);
    let g = one.sub(nul);
    let gk1 = ddc_powu(g, k - 1);
    let gk = gk1.mul(g);
    let f = one.sub(gk);
    let kl = DdC::from_c64(C64::new(k as f64 * l as f64, 0.0));
    let fp = kl.mul(nul1).mul(gk1);
    (f, fp)
}

/// A few double-double Newton steps; the seed is within float rounding of a
/// true root, so this settles far below the residual tolerance even when
/// `k l` conditioning would swamp plain f64.
fn polish_theta_root(nu0: C64, l: u32, k: u32) -> (C64, f64) {
    let mut nu = DdC::from_c64(nu0);
    for _ in 0..3 {
        let (f, fp) = theta_f_fprime(nu, l, k);
        if fp.norm() == 0.0 {
            break;
        }
        nu = nu.sub(f.div(fp));
    }
    let (f, _) = theta_f_fprime(nu, l, k);
    (nu.to_c64(), f.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Poly;
    use crate::Q;
    use num_traits::One;

    #[test]
    fn worked_example_l2_k12() {
        let target = C64::from_polar(0.7194, -0.6545);
        let hit = find_root_near_disk0(target, 1e-3).unwrap();
        assert_eq!((hit.l, hit.k, hit.j), (2, 12, 1));
        assert!((hit.omega - C64::from_polar(1.0, PI / 6.0)).norm() < 1e-12);
        assert!(hit.distance < 1e-3);
        assert!(hit.residual < DENSITY_RESIDUAL_TOL);
        // hit.nu really is a root of 1 - (1 - p^2)^12
        let miss = &Poly::one() - &Poly::monomial(Q::one(), 2);
        let f = &Poly::one() - &miss.pow(12);
        assert!(f.eval_c(hit.nu).norm() < 1e-9);
    }

    #[test]
    fn tight_eps_still_lands_on_exact_root() {
        // the target IS the exact root, so the search must reach it
        let nu_exact = C64::from_polar((2.0 * (PI / 12.0).sin()).sqrt(), -5.0 * PI / 24.0);
        let hit = find_root_near_disk0(nu_exact, 1e-9).unwrap();
        assert_eq!((hit.l, hit.k), (2, 12));
        assert!(hit.distance < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        let inside = C64::new(0.5, 0.1);
        assert!(matches!(
            find_root_near_disk0(inside, 0.0),
            Err(DensityError::EpsNotPositive(_))
        ));
        assert!(matches!(
            find_root_near_disk0(inside, -1.0),
            Err(DensityError::EpsNotPositive(_))
        ));
        assert!(matches!(
            find_root_near_disk0(C64::new(1.5, 0.0), 1e-3),
            Err(DensityError::TargetOutsideDisk(_))
        ));
        assert!(matches!(
            find_root_near_disk0(C64::new(0.0, 0.0), 1e-3),
            Err(DensityError::TargetOutsideDisk(_))
        ));
    }

    #[test]
    fn impossible_tolerance_reports_best() {
        // tiny modulus with a generic argument: the argument resolution
        // pi/(2l) cannot reach 1e-9 before the caps bite
        let target = C64::from_polar(0.001, 0.1);
        match find_root_near_disk0(target, 1e-9) {
            Err(DensityError::BudgetExhausted { distance, best }) => {
                assert!(distance.is_finite());
                assert_eq!(distance, best.distance);
                assert!(best.residual < 1e-6, "best candidate is still a near-root");
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn moderate_targets_reachable() {
        // |target| close to 1 leaves room for large l, so modest eps works
        for (re, im) in [(0.4, 0.72), (-0.3, 0.8), (0.2, -0.9), (-0.85, -0.2)] {
            let target = C64::new(re, im);
            let hit = find_root_near_disk0(target, 0.05)
                .unwrap_or_else(|e| panic!("target {target}: {e}"));
            assert!(hit.distance < 0.05);
            assert!(hit.residual < DENSITY_RESIDUAL_TOL);
            assert!(hit.nu.norm() < 1.0 + 1e-9);
        }
    }
}
