//! Numeric root finding with validated output.
//!
//! The pipeline for exact-coefficient input: divide out the root at the
//! origin exactly, run simultaneous Aberth-Ehrlich iteration on the deflated
//! monic polynomial from initial points on a circle, polish every root with
//! Newton steps in double-double precision, cluster to estimate
//! multiplicities, enforce conjugate symmetry, and validate both residuals
//! and a full coefficientwise reconstruction of the polynomial from its
//! roots. Failures are reported with the partial result attached; nothing
//! is silently dropped.

pub(crate) mod dd;

pub(crate) use dd::{coeffs_from_q, eval_poly_and_deriv, DdC};

use crate::polynomial::{cauchy_bound_q, Poly};
use crate::{q_to_f64, C64};

/// Residual tolerance on the deflated, monic-scaled polynomial.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Maximum Aberth sweeps before giving up.
const MAX_SWEEPS: usize = 200;
/// Maximum double-double Newton polishing steps per root.
const MAX_POLISH: usize = 50;
/// Cluster radius for multiplicity estimation.
const CLUSTER_RADIUS: f64 = 1e-6;
/// Margin inside which a region-membership call refuses to decide.
pub const BOUNDARY_MARGIN: f64 = 1e-9;

/// One located root of the deflated polynomial.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FoundRoot {
    pub value: C64,
    /// `|g(value)|` for the deflated monic polynomial `g`, evaluated in
    /// double-double precision at the reported double value.
    pub residual: f64,
    /// Cluster size: a multiplicity estimate (exact only for the root at 0,
    /// which is deflated rationally and reported separately).
    pub multiplicity: u32,
}

/// All complex roots of a polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// Exact multiplicity of the root at the origin.
    pub zero_multiplicity: u32,
    /// The remaining roots, sorted by (re, im).
    pub roots: Vec<FoundRoot>,
    /// Max coefficientwise error of `lc * prod (p - r_i)^(m_i)` against the
    /// polynomial, relative to `max(1, |coefficient|)`.
    pub reconstruction_error: f64,
}

impl RootSet {
    /// Roots counted with multiplicity, plus the origin's multiplicity:
    /// always the degree of the input.
    pub fn total_multiplicity(&self) -> u32 {
        self.zero_multiplicity + self.roots.iter().map(|r| r.multiplicity).sum::<u32>()
    }

    /// Every root (the origin included) as `(value, multiplicity)`.
    pub fn all_roots(&self) -> Vec<(C64, u32)> {
        let mut out = Vec::with_capacity(self.roots.len() + 1);
        if self.zero_multiplicity > 0 {
            out.push((C64::new(0.0, 0.0), self.zero_multiplicity));
        }
        out.extend(self.roots.iter().map(|r| (r.value, r.multiplicity)));
        out
    }
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum RootFindError {
    #[error("the zero polynomial has no root set")]
    ZeroPolynomial,
    #[error(
        "root iteration did not converge: worst residual {worst_residual:.3e} after {sweeps} sweeps"
    )]
    NotConverged {
        sweeps: usize,
        worst_residual: f64,
        partial: RootSet,
    },
    #[error("root reconstruction mismatch: max relative coefficient error {error:.3e}")]
    ReconstructionFailed { error: f64, partial: RootSet },
}

/// Regions of the complex plane the reliability-root analysis filters by.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Region {
    /// `Re z < 0`.
    LeftHalfPlane,
    /// `|z - center| > radius`.
    OutsideDisk { center: C64, radius: f64 },
    /// `z` real with `a < z < b`.
    RealInterval { a: f64, b: f64 },
}

/// Roots selected by a region, with the boundary-ambiguous ones set aside
/// rather than silently classified.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RegionSelection {
    pub inside: Vec<FoundRoot>,
    pub boundary_ambiguous: Vec<FoundRoot>,
}

impl RegionSelection {
    /// Number of inside roots counted with multiplicity.
    pub fn count_with_multiplicity(&self) -> u32 {
        self.inside.iter().map(|r| r.multiplicity).sum()
    }
}

/// Filter the roots of `rs` (the origin root included) by strict membership
/// in `region`; roots within `1e-9` of the region's boundary are reported as
/// ambiguous instead of being classified either way.
pub fn region_filter(rs: &RootSet, region: &Region) -> RegionSelection {
    let mut sel = RegionSelection::default();
    let mut candidates = Vec::new();
    if rs.zero_multiplicity > 0 {
        candidates.push(FoundRoot {
            value: C64::new(0.0, 0.0),
            residual: 0.0,
            multiplicity: rs.zero_multiplicity,
        });
    }
    candidates.extend(rs.roots.iter().copied());
    for r in candidates {
        let z = r.value;
        match *region {
            Region::LeftHalfPlane => {
                if z.re.abs() <= BOUNDARY_MARGIN {
                    sel.boundary_ambiguous.push(r);
                } else if z.re < 0.0 {
                    sel.inside.push(r);
                }
            }
            Region::OutsideDisk { center, radius } => {
                let d = (z - center).norm();
                if (d - radius).abs() <= BOUNDARY_MARGIN {
                    sel.boundary_ambiguous.push(r);
                } else if d > radius {
                    sel.inside.push(r);
                }
            }
            Region::RealInterval { a, b } => {
                let near_real = z.im.abs() <= BOUNDARY_MARGIN;
                let near_edge = (z.re - a).abs() <= BOUNDARY_MARGIN
                    || (z.re - b).abs() <= BOUNDARY_MARGIN;
                if z.im == 0.0 && z.re > a && z.re < b && !near_edge {
                    sel.inside.push(r);
                } else if near_real && z.re > a - BOUNDARY_MARGIN && z.re < b + BOUNDARY_MARGIN {
                    sel.boundary_ambiguous.push(r);
                }
            }
        }
    }
    sel
}

/// Joint Horner evaluation of a monic complex polynomial and its derivative.
fn horner_both(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Aberth-Ehrlich simultaneous iteration on a monic polynomial given by
/// ascending coefficients (`coeffs.last() == 1`, degree >= 1). Returns the
/// approximations and the number of sweeps used; convergence is judged by
/// the caller through residuals after polishing.
fn aberth(coeffs: &[C64], init_radius: f64) -> (Vec<C64>, usize) {
    let d = coeffs.len() - 1;
    let mut z: Vec<C64> = (0..d)
        .map(|i| {
            // Irrational angle offset keeps every start point off the real
            // axis (a trap for conjugate-symmetric iterations).
            let theta = 2.0 * std::f64::consts::PI * (i as f64 + 0.3137) / d as f64;
            C64::from_polar(init_radius.max(0.5), theta)
        })
        .collect();
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        let mut max_step = 0.0f64;
        for i in 0..d {
            let (p, dp) = horner_both(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            if dp.norm() == 0.0 {
                // Landed exactly on a critical point: nudge deterministically.
                let nudge = C64::new(1e-3, 1e-3) * (1.0 + z[i].norm());
                z[i] += nudge;
                max_step = f64::INFINITY;
                continue;
            }
            let newton = p / dp;
            let mut repulsion = C64::new(0.0, 0.0);
            for j in 0..d {
                if j == i {
                    continue;
                }
                let diff = z[i] - z[j];
                if diff.norm_sqr() > 0.0 {
                    repulsion += diff.inv();
                }
            }
            let denom = C64::new(1.0, 0.0) - newton * repulsion;
            let w = if denom.norm() < 1e-300 { newton } else { newton / denom };
            z[i] -= w;
            let rel = w.norm() / (1.0 + z[i].norm());
            if rel > max_step {
                max_step = rel;
            }
        }
        if max_step < 1e-13 {
            break;
        }
        // Multiple roots plateau around sqrt(eps); hand over to the
        // double-double polish once the cluster is tight enough.
        if sweeps >= 60 && max_step < 3e-7 {
            break;
        }
    }
    (z, sweeps)
}

/// Newton-polish one approximation in double-double precision.
fn polish(coeffs_dd: &[DdC], z0: C64) -> C64 {
    let mut z = DdC::from_c64(z0);
    for _ in 0..MAX_POLISH {
        let (p, dp) = eval_poly_and_deriv(coeffs_dd, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p.div(dp);
        z = z.sub(step);
        if step.norm() <= 1e-30 * (1.0 + z.norm()) {
            break;
        }
    }
    z.to_c64()
}

fn residual_at(coeffs_dd: &[DdC], z: C64) -> f64 {
    eval_poly_and_deriv(coeffs_dd, DdC::from_c64(z)).0.norm()
}

/// Greedy clustering at [`CLUSTER_RADIUS`]; returns (mean value, size).
fn cluster(mut values: Vec<C64>) -> Vec<(C64, u32)> {
    values.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).expect("finite"));
    let mut clusters: Vec<(C64, u32)> = Vec::new();
    'next: for v in values {
        for (mean, count) in clusters.iter_mut() {
            if (*mean - v).norm() <= CLUSTER_RADIUS {
                let n = *count as f64;
                *mean = (*mean * n + v) / (n + 1.0);
                *count += 1;
                continue 'next;
            }
        }
        clusters.push((v, 1));
    }
    clusters
}

/// Snap nearly-real roots onto the axis and average conjugate pairs so the
/// reported set is exactly conjugate-symmetric (the input has real
/// coefficients).
fn symmetrize(clusters: &mut [(C64, u32)]) {
    for (z, _) in clusters.iter_mut() {
        if z.im.abs() <= BOUNDARY_MARGIN * (1.0 + z.re.abs()) {
            *z = C64::new(z.re, 0.0);
        }
    }
    let n = clusters.len();
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] || clusters[i].0.im <= 0.0 {
            continue;
        }
        // best conjugate partner below the axis
        let mut best: Option<(usize, f64)> = None;
        for (j, cl) in clusters.iter().enumerate() {
            if used[j] || cl.0.im >= 0.0 || cl.1 != clusters[i].1 {
                continue;
            }
            let d = (cl.0.conj() - clusters[i].0).norm();
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((j, d));
            }
        }
        if let Some((j, d)) = best {
            if d <= 2.0 * CLUSTER_RADIUS {
                let re = 0.5 * (clusters[i].0.re + clusters[j].0.re);
                let im = 0.5 * (clusters[i].0.im - clusters[j].0.im);
                clusters[i].0 = C64::new(re, im);
                clusters[j].0 = C64::new(re, -im);
                used[i] = true;
                used[j] = true;
            }
        }
    }
}

/// Expand `prod (p - r)^m` in complex doubles.
fn expand_from_roots(roots: &[(C64, u32)]) -> Vec<C64> {
    let mut coeffs = vec![C64::new(1.0, 0.0)];
    for &(r, m) in roots {
        for _ in 0..m {
            let mut next = vec![C64::new(0.0, 0.0); coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            coeffs = next;
        }
    }
    coeffs
}

/// All complex roots of an exact-coefficient polynomial.
///
/// The root at the origin is divided out exactly (its multiplicity is
/// exact); the rest are found numerically and validated: every residual of
/// the deflated monic polynomial must be below `1e-8`, and the polynomial
/// re-expanded from the roots must match coefficientwise to `1e-6`
/// (relative). On failure the partial result rides along in the error.
pub fn all_roots(f: &Poly) -> Result<RootSet, RootFindError> {
    if f.is_zero() {
        return Err(RootFindError::ZeroPolynomial);
    }
    let (k, g) = f.deflate_zero_root();
    if g.degree() == 0 {
        return Ok(RootSet {
            zero_multiplicity: k,
            roots: Vec::new(),
            reconstruction_error: 0.0,
        });
    }
    let monic = g.monic();
    let coeffs_dd = coeffs_from_q(monic.coeffs());
    let coeffs_c: Vec<C64> = monic
        .coeffs()
        .iter()
        .map(|c| C64::new(q_to_f64(c), 0.0))
        .collect();

    let d = monic.degree();
    let (raw, sweeps) = if d == 1 {
        // exact closed form: p + c0 = 0
        (vec![C64::new(-q_to_f64(&monic.coeff(0)), 0.0)], 0)
    } else {
        let radius = q_to_f64(&cauchy_bound_q(&monic)) / 2.0;
        aberth(&coeffs_c, radius)
    };

    let polished: Vec<C64> = raw.iter().map(|&z| polish(&coeffs_dd, z)).collect();
    let mut clusters = cluster(polished);
    symmetrize(&mut clusters);
    clusters.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).expect("finite"));

    let roots: Vec<FoundRoot> = clusters
        .iter()
        .map(|&(z, m)| FoundRoot {
            value: z,
            residual: residual_at(&coeffs_dd, z),
            multiplicity: m,
        })
        .collect();

    // Reconstruction check against the deflated monic polynomial.
    let rebuilt = expand_from_roots(&clusters);
    let mut recon_err = 0.0f64;
    for (i, c) in monic.coeffs().iter().enumerate() {
        let exact = q_to_f64(c);
        let got = rebuilt.get(i).copied().unwrap_or_else(|| C64::new(0.0, 0.0));
        let err = (got - C64::new(exact, 0.0)).norm() / exact.abs().max(1.0);
        recon_err = recon_err.max(err);
    }

    let set = RootSet {
        zero_multiplicity: k,
        roots,
        reconstruction_error: recon_err,
    };
    let worst = set
        .roots
        .iter()
        .map(|r| r.residual)
        .fold(0.0f64, f64::max);
    if worst > RESIDUAL_TOL {
        return Err(RootFindError::NotConverged {
            sweeps,
            worst_residual: worst,
            partial: set,
        });
    }
    if recon_err > 1e-6 {
        return Err(RootFindError::ReconstructionFailed {
            error: recon_err,
            partial: set,
        });
    }
    Ok(set)
}

/// All roots of a complex-coefficient polynomial (ascending coefficients,
/// nonzero leading coefficient), each polished in double-double precision;
/// used by the inverse-iteration dynamics. Returns the `d` roots sorted by
/// `(re, im)`; residuals are validated against the monic scaling.
pub fn complex_roots(coeffs: &[C64]) -> Result<Vec<C64>, RootFindError> {
    let d = coeffs.len().saturating_sub(1);
    if coeffs.is_empty() || coeffs[d].norm() == 0.0 {
        return Err(RootFindError::ZeroPolynomial);
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[d];
    let monic: Vec<C64> = coeffs.iter().map(|&c| c / lead).collect();
    let coeffs_dd: Vec<DdC> = monic.iter().map(|&c| DdC::from_c64(c)).collect();
    let cauchy = 1.0
        + monic[..d]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let (raw, sweeps) = if d == 1 {
        (vec![-monic[0]], 0)
    } else {
        aberth(&monic, cauchy / 2.0)
    };
    let mut out: Vec<C64> = raw.iter().map(|&z| polish(&coeffs_dd, z)).collect();
    out.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).expect("finite"));
    let worst = out
        .iter()
        .map(|&z| residual_at(&coeffs_dd, z))
        .fold(0.0f64, f64::max);
    if worst > RESIDUAL_TOL {
        let partial = RootSet {
            zero_multiplicity: 0,
            roots: out
                .iter()
                .map(|&z| FoundRoot {
                    value: z,
                    residual: residual_at(&coeffs_dd, z),
                    multiplicity: 1,
                })
                .collect(),
            reconstruction_error: f64::NAN,
        };
        return Err(RootFindError::NotConverged {
            sweeps,
            worst_residual: worst,
            partial,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Poly;

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_i64(coeffs)
    }

    fn assert_root_near(rs: &RootSet, target: C64, tol: f64) {
        assert!(
            rs.roots.iter().any(|r| (r.value - target).norm() < tol),
            "no root near {target} in {:?}",
            rs.roots
        );
    }

    #[test]
    fn antipodal_four_cycle_roots() {
        // 2p^2 - p^4: zero of multiplicity 2, then ±sqrt2
        let rs = all_roots(&p(&[0, 0, 2, 0, -1])).unwrap();
        assert_eq!(rs.zero_multiplicity, 2);
        assert_eq!(rs.roots.len(), 2);
        assert_eq!(rs.total_multiplicity(), 4);
        let s2 = 2f64.sqrt();
        assert_root_near(&rs, C64::new(-s2, 0.0), 1e-10);
        assert_root_near(&rs, C64::new(s2, 0.0), 1e-10);
        for r in &rs.roots {
            assert_eq!(r.value.im, 0.0);
            assert!(r.residual <= RESIDUAL_TOL);
        }
    }

    #[test]
    fn pure_monomial() {
        let rs = all_roots(&p(&[0, 0, 0, 0, 0, 7])).unwrap();
        assert_eq!(rs.zero_multiplicity, 5);
        assert!(rs.roots.is_empty());
    }

    #[test]
    fn golden_ratio_quartic() {
        // p^4 - p^2 - 1: roots ±sqrt(phi), ±i sqrt(phi - 1)
        let rs = all_roots(&p(&[-1, 0, -1, 0, 1])).unwrap();
        assert_eq!(rs.roots.len(), 4);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert_root_near(&rs, C64::new(phi.sqrt(), 0.0), 1e-10);
        assert_root_near(&rs, C64::new(-phi.sqrt(), 0.0), 1e-10);
        assert_root_near(&rs, C64::new(0.0, (phi - 1.0).sqrt()), 1e-10);
        assert_root_near(&rs, C64::new(0.0, -(phi - 1.0).sqrt()), 1e-10);
    }

    #[test]
    fn multiple_roots_cluster() {
        // (p-1)^3 (p+2)^2
        let f = &p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(2);
        let rs = all_roots(&f).unwrap();
        assert_eq!(rs.total_multiplicity(), 5);
        let mults: Vec<(f64, u32)> = rs
            .roots
            .iter()
            .map(|r| (r.value.re, r.multiplicity))
            .collect();
        assert_eq!(mults.len(), 2);
        assert!((mults[0].0 + 2.0).abs() < 1e-7 && mults[0].1 == 2);
        assert!((mults[1].0 - 1.0).abs() < 1e-7 && mults[1].1 == 3);
    }

    #[test]
    fn degree_one_and_degenerate_inputs() {
        let rs = all_roots(&p(&[-3, 2])).unwrap(); // 2p - 3
        assert_eq!(rs.roots.len(), 1);
        assert!((rs.roots[0].value - C64::new(1.5, 0.0)).norm() < 1e-15);
        assert!(all_roots(&Poly::zero()).is_err());
        let rs = all_roots(&p(&[5])).unwrap();
        assert_eq!(rs.total_multiplicity(), 0);
    }

    #[test]
    fn conjugate_pairs_are_exact() {
        // p^2 + p + 1 and a mixed sextic
        let rs = all_roots(&p(&[1, 1, 1])).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert_eq!(rs.roots[0].value.conj(), rs.roots[1].value);

        let rs = all_roots(&p(&[3, -2, 1, 5, -1, 2])).unwrap();
        let mut non_real: Vec<C64> = rs
            .roots
            .iter()
            .map(|r| r.value)
            .filter(|z| z.im != 0.0)
            .collect();
        while let Some(z) = non_real.pop() {
            let pos = non_real
                .iter()
                .position(|&w| w == z.conj())
                .expect("conjugate partner present");
            non_real.swap_remove(pos);
        }
    }

    #[test]
    fn region_filter_examples() {
        let rs = all_roots(&p(&[0, 0, 2, 0, -1])).unwrap();
        // outside the disk |z - 1| > 1: only -sqrt2 qualifies; the origin
        // root sits exactly on the boundary and must be flagged.
        let sel = region_filter(
            &rs,
            &Region::OutsideDisk {
                center: C64::new(1.0, 0.0),
                radius: 1.0,
            },
        );
        assert_eq!(sel.inside.len(), 1);
        assert!(sel.inside[0].value.re < 0.0);
        assert_eq!(sel.boundary_ambiguous.len(), 1);
        assert_eq!(sel.boundary_ambiguous[0].multiplicity, 2);

        // left half-plane of p - 1: empty
        let rs = all_roots(&p(&[-1, 1])).unwrap();
        let sel = region_filter(&rs, &Region::LeftHalfPlane);
        assert!(sel.inside.is_empty() && sel.boundary_ambiguous.is_empty());

        // real interval
        let rs = all_roots(&p(&[0, 0, 2, 0, -1])).unwrap();
        let sel = region_filter(&rs, &Region::RealInterval { a: -2.0, b: 0.0 });
        assert_eq!(sel.inside.len(), 1);
        assert!((sel.inside[0].value.re + 2f64.sqrt()).abs() < 1e-10);
        // origin root lies exactly on the endpoint b = 0
        assert_eq!(sel.boundary_ambiguous.len(), 1);
    }

    #[test]
    fn complex_coefficient_solver() {
        // (z - i)(z + 2i) = z^2 + i z + 2
        let roots = complex_roots(&[
            C64::new(2.0, 0.0),
            C64::new(0.0, 1.0),
            C64::new(1.0, 0.0),
        ])
        .unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().any(|z| (z - C64::new(0.0, 1.0)).norm() < 1e-12));
        assert!(roots.iter().any(|z| (z - C64::new(0.0, -2.0)).norm() < 1e-12));
    }

    #[test]
    fn residuals_meet_tolerance_on_moderate_degrees() {
        // degree 12 with spread-out integer coefficients
        let f = p(&[12, -7, 0, 3, 0, 0, -9, 1, 0, 0, 2, -1, 4]);
        let rs = all_roots(&f).unwrap();
        assert_eq!(rs.total_multiplicity(), 12);
        assert!(rs.reconstruction_error <= 1e-6);
    }
}
