//! Polynomial dynamics of reliability maps: inverse-orbit attractors,
//! critical forward orbits with certified escape, and Julia-set
//! connectivity verdicts.
//!
//! Boundedness of an orbit is reported as a heuristic (it is
//! semi-decidable numerically) while escape is certified: the escape
//! radius guarantees `|f(z)| >= 2|z|` beyond it, and the inequality is
//! re-verified in exact rational arithmetic at the escape point before an
//! orbit is declared escaped.

use crate::multigraph::{GraphError, Multigraph, TerminalPair};
use crate::polynomial::{escape_radius_q, Poly, PolyError};
use crate::reliability::{classify_origin, trel, OriginClass, OriginReport, RelError};
use crate::rootfinder::{all_roots, complex_roots, RootFindError, RootSet};
use crate::{q_to_f64, C64, Q};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, HashSet};

/// Default inverse-orbit depth.
pub const DEFAULT_DEPTH: u32 = 10;
/// Default inverse-orbit point budget.
pub const DEFAULT_BUDGET: usize = 200_000;
/// Default forward-orbit iteration cap.
pub const DEFAULT_MAX_ITER: usize = 1000;
/// Grid resolution at which cloud points are deduplicated.
pub const DEDUP_RESOLUTION: f64 = 1e-9;
/// Rounding used by forward-orbit cycle detection (12 decimal digits).
const CYCLE_DECIMALS: f64 = 1e12;
/// Number of random backward walks run once the breadth-first budget
/// is exhausted.
const RANDOM_WALKS: usize = 64;

#[derive(Clone, Debug, thiserror::Error)]
pub enum DynError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Root(#[from] RootFindError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Rel(#[from] RelError),
    #[error("inverse orbits require f(0) = 0, got f(0) = {0}")]
    OriginNotRoot(String),
    #[error("{what} requires a polynomial of degree >= {min}, got degree {got}")]
    DegreeTooSmall {
        what: &'static str,
        min: usize,
        got: usize,
    },
    #[error("max_iter must be >= 1")]
    ZeroIterations,
}

/// Critical points of `f`: all roots of `f'`. Requires `deg f >= 2`.
pub fn critical_points(f: &Poly) -> Result<RootSet, DynError> {
    if f.degree() < 2 {
        return Err(DynError::DegreeTooSmall {
            what: "critical_points",
            min: 2,
            got: f.degree(),
        });
    }
    Ok(all_roots(&f.derivative())?)
}

/// How a forward orbit ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitOutcome {
    /// `|z|` exceeded the certified escape radius at `step` (or the floats
    /// overflowed, flagged separately): the orbit provably diverges.
    Escaped { step: usize, overflow: bool },
    /// Stayed below the escape radius for all iterations; not a proof of
    /// boundedness.
    BoundedHeuristic { iterations: usize },
    /// Revisited (to 12 decimals) a point first seen at `first_seen`.
    CycleDetected { period: usize, first_seen: usize },
}

/// Verdict of a forward orbit under `z <- f(z)`.
#[derive(Clone, Debug)]
pub struct OrbitVerdict {
    pub outcome: OrbitOutcome,
    pub max_modulus_seen: f64,
    /// The certified escape radius used: `|f(z)| >= 2|z|` whenever
    /// `|z| >= escape_radius`.
    pub escape_radius: f64,
    /// For escaped orbits: the escape inequality re-verified in exact
    /// rational arithmetic at the escape point. Always true except on
    /// float overflow, where the point is no longer representable.
    pub certified: bool,
}

/// Evaluate `f` at the exact rational complex point `x + iy`.
fn eval_exact_complex(f: &Poly, x: &Q, y: &Q) -> (Q, Q) {
    let mut re = Q::zero();
    let mut im = Q::zero();
    for c in f.coeffs().iter().rev() {
        // (re + i im) * (x + i y) + c
        let nre = &re * x - &im * y + c;
        let nim = &re * y + &im * x;
        re = nre;
        im = nim;
    }
    (re, im)
}

/// Exact check of the escape inequality `|f(z)| >= 2 |z|` with `z` taken
/// as the exact rational value of the given doubles.
pub fn certify_escape(f: &Poly, z: C64) -> bool {
    let (Some(x), Some(y)) = (Q::from_float(z.re), Q::from_float(z.im)) else {
        return false;
    };
    let (fr, fi) = eval_exact_complex(f, &x, &y);
    let lhs = &fr * &fr + &fi * &fi;
    let rhs = (&x * &x + &y * &y) * Q::from_integer(4.into());
    lhs >= rhs
}

/// Iterate `z <- f(z)` from `z0`, classifying the orbit.
///
/// Escape is declared only once `|z|` exceeds the certified escape radius
/// AND the exact rational re-check of `|f(z)| >= 2|z|` passes at that
/// point; a cycle is detected when the orbit revisits a point rounded to
/// 12 decimals.
pub fn forward_orbit(f: &Poly, z0: C64, max_iter: usize) -> Result<OrbitVerdict, DynError> {
    if max_iter == 0 {
        return Err(DynError::ZeroIterations);
    }
    if f.degree() < 2 {
        return Err(DynError::DegreeTooSmall {
            what: "forward_orbit",
            min: 2,
            got: f.degree(),
        });
    }
    let escape_radius = q_to_f64(&escape_radius_q(f)?);

    let key = |z: C64| -> (i128, i128) {
        (
            (z.re * CYCLE_DECIMALS).round() as i128,
            (z.im * CYCLE_DECIMALS).round() as i128,
        )
    };

    let mut seen: HashMap<(i128, i128), usize> = HashMap::new();
    let mut z = z0;
    let mut max_modulus = z.norm();
    for step in 0..=max_iter {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Ok(OrbitVerdict {
                outcome: OrbitOutcome::Escaped {
                    step,
                    overflow: true,
                },
                max_modulus_seen: f64::INFINITY,
                escape_radius,
                certified: false,
            });
        }
        max_modulus = max_modulus.max(z.norm());
        if z.norm() > escape_radius && certify_escape(f, z) {
            return Ok(OrbitVerdict {
                outcome: OrbitOutcome::Escaped {
                    step,
                    overflow: false,
                },
                max_modulus_seen: max_modulus,
                escape_radius,
                certified: true,
            });
        }
        if let Some(&first_seen) = seen.get(&key(z)) {
            return Ok(OrbitVerdict {
                outcome: OrbitOutcome::CycleDetected {
                    period: step - first_seen,
                    first_seen,
                },
                max_modulus_seen: max_modulus,
                escape_radius,
                certified: false,
            });
        }
        seen.insert(key(z), step);
        if step == max_iter {
            break;
        }
        z = f.eval_c(z);
    }
    Ok(OrbitVerdict {
        outcome: OrbitOutcome::BoundedHeuristic {
            iterations: max_iter,
        },
        max_modulus_seen: max_modulus,
        escape_radius,
        certified: false,
    })
}

/// One point of an inverse-orbit cloud.
#[derive(Clone, Copy, Debug)]
pub struct CloudPoint {
    pub z: C64,
    /// Backward level: `|f^(level)(z)|` is numerically zero.
    pub level: u32,
}

/// A deduplicated inverse-orbit point cloud.
#[derive(Clone, Debug)]
pub struct PointCloud {
    /// Points in deterministic insertion order (level by level, each level
    /// in frontier order), deduplicated at [`DEDUP_RESOLUTION`].
    pub points: Vec<CloudPoint>,
    /// Backward iterations performed.
    pub depth: u32,
    /// Whether the point budget truncated breadth-first expansion (random
    /// backward walks fill the remaining depth).
    pub budget_hit: bool,
    /// Preimages lost to root-finding failures or non-finite values.
    pub dropped: usize,
}

impl PointCloud {
    fn grid_key(z: C64) -> (i64, i64) {
        (
            (z.re / DEDUP_RESOLUTION).round() as i64,
            (z.im / DEDUP_RESOLUTION).round() as i64,
        )
    }
}

fn sort_points(points: &mut [C64]) {
    points.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// All solutions of `f(z) = w`, sorted by `(re, im)`.
fn preimages(f: &Poly, w: C64) -> Result<Vec<C64>, RootFindError> {
    let mut coeffs: Vec<C64> = f.coeffs_f64().into_iter().map(|c| C64::new(c, 0.0)).collect();
    coeffs[0] -= w;
    let mut roots = complex_roots(&coeffs)?;
    sort_points(&mut roots);
    Ok(roots)
}

/// Backward orbit of 0: breadth-first preimage expansion for `depth`
/// levels, deduplicated on a grid, switching to seeded random backward
/// walks once `budget` cloud points exist.
///
/// Deterministic: the frontier is expanded in sorted order and the walk
/// randomness comes only from `seed`.
pub fn inverse_orbit(f: &Poly, depth: u32, budget: usize, seed: u64) -> Result<PointCloud, DynError> {
    if f.degree() < 2 {
        return Err(DynError::DegreeTooSmall {
            what: "inverse_orbit",
            min: 2,
            got: f.degree(),
        });
    }
    let at0 = f.coeff(0);
    if !at0.is_zero() {
        return Err(DynError::OriginNotRoot(at0.to_string()));
    }

    let mut cloud = PointCloud {
        points: vec![CloudPoint {
            z: C64::new(0.0, 0.0),
            level: 0,
        }],
        depth,
        budget_hit: false,
        dropped: 0,
    };
    let mut taken: HashSet<(i64, i64)> = HashSet::new();
    taken.insert(PointCloud::grid_key(C64::new(0.0, 0.0)));

    let mut frontier: Vec<C64> = vec![C64::new(0.0, 0.0)];
    let mut levels_done = 0u32;
    'bfs: for level in 1..=depth {
        let mut next: Vec<C64> = Vec::new();
        for &w in &frontier {
            match preimages(f, w) {
                Ok(roots) => {
                    for z in roots {
                        if !z.re.is_finite() || !z.im.is_finite() {
                            cloud.dropped += 1;
                            continue;
                        }
                        if !taken.insert(PointCloud::grid_key(z)) {
                            continue;
                        }
                        if cloud.points.len() >= budget {
                            cloud.budget_hit = true;
                            break 'bfs;
                        }
                        cloud.points.push(CloudPoint { z, level });
                        next.push(z);
                    }
                }
                Err(_) => cloud.dropped += f.degree(),
            }
        }
        frontier = next;
        levels_done = level;
    }

    if cloud.budget_hit && levels_done < depth {
        // Random backward walks from the origin reach full depth at O(1)
        // points per level instead of deg^level.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RANDOM_WALKS {
            let mut w = C64::new(0.0, 0.0);
            for level in 1..=depth {
                let Ok(roots) = preimages(f, w) else {
                    cloud.dropped += f.degree();
                    break;
                };
                if roots.is_empty() {
                    break;
                }
                let z = roots[rng.gen_range(0..roots.len())];
                if !z.re.is_finite() || !z.im.is_finite() {
                    cloud.dropped += 1;
                    break;
                }
                if taken.insert(PointCloud::grid_key(z)) {
                    cloud.points.push(CloudPoint { z, level });
                }
                w = z;
            }
        }
    }
    Ok(cloud)
}

/// What the inverse-orbit closure is, relative to the Julia set `J(f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AttractorStructure {
    /// The graph is a terminal path: the attractor is just `{0}`.
    TrivialPath,
    /// Adjacent terminals (`a1 >= 1`): 0 lies in `J(f)`, so the cloud
    /// approximates the Julia set itself.
    ApproximatesJulia,
    /// Nonadjacent terminals (`a1 = 0`): 0 is superattracting, the
    /// attractor is the inverse orbit and `J(f)` is its accumulation set.
    InverseOrbitAccumulatesJulia,
}

/// An attractor cloud plus the structural classification of the origin.
#[derive(Clone, Debug)]
pub struct AttractorReport {
    pub reliability: Poly,
    pub cloud: PointCloud,
    pub origin: OriginReport,
    pub structure: AttractorStructure,
}

/// The two-terminal attractor of a graph: the inverse orbit of 0 under its
/// reliability polynomial, with a structure report keyed on the origin's
/// fixed-point type.
pub fn attractor(
    g: &Multigraph,
    tp: &TerminalPair,
    depth: u32,
    budget: usize,
    seed: u64,
) -> Result<AttractorReport, DynError> {
    let f = trel(g, tp)?;
    if f.is_zero() {
        return Err(DynError::Graph(GraphError::TerminalsDisconnected {
            s: tp.s.clone(),
            t: tp.t.clone(),
        }));
    }
    let origin = classify_origin(&f)?;
    // A terminal path has trel = p^len: the attractor degenerates to {0}.
    if f == Poly::monomial(Q::one(), f.degree()) {
        return Ok(AttractorReport {
            reliability: f,
            cloud: PointCloud {
                points: vec![CloudPoint {
                    z: C64::new(0.0, 0.0),
                    level: 0,
                }],
                depth,
                budget_hit: false,
                dropped: 0,
            },
            origin,
            structure: AttractorStructure::TrivialPath,
        });
    }
    let cloud = inverse_orbit(&f, depth, budget, seed)?;
    let structure = match origin.class {
        OriginClass::Superattracting => AttractorStructure::InverseOrbitAccumulatesJulia,
        OriginClass::RationallyIndifferent | OriginClass::Repelling => {
            AttractorStructure::ApproximatesJulia
        }
    };
    Ok(AttractorReport {
        reliability: f,
        cloud,
        origin,
        structure,
    })
}

/// Connectivity classification of the Julia set of `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    /// At least one critical orbit provably escapes: `J(f)` is disconnected.
    DisconnectedCertified,
    /// Every critical orbit stayed bounded (heuristically) or cycled.
    ConnectedHeuristic,
    /// An orbit escaped numerically but could not be certified exactly.
    Inconclusive,
}

/// Per-critical-point orbit verdicts plus the aggregate connectivity call.
#[derive(Clone, Debug)]
pub struct ConnectivityVerdict {
    pub verdict: Connectivity,
    pub orbits: Vec<(C64, OrbitVerdict)>,
}

/// Julia-set connectivity via the critical-orbit criterion: `J(f)` is
/// connected iff every critical forward orbit is bounded. Escape is
/// certified; boundedness remains heuristic.
pub fn connectivity(f: &Poly, max_iter: usize) -> Result<ConnectivityVerdict, DynError> {
    let crit = critical_points(f)?;
    let mut orbits = Vec::new();
    let mut any_certified_escape = false;
    let mut any_uncertified_escape = false;
    for (z, _mult) in crit.all_roots() {
        let verdict = forward_orbit(f, z, max_iter)?;
        match verdict.outcome {
            OrbitOutcome::Escaped { .. } if verdict.certified => any_certified_escape = true,
            OrbitOutcome::Escaped { .. } => any_uncertified_escape = true,
            _ => {}
        }
        orbits.push((z, verdict));
    }
    let verdict = if any_certified_escape {
        Connectivity::DisconnectedCertified
    } else if any_uncertified_escape {
        Connectivity::Inconclusive
    } else {
        Connectivity::ConnectedHeuristic
    };
    Ok(ConnectivityVerdict { verdict, orbits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::FamilySpec;
    use crate::polynomial::Poly;
    use crate::q_from_i64;
    use crate::rootfinder::dd::{Dd, DdC};

    fn p(coeffs: &[i64]) -> Poly {
        Poly::from_i64(coeffs)
    }

    fn k23_adjacent() -> Poly {
        // p + 2p^3 - 2p^4 - p^5 + p^6
        p(&[0, 1, 0, 2, -2, -1, 1])
    }

    fn has_point_near(cloud: &PointCloud, target: C64, tol: f64) -> bool {
        cloud.points.iter().any(|cp| (cp.z - target).norm() < tol)
    }

    #[test]
    fn critical_point_examples() {
        // f = p + p^2 - p^3: f' = 1 + 2p - 3p^2, roots 1 and -1/3
        let rs = critical_points(&p(&[0, 1, 1, -1])).unwrap();
        let mut vals: Vec<f64> = rs.roots.iter().map(|r| r.value.re).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(rs.zero_multiplicity, 0);
        assert!((vals[0] + 1.0 / 3.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);

        // f = p + p^3 - p^4: critical points 1 and (-1 +- sqrt(15) i)/8
        let rs = critical_points(&p(&[0, 1, 0, 1, -1])).unwrap();
        let s15 = 15f64.sqrt() / 8.0;
        for target in [
            C64::new(1.0, 0.0),
            C64::new(-0.125, s15),
            C64::new(-0.125, -s15),
        ] {
            assert!(
                rs.roots.iter().any(|r| (r.value - target).norm() < 1e-10),
                "missing critical point {target}"
            );
        }

        // f = 2p^3 - p^6: critical points 0 (double) and cube roots of 1
        let rs = critical_points(&p(&[0, 0, 0, 2, 0, 0, -1])).unwrap();
        assert_eq!(rs.zero_multiplicity, 2);
        for j in 0..3 {
            let target = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / 3.0);
            assert!(rs.roots.iter().any(|r| (r.value - target).norm() < 1e-10));
        }
    }

    #[test]
    fn forward_orbit_bounded_c3() {
        let f = p(&[0, 1, 1, -1]);
        let v = forward_orbit(&f, C64::new(-1.0 / 3.0, 0.0), 1000).unwrap();
        assert!(matches!(v.outcome, OrbitOutcome::BoundedHeuristic { .. }));
        assert!(v.max_modulus_seen <= 1.0);
    }

    #[test]
    fn forward_orbit_cycle_at_roots_of_unity() {
        // f = 2p^k - p^(2k), z0 a k-th root of unity: f(z0) = 1, f(1) = 1
        for k in [2u32, 3, 5] {
            let mut coeffs = vec![0i64; 2 * k as usize + 1];
            coeffs[k as usize] = 2;
            coeffs[2 * k as usize] = -1;
            let f = p(&coeffs);
            let z0 = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / k as f64);
            let v = forward_orbit(&f, z0, 100).unwrap();
            match v.outcome {
                OrbitOutcome::CycleDetected { period, .. } => assert_eq!(period, 1),
                other => panic!("expected cycle, got {other:?}"),
            }
        }
    }

    #[test]
    fn forward_orbit_escapes_k23_critical_point() {
        let f = k23_adjacent();
        // the real critical point near -1.1576
        let crit = critical_points(&f).unwrap();
        let z0 = crit
            .roots
            .iter()
            .map(|r| r.value)
            .find(|z| z.im.abs() < 1e-12 && (z.re + 1.15758249342897).abs() < 1e-8)
            .expect("real critical point near -1.1576");
        let v = forward_orbit(&f, z0, 1000).unwrap();
        match v.outcome {
            OrbitOutcome::Escaped { step, overflow } => {
                assert!(!overflow);
                assert!(step <= 3);
                assert!(v.certified, "escape must be certified exactly");
                assert!(v.max_modulus_seen > v.escape_radius);
            }
            other => panic!("expected escape, got {other:?}"),
        }
        // the third iterate is astronomically large
        let mut z = z0;
        for _ in 0..3 {
            z = f.eval_c(z);
        }
        let m = z.norm();
        assert!(m > 1.0e19 && m < 2.0e19, "|f^3(r)| = {m:e}");
    }

    #[test]
    fn escape_certification_is_exact() {
        let f = p(&[0, 0, 2, 0, -1]); // 2p^2 - p^4, escape radius 10
        assert!(certify_escape(&f, C64::new(11.0, 0.0)));
        assert!(certify_escape(&f, C64::new(0.0, 10.5)));
        // near the origin the inequality fails (f(z) ~ 2z^2 is tiny)
        assert!(!certify_escape(&f, C64::new(0.1, 0.0)));
    }

    #[test]
    fn inverse_orbit_depth_one_and_two() {
        let f = p(&[0, 0, 2, 0, -1]); // 2p^2 - p^4
        let cloud = inverse_orbit(&f, 1, 10_000, 7).unwrap();
        let r2 = 2f64.sqrt();
        assert!(has_point_near(&cloud, C64::new(0.0, 0.0), 1e-12));
        assert!(has_point_near(&cloud, C64::new(r2, 0.0), 1e-9));
        assert!(has_point_near(&cloud, C64::new(-r2, 0.0), 1e-9));
        assert_eq!(cloud.points.len(), 3);

        // depth 2 adds the preimages of +-sqrt(2):
        //   of -sqrt2: z^2 = 1 + sqrt(1+sqrt2) -> +-1.59805...,
        //              z^2 = 1 - sqrt(1+sqrt2) -> +-0.74416... i
        //   of +sqrt2: z^2 = 1 +- i sqrt(sqrt2 - 1) -> four complex points
        let cloud = inverse_orbit(&f, 2, 10_000, 7).unwrap();
        let a = (1.0 + (1.0 + r2).sqrt()).sqrt(); // 1.59805318248...
        let b = ((1.0 + r2).sqrt() - 1.0).sqrt(); // 0.74415991159...
        for target in [
            C64::new(a, 0.0),
            C64::new(-a, 0.0),
            C64::new(0.0, b),
            C64::new(0.0, -b),
        ] {
            assert!(has_point_near(&cloud, target, 1e-9), "missing {target}");
        }
        // complex quadruple from +sqrt2: z^2 = 1 +- i*sqrt(sqrt2-1)
        let w = C64::new(1.0, (r2 - 1.0).sqrt());
        let z = w.sqrt(); // 1.04623303212... + 0.30757691314...i
        for target in [z, -z, z.conj(), -z.conj()] {
            assert!(has_point_near(&cloud, target, 1e-9), "missing {target}");
        }
        assert_eq!(cloud.points.len(), 11);

        // depth 0 is just the origin
        let cloud = inverse_orbit(&f, 0, 10_000, 7).unwrap();
        assert_eq!(cloud.points.len(), 1);
    }

    #[test]
    fn inverse_orbit_soundness_and_nesting() {
        let f = p(&[0, 1, 1, -1]); // C3 adjacent
        let shallow = inverse_orbit(&f, 4, 50_000, 3).unwrap();
        let deep = inverse_orbit(&f, 5, 50_000, 3).unwrap();
        assert!(!shallow.budget_hit && !deep.budget_hit);
        // soundness: f^level(z) returns to 0
        for cp in &shallow.points {
            let mut z = cp.z;
            for _ in 0..cp.level {
                z = f.eval_c(z);
            }
            assert!(z.norm() < 1e-6, "point {} at level {}", cp.z, cp.level);
        }
        // nesting: every shallow point appears in the deeper cloud
        for cp in &shallow.points {
            assert!(
                has_point_near(&deep, cp.z, 2.0 * DEDUP_RESOLUTION),
                "depth-4 point {} missing at depth 5",
                cp.z
            );
        }
    }

    #[test]
    fn inverse_orbit_budget_walks_are_deterministic() {
        let f = p(&[0, 0, 2, 0, -1]);
        let a = inverse_orbit(&f, 8, 40, 12345).unwrap();
        let b = inverse_orbit(&f, 8, 40, 12345).unwrap();
        assert!(a.budget_hit);
        assert_eq!(a.points.len(), b.points.len());
        for (x, y) in a.points.iter().zip(b.points.iter()) {
            assert_eq!(x.z, y.z);
            assert_eq!(x.level, y.level);
        }
        // a different seed changes the walk tail
        let c = inverse_orbit(&f, 8, 40, 54321).unwrap();
        let same = a.points.len() == c.points.len()
            && a.points.iter().zip(c.points.iter()).all(|(x, y)| x.z == y.z);
        assert!(!same, "different seeds should explore different walks");
        // walk points deeper than the BFS cutoff exist
        assert!(a.points.iter().any(|cp| cp.level == 8));
    }

    #[test]
    fn attractor_c4_antipodal_contains_neg_phi() {
        let (g, tp) = FamilySpec::Cycle { n: 4, k: 2 }.build().unwrap();
        let report = attractor(&g, &tp, 12, DEFAULT_BUDGET, 99).unwrap();
        assert_eq!(
            report.structure,
            AttractorStructure::InverseOrbitAccumulatesJulia
        );
        assert_eq!(report.origin.class, OriginClass::Superattracting);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(
            has_point_near(&report.cloud, C64::new(-phi, 0.0), 1e-6),
            "cloud must approach the repelling fixed point -phi"
        );
    }

    #[test]
    fn attractor_path_is_origin_only() {
        let (g, tp) = FamilySpec::Path { len: 3 }.build().unwrap();
        let report = attractor(&g, &tp, 10, 1000, 1).unwrap();
        assert_eq!(report.structure, AttractorStructure::TrivialPath);
        assert_eq!(report.cloud.points.len(), 1);
        assert_eq!(report.cloud.points[0].z, C64::new(0.0, 0.0));
    }

    #[test]
    fn attractor_adjacent_terminals_approximate_julia() {
        let (g, tp) = FamilySpec::Cycle { n: 4, k: 1 }.build().unwrap();
        let report = attractor(&g, &tp, 6, 50_000, 1).unwrap();
        assert_eq!(report.structure, AttractorStructure::ApproximatesJulia);
        assert_eq!(report.origin.multiplier, q_from_i64(1));
    }

    #[test]
    fn connectivity_examples() {
        // C3 adjacent: both critical orbits stay bounded
        let v = connectivity(&p(&[0, 1, 1, -1]), 1000).unwrap();
        assert_eq!(v.verdict, Connectivity::ConnectedHeuristic);
        assert_eq!(v.orbits.len(), 2);

        // K_{2,3} adjacent: a critical orbit escapes, certified
        let v = connectivity(&k23_adjacent(), 1000).unwrap();
        assert_eq!(v.verdict, Connectivity::DisconnectedCertified);
        assert!(v
            .orbits
            .iter()
            .any(|(_, o)| matches!(o.outcome, OrbitOutcome::Escaped { .. }) && o.certified));

        // C6 antipodal = 2p^3 - p^6: all critical orbits cycle
        let v = connectivity(&p(&[0, 0, 0, 2, 0, 0, -1]), 1000).unwrap();
        assert_eq!(v.verdict, Connectivity::ConnectedHeuristic);
        assert!(v
            .orbits
            .iter()
            .all(|(_, o)| matches!(o.outcome, OrbitOutcome::CycleDetected { .. })));
    }

    #[test]
    fn c4_adjacent_second_iterate_modulus_identity() {
        // f = p + p^3 - p^4 at r1 = (-1 + sqrt(15) i)/8: |f(f(r1))|^2 equals
        // 388912639 / 2^32 exactly; verify in double-double to 1e-20 relative.
        let f = p(&[0, 1, 0, 1, -1]);
        let coeffs = crate::rootfinder::dd::coeffs_from_q(f.coeffs());

        // sqrt(15) to double-double accuracy via one Newton step
        let s0 = Dd::from_f64(15f64.sqrt());
        let fifteen = Dd::from_f64(15.0);
        let half = Dd::from_f64(0.5);
        let s = s0.add(fifteen.div(s0)).mul(half);
        let eighth = Dd::from_f64(0.125);
        let r1 = DdC {
            re: Dd::from_f64(-0.125),
            im: s.mul(eighth),
        };

        let eval = |z: DdC| -> DdC {
            let mut acc = DdC {
                re: Dd::from_f64(0.0),
                im: Dd::from_f64(0.0),
            };
            for c in coeffs.iter().rev() {
                acc = acc.mul(z).add(*c);
            }
            acc
        };
        let f2 = eval(eval(r1));
        let modsq = f2.norm_sqr();
        let exact = Q::new(388912639.into(), 4294967296u64.into());
        let diff = modsq.sub(Dd::from_q(&exact));
        let rel = (diff.to_f64() / q_to_f64(&exact)).abs();
        assert!(rel < 1e-20, "relative error {rel:e}");
        // and the modulus is below 0.31 as the escape analysis requires
        assert!(modsq.to_f64().sqrt() < 0.31);
    }
}
