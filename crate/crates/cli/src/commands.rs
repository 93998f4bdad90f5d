//! Subcommand implementations behind [`crate::run`].

use crate::args::{Cli, Command, FamilyKind, GraphInput, OutputFormat};
use crate::{cache, domain, enumerate, gio, graph6, svg, usage, CliError};
use anyhow::{anyhow, Context};
use rayon::prelude::*;
use relroots::dynamics::{self, AttractorStructure, Connectivity, OrbitOutcome};
use relroots::multigraph::{FamilySpec, Multigraph, TerminalPair};
use relroots::polynomial::Poly;
use relroots::reliability::{self, DensityError, RelCache};
use relroots::rootfinder::{all_roots, RootSet};
use relroots::stability::{self, StabilityError};
use relroots::C64;
use serde_json::json;
use std::path::Path;

pub fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Compute {
            input,
            factored,
            format,
            out,
            cache,
        } => cmd_compute(&input, factored, format, out.as_deref(), cache.as_deref()),
        Command::Family {
            family,
            n,
            k,
            l,
            m,
            factored,
            format,
            out,
        } => cmd_family(family, n, k, l, m, factored, format, out.as_deref()),
        Command::Roots {
            input,
            out,
            format,
            cache,
        } => cmd_roots(&input, out.as_deref(), format, cache.as_deref()),
        Command::Substitute {
            host,
            gadget,
            factored,
            format,
            out,
            emit_graph,
            cache,
        } => cmd_substitute(
            &host,
            &gadget,
            factored,
            format,
            out.as_deref(),
            emit_graph.as_deref(),
            cache.as_deref(),
        ),
        Command::Attractor {
            input,
            depth,
            budget,
            seed,
            out,
            svg,
            format,
        } => cmd_attractor(&input, depth, budget, seed, out.as_deref(), svg.as_deref(), format),
        Command::Connectivity {
            input,
            max_iter,
            format,
        } => cmd_connectivity(&input, max_iter, format),
        Command::Stability { input, format } => cmd_stability(&input, format),
        Command::Density {
            re,
            im,
            eps,
            lift,
            format,
        } => cmd_density(re, im, eps, lift, format),
        Command::Sweep {
            input,
            gen_order,
            s,
            t,
            out,
            svg,
            cache,
            format,
        } => cmd_sweep(
            input.as_deref(),
            gen_order,
            s.as_deref(),
            t.as_deref(),
            out.as_deref(),
            svg.as_deref(),
            cache.as_deref(),
            format,
        ),
        Command::Census { input, format } => cmd_census(&input, format),
    }
}

// ---------------------------------------------------------------- plumbing

fn need(v: Option<u32>, flag: &str, family: &str) -> Result<u32, CliError> {
    v.ok_or_else(|| usage(format!("family `{family}` requires {flag}")))
}

fn no_extra(v: Option<u32>, flag: &str, family: &str) -> Result<(), CliError> {
    if v.is_some() {
        Err(usage(format!("family `{family}` does not take {flag}")))
    } else {
        Ok(())
    }
}

fn family_spec(
    kind: FamilyKind,
    n: Option<u32>,
    k: Option<u32>,
    l: Option<u32>,
    m: Option<u32>,
) -> Result<FamilySpec, CliError> {
    let spec = match kind {
        FamilyKind::Cycle => {
            no_extra(l, "--l", "cycle")?;
            no_extra(m, "--m", "cycle")?;
            FamilySpec::Cycle {
                n: need(n, "--n", "cycle")?,
                k: need(k, "--k", "cycle")?,
            }
        }
        FamilyKind::Theta => {
            no_extra(n, "--n", "theta")?;
            no_extra(m, "--m", "theta")?;
            FamilySpec::Theta {
                l: need(l, "--l", "theta")?,
                k: need(k, "--k", "theta")?,
            }
        }
        FamilyKind::Bundle => {
            no_extra(n, "--n", "bundle")?;
            no_extra(k, "--k", "bundle")?;
            no_extra(l, "--l", "bundle")?;
            FamilySpec::Bundle {
                m: need(m, "--m", "bundle")?,
            }
        }
        FamilyKind::Path => {
            no_extra(n, "--n", "path")?;
            no_extra(k, "--k", "path")?;
            no_extra(m, "--m", "path")?;
            FamilySpec::Path {
                len: need(l, "--l", "path")?,
            }
        }
    };
    spec.validate().map_err(|e| usage(e.to_string()))?;
    Ok(spec)
}

fn family_id(spec: &FamilySpec) -> String {
    match *spec {
        FamilySpec::Cycle { n, k } => format!("cycle_n{n}_k{k}"),
        FamilySpec::Theta { l, k } => format!("theta_l{l}_k{k}"),
        FamilySpec::Bundle { m } => format!("bundle_m{m}"),
        FamilySpec::Path { len } => format!("path_l{len}"),
    }
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "graph".to_string())
}

/// Materialize a `--graph`/`--family` input as (graph, terminals, id).
fn resolve_input(input: &GraphInput) -> Result<(Multigraph, TerminalPair, String), CliError> {
    match (&input.graph, input.family) {
        (Some(_), Some(_)) => Err(usage("--graph and --family are mutually exclusive")),
        (None, None) => Err(usage("one of --graph or --family is required")),
        (Some(path), None) => {
            let (g, tp) = gio::read_graph(path, input.s.as_deref(), input.t.as_deref())?;
            Ok((g, tp, file_stem(path)))
        }
        (None, Some(kind)) => {
            let spec = family_spec(kind, input.n, input.k, input.l, input.m)?;
            let (g, tp) = spec.build().map_err(|e| domain(anyhow!(e)))?;
            let tp = override_terminals(&g, tp, input.s.as_deref(), input.t.as_deref())?;
            Ok((g, tp, family_id(&spec)))
        }
    }
}

fn override_terminals(
    g: &Multigraph,
    tp: TerminalPair,
    s: Option<&str>,
    t: Option<&str>,
) -> Result<TerminalPair, CliError> {
    if s.is_none() && t.is_none() {
        return Ok(tp);
    }
    let s = s.unwrap_or(&tp.s).to_string();
    let t = t.unwrap_or(&tp.t).to_string();
    for v in [&s, &t] {
        if !g.has_vertex(v) {
            return Err(domain(anyhow!("terminal `{v}` is not a vertex of the graph")));
        }
    }
    Ok(TerminalPair::new(s, t)?)
}

fn trel_with_cache(
    g: &Multigraph,
    tp: &TerminalPair,
    dir: Option<&Path>,
) -> Result<Poly, CliError> {
    match dir {
        None => Ok(reliability::trel(g, tp)?),
        Some(dir) => {
            let mut memo = cache::load(dir)?;
            let f = reliability::trel_cached(g, tp, &mut memo)?;
            cache::save(dir, &memo)?;
            Ok(f)
        }
    }
}

fn render_poly(f: &Poly, factored: bool) -> String {
    if factored {
        f.display_factored()
    } else {
        f.to_string()
    }
}

/// Print `text` and mirror it into `out` when given.
fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    print!("{text}");
    if let Some(path) = out {
        std::fs::write(path, text).with_context(|| format!("writing `{}`", path.display()))?;
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).with_context(|| format!("writing `{}`", path.display()))?;
    Ok(())
}

fn fmt_c(z: C64) -> String {
    if z.re.is_nan() || z.im.is_nan() {
        return "none".to_string();
    }
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{} {} {}i", z.re, sign, z.im.abs())
}

fn json_c(z: C64) -> serde_json::Value {
    if z.re.is_finite() && z.im.is_finite() {
        json!({"re": z.re, "im": z.im})
    } else {
        serde_json::Value::Null
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

// ------------------------------------------------------------- root tables

#[derive(Clone, Debug)]
struct RootRow {
    graph_id: String,
    s: String,
    t: String,
    re: f64,
    im: f64,
    residual: f64,
    zero_mult: u32,
}

const ROOT_CSV_HEADER: &str = "graph_id,s,t,re,im,residual,zero_mult\n";

/// Rows for one polynomial: the origin first (its multiplicity in
/// `zero_mult`), then the remaining roots sorted by (re, im), one row per
/// multiplicity copy with `zero_mult = 0`.
fn root_rows(graph_id: &str, tp: &TerminalPair, rs: &RootSet) -> Vec<RootRow> {
    let mut rows = Vec::new();
    let base = |re: f64, im: f64, residual: f64, zero_mult: u32| RootRow {
        graph_id: graph_id.to_string(),
        s: tp.s.clone(),
        t: tp.t.clone(),
        re,
        im,
        residual,
        zero_mult,
    };
    if rs.zero_multiplicity > 0 {
        rows.push(base(0.0, 0.0, 0.0, rs.zero_multiplicity));
    }
    let mut roots = rs.roots.clone();
    roots.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    for r in roots {
        for _ in 0..r.multiplicity {
            rows.push(base(r.value.re, r.value.im, r.residual, 0));
        }
    }
    rows
}

fn root_csv(rows: &[RootRow]) -> String {
    let mut out = String::from(ROOT_CSV_HEADER);
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{:e},{}\n",
            csv_field(&r.graph_id),
            csv_field(&r.s),
            csv_field(&r.t),
            r.re,
            r.im,
            r.residual,
            r.zero_mult
        ));
    }
    out
}

// -------------------------------------------------------------- subcommands

fn cmd_compute(
    input: &GraphInput,
    factored: bool,
    format: OutputFormat,
    out: Option<&Path>,
    cache_dir: Option<&Path>,
) -> Result<(), CliError> {
    let (g, tp, id) = resolve_input(input)?;
    let f = trel_with_cache(&g, &tp, cache_dir)?;
    let text = match format {
        OutputFormat::Text => format!("{}\n", render_poly(&f, factored)),
        OutputFormat::Json => {
            let doc = json!({
                "graph_id": id,
                "s": tp.s,
                "t": tp.t,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "degree": f.degree(),
                "polynomial": render_poly(&f, factored),
                "coefficients": f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
    };
    emit(out, &text)
}

#[allow(clippy::too_many_arguments)]
fn cmd_family(
    kind: FamilyKind,
    n: Option<u32>,
    k: Option<u32>,
    l: Option<u32>,
    m: Option<u32>,
    factored: bool,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let spec = family_spec(kind, n, k, l, m)?;
    let f = reliability::trel_family(&spec)?;
    let (g, tp) = spec.build()?;
    let engine = reliability::trel(&g, &tp)?;
    if engine != f {
        return Err(domain(anyhow!(
            "closed form and graph engine disagree for {}",
            family_id(&spec)
        )));
    }
    let text = match format {
        OutputFormat::Text => format!("{}\n", render_poly(&f, factored)),
        OutputFormat::Json => {
            let doc = json!({
                "graph_id": family_id(&spec),
                "s": tp.s,
                "t": tp.t,
                "degree": f.degree(),
                "polynomial": render_poly(&f, factored),
                "coefficients": f.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
    };
    emit(out, &text)
}

fn cmd_roots(
    input: &GraphInput,
    out: Option<&Path>,
    format: OutputFormat,
    cache_dir: Option<&Path>,
) -> Result<(), CliError> {
    let (g, tp, id) = resolve_input(input)?;
    let f = trel_with_cache(&g, &tp, cache_dir)?;
    if f.is_zero() {
        return Err(domain(anyhow!(
            "terminals `{}` and `{}` are disconnected: the reliability is identically zero",
            tp.s,
            tp.t
        )));
    }
    let rs = all_roots(&f)?;
    let rows = root_rows(&id, &tp, &rs);
    match format {
        OutputFormat::Text => {
            println!("trel({id}; {}, {}) = {f}", tp.s, tp.t);
            println!(
                "degree {}, zero multiplicity {}, reconstruction error {:e}",
                f.degree(),
                rs.zero_multiplicity,
                rs.reconstruction_error
            );
            if rs.zero_multiplicity > 0 {
                println!("root 0 + 0i  multiplicity {}  (exact)", rs.zero_multiplicity);
            }
            let mut roots = rs.roots.clone();
            roots.sort_by(|a, b| {
                (a.value.re, a.value.im)
                    .partial_cmp(&(b.value.re, b.value.im))
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            for r in &roots {
                println!(
                    "root {}  multiplicity {}  residual {:e}",
                    fmt_c(r.value),
                    r.multiplicity,
                    r.residual
                );
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "graph_id": id,
                "s": tp.s,
                "t": tp.t,
                "polynomial": f.to_string(),
                "degree": f.degree(),
                "zero_multiplicity": rs.zero_multiplicity,
                "reconstruction_error": rs.reconstruction_error,
                "roots": rs.roots.iter().map(|r| json!({
                    "re": r.value.re,
                    "im": r.value.im,
                    "multiplicity": r.multiplicity,
                    "residual": r.residual,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    if let Some(path) = out {
        write_file(path, &root_csv(&rows))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_substitute(
    host: &Path,
    gadget: &GraphInput,
    factored: bool,
    format: OutputFormat,
    out: Option<&Path>,
    emit_graph: Option<&Path>,
    cache_dir: Option<&Path>,
) -> Result<(), CliError> {
    let (hg, htp) = gio::read_graph(host, None, None)?;
    let host_id = file_stem(host);
    let (gg, gtp, gadget_id) = resolve_input(gadget)?;
    let (sub, subtp) = hg.substitute_gadget(&htp, &gg, &gtp)?;
    let composed = reliability::compose_gadget(&hg, &htp, &gg, &gtp)?;
    let direct = trel_with_cache(&sub, &subtp, cache_dir)?;
    if direct != composed {
        return Err(domain(anyhow!(
            "substituted-graph reliability does not match the composition (host {host_id}, gadget {gadget_id})"
        )));
    }
    if let Some(path) = emit_graph {
        gio::write_graph(path, &sub, &subtp)?;
    }
    let text = match format {
        OutputFormat::Text => format!("{}\n", render_poly(&composed, factored)),
        OutputFormat::Json => {
            let doc = json!({
                "host": host_id,
                "gadget": gadget_id,
                "vertices": sub.vertex_count(),
                "edges": sub.edge_count(),
                "s": subtp.s,
                "t": subtp.t,
                "degree": composed.degree(),
                "polynomial": render_poly(&composed, factored),
                "coefficients": composed.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc)?)
        }
    };
    emit(out, &text)
}

fn structure_text(s: AttractorStructure) -> &'static str {
    match s {
        AttractorStructure::TrivialPath => "terminal path: the attractor is {0}",
        AttractorStructure::ApproximatesJulia => "cloud approximates the Julia set",
        AttractorStructure::InverseOrbitAccumulatesJulia => {
            "inverse orbit accumulates on the Julia set"
        }
    }
}

fn origin_class_text(c: reliability::OriginClass) -> &'static str {
    match c {
        reliability::OriginClass::Superattracting => "superattracting",
        reliability::OriginClass::RationallyIndifferent => "rationally indifferent",
        reliability::OriginClass::Repelling => "repelling",
    }
}

fn cmd_attractor(
    input: &GraphInput,
    depth: u32,
    budget: usize,
    seed: u64,
    out: Option<&Path>,
    svg_out: Option<&Path>,
    format: OutputFormat,
) -> Result<(), CliError> {
    let (g, tp, id) = resolve_input(input)?;
    let rep = dynamics::attractor(&g, &tp, depth, budget, seed)?;
    match format {
        OutputFormat::Text => {
            println!(
                "attractor of {id}: {} points at depth {}",
                rep.cloud.points.len(),
                rep.cloud.depth
            );
            println!("reliability = {}", rep.reliability);
            println!(
                "origin: multiplier {} ({})",
                rep.origin.multiplier,
                origin_class_text(rep.origin.class)
            );
            println!("structure: {}", structure_text(rep.structure));
            println!(
                "budget hit: {}, dropped preimages: {}",
                if rep.cloud.budget_hit { "yes" } else { "no" },
                rep.cloud.dropped
            );
        }
        OutputFormat::Json => {
            let doc = json!({
                "graph_id": id,
                "s": tp.s,
                "t": tp.t,
                "polynomial": rep.reliability.to_string(),
                "points": rep.cloud.points.len(),
                "depth": rep.cloud.depth,
                "budget_hit": rep.cloud.budget_hit,
                "dropped": rep.cloud.dropped,
                "origin_multiplier": rep.origin.multiplier.to_string(),
                "origin_class": origin_class_text(rep.origin.class),
                "structure": structure_text(rep.structure),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    if let Some(path) = out {
        let mut csv = String::from("re,im,depth\n");
        for pt in &rep.cloud.points {
            csv.push_str(&format!("{},{},{}\n", pt.z.re, pt.z.im, pt.level));
        }
        write_file(path, &csv)?;
    }
    if let Some(path) = svg_out {
        let pts: Vec<(f64, f64)> = rep.cloud.points.iter().map(|p| (p.z.re, p.z.im)).collect();
        write_file(path, &svg::scatter(&pts))?;
    }
    Ok(())
}

fn verdict_text(v: Connectivity) -> &'static str {
    match v {
        Connectivity::DisconnectedCertified => "disconnected-certified",
        Connectivity::ConnectedHeuristic => "connected-heuristic",
        Connectivity::Inconclusive => "inconclusive",
    }
}

fn outcome_text(o: OrbitOutcome) -> String {
    match o {
        OrbitOutcome::Escaped { step, overflow } => {
            if overflow {
                format!("escaped at step {step} (float overflow)")
            } else {
                format!("escaped at step {step}")
            }
        }
        OrbitOutcome::BoundedHeuristic { iterations } => {
            format!("bounded through {iterations} iterations")
        }
        OrbitOutcome::CycleDetected { period, first_seen } => {
            format!("cycle of period {period} first seen at step {first_seen}")
        }
    }
}

fn cmd_connectivity(
    input: &GraphInput,
    max_iter: usize,
    format: OutputFormat,
) -> Result<(), CliError> {
    let (g, tp, id) = resolve_input(input)?;
    let f = reliability::trel(&g, &tp)?;
    if f.is_zero() {
        return Err(domain(anyhow!(
            "terminals `{}` and `{}` are disconnected: the reliability is identically zero",
            tp.s,
            tp.t
        )));
    }
    let v = dynamics::connectivity(&f, max_iter)?;
    match format {
        OutputFormat::Text => {
            println!("reliability of {id} = {f}");
            println!("Julia set: {}", verdict_text(v.verdict));
            for (z, orbit) in &v.orbits {
                println!(
                    "critical point {}: {}, max modulus {:e}, escape radius {:e}{}",
                    fmt_c(*z),
                    outcome_text(orbit.outcome),
                    orbit.max_modulus_seen,
                    orbit.escape_radius,
                    if orbit.certified { ", escape certified exactly" } else { "" }
                );
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "graph_id": id,
                "s": tp.s,
                "t": tp.t,
                "polynomial": f.to_string(),
                "verdict": verdict_text(v.verdict),
                "orbits": v.orbits.iter().map(|(z, orbit)| json!({
                    "critical_point": json_c(*z),
                    "outcome": outcome_text(orbit.outcome),
                    "max_modulus": orbit.max_modulus_seen,
                    "escape_radius": orbit.escape_radius,
                    "certified": orbit.certified,
                })).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(())
}

fn cmd_stability(input: &GraphInput, format: OutputFormat) -> Result<(), CliError> {
    if input.family == Some(FamilyKind::Cycle) && input.graph.is_none() {
        no_extra(input.l, "--l", "cycle")?;
        no_extra(input.m, "--m", "cycle")?;
        if input.s.is_some() || input.t.is_some() {
            return Err(usage("the cycle stability witness takes only --n and --k"));
        }
        let n = need(input.n, "--n", "cycle")?;
        let k = need(input.k, "--k", "cycle")?;
        let w = stability::cycle_left_halfplane_witness(n, k).map_err(|e| match e {
            StabilityError::InvalidCycle { .. } => usage(e.to_string()),
            other => domain(anyhow!(other)),
        })?;
        match format {
            OutputFormat::Text => {
                println!("cycle n={} k={}: g = {}", w.n, w.k, w.g);
                println!("reversed polynomial f = {}", w.f);
                println!("parity case: {}", w.parity_case);
                if w.degenerate_theta {
                    println!("note: n = 2k, so g degenerates to the two-path theta form");
                }
                println!(
                    "weakly stable: {}",
                    if w.hb.weakly_stable { "yes" } else { "no" }
                );
                if let Some(failure) = &w.hb.failure {
                    println!("failure: {failure}");
                }
                println!(
                    "left-half-plane roots of g: {} ({} boundary-ambiguous)",
                    w.lhp_root_count, w.boundary_ambiguous
                );
                println!("witness root: {}", fmt_c(w.witness_root));
            }
            OutputFormat::Json => {
                let doc = json!({
                    "n": w.n,
                    "k": w.k,
                    "g": w.g.to_string(),
                    "f": w.f.to_string(),
                    "parity_case": w.parity_case.to_string(),
                    "degenerate_theta": w.degenerate_theta,
                    "weakly_stable": w.hb.weakly_stable,
                    "failure": w.hb.failure.as_ref().map(|f| f.to_string()),
                    "lhp_root_count": w.lhp_root_count,
                    "boundary_ambiguous": w.boundary_ambiguous,
                    "witness_root": json_c(w.witness_root),
                });
                println!("{}", serde_json::to_string_pretty(&doc)?);
            }
        }
        return Ok(());
    }

    let (g, tp, id) = resolve_input(input)?;
    let f = reliability::trel(&g, &tp)?;
    if f.is_zero() {
        return Err(domain(anyhow!(
            "terminals `{}` and `{}` are disconnected: the reliability is identically zero",
            tp.s,
            tp.t
        )));
    }
    let hb = stability::hermite_biehler(&f)?;
    match format {
        OutputFormat::Text => {
            println!("reliability of {id} = {f}");
            println!("even part (x = p^2): {}", hb.f_even.to_string().replace('p', "x"));
            println!("odd part  (x = p^2): {}", hb.f_odd.to_string().replace('p', "x"));
            println!(
                "weakly stable: {}",
                if hb.weakly_stable { "yes" } else { "no" }
            );
            if let Some(failure) = &hb.failure {
                println!("failure: {failure}");
            }
            println!(
                "even-part roots: {} distinct, odd-part roots: {} distinct",
                hb.even_roots.len(),
                hb.odd_roots.len()
            );
        }
        OutputFormat::Json => {
            let doc = json!({
                "graph_id": id,
                "s": tp.s,
                "t": tp.t,
                "polynomial": f.to_string(),
                "even_part": hb.f_even.to_string().replace('p', "x"),
                "odd_part": hb.f_odd.to_string().replace('p', "x"),
                "weakly_stable": hb.weakly_stable,
                "failure": hb.failure.as_ref().map(|f| f.to_string()),
                "even_roots": hb.even_roots.len(),
                "odd_roots": hb.odd_roots.len(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(())
}

fn cmd_density(
    re: f64,
    im: f64,
    eps: f64,
    lift: Option<u32>,
    format: OutputFormat,
) -> Result<(), CliError> {
    if let Some(m) = lift {
        if m == 0 {
            return Err(usage("--lift must be >= 1"));
        }
    }
    let target = C64::new(re, im);
    let hit = reliability::find_root_near_disk0(target, eps).map_err(|e| match e {
        DensityError::EpsNotPositive(_) | DensityError::TargetOutsideDisk(_) => {
            usage(e.to_string())
        }
        other => domain(anyhow!(other)),
    })?;
    let lifted: Vec<(C64, f64)> = match lift {
        None => Vec::new(),
        Some(m) => reliability::lift_roots_disk1(hit.nu, m)
            .into_iter()
            .map(|z| {
                (
                    z,
                    reliability::theta_bundle_residual(hit.l, hit.k, m, z),
                )
            })
            .collect(),
    };
    match format {
        OutputFormat::Text => {
            println!("target {} (eps {eps})", fmt_c(target));
            println!(
                "hit: theta l={} k={} j={} branch={}",
                hit.l, hit.k, hit.j, hit.branch
            );
            println!("omega = {}", fmt_c(hit.omega));
            println!(
                "root nu = {}, distance {:e}, residual {:e}",
                fmt_c(hit.nu),
                hit.distance,
                hit.residual
            );
            if let Some(m) = lift {
                println!("lift through a {m}-bundle (roots near the unit disk at 1):");
                for (z, res) in &lifted {
                    println!("  {}  residual {:e}", fmt_c(*z), res);
                }
            }
        }
        OutputFormat::Json => {
            let doc = json!({
                "target": json_c(target),
                "eps": eps,
                "l": hit.l,
                "k": hit.k,
                "j": hit.j,
                "branch": hit.branch,
                "omega": json_c(hit.omega),
                "nu": json_c(hit.nu),
                "distance": hit.distance,
                "residual": hit.residual,
                "lift": lift.map(|m| json!({
                    "m": m,
                    "roots": lifted.iter().map(|(z, res)| json!({
                        "re": z.re,
                        "im": z.im,
                        "residual": res,
                    })).collect::<Vec<_>>(),
                })),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(())
}

fn cmd_census(input: &GraphInput, format: OutputFormat) -> Result<(), CliError> {
    let (g, tp, id) = resolve_input(input)?;
    let f = reliability::trel(&g, &tp)?;
    let c = stability::real_root_census(&f).map_err(|e| match e {
        StabilityError::ZeroPolynomial => domain(anyhow!(
            "terminals `{}` and `{}` are disconnected: the reliability is identically zero",
            tp.s,
            tp.t
        )),
        other => domain(anyhow!(other)),
    })?;
    let real_total = c.zero_multiplicity + c.positive_with_multiplicity + c.negative_with_multiplicity;
    match format {
        OutputFormat::Text => {
            println!("reliability of {id} = {f}");
            println!(
                "degree {}, root at 0 of multiplicity {}",
                c.degree, c.zero_multiplicity
            );
            println!(
                "positive roots: {} distinct, {} with multiplicity (Descartes bound {})",
                c.positive_distinct, c.positive_with_multiplicity, c.descartes_positive_bound
            );
            println!(
                "negative roots: {} distinct, {} with multiplicity (Descartes bound {})",
                c.negative_distinct, c.negative_with_multiplicity, c.descartes_negative_bound
            );
            println!(
                "real roots with multiplicity: {real_total} of {} ({})",
                c.degree,
                if c.all_roots_real {
                    "all roots real"
                } else {
                    "not all roots real"
                }
            );
        }
        OutputFormat::Json => {
            let doc = json!({
                "graph_id": id,
                "s": tp.s,
                "t": tp.t,
                "polynomial": f.to_string(),
                "degree": c.degree,
                "zero_multiplicity": c.zero_multiplicity,
                "positive_distinct": c.positive_distinct,
                "positive_with_multiplicity": c.positive_with_multiplicity,
                "negative_distinct": c.negative_distinct,
                "negative_with_multiplicity": c.negative_with_multiplicity,
                "descartes_positive_bound": c.descartes_positive_bound,
                "descartes_negative_bound": c.descartes_negative_bound,
                "real_total": real_total,
                "all_roots_real": c.all_roots_real,
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(())
}

// ------------------------------------------------------------------- sweep

struct SweepTask {
    graph_id: String,
    g: Multigraph,
    pairs: Vec<TerminalPair>,
}

struct TaskOutcome {
    rows: Vec<RootRow>,
    new_cache: Option<RelCache>,
    disconnected_pairs: usize,
    failures: Vec<String>,
}

fn clone_cache(c: &RelCache) -> RelCache {
    let mut out = RelCache::new();
    for (k, v) in c.iter() {
        out.insert(k.clone(), v.clone());
    }
    out
}

fn sweep_pairs(
    g: &Multigraph,
    designated: Option<(&str, &str)>,
) -> Result<Vec<TerminalPair>, String> {
    match designated {
        Some((s, t)) => {
            if !g.has_vertex(s) || !g.has_vertex(t) {
                return Err(format!("designated pair ({s}, {t}) is not in the graph"));
            }
            let tp = TerminalPair::new(s, t).map_err(|e| e.to_string())?;
            Ok(vec![tp])
        }
        None => {
            let vs: Vec<&String> = g.vertices().collect();
            let mut pairs = Vec::new();
            for i in 0..vs.len() {
                for j in (i + 1)..vs.len() {
                    pairs.push(
                        TerminalPair::new(vs[i].clone(), vs[j].clone())
                            .expect("distinct vertices"),
                    );
                }
            }
            Ok(pairs)
        }
    }
}

fn sweep_task(
    graph_id: String,
    n: usize,
    edges: &[(usize, usize)],
    designated: Option<(&str, &str)>,
) -> Result<Option<SweepTask>, String> {
    if n < 2 {
        return Ok(None);
    }
    let vs: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let es: Vec<(String, String)> = edges
        .iter()
        .map(|&(u, v)| (vs[u].clone(), vs[v].clone()))
        .collect();
    let (g, _) = Multigraph::from_edge_list(&vs, &es, &vs[0], &vs[1]).map_err(|e| e.to_string())?;
    let pairs = sweep_pairs(&g, designated)?;
    Ok(Some(SweepTask { graph_id, g, pairs }))
}

fn run_sweep_task(task: &SweepTask, initial: Option<&RelCache>) -> TaskOutcome {
    let mut memo = initial.map(clone_cache);
    let mut rows = Vec::new();
    let mut disconnected_pairs = 0;
    let mut failures = Vec::new();
    for tp in &task.pairs {
        let f = match memo.as_mut() {
            Some(memo) => reliability::trel_cached(&task.g, tp, memo),
            None => reliability::trel(&task.g, tp),
        };
        let f = match f {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("{} ({}, {}): {e}", task.graph_id, tp.s, tp.t));
                continue;
            }
        };
        if f.is_zero() {
            disconnected_pairs += 1;
            continue;
        }
        match all_roots(&f) {
            Ok(rs) => rows.extend(root_rows(&task.graph_id, tp, &rs)),
            Err(e) => failures.push(format!("{} ({}, {}): {e}", task.graph_id, tp.s, tp.t)),
        }
    }
    TaskOutcome {
        rows,
        new_cache: memo,
        disconnected_pairs,
        failures,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    input: Option<&Path>,
    gen_order: Option<usize>,
    s: Option<&str>,
    t: Option<&str>,
    out: Option<&Path>,
    svg_out: Option<&Path>,
    cache_dir: Option<&Path>,
    format: OutputFormat,
) -> Result<(), CliError> {
    let designated = s.zip(t);
    let mut malformed = 0usize;
    let mut tasks: Vec<SweepTask> = Vec::new();
    match (input, gen_order) {
        (None, None) => return Err(usage("give a graph6 file or --gen-order N")),
        (Some(_), Some(_)) => {
            return Err(usage("a graph6 file and --gen-order are mutually exclusive"))
        }
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading graph6 file `{}`", path.display()))?;
            for (i, line) in text.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let decoded = graph6::decode(line)
                    .map_err(|e| e.to_string())
                    .and_then(|(n, edges)| sweep_task(format!("g{i}"), n, &edges, designated));
                match decoded {
                    Ok(Some(task)) => tasks.push(task),
                    Ok(None) => {}
                    Err(e) => {
                        eprintln!("warning: `{}` line {}: {e}", path.display(), i + 1);
                        malformed += 1;
                    }
                }
            }
        }
        (None, Some(order)) => {
            for (i, edges) in enumerate::connected_graphs(order)?.iter().enumerate() {
                match sweep_task(format!("g{i}"), order, edges, designated) {
                    Ok(Some(task)) => tasks.push(task),
                    Ok(None) => {}
                    Err(e) => {
                        eprintln!("warning: generated graph {i}: {e}");
                        malformed += 1;
                    }
                }
            }
        }
    }

    let initial = match cache_dir {
        Some(dir) => Some(cache::load(dir)?),
        None => None,
    };
    let outcomes: Vec<TaskOutcome> = tasks
        .par_iter()
        .map(|task| run_sweep_task(task, initial.as_ref()))
        .collect();

    if let (Some(dir), Some(mut merged)) = (cache_dir, initial) {
        for o in &outcomes {
            if let Some(local) = &o.new_cache {
                for (k, v) in local.iter() {
                    merged.insert(k.clone(), v.clone());
                }
            }
        }
        cache::save(dir, &merged)?;
    }

    let mut rows = Vec::new();
    let mut disconnected_pairs = 0;
    let mut failures = 0;
    for o in outcomes {
        for failure in &o.failures {
            eprintln!("warning: {failure}");
        }
        failures += o.failures.len();
        disconnected_pairs += o.disconnected_pairs;
        rows.extend(o.rows);
    }

    let csv = root_csv(&rows);
    match out {
        Some(path) => write_file(path, &csv)?,
        None => print!("{csv}"),
    }
    if let Some(path) = svg_out {
        let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.re, r.im)).collect();
        write_file(path, &svg::scatter(&pts))?;
    }

    let graphs = tasks.len();
    let pairs: usize = tasks.iter().map(|t| t.pairs.len()).sum();
    match format {
        OutputFormat::Text => eprintln!(
            "sweep: {graphs} graphs, {pairs} pairs, {} root rows, {malformed} malformed \
             lines, {disconnected_pairs} disconnected pairs, {failures} failures",
            rows.len()
        ),
        OutputFormat::Json => {
            let doc = json!({
                "graphs": graphs,
                "pairs": pairs,
                "rows": rows.len(),
                "malformed_lines": malformed,
                "disconnected_pairs": disconnected_pairs,
                "failures": failures,
            });
            eprintln!("{}", serde_json::to_string(&doc)?);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_specs_are_strict() {
        let spec = family_spec(FamilyKind::Cycle, Some(4), Some(2), None, None).unwrap();
        assert_eq!(spec, FamilySpec::Cycle { n: 4, k: 2 });
        assert_eq!(family_id(&spec), "cycle_n4_k2");

        // missing parameter
        assert!(matches!(
            family_spec(FamilyKind::Cycle, Some(4), None, None, None),
            Err(CliError::Usage(_))
        ));
        // irrelevant parameter
        assert!(matches!(
            family_spec(FamilyKind::Bundle, Some(4), None, None, Some(2)),
            Err(CliError::Usage(_))
        ));
        // invalid values are usage errors too
        assert!(matches!(
            family_spec(FamilyKind::Cycle, Some(2), Some(1), None, None),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn root_rows_put_the_origin_first_then_sorted_roots() {
        let (g, tp) = FamilySpec::Cycle { n: 4, k: 2 }.build().unwrap();
        let f = reliability::trel(&g, &tp).unwrap();
        let rs = all_roots(&f).unwrap();
        let rows = root_rows("c4", &tp, &rs);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].zero_mult, 2);
        assert_eq!((rows[0].re, rows[0].im), (0.0, 0.0));
        assert!(rows[1].re < rows[2].re);
        assert!((rows[1].re + std::f64::consts::SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn csv_fields_escape_delimiters() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("q\"q"), "\"q\"\"q\"");
    }

    #[test]
    fn terminal_overrides_are_validated() {
        let (g, tp) = FamilySpec::Cycle { n: 4, k: 2 }.build().unwrap();
        let tp2 = override_terminals(&g, tp.clone(), Some("v1"), None).unwrap();
        assert_eq!((tp2.s.as_str(), tp2.t.as_str()), ("v1", "v2"));
        assert!(override_terminals(&g, tp.clone(), Some("zz"), None).is_err());
        assert!(override_terminals(&g, tp, Some("v2"), None).is_err());
    }
}
