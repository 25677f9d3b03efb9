use serde_json::json;

use salvetti_core::fixtures::{nonpappus_fixture_chirotope, FixtureSpec};
use salvetti_core::io::{
    emit_arrangement, emit_chirotope, emit_covectors, emit_salvetti_poset, parse_arrangement, parse_chirotope,
};
use salvetti_core::mh::{dual_complex, examples, mh_check as run_mh_check, salvetti_cw, CWPoset, CheckOutcome};
use salvetti_core::om::{are_isomorphic, verify_axioms, Chirotope};
use salvetti_core::os::{flats_from_covectors, gr_table, natural_order, nbc_sets, os_betti as nbc_betti};
use salvetti_core::salvetti::{
    build_salvetti_poset, chain_determination_check, f_vector_and_euler, nerve_check, retraction_check,
};
use salvetti_core::sign::format_set;
use salvetti_core::topes::{
    describe_crossings, distance_agreement, distance_preorder, lattice_equivalence_check, minimal_positive_paths,
    survey_paths, tope_poset,
};
use salvetti_core::{OrientedMatroid, SignVector};

use crate::input::Source;
use crate::report::{tuple, verdict, yes_no, Report};
use crate::{CliError, ComplexKind, Example, Format};

fn to_value<T: serde::Serialize>(x: &T) -> serde_json::Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn parse_tope(s: &str, flag: &str) -> Result<SignVector, CliError> {
    s.parse()
        .map_err(|e| CliError::Usage(format!("{flag} {s:?} is not a sign vector: {e}")))
}

fn describe_om(om: &OrientedMatroid) -> String {
    format!(
        "n={} rank={} covectors={} topes={}",
        om.n(),
        om.rank(),
        om.len(),
        om.tope_indices().len()
    )
}

pub fn verify(src: &Source) -> Result<Report, CliError> {
    let vectors = src.sign_vectors()?;
    let axioms = verify_axioms(&vectors)?;
    let mut r = Report::new("verify", src.describe());
    r.line(format!(
        "sign vectors: {} of length {}",
        vectors.len(),
        vectors[0].len()
    ));
    for (axiom, violation) in &axioms.results {
        match violation {
            None => r.line(format!("{axiom}: pass")),
            Some(v) => r.line(format!("{axiom}: fail, witness {v}")),
        }
    }
    r.check(axioms.passed());
    r.payload = to_value(&axioms);
    Ok(r)
}

pub fn salvetti(src: &Source, f_vector: bool, euler: bool, poset: bool, checks: bool) -> Result<Report, CliError> {
    let om = src.oriented_matroid()?;
    let sal = build_salvetti_poset(&om)?;
    let mut r = Report::new("salvetti", src.describe());
    if poset {
        let text = emit_salvetti_poset(&sal);
        r.payload = json!({ "poset": text });
        r.raw = Some(text);
        return Ok(r);
    }
    let f = f_vector_and_euler(&sal)?;
    r.line(describe_om(&om));
    let (show_f, show_chi) = if f_vector || euler {
        (f_vector, euler)
    } else {
        (true, true)
    };
    let mut summary = Vec::new();
    if show_f {
        summary.push(format!("f={}", tuple(&f.f_vector)));
    }
    if show_chi {
        summary.push(format!("χ={}", f.euler));
    }
    r.line(summary.join(" "));
    let mut payload = json!({ "f_vector": f.f_vector, "euler": f.euler, "topes": f.topes });
    if checks {
        let nerve = nerve_check(&om)?;
        r.line(format!(
            "nerve: {} ({} vertices, faces {}, {} facets)",
            verdict(nerve.agrees),
            nerve.vertices,
            tuple(&nerve.faces),
            nerve.facets
        ));
        if let Some(w) = &nerve.witness {
            r.line(format!(
                "  face in only one complex: {}",
                w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
            ));
        }
        let mut retraction_failures = Vec::new();
        for t in om.topes() {
            if !retraction_check(&om, &sal, &t)?.passed() {
                retraction_failures.push(t);
            }
        }
        retraction_failures.sort();
        r.line(format!(
            "retraction: {} ({} topes)",
            verdict(retraction_failures.is_empty()),
            om.tope_indices().len()
        ));
        if let Some(t) = retraction_failures.first() {
            r.line(format!("  fails at tope {t}"));
        }
        let chains = chain_determination_check(&sal);
        r.line(format!(
            "chain determination: {} ({} chains)",
            verdict(chains.passed),
            chains.chains
        ));
        if let Some(w) = &chains.witness {
            r.line(format!(
                "  chain {}",
                w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
            ));
        }
        r.check(nerve.agrees && retraction_failures.is_empty() && chains.passed);
        payload["nerve"] = to_value(&nerve);
        payload["retraction_failures"] = to_value(&retraction_failures);
        payload["chain_determination"] = to_value(&chains);
    }
    r.payload = payload;
    Ok(r)
}

pub fn homology(src: &Source, dump_matrices: bool) -> Result<Report, CliError> {
    let om = src.oriented_matroid()?;
    let oc = build_salvetti_poset(&om)?.order_complex();
    let cc = oc.chain_complex();
    let squared = cc.check_boundary_squared();
    let groups = cc.homology();
    let mut r = Report::new("homology", src.describe());
    r.line(describe_om(&om));
    r.line(format!("order complex f={}", tuple(&oc.f_vector())));
    if let Err(k) = squared {
        r.line(format!("boundary squared is nonzero in degree {k}"));
    }
    r.check(squared.is_ok());
    for (k, g) in groups.iter().enumerate() {
        let mut s = format!("H{k} = Z^{}", g.betti);
        for t in &g.torsion {
            s.push_str(&format!(" + Z/{t}"));
        }
        r.line(s);
    }
    let mut payload = json!({ "order_complex_f_vector": oc.f_vector(), "homology": groups });
    if dump_matrices {
        let mut dumps = Vec::new();
        for (k, b) in cc.boundaries.iter().enumerate() {
            r.line(format!("boundary {}:", k + 1));
            let text = b.to_text();
            for l in text.lines() {
                r.line(l);
            }
            dumps.push(text);
        }
        payload["boundaries"] = to_value(&dumps);
    }
    r.payload = payload;
    Ok(r)
}

fn parse_order(text: &str, n: usize) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("--order must list 1..{n} once each, got {text:?}"));
    let order: Vec<usize> = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .ok()
                .filter(|&e| (1..=n).contains(&e))
                .map(|e| e - 1)
        })
        .collect::<Option<_>>()
        .ok_or_else(bad)?;
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != natural_order(n) {
        return Err(bad());
    }
    Ok(order)
}

fn format_sets(sets: &[u64]) -> String {
    sets.iter().map(|&s| format_set(s)).collect::<Vec<_>>().join(" ")
}

pub fn os_betti(src: &Source, order: Option<&str>) -> Result<Report, CliError> {
    let om = src.oriented_matroid()?;
    let u = flats_from_covectors(&om)?;
    let (order, counts) = match order {
        Some(text) => {
            let order = parse_order(text, u.n())?;
            let counts = nbc_sets(&u, &order)?.counts();
            (order, counts)
        }
        None => (natural_order(u.n()), nbc_betti(&u)?),
    };
    let table = nbc_sets(&u, &order)?;
    let mut r = Report::new("os-betti", src.describe());
    r.line(describe_om(&om));
    let one_based: Vec<usize> = order.iter().map(|e| e + 1).collect();
    r.line(format!(
        "order: {}",
        one_based.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    ));
    r.line(format!("b={}", tuple(&counts)));
    r.line(format!("circuits: {}", format_sets(&table.circuits)));
    r.line(format!("broken circuits: {}", format_sets(&table.broken_circuits)));
    r.payload = json!({
        "order": one_based,
        "betti": counts,
        "circuits": table.circuits.iter().map(|&s| format_set(s)).collect::<Vec<_>>(),
        "broken_circuits": table.broken_circuits.iter().map(|&s| format_set(s)).collect::<Vec<_>>(),
    });
    Ok(r)
}

pub fn gr_compare(src: &Source) -> Result<Report, CliError> {
    let om = src.oriented_matroid()?;
    let gr = gr_table(&om)?;
    let failure = gr.first_failure(om.n());
    let mut r = Report::new("gr-compare", src.describe());
    r.line(describe_om(&om));
    r.line(format!(
        "{:>3}  {:>8}  {:>8}  {:>5}  {}",
        "k", "rank H_k", "torsion", "b_k", "match"
    ));
    let mut rows = Vec::new();
    for (k, rank, torsion, b) in gr.table() {
        let ok = rank == b && torsion.is_empty();
        let shown = if torsion.is_empty() {
            "-".to_string()
        } else {
            torsion.clone()
        };
        r.line(format!("{k:>3}  {rank:>8}  {shown:>8}  {b:>5}  {}", yes_no(ok)));
        rows.push(json!({ "degree": k, "homology_rank": rank, "torsion": torsion, "nbc": b, "match": ok }));
    }
    r.line(format!("alternating sum of b_k: {}", gr.alternating_sum));
    if let Some(e) = &failure {
        r.line(format!("mismatch: {e}"));
    }
    r.check(failure.is_none());
    r.payload = json!({ "rows": rows, "alternating_sum": gr.alternating_sum });
    Ok(r)
}

fn example_complex(e: Example) -> (CWPoset, &'static str) {
    match e {
        Example::Square => (examples::square(), "square"),
        Example::Triangle => (examples::triangle(), "triangle"),
        Example::Edge => (examples::single_edge(), "edge"),
        Example::Octagon => (examples::octagon(false), "octagon"),
        Example::OctagonTrapezoid => (examples::octagon(true), "octagon-trapezoid"),
    }
}

fn outcome_line(name: &str, o: &CheckOutcome) -> String {
    match &o.witness {
        None => format!("{name}: {}", verdict(o.passed)),
        Some(w) => {
            let within = w.within.as_ref().map_or(String::new(), |c| format!(" within {c}"));
            format!(
                "{name}: {} at vertex {}, cell {}{within}: {}",
                verdict(o.passed),
                w.vertex,
                w.cell,
                w.reason
            )
        }
    }
}

pub fn mh_check(
    src: Option<&Source>,
    example: Option<Example>,
    kind: ComplexKind,
    omega: bool,
) -> Result<Report, CliError> {
    let (q, input) = match (src, example) {
        (_, Some(e)) => {
            let (q, name) = example_complex(e);
            (q, format!("example {name}"))
        }
        (Some(src), None) => match src.cw_poset()? {
            Some(q) => (q, src.describe()),
            None => {
                let om = src.oriented_matroid()?;
                match kind {
                    ComplexKind::Salvetti => (
                        salvetti_cw(&build_salvetti_poset(&om)?)?,
                        format!("{}, Salvetti complex", src.describe()),
                    ),
                    ComplexKind::Dual => (dual_complex(&om)?, format!("{}, dual complex", src.describe())),
                }
            }
        },
        (None, None) => unreachable!("a source or an example is always given"),
    };
    let mut report = run_mh_check(&q)?;
    let mut r = Report::new("mh-check", input);
    r.line(format!("cells by dimension: {}", tuple(&q.counts_by_dim())));
    r.line(outcome_line("QMH", &report.qmh));
    r.line(outcome_line("LMH", &report.lmh));
    r.line(outcome_line("MH", &report.mh));
    r.line(format!("bipartite 1-skeleton: {}", yes_no(report.bipartite)));
    r.line(format!(
        "local distances equal global: {}",
        yes_no(report.local_equals_global)
    ));
    if omega {
        if let Some(entries) = &report.omega {
            for e in entries {
                r.line(format!(
                    "omega {} {}: nearest {} farthest {}",
                    e.vertex, e.cell, e.nearest, e.farthest
                ));
            }
        }
    } else {
        report.omega = None;
    }
    r.check(report.mh.passed);
    r.payload = to_value(&report);
    Ok(r)
}

pub fn topes(src: &Source, poset: bool, preorder: bool, base: Option<&str>) -> Result<Report, CliError> {
    let om = src.oriented_matroid()?;
    let mut r = Report::new("topes", src.describe());
    r.line(describe_om(&om));
    if poset || preorder {
        let base = parse_tope(
            base.ok_or_else(|| CliError::Usage("--poset and --preorder need --base <tope>".into()))?,
            "--base",
        )?;
        let mut payload = json!({ "base": base });
        r.line(format!("base: {base}"));
        if poset {
            let tp = tope_poset(&om, &base)?;
            let structure = tp.check_structure() && tp.complement_map_reverses_order();
            r.line(format!("levels: {}", tuple(&tp.level_sizes())));
            r.line(format!("graded by distance with antipodal top: {}", verdict(structure)));
            let edges = tp.hasse_edges();
            for (a, b) in &edges {
                r.line(format!("{a} < {b}"));
            }
            r.check(structure);
            payload["levels"] = to_value(&tp.level_sizes());
            payload["hasse"] = to_value(&edges);
        }
        if preorder {
            let levels = distance_preorder(&om, &base)?;
            for (k, level) in levels.iter().enumerate() {
                r.line(format!(
                    "level {k}: {}",
                    level.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
                ));
            }
            payload["preorder"] = to_value(&levels);
        }
        r.payload = payload;
        return Ok(r);
    }
    if base.is_some() {
        return Err(CliError::Usage("--base needs --poset or --preorder".into()));
    }
    let eq = lattice_equivalence_check(&om)?;
    let lattices = eq.topes.iter().filter(|v| v.lattice).count();
    r.line(format!("simplicial: {}", yes_no(eq.simplicial.simplicial)));
    if let Some(t) = &eq.simplicial.witness {
        r.line(format!("  interval below {t} is not Boolean"));
    }
    r.line(format!("tope posets that are lattices: {lattices}/{}", eq.topes.len()));
    if let Some(v) = eq.topes.iter().find(|v| !v.lattice) {
        if let Some((x, y, missing)) = &v.witness {
            r.line(format!("  base {}: {x} and {y} have no {missing}", v.base));
        }
    }
    r.line(format!(
        "simplicial iff all lattices: {}",
        verdict(eq.all_lattices == eq.simplicial.simplicial)
    ));
    r.line(format!("K(pi,1) predicted: {}", yes_no(eq.k_pi_1_predicted)));
    let dist = distance_agreement(&om)?;
    r.line(format!(
        "distance agreement: {} ({} pairs)",
        verdict(dist.agrees),
        dist.pairs
    ));
    if let Some((t, s, sep, a, b)) = &dist.witness {
        r.line(format!("  {t} -> {s}: separation {sep}, Salvetti {a}, dual {b}"));
    }
    r.check(dist.agrees);
    r.payload = json!({ "lattice_equivalence": eq, "distance_agreement": dist });
    Ok(r)
}

pub fn paths(src: &Source, from: Option<&str>, to: Option<&str>) -> Result<Report, CliError> {
    let om = src.oriented_matroid()?;
    let mut r = Report::new("paths", src.describe());
    r.line(describe_om(&om));
    match (from, to) {
        (Some(from), Some(to)) => {
            let (t, s) = (parse_tope(from, "--from")?, parse_tope(to, "--to")?);
            let found = minimal_positive_paths(&om, &t, &s)?;
            r.line(format!("from {t} to {s}: {} minimal positive paths", found.len()));
            for p in &found {
                let labels: Vec<String> = p.edges.iter().map(|e| e.cell.to_string()).collect();
                r.line(format!(
                    "crossing {}: {}",
                    p.crossed.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","),
                    labels.join(" ")
                ));
            }
            if let Some(p) = found.first() {
                r.line(format!("separating elements: {}", describe_crossings(p)));
            }
            r.payload = json!({ "from": t, "to": s, "paths": found });
        }
        (None, None) => {
            let survey = survey_paths(&om)?;
            r.line(format!("ordered tope pairs: {}", survey.pairs));
            r.line(format!("minimal positive paths: {}", survey.paths));
            r.line(format!(
                "each separating element crossed once: {}",
                verdict(survey.crossings_ok)
            ));
            r.line(format!("antipodal extensions: {}", verdict(survey.extensions_ok)));
            if let Some(w) = &survey.witness {
                r.line(format!("  first failure: {w}"));
            }
            r.check(survey.crossings_ok && survey.extensions_ok);
            r.payload = json!({
                "pairs": survey.pairs,
                "paths": survey.paths,
                "crossings_ok": survey.crossings_ok,
                "extensions_ok": survey.extensions_ok,
                "witness": survey.witness,
            });
        }
        _ => return Err(CliError::Usage("give both --from and --to, or neither".into())),
    }
    Ok(r)
}

pub fn isomorphic(a: &Source, b: &Source) -> Result<Report, CliError> {
    let (x, y) = (a.oriented_matroid()?, b.oriented_matroid()?);
    let iso = are_isomorphic(&x, &y)?;
    let mut r = Report::new("isomorphic", format!("{} vs {}", a.describe(), b.describe()));
    r.line(format!("first: {}", describe_om(&x)));
    r.line(format!("second: {}", describe_om(&y)));
    r.line(format!("isomorphic: {}", yes_no(iso.is_some())));
    if let Some(i) = &iso {
        r.line(format!(
            "element map: {}",
            i.perm
                .iter()
                .enumerate()
                .map(|(e, f)| format!("{}->{}", e + 1, f + 1))
                .collect::<Vec<_>>()
                .join(" ")
        ));
        r.line(format!("reoriented: {}", format_set(i.flip)));
    }
    r.check(iso.is_some());
    r.payload = json!({
        "isomorphic": iso.is_some(),
        "perm": iso.as_ref().map(|i| i.perm.iter().map(|e| e + 1).collect::<Vec<_>>()),
        "reoriented": iso.as_ref().map(|i| format_set(i.flip)),
    });
    Ok(r)
}

pub fn gen(src: &Source, format: Format) -> Result<Report, CliError> {
    let om = src.oriented_matroid()?;
    let unavailable = |what: &str| CliError::Usage(format!("{} has no {what}", src.describe()));
    let text = match format {
        Format::Cov => emit_covectors(&om),
        Format::Arr => match src {
            Source::Fixture(spec) => {
                emit_arrangement(&spec.arrangement().ok_or_else(|| unavailable("realizing arrangement"))?)
            }
            Source::File(path) if src.has_extension("arr") => {
                emit_arrangement(&parse_arrangement(&salvetti_core::io::read_text(path)?)?)
            }
            Source::File(_) => return Err(unavailable("arrangement")),
        },
        Format::Chi => emit_chirotope(&match src {
            Source::Fixture(FixtureSpec::NonPappus) => nonpappus_fixture_chirotope()?,
            Source::Fixture(spec) => {
                Chirotope::from_arrangement(&spec.arrangement().ok_or_else(|| unavailable("chirotope"))?)?
            }
            Source::File(path) if src.has_extension("chi") => parse_chirotope(&salvetti_core::io::read_text(path)?)?,
            Source::File(path) if src.has_extension("arr") => {
                Chirotope::from_arrangement(&parse_arrangement(&salvetti_core::io::read_text(path)?)?)?
            }
            Source::File(_) => return Err(unavailable("chirotope")),
        }),
    };
    let mut r = Report::new("gen", src.describe());
    r.payload = json!({ "format": format!("{format:?}").to_lowercase(), "content": text });
    r.raw = Some(text);
    Ok(r)
}
