use std::collections::BTreeSet;
use std::io::Read;
use std::sync::Arc;

use qshape_core::homology::{
    classify_object, is_weak_equivalence, mesh_homology, mesh_homology_map, mesh_relevant_vertices, vertex_homology,
    Verdict,
};
use qshape_core::matrix::Matrix;
use qshape_core::meshcat::MeshCategory;
use qshape_core::module::render_normal_form;
use qshape_core::oracle::PathOracle;
use qshape_core::quiver::{Flavor, Vertex};
use qshape_core::repmod::{
    bridge_homology_vertex, bridge_window, complex_to_representation, kernel_of_morphism, RepMorphism, Representation,
};
use qshape_core::ring::Ring;
use serde_json::{json, Map, Value};

use crate::chain::chain_homology;
use crate::cli::{CategoryArgs, Command, Demo};
use crate::format::*;
use crate::random::{random_complex, rng};
use crate::report::{Report, Table};
use crate::with_ring;

/// Deepest derived degree the CLI will compute.
pub const MAX_DEGREE_LIMIT: usize = 6;
pub const DEFAULT_MAX_DEGREE: usize = 2;

pub const COUNTER_FIXTURE: &str = include_str!("../examples/counter.json");

pub fn read_input(path: &str) -> CliResult<Value> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Io(e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::input("", format!("malformed JSON: {e}")))
}

fn category_input(args: &CategoryArgs) -> CliResult<CategoryInput> {
    let ring = match &args.ring {
        Some(s) => Some(s.parse::<RingChoice>().map_err(|m| CliError::input("/ring", m))?),
        None => None,
    };
    let mut input = if let Some(path) = &args.category {
        CategoryInput::from_json(&read_input(path)?, "")?
    } else {
        let mut o = Map::new();
        o.insert("flavor".into(), json!(args.flavor.clone().unwrap_or_else(|| "double_an".into())));
        let n = args.n.ok_or_else(|| CliError::input("/n", "--n is required"))?;
        o.insert("n".into(), json!(n));
        if let Some(w) = &args.window {
            let parts: Vec<i64> = w
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::input("/window", format!("bad window {w:?}; use i_min,i_max")))?;
            o.insert("window".into(), json!(parts));
        }
        CategoryInput::from_json(&Value::Object(o), "")?
    };
    if let Some(r) = ring {
        input.ring = r;
    }
    // rank-only commands never build the ring; reject bad moduli anyway
    input.ring()?;
    Ok(input)
}

fn vname(cat: &MeshCategory, v: &Vertex) -> String {
    cat.quiver().vertex_name(v)
}

fn matrix_text<R: Ring>(r: &R, m: &Matrix<R::Elem>) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|row| row.iter().map(|e| r.render(e)).collect::<Vec<_>>().join(" ")).collect();
    format!("[{}]", rows.join("; "))
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::NotTheoremBacked => "not_theorem_backed",
    }
}

/// Runs one command. The report is returned even when the command fails,
/// holding whatever was computed before the failure.
pub fn execute(command: &Command, argv: &[String]) -> (Report, CliResult<()>) {
    let mut report = Report::new(argv);
    let res = run(command, &mut report);
    (report, res)
}

fn run(command: &Command, report: &mut Report) -> CliResult<()> {
    match command {
        Command::Build(a) => build(&category_input(a)?, report)?,
        Command::Dims(a) => dims(&category_input(a)?, report)?,
        Command::Mult(a) => mult(&category_input(a)?, report)?,
        Command::SerreCheck(a) => serre_check(&category_input(a)?, report)?,
        Command::Oracle(a) => {
            let inputs = if a.category.is_none() && a.n.is_none() {
                builtin_flavors(a)?
            } else {
                vec![category_input(a)?]
            };
            oracle(&inputs, report)?
        }
        Command::Validate(i) => validate(&read_input(&i.input)?, report)?,
        Command::Homology { input, vertex, max_degree } => {
            let d = max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
            if d > MAX_DEGREE_LIMIT {
                return Err(qshape_core::Error::DegreeLimit { requested: d, limit: MAX_DEGREE_LIMIT }.into());
            }
            homology(&read_input(&input.input)?, vertex.as_deref(), d, report)?
        }
        Command::Classify(i) => classify(&read_input(&i.input)?, report)?,
        Command::Weq(i) => weq(&read_input(&i.input)?, report)?,
        Command::Demo(Demo::Counterexample) => demo_counterexample(report)?,
        Command::Demo(Demo::ChainComplex { random, ring, seed, max_length, max_rank, bound }) => {
            let choice = ring.parse::<RingChoice>().map_err(|m| CliError::input("/ring", m))?;
            demo_chain_complex(choice, *random, *seed, *max_length, *max_rank, *bound, report)?
        }
    }
    Ok(())
}

fn builtin_flavors(a: &CategoryArgs) -> CliResult<Vec<CategoryInput>> {
    let ring = match &a.ring {
        Some(s) => s.parse::<RingChoice>().map_err(|m| CliError::input("/ring", m))?,
        None => RingChoice::Z,
    };
    let mut out = Vec::new();
    for n in 2..=6 {
        out.push(CategoryInput { flavor: Flavor::DoubleAn { n }, ring });
    }
    for n in 2..=6usize {
        let w = n as i64 + 1;
        out.push(CategoryInput { flavor: Flavor::RepetitiveAn { n, i_min: -w, i_max: w }, ring });
    }
    Ok(out)
}

fn build(input: &CategoryInput, report: &mut Report) -> CliResult<()> {
    let cat = input.category()?;
    let quiver = cat.quiver();
    let verts = quiver.vertices().to_vec();
    let mut hom = Map::new();
    for p in &verts {
        let mut row = Map::new();
        for q in &verts {
            let d = cat.hom_degrees(p, q);
            if !d.is_empty() {
                row.insert(vname(&cat, q), json!(d));
            }
        }
        hom.insert(vname(&cat, p), Value::Object(row));
    }
    let mult = with_ring!(input.ring()?, r => {
        let mut mult = Map::new();
        for a in quiver.arrows() {
            let mut per = Map::new();
            for p in &verts {
                let m = cat.arrow_left_mult(&r, a, p);
                if m.rows() > 0 && m.cols() > 0 {
                    per.insert(vname(&cat, p), matrix_to_json(&r, &m));
                }
            }
            mult.insert(quiver.arrow_name(a), Value::Object(per));
        }
        mult
    });
    let serre_v: Map<String, Value> = verts.iter().map(|v| (vname(&cat, v), json!(vname(&cat, &cat.serre_vertex(v))))).collect();
    let serre_a: Map<String, Value> = quiver
        .arrows()
        .iter()
        .map(|a| {
            let (s, b) = cat.serre_arrow(a);
            let sign = if s < 0 { "-" } else { "" };
            (quiver.arrow_name(a), json!(format!("{sign}{}", quiver.arrow_name(&b))))
        })
        .collect();
    report.data = Some(json!({
        "category": input.to_json(),
        "vertices": verts.iter().map(|v| vname(&cat, v)).collect::<Vec<_>>(),
        "arrows": quiver.arrows().iter().map(|a| quiver.arrow_name(a)).collect::<Vec<_>>(),
        "hom_degrees": hom,
        "left_multiplication": mult,
        "serre": {"vertices": serre_v, "arrows": serre_a},
        "nilpotency_index": cat.nilpotency_index(),
    }));
    Ok(())
}

fn dims(input: &CategoryInput, report: &mut Report) -> CliResult<()> {
    let cat = input.category()?;
    let verts = cat.quiver().vertices().to_vec();
    let mut t = Table::new(std::iter::once("p\\q".to_string()).chain(verts.iter().map(|v| vname(&cat, v))));
    let mut mismatches = Vec::new();
    for p in &verts {
        let mut row = vec![vname(&cat, p)];
        for q in &verts {
            let k = cat.rank(p, q);
            if let Flavor::DoubleAn { n } = input.flavor {
                let expect = p.row.min(q.row).min(n + 1 - p.row).min(n + 1 - q.row);
                if k != expect {
                    mismatches.push(format!("Q({}, {}) has rank {k}, expected {expect}", vname(&cat, p), vname(&cat, q)));
                }
            }
            row.push(k.to_string());
        }
        t.push(row);
    }
    report.tables.insert("dims".into(), t);
    if cat.is_double() {
        report.verdict("matches_min_formula", mismatches.is_empty());
    }
    report.verdicts.insert("nilpotency_index".into(), cat.nilpotency_index().to_string());
    if let Some(m) = mismatches.first() {
        return Err(CliError::Verification(m.clone()));
    }
    Ok(())
}

fn mult(input: &CategoryInput, report: &mut Report) -> CliResult<()> {
    let cat = input.category()?;
    let quiver = cat.quiver();
    let mut t = Table::new(["p", "arrow", "matrix", "closed form"]);
    let mut failure = None;
    with_ring!(input.ring()?, r => {
        for p in quiver.vertices() {
            for a in quiver.arrows() {
                let m = cat.arrow_left_mult(&r, a, p);
                let status = match input.flavor {
                    Flavor::DoubleAn { .. } => {
                        let closed = cat.arrow_mult_matrix(&r, a.q, p.row, a.is_star())?;
                        if closed == m {
                            "agrees".to_string()
                        } else {
                            failure.get_or_insert(format!("{} on Q({}, -)", quiver.arrow_name(a), vname(&cat, p)));
                            format!("differs: {}", matrix_text(&r, &closed))
                        }
                    }
                    Flavor::RepetitiveAn { .. } => "-".to_string(),
                };
                if m.rows() > 0 || m.cols() > 0 {
                    t.push([vname(&cat, p), quiver.arrow_name(a), matrix_text(&r, &m), status]);
                }
            }
        }
    });
    report.tables.insert("multiplication".into(), t);
    if cat.is_double() {
        report.verdict("closed_forms_agree", failure.is_none());
    }
    match failure {
        Some(f) => Err(CliError::Verification(format!("closed form differs for {f}"))),
        None => Ok(()),
    }
}

fn serre_check(input: &CategoryInput, report: &mut Report) -> CliResult<()> {
    let cat = input.category()?;
    let s = with_ring!(input.ring()?, r => cat.serre_report(&r));
    report.verdict("involution_or_equivalence", s.involution_or_equivalence);
    report.verdict("mesh_relations_map", s.mesh_relations_map);
    report.verdict("pairings_invertible", s.pairings_invertible);
    report.verdict("pairing_routes_agree", s.pairing_routes_agree);
    report.verdict("natural_in_target", s.natural_in_target);
    report.verdict("natural_in_source", s.natural_in_source);
    for (i, f) in s.failures.iter().enumerate() {
        report.witnesses.insert(format!("failure_{i}"), f.clone());
    }
    if s.all_pass() {
        Ok(())
    } else {
        Err(CliError::Verification(s.failures.first().cloned().unwrap_or_else(|| "serre check failed".into())))
    }
}

fn oracle_one<R: Ring>(cat: &MeshCategory, r: &R) -> CliResult<Option<String>> {
    let quiver = cat.quiver();
    let max_len = 2 * cat.n() + 2;
    for p in quiver.vertices() {
        let o = PathOracle::build(cat, r.clone(), *p, max_len)?;
        if !o.basis_matches(cat)? {
            return Ok(Some(format!("hom spaces out of {}", vname(cat, p))));
        }
        for a in quiver.arrows() {
            if o.arrow_matrix(cat, a)? != cat.arrow_left_mult(r, a, p) {
                return Ok(Some(format!("{} on Q({}, -)", quiver.arrow_name(a), vname(cat, p))));
            }
        }
        if !o.signed_paths_consistent(cat, cat.n() + 1)? {
            return Ok(Some(format!("signed paths out of {}", vname(cat, p))));
        }
    }
    Ok(None)
}

fn oracle(inputs: &[CategoryInput], report: &mut Report) -> CliResult<()> {
    let mut t = Table::new(["category", "ring", "sources", "result"]);
    let mut failure = None;
    for input in inputs {
        let cat = input.category()?;
        let res = with_ring!(input.ring()?, r => oracle_one(&cat, &r)?);
        let ring = match input.ring {
            RingChoice::Z => "Z".to_string(),
            RingChoice::Q => "Q".to_string(),
            RingChoice::Mod(m) => format!("Z/{m}"),
        };
        let status = match &res {
            None => "agrees".to_string(),
            Some(m) => format!("mismatch: {m}"),
        };
        t.push([input.flavor.to_string(), ring, cat.quiver().vertices().len().to_string(), status]);
        if let Some(m) = res {
            failure.get_or_insert(format!("{}: {m}", input.flavor));
        }
    }
    report.tables.insert("oracle".into(), t);
    report.verdict("closed_forms_match_oracle", failure.is_none());
    match failure {
        Some(f) => Err(CliError::Verification(f)),
        None => Ok(()),
    }
}

fn check_valid<R: JsonRing>(x: &Representation<R>, ptr: &str) -> CliResult<()> {
    let v = x.validate();
    if v.is_valid() {
        return Ok(());
    }
    let quiver = x.category().quiver();
    let mut parts: Vec<String> = v
        .mesh_residuals
        .iter()
        .map(|(q, m)| format!("mesh relation at {} fails with residual {}", quiver.vertex_name(q), matrix_text(x.ring(), m)))
        .collect();
    parts.extend(v.ill_defined.iter().map(|a| format!("{} does not respect relations", quiver.arrow_name(a))));
    Err(CliError::input(format!("{ptr}/arrows"), parts.join("; ")))
}

fn validate(doc: &Value, report: &mut Report) -> CliResult<()> {
    let (input, kind) = read_document(doc)?;
    let cat = input.category()?;
    with_ring!(input.ring()?, r => match kind {
        InputKind::Representation => {
            let x = representation_from_json(&cat, &r, doc, "")?;
            check_valid(&x, "")?;
            report.verdict("valid", true);
            report.witnesses.extend(x.describe_values());
        }
        InputKind::Morphism => {
            let phi = morphism_from_json(&cat, &r, doc, "")?;
            check_valid(&phi.source, "/source")?;
            check_valid(&phi.target, "/target")?;
            report.verdict("source_valid", true);
            report.verdict("target_valid", true);
            report.verdict("natural", true);
        }
    });
    Ok(())
}

fn load_representation<R: JsonRing>(cat: &Arc<MeshCategory>, r: &R, doc: &Value) -> CliResult<Representation<R>> {
    let x = representation_from_json(cat, r, doc, "")?;
    check_valid(&x, "")?;
    Ok(x)
}

fn load_morphism<R: JsonRing>(cat: &Arc<MeshCategory>, r: &R, doc: &Value) -> CliResult<RepMorphism<R>> {
    let phi = morphism_from_json(cat, r, doc, "")?;
    check_valid(&phi.source, "/source")?;
    check_valid(&phi.target, "/target")?;
    Ok(phi)
}

fn expect_representation(kind: &InputKind) -> CliResult<()> {
    match kind {
        InputKind::Representation => Ok(()),
        InputKind::Morphism => Err(CliError::input("/components", "expected a representation, found a morphism")),
    }
}

fn homology(doc: &Value, vertex: Option<&str>, max_degree: usize, report: &mut Report) -> CliResult<()> {
    let (input, kind) = read_document(doc)?;
    expect_representation(&kind)?;
    let cat = input.category()?;
    let verts: Vec<Vertex> = match vertex {
        Some(v) => vec![cat.quiver().parse_vertex(v).map_err(|e| CliError::input("/vertex", e.to_string()))?],
        None => cat.quiver().interior_vertices(),
    };
    with_ring!(input.ring()?, r => {
        let x = load_representation(&cat, &r, doc)?;
        for q in &verts {
            let h = vertex_homology(&x, q, max_degree)?;
            let name = vname(&cat, q);
            let mut t = Table::new(["functor", "value"]);
            t.push(["mH".to_string(), h.mesh.describe()]);
            for (i, m) in h.homology.iter().enumerate() {
                t.push([format!("H_{i}"), m.describe()]);
                if i > 0 && !m.is_zero() {
                    report.summary.push(format!("H_{i} at {name}: {}", m.describe()));
                }
            }
            for (i, m) in h.cohomology.iter().enumerate() {
                t.push([format!("H^{i}"), m.describe()]);
                if i > 0 && !m.is_zero() {
                    report.summary.push(format!("H^{i} at {name}: {}", m.describe()));
                }
            }
            t.push(["K".to_string(), h.corners.k.describe()]);
            t.push(["C".to_string(), h.corners.c.describe()]);
            report.tables.insert(format!("vertex {name}"), t);
        }
    });
    Ok(())
}

fn vertex_list(cat: &MeshCategory, vs: &[Vertex]) -> String {
    if vs.is_empty() {
        "none".into()
    } else {
        vs.iter().map(|v| vname(cat, v)).collect::<Vec<_>>().join(", ")
    }
}

fn classify(doc: &Value, report: &mut Report) -> CliResult<()> {
    let (input, kind) = read_document(doc)?;
    expect_representation(&kind)?;
    let cat = input.category()?;
    with_ring!(input.ring()?, r => {
        let x = load_representation(&cat, &r, doc)?;
        let c = classify_object(&x)?;
        report.verdicts.insert("exact".into(), verdict_text(c.is_exact).into());
        report.verdicts.insert("projective".into(), verdict_text(c.is_projective).into());
        report.verdicts.insert("injective".into(), verdict_text(c.is_injective).into());
        report.witnesses.insert("mesh_homology_nonzero".into(), vertex_list(&cat, &c.mesh_homology_nonzero));
        report.witnesses.insert("homology_1_nonzero".into(), vertex_list(&cat, &c.homology_nonzero));
        report.witnesses.insert("cohomology_1_nonzero".into(), vertex_list(&cat, &c.cohomology_nonzero));
        report.witnesses.insert("cokernel_corner_not_projective".into(), vertex_list(&cat, &c.non_projective_corners));
        report.witnesses.insert("kernel_corner_not_injective".into(), vertex_list(&cat, &c.non_injective_corners));
    });
    Ok(())
}

fn weq_report<R: Ring>(phi: &RepMorphism<R>, report: &mut Report) -> CliResult<bool> {
    let cat = phi.source.category();
    let w = is_weak_equivalence(phi)?;
    report.verdict("weak_equivalence", w.is_weak_equivalence);
    report.verdict("degree_one_verdict", w.degree_one_verdict);
    report.verdict("theorem_backed", w.theorem_backed);
    if let Some(a) = w.routes_agree {
        report.verdict("routes_agree", a);
    }
    let mut t = Table::new(["vertex", "degree", "iso"]);
    for (v, i, iso) in &w.table {
        t.push([vname(cat, v), i.to_string(), if *iso { "yes" } else { "no" }.to_string()]);
        if !iso {
            report.witnesses.entry("not_iso".into()).or_insert_with(|| format!("H_{i} at {}", vname(cat, v)));
        }
    }
    report.tables.insert("homology_maps".into(), t);
    Ok(w.is_weak_equivalence)
}

fn weq(doc: &Value, report: &mut Report) -> CliResult<()> {
    let (input, kind) = read_document(doc)?;
    if let InputKind::Representation = kind {
        return Err(CliError::input("/components", "expected a morphism document"));
    }
    let cat = input.category()?;
    with_ring!(input.ring()?, r => {
        let phi = load_morphism(&cat, &r, doc)?;
        weq_report(&phi, report)?;
    });
    Ok(())
}

fn demo_counterexample(report: &mut Report) -> CliResult<()> {
    let doc: Value = serde_json::from_str(COUNTER_FIXTURE).expect("fixture is JSON");
    let (input, _) = read_document(&doc)?;
    let cat = input.category()?;
    let mut problems = Vec::new();
    with_ring!(input.ring()?, r => {
        let phi = load_morphism(&cat, &r, &doc)?;
        let (x, y) = (&phi.source, &phi.target);
        report.verdict("X_valid", true);
        report.verdict("Y_valid", true);
        let mut t = Table::new(["vertex", "mH(X)", "mH(Y)", "mH(φ)"]);
        let mut relevant: BTreeSet<Vertex> = mesh_relevant_vertices(&cat, &x.support());
        relevant.extend(mesh_relevant_vertices(&cat, &y.support()));
        let mut iso_at = Vec::new();
        for q in &relevant {
            let (mx, my) = (mesh_homology(x, q)?, mesh_homology(y, q)?);
            let map = mesh_homology_map(&phi, q)?;
            if !mx.is_zero() || !my.is_zero() {
                let status = if map.is_isomorphism() { "iso" } else { "not iso" };
                t.push([vname(&cat, q), mx.describe(), my.describe(), status.to_string()]);
                iso_at.push((*q, map.is_isomorphism()));
            }
        }
        report.tables.insert("mesh homology".into(), t);
        let (ker, _) = kernel_of_morphism(&phi)?;
        let mut kt = Table::new(["vertex", "mH(Ker φ)"]);
        for q in mesh_relevant_vertices(&cat, &ker.support()) {
            let m = mesh_homology(&ker, &q)?;
            if !m.is_zero() {
                kt.push([vname(&cat, &q), m.describe()]);
                report.witnesses.insert("kernel_mesh_homology".into(), format!("mH at {}: {}", vname(&cat, &q), m.describe()));
            }
        }
        report.tables.insert("kernel".into(), kt);
        let weak = weq_report(&phi, report)?;
        for (q, iso) in &iso_at {
            report.summary.push(format!(
                "mH at {}(φ): {}; weak equivalence: {}",
                vname(&cat, q),
                if *iso { "iso" } else { "not iso" },
                if weak { "YES" } else { "NO" }
            ));
        }
        if iso_at.len() != 1 || !iso_at[0].1 {
            problems.push("expected mesh homology at exactly one vertex, mapped isomorphically");
        }
        if weak {
            problems.push("the morphism should not be a weak equivalence");
        }
        if !report.witnesses.contains_key("kernel_mesh_homology") {
            problems.push("the kernel should have nonzero mesh homology");
        }
    });
    match problems.first() {
        Some(p) => Err(CliError::Verification((*p).into())),
        None => Ok(()),
    }
}

/// Compares bridge mesh homology with direct chain homology on one complex.
pub fn bridge_agrees<R: Ring>(r: &R, c: &qshape_core::repmod::ChainComplex<R::Elem>) -> CliResult<(bool, bool)> {
    let (lo, hi) = bridge_window(c.lowest, c.highest());
    let cat = Arc::new(MeshCategory::repetitive(2, lo, hi)?);
    let x = complex_to_representation(&cat, r, c)?;
    check_valid_plain(&x)?;
    let direct = chain_homology(r, c)?;
    let mut same = true;
    for (deg, nf) in &direct {
        let m = mesh_homology(&x, &bridge_homology_vertex(*deg))?;
        if m.normal_form() != nf {
            same = false;
        }
    }
    let direct_exact = direct.values().all(|nf| nf.is_zero());
    let mut bridge_exact = true;
    for q in mesh_relevant_vertices(&cat, &x.support()) {
        if !mesh_homology(&x, &q)?.is_zero() {
            bridge_exact = false;
        }
    }
    Ok((same, direct_exact == bridge_exact))
}

fn check_valid_plain<R: Ring>(x: &Representation<R>) -> CliResult<()> {
    if x.validate().is_valid() {
        Ok(())
    } else {
        Err(CliError::Verification("bridge representation violates a mesh relation".into()))
    }
}

fn demo_chain_complex(
    choice: RingChoice,
    count: usize,
    seed: u64,
    max_length: usize,
    max_rank: usize,
    bound: i64,
    report: &mut Report,
) -> CliResult<()> {
    let mut g = rng(seed);
    let mut matches = 0;
    let mut verdicts = 0;
    let mut t = Table::new(["#", "lowest", "ranks", "homology", "match"]);
    with_ring!(AnyRing::new(choice, "/ring")?, r => {
        for i in 0..count {
            let c = random_complex(&mut g, &r, max_length, max_rank, bound);
            let (same, agree) = bridge_agrees(&r, &c)?;
            matches += usize::from(same);
            verdicts += usize::from(agree);
            let h = chain_homology(&r, &c)?;
            let text: Vec<String> = h.iter().filter(|(_, nf)| !nf.is_zero()).map(|(d, nf)| format!("H_{d} = {}", render_normal_form(&r, nf))).collect();
            t.push([
                i.to_string(),
                c.lowest.to_string(),
                format!("{:?}", c.ranks),
                if text.is_empty() { "exact".to_string() } else { text.join(", ") },
                if same && agree { "yes" } else { "no" }.to_string(),
            ]);
        }
    });
    report.summary.push(format!("{matches}/{count} homology matches"));
    report.summary.push(format!("{verdicts}/{count} exactness verdicts agree"));
    report.verdicts.insert("seed".into(), seed.to_string());
    report.tables.insert("complexes".into(), t);
    if matches != count || verdicts != count {
        return Err(CliError::Verification(format!("{matches}/{count} homology matches")));
    }
    Ok(())
}
