//! JSON input formats (categories, functors, diagrams, squares) and report
//! serialization. Integer matrix entries are JSON numbers when they fit the
//! exact-integer range of doubles and decimal strings beyond that.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::abelian::{AbHom, FgAbGroup, IntMatrix};
use crate::dmod::{Diagram, GradedAbGroup, Variance};
use crate::fincat::{FinCategory, Functor, PushoutSquare, RawCategory};
use crate::mv::{
    CertificateKind, CounterexampleReport, CoveringVerdict, LocalCoveringVerdict, MVReport,
    NodeKind, Pi1Probe, Theorem1Checklist, VerdictKind,
};

pub const FORMAT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Category(#[from] crate::fincat::CategoryError),
    #[error(transparent)]
    Abelian(#[from] crate::abelian::AbelianError),
    #[error(transparent)]
    Dmod(#[from] crate::dmod::DmodError),
}

fn parse_err(path: &Path, message: impl Into<String>) -> IoError {
    IoError::Parse {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn read_json(path: &Path) -> Result<Value, IoError> {
    let text = std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.to_path_buf(),
        source: e,
    })?;
    serde_json::from_str(&text).map_err(|e| parse_err(path, e.to_string()))
}

fn get<'a>(path: &Path, v: &'a Value, key: &str) -> Result<&'a Value, IoError> {
    v.get(key)
        .ok_or_else(|| parse_err(path, format!("missing key \"{}\"", key)))
}

fn as_str<'a>(path: &Path, v: &'a Value, ctx: &str) -> Result<&'a str, IoError> {
    v.as_str()
        .ok_or_else(|| parse_err(path, format!("{} must be a string", ctx)))
}

fn as_obj<'a>(path: &Path, v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>, IoError> {
    v.as_object()
        .ok_or_else(|| parse_err(path, format!("{} must be an object", ctx)))
}

fn as_arr<'a>(path: &Path, v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array()
        .ok_or_else(|| parse_err(path, format!("{} must be an array", ctx)))
}

// ---- integers and matrices ----

const EXACT_RANGE: i64 = 1 << 53;

pub fn bigint_to_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(n) if n.abs() <= EXACT_RANGE => json!(n),
        _ => json!(v.to_string()),
    }
}

fn bigint_from_json(path: &Path, v: &Value, ctx: &str) -> Result<BigInt, IoError> {
    if let Some(n) = v.as_i64() {
        return Ok(BigInt::from(n));
    }
    if let Some(s) = v.as_str() {
        return BigInt::from_str(s)
            .map_err(|_| parse_err(path, format!("{}: \"{}\" is not an integer", ctx, s)));
    }
    Err(parse_err(path, format!("{} must be an integer or a decimal string", ctx)))
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| bigint_to_json(m.get(i, j))).collect()))
        .collect();
    Value::Array(rows)
}

/// Row-major matrix; `rows`/`cols` disambiguate the empty cases.
fn matrix_from_json(
    path: &Path,
    v: &Value,
    rows: usize,
    cols: usize,
    ctx: &str,
) -> Result<IntMatrix, IoError> {
    let arr = as_arr(path, v, ctx)?;
    if arr.len() != rows {
        return Err(parse_err(
            path,
            format!("{}: expected {} rows, found {}", ctx, rows, arr.len()),
        ));
    }
    let mut out = IntMatrix::zero(rows, cols);
    for (i, row) in arr.iter().enumerate() {
        let row = as_arr(path, row, ctx)?;
        if row.len() != cols {
            return Err(parse_err(
                path,
                format!("{}: row {} has {} entries, expected {}", ctx, i, row.len(), cols),
            ));
        }
        for (j, e) in row.iter().enumerate() {
            out.set(i, j, bigint_from_json(path, e, ctx)?);
        }
    }
    Ok(out)
}

// ---- categories ----

fn category_from_value(path: &Path, v: &Value) -> Result<FinCategory, IoError> {
    let mut raw = RawCategory::default();
    for o in as_arr(path, get(path, v, "objects")?, "\"objects\"")? {
        raw.objects.push(as_str(path, o, "object name")?.to_string());
    }
    for m in as_arr(path, get(path, v, "morphisms")?, "\"morphisms\"")? {
        let id = as_str(path, get(path, m, "id")?, "morphism id")?;
        let src = as_str(path, get(path, m, "src")?, "morphism src")?;
        let dst = as_str(path, get(path, m, "dst")?, "morphism dst")?;
        raw.morphisms.push((id.into(), src.into(), dst.into()));
    }
    for (o, m) in as_obj(path, get(path, v, "identities")?, "\"identities\"")? {
        raw.identities
            .push((o.clone(), as_str(path, m, "identity id")?.to_string()));
    }
    for t in as_arr(path, get(path, v, "compose")?, "\"compose\"")? {
        let t = as_arr(path, t, "compose triple")?;
        if t.len() != 3 {
            return Err(parse_err(path, "compose entries must be [g, f, gf] triples"));
        }
        raw.compose.push((
            as_str(path, &t[0], "compose g")?.to_string(),
            as_str(path, &t[1], "compose f")?.to_string(),
            as_str(path, &t[2], "compose gf")?.to_string(),
        ));
    }
    Ok(FinCategory::validate(&raw)?)
}

pub fn category_to_json(cat: &FinCategory) -> Value {
    let raw = cat.to_raw();
    json!({
        "objects": raw.objects,
        "morphisms": raw.morphisms.iter().map(|(id, src, dst)| json!({
            "id": id, "src": src, "dst": dst,
        })).collect::<Vec<_>>(),
        "identities": raw.identities.iter().cloned().collect::<BTreeMap<_, _>>(),
        "compose": raw.compose.iter().map(|(g, f, gf)| json!([g, f, gf])).collect::<Vec<_>>(),
    })
}

pub fn functor_to_json(f: &Functor) -> Value {
    let dom = f.domain();
    let cod = f.codomain();
    let on_objects: BTreeMap<String, String> = (0..dom.num_objects())
        .map(|o| {
            (
                dom.object_name(o).to_string(),
                cod.object_name(f.apply_obj(o)).to_string(),
            )
        })
        .collect();
    let on_morphisms: BTreeMap<String, String> = (0..dom.num_morphisms())
        .map(|m| {
            (
                dom.morphism(m).id.clone(),
                cod.morphism(f.apply_mor(m)).id.clone(),
            )
        })
        .collect();
    json!({
        "domain": category_to_json(dom),
        "codomain": category_to_json(cod),
        "on_objects": on_objects,
        "on_morphisms": on_morphisms,
    })
}

pub fn square_to_json(sq: &PushoutSquare) -> Value {
    json!({
        "f1": functor_to_json(&sq.f1),
        "f2": functor_to_json(&sq.f2),
        "i1": functor_to_json(&sq.i1),
        "i2": functor_to_json(&sq.i2),
    })
}

/// A category reference: an inline object or a path (relative to `path`).
fn category_ref(path: &Path, v: &Value) -> Result<FinCategory, IoError> {
    if let Some(rel) = v.as_str() {
        let target = path.parent().unwrap_or(Path::new(".")).join(rel);
        return load_category(&target);
    }
    category_from_value(path, v)
}

pub fn load_category(path: &Path) -> Result<FinCategory, IoError> {
    let v = read_json(path)?;
    category_from_value(path, &v)
}

// ---- functors ----

fn functor_from_value(path: &Path, v: &Value) -> Result<Functor, IoError> {
    let dom = category_ref(path, get(path, v, "domain")?)?;
    let cod = category_ref(path, get(path, v, "codomain")?)?;
    let mut on_objects = Vec::new();
    for (a, b) in as_obj(path, get(path, v, "on_objects")?, "\"on_objects\"")? {
        on_objects.push((a.clone(), as_str(path, b, "object image")?.to_string()));
    }
    let mut on_morphisms = Vec::new();
    for (a, b) in as_obj(path, get(path, v, "on_morphisms")?, "\"on_morphisms\"")? {
        on_morphisms.push((a.clone(), as_str(path, b, "morphism image")?.to_string()));
    }
    Ok(Functor::from_names(dom, cod, &on_objects, &on_morphisms)?)
}

pub fn load_functor(path: &Path) -> Result<Functor, IoError> {
    let v = read_json(path)?;
    functor_from_value(path, &v)
}

// ---- groups and diagrams ----

fn group_from_value(path: &Path, v: &Value, ctx: &str) -> Result<FgAbGroup, IoError> {
    if let Some(rels) = v.get("relations") {
        let arr = as_arr(path, rels, ctx)?;
        let gens = arr.len();
        let cols = arr
            .first()
            .and_then(|r| r.as_array())
            .map(|r| r.len())
            .unwrap_or(0);
        let m = matrix_from_json(path, rels, gens, cols, ctx)?;
        return Ok(FgAbGroup::new(gens, m)?);
    }
    let rank = get(path, v, "rank")?
        .as_u64()
        .ok_or_else(|| parse_err(path, format!("{}: \"rank\" must be a nonnegative integer", ctx)))?
        as usize;
    let mut torsion = Vec::new();
    if let Some(t) = v.get("torsion") {
        for e in as_arr(path, t, ctx)? {
            torsion.push(bigint_from_json(path, e, ctx)?);
        }
    }
    Ok(FgAbGroup::from_normal_form(rank, &torsion))
}

pub fn group_to_json(g: &FgAbGroup) -> Value {
    let nf = g.normal_form();
    json!({
        "rank": nf.rank,
        "torsion": nf.torsion.iter().map(bigint_to_json).collect::<Vec<_>>(),
        "pretty": nf.to_string(),
    })
}

pub fn graded_to_json(h: &GradedAbGroup) -> Value {
    Value::Array(h.values.iter().map(group_to_json).collect())
}

fn diagram_from_value(path: &Path, v: &Value) -> Result<Diagram, IoError> {
    let base = category_ref(path, get(path, v, "base")?)?;
    let variance = match as_str(path, get(path, v, "variance")?, "\"variance\"")? {
        "left" => Variance::Left,
        "right" => Variance::Right,
        other => {
            return Err(parse_err(
                path,
                format!("variance must be \"left\" or \"right\", found \"{}\"", other),
            ))
        }
    };
    if let Some(c) = v.get("const") {
        let g = group_from_value(path, c, "\"const\" group")?;
        return Ok(crate::dmod::const_diagram(&base, &g, variance));
    }
    let group_specs = as_obj(path, get(path, v, "groups")?, "\"groups\"")?;
    let mut groups = Vec::with_capacity(base.num_objects());
    for o in 0..base.num_objects() {
        let name = base.object_name(o);
        let spec = group_specs
            .get(name)
            .ok_or_else(|| parse_err(path, format!("no group for object \"{}\"", name)))?;
        groups.push(group_from_value(path, spec, &format!("group of \"{}\"", name))?);
    }
    let map_specs = as_obj(path, get(path, v, "maps")?, "\"maps\"")?;
    let mut maps = Vec::with_capacity(base.num_morphisms());
    for m in 0..base.num_morphisms() {
        let id = &base.morphism(m).id;
        let (s, t) = match variance {
            Variance::Left => (base.src(m), base.dst(m)),
            Variance::Right => (base.dst(m), base.src(m)),
        };
        let hom = match map_specs.get(id) {
            Some(spec) => {
                let mat = matrix_from_json(
                    path,
                    spec,
                    groups[t].gens(),
                    groups[s].gens(),
                    &format!("map of \"{}\"", id),
                )?;
                AbHom::new(groups[s].clone(), groups[t].clone(), mat)?
            }
            // Identities may be omitted.
            None if base.identity_of(base.src(m)) == m => AbHom::identity(&groups[s]),
            None => return Err(parse_err(path, format!("no map for morphism \"{}\"", id))),
        };
        maps.push(hom);
    }
    Ok(Diagram::new(base, variance, groups, maps)?)
}

pub fn load_diagram(path: &Path) -> Result<Diagram, IoError> {
    let v = read_json(path)?;
    diagram_from_value(path, &v)
}

/// A diagram file whose "base" must match the given category (used when the
/// base is determined by another input, e.g. a square's pushout corner).
pub fn load_diagram_over(path: &Path, base: &FinCategory) -> Result<Diagram, IoError> {
    let d = load_diagram(path)?;
    if &d.base != base {
        return Err(parse_err(
            path,
            "diagram base does not match the category it is used over",
        ));
    }
    Ok(d)
}

// ---- squares ----

fn functor_ref(path: &Path, v: &Value) -> Result<Functor, IoError> {
    if let Some(rel) = v.as_str() {
        let target = path.parent().unwrap_or(Path::new(".")).join(rel);
        return load_functor(&target);
    }
    functor_from_value(path, v)
}

pub fn load_square(path: &Path) -> Result<PushoutSquare, IoError> {
    let v = read_json(path)?;
    let f1 = functor_ref(path, get(path, &v, "f1")?)?;
    let f2 = functor_ref(path, get(path, &v, "f2")?)?;
    let i1 = functor_ref(path, get(path, &v, "i1")?)?;
    let i2 = functor_ref(path, get(path, &v, "i2")?)?;
    Ok(PushoutSquare::new(f1, f2, i1, i2)?)
}

// ---- report serialization ----

pub fn hom_to_json(h: &AbHom) -> Value {
    json!({
        "source": group_to_json(h.source()),
        "target": group_to_json(h.target()),
        "matrix": matrix_to_json(h.matrix()),
    })
}

fn certificate_name(c: &CertificateKind) -> &'static str {
    match c {
        CertificateKind::InitialObjectPerComponent => "initial-object-per-component",
        CertificateKind::GroupoidTrivialAutomorphisms => "groupoid-trivial-automorphisms",
        CertificateKind::FaithfulGroupoidFunctor => "faithful-groupoid-functor",
    }
}

fn pi1_name(p: &Pi1Probe) -> &'static str {
    match p {
        Pi1Probe::Trivial => "trivial",
        Pi1Probe::Inconclusive => "inconclusive",
        Pi1Probe::NontrivialAbelianization => "nontrivial-abelianization",
    }
}

fn verdict_name(v: &VerdictKind) -> &'static str {
    match v {
        VerdictKind::Certified => "certified",
        VerdictKind::HomologyConsistent => "homology-consistent",
        VerdictKind::Failed => "failed",
    }
}

pub fn local_covering_to_json(v: &LocalCoveringVerdict) -> Value {
    json!({
        "verdict": verdict_name(&v.kind),
        "passed": v.passed(),
        "degree": v.degree,
        "objects": v.records.iter().map(|r| json!({
            "object": r.object_name,
            "certificate": r.certificate.as_ref().map(certificate_name),
            "reduced_homology": r.reduced_homology.iter().map(group_to_json).collect::<Vec<_>>(),
            "pi1": pi1_name(&r.pi1),
            "failure": r.failure.as_ref().map(|(deg, h)| json!({
                "degree": deg,
                "homology": group_to_json(h),
            })),
        })).collect::<Vec<_>>(),
    })
}

pub fn covering_to_json(v: &CoveringVerdict) -> Value {
    match v {
        CoveringVerdict::Covering { local } => json!({
            "verdict": "covering",
            "local_covering": local_covering_to_json(local),
        }),
        CoveringVerdict::NotCovering { local, arrow } => json!({
            "verdict": "not-covering",
            "witness_arrow": arrow,
            "local_covering": local_covering_to_json(local),
        }),
        CoveringVerdict::LocalCoveringFailed { local } => json!({
            "verdict": "local-covering-failed",
            "local_covering": local_covering_to_json(local),
        }),
    }
}

pub fn checklist_to_json(c: &Theorem1Checklist) -> Value {
    json!({
        "f1_injective_on_objects": c.f1_injective_on_objects,
        "f2_injective_on_objects": c.f2_injective_on_objects,
        "i1_local_covering": local_covering_to_json(&c.i1),
        "i2_local_covering": local_covering_to_json(&c.i2),
        "i0_local_covering": local_covering_to_json(&c.i0),
        "holds": c.holds,
        "certificates_structural": c.certificates_structural,
    })
}

fn node_name(kind: &NodeKind, degree: usize) -> String {
    match kind {
        NodeKind::Shared => format!("colim{}^{{C0}}", degree),
        NodeKind::Legs => format!("colim{}^{{C1}} + colim{}^{{C2}}", degree, degree),
        NodeKind::Pushout => format!("colim{}^{{C}}", degree),
    }
}

fn lim_node_name(kind: &NodeKind, degree: usize) -> String {
    match kind {
        NodeKind::Shared => format!("lim{}_{{C0}}", degree),
        NodeKind::Legs => format!("lim{}_{{C1}} + lim{}_{{C2}}", degree, degree),
        NodeKind::Pushout => format!("lim{}_{{C}}", degree),
    }
}

pub fn mv_report_to_json(r: &MVReport, limit_side: bool) -> Value {
    let name = if limit_side { lim_node_name } else { node_name };
    json!({
        "degree": r.degree,
        "h_shared": graded_to_json(&r.h_c0),
        "h_legs": graded_to_json(&r.h_legs),
        "h_pushout": graded_to_json(&r.h_c),
        "alpha": r.alpha.iter().map(hom_to_json).collect::<Vec<_>>(),
        "beta": r.beta.iter().map(hom_to_json).collect::<Vec<_>>(),
        "connecting": r.connecting.as_ref().map(|cs| {
            cs.iter().map(hom_to_json).collect::<Vec<_>>()
        }),
        "quasi_iso": r.quasi_iso,
        "cone_homology": graded_to_json(&r.cone_psi_homology),
        "nodes": r.nodes.iter().map(|n| json!({
            "node": name(&n.node, n.degree),
            "degree": n.degree,
            "defect": group_to_json(&n.defect),
            "composite_zero": n.composite_zero,
            "exact": n.exact(),
        })).collect::<Vec<_>>(),
        "exact": r.exact(),
    })
}

pub fn counterexample_to_json(r: &CounterexampleReport) -> Value {
    json!({
        "pushout": category_to_json(r.square.apex()),
        "hypotheses": checklist_to_json(&r.hypotheses),
        "shared_h1": group_to_json(&r.shared_h1),
        "mv_colim": mv_report_to_json(&r.mv, false),
        "mv_lim": mv_report_to_json(&r.mv_lim, true),
    })
}

/// Top-level report wrapper with the version and the bounds in effect.
pub fn wrap_report(command: &str, params: Value, body: Value) -> Value {
    json!({
        "version": FORMAT_VERSION,
        "command": command,
        "parameters": params,
        "report": body,
    })
}

// ---- text rendering (derived from the JSON report) ----

fn render_group(v: &Value) -> String {
    v.get("pretty")
        .and_then(|p| p.as_str())
        .unwrap_or("?")
        .to_string()
}

fn render_graded(v: &Value) -> String {
    match v.as_array() {
        Some(arr) => arr
            .iter()
            .enumerate()
            .map(|(n, g)| format!("{}: {}", n, render_group(g)))
            .collect::<Vec<_>>()
            .join(", "),
        None => "?".into(),
    }
}

fn render_local_covering(out: &mut String, label: &str, v: &Value) {
    let verdict = v["verdict"].as_str().unwrap_or("?");
    out.push_str(&format!("  {}: {}\n", label, verdict));
    if let Some(objects) = v["objects"].as_array() {
        for o in objects {
            if let Some(failure) = o.get("failure").filter(|f| !f.is_null()) {
                out.push_str(&format!(
                    "    object {}: H{}(N(c/F)) = {}\n",
                    o["object"].as_str().unwrap_or("?"),
                    failure["degree"],
                    render_group(&failure["homology"]),
                ));
            }
        }
    }
}

fn render_mv(out: &mut String, v: &Value) {
    out.push_str(&format!("  shared:  {}\n", render_graded(&v["h_shared"])));
    out.push_str(&format!("  legs:    {}\n", render_graded(&v["h_legs"])));
    out.push_str(&format!("  pushout: {}\n", render_graded(&v["h_pushout"])));
    out.push_str(&format!(
        "  comparison map quasi-isomorphism: {}\n",
        v["quasi_iso"].as_bool().unwrap_or(false)
    ));
    let exact = v["exact"].as_bool().unwrap_or(false);
    if exact {
        out.push_str("  exactness: OK at every node\n");
    } else {
        for n in v["nodes"].as_array().into_iter().flatten() {
            if !n["exact"].as_bool().unwrap_or(false) {
                out.push_str(&format!(
                    "  exactness: FAILED at node {}, defect {}\n",
                    n["node"].as_str().unwrap_or("?"),
                    render_group(&n["defect"]),
                ));
            }
        }
    }
}

/// Human-readable rendering of a wrapped report, walking the same JSON that
/// `--format json` prints.
pub fn render_report(wrapped: &Value) -> String {
    let mut out = String::new();
    let command = wrapped["command"].as_str().unwrap_or("?");
    out.push_str(&format!("dcolim {} (v{})\n", command, FORMAT_VERSION));
    let body = &wrapped["report"];
    match command {
        "homology" | "dcolim" | "dlim" | "mv-predict" => {
            out.push_str(&format!("  {}\n", render_graded(&body["values"])));
        }
        "validate" => {
            out.push_str(&format!(
                "  ok: {} objects, {} morphisms\n",
                body["objects"], body["morphisms"]
            ));
        }
        "under" => {
            out.push_str(&format!(
                "  {} objects, {} morphisms\n",
                body["objects"], body["morphisms"]
            ));
        }
        "pushout" => {
            out.push_str(&format!(
                "  pushout: {} objects, {} morphisms\n",
                body["objects"], body["morphisms"]
            ));
        }
        "local-cover" => {
            render_local_covering(&mut out, "local covering", &body["local_covering"]);
            if let Some(c) = body.get("covering") {
                out.push_str(&format!(
                    "  covering: {}\n",
                    c["verdict"].as_str().unwrap_or("?")
                ));
            }
        }
        "mv-verify" => {
            render_mv(&mut out, body);
        }
        "counterexample" => {
            out.push_str("  hypotheses:\n");
            render_local_covering(
                &mut out,
                "  I0 local covering",
                &body["hypotheses"]["i0_local_covering"],
            );
            out.push_str(&format!(
                "  colim1 over the shared subcategory: {}\n",
                render_group(&body["shared_h1"])
            ));
            out.push_str("  colimit Mayer-Vietoris:\n");
            render_mv(&mut out, &body["mv_colim"]);
            out.push_str("  limit Mayer-Vietoris:\n");
            render_mv(&mut out, &body["mv_lim"]);
        }
        _ => {
            out.push_str(&serde_json::to_string_pretty(body).unwrap_or_default());
            out.push('\n');
        }
    }
    out
}
