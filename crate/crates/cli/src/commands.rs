//! Command implementations producing deterministic reports.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use nori_core::examples::{
    build_abelian_cover, build_cyclotomic, build_heisenberg, build_normality_counterexample, build_real_roots,
    cyclotomic_base, real_catalog, real_sign, run_example, Assertion, ExampleError, EXAMPLE_IDS,
};
use nori_core::systems::{enumerate_saturated, export_system_graph, inverse_limit, InverseSystem, TorsorCatalog};
use nori_core::torsor::{
    check_exactness_conditions, component_count, fiber_product, geometric_image, is_connected, is_saturated, saturate,
    saturation_subgroup, translation_cocycle, DescentCheck, DescentObstruction,
};
use nori_core::{BaseDatum, PointedTorsor, SystemError, TorsorError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::model::{parse_model, Model, ModelError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Model { path: String, source: ModelError },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("unknown base `{0}`; known: real, trivial, cyclotomic")]
    UnknownBase(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Example(#[from] ExampleError),
    #[error(transparent)]
    Torsor(#[from] TorsorError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Model { source, .. } => source.kind(),
            CliError::UnknownName(_) | CliError::UnknownBase(_) => "UnknownName",
            CliError::Usage(_) => "UsageError",
            CliError::Example(ExampleError::Unknown(_)) => "UnknownName",
            CliError::Example(_) => "ExampleError",
            CliError::Torsor(_) => "TorsorError",
            CliError::System(_) => "SystemError",
            CliError::Io { .. } => "IoError",
        }
    }

    /// Line and column, for errors tied to a model position.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            CliError::Model { source, .. } => Some((source.span().line, source.span().column)),
            _ => None,
        }
    }
}

/// Where a torsor comes from: a model file or a built-in example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Model { file: PathBuf, torsor: String },
    Example { id: String, param: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate { file: PathBuf },
    Saturate(Source),
    Image(Source),
    FiberProduct { file: PathBuf, first: String, second: String },
    Enumerate { base: String, bound: usize, p: usize },
    Limit { base: String, bound: usize, p: usize },
    SequenceCheck(Source),
    Verify { id: String, param: Option<usize> },
    ExportGraph { base: String, bound: usize, p: usize, out: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate { .. } => "validate",
            Command::Saturate(_) => "saturate",
            Command::Image(_) => "image",
            Command::FiberProduct { .. } => "fiber-product",
            Command::Enumerate { .. } => "enumerate",
            Command::Limit { .. } => "limit",
            Command::SequenceCheck(_) => "sequence-check",
            Command::Verify { .. } => "verify",
            Command::ExportGraph { .. } => "export-graph",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Seed for the randomized checks of `verify`; none runs only the fixed checks.
    pub seed: Option<u64>,
    pub cases: usize,
}

/// Outcome of one command. `lines` is the human rendering of `result`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: &'static str,
    pub result: Value,
    pub assertions: Vec<Assertion>,
    pub lines: Vec<String>,
}

impl Report {
    fn new(command: &str) -> Self {
        Report { command: command.into(), status: "pass", result: json!({}), assertions: Vec::new(), lines: Vec::new() }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn assert(&mut self, name: impl Into<String>, expected: impl ToString, got: impl ToString) {
        let (expected, got) = (expected.to_string(), got.to_string());
        let pass = expected == got;
        self.assertions.push(Assertion { name: name.into(), expected, got, pass });
    }

    fn finish(mut self) -> Self {
        self.status = if self.assertions.iter().all(|a| a.pass) { "pass" } else { "fail" };
        self
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out
    }

    pub fn machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn load(file: &Path) -> Result<Model, CliError> {
    let path = file.display().to_string();
    let text = std::fs::read_to_string(file).map_err(|source| CliError::Io { path: path.clone(), source })?;
    parse_model(&text).map_err(|source| CliError::Model { path, source })
}

fn example_torsor(id: &str, param: Option<usize>) -> Result<Arc<PointedTorsor>, CliError> {
    let t = match id {
        "real-roots" => build_real_roots(param.unwrap_or(4).max(1))?,
        "cyclotomic" => {
            let p = param.unwrap_or(5);
            if p < 3 || (2..p).any(|d| p.is_multiple_of(d)) {
                return Err(CliError::Usage(format!("p = {p} must be an odd prime")));
            }
            build_cyclotomic(p)?
        }
        "heisenberg" => {
            let l = param.unwrap_or(5);
            if l < 2 || (2..l).any(|d| l.is_multiple_of(d)) || l > 13 {
                return Err(CliError::Usage(format!("l = {l} must be a prime at most 13")));
            }
            build_heisenberg(l)?
        }
        "abelian-cover" => build_abelian_cover(param.unwrap_or(3).max(3))?,
        "normality-counterexample" => {
            let n = param.unwrap_or(2);
            if n < 2 || !n.is_multiple_of(2) {
                return Err(CliError::Usage(format!("n = {n} must be even and at least 2")));
            }
            let (ex, _) = build_normality_counterexample(n)?;
            return Ok(ex.torsor);
        }
        other => return Err(ExampleError::Unknown(other.into()).into()),
    };
    Ok(Arc::new(t))
}

fn resolve(source: &Source) -> Result<(String, Arc<PointedTorsor>), CliError> {
    match source {
        Source::Model { file, torsor } => {
            let m = load(file)?;
            let t = m.torsor(torsor).cloned().ok_or_else(|| CliError::UnknownName(torsor.clone()))?;
            Ok((torsor.clone(), t))
        }
        Source::Example { id, param } => {
            let label = match param {
                Some(k) => format!("{id}({k})"),
                None => id.clone(),
            };
            Ok((label, example_torsor(id, *param)?))
        }
    }
}

fn components(k: usize) -> String {
    if k == 1 {
        "1 component".into()
    } else {
        format!("{k} components")
    }
}

fn list(v: &[usize]) -> String {
    format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

/// Catalogs of the named bases.
pub fn named_catalog(base: &str, bound: usize, p: usize) -> Result<TorsorCatalog, CliError> {
    if bound == 0 || bound > 64 {
        return Err(CliError::Usage(format!("bound {bound} outside 1..=64")));
    }
    match base {
        "real" => Ok(real_catalog(bound)?),
        "trivial" => Ok(TorsorCatalog::constant_groups(Arc::new(BaseDatum::trivial()), bound)),
        "cyclotomic" => {
            if p < 3 || (2..p).any(|d| p.is_multiple_of(d)) || p > 31 {
                return Err(CliError::Usage(format!("p = {p} must be an odd prime below 32")));
            }
            let mut cat = TorsorCatalog::constant_groups(cyclotomic_base(p), bound);
            if p <= bound {
                cat.register(format!("mu{p}"), build_cyclotomic(p)?.structure().clone())?;
            }
            Ok(cat)
        }
        other => Err(CliError::UnknownBase(other.into())),
    }
}

fn system(base: &str, bound: usize, p: usize) -> Result<InverseSystem, CliError> {
    Ok(InverseSystem::from_catalog(&named_catalog(base, bound, p)?)?)
}

fn base_label(base: &str, p: usize) -> String {
    if base == "cyclotomic" {
        format!("cyclotomic(p = {p})")
    } else {
        base.to_string()
    }
}

pub fn run_command(cmd: &Command, opts: &Options) -> Result<Report, CliError> {
    let mut r = Report::new(cmd.name());
    match cmd {
        Command::Validate { file } => validate(&mut r, &load(file)?),
        Command::Saturate(source) => {
            let (name, t) = resolve(source)?;
            let s = saturation_subgroup(&t);
            let kind = if s.is_full() { "full" } else { "proper" };
            r.line(format!("torsor {name}: |G| = {}", t.group().order()));
            r.line(format!("subgroup = {kind}, order {}", s.order()));
            if !s.is_full() {
                r.line(format!("elements: {}", list(s.elements())));
            }
            r.result = json!({
                "torsor": name,
                "group_order": t.group().order(),
                "subgroup": s.elements(),
                "order": s.order(),
                "full": s.is_full(),
            });
        }
        Command::Image(source) => {
            let (name, t) = resolve(source)?;
            let img = geometric_image(&t);
            let witness = img.image.normality_witness();
            r.line(format!("torsor {name}: |G| = {}, {}", t.group().order(), components(component_count(&t))));
            r.line(format!("component stabilizer: {}", list(img.component_stabilizer.elements())));
            r.line(format!("geometric image: order {}, {}", img.image.order(), list(img.image.elements())));
            match &witness {
                None => r.line("normal: yes"),
                Some(w) => r.line(format!("normal: no, {}·{}·{}⁻¹ = {}", w.g, w.h, w.g, w.conjugate)),
            }
            r.result = json!({
                "torsor": name,
                "component_stabilizer": img.component_stabilizer.elements(),
                "image": img.image.elements(),
                "normal": witness.is_none(),
                "witness": witness.map(|w| json!({"g": w.g, "h": w.h, "conjugate": w.conjugate})),
            });
        }
        Command::FiberProduct { file, first, second } => {
            let m = load(file)?;
            let get = |n: &String| m.morphisms.get(n).ok_or_else(|| CliError::UnknownName(n.clone()));
            let (m1, m2) = (get(first)?, get(second)?);
            let fp = fiber_product(m1, m2)?;
            let t = &fp.torsor;
            r.line(format!("fibre product of {first} and {second}: size {}, |G| = {}", t.size(), t.group().order()));
            r.line(format!(
                "saturated: {}, components: {}",
                if is_saturated(t) { "yes" } else { "no" },
                component_count(t)
            ));
            r.line(format!("cocycle: {}", list(translation_cocycle(t).values())));
            r.result = json!({
                "size": t.size(),
                "group_order": t.group().order(),
                "saturated": is_saturated(t),
                "components": component_count(t),
                "cocycle": translation_cocycle(t).values(),
                "first": fp.first.group_map().images(),
                "second": fp.second.group_map().images(),
            });
        }
        Command::Enumerate { base, bound, p } => {
            let cat = named_catalog(base, *bound, *p)?;
            let triples = enumerate_saturated(&cat)?;
            r.line(format!("base {}, bound {bound}: {} saturated triples", base_label(base, *p), triples.len()));
            let mut rows = Vec::new();
            for (i, t) in triples.iter().enumerate() {
                let c = translation_cocycle(&t.torsor);
                r.line(format!(
                    "{} {} |G|={} cocycle={} {}",
                    i + 1,
                    t.entry,
                    t.torsor.group().order(),
                    list(c.values()),
                    if is_connected(&t.torsor) { "connected" } else { "disconnected" }
                ));
                rows.push(json!({
                    "entry": t.entry,
                    "group_order": t.torsor.group().order(),
                    "cocycle": c.values(),
                    "connected": is_connected(&t.torsor),
                }));
            }
            r.result = json!({ "base": base_label(base, *p), "bound": bound, "triples": rows });
        }
        Command::Limit { base, bound, p } => {
            let sys = system(base, *bound, *p)?;
            let limit = inverse_limit(&sys)?;
            let shape = if limit.is_cyclic() {
                "cyclic group"
            } else if limit.is_abelian() {
                "abelian group"
            } else {
                "group"
            };
            r.line(format!(
                "base {}, bound {bound}: {} nodes, {} morphisms",
                base_label(base, *p),
                sys.nodes().len(),
                sys.edges().len()
            ));
            r.line(format!("limit: {shape} of order {}", limit.order()));
            let inversion = base == "real" && limit.acts_by_inversion(&real_sign());
            if base == "real" {
                r.line(format!("conjugation acts by inversion: {}", if inversion { "yes" } else { "no" }));
            }
            let surjective: Vec<bool> = (0..sys.nodes().len()).map(|j| limit.projection_is_surjective(j)).collect();
            r.result = json!({
                "base": base_label(base, *p),
                "bound": bound,
                "nodes": sys.nodes().len(),
                "edges": sys.edges().len(),
                "order": limit.order(),
                "cyclic": limit.is_cyclic(),
                "abelian": limit.is_abelian(),
                "inversion": if base == "real" { Value::Bool(inversion) } else { Value::Null },
                "projections_surjective": surjective,
            });
        }
        Command::SequenceCheck(source) => {
            let (name, t) = resolve(source)?;
            let t = if is_saturated(&t) {
                r.line(format!("torsor {name}: saturated"));
                t
            } else {
                let (s, _) = saturate(&t)?;
                r.line(format!("torsor {name}: not saturated, checking its saturation (|G| = {})", s.group().order()));
                s
            };
            let rep = check_exactness_conditions(&t)?;
            match &rep.normality_witness {
                None => r.line(format!("geometric image normal: yes (order {})", rep.image.image.order())),
                Some(w) => r.line(format!("geometric image normal: no, {}·{}·{}⁻¹ = {}", w.g, w.h, w.g, w.conjugate)),
            }
            let descent = match &rep.descent {
                DescentCheck::Descends => "descends".to_string(),
                DescentCheck::Skipped => "skipped".to_string(),
                DescentCheck::Obstructed(DescentObstruction::BaseNotSurjective) => {
                    "obstructed: base not geometrically connected".into()
                }
                DescentCheck::Obstructed(DescentObstruction::Moves { gamma, point }) => {
                    format!("obstructed: geometric element {gamma} moves point {point}")
                }
            };
            r.line(format!("quotient descends: {descent}"));
            r.assert("geometric image normal", true, rep.normality_ok());
            r.assert("quotient descends", true, rep.descent_ok());
            r.result = json!({
                "torsor": name,
                "image": rep.image.image.elements(),
                "normal": rep.normality_ok(),
                "descent": descent,
            });
        }
        Command::Verify { id, param } => {
            let report = run_example(id, *param)?;
            r.line(format!("example {id}"));
            for (k, v) in &report.objects {
                r.line(format!("  {k}: {v}"));
            }
            for a in &report.assertions {
                if a.pass {
                    r.line(format!("  ok   {}: {}", a.name, a.got));
                } else {
                    r.line(format!("  FAIL {}: expected {}, got {}", a.name, a.expected, a.got));
                }
            }
            r.assertions = report.assertions.clone();
            if let Some(seed) = opts.seed {
                randomized(&mut r, &example_torsor(id, *param)?, seed, opts.cases.max(1));
            }
            let passed = r.assertions.iter().filter(|a| a.pass).count();
            r.line(format!("{passed}/{} checks passed", r.assertions.len()));
            if let Some(c) = &report.conclusion {
                r.line(c.clone());
            }
            r.result = json!({
                "example": id,
                "objects": report.objects.iter().map(|(k, v)| json!({"name": k, "value": v})).collect::<Vec<_>>(),
                "conclusion": report.conclusion,
            });
        }
        Command::ExportGraph { base, bound, p, out } => {
            let sys = system(base, *bound, *p)?;
            let text = export_system_graph(&sys)?;
            std::fs::write(out, &text).map_err(|source| CliError::Io { path: out.display().to_string(), source })?;
            r.line(format!("wrote {} nodes and {} edges to {}", sys.nodes().len(), sys.edges().len(), out.display()));
            r.result =
                json!({ "nodes": sys.nodes().len(), "edges": sys.edges().len(), "path": out.display().to_string() });
        }
    }
    Ok(r.finish())
}

fn validate(r: &mut Report, m: &Model) {
    if m.is_empty() {
        r.line("empty model");
    }
    let mut decls = Vec::new();
    for d in &m.document.decls {
        let n = &d.name;
        let line = match d.kind.keyword() {
            "galois" => format!("galois {n}: order {}", m.galois[n].order()),
            "base" => {
                let b = &m.bases[n];
                format!(
                    "base {n}: |Π| = {}, |Γ| = {}, {}",
                    b.pi().order(),
                    b.gamma().order(),
                    if b.is_geometrically_connected() {
                        "geometrically connected"
                    } else {
                        "not geometrically connected"
                    }
                )
            }
            "group" => {
                let g = &m.groups[n];
                format!(
                    "group {n}: order {}, {}",
                    g.group().order(),
                    if g.is_constant() { "constant" } else { "twisted action" }
                )
            }
            "torsor" => {
                let t = &m.torsors[n];
                format!(
                    "torsor {n}: size {}, {}, {}",
                    t.size(),
                    if is_saturated(t) { "saturated" } else { "not saturated" },
                    components(component_count(t))
                )
            }
            _ => {
                let f = &m.morphisms[n];
                format!(
                    "morphism {n}: group map {}",
                    if f.group_map().is_surjective() { "surjective" } else { "not surjective" }
                )
            }
        };
        r.line(line);
        decls.push(json!({"kind": d.kind.keyword(), "name": n, "line": d.span.line}));
    }
    r.line(format!("{} declarations valid", m.document.decls.len()));
    r.result = json!({ "declarations": decls });
}

/// Repoints at random points and checks the cocycle transformation rule
/// `t′_γ = h⁻¹ t_γ γ(h)` and the cocycle law.
fn randomized(r: &mut Report, t: &Arc<PointedTorsor>, seed: u64, cases: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = t.group();
    let c = translation_cocycle(t);
    let mut failures = 0;
    for _ in 0..cases {
        let h = rng.gen_range(0..g.order());
        let Ok(moved) = t.repointed(t.right(t.basepoint(), h)) else {
            failures += 1;
            continue;
        };
        let d = translation_cocycle(&moved);
        let rule = t.base().pi().elements().all(|x| {
            let twisted = t.structure().act(t.base().project(x), h);
            d.at(x) == g.mul(g.mul(g.inv(h), c.at(x)), twisted)
        });
        if !rule || d.law_violation(&moved).is_some() {
            failures += 1;
        }
    }
    r.line(format!("  randomized repointing (seed {seed}, {cases} cases): {failures} failures"));
    r.assert(format!("randomized repointing, seed {seed}"), 0, failures);
}

/// Every example id, for listings.
pub fn example_ids() -> &'static [&'static str] {
    &EXAMPLE_IDS
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_bases() {
        assert_eq!(named_catalog("real", 6, 5).unwrap().entries().len(), 6);
        assert!(matches!(named_catalog("complex", 6, 5), Err(CliError::UnknownBase(_))));
        assert!(matches!(named_catalog("cyclotomic", 6, 9), Err(CliError::Usage(_))));
    }

    #[test]
    fn randomized_checks_are_seeded() {
        let opts = Options { seed: Some(3), cases: 6 };
        let cmd = Command::Verify { id: "abelian-cover".into(), param: Some(4) };
        let a = run_command(&cmd, &opts).unwrap();
        let b = run_command(&cmd, &opts).unwrap();
        assert!(a.passed());
        assert_eq!(a.machine(), b.machine());
    }

    #[test]
    fn proper_saturation_lists_elements() {
        let r = run_command(
            &Command::Saturate(Source::Example { id: "normality-counterexample".into(), param: None }),
            &Options::default(),
        )
        .unwrap();
        assert!(r.lines[1].starts_with("subgroup = proper, order 512"));
        assert!(r.lines[2].starts_with("elements: {"));
    }
}
