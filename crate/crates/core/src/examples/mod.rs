//! Constructors and verifiers for the worked examples.

mod cyclotomic;
mod dihedral_cover;
mod heisenberg;
mod normality;
mod real_roots;

pub use cyclotomic::{build_cyclotomic, build_cyclotomic_at, cyclotomic_base};
pub use dihedral_cover::{build_abelian_cover, dihedral_with_twist};
pub use heisenberg::{build_heisenberg, heisenberg_sum, unipotent_group};
pub use normality::{build_normality_counterexample, verify_equation_table, Counterexample, Word};
pub use real_roots::{build_real_roots, real_base, real_catalog, real_sign, real_system};

use std::fmt::Display;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::error::{SystemError, TorsorError};
use crate::group::lcm;
use crate::systems::inverse_limit;
use crate::torsor::{
    component_count, geometric_image, hom_set, is_saturated, saturation_subgroup, translation_cocycle,
};

/// Example ids accepted by the command line.
pub const EXAMPLE_IDS: [&str; 5] =
    ["real-roots", "cyclotomic", "heisenberg", "abelian-cover", "normality-counterexample"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub id: String,
    /// Named descriptions of the constructed objects.
    pub objects: Vec<(String, String)>,
    pub assertions: Vec<Assertion>,
    /// One-line summary printed last.
    pub conclusion: Option<String>,
}

impl ExampleReport {
    pub fn new(id: impl Into<String>) -> Self {
        ExampleReport { id: id.into(), ..Default::default() }
    }

    pub fn object(&mut self, name: impl Into<String>, description: impl Display) {
        self.objects.push((name.into(), description.to_string()));
    }

    /// Records an assertion; passes iff the rendered values agree.
    pub fn check(&mut self, name: impl Into<String>, expected: impl Display, got: impl Display) -> bool {
        let (expected, got) = (expected.to_string(), got.to_string());
        let pass = expected == got;
        self.assertions.push(Assertion { name: name.into(), expected, got, pass });
        pass
    }

    pub fn all_pass(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.pass)
    }

    pub fn merge(&mut self, other: ExampleReport) {
        self.objects.extend(other.objects);
        self.assertions.extend(other.assertions);
        self.conclusion = other.conclusion.or(self.conclusion.take());
    }
}

#[derive(Debug, Error)]
pub enum ExampleError {
    #[error("unknown example {0:?}; known: {known}", known = EXAMPLE_IDS.join(", "))]
    Unknown(String),
    #[error("bad parameter: {0}")]
    Parameter(String),
    #[error(transparent)]
    Torsor(#[from] TorsorError),
    #[error(transparent)]
    System(#[from] SystemError),
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Builds an example and checks its documented properties. `param` is `n`, `p` or
/// `l` depending on the example.
pub fn run_example(id: &str, param: Option<usize>) -> Result<ExampleReport, ExampleError> {
    match id {
        "real-roots" => real_roots_report(param.unwrap_or(12)),
        "cyclotomic" => cyclotomic_report(param.unwrap_or(5)),
        "heisenberg" => heisenberg_report(param.unwrap_or(5)),
        "abelian-cover" => abelian_cover_report(param.unwrap_or(3)),
        "normality-counterexample" => {
            let n = param.unwrap_or(2);
            if n < 2 || !n.is_multiple_of(2) {
                return Err(ExampleError::Parameter(format!("n = {n} must be even and at least 2")));
            }
            let (ex, mut report) = build_normality_counterexample(n)?;
            let table = verify_equation_table(&ex)?;
            report.merge(table);
            report.id = id.into();
            let witness = ex.witness.as_ref().map_or("none".to_string(), |w| ex.render(w.g));
            report.conclusion = Some(match ex.witness {
                Some(_) => format!("N non-normal: witness {witness}"),
                None => "N normal".into(),
            });
            Ok(report)
        }
        _ => Err(ExampleError::Unknown(id.into())),
    }
}

fn real_roots_report(n: usize) -> Result<ExampleReport, ExampleError> {
    if n == 0 || n > 24 {
        return Err(ExampleError::Parameter(format!("n = {n} outside 1..=24")));
    }
    let mut r = ExampleReport::new("real-roots");
    let mut triples = Vec::new();
    for k in 1..=n {
        let t = Arc::new(build_real_roots(k)?);
        let a = translation_cocycle(&t).at(1);
        r.check(format!("P{k} saturated"), true, is_saturated(&t));
        r.check(format!("P{k} cocycle norm a·σ(a)"), 0, t.group().mul(a, t.structure().act(1, a)));
        triples.push(t);
    }
    let mut bad = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            if hom_set(&triples[a - 1], &triples[b - 1])?.is_empty() == (a % b == 0) {
                bad.push(format!("P{a}->P{b}"));
            }
        }
    }
    r.check("morphisms P_a -> P_b exist iff b | a", "none", if bad.is_empty() { "none".into() } else { bad.join(" ") });
    let limit = inverse_limit(&real_system(n)?)?;
    let expected = (1..=n).fold(1, lcm);
    r.object("limit", format!("order {}", limit.order()));
    r.check("limit order", expected, limit.order());
    r.check("limit cyclic", true, limit.is_cyclic());
    r.check("conjugation inverts the limit", true, limit.acts_by_inversion(&real_sign()));
    r.conclusion = Some(format!("limit at bound {n}: cyclic of order {}", limit.order()));
    Ok(r)
}

fn cyclotomic_report(p: usize) -> Result<ExampleReport, ExampleError> {
    if !is_prime(p) || p == 2 || p > 31 {
        return Err(ExampleError::Parameter(format!("p = {p} must be an odd prime below 32")));
    }
    let mut r = ExampleReport::new("cyclotomic");
    let t = build_cyclotomic(p)?;
    r.check("saturated", true, is_saturated(&t));
    r.check("saturation order", p, saturation_subgroup(&t).order());
    r.check("components", 2, component_count(&t));
    let fixed = build_cyclotomic_at(p, 0)?;
    r.check("saturation pointed at the fixed root", 1, saturation_subgroup(&fixed).order());
    r.conclusion = Some(format!("mu{p}: saturated, {} components", component_count(&t)));
    Ok(r)
}

fn heisenberg_report(l: usize) -> Result<ExampleReport, ExampleError> {
    if !is_prime(l) || l > 13 {
        return Err(ExampleError::Parameter(format!("l = {l} must be a prime at most 13")));
    }
    let mut r = ExampleReport::new("heisenberg");
    let sum = heisenberg_sum(l);
    r.object("sum of j(j-1) mod l", sum);
    match build_heisenberg(l) {
        Ok(t) => {
            r.check("group order", l * l * l, t.group().order());
            r.check("non-abelian", true, !t.group().is_abelian());
            r.check("saturation order", l * l * l, saturation_subgroup(&t).order());
            r.check("sum vanishes", 0, sum);
            r.conclusion = Some(format!("l = {l}: valid, saturation of order {}", l * l * l));
        }
        Err(TorsorError::IncompatibleTwist(w)) => {
            r.object("rejection", format!("{w:?}"));
            r.check("rejected only for l <= 3", true, l <= 3);
            r.conclusion = Some(format!("l = {l}: rejected, incompatible twist"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(r)
}

fn abelian_cover_report(n: usize) -> Result<ExampleReport, ExampleError> {
    if !(3..=64).contains(&n) {
        return Err(ExampleError::Parameter(format!("n = {n} outside 3..=64")));
    }
    let mut r = ExampleReport::new("abelian-cover");
    let t = build_abelian_cover(n)?;
    r.check("geometrically connected", false, t.base().is_geometrically_connected());
    r.check("non-abelian", true, !t.group().is_abelian());
    r.check("saturation order", 2 * n, saturation_subgroup(&t).order());
    r.check("geometric image full", true, geometric_image(&t).image.is_full());
    r.conclusion = Some(format!("D{n}: saturation is the whole group"));
    Ok(r)
}
