//! Name resolution and validation of parsed documents.

use std::sync::Arc;

use indexmap::IndexMap;
use nori_core::{
    semidirect_product, AutAction, BaseDatum, EtaleGroup, FiniteGroup, GroupHom, Perm, PointedTorsor, TorsorGenerators,
    TorsorMorphism,
};
use thiserror::Error;

use crate::dsl::{parse_document, Cycles, DeclKind, Document, GeneratorMaps, GroupExpr, Span, SyntaxError};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{span}: unresolved name `{name}`{expected}", expected = if kind.is_empty() { String::new() } else { format!(" (expected a {kind})") })]
    Unresolved { span: Span, name: String, kind: &'static str },
    #[error("{span}: duplicate declaration of `{name}`")]
    Duplicate { span: Span, name: String },
    #[error("{span}: {name} does not validate: {message}")]
    Validation { span: Span, name: String, message: String },
}

impl ModelError {
    pub fn span(&self) -> Span {
        match self {
            ModelError::Syntax(e) => e.span,
            ModelError::Unresolved { span, .. }
            | ModelError::Duplicate { span, .. }
            | ModelError::Validation { span, .. } => *span,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ModelError::Syntax(_) => "SyntaxError",
            ModelError::Unresolved { .. } | ModelError::Duplicate { .. } => "UnresolvedName",
            ModelError::Validation { .. } => "ValidationError",
        }
    }
}

/// A loaded document: every declaration resolved and validated, in source order.
#[derive(Clone, Debug, Default)]
pub struct Model {
    pub document: Document,
    pub galois: IndexMap<String, Arc<FiniteGroup>>,
    pub bases: IndexMap<String, Arc<BaseDatum>>,
    pub groups: IndexMap<String, Arc<EtaleGroup>>,
    pub torsors: IndexMap<String, Arc<PointedTorsor>>,
    pub morphisms: IndexMap<String, TorsorMorphism>,
}

impl Model {
    pub fn is_empty(&self) -> bool {
        self.document.decls.is_empty()
    }

    pub fn torsor(&self, name: &str) -> Option<&Arc<PointedTorsor>> {
        self.torsors.get(name)
    }

    fn taken(&self, name: &str) -> bool {
        self.galois.contains_key(name)
            || self.bases.contains_key(name)
            || self.groups.contains_key(name)
            || self.torsors.contains_key(name)
            || self.morphisms.contains_key(name)
    }
}

fn cycles_to_perm(c: &Cycles, size: usize) -> Result<Perm, String> {
    let mut images: Vec<usize> = (0..size).collect();
    let mut seen = vec![false; size];
    for cycle in c {
        for (i, &x) in cycle.iter().enumerate() {
            if x >= size {
                return Err(format!("point {x} outside 0..{size}"));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(format!("point {x} appears twice in a permutation"));
            }
            images[x] = cycle[(i + 1) % cycle.len()];
        }
    }
    Perm::from_images(images).map_err(|e| e.to_string())
}

struct Loader<'a> {
    model: &'a mut Model,
    span: Span,
    name: String,
}

impl Loader<'_> {
    fn invalid(&self, message: impl ToString) -> ModelError {
        ModelError::Validation { span: self.span, name: self.name.clone(), message: message.to_string() }
    }

    fn unresolved(&self, name: &str, kind: &'static str) -> ModelError {
        ModelError::Unresolved { span: self.span, name: name.into(), kind }
    }

    fn group(&self, e: &GroupExpr) -> Result<Arc<FiniteGroup>, ModelError> {
        Ok(match e {
            GroupExpr::Cyclic(n) => {
                if *n == 0 || *n > nori_core::group::MAX_ORDER {
                    return Err(self.invalid(format!("cyclic order {n} out of range")));
                }
                Arc::new(FiniteGroup::cyclic(*n))
            }
            GroupExpr::Units(n) => {
                if *n < 2 || *n > nori_core::group::MAX_ORDER {
                    return Err(self.invalid(format!("units modulo {n} out of range")));
                }
                Arc::new(FiniteGroup::units_mod(*n))
            }
            GroupExpr::Product(a, b) => {
                Arc::new(FiniteGroup::direct_product(&*self.group(a)?, &*self.group(b)?).map_err(|e| self.invalid(e))?)
            }
            GroupExpr::Semidirect(n, h, maps) => {
                let (n, h) = (self.group(n)?, self.group(h)?);
                let action = self.action(&h, &n, maps)?;
                semidirect_product(&action).map_err(|e| self.invalid(e))?.group
            }
            GroupExpr::Table(rows) => {
                let n = rows.len();
                let identity = rows
                    .iter()
                    .position(|r| r.iter().copied().eq(0..n))
                    .ok_or_else(|| self.invalid("table has no identity row"))?;
                Arc::new(FiniteGroup::from_table(rows, identity).map_err(|e| self.invalid(e))?)
            }
            GroupExpr::Name(s) => {
                if let Some(g) = self.model.galois.get(s) {
                    g.clone()
                } else if let Some(g) = self.model.groups.get(s) {
                    g.group().clone()
                } else {
                    return Err(self.unresolved(s, "group"));
                }
            }
        })
    }

    fn action(
        &self,
        actor: &Arc<FiniteGroup>,
        target: &Arc<FiniteGroup>,
        maps: &GeneratorMaps,
    ) -> Result<AutAction, ModelError> {
        let mut gens = Vec::new();
        for (k, images) in maps {
            if *k >= actor.order() {
                return Err(self.invalid(format!("acting element {k} outside a group of order {}", actor.order())));
            }
            if images.len() != target.order() {
                return Err(self.invalid(format!("{} images for a group of order {}", images.len(), target.order())));
            }
            gens.push((*k, Perm::from_images(images.clone()).map_err(|e| self.invalid(e))?));
        }
        if gens.is_empty() {
            return Ok(AutAction::trivial(actor.clone(), target.clone()));
        }
        AutAction::from_generator_images(actor.clone(), target.clone(), &gens).map_err(|e| self.invalid(e))
    }

    fn load(&mut self, kind: &DeclKind) -> Result<(), ModelError> {
        let name = self.name.clone();
        match kind {
            DeclKind::Galois { group } => {
                let g = self.group(group)?;
                self.model.galois.insert(name, g);
            }
            DeclKind::Base { pi, context, images } => {
                let pi = self.group(pi)?;
                let gamma = self
                    .model
                    .galois
                    .get(context)
                    .cloned()
                    .ok_or_else(|| self.unresolved(context, "galois context"))?;
                let projection = GroupHom::new(pi, gamma, images.clone()).map_err(|e| self.invalid(e))?;
                self.model.bases.insert(name, Arc::new(BaseDatum::new(projection)));
            }
            DeclKind::Group { expr, over, action } => {
                let g = self.group(expr)?;
                let gamma = match over {
                    Some(c) => self.model.galois.get(c).cloned().ok_or_else(|| self.unresolved(c, "galois context"))?,
                    None if self.model.galois.len() == 1 => self.model.galois[0].clone(),
                    None => {
                        return Err(self.invalid(format!(
                            "`over <context>` is required with {} galois declarations",
                            self.model.galois.len()
                        )))
                    }
                };
                let action = self.action(&gamma, &g, action.as_ref().unwrap_or(&Vec::new()))?;
                self.model.groups.insert(name, Arc::new(EtaleGroup::new(action)));
            }
            DeclKind::Torsor { base, group, size, left, right, point } => {
                let b = self.model.bases.get(base).cloned().ok_or_else(|| self.unresolved(base, "base"))?;
                let s = self.model.groups.get(group).cloned().ok_or_else(|| self.unresolved(group, "group"))?;
                let perms = |entries: &[(usize, Cycles)], order: usize| -> Result<Vec<(usize, Perm)>, ModelError> {
                    entries
                        .iter()
                        .map(|(k, c)| {
                            if *k >= order {
                                return Err(self.invalid(format!("generator {k} outside a group of order {order}")));
                            }
                            Ok((*k, cycles_to_perm(c, *size).map_err(|e| self.invalid(e))?))
                        })
                        .collect()
                };
                let left = perms(left, b.pi().order())?;
                let right = perms(right, s.group().order())?;
                let t = PointedTorsor::from_generators(TorsorGenerators {
                    base: b,
                    structure: s,
                    size: *size,
                    left,
                    right,
                    basepoint: *point,
                })
                .map_err(|e| self.invalid(format!("{e} [{}]", error_variant(&e))))?;
                self.model.torsors.insert(name, Arc::new(t));
            }
            DeclKind::Morphism { source, target, images } => {
                let src = self.model.torsors.get(source).cloned().ok_or_else(|| self.unresolved(source, "torsor"))?;
                let tgt = self.model.torsors.get(target).cloned().ok_or_else(|| self.unresolved(target, "torsor"))?;
                let f = GroupHom::new(src.group().clone(), tgt.group().clone(), images.clone())
                    .map_err(|e| self.invalid(e))?;
                let m = TorsorMorphism::from_group_map(src, tgt, f).map_err(|e| self.invalid(e))?;
                self.model.morphisms.insert(name, m);
            }
        }
        Ok(())
    }
}

/// Variant name of a torsor error, for diagnostics.
pub fn error_variant(e: &nori_core::TorsorError) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

pub fn load_document(document: Document) -> Result<Model, ModelError> {
    let mut model = Model::default();
    for d in &document.decls {
        if model.taken(&d.name) {
            return Err(ModelError::Duplicate { span: d.span, name: d.name.clone() });
        }
        Loader { model: &mut model, span: d.span, name: d.name.clone() }.load(&d.kind)?;
    }
    model.document = document;
    Ok(model)
}

pub fn parse_model(text: &str) -> Result<Model, ModelError> {
    load_document(parse_document(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nori_core::examples::build_real_roots;
    use nori_core::torsor::torsor_isomorphism;

    const REAL4: &str = include_str!("../models/real4.model");

    #[test]
    fn empty_document_is_empty_model() {
        assert!(parse_model("").unwrap().is_empty());
    }

    #[test]
    fn shipped_model_matches_builder() {
        let m = parse_model(REAL4).unwrap();
        let t = m.torsor("P4").unwrap();
        let built = Arc::new(build_real_roots(4).unwrap());
        assert!(torsor_isomorphism(t, &built).unwrap().is_some());
    }

    #[test]
    fn wrong_size_is_not_simply_transitive() {
        let text = REAL4.replace("size 4", "size 5");
        let err = parse_model(&text).unwrap_err();
        assert_eq!(err.kind(), "ValidationError");
        assert!(err.to_string().contains("NotSimplyTransitive"), "{err}");
    }

    #[test]
    fn unresolved_and_duplicate_names() {
        let err = parse_model("galois R = cyclic(2)\nbase X = (cyclic(2) -> K via [0, 1])").unwrap_err();
        assert_eq!(err.kind(), "UnresolvedName");
        assert_eq!(err.span(), Span { line: 2, column: 1 });
        let err = parse_model("galois R = cyclic(2)\ngalois R = cyclic(3)").unwrap_err();
        assert!(matches!(err, ModelError::Duplicate { .. }));
    }

    #[test]
    fn semidirect_and_table_expressions() {
        let m = parse_model(
            "galois K = cyclic(1)\n\
             group D3 = semidirect(cyclic(3), cyclic(2), { 1: [0, 2, 1] })\n\
             group V = table([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])\n\
             group U = units(7)",
        )
        .unwrap();
        assert!(!m.groups["D3"].group().is_abelian());
        assert_eq!(m.groups["V"].group().order(), 4);
        assert!(m.groups["U"].group().is_cyclic());
        let err = parse_model("galois K = cyclic(1)\ngroup B = semidirect(cyclic(3), cyclic(2), { 1: [0, 1, 1] })")
            .unwrap_err();
        assert_eq!(err.kind(), "ValidationError");
    }
}
