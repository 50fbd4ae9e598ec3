use thiserror::Error;

use crate::Elem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table row {row} has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("element {identity} is not neutral: fails against {witness}")]
    NoIdentity { identity: Elem, witness: Elem },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: Elem },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("map is not a bijection (collision or overflow at {point})")]
    NotBijective { point: usize },
    #[error("map is not a homomorphism: f({x}*{y}) != f({x})*f({y})")]
    NotAHomomorphism { x: Elem, y: Elem },
    #[error("generator images do not extend to a homomorphism (conflict at element {element})")]
    InconsistentImages { element: Elem },
    #[error("given elements do not generate the group")]
    NotGenerating,
    #[error("invalid action of actor element {actor}: {reason}")]
    InvalidAction { actor: Elem, reason: String },
    #[error("not normal: {g}*{h}*{g}^-1 = {conjugate} leaves the subgroup")]
    NotNormal { g: Elem, h: Elem, conjugate: Elem },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group of order {order} exceeds the limit {limit}")]
    TooLarge { order: usize, limit: usize },
    #[error("mismatched groups: {0}")]
    Mismatch(String),
}

/// Which side of a torsor an action failure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Evidence that the left (monodromy) data is not a twisted action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistWitness {
    /// `gamma·(p·g) != (gamma·p)·(alpha(gamma)(g))`.
    Law { gamma: Elem, point: usize, g: Elem },
    /// The generator images violate a relation of the monodromy group: two words for
    /// `gamma` move `point` differently.
    Relation { gamma: Elem, point: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorsorError {
    #[error("dimension mismatch: {0}")]
    Dimensions(String),
    #[error("{side:?} data is not an action (element {element}, point {point})")]
    NotAnAction { side: Side, element: Elem, point: usize },
    #[error("right action is not simply transitive (witness {0})")]
    NotSimplyTransitive(String),
    #[error("left action is incompatible with the twist: {0:?}")]
    IncompatibleTwist(TwistWitness),
    #[error("base or structure group mismatch: {0}")]
    BaseMismatch(String),
    #[error("map is not Galois-equivariant at gamma={gamma}, g={g}")]
    NotEquivariant { gamma: Elem, g: Elem },
    #[error("subgroup is not normal: {g}*{h}*{g}^-1 = {conjugate}")]
    NotNormal { g: Elem, h: Elem, conjugate: Elem },
    #[error("subgroup is not Galois-stable: gamma={gamma} moves {h} outside")]
    NotStable { gamma: Elem, h: Elem },
    #[error("torsor is not saturated")]
    NotSaturated,
    #[error("not a torsor morphism: {0}")]
    NotAMorphism(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("inverse system is empty")]
    EmptySystem,
    #[error("catalog entry of order {order} exceeds the bound {bound}")]
    BoundExceeded { order: usize, bound: usize },
    #[error("candidate is not over the catalog's base: {0}")]
    ContextMismatch(String),
    #[error(transparent)]
    Torsor(#[from] TorsorError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
