use thiserror::Error;

/// Why a coset map fails to be a quotient isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoViolation {
    #[error("map has {got} entries but the quotient has {expected} cosets")]
    WrongLength { expected: usize, got: usize },
    #[error("coset {source_coset} maps to {target}, outside 0..{count}")]
    OutOfRange {
        source_coset: usize,
        target: usize,
        count: usize,
    },
    #[error("not injective: cosets {first} and {second} both map to {target}")]
    NotInjective {
        first: usize,
        second: usize,
        target: usize,
    },
    #[error("identity coset maps to coset {0}")]
    IdentityNotPreserved(usize),
    #[error("not a homomorphism at cosets ({0},{1})")]
    NotHomomorphic(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group order must be positive")]
    InvalidOrder,
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("table not closed: op({row},{col}) = {value} is outside 0..{order}")]
    NotClosed {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("table not associative at ({0},{1},{2})")]
    NotAssociative(usize, usize, usize),
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("element {element} outside group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not normal: {conjugator} conjugates {element} outside the subgroup")]
    NotNormal { conjugator: usize, element: usize },
    #[error("incompatible quotients: {left} cosets versus {right} cosets")]
    IncompatibleQuotients { left: usize, right: usize },
    #[error("not a quotient isomorphism: {0}")]
    NotQuotientIso(IsoViolation),
    #[error("invalid coset system: {0}")]
    InvalidCosetSystem(String),
    #[error("invalid frame: {0}")]
    InvalidFrame(String),
    #[error("groups {0} and {1} are not related")]
    NotRelated(usize, usize),
    #[error("frame conditions fail: {0}")]
    NotAFrame(String),
    #[error("elements belong to different algebras")]
    FrameMismatch,
    #[error("invalid atom {0}")]
    InvalidAtom(String),
    #[error("condition ({condition}): {detail}")]
    CyclicCondition {
        condition: &'static str,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
