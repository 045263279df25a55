use thiserror::Error;

/// Errors raised by constructors and operations. Structural failures carry a
/// minimal witness (the indices at which the axiom breaks).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range for carrier of size {n}")]
    IndexOutOfRange { n: usize, index: usize },

    #[error("carrier size mismatch: {left} vs {right}")]
    CarrierMismatch { left: usize, right: usize },

    #[error("square-carrier relation has size {got}, expected {expected}")]
    SquareCarrierMismatch { expected: usize, got: usize },

    #[error("filled power requires exponent k >= 1")]
    ZeroFilledPower,

    #[error("relation is not reflexive: ({x}, {x}) missing")]
    NotReflexive { x: usize },

    #[error("relation is not symmetric: contains ({x}, {y}) but not ({y}, {x})")]
    NotSymmetric { x: usize, y: usize },

    #[error("relation is not transitive: ({x}, {y}) and ({y}, {z}) but not ({x}, {z})")]
    NotTransitive { x: usize, y: usize, z: usize },

    #[error("apartness meets equality at ({x}, {y})")]
    ApartnessMeetsEquality { x: usize, y: usize },

    #[error("apartness is not cotransitive: {x} # {z} but neither {x} # {y} nor {y} # {z}")]
    ApartnessNotCotransitive { x: usize, y: usize, z: usize },

    #[error("apartness is not extensional: {x} = {x_eq} and {x} # {y} but not {x_eq} # {y}")]
    ApartnessNotExtensional { x: usize, x_eq: usize, y: usize },

    #[error("table has {got} entries, expected {expected}")]
    TableSizeMismatch { expected: usize, got: usize },

    #[error("table entry {value} at ({x}, {y}) out of range for carrier of size {n}")]
    TableEntryOutOfRange {
        x: usize,
        y: usize,
        value: usize,
        n: usize,
    },

    #[error("multiplication is not associative at ({x}, {y}, {z})")]
    NonAssociative { x: usize, y: usize, z: usize },

    #[error("multiplication is not extensional: {x} = {x_eq}, {y} = {y_eq}, but products differ")]
    NotExtensional {
        x: usize,
        x_eq: usize,
        y: usize,
        y_eq: usize,
    },

    #[error("multiplication is not strongly extensional at ({x}, {y}) # ({z}, {w})")]
    NotStronglyExtensional {
        x: usize,
        y: usize,
        z: usize,
        w: usize,
    },

    #[error("relation is not a congruence: {s} ~ {t} but translates by {u} are unrelated")]
    NotCompatible { s: usize, t: usize, u: usize },

    #[error("relation is not a congruence")]
    NotCongruence,

    #[error("relation is not a co-congruence")]
    NotCoCongruence,

    #[error("congruence and co-congruence overlap at ({x}, {y})")]
    QuotientNotDisjoint { x: usize, y: usize },

    #[error("subset is not a co-ideal (strongly extensional: {strongly_extensional}, left convex: {left_convex}, right convex: {right_convex})")]
    NotCoIdeal {
        strongly_extensional: bool,
        left_convex: bool,
        right_convex: bool,
    },

    #[error("map has {got} entries, expected {expected}")]
    MapLengthMismatch { expected: usize, got: usize },

    #[error("map is not a homomorphism at ({x}, {y})")]
    NotHomomorphism { x: usize, y: usize },

    #[error("map is not extensional at ({x}, {y})")]
    MapNotExtensional { x: usize, y: usize },

    #[error("map is not strongly extensional at ({x}, {y})")]
    MapNotStronglyExtensional { x: usize, y: usize },

    #[error("element {a} is not regular")]
    NotRegular { a: usize },

    #[error("element {e} is not idempotent")]
    NotIdempotent { e: usize },

    #[error("elements {a} and {b} are not R-related")]
    NotRRelated { a: usize, b: usize },

    #[error("elements {a} and {b} are not L-related")]
    NotLRelated { a: usize, b: usize },

    #[error("subset is not an H-class")]
    NotHClass,

    #[error("expected a {expected} relation")]
    WrongRelationKind { expected: &'static str },

    #[error("subset-union oracle supports carriers up to {max}, got {n}")]
    OracleCarrierTooLarge { n: usize, max: usize },

    #[error("hamming carrier exponent {k} out of range 1..=12")]
    HammingOutOfRange { k: usize },

    #[error("word must be non-empty")]
    EmptyWord,

    #[error("unknown family spec `{spec}`")]
    UnknownFamily { spec: String },

    #[error("family spec `{spec}` exceeds its size bound")]
    FamilySizeBound { spec: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant failed: {what}")]
    Internal { what: &'static str },
}

pub type Result<T> = std::result::Result<T, Error>;
