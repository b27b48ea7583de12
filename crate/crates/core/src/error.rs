use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group spec `{0}`")]
    InvalidSpec(String),

    #[error("group order {order} exceeds the supported maximum {max}")]
    OrderCap { order: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a bijection of 0..{0}")]
    NotAPermutation(usize),

    #[error("permutation has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("map is not a group automorphism: f({x}*{y}) != f({x})*f({y})")]
    NotAnAutomorphism { x: usize, y: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("not a subgroup")]
    NotASubgroup,

    #[error("S-ring axiom violated: {0}")]
    Axiom(#[from] AxiomViolation),

    #[error("set is not a union of basic sets")]
    NotAnASet,

    #[error("{0} is not an S-ring section")]
    NotASection(String),

    #[error("permutation group does not contain the right regular representation")]
    MissingRegular,

    #[error("group is not abelian")]
    NonAbelian,

    #[error("not a difference set")]
    NotADifferenceSet,

    #[error("{what} budget of {budget} exhausted")]
    BudgetExceeded { what: &'static str, budget: u64 },

    #[error("internal consistency alarm: {0}")]
    Alarm(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// The first S-ring axiom a candidate partition fails, with a witness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    #[error("classes do not partition the group (element {0} covered {1} times)")]
    NotAPartition(usize, usize),
    #[error("the identity is not a singleton class")]
    IdentityNotSingleton,
    #[error("inverse of class {class} is not a class")]
    InverseNotClass { class: usize },
    /// `z` and `w` lie in the same class but have different numbers of
    /// factorizations through classes `x` and `y`.
    #[error("classes {x}*{y}: elements {z} and {w} of class {class} have {count_z} and {count_w} factorizations")]
    NonConstantCount {
        x: usize,
        y: usize,
        class: usize,
        z: usize,
        w: usize,
        count_z: u32,
        count_w: u32,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
