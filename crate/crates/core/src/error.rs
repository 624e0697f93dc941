use thiserror::Error;

/// Errors raised by group constructions and the edge calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("group of order {order} exceeds the configured bound {bound}")]
    GroupTooLarge { order: u128, bound: u64 },

    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group has no central subgroup of order p")]
    NoCentralSubgroup,

    #[error("group has no unique central subgroup of order p")]
    NoUniqueCentralSubgroup,

    #[error("group is not a Roquette group")]
    NotRoquette,

    #[error("central product undefined here: {0}")]
    CentralProductUndefined(String),

    #[error("central product gluings are not isomorphic: {0}")]
    AmbiguousGluing(String),

    #[error("this evaluation requires an odd prime")]
    OddPrimeRequired,

    #[error("malformed edge tag {0:?}")]
    BadTag(String),
}

pub type Result<T> = std::result::Result<T, Error>;
