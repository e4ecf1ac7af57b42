use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("closure exceeded the cap of {cap} elements (at least {reached} reached)")]
    CapExceeded { cap: usize, reached: usize },

    #[error("product rule produced a value outside the representable domain: {0}")]
    InconsistentProduct(String),

    #[error("generator images do not define a homomorphism: {0}")]
    NotWellDefined(String),

    #[error("map is not surjective: {0}")]
    NotSurjective(String),

    #[error("structure has {size} elements, above the supported bound of {bound}")]
    SizeExceeded { size: usize, bound: usize },

    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),

    #[error("element {0} is not in the minimal ideal")]
    NotInMinimalIdeal(usize),

    #[error("subset is not closed under the product: {0}")]
    NotClosed(String),

    #[error("subsemigroup has no idempotents")]
    NoIdempotents,

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("matrix is not row monomial: {0}")]
    NotRowMonomial(String),

    #[error("element {0} is not in the local monoid eSe")]
    NotInLocalMonoid(usize),

    #[error("modulus n = {n} is too small; need n >= {bound}")]
    NTooSmall { n: usize, bound: usize },

    #[error("monoid needs at least two generators, got {0}")]
    TooFewGenerators(usize),

    #[error("no admissible prime: {0}")]
    PrimeBoundViolated(String),

    #[error("alpha is not surjective")]
    NonSurjectiveAlpha,

    #[error("codomain of alpha (order {alpha_codomain}) is not isomorphic to the base group K (order {base})")]
    KMismatch { alpha_codomain: usize, base: usize },

    #[error("group is not simple: {0}")]
    NotSimple(String),

    #[error("monoid is not a group: {0}")]
    NotAGroup(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
