use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type {series}{rank}: {reason}")]
    InvalidType {
        series: char,
        rank: usize,
        reason: String,
    },
    #[error("rank {rank} exceeds the configured bound {bound}")]
    RankBound { rank: usize, bound: usize },
    #[error("Cartan matrix is not of finite type")]
    NotFinite,
    #[error("subset {subset} is not contained in {container}")]
    NotSubset { subset: String, container: String },
    #[error("subset {0} is not stable under the diagram automorphism")]
    NotStable(String),
    #[error("element {word} is not a minimal representative: {reason}")]
    NotMinimal { word: String, reason: String },
    #[error("group order {order} exceeds the configured bound {bound}")]
    OrderBound { order: usize, bound: usize },
    #[error("class functions live on different groups")]
    MismatchedGroups,
    #[error("group is not embedded in the target group")]
    NotEmbedded,
    #[error("class function is not irreducible (self-pairing {0})")]
    NotIrreducible(String),
    #[error("inconsistent Hecke parameters: s{0} and s{1} are conjugate but have different parameters")]
    InconsistentParams(usize, usize),
    #[error("invalid Hecke parameter: {0}")]
    InvalidParam(String),
    #[error("elements belong to different Hecke algebras")]
    MixedAlgebras,
    #[error("the Coxeter system is reducible")]
    Reducible,
    #[error("subset must be a proper subset of the extended node set")]
    FullAffineSet,
    #[error("extension precondition failed: {0}")]
    ExtensionPrecondition(String),
    #[error("character table computation failed: {0}")]
    Dixon(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
