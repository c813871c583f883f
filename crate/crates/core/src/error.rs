use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("registers do not match: {0}")]
    RegisterMismatch(String),
    #[error("measurement operator is the identity")]
    IdentityMeasurement,
    #[error("stabilizer state corrupted: {0}")]
    CorruptedState(String),
    #[error("invalid stabilizer group: {0}")]
    InvalidGroup(String),
    #[error("lattice geometry: {0}")]
    Geometry(String),
    #[error("dimer covers live on different vertex sets")]
    VertexSetMismatch,
    #[error("no long loops to break")]
    NoLongLoops,
    #[error("logical operator measured at round {round}: {detail}")]
    LogicalMeasured { round: usize, detail: String },
    #[error("regions too small: {0}")]
    RegionTooSmall(String),
    #[error("anyon theory: {0}")]
    AnyonTheory(String),
    #[error("invalid check schedule: {0}")]
    Schedule(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
