use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {q}: {reason}")]
    InvalidModulus { q: u64, reason: &'static str },

    #[error("field elements from different moduli ({left} vs {right})")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),

    #[error("edge {0}-{1} does not cross the bipartition")]
    NotBipartite(u32, u32),

    #[error("malformed vertex label: {0}")]
    MalformedLabel(String),

    #[error("invalid degeneracy order: {0}")]
    InvalidOrder(String),

    #[error("palette partition covers {found} colors but the coloring uses {expected}")]
    PaletteMismatch { expected: usize, found: usize },

    #[error(
        "degree retention failed after {retries} attempts: vertex {vertex} kept ratio {ratio:.4} \
         (minimum-degree precondition likely violated)"
    )]
    RetentionFailed {
        retries: u32,
        vertex: u32,
        ratio: f64,
    },

    #[error("certificate check failed: {0}")]
    CertificateFailed(String),

    #[error("decomposition aborted in round {round}: {source}\n{log}")]
    DecompositionAborted {
        round: usize,
        log: String,
        #[source]
        source: Box<Error>,
    },

    #[error(
        "no built-in seed graph of girth >= {girth} fits on {n} vertices; supply one explicitly"
    )]
    NoSeedAvailable { n: usize, girth: u32 },

    #[error("the Turán constant c_k must be supplied explicitly")]
    MissingTuranConstant,

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(path: &str, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            path: path.to_string(),
            line,
            msg: msg.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
