use thiserror::Error;

use crate::braid::BraidError;
use crate::gaussmanin::GmError;
use crate::geometry::GeometryError;
use crate::quantum::QuantumError;
use crate::stokes::StokesError;
use crate::tracking::TrackingError;

/// Coarse failure families; each has a fixed process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    Parse,
    InadmissibleDirection,
    Tracking,
    Degeneracy,
    Other,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Parse => 2,
            ErrorKind::InadmissibleDirection => 3,
            ErrorKind::Tracking => 4,
            ErrorKind::Degeneracy => 5,
            ErrorKind::Other => 1,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Tracking(#[from] TrackingError),
    #[error(transparent)]
    Stokes(#[from] StokesError),
    #[error(transparent)]
    GaussManin(#[from] GmError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn geometry_kind(e: &GeometryError) -> ErrorKind {
    match e {
        GeometryError::Parse { .. } | GeometryError::BadPhase(_) => ErrorKind::Parse,
        GeometryError::InadmissibleDirection(_) => ErrorKind::InadmissibleDirection,
        GeometryError::ConstantFunction
        | GeometryError::ZeroPolynomial
        | GeometryError::EmptySigma
        | GeometryError::RepeatedCriticalValue
        | GeometryError::DegenerateCriticalPoint { .. } => ErrorKind::Degeneracy,
        GeometryError::RootFindingDiverged { .. } | GeometryError::FiberCount { .. } => ErrorKind::Other,
    }
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Geometry(e) => geometry_kind(e),
            Error::Tracking(TrackingError::Geometry(e)) => match geometry_kind(e) {
                ErrorKind::Other => ErrorKind::Tracking,
                k => k,
            },
            Error::Tracking(_) => ErrorKind::Tracking,
            Error::Stokes(StokesError::UnsupportedDegeneracy { .. }) => ErrorKind::Degeneracy,
            Error::GaussManin(GmError::UnsupportedPolynomial(_)) => ErrorKind::Degeneracy,
            Error::Braid(BraidError::BadLetter(_)) | Error::Quantum(_) | Error::Input(_) | Error::Json(_) => ErrorKind::Parse,
            _ => ErrorKind::Other,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind().exit_code()
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
