use crate::colorspace::ColorSpace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A value lies outside the domain of the operation (e.g. an sRGB channel
    /// above 255, or a Lab color outside the displayable hull).
    #[error("input out of domain: {0}")]
    Domain(String),

    #[error("color space mismatch: expected {expected}, got {found}")]
    SpaceMismatch {
        expected: ColorSpace,
        found: ColorSpace,
    },

    /// Malformed graph, grid, or configuration.
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("degenerate gamut: {0}")]
    DegenerateGamut(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn check_space(expected: ColorSpace, found: ColorSpace) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::SpaceMismatch { expected, found })
        }
    }
}
