use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("division is not exact: {0}")]
    NotExact(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("unsupported coefficient: {0}")]
    UnsupportedCoefficient(String),
    #[error("{what} = {got} exceeds the limit {limit} (set LATTICA_MAX_N to override)")]
    SizeGuard { what: String, got: usize, limit: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
}

/// Value of `LATTICA_MAX_N`, if set and numeric.
pub fn max_n_override() -> Option<usize> {
    std::env::var("LATTICA_MAX_N").ok()?.trim().parse().ok()
}

/// Refuse sizes above `limit` unless `LATTICA_MAX_N` raises it.
pub fn guard(what: &str, got: usize, limit: usize) -> Result<(), Error> {
    let limit = max_n_override().map_or(limit, |m| m.max(limit));
    if got > limit {
        return Err(Error::SizeGuard { what: what.to_string(), got, limit });
    }
    Ok(())
}
