//! Size bounds for the exhaustive routines.

/// Bounds guarding exhaustive enumeration and determinant checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    /// Largest ambient dimension for vertex and circuit enumeration.
    pub max_dim: usize,
    /// Largest number of inequality rows for circuit enumeration.
    pub max_rows: usize,
    /// Largest `min(rows, cols)` for the exhaustive unimodularity test.
    pub max_tu_minor: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        Self { max_dim: 12, max_rows: 24, max_tu_minor: 8 }
    }
}

impl EnumLimits {
    pub const ENV_VAR: &'static str = "CW_ENUM_LIMIT";

    pub fn unbounded() -> Self {
        Self { max_dim: usize::MAX, max_rows: usize::MAX, max_tu_minor: usize::MAX }
    }

    /// Parses `dim[,rows[,minor]]`; missing fields keep their defaults.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut limits = Self::default();
        let fields: Vec<&str> = text.split(',').map(str::trim).collect();
        if fields.len() > 3 {
            return Err(format!("expected at most three bounds, found {}", fields.len()));
        }
        let targets = [&mut limits.max_dim, &mut limits.max_rows, &mut limits.max_tu_minor];
        for (slot, field) in targets.into_iter().zip(&fields) {
            if field.is_empty() {
                continue;
            }
            *slot = field.parse().map_err(|_| format!("malformed bound '{field}'"))?;
        }
        Ok(limits)
    }

    /// Defaults overridden by `CW_ENUM_LIMIT` when set.
    pub fn from_env() -> Result<Self, String> {
        match std::env::var(Self::ENV_VAR) {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(Self::default()),
        }
    }
}
