//! Global geometric tolerance `ε_geo`.
//!
//! The boundary band of a body is `ε_geo · scale`, where `scale` is the body's
//! diameter estimate. The default is `1e-9`; the CLI overrides it from the
//! `HILBGEOM_TOL` environment variable.

use std::sync::OnceLock;

pub const DEFAULT_GEO_EPS: f64 = 1e-9;

/// Environment variable read by the command-line tool.
pub const TOL_ENV_VAR: &str = "HILBGEOM_TOL";

static GEO_EPS: OnceLock<f64> = OnceLock::new();

pub fn geo_eps() -> f64 {
    *GEO_EPS.get_or_init(|| DEFAULT_GEO_EPS)
}

/// Sets `ε_geo` once, before any geometric query. Returns `false` if the value
/// was already fixed or is not a positive finite number.
pub fn set_geo_eps(eps: f64) -> bool {
    eps.is_finite() && eps > 0.0 && GEO_EPS.set(eps).is_ok()
}
