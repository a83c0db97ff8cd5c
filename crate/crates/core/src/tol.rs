//! Named numerical tolerances.
//!
//! Every matrix in this crate is at most a few hundred rows, so residuals of
//! exact identities are pure rounding noise. Values far from these bounds
//! indicate bugs, not conditioning.

/// Spectral residuals: ‖N − S̃ΛS̃†‖ and friends.
pub const SPECTRAL: f64 = 1e-10;

/// Verlinde-formula residual over all index triples.
pub const VERLINDE: f64 = 1e-9;

/// Unitarity and involution checks (S̃² = I, braid generators unitary).
pub const UNITARY: f64 = 1e-12;

/// Braid relation residual ‖BᵢBᵢ₊₁Bᵢ − Bᵢ₊₁BᵢBᵢ₊₁‖.
pub const BRAID_RELATION: f64 = 1e-10;

/// Far commutation ‖BᵢBⱼ − BⱼBᵢ‖ for |i−j| ≥ 2.
pub const FAR_COMMUTATION: f64 = 1e-12;

/// Pentagon/hexagon residual for the golden F/R data.
pub const PENTAGON: f64 = 1e-12;

/// Clock/shift commutation ‖UV − ξVU‖.
pub const CLOCK_SHIFT: f64 = 1e-13;

/// Truncated Weyl-series pentagon coefficient residual.
pub const WEYL_PENTAGON: f64 = 1e-10;
