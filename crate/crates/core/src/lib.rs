//! Finite-temperature Casimir force between parallel metal plates.
//!
//! The engine evaluates the Lifshitz expression for the pressure and the
//! free energy per unit area between two identical half-spaces separated
//! by a vacuum gap `d` at temperature `T`. Both quantities are Matsubara
//! sums over imaginary frequencies ξ_n = 2πn·k_BT/ħ (the n = 0 term
//! carries weight ½), with each term an integral over transverse wave
//! number of squared Fresnel reflection amplitudes.
//!
//! The physically contentious piece is the n = 0 transverse-electric
//! term for dissipative (Drude-like) metals: its value depends on the
//! order in which frequency and wave number are sent to zero. Two
//! published conventions are implemented side by side:
//!
//! * [`Prescription::PointwiseLimit`] — evaluate r_TE² at ξ = 0 for each
//!   fixed q. Dissipation makes ξ²ε(iξ) → 0, so the TE zero mode drops
//!   out and the classical-limit pressure is halved.
//! * [`Prescription::IdealTEZero`] — approach ξ = 0 at fixed
//!   p = cγ₀/ξ ≥ 1, along which γ₁/γ₀ diverges and r_TE² → 1; the n = 0
//!   TE factor keeps its ideal-metal form 1 − e^{−2γ₀d}.
//!
//! Module map:
//!
//! * [`constants`] — the pinned SI constants (single home).
//! * [`dielectric`] — ε(iξ) models: ideal metal, plasma, Drude, tabulated.
//! * [`fresnel`] — evanescent wave numbers γ, reflection amplitudes, and
//!   the two zero-frequency prescriptions.
//! * [`quadrature`] — adaptive integration on [a, ∞) for exponentially
//!   decaying integrands, plus a dense trapezoid oracle for tests.
//! * [`lifshitz`] — Matsubara machinery: per-term integrals, pressure,
//!   free energy, T = 0 integral mode, sphere-plate PFA.
//! * [`limits`] — numeric traces of the ξ → 0 limit along fixed-q and
//!   fixed-p paths, with a three-way classification of the outcome.
//!
//! All quantities are SI: distances in m, frequencies in rad/s,
//! temperatures in K, pressure in Pa, free energy per area in J/m².
//! Attractive pressure is negative.

pub mod constants;
pub mod dielectric;
pub mod fresnel;
pub mod lifshitz;
pub mod limits;
pub mod quadrature;

pub use dielectric::{DielectricError, DielectricModel, DielectricTable, Permittivity};
pub use fresnel::{gamma, gamma_ratio, r2_zero_frequency, r_mode, Kinematics, Mode, Prescription};
pub use lifshitz::{
    free_energy, matsubara_xi, pfa_sphere_plate, pressure, pressure_t0, term_integrals, zero_term,
    ForceResult, LifshitzError, PlateSystem, SumConfig, TermEntry,
};
pub use limits::{classify_limit, trace_limit, LimitClass, LimitPath, LimitTrace, TraceRow};
pub use quadrature::{integrate_decaying, oracle_trapezoid, QuadError, QuadSpec};
