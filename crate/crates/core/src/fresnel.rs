//! Evanescent wave numbers and Fresnel reflection coefficients at
//! imaginary frequency.
//!
//! Between the plates (vacuum, subscript 0) and inside a plate
//! (subscript 1) the decay constants of an evanescent mode with
//! transverse wave number q at imaginary frequency ξ are
//!
//! ```text
//! γ₀ = √(q² + ξ²/c²),    γ₁ = √(q² + ε(iξ)ξ²/c²)
//! ```
//!
//! and the two polarizations reflect with amplitudes
//! r_TE = (γ₀ − γ₁)/(γ₀ + γ₁) and r_TM = (εγ₀ − γ₁)/(εγ₀ + γ₁).
//! With ε ≥ 1, r_TE ∈ (−1, 0] and r_TM ∈ [0, 1); the ideal metal sits
//! on the closed boundary, r_TE = −1 and r_TM = +1 exactly.
//!
//! The delicate spot is ξ → 0. Along fixed q the TE amplitude of a
//! Drude metal vanishes, because ξ²ε(iξ) → 0; along fixed p (the
//! angle-like variable with q = ξ√(p²−1)/c) the ratio γ₁/γ₀ diverges
//! and r_TE → −1. The two paths reach different corners of the same
//! function, which is why the zero-frequency term is supplied by an
//! explicit [`Prescription`] rather than by a naive limit.

use crate::constants::C;
use crate::dielectric::{DielectricModel, Permittivity, ZeroFreqEps};

/// Polarization of an electromagnetic mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    TE,
    TM,
}

/// How the n = 0 frequency term treats the TE polarization.
///
/// `PointwiseLimit` takes lim_{ξ→0} r²(q, ξ) at fixed q, which kills
/// the TE term for any model with ξ²ε(iξ) → 0 (Drude, tabulated data).
/// `IdealTEZero` instead assigns the TE zero mode its ideal-metal
/// reflectivity r² = 1 for conducting materials, on the grounds that q
/// and ξ are not independent at the corner. TM is unaffected; the two
/// prescriptions differ only in the single n = 0 TE factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prescription {
    PointwiseLimit,
    IdealTEZero,
}

/// A point of the (q, ξ) quarter-plane, optionally remembered in the
/// p-coordinate, with the plate gap carried along for the e^{−2γ₀d}
/// factor. Wave numbers rad/m, frequencies rad/s, gap m.
#[derive(Debug, Clone, Copy)]
pub struct Kinematics {
    pub q: f64,
    pub xi: f64,
    /// Set when the point was built from the p-coordinate.
    pub p: Option<f64>,
    pub d: f64,
}

impl Kinematics {
    pub fn new(q: f64, xi: f64, d: f64) -> Self {
        assert!(q >= 0.0 && q.is_finite(), "q must be finite and >= 0");
        assert!(xi >= 0.0 && xi.is_finite(), "xi must be finite and >= 0");
        assert!(d > 0.0 && d.is_finite(), "gap must be positive and finite");
        Kinematics { q, xi, p: None, d }
    }

    /// Build from the p-coordinate: q = ξ√(p² − 1)/c, p ≥ 1.
    pub fn from_p(p: f64, xi: f64, d: f64) -> Self {
        assert!(p >= 1.0 && p.is_finite(), "p must be finite and >= 1");
        assert!(xi > 0.0 && xi.is_finite(), "p-coordinate needs xi > 0");
        assert!(d > 0.0 && d.is_finite(), "gap must be positive and finite");
        let q = xi * (p * p - 1.0).sqrt() / C;
        Kinematics {
            q,
            xi,
            p: Some(p),
            d,
        }
    }

    /// Vacuum decay constant γ₀ = √(q² + ξ²/c²), rad/m.
    pub fn gamma0(&self) -> f64 {
        ((self.q * self.q) + (self.xi * self.xi) / (C * C)).sqrt()
    }
}

/// Decay constant γ = √(q² + ε ξ²/c²) in rad/m.
///
/// Total except at the disputed corner: an infinite ε with ξ > 0 gives
/// `f64::INFINITY`, while (ξ = 0, ε infinite) is refused because the
/// product ξ²ε there is exactly the quantity the prescriptions
/// disagree about; resolve it with
/// [`DielectricModel::eval_xi2_eps`] first.
pub fn gamma(q: f64, xi: f64, eps: Permittivity) -> f64 {
    assert!(q >= 0.0 && q.is_finite(), "q must be finite and >= 0");
    assert!(xi >= 0.0 && xi.is_finite(), "xi must be finite and >= 0");
    match eps {
        Permittivity::Infinite => {
            assert!(
                xi > 0.0,
                "gamma at (xi = 0, eps = infinity) is prescription-dependent; \
                 use eval_xi2_eps for the xi^2 eps product"
            );
            f64::INFINITY
        }
        Permittivity::Finite(e) => {
            assert!(e >= 1.0, "eps must be >= 1, got {e:e}");
            ((q * q) + e * (xi * xi) / (C * C)).sqrt()
        }
    }
}

/// The ratio γ₁/γ₀ along the p-coordinate: √(p² − 1 + ε(iξ))/p.
///
/// At ξ = 0 every conducting model makes the ratio grow without bound;
/// the divergence is reported as an explicit `f64::INFINITY`, never a
/// NaN. A tabulated model with a finite zero-frequency limit B gives
/// the finite value √(p² − 1 + B)/p.
///
/// Panics if a tabulated model with no metallic low-frequency fit is
/// queried below its knot range at ξ > 0.
pub fn gamma_ratio(p: f64, xi: f64, model: &DielectricModel) -> f64 {
    assert!(p >= 1.0 && p.is_finite(), "p must be finite and >= 1");
    assert!(xi >= 0.0 && xi.is_finite(), "xi must be finite and >= 0");
    if xi == 0.0 {
        return match model.zero_freq_eps() {
            ZeroFreqEps::Divergent => f64::INFINITY,
            ZeroFreqEps::Finite(b) => (p * p - 1.0 + b).sqrt() / p,
        };
    }
    match model.eval_eps(xi) {
        Ok(Permittivity::Infinite) => f64::INFINITY,
        Ok(Permittivity::Finite(e)) => (p * p - 1.0 + e).sqrt() / p,
        Err(e) => panic!("gamma ratio needs eps(i xi): {e}"),
    }
}

/// Fresnel reflection amplitude for one polarization at (q, ξ).
///
/// The corner (0, 0) is refused; everywhere else the value is the
/// pointwise one, with the ξ = 0 edge resolved through the total
/// products ξ²ε and the model's zero-frequency ε limit, so Drude gives
/// r_TE = 0 on that edge while the ideal metal gives −1 and +1 exactly.
///
/// Panics if a tabulated model with no metallic low-frequency fit is
/// queried below its knot range at ξ > 0 (TM needs ε itself there).
pub fn r_mode(mode: Mode, q: f64, xi: f64, model: &DielectricModel) -> f64 {
    assert!(q >= 0.0 && q.is_finite(), "q must be finite and >= 0");
    assert!(xi >= 0.0 && xi.is_finite(), "xi must be finite and >= 0");
    assert!(
        q > 0.0 || xi > 0.0,
        "the (q, xi) = (0, 0) corner has no pointwise value; use a Prescription"
    );

    // Both decay constants are built from the same xi^2 eps product so
    // that eps = 1 yields gamma1 == gamma0 bit for bit and r = 0 exactly.
    let gamma0 = ((q * q) + (xi * xi) / (C * C)).sqrt();
    let x2e = model.eval_xi2_eps(xi);
    let gamma1 = if x2e.is_infinite() {
        f64::INFINITY
    } else {
        ((q * q) + x2e / (C * C)).sqrt()
    };

    match mode {
        Mode::TE => {
            if gamma1.is_infinite() {
                -1.0
            } else {
                (gamma0 - gamma1) / (gamma0 + gamma1)
            }
        }
        Mode::TM => {
            if xi == 0.0 {
                return match model.zero_freq_eps() {
                    // eps -> infinity while gamma1 stays finite.
                    ZeroFreqEps::Divergent => 1.0,
                    ZeroFreqEps::Finite(b) => (b * gamma0 - gamma1) / (b * gamma0 + gamma1),
                };
            }
            match model.eval_eps(xi) {
                Ok(Permittivity::Infinite) => 1.0,
                Ok(Permittivity::Finite(e)) => (e * gamma0 - gamma1) / (e * gamma0 + gamma1),
                Err(e) => panic!("TM reflection needs eps(i xi): {e}"),
            }
        }
    }
}

/// Both squared reflectivities from already-resolved kinematics: the
/// vacuum and material decay constants plus ε itself. This is the form
/// the frequency-sum engine uses after hoisting ε(iξ_n) out of the
/// integrand; it must stay algebraically identical to [`r_mode`].
/// An infinite ε or γ₁ is the ideal-metal boundary, (1, 1).
pub(crate) fn r2_pair(gamma0: f64, gamma1: f64, eps: Permittivity) -> (f64, f64) {
    match eps {
        Permittivity::Infinite => (1.0, 1.0),
        Permittivity::Finite(e) => {
            if gamma1.is_infinite() {
                return (1.0, 1.0);
            }
            let r_te = (gamma0 - gamma1) / (gamma0 + gamma1);
            let r_tm = (e * gamma0 - gamma1) / (e * gamma0 + gamma1);
            (r_te * r_te, r_tm * r_tm)
        }
    }
}

/// Squared reflectivity entering the n = 0 frequency term, q > 0.
///
/// TM ignores the prescription: every conducting model reflects with
/// r² = 1 at zero frequency, a dielectric with finite ε(0) = B with
/// ((B − 1)/(B + 1))². TE is where the prescriptions part ways:
/// `PointwiseLimit` evaluates lim_{ξ→0} r_TE² at fixed q (0 for Drude
/// and tabulated data, the plasma-screened value for Plasma, 1 for the
/// ideal metal), while `IdealTEZero` assigns conducting models the
/// ideal-metal value 1. A dielectric has no disputed TE zero mode, so
/// both prescriptions give its pointwise value 0.
pub fn r2_zero_frequency(
    mode: Mode,
    q: f64,
    model: &DielectricModel,
    prescription: Prescription,
) -> f64 {
    assert!(q > 0.0 && q.is_finite(), "q must be finite and > 0");
    let conducting = matches!(model.zero_freq_eps(), ZeroFreqEps::Divergent);
    match mode {
        Mode::TM => {
            let r = r_mode(Mode::TM, q, 0.0, model);
            r * r
        }
        Mode::TE => match prescription {
            Prescription::IdealTEZero if conducting => 1.0,
            _ => {
                let r = r_mode(Mode::TE, q, 0.0, model);
                r * r
            }
        },
    }
}
