//! Finite-temperature Lifshitz theory for two identical parallel
//! plates: the Matsubara frequency sum, per-frequency integrals,
//! pressure and free energy per unit area, and the sphere-plate
//! proximity-force approximation.
//!
//! At temperature T the fluctuation spectrum collapses onto the
//! imaginary frequencies ξ_n = 2πn k_B T/ħ, with the n = 0 term
//! entering at half weight. Each term is an integral over transverse
//! wave numbers; in the variable y = 2dκ₀ (κ₀ the vacuum decay
//! constant) the pressure and free energy per unit area read
//!
//! ```text
//! P = −(k_B T)/(8π d³) Σ'_n Σ_α ∫_{y_n}^∞ y² ρ_α e^{−y}/(1 − ρ_α e^{−y}) dy
//! F = +(k_B T)/(8π d²) Σ'_n Σ_α ∫_{y_n}^∞ y  ln(1 − ρ_α e^{−y}) dy
//! ```
//!
//! with y_n = 2dξ_n/c, ρ_α the squared reflectivity of polarization α,
//! and the prime marking the ½ weight at n = 0. Negative pressure is
//! attraction. The n = 0 TE reflectivity is not a limit but a choice,
//! the [`Prescription`]; everything controversial about the thermal
//! Casimir force between real metals is concentrated in that single
//! factor, which shifts the classical-limit pressure by a factor of 2.
//!
//! T = 0 is served by [`pressure_t0`], where the sum becomes an
//! integral over continuous ξ and the prescription becomes irrelevant
//! (the disputed point has measure zero).

use thiserror::Error;

use crate::constants::{C, HBAR, K_B};
use crate::dielectric::{DielectricError, DielectricModel};
pub use crate::fresnel::Prescription;
use crate::fresnel::{r2_pair, r2_zero_frequency, Mode};
use crate::quadrature::{integrate_decaying, QuadError, QuadSpec};

use std::cell::RefCell;
use std::f64::consts::PI;

/// Two identical plates separated by vacuum.
#[derive(Debug, Clone)]
pub struct PlateSystem {
    /// Gap, m.
    pub d: f64,
    /// Temperature, K. Zero is legal to carry but the frequency-sum
    /// entry points require T > 0; use [`pressure_t0`] at T = 0.
    pub temperature: f64,
    /// Material of both plates.
    pub model: DielectricModel,
    /// Treatment of the n = 0 TE term.
    pub prescription: Prescription,
}

impl PlateSystem {
    pub fn new(d: f64, temperature: f64, model: DielectricModel, prescription: Prescription) -> Self {
        assert!(d > 0.0 && d.is_finite(), "gap must be positive and finite");
        assert!(
            temperature >= 0.0 && temperature.is_finite(),
            "temperature must be finite and >= 0"
        );
        PlateSystem {
            d,
            temperature,
            model,
            prescription,
        }
    }
}

/// Truncation and tolerance policy for the frequency sum.
#[derive(Debug, Clone)]
pub struct SumConfig {
    /// Stop once two consecutive terms fall below this fraction of the
    /// running sum. Must lie in (0, 10⁻⁴].
    pub term_rel_tol: f64,
    /// Hard cap on the Matsubara index; ≥ 10.
    pub max_terms: usize,
    /// Settings for the per-term wave-number integrals.
    pub quad: QuadSpec,
}

impl Default for SumConfig {
    fn default() -> Self {
        SumConfig {
            term_rel_tol: 1e-8,
            max_terms: 20_000,
            quad: QuadSpec::default(),
        }
    }
}

impl SumConfig {
    fn assert_valid(&self) {
        assert!(
            self.term_rel_tol > 0.0 && self.term_rel_tol <= 1e-4,
            "term_rel_tol must be in (0, 1e-4], got {:e}",
            self.term_rel_tol
        );
        assert!(self.max_terms >= 10, "max_terms must be >= 10");
    }
}

/// One row of the frequency-sum ledger: pressure contributions in Pa,
/// by polarization. The n = 0 row already carries its ½ weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermEntry {
    pub n: usize,
    /// ξ_n, rad/s.
    pub xi: f64,
    pub te: f64,
    pub tm: f64,
}

/// Converged (or partial, inside [`LifshitzError::Truncated`]) output
/// of the frequency sum.
#[derive(Debug, Clone)]
pub struct ForceResult {
    /// Pa; negative means the plates attract.
    pub pressure: f64,
    /// J/m²; negative for any reflecting material.
    pub free_energy_area: f64,
    /// pressure / (−π²ħc/240d⁴), the reduction against the ideal T = 0
    /// plates. Dimensionless, positive for attraction.
    pub eta: f64,
    /// Per-frequency ledger, ascending n. Summing te + tm over the rows
    /// reproduces `pressure` exactly (same order, same arithmetic).
    pub terms: Vec<TermEntry>,
    /// Number of ledger rows, n = 0 included.
    pub n_used: usize,
    /// Estimated relative error: geometric tail of the truncated sum
    /// plus accumulated quadrature estimates.
    pub est_rel_err: f64,
}

#[derive(Debug, Error)]
pub enum LifshitzError {
    /// The dielectric model refused an evaluation. n is the Matsubara
    /// index; n = 0 also stands for the ξ → 0 edge of the T = 0
    /// integral.
    #[error("dielectric model unusable at Matsubara index {n}: {source}")]
    Model {
        n: usize,
        #[source]
        source: DielectricError,
    },
    /// A wave-number integral did not converge. Carries the term index
    /// and polarization it belonged to.
    #[error("wave-number integral failed at n = {n} ({polarization:?}): {source}")]
    Quadrature {
        n: usize,
        polarization: Mode,
        #[source]
        source: QuadError,
    },
    /// The T = 0 frequency integral failed.
    #[error("T = 0 frequency integral failed: {source}")]
    T0Quadrature {
        #[source]
        source: QuadError,
    },
    /// max_terms exhausted before the stopping rule fired. The partial
    /// result, ledger included, is preserved.
    #[error(
        "frequency sum not converged after {max_terms} terms \
         (est_rel_err {est_rel_err:e}); partial result retained"
    )]
    Truncated {
        partial: Box<ForceResult>,
        max_terms: usize,
        est_rel_err: f64,
    },
}

/// ξ_n = 2πn k_B T/ħ in rad/s. Linear in both n and T, so equal n·T
/// products give bitwise-equal frequencies.
pub fn matsubara_xi(n: usize, temperature: f64) -> f64 {
    assert!(
        temperature > 0.0 && temperature.is_finite(),
        "Matsubara frequencies need T > 0"
    );
    (n as f64 * temperature) * (2.0 * PI * K_B / HBAR)
}

/// Integrands of the two wave-number integrals, parameterized by the
/// squared reflectivity ρ(y).
fn pressure_integrand<R: Fn(f64) -> f64>(rho: R) -> impl Fn(f64) -> f64 {
    move |y| {
        let r2 = rho(y);
        let e = (-y).exp();
        y * y * r2 * e / (1.0 - r2 * e)
    }
}

fn free_energy_integrand<R: Fn(f64) -> f64>(rho: R) -> impl Fn(f64) -> f64 {
    move |y| {
        let r2 = rho(y);
        let e = (-y).exp();
        // ln_1p keeps full relative precision deep in the tail, where
        // 1 - r2 e^{-y} rounds to 1 and a bare ln would return noise.
        y * (-(r2 * e)).ln_1p()
    }
}

/// Everything one Matsubara term produces: pressure and free-energy
/// contributions per polarization, plus the quadrature error budget
/// spent on them (pressure units and free-energy units respectively).
struct TermParts {
    p_te: f64,
    p_tm: f64,
    f_te: f64,
    f_tm: f64,
    qerr_p: f64,
    qerr_f: f64,
}

fn integrate_term<R: Fn(f64) -> f64 + Copy>(
    rho: R,
    y_n: f64,
    p_coef: f64,
    f_coef: f64,
    quad: QuadSpec,
    n: usize,
    polarization: Mode,
) -> Result<(f64, f64, f64, f64), LifshitzError> {
    let wrap = |source: QuadError| LifshitzError::Quadrature {
        n,
        polarization,
        source,
    };
    let (ip, ep) = integrate_decaying(pressure_integrand(rho), y_n, quad).map_err(wrap)?;
    let (iff, ef) = integrate_decaying(free_energy_integrand(rho), y_n, quad).map_err(wrap)?;
    Ok((
        p_coef * ip,
        f_coef * iff,
        p_coef.abs() * ep,
        f_coef.abs() * ef,
    ))
}

/// The n ≥ 1 term. ε(iξ_n) is evaluated once out here; inside the
/// integrand only pure arithmetic remains. γ₀ equals κ₀ = y/2d by
/// construction, and γ₁ is built from the exact identity
/// γ₁² = κ₀² + (ξ²ε − ξ²)/c², which keeps ε = 1 reflectionless to the
/// last bit and never produces a negative radicand.
fn term_parts(system: &PlateSystem, n: usize, cfg: &SumConfig) -> Result<TermParts, LifshitzError> {
    let d = system.d;
    let xi = matsubara_xi(n, system.temperature);
    let y_n = 2.0 * d * xi / C;

    let eps = system
        .model
        .eval_eps(xi)
        .map_err(|source| LifshitzError::Model { n, source })?;
    let x2e = system.model.eval_xi2_eps(xi);
    let xi2 = xi * xi;
    let inv_2d = 1.0 / (2.0 * d);

    let rho_of = |mode: Mode| {
        move |y: f64| {
            let gamma0 = y * inv_2d;
            let gamma1 = if x2e.is_infinite() {
                f64::INFINITY
            } else {
                (gamma0 * gamma0 + (x2e - xi2).max(0.0) / (C * C)).sqrt()
            };
            let (te, tm) = r2_pair(gamma0, gamma1, eps);
            match mode {
                Mode::TE => te,
                Mode::TM => tm,
            }
        }
    };

    let p_coef = -K_B * system.temperature / (8.0 * PI * d * d * d);
    let f_coef = K_B * system.temperature / (8.0 * PI * d * d);

    let (p_te, f_te, qp1, qf1) =
        integrate_term(rho_of(Mode::TE), y_n, p_coef, f_coef, cfg.quad, n, Mode::TE)?;
    let (p_tm, f_tm, qp2, qf2) =
        integrate_term(rho_of(Mode::TM), y_n, p_coef, f_coef, cfg.quad, n, Mode::TM)?;

    Ok(TermParts {
        p_te,
        p_tm,
        f_te,
        f_tm,
        qerr_p: qp1 + qp2,
        qerr_f: qf1 + qf2,
    })
}

/// The ½-weighted n = 0 term. At ξ = 0 the wave number y/2d is q
/// itself, and the reflectivity comes from the prescription.
fn zero_parts(system: &PlateSystem, cfg: &SumConfig) -> Result<TermParts, LifshitzError> {
    assert!(
        system.temperature > 0.0,
        "the n = 0 term exists only at T > 0"
    );
    let d = system.d;
    let inv_2d = 1.0 / (2.0 * d);
    let model = &system.model;
    let prescription = system.prescription;

    let rho_of = |mode: Mode| move |y: f64| r2_zero_frequency(mode, y * inv_2d, model, prescription);

    // Half weight folded into the coefficients.
    let p_coef = -K_B * system.temperature / (16.0 * PI * d * d * d);
    let f_coef = K_B * system.temperature / (16.0 * PI * d * d);

    let (p_te, f_te, qp1, qf1) =
        integrate_term(rho_of(Mode::TE), 0.0, p_coef, f_coef, cfg.quad, 0, Mode::TE)?;
    let (p_tm, f_tm, qp2, qf2) =
        integrate_term(rho_of(Mode::TM), 0.0, p_coef, f_coef, cfg.quad, 0, Mode::TM)?;

    Ok(TermParts {
        p_te,
        p_tm,
        f_te,
        f_tm,
        qerr_p: qp1 + qp2,
        qerr_f: qf1 + qf2,
    })
}

/// Pressure contributions (TE, TM) of the Matsubara term n ≥ 1, in Pa.
/// Both are ≤ 0, bounded in magnitude by the ideal-metal value of the
/// same integral.
pub fn term_integrals(
    system: &PlateSystem,
    n: usize,
    cfg: &SumConfig,
) -> Result<(f64, f64), LifshitzError> {
    assert!(n >= 1, "n = 0 is served by zero_term");
    let parts = term_parts(system, n, cfg)?;
    Ok((parts.p_te, parts.p_tm))
}

/// Pressure contributions (TE, TM) of the n = 0 term, ½ weight already
/// applied, in Pa. This is where the two prescriptions diverge: for a
/// Drude metal the TE entry is exactly 0 under `PointwiseLimit` and
/// equals the TM entry under `IdealTEZero`.
pub fn zero_term(system: &PlateSystem, cfg: &SumConfig) -> Result<(f64, f64), LifshitzError> {
    let parts = zero_parts(system, cfg)?;
    Ok((parts.p_te, parts.p_tm))
}

/// Geometric tail bound for a truncated series from the trailing term
/// magnitudes: ratio from the last few consecutive pairs, clamped away
/// from 1, then m_last · ρ/(1 − ρ).
fn geometric_tail(mags: &[f64]) -> f64 {
    let last = match mags.last() {
        Some(&m) if m > 0.0 => m,
        _ => return 0.0,
    };
    let mut rho: f64 = 0.0;
    let mut pairs = 0;
    for w in mags.windows(2).rev().take(3) {
        if w[0] > 0.0 {
            rho = rho.max(w[1] / w[0]);
            pairs += 1;
        }
    }
    if pairs == 0 {
        // No ratio information; count one more term's worth.
        return last;
    }
    let rho = rho.clamp(0.0, 0.999);
    last * rho / (1.0 - rho)
}

fn rel_or_zero(abs_err: f64, total: f64) -> f64 {
    if total == 0.0 {
        0.0
    } else {
        abs_err / total.abs()
    }
}

/// Ideal-plate zero-temperature pressure, the denominator of eta.
fn ideal_t0_pressure(d: f64) -> f64 {
    -PI * PI * HBAR * C / (240.0 * d * d * d * d)
}

/// Run the full frequency sum, producing pressure, free energy, and
/// the per-term ledger in one pass.
fn engine(system: &PlateSystem, cfg: &SumConfig) -> Result<ForceResult, LifshitzError> {
    cfg.assert_valid();
    assert!(
        system.temperature > 0.0,
        "frequency sum needs T > 0; use pressure_t0 at T = 0"
    );

    let mut terms: Vec<TermEntry> = Vec::new();
    let mut f_terms: Vec<f64> = Vec::new();
    let mut qerr_p = 0.0;
    let mut qerr_f = 0.0;

    let zero = zero_parts(system, cfg)?;
    terms.push(TermEntry {
        n: 0,
        xi: 0.0,
        te: zero.p_te,
        tm: zero.p_tm,
    });
    f_terms.push(zero.f_te + zero.f_tm);
    qerr_p += zero.qerr_p;
    qerr_f += zero.qerr_f;

    let mut p_partial = zero.p_te + zero.p_tm;
    let mut f_partial = f_terms[0];
    // Trailing |term| magnitudes of the n >= 1 terms, for the tail bound.
    let mut p_mags: Vec<f64> = Vec::new();
    let mut f_mags: Vec<f64> = Vec::new();

    let mut below = 0;
    let mut converged = false;
    for n in 1..=cfg.max_terms {
        let t = term_parts(system, n, cfg)?;
        let p_term = t.p_te + t.p_tm;
        let f_term = t.f_te + t.f_tm;
        terms.push(TermEntry {
            n,
            xi: matsubara_xi(n, system.temperature),
            te: t.p_te,
            tm: t.p_tm,
        });
        f_terms.push(f_term);
        p_mags.push(p_term.abs());
        f_mags.push(f_term.abs());
        p_partial += p_term;
        f_partial += f_term;
        qerr_p += t.qerr_p;
        qerr_f += t.qerr_f;

        let p_small = p_term.abs() <= cfg.term_rel_tol * p_partial.abs();
        let f_small = f_term.abs() <= cfg.term_rel_tol * f_partial.abs();
        if p_small && f_small {
            below += 1;
            if below >= 2 {
                converged = true;
                break;
            }
        } else {
            below = 0;
        }
    }

    // Deterministic reduction: ledger order, ascending n.
    let pressure: f64 = terms.iter().map(|t| t.te + t.tm).sum();
    let free_energy_area: f64 = f_terms.iter().sum();

    let est_p = rel_or_zero(geometric_tail(&p_mags) + qerr_p, pressure);
    let est_f = rel_or_zero(geometric_tail(&f_mags) + qerr_f, free_energy_area);
    let est_rel_err = est_p.max(est_f);

    let n_used = terms.len();
    let result = ForceResult {
        pressure,
        free_energy_area,
        eta: pressure / ideal_t0_pressure(system.d),
        terms,
        n_used,
        est_rel_err,
    };

    if !converged {
        return Err(LifshitzError::Truncated {
            partial: Box::new(result),
            max_terms: cfg.max_terms,
            est_rel_err,
        });
    }
    Ok(result)
}

/// Casimir pressure between the plates at T > 0, with ledger.
pub fn pressure(system: &PlateSystem, cfg: &SumConfig) -> Result<ForceResult, LifshitzError> {
    engine(system, cfg)
}

/// Free energy per unit area at T > 0, J/m². Negative for any
/// reflecting material; −∂F/∂d recovers the pressure.
pub fn free_energy(system: &PlateSystem, cfg: &SumConfig) -> Result<f64, LifshitzError> {
    engine(system, cfg).map(|r| r.free_energy_area)
}

/// Zero-temperature pressure, Pa: the Matsubara sum turned back into
/// an integral over continuous imaginary frequency,
///
/// ```text
/// P(T=0) = −(ħc/32π²d⁴) ∫₀^∞ du ∫_u^∞ y² Σ_α ρ_α e^{−y}/(1−ρ_α e^{−y}) dy
/// ```
///
/// with ξ = uc/2d. No prescription appears: the ξ = 0 edge has measure
/// zero. The outer tolerance is held two orders looser than the inner
/// one so the outer rule never chases inner quadrature noise.
pub fn pressure_t0(
    d: f64,
    model: &DielectricModel,
    cfg: &SumConfig,
) -> Result<f64, LifshitzError> {
    assert!(d > 0.0 && d.is_finite(), "gap must be positive and finite");
    cfg.assert_valid();

    // A table with no trusted low-frequency extrapolation cannot cover
    // the small-xi region the integral needs; refuse up front rather
    // than panic mid-integrand.
    if let DielectricModel::Tabulated(table) = model {
        if !table.extrapolates_low() {
            let source = model.eval_eps(0.5 * table.xi_min()).unwrap_err();
            return Err(LifshitzError::Model { n: 0, source });
        }
    }

    let inner_quad = cfg.quad;
    let mut outer_quad = cfg.quad;
    outer_quad.rel_tol = (cfg.quad.rel_tol * 100.0).min(1e-3);

    let inv_2d = 1.0 / (2.0 * d);
    let stash: RefCell<Option<LifshitzError>> = RefCell::new(None);

    let outer = |u: f64| {
        let xi = u * C * inv_2d;
        let eps = match model.eval_eps(xi) {
            Ok(e) => e,
            Err(source) => {
                stash
                    .borrow_mut()
                    .get_or_insert(LifshitzError::Model { n: 0, source });
                return 0.0;
            }
        };
        let x2e = model.eval_xi2_eps(xi);
        let xi2 = xi * xi;
        let inner = |y: f64| {
            let gamma0 = y * inv_2d;
            let gamma1 = if x2e.is_infinite() {
                f64::INFINITY
            } else {
                (gamma0 * gamma0 + (x2e - xi2).max(0.0) / (C * C)).sqrt()
            };
            let (te, tm) = r2_pair(gamma0, gamma1, eps);
            let e = (-y).exp();
            y * y * (te * e / (1.0 - te * e) + tm * e / (1.0 - tm * e))
        };
        match integrate_decaying(inner, u, inner_quad) {
            Ok((v, _)) => v,
            Err(source) => {
                stash
                    .borrow_mut()
                    .get_or_insert(LifshitzError::T0Quadrature { source });
                0.0
            }
        }
    };

    let (integral, _) = integrate_decaying(outer, 0.0, outer_quad)
        .map_err(|source| LifshitzError::T0Quadrature { source })?;
    if let Some(err) = stash.into_inner() {
        return Err(err);
    }
    Ok(-HBAR * C / (32.0 * PI * PI * d * d * d * d) * integral)
}

/// Sphere-plate force by the proximity-force approximation,
/// F = 2πR·F_plate(d), in N. Valid only for R ≫ d; callers should warn
/// when R < 100·d (the CLI does).
pub fn pfa_sphere_plate(
    radius: f64,
    system: &PlateSystem,
    cfg: &SumConfig,
) -> Result<f64, LifshitzError> {
    assert!(
        radius > 0.0 && radius.is_finite(),
        "sphere radius must be positive and finite"
    );
    Ok(2.0 * PI * radius * free_energy(system, cfg)?)
}
