//! Dielectric permittivity ε(iξ) on the imaginary frequency axis.
//!
//! Lifshitz theory samples the material response at imaginary
//! frequencies ω = iξ, where the permittivity of a causal passive
//! medium is real, ≥ 1, and falls monotonically toward 1 as ξ grows.
//! Four models are supported:
//!
//! * [`DielectricModel::IdealMetal`] — perfect reflector, ε infinite at
//!   every frequency.
//! * [`DielectricModel::Plasma`] — dissipationless metal,
//!   ε(iξ) = 1 + ω_p²/ξ².
//! * [`DielectricModel::Drude`] — metal with relaxation,
//!   ε(iξ) = 1 + ω_p²/(ξ(ξ + γ_d)).
//! * [`DielectricModel::Tabulated`] — sampled ε(iξ_k) data with log-log
//!   linear interpolation.
//!
//! The quantity separating the metallic models at zero frequency is the
//! product ξ²ε(iξ): it tends to ω_p² for the plasma model but to 0 for
//! the Drude model, while the bare permittivity diverges for both.
//! [`DielectricModel::eval_xi2_eps`] evaluates that product without the
//! 0·∞ ambiguity, and it is what the evanescent wave numbers are built
//! from at small ξ.
//!
//! Tabulated data are extrapolated below their lowest knot with a
//! Drude-like A/ξ + B law fitted through the two lowest points; above
//! the highest knot, ε = 1 (transparency). If the fitted A is not
//! positive the table has no metallic low-frequency behaviour and
//! below-range queries are refused.

use std::io::BufRead;

use thiserror::Error;

/// Permittivity at a single imaginary frequency. The ideal metal (and
/// any metallic model at ξ = 0) is a distinguished [`Permittivity::Infinite`]
/// rather than a huge float, so reflection limits downstream are exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Permittivity {
    Finite(f64),
    Infinite,
}

impl Permittivity {
    pub fn is_infinite(self) -> bool {
        matches!(self, Permittivity::Infinite)
    }

    /// The finite value, or `None` for [`Permittivity::Infinite`].
    pub fn finite(self) -> Option<f64> {
        match self {
            Permittivity::Finite(v) => Some(v),
            Permittivity::Infinite => None,
        }
    }
}

/// Zero-frequency behaviour of ε(iξ), used by the reflection limits.
/// Metallic models diverge; a tabulated model whose low-frequency fit
/// is not metallic (A ≤ 0) tends to the finite intercept B.
#[derive(Debug, Clone, Copy)]
pub(crate) enum ZeroFreqEps {
    Divergent,
    Finite(f64),
}

#[derive(Debug, Error)]
pub enum DielectricError {
    #[error("invalid model parameter: {0}")]
    InvalidParameter(String),
    #[error("table line {line}: {reason}")]
    Format { line: usize, reason: String },
    #[error(
        "tabulated model queried at xi = {xi:e} rad/s below xi_min = {xi_min:e} rad/s, \
         but the low-frequency fit A/xi + B has A = {a:e} <= 0 (not metallic); \
         no trusted extrapolation"
    )]
    Extrapolation { xi: f64, xi_min: f64, a: f64 },
}

/// Material model for two identical plates, evaluated at imaginary
/// frequency. Frequencies are rad/s throughout.
#[derive(Debug, Clone)]
pub enum DielectricModel {
    /// Perfect reflector: ε = ∞, r_TE² = r_TM² = 1 at all frequencies.
    IdealMetal,
    /// ε(iξ) = 1 + ω_p²/ξ². Zero-frequency product ξ²ε → ω_p².
    Plasma { omega_p: f64 },
    /// ε(iξ) = 1 + ω_p²/(ξ(ξ + γ_d)). Zero-frequency product ξ²ε → 0:
    /// relaxation removes the TE zero mode in the pointwise limit.
    Drude { omega_p: f64, gamma_d: f64 },
    /// Sampled ε(iξ_k), log-log interpolated. See [`DielectricTable`].
    Tabulated(DielectricTable),
}

impl DielectricModel {
    /// Plasma model with ω_p > 0 rad/s.
    pub fn plasma(omega_p: f64) -> Result<Self, DielectricError> {
        if !(omega_p > 0.0) || !omega_p.is_finite() {
            return Err(DielectricError::InvalidParameter(format!(
                "plasma frequency must be positive and finite, got {omega_p:e}"
            )));
        }
        Ok(DielectricModel::Plasma { omega_p })
    }

    /// Drude model with ω_p > 0 and γ_d ≥ 0 rad/s.
    pub fn drude(omega_p: f64, gamma_d: f64) -> Result<Self, DielectricError> {
        if !(omega_p > 0.0) || !omega_p.is_finite() {
            return Err(DielectricError::InvalidParameter(format!(
                "plasma frequency must be positive and finite, got {omega_p:e}"
            )));
        }
        if !(gamma_d >= 0.0) || !gamma_d.is_finite() {
            return Err(DielectricError::InvalidParameter(format!(
                "relaxation frequency must be nonnegative and finite, got {gamma_d:e}"
            )));
        }
        Ok(DielectricModel::Drude { omega_p, gamma_d })
    }

    /// ε(iξ) at ξ ≥ 0 rad/s.
    ///
    /// Returns [`Permittivity::Infinite`] for the ideal metal at any ξ
    /// and for the metallic models at ξ = 0, where the pointwise value
    /// diverges; callers needing the ξ → 0 product ξ²ε must use
    /// [`DielectricModel::eval_xi2_eps`] instead.
    pub fn eval_eps(&self, xi: f64) -> Result<Permittivity, DielectricError> {
        assert!(xi >= 0.0 && xi.is_finite(), "xi must be finite and >= 0");
        match self {
            DielectricModel::IdealMetal => Ok(Permittivity::Infinite),
            DielectricModel::Plasma { omega_p } => {
                if xi == 0.0 {
                    Ok(Permittivity::Infinite)
                } else {
                    Ok(Permittivity::Finite(1.0 + (omega_p / xi) * (omega_p / xi)))
                }
            }
            DielectricModel::Drude { omega_p, gamma_d } => {
                if xi == 0.0 {
                    Ok(Permittivity::Infinite)
                } else {
                    Ok(Permittivity::Finite(
                        1.0 + omega_p * omega_p / (xi * (xi + gamma_d)),
                    ))
                }
            }
            DielectricModel::Tabulated(table) => table.eval(xi),
        }
    }

    /// The product ξ²·ε(iξ) in (rad/s)², continuous at ξ = 0.
    ///
    /// Total for every model: Drude and (valid) tabulated data give 0 at
    /// ξ = 0, the plasma model gives ω_p², and the ideal metal returns
    /// `f64::INFINITY`. For ξ > 0 and finite ε this equals
    /// ξ²·`eval_eps` exactly.
    pub fn eval_xi2_eps(&self, xi: f64) -> f64 {
        assert!(xi >= 0.0 && xi.is_finite(), "xi must be finite and >= 0");
        match self {
            DielectricModel::IdealMetal => f64::INFINITY,
            DielectricModel::Plasma { omega_p } => {
                if xi == 0.0 {
                    omega_p * omega_p
                } else {
                    xi * xi * (1.0 + (omega_p / xi) * (omega_p / xi))
                }
            }
            DielectricModel::Drude { omega_p, gamma_d } => {
                if xi == 0.0 {
                    0.0
                } else {
                    xi * xi * (1.0 + omega_p * omega_p / (xi * (xi + gamma_d)))
                }
            }
            DielectricModel::Tabulated(table) => table.xi2_eps(xi),
        }
    }

    /// Behaviour of ε(iξ) as ξ → 0, without evaluating at the
    /// divergence itself.
    pub(crate) fn zero_freq_eps(&self) -> ZeroFreqEps {
        match self {
            DielectricModel::IdealMetal
            | DielectricModel::Plasma { .. }
            | DielectricModel::Drude { .. } => ZeroFreqEps::Divergent,
            DielectricModel::Tabulated(table) => {
                if table.low_a > 0.0 {
                    ZeroFreqEps::Divergent
                } else {
                    ZeroFreqEps::Finite(table.low_b)
                }
            }
        }
    }
}

/// Tabulated ε(iξ_k) samples with log-log linear interpolation.
///
/// Knots must be strictly increasing in ξ with ξ_k > 0 and ε_k ≥ 1.
/// Below ξ_min the table extrapolates with the fitted A/ξ + B law
/// (metallic, requires A > 0); above ξ_max it returns ε = 1.
#[derive(Debug, Clone)]
pub struct DielectricTable {
    xi: Vec<f64>,
    eps: Vec<f64>,
    ln_xi: Vec<f64>,
    ln_eps: Vec<f64>,
    /// A of the A/ξ + B fit through the two lowest knots.
    low_a: f64,
    /// B of the same fit.
    low_b: f64,
}

impl DielectricTable {
    /// Build a table from (ξ_k, ε_k) pairs, validating the invariants.
    pub fn new(points: &[(f64, f64)]) -> Result<Self, DielectricError> {
        if points.len() < 2 {
            return Err(DielectricError::InvalidParameter(format!(
                "table needs at least 2 points, got {}",
                points.len()
            )));
        }
        let mut xi = Vec::with_capacity(points.len());
        let mut eps = Vec::with_capacity(points.len());
        for &(x, e) in points {
            if !(x > 0.0) || !x.is_finite() {
                return Err(DielectricError::InvalidParameter(format!(
                    "xi must be positive and finite, got {x:e}"
                )));
            }
            if !(e >= 1.0) || !e.is_finite() {
                return Err(DielectricError::InvalidParameter(format!(
                    "eps must be finite and >= 1, got {e:e}"
                )));
            }
            if let Some(&prev) = xi.last() {
                if x <= prev {
                    return Err(DielectricError::InvalidParameter(format!(
                        "xi must be strictly increasing ({x:e} after {prev:e})"
                    )));
                }
            }
            xi.push(x);
            eps.push(e);
        }
        let ln_xi: Vec<f64> = xi.iter().map(|v| v.ln()).collect();
        let ln_eps: Vec<f64> = eps.iter().map(|v| v.ln()).collect();
        // A/xi + B through the two lowest knots; A > 0 iff the table
        // rises toward low frequency (metallic).
        let low_a = (eps[0] - eps[1]) * xi[0] * xi[1] / (xi[1] - xi[0]);
        let low_b = eps[0] - low_a / xi[0];
        Ok(DielectricTable {
            xi,
            eps,
            ln_xi,
            ln_eps,
            low_a,
            low_b,
        })
    }

    /// Lowest tabulated frequency, rad/s.
    pub fn xi_min(&self) -> f64 {
        self.xi[0]
    }

    /// Highest tabulated frequency, rad/s.
    pub fn xi_max(&self) -> f64 {
        *self.xi.last().unwrap()
    }

    /// Whether below-range queries have a trusted (metallic, A > 0)
    /// extrapolation.
    pub fn extrapolates_low(&self) -> bool {
        self.low_a > 0.0
    }

    /// Log-log linear interpolation; `xi` must lie within the knot range.
    fn interp(&self, xi: f64) -> f64 {
        let j = match self.xi.binary_search_by(|v| v.partial_cmp(&xi).unwrap()) {
            Ok(k) => return self.eps[k],
            Err(k) => k,
        };
        let (lo, hi) = (j - 1, j);
        let t = (xi.ln() - self.ln_xi[lo]) / (self.ln_xi[hi] - self.ln_xi[lo]);
        (self.ln_eps[lo] + t * (self.ln_eps[hi] - self.ln_eps[lo])).exp()
    }

    fn eval(&self, xi: f64) -> Result<Permittivity, DielectricError> {
        if xi >= self.xi_min() {
            if xi > self.xi_max() {
                Ok(Permittivity::Finite(1.0))
            } else {
                Ok(Permittivity::Finite(self.interp(xi)))
            }
        } else if self.low_a > 0.0 {
            if xi == 0.0 {
                Ok(Permittivity::Infinite)
            } else {
                Ok(Permittivity::Finite(self.low_a / xi + self.low_b))
            }
        } else {
            Err(DielectricError::Extrapolation {
                xi,
                xi_min: self.xi_min(),
                a: self.low_a,
            })
        }
    }

    /// ξ²ε with the extrapolation law folded in; total on [0, ∞).
    fn xi2_eps(&self, xi: f64) -> f64 {
        if xi >= self.xi_min() {
            if xi > self.xi_max() {
                xi * xi
            } else {
                xi * xi * self.interp(xi)
            }
        } else {
            // xi^2 (A/xi + B) = A xi + B xi^2 -> 0 at xi = 0 for any
            // finite fit; clamped so an unphysical A < 0 cannot push a
            // squared wave number negative.
            (self.low_a * xi + self.low_b * xi * xi).max(0.0)
        }
    }
}

/// Parse a tabulated dielectric file: '#'-prefixed comments, each data
/// line "ξ ε" whitespace-separated, ξ ascending, at least two data
/// lines. Errors name the offending 1-based line number.
pub fn load_tabulated<R: BufRead>(reader: R) -> Result<DielectricModel, DielectricError> {
    let mut points: Vec<(f64, f64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| DielectricError::Format {
            line: lineno,
            reason: format!("read error: {e}"),
        })?;
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let mut fields = body.split_whitespace();
        let (xs, es) = match (fields.next(), fields.next(), fields.next()) {
            (Some(x), Some(e), None) => (x, e),
            _ => {
                return Err(DielectricError::Format {
                    line: lineno,
                    reason: format!("expected two fields \"xi eps\", got {body:?}"),
                })
            }
        };
        let x: f64 = xs.parse().map_err(|_| DielectricError::Format {
            line: lineno,
            reason: format!("cannot parse xi {xs:?}"),
        })?;
        let e: f64 = es.parse().map_err(|_| DielectricError::Format {
            line: lineno,
            reason: format!("cannot parse eps {es:?}"),
        })?;
        if !(x > 0.0) || !x.is_finite() {
            return Err(DielectricError::Format {
                line: lineno,
                reason: format!("xi must be positive and finite, got {x:e}"),
            });
        }
        if !(e >= 1.0) || !e.is_finite() {
            return Err(DielectricError::Format {
                line: lineno,
                reason: format!("eps must be finite and >= 1, got {e:e}"),
            });
        }
        if let Some(&(prev, _)) = points.last() {
            if x <= prev {
                return Err(DielectricError::Format {
                    line: lineno,
                    reason: format!("xi not ascending ({x:e} after {prev:e})"),
                });
            }
        }
        points.push((x, e));
    }
    if points.len() < 2 {
        return Err(DielectricError::Format {
            line: points.len() + 1,
            reason: format!("need at least 2 data lines, found {}", points.len()),
        });
    }
    Ok(DielectricModel::Tabulated(DielectricTable::new(&points)?))
}
