//! Numerical traces of the zero-frequency limit along the two
//! parametrizations that give contradictory answers for the TE
//! reflectivity of a Drude metal.
//!
//! Holding the transverse wave number q fixed while ξ → 0 sends the
//! material decay constant γ₁ = √(q² + ξ²ε/c²) back to the vacuum one,
//! because ξ²ε(iξ) → 0 whenever the conductivity is dissipative; the
//! TE reflection dies. Holding instead p = cγ₀/ξ fixed ties q to ξ, and
//! the same γ₁ diverges relative to γ₀ = ξp/c, driving the reflection
//! to the ideal-metal value. Both paths end at the same corner of the
//! (q, ξ) plane. A trace tabulates γ₀, γ₁, their difference and ratio,
//! and r_TE² down a geometric ξ ladder so the two behaviors can be
//! inspected as data instead of argued about.

use crate::constants::C;
use crate::dielectric::DielectricModel;

/// Which variable the ladder holds fixed on its way to ξ = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitPath {
    /// Transverse wave number held at q (rad/m); γ₀ → q.
    FixedQ { q: f64 },
    /// p = cγ₀/ξ held fixed (p ≥ 1); q = ξ√(p²−1)/c shrinks with ξ
    /// and γ₀ = ξp/c → 0.
    FixedP { p: f64 },
}

/// One ξ rung of the ladder. All wave numbers in rad/m.
#[derive(Debug, Clone, Copy)]
pub struct TraceRow {
    /// Imaginary frequency, rad/s.
    pub xi: f64,
    pub gamma0: f64,
    pub gamma1: f64,
    /// γ₁ − γ₀.
    pub diff: f64,
    /// γ₁/γ₀.
    pub ratio: f64,
    /// Squared TE reflectivity at this rung.
    pub rte2: f64,
}

/// The full descent: path, material, and rows in strictly decreasing ξ.
#[derive(Debug, Clone)]
pub struct LimitTrace {
    pub path: LimitPath,
    pub model: DielectricModel,
    pub rows: Vec<TraceRow>,
}

/// What the trace says about the TE zero mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitClass {
    /// r_TE² falls below 10⁻³ and keeps falling.
    TEVanishes,
    /// r_TE² climbs within 10⁻³ of the ideal-metal value 1.
    TEIdeal,
    /// Neither: the reflectivity settles on some intermediate value
    /// (plasma at fixed q) or is not monotone over the ladder.
    Indeterminate,
}

/// Walk ξ down a geometric ladder from `xi_start` over `decades`
/// decades, `per_decade` rungs each, recording the decay constants and
/// the TE reflectivity at every rung.
///
/// γ₁ is assembled from the ξ²ε product as
/// γ₁² = γ₀² + (ξ²ε − ξ²)/c², which is total for every model and makes
/// ε ≡ 1 give γ₁ = γ₀ bit for bit, so a vacuum trace shows ratio
/// exactly 1 and r_TE² exactly 0 on every row.
pub fn trace_limit(
    path: LimitPath,
    model: DielectricModel,
    xi_start: f64,
    decades: usize,
    per_decade: usize,
) -> LimitTrace {
    assert!(
        xi_start > 0.0 && xi_start.is_finite(),
        "xi_start must be positive and finite"
    );
    assert!(decades >= 3, "a limit trace needs at least 3 decades");
    assert!(per_decade >= 1, "per_decade must be >= 1");
    match path {
        LimitPath::FixedQ { q } => {
            assert!(q > 0.0 && q.is_finite(), "q must be positive and finite")
        }
        LimitPath::FixedP { p } => {
            assert!(p >= 1.0 && p.is_finite(), "p must be >= 1 and finite")
        }
    }

    let steps = decades * per_decade;
    let mut rows = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        let xi = xi_start * 10f64.powf(-(k as f64) / (per_decade as f64));
        let q = match path {
            LimitPath::FixedQ { q } => q,
            LimitPath::FixedP { p } => xi * (p * p - 1.0).sqrt() / C,
        };
        let gamma0 = (q * q + (xi * xi) / (C * C)).sqrt();
        let x2e = model.eval_xi2_eps(xi);
        let gamma1 = if x2e.is_infinite() {
            f64::INFINITY
        } else {
            (gamma0 * gamma0 + (x2e - xi * xi).max(0.0) / (C * C)).sqrt()
        };
        let rte2 = if gamma1.is_infinite() {
            1.0
        } else {
            let r = (gamma0 - gamma1) / (gamma0 + gamma1);
            r * r
        };
        rows.push(TraceRow {
            xi,
            gamma0,
            gamma1,
            diff: gamma1 - gamma0,
            ratio: gamma1 / gamma0,
            rte2,
        });
    }
    LimitTrace { path, model, rows }
}

/// Reduce a trace to the dispute's two possible outcomes, or admit
/// neither fits. The thresholds (10⁻³ off the endpoints, monotone
/// approach) are heuristics sized to be decisive over ladders of three
/// or more decades with metallic parameters, not statements of physics.
pub fn classify_limit(trace: &LimitTrace) -> LimitClass {
    let rows = &trace.rows;
    assert!(rows.len() >= 2, "classification needs a populated trace");
    let span = rows.first().unwrap().xi / rows.last().unwrap().xi;
    assert!(
        span >= 0.999e3,
        "classification needs at least 3 decades of descent, got span {span:e}"
    );

    let nonincreasing = rows.windows(2).all(|w| w[1].rte2 <= w[0].rte2);
    let nondecreasing = rows.windows(2).all(|w| w[1].rte2 >= w[0].rte2);
    let last = rows.last().unwrap().rte2;

    if last < 1e-3 && nonincreasing {
        LimitClass::TEVanishes
    } else if 1.0 - last < 1e-3 && nondecreasing {
        LimitClass::TEIdeal
    } else {
        LimitClass::Indeterminate
    }
}
