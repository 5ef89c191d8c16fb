//! Flag-value parsing: angular frequencies with eV or rad/s units,
//! material model resolution, prescription sets, and distance grids.

use std::fs::File;
use std::io::BufReader;

use casimir_core::constants::{E_CHARGE, HBAR};
use casimir_core::dielectric::load_tabulated;
use casimir_core::{DielectricModel, Prescription};

/// "9.0eV", "1.37e16rad/s", or a bare number taken as rad/s.
pub fn parse_angular_frequency(raw: &str) -> Result<f64, String> {
    let s = raw.trim();
    let (number, to_rad_s) = if let Some(v) = s.strip_suffix("rad/s") {
        (v, 1.0)
    } else if let Some(v) = s.strip_suffix("eV") {
        (v, E_CHARGE / HBAR)
    } else {
        (s, 1.0)
    };
    let value: f64 = number
        .trim()
        .parse()
        .map_err(|_| format!("cannot parse frequency {raw:?} (use e.g. 9.0eV or 1.37e16rad/s)"))?;
    if !(value > 0.0 && value.is_finite()) {
        return Err(format!("frequency must be positive and finite, got {raw:?}"));
    }
    Ok(value * to_rad_s)
}

/// Resolve --model together with --omega-p / --gamma-d. `table:PATH`
/// loads two-column (xi, eps) data.
pub fn resolve_model(
    model: &str,
    omega_p: &str,
    gamma_d: &str,
) -> Result<(DielectricModel, &'static str), String> {
    match model {
        "ideal" => Ok((DielectricModel::IdealMetal, "ideal")),
        "plasma" => {
            let wp = parse_angular_frequency(omega_p)?;
            let m = DielectricModel::plasma(wp).map_err(|e| e.to_string())?;
            Ok((m, "plasma"))
        }
        "drude" => {
            let wp = parse_angular_frequency(omega_p)?;
            let gd = parse_angular_frequency(gamma_d)?;
            let m = DielectricModel::drude(wp, gd).map_err(|e| e.to_string())?;
            Ok((m, "drude"))
        }
        other => {
            if let Some(path) = other.strip_prefix("table:") {
                let file = File::open(path).map_err(|e| format!("cannot open {path}: {e}"))?;
                let model =
                    load_tabulated(BufReader::new(file)).map_err(|e| format!("{path}: {e}"))?;
                Ok((model, "table"))
            } else {
                Err(format!(
                    "unknown model {other:?} (expected ideal, plasma, drude, or table:PATH)"
                ))
            }
        }
    }
}

pub fn prescription_name(p: Prescription) -> &'static str {
    match p {
        Prescription::PointwiseLimit => "pointwise",
        Prescription::IdealTEZero => "ideal-te0",
    }
}

/// --prescription {pointwise|ideal-te0|both}, in fixed output order.
pub fn resolve_prescriptions(raw: &str) -> Result<Vec<Prescription>, String> {
    match raw {
        "pointwise" => Ok(vec![Prescription::PointwiseLimit]),
        "ideal-te0" => Ok(vec![Prescription::IdealTEZero]),
        "both" => Ok(vec![Prescription::PointwiseLimit, Prescription::IdealTEZero]),
        other => Err(format!(
            "unknown prescription {other:?} (expected pointwise, ideal-te0, or both)"
        )),
    }
}

/// Distance grid, ascending. Sweep-style callers require at least two
/// distinct endpoints; pfa also accepts a single point with
/// dmin == dmax.
pub fn build_grid(
    dmin: f64,
    dmax: f64,
    points: usize,
    log_spacing: bool,
    allow_single: bool,
) -> Result<Vec<f64>, String> {
    if !(dmin > 0.0 && dmin.is_finite() && dmax.is_finite()) {
        return Err(format!("distances must be positive and finite, got [{dmin:e}, {dmax:e}]"));
    }
    if allow_single && points == 1 {
        if dmin != dmax {
            return Err("a single-point grid needs --dmin equal to --dmax".into());
        }
        return Ok(vec![dmin]);
    }
    if !(dmin < dmax) {
        return Err(format!("--dmin must be below --dmax, got [{dmin:e}, {dmax:e}]"));
    }
    if points < 2 {
        return Err(format!("--points must be at least 2, got {points}"));
    }
    let n = (points - 1) as f64;
    let grid = (0..points)
        .map(|i| {
            let t = i as f64 / n;
            if log_spacing {
                dmin * (dmax / dmin).powf(t)
            } else {
                dmin + t * (dmax - dmin)
            }
        })
        .collect();
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn electronvolts_convert() {
        // 9.0 eV is the conventional gold plasma frequency.
        let wp = parse_angular_frequency("9.0eV").unwrap();
        assert!((wp - 1.3673e16).abs() / wp < 1e-4, "got {wp:e}");
        let gd = parse_angular_frequency("0.035eV").unwrap();
        assert!((gd - 5.317e13).abs() / gd < 1e-4, "got {gd:e}");
    }

    #[test]
    fn explicit_and_bare_rad_s_agree() {
        assert_eq!(
            parse_angular_frequency("1.37e16rad/s").unwrap(),
            parse_angular_frequency("1.37e16").unwrap()
        );
    }

    #[test]
    fn garbage_units_rejected() {
        assert!(parse_angular_frequency("9.0THz").is_err());
        assert!(parse_angular_frequency("-3eV").is_err());
        assert!(parse_angular_frequency("").is_err());
    }

    #[test]
    fn grid_is_ascending_and_hits_endpoints() {
        let g = build_grid(1e-7, 5e-6, 50, true, false).unwrap();
        assert_eq!(g.len(), 50);
        assert_eq!(g[0], 1e-7);
        assert!((g[49] - 5e-6).abs() / 5e-6 < 1e-12);
        for w in g.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn degenerate_grid_rejected() {
        assert!(build_grid(1e-6, 1e-6, 2, true, false).is_err());
        assert!(build_grid(5e-6, 1e-7, 10, true, false).is_err());
        assert!(build_grid(1e-6, 1e-6, 1, true, true).is_ok());
    }

    #[test]
    fn model_names_resolve() {
        assert_eq!(resolve_model("ideal", "9.0eV", "0.035eV").unwrap().1, "ideal");
        assert_eq!(resolve_model("drude", "9.0eV", "0.035eV").unwrap().1, "drude");
        assert!(resolve_model("unobtainium", "9.0eV", "0.035eV").is_err());
    }
}
