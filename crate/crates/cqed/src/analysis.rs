//! Regime metrics, coupling bounds, spectral sweeps, and vacuum
//! observables: the quantities plotted against coupling strength.

use crate::models::{self, RabiParams};
use crate::opcore::{
    EigenSystem, OpKind, Operator, eig_hermitian, elementary_operator,
};
use crate::{CqedError, Result};

/// Fine-structure constant.
pub const ALPHA_FS: f64 = 1.0 / 137.035999;

/// Energy gap below which two eigenstates are treated as one degenerate
/// ground subspace.
pub const DEGENERACY_GAP: f64 = 1e-8;

/// Coupling-regime label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Weak,
    Strong,
    UltraStrong,
    DeepStrong,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::Weak => "weak",
            Classification::Strong => "strong",
            Classification::UltraStrong => "USC",
            Classification::DeepStrong => "deep-strong",
        };
        f.write_str(s)
    }
}

/// Dimensionless coupling metrics and the regime they imply.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegimeMetrics {
    /// Normalized coupling zeta = 4 Omega_R^2 / (omega_c omega_eg).
    pub zeta: f64,
    /// Cooperativity C = 4 Omega_R^2 / (gamma kappa).
    pub cooperativity: f64,
    pub classification: Classification,
}

/// Evaluate the regime metrics. Thresholds: strong for C > 1, ultrastrong
/// for zeta >= 0.04, deep-strong for Omega_R above both bare frequencies.
pub fn regime_metrics(
    omega_c: f64,
    omega_eg: f64,
    omega_r: f64,
    gamma: f64,
    kappa: f64,
) -> Result<RegimeMetrics> {
    for (name, v) in [
        ("omega_c", omega_c),
        ("omega_eg", omega_eg),
        ("gamma", gamma),
        ("kappa", kappa),
    ] {
        if v <= 0.0 {
            return Err(CqedError::InvalidParameter {
                name: name.into(),
                detail: format!("must be positive, got {v}"),
            });
        }
    }
    if omega_r < 0.0 {
        return Err(CqedError::InvalidParameter {
            name: "omega_r".into(),
            detail: format!("must be nonnegative, got {omega_r}"),
        });
    }
    let zeta = 4.0 * omega_r * omega_r / (omega_c * omega_eg);
    let cooperativity = 4.0 * omega_r * omega_r / (gamma * kappa);
    let classification = if omega_r > omega_c.max(omega_eg) {
        Classification::DeepStrong
    } else if zeta >= 0.04 {
        Classification::UltraStrong
    } else if cooperativity > 1.0 {
        Classification::Strong
    } else {
        Classification::Weak
    };
    Ok(RegimeMetrics {
        zeta,
        cooperativity,
        classification,
    })
}

/// Upper bound on the normalized coupling of a single hydrogenoid atom:
/// alpha^(3/2) / (ell pi sqrt(V)), with V in half-wavelength-cube units.
/// `impedance` optionally rescales alpha by (Z/Z0)^exponent.
pub fn single_atom_coupling_bound(
    ell: u32,
    v: f64,
    impedance: Option<(f64, f64, i32)>,
) -> Result<f64> {
    if ell < 1 {
        return Err(CqedError::InvalidParameter {
            name: "ell".into(),
            detail: "principal quantum number must be >= 1".into(),
        });
    }
    if v <= 0.0 {
        return Err(CqedError::InvalidParameter {
            name: "v".into(),
            detail: format!("cavity volume must be positive, got {v}"),
        });
    }
    let mut alpha = ALPHA_FS;
    if let Some((z, z0, exponent)) = impedance {
        if z <= 0.0 || z0 <= 0.0 {
            return Err(CqedError::InvalidParameter {
                name: "impedance".into(),
                detail: format!("impedances must be positive, got Z={z}, Z0={z0}"),
            });
        }
        alpha *= (z / z0).powi(exponent);
    }
    Ok(alpha.powf(1.5) / (ell as f64 * std::f64::consts::PI * v.sqrt()))
}

/// Largest excitation number for which the rotating-wave approximation
/// holds: n_max = (omega_c + omega_eg)^2 / Omega_R^2.
pub fn rwa_boundary(omega_c: f64, omega_eg: f64, omega_r: f64) -> Result<f64> {
    if omega_r <= 0.0 {
        return Err(CqedError::InvalidParameter {
            name: "omega_r".into(),
            detail: "zero coupling: the RWA validity region is unbounded".into(),
        });
    }
    let s = omega_c + omega_eg;
    Ok(s * s / (omega_r * omega_r))
}

/// Tabulated eigenvalue (or observable) rows over a swept axis.
#[derive(Clone, Debug)]
pub struct SweepResult {
    pub axis_name: String,
    pub axis: Vec<f64>,
    /// One row per axis point, constant column count.
    pub rows: Vec<Vec<f64>>,
    pub metadata: Vec<(String, String)>,
}

/// Diagonalize a builder over a coupling grid and keep the `k_levels`
/// lowest eigenvalues per point. Failed points are recorded and reported
/// together after the sweep finishes.
pub fn spectrum_sweep<F>(
    axis_name: &str,
    grid: &[f64],
    k_levels: usize,
    mut build: F,
) -> Result<SweepResult>
where
    F: FnMut(f64) -> Result<Operator>,
{
    let mut rows = Vec::with_capacity(grid.len());
    let mut failures: Vec<String> = Vec::new();
    for &x in grid {
        match build(x).and_then(|h| eig_hermitian(&h)) {
            Ok(es) => {
                if es.values.len() < k_levels {
                    failures.push(format!("{axis_name}={x}: only {} levels", es.values.len()));
                    rows.push(vec![f64::NAN; k_levels]);
                } else {
                    rows.push(es.values.iter().take(k_levels).copied().collect());
                }
            }
            Err(e) => {
                failures.push(format!("{axis_name}={x}: {e}"));
                rows.push(vec![f64::NAN; k_levels]);
            }
        }
    }
    if !failures.is_empty() {
        return Err(CqedError::Convergence(format!(
            "{} of {} sweep points failed: {}",
            failures.len(),
            grid.len(),
            failures.join("; ")
        )));
    }
    Ok(SweepResult {
        axis_name: axis_name.to_string(),
        axis: grid.to_vec(),
        rows,
        metadata: Vec::new(),
    })
}

/// Ground-state expectation with the degeneracy flag.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundObservable {
    pub value: f64,
    pub degenerate: bool,
}

/// Photon number in the ground state of `h`. When the lowest gap is below
/// `DEGENERACY_GAP` the value is averaged over the degenerate doublet.
pub fn ground_state_photons(h: &Operator, photon_site: usize) -> Result<GroundObservable> {
    let es = eig_hermitian(h)?;
    let n_op = elementary_operator(&h.space, photon_site, OpKind::Number)?;
    ground_subspace_average(&es, &n_op)
}

fn ground_subspace_average(es: &EigenSystem, obs: &Operator) -> Result<GroundObservable> {
    let degenerate = es.values.len() > 1 && es.values[1] - es.values[0] < DEGENERACY_GAP;
    let members = if degenerate { 2 } else { 1 };
    let mut acc = 0.0;
    for k in 0..members {
        acc += obs.expect(&es.state(k)).re;
    }
    Ok(GroundObservable {
        value: acc / members as f64,
        degenerate,
    })
}

/// Leading-order coefficient c in <a^dag a>_G = c (Omega_R/omega_c)^2 for
/// the resonant Rabi model, extrapolated from two small couplings.
pub fn perturbative_photon_coefficient(n_fock: usize) -> Result<f64> {
    let lam1 = 0.01;
    let lam2 = 0.02;
    let c_at = |lam: f64| -> Result<f64> {
        let h = models::build_rabi(&RabiParams::resonant(lam, n_fock))?;
        Ok(ground_state_photons(&h, 0)?.value / (lam * lam))
    };
    let c1 = c_at(lam1)?;
    let c2 = c_at(lam2)?;
    if (c1 - c2).abs() / c1.abs().max(1e-300) > 0.05 {
        return Err(CqedError::Convergence(format!(
            "photon coefficient not on a plateau: c({lam1}) = {c1:.6}, c({lam2}) = {c2:.6}"
        )));
    }
    // Richardson step in lambda^2 with lam2 = 2 lam1
    Ok(c1 - (c2 - c1) / 3.0)
}

/// Overlap of the Rabi ground state with the coherent-state cat
/// superposition at alpha = Omega_R/omega_c. Projects onto the full ground
/// doublet when it is quasi-degenerate.
pub fn cat_fidelity(es: &EigenSystem, p: &RabiParams) -> Result<f64> {
    let cat = models::cat_state(p)?;
    if es.space != cat.space {
        return Err(CqedError::SpaceMismatch(
            "eigensystem space does not match the cat-state space".into(),
        ));
    }
    let degenerate = es.values.len() > 1 && es.values[1] - es.values[0] < DEGENERACY_GAP;
    let members = if degenerate { 2 } else { 1 };
    let mut fid = 0.0;
    for k in 0..members {
        fid += es.state(k).inner(&cat).norm_sqr();
    }
    Ok(fid.min(1.0))
}

/// Polaron effective mass m_eff = m [1 + 2 (Omega_R/omega_c)^2].
pub fn effective_mass(m: f64, omega_r: f64, omega_c: f64) -> f64 {
    let lam = omega_r / omega_c;
    m * (1.0 + 2.0 * lam * lam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{JcmParams, build_jcm, build_rabi};
    use approx::assert_abs_diff_eq;

    #[test]
    fn regime_table_rows() {
        let sc = regime_metrics(35.2, 23.9, 35.2, 1e-3, 1e-3).unwrap();
        assert_abs_diff_eq!(sc.zeta, 5.891, epsilon = 1e-2);
        assert_eq!(sc.classification, Classification::UltraStrong);

        let graphene = regime_metrics(25.0, 3.8, 49.0, 1e-3, 1e-3).unwrap();
        assert_abs_diff_eq!(graphene.zeta, 101.09, epsilon = 0.1);

        let molecular = regime_metrics(452.0, 452.0, 73.0, 1e-3, 1e-3).unwrap();
        assert_abs_diff_eq!(molecular.zeta, 0.1043, epsilon = 1e-3);

        let boundary = regime_metrics(1.0, 1.0, 0.1, 0.01, 0.01).unwrap();
        assert_abs_diff_eq!(boundary.cooperativity, 400.0, epsilon = 1e-9);
        assert_abs_diff_eq!(boundary.zeta, 0.04, epsilon = 1e-12);
        assert_eq!(boundary.classification, Classification::UltraStrong);

        let weak = regime_metrics(1.0, 1.0, 1e-3, 0.1, 0.1).unwrap();
        assert_eq!(weak.classification, Classification::Weak);
        assert!(regime_metrics(0.0, 1.0, 0.1, 0.01, 0.01).is_err());
    }

    #[test]
    fn metrics_scale_invariance() {
        let a = regime_metrics(1.0, 0.8, 0.3, 0.01, 0.02).unwrap();
        let b = regime_metrics(7.0, 5.6, 2.1, 0.07, 0.14).unwrap();
        assert_abs_diff_eq!(a.zeta, b.zeta, epsilon = 1e-12);
        assert_abs_diff_eq!(a.cooperativity, b.cooperativity, epsilon = 1e-9);
        assert_eq!(a.classification, b.classification);
    }

    #[test]
    fn coupling_bound_examples() {
        let base = single_atom_coupling_bound(1, 1.0, None).unwrap();
        assert_abs_diff_eq!(base, 1.99e-4, epsilon = 2e-6);
        let larger = single_atom_coupling_bound(1, 4.0, None).unwrap();
        assert_abs_diff_eq!(larger, base / 2.0, epsilon = 1e-12);
        let matched = single_atom_coupling_bound(1, 1.0, Some((137.035999, 1.0, 1))).unwrap();
        assert_abs_diff_eq!(matched, 1.0 / std::f64::consts::PI, epsilon = 1e-9);
        assert!(single_atom_coupling_bound(0, 1.0, None).is_err());
    }

    #[test]
    fn rwa_boundary_examples() {
        assert_abs_diff_eq!(rwa_boundary(1.0, 1.0, 0.2).unwrap(), 100.0, epsilon = 1e-9);
        assert_abs_diff_eq!(rwa_boundary(1.0, 1.0, 2.0).unwrap(), 1.0, epsilon = 1e-12);
        assert!(rwa_boundary(1.0, 1.0, 0.3).unwrap() < rwa_boundary(1.0, 1.0, 0.2).unwrap());
        assert!(rwa_boundary(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn sweep_jcm_ground_row_constant() {
        let grid: Vec<f64> = (0..8).map(|k| 0.05 * k as f64).collect();
        let sweep = spectrum_sweep("omega_r", &grid, 4, |g| {
            build_jcm(&JcmParams::resonant(g, 20))
        })
        .unwrap();
        for row in &sweep.rows {
            assert_abs_diff_eq!(row[0], -0.5, epsilon = 1e-10);
        }
    }

    #[test]
    fn rabi_matches_jcm_at_weak_coupling() {
        let er = eig_hermitian(&build_rabi(&RabiParams::resonant(0.01, 40)).unwrap()).unwrap();
        let ej = eig_hermitian(&build_jcm(&JcmParams::resonant(0.01, 40)).unwrap()).unwrap();
        for k in 0..6 {
            let scale = ej.values[k].abs().max(1.0);
            assert!((er.values[k] - ej.values[k]).abs() / scale < 1e-3);
        }
    }

    #[test]
    fn deep_coupling_parity_doublet() {
        let es = eig_hermitian(&build_rabi(&RabiParams::resonant(1.0, 60)).unwrap()).unwrap();
        let gap = es.values[1] - es.values[0];
        assert!(gap < 1.5 * (-2.0f64).exp(), "doublet gap {gap}");
    }

    #[test]
    fn ground_photons_limits() {
        let h0 = build_rabi(&RabiParams::resonant(0.0, 20)).unwrap();
        assert_abs_diff_eq!(ground_state_photons(&h0, 0).unwrap().value, 0.0, epsilon = 1e-12);

        let displaced = build_rabi(&RabiParams {
            omega_c: 1.0,
            omega_eg: 0.0,
            omega_r: 2.0,
            epsilon: 0.0,
            n_fock: 60,
        })
        .unwrap();
        let obs = ground_state_photons(&displaced, 0).unwrap();
        assert!(obs.degenerate);
        assert_abs_diff_eq!(obs.value, 4.0, epsilon = 1e-6);
    }

    #[test]
    fn ground_photons_monotone() {
        let mut prev = -1.0;
        for k in 0..7 {
            let lam = 0.5 * k as f64;
            let h = build_rabi(&RabiParams::resonant(lam, 70)).unwrap();
            let v = ground_state_photons(&h, 0).unwrap().value;
            assert!(v >= prev - 1e-10, "not monotone at lambda = {lam}");
            prev = v;
        }
    }

    #[test]
    fn photon_coefficient_plateau() {
        let c30 = perturbative_photon_coefficient(30).unwrap();
        let c60 = perturbative_photon_coefficient(60).unwrap();
        assert_abs_diff_eq!(c30, 0.25, epsilon = 0.01);
        assert!((c30 - c60).abs() / c30 < 0.01);
    }

    #[test]
    fn cat_fidelity_limits() {
        let p0 = RabiParams::resonant(0.0, 20);
        let es = eig_hermitian(&build_rabi(&p0).unwrap()).unwrap();
        assert_abs_diff_eq!(cat_fidelity(&es, &p0).unwrap(), 1.0, epsilon = 1e-10);

        let pd = RabiParams {
            omega_c: 1.0,
            omega_eg: 0.0,
            omega_r: 1.5,
            epsilon: 0.0,
            n_fock: 50,
        };
        let es = eig_hermitian(&build_rabi(&pd).unwrap()).unwrap();
        assert!(cat_fidelity(&es, &pd).unwrap() > 1.0 - 1e-8);
    }

    #[test]
    fn cat_fidelity_deep_strong() {
        let p = RabiParams::resonant(3.0, 80);
        let es = eig_hermitian(&build_rabi(&p).unwrap()).unwrap();
        let f = cat_fidelity(&es, &p).unwrap();
        assert!(f >= 0.99, "fidelity {f}");
    }

    #[test]
    fn effective_mass_formula() {
        assert_abs_diff_eq!(effective_mass(2.0, 0.0, 1.0), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(effective_mass(1.0, 1.0, 1.0), 3.0, epsilon = 1e-15);
        assert!(effective_mass(1.0, 0.6, 1.0) > effective_mass(1.0, 0.5, 1.0));
    }
}
