//! One-dimensional matter solver for the double-well atom: second-order
//! finite differences with Dirichlet boundaries, plus position and momentum
//! matrix elements in the energy eigenbasis.
//!
//! With the centered-difference momentum used here the discrete identity
//! <j|p|k> = i m omega_jk <j|x|k> holds to rounding, which is what makes
//! the gauge builders downstream mutually consistent.

use ndarray::{Array1, Array2};

use crate::{C64, CqedError, Result};

// The finite-difference Hamiltonian is tridiagonal, so go straight to
// LAPACK's subset solver instead of a dense decomposition; the dense
// route is two orders of magnitude slower at a few thousand grid points.
extern "C" {
    fn dstevr_(
        jobz: *const u8,
        range: *const u8,
        n: *const i32,
        d: *mut f64,
        e: *mut f64,
        vl: *const f64,
        vu: *const f64,
        il: *const i32,
        iu: *const i32,
        abstol: *const f64,
        m: *mut i32,
        w: *mut f64,
        z: *mut f64,
        ldz: *const i32,
        isuppz: *mut i32,
        work: *mut f64,
        lwork: *const i32,
        iwork: *mut i32,
        liwork: *const i32,
        info: *mut i32,
    );
}

/// Lowest `k` eigenpairs of the symmetric tridiagonal matrix with main
/// diagonal `diag` and off-diagonal `off`.
fn tridiagonal_lowest(
    diag: &[f64],
    off: &[f64],
    k: usize,
) -> Result<(Array1<f64>, Array2<f64>)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    // dstevr wants n-1 entries plus one scratch slot.
    let mut e = off.to_vec();
    e.push(0.0);
    let (jobz, range) = (b'V', b'I');
    let (n_i, il, iu, ldz) = (n as i32, 1i32, k as i32, n as i32);
    let (vl, vu, abstol) = (0.0f64, 0.0f64, 0.0f64);
    let mut m = 0i32;
    let mut w = vec![0.0f64; n];
    let mut z = vec![0.0f64; n * k];
    let mut isuppz = vec![0i32; 2 * k.max(1)];
    let mut info = 0i32;

    // Workspace query, then the real call.
    let mut work_query = [0.0f64; 1];
    let mut iwork_query = [0i32; 1];
    let query = -1i32;
    unsafe {
        dstevr_(
            &jobz, &range, &n_i, d.as_mut_ptr(), e.as_mut_ptr(), &vl, &vu, &il, &iu, &abstol,
            &mut m, w.as_mut_ptr(), z.as_mut_ptr(), &ldz, isuppz.as_mut_ptr(),
            work_query.as_mut_ptr(), &query, iwork_query.as_mut_ptr(), &query, &mut info,
        );
    }
    if info != 0 {
        return Err(CqedError::Convergence(format!(
            "tridiagonal eigensolver workspace query failed (info = {info})"
        )));
    }
    let lwork = work_query[0] as i32;
    let liwork = iwork_query[0];
    let mut work = vec![0.0f64; lwork.max(1) as usize];
    let mut iwork = vec![0i32; liwork.max(1) as usize];
    unsafe {
        dstevr_(
            &jobz, &range, &n_i, d.as_mut_ptr(), e.as_mut_ptr(), &vl, &vu, &il, &iu, &abstol,
            &mut m, w.as_mut_ptr(), z.as_mut_ptr(), &ldz, isuppz.as_mut_ptr(),
            work.as_mut_ptr(), &lwork, iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    if info != 0 || m != k as i32 {
        return Err(CqedError::Convergence(format!(
            "tridiagonal eigensolver failed (info = {info}, found {m} of {k} levels)"
        )));
    }
    let values = Array1::from(w[..k].to_vec());
    // z is column-major n x k, which matches a row-major (k x n) transpose.
    let mut vectors = Array2::<f64>::zeros((n, k));
    for c in 0..k {
        for r in 0..n {
            vectors[[r, c]] = z[c * n + r];
        }
    }
    Ok((values, vectors))
}

/// Uniform spatial grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub x_min: f64,
    pub x_max: f64,
    pub n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min < x_max) {
            return Err(CqedError::InvalidParameter {
                name: "grid".into(),
                detail: format!("x_min {x_min} must be below x_max {x_max}"),
            });
        }
        if n_points < 64 {
            return Err(CqedError::InvalidParameter {
                name: "n_points".into(),
                detail: format!("need at least 64 points, got {n_points}"),
            });
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
        })
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn points(&self) -> Array1<f64> {
        Array1::linspace(self.x_min, self.x_max, self.n_points)
    }

    /// Symmetric default box for a quartic double well: wide enough that
    /// the low-lying wavefunctions vanish at the edges.
    pub fn default_for(pot: &PotentialSpec, n_points: usize) -> Self {
        let half = 3.0 * (pot.b.abs() / pot.a).sqrt() + 2.0;
        Self {
            x_min: -half,
            x_max: half,
            n_points,
        }
    }
}

/// Quartic-minus-quadratic potential V(x) = A x^4 - B x^2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PotentialSpec {
    pub a: f64,
    pub b: f64,
    pub m: f64,
}

impl PotentialSpec {
    pub fn new(a: f64, b: f64, m: f64) -> Result<Self> {
        if a <= 0.0 || m <= 0.0 {
            return Err(CqedError::InvalidParameter {
                name: "potential".into(),
                detail: format!("need A > 0 and m > 0, got A={a}, m={m}"),
            });
        }
        Ok(Self { a, b, m })
    }

    /// Double well with a prescribed anharmonicity m B^3 / A^2, inverting
    /// B = (anharmonicity * A^2 / m)^(1/3).
    pub fn double_well_with_anharmonicity(a: f64, anharmonicity: f64, m: f64) -> Result<Self> {
        let b = (anharmonicity * a * a / m).cbrt();
        Self::new(a, b, m)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.a * x.powi(4) - self.b * x * x
    }
}

/// Anharmonicity parameter m B^3 / A^2.
pub fn anharmonicity(pot: &PotentialSpec) -> f64 {
    pot.m * pot.b.powi(3) / (pot.a * pot.a)
}

/// Low-lying eigenpairs of the 1D matter Hamiltonian together with x and p
/// matrix elements.
#[derive(Clone, Debug)]
pub struct MatterEigensystem {
    pub grid: Grid,
    pub energies: Array1<f64>,
    /// Grid wavefunctions as unit-2-norm columns, one per level.
    pub wavefunctions: Array2<f64>,
    /// <j|x|k>, real symmetric.
    pub x_elems: Array2<f64>,
    /// <j|p|k>, Hermitian (purely imaginary off-diagonal).
    pub p_elems: Array2<C64>,
}

impl MatterEigensystem {
    pub fn n_levels(&self) -> usize {
        self.energies.len()
    }

    pub fn x_eg(&self) -> f64 {
        self.x_elems[[0, 1]]
    }

    pub fn omega_eg(&self) -> f64 {
        self.energies[1] - self.energies[0]
    }
}

/// Diagonalize -(1/2m) d^2/dx^2 + V(x) with Dirichlet boundaries and keep
/// the lowest `k_levels` eigenpairs.
pub fn solve_double_well(
    grid: &Grid,
    pot: &PotentialSpec,
    k_levels: usize,
) -> Result<MatterEigensystem> {
    let n = grid.n_points;
    if k_levels > n / 4 {
        return Err(CqedError::InvalidParameter {
            name: "k_levels".into(),
            detail: format!("{k_levels} levels requested from a {n}-point grid"),
        });
    }
    let h = grid.spacing();
    let x = grid.points();
    let kin = 1.0 / (2.0 * pot.m * h * h);
    let diag: Vec<f64> = (0..n).map(|i| 2.0 * kin + pot.eval(x[i])).collect();
    let off = vec![-kin; n - 1];
    let (vals, vecs) = tridiagonal_lowest(&diag, &off, k_levels)?;
    let mut wavefunctions = Array2::<f64>::zeros((n, k_levels));
    for k in 0..k_levels {
        let col = vecs.column(k);
        let mut best = 0usize;
        let mut best_mag = 0.0f64;
        for (r, &v) in col.iter().enumerate() {
            if v.abs() > best_mag {
                best_mag = v.abs();
                best = r;
            }
        }
        let sign = if col[best] < 0.0 { -1.0 } else { 1.0 };
        for r in 0..n {
            wavefunctions[[r, k]] = sign * col[r];
        }
    }
    let energies = vals;

    // <j|x|k> with unit-2-norm grid vectors; the grid weight cancels.
    let mut x_elems = Array2::<f64>::zeros((k_levels, k_levels));
    for j in 0..k_levels {
        for k in j..k_levels {
            let mut s = 0.0;
            for r in 0..n {
                s += wavefunctions[[r, j]] * x[r] * wavefunctions[[r, k]];
            }
            x_elems[[j, k]] = s;
            x_elems[[k, j]] = s;
        }
    }

    // centered-difference momentum: (p psi)_r = -i (psi_{r+1} - psi_{r-1}) / 2h
    let mut p_elems = Array2::<C64>::zeros((k_levels, k_levels));
    for j in 0..k_levels {
        for k in 0..k_levels {
            let mut s = 0.0;
            for r in 0..n {
                let up = if r + 1 < n { wavefunctions[[r + 1, k]] } else { 0.0 };
                let dn = if r > 0 { wavefunctions[[r - 1, k]] } else { 0.0 };
                s += wavefunctions[[r, j]] * (up - dn);
            }
            p_elems[[j, k]] = C64::new(0.0, -s / (2.0 * h));
        }
    }

    Ok(MatterEigensystem {
        grid: *grid,
        energies,
        wavefunctions,
        x_elems,
        p_elems,
    })
}

/// Solve, then re-solve on a doubled grid and insist the lowest four
/// energies moved by less than `tol` relative.
pub fn solve_double_well_converged(
    grid: &Grid,
    pot: &PotentialSpec,
    k_levels: usize,
    tol: f64,
) -> Result<MatterEigensystem> {
    let coarse = solve_double_well(grid, pot, k_levels)?;
    let fine_grid = Grid {
        n_points: grid.n_points * 2,
        ..*grid
    };
    let fine = solve_double_well(&fine_grid, pot, k_levels)?;
    let checked = k_levels.min(4);
    for k in 0..checked {
        let scale = coarse.energies[k].abs().max(1.0);
        let delta = (coarse.energies[k] - fine.energies[k]).abs() / scale;
        if delta > tol {
            return Err(CqedError::Convergence(format!(
                "level {k} moved by {delta:.3e} under grid doubling \
                 (E_coarse = {:.9}, E_fine = {:.9})",
                coarse.energies[k], fine.energies[k]
            )));
        }
    }
    Ok(coarse)
}

/// Relative defect of the discrete identity <j|p|k> = i m omega_jk <j|x|k>.
pub fn px_identity_error(
    eigs: &MatterEigensystem,
    pot: &PotentialSpec,
    j: usize,
    k: usize,
) -> Result<f64> {
    if j == k {
        return Err(CqedError::InvalidParameter {
            name: "indices".into(),
            detail: "need two distinct levels".into(),
        });
    }
    let p_jk = eigs.p_elems[[j, k]];
    let x_jk = eigs.x_elems[[j, k]];
    if p_jk.norm() < 1e-8 && x_jk.abs() < 1e-8 {
        return Err(CqedError::ForbiddenTransition { j, k });
    }
    let omega_jk = eigs.energies[j] - eigs.energies[k];
    let predicted = C64::new(0.0, pot.m * omega_jk * x_jk);
    Ok((p_jk - predicted).norm() / p_jk.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn harmonic_limit_spectrum() {
        // V = x^2/2 realized as A x^4 - B x^2 with tiny A and B = -1/2
        let pot = PotentialSpec::new(1e-10, -0.5, 1.0).unwrap();
        let grid = Grid::new(-9.0, 9.0, 1024).unwrap();
        let eigs = solve_double_well(&grid, &pot, 5).unwrap();
        // second-order finite differences: accuracy ~ h^2 per level
        for k in 0..5 {
            assert_abs_diff_eq!(eigs.energies[k], k as f64 + 0.5, epsilon = 5e-4);
        }
    }

    #[test]
    fn harmonic_px_identity() {
        let pot = PotentialSpec::new(1e-10, -0.5, 1.0).unwrap();
        let grid = Grid::new(-9.0, 9.0, 1024).unwrap();
        let eigs = solve_double_well(&grid, &pot, 4).unwrap();
        let err = px_identity_error(&eigs, &pot, 0, 1).unwrap();
        assert!(err < 1e-6, "px identity error {err:.3e}");
    }

    #[test]
    fn parity_alternates_and_forbidden_transition() {
        let pot = PotentialSpec::double_well_with_anharmonicity(50.0, 45.0, 1.0).unwrap();
        let grid = Grid::default_for(&pot, 512);
        let eigs = solve_double_well(&grid, &pot, 4).unwrap();
        let n = grid.n_points;
        for k in 0..4 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let mut defect = 0.0f64;
            for r in 0..n {
                let d = (eigs.wavefunctions[[r, k]] - sign * eigs.wavefunctions[[n - 1 - r, k]]).abs();
                defect = defect.max(d);
            }
            assert!(defect < 1e-6, "level {k} parity defect {defect:.3e}");
        }
        assert!(matches!(
            px_identity_error(&eigs, &pot, 0, 2),
            Err(CqedError::ForbiddenTransition { .. })
        ));
    }

    #[test]
    fn anharmonicity_roundtrip() {
        let pot = PotentialSpec::double_well_with_anharmonicity(50.0, 45.0, 1.0).unwrap();
        assert_abs_diff_eq!(anharmonicity(&pot), 45.0, epsilon = 1e-10);
        let doubled = PotentialSpec::new(pot.a, 2.0 * pot.b, pot.m).unwrap();
        assert_abs_diff_eq!(anharmonicity(&doubled), 8.0 * 45.0, epsilon = 1e-8);
        let zero_b = PotentialSpec::new(1.0, 0.0, 1.0).unwrap();
        assert_abs_diff_eq!(anharmonicity(&zero_b), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn grid_convergence_contract() {
        let pot = PotentialSpec::double_well_with_anharmonicity(50.0, 45.0, 1.0).unwrap();
        let grid = Grid::default_for(&pot, 1024);
        assert!(solve_double_well_converged(&grid, &pot, 4, 1e-3).is_ok());
        let coarse = Grid::default_for(&pot, 64);
        assert!(matches!(
            solve_double_well_converged(&coarse, &pot, 4, 1e-8),
            Err(CqedError::Convergence(_))
        ));
    }
}
