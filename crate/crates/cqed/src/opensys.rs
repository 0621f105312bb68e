//! Open-system engines: Lindblad dissipators, the standard, dressed, and
//! generalized master equations, positive-frequency field operators,
//! photodetection rates, steady states, the Liouvillian gap, and the
//! steady-state emission sweep.
//!
//! Vectorization is column-stacking, so the superoperator for A rho B is
//! kron(B^T, A) and a matrix entry rho_(r,c) lives at index c*N + r. The
//! dressed and generalized kinds are assembled in the energy eigenbasis of
//! the Hamiltonian; every public function still accepts and returns
//! operators and density matrices in the original basis.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Solve};

use crate::analysis::SweepResult;
use crate::models::{self, RabiParams};
use crate::opcore::{
    EigenSystem, HilbertSpace, OpKind, Operator, eig_hermitian, elementary_operator, expm,
};
use crate::{C64, CqedError, Result};

/// Bath spectral density gamma(omega); zero at nonpositive frequencies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralDensity {
    /// White reservoir: gamma(omega) = gamma0 for omega > 0.
    Flat { gamma0: f64 },
    /// Ohmic reservoir: gamma(omega) = gamma0 * omega / omega_ref.
    Ohmic { gamma0: f64, omega_ref: f64 },
}

impl SpectralDensity {
    pub fn rate(&self, omega: f64) -> f64 {
        if omega <= 0.0 {
            return 0.0;
        }
        match *self {
            SpectralDensity::Flat { gamma0 } => gamma0,
            SpectralDensity::Ohmic { gamma0, omega_ref } => gamma0 * omega / omega_ref,
        }
    }
}

/// Bose-Einstein occupation 1/(exp(omega/T) - 1); zero at T = 0 or
/// nonpositive frequency.
pub fn thermal_occupation(omega: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 || omega <= 0.0 {
        return 0.0;
    }
    let x = omega / temperature;
    if x > 700.0 { 0.0 } else { 1.0 / x.exp_m1() }
}

/// One reservoir: the Hermitian system operator it couples to, the bare
/// lowering operator the standard kind uses, and its spectral properties.
#[derive(Clone, Debug)]
pub struct BathSpec {
    pub coupling: Operator,
    pub lowering: Operator,
    /// Bare transition frequency at which the standard kind samples the
    /// spectral density.
    pub bare_frequency: f64,
    pub density: SpectralDensity,
    pub temperature: f64,
}

impl BathSpec {
    /// Cavity-field bath: S = a + a^dag, lowering a, on photon site 0.
    pub fn cavity(
        space: &HilbertSpace,
        omega_c: f64,
        density: SpectralDensity,
        temperature: f64,
    ) -> Result<Self> {
        let a = elementary_operator(space, 0, OpKind::Annihilate)?;
        Ok(Self {
            coupling: a.add(&a.dag()),
            lowering: a,
            bare_frequency: omega_c,
            density,
            temperature,
        })
    }

    /// Atomic-dipole bath: S = sigma_x, lowering sigma_-, on matter site 1.
    pub fn atom(
        space: &HilbertSpace,
        omega_eg: f64,
        density: SpectralDensity,
        temperature: f64,
    ) -> Result<Self> {
        Ok(Self {
            coupling: elementary_operator(space, 1, OpKind::SigmaX)?,
            lowering: elementary_operator(space, 1, OpKind::SigmaMinus)?,
            bare_frequency: omega_eg,
            density,
            temperature,
        })
    }

    fn validate(&self, space: &HilbertSpace) -> Result<()> {
        if self.coupling.space != *space || self.lowering.space != *space {
            return Err(CqedError::SpaceMismatch(
                "bath operators live on a different space than the Hamiltonian".into(),
            ));
        }
        if self.temperature < 0.0 {
            return Err(CqedError::InvalidParameter {
                name: "temperature".into(),
                detail: format!("must be nonnegative, got {}", self.temperature),
            });
        }
        Ok(())
    }
}

/// Master-equation kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeKind {
    Standard,
    Dressed,
    Generalized,
}

impl std::fmt::Display for MeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            MeKind::Standard => "standard",
            MeKind::Dressed => "dressed",
            MeKind::Generalized => "generalized",
        };
        f.write_str(s)
    }
}

/// Hermitian, unit-trace, positive-semidefinite state.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    pub space: HilbertSpace,
    pub mat: Array2<C64>,
}

impl DensityMatrix {
    pub fn new(space: HilbertSpace, mat: Array2<C64>) -> Result<Self> {
        let d = space.dim();
        if mat.nrows() != d || mat.ncols() != d {
            return Err(CqedError::DimensionMismatch(format!(
                "density matrix is {}x{}, space dimension is {}",
                mat.nrows(),
                mat.ncols(),
                d
            )));
        }
        let tr: C64 = (0..d).map(|i| mat[[i, i]]).sum();
        if (tr - C64::new(1.0, 0.0)).norm() > 1e-10 {
            return Err(CqedError::InvalidParameter {
                name: "trace".into(),
                detail: format!("density matrix trace is {tr}, expected 1"),
            });
        }
        let mut herm = 0.0f64;
        for i in 0..d {
            for j in i..d {
                herm = herm.max((mat[[i, j]] - mat[[j, i]].conj()).norm());
            }
        }
        if herm > 1e-9 {
            return Err(CqedError::NonHermitian { defect: herm });
        }
        Ok(Self { space, mat })
    }

    /// Pure-state projector |psi><psi|.
    pub fn from_ket(psi: &crate::opcore::Ket) -> Self {
        let d = psi.space.dim();
        let mut mat = Array2::zeros((d, d));
        for r in 0..d {
            for c in 0..d {
                mat[[r, c]] = psi.amplitudes[r] * psi.amplitudes[c].conj();
            }
        }
        Self {
            space: psi.space.clone(),
            mat,
        }
    }

    pub fn expect(&self, op: &Operator) -> C64 {
        let prod = op.mat.dot(&self.mat);
        (0..prod.nrows()).map(|i| prod[[i, i]]).sum()
    }
}

fn vec_index(r: usize, c: usize, n: usize) -> usize {
    c * n + r
}

/// Superoperator for A rho B under column stacking: kron(B^T, A).
fn super_sandwich(a: &Array2<C64>, b: &Array2<C64>) -> Array2<C64> {
    ndarray::linalg::kron(&b.t().to_owned(), a)
}

/// Lindblad dissipator D[S] rho = S rho S^dag - (S^dag S rho + rho S^dag S)/2
/// as a dense superoperator.
pub fn dissipator(s_op: &Operator) -> Array2<C64> {
    let n = s_op.dim();
    let eye: Array2<C64> = Array2::eye(n);
    let sd = s_op.dag();
    let sds = sd.mat.dot(&s_op.mat);
    let mut l = super_sandwich(&s_op.mat, &sd.mat);
    l = l - super_sandwich(&sds, &eye).mapv(|z| z * 0.5);
    l - super_sandwich(&eye, &sds).mapv(|z| z * 0.5)
}

/// Dense master-equation generator over vectorized density matrices.
#[derive(Clone, Debug)]
pub struct Liouvillian {
    pub kind: MeKind,
    pub space: HilbertSpace,
    /// Generator matrix; in the energy eigenbasis for the dressed and
    /// generalized kinds, in the original basis for the standard kind.
    pub mat: Array2<C64>,
    /// Eigensystem of the source Hamiltonian (dressed/generalized kinds).
    pub eigs: Option<EigenSystem>,
    /// Secular threshold 10 * max bath rate encountered during assembly.
    pub delta_sec: f64,
}

impl Liouvillian {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn to_native(&self, rho: &Array2<C64>) -> Array2<C64> {
        match &self.eigs {
            Some(es) => {
                let vd = es.vectors.t().mapv(|z| z.conj());
                vd.dot(rho).dot(&es.vectors)
            }
            None => rho.clone(),
        }
    }

    fn from_native(&self, rho: &Array2<C64>) -> Array2<C64> {
        match &self.eigs {
            Some(es) => {
                let vd = es.vectors.t().mapv(|z| z.conj());
                es.vectors.dot(rho).dot(&vd)
            }
            None => rho.clone(),
        }
    }

    fn apply_native(&self, rho: &Array2<C64>) -> Array2<C64> {
        let n = self.dim();
        let mut v = Array1::<C64>::zeros(n * n);
        for c in 0..n {
            for r in 0..n {
                v[vec_index(r, c, n)] = rho[[r, c]];
            }
        }
        let out = self.mat.dot(&v);
        let mut m = Array2::<C64>::zeros((n, n));
        for c in 0..n {
            for r in 0..n {
                m[[r, c]] = out[vec_index(r, c, n)];
            }
        }
        m
    }

    /// L rho for a density matrix in the original basis, returned in the
    /// original basis.
    pub fn apply(&self, rho: &Array2<C64>) -> Array2<C64> {
        self.from_native(&self.apply_native(&self.to_native(rho)))
    }

    /// Frobenius norm of L rho.
    pub fn apply_norm(&self, rho: &Array2<C64>) -> f64 {
        self.apply(rho)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Trace-preservation defect: max over columns of |sum_i L[(i,i), col]|.
    pub fn trace_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for col in 0..n * n {
            let mut s = C64::new(0.0, 0.0);
            for i in 0..n {
                s += self.mat[[vec_index(i, i, n), col]];
            }
            worst = worst.max(s.norm());
        }
        worst
    }
}

/// Accumulate q * [A1 rho A2^dag - {A2^dag A1, rho}/2] with A1 = |k><j| and
/// A2 = |m><l| into an eigenbasis superoperator.
fn add_cross(l: &mut Array2<C64>, n: usize, q: C64, k: usize, j: usize, m: usize, li: usize) {
    l[[vec_index(k, m, n), vec_index(j, li, n)]] += q;
    if m == k {
        let half = q * 0.5;
        for c in 0..n {
            l[[vec_index(li, c, n), vec_index(j, c, n)]] -= half;
        }
        for r in 0..n {
            l[[vec_index(r, j, n), vec_index(r, li, n)]] -= half;
        }
    }
}

/// Assemble the requested master-equation generator for `h` and `baths`.
pub fn build_liouvillian(h: &Operator, baths: &[BathSpec], kind: MeKind) -> Result<Liouvillian> {
    let defect = h.herm_defect();
    if defect > 1e-10 * (1.0 + h.max_norm()) {
        return Err(CqedError::NonHermitian { defect });
    }
    for b in baths {
        b.validate(&h.space)?;
    }
    let n = h.dim();
    let mut delta_sec = 0.0f64;

    if kind == MeKind::Standard {
        let eye: Array2<C64> = Array2::eye(n);
        let mut l = super_sandwich(&h.mat, &eye)
            .mapv(|z| z * C64::new(0.0, -1.0))
            + super_sandwich(&eye, &h.mat).mapv(|z| z * C64::new(0.0, 1.0));
        for b in baths {
            let gam = b.density.rate(b.bare_frequency);
            delta_sec = delta_sec.max(10.0 * gam);
            let occ = thermal_occupation(b.bare_frequency, b.temperature);
            l = l + dissipator(&b.lowering).mapv(|z| z * (gam * (occ + 1.0)));
            if occ > 0.0 {
                l = l + dissipator(&b.lowering.dag()).mapv(|z| z * (gam * occ));
            }
        }
        return Ok(Liouvillian {
            kind,
            space: h.space.clone(),
            mat: l,
            eigs: None,
            delta_sec,
        });
    }

    let es = eig_hermitian(h)?;
    let mut l = Array2::<C64>::zeros((n * n, n * n));
    for r in 0..n {
        for c in 0..n {
            l[[vec_index(r, c, n), vec_index(r, c, n)]] +=
                C64::new(0.0, -(es.values[r] - es.values[c]));
        }
    }
    for b in baths {
        let vd = es.vectors.t().mapv(|z| z.conj());
        let se = vd.dot(&b.coupling.mat).dot(&es.vectors);
        // downward transitions |k><j| with E_j > E_k
        let mut trans: Vec<(usize, usize, f64, C64)> = Vec::new();
        for j in 0..n {
            for k in 0..j {
                let w = es.values[j] - es.values[k];
                if w > 1e-10 && se[[k, j]].norm() > 1e-12 {
                    trans.push((j, k, w, se[[k, j]]));
                    delta_sec = delta_sec.max(10.0 * b.density.rate(w));
                }
            }
        }
        match kind {
            MeKind::Dressed => {
                for &(j, k, w, el) in &trans {
                    let gam = b.density.rate(w);
                    let occ = thermal_occupation(w, b.temperature);
                    let q = C64::new(gam * (occ + 1.0) * el.norm_sqr(), 0.0);
                    add_cross(&mut l, n, q, k, j, k, j);
                    if occ > 0.0 {
                        let q_up = C64::new(gam * occ * el.norm_sqr(), 0.0);
                        add_cross(&mut l, n, q_up, j, k, j, k);
                    }
                }
            }
            MeKind::Generalized => {
                let dsec = if delta_sec > 0.0 { delta_sec } else { 1e-2 };
                for &(j, k, w_jk, el) in &trans {
                    for &(li, m, w_lm, el2) in &trans {
                        if (w_jk - w_lm).abs() >= dsec {
                            continue;
                        }
                        let w_bar = 0.5 * (w_jk + w_lm);
                        let gam = b.density.rate(w_bar);
                        let occ = thermal_occupation(w_bar, b.temperature);
                        let q = el * el2.conj() * (gam * (occ + 1.0));
                        add_cross(&mut l, n, q, k, j, m, li);
                        if occ > 0.0 {
                            let q_up = el.conj() * el2 * (gam * occ);
                            add_cross(&mut l, n, q_up, j, k, li, m);
                        }
                    }
                }
            }
            MeKind::Standard => unreachable!(),
        }
    }
    Ok(Liouvillian {
        kind,
        space: h.space.clone(),
        mat: l,
        eigs: Some(es),
        delta_sec,
    })
}

/// Positive-frequency component E^+ = sum_{k>j} <j|S|k> |j><k| over
/// transitions with Bohr frequency above `cutoff`, in the original basis.
pub fn positive_frequency_part_with_cutoff(
    s_op: &Operator,
    eigs: &EigenSystem,
    cutoff: f64,
) -> Result<Operator> {
    if s_op.space != eigs.space {
        return Err(CqedError::SpaceMismatch(
            "operator and eigensystem spaces differ".into(),
        ));
    }
    let n = s_op.dim();
    let vd = eigs.vectors.t().mapv(|z| z.conj());
    let se = vd.dot(&s_op.mat).dot(&eigs.vectors);
    let mut ep = Array2::<C64>::zeros((n, n));
    for k in 0..n {
        for j in 0..k {
            if eigs.values[k] - eigs.values[j] > cutoff {
                ep[[j, k]] = se[[j, k]];
            }
        }
    }
    let back = eigs.vectors.dot(&ep).dot(&vd);
    Operator::new(s_op.space.clone(), back)
}

/// E^+ with the default degeneracy cutoff: transitions below 1e-10 in
/// frequency are dropped.
pub fn positive_frequency_part(s_op: &Operator, eigs: &EigenSystem) -> Result<Operator> {
    positive_frequency_part_with_cutoff(s_op, eigs, 1e-10)
}

/// Photodetection rate tr(E^- E^+ rho).
pub fn photodetection_rate(rho: &DensityMatrix, e_plus: &Operator) -> Result<f64> {
    if rho.space != e_plus.space {
        return Err(CqedError::SpaceMismatch(
            "state and operator spaces differ".into(),
        ));
    }
    let flux = e_plus.dag().dot(e_plus);
    let val = rho.expect(&flux);
    if val.im.abs() > 1e-9 || val.re < -1e-9 {
        return Err(CqedError::SolverResidual {
            residual: val.im.abs().max(-val.re),
            tol: 1e-9,
        });
    }
    Ok(val.re.max(0.0))
}

/// Unique steady state of a trace-preserving Liouvillian, via the
/// trace-row replacement solve.
pub fn steady_state(l: &Liouvillian) -> Result<DensityMatrix> {
    let n = l.dim();
    let mut m = l.mat.clone();
    for col in 0..n * n {
        m[[0, col]] = C64::new(0.0, 0.0);
    }
    for i in 0..n {
        m[[0, vec_index(i, i, n)]] = C64::new(1.0, 0.0);
    }
    let mut b = Array1::<C64>::zeros(n * n);
    b[0] = C64::new(1.0, 0.0);
    let x = match m.solve(&b) {
        Ok(x) => x,
        Err(_) => {
            let (vals, _) = l.mat.eig()?;
            let dim = vals.iter().filter(|z| z.norm() < 1e-10).count();
            return Err(CqedError::DegenerateSteadyState { dim });
        }
    };
    let mut rho = Array2::<C64>::zeros((n, n));
    for c in 0..n {
        for r in 0..n {
            rho[[r, c]] = x[vec_index(r, c, n)];
        }
    }
    let residual = l
        .apply_native(&rho)
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    if residual > 1e-8 {
        return Err(CqedError::SolverResidual {
            residual,
            tol: 1e-8,
        });
    }
    // Hermitize and renormalize, then verify positivity without projecting.
    let rho = rho.clone() * C64::new(0.5, 0.0) + rho.t().mapv(|z| z.conj()) * C64::new(0.5, 0.0);
    let tr: C64 = (0..n).map(|i| rho[[i, i]]).sum();
    let rho = rho.mapv(|z| z / tr);
    let rho = l.from_native(&rho);
    let herm = Operator::new(l.space.clone(), rho.clone())?;
    let es = eig_hermitian(&herm)?;
    if es.values[0] < -1e-8 {
        return Err(CqedError::Convergence(format!(
            "steady state not positive: min eigenvalue {:.3e}",
            es.values[0]
        )));
    }
    DensityMatrix::new(l.space.clone(), rho)
}

/// Asymptotic decay rate: -max Re(lambda) over nonzero eigenvalues of L.
pub fn liouvillian_gap(l: &Liouvillian) -> Result<f64> {
    let (vals, _) = l.mat.eig()?;
    let mut best: Option<f64> = None;
    for z in vals.iter() {
        if z.norm() <= 1e-10 {
            continue;
        }
        best = Some(match best {
            Some(b) => b.max(z.re),
            None => z.re,
        });
    }
    match best {
        Some(b) => Ok((-b).max(0.0)),
        None => Err(CqedError::Convergence(
            "Liouvillian spectrum has no nonzero eigenvalue".into(),
        )),
    }
}

/// exp(L t) rho0 by dense matrix exponentiation.
pub fn lindblad_evolve(rho0: &DensityMatrix, l: &Liouvillian, t: f64) -> Result<DensityMatrix> {
    if t < 0.0 {
        return Err(CqedError::InvalidParameter {
            name: "t".into(),
            detail: format!("evolution time must be nonnegative, got {t}"),
        });
    }
    if rho0.space != l.space {
        return Err(CqedError::SpaceMismatch(
            "initial state space differs from the Liouvillian space".into(),
        ));
    }
    let n = l.dim();
    let prop = expm(&l.mat.mapv(|z| z * t))?;
    let native = l.to_native(&rho0.mat);
    let mut v = Array1::<C64>::zeros(n * n);
    for c in 0..n {
        for r in 0..n {
            v[vec_index(r, c, n)] = native[[r, c]];
        }
    }
    let out = prop.dot(&v);
    let mut rho = Array2::<C64>::zeros((n, n));
    for c in 0..n {
        for r in 0..n {
            rho[[r, c]] = out[vec_index(r, c, n)];
        }
    }
    let rho = l.from_native(&rho);
    let tr: C64 = (0..n).map(|i| rho[[i, i]]).sum();
    if (tr - C64::new(1.0, 0.0)).norm() > 1e-9 {
        return Err(CqedError::SolverResidual {
            residual: (tr - C64::new(1.0, 0.0)).norm(),
            tol: 1e-9,
        });
    }
    DensityMatrix::new(l.space.clone(), rho)
}

/// Steady-state photon emission of the resonant Rabi model over a coupling
/// grid, one column per master-equation kind. The cavity bath is held at
/// T = 0 and the atomic bath at `t_atom`; both are flat with rate `gamma0`.
///
/// The standard kind reports the naive observable gamma <a^dag a>; the
/// dressed and generalized kinds report the photodetection rate of E^+
/// built with the secular threshold as frequency cutoff.
pub fn emission_sweep(
    grid: &[f64],
    n_fock: usize,
    gamma0: f64,
    t_atom: f64,
    kinds: &[MeKind],
) -> Result<SweepResult> {
    let density = SpectralDensity::Flat { gamma0 };
    let mut rows = Vec::with_capacity(grid.len());
    let mut failures: Vec<String> = Vec::new();
    for &lam in grid {
        let mut row = Vec::with_capacity(kinds.len());
        let point = (|| -> Result<()> {
            let p = RabiParams::resonant(lam, n_fock);
            let h = models::build_rabi(&p)?;
            let space = h.space.clone();
            let baths = vec![
                BathSpec::cavity(&space, p.omega_c, density, 0.0)?,
                BathSpec::atom(&space, p.omega_eg, density, t_atom)?,
            ];
            for &kind in kinds {
                let l = build_liouvillian(&h, &baths, kind)?;
                let rho = steady_state(&l)?;
                let w = match kind {
                    MeKind::Standard => {
                        let num = elementary_operator(&space, 0, OpKind::Number)?;
                        gamma0 * rho.expect(&num).re
                    }
                    _ => {
                        let es = l.eigs.as_ref().expect("eigenbasis kinds carry eigs");
                        let ep = positive_frequency_part_with_cutoff(
                            &baths[0].coupling,
                            es,
                            l.delta_sec,
                        )?;
                        gamma0 * photodetection_rate(&rho, &ep)?
                    }
                };
                row.push(w);
            }
            Ok(())
        })();
        if let Err(e) = point {
            failures.push(format!("omega_r={lam}: {e}"));
            row = vec![f64::NAN; kinds.len()];
        }
        rows.push(row);
    }
    if !failures.is_empty() {
        return Err(CqedError::Convergence(format!(
            "{} of {} emission points failed: {}",
            failures.len(),
            grid.len(),
            failures.join("; ")
        )));
    }
    Ok(SweepResult {
        axis_name: "omega_r".into(),
        axis: grid.to_vec(),
        rows,
        metadata: kinds
            .iter()
            .enumerate()
            .map(|(i, k)| (format!("column_{i}"), k.to_string()))
            .collect(),
    })
}
