//! Hamiltonian builders for the cavity-QED model hierarchy and the unitary
//! transformations connecting its members.
//!
//! Photon quadrature convention: the vector potential operator is
//! A = i A0 (a - a^dag), so the gauge transformation
//! exp[q A0 x (a - a^dag)] removes the minimal coupling exactly and the
//! dipole-gauge Hamiltonian keeps the clean d.E structure.

use ndarray::Array2;

use crate::matter1d::{Grid, MatterEigensystem, PotentialSpec, solve_double_well};
use crate::opcore::{
    self, HilbertSpace, Ket, OpKind, Operator, displacement, elementary_operator, embed,
    expm_antihermitian,
};
use crate::{C64, CqedError, Result};

/// Parameters of the Jaynes-Cummings model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JcmParams {
    pub omega_c: f64,
    pub omega_eg: f64,
    pub omega_r: f64,
    pub n_fock: usize,
}

impl JcmParams {
    pub fn resonant(omega_r: f64, n_fock: usize) -> Self {
        Self {
            omega_c: 1.0,
            omega_eg: 1.0,
            omega_r,
            n_fock,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.omega_c <= 0.0 {
            return Err(CqedError::InvalidParameter {
                name: "omega_c".into(),
                detail: format!("must be positive, got {}", self.omega_c),
            });
        }
        if self.omega_r < 0.0 {
            return Err(CqedError::InvalidParameter {
                name: "omega_r".into(),
                detail: format!("must be nonnegative, got {}", self.omega_r),
            });
        }
        if self.n_fock < 2 {
            return Err(CqedError::InvalidParameter {
                name: "n_fock".into(),
                detail: format!("need at least 2 Fock states, got {}", self.n_fock),
            });
        }
        Ok(())
    }
}

/// Rabi-model parameters: JCM plus the symmetry-breaking field epsilon.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RabiParams {
    pub omega_c: f64,
    pub omega_eg: f64,
    pub omega_r: f64,
    pub epsilon: f64,
    pub n_fock: usize,
}

impl RabiParams {
    pub fn resonant(omega_r: f64, n_fock: usize) -> Self {
        Self {
            omega_c: 1.0,
            omega_eg: 1.0,
            omega_r,
            epsilon: 0.0,
            n_fock,
        }
    }

    pub fn symmetric(omega_c: f64, omega_eg: f64, omega_r: f64, n_fock: usize) -> Self {
        Self {
            omega_c,
            omega_eg,
            omega_r,
            epsilon: 0.0,
            n_fock,
        }
    }

    fn as_jcm(&self) -> JcmParams {
        JcmParams {
            omega_c: self.omega_c,
            omega_eg: self.omega_eg,
            omega_r: self.omega_r,
            n_fock: self.n_fock,
        }
    }
}

/// Jaynes-Cummings Hamiltonian
/// H = omega_c a^dag a + (omega_eg/2) sigma_z + Omega_R (a sigma_+ + a^dag sigma_-).
pub fn build_jcm(p: &JcmParams) -> Result<Operator> {
    p.validate()?;
    let space = HilbertSpace::cavity_tls(p.n_fock);
    let a = elementary_operator(&space, 0, OpKind::Annihilate)?;
    let sz = elementary_operator(&space, 1, OpKind::SigmaZ)?;
    let sm = elementary_operator(&space, 1, OpKind::SigmaMinus)?;
    let sp = sm.dag();
    let h = a
        .dag()
        .dot(&a)
        .scale_re(p.omega_c)
        .add(&sz.scale_re(p.omega_eg / 2.0))
        .add(&a.dot(&sp).add(&a.dag().dot(&sm)).scale_re(p.omega_r));
    Ok(h)
}

/// Closed-form JCM block eigenvalues (n, omega_{n,+}, omega_{n,-}); the
/// n = 0 entry carries the scalar ground value in both slots.
pub fn analytic_jcm_spectrum(p: &JcmParams, n_blocks: usize) -> Result<Vec<(usize, f64, f64)>> {
    p.validate()?;
    let delta = p.omega_c - p.omega_eg;
    let mut out = Vec::with_capacity(n_blocks + 1);
    out.push((0, -p.omega_eg / 2.0, -p.omega_eg / 2.0));
    for n in 1..=n_blocks {
        let base = -p.omega_eg / 2.0 + p.omega_c * n as f64 - delta / 2.0;
        let root = (delta * delta / 4.0 + p.omega_r * p.omega_r * n as f64).sqrt();
        out.push((n, base + root, base - root));
    }
    Ok(out)
}

/// Quantum Rabi Hamiltonian
/// H = omega_c a^dag a + (omega_eg/2) sigma_z
///   + Omega_R (a + a^dag) sigma_x + (epsilon/2) sigma_x.
pub fn build_rabi(p: &RabiParams) -> Result<Operator> {
    p.as_jcm().validate()?;
    let space = HilbertSpace::cavity_tls(p.n_fock);
    let a = elementary_operator(&space, 0, OpKind::Annihilate)?;
    let sz = elementary_operator(&space, 1, OpKind::SigmaZ)?;
    let sx = elementary_operator(&space, 1, OpKind::SigmaX)?;
    let x_ph = a.add(&a.dag());
    let mut h = a
        .dag()
        .dot(&a)
        .scale_re(p.omega_c)
        .add(&sz.scale_re(p.omega_eg / 2.0))
        .add(&x_ph.dot(&sx).scale_re(p.omega_r));
    if p.epsilon != 0.0 {
        h = h.add(&sx.scale_re(p.epsilon / 2.0));
    }
    Ok(h)
}

/// Parity operator sigma_z exp(i pi a^dag a) on a cavity+TLS space.
pub fn parity_operator(n_fock: usize) -> Result<Operator> {
    let space = HilbertSpace::cavity_tls(n_fock);
    let mut ph = Array2::<C64>::zeros((n_fock, n_fock));
    for n in 0..n_fock {
        ph[[n, n]] = C64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    let exp_ipin = embed(&space, 0, &ph);
    let sz = elementary_operator(&space, 1, OpKind::SigmaZ)?;
    Ok(sz.dot(&exp_ipin))
}

fn require_symmetric(p: &RabiParams, what: &str) -> Result<()> {
    if p.epsilon != 0.0 {
        return Err(CqedError::InvalidParameter {
            name: "epsilon".into(),
            detail: format!("{what} is defined for the symmetric model only (epsilon = 0)"),
        });
    }
    Ok(())
}

/// Polaron-frame Rabi Hamiltonian
/// H = omega_c a^dag a - (Omega_R^2/omega_c)
///   + (omega_eg/2) [cos(theta) sigma_z - sin(theta) sigma_y]
/// with cos/sin assembled from the displacement D(2 Omega_R/omega_c).
///
/// The constant -(Omega_R^2/omega_c) is the free-photon piece of the frame
/// change and is kept so the spectrum coincides with `build_rabi`.
pub fn build_polaron_rabi(p: &RabiParams) -> Result<Operator> {
    require_symmetric(p, "the polaron frame")?;
    p.as_jcm().validate()?;
    let lam = p.omega_r / p.omega_c;
    let space = HilbertSpace::cavity_tls(p.n_fock);
    let d = displacement(&space, 0, C64::new(2.0 * lam, 0.0))?;
    let half = C64::new(0.5, 0.0);
    let cos_t = d.add(&d.dag()).scale(half);
    let sin_t = d.sub(&d.dag()).scale(C64::new(0.0, -0.5));
    let a = elementary_operator(&space, 0, OpKind::Annihilate)?;
    let sz = elementary_operator(&space, 1, OpKind::SigmaZ)?;
    let sy = elementary_operator(&space, 1, OpKind::SigmaY)?;
    let id = Operator::identity(space.clone());
    let h = a
        .dag()
        .dot(&a)
        .scale_re(p.omega_c)
        .sub(&id.scale_re(lam * lam * p.omega_c))
        .add(
            &cos_t
                .dot(&sz)
                .sub(&sin_t.dot(&sy))
                .scale_re(p.omega_eg / 2.0),
        );
    Ok(h)
}

/// Coulomb-gauge two-level Hamiltonian from the minimal-coupling
/// replacement inside the truncated subspace. Coincides with the
/// polaron-frame Hamiltonian.
pub fn build_truncated_coulomb_tls(p: &RabiParams) -> Result<Operator> {
    require_symmetric(p, "the truncated Coulomb TLS model")?;
    build_polaron_rabi(p)
}

/// Generalized-RWA projection: keep only matrix elements conserving the
/// excitation number N = n + (spin excited).
pub fn grwa_project(h_pol: &Operator) -> Result<Operator> {
    if h_pol.space.n_sites() != 2 || h_pol.space.site_dim(1) != 2 {
        return Err(CqedError::DimensionMismatch(
            "gRWA projection expects a cavity+TLS space".into(),
        ));
    }
    let dim = h_pol.dim();
    let exc = |idx: usize| -> usize {
        let n = idx / 2;
        let s = idx % 2;
        n + s
    };
    let mut mat = Array2::<C64>::zeros((dim, dim));
    for r in 0..dim {
        for c in 0..dim {
            if exc(r) == exc(c) {
                mat[[r, c]] = h_pol.mat[[r, c]];
            }
        }
    }
    Operator::new(h_pol.space.clone(), mat)
}

/// Matter-plus-mode parameters for the gauge-comparison builders.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeParams {
    pub q: f64,
    pub a0: f64,
    pub omega_c: f64,
    pub pot: PotentialSpec,
    pub grid: Grid,
    pub n_fock: usize,
    pub n_matter_levels: usize,
}

impl GaugeParams {
    fn validate(&self) -> Result<()> {
        if self.omega_c <= 0.0 {
            return Err(CqedError::InvalidParameter {
                name: "omega_c".into(),
                detail: format!("must be positive, got {}", self.omega_c),
            });
        }
        if self.n_matter_levels < 2 {
            return Err(CqedError::InvalidParameter {
                name: "n_matter_levels".into(),
                detail: format!("need at least 2, got {}", self.n_matter_levels),
            });
        }
        Ok(())
    }

    pub fn solve_matter(&self) -> Result<MatterEigensystem> {
        solve_double_well(&self.grid, &self.pot, self.n_matter_levels)
    }

    /// Vacuum Rabi frequency q omega_c A0 x_eg implied by these parameters.
    pub fn omega_r(&self, matter: &MatterEigensystem) -> f64 {
        self.q * self.omega_c * self.a0 * matter.x_eg().abs()
    }
}

/// Photon-site quadrature i (a - a^dag), the vector potential divided by A0.
fn vector_potential_unit(space: &HilbertSpace) -> Result<Operator> {
    let a = elementary_operator(space, 0, OpKind::Annihilate)?;
    Ok(a.sub(&a.dag()).scale(C64::new(0.0, 1.0)))
}

/// Full Coulomb-gauge Hamiltonian
/// H_C = (p - q A)^2 / 2m + V(x) + omega_c a^dag a
/// on (photon x matter-levels), with x and p in the truncated matter
/// eigenbasis.
pub fn build_full_coulomb(g: &GaugeParams, matter: &MatterEigensystem) -> Result<Operator> {
    g.validate()?;
    let m_levels = g.n_matter_levels;
    if matter.n_levels() < m_levels {
        return Err(CqedError::DimensionMismatch(format!(
            "matter eigensystem holds {} levels, need {}",
            matter.n_levels(),
            m_levels
        )));
    }
    let space = HilbertSpace::new(vec![g.n_fock, m_levels])?;
    let e_diag = {
        let mut d = Array2::<C64>::zeros((m_levels, m_levels));
        for j in 0..m_levels {
            d[[j, j]] = C64::new(matter.energies[j], 0.0);
        }
        embed(&space, 1, &d)
    };
    let p_op = embed(
        &space,
        1,
        &matter
            .p_elems
            .slice(ndarray::s![..m_levels, ..m_levels])
            .to_owned(),
    );
    let a_unit = vector_potential_unit(&space)?;
    let n_ph = elementary_operator(&space, 0, OpKind::Number)?;
    let h = n_ph
        .scale_re(g.omega_c)
        .add(&e_diag)
        .sub(&p_op.dot(&a_unit).scale_re(g.q * g.a0 / g.pot.m))
        .add(&a_unit.dot(&a_unit).scale_re(g.q * g.q * g.a0 * g.a0 / (2.0 * g.pot.m)));
    Ok(h)
}

/// Gauge transformation U H U^dag with U = exp[q A0 x (a - a^dag)].
pub fn gauge_transform(
    h: &Operator,
    g: &GaugeParams,
    matter: &MatterEigensystem,
) -> Result<Operator> {
    let m_levels = g.n_matter_levels;
    let space = h.space.clone();
    if space.n_sites() != 2 || space.site_dim(1) != m_levels {
        return Err(CqedError::DimensionMismatch(
            "gauge_transform expects the (photon x matter) space of build_full_coulomb".into(),
        ));
    }
    let x_op = embed(
        &space,
        1,
        &matter
            .x_elems
            .slice(ndarray::s![..m_levels, ..m_levels])
            .mapv(|v| C64::new(v, 0.0)),
    );
    let a = elementary_operator(&space, 0, OpKind::Annihilate)?;
    let quad = a.sub(&a.dag());
    let gen = x_op.dot(&quad).scale_re(g.q * g.a0);
    let u = expm_antihermitian(&gen)?;
    let defect = u
        .dot(&u.dag())
        .sub(&Operator::identity(space))
        .max_norm();
    if defect > 1e-6 {
        return Err(CqedError::Truncation(format!(
            "gauge transformation unitarity defect {defect:.3e}; increase n_fock"
        )));
    }
    Ok(u.dot(h).dot(&u.dag()))
}

/// Project a (photon x matter) Hamiltonian onto the two lowest matter
/// levels, returning an operator on (photon x 2).
pub fn project_two_level(h_full: &Operator) -> Result<Operator> {
    let space = &h_full.space;
    if space.n_sites() != 2 || space.site_dim(1) < 2 {
        return Err(CqedError::DimensionMismatch(
            "project_two_level expects a (photon x matter) space with >= 2 matter levels".into(),
        ));
    }
    let n_fock = space.site_dim(0);
    let m_levels = space.site_dim(1);
    let out_space = HilbertSpace::cavity_tls(n_fock);
    let dim = 2 * n_fock;
    let mut mat = Array2::<C64>::zeros((dim, dim));
    for n_r in 0..n_fock {
        for s_r in 0..2 {
            for n_c in 0..n_fock {
                for s_c in 0..2 {
                    mat[[n_r * 2 + s_r, n_c * 2 + s_c]] =
                        h_full.mat[[n_r * m_levels + s_r, n_c * m_levels + s_c]];
                }
            }
        }
    }
    Operator::new(out_space, mat)
}

/// Dicke-model parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DickeParams {
    pub n_spins: usize,
    pub omega_c: f64,
    pub omega_eg: f64,
    pub omega_r: f64,
    pub n_fock: usize,
    pub bosonized: bool,
}

/// Dicke Hamiltonian. The full-spin branch is
/// H = omega_c a^dag a + (omega_eg/2) Sum sigma_z^i
///   + Omega_R (a + a^dag) Sum sigma_x^i,
/// and the bosonized branch replaces the spin ensemble by a harmonic mode
/// with collective coupling sqrt(N) Omega_R (a + a^dag)(b + b^dag).
pub fn build_dicke(d: &DickeParams) -> Result<Operator> {
    if d.n_spins < 1 {
        return Err(CqedError::InvalidParameter {
            name: "n_spins".into(),
            detail: "need at least one spin".into(),
        });
    }
    if d.bosonized {
        let space = HilbertSpace::new(vec![d.n_fock, d.n_fock])?;
        let a = elementary_operator(&space, 0, OpKind::Annihilate)?;
        let b = elementary_operator(&space, 1, OpKind::Annihilate)?;
        let g = (d.n_spins as f64).sqrt() * d.omega_r;
        let h = a
            .dag()
            .dot(&a)
            .scale_re(d.omega_c)
            .add(&b.dag().dot(&b).scale_re(d.omega_eg))
            .add(
                &a.add(&a.dag())
                    .dot(&b.add(&b.dag()))
                    .scale_re(g),
            );
        return Ok(h);
    }
    if d
        .n_fock
        .checked_shl(d.n_spins as u32)
        .map_or(true, |x| x > 4096)
    {
        return Err(CqedError::DimensionMismatch(
            "full-spin Dicke branch limited to 2^N * n_fock <= 4096".into(),
        ));
    }
    let mut dims = vec![d.n_fock];
    dims.extend(std::iter::repeat(2).take(d.n_spins));
    let space = HilbertSpace::new(dims)?;
    let a = elementary_operator(&space, 0, OpKind::Annihilate)?;
    let x_ph = a.add(&a.dag());
    let mut h = a.dag().dot(&a).scale_re(d.omega_c);
    for i in 0..d.n_spins {
        let sz = elementary_operator(&space, 1 + i, OpKind::SigmaZ)?;
        h = h.add(&sz.scale_re(d.omega_eg / 2.0));
    }
    for i in 0..d.n_spins {
        let sx = elementary_operator(&space, 1 + i, OpKind::SigmaX)?;
        h = h.add(&x_ph.dot(&sx).scale_re(d.omega_r));
    }
    Ok(h)
}

/// Spin-only collective lowering mode b = Sum sigma_-^i / sqrt(N) and the
/// expectation of [b, b^dag] in a given spin state.
pub fn hp_commutator_expectation(n_spins: usize, state: &Ket) -> Result<f64> {
    let dims: Vec<usize> = std::iter::repeat(2).take(n_spins).collect();
    let space = HilbertSpace::new(dims)?;
    if state.space != space {
        return Err(CqedError::SpaceMismatch(format!(
            "state lives on {:?}, expected {} spins",
            state.space.dims(),
            n_spins
        )));
    }
    let mut b = Operator::zeros(space.clone());
    for i in 0..n_spins {
        let sm = elementary_operator(&space, i, OpKind::SigmaMinus)?;
        b = b.add(&sm);
    }
    let b = b.scale_re(1.0 / (n_spins as f64).sqrt());
    let comm = b.dot(&b.dag()).sub(&b.dag().dot(&b));
    Ok(comm.expect(state).re)
}

/// Normalized symmetric spin state with `n_exc` excitations shared by
/// `n_spins` spins.
pub fn symmetric_spin_state(n_spins: usize, n_exc: usize) -> Result<Ket> {
    if n_exc > n_spins {
        return Err(CqedError::InvalidParameter {
            name: "n_exc".into(),
            detail: format!("{n_exc} excitations on {n_spins} spins"),
        });
    }
    let dims: Vec<usize> = std::iter::repeat(2).take(n_spins).collect();
    let space = HilbertSpace::new(dims)?;
    let dim = space.dim();
    let mut v = ndarray::Array1::<C64>::zeros(dim);
    for idx in 0..dim {
        if (idx as u32).count_ones() as usize == n_exc {
            v[idx] = C64::new(1.0, 0.0);
        }
    }
    Ket::new(space, v).map(|k| k.normalized())
}

/// Ground-state cat superposition for the deep-strong-coupling Rabi model:
/// (|-alpha, right> - |+alpha, left>)/sqrt(2) with alpha = Omega_R/omega_c
/// and |right/left> = (|e> +/- |g>)/sqrt(2).
pub fn cat_state(p: &RabiParams) -> Result<Ket> {
    require_symmetric(p, "the cat superposition")?;
    let alpha = p.omega_r / p.omega_c;
    let space = HilbertSpace::cavity_tls(p.n_fock);
    let mode = HilbertSpace::mode(p.n_fock);
    let minus = opcore::coherent_state(&mode, 0, C64::new(-alpha, 0.0))?;
    let plus = opcore::coherent_state(&mode, 0, C64::new(alpha, 0.0))?;
    // expanding the spin parts: g amplitude (minus + plus)/2,
    // e amplitude (minus - plus)/2
    let mut v = ndarray::Array1::<C64>::zeros(space.dim());
    for n in 0..p.n_fock {
        v[n * 2] = (minus.amplitudes[n] + plus.amplitudes[n]) * 0.5;
        v[n * 2 + 1] = (minus.amplitudes[n] - plus.amplitudes[n]) * 0.5;
    }
    let ket = Ket::new(space, v)?;
    Ok(ket.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opcore::{commutator_norm, eig_hermitian, excitation_number};
    use approx::assert_abs_diff_eq;

    #[test]
    fn jcm_conserves_excitation_number() {
        let h = build_jcm(&JcmParams::resonant(0.2, 12)).unwrap();
        let n = excitation_number(&h.space).unwrap();
        assert!(commutator_norm(&n, &h).unwrap() < 1e-12);
    }

    #[test]
    fn jcm_ground_is_scalar_block() {
        for omega_r in [0.05, 0.3, 0.8] {
            let h = build_jcm(&JcmParams::resonant(omega_r, 20)).unwrap();
            let es = eig_hermitian(&h).unwrap();
            assert_abs_diff_eq!(es.values[0], -0.5, epsilon = 1e-12);
        }
    }

    #[test]
    fn jcm_analytic_blocks() {
        let p = JcmParams::resonant(0.1, 8);
        let blocks = analytic_jcm_spectrum(&p, 2).unwrap();
        assert_abs_diff_eq!(blocks[1].1, 0.6, epsilon = 1e-12);
        assert_abs_diff_eq!(blocks[1].2, 0.4, epsilon = 1e-12);
        let detuned = JcmParams {
            omega_c: 1.0,
            omega_eg: 0.8,
            omega_r: 0.1,
            n_fock: 8,
        };
        let blocks = analytic_jcm_spectrum(&detuned, 1).unwrap();
        assert_abs_diff_eq!(blocks[1].1, 0.641421356, epsilon = 1e-8);
        assert_abs_diff_eq!(blocks[1].2, 0.358578644, epsilon = 1e-8);
    }

    #[test]
    fn rabi_parity_symmetry() {
        let p = RabiParams::resonant(0.5, 16);
        let h = build_rabi(&p).unwrap();
        let pi = parity_operator(16).unwrap();
        assert!(commutator_norm(&pi, &h).unwrap() < 1e-12);
        let n = excitation_number(&h.space).unwrap();
        assert!(commutator_norm(&n, &h).unwrap() > 1e-3);
        let asym = RabiParams {
            epsilon: 0.3,
            ..p
        };
        let h = build_rabi(&asym).unwrap();
        assert!(commutator_norm(&pi, &h).unwrap() > 1e-6);
    }

    #[test]
    fn rabi_displaced_oscillator_limit() {
        let p = RabiParams {
            omega_c: 1.0,
            omega_eg: 0.0,
            omega_r: 2.0,
            epsilon: 0.0,
            n_fock: 60,
        };
        let es = eig_hermitian(&build_rabi(&p).unwrap()).unwrap();
        assert_abs_diff_eq!(es.values[0], -4.0, epsilon = 1e-9);
        assert_abs_diff_eq!(es.values[1], -4.0, epsilon = 1e-9);
    }

    #[test]
    fn polaron_isospectral_with_rabi() {
        let p = RabiParams::resonant(1.0, 50);
        let e_rabi = eig_hermitian(&build_rabi(&p).unwrap()).unwrap();
        let e_pol = eig_hermitian(&build_polaron_rabi(&p).unwrap()).unwrap();
        for k in 0..12 {
            assert_abs_diff_eq!(e_rabi.values[k], e_pol.values[k], epsilon = 1e-7);
        }
    }

    #[test]
    fn polaron_zero_coupling_is_bare() {
        let p = RabiParams::resonant(0.0, 10);
        let pol = build_polaron_rabi(&p).unwrap();
        let jcm_free = {
            let space = HilbertSpace::cavity_tls(10);
            let a = elementary_operator(&space, 0, OpKind::Annihilate).unwrap();
            let sz = elementary_operator(&space, 1, OpKind::SigmaZ).unwrap();
            a.dag().dot(&a).add(&sz.scale_re(0.5))
        };
        assert!(pol.sub(&jcm_free).max_norm() < 1e-12);
    }

    #[test]
    fn polaron_diagonal_gaussian_overlap() {
        let p = RabiParams::resonant(1.0, 40);
        let pol = build_polaron_rabi(&p).unwrap();
        // <0,g| H |0,g> = -lambda^2 - (omega_eg/2) exp(-2 lambda^2)
        let expected = -1.0 - 0.5 * (-2.0f64).exp();
        assert_abs_diff_eq!(pol.mat[[0, 0]].re, expected, epsilon = 1e-9);
    }

    #[test]
    fn coulomb_tls_matches_polaron() {
        let p = RabiParams::resonant(0.7, 30);
        let a = build_truncated_coulomb_tls(&p).unwrap();
        let b = build_polaron_rabi(&p).unwrap();
        assert!(a.sub(&b).max_norm() < 1e-12);
    }

    #[test]
    fn grwa_block_structure() {
        let p = RabiParams::resonant(1.0, 30);
        let pol = build_polaron_rabi(&p).unwrap();
        let g = grwa_project(&pol).unwrap();
        assert!(g.herm_defect() < 1e-12);
        let n = excitation_number(&g.space).unwrap();
        assert!(commutator_norm(&n, &g).unwrap() < 1e-12);
        // scalar N = 0 block: -(omega_eg/2) e^{-2 lambda^2} on top of the
        // frame constant -lambda^2 omega_c
        let expected = -1.0 - 0.5 * (-2.0f64).exp();
        assert_abs_diff_eq!(g.mat[[0, 0]].re, expected, epsilon = 1e-9);
        let zero_coupling = grwa_project(&build_polaron_rabi(&RabiParams::resonant(0.0, 12)).unwrap()).unwrap();
        let pol0 = build_polaron_rabi(&RabiParams::resonant(0.0, 12)).unwrap();
        assert!(zero_coupling.sub(&pol0).max_norm() < 1e-13);
    }

    #[test]
    fn dicke_n1_equals_rabi() {
        let d = DickeParams {
            n_spins: 1,
            omega_c: 1.0,
            omega_eg: 1.0,
            omega_r: 0.4,
            n_fock: 14,
            bosonized: false,
        };
        let hd = build_dicke(&d).unwrap();
        let hr = build_rabi(&RabiParams::resonant(0.4, 14)).unwrap();
        let mut identical = true;
        for (x, y) in hd.mat.iter().zip(hr.mat.iter()) {
            if x != y {
                identical = false;
                break;
            }
        }
        assert!(identical, "N = 1 Dicke must be bit-identical to Rabi");
    }

    #[test]
    fn bosonized_normal_mode_splitting() {
        let g = 0.01;
        let d = DickeParams {
            n_spins: 1,
            omega_c: 1.0,
            omega_eg: 1.0,
            omega_r: g,
            n_fock: 8,
            bosonized: true,
        };
        let es = eig_hermitian(&build_dicke(&d).unwrap()).unwrap();
        let splitting = es.values[2] - es.values[1];
        assert_abs_diff_eq!(splitting, 2.0 * g, epsilon = 5.0 * g * g);
    }

    #[test]
    fn hp_commutator_on_symmetric_states() {
        for &(n, nx) in &[(4usize, 0usize), (4, 1), (4, 2), (8, 1), (10, 1)] {
            let state = symmetric_spin_state(n, nx).unwrap();
            let val = hp_commutator_expectation(n, &state).unwrap();
            let expected = 1.0 - 2.0 * nx as f64 / n as f64;
            assert_abs_diff_eq!(val, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn cat_zero_coupling_reduces_to_ground_spin() {
        // at alpha = 0 both coherent branches are the vacuum and the spin
        // parts combine to |g>
        let p = RabiParams::resonant(0.0, 10);
        let cat = cat_state(&p).unwrap();
        let g0 = Ket::basis(cat.space.clone(), 0);
        assert_abs_diff_eq!(g0.inner(&cat).norm_sqr(), 1.0, epsilon = 1e-12);
    }
}
