//! Finite-dimensional operator algebra: elementary bosonic and spin
//! operators embedded in tensor-product spaces, displacement operators,
//! deterministic Hermitian eigensolving, and commutator diagnostics.

use ndarray::linalg::kron;
use ndarray::{Array1, Array2};
use ndarray_linalg::{Eigh, Inverse, OperationNorm, UPLO};

use crate::{C64, CqedError, Result};

/// Ordered tensor-product structure of a composite Hilbert space.
///
/// The ordering of the subsystem dimensions is part of the identity of the
/// space: `[n_fock, 2]` (photon site 0, matter site 1) is the layout used by
/// every builder in this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSpace {
    dims: Vec<usize>,
}

impl HilbertSpace {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d < 1) {
            return Err(CqedError::InvalidParameter {
                name: "dims".into(),
                detail: format!("subsystem dimensions must all be >= 1, got {dims:?}"),
            });
        }
        Ok(Self { dims })
    }

    /// Single photon mode truncated at `n_fock` plus a two-level system.
    pub fn cavity_tls(n_fock: usize) -> Self {
        Self {
            dims: vec![n_fock, 2],
        }
    }

    /// Single mode alone.
    pub fn mode(n_fock: usize) -> Self {
        Self { dims: vec![n_fock] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn site_dim(&self, site: usize) -> usize {
        self.dims[site]
    }

    pub fn n_sites(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension (product of subsystem dimensions).
    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }
}

/// Elementary single-site operator kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    Annihilate,
    Number,
    SigmaX,
    SigmaY,
    SigmaZ,
    SigmaMinus,
}

impl std::fmt::Display for OpKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OpKind::Annihilate => "annihilate",
            OpKind::Number => "number",
            OpKind::SigmaX => "sigma_x",
            OpKind::SigmaY => "sigma_y",
            OpKind::SigmaZ => "sigma_z",
            OpKind::SigmaMinus => "sigma_minus",
        };
        f.write_str(s)
    }
}

/// Dense complex operator over a composite space.
#[derive(Clone, Debug)]
pub struct Operator {
    pub space: HilbertSpace,
    pub mat: Array2<C64>,
}

impl Operator {
    pub fn new(space: HilbertSpace, mat: Array2<C64>) -> Result<Self> {
        let d = space.dim();
        if mat.nrows() != d || mat.ncols() != d {
            return Err(CqedError::DimensionMismatch(format!(
                "matrix is {}x{}, space dimension is {}",
                mat.nrows(),
                mat.ncols(),
                d
            )));
        }
        Ok(Self { space, mat })
    }

    pub fn zeros(space: HilbertSpace) -> Self {
        let d = space.dim();
        Self {
            space,
            mat: Array2::zeros((d, d)),
        }
    }

    pub fn identity(space: HilbertSpace) -> Self {
        let d = space.dim();
        Self {
            space,
            mat: Array2::eye(d),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Hermitian conjugate.
    pub fn dag(&self) -> Self {
        Self {
            space: self.space.clone(),
            mat: self.mat.t().mapv(|z| z.conj()),
        }
    }

    /// Matrix product; spaces must be identical.
    pub fn dot(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space, "operator spaces differ");
        Self {
            space: self.space.clone(),
            mat: self.mat.dot(&other.mat),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            space: self.space.clone(),
            mat: self.mat.mapv(|z| z * c),
        }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space, "operator spaces differ");
        Self {
            space: self.space.clone(),
            mat: &self.mat + &other.mat,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.space, other.space, "operator spaces differ");
        Self {
            space: self.space.clone(),
            mat: &self.mat - &other.mat,
        }
    }

    /// Largest element magnitude.
    pub fn max_norm(&self) -> f64 {
        self.mat.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Hermiticity defect, max |H - H^dag|.
    pub fn herm_defect(&self) -> f64 {
        let mut defect = 0.0f64;
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let d = (self.mat[[i, j]] - self.mat[[j, i]].conj()).norm();
                if d > defect {
                    defect = d;
                }
            }
        }
        defect
    }

    /// Expectation value <psi|O|psi> for a ket on the same space.
    pub fn expect(&self, psi: &Ket) -> C64 {
        assert_eq!(self.space, psi.space, "operator and ket spaces differ");
        let v = self.mat.dot(&psi.amplitudes);
        psi.amplitudes
            .iter()
            .zip(v.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn apply(&self, psi: &Ket) -> Ket {
        assert_eq!(self.space, psi.space, "operator and ket spaces differ");
        Ket {
            space: psi.space.clone(),
            amplitudes: self.mat.dot(&psi.amplitudes),
        }
    }
}

/// State vector over a composite space.
#[derive(Clone, Debug)]
pub struct Ket {
    pub space: HilbertSpace,
    pub amplitudes: Array1<C64>,
}

impl Ket {
    pub fn new(space: HilbertSpace, amplitudes: Array1<C64>) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(CqedError::DimensionMismatch(format!(
                "ket length {} vs space dimension {}",
                amplitudes.len(),
                space.dim()
            )));
        }
        Ok(Self { space, amplitudes })
    }

    /// Computational basis state |index>.
    pub fn basis(space: HilbertSpace, index: usize) -> Self {
        let mut v = Array1::zeros(space.dim());
        v[index] = C64::new(1.0, 0.0);
        Self {
            space,
            amplitudes: v,
        }
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            space: self.space.clone(),
            amplitudes: self.amplitudes.mapv(|z| z / n),
        }
    }

    pub fn inner(&self, other: &Self) -> C64 {
        assert_eq!(self.space, other.space, "ket spaces differ");
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Eigendecomposition of a Hermitian operator with a deterministic
/// ordering and phase convention.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub space: HilbertSpace,
    /// Ascending eigenvalues.
    pub values: Array1<f64>,
    /// Column eigenvectors, matching `values`.
    pub vectors: Array2<C64>,
}

impl EigenSystem {
    pub fn state(&self, k: usize) -> Ket {
        Ket {
            space: self.space.clone(),
            amplitudes: self.vectors.column(k).to_owned(),
        }
    }

    /// Bohr frequency omega_j - omega_k.
    pub fn bohr(&self, j: usize, k: usize) -> f64 {
        self.values[j] - self.values[k]
    }
}

/// Hermitian eigendecomposition returning true column eigenvectors.
///
/// The backend hands back the eigenvectors of the transposed (row-major)
/// matrix, i.e. the complex conjugates of the eigenvectors of H; undo that
/// here so every caller sees columns satisfying H v = lambda v.
fn eigh_columns(mat: &Array2<C64>) -> Result<(Array1<f64>, Array2<C64>)> {
    let (vals, vecs) = mat.eigh(UPLO::Lower)?;
    Ok((vals, vecs.mapv(|z| z.conj())))
}

fn annihilation_matrix(n: usize) -> Array2<C64> {
    let mut a = Array2::zeros((n, n));
    for m in 1..n {
        a[[m - 1, m]] = C64::new((m as f64).sqrt(), 0.0);
    }
    a
}

fn pauli(kind: OpKind) -> Array2<C64> {
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    match kind {
        // basis ordering (|g>, |e>)
        OpKind::SigmaX => ndarray::array![[z, one], [one, z]],
        OpKind::SigmaY => ndarray::array![[z, -i], [i, z]],
        OpKind::SigmaZ => ndarray::array![[-one, z], [z, one]],
        OpKind::SigmaMinus => ndarray::array![[z, one], [z, z]],
        _ => unreachable!("pauli called with bosonic kind"),
    }
}

/// Single-site operator embedded as identity on every other site.
pub fn elementary_operator(space: &HilbertSpace, site: usize, kind: OpKind) -> Result<Operator> {
    if site >= space.n_sites() {
        return Err(CqedError::BadSiteKind {
            site,
            kind: kind.to_string(),
            detail: format!("space has {} sites", space.n_sites()),
        });
    }
    let d = space.site_dim(site);
    let local = match kind {
        OpKind::Annihilate | OpKind::Number => {
            if d < 2 {
                return Err(CqedError::BadSiteKind {
                    site,
                    kind: kind.to_string(),
                    detail: format!("bosonic kind needs dimension >= 2, site has {d}"),
                });
            }
            let a = annihilation_matrix(d);
            if kind == OpKind::Number {
                a.t().mapv(|z| z.conj()).dot(&a)
            } else {
                a
            }
        }
        _ => {
            if d != 2 {
                return Err(CqedError::BadSiteKind {
                    site,
                    kind: kind.to_string(),
                    detail: format!("spin kind needs dimension 2, site has {d}"),
                });
            }
            pauli(kind)
        }
    };
    Ok(embed(space, site, &local))
}

/// Embed a local matrix at `site` by tensoring identities around it.
pub fn embed(space: &HilbertSpace, site: usize, local: &Array2<C64>) -> Operator {
    let mut mat = Array2::eye(1);
    for (s, &d) in space.dims().iter().enumerate() {
        let factor = if s == site {
            local.clone()
        } else {
            Array2::eye(d)
        };
        mat = kron(&mat, &factor);
    }
    Operator {
        space: space.clone(),
        mat,
    }
}

/// exp(G) for anti-Hermitian G, via the Hermitian eigendecomposition of iG.
pub fn expm_antihermitian(g: &Operator) -> Result<Operator> {
    let i = C64::new(0.0, 1.0);
    let h = g.scale(i);
    let defect = h.herm_defect();
    if defect > 1e-9 * (1.0 + h.max_norm()) {
        return Err(CqedError::NonHermitian { defect });
    }
    let (vals, vecs) = eigh_columns(&h.mat)?;
    // exp(G) = exp(-i (iG)) = V exp(-i lambda) V^dag
    Ok(unitary_from_phases(&g.space, &vals, &vecs, -1.0))
}

/// exp(i theta H) for Hermitian H.
pub fn expm_hermitian_phase(h: &Operator, theta: f64) -> Result<Operator> {
    let defect = h.herm_defect();
    if defect > 1e-9 * (1.0 + h.max_norm()) {
        return Err(CqedError::NonHermitian { defect });
    }
    let (vals, vecs) = eigh_columns(&h.mat)?;
    Ok(unitary_from_phases(&h.space, &vals, &vecs, theta))
}

fn unitary_from_phases(
    space: &HilbertSpace,
    vals: &Array1<f64>,
    vecs: &Array2<C64>,
    theta: f64,
) -> Operator {
    let d = vals.len();
    let mut phased = vecs.clone();
    for k in 0..d {
        let ph = C64::new(0.0, theta * vals[k]).exp();
        for r in 0..d {
            phased[[r, k]] *= ph;
        }
    }
    Operator {
        space: space.clone(),
        mat: phased.dot(&vecs.t().mapv(|z| z.conj())),
    }
}

/// General matrix exponential by scaling-and-squaring with a [13/13] Pade
/// approximant.
pub fn expm(a: &Array2<C64>) -> Result<Array2<C64>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    let norm = a.opnorm_one()?;
    let theta13 = 5.371920351148152;
    let s = if norm > theta13 {
        (norm / theta13).log2().ceil() as i32
    } else {
        0
    };
    let a = a.mapv(|z| z / C64::new(2f64.powi(s), 0.0));

    const B: [f64; 14] = [
        64764752532480000.0,
        32382376266240000.0,
        7771770303897600.0,
        1187353796428800.0,
        129060195264000.0,
        10559470521600.0,
        670442572800.0,
        33522128640.0,
        1323241920.0,
        40840800.0,
        960960.0,
        16380.0,
        182.0,
        1.0,
    ];
    let eye: Array2<C64> = Array2::eye(n);
    let a2 = a.dot(&a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);
    let w1 = a6.mapv(|z| z * B[13]) + a4.mapv(|z| z * B[11]) + a2.mapv(|z| z * B[9]);
    let w2 = a6.mapv(|z| z * B[7]) + a4.mapv(|z| z * B[5]) + a2.mapv(|z| z * B[3])
        + eye.mapv(|z| z * B[1]);
    let u = a.dot(&(a6.dot(&w1) + w2));
    let z1 = a6.mapv(|z| z * B[12]) + a4.mapv(|z| z * B[10]) + a2.mapv(|z| z * B[8]);
    let v = a6.dot(&z1)
        + a6.mapv(|z| z * B[6])
        + a4.mapv(|z| z * B[4])
        + a2.mapv(|z| z * B[2])
        + eye.mapv(|z| z * B[0]);
    let vm_u = &v - &u;
    let vp_u = &v + &u;
    let mut f = vm_u.inv()?.dot(&vp_u);
    for _ in 0..s {
        f = f.dot(&f);
    }
    Ok(f)
}

/// Displacement operator D(alpha) = exp(alpha a^dag - alpha* a) on a
/// bosonic site, unitary within the truncation tolerance.
pub fn displacement(space: &HilbertSpace, site: usize, alpha: C64) -> Result<Operator> {
    let a = elementary_operator(space, site, OpKind::Annihilate)?;
    let g = a.dag().scale(alpha).sub(&a.scale(alpha.conj()));
    let d = expm_antihermitian(&g)?;
    let defect = d.dot(&d.dag()).sub(&Operator::identity(space.clone())).max_norm();
    if defect > 1e-6 {
        return Err(CqedError::Truncation(format!(
            "displacement unitarity defect {:.3e} at |alpha| = {:.3}; increase n_fock",
            defect,
            alpha.norm()
        )));
    }
    Ok(d)
}

/// Coherent state |alpha> = D(alpha)|0>, normalized.
pub fn coherent_state(space: &HilbertSpace, site: usize, alpha: C64) -> Result<Ket> {
    let d = displacement(space, site, alpha)?;
    let vac = Ket::basis(space.clone(), 0);
    Ok(d.apply(&vac).normalized())
}

/// Hermitian eigendecomposition with ascending values, tie-broken by the
/// index of each vector's largest-magnitude component, and each column
/// phased so that component is real and positive.
pub fn eig_hermitian(h: &Operator) -> Result<EigenSystem> {
    let defect = h.herm_defect();
    if defect > 1e-10 * (1.0 + h.max_norm()) {
        return Err(CqedError::NonHermitian { defect });
    }
    let (vals, vecs) = eigh_columns(&h.mat)?;
    let d = vals.len();
    let argmax: Vec<usize> = (0..d)
        .map(|k| {
            let col = vecs.column(k);
            let mut best = 0usize;
            let mut best_mag = 0.0f64;
            for (r, z) in col.iter().enumerate() {
                let m = z.norm();
                if m > best_mag {
                    best_mag = m;
                    best = r;
                }
            }
            best
        })
        .collect();
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        vals[i]
            .partial_cmp(&vals[j])
            .unwrap()
            .then(argmax[i].cmp(&argmax[j]))
    });
    let mut values = Array1::zeros(d);
    let mut vectors = Array2::zeros((d, d));
    for (out, &k) in order.iter().enumerate() {
        values[out] = vals[k];
        let pivot = vecs[[argmax[k], k]];
        let phase = if pivot.norm() > 0.0 {
            pivot.conj() / C64::new(pivot.norm(), 0.0)
        } else {
            C64::new(1.0, 0.0)
        };
        for r in 0..d {
            vectors[[r, out]] = vecs[[r, k]] * phase;
        }
    }
    Ok(EigenSystem {
        space: h.space.clone(),
        values,
        vectors,
    })
}

/// Max-norm of the commutator [A, B].
pub fn commutator_norm(a: &Operator, b: &Operator) -> Result<f64> {
    if a.space != b.space {
        return Err(CqedError::SpaceMismatch(format!(
            "{:?} vs {:?}",
            a.space.dims(),
            b.space.dims()
        )));
    }
    Ok(a.dot(b).sub(&b.dot(a)).max_norm())
}

/// Total excitation number a^dag a + (sigma_z + 1)/2 on a cavity+TLS space.
pub fn excitation_number(space: &HilbertSpace) -> Result<Operator> {
    let n = elementary_operator(space, 0, OpKind::Number)?;
    let sz = elementary_operator(space, 1, OpKind::SigmaZ)?;
    let id = Operator::identity(space.clone());
    Ok(n.add(&sz.add(&id).scale_re(0.5)))
}

/// Defect of H under the U(1) phase rotation generated by the excitation
/// number: || exp(i theta N) H exp(-i theta N) - H ||_max.
pub fn phase_rotation_check(theta: f64, h: &Operator) -> Result<f64> {
    let n = excitation_number(&h.space)?;
    let u = expm_hermitian_phase(&n, theta)?;
    Ok(u.dot(h).dot(&u.dag()).sub(h).max_norm())
}

/// Smallest Fock dimension honoring the truncation rule for a maximal
/// displacement amplitude.
pub fn fock_floor(alpha_max: f64) -> usize {
    (alpha_max * alpha_max + 6.0 * alpha_max + 10.0).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ladder_action() {
        let space = HilbertSpace::mode(3);
        let a = elementary_operator(&space, 0, OpKind::Annihilate).unwrap();
        let one = Ket::basis(space.clone(), 1);
        let out = a.apply(&one);
        assert_abs_diff_eq!(out.amplitudes[0].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(out.amplitudes[1].norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn sigma_minus_lowers() {
        let space = HilbertSpace::new(vec![2]).unwrap();
        let sm = elementary_operator(&space, 0, OpKind::SigmaMinus).unwrap();
        let e = Ket::basis(space.clone(), 1);
        let out = sm.apply(&e);
        assert_abs_diff_eq!(out.amplitudes[0].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn disjoint_sites_commute() {
        let space = HilbertSpace::new(vec![2, 3]).unwrap();
        let sz = elementary_operator(&space, 0, OpKind::SigmaZ).unwrap();
        let n = elementary_operator(&space, 1, OpKind::Number).unwrap();
        assert!(commutator_norm(&sz, &n).unwrap() < 1e-14);
    }

    #[test]
    fn embedding_homomorphism() {
        let space = HilbertSpace::new(vec![4, 2]).unwrap();
        let a = elementary_operator(&space, 0, OpKind::Annihilate).unwrap();
        let n = elementary_operator(&space, 0, OpKind::Number).unwrap();
        let diff = a.dag().dot(&a).sub(&n).max_norm();
        assert!(diff < 1e-14);
    }

    #[test]
    fn spin_kind_on_bosonic_site_rejected() {
        let space = HilbertSpace::mode(5);
        assert!(matches!(
            elementary_operator(&space, 0, OpKind::SigmaX),
            Err(CqedError::BadSiteKind { .. })
        ));
    }

    #[test]
    fn displacement_vacuum_overlap() {
        let space = HilbertSpace::mode(40);
        let d = displacement(&space, 0, C64::new(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(d.mat[[0, 0]].re, (-2.0f64).exp(), epsilon = 1e-8);
    }

    #[test]
    fn displacement_zero_is_identity() {
        let space = HilbertSpace::mode(10);
        let d = displacement(&space, 0, C64::new(0.0, 0.0)).unwrap();
        let defect = d.sub(&Operator::identity(space)).max_norm();
        assert!(defect < 1e-12);
    }

    #[test]
    fn displacement_unitarity_rule() {
        let alpha = 1.5f64;
        let space = HilbertSpace::mode(fock_floor(alpha));
        let d = displacement(&space, 0, C64::new(alpha, 0.0)).unwrap();
        let defect = d.dot(&d.dag()).sub(&Operator::identity(space)).max_norm();
        assert!(defect < 1e-8);
    }

    #[test]
    fn coherent_state_mean_photons() {
        let space = HilbertSpace::mode(30);
        let alpha = coherent_state(&space, 0, C64::new(1.0, 0.0)).unwrap();
        let n = elementary_operator(&space, 0, OpKind::Number).unwrap();
        assert_abs_diff_eq!(n.expect(&alpha).re, 1.0, epsilon = 1e-8);
        let vac = Ket::basis(space, 0);
        let p0 = vac.inner(&alpha).norm_sqr();
        assert_abs_diff_eq!(p0, (-1.0f64).exp(), epsilon = 1e-8);
    }

    #[test]
    fn eigh_sigma_z() {
        let space = HilbertSpace::new(vec![2]).unwrap();
        let sz = elementary_operator(&space, 0, OpKind::SigmaZ).unwrap();
        let es = eig_hermitian(&sz).unwrap();
        assert_abs_diff_eq!(es.values[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(es.values[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eigh_reconstruction() {
        // fixed pseudo-random Hermitian 8x8
        let n = 8;
        let mut mat = Array2::<C64>::zeros((n, n));
        let mut state = 0x12345678u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as f64) / ((1u64 << 31) as f64) - 1.0
        };
        for i in 0..n {
            for j in i..n {
                let z = C64::new(next(), if i == j { 0.0 } else { next() });
                mat[[i, j]] = z;
                mat[[j, i]] = z.conj();
            }
        }
        let h = Operator::new(HilbertSpace::new(vec![n]).unwrap(), mat.clone()).unwrap();
        let es = eig_hermitian(&h).unwrap();
        let lam = Array2::from_diag(&es.values.mapv(|v| C64::new(v, 0.0)));
        let rec = es.vectors.dot(&lam).dot(&es.vectors.t().mapv(|z| z.conj()));
        let defect = (&rec - &mat).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(defect < 1e-9 * h.max_norm());
    }

    #[test]
    fn non_hermitian_rejected() {
        let space = HilbertSpace::new(vec![2]).unwrap();
        let sm = elementary_operator(&space, 0, OpKind::SigmaMinus).unwrap();
        assert!(matches!(
            eig_hermitian(&sm),
            Err(CqedError::NonHermitian { .. })
        ));
    }

    #[test]
    fn expm_matches_eigendecomposition() {
        let space = HilbertSpace::mode(12);
        let a = elementary_operator(&space, 0, OpKind::Annihilate).unwrap();
        let g = a.dag().scale_re(0.7).sub(&a.scale_re(0.7));
        let via_eig = expm_antihermitian(&g).unwrap();
        let via_pade = expm(&g.mat).unwrap();
        let diff = (&via_eig.mat - &via_pade)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(diff < 1e-10);
    }
}
