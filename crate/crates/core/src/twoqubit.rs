//! Two-qubit Bloch algebra, X-state eigenvalues, the twelve local-unitary
//! invariants, and the local-diagonalizability decision procedure.
//!
//! Conventions: A-major flattening throughout, so σ_a⊗1 acts on qubit A and
//! the Bloch vector r belongs to A. The diagonal-state triple (a_z, b_z, r_zz)
//! keeps the classical component formulas
//!   a_z = λ1−λ2+λ3−λ4,  b_z = λ1+λ2−λ3−λ4,  r_zz = λ1−λ2−λ3+λ4,
//! under which a diagonal state has r(Λ) = b_z·e3 and s(Λ) = a_z·e3.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, kron, ComplexMatrix, DensityMatrix, Spectrum};

/// Default relative tolerance for invariant comparison and the decision
/// procedure; exposed as a CLI flag.
pub const DEFAULT_DECISION_TOL: f64 = 1e-8;

/// Absolute floor under which invariant entries are compared directly.
const ABS_FLOOR: f64 = 1e-12;

/// Below this scale the state counts as non-generic and the decision falls
/// back to the geometric route.
const GENERIC_TOL: f64 = 1e-6;

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_parts(2, 2, &[0.0, 1.0, 1.0, 0.0], &[0.0; 4]).unwrap()
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_parts(2, 2, &[0.0; 4], &[0.0, -1.0, 1.0, 0.0]).unwrap()
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_parts(2, 2, &[1.0, 0.0, 0.0, -1.0], &[0.0; 4]).unwrap()
}

fn paulis() -> [ComplexMatrix; 3] {
    [sigma_x(), sigma_y(), sigma_z()]
}

/// Cached two-qubit Pauli operators: σ_a⊗1 (3), 1⊗σ_b (3), σ_a⊗σ_b (9).
fn pauli_ops() -> &'static (Vec<ComplexMatrix>, Vec<ComplexMatrix>, Vec<ComplexMatrix>) {
    static OPS: OnceLock<(Vec<ComplexMatrix>, Vec<ComplexMatrix>, Vec<ComplexMatrix>)> =
        OnceLock::new();
    OPS.get_or_init(|| {
        let sig = paulis();
        let i2 = ComplexMatrix::identity(2);
        let a_ops: Vec<_> = sig.iter().map(|s| kron(s, &i2)).collect();
        let b_ops: Vec<_> = sig.iter().map(|s| kron(&i2, s)).collect();
        let mut ab_ops = Vec::with_capacity(9);
        for sa in &sig {
            for sb in &sig {
                ab_ops.push(kron(sa, sb));
            }
        }
        (a_ops, b_ops, ab_ops)
    })
}

fn trace_prod(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let n = a.rows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Two-qubit Bloch decomposition (r, s, T).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochForm {
    pub r: [f64; 3],
    pub s: [f64; 3],
    pub t: [[f64; 3]; 3],
}

/// Pauli projections r_a = Tr[ρ(σ_a⊗1)], s_b = Tr[ρ(1⊗σ_b)],
/// T_ab = Tr[ρ(σ_a⊗σ_b)].
pub fn bloch_decompose(rho: &DensityMatrix) -> Result<BlochForm> {
    if rho.dims() != (2, 2) {
        return Err(Error::BadDims {
            reason: format!("bloch decomposition needs dims (2, 2), got {:?}", rho.dims()),
        });
    }
    let (a_ops, b_ops, ab_ops) = pauli_ops();
    let mut r = [0.0; 3];
    let mut s = [0.0; 3];
    let mut t = [[0.0; 3]; 3];
    for a in 0..3 {
        r[a] = trace_prod(rho.mat(), &a_ops[a]).re;
        s[a] = trace_prod(rho.mat(), &b_ops[a]).re;
        for b in 0..3 {
            t[a][b] = trace_prod(rho.mat(), &ab_ops[3 * a + b]).re;
        }
    }
    Ok(BlochForm { r, s, t })
}

/// ρ = ¼(1⊗1 + r·σ⊗1 + 1⊗s·σ + Σ T_ab σ_a⊗σ_b); fails if the result is not
/// a valid state.
pub fn bloch_compose(form: &BlochForm) -> Result<DensityMatrix> {
    let (a_ops, b_ops, ab_ops) = pauli_ops();
    let mut mat = ComplexMatrix::identity(4);
    for a in 0..3 {
        mat = mat.add(&a_ops[a].scale(Complex64::new(form.r[a], 0.0)));
        mat = mat.add(&b_ops[a].scale(Complex64::new(form.s[a], 0.0)));
        for b in 0..3 {
            mat = mat.add(&ab_ops[3 * a + b].scale(Complex64::new(form.t[a][b], 0.0)));
        }
    }
    DensityMatrix::new(mat.scale(Complex64::new(0.25, 0.0)), (2, 2))
}

/// The SO(3) rotation covered by u ∈ SU(2): O_ab = ½ Tr[σ_a u σ_b u†].
pub fn su2_to_so3(u: &ComplexMatrix) -> Result<[[f64; 3]; 3]> {
    if u.rows() != 2 || u.cols() != 2 {
        return Err(Error::ShapeMismatch {
            expected: "2x2".into(),
            got: format!("{}x{}", u.rows(), u.cols()),
        });
    }
    let dev = u.unitarity_deviation();
    if dev > 1e-9 {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    if (det - Complex64::new(1.0, 0.0)).norm() > 1e-8 {
        return Err(Error::InvalidParameter(format!("determinant {det} is not 1")));
    }
    let sig = paulis();
    let udag = u.adjoint();
    let mut o = [[0.0; 3]; 3];
    for (b, sb) in sig.iter().enumerate() {
        let conj = u.mul(sb).mul(&udag);
        for (a, sa) in sig.iter().enumerate() {
            o[a][b] = 0.5 * trace_prod(sa, &conj).re;
        }
    }
    Ok(o)
}

/// Parameters (a_z, b_z, r_zz) of a diagonal two-qubit state; under the
/// A-major flattening, diag(λ1..λ4) = ¼(1 + b_z σz⊗1 + a_z 1⊗σz + r_zz σz⊗σz).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagTriple {
    pub a_z: f64,
    pub b_z: f64,
    pub r_zz: f64,
}

pub fn diag_triple(levels: &[f64; 4]) -> DiagTriple {
    let [l1, l2, l3, l4] = *levels;
    DiagTriple {
        a_z: l1 - l2 + l3 - l4,
        b_z: l1 + l2 - l3 - l4,
        r_zz: l1 - l2 - l3 + l4,
    }
}

pub fn triple_to_spectrum(t: &DiagTriple) -> [f64; 4] {
    let DiagTriple { a_z: a, b_z: b, r_zz: r } = *t;
    [
        (1.0 + a + b + r) / 4.0,
        (1.0 - a + b - r) / 4.0,
        (1.0 + a - b - r) / 4.0,
        (1.0 - a - b + r) / 4.0,
    ]
}

/// The twelve LU invariants, k = 0, 1, 2:
/// ⟨r|(TTᵗ)^k|r⟩, ⟨s|(TᵗT)^k|s⟩, ⟨r|(TTᵗ)^k T|s⟩, Tr[(TTᵗ)^{k+1}].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InvariantVector {
    pub r_family: [f64; 3],
    pub s_family: [f64; 3],
    pub cross_family: [f64; 3],
    pub trace_family: [f64; 3],
}

impl InvariantVector {
    pub fn as_array(&self) -> [f64; 12] {
        let mut out = [0.0; 12];
        out[..3].copy_from_slice(&self.r_family);
        out[3..6].copy_from_slice(&self.s_family);
        out[6..9].copy_from_slice(&self.cross_family);
        out[9..].copy_from_slice(&self.trace_family);
        out
    }

    /// Componentwise agreement: relative `tol` with absolute floor 1e−12.
    pub fn agrees(&self, other: &InvariantVector, tol: f64) -> bool {
        self.as_array()
            .iter()
            .zip(other.as_array().iter())
            .all(|(&x, &y)| (x - y).abs() <= ABS_FLOOR.max(tol * x.abs().max(y.abs())))
    }
}

// 3×3 real helpers

fn mat3_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn mat3_transpose(a: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

fn mat3_vec(a: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: &[f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

fn trace3(a: &[[f64; 3]; 3]) -> f64 {
    a[0][0] + a[1][1] + a[2][2]
}

fn invariants_from_bloch(b: &BlochForm) -> InvariantVector {
    let tt = mat3_mul(&b.t, &mat3_transpose(&b.t)); // TTᵗ
    let ttt = mat3_mul(&mat3_transpose(&b.t), &b.t); // TᵗT
    let ts = mat3_vec(&b.t, &b.s);

    let mut r_family = [0.0; 3];
    let mut s_family = [0.0; 3];
    let mut cross_family = [0.0; 3];
    let mut trace_family = [0.0; 3];

    let mut rk = b.r; // (TTᵗ)^k r built up incrementally
    let mut sk = b.s;
    let mut ck = ts;
    let mut pk = tt; // (TTᵗ)^{k+1}
    for k in 0..3 {
        r_family[k] = dot3(&b.r, &rk);
        s_family[k] = dot3(&b.s, &sk);
        cross_family[k] = dot3(&b.r, &ck);
        trace_family[k] = trace3(&pk);
        if k < 2 {
            rk = mat3_vec(&tt, &rk);
            sk = mat3_vec(&ttt, &sk);
            ck = mat3_vec(&tt, &ck);
            pk = mat3_mul(&pk, &tt);
        }
    }
    InvariantVector { r_family, s_family, cross_family, trace_family }
}

/// The twelve invariants of a two-qubit state.
pub fn lu_invariants(rho: &DensityMatrix) -> Result<InvariantVector> {
    Ok(invariants_from_bloch(&bloch_decompose(rho)?))
}

/// Analytic invariants of the diagonal state with the given triple, which has
/// r = b_z·e3, s = a_z·e3, T = r_zz·e3e3ᵗ.
pub fn triple_invariants(t: &DiagTriple) -> InvariantVector {
    let (a, b, r) = (t.a_z, t.b_z, t.r_zz);
    let r2 = r * r;
    InvariantVector {
        r_family: [b * b, b * b * r2, b * b * r2 * r2],
        s_family: [a * a, a * a * r2, a * a * r2 * r2],
        cross_family: [a * b * r, a * b * r * r2, a * b * r * r2 * r2],
        trace_family: [r2, r2 * r2, r2 * r2 * r2],
    }
}

/// True iff all twelve invariants agree within `tol` (relative, with an
/// absolute floor of 1e−12).
pub fn lu_equivalent(a: &DensityMatrix, b: &DensityMatrix, tol: f64) -> Result<bool> {
    Ok(lu_invariants(a)?.agrees(&lu_invariants(b)?, tol))
}

/// How a local-diagonalizability decision was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecisionMethod {
    Invariants,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiagDecision {
    pub locally_diagonalizable: bool,
    pub witness: Option<DiagTriple>,
    pub method: DecisionMethod,
}

fn permutations4() -> [[usize; 4]; 24] {
    let mut out = [[0usize; 4]; 24];
    let mut idx = 0;
    for a in 0..4 {
        for b in 0..4 {
            if b == a {
                continue;
            }
            for c in 0..4 {
                if c == a || c == b {
                    continue;
                }
                out[idx] = [a, b, c, 6 - a - b - c];
                idx += 1;
            }
        }
    }
    out
}

/// Singular values (descending) and leading singular pair of a real 3×3
/// matrix, via the Hermitian eigenproblem of [[0, T], [Tᵗ, 0]] whose
/// eigenvalues are ±σ_i; this keeps small singular values at absolute
/// accuracy instead of squaring them away.
fn svd3(t: &[[f64; 3]; 3]) -> ([f64; 3], [f64; 3], [f64; 3]) {
    let aug = ComplexMatrix::from_fn(6, 6, |i, j| {
        let v = if i < 3 && j >= 3 {
            t[i][j - 3]
        } else if i >= 3 && j < 3 {
            t[j][i - 3]
        } else {
            0.0
        };
        Complex64::new(v, 0.0)
    });
    let (spec, vecs) = eig_hermitian(&aug).expect("augmented matrix is symmetric");
    let sing = [spec.values()[0].max(0.0), spec.values()[1].max(0.0), spec.values()[2].max(0.0)];
    // eigenvector of +σ1 is (u1; v1)/√2 with T v1 = σ1 u1
    let mut u1 = [vecs[(0, 0)].re, vecs[(1, 0)].re, vecs[(2, 0)].re];
    let mut v1 = [vecs[(3, 0)].re, vecs[(4, 0)].re, vecs[(5, 0)].re];
    let (un, vn) = (norm3(&u1), norm3(&v1));
    if un > 0.0 && vn > 0.0 {
        for k in 0..3 {
            u1[k] /= un;
            v1[k] /= vn;
        }
    }
    (sing, u1, v1)
}

fn geometric_decision(
    bloch: &BlochForm,
    levels: &[f64; 4],
    sing: [f64; 3],
    u1: [f64; 3],
    v1: [f64; 3],
    tol: f64,
) -> DiagDecision {
    let reject = DiagDecision {
        locally_diagonalizable: false,
        witness: None,
        method: DecisionMethod::Geometric,
    };
    if sing[1] > tol || sing[2] > tol {
        return reject;
    }
    let r_norm = norm3(&bloch.r);
    let s_norm = norm3(&bloch.s);
    let unit = |v: &[f64; 3], n: f64| [v[0] / n, v[1] / n, v[2] / n];
    let u = if sing[0] > tol {
        u1
    } else if r_norm > tol {
        unit(&bloch.r, r_norm)
    } else {
        [0.0, 0.0, 1.0]
    };
    let v = if sing[0] > tol {
        v1
    } else if s_norm > tol {
        unit(&bloch.s, s_norm)
    } else {
        [0.0, 0.0, 1.0]
    };
    if r_norm > tol {
        let proj = dot3(&bloch.r, &u);
        let perp: [f64; 3] =
            [bloch.r[0] - proj * u[0], bloch.r[1] - proj * u[1], bloch.r[2] - proj * u[2]];
        if norm3(&perp) > tol {
            return reject;
        }
    }
    if s_norm > tol {
        let proj = dot3(&bloch.s, &v);
        let perp: [f64; 3] =
            [bloch.s[0] - proj * v[0], bloch.s[1] - proj * v[1], bloch.s[2] - proj * v[2]];
        if norm3(&perp) > tol {
            return reject;
        }
    }
    let b0 = dot3(&bloch.r, &u);
    let a0 = dot3(&bloch.s, &v);
    let t0 = dot3(&u, &mat3_vec(&bloch.t, &v));
    // u → −u flips (b, t); v → −v flips (a, t)
    for (sa, sb, st) in [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)]
    {
        let witness = DiagTriple { a_z: sa * a0, b_z: sb * b0, r_zz: st * t0 };
        let cand = triple_to_spectrum(&witness);
        if cand.iter().any(|&x| x < -tol) {
            continue;
        }
        let mut sorted = cand;
        sorted.sort_by(|x, y| y.partial_cmp(x).unwrap());
        if sorted.iter().zip(levels).all(|(&x, &y)| (x - y).abs() <= tol.max(ABS_FLOOR)) {
            return DiagDecision {
                locally_diagonalizable: true,
                witness: Some(witness),
                method: DecisionMethod::Geometric,
            };
        }
    }
    reject
}

/// Decides whether ρ is diagonalizable by a local conjugation U_A⊗U_B.
///
/// Eigenvalues are LU-invariant, so ρ is locally diagonalizable iff it is
/// LU-equivalent to some ordering of its own spectrum. Generic states are
/// decided by matching the twelve invariants against each (deduplicated)
/// ordering of the spectrum; non-generic states fall back to the geometric
/// characterization of the Bloch data (rank-one T with aligned r and s plus
/// a spectrum-consistent sign pattern).
pub fn is_locally_diagonalizable(rho: &DensityMatrix, tol: f64) -> Result<DiagDecision> {
    let bloch = bloch_decompose(rho)?;
    let spec = rho.spectrum()?;
    let levels: [f64; 4] =
        spec.values().try_into().expect("two-qubit spectrum has four values");
    let (sing, u1, v1) = svd3(&bloch.t);
    let r_norm = norm3(&bloch.r);
    let s_norm = norm3(&bloch.s);
    let generic = r_norm > GENERIC_TOL
        && s_norm > GENERIC_TOL
        && sing[0] > GENERIC_TOL
        && sing[0] - sing[1] > GENERIC_TOL;
    if !generic {
        return Ok(geometric_decision(&bloch, &levels, sing, u1, v1, tol));
    }

    let inv = invariants_from_bloch(&bloch);
    let mut seen: Vec<[f64; 12]> = Vec::with_capacity(24);
    for perm in permutations4() {
        let ordered = [levels[perm[0]], levels[perm[1]], levels[perm[2]], levels[perm[3]]];
        let witness = diag_triple(&ordered);
        let cand = triple_invariants(&witness);
        let key = cand.as_array();
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        if inv.agrees(&cand, tol) {
            return Ok(DiagDecision {
                locally_diagonalizable: true,
                witness: Some(witness),
                method: DecisionMethod::Invariants,
            });
        }
    }
    Ok(DiagDecision {
        locally_diagonalizable: false,
        witness: None,
        method: DecisionMethod::Invariants,
    })
}

/// Two-qubit X-state: diagonal plus anti-diagonal entries only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    diag: [f64; 4],
    rho14: Complex64,
    rho23: Complex64,
}

impl XState {
    pub fn new(diag: [f64; 4], rho14: Complex64, rho23: Complex64) -> Result<Self> {
        let sum: f64 = diag.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::NotDensity { reason: format!("diagonal sums to {sum}") });
        }
        if diag.iter().any(|&d| d < -1e-12) {
            return Err(Error::NotDensity { reason: "negative diagonal entry".into() });
        }
        if diag[1] * diag[2] < rho23.norm_sqr() - 1e-12 {
            return Err(Error::NotDensity { reason: "ρ22·ρ33 < |ρ23|²".into() });
        }
        if diag[0] * diag[3] < rho14.norm_sqr() - 1e-12 {
            return Err(Error::NotDensity { reason: "ρ11·ρ44 < |ρ14|²".into() });
        }
        Ok(Self { diag, rho14, rho23 })
    }

    pub fn diag(&self) -> [f64; 4] {
        self.diag
    }

    pub fn rho14(&self) -> Complex64 {
        self.rho14
    }

    pub fn rho23(&self) -> Complex64 {
        self.rho23
    }

    pub fn compose(&self) -> Result<DensityMatrix> {
        let mut mat = ComplexMatrix::zeros(4, 4);
        for k in 0..4 {
            mat[(k, k)] = Complex64::new(self.diag[k], 0.0);
        }
        mat[(0, 3)] = self.rho14;
        mat[(3, 0)] = self.rho14.conj();
        mat[(1, 2)] = self.rho23;
        mat[(2, 1)] = self.rho23.conj();
        DensityMatrix::new(mat, (2, 2))
    }
}

/// Closed-form eigenvalues of an X-state.
pub fn xstate_eigenvalues(x: &XState) -> Spectrum {
    let [d1, d2, d3, d4] = x.diag;
    let a_z = d1 - d2 + d3 - d4;
    let b_z = d1 + d2 - d3 - d4;
    let r_zz = d1 - d2 - d3 + d4;
    let r_xx = 2.0 * (x.rho14.re + x.rho23.re);
    let r_yy = 2.0 * (x.rho23.re - x.rho14.re);
    let r_xy = -2.0 * (x.rho14.im + x.rho23.im);
    let r_yx = -2.0 * (x.rho14.im - x.rho23.im);

    let outer = ((a_z + b_z).powi(2) + (r_xx - r_yy).powi(2) + (r_xy + r_yx).powi(2)).sqrt();
    let inner = ((a_z - b_z).powi(2) + (r_xx + r_yy).powi(2) + (r_xy - r_yx).powi(2)).sqrt();
    Spectrum::from_unsorted(vec![
        0.25 * ((1.0 + r_zz) + outer),
        0.25 * ((1.0 + r_zz) - outer),
        0.25 * ((1.0 - r_zz) + inner),
        0.25 * ((1.0 - r_zz) - inner),
    ])
}
