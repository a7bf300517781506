//! Small dense complex linear algebra: Hermitian eigendecomposition, Kronecker
//! products, partial traces, vectorization, entropy.
//!
//! Everything here targets matrices of dimension at most ~16, so accuracy wins
//! over asymptotics: the eigensolver is a cyclic complex Jacobi iteration and
//! the QR factorization uses Householder reflections.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance for Hermiticity / positivity / trace checks, measured
/// against the Hilbert-Schmidt norm.
pub const HERMITICITY_TOL: f64 = 1e-9;

const JACOBI_MAX_SWEEPS: usize = 64;

/// Dense complex matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Build from row-major real/imag slices.
    pub fn from_parts(rows: usize, cols: usize, re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != rows * cols || im.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: format!("{} entries", rows * cols),
                got: format!("re: {}, im: {}", re.len(), im.len()),
            });
        }
        Ok(Self {
            rows,
            cols,
            data: re.iter().zip(im).map(|(&r, &i)| Complex64::new(r, i)).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * z).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix add shape");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sub shape");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix mul shape");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += aik * other[(k, j)];
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Hilbert-Schmidt norm sqrt(Tr(A†A)).
    pub fn hs_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ‖A − A†‖_HS, the distance from the Hermitian cone.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = self[(i, j)] - self[(j, i)].conj();
                dev += d.norm_sqr();
            }
        }
        dev.sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tol * self.hs_norm().max(1.0)
    }

    /// ‖U†U − I‖_HS, the distance from the unitary group.
    pub fn unitarity_deviation(&self) -> f64 {
        self.adjoint().mul(self).sub(&Self::identity(self.cols)).hs_norm()
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Kronecker product with the A-major index convention:
/// entry ((i−1)·rows(b)+k, (j−1)·cols(b)+l) = a_ij · b_kl.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Subsystem selector for bipartite operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Real spectrum sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sorts the given values descending.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).expect("non-finite eigenvalue"));
        Spectrum(values)
    }

    /// Requires the values to already be sorted descending.
    pub fn try_new_sorted(values: Vec<f64>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadSpectrum { reason: "values not sorted descending".into() });
        }
        Ok(Spectrum(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }
}

/// Trace-one positive semi-definite matrix with bipartite dimension metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: (usize, usize),
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity to [`HERMITICITY_TOL`].
    pub fn new(mat: ComplexMatrix, dims: (usize, usize)) -> Result<Self> {
        let (m, n) = dims;
        if m == 0 || n == 0 {
            return Err(Error::BadDims { reason: "dims must be positive".into() });
        }
        if !mat.is_square() || mat.rows() != m * n {
            return Err(Error::BadDims {
                reason: format!("matrix is {}x{} but dims are ({m}, {n})", mat.rows(), mat.cols()),
            });
        }
        let scale = mat.hs_norm().max(1.0);
        let dev = mat.hermiticity_deviation();
        if dev > HERMITICITY_TOL * scale {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > HERMITICITY_TOL * scale || tr.im.abs() > HERMITICITY_TOL * scale {
            return Err(Error::NotDensity { reason: format!("trace is {tr}") });
        }
        let state = Self { mat, dims };
        let spec = state.spectrum()?;
        if let Some(&min) = spec.values().last() {
            if min < -HERMITICITY_TOL {
                return Err(Error::NotDensity { reason: format!("minimum eigenvalue {min:e}") });
            }
        }
        Ok(state)
    }

    /// Skips validation; for internal constructions that are valid by unitary
    /// invariance.
    pub fn new_unchecked(mat: ComplexMatrix, dims: (usize, usize)) -> Self {
        Self { mat, dims }
    }

    pub fn mat(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.0 * self.dims.1
    }

    pub fn spectrum(&self) -> Result<Spectrum> {
        let (spec, _) = eig_hermitian(&self.mat)?;
        Ok(spec)
    }
}

/// Trace over the discarded factor of a bipartite state; `keep` selects the
/// surviving subsystem.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> ComplexMatrix {
    let (m, n) = rho.dims();
    let mat = rho.mat();
    match keep {
        Subsystem::A => ComplexMatrix::from_fn(m, m, |i, ip| {
            (0..n).map(|j| mat[(i * n + j, ip * n + j)]).sum()
        }),
        Subsystem::B => ComplexMatrix::from_fn(n, n, |j, jp| {
            (0..m).map(|i| mat[(i * n + j, i * n + jp)]).sum()
        }),
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Returns the spectrum sorted descending and the matrix of eigenvectors as
/// columns, so that `h = U diag(λ) U†`.
pub fn eig_hermitian(h: &ComplexMatrix) -> Result<(Spectrum, ComplexMatrix)> {
    if !h.is_square() {
        return Err(Error::ShapeMismatch {
            expected: "square matrix".into(),
            got: format!("{}x{}", h.rows(), h.cols()),
        });
    }
    let dev = h.hermiticity_deviation();
    if dev > HERMITICITY_TOL * h.hs_norm().max(1.0) {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let d = h.rows();
    // Work on the Hermitian part so roundoff in the input cannot leak into
    // the iteration.
    let mut a = ComplexMatrix::from_fn(d, d, |i, j| (h[(i, j)] + h[(j, i)].conj()) * 0.5);
    let mut v = ComplexMatrix::identity(d);
    let norm = a.hs_norm();
    let threshold = (1e-15 * norm.max(f64::MIN_POSITIVE)).powi(2);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    off += a[(i, j)].norm_sqr();
                }
            }
        }
        if off <= threshold {
            break;
        }
        for p in 0..d {
            for q in (p + 1)..d {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..d).collect();
    let evals: Vec<f64> = (0..d).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| evals[j].partial_cmp(&evals[i]).expect("non-finite eigenvalue"));
    let sorted: Vec<f64> = order.iter().map(|&i| evals[i]).collect();
    let vecs = ComplexMatrix::from_fn(d, d, |i, j| v[(i, order[j])]);
    Ok((Spectrum(sorted), vecs))
}

fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let d = a.rows();
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let alpha = apq / b; // phase of the off-diagonal entry
    let tau = (aqq - app) / (2.0 * b);
    let hyp = (tau * tau + 1.0).sqrt();
    let t = if tau >= 0.0 { -1.0 / (tau + hyp) } else { 1.0 / (-tau + hyp) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // A ← A·J with J = [[c, −s·α], [s·ᾱ, c]] in the (p, q) plane
    for k in 0..d {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * alpha.conj() * s;
        a[(k, q)] = akq * c - akp * alpha * s;
    }
    // A ← J†·A
    for k in 0..d {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * alpha * s;
        a[(q, k)] = aqk * c - apk * alpha.conj() * s;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    for k in 0..d {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * alpha.conj() * s;
        v[(k, q)] = vkq * c - vkp * alpha * s;
    }
}

/// QR factorization by Householder reflections; `a` must be square.
/// Returns (Q, R) with Q unitary and R upper triangular.
pub fn qr_decompose(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    assert!(a.is_square(), "qr_decompose expects a square matrix");
    let n = a.rows();
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(1) {
        let mut x_norm_sq = 0.0;
        for i in k..n {
            x_norm_sq += r[(i, k)].norm_sqr();
        }
        let x_norm = x_norm_sq.sqrt();
        if x_norm == 0.0 {
            continue;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { Complex64::new(1.0, 0.0) };
        // v = x + phase·‖x‖·e1 avoids cancellation in the leading entry
        let mut v: Vec<Complex64> = (k..n).map(|i| r[(i, k)]).collect();
        v[0] += phase * x_norm;
        let v_norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if v_norm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= v_norm;
        }
        // R ← (I − 2vv†) R on the trailing block
        for j in k..n {
            let dot: Complex64 = (0..v.len()).map(|i| v[i].conj() * r[(k + i, j)]).sum();
            for i in 0..v.len() {
                let delta = v[i] * dot * 2.0;
                r[(k + i, j)] -= delta;
            }
        }
        // Q ← Q (I − 2vv†)
        for i in 0..n {
            let dot: Complex64 = (0..v.len()).map(|l| q[(i, k + l)] * v[l]).sum();
            for l in 0..v.len() {
                let delta = dot * v[l].conj() * 2.0;
                q[(i, k + l)] -= delta;
            }
        }
    }
    (q, r)
}

/// vec(M) := Σ M_ij |ij⟩, the row-major flattening of M.
pub fn vectorize(m: &ComplexMatrix) -> Vec<Complex64> {
    m.data().to_vec()
}

/// Hilbert-Schmidt inner product ⟨X, Y⟩ = Tr(X†Y); conjugate-linear in the
/// first argument.
pub fn hs_inner(x: &ComplexMatrix, y: &ComplexMatrix) -> Result<Complex64> {
    if (x.rows(), x.cols()) != (y.rows(), y.cols()) {
        return Err(Error::ShapeMismatch {
            expected: format!("{}x{}", x.rows(), x.cols()),
            got: format!("{}x{}", y.rows(), y.cols()),
        });
    }
    Ok(x.data().iter().zip(y.data()).map(|(a, b)| a.conj() * b).sum())
}

/// Von Neumann entropy −Σ λ ln λ in nats, with 0·ln 0 := 0.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let spec = rho.spectrum()?;
    if let Some(&min) = spec.values().last() {
        if min < -HERMITICITY_TOL {
            return Err(Error::BadSpectrum { reason: format!("negative eigenvalue {min:e}") });
        }
    }
    Ok(spec.values().iter().filter(|&&l| l > 0.0).map(|&l| -l * l.ln()).sum())
}
