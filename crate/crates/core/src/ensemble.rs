//! Random sampling (Haar unitaries, Dirichlet/simplex, random states),
//! two-qubit marginal-problem checks, discrete Weyl bases, and marginal
//! mixing.

use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, Gamma, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, kron, vectorize, ComplexMatrix, DensityMatrix, Spectrum,
};

/// Slack tolerance for the Bravyi marginal inequalities.
pub const BRAVYI_SLACK_TOL: f64 = 1e-10;

/// Counter-based deterministic RNG stream: identical (seed, index) pairs
/// produce identical output sequences, and distinct indices are independent.
#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
    seed: u64,
    index: u64,
}

impl RngStream {
    pub fn new(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { rng, seed, index }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn index(&self) -> u64 {
        self.index
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// Haar-random unitary by QR of a complex Ginibre matrix with the R-diagonal
/// phase correction.
pub fn haar_unitary(n: usize, rng: &mut RngStream) -> ComplexMatrix {
    assert!(n >= 1, "haar_unitary needs n >= 1");
    let g = ComplexMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let (mut q, r) = crate::linalg::qr_decompose(&g);
    for j in 0..n {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Dirichlet(α) sample on the probability simplex via normalized Gamma draws.
pub fn sample_dirichlet(alphas: &[f64], rng: &mut RngStream) -> Result<Vec<f64>> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter("need at least one alpha".into()));
    }
    if alphas.iter().any(|&a| a <= 0.0 || !a.is_finite()) {
        return Err(Error::InvalidParameter("all alphas must be positive and finite".into()));
    }
    let gammas: Vec<Gamma<f64>> = alphas
        .iter()
        .map(|&a| Gamma::new(a, 1.0).map_err(|e| Error::InvalidParameter(e.to_string())))
        .collect::<Result<_>>()?;
    let mut out = vec![0.0f64; alphas.len()];
    loop {
        let mut sum = 0.0;
        for (x, g) in out.iter_mut().zip(&gammas) {
            *x = rng.sample(*g);
            sum += *x;
        }
        if sum > 0.0 && sum.is_finite() {
            for x in out.iter_mut() {
                *x /= sum;
            }
            return Ok(out);
        }
    }
}

/// Uniform point on the simplex (Dirichlet(1,…,1)) written into `buf`.
pub(crate) fn sample_uniform_simplex_into(buf: &mut [f64], rng: &mut RngStream) {
    loop {
        let mut sum = 0.0;
        for x in buf.iter_mut() {
            let e: f64 = rng.sample(Exp1);
            *x = e;
            sum += e;
        }
        if sum > 0.0 {
            for x in buf.iter_mut() {
                *x /= sum;
            }
            return;
        }
    }
}

/// Random bipartite state from the Hilbert-Schmidt-induced measure:
/// G G†/Tr(G G†) with G a square Ginibre matrix.
pub fn random_density_hs(m: usize, n: usize, rng: &mut RngStream) -> DensityMatrix {
    let d = m * n;
    let g = ComplexMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let rho = g.mul(&g.adjoint());
    let tr = rho.trace().re;
    DensityMatrix::new_unchecked(rho.scale(Complex64::new(1.0 / tr, 0.0)), (m, n))
}

/// Random locally diagonalizable state (U_A⊗U_B) Λ (U_A⊗U_B)† with Λ uniform
/// on the simplex and Haar local unitaries.
pub fn random_lu_diagonalizable_state(m: usize, n: usize, rng: &mut RngStream) -> DensityMatrix {
    let mut lam = vec![0.0f64; m * n];
    sample_uniform_simplex_into(&mut lam, rng);
    let ua = haar_unitary(m, rng);
    let ub = haar_unitary(n, rng);
    let u = kron(&ua, &ub);
    let diag = ComplexMatrix::from_fn(m * n, m * n, |i, j| {
        if i == j { Complex64::new(lam[i], 0.0) } else { Complex64::new(0.0, 0.0) }
    });
    DensityMatrix::new_unchecked(u.mul(&diag).mul(&u.adjoint()), (m, n))
}

fn validate_bravyi_inputs(spectrum: &[f64], lambda_a: f64, lambda_b: f64) -> Result<()> {
    if spectrum.len() != 4 {
        return Err(Error::BadSpectrum { reason: format!("need 4 values, got {}", spectrum.len()) });
    }
    if spectrum.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::BadSpectrum { reason: "spectrum not sorted descending".into() });
    }
    if spectrum.iter().any(|&l| l < -BRAVYI_SLACK_TOL) {
        return Err(Error::BadSpectrum { reason: "negative eigenvalue".into() });
    }
    let sum: f64 = spectrum.iter().sum();
    if (sum - 1.0).abs() > 1e-8 {
        return Err(Error::BadSpectrum { reason: format!("spectrum sums to {sum}") });
    }
    for (name, l) in [("lambda_a", lambda_a), ("lambda_b", lambda_b)] {
        if !(-BRAVYI_SLACK_TOL..=0.5 + BRAVYI_SLACK_TOL).contains(&l) {
            return Err(Error::InvalidParameter(format!("{name} = {l} outside [0, 1/2]")));
        }
    }
    Ok(())
}

/// Slacks of the three Bravyi inequalities for a sorted two-qubit spectrum
/// and the minimal marginal eigenvalues; nonnegative slack means satisfied:
///   min(λ_A, λ_B) ≥ λ3 + λ4,
///   λ_A + λ_B ≥ λ2 + λ3 + 2λ4,
///   |λ_A − λ_B| ≤ min(λ1 − λ3, λ2 − λ4).
/// (Product states saturate the first two.)
pub fn bravyi_slacks(spectrum: &[f64], lambda_a: f64, lambda_b: f64) -> Result<[f64; 3]> {
    validate_bravyi_inputs(spectrum, lambda_a, lambda_b)?;
    let (l1, l2, l3, l4) = (spectrum[0], spectrum[1], spectrum[2], spectrum[3]);
    Ok([
        lambda_a.min(lambda_b) - (l3 + l4),
        lambda_a + lambda_b - (l2 + l3 + 2.0 * l4),
        (l1 - l3).min(l2 - l4) - (lambda_a - lambda_b).abs(),
    ])
}

/// True iff all three Bravyi inequalities hold with slack ≥ −1e−10.
pub fn bravyi_check(spectrum: &[f64], lambda_a: f64, lambda_b: f64) -> Result<bool> {
    let slacks = bravyi_slacks(spectrum, lambda_a, lambda_b)?;
    Ok(slacks.iter().all(|&s| s >= -BRAVYI_SLACK_TOL))
}

/// Discrete Weyl (clock-and-shift) unitary basis W_{a,b} = X^a Z^b with
/// X|k⟩ = |k+1 mod d⟩ and Z|k⟩ = ω^k|k⟩, ω = e^{2πi/d}; indexed (a,b) ↦ a·d+b.
#[derive(Debug, Clone)]
pub struct WeylBasis {
    d: usize,
    unitaries: Vec<ComplexMatrix>,
}

impl WeylBasis {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn unitaries(&self) -> &[ComplexMatrix] {
        &self.unitaries
    }

    pub fn get(&self, a: usize, b: usize) -> &ComplexMatrix {
        &self.unitaries[a * self.d + b]
    }
}

pub fn weyl_basis(d: usize) -> WeylBasis {
    assert!(d >= 1, "weyl_basis needs d >= 1");
    let omega = 2.0 * std::f64::consts::PI / d as f64;
    let mut unitaries = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let mut w = ComplexMatrix::zeros(d, d);
            for k in 0..d {
                // W_{a,b}|k⟩ = ω^{bk} |k+a mod d⟩
                let phase = omega * (b * k) as f64;
                w[((k + a) % d, k)] = Complex64::new(phase.cos(), phase.sin());
            }
            unitaries.push(w);
        }
    }
    WeylBasis { d, unitaries }
}

fn phase_normalize(col: &mut [Complex64]) {
    if let Some(lead) = col.iter().find(|z| z.norm() > 1e-12) {
        let phase = lead.conj() / lead.norm();
        for z in col.iter_mut() {
            *z *= phase;
        }
    }
}

fn lex_less(a: &[Complex64], b: &[Complex64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.re.partial_cmp(&y.re).unwrap().then(x.im.partial_cmp(&y.im).unwrap()) {
            std::cmp::Ordering::Equal => continue,
            ord => return ord,
        }
    }
    std::cmp::Ordering::Equal
}

/// Global unitary V mapping the eigenvectors of a d×d-bipartite state to the
/// maximally entangled Weyl basis vec(W_j)/√d, and the mixed state ρ' = VρV†
/// whose two marginals are both 1_d/d.
///
/// V is deterministic: eigenvectors are sorted by descending eigenvalue with
/// ties broken lexicographically after normalizing the first nonzero
/// component to be real positive.
pub fn mix_marginals(rho: &DensityMatrix) -> Result<(DensityMatrix, ComplexMatrix)> {
    let (m, n) = rho.dims();
    if m != n {
        return Err(Error::BadDims { reason: format!("need m = n = d, got ({m}, {n})") });
    }
    let d = m;
    let dd = d * d;
    let (spec, vecs) = eig_hermitian(rho.mat())?;

    let mut eigenpairs: Vec<(f64, Vec<Complex64>)> = (0..dd)
        .map(|j| {
            let mut col: Vec<Complex64> = (0..dd).map(|i| vecs[(i, j)]).collect();
            phase_normalize(&mut col);
            (spec.values()[j], col)
        })
        .collect();
    eigenpairs.sort_by(|(la, va), (lb, vb)| {
        lb.partial_cmp(la).unwrap().then_with(|| lex_less(va, vb))
    });

    let wb = weyl_basis(d);
    let scale = 1.0 / (d as f64).sqrt();
    let mut v = ComplexMatrix::zeros(dd, dd);
    for (j, (_, psi)) in eigenpairs.iter().enumerate() {
        let target: Vec<Complex64> =
            vectorize(&wb.unitaries()[j]).into_iter().map(|z| z * scale).collect();
        for r in 0..dd {
            for c in 0..dd {
                v[(r, c)] += target[r] * psi[c].conj();
            }
        }
    }
    let mixed = v.mul(rho.mat()).mul(&v.adjoint());
    Ok((DensityMatrix::new(mixed, (d, d))?, v))
}

/// Maximum of mutual information along a global unitary orbit with spectrum
/// Λ on a d×d-bipartite space: 2 ln d − S(Λ).
pub fn max_mutual_information(spectrum: &Spectrum, d: usize) -> Result<f64> {
    if spectrum.len() != d * d {
        return Err(Error::BadSpectrum {
            reason: format!("need d² = {} values, got {}", d * d, spectrum.len()),
        });
    }
    if let Some(&min) = spectrum.values().last() {
        if min < -1e-9 {
            return Err(Error::BadSpectrum { reason: format!("negative eigenvalue {min:e}") });
        }
    }
    let entropy: f64 = spectrum.values().iter().filter(|&&l| l > 0.0).map(|&l| -l * l.ln()).sum();
    Ok(2.0 * (d as f64).ln() - entropy)
}
