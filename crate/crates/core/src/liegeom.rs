//! Root-system data for u(n) and for u(m)⊗1 + 1⊗u(n), Harish-Chandra flag
//! volumes, and symplectic volumes of coadjoint/adjoint orbits.
//!
//! Flag volumes are computed from the root pairings ⟨α, ϖ⟩ with the Weyl
//! vector, so the closed Γ-product formulas can be checked against them as an
//! independent route.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::eigdensity::EigGrid;
use crate::error::{Error, Result};
use crate::exactnum::{factorial, ExactVolume};

/// Relative gap threshold below which a spectrum counts as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

fn choose2(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Root of u(n) as a rational vector in the basis e_1..e_n of the toral
/// algebra; always of the form e_i − e_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootVector {
    coords: Vec<Rational64>,
}

impl RootVector {
    fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut coords = vec![Rational64::zero(); n];
        coords[i] = Rational64::one();
        coords[j] = -Rational64::one();
        Self { coords }
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.coords
    }

    /// Exact dot product against a rational vector.
    pub fn pairing(&self, other: &[Rational64]) -> Rational64 {
        assert_eq!(self.coords.len(), other.len());
        self.coords.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    /// Dot product against a real vector.
    pub fn pairing_f64(&self, other: &[f64]) -> f64 {
        assert_eq!(self.coords.len(), other.len());
        self.coords
            .iter()
            .zip(other)
            .map(|(a, b)| a.to_f64().unwrap() * b)
            .sum()
    }
}

/// Positive roots α_ij = e_i − e_j (i < j) of u(n).
pub fn positive_roots_un(n: usize) -> Vec<RootVector> {
    let mut roots = Vec::with_capacity(choose2(n));
    for i in 0..n {
        for j in (i + 1)..n {
            roots.push(RootVector::elementary(n, i, j));
        }
    }
    roots
}

/// Weyl vector ϖ = ½ Σ α over positive roots; component j is (n+1)/2 − (j+1).
pub fn weyl_vector_un(n: usize) -> Vec<Rational64> {
    (0..n)
        .map(|j| Rational64::new(n as i64 + 1 - 2 * (j as i64 + 1), 2))
        .collect()
}

fn rational64_to_big(r: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// Harish-Chandra volume of the flag manifold U(n)/T: ∏_{α>0} 2π/⟨α, ϖ⟩.
pub fn hc_flag_volume_un(n: usize) -> ExactVolume {
    let weyl = weyl_vector_un(n);
    let mut coeff = BigRational::one();
    let mut power = 0u32;
    for root in positive_roots_un(n) {
        let pairing = rational64_to_big(root.pairing(&weyl));
        coeff *= BigRational::from_integer(2.into()) / pairing;
        power += 1;
    }
    ExactVolume::new(coeff, power)
}

/// vol_HS(T_(n)) = (2π)^n.
pub fn vol_torus(n: usize) -> ExactVolume {
    ExactVolume::new(BigRational::from_integer(BigInt::from(2).pow(n as u32)), n as u32)
}

/// vol_HS(U(n)) = (2π)^{n(n+1)/2} / ∏_{j=1}^n Γ(j), the closed form.
pub fn vol_un(n: usize) -> ExactVolume {
    let power = (n * (n + 1) / 2) as u32;
    let mut denom = BigInt::one();
    for j in 1..=n {
        denom *= factorial(j - 1);
    }
    ExactVolume::new(BigRational::new(BigInt::from(2).pow(power), denom), power)
}

/// One lifted positive root of the tensor algebra, tagged by its index pair
/// (0-based), with the Weyl pairing ⟨α̃, ϖ̃⟩ stored exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorRoot {
    pub i: usize,
    pub j: usize,
    pub pairing: Rational64,
}

/// Positive roots of u(m)⊗1 + 1⊗u(n) as the disjoint union of the lifted
/// u(m) and u(n) roots; pairings (j−i)/n and (l−k)/m respectively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorRootSystem {
    pub m: usize,
    pub n: usize,
    pub roots_a: Vec<TensorRoot>,
    pub roots_b: Vec<TensorRoot>,
}

impl TensorRootSystem {
    pub fn root_count(&self) -> usize {
        self.roots_a.len() + self.roots_b.len()
    }
}

pub fn tensor_roots(m: usize, n: usize) -> TensorRootSystem {
    let mut roots_a = Vec::with_capacity(choose2(m));
    for i in 0..m {
        for j in (i + 1)..m {
            roots_a.push(TensorRoot { i, j, pairing: Rational64::new((j - i) as i64, n as i64) });
        }
    }
    let mut roots_b = Vec::with_capacity(choose2(n));
    for k in 0..n {
        for l in (k + 1)..n {
            roots_b.push(TensorRoot { i: k, j: l, pairing: Rational64::new((l - k) as i64, m as i64) });
        }
    }
    TensorRootSystem { m, n, roots_a, roots_b }
}

/// Flag volume of U(m)⊗U(n) / T_(m)⊗T_(n) via the tensor root pairings;
/// equals m^C(n,2) n^C(m,2) · flag(m) · flag(n).
pub fn vol_tensor_flag(m: usize, n: usize) -> ExactVolume {
    let sys = tensor_roots(m, n);
    let mut coeff = BigRational::one();
    let mut power = 0u32;
    for root in sys.roots_a.iter().chain(&sys.roots_b) {
        coeff *= BigRational::from_integer(2.into()) / rational64_to_big(root.pairing);
        power += 1;
    }
    ExactVolume::new(coeff, power)
}

/// vol_HS(T_(m)⊗T_(n)) = (2π)^{m+n−1}.
pub fn vol_tensor_torus(m: usize, n: usize) -> ExactVolume {
    let power = (m + n - 1) as u32;
    ExactVolume::new(BigRational::from_integer(BigInt::from(2).pow(power)), power)
}

/// vol_HS(U(m)⊗U(n)) = flag × torus.
pub fn vol_tensor_group(m: usize, n: usize) -> ExactVolume {
    vol_tensor_flag(m, n).mul(&vol_tensor_torus(m, n))
}

/// Real spectrum of a toral point with a regularity flag; regular means all
/// consecutive gaps clear [`DEGENERACY_TOL`] relative to the largest entry.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSpectrum {
    values: Vec<f64>,
    regular: bool,
}

impl OrbitSpectrum {
    pub fn new(values: Vec<f64>) -> Self {
        let scale = values.iter().fold(0.0f64, |a, &x| a.max(x.abs())).max(f64::MIN_POSITIVE);
        let regular = values.windows(2).all(|w| w[0] - w[1] > DEGENERACY_TOL * scale);
        Self { values, regular }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn regular(&self) -> bool {
        self.regular
    }
}

/// Orbit volume together with the regularity flag of the underlying point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitVolume {
    pub value: f64,
    pub regular: bool,
}

/// Symplectic volume of the U(n) adjoint orbit through diag(λ):
/// ∏_{i<j} (λ_i − λ_j)/(j − i), evaluated through the root pairings.
pub fn symp_volume_un_orbit(spectrum: &OrbitSpectrum) -> OrbitVolume {
    let n = spectrum.values().len();
    let weyl = weyl_vector_un(n);
    let mut value = 1.0;
    for root in positive_roots_un(n) {
        let num = root.pairing_f64(spectrum.values());
        let den = rational64_to_big(root.pairing(&weyl)).to_f64().unwrap();
        value *= num / den;
    }
    OrbitVolume { value, regular: spectrum.regular() }
}

/// Symplectic volume of the U(m)⊗U(n) adjoint orbit through the toral point
/// derived from an eigenvalue grid Λ, i.e. λ = tr_n(Λ)⊗1 + 1⊗tr_m(Λ).
///
/// Each lifted root contributes ⟨α̃, λ⟩ / ⟨α̃, ϖ̃⟩ with
/// ⟨α̃^(m)_ij, λ⟩ = (1/n) Σ_k (λ_ik − λ_jk) and symmetrically for the
/// u(n) factor.
pub fn symp_volume_lu_orbit(grid: &EigGrid) -> OrbitVolume {
    let (m, n) = (grid.m(), grid.n());
    let sys = tensor_roots(m, n);
    let scale = grid
        .values()
        .iter()
        .fold(0.0f64, |a, &x| a.max(x.abs()))
        .max(f64::MIN_POSITIVE);

    let mut value = 1.0;
    let mut regular = true;
    for root in &sys.roots_a {
        let num: f64 =
            (0..n).map(|k| grid.get(root.i, k) - grid.get(root.j, k)).sum::<f64>() / n as f64;
        let den = rational64_to_big(root.pairing).to_f64().unwrap();
        if num.abs() <= DEGENERACY_TOL * scale {
            regular = false;
        }
        value *= num / den;
    }
    for root in &sys.roots_b {
        let num: f64 =
            (0..m).map(|i| grid.get(i, root.i) - grid.get(i, root.j)).sum::<f64>() / m as f64;
        let den = rational64_to_big(root.pairing).to_f64().unwrap();
        if num.abs() <= DEGENERACY_TOL * scale {
            regular = false;
        }
        value *= num / den;
    }
    OrbitVolume { value, regular }
}

/// Closed form of the (2,2) local-unitary orbit volume for
/// Λ = diag(λ1..λ4): (λ1+λ2−λ3−λ4)(λ1+λ3−λ2−λ4).
pub fn symp_volume_lu_orbit_22(levels: [f64; 4]) -> f64 {
    let [l1, l2, l3, l4] = levels;
    (l1 + l2 - l3 - l4) * (l1 + l3 - l2 - l4)
}

/// dim D_LU(C^m⊗C^n) = (m²−1) + (n²−1) + (m−1)(n−1).
pub fn dim_dlu(m: usize, n: usize) -> usize {
    (m * m - 1) + (n * n - 1) + (m - 1) * (n - 1)
}

/// Exact rational twin of [`symp_volume_lu_orbit`], used to compare routes
/// with zero tolerance on dyadic inputs.
pub fn symp_volume_lu_orbit_exact(m: usize, n: usize, values: &[BigRational]) -> Result<BigRational> {
    if values.len() != m * n {
        return Err(Error::ShapeMismatch {
            expected: format!("{} grid entries", m * n),
            got: format!("{}", values.len()),
        });
    }
    let get = |i: usize, j: usize| values[i * n + j].clone();
    let sys = tensor_roots(m, n);
    let mut acc = BigRational::one();
    for root in &sys.roots_a {
        let mut num = BigRational::zero();
        for k in 0..n {
            num += get(root.i, k) - get(root.j, k);
        }
        num /= BigRational::from_integer(n.into());
        acc *= num / rational64_to_big(root.pairing);
    }
    for root in &sys.roots_b {
        let mut num = BigRational::zero();
        for i in 0..m {
            num += get(i, root.i) - get(i, root.j);
        }
        num /= BigRational::from_integer(m.into());
        acc *= num / rational64_to_big(root.pairing);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn flag_volume_examples() {
        assert_eq!(hc_flag_volume_un(1), ExactVolume::one());
        assert_eq!(hc_flag_volume_un(2), ExactVolume::new(rat(2, 1), 1));
        assert_eq!(hc_flag_volume_un(4), ExactVolume::new(rat(16, 3), 6));
    }

    #[test]
    fn group_and_torus_volumes() {
        assert_eq!(vol_un(1), ExactVolume::new(rat(2, 1), 1));
        assert_eq!(vol_un(2), ExactVolume::new(rat(8, 1), 3));
        assert_eq!(vol_torus(2), ExactVolume::new(rat(4, 1), 2));
    }

    #[test]
    fn harish_chandra_consistency() {
        // closed Γ-product form vs root-pairing product, n = 1..8
        for n in 1..=8 {
            let lhs = vol_un(n);
            let rhs = vol_torus(n).mul(&hc_flag_volume_un(n));
            assert_eq!(lhs, rhs, "mismatch at n={n}");
        }
    }

    #[test]
    fn tensor_root_counts_and_pairings() {
        let sys = tensor_roots(2, 2);
        assert_eq!(sys.root_count(), 2);
        assert_eq!(sys.roots_a[0].pairing, Rational64::new(1, 2));
        assert_eq!(sys.roots_b[0].pairing, Rational64::new(1, 2));

        let sys = tensor_roots(1, 3);
        assert!(sys.roots_a.is_empty());
        assert_eq!(sys.roots_b.len(), 3);

        let sys = tensor_roots(2, 3);
        assert_eq!(sys.root_count(), 4);
    }

    #[test]
    fn tensor_volumes() {
        assert_eq!(vol_tensor_flag(2, 2), ExactVolume::new(rat(16, 1), 2));
        assert_eq!(vol_tensor_torus(2, 2), ExactVolume::new(rat(8, 1), 3));
        assert_eq!(vol_tensor_group(2, 2), ExactVolume::new(rat(128, 1), 5));
    }

    #[test]
    fn tensor_factorization() {
        for m in [2usize, 3, 4] {
            for n in [2usize, 3, 4] {
                let lhs = vol_tensor_flag(m, n);
                let mfac = BigInt::from(m).pow(choose2(n) as u32);
                let nfac = BigInt::from(n).pow(choose2(m) as u32);
                let rhs = hc_flag_volume_un(m)
                    .mul(&hc_flag_volume_un(n))
                    .scale(&BigRational::from_integer(mfac * nfac));
                assert_eq!(lhs, rhs, "mismatch at ({m},{n})");
            }
        }
    }

    #[test]
    fn tensor_degenerates_to_single_group() {
        for n in 1..=5 {
            assert_eq!(vol_tensor_group(1, n), vol_un(n));
            assert_eq!(vol_tensor_group(n, 1), vol_un(n));
            assert_eq!(vol_tensor_flag(1, n), hc_flag_volume_un(n));
        }
    }

    #[test]
    fn un_orbit_volume_examples() {
        let v = symp_volume_un_orbit(&OrbitSpectrum::new(vec![0.7, 0.3]));
        assert!((v.value - 0.4).abs() < 1e-15 && v.regular);

        let v = symp_volume_un_orbit(&OrbitSpectrum::new(vec![0.5, 0.3, 0.2]));
        assert!((v.value - 0.003).abs() < 1e-15 && v.regular);

        let v = symp_volume_un_orbit(&OrbitSpectrum::new(vec![0.5, 0.5]));
        assert_eq!(v.value, 0.0);
        assert!(!v.regular);
    }

    #[test]
    fn lu_orbit_volume_examples() {
        let grid = EigGrid::new(2, 2, vec![0.4, 0.3, 0.2, 0.1]).unwrap();
        let v = symp_volume_lu_orbit(&grid);
        assert!((v.value - 0.08).abs() < 1e-15, "got {}", v.value);
        assert!(v.regular);
        assert!((symp_volume_lu_orbit_22([0.4, 0.3, 0.2, 0.1]) - v.value).abs() < 1e-15);

        let equal_rows = EigGrid::new(2, 2, vec![0.25, 0.25, 0.25, 0.25]).unwrap();
        let v = symp_volume_lu_orbit(&equal_rows);
        assert_eq!(v.value, 0.0);
        assert!(!v.regular);
    }

    #[test]
    fn lu_orbit_product_identity_spot() {
        let grid = EigGrid::new(2, 3, vec![0.30, 0.21, 0.15, 0.14, 0.12, 0.08]).unwrap();
        let lhs = symp_volume_lu_orbit(&grid).value;
        let rows = OrbitSpectrum::new(grid.row_sums());
        let cols = OrbitSpectrum::new(grid.col_sums());
        let rhs = symp_volume_un_orbit(&rows).value * symp_volume_un_orbit(&cols).value;
        assert!((lhs - rhs).abs() <= 1e-14 * lhs.abs().max(rhs.abs()));
    }

    #[test]
    fn cor1_matches_root_machinery_exactly() {
        let levels = [0.4f64, 0.3, 0.2, 0.1];
        let vals: Vec<BigRational> = levels.iter().map(|&x| BigRational::from_float(x).unwrap()).collect();
        let general = symp_volume_lu_orbit_exact(2, 2, &vals).unwrap();
        let closed = (vals[0].clone() + &vals[1] - &vals[2] - &vals[3])
            * (vals[0].clone() + &vals[2] - &vals[1] - &vals[3]);
        assert_eq!(general, closed);
    }

    #[test]
    fn dim_counting() {
        assert_eq!(dim_dlu(2, 2), 7);
        assert_eq!(dim_dlu(1, 4), 15);
        assert_eq!(dim_dlu(2, 3), 13);
    }

    #[test]
    fn gu_orbit_smaller_than_lu_orbit_spot() {
        let levels = [0.4f64, 0.3, 0.2, 0.1];
        let gu = symp_volume_un_orbit(&OrbitSpectrum::new(levels.to_vec())).value;
        let lu = symp_volume_lu_orbit_22(levels);
        assert!(gu < lu);
    }
}
