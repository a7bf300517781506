//! Exact arithmetic: arbitrary-precision rationals, π-monomials,
//! integer-coefficient multivariate polynomials, and exact Dirichlet-type
//! simplex integration.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default cap on the number of polynomial variables (mn) accepted by
/// [`poly_density`]; term growth is combinatorial beyond this.
pub const DEFAULT_EXPANSION_LIMIT: usize = 9;

pub(crate) fn factorial(n: usize) -> BigInt {
    static CACHE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigInt::one()]));
    let mut cache = cache.lock().expect("factorial cache poisoned");
    while cache.len() <= n {
        let k = cache.len();
        let next = &cache[k - 1] * BigInt::from(k);
        cache.push(next);
    }
    cache[n].clone()
}

/// Arbitrary-precision rational coefficient times an integer power of π.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactVolume {
    coeff: BigRational,
    pi_power: u32,
}

impl ExactVolume {
    pub fn new(coeff: BigRational, pi_power: u32) -> Self {
        Self { coeff, pi_power }
    }

    pub fn one() -> Self {
        Self { coeff: BigRational::one(), pi_power: 0 }
    }

    pub fn from_integer(n: i64) -> Self {
        Self { coeff: BigRational::from_integer(n.into()), pi_power: 0 }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            coeff: &self.coeff * &other.coeff,
            pi_power: self.pi_power + other.pi_power,
        }
    }

    /// Scale by a bare rational (π⁰ factor).
    pub fn scale(&self, factor: &BigRational) -> Self {
        Self { coeff: &self.coeff * factor, pi_power: self.pi_power }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.coeff.is_zero() {
            return Err(Error::Arithmetic("division by zero volume".into()));
        }
        if other.pi_power > self.pi_power {
            return Err(Error::Arithmetic(format!(
                "division would need negative pi power ({} vs {})",
                self.pi_power, other.pi_power
            )));
        }
        Ok(Self {
            coeff: &self.coeff / &other.coeff,
            pi_power: self.pi_power - other.pi_power,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.pi_power != other.pi_power {
            return Err(Error::IncompatiblePiPowers {
                left: self.pi_power,
                right: other.pi_power,
            });
        }
        Ok(Self { coeff: &self.coeff + &other.coeff, pi_power: self.pi_power })
    }

    /// Floating-point value coeff · π^pi_power.
    pub fn approx(&self) -> f64 {
        self.coeff.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(self.pi_power as i32)
    }
}

impl fmt::Display for ExactVolume {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.coeff.numer(), self.coeff.denom())?;
        if self.pi_power > 0 {
            write!(f, "·π^{}", self.pi_power)?;
        }
        Ok(())
    }
}

/// Multivariate polynomial with arbitrary-precision integer coefficients,
/// stored as a map from exponent vectors to coefficients. Zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The monomial x_idx.
    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut exp = vec![0; nvars];
        exp[idx] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(exp, BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// True when every stored term has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    pub fn add_term(&mut self, exp: Vec<u32>, coeff: BigInt) {
        assert_eq!(exp.len(), self.nvars, "exponent vector length");
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial variable counts differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial variable counts differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "polynomial variable counts differ");
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(exp, c1 * c2);
            }
        }
        out
    }

    /// Renames variable k to perm[k]; perm must be a permutation of 0..nvars.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut exp = vec![0u32; self.nvars];
            for (k, &ek) in e.iter().enumerate() {
                exp[perm[k]] = ek;
            }
            out.add_term(exp, c.clone());
        }
        out
    }

    /// Numerical evaluation at a point (coefficients cast to f64).
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars, "evaluation point length");
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut term = c.to_f64().unwrap_or(f64::NAN);
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    term *= point[k].powi(ek as i32);
                }
            }
            acc += term;
        }
        acc
    }
}

/// The eigenvalue joint-density polynomial
/// P = ∏_{i<i'} Σ_j (x_ij − x_i'j)² · ∏_{j<j'} Σ_i (x_ij − x_ij')²
/// in mn variables, A-major flattening x_ij ↦ index i·n + j.
pub fn poly_density(m: usize, n: usize) -> Result<MultiPoly> {
    poly_density_capped(m, n, DEFAULT_EXPANSION_LIMIT)
}

/// Same as [`poly_density`] with an explicit variable-count cap.
pub fn poly_density_capped(m: usize, n: usize, limit: usize) -> Result<MultiPoly> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("m and n must be positive".into()));
    }
    let nvars = m * n;
    if nvars > limit {
        return Err(Error::Capacity { mn: nvars, limit });
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut factors: Vec<MultiPoly> = Vec::new();
    for i in 0..m {
        for ip in (i + 1)..m {
            let mut f = MultiPoly::zero(nvars);
            for j in 0..n {
                let d = MultiPoly::var(nvars, idx(i, j)).sub(&MultiPoly::var(nvars, idx(ip, j)));
                f = f.add(&d.mul(&d));
            }
            factors.push(f);
        }
    }
    for j in 0..n {
        for jp in (j + 1)..n {
            let mut f = MultiPoly::zero(nvars);
            for i in 0..m {
                let d = MultiPoly::var(nvars, idx(i, j)).sub(&MultiPoly::var(nvars, idx(i, jp)));
                f = f.add(&d.mul(&d));
            }
            factors.push(f);
        }
    }
    let mut out = MultiPoly::constant(nvars, BigInt::one());
    for f in &factors {
        out = out.mul(f);
    }
    Ok(out)
}

/// ∫ δ(1 − Σx) ∏ x_k^{e_k} dx over the nonnegative orthant
/// = ∏ e_k! / (N − 1 + Σe_k)!  for N = exponents.len().
pub fn simplex_monomial_integral(exponents: &[u32]) -> BigRational {
    assert!(!exponents.is_empty(), "need at least one variable");
    let n = exponents.len();
    let total: u32 = exponents.iter().sum();
    let mut numer = BigInt::one();
    for &e in exponents {
        numer *= factorial(e as usize);
    }
    let denom = factorial(n - 1 + total as usize);
    BigRational::new(numer, denom)
}

/// Exact integral of a polynomial against δ(1 − Σx) over the orthant.
pub fn integrate_over_simplex(p: &MultiPoly) -> BigRational {
    let mut acc = BigRational::zero();
    for (e, c) in p.terms() {
        acc += BigRational::from_integer(c.clone()) * simplex_monomial_integral(e);
    }
    acc
}
