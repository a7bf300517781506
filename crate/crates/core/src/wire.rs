//! JSON wire formats for matrices, exact volumes, and polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{ExactVolume, MultiPoly};
use crate::linalg::{ComplexMatrix, DensityMatrix};

/// Matrix schema: {"rows", "cols", "re", "im"} row-major; density matrices
/// add {"dims": [m, n]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<(usize, usize)>,
}

impl MatrixJson {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            re: m.data().iter().map(|z| z.re).collect(),
            im: m.data().iter().map(|z| z.im).collect(),
            dims: None,
        }
    }

    pub fn from_density(rho: &DensityMatrix) -> Self {
        let mut out = Self::from_matrix(rho.mat());
        out.dims = Some(rho.dims());
        out
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        ComplexMatrix::from_parts(self.rows, self.cols, &self.re, &self.im)
    }

    /// Requires the dims metadata; validates the state.
    pub fn to_density(&self) -> Result<DensityMatrix> {
        let dims = self.dims.ok_or_else(|| Error::BadDims {
            reason: "matrix JSON is missing the \"dims\" field".into(),
        })?;
        DensityMatrix::new(self.to_matrix()?, dims)
    }
}

/// Exact volume schema: {"rational": "p/q", "pi_power": k, "approx": float}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExactVolumeJson {
    pub rational: String,
    pub pi_power: u32,
    pub approx: f64,
}

impl From<&ExactVolume> for ExactVolumeJson {
    fn from(v: &ExactVolume) -> Self {
        Self {
            rational: format!("{}/{}", v.coeff().numer(), v.coeff().denom()),
            pi_power: v.pi_power(),
            approx: v.approx(),
        }
    }
}

impl ExactVolumeJson {
    pub fn to_volume(&self) -> Result<ExactVolume> {
        let (num, den) = self
            .rational
            .split_once('/')
            .ok_or_else(|| Error::InvalidParameter(format!("bad rational {:?}", self.rational)))?;
        let num: BigInt =
            num.parse().map_err(|e| Error::InvalidParameter(format!("bad numerator: {e}")))?;
        let den: BigInt =
            den.parse().map_err(|e| Error::InvalidParameter(format!("bad denominator: {e}")))?;
        if den == BigInt::from(0) {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(ExactVolume::new(BigRational::new(num, den), self.pi_power))
    }
}

/// One polynomial term: {"exp": [..], "coeff": "big-int-string"}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyTermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

pub fn poly_to_json(p: &MultiPoly) -> Vec<PolyTermJson> {
    p.terms()
        .map(|(e, c)| PolyTermJson { exp: e.to_vec(), coeff: c.to_string() })
        .collect()
}

pub fn poly_from_json(nvars: usize, terms: &[PolyTermJson]) -> Result<MultiPoly> {
    let mut p = MultiPoly::zero(nvars);
    for term in terms {
        if term.exp.len() != nvars {
            return Err(Error::ShapeMismatch {
                expected: format!("{nvars} exponents"),
                got: format!("{}", term.exp.len()),
            });
        }
        let coeff: BigInt = term
            .coeff
            .parse()
            .map_err(|e| Error::InvalidParameter(format!("bad coefficient: {e}")))?;
        p.add_term(term.exp.clone(), coeff);
    }
    Ok(p)
}
