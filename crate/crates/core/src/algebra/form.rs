//! Binary forms: homogeneous polynomials in `(y0, y1)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{squarefree_part, Poly};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A form of degree `N`; `coeffs[i]` multiplies `y0^(N-i) * y1^i`.
///
/// The zero form keeps its nominal degree so that a vanishing determinant
/// still reports the degree it was supposed to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Rational>,
}

/// Distinct roots on the projective line over the complex numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootCount {
    pub distinct: usize,
    /// `distinct == degree`
    pub squarefree: bool,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        let degree = coeffs.len().checked_sub(1).ok_or(Error::BadCoefficients {
            degree: 0,
            got: 0,
        })?;
        Ok(BinaryForm { degree, coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            degree,
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    /// `y0^p * y1^q`
    pub fn monomial(p: usize, q: usize) -> Self {
        let mut f = Self::zero(p + q);
        f.coeffs[q] = Rational::one();
        f
    }

    /// `c * y0^p * y1^q`
    pub fn term(c: Rational, p: usize, q: usize) -> Self {
        let mut f = Self::zero(p + q);
        f.coeffs[q] = c;
        f
    }

    /// Homogenize `f(t)` to degree `n`, i.e. `y0^n f(y1 / y0)`.
    pub fn homogenize(f: &Poly, n: usize) -> Result<Self> {
        let got = f.coeffs().len();
        if got > n + 1 {
            return Err(Error::BadCoefficients { degree: n, got });
        }
        let mut out = Self::zero(n);
        out.coeffs[..got].clone_from_slice(f.coeffs());
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, y0: &Rational, y1: &Rational) -> Rational {
        let n = self.degree;
        let mut y0_pows = vec![Rational::one(); n + 1];
        let mut y1_pows = vec![Rational::one(); n + 1];
        for i in 1..=n {
            y0_pows[i] = &y0_pows[i - 1] * y0;
            y1_pows[i] = &y1_pows[i - 1] * y1;
        }
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * &y0_pows[n - i] * &y1_pows[i])
            .sum()
    }

    /// `F(1, t)`
    pub fn dehomogenize(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    /// `y0 | F`, i.e. `F` vanishes at `[0 : 1]`.
    pub fn divisible_by_y0(&self) -> bool {
        self.coeffs[self.degree].is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Number of distinct projective roots: the degree of the squarefree part
    /// of `F(1, t)`, plus one if `y0` divides `F`.
    pub fn distinct_projective_roots(&self) -> Result<RootCount> {
        if self.is_zero() {
            return Err(Error::RootCountUndefined);
        }
        let f = self.dehomogenize();
        let affine = squarefree_part(&f)?.degree().unwrap_or(0);
        let distinct = affine + usize::from(self.divisible_by_y0());
        Ok(RootCount {
            distinct,
            squarefree: distinct == self.degree,
        })
    }
}

pub fn distinct_projective_roots(form: &BinaryForm) -> Result<RootCount> {
    form.distinct_projective_roots()
}

impl Add for &BinaryForm {
    type Output = BinaryForm;
    /// Panics if the degrees differ.
    fn add(self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Neg for &BinaryForm {
    type Output = BinaryForm;
    fn neg(self) -> BinaryForm {
        self.scale(&-Rational::one())
    }
}

impl Sub for &BinaryForm {
    type Output = BinaryForm;
    fn sub(self, rhs: &BinaryForm) -> BinaryForm {
        self + &(-rhs)
    }
}

impl Mul for &BinaryForm {
    type Output = BinaryForm;
    fn mul(self, rhs: &BinaryForm) -> BinaryForm {
        let mut out = BinaryForm::zero(self.degree + rhs.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (var, e) in [("y0", n - i), ("y1", i)] {
                match e {
                    0 => {}
                    1 => write!(f, "*{var}")?,
                    _ => write!(f, "*{var}^{e}")?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
