//! Symmetric 3x3 matrices of binary forms and their determinants.

use super::form::BinaryForm;
use crate::error::{Error, Result};

/// Upper-triangle storage order: (0,0) (0,1) (0,2) (1,1) (1,2) (2,2).
const UPPER: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

fn slot(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    UPPER
        .iter()
        .position(|&p| p == (i, j))
        .expect("indices within 0..3")
}

/// A symmetric matrix whose six independent entries are forms of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix3 {
    entries: [BinaryForm; 6],
}

impl SymMatrix3 {
    /// Entries in upper-triangle order (0,0) (0,1) (0,2) (1,1) (1,2) (2,2).
    pub fn new(entries: [BinaryForm; 6]) -> Result<Self> {
        let degrees: Vec<usize> = entries.iter().map(BinaryForm::degree).collect();
        if degrees.iter().any(|&d| d != degrees[0]) {
            return Err(Error::NonUniformMatrix(degrees));
        }
        Ok(SymMatrix3 { entries })
    }

    pub fn diagonal(a: BinaryForm, b: BinaryForm, c: BinaryForm) -> Result<Self> {
        let z = BinaryForm::zero(a.degree());
        Self::new([a, z.clone(), z.clone(), b, z, c])
    }

    /// Degree shared by all entries.
    pub fn entry_degree(&self) -> usize {
        self.entries[0].degree()
    }

    pub fn get(&self, i: usize, j: usize) -> &BinaryForm {
        &self.entries[slot(i, j)]
    }

    pub fn rows(&self) -> [[BinaryForm; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.get(i, j).clone()))
    }

    /// Cofactor expansion along the first row. Degree `3a`; the zero form
    /// (still of nominal degree `3a`) when the determinant vanishes.
    pub fn det(&self) -> BinaryForm {
        det3_general(&self.rows())
    }
}

pub fn det3(m: &SymMatrix3) -> BinaryForm {
    m.det()
}

fn minor(a: &BinaryForm, d: &BinaryForm, b: &BinaryForm, c: &BinaryForm) -> BinaryForm {
    &(a * d) - &(b * c)
}

/// Determinant of an arbitrary 3x3 matrix of forms of equal degree.
///
/// Panics if the entry degrees differ.
pub fn det3_general(m: &[[BinaryForm; 3]; 3]) -> BinaryForm {
    let c0 = minor(&m[1][1], &m[2][2], &m[1][2], &m[2][1]);
    let c1 = minor(&m[1][0], &m[2][2], &m[1][2], &m[2][0]);
    let c2 = minor(&m[1][0], &m[2][1], &m[1][1], &m[2][0]);
    &(&(&m[0][0] * &c0) - &(&m[0][1] * &c1)) + &(&m[0][2] * &c2)
}
