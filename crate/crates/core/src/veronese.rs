//! Degenerate fibers of hyperplane sections of `(P^2 x P^1, O(2) ⊠ O(a))`.
//!
//! A section is `sum l_ijk x_i x_j y0^k y1^(a-k) = 0` over `0 <= i <= j <= 2`,
//! `0 <= k <= a`. Over a point `[y0 : y1]` the fiber is the plane conic with
//! symmetric matrix `M(y0, y1)`; it splits into two lines exactly where
//! `det M` vanishes. `det M` is a binary form of degree `3a`, and its number
//! of distinct zeros is the number of reducible fibers of the section.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{BinaryForm, SymMatrix3};
use crate::bundle::{self, BundleContext};
use crate::error::{Error, Result};
use crate::rational::{format_rational, int, rat, Rational};

/// Seed used whenever the caller does not pick one.
pub const DEFAULT_SEED: u64 = 42;

/// Integer coefficients of random sections are drawn from this range.
pub const COEFFICIENT_RANGE: std::ops::RangeInclusive<i64> = -99..=99;

/// Upper-triangle index pairs `(i, j)`, `i <= j`.
pub const PAIRS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCoefficients {
    a: u32,
    l: BTreeMap<(usize, usize, usize), Rational>,
}

impl SectionCoefficients {
    /// Coefficients keyed by `(i, j, k)`; missing keys are reported by
    /// [`build_matrix`]. Keys outside the index range are rejected.
    pub fn new(a: u32, l: BTreeMap<(usize, usize, usize), Rational>) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidInput("a must be positive".into()));
        }
        if let Some(&(i, j, k)) = l
            .keys()
            .find(|&&(i, j, k)| !(i <= j && j <= 2 && k <= a as usize))
        {
            return Err(Error::InvalidInput(format!("coefficient index l[{i}{j}{k}] out of range")));
        }
        Ok(SectionCoefficients { a, l })
    }

    pub fn zeros(a: u32) -> Result<Self> {
        let l = Self::keys(a).map(|key| (key, Rational::zero())).collect();
        Self::new(a, l)
    }

    /// Uniform integers from [`COEFFICIENT_RANGE`], reproducible per seed.
    pub fn random(a: u32, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = Self::keys(a)
            .map(|key| (key, int(rng.gen_range(COEFFICIENT_RANGE))))
            .collect();
        Self::new(a, l)
    }

    /// All `6(a + 1)` index triples in a fixed order.
    pub fn keys(a: u32) -> impl Iterator<Item = (usize, usize, usize)> {
        PAIRS
            .into_iter()
            .flat_map(move |(i, j)| (0..=a as usize).map(move |k| (i, j, k)))
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn len(&self) -> usize {
        self.l.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.len() == 6 * (self.a as usize + 1)
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Rational) -> Result<()> {
        let (i, j) = (i.min(j), i.max(j));
        if j > 2 || k > self.a as usize {
            return Err(Error::InvalidInput(format!("coefficient index l[{i}{j}{k}] out of range")));
        }
        self.l.insert((i, j, k), value);
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Result<&Rational> {
        let (i, j) = (i.min(j), i.max(j));
        self.l.get(&(i, j, k)).ok_or(Error::MissingCoefficient { i, j, k })
    }

    /// The section polynomial at `(x, y)`.
    pub fn eval(&self, x: &[Rational; 3], y0: &Rational, y1: &Rational) -> Result<Rational> {
        let a = self.a as usize;
        let mut total = Rational::zero();
        for (i, j) in PAIRS {
            for k in 0..=a {
                let c = self.get(i, j, k)?;
                total += c * &x[i] * &x[j] * num_traits::pow(y0.clone(), k) * num_traits::pow(y1.clone(), a - k);
            }
        }
        Ok(total)
    }
}

/// `x^T M x` at a point.
fn quadratic_form(m: &SymMatrix3, x: &[Rational; 3], y0: &Rational, y1: &Rational) -> Rational {
    let mut total = Rational::zero();
    for i in 0..3 {
        for j in 0..3 {
            total += m.get(i, j).eval(y0, y1) * &x[i] * &x[j];
        }
    }
    total
}

/// Fixed probe points for the internal `x^T M x` check.
fn probe_points() -> Vec<([Rational; 3], Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut q = || rat(rng.gen_range(-50..=50), rng.gen_range(1..=7));
    (0..4).map(|_| ([q(), q(), q()], q(), q())).collect()
}

/// Matrix of the section as a quadratic form in `x`; off-diagonal entries
/// carry half the coefficient so that `x^T M x` is the section exactly.
pub fn build_matrix(c: &SectionCoefficients) -> Result<SymMatrix3> {
    let a = c.a as usize;
    let mut entries = Vec::with_capacity(6);
    for (i, j) in PAIRS {
        let half = if i == j { int(1) } else { rat(1, 2) };
        let mut coeffs = vec![Rational::zero(); a + 1];
        for k in 0..=a {
            // y0^k y1^(a-k) sits at index a - k
            coeffs[a - k] = c.get(i, j, k)? * &half;
        }
        entries.push(BinaryForm::new(coeffs)?);
    }
    let m = SymMatrix3::new(entries.try_into().expect("six entries"))?;
    for (x, y0, y1) in probe_points() {
        let want = c.eval(&x, &y0, &y1)?;
        let got = quadratic_form(&m, &x, &y0, &y1);
        if want != got {
            return Err(Error::FormulaInconsistency {
                quantity: "x^T M x",
                closed: format_rational(&want),
                reconstructed: format_rational(&got),
            });
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub a: u32,
    pub det_degree: usize,
    pub distinct_roots: usize,
    pub squarefree: bool,
    /// `3a`
    pub expected: usize,
    pub matches_expected: bool,
    /// Reducible-fiber count from the intersection numbers, `4 + 3a + 2b` at `g = 0, b = -2`.
    pub k_from_invariants: i64,
    /// `h^0(O(2) ⊠ O(a)) - 1 = 6(a + 1) - 1`
    pub n: i64,
    /// `k = (n - 5)/2`
    pub k_equality: bool,
}

fn to_i64(q: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    q.to_integer().to_i64().expect("small integer invariant")
}

pub fn count_degenerate_fibers(c: &SectionCoefficients) -> Result<FiberReport> {
    let m = build_matrix(c)?;
    let det = m.det();
    if det.is_zero() {
        return Err(Error::DegenerateSection);
    }
    let roots = det.distinct_projective_roots()?;
    let a = c.a;
    let expected = 3 * a as usize;
    let inv = bundle::invariants(&BundleContext::p2_times_p1(), a.into())?;
    let k = inv.k_degenerate;
    let n = 6 * (i64::from(a) + 1) - 1;
    Ok(FiberReport {
        a,
        det_degree: det.degree(),
        distinct_roots: roots.distinct,
        squarefree: roots.squarefree,
        expected,
        matches_expected: roots.distinct == expected,
        k_from_invariants: to_i64(&k),
        n,
        k_equality: k == rat(n - 5, 2),
    })
}

/// Outcome of counting on a random section, with at most one redraw.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericDraw {
    pub seed: u64,
    /// Set when the draw at `seed` was not squarefree and `seed + 1` was used.
    pub redrawn_from: Option<u64>,
    pub report: FiberReport,
}

fn try_draw(a: u32, seed: u64) -> Result<Option<FiberReport>> {
    match count_degenerate_fibers(&SectionCoefficients::random(a, seed)?) {
        Ok(r) => Ok(Some(r)),
        Err(Error::DegenerateSection) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Count on the random section for `seed`. A draw whose determinant is not
/// squarefree lies on the discriminant locus; it is replaced once by the draw
/// for `seed + 1` and the replacement is recorded.
pub fn generic_fibers(a: u32, seed: u64) -> Result<GenericDraw> {
    if let Some(report) = try_draw(a, seed)?.filter(|r| r.squarefree) {
        return Ok(GenericDraw {
            seed,
            redrawn_from: None,
            report,
        });
    }
    let next = seed.wrapping_add(1);
    let report = try_draw(a, next)?.ok_or(Error::DegenerateSection)?;
    Ok(GenericDraw {
        seed: next,
        redrawn_from: Some(seed),
        report,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub a: u32,
    pub d: i64,
    pub n: i64,
    pub two_n_minus_10: i64,
    pub k: i64,
    /// `(n - 5)/2`
    pub k_bound: i64,
    /// `d = 2n - 10` and `k = (n - 5)/2`
    pub equalities_hold: bool,
}

/// The family `(P^2 x P^1, O(2) ⊠ O(a))` for `a = 1..=a_max`.
pub fn sharpness_sweep(a_max: u32) -> Result<Vec<SweepRow>> {
    if a_max == 0 {
        return Err(Error::InvalidInput("a_max must be at least 1".into()));
    }
    let ctx = BundleContext::p2_times_p1();
    (1..=a_max)
        .map(|a| {
            let inv = bundle::invariants(&ctx, a.into())?;
            let d = to_i64(&inv.h_cubed);
            // h^0(O_P2(2)) * h^0(O_P1(a)) - 1
            let n = 6 * (i64::from(a) + 1) - 1;
            let k = to_i64(&inv.k_degenerate);
            let two_n_minus_10 = 2 * n - 10;
            let k_bound = (n - 5) / 2;
            Ok(SweepRow {
                a,
                d,
                n,
                two_n_minus_10,
                k,
                k_bound,
                equalities_hold: d == two_n_minus_10
                    && int(k) == rat(n - 5, 2)
                    && inv.n_expected == int(n),
            })
        })
        .collect()
}
