//! Numerical intersection ring of a plane bundle `X = P(E)` over a smooth
//! curve `B` of genus `g`.
//!
//! `Num X` is generated by `G` (a relatively `O(1)`-type divisor) and `V`
//! (the fiber class) with
//!
//! ```text
//! G^2.V = 1,   G.V^2 = V^3 = 0,   G^3 = 2(1 - g) + b,
//! ```
//!
//! where the canonical class is `K = bV - 3G`. A polarization of fiber
//! degree two is `H = aV + 2G`. Every closed-form invariant computed here is
//! re-derived from the ring before it is returned.

use std::ops::{Add, Mul};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, is_positive, rat, serde_rational, Rational};

/// Genus of the base curve and the twist `b` in `K = bV - 3G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleContext {
    pub genus: u32,
    pub twist: i64,
}

impl BundleContext {
    pub fn new(genus: u32, twist: i64) -> Self {
        BundleContext { genus, twist }
    }

    /// `P^2 x P^1` with `G` the pullback of a line: `G^3 = 0`, so `b = -2`.
    pub fn p2_times_p1() -> Self {
        BundleContext::new(0, -2)
    }

    /// `1 - g`
    pub fn one_minus_g(&self) -> Rational {
        int(1 - i64::from(self.genus))
    }

    /// `G^3 = 2(1 - g) + b`
    pub fn g_cubed(&self) -> Rational {
        int(2) * self.one_minus_g() + int(self.twist)
    }

    pub fn class(&self, alpha: Rational, beta: Rational) -> DivisorClass {
        DivisorClass {
            alpha,
            beta,
            context: *self,
        }
    }

    pub fn g(&self) -> DivisorClass {
        self.class(int(1), int(0))
    }

    pub fn v(&self) -> DivisorClass {
        self.class(int(0), int(1))
    }

    /// `K_X = bV - 3G`
    pub fn canonical(&self) -> DivisorClass {
        self.class(int(-3), int(self.twist))
    }

    /// `H = aV + 2G`
    pub fn polarization(&self, a: i64) -> DivisorClass {
        self.class(int(2), int(a))
    }

    /// `c_2(X).D`, linear in `D`, from `c_2.G = 8(1 - g) + b` and `c_2.V = 3`.
    pub fn c2_dot(&self, d: &DivisorClass) -> Result<Rational> {
        if d.context != *self {
            return Err(Error::ContextMismatch);
        }
        let c2_g = int(8) * self.one_minus_g() + int(self.twist);
        Ok(&d.alpha * c2_g + &d.beta * int(3))
    }

    /// `chi(O_X) = 1 - g` for a projective bundle over a curve.
    pub fn chi_structure_sheaf(&self) -> Rational {
        self.one_minus_g()
    }
}

/// The class `alpha*G + beta*V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    pub alpha: Rational,
    pub beta: Rational,
    pub context: BundleContext,
}

impl DivisorClass {
    pub fn scale(&self, c: &Rational) -> DivisorClass {
        self.context.class(&self.alpha * c, &self.beta * c)
    }

    pub fn try_add(&self, rhs: &DivisorClass) -> Result<DivisorClass> {
        if self.context != rhs.context {
            return Err(Error::ContextMismatch);
        }
        Ok(self.context.class(&self.alpha + &rhs.alpha, &self.beta + &rhs.beta))
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    /// Panics on a context mismatch; use [`DivisorClass::try_add`] to check.
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.try_add(rhs).expect("divisor classes from different contexts")
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

/// `D1.D2.D3`
pub fn triple_product(d1: &DivisorClass, d2: &DivisorClass, d3: &DivisorClass) -> Result<Rational> {
    let ctx = d1.context;
    if d2.context != ctx || d3.context != ctx {
        return Err(Error::ContextMismatch);
    }
    let ggg = &d1.alpha * &d2.alpha * &d3.alpha;
    let ggv = &d1.alpha * &d2.alpha * &d3.beta
        + &d1.alpha * &d2.beta * &d3.alpha
        + &d1.beta * &d2.alpha * &d3.alpha;
    Ok(ggg * ctx.g_cubed() + ggv)
}

/// Closed-form invariants of `(X, H)` with `H = aV + 2G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleInvariants {
    #[serde(rename = "H_cubed", with = "serde_rational")]
    pub h_cubed: Rational,
    /// Number of reducible fibers of a smooth member of `|H|`.
    #[serde(rename = "k_degenerate", with = "serde_rational")]
    pub k_degenerate: Rational,
    #[serde(rename = "K_S_squared", with = "serde_rational")]
    pub k_s_squared: Rational,
    #[serde(rename = "c2_dot_H", with = "serde_rational")]
    pub c2_dot_h: Rational,
    #[serde(rename = "chi_H", with = "serde_rational")]
    pub chi_h: Rational,
    /// `chi(H) - 1`; equals `h^0(H) - 1` only when the higher cohomology of
    /// `H` vanishes, which is not checked here.
    #[serde(rename = "n_expected", with = "serde_rational")]
    pub n_expected: Rational,
}

fn cross_check(quantity: &'static str, closed: &Rational, reconstructed: &Rational) -> Result<()> {
    if closed == reconstructed {
        Ok(())
    } else {
        Err(Error::FormulaInconsistency {
            quantity,
            closed: format_rational(closed),
            reconstructed: format_rational(reconstructed),
        })
    }
}

/// Hirzebruch-Riemann-Roch on a threefold:
/// `chi(D) = (2D^3 - 3K.D^2 + K^2.D + c_2.D) / 12 + chi(O_X)`.
pub fn riemann_roch_chi(ctx: &BundleContext, d: &DivisorClass) -> Result<Rational> {
    let k = ctx.canonical();
    let sum = int(2) * triple_product(d, d, d)?
        - int(3) * triple_product(&k, d, d)?
        + triple_product(&k, &k, d)?
        + ctx.c2_dot(d)?;
    Ok(sum / int(12) + ctx.chi_structure_sheaf())
}

/// Invariants of `H = aV + 2G`, each closed form checked against the ring.
pub fn invariants(ctx: &BundleContext, a: i64) -> Result<BundleInvariants> {
    let omg = ctx.one_minus_g();
    let (a_q, b_q) = (int(a), int(ctx.twist));

    let h_cubed = int(12) * &a_q + int(8) * &b_q + int(16) * &omg;
    let k_degenerate = int(4) * &omg + int(3) * &a_q + int(2) * &b_q;
    let k_s_squared = int(4) * &omg - int(3) * &a_q - int(2) * &b_q;
    let c2_dot_h = int(16) * &omg + int(2) * &b_q + int(3) * &a_q;
    let chi_h = int(14) * &omg + int(6) * &a_q + int(4) * &b_q;

    let h = ctx.polarization(a);
    let k_plus_h = &ctx.canonical() + &h;
    let h3 = triple_product(&h, &h, &h)?;
    let ks2 = triple_product(&k_plus_h, &k_plus_h, &h)?;
    cross_check("H^3", &h_cubed, &h3)?;
    cross_check("H^3 = 4k", &h_cubed, &(int(4) * &k_degenerate))?;
    cross_check("K_S^2", &k_s_squared, &ks2)?;
    cross_check("k = 8(1-g) - K_S^2", &k_degenerate, &(int(8) * &omg - &ks2))?;
    cross_check("c2.H", &c2_dot_h, &ctx.c2_dot(&h)?)?;
    cross_check("chi(H)", &chi_h, &riemann_roch_chi(ctx, &h)?)?;

    let n_expected = &chi_h - int(1);
    Ok(BundleInvariants {
        h_cubed,
        k_degenerate,
        k_s_squared,
        c2_dot_h,
        chi_h,
        n_expected,
    })
}

/// `H^3 = 2 chi(H) - 12(1 - g)`, evaluated from the ring rather than the
/// closed forms.
pub fn check_identity_chi(ctx: &BundleContext, a: i64) -> bool {
    let h = ctx.polarization(a);
    let (Ok(h3), Ok(chi)) = (triple_product(&h, &h, &h), riemann_roch_chi(ctx, &h)) else {
        return false;
    };
    h3 == int(2) * chi - int(12) * ctx.one_minus_g()
}

/// Degree and fiber-count bounds for a terminal Veronese fibration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VeroneseBounds {
    #[serde(with = "serde_rational")]
    pub d: Rational,
    #[serde(with = "serde_rational")]
    pub n: Rational,
    /// `2n - 10`
    #[serde(with = "serde_rational")]
    pub degree_bound: Rational,
    /// `d >= 2n - 10`
    pub bound_d_ok: bool,
    pub bound_d_equality: bool,
    /// `(n - 5) / 2`, the least number of reducible fibers.
    #[serde(with = "serde_rational")]
    pub k_lower_bound: Rational,
}

impl VeroneseBounds {
    /// `(k >= (n - 5)/2, k == (n - 5)/2)` for a given fiber count `k`.
    pub fn fiber_bound(&self, k: &Rational) -> (bool, bool) {
        (k >= &self.k_lower_bound, k == &self.k_lower_bound)
    }
}

pub fn check_veronese_bounds(d: &Rational, n: &Rational) -> Result<VeroneseBounds> {
    if !is_positive(d) {
        return Err(Error::NotBig(format_rational(d)));
    }
    if n < &Rational::zero() {
        return Err(Error::InvalidInput(format!(
            "n = {} must be non-negative",
            format_rational(n)
        )));
    }
    let degree_bound = int(2) * n - int(10);
    Ok(VeroneseBounds {
        d: d.clone(),
        n: n.clone(),
        bound_d_ok: d >= &degree_bound,
        bound_d_equality: d == &degree_bound,
        degree_bound,
        k_lower_bound: (n - int(5)) * rat(1, 2),
    })
}
