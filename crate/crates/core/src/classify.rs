//! Degree-one uniruledness verdicts for polarized pairs `(X, H)`.
//!
//! Input is numerical: `k = dim X`, `d = H^k`, `n = h^0(H) - 1`, plus flags
//! for the geometric hypotheses the caller vouches for. Every rule whose
//! hypotheses are met is evaluated in a fixed order:
//!
//! | id    | needs                       | fires when |
//! |-------|-----------------------------|------------|
//! | `T1`  | `k = 3`, gg + big           | `d < 2n - 10`, `(d, n) != (27, 19)` |
//! | `T1x` | `k = 3`, gg + big           | `d < 2n - 10`, `(d, n) = (27, 19)` |
//! | `C12` | `k >= 4`, gg + big          | `d < 2(n - k) - 4` |
//! | `EB`  | `k = 3`, gg + big           | `n >= 4`, `d < (4n - 4)/3`, minus the sporadic exclusions |
//! | `HB`  | `k = 3`, smooth + very ample| `n >= 12, d < 3(n-4)/2` or `7 <= n <= 11, d < 4(n-3)/3` |
//!
//! `EB` excludes `d = n - 1` for `n <= 9` and `d = n - 2` for `n <= 6`; for
//! pairs not known to be terminal and Q-factorial it also excludes `d = n`
//! for `5 <= n <= 8`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, rat, serde_rational, serde_rational_opt, Rational};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypotheses {
    pub globally_generated: bool,
    pub big: bool,
    pub smooth: bool,
    pub very_ample: bool,
    pub terminal_q_factorial: bool,
}

impl Hypotheses {
    /// Globally generated and big.
    pub fn gg_big() -> Self {
        Hypotheses {
            globally_generated: true,
            big: true,
            ..Default::default()
        }
    }

    pub fn terminal(mut self) -> Self {
        self.terminal_q_factorial = true;
        self
    }

    pub fn smooth_very_ample() -> Self {
        Hypotheses {
            smooth: true,
            very_ample: true,
            ..Default::default()
        }
    }

    fn any(&self) -> bool {
        self.globally_generated || self.big || self.smooth || self.very_ample || self.terminal_q_factorial
    }

    fn gg_and_big(&self) -> bool {
        self.globally_generated && self.big
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PolarizedPair {
    pub dim: i64,
    pub d: i64,
    pub n: i64,
    pub flags: Hypotheses,
}

impl PolarizedPair {
    pub fn new(dim: i64, d: i64, n: i64, flags: Hypotheses) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidInput(format!("dim = {dim} must be at least 2")));
        }
        if d < 1 || n < 1 {
            return Err(Error::InvalidInput(format!(
                "d = {d} and n = {n} must both be positive"
            )));
        }
        Ok(PolarizedPair { dim, d, n, flags })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    DegreeOne,
    ExceptionalP3Cubic,
    BigUniruledSystemOnly,
    NoConclusion,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::DegreeOne => "DegreeOne",
            Outcome::ExceptionalP3Cubic => "ExceptionalP3Cubic",
            Outcome::BigUniruledSystemOnly => "BigUniruledSystemOnly",
            Outcome::NoConclusion => "NoConclusion",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    T1,
    T1x,
    C12,
    EB,
    HB,
}

impl Rule {
    pub const ORDER: [Rule; 5] = [Rule::T1, Rule::T1x, Rule::C12, Rule::EB, Rule::HB];

    /// The rule's defining strict inequality in `d`, without its exclusions
    /// or the `(27, 19)` split. `None` when the rule does not apply to
    /// this dimension or section count.
    pub fn inequality(self, dim: i64, d: i64, n: i64) -> Option<bool> {
        let d = int(d);
        match self {
            Rule::T1 | Rule::T1x if dim == 3 => Some(d < int(2 * n - 10)),
            Rule::C12 if dim >= 4 => Some(d < int(2 * (n - dim) - 4)),
            Rule::EB if dim == 3 && n >= 4 => Some(d < rat(4 * n - 4, 3)),
            Rule::HB if dim == 3 && n >= 12 => Some(d < rat(3 * (n - 4), 2)),
            Rule::HB if dim == 3 && (7..=11).contains(&n) => Some(d < rat(4 * (n - 3), 3)),
            _ => None,
        }
    }

    fn applies(self, flags: &Hypotheses) -> bool {
        match self {
            Rule::T1 | Rule::T1x | Rule::C12 | Rule::EB => flags.gg_and_big(),
            Rule::HB => flags.smooth && flags.very_ample,
        }
    }

    /// Sporadic `(d, n)` values carved out of the rule.
    fn excluded(self, d: i64, n: i64, terminal: bool) -> bool {
        match self {
            Rule::T1 => (d, n) == (27, 19),
            Rule::T1x => (d, n) != (27, 19),
            Rule::EB => {
                (d == n - 1 && n <= 9)
                    || (d == n - 2 && n <= 6)
                    || (!terminal && d == n && (5..=8).contains(&n))
            }
            Rule::C12 | Rule::HB => false,
        }
    }

    fn describe(self, dim: i64, d: i64, n: i64) -> String {
        match self {
            Rule::T1 => format!("d < 2n - 10: {d} < {}", 2 * n - 10),
            Rule::T1x => format!("d < 2n - 10: {d} < {} with (d, n) = (27, 19)", 2 * n - 10),
            Rule::C12 => format!("d < 2(n - k) - 4: {d} < {}", 2 * (n - dim) - 4),
            Rule::EB => format!("d < 4n/3 - 4/3: {d} < {}", rat(4 * n - 4, 3)),
            Rule::HB if n >= 12 => format!("n >= 12 and d < 3(n - 4)/2: {d} < {}", rat(3 * (n - 4), 2)),
            Rule::HB => format!("7 <= n <= 11 and d < 4(n - 3)/3: {d} < {}", rat(4 * (n - 3), 3)),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiredRule {
    pub rule: Rule,
    pub inequality: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub fired_rules: Vec<FiredRule>,
    /// `d - 2n + 2`, an upper bound for `D.K_S` on a smooth member of `|H|`;
    /// set for threefolds with `d < 2n - 4`.
    #[serde(with = "serde_rational_opt")]
    pub clifford_bound: Option<Rational>,
    pub note: String,
}

impl Verdict {
    pub fn fired(&self, rule: Rule) -> bool {
        self.fired_rules.iter().any(|f| f.rule == rule)
    }
}

pub fn classify(p: &PolarizedPair) -> Result<Verdict> {
    if p.dim < 3 {
        return Err(Error::SurfaceOutOfScope(p.dim));
    }
    if !p.flags.any() {
        return Err(Error::NoApplicableHypotheses);
    }
    let (dim, d, n) = (p.dim, p.d, p.n);

    let fired_rules: Vec<FiredRule> = Rule::ORDER
        .into_iter()
        .filter(|r| r.applies(&p.flags))
        .filter(|r| r.inequality(dim, d, n) == Some(true))
        .filter(|r| !r.excluded(d, n, p.flags.terminal_q_factorial))
        .map(|rule| FiredRule {
            rule,
            inequality: rule.describe(dim, d, n),
        })
        .collect();

    let clifford = dim == 3 && d < 2 * n - 4;
    let clifford_bound = clifford.then(|| int(d - 2 * n + 2));

    let degree_one = fired_rules.iter().any(|f| f.rule != Rule::T1x);
    let outcome = if degree_one {
        Outcome::DegreeOne
    } else if fired_rules.iter().any(|f| f.rule == Rule::T1x) {
        Outcome::ExceptionalP3Cubic
    } else if clifford {
        Outcome::BigUniruledSystemOnly
    } else {
        Outcome::NoConclusion
    };

    let mut note = match outcome {
        Outcome::DegreeOne => "X is uniruled of H-degree one".to_string(),
        Outcome::ExceptionalP3Cubic => {
            "uniruled of H-degree one unless a #-minimal model is (P^3, O(3)); \
             possible exceptional #-minimal model P^3 with cubic polarization"
                .to_string()
        }
        Outcome::BigUniruledSystemOnly => {
            "(X, H) has a big uniruled system; degree one is not decided".to_string()
        }
        Outcome::NoConclusion => "no rule applies".to_string(),
    };
    if outcome == Outcome::DegreeOne && p.flags.very_ample {
        note.push_str("; embedded by |H|, X is uniruled by lines");
    }

    Ok(Verdict {
        outcome,
        fired_rules,
        clifford_bound,
        note,
    })
}

/// Fujita's Delta-genus `d + dim - n - 1`.
pub fn delta_genus(dim: i64, d: &Rational, n: &Rational) -> Rational {
    d + int(dim) - n - int(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInequality {
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
    pub holds: bool,
}

/// `(D + c K_S)^2 >= -l c^2` with `c = rho / (1 - rho)`, for a smooth member
/// `S` with `D = O_S(S)` and `l` curves contracted on the way to the minimal
/// model. Requires `1/3 <= rho < 1`.
pub fn sharp_inequality_check(
    rho: &Rational,
    d_sq: &Rational,
    d_dot_k: &Rational,
    k_sq: &Rational,
    l: u64,
) -> Result<SurfaceInequality> {
    if !(rho >= &rat(1, 3) && rho < &int(1)) {
        return Err(Error::HypothesisViolated(format_rational(rho)));
    }
    let c = rho / (int(1) - rho);
    let lhs = d_sq + int(2) * &c * d_dot_k + &c * &c * k_sq;
    let rhs = -(Rational::from_integer(l.into()) * &c * &c);
    Ok(SurfaceInequality {
        holds: lhs >= rhs,
        lhs,
        rhs,
    })
}
