//! End-to-end reproduction checks, runnable from the CLI.
//!
//! Each check recomputes a family of stated values from scratch and compares
//! exactly. Checks carry a wall-clock budget; exceeding it fails the check.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::bundle::{self, BundleContext};
use crate::classify::{classify, delta_genus, sharp_inequality_check, Hypotheses, Outcome, PolarizedPair, Rule};
use crate::fano::{self, FanoRow};
use crate::rational::{int, rat};
use crate::veronese::{self, SectionCoefficients, DEFAULT_SEED};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_us: u128,
    pub budget_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
    pub total_us: u128,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.within_budget()
    }

    pub fn within_budget(&self) -> bool {
        self.total_us <= TOTAL_BUDGET.as_micros()
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            2
        }
    }
}

/// Budget for the whole run.
pub const TOTAL_BUDGET: Duration = Duration::from_secs(10);

type CheckOutcome = Result<String, String>;

fn timed(id: u8, name: &str, budget_ms: u64, f: impl FnOnce() -> CheckOutcome) -> CheckResult {
    let start = Instant::now();
    let out = f();
    let elapsed = start.elapsed();
    let within = elapsed <= Duration::from_millis(budget_ms);
    let (passed, mut detail) = match out {
        Ok(d) => (within, d),
        Err(d) => (false, d),
    };
    if !within {
        detail.push_str(&format!(" (over budget: {elapsed:?} > {budget_ms} ms)"));
    }
    CheckResult {
        id,
        name: name.to_string(),
        passed,
        detail,
        elapsed_us: elapsed.as_micros(),
        budget_ms,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_reproduction(rows: &[FanoRow]) -> CheckOutcome {
    let rep = fano::verify_rows(rows);
    ensure(rows.len() == 20, || format!("{} rows, expected 20", rows.len()))?;
    ensure(rep.is_clean(), || {
        let bad: Vec<String> = rep
            .mismatches
            .iter()
            .map(|m| format!("({}) {}: stored {} derived {}", m.label, m.field, m.stored, m.derived))
            .collect();
        format!("mismatches: {}", bad.join("; "))
    })?;
    Ok(format!("{}/{} rows verified", rep.rows_verified, rep.rows_checked))
}

fn sharpness_family() -> CheckOutcome {
    let ctx = BundleContext::p2_times_p1();
    for a in 1..=50i64 {
        let inv = bundle::invariants(&ctx, a).map_err(|e| e.to_string())?;
        let n = int(6 * a + 5);
        ensure(inv.h_cubed == int(12 * a), || format!("a = {a}: H^3 = {}", inv.h_cubed))?;
        ensure(inv.chi_h == int(6 * (a + 1)), || format!("a = {a}: chi = {}", inv.chi_h))?;
        ensure(inv.k_degenerate == int(3 * a), || format!("a = {a}: k = {}", inv.k_degenerate))?;
        ensure(inv.n_expected == n, || format!("a = {a}: n = {}", inv.n_expected))?;
        ensure(inv.h_cubed == int(2) * &n - int(10), || format!("a = {a}: d != 2n - 10"))?;
    }
    Ok("a = 1..50: H^3 = 12a, chi = 6(a+1), k = 3a, d = 2n - 10".into())
}

fn grid() -> impl Iterator<Item = (u32, i64, i64)> {
    (0u32..=4).flat_map(|g| (-8i64..=8).flat_map(move |b| (-8i64..=8).map(move |a| (g, b, a))))
}

fn chi_identity() -> CheckOutcome {
    let mut count = 0;
    for (g, b, a) in grid() {
        ensure(bundle::check_identity_chi(&BundleContext::new(g, b), a), || {
            format!("fails at g = {g}, b = {b}, a = {a}")
        })?;
        count += 1;
    }
    Ok(format!("H^3 = 2 chi(H) - 12(1-g) at {count} grid points"))
}

fn closed_forms_vs_ring() -> CheckOutcome {
    let mut count = 0;
    for (g, b, a) in grid() {
        let ctx = BundleContext::new(g, b);
        // invariants() cross-checks every closed form against the ring
        let inv = bundle::invariants(&ctx, a).map_err(|e| format!("g = {g}, b = {b}, a = {a}: {e}"))?;
        let h = ctx.polarization(a);
        let kh = &ctx.canonical() + &h;
        let h3 = bundle::triple_product(&h, &h, &h).map_err(|e| e.to_string())?;
        let ks2 = bundle::triple_product(&kh, &kh, &h).map_err(|e| e.to_string())?;
        let chi = bundle::riemann_roch_chi(&ctx, &h).map_err(|e| e.to_string())?;
        ensure(inv.h_cubed == h3 && inv.k_s_squared == ks2 && inv.chi_h == chi, || {
            format!("mismatch at g = {g}, b = {b}, a = {a}")
        })?;
        count += 1;
    }
    Ok(format!("H^3, K_S^2, chi match the ring at {count} grid points"))
}

/// `c_2(P^2 x P^1).H` from `c(T) = (1 + h)^3 (1 + f)^2` in `Z[h, f]/(h^3, f^2)`.
fn splitting_c2_dot_h(a: i64) -> i64 {
    // coefficients indexed [deg_h][deg_f]
    let mut c = [[0i64; 2]; 3];
    c[0][0] = 1;
    let mut mul = |lin: [[i64; 2]; 3]| {
        let mut out = [[0i64; 2]; 3];
        for (i, row) in c.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                for (p, lrow) in lin.iter().enumerate() {
                    for (q, &y) in lrow.iter().enumerate() {
                        if i + p < 3 && j + q < 2 {
                            out[i + p][j + q] += x * y;
                        }
                    }
                }
            }
        }
        c = out;
    };
    let one_plus_h = [[1, 0], [1, 0], [0, 0]];
    let one_plus_f = [[1, 1], [0, 0], [0, 0]];
    for _ in 0..3 {
        mul(one_plus_h);
    }
    for _ in 0..2 {
        mul(one_plus_f);
    }
    // c_2 = c[2][0] h^2 + c[1][1] h f; H = 2h + a f; only h^2 f survives
    c[2][0] * a + c[1][1] * 2
}

fn c2_oracle() -> CheckOutcome {
    let ctx = BundleContext::p2_times_p1();
    for a in -8..=50i64 {
        let oracle = splitting_c2_dot_h(a);
        ensure(oracle == 3 * a + 12, || format!("splitting oracle gives {oracle} at a = {a}"))?;
        let inv = bundle::invariants(&ctx, a).map_err(|e| e.to_string())?;
        ensure(inv.c2_dot_h == int(oracle), || format!("a = {a}: c2.H = {} vs {oracle}", inv.c2_dot_h))?;
    }
    Ok("c2.H = 3a + 12 on P^2 x P^1 for a = -8..50".into())
}

fn fiber_counts() -> CheckOutcome {
    let mut summary = Vec::new();
    for a in 1..=3u32 {
        let mut clean = 0;
        for seed in DEFAULT_SEED..DEFAULT_SEED + 20 {
            let draw = veronese::generic_fibers(a, seed).map_err(|e| format!("a = {a}, seed = {seed}: {e}"))?;
            let r = &draw.report;
            ensure(r.distinct_roots == 3 * a as usize && r.squarefree, || {
                format!("a = {a}, seed = {seed}: {} roots after redraw", r.distinct_roots)
            })?;
            ensure(r.det_degree == 3 * a as usize && r.k_equality, || {
                format!("a = {a}, seed = {seed}: bad report {r:?}")
            })?;
            if draw.redrawn_from.is_none() {
                clean += 1;
            }
        }
        ensure(clean >= 19, || format!("a = {a}: only {clean}/20 seeds generic"))?;
        summary.push(format!("a = {a}: {clean}/20"));
    }
    let mut c = SectionCoefficients::zeros(1).map_err(|e| e.to_string())?;
    for (i, j, k) in [(0, 0, 1), (1, 1, 1), (2, 2, 0), (2, 2, 1)] {
        c.set(i, j, k, int(1)).map_err(|e| e.to_string())?;
    }
    let r = veronese::count_degenerate_fibers(&c).map_err(|e| e.to_string())?;
    ensure(r.distinct_roots == 2 && !r.squarefree, || format!("engineered instance: {r:?}"))?;
    Ok(format!("3a distinct roots ({}); engineered instance has 2", summary.join(", ")))
}

fn classifier_golden() -> CheckOutcome {
    let gg = Hypotheses::gg_big();
    let golden = [
        ((3, 27, 19, gg), Outcome::ExceptionalP3Cubic, vec![Rule::T1x]),
        ((3, 12, 11, gg.terminal()), Outcome::DegreeOne, vec![Rule::EB]),
        ((3, 24, 17, gg), Outcome::BigUniruledSystemOnly, vec![]),
        ((5, 9, 16, gg), Outcome::DegreeOne, vec![Rule::C12]),
        ((3, 11, 12, Hypotheses::smooth_very_ample()), Outcome::DegreeOne, vec![Rule::HB]),
    ];
    for ((dim, d, n, flags), outcome, rules) in golden {
        let p = PolarizedPair::new(dim, d, n, flags).map_err(|e| e.to_string())?;
        let v = classify(&p).map_err(|e| e.to_string())?;
        let fired: Vec<Rule> = v.fired_rules.iter().map(|f| f.rule).collect();
        ensure(v.outcome == outcome && fired == rules, || {
            format!("({dim}, {d}, {n}): {} via {fired:?}", v.outcome)
        })?;
    }
    let flag_sets = [gg, gg.terminal(), Hypotheses::smooth_very_ample(), {
        let mut all = gg.terminal();
        all.smooth = true;
        all.very_ample = true;
        all
    }];
    let mut points = 0;
    for d in 1..=60i64 {
        for n in 4..=30i64 {
            for flags in flag_sets {
                let v = classify(&PolarizedPair::new(3, d, n, flags).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                let degree_one = v.fired_rules.iter().any(|f| f.rule != Rule::T1x);
                let consistent = match v.outcome {
                    Outcome::DegreeOne => degree_one,
                    Outcome::ExceptionalP3Cubic => !degree_one && (d, n) == (27, 19),
                    Outcome::BigUniruledSystemOnly => v.fired_rules.is_empty() && d < 2 * n - 4,
                    Outcome::NoConclusion => v.fired_rules.is_empty() && d >= 2 * n - 4,
                };
                ensure(consistent, || format!("contradictory verdict at (3, {d}, {n}): {v:?}"))?;
            }
            let lhs = d < 2 * (n - 3) - 4;
            let rhs = delta_genus(3, &int(d), &int(n)) < int(n - 3 - 5);
            ensure(lhs == rhs, || format!("Delta equivalence fails at d = {d}, n = {n}"))?;
            points += 1;
        }
    }
    Ok(format!("5 golden verdicts; {points} grid points consistent"))
}

fn ledger_checks(rows: &[FanoRow]) -> CheckOutcome {
    for r in rows {
        let lhs = fano::corner_ledger(&r.rho(), r.k_squared.into(), 0).map_err(|e| e.to_string())?;
        let rhs = r.d() - int(2) * r.n() + int(2);
        ensure(lhs == rhs, || format!("row ({}): ledger {lhs} vs d - 2n + 2 = {rhs}", r.label))?;
    }
    for a in 1..=10i64 {
        let s = sharp_inequality_check(&rat(2, 3), &int(12 * a), &int(-8), &int(8 - 3 * a), 0)
            .map_err(|e| e.to_string())?;
        ensure(s.holds && s.lhs == int(0) && s.rhs == int(0), || {
            format!("a = {a}: lhs {} rhs {}", s.lhs, s.rhs)
        })?;
    }
    Ok(format!("corner ledger on {} rows; surface inequality tight for a = 1..10", rows.len()))
}

/// Run checks 1-8 against the given table.
pub fn run_with_table(rows: &[FanoRow]) -> SelftestReport {
    let start = Instant::now();
    let checks = vec![
        timed(1, "table reproduction", 10, || table_reproduction(rows)),
        timed(2, "sharpness family", 100, sharpness_family),
        timed(3, "chi identity", 1_000, chi_identity),
        timed(4, "closed forms vs ring", 2_000, closed_forms_vs_ring),
        timed(5, "c2 splitting oracle", 1_000, c2_oracle),
        timed(6, "determinant fiber count", 5_000, fiber_counts),
        timed(7, "classifier golden set", 1_000, classifier_golden),
        timed(8, "ledger checks", 1_000, || ledger_checks(rows)),
    ];
    SelftestReport {
        checks,
        total_us: start.elapsed().as_micros(),
    }
}

pub fn run() -> SelftestReport {
    run_with_table(fano::table())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_oracle_by_hand() {
        // c_2 = 3h^2 + 6hf, c_2.(2h + af) = 3a + 12
        assert_eq!(splitting_c2_dot_h(0), 12);
        assert_eq!(splitting_c2_dot_h(1), 15);
    }

    #[test]
    fn corrupted_table_fails_with_exit_two() {
        let mut rows = fano::table().to_vec();
        rows[10].n = 18;
        let rep = run_with_table(&rows);
        assert!(!rep.checks[0].passed);
        assert!(!rep.checks[7].passed);
        assert_eq!(rep.exit_code(), 2);
    }
}
