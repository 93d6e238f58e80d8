//! Polarized Q-Fano threefolds `(T, H)` with `K_T ~ -(1/rho) H`.
//!
//! A general `S in |H|` is a smooth del Pezzo surface with
//! `H|_S = rho/(rho - 1) K_S`, so the degree and section count of the pair
//! follow from `(rho, K_S^2)` alone:
//!
//! ```text
//! d = (rho/(rho-1))^2 K_S^2,        n = rho K_S^2 / (2 (rho-1)^2) + 1.
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_rational, int, rat, serde_rational, strictly_between, Rational};

/// One row of the table. Ambient and section descriptions are opaque text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoRow {
    pub label: char,
    pub ambient: &'static str,
    pub section: &'static str,
    pub rho: (i64, i64),
    /// The listed value of `-rho/(rho - 1)`.
    pub ratio: (i64, i64),
    pub k_squared: u32,
    pub d: u32,
    pub n: u32,
}

impl FanoRow {
    pub fn rho(&self) -> Rational {
        rat(self.rho.0, self.rho.1)
    }

    pub fn ratio(&self) -> Rational {
        rat(self.ratio.0, self.ratio.1)
    }

    pub fn k_squared(&self) -> Rational {
        int(self.k_squared.into())
    }

    pub fn d(&self) -> Rational {
        int(self.d.into())
    }

    pub fn n(&self) -> Rational {
        int(self.n.into())
    }

    /// Fields in CSV column order, see [`CSV_HEADER`].
    pub fn csv_fields(&self) -> [String; 8] {
        [
            self.label.to_string(),
            self.ambient.to_string(),
            self.section.to_string(),
            self.rho.0.to_string(),
            self.rho.1.to_string(),
            self.k_squared.to_string(),
            self.d.to_string(),
            self.n.to_string(),
        ]
    }
}

pub const CSV_HEADER: [&str; 8] = ["label", "ambient", "section", "rho_num", "rho_den", "K2", "d", "n"];

macro_rules! row {
    ($l:literal, $amb:literal, $sec:literal, $rn:literal / $rd:literal, $qn:literal / $qd:literal, $k2:literal, $d:literal, $n:literal) => {
        FanoRow {
            label: $l,
            ambient: $amb,
            section: $sec,
            rho: ($rn, $rd),
            ratio: ($qn, $qd),
            k_squared: $k2,
            d: $d,
            n: $n,
        }
    };
}

static TABLE: [FanoRow; 20] = [
    row!('a', "P(1,1,2,3)", "H6 ⊂ X", 6 / 7, 6 / 1, 1, 36, 22),
    row!('b', "X6 ⊂ P(1,1,2,3,3)", "X6 ∩ {x4=0}", 3 / 4, 3 / 1, 1, 9, 7),
    row!('c', "X6 ⊂ P(1,1,2,3,4)", "X6 ∩ {x4=0}", 4 / 5, 4 / 1, 1, 16, 11),
    row!('d', "X6 ⊂ P(1,1,2,3,5)", "X6 ∩ {x4=0}", 5 / 6, 5 / 1, 1, 25, 16),
    row!('e', "X6 ⊂ P(1,1,2,2,3)", "X6 ∩ {x3=0}", 2 / 3, 2 / 1, 1, 4, 4),
    row!('f', "X6 ⊂ P(1,1,1,2,3)", "X6 ∩ {x0=0}", 1 / 2, 1 / 1, 1, 1, 2),
    row!('g', "P(1,1,1,2)", "H4 ⊂ X", 4 / 5, 4 / 1, 2, 32, 21),
    row!('h', "X4 ⊂ P(1,1,1,2,2)", "X4 ∩ {x4=0}", 2 / 3, 2 / 1, 2, 8, 7),
    row!('i', "X4 ⊂ P(1,1,1,2,3)", "X4 ∩ {x4=0}", 3 / 4, 3 / 1, 2, 18, 13),
    row!('j', "X4 ⊂ P(1,1,1,1,2)", "X4 ∩ {x0=0}", 1 / 2, 1 / 1, 2, 2, 3),
    row!('k', "P^3", "H3 ⊂ X", 3 / 4, 3 / 1, 3, 27, 19),
    row!('l', "X3 ⊂ P(1,1,1,1,2)", "X3 ∩ {x4=0}", 2 / 3, 2 / 1, 3, 12, 10),
    row!('m', "X3 ⊂ P^4", "X3 ∩ {x0=0}", 1 / 2, 1 / 1, 3, 3, 4),
    row!('n', "X2 ⊂ P^4", "H2,2 ⊂ X2", 2 / 3, 2 / 1, 4, 16, 13),
    row!('o', "X2,2 ⊂ P^5", "X2,2 ∩ {x0=0}", 1 / 2, 1 / 1, 4, 4, 5),
    row!('p', "P^6 ∩ G(1,4)", "X ∩ {x0=0}", 1 / 2, 1 / 1, 5, 5, 6),
    row!('q', "X2 ⊂ P^4", "X2 ∩ {x0=0} ≅ P^1 × P^1", 1 / 3, 1 / 2, 8, 2, 4),
    row!('r', "P^3", "P^1 × P^1 ≅ H2 ⊂ X", 1 / 2, 1 / 1, 8, 8, 9),
    row!('s', "P^3", "{x0=0} ≅ P^2 ⊂ X", 1 / 4, 1 / 3, 9, 1, 3),
    row!('t', "P(1,1,1,2)", "{x3=0} ≅ P^2 ⊂ X", 2 / 5, 2 / 3, 9, 4, 6),
];

pub fn table() -> &'static [FanoRow] {
    &TABLE
}

pub fn row(label: char) -> Result<&'static FanoRow> {
    let label = label.to_ascii_lowercase();
    TABLE
        .iter()
        .find(|r| r.label == label)
        .ok_or_else(|| Error::UnknownRow(label.to_string()))
}

fn check_index(rho: &Rational) -> Result<()> {
    if strictly_between(rho, &int(0), &int(1)) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange(format_rational(rho)))
    }
}

/// `-rho / (rho - 1)`
pub fn ratio(rho: &Rational) -> Result<Rational> {
    check_index(rho)?;
    Ok(-(rho / (rho - int(1))))
}

/// `(d, n)` of the polarized pair from its index and `K_S^2`.
pub fn derive_d_n(rho: &Rational, k_squared: &Rational) -> Result<(Rational, Rational)> {
    check_index(rho)?;
    let rm1 = rho - int(1);
    let d = (rho / &rm1) * (rho / &rm1) * k_squared;
    let n = rho * k_squared / (int(2) * &rm1 * &rm1) + int(1);
    Ok((d, n))
}

/// `d - 2n + 2 = rho/(rho - 1) K^2 + sum(mu)` on the minimal surface.
pub fn corner_ledger(rho: &Rational, k_sharp_squared: i64, mu_sum: u64) -> Result<Rational> {
    check_index(rho)?;
    Ok(rho / (rho - int(1)) * int(k_sharp_squared) + Rational::from_integer(mu_sum.into()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowMismatch {
    pub label: char,
    pub field: String,
    #[serde(with = "serde_rational")]
    pub stored: Rational,
    #[serde(with = "serde_rational")]
    pub derived: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub rows_checked: usize,
    pub rows_verified: usize,
    pub mismatches: Vec<RowMismatch>,
}

impl TableReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Recompute `d`, `n` and the ratio column of each row.
pub fn verify_rows(rows: &[FanoRow]) -> TableReport {
    let mut mismatches = Vec::new();
    let mut rows_verified = 0;
    for r in rows {
        let before = mismatches.len();
        let mut push = |field: &str, stored: Rational, derived: Rational| {
            if stored != derived {
                mismatches.push(RowMismatch {
                    label: r.label,
                    field: field.to_string(),
                    stored,
                    derived,
                });
            }
        };
        match (derive_d_n(&r.rho(), &r.k_squared()), ratio(&r.rho())) {
            (Ok((d, n)), Ok(q)) => {
                push("d", r.d(), d);
                push("n", r.n(), n);
                push("ratio", r.ratio(), q);
            }
            _ => push("rho", r.rho(), int(0)),
        }
        if mismatches.len() == before {
            rows_verified += 1;
        }
    }
    TableReport {
        rows_checked: rows.len(),
        rows_verified,
        mismatches,
    }
}

pub fn verify_table() -> TableReport {
    verify_rows(table())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_examples() {
        assert_eq!(derive_d_n(&rat(3, 4), &int(3)).unwrap(), (int(27), int(19)));
        assert_eq!(derive_d_n(&rat(6, 7), &int(1)).unwrap(), (int(36), int(22)));
        assert_eq!(derive_d_n(&rat(1, 3), &int(8)).unwrap(), (int(2), int(4)));
    }

    #[test]
    fn index_must_lie_in_open_unit_interval() {
        for rho in [int(0), int(1), rat(3, 2), rat(-1, 2)] {
            assert!(matches!(derive_d_n(&rho, &int(1)), Err(Error::IndexOutOfRange(_))));
            assert!(matches!(corner_ledger(&rho, 1, 0), Err(Error::IndexOutOfRange(_))));
        }
    }

    #[test]
    fn whole_table_verifies() {
        let rep = verify_table();
        assert_eq!(rep.rows_checked, 20);
        assert_eq!(rep.rows_verified, 20);
        assert!(rep.is_clean(), "{:?}", rep.mismatches);
    }

    #[test]
    fn labels_are_a_through_t() {
        let labels: String = table().iter().map(|r| r.label).collect();
        assert_eq!(labels, "abcdefghijklmnopqrst");
    }

    #[test]
    fn single_row_lookup() {
        let g = row('g').unwrap();
        assert_eq!((g.rho(), g.k_squared, g.d, g.n), (rat(4, 5), 2, 32, 21));
        assert!(verify_rows(std::slice::from_ref(g)).is_clean());
        assert_eq!(row('G').unwrap().label, 'g');
        assert!(matches!(row('z'), Err(Error::UnknownRow(_))));
    }

    #[test]
    fn tampered_row_is_reported() {
        let mut rows = table().to_vec();
        rows[6].d = 33;
        let rep = verify_rows(&rows);
        assert_eq!(rep.rows_verified, 19);
        assert_eq!(
            rep.mismatches,
            vec![RowMismatch {
                label: 'g',
                field: "d".into(),
                stored: int(33),
                derived: int(32),
            }]
        );
    }

    #[test]
    fn corner_ledger_examples() {
        // case (r): d - 2n = sum(mu) - 10
        assert_eq!(corner_ledger(&rat(1, 2), 8, 0).unwrap(), int(-8));
        // case (t): d - 2n = sum(mu) - 8
        assert_eq!(corner_ledger(&rat(2, 5), 9, 0).unwrap(), int(-6));
        // case (k): 27 - 38 + 2
        assert_eq!(corner_ledger(&rat(3, 4), 3, 0).unwrap(), int(-9));
        assert_eq!(corner_ledger(&rat(3, 4), 3, 2).unwrap(), int(-7));
    }

    #[test]
    fn corner_ledger_matches_every_row() {
        for r in table() {
            let lhs = corner_ledger(&r.rho(), r.k_squared.into(), 0).unwrap();
            assert_eq!(lhs, r.d() - int(2) * r.n() + int(2), "row {}", r.label);
        }
    }

    #[test]
    fn csv_fields_follow_header() {
        let k = row('k').unwrap().csv_fields();
        assert_eq!(k, ["k", "P^3", "H3 ⊂ X", "3", "4", "3", "27", "19"].map(String::from));
    }
}
