//! Verification harness: compare a formula against its exact oracle over a
//! range of n, and reproduce the twelve-row reference table (value at
//! n = 100 and max error over 1 <= n <= 100 at K = 10).

use crate::error::{Error, Result};
use crate::eval::{evaluate_formula, Precision};
use crate::formula::{builtin_formula, RademacherFormula, TABLE_FORMULA_NAMES};
use crate::qseries::expand_eta_quotient;
use rayon::prelude::*;
use rug::{Float, Integer};

/// Per-formula verification results over an n-range at truncation K.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub name: String,
    pub n_lo: u64,
    pub n_hi: u64,
    pub big_k: u64,
    pub digits: u32,
    /// Exact oracle coefficient at n_hi.
    pub oracle_at_nmax: Integer,
    /// Formula value at n_hi.
    pub formula_at_nmax: Float,
    /// max over the range of |formula(n) - oracle(n)|.
    pub max_abs_error: Float,
    pub all_round_correct: bool,
    /// Per-n absolute errors (kept only when requested).
    pub per_n_errors: Option<Vec<(u64, Float)>>,
}

/// Evaluate `f` on [n_lo, n_hi] and compare against its oracle expansion.
///
/// The oracle is expanded once to order n_hi; evaluation errors carry
/// (formula, n) context.
pub fn verify_formula(
    f: &RademacherFormula,
    n_lo: u64,
    n_hi: u64,
    big_k: u64,
    digits: u32,
    keep_per_n: bool,
) -> Result<VerificationReport> {
    if n_lo == 0 || n_hi < n_lo {
        return Err(Error::InvalidArgument(
            "require 1 <= n_lo <= n_hi".into(),
        ));
    }
    let prec = Precision::new(digits)?.bits();
    let oracle = expand_eta_quotient(&f.oracle, n_hi as usize);
    let mut max_abs_error = Float::new(prec);
    let mut all_round_correct = true;
    let mut per_n = keep_per_n.then(Vec::new);
    let mut formula_at_nmax = Float::new(prec);
    for n in n_lo..=n_hi {
        let r = evaluate_formula(f, n, big_k, digits).map_err(|e| {
            Error::InvalidArgument(format!("evaluating {} at n = {n}: {e}", f.name))
        })?;
        let truth = oracle.coeff(n as usize);
        let err = Float::with_val(prec, &r.value - truth).abs();
        if r.rounded != *truth {
            all_round_correct = false;
        }
        if let Some(v) = per_n.as_mut() {
            v.push((n, err.clone()));
        }
        max_abs_error = max_abs_error.max(&err);
        if n == n_hi {
            formula_at_nmax = r.value;
        }
    }
    Ok(VerificationReport {
        name: f.name.clone(),
        n_lo,
        n_hi,
        big_k,
        digits,
        oracle_at_nmax: oracle.coeff(n_hi as usize).clone(),
        formula_at_nmax,
        max_abs_error,
        all_round_correct,
        per_n_errors: per_n,
    })
}

/// One row of the reference table.
#[derive(Debug, Clone)]
pub struct TableRow {
    pub name: String,
    /// Display name of the counted function.
    pub function: String,
    pub oracle_value: Integer,
    pub formula_value: Float,
    pub max_abs_error: Float,
    /// Rounded formula value at n_hi equals the oracle value.
    pub value_matches: bool,
    pub all_round_correct: bool,
    /// Reference max-error magnitude for K = 10, n <= 100.
    pub reference_max_error: f64,
    /// Set when |max_abs_error - reference| > 0.02 (soft check).
    pub max_error_warning: bool,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub n_hi: u64,
    pub big_k: u64,
    pub digits: u32,
    pub rows: Vec<TableRow>,
}

/// Display names and reference max errors (K = 10, n <= 100) for the
/// twelve table formulas, in row order.
const TABLE_META: &[(&str, &str, f64)] = &[
    ("hagis_distinct", "delta(n)", 0.211),
    ("niven_schur", "S(n)", 0.318),
    ("s5", "S_5(n)", 0.186),
    ("s10", "S_10(n)", 0.210),
    ("s24", "S_24(n)", 0.200),
    ("s27", "S_27(n)", 0.188),
    ("s76", "S_76(n)", 0.050),
    ("s77", "S_77(n)", 0.133),
    ("s78", "S_78(n)", 0.143),
    ("s107", "S_107(n)", 0.166),
    ("s110", "S_110(n)", 0.216),
    ("s115", "S_115(n)", 0.162),
];

/// Reproduce the twelve-row verification table: for each formula, the
/// value at n = n_hi and the largest absolute error over 1 <= n <= n_hi
/// when the k-sums are truncated at big_k.
///
/// Rows are computed in parallel; ordering and output are deterministic.
pub fn reproduce_table(big_k: u64, n_hi: u64, digits: u32) -> Result<Table> {
    debug_assert_eq!(TABLE_META.len(), TABLE_FORMULA_NAMES.len());
    let rows: Result<Vec<TableRow>> = TABLE_META
        .par_iter()
        .map(|&(name, function, reference)| {
            let f = builtin_formula(name)?;
            let report = verify_formula(&f, 1, n_hi, big_k, digits, false)?;
            let value_matches = {
                let rounded = report
                    .formula_at_nmax
                    .clone()
                    .to_integer()
                    .unwrap_or_default();
                rounded == report.oracle_at_nmax
            };
            let max_err = report.max_abs_error.to_f64();
            Ok(TableRow {
                name: name.to_string(),
                function: function.to_string(),
                oracle_value: report.oracle_at_nmax.clone(),
                formula_value: report.formula_at_nmax.clone(),
                max_abs_error: report.max_abs_error.clone(),
                value_matches,
                all_round_correct: report.all_round_correct,
                reference_max_error: reference,
                max_error_warning: n_hi == 100
                    && big_k == 10
                    && (max_err - reference).abs() > 0.02,
            })
        })
        .collect();
    Ok(Table {
        n_hi,
        big_k,
        digits,
        rows: rows?,
    })
}

impl Table {
    pub fn all_values_match(&self) -> bool {
        self.rows.iter().all(|r| r.value_matches)
    }

    /// Markdown table mirroring the reference layout.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "| formula | function | value at n={} | max error |\n",
            self.n_hi
        ));
        out.push_str("| --- | --- | ---: | ---: |\n");
        for r in &self.rows {
            out.push_str(&format!(
                "| {} | {} | {} | {:.3} |\n",
                r.name,
                r.function,
                r.oracle_value,
                r.max_abs_error.to_f64()
            ));
        }
        out
    }

    /// CSV with columns name, n_max, oracle_value, formula_value,
    /// max_abs_error, pass.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,n_max,oracle_value,formula_value,max_abs_error,pass\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{:.6},{}\n",
                r.name,
                self.n_hi,
                r.oracle_value,
                crate::eval::format_float(&r.formula_value, 20),
                r.max_abs_error.to_f64(),
                r.value_matches && r.all_round_correct
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n_hi": self.n_hi,
            "K": self.big_k,
            "digits": self.digits,
            "rows": self.rows.iter().map(|r| serde_json::json!({
                "name": r.name,
                "function": r.function,
                "oracle_value": r.oracle_value.to_string(),
                "formula_value": crate::eval::format_float(&r.formula_value, 20),
                "max_abs_error": r.max_abs_error.to_f64(),
                "value_matches": r.value_matches,
                "all_round_correct": r.all_round_correct,
                "reference_max_error": r.reference_max_error,
                "max_error_warning": r.max_error_warning,
            })).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rademacher_p_at_one() {
        let f = builtin_formula("rademacher_p").unwrap();
        let r = verify_formula(&f, 1, 1, 10, 50, true).unwrap();
        assert_eq!(r.oracle_at_nmax, Integer::from(1));
        assert!(r.all_round_correct);
        assert!(r.max_abs_error < 0.5);
        assert_eq!(r.per_n_errors.unwrap().len(), 1);
    }

    #[test]
    fn hagis_report_small_range() {
        let f = builtin_formula("hagis_distinct").unwrap();
        let r = verify_formula(&f, 1, 20, 10, 40, false).unwrap();
        assert!(r.all_round_correct);
        assert!(r.max_abs_error < 0.5);
    }

    #[test]
    fn bad_range_rejected() {
        let f = builtin_formula("rademacher_p").unwrap();
        assert!(verify_formula(&f, 0, 4, 10, 30, false).is_err());
        assert!(verify_formula(&f, 5, 4, 10, 30, false).is_err());
    }
}
