//! The automation pipeline: from an eta-quotient spec, derive the divisor
//! case analysis and emit a conjectured coefficient formula.
//!
//! For each divisor d of the level L, the case gcd(k, L) = d transforms
//! every factor f(q^m) with k' = k/g, h' = (m/g)h mod k', z' = (m/g)z,
//! g = gcd(m, k) = gcd(m, d). Collecting exponents gives the summand
//! Omega_{h,k} * B * exp((pi/12k)(C/z - D z)) * z^{r/2} * (far factors),
//! and the Bessel reduction turns each contributing case (C > 0) into a
//! term with order nu = 1 + r/2 and argument (pi sqrt(C)/6k) sqrt(24n - D).

use crate::error::{Error, Result};
use crate::eval::evaluate_formula;
use crate::formula::{
    BesselKernel, Expr, FormulaCase, KPower, KRestriction, RademacherFormula,
};
use crate::numtheory::{divisors, gcd};
use crate::omega::OmegaProductDescriptor;
use crate::qseries::EtaQuotientSpec;
use rug::ops::Pow;
use rug::{Float, Rational};

/// Per-divisor case data extracted from the modular transformation.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseAnalysis {
    /// Divisor of the level; the case is gcd(k, L) = d.
    pub d: u64,
    /// gcd(m_j, k) per factor, constant across the case.
    pub g: Vec<u64>,
    /// C_d = sum e_j g_j^2 / m_j; the z^{-1} coefficient of log Psi_k is
    /// (pi/12k) C_d.
    pub c_coeff: Rational,
    /// kappa = -(sum e_j m_j)/24; the exponential pairs with n + kappa.
    pub kappa: Rational,
    /// Net eta exponent r = sum e_j; contributes z^{r/2}.
    pub r: i64,
    /// Square of the transformation constant: B^2 = prod (m_j/g_j)^{e_j}.
    pub const_factor_sq: Rational,
    /// Omega-product descriptor (the spec factors themselves).
    pub omega: OmegaProductDescriptor,
    /// True when C_d > 0; only contributing cases enter the formula.
    pub contributing: bool,
}

/// Case analysis of an eta quotient: one entry per divisor of the level,
/// ascending.
pub fn analyze_cases(spec: &EtaQuotientSpec) -> Result<Vec<CaseAnalysis>> {
    if spec.factors.is_empty() {
        return Err(Error::EmptySpec);
    }
    let level = spec.level();
    let r = spec.net_exponent();
    let kappa = crate::qseries::kappa(spec);
    let omega = OmegaProductDescriptor::new(
        spec.factors.iter().map(|f| (f.m, f.e)).collect::<Vec<_>>(),
    );
    let mut out = Vec::new();
    for d in divisors(level) {
        // g_j = gcd(m_j, d); k = d is the smallest k with gcd(k, L) = d,
        // and gcd(m, d + L) = gcd(m, d) for every factor since m | L
        let g: Vec<u64> = spec.factors.iter().map(|f| gcd(f.m, d)).collect();
        debug_assert!(spec
            .factors
            .iter()
            .zip(&g)
            .all(|(f, &gj)| gcd(f.m, d + level) == gj && gcd(f.m, d + 2 * level) == gj));
        let mut c_coeff = Rational::new();
        let mut const_factor_sq = Rational::from(1);
        for (f, &gj) in spec.factors.iter().zip(&g) {
            c_coeff += Rational::from((gj * gj, f.m)) * Rational::from(f.e);
            let ratio = Rational::from((f.m, gj));
            const_factor_sq *= Rational::from(ratio.pow(f.e));
        }
        let contributing = c_coeff > 0;
        out.push(CaseAnalysis {
            d,
            g,
            c_coeff,
            kappa: kappa.clone(),
            r,
            const_factor_sq,
            omega: omega.clone(),
            contributing,
        });
    }
    Ok(out)
}

/// sqrt of a positive rational as an expression, simplified when exact.
fn sqrt_expr(r: &Rational) -> Expr {
    let num = r.numer();
    let den = r.denom();
    if num.is_perfect_square() && den.is_perfect_square() {
        let n = num.clone().sqrt().to_i64().expect("fits");
        let d = den.clone().sqrt().to_i64().expect("fits");
        if d == 1 {
            Expr::int(n)
        } else {
            Expr::rat(n, d)
        }
    } else {
        Expr::sqrt_rational(r)
    }
}

/// Conjecture a coefficient formula for the eta quotient.
///
/// Contributing cases only. r = 0 yields the I_1 shape (k-power -1), r = 1
/// the sinh-derivative shape (k-power +1/2), even r >= 2 the general
/// I_{1+r/2} shape; odd r >= 3 and all r < 0 are rejected rather than
/// guessed. The emitted formula is labeled conjectured until a harness
/// verifies it numerically.
pub fn conjecture_formula(spec: &EtaQuotientSpec, name: &str) -> Result<RademacherFormula> {
    let cases = analyze_cases(spec)?;
    let level = spec.level();
    let r = spec.net_exponent();
    if r < 0 {
        return Err(Error::NegativeNetExponent(r));
    }
    if r >= 2 && r % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "net exponent r = {r}: half-odd orders above 3/2 produce quartic-root prefactors; not emitted"
        )));
    }
    let contributing: Vec<&CaseAnalysis> = cases.iter().filter(|c| c.contributing).collect();
    if contributing.is_empty() {
        return Err(Error::NoContributingCase);
    }
    // 24(n + kappa) = 24n - D with D = sum e_j m_j
    let d_shift = spec.weighted_exponent();
    let nu2 = (2 + r) as u32;

    let mut out_cases = Vec::new();
    for case in &contributing {
        let restriction = KRestriction::GcdEq {
            modulus: level,
            value: case.d,
        };
        if r == 1 {
            // a(n) = sum_d B_d/(pi sqrt 2) sum_k sqrt(k) [sums]
            //        d/dn( sinh((pi sqrt(2C/3)/k) sqrt(n+kappa)) / sqrt(n+kappa) )
            let weight = sqrt_expr(&case.const_factor_sq);
            let c_expr = Expr::pi().mul(sqrt_expr(
                &(Rational::from((2, 3)) * case.c_coeff.clone()),
            ));
            let radicand = Expr::n().add(Expr::rat(
                case.kappa.numer().to_i64().expect("fits"),
                case.kappa.denom().to_i64().expect("fits"),
            ));
            out_cases.push(FormulaCase {
                d: case.d,
                restriction,
                weight,
                omega: case.omega.clone(),
                kernel: BesselKernel::sinh_derivative(c_expr, radicand),
                k_power: KPower::SQRT,
            });
        } else {
            // a(n) = 2 pi sum_d B_d C_d^{nu/2} (24n - D)^{-nu/2}
            //        sum_k (1/k) [sums] I_nu((pi sqrt(C_d)/6k) sqrt(24n - D))
            let half_nu = nu2 / 2; // nu integral here (r even)
            let weight_sq = Rational::from(&case.const_factor_sq
                * Rational::from(case.c_coeff.clone().pow(half_nu as i32)));
            let weight = sqrt_expr(&weight_sq);
            let c_expr = Expr::pi().mul(sqrt_expr(&case.c_coeff)).div(Expr::int(6));
            let radicand = Expr::affine_n(24, -d_shift);
            out_cases.push(FormulaCase {
                d: case.d,
                restriction,
                weight,
                omega: case.omega.clone(),
                kernel: BesselKernel::i_series(nu2, c_expr, radicand)?,
                k_power: KPower::INVERSE,
            });
        }
    }

    let prefactor = if r == 1 {
        Expr::int(1).div(Expr::pi().mul(Expr::int(2).sqrt()))
    } else {
        // 2 pi / (24n - D)^{nu/2}
        let poly = Expr::affine_n(24, -d_shift);
        let half_nu = (nu2 / 2) as i32;
        let denom = if half_nu == 1 {
            poly.sqrt()
        } else {
            poly.pow(half_nu).sqrt()
        };
        Expr::int(2).mul(Expr::pi()).div(denom)
    };

    let f = RademacherFormula {
        name: name.to_string(),
        prefactor,
        cases: out_cases,
        oracle: spec.clone(),
        conjectured: true,
        weight_display: None,
    };
    f.validate()?;
    Ok(f)
}

/// Max over n in [n_lo, n_hi] of |eval(a) - eval(b)| / max(1, |eval(b)|).
pub fn compare_formulas(
    a: &RademacherFormula,
    b: &RademacherFormula,
    n_lo: u64,
    n_hi: u64,
    big_k: u64,
    digits: u32,
) -> Result<Float> {
    let prec = crate::eval::Precision::new(digits)?.bits();
    let mut worst = Float::new(prec);
    for n in n_lo..=n_hi {
        let va = evaluate_formula(a, n, big_k, digits)?.value;
        let vb = evaluate_formula(b, n, big_k, digits)?.value;
        let scale = Float::with_val(prec, vb.clone().abs()).max(&Float::with_val(prec, 1));
        let dev = Float::with_val(prec, &va - &vb).abs() / scale;
        worst = worst.max(&dev);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::builtin_formula;
    use crate::registry::registry_lookup;

    fn spec(raw: &[(u64, i32)]) -> EtaQuotientSpec {
        EtaQuotientSpec::new(raw).unwrap()
    }

    #[test]
    fn p_case_analysis() {
        let cases = analyze_cases(&spec(&[(1, 1)])).unwrap();
        assert_eq!(cases.len(), 1);
        let c = &cases[0];
        assert_eq!(c.d, 1);
        assert_eq!(c.c_coeff, Rational::from(1));
        assert_eq!(c.kappa, Rational::from((-1, 24)));
        assert_eq!(c.r, 1);
        assert!(c.contributing);
    }

    #[test]
    fn delta_case_analysis() {
        let cases = analyze_cases(&spec(&[(1, 1), (2, -1)])).unwrap();
        assert_eq!(cases.len(), 2);
        assert_eq!(cases[0].d, 1);
        assert_eq!(cases[0].c_coeff, Rational::from((1, 2)));
        assert_eq!(cases[0].kappa, Rational::from((1, 24)));
        assert!(cases[0].contributing);
        assert_eq!(cases[1].d, 2);
        assert_eq!(cases[1].c_coeff, Rational::from(-1));
        assert!(!cases[1].contributing);
        // B^2 for the odd-k case: (1/1)^1 (2/1)^-1 = 1/2
        assert_eq!(cases[0].const_factor_sq, Rational::from((1, 2)));
    }

    #[test]
    fn nine_regular_contributing_divisors() {
        // divisors of 9 are {1,3,9}; only d = 1 satisfies C_d > 0
        let cases = analyze_cases(&spec(&[(1, 1), (9, -1)])).unwrap();
        let contributing: Vec<u64> = cases
            .iter()
            .filter(|c| c.contributing)
            .map(|c| c.d)
            .collect();
        assert_eq!(contributing, vec![1]);
        assert_eq!(cases[0].c_coeff, Rational::from((8, 9)));
    }

    #[test]
    fn duplicate_multipliers_merge_before_analysis() {
        let a = analyze_cases(&spec(&[(1, 1), (2, -1)])).unwrap();
        let b = analyze_cases(&spec(&[(1, 2), (1, -1), (2, -2), (2, 1)])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_spec_rejected() {
        assert!(matches!(analyze_cases(&spec(&[])), Err(Error::EmptySpec)));
    }

    #[test]
    fn conjectured_delta_matches_builtin_structure() {
        let f = conjecture_formula(&registry_lookup("delta").unwrap().eta, "delta_conj").unwrap();
        assert!(f.conjectured);
        assert_eq!(f.cases.len(), 1);
        let c = &f.cases[0];
        assert_eq!(
            c.restriction,
            KRestriction::GcdEq { modulus: 2, value: 1 }
        );
        // argument matches pi sqrt(24n+1)/(6 sqrt(2) k)
        let (a, b) = c.kernel.arg_squared_over_pi2().unwrap();
        let builtin = builtin_formula("hagis_distinct").unwrap();
        let (a2, b2) = builtin.cases[0].kernel.arg_squared_over_pi2().unwrap();
        assert_eq!((a, b), (a2, b2));
    }

    #[test]
    fn no_contributing_case_is_an_error() {
        // f(q)^-1 = (q;q)_inf has C_1 = -1 < 0
        assert!(matches!(
            conjecture_formula(&spec(&[(1, -1)]), "x"),
            Err(Error::NoContributingCase)
        ));
    }

    #[test]
    fn negative_net_exponent_rejected() {
        // C_1 = 2 - 1/2 > 0 but r = -1... build one: f(q^2)/f(q)^2 has
        // C_1 = -2 + 1/2 < 0; instead use f(q)/f(q^4)^2: C_1 = 1 - 2/4 > 0, r = -1
        let s = spec(&[(1, 1), (4, -2)]);
        assert!(matches!(
            conjecture_formula(&s, "x"),
            Err(Error::NegativeNetExponent(-1))
        ));
    }

    #[test]
    fn compare_formula_with_itself_is_zero() {
        let f = builtin_formula("hagis_distinct").unwrap();
        let dev = compare_formulas(&f, &f, 1, 5, 5, 30).unwrap();
        assert_eq!(dev, 0);
    }
}
