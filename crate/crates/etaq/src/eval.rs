//! High-precision numerical evaluation of formulas truncated at K terms.
//!
//! Working precision is expressed in significant decimal digits (default
//! 50) and mapped to binary precision with guard bits. The h-sums use the
//! exact root-of-unity phase e^{-2 pi i n h / k} * Omega(h,k): the rational
//! angle is reduced exactly and converted to floating complex once per
//! term, so no phase drift accumulates.

use crate::error::{Error, Result};
use crate::formula::{eval_expr, Bindings, KernelKind, RademacherFormula};
use crate::numtheory::gcd;
use crate::omega::ExactRootOfUnity;
use rug::{Complex, Float, Integer, Rational};

/// Working precision in significant decimal digits (>= 15, default 50).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    digits: u32,
}

pub const DEFAULT_DIGITS: u32 = 50;

impl Precision {
    pub fn new(digits: u32) -> Result<Self> {
        if digits < 15 {
            return Err(Error::PrecisionTooLow(digits));
        }
        Ok(Precision { digits })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Binary precision with guard bits.
    pub fn bits(&self) -> u32 {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 48
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            digits: DEFAULT_DIGITS,
        }
    }
}

/// Result of evaluating a formula at one n.
#[derive(Debug, Clone)]
pub struct EvalResult {
    /// Real part of the truncated sum (the predicted coefficient).
    pub value: Float,
    /// Nearest integer to `value`.
    pub rounded: Integer,
    /// Largest k actually included in any case.
    pub k_used: u64,
    /// Magnitude of the imaginary part; a correctness signal, since the
    /// full h-sum pairs conjugate terms.
    pub imag_residual: Float,
}

/// I_nu(x) for half-integer or integer nu >= 1, by the ascending series
/// sum_{m>=0} (x/2)^{nu+2m} / (m! Gamma(nu+m+1)).
///
/// `nu2` is twice the order. Terms are all positive; summation stops once
/// the term falls below the running sum by the full working precision.
pub fn bessel_i(nu2: u32, x: &Float, digits: u32) -> Result<Float> {
    if nu2 < 2 {
        return Err(Error::BesselOrderTooSmall(nu2));
    }
    if !(*x >= 0) {
        return Err(Error::NegativeBesselArgument(format!("{:e}", x.to_f64())));
    }
    let prec = Precision::new(digits)?.bits();
    if x.is_zero() {
        return Ok(Float::new(prec));
    }
    let half = Float::with_val(prec, x / 2u32);
    let half_sq = Float::with_val(prec, &half * &half);
    let nu = Float::with_val(prec, Rational::from((nu2, 2)));
    // t_0 = (x/2)^nu / Gamma(nu+1)
    let gamma = Float::with_val(prec, &nu + 1u32).gamma();
    let mut term = half.pow(&nu) / gamma;
    let mut sum = Float::new(prec);
    let mut m = 0u32;
    loop {
        sum += &term;
        // t_{m+1} = t_m * (x/2)^2 / ((m+1)(nu+m+1))
        let denom = Float::with_val(prec, &nu + (m + 1)) * (m + 1);
        term = term * &half_sq / denom;
        m += 1;
        if term < Float::with_val(prec, &sum >> prec) {
            break;
        }
        debug_assert!(m < 100_000, "bessel series failed to converge");
    }
    Ok(sum)
}

/// Elementary closed form of I_{3/2}: sqrt(2/(pi x)) (cosh x - sinh x / x).
///
/// Cross-check partner for the ascending series.
pub fn bessel_i_3_2_elementary(x: &Float, digits: u32) -> Result<Float> {
    if !(*x >= 0) {
        return Err(Error::NegativeBesselArgument(format!("{:e}", x.to_f64())));
    }
    let prec = Precision::new(digits)?.bits();
    if x.is_zero() {
        return Ok(Float::new(prec));
    }
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let (sinh, cosh) = Float::with_val(prec, x).sinh_cosh(Float::new(prec));
    let factor = (Float::with_val(prec, 2) / (pi * x)).sqrt();
    Ok(factor * (cosh - sinh / x))
}

/// d/dn ( sinh(c sqrt(n-a)) / sqrt(n-a) ), by the closed-form derivative
/// (c cosh(c y)/y - sinh(c y)/y^2) / (2y) with y = sqrt(n-a).
///
/// No numeric differencing is involved. Errors when n <= a.
pub fn sinh_kernel(n: &Rational, c: &Float, a: &Rational, digits: u32) -> Result<Float> {
    let radicand = Rational::from(n - a);
    if radicand <= 0 {
        return Err(Error::SinhKernelDomain(radicand.to_string()));
    }
    let prec = Precision::new(digits)?.bits();
    let y = Float::with_val(prec, &radicand).sqrt();
    let arg = Float::with_val(prec, c * &y);
    let (sinh, cosh) = arg.sinh_cosh(Float::new(prec));
    let y_sq = Float::with_val(prec, &y * &y);
    let bracket = Float::with_val(prec, c * &cosh) / &y - sinh / y_sq;
    Ok(bracket / (Float::with_val(prec, 2) * &y))
}

/// The leading-order estimate exp(pi sqrt(2n/3)) / (4 n sqrt(3)).
pub fn hr_asymptotic(n: u64, digits: u32) -> Result<Float> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    let prec = Precision::new(digits)?.bits();
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let arg = (Float::with_val(prec, 2u64 * n) / 3u32).sqrt() * pi;
    let denom = Float::with_val(prec, 4u64 * n) * Float::with_val(prec, 3).sqrt();
    Ok(arg.exp() / denom)
}

/// Exact combined phase e^{-2 pi i n h / k} * Omega(h,k) as a root of unity.
fn phase_times_omega(
    omega: &crate::omega::OmegaProductDescriptor,
    n: u64,
    h: u64,
    k: u64,
) -> Result<ExactRootOfUnity> {
    let nh_mod = (n as u128 * h as u128 % k as u128) as i64;
    let phase = ExactRootOfUnity::from_theta(Rational::from((-2 * nh_mod, k as i64)));
    Ok(phase.mul(&omega.evaluate(h, k)?))
}

/// Evaluate a formula at n, summing every admissible k <= big_k per case.
///
/// Per (case, k): k^{k_power} * [sum over coprime h of phase * Omega] *
/// kernel(n, k); cases are then scaled by their weights and the whole sum
/// by the prefactor. Summation order is fixed (cases in declared order, k
/// ascending, h ascending) so output is reproducible byte for byte.
pub fn evaluate_formula(
    f: &RademacherFormula,
    n: u64,
    big_k: u64,
    digits: u32,
) -> Result<EvalResult> {
    if n == 0 || big_k == 0 {
        return Err(Error::InvalidArgument("require n >= 1 and K >= 1".into()));
    }
    let prec = Precision::new(digits)?.bits();
    let n_bind = Bindings::n(n);
    let prefactor = eval_expr(&f.prefactor, &n_bind, digits)?;
    let mut total = Complex::new(prec);
    let mut k_used = 0u64;

    for case in &f.cases {
        let case_bind = Bindings::n(n).with_d(case.d);
        let weight = eval_expr(&case.weight, &case_bind, digits)?;
        if weight.is_zero() {
            continue;
        }
        let c_val = eval_expr(&case.kernel.arg_constant, &case_bind, digits)?;
        let (alpha, beta) = case.kernel.radicand_affine()?;
        let radicand = Rational::from(&alpha * Rational::from(n)) + &beta;
        let mut case_sum = Complex::new(prec);

        for k in 1..=big_k {
            if !case.restriction.admits(k) {
                continue;
            }
            k_used = k_used.max(k);
            let kernel_value = kernel_at(case, &c_val, &radicand, &alpha, k, prec, digits)
                .map_err(|e| Error::Kernel {
                    formula: f.name.clone(),
                    d: case.d,
                    k,
                    source: Box::new(e),
                })?;
            let mut h_sum = Complex::new(prec);
            for h in 0..k {
                // k = 1 contributes the single term h = 0
                if k > 1 && (h == 0 || gcd(h, k) != 1) {
                    continue;
                }
                let root = phase_times_omega(&case.omega, n, h, k)?;
                h_sum += root.to_complex(prec);
            }
            let k_factor = case.k_power.apply(k, prec);
            case_sum += h_sum * k_factor * kernel_value;
        }
        total += case_sum * Complex::with_val(prec, (&weight, Float::new(prec)));
    }

    let value_c = total * Complex::with_val(prec, (&prefactor, Float::new(prec)));
    let value = value_c.real().clone();
    let imag_residual = value_c.imag().clone().abs();
    let rounded = value
        .to_integer()
        .ok_or_else(|| Error::InvalidArgument("formula value is not finite".into()))?;
    Ok(EvalResult {
        value,
        rounded,
        k_used,
        imag_residual,
    })
}

fn kernel_at(
    case: &crate::formula::FormulaCase,
    c_val: &Float,
    radicand: &Rational,
    alpha: &Rational,
    k: u64,
    prec: u32,
    digits: u32,
) -> Result<Float> {
    let c_over_k = Float::with_val(prec, c_val / Float::with_val(prec, k));
    match case.kernel.kind {
        KernelKind::ISeries => {
            if *radicand < 0 {
                return Err(Error::NegativeBesselArgument(radicand.to_string()));
            }
            let x = Float::with_val(prec, radicand).sqrt() * &c_over_k;
            bessel_i(case.kernel.nu2, &x, digits)
        }
        KernelKind::SinhDerivative => {
            // alpha-scaled chain rule: radicand = alpha*n + beta
            if *radicand <= 0 {
                return Err(Error::SinhKernelDomain(radicand.to_string()));
            }
            let y = Float::with_val(prec, radicand).sqrt();
            let arg = Float::with_val(prec, &c_over_k * &y);
            let (sinh, cosh) = arg.sinh_cosh(Float::new(prec));
            let y_sq = Float::with_val(prec, &y * &y);
            let bracket = Float::with_val(prec, &c_over_k * &cosh) / &y - sinh / y_sq;
            let deriv = bracket / (Float::with_val(prec, 2) * &y);
            Ok(deriv * Float::with_val(prec, alpha))
        }
    }
}

/// Format a float with the given number of significant decimal digits,
/// deterministically.
pub fn format_float(x: &Float, sig_digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = x.to_string_radix(10, Some(sig_digits.max(1)));
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::builtin_formula;

    fn f200(s: &str) -> Float {
        Float::with_val(220, Float::parse(s).unwrap())
    }

    #[test]
    fn bessel_basic_values() {
        // ascending series at 60 digits vs independently computed references
        let x = Float::with_val(256, 2);
        let v = bessel_i(2, &x, 60).unwrap();
        let expect = f200("1.590636854637329063382254424999666247954478159495536647132");
        assert!((v - expect).abs() < 1e-55);

        let x = Float::with_val(256, Rational::from((1, 2)));
        let v = bessel_i(2, &x, 60).unwrap();
        let expect = f200("0.25789430539089631636247965952320963418774314964079457273094");
        assert!((v - expect).abs() < 1e-55);

        let zero = Float::with_val(128, 0);
        assert_eq!(bessel_i(2, &zero, 30).unwrap(), 0);
        assert!(bessel_i(1, &x, 30).is_err());
        let neg = Float::with_val(128, -1);
        assert!(bessel_i(2, &neg, 30).is_err());
    }

    #[test]
    fn bessel_three_half_matches_elementary() {
        for &x in &[0.1f64, 1.0, 10.0, 30.0] {
            let xf = Float::with_val(400, x);
            let a = bessel_i(3, &xf, 60).unwrap();
            let b = bessel_i_3_2_elementary(&xf, 60).unwrap();
            let rel = Float::with_val(400, &a - &b).abs() / a.clone();
            assert!(rel < Float::with_val(400, 1e-55), "x={x} rel={rel}");
        }
    }

    #[test]
    fn bessel_i2_reference() {
        let x = Float::with_val(256, 3);
        let v = bessel_i(4, &x, 55).unwrap();
        let expect = f200("2.2452124409299511546254783856342650577015144596784914976690");
        assert!((v - expect).abs() < 1e-50);
    }

    #[test]
    fn sinh_kernel_reference_and_half_order_identity() {
        // d/dn(sinh(c sqrt(n-1/24))/sqrt(n-1/24)) at n=5, c = pi sqrt(2/3),
        // frozen from an independent 70-digit computation
        let prec = Precision::new(60).unwrap().bits();
        let c = Float::with_val(prec, rug::float::Constant::Pi)
            * (Float::with_val(prec, 2) / 3u32).sqrt();
        let v = sinh_kernel(&Rational::from(5), &c, &Rational::from((1, 24)), 60).unwrap();
        let expect = f200("32.264661048422409163006997651749141449612529353765707391529");
        assert!((v - expect).abs() < 1e-52);

        // I_{3/2}(z) = sqrt(2z/pi) d/dz (sinh z / z) at z = 3
        let z = Float::with_val(prec, 3);
        let i32v = bessel_i(3, &z, 60).unwrap();
        let expect = f200("3.0994834567256358101124016475952766671520460940958382190435");
        assert!((i32v - expect).abs() < 1e-52);

        // domain error
        assert!(sinh_kernel(&Rational::from(0), &c, &Rational::from((1, 24)), 30).is_err());
    }

    #[test]
    fn sinh_kernel_matches_finite_difference() {
        // central difference with step 1e-8 at 50 digits
        let prec = Precision::new(50).unwrap().bits();
        let c = Float::with_val(prec, rug::float::Constant::Pi)
            * (Float::with_val(prec, 2) / 3u32).sqrt();
        let a = Rational::from((1, 24));
        let s_at = |n: Rational| -> Float {
            let y = Float::with_val(prec, Rational::from(&n - &a)).sqrt();
            Float::with_val(prec, &c * &y).sinh() / y
        };
        let h = Rational::from((1, 100_000_000));
        let diff = (s_at(Rational::from(5) + h.clone()) - s_at(Rational::from(5) - h.clone()))
            / Float::with_val(prec, Rational::from(2 * h));
        let exact = sinh_kernel(&Rational::from(5), &c, &a, 50).unwrap();
        let rel = Float::with_val(prec, &exact - &diff).abs() / exact.clone();
        assert!(rel < 1e-15, "rel={rel}");
    }

    #[test]
    fn rademacher_p_small_values() {
        let f = builtin_formula("rademacher_p").unwrap();
        let oracle = [1u64, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42];
        for n in 1..=10u64 {
            let r = evaluate_formula(&f, n, 10, 50).unwrap();
            assert_eq!(r.rounded, Integer::from(oracle[n as usize]), "n={n}");
            assert!(r.imag_residual < 1e-20);
        }
    }

    #[test]
    fn hagis_distinct_at_100() {
        let f = builtin_formula("hagis_distinct").unwrap();
        let r = evaluate_formula(&f, 100, 10, 50).unwrap();
        assert_eq!(r.rounded, Integer::from(444793));
        let err = (r.value.clone() - Integer::from(444793)).abs();
        assert!(err < 0.3, "error {err}");
        assert_eq!(r.k_used, 9); // largest odd k <= 10
    }

    #[test]
    fn hr_asymptotic_values() {
        let v = hr_asymptotic(1, 50).unwrap();
        let expect = f200("1.8766704226053691623464052891771153780956349915924676301761");
        assert!((v.clone() - expect).abs() < 1e-45);
        // relative quality improves from n = 10 to n = 50
        let p10 = 42.0;
        let p50 = 204226.0;
        let r10 = hr_asymptotic(10, 30).unwrap().to_f64() / p10;
        let r50 = hr_asymptotic(50, 30).unwrap().to_f64() / p50;
        assert!((r50 - 1.0).abs() < (r10 - 1.0).abs());
    }

    #[test]
    fn format_float_is_stable() {
        let x = Float::with_val(128, Rational::from((1, 3)));
        assert_eq!(format_float(&x, 10), "3.333333333e-1");
        assert_eq!(format_float(&Float::with_val(64, 0), 10), "0");
    }
}
