//! Intermediate representation of Rademacher-type formulas.
//!
//! A [`RademacherFormula`] is a prefactor (a function of n), plus one case
//! per divisor class of k. Each case carries a k-restriction, a constant
//! weight, an omega-product descriptor, a Bessel kernel, and the power of k
//! in the per-term prefactor. JSON is the persistent format; LaTeX is
//! write-only display output.

mod builtins;
mod latex;

pub use builtins::{builtin_formula, builtin_names, TABLE_FORMULA_NAMES};
pub use latex::to_latex;

use crate::error::{Error, Result};
use crate::numtheory::gcd;
use crate::omega::OmegaProductDescriptor;
use crate::qseries::EtaQuotientSpec;
use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

/// Variables an expression may reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    N,
    K,
    D,
}

impl Var {
    fn letter(self) -> char {
        match self {
            Var::N => 'n',
            Var::K => 'k',
            Var::D => 'd',
        }
    }
}

/// Expression tree over integers, rationals, pi, variables, and the
/// arithmetic closure {neg, +, -, *, /, integer powers, sqrt}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expr {
    Int(i64),
    Rat { num: i64, den: i64 },
    Pi,
    Var(Var),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn int(v: i64) -> Expr {
        Expr::Int(v)
    }
    pub fn rat(num: i64, den: i64) -> Expr {
        assert!(den != 0);
        Expr::Rat { num, den }
    }
    pub fn pi() -> Expr {
        Expr::Pi
    }
    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }
    pub fn n() -> Expr {
        Expr::Var(Var::N)
    }
    pub fn add(self, other: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(other))
    }
    pub fn sub(self, other: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(other))
    }
    pub fn mul(self, other: Expr) -> Expr {
        Expr::Mul(Box::new(self), Box::new(other))
    }
    pub fn div(self, other: Expr) -> Expr {
        Expr::Div(Box::new(self), Box::new(other))
    }
    pub fn pow(self, e: i32) -> Expr {
        Expr::Pow(Box::new(self), e)
    }
    pub fn sqrt(self) -> Expr {
        Expr::Sqrt(Box::new(self))
    }
    pub fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }

    /// a*n + b with integer coefficients.
    pub fn affine_n(a: i64, b: i64) -> Expr {
        let an = if a == 1 {
            Expr::n()
        } else {
            Expr::int(a).mul(Expr::n())
        };
        if b == 0 {
            an
        } else if b > 0 {
            an.add(Expr::int(b))
        } else {
            an.sub(Expr::int(-b))
        }
    }

    /// sqrt of an exact rational, written with an integer radicand when
    /// possible.
    pub fn sqrt_rational(r: &Rational) -> Expr {
        if r.denom() == &1 {
            Expr::int(r.numer().to_i64().expect("radicand fits i64")).sqrt()
        } else {
            Expr::rat(
                r.numer().to_i64().expect("radicand fits i64"),
                r.denom().to_i64().expect("radicand fits i64"),
            )
            .sqrt()
        }
    }
}

/// Variable bindings for evaluation. Unbound variables are errors.
#[derive(Debug, Clone, Default)]
pub struct Bindings {
    pub n: Option<Rational>,
    pub k: Option<Rational>,
    pub d: Option<Rational>,
}

impl Bindings {
    pub fn none() -> Self {
        Bindings::default()
    }
    pub fn n(value: impl Into<Rational>) -> Self {
        Bindings {
            n: Some(value.into()),
            ..Default::default()
        }
    }
    pub fn with_d(mut self, value: impl Into<Rational>) -> Self {
        self.d = Some(value.into());
        self
    }
    pub fn with_k(mut self, value: impl Into<Rational>) -> Self {
        self.k = Some(value.into());
        self
    }
    fn get(&self, v: Var) -> Result<&Rational> {
        let slot = match v {
            Var::N => &self.n,
            Var::K => &self.k,
            Var::D => &self.d,
        };
        slot.as_ref().ok_or(Error::UnboundVariable(v.letter()))
    }
}

/// Evaluation value: exact rational until an irrational operation appears,
/// then floating at working precision. Rounding therefore enters once.
enum Value {
    Exact(Rational),
    Approx(Float),
}

impl Value {
    fn to_float(&self, prec: u32) -> Float {
        match self {
            Value::Exact(r) => Float::with_val(prec, r),
            Value::Approx(f) => f.clone(),
        }
    }
}

fn is_perfect_square(r: &Rational) -> Option<Rational> {
    if *r < 0 {
        return None;
    }
    let (num, den) = (r.numer(), r.denom());
    if num.is_perfect_square() && den.is_perfect_square() {
        Some(Rational::from((
            num.clone().sqrt(),
            den.clone().sqrt(),
        )))
    } else {
        None
    }
}

fn eval_value(e: &Expr, b: &Bindings, prec: u32) -> Result<Value> {
    use Value::*;
    Ok(match e {
        Expr::Int(v) => Exact(Rational::from(*v)),
        Expr::Rat { num, den } => {
            if *den == 0 {
                return Err(Error::DivisionByZero);
            }
            Exact(Rational::from((*num, *den)))
        }
        Expr::Pi => Approx(Float::with_val(prec, rug::float::Constant::Pi)),
        Expr::Var(v) => Exact(b.get(*v)?.clone()),
        Expr::Neg(x) => match eval_value(x, b, prec)? {
            Exact(r) => Exact(-r),
            Approx(f) => Approx(-f),
        },
        Expr::Add(x, y) | Expr::Sub(x, y) | Expr::Mul(x, y) | Expr::Div(x, y) => {
            let lhs = eval_value(x, b, prec)?;
            let rhs = eval_value(y, b, prec)?;
            match (lhs, rhs, e) {
                (Exact(a), Exact(c), Expr::Add(..)) => Exact(a + c),
                (Exact(a), Exact(c), Expr::Sub(..)) => Exact(a - c),
                (Exact(a), Exact(c), Expr::Mul(..)) => Exact(a * c),
                (Exact(a), Exact(c), Expr::Div(..)) => {
                    if c == 0 {
                        return Err(Error::DivisionByZero);
                    }
                    Exact(a / c)
                }
                (lhs, rhs, _) => {
                    let a = lhs.to_float(prec);
                    let c = rhs.to_float(prec);
                    Approx(match e {
                        Expr::Add(..) => a + c,
                        Expr::Sub(..) => a - c,
                        Expr::Mul(..) => a * c,
                        Expr::Div(..) => {
                            if c == 0 {
                                return Err(Error::DivisionByZero);
                            }
                            a / c
                        }
                        _ => unreachable!(),
                    })
                }
            }
        }
        Expr::Pow(x, e2) => match eval_value(x, b, prec)? {
            Exact(r) => {
                if r == 0 && *e2 < 0 {
                    return Err(Error::DivisionByZero);
                }
                Exact(r.pow(*e2).into())
            }
            Approx(f) => Approx(f.pow(*e2)),
        },
        Expr::Sqrt(x) => match eval_value(x, b, prec)? {
            Exact(r) => {
                if r < 0 {
                    return Err(Error::NegativeRadicand);
                }
                match is_perfect_square(&r) {
                    Some(root) => Exact(root),
                    None => Approx(Float::with_val(prec, &r).sqrt()),
                }
            }
            Approx(f) => {
                if f < 0 {
                    return Err(Error::NegativeRadicand);
                }
                Approx(f.sqrt())
            }
        },
    })
}

/// Evaluate an expression at `digits` significant decimal digits.
///
/// Exact rational subtrees are evaluated exactly and rounded once at the
/// end; pi and irrational square roots switch the evaluation to floating.
pub fn eval_expr(e: &Expr, b: &Bindings, digits: u32) -> Result<Float> {
    let prec = crate::eval::Precision::new(digits)?.bits();
    Ok(eval_value(e, b, prec)?.to_float(prec))
}

/// Evaluate an expression that must be exactly rational (no pi, no
/// irrational roots); used for radicand coefficients and case weights
/// during symbolic checks.
pub fn eval_exact_rational(e: &Expr, b: &Bindings) -> Result<Rational> {
    match eval_value(e, b, 64)? {
        Value::Exact(r) => Ok(r),
        Value::Approx(_) => Err(Error::NotProductForm),
    }
}

/// An exact constant q * pi^p * sqrt(s) extracted from a product-form
/// expression (no +/- and no variables). `s` is nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactConst {
    pub q: Rational,
    pub pi_pow: i32,
    pub s: Rational,
}

impl ExactConst {
    /// The exact rational value of (self)^2 / pi^(2*expected_pi_pow),
    /// if the pi power matches.
    pub fn squared_over_pi(&self, expected_pi_pow: i32) -> Result<Rational> {
        if self.pi_pow != expected_pi_pow {
            return Err(Error::NotProductForm);
        }
        Ok(Rational::from(&self.q * &self.q) * &self.s)
    }
}

/// Decompose a product-form constant expression into q * pi^p * sqrt(s).
pub fn exact_const(e: &Expr) -> Result<ExactConst> {
    Ok(match e {
        Expr::Int(v) => ExactConst {
            q: Rational::from(*v),
            pi_pow: 0,
            s: Rational::from(1),
        },
        Expr::Rat { num, den } => {
            if *den == 0 {
                return Err(Error::DivisionByZero);
            }
            ExactConst {
                q: Rational::from((*num, *den)),
                pi_pow: 0,
                s: Rational::from(1),
            }
        }
        Expr::Pi => ExactConst {
            q: Rational::from(1),
            pi_pow: 1,
            s: Rational::from(1),
        },
        Expr::Neg(x) => {
            let mut inner = exact_const(x)?;
            inner.q = -inner.q;
            inner
        }
        Expr::Mul(x, y) => {
            let (a, b) = (exact_const(x)?, exact_const(y)?);
            ExactConst {
                q: a.q * b.q,
                pi_pow: a.pi_pow + b.pi_pow,
                s: a.s * b.s,
            }
        }
        Expr::Div(x, y) => {
            let (a, b) = (exact_const(x)?, exact_const(y)?);
            if b.q == 0 || b.s == 0 {
                return Err(Error::DivisionByZero);
            }
            ExactConst {
                q: a.q / b.q,
                pi_pow: a.pi_pow - b.pi_pow,
                s: a.s / b.s,
            }
        }
        Expr::Pow(x, e2) => {
            let a = exact_const(x)?;
            let whole = *e2 / 2;
            let frac = e2.rem_euclid(2);
            let mut q: Rational = a.q.clone().pow(*e2).into();
            let mut s = Rational::from(1);
            // sqrt(s)^e = s^(e/2) * sqrt(s)^(e mod 2)
            q *= Rational::from(a.s.clone().pow(whole));
            if frac == 1 {
                s = a.s;
            }
            ExactConst {
                q,
                pi_pow: a.pi_pow * e2,
                s,
            }
        }
        Expr::Sqrt(x) => {
            let a = exact_const(x)?;
            if a.s != 1 || a.pi_pow % 2 != 0 {
                return Err(Error::NotProductForm);
            }
            if a.q < 0 {
                return Err(Error::NegativeRadicand);
            }
            ExactConst {
                q: Rational::from(1),
                pi_pow: a.pi_pow / 2,
                s: a.q,
            }
        }
        Expr::Var(_) | Expr::Add(..) | Expr::Sub(..) => return Err(Error::NotProductForm),
    })
}

/// Kernel family of a formula case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelKind {
    /// I_nu evaluated by its ascending series.
    ISeries,
    /// d/dn ( sinh((c/k) sqrt(R(n))) / sqrt(R(n)) ); only valid at nu = 3/2.
    SinhDerivative,
}

/// Bessel kernel of one case: the argument is (c/k) * sqrt(radicand(n)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BesselKernel {
    /// Twice the order: nu = nu2/2 with nu = 1 + r/2 >= 1.
    pub nu2: u32,
    pub kind: KernelKind,
    /// k-free constant c (may involve pi and square roots).
    pub arg_constant: Expr,
    /// Affine-in-n radicand, e.g. 24n+1.
    pub radicand: Expr,
}

impl BesselKernel {
    pub fn i_series(nu2: u32, arg_constant: Expr, radicand: Expr) -> Result<Self> {
        if nu2 < 2 {
            return Err(Error::BesselOrderTooSmall(nu2));
        }
        Ok(BesselKernel {
            nu2,
            kind: KernelKind::ISeries,
            arg_constant,
            radicand,
        })
    }

    pub fn sinh_derivative(arg_constant: Expr, radicand: Expr) -> Self {
        BesselKernel {
            nu2: 3,
            kind: KernelKind::SinhDerivative,
            arg_constant,
            radicand,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu2 < 2 {
            return Err(Error::BesselOrderTooSmall(self.nu2));
        }
        if self.kind == KernelKind::SinhDerivative && self.nu2 != 3 {
            return Err(Error::InvalidArgument(
                "sinh-derivative kernel requires nu = 3/2".into(),
            ));
        }
        Ok(())
    }

    /// Exact affine coefficients (alpha, beta) of the radicand alpha*n+beta.
    pub fn radicand_affine(&self) -> Result<(Rational, Rational)> {
        let beta = eval_exact_rational(&self.radicand, &Bindings::n(0))?;
        let at_one = eval_exact_rational(&self.radicand, &Bindings::n(1))?;
        Ok((at_one - beta.clone(), beta))
    }

    /// Exact rational (alpha', beta') with (arg * k)^2 = pi^2 (alpha' n + beta').
    pub fn arg_squared_over_pi2(&self) -> Result<(Rational, Rational)> {
        let c2 = exact_const(&self.arg_constant)?.squared_over_pi(1)?;
        let (alpha, beta) = self.radicand_affine()?;
        Ok((c2.clone() * alpha, c2 * beta))
    }
}

/// Restriction on the summation index k of one case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KRestriction {
    /// All k >= 1.
    All,
    /// gcd(k, modulus) = value.
    GcdEq { modulus: u64, value: u64 },
    /// k = residue (mod modulus).
    ModEq { modulus: u64, residue: u64 },
}

impl KRestriction {
    pub fn admits(&self, k: u64) -> bool {
        match *self {
            KRestriction::All => true,
            KRestriction::GcdEq { modulus, value } => gcd(k, modulus) == value,
            KRestriction::ModEq { modulus, residue } => k % modulus == residue % modulus,
        }
    }
}

/// Rational exponent of k in the per-term prefactor (-1 for I_1 formulas,
/// +1/2 for sinh formulas).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KPower {
    pub num: i32,
    pub den: u32,
}

impl KPower {
    pub const INVERSE: KPower = KPower { num: -1, den: 1 };
    pub const SQRT: KPower = KPower { num: 1, den: 2 };

    pub fn apply(&self, k: u64, prec: u32) -> Float {
        let base = Float::with_val(prec, k);
        let rooted = if self.den == 1 {
            base
        } else if self.den == 2 {
            base.sqrt()
        } else {
            base.root(self.den)
        };
        rooted.pow(self.num)
    }
}

/// One case of a formula: a k-restriction with its weight, omega product,
/// kernel, and k-power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormulaCase {
    /// Case key (the divisor d of the level; 1 for single-case formulas).
    pub d: u64,
    pub restriction: KRestriction,
    /// Constant weight (n- and k-free; evaluated with d bound).
    pub weight: Expr,
    pub omega: OmegaProductDescriptor,
    pub kernel: BesselKernel,
    pub k_power: KPower,
}

/// Structured form of an exact coefficient formula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RademacherFormula {
    pub name: String,
    /// Function of n multiplying the whole double sum.
    pub prefactor: Expr,
    pub cases: Vec<FormulaCase>,
    /// The generating function whose coefficients the formula predicts.
    pub oracle: EtaQuotientSpec,
    /// True when emitted by the conjecture engine and not yet verified.
    #[serde(default)]
    pub conjectured: bool,
    /// Optional display-only closed form for divisor-indexed weights.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_display: Option<String>,
}

impl RademacherFormula {
    pub fn validate(&self) -> Result<()> {
        if self.cases.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "formula {} has no cases",
                self.name
            )));
        }
        for c in &self.cases {
            c.kernel.validate()?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("formula serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<RademacherFormula> {
        let f: RademacherFormula = serde_json::from_str(s)?;
        f.validate()?;
        Ok(f)
    }
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            _ => 4,
        }
    }

    fn fmt_child(&self, child: &Expr, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if child.precedence() < self.precedence() {
            write!(f, "({child})")
        } else {
            write!(f, "{child}")
        }
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Int(v) => write!(f, "{v}"),
            Expr::Rat { num, den } => write!(f, "{num}/{den}"),
            Expr::Pi => write!(f, "pi"),
            Expr::Var(v) => write!(f, "{}", v.letter()),
            Expr::Neg(x) => {
                write!(f, "-")?;
                self.fmt_child(x, f)
            }
            Expr::Add(x, y) => {
                self.fmt_child(x, f)?;
                write!(f, " + ")?;
                self.fmt_child(y, f)
            }
            Expr::Sub(x, y) => {
                self.fmt_child(x, f)?;
                write!(f, " - ")?;
                // right operand of - needs parens at equal precedence
                if y.precedence() <= 1 {
                    write!(f, "({y})")
                } else {
                    write!(f, "{y}")
                }
            }
            Expr::Mul(x, y) => {
                self.fmt_child(x, f)?;
                write!(f, "*")?;
                self.fmt_child(y, f)
            }
            Expr::Div(x, y) => {
                self.fmt_child(x, f)?;
                write!(f, "/")?;
                if y.precedence() <= 2 {
                    write!(f, "({y})")
                } else {
                    write!(f, "{y}")
                }
            }
            Expr::Pow(x, e) => {
                if x.precedence() < 4 {
                    write!(f, "({x})^{e}")
                } else {
                    write!(f, "{x}^{e}")
                }
            }
            Expr::Sqrt(x) => write!(f, "sqrt({x})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn digits50(e: &Expr, b: &Bindings) -> Float {
        eval_expr(e, b, 50).unwrap()
    }

    #[test]
    fn eval_literals() {
        assert_eq!(digits50(&Expr::int(7), &Bindings::none()), 7);
        let r = digits50(&Expr::rat(1, 24), &Bindings::none());
        assert!((r - Float::with_val(64, 1) / 24u32).abs() < 1e-40);
    }

    #[test]
    fn pi_over_sqrt_24n_plus_1_at_100() {
        // 24*100+1 = 2401 = 49^2, so this is exactly pi/49
        let e = Expr::pi().div(Expr::affine_n(24, 1).sqrt());
        let v = digits50(&e, &Bindings::n(100));
        let expect = "0.06411413578754680078495190578121434457545243672194";
        let diff = (v - Float::parse(expect).map(|p| Float::with_val(200, p)).unwrap()).abs();
        assert!(diff < 1e-45);
    }

    #[test]
    fn s110_weight_vanishes_at_d_2() {
        // sqrt((d-2)(7d-13)) = 0 at d = 2
        let e = Expr::var(Var::D)
            .sub(Expr::int(2))
            .mul(Expr::int(7).mul(Expr::var(Var::D)).sub(Expr::int(13)))
            .sqrt();
        let v = eval_expr(&e, &Bindings::none().with_d(2), 30).unwrap();
        assert_eq!(v, 0);
    }

    #[test]
    fn unbound_variable_and_negative_radicand_error() {
        assert!(matches!(
            eval_expr(&Expr::n(), &Bindings::none(), 20),
            Err(Error::UnboundVariable('n'))
        ));
        assert!(matches!(
            eval_expr(&Expr::int(-2).sqrt(), &Bindings::none(), 20),
            Err(Error::NegativeRadicand)
        ));
    }

    #[test]
    fn exact_trees_have_no_rounding_drift() {
        // rational-only tree evaluated at two precisions agrees exactly
        let e = Expr::rat(22, 7)
            .mul(Expr::int(3).pow(4))
            .sub(Expr::rat(1, 3))
            .div(Expr::int(12));
        let lo = eval_expr(&e, &Bindings::none(), 20).unwrap();
        let hi = eval_expr(&e, &Bindings::none(), 40).unwrap();
        assert_eq!(lo, hi); // both exact, then rounded once
    }

    #[test]
    fn sqrt_of_perfect_square_stays_exact() {
        let e = Expr::rat(9, 16).sqrt().mul(Expr::int(4));
        let v = eval_expr(&e, &Bindings::none(), 20).unwrap();
        assert_eq!(v, 3);
    }

    #[test]
    fn exact_const_extraction() {
        // pi/(6*sqrt(2)) squared over pi^2 = 1/72
        let c = Expr::pi().div(Expr::int(6).mul(Expr::int(2).sqrt()));
        let ec = exact_const(&c).unwrap();
        assert_eq!(ec.squared_over_pi(1).unwrap(), Rational::from((1, 72)));
        // 2*pi/3
        let c = Expr::int(2).mul(Expr::pi()).div(Expr::int(3));
        assert_eq!(
            exact_const(&c).unwrap().squared_over_pi(1).unwrap(),
            Rational::from((4, 9))
        );
        // additive trees are rejected
        assert!(exact_const(&Expr::int(1).add(Expr::pi())).is_err());
    }

    #[test]
    fn restriction_admission() {
        assert!(KRestriction::All.admits(7));
        let odd = KRestriction::GcdEq { modulus: 2, value: 1 };
        assert!(odd.admits(5) && !odd.admits(6));
        let two_mod_four = KRestriction::ModEq { modulus: 4, residue: 2 };
        assert!(two_mod_four.admits(6) && !two_mod_four.admits(4));
    }

    #[test]
    fn formula_json_round_trip() {
        let f = builtin_formula("hagis_distinct").unwrap();
        let js = f.to_json();
        let back = RademacherFormula::from_json(&js).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = RademacherFormula::from_json("{ \"name\": ").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line") || msg.contains("column"), "{msg}");
    }
}
