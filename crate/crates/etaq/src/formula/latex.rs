//! LaTeX rendering of formulas. Write-only output; JSON remains the
//! persistent format.

use super::{Expr, KernelKind, KPower, KRestriction, RademacherFormula};
use crate::omega::OmegaProductDescriptor;
use crate::numtheory::gcd;

fn latex_expr(e: &Expr) -> String {
    match e {
        Expr::Int(v) => format!("{v}"),
        Expr::Rat { num, den } => format!("\\tfrac{{{num}}}{{{den}}}"),
        Expr::Pi => "\\pi".into(),
        Expr::Var(v) => v.letter().to_string(),
        Expr::Neg(x) => format!("-{}", latex_factor(x)),
        Expr::Add(x, y) => format!("{} + {}", latex_expr(x), latex_expr(y)),
        Expr::Sub(x, y) => format!("{} - {}", latex_expr(x), latex_factor(y)),
        Expr::Mul(x, y) => format!("{} {}", latex_factor(x), latex_factor(y)),
        Expr::Div(x, y) => format!("\\frac{{{}}}{{{}}}", latex_expr(x), latex_expr(y)),
        Expr::Pow(x, p) => format!("{}^{{{p}}}", latex_factor(x)),
        Expr::Sqrt(x) => format!("\\sqrt{{{}}}", latex_expr(x)),
    }
}

fn latex_factor(e: &Expr) -> String {
    match e {
        Expr::Add(..) | Expr::Sub(..) => format!("\\left({}\\right)", latex_expr(e)),
        _ => latex_expr(e),
    }
}

/// omega-product at a representative of the case: gcd reductions shown with
/// the case's divisor substituted, matching the printed convention.
fn latex_omega(desc: &OmegaProductDescriptor, d: u64, modulus: u64) -> String {
    let mut numer = Vec::new();
    let mut denom = Vec::new();
    for t in &desc.terms {
        // a representative k of the case has gcd(m, k) = gcd(m, d) whenever
        // m divides the modulus; fall back to gcd with the modulus otherwise
        let g = if modulus % t.m == 0 { gcd(t.m, d) } else { gcd(t.m, gcd(d, modulus)) };
        let marg = t.m / g;
        let harg = if marg == 1 { "h".to_string() } else { format!("{marg}h") };
        let karg = if g == 1 { "k".to_string() } else { format!("\\tfrac{{k}}{{{g}}}") };
        let power = t.e.unsigned_abs();
        let body = if power == 1 {
            format!("\\omega({harg},{karg})")
        } else {
            format!("\\omega({harg},{karg})^{{{power}}}")
        };
        if t.e > 0 {
            numer.push(body);
        } else {
            denom.push(body);
        }
    }
    let top = if numer.is_empty() { "1".into() } else { numer.join(" ") };
    if denom.is_empty() {
        top
    } else {
        format!("\\frac{{{top}}}{{{}}}", denom.join(" "))
    }
}

fn latex_restriction(r: &KRestriction) -> String {
    match r {
        KRestriction::All => "k \\geq 1".into(),
        KRestriction::GcdEq { modulus, value } => {
            if *value == 1 && *modulus == 2 {
                "2 \\nmid k".into()
            } else {
                format!("(k,{modulus})={value}")
            }
        }
        KRestriction::ModEq { modulus, residue } => {
            format!("k \\equiv {residue} \\; (\\mathrm{{mod}}\\ {modulus})")
        }
    }
}

fn latex_kpower(p: &KPower) -> String {
    match (p.num, p.den) {
        (-1, 1) => "\\frac{1}{k}".into(),
        (1, 2) => "\\sqrt{k}".into(),
        (num, 1) => format!("k^{{{num}}}"),
        (num, den) => format!("k^{{{num}/{den}}}"),
    }
}

/// Render a formula as a LaTeX display equation.
pub fn to_latex(f: &RademacherFormula) -> String {
    let mut out = String::new();
    out.push_str(&format!("\\mathrm{{{}}}(n) = ", f.name.replace('_', "\\_")));
    out.push_str(&latex_factor(&f.prefactor));
    for case in &f.cases {
        out.push_str("\n  ");
        if f.cases.len() > 1 {
            out.push_str("\\; + \\;");
        }
        let weight = match &case.weight {
            Expr::Int(1) => String::new(),
            w => latex_factor(w),
        };
        if !weight.is_empty() {
            out.push_str(&weight);
            out.push(' ');
        }
        out.push_str(&format!(
            "\\underset{{{}}}{{\\sum_{{k \\geq 1}}}} {} \\underset{{(h,k)=1}}{{\\sum_{{0 \\leq h < k}}}} e^{{-2\\pi i n h/k}} \\, {} \\, ",
            latex_restriction(&case.restriction),
            latex_kpower(&case.k_power),
            latex_omega(&case.omega, case.d, restriction_modulus(case)),
        ));
        let arg = format!(
            "\\frac{{{}}}{{k}} \\sqrt{{{}}}",
            latex_factor(&case.kernel.arg_constant),
            latex_expr(&case.kernel.radicand)
        );
        match case.kernel.kind {
            KernelKind::ISeries => {
                let nu = if case.kernel.nu2 % 2 == 0 {
                    format!("{}", case.kernel.nu2 / 2)
                } else {
                    format!("{}/2", case.kernel.nu2)
                };
                out.push_str(&format!("I_{{{nu}}}\\!\\left( {arg} \\right)"));
            }
            KernelKind::SinhDerivative => {
                out.push_str(&format!(
                    "\\frac{{d}}{{dn}}\\!\\left( \\frac{{\\sinh\\!\\left( {arg} \\right)}}{{\\sqrt{{{}}}}} \\right)",
                    latex_expr(&case.kernel.radicand)
                ));
            }
        }
    }
    out
}

fn restriction_modulus(case: &super::FormulaCase) -> u64 {
    match case.restriction {
        KRestriction::All => 1,
        KRestriction::GcdEq { modulus, .. } | KRestriction::ModEq { modulus, .. } => modulus,
    }
}

#[cfg(test)]
mod tests {
    use super::super::builtin_formula;
    use super::*;

    #[test]
    fn rademacher_p_uses_sinh() {
        let f = builtin_formula("rademacher_p").unwrap();
        let tex = to_latex(&f);
        assert!(tex.contains("\\sinh"), "{tex}");
        assert!(tex.contains("\\sqrt{k}"), "{tex}");
    }

    #[test]
    fn hagis_distinct_uses_i1() {
        let f = builtin_formula("hagis_distinct").unwrap();
        let tex = to_latex(&f);
        assert!(tex.contains("I_{1}"), "{tex}");
        assert!(tex.contains("\\omega(h,k)"), "{tex}");
        assert!(tex.contains("\\omega(2h,k)"), "{tex}");
    }

    #[test]
    fn multi_case_formulas_render_all_cases() {
        let f = builtin_formula("s110").unwrap();
        let tex = to_latex(&f);
        assert!(tex.matches("I_{1}").count() == 2, "{tex}");
        assert!(tex.contains("\\sqrt{6}"), "{tex}");
        assert!(tex.contains("\\sqrt{30}"), "{tex}");
    }
}
