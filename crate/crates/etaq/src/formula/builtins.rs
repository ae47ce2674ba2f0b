//! Transcriptions of the known exact formulas, one per named coefficient
//! sequence. Weights of divisor-indexed cases are stored per case as
//! evaluated constants; the interpolating closed form is kept as display
//! metadata only. Zero-weight cases are omitted.

use super::{BesselKernel, Expr, FormulaCase, KPower, KRestriction, RademacherFormula};
use crate::error::{Error, Result};
use crate::omega::OmegaProductDescriptor;
use crate::registry::registry_lookup;

/// Table-order names of the twelve formulas with reference values.
pub const TABLE_FORMULA_NAMES: &[&str] = &[
    "hagis_distinct",
    "niven_schur",
    "s5",
    "s10",
    "s24",
    "s27",
    "s76",
    "s77",
    "s78",
    "s107",
    "s110",
    "s115",
];

/// All builtin formula names.
pub fn builtin_names() -> Vec<&'static str> {
    let mut names = vec![
        "rademacher_p",
        "hagis_distinct",
        "delta_2",
        "delta_3",
        "delta_4",
        "delta_9",
        "overpartition",
        "pod",
    ];
    names.extend_from_slice(&TABLE_FORMULA_NAMES[1..]); // skip duplicate hagis row
    names.insert(1, "niven_schur");
    names.dedup();
    names
}

fn omega_desc(terms: &[(u64, i32)]) -> OmegaProductDescriptor {
    OmegaProductDescriptor::new(terms.to_vec())
}

fn gcd_eq(modulus: u64, value: u64) -> KRestriction {
    KRestriction::GcdEq { modulus, value }
}

/// p(n): prefactor 1/(pi sqrt 2), all k, weight 1, sinh kernel with
/// c = pi sqrt(2/3) and radicand n - 1/24, k-power +1/2.
fn rademacher_p() -> Result<RademacherFormula> {
    Ok(RademacherFormula {
        name: "rademacher_p".into(),
        prefactor: Expr::int(1).div(Expr::pi().mul(Expr::int(2).sqrt())),
        cases: vec![FormulaCase {
            d: 1,
            restriction: KRestriction::All,
            weight: Expr::int(1),
            omega: omega_desc(&[(1, 1)]),
            kernel: BesselKernel::sinh_derivative(
                Expr::pi().mul(Expr::rat(2, 3).sqrt()),
                Expr::n().sub(Expr::rat(1, 24)),
            ),
            k_power: KPower::SQRT,
        }],
        oracle: registry_lookup("p")?.eta,
        conjectured: false,
        weight_display: None,
    })
}

/// delta(n), partitions into distinct parts: odd k, I_1 kernel with
/// argument pi sqrt(24n+1) / (6 sqrt(2) k).
fn hagis_distinct() -> Result<RademacherFormula> {
    Ok(RademacherFormula {
        name: "hagis_distinct".into(),
        prefactor: Expr::pi().div(Expr::affine_n(24, 1).sqrt()),
        cases: vec![FormulaCase {
            d: 1,
            restriction: gcd_eq(2, 1),
            weight: Expr::int(1),
            omega: omega_desc(&[(1, 1), (2, -1)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::pi().div(Expr::int(6).mul(Expr::int(2).sqrt())),
                Expr::affine_n(24, 1),
            )?,
            k_power: KPower::INVERSE,
        }],
        oracle: registry_lookup("delta")?.eta,
        conjectured: false,
        weight_display: None,
    })
}

/// delta_j(n), j-regular partitions: cases d | j with 0 < d < sqrt(j),
/// weight sqrt(d(j - d^2)), I_1 argument (pi/6k) sqrt((24n+j-1)(j-d^2)/j).
fn delta_j(j: u64) -> Result<RademacherFormula> {
    if j < 2 {
        return Err(Error::UnknownName(format!("delta_{j}")));
    }
    let ji = j as i64;
    let mut cases = Vec::new();
    for d in crate::numtheory::divisors(j) {
        if d * d >= j {
            continue;
        }
        let di = d as i64;
        cases.push(FormulaCase {
            d,
            restriction: gcd_eq(j, d),
            weight: Expr::int(di * (ji - di * di)).sqrt(),
            omega: omega_desc(&[(1, 1), (j, -1)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::pi()
                    .div(Expr::int(6))
                    .mul(Expr::rat(ji - di * di, ji).sqrt()),
                Expr::affine_n(24, ji - 1),
            )?,
            k_power: KPower::INVERSE,
        });
    }
    Ok(RademacherFormula {
        name: format!("delta_{j}"),
        prefactor: Expr::int(2)
            .mul(Expr::pi())
            .div(Expr::int(ji).mul(Expr::affine_n(24, ji - 1).sqrt())),
        cases,
        oracle: registry_lookup(&format!("delta_{j}"))?.eta,
        conjectured: false,
        weight_display: Some(format!("sum over d | {j}, 0 < d < sqrt({j}), of sqrt(d({j} - d^2))")),
    })
}

/// S(n), partitions into parts = +/-1 mod 6: cases d in {1, 6} of d | 6
/// (weights sqrt((d-2)(d-3)) vanish at d = 2, 3), I_1 argument
/// pi sqrt(d(12n-1)) / (3 sqrt(6) k).
fn niven_schur() -> Result<RademacherFormula> {
    let case = |d: u64, weight: Expr| -> Result<FormulaCase> {
        Ok(FormulaCase {
            d,
            restriction: gcd_eq(6, d),
            weight,
            omega: omega_desc(&[(1, 1), (2, -1), (3, -1), (6, 1)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::pi()
                    .mul(Expr::int(d as i64).sqrt())
                    .div(Expr::int(3).mul(Expr::int(6).sqrt())),
                Expr::affine_n(12, -1),
            )?,
            k_power: KPower::INVERSE,
        })
    };
    Ok(RademacherFormula {
        name: "niven_schur".into(),
        prefactor: Expr::pi().div(Expr::affine_n(36, -3).sqrt()),
        cases: vec![
            case(1, Expr::int(2).sqrt())?,
            case(6, Expr::int(12).sqrt())?,
        ],
        oracle: registry_lookup("schur")?.eta,
        conjectured: false,
        weight_display: Some("sum over d | 6 of sqrt((d-2)(d-3))".into()),
    })
}

/// Overpartitions: odd k, sinh kernel with c = pi and radicand n,
/// k-power +1/2, prefactor 1/(2 pi).
fn overpartition() -> Result<RademacherFormula> {
    Ok(RademacherFormula {
        name: "overpartition".into(),
        prefactor: Expr::int(1).div(Expr::int(2).mul(Expr::pi())),
        cases: vec![FormulaCase {
            d: 1,
            restriction: gcd_eq(2, 1),
            weight: Expr::int(1),
            omega: omega_desc(&[(1, 2), (2, -1)]),
            kernel: BesselKernel::sinh_derivative(Expr::pi(), Expr::n()),
            k_power: KPower::SQRT,
        }],
        oracle: registry_lookup("overpartition")?.eta,
        conjectured: false,
        weight_display: None,
    })
}

/// pod(n), no repeated odd parts: cases d in {1, 4} of d | 4 (weight
/// sqrt((d-2)(5d-17)) vanishes at d = 2), sinh kernel with
/// c = pi sqrt(d)/4 and radicand 8n-1.
fn pod() -> Result<RademacherFormula> {
    let case = |d: u64, weight: Expr| -> FormulaCase {
        FormulaCase {
            d,
            restriction: gcd_eq(4, d),
            weight,
            omega: omega_desc(&[(1, 1), (2, -1), (4, 1)]),
            kernel: BesselKernel::sinh_derivative(
                Expr::pi().mul(Expr::int(d as i64).sqrt()).div(Expr::int(4)),
                Expr::affine_n(8, -1),
            ),
            k_power: KPower::SQRT,
        }
    };
    Ok(RademacherFormula {
        name: "pod".into(),
        prefactor: Expr::int(2).div(Expr::pi().mul(Expr::int(6).sqrt())),
        cases: vec![
            case(1, Expr::int(12).sqrt()),
            case(4, Expr::int(6).sqrt()),
        ],
        oracle: registry_lookup("pod")?.eta,
        conjectured: false,
        weight_display: Some("sum over d | 4 of sqrt((d-2)(5d-17))".into()),
    })
}

fn slater(
    name: &str,
    prefactor: Expr,
    cases: Vec<FormulaCase>,
    weight_display: Option<&str>,
) -> Result<RademacherFormula> {
    Ok(RademacherFormula {
        name: name.into(),
        prefactor,
        cases,
        oracle: registry_lookup(name)?.eta,
        conjectured: false,
        weight_display: weight_display.map(|s| s.to_string()),
    })
}

fn s5() -> Result<RademacherFormula> {
    slater(
        "s5",
        Expr::int(2).mul(Expr::pi()).div(Expr::affine_n(24, 1).sqrt()),
        vec![FormulaCase {
            d: 2,
            restriction: KRestriction::ModEq { modulus: 4, residue: 2 },
            weight: Expr::int(1),
            omega: omega_desc(&[(1, -1), (2, 2), (4, -1)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::pi().div(Expr::int(3).mul(Expr::int(2).sqrt())),
                Expr::affine_n(24, 1),
            )?,
            k_power: KPower::INVERSE,
        }],
        None,
    )
}

fn s10() -> Result<RademacherFormula> {
    slater(
        "s10",
        Expr::pi().div(Expr::int(4).mul(Expr::n().sqrt())),
        vec![FormulaCase {
            d: 1,
            restriction: gcd_eq(2, 1),
            weight: Expr::int(1),
            omega: omega_desc(&[(1, 2), (2, -3), (4, 1)]),
            kernel: BesselKernel::i_series(2, Expr::pi().div(Expr::int(2).sqrt()), Expr::n())?,
            k_power: KPower::INVERSE,
        }],
        None,
    )
}

fn s24() -> Result<RademacherFormula> {
    slater(
        "s24",
        Expr::pi().div(Expr::int(3).mul(Expr::int(2).mul(Expr::n()).sqrt())),
        vec![FormulaCase {
            d: 1,
            restriction: gcd_eq(6, 1),
            weight: Expr::int(1),
            omega: omega_desc(&[(1, 2), (2, -1), (3, -2), (6, 1)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::pi().div(Expr::int(3).sqrt()),
                Expr::int(2).mul(Expr::n()),
            )?,
            k_power: KPower::INVERSE,
        }],
        None,
    )
}

fn s27() -> Result<RademacherFormula> {
    let case = |d: u64, weight: i64| -> Result<FormulaCase> {
        Ok(FormulaCase {
            d,
            restriction: gcd_eq(12, d),
            weight: Expr::int(weight),
            omega: omega_desc(&[(1, 1), (2, -1), (3, -1), (4, 1), (6, 1), (12, -1)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::pi()
                    .mul(Expr::int(d as i64).sqrt())
                    .div(Expr::int(2).mul(Expr::int(3).sqrt())),
                Expr::affine_n(4, 1),
            )?,
            k_power: KPower::INVERSE,
        })
    };
    slater(
        "s27",
        Expr::pi().div(Expr::int(9).mul(Expr::affine_n(4, 1).sqrt())),
        vec![case(1, 3)?, case(4, 6)?],
        Some("sum over d | 4 of (d-2)(2d-5)"),
    )
}

fn s76() -> Result<RademacherFormula> {
    slater(
        "s76",
        Expr::pi().div(Expr::int(9).mul(Expr::affine_n(2, 2).sqrt())),
        vec![FormulaCase {
            d: 1,
            restriction: gcd_eq(18, 1),
            weight: Expr::int(1),
            omega: omega_desc(&[(1, 2), (2, -1), (3, -1), (6, 1), (9, 1), (18, -2)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::int(2).mul(Expr::pi()).div(Expr::int(3)),
                Expr::affine_n(2, 2),
            )?,
            k_power: KPower::INVERSE,
        }],
        None,
    )
}

fn s77() -> Result<RademacherFormula> {
    slater(
        "s77",
        Expr::pi()
            .mul(Expr::int(2).sqrt())
            .div(Expr::int(3).mul(Expr::affine_n(12, 3).sqrt())),
        vec![FormulaCase {
            d: 1,
            restriction: gcd_eq(6, 1),
            weight: Expr::int(1),
            omega: omega_desc(&[(1, 2), (2, -1), (6, -1)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::pi().div(Expr::int(3)),
                Expr::affine_n(8, 2),
            )?,
            k_power: KPower::INVERSE,
        }],
        None,
    )
}

fn s78() -> Result<RademacherFormula> {
    slater(
        "s78",
        Expr::pi()
            .mul(Expr::int(2).sqrt())
            .div(Expr::int(9).mul(Expr::n().sqrt())),
        vec![FormulaCase {
            d: 1,
            restriction: gcd_eq(18, 1),
            weight: Expr::int(1),
            omega: omega_desc(&[(1, 2), (2, -1), (9, -2), (18, 1)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::int(2).mul(Expr::pi()).div(Expr::int(3)),
                Expr::int(2).mul(Expr::n()),
            )?,
            k_power: KPower::INVERSE,
        }],
        None,
    )
}

fn s107() -> Result<RademacherFormula> {
    let case = |j: u64| -> Result<FormulaCase> {
        Ok(FormulaCase {
            d: j,
            restriction: gcd_eq(12, j),
            weight: Expr::int(4 * j as i64 - 3).sqrt(),
            omega: omega_desc(&[(2, 2), (3, 1), (4, -1), (6, -3), (12, 1)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::pi()
                    .mul(Expr::int(3 * j as i64 - 1).sqrt())
                    .div(Expr::int(6)),
                Expr::affine_n(8, 1),
            )?,
            k_power: KPower::INVERSE,
        })
    };
    slater(
        "s107",
        Expr::int(2)
            .mul(Expr::pi())
            .div(Expr::int(3).mul(Expr::affine_n(24, 3).sqrt())),
        vec![case(1)?, case(2)?],
        Some("sum over j in {1,2} of sqrt(4j-3)"),
    )
}

fn s110() -> Result<RademacherFormula> {
    let case = |d: u64, weight: i64| -> Result<FormulaCase> {
        Ok(FormulaCase {
            d,
            restriction: gcd_eq(12, d),
            weight: Expr::int(weight).sqrt(),
            omega: omega_desc(&[(1, 1), (2, -1), (4, 1), (12, -1)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::pi()
                    .mul(Expr::int(1 + d as i64).sqrt())
                    .div(Expr::int(6)),
                Expr::affine_n(8, 3),
            )?,
            k_power: KPower::INVERSE,
        })
    };
    slater(
        "s110",
        Expr::int(2)
            .mul(Expr::pi())
            .div(Expr::int(9).mul(Expr::affine_n(16, 6).sqrt())),
        vec![case(1, 6)?, case(4, 30)?],
        Some("sum over d | 4 of sqrt((d-2)(7d-13))"),
    )
}

fn s115() -> Result<RademacherFormula> {
    let case = |d: u64, weight: i64| -> Result<FormulaCase> {
        Ok(FormulaCase {
            d,
            restriction: gcd_eq(36, d),
            weight: Expr::int(weight),
            omega: omega_desc(&[(1, 1), (2, -1), (4, 1), (9, -1), (18, 1), (36, -1)]),
            kernel: BesselKernel::i_series(
                2,
                Expr::int(2)
                    .mul(Expr::int(d as i64).sqrt())
                    .mul(Expr::pi())
                    .div(Expr::int(3)),
                Expr::affine_n(1, 1),
            )?,
            k_power: KPower::INVERSE,
        })
    };
    slater(
        "s115",
        Expr::pi().div(Expr::int(27).mul(Expr::affine_n(1, 1).sqrt())),
        vec![case(1, 3)?, case(4, 6)?],
        Some("sum over d | 4 of (d-2)(2d-5)"),
    )
}

/// Look up a builtin formula by name.
pub fn builtin_formula(name: &str) -> Result<RademacherFormula> {
    if let Some(j) = name.strip_prefix("delta_") {
        if let Ok(j) = j.parse::<u64>() {
            return delta_j(j);
        }
    }
    match name {
        "rademacher_p" => rademacher_p(),
        "hagis_distinct" => hagis_distinct(),
        "niven_schur" => niven_schur(),
        "overpartition" => overpartition(),
        "pod" => pod(),
        "s5" => s5(),
        "s10" => s10(),
        "s24" => s24(),
        "s27" => s27(),
        "s76" => s76(),
        "s77" => s77(),
        "s78" => s78(),
        "s107" => s107(),
        "s110" => s110(),
        "s115" => s115(),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{exact_const, KernelKind};
    use rug::Rational;

    #[test]
    fn all_builtins_validate() {
        for name in builtin_names() {
            let f = builtin_formula(name).unwrap();
            f.validate().unwrap();
            assert!(!f.conjectured);
        }
        assert!(builtin_formula("zz9").is_err());
    }

    #[test]
    fn hagis_distinct_structure() {
        let f = builtin_formula("hagis_distinct").unwrap();
        assert_eq!(f.cases.len(), 1);
        let c = &f.cases[0];
        assert_eq!(c.restriction, KRestriction::GcdEq { modulus: 2, value: 1 });
        assert_eq!(c.kernel.kind, KernelKind::ISeries);
        assert_eq!(c.kernel.nu2, 2);
        // argument^2 * k^2 = pi^2 (24n+1)/72
        let (a, b) = c.kernel.arg_squared_over_pi2().unwrap();
        assert_eq!(a, Rational::from((24, 72)));
        assert_eq!(b, Rational::from((1, 72)));
    }

    #[test]
    fn rademacher_p_structure() {
        let f = builtin_formula("rademacher_p").unwrap();
        let c = &f.cases[0];
        assert_eq!(c.kernel.kind, KernelKind::SinhDerivative);
        assert_eq!(c.kernel.nu2, 3);
        assert_eq!(c.k_power, KPower::SQRT);
        let (alpha, beta) = c.kernel.radicand_affine().unwrap();
        assert_eq!(alpha, Rational::from(1));
        assert_eq!(beta, Rational::from((-1, 24)));
        let ec = exact_const(&c.kernel.arg_constant).unwrap();
        assert_eq!(ec.squared_over_pi(1).unwrap(), Rational::from((2, 3)));
    }

    #[test]
    fn s107_cases_carry_sqrt_4j_minus_3() {
        let f = builtin_formula("s107").unwrap();
        assert_eq!(f.cases.len(), 2);
        assert_eq!(f.cases[0].weight, Expr::int(1).sqrt());
        assert_eq!(f.cases[1].weight, Expr::int(5).sqrt());
        for (case, want) in f.cases.iter().zip([2i64, 5]) {
            let (a, b) = case.kernel.arg_squared_over_pi2().unwrap();
            assert_eq!(a, Rational::from((8 * want, 36)));
            assert_eq!(b, Rational::from((want, 36)));
        }
    }

    #[test]
    fn delta_j_divisor_ranges() {
        for (j, expect) in [(2u64, vec![1u64]), (3, vec![1]), (4, vec![1]), (9, vec![1])] {
            let f = builtin_formula(&format!("delta_{j}")).unwrap();
            let ds: Vec<u64> = f.cases.iter().map(|c| c.d).collect();
            assert_eq!(ds, expect, "j={j}");
        }
        // first j with a second contributing divisor
        let f = builtin_formula("delta_6").unwrap();
        let ds: Vec<u64> = f.cases.iter().map(|c| c.d).collect();
        assert_eq!(ds, vec![1, 2]);
    }

    #[test]
    fn omega_arguments_integral_under_restriction() {
        // every omega-product argument k/gcd(m,k) is a positive integer for
        // admissible k; spot the whole builtin set up to k = 100
        for name in builtin_names() {
            let f = builtin_formula(name).unwrap();
            for case in &f.cases {
                for k in 1..=100u64 {
                    if !case.restriction.admits(k) {
                        continue;
                    }
                    for h in 1..k.max(2) {
                        if crate::numtheory::gcd(h % k.max(1), k) != 1 {
                            continue;
                        }
                        assert!(case.omega.evaluate(h % k.max(1), k).is_ok());
                        break;
                    }
                }
            }
        }
    }
}
