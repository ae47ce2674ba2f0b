//! Named generating functions: each entry pairs an eta-quotient form with
//! the literal congruence-product form and a combinatorial description.
//!
//! The two forms expand identically (checked to order 200 in the tests);
//! the eta form drives the conjecture engine, the product form is the
//! human-readable definition.

use crate::error::{Error, Result};
use crate::qseries::{CongruenceProductSpec, EtaQuotientSpec};

#[derive(Debug, Clone)]
pub struct RegistryEntry {
    pub name: String,
    pub eta: EtaQuotientSpec,
    pub product: CongruenceProductSpec,
    pub description: String,
}

/// Fixed registry names, in table order where applicable.
pub const REGISTRY_NAMES: &[&str] = &[
    "p",
    "delta",
    "delta_2",
    "delta_3",
    "delta_4",
    "delta_9",
    "schur",
    "overpartition",
    "pod",
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

fn entry(
    name: &str,
    eta: &[(u64, i32)],
    product: &[(u64, u64, i32, i32)],
    description: &str,
) -> Result<RegistryEntry> {
    Ok(RegistryEntry {
        name: name.to_string(),
        eta: EtaQuotientSpec::new(eta)?,
        product: CongruenceProductSpec::new(product)?,
        description: description.to_string(),
    })
}

/// j-regular partitions: f(q)/f(q^j), product over parts not divisible by j.
fn delta_j_entry(j: u64) -> Result<RegistryEntry> {
    if j < 2 {
        return Err(Error::UnknownName(format!("delta_{j}")));
    }
    let product: Vec<(u64, u64, i32, i32)> = (1..j).map(|b| (j, b, -1, -1)).collect();
    entry(
        &format!("delta_{j}"),
        &[(1, 1), (j, -1)],
        &product,
        &format!("number of {j}-regular partitions of n (no part divisible by {j})"),
    )
}

/// Look up a named generating function.
///
/// Known names: p, delta, delta_<j> for j >= 2, schur, overpartition, pod,
/// and the Slater entries s5, s10, s24, s27, s76, s77, s78, s107, s110, s115.
pub fn registry_lookup(name: &str) -> Result<RegistryEntry> {
    if let Some(j) = name.strip_prefix("delta_") {
        if let Ok(j) = j.parse::<u64>() {
            return delta_j_entry(j);
        }
    }
    match name {
        "p" => entry(
            "p",
            &[(1, 1)],
            &[(1, 1, -1, -1)],
            "number of partitions of n",
        ),
        "delta" => entry(
            "delta",
            &[(1, 1), (2, -1)],
            &[(2, 1, -1, -1)],
            "number of partitions of n into distinct parts (equally, odd parts)",
        ),
        "schur" => entry(
            "schur",
            &[(1, 1), (2, -1), (3, -1), (6, 1)],
            &[(6, 1, -1, -1), (6, 5, -1, -1)],
            "number of partitions of n into parts congruent to +/-1 mod 6",
        ),
        "overpartition" => entry(
            "overpartition",
            &[(1, 2), (2, -1)],
            &[(1, 1, 1, 1), (1, 1, -1, -1)],
            "number of overpartitions of n",
        ),
        "pod" => entry(
            "pod",
            &[(1, 1), (2, -1), (4, 1)],
            &[(2, 1, 1, 1), (2, 2, -1, -1)],
            "number of partitions of n in which no odd part is repeated",
        ),
        "s5" => entry(
            "s5",
            &[(1, -1), (2, 2), (4, -1)],
            &[(2, 2, 1, 1), (2, 1, -1, 1)],
            "signed series prod (1+q^{2m})(1-q^{2m-1}); coefficients equal (-1)^n times the distinct-parts count",
        ),
        "s10" => entry(
            "s10",
            &[(1, 2), (2, -3), (4, 1)],
            &[(2, 1, 1, 1), (2, 1, -1, -1)],
            "number of overpartitions of n into odd parts",
        ),
        "s24" => entry(
            "s24",
            &[(1, 2), (2, -1), (3, -2), (6, 1)],
            &[(6, 3, -1, 2), (6, 6, -1, 1), (1, 1, 1, 1), (1, 1, -1, -1)],
            "number of overpartitions of n with overlined parts odd nonmultiples of 3 and nonoverlined parts unrestricted odd/even per the product",
        ),
        "s27" => entry(
            "s27",
            &[(1, 1), (2, -1), (3, -1), (4, 1), (6, 1), (12, -1)],
            &[(6, 1, 1, 1), (6, 5, 1, 1), (6, 2, -1, -1), (6, 4, -1, -1)],
            "number of overpartitions of n with overlined parts odd nonmultiples of 3 and nonoverlined parts even nonmultiples of 6",
        ),
        "s76" => entry(
            "s76",
            &[(1, 2), (2, -1), (3, -1), (6, 1), (9, 1), (18, -2)],
            &[
                (18, 3, -1, 1),
                (18, 15, -1, 1),
                (18, 18, -1, 1),
                (2, 1, -1, -1),
                (1, 1, -1, -1),
            ],
            "number of overpartitions of n with no nonoverlined part congruent to 0, 3, or 15 mod 18",
        ),
        "s77" => entry(
            "s77",
            &[(1, 2), (2, -1), (6, -1)],
            &[(6, 6, -1, 1), (1, 1, 1, 1), (1, 1, -1, -1)],
            "number of overpartitions of n with no nonoverlined part a multiple of 6",
        ),
        "s78" => entry(
            "s78",
            &[(1, 2), (2, -1), (9, -2), (18, 1)],
            &[(18, 18, -1, 1), (18, 9, -1, 2), (1, 1, 1, 1), (1, 1, -1, -1)],
            "number of overpartitions of n with no nonoverlined part congruent to 0 or 9 mod 18",
        ),
        "s107" => entry(
            "s107",
            &[(2, 2), (3, 1), (4, -1), (6, -3), (12, 1)],
            &[
                (6, 6, -1, 1),
                (12, 3, 1, 1),
                (12, 9, 1, 1),
                (4, 2, -1, -1),
                (2, 2, -1, -1),
            ],
            "number of overpartitions of n with overlined parts even or +/-3 mod 12 and nonoverlined parts +/-2 mod 6",
        ),
        "s110" => entry(
            "s110",
            &[(1, 1), (2, -1), (4, 1), (12, -1)],
            &[(12, 12, -1, 1), (4, 2, -1, 1), (1, 1, -1, -1)],
            "number of partitions of n into parts not congruent to 0, 2, 6, or 10 mod 12",
        ),
        "s115" => entry(
            "s115",
            &[(1, 1), (2, -1), (4, 1), (9, -1), (18, 1), (36, -1)],
            &[
                (36, 36, -1, 1),
                (36, 9, -1, 1),
                (36, 27, -1, 1),
                (2, 1, -1, -1),
                (4, 4, -1, -1),
            ],
            "number of partitions of n into parts not congruent to 0 or +/-9 mod 36 nor to 2 mod 4",
        ),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{expand_congruence_product, expand_eta_quotient};
    use rug::Integer;

    #[test]
    fn every_entry_expands_consistently_to_200() {
        for name in REGISTRY_NAMES {
            let e = registry_lookup(name).unwrap();
            let a = expand_eta_quotient(&e.eta, 200);
            let b = expand_congruence_product(&e.product, 200);
            assert_eq!(a, b, "eta and product expansions differ for {name}");
            assert_eq!(a.coeff(0), &Integer::from(1), "constant term for {name}");
        }
    }

    #[test]
    fn delta_lookup_matches_spec_factors() {
        let e = registry_lookup("delta").unwrap();
        let expect = EtaQuotientSpec::new(&[(1, 1), (2, -1)]).unwrap();
        assert_eq!(e.eta, expect);
    }

    #[test]
    fn s77_and_s76_eta_forms() {
        let e = registry_lookup("s77").unwrap();
        assert_eq!(e.eta, EtaQuotientSpec::new(&[(1, 2), (2, -1), (6, -1)]).unwrap());
        let e = registry_lookup("s76").unwrap();
        assert_eq!(
            e.eta,
            EtaQuotientSpec::new(&[(1, 2), (6, 1), (9, 1), (2, -1), (3, -1), (18, -2)]).unwrap()
        );
    }

    #[test]
    fn s5_is_signed_delta() {
        let s5 = expand_eta_quotient(&registry_lookup("s5").unwrap().eta, 120);
        let delta = expand_eta_quotient(&registry_lookup("delta").unwrap().eta, 120);
        for n in 0..=120usize {
            let want = if n % 2 == 0 {
                delta.coeff(n).clone()
            } else {
                -delta.coeff(n).clone()
            };
            assert_eq!(s5.coeff(n), &want, "n={n}");
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(registry_lookup("nope").is_err());
        assert!(registry_lookup("delta_1").is_err());
        assert!(registry_lookup("delta_x").is_err());
    }

    #[test]
    fn glaisher_bounded_multiplicity_matches_j_regular() {
        // independent oracle: multiply truncated geometric blocks
        // (1 + q^k + ... + q^{(j-1)k}) directly
        for j in [2u64, 3, 4, 9] {
            let order = 150usize;
            let mut acc = vec![Integer::new(); order + 1];
            acc[0] = Integer::from(1);
            for k in 1..=order {
                let mut next = vec![Integer::new(); order + 1];
                for t in 0..j as usize {
                    let shift = t * k;
                    if shift > order {
                        break;
                    }
                    for i in 0..=(order - shift) {
                        if !acc[i].is_zero() {
                            let add = acc[i].clone();
                            next[i + shift] += add;
                        }
                    }
                }
                acc = next;
            }
            let regular = expand_eta_quotient(&registry_lookup(&format!("delta_{j}")).unwrap().eta, order);
            assert_eq!(acc, regular.coeffs().to_vec(), "j={j}");
        }
    }
}
