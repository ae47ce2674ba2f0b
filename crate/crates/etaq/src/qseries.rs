//! Exact integer power-series engine: the ground truth for every
//! coefficient a formula predicts.
//!
//! - [`IntSeries`]: exact integer coefficients a(0..=N)
//! - [`EtaQuotientSpec`]: prod_j f(q^{m_j})^{e_j} with f(q) = prod (1-q^m)^{-1}
//! - [`CongruenceProductSpec`]: literal products prod (1 +/- q^{am+b})^{+/-e}
//! - [`expand_eta_quotient`], [`expand_congruence_product`],
//!   [`series_reciprocal`]
//!
//! All arithmetic is exact (arbitrary-precision integers); multiplication is
//! schoolbook, which is ample for the supported envelope N <= 10^4.

use crate::error::{Error, Result};
use crate::numtheory::lcm_all;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

/// Exact integer coefficient vector of a power series, indices 0..=order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<Integer>,
}

impl IntSeries {
    /// The constant series 1 + 0q + ... to the given order.
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Integer::new(); order + 1];
        coeffs[0] = Integer::from(1);
        IntSeries { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Integer>) -> Self {
        assert!(!coeffs.is_empty());
        IntSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Integer {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Truncate to a lower order (prefix of the coefficient vector).
    pub fn prefix(&self, order: usize) -> IntSeries {
        assert!(order <= self.order());
        IntSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Schoolbook product, truncated to self.order().
    pub fn mul(&self, other: &IntSeries) -> IntSeries {
        let n = self.order();
        let mut out = vec![Integer::new(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                if !b.is_zero() {
                    out[i + j] += Integer::from(a * b);
                }
            }
        }
        IntSeries { coeffs: out }
    }

    /// Multiply in place by the sparse binomial (1 + c*q^j).
    fn mul_binomial(&mut self, j: usize, c: i32) {
        if j == 0 {
            panic!("binomial exponent must be positive");
        }
        let n = self.order();
        for i in (j..=n).rev() {
            let add = Integer::from(&self.coeffs[i - j] * c);
            self.coeffs[i] += add;
        }
    }

    /// Divide in place by the sparse binomial (1 + c*q^j); exact.
    fn div_binomial(&mut self, j: usize, c: i32) {
        let n = self.order();
        for i in j..=n {
            let sub = Integer::from(&self.coeffs[i - j] * c);
            self.coeffs[i] -= sub;
        }
    }
}

/// A generating function prod_j f(q^{m_j})^{e_j}, stored as merged
/// (multiplier, exponent) pairs in ascending multiplier order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaQuotientSpec {
    pub factors: Vec<EtaFactor>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaFactor {
    pub m: u64,
    pub e: i32,
}

impl EtaQuotientSpec {
    /// Normalize a raw factor list: merge duplicate multipliers, drop zero
    /// exponents, sort ascending. Multipliers must be >= 1.
    pub fn new(raw: &[(u64, i32)]) -> Result<Self> {
        let mut merged: std::collections::BTreeMap<u64, i64> = std::collections::BTreeMap::new();
        for &(m, e) in raw {
            if m == 0 {
                return Err(Error::BadFactor(format!("multiplier {m} must be >= 1")));
            }
            *merged.entry(m).or_insert(0) += e as i64;
        }
        let factors: Vec<EtaFactor> = merged
            .into_iter()
            .filter(|&(_, e)| e != 0)
            .map(|(m, e)| {
                i32::try_from(e)
                    .map(|e| EtaFactor { m, e })
                    .map_err(|_| Error::BadFactor(format!("exponent overflow at m = {m}")))
            })
            .collect::<Result<_>>()?;
        Ok(EtaQuotientSpec { factors })
    }

    /// lcm of all multipliers; 1 for the empty spec.
    pub fn level(&self) -> u64 {
        lcm_all(&self.factors.iter().map(|f| f.m).collect::<Vec<_>>())
    }

    /// Net exponent r = sum of e_j.
    pub fn net_exponent(&self) -> i64 {
        self.factors.iter().map(|f| f.e as i64).sum()
    }

    /// Weighted sum of e_j * m_j; the n-shift of the expansion is -this/24.
    pub fn weighted_exponent(&self) -> i64 {
        self.factors.iter().map(|f| f.e as i64 * f.m as i64).sum()
    }
}

/// Generalized pentagonal expansion of (q^m; q^m)_inf = f(q^m)^{-1},
/// truncated at `order`. Sparse: O(sqrt(order/m)) nonzero terms.
pub fn pentagonal_series(m: u64, order: usize) -> IntSeries {
    let mut s = IntSeries::one(order);
    let mut j = 1i64;
    loop {
        let g1 = (j * (3 * j - 1) / 2) as u128 * m as u128;
        if g1 > order as u128 {
            break;
        }
        let sign = if j % 2 == 1 { -1 } else { 1 };
        s.coeffs[g1 as usize] = Integer::from(sign);
        let g2 = (j * (3 * j + 1) / 2) as u128 * m as u128;
        if g2 <= order as u128 {
            s.coeffs[g2 as usize] = Integer::from(sign);
        }
        j += 1;
    }
    s
}

/// Expansion of f(q^m) = sum p(j) q^{mj}, via Euler's pentagonal recurrence.
pub fn euler_partition_series(m: u64, order: usize) -> IntSeries {
    let top = order / m as usize;
    let mut p = vec![Integer::new(); top + 1];
    p[0] = Integer::from(1);
    for i in 1..=top {
        let mut sum = Integer::new();
        let mut j = 1usize;
        loop {
            let g1 = j * (3 * j - 1) / 2;
            if g1 > i {
                break;
            }
            let positive = j % 2 == 1;
            if positive {
                sum += &p[i - g1];
            } else {
                sum -= &p[i - g1];
            }
            let g2 = j * (3 * j + 1) / 2;
            if g2 <= i {
                if positive {
                    sum += &p[i - g2];
                } else {
                    sum -= &p[i - g2];
                }
            }
            j += 1;
        }
        p[i] = sum;
    }
    let mut coeffs = vec![Integer::new(); order + 1];
    for (j, v) in p.into_iter().enumerate() {
        coeffs[j * m as usize] = v;
    }
    IntSeries { coeffs }
}

/// Multiply `s` by a sparse series (few nonzero terms), truncated.
fn mul_sparse(s: &IntSeries, sparse: &IntSeries) -> IntSeries {
    let n = s.order();
    let mut out = vec![Integer::new(); n + 1];
    for (j, c) in sparse.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for i in 0..=(n - j) {
            if !s.coeffs[i].is_zero() {
                out[i + j] += Integer::from(&s.coeffs[i] * c);
            }
        }
    }
    IntSeries { coeffs: out }
}

/// Exact coefficients of prod f(q^m)^e to the given order.
///
/// Positive exponents multiply by the dense expansion of f(q^m); negative
/// exponents multiply by the sparse pentagonal series of (q^m;q^m)_inf.
/// Intermediates stay integral throughout.
pub fn expand_eta_quotient(spec: &EtaQuotientSpec, order: usize) -> IntSeries {
    let mut acc = IntSeries::one(order);
    for f in &spec.factors {
        if f.e > 0 {
            let dense = euler_partition_series(f.m, order);
            for _ in 0..f.e {
                acc = acc.mul(&dense);
            }
        } else {
            let pent = pentagonal_series(f.m, order);
            for _ in 0..(-f.e) {
                acc = mul_sparse(&acc, &pent);
            }
        }
    }
    acc
}

/// A literal product prod_{m >= 0} (1 + sign*q^{a*m+b})^e over one or more
/// residue classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceProductSpec {
    pub factors: Vec<CongruenceFactor>,
}

/// One residue class of factors: (1 + sign*q^{a*m+b}) for m >= 0, raised to
/// the power e (any nonzero integer; negative means reciprocal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceFactor {
    pub a: u64,
    pub b: u64,
    pub sign: i32,
    pub e: i32,
}

impl CongruenceProductSpec {
    pub fn new(raw: &[(u64, u64, i32, i32)]) -> Result<Self> {
        let mut factors = Vec::new();
        for &(a, b, sign, e) in raw {
            if a == 0 || b == 0 || b > a {
                return Err(Error::BadFactor(format!(
                    "congruence factor needs a >= 1 and 1 <= b <= a, got a={a} b={b}"
                )));
            }
            if sign != 1 && sign != -1 {
                return Err(Error::BadFactor(format!("sign must be +/-1, got {sign}")));
            }
            if e == 0 {
                continue;
            }
            factors.push(CongruenceFactor { a, b, sign, e });
        }
        Ok(CongruenceProductSpec { factors })
    }
}

/// Exact expansion of the literal congruence product to the given order.
pub fn expand_congruence_product(spec: &CongruenceProductSpec, order: usize) -> IntSeries {
    let mut acc = IntSeries::one(order);
    for f in &spec.factors {
        let mut j = f.b;
        while j <= order as u64 {
            for _ in 0..f.e.unsigned_abs() {
                if f.e > 0 {
                    acc.mul_binomial(j as usize, f.sign);
                } else {
                    acc.div_binomial(j as usize, f.sign);
                }
            }
            j += f.a;
        }
    }
    acc
}

/// Multiplicative inverse of a series with unit constant term:
/// returns t with s*t = 1 + O(q^{N+1}), exactly.
pub fn series_reciprocal(s: &IntSeries) -> Result<IntSeries> {
    let lead = s.coeff(0);
    if *lead != 1 && *lead != -1 {
        return Err(Error::NonUnitConstantTerm);
    }
    let n = s.order();
    let mut t = vec![Integer::new(); n + 1];
    t[0] = lead.clone(); // 1/lead = lead for lead = +/-1
    for i in 1..=n {
        let mut acc = Integer::new();
        for j in 1..=i {
            if !s.coeffs[j].is_zero() && !t[i - j].is_zero() {
                acc += Integer::from(&s.coeffs[j] * &t[i - j]);
            }
        }
        t[i] = -(acc * lead);
    }
    Ok(IntSeries { coeffs: t })
}

/// Exact rational n-shift kappa = -(sum e_j m_j)/24 of an eta quotient.
pub fn kappa(spec: &EtaQuotientSpec) -> Rational {
    Rational::from((-spec.weighted_exponent(), 24))
}
