//! Exact elementary number theory and Farey/Ford geometry.
//!
//! - [`jacobi_symbol`]: Kronecker-Jacobi symbol (a/n) for odd positive n
//! - [`neg_mod_inverse`]: the canonical H with h*H = -1 (mod k)
//! - [`dedekind_sum`]: s(h,k) by O(log k) reciprocity; [`dedekind_sum_direct`]
//!   is the O(k) definitional sum used as its oracle
//! - [`farey`]: the proper Farey fractions of order N
//! - [`ford_arc_endpoints`]: upper-arc endpoints of a Ford circle in the
//!   tau-plane and the z-plane, with cyclic Farey neighbors
//! - [`divisors`], [`lcm_all`]: divisor lists and least common multiples

use crate::error::{Error, Result};
use rug::Rational;
use serde::{Deserialize, Serialize};

/// Euclidean gcd on machine integers.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple of two machine integers.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Least common multiple of a list. Empty list yields 1.
pub fn lcm_all(values: &[u64]) -> u64 {
    values.iter().copied().fold(1, lcm)
}

/// Divisors of n in ascending order, by trial division.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors requires n >= 1");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Kronecker-Jacobi symbol (a/n) for odd n >= 1; a may be any integer.
///
/// Multiplicative in both arguments; returns 0 exactly when gcd(a,n) > 1.
pub fn jacobi_symbol(a: i64, n: i64) -> Result<i32> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::BadJacobiModulus(n));
    }
    let mut n = n as u64;
    let mut a = (a.rem_euclid(n as i64)) as u64;
    let mut result: i32 = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        Ok(result)
    } else {
        Ok(0)
    }
}

fn mod_inverse(a: u64, k: u64) -> Option<u64> {
    // extended Euclid on (a mod k, k)
    let (mut r0, mut r1) = (k as i128, (a % k) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(k as i128) as u64)
}

/// The canonical solution H in [0, k) of h*H = -1 (mod k).
///
/// Requires gcd(h,k) = 1. For k = 1 the answer is 0.
pub fn neg_mod_inverse(h: i64, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidArgument("modulus k must be positive".into()));
    }
    let hr = h.rem_euclid(k as i64) as u64;
    if k == 1 {
        return Ok(0);
    }
    match mod_inverse(hr, k) {
        Some(inv) => Ok((k - inv % k) % k),
        None => Err(Error::NotCoprime { h, k }),
    }
}

/// Sawtooth function ((x)): x - floor(x) - 1/2 for non-integer x, else 0.
fn sawtooth(x: Rational) -> Rational {
    if x.denom() == &1 {
        return Rational::new();
    }
    let floor = x.clone().floor();
    x - floor - Rational::from((1, 2))
}

/// Dedekind sum s(h,k) by the O(k) definitional sum
/// sum_{mu=1}^{k-1} ((mu/k)) ((h mu/k)).
///
/// The independent oracle for [`dedekind_sum`]; exact rationals throughout.
pub fn dedekind_sum_direct(h: i64, k: u64) -> Result<Rational> {
    check_coprime(h, k)?;
    let hr = h.rem_euclid(k as i64) as u64;
    let mut sum = Rational::new();
    for mu in 1..k {
        let a = sawtooth(Rational::from((mu, k)));
        let b = sawtooth(Rational::from((hr as u128 * mu as u128, k as u128)));
        sum += a * b;
    }
    Ok(sum)
}

/// Dedekind sum s(h,k), computed in O(log k) Euclid steps via the
/// reciprocity law s(h,k) + s(k,h) = -1/4 + (h/k + k/h + 1/(hk))/12.
///
/// h is reduced mod k first (s is periodic in h). Requires gcd(h,k) = 1.
pub fn dedekind_sum(h: i64, k: u64) -> Result<Rational> {
    check_coprime(h, k)?;
    let mut h = h.rem_euclid(k as i64) as u64;
    let mut k = k;
    let mut sum = Rational::new();
    let mut sign = 1i32;
    while h > 0 {
        // s(h,k) = -1/4 + (h^2 + k^2 + 1)/(12 h k) - s(k mod h, h)
        let h2 = h as u128 * h as u128;
        let k2 = k as u128 * k as u128;
        let num = Rational::from((h2 + k2 + 1, 12 * h as u128 * k as u128));
        let term = num - Rational::from((1, 4));
        if sign == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        sign = -sign;
        let next = k % h;
        k = h;
        h = next;
    }
    Ok(sum)
}

fn check_coprime(h: i64, k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("modulus k must be positive".into()));
    }
    let hr = h.rem_euclid(k as i64) as u64;
    if gcd(hr, k) != 1 {
        return Err(Error::NotCoprime { h, k });
    }
    Ok(())
}

/// A reduced fraction h/k with k > 0.
///
/// The numerator is signed so cyclic Farey neighbors (-1/N, 1/1) are
/// representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: i64,
    pub den: u64,
}

impl Fraction {
    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "denominator must be positive");
        let g = gcd(num.unsigned_abs(), den);
        Fraction {
            num: num / g as i64,
            den: den / g,
        }
    }

    pub fn as_rational(&self) -> Rational {
        Rational::from((self.num, self.den))
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// The proper Farey fractions of order N: all reduced h/k with
/// 0 <= h/k < 1 and k <= N, strictly increasing.
pub fn farey(n: u64) -> Result<Vec<Fraction>> {
    if n == 0 {
        return Err(Error::InvalidArgument("Farey order must be >= 1".into()));
    }
    let mut out = vec![Fraction { num: 0, den: 1 }];
    if n == 1 {
        return Ok(out);
    }
    // next-term recurrence from consecutive pair (a/b, c/d)
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, n);
    while c < d {
        out.push(Fraction {
            num: c as i64,
            den: d,
        });
        let t = (n + b) / d;
        let (a2, b2) = (c, d);
        let c2 = t * c - a;
        let d2 = t * d - b;
        a = a2;
        b = b2;
        c = c2;
        d = d2;
    }
    Ok(out)
}

/// Cyclic neighbors of h/k in the Farey sequence of order N.
///
/// Returns ((h_p, k_p), (h_s, k_s)), predecessor then successor. The
/// sequence is treated periodically: the predecessor of 0/1 is the last
/// entry shifted by -1, and the successor of the last entry is 1/1.
pub fn farey_neighbors(h: u64, k: u64, n: u64) -> Result<((i64, u64), (i64, u64))> {
    require_in_farey(h, k, n)?;
    if n <= 1000 {
        let seq = farey(n)?;
        let idx = seq
            .iter()
            .position(|f| f.num == h as i64 && f.den == k)
            .expect("membership already checked");
        let pred = if idx == 0 {
            let last = seq[seq.len() - 1];
            (last.num - last.den as i64, last.den)
        } else {
            (seq[idx - 1].num, seq[idx - 1].den)
        };
        let succ = if idx + 1 == seq.len() {
            (1, 1)
        } else {
            (seq[idx + 1].num, seq[idx + 1].den)
        };
        Ok((pred, succ))
    } else {
        Ok((
            farey_neighbor_modular(h, k, n, true)?,
            farey_neighbor_modular(h, k, n, false)?,
        ))
    }
}

/// O(1) neighbor via the mediant/Stern-Brocot recurrence: the predecessor
/// p/q satisfies h q - k p = 1 with the largest q <= N, the successor c/d
/// satisfies k c - h d = 1 with the largest d <= N.
pub fn farey_neighbor_modular(h: u64, k: u64, n: u64, predecessor: bool) -> Result<(i64, u64)> {
    require_in_farey(h, k, n)?;
    if k == 1 {
        // neighbors of 0/1 are -1/N (shifted last entry) and 1/N; for N = 1
        // both collapse to the shifted copies of 0/1 itself.
        return if predecessor {
            Ok((-1, n))
        } else if n == 1 {
            Ok((1, 1))
        } else {
            Ok((1, n))
        };
    }
    if predecessor {
        let q0 = mod_inverse(h, k).expect("coprime");
        let q = q0 + k * ((n - q0) / k);
        let p = (h as i128 * q as i128 - 1) / k as i128;
        Ok((p as i64, q))
    } else {
        let d0 = neg_mod_inverse(h as i64, k)?;
        let d = d0 + k * ((n - d0) / k);
        if d == 0 {
            // h/k is the last entry; cyclic successor is 0/1 shifted by +1
            return Ok((1, 1));
        }
        let c = (h as i128 * d as i128 + 1) / k as i128;
        Ok((c as i64, d))
    }
}

fn require_in_farey(h: u64, k: u64, n: u64) -> Result<()> {
    if n >= 1 && k >= 1 && k <= n && h < k && gcd(h, k) == 1 {
        Ok(())
    } else {
        Err(Error::NotInFarey { h, k, n })
    }
}

/// An exact point of the complex plane with rational coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct RatPoint {
    pub re: Rational,
    pub im: Rational,
}

impl RatPoint {
    pub fn abs_squared(&self) -> Rational {
        Rational::from(&self.re * &self.re) + Rational::from(&self.im * &self.im)
    }
}

/// Endpoints of the upper arc of a Ford circle, in both coordinate planes.
///
/// `alpha_i`/`alpha_t` are the initial/terminal points in the tau-plane,
/// `z_i`/`z_t` their images under z = -ik(tau - h/k). `k_p` and `k_s` are
/// the denominators of the cyclic Farey neighbors of h/k.
#[derive(Debug, Clone, PartialEq)]
pub struct FordArcEndpoints {
    pub alpha_i: RatPoint,
    pub alpha_t: RatPoint,
    pub z_i: RatPoint,
    pub z_t: RatPoint,
    pub k_p: u64,
    pub k_s: u64,
}

/// Arc endpoints of the Ford circle C(h,k) within the Rademacher path of
/// order N.
///
/// The initial point is
/// alpha_I = h/k - k_p/(k(k^2+k_p^2)) + i/(k^2+k_p^2), the terminal point
/// alpha_T = h/k + k_s/(k(k^2+k_s^2)) + i/(k^2+k_s^2), and their z-plane
/// images are z_I = k/(k^2+k_p^2) + i k_p/(k^2+k_p^2),
/// z_T = k/(k^2+k_s^2) - i k_s/(k^2+k_s^2).
pub fn ford_arc_endpoints(h: u64, k: u64, n: u64) -> Result<FordArcEndpoints> {
    let ((_, k_p), (_, k_s)) = farey_neighbors(h, k, n)?;
    let hk = Rational::from((h, k));
    let point = |kn: u64, sign_re: i32, sign_im: i32| -> RatPoint {
        let denom = k as u128 * k as u128 + kn as u128 * kn as u128;
        RatPoint {
            re: hk.clone()
                + Rational::from((sign_re as i128 * kn as i128, k as u128 * denom)),
            im: Rational::from((sign_im, 1)) / Rational::from((denom, 1u32)),
        }
    };
    let zpoint = |kn: u64, sign_im: i32| -> RatPoint {
        let denom = k as u128 * k as u128 + kn as u128 * kn as u128;
        RatPoint {
            re: Rational::from((k as u128, denom)),
            im: Rational::from((sign_im as i128 * kn as i128, denom)),
        }
    };
    Ok(FordArcEndpoints {
        alpha_i: point(k_p, -1, 1),
        alpha_t: point(k_s, 1, 1),
        z_i: zpoint(k_p, 1),
        z_t: zpoint(k_s, -1),
        k_p,
        k_s,
    })
}
