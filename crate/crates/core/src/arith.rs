//! Exact integer/rational helpers.
//!
//! Every logarithm in the crate is a ceiling or floor of `log_p` of an
//! exact quantity and is evaluated by comparing against powers of `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest `k >= 0` with `p^k >= n`, i.e. `ceil(log_p n)` for `n >= 1`.
/// Returns 0 for `n <= 1`.
pub fn ceil_log(p: u64, n: u64) -> u32 {
    debug_assert!(p >= 2);
    let mut k = 0u32;
    let mut pow: u128 = 1;
    while pow < n as u128 {
        pow *= p as u128;
        k += 1;
    }
    k
}

/// Largest `k >= 0` with `p^k <= x`, i.e. `floor(log_p x)` for rational `x >= 1`.
/// Returns 0 for `x < 1` (callers only pass `x >= 1`).
pub fn floor_log_rational(p: u64, x: &Rational) -> u32 {
    let base = BigInt::from(p);
    let mut k = 0u32;
    let mut pow = base.clone();
    // p^(k+1) <= x  <=>  p^(k+1) * denom <= numer
    while &pow * x.denom() <= *x.numer() {
        pow *= &base;
        k += 1;
    }
    k
}

pub fn floor_log(p: u64, n: u64) -> u32 {
    floor_log_rational(p, &int(n as i64))
}

pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &Rational) -> BigInt {
    x.ceil().to_integer()
}

pub fn floor_i64(x: &Rational) -> i64 {
    floor(x).to_i64().expect("floor fits in i64")
}

pub fn ceil_i64(x: &Rational) -> i64 {
    ceil(x).to_i64().expect("ceil fits in i64")
}

pub fn pow_big(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

pub fn pow_i64(p: i64, e: u32) -> i64 {
    p.checked_pow(e).expect("power fits in i64")
}

/// `p`-part of a positive integer.
pub fn p_part(p: u64, mut n: u64) -> u64 {
    let mut out = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        out *= p;
    }
    out
}

pub fn lcm_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(1u64, |acc, v| acc.lcm(&v))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn max_rational<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    xs.into_iter().cloned().reduce(|a, b| if b > a { b } else { a })
}

pub fn non_negative(x: &Rational) -> bool {
    !x.is_negative()
}

pub fn rational_to_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Serde adapter writing rationals as `"a/b"` strings.
pub mod rational_str {
    use super::{parse_rational, rational_to_string, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Same as [`rational_str`] for optional values.
pub mod opt_rational_str {
    use super::{parse_rational, rational_to_string, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_some(&rational_to_string(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))).transpose()
    }
}

/// Serde adapter for rational vectors.
pub mod rational_vec_str {
    use super::{parse_rational, rational_to_string, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        xs.iter().map(rational_to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|s| parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}
