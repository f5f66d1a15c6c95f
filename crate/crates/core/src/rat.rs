//! Arbitrary-precision rational scalars and vectors.
//!
//! All arithmetic in this crate is exact. Rationals are serialized as
//! canonical strings `"p/q"` with `q > 0` (integers as `"p"`).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

pub type Rat = BigRational;
pub type RatVec = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical string form: `"p/q"` with q > 0, or just `"p"` when q = 1.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_string(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(Rat::from_integer)
            .map_err(|e| format!("bad integer {s:?}: {e}")),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| format!("bad numerator: {e}"))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| format!("bad denominator: {e}"))?;
            if q.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rat::new(p, q))
        }
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn is_integral(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Exact conversion to i128 if the rational is an integer fitting the range.
pub fn to_i128(r: &Rat) -> Option<i128> {
    if !r.denom().is_one() {
        return None;
    }
    let n = r.numer();
    let digits = n.to_string();
    digits.parse::<i128>().ok()
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

/// serde adapter: a rational as its canonical string.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_string(&s).map_err(serde::de::Error::custom)
    }
}

/// serde adapter for vectors of rationals.
pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| rat_to_string(r)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|s| rat_from_string(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
