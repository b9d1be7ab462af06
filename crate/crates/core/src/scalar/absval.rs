use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::is_prime;
use crate::error::{Error, Result};

/// Absolute value on ℚ, up to equivalence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AbsValue {
    Archimedean,
    Trivial,
    Padic(u64),
}

impl AbsValue {
    pub fn padic(p: u64) -> Result<AbsValue> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(AbsValue::Padic(p))
    }

    /// Parses `arch`, `trivial` and `padic:<p>`.
    pub fn parse(s: &str) -> Result<AbsValue> {
        match s.trim() {
            "arch" | "archimedean" => Ok(AbsValue::Archimedean),
            "trivial" => Ok(AbsValue::Trivial),
            other => match other.strip_prefix("padic:") {
                Some(p) => AbsValue::padic(
                    p.parse()
                        .map_err(|_| Error::Parse(format!("bad prime in {other:?}")))?,
                ),
                None => Err(Error::Parse(format!("unknown absolute value {other:?}"))),
            },
        }
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, AbsValue::Archimedean)
    }
}

impl fmt::Display for AbsValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbsValue::Archimedean => f.write_str("arch"),
            AbsValue::Trivial => f.write_str("trivial"),
            AbsValue::Padic(p) => write!(f, "padic:{p}"),
        }
    }
}

fn int_valuation(v: &BigInt, p: &BigInt) -> i64 {
    let mut v = v.clone();
    let mut k = 0;
    loop {
        let (q, r) = v.div_rem(p);
        if !r.is_zero() {
            return k;
        }
        v = q;
        k += 1;
    }
}

/// `v_p(r)`, or `None` for `r = 0`.
pub fn padic_valuation(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    Some(int_valuation(r.numer(), &p) - int_valuation(r.denom(), &p))
}
