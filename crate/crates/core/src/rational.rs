//! Exact rational scalars and small integer-vector helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// The scalar type used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Formats as `"p"` or `"p/q"`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_i64(x: &BigInt) -> Result<i64, Error> {
    x.to_i64().ok_or(Error::Overflow)
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Scales a nonzero rational vector to the primitive integer vector with the same direction.
pub fn primitive_from_rational(v: &[Q]) -> Result<Vec<i64>, Error> {
    let l = lcm_denominators(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Q::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::Degenerate("zero direction vector".into()));
    }
    ints.iter().map(|x| to_i64(&(x / &g))).collect()
}

/// Divides an integer vector by the gcd of its entries; returns the vector and the gcd.
pub fn primitive_int(v: &[i64]) -> Option<(Vec<i64>, i64)> {
    let g = gcd_slice(v);
    if g == 0 {
        return None;
    }
    Some((v.iter().map(|x| x / g).collect(), g))
}
