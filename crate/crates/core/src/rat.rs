//! Arbitrary-precision rationals and the helpers the rest of the crate leans on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Rat = BigRational;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"num/den"` or a plain integer literal.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Canonical text form: `"num/den"`, or `"num"` when the denominator is 1.
pub fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `base^exp` for any integer exponent. Fails only for `0^negative`.
pub fn pow_i(base: &Rat, exp: i64) -> Result<Rat> {
    if exp >= 0 {
        Ok(num_traits::pow(base.clone(), exp as usize))
    } else if base.is_zero() {
        Err(Error::DivisionByZero(format!("0^{exp}")))
    } else {
        Ok(num_traits::pow(base.recip(), exp.unsigned_abs() as usize))
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = n.div_rem(&p);
        if !rem.is_zero() {
            return v;
        }
        n = quot;
        v += 1;
    }
}

/// p-adic valuation of a rational; `None` stands for +inf (the value is zero).
pub fn valuation(r: &Rat, p: u64) -> Option<i64> {
    if r.is_zero() {
        None
    } else {
        Some(int_valuation(r.numer(), p) - int_valuation(r.denom(), p))
    }
}

/// Integer binomial coefficient C(n, k); zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial (x)_r = x(x-1)...(x-r+1).
pub fn falling_factorial(x: i64, r: u32) -> BigInt {
    (0..r as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(x - i))
}

pub fn factorial(n: u32) -> BigInt {
    falling_factorial(n as i64, n)
}
