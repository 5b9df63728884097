//! Dense univariate polynomials over `Rat`.
//!
//! The same type carries polynomials in `q` (Gaussian binomials, q-factorials)
//! and polynomials in `x` (Euler and Genocchi polynomials); the aliases
//! [`QPoly`] and [`XPoly`] only document which indeterminate is meant.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{render_rat, Rat};

/// Coefficient `i` multiplies the `i`-th power. Trailing zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

pub type QPoly = Poly;
pub type XPoly = Poly;

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| crate::rat::int(c)).collect())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * t^deg`
    pub fn monomial(c: Rat, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(Rat::one(), 1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, at: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * at + c)
    }

    /// Substitutes `other` for the indeterminate.
    pub fn compose(&self, other: &Poly) -> Poly {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * other) + &Poly::constant(c.clone())
        })
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division: `self = quot * divisor + rem` with `deg rem < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::DivisionByZero("polynomial division by zero".into()))?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Exact division; errors if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if !r.is_zero() {
            return Err(Error::Domain("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// JSON array of coefficient strings, lowest degree first.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|c| serde_json::Value::String(render_rat(c)))
                .collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Poly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial must be a JSON array".into()))?;
        let coeffs = arr
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| Error::Parse("coefficients must be strings".into()))
                    .and_then(crate::rat::parse_rat)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Rat::one())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", render_rat(c))?,
                1 => write!(f, "({})*t", render_rat(c))?,
                _ => write!(f, "({})*t^{i}", render_rat(c))?,
            }
        }
        Ok(())
    }
}
