//! The two evaluation domains: exact values at a fixed rational `q`, and
//! symbolic rational functions in `q`.
//!
//! Formula code is written once against [`QField`] and instantiated with
//! `Rat` (the value of `q` is a number) or [`QRat`] (the value of `q` is the
//! indeterminate).

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qrat::QRat;
use crate::rat::{self, render_rat, Rat};

pub trait QField:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn from_rat(r: Rat) -> Self;

    fn inv(&self) -> Result<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(rat::int(n))
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * &rhs.inv()?)
    }

    fn pow_i(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut e = exp.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.clone() * &sq;
            }
        }
        Ok(acc)
    }
}

impl QField for Rat {
    fn from_rat(r: Rat) -> Self {
        r
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::DivisionByZero("reciprocal of zero".into()))
        } else {
            Ok(self.recip())
        }
    }
}

impl QField for QRat {
    fn from_rat(r: Rat) -> Self {
        QRat::constant(r)
    }
    fn inv(&self) -> Result<Self> {
        QRat::inv(self)
    }
}

/// Where a computation happens.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ctx {
    /// At the rational point `q`.
    Exact(Rat),
    /// In Q(q).
    Symbolic,
}

impl Ctx {
    pub fn exact(q: Rat) -> Self {
        Ctx::Exact(q)
    }

    /// Rejects the points where `1 - q` or `1 + q` vanish, or `q = 0`.
    pub fn require_generic(&self) -> Result<()> {
        if let Ctx::Exact(q) = self {
            if q.is_zero() || q.is_one() || *q == -Rat::one() {
                return Err(Error::Domain(format!(
                    "q = {} is excluded (need q not in {{0, 1, -1}})",
                    render_rat(q)
                )));
            }
        }
        Ok(())
    }
}

/// A result in whichever domain it was computed in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Exact(Rat),
    Symbolic(QRat),
}

impl Scalar {
    pub fn as_exact(&self) -> Option<&Rat> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Symbolic(_) => None,
        }
    }

    pub fn as_symbolic(&self) -> Option<&QRat> {
        match self {
            Scalar::Symbolic(r) => Some(r),
            Scalar::Exact(_) => None,
        }
    }

    /// Specializes to `q = at`. An exact scalar is returned unchanged.
    pub fn eval_at(&self, at: &Rat) -> Result<Rat> {
        match self {
            Scalar::Exact(r) => Ok(r.clone()),
            Scalar::Symbolic(f) => f.eval(at),
        }
    }

    pub fn into_exact(self) -> Result<Rat> {
        match self {
            Scalar::Exact(r) => Ok(r),
            Scalar::Symbolic(_) => Err(Error::Domain("expected an exact value".into())),
        }
    }

    pub fn into_symbolic(self) -> Result<QRat> {
        match self {
            Scalar::Symbolic(r) => Ok(r),
            Scalar::Exact(_) => Err(Error::Domain("expected a symbolic value".into())),
        }
    }

    /// `"num/den"` for exact values, `{"num": [...], "den": [...]}` for symbolic ones.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Exact(r) => serde_json::Value::String(render_rat(r)),
            Scalar::Symbolic(f) => f.to_json(),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        match v {
            serde_json::Value::String(s) => Ok(Scalar::Exact(rat::parse_rat(s)?)),
            obj @ serde_json::Value::Object(_) => Ok(Scalar::Symbolic(QRat::from_json(obj)?)),
            _ => Err(Error::Parse("scalar must be a string or an object".into())),
        }
    }
}

/// Runs a [`QField`]-generic body in the domain named by a [`Ctx`].
///
/// The body sees `$q: &F` (either the rational point or the indeterminate)
/// and must evaluate to `Result<F>`.
#[macro_export]
macro_rules! in_ctx {
    ($ctx:expr, |$q:ident| $body:expr) => {
        match $ctx {
            $crate::field::Ctx::Exact(point) => {
                let $q: &$crate::rat::Rat = point;
                ($body).map($crate::field::Scalar::Exact)
            }
            $crate::field::Ctx::Symbolic => {
                let indeterminate = $crate::qrat::QRat::q();
                let $q: &$crate::qrat::QRat = &indeterminate;
                ($body).map($crate::field::Scalar::Symbolic)
            }
        }
    };
}
