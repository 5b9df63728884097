//! Reduced rational functions in `q` with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::QPoly;
use crate::rat::Rat;

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0 / 1`.
///
/// Because the representation is canonical, `==` is equality in Q(q), and
/// [`QRat::eval`] at a point where the reduced denominator does not vanish
/// gives the exact limit of the function at that point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: QPoly,
    den: QPoly,
}

impl QRat {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero(
                "rational function with zero denominator".into(),
            ));
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return QRat::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        let lc = den.leading().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        QRat { num, den }
    }

    pub fn from_poly(p: QPoly) -> Self {
        QRat {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::from_poly(QPoly::var())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    /// The polynomial itself when the denominator is 1.
    pub fn as_poly(&self) -> Option<&QPoly> {
        (self.den.degree() == Some(0)).then_some(&self.num)
    }

    /// Exact value at `q = at`; fails if the reduced denominator vanishes there.
    pub fn eval(&self, at: &Rat) -> Result<Rat> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "denominator {} vanishes at q = {}",
                self.den,
                crate::rat::render_rat(at)
            )));
        }
        Ok(self.num.eval(at) / d)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero(
                "inverse of the zero rational function".into(),
            ));
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let num = v
            .get("num")
            .ok_or_else(|| Error::Parse("missing \"num\"".into()))
            .and_then(QPoly::from_json)?;
        let den = v
            .get("den")
            .ok_or_else(|| Error::Parse("missing \"den\"".into()))
            .and_then(QPoly::from_json)?;
        QRat::new(num, den)
    }
}

impl Zero for QRat {
    fn zero() -> Self {
        QRat {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QRat {
    fn one() -> Self {
        Self::from_poly(QPoly::one())
    }
}

impl<'a> Add<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.den == rhs.den {
            return QRat::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.div_exact(&g).expect("gcd divides");
        let b = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        QRat::reduce(num, &a * &rhs.den)
    }
}

impl<'a> Sub<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        // cross-cancel first so the products stay small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        QRat::reduce(&n1 * &n2, &d1 * &d2)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: QRat) -> QRat { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a QRat> for QRat {
            type Output = QRat;
            fn $m(self, rhs: &QRat) -> QRat { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
