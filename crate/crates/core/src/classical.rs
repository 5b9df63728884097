//! The q = 1 sequences, all read off truncated exponential generating
//! functions: Euler, Genocchi, Bernoulli, Frobenius-Euler, their
//! higher-order versions and the classical twisted numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::XPoly;
use crate::rat::{self, Rat};

/// `sum_{n <= order} c_n t^n / n!`, stored as the normalized coefficients `c_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSeries {
    coeffs: Vec<Rat>,
}

fn binom_rat(n: usize, k: usize) -> Rat {
    Rat::from_integer(rat::binomial(n as i64, k as i64))
}

impl ExpSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(order: usize, mut coeffs: Vec<Rat>) -> Self {
        coeffs.resize(order + 1, Rat::zero());
        ExpSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `c_n`, i.e. `n!` times the coefficient of `t^n`.
    pub fn coeff(&self, n: usize) -> Rat {
        self.coeffs.get(n).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn constant(order: usize, c: Rat) -> Self {
        Self::new(order, vec![c])
    }

    /// `e^(a t)`
    pub fn exp(order: usize, a: &Rat) -> Self {
        let coeffs = std::iter::successors(Some(Rat::one()), |p| Some(p * a))
            .take(order + 1)
            .collect();
        ExpSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        ExpSeries {
            coeffs: (0..=order)
                .map(|n| &self.coeffs[n] + &other.coeffs[n])
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        ExpSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Binomial convolution; the result has the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n).fold(Rat::zero(), |acc, k| {
                    acc + binom_rat(n, k) * &self.coeffs[k] * &other.coeffs[n - k]
                })
            })
            .collect();
        ExpSeries { coeffs }
    }

    pub fn pow(&self, r: u32) -> Self {
        let mut acc = ExpSeries::constant(self.order(), Rat::one());
        for _ in 0..r {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::DivisionByZero(
                "reciprocal of a series with zero constant term".into(),
            ));
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rat> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let s = (1..=n).fold(Rat::zero(), |acc, k| {
                acc + binom_rat(n, k) * &self.coeffs[k] * &out[n - k]
            });
            out.push(-(s * &inv0));
        }
        Ok(ExpSeries { coeffs: out })
    }

    /// Multiplication by `t`: `(t f)_n = n f_(n-1)`; the order is kept.
    pub fn mul_t(&self) -> Self {
        let coeffs = (0..self.coeffs.len())
            .map(|n| {
                if n == 0 {
                    Rat::zero()
                } else {
                    rat::int(n as i64) * &self.coeffs[n - 1]
                }
            })
            .collect();
        ExpSeries { coeffs }
    }

    /// The `n`-th coefficient of `self * e^(x t)` as a polynomial in `x`:
    /// `sum_k C(n,k) c_k x^(n-k)`.
    pub fn times_exp_x(&self, n: usize) -> XPoly {
        assert!(
            n <= self.order(),
            "index {n} beyond series order {}",
            self.order()
        );
        let mut coeffs = vec![Rat::zero(); n + 1];
        for k in 0..=n {
            coeffs[n - k] = binom_rat(n, k) * &self.coeffs[k];
        }
        XPoly::from_coeffs(coeffs)
    }
}

/// `2 / (e^t + 1)`
pub fn euler_gf(order: usize) -> ExpSeries {
    let den = ExpSeries::exp(order, &Rat::one()).add(&ExpSeries::constant(order, Rat::one()));
    den.recip().expect("constant term 2").scale(&rat::int(2))
}

/// `2 t / (e^t + 1)`
pub fn genocchi_gf(order: usize) -> ExpSeries {
    euler_gf(order).mul_t()
}

/// Euler polynomial `E_n(x)`.
pub fn euler_poly(n: usize) -> XPoly {
    euler_gf(n).times_exp_x(n)
}

/// `E_n = E_n(0)`.
pub fn euler_number(n: usize) -> Rat {
    euler_gf(n).coeff(n)
}

/// Euler polynomial of order `r`: coefficients of `(2/(e^t+1))^r e^(xt)`.
pub fn higher_euler_poly(n: usize, r: u32) -> Result<XPoly> {
    if r == 0 {
        return Err(Error::Domain("order r must be at least 1".into()));
    }
    Ok(euler_gf(n).pow(r).times_exp_x(n))
}

pub fn genocchi(n: usize) -> Rat {
    genocchi_gf(n).coeff(n)
}

/// Genocchi polynomial: coefficients of `2t e^(xt) / (e^t + 1)`.
pub fn genocchi_poly(n: usize) -> XPoly {
    genocchi_gf(n).times_exp_x(n)
}

/// Genocchi number of order `r`: coefficients of `(2t/(e^t+1))^r`.
pub fn higher_genocchi(n: usize, r: u32) -> Result<Rat> {
    if r == 0 {
        return Err(Error::Domain("order r must be at least 1".into()));
    }
    if n < r as usize {
        return Ok(Rat::zero());
    }
    Ok(genocchi_gf(n).pow(r).coeff(n))
}

/// Bernoulli number (`B_1 = -1/2`), from the reciprocal of `(e^t - 1)/t`.
pub fn bernoulli(n: usize) -> Rat {
    let coeffs = (0..=n).map(|k| rat::frac(1, k as i64 + 1)).collect();
    ExpSeries::new(n, coeffs)
        .recip()
        .expect("constant term 1")
        .coeff(n)
}

fn frobenius_gf(order: usize, u: &Rat) -> Result<ExpSeries> {
    if u.is_one() {
        return Err(Error::Domain("Frobenius-Euler numbers need u != 1".into()));
    }
    let den = ExpSeries::exp(order, &Rat::one()).add(&ExpSeries::constant(order, -u.clone()));
    Ok(den.recip()?.scale(&(Rat::one() - u)))
}

/// `H_n(u)`: coefficients of `(1-u)/(e^t-u)`.
pub fn frobenius_euler(n: usize, u: &Rat) -> Result<Rat> {
    Ok(frobenius_gf(n, u)?.coeff(n))
}

/// `H_n(u, x)`: coefficients of `(1-u) e^(xt)/(e^t-u)`.
pub fn frobenius_euler_poly(n: usize, u: &Rat) -> Result<XPoly> {
    Ok(frobenius_gf(n, u)?.times_exp_x(n))
}

fn check_twist(w: &Rat) -> Result<()> {
    if w.is_zero() || *w == -Rat::one() {
        return Err(Error::Domain(format!(
            "twist w = {} is excluded (need w not in {{0, -1}})",
            rat::render_rat(w)
        )));
    }
    Ok(())
}

/// Twisted Euler number `E_n(w)` (coefficients of `2/(w e^t + 1)`),
/// computed as `2/(w+1) H_n(-1/w)`.
pub fn twisted_euler_classical(n: usize, w: &Rat) -> Result<Rat> {
    check_twist(w)?;
    let h = frobenius_euler(n, &-w.recip())?;
    Ok(rat::int(2) / (w + Rat::one()) * h)
}

/// Twisted Genocchi number `G_{n,w}`: coefficients of `2t/(w e^t + 1)`.
pub fn twisted_genocchi_classical(n: usize, w: &Rat) -> Result<Rat> {
    check_twist(w)?;
    let den = ExpSeries::exp(n, &Rat::one())
        .scale(w)
        .add(&ExpSeries::constant(n, Rat::one()));
    Ok(den.recip()?.scale(&rat::int(2)).mul_t().coeff(n))
}

/// `(x)_r` as an exact rational, for use with [`Rat`]-valued formulas.
pub fn falling_factorial_rat(x: i64, r: u32) -> Rat {
    Rat::from_integer(rat::falling_factorial(x, r))
}

/// `k! C(n+k, k)`, the scaling between order-`k` Genocchi numbers and moments.
pub fn genocchi_scaling(n: u32, k: u32) -> BigInt {
    rat::factorial(k) * rat::binomial(n as i64 + k as i64, k as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn euler_examples() {
        assert_eq!(euler_number(0), int(1));
        assert_eq!(euler_number(1), frac(-1, 2));
        assert_eq!(euler_number(3), frac(1, 4));
        assert_eq!(euler_poly(1), XPoly::from_coeffs(vec![frac(-1, 2), int(1)]));
        for n in 0..10 {
            assert!(euler_poly(n).is_monic());
            assert_eq!(euler_poly(n).degree(), Some(n));
        }
    }

    #[test]
    fn higher_euler_examples() {
        for r in 1..5 {
            assert_eq!(higher_euler_poly(0, r).unwrap(), XPoly::one());
            assert_eq!(
                higher_euler_poly(1, r).unwrap().eval(&int(0)),
                frac(-(r as i64), 2)
            );
        }
        assert_eq!(higher_euler_poly(2, 2).unwrap().eval(&int(0)), frac(1, 2));
        assert!(higher_euler_poly(2, 0).is_err());
    }

    #[test]
    fn genocchi_examples() {
        assert_eq!(genocchi(0), int(0));
        assert_eq!(genocchi(1), int(1));
        assert_eq!(genocchi(2), int(-1));
        assert_eq!(genocchi(3), int(0));
        assert_eq!(genocchi(4), int(1));
        assert_eq!(genocchi(5), int(0));
        assert_eq!(genocchi(6), int(-3));
        assert_eq!(genocchi(8), int(17));
    }

    #[test]
    fn genocchi_poly_is_shifted_euler_poly() {
        for n in 0..10usize {
            let g = genocchi_poly(n + 1).scale(&frac(1, n as i64 + 1));
            assert_eq!(g, euler_poly(n));
        }
    }

    #[test]
    fn higher_genocchi_examples() {
        for r in 1..=5u32 {
            for j in 0..r as usize {
                assert_eq!(higher_genocchi(j, r).unwrap(), int(0));
            }
            let fact = rat::factorial(r);
            assert_eq!(
                higher_genocchi(r as usize, r).unwrap(),
                Rat::from_integer(fact)
            );
        }
        assert_eq!(higher_genocchi(4, 2).unwrap(), int(6));
        assert_eq!(
            higher_euler_poly(2, 2).unwrap().eval(&int(0)) * int(12),
            int(6)
        );
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), frac(-1, 2));
        assert_eq!(bernoulli(2), frac(1, 6));
        assert_eq!(bernoulli(3), int(0));
        assert_eq!(int(2) * (int(1) - int(64)) * bernoulli(6), int(-3));
    }

    #[test]
    fn frobenius_examples() {
        for u in [int(2), int(-2), frac(1, 3)] {
            assert_eq!(frobenius_euler(0, &u).unwrap(), int(1));
            assert_eq!(frobenius_euler(1, &u).unwrap(), (&u - int(1)).recip());
            for n in 0..=10 {
                let h = frobenius_euler(n, &u).unwrap();
                assert_eq!(frobenius_euler_poly(n, &u).unwrap().eval(&int(0)), h);
            }
        }
        for n in 0..=12 {
            assert_eq!(frobenius_euler(n, &int(-1)).unwrap(), euler_number(n));
        }
        assert!(matches!(frobenius_euler(2, &int(1)), Err(Error::Domain(_))));
    }

    #[test]
    fn twisted_classical_examples() {
        for n in 0..=10 {
            assert_eq!(
                twisted_euler_classical(n, &int(1)).unwrap(),
                euler_number(n)
            );
            assert_eq!(twisted_genocchi_classical(n, &int(1)).unwrap(), genocchi(n));
        }
        let w = frac(1, 2);
        assert_eq!(twisted_euler_classical(0, &w).unwrap(), frac(4, 3));
        assert_eq!(twisted_euler_classical(1, &w).unwrap(), frac(-4, 9));
        assert!(twisted_euler_classical(1, &int(-1)).is_err());
        assert!(twisted_euler_classical(1, &int(0)).is_err());
        for n in 1..=8usize {
            let lhs = twisted_genocchi_classical(n, &w).unwrap();
            let rhs = int(n as i64) * twisted_euler_classical(n - 1, &w).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn series_algebra() {
        let e = ExpSeries::exp(6, &int(1));
        let inv = e.recip().unwrap();
        assert_eq!(inv, ExpSeries::exp(6, &int(-1)));
        assert_eq!(e.mul(&inv), ExpSeries::constant(6, int(1)));
        assert!(ExpSeries::constant(3, int(0)).recip().is_err());
        assert_eq!(genocchi_scaling(2, 3), BigInt::from(60));
    }
}
