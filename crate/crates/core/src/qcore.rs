//! q-integers, q-factorials, Gaussian binomials and q-Pochhammer products.
//!
//! Every operation comes in two layers: a generic `*_in` function written
//! against [`QField`], and a [`Ctx`]-dispatching wrapper returning a
//! [`Scalar`]. Polynomial-valued helpers (`*_poly`) work directly on
//! [`QPoly`] and serve as the symbolic reference for the identities.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Ctx, QField, Scalar};
use crate::in_ctx;
use crate::poly::QPoly;
use crate::rat::{self, Rat};

pub use crate::rat::{binomial, falling_factorial};

/// `[n]_q = 1 + q + ... + q^(n-1)`
pub fn q_int_in<F: QField>(n: u32, q: &F) -> F {
    let mut acc = F::zero();
    let mut pw = F::one();
    for _ in 0..n {
        acc = acc + &pw;
        pw = pw * q;
    }
    acc
}

pub fn q_int(n: u32, ctx: &Ctx) -> Result<Scalar> {
    in_ctx!(ctx, |q| Ok(q_int_in(n, q)))
}

/// `[s]_q` at a rational point, via the closed form when `q != 1`.
pub fn q_int_exact(s: u64, q: &Rat) -> Rat {
    if q.is_one() {
        return rat::int(s as i64);
    }
    (Rat::one() - num_traits::pow(q.clone(), s as usize)) / (Rat::one() - q)
}

/// `[x]_{-q} = (1 - (-q)^x) / (1 + q)`
pub fn q_bracket_neg_in<F: QField>(x: u32, q: &F) -> Result<F> {
    let one_plus_q = F::one() + q;
    if one_plus_q.is_zero() {
        return Err(Error::DivisionByZero("[x]_{-q} needs 1 + q != 0".into()));
    }
    let num = F::one() - &(-q.clone()).pow_i(x as i64)?;
    num.div(&one_plus_q)
}

pub fn q_bracket_neg(x: u32, ctx: &Ctx) -> Result<Scalar> {
    in_ctx!(ctx, |q| q_bracket_neg_in(x, q))
}

/// `[n]_q! = [n]_q [n-1]_q ... [1]_q`
pub fn q_factorial_in<F: QField>(n: u32, q: &F) -> F {
    (1..=n).fold(F::one(), |acc, i| acc * &q_int_in(i, q))
}

pub fn q_factorial(n: u32, ctx: &Ctx) -> Result<Scalar> {
    in_ctx!(ctx, |q| Ok(q_factorial_in(n, q)))
}

pub fn q_factorial_poly(n: u32) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, i| &acc * &q_int_poly(i))
}

pub fn q_int_poly(n: u32) -> QPoly {
    QPoly::from_coeffs(vec![Rat::one(); n as usize])
}

/// Gaussian binomial by the recursion `C(n+1,k) = C(n,k-1) + q^k C(n,k)`,
/// row by row. Zero outside `0 <= k <= n`.
pub fn gauss_binom_in<F: QField>(n: i64, k: i64, q: &F) -> F {
    if n < 0 || k < 0 || k > n {
        return F::zero();
    }
    let k = k as usize;
    let powers: Vec<F> = std::iter::successors(Some(F::one()), |p| Some(p.clone() * q))
        .take(k + 1)
        .collect();
    // row[j] = C(r, j) for the current r; only columns <= k are needed
    let mut row = vec![F::zero(); k + 1];
    row[0] = F::one();
    for r in 0..n as usize {
        for j in (1..=k.min(r + 1)).rev() {
            row[j] = row[j - 1].clone() + &(powers[j].clone() * &row[j]);
        }
    }
    row[k].clone()
}

pub fn gauss_binom(n: i64, k: i64, ctx: &Ctx) -> Result<Scalar> {
    match ctx {
        // polynomial arithmetic is much cheaper than Q(q) arithmetic here
        Ctx::Symbolic => Ok(Scalar::Symbolic(crate::qrat::QRat::from_poly(
            gauss_binom_poly(n, k),
        ))),
        Ctx::Exact(q) => Ok(Scalar::Exact(gauss_binom_in(n, k, q))),
    }
}

/// Symbolic Gaussian binomial via `C(n+1,k) = C(n,k-1) + q^k C(n,k)`.
pub fn gauss_binom_poly(n: i64, k: i64) -> QPoly {
    if n < 0 || k < 0 || k > n {
        return QPoly::zero();
    }
    let k = k as usize;
    let mut row = vec![QPoly::zero(); k + 1];
    row[0] = QPoly::one();
    for r in 0..n as usize {
        for j in (1..=k.min(r + 1)).rev() {
            let shifted = &QPoly::monomial(Rat::one(), j) * &row[j];
            row[j] = &row[j - 1] + &shifted;
        }
    }
    row.swap_remove(k)
}

/// Symbolic Gaussian binomial via the second recursion
/// `C(n+1,k) = q^(n-k) C(n,k-1) + C(n,k)`.
pub fn gauss_binom_poly_alt(n: i64, k: i64) -> QPoly {
    if n < 0 || k < 0 || k > n {
        return QPoly::zero();
    }
    let k = k as usize;
    let mut row = vec![QPoly::zero(); k + 1];
    row[0] = QPoly::one();
    for r in 0..n as usize {
        for j in (1..=k.min(r + 1)).rev() {
            // row holds C(r, .); r + 1 - j >= 0 since j <= r + 1
            let shifted = &QPoly::monomial(Rat::one(), r + 1 - j) * &row[j - 1];
            row[j] = &shifted + &row[j];
        }
    }
    row.swap_remove(k)
}

/// `[n]_q! / ([n-k]_q! [k]_q!)` by exact polynomial division.
pub fn gauss_binom_factorial_quotient(n: i64, k: i64) -> QPoly {
    if n < 0 || k < 0 || k > n {
        return QPoly::zero();
    }
    let den = &q_factorial_poly((n - k) as u32) * &q_factorial_poly(k as u32);
    q_factorial_poly(n as u32)
        .div_exact(&den)
        .expect("q-factorial quotient is a polynomial")
}

/// Gaussian binomial as a sum over weak compositions
/// `d_0 + ... + d_k = n - k` of `q^(d_1 + 2 d_2 + ... + k d_k)`.
///
/// Brute force; meant for small `n`.
pub fn gauss_binom_compositions(n: u32, k: u32) -> QPoly {
    if k > n {
        return QPoly::zero();
    }
    let total = (n - k) as usize;
    // the largest exponent is k * (n - k)
    let mut counts = vec![0i64; k as usize * total + 1];
    // choose d_i for i = k, k-1, ..., 1; d_0 takes whatever is left
    fn walk(i: u32, left: usize, weight: usize, counts: &mut [i64]) {
        if i == 0 {
            counts[weight] += 1;
            return;
        }
        for d in 0..=left {
            walk(i - 1, left - d, weight + d * i as usize, counts);
        }
    }
    walk(k, total, 0, &mut counts);
    QPoly::from_ints(&counts)
}

/// `(b; q^e)_n = prod_{i=1}^{n} (1 - b q^(e (i-1)))`
pub fn pochhammer_q_in<F: QField>(b: &F, n: u32, ratio_exponent: i64, q: &F) -> Result<F> {
    let ratio = q.pow_i(ratio_exponent).map_err(|_| {
        Error::DivisionByZero("q-Pochhammer with negative ratio exponent at q = 0".into())
    })?;
    let mut acc = F::one();
    let mut factor = b.clone();
    for _ in 0..n {
        acc = acc * &(F::one() - &factor);
        factor = factor * &ratio;
    }
    Ok(acc)
}

/// `b` must be given in the same domain as `ctx` (an exact `b` is
/// embedded as a constant when `ctx` is symbolic).
pub fn pochhammer_q(b: &Scalar, n: u32, ratio_exponent: i64, ctx: &Ctx) -> Result<Scalar> {
    match (ctx, b) {
        (Ctx::Exact(q), Scalar::Exact(b)) => {
            pochhammer_q_in(b, n, ratio_exponent, q).map(Scalar::Exact)
        }
        (Ctx::Symbolic, b) => {
            let b = match b {
                Scalar::Symbolic(f) => f.clone(),
                Scalar::Exact(r) => crate::qrat::QRat::constant(r.clone()),
            };
            pochhammer_q_in(&b, n, ratio_exponent, &crate::qrat::QRat::q()).map(Scalar::Symbolic)
        }
        (Ctx::Exact(_), Scalar::Symbolic(_)) => Err(Error::Domain(
            "symbolic base cannot be used at a fixed q".into(),
        )),
    }
}

/// Coefficients in `b` of the expanded product `(b; q)_n`, each a [`QPoly`].
pub fn pochhammer_b_expansion(n: u32) -> Vec<QPoly> {
    let mut coeffs = vec![QPoly::one()];
    for i in 0..n as usize {
        // multiply by (1 - q^i b)
        let qi = QPoly::monomial(-Rat::one(), i);
        let mut next = coeffs.clone();
        next.push(QPoly::zero());
        for (j, c) in coeffs.iter().enumerate() {
            next[j + 1] = &next[j + 1] + &(&qi * c);
        }
        coeffs = next;
    }
    coeffs
}

/// The signed Gaussian sum `binom(n,k)_q q^(k(k-1)/2) (-1)^k`, `k = 0..=n`.
pub fn q_binomial_theorem_coeffs(n: u32) -> Vec<QPoly> {
    (0..=n as i64)
        .map(|k| {
            let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
            &gauss_binom_poly(n as i64, k) * &QPoly::monomial(sign, (k * (k - 1) / 2) as usize)
        })
        .collect()
}

/// Coefficient of `b^k` in `1 / (b; q)_n`: `binom(n+k-1, k)_q`.
pub fn inv_pochhammer_coeff(n: u32, k: u32, ctx: &Ctx) -> Result<Scalar> {
    if n == 0 {
        return Err(Error::Domain("inv_pochhammer_coeff needs n >= 1".into()));
    }
    gauss_binom(n as i64 + k as i64 - 1, k as i64, ctx)
}

pub fn inv_pochhammer_coeff_poly(n: u32, k: u32) -> QPoly {
    gauss_binom_poly(n as i64 + k as i64 - 1, k as i64)
}

/// `binom(n+k-1, k)_q` for `k = 0..count` at a rational `q != 1`,
/// by the ratio `(1 - q^(k+n)) / (1 - q^(k+1))` between consecutive terms.
pub fn inv_pochhammer_coeffs_exact(n: u32, count: usize, q: &Rat) -> Vec<Rat> {
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    let mut cur = Rat::one();
    let mut qk = Rat::one(); // q^k
    let qn = num_traits::pow(q.clone(), n as usize);
    for k in 0..count {
        out.push(cur.clone());
        if k + 1 < count {
            let num = Rat::one() - &qk * &qn;
            let den = Rat::one() - &qk * q;
            cur = cur * num / den;
            qk *= q;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qrat::QRat;
    use crate::rat::{frac, int};

    fn sym_poly(s: Scalar) -> QPoly {
        s.into_symbolic().unwrap().as_poly().unwrap().clone()
    }

    #[test]
    fn q_int_examples() {
        for q in [frac(1, 2), int(4), frac(-2, 3)] {
            assert_eq!(q_int(1, &Ctx::Exact(q)).unwrap(), Scalar::Exact(int(1)));
        }
        assert_eq!(
            q_int(3, &Ctx::Exact(frac(1, 2))).unwrap(),
            Scalar::Exact(frac(7, 4))
        );
        for n in 0..=20 {
            let s = q_int(n, &Ctx::Symbolic).unwrap();
            assert_eq!(s.eval_at(&int(1)).unwrap(), int(n as i64));
            assert_eq!(
                q_int_exact(n as u64, &frac(1, 3)),
                s.eval_at(&frac(1, 3)).unwrap()
            );
        }
        assert_eq!(q_int_exact(5, &int(1)), int(5));
    }

    #[test]
    fn q_bracket_neg_examples() {
        assert_eq!(
            q_bracket_neg(1, &Ctx::Exact(frac(1, 2))).unwrap(),
            Scalar::Exact(int(1))
        );
        assert_eq!(
            sym_poly(q_bracket_neg(2, &Ctx::Symbolic).unwrap()),
            QPoly::from_ints(&[1, -1])
        );
        assert_eq!(
            q_bracket_neg(0, &Ctx::Exact(int(4))).unwrap(),
            Scalar::Exact(int(0))
        );
        assert!(matches!(
            q_bracket_neg(3, &Ctx::Exact(int(-1))),
            Err(Error::DivisionByZero(_))
        ));
        // [p^N]_{-1} = 1 for odd p^N
        assert_eq!(
            q_bracket_neg(27, &Ctx::Exact(int(1))).unwrap(),
            Scalar::Exact(int(1))
        );
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(
            q_factorial(0, &Ctx::Symbolic).unwrap(),
            Scalar::Symbolic(QRat::one())
        );
        assert_eq!(
            sym_poly(q_factorial(3, &Ctx::Symbolic).unwrap()),
            QPoly::from_ints(&[1, 2, 2, 1])
        );
        assert_eq!(
            q_factorial(3, &Ctx::Exact(int(1))).unwrap(),
            Scalar::Exact(int(6))
        );
    }

    #[test]
    fn gauss_binom_examples() {
        for n in 0..8 {
            assert_eq!(
                sym_poly(gauss_binom(n, 0, &Ctx::Symbolic).unwrap()),
                QPoly::one()
            );
        }
        let expect = QPoly::from_ints(&[1, 1, 2, 1, 1]);
        assert_eq!(sym_poly(gauss_binom(4, 2, &Ctx::Symbolic).unwrap()), expect);
        assert_eq!(
            gauss_binom(4, 2, &Ctx::Exact(int(1))).unwrap(),
            Scalar::Exact(int(6))
        );
        assert_eq!(
            gauss_binom(4, 5, &Ctx::Exact(int(3))).unwrap(),
            Scalar::Exact(int(0))
        );
        assert_eq!(
            gauss_binom(4, -1, &Ctx::Symbolic).unwrap(),
            Scalar::Symbolic(QRat::zero())
        );
        assert_eq!(gauss_binom_compositions(4, 2), expect);
        for k in 0..6 {
            assert_eq!(gauss_binom_compositions(k, k), QPoly::one());
        }
    }

    #[test]
    fn binom_forms_agree() {
        for n in 0..=20i64 {
            for k in 0..=n {
                let a = gauss_binom_poly(n, k);
                assert_eq!(a, gauss_binom_poly_alt(n, k), "alt recursion n={n} k={k}");
                assert_eq!(a, gauss_binom_poly(n, n - k), "symmetry n={n} k={k}");
                if n <= 12 {
                    assert_eq!(a, gauss_binom_factorial_quotient(n, k));
                    assert_eq!(a, gauss_binom_compositions(n as u32, k as u32));
                }
                assert!(a
                    .coeffs()
                    .iter()
                    .all(|c| c.is_integer() && *c >= Rat::zero()));
            }
        }
    }

    #[test]
    fn exact_binom_matches_symbolic() {
        for q in [frac(1, 2), frac(2, 3), int(4), int(-2)] {
            for n in 0..10 {
                for k in 0..=n {
                    assert_eq!(gauss_binom_in(n, k, &q), gauss_binom_poly(n, k).eval(&q));
                }
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        let q = frac(2, 5);
        let b = frac(3, 7);
        let one = pochhammer_q(&Scalar::Exact(b.clone()), 1, 1, &Ctx::Exact(q.clone())).unwrap();
        assert_eq!(one, Scalar::Exact(Rat::one() - &b));
        let exp = pochhammer_b_expansion(2);
        assert_eq!(
            exp,
            vec![
                QPoly::one(),
                QPoly::from_ints(&[-1, -1]),
                QPoly::from_ints(&[0, 1])
            ]
        );
        assert!(pochhammer_q_in(&b, 2, -1, &Rat::zero()).is_err());
    }

    #[test]
    fn pochhammer_reversal_identity() {
        // (-q^(j+k-1); q^-1)_k = (-q^j; q)_k
        let q = QRat::q();
        for j in 0..=8i64 {
            for k in 0..=8u32 {
                let lhs = pochhammer_q_in(&-q.pow_i(j).unwrap(), k, 1, &q).unwrap();
                let rhs = pochhammer_q_in(&-q.pow_i(j + k as i64 - 1).unwrap(), k, -1, &q).unwrap();
                assert_eq!(lhs, rhs, "j={j} k={k}");
            }
        }
    }

    #[test]
    fn inv_pochhammer_examples() {
        assert_eq!(
            inv_pochhammer_coeff(3, 0, &Ctx::Exact(frac(1, 2))).unwrap(),
            Scalar::Exact(int(1))
        );
        assert_eq!(
            sym_poly(inv_pochhammer_coeff(2, 2, &Ctx::Symbolic).unwrap()),
            QPoly::from_ints(&[1, 1, 1])
        );
        assert!(inv_pochhammer_coeff(0, 2, &Ctx::Symbolic).is_err());
        for n in 1..4u32 {
            let w = inv_pochhammer_coeffs_exact(n, 15, &frac(1, 2));
            for (k, v) in w.iter().enumerate() {
                assert_eq!(*v, inv_pochhammer_coeff_poly(n, k as u32).eval(&frac(1, 2)));
            }
        }
    }
}
