//! q-Genocchi numbers: `G_{n,q}`, the higher-order `G_{n,q}^{(h,k)}`, and
//! their twisted versions.
//!
//! Indices follow the generating functions, which carry a factor `t^k`:
//! `G_{n+k,q}^{(h,k)} = k! C(n+k,k) * (moment of order n)`, and the first
//! `k` numbers vanish.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Ctx, QField, Scalar};
use crate::in_ctx;
use crate::padic::{SeriesParams, SeriesValue};
use crate::qeuler::{inv_reversed_pochhammer, sign, weighted_bracket_series};
use crate::rat::{self, Rat};

/// Parameters of `G_{n+k,q,w}^{(h,k)}`; `n` is the shifted index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGenocchiSpec {
    pub n: u32,
    pub h: i64,
    pub k: u32,
    pub w: Rat,
}

impl QGenocchiSpec {
    pub fn new(n: u32, h: i64, k: u32) -> Self {
        QGenocchiSpec {
            n,
            h,
            k,
            w: Rat::one(),
        }
    }

    pub fn twisted(mut self, w: Rat) -> Self {
        self.w = w;
        self
    }

    /// The unshifted index `n + k` of the number this spec names.
    pub fn index(&self) -> u32 {
        self.n + self.k
    }

    /// `k! C(n+k, k)`
    pub fn scaling(&self) -> BigInt {
        crate::classical::genocchi_scaling(self.n, self.k)
    }
}

/// `n [2]_q (1-q)^(-(n-1)) sum_{l<n} C(n-1,l) (-1)^l / (1 + q^(l+1) w)`
pub fn qgenocchi_twisted_in<F: QField>(n: u32, w: &Rat, q: &F) -> Result<F> {
    if n == 0 {
        return Ok(F::zero());
    }
    let wf = F::from_rat(w.clone());
    let mut acc = F::zero();
    for l in 0..n as u64 {
        let den = F::one() + &(q.pow_i(l as i64 + 1)? * &wf);
        if den.is_zero() {
            return Err(Error::Domain(format!(
                "denominator 1 + q^{} w vanishes (l = {l})",
                l + 1
            )));
        }
        let c = Rat::from_integer(rat::binomial(n as i64 - 1, l as i64)) * rat::int(sign(l));
        acc = acc + &F::from_rat(c).div(&den)?;
    }
    let one_minus_q = F::one() - q;
    if one_minus_q.is_zero() && n > 1 {
        return Err(Error::DivisionByZero("(1 - q)^(-(n-1)) at q = 1".into()));
    }
    Ok(F::from_i64(n as i64) * &(F::one() + q) * &one_minus_q.pow_i(1 - n as i64)? * &acc)
}

/// q-Genocchi number `G_{n,q}`.
pub fn qgenocchi(n: u32, ctx: &Ctx) -> Result<Scalar> {
    ctx.require_generic()?;
    in_ctx!(ctx, |q| qgenocchi_twisted_in(n, &Rat::one(), q))
}

/// Twisted q-Genocchi number `G_{n,q,w}`.
pub fn qgenocchi_twisted(n: u32, w: &Rat, ctx: &Ctx) -> Result<Scalar> {
    ctx.require_generic()?;
    in_ctx!(ctx, |q| qgenocchi_twisted_in(n, w, q))
}

/// `k! C(n+k,k) [2]_q^k (1-q)^(-n) sum_{l<=n} C(n,l) (-1)^l / (-w q^(h+l); q^-1)_k`
pub fn qgenocchi_hk_in<F: QField>(spec: &QGenocchiSpec, q: &F) -> Result<F> {
    if spec.k == 0 {
        return Err(Error::Domain("order k must be at least 1".into()));
    }
    let w = F::from_rat(spec.w.clone());
    let mut acc = F::zero();
    for l in 0..=spec.n as u64 {
        let c = Rat::from_integer(rat::binomial(spec.n as i64, l as i64)) * rat::int(sign(l));
        acc = acc
            + &(F::from_rat(c) * &inv_reversed_pochhammer(&w, spec.h + l as i64, spec.k, q, l)?);
    }
    let one_minus_q = F::one() - q;
    if one_minus_q.is_zero() && spec.n > 0 {
        return Err(Error::DivisionByZero("(1 - q)^(-n) at q = 1".into()));
    }
    let scaling = F::from_rat(Rat::from_integer(spec.scaling()));
    Ok(scaling
        * &(F::one() + q).pow_i(spec.k as i64)?
        * &one_minus_q.pow_i(-(spec.n as i64))?
        * &acc)
}

/// `G_{n+k,q,w}^{(h,k)}` from the closed form.
pub fn qgenocchi_hk(spec: &QGenocchiSpec, ctx: &Ctx) -> Result<Scalar> {
    ctx.require_generic()?;
    in_ctx!(ctx, |q| qgenocchi_hk_in(spec, q))
}

/// `G_{j,q,w}^{(h,k)}` by its unshifted index; zero for `j < k`.
pub fn qgenocchi_hk_index(j: u32, h: i64, k: u32, w: &Rat, ctx: &Ctx) -> Result<Scalar> {
    if k == 0 {
        return Err(Error::Domain("order k must be at least 1".into()));
    }
    if j < k {
        return Ok(match ctx {
            Ctx::Exact(_) => Scalar::Exact(Rat::zero()),
            Ctx::Symbolic => Scalar::Symbolic(crate::qrat::QRat::zero()),
        });
    }
    qgenocchi_hk(&QGenocchiSpec::new(j - k, h, k).twisted(w.clone()), ctx)
}

/// `k! C(n+k,k) [2]_q^k sum_m binom(m+k-1,m)_q (-w)^m [m]_q^n`, the series
/// form of `G_{n+k,q,w}^{(k-1,k)}`. `spec.h` must equal `k - 1`.
pub fn qgenocchi_hk_series(
    spec: &QGenocchiSpec,
    q: &Rat,
    sp: &SeriesParams,
) -> Result<SeriesValue> {
    if spec.k == 0 {
        return Err(Error::Domain("order k must be at least 1".into()));
    }
    if spec.h != spec.k as i64 - 1 {
        return Err(Error::Domain(format!(
            "series form needs h = k - 1, got h = {}, k = {}",
            spec.h, spec.k
        )));
    }
    let mut sums = weighted_bracket_series(spec.k, 0, spec.n, &spec.w, q, sp)?;
    let s = sums.swap_remove(spec.n as usize);
    let scaling = Rat::from_integer(spec.scaling());
    let tail_bound = if sp.mode == crate::padic::SeriesMode::Direct {
        s.tail_bound * &scaling
    } else {
        s.tail_bound
    };
    Ok(SeriesValue {
        value: s.value * scaling,
        tail_bound,
        truncation: s.truncation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical;
    use crate::qeuler::{qeuler_hk, QEulerSpec};
    use crate::rat::{frac, int};
    use num_traits::Signed;

    #[test]
    fn small_examples() {
        let half = Ctx::Exact(frac(1, 2));
        assert_eq!(qgenocchi(0, &half).unwrap(), Scalar::Exact(int(0)));
        for q in [frac(1, 2), frac(1, 3), int(4)] {
            assert_eq!(qgenocchi(1, &Ctx::Exact(q)).unwrap(), Scalar::Exact(int(1)));
        }
        assert_eq!(
            qgenocchi(1, &Ctx::Symbolic)
                .unwrap()
                .eval_at(&int(7))
                .unwrap(),
            int(1)
        );
        assert_eq!(qgenocchi(2, &half).unwrap(), Scalar::Exact(frac(-4, 5)));
        assert_eq!(
            qgenocchi_twisted(2, &frac(1, 2), &half).unwrap(),
            Scalar::Exact(frac(-8, 15))
        );
        for w in [frac(1, 2), int(4)] {
            let expect = frac(3, 2) / (Rat::one() + frac(1, 2) * &w);
            assert_eq!(
                qgenocchi_twisted(1, &w, &half).unwrap(),
                Scalar::Exact(expect)
            );
        }
    }

    #[test]
    fn w_one_is_untwisted() {
        for n in 0..=8 {
            assert_eq!(
                qgenocchi_twisted(n, &int(1), &Ctx::Symbolic).unwrap(),
                qgenocchi(n, &Ctx::Symbolic).unwrap()
            );
        }
    }

    #[test]
    fn classical_limits() {
        for n in 0..=10u32 {
            let v = qgenocchi(n, &Ctx::Symbolic).unwrap();
            assert_eq!(
                v.eval_at(&int(1)).unwrap(),
                classical::genocchi(n as usize),
                "n={n}"
            );
        }
        for w in [frac(1, 2), int(2)] {
            for n in 0..=6u32 {
                let v = qgenocchi_twisted(n, &w, &Ctx::Symbolic).unwrap();
                assert_eq!(
                    v.eval_at(&int(1)).unwrap(),
                    classical::twisted_genocchi_classical(n as usize, &w).unwrap()
                );
            }
        }
        for k in 1..=3u32 {
            for n in 0..=4u32 {
                let v =
                    qgenocchi_hk(&QGenocchiSpec::new(n, k as i64 - 1, k), &Ctx::Symbolic).unwrap();
                let expect = classical::higher_genocchi((n + k) as usize, k).unwrap();
                assert_eq!(v.eval_at(&int(1)).unwrap(), expect, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn vanishing_prefix_and_first_term() {
        let q = Ctx::Exact(frac(2, 3));
        for k in 1..=4u32 {
            for j in 0..k {
                assert_eq!(
                    qgenocchi_hk_index(j, 0, k, &int(1), &q).unwrap(),
                    Scalar::Exact(int(0))
                );
            }
            for h in [-1i64, 0, 2] {
                let w = frac(1, 5);
                let spec = QGenocchiSpec::new(0, h, k).twisted(w.clone());
                let qv = frac(2, 3);
                let mut den = Rat::one();
                for l in 0..k as i64 {
                    den *= Rat::one() + &w * rat::pow_i(&qv, h - l).unwrap();
                }
                let fact = Rat::from_integer(rat::factorial(k));
                let expect = fact * num_traits::pow(Rat::one() + &qv, k as usize) / den;
                assert_eq!(qgenocchi_hk(&spec, &q).unwrap(), Scalar::Exact(expect));
            }
        }
    }

    #[test]
    fn relation_to_q_euler() {
        for k in 1..=3u32 {
            for h in [k as i64 - 1, k as i64] {
                for n in 0..=4u32 {
                    let g = qgenocchi_hk(&QGenocchiSpec::new(n, h, k), &Ctx::Symbolic).unwrap();
                    let e = qeuler_hk(&QEulerSpec::new(n, h, k, 0), &Ctx::Symbolic).unwrap();
                    let scale = crate::qrat::QRat::constant(Rat::from_integer(
                        classical::genocchi_scaling(n, k),
                    ));
                    assert_eq!(
                        g.into_symbolic().unwrap(),
                        e.into_symbolic().unwrap() * &scale
                    );
                }
            }
        }
    }

    #[test]
    fn series_examples() {
        let q = frac(1, 2);
        let s = qgenocchi_hk_series(&QGenocchiSpec::new(0, 0, 1), &q, &SeriesParams::cesaro(400))
            .unwrap();
        assert_eq!(s.value, frac(3, 4));
        let closed = qgenocchi_hk(&QGenocchiSpec::new(0, 0, 1), &Ctx::Exact(q.clone())).unwrap();
        assert_eq!(closed, Scalar::Exact(frac(3, 4)));
        let tw = QGenocchiSpec::new(1, 1, 2).twisted(frac(1, 2));
        let s = qgenocchi_hk_series(&tw, &q, &SeriesParams::direct(80)).unwrap();
        let c = qgenocchi_hk(&tw, &Ctx::Exact(q.clone()))
            .unwrap()
            .into_exact()
            .unwrap();
        assert!((s.value - c).abs() <= s.tail_bound);
        assert!(
            qgenocchi_hk_series(&QGenocchiSpec::new(1, 2, 2), &q, &SeriesParams::cesaro(10))
                .is_err()
        );
    }
}
