//! Higher-order and twisted q-Euler numbers and polynomials.
//!
//! The closed forms are finite sums over `j` with q-Pochhammer denominators
//! and work in either evaluation domain. The `h = k - 1` series forms are
//! infinite, rational-`q`-only, and regularized by Cesaro means when the
//! twist sits on the unit circle.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Ctx, QField, Scalar};
use crate::in_ctx;
use crate::padic::{cesaro_mean, classify_ratios, SeriesMode, SeriesParams, SeriesValue};
use crate::qcore::{inv_pochhammer_coeffs_exact, q_int_exact};
use crate::rat::{self, render_rat, Rat};

/// Parameters of `E_{m,q}^{(h,k)}(w, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QEulerSpec {
    pub m: u32,
    pub h: i64,
    pub k: u32,
    pub x: u32,
    pub w: Rat,
}

impl QEulerSpec {
    /// Untwisted (`w = 1`).
    pub fn new(m: u32, h: i64, k: u32, x: u32) -> Self {
        QEulerSpec {
            m,
            h,
            k,
            x,
            w: Rat::one(),
        }
    }

    pub fn twisted(mut self, w: Rat) -> Self {
        self.w = w;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Domain("order k must be at least 1".into()));
        }
        Ok(())
    }
}

pub(crate) fn sign(e: u64) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `1 / prod_{l=0}^{k-1} (1 + w q^(e - l))`, i.e. `1 / (-w q^e; q^-1)_k`.
pub(crate) fn inv_reversed_pochhammer<F: QField>(
    w: &F,
    e: i64,
    k: u32,
    q: &F,
    j: u64,
) -> Result<F> {
    let mut den = F::one();
    for l in 0..k as i64 {
        let factor = F::one() + &(w.clone() * &q.pow_i(e - l)?);
        if factor.is_zero() {
            return Err(Error::Domain(format!(
                "denominator factor 1 + w q^{} vanishes (j = {j}, l = {l})",
                e - l
            )));
        }
        den = den * &factor;
    }
    den.inv()
}

/// `[2]_q^k (1-q)^(-m) sum_{j=0}^{m} C(m,j) (-1)^j q^(x j) / (-w q^(j+h); q^-1)_k`
pub fn qeuler_hk_in<F: QField>(spec: &QEulerSpec, q: &F) -> Result<F> {
    spec.validate()?;
    let w = F::from_rat(spec.w.clone());
    let mut acc = F::zero();
    for j in 0..=spec.m as u64 {
        let c = F::from_rat(
            Rat::from_integer(rat::binomial(spec.m as i64, j as i64)) * rat::int(sign(j)),
        );
        let term = c
            * &q.pow_i(spec.x as i64 * j as i64)?
            * &inv_reversed_pochhammer(&w, j as i64 + spec.h, spec.k, q, j)?;
        acc = acc + &term;
    }
    let one_minus_q = F::one() - q;
    if one_minus_q.is_zero() && spec.m > 0 {
        return Err(Error::DivisionByZero("(1 - q)^(-m) at q = 1".into()));
    }
    let two_q = F::one() + q;
    Ok(acc * &two_q.pow_i(spec.k as i64)? * &one_minus_q.pow_i(-(spec.m as i64))?)
}

/// Closed form of the extended higher-order q-Euler polynomial
/// `E_{m,q}^{(h,k)}(w, x)` at integer `x`.
pub fn qeuler_hk(spec: &QEulerSpec, ctx: &Ctx) -> Result<Scalar> {
    ctx.require_generic()?;
    in_ctx!(ctx, |q| qeuler_hk_in(spec, q))
}

/// `[2]_q (1-q)^(-n) sum_j C(n,j) (-1)^j / (1 + q^(j+1) w)`
pub fn qeuler_twisted_in<F: QField>(n: u32, w: &Rat, q: &F) -> Result<F> {
    let wf = F::from_rat(w.clone());
    let mut acc = F::zero();
    for j in 0..=n as u64 {
        let den = F::one() + &(q.pow_i(j as i64 + 1)? * &wf);
        if den.is_zero() {
            return Err(Error::Domain(format!(
                "denominator 1 + q^{} w vanishes (j = {j})",
                j + 1
            )));
        }
        let c =
            F::from_rat(Rat::from_integer(rat::binomial(n as i64, j as i64)) * rat::int(sign(j)));
        acc = acc + &c.div(&den)?;
    }
    let one_minus_q = F::one() - q;
    if one_minus_q.is_zero() && n > 0 {
        return Err(Error::DivisionByZero("(1 - q)^(-n) at q = 1".into()));
    }
    Ok((F::one() + q) * &one_minus_q.pow_i(-(n as i64))? * &acc)
}

/// Twisted q-Euler number `E_{n,q}(w)`.
pub fn qeuler_twisted(n: u32, w: &Rat, ctx: &Ctx) -> Result<Scalar> {
    ctx.require_generic()?;
    in_ctx!(ctx, |q| qeuler_twisted_in(n, w, q))
}

fn require_unit_interval(q: &Rat) -> Result<()> {
    if !(q > &Rat::zero() && q < &Rat::one()) {
        return Err(Error::Domain(format!(
            "series form needs 0 < q < 1, got q = {}",
            render_rat(q)
        )));
    }
    Ok(())
}

/// `[2]_q^k sum_{n>=0} binom(n+k-1, n)_q (-w)^n [n+x]_q^p` for every power
/// `p = 0..=max_power`, summed per `sp` (Direct needs `|w| < 1`).
pub(crate) fn weighted_bracket_series(
    k: u32,
    x: u32,
    max_power: u32,
    w: &Rat,
    q: &Rat,
    sp: &SeriesParams,
) -> Result<Vec<SeriesValue>> {
    if k == 0 {
        return Err(Error::Domain("order k must be at least 1".into()));
    }
    require_unit_interval(q)?;
    classify_ratios(&[-w.clone()], sp.mode)?;
    let len = sp.truncation;
    if len == 0 {
        return Err(Error::Domain("truncation M must be at least 1".into()));
    }
    if len as u128 > sp.term_budget {
        return Err(Error::BudgetExceeded {
            needed: len as u128,
            budget: sp.term_budget,
        });
    }
    let weights = inv_pochhammer_coeffs_exact(k, len, q);
    let minus_w: Rat = -w.clone();
    let mut twist = Rat::one();
    // terms[p][n]
    let mut terms: Vec<Vec<Rat>> = vec![Vec::with_capacity(len); max_power as usize + 1];
    for (n, b) in weights.iter().enumerate() {
        let base = b * &twist;
        let bracket = q_int_exact(n as u64 + x as u64, q);
        let mut pw = Rat::one();
        for row in terms.iter_mut() {
            row.push(&base * &pw);
            pw *= &bracket;
        }
        twist *= &minus_w;
    }
    let scale = num_traits::pow(Rat::one() + q, k as usize);
    let bracket_bound = (Rat::one() - q).recip();
    let qq: Rat = (1..k as usize)
        .map(|i| Rat::one() - num_traits::pow(q.clone(), i))
        .product();
    terms
        .into_iter()
        .enumerate()
        .map(|(p, row)| {
            let (value, tail_bound) = match sp.mode {
                SeriesMode::Direct => {
                    let v: Rat = row.into_iter().sum();
                    let aw = w.abs();
                    let tail = num_traits::pow(bracket_bound.clone(), p) / &qq
                        * num_traits::pow(aw.clone(), len)
                        / (Rat::one() - aw);
                    (v, tail * &scale)
                }
                SeriesMode::Cesaro1 => (cesaro_mean(row).0, sp.cesaro_tolerance.clone()),
            };
            Ok(SeriesValue {
                value: value * &scale,
                tail_bound,
                truncation: len,
            })
        })
        .collect()
}

/// Series form of `E_{m,q}^{(k-1,k)}(x)`; the boundary alternating series
/// must be Cesaro-summed.
pub fn qeuler_hk_series(m: u32, k: u32, x: u32, q: &Rat, sp: &SeriesParams) -> Result<SeriesValue> {
    let mut out = weighted_bracket_series(k, x, m, &Rat::one(), q, sp)?;
    Ok(out.swap_remove(m as usize))
}

/// Series form of `E_{m,q}^{(k-1,k)}(w, x)`. `spec.h` must equal `k - 1`.
pub fn qeuler_twisted_hk_series(
    spec: &QEulerSpec,
    q: &Rat,
    sp: &SeriesParams,
) -> Result<SeriesValue> {
    spec.validate()?;
    if spec.h != spec.k as i64 - 1 {
        return Err(Error::Domain(format!(
            "series form needs h = k - 1, got h = {}, k = {}",
            spec.h, spec.k
        )));
    }
    let mut out = weighted_bracket_series(spec.k, spec.x, spec.m, &spec.w, q, sp)?;
    Ok(out.swap_remove(spec.m as usize))
}

/// Which generating function [`gf_eval`] evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfKind {
    /// `F_q^k(t, x)` (twisted when `w != 1`).
    Fqk,
    /// `h_q^k(t)`.
    Hqk,
    /// `h_{q,w}^k(t)`.
    Hqkw,
}

/// Both sides of a generating-function identity, as polynomials in `t`
/// truncated below `t^t_terms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfEval {
    /// The exponential-sum side, series-summed per [`SeriesParams`].
    pub lhs: Rat,
    /// The coefficient side, from the closed forms.
    pub rhs: Rat,
    /// Sum of the per-coefficient tail bounds, weighted by `|t|^n / n!`.
    pub tail_bound: Rat,
}

/// Evaluates a generating function both as an exponential sum and as its
/// coefficient series, at a rational `t`.
#[allow(clippy::too_many_arguments)]
pub fn gf_eval(
    kind: GfKind,
    k: u32,
    x: u32,
    w: &Rat,
    q: &Rat,
    t: &Rat,
    t_terms: u32,
    sp: &SeriesParams,
) -> Result<GfEval> {
    if t_terms == 0 {
        return Ok(GfEval {
            lhs: Rat::zero(),
            rhs: Rat::zero(),
            tail_bound: Rat::zero(),
        });
    }
    let w = match kind {
        GfKind::Hqk => Rat::one(),
        _ => w.clone(),
    };
    let ctx = Ctx::Exact(q.clone());
    let top = t_terms - 1;
    let mut lhs = Rat::zero();
    let mut rhs = Rat::zero();
    let mut tail = Rat::zero();
    let mut fact = Rat::one();
    match kind {
        GfKind::Fqk => {
            let sums = weighted_bracket_series(k, x, top, &w, q, sp)?;
            for (n, s) in sums.iter().enumerate() {
                if n > 0 {
                    fact *= rat::int(n as i64);
                }
                let tn = num_traits::pow(t.clone(), n) / &fact;
                let spec = QEulerSpec::new(n as u32, k as i64 - 1, k, x).twisted(w.clone());
                let coeff = qeuler_hk(&spec, &ctx)?.into_exact()?;
                lhs += &s.value * &tn;
                rhs += coeff * &tn;
                tail += &s.tail_bound * tn.abs();
            }
        }
        GfKind::Hqk | GfKind::Hqkw => {
            // t^k sum_m binom(m+k-1,m)_q (-w)^m e^([m]_q t)
            let k_pow = num_traits::pow(t.clone(), k as usize);
            let sums = if top >= k {
                weighted_bracket_series(k, 0, top - k, &w, q, sp)?
            } else {
                Vec::new()
            };
            for (j, s) in sums.iter().enumerate() {
                if j > 0 {
                    fact *= rat::int(j as i64);
                }
                let tj = num_traits::pow(t.clone(), j) / &fact * &k_pow;
                lhs += &s.value * &tj;
                tail += &s.tail_bound * tj.abs();
            }
            let mut nfact = Rat::one();
            for n in 0..=top {
                if n > 0 {
                    nfact *= rat::int(n as i64);
                }
                let coeff = crate::qgenocchi::qgenocchi_hk_index(n, k as i64 - 1, k, &w, &ctx)?
                    .into_exact()?;
                rhs += coeff * num_traits::pow(t.clone(), n as usize) / &nfact;
            }
        }
    }
    Ok(GfEval {
        lhs,
        rhs,
        tail_bound: tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical;
    use crate::poly::QPoly;
    use crate::qrat::QRat;
    use crate::rat::{frac, int};

    fn half() -> Ctx {
        Ctx::Exact(frac(1, 2))
    }

    #[test]
    fn zeroth_moment_is_single_term() {
        for k in 1..4u32 {
            for h in -1..4i64 {
                let spec = QEulerSpec::new(0, h, k, 1).twisted(frac(1, 3));
                let q = frac(2, 3);
                let mut den = Rat::one();
                for l in 0..k as i64 {
                    den *= Rat::one() + frac(1, 3) * rat::pow_i(&q, h - l).unwrap();
                }
                let expect = num_traits::pow(Rat::one() + &q, k as usize) / den;
                assert_eq!(
                    qeuler_hk(&spec, &Ctx::Exact(q)).unwrap(),
                    Scalar::Exact(expect)
                );
            }
        }
    }

    #[test]
    fn symbolic_first_moment() {
        let v = qeuler_hk(&QEulerSpec::new(1, 1, 1, 0), &Ctx::Symbolic).unwrap();
        let expect = QRat::new(QPoly::from_ints(&[0, -1]), QPoly::from_ints(&[1, 0, 1])).unwrap();
        assert_eq!(v, Scalar::Symbolic(expect));
    }

    #[test]
    fn classical_limit_examples() {
        for k in 1..=3u32 {
            for m in 0..=4u32 {
                for x in 0..=2u32 {
                    let expect = classical::higher_euler_poly(m as usize, k)
                        .unwrap()
                        .eval(&int(x as i64));
                    for h in [k as i64 - 1, k as i64, k as i64 + 1] {
                        let v = qeuler_hk(&QEulerSpec::new(m, h, k, x), &Ctx::Symbolic).unwrap();
                        assert_eq!(
                            v.eval_at(&int(1)).unwrap(),
                            expect,
                            "m={m} h={h} k={k} x={x}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn excluded_points_and_poles() {
        let spec = QEulerSpec::new(1, 1, 1, 0);
        assert!(qeuler_hk(&spec, &Ctx::Exact(int(1))).is_err());
        assert!(qeuler_hk(&spec, &Ctx::Exact(int(0))).is_err());
        // 1 + w q^(j+h) = 0 at w = -1, j + h = 0
        let pole = QEulerSpec::new(0, 0, 1, 0).twisted(int(-1));
        match qeuler_hk(&pole, &half()) {
            Err(Error::Domain(msg)) => assert!(msg.contains("j = 0, l = 0"), "{msg}"),
            other => panic!("expected a domain error, got {other:?}"),
        }
        assert!(qeuler_hk(&QEulerSpec::new(1, 1, 0, 0), &half()).is_err());
    }

    #[test]
    fn twisted_examples() {
        let q = frac(1, 2);
        for w in [frac(1, 2), int(4), frac(-1, 3)] {
            let expect = (Rat::one() + &q) / (Rat::one() + &q * &w);
            assert_eq!(
                qeuler_twisted(0, &w, &half()).unwrap(),
                Scalar::Exact(expect)
            );
        }
        assert_eq!(
            qeuler_twisted(0, &int(1), &half()).unwrap(),
            Scalar::Exact(int(1))
        );
        assert_eq!(
            qeuler_twisted(1, &frac(1, 2), &half()).unwrap(),
            Scalar::Exact(frac(-4, 15))
        );
        for n in 0..6 {
            let a = qeuler_twisted(n, &int(1), &Ctx::Symbolic).unwrap();
            let b = qeuler_hk(&QEulerSpec::new(n, 1, 1, 0), &Ctx::Symbolic).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn twisted_classical_limit() {
        for w in [frac(1, 2), frac(1, 3), int(2)] {
            for n in 0..=6u32 {
                let v = qeuler_twisted(n, &w, &Ctx::Symbolic).unwrap();
                let expect = classical::twisted_euler_classical(n as usize, &w).unwrap();
                assert_eq!(v.eval_at(&int(1)).unwrap(), expect);
            }
        }
    }

    #[test]
    fn boundary_series_examples() {
        let q = frac(1, 2);
        let s = qeuler_hk_series(0, 1, 0, &q, &SeriesParams::cesaro(400)).unwrap();
        assert_eq!(s.value, frac(3, 4));
        assert!(matches!(
            qeuler_hk_series(1, 1, 0, &q, &SeriesParams::direct(400)),
            Err(Error::Divergence(_))
        ));
        assert!(qeuler_hk_series(1, 1, 0, &int(2), &SeriesParams::cesaro(10)).is_err());
    }

    #[test]
    fn cesaro_error_shrinks_like_one_over_m() {
        // m = 1, k = 1, x = 0: the Cesaro error is about c / M
        let q = frac(1, 2);
        let closed = qeuler_hk(&QEulerSpec::new(1, 0, 1, 0), &half())
            .unwrap()
            .into_exact()
            .unwrap();
        assert_eq!(closed, frac(-1, 2));
        let e1 = (qeuler_hk_series(1, 1, 0, &q, &SeriesParams::cesaro(200))
            .unwrap()
            .value
            - &closed)
            .abs();
        let e2 = (qeuler_hk_series(1, 1, 0, &q, &SeriesParams::cesaro(400))
            .unwrap()
            .value
            - &closed)
            .abs();
        let e3 = (qeuler_hk_series(1, 1, 0, &q, &SeriesParams::cesaro(800))
            .unwrap()
            .value
            - &closed)
            .abs();
        assert!(e2 < e1 && e3 < e2);
        let ratio = &e2 / &e3;
        assert!(
            ratio > frac(19, 10) && ratio < frac(21, 10),
            "ratio {ratio}"
        );
        assert!(e3 < frac(1, 1000));
    }

    #[test]
    fn twisted_series_examples() {
        let q = frac(1, 2);
        // k = 1 puts h at 0, so the weight is q^(-x): this is not E_{1,q}(w) (which has h = 1)
        let spec = QEulerSpec::new(1, 0, 1, 0).twisted(frac(1, 2));
        let s = qeuler_twisted_hk_series(&spec, &q, &SeriesParams::direct(60)).unwrap();
        assert!((&s.value - frac(-2, 5)).abs() <= s.tail_bound);
        let closed = qeuler_hk(&spec, &half()).unwrap().into_exact().unwrap();
        assert_eq!(closed, frac(-2, 5));
        assert_eq!(
            qeuler_twisted(1, &frac(1, 2), &half()).unwrap(),
            Scalar::Exact(frac(-4, 15))
        );
        let spec = QEulerSpec::new(0, 1, 2, 0).twisted(frac(1, 2));
        let s = qeuler_twisted_hk_series(&spec, &q, &SeriesParams::direct(60)).unwrap();
        assert!((&s.value - frac(6, 5)).abs() <= s.tail_bound);
        let one = QEulerSpec::new(2, 0, 1, 1);
        assert_eq!(
            qeuler_twisted_hk_series(&one, &q, &SeriesParams::cesaro(50)).unwrap(),
            qeuler_hk_series(2, 1, 1, &q, &SeriesParams::cesaro(50)).unwrap()
        );
        assert!(matches!(
            qeuler_twisted_hk_series(
                &QEulerSpec::new(1, 0, 1, 0).twisted(int(2)),
                &q,
                &SeriesParams::cesaro(10)
            ),
            Err(Error::Divergence(_))
        ));
        assert!(qeuler_twisted_hk_series(
            &QEulerSpec::new(1, 1, 1, 0),
            &q,
            &SeriesParams::cesaro(10)
        )
        .is_err());
    }

    #[test]
    fn gf_at_zero_collapses() {
        let q = frac(1, 2);
        for k in 1..=2 {
            let g = gf_eval(
                GfKind::Fqk,
                k,
                1,
                &int(1),
                &q,
                &int(0),
                6,
                &SeriesParams::cesaro(40),
            )
            .unwrap();
            let e0 = qeuler_hk(&QEulerSpec::new(0, k as i64 - 1, k, 1), &half())
                .unwrap()
                .into_exact()
                .unwrap();
            assert_eq!(g.rhs, e0);
            if k == 1 {
                // even M: the Cesaro mean of 1, 0, 1, 0, ... is exactly 1/2
                assert_eq!(g.lhs, e0);
            }
        }
    }

    #[test]
    fn gf_small_t_agreement() {
        let q = frac(1, 2);
        let g = gf_eval(
            GfKind::Fqk,
            1,
            0,
            &int(1),
            &q,
            &frac(1, 4),
            8,
            &SeriesParams::cesaro(400),
        )
        .unwrap();
        assert!((&g.lhs - &g.rhs).abs() <= frac(1, 1000), "{g:?}");
    }
}
