//! Property grids for every module, runnable as named suites.
//!
//! Each check function takes its grid and tolerances explicitly so callers
//! can pin them; [`run_suite`] fills them in from a [`VerifyConfig`].

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::classical::{self, ExpSeries};
use crate::error::{Error, Result};
use crate::field::{Ctx, QField, Scalar};
use crate::padic::{self, IntegrandFamily, PadicParams, SeriesParams};
use crate::poly::{QPoly, XPoly};
use crate::qcore;
use crate::qeuler::{self, QEulerSpec};
use crate::qgenocchi::{self, QGenocchiSpec};
use crate::qrat::QRat;
use crate::rat::{self, frac, int, render_rat, valuation, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Qcore,
    Classical,
    Padic,
    Qeuler,
    Qgenocchi,
    Limits,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Qcore,
        Suite::Classical,
        Suite::Padic,
        Suite::Qeuler,
        Suite::Qgenocchi,
        Suite::Limits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Qcore => "qcore",
            Suite::Classical => "classical",
            Suite::Padic => "padic",
            Suite::Qeuler => "qeuler",
            Suite::Qgenocchi => "qgenocchi",
            Suite::Limits => "limits",
            Suite::All => "all",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Knobs shared by the suites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub p: u64,
    /// Highest level N for one- and two-variable p-adic checks.
    pub padic_level: u32,
    /// Highest level N for three-variable p-adic checks.
    pub padic_level_k3: u32,
    pub series_truncation: usize,
    pub cesaro_tolerance: Rat,
    pub term_budget: u128,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            p: 3,
            padic_level: 2,
            padic_level_k3: 2,
            series_truncation: 400,
            cesaro_tolerance: frac(1, 1000),
            term_budget: padic::DEFAULT_TERM_BUDGET,
        }
    }
}

impl VerifyConfig {
    /// Sets the level for every p-adic check (three-variable grids are capped at 2).
    pub fn with_padic_level(mut self, level: u32) -> Self {
        self.padic_level = level;
        self.padic_level_k3 = level.min(2);
        self
    }
}

/// Outcome of one property over its grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub suite: &'static str,
    pub name: String,
    pub grid_size: usize,
    pub passed: bool,
    /// Worst residual valuation, worst error bound, or similar.
    pub detail: String,
    /// First failing grid point, if any.
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub results: Vec<PropertyResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "passed": self.all_passed(),
            "results": serde_json::to_value(&self.results).expect("plain data"),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            write!(
                f,
                "[{}] {}::{} (grid {}) {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.suite,
                r.name,
                r.grid_size,
                r.detail
            )?;
            if let Some(point) = &r.failure {
                write!(f, " -- first failure: {point}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{} properties, {} failed", self.results.len(), failed)
    }
}

/// `|r| < 2^-e` in words, without leaving exact arithmetic.
pub fn describe_magnitude(r: &Rat) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let bits = r.numer().bits() as i64 - r.denom().bits() as i64 + 1;
    format!("< 2^{bits}")
}

/// Accumulates grid points for a single property.
struct Check {
    suite: &'static str,
    name: String,
    grid: usize,
    failure: Option<String>,
    worst_val: Option<Option<i64>>,
    worst_err: Option<Rat>,
    note: Option<String>,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>) -> Self {
        Check {
            suite,
            name: name.into(),
            grid: 0,
            failure: None,
            worst_val: None,
            worst_err: None,
            note: None,
        }
    }

    fn point(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.grid += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(label());
        }
    }

    /// Records a grid point whose computation may have failed.
    fn attempt(&mut self, outcome: Result<bool>, label: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.point(ok, label),
            Err(e) => {
                let l = label();
                self.point(false, || format!("{l}: {e}"));
            }
        }
    }

    fn valuation(&mut self, v: Option<i64>) {
        let key = |v: Option<i64>| v.unwrap_or(i64::MAX);
        self.worst_val = Some(match self.worst_val {
            Some(w) if key(w) <= key(v) => w,
            _ => v,
        });
    }

    fn error(&mut self, e: &Rat) {
        let e = e.abs();
        if self.worst_err.as_ref().is_none_or(|w| &e > w) {
            self.worst_err = Some(e);
        }
    }

    fn finish(self) -> PropertyResult {
        let mut detail = Vec::new();
        if let Some(v) = self.worst_val {
            detail.push(match v {
                Some(v) => format!("worst final valuation {v}"),
                None => "all residuals exactly zero".into(),
            });
        }
        if let Some(e) = &self.worst_err {
            detail.push(format!("worst |error| {}", describe_magnitude(e)));
        }
        if let Some(n) = self.note {
            detail.push(n);
        }
        if detail.is_empty() {
            detail.push("exact".into());
        }
        PropertyResult {
            suite: self.suite,
            name: self.name,
            grid_size: self.grid,
            passed: self.failure.is_none() && self.grid > 0,
            detail: detail.join("; "),
            failure: self.failure,
        }
    }
}

// ---------------------------------------------------------------------------
// qcore

pub fn check_binom_recursions(max_n: i64) -> PropertyResult {
    let mut c = Check::new("qcore", "gaussian binomial: both recursions and symmetry");
    for n in 0..=max_n {
        for k in 0..=n {
            let a = qcore::gauss_binom_poly(n, k);
            let ok = a == qcore::gauss_binom_poly_alt(n, k)
                && a == qcore::gauss_binom_poly(n, n - k)
                && a.coeffs()
                    .iter()
                    .all(|c| c.is_integer() && !c.is_negative());
            c.point(ok, || format!("n={n} k={k}"));
        }
    }
    c.finish()
}

pub fn check_binom_closed_forms(max_n: i64) -> PropertyResult {
    let mut c = Check::new(
        "qcore",
        "gaussian binomial: factorial quotient and compositions",
    );
    for n in 0..=max_n {
        for k in 0..=n {
            let a = qcore::gauss_binom_poly(n, k);
            let ok = a == qcore::gauss_binom_factorial_quotient(n, k)
                && a == qcore::gauss_binom_compositions(n as u32, k as u32);
            c.point(ok, || format!("n={n} k={k}"));
        }
    }
    c.finish()
}

pub fn check_q_binomial_theorem(max_n: u32) -> PropertyResult {
    let mut c = Check::new("qcore", "q-binomial theorem: product = signed gaussian sum");
    for n in 0..=max_n {
        let ok = qcore::pochhammer_b_expansion(n) == qcore::q_binomial_theorem_coeffs(n);
        c.point(ok, || format!("n={n}"));
    }
    c.finish()
}

/// `(b;q)_n * sum_{k<=depth} binom(n+k-1,k)_q b^k = 1 + O(b^(depth+1))`.
pub fn check_inverse_pochhammer(max_n: u32, depth: u32) -> PropertyResult {
    let mut c = Check::new(
        "qcore",
        "q-binomial theorem: reciprocal series inverts the product",
    );
    for n in 1..=max_n {
        let prod = qcore::pochhammer_b_expansion(n);
        let series: Vec<QPoly> = (0..=depth)
            .map(|k| qcore::inv_pochhammer_coeff_poly(n, k))
            .collect();
        let mut ok = true;
        for d in 0..=depth as usize {
            let coeff = (0..=d).fold(QPoly::zero(), |acc, i| {
                let a = prod.get(i).cloned().unwrap_or_else(QPoly::zero);
                &acc + &(&a * &series[d - i])
            });
            let expect = if d == 0 { QPoly::one() } else { QPoly::zero() };
            ok &= coeff == expect;
        }
        c.point(ok, || format!("n={n}"));
    }
    c.finish()
}

pub fn check_pochhammer_reversal(max: u32) -> PropertyResult {
    let mut c = Check::new("qcore", "(-q^(j+k-1); q^-1)_k = (-q^j; q)_k");
    let q = QRat::q();
    for j in 0..=max as i64 {
        for k in 0..=max {
            let outcome = (|| {
                let lhs = qcore::pochhammer_q_in(&-q.pow_i(j + k as i64 - 1)?, k, -1, &q)?;
                let rhs = qcore::pochhammer_q_in(&-q.pow_i(j)?, k, 1, &q)?;
                Ok(lhs == rhs)
            })();
            c.attempt(outcome, || format!("j={j} k={k}"));
        }
    }
    c.finish()
}

fn sample_points() -> Vec<Rat> {
    vec![frac(1, 2), frac(2, 3), int(4), int(-2)]
}

/// Specialization and direct evaluation agree wherever direct evaluation is
/// defined. Points where a factor vanishes are outside the grid; the reduced
/// symbolic form may be finite there when the singularity is removable.
fn agrees_at(specialized: Result<Rat>, exact: Result<Scalar>) -> bool {
    match (specialized, exact.and_then(Scalar::into_exact)) {
        (Ok(a), Ok(b)) => a == b,
        (_, Err(Error::DivisionByZero(_) | Error::Domain(_))) => true,
        _ => false,
    }
}

/// Symbolic results specialized at `q0` equal exact results at `q0`.
pub fn check_evaluation_homomorphism() -> PropertyResult {
    let mut c = Check::new("qcore", "symbolic evaluated at q0 = exact at q0");
    type Op = Box<dyn Fn(&Ctx) -> Result<Scalar>>;
    let mut ops: Vec<(String, Op)> = Vec::new();
    for n in 0..8u32 {
        ops.push((
            format!("q_int({n})"),
            Box::new(move |ctx| qcore::q_int(n, ctx)),
        ));
        ops.push((
            format!("q_bracket_neg({n})"),
            Box::new(move |ctx| qcore::q_bracket_neg(n, ctx)),
        ));
        ops.push((
            format!("q_factorial({n})"),
            Box::new(move |ctx| qcore::q_factorial(n, ctx)),
        ));
        for k in 0..=n as i64 {
            ops.push((
                format!("gauss_binom({n},{k})"),
                Box::new(move |ctx| qcore::gauss_binom(n as i64, k, ctx)),
            ));
        }
        if n >= 1 {
            ops.push((
                format!("inv_pochhammer_coeff({n},3)"),
                Box::new(move |ctx| qcore::inv_pochhammer_coeff(n, 3, ctx)),
            ));
        }
        for e in [-1i64, 1] {
            ops.push((
                format!("pochhammer_q(1/3,{n},{e})"),
                Box::new(move |ctx| qcore::pochhammer_q(&Scalar::Exact(frac(1, 3)), n, e, ctx)),
            ));
        }
    }
    for (label, op) in &ops {
        let sym = op(&Ctx::Symbolic);
        for q0 in sample_points() {
            let outcome = (|| {
                let specialized = sym.clone()?.eval_at(&q0);
                Ok(agrees_at(specialized, op(&Ctx::Exact(q0.clone()))))
            })();
            c.attempt(outcome, || format!("{label} at q={}", render_rat(&q0)));
        }
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// classical

pub fn check_genocchi_bernoulli(max_n: usize) -> PropertyResult {
    let mut c = Check::new("classical", "G_n = 2(1-2^n) B_n for even n");
    for n in (0..=max_n).step_by(2) {
        let two_n = Rat::from_integer(num_bigint::BigInt::from(2u8).pow(n as u32));
        let ok = classical::genocchi(n) == int(2) * (Rat::one() - two_n) * classical::bernoulli(n);
        c.point(ok, || format!("n={n}"));
    }
    c.finish()
}

pub fn check_genocchi_euler_index(max_n: usize) -> PropertyResult {
    let mut c = Check::new("classical", "G_n = n E_(n-1)(0)");
    for n in 1..=max_n {
        let ok = classical::genocchi(n) == int(n as i64) * classical::euler_number(n - 1);
        c.point(ok, || format!("n={n}"));
    }
    c.finish()
}

pub fn check_complementarity(max_n: usize) -> PropertyResult {
    let mut c = Check::new("classical", "E_n(x+1) + E_n(x) = 2 x^n");
    let x_plus_one = XPoly::from_ints(&[1, 1]);
    for n in 0..=max_n {
        let e = classical::euler_poly(n);
        let ok = &e.compose(&x_plus_one) + &e == XPoly::monomial(int(2), n);
        c.point(ok, || format!("n={n}"));
    }
    c.finish()
}

pub fn check_odd_genocchi_vanish(max_n: usize) -> PropertyResult {
    let mut c = Check::new("classical", "G_1 = 1 and odd G_n vanish from n = 3");
    c.point(classical::genocchi(1).is_one(), || "n=1".into());
    for n in (3..=max_n).step_by(2) {
        c.point(classical::genocchi(n).is_zero(), || format!("n={n}"));
    }
    c.finish()
}

/// `G^(r)_(n+r) = (n+r)_r E_n^(r)(0)`, with the anchor `G^(2)_4 = 6`.
pub fn check_higher_order_relation(max_n: usize, max_r: u32) -> PropertyResult {
    let mut c = Check::new("classical", "G^(r)_(n+r) = (n+r)_r E^(r)_n(0)");
    for r in 1..=max_r {
        for n in 0..=max_n {
            let outcome = (|| {
                let lhs = classical::higher_genocchi(n + r as usize, r)?;
                let e = classical::higher_euler_poly(n, r)?.eval(&Rat::zero());
                let rhs = classical::falling_factorial_rat((n + r as usize) as i64, r) * e;
                Ok(lhs == rhs)
            })();
            c.attempt(outcome, || format!("n={n} r={r}"));
        }
        for j in 0..r as usize {
            let outcome = classical::higher_genocchi(j, r).map(|v| v.is_zero());
            c.attempt(outcome, || format!("vanishing prefix j={j} r={r}"));
        }
    }
    c.attempt(
        classical::higher_genocchi(4, 2).map(|v| v == int(6)),
        || "anchor G^(2)_4 = 6".into(),
    );
    c.finish()
}

pub fn check_order_one(max_n: usize) -> PropertyResult {
    let mut c = Check::new("classical", "order 1 reduces to E_n(x) and G_n");
    for n in 0..=max_n {
        let outcome = (|| {
            Ok(
                classical::higher_euler_poly(n, 1)? == classical::euler_poly(n)
                    && classical::higher_genocchi(n, 1)? == classical::genocchi(n),
            )
        })();
        c.attempt(outcome, || format!("n={n}"));
    }
    c.finish()
}

pub fn check_frobenius(max_n: usize) -> PropertyResult {
    let mut c = Check::new("classical", "H_n(u, 0) = H_n(u); H_n(-1) = E_n");
    for u in [int(2), int(-2), frac(1, 3)] {
        for n in 0..=max_n {
            let outcome = (|| {
                Ok(classical::frobenius_euler_poly(n, &u)?.eval(&Rat::zero())
                    == classical::frobenius_euler(n, &u)?)
            })();
            c.attempt(outcome, || format!("n={n} u={}", render_rat(&u)));
        }
    }
    for n in 0..=max_n {
        let outcome =
            classical::frobenius_euler(n, &int(-1)).map(|h| h == classical::euler_number(n));
        c.attempt(outcome, || format!("u=-1 n={n}"));
    }
    c.finish()
}

/// Coefficients of `2 / (w e^t + 1)` straight from the generating function.
pub fn twisted_euler_from_gf(n: usize, w: &Rat) -> Result<Rat> {
    let den = ExpSeries::exp(n, &Rat::one())
        .scale(w)
        .add(&ExpSeries::constant(n, Rat::one()));
    Ok(den.recip()?.scale(&int(2)).coeff(n))
}

/// `E_n(w) = 2/(w+1) H_n(-1/w)` against the generating function, plus the
/// series `2 sum (-w)^x x^n` within its tail bound for `|w| < 1`.
pub fn check_twisted_euler_frobenius(max_n: usize, series_truncation: usize) -> PropertyResult {
    let mut c = Check::new("classical", "E_n(w) = 2/(w+1) H_n(-1/w)");
    for w in [frac(1, 2), frac(1, 3), int(2)] {
        for n in 0..=max_n {
            let outcome = (|| {
                let via_frobenius = classical::twisted_euler_classical(n, &w)?;
                let mut ok = via_frobenius == twisted_euler_from_gf(n, &w)?;
                if w.abs() < Rat::one() {
                    let f = IntegrandFamily::ClassicalMonomial {
                        n: n as u32,
                        w: w.clone(),
                        shift: 0,
                    };
                    let s = padic::real_series(
                        &f,
                        &Rat::one(),
                        &SeriesParams::direct(series_truncation),
                    )?;
                    let err = &s.value - &via_frobenius;
                    c.error(&err);
                    ok &= err.abs() <= s.tail_bound;
                }
                Ok(ok)
            })();
            c.attempt(outcome, || format!("n={n} w={}", render_rat(&w)));
        }
    }
    c.attempt(
        classical::twisted_euler_classical(1, &frac(1, 2)).map(|v| v == frac(-4, 9)),
        || "anchor E_1(1/2) = -4/9".into(),
    );
    c.finish()
}

// ---------------------------------------------------------------------------
// padic

pub fn check_normalization(p: u64, max_level: u32) -> PropertyResult {
    let mut c = Check::new("padic", "constant integrand has mass 1 at every level");
    for q in [int(4), int(1), frac(1, 2), frac(-2, 5)] {
        for level in 1..=max_level {
            let outcome = (|| {
                let params = PadicParams::new(p, level)?;
                Ok(padic::fermionic_sum(&IntegrandFamily::one(), &q, &params)?.is_one())
            })();
            c.attempt(outcome, || format!("q={} N={level}", render_rat(&q)));
        }
    }
    c.finish()
}

pub fn check_distribution(p: u64, max_level: u32) -> PropertyResult {
    let mut c = Check::new("padic", "measure refines additively");
    for q in [int(4), frac(1, 2)] {
        for level in 2..=max_level {
            let outcome = (|| {
                let coarse = PadicParams::new(p, level - 1)?;
                let fine = PadicParams::new(p, level)?;
                for a in 0..coarse.modulus() {
                    let mut refined = Rat::zero();
                    for i in 0..p {
                        refined += padic::measure_value(a + i * coarse.modulus(), &fine, &q)?;
                    }
                    if refined != padic::measure_value(a, &coarse, &q)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            })();
            c.attempt(outcome, || format!("q={} N={level}", render_rat(&q)));
        }
    }
    c.finish()
}

/// Residual valuations of the shift identity grow with the level.
pub fn check_shift_identity(p: u64, q: &Rat, shifts: &[u32], max_level: u32) -> PropertyResult {
    let mut c = Check::new("padic", "shift identity residual valuation grows");
    let families = [
        IntegrandFamily::classical(1),
        IntegrandFamily::classical(2),
        IntegrandFamily::ClassicalMonomial {
            n: 2,
            w: int(4),
            shift: 1,
        },
        IntegrandFamily::q_bracket(1, 1, 1, int(1), 0),
        IntegrandFamily::q_bracket(2, 1, 2, int(4), 1),
    ];
    for f in &families {
        for &n_shift in shifts {
            let outcome = (|| {
                let mut vals = Vec::new();
                for level in 1..=max_level {
                    let r = padic::shift_identity_residual(
                        f,
                        n_shift,
                        q,
                        &PadicParams::new(p, level)?,
                    )?;
                    vals.push(valuation(&r, p));
                }
                let key = |v: &Option<i64>| v.unwrap_or(i64::MAX);
                let monotone = vals.windows(2).all(|w| key(&w[0]) <= key(&w[1]));
                let grows = key(vals.last().expect("levels")) > key(&vals[0]);
                if let Some(last) = vals.last() {
                    c.valuation(*last);
                }
                Ok(monotone && (grows || vals[0].is_none()))
            })();
            c.attempt(outcome, || format!("{f:?} shift={n_shift}"));
        }
    }
    let outcome = (|| {
        let mut ok = true;
        for level in 1..=max_level {
            for &n_shift in shifts {
                let r = padic::shift_identity_residual(
                    &IntegrandFamily::one(),
                    n_shift,
                    &Rat::one(),
                    &PadicParams::new(p, level)?,
                )?;
                ok &= r.is_zero();
            }
        }
        Ok(ok)
    })();
    c.attempt(outcome, || {
        "constant integrand at q=1 is exactly zero".into()
    });
    c.finish()
}

/// The Direct tail bound shrinks as M grows and bounds the true error.
pub fn check_series_tail_shrinks() -> PropertyResult {
    let mut c = Check::new("padic", "direct tail bound shrinks with M");
    let q = frac(1, 2);
    for (m, k, h) in [(1u32, 1u32, 1i64), (2, 2, 2), (3, 1, 2)] {
        let f = IntegrandFamily::q_bracket(m, k, h, int(1), 0);
        let outcome = (|| {
            let closed = qeuler::qeuler_hk(&QEulerSpec::new(m, h, k, 0), &Ctx::Exact(q.clone()))?
                .into_exact()?;
            let mut last: Option<Rat> = None;
            let mut ok = true;
            for big_m in [10, 20, 40] {
                let s = padic::real_series(&f, &q, &SeriesParams::direct(big_m))?;
                ok &= (&s.value - &closed).abs() <= s.tail_bound;
                if let Some(prev) = &last {
                    ok &= s.tail_bound < *prev;
                }
                last = Some(s.tail_bound);
            }
            Ok(ok)
        })();
        c.attempt(outcome, || format!("m={m} k={k} h={h}"));
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// p-adic oracle for the closed forms

/// Minimum final residual valuation demanded by the closed-form oracles.
pub const ORACLE_MIN_FINAL_VALUATION: i64 = 2;

/// Shared driver: level-N sums of each family against its target must have
/// nondecreasing residual valuations that end at least at
/// [`ORACLE_MIN_FINAL_VALUATION`].
fn padic_oracle<I>(c: &mut Check, p: u64, q: &Rat, budget: u128, grid: I)
where
    I: IntoIterator<Item = (String, IntegrandFamily, Result<Rat>, Vec<u32>)>,
{
    let key = |v: &Option<i64>| v.unwrap_or(i64::MAX);
    for (label, f, target, levels) in grid {
        let mut seen = None;
        let outcome = (|| {
            let target = target?;
            let params = PadicParams::new(p, 1)?.with_budget(budget);
            let report = padic::padic_limit_check(&f, &target, q, &params, &levels)?;
            let last = *report.valuations.last().expect("levels");
            c.valuation(last);
            let monotone = report
                .valuations
                .windows(2)
                .all(|w| key(&w[0]) <= key(&w[1]));
            seen = Some(report.valuations);
            Ok(monotone && key(&last) >= ORACLE_MIN_FINAL_VALUATION)
        })();
        c.attempt(outcome, || match seen {
            Some(vals) => format!("{label} valuations {}", render_valuations(&vals)),
            None => label,
        });
    }
}

fn render_valuations(vals: &[Option<i64>]) -> String {
    let parts: Vec<String> = vals
        .iter()
        .map(|v| v.map_or_else(|| "inf".to_string(), |v| v.to_string()))
        .collect();
    format!("({})", parts.join(","))
}

/// Closed form `E_{m,q}^{(h,k)}(w,x)` against level-N fermionic sums.
#[allow(clippy::too_many_arguments)]
pub fn check_qeuler_padic(
    p: u64,
    q: &Rat,
    twists: &[Rat],
    max_m: u32,
    max_k: u32,
    max_x: u32,
    levels: &[u32],
    budget: u128,
) -> PropertyResult {
    let mut c = Check::new(
        "qeuler",
        format!(
            "p-adic oracle for E^(h,k) (k <= {max_k}, N <= {})",
            levels.iter().max().unwrap_or(&0)
        ),
    );
    let ctx = Ctx::Exact(q.clone());
    let mut grid = Vec::new();
    for w in twists {
        for k in 1..=max_k {
            for h in [k as i64 - 1, k as i64, k as i64 + 1] {
                for m in 0..=max_m {
                    for x in 0..=max_x {
                        let spec = QEulerSpec::new(m, h, k, x).twisted(w.clone());
                        let target = qeuler::qeuler_hk(&spec, &ctx).and_then(Scalar::into_exact);
                        grid.push((
                            format!("m={m} h={h} k={k} x={x} w={}", render_rat(w)),
                            IntegrandFamily::q_bracket(m, k, h, w.clone(), x),
                            target,
                            levels.to_vec(),
                        ));
                    }
                }
            }
        }
    }
    padic_oracle(&mut c, p, q, budget, grid);
    c.finish()
}

/// `G_{n+k,q,w}^{(h,k)} / (k! C(n+k,k))` against level-N fermionic sums.
#[allow(clippy::too_many_arguments)]
pub fn check_qgenocchi_padic(
    p: u64,
    q: &Rat,
    twists: &[Rat],
    max_n: u32,
    max_k: u32,
    levels: &[u32],
    budget: u128,
) -> PropertyResult {
    let mut c = Check::new(
        "qgenocchi",
        format!(
            "p-adic oracle for G^(h,k) (k <= {max_k}, N <= {})",
            levels.iter().max().unwrap_or(&0)
        ),
    );
    let ctx = Ctx::Exact(q.clone());
    let mut grid = Vec::new();
    for w in twists {
        for k in 1..=max_k {
            for h in [k as i64 - 1, k as i64, k as i64 + 1] {
                for n in 0..=max_n {
                    let spec = QGenocchiSpec::new(n, h, k).twisted(w.clone());
                    let scaling = Rat::from_integer(spec.scaling());
                    let target = qgenocchi::qgenocchi_hk(&spec, &ctx)
                        .and_then(Scalar::into_exact)
                        .map(|g| g / &scaling);
                    grid.push((
                        format!("n={n} h={h} k={k} w={}", render_rat(w)),
                        IntegrandFamily::q_bracket(n, k, h, w.clone(), 0),
                        target,
                        levels.to_vec(),
                    ));
                }
            }
        }
    }
    padic_oracle(&mut c, p, q, budget, grid);
    c.finish()
}

// ---------------------------------------------------------------------------
// real series

/// Absolutely convergent regime (`h >= k`): truncated k-fold series vs closed form.
pub fn check_real_series_absolute(
    q: &Rat,
    twists: &[Rat],
    max_m: u32,
    max_k: u32,
    truncation: usize,
    max_bound: &Rat,
) -> PropertyResult {
    let mut c = Check::new("qeuler", "real series (h >= k) within exact tail bound");
    let ctx = Ctx::Exact(q.clone());
    for w in twists {
        for k in 1..=max_k {
            for h in [k as i64, k as i64 + 1] {
                for m in 0..=max_m {
                    for x in 0..=2u32 {
                        let outcome = (|| {
                            let spec = QEulerSpec::new(m, h, k, x).twisted(w.clone());
                            let closed = qeuler::qeuler_hk(&spec, &ctx)?.into_exact()?;
                            let f = IntegrandFamily::q_bracket(m, k, h, w.clone(), x);
                            let s = padic::real_series(&f, q, &SeriesParams::direct(truncation))?;
                            let err = &s.value - &closed;
                            c.error(&err);
                            Ok(err.abs() <= s.tail_bound && &s.tail_bound <= max_bound)
                        })();
                        c.attempt(outcome, || {
                            format!("m={m} h={h} k={k} x={x} w={}", render_rat(w))
                        });
                    }
                }
            }
        }
    }
    c.finish()
}

/// Same regime for the Genocchi numbers, through the `k! C(n+k,k)` scaling.
pub fn check_real_series_genocchi(
    q: &Rat,
    twists: &[Rat],
    max_n: u32,
    max_k: u32,
    truncation: usize,
    max_bound: &Rat,
) -> PropertyResult {
    let mut c = Check::new("qgenocchi", "real series (h >= k) within exact tail bound");
    let ctx = Ctx::Exact(q.clone());
    for w in twists {
        for k in 1..=max_k {
            for h in [k as i64, k as i64 + 1] {
                for n in 0..=max_n {
                    let outcome = (|| {
                        let spec = QGenocchiSpec::new(n, h, k).twisted(w.clone());
                        let scaling = Rat::from_integer(spec.scaling());
                        let closed = qgenocchi::qgenocchi_hk(&spec, &ctx)?.into_exact()? / &scaling;
                        let f = IntegrandFamily::q_bracket(n, k, h, w.clone(), 0);
                        let s = padic::real_series(&f, q, &SeriesParams::direct(truncation))?;
                        let err = &s.value - &closed;
                        c.error(&err);
                        Ok(err.abs() <= s.tail_bound && &s.tail_bound <= max_bound)
                    })();
                    c.attempt(outcome, || format!("n={n} h={h} k={k} w={}", render_rat(w)));
                }
            }
        }
    }
    c.finish()
}

/// `G_{n+1,q} / (n+1)` is the moment `I_{-q}([x]_q^n)`.
pub fn check_genocchi_index_shift(q: &Rat, max_n: u32, truncation: usize) -> PropertyResult {
    let mut c = Check::new("qgenocchi", "G_(n+1,q)/(n+1) = I_(-q)([x]_q^n)");
    for n in 0..=max_n {
        let outcome = (|| {
            let g = qgenocchi::qgenocchi(n + 1, &Ctx::Exact(q.clone()))?.into_exact()?
                / int(n as i64 + 1);
            let f = IntegrandFamily::q_bracket(n, 1, 1, int(1), 0);
            let s = padic::real_series(&f, q, &SeriesParams::direct(truncation))?;
            let err = &s.value - &g;
            c.error(&err);
            Ok(err.abs() <= s.tail_bound)
        })();
        c.attempt(outcome, || format!("n={n}"));
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// boundary series

/// Which `h = k - 1` series form to Cesaro-sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    /// `E^(k-1,k)_(m,q)(x)`.
    Euler,
    /// `E^(k-1,k)_(m,q)(w,x)`.
    TwistedEuler,
    /// `G^(k-1,k)_(n+k,q,w)`.
    Genocchi,
}

/// The `h = k - 1` series forms, Cesaro-summed, against their closed forms.
/// Grid: `m <= max_m`, `1 <= k <= max_k`, `x <= max_x` (Euler forms only),
/// and every twist (twisted forms only).
#[allow(clippy::too_many_arguments)]
pub fn check_boundary_series(
    which: Boundary,
    q: &Rat,
    twists: &[Rat],
    max_m: u32,
    max_k: u32,
    max_x: u32,
    truncation: usize,
    tolerance: &Rat,
) -> PropertyResult {
    let ctx = Ctx::Exact(q.clone());
    let sp = SeriesParams::cesaro(truncation).with_tolerance(tolerance.clone());
    let (suite, what) = match which {
        Boundary::Euler => ("qeuler", "E^(k-1,k)(x)"),
        Boundary::TwistedEuler => ("qeuler", "E^(k-1,k)(w,x)"),
        Boundary::Genocchi => ("qgenocchi", "G^(k-1,k)"),
    };
    let mut c = Check::new(
        suite,
        format!("Cesaro-1 series of {what}, M = {truncation}"),
    );
    let xs = if which == Boundary::Genocchi {
        0..=0
    } else {
        0..=max_x
    };
    let ws: Vec<Rat> = if which == Boundary::Euler {
        vec![Rat::one()]
    } else {
        twists.to_vec()
    };
    for k in 1..=max_k {
        let h = k as i64 - 1;
        for m in 0..=max_m {
            for x in xs.clone() {
                for w in &ws {
                    let outcome = (|| {
                        let (series, closed) = match which {
                            Boundary::Euler => (
                                qeuler::qeuler_hk_series(m, k, x, q, &sp)?,
                                qeuler::qeuler_hk(&QEulerSpec::new(m, h, k, x), &ctx)?,
                            ),
                            Boundary::TwistedEuler => {
                                let spec = QEulerSpec::new(m, h, k, x).twisted(w.clone());
                                (
                                    qeuler::qeuler_twisted_hk_series(&spec, q, &sp)?,
                                    qeuler::qeuler_hk(&spec, &ctx)?,
                                )
                            }
                            Boundary::Genocchi => {
                                let spec = QGenocchiSpec::new(m, h, k).twisted(w.clone());
                                (
                                    qgenocchi::qgenocchi_hk_series(&spec, q, &sp)?,
                                    qgenocchi::qgenocchi_hk(&spec, &ctx)?,
                                )
                            }
                        };
                        let err = series.value - closed.into_exact()?;
                        c.error(&err);
                        Ok(err.abs() <= *tolerance)
                    })();
                    c.attempt(outcome, || match which {
                        Boundary::Euler => format!("m={m} k={k} x={x}"),
                        Boundary::TwistedEuler => format!("m={m} k={k} x={x} w={}", render_rat(w)),
                        Boundary::Genocchi => format!("n={m} k={k} w={}", render_rat(w)),
                    });
                }
            }
        }
    }
    c.finish()
}

// ---------------------------------------------------------------------------
// limits and reductions

pub fn check_qeuler_classical_limit(max_m: u32, max_k: u32, max_x: u32) -> PropertyResult {
    let mut c = Check::new("limits", "E^(h,k)_(m,q)(x) -> E^(k)_m(x) as q -> 1");
    for k in 1..=max_k {
        for h in [k as i64 - 1, k as i64, k as i64 + 1] {
            for m in 0..=max_m {
                for x in 0..=max_x {
                    let outcome = (|| {
                        let v = qeuler::qeuler_hk(&QEulerSpec::new(m, h, k, x), &Ctx::Symbolic)?;
                        let expect =
                            classical::higher_euler_poly(m as usize, k)?.eval(&int(x as i64));
                        Ok(v.eval_at(&Rat::one())? == expect)
                    })();
                    c.attempt(outcome, || format!("m={m} h={h} k={k} x={x}"));
                }
            }
        }
    }
    c.finish()
}

pub fn check_qgenocchi_classical_limit(max_n: u32, max_k: u32, max_single: u32) -> PropertyResult {
    let mut c = Check::new(
        "limits",
        "G_(n,q) -> G_n and G^(k-1,k)_(n+k,q) -> G^(k)_(n+k)",
    );
    for n in 0..=max_single {
        let outcome = (|| {
            let v = qgenocchi::qgenocchi(n, &Ctx::Symbolic)?;
            Ok(v.eval_at(&Rat::one())? == classical::genocchi(n as usize))
        })();
        c.attempt(outcome, || format!("G_(n,q) n={n}"));
    }
    for k in 1..=max_k {
        for n in 0..=max_n {
            let outcome = (|| {
                let v = qgenocchi::qgenocchi_hk(
                    &QGenocchiSpec::new(n, k as i64 - 1, k),
                    &Ctx::Symbolic,
                )?;
                Ok(v.eval_at(&Rat::one())? == classical::higher_genocchi((n + k) as usize, k)?)
            })();
            c.attempt(outcome, || format!("G^(k-1,k) n={n} k={k}"));
        }
    }
    c.finish()
}

pub fn check_twisted_classical_limit(max_n: u32) -> PropertyResult {
    let mut c = Check::new(
        "limits",
        "E_(n,q)(w) -> E_n(w) and G_(n,q,w) -> G_(n,w) as q -> 1",
    );
    for w in [frac(1, 2), frac(1, 3), int(2)] {
        for n in 0..=max_n {
            let outcome = (|| {
                let e = qeuler::qeuler_twisted(n, &w, &Ctx::Symbolic)?.eval_at(&Rat::one())?;
                let g = qgenocchi::qgenocchi_twisted(n, &w, &Ctx::Symbolic)?.eval_at(&Rat::one())?;
                Ok(e == classical::twisted_euler_classical(n as usize, &w)?
                    && g == classical::twisted_genocchi_classical(n as usize, &w)?)
            })();
            c.attempt(outcome, || format!("n={n} w={}", render_rat(&w)));
        }
    }
    c.finish()
}

/// Setting `w = 1` in every twisted family gives its untwisted counterpart.
pub fn check_twist_reductions(max_n: u32, max_k: u32) -> PropertyResult {
    let mut c = Check::new("limits", "w = 1 collapses twisted families");
    let ctxs = [Ctx::Symbolic, Ctx::Exact(frac(1, 2)), Ctx::Exact(int(4))];
    for ctx in &ctxs {
        for n in 0..=max_n {
            let outcome = (|| {
                let a = qeuler::qeuler_twisted(n, &Rat::one(), ctx)?;
                let b = qeuler::qeuler_hk(&QEulerSpec::new(n, 1, 1, 0), ctx)?;
                let g = qgenocchi::qgenocchi_twisted(n, &Rat::one(), ctx)?;
                let g0 = qgenocchi::qgenocchi(n, ctx)?;
                Ok(a == b && g == g0)
            })();
            c.attempt(outcome, || {
                format!("E_(n,q)(1), G_(n,q,1) n={n} ctx={ctx:?}")
            });
            for k in 1..=max_k {
                for h in [k as i64 - 1, k as i64] {
                    let outcome = (|| {
                        let spec = QEulerSpec::new(n, h, k, 1);
                        let a = qeuler::qeuler_hk(&spec.clone().twisted(Rat::one()), ctx)?;
                        let gspec = QGenocchiSpec::new(n, h, k);
                        let g = qgenocchi::qgenocchi_hk(&gspec.clone().twisted(Rat::one()), ctx)?;
                        Ok(a == qeuler::qeuler_hk(&spec, ctx)?
                            && g == qgenocchi::qgenocchi_hk(&gspec, ctx)?)
                    })();
                    c.attempt(outcome, || format!("hk n={n} h={h} k={k} ctx={ctx:?}"));
                }
            }
        }
    }
    let q = frac(1, 2);
    for (m, k, x) in [(1u32, 1u32, 0u32), (2, 2, 1)] {
        let outcome = (|| {
            let sp = SeriesParams::cesaro(40);
            let a =
                qeuler::qeuler_twisted_hk_series(&QEulerSpec::new(m, k as i64 - 1, k, x), &q, &sp)?;
            Ok(a == qeuler::qeuler_hk_series(m, k, x, &q, &sp)?)
        })();
        c.attempt(outcome, || format!("series m={m} k={k} x={x}"));
    }
    c.finish()
}

/// `k! C(n+k,k) = (n+k)_k`, and both scale `E^(k)_n(0)` to `G^(k)_(n+k)`.
pub fn check_genocchi_scaling(max_n: u32, max_k: u32) -> PropertyResult {
    let mut c = Check::new(
        "qgenocchi",
        "k! C(n+k,k) = (n+k)_k and scales E^(k)_n(0) to G^(k)_(n+k)",
    );
    for k in 1..=max_k {
        for n in 0..=max_n {
            let outcome = (|| {
                let a = classical::genocchi_scaling(n, k);
                let b = rat::falling_factorial((n + k) as i64, k);
                let e = classical::higher_euler_poly(n as usize, k)?.eval(&Rat::zero());
                let g = classical::higher_genocchi((n + k) as usize, k)?;
                Ok(a == b && Rat::from_integer(a) * e == g)
            })();
            c.attempt(outcome, || format!("n={n} k={k}"));
        }
    }
    c.finish()
}

pub fn check_first_genocchi() -> PropertyResult {
    let mut c = Check::new("qgenocchi", "G_(1,q) = 1");
    for q in [frac(1, 2), frac(1, 3), int(4)] {
        let outcome =
            qgenocchi::qgenocchi(1, &Ctx::Exact(q.clone())).map(|v| v == Scalar::Exact(int(1)));
        c.attempt(outcome, || format!("q={}", render_rat(&q)));
    }
    let outcome =
        qgenocchi::qgenocchi(1, &Ctx::Symbolic).map(|v| v == Scalar::Symbolic(QRat::one()));
    c.attempt(outcome, || "symbolic".into());
    c.finish()
}

/// Symbolic closed forms specialized at `q0` equal exact evaluation at `q0`.
pub fn check_closed_form_homomorphism(max_m: u32, max_k: u32) -> PropertyResult {
    let mut c = Check::new("qeuler", "closed forms: symbolic at q0 = exact at q0");
    for k in 1..=max_k {
        for h in [k as i64 - 1, k as i64 + 1] {
            for m in 0..=max_m {
                let spec = QEulerSpec::new(m, h, k, 1).twisted(frac(1, 2));
                let gspec = QGenocchiSpec::new(m, h, k).twisted(frac(1, 2));
                let sym = qeuler::qeuler_hk(&spec, &Ctx::Symbolic);
                let gsym = qgenocchi::qgenocchi_hk(&gspec, &Ctx::Symbolic);
                for q0 in sample_points() {
                    let outcome = (|| {
                        let ctx = Ctx::Exact(q0.clone());
                        Ok(
                            agrees_at(sym.clone()?.eval_at(&q0), qeuler::qeuler_hk(&spec, &ctx))
                                && agrees_at(
                                    gsym.clone()?.eval_at(&q0),
                                    qgenocchi::qgenocchi_hk(&gspec, &ctx),
                                ),
                        )
                    })();
                    c.attempt(outcome, || {
                        format!("m={m} h={h} k={k} q={}", render_rat(&q0))
                    });
                }
            }
        }
    }
    c.finish()
}

// ---------------------------------------------------------------------------

/// Runs one suite (or all of them, in fixed order).
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Report {
    let mut results = Vec::new();
    let suites: Vec<Suite> = if suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![suite]
    };
    let q_p = int(1 + cfg.p as i64);
    let levels: Vec<u32> = (1..=cfg.padic_level).collect();
    let levels_k3: Vec<u32> = (1..=cfg.padic_level_k3).collect();
    let half = frac(1, 2);
    for s in suites {
        match s {
            Suite::Qcore => {
                results.push(check_binom_recursions(20));
                results.push(check_binom_closed_forms(12));
                results.push(check_q_binomial_theorem(10));
                results.push(check_inverse_pochhammer(5, 12));
                results.push(check_pochhammer_reversal(8));
                results.push(check_evaluation_homomorphism());
            }
            Suite::Classical => {
                results.push(check_genocchi_bernoulli(20));
                results.push(check_genocchi_euler_index(20));
                results.push(check_complementarity(15));
                results.push(check_odd_genocchi_vanish(19));
                results.push(check_higher_order_relation(10, 4));
                results.push(check_order_one(12));
                results.push(check_frobenius(10));
                results.push(check_twisted_euler_frobenius(10, 80));
            }
            Suite::Padic => {
                results.push(check_normalization(cfg.p, 4));
                results.push(check_distribution(cfg.p, 4));
                results.push(check_shift_identity(cfg.p, &q_p, &[1, 2, 3], 5));
                results.push(check_series_tail_shrinks());
            }
            Suite::Qeuler => {
                let twists = [int(1), q_p.clone()];
                results.push(check_qeuler_padic(
                    cfg.p,
                    &q_p,
                    &twists,
                    4,
                    2,
                    2,
                    &levels,
                    cfg.term_budget,
                ));
                results.push(check_qeuler_padic(
                    cfg.p,
                    &q_p,
                    &twists,
                    2,
                    3,
                    2,
                    &levels_k3,
                    cfg.term_budget,
                ));
                results.push(check_real_series_absolute(
                    &half,
                    &[int(1), half.clone()],
                    3,
                    2,
                    40,
                    &frac(1, 1 << 20),
                ));
                results.push(check_closed_form_homomorphism(3, 2));
                for which in [Boundary::Euler, Boundary::TwistedEuler] {
                    results.push(check_boundary_series(
                        which,
                        &half,
                        &[int(1), half.clone()],
                        3,
                        2,
                        2,
                        cfg.series_truncation,
                        &cfg.cesaro_tolerance,
                    ));
                }
            }
            Suite::Qgenocchi => {
                let twists = [int(1), q_p.clone()];
                results.push(check_qgenocchi_padic(
                    cfg.p,
                    &q_p,
                    &twists,
                    3,
                    2,
                    &levels,
                    cfg.term_budget,
                ));
                results.push(check_qgenocchi_padic(
                    cfg.p,
                    &q_p,
                    &twists,
                    2,
                    3,
                    &levels_k3,
                    cfg.term_budget,
                ));
                results.push(check_real_series_genocchi(
                    &half,
                    &[int(1), half.clone()],
                    3,
                    2,
                    40,
                    &frac(1, 1 << 20),
                ));
                results.push(check_genocchi_index_shift(&half, 5, 60));
                results.push(check_genocchi_scaling(10, 4));
                results.push(check_first_genocchi());
                results.push(check_boundary_series(
                    Boundary::Genocchi,
                    &half,
                    &[int(1), half.clone()],
                    3,
                    2,
                    0,
                    cfg.series_truncation,
                    &cfg.cesaro_tolerance,
                ));
            }
            Suite::Limits => {
                results.push(check_qeuler_classical_limit(4, 3, 2));
                results.push(check_qgenocchi_classical_limit(4, 3, 10));
                results.push(check_twisted_classical_limit(6));
                results.push(check_twist_reductions(4, 3));
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    Report { results }
}
