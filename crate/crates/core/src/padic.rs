//! Fermionic integrals over Z_p, computed as exact level-N Riemann sums of
//! the measure `mu_{-q}(a + p^N Z_p) = (-q)^a / [p^N]_{-q}`, plus the
//! |q| < 1 series evaluator used as a second, real-valued oracle.
//!
//! Only the integrands the q-Euler and q-Genocchi families need are
//! supported; see [`IntegrandFamily`].

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::q_int_exact;
use crate::rat::{self, pow_i, render_rat, valuation, Rat};

pub const DEFAULT_TERM_BUDGET: u128 = 100_000;

/// Level and prime for `mu_{-q}`. The conductor is always 1, so the
/// integration domain is Z_p itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicParams {
    p: u64,
    level: u32,
    term_budget: u128,
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

impl PadicParams {
    pub fn new(p: u64, level: u32) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::Domain(format!("p = {p} must be an odd prime")));
        }
        if level == 0 {
            return Err(Error::Domain("level N must be at least 1".into()));
        }
        Ok(PadicParams {
            p,
            level,
            term_budget: DEFAULT_TERM_BUDGET,
        })
    }

    pub fn with_budget(mut self, term_budget: u128) -> Self {
        self.term_budget = term_budget;
        self
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn term_budget(&self) -> u128 {
        self.term_budget
    }

    pub fn conductor(&self) -> u64 {
        1
    }

    /// `p^N`
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.level)
    }

    fn at_level(&self, level: u32) -> Self {
        PadicParams {
            level,
            ..self.clone()
        }
    }
}

/// The integrands that occur in the q-Euler and q-Genocchi definitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntegrandFamily {
    /// `f(y) = w^y (y + shift)^n`, one variable.
    ClassicalMonomial { n: u32, w: Rat, shift: u32 },
    /// `f(x_1..x_k) = prod_j w^(x_j) q^((h-j) x_j) * [x_1 + ... + x_k + x]_q^m`.
    QBracketMonomial {
        m: u32,
        k: u32,
        h: i64,
        w: Rat,
        x: u32,
    },
}

impl IntegrandFamily {
    /// The constant function 1.
    pub fn one() -> Self {
        IntegrandFamily::ClassicalMonomial {
            n: 0,
            w: Rat::one(),
            shift: 0,
        }
    }

    pub fn classical(n: u32) -> Self {
        IntegrandFamily::ClassicalMonomial {
            n,
            w: Rat::one(),
            shift: 0,
        }
    }

    pub fn q_bracket(m: u32, k: u32, h: i64, w: Rat, x: u32) -> Self {
        IntegrandFamily::QBracketMonomial { m, k, h, w, x }
    }

    pub fn variables(&self) -> u32 {
        match self {
            IntegrandFamily::ClassicalMonomial { .. } => 1,
            IntegrandFamily::QBracketMonomial { k, .. } => *k,
        }
    }

    pub fn twist(&self) -> &Rat {
        match self {
            IntegrandFamily::ClassicalMonomial { w, .. }
            | IntegrandFamily::QBracketMonomial { w, .. } => w,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.variables() == 0 {
            return Err(Error::Domain(
                "integrand needs at least one variable".into(),
            ));
        }
        Ok(())
    }

    /// Value of a one-variable integrand at `y`.
    pub fn eval_single(&self, y: u64, q: &Rat) -> Result<Rat> {
        match self {
            IntegrandFamily::ClassicalMonomial { n, w, shift } => {
                let base = rat::int(y as i64 + *shift as i64);
                Ok(pow_i(w, y as i64)? * num_traits::pow(base, *n as usize))
            }
            IntegrandFamily::QBracketMonomial { m, k: 1, h, w, x } => {
                let weight = pow_i(w, y as i64)? * pow_i(q, (h - 1) * y as i64)?;
                Ok(weight * num_traits::pow(q_int_exact(y + *x as u64, q), *m as usize))
            }
            IntegrandFamily::QBracketMonomial { .. } => Err(Error::Domain(
                "pointwise evaluation is only defined for one-variable integrands".into(),
            )),
        }
    }

    /// Per-variable geometric ratios after absorbing the `(-q)^(x_j)` of the
    /// measure: the integrand times measure is `prod_j r_j^(x_j) * g(sum x_j)`.
    fn ratios(&self, q: &Rat) -> Result<Vec<Rat>> {
        match self {
            IntegrandFamily::ClassicalMonomial { w, .. } => Ok(vec![-(w * q)]),
            IntegrandFamily::QBracketMonomial { k, h, w, .. } => (1..=*k as i64)
                .map(|j| Ok(-(w * pow_i(q, h - j + 1)?)))
                .collect(),
        }
    }

    /// The symmetric part `g(s)` of the integrand, as a function of `s = sum x_j`.
    fn radial(&self, s: u64, q: &Rat) -> Rat {
        match self {
            IntegrandFamily::ClassicalMonomial { n, shift, .. } => {
                num_traits::pow(rat::int(s as i64 + *shift as i64), *n as usize)
            }
            IntegrandFamily::QBracketMonomial { m, x, .. } => {
                num_traits::pow(q_int_exact(s + *x as u64, q), *m as usize)
            }
        }
    }
}

/// `[n]_{-q}` at a rational point.
fn q_int_neg(n: u64, q: &Rat) -> Result<Rat> {
    let one_plus_q = Rat::one() + q;
    if one_plus_q.is_zero() {
        return Err(Error::DivisionByZero("[n]_{-q} at q = -1".into()));
    }
    let minus_q: Rat = -q.clone();
    Ok((Rat::one() - num_traits::pow(minus_q, n as usize)) / one_plus_q)
}

/// `mu_{-q}(a + p^N Z_p)`
pub fn measure_value(a: u64, params: &PadicParams, q: &Rat) -> Result<Rat> {
    let modulus = params.modulus();
    if a >= modulus {
        return Err(Error::Domain(format!("a = {a} is outside [0, {modulus})")));
    }
    let minus_q: Rat = -q.clone();
    Ok(num_traits::pow(minus_q, a as usize) / q_int_neg(modulus, q)?)
}

/// `sum_{s} c_s z^s` for `c = conv_j (1, r_j, r_j^2, ..., r_j^(len-1))`,
/// i.e. the sum over the box `[0, len)^k` grouped by `s = sum x_j`.
fn box_weights(ratios: &[Rat], len: usize) -> Vec<Rat> {
    let mut acc = vec![Rat::one()];
    for r in ratios {
        let geo: Vec<Rat> = std::iter::successors(Some(Rat::one()), |p| Some(p * r))
            .take(len)
            .collect();
        let mut next = vec![Rat::zero(); acc.len() + len - 1];
        for (i, a) in acc.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, g) in geo.iter().enumerate() {
                next[i + j] += a * g;
            }
        }
        acc = next;
    }
    acc
}

fn check_budget(per_axis: u64, k: u32, budget: u128) -> Result<()> {
    let needed = (per_axis as u128).checked_pow(k).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// Level-N approximation of the (k-fold) fermionic integral:
/// `[p^N]_{-q}^(-k) * sum_{x in [0,p^N)^k} f(x) prod_j (-q)^(x_j)`.
///
/// The `p^(kN)` terms are grouped by `sum x_j` before the bracket powers
/// are applied; the value is the same finite sum.
pub fn fermionic_sum(f: &IntegrandFamily, q: &Rat, params: &PadicParams) -> Result<Rat> {
    f.validate()?;
    let modulus = params.modulus();
    check_budget(modulus, f.variables(), params.term_budget)?;
    let norm = q_int_neg(modulus, q)?;
    let weights = box_weights(&f.ratios(q)?, modulus as usize);
    let total = weights
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Rat::zero(), |acc, (s, c)| acc + c * f.radial(s as u64, q));
    Ok(total / pow_i(&norm, f.variables() as i64)?)
}

/// Term-by-term evaluation of the same level-N sum, one tuple at a time.
/// Slow; kept as the reference for [`fermionic_sum`].
pub fn fermionic_sum_naive(f: &IntegrandFamily, q: &Rat, params: &PadicParams) -> Result<Rat> {
    f.validate()?;
    let modulus = params.modulus();
    let k = f.variables() as usize;
    check_budget(modulus, k as u32, params.term_budget)?;
    let norm = q_int_neg(modulus, q)?;
    let (w, h) = match f {
        IntegrandFamily::ClassicalMonomial { w, .. } => (w.clone(), 1),
        IntegrandFamily::QBracketMonomial { w, h, .. } => (w.clone(), *h),
    };
    let minus_q: Rat = -q.clone();
    let mut total = Rat::zero();
    let mut tuple = vec![0u64; k];
    'outer: loop {
        let mut term = Rat::one();
        for (j, &xj) in tuple.iter().enumerate() {
            let e = xj as i64;
            term = term * pow_i(&w, e)? * pow_i(q, (h - 1 - j as i64) * e)? * pow_i(&minus_q, e)?;
        }
        let s: u64 = tuple.iter().sum();
        total += term * f.radial(s, q);
        for slot in tuple.iter_mut() {
            *slot += 1;
            if *slot < modulus {
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    Ok(total / pow_i(&norm, k as i64)?)
}

/// Residual valuations `v_p(S_N - target)` over a set of levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValuationReport {
    pub levels: Vec<u32>,
    /// `None` means the residual is exactly zero (+inf).
    pub valuations: Vec<Option<i64>>,
    pub verdict: bool,
}

impl ValuationReport {
    fn judge(levels: Vec<u32>, valuations: Vec<Option<i64>>) -> Self {
        let key = |v: &Option<i64>| v.unwrap_or(i64::MAX);
        let monotone = valuations.windows(2).all(|w| key(&w[0]) <= key(&w[1]));
        let top = levels.iter().copied().max().unwrap_or(0) as i64;
        let reached = valuations.last().is_some_and(|v| key(v) >= top - 1);
        ValuationReport {
            levels,
            valuations,
            verdict: monotone && reached,
        }
    }

    /// Smallest valuation seen (None when every residual vanished).
    pub fn worst(&self) -> Option<i64> {
        self.valuations.iter().flatten().copied().min()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vals: Vec<serde_json::Value> = self
            .valuations
            .iter()
            .map(|v| match v {
                Some(v) => serde_json::Value::from(*v),
                None => serde_json::Value::from("inf"),
            })
            .collect();
        serde_json::json!({ "levels": self.levels, "valuations": vals, "verdict": self.verdict })
    }
}

fn require_unit_near_one(name: &str, v: &Rat, p: u64) -> Result<()> {
    let ok = valuation(&(v - Rat::one()), p).is_none_or(|val| val >= 1);
    if !ok {
        return Err(Error::Domain(format!(
            "{name} = {} needs v_{p}({name} - 1) >= 1 for p-adic convergence",
            render_rat(v)
        )));
    }
    Ok(())
}

/// Runs [`fermionic_sum`] at each level and reports how fast it approaches `target`.
pub fn padic_limit_check(
    f: &IntegrandFamily,
    target: &Rat,
    q: &Rat,
    params: &PadicParams,
    levels: &[u32],
) -> Result<ValuationReport> {
    require_unit_near_one("q", q, params.p)?;
    require_unit_near_one("w", f.twist(), params.p)?;
    let valuations = levels
        .iter()
        .map(|&n| {
            let s = fermionic_sum(f, q, &params.at_level(n))?;
            Ok(valuation(&(s - target), params.p))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ValuationReport::judge(levels.to_vec(), valuations))
}

/// `q^n I(f_n) - (-1)^n I(f) - [2]_q sum_{l<n} (-1)^(n-1-l) q^l f(l)` with both
/// integrals replaced by their level-N sums, where `f_n(y) = f(y + n)`.
pub fn shift_identity_residual(
    f: &IntegrandFamily,
    n_shift: u32,
    q: &Rat,
    params: &PadicParams,
) -> Result<Rat> {
    if f.variables() != 1 {
        return Err(Error::Domain(
            "shift identity needs a one-variable integrand".into(),
        ));
    }
    if n_shift == 0 {
        return Err(Error::Domain("shift must be at least 1".into()));
    }
    let modulus = params.modulus();
    check_budget(modulus, 1, params.term_budget)?;
    let norm = q_int_neg(modulus, q)?;
    let minus_q: Rat = -q.clone();
    let level_sum = |offset: u64| -> Result<Rat> {
        let mut acc = Rat::zero();
        let mut mq = Rat::one();
        for y in 0..modulus {
            acc += f.eval_single(y + offset, q)? * &mq;
            mq *= &minus_q;
        }
        Ok(acc / &norm)
    };
    let n = n_shift as u64;
    let sign = |e: u64| {
        if e.is_multiple_of(2) {
            Rat::one()
        } else {
            -Rat::one()
        }
    };
    let lhs = pow_i(q, n as i64)? * level_sum(n)?;
    let mut boundary = Rat::zero();
    for l in 0..n {
        boundary += sign(n - 1 - l) * pow_i(q, l as i64)? * f.eval_single(l, q)?;
    }
    let rhs = sign(n) * level_sum(0)? + (Rat::one() + q) * boundary;
    Ok(lhs - rhs)
}

/// How the |q| < 1 series is summed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMode {
    /// Plain truncation; needs absolute convergence.
    Direct,
    /// Arithmetic mean of the first `M` partial sums.
    Cesaro1,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesParams {
    pub truncation: usize,
    pub mode: SeriesMode,
    /// Reported as the tail bound in Cesaro mode, where no rigorous bound is known.
    pub cesaro_tolerance: Rat,
    pub term_budget: u128,
}

impl SeriesParams {
    pub fn direct(truncation: usize) -> Self {
        SeriesParams {
            truncation,
            mode: SeriesMode::Direct,
            cesaro_tolerance: rat::frac(1, 1000),
            term_budget: DEFAULT_TERM_BUDGET,
        }
    }

    pub fn cesaro(truncation: usize) -> Self {
        SeriesParams {
            mode: SeriesMode::Cesaro1,
            ..Self::direct(truncation)
        }
    }

    pub fn with_tolerance(mut self, tol: Rat) -> Self {
        self.cesaro_tolerance = tol;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.truncation == 0 {
            return Err(Error::Domain("truncation M must be at least 1".into()));
        }
        Ok(())
    }
}

/// A regularized or truncated series value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesValue {
    pub value: Rat,
    /// Exact majorant of the neglected tail (Direct), or the configured
    /// tolerance (Cesaro1).
    pub tail_bound: Rat,
    pub truncation: usize,
}

/// Checks the effective geometric ratios against the requested mode.
pub(crate) fn classify_ratios(ratios: &[Rat], mode: SeriesMode) -> Result<()> {
    let worst = ratios
        .iter()
        .map(|r| r.abs())
        .max()
        .unwrap_or_else(Rat::zero);
    if worst > Rat::one() {
        return Err(Error::Divergence(format!(
            "effective ratio of absolute value {} exceeds 1",
            render_rat(&worst)
        )));
    }
    if worst.is_one() && mode == SeriesMode::Direct {
        return Err(Error::Divergence(
            "boundary alternating series (|ratio| = 1) cannot be truncated directly; use Cesaro1"
                .into(),
        ));
    }
    Ok(())
}

/// Arithmetic mean of the partial sums `S_1, ..., S_M` given the increments.
pub(crate) fn cesaro_mean<I: IntoIterator<Item = Rat>>(increments: I) -> (Rat, usize) {
    let mut partial = Rat::zero();
    let mut total = Rat::zero();
    let mut count = 0usize;
    for inc in increments {
        partial += inc;
        total += &partial;
        count += 1;
    }
    if count == 0 {
        return (Rat::zero(), 0);
    }
    (total / rat::int(count as i64), count)
}

/// `I_{-q}(f) = [2]_q^k sum_{x in N^k} f(x) prod_j (-q)^(x_j)` for `0 < |q| < 1`
/// (or `q = 1` with a classical monomial twisted by `|w| < 1`).
pub fn real_series(f: &IntegrandFamily, q: &Rat, sp: &SeriesParams) -> Result<SeriesValue> {
    f.validate()?;
    sp.validate()?;
    // classical monomials carry no q-bracket, so q = 1 (the I_{-1} case) is fine
    let classical_at_one = q.is_one() && matches!(f, IntegrandFamily::ClassicalMonomial { .. });
    if !classical_at_one && (q.is_zero() || q.abs() >= Rat::one()) {
        return Err(Error::Domain(format!(
            "series regime needs 0 < |q| < 1, got q = {}",
            render_rat(q)
        )));
    }
    let k = f.variables();
    let ratios = f.ratios(q)?;
    classify_ratios(&ratios, sp.mode)?;
    let m_len = sp.truncation;
    check_budget(m_len as u64, k, sp.term_budget)?;
    let scale = pow_i(&(Rat::one() + q), k as i64)?;
    match sp.mode {
        SeriesMode::Direct => {
            let weights = box_weights(&ratios, m_len);
            let value = weights
                .iter()
                .enumerate()
                .fold(Rat::zero(), |acc, (s, c)| acc + c * f.radial(s as u64, q));
            let tail = direct_tail_bound(f, q, &ratios, m_len)?;
            Ok(SeriesValue {
                value: value * &scale,
                tail_bound: tail * scale.abs(),
                truncation: m_len,
            })
        }
        SeriesMode::Cesaro1 => {
            // shell L holds every tuple whose largest coordinate is L - 1
            let powers: Vec<Vec<Rat>> = ratios
                .iter()
                .map(|r| {
                    std::iter::successors(Some(Rat::one()), |p| Some(p * r))
                        .take(m_len)
                        .collect()
                })
                .collect();
            let radial: Vec<Rat> = (0..k as usize * (m_len - 1) + 1)
                .map(|s| f.radial(s as u64, q))
                .collect();
            let mut shells = vec![Rat::zero(); m_len];
            let mut tuple = vec![0usize; k as usize];
            'outer: loop {
                let mut term = radial[tuple.iter().sum::<usize>()].clone();
                for (j, &xj) in tuple.iter().enumerate() {
                    term *= &powers[j][xj];
                }
                let top = *tuple.iter().max().expect("k >= 1");
                shells[top] += term;
                for slot in tuple.iter_mut() {
                    *slot += 1;
                    if *slot < m_len {
                        continue 'outer;
                    }
                    *slot = 0;
                }
                break;
            }
            let (mean, _) = cesaro_mean(shells);
            Ok(SeriesValue {
                value: mean * &scale,
                tail_bound: sp.cesaro_tolerance.clone(),
                truncation: m_len,
            })
        }
    }
}

/// Majorant of everything outside the box `[0, M)^k`.
fn direct_tail_bound(f: &IntegrandFamily, q: &Rat, ratios: &[Rat], m_len: usize) -> Result<Rat> {
    let rho: Vec<Rat> = ratios.iter().map(|r| r.abs()).collect();
    match f {
        IntegrandFamily::QBracketMonomial { m, .. } => {
            // |[s]_q| <= sum |q|^i <= 1 / (1 - |q|)
            let bracket = (Rat::one() - q.abs()).recip();
            let full: Rat = rho.iter().map(|r| (Rat::one() - r).recip()).product();
            let boxed: Rat = rho
                .iter()
                .map(|r| (Rat::one() - num_traits::pow(r.clone(), m_len)) / (Rat::one() - r))
                .product();
            Ok(num_traits::pow(bracket, *m as usize) * (full - boxed))
        }
        IntegrandFamily::ClassicalMonomial { n, shift, .. } => {
            // terms rho^y (y + c)^n decay at least by theta from y = M on
            let r = &rho[0];
            let c = *shift as i64;
            let big_m = m_len as i64;
            let growth = rat::frac(big_m + 1 + c, (big_m + c).max(1));
            let theta = num_traits::pow(growth, *n as usize) * r;
            if theta >= Rat::one() {
                return Err(Error::Domain(format!(
                    "truncation M = {m_len} is too small for a geometric tail bound"
                )));
            }
            let first = num_traits::pow(r.clone(), m_len)
                * num_traits::pow(rat::int(big_m + c), *n as usize);
            Ok(first / (Rat::one() - theta))
        }
    }
}
