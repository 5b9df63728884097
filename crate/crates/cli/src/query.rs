//! Single-value queries: flag parsing, validation and dispatch to the core crate.

use std::fmt;

use clap::{Args, ValueEnum};
use num_traits::{One, Signed};
use qgen_core::classical;
use qgen_core::padic::{self, IntegrandFamily, PadicParams, SeriesParams, SeriesValue};
use qgen_core::qcore;
use qgen_core::qeuler::{self, GfKind, QEulerSpec};
use qgen_core::qgenocchi::{self, QGenocchiSpec};
use qgen_core::rat::{int, parse_rat, render_rat};
use qgen_core::{Ctx, Rat, Scalar};
use serde_json::{json, Map, Value};

use crate::config::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Family {
    Qnum,
    Qbinom,
    Euler,
    Genocchi,
    Bernoulli,
    Frobenius,
    Qeuler,
    Qgenocchi,
    TwistedEuler,
    TwistedGenocchi,
    Gf,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        Family::from_str(s, false).ok()
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Qnum => "qnum",
            Family::Qbinom => "qbinom",
            Family::Euler => "euler",
            Family::Genocchi => "genocchi",
            Family::Bernoulli => "bernoulli",
            Family::Frobenius => "frobenius",
            Family::Qeuler => "qeuler",
            Family::Qgenocchi => "qgenocchi",
            Family::TwistedEuler => "twisted-euler",
            Family::TwistedGenocchi => "twisted-genocchi",
            Family::Gf => "gf",
        }
    }

    /// Parameters the family accepts (mode knobs p, N, M are checked separately).
    fn params(self) -> &'static [&'static str] {
        match self {
            Family::Qnum => &["n", "q"],
            Family::Qbinom => &["n", "k", "q"],
            Family::Euler | Family::Genocchi => &["n", "k", "x"],
            Family::Bernoulli => &["n"],
            Family::Frobenius => &["n", "w", "x"],
            Family::Qeuler => &["m", "h", "k", "x", "w", "q"],
            Family::Qgenocchi => &["n", "h", "k", "w", "q"],
            Family::TwistedEuler | Family::TwistedGenocchi => &["n", "w", "q"],
            Family::Gf => &["n", "k", "x", "w", "q", "t", "kind"],
        }
    }

    fn modes(self) -> &'static [Mode] {
        match self {
            Family::Qnum | Family::Qbinom | Family::TwistedEuler | Family::TwistedGenocchi => {
                &[Mode::Exact, Mode::Symbolic]
            }
            Family::Euler | Family::Genocchi | Family::Bernoulli | Family::Frobenius => {
                &[Mode::Exact]
            }
            Family::Qeuler | Family::Qgenocchi => {
                &[Mode::Exact, Mode::Symbolic, Mode::Padic, Mode::Series]
            }
            Family::Gf => &[Mode::Series],
        }
    }

    fn default_mode(self) -> Mode {
        if self == Family::Gf {
            Mode::Series
        } else {
            Mode::Exact
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
pub enum Mode {
    Exact,
    Symbolic,
    Padic,
    Series,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Symbolic => "symbolic",
            Mode::Padic => "padic",
            Mode::Series => "series",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Fqk,
    Hqk,
    Hqkw,
}

fn rational(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// Flags shared by queries and tables.
#[derive(Args, Clone, Debug, Default)]
pub struct Params {
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<i64>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub x: Option<u32>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub q: Option<Rat>,
    /// Twist w (also the Frobenius-Euler parameter u).
    #[arg(long, visible_alias = "u", value_parser = rational, allow_hyphen_values = true)]
    pub w: Option<Rat>,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub t: Option<Rat>,
    /// Generating function for the gf family.
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Shorthand for --mode symbolic.
    #[arg(long)]
    pub symbolic: bool,
    #[arg(long)]
    pub p: Option<u64>,
    /// p-adic level N.
    #[arg(long = "N")]
    pub level: Option<u32>,
    /// Series truncation M.
    #[arg(long = "M")]
    pub truncation: Option<usize>,
}

impl Params {
    pub fn set_int(&mut self, name: &str, v: i64) -> Result<(), String> {
        let small = |v: i64| {
            u32::try_from(v).map_err(|_| format!("--{name} must be a nonnegative integer"))
        };
        match name {
            "n" => self.n = Some(small(v)?),
            "m" => self.m = Some(small(v)?),
            "k" => self.k = Some(small(v)?),
            "x" => self.x = Some(small(v)?),
            "h" => self.h = Some(v),
            _ => return Err(format!("--{name} cannot be ranged")),
        }
        Ok(())
    }

    fn given(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let flags: [(&'static str, bool); 9] = [
            ("n", self.n.is_some()),
            ("m", self.m.is_some()),
            ("h", self.h.is_some()),
            ("k", self.k.is_some()),
            ("x", self.x.is_some()),
            ("q", self.q.is_some()),
            ("w", self.w.is_some()),
            ("t", self.t.is_some()),
            ("kind", self.kind.is_some()),
        ];
        for (name, set) in flags {
            if set {
                out.push(name);
            }
        }
        out
    }

    /// The echoed query, in a fixed key order.
    pub fn echo(&self, family: Family) -> Value {
        let mut map = Map::new();
        map.insert("family".into(), json!(family.name()));
        let ints = [
            ("n", self.n.map(i64::from)),
            ("m", self.m.map(i64::from)),
            ("h", self.h),
        ];
        for (name, v) in ints {
            if let Some(v) = v {
                map.insert(name.into(), json!(v));
            }
        }
        for (name, v) in [("k", self.k), ("x", self.x)] {
            if let Some(v) = v {
                map.insert(name.into(), json!(v));
            }
        }
        for (name, v) in [("q", &self.q), ("w", &self.w), ("t", &self.t)] {
            if let Some(v) = v {
                map.insert(name.into(), json!(render_rat(v)));
            }
        }
        if let Some(kind) = self.kind {
            map.insert("kind".into(), json!(format!("{kind:?}").to_lowercase()));
        }
        if let Some(p) = self.p {
            map.insert("p".into(), json!(p));
        }
        if let Some(n) = self.level {
            map.insert("N".into(), json!(n));
        }
        if let Some(m) = self.truncation {
            map.insert("M".into(), json!(m));
        }
        Value::Object(map)
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed or inconsistent flags; exit code 2.
    Usage(String),
    /// The computation itself failed; exit code 1.
    Domain(qgen_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Domain(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<qgen_core::Error> for CliError {
    fn from(e: qgen_core::Error) -> Self {
        match e {
            qgen_core::Error::Parse(msg) => CliError::Usage(msg),
            other => CliError::Domain(other),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need<T: Clone>(v: &Option<T>, name: &str, family: Family) -> Result<T, CliError> {
    v.clone()
        .ok_or_else(|| usage(format!("{} needs --{name}", family.name())))
}

/// A computed value plus whatever the mode reports alongside it.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluated {
    pub mode: Mode,
    pub value: Value,
    pub meta: Map<String, Value>,
}

impl Evaluated {
    fn plain(mode: Mode, v: Scalar) -> Self {
        Evaluated {
            mode,
            value: v.to_json(),
            meta: Map::new(),
        }
    }

    fn exact(r: Rat) -> Self {
        Evaluated::plain(Mode::Exact, Scalar::Exact(r))
    }

    fn series(s: SeriesValue, summation: &str) -> Self {
        let mut meta = Map::new();
        meta.insert("truncation".into(), json!(s.truncation));
        meta.insert("tail_bound".into(), json!(render_rat(&s.tail_bound)));
        meta.insert("summation".into(), json!(summation));
        Evaluated {
            mode: Mode::Series,
            value: json!(render_rat(&s.value)),
            meta,
        }
    }
}

/// Resolves the mode and checks that every given flag belongs to the family.
pub fn resolve_mode(family: Family, params: &Params) -> Result<Mode, CliError> {
    let mode = match (params.mode, params.symbolic) {
        (Some(m), true) if m != Mode::Symbolic => {
            return Err(usage("--symbolic conflicts with --mode"));
        }
        (_, true) => Mode::Symbolic,
        (Some(m), false) => m,
        (None, false) => family.default_mode(),
    };
    if !family.modes().contains(&mode) {
        return Err(usage(format!(
            "{} does not support mode {}",
            family.name(),
            mode.name()
        )));
    }
    for name in params.given() {
        if !family.params().contains(&name) {
            return Err(usage(format!("{} does not take --{name}", family.name())));
        }
    }
    if mode == Mode::Symbolic && params.q.is_some() {
        return Err(usage("--q cannot be combined with symbolic mode"));
    }
    if mode != Mode::Padic && (params.p.is_some() || params.level.is_some()) {
        return Err(usage("--p and --N only apply in padic mode"));
    }
    if mode != Mode::Series && params.truncation.is_some() {
        return Err(usage("--M only applies in series mode"));
    }
    Ok(mode)
}

fn ctx_for(mode: Mode, family: Family, params: &Params) -> Result<Ctx, CliError> {
    match mode {
        Mode::Symbolic => Ok(Ctx::Symbolic),
        _ => Ok(Ctx::Exact(need(&params.q, "q", family)?)),
    }
}

fn padic_eval(
    f: &IntegrandFamily,
    target: &Rat,
    scale: &Rat,
    q: &Rat,
    p: u64,
    level: u32,
    budget: u128,
) -> Result<Evaluated, CliError> {
    if level == 0 {
        return Err(usage("--N must be at least 1"));
    }
    let params = PadicParams::new(p, level)?.with_budget(budget);
    let levels: Vec<u32> = (1..=level).collect();
    let scaled_target = target / scale;
    let report = padic::padic_limit_check(f, &scaled_target, q, &params, &levels)?;
    let s = padic::fermionic_sum(f, q, &params)? * scale;
    let mut meta = Map::new();
    meta.insert("p".into(), json!(p));
    meta.insert("q".into(), json!(render_rat(q)));
    meta.insert("target".into(), json!(render_rat(target)));
    let report = report.to_json();
    for key in ["levels", "valuations", "verdict"] {
        meta.insert(key.into(), report[key].clone());
    }
    Ok(Evaluated {
        mode: Mode::Padic,
        value: json!(render_rat(&s)),
        meta,
    })
}

/// Evaluates one query. `cfg` already reflects the config file; flags win.
pub fn evaluate(family: Family, params: &Params, cfg: &Config) -> Result<Evaluated, CliError> {
    let mode = resolve_mode(family, params)?;
    let p = params.p.unwrap_or(cfg.p);
    let level = params.level.unwrap_or(cfg.level);
    let truncation = params.truncation.unwrap_or(cfg.truncation);
    let one = Rat::one();
    let w = params.w.clone().unwrap_or_else(|| one.clone());
    match family {
        Family::Qnum => {
            let n = need(&params.n, "n", family)?;
            Ok(Evaluated::plain(
                mode,
                qcore::q_int(n, &ctx_for(mode, family, params)?)?,
            ))
        }
        Family::Qbinom => {
            let n = need(&params.n, "n", family)?;
            let k = need(&params.k, "k", family)?;
            let ctx = ctx_for(mode, family, params)?;
            Ok(Evaluated::plain(
                mode,
                qcore::gauss_binom(n.into(), k.into(), &ctx)?,
            ))
        }
        Family::Euler => {
            let n = need(&params.n, "n", family)? as usize;
            let r = params.k.unwrap_or(1);
            let x = int(params.x.unwrap_or(0).into());
            Ok(Evaluated::exact(
                classical::higher_euler_poly(n, r)?.eval(&x),
            ))
        }
        Family::Genocchi => {
            let n = need(&params.n, "n", family)? as usize;
            match (params.k, params.x) {
                (Some(_), Some(_)) => Err(usage("genocchi takes --k (order) or --x, not both")),
                (Some(r), None) => Ok(Evaluated::exact(classical::higher_genocchi(n, r)?)),
                (None, Some(x)) => Ok(Evaluated::exact(
                    classical::genocchi_poly(n).eval(&int(x.into())),
                )),
                (None, None) => Ok(Evaluated::exact(classical::genocchi(n))),
            }
        }
        Family::Bernoulli => {
            let n = need(&params.n, "n", family)? as usize;
            Ok(Evaluated::exact(classical::bernoulli(n)))
        }
        Family::Frobenius => {
            let n = need(&params.n, "n", family)? as usize;
            let u = need(&params.w, "w", family)?;
            let x = int(params.x.unwrap_or(0).into());
            Ok(Evaluated::exact(
                classical::frobenius_euler_poly(n, &u)?.eval(&x),
            ))
        }
        Family::TwistedEuler | Family::TwistedGenocchi => {
            let n = need(&params.n, "n", family)?;
            let w = need(&params.w, "w", family)?;
            let euler = family == Family::TwistedEuler;
            if mode == Mode::Exact && params.q.is_none() {
                let v = if euler {
                    classical::twisted_euler_classical(n as usize, &w)?
                } else {
                    classical::twisted_genocchi_classical(n as usize, &w)?
                };
                return Ok(Evaluated::exact(v));
            }
            let ctx = ctx_for(mode, family, params)?;
            let v = if euler {
                qeuler::qeuler_twisted(n, &w, &ctx)?
            } else {
                qgenocchi::qgenocchi_twisted(n, &w, &ctx)?
            };
            Ok(Evaluated::plain(mode, v))
        }
        Family::Qeuler => {
            let m = need(&params.m, "m", family)?;
            let h = need(&params.h, "h", family)?;
            let k = need(&params.k, "k", family)?;
            let x = params.x.unwrap_or(0);
            let spec = QEulerSpec::new(m, h, k, x).twisted(w.clone());
            match mode {
                Mode::Exact | Mode::Symbolic => Ok(Evaluated::plain(
                    mode,
                    qeuler::qeuler_hk(&spec, &ctx_for(mode, family, params)?)?,
                )),
                Mode::Padic => {
                    let q = params.q.clone().unwrap_or_else(|| int(1 + p as i64));
                    let target = qeuler::qeuler_hk(&spec, &Ctx::Exact(q.clone()))?.into_exact()?;
                    let f = IntegrandFamily::q_bracket(m, k, h, w, x);
                    padic_eval(&f, &target, &one, &q, p, level, cfg.term_budget)
                }
                Mode::Series => {
                    let q = need(&params.q, "q", family)?;
                    if h == k as i64 - 1 {
                        let sp = SeriesParams::cesaro(truncation)
                            .with_tolerance(cfg.cesaro_tolerance.clone());
                        Ok(Evaluated::series(
                            qeuler::qeuler_twisted_hk_series(&spec, &q, &sp)?,
                            "cesaro1",
                        ))
                    } else {
                        let f = IntegrandFamily::q_bracket(m, k, h, w, x);
                        Ok(Evaluated::series(
                            padic::real_series(&f, &q, &SeriesParams::direct(truncation))?,
                            "direct",
                        ))
                    }
                }
            }
        }
        Family::Qgenocchi => {
            let n = need(&params.n, "n", family)?;
            let Some(k) = params.k else {
                if params.h.is_some() {
                    return Err(usage("qgenocchi --h needs --k"));
                }
                if !matches!(mode, Mode::Exact | Mode::Symbolic) {
                    return Err(usage("qgenocchi in padic or series mode needs --h and --k"));
                }
                let ctx = ctx_for(mode, family, params)?;
                return Ok(Evaluated::plain(
                    mode,
                    qgenocchi::qgenocchi_twisted(n, &w, &ctx)?,
                ));
            };
            let h = need(&params.h, "h", family)?;
            let spec = QGenocchiSpec::new(n, h, k).twisted(w.clone());
            match mode {
                Mode::Exact | Mode::Symbolic => Ok(Evaluated::plain(
                    mode,
                    qgenocchi::qgenocchi_hk(&spec, &ctx_for(mode, family, params)?)?,
                )),
                Mode::Padic => {
                    let q = params.q.clone().unwrap_or_else(|| int(1 + p as i64));
                    let target =
                        qgenocchi::qgenocchi_hk(&spec, &Ctx::Exact(q.clone()))?.into_exact()?;
                    let scale = Rat::from_integer(spec.scaling());
                    let f = IntegrandFamily::q_bracket(n, k, h, w, 0);
                    padic_eval(&f, &target, &scale, &q, p, level, cfg.term_budget)
                }
                Mode::Series => {
                    let q = need(&params.q, "q", family)?;
                    if h == k as i64 - 1 {
                        let sp = SeriesParams::cesaro(truncation)
                            .with_tolerance(cfg.cesaro_tolerance.clone());
                        Ok(Evaluated::series(
                            qgenocchi::qgenocchi_hk_series(&spec, &q, &sp)?,
                            "cesaro1",
                        ))
                    } else {
                        let scale = Rat::from_integer(spec.scaling());
                        let f = IntegrandFamily::q_bracket(n, k, h, w, 0);
                        let mut s = padic::real_series(&f, &q, &SeriesParams::direct(truncation))?;
                        s.value *= &scale;
                        s.tail_bound *= &scale;
                        Ok(Evaluated::series(s, "direct"))
                    }
                }
            }
        }
        Family::Gf => {
            let terms = need(&params.n, "n", family)?;
            let k = need(&params.k, "k", family)?;
            let q = need(&params.q, "q", family)?;
            let t = need(&params.t, "t", family)?;
            let x = params.x.unwrap_or(0);
            let kind = match params.kind.unwrap_or(Kind::Fqk) {
                Kind::Fqk => GfKind::Fqk,
                Kind::Hqk => GfKind::Hqk,
                Kind::Hqkw => GfKind::Hqkw,
            };
            if kind != GfKind::Fqk && params.x.is_some() {
                return Err(usage("--x only applies to --kind fqk"));
            }
            // Absolutely convergent when |w| < 1; otherwise regularize.
            let (sp, summation) = if w.abs() < one {
                (SeriesParams::direct(truncation), "direct")
            } else {
                (
                    SeriesParams::cesaro(truncation).with_tolerance(cfg.cesaro_tolerance.clone()),
                    "cesaro1",
                )
            };
            let g = qeuler::gf_eval(kind, k, x, &w, &q, &t, terms, &sp)?;
            let mut meta = Map::new();
            meta.insert("truncation".into(), json!(truncation));
            meta.insert("tail_bound".into(), json!(render_rat(&g.tail_bound)));
            meta.insert("summation".into(), json!(summation));
            meta.insert("coefficient_side".into(), json!(render_rat(&g.rhs)));
            Ok(Evaluated {
                mode,
                value: json!(render_rat(&g.lhs)),
                meta,
            })
        }
    }
}

/// The full JSON document printed for a query.
pub fn render(family: Family, params: &Params, e: &Evaluated) -> Value {
    json!({
        "query": params.echo(family),
        "mode": e.mode.name(),
        "value": e.value,
        "meta": Value::Object(e.meta.clone()),
    })
}
