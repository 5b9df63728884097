//! Tables over one or two integer ranges.

use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::config::Config;
use crate::query::{evaluate, resolve_mode, CliError, Family, Params};

const RANGEABLE: [&str; 5] = ["n", "m", "h", "k", "x"];

/// `name=lo..hi`, inclusive; `lo > hi` is an empty range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Range {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
}

impl Range {
    pub fn values(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> u128 {
        if self.hi < self.lo {
            0
        } else {
            (self.hi - self.lo) as u128 + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("range {s:?} is not of the form name=lo..hi");
        let (name, span) = s.split_once('=').ok_or_else(bad)?;
        let (lo, hi) = span.split_once("..").ok_or_else(bad)?;
        if !RANGEABLE.contains(&name) {
            return Err(format!(
                "cannot range over {name:?}; choose one of n, m, h, k, x"
            ));
        }
        Ok(Range {
            name: name.to_string(),
            lo: lo.trim().parse().map_err(|_| bad())?,
            hi: hi.trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct TableSpec {
    pub family: Family,
    pub fixed: Params,
    pub ranges: Vec<Range>,
    pub format: Format,
}

/// One row: the ranged values, then the cell.
type Row = (Vec<i64>, Value);

fn cells(spec: &TableSpec, cfg: &Config) -> Result<Vec<Row>, CliError> {
    let total = spec.ranges.iter().map(Range::len).product::<u128>();
    if total > cfg.term_budget {
        return Err(CliError::Domain(qgen_core::Error::BudgetExceeded {
            needed: total,
            budget: cfg.term_budget,
        }));
    }
    let mut points: Vec<Vec<i64>> = vec![vec![]];
    for r in &spec.ranges {
        points = points
            .into_iter()
            .flat_map(|prefix| {
                r.values().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    if total == 0 {
        points.clear();
    }
    let mut rows = Vec::with_capacity(points.len());
    for point in points {
        let mut params = spec.fixed.clone();
        for (r, &v) in spec.ranges.iter().zip(&point) {
            params.set_int(&r.name, v).map_err(CliError::Usage)?;
        }
        rows.push((point, evaluate(spec.family, &params, cfg)?.value));
    }
    Ok(rows)
}

fn check(spec: &TableSpec) -> Result<(), CliError> {
    resolve_mode(spec.family, &spec.fixed)?;
    if let [a, b] = spec.ranges.as_slice() {
        if a.name == b.name {
            return Err(CliError::Usage(format!(
                "--range and --range2 both name {:?}",
                a.name
            )));
        }
    }
    for r in &spec.ranges {
        if spec.fixed.echo(spec.family).get(&r.name).is_some() {
            return Err(CliError::Usage(format!(
                "--{} is both fixed and ranged",
                r.name
            )));
        }
    }
    Ok(())
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Renders the table; rows are in lexicographic order of the ranged values.
pub fn render(spec: &TableSpec, cfg: &Config) -> Result<Vec<u8>, CliError> {
    check(spec)?;
    let rows = cells(spec, cfg)?;
    match spec.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header: Vec<&str> = spec.ranges.iter().map(|r| r.name.as_str()).collect();
            header.push("value");
            let io = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
            w.write_record(&header).map_err(io)?;
            for (point, value) in &rows {
                let mut record: Vec<String> = point.iter().map(i64::to_string).collect();
                record.push(cell_text(value));
                w.write_record(&record).map_err(io)?;
            }
            w.into_inner()
                .map_err(|e| CliError::Usage(format!("csv: {e}")))
        }
        Format::Json => {
            let out: Vec<Value> = rows
                .into_iter()
                .map(|(point, value)| {
                    let mut obj = Map::new();
                    for (r, v) in spec.ranges.iter().zip(point) {
                        obj.insert(r.name.clone(), json!(v));
                    }
                    obj.insert("value".into(), value);
                    Value::Object(obj)
                })
                .collect();
            let mut bytes = serde_json::to_vec_pretty(&out).expect("plain json");
            bytes.push(b'\n');
            Ok(bytes)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        assert_eq!(
            "n=0..8".parse::<Range>().unwrap(),
            Range {
                name: "n".into(),
                lo: 0,
                hi: 8
            }
        );
        assert!("n=1..0".parse::<Range>().unwrap().is_empty());
        assert!("q=0..3".parse::<Range>().is_err());
        assert!("n=0-3".parse::<Range>().is_err());
    }

    #[test]
    fn genocchi_column() {
        let spec = TableSpec {
            family: Family::Genocchi,
            fixed: Params::default(),
            ranges: vec!["n=0..8".parse().unwrap()],
            format: Format::Csv,
        };
        let out = String::from_utf8(render(&spec, &Config::default()).unwrap()).unwrap();
        assert_eq!(
            out,
            "n,value\n0,0\n1,1\n2,-1\n3,0\n4,1\n5,0\n6,-3\n7,0\n8,17\n"
        );
    }
}
