//! Embedded conjugation and weight tables for the exceptional types.
//!
//! The data lives in `data/appendix.txt`; its grammar is documented at the
//! top of that file.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootsys::{CartanType, Series, Weight, Word};

const APPENDIX: &str = include_str!("../data/appendix.txt");

/// One row of the conjugation table.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ConjRow {
    pub series: Series,
    pub rank: usize,
    /// `Some(l)` for a single value; `None` for the open-ended row.
    pub l: Option<i64>,
    /// Lower end of the open-ended row.
    pub l_min: Option<i64>,
    pub dim: usize,
    pub phi0: CartanType,
    /// 1-based simple indices.
    pub j: Vec<usize>,
    pub orbit: String,
    pub word: Option<Word>,
    /// Number of letters on the first printed line when the word is split.
    pub line_break: Option<usize>,
}

impl ConjRow {
    /// The value of `l` used to compute `Phi_0` for this row.
    pub fn l_value(&self) -> i64 {
        self.l.or(self.l_min).expect("one of l, l_min is set")
    }

    /// The two printed lines of a split word.
    pub fn printed_lines(&self) -> Option<(Word, Word)> {
        let (w, k) = (self.word.as_ref()?, self.line_break?);
        Some((w[..k].to_vec(), w[k..].to_vec()))
    }
}

/// One row of the weight table.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct WeightRow {
    pub series: Series,
    pub rank: usize,
    pub l: i64,
    pub j: Vec<usize>,
    pub wdot0: Weight,
    pub neg_w0j: Weight,
    pub target: i64,
    pub lambda: Weight,
    pub lambda_delta: i64,
    pub printed_lambda: Option<Weight>,
}

/// A bound on `<x, alpha^vee>` for the constrained search.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BoundRow {
    pub series: Series,
    pub rank: usize,
    pub l: i64,
    /// 1-based simple indices sharing this bound.
    pub alphas: Vec<usize>,
    pub lo: i64,
    pub hi: i64,
    pub value: i64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Appendix {
    pub conj: Vec<ConjRow>,
    pub weights: Vec<WeightRow>,
    pub bounds: Vec<BoundRow>,
}

impl Appendix {
    pub fn conj_row(&self, series: Series, rank: usize, l: i64) -> Option<&ConjRow> {
        self.conj.iter().find(|r| {
            r.series == series && r.rank == rank && (r.l == Some(l) || r.l_min.is_some_and(|m| l >= m))
        })
    }

    pub fn weight_row(&self, series: Series, rank: usize, l: i64) -> Option<&WeightRow> {
        self.weights.iter().find(|r| r.series == series && r.rank == rank && r.l == l)
    }

    pub fn bounds_for(&self, series: Series, rank: usize, l: i64) -> Vec<&BoundRow> {
        self.bounds.iter().filter(|r| r.series == series && r.rank == rank && r.l == l).collect()
    }
}

/// The parsed embedded tables.
pub fn appendix() -> &'static Appendix {
    static CELL: OnceLock<Appendix> = OnceLock::new();
    CELL.get_or_init(|| parse(APPENDIX).expect("embedded tables parse"))
}

struct Fields<'a> {
    line: usize,
    map: HashMap<&'a str, Vec<&'a str>>,
}

impl<'a> Fields<'a> {
    fn err(&self, msg: impl std::fmt::Display) -> Error {
        Error::Data(format!("line {}: {msg}", self.line))
    }

    fn all(&self, key: &str) -> &[&'a str] {
        self.map.get(key).map(Vec::as_slice).unwrap_or(&[])
    }

    fn opt(&self, key: &str) -> Result<Option<&'a str>> {
        match self.all(key) {
            [] => Ok(None),
            [v] => Ok(Some(v)),
            _ => Err(self.err(format!("key `{key}` repeated"))),
        }
    }

    fn req(&self, key: &str) -> Result<&'a str> {
        self.opt(key)?.ok_or_else(|| self.err(format!("missing key `{key}`")))
    }

    fn int(&self, key: &str) -> Result<i64> {
        let v = self.req(key)?;
        v.parse().map_err(|_| self.err(format!("bad integer `{v}` for `{key}`")))
    }

    fn list(&self, v: &str) -> Result<Vec<i64>> {
        if v == "-" {
            return Ok(Vec::new());
        }
        v.split(',').map(|t| t.parse().map_err(|_| self.err(format!("bad list entry `{t}`")))).collect()
    }

    fn indices(&self, v: &str) -> Result<Vec<usize>> {
        self.list(v)?
            .into_iter()
            .map(|x| usize::try_from(x).ok().filter(|&x| x > 0).ok_or_else(|| self.err("index must be positive")))
            .collect()
    }

    fn range(&self, key: &str) -> Result<(i64, i64)> {
        let v = self.req(key)?;
        let (a, b) = v.split_once("..").ok_or_else(|| self.err(format!("bad range `{v}`")))?;
        let p = |t: &str| t.parse::<i64>().map_err(|_| self.err(format!("bad range `{v}`")));
        Ok((p(a)?, p(b)?))
    }

    fn cartan(&self) -> Result<(Series, usize)> {
        let t: CartanType = self.req("type")?.parse()?;
        t.as_irreducible().ok_or_else(|| self.err("type must be irreducible"))
    }
}

/// Parses table text in the documented grammar.
pub fn parse(text: &str) -> Result<Appendix> {
    let mut out = Appendix::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let kind = toks.next().unwrap_or_default();
        let mut f = Fields { line: i + 1, map: HashMap::new() };
        for tok in toks {
            let (k, v) = tok.split_once('=').ok_or_else(|| f.err(format!("expected key=value, got `{tok}`")))?;
            f.map.entry(k).or_default().push(v);
        }
        match kind {
            "CONJ" => {
                let (series, rank) = f.cartan()?;
                let l = f.opt("l")?.map(|_| f.int("l")).transpose()?;
                let l_min = f.opt("lmin")?.map(|_| f.int("lmin")).transpose()?;
                if l.is_some() == l_min.is_some() {
                    return Err(f.err("exactly one of `l` and `lmin` is required"));
                }
                let word = f.opt("w")?.map(|w| f.indices(w)).transpose()?;
                let line_break = f.opt("break")?.map(|_| f.int("break")).transpose()?.map(|k| k as usize);
                if line_break.is_some_and(|k| word.as_ref().is_none_or(|w| k >= w.len())) {
                    return Err(f.err("line break outside the word"));
                }
                out.conj.push(ConjRow {
                    series,
                    rank,
                    l,
                    l_min,
                    dim: f.int("dim")? as usize,
                    phi0: f.req("phi0")?.parse()?,
                    j: f.indices(f.req("J")?)?,
                    orbit: f.req("orbit")?.to_string(),
                    word,
                    line_break,
                });
            }
            "WEIGHT" => {
                let (series, rank) = f.cartan()?;
                let printed_lambda = f.opt("printed_lambda")?.map(|v| f.list(v)).transpose()?;
                out.weights.push(WeightRow {
                    series,
                    rank,
                    l: f.int("l")?,
                    j: f.indices(f.req("J")?)?,
                    wdot0: f.list(f.req("wdot0")?)?,
                    neg_w0j: f.list(f.req("negw0j")?)?,
                    target: f.int("target")?,
                    lambda: f.list(f.req("lambda")?)?,
                    lambda_delta: f.int("lambda_delta")?,
                    printed_lambda,
                });
            }
            "BOUND" => {
                let (series, rank) = f.cartan()?;
                let (lo, hi) = f.range("x")?;
                out.bounds.push(BoundRow {
                    series,
                    rank,
                    l: f.int("l")?,
                    alphas: f.indices(f.req("alpha")?)?,
                    lo,
                    hi,
                    value: f.int("value")?,
                });
            }
            other => return Err(f.err(format!("unknown record kind `{other}`"))),
        }
    }
    Ok(out)
}
