//! Replays the embedded conjugation, weight and bound tables against the
//! computations of this crate.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::orbits::bala_carter_dim;
use crate::rootsys::{CartanType, RootSystem, Series};
use crate::steinberg::{e_decomposition, x_bounds};
use crate::subsystems::{cartan_type_of, phi0, verify_conjugation};
use crate::tables::{self, BoundRow, ConjRow, WeightRow};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail { detail: String },
    Skipped { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub table: &'static str,
    /// For example `E8 l=9`.
    pub row: String,
    pub name: String,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub counts: Counts,
    pub elapsed_ms: u128,
}

impl Report {
    /// True iff no check failed.
    pub fn passed(&self) -> bool {
        self.counts.fail == 0
    }

    /// `(row, check name)` of each failure, in table order.
    pub fn failures(&self) -> Vec<(String, String)> {
        self.checks
            .iter()
            .filter(|c| matches!(c.status, Status::Fail { .. }))
            .map(|c| (c.row.clone(), c.name.clone()))
            .collect()
    }
}

/// Which tables to replay.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Table {
    Conjugation,
    Weights,
    Bounds,
}

impl Table {
    pub const ALL: [Table; 3] = [Table::Conjugation, Table::Weights, Table::Bounds];

    fn name(self) -> &'static str {
        match self {
            Table::Conjugation => "conjugation",
            Table::Weights => "weights",
            Table::Bounds => "bounds",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scope {
    pub tables: Vec<Table>,
    /// Restrict to one type.
    pub only: Option<(Series, usize)>,
}

impl Default for Scope {
    fn default() -> Self {
        Scope { tables: Table::ALL.to_vec(), only: None }
    }
}

fn compare<T: PartialEq + std::fmt::Debug>(expected: &T, computed: &T) -> Status {
    if expected == computed {
        Status::Pass
    } else {
        Status::Fail { detail: format!("table {expected:?}, computed {computed:?}") }
    }
}

struct RowChecks {
    table: &'static str,
    row: String,
    out: Vec<Check>,
}

impl RowChecks {
    fn new(table: Table, series: Series, rank: usize, l: String) -> Self {
        RowChecks { table: table.name(), row: format!("{}{rank} l{l}", series.letter()), out: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, status: Status) {
        self.out.push(Check { table: self.table, row: self.row.clone(), name: name.into(), status });
    }
}

fn conj_checks(row: &ConjRow) -> Result<Vec<Check>> {
    let r = RootSystem::build(row.series, row.rank)?;
    let l_text = match (row.l, row.l_min) {
        (Some(l), _) => format!("={l}"),
        (None, Some(m)) => format!(">={m}"),
        (None, None) => String::new(),
    };
    let mut c = RowChecks::new(Table::Conjugation, row.series, row.rank, l_text);
    let s = phi0(&r, row.l_value());
    let phi0_type = cartan_type_of(&r, &s)?;
    c.push("phi0_type", compare(&row.phi0, &phi0_type));
    c.push("dim", compare(&(row.dim as u64), &((r.num_roots() - s.len()) as u64)));
    c.push("orbit_dim", compare(&(row.dim as u64), &bala_carter_dim(&r, &row.orbit)?));
    match &row.word {
        None => {
            let reason = if phi0_type == CartanType::empty() { "Phi_0 empty" } else { "no word printed" };
            c.push("reduced", Status::Skipped { reason: reason.into() });
            c.push("conjugation", Status::Skipped { reason: reason.into() });
        }
        Some(word) => {
            let w = r.word_to_element(word)?;
            let j: Vec<usize> = row.j.iter().map(|i| i - 1).collect();
            c.push("reduced", compare(&word.len(), &w.length(&r)));
            c.push(
                "conjugation",
                if verify_conjugation(&r, &w, &s, &j) {
                    Status::Pass
                } else {
                    Status::Fail { detail: format!("w(Phi_0^+) is not Phi_J^+ for J = {:?}", row.j) }
                },
            );
        }
    }
    Ok(c.out)
}

fn weight_checks(row: &WeightRow) -> Result<Vec<Check>> {
    let r = RootSystem::build(row.series, row.rank)?;
    let mut c = RowChecks::new(Table::Weights, row.series, row.rank, format!("={}", row.l));
    let Some(conj) = tables::appendix().conj_row(row.series, row.rank, row.l) else {
        c.push("word", Status::Fail { detail: "no conjugation row for this l".into() });
        return Ok(c.out);
    };
    let Some(word) = &conj.word else {
        c.push("word", Status::Skipped { reason: "no word printed".into() });
        return Ok(c.out);
    };
    let w = r.word_to_element(word)?;
    let j: Vec<usize> = row.j.iter().map(|i| i - 1).collect();
    let e = e_decomposition(&r, &j, &w, row.l);
    c.push("wdot0", compare(&row.wdot0, &e.wdot0));
    c.push("neg_w0j", compare(&row.neg_w0j, &e.neg_w0j));
    c.push("target", compare(&row.target, &e.target));
    c.push("target_identity", compare(&((row.l - 1) * j.len() as i64), &e.target));
    c.push("lambda", compare(&row.lambda, &e.lambda_max));
    c.push("lambda_delta", compare(&row.lambda_delta, &e.lambda_delta));
    if let Some(printed) = &row.printed_lambda {
        c.push("lambda_printed", compare(printed, &e.lambda_max));
    }
    Ok(c.out)
}

fn bound_checks(row: &BoundRow) -> Result<Vec<Check>> {
    let r = RootSystem::build(row.series, row.rank)?;
    let mut c = RowChecks::new(Table::Bounds, row.series, row.rank, format!("={}", row.l));
    let app = tables::appendix();
    let (Some(conj), Some(wrow)) = (app.conj_row(row.series, row.rank, row.l), app.weight_row(row.series, row.rank, row.l)) else {
        c.push("bounds", Status::Fail { detail: "no conjugation or weight row for this l".into() });
        return Ok(c.out);
    };
    let Some(word) = &conj.word else {
        c.push("bounds", Status::Skipped { reason: "no word printed".into() });
        return Ok(c.out);
    };
    let w = r.word_to_element(word)?;
    let j: Vec<usize> = wrow.j.iter().map(|i| i - 1).collect();
    let bounds = x_bounds(&r, &j, &w, row.l);
    for &a in &row.alphas {
        match bounds.iter().find(|b| b.alpha + 1 == a) {
            None => c.push(format!("alpha{a}"), Status::Fail { detail: format!("alpha{a} lies in J") }),
            Some(b) => {
                c.push(format!("alpha{a}.lo"), compare(&row.lo, &b.lo));
                c.push(format!("alpha{a}.hi"), compare(&row.hi, &b.hi));
                c.push(format!("alpha{a}.value"), compare(&row.value, &b.value));
            }
        }
    }
    Ok(c.out)
}

fn keep(scope: &Scope, series: Series, rank: usize) -> bool {
    scope.only.is_none_or(|t| t == (series, rank))
}

/// Replays every row in scope; rows run in parallel, checks are reported in
/// table order.
pub fn verify_tables(scope: &Scope) -> Result<Report> {
    let start = Instant::now();
    let app = tables::appendix();
    let mut checks = Vec::new();
    for table in &scope.tables {
        let per_row: Vec<Result<Vec<Check>>> = match table {
            Table::Conjugation => {
                app.conj.par_iter().filter(|r| keep(scope, r.series, r.rank)).map(conj_checks).collect()
            }
            Table::Weights => {
                app.weights.par_iter().filter(|r| keep(scope, r.series, r.rank)).map(weight_checks).collect()
            }
            Table::Bounds => app.bounds.par_iter().filter(|r| keep(scope, r.series, r.rank)).map(bound_checks).collect(),
        };
        for row in per_row {
            checks.extend(row?);
        }
    }
    let mut counts = Counts::default();
    for c in &checks {
        match c.status {
            Status::Pass => counts.pass += 1,
            Status::Fail { .. } => counts.fail += 1,
            Status::Skipped { .. } => counts.skipped += 1,
        }
    }
    Ok(Report { checks, counts, elapsed_ms: start.elapsed().as_millis() })
}
