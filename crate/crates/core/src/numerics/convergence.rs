//! Empirical convergence orders of the truncated edge expansions.
//!
//! For each N the residual is |scale|·ρ_N(center + scale·y) − Σ_{i≤j} stepⁱ·r_i(y).
//! Fitted orders compare consecutive N through log(res_N/res_M)/log(size_M/size_N),
//! measured against the shifted size N′ that the step is built from.

use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use super::density::scaled_density;
use super::{NumericError, PrecisionContext};
use crate::basis::{eval_element, ParamValues};
use crate::cascade::corrected_table;
use crate::catalog::{Edge, EdgeCase, NumericScaling};
use crate::exact::{fmt_q, q_to_f64, Q};

#[derive(Clone, Debug)]
pub struct StudyConfig {
    pub case: EdgeCase,
    /// Highest correction kept.
    pub j: usize,
    pub ns: Vec<u32>,
    pub ys: Vec<f64>,
    pub a: Q,
    pub gamma: Option<Q>,
    pub ctx: PrecisionContext,
}

#[derive(Clone, Debug, Serialize)]
pub struct StudyRow {
    pub n: u32,
    pub size: f64,
    pub y: f64,
    /// Decimal strings with the context's target digit count.
    pub density: String,
    pub approximation: String,
    pub residual: String,
    #[serde(skip)]
    pub residual_value: f64,
}

fn digits(x: &Float, n: u32) -> String {
    x.to_string_radix(10, Some(n.max(1) as usize))
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderFit {
    pub y: Option<f64>,
    pub n_lo: u32,
    pub n_hi: u32,
    pub order: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StudyReport {
    pub case: String,
    pub j: usize,
    pub a: String,
    pub gamma: Option<String>,
    pub working_digits: u32,
    /// Exponent of N′ in step^{j+1}.
    pub predicted_order: f64,
    pub rows: Vec<StudyRow>,
    /// One fit per y and consecutive N pair.
    pub pointwise: Vec<OrderFit>,
    /// Fits of the root-mean-square residual over the y grid.
    pub aggregate: Vec<OrderFit>,
}

/// Exponent of the step in N′: N^{−2/3} at soft edges, N^{−2} at the hard edge.
pub fn step_exponent(case: &EdgeCase) -> f64 {
    if case.edge == Edge::Hard {
        2.0
    } else {
        2.0 / 3.0
    }
}

fn params_for(sc: &NumericScaling) -> ParamValues {
    ParamValues { a: q_to_f64(&sc.a), tau: sc.tau }
}

fn point(cfg: &StudyConfig, n: u32, y: f64) -> Result<StudyRow, NumericError> {
    let (dens, sc) = scaled_density(&cfg.case, n, &cfg.a, cfg.gamma.as_ref(), y, &cfg.ctx)?;
    let table = corrected_table(&cfg.case).map_err(|e| NumericError::Unsupported(e.to_string()))?;
    if table.len() <= cfg.j {
        return Err(NumericError::Unsupported(format!("{} has corrections up to j = {}", cfg.case, table.len() as i64 - 1)));
    }
    let prec = cfg.ctx.bits();
    let params = params_for(&sc);
    let mut approx = Float::with_val(prec, 0);
    let mut w = Float::with_val(prec, 1);
    for r in &table.entries[..=cfg.j] {
        let v = eval_element(r, y, &params, &cfg.ctx).map_err(|e| NumericError::Domain(e.to_string()))?;
        approx += Float::with_val(prec, &w * &v);
        w *= &sc.step;
    }
    let res = Float::with_val(prec, &dens - &approx);
    let d = cfg.ctx.target_digits;
    Ok(StudyRow {
        n,
        size: sc.size.to_f64(),
        y,
        density: digits(&dens, d),
        approximation: digits(&approx, d),
        residual: digits(&res, d),
        residual_value: res.to_f64(),
    })
}

fn fit(lo: (f64, f64), hi: (f64, f64)) -> f64 {
    (lo.1.abs() / hi.1.abs()).ln() / (hi.0 / lo.0).ln()
}

pub fn convergence_study(cfg: &StudyConfig) -> Result<StudyReport, NumericError> {
    if cfg.ns.len() < 2 {
        return Err(NumericError::Domain("a convergence study needs at least two values of N".into()));
    }
    if cfg.ys.is_empty() {
        return Err(NumericError::Domain("empty y grid".into()));
    }
    let mut ns = cfg.ns.clone();
    ns.sort_unstable();
    ns.dedup();
    let jobs: Vec<(u32, f64)> = ns.iter().flat_map(|&n| cfg.ys.iter().map(move |&y| (n, y))).collect();
    let rows = jobs.par_iter().map(|&(n, y)| point(cfg, n, y)).collect::<Result<Vec<_>, _>>()?;

    let at = |n: u32, y: f64| rows.iter().find(|r| r.n == n && r.y == y).expect("grid point");
    let mut pointwise = Vec::new();
    let mut aggregate = Vec::new();
    for pair in ns.windows(2) {
        let (n0, n1) = (pair[0], pair[1]);
        for &y in &cfg.ys {
            let (a, b) = (at(n0, y), at(n1, y));
            pointwise.push(OrderFit { y: Some(y), n_lo: n0, n_hi: n1, order: fit((a.size, a.residual_value), (b.size, b.residual_value)) });
        }
        let rms = |n: u32| {
            let s: f64 = cfg.ys.iter().map(|&y| at(n, y).residual_value.powi(2)).sum();
            (s / cfg.ys.len() as f64).sqrt()
        };
        let (s0, s1) = (at(n0, cfg.ys[0]).size, at(n1, cfg.ys[0]).size);
        aggregate.push(OrderFit { y: None, n_lo: n0, n_hi: n1, order: fit((s0, rms(n0)), (s1, rms(n1))) });
    }
    Ok(StudyReport {
        case: cfg.case.descriptor(),
        j: cfg.j,
        a: fmt_q(&cfg.a),
        gamma: cfg.gamma.as_ref().map(fmt_q),
        working_digits: cfg.ctx.working_digits,
        predicted_order: step_exponent(&cfg.case) * (cfg.j as f64 + 1.0),
        rows,
        pointwise,
        aggregate,
    })
}

impl StudyReport {
    /// Fitted orders of the RMS residual, in increasing N.
    pub fn aggregate_orders(&self) -> Vec<f64> {
        self.aggregate.iter().map(|f| f.order).collect()
    }

    /// The aggregate fit at the largest N pair lies within `tol` of the prediction.
    pub fn agrees(&self, tol: f64) -> bool {
        self.aggregate.last().is_some_and(|f| (f.order - self.predicted_order).abs() <= tol)
    }

    /// Smallest and largest pointwise fitted order.
    pub fn order_range(&self) -> Option<(f64, f64)> {
        let it = self.pointwise.iter().map(|f| f.order);
        let lo = it.clone().fold(f64::INFINITY, f64::min);
        let hi = it.fold(f64::NEG_INFINITY, f64::max);
        (lo.is_finite() && hi.is_finite()).then_some((lo, hi))
    }

    /// Largest |fitted − predicted| over every pointwise and aggregate fit.
    pub fn max_deviation(&self) -> f64 {
        self.pointwise.iter().chain(&self.aggregate).map(|f| (f.order - self.predicted_order).abs()).fold(0.0, f64::max)
    }

    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} j={} a={}{} predicted order {:.4}\n",
            self.case,
            self.j,
            self.a,
            self.gamma.as_ref().map(|g| format!(" gamma={g}")).unwrap_or_default(),
            self.predicted_order
        );
        s.push_str("     N        y         residual\n");
        for r in &self.rows {
            s.push_str(&format!("{:>6} {:>8.3} {:>16.6e}\n", r.n, r.y, r.residual_value));
        }
        for f in &self.aggregate {
            s.push_str(&format!("rms order {} -> {}: {:.4}\n", f.n_lo, f.n_hi, f.order));
        }
        if let Some((lo, hi)) = self.order_range() {
            s.push_str(&format!("fitted orders: min {lo:.4}, max {hi:.4}, predicted {:.4}\n", self.predicted_order));
        }
        s
    }
}
