//! Parameter sweeps of the two-qubit model to CSV.

use std::fmt::Write;
use std::str::FromStr;

use qtemp_core::models::{build_two_qubit_xy, TwoQubitXYParams};
use qtemp_core::{verify_universal_relation, Clip, ExtendedReal};
use rayon::prelude::*;

use crate::error::CliError;

pub const CSV_HEADER: &str = "param,beta_S,beta_B,beta_SB,beta_chi,beta_tilde_S,beta_tilde_B,K_SB,b_S,b_B,K_chi,residual";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Beta,
    Lambda,
    OmegaS,
    OmegaB,
}

impl FromStr for Axis {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "beta" => Ok(Axis::Beta),
            "lambda" => Ok(Axis::Lambda),
            "omega_S" => Ok(Axis::OmegaS),
            "omega_B" => Ok(Axis::OmegaB),
            other => Err(CliError::Input(format!(
                "unknown sweep axis {other:?} (expected beta, lambda, omega_S or omega_B)"
            ))),
        }
    }
}

impl Axis {
    fn apply(self, base: &TwoQubitXYParams, v: f64) -> TwoQubitXYParams {
        let mut p = *base;
        match self {
            Axis::Beta => p.beta = v,
            Axis::Lambda => p.lambda = v,
            Axis::OmegaS => p.omega_s = v,
            Axis::OmegaB => p.omega_b = v,
        }
        p
    }
}

fn cell(x: &ExtendedReal) -> String {
    match x {
        ExtendedReal::Finite(v) => num(*v),
        ExtendedReal::PosInfinity => "inf".into(),
        ExtendedReal::NegInfinity => "-inf".into(),
        ExtendedReal::Undefined(_) => "undefined".into(),
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn row(base: &TwoQubitXYParams, axis: Axis, v: f64, clip: Clip) -> Result<String, CliError> {
    let p = axis.apply(base, v);
    let sys = build_two_qubit_xy(&p)?;
    let r = verify_universal_relation(&sys, clip)?;
    let c = &r.coefficients;
    let cells = [
        num(v),
        cell(&r.beta_s),
        cell(&r.beta_b),
        cell(&r.beta_sb),
        cell(&r.beta_chi),
        cell(&r.beta_tilde_s),
        cell(&r.beta_tilde_b),
        num(c.k_sb),
        num(c.b_s),
        num(c.b_b),
        num(c.k_chi),
        cell(&r.residual),
    ];
    Ok(cells.join(","))
}

/// One row per value, in input order. Rows are evaluated in parallel.
pub fn sweep_csv(base: &TwoQubitXYParams, axis: Axis, values: &[f64], clip: Clip) -> Result<String, CliError> {
    if values.is_empty() {
        return Err(CliError::Input("sweep needs at least one value".into()));
    }
    let rows = values
        .par_iter()
        .map(|&v| row(base, axis, v, clip))
        .collect::<Result<Vec<String>, CliError>>()?;
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    writeln!(out, "{CSV_HEADER}").unwrap();
    for r in rows {
        writeln!(out, "{r}").unwrap();
    }
    Ok(out)
}

pub fn parse_values(list: &str) -> Result<Vec<f64>, CliError> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("bad sweep value {t:?}")))
        })
        .collect()
}
