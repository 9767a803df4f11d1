use serde::Serialize;

use super::decompose::{decompose, Component};
use super::identities::vonkoch_ratio;
use super::Tables;
use crate::approx::{legendre_approx, li_lower2, pnt_approx, LEGENDRE_A};
use crate::error::Result;
use crate::par::{map_slice, Execution};

/// Column names, in output order.
pub const COLUMNS: [&str; 16] = [
    "x",
    "pi",
    "li",
    "ri",
    "legendre",
    "x_over_logx",
    "pi_osc",
    "theta",
    "theta_reg",
    "theta_osc",
    "psi",
    "psi_osc",
    "R",
    "R_reg",
    "R_osc",
    "vonkoch_ratio",
];

/// One grid point. `None` marks a column that is undefined at `x` or whose
/// function group was not selected.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
#[allow(non_snake_case)]
pub struct SampleRow {
    pub x: f64,
    pub pi: Option<u64>,
    pub li: Option<f64>,
    pub ri: Option<f64>,
    pub legendre: Option<f64>,
    pub x_over_logx: Option<f64>,
    pub pi_osc: Option<f64>,
    pub theta: Option<f64>,
    pub theta_reg: Option<f64>,
    pub theta_osc: Option<f64>,
    pub psi: Option<f64>,
    pub psi_osc: Option<f64>,
    pub R: Option<f64>,
    pub R_reg: Option<f64>,
    pub R_osc: Option<f64>,
    pub vonkoch_ratio: Option<f64>,
}

impl SampleRow {
    /// The float columns after `x` and `pi`, in output order.
    pub fn values(&self) -> [Option<f64>; 14] {
        [
            self.li,
            self.ri,
            self.legendre,
            self.x_over_logx,
            self.pi_osc,
            self.theta,
            self.theta_reg,
            self.theta_osc,
            self.psi,
            self.psi_osc,
            self.R,
            self.R_reg,
            self.R_osc,
            self.vonkoch_ratio,
        ]
    }
}

/// Evaluates the selected function groups at `x` (x >= 2).
pub fn sample_row(x: f64, tables: &Tables, functions: &[Component]) -> Result<SampleRow> {
    let mut row = SampleRow {
        x,
        ..Default::default()
    };
    for &kind in functions {
        let d = decompose(kind, x, tables)?;
        match kind {
            Component::Pi => {
                row.pi = Some(d.exact as u64);
                row.li = Some(li_lower2(x, tables.config())?);
                row.ri = Some(d.regular);
                row.legendre = legendre_approx(x, LEGENDRE_A).ok();
                row.x_over_logx = pnt_approx(x).ok();
                row.pi_osc = Some(d.oscillatory);
                row.vonkoch_ratio = if x >= 3.0 {
                    Some(vonkoch_ratio(x, tables)?)
                } else {
                    None
                };
            }
            Component::Theta => {
                row.theta = Some(d.exact);
                row.theta_reg = Some(d.regular);
                row.theta_osc = Some(d.oscillatory);
            }
            Component::Psi => {
                row.psi = Some(d.exact);
                row.psi_osc = Some(d.oscillatory);
            }
            Component::R => {
                row.R = Some(d.exact);
                row.R_reg = Some(d.regular);
                row.R_osc = Some(d.oscillatory);
            }
        }
    }
    Ok(row)
}

/// Rows for every grid point, in grid order.
pub fn sample_rows(
    xs: &[f64],
    tables: &Tables,
    functions: &[Component],
    mode: Execution,
) -> Result<Vec<SampleRow>> {
    // build the shared series once before fanning out
    for &kind in functions {
        if let Some(&x) = xs.first() {
            decompose(kind, x, tables)?;
        }
    }
    map_slice(xs, mode, |&x| sample_row(x, tables, functions))
        .into_iter()
        .collect()
}
