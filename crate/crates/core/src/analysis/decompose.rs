use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::Tables;
use crate::approx::{psi_reg, ri, theta_reg, R_reg};
use crate::error::{domain, Error, Result};
use crate::exact::StepKind;

/// The counting functions that have a regular/oscillatory split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Pi,
    R,
    Theta,
    Psi,
}

impl Component {
    pub const ALL: [Component; 4] = [
        Component::Pi,
        Component::R,
        Component::Theta,
        Component::Psi,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Component::Pi => "pi",
            Component::R => "R",
            Component::Theta => "theta",
            Component::Psi => "psi",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Component {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Component::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .map_or_else(
                || {
                    domain(format!(
                        "unknown function {s:?} (expected pi, R, theta or psi)"
                    ))
                },
                Ok,
            )
    }
}

/// exact = regular + oscillatory, with the oscillatory part defined as the difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decomposition {
    pub x: f64,
    pub exact: f64,
    pub regular: f64,
    pub oscillatory: f64,
}

pub fn decompose(kind: Component, x: f64, tables: &Tables) -> Result<Decomposition> {
    tables.check(x)?;
    let cfg = tables.config();
    let mobius = tables.mobius();
    let (exact, regular) = match kind {
        Component::Pi => {
            if x < 2.0 {
                return domain(format!("π decomposition needs x >= 2, got {x}"));
            }
            (tables.value(StepKind::Pi, x)?, ri(x, mobius, cfg)?)
        }
        Component::R => {
            if x < 2.0 {
                return domain(format!("R decomposition needs x >= 2, got {x}"));
            }
            (
                tables.value(StepKind::Mertens, x)? - x.ln(),
                R_reg(x, mobius, tables.constants(), cfg)?,
            )
        }
        Component::Theta => (
            tables.value(StepKind::Theta, x)?,
            theta_reg(x, mobius, cfg)?,
        ),
        Component::Psi => (tables.value(StepKind::Psi, x)?, psi_reg(x)?),
    };
    Ok(Decomposition {
        x,
        exact,
        regular,
        oscillatory: exact - regular,
    })
}
