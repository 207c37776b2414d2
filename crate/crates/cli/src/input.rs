use angrank_core::weil::{parse_label, WeilPolynomial};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::report::int;
use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Label(String),
    /// coefficients from the leading one down to the constant term
    Poly { descending: Vec<BigInt>, q: BigInt },
}

/// `"1,0,-1,-2,-2,0,8"`, leading coefficient first.
pub fn parse_poly(s: &str) -> Result<Vec<BigInt>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| CliError::new("input", format!("bad coefficient `{}`", t.trim()))))
        .collect()
}

impl Input {
    pub fn resolve(&self) -> Result<WeilPolynomial, CliError> {
        match self {
            Input::Label(l) => parse_label(l).map_err(|e| CliError::new("weil_poly", e)),
            Input::Poly { descending, q } => {
                let asc: Vec<BigInt> = descending.iter().rev().cloned().collect();
                WeilPolynomial::from_coeffs(q, asc).map_err(|e| CliError::new("weil_poly", e))
            }
        }
    }

    pub fn echo(&self) -> Value {
        match self {
            Input::Label(l) => json!({ "label": l }),
            Input::Poly { descending, q } => json!({
                "poly": descending.iter().map(int).collect::<Vec<_>>(),
                "q": int(q),
            }),
        }
    }

    pub fn display(&self) -> String {
        match self {
            Input::Label(l) => l.clone(),
            Input::Poly { descending, q } => {
                let c: Vec<String> = descending.iter().map(ToString::to_string).collect();
                format!("{} over q={q}", c.join(","))
            }
        }
    }
}
