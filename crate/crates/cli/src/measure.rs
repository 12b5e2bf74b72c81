//! The measure-spec JSON schema and conversions into core types.
//!
//! Exactly one variant is present per spec:
//!
//! ```json
//! {"jacobi":  {"alpha": ["0"], "omega": ["1"], "tail": {"alpha": "1/2", "omega": "5/4"}}}
//! {"moments": {"values": ["1", "0", "1"]}}
//! {"meixner": {"a": "1/2", "b": "1/4"}}
//! ```
//!
//! Rationals are strings, either `"p/q"` or a bare integer.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use mrm_core::jacobi::{jacobi_to_moments, moments_to_jacobi};
use mrm_core::rational::{parse_rational, Rational};
use mrm_core::{JacobiParams, MeixnerParams, MomentSeq};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeasureSpec {
    Jacobi(JacobiSpec),
    Moments(MomentsSpec),
    Meixner(MeixnerSpec),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JacobiSpec {
    pub alpha: Vec<String>,
    pub omega: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<TailSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailSpec {
    pub alpha: String,
    pub omega: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentsSpec {
    pub values: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeixnerSpec {
    pub a: String,
    pub b: String,
}

/// Read the `--measure` argument: inline JSON, `-` for stdin, or a path.
pub fn read_spec(arg: &str) -> Result<MeasureSpec> {
    let text = if arg == "-" {
        std::io::read_to_string(std::io::stdin()).context("reading measure from stdin")?
    } else if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading measure file {arg:?}"))?
    };
    serde_json::from_str(&text).context("parsing measure spec JSON")
}

fn parse_all(vals: &[String]) -> Result<Vec<Rational>> {
    vals.iter().map(|s| Ok(parse_rational(s)?)).collect()
}

impl MeasureSpec {
    pub fn jacobi_params(&self) -> Result<JacobiParams> {
        match self {
            MeasureSpec::Jacobi(j) => {
                let tail = match &j.tail {
                    None => None,
                    Some(t) => Some((parse_rational(&t.alpha)?, parse_rational(&t.omega)?)),
                };
                Ok(JacobiParams::new(parse_all(&j.alpha)?, parse_all(&j.omega)?, tail)?)
            }
            MeasureSpec::Meixner(_) => Ok(self.meixner_params()?.jacobi()),
            MeasureSpec::Moments(m) => {
                let seq = MomentSeq::new(parse_all(&m.values)?)?;
                Ok(moments_to_jacobi(&seq)?.params)
            }
        }
    }

    /// Moments `m_0..m_order`.
    pub fn moments(&self, order: usize) -> Result<MomentSeq> {
        match self {
            MeasureSpec::Moments(m) => {
                if m.values.len() < order + 1 {
                    bail!(
                        "measure provides {} moments but order {order} needs {}",
                        m.values.len(),
                        order + 1
                    );
                }
                Ok(MomentSeq::new(parse_all(&m.values[..=order])?)?)
            }
            _ => Ok(jacobi_to_moments(&self.jacobi_params()?, order)),
        }
    }

    pub fn meixner_params(&self) -> Result<MeixnerParams> {
        match self {
            MeasureSpec::Meixner(p) => {
                Ok(MeixnerParams::new(parse_rational(&p.a)?, parse_rational(&p.b)?)?)
            }
            _ => Err(anyhow!("this subcommand needs a meixner measure spec")),
        }
    }
}
