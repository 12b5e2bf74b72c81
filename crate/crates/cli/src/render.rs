//! Output rendering: JSON (byte-stable), CSV, and aligned tables.

use mrm_core::poly::Poly;
use mrm_core::rational::{format_rational, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// A float with 9 significant digits, scientific notation.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn rational_strings(vals: &[Rational]) -> Vec<String> {
    vals.iter().map(format_rational).collect()
}

/// Render an indexed sequence of rationals.
pub fn sequence(label: &str, vals: &[Rational], format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(&rational_strings(vals)).expect("string array"),
        Format::Csv => {
            let mut out = format!("n,{label}\n");
            for (n, v) in vals.iter().enumerate() {
                out.push_str(&format!("{n},{}\n", format_rational(v)));
            }
            out.pop();
            out
        }
        Format::Table => {
            let strs = rational_strings(vals);
            let width = strs.iter().map(String::len).max().unwrap_or(1);
            let mut out = String::new();
            for (n, v) in strs.iter().enumerate() {
                out.push_str(&format!("{n:>4}  {v:>width$}\n"));
            }
            out.pop();
            out
        }
    }
}

fn poly_coeff_strings(p: &Poly) -> Vec<String> {
    rational_strings(p.coeffs())
}

/// Render a polynomial family with optional norms.
pub fn poly_family(polys: &[Poly], norms: Option<&[Rational]>, format: Format) -> String {
    match format {
        Format::Json => {
            let coeffs: Vec<Vec<String>> = polys.iter().map(poly_coeff_strings).collect();
            match norms {
                Some(norms) => serde_json::to_string(&serde_json::json!({
                    "polys": coeffs,
                    "norms": rational_strings(norms),
                }))
                .expect("json"),
                None => serde_json::to_string(&serde_json::json!({ "polys": coeffs })).expect("json"),
            }
        }
        Format::Csv => {
            let mut out = String::new();
            if norms.is_some() {
                out.push_str("n,norm,coefficients\n");
            } else {
                out.push_str("n,coefficients\n");
            }
            for (n, p) in polys.iter().enumerate() {
                let coeffs = poly_coeff_strings(p).join(" ");
                match norms {
                    Some(norms) => {
                        out.push_str(&format!("{n},{},{coeffs}\n", format_rational(&norms[n])))
                    }
                    None => out.push_str(&format!("{n},{coeffs}\n")),
                }
            }
            out.pop();
            out
        }
        Format::Table => {
            let mut out = String::new();
            for (n, p) in polys.iter().enumerate() {
                match norms {
                    Some(norms) => out.push_str(&format!(
                        "P_{n:<2} (norm {})  =  {p}\n",
                        format_rational(&norms[n])
                    )),
                    None => out.push_str(&format!("Q_{n:<2}  =  {p}\n")),
                }
            }
            out.pop();
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mrm_core::rational::rat;

    #[test]
    fn sig9_has_nine_significant_digits() {
        assert_eq!(sig9(1.0 / std::f64::consts::PI), "3.18309886e-1");
        assert_eq!(sig9(0.0), "0.00000000e0");
    }

    #[test]
    fn csv_sequence_shape() {
        let out = sequence("value", &[rat(1), rat(0)], Format::Csv);
        assert_eq!(out, "n,value\n0,1\n1,0");
    }
}
