//! JSON input specs for symbols and test polynomials.
//!
//! A symbol is either `{"coeffs": [[re, im], ...]}` listing `ĥ(1), ĥ(2), …`
//! or a generator `{"kind": "monomial", "n": 3}` /
//! `{"kind": "random", "degree": 8, "seed": 1}`. Polynomials use the same
//! shapes, but their coefficient list starts at degree 0.

use std::path::Path;

use disc_deriv::sampling::{random_poly, random_zero_mean_poly, stream_rng};
use disc_deriv::{AnalyticPoly, SymbolH1};
use num_complex::Complex64;
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Spec {
    Coeffs { coeffs: Vec<[f64; 2]> },
    Generated(Generator),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Generator {
    Monomial { n: usize },
    Random { degree: usize, seed: u64 },
}

/// Reads a spec from inline JSON (anything starting with `{`) or a file.
pub fn load(arg: &str) -> Result<Spec, String> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_owned()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| format!("cannot read {arg}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| format!("invalid spec {arg}: {e}"))
}

fn complexes(coeffs: &[[f64; 2]]) -> Vec<Complex64> {
    coeffs
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect()
}

impl Spec {
    pub fn to_symbol(&self) -> Result<SymbolH1, String> {
        match self {
            Spec::Coeffs { coeffs } => Ok(SymbolH1::from_positive_coeffs(&complexes(coeffs))),
            Spec::Generated(Generator::Monomial { n }) => {
                SymbolH1::monomial(*n).map_err(|e| e.to_string())
            }
            Spec::Generated(Generator::Random { degree, seed }) => {
                let p = random_zero_mean_poly(&mut stream_rng(*seed, 0), (*degree).max(1));
                SymbolH1::try_from(p).map_err(|e| e.to_string())
            }
        }
    }

    pub fn to_poly(&self) -> Result<AnalyticPoly, String> {
        match self {
            Spec::Coeffs { coeffs } if coeffs.is_empty() => Err("empty coefficient list".into()),
            Spec::Coeffs { coeffs } => Ok(AnalyticPoly::new(complexes(coeffs))),
            Spec::Generated(Generator::Monomial { n }) => Ok(AnalyticPoly::z_pow(*n)),
            Spec::Generated(Generator::Random { degree, seed }) => {
                Ok(random_poly(&mut stream_rng(*seed, 0), *degree))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_coeffs_start_at_one() {
        let s = load(r#"{"coeffs": [[1, 0], [0, 2]]}"#)
            .unwrap()
            .to_symbol()
            .unwrap();
        assert_eq!(s.coeff(0), Complex64::new(0.0, 0.0));
        assert_eq!(s.coeff(2), Complex64::new(0.0, 2.0));
    }

    #[test]
    fn generators() {
        let s = load(r#"{"kind": "monomial", "n": 3}"#)
            .unwrap()
            .to_symbol()
            .unwrap();
        assert_eq!(s.degree(), 3);
        assert!(load(r#"{"kind": "monomial", "n": 0}"#)
            .unwrap()
            .to_symbol()
            .is_err());
        let a = load(r#"{"kind": "random", "degree": 5, "seed": 2}"#).unwrap();
        assert_eq!(a.to_symbol().unwrap(), a.to_symbol().unwrap());
        assert_eq!(a.to_poly().unwrap().degree(), 5);
    }

    #[test]
    fn malformed() {
        assert!(load("{not json").is_err());
        assert!(load(r#"{"kind": "spiral"}"#).is_err());
        assert!(load("/nonexistent/spec.json").is_err());
    }
}
