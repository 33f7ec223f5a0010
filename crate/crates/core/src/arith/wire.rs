//! JSON wire forms.
//!
//! Integers inside rationals travel as decimal strings so consumers limited
//! to 64-bit numbers do not silently lose precision.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, BigRational, BivarPoly, LambdaSeries, Term};
use crate::error::{Error, Result};

/// `{ "xp": a, "yp": b, "num": "...", "den": "..." }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub xp: u32,
    pub yp: u32,
    pub num: String,
    pub den: String,
}

impl From<&Term> for TermJson {
    fn from(t: &Term) -> Self {
        TermJson {
            xp: t.xp,
            yp: t.yp,
            num: t.coeff.numer().to_string(),
            den: t.coeff.denom().to_string(),
        }
    }
}

impl TryFrom<&TermJson> for Term {
    type Error = Error;
    fn try_from(t: &TermJson) -> Result<Term> {
        let coeff = parse_rational(&format!("{}/{}", t.num, t.den))?;
        Ok(Term {
            xp: t.xp,
            yp: t.yp,
            coeff,
        })
    }
}

pub fn poly_to_json(p: &BivarPoly) -> Vec<TermJson> {
    p.canonical_terms().iter().map(TermJson::from).collect()
}

pub fn poly_from_json(terms: &[TermJson]) -> Result<BivarPoly> {
    let mut p = BivarPoly::zero();
    for t in terms {
        let t = Term::try_from(t)?;
        p.add_term(t.xp, t.yp, t.coeff);
    }
    Ok(p)
}

/// `{ "order": N, "coeffs": [[term, ...], ...] }` with one entry per power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub coeffs: Vec<Vec<TermJson>>,
}

impl From<&LambdaSeries> for SeriesJson {
    fn from(s: &LambdaSeries) -> Self {
        SeriesJson {
            order: s.order(),
            coeffs: s.coeffs().iter().map(poly_to_json).collect(),
        }
    }
}

impl TryFrom<&SeriesJson> for LambdaSeries {
    type Error = Error;
    fn try_from(s: &SeriesJson) -> Result<LambdaSeries> {
        if s.coeffs.len() != s.order + 1 {
            return Err(Error::Parse(format!(
                "series of order {} must carry {} coefficients, found {}",
                s.order,
                s.order + 1,
                s.coeffs.len()
            )));
        }
        let coeffs = s
            .coeffs
            .iter()
            .map(|c| poly_from_json(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(LambdaSeries::from_coeffs(coeffs))
    }
}

pub fn series_to_json_string(s: &LambdaSeries) -> String {
    serde_json::to_string(&SeriesJson::from(s)).expect("series serialization cannot fail")
}

pub fn series_from_json_str(text: &str) -> Result<LambdaSeries> {
    let wire: SeriesJson = serde_json::from_str(text)?;
    LambdaSeries::try_from(&wire)
}

/// Serde adapter storing a rational as `"num/den"`.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::super::format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of `"num/den"` strings.
pub mod rational_vec_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(super::super::format_rational).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        strings
            .iter()
            .map(|t| parse_rational(t).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use proptest::prelude::*;

    #[test]
    fn term_schema() {
        let p = BivarPoly::monomial(rat(-3, 2), 2, 1);
        let json = serde_json::to_value(poly_to_json(&p)).unwrap();
        assert_eq!(
            json,
            serde_json::json!([{ "xp": 2, "yp": 1, "num": "-3", "den": "2" }])
        );
    }

    #[test]
    fn wrong_length_is_rejected() {
        let text = r#"{"order":2,"coeffs":[[]]}"#;
        assert!(series_from_json_str(text).is_err());
    }

    #[test]
    fn huge_integers_survive() {
        let big = crate::arith::factorial(40);
        let p = BivarPoly::constant(BigRational::from_integer(big));
        let s = LambdaSeries::constant(p, 0);
        let back = series_from_json_str(&series_to_json_string(&s)).unwrap();
        assert_eq!(back, s);
    }

    proptest! {
        #[test]
        fn series_json_round_trip(
            terms in proptest::collection::vec((0usize..4, 0u32..5, 0u32..5, -50i64..50, 1i64..9), 0..12)
        ) {
            let mut s = LambdaSeries::zero(3);
            for (n, xp, yp, num, den) in terms {
                s.add_at(n, &BivarPoly::monomial(rat(num, den), xp, yp));
            }
            let back = series_from_json_str(&series_to_json_string(&s)).unwrap();
            prop_assert_eq!(back, s);
        }
    }
}
