//! JSON and CSV encodings. Rationals are always decimal strings.

use hecke_core::interp::{FactoredStructure, PrintedComparison};
use hecke_core::{ExactRational, FormSeries, RationalPolynomial};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = hecke_core::verify::SCHEMA_VERSION;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub numerator: String,
    pub denominator: String,
}

impl From<&ExactRational> for Rational {
    fn from(c: &ExactRational) -> Self {
        Rational {
            numerator: c.numer().to_string(),
            denominator: c.denom().to_string(),
        }
    }
}

impl Rational {
    pub fn to_exact(&self) -> Option<ExactRational> {
        format!("{}/{}", self.numerator, self.denominator).parse().ok()
    }
}

pub fn poly_json(p: &RationalPolynomial) -> Value {
    json!({
        "expr": p.to_expr(),
        "degree": p.degree(),
        "coefficients": p.coeffs().iter().map(Rational::from).collect::<Vec<_>>(),
    })
}

pub fn series_json(f: &FormSeries) -> Value {
    let lo = f.kind.offset();
    let cs = f.coefficients();
    json!({
        "schema_version": SCHEMA_VERSION,
        "form": f.kind.tag(),
        "m": f.m,
        "weight": f.weight.as_ref().map(Rational::from),
        "exponents": (lo..lo + cs.len() as i64).collect::<Vec<_>>(),
        "coefficients": cs.iter().map(Rational::from).collect::<Vec<_>>(),
    })
}

pub fn series_csv(f: &FormSeries) -> String {
    let mut out = String::from("exponent,numerator,denominator\n");
    let lo = f.kind.offset();
    for (k, c) in f.coefficients().iter().enumerate() {
        out += &format!("{},{},{}\n", lo + k as i64, c.numer(), c.denom());
    }
    out
}

pub fn structure_json(fs: &FactoredStructure) -> Value {
    json!({
        "scalar": Rational::from(&fs.scalar),
        "monomial_power": fs.monomial_power,
        "structural_factors": fs
            .structural_factors
            .iter()
            .map(|(f, e)| json!({ "factor": f.label(), "exponent": e }))
            .collect::<Vec<_>>(),
        "core": poly_json(&fs.core),
        "core_irreducible": fs.core_irreducible,
        "core_even": fs.parity_even,
        "expected_core_degree": fs.expected_core_degree,
        "degree_ok": fs.degree_ok(),
        "sign_ok": fs.sign_ok,
    })
}

/// A `discrepancy` record, or `None` when the printed value agrees.
pub fn discrepancy_json(c: &PrintedComparison) -> Option<Value> {
    if c.agrees {
        return None;
    }
    let mut printed = serde_json::Map::new();
    if let Some(p) = &c.printed {
        printed.insert("polynomial".into(), poly_json(p));
        printed.insert("value_at_3".into(), json!(Rational::from(&p.eval_int(3))));
    }
    if let Some(d) = c.printed_degree {
        printed.insert("degree".into(), json!(d));
    }
    printed.insert("provenance".into(), json!("paper"));
    Some(json!({
        "status": "discrepancy",
        "printed": printed,
        "computed": {
            "polynomial": poly_json(&c.computed),
            "value_at_3": Rational::from(&c.computed.eval_int(3)),
            "provenance": "derived",
        },
    }))
}
