//! JSON carriers for forms.
//!
//! Exact: `{ "degree": d, "coeffs": [[a_num, a_den, b_num, b_den], ...] }`
//! with integers as decimal strings. Complex: `{ "degree": d, "coeffs": [[re, im], ...] }`.
//! Index `i` is the coefficient of `z^i w^(d-i)`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{BinaryForm, ComplexF, ComplexForm, CycRat, ExactForm, FormError, Rational};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactFormJson {
    pub degree: usize,
    pub coeffs: Vec<[String; 4]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexFormJson {
    pub degree: usize,
    pub coeffs: Vec<[f64; 2]>,
}

impl From<&ExactForm> for ExactFormJson {
    fn from(f: &ExactForm) -> Self {
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                [
                    c.a.numer().to_string(),
                    c.a.denom().to_string(),
                    c.b.numer().to_string(),
                    c.b.denom().to_string(),
                ]
            })
            .collect();
        ExactFormJson { degree: f.degree(), coeffs }
    }
}

fn big(s: &str) -> Result<BigInt, FormError> {
    s.trim().parse().map_err(|_| FormError::Json(format!("not an integer: {s:?}")))
}

fn ratio(num: &str, den: &str) -> Result<Rational, FormError> {
    let d = big(den)?;
    if d.is_zero() {
        return Err(FormError::Json("zero denominator".into()));
    }
    Ok(Rational::new(big(num)?, d))
}

impl TryFrom<&ExactFormJson> for ExactForm {
    type Error = FormError;
    fn try_from(j: &ExactFormJson) -> Result<Self, FormError> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|[an, ad, bn, bd]| Ok(CycRat::new(ratio(an, ad)?, ratio(bn, bd)?)))
            .collect::<Result<Vec<_>, FormError>>()?;
        BinaryForm::new(j.degree, coeffs)
    }
}

impl From<&ComplexForm> for ComplexFormJson {
    fn from(f: &ComplexForm) -> Self {
        ComplexFormJson {
            degree: f.degree(),
            coeffs: f.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl TryFrom<&ComplexFormJson> for ComplexForm {
    type Error = FormError;
    fn try_from(j: &ComplexFormJson) -> Result<Self, FormError> {
        if j.coeffs.iter().flatten().any(|x| !x.is_finite()) {
            return Err(FormError::Json("non-finite coefficient".into()));
        }
        BinaryForm::new(j.degree, j.coeffs.iter().map(|&[re, im]| ComplexF::new(re, im)).collect())
    }
}

impl ExactForm {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ExactFormJson::from(self)).expect("serializable")
    }
}

impl ComplexForm {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ComplexFormJson::from(self)).expect("serializable")
    }
}

/// Either carrier, distinguished by the width of the coefficient entries.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyForm {
    Exact(ExactForm),
    Complex(ComplexForm),
}

impl AnyForm {
    pub fn from_json_str(text: &str) -> Result<Self, FormError> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| FormError::Json(e.to_string()))?;
        let width = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .and_then(|c| c.first())
            .and_then(|c| c.as_array())
            .map(Vec::len);
        match width {
            Some(2) => {
                let j: ComplexFormJson =
                    serde_json::from_value(v).map_err(|e| FormError::Json(e.to_string()))?;
                Ok(AnyForm::Complex(ComplexForm::try_from(&j)?))
            }
            _ => {
                let j: ExactFormJson =
                    serde_json::from_value(v).map_err(|e| FormError::Json(e.to_string()))?;
                Ok(AnyForm::Exact(ExactForm::try_from(&j)?))
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            AnyForm::Exact(f) => f.degree(),
            AnyForm::Complex(f) => f.degree(),
        }
    }

    pub fn embed(&self) -> ComplexForm {
        match self {
            AnyForm::Exact(f) => f.embed(),
            AnyForm::Complex(f) => f.clone(),
        }
    }
}
