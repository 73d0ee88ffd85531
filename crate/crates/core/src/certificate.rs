//! Certificate serialization: a self-contained structured-text document.
//!
//! Exact rationals are serialized as "numerator/denominator" strings and
//! reals as 32-significant-digit decimals; floats never serialize
//! coefficients. Keys are fixed: target, basis, x, k0, q, n, coefficients,
//! basisValues, residual, fittedK, resolutions.

use crate::approx::ApproxCertificate;
use crate::decimal::{dd_to_decimal, f64_to_decimal};
use crate::dd::Dd;
use crate::ext::{parse_rational, rational_to_dd, rational_to_ext};
use crate::ExtReal;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

const REAL_DIGITS: usize = 32;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CoeffDoc {
    k: Option<u32>,
    c: String,
    basis_element: String,
}

/// On-disk shape of a certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub target: String,
    pub basis: String,
    pub x: String,
    pub k0: u32,
    pub q: u32,
    pub n: u32,
    coefficients: Vec<CoeffDoc>,
    #[serde(rename = "basisValues")]
    basis_values: Vec<String>,
    pub residual: String,
    #[serde(rename = "fittedK")]
    pub fitted_k: String,
    pub resolutions: BTreeMap<String, String>,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed field {field}: {value}")]
    Field { field: &'static str, value: String },
}

fn rational_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Project an assembled certificate onto the fixed-schema document.
pub fn to_document(cert: &ApproxCertificate) -> CertificateDoc {
    CertificateDoc {
        target: rational_str(&cert.target.alpha),
        basis: cert.target.basis.as_str().to_string(),
        x: rational_str(&cert.target.x),
        k0: cert.target.k0,
        q: cert.target.q,
        n: cert.target.n,
        coefficients: cert
            .coefficients
            .iter()
            .map(|e| CoeffDoc {
                k: e.k,
                c: rational_str(&e.value),
                basis_element: e.basis_element.clone(),
            })
            .collect(),
        basis_values: cert
            .basis_values
            .iter()
            .map(|v| dd_to_decimal(v.value(), REAL_DIGITS))
            .collect(),
        residual: f64_to_decimal(cert.residual, REAL_DIGITS),
        fitted_k: f64_to_decimal(cert.fitted_k, REAL_DIGITS),
        resolutions: cert.resolutions.iter().cloned().collect(),
    }
}

pub fn to_json(cert: &ApproxCertificate) -> String {
    let doc = to_document(cert);
    let mut s = serde_json::to_string_pretty(&doc).expect("certificate serializes");
    s.push('\n');
    s
}

/// Parsed certificate ready for independent re-verification.
#[derive(Clone, Debug)]
pub struct ParsedCertificate {
    pub doc: CertificateDoc,
    pub alpha: BigRational,
    pub coefficients: Vec<(Option<u32>, BigRational, String)>,
    pub basis_values: Vec<Dd>,
    pub residual: f64,
    pub fitted_k: f64,
}

pub fn parse(json: &str) -> Result<ParsedCertificate, CertificateError> {
    let doc: CertificateDoc = serde_json::from_str(json)?;
    let alpha = parse_rational(&doc.target).ok_or(CertificateError::Field {
        field: "target",
        value: doc.target.clone(),
    })?;
    let mut coefficients = Vec::with_capacity(doc.coefficients.len());
    for c in &doc.coefficients {
        let v = parse_rational(&c.c).ok_or(CertificateError::Field {
            field: "coefficients.c",
            value: c.c.clone(),
        })?;
        coefficients.push((c.k, v, c.basis_element.clone()));
    }
    let mut basis_values = Vec::with_capacity(doc.basis_values.len());
    for s in &doc.basis_values {
        let r = parse_rational(s).ok_or(CertificateError::Field {
            field: "basisValues",
            value: s.clone(),
        })?;
        basis_values.push(rational_to_dd(&r));
    }
    let residual = parse_rational(&doc.residual)
        .and_then(|r| num_traits::ToPrimitive::to_f64(&r))
        .ok_or(CertificateError::Field {
            field: "residual",
            value: doc.residual.clone(),
        })?;
    let fitted_k = parse_rational(&doc.fitted_k)
        .and_then(|r| num_traits::ToPrimitive::to_f64(&r))
        .ok_or(CertificateError::Field {
            field: "fittedK",
            value: doc.fitted_k.clone(),
        })?;
    Ok(ParsedCertificate {
        doc,
        alpha,
        coefficients,
        basis_values,
        residual,
        fitted_k,
    })
}

/// Recompute |alpha - sum c_k b_k| from a parsed document.
pub fn recompute_residual(cert: &ParsedCertificate) -> f64 {
    let mut acc = ExtReal::ZERO;
    for ((_, c, _), b) in cert.coefficients.iter().zip(cert.basis_values.iter()) {
        acc = acc + rational_to_ext(c) * ExtReal::exact(*b);
    }
    (rational_to_ext(&cert.alpha) - acc).to_f64().abs()
}

/// Independent verification: the stored residual must match its own
/// recomputation to 1e-20 and stay within the claimed K/n^q bound.
pub struct CertificateCheck {
    pub recomputed_residual: f64,
    pub stored_residual: f64,
    pub residual_matches: bool,
    pub bound_holds: bool,
}

pub fn verify_parsed(cert: &ParsedCertificate) -> CertificateCheck {
    let recomputed = recompute_residual(cert);
    let residual_matches = (recomputed - cert.residual).abs() <= 1e-20;
    let bound = cert.fitted_k / (cert.doc.n as f64).powi(cert.doc.q as i32);
    CertificateCheck {
        recomputed_residual: recomputed,
        stored_residual: cert.residual,
        residual_matches,
        bound_holds: cert.residual <= bound || cert.residual == 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{certify, ApproxTarget, BasisKind, Profile};
    use crate::ext::parse_decimal;

    #[test]
    fn roundtrip_preserves_residual() {
        let target = ApproxTarget {
            alpha: parse_decimal("1.41421356237309505").unwrap(),
            basis: BasisKind::LupuWu,
            x: BigRational::from_integer(1.into()),
            k0: 1,
            q: 1,
            n: 8,
        };
        let cert = certify(&target, Profile::Constant, None).unwrap();
        let json = to_json(&cert);
        let parsed = parse(&json).unwrap();
        let check = verify_parsed(&parsed);
        assert!(
            check.residual_matches,
            "stored {:e} recomputed {:e}",
            check.stored_residual, check.recomputed_residual
        );
        assert!(check.bound_holds);
        // byte-determinism of serialization
        let cert2 = certify(&target, Profile::Constant, None).unwrap();
        assert_eq!(json, to_json(&cert2));
    }

    #[test]
    fn malformed_json_rejected() {
        assert!(parse("{").is_err());
        assert!(parse("{\"target\": \"x\"}").is_err());
    }

    #[test]
    fn schema_keys_are_fixed() {
        let target = ApproxTarget {
            alpha: parse_decimal("0.5").unwrap(),
            basis: BasisKind::LupuWu,
            x: BigRational::from_integer(1.into()),
            k0: 1,
            q: 1,
            n: 4,
        };
        let cert = certify(&target, Profile::Constant, None).unwrap();
        let json = to_json(&cert);
        // the fixed top-level keys appear in declaration order
        let keys = [
            "\"target\"",
            "\"basis\"",
            "\"x\"",
            "\"k0\"",
            "\"q\"",
            "\"n\"",
            "\"coefficients\"",
            "\"basisValues\"",
            "\"residual\"",
            "\"fittedK\"",
            "\"resolutions\"",
        ];
        let mut pos = 0;
        for key in keys {
            let found = json[pos..].find(key).unwrap_or_else(|| panic!("missing {key}"));
            pos += found;
        }
        // rationals never serialize through floats
        for entry in &cert.coefficients {
            assert!(json.contains(&format!(
                "\"{}/{}\"",
                entry.value.numer(),
                entry.value.denom()
            )));
        }
    }
}
