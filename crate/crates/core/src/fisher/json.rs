//! Canonical JSON for certificates and exact values.
//!
//! Rationals are `{"num": N, "den": D}` with JSON integer literals of any
//! size. Irrational values are `{"poly": [...], "lo": R, "hi": R}`: integer
//! coefficients (ascending) of a defining polynomial and an isolating
//! interval. Quadratic values also carry `"sqrt": {"a": R, "b": R, "d": N}`
//! for readability; the reader ignores it.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

use super::cert::{BoundCertificate, Witness};
use super::HarmonicIndexSet;
use crate::algebraic::RealAlgebraic;
use crate::exact::{BigRational, RationalInterval};
use crate::poly::Poly;
use crate::realroots::{classify, default_width, IsolatedRoot, MinCertificate};

const MAX_INPUT: usize = 1 << 20;
const MAX_DIGITS: usize = 400;
const MAX_DEGREE: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate parse error: {0}")]
pub struct CertificateParseError(pub String);

fn err<T>(msg: impl Into<String>) -> Result<T, CertificateParseError> {
    Err(CertificateParseError(msg.into()))
}

fn int_json(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal"))
}

pub fn rational_to_json(r: &BigRational) -> Value {
    json!({"num": int_json(r.numer()), "den": int_json(r.denom())})
}

pub fn value_to_json(v: &RealAlgebraic) -> Value {
    value_to_json_width(v, &default_width())
}

/// As [`value_to_json`], with the isolating interval refined to `width`.
pub fn value_to_json_width(v: &RealAlgebraic, width: &BigRational) -> Value {
    if let Some(r) = v.as_rational() {
        return rational_to_json(&r);
    }
    let root = v.as_isolated().refined(width);
    let poly: Vec<Value> = v
        .defining_poly()
        .primitive_ints()
        .iter()
        .map(int_json)
        .collect();
    let mut m = Map::new();
    m.insert("poly".into(), Value::Array(poly));
    m.insert("lo".into(), rational_to_json(&root.interval().lo));
    m.insert("hi".into(), rational_to_json(&root.interval().hi));
    if let RealAlgebraic::Quad(q) = v {
        m.insert(
            "sqrt".into(),
            json!({
                "a": rational_to_json(q.rational_part()),
                "b": rational_to_json(q.radical_coeff()),
                "d": int_json(q.radicand()),
            }),
        );
    }
    Value::Object(m)
}

fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn certificate_to_json(c: &BoundCertificate) -> Value {
    let mut coeffs = Map::new();
    for (t, f) in &c.coeffs {
        coeffs.insert(t.to_string(), value_to_json(f));
    }
    let witness = match &c.witness {
        Witness::Product { generator, f, z } => json!({
            "kind": "product",
            "generator": value_to_json(generator),
            "f": f.iter().map(poly_to_json).collect::<Vec<_>>(),
            "z": z.iter().map(poly_to_json).collect::<Vec<_>>(),
        }),
        Witness::Minimum(_) => json!({"kind": "minimum"}),
    };
    json!({
        "n": c.n,
        "T": c.index_set.indices(),
        "coeffs": Value::Object(coeffs),
        "a": rational_to_json(&c.leading_a),
        "epsilon": c.epsilon,
        "minimizers": c.minimizers.iter().map(value_to_json).collect::<Vec<_>>(),
        "c": value_to_json(&c.c),
        "b": value_to_json(&c.b),
        "residual_zero": c.residual_zero,
        "conforming": c.conforming,
        "witness": witness,
    })
}

fn big_int(v: &Value) -> Result<BigInt, CertificateParseError> {
    let Value::Number(n) = v else {
        return err("expected an integer");
    };
    let s = n.to_string();
    if s.len() > MAX_DIGITS {
        return err("integer too long");
    }
    BigInt::from_str(&s).or_else(|_| {
        err(format!(
            "not an integer: {}",
            s.chars().take(40).collect::<String>()
        ))
    })
}

pub fn rational_from_json(v: &Value) -> Result<BigRational, CertificateParseError> {
    let (Some(num), Some(den)) = (v.get("num"), v.get("den")) else {
        return err("expected {num, den}");
    };
    let num = big_int(num)?;
    let den = big_int(den)?;
    if !den.is_positive() {
        return err("denominator must be positive");
    }
    Ok(BigRational::new(num, den))
}

pub fn value_from_json(v: &Value) -> Result<RealAlgebraic, CertificateParseError> {
    if v.get("num").is_some() {
        return Ok(RealAlgebraic::rational(rational_from_json(v)?));
    }
    let (Some(Value::Array(cs)), Some(lo), Some(hi)) = (v.get("poly"), v.get("lo"), v.get("hi"))
    else {
        return err("expected {num, den} or {poly, lo, hi}");
    };
    if cs.len() > MAX_DEGREE + 1 {
        return err("defining polynomial degree too large");
    }
    let coeffs: Vec<BigInt> = cs.iter().map(big_int).collect::<Result<_, _>>()?;
    let p = Poly::from_bigints(&coeffs);
    if p.degree() < 1 {
        return err("defining polynomial must be non-constant");
    }
    let iv = RationalInterval::new(rational_from_json(lo)?, rational_from_json(hi)?)
        .or_else(|_| err("interval with lo > hi"))?;
    let root =
        IsolatedRoot::new(&p, iv).or_else(|e| err(format!("not an isolating interval: {e}")))?;
    Ok(classify(&root))
}

fn poly_from_json(v: &Value) -> Result<Poly, CertificateParseError> {
    let Value::Array(cs) = v else {
        return err("expected a coefficient array");
    };
    if cs.len() > MAX_DEGREE + 1 {
        return err("polynomial degree too large");
    }
    Ok(Poly::new(
        cs.iter()
            .map(rational_from_json)
            .collect::<Result<_, _>>()?,
    ))
}

fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value, CertificateParseError> {
    v.get(k)
        .ok_or_else(|| CertificateParseError(format!("missing field {k}")))
}

pub fn certificate_from_json(s: &str) -> Result<BoundCertificate, CertificateParseError> {
    if s.len() > MAX_INPUT {
        return err("input too large");
    }
    let v: Value = serde_json::from_str(s).or_else(|e| err(e.to_string()))?;
    let n = field(&v, "n")?
        .as_i64()
        .filter(|n| (2..=1_000_000).contains(n));
    let Some(n) = n else {
        return err("n must be an integer in 2..=1000000");
    };
    let Value::Array(ts) = field(&v, "T")? else {
        return err("T must be an array");
    };
    let ts: Vec<u32> = ts
        .iter()
        .map(|t| {
            t.as_u64()
                .and_then(|t| u32::try_from(t).ok())
                .ok_or_else(|| CertificateParseError("bad index".into()))
        })
        .collect::<Result<_, _>>()?;
    let index_set = HarmonicIndexSet::new(ts).or_else(|e| err(e.to_string()))?;
    let Value::Object(cm) = field(&v, "coeffs")? else {
        return err("coeffs must be an object");
    };
    let mut coeffs = Vec::new();
    for (k, val) in cm {
        let t: u32 = k
            .parse()
            .or_else(|_| err("coefficient key must be an index"))?;
        coeffs.push((t, value_from_json(val)?));
    }
    let leading_a = rational_from_json(field(&v, "a")?)?;
    let epsilon = field(&v, "epsilon")?.as_u64().filter(|e| *e <= 1);
    let Some(epsilon) = epsilon else {
        return err("epsilon must be 0 or 1");
    };
    let Value::Array(ms) = field(&v, "minimizers")? else {
        return err("minimizers must be an array");
    };
    if ms.len() > 64 {
        return err("too many minimizers");
    }
    let minimizers: Vec<RealAlgebraic> =
        ms.iter().map(value_from_json).collect::<Result<_, _>>()?;
    let c = value_from_json(field(&v, "c")?)?;
    let b = value_from_json(field(&v, "b")?)?;
    let residual_zero = field(&v, "residual_zero")?.as_bool().unwrap_or(false);
    let conforming = v.get("conforming").and_then(Value::as_bool).unwrap_or(true);
    let w = field(&v, "witness")?;
    let witness = match field(w, "kind")?.as_str() {
        Some("product") => {
            let generator = value_from_json(field(w, "generator")?)?;
            let list = |k: &str| -> Result<Vec<Poly>, CertificateParseError> {
                match field(w, k)? {
                    Value::Array(a) if a.len() <= 64 => a.iter().map(poly_from_json).collect(),
                    _ => err(format!("{k} must be a short array")),
                }
            };
            Witness::Product {
                generator,
                f: list("f")?,
                z: list("z")?,
            }
        }
        Some("minimum") => {
            // Reconstructed from the stated values; verification recomputes.
            let argmin_points = minimizers
                .iter()
                .map(|u| {
                    if u.signum() < 0 {
                        Ok(u.clone())
                    } else {
                        u.sqrt()
                    }
                })
                .collect::<Result<Vec<_>, _>>()
                .or_else(|e| err(e.to_string()))?;
            Witness::Minimum(MinCertificate {
                argmin_points,
                argmin_u: minimizers.clone(),
                min_value: c.neg(),
                multiplicity_pattern: vec![],
            })
        }
        _ => return err("witness kind must be product or minimum"),
    };
    Ok(BoundCertificate {
        n,
        index_set,
        coeffs,
        leading_a,
        epsilon: epsilon as u32,
        minimizers,
        c,
        b,
        residual_zero,
        conforming,
        witness,
    })
}
