//! JSON encodings of scalars, polynomials and matrices. Every scalar is a
//! string; quadratic elements are `{"a", "b", "d"}` objects.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::frobenius::ExtMatrix;
use crate::matrix::{GroundMatrix, Matrix};
use crate::poly::Polynomial;
use crate::scalar::{Field, QuadElement, QuadField, Scalar, SquareRoot};
use crate::series::{BigFloat, Mag, PadicMatrix, SeriesMatrix};

fn schema(msg: impl Into<String>) -> Error {
    Error::SchemaMismatch(msg.into())
}

pub fn scalar(x: &Scalar) -> Value {
    Value::String(x.to_string())
}

pub fn quad(x: &QuadElement) -> Value {
    json!({"a": x.a.to_string(), "b": x.b.to_string(), "d": x.d.to_string()})
}

pub fn square_root(r: &SquareRoot) -> Value {
    match r {
        SquareRoot::Ground(s) => scalar(s),
        SquareRoot::Quad(q) => quad(q),
    }
}

pub fn poly(f: &Polynomial) -> Value {
    Value::Array(f.coeffs().iter().map(scalar).collect())
}

pub fn matrix(m: &GroundMatrix) -> Value {
    let rows: Vec<Value> = m
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(scalar).collect()))
        .collect();
    json!({"field": m.field().tag(), "n": m.n(), "entries": rows})
}

pub fn quad_matrix(m: &Matrix<QuadElement>) -> Value {
    let rows: Vec<Value> = m
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(quad).collect()))
        .collect();
    json!({"field": m.ctx().base.tag(), "n": m.n(), "extension": m.ctx().d.to_string(), "entries": rows})
}

pub fn ext_matrix(m: &ExtMatrix) -> Value {
    match m {
        ExtMatrix::Ground(g) => matrix(g),
        ExtMatrix::Quad(q) => quad_matrix(q),
    }
}

/// Decimal midpoint with enough digits for the precision, and an upper
/// bound on the distance to the true value that also covers the decimal
/// rounding of the midpoint.
pub fn ball(x: &BigFloat) -> Value {
    let digits = (x.prec() as f64 * std::f64::consts::LOG10_2).ceil() as usize + 3;
    let text = x.to_sci(digits);
    let mag = x.abs_upper().to_f64().max(f64::MIN_POSITIVE);
    let rendering = 10f64.powi(mag.log10().floor() as i32 - digits as i32 + 2);
    let err = x.radius().to_f64() * (1.0 + 1e-6) + rendering;
    json!({"value": text, "error": format!("{err:.3e}")})
}

pub fn float_matrix(m: &Matrix<BigFloat>) -> Value {
    let rows: Vec<Value> = m
        .rows()
        .iter()
        .map(|r| Value::Array(r.iter().map(ball).collect()))
        .collect();
    json!({"n": m.n(), "prec": m.ctx(), "entries": rows})
}

pub fn padic_matrix(m: &PadicMatrix) -> Value {
    json!({
        "p": m.p,
        "cutoff": m.cutoff,
        "valuation_bound": m.valuation_bound.map_or(json!("inf"), |e| json!(e)),
        "value": matrix(&m.value),
    })
}

pub fn series_matrix(m: &SeriesMatrix) -> Value {
    match m {
        SeriesMatrix::Archimedean(f) => json!({"backend": "archimedean", "matrix": float_matrix(f)}),
        SeriesMatrix::Padic(p) => json!({"backend": "padic", "matrix": padic_matrix(p)}),
    }
}

pub fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| schema(format!("missing field {key:?}")))
}

pub fn get_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    get(v, key)?
        .as_str()
        .ok_or_else(|| schema(format!("field {key:?} must be a string")))
}

pub fn get_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    get(v, key)?
        .as_array()
        .ok_or_else(|| schema(format!("field {key:?} must be an array")))
}

pub fn parse_scalar(v: &Value, field: Field) -> Result<Scalar> {
    match v {
        Value::String(s) => Scalar::parse(field, s),
        Value::Number(n) => Scalar::parse(field, &n.to_string()),
        _ => Err(schema("scalar must be a string")),
    }
}

pub fn parse_quad(v: &Value, field: Field) -> Result<QuadElement> {
    let a = parse_scalar(get(v, "a")?, field)?;
    let b = parse_scalar(get(v, "b")?, field)?;
    let d = parse_scalar(get(v, "d")?, field)?;
    let q = QuadElement::new(a.clone(), b.clone(), d.clone())?;
    if q.d != d {
        return Err(schema(format!("radicand {d} is not canonical")));
    }
    Ok(q)
}

pub fn parse_square_root(v: &Value, field: Field) -> Result<SquareRoot> {
    if v.is_object() {
        Ok(SquareRoot::Quad(parse_quad(v, field)?))
    } else {
        Ok(SquareRoot::Ground(parse_scalar(v, field)?))
    }
}

pub fn parse_poly(v: &Value, field: Field) -> Result<Polynomial> {
    let coeffs = v
        .as_array()
        .ok_or_else(|| schema("polynomial must be a coefficient array"))?
        .iter()
        .map(|c| parse_scalar(c, field))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(field, coeffs))
}

pub fn parse_field(v: &Value) -> Result<Field> {
    Field::parse(get_str(v, "field")?)
}

fn square_rows(v: &Value) -> Result<(usize, &Vec<Value>)> {
    let rows = get_array(v, "entries")?;
    let n = match v.get("n") {
        Some(n) => n
            .as_u64()
            .ok_or_else(|| schema("\"n\" must be a nonnegative integer"))? as usize,
        None => rows.len(),
    };
    if rows.len() != n {
        return Err(schema(format!("expected {n} rows, found {}", rows.len())));
    }
    for r in rows {
        let len = r.as_array().map(|r| r.len());
        if len != Some(n) {
            return Err(schema(format!("every row must have {n} entries")));
        }
    }
    Ok((n, rows))
}

pub fn parse_matrix(v: &Value) -> Result<GroundMatrix> {
    let field = parse_field(v)?;
    let (_, rows) = square_rows(v)?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .expect("checked")
                .iter()
                .map(|x| parse_scalar(x, field))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(&field, rows)
}

pub fn parse_ext_matrix(v: &Value) -> Result<ExtMatrix> {
    let Some(ext) = v.get("extension") else {
        return parse_matrix(v).map(ExtMatrix::Ground);
    };
    let field = parse_field(v)?;
    let d = parse_scalar(ext, field)?;
    let ctx = QuadField::adjoining(&d)?;
    if ctx.d != d {
        return Err(schema(format!("extension {d} is not canonical")));
    }
    let (_, rows) = square_rows(v)?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .expect("checked")
                .iter()
                .map(|x| {
                    let q = parse_quad(x, field)?;
                    if q.d != ctx.d {
                        return Err(Error::MixedExtension);
                    }
                    Ok(q)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtMatrix::Quad(Matrix::from_rows(&ctx, rows)?))
}

/// Float matrix from its rendering; each entry becomes a ball whose radius
/// is the reported error.
pub fn parse_float_matrix(v: &Value) -> Result<Matrix<BigFloat>> {
    let prec = get(v, "prec")?
        .as_u64()
        .ok_or_else(|| schema("\"prec\" must be an integer"))? as u32;
    let (_, rows) = square_rows(v)?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .expect("checked")
                .iter()
                .map(|x| {
                    let value = crate::scalar::parse_rational(get_str(x, "value")?)?;
                    let err = crate::scalar::parse_rational(get_str(x, "error")?)?;
                    Ok(BigFloat::from_rational(&value, prec).with_added_radius(Mag::from_rational_up(&err)))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(&prec, rows)
}

pub fn object(pairs: Vec<(&str, Value)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.to_string(), v);
    }
    Value::Object(m)
}
