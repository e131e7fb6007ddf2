//! JSON polynomials, CSV root tables and SVG scatter plots.
//!
//! JSON: `{"slope":"p/q","ring":…,"coeffs":[…]}` with ascending coefficients.
//! Integer coefficients are JSON numbers of any size, generic coefficients
//! are lists of `{"i","j","c"}` terms with `c` a decimal string, and numeric
//! coefficients are `[re, im]` pairs with the cone orders under `"params"`.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Number, Value};
use thiserror::Error;

use crate::pleating::RootSet;
use crate::ring::{GeneratorParams, Laurent, Order, PolyC, PolyL, PolyZ};
use crate::slope::Slope;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("bad slope {0:?}")]
    Slope(String),
    #[error("unknown ring {0:?}")]
    Ring(String),
    #[error("malformed coefficient: {0}")]
    Coefficient(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum PolyBody {
    Parabolic(PolyZ),
    Homogeneous(PolyZ),
    Generic(PolyL),
    Numeric(PolyC, GeneratorParams),
}

impl PolyBody {
    pub fn ring_name(&self) -> &'static str {
        match self {
            PolyBody::Parabolic(_) => "parabolic",
            PolyBody::Homogeneous(_) => "homogeneous",
            PolyBody::Generic(_) => "generic",
            PolyBody::Numeric(..) => "numeric",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyRecord {
    pub slope: Slope,
    pub body: PolyBody,
}

#[derive(Serialize, Deserialize)]
struct RawParams {
    a: String,
    b: String,
}

#[derive(Serialize, Deserialize)]
struct Raw {
    slope: String,
    ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<RawParams>,
    coeffs: Vec<Value>,
}

fn big(c: &BigInt) -> Value {
    Value::Number(Number::from_str(&c.to_string()).expect("integers are valid JSON numbers"))
}

fn unbig(v: &Value) -> Result<BigInt, FormatError> {
    match v {
        Value::Number(n) => n
            .as_str()
            .parse()
            .map_err(|_| FormatError::Coefficient(n.to_string())),
        other => Err(FormatError::Coefficient(other.to_string())),
    }
}

#[derive(Serialize)]
struct Term {
    i: i32,
    j: i32,
    c: String,
}

fn laurent_json(c: &Laurent) -> Value {
    let terms: Vec<Term> = c
        .terms()
        .map(|(i, j, c)| Term {
            i,
            j,
            c: c.to_string(),
        })
        .collect();
    serde_json::to_value(terms).expect("terms serialise")
}

fn laurent_from(v: &Value) -> Result<Laurent, FormatError> {
    let bad = || FormatError::Coefficient(v.to_string());
    let terms = v.as_array().ok_or_else(bad)?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let exp = |k: &str| {
            t.get(k)
                .and_then(Value::as_i64)
                .and_then(|e| i32::try_from(e).ok())
                .ok_or_else(bad)
        };
        let c: BigInt = t
            .get("c")
            .and_then(Value::as_str)
            .and_then(|s| s.parse().ok())
            .ok_or_else(bad)?;
        out.push((c, exp("i")?, exp("j")?));
    }
    Ok(Laurent::from_terms(out))
}

fn complex_json(c: &Complex64) -> Value {
    json!([c.re, c.im])
}

fn complex_from(v: &Value) -> Result<Complex64, FormatError> {
    let bad = || FormatError::Coefficient(v.to_string());
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(Complex64::new(
            re.as_f64().ok_or_else(bad)?,
            im.as_f64().ok_or_else(bad)?,
        )),
        _ => Err(bad()),
    }
}

pub fn to_json(r: &PolyRecord) -> String {
    let (params, coeffs) = match &r.body {
        PolyBody::Parabolic(p) | PolyBody::Homogeneous(p) => {
            (None, p.coeffs().iter().map(big).collect())
        }
        PolyBody::Generic(p) => (None, p.coeffs().iter().map(laurent_json).collect()),
        PolyBody::Numeric(p, prm) => (
            Some(RawParams {
                a: prm.a.to_string(),
                b: prm.b.to_string(),
            }),
            p.coeffs().iter().map(complex_json).collect(),
        ),
    };
    let raw = Raw {
        slope: r.slope.to_string(),
        ring: r.body.ring_name().into(),
        params,
        coeffs,
    };
    serde_json::to_string(&raw).expect("records always serialise")
}

pub fn from_json(text: &str) -> Result<PolyRecord, FormatError> {
    let raw: Raw = serde_json::from_str(text)?;
    let slope: Slope = raw
        .slope
        .parse()
        .map_err(|_| FormatError::Slope(raw.slope.clone()))?;
    let ints = || {
        raw.coeffs
            .iter()
            .map(unbig)
            .collect::<Result<Vec<_>, _>>()
            .map(PolyZ::new)
    };
    let body = match raw.ring.as_str() {
        "parabolic" => PolyBody::Parabolic(ints()?),
        "homogeneous" => PolyBody::Homogeneous(ints()?),
        "generic" => PolyBody::Generic(PolyL::new(
            raw.coeffs
                .iter()
                .map(laurent_from)
                .collect::<Result<_, _>>()?,
        )),
        "numeric" => {
            let p = raw
                .params
                .as_ref()
                .ok_or_else(|| FormatError::Coefficient("numeric ring needs params".into()))?;
            let order = |s: &str| Order::from_str(s).map_err(FormatError::Coefficient);
            let prm = GeneratorParams::new(order(&p.a)?, order(&p.b)?);
            PolyBody::Numeric(
                PolyC::new(
                    raw.coeffs
                        .iter()
                        .map(complex_from)
                        .collect::<Result<_, _>>()?,
                ),
                prm,
            )
        }
        other => return Err(FormatError::Ring(other.into())),
    };
    Ok(PolyRecord { slope, body })
}

/// One line of the root table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootRow {
    pub re: f64,
    pub im: f64,
    pub p: u64,
    pub q: u64,
    pub residual: f64,
}

pub fn root_rows<'a>(sets: impl IntoIterator<Item = &'a RootSet>) -> Vec<RootRow> {
    sets.into_iter()
        .flat_map(|rs| {
            let (p, q) = rs.slope.map_or((0, 0), |s| (s.p(), s.q()));
            rs.roots
                .iter()
                .zip(&rs.residuals)
                .map(move |(r, &residual)| RootRow {
                    re: r.re,
                    im: r.im,
                    p,
                    q,
                    residual,
                })
        })
        .collect()
}

/// `re,im,p,q,residual` with a header line.
pub fn rows_to_csv(rows: &[RootRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv output is utf-8")
}

pub fn rows_from_csv(text: &str) -> Result<Vec<RootRow>, FormatError> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    Ok(rd.deserialize().collect::<Result<_, _>>()?)
}

/// A scatter plot in a unit-square view box scaled to the data bounds.
///
/// `y` grows upwards, so `(x, y)` maps to `(x, 1 − y)` after scaling.
pub fn scatter_svg(points: &[(f64, f64, &str)], radius: f64) -> String {
    let finite = points
        .iter()
        .filter(|(x, y, _)| x.is_finite() && y.is_finite());
    let (mut x0, mut x1, mut y0, mut y1) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y, _) in finite.clone() {
        (x0, x1, y0, y1) = (x0.min(x), x1.max(x), y0.min(y), y1.max(y));
    }
    let span = (x1 - x0).max(y1 - y0);
    let span = if span.is_finite() && span > 0.0 {
        span
    } else {
        1.0
    };
    let pad = 0.05;
    let scale = (1.0 - 2.0 * pad) / span;
    let mut out = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"800\" height=\"800\">\n<rect width=\"1\" height=\"1\" fill=\"white\"/>\n",
    );
    for &(x, y, colour) in finite {
        let (sx, sy) = (pad + (x - x0) * scale, 1.0 - pad - (y - y0) * scale);
        writeln!(
            out,
            "<circle cx=\"{sx:.6}\" cy=\"{sy:.6}\" r=\"{radius}\" fill=\"{colour}\"/>"
        )
        .expect("string write");
    }
    out.push_str("</svg>\n");
    out
}

pub fn roots_svg(rows: &[RootRow]) -> String {
    let pts: Vec<(f64, f64, &str)> = rows.iter().map(|r| (r.re, r.im, "black")).collect();
    scatter_svg(&pts, 0.002)
}
