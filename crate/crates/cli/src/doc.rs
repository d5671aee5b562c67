//! JSON document schemas: parsing of input documents and rendering of
//! results.  Rationals travel as `"p/q"` strings (reduced, positive
//! denominator), exponent vectors and counts as plain JSON integers.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use quasiord::charseq::CharacteristicSequence;
use quasiord::essential::Groups;
use quasiord::rat::{parse_rational, rational_to_string, RationalVector};
use quasiord::series::CyclotomicRational;

/// Input problems separate into malformed documents (exit 2) and domain
/// rejections from the library (exit 1).
#[derive(Debug)]
pub enum CliError {
    Malformed(String),
    Domain(quasiord::Error),
}

impl From<quasiord::Error> for CliError {
    fn from(e: quasiord::Error) -> Self {
        CliError::Domain(e)
    }
}

pub fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Malformed(msg.into())
}

/// Spec-facing name of a library error.
pub fn error_name(e: &quasiord::Error) -> &'static str {
    use quasiord::Error::*;
    match e {
        NotStrictlyIncreasing(_) => "NotStrictlyIncreasing",
        LexOrderViolated(_) => "LexOrderViolated",
        RedundantExponent(_) => "RedundantExponent",
        BadDimension(_) => "BadDimension",
        NegativeExponent(_) => "NegativeExponent",
        NotASublattice(_) => "NotASublattice",
        DimensionMismatch(_) => "DimensionMismatch",
        NoInteriorWeight => "NoInteriorWeight",
        NonIntegralPairing(_) => "NonIntegralPairing",
        DivergentAtOrigin => "DivergentAtOrigin",
        BlockStructureViolation(_) => "BlockStructureViolation",
        NoPairing(_) => "NoPairing",
        AmbiguousOrder(_) => "AmbiguousOrder",
        InconsistentSystem(_) => "InconsistentSystem",
        NotNormalizable(_) => "NotNormalizable",
        UnknownShape(_) => "UnknownShape",
        GroupMismatch(_) => "GroupMismatch",
        InvalidBranchData(_) => "InvalidBranchData",
    }
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object()
        .ok_or_else(|| malformed(format!("{} must be a JSON object", what)))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value, CliError> {
    m.get(key)
        .ok_or_else(|| malformed(format!("missing field \"{}\"", key)))
}

fn as_usize(v: &Value, what: &str) -> Result<usize, CliError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| malformed(format!("{} must be a nonnegative integer", what)))
}

pub fn expect_kind(v: &Value, kind: &str) -> Result<(), CliError> {
    let m = obj(v, "document")?;
    let got = field(m, "kind")?
        .as_str()
        .ok_or_else(|| malformed("\"kind\" must be a string"))?;
    if got != kind {
        return Err(malformed(format!(
            "expected a \"{}\" document, got \"{}\"",
            kind, got
        )));
    }
    Ok(())
}

pub fn parse_charseq(v: &Value) -> Result<CharacteristicSequence, CliError> {
    expect_kind(v, "charseq")?;
    let m = obj(v, "document")?;
    let d = as_usize(field(m, "d")?, "\"d\"")?;
    let rows = field(m, "lambdas")?
        .as_array()
        .ok_or_else(|| malformed("\"lambdas\" must be an array"))?;
    let mut lambdas = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let entries = row
            .as_array()
            .ok_or_else(|| malformed(format!("lambda {} must be an array", i + 1)))?;
        let mut coords = Vec::with_capacity(entries.len());
        for e in entries {
            let s = e
                .as_str()
                .ok_or_else(|| malformed("rationals must be \"p/q\" strings"))?;
            coords.push(
                parse_rational(s).ok_or_else(|| malformed(format!("bad rational \"{}\"", s)))?,
            );
        }
        lambdas.push(RationalVector::new(coords));
    }
    Ok(CharacteristicSequence::new(d, lambdas))
}

fn parse_exponent_rows(v: &Value, what: &str) -> Result<Vec<Vec<BigInt>>, CliError> {
    let rows = v
        .as_array()
        .ok_or_else(|| malformed(format!("\"{}\" must be an array", what)))?;
    rows.iter()
        .map(|row| {
            let entries = row
                .as_array()
                .ok_or_else(|| malformed(format!("{} entries must be arrays", what)))?;
            entries
                .iter()
                .map(|e| {
                    e.as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| malformed(format!("{} exponents must be integers", what)))
                })
                .collect()
        })
        .collect()
}

pub fn parse_shortform(v: &Value) -> Result<CyclotomicRational, CliError> {
    expect_kind(v, "shortform")?;
    let m = obj(v, "document")?;
    let vars = as_usize(field(m, "vars")?, "\"vars\"")?;
    let g = obj(field(m, "groups")?, "\"groups\"")?;
    let groups = Groups {
        s1: as_usize(field(g, "s1")?, "\"s1\"")?,
        s2: as_usize(field(g, "s2")?, "\"s2\"")?,
        s0: as_usize(field(g, "s0")?, "\"s0\"")?,
    };
    let numerator = parse_exponent_rows(field(m, "numerator")?, "numerator")?;
    let denominator = parse_exponent_rows(field(m, "denominator")?, "denominator")?;
    Ok(CyclotomicRational::new(
        vars,
        groups,
        numerator,
        denominator,
    )?)
}

pub fn parse_pair(v: &Value) -> Result<(CyclotomicRational, CyclotomicRational), CliError> {
    expect_kind(v, "pair")?;
    let m = obj(v, "document")?;
    Ok((
        parse_shortform(field(m, "first")?)?,
        parse_shortform(field(m, "second")?)?,
    ))
}

pub fn big_to_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn rational_vector_json(v: &RationalVector) -> Value {
    Value::Array(
        v.coords
            .iter()
            .map(|x| json!(rational_to_string(x)))
            .collect(),
    )
}

pub fn exponent_rows_json(rows: &[Vec<BigInt>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().map(big_to_json).collect()))
            .collect(),
    )
}

pub fn groups_json(g: &Groups) -> Value {
    json!({ "s1": g.s1, "s2": g.s2, "s0": g.s0 })
}

pub fn shortform_json(cr: &CyclotomicRational) -> Value {
    json!({
        "kind": "shortform",
        "vars": cr.vars,
        "groups": groups_json(&cr.groups),
        "numerator": exponent_rows_json(&cr.numerator),
        "denominator": exponent_rows_json(&cr.denominator),
    })
}
