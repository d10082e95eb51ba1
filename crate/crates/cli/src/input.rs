//! Loading input documents from JSON or TOML, with field pointers on
//! schema errors.

use std::convert::Infallible;
use std::fmt;
use std::marker::PhantomData;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fitdiv::divisor::{Divisor, DivisorFile};
use fitdiv::gring::json::RingDoc;
use fitdiv::{AlgebraError, CoeffRing, RingSpec};
use serde::de::{self, DeserializeOwned, MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Algebra(AlgebraError),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) => f.write_str(s),
            CliError::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        CliError::Algebra(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn is_toml(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"))
}

/// Parses `text` as TOML or JSON into a generic value.
pub fn parse_value(text: &str, toml_syntax: bool, origin: &str) -> CliResult<serde_json::Value> {
    if toml_syntax {
        let v: toml::Value = toml::from_str(text).map_err(|e| CliError::Input(format!("{origin}: {e}")))?;
        serde_json::to_value(v).map_err(|e| CliError::Input(format!("{origin}: {e}")))
    } else {
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("{origin}: {e}")))
    }
}

/// Deserializes `value`, reporting the path of the first offending field.
pub fn from_value<T: DeserializeOwned>(value: serde_json::Value, origin: &str, prefix: &str) -> CliResult<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        let at = match (prefix.is_empty(), path.as_str()) {
            (true, p) => p.to_string(),
            (false, ".") => prefix.to_string(),
            (false, p) => format!("{prefix}.{p}"),
        };
        CliError::Input(format!("{origin}: at `{at}`: {}", e.into_inner()))
    })
}

pub fn read_document<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{origin}: {e}")))?;
    from_value(parse_value(&text, is_toml(path), &origin)?, &origin, "")
}

/// A document given either as a file path or inline in a job file.
#[derive(Clone, Debug)]
pub enum Source<T> {
    Path(PathBuf),
    Inline(T),
}

impl<T: DeserializeOwned + Clone> Source<T> {
    pub fn load(&self, base: &Path) -> CliResult<T> {
        match self {
            Source::Path(p) => read_document(&base.join(p)),
            Source::Inline(t) => Ok(t.clone()),
        }
    }
}

impl<T> FromStr for Source<T> {
    type Err = Infallible;

    fn from_str(s: &str) -> Result<Self, Infallible> {
        Ok(Source::Path(s.into()))
    }
}

impl<T: Serialize> Serialize for Source<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Source::Path(p) => s.collect_str(&p.display()),
            Source::Inline(t) => t.serialize(s),
        }
    }
}

struct SourceVisitor<T>(PhantomData<T>);

impl<'de, T: Deserialize<'de>> Visitor<'de> for SourceVisitor<T> {
    type Value = Source<T>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a file path or an inline document")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
        Ok(Source::Path(v.into()))
    }

    fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<Self::Value, A::Error> {
        T::deserialize(de::value::MapAccessDeserializer::new(map)).map(Source::Inline)
    }
}

impl<'de, T: Deserialize<'de>> Deserialize<'de> for Source<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(SourceVisitor(PhantomData))
    }
}

/// A coefficient ring written as `Z`, `Q`, `F2`, `Fp:7` or `Fp(7)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coeffs(pub CoeffRing);

impl FromStr for Coeffs {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, AlgebraError> {
        s.parse().map(Coeffs)
    }
}

impl Serialize for Coeffs {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.label())
    }
}

impl<'de> Deserialize<'de> for Coeffs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// A single divisor: a document, or `generic:D` for the tautological
/// divisor of degree `D`, or `point:D` for `x^D` over the coefficients.
#[derive(Clone, Debug)]
pub enum DivisorSource {
    Generic(usize),
    Point(usize),
    Doc(Source<DivisorFile>),
}

impl DivisorSource {
    /// Builds the divisor. Named divisors use `trunc`, or `default_trunc`
    /// when it is absent; documents keep their own truncation unless
    /// `trunc` is given.
    pub fn load(
        &self,
        base: &Path,
        coeffs: Option<Coeffs>,
        trunc: Option<u32>,
        default_trunc: impl Fn(usize) -> u32,
    ) -> CliResult<Divisor> {
        let k = coeffs.map(|c| c.0).unwrap_or(CoeffRing::Integers);
        Ok(match self {
            DivisorSource::Generic(d) => Divisor::tautological("u", *d, k, trunc.unwrap_or(default_trunc(*d)))?,
            DivisorSource::Point(d) => {
                Divisor::point_power(&RingSpec::new(k, vec![], trunc.unwrap_or(default_trunc(*d)))?, *d)
            }
            DivisorSource::Doc(src) => {
                let mut file = src.load(base)?;
                override_ring(&mut file.base, coeffs, trunc);
                file.load()?
            }
        })
    }
}

pub fn override_ring(doc: &mut RingDoc, coeffs: Option<Coeffs>, trunc: Option<u32>) {
    if let Some(c) = coeffs {
        doc.coeffs = c.0.label();
    }
    if let Some(t) = trunc {
        doc.trunc = t;
    }
}

impl FromStr for DivisorSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let degree = |rest: &str| rest.parse::<usize>().map_err(|_| format!("bad degree in `{s}`"));
        if let Some(rest) = s.strip_prefix("generic:") {
            Ok(DivisorSource::Generic(degree(rest)?))
        } else if let Some(rest) = s.strip_prefix("point:") {
            Ok(DivisorSource::Point(degree(rest)?))
        } else {
            Ok(DivisorSource::Doc(Source::Path(s.into())))
        }
    }
}

impl Serialize for DivisorSource {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            DivisorSource::Generic(d) => s.collect_str(&format_args!("generic:{d}")),
            DivisorSource::Point(d) => s.collect_str(&format_args!("point:{d}")),
            DivisorSource::Doc(src) => src.serialize(s),
        }
    }
}

struct DivisorVisitor;

impl<'de> Visitor<'de> for DivisorVisitor {
    type Value = DivisorSource;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("`generic:D`, `point:D`, a file path or an inline divisor document")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_map<A: MapAccess<'de>>(self, map: A) -> Result<Self::Value, A::Error> {
        DivisorFile::deserialize(de::value::MapAccessDeserializer::new(map)).map(|f| DivisorSource::Doc(Source::Inline(f)))
    }
}

impl<'de> Deserialize<'de> for DivisorSource {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(DivisorVisitor)
    }
}
