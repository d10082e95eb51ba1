use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};

/// Coefficients are stored uniformly as rationals; the coefficient ring
/// decides which values are legal and how they are normalized.
pub type Scalar = BigRational;

/// The coefficient ring `K` of a truncated graded polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoeffRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl CoeffRing {
    /// `F_p`, checking that `p` is prime.
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(AlgebraError::InvalidRing(format!("{p} is not prime")));
        }
        Ok(CoeffRing::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoeffRing::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoeffRing::Integers)
    }

    /// Brings a value into canonical form. For `F_p` this is the
    /// representative in `[0, p)`; integers and rationals are already
    /// canonical as `BigRational`.
    pub fn normalize(&self, x: Scalar) -> Scalar {
        match self {
            CoeffRing::PrimeField(p) => {
                let p = BigInt::from(*p);
                let num = x.numer().mod_floor(&p);
                if x.denom().is_one() {
                    return Scalar::from_integer(num);
                }
                let inv = mod_inverse(&x.denom().mod_floor(&p), &p)
                    .expect("denominator divisible by the characteristic");
                Scalar::from_integer((num * inv).mod_floor(&p))
            }
            _ => x,
        }
    }

    /// Checks that `x` is a legal element (integral over `Z`, finite
    /// denominator mod `p`).
    pub fn admit(&self, x: Scalar) -> Result<Scalar> {
        match self {
            CoeffRing::Integers if !x.is_integer() => Err(AlgebraError::InvalidArgument(format!(
                "{x} is not an integer"
            ))),
            CoeffRing::PrimeField(p) if (x.denom() % BigInt::from(*p)).is_zero() => Err(
                AlgebraError::InvalidArgument(format!("{x} has a denominator divisible by {p}")),
            ),
            _ => Ok(self.normalize(x)),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.normalize(Scalar::from_integer(BigInt::from(n)))
    }

    /// Exact quotient `a / b` inside the coefficient ring.
    pub fn divide(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        if b.is_zero() {
            return Err(AlgebraError::InexactDivision("division by zero".into()));
        }
        let q = a / b;
        match self {
            CoeffRing::Integers if !q.is_integer() => {
                Err(AlgebraError::InexactDivision(format!("{a} / {b} over Z")))
            }
            _ => Ok(self.normalize(q)),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CoeffRing::Integers => "Z".into(),
            CoeffRing::Rationals => "Q".into(),
            CoeffRing::PrimeField(p) => format!("Fp({p})"),
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for CoeffRing {
    type Err = AlgebraError;

    /// Accepts `Z`, `Q`, `Fp(p)`, `Fp:p` and the shorthands `F2`, `F3`, ...
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Z" => return Ok(CoeffRing::Integers),
            "Q" => return Ok(CoeffRing::Rationals),
            _ => {}
        }
        let digits = if let Some(rest) = s.strip_prefix("Fp(") {
            rest.strip_suffix(')')
        } else if let Some(rest) = s.strip_prefix("Fp:") {
            Some(rest)
        } else {
            s.strip_prefix('F')
        };
        let p = digits
            .and_then(|d| d.parse::<u64>().ok())
            .ok_or_else(|| AlgebraError::Parse(format!("unknown coefficient ring `{s}`")))?;
        CoeffRing::prime_field(p)
    }
}

/// Parses `"-12"`, `"+5"` or `"3/4"`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("bad coefficient `{s}`"));
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.abs().is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Serializes integers as decimal strings.
pub fn serialize_integers<S: serde::Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ring_labels() {
        assert_eq!("Z".parse::<CoeffRing>().unwrap(), CoeffRing::Integers);
        assert_eq!("F2".parse::<CoeffRing>().unwrap(), CoeffRing::PrimeField(2));
        assert_eq!("Fp(7)".parse::<CoeffRing>().unwrap(), CoeffRing::PrimeField(7));
        assert_eq!("Fp:11".parse::<CoeffRing>().unwrap(), CoeffRing::PrimeField(11));
        assert!("F4".parse::<CoeffRing>().is_err());
        assert!("R".parse::<CoeffRing>().is_err());
    }

    #[test]
    fn prime_field_normalization() {
        let f3 = CoeffRing::PrimeField(3);
        assert_eq!(f3.from_i64(-1), Scalar::from_integer(2.into()));
        let half = Scalar::new(1.into(), 2.into());
        assert_eq!(f3.normalize(half), Scalar::from_integer(2.into()));
    }

    #[test]
    fn scalar_text_round_trip() {
        for s in ["-12", "5", "3/4", "-7/2", "0"] {
            assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
        }
        assert_eq!(format_scalar(&parse_scalar("+5").unwrap()), "5");
    }
}
