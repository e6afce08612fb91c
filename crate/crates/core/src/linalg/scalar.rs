use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Coefficient ring of a matrix or complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    /// Residues modulo a prime.
    Prime(u32),
}

impl Ring {
    /// Builds `F_p`, rejecting composite or out-of-range moduli.
    pub fn prime(p: u32) -> Result<Self, Error> {
        if !(2..=65_521).contains(&p) || !is_prime(p) {
            return Err(Error::NotAField(format!("modulus {p} is not a supported prime")));
        }
        Ok(Ring::Prime(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn require_field(self) -> Result<(), Error> {
        if self.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField("integer coefficients".into()))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    /// Image of an integer in this ring.
    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(BigInt::from(v)),
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Ring::Prime(p) => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    /// Accepts `z`, `q` and `f<p>` (case-insensitive).
    fn from_str(s: &str) -> Result<Self, Error> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "z" => Ok(Ring::Integers),
            "q" => Ok(Ring::Rationals),
            _ => {
                let digits = lower
                    .strip_prefix('f')
                    .ok_or_else(|| Error::Parse(format!("unknown ring `{s}` (use z, q or f<p>)")))?;
                let p: u32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown ring `{s}` (use z, q or f<p>)")))?;
                Ring::prime(p)
            }
        }
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A single coefficient. Rationals are kept in lowest terms with positive
/// denominator (guaranteed by `BigRational`); residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u32, p: u32 },
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Int(_) => Ring::Integers,
            Scalar::Rat(_) => Ring::Rationals,
            Scalar::Mod { p, .. } => Ring::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// Product of two scalars over the same ring.
    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => panic!("scalar ring mismatch"),
        }
    }

    /// Integer value when the scalar is integral (residues map to their
    /// canonical representative).
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        match self {
            Scalar::Int(v) => v.to_i64(),
            Scalar::Rat(v) if v.is_integer() => v.to_integer().to_i64(),
            Scalar::Rat(_) => None,
            Scalar::Mod { value, .. } => Some(*value as i64),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) => {
                if v.is_integer() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Parses a scalar written as an integer or `a/b` into the given ring.
pub fn parse_scalar(ring: Ring, text: &str) -> Result<Scalar, Error> {
    let text = text.trim();
    let bad = || Error::Parse(format!("cannot read `{text}` as an element of {ring}"));
    match ring {
        Ring::Rationals => {
            let value = if let Some((n, d)) = text.split_once('/') {
                let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                BigRational::new(n, d)
            } else {
                BigRational::from_integer(BigInt::from_str(text).map_err(|_| bad())?)
            };
            Ok(Scalar::Rat(value))
        }
        Ring::Integers => Ok(Scalar::Int(BigInt::from_str(text).map_err(|_| bad())?)),
        Ring::Prime(p) => {
            let v = BigInt::from_str(text).map_err(|_| bad())?;
            let r = ((v % p) + p) % p;
            let r = if r.is_negative() { r + p } else { r };
            Ok(Scalar::Mod {
                value: u32::try_from(r).map_err(|_| bad())?,
                p,
            })
        }
    }
}
