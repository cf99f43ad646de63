//! Exact scalar fields.
//!
//! Scalars are stored as [`BigRational`] regardless of the field. Over a prime
//! field every scalar is an integer in `0..p`, and all arithmetic goes through
//! the [`Field`] descriptor so the reduction is never forgotten.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// The field all computations of one analysis run over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    /// Integers modulo an odd prime.
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// A prime field of odd characteristic `p < 2^32`.
    pub fn prime(p: u64) -> Result<Field> {
        if p == 2 {
            return Err(Error::Field("characteristic 2 is not supported".into()));
        }
        if p >= 1 << 32 {
            return Err(Error::Field(format!("modulus {p} is too large")));
        }
        if !is_prime(p) {
            return Err(Error::Field(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(&self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_int(BigInt::from(v))
    }

    fn from_int(&self, v: BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::from_integer(v),
            Field::Prime(p) => Scalar::from_integer(v.mod_floor(&BigInt::from(*p))),
        }
    }

    /// Maps a rational number into the field; `None` when the denominator
    /// vanishes modulo the characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Option<Scalar> {
        match self {
            Field::Rationals => Some(q.clone()),
            Field::Prime(_) => {
                let num = self.from_int(q.numer().clone());
                let den = self.from_int(q.denom().clone());
                let inv = self.inv(&den)?;
                Some(self.mul(&num, &inv))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        a.is_one()
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a + b,
            Field::Prime(_) => self.from_int(a.numer() + b.numer()),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a - b,
            Field::Prime(_) => self.from_int(a.numer() - b.numer()),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match self {
            Field::Rationals => -a,
            Field::Prime(_) => self.from_int(-a.numer()),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            Field::Rationals => a * b,
            Field::Prime(_) => self.from_int(a.numer() * b.numer()),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return None;
        }
        match self {
            Field::Rationals => Some(a.recip()),
            Field::Prime(p) => {
                let p = BigInt::from(*p);
                let e = &p - BigInt::from(2);
                Some(Scalar::from_integer(a.numer().modpow(&e, &p)))
            }
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `acc += a * b`
    pub fn add_mul_assign(&self, acc: &mut Scalar, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *acc = self.add(acc, &self.mul(a, b));
    }

    pub fn dot(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b) {
            self.add_mul_assign(&mut acc, x, y);
        }
        acc
    }

    /// Parses an integer or `p/q` literal into the field.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Field(format!("bad scalar literal `{s}`"));
        let q = if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        } else {
            BigRational::from_integer(s.parse().map_err(|_| bad())?)
        };
        self.from_rational(&q)
            .ok_or_else(|| Error::Field(format!("`{s}` is undefined in characteristic {}", self.characteristic())))
    }

    /// Canonical text form: `p/q` over Q, the residue in `0..p` otherwise.
    pub fn format(&self, a: &Scalar) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    /// Scalar as `f64` for diagnostics only.
    pub fn approx(&self, a: &Scalar) -> f64 {
        a.numer().to_f64().unwrap_or(f64::NAN) / a.denom().to_f64().unwrap_or(f64::NAN)
    }

    /// Whether `a` is a non-negative integer smaller than `bound` (for grids).
    pub fn fits_distinct(&self, count: u64) -> bool {
        match self {
            Field::Rationals => true,
            Field::Prime(p) => count <= *p,
        }
    }

    pub fn is_negative_literal(&self, a: &Scalar) -> bool {
        matches!(self, Field::Rationals) && a.is_negative()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp {p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `Fp <p>`, `Fp:<p>` and `F<p>`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" || s.eq_ignore_ascii_case("rationals") {
            return Ok(Field::Rationals);
        }
        let rest = s
            .strip_prefix("Fp")
            .or_else(|| s.strip_prefix('F'))
            .ok_or_else(|| Error::Field(s.to_string()))?;
        let rest = rest.trim_start_matches([':', ' ']).trim();
        let p: u64 = rest.parse().map_err(|_| Error::Field(s.to_string()))?;
        Field::prime(p)
    }
}
