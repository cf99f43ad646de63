use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Finitely supported Laurent polynomial in `v` with integer coefficients.
/// Used for graded dimensions, graded multiplicities and Cartan entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(degree: i32, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, degree: i32, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.coeffs.entry(degree).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&degree);
        }
    }

    pub fn coeff(&self, degree: i32) -> i64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(&d, &c)| (d + k, c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (d, c) in other.terms() {
            p.add_term(d, c);
        }
        p
    }

    /// `(lowest degree, dense coefficients)`; `(0, [])` for the zero polynomial.
    pub fn coefficient_list(&self) -> (i32, Vec<i64>) {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => (lo, (lo..=hi).map(|d| self.coeff(d)).collect()),
            _ => (0, Vec::new()),
        }
    }

    pub fn from_coefficient_list(low: i32, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (low + i as i32, c)))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (d, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "v")?,
                (1, m) => write!(f, "{m}v")?,
                (d, 1) => write!(f, "v^{d}")?,
                (d, m) => write!(f, "{m}v^{d}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CoefficientList {
    low: i32,
    coeffs: Vec<i64>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (low, coeffs) = self.coefficient_list();
        CoefficientList { low, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let l = CoefficientList::deserialize(d)?;
        Ok(LaurentPoly::from_coefficient_list(l.low, &l.coeffs))
    }
}
