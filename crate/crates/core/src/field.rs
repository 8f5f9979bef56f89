//! Coefficient fields.
//!
//! Everything downstream is generic over [`Field`]. Two implementations
//! exist: [`Rationals`] (exact big rationals) and [`PrimeField`] (residues
//! modulo a prime below 2^31). [`FieldSpec`] is the runtime descriptor used
//! by reports and the command line; [`with_field!`](crate::with_field) turns
//! one into a concrete field.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),
    #[error("cannot parse field {0:?}; expected `q` or `fp:<p>`")]
    Parse(String),
}

/// Runtime name of a field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rationals" {
            return Ok(FieldSpec::Rationals);
        }
        let digits =
            t.strip_prefix("fp:").or_else(|| t.strip_prefix("f")).ok_or_else(|| FieldError::Parse(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| FieldError::Parse(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::Prime(p))
    }
}

/// A field with cheap clonable elements.
///
/// Arithmetic goes through the field value rather than operator overloads
/// so that prime fields can carry their modulus at runtime.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn characteristic(&self) -> u64 {
        self.spec().characteristic()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a + b * c`
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }

    /// Representative in `0..p` for prime fields, `None` in characteristic zero.
    fn residue(&self, _a: &Self::Elem) -> Option<u64> {
        None
    }

    /// Image of a rational number; `None` if the denominator vanishes.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem> {
        let d = self.from_bigint(q.denom());
        self.inv(&d).map(|di| self.mul(&self.from_bigint(q.numer()), &di))
    }
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
}

/// Integers modulo a prime `p < 2^31`. Elements are kept in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !(2..(1u64 << 31)).contains(&p) || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        r
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let m = v.mod_floor(&BigInt::from(self.p));
        m.to_u64().expect("residue fits in u64")
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn residue(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
}

/// Signed representative in `(-p/2, p/2]`, handy for printing.
pub fn balanced(p: u64, a: u64) -> i64 {
    if a > p / 2 {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

/// Render a rational as a small integer when possible.
pub fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() && q.numer().abs() < BigInt::from(i64::MAX) {
        q.numer().to_i64()
    } else {
        None
    }
}

/// Run `$body` with `$k` bound to the concrete field named by `$spec`.
///
/// ```
/// use matschur::field::{Field, FieldSpec};
/// let spec: FieldSpec = "fp:5".parse().unwrap();
/// let three = matschur::with_field!(spec, k => format!("{}", k.from_i64(-2)));
/// assert_eq!(three, "3");
/// ```
#[macro_export]
macro_rules! with_field {
    ($spec:expr, $k:ident => $body:expr) => {
        match $spec {
            $crate::field::FieldSpec::Rationals => {
                let $k = $crate::field::Rationals;
                $body
            }
            $crate::field::FieldSpec::Prime(p) => {
                let $k = $crate::field::PrimeField::new(p).expect("validated prime");
                $body
            }
        }
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_specs() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("fp:7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("F3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert!("fp:8".parse::<FieldSpec>().is_err());
        assert!("fp:2147483659".parse::<FieldSpec>().is_err());
        assert!("z".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn prime_arithmetic() {
        let k = PrimeField::new(7).unwrap();
        assert_eq!(k.from_i64(-1), 6);
        assert_eq!(k.mul(&3, &5), 1);
        assert_eq!(k.inv(&3), Some(5));
        assert_eq!(k.inv(&0), None);
        assert_eq!(k.from_bigint(&BigInt::from(-15)), 6);
        let q = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(k.from_rational(&q), Some(4));
        let k2 = PrimeField::new(2).unwrap();
        assert_eq!(k2.from_rational(&q), None);
    }

    #[test]
    fn largest_prime_below_bound() {
        let k = PrimeField::new(2147483647).unwrap();
        let a = k.from_i64(-5);
        assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), 1);
    }
}
