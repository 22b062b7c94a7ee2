//! Exact scalars: the rationals and prime fields GF(p).
//!
//! Every value carries enough information to identify its field, so mixing
//! elements of different fields is detected rather than silently coerced.
//! The `std::ops` impls panic on such a mix (the same way integer division
//! panics on zero); fallible code paths use the `checked_*` methods.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Largest modulus accepted for `GF(p)`; residues then multiply without
/// overflowing `u64`.
pub const MAX_MODULUS: u64 = (1 << 32) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported maximum {MAX_MODULUS}")]
    ModulusTooLarge(u64),
    #[error("cannot parse {text:?} as an element of {field}")]
    Parse { text: String, field: Field },
    #[error("vector length {found} does not match dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// The base field of an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// `GF(p)`, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field, ScalarError> {
        if p > MAX_MODULUS {
            return Err(ScalarError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals, `p` for `GF(p)`.
    pub fn characteristic(&self) -> u64 {
        match *self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field. Fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Parses `"a"` or `"a/b"` (rationals) or a decimal residue (prime field).
    ///
    /// Rational input need not be reduced; the result is canonical.
    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        let err = || ScalarError::Parse {
            text: text.to_string(),
            field: *self,
        };
        let trimmed = text.trim();
        match *self {
            Field::Rationals => {
                let (num, den) = match trimmed.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (trimmed, "1"),
                };
                let num: BigInt = num.parse().map_err(|_| err())?;
                let den: BigInt = den.parse().map_err(|_| err())?;
                if den.is_zero() {
                    return Err(err());
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            Field::Prime(p) => {
                let value: u64 = trimmed.parse().map_err(|_| err())?;
                if value >= p {
                    return Err(err());
                }
                Ok(Scalar::Residue { value, modulus: p })
            }
        }
    }

    /// Elements of `GF(p)`, in residue order. `None` for the rationals.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match *self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..p).map(move |value| Scalar::Residue { value, modulus: p })),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element in canonical form.
///
/// Rationals are kept reduced with a positive denominator; residues lie in
/// `0..p`. Structural equality is therefore value equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn apply(&self, op: ArithOp, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        match op {
            ArithOp::Add => self.checked_add(rhs),
            ArithOp::Sub => self.checked_sub(rhs),
            ArithOp::Mul => self.checked_mul(rhs),
            ArithOp::Div => self.checked_div(rhs),
        }
    }

    fn same_field(&self, rhs: &Scalar) -> Result<(), ScalarError> {
        if self.field() == rhs.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch {
                left: self.field(),
                right: rhs.field(),
            })
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&-rhs)
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    value: (a * b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.same_field(rhs)?;
        let inv = rhs.inv().ok_or(ScalarError::DivisionByZero)?;
        self.checked_mul(&inv)
    }

    /// Numerator and denominator for rationals; `None` for residues.
    pub fn as_ratio(&self) -> Option<(&BigInt, &BigInt)> {
        match self {
            Scalar::Rational(q) => Some((q.numer(), q.denom())),
            Scalar::Residue { .. } => None,
        }
    }

    /// `Some(v)` for a residue `v`; `None` for rationals.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    /// Whether the value is negative. Always false in a prime field.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue { .. } => false,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(s) => s,
                    Err(e) => panic!("{e}"),
                }
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_sum() {
        let q = Field::Rationals;
        let a = q.from_ratio(1, 2).unwrap();
        let b = q.from_ratio(1, 3).unwrap();
        assert_eq!(a.apply(ArithOp::Add, &b).unwrap(), q.from_ratio(5, 6).unwrap());
    }

    #[test]
    fn residue_product() {
        let f = Field::prime(5).unwrap();
        let r = f.from_i64(3).apply(ArithOp::Mul, &f.from_i64(4)).unwrap();
        assert_eq!(r, f.from_i64(2));
        assert_eq!(r.to_string(), "2");
    }

    #[test]
    fn self_subtraction_is_zero() {
        for x in [Field::Rationals.from_ratio(-7, 3).unwrap(), Field::Prime(7).from_i64(4)] {
            assert!(x.apply(ArithOp::Sub, &x).unwrap().is_zero());
        }
    }

    #[test]
    fn errors() {
        let q = Field::Rationals.one();
        let f = Field::Prime(5).one();
        assert!(matches!(q.checked_add(&f), Err(ScalarError::FieldMismatch { .. })));
        assert_eq!(
            q.checked_div(&Field::Rationals.zero()),
            Err(ScalarError::DivisionByZero)
        );
        assert_eq!(Field::prime(9), Err(ScalarError::NotPrime(9)));
        assert_eq!(Field::prime(1), Err(ScalarError::NotPrime(1)));
        assert!(Field::prime(1 << 40).is_err());
    }

    #[test]
    fn parse_and_display_are_canonical() {
        let q = Field::Rationals;
        assert_eq!(q.parse("4/-6").unwrap().to_string(), "-2/3");
        assert_eq!(q.parse("6/3").unwrap().to_string(), "2");
        assert_eq!(q.parse(" -5 ").unwrap(), q.from_i64(-5));
        assert!(q.parse("1/0").is_err());
        assert!(q.parse("x").is_err());
        let f = Field::Prime(5);
        assert_eq!(f.parse("4").unwrap(), f.from_i64(-1));
        assert!(f.parse("5").is_err());
        assert_eq!(f.from_i64(-1).to_string(), "4");
    }

    #[test]
    fn prime_field_inverses() {
        let f = Field::Prime(13);
        for x in f.elements().unwrap().skip(1) {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
        assert!(f.zero().inv().is_none());
    }
}
