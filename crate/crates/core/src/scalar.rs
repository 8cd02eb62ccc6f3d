//! Exact ground-field arithmetic: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// The ground field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// Checked constructor for `F_p`; `p` must be a prime below `2^31`.
    pub fn prime(p: u64) -> Result<Field, Error> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Modular { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field. Fails if `den` vanishes in the field.
    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar, Error> {
        let d = self.from_i64(den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(&self.from_i64(num) * &d.inverse()?)
    }

    /// Maps an arbitrary rational into this field.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar, Error> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let reduce = |n: &BigInt| -> u32 {
                    let m = BigInt::from(p);
                    let r = ((n % &m) + &m) % &m;
                    r.to_u32().expect("residue fits")
                };
                let num = Scalar::Modular { value: reduce(q.numer()), modulus: p };
                let den = Scalar::Modular { value: reduce(q.denom()), modulus: p };
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(&num * &den.inverse()?)
            }
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `F(p)` or `Fp`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" || s == "QQ" {
            return Ok(Field::Rationals);
        }
        let inner = s
            .strip_prefix("F(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix('F'));
        match inner.map(|t| t.trim().parse::<u64>()) {
            Some(Ok(p)) => Field::prime(p),
            _ => Err(Error::InvalidField(format!("expected Q or F(p), got `{s}`"))),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
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
/// Rationals are always reduced with a positive denominator (guaranteed by
/// `BigRational`), residues always lie in `[0, p)`, so derived equality is
/// equality of field elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn field_mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => field_mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Modular {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => field_mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => {
                if q.is_negative() {
                    write!(f, "-{}/{}", q.numer().abs(), q.denom())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}
