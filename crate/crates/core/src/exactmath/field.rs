use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::MathError;

/// Largest admissible prime modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// The ground field: the rationals or a prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// GF(p), after checking that `p` is a prime below 2^31.
    pub fn prime(p: u64) -> Result<Field, MathError> {
        if p >= MAX_MODULUS {
            return Err(MathError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(MathError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn gf2() -> Field {
        Field::Prime(2)
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u32> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(i64::from(*p)) as u32,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Residue {
                    value: r.to_u32().expect("residue below modulus"),
                    modulus: *p,
                }
            }
        }
    }

    /// The element `num / den`; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, MathError> {
        match self {
            Field::Rationals => {
                if den.is_zero() {
                    return Err(MathError::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                let inv = d.inv().ok_or(MathError::DivisionByZero)?;
                Ok(&self.from_bigint(num) * &inv)
            }
        }
    }

    /// All elements of a finite field in increasing residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        let p = self.order()?;
        Some(
            (0..p)
                .map(|v| Scalar::Residue {
                    value: v,
                    modulus: p,
                })
                .collect(),
        )
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rationals, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Residue { value, modulus }) => p == modulus && value < p,
            _ => false,
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

/// An exact field element. Rationals are kept in lowest terms by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
            Scalar::Residue { value, modulus } => {
                // Fermat: a^(p-2)
                let p = u64::from(*modulus);
                let mut base = u64::from(*value);
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Some(Scalar::Residue {
                    value: acc as u32,
                    modulus: *modulus,
                })
            }
        }
    }

    /// Whether the value is "negative-looking" for printing: a negative rational,
    /// or a residue above p/2 in odd characteristic.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Residue { value, modulus } => *modulus > 2 && *value > modulus / 2,
        }
    }

    fn binary(
        &self,
        rhs: &Scalar,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
        res: impl Fn(u64, u64, u64) -> u64,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rat(a, b)),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Residue {
                value: res(u64::from(*a), u64::from(*b), u64::from(*p)) as u32,
                modulus: *p,
            },
            _ => panic!("mixed-field arithmetic: {self:?} and {rhs:?}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a + b, |a, b, p| (a + b) % p)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a - b, |a, b, p| (a + p - b) % p)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b| a * b, |a, b, p| a * b % p)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, modulus } => {
                if *modulus > 2 && *value > modulus / 2 {
                    write!(f, "-{}", modulus - value)
                } else {
                    write!(f, "{value}")
                }
            }
        }
    }
}
