use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default characteristic for randomized computations.
pub const DEFAULT_PRIME: u64 = 32003;

/// Scalar context: the rationals or the prime field of a given characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Prime field of characteristic `p`. Characteristics 2 and 3 are refused
    /// (quadric ranks need char != 2) and `p` must fit in 32 bits so products
    /// stay inside a machine word.
    pub fn prime(p: u64) -> Result<Self> {
        if p <= 3 {
            return Err(Error::InvalidField(format!(
                "characteristic {p} is not supported (need a prime > 3)"
            )));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("prime {p} does not fit in 32 bits")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn default_prime() -> Self {
        Field::Prime(DEFAULT_PRIME)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
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
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => Scalar::Mod {
                value: reduce_bigint(n, p),
                modulus: p,
            },
        }
    }

    /// The scalar `num/den`; fails when `den` vanishes in this field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match *self {
            Field::Rational => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone())))
            }
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                Ok(self.from_bigint(num) * d.inv()?)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits in u64")
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

/// Exact field element. Rationals are kept in lowest terms with a positive
/// denominator; residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Mod { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Residue as a machine word; `None` for rationals.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Mod { .. } => None,
        }
    }

    /// True if printing needs a leading minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    fn check_same(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!("mixed scalar contexts: {} and {}", self.field(), other.field());
        }
    }
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
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

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + modulus - b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: a * b % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
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

macro_rules! owned_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign_method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $assign_tr<&Scalar> for Scalar {
            fn $assign_method(&mut self, rhs: &Scalar) {
                *self = (&*self).$method(rhs);
            }
        }
    };
}

owned_binop!(Add, add, AddAssign, add_assign);
owned_binop!(Sub, sub, SubAssign, sub_assign);
owned_binop!(Mul, mul, MulAssign, mul_assign);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_composite_characteristics() {
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(3).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(32001).is_err());
        assert_eq!(Field::prime(32003).unwrap(), Field::Prime(32003));
        assert_eq!(Field::prime(7).unwrap(), Field::Prime(7));
    }

    #[test]
    fn residues_are_canonical() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-1).residue(), Some(6));
        assert_eq!(f.from_i64(15).residue(), Some(1));
        let x = f.from_i64(3);
        assert_eq!((&x * &x.inv().unwrap()).residue(), Some(1));
        assert_eq!((-&f.zero()).residue(), Some(0));
    }

    #[test]
    fn rationals_reduce() {
        let q = Field::Rational;
        let a = q.from_ratio(&BigInt::from(6), &BigInt::from(-4)).unwrap();
        assert_eq!(a.to_string(), "-3/2");
        let b = q.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!((a + b).to_string(), "-1");
        assert!(q.from_ratio(&BigInt::from(1), &BigInt::from(0)).is_err());
    }

    #[test]
    fn ratio_with_vanishing_denominator_mod_p() {
        let f = Field::Prime(5);
        assert_eq!(
            f.from_ratio(&BigInt::from(1), &BigInt::from(10)),
            Err(Error::DivisionByZero)
        );
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half.residue(), Some(3));
    }

    #[test]
    #[should_panic(expected = "mixed scalar contexts")]
    fn mixed_contexts_panic_at_scalar_level() {
        let _ = Field::Prime(5).one() + Field::Rational.one();
    }
}
