//! Exact rational scalars.
//!
//! A [`Rat`] is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator. Serialization uses the text grammar `"p"` for
//! integers and `"p/q"` otherwise.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::Error;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.clone().recip())
    }

    /// Parses `"p"` or `"p/q"`.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let mk_err = || Error::Syntax(format!("invalid rational `{s}`"));
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| mk_err())?;
                Ok(Rat(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| mk_err())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| mk_err())?;
                if q.is_zero() {
                    return Err(Error::Syntax(format!("zero denominator in `{s}`")));
                }
                Ok(Rat(BigRational::new(p, q)))
            }
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Rat::parse(s)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl de::Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p\" or \"p/q\", or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                Rat::parse(v).map_err(|e| E::custom(e.to_string()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat::from_int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(BigRational::from_integer(BigInt::from(v))))
            }
        }
        d.deserialize_any(V)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        (&self) / (&rhs)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display() {
        assert_eq!(Rat::parse("3").unwrap(), Rat::from_int(3));
        assert_eq!(Rat::parse("-4/6").unwrap(), Rat::new(-2, 3));
        assert_eq!(Rat::parse("-4/6").unwrap().to_string(), "-2/3");
        assert_eq!(Rat::parse("6/3").unwrap().to_string(), "2");
        assert_eq!(Rat::parse("0/5").unwrap(), Rat::zero());
        assert!(Rat::parse("1/0").is_err());
        assert!(Rat::parse("x").is_err());
    }

    #[test]
    fn negative_denominator_normalizes() {
        let r = Rat::new(1, -2);
        assert_eq!(r.to_string(), "-1/2");
        assert!(r.denom() > &num_bigint::BigInt::from(0));
    }

    #[test]
    fn serde_roundtrip() {
        let r = Rat::new(-7, 3);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, "\"-7/3\"");
        let back: Rat = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
        let from_int: Rat = serde_json::from_str("5").unwrap();
        assert_eq!(from_int, Rat::from_int(5));
    }

    proptest! {
        #[test]
        fn add_neg_is_zero(n in -1000i64..1000, d in 1i64..1000) {
            let r = Rat::new(n, d);
            let z = &r + &(-&r);
            prop_assert!(z.is_zero());
            prop_assert_eq!(z.to_string(), "0");
        }

        #[test]
        fn stored_reduced(n in -1000i64..1000, d in 1i64..1000) {
            let r = Rat::new(n, d);
            let g = num_integer::gcd(r.numer().clone(), r.denom().clone());
            prop_assert!(g == num_bigint::BigInt::from(1) || r.is_zero());
        }

        #[test]
        fn display_parse_roundtrip(n in -10000i64..10000, d in 1i64..10000) {
            let r = Rat::new(n, d);
            prop_assert_eq!(Rat::parse(&r.to_string()).unwrap(), r);
        }
    }
}
