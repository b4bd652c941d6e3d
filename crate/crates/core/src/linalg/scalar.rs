//! Exact rational numbers.
//!
//! Values that fit in a pair of machine words are kept inline and all
//! arithmetic on them goes through 128-bit intermediates; anything larger
//! spills to an arbitrary-precision [`BigRational`]. The representation is
//! canonical (lowest terms, positive denominator, inline whenever it fits),
//! so structural equality is numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseError;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: i64, den: i64 },
    Big(BigRational),
}

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

fn fits(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

impl Scalar {
    /// `num / den`. Panics when `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_i128(n as i128, 1)
    }

    pub fn zero() -> Self {
        Scalar(Repr::Small { num: 0, den: 1 })
    }

    pub fn one() -> Self {
        Scalar(Repr::Small { num: 1, den: 1 })
    }

    fn from_i128(mut num: i128, mut den: i128) -> Self {
        debug_assert!(den != 0);
        if den < 0 {
            num = -num;
            den = -den;
        }
        if den != 1 {
            let g = num.gcd(&den);
            if g > 1 {
                num /= g;
                den /= g;
            }
        }
        if fits(num) && fits(den) {
            Scalar(Repr::Small { num: num as i64, den: den as i64 })
        } else {
            Scalar(Repr::Big(BigRational::new_raw(BigInt::from(num), BigInt::from(den))))
        }
    }

    /// Builds a scalar from an already-reduced or unreduced big rational.
    pub fn from_big(r: BigRational) -> Self {
        // BigRational::new normalises; new_raw values may arrive here too.
        let r = if r.denom().is_negative() || !r.numer().gcd(r.denom()).is_one() {
            BigRational::new(r.numer().clone(), r.denom().clone())
        } else {
            r
        };
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Scalar(Repr::Small { num: n, den: d }),
            _ => Scalar(Repr::Big(r)),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, .. } => BigInt::from(*num),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { num: 1, den: 1 })
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.0, Repr::Small { den: 1, .. }) || matches!(&self.0, Repr::Big(r) if r.is_integer())
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i8,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Repr::Big(r) => Self::from_big(r.recip()),
        })
    }

    pub fn pow(&self, exp: i32) -> Self {
        if exp < 0 {
            return self.recip().expect("negative power of zero").pow(-exp);
        }
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn small(&self) -> Option<(i128, i128)> {
        match self.0 {
            Repr::Small { num, den } => Some((num as i128, den as i128)),
            Repr::Big(_) => None,
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Self {
        Scalar::from_integer(n as i64)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_big(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ParseError;

    /// Accepts `n`, `-n`, `n/d` with arbitrary-size integers.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseError::new(format!("invalid rational `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(ParseError::new(format!("zero denominator in `{s}`")));
        }
        Ok(Scalar::from_big(BigRational::new(n, d)))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.small(), other.small()) {
            (Some((a, b)), Some((c, d))) => (a * d).cmp(&(c * b)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if let (Some((a, b)), Some((c, d))) = (self.small(), rhs.small()) {
            if b == d {
                return Scalar::from_i128(a + c, b);
            }
            return Scalar::from_i128(a * d + c * b, b * d);
        }
        Scalar::from_big(self.to_big() + rhs.to_big())
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if let (Some((a, b)), Some((c, d))) = (self.small(), rhs.small()) {
            if b == d {
                return Scalar::from_i128(a - c, b);
            }
            return Scalar::from_i128(a * d - c * b, b * d);
        }
        Scalar::from_big(self.to_big() - rhs.to_big())
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if let (Some((a, b)), Some((c, d))) = (self.small(), rhs.small()) {
            if a == 0 || c == 0 {
                return Scalar::zero();
            }
            return Scalar::from_i128(a * c, b * d);
        }
        Scalar::from_big(self.to_big() * rhs.to_big())
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, rhs: &'a Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Some((a, b)), Some((c, d))) = (self.small(), rhs.small()) {
            return Scalar::from_i128(a * d, b * c);
        }
        Scalar::from_big(self.to_big() / rhs.to_big())
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small { num, den } => Scalar(Repr::Small { num: -num, den: *den }),
            Repr::Big(r) => Scalar::from_big(-r.clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = &*self - &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

/// Shorthand for `Scalar::new(num, den)`.
pub fn q(num: i64, den: i64) -> Scalar {
    Scalar::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms_and_sign() {
        let s = Scalar::new(6, -4);
        assert_eq!(s.to_string(), "-3/2");
        assert_eq!(s.denom(), BigInt::from(2));
        assert_eq!(Scalar::new(0, -7), Scalar::zero());
    }

    #[test]
    fn spills_to_big_and_back() {
        let big = Scalar::from_integer(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq.0, Repr::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
        let min_plus = Scalar::from_integer(i64::MIN + 1) - Scalar::one();
        assert!(matches!(min_plus.0, Repr::Big(_)));
        assert_eq!(-(-min_plus.clone()), min_plus);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/6".parse::<Scalar>().unwrap(), q(1, 2));
        assert_eq!("-5".parse::<Scalar>().unwrap().to_string(), "-5");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        let huge: Scalar = "123456789012345678901234567891/2".parse().unwrap();
        assert_eq!(huge.to_string(), "123456789012345678901234567891/2");
    }

    #[test]
    fn ordering_across_representations() {
        let huge: Scalar = "100000000000000000000000".parse().unwrap();
        assert!(huge > q(1, 2));
        assert!(-huge.clone() < q(-1, 2));
        assert!(q(1, 3) < q(1, 2));
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-1_000_000_000_000i64..1_000_000_000_000, 1i64..1_000_000_000_000).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn field_ops_agree_with_bigrational(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!((&a + &b).to_big(), a.to_big() + b.to_big());
            prop_assert_eq!((&a - &b).to_big(), a.to_big() - b.to_big());
            prop_assert_eq!((&a * &b).to_big(), a.to_big() * b.to_big());
            if !b.is_zero() {
                prop_assert_eq!((&a / &b).to_big(), a.to_big() / b.to_big());
            }
            prop_assert_eq!(a.cmp(&b), a.to_big().cmp(&b.to_big()));
        }
    }
}
