//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianScalar {
    pub re: Scalar,
    pub im: Scalar,
}

impl GaussianScalar {
    pub fn new(re: Scalar, im: Scalar) -> Self {
        Self { re, im }
    }

    pub fn real(re: Scalar) -> Self {
        Self { re, im: Scalar::zero() }
    }

    pub fn i() -> Self {
        Self { re: Scalar::zero(), im: Scalar::one() }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// |z|² = re² + im².
    pub fn norm_sqr(&self) -> Scalar {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn recip(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn mul_ref(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return Self::real(&self.re * &o.re);
        }
        Self {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn add_ref(&self, o: &Self) -> Self {
        Self { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub_ref(&self, o: &Self) -> Self {
        Self { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self { re: &self.re * s, im: &self.im * s }
    }
}

impl From<Scalar> for GaussianScalar {
    fn from(s: Scalar) -> Self {
        Self::real(s)
    }
}

impl fmt::Display for GaussianScalar {
    /// Renders in the same syntax the expression parser reads back,
    /// e.g. `1/2 - 3/2*i`, `-i`, `2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &Scalar| -> String {
            if im.is_one() {
                "i".to_string()
            } else {
                format!("{im}*i")
            }
        };
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return if self.im.is_negative() {
                write!(f, "-{}", im_part(&self.im.abs()))
            } else {
                write!(f, "{}", im_part(&self.im))
            };
        }
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}", self.re, sign, im_part(&self.im.abs()))
    }
}

impl fmt::Debug for GaussianScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for GaussianScalar {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl Sub for GaussianScalar {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl Mul for GaussianScalar {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl Div for GaussianScalar {
    type Output = Self;
    /// Panics on division by zero.
    fn div(self, o: Self) -> Self {
        self.mul_ref(&o.recip().expect("division by zero"))
    }
}

impl Neg for GaussianScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self { re: -self.re, im: -self.im }
    }
}

impl Field for GaussianScalar {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::real(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_scalar(s: &Scalar) -> Self {
        Self::real(s.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use proptest::prelude::*;

    fn g(a: i64, b: i64) -> GaussianScalar {
        GaussianScalar::new(Scalar::from(a), Scalar::from(b))
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianScalar::i();
        assert_eq!(i.clone() * i, g(-1, 0));
    }

    #[test]
    fn display_forms() {
        assert_eq!(g(0, 1).to_string(), "i");
        assert_eq!(g(0, -1).to_string(), "-i");
        assert_eq!(g(3, -2).to_string(), "3-2*i");
        assert_eq!(GaussianScalar::new(q(1, 2), q(1, 2)).to_string(), "1/2+1/2*i");
        assert_eq!(g(5, 0).to_string(), "5");
    }

    proptest! {
        #[test]
        fn conjugation_is_an_involutive_automorphism(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in -50i64..50) {
            let (z, w) = (g(a, b), g(c, d));
            prop_assert_eq!(z.conj().conj(), z.clone());
            prop_assert_eq!((z.clone() * w.clone()).conj(), z.conj() * w.conj());
            if !w.is_zero() {
                prop_assert_eq!((z.clone() / w.clone()) * w, z);
            }
        }
    }
}
