//! Exact rational and Gaussian-rational scalars.
//!
//! [`Rat`] is an arbitrary-precision rational (always reduced, positive
//! denominator — guaranteed by `num-rational`). [`CRat`] is a pair of
//! rationals forming a Gaussian rational, the coordinate field for every
//! parameter in this crate. Arithmetic is exact and equality is decidable.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Build a rational from an integer pair, reducing.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer rational.
pub fn rati(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// True when `x` is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// True when `2x` is an integer.
pub fn is_half_integer(x: &Rat) -> bool {
    let two = BigInt::from(2);
    (x.denom().is_one()) || (*x.denom() == two)
}

/// `x` as an `i64` when it is a small integer.
pub fn as_i64(x: &Rat) -> Option<i64> {
    if !is_integer(x) {
        return None;
    }
    let n = x.numer();
    i64::try_from(n.clone()).ok()
}

/// True when `x` is an integer with `x <= 0`.
pub fn is_nonpositive_integer(x: &Rat) -> bool {
    is_integer(x) && !x.is_positive()
}

/// Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CRat {
    pub re: Rat,
    pub im: Rat,
}

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        CRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rat(rati(n))
    }

    pub fn zero() -> Self {
        Self::from_i64(0)
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// The real part when the imaginary part vanishes.
    pub fn as_real(&self) -> Option<&Rat> {
        if self.is_real() {
            Some(&self.re)
        } else {
            None
        }
    }

    /// Real integer contents, if any.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.is_real() && is_integer(&self.re) {
            Some(self.re.numer().clone())
        } else {
            None
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_real().and_then(as_i64)
    }

    /// True when this is a real integer `<= 0` (a pole of Γ).
    pub fn is_nonpositive_integer(&self) -> bool {
        self.is_real() && is_nonpositive_integer(&self.re)
    }

    pub fn conj(&self) -> Self {
        CRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero CRat");
        CRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        CRat {
            re: &self.re * s,
            im: &self.im * s,
        }
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_positive() {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &CRat {
    type Output = CRat;
    fn add(self, rhs: &CRat) -> CRat {
        CRat {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &CRat {
    type Output = CRat;
    fn sub(self, rhs: &CRat) -> CRat {
        CRat {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &CRat {
    type Output = CRat;
    fn mul(self, rhs: &CRat) -> CRat {
        CRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &CRat {
    type Output = CRat;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &CRat) -> CRat {
        self * &rhs.inv()
    }
}

impl Neg for &CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        CRat {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $m:ident),*) => {$(
        impl $trait for CRat {
            type Output = CRat;
            fn $m(self, rhs: CRat) -> CRat { $trait::$m(&self, &rhs) }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for CRat {
    type Output = CRat;
    fn neg(self) -> CRat {
        -&self
    }
}

impl AddAssign<&CRat> for CRat {
    fn add_assign(&mut self, rhs: &CRat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CRat> for CRat {
    fn sub_assign(&mut self, rhs: &CRat) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CRat> for CRat {
    fn mul_assign(&mut self, rhs: &CRat) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_field_ops() {
        let a = CRat::new(rat(1, 2), rat(-3, 4));
        let b = CRat::new(rat(2, 3), rati(5));
        let prod = &a * &b;
        let back = &prod / &b;
        assert_eq!(back, a);
        assert_eq!(&a - &a, CRat::zero());
        assert!((&a * &a.inv()) == CRat::one());
    }

    #[test]
    fn half_integer_predicates() {
        assert!(is_half_integer(&rat(7, 2)));
        assert!(is_half_integer(&rati(-3)));
        assert!(!is_half_integer(&rat(1, 3)));
        assert!(is_nonpositive_integer(&rati(0)));
        assert!(is_nonpositive_integer(&rati(-5)));
        assert!(!is_nonpositive_integer(&rat(-1, 2)));
    }
}
