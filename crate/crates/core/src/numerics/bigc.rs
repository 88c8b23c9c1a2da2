//! Complex arbitrary-precision floats.

use std::fmt;

use super::bigfloat::BigFloat;
use super::rational::CRat;

#[derive(Clone, Debug, PartialEq)]
pub struct BigC {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigC {
    pub fn zero(prec: u32) -> Self {
        BigC {
            re: BigFloat::zero(prec),
            im: BigFloat::zero(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        BigC {
            re: BigFloat::from_i64(1, prec),
            im: BigFloat::zero(prec),
        }
    }

    pub fn from_real(re: BigFloat) -> Self {
        let p = re.prec();
        BigC {
            re,
            im: BigFloat::zero(p),
        }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_real(BigFloat::from_i64(n, prec))
    }

    pub fn from_crat(z: &CRat, prec: u32) -> Self {
        BigC {
            re: BigFloat::from_rat(&z.re, prec),
            im: BigFloat::from_rat(&z.im, prec),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn round_prec(&self, prec: u32) -> Self {
        BigC {
            re: self.re.round_prec(prec),
            im: self.im.round_prec(prec),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn add(&self, rhs: &BigC) -> Self {
        BigC {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &BigC) -> Self {
        BigC {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn neg(&self) -> Self {
        BigC {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> Self {
        BigC {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, rhs: &BigC) -> Self {
        BigC {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn mul_real(&self, rhs: &BigFloat) -> Self {
        BigC {
            re: self.re.mul(rhs),
            im: self.im.mul(rhs),
        }
    }

    pub fn mul_pow2(&self, e: i64) -> Self {
        BigC {
            re: self.re.mul_pow2(e),
            im: self.im.mul_pow2(e),
        }
    }

    pub fn div(&self, rhs: &BigC) -> Self {
        let n = rhs.norm_sqr();
        let num = self.mul(&rhs.conj());
        BigC {
            re: num.re.div(&n),
            im: num.im.div(&n),
        }
    }

    pub fn recip(&self) -> Self {
        BigC::one(self.prec()).div(self)
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    pub fn exp(&self) -> Self {
        let er = self.re.exp();
        if self.im.is_zero() {
            return BigC::from_real(er);
        }
        let (s, c) = self.im.sin_cos();
        BigC {
            re: er.mul(&c),
            im: er.mul(&s),
        }
    }

    /// Principal branch logarithm.
    pub fn ln(&self) -> Self {
        assert!(!self.is_zero(), "ln of zero BigC");
        if self.im.is_zero() && !self.re.is_negative() {
            return BigC::from_real(self.re.ln());
        }
        BigC {
            re: self.norm_sqr().ln().mul_pow2(-1),
            im: BigFloat::atan2(&self.im, &self.re),
        }
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = BigC::one(self.prec());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `base^z` for positive real `base`.
    pub fn pow_of_real(base: &BigFloat, z: &BigC) -> Self {
        z.mul_real(&base.ln()).exp()
    }

    /// Relative difference `|a-b| / max(|a|,|b|)` as approximate log2.
    /// `None` means both are zero (no difference).
    pub fn rel_err_log2(a: &BigC, b: &BigC) -> Option<f64> {
        let d = a.sub(b);
        if d.is_zero() {
            return None;
        }
        let scale = a
            .norm_sqr()
            .log2_abs()
            .into_iter()
            .chain(b.norm_sqr().log2_abs())
            .fold(f64::NEG_INFINITY, f64::max);
        let dn = d.norm_sqr().log2_abs().unwrap();
        if scale == f64::NEG_INFINITY {
            // comparing against exact zero: return absolute size
            return Some(dn / 2.0);
        }
        Some((dn - scale) / 2.0)
    }
}

impl fmt::Display for BigC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re.to_decimal_sci(40))
        } else {
            write!(
                f,
                "{} + {}i",
                self.re.to_decimal_sci(40),
                self.im.to_decimal_sci(40)
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{rat, CRat};

    #[test]
    fn complex_exp_ln_roundtrip() {
        let z = BigC::from_crat(&CRat::new(rat(3, 5), rat(-7, 11)), 192);
        let w = z.ln().exp();
        let err = BigC::rel_err_log2(&w, &z).unwrap_or(f64::NEG_INFINITY);
        assert!(err < -180.0, "roundtrip err 2^{err}");
    }

    #[test]
    fn division_inverse() {
        let z = BigC::from_crat(&CRat::new(rat(-2, 3), rat(5, 4)), 128);
        let one = z.mul(&z.recip());
        let err = BigC::rel_err_log2(&one, &BigC::one(128)).unwrap_or(f64::NEG_INFINITY);
        assert!(err < -120.0);
    }
}
