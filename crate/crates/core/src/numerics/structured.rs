//! Structured exact scalars of the form `q · 2^(t/2) · π^(p/2)`.
//!
//! Every closed-form coefficient in this crate is a rational multiple of a
//! (half-integer) power of 2 times a (half-integer) power of π; products of
//! Γ at half-integer arguments stay inside this set. Both exponents are kept
//! in half-units so that prefactors like `(2√(2π))^(n-1)` are exact for all
//! sphere dimensions.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::bigc::BigC;
use super::bigfloat::BigFloat;
use super::rational::Rat;

/// Exact scalar `q · 2^(two_half/2) · π^(pi_half/2)`.
///
/// Canonical form: `q` is zero with both exponents zero, or `q` has odd
/// numerator and odd denominator (all powers of two live in `two_half`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Structured {
    q: Rat,
    two_half: i64,
    pi_half: i64,
}

impl Structured {
    pub fn new(q: Rat, two_half: i64, pi_half: i64) -> Self {
        let mut s = Structured {
            q,
            two_half,
            pi_half,
        };
        s.canonicalize();
        s
    }

    pub fn zero() -> Self {
        Structured {
            q: Rat::zero(),
            two_half: 0,
            pi_half: 0,
        }
    }

    pub fn one() -> Self {
        Structured {
            q: Rat::one(),
            two_half: 0,
            pi_half: 0,
        }
    }

    pub fn from_rat(q: Rat) -> Self {
        Self::new(q, 0, 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    /// `2^(t/2)` with `t` counted in half-units of the exponent.
    pub fn two_pow_half(t: i64) -> Self {
        Self::new(Rat::one(), t, 0)
    }

    /// `π^(p/2)`.
    pub fn pi_pow_half(p: i64) -> Self {
        Self::new(Rat::one(), 0, p)
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn rational_part(&self) -> &Rat {
        &self.q
    }

    /// Exponent of 2 in half-units.
    pub fn two_exp_half_units(&self) -> i64 {
        self.two_half
    }

    /// Exponent of π in half-units.
    pub fn pi_exp_half_units(&self) -> i64 {
        self.pi_half
    }

    /// The value as a plain rational, when it is one.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.pi_half != 0 || self.two_half.rem_euclid(2) != 0 {
            return None;
        }
        let mut q = self.q.clone();
        let e = self.two_half / 2;
        let two = Rat::from_integer(BigInt::from(2));
        if e >= 0 {
            for _ in 0..e {
                q *= two.clone();
            }
        } else {
            for _ in 0..(-e) {
                q /= two.clone();
            }
        }
        Some(q)
    }

    fn canonicalize(&mut self) {
        if self.q.is_zero() {
            self.two_half = 0;
            self.pi_half = 0;
            return;
        }
        // Move the 2-adic valuation of q into the exponent.
        let two = BigInt::from(2);
        let mut numer = self.q.numer().clone();
        let mut denom = self.q.denom().clone();
        while numer.is_even() && !numer.is_zero() {
            numer /= &two;
            self.two_half += 2;
        }
        while denom.is_even() {
            denom /= &two;
            self.two_half -= 2;
        }
        self.q = Rat::new(numer, denom);
    }

    /// Exact sum, when the result stays structured (same π power, integral
    /// power-of-two ratio). Returns `None` otherwise.
    pub fn checked_add(&self, rhs: &Structured) -> Option<Structured> {
        if self.is_zero() {
            return Some(rhs.clone());
        }
        if rhs.is_zero() {
            return Some(self.clone());
        }
        if self.pi_half != rhs.pi_half {
            return None;
        }
        let d = self.two_half - rhs.two_half;
        if d.rem_euclid(2) != 0 {
            return None;
        }
        // Rebase on the smaller exponent.
        let (base, a, b) = if d >= 0 {
            (rhs.two_half, shift_rat(&self.q, d / 2), rhs.q.clone())
        } else {
            (self.two_half, self.q.clone(), shift_rat(&rhs.q, -d / 2))
        };
        Some(Structured::new(a + b, base, self.pi_half))
    }

    pub fn inv(&self) -> Structured {
        assert!(!self.is_zero(), "division by structured zero");
        Structured::new(self.q.recip(), -self.two_half, -self.pi_half)
    }

    pub fn pow_i64(&self, e: i64) -> Structured {
        if e == 0 {
            return Structured::one();
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Structured::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Convert to a floating value at `prec` bits.
    pub fn to_bigfloat(&self, prec: u32) -> BigFloat {
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        let work = prec + 16;
        let mut v = BigFloat::from_rat(&self.q, work);
        // 2^(two_half/2): integral part is an exponent shift, odd part is √2.
        let (e2, r2) = (self.two_half.div_euclid(2), self.two_half.rem_euclid(2));
        v = v.mul_pow2(e2);
        if r2 != 0 {
            v = v.mul(&BigFloat::from_i64(2, work).sqrt());
        }
        if self.pi_half != 0 {
            let pi = BigFloat::pi(work);
            let (ep, rp) = (self.pi_half.div_euclid(2), self.pi_half.rem_euclid(2));
            let mut p = BigFloat::from_i64(1, work);
            let pabs = pi.powi(ep.unsigned_abs() as u32);
            if ep >= 0 {
                p = p.mul(&pabs);
            } else {
                p = p.div(&pabs);
            }
            if rp != 0 {
                p = p.mul(&pi.sqrt());
            }
            v = v.mul(&p);
        }
        v.round_prec(prec)
    }

    pub fn to_bigc(&self, prec: u32) -> BigC {
        BigC::from_real(self.to_bigfloat(prec))
    }
}

fn shift_rat(q: &Rat, e: i64) -> Rat {
    // q * 2^e for integral e.
    let two = BigInt::from(2);
    if e >= 0 {
        q * Rat::from_integer(two.pow(e as u32))
    } else {
        q / Rat::from_integer(two.pow((-e) as u32))
    }
}

impl Mul for &Structured {
    type Output = Structured;
    fn mul(self, rhs: &Structured) -> Structured {
        if self.is_zero() || rhs.is_zero() {
            return Structured::zero();
        }
        Structured::new(
            &self.q * &rhs.q,
            self.two_half + rhs.two_half,
            self.pi_half + rhs.pi_half,
        )
    }
}

impl Mul for Structured {
    type Output = Structured;
    fn mul(self, rhs: Structured) -> Structured {
        &self * &rhs
    }
}

impl Neg for &Structured {
    type Output = Structured;
    fn neg(self) -> Structured {
        Structured {
            q: -self.q.clone(),
            two_half: self.two_half,
            pi_half: self.pi_half,
        }
    }
}

impl Neg for Structured {
    type Output = Structured;
    fn neg(self) -> Structured {
        -&self
    }
}

/// Panicking sum for contexts where compatibility is structural.
impl Add for &Structured {
    type Output = Structured;
    fn add(self, rhs: &Structured) -> Structured {
        self.checked_add(rhs)
            .expect("incompatible structured scalars in sum")
    }
}

impl fmt::Display for Structured {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.q)?;
        if self.two_half != 0 {
            if self.two_half % 2 == 0 {
                write!(f, "·2^{}", self.two_half / 2)?;
            } else {
                write!(f, "·2^({}/2)", self.two_half)?;
            }
        }
        if self.pi_half != 0 {
            if self.pi_half % 2 == 0 {
                write!(f, "·π^{}", self.pi_half / 2)?;
            } else {
                write!(f, "·π^({}/2)", self.pi_half)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Structured {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
