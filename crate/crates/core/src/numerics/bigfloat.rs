//! Arbitrary-precision binary floating point on top of `BigInt`.
//!
//! A value is `mant · 2^exp` with the precision (in bits) carried alongside.
//! Operations never downgrade precision: the result precision is the maximum
//! of the operands'. Rounding is round-half-even on the magnitude.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::Rat;

pub const MIN_PRECISION: u32 = 64;

#[derive(Clone, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            exp: 0,
            prec: prec.max(MIN_PRECISION),
        }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        BigFloat {
            mant: BigInt::from(n),
            exp: 0,
            prec: prec.max(MIN_PRECISION),
        }
        .rounded()
    }

    pub fn from_bigint(n: BigInt, prec: u32) -> Self {
        BigFloat {
            mant: n,
            exp: 0,
            prec: prec.max(MIN_PRECISION),
        }
        .rounded()
    }

    pub fn from_rat(q: &Rat, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        let num = BigFloat {
            mant: q.numer().clone(),
            exp: 0,
            prec: prec + 8,
        };
        let den = BigFloat {
            mant: q.denom().clone(),
            exp: 0,
            prec: prec + 8,
        };
        num.div(&den).round_prec(prec)
    }

    /// Exact rational contents (always exists: dyadic).
    pub fn to_rat(&self) -> Rat {
        let base = Rat::from_integer(self.mant.clone());
        let two = Rat::from_integer(BigInt::from(2));
        if self.exp >= 0 {
            base * two.pow(self.exp as i32)
        } else {
            base / two.pow((-self.exp) as i32)
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// True when the value is exactly an integer.
    pub fn is_exact_integer(&self) -> bool {
        self.exp >= 0 || self.mant.trailing_zeros().unwrap_or(0) as i64 >= -self.exp
    }

    fn rounded(self) -> Self {
        let p = self.prec;
        self.round_prec(p)
    }

    /// Round to `prec` significant bits (half-even), keeping at least that
    /// precision recorded on the result.
    pub fn round_prec(&self, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        if self.mant.is_zero() {
            return BigFloat::zero(prec);
        }
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return BigFloat {
                mant: self.mant.clone(),
                exp: self.exp,
                prec,
            };
        }
        let shift = bits - prec as u64;
        let (sign, mag) = (self.mant.sign(), self.mant.magnitude().clone());
        let q = &mag >> shift;
        let rem = &mag - (&q << shift);
        let half = num_bigint::BigUint::one() << (shift - 1);
        let mut q = q;
        let round_up = match rem.cmp(&half) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => q.is_odd(),
        };
        if round_up {
            q += num_bigint::BigUint::one();
        }
        let mant = BigInt::from_biguint(sign, q);
        BigFloat {
            mant,
            exp: self.exp + shift as i64,
            prec,
        }
    }

    /// Position of the most significant bit: value magnitude is in
    /// `[2^(msb-1), 2^msb)`. Zero input yields `i64::MIN`.
    fn msb(&self) -> i64 {
        if self.mant.is_zero() {
            return i64::MIN;
        }
        self.exp + self.mant.bits() as i64
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -self.mant.clone(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
            prec: self.prec,
        }
    }

    pub fn mul_pow2(&self, e: i64) -> Self {
        if self.mant.is_zero() {
            return self.clone();
        }
        BigFloat {
            mant: self.mant.clone(),
            exp: self.exp + e,
            prec: self.prec,
        }
    }

    pub fn add(&self, rhs: &BigFloat) -> Self {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return rhs.round_prec(prec);
        }
        if rhs.is_zero() {
            return self.round_prec(prec);
        }
        // If one operand is entirely below the other's ulp, it only matters
        // as a sticky bit; a 1-ulp error there is acceptable.
        let (hi, lo) = if self.msb() >= rhs.msb() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if hi.msb() - lo.msb() > prec as i64 + 8 {
            return hi.round_prec(prec);
        }
        let gap = hi.exp - lo.exp;
        let (m1, m2, exp) = if gap >= 0 {
            (&hi.mant << gap as u64, lo.mant.clone(), lo.exp)
        } else {
            (hi.mant.clone(), &lo.mant << (-gap) as u64, hi.exp)
        };
        BigFloat {
            mant: m1 + m2,
            exp,
            prec,
        }
        .rounded()
    }

    pub fn sub(&self, rhs: &BigFloat) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &BigFloat) -> Self {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() || rhs.is_zero() {
            return BigFloat::zero(prec);
        }
        BigFloat {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
            prec,
        }
        .rounded()
    }

    pub fn div(&self, rhs: &BigFloat) -> Self {
        let prec = self.prec.max(rhs.prec);
        assert!(!rhs.is_zero(), "division by zero BigFloat");
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        let extra = prec as i64 + 8 + rhs.mant.bits() as i64 - self.mant.bits() as i64;
        let extra = extra.max(0) as u64;
        let num = &self.mant << extra;
        let q = num / &rhs.mant;
        BigFloat {
            mant: q,
            exp: self.exp - rhs.exp - extra as i64,
            prec,
        }
        .rounded()
    }

    pub fn recip(&self) -> Self {
        BigFloat::from_i64(1, self.prec).div(self)
    }

    /// Square root of a nonnegative value.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of negative BigFloat");
        let prec = self.prec;
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        let want = 2 * (prec as u64 + 8);
        let bits = self.mant.bits();
        let mut shift = want.saturating_sub(bits) as i64;
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let scaled = &self.mant << shift as u64;
        let root = scaled.sqrt();
        BigFloat {
            mant: root,
            exp: (self.exp - shift) / 2,
            prec,
        }
        .rounded()
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = BigFloat::from_i64(1, self.prec);
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

    pub fn cmp_exact(&self, rhs: &BigFloat) -> Ordering {
        
        self.sub_exact_sign(rhs)
    }

    fn sub_exact_sign(&self, rhs: &BigFloat) -> Ordering {
        match (self.mant.sign(), rhs.mant.sign()) {
            (Sign::Minus, Sign::NoSign) | (Sign::Minus, Sign::Plus) => return Ordering::Less,
            (Sign::Plus, Sign::NoSign) | (Sign::Plus, Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::Plus) => return Ordering::Less,
            (Sign::NoSign, Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        // Same nonzero sign: compare msb positions first.
        let (a, b) = (self.msb(), rhs.msb());
        let positive = self.mant.is_positive();
        if a != b {
            let mag = if a > b { Ordering::Greater } else { Ordering::Less };
            return if positive { mag } else { mag.reverse() };
        }
        let gap = self.exp - rhs.exp;
        let (m1, m2) = if gap >= 0 {
            (&self.mant << gap as u64, rhs.mant.clone())
        } else {
            (self.mant.clone(), &rhs.mant << (-gap) as u64)
        };
        m1.cmp(&m2)
    }

    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits();
        let (top, extra) = if bits > 53 {
            let sh = bits - 53;
            ((&self.mant >> sh).to_i64().unwrap(), sh as i64)
        } else {
            (self.mant.to_i64().unwrap(), 0)
        };
        (top as f64) * f64::powi(2.0, (self.exp + extra).clamp(-2000, 2000) as i32)
    }

    /// Approximate log2 of the magnitude, `None` for zero.
    pub fn log2_abs(&self) -> Option<f64> {
        if self.mant.is_zero() {
            return None;
        }
        let bits = self.mant.bits();
        let top = if bits > 53 {
            (self.mant.magnitude() >> (bits - 53)).to_f64().unwrap()
        } else {
            self.mant.magnitude().to_f64().unwrap()
        };
        let top_bits = bits.min(53);
        Some(top.log2() - top_bits as f64 + bits as f64 + self.exp as f64)
    }

    /// Scientific-notation decimal rendering with `sig` significant digits.
    pub fn to_decimal_sci(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let neg = self.mant.is_negative();
        // Decimal exponent estimate, then exact adjustment.
        let mut d10 = (self.log2_abs().unwrap() * std::f64::consts::LOG10_2).floor() as i64;
        // digits = round(|x| * 10^(sig-1-d10))
        loop {
            let scale_exp = sig as i64 - 1 - d10;
            let mut num: num_bigint::BigUint = self.mant.magnitude().clone();
            let mut den = num_bigint::BigUint::one();
            let ten = num_bigint::BigUint::from(10u32);
            if scale_exp >= 0 {
                num *= ten.pow(scale_exp as u32);
            } else {
                den *= ten.pow((-scale_exp) as u32);
            }
            if self.exp >= 0 {
                num <<= self.exp as u64;
            } else {
                den <<= (-self.exp) as u64;
            }
            let digits = (&num + (&den >> 1u32)) / &den;
            let s = digits.to_string();
            if s.len() > sig {
                d10 += 1;
                continue;
            }
            if s.len() < sig {
                d10 -= 1;
                continue;
            }
            let mut out = String::new();
            if neg {
                out.push('-');
            }
            out.push_str(&s[0..1]);
            if sig > 1 {
                out.push('.');
                out.push_str(&s[1..]);
            }
            out.push('e');
            out.push_str(&d10.to_string());
            return out;
        }
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_exact(other) == Ordering::Equal
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

// ---------------------------------------------------------------------------
// Elementary constants and functions.
// ---------------------------------------------------------------------------

fn const_cache() -> &'static Mutex<HashMap<(u8, u32), BigFloat>> {
    static CACHE: OnceLock<Mutex<HashMap<(u8, u32), BigFloat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `atan(1/x)` for integer `x >= 2` as a scaled integer sum at `q` bits.
fn atan_inv_int(x: i64, q: u64) -> BigFloat {
    let scale = BigInt::one() << q;
    let xx = BigInt::from(x) * BigInt::from(x);
    let mut term = scale / BigInt::from(x);
    let mut acc = BigInt::zero();
    let mut k: i64 = 0;
    while !term.is_zero() {
        let contrib = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            acc += &contrib;
        } else {
            acc -= &contrib;
        }
        term /= &xx;
        k += 1;
    }
    BigFloat {
        mant: acc,
        exp: -(q as i64),
        prec: q as u32,
    }
}

/// `atanh(1/x)` for integer `x >= 2` as a scaled integer sum.
fn atanh_inv_int(x: i64, q: u64) -> BigFloat {
    let scale = BigInt::one() << q;
    let xx = BigInt::from(x) * BigInt::from(x);
    let mut term = scale / BigInt::from(x);
    let mut acc = BigInt::zero();
    let mut k: i64 = 0;
    while !term.is_zero() {
        acc += &term / BigInt::from(2 * k + 1);
        term /= &xx;
        k += 1;
    }
    BigFloat {
        mant: acc,
        exp: -(q as i64),
        prec: q as u32,
    }
}

impl BigFloat {
    pub fn pi(prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        if let Some(v) = const_cache().lock().unwrap().get(&(0, prec)) {
            return v.clone();
        }
        let q = prec as u64 + 32;
        // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
        let v = atan_inv_int(5, q)
            .mul_pow2(4)
            .sub(&atan_inv_int(239, q).mul_pow2(2))
            .round_prec(prec);
        const_cache().lock().unwrap().insert((0, prec), v.clone());
        v
    }

    pub fn ln2(prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        if let Some(v) = const_cache().lock().unwrap().get(&(1, prec)) {
            return v.clone();
        }
        let q = prec as u64 + 32;
        // ln 2 = 2 atanh(1/3)
        let v = atanh_inv_int(3, q).mul_pow2(1).round_prec(prec);
        const_cache().lock().unwrap().insert((1, prec), v.clone());
        v
    }

    pub fn exp(&self) -> Self {
        let prec = self.prec;
        let q = prec + 48;
        if self.is_zero() {
            return BigFloat::from_i64(1, prec);
        }
        let ln2 = BigFloat::ln2(q);
        // x = k ln2 + r with |r| <= ln2/2 (approximately)
        let kf = self.div(&ln2).to_f64().round();
        let k = kf as i64;
        let r = self.round_prec(q).sub(&ln2.mul(&BigFloat::from_i64(k, q)));
        // r' = r / 2^m, Taylor, then square m times
        let m: i64 = 16;
        let rp = r.mul_pow2(-m).round_prec(q);
        let mut term = BigFloat::from_i64(1, q);
        let mut sum = BigFloat::from_i64(1, q);
        let mut n: i64 = 1;
        loop {
            term = term.mul(&rp).div(&BigFloat::from_i64(n, q));
            if term.is_zero() || term.msb() < sum.msb() - (q as i64 + 8) {
                break;
            }
            sum = sum.add(&term);
            n += 1;
        }
        let mut y = sum;
        for _ in 0..m {
            y = y.mul(&y);
        }
        y.mul_pow2(k).round_prec(prec)
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self) -> Self {
        assert!(
            !self.is_zero() && !self.is_negative(),
            "ln of nonpositive BigFloat"
        );
        let prec = self.prec;
        let q = prec + 48;
        // Normalize to m in [1,2)
        let e = self.msb() - 1;
        let m = self.mul_pow2(-e).round_prec(q);
        let one = BigFloat::from_i64(1, q);
        let t = m.sub(&one).div(&m.add(&one));
        // ln m = 2 atanh t, |t| < 1/3
        let t2 = t.mul(&t);
        let mut term = t.clone();
        let mut sum = t.clone();
        let mut k: i64 = 1;
        loop {
            term = term.mul(&t2);
            let contrib = term.div(&BigFloat::from_i64(2 * k + 1, q));
            if contrib.is_zero() || contrib.msb() < sum.msb() - (q as i64 + 8) {
                break;
            }
            sum = sum.add(&contrib);
            k += 1;
        }
        let lnm = sum.mul_pow2(1);
        BigFloat::ln2(q)
            .mul(&BigFloat::from_i64(e, q))
            .add(&lnm)
            .round_prec(prec)
    }

    /// Simultaneous sine and cosine.
    pub fn sin_cos(&self) -> (Self, Self) {
        let prec = self.prec;
        let arg_mag = self.msb().max(0) as u32;
        let q = prec + 48 + arg_mag;
        if self.is_zero() {
            return (BigFloat::zero(prec), BigFloat::from_i64(1, prec));
        }
        let pi = BigFloat::pi(q);
        let half_pi = pi.mul_pow2(-1);
        // x = n (pi/2) + r, |r| <= pi/4
        let nf = self.div(&half_pi).to_f64().round();
        let n = nf as i64;
        let r = self
            .round_prec(q)
            .sub(&half_pi.mul(&BigFloat::from_i64(n, q)));
        let m: i64 = 16;
        let rp = r.mul_pow2(-m).round_prec(q);
        // Taylor for sin and cos of the tiny argument
        let rp2 = rp.mul(&rp);
        let mut s = rp.clone();
        let mut term = rp.clone();
        let mut k: i64 = 1;
        loop {
            term = term
                .mul(&rp2)
                .div(&BigFloat::from_i64((2 * k) * (2 * k + 1), q))
                .neg();
            if term.is_zero() || term.msb() < s.msb() - (q as i64 + 8) {
                break;
            }
            s = s.add(&term);
            k += 1;
        }
        let mut c = BigFloat::from_i64(1, q);
        let mut termc = BigFloat::from_i64(1, q);
        let mut k: i64 = 1;
        loop {
            termc = termc
                .mul(&rp2)
                .div(&BigFloat::from_i64((2 * k - 1) * (2 * k), q))
                .neg();
            if termc.is_zero() || termc.msb() < c.msb() - (q as i64 + 8) {
                break;
            }
            c = c.add(&termc);
            k += 1;
        }
        // Double-angle m times: (s,c) -> (2sc, c^2 - s^2)
        for _ in 0..m {
            let s2 = s.mul(&c).mul_pow2(1);
            let c2 = c.mul(&c).sub(&s.mul(&s));
            s = s2;
            c = c2;
        }
        // Quadrant fix-up
        let (s, c) = match n.rem_euclid(4) {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            _ => (c.neg(), s),
        };
        (s.round_prec(prec), c.round_prec(prec))
    }

    pub fn atan(&self) -> Self {
        let prec = self.prec;
        let q = prec + 48;
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        let neg = self.is_negative();
        let mut x = self.abs().round_prec(q);
        let one = BigFloat::from_i64(1, q);
        let mut add_half_pi = false;
        if x.cmp_exact(&one) == Ordering::Greater {
            x = one.div(&x);
            add_half_pi = true;
        }
        // Halve the angle 8 times: t -> t / (1 + sqrt(1+t^2))
        let reductions = 8;
        for _ in 0..reductions {
            let s = one.add(&x.mul(&x)).sqrt();
            x = x.div(&one.add(&s));
        }
        let x2 = x.mul(&x);
        let mut term = x.clone();
        let mut sum = x.clone();
        let mut k: i64 = 1;
        loop {
            term = term.mul(&x2).neg();
            let contrib = term.div(&BigFloat::from_i64(2 * k + 1, q));
            if contrib.is_zero() || contrib.msb() < sum.msb() - (q as i64 + 8) {
                break;
            }
            sum = sum.add(&contrib);
            k += 1;
        }
        let mut a = sum.mul_pow2(reductions);
        if add_half_pi {
            a = BigFloat::pi(q).mul_pow2(-1).sub(&a);
        }
        if neg {
            a = a.neg();
        }
        a.round_prec(prec)
    }

    pub fn atan2(y: &BigFloat, x: &BigFloat) -> Self {
        let prec = y.prec.max(x.prec);
        if x.is_zero() && y.is_zero() {
            return BigFloat::zero(prec);
        }
        if x.is_zero() {
            let h = BigFloat::pi(prec).mul_pow2(-1);
            return if y.is_negative() { h.neg() } else { h };
        }
        let base = y.round_prec(prec).div(x).atan();
        if !x.is_negative() {
            base
        } else if y.is_negative() {
            base.sub(&BigFloat::pi(prec))
        } else {
            base.add(&BigFloat::pi(prec))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;

    fn from_dec(s: &str, prec: u32) -> BigFloat {
        // parse "d.ddd" into a rational, then round
        let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
        let digits: String = format!("{int_part}{frac_part}");
        let num: BigInt = digits.parse().unwrap();
        let den = BigInt::from(10).pow(frac_part.len() as u32);
        BigFloat::from_rat(&Rat::new(num, den), prec)
    }

    fn assert_close(a: &BigFloat, b: &BigFloat, bits: i64) {
        let d = a.sub(b);
        if d.is_zero() {
            return;
        }
        let scale = a.log2_abs().unwrap_or(0.0);
        let err = d.log2_abs().unwrap();
        assert!(
            err < scale - bits as f64,
            "difference too large: err 2^{err}, scale 2^{scale}, want < 2^{}",
            scale - bits as f64
        );
    }

    #[test]
    fn pi_matches_reference() {
        let p = BigFloat::pi(256);
        let r = from_dec(
            "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899",
            256,
        );
        assert_close(&p, &r, 250);
    }

    #[test]
    fn ln2_exp_ln_roundtrip() {
        let l = BigFloat::ln2(192);
        let r = from_dec(
            "0.693147180559945309417232121458176568075500134360255254120680009493393621969694715",
            192,
        );
        assert_close(&l, &r, 186);
        let x = BigFloat::from_rat(&rat(7, 3), 192);
        let y = x.ln().exp();
        assert_close(&y, &x, 180);
        let e = BigFloat::from_i64(1, 192).exp();
        let er = from_dec(
            "2.71828182845904523536028747135266249775724709369995957496696762772407663035354759",
            192,
        );
        assert_close(&e, &er, 186);
    }

    #[test]
    fn trig_identities() {
        let x = BigFloat::from_rat(&rat(5, 7), 192);
        let (s, c) = x.sin_cos();
        let one = s.mul(&s).add(&c.mul(&c));
        assert_close(&one, &BigFloat::from_i64(1, 192), 185);
        // atan(tan(x)) = x for |x| < pi/2
        let t = s.div(&c);
        assert_close(&t.atan(), &x, 180);
        // big argument reduction
        let big = BigFloat::from_i64(1_000_003, 256);
        let (sb, cb) = big.sin_cos();
        let one = sb.mul(&sb).add(&cb.mul(&cb));
        assert_close(&one, &BigFloat::from_i64(1, 256), 245);
    }

    #[test]
    fn sqrt_and_division() {
        let two = BigFloat::from_i64(2, 256);
        let s = two.sqrt();
        assert_close(&s.mul(&s), &two, 250);
        let x = BigFloat::from_rat(&rat(355, 113), 128);
        let y = x.recip();
        assert_close(&x.mul(&y), &BigFloat::from_i64(1, 128), 122);
    }

    #[test]
    fn decimal_rendering() {
        let x = BigFloat::from_rat(&rat(1, 8), 128);
        assert_eq!(x.to_decimal_sci(3), "1.25e-1");
        let y = BigFloat::from_i64(-1500, 128);
        assert_eq!(y.to_decimal_sci(2), "-1.5e3");
    }
}
