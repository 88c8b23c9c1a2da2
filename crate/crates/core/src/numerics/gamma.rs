//! Gamma-function machinery: exact values at half-integers, the entire
//! reciprocal 1/Γ, digamma and trigamma at arbitrary precision, and
//! Pochhammer symbols over every scalar kind.
//!
//! Exact-zero semantics: 1/Γ at a nonpositive integer is exactly zero, and
//! that case is decided on the exact representation before any numeric
//! evaluation.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::bigc::BigC;
use super::bigfloat::BigFloat;
use super::rational::{as_i64, is_integer, rat, rati, CRat, Rat};
use super::structured::Structured;

/// Argument sits on a pole of Γ (nonpositive integer).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoleError {
    pub arg: String,
}

impl std::fmt::Display for PoleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "gamma pole at {}", self.arg)
    }
}

impl std::error::Error for PoleError {}

// ---------------------------------------------------------------------------
// Exact values at half-integer arguments.
// ---------------------------------------------------------------------------

/// Γ(z) for `2z` integral, as a structured exact scalar.
///
/// Γ(m) = (m-1)! and Γ(m + 1/2) climbs from Γ(1/2) = √π by the functional
/// equation, in both directions.
pub fn gamma_half(z: &Rat) -> Result<Structured, PoleError> {
    assert!(
        super::rational::is_half_integer(z),
        "gamma_half needs a half-integer, got {z}"
    );
    if is_integer(z) {
        if !z.is_positive() {
            return Err(PoleError {
                arg: z.to_string(),
            });
        }
        let m = as_i64(z).expect("half-integer gamma argument out of range");
        let mut acc = BigInt::one();
        for i in 2..m {
            acc *= BigInt::from(i);
        }
        return Ok(Structured::from_rat(Rat::from_integer(acc)));
    }
    // z = m + 1/2
    let mut q = Rat::one();
    let mut cur = z.clone();
    let half = rat(1, 2);
    while cur > half {
        cur -= Rat::one();
        q *= cur.clone();
    }
    while cur < half {
        q /= cur.clone();
        cur += Rat::one();
    }
    Ok(&Structured::from_rat(q) * &Structured::pi_pow_half(1))
}

/// 1/Γ(z) for `2z` integral: exactly zero at nonpositive integers.
pub fn rgamma_half(z: &Rat) -> Structured {
    if is_integer(z) && !z.is_positive() {
        return Structured::zero();
    }
    gamma_half(z).expect("pole excluded above").inv()
}

// ---------------------------------------------------------------------------
// Pochhammer symbols.
// ---------------------------------------------------------------------------

/// Rising factorial over Gaussian rationals: `x (x+1) ... (x+n-1)`.
pub fn pochhammer_crat(x: &CRat, n: u64) -> CRat {
    let mut acc = CRat::one();
    let mut term = x.clone();
    let one = CRat::one();
    for _ in 0..n {
        acc = &acc * &term;
        term = &term + &one;
    }
    acc
}

pub fn pochhammer_rat(x: &Rat, n: u64) -> Rat {
    let mut acc = Rat::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= term.clone();
        term += Rat::one();
    }
    acc
}

pub fn pochhammer_bigc(x: &BigC, n: u64) -> BigC {
    let prec = x.prec();
    let mut acc = BigC::one(prec);
    let mut term = x.clone();
    let one = BigC::one(prec);
    for _ in 0..n {
        acc = acc.mul(&term);
        term = term.add(&one);
    }
    acc
}

/// True iff the rising factorial `(x)_n` contains the factor zero.
pub fn pochhammer_is_zero(x: &CRat, n: u64) -> bool {
    if n == 0 {
        return false;
    }
    match x.as_integer() {
        None => false,
        Some(m) => !m.is_positive() && m > BigInt::from(-(n as i64)),
    }
}

// ---------------------------------------------------------------------------
// Bernoulli numbers (exact, cached) for the asymptotic series.
// ---------------------------------------------------------------------------

fn bernoulli_cache() -> &'static Mutex<Vec<Rat>> {
    static CACHE: OnceLock<Mutex<Vec<Rat>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rat::one(), rat(-1, 2)]))
}

/// B_n in the convention with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Rat {
    let mut cache = bernoulli_cache().lock().unwrap();
    while cache.len() <= n {
        let m = cache.len();
        // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k
        let mut sum = Rat::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (k, bk) in cache.iter().enumerate() {
            sum += Rat::from_integer(binom.clone()) * bk;
            // C(m+1, k+1) = C(m+1,k) * (m+1-k)/(k+1)
            binom = binom * BigInt::from((m + 1 - k) as u64) / BigInt::from((k + 1) as u64);
        }
        let b = -sum / Rat::from_integer(BigInt::from((m + 1) as u64));
        cache.push(b);
    }
    cache[n].clone()
}

// ---------------------------------------------------------------------------
// Numeric Γ family on complex floats.
// ---------------------------------------------------------------------------

/// How far the argument is shifted before the asymptotic series applies.
fn shift_target(prec: u32) -> i64 {
    ((prec as f64) * 0.4).ceil() as i64 + 8
}

/// log Γ(w) by the Stirling series; requires Re(w) >= shift_target.
fn ln_gamma_asymptotic(w: &BigC, prec: u32) -> BigC {
    let q = prec + 16;
    let w = w.round_prec(q);
    let half = BigFloat::from_rat(&rat(1, 2), q);
    // (w - 1/2) ln w - w + ln(2π)/2
    let lnw = w.ln();
    let mut acc = w
        .sub(&BigC::from_real(half.clone()))
        .mul(&lnw)
        .sub(&w)
        .add(&BigC::from_real(
            BigFloat::pi(q).mul_pow2(1).ln().mul_pow2(-1),
        ));
    // + sum B_{2j} / (2j (2j-1) w^{2j-1})
    let winv = w.recip();
    let winv2 = winv.mul(&winv);
    let mut pw = winv.clone(); // w^{-(2j-1)}
    let mut last_mag = f64::INFINITY;
    for j in 1..(q as usize) {
        let b = bernoulli(2 * j);
        let coeff = b / (rati((2 * j) as i64) * rati((2 * j - 1) as i64));
        let term = pw.mul_real(&BigFloat::from_rat(&coeff, q));
        let mag = term.norm_sqr().log2_abs().unwrap_or(f64::NEG_INFINITY) / 2.0;
        if mag < -(q as f64) - 4.0 {
            acc = acc.add(&term);
            break;
        }
        assert!(
            mag < last_mag + 1.0,
            "asymptotic series diverging; shift target too small"
        );
        last_mag = mag;
        acc = acc.add(&term);
        pw = pw.mul(&winv2);
    }
    acc.round_prec(prec)
}

/// 1/Γ(z) on complex floats (entire; caller guarantees poles were handled
/// exactly upstream, but near-pole arguments are still fine numerically).
pub fn rgamma_bigc(z: &BigC, prec: u32) -> BigC {
    let q = prec + 32;
    let z = z.round_prec(q);
    let t = shift_target(q);
    let re_floor = z.re.to_f64().floor() as i64;
    let shift = (t - re_floor).max(0) as u64;
    // rgamma(z) = [prod_{j<shift} (z+j)] * exp(-lnΓ(z+shift))
    let mut poly = BigC::one(q);
    let mut term = z.clone();
    let one = BigC::one(q);
    for _ in 0..shift {
        poly = poly.mul(&term);
        term = term.add(&one);
    }
    let lg = ln_gamma_asymptotic(&term, q);
    poly.mul(&lg.neg().exp()).round_prec(prec)
}

/// Γ(z) on complex floats; `Err` on exact nonpositive-integer input.
pub fn gamma_bigc(z: &BigC, prec: u32) -> Result<BigC, PoleError> {
    if z.is_real() && z.re.is_exact_integer() && (z.re.is_zero() || z.re.is_negative()) {
        return Err(PoleError {
            arg: format!("{z}"),
        });
    }
    Ok(rgamma_bigc(z, prec + 16).recip().round_prec(prec))
}

/// Digamma ψ(z).
pub fn digamma_bigc(z: &BigC, prec: u32) -> Result<BigC, PoleError> {
    if z.is_real() && z.re.is_exact_integer() && (z.re.is_zero() || z.re.is_negative()) {
        return Err(PoleError {
            arg: format!("{z}"),
        });
    }
    let q = prec + 32;
    let z = z.round_prec(q);
    let t = shift_target(q);
    let re_floor = z.re.to_f64().floor() as i64;
    let shift = (t - re_floor).max(0) as u64;
    // ψ(z) = -sum_{j<shift} 1/(z+j) + ψ(w), w = z + shift
    let mut acc = BigC::zero(q);
    let mut term = z.clone();
    let one = BigC::one(q);
    for _ in 0..shift {
        acc = acc.sub(&term.recip());
        term = term.add(&one);
    }
    let w = term;
    // ψ(w) ~ ln w - 1/(2w) - sum B_{2j}/(2j w^{2j})
    let winv = w.recip();
    let winv2 = winv.mul(&winv);
    acc = acc.add(&w.ln()).sub(&winv.mul_pow2(-1));
    let mut pw = winv2.clone();
    for j in 1..(q as usize) {
        let coeff = bernoulli(2 * j) / rati((2 * j) as i64);
        let term = pw.mul_real(&BigFloat::from_rat(&coeff, q));
        let mag = term.norm_sqr().log2_abs().unwrap_or(f64::NEG_INFINITY) / 2.0;
        acc = acc.sub(&term);
        if mag < -(q as f64) - 4.0 {
            break;
        }
        pw = pw.mul(&winv2);
    }
    Ok(acc.round_prec(prec))
}

/// Trigamma ψ'(z).
pub fn trigamma_bigc(z: &BigC, prec: u32) -> Result<BigC, PoleError> {
    if z.is_real() && z.re.is_exact_integer() && (z.re.is_zero() || z.re.is_negative()) {
        return Err(PoleError {
            arg: format!("{z}"),
        });
    }
    let q = prec + 32;
    let z = z.round_prec(q);
    let t = shift_target(q);
    let re_floor = z.re.to_f64().floor() as i64;
    let shift = (t - re_floor).max(0) as u64;
    // ψ'(z) = sum_{j<shift} 1/(z+j)^2 + ψ'(w)
    let mut acc = BigC::zero(q);
    let mut term = z.clone();
    let one = BigC::one(q);
    for _ in 0..shift {
        let r = term.recip();
        acc = acc.add(&r.mul(&r));
        term = term.add(&one);
    }
    let w = term;
    // ψ'(w) ~ 1/w + 1/(2w^2) + sum B_{2j} / w^{2j+1}
    let winv = w.recip();
    let winv2 = winv.mul(&winv);
    acc = acc.add(&winv).add(&winv2.mul_pow2(-1));
    let mut pw = winv2.mul(&winv);
    for j in 1..(q as usize) {
        let coeff = bernoulli(2 * j);
        let term = pw.mul_real(&BigFloat::from_rat(&coeff, q));
        let mag = term.norm_sqr().log2_abs().unwrap_or(f64::NEG_INFINITY) / 2.0;
        acc = acc.add(&term);
        if mag < -(q as f64) - 4.0 {
            break;
        }
        pw = pw.mul(&winv2);
    }
    Ok(acc.round_prec(prec))
}

/// 1/Γ over Gaussian rationals with exact-zero detection, numeric otherwise.
pub fn rgamma_crat(z: &CRat, prec: u32) -> RGammaValue {
    if z.is_nonpositive_integer() {
        return RGammaValue::ExactZero;
    }
    if let Some(r) = z.as_real() {
        if super::rational::is_half_integer(r) {
            return RGammaValue::Exact(rgamma_half(r));
        }
    }
    RGammaValue::Numeric(rgamma_bigc(&BigC::from_crat(z, prec), prec))
}

#[derive(Clone, Debug)]
pub enum RGammaValue {
    ExactZero,
    Exact(Structured),
    Numeric(BigC),
}
