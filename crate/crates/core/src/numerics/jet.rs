//! Truncated Taylor expansions (jets) in one variable.
//!
//! Jets come in two flavours sharing one generic container:
//!
//! * exact jets over [`TCoeff`], where a coefficient is either a known
//!   structured scalar or `Unknown`. Derivatives of Γ-type factors at
//!   regular points involve digamma values that leave the structured field;
//!   those coefficients are marked `Unknown` instead of being approximated.
//!   Products propagate taint conservatively, and — the property everything
//!   downstream relies on — the first nonvanishing coefficient of a product
//!   of factors with exactly-known leading terms stays exactly known.
//! * numeric jets over [`BigC`], with full second-order Γ composition via
//!   digamma/trigamma.

use super::bigc::BigC;
use super::bigfloat::BigFloat;
use super::gamma::{digamma_bigc, rgamma_bigc, rgamma_half, trigamma_bigc};
use super::rational::{as_i64, is_half_integer, is_integer, Rat};
use super::structured::Structured;
use num_traits::{Signed, Zero};

/// Exact-or-unknown jet coefficient.
#[derive(Clone, Debug)]
pub enum TCoeff {
    Known(Structured),
    Unknown,
}

impl TCoeff {
    pub fn zero() -> Self {
        TCoeff::Known(Structured::zero())
    }

    pub fn known_rat(q: Rat) -> Self {
        TCoeff::Known(Structured::from_rat(q))
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, TCoeff::Known(s) if s.is_zero())
    }

    pub fn known(&self) -> Option<&Structured> {
        match self {
            TCoeff::Known(s) => Some(s),
            TCoeff::Unknown => None,
        }
    }

    fn add(&self, rhs: &TCoeff) -> TCoeff {
        match (self, rhs) {
            (TCoeff::Known(a), TCoeff::Known(b)) => match a.checked_add(b) {
                Some(s) => TCoeff::Known(s),
                None => TCoeff::Unknown,
            },
            _ => TCoeff::Unknown,
        }
    }

    fn mul(&self, rhs: &TCoeff) -> TCoeff {
        // A known zero annihilates even an unknown partner.
        if self.is_exact_zero() || rhs.is_exact_zero() {
            return TCoeff::zero();
        }
        match (self, rhs) {
            (TCoeff::Known(a), TCoeff::Known(b)) => TCoeff::Known(a * b),
            _ => TCoeff::Unknown,
        }
    }

    fn neg(&self) -> TCoeff {
        match self {
            TCoeff::Known(a) => TCoeff::Known(-a),
            TCoeff::Unknown => TCoeff::Unknown,
        }
    }
}

/// Ring interface shared by jet coefficient types.
pub trait JetScalar: Clone {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_add(&self, rhs: &Self) -> Self;
    fn ring_mul(&self, rhs: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    fn is_ring_zero(&self) -> bool;
}

impl JetScalar for TCoeff {
    fn ring_zero() -> Self {
        TCoeff::zero()
    }
    fn ring_one() -> Self {
        TCoeff::Known(Structured::one())
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_exact_zero()
    }
}

impl JetScalar for BigC {
    fn ring_zero() -> Self {
        BigC::zero(crate::numerics::bigfloat::MIN_PRECISION)
    }
    fn ring_one() -> Self {
        BigC::one(crate::numerics::bigfloat::MIN_PRECISION)
    }
    fn ring_add(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn ring_mul(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn is_ring_zero(&self) -> bool {
        self.is_zero()
    }
}

/// Jet with coefficients of `1, s, s², …` up to a fixed truncation order.
#[derive(Clone, Debug)]
pub struct Jet<T> {
    pub c: Vec<T>,
}

impl<T: JetScalar> Jet<T> {
    pub fn constant(v: T, order: usize) -> Self {
        let mut c = vec![T::ring_zero(); order + 1];
        c[0] = v;
        Jet { c }
    }

    /// `c0 + c1·s`.
    pub fn affine(c0: T, c1: T, order: usize) -> Self {
        let mut j = Jet::constant(c0, order);
        if order >= 1 {
            j.c[1] = c1;
        }
        j
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn add(&self, rhs: &Jet<T>) -> Jet<T> {
        assert_eq!(self.c.len(), rhs.c.len());
        Jet {
            c: self
                .c
                .iter()
                .zip(&rhs.c)
                .map(|(a, b)| a.ring_add(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Jet<T> {
        Jet {
            c: self.c.iter().map(|a| a.ring_neg()).collect(),
        }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn mul(&self, rhs: &Jet<T>) -> Jet<T> {
        assert_eq!(self.c.len(), rhs.c.len());
        let n = self.c.len();
        let mut out = vec![T::ring_zero(); n];
        for k in 0..n {
            let mut acc = T::ring_zero();
            for i in 0..=k {
                acc = acc.ring_add(&self.c[i].ring_mul(&rhs.c[k - i]));
            }
            out[k] = acc;
        }
        Jet { c: out }
    }

    pub fn scale(&self, k: &T) -> Jet<T> {
        Jet {
            c: self.c.iter().map(|a| a.ring_mul(k)).collect(),
        }
    }

    /// Rising factorial `(x)_n` of a jet argument.
    pub fn pochhammer(&self, n: u64) -> Jet<T> {
        let order = self.order();
        let mut acc = Jet::constant(T::ring_one(), order);
        let mut term = self.clone();
        for _ in 0..n {
            acc = acc.mul(&term);
            term.c[0] = term.c[0].ring_add(&T::ring_one());
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Exact jets of the standard factors along an affine argument x0 + d·s.
// ---------------------------------------------------------------------------

/// 1/Γ(x0 + d·s) as an exact jet; `None` when x0 is not a half-integer.
///
/// At a pole `x0 = -m` the leading data is exact:
/// `1/Γ(-m + ds) = (-1)^m m! d · s + O(s²)`, with the `O(s²)` coefficients
/// unknown (they involve digamma values). At regular points the value is
/// exact and all derivatives are unknown, unless `d = 0`.
pub fn rgamma_affine_exact(x0: &Rat, d: &Rat, order: usize) -> Option<Jet<TCoeff>> {
    if !is_half_integer(x0) {
        return None;
    }
    if d.is_zero() {
        return Some(Jet::constant(TCoeff::Known(rgamma_half(x0)), order));
    }
    let mut c = vec![TCoeff::Unknown; order + 1];
    if is_integer(x0) && !x0.is_positive() {
        let m = (-as_i64(x0).expect("pole index out of range")) as u64;
        let mut lead = Rat::from_integer(1.into());
        for i in 1..=m {
            lead *= Rat::from_integer(i.into());
        }
        if m % 2 == 1 {
            lead = -lead;
        }
        c[0] = TCoeff::zero();
        if order >= 1 {
            c[1] = TCoeff::known_rat(lead * d);
        }
    } else {
        c[0] = TCoeff::Known(rgamma_half(x0));
    }
    Some(Jet { c })
}

/// `2^(e0 + de·s)` as an exact jet; `None` when `2·e0` is not integral.
pub fn pow2_affine_exact(e0: &Rat, de: &Rat, order: usize) -> Option<Jet<TCoeff>> {
    if !is_half_integer(e0) {
        return None;
    }
    let two_half = as_i64(&(e0 * Rat::from_integer(2.into())))?;
    let v = TCoeff::Known(Structured::two_pow_half(two_half));
    if de.is_zero() {
        return Some(Jet::constant(v, order));
    }
    // Derivatives involve ln 2.
    let mut c = vec![TCoeff::Unknown; order + 1];
    c[0] = v;
    Some(Jet { c })
}

// ---------------------------------------------------------------------------
// Numeric jet composition through 1/Γ (order ≤ 2).
// ---------------------------------------------------------------------------

/// 1/Γ of a numeric jet, exact functional-equation shift to a regular point
/// followed by the digamma/trigamma log-derivative expansion.
pub fn rgamma_jet_bigc(z: &Jet<BigC>, prec: u32) -> Jet<BigC> {
    let order = z.order();
    assert!(order <= 2, "numeric rgamma jets support order <= 2");
    let q = prec + 16;
    // Shift until Re >= 2 so digamma/trigamma apply.
    let re = z.c[0].re.to_f64().floor() as i64;
    let shift = (2 - re).max(0) as u64;
    let mut poly = Jet::constant(BigC::one(q), order);
    let mut term = z.clone();
    for _ in 0..shift {
        poly = poly.mul(&term);
        term.c[0] = term.c[0].add(&BigC::one(q));
    }
    let w0 = term.c[0].round_prec(q);
    let rg = rgamma_bigc(&w0, q);
    let mut out = Jet::constant(rg.clone(), order);
    if order >= 1 {
        let psi = digamma_bigc(&w0, q).expect("shift guarantees regular point");
        out.c[1] = rg.mul(&psi).neg().mul(&term.c[1]);
        if order >= 2 {
            let psi1 = trigamma_bigc(&w0, q).expect("shift guarantees regular point");
            // rg·[ -ψ u2 + (ψ² - ψ') u1²/2 ]
            let a = psi.mul(&term.c[2]).neg();
            let b = psi
                .mul(&psi)
                .sub(&psi1)
                .mul(&term.c[1].mul(&term.c[1]))
                .mul_pow2(-1);
            out.c[2] = rg.mul(&a.add(&b));
        }
    }
    poly.mul(&out)
}

/// `2^w` for a numeric jet exponent.
pub fn pow2_jet_bigc(e: &Jet<BigC>, prec: u32) -> Jet<BigC> {
    let order = e.order();
    let q = prec + 16;
    let ln2 = BigFloat::ln2(q);
    let v0 = BigC::pow_of_real(&BigFloat::from_i64(2, q), &e.c[0]);
    let mut out = Jet::constant(v0.clone(), order);
    if order >= 1 {
        // d/ds 2^u = ln2 · u' · 2^u
        let l = BigC::from_real(ln2);
        out.c[1] = v0.mul(&l).mul(&e.c[1]);
        if order >= 2 {
            let u1 = e.c[1].mul(&l);
            let u2 = e.c[2].mul(&l);
            // 2^u = v0 (1 + u1 s + u2 s²)(… exp expansion): c2 = v0(u2 + u1²/2)
            out.c[2] = v0.mul(&u2.add(&u1.mul(&u1).mul_pow2(-1)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{rat, rati};

    #[test]
    fn product_leading_coefficient_stays_exact() {
        // (s·a + …)(s·b + …)(c + …) has exact s² coefficient abc even though
        // higher coefficients of each factor are unknown.
        let f = rgamma_affine_exact(&rati(-2), &rati(1), 3).unwrap();
        let g = rgamma_affine_exact(&rati(-3), &rati(1), 3).unwrap();
        let h = rgamma_affine_exact(&rat(1, 2), &rati(5), 3).unwrap();
        let p = f.mul(&g).mul(&h);
        assert!(p.c[0].is_exact_zero());
        assert!(p.c[1].is_exact_zero());
        let lead = p.c[2].known().expect("s² coefficient must be exact");
        // (−1)^2·2! · (−1)^3·3! · 1/Γ(1/2) = −12/√π
        let want = &Structured::from_rat(rati(-12)) * &Structured::pi_pow_half(-1);
        assert_eq!(lead, &want);
        assert!(p.c[3].known().is_none());
    }

    #[test]
    fn pochhammer_jet_matches_closed_form() {
        // (x0 + s)_3 at x0 = -1: (-1+s)(s)(1+s) → s·(s²-1) = -s + s³
        let x = Jet::affine(
            TCoeff::known_rat(rati(-1)),
            TCoeff::known_rat(rati(1)),
            3,
        );
        let p = x.pochhammer(3);
        assert!(p.c[0].is_exact_zero());
        assert_eq!(p.c[1].known().unwrap().as_rational(), Some(rati(-1)));
        assert!(p.c[2].is_exact_zero());
        assert_eq!(p.c[3].known().unwrap().as_rational(), Some(rati(1)));
    }

    #[test]
    fn numeric_rgamma_jet_matches_finite_difference() {
        use crate::numerics::bigc::BigC;
        let prec = 256;
        let z0 = BigC::from_crat(&CRatHelper::new(rat(-5, 2), rat(1, 3)), prec);
        let dir = BigC::from_crat(&CRatHelper::new(rat(2, 1), rat(-1, 7)), prec);
        let jet = Jet {
            c: vec![z0.clone(), dir.clone(), BigC::zero(prec)],
        };
        let rj = rgamma_jet_bigc(&jet, prec);
        // central difference with h = 2^-60
        let h = BigFloat::from_i64(1, prec).mul_pow2(-60);
        let zp = z0.add(&dir.mul_real(&h));
        let zm = z0.sub(&dir.mul_real(&h));
        let fd = rgamma_bigc(&zp, prec)
            .sub(&rgamma_bigc(&zm, prec))
            .div(&BigC::from_real(h.mul_pow2(1)));
        let err = BigC::rel_err_log2(&fd, &rj.c[1]).unwrap_or(f64::NEG_INFINITY);
        assert!(err < -66.0, "first-order jet vs finite difference: 2^{err}");
    }

    use crate::numerics::rational::CRat as CRatHelper;
}
