//! Closed-form evaluation of the coefficient families on the basis
//! multi-indices, plus the scalar identities around the Bernstein–Sato
//! polynomial of the distance kernel.
//!
//! Every formula is represented as a product of primitive factors
//! (rationals, powers of 2 and π, Pochhammer symbols, reciprocal Γ). That
//! single representation drives three evaluators:
//!
//! * exact-zero detection (a vanishing Pochhammer or a 1/Γ pole) decided on
//!   the exact arguments before anything numeric happens — a `Numeric`
//!   result is therefore always a certificate of nonvanishing;
//! * structured-exact evaluation whenever every Γ argument is a half-integer
//!   and every 2-exponent is half-integral;
//! * arbitrary-precision complex evaluation otherwise.
//!
//! The same factor lists are lifted to jets by the probes module.

use serde::Serialize;

use crate::numerics::bigc::BigC;
use crate::numerics::gamma::{
    gamma_bigc, gamma_half, pochhammer_bigc, pochhammer_is_zero, rgamma_bigc, rgamma_half,
    PoleError,
};
use crate::numerics::jet::{Jet, TCoeff};
use crate::numerics::rational::{as_i64, is_half_integer, rat, rati, CRat, Rat};
use crate::numerics::structured::Structured;
use crate::parameter_space::{rotate3, slot, Ambient, GeometricParam, SpectralParam};

// ---------------------------------------------------------------------------
// Basic data types.
// ---------------------------------------------------------------------------

/// Multi-index of a basis coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MultiIndex {
    pub a: [u64; 3],
}

impl MultiIndex {
    pub fn new(a1: u64, a2: u64, a3: u64) -> Self {
        MultiIndex { a: [a1, a2, a3] }
    }

    pub fn sum(&self) -> u64 {
        self.a.iter().sum()
    }

    pub fn get(&self, j: usize) -> u64 {
        self.a[slot(j as i64) - 1]
    }

    /// All multi-indices with every component `<= bound`.
    pub fn grid(bound: u64) -> Vec<MultiIndex> {
        let mut v = Vec::new();
        for a1 in 0..=bound {
            for a2 in 0..=bound {
                for a3 in 0..=bound {
                    v.push(MultiIndex::new(a1, a2, a3));
                }
            }
        }
        v
    }
}

/// Value of a coefficient: exact when the argument grid allows it, numeric
/// otherwise. A `Numeric` value is never exactly zero (exact zeros are
/// detected upfront).
#[derive(Clone, Debug)]
pub enum CoeffValue {
    Exact(Structured),
    Numeric(BigC),
}

impl CoeffValue {
    pub fn exact(&self) -> Option<&Structured> {
        match self {
            CoeffValue::Exact(s) => Some(s),
            CoeffValue::Numeric(_) => None,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, CoeffValue::Exact(s) if s.is_zero())
    }

    pub fn to_bigc(&self, prec: u32) -> BigC {
        match self {
            CoeffValue::Exact(s) => s.to_bigc(prec),
            CoeffValue::Numeric(z) => z.round_prec(prec),
        }
    }

    /// Divide out a family prefactor, landing in the rationals when the
    /// value is exact and the quotient is π-free with an even 2-exponent.
    pub fn stripped(&self, prefactor: &Structured) -> Option<Rat> {
        let s = self.exact()?;
        if s.is_zero() {
            return Some(Rat::from_integer(0.into()));
        }
        (s * &prefactor.inv()).as_rational()
    }
}

/// Identifier of a coefficient family, with its discrete parameters.
/// The continuous parameters come from the evaluation point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyId {
    /// The normalized kernel family itself.
    Ktilde,
    /// Type-I residue family on the plane `α_slot = -(n-1)-2k`.
    T { slot: usize, k: i64 },
    /// Diagonal family on `Σλ = -rho-2k`.
    S { k: i64 },
    /// Kernel-times-intertwiner family on `α_slot = 2l`.
    R { slot: usize, l: i64 },
    /// Mixed-second-derivative family at a two-line point whose type-I line
    /// pins slot `slot`; `(l1, m2, m3)` in the rotated normal form.
    Q { slot: usize, l1: i64, m2: i64, m3: i64 },
}

#[derive(Debug, Clone)]
pub enum CoeffError {
    Domain(String),
    Constraint(String),
    Pole(PoleError),
}

impl std::fmt::Display for CoeffError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CoeffError::Domain(s) => write!(f, "domain error: {s}"),
            CoeffError::Constraint(s) => write!(f, "constraint violated: {s}"),
            CoeffError::Pole(p) => write!(f, "{p}"),
        }
    }
}

impl std::error::Error for CoeffError {}

impl From<PoleError> for CoeffError {
    fn from(p: PoleError) -> Self {
        CoeffError::Pole(p)
    }
}

// ---------------------------------------------------------------------------
// Factored formulas.
// ---------------------------------------------------------------------------

/// Argument affine in the probe variable: `v + d·s`.
#[derive(Clone, Debug)]
pub struct AffArg {
    pub v: CRat,
    pub d: CRat,
}

impl AffArg {
    pub fn cst(v: CRat) -> Self {
        AffArg {
            v,
            d: CRat::zero(),
        }
    }
}

/// Primitive factor of a closed-form coefficient.
#[derive(Clone, Debug)]
pub enum Factor {
    /// Exact Gaussian-rational constant.
    Rat(CRat),
    /// Exact structured constant.
    Const(Structured),
    /// Rising factorial `(arg)_n`.
    Poch(AffArg, u64),
    /// `1/Γ(arg)` (entire).
    RGamma(AffArg),
    /// `Γ(arg)` in a numerator; evaluation fails on a pole.
    GammaNum(AffArg),
    /// `2^arg`.
    Pow2(AffArg),
    /// `π^(units/2)`.
    PiHalf(i64),
}

/// A coefficient as a product of primitive factors.
#[derive(Clone, Debug, Default)]
pub struct Formula {
    pub factors: Vec<Factor>,
}

impl Formula {
    pub fn push_factor(&mut self, f: Factor) {
        self.factors.push(f);
    }

    /// Exact vanishing test: some Pochhammer contains the factor 0, or some
    /// 1/Γ sits on a pole (at `s = 0`).
    pub fn is_exact_zero_at_base(&self) -> bool {
        self.factors.iter().any(|f| match f {
            Factor::Rat(c) => c.is_zero(),
            Factor::Const(s) => s.is_zero(),
            Factor::Poch(arg, n) => pochhammer_is_zero(&arg.v, *n),
            Factor::RGamma(arg) => arg.v.is_nonpositive_integer(),
            _ => false,
        })
    }

    /// Structured-exact product, when all arguments lie on the half-integer
    /// grid; `Ok(None)` means "fall back to numerics".
    pub fn eval_exact(&self) -> Result<Option<Structured>, PoleError> {
        // Pole check first: it is an error regardless of representability.
        for f in &self.factors {
            if let Factor::GammaNum(arg) = f {
                if arg.v.is_nonpositive_integer() {
                    return Err(PoleError {
                        arg: arg.v.to_string(),
                    });
                }
            }
        }
        if self.is_exact_zero_at_base() {
            return Ok(Some(Structured::zero()));
        }
        let mut acc = Structured::one();
        for f in &self.factors {
            let part = match f {
                Factor::Rat(c) => match c.as_real() {
                    Some(r) => Structured::from_rat(r.clone()),
                    None => return Ok(None),
                },
                Factor::Const(s) => s.clone(),
                Factor::Poch(arg, n) => match arg.v.as_real() {
                    Some(r) => {
                        Structured::from_rat(crate::numerics::gamma::pochhammer_rat(r, *n))
                    }
                    None => return Ok(None),
                },
                Factor::RGamma(arg) => match arg.v.as_real() {
                    Some(r) if is_half_integer(r) => rgamma_half(r),
                    _ => return Ok(None),
                },
                Factor::GammaNum(arg) => match arg.v.as_real() {
                    Some(r) if is_half_integer(r) => gamma_half(r)?,
                    _ => return Ok(None),
                },
                Factor::Pow2(arg) => match arg.v.as_real() {
                    Some(r) if is_half_integer(r) => {
                        let two_half = as_i64(&(r * rati(2))).expect("2-exponent fits");
                        Structured::two_pow_half(two_half)
                    }
                    _ => return Ok(None),
                },
                Factor::PiHalf(u) => Structured::pi_pow_half(*u),
            };
            acc = &acc * &part;
        }
        Ok(Some(acc))
    }

    /// Arbitrary-precision evaluation at `s = 0`.
    pub fn eval_numeric(&self, prec: u32) -> Result<BigC, PoleError> {
        let q = prec + 16;
        let mut acc = BigC::one(q);
        for f in &self.factors {
            let part = match f {
                Factor::Rat(c) => BigC::from_crat(c, q),
                Factor::Const(s) => s.to_bigc(q),
                Factor::Poch(arg, n) => pochhammer_bigc(&BigC::from_crat(&arg.v, q), *n),
                Factor::RGamma(arg) => rgamma_bigc(&BigC::from_crat(&arg.v, q), q),
                Factor::GammaNum(arg) => {
                    if arg.v.is_nonpositive_integer() {
                        return Err(PoleError {
                            arg: arg.v.to_string(),
                        });
                    }
                    gamma_bigc(&BigC::from_crat(&arg.v, q), q)?
                }
                Factor::Pow2(arg) => {
                    let e = BigC::from_crat(&arg.v, q);
                    BigC::pow_of_real(&crate::numerics::bigfloat::BigFloat::from_i64(2, q), &e)
                }
                Factor::PiHalf(u) => Structured::pi_pow_half(*u).to_bigc(q),
            };
            acc = acc.mul(&part);
        }
        Ok(acc.round_prec(prec))
    }

    /// Exact when possible, numeric otherwise.
    pub fn eval(&self, prec: u32) -> Result<CoeffValue, PoleError> {
        match self.eval_exact()? {
            Some(s) => Ok(CoeffValue::Exact(s)),
            None => Ok(CoeffValue::Numeric(self.eval_numeric(prec)?)),
        }
    }

    /// Exact jet in the probe variable, to the given order. `None` when some
    /// argument leaves the half-integer grid or is not real. Coefficients
    /// above the first nonvanishing one may come back `Unknown` (they
    /// involve digamma values); the leading data is always exact.
    pub fn eval_jet_exact(&self, order: usize) -> Option<Jet<TCoeff>> {
        let mut acc = Jet::constant(TCoeff::Known(Structured::one()), order);
        for f in &self.factors {
            let jet = match f {
                Factor::Rat(c) => {
                    let r = c.as_real()?;
                    Jet::constant(TCoeff::known_rat(r.clone()), order)
                }
                Factor::Const(s) => Jet::constant(TCoeff::Known(s.clone()), order),
                Factor::Poch(arg, n) => {
                    let v = arg.v.as_real()?;
                    let d = arg.d.as_real()?;
                    Jet::affine(
                        TCoeff::known_rat(v.clone()),
                        TCoeff::known_rat(d.clone()),
                        order,
                    )
                    .pochhammer(*n)
                }
                Factor::RGamma(arg) => {
                    let v = arg.v.as_real()?;
                    let d = arg.d.as_real()?;
                    crate::numerics::jet::rgamma_affine_exact(v, d, order)?
                }
                Factor::GammaNum(_) => return None,
                Factor::Pow2(arg) => {
                    let v = arg.v.as_real()?;
                    let d = arg.d.as_real()?;
                    crate::numerics::jet::pow2_affine_exact(v, d, order)?
                }
                Factor::PiHalf(u) => {
                    Jet::constant(TCoeff::Known(Structured::pi_pow_half(*u)), order)
                }
            };
            acc = acc.mul(&jet);
        }
        Some(acc)
    }

    /// Numeric jet (order at most 2).
    pub fn eval_jet_numeric(&self, order: usize, prec: u32) -> Jet<BigC> {
        assert!(order <= 2, "numeric jets support order <= 2");
        let q = prec + 16;
        let mut acc = Jet::constant(BigC::one(q), order);
        for f in &self.factors {
            let jet = match f {
                Factor::Rat(c) => Jet::constant(BigC::from_crat(c, q), order),
                Factor::Const(s) => Jet::constant(s.to_bigc(q), order),
                Factor::Poch(arg, n) => Jet::affine(
                    BigC::from_crat(&arg.v, q),
                    BigC::from_crat(&arg.d, q),
                    order,
                )
                .pochhammer(*n),
                Factor::RGamma(arg) => {
                    let z = Jet::affine(
                        BigC::from_crat(&arg.v, q),
                        BigC::from_crat(&arg.d, q),
                        order,
                    );
                    crate::numerics::jet::rgamma_jet_bigc(&z, q)
                }
                Factor::GammaNum(_) => {
                    unimplemented!("numerator Γ factors are not probed")
                }
                Factor::Pow2(arg) => {
                    let e = Jet::affine(
                        BigC::from_crat(&arg.v, q),
                        BigC::from_crat(&arg.d, q),
                        order,
                    );
                    crate::numerics::jet::pow2_jet_bigc(&e, q)
                }
                Factor::PiHalf(u) => {
                    Jet::constant(Structured::pi_pow_half(*u).to_bigc(q), order)
                }
            };
            acc = acc.mul(&jet);
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// The normalized kernel family.
// ---------------------------------------------------------------------------

fn crat_sum(x: &[CRat]) -> CRat {
    let mut acc = CRat::zero();
    for v in x {
        acc = &acc + v;
    }
    acc
}

fn aff_sum(x: &[AffArg]) -> AffArg {
    AffArg {
        v: crat_sum(&x.iter().map(|a| a.v.clone()).collect::<Vec<_>>()),
        d: crat_sum(&x.iter().map(|a| a.d.clone()).collect::<Vec<_>>()),
    }
}

fn aff_shift(a: &AffArg, c: Rat) -> AffArg {
    AffArg {
        v: &a.v + &CRat::from_rat(c),
        d: a.d.clone(),
    }
}

fn aff_scale(a: &AffArg, c: Rat) -> AffArg {
    let c = CRat::from_rat(c);
    AffArg {
        v: &a.v * &c,
        d: &a.d * &c,
    }
}

/// Factored form of the kernel coefficient in geometric coordinates, with
/// affine slot arguments (slopes all zero for plain evaluation).
#[allow(clippy::needless_range_loop)]
pub fn ktilde_alpha_formula(ambient: &Ambient, alpha: &[AffArg; 3], a: &MultiIndex) -> Formula {
    let n1 = ambient.n() - 1;
    let rho = ambient.rho();
    let mut f = Formula::default();
    f.push_factor(Factor::PiHalf(3 * n1));
    let sum = aff_sum(&alpha.clone());
    f.push_factor(Factor::Pow2(aff_shift(
        &sum,
        rati(2 * a.sum() as i64) - rat(3 * n1, 2),
    )));
    f.push_factor(Factor::Poch(
        aff_shift(&aff_scale(&sum, rat(1, 2)), rati(n1)),
        a.sum(),
    ));
    for j in 0..3 {
        f.push_factor(Factor::Poch(
            aff_shift(&aff_scale(&alpha[j], rat(1, 2)), rho.clone()),
            a.a[j],
        ));
    }
    for j in 0..3 {
        let pair = aff_sum(&[alpha[(j + 1) % 3].clone(), alpha[(j + 2) % 3].clone()]);
        f.push_factor(Factor::RGamma(aff_shift(
            &aff_scale(&pair, rat(1, 2)),
            rati(n1) + rati((a.a[(j + 1) % 3] + a.a[(j + 2) % 3]) as i64),
        )));
    }
    f
}

/// Factored form in spectral coordinates.
#[allow(clippy::needless_range_loop)]
pub fn ktilde_lambda_formula(ambient: &Ambient, lambda: &[AffArg; 3], a: &MultiIndex) -> Formula {
    let n1 = ambient.n() - 1;
    let rho = ambient.rho();
    let mut f = Formula::default();
    f.push_factor(Factor::PiHalf(3 * n1));
    let sum = aff_sum(&lambda.clone());
    f.push_factor(Factor::Pow2(aff_shift(
        &sum,
        rati(2 * a.sum() as i64 - 3 * n1),
    )));
    f.push_factor(Factor::Poch(
        aff_scale(&aff_shift(&sum, rho.clone()), rat(1, 2)),
        a.sum(),
    ));
    for j in 0..3 {
        // ((-λ_j + λ_{j+1} + λ_{j+2} + rho)/2)_{a_j}
        let mut terms = vec![
            lambda[(j + 1) % 3].clone(),
            lambda[(j + 2) % 3].clone(),
            AffArg {
                v: -&lambda[j].v,
                d: -&lambda[j].d,
            },
        ];
        let s = aff_sum(&std::mem::take(&mut terms));
        f.push_factor(Factor::Poch(
            aff_scale(&aff_shift(&s, rho.clone()), rat(1, 2)),
            a.a[j],
        ));
    }
    for j in 0..3 {
        f.push_factor(Factor::RGamma(aff_shift(
            &lambda[j],
            rho.clone() + rati((a.a[(j + 1) % 3] + a.a[(j + 2) % 3]) as i64),
        )));
    }
    f
}

fn aff3(x: &[CRat; 3]) -> [AffArg; 3] {
    [
        AffArg::cst(x[0].clone()),
        AffArg::cst(x[1].clone()),
        AffArg::cst(x[2].clone()),
    ]
}

/// Kernel coefficient in geometric coordinates.
pub fn ktilde_alpha(alpha: &GeometricParam, a: &MultiIndex, prec: u32) -> CoeffValue {
    ktilde_alpha_formula(&alpha.ambient, &aff3(&alpha.alpha), a)
        .eval(prec)
        .expect("kernel coefficients have no numerator Γ")
}

/// Kernel coefficient in spectral coordinates.
pub fn ktilde_lambda(lam: &SpectralParam, a: &MultiIndex, prec: u32) -> CoeffValue {
    ktilde_lambda_formula(&lam.ambient, &aff3(&lam.lambda), a)
        .eval(prec)
        .expect("kernel coefficients have no numerator Γ")
}

// ---------------------------------------------------------------------------
// The type-I residue family.
// ---------------------------------------------------------------------------

/// `n!` as a rational.
pub fn factorial_pub(n: i64) -> Rat {
    factorial_rat(n)
}

fn factorial_rat(n: i64) -> Rat {
    let mut acc = Rat::from_integer(1.into());
    for i in 2..=n {
        acc *= rati(i);
    }
    acc
}

fn sign_rat(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        rati(1)
    } else {
        rati(-1)
    }
}

/// Coefficient of the type-I residue family, distinguished slot `dslot`,
/// plane index `k`, free parameters `pair = (α_i, α_j)` for the two other
/// slots in increasing slot order.
///
/// The closed form is normalized so that on the plane
/// `α_dslot = -(n-1) - 2k` the kernel coefficient equals
/// `(-1)^k 2^{-2k} π^rho / (Γ(rho+k) Γ(rho+α_i/2) Γ(rho+α_j/2))` times this
/// family — the relation the identity suite checks verbatim.
pub fn ttilde_coeff(
    dslot: usize,
    k: i64,
    pair: (&CRat, &CRat),
    ambient: &Ambient,
    a: &MultiIndex,
    prec: u32,
) -> Result<CoeffValue, CoeffError> {
    if k < 0 {
        return Err(CoeffError::Domain(format!(
            "plane index k must be nonnegative, got {k}"
        )));
    }
    if !(1..=3).contains(&dslot) {
        return Err(CoeffError::Domain(format!("slot must be 1..=3, got {dslot}")));
    }
    let n1 = ambient.n() - 1;
    let rho = ambient.rho();
    // Cyclic normal form: distinguished slot last.
    let (b1, b2) = (pair.0.clone(), pair.1.clone());
    // The free pair is given in increasing slot order; each free parameter
    // pairs with its own slot's index, the distinguished slot's index is c3.
    let (c1, c2, c3) = match dslot {
        3 => (a.a[0], a.a[1], a.a[2]),
        1 => (a.a[1], a.a[2], a.a[0]),
        _ => (a.a[0], a.a[2], a.a[1]),
    };
    if c3 > k as u64 {
        return Ok(CoeffValue::Exact(Structured::zero()));
    }
    let len = (k as u64) - c3;
    let half = rat(1, 2);
    let mut f = Formula::default();
    f.push_factor(Factor::Rat(CRat::from_rat(sign_rat(k))));
    f.push_factor(Factor::Const(gamma_half(&(rho.clone() + rati(k)))?));
    f.push_factor(Factor::PiHalf(2 * n1));
    let bsum = &b1 + &b2;
    f.push_factor(Factor::Pow2(AffArg::cst(
        &bsum + &CRat::from_rat(rati(2 * a.sum() as i64) - rat(5 * n1, 2)),
    )));
    f.push_factor(Factor::Poch(AffArg::cst(CRat::from_i64(-k)), c3));
    f.push_factor(Factor::Poch(
        AffArg::cst(
            &bsum.scale(&half) + &CRat::from_rat(rho.clone() - rati(k)),
        ),
        a.sum(),
    ));
    for (b, c) in [(b1.clone(), c1), (b2.clone(), c2)] {
        f.push_factor(Factor::Poch(
            AffArg::cst(
                &b.scale(&half)
                    + &CRat::from_rat(rho.clone() + rati(c as i64) - rati(len as i64)),
            ),
            len,
        ));
    }
    f.push_factor(Factor::RGamma(AffArg::cst(
        &bsum.scale(&half) + &CRat::from_rat(rati(n1) + rati((c1 + c2) as i64)),
    )));
    Ok(f.eval(prec)?)
}

// ---------------------------------------------------------------------------
// The diagonal family.
// ---------------------------------------------------------------------------

/// Coefficient of the diagonal family of order `k` at a spectral point with
/// `Σλ = -rho - 2k`. Symmetric under simultaneous permutation of the λ's
/// and the multi-index, so no slot parameter is needed.
pub fn s_coeff(
    k: i64,
    lam: &SpectralParam,
    a: &MultiIndex,
    prec: u32,
) -> Result<CoeffValue, CoeffError> {
    if k < 0 {
        return Err(CoeffError::Domain(format!(
            "order k must be nonnegative, got {k}"
        )));
    }
    let rho = lam.ambient.rho();
    let want = CRat::from_rat(-rho.clone() - rati(2 * k));
    if lam.sum() != want {
        return Err(CoeffError::Constraint(format!(
            "Σλ must equal -rho-2k = {want}, got {}",
            lam.sum()
        )));
    }
    if a.sum() > k as u64 {
        return Ok(CoeffValue::Exact(Structured::zero()));
    }
    let n1 = lam.ambient.n() - 1;
    let mut f = Formula::default();
    f.push_factor(Factor::Pow2(AffArg::cst(CRat::from_rat(
        rat(3 * n1, 2) + rati(2 * k + 2 * a.sum() as i64),
    ))));
    f.push_factor(Factor::PiHalf(n1));
    f.push_factor(Factor::Const(gamma_half(&(rho.clone() + rati(k)))?));
    f.push_factor(Factor::Const(gamma_half(&rati(n1))?.inv()));
    f.push_factor(Factor::Poch(AffArg::cst(CRat::from_i64(-k)), a.sum()));
    for j in 0..3 {
        f.push_factor(Factor::Poch(
            AffArg::cst(&CRat::from_i64(-k) - &lam.lambda[j]),
            a.a[j],
        ));
    }
    for j in 0..3 {
        let others = a.a[(j + 1) % 3] + a.a[(j + 2) % 3];
        f.push_factor(Factor::Poch(
            AffArg::cst(
                &lam.lambda[j] + &CRat::from_rat(rho.clone() + rati(others as i64)),
            ),
            k as u64 - others,
        ));
    }
    Ok(f.eval(prec)?)
}

// ---------------------------------------------------------------------------
// The kernel-times-intertwiner family.
// ---------------------------------------------------------------------------

/// Coefficient of the family attached to the plane `α_dslot = 2l`, free
/// parameters `pair` for the other two slots in increasing slot order.
///
/// Normalized so that on that plane the kernel coefficient equals
/// `1/(Γ(l+rho) Γ((α_i+α_j)/2 + l + 2rho))` times this family.
pub fn r_coeff(
    dslot: usize,
    l: i64,
    pair: (&CRat, &CRat),
    ambient: &Ambient,
    a: &MultiIndex,
    prec: u32,
) -> Result<CoeffValue, CoeffError> {
    if l < 0 {
        return Err(CoeffError::Domain(format!(
            "plane index l must be nonnegative, got {l}"
        )));
    }
    if !(1..=3).contains(&dslot) {
        return Err(CoeffError::Domain(format!("slot must be 1..=3, got {dslot}")));
    }
    let n1 = ambient.n() - 1;
    let rho = ambient.rho();
    let (b1, b2) = (pair.0.clone(), pair.1.clone());
    // The free pair is given in increasing slot order; each free parameter
    // pairs with its own slot's index, the distinguished slot's index is c3.
    let (c1, c2, c3) = match dslot {
        3 => (a.a[0], a.a[1], a.a[2]),
        1 => (a.a[1], a.a[2], a.a[0]),
        _ => (a.a[0], a.a[2], a.a[1]),
    };
    let half = rat(1, 2);
    let mut f = Formula::default();
    f.push_factor(Factor::PiHalf(3 * n1));
    let bsum = &b1 + &b2;
    f.push_factor(Factor::Pow2(AffArg::cst(
        &bsum + &CRat::from_rat(rati(2 * l + 2 * a.sum() as i64) - rat(3 * n1, 2)),
    )));
    f.push_factor(Factor::Const(gamma_half(
        &(rho.clone() + rati(l) + rati(c3 as i64)),
    )?));
    f.push_factor(Factor::Poch(
        AffArg::cst(&b1.scale(&half) + &CRat::from_rat(rho.clone())),
        c1,
    ));
    f.push_factor(Factor::Poch(
        AffArg::cst(&b2.scale(&half) + &CRat::from_rat(rho.clone())),
        c2,
    ));
    f.push_factor(Factor::Poch(
        AffArg::cst(
            &bsum.scale(&half) + &CRat::from_rat(rati(n1) + rati((c1 + c2) as i64)),
        ),
        l as u64 + c3,
    ));
    for (b, c) in [(b1, c1), (b2, c2)] {
        f.push_factor(Factor::RGamma(AffArg::cst(
            &b.scale(&half)
                + &CRat::from_rat(rati(n1 + l) + rati(c as i64) + rati(c3 as i64)),
        )));
    }
    Ok(f.eval(prec)?)
}

// ---------------------------------------------------------------------------
// The mixed-second-derivative family at two-line points of mixed type.
// ---------------------------------------------------------------------------

/// Integer data of the mixed-type two-line normal form. Valid iff
/// `l1 + m2 + m3` is even and `|m2 ± m3| <= l1` (equivalently all four of
/// `k1, k2, k3, k` are nonnegative).
#[derive(Clone, Copy, Debug)]
pub struct MixedPoint {
    pub l1: i64,
    pub m2: i64,
    pub m3: i64,
}

impl MixedPoint {
    pub fn validate(&self) -> Result<(i64, i64, i64, i64), CoeffError> {
        let MixedPoint { l1, m2, m3 } = *self;
        if (l1 + m2 + m3).rem_euclid(2) != 0 || (m2 + m3).abs() > l1 || (m2 - m3).abs() > l1 {
            return Err(CoeffError::Constraint(format!(
                "(l1,m2,m3) = ({l1},{m2},{m3}) is not a mixed two-line normal form"
            )));
        }
        let k1 = (l1 + m2 + m3) / 2;
        let k2 = (l1 + m2 - m3) / 2;
        let k3 = (l1 - m2 + m3) / 2;
        let k = k2 + k3 - k1;
        Ok((k1, k2, k3, k))
    }
}

/// Coefficient of the mixed-second-derivative family in normal form
/// (distinguished slot first: `λ = (-rho-l1, m2, m3)`).
///
/// The value equals the second Taylor coefficient of the kernel coefficient
/// along `λ(s) = (-rho-l1, m2+2s, m3)`; the probes module cross-checks this
/// against jet arithmetic.
pub fn q_coeff(
    point: &MixedPoint,
    ambient: &Ambient,
    a: &MultiIndex,
    prec: u32,
) -> Result<CoeffValue, CoeffError> {
    let (k1, k2, k3, k) = point.validate()?;
    let (a1, a2, a3) = (a.a[0] as i64, a.a[1] as i64, a.a[2] as i64);
    let sum = a1 + a2 + a3;
    let n1 = ambient.n() - 1;
    let rho = ambient.rho();
    // Outside the support pattern the second Taylor coefficient vanishes:
    // either the s-independent 1/Γ factor is pinned at a pole, or the zero
    // at s = 0 has order at least three.
    if a2 + a3 <= k2 + k3 || (a2 > k2 && a3 > k3) {
        return Ok(CoeffValue::Exact(Structured::zero()));
    }
    let branch_a = a2 <= k2;
    // the two branches cannot overlap: a2 <= k2 and a3 <= k3 would force
    // a2+a3 <= k2+k3, already returned above
    debug_assert!(!(a2 <= k2 && a3 <= k3));
    let mut f = Formula::default();
    f.push_factor(Factor::PiHalf(3 * n1));
    f.push_factor(Factor::Pow2(AffArg::cst(CRat::from_rat(
        rati(-3 * n1 - 2 * k + 2 * sum) - rho.clone(),
    ))));
    f.push_factor(Factor::Rat(CRat::from_rat(
        sign_rat(k) * factorial_rat(k) * factorial_rat(sum - k - 1),
    )));
    f.push_factor(Factor::Poch(
        AffArg::cst(CRat::from_rat(rho.clone() + rati(k1))),
        a1 as u64,
    ));
    if branch_a {
        f.push_factor(Factor::Poch(AffArg::cst(CRat::from_i64(-k2)), a2 as u64));
        f.push_factor(Factor::Rat(CRat::from_rat(
            sign_rat(k3) * factorial_rat(k3) * factorial_rat(a3 - k3 - 1),
        )));
    } else {
        f.push_factor(Factor::Poch(AffArg::cst(CRat::from_i64(-k3)), a3 as u64));
        // The vanishing factor here is (-k2 - s)_{a2}: its linear
        // coefficient carries an extra minus sign relative to the mirrored
        // branch, because the probe moves slot 2 with +2s.
        f.push_factor(Factor::Rat(CRat::from_rat(
            -(sign_rat(k2) * factorial_rat(k2) * factorial_rat(a2 - k2 - 1)),
        )));
    }
    f.push_factor(Factor::RGamma(AffArg::cst(CRat::from_i64(
        -point.l1 + a2 + a3,
    ))));
    f.push_factor(Factor::RGamma(AffArg::cst(CRat::from_rat(
        rati(point.m2) + rho.clone() + rati(a3 + a1),
    ))));
    f.push_factor(Factor::RGamma(AffArg::cst(CRat::from_rat(
        rati(point.m3) + rho.clone() + rati(a2 + a1),
    ))));
    Ok(f.eval(prec)?)
}

// ---------------------------------------------------------------------------
// Bernstein–Sato polynomial and the sphere-integral scalars.
// ---------------------------------------------------------------------------

/// `b(α) = (Σα + 2(n-1)) (Σα + n + 1) (α3 + n - 1) (α3 + 2)`.
pub fn bernstein_b_crat(alpha: &GeometricParam) -> CRat {
    let n = alpha.ambient.n();
    let s = alpha.sum();
    let a3 = alpha.get(3);
    let t1 = &s + &CRat::from_i64(2 * (n - 1));
    let t2 = &s + &CRat::from_i64(n + 1);
    let t3 = a3 + &CRat::from_i64(n - 1);
    let t4 = a3 + &CRat::from_i64(2);
    &(&t1 * &t2) * &(&t3 * &t4)
}

pub fn bernstein_b(alpha: &GeometricParam, prec: u32) -> CoeffValue {
    let v = bernstein_b_crat(alpha);
    match v.as_real() {
        Some(r) => CoeffValue::Exact(Structured::from_rat(r.clone())),
        None => CoeffValue::Numeric(BigC::from_crat(&v, prec)),
    }
}

/// `∫_S |1-x|^s dx = (2√π)^{n-1} 2^s Γ(s/2+rho) / Γ(s/2+2rho)`.
pub fn sint1(s: &CRat, ambient: &Ambient, prec: u32) -> Result<CoeffValue, CoeffError> {
    let n1 = ambient.n() - 1;
    let rho = ambient.rho();
    let half = rat(1, 2);
    let mut f = Formula::default();
    f.push_factor(Factor::Pow2(AffArg::cst(&CRat::from_i64(n1) + s)));
    f.push_factor(Factor::PiHalf(n1));
    f.push_factor(Factor::GammaNum(AffArg::cst(
        &s.scale(&half) + &CRat::from_rat(rho.clone()),
    )));
    f.push_factor(Factor::RGamma(AffArg::cst(
        &s.scale(&half) + &CRat::from_i64(n1),
    )));
    Ok(f.eval(prec)?)
}

/// `∫_S |1-x|^s x_1 dx = -(2√π)^{n-1} 2^s (s/2) Γ(s/2+rho) / Γ(s/2+n)`.
pub fn sint2(s: &CRat, ambient: &Ambient, prec: u32) -> Result<CoeffValue, CoeffError> {
    let n1 = ambient.n() - 1;
    let rho = ambient.rho();
    let half = rat(1, 2);
    if s.is_zero() {
        return Ok(CoeffValue::Exact(Structured::zero()));
    }
    let mut f = Formula::default();
    f.push_factor(Factor::Rat(-s.scale(&half)));
    f.push_factor(Factor::Pow2(AffArg::cst(&CRat::from_i64(n1) + s)));
    f.push_factor(Factor::PiHalf(n1));
    f.push_factor(Factor::GammaNum(AffArg::cst(
        &s.scale(&half) + &CRat::from_rat(rho.clone()),
    )));
    f.push_factor(Factor::RGamma(AffArg::cst(
        &s.scale(&half) + &CRat::from_i64(n1 + 1),
    )));
    Ok(f.eval(prec)?)
}

/// The double sphere integral of `|u-x|^s |t-y|^r |x-y|^2`, as a function of
/// `d = |u-t|^2`:
/// `(4π)^{n-1} [Γ(s/2+rho)Γ(r/2+rho)/(Γ(s/2+n)Γ(r/2+n))] 2^{s+r}
///  ((rs/4) d + (n-1)(r+s) + 2(n-1)²)`.
pub fn srint(
    s: &CRat,
    r: &CRat,
    d: &CRat,
    ambient: &Ambient,
    prec: u32,
) -> Result<CoeffValue, CoeffError> {
    let n1 = ambient.n() - 1;
    let rho = ambient.rho();
    let half = rat(1, 2);
    let quarter = rat(1, 4);
    let poly = &(&(&(r * s).scale(&quarter) * d)
        + &(&(r + s) * &CRat::from_i64(n1)))
        + &CRat::from_i64(2 * n1 * n1);
    if poly.is_zero() {
        return Ok(CoeffValue::Exact(Structured::zero()));
    }
    let mut f = Formula::default();
    f.push_factor(Factor::Rat(poly));
    f.push_factor(Factor::Pow2(AffArg::cst(&(s + r) + &CRat::from_i64(2 * n1))));
    f.push_factor(Factor::PiHalf(2 * n1));
    f.push_factor(Factor::GammaNum(AffArg::cst(
        &s.scale(&half) + &CRat::from_rat(rho.clone()),
    )));
    f.push_factor(Factor::GammaNum(AffArg::cst(
        &r.scale(&half) + &CRat::from_rat(rho.clone()),
    )));
    f.push_factor(Factor::RGamma(AffArg::cst(
        &s.scale(&half) + &CRat::from_i64(n1 + 1),
    )));
    f.push_factor(Factor::RGamma(AffArg::cst(
        &r.scale(&half) + &CRat::from_i64(n1 + 1),
    )));
    Ok(f.eval(prec)?)
}

/// The bi-intertwiner applied to `1⊗1`, in spectral form: the pair
/// `(coefficient of |u-t|², constant term)`:
/// `(λ1+rho)(λ2+rho) [ (λ1+rho+1)(λ2+rho+1)·|u-t|² - 2(n-1)(λ1+λ2+2) ]`.
pub fn e_one_one(l1: &CRat, l2: &CRat, ambient: &Ambient) -> (CRat, CRat) {
    let rho = CRat::from_rat(ambient.rho());
    let one = CRat::one();
    let n1 = CRat::from_i64(ambient.n() - 1);
    let p = &(l1 + &rho) * &(l2 + &rho);
    let quad = &(&(l1 + &rho) + &one) * &(&(l2 + &rho) + &one);
    let lin = &(&n1 * &(&(l1 + l2) + &CRat::from_i64(2))) * &CRat::from_i64(2);
    (&p * &quad, -&(&p * &lin))
}

/// Same operator value in geometric form:
/// `((α2+α3)/2+n-1)((α1+α3)/2+n-1) [ ((α2+α3)/2+n)((α1+α3)/2+n)·|u-t|²
///   - (n-1)(α1+α2+2α3+2n+2) ]`.
pub fn e_one_one_alpha(alpha: &GeometricParam) -> (CRat, CRat) {
    let n = alpha.ambient.n();
    let half = rat(1, 2);
    let h23 = (alpha.get(2) + alpha.get(3)).scale(&half);
    let h13 = (alpha.get(1) + alpha.get(3)).scale(&half);
    let p = &(&h23 + &CRat::from_i64(n - 1)) * &(&h13 + &CRat::from_i64(n - 1));
    let quad = &(&h23 + &CRat::from_i64(n)) * &(&h13 + &CRat::from_i64(n));
    let lin_arg = &(&(alpha.get(1) + alpha.get(2)) + &(alpha.get(3) + alpha.get(3)))
        + &CRat::from_i64(2 * n + 2);
    let lin = &CRat::from_i64(n - 1) * &lin_arg;
    (&p * &quad, -&(&p * &lin))
}

/// The unnormalized kernel evaluated at `1⊗1⊗1`:
/// `(π/2)^{3(n-1)/2} 2^{Σα} Γ(Σα/2+2rho) Γ(α1/2+rho) Γ(α2/2+rho) Γ(α3/2+rho)
///  / (Γ((α1+α2)/2+2rho) Γ((α2+α3)/2+2rho) Γ((α3+α1)/2+2rho))`.
pub fn k111(alpha: &GeometricParam, prec: u32) -> Result<CoeffValue, CoeffError> {
    let n1 = alpha.ambient.n() - 1;
    let rho = alpha.ambient.rho();
    let half = rat(1, 2);
    let mut f = Formula::default();
    f.push_factor(Factor::PiHalf(3 * n1));
    f.push_factor(Factor::Pow2(AffArg::cst(
        &alpha.sum() + &CRat::from_rat(-rat(3 * n1, 2)),
    )));
    f.push_factor(Factor::GammaNum(AffArg::cst(
        &alpha.sum().scale(&half) + &CRat::from_i64(n1),
    )));
    for j in 1..=3 {
        f.push_factor(Factor::GammaNum(AffArg::cst(
            &alpha.get(j).scale(&half) + &CRat::from_rat(rho.clone()),
        )));
    }
    for j in 1..=3usize {
        f.push_factor(Factor::RGamma(AffArg::cst(
            &(alpha.get(j) + alpha.get(j + 1)).scale(&half) + &CRat::from_i64(n1),
        )));
    }
    Ok(f.eval(prec)?)
}

// ---------------------------------------------------------------------------
// Family dispatch (used by rank computations and the CLI).
// ---------------------------------------------------------------------------

/// Evaluate a family at a common spectral point.
pub fn family_coeff(
    id: &FamilyId,
    lam: &SpectralParam,
    a: &MultiIndex,
    prec: u32,
) -> Result<CoeffValue, CoeffError> {
    let ambient = &lam.ambient;
    match id {
        FamilyId::Ktilde => Ok(ktilde_lambda(lam, a, prec)),
        FamilyId::T { slot: ds, k } => {
            let alpha = crate::parameter_space::to_geometric(lam);
            let (i, j) = other_slots(*ds);
            ttilde_coeff(*ds, *k, (alpha.get(i), alpha.get(j)), ambient, a, prec)
        }
        FamilyId::S { k } => s_coeff(*k, lam, a, prec),
        FamilyId::R { slot: ds, l } => {
            let alpha = crate::parameter_space::to_geometric(lam);
            let (i, j) = other_slots(*ds);
            r_coeff(*ds, *l, (alpha.get(i), alpha.get(j)), ambient, a, prec)
        }
        FamilyId::Q { slot: ds, l1, m2, m3 } => {
            let ra = rotate3(&a.a, *ds);
            q_coeff(
                &MixedPoint {
                    l1: *l1,
                    m2: *m2,
                    m3: *m3,
                },
                ambient,
                &MultiIndex { a: ra },
                prec,
            )
        }
    }
}

/// The two non-distinguished slots in increasing order.
pub fn other_slots(dslot: usize) -> (usize, usize) {
    match dslot {
        1 => (2, 3),
        2 => (1, 3),
        _ => (1, 2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parameter_space::{to_geometric, to_spectral};

    fn amb(n: i64) -> Ambient {
        Ambient::new(n).unwrap()
    }

    fn lam_i(ambient: &Ambient, v: [i64; 3]) -> SpectralParam {
        SpectralParam::new(
            ambient.clone(),
            [
                CRat::from_i64(v[0]),
                CRat::from_i64(v[1]),
                CRat::from_i64(v[2]),
            ],
        )
    }

    fn exact(v: &CoeffValue) -> Structured {
        v.exact().expect("expected exact value").clone()
    }

    #[test]
    fn kernel_value_at_origin_n5() {
        // n=5, λ=(0,0,0): value π^6 / 2^12, in both coordinate systems.
        let a5 = amb(5);
        let lam = lam_i(&a5, [0, 0, 0]);
        let want = &Structured::pi_pow_half(12) * &Structured::two_pow_half(-24);
        let v = ktilde_lambda(&lam, &MultiIndex::new(0, 0, 0), 128);
        assert_eq!(exact(&v), want);
        let alpha = to_geometric(&lam);
        assert_eq!(alpha.get(1), &CRat::from_i64(-2));
        let v = ktilde_alpha(&alpha, &MultiIndex::new(0, 0, 0), 128);
        assert_eq!(exact(&v), want);
    }

    #[test]
    fn kernel_vanishes_on_singular_set_exactly() {
        // n=4, λ=(-3/2, 1/4, 1/4) lies on a type-I line; all coefficients
        // vanish exactly even though the coordinates are off the
        // half-integer grid.
        let a4 = amb(4);
        let lam = SpectralParam::new(
            a4,
            [
                CRat::from_rat(rat(-3, 2)),
                CRat::from_rat(rat(1, 4)),
                CRat::from_rat(rat(1, 4)),
            ],
        );
        for a in MultiIndex::grid(5) {
            assert!(ktilde_lambda(&lam, &a, 128).is_exact_zero(), "a={a:?}");
        }
    }

    #[test]
    fn lambda_and_alpha_forms_agree() {
        let a4 = amb(4);
        // random-ish rational α with integer entries for exactness
        let alpha = GeometricParam::new(
            a4,
            [CRat::from_i64(3), CRat::from_i64(-1), CRat::from_i64(2)],
        );
        let lam = to_spectral(&alpha);
        for a in MultiIndex::grid(3) {
            let x = ktilde_alpha(&alpha, &a, 160);
            let y = ktilde_lambda(&lam, &a, 160);
            assert_eq!(exact(&x), exact(&y), "a={a:?}");
        }
    }

    #[test]
    fn t_family_vanishing_and_relation_to_kernel() {
        // vanishing for a_slot > k
        let a5 = amb(5);
        let (b1, b2) = (CRat::from_i64(1), CRat::from_i64(7));
        for k in 0..3i64 {
            let v = ttilde_coeff(
                3,
                k,
                (&b1, &b2),
                &a5,
                &MultiIndex::new(0, 0, k as u64 + 1),
                128,
            )
            .unwrap();
            assert!(v.is_exact_zero());
        }
        // relation: K̃(α1,α2,-(n-1)-2k) = (-1)^k 2^{-2k} π^rho /
        //   (Γ(rho+k)Γ(rho+α1/2)Γ(rho+α2/2)) · T̃
        let k = 2i64;
        let rho = a5.rho();
        let alpha = GeometricParam::new(
            a5.clone(),
            [
                b1.clone(),
                b2.clone(),
                CRat::from_i64(-(a5.n() - 1) - 2 * k),
            ],
        );
        for a in MultiIndex::grid(4) {
            let lhs = exact(&ktilde_alpha(&alpha, &a, 128));
            let t = exact(
                &ttilde_coeff(3, k, (&b1, &b2), &a5, &a, 128).unwrap(),
            );
            let c = &(&(&Structured::from_rat(sign_rat(k)) * &Structured::two_pow_half(-4 * k))
                * &Structured::pi_pow_half(2 * 2))
                * &(&(&gamma_half(&(rho.clone() + rati(k))).unwrap()
                    * &gamma_half(&(rho.clone() + rat(1, 2))).unwrap())
                    * &gamma_half(&(rho.clone() + rat(7, 2))).unwrap())
                .inv();
            assert_eq!(lhs, &c * &t, "a={a:?}");
        }
    }

    #[test]
    fn s_family_base_value_and_vanishing() {
        // k=0, a=0: (2√(2π))^{n-1} Γ(rho)/Γ(2rho)
        let a4 = amb(4);
        let lam = SpectralParam::new(
            a4.clone(),
            [
                CRat::from_rat(rat(-3, 2)),
                CRat::from_i64(1),
                CRat::from_i64(-1),
            ],
        );
        let v = exact(&s_coeff(0, &lam, &MultiIndex::new(0, 0, 0), 128).unwrap());
        // (2√(2π))^3 Γ(3/2)/Γ(3) = 2^{9/2} π^{3/2} · (√π/2)/2 = 2^{5/2} π²
        let want = &Structured::two_pow_half(5) * &Structured::pi_pow_half(4);
        assert_eq!(v, want);
        // vanishing for Σa > k
        let v = s_coeff(0, &lam, &MultiIndex::new(1, 0, 0), 128).unwrap();
        assert!(v.is_exact_zero());
        // constraint error when Σλ is off the plane
        let bad = lam_i(&a4, [0, 0, 0]);
        assert!(matches!(
            s_coeff(0, &bad, &MultiIndex::new(0, 0, 0), 128),
            Err(CoeffError::Constraint(_))
        ));
    }

    #[test]
    fn r_family_relation_to_kernel() {
        // K̃(α1,α2,2l) = 1/(Γ(l+rho) Γ((α1+α2)/2+l+2rho)) · R
        let a5 = amb(5);
        let rho = a5.rho();
        let l = 2i64;
        let (b1, b2) = (CRat::from_i64(3), CRat::from_i64(-1));
        let alpha = GeometricParam::new(
            a5.clone(),
            [b1.clone(), b2.clone(), CRat::from_i64(2 * l)],
        );
        for a in MultiIndex::grid(4) {
            let lhs = exact(&ktilde_alpha(&alpha, &a, 128));
            let r = exact(&r_coeff(3, l, (&b1, &b2), &a5, &a, 128).unwrap());
            let c = &gamma_half(&(rho.clone() + rati(l))).unwrap()
                * &gamma_half(&(rati(1) + rati(l) + rati(2) * rho.clone())).unwrap();
            assert_eq!(lhs, &r * &c.inv(), "a={a:?}");
        }
    }

    #[test]
    fn bernstein_polynomial_values() {
        let a5 = amb(5);
        let alpha = GeometricParam::new(
            a5.clone(),
            [CRat::zero(), CRat::zero(), CRat::zero()],
        );
        assert_eq!(bernstein_b_crat(&alpha), CRat::from_i64(384));
        // roots
        let alpha = GeometricParam::new(
            a5.clone(),
            [CRat::from_i64(1), CRat::from_i64(1), CRat::from_i64(-2)],
        );
        assert!(bernstein_b_crat(&alpha).is_zero());
        let alpha = GeometricParam::new(
            a5,
            [CRat::from_i64(-4), CRat::from_i64(-2), CRat::from_i64(-2)],
        );
        assert!(bernstein_b_crat(&alpha).is_zero());
    }

    #[test]
    fn sphere_volume_from_first_integral() {
        // sint1(0) is the sphere volume: n=4 → 2π²
        let a4 = amb(4);
        let v = exact(&sint1(&CRat::zero(), &a4, 128).unwrap());
        let want = &Structured::two_pow_half(2) * &Structured::pi_pow_half(4);
        assert_eq!(v, want);
        // sint2(0) = 0
        assert!(sint2(&CRat::zero(), &a4, 128).unwrap().is_exact_zero());
    }
}
