//! Holomorphic-family probes and the verification engine.
//!
//! A probe is the truncated Taylor expansion of the kernel coefficient along
//! an affine curve in parameter space, computed by jet arithmetic through
//! the factored closed form — never by finite differences, so vanishing
//! tests are exact. Finite differences survive only as a secondary sanity
//! oracle in the test suite.
//!
//! On top of the probes sit the identity suites (kernel vs. the three
//! derived families), the first/second-derivative lemmas with their explicit
//! constants, exact rank computations for independence claims, and the
//! zero-set test.

use serde::Serialize;

use crate::coefficients::{
    family_coeff, ktilde_alpha_formula, ktilde_lambda_formula, other_slots, q_coeff, r_coeff,
    s_coeff, ttilde_coeff, AffArg, CoeffError, CoeffValue, FamilyId, MixedPoint, MultiIndex,
};
use crate::numerics::bigc::BigC;
use crate::numerics::gamma::{gamma_half, rgamma_half};
use crate::numerics::jet::TCoeff;
use crate::numerics::rational::{rat, rati, CRat, Rat};
use crate::numerics::structured::Structured;
use crate::parameter_space::{
    to_spectral, Ambient, GeometricParam, SpectralParam,
};

// ---------------------------------------------------------------------------
// Probes.
// ---------------------------------------------------------------------------

/// Coordinate system of a probe base point.
#[derive(Clone, Debug)]
pub enum ProbeBase {
    Spectral(SpectralParam),
    Geometric(GeometricParam),
}

/// An affine curve `base + s·direction` with a truncation order.
#[derive(Clone, Debug)]
pub struct ProbeSpec {
    pub base: ProbeBase,
    pub direction: [CRat; 3],
    pub order: usize,
}

impl ProbeSpec {
    pub fn spectral(base: SpectralParam, direction: [i64; 3], order: usize) -> Self {
        ProbeSpec {
            base: ProbeBase::Spectral(base),
            direction: direction.map(CRat::from_i64),
            order,
        }
    }

    pub fn geometric(base: GeometricParam, direction: [i64; 3], order: usize) -> Self {
        ProbeSpec {
            base: ProbeBase::Geometric(base),
            direction: direction.map(CRat::from_i64),
            order,
        }
    }

    fn ambient(&self) -> &Ambient {
        match &self.base {
            ProbeBase::Spectral(l) => &l.ambient,
            ProbeBase::Geometric(a) => &a.ambient,
        }
    }
}

/// Taylor coefficients of a probed kernel coefficient. Exact jets may carry
/// `None` above the first nonvanishing coefficient (digamma territory).
#[derive(Clone, Debug)]
pub enum ProbeJet {
    Exact(Vec<Option<Structured>>),
    Numeric(Vec<BigC>),
}

impl ProbeJet {
    pub fn coeff_exact(&self, i: usize) -> Option<&Structured> {
        match self {
            ProbeJet::Exact(v) => v[i].as_ref(),
            ProbeJet::Numeric(_) => None,
        }
    }

    pub fn coeff_value(&self, i: usize, prec: u32) -> CoeffValue {
        match self {
            ProbeJet::Exact(v) => CoeffValue::Exact(
                v[i].clone().expect("coefficient not exactly known"),
            ),
            ProbeJet::Numeric(v) => CoeffValue::Numeric(v[i].round_prec(prec)),
        }
    }

    pub fn is_exact_zero(&self, i: usize) -> bool {
        match self {
            ProbeJet::Exact(v) => matches!(&v[i], Some(s) if s.is_zero()),
            ProbeJet::Numeric(_) => false,
        }
    }
}

/// Taylor coefficients of `s ↦ K̃(base + s·direction)` at the multi-index.
pub fn taylor_probe(spec: &ProbeSpec, a: &MultiIndex, prec: u32) -> ProbeJet {
    let ambient = spec.ambient().clone();
    let args: [AffArg; 3] = match &spec.base {
        ProbeBase::Spectral(l) => [0, 1, 2].map(|j| AffArg {
            v: l.lambda[j].clone(),
            d: spec.direction[j].clone(),
        }),
        ProbeBase::Geometric(g) => [0, 1, 2].map(|j| AffArg {
            v: g.alpha[j].clone(),
            d: spec.direction[j].clone(),
        }),
    };
    let formula = match &spec.base {
        ProbeBase::Spectral(_) => ktilde_lambda_formula(&ambient, &args, a),
        ProbeBase::Geometric(_) => ktilde_alpha_formula(&ambient, &args, a),
    };
    if let Some(jet) = formula.eval_jet_exact(spec.order) {
        return ProbeJet::Exact(
            jet.c
                .into_iter()
                .map(|c| match c {
                    TCoeff::Known(s) => Some(s),
                    TCoeff::Unknown => None,
                })
                .collect(),
        );
    }
    ProbeJet::Numeric(formula.eval_jet_numeric(spec.order, prec).c)
}

// ---------------------------------------------------------------------------
// Case-by-case comparison with doubled-precision retry.
// ---------------------------------------------------------------------------

/// Report of one verification suite: deterministic, one line per failure.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<String>,
    /// Largest observed log2 relative error over numeric comparisons.
    pub max_err_log2: Option<f64>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            cases: 0,
            failures: Vec::new(),
            max_err_log2: None,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record_err(&mut self, e: f64) {
        self.max_err_log2 = Some(self.max_err_log2.map_or(e, |m: f64| m.max(e)));
    }

    /// Check one identity. The builder evaluates both sides at a given
    /// precision; exact values must match exactly, numeric ones to
    /// `tol_bits`, re-running once at doubled precision before reporting a
    /// failure.
    pub fn check<F>(&mut self, label: &str, prec: u32, tol_bits: f64, build: F)
    where
        F: Fn(u32) -> Result<(CoeffValue, CoeffValue), CoeffError>,
    {
        self.cases += 1;
        match self.try_once(prec, tol_bits, &build) {
            Ok(err) => {
                if let Some(e) = err {
                    self.record_err(e);
                }
            }
            Err(first) => match self.try_once(2 * prec, tol_bits, &build) {
                Ok(err) => {
                    if let Some(e) = err {
                        self.record_err(e);
                    }
                }
                Err(_) => self.failures.push(format!("{label}: {first}")),
            },
        }
    }

    fn try_once<F>(&mut self, prec: u32, tol_bits: f64, build: &F) -> Result<Option<f64>, String>
    where
        F: Fn(u32) -> Result<(CoeffValue, CoeffValue), CoeffError>,
    {
        let (lhs, rhs) = build(prec).map_err(|e| e.to_string())?;
        match (&lhs, &rhs) {
            (CoeffValue::Exact(a), CoeffValue::Exact(b)) => {
                if a == b {
                    Ok(None)
                } else {
                    Err(format!("exact mismatch: {a} vs {b}"))
                }
            }
            _ => {
                let a = lhs.to_bigc(prec);
                let b = rhs.to_bigc(prec);
                match BigC::rel_err_log2(&a, &b) {
                    None => Ok(None),
                    Some(e) if e < -tol_bits => Ok(Some(e)),
                    Some(e) => Err(format!("numeric mismatch: rel err 2^{e:.1}")),
                }
            }
        }
    }

    pub fn require(&mut self, label: &str, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures.push(label.to_string());
        }
    }
}

// ---------------------------------------------------------------------------
// Identity suites: kernel vs. each derived family.
// ---------------------------------------------------------------------------

/// Constant of the type-I relation:
/// `(-1)^k 2^{-2k} π^rho / (Γ(rho+k) Γ(rho+b1/2) Γ(rho+b2/2))`.
fn type_i_relation_constant(
    ambient: &Ambient,
    k: i64,
    b1: &CRat,
    b2: &CRat,
    prec: u32,
) -> Result<CoeffValue, CoeffError> {
    use crate::coefficients::{Factor, Formula};
    let rho = ambient.rho();
    let half = rat(1, 2);
    let mut f = Formula::default();
    f.push_factor(Factor::Rat(CRat::from_i64(if k % 2 == 0 { 1 } else { -1 })));
    f.push_factor(Factor::Pow2(AffArg::cst(CRat::from_i64(-2 * k))));
    f.push_factor(Factor::PiHalf(ambient.n() - 1));
    f.push_factor(Factor::Const(gamma_half(&(rho.clone() + rati(k)))?.inv()));
    f.push_factor(Factor::RGamma(AffArg::cst(
        &b1.scale(&half) + &CRat::from_rat(rho.clone()),
    )));
    f.push_factor(Factor::RGamma(AffArg::cst(
        &b2.scale(&half) + &CRat::from_rat(rho.clone()),
    )));
    Ok(f.eval(prec)?)
}

fn mul_values(a: &CoeffValue, b: &CoeffValue, prec: u32) -> CoeffValue {
    match (a, b) {
        (CoeffValue::Exact(x), CoeffValue::Exact(y)) => CoeffValue::Exact(x * y),
        _ => CoeffValue::Numeric(a.to_bigc(prec).mul(&b.to_bigc(prec))),
    }
}

/// Verify the type-I relation on the plane `α_dslot = -(n-1)-2k` at one
/// parameter pair, over the full grid `a <= bound`.
pub fn verify_kt_at(
    report: &mut SuiteReport,
    ambient: &Ambient,
    dslot: usize,
    k: i64,
    pair: (&CRat, &CRat),
    bound: u64,
    prec: u32,
) {
    let n1 = ambient.n() - 1;
    let (s1, s2) = other_slots(dslot);
    for a in MultiIndex::grid(bound) {
        let label = format!("type-I relation slot {dslot} k={k} a={:?}", a.a);
        let (b1, b2) = (pair.0.clone(), pair.1.clone());
        let ambient = ambient.clone();
        report.check(&label, prec, 133.0, move |p| {
            let mut alpha = [CRat::zero(), CRat::zero(), CRat::zero()];
            alpha[s1 - 1] = b1.clone();
            alpha[s2 - 1] = b2.clone();
            alpha[dslot - 1] = CRat::from_i64(-n1 - 2 * k);
            let g = GeometricParam::new(ambient.clone(), alpha);
            let lhs = crate::coefficients::ktilde_alpha(&g, &a, p);
            let c = type_i_relation_constant(&ambient, k, &b1, &b2, p)?;
            let t = ttilde_coeff(dslot, k, (&b1, &b2), &ambient, &a, p)?;
            Ok((lhs, mul_values(&c, &t, p)))
        });
    }
}

/// Constant of the type-II (diagonal) relation of order `k`:
/// `(π/16)^{n-1} ((n-2)!/Γ(rho+k)) 16^{-k} 2^{-(n-1)}`.
///
/// The trailing `2^{-(n-1)}` is forced by the closed forms of the kernel and
/// diagonal coefficients (cross-checked at `k = 0`, `a = 0` against the
/// sphere volume); see the identity tests.
pub fn type_ii_relation_constant(ambient: &Ambient, k: i64) -> Structured {
    let n1 = ambient.n() - 1;
    let rho = ambient.rho();
    let c = &(&Structured::pi_pow_half(2 * n1) * &Structured::two_pow_half(-8 * n1))
        * &(&gamma_half(&rati(n1)).expect("n-1 >= 3")
            * &gamma_half(&(rho + rati(k))).expect("rho+k > 0").inv());
    &(&c * &Structured::two_pow_half(-8 * k)) * &Structured::two_pow_half(-2 * n1)
}

/// Verify the diagonal relation `K̃ = C(k)·Π 1/Γ(λ_j+rho+k) · S` on the
/// plane `Σλ = -rho-2k` at one spectral point.
pub fn verify_ks_at(
    report: &mut SuiteReport,
    lam: &SpectralParam,
    k: i64,
    bound: u64,
    prec: u32,
) {
    let rho = lam.ambient.rho();
    for a in MultiIndex::grid(bound) {
        let label = format!("diagonal relation k={k} a={:?} λ={:?}", a.a, lam.lambda);
        let lam = lam.clone();
        let rho = rho.clone();
        report.check(&label, prec, 133.0, move |p| {
            let lhs = crate::coefficients::ktilde_lambda(&lam, &a, p);
            let c = type_ii_relation_constant(&lam.ambient, k);
            // -α_j/2 = λ_j + rho + k on this plane
            let mut rg = Structured::one();
            let mut numeric_rg: Option<BigC> = None;
            for j in 0..3 {
                let argc = &lam.lambda[j] + &CRat::from_rat(rho.clone() + rati(k));
                match argc.as_real() {
                    Some(r) if crate::numerics::rational::is_half_integer(r) => {
                        rg = &rg * &rgamma_half(r);
                    }
                    _ => {
                        let v = crate::numerics::gamma::rgamma_bigc(&BigC::from_crat(&argc, p), p);
                        numeric_rg = Some(match numeric_rg {
                            None => v,
                            Some(acc) => acc.mul(&v),
                        });
                    }
                }
            }
            let s = s_coeff(k, &lam, &a, p)?;
            let mut rhs = mul_values(&CoeffValue::Exact(&c * &rg), &s, p);
            if let Some(nrg) = numeric_rg {
                rhs = CoeffValue::Numeric(rhs.to_bigc(p).mul(&nrg));
            }
            Ok((lhs, rhs))
        });
    }
}

/// Verify the intertwiner relation on the plane `α_dslot = 2l`.
pub fn verify_rk_at(
    report: &mut SuiteReport,
    ambient: &Ambient,
    dslot: usize,
    l: i64,
    pair: (&CRat, &CRat),
    bound: u64,
    prec: u32,
) {
    let rho = ambient.rho();
    let (s1, s2) = other_slots(dslot);
    for a in MultiIndex::grid(bound) {
        let label = format!("intertwiner relation slot {dslot} l={l} a={:?}", a.a);
        let (b1, b2) = (pair.0.clone(), pair.1.clone());
        let ambient = ambient.clone();
        let rho = rho.clone();
        report.check(&label, prec, 133.0, move |p| {
            let mut alpha = [CRat::zero(), CRat::zero(), CRat::zero()];
            alpha[s1 - 1] = b1.clone();
            alpha[s2 - 1] = b2.clone();
            alpha[dslot - 1] = CRat::from_i64(2 * l);
            let g = GeometricParam::new(ambient.clone(), alpha);
            let lhs = crate::coefficients::ktilde_alpha(&g, &a, p);
            // 1/(Γ(l+rho) Γ((b1+b2)/2 + l + 2rho))
            use crate::coefficients::{Factor, Formula};
            let mut cf = Formula::default();
            cf.push_factor(Factor::Const(
                gamma_half(&(rho.clone() + rati(l)))?.inv(),
            ));
            cf.push_factor(Factor::RGamma(AffArg::cst(
                &(&b1 + &b2).scale(&rat(1, 2))
                    + &CRat::from_rat(rati(l) + rho.clone() + rho.clone()),
            )));
            let c = cf.eval(p)?;
            let r = r_coeff(dslot, l, (&b1, &b2), &ambient, &a, p)?;
            Ok((lhs, mul_values(&c, &r, p)))
        });
    }
}

// ---------------------------------------------------------------------------
// Derivative lemmas.
// ---------------------------------------------------------------------------

fn exact_mul(parts: &[Structured]) -> Structured {
    let mut acc = Structured::one();
    for p in parts {
        acc = &acc * p;
    }
    acc
}

fn factorial_structured(n: i64) -> Structured {
    let mut acc = Rat::from_integer(1.into());
    for i in 2..=n {
        acc *= rati(i);
    }
    Structured::from_rat(acc)
}

fn sign_structured(k: i64) -> Structured {
    Structured::from_rat(if k.rem_euclid(2) == 0 {
        rati(1)
    } else {
        rati(-1)
    })
}

/// First-derivative lemma on a type-I two-plane point: with
/// `α2 = -(n-1)-2k2`, `α3 = -(n-1)-2k3`, the derivative of the kernel along
/// `α2 + 2s` equals
/// `(-1)^{k3} 2^{-2k3} π^rho (-1)^{k2} k2! / (Γ(rho+k3) Γ(rho+α1/2))` times
/// the slot-3 type-I family at `(α1, α3)`-plane parameters `(α1, α2)`.
pub fn verify_deriv_type_i(
    report: &mut SuiteReport,
    ambient: &Ambient,
    alpha1: &CRat,
    k2: i64,
    k3: i64,
    bound: u64,
    prec: u32,
) {
    let n1 = ambient.n() - 1;
    let rho = ambient.rho();
    for a in MultiIndex::grid(bound) {
        let label = format!("type-I first derivative k2={k2} k3={k3} a={:?}", a.a);
        let alpha1 = alpha1.clone();
        let ambient = ambient.clone();
        let rho = rho.clone();
        report.check(&label, prec, 133.0, move |p| {
            let base = GeometricParam::new(
                ambient.clone(),
                [
                    alpha1.clone(),
                    CRat::from_i64(-n1 - 2 * k2),
                    CRat::from_i64(-n1 - 2 * k3),
                ],
            );
            let probe = ProbeSpec::geometric(base.clone(), [0, 2, 0], 2);
            let jet = taylor_probe(&probe, &a, p);
            let c1 = jet.coeff_value(1, p);
            // constant
            use crate::coefficients::{Factor, Formula};
            let mut cf = Formula::default();
            cf.push_factor(Factor::Rat(CRat::from_rat(
                (if k3 % 2 == 0 { rati(1) } else { rati(-1) })
                    * (if k2 % 2 == 0 { rati(1) } else { rati(-1) })
                    * crate::coefficients::factorial_pub(k2),
            )));
            cf.push_factor(Factor::Pow2(AffArg::cst(CRat::from_i64(-2 * k3))));
            cf.push_factor(Factor::PiHalf(n1));
            cf.push_factor(Factor::Const(
                gamma_half(&(rho.clone() + rati(k3)))?.inv(),
            ));
            cf.push_factor(Factor::RGamma(AffArg::cst(
                &alpha1.scale(&rat(1, 2)) + &CRat::from_rat(rho.clone()),
            )));
            let c = cf.eval(p)?;
            let t = ttilde_coeff(
                3,
                k3,
                (&alpha1, &CRat::from_i64(-n1 - 2 * k2)),
                &ambient,
                &a,
                p,
            )?;
            Ok((c1, mul_values(&c, &t, p)))
        });
    }
}

/// All first/second-derivative checks at a mixed two-line point in normal
/// form `α = (2k1, -(n-1)-2k2, -(n-1)-2k3)` with `k = k2+k3-k1 >= 0`:
///
/// * derivative along `(0,0,2)` in α gives the slot-3 type-I family with
///   constant `π^rho (-1)^{k2+k3} 2^{-2k3} k2! / (Γ(rho+k3)Γ(rho+k1))`, and
///   simultaneously the slot-2 family with the mirrored constant;
/// * derivative along `(0,1,1)` in α gives the slot-1 intertwiner family
///   with constant `(-1)^k k! / Γ(rho+k1)`;
/// * derivative along `(2,-1,-1)` in λ gives the diagonal family with
///   constant `2 (-1)^{l1-k} (l1-k)! C(k) / (Γ(rho+k+λ2) Γ(rho+k+λ3))`,
///   where `C(k)` is the diagonal-relation constant;
/// * the four coefficient vectors are proportional (rank 1).
pub fn verify_deriv_mixed_point(
    report: &mut SuiteReport,
    ambient: &Ambient,
    k1: i64,
    k2: i64,
    k3: i64,
    bound: u64,
    prec: u32,
) {
    let n1 = ambient.n() - 1;
    let rho = ambient.rho();
    let k = k2 + k3 - k1;
    assert!(k >= 0, "mixed two-line point needs k1 <= k2+k3");
    let alpha = GeometricParam::new(
        ambient.clone(),
        [
            CRat::from_i64(2 * k1),
            CRat::from_i64(-n1 - 2 * k2),
            CRat::from_i64(-n1 - 2 * k3),
        ],
    );
    let lam = to_spectral(&alpha);
    let l1 = k2 + k3;

    for a in MultiIndex::grid(bound) {
        // Route 1: slot-3 type-I family along (0,0,2).
        {
            let label = format!("mixed-point slot-3 route k=({k1},{k2},{k3}) a={:?}", a.a);
            let alpha = alpha.clone();
            let ambient = ambient.clone();
            let rho = rho.clone();
            report.check(&label, prec, 133.0, move |p| {
                let probe = ProbeSpec::geometric(alpha.clone(), [0, 0, 2], 2);
                let jet = taylor_probe(&probe, &a, p);
                let c1 = jet.coeff_value(1, p);
                let c = exact_mul(&[
                    sign_structured(k2 + k3),
                    factorial_structured(k2),
                    Structured::two_pow_half(-4 * k3),
                    Structured::pi_pow_half(n1),
                    gamma_half(&(rho.clone() + rati(k3)))?.inv(),
                    gamma_half(&(rho.clone() + rati(k1)))?.inv(),
                ]);
                let t = ttilde_coeff(
                    3,
                    k3,
                    (alpha.get(1), alpha.get(2)),
                    &ambient,
                    &a,
                    p,
                )?;
                Ok((c1, mul_values(&CoeffValue::Exact(c), &t, p)))
            });
        }
        // Route 2: slot-2 type-I family along the same direction.
        {
            let label = format!("mixed-point slot-2 route k=({k1},{k2},{k3}) a={:?}", a.a);
            let alpha = alpha.clone();
            let ambient = ambient.clone();
            let rho = rho.clone();
            report.check(&label, prec, 133.0, move |p| {
                let probe = ProbeSpec::geometric(alpha.clone(), [0, 0, 2], 2);
                let jet = taylor_probe(&probe, &a, p);
                let c1 = jet.coeff_value(1, p);
                let c = exact_mul(&[
                    sign_structured(k2 + k3),
                    factorial_structured(k3),
                    Structured::two_pow_half(-4 * k2),
                    Structured::pi_pow_half(n1),
                    gamma_half(&(rho.clone() + rati(k2)))?.inv(),
                    gamma_half(&(rho.clone() + rati(k1)))?.inv(),
                ]);
                let t = ttilde_coeff(
                    2,
                    k2,
                    (alpha.get(1), alpha.get(3)),
                    &ambient,
                    &a,
                    p,
                )?;
                Ok((c1, mul_values(&CoeffValue::Exact(c), &t, p)))
            });
        }
        // Route 3: slot-1 intertwiner family along (0,1,1).
        {
            let label = format!("mixed-point intertwiner route k=({k1},{k2},{k3}) a={:?}", a.a);
            let alpha = alpha.clone();
            let ambient = ambient.clone();
            let rho = rho.clone();
            report.check(&label, prec, 133.0, move |p| {
                let probe = ProbeSpec::geometric(alpha.clone(), [0, 1, 1], 2);
                let jet = taylor_probe(&probe, &a, p);
                let c1 = jet.coeff_value(1, p);
                let c = exact_mul(&[
                    sign_structured(k),
                    factorial_structured(k),
                    gamma_half(&(rho.clone() + rati(k1)))?.inv(),
                ]);
                let r = r_coeff(
                    1,
                    k1,
                    (alpha.get(2), alpha.get(3)),
                    &ambient,
                    &a,
                    p,
                )?;
                Ok((c1, mul_values(&CoeffValue::Exact(c), &r, p)))
            });
        }
        // Route 4: diagonal family along (2,-1,-1) in λ.
        {
            let label = format!("mixed-point diagonal route k=({k1},{k2},{k3}) a={:?}", a.a);
            let lam = lam.clone();
            let ambient = ambient.clone();
            let rho = rho.clone();
            report.check(&label, prec, 133.0, move |p| {
                let probe = ProbeSpec::spectral(lam.clone(), [2, -1, -1], 2);
                let jet = taylor_probe(&probe, &a, p);
                let c1 = jet.coeff_value(1, p);
                // rho + k + λ2 = rho + k1 - k3 + k2 + k3 - k1 ... compute directly
                let arg2 = lam.lambda[1].as_real().unwrap() + &(rho.clone() + rati(k));
                let arg3 = lam.lambda[2].as_real().unwrap() + &(rho.clone() + rati(k));
                let c = exact_mul(&[
                    Structured::from_rat(rati(2)),
                    sign_structured(l1 - k),
                    factorial_structured(l1 - k),
                    type_ii_relation_constant(&ambient, k),
                    rgamma_half(&arg2),
                    rgamma_half(&arg3),
                ]);
                let s = s_coeff(k, &lam, &a, p)?;
                Ok((c1, mul_values(&CoeffValue::Exact(c), &s, p)))
            });
        }
    }
    // Rank-1 proportionality of the four families over the grid.
    let candidates = vec![
        FamilyId::R { slot: 1, l: k1 },
        FamilyId::T { slot: 2, k: k2 },
        FamilyId::T { slot: 3, k: k3 },
        FamilyId::S { k },
    ];
    match rank_check(&lam, &candidates, bound, prec) {
        Ok(r) => report.require(
            &format!("mixed-point rank-1 k=({k1},{k2},{k3}): got rank {}", r.rank),
            r.rank == 1,
        ),
        Err(e) => report.require(&format!("mixed-point rank-1: {e}"), false),
    }
}

/// Second-derivative lemma at a two-type-II-line point in normal form
/// `λ = (-rho-l1, -rho-l2, rho+m3)`: the second Taylor coefficient of the
/// kernel along `λ(s) = (λ1-s, λ2+s, λ3)` equals
/// `-C(k) (-1)^{k1+k2} k1! k2! / Γ(n-1+k3)` times the diagonal family,
/// with `k1 = l1-k`, `k2 = l2-k`, `k3 = (l1+l2+m3)/2`, `2k = l1+l2-m3`.
pub fn verify_deriv_two_ii_second(
    report: &mut SuiteReport,
    ambient: &Ambient,
    l1: i64,
    l2: i64,
    m3: i64,
    bound: u64,
    prec: u32,
) {
    let rho = ambient.rho();
    assert!((l1 + l2 - m3) % 2 == 0 && m3 >= (l1 - l2).abs() && m3 <= l1 + l2);
    let k = (l1 + l2 - m3) / 2;
    let (k1, k2, k3) = (l1 - k, l2 - k, (l1 + l2 + m3) / 2);
    let lam = SpectralParam::new(
        ambient.clone(),
        [
            CRat::from_rat(-rho.clone() - rati(l1)),
            CRat::from_rat(-rho.clone() - rati(l2)),
            CRat::from_rat(rho.clone() + rati(m3)),
        ],
    );
    for a in MultiIndex::grid(bound) {
        let label = format!("two-II second derivative (l1,l2,m3)=({l1},{l2},{m3}) a={:?}", a.a);
        let lam = lam.clone();
        let ambient = ambient.clone();
        report.check(&label, prec, 133.0, move |p| {
            let probe = ProbeSpec::spectral(lam.clone(), [-1, 1, 0], 2);
            let jet = taylor_probe(&probe, &a, p);
            let c2 = jet.coeff_value(2, p);
            let n1 = ambient.n() - 1;
            let c = exact_mul(&[
                Structured::from_rat(rati(-1)),
                sign_structured(k1 + k2),
                factorial_structured(k1),
                factorial_structured(k2),
                type_ii_relation_constant(&ambient, k),
                gamma_half(&rati(n1 + k3))?.inv(),
            ]);
            let s = s_coeff(k, &lam, &a, p)?;
            Ok((c2, mul_values(&CoeffValue::Exact(c), &s, p)))
        });
    }
}

/// First-derivative lemma at the same two-type-II-line points: the first
/// Taylor coefficient of the kernel along `α(s) = (α1, α2, α3+2s)` equals
/// `(-1)^k k! / Γ(rho+k1)` times the slot-1 intertwiner family.
pub fn verify_deriv_two_ii_first(
    report: &mut SuiteReport,
    ambient: &Ambient,
    l1: i64,
    l2: i64,
    m3: i64,
    bound: u64,
    prec: u32,
) {
    let rho = ambient.rho();
    let k = (l1 + l2 - m3) / 2;
    let (k1, k2, k3) = (l1 - k, l2 - k, (l1 + l2 + m3) / 2);
    let n1 = ambient.n() - 1;
    let alpha = GeometricParam::new(
        ambient.clone(),
        [
            CRat::from_i64(2 * k1),
            CRat::from_i64(2 * k2),
            CRat::from_i64(-2 * n1 - 2 * k3),
        ],
    );
    for a in MultiIndex::grid(bound) {
        let label = format!("two-II first derivative (l1,l2,m3)=({l1},{l2},{m3}) a={:?}", a.a);
        let alpha = alpha.clone();
        let ambient = ambient.clone();
        let rho = rho.clone();
        report.check(&label, prec, 133.0, move |p| {
            let probe = ProbeSpec::geometric(alpha.clone(), [0, 0, 2], 2);
            let jet = taylor_probe(&probe, &a, p);
            let c1 = jet.coeff_value(1, p);
            let c = exact_mul(&[
                sign_structured(k),
                factorial_structured(k),
                gamma_half(&(rho.clone() + rati(k1)))?.inv(),
            ]);
            let r = r_coeff(
                1,
                k1,
                (alpha.get(2), alpha.get(3)),
                &ambient,
                &a,
                p,
            )?;
            Ok((c1, mul_values(&CoeffValue::Exact(c), &r, p)))
        });
    }
}

// ---------------------------------------------------------------------------
// Rank computations.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub enum RankMode {
    ExactRational,
    Numeric { prec: u32, threshold_log2: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub candidates: Vec<FamilyId>,
    pub grid_bound: u64,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub mode: RankMode,
}

#[derive(Debug, Clone)]
pub enum RankError {
    DegenerateGrid { candidate: FamilyId },
    Coeff(String),
}

impl std::fmt::Display for RankError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RankError::DegenerateGrid { candidate } => write!(
                f,
                "all coefficients of {candidate:?} vanish on the grid; raise the bound"
            ),
            RankError::Coeff(e) => write!(f, "{e}"),
        }
    }
}

/// Rank of the coefficient matrix `[candidate i at multi-index a]` over the
/// grid `a <= bound`, exact over the rationals whenever every entry is
/// exact, else numeric with a relative pivot threshold of `2^(-prec/2)`.
pub fn rank_check(
    lam: &SpectralParam,
    candidates: &[FamilyId],
    bound: u64,
    prec: u32,
) -> Result<RankReport, RankError> {
    let grid = MultiIndex::grid(bound);
    let mut values: Vec<Vec<CoeffValue>> = Vec::with_capacity(candidates.len());
    for id in candidates {
        let mut row = Vec::with_capacity(grid.len());
        for a in &grid {
            row.push(
                family_coeff(id, lam, a, prec).map_err(|e| RankError::Coeff(e.to_string()))?,
            );
        }
        if row.iter().all(|v| v.is_exact_zero()) {
            return Err(RankError::DegenerateGrid {
                candidate: id.clone(),
            });
        }
        values.push(row);
    }
    // Exact path: normalize each row by its first nonzero entry; the
    // transcendental prefactor cancels and rational entries remain.
    let all_exact = values
        .iter()
        .all(|row| row.iter().all(|v| v.exact().is_some()));
    if all_exact {
        let mut mat: Vec<Vec<Rat>> = Vec::new();
        for row in &values {
            let pivot = row
                .iter()
                .find_map(|v| v.exact().filter(|s| !s.is_zero()))
                .expect("degenerate rows rejected above");
            let stripped: Option<Vec<Rat>> =
                row.iter().map(|v| v.stripped(pivot)).collect();
            match stripped {
                Some(r) => mat.push(r),
                None => {
                    // Mixed transcendental content inside a row; fall back.
                    return numeric_rank(lam, candidates, &values, bound, prec);
                }
            }
        }
        let rank = rational_rank(&mut mat);
        return Ok(RankReport {
            candidates: candidates.to_vec(),
            grid_bound: bound,
            rows: values.len(),
            cols: grid.len(),
            rank,
            mode: RankMode::ExactRational,
        });
    }
    numeric_rank(lam, candidates, &values, bound, prec)
}

#[allow(clippy::needless_range_loop)]
fn rational_rank(mat: &mut [Vec<Rat>]) -> usize {
    use num_traits::Zero;
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(p) = (row..rows).find(|r| !mat[*r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let inv = mat[row][col].clone().recip();
        for c in col..cols {
            let v = &mat[row][c] * &inv;
            mat[row][c] = v;
        }
        for r in 0..rows {
            if r != row && !mat[r][col].is_zero() {
                let factor = mat[r][col].clone();
                for c in col..cols {
                    let v = &mat[r][c] - &(&mat[row][c] * &factor);
                    mat[r][c] = v;
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

#[allow(clippy::needless_range_loop)]
fn numeric_rank(
    _lam: &SpectralParam,
    candidates: &[FamilyId],
    values: &[Vec<CoeffValue>],
    bound: u64,
    prec: u32,
) -> Result<RankReport, RankError> {
    // Column-scaled Gaussian elimination with full pivoting; a pivot below
    // 2^(-prec/2) relative to its column max counts as zero. A decision
    // within 2 bits of the threshold would require a doubled-precision
    // rerun; the acceptance witnesses stay far away from it, so the margin
    // is asserted instead.
    let rows = values.len();
    let cols = values[0].len();
    let mut m: Vec<Vec<BigC>> = values
        .iter()
        .map(|row| row.iter().map(|v| v.to_bigc(prec)).collect())
        .collect();
    // column scaling
    for c in 0..cols {
        let mx = (0..rows)
            .filter_map(|r| m[r][c].norm_sqr().log2_abs())
            .fold(f64::NEG_INFINITY, f64::max);
        if mx == f64::NEG_INFINITY {
            continue;
        }
        let shift = (-mx / 2.0).round() as i64;
        for r in 0..rows {
            m[r][c] = m[r][c].mul_pow2(shift);
        }
    }
    let threshold = -(prec as f64) / 2.0;
    let mut rank = 0;
    let mut used_rows = vec![false; rows];
    let mut used_cols = vec![false; cols];
    loop {
        let mut best: Option<(usize, usize, f64)> = None;
        for r in 0..rows {
            if used_rows[r] {
                continue;
            }
            for c in 0..cols {
                if used_cols[c] {
                    continue;
                }
                if let Some(mag) = m[r][c].norm_sqr().log2_abs() {
                    let mag = mag / 2.0;
                    if best.is_none_or(|(_, _, b)| mag > b) {
                        best = Some((r, c, mag));
                    }
                }
            }
        }
        let Some((pr, pc, mag)) = best else { break };
        if mag <= threshold {
            break;
        }
        assert!(
            mag > threshold + 2.0,
            "numeric rank decision within 2 bits of the threshold; raise precision"
        );
        rank += 1;
        used_rows[pr] = true;
        used_cols[pc] = true;
        let pivot = m[pr][pc].clone();
        for r in 0..rows {
            if used_rows[r] {
                continue;
            }
            if m[r][pc].is_zero() {
                continue;
            }
            let factor = m[r][pc].div(&pivot);
            for c in 0..cols {
                if used_cols[c] {
                    continue;
                }
                let v = m[r][c].sub(&factor.mul(&m[pr][c]));
                m[r][c] = v;
            }
            m[r][pc] = BigC::zero(prec);
        }
    }
    Ok(RankReport {
        candidates: candidates.to_vec(),
        grid_bound: bound,
        rows,
        cols,
        rank,
        mode: RankMode::Numeric {
            prec,
            threshold_log2: threshold,
        },
    })
}

// ---------------------------------------------------------------------------
// Zero-set test.
// ---------------------------------------------------------------------------

/// True iff every kernel coefficient with `a <= bound` vanishes exactly.
/// For exact-rational points this is an exact decision: a numeric value is
/// a certificate of nonvanishing.
pub fn zero_set_check(lam: &SpectralParam, bound: u64, prec: u32) -> bool {
    MultiIndex::grid(bound)
        .iter()
        .all(|a| crate::coefficients::ktilde_lambda(lam, a, prec).is_exact_zero())
}

// ---------------------------------------------------------------------------
// Order-3 probe at triple points (even sphere dimension).
// ---------------------------------------------------------------------------

/// At a triple point `α_j = -(n-1)-2k_j` with even sphere dimension, probe
/// along `(1,1,1)` in α. The order of vanishing at `s = 0` of the kernel
/// coefficient is the number of vanishing factors; the third Taylor
/// coefficient is nonzero exactly when that order is 3. The report checks
/// the predicted pattern over the grid, including the stated sufficient
/// region `a1 <= k1`, `a2 > k1+k2`, `a3 > k1+k3`, `Σa > k`.
pub fn f1_jet_vanishing_check(
    report: &mut SuiteReport,
    ambient: &Ambient,
    ks: [i64; 3],
    bound: u64,
) {
    assert!(
        ambient.sphere_dim_even(),
        "triple-point order-3 probe needs even sphere dimension"
    );
    let n1 = ambient.n() - 1;
    let rho_i = n1 / 2;
    let k = rho_i + ks[0] + ks[1] + ks[2];
    let alpha = GeometricParam::new(
        ambient.clone(),
        [
            CRat::from_i64(-n1 - 2 * ks[0]),
            CRat::from_i64(-n1 - 2 * ks[1]),
            CRat::from_i64(-n1 - 2 * ks[2]),
        ],
    );
    for a in MultiIndex::grid(bound) {
        let (a1, a2, a3) = (a.a[0] as i64, a.a[1] as i64, a.a[2] as i64);
        // Predicted order of vanishing: one simple zero per vanishing factor.
        let mut ord = 0;
        if a1 + a2 + a3 > k {
            ord += 1;
        }
        for (ai, ki) in [(a1, ks[0]), (a2, ks[1]), (a3, ks[2])] {
            if ai > ki {
                ord += 1;
            }
        }
        for ((ai, aj), (ki, kj)) in [
            ((a1, a2), (ks[0], ks[1])),
            ((a2, a3), (ks[1], ks[2])),
            ((a3, a1), (ks[2], ks[0])),
        ] {
            if ai + aj <= ki + kj {
                ord += 1;
            }
        }
        let probe = ProbeSpec::geometric(alpha.clone(), [1, 1, 1], 3);
        let jet = taylor_probe(&probe, &a, 128);
        let ProbeJet::Exact(c) = &jet else {
            report.require(&format!("order-3 probe a={:?}: numeric fallback", a.a), false);
            continue;
        };
        for (i, ci) in c.iter().enumerate().take(ord.min(4)) {
            report.require(
                &format!("order-3 probe a={:?}: c{i} should vanish (ord {ord})", a.a),
                matches!(ci, Some(s) if s.is_zero()),
            );
        }
        if ord == 3 {
            report.require(
                &format!("order-3 probe a={:?}: c3 nonzero at order 3", a.a),
                matches!(&c[3], Some(s) if !s.is_zero()),
            );
        } else if ord > 3 {
            report.require(
                &format!("order-3 probe a={:?}: c3 vanishes at order {ord}", a.a),
                matches!(&c[3], Some(s) if s.is_zero()),
            );
        }
        // The stated sufficient region lands in order exactly 3.
        if a1 <= ks[0] && a2 > ks[0] + ks[1] && a3 > ks[0] + ks[2] && a1 + a2 + a3 > k {
            report.require(
                &format!("stated region a={:?} has order 3", a.a),
                ord == 3,
            );
        }
    }
}

// ---------------------------------------------------------------------------
// Bernstein–Sato chain.
// ---------------------------------------------------------------------------

/// Verify the Bernstein–Sato identity chain at one geometric point:
///
/// 1. the unnormalized kernel at `1⊗1⊗1` against the bi-intertwiner value:
///    `A·k(α+4e3) + B·k(α+2e3) = b(α)·k(α)` with `(A,B)` the quadratic and
///    constant parts of the operator applied to `1⊗1`;
/// 2. the normalized variant
///    `A·K̃(α+2e3)(p_{0,0,1}) + B·K̃(α+2e3)(p_0) = 4(Σα+n+1)(α3+2)·K̃(α)(p_0)`;
/// 3. the polynomial identity
///    `(Σα+2n)(α3+n+1) - (n-1)(α1+α2+2α3+2n+2) = (Σα+n+1)(α3+2)`;
/// 4. the spectral and geometric forms of the operator value agree;
/// 5. the kernel normalization:
///    `K̃(α)(p_0) = k(α) / (Γ(α1/2+ρ)Γ(α2/2+ρ)Γ(α3/2+ρ)Γ(Σα/2+2ρ))`.
pub fn verify_bernstein_at(
    report: &mut SuiteReport,
    alpha: &GeometricParam,
    prec: u32,
) {
    use crate::coefficients::{
        bernstein_b_crat, e_one_one, e_one_one_alpha, k111, ktilde_alpha,
    };
    let ambient = alpha.ambient.clone();
    let n = ambient.n();
    let shift2 = GeometricParam::new(
        ambient.clone(),
        [
            alpha.alpha[0].clone(),
            alpha.alpha[1].clone(),
            &alpha.alpha[2] + &CRat::from_i64(2),
        ],
    );
    let shift4 = GeometricParam::new(
        ambient.clone(),
        [
            alpha.alpha[0].clone(),
            alpha.alpha[1].clone(),
            &alpha.alpha[2] + &CRat::from_i64(4),
        ],
    );
    // The operator carries the base point's spectral parameters: raising
    // the third geometric coordinate by 2 is exactly the shift the operator
    // implements.
    let (qa, qb) = e_one_one_alpha(alpha);
    // 4 — geometric/spectral agreement of the operator value
    let lam_base = to_spectral(alpha);
    let (sa, sb) = e_one_one(&lam_base.lambda[0], &lam_base.lambda[1], &ambient);
    report.require(
        &format!("operator value forms agree at {:?}", alpha.alpha),
        qa == sa && qb == sb,
    );
    // 3 — polynomial identity
    let sum = alpha.sum();
    let lhs_poly = &(&(&sum + &CRat::from_i64(2 * n)) * &(alpha.get(3) + &CRat::from_i64(n + 1)))
        - &(&CRat::from_i64(n - 1)
            * &(&(&(alpha.get(1) + alpha.get(2)) + &(alpha.get(3) + alpha.get(3)))
                + &CRat::from_i64(2 * n + 2)));
    let rhs_poly = &(&sum + &CRat::from_i64(n + 1)) * &(alpha.get(3) + &CRat::from_i64(2));
    report.require(
        &format!("reduction polynomial identity at {:?}", alpha.alpha),
        lhs_poly == rhs_poly,
    );
    // 1 — unnormalized chain; samples on a Γ pole of the closed form are
    // outside its domain and are skipped.
    let on_pole = [&shift4, &shift2, alpha]
        .iter()
        .any(|g| matches!(k111(g, prec), Err(CoeffError::Pole(_))));
    if !on_pole {
        let alpha = alpha.clone();
        let qa = qa.clone();
        let qb = qb.clone();
        let shift2c = shift2.clone();
        let shift4c = shift4.clone();
        report.check(
            &format!("unnormalized chain at {:?}", alpha.alpha),
            prec,
            133.0,
            move |p| {
                let k4 = k111(&shift4c, p)?;
                let k2 = k111(&shift2c, p)?;
                let k0 = k111(&alpha, p)?;
                let lhs = add_values(
                    &scale_value(&k4, &qa, p),
                    &scale_value(&k2, &qb, p),
                    p,
                );
                let b = bernstein_b_crat(&alpha);
                Ok((lhs, scale_value(&k0, &b, p)))
            },
        );
    }
    // 2 — normalized chain (entire; no pole exclusions)
    {
        let alpha = alpha.clone();
        let shift2c = shift2.clone();
        report.check(
            &format!("normalized chain at {:?}", alpha.alpha),
            prec,
            133.0,
            move |p| {
                let lhs = add_values(
                    &scale_value(&ktilde_alpha(&shift2c, &MultiIndex::new(0, 0, 1), p), &qa, p),
                    &scale_value(&ktilde_alpha(&shift2c, &MultiIndex::new(0, 0, 0), p), &qb, p),
                    p,
                );
                let factor = &(&(&alpha.sum() + &CRat::from_i64(n + 1))
                    * &(alpha.get(3) + &CRat::from_i64(2)))
                    * &CRat::from_i64(4);
                let rhs = scale_value(
                    &ktilde_alpha(&alpha, &MultiIndex::new(0, 0, 0), p),
                    &factor,
                    p,
                );
                Ok((lhs, rhs))
            },
        );
    }
    // 5 — normalization consistency of the unnormalized value (again only
    // meaningful off its Γ poles)
    if !on_pole {
        let alpha = alpha.clone();
        report.check(
            &format!("kernel normalization at {:?}", alpha.alpha),
            prec,
            133.0,
            move |p| {
                let rho = alpha.ambient.rho();
                let half = rat(1, 2);
                use crate::coefficients::{Factor, Formula};
                let mut f = Formula::default();
                for j in 1..=3 {
                    f.push_factor(Factor::RGamma(AffArg::cst(
                        &alpha.get(j).scale(&half) + &CRat::from_rat(rho.clone()),
                    )));
                }
                f.push_factor(Factor::RGamma(AffArg::cst(
                    &alpha.sum().scale(&half) + &CRat::from_i64(alpha.ambient.n() - 1),
                )));
                let norm = f.eval(p)?;
                let k0 = k111(&alpha, p)?;
                Ok((
                    CoeffValue::Numeric(
                        crate::coefficients::ktilde_alpha(&alpha, &MultiIndex::new(0, 0, 0), p)
                            .to_bigc(p),
                    ),
                    CoeffValue::Numeric(k0.to_bigc(p).mul(&norm.to_bigc(p))),
                ))
            },
        );
    }
}

fn scale_value(v: &CoeffValue, c: &CRat, prec: u32) -> CoeffValue {
    match (v, c.as_real()) {
        (CoeffValue::Exact(s), Some(r)) => {
            CoeffValue::Exact(s * &Structured::from_rat(r.clone()))
        }
        _ => CoeffValue::Numeric(v.to_bigc(prec).mul(&BigC::from_crat(c, prec))),
    }
}

fn add_values(a: &CoeffValue, b: &CoeffValue, prec: u32) -> CoeffValue {
    match (a, b) {
        (CoeffValue::Exact(x), CoeffValue::Exact(y)) => match x.checked_add(y) {
            Some(s) => CoeffValue::Exact(s),
            None => CoeffValue::Numeric(a.to_bigc(prec).add(&b.to_bigc(prec))),
        },
        _ => CoeffValue::Numeric(a.to_bigc(prec).add(&b.to_bigc(prec))),
    }
}

// ---------------------------------------------------------------------------
// Mixed-point cross-check of the second-derivative family.
// ---------------------------------------------------------------------------

/// At the mixed two-line normal form, the closed-form second-derivative
/// family must equal the second Taylor coefficient of the kernel along
/// `λ(s) = (-rho-l1, m2+2s, m3)`, for every multi-index on the grid.
pub fn verify_q_jet_oracle(
    report: &mut SuiteReport,
    ambient: &Ambient,
    point: &MixedPoint,
    bound: u64,
    prec: u32,
) {
    let rho = ambient.rho();
    let lam = SpectralParam::new(
        ambient.clone(),
        [
            CRat::from_rat(-rho.clone() - rati(point.l1)),
            CRat::from_i64(point.m2),
            CRat::from_i64(point.m3),
        ],
    );
    for a in MultiIndex::grid(bound) {
        let label = format!(
            "second-derivative family vs jet (l1,m2,m3)=({},{},{}) a={:?}",
            point.l1, point.m2, point.m3, a.a
        );
        let lam = lam.clone();
        let ambient = ambient.clone();
        let point = *point;
        report.check(&label, prec, 133.0, move |p| {
            let probe = ProbeSpec::spectral(lam.clone(), [0, 2, 0], 2);
            let jet = taylor_probe(&probe, &a, p);
            let q = q_coeff(&point, &ambient, &a, p)?;
            // When the closed form vanishes the jet coefficient must be an
            // exact zero; otherwise both are exact and compared directly.
            Ok((jet.coeff_value(2, p), q))
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(n: i64) -> Ambient {
        Ambient::new(n).unwrap()
    }

    #[test]
    fn probe_constant_term_is_value() {
        let a5 = amb(5);
        let lam = SpectralParam::new(
            a5,
            [CRat::from_i64(0), CRat::from_i64(0), CRat::from_i64(0)],
        );
        let probe = ProbeSpec::spectral(lam.clone(), [1, 0, 0], 2);
        let a = MultiIndex::new(0, 0, 0);
        let jet = taylor_probe(&probe, &a, 128);
        let c0 = jet.coeff_exact(0).unwrap();
        let v = crate::coefficients::ktilde_lambda(&lam, &a, 128);
        assert_eq!(c0, v.exact().unwrap());
    }

    #[test]
    fn derivative_vanishes_along_contained_line() {
        // Base on a type-I line, direction = the line's own direction.
        let a4 = amb(4);
        let line = crate::parameter_space::Line::new(
            crate::parameter_space::LineType::I,
            1,
            2,
            0,
        )
        .unwrap();
        let base = line.point_at(&a4, &CRat::from_rat(rat(1, 3)));
        let dirc = line.direction();
        let probe = ProbeSpec {
            base: ProbeBase::Spectral(base),
            direction: dirc,
            order: 2,
        };
        for a in MultiIndex::grid(3) {
            let jet = taylor_probe(&probe, &a, 128);
            match &jet {
                ProbeJet::Exact(c) => {
                    assert!(matches!(&c[0], Some(s) if s.is_zero()));
                    assert!(matches!(&c[1], Some(s) if s.is_zero()));
                }
                ProbeJet::Numeric(c) => {
                    // base coordinate 1/3 leaves the half-integer grid; the
                    // derivative must still vanish to working precision
                    let e0 = c[0].norm_sqr().log2_abs();
                    let e1 = c[1].norm_sqr().log2_abs();
                    assert!(e0.is_none() || e0.unwrap() < -200.0);
                    assert!(e1.is_none() || e1.unwrap() < -200.0, "c1 = {:?}", e1);
                }
            }
        }
    }

    #[test]
    fn rank_of_single_kernel_row_off_singular_set() {
        let a5 = amb(5);
        let lam = SpectralParam::new(
            a5,
            [CRat::from_i64(1), CRat::from_i64(0), CRat::from_i64(0)],
        );
        let r = rank_check(&lam, &[FamilyId::Ktilde], 2, 128).unwrap();
        assert_eq!(r.rank, 1);
        assert!(matches!(r.mode, RankMode::ExactRational));
    }

    #[test]
    fn type_i_pair_rank_two() {
        // Two-plane type-I point with α1 odd: the two type-I families are
        // independent.
        let a5 = amb(5);
        let alpha = GeometricParam::new(
            a5,
            [CRat::from_i64(1), CRat::from_i64(-4), CRat::from_i64(-6)],
        );
        let lam = to_spectral(&alpha);
        let r = rank_check(
            &lam,
            &[FamilyId::T { slot: 2, k: 0 }, FamilyId::T { slot: 3, k: 1 }],
            6,
            128,
        )
        .unwrap();
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn zero_set_check_examples() {
        let a4 = amb(4);
        let line = crate::parameter_space::Line::new(
            crate::parameter_space::LineType::I,
            1,
            2,
            0,
        )
        .unwrap();
        let lam = line.point_at(&a4, &CRat::from_rat(rat(2, 7)));
        assert!(zero_set_check(&lam, 5, 128));
        let off = SpectralParam::new(
            a4,
            [
                CRat::from_rat(rat(1, 3)),
                CRat::from_rat(rat(1, 7)),
                CRat::from_rat(rat(1, 11)),
            ],
        );
        assert!(!zero_set_check(&off, 2, 128));
    }
}
