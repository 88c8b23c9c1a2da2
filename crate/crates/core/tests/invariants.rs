//! Property tests for the scalar layer and cross-module invariants.

use proptest::prelude::*;

use trilin_core::coefficients::{s_coeff, MultiIndex};
use trilin_core::numerics::bigc::BigC;
use trilin_core::numerics::gamma::{pochhammer_bigc, pochhammer_crat, rgamma_bigc, rgamma_half};
use trilin_core::numerics::rational::{rat, rati, CRat, Rat};
use trilin_core::numerics::structured::Structured;
use trilin_core::parameter_space::{Ambient, SpectralParam};
use trilin_core::probes::{rank_check, taylor_probe, ProbeBase, ProbeJet, ProbeSpec};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| rat(n, d))
}

fn arb_crat() -> impl Strategy<Value = CRat> {
    (arb_rat(), arb_rat()).prop_map(|(re, im)| CRat::new(re, im))
}

fn arb_structured() -> impl Strategy<Value = Structured> {
    (arb_rat(), -6i64..6, -6i64..6).prop_map(|(q, t, p)| Structured::new(q, t, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // (x)_{m+n} = (x)_m · (x+m)_n over Gaussian rationals.
    #[test]
    fn pochhammer_splits(x in arb_crat(), m in 0u64..20, n in 0u64..20) {
        let lhs = pochhammer_crat(&x, m + n);
        let shifted = &x + &CRat::from_i64(m as i64);
        let rhs = &pochhammer_crat(&x, m) * &pochhammer_crat(&shifted, n);
        prop_assert_eq!(lhs, rhs);
    }

    // Same identity on complex floats, up to rounding.
    #[test]
    fn pochhammer_splits_numeric(x in arb_crat(), m in 0u64..12, n in 0u64..12) {
        let prec = 192;
        let z = BigC::from_crat(&x, prec);
        let lhs = pochhammer_bigc(&z, m + n);
        let shifted = z.add(&BigC::from_i64(m as i64, prec));
        let rhs = pochhammer_bigc(&z, m).mul(&pochhammer_bigc(&shifted, n));
        if let Some(e) = BigC::rel_err_log2(&lhs, &rhs) {
            prop_assert!(e < -150.0, "rel err 2^{}", e);
        }
    }

    // Structured scalars form a commutative ring with exact conversion.
    #[test]
    fn structured_ring_and_conversion(
        a in arb_structured(),
        b in arb_structured(),
        c in arb_structured(),
    ) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        // conversion commutes with multiplication: rel err < 2^-(prec-8)
        let prec = 128;
        let lhs = (&a * &b).to_bigc(prec);
        let rhs = a.to_bigc(prec).mul(&b.to_bigc(prec));
        if let Some(e) = BigC::rel_err_log2(&lhs, &rhs) {
            prop_assert!(e < -(prec as f64 - 8.0), "rel err 2^{}", e);
        }
    }

    // 1/Γ(z+1) = (1/Γ(z)) / z at half-integers, exactly.
    #[test]
    fn rgamma_functional_equation_exact(twoz in -30i64..30) {
        let z = rat(twoz, 2);
        prop_assume!(!(twoz % 2 == 0 && twoz <= 0));
        let lhs = rgamma_half(&(z.clone() + rati(1)));
        let rhs = &rgamma_half(&z) * &Structured::from_rat(z).inv();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn rgamma_numeric_functional_equation_sweep() {
    let prec = 256;
    for (re, im) in [(7, 3), (-11, 5), (3, -8), (-17, -2)] {
        let z = BigC::from_crat(&CRat::new(rat(re, 4), rat(im, 6)), prec);
        let lhs = rgamma_bigc(&z.add(&BigC::one(prec)), prec);
        let rhs = rgamma_bigc(&z, prec).div(&z);
        let e = BigC::rel_err_log2(&lhs, &rhs).unwrap_or(f64::NEG_INFINITY);
        assert!(e < -240.0, "rel err 2^{e}");
    }
}

/// The diagonal family is symmetric under simultaneous permutation of the
/// spectral coordinates and the multi-index.
#[test]
fn diagonal_family_permutation_symmetry() {
    let ambient = Ambient::new(5).unwrap();
    let rho = ambient.rho();
    let k = 3i64;
    let l1 = rat(1, 2);
    let l2 = rati(-2);
    let l3 = -(rho + rati(2 * k)) - l1.clone() - l2.clone();
    let coords = [l1, l2, l3];
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [0, 2, 1],
        [2, 1, 0],
        [1, 0, 2],
    ];
    let base = SpectralParam::new(
        ambient.clone(),
        [
            CRat::from_rat(coords[0].clone()),
            CRat::from_rat(coords[1].clone()),
            CRat::from_rat(coords[2].clone()),
        ],
    );
    for a in MultiIndex::grid(3) {
        let v0 = s_coeff(k, &base, &a, 128).unwrap();
        for p in perms {
            let lam = SpectralParam::new(
                ambient.clone(),
                [
                    CRat::from_rat(coords[p[0]].clone()),
                    CRat::from_rat(coords[p[1]].clone()),
                    CRat::from_rat(coords[p[2]].clone()),
                ],
            );
            let ap = MultiIndex::new(a.a[p[0]], a.a[p[1]], a.a[p[2]]);
            let vp = s_coeff(k, &lam, &ap, 128).unwrap();
            assert_eq!(
                v0.exact().unwrap(),
                vp.exact().unwrap(),
                "permutation {p:?} at a={a:?}"
            );
        }
    }
}

/// Second derivatives at two-line points scale by the square of a direction
/// rescaling.
#[test]
fn second_derivative_scaling_law() {
    let ambient = Ambient::new(5).unwrap();
    let rho = ambient.rho();
    // mixed two-line point in normal form, l1=2, m2=m3=0
    let lam = SpectralParam::new(
        ambient.clone(),
        [
            CRat::from_rat(-rho - rati(2)),
            CRat::from_i64(0),
            CRat::from_i64(0),
        ],
    );
    for a in MultiIndex::grid(3) {
        let jets: Vec<ProbeJet> = [1i64, 2, 3]
            .iter()
            .map(|c| {
                taylor_probe(
                    &ProbeSpec {
                        base: ProbeBase::Spectral(lam.clone()),
                        direction: [
                            CRat::zero(),
                            CRat::from_i64(2 * c),
                            CRat::zero(),
                        ],
                        order: 2,
                    },
                    &a,
                    128,
                )
            })
            .collect();
        let c2: Vec<_> = jets
            .iter()
            .map(|j| j.coeff_exact(2).unwrap().clone())
            .collect();
        // scaling by c multiplies the second coefficient by c²
        for (i, c) in [(1usize, 2i64), (2usize, 3i64)] {
            let scaled = &c2[0] * &Structured::from_rat(rati(c * c));
            assert_eq!(c2[i], scaled, "direction scale {c} at a={a:?}");
        }
        // first derivatives vanish at a two-line point
        assert!(jets[0].is_exact_zero(0));
        assert!(jets[0].is_exact_zero(1));
    }
}

/// Rank is monotone in the grid bound and stabilizes.
#[test]
fn rank_monotone_in_grid() {
    use trilin_core::coefficients::FamilyId;
    let ambient = Ambient::new(5).unwrap();
    let alpha = trilin_core::parameter_space::GeometricParam::new(
        ambient,
        [CRat::from_i64(1), CRat::from_i64(-4), CRat::from_i64(-6)],
    );
    let lam = trilin_core::parameter_space::to_spectral(&alpha);
    let candidates = vec![FamilyId::T { slot: 2, k: 0 }, FamilyId::T { slot: 3, k: 1 }];
    let mut last = 0;
    for bound in 1..=7u64 {
        match rank_check(&lam, &candidates, bound, 128) {
            Ok(r) => {
                assert!(r.rank >= last, "rank dropped at bound {bound}");
                last = r.rank;
            }
            Err(_) => assert_eq!(last, 0, "degenerate only before any rank seen"),
        }
    }
    assert_eq!(last, 2);
}

/// Upper-bound lemmas for the diagonal system, sampled over their
/// hypothesis ranges.
#[test]
fn diagonal_system_upper_bounds() {
    use trilin_core::diag_system::{sol_dim, SystemVariant};
    let v = SystemVariant::Displayed;
    for n in [4i64, 5] {
        let ambient = Ambient::new(n).unwrap();
        let rho = ambient.rho();
        for k in 1..=4i64 {
            // generic second coordinate: dim <= 1
            for l2num in [1i64, 3, -15] {
                let l2 = CRat::from_rat(rat(l2num, 7));
                for l1 in [-1i64, -3, 2] {
                    let d = sol_dim(&CRat::from_i64(l1), &l2, k, &rho, v);
                    assert!(d <= 1, "generic bound n={n} k={k} λ1={l1} λ2={l2num}/7: {d}");
                }
            }
            // mixed hypothesis: λ1 = -k1 (1..k-1), λ2 = -rho-l2 ∉ E_k
            for k1 in 1..k {
                for l2 in 0..k {
                    let lam2 = -(rho.clone() + rati(l2));
                    if trilin_core::numerics::rational::is_integer(&lam2) {
                        let val = -lam2.numer().clone();
                        let vi: i64 = i64::try_from(val).unwrap();
                        if (1..=k).contains(&vi) {
                            continue;
                        }
                    }
                    let d = sol_dim(
                        &CRat::from_i64(-k1),
                        &CRat::from_rat(lam2),
                        k,
                        &rho,
                        v,
                    );
                    let bound = if k1 + l2 < k { 1 } else { 2 };
                    assert!(d <= bound, "mixed bound n={n} k={k} k1={k1} l2={l2}: {d}");
                }
            }
            // both integer: k1+k2 <= k gives dim <= 1
            for k1 in 1..=k {
                for k2 in 1..=(k - k1).max(0) {
                    let d = sol_dim(&CRat::from_i64(-k1), &CRat::from_i64(-k2), k, &rho, v);
                    assert!(d <= 1, "integer bound n={n} k={k} ({k1},{k2}): {d}");
                }
            }
        }
    }
}

/// The one-step normalized reduction factor chains into the k-step product.
#[test]
fn reduction_factor_chains() {
    // Π_{j<k} 4(Σα+n+1+2j)(α3+2j+2) = 4^k Π_{l=1..k} (Σα+n-1+2l)(α3+2l)
    let n = 5i64;
    for (a1, a2, a3) in [(1i64, -3i64, 2i64), (0, 0, 0), (-7, 5, 3)] {
        for k in 0..=4i64 {
            let mut lhs = rat(1, 1);
            for j in 0..k {
                let s = a1 + a2 + a3 + 2 * j + n + 1;
                let t = a3 + 2 * j + 2;
                lhs *= rati(4) * rati(s) * rati(t);
            }
            let mut rhs = rat(1, 1);
            for l in 1..=k {
                rhs *= rati(4) * rati(a1 + a2 + a3 + n - 1 + 2 * l) * rati(a3 + 2 * l);
            }
            assert_eq!(lhs, rhs, "k={k} α=({a1},{a2},{a3})");
        }
    }
}

/// The double sphere integral reproduces the operator value on `1⊗1`
/// through the composition chain: an independent route to the same
/// polynomial pair.
#[test]
fn double_integral_reproduces_operator_value() {
    use trilin_core::coefficients::{e_one_one, srint};
    use trilin_core::numerics::gamma::gamma_half;
    let ambient = Ambient::new(5).unwrap();
    let rho = ambient.rho();
    let n1 = ambient.n() - 1;
    for (l1n, l2n) in [(1i64, -1i64), (1, 3), (-3, 1), (3, 3)] {
        // half-odd spectral parameters keep every Γ argument off the poles
        let l1 = rat(l1n, 2);
        let l2 = rat(l2n, 2);
        let s = CRat::from_rat(rati(-n1 - 2) - l1.clone() - l1.clone());
        let r = CRat::from_rat(rati(-n1 - 2) - l2.clone() - l2.clone());
        // prefactor of the chain:
        // 16 π^{-2(n-1)} Γ(λ1+ρ+1)Γ(-λ1+ρ)Γ(λ2+ρ+1)Γ(-λ2+ρ)
        //  · π^{n-1} 2^{2λ1+2λ2} / (Γ(λ1+ρ)Γ(λ2+ρ)Γ(-λ1-1)Γ(-λ2-1))
        let g = |x: Rat| gamma_half(&x).unwrap();
        let pref = [
            Structured::from_rat(rati(16)),
            Structured::pi_pow_half(-4 * n1),
            g(l1.clone() + rho.clone() + rati(1)),
            g(-l1.clone() + rho.clone()),
            g(l2.clone() + rho.clone() + rati(1)),
            g(-l2.clone() + rho.clone()),
            Structured::pi_pow_half(2 * n1),
            Structured::two_pow_half(2 * (l1n + l2n)),
            g(l1.clone() + rho.clone()).inv(),
            g(l2.clone() + rho.clone()).inv(),
            g(-l1.clone() - rati(1)).inv(),
            g(-l2.clone() - rati(1)).inv(),
        ]
        .iter()
        .fold(Structured::one(), |acc, x| &acc * x);
        let at = |d: i64| -> Structured {
            let v = srint(&s, &r, &CRat::from_i64(d), &ambient, 192).unwrap();
            &pref * v.exact().unwrap()
        };
        let b_route = at(0);
        let a_route = at(1).checked_add(&-&b_route).unwrap();
        let (a_want, b_want) = e_one_one(
            &CRat::from_rat(l1.clone()),
            &CRat::from_rat(l2.clone()),
            &ambient,
        );
        assert_eq!(
            a_route.as_rational().unwrap(),
            a_want.as_real().unwrap().clone(),
            "quadratic part at λ=({l1},{l2})"
        );
        assert_eq!(
            b_route.as_rational().unwrap(),
            b_want.as_real().unwrap().clone(),
            "constant part at λ=({l1},{l2})"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // Coordinate conversions are mutually inverse on random points.
    #[test]
    fn coordinate_roundtrip(
        re in proptest::collection::vec((-40i64..40, 1i64..10), 3),
        im in proptest::collection::vec((-40i64..40, 1i64..10), 3),
        n in 4i64..8,
    ) {
        use trilin_core::parameter_space::{to_geometric, to_spectral};
        let ambient = Ambient::new(n).unwrap();
        let lam = SpectralParam::new(
            ambient,
            [0, 1, 2].map(|i| CRat::new(rat(re[i].0, re[i].1), rat(im[i].0, im[i].1))),
        );
        prop_assert_eq!(to_spectral(&to_geometric(&lam)), lam);
    }
}

/// Every evaluator is a pure function over immutable values; concurrent
/// evaluation from many threads agrees with the sequential result.
#[test]
fn concurrent_evaluation_is_consistent() {
    use std::thread;
    use trilin_core::coefficients::ktilde_lambda;
    let ambient = Ambient::new(5).unwrap();
    let lam = SpectralParam::new(
        ambient,
        [CRat::from_i64(1), CRat::from_i64(-2), CRat::from_i64(0)],
    );
    let expected: Vec<_> = MultiIndex::grid(2)
        .iter()
        .map(|a| ktilde_lambda(&lam, a, 128).exact().unwrap().clone())
        .collect();
    let handles: Vec<_> = (0..8)
        .map(|_| {
            let lam = lam.clone();
            let expected = expected.clone();
            thread::spawn(move || {
                for (a, want) in MultiIndex::grid(2).iter().zip(&expected) {
                    let got = ktilde_lambda(&lam, a, 128);
                    assert_eq!(got.exact().unwrap(), want);
                }
            })
        })
        .collect();
    for h in handles {
        h.join().unwrap();
    }
}

/// Complex coordinates leave the structured-exact grid, so ranks go
/// through the numeric eliminator; independence of the two type-I families
/// must survive the switch.
#[test]
fn numeric_rank_mode_at_complex_point() {
    use trilin_core::coefficients::FamilyId;
    use trilin_core::parameter_space::{GeometricParam, to_spectral};
    let ambient = Ambient::new(5).unwrap();
    // one-type-I-line point with a complex free coordinate
    let alpha = GeometricParam::new(
        ambient,
        [
            CRat::new(rat(1, 1), rat(1, 3)),
            CRat::from_i64(-4),
            CRat::from_i64(-6),
        ],
    );
    let lam = to_spectral(&alpha);
    let r = rank_check(
        &lam,
        &[FamilyId::T { slot: 2, k: 0 }, FamilyId::T { slot: 3, k: 1 }],
        5,
        256,
    )
    .unwrap();
    assert_eq!(r.rank, 2);
    assert!(matches!(
        r.mode,
        trilin_core::probes::RankMode::Numeric { .. }
    ));
}

/// The spectral normal form of the mixed two-line stratum: λ = (-ρ-l1,
/// m2, m3) lies on exactly two lines precisely when both sign conditions
/// |m2+m3| <= l1 and |m2-m3| <= l1 hold together with the parity
/// condition — cross-checked against brute-force line counting.
#[test]
fn mixed_stratum_spectral_form_brute_force() {
    use trilin_core::parameter_space::{classify_stratum, StratumTag};
    for n in [4i64, 5] {
        let ambient = Ambient::new(n).unwrap();
        let rho = ambient.rho();
        for l1 in 0..=4i64 {
            for m2 in -4..=4i64 {
                for m3 in -4..=4i64 {
                    let lam = SpectralParam::new(
                        ambient.clone(),
                        [
                            CRat::from_rat(-rho.clone() - rati(l1)),
                            CRat::from_i64(m2),
                            CRat::from_i64(m3),
                        ],
                    );
                    // the normal form may hold with any slot distinguished:
                    // a coordinate equal to -rho-l with the other two
                    // integers can play the pinned role after rotation
                    let coords = [
                        -(rho.clone() + rati(l1)),
                        rati(m2),
                        rati(m3),
                    ];
                    let mut closed = false;
                    for j in 0..3 {
                        let pinned = -(coords[j].clone() + rho.clone());
                        let (a, b) = (&coords[(j + 1) % 3], &coords[(j + 2) % 3]);
                        let (Some(lp), Some(ma), Some(mb)) = (
                            trilin_core::numerics::rational::as_i64(&pinned),
                            trilin_core::numerics::rational::as_i64(a),
                            trilin_core::numerics::rational::as_i64(b),
                        ) else {
                            continue;
                        };
                        if !trilin_core::numerics::rational::is_integer(&pinned) || lp < 0 {
                            continue;
                        }
                        if (lp + ma + mb).rem_euclid(2) == 0
                            && (ma + mb).abs() <= lp
                            && (ma - mb).abs() <= lp
                        {
                            closed = true;
                        }
                    }
                    let tag = classify_stratum(&lam).tag;
                    assert_eq!(
                        closed,
                        tag == StratumTag::Z2I,
                        "n={n} ({l1},{m2},{m3}) tag {tag:?}"
                    );
                }
            }
        }
    }
}
