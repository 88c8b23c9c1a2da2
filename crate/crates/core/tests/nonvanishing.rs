//! Coefficient-level nonvanishing facts used by the multiplicity proofs:
//! support evidence for the type-I family, the intertwiner family in its
//! three regimes, and the diagonal family at two-type-II-line points.

use trilin_core::coefficients::{r_coeff, s_coeff, ttilde_coeff, MultiIndex};
use trilin_core::numerics::rational::{rat, rati, CRat};
use trilin_core::parameter_space::{Ambient, SpectralParam};

fn amb(n: i64) -> Ambient {
    Ambient::new(n).unwrap()
}

/// Off the type-II plane, the type-I family at the full distinguished index
/// is nonzero for large free indices (its support fills the codimension
/// stratum).
#[test]
fn type_i_family_support_evidence() {
    let a5 = amb(5);
    // odd pair sum: (α1+α2)/2 + rho - k stays off the integers, so the
    // point is never a type-II pole and the Σ-Pochhammer cannot vanish
    let (b1, b2) = (CRat::from_i64(1), CRat::from_i64(-4));
    for k in 0..=3i64 {
        let v = ttilde_coeff(
            3,
            k,
            (&b1, &b2),
            &a5,
            &MultiIndex::new(9, 8, k as u64),
            128,
        )
        .unwrap();
        assert!(!v.is_exact_zero(), "k={k}");
    }
}

/// Intertwiner family nonvanishing in the generic type-II regime:
/// a2+a3 > k+p, a1+a2 > k, a1+a3 > k with the free parameters off the
/// type-I planes.
#[test]
fn intertwiner_generic_regime_nonzero() {
    // A one-type-II-line witness: n=5, l=2, k=1 (p=1), λ2 = 5/2.
    let a5 = amb(5);
    let rho = a5.rho();
    let lam = SpectralParam::new(
        a5.clone(),
        [
            CRat::from_rat(-rho.clone() - rati(2)),
            CRat::from_rat(rat(5, 2)),
            CRat::from_rat(-rat(5, 2)),
        ],
    );
    let alpha = trilin_core::parameter_space::to_geometric(&lam);
    let (k, p) = (1i64, 1i64);
    for (a1, a2, a3) in [(0u64, 2u64, 2u64), (1, 3, 2), (2, 2, 3), (0, 3, 3)] {
        assert!(a2 + a3 > (k + p) as u64 && a1 + a2 > k as u64 && a1 + a3 > k as u64);
        let v = r_coeff(
            1,
            p,
            (alpha.get(2), alpha.get(3)),
            &a5,
            &MultiIndex::new(a1, a2, a3),
            128,
        )
        .unwrap();
        assert!(!v.is_exact_zero(), "a=({a1},{a2},{a3})");
    }
}

/// In the special regime (one free parameter on a type-I plane) the
/// intertwiner family vanishes for a1 beyond the plane index but stays
/// nonzero for small a1 and large a2, a3 — the support drops to the
/// two-slot stratum.
#[test]
fn intertwiner_special_regime_pattern() {
    // n=5, α = (2p, -(n-1)-2k2, -(n-1)+2q) with p=0, k2=2, q=1
    let a5 = amb(5);
    let (p, k2, q) = (0i64, 2i64, 1i64);
    let alpha2 = CRat::from_i64(-(a5.n() - 1) - 2 * k2);
    let alpha3 = CRat::from_i64(-(a5.n() - 1) + 2 * q);
    // (α2/2 + rho)_{a2} = (-k2)_{a2} kills a2 > k2
    for a2 in 0..=6u64 {
        let v = r_coeff(1, p, (&alpha2, &alpha3), &a5, &MultiIndex::new(1, a2, 6), 128).unwrap();
        assert_eq!(
            a2 > k2 as u64,
            v.is_exact_zero(),
            "a2={a2}: unexpected {v:?}"
        );
    }
}

/// Diagonal family value at the corner index of a two-type-II-line point:
/// the three advertised factors are all nonzero.
#[test]
fn diagonal_family_corner_value_nonzero() {
    for (n, l1, l2, m3) in [(4i64, 1i64, 1i64, 0i64), (5, 2, 1, 1), (5, 2, 2, 0)] {
        let ambient = amb(n);
        let rho = ambient.rho();
        let k = (l1 + l2 - m3) / 2;
        let lam = SpectralParam::new(
            ambient.clone(),
            [
                CRat::from_rat(-rho.clone() - rati(l1)),
                CRat::from_rat(-rho.clone() - rati(l2)),
                CRat::from_rat(rho.clone() + rati(m3)),
            ],
        );
        let v = s_coeff(k, &lam, &MultiIndex::new(0, 0, k as u64), 128).unwrap();
        assert!(!v.is_exact_zero(), "(n,l1,l2,m3)=({n},{l1},{l2},{m3})");
    }
}

/// The one-type-II-line constant term: at the normal form the value at the
/// zero index is a product of three nonvanishing Pochhammers.
#[test]
fn diagonal_family_nonzero_on_one_line_points() {
    // witnesses (n, l, k, λ2) matching the rank suite
    for (n, l, k, l2) in [(5i64, 2i64, 1i64, rat(5, 2)), (4, 2, 1, rati(2))] {
        let ambient = amb(n);
        let rho = ambient.rho();
        let m = l - 2 * k;
        let lam = SpectralParam::new(
            ambient.clone(),
            [
                CRat::from_rat(-rho.clone() - rati(l)),
                CRat::from_rat(l2.clone()),
                CRat::from_rat(rati(m) - l2.clone()),
            ],
        );
        let v = s_coeff(k, &lam, &MultiIndex::new(0, 0, 0), 128).unwrap();
        assert!(!v.is_exact_zero(), "(n,l,k)=({n},{l},{k})");
    }
}
