//! The homogeneous linear system governing diagonal-supported invariant
//! trilinear forms (equivalently, covariant bi-differential operators), its
//! exact solution-space dimensions, the full dimension table over the
//! integer/half-integer parameter grids, and the multiplicity classifier.

use serde::Serialize;

use crate::numerics::rational::{as_i64, is_integer, rati, CRat, Rat};
use crate::parameter_space::{classify_stratum, Ambient, SpectralParam, StratumTag};

/// Which rendering of the second equation family to use. The two appear in
/// different places with middle factors `2(k-r-t)(…)` and `2(k-r)(…)`; only
/// the first reproduces the dimension table (and is the one enjoying the
/// `(r,t) ↔ (t,r)` swap symmetry), so it is the default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[derive(Default)]
pub enum SystemVariant {
    #[default]
    Displayed,
    ProofVariant,
}


/// The system in the unknowns `c_{r,t}`, `r,t >= 0`, `r+t <= k`, with both
/// equation families taken over `r+t <= k-1`. Out-of-range unknowns
/// (negative index) contribute zero.
#[derive(Clone, Debug)]
pub struct SolSystem {
    pub k: i64,
    pub lambda1: CRat,
    pub lambda2: CRat,
    pub variant: SystemVariant,
    pub unknowns: Vec<(i64, i64)>,
    /// Rows as (column, coefficient) lists over the unknown indexing.
    pub rows: Vec<Vec<(usize, CRat)>>,
}

#[allow(clippy::type_complexity)]
fn unknown_index(k: i64) -> (Vec<(i64, i64)>, impl Fn(i64, i64) -> Option<usize>) {
    let mut unknowns = Vec::new();
    for r in 0..=k {
        for t in 0..=(k - r) {
            unknowns.push((r, t));
        }
    }
    let table = unknowns.clone();
    let lookup = move |r: i64, t: i64| -> Option<usize> {
        if r < 0 || t < 0 || r + t > table.len() as i64 {
            return None;
        }
        table.iter().position(|&(a, b)| a == r && b == t)
    };
    (unknowns, lookup)
}

/// Build the system at `(λ1, λ2; k)`.
pub fn build_system(lambda1: &CRat, lambda2: &CRat, k: i64, rho: &Rat, variant: SystemVariant) -> SolSystem {
    assert!(k >= 0, "system order k must be nonnegative");
    let (unknowns, idx) = unknown_index(k);
    let mut rows = Vec::new();
    let rho_c = CRat::from_rat(rho.clone());
    for r in 0..=k {
        for t in 0..=(k - 1 - r).max(-1) {
            if r + t > k - 1 {
                continue;
            }
            // First family:
            //   4(r+1)(r+1+λ1) c_{r+1,t}
            // + 2(k-r-t)(k-r+t-1+rho+λ2) c_{r,t}
            // - (k-r-t+1)(k-r-t) c_{r,t-1} = 0
            let mut row = Vec::new();
            if let Some(i) = idx(r + 1, t) {
                let c = &CRat::from_i64(4 * (r + 1))
                    * &(&CRat::from_i64(r + 1) + lambda1);
                row.push((i, c));
            }
            if let Some(i) = idx(r, t) {
                let c = &CRat::from_i64(2 * (k - r - t))
                    * &(&(&CRat::from_i64(k - r + t - 1) + &rho_c) + lambda2);
                row.push((i, c));
            }
            if let Some(i) = idx(r, t - 1) {
                let c = CRat::from_i64(-(k - r - t + 1) * (k - r - t));
                row.push((i, c));
            }
            rows.push(row);

            // Second family:
            //   4(t+1)(t+1+λ2) c_{r,t+1}
            // + 2·M·(k+r-t-1+rho+λ1) c_{r,t}
            // - (k-r-t+1)(k-r-t) c_{r-1,t} = 0
            // with M = k-r-t (displayed) or k-r (proof-variant rendering).
            let m = match variant {
                SystemVariant::Displayed => k - r - t,
                SystemVariant::ProofVariant => k - r,
            };
            let mut row = Vec::new();
            if let Some(i) = idx(r, t + 1) {
                let c = &CRat::from_i64(4 * (t + 1))
                    * &(&CRat::from_i64(t + 1) + lambda2);
                row.push((i, c));
            }
            if let Some(i) = idx(r, t) {
                let c = &CRat::from_i64(2 * m)
                    * &(&(&CRat::from_i64(k + r - t - 1) + &rho_c) + lambda1);
                row.push((i, c));
            }
            if let Some(i) = idx(r - 1, t) {
                let c = CRat::from_i64(-(k - r - t + 1) * (k - r - t));
                row.push((i, c));
            }
            rows.push(row);
        }
    }
    SolSystem {
        k,
        lambda1: lambda1.clone(),
        lambda2: lambda2.clone(),
        variant,
        unknowns,
        rows,
    }
}

/// Result of the exact elimination.
#[derive(Clone, Debug, Serialize)]
pub struct DimReport {
    pub k: i64,
    pub unknown_count: usize,
    pub equation_count: usize,
    pub rank: usize,
    pub dim: usize,
    /// Non-pivot unknowns `(r, t)` — a choice of principal unknowns.
    pub principal_unknowns: Vec<(i64, i64)>,
}

/// Exact nullity by Gaussian elimination over the Gaussian rationals, with
/// deterministic pivot order (lexicographic on `(r, t)`).
#[allow(clippy::needless_range_loop)]
pub fn nullspace_dim(sys: &SolSystem) -> DimReport {
    let cols = sys.unknowns.len();
    let mut mat: Vec<Vec<CRat>> = sys
        .rows
        .iter()
        .map(|row| {
            let mut dense = vec![CRat::zero(); cols];
            for (i, c) in row {
                dense[*i] = &dense[*i] + c;
            }
            dense
        })
        .collect();
    let rows = mat.len();
    let mut rank = 0;
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(p) = (row..rows).find(|r| !mat[*r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let inv = mat[row][col].inv();
        for c in col..cols {
            mat[row][c] = &mat[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in col..cols {
                    let v = &mat[r][c] - &(&mat[row][c] * &f);
                    mat[r][c] = v;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        rank += 1;
    }
    let principal = (0..cols)
        .filter(|c| !pivot_cols.contains(c))
        .map(|c| sys.unknowns[c])
        .collect();
    DimReport {
        k: sys.k,
        unknown_count: cols,
        equation_count: rows,
        rank,
        dim: cols - rank,
        principal_unknowns: principal,
    }
}

/// Convenience: dimension of the solution space.
pub fn sol_dim(lambda1: &CRat, lambda2: &CRat, k: i64, rho: &Rat, variant: SystemVariant) -> usize {
    nullspace_dim(&build_system(lambda1, lambda2, k, rho, variant)).dim
}

// ---------------------------------------------------------------------------
// The printed dimension table.
// ---------------------------------------------------------------------------

/// Membership of one spectral coordinate in the two exceptional sets
/// `E_k = {-1,…,-k}` and `E_k^rho = {-rho,…,-rho-(k-1)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SetClass {
    Neither,
    /// `λ = -m ∈ E_k` only; carries `m`.
    EkOnly(i64),
    /// `λ = -rho-l ∈ E_k^rho` only; carries `l`.
    ErhoOnly(i64),
    /// In both sets (even sphere dimension); carries `m` with `λ = -m`.
    Both(i64),
}

pub fn classify_coordinate(lam: &CRat, k: i64, rho: &Rat) -> SetClass {
    let Some(r) = lam.as_real() else {
        return SetClass::Neither;
    };
    let in_ek = is_integer(r)
        && as_i64(r).is_some_and(|v| -k <= v && v <= -1);
    let l_val = -(r + rho);
    let in_erho = is_integer(&l_val)
        && as_i64(&l_val).is_some_and(|l| 0 <= l && l < k);
    match (in_ek, in_erho) {
        (false, false) => SetClass::Neither,
        (true, false) => SetClass::EkOnly(-as_i64(r).unwrap()),
        (false, true) => SetClass::ErhoOnly(as_i64(&l_val).unwrap()),
        (true, true) => SetClass::Both(-as_i64(r).unwrap()),
    }
}

/// The dimension the table predicts for a pair of coordinate classes.
/// `None` when the pair is outside the tabulated grid (then the generic
/// bound applies and the dimension is 1).
pub fn table_prediction(c1: &SetClass, c2: &SetClass, k: i64, rho: &Rat) -> usize {
    use SetClass::*;
    let rho_int = as_i64(rho);
    let tri = |k1: i64, k2: i64| -> usize {
        let r = rho_int.expect("trichotomy cells need integer rho");
        if k1 + k2 <= k {
            1
        } else if k1 + k2 < k + r {
            2
        } else {
            3
        }
    };
    match (c1, c2) {
        (Neither, _) | (_, Neither) => 1,
        (EkOnly(k1), EkOnly(k2)) => {
            if k1 + k2 <= k {
                1
            } else {
                2
            }
        }
        (EkOnly(k1), ErhoOnly(l2)) | (ErhoOnly(l2), EkOnly(k1)) => {
            if k1 + l2 < k {
                1
            } else {
                2
            }
        }
        (ErhoOnly(_), ErhoOnly(_)) => 1,
        (Both(k1), EkOnly(k2)) | (EkOnly(k2), Both(k1)) => tri(*k1, *k2),
        (Both(k1), ErhoOnly(l2)) | (ErhoOnly(l2), Both(k1)) => {
            if k1 + l2 < k {
                1
            } else {
                2
            }
        }
        (Both(k1), Both(k2)) => tri(*k1, *k2),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub k: i64,
    pub class1: SetClass,
    pub class2: SetClass,
    pub lambda1: String,
    pub lambda2: String,
    pub predicted: usize,
    pub computed: usize,
}

#[derive(Debug)]
pub struct CellMismatch {
    pub cell: TableCell,
}

impl std::fmt::Display for CellMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "table cell mismatch at k={} λ1={} λ2={}: predicted {}, computed {}",
            self.cell.k, self.cell.lambda1, self.cell.lambda2, self.cell.predicted, self.cell.computed
        )
    }
}

/// The grid of tabulated coordinates for order `k`: all of `E_k ∪ E_k^rho`,
/// plus a few generic representatives.
fn table_coordinates(k: i64, rho: &Rat, generic: bool) -> Vec<CRat> {
    let mut v = Vec::new();
    for m in 1..=k {
        v.push(CRat::from_i64(-m));
    }
    for l in 0..k {
        let x = -(rho.clone() + rati(l));
        let c = CRat::from_rat(x);
        if !v.contains(&c) {
            v.push(c);
        }
    }
    if generic {
        v.push(CRat::from_rat(crate::numerics::rational::rat(1, 3)));
        v.push(CRat::from_i64(-(k + 1) * 2 - 1));
        v.push(CRat::from_rat(-(rho.clone() + rati(k + 1))));
    }
    v
}

/// Reproduce the dimension table for all `k <= kmax`: every tabulated pair
/// is solved exactly and compared against the printed value. Returns the
/// cells, or the first mismatch.
pub fn sol_table(
    ambient: &Ambient,
    kmax: i64,
    include_generic: bool,
    variant: SystemVariant,
) -> Result<Vec<TableCell>, CellMismatch> {
    let rho = ambient.rho();
    let mut out = Vec::new();
    for k in 1..=kmax {
        for l1 in table_coordinates(k, &rho, include_generic) {
            for l2 in table_coordinates(k, &rho, include_generic) {
                let c1 = classify_coordinate(&l1, k, &rho);
                let c2 = classify_coordinate(&l2, k, &rho);
                let predicted = table_prediction(&c1, &c2, k, &rho);
                let computed = sol_dim(&l1, &l2, k, &rho, variant);
                let cell = TableCell {
                    k,
                    class1: c1,
                    class2: c2,
                    lambda1: l1.to_string(),
                    lambda2: l2.to_string(),
                    predicted,
                    computed,
                };
                if predicted != computed {
                    return Err(CellMismatch { cell });
                }
                out.push(cell);
            }
        }
    }
    Ok(out)
}

/// The symmetry of the solution dimension: swapping the two parameters, and
/// replacing either by `λ3 = -rho - 2k - λ1 - λ2`.
pub fn symmetry_check(lambda1: &CRat, lambda2: &CRat, k: i64, rho: &Rat) -> bool {
    let v = SystemVariant::Displayed;
    let d0 = sol_dim(lambda1, lambda2, k, rho, v);
    let l3 = &(&CRat::from_rat(-rho.clone() - rati(2 * k)) - lambda1) - lambda2;
    d0 == sol_dim(lambda2, lambda1, k, rho, v)
        && d0 == sol_dim(lambda2, &l3, k, rho, v)
        && d0 == sol_dim(&l3, lambda1, k, rho, v)
}

// ---------------------------------------------------------------------------
// Multiplicity classifiers.
// ---------------------------------------------------------------------------

/// Multiplicity of the space of invariant trilinear forms: 1 off the
/// singular set, 2 on the one- and two-line strata, 3 at triple points.
pub fn dim_tri(lam: &SpectralParam) -> usize {
    match classify_stratum(lam).tag {
        StratumTag::NotInZ => 1,
        StratumTag::Z1I | StratumTag::Z1II | StratumTag::Z2I | StratumTag::Z2II => 2,
        StratumTag::Z3 => 3,
    }
}

/// Multiplicity of the diagonal-supported subspace: zero unless
/// `Σλ = -rho - 2k` for some `k ∈ ℕ`, in which case it is the solution
/// dimension of the system at `(λ1, λ2; k)`.
pub fn dim_tri_diag(lam: &SpectralParam) -> usize {
    let rho = lam.ambient.rho();
    let s = lam.sum();
    let Some(sr) = s.as_real() else { return 0 };
    let candidate = -(sr + &rho);
    if !is_integer(&candidate) {
        return 0;
    }
    let Some(twok) = as_i64(&candidate) else {
        return 0;
    };
    if twok < 0 || twok % 2 != 0 {
        return 0;
    }
    sol_dim(
        &lam.lambda[0],
        &lam.lambda[1],
        twok / 2,
        &rho,
        SystemVariant::Displayed,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;

    fn amb(n: i64) -> Ambient {
        Ambient::new(n).unwrap()
    }

    #[test]
    fn system_shapes() {
        let rho = rat(2, 1);
        // k=0: one unknown, no equations, dim 1
        let s = build_system(
            &CRat::from_i64(7),
            &CRat::from_i64(-3),
            0,
            &rho,
            SystemVariant::Displayed,
        );
        assert_eq!(s.unknowns.len(), 1);
        assert_eq!(s.rows.len(), 0);
        assert_eq!(nullspace_dim(&s).dim, 1);
        // k=1 generic: 3 unknowns, 2 equations, dim 1
        let s = build_system(
            &CRat::from_rat(rat(1, 3)),
            &CRat::from_rat(rat(1, 5)),
            1,
            &rho,
            SystemVariant::Displayed,
        );
        assert_eq!(s.unknowns.len(), 3);
        assert_eq!(s.rows.len(), 2);
        assert_eq!(nullspace_dim(&s).dim, 1);
    }

    #[test]
    fn first_family_entry_for_k2() {
        // Coefficient of c_{2,0} in the first equation at (r,t) = (1,0):
        // 4·2·(2+λ1).
        let rho = rat(2, 1);
        let l1 = CRat::from_i64(5);
        let s = build_system(&l1, &CRat::from_i64(1), 2, &rho, SystemVariant::Displayed);
        // unknowns ordered lexicographically: (0,0),(0,1),(0,2),(1,0),(1,1),(2,0)
        let col = s.unknowns.iter().position(|&u| u == (2, 0)).unwrap();
        // rows alternate family 1 / family 2 per (r,t); (r,t)=(1,0) is the
        // third (r,t) pair in iteration order (0,0),(0,1),(1,0)
        let row = &s.rows[4];
        let c = row.iter().find(|(i, _)| *i == col).unwrap();
        assert_eq!(c.1, CRat::from_i64(4 * 2 * (2 + 5)));
    }

    #[test]
    fn printed_dimension_examples() {
        let rho5 = rat(2, 1);
        // n=5, k=4, λ=(-1,-2) → 1
        assert_eq!(
            sol_dim(
                &CRat::from_i64(-1),
                &CRat::from_i64(-2),
                4,
                &rho5,
                SystemVariant::Displayed
            ),
            1
        );
        // n=5, k=3, λ=(-2,-3) → 3
        assert_eq!(
            sol_dim(
                &CRat::from_i64(-2),
                &CRat::from_i64(-3),
                3,
                &rho5,
                SystemVariant::Displayed
            ),
            3
        );
        // generic → 1
        assert_eq!(
            sol_dim(
                &CRat::from_rat(rat(7, 5)),
                &CRat::from_rat(rat(-9, 7)),
                5,
                &rho5,
                SystemVariant::Displayed
            ),
            1
        );
    }

    #[test]
    fn table_reproduces_for_small_orders() {
        for n in [4, 5] {
            let a = amb(n);
            sol_table(&a, 4, true, SystemVariant::Displayed)
                .unwrap_or_else(|e| panic!("n={n}: {e}"));
        }
    }

    #[test]
    fn proof_variant_fails_the_table() {
        // The alternative middle factor does not reproduce the printed
        // dimensions; this pins the default choice.
        let a5 = amb(5);
        assert!(sol_table(&a5, 4, false, SystemVariant::ProofVariant).is_err());
    }

    #[test]
    fn symmetry_example() {
        let rho = rat(3, 2);
        assert!(symmetry_check(
            &CRat::from_rat(rat(5, 3)),
            &CRat::from_rat(rat(-1, 2)),
            3,
            &rho
        ));
    }

    #[test]
    fn multiplicity_examples() {
        let a5 = amb(5);
        // off the singular set
        let lam = SpectralParam::new(
            a5.clone(),
            [CRat::from_i64(0), CRat::from_i64(0), CRat::from_i64(0)],
        );
        assert_eq!(dim_tri(&lam), 1);
        // triple point
        let lam = SpectralParam::new(
            a5.clone(),
            [CRat::from_i64(-3), CRat::from_i64(-2), CRat::from_i64(-3)],
        );
        assert_eq!(dim_tri(&lam), 3);
        // Σλ = -rho-2k fails → diagonal dimension 0
        let lam = SpectralParam::new(
            a5.clone(),
            [CRat::from_i64(1), CRat::from_i64(0), CRat::from_i64(0)],
        );
        assert_eq!(dim_tri_diag(&lam), 0);
        // triple point with even sphere dimension: diagonal multiplicity 3
        let lam = SpectralParam::new(
            a5,
            [CRat::from_i64(-3), CRat::from_i64(-3), CRat::from_i64(-4)],
        );
        assert_eq!(dim_tri(&lam), 3);
        assert_eq!(dim_tri_diag(&lam), 3);
    }
}
