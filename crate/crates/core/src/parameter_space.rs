//! The parameter space of the trilinear-form family: spectral/geometric
//! coordinates, the six families of affine lines whose union is the singular
//! set Z, the stratification of Z by line count, and pole-plane profiles.
//!
//! Slots are indexed 1..=3, with `j+1`, `j+2` reduced back into `{1,2,3}`.

use serde::Serialize;

use crate::numerics::rational::{as_i64, is_integer, rat, rati, CRat, Rat};

/// Ambient sphere data: dimension `n-1` of the sphere, `rho = (n-1)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    n: i64,
}

impl Ambient {
    /// Requires `n >= 4`.
    pub fn new(n: i64) -> Result<Self, String> {
        if n < 4 {
            return Err(format!("ambient dimension must satisfy n >= 4, got {n}"));
        }
        Ok(Ambient { n })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn rho(&self) -> Rat {
        rat(self.n - 1, 2)
    }

    /// True when `n-1` is even, i.e. `rho` is an integer.
    pub fn sphere_dim_even(&self) -> bool {
        (self.n - 1) % 2 == 0
    }
}

/// Reduce a 1-based slot index into `{1,2,3}`.
pub fn slot(j: i64) -> usize {
    ((j - 1).rem_euclid(3) + 1) as usize
}

/// Spectral coordinates `(λ1, λ2, λ3)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralParam {
    pub lambda: [CRat; 3],
    pub ambient: Ambient,
}

/// Geometric coordinates `(α1, α2, α3)`, where
/// `α_j = λ_{j+1} + λ_{j+2} - λ_j - rho`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricParam {
    pub alpha: [CRat; 3],
    pub ambient: Ambient,
}

impl SpectralParam {
    pub fn new(ambient: Ambient, lambda: [CRat; 3]) -> Self {
        SpectralParam { lambda, ambient }
    }

    pub fn get(&self, j: usize) -> &CRat {
        &self.lambda[slot(j as i64) - 1]
    }

    pub fn sum(&self) -> CRat {
        &(&self.lambda[0] + &self.lambda[1]) + &self.lambda[2]
    }

    pub fn is_real_rational(&self) -> bool {
        self.lambda.iter().all(|z| z.is_real())
    }
}

impl GeometricParam {
    pub fn new(ambient: Ambient, alpha: [CRat; 3]) -> Self {
        GeometricParam { alpha, ambient }
    }

    pub fn get(&self, j: usize) -> &CRat {
        &self.alpha[slot(j as i64) - 1]
    }

    pub fn sum(&self) -> CRat {
        &(&self.alpha[0] + &self.alpha[1]) + &self.alpha[2]
    }
}

/// `α_j = λ_{j+1} + λ_{j+2} - λ_j - rho`.
pub fn to_geometric(lam: &SpectralParam) -> GeometricParam {
    let rho = CRat::from_rat(lam.ambient.rho());
    let a = |j: usize| {
        let s = &(lam.get(j + 1) + lam.get(j + 2)) - lam.get(j);
        &s - &rho
    };
    GeometricParam {
        alpha: [a(1), a(2), a(3)],
        ambient: lam.ambient.clone(),
    }
}

/// `λ_j = (α_{j+1} + α_{j+2})/2 + rho`.
pub fn to_spectral(alpha: &GeometricParam) -> SpectralParam {
    let rho = CRat::from_rat(alpha.ambient.rho());
    let half = CRat::from_rat(rat(1, 2));
    let l = |j: usize| &(&(alpha.get(j + 1) + alpha.get(j + 2)) * &half) + &rho;
    SpectralParam {
        lambda: [l(1), l(2), l(3)],
        ambient: alpha.ambient.clone(),
    }
}

/// Sign tag of a line family: type I is `λ_{j+1} - λ_{j+2} = m`, type II is
/// `λ_{j+1} + λ_{j+2} = m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum LineType {
    /// ε = −: the line lies in two parallel type-I pole planes.
    I,
    /// ε = +: the line lies in a type-II pole plane.
    II,
}

/// One affine line of the singular set: `λ_j = -rho - l` together with
/// `λ_{j+1} + ε λ_{j+2} = m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Line {
    pub eps: LineType,
    pub j: usize,
    pub l: i64,
    pub m: i64,
}

/// Admissibility: `m ≡ l (mod 2)` and `|m| <= l`.
pub fn admissible(eps: LineType, j: usize, l: i64, m: i64) -> bool {
    let _ = (eps, j);
    l >= 0 && (m - l) % 2 == 0 && m.abs() <= l
}

impl Line {
    pub fn new(eps: LineType, j: usize, l: i64, m: i64) -> Option<Line> {
        if (1..=3).contains(&j) && admissible(eps, j, l, m) {
            Some(Line { eps, j, l, m })
        } else {
            None
        }
    }

    /// For a type-I line, the indices `(k_{j+1}, k_{j+2})` of its two
    /// type-I pole planes `α_{j+1} = -(n-1) - 2k_{j+1}`, etc.
    pub fn type_i_plane_indices(&self) -> Option<(i64, i64)> {
        match self.eps {
            LineType::I => Some(((self.l + self.m) / 2, (self.l - self.m) / 2)),
            LineType::II => None,
        }
    }

    /// For a type-II line, `(k, p)` with `Σα = -2(n-1) - 2k` and `α_j = 2p`.
    pub fn type_ii_plane_indices(&self) -> Option<(i64, i64)> {
        match self.eps {
            LineType::I => None,
            LineType::II => Some(((self.l - self.m) / 2, (self.l + self.m) / 2)),
        }
    }

    /// The point of the line with free coordinate `t`: for type I the free
    /// coordinate is `λ_{j+1} = t` (then `λ_{j+2} = t - m`), for type II
    /// `λ_{j+1} = t`, `λ_{j+2} = m - t`.
    pub fn point_at(&self, ambient: &Ambient, t: &CRat) -> SpectralParam {
        let mut lambda = [CRat::zero(), CRat::zero(), CRat::zero()];
        let pinned = CRat::from_rat(-ambient.rho() - rati(self.l));
        lambda[self.j - 1] = pinned;
        lambda[slot(self.j as i64 + 1) - 1] = t.clone();
        let m = CRat::from_i64(self.m);
        lambda[slot(self.j as i64 + 2) - 1] = match self.eps {
            LineType::I => t - &m,
            LineType::II => &m - t,
        };
        SpectralParam::new(ambient.clone(), lambda)
    }

    /// Direction vector of the line in spectral coordinates.
    pub fn direction(&self) -> [CRat; 3] {
        let mut d = [CRat::zero(), CRat::zero(), CRat::zero()];
        d[slot(self.j as i64 + 1) - 1] = CRat::one();
        d[slot(self.j as i64 + 2) - 1] = match self.eps {
            LineType::I => CRat::one(),
            LineType::II => -CRat::one(),
        };
        d
    }
}

/// Exact membership test.
pub fn line_contains(line: &Line, lam: &SpectralParam) -> bool {
    let rho = lam.ambient.rho();
    let pinned = CRat::from_rat(-rho - rati(line.l));
    if lam.get(line.j) != &pinned {
        return false;
    }
    let a = lam.get(line.j + 1);
    let b = lam.get(line.j + 2);
    let combo = match line.eps {
        LineType::I => a - b,
        LineType::II => a + b,
    };
    combo == CRat::from_i64(line.m)
}

/// All admissible lines through a point, in canonical order.
///
/// Membership pins `l` from `λ_j` and then `m` from the other coordinates,
/// so only the six `(ε, j)` families need scanning; no search bound enters.
pub fn lines_through(lam: &SpectralParam) -> Vec<Line> {
    let rho = lam.ambient.rho();
    let mut out = Vec::new();
    for eps in [LineType::I, LineType::II] {
        for j in 1..=3usize {
            // λ_j = -rho - l with l a nonnegative integer
            let lj = lam.get(j);
            let Some(lr) = lj.as_real() else { continue };
            let l_val = -(lr + &rho);
            if !is_integer(&l_val) || l_val < Rat::from_integer(0.into()) {
                continue;
            }
            let Some(l) = as_i64(&l_val) else { continue };
            let a = lam.get(j + 1);
            let b = lam.get(j + 2);
            let combo = match eps {
                LineType::I => a - b,
                LineType::II => a + b,
            };
            let Some(m) = combo.as_i64() else { continue };
            if let Some(line) = Line::new(eps, j, l, m) {
                out.push(line);
            }
        }
    }
    out.sort();
    out
}

/// Intersection point of two distinct admissible lines, by the closed-form
/// case analysis: same slot and opposite type share the pinned coordinate;
/// equal types meet across slots under one linear condition each. Lines of
/// equal type and equal slot are parallel.
pub fn intersect_lines(a: &Line, b: &Line, ambient: &Ambient) -> Option<SpectralParam> {
    assert!(a != b, "intersect_lines needs distinct lines");
    let rho = ambient.rho();
    let lam_of = |v: [Rat; 3]| {
        SpectralParam::new(
            ambient.clone(),
            [
                CRat::from_rat(v[0].clone()),
                CRat::from_rat(v[1].clone()),
                CRat::from_rat(v[2].clone()),
            ],
        )
    };
    if a.j == b.j {
        if a.eps == b.eps {
            // Two distinct parallel planes: empty.
            return None;
        }
        // Type II and type I on the same slot: meet iff l agrees.
        let (p, q) = if a.eps == LineType::II { (a, b) } else { (b, a) };
        if p.l != q.l {
            return None;
        }
        // (λ_j, λ_{j+1}, λ_{j+2}) = (-rho - l, (m_II + m_I)/2, (m_II - m_I)/2)
        let mut v = [Rat::from_integer(0.into()), rati(0), rati(0)];
        v[a.j - 1] = -rho.clone() - rati(p.l);
        v[slot(a.j as i64 + 1) - 1] = rat(p.m + q.m, 2);
        v[slot(a.j as i64 + 2) - 1] = rat(p.m - q.m, 2);
        return Some(lam_of(v));
    }
    if a.eps != b.eps {
        // A type-I and a type-II line on different slots never meet.
        return None;
    }
    // Order the pair so that d is the cyclic successor of c.
    let (c, d) = if slot(a.j as i64 + 1) == b.j {
        (a, b)
    } else {
        (b, a)
    };
    debug_assert_eq!(slot(c.j as i64 + 1), d.j);
    let mut v = [rati(0), rati(0), rati(0)];
    match c.eps {
        LineType::II => {
            // Meet iff l_c - m_c = l_d - m_d; third coordinate rho + m_c + l_d.
            if c.l - c.m != d.l - d.m {
                return None;
            }
            v[c.j - 1] = -rho.clone() - rati(c.l);
            v[d.j - 1] = -rho.clone() - rati(d.l);
            v[slot(c.j as i64 + 2) - 1] = rho.clone() + rati(c.m + d.l);
        }
        LineType::I => {
            // Meet iff l_c - l_d = m_c + m_d; third coordinate -rho - (l_c - m_d).
            if c.l - d.l != c.m + d.m {
                return None;
            }
            v[c.j - 1] = -rho.clone() - rati(c.l);
            v[d.j - 1] = -rho.clone() - rati(d.l);
            v[slot(c.j as i64 + 2) - 1] = -rho.clone() - rati(c.l - d.m);
        }
    }
    Some(lam_of(v))
}

/// Stratum tag of a parameter point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StratumTag {
    NotInZ,
    Z1I,
    Z1II,
    Z2I,
    Z2II,
    Z3,
}

/// Integer witness data of the stratum, in the normal form the closed-form
/// descriptions use (after the recorded cyclic rotation).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Witness {
    None,
    /// Type-I line through the point: distinguished slot `j` and the indices
    /// of its two pole planes.
    Z1I { j: usize, k_next: i64, k_prev: i64 },
    /// Type-II line: distinguished slot `j`, `Σα = -2(n-1)-2k`, `α_j = 2p`.
    Z1II { j: usize, k: i64, p: i64 },
    /// `α = (2k1, -(n-1)-2k2, -(n-1)-2k3)` after rotating slot `rot` to 1.
    Z2I { rot: usize, k1: i64, k2: i64, k3: i64, l1: i64, m2: i64, m3: i64 },
    /// `λ = (-rho-l1, -rho-l2, rho+m3)` after rotating slot `rot` to 1.
    Z2II { rot: usize, l1: i64, l2: i64, m3: i64, k1: i64, k2: i64, k3: i64 },
    /// `λ_j = -rho - l_j` for all three slots.
    Z3 { l: [i64; 3], k: [i64; 3] },
}

#[derive(Clone, Debug, Serialize)]
pub struct Stratum {
    pub tag: StratumTag,
    pub lines: Vec<Line>,
    pub witness: Witness,
}

/// Rotate slot index so that `rot` becomes 1: returns the parameter values
/// `(x_rot, x_{rot+1}, x_{rot+2})`.
pub fn rotate3<T: Clone>(x: &[T; 3], rot: usize) -> [T; 3] {
    [
        x[slot(rot as i64) - 1].clone(),
        x[slot(rot as i64 + 1) - 1].clone(),
        x[slot(rot as i64 + 2) - 1].clone(),
    ]
}

/// Classify a point by the set of lines through it.
pub fn classify_stratum(lam: &SpectralParam) -> Stratum {
    let lines = lines_through(lam);
    let rho = lam.ambient.rho();
    match lines.len() {
        0 => Stratum {
            tag: StratumTag::NotInZ,
            lines,
            witness: Witness::None,
        },
        1 => {
            let line = &lines[0];
            match line.eps {
                LineType::I => {
                    let (kn, kp) = line.type_i_plane_indices().expect("type I line");
                    Stratum {
                        tag: StratumTag::Z1I,
                        witness: Witness::Z1I {
                            j: line.j,
                            k_next: kn,
                            k_prev: kp,
                        },
                        lines,
                    }
                }
                LineType::II => {
                    let (k, p) = line.type_ii_plane_indices().expect("type II line");
                    Stratum {
                        tag: StratumTag::Z1II,
                        witness: Witness::Z1II { j: line.j, k, p },
                        lines,
                    }
                }
            }
        }
        2 => {
            let types = (lines[0].eps, lines[1].eps);
            match types {
                (LineType::I, LineType::II) | (LineType::II, LineType::I) => {
                    // Both lines share the slot of the type-I line; rotate it
                    // to position 1 in the geometric normal form.
                    let line_i = lines.iter().find(|l| l.eps == LineType::I).unwrap();
                    let rot = line_i.j;
                    let alpha = to_geometric(lam);
                    let rotated = rotate3(&alpha.alpha, rot);
                    let k1 = rotated[0].as_i64().expect("α_j = 2k1 integral") / 2;
                    let kk = |z: &CRat| -> i64 {
                        let v = z.as_i64().expect("type-I plane coordinate integral");
                        (-(lam.ambient.n() - 1) - v) / 2
                    };
                    let (k2, k3) = (kk(&rotated[1]), kk(&rotated[2]));
                    Stratum {
                        tag: StratumTag::Z2I,
                        witness: Witness::Z2I {
                            rot,
                            k1,
                            k2,
                            k3,
                            l1: k2 + k3,
                            m2: k1 - k3,
                            m3: k1 - k2,
                        },
                        lines,
                    }
                }
                (LineType::II, LineType::II) => {
                    // The slot not pinned by either line carries rho + m3.
                    let (j1, j2) = (lines[0].j, lines[1].j);
                    let j3 = (1..=3).find(|j| *j != j1 && *j != j2).unwrap();
                    // rotate so the two pinned slots are 1 and 2
                    let rot = slot(j3 as i64 + 1);
                    let rl = rotate3(&lam.lambda, rot);
                    let li = |z: &CRat| -> i64 {
                        let v = z.as_real().expect("pinned coordinate real");
                        as_i64(&(-(v + &rho.clone()))).expect("pinned coordinate -rho-l")
                    };
                    let (l1, l2) = (li(&rl[0]), li(&rl[1]));
                    let m3 = as_i64(&(rl[2].as_real().unwrap() - &rho)).expect("rho+m3 form");
                    let k = (l1 + l2 - m3) / 2;
                    Stratum {
                        tag: StratumTag::Z2II,
                        witness: Witness::Z2II {
                            rot,
                            l1,
                            l2,
                            m3,
                            k1: l1 - k,
                            k2: l2 - k,
                            k3: (l1 + l2 + m3) / 2,
                        },
                        lines,
                    }
                }
                _ => unreachable!("two intersecting type-I lines force a third"),
            }
        }
        3 => {
            let rho = lam.ambient.rho();
            let mut l = [0i64; 3];
            let mut k = [0i64; 3];
            for j in 1..=3usize {
                let v = lam.get(j).as_real().expect("Z3 coordinates real");
                l[j - 1] = as_i64(&(-(v + &rho.clone()))).expect("Z3 coordinate -rho-l");
            }
            for j in 0..3 {
                k[j] = (l[(j + 1) % 3] + l[(j + 2) % 3] - l[j]) / 2;
            }
            Stratum {
                tag: StratumTag::Z3,
                witness: Witness::Z3 { l, k },
                lines,
            }
        }
        _ => unreachable!("no point lies on four distinct lines"),
    }
}

/// Pole planes through a geometric parameter point.
#[derive(Clone, Debug, Serialize)]
pub struct PoleProfile {
    /// Slots `j` with `α_j = -(n-1) - 2 k_j`, `k_j ∈ ℕ`.
    pub type_i_planes: Vec<(usize, i64)>,
    /// `k ∈ ℕ` with `Σα = -2(n-1) - 2k`, when the point lies in that plane.
    pub type_ii_plane: Option<i64>,
    pub genericity: Genericity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Genericity {
    NotAPole,
    GenericTypeI,
    GenericTypeII,
    TypeIPlusII,
    MultipleTypeI,
    MultipleTypeIPlusII,
}

pub fn pole_profile(alpha: &GeometricParam) -> PoleProfile {
    let n1 = alpha.ambient.n() - 1;
    let mut type_i = Vec::new();
    for j in 1..=3usize {
        if let Some(v) = alpha.get(j).as_i64() {
            let t = -n1 - v;
            if t >= 0 && t % 2 == 0 {
                type_i.push((j, t / 2));
            }
        }
    }
    let type_ii = alpha.sum().as_i64().and_then(|s| {
        let t = -2 * n1 - s;
        if t >= 0 && t % 2 == 0 {
            Some(t / 2)
        } else {
            None
        }
    });
    let genericity = match (type_i.len(), type_ii.is_some()) {
        (0, false) => Genericity::NotAPole,
        (1, false) => Genericity::GenericTypeI,
        (0, true) => Genericity::GenericTypeII,
        (1, true) => Genericity::TypeIPlusII,
        (_, false) => Genericity::MultipleTypeI,
        (_, true) => Genericity::MultipleTypeIPlusII,
    };
    PoleProfile {
        type_i_planes: type_i,
        type_ii_plane: type_ii,
        genericity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn lam_r(ambient: &Ambient, v: [Rat; 3]) -> SpectralParam {
        SpectralParam::new(
            ambient.clone(),
            [
                CRat::from_rat(v[0].clone()),
                CRat::from_rat(v[1].clone()),
                CRat::from_rat(v[2].clone()),
            ],
        )
    }

    #[test]
    fn coordinate_conversion_examples() {
        // n=4, λ=(1,1,1) → α=(-1/2,-1/2,-1/2)
        let a4 = amb(4);
        let lam = lam_i(&a4, [1, 1, 1]);
        let alpha = to_geometric(&lam);
        for j in 1..=3 {
            assert_eq!(alpha.get(j), &CRat::from_rat(rat(-1, 2)));
        }
        assert_eq!(to_spectral(&alpha), lam);
        // n=4, λ=(-7/2, 5, -5) → α1 = 2
        let lam = lam_r(&a4, [rat(-7, 2), rati(5), rati(-5)]);
        let alpha = to_geometric(&lam);
        assert_eq!(alpha.get(1), &CRat::from_i64(2));
    }

    #[test]
    fn admissibility_examples() {
        assert!(admissible(LineType::I, 1, 2, 0));
        assert!(!admissible(LineType::I, 1, 2, 1));
        assert!(!admissible(LineType::II, 3, 1, -3));
    }

    #[test]
    fn membership_examples() {
        let a4 = amb(4);
        // D^{-,1}_{0,0}, n=4, λ=(-3/2, 1/4, 1/4)
        let line = Line::new(LineType::I, 1, 0, 0).unwrap();
        let lam = lam_r(&a4, [rat(-3, 2), rat(1, 4), rat(1, 4)]);
        assert!(line_contains(&line, &lam));
        // D^{+,1}_{2,0} contains (-rho-2, 1, -1)
        let line = Line::new(LineType::II, 1, 2, 0).unwrap();
        let lam = lam_r(&a4, [rat(-3, 2) - rati(2), rati(1), rati(-1)]);
        assert!(line_contains(&line, &lam));
        // and not the origin
        let line = Line::new(LineType::I, 1, 0, 0).unwrap();
        assert!(!line_contains(&line, &lam_i(&a4, [0, 0, 0])));
    }

    #[test]
    fn lines_through_z3_triple() {
        // n=5, λ=(-3,-2,-3): exactly the three type-I lines of a Z3 point
        let a5 = amb(5);
        let lam = lam_i(&a5, [-3, -2, -3]);
        let lines = lines_through(&lam);
        assert_eq!(lines.len(), 3);
        assert!(lines.iter().all(|l| l.eps == LineType::I));
        // generic point: empty
        let lam = lam_r(&a5, [rat(1, 3), rat(1, 7), rat(1, 11)]);
        assert!(lines_through(&lam).is_empty());
    }

    #[test]
    fn lines_through_reports_both_lines_at_a_two_line_point() {
        // (-rho-2, 1, -1) lies on the slot-1 type-II line (l,m)=(2,0) and
        // the slot-1 type-I line (l,m)=(2,2)
        let a4 = amb(4);
        let lam = lam_r(&a4, [rat(-3, 2) - rati(2), rati(1), rati(-1)]);
        let lines = lines_through(&lam);
        assert!(lines.len() >= 2);
        assert!(lines.contains(&Line::new(LineType::II, 1, 2, 0).unwrap()));
        assert!(lines.contains(&Line::new(LineType::I, 1, 2, 2).unwrap()));
    }

    #[test]
    fn intersection_examples() {
        let a4 = amb(4);
        // D^{+,1}_{2,0} ∩ D^{-,1}_{2,2} = (-rho-2, 1, -1)
        let p = Line::new(LineType::II, 1, 2, 0).unwrap();
        let q = Line::new(LineType::I, 1, 2, 2).unwrap();
        let pt = intersect_lines(&p, &q, &a4).unwrap();
        assert_eq!(pt.get(1), &CRat::from_rat(rat(-7, 2)));
        assert_eq!(pt.get(2), &CRat::from_i64(1));
        assert_eq!(pt.get(3), &CRat::from_i64(-1));
        assert!(line_contains(&p, &pt) && line_contains(&q, &pt));
        // same family, distinct: parallel
        let r = Line::new(LineType::I, 1, 1, -1).unwrap();
        let s = Line::new(LineType::I, 1, 3, -1).unwrap();
        assert!(intersect_lines(&r, &s, &a4).is_none());
        // type-I slots 1,2 with l1-l2 != m1+m2: empty
        let r = Line::new(LineType::I, 1, 1, -1).unwrap();
        let s = Line::new(LineType::I, 2, 1, -1).unwrap();
        assert!(intersect_lines(&r, &s, &a4).is_none());
    }

    #[test]
    fn classification_examples() {
        let a5 = amb(5);
        // α=(-4,-6,-4) → Z3 with (l1,l2,l3)=(1,0,1)
        let alpha = GeometricParam::new(
            a5.clone(),
            [CRat::from_i64(-4), CRat::from_i64(-6), CRat::from_i64(-4)],
        );
        let s = classify_stratum(&to_spectral(&alpha));
        assert_eq!(s.tag, StratumTag::Z3);
        assert_eq!(s.witness, Witness::Z3 { l: [1, 0, 1], k: [0, 1, 0] });
        // α=(1,-4,-4) → Z1I
        let alpha = GeometricParam::new(
            a5.clone(),
            [CRat::from_i64(1), CRat::from_i64(-4), CRat::from_i64(-4)],
        );
        let s = classify_stratum(&to_spectral(&alpha));
        assert_eq!(s.tag, StratumTag::Z1I);
        // α=(2,-4,-6) → Z2I with (k1,k2,k3)=(1,0,1)
        let alpha = GeometricParam::new(
            a5.clone(),
            [CRat::from_i64(2), CRat::from_i64(-4), CRat::from_i64(-6)],
        );
        let s = classify_stratum(&to_spectral(&alpha));
        assert_eq!(s.tag, StratumTag::Z2I);
        match s.witness {
            Witness::Z2I { rot, k1, k2, k3, .. } => {
                assert_eq!((rot, k1, k2, k3), (1, 1, 0, 1));
            }
            w => panic!("wrong witness {w:?}"),
        }
        // origin: not in Z
        let lam = lam_i(&a5, [0, 0, 0]);
        assert_eq!(classify_stratum(&lam).tag, StratumTag::NotInZ);
    }

    #[test]
    fn pole_profile_examples() {
        let a5 = amb(5);
        // α=(2,-4,-6): planes I2(k=0), I3(k=1), II(k=0)
        let alpha = GeometricParam::new(
            a5.clone(),
            [CRat::from_i64(2), CRat::from_i64(-4), CRat::from_i64(-6)],
        );
        let p = pole_profile(&alpha);
        assert_eq!(p.type_i_planes, vec![(2, 0), (3, 1)]);
        assert_eq!(p.type_ii_plane, Some(0));
        assert_eq!(p.genericity, Genericity::MultipleTypeIPlusII);
        // n=5, α=(-4,-4,-4): three type-I and the type-II plane with k = rho+0
        let alpha = GeometricParam::new(
            a5.clone(),
            [CRat::from_i64(-4), CRat::from_i64(-4), CRat::from_i64(-4)],
        );
        let p = pole_profile(&alpha);
        assert_eq!(p.type_i_planes.len(), 3);
        assert_eq!(p.type_ii_plane, Some(2));
        // n=4, α=(-3,-3,-3): exactly three planes
        let a4 = amb(4);
        let alpha = GeometricParam::new(
            a4,
            [CRat::from_i64(-3), CRat::from_i64(-3), CRat::from_i64(-3)],
        );
        let p = pole_profile(&alpha);
        assert_eq!(p.type_i_planes.len(), 3);
        assert_eq!(p.type_ii_plane, None);
    }

    #[test]
    fn stratum_matches_line_count_and_rotation_invariance() {
        let a5 = amb(5);
        // Z2I example point, check the two lines are the expected pair
        let alpha = GeometricParam::new(
            a5.clone(),
            [CRat::from_i64(2), CRat::from_i64(-4), CRat::from_i64(-6)],
        );
        let lam = to_spectral(&alpha);
        let s = classify_stratum(&lam);
        assert_eq!(s.lines, lines_through(&lam));
        assert_eq!(s.lines.len(), 2);
        let types: Vec<_> = s.lines.iter().map(|l| l.eps).collect();
        assert!(types.contains(&LineType::I) && types.contains(&LineType::II));
    }
}
