//! Rank-two Weyl arrangements, their Catalan/Shi deformations, and the
//! edges-and-diagonals pentagon over ℚ(√5).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arrangement::{AffineArrangement, Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootType {
    A2,
    B2,
    G2,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootType::A2 => "A2",
            RootType::B2 => "B2",
            RootType::G2 => "G2",
        })
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<RootType> {
        match s {
            "A2" | "a2" => Ok(RootType::A2),
            "B2" | "b2" => Ok(RootType::B2),
            "G2" | "g2" => Ok(RootType::G2),
            _ => Err(Error::Invalid(alloc::format!("unknown root system type {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootLength {
    Long,
    Short,
}

/// Positive roots as linear forms on `𝕂²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    pub kind: RootType,
    pub positive_roots: Vec<([i64; 2], RootLength)>,
}

impl RootSystem {
    /// Gram matrix of the simple roots in the coordinates used for the forms.
    pub fn gram(&self) -> [[i64; 2]; 2] {
        match self.kind {
            RootType::A2 => [[2, -1], [-1, 2]],
            RootType::B2 => [[1, 0], [0, 1]],
            RootType::G2 => [[2, -3], [-3, 6]],
        }
    }

    /// Squared length of a root under [`gram`](Self::gram).
    pub fn norm2(&self, r: [i64; 2]) -> i64 {
        let g = self.gram();
        r[0] * r[0] * g[0][0] + 2 * r[0] * r[1] * g[0][1] + r[1] * r[1] * g[1][1]
    }
}

/// A2 and G2 use simple-root coordinates; B2 uses the orthogonal model.
pub fn weyl(kind: RootType) -> RootSystem {
    use RootLength::{Long, Short};
    let positive_roots = match kind {
        RootType::A2 => vec![([1, 0], Long), ([0, 1], Long), ([1, 1], Long)],
        RootType::B2 => vec![([1, -1], Long), ([1, 1], Long), ([1, 0], Short), ([0, 1], Short)],
        RootType::G2 => vec![
            ([1, 0], Short),
            ([1, 1], Short),
            ([2, 1], Short),
            ([0, 1], Long),
            ([3, 1], Long),
            ([3, 2], Long),
        ],
    };
    RootSystem { kind, positive_roots }
}

/// `{α = jz : α ∈ Φ⁺_l, j ∈ long} ∪ {α = jz : α ∈ Φ⁺_s, j ∈ short} ∪ {z = 0}`
/// with inclusive ranges of `j`.
pub fn deformation(rs: &RootSystem, long: (i64, i64), short: (i64, i64)) -> Arrangement {
    let mut forms: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(), Scalar::zero(), Scalar::one()]];
    for (r, len) in &rs.positive_roots {
        let (lo, hi) = match len {
            RootLength::Long => long,
            RootLength::Short => short,
        };
        for j in lo..=hi {
            forms.push(vec![Scalar::from_int(r[0]), Scalar::from_int(r[1]), Scalar::from_int(-j)]);
        }
    }
    Arrangement::from_forms_dedup(3, Field::Rational, forms).expect("distinct forms")
}

fn cat_range(k: u32) -> (i64, i64) {
    (-(k as i64), k as i64)
}

fn shi_range(k: u32) -> Result<(i64, i64)> {
    if k == 0 {
        return Err(Error::Invalid("Shi parameters must be at least 1".into()));
    }
    Ok((1 - k as i64, k as i64))
}

/// `Cat^{k₁,k₂}`; `catalan(rs, k, k)` is `Cat^k`.
pub fn catalan(rs: &RootSystem, k1: u32, k2: u32) -> Arrangement {
    deformation(rs, cat_range(k1), cat_range(k2))
}

/// `Shi^{k₁,k₂}`; both parameters must be positive.
pub fn shi(rs: &RootSystem, k1: u32, k2: u32) -> Result<Arrangement> {
    Ok(deformation(rs, shi_range(k1)?, shi_range(k2)?))
}

/// Catalan on long roots, Shi on short roots.
pub fn cat_shi(rs: &RootSystem, k1: u32, k2: u32) -> Result<Arrangement> {
    Ok(deformation(rs, cat_range(k1), shi_range(k2)?))
}

/// Shi on long roots, Catalan on short roots.
pub fn shi_cat(rs: &RootSystem, k1: u32, k2: u32) -> Result<Arrangement> {
    Ok(deformation(rs, shi_range(k1)?, cat_range(k2)))
}

/// Vertices `(cos(2πk/5), sin(2πk/5)/sin(2π/5))` of an affine-regular
/// pentagon, `k = 0..5`.
pub fn pentagon_vertices() -> [[Scalar; 2]; 5] {
    let q = |a: i64, b: i64, c: i64, d: i64| Scalar::quadratic(Rat::new(a, b), Rat::new(c, d), 5);
    let c1 = q(-1, 4, 1, 4);
    let c2 = q(-1, 4, -1, 4);
    let s2 = q(-1, 2, 1, 2);
    [
        [Scalar::one(), Scalar::zero()],
        [c1.clone(), Scalar::one()],
        [c2.clone(), s2.clone()],
        [c2, -s2],
        [c1, Scalar::from_int(-1)],
    ]
}

/// Affine line through two points as `(c, c₀)` with `c·x + c₀ = 0`.
fn line_through(p: &[Scalar; 2], q: &[Scalar; 2]) -> (Vec<Scalar>, Scalar) {
    let a = &q[1] - &p[1];
    let b = &p[0] - &q[0];
    let c0 = -(&(&a * &p[0]) + &(&b * &p[1]));
    (vec![a, b], c0)
}

/// Vertex index pairs of the six lines of the sub-arrangement, 0-based.
pub const PENTAGON_SUB_LINES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 4)];

/// `(A, B)`: `A` is the cone of all ten edges and diagonals, `B` the cone of
/// the lines through `p₁` together with `p₂p₃` and `p₃p₅`.
pub fn pentagon() -> (Arrangement, Arrangement) {
    let v = pentagon_vertices();
    let field = Field::Quadratic(5);
    let mut all = Vec::new();
    for i in 0..5 {
        for j in i + 1..5 {
            all.push(line_through(&v[i], &v[j]));
        }
    }
    let sub = PENTAGON_SUB_LINES.iter().map(|&(i, j)| line_through(&v[i], &v[j])).collect();
    let a = AffineArrangement::new(2, field, all).expect("ten distinct lines").cone();
    let b = AffineArrangement::new(2, field, sub).expect("six distinct lines").cone();
    (a, b)
}

/// Hyperplanes of `sup` not in `sub`, in canonical order.
pub fn difference(sup: &Arrangement, sub: &Arrangement) -> Vec<Hyperplane> {
    sup.hyperplanes().iter().filter(|h| !sub.contains(h)).cloned().collect()
}
