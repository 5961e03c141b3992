//! Intersection lattice, Möbius function and characteristic polynomial.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arrangement::Arrangement;
use crate::matrix::Echelon;
use crate::scalar::Scalar;

/// A flat `X ∈ L(A)`, identified by the set of hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    /// Row-reduced basis of the defining equations of `X`.
    pub equations: Vec<Vec<Scalar>>,
    /// Indices (into the arrangement) of every `H ⊇ X`.
    pub containing: Vec<usize>,
    pub codim: usize,
    pub moebius: i64,
}

impl Flat {
    pub fn multiplicity(&self) -> usize {
        self.containing.len()
    }
}

fn closure(a: &Arrangement, eq: &Echelon) -> Vec<usize> {
    a.hyperplanes()
        .iter()
        .enumerate()
        .filter(|(_, h)| eq.contains(h.form()))
        .map(|(i, _)| i)
        .collect()
}

/// All flats of `A`, ordered by codimension and then by their hyperplane sets,
/// with Möbius values `μ(V) = 1`, `μ(X) = −Σ_{Y ⊋ X} μ(Y)`.
pub fn intersection_lattice(a: &Arrangement) -> Vec<Flat> {
    let n = a.rank();
    let mut levels: Vec<Vec<(Vec<usize>, Echelon)>> = vec![vec![(Vec::new(), Echelon::new(n))]];
    loop {
        let mut next: BTreeMap<Vec<usize>, Echelon> = BTreeMap::new();
        for (key, eq) in levels.last().expect("nonempty") {
            for (i, h) in a.hyperplanes().iter().enumerate() {
                if key.binary_search(&i).is_ok() {
                    continue;
                }
                let mut e = eq.clone();
                e.insert(h.form().to_vec());
                let c = closure(a, &e);
                next.entry(c).or_insert(e);
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next.into_iter().collect());
    }

    let mut flats: Vec<Flat> = Vec::new();
    for (codim, level) in levels.into_iter().enumerate() {
        for (containing, eq) in level {
            let moebius = if codim == 0 {
                1
            } else {
                let set: BTreeSet<usize> = containing.iter().copied().collect();
                -flats
                    .iter()
                    .filter(|f| f.codim < codim && f.containing.iter().all(|i| set.contains(i)))
                    .map(|f| f.moebius)
                    .sum::<i64>()
            };
            let equations = eq.canonical_basis();
            flats.push(Flat { equations, containing, codim, moebius });
        }
    }
    flats
}

/// χ(A, t) with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    pub coeffs: Vec<i64>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, t: i64) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * t as i128 + c as i128)
    }

    /// `∏ (t − rᵢ)` for the given roots.
    pub fn from_roots(roots: &[u32]) -> CharPoly {
        let mut c = vec![1i64];
        for &r in roots {
            let mut next = vec![0i64; c.len() + 1];
            for (i, &v) in c.iter().enumerate() {
                next[i + 1] += v;
                next[i] -= v * r as i64;
            }
            c = next;
        }
        CharPoly { coeffs: c }
    }

    /// Sorted roots when χ splits into linear factors with non-negative
    /// integer roots.
    pub fn nonneg_integer_roots(&self) -> Option<Vec<u32>> {
        let mut c: Vec<i128> = self.coeffs.iter().map(|&v| v as i128).collect();
        while c.len() > 1 && c.last() == Some(&0) {
            c.pop();
        }
        if c.last() != Some(&1) {
            return None;
        }
        let bound = c.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0) as u64;
        let mut roots = Vec::new();
        let mut r: u64 = 0;
        while c.len() > 1 && r <= bound {
            let val = c.iter().rev().fold(0i128, |acc, &v| acc * r as i128 + v);
            if val == 0 {
                // synthetic division by (t − r)
                let deg = c.len() - 1;
                let mut q = vec![0i128; deg];
                let mut carry = 0i128;
                for i in (0..deg).rev() {
                    carry = c[i + 1] + carry * r as i128;
                    q[i] = carry;
                }
                c = q;
                roots.push(r as u32);
            } else {
                r += 1;
            }
        }
        (c.len() == 1).then_some(roots)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if i == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// χ(A,t) = Σ_{X ∈ L(A)} μ(X) t^{dim X}.
pub fn char_poly(a: &Arrangement) -> CharPoly {
    char_poly_from_lattice(a.rank(), &intersection_lattice(a))
}

pub fn char_poly_from_lattice(rank: usize, flats: &[Flat]) -> CharPoly {
    let mut coeffs = vec![0i64; rank + 1];
    for f in flats {
        coeffs[rank - f.codim] += f.moebius;
    }
    CharPoly { coeffs }
}

/// Number of points of `𝔽_p^ℓ` off every hyperplane, for arrangements over ℚ
/// whose denominators are prime to `p`. For primes of good reduction this is
/// `χ(A, p)`; it is a heuristic cross-check, never a certificate.
pub fn complement_point_count(a: &Arrangement, p: u64) -> Option<u64> {
    let n = a.rank();
    let forms: Vec<Vec<u64>> = a
        .hyperplanes()
        .iter()
        .map(|h| h.form().iter().map(|c| c.mod_prime(p)).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let inv = |x: u64| crate::rational::powmod(x, p - 2, p);
    let mut count = 0u64;
    let mut prefix = vec![0u64; n - 1];
    let mut excluded: Vec<u64> = Vec::new();
    'outer: loop {
        excluded.clear();
        let mut dead = false;
        for f in &forms {
            let partial = prefix
                .iter()
                .zip(f)
                .fold(0u64, |acc, (&x, &c)| (acc + crate::rational::mulmod(x, c, p)) % p);
            let last = f[n - 1];
            if last == 0 {
                if partial == 0 {
                    dead = true;
                    break;
                }
            } else {
                // last·z + partial = 0
                let z = crate::rational::mulmod((p - partial) % p, inv(last), p);
                excluded.push(z);
            }
        }
        if !dead {
            excluded.sort_unstable();
            excluded.dedup();
            count += p - excluded.len() as u64;
        }
        // next prefix
        for c in prefix.iter_mut().take(n - 1) {
            *c += 1;
            if *c < p {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    Some(count)
}
