//! Reduction of `ℚ(√d)` modulo a prime and dense linear algebra over `𝔽_p`.
//!
//! Reduction is a ring homomorphism on the values it is defined for, so ranks
//! can only drop. Callers use that one-sided inequality to certify equalities
//! without exact elimination, and fall back to exact arithmetic otherwise.

use alloc::vec::Vec;

use crate::rational::{mulmod, powmod};
use crate::scalar::{Field, Scalar};

/// Primes `p ≡ 3 (mod 4)` just below `2^62`.
const PRIMES: [u64; 6] = [
    4611686018427387847,
    4611686018427387787,
    4611686018427387751,
    4611686018427387631,
    4611686018427387587,
    4611686018427387323,
];

/// `𝔽_p` together with the image of `√d` when the field is quadratic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModField {
    p: u64,
    root: u64,
}

impl ModField {
    /// First prime of the fixed list in which `field` has a model.
    pub fn for_field(field: Field) -> Option<ModField> {
        PRIMES.iter().find_map(|&p| ModField::with_prime(field, p))
    }

    pub fn with_prime(field: Field, p: u64) -> Option<ModField> {
        match field {
            Field::Rational => Some(ModField { p, root: 0 }),
            Field::Quadratic(d) => {
                let d = d as u64 % p;
                // p ≡ 3 (mod 4): a square root, if any, is d^((p+1)/4)
                let r = powmod(d, (p + 1) / 4, p);
                (mulmod(r, r, p) == d).then_some(ModField { p, root: r })
            }
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, s: &Scalar) -> Option<u64> {
        let a = s.rational_part().mod_prime(self.p)?;
        if s.root_part().is_zero() {
            return Some(a);
        }
        let b = s.root_part().mod_prime(self.p)?;
        Some(add(a, mulmod(b, self.root, self.p), self.p))
    }

    pub fn reduce_vec(&self, v: &[Scalar]) -> Option<Vec<u64>> {
        v.iter().map(|s| self.reduce(s)).collect()
    }
}

fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Incremental echelon basis over `𝔽_p`, same layout as the exact one.
#[derive(Clone, Debug)]
pub struct ModEchelon {
    p: u64,
    dim: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModEchelon {
    pub fn new(p: u64, dim: usize) -> ModEchelon {
        ModEchelon { p, dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.dim);
        let p = self.p;
        for (c, row) in &self.rows {
            let f = v[*c];
            if f != 0 {
                let nf = p - f;
                for (x, y) in v[*c..].iter_mut().zip(&row[*c..]) {
                    if *y != 0 {
                        *x = add(*x, mulmod(nf, *y, p), p);
                    }
                }
            }
        }
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let i = inv(v[c], p);
        for x in v[c..].iter_mut() {
            *x = mulmod(*x, i, p);
        }
        self.rows.push((c, v));
        true
    }
}

/// Rank of the matrix with the given rows over `𝔽_p`.
pub fn rank(p: u64, cols: usize, rows: Vec<Vec<u64>>) -> usize {
    let mut e = ModEchelon::new(p, cols);
    for r in rows {
        if e.rank() == cols {
            break;
        }
        e.insert(r);
    }
    e.rank()
}

/// Dense row-major matrix rank without per-row allocation, for tall inputs.
pub fn rank_dense(p: u64, cols: usize, mut m: Vec<Vec<u64>>) -> usize {
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let i = inv(m[r][c], p);
        let pivot: Vec<u64> = m[r].iter().map(|&x| mulmod(x, i, p)).collect();
        for row in m.iter_mut().skip(r + 1) {
            let f = row[c];
            if f != 0 {
                let nf = p - f;
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    if *y != 0 {
                        *x = add(*x, mulmod(nf, *y, p), p);
                    }
                }
            }
        }
        m[r] = pivot;
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rat;
    use alloc::vec;

    #[test]
    fn primes_are_three_mod_four_and_prime() {
        for p in PRIMES {
            assert_eq!(p % 4, 3);
            // Fermat test in a few bases
            for a in [2u64, 3, 5, 7, 11] {
                assert_eq!(powmod(a, p - 1, p), 1);
            }
        }
    }

    #[test]
    fn sqrt5_reduction_is_a_homomorphism() {
        let f = ModField::for_field(Field::Quadratic(5)).unwrap();
        let x = Scalar::quadratic(Rat::new(-1, 4), Rat::new(1, 4), 5);
        let y = Scalar::quadratic(Rat::new(3, 7), Rat::new(-2, 3), 5);
        let p = f.prime();
        assert_eq!(f.reduce(&(&x * &y)), Some(mulmod(f.reduce(&x).unwrap(), f.reduce(&y).unwrap(), p)));
        assert_eq!(f.reduce(&(&x + &y)), Some(add(f.reduce(&x).unwrap(), f.reduce(&y).unwrap(), p)));
    }

    #[test]
    fn ranks() {
        let p = PRIMES[0];
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        assert_eq!(rank(p, 3, rows.clone()), 2);
        assert_eq!(rank_dense(p, 3, rows), 2);
    }
}
