//! The polynomial `B` of a pair `(A′, H)` and the splitting
//! `θ(α_H) = f·α_H + g·B`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::generators::{minimal_generators, GeneratorSet};
use crate::poly::HomPoly;
use crate::scalar::Scalar;

/// `B` for `(A′, H)`, in the ambient ring and restricted to `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BPolynomial {
    pub hyperplane: Hyperplane,
    /// `B` with no dependence on the pivot variable of `α_H`.
    pub poly: HomPoly,
    /// `B|_H` in the coordinates of `H`.
    pub restricted: HomPoly,
    pub degree: u32,
}

impl BPolynomial {
    /// `B = Q(A′)|_H / Q(A^H)`, computed on `H` and lifted.
    pub fn compute(a_prime: &Arrangement, h: &Hyperplane) -> Result<BPolynomial> {
        if a_prime.contains(h) {
            return Err(Error::AlreadyPresent);
        }
        if h.dim() != a_prime.rank() {
            return Err(Error::DimensionMismatch { expected: a_prime.rank(), got: h.dim() });
        }
        let p = h.pivot();
        let restricted_q = a_prime.q_poly().restrict_to_hyperplane(h.form(), p);
        let ah = a_prime.restrict_to(h)?;
        let restricted = restricted_q.exact_divide(&ah.q_poly())?;
        let degree = restricted.degree();
        debug_assert_eq!(degree as usize, a_prime.len() - ah.len());
        Ok(BPolynomial { hyperplane: h.clone(), poly: restricted.lift(p), restricted, degree })
    }

    /// `θ(α_H) ∈ (α_H, B)`.
    pub fn admits(&self, theta: &Derivation) -> bool {
        self.decompose(theta).is_ok()
    }

    /// `(f, g)` with `θ(α_H) = f·α_H + g·B`, where `g` does not involve the pivot
    /// variable. Fails exactly when `θ(α_H) ∉ (α_H, B)`.
    pub fn decompose(&self, theta: &Derivation) -> Result<Decomposition> {
        let h = &self.hyperplane;
        let p = h.pivot();
        let value = theta.apply(h.form());
        let r = value.restrict_to_hyperplane(h.form(), p);
        let g = if r.is_zero() {
            HomPoly::zero(theta.nvars(), theta.degree().saturating_sub(self.degree))
        } else {
            r.exact_divide(&self.restricted)?.lift(p)
        };
        let rest = if g.is_zero() { value } else { value.sub(&g.mul(&self.poly)) };
        let f = if rest.is_zero() {
            HomPoly::zero(theta.nvars(), theta.degree().saturating_sub(1))
        } else {
            rest.exact_divide(&h.alpha())?
        };
        Ok(Decomposition { f, g })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub f: HomPoly,
    pub g: HomPoly,
}

/// Computes `B` and checks the membership property on every minimal generator
/// of `D(A′)` up to degree `|A′|`. A failure is reported, never repaired.
pub fn b_polynomial(a_prime: &Arrangement, h: &Hyperplane) -> Result<BPolynomial> {
    let b = BPolynomial::compute(a_prime, h)?;
    let gens = minimal_generators(a_prime, a_prime.len() as u32);
    verify_b(&b, &gens)?;
    Ok(b)
}

pub fn verify_b(b: &BPolynomial, gens: &GeneratorSet) -> Result<()> {
    for (i, th) in gens.generators.iter().enumerate() {
        if !b.admits(th) {
            return Err(Error::Verification(format!(
                "generator {i} of degree {} violates θ(α_H) ∈ (α_H, B)",
                th.degree()
            )));
        }
    }
    Ok(())
}

/// Whether two polynomials that depend on at most two of the variables share
/// no nonconstant factor. `None` when either depends on three or more.
pub fn forms_coprime(f: &HomPoly, g: &HomPoly) -> Option<bool> {
    if f.is_zero() || g.is_zero() {
        return Some(f.as_constant().is_some_and(|c| !c.is_zero()) || g.as_constant().is_some_and(|c| !c.is_zero()));
    }
    if f.degree() == 0 || g.degree() == 0 {
        return Some(true);
    }
    let n = f.nvars();
    let used: Vec<usize> = (0..n)
        .filter(|&i| f.terms().chain(g.terms()).any(|(e, _)| e[i] > 0))
        .collect();
    match used.len() {
        1 => Some(false),
        2 => {
            let (x, y) = (used[0], used[1]);
            // a common factor is either y itself or shows up after y = 1
            let divisible_by_y = |p: &HomPoly| p.terms().all(|(e, _)| e[y] > 0);
            if divisible_by_y(f) && divisible_by_y(g) {
                return Some(false);
            }
            let uf = dehomogenize(f, x);
            let ug = dehomogenize(g, x);
            Some(univariate_gcd(uf, ug).len() <= 1)
        }
        _ => None,
    }
}

/// Coefficients in `x` (lowest first) after setting the other variable to 1.
fn dehomogenize(p: &HomPoly, x: usize) -> Vec<Scalar> {
    let mut c = vec![Scalar::zero(); p.degree() as usize + 1];
    for (e, v) in p.terms() {
        c[e[x] as usize] = &c[e[x] as usize] + v;
    }
    trim(c)
}

fn trim(mut c: Vec<Scalar>) -> Vec<Scalar> {
    while c.last().is_some_and(Scalar::is_zero) {
        c.pop();
    }
    c
}

fn univariate_gcd(mut a: Vec<Scalar>, mut b: Vec<Scalar>) -> Vec<Scalar> {
    while !b.is_empty() {
        let r = univariate_rem(a, &b);
        a = b;
        b = r;
    }
    a
}

fn univariate_rem(mut a: Vec<Scalar>, b: &[Scalar]) -> Vec<Scalar> {
    let lead = b.last().expect("nonzero divisor").inv().expect("nonzero");
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let q = a.last().expect("nonempty") * &lead;
        for (i, c) in b.iter().enumerate() {
            a[shift + i] = &a[shift + i] - &(&q * c);
        }
        a = trim(a);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::derivation_space;

    #[test]
    fn boolean_pair_has_constant_b() {
        let a = Arrangement::from_int_forms(3, &[&[0, 1, 0], &[0, 0, 1]]).unwrap();
        let h = Hyperplane::from_ints(&[1, 0, 0]).unwrap();
        let b = b_polynomial(&a, &h).unwrap();
        assert_eq!(b.degree, 0);
    }

    #[test]
    fn generic_four_planes_constant_b() {
        let a = Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let h = Hyperplane::from_ints(&[1, 2, 5]).unwrap();
        assert_eq!(a.restrict_to(&h).unwrap().len(), 4);
        let b = b_polynomial(&a, &h).unwrap();
        assert_eq!(b.degree, 0);
    }

    #[test]
    fn multiple_points_raise_the_degree() {
        // H contains the line x = y = 0, so x, y and x + y all restrict to
        // one line of H
        let a = Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap();
        let h = Hyperplane::from_ints(&[1, 2, 0]).unwrap();
        let b = b_polynomial(&a, &h).unwrap();
        assert_eq!(b.degree as usize, a.len() - a.restrict_to(&h).unwrap().len());
        assert_eq!(b.degree, 2);
        for d in 0..4 {
            for th in derivation_space(&a, d) {
                let dec = b.decompose(&th).unwrap();
                let v = th.apply(h.form());
                assert!(dec.f.mul(&h.alpha()).add(&dec.g.mul(&b.poly)).sub(&v).is_zero());
            }
        }
    }

    #[test]
    fn coprimality_of_binary_forms() {
        let x = HomPoly::var(3, 1);
        let y = HomPoly::var(3, 2);
        let xy = x.mul(&y);
        let x_plus_y = x.add(&y);
        assert_eq!(forms_coprime(&xy, &x_plus_y), Some(true));
        assert_eq!(forms_coprime(&xy, &y.mul(&x_plus_y)), Some(false));
        assert_eq!(forms_coprime(&x.mul(&x_plus_y), &x_plus_y.mul(&x_plus_y)), Some(false));
        assert_eq!(forms_coprime(&HomPoly::one(3), &xy), Some(true));
        let z = HomPoly::var(3, 0);
        assert_eq!(forms_coprime(&z.mul(&x).mul(&y), &xy), None);
    }
}
