//! Saito's criterion, the freeness oracle, exponents and NT/SNT counts.

use alloc::vec::Vec;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::generators::{minimal_generators, GeneratorSearch, GeneratorSet};
use crate::lattice::{char_poly, CharPoly};
use crate::matrix::det_poly;
use crate::poly::dim_graded;
use crate::scalar::Scalar;

/// A homogeneous basis of `D(A)` with its Saito constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessCertificate {
    pub basis: Vec<Derivation>,
    /// Sorted degrees of `basis`.
    pub exponents: Vec<u32>,
    /// `det(basis) = saito_constant · Q(A)`.
    pub saito_constant: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NotFreeReason {
    /// χ(A,t) has a root that is not a non-negative integer.
    CharPoly,
    /// Minimal generators disagree with the roots of χ(A,t).
    GeneratorDegrees,
}

impl NotFreeReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NotFreeReason::CharPoly => "char poly",
            NotFreeReason::GeneratorDegrees => "generator degrees",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Free(FreenessCertificate),
    NotFree(NotFreeReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessResult {
    pub char_poly: CharPoly,
    pub verdict: Verdict,
}

impl FreenessResult {
    pub fn is_free(&self) -> bool {
        matches!(self.verdict, Verdict::Free(_))
    }

    pub fn certificate(&self) -> Option<&FreenessCertificate> {
        match &self.verdict {
            Verdict::Free(c) => Some(c),
            Verdict::NotFree(_) => None,
        }
    }

    pub fn exponents(&self) -> Option<&[u32]> {
        self.certificate().map(|c| c.exponents.as_slice())
    }
}

/// Saito's criterion: `derivs` is a basis of `D(A)` iff all lie in `D(A)`,
/// their degrees sum to `|A|` and their determinant is a nonzero constant
/// multiple of `Q(A)`. Returns that constant.
pub fn saito_check(a: &Arrangement, derivs: &[Derivation]) -> Result<Scalar> {
    let l = a.rank();
    if derivs.len() != l {
        return Err(Error::WrongCount { expected: l, got: derivs.len() });
    }
    for (index, th) in derivs.iter().enumerate() {
        if th.nvars() != l {
            return Err(Error::DimensionMismatch { expected: l, got: th.nvars() });
        }
        if !th.is_logarithmic(a) {
            return Err(Error::NotLogarithmic { index });
        }
    }
    let sum: usize = derivs.iter().map(|d| d.degree() as usize).sum();
    if sum != a.len() {
        return Err(Error::DegreeSum { expected: a.len(), got: sum });
    }
    let rows: Vec<Vec<_>> = derivs.iter().map(|d| d.components().to_vec()).collect();
    let det = det_poly(&rows)?;
    if det.is_zero() {
        return Err(Error::Dependent);
    }
    let c = det.exact_divide(&a.q_poly()).map_err(|_| Error::NotMultipleOfQ)?;
    c.as_constant().filter(|c| !c.is_zero()).ok_or(Error::NotMultipleOfQ)
}

/// `Σᵢ dim S_{d − dᵢ}`: the Hilbert function of `⊕ S[−dᵢ]` in degree `d`.
pub fn free_hilbert(nvars: usize, degrees: &[u32], d: u32) -> usize {
    degrees.iter().map(|&e| dim_graded(nvars, d as i64 - e as i64)).sum()
}

/// Decides freeness.
///
/// The roots of χ(A,t) are the only possible exponents, and a free module's
/// minimal generators are a basis, so the generator search stops at the first
/// degree where the count of generators disagrees with the roots.
pub fn is_free(a: &Arrangement) -> FreenessResult {
    let chi = char_poly(a);
    let verdict = free_verdict(a, &chi);
    FreenessResult { char_poly: chi, verdict }
}

fn free_verdict(a: &Arrangement, chi: &CharPoly) -> Verdict {
    let Some(roots) = chi.nonneg_integer_roots() else {
        return Verdict::NotFree(NotFreeReason::CharPoly);
    };
    let top = roots.iter().copied().max().unwrap_or(0);
    let mut search = GeneratorSearch::new(a);
    while search.next_degree() <= top {
        let d = search.next_degree();
        search.step();
        let expected = roots.iter().filter(|&&r| r <= d).count();
        if search.generators().len() != expected {
            return Verdict::NotFree(NotFreeReason::GeneratorDegrees);
        }
    }
    let basis = search.finish().generators;
    match saito_check(a, &basis) {
        Ok(saito_constant) => {
            let mut exponents: Vec<u32> = basis.iter().map(Derivation::degree).collect();
            exponents.sort_unstable();
            Verdict::Free(FreenessCertificate { basis, exponents, saito_constant })
        }
        Err(_) => Verdict::NotFree(NotFreeReason::GeneratorDegrees),
    }
}

/// Sorted exponents when `A` is free.
pub fn exponents(a: &Arrangement) -> Option<Vec<u32>> {
    match is_free(a).verdict {
        Verdict::Free(c) => Some(c.exponents),
        Verdict::NotFree(_) => None,
    }
}

/// Number of basis members of `D(A′)` that are not tangent to `H`.
pub fn nt(a_prime: &Arrangement, basis: &[Derivation], h: &Hyperplane) -> Result<usize> {
    saito_check(a_prime, basis)?;
    Ok(basis.iter().filter(|th| !th.is_tangent(h)).count())
}

/// Smallest NT over free bases of `D(A′)`, with a basis achieving it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SntResult {
    pub s: usize,
    /// The degreewise choice below attains the minimum, so this is always set.
    pub exact: bool,
    pub basis: Vec<Derivation>,
}

/// In each degree `e`, the degree-`e` members of any homogeneous basis span a
/// complement of the multiples `M_e` of lower-degree elements, and at most
/// `dim((D(A′ ∪ H)_e + M_e)/M_e)` of them can be tangent to `H`. Seeding the
/// generator search with generators of `D(A′ ∪ H)` reaches that bound in
/// every degree: each seed is either taken or already lies in `M_e`.
pub fn snt_upper(a_prime: &Arrangement, h: &Hyperplane) -> Result<SntResult> {
    let res = is_free(a_prime);
    let exps = res.exponents().ok_or(Error::NotFree)?.to_vec();
    if a_prime.contains(h) {
        return Err(Error::AlreadyPresent);
    }
    let a = a_prime.add(h.clone())?;
    let top = exps.iter().copied().max().unwrap_or(0);
    let seeds = minimal_generators(&a, top).generators;
    let mut search = GeneratorSearch::with_seeds(a_prime, seeds);
    while search.next_degree() <= top {
        search.step();
    }
    let basis = search.finish().generators;
    let s = nt(a_prime, &basis, h)?;
    Ok(SntResult { s, exact: true, basis })
}

/// Hilbert dimensions of a generator set compared with a free resolution
/// having `degrees` as basis degrees.
pub fn hilbert_matches_free(gens: &GeneratorSet, nvars: usize, degrees: &[u32]) -> bool {
    gens.hilbert.iter().enumerate().all(|(d, &h)| h == free_hilbert(nvars, degrees, d as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::minimal_generators;
    use crate::poly::HomPoly;
    use alloc::vec;

    fn coned_a2() -> Arrangement {
        Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[1, -1, 0], &[0, 0, 1]]).unwrap()
    }

    #[test]
    fn boolean_is_free() {
        let r = is_free(&Arrangement::boolean(3));
        let c = r.certificate().unwrap();
        assert_eq!(c.exponents, vec![1, 1, 1]);
        let x = |i| HomPoly::var(3, i);
        let basis: Vec<_> = (0..3).map(|i| Derivation::single(3, i, x(i))).collect();
        assert!(saito_check(&Arrangement::boolean(3), &basis).unwrap().is_one());
    }

    #[test]
    fn saito_rejects_duplicates_and_wrong_sums() {
        let b = Arrangement::boolean(3);
        let e = Derivation::euler(3);
        let x = |i| HomPoly::var(3, i);
        let dup = vec![e.clone(), e.clone(), Derivation::single(3, 2, x(2))];
        assert_eq!(saito_check(&b, &dup), Err(Error::Dependent));
        let short = vec![e.clone(), e];
        assert!(matches!(saito_check(&b, &short), Err(Error::WrongCount { .. })));
        let bad = vec![Derivation::euler(3), Derivation::single(3, 0, x(0)), Derivation::partial(3, 1)];
        assert_eq!(saito_check(&b, &bad), Err(Error::NotLogarithmic { index: 2 }));
    }

    #[test]
    fn coned_a2_exponents() {
        assert_eq!(exponents(&coned_a2()), Some(vec![1, 1, 2]));
    }

    #[test]
    fn generic_arrangement_not_free() {
        let a = Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        assert_eq!(is_free(&a).verdict, Verdict::NotFree(NotFreeReason::CharPoly));
    }

    #[test]
    fn non_essential_and_empty_are_free() {
        let a = Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert_eq!(exponents(&a), Some(vec![0, 1, 1]));
        let e = Arrangement::empty(2, crate::Field::Rational);
        assert_eq!(exponents(&e), Some(vec![0, 0]));
    }

    #[test]
    fn nt_boolean() {
        let b = Arrangement::boolean(3);
        let x = |i| HomPoly::var(3, i);
        let basis: Vec<_> = (0..3).map(|i| Derivation::single(3, i, x(i))).collect();
        let h = Hyperplane::from_ints(&[1, 1, 0]).unwrap();
        assert_eq!(nt(&b, &basis, &h).unwrap(), 2);
        let r = snt_upper(&b, &h).unwrap();
        assert_eq!(r.s, 1);
        let g = Hyperplane::from_ints(&[1, 1, 1]).unwrap();
        // D(B ∪ {g})_1 is spanned by θ_E alone
        assert_eq!(snt_upper(&b, &g).unwrap().s, 2);
    }

    #[test]
    fn free_hilbert_series_matches() {
        let a = coned_a2();
        let g = minimal_generators(&a, 5);
        assert!(hilbert_matches_free(&g, 3, &[1, 1, 2]));
    }
}
