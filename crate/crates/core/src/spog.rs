//! Strongly plus-one generated modules: detection, certificates, level
//! predictions and the passage back to a free basis after a deletion.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::bpoly::{forms_coprime, BPolynomial};
use crate::derivation::Derivation;
use crate::error::{Error, Result};
use crate::freeness::{is_free, saito_check, snt_upper};
use crate::generators::{minimal_generators, spans_degree, spans_with_dimension, GeneratorSearch, GeneratorSet};
use crate::matrix::ExactMatrix;
use crate::poly::{dim_graded, monomial_basis, HomPoly};

/// ℓ + 1 generators with a single relation of degree `level + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpogCertificate {
    /// Sorted degrees of the first ℓ generators.
    pub poexp: Vec<u32>,
    pub level: u32,
    /// θ_E first (for essential arrangements), level element last.
    pub generators: Vec<Derivation>,
    /// `Σ relation[i] · generators[i] = 0`.
    pub relation: Vec<HomPoly>,
    /// Last degree of the Hilbert check.
    pub hilbert_checked_to: u32,
}

impl SpogCertificate {
    pub fn level_element(&self) -> &Derivation {
        self.generators.last().expect("ℓ + 1 generators")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotSpogReason {
    Free,
    /// More than ℓ + 1 minimal generators.
    TooManyGenerators(usize),
    /// The relations do not have the single-relation shape.
    Relations(String),
    Hilbert(u32),
}

impl NotSpogReason {
    pub fn describe(&self) -> String {
        match self {
            NotSpogReason::Free => "free".into(),
            NotSpogReason::TooManyGenerators(n) => format!("{n} minimal generators"),
            NotSpogReason::Relations(s) => format!("relations: {s}"),
            NotSpogReason::Hilbert(e) => format!("Hilbert function differs in degree {e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpogVerdict {
    Spog(SpogCertificate),
    NotSpog(NotSpogReason),
    /// Fewer than ℓ + 1 generators below the degree cap.
    Inconclusive { d_max: u32 },
}

impl SpogVerdict {
    pub fn certificate(&self) -> Option<&SpogCertificate> {
        match self {
            SpogVerdict::Spog(c) => Some(c),
            _ => None,
        }
    }
}

/// Basis of the degree-`e` relations `Σ aᵢ gᵢ = 0` with `deg aᵢ = e − deg gᵢ`.
pub fn syzygies(gens: &[Derivation], e: u32) -> Vec<Vec<HomPoly>> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let l = first.nvars();
    let rows = l * dim_graded(l, e as i64);
    let mut columns: Vec<Vec<_>> = Vec::new();
    let mut blocks = Vec::new();
    for g in gens {
        let monos = if g.degree() <= e { monomial_basis(l, e - g.degree()) } else { Vec::new() };
        blocks.push(monos.len());
        for m in &monos {
            columns.push(g.mul_monomial(m).to_coords());
        }
    }
    if columns.is_empty() {
        return Vec::new();
    }
    let mut m = ExactMatrix::zeros(rows, columns.len());
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            if !v.is_zero() {
                m.set(r, c, v.clone());
            }
        }
    }
    let (_, kernel) = m.kernel_basis();
    kernel
        .into_iter()
        .map(|v| {
            let mut out = Vec::with_capacity(gens.len());
            let mut at = 0;
            for (g, &n) in gens.iter().zip(&blocks) {
                let deg = e.saturating_sub(g.degree());
                out.push(if n == 0 { HomPoly::zero(l, 0) } else { HomPoly::from_coords(l, deg, &v[at..at + n]) });
                at += n;
            }
            out
        })
        .collect()
}

/// Evaluates `Σ aᵢ gᵢ`.
pub fn apply_relation(gens: &[Derivation], relation: &[HomPoly]) -> Derivation {
    let l = gens.first().map_or(1, Derivation::nvars);
    let mut acc = Derivation::zero(l, 0);
    for (g, a) in gens.iter().zip(relation) {
        if !a.is_zero() {
            acc = acc.add(&g.mul_poly(a));
        }
    }
    acc
}

/// SPOG test with the generator search capped at `d_max`.
pub fn spog_check(a: &Arrangement, d_max: u32) -> SpogVerdict {
    if is_free(a).is_free() {
        return SpogVerdict::NotSpog(NotSpogReason::Free);
    }
    let gens = minimal_generators(a, d_max + 2);
    spog_from_generators(a, &gens, d_max)
}

/// SPOG test on an already computed generator set, which must reach degree
/// `d_max + 2`. `A` is assumed not free.
pub fn spog_from_generators(a: &Arrangement, gens: &GeneratorSet, d_max: u32) -> SpogVerdict {
    let l = a.rank();
    let below: Vec<&Derivation> = gens.generators.iter().filter(|g| g.degree() <= d_max).collect();
    if gens.len() > l + 1 {
        return SpogVerdict::NotSpog(NotSpogReason::TooManyGenerators(gens.len()));
    }
    if below.len() < l + 1 {
        return SpogVerdict::Inconclusive { d_max };
    }
    let g = &gens.generators;
    let top = g.iter().map(Derivation::degree).max().unwrap_or(0);
    let low = g.iter().map(Derivation::degree).min().unwrap_or(0);
    let mut first = None;
    for e in low + 1..=top + 2 {
        let s = syzygies(g, e);
        if !s.is_empty() {
            first = Some((e, s));
            break;
        }
    }
    let Some((r, rel)) = first else {
        return SpogVerdict::NotSpog(NotSpogReason::Relations("no relation up to degree top + 2".into()));
    };
    if rel.len() != 1 {
        return SpogVerdict::NotSpog(NotSpogReason::Relations(format!("{} relations in degree {r}", rel.len())));
    }
    let next = syzygies(g, r + 1).len();
    if next != l {
        return SpogVerdict::NotSpog(NotSpogReason::Relations(format!("{next} relations in degree {}", r + 1)));
    }
    let level = r - 1;
    let relation = rel.into_iter().next().expect("one relation");
    let Some(li) = (0..g.len()).rev().find(|&i| g[i].degree() == level && !relation[i].is_zero()) else {
        return SpogVerdict::NotSpog(NotSpogReason::Relations(format!("no generator of degree {level} in the relation")));
    };
    let mut order: Vec<usize> = (0..g.len()).filter(|&i| i != li).collect();
    order.push(li);
    let generators: Vec<Derivation> = order.iter().map(|&i| g[i].clone()).collect();
    let relation: Vec<HomPoly> = order.iter().map(|&i| relation[i].clone()).collect();
    let mut poexp: Vec<u32> = generators[..l].iter().map(Derivation::degree).collect();
    poexp.sort_unstable();
    let degrees: Vec<u32> = generators.iter().map(Derivation::degree).collect();
    for (e, &h) in gens.hilbert.iter().enumerate() {
        if h as i64 != spog_hilbert(l, &degrees, level, e as u32) {
            return SpogVerdict::NotSpog(NotSpogReason::Hilbert(e as u32));
        }
    }
    SpogVerdict::Spog(SpogCertificate {
        poexp,
        level,
        generators,
        relation,
        hilbert_checked_to: gens.complete_up_to,
    })
}

/// `Σᵢ dim S_{e − deg gᵢ} − dim S_{e − level − 1}`.
pub fn spog_hilbert(nvars: usize, degrees: &[u32], level: u32, e: u32) -> i64 {
    let sum: usize = degrees.iter().map(|&d| dim_graded(nvars, e as i64 - d as i64)).sum();
    sum as i64 - dim_graded(nvars, e as i64 - level as i64 - 1) as i64
}

/// `|A| − 1 − |A^H|` for free `A`.
pub fn predict_deletion_level(a: &Arrangement, i: usize) -> Result<u32> {
    if !is_free(a).is_free() {
        return Err(Error::NotFree);
    }
    let ah = a.restrict(i)?;
    Ok((a.len() - 1 - ah.len()) as u32)
}

/// `|(A′ ∪ {H})^H| − 1` for free `A′` in rank 3.
pub fn predict_addition_level(a_prime: &Arrangement, h: &Hyperplane) -> Result<u32> {
    if a_prime.rank() != 3 {
        return Err(Error::WrongRank { expected: 3, got: a_prime.rank() });
    }
    if a_prime.contains(h) {
        return Err(Error::AlreadyPresent);
    }
    if !is_free(a_prime).is_free() {
        return Err(Error::NotFree);
    }
    Ok(a_prime.restrict_to(h)?.len() as u32 - 1)
}

/// A free basis of `D(A ∖ {H})` obtained from SPOG generators of `D(A)` by
/// dividing two of them by `α_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DividedBasis {
    /// SPOG generators with the two divisible members possibly replaced.
    pub generators: Vec<Derivation>,
    /// Basis of `D(A′)`.
    pub basis: Vec<Derivation>,
    /// Positions in `basis` of the two quotients.
    pub divided: [usize; 2],
    pub saito_constant: crate::scalar::Scalar,
}

/// Seeds a generator search on `A′` with the non-level SPOG generators; the two
/// members it has to add are the quotients. The result is checked twice: it
/// must be a Saito basis of `D(A′)`, and after multiplying the quotients back
/// by `α_H` it must still generate `D(A)` together with one SPOG generator of
/// degree `level`.
pub fn spog_to_free_basis(a: &Arrangement, cert: &SpogCertificate, i: usize, d_max: u32) -> Result<DividedBasis> {
    let h = a.hyperplane(i)?.clone();
    let a_prime = a.delete(i)?;
    let res = is_free(&a_prime);
    let exps = res.exponents().ok_or(Error::NotFree)?.to_vec();
    let l = a.rank();
    let kept: Vec<Derivation> = cert.generators[..l].to_vec();
    let top = exps.iter().copied().max().unwrap_or(0);
    let mut search = GeneratorSearch::with_seeds(&a_prime, kept.clone());
    while search.next_degree() <= top {
        search.step();
    }
    let basis = search.finish().generators;
    let saito_constant = saito_check(&a_prime, &basis)?;
    let new: Vec<usize> = (0..basis.len()).filter(|&k| !kept.contains(&basis[k])).collect();
    if new.len() != 2 {
        return Err(Error::Verification(format!("{} basis members outside the SPOG generators", new.len())));
    }
    let alpha = h.alpha();
    let mut generators: Vec<Derivation> = kept.iter().filter(|g| basis.contains(g)).cloned().collect();
    for &k in &new {
        generators.push(basis[k].mul_poly(&alpha));
    }
    // any SPOG generator of degree `level` outside the span of the others can
    // serve as the level element; the certificate's own choice is tried first
    let candidates = cert.generators.iter().rev().filter(|g| g.degree() == cert.level);
    for phi in candidates {
        generators.push(phi.clone());
        if (0..=d_max).all(|e| spans_degree(a, &generators, e)) {
            return Ok(DividedBasis { generators, basis, divided: [new[0], new[1]], saito_constant });
        }
        generators.pop();
    }
    Err(Error::Verification("no level element completes the divided generators".into()))
}

/// Outcome of the SNT = 2 prediction for an addition `A = A′ ∪ {H}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SntTwoReport {
    pub g_coprime: Option<bool>,
    pub generates: bool,
    pub predicted_poexp: Vec<u32>,
    pub predicted_level: u32,
}

/// When `SNT(A′, H) = 2`, splits the two non-tangent basis members as
/// `θ(α_H) = f·α_H + g·B`, checks `gcd(g_i, g_j) = 1`, and checks that
/// `{θ_k} ∪ {α_H θ_i, α_H θ_j, g_j θ_i − g_i θ_j}` generates `D(A)` up to `d_max`.
/// `Ok(None)` when the SNT is not 2.
pub fn snt_two_prediction(a_prime: &Arrangement, h: &Hyperplane, d_max: u32) -> Result<Option<SntTwoReport>> {
    let snt = snt_upper(a_prime, h)?;
    if snt.s != 2 {
        return Ok(None);
    }
    let a = a_prime.add(h.clone())?;
    let b = BPolynomial::compute(a_prime, h)?;
    let bad: Vec<usize> = (0..snt.basis.len()).filter(|&k| !snt.basis[k].is_tangent(h)).collect();
    let (i, j) = (bad[0], bad[1]);
    let (ti, tj) = (&snt.basis[i], &snt.basis[j]);
    let gi = b.decompose(ti)?.g;
    let gj = b.decompose(tj)?.g;
    let alpha = h.alpha();
    let mut gens: Vec<Derivation> =
        (0..snt.basis.len()).filter(|&k| k != i && k != j).map(|k| snt.basis[k].clone()).collect();
    gens.push(ti.mul_poly(&alpha));
    gens.push(tj.mul_poly(&alpha));
    let phi = ti.mul_poly(&gj).sub(&tj.mul_poly(&gi));
    if !phi.is_zero() {
        gens.push(phi);
    }
    let generates = (0..=d_max).all(|e| spans_degree(&a, &gens, e));
    let mut predicted_poexp: Vec<u32> = snt.basis.iter().map(Derivation::degree).collect();
    predicted_poexp[i] += 1;
    predicted_poexp[j] += 1;
    predicted_poexp.sort_unstable();
    let ah = a.restrict(a.index_of(h).expect("added"))?.len();
    let predicted_level = (ti.degree() + tj.degree() + ah as u32).saturating_sub(a_prime.len() as u32);
    Ok(Some(SntTwoReport { g_coprime: forms_coprime(&gi, &gj), generates, predicted_poexp, predicted_level }))
}

/// All of `A`'s single-hyperplane deletions and their SPOG verdicts.
pub fn deletion_table(a: &Arrangement, d_max: u32) -> Vec<(usize, SpogVerdict)> {
    (0..a.len()).map(|i| (i, spog_check(&a.delete(i).expect("valid index"), d_max))).collect()
}

/// The relation evaluates to zero and the Hilbert function matches the SPOG
/// resolution up to `hilbert_checked_to`.
pub fn verify_spog_certificate(a: &Arrangement, cert: &SpogCertificate) -> Result<()> {
    let l = a.rank();
    if cert.generators.len() != l + 1 || cert.relation.len() != l + 1 {
        return Err(Error::WrongCount { expected: l + 1, got: cert.generators.len() });
    }
    for (index, g) in cert.generators.iter().enumerate() {
        if !g.is_logarithmic(a) {
            return Err(Error::NotLogarithmic { index });
        }
    }
    if !apply_relation(&cert.generators, &cert.relation).is_zero() {
        return Err(Error::Verification("relation does not vanish".into()));
    }
    let degrees: Vec<u32> = cert.generators.iter().map(Derivation::degree).collect();
    if degrees[l] != cert.level {
        return Err(Error::Verification("level element has the wrong degree".into()));
    }
    let mut sorted = degrees[..l].to_vec();
    sorted.sort_unstable();
    if sorted != cert.poexp {
        return Err(Error::Verification("POexp differs from the generator degrees".into()));
    }
    if cert.relation.iter().all(HomPoly::is_zero)
        || cert.relation.iter().zip(&degrees).any(|(r, d)| !r.is_zero() && r.degree() + d != cert.level + 1)
    {
        return Err(Error::Verification("relation is zero or not of degree level + 1".into()));
    }
    for e in 0..=cert.hilbert_checked_to {
        let want = spog_hilbert(l, &degrees, cert.level, e);
        if want < 0 || !spans_with_dimension(a, &cert.generators, e, want as usize) {
            return Err(Error::Verification(format!("Hilbert function differs in degree {e}")));
        }
    }
    let sum: u32 = cert.poexp.iter().sum();
    if sum as usize != a.len() + 1 {
        return Err(Error::Verification(format!("POexp sum {sum} differs from |A| + 1")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coned_a2() -> Arrangement {
        Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[1, -1, 0], &[0, 0, 1]]).unwrap()
    }

    #[test]
    fn free_is_not_spog() {
        assert_eq!(spog_check(&coned_a2(), 4), SpogVerdict::NotSpog(NotSpogReason::Free));
    }

    #[test]
    fn free_bases_have_no_relations() {
        let g = minimal_generators(&coned_a2(), 4);
        for e in 0..6 {
            assert!(syzygies(&g.generators, e).is_empty());
        }
    }

    #[test]
    fn duplicate_generator_relation() {
        let e = Derivation::euler(3);
        let s = syzygies(&[e.clone(), e], 1);
        assert_eq!(s.len(), 1);
        let c0 = s[0][0].as_constant().unwrap();
        let c1 = s[0][1].as_constant().unwrap();
        assert!((&c0 + &c1).is_zero() && !c0.is_zero());
    }

    #[test]
    fn generic_four_planes_are_spog() {
        // adding a generic plane to the Boolean arrangement
        let a = Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let v = spog_check(&a, 4);
        let c = v.certificate().expect("SPOG");
        assert_eq!(c.poexp, alloc::vec![1, 2, 2]);
        assert_eq!(c.level, 2);
        assert_eq!(c.generators[0], Derivation::euler(3));
        verify_spog_certificate(&a, c).unwrap();
        let h = Hyperplane::from_ints(&[1, 1, 1]).unwrap();
        let b = Arrangement::boolean(3);
        assert_eq!(predict_addition_level(&b, &h).unwrap(), c.level);
        let i = a.index_of(&h).unwrap();
        let d = spog_to_free_basis(&a, c, i, 4).unwrap();
        assert_eq!(d.basis.len(), 3);
        for k in d.divided {
            assert!(!d.basis[k].is_tangent(&h));
        }
    }

    #[test]
    fn snt_two_for_generic_addition() {
        let b = Arrangement::boolean(3);
        let h = Hyperplane::from_ints(&[1, 1, 1]).unwrap();
        let r = snt_two_prediction(&b, &h, 4).unwrap().unwrap();
        assert_eq!(r.g_coprime, Some(true));
        assert!(r.generates);
        assert_eq!(r.predicted_poexp, alloc::vec![1, 2, 2]);
        assert_eq!(r.predicted_level, 2);
    }

    #[test]
    fn divided_basis_after_shi_addition() {
        let a2 = crate::families::weyl(crate::families::RootType::A2);
        let b = crate::families::shi(&a2, 1, 1).unwrap();
        let h = Hyperplane::from_ints(&[1, 1, 1]).unwrap();
        let a = b.add(h.clone()).unwrap();
        let c = spog_check(&a, 6);
        let c = c.certificate().expect("SPOG");
        let i = a.index_of(&h).unwrap();
        let d = spog_to_free_basis(&a, c, i, c.hilbert_checked_to).unwrap();
        assert_eq!(saito_check(&b, &d.basis).unwrap(), d.saito_constant);
    }

    #[test]
    fn rank_restrictions() {
        let a = Arrangement::boolean(4);
        let h = Hyperplane::from_ints(&[1, 1, 1, 1]).unwrap();
        assert!(matches!(predict_addition_level(&a, &h), Err(Error::WrongRank { .. })));
    }
}
