//! Central arrangements, deletion, restriction and the cone/decone bridge.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::matrix::{Echelon, ExactMatrix};
use crate::poly::HomPoly;
use crate::scalar::{Field, Scalar};

/// A linear hyperplane, stored as its defining form scaled so that the first
/// nonzero coefficient is 1. Proportional forms therefore compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hyperplane {
    form: Vec<Scalar>,
}

impl Hyperplane {
    pub fn new(form: Vec<Scalar>) -> Result<Hyperplane> {
        let lead = form.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroForm)?;
        let inv = lead.inv().expect("nonzero");
        let form = form.iter().map(|c| c * &inv).collect();
        Ok(Hyperplane { form })
    }

    pub fn from_ints(form: &[i64]) -> Result<Hyperplane> {
        Hyperplane::new(form.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn form(&self) -> &[Scalar] {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.len()
    }

    /// Index of the leading coefficient (which is 1).
    pub fn pivot(&self) -> usize {
        self.form.iter().position(|c| !c.is_zero()).expect("nonzero form")
    }

    /// `α_H` as a degree-one polynomial.
    pub fn alpha(&self) -> HomPoly {
        HomPoly::linear(&self.form)
    }

    pub fn field(&self) -> Field {
        self.form.iter().fold(Field::Rational, |f, c| f.join(c.field()).expect("single field"))
    }

    /// Image of another form on this hyperplane, in the coordinates left after
    /// eliminating the pivot variable. `None` when the two are proportional.
    pub fn restrict_form(&self, other: &[Scalar]) -> Option<Vec<Scalar>> {
        let p = self.pivot();
        let bp = &other[p];
        let img: Vec<Scalar> = (0..self.form.len())
            .filter(|&j| j != p)
            .map(|j| &other[j] - &(bp * &self.form[j]))
            .collect();
        img.iter().any(|c| !c.is_zero()).then_some(img)
    }
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.form.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A central arrangement in `𝕂^ℓ`: a set of hyperplanes kept in sorted order
/// so that equal sets are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrangement {
    rank: usize,
    field: Field,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    /// Builds an arrangement; forms are normalized and must be pairwise
    /// non-proportional.
    pub fn new(rank: usize, field: Field, hyperplanes: Vec<Hyperplane>) -> Result<Arrangement> {
        if rank == 0 {
            return Err(Error::Invalid("ambient dimension must be positive".into()));
        }
        for h in &hyperplanes {
            if h.dim() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: h.dim() });
            }
            if field.join(h.field()) != Some(field) {
                return Err(Error::FieldMismatch);
            }
        }
        let mut hyperplanes = hyperplanes;
        hyperplanes.sort();
        if hyperplanes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("proportional hyperplanes".into()));
        }
        Ok(Arrangement { rank, field, hyperplanes })
    }

    /// Like [`Arrangement::new`] but silently merges proportional forms.
    pub fn from_forms_dedup(rank: usize, field: Field, forms: Vec<Vec<Scalar>>) -> Result<Arrangement> {
        let mut hs = forms.into_iter().map(Hyperplane::new).collect::<Result<Vec<_>>>()?;
        hs.sort();
        hs.dedup();
        Arrangement::new(rank, field, hs)
    }

    /// Rational arrangement from integer forms.
    pub fn from_int_forms(rank: usize, forms: &[&[i64]]) -> Result<Arrangement> {
        let hs = forms.iter().map(|f| Hyperplane::from_ints(f)).collect::<Result<Vec<_>>>()?;
        Arrangement::new(rank, Field::Rational, hs)
    }

    pub fn empty(rank: usize, field: Field) -> Arrangement {
        Arrangement { rank, field, hyperplanes: Vec::new() }
    }

    /// Coordinate hyperplanes `x₁ ⋯ x_ℓ = 0`.
    pub fn boolean(rank: usize) -> Arrangement {
        let hs = (0..rank)
            .map(|i| {
                let mut f = alloc::vec![Scalar::zero(); rank];
                f[i] = Scalar::one();
                Hyperplane::new(f).expect("nonzero")
            })
            .collect();
        Arrangement::new(rank, Field::Rational, hs).expect("distinct")
    }

    /// Ambient dimension ℓ.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> Result<&Hyperplane> {
        self.hyperplanes.get(i).ok_or(Error::IndexOutOfRange { index: i, len: self.len() })
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.binary_search(h).ok()
    }

    pub fn contains(&self, h: &Hyperplane) -> bool {
        self.index_of(h).is_some()
    }

    /// `true` when every hyperplane of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Arrangement) -> bool {
        self.rank == other.rank && self.hyperplanes.iter().all(|h| other.contains(h))
    }

    /// `Q(A) = ∏ α_H`.
    pub fn q_poly(&self) -> HomPoly {
        self.hyperplanes
            .iter()
            .fold(HomPoly::one(self.rank), |acc, h| acc.mul(&h.alpha()))
    }

    /// `A ∖ {H}`.
    pub fn delete(&self, i: usize) -> Result<Arrangement> {
        self.hyperplane(i)?;
        let mut hs = self.hyperplanes.clone();
        hs.remove(i);
        Ok(Arrangement { rank: self.rank, field: self.field, hyperplanes: hs })
    }

    /// Removes every hyperplane whose index is in `idx`.
    pub fn delete_many(&self, idx: &[usize]) -> Result<Arrangement> {
        for &i in idx {
            self.hyperplane(i)?;
        }
        let hs = self
            .hyperplanes
            .iter()
            .enumerate()
            .filter(|(i, _)| !idx.contains(i))
            .map(|(_, h)| h.clone())
            .collect();
        Ok(Arrangement { rank: self.rank, field: self.field, hyperplanes: hs })
    }

    /// `A ∪ {H}`.
    pub fn add(&self, h: Hyperplane) -> Result<Arrangement> {
        if h.dim() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: h.dim() });
        }
        let field = self.field.join(h.field()).ok_or(Error::FieldMismatch)?;
        match self.hyperplanes.binary_search(&h) {
            Ok(_) => Err(Error::AlreadyPresent),
            Err(pos) => {
                let mut hs = self.hyperplanes.clone();
                hs.insert(pos, h);
                Ok(Arrangement { rank: self.rank, field, hyperplanes: hs })
            }
        }
    }

    /// Restriction `A^H` to hyperplane `i`, as an arrangement in `𝕂^{ℓ−1}`
    /// with coordinates obtained by eliminating the pivot variable of `α_H`.
    pub fn restrict(&self, i: usize) -> Result<Arrangement> {
        let h = self.hyperplane(i)?;
        self.restrict_to(h)
    }

    /// Restriction of `A ∖ {H}` to an arbitrary hyperplane `H` (which need not
    /// belong to `A`).
    pub fn restrict_to(&self, h: &Hyperplane) -> Result<Arrangement> {
        if self.rank < 2 {
            return Err(Error::Invalid("cannot restrict an arrangement in dimension 1".into()));
        }
        let forms = self
            .hyperplanes
            .iter()
            .filter(|k| *k != h)
            .filter_map(|k| h.restrict_form(k.form()))
            .collect();
        Arrangement::from_forms_dedup(self.rank - 1, self.field, forms)
    }

    /// Rank of the span of the defining forms.
    pub fn form_rank(&self) -> usize {
        let mut e = Echelon::new(self.rank);
        for h in &self.hyperplanes {
            e.insert(h.form().to_vec());
        }
        e.rank()
    }

    /// `∩ H = {0}`.
    pub fn is_essential(&self) -> bool {
        self.form_rank() == self.rank
    }

    /// Coefficient matrix with one row per hyperplane.
    pub fn form_matrix(&self) -> ExactMatrix {
        let rows = self.hyperplanes.iter().map(|h| h.form().to_vec()).collect();
        ExactMatrix::from_rows(self.rank, rows).expect("rectangular")
    }

    /// Deconing at hyperplane `i`: coordinates are changed so that `α_H`
    /// becomes the last variable, which is then set to 1.
    pub fn decone(&self, i: usize) -> Result<AffineArrangement> {
        let h = self.hyperplane(i)?;
        let p = h.pivot();
        let mut lines = Vec::new();
        for (j, k) in self.hyperplanes.iter().enumerate() {
            if j == i {
                continue;
            }
            let coeffs = h.restrict_form(k.form()).expect("distinct hyperplanes");
            lines.push((coeffs, k.form()[p].clone()));
        }
        AffineArrangement::new(self.rank - 1, self.field, lines)
    }

    /// Evaluates every form at a point.
    pub fn contains_point(&self, point: &[Scalar]) -> bool {
        self.hyperplanes.iter().any(|h| crate::matrix::dot(h.form(), point).is_zero())
    }
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Arrangement(ℓ={}, {}, {:?})", self.rank, self.field, self.hyperplanes)
    }
}

/// An affine arrangement in `𝕂^{dim}`: hyperplanes `c·x + c₀ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineArrangement {
    dim: usize,
    field: Field,
    lines: Vec<(Vec<Scalar>, Scalar)>,
}

impl AffineArrangement {
    /// Normalizes each `(c, c₀)` so the first nonzero entry of `c` is 1;
    /// repeated hyperplanes are an error.
    pub fn new(dim: usize, field: Field, lines: Vec<(Vec<Scalar>, Scalar)>) -> Result<AffineArrangement> {
        let mut out = Vec::with_capacity(lines.len());
        for (c, c0) in lines {
            if c.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: c.len() });
            }
            let lead = c.iter().find(|v| !v.is_zero()).ok_or(Error::ZeroForm)?;
            let inv = lead.inv().expect("nonzero");
            let c: Vec<Scalar> = c.iter().map(|v| v * &inv).collect();
            let c0 = &c0 * &inv;
            for v in c.iter().chain(core::iter::once(&c0)) {
                if field.join(v.field()) != Some(field) {
                    return Err(Error::FieldMismatch);
                }
            }
            out.push((c, c0));
        }
        out.sort();
        if out.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("repeated affine hyperplane in dimension {dim}")));
        }
        Ok(AffineArrangement { dim, field, lines: out })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn lines(&self) -> &[(Vec<Scalar>, Scalar)] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Homogenizes with a new last variable `z` and adds `z = 0`.
    pub fn cone(&self) -> Arrangement {
        let n = self.dim + 1;
        let mut hs: Vec<Hyperplane> = self
            .lines
            .iter()
            .map(|(c, c0)| {
                let mut f = c.clone();
                f.push(c0.clone());
                Hyperplane::new(f).expect("nonzero")
            })
            .collect();
        let mut z = alloc::vec![Scalar::zero(); n];
        z[n - 1] = Scalar::one();
        hs.push(Hyperplane::new(z).expect("nonzero"));
        Arrangement::new(n, self.field, hs).expect("affine hyperplanes are distinct")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn normalization_identifies_proportional_forms() {
        let a = Hyperplane::from_ints(&[2, -4, 6]).unwrap();
        let b = Hyperplane::from_ints(&[-1, 2, -3]).unwrap();
        assert_eq!(a, b);
        assert!(Hyperplane::from_ints(&[0, 0]).is_err());
        assert!(Arrangement::from_int_forms(2, &[&[1, 1], &[2, 2]]).is_err());
    }

    #[test]
    fn boolean_q_and_deletion() {
        let a = Arrangement::boolean(3);
        let x = |i| HomPoly::var(3, i);
        assert_eq!(a.q_poly(), x(0).mul(&x(1)).mul(&x(2)));
        assert_eq!(Arrangement::empty(3, Field::Rational).q_poly(), HomPoly::one(3));
        let d = a.delete(a.index_of(&Hyperplane::from_ints(&[1, 0, 0]).unwrap()).unwrap()).unwrap();
        assert_eq!(d, Arrangement::from_int_forms(3, &[&[0, 1, 0], &[0, 0, 1]]).unwrap());
        assert_eq!(a.delete(7), Err(Error::IndexOutOfRange { index: 7, len: 3 }));
        let back = d.add(Hyperplane::from_ints(&[1, 0, 0]).unwrap()).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.add(Hyperplane::from_ints(&[1, 0, 0]).unwrap()), Err(Error::AlreadyPresent));
    }

    #[test]
    fn boolean_restriction() {
        let a = Arrangement::boolean(3);
        let i = a.index_of(&Hyperplane::from_ints(&[1, 0, 0]).unwrap()).unwrap();
        let r = a.restrict(i).unwrap();
        assert_eq!(r, Arrangement::boolean(2));
    }

    #[test]
    fn coned_a2_restricted_to_z() {
        let a = Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[1, -1, 0], &[0, 0, 1]]).unwrap();
        let z = a.index_of(&Hyperplane::from_ints(&[0, 0, 1]).unwrap()).unwrap();
        assert_eq!(a.restrict(z).unwrap().len(), 3);
        let x = |i| HomPoly::var(3, i);
        assert_eq!(a.q_poly(), x(0).mul(&x(1)).mul(&x(0).sub(&x(1))).mul(&x(2)));
    }

    #[test]
    fn essentiality() {
        assert!(Arrangement::boolean(3).is_essential());
        assert!(!Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap().is_essential());
    }

    #[test]
    fn cone_and_decone() {
        let aff = AffineArrangement::new(
            1,
            Field::Rational,
            vec![(vec![Scalar::one()], Scalar::from_int(-1))],
        )
        .unwrap();
        let c = aff.cone();
        assert_eq!(c, Arrangement::from_int_forms(2, &[&[1, -1], &[0, 1]]).unwrap());

        let b = Arrangement::boolean(3);
        for i in 0..3 {
            let round = b.decone(i).unwrap().cone();
            assert_eq!(round.len(), 3);
            assert!(round.is_essential());
        }

        let xy = Arrangement::boolean(2);
        let d = xy.decone(0).unwrap();
        assert_eq!(d.dim(), 1);
        assert_eq!(d.lines(), &[(vec![Scalar::one()], Scalar::zero())]);
    }
}
