//! Polynomial derivations and the graded pieces `D(A)_d`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::poly::{dim_graded, monomial_basis, monomial_rank, HomPoly};
use crate::scalar::Scalar;

/// `θ = Σ fᵢ ∂ᵢ` with every `fᵢ` homogeneous of the same degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    components: Vec<HomPoly>,
    degree: u32,
}

impl Derivation {
    pub fn new(components: Vec<HomPoly>) -> Result<Derivation> {
        let nvars = components.len();
        if nvars == 0 {
            return Err(Error::Invalid("derivation needs at least one component".into()));
        }
        let degree = components
            .iter()
            .find(|c| !c.is_zero())
            .map_or_else(|| components[0].degree(), HomPoly::degree);
        for c in &components {
            if c.nvars() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, got: c.nvars() });
            }
            if !c.is_zero() && c.degree() != degree {
                return Err(Error::NonHomogeneous);
            }
        }
        let components = components
            .into_iter()
            .map(|c| if c.is_zero() { HomPoly::zero(nvars, degree) } else { c })
            .collect();
        Ok(Derivation { components, degree })
    }

    pub fn zero(nvars: usize, degree: u32) -> Derivation {
        Derivation { components: vec![HomPoly::zero(nvars, degree); nvars], degree }
    }

    /// Euler derivation `θ_E = Σ xᵢ ∂ᵢ`.
    pub fn euler(nvars: usize) -> Derivation {
        Derivation { components: (0..nvars).map(|i| HomPoly::var(nvars, i)).collect(), degree: 1 }
    }

    /// Constant derivation `∂ᵢ`.
    pub fn partial(nvars: usize, i: usize) -> Derivation {
        let mut c = vec![HomPoly::zero(nvars, 0); nvars];
        c[i] = HomPoly::one(nvars);
        Derivation { components: c, degree: 0 }
    }

    /// `f · ∂ᵢ`.
    pub fn single(nvars: usize, i: usize, f: HomPoly) -> Derivation {
        let mut c = vec![HomPoly::zero(nvars, f.degree()); nvars];
        c[i] = f;
        Derivation::new(c).expect("homogeneous")
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn components(&self) -> &[HomPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(HomPoly::is_zero)
    }

    /// `θ(α)` for the linear form with coefficients `form`.
    pub fn apply(&self, form: &[Scalar]) -> HomPoly {
        let mut acc = HomPoly::zero(self.nvars(), self.degree);
        for (c, f) in form.iter().zip(&self.components) {
            if !c.is_zero() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }

    /// `θ(α_H) ∈ S·α_H`, tested by restricting `θ(α_H)` to `H`.
    pub fn is_tangent(&self, h: &Hyperplane) -> bool {
        self.apply(h.form()).restrict_to_hyperplane(h.form(), h.pivot()).is_zero()
    }

    /// Membership in `D(A)`.
    pub fn is_logarithmic(&self, a: &Arrangement) -> bool {
        a.hyperplanes().iter().all(|h| self.is_tangent(h))
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.degree, other.degree, "adding derivations of different degrees");
        Derivation {
            components: self.components.iter().zip(&other.components).map(|(a, b)| a.add(b)).collect(),
            degree: self.degree,
        }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> Derivation {
        Derivation { components: self.components.iter().map(|c| c.scale(s)).collect(), degree: self.degree }
    }

    /// `f · θ`.
    pub fn mul_poly(&self, f: &HomPoly) -> Derivation {
        Derivation {
            components: self.components.iter().map(|c| c.mul(f)).collect(),
            degree: self.degree + f.degree(),
        }
    }

    pub fn mul_monomial(&self, e: &[u32]) -> Derivation {
        Derivation {
            components: self.components.iter().map(|c| c.mul_monomial(e)).collect(),
            degree: self.degree + e.iter().sum::<u32>(),
        }
    }

    /// `θ / f` when every component is divisible by `f`.
    pub fn divide(&self, f: &HomPoly) -> Result<Derivation> {
        let deg = self.degree.checked_sub(f.degree()).ok_or(Error::NotDivisible)?;
        let comps = self
            .components
            .iter()
            .map(|c| if c.is_zero() { Ok(HomPoly::zero(self.nvars(), deg)) } else { c.exact_divide(f) })
            .collect::<Result<Vec<_>>>()?;
        Ok(Derivation { components: comps, degree: deg })
    }

    /// Coordinates: component blocks in order, each in monomial-basis order.
    pub fn to_coords(&self) -> Vec<Scalar> {
        let mut v = Vec::with_capacity(self.nvars() * dim_graded(self.nvars(), self.degree as i64));
        for c in &self.components {
            v.extend(c.to_coords());
        }
        v
    }

    pub fn from_coords(nvars: usize, degree: u32, coords: &[Scalar]) -> Derivation {
        let n = dim_graded(nvars, degree as i64);
        assert_eq!(coords.len(), n * nvars);
        let components = coords.chunks(n.max(1)).take(nvars).map(|c| HomPoly::from_coords(nvars, degree, c)).collect();
        Derivation { components, degree }
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})∂{}", i + 1)?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}] {}", self.degree, self)
    }
}

/// Linear constraints cutting `D(A)_d` out of `(Der S)_d`.
///
/// Unknowns are the derivation coordinates of [`Derivation::to_coords`]; for
/// each hyperplane the block of rows states that `θ(α_H)` vanishes on `H`
/// after substituting the pivot variable.
pub fn tangency_matrix(a: &Arrangement, d: u32) -> ExactMatrix {
    let l = a.rank();
    let monos = monomial_basis(l, d);
    let n = monos.len();
    let m = dim_graded(l - 1, d as i64);
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(a.len() * m);
    for h in a.hyperplanes() {
        let form = h.form();
        let p = h.pivot();
        let mut block = vec![vec![Scalar::zero(); l * n]; m];
        for (k, e) in monos.iter().enumerate() {
            let img = HomPoly::monomial(e.clone(), Scalar::one()).restrict_to_hyperplane(form, p);
            for (f, c) in img.terms() {
                let r = monomial_rank(f);
                for (j, a_j) in form.iter().enumerate() {
                    if !a_j.is_zero() {
                        block[r][j * n + k] = &block[r][j * n + k] + &(a_j * c);
                    }
                }
            }
        }
        rows.extend(block);
    }
    ExactMatrix::from_rows(l * n, rows).expect("rectangular")
}

/// A basis of `D(A)_d`, read off the null space of [`tangency_matrix`].
pub fn derivation_space(a: &Arrangement, d: u32) -> Vec<Derivation> {
    let l = a.rank();
    let (_, kernel) = if a.is_empty() {
        let cols = l * dim_graded(l, d as i64);
        (0, (0..cols).map(|i| {
            let mut v = vec![Scalar::zero(); cols];
            v[i] = Scalar::one();
            v
        }).collect())
    } else {
        tangency_matrix(a, d).kernel_basis()
    };
    kernel.iter().map(|v| Derivation::from_coords(l, d, v)).collect()
}
