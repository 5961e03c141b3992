//! Homogeneous multivariate polynomials over [`Scalar`].

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

/// `C(n, k)` in `u64`; the sizes used here stay far from overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `dim S_d` for `S = 𝕂[x₁..x_ℓ]`; zero for negative `d`.
pub fn dim_graded(nvars: usize, d: i64) -> usize {
    if d < 0 || nvars == 0 {
        return usize::from(d == 0);
    }
    binomial(d as u64 + nvars as u64 - 1, nvars as u64 - 1) as usize
}

/// All exponent vectors of total degree `d` in `nvars` variables, in
/// graded-lexicographic order (`x₁` largest): for ℓ = 2, d = 2 this is
/// `[(2,0), (1,1), (0,2)]`.
pub fn monomial_basis(nvars: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::with_capacity(dim_graded(nvars, d as i64));
    let mut cur = vec![0u32; nvars];
    fill(&mut out, &mut cur, 0, d);
    out
}

fn fill(out: &mut Vec<Exponent>, cur: &mut Exponent, pos: usize, rem: u32) {
    if pos + 1 >= cur.len() {
        if let Some(last) = cur.last_mut() {
            *last = rem;
            out.push(cur.clone());
        } else if rem == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for v in (0..=rem).rev() {
        cur[pos] = v;
        fill(out, cur, pos + 1, rem - v);
    }
    cur[pos] = 0;
}

/// Position of `e` in [`monomial_basis`] for its own degree.
pub fn monomial_rank(e: &[u32]) -> usize {
    let n = e.len();
    let mut rem: u32 = e.iter().sum();
    let mut rank = 0usize;
    for (i, &ei) in e.iter().enumerate().take(n.saturating_sub(1)) {
        let tail = (n - i - 1) as i64;
        // vectors with a larger entry at position i come first
        for v in (ei + 1)..=rem {
            rank += dim_graded(tail as usize, (rem - v) as i64);
        }
        rem -= ei;
    }
    rank
}

/// A homogeneous polynomial. Zero coefficients are never stored; the zero
/// polynomial of any degree is the empty map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Exponent, Scalar>,
}

impl HomPoly {
    pub fn zero(nvars: usize, degree: u32) -> HomPoly {
        HomPoly { nvars, degree, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> HomPoly {
        let mut p = HomPoly::zero(nvars, 0);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> HomPoly {
        HomPoly::constant(nvars, Scalar::one())
    }

    /// `c · x^e`.
    pub fn monomial(e: Exponent, c: Scalar) -> HomPoly {
        let degree = e.iter().sum();
        let mut p = HomPoly::zero(e.len(), degree);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    /// The variable `x_{i+1}` (0-based `i`).
    pub fn var(nvars: usize, i: usize) -> HomPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        HomPoly::monomial(e, Scalar::one())
    }

    /// `Σ cᵢ xᵢ`.
    pub fn linear(coeffs: &[Scalar]) -> HomPoly {
        let n = coeffs.len();
        let mut p = HomPoly::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; exponents must share one degree.
    pub fn from_terms(nvars: usize, degree: u32, terms: impl IntoIterator<Item = (Exponent, Scalar)>) -> Result<HomPoly> {
        let mut p = HomPoly::zero(nvars, degree);
        for (e, c) in terms {
            if e.len() != nvars || e.iter().sum::<u32>() != degree {
                return Err(Error::NonHomogeneous);
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Builds from coordinates in [`monomial_basis`] order.
    pub fn from_coords(nvars: usize, degree: u32, coords: &[Scalar]) -> HomPoly {
        let basis = monomial_basis(nvars, degree);
        debug_assert_eq!(basis.len(), coords.len());
        let mut p = HomPoly::zero(nvars, degree);
        for (e, c) in basis.into_iter().zip(coords) {
            if !c.is_zero() {
                p.terms.insert(e, c.clone());
            }
        }
        p
    }

    /// Coordinates in [`monomial_basis`] order.
    pub fn to_coords(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim_graded(self.nvars, self.degree as i64)];
        for (e, c) in &self.terms {
            v[monomial_rank(e)] = c.clone();
        }
        v
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// The constant value of a degree-0 polynomial.
    pub fn as_constant(&self) -> Option<Scalar> {
        (self.degree == 0).then(|| self.coeff(&vec![0; self.nvars]))
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &Scalar)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, e: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &HomPoly) {
        assert_eq!(self.nvars, other.nvars, "polynomials in different rings");
        assert!(
            self.degree == other.degree || self.is_zero() || other.is_zero(),
            "adding polynomials of degrees {} and {}",
            self.degree,
            other.degree
        );
    }

    /// Sum; a zero operand adopts the degree of the other.
    pub fn add(&self, other: &HomPoly) -> HomPoly {
        self.check_compatible(other);
        if self.is_zero() {
            return other.clone();
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HomPoly) -> HomPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> HomPoly {
        HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> HomPoly {
        if s.is_zero() {
            return HomPoly::zero(self.nvars, self.degree);
        }
        HomPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        assert_eq!(self.nvars, other.nvars, "polynomials in different rings");
        let mut out = HomPoly::zero(self.nvars, self.degree + other.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by the monomial `x^e`.
    pub fn mul_monomial(&self, e: &[u32]) -> HomPoly {
        HomPoly {
            nvars: self.nvars,
            degree: self.degree + e.iter().sum::<u32>(),
            terms: self
                .terms
                .iter()
                .map(|(f, c)| (f.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> HomPoly {
        let mut acc = HomPoly::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = &t * x;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Exact quotient `self / q`.
    ///
    /// Runs the division algorithm against the lexicographic leading term of
    /// `q`; for a single divisor a nonzero remainder step means `q ∤ self`.
    /// The quotient is re-multiplied before being returned.
    pub fn exact_divide(&self, q: &HomPoly) -> Result<HomPoly> {
        if q.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert_eq!(self.nvars, q.nvars, "polynomials in different rings");
        if q.degree > self.degree {
            return Err(Error::NotDivisible);
        }
        let qdeg = self.degree - q.degree;
        let (lq_e, lq_c) = q.leading_term().expect("nonzero");
        let lq_inv = lq_c.inv().expect("nonzero leading coefficient");
        let mut rem = self.clone();
        let mut quot = HomPoly::zero(self.nvars, qdeg);
        while let Some((e, c)) = rem.leading_term() {
            if !e.iter().zip(lq_e).all(|(a, b)| a >= b) {
                return Err(Error::NotDivisible);
            }
            let m: Exponent = e.iter().zip(lq_e).map(|(a, b)| a - b).collect();
            let coef = c * &lq_inv;
            rem = rem.sub(&q.mul_monomial(&m).scale(&coef));
            quot.add_term(m, coef);
        }
        if &quot.mul(q) != self {
            return Err(Error::NotDivisible);
        }
        Ok(quot)
    }

    /// Substitutes `x_p = −Σ_{j≠p} a_j x_j` for a form with `a_p = 1`, returning a
    /// polynomial in the remaining `nvars − 1` variables (original order kept).
    pub fn restrict_to_hyperplane(&self, form: &[Scalar], pivot: usize) -> HomPoly {
        assert_eq!(form.len(), self.nvars);
        debug_assert!(form[pivot].is_one());
        let image: Vec<Scalar> =
            (0..self.nvars).filter(|&j| j != pivot).map(|j| -&form[j]).collect();
        let sub = HomPoly::linear(&image);
        let mut powers = vec![HomPoly::one(self.nvars - 1)];
        let mut out = HomPoly::zero(self.nvars - 1, self.degree);
        for (e, c) in &self.terms {
            let k = e[pivot] as usize;
            while powers.len() <= k {
                let next = powers.last().expect("nonempty").mul(&sub);
                powers.push(next);
            }
            let rest: Exponent =
                e.iter().enumerate().filter(|&(j, _)| j != pivot).map(|(_, &v)| v).collect();
            let term = powers[k].mul_monomial(&rest).scale(c);
            out = out.add(&term);
        }
        out
    }

    /// Embeds a polynomial in `nvars` variables into `nvars + 1` variables by
    /// inserting an unused variable at position `pivot`.
    pub fn lift(&self, pivot: usize) -> HomPoly {
        HomPoly {
            nvars: self.nvars + 1,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = e.clone();
                    f.insert(pivot, 0);
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Reduction modulo a prime (rational coefficients only).
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        use crate::rational::{mulmod, powmod};
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = c.mod_prime(p)?;
            for (&x, &k) in point.iter().zip(e) {
                t = mulmod(t, powmod(x, k as u64, p), p);
            }
            acc = (acc + t) % p;
        }
        Some(acc)
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let is_const = e.iter().all(|&v| v == 0);
            if is_const {
                write!(f, "({c})")?;
                continue;
            }
            if !c.is_one() {
                write!(f, "({c})*")?;
            }
            let mut first = true;
            for (i, &v) in e.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                if v == 1 {
                    write!(f, "x{}", i + 1)?;
                } else {
                    write!(f, "x{}^{}", i + 1, v)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> HomPoly {
        HomPoly::var(3, i)
    }

    #[test]
    fn monomial_basis_examples() {
        assert_eq!(monomial_basis(3, 0), vec![vec![0, 0, 0]]);
        assert_eq!(monomial_basis(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomial_basis(3, 5).len(), 21);
        assert_eq!(monomial_basis(1, 4), vec![vec![4]]);
    }

    #[test]
    fn rank_matches_basis_position() {
        for n in 1..5 {
            for d in 0..6 {
                for (i, e) in monomial_basis(n, d).iter().enumerate() {
                    assert_eq!(monomial_rank(e), i);
                }
            }
        }
    }

    #[test]
    fn divide_difference_of_squares() {
        let p = HomPoly::var(2, 0).pow(2).sub(&HomPoly::var(2, 1).pow(2));
        let q = HomPoly::var(2, 0).sub(&HomPoly::var(2, 1));
        let r = p.exact_divide(&q).unwrap();
        assert_eq!(r, HomPoly::var(2, 0).add(&HomPoly::var(2, 1)));
    }

    #[test]
    fn divide_failures() {
        let p = HomPoly::var(2, 0).pow(2);
        assert_eq!(p.exact_divide(&HomPoly::var(2, 1)), Err(Error::NotDivisible));
        assert_eq!(p.exact_divide(&HomPoly::zero(2, 1)), Err(Error::DivisionByZero));
        let z = HomPoly::zero(2, 3);
        assert_eq!(z.exact_divide(&HomPoly::var(2, 1)).unwrap(), HomPoly::zero(2, 2));
    }

    #[test]
    fn restriction_substitutes_pivot() {
        // (x1 + x2 + x3) restricted to x1 = -x2 vanishes
        let form = [Scalar::one(), Scalar::one(), Scalar::zero()];
        let p = x(0).add(&x(1)).add(&x(2));
        let r = p.restrict_to_hyperplane(&form, 0);
        assert_eq!(r, HomPoly::var(2, 1));
        assert_eq!(r.lift(0), x(2));
    }

    #[test]
    fn coords_round_trip() {
        let p = x(0).mul(&x(1)).scale(&Scalar::from_int(3)).add(&x(2).pow(2));
        let v = p.to_coords();
        assert_eq!(HomPoly::from_coords(3, 2, &v), p);
    }
}
