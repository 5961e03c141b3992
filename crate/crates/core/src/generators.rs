//! Minimal homogeneous generators of `D(A)`, found degree by degree.

use alloc::vec;
use alloc::vec::Vec;

use crate::arrangement::Arrangement;
use crate::derivation::{derivation_space, tangency_matrix, Derivation};
use crate::matrix::Echelon;
use crate::modp::{self, ModEchelon, ModField};
use crate::poly::{dim_graded, monomial_basis, monomial_rank};

/// Minimal generators of `D(A)` up to a degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    /// Generators in nondecreasing degree order.
    pub generators: Vec<Derivation>,
    /// Last degree examined.
    pub complete_up_to: u32,
    /// `hilbert[d] = dim D(A)_d` for `d ≤ complete_up_to`.
    pub hilbert: Vec<usize>,
}

impl GeneratorSet {
    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(Derivation::degree).collect()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Span of `{m·g : g ∈ gens, deg g < d, m a monomial of degree d − deg g}`
/// inside `(Der S)_d`.
pub fn multiples_span(nvars: usize, gens: &[Derivation], d: u32) -> Echelon {
    let dim = nvars * dim_graded(nvars, d as i64);
    let mut span = Echelon::new(dim);
    for g in gens.iter().filter(|g| g.degree() <= d) {
        let monos = monomial_basis(nvars, d - g.degree());
        for m in &monos {
            if span.rank() == dim {
                return span;
            }
            span.insert(g.mul_monomial(m).to_coords());
        }
    }
    span
}

/// Incremental generator search.
///
/// At every degree `d` the multiples of the generators found so far span a
/// subspace of `D(A)_d`; a complement is chosen by trying the preferred
/// candidates first (θ_E in degree one, then any caller-supplied seeds) and
/// then the basis of `D(A)_d` in its fixed order.
pub struct GeneratorSearch<'a> {
    arrangement: &'a Arrangement,
    generators: Vec<Derivation>,
    hilbert: Vec<usize>,
    next: u32,
    seeds: Vec<Derivation>,
}

impl<'a> GeneratorSearch<'a> {
    pub fn new(arrangement: &'a Arrangement) -> Self {
        GeneratorSearch::with_seeds(arrangement, Vec::new())
    }

    /// Seeds are tried before the computed basis at their own degree; seeds
    /// that are not in `D(A)` are ignored.
    pub fn with_seeds(arrangement: &'a Arrangement, seeds: Vec<Derivation>) -> Self {
        GeneratorSearch { arrangement, generators: Vec::new(), hilbert: Vec::new(), next: 0, seeds }
    }

    pub fn generators(&self) -> &[Derivation] {
        &self.generators
    }

    pub fn hilbert(&self) -> &[usize] {
        &self.hilbert
    }

    /// Degree the next call to [`step`](Self::step) will process.
    pub fn next_degree(&self) -> u32 {
        self.next
    }

    /// Processes one degree; returns how many generators it added.
    pub fn step(&mut self) -> usize {
        let d = self.next;
        let l = self.arrangement.rank();
        self.next += 1;
        if let Some(dim) = saturated_mod_p(self.arrangement, &self.generators, d) {
            self.hilbert.push(dim);
            return 0;
        }
        let space = derivation_space(self.arrangement, d);
        self.hilbert.push(space.len());
        let mut span = multiples_span(l, &self.generators, d);
        if span.rank() == space.len() {
            return 0;
        }
        let mut candidates: Vec<Derivation> = Vec::new();
        if d == 1 {
            candidates.push(Derivation::euler(l));
        }
        candidates.extend(
            self.seeds
                .iter()
                .filter(|s| s.degree() == d && s.is_logarithmic(self.arrangement))
                .cloned(),
        );
        candidates.extend(space);
        let before = self.generators.len();
        for c in candidates {
            if c.is_zero() {
                continue;
            }
            if span.insert(c.to_coords()) {
                self.generators.push(c);
            }
        }
        self.generators.len() - before
    }

    pub fn finish(self) -> GeneratorSet {
        GeneratorSet {
            generators: self.generators,
            complete_up_to: self.next.saturating_sub(1),
            hilbert: self.hilbert,
        }
    }
}

/// `dim D(A)_d` when the multiples of `gens` fill `D(A)_d`.
///
/// Over `𝔽_p` the rank of the multiples can only drop and the kernel of the
/// tangency matrix can only grow, so equality of the two reduced counts
/// proves both are exact. `None` means "unknown", not "not saturated".
pub fn saturated_mod_p(a: &Arrangement, gens: &[Derivation], d: u32) -> Option<usize> {
    let (dim, rank) = counts_mod_p(a, gens, d, true)?;
    (rank == dim).then_some(dim)
}

/// `(dim_p, rank_p)`: the kernel dimension of the reduced tangency matrix and
/// the rank of the reduced multiples of `gens` in degree `d`. For `gens ⊂ D(A)`
/// these bracket the true values: `rank_p ≤ rank ≤ dim D(A)_d ≤ dim_p`.
/// With `stop_early` the rank count stops once it reaches `dim_p`.
pub fn counts_mod_p(a: &Arrangement, gens: &[Derivation], d: u32, stop_early: bool) -> Option<(usize, usize)> {
    let f = ModField::for_field(a.field())?;
    let p = f.prime();
    let t = tangency_matrix(a, d);
    let cols = t.cols();
    let rows = (0..t.rows()).map(|r| f.reduce_vec(t.row(r))).collect::<Option<Vec<_>>>()?;
    let dim = cols - modp::rank_dense(p, cols, rows);
    let nvars = a.rank();
    let n = dim_graded(nvars, d as i64);
    let mut span = ModEchelon::new(p, cols);
    for g in gens.iter().filter(|g| g.degree() <= d) {
        let base = f.reduce_vec(&g.to_coords())?;
        let gd = dim_graded(nvars, g.degree() as i64);
        let src = monomial_basis(nvars, g.degree());
        for m in monomial_basis(nvars, d - g.degree()) {
            if stop_early && span.rank() == dim {
                return Some((dim, dim));
            }
            let mut v = vec![0u64; cols];
            for (k, e) in src.iter().enumerate() {
                let shifted: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                let r = monomial_rank(&shifted);
                for j in 0..nvars {
                    v[j * n + r] = base[j * gd + k];
                }
            }
            span.insert(v);
        }
    }
    Some((dim, span.rank()))
}

/// `dim D(A)_d` if it equals `expected` and the multiples of `gens ⊂ D(A)`
/// reach it; decided modulo a prime when the bracket closes, exactly otherwise.
pub fn spans_with_dimension(a: &Arrangement, gens: &[Derivation], d: u32, expected: usize) -> bool {
    if let Some((dim, rank)) = counts_mod_p(a, gens, d, false) {
        if dim == expected && rank == expected {
            return true;
        }
        if rank > expected || dim < expected {
            return false;
        }
    }
    let dim = derivation_space(a, d).len();
    dim == expected && multiples_span(a.rank(), gens, d).rank() == expected
}

/// Whether `gens ⊂ D(A)` span `D(A)_d` as an `S`-module in degree `d`.
pub fn spans_degree(a: &Arrangement, gens: &[Derivation], d: u32) -> bool {
    if saturated_mod_p(a, gens, d).is_some() {
        return true;
    }
    let dim = derivation_space(a, d).len();
    multiples_span(a.rank(), gens, d).rank() == dim
}

/// Minimal generators of `D(A)` in degrees `0..=d_max`.
pub fn minimal_generators(a: &Arrangement, d_max: u32) -> GeneratorSet {
    let mut search = GeneratorSearch::new(a);
    while search.next_degree() <= d_max {
        search.step();
    }
    search.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::HomPoly;

    #[test]
    fn boolean_generators() {
        let g = minimal_generators(&Arrangement::boolean(3), 3);
        assert_eq!(g.degrees(), alloc::vec![1, 1, 1]);
        // θ_E is preferred, so the set is {θ_E, ·, ·}
        assert_eq!(g.generators[0], Derivation::euler(3));
        assert_eq!(g.hilbert, alloc::vec![0, 3, 9, 18]);
        let x = |i| HomPoly::var(3, i);
        let mut span = Echelon::new(9);
        for th in &g.generators {
            span.insert(th.to_coords());
        }
        for i in 0..3 {
            assert!(span.contains(&Derivation::single(3, i, x(i)).to_coords()));
        }
    }

    #[test]
    fn generic_four_planes_need_four_generators() {
        let a = Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let g = minimal_generators(&a, 4);
        assert_eq!(g.degrees(), alloc::vec![1, 2, 2, 2]);
    }
}
