//! Free paths between nested arrangements and the extensional checks built
//! on them.
//!
//! Intermediate arrangements are indexed by bitmasks over `A ∖ B`, with bit
//! `i` standing for the `i`-th hyperplane of the difference in the sorted
//! hyperplane order.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arrangement::{Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::freeness::{is_free, FreenessCertificate, FreenessResult};

/// Default bound on `|A ∖ B|`.
pub const MAX_DIFFERENCE: usize = 20;

/// Source of freeness verdicts. Batches let implementations evaluate in
/// parallel; results must come back in input order.
pub trait FreenessOracle {
    fn verdict(&mut self, a: &Arrangement) -> FreenessResult;

    fn verdicts(&mut self, batch: &[Arrangement]) -> Vec<FreenessResult> {
        batch.iter().map(|a| self.verdict(a)).collect()
    }
}

/// Memo table keyed by the arrangement itself (hyperplanes are normalized and
/// sorted, so equal sets give equal keys).
#[derive(Clone, Debug, Default)]
pub struct FreenessCache {
    map: BTreeMap<Arrangement, FreenessResult>,
    enabled: bool,
    hits: usize,
    misses: usize,
}

impl FreenessCache {
    pub fn new() -> Self {
        FreenessCache { enabled: true, ..Default::default() }
    }

    /// A cache that never stores anything.
    pub fn disabled() -> Self {
        FreenessCache::default()
    }

    pub fn hits(&self) -> usize {
        self.hits
    }

    pub fn misses(&self) -> usize {
        self.misses
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl FreenessOracle for FreenessCache {
    fn verdict(&mut self, a: &Arrangement) -> FreenessResult {
        if let Some(r) = self.map.get(a) {
            self.hits += 1;
            return r.clone();
        }
        self.misses += 1;
        let r = is_free(a);
        if self.enabled {
            self.map.insert(a.clone(), r.clone());
        }
        r
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathStatus {
    Found,
    None,
    Inconclusive,
}

impl PathStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            PathStatus::Found => "FOUND",
            PathStatus::None => "NONE",
            PathStatus::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathNode {
    pub arrangement: Arrangement,
    pub certificate: FreenessCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathResult {
    pub status: PathStatus,
    /// `B = A₀ ⊂ A₁ ⊂ … ⊂ A_k = A` when found, empty otherwise.
    pub chain: Vec<PathNode>,
    /// Hyperplanes of `A ∖ B` in bit order.
    pub difference: Vec<Hyperplane>,
    /// Every subset whose freeness was decided, by bitmask.
    pub explored: BTreeMap<u32, bool>,
}

fn subset(b: &Arrangement, diff: &[Hyperplane], mask: u32) -> Arrangement {
    let mut c = b.clone();
    for (i, h) in diff.iter().enumerate() {
        if mask >> i & 1 == 1 {
            c = c.add(h.clone()).expect("difference is disjoint from B");
        }
    }
    c
}

/// Breadth-first search for a free path from `B` up to `A`, with the default
/// cache and bound.
pub fn free_path(b: &Arrangement, a: &Arrangement) -> Result<PathResult> {
    free_path_with(b, a, &mut FreenessCache::new(), MAX_DIFFERENCE)
}

/// Search level by level: the free subsets of size `j` are extended by one
/// hyperplane each, in increasing bit order, and only free children survive.
/// A child's parent is the first free subset that reaches it. When no path
/// exists every subset is decided, so `explored` has `2^|A ∖ B|` entries.
pub fn free_path_with(
    b: &Arrangement,
    a: &Arrangement,
    oracle: &mut dyn FreenessOracle,
    max_difference: usize,
) -> Result<PathResult> {
    if b.rank() != a.rank() {
        return Err(Error::DimensionMismatch { expected: a.rank(), got: b.rank() });
    }
    if !b.is_subset_of(a) {
        return Err(Error::Invalid("the smaller arrangement is not contained in the larger".into()));
    }
    let diff: Vec<Hyperplane> = a.hyperplanes().iter().filter(|h| !b.contains(h)).cloned().collect();
    let k = diff.len();
    if k > max_difference.min(31) {
        return Ok(PathResult { status: PathStatus::Inconclusive, chain: Vec::new(), difference: diff, explored: BTreeMap::new() });
    }
    let full: u32 = if k == 0 { 0 } else { u32::MAX >> (32 - k) };
    let mut explored = BTreeMap::new();
    let mut certs: BTreeMap<u32, FreenessCertificate> = BTreeMap::new();

    let ends = oracle.verdicts(&[b.clone(), a.clone()]);
    for (mask, r) in [0, full].into_iter().zip(ends) {
        match r.certificate() {
            Some(c) => {
                explored.insert(mask, true);
                certs.insert(mask, c.clone());
            }
            None => return Err(Error::Invalid("path endpoints must be free".into())),
        }
    }

    let mut parent: BTreeMap<u32, u32> = BTreeMap::new();
    let mut frontier = alloc::vec![0u32];
    for _ in 0..k {
        let mut children = Vec::new();
        for &m in &frontier {
            for i in 0..k {
                let c = m | 1 << i;
                if c != m && !parent.contains_key(&c) {
                    parent.insert(c, m);
                    children.push(c);
                }
            }
        }
        children.sort_unstable();
        let pending: Vec<u32> = children.iter().copied().filter(|c| !explored.contains_key(c)).collect();
        let batch: Vec<Arrangement> = pending.iter().map(|&c| subset(b, &diff, c)).collect();
        for (c, r) in pending.iter().zip(oracle.verdicts(&batch)) {
            explored.insert(*c, r.is_free());
            if let Some(cert) = r.certificate() {
                certs.insert(*c, cert.clone());
            }
        }
        frontier = children.into_iter().filter(|c| explored[c]).collect();
        if frontier.is_empty() {
            break;
        }
    }

    if k == 0 || parent.contains_key(&full) && !frontier.is_empty() {
        let mut masks = alloc::vec![full];
        while let Some(&p) = masks.last().and_then(|m| parent.get(m)) {
            masks.push(p);
        }
        masks.reverse();
        let chain = masks
            .into_iter()
            .map(|m| PathNode { arrangement: subset(b, &diff, m), certificate: certs[&m].clone() })
            .collect();
        return Ok(PathResult { status: PathStatus::Found, chain, difference: diff, explored });
    }

    let rest: Vec<u32> = (0..=full).filter(|m| !explored.contains_key(m)).collect();
    let batch: Vec<Arrangement> = rest.iter().map(|&m| subset(b, &diff, m)).collect();
    for (m, r) in rest.into_iter().zip(oracle.verdicts(&batch)) {
        explored.insert(m, r.is_free());
    }
    Ok(PathResult { status: PathStatus::None, chain: Vec::new(), difference: diff, explored })
}

/// Checks a claimed chain: consecutive members differ by one added hyperplane,
/// the ends are `B` and `A`, and every certificate passes Saito's criterion.
pub fn verify_chain(b: &Arrangement, a: &Arrangement, chain: &[PathNode]) -> Result<()> {
    let (Some(first), Some(last)) = (chain.first(), chain.last()) else {
        return Err(Error::Verification("empty chain".into()));
    };
    if &first.arrangement != b || &last.arrangement != a {
        return Err(Error::Verification("chain endpoints differ from the inputs".into()));
    }
    for w in chain.windows(2) {
        let (x, y) = (&w[0].arrangement, &w[1].arrangement);
        if y.len() != x.len() + 1 || !x.is_subset_of(y) {
            return Err(Error::Verification("consecutive members must differ by one hyperplane".into()));
        }
    }
    for node in chain {
        crate::freeness::saito_check(&node.arrangement, &node.certificate.basis)?;
    }
    Ok(())
}

/// Outcome of the two-deletion check on one pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairReport {
    pub indices: [usize; 2],
    pub free: bool,
    pub free_without_both: bool,
    pub free_without: [bool; 2],
}

impl PairReport {
    /// Both `A` and `A ∖ {H₁, H₂}` are free.
    pub fn applies(&self) -> bool {
        self.free && self.free_without_both
    }

    pub fn passed(&self) -> bool {
        !self.applies() || self.free_without[0] || self.free_without[1]
    }
}

/// If `A` and `A ∖ {H₁, H₂}` are free, one of the single deletions must be.
pub fn verify_theorem_two(a: &Arrangement, h1: usize, h2: usize, oracle: &mut dyn FreenessOracle) -> Result<PairReport> {
    if h1 == h2 {
        return Err(Error::Invalid("the two hyperplanes must differ".into()));
    }
    let batch = [a.clone(), a.delete_many(&[h1, h2])?, a.delete(h1)?, a.delete(h2)?];
    let v: Vec<bool> = oracle.verdicts(&batch).iter().map(FreenessResult::is_free).collect();
    Ok(PairReport { indices: [h1, h2], free: v[0], free_without_both: v[1], free_without: [v[2], v[3]] })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleReport {
    pub indices: [usize; 3],
    pub free: bool,
    pub free_without_all: bool,
    /// Search outcome when both ends are free.
    pub path: Option<PathStatus>,
}

impl TripleReport {
    pub fn applies(&self) -> bool {
        self.free && self.free_without_all
    }

    pub fn passed(&self) -> bool {
        !self.applies() || self.path == Some(PathStatus::Found)
    }
}

/// In `𝕂³`, if `A` and `A ∖ {H₁, H₂, H₃}` are free there is a free path
/// between them.
pub fn verify_theorem_three(a: &Arrangement, idx: [usize; 3], oracle: &mut dyn FreenessOracle) -> Result<TripleReport> {
    if a.rank() != 3 {
        return Err(Error::Invalid("the three-deletion check is only defined in dimension 3".into()));
    }
    if idx[0] == idx[1] || idx[0] == idx[2] || idx[1] == idx[2] {
        return Err(Error::Invalid("the three hyperplanes must differ".into()));
    }
    let b = a.delete_many(&idx)?;
    let v = oracle.verdicts(&[a.clone(), b.clone()]);
    let (free, free_without_all) = (v[0].is_free(), v[1].is_free());
    let path = if free && free_without_all {
        Some(free_path_with(&b, a, oracle, MAX_DIFFERENCE)?.status)
    } else {
        None
    };
    Ok(TripleReport { indices: idx, free, free_without_all, path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{catalan, pentagon, shi, weyl, RootType};

    fn generic4() -> Arrangement {
        Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap()
    }

    #[test]
    fn trivial_path() {
        let a = Arrangement::boolean(3);
        let r = free_path(&a, &a).unwrap();
        assert_eq!(r.status, PathStatus::Found);
        assert_eq!(r.chain.len(), 1);
        verify_chain(&a, &a, &r.chain).unwrap();
    }

    #[test]
    fn boolean_into_braid_cone() {
        let b = Arrangement::boolean(3);
        let a = b.add(Hyperplane::from_ints(&[1, -1, 0]).unwrap()).unwrap();
        let a = a.add(Hyperplane::from_ints(&[1, 0, -1]).unwrap()).unwrap();
        let r = free_path(&b, &a).unwrap();
        assert_eq!(r.status, PathStatus::Found);
        assert_eq!(r.chain.len(), 3);
        verify_chain(&b, &a, &r.chain).unwrap();
    }

    #[test]
    fn rejects_bad_inputs() {
        let b = Arrangement::boolean(3);
        assert!(free_path(&generic4(), &b).is_err());
        // endpoint not free
        let c = generic4().add(Hyperplane::from_ints(&[1, 2, 5]).unwrap()).unwrap();
        assert!(free_path(&b, &c).is_err());
    }

    #[test]
    fn cap_gives_inconclusive() {
        let b = Arrangement::boolean(3);
        let a = b.add(Hyperplane::from_ints(&[1, -1, 0]).unwrap()).unwrap();
        let r = free_path_with(&b, &a, &mut FreenessCache::new(), 0).unwrap();
        assert_eq!(r.status, PathStatus::Inconclusive);
    }

    #[test]
    fn shi_to_catalan_and_cache_transparency() {
        let rs = weyl(RootType::A2);
        let s = shi(&rs, 1, 1).unwrap();
        let c = catalan(&rs, 1, 1);
        let mut cache = FreenessCache::new();
        let r = free_path_with(&s, &c, &mut cache, MAX_DIFFERENCE).unwrap();
        assert_eq!(r.status, PathStatus::Found);
        verify_chain(&s, &c, &r.chain).unwrap();
        let r2 = free_path_with(&s, &c, &mut FreenessCache::disabled(), MAX_DIFFERENCE).unwrap();
        assert_eq!(r, r2);
        for (m, v) in &r.explored {
            assert_eq!(is_free(&subset(&s, &r.difference, *m)).is_free(), *v);
        }
    }

    #[test]
    fn pentagon_has_no_path() {
        let (a, b) = pentagon();
        let r = free_path(&b, &a).unwrap();
        assert_eq!(r.status, PathStatus::None);
        assert_eq!(r.explored.len(), 16);
        assert_eq!(r.explored.values().filter(|&&v| v).count(), 2);
    }

    #[test]
    fn pair_and_triple_reports() {
        let a = Arrangement::boolean(3);
        let mut cache = FreenessCache::new();
        let r = verify_theorem_two(&a, 0, 1, &mut cache).unwrap();
        assert!(r.applies() && r.passed());
        assert!(verify_theorem_two(&a, 1, 1, &mut cache).is_err());
        let t = verify_theorem_three(&a, [0, 1, 2], &mut cache).unwrap();
        // the empty arrangement is free, so the path must exist
        assert!(t.applies());
        assert_eq!(t.path, Some(PathStatus::Found));
        let a4 = Arrangement::boolean(4);
        assert!(verify_theorem_three(&a4, [0, 1, 2], &mut cache).is_err());
    }
}
