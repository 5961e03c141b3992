//! Re-verification of certificates from their JSON form alone.

use std::collections::{BTreeMap, BTreeSet};

use hypfree_core::freepath::{verify_chain, PathNode, PathStatus};
use hypfree_core::spog::verify_spog_certificate;
use hypfree_core::{
    char_poly, saito_check, Arrangement, CharPoly, Derivation, Field, FreenessCertificate, Hyperplane, Scalar,
    SpogCertificate,
};
use thiserror::Error;

use crate::json::{parse_status, Certificate, ChainNodeDoc, DecodeError, DerivationDoc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("malformed certificate: {0}")]
    Decode(#[from] DecodeError),
    #[error("certificate rejected: {0}")]
    Rejected(String),
}

fn reject(msg: impl Into<String>) -> CheckError {
    CheckError::Rejected(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub kind: &'static str,
    pub summary: String,
}

pub fn check_json(text: &str) -> Result<CheckReport, CheckError> {
    let cert: Certificate = serde_json::from_str(text).map_err(|e| CheckError::Decode(DecodeError(e.to_string())))?;
    check_certificate(&cert)
}

fn decode_basis(docs: &[DerivationDoc], nvars: usize, field: Field) -> Result<Vec<Derivation>, CheckError> {
    Ok(docs.iter().map(|d| d.decode(nvars, field)).collect::<Result<Vec<_>, _>>()?)
}

fn sorted_degrees(basis: &[Derivation]) -> Vec<u32> {
    let mut d: Vec<u32> = basis.iter().map(Derivation::degree).collect();
    d.sort_unstable();
    d
}

/// Saito's criterion, the stated constant and exponents, and χ = ∏ (t − dᵢ).
fn check_free_parts(
    a: &Arrangement,
    basis: &[Derivation],
    exponents: &[u32],
    constant: &str,
) -> Result<FreenessCertificate, CheckError> {
    let c = saito_check(a, basis).map_err(|e| reject(format!("Saito criterion: {e}")))?;
    let stated = Scalar::parse(constant, a.field()).map_err(|e| reject(e.to_string()))?;
    if stated != c {
        return Err(reject(format!("determinant is {c}·Q, certificate states {stated}·Q")));
    }
    if sorted_degrees(basis) != exponents {
        return Err(reject("exponents differ from the basis degrees"));
    }
    Ok(FreenessCertificate { basis: basis.to_vec(), exponents: exponents.to_vec(), saito_constant: c })
}

pub fn check_certificate(cert: &Certificate) -> Result<CheckReport, CheckError> {
    if cert.schema() != crate::json::SCHEMA {
        return Err(CheckError::Schema(cert.schema()));
    }
    match cert {
        Certificate::Free(doc) => {
            let a = doc.arrangement.decode()?;
            let basis = decode_basis(&doc.basis, a.rank(), a.field())?;
            check_free_parts(&a, &basis, &doc.exponents, &doc.saito_constant)?;
            if doc.char_poly != CharPoly::from_roots(&doc.exponents).coeffs {
                return Err(reject("characteristic polynomial does not factor over the exponents"));
            }
            Ok(CheckReport { kind: "free", summary: format!("FREE exponents {:?} verified", doc.exponents) })
        }
        Certificate::NotFree(doc) => {
            let a = doc.arrangement.decode()?;
            let chi = char_poly(&a);
            if chi.coeffs != doc.char_poly {
                return Err(reject("characteristic polynomial differs"));
            }
            match doc.reason.as_str() {
                "char poly" if chi.nonneg_integer_roots().is_none() => Ok(CheckReport {
                    kind: "not_free",
                    summary: "NOT_FREE verified: χ has no factorization over non-negative integers".into(),
                }),
                "char poly" => Err(reject("χ factors, so it does not witness non-freeness")),
                "generator degrees" if chi.nonneg_integer_roots().is_some() => Ok(CheckReport {
                    kind: "not_free",
                    summary: "NOT_FREE consistent: χ factors; the verdict rests on the generator degrees".into(),
                }),
                "generator degrees" => Err(reject("χ does not factor, so the stated reason is wrong")),
                r => Err(reject(format!("unknown reason `{r}`"))),
            }
        }
        Certificate::Spog(doc) => {
            let a = doc.arrangement.decode()?;
            let field = a.field();
            let generators = decode_basis(&doc.generators, a.rank(), field)?;
            let relation = doc.relation.iter().map(|p| p.decode(a.rank(), field)).collect::<Result<Vec<_>, _>>()?;
            let cert = SpogCertificate {
                poexp: doc.poexp.clone(),
                level: doc.level,
                generators,
                relation,
                hilbert_checked_to: doc.hilbert_checked_to,
            };
            verify_spog_certificate(&a, &cert).map_err(|e| reject(e.to_string()))?;
            Ok(CheckReport {
                kind: "spog",
                summary: format!(
                    "SPOG POexp {:?} level {} verified through degree {}",
                    doc.poexp, doc.level, doc.hilbert_checked_to
                ),
            })
        }
        Certificate::Path(doc) => {
            let b = doc.sub.decode()?;
            let a = doc.sup.decode()?;
            if !b.is_subset_of(&a) {
                return Err(reject("sub is not contained in sup"));
            }
            let field = a.field();
            let diff = doc
                .difference
                .iter()
                .map(|f| {
                    let v = f.iter().map(|s| Scalar::parse(s, field)).collect::<Result<Vec<_>, _>>();
                    Hyperplane::new(v.map_err(|e| reject(e.to_string()))?).map_err(|e| reject(e.to_string()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let expected: Vec<&Hyperplane> = a.hyperplanes().iter().filter(|h| !b.contains(h)).collect();
            if diff.iter().collect::<Vec<_>>() != expected {
                return Err(reject("difference list differs from sup ∖ sub"));
            }
            match parse_status(&doc.status) {
                Some(PathStatus::Found) => check_chain(&b, &a, &doc.chain),
                Some(PathStatus::None) => check_exhaustive(diff.len(), &doc.explored),
                Some(PathStatus::Inconclusive) => Ok(CheckReport {
                    kind: "path",
                    summary: "INCONCLUSIVE: nothing to verify".into(),
                }),
                None => Err(reject(format!("unknown status `{}`", doc.status))),
            }
        }
    }
}

fn check_chain(b: &Arrangement, a: &Arrangement, chain: &[ChainNodeDoc]) -> Result<CheckReport, CheckError> {
    let mut nodes = Vec::new();
    for n in chain {
        let x = n.arrangement.decode()?;
        let basis = decode_basis(&n.basis, x.rank(), x.field())?;
        let certificate = check_free_parts(&x, &basis, &n.exponents, &n.saito_constant)?;
        nodes.push(PathNode { arrangement: x, certificate });
    }
    verify_chain(b, a, &nodes).map_err(|e| reject(e.to_string()))?;
    Ok(CheckReport { kind: "path", summary: format!("FOUND chain of {} free arrangements verified", nodes.len()) })
}

/// A NONE answer lists every subset once, both ends free, and no chain of
/// free subsets connects them.
fn check_exhaustive(k: usize, explored: &[crate::json::ExploredDoc]) -> Result<CheckReport, CheckError> {
    let total = 1u64 << k;
    let map: BTreeMap<u32, bool> = explored.iter().map(|e| (e.mask, e.free)).collect();
    if map.len() != explored.len() || map.len() as u64 != total || map.keys().any(|&m| u64::from(m) >= total) {
        return Err(reject(format!("explored map must list each of the {total} subsets once")));
    }
    let full = (total - 1) as u32;
    if !map[&0] || !map[&full] {
        return Err(reject("both ends must be marked free"));
    }
    let mut reached: BTreeSet<u32> = BTreeSet::from([0]);
    let mut frontier = vec![0u32];
    while let Some(m) = frontier.pop() {
        for i in 0..k {
            let c = m | 1 << i;
            if c != m && map[&c] && reached.insert(c) {
                frontier.push(c);
            }
        }
    }
    if reached.contains(&full) {
        return Err(reject("the explored map contains a free chain"));
    }
    Ok(CheckReport { kind: "path", summary: format!("NONE verified: all {total} subsets explored, no free chain") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypfree_core::freepath::free_path;
    use hypfree_core::spog::spog_check;
    use hypfree_core::{is_free, pentagon};

    #[test]
    fn emitted_certificates_check() {
        let a = Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[1, -1, 0], &[0, 0, 1]]).unwrap();
        let c = Certificate::freeness(&a, &is_free(&a));
        check_json(&c.to_json()).unwrap();

        let g = Arrangement::from_int_forms(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let nf = Certificate::freeness(&g, &is_free(&g));
        assert_eq!(check_json(&nf.to_json()).unwrap().kind, "not_free");
        let s = spog_check(&g, 4);
        let sc = Certificate::spog(&g, s.certificate().unwrap());
        check_json(&sc.to_json()).unwrap();

        let b = Arrangement::boolean(3);
        let p = free_path(&b, &b.add(Hyperplane::from_ints(&[1, -1, 0]).unwrap()).unwrap()).unwrap();
        let pc = Certificate::path(&b, &p.chain.last().unwrap().arrangement, &p);
        check_json(&pc.to_json()).unwrap();
    }

    #[test]
    fn tampering_is_detected() {
        let a = Arrangement::boolean(3);
        let Certificate::Free(mut doc) = Certificate::freeness(&a, &is_free(&a)) else { panic!() };
        doc.saito_constant = "2".into();
        assert!(check_certificate(&Certificate::Free(doc.clone())).is_err());
        doc.saito_constant = "1".into();
        doc.basis.swap(0, 1);
        doc.basis[1] = doc.basis[0].clone();
        assert!(check_certificate(&Certificate::Free(doc)).is_err());
    }

    #[test]
    fn pentagon_none_certificate() {
        let (a, b) = pentagon();
        let r = free_path(&b, &a).unwrap();
        let c = Certificate::path(&b, &a, &r);
        let rep = check_json(&c.to_json()).unwrap();
        assert!(rep.summary.contains("16"));
        let Certificate::Path(mut doc) = c else { panic!() };
        doc.explored.pop();
        assert!(check_certificate(&Certificate::Path(doc)).is_err());
    }
}
