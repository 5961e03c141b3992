//! Schema-versioned JSON documents. Every certificate embeds its arrangement
//! so that it can be checked on its own.

use serde::{Deserialize, Serialize};

use hypfree_core::freepath::{PathResult, PathStatus};
use hypfree_core::{
    Arrangement, CharPoly, Derivation, Field, FreenessResult, HomPoly, Hyperplane, Scalar, SpogCertificate, Verdict,
};

use crate::format::{field_name, parse_field};

pub const SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct DecodeError(pub String);

fn bad(msg: impl Into<String>) -> DecodeError {
    DecodeError(msg.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementDoc {
    pub field: String,
    pub rank: usize,
    pub hyperplanes: Vec<Vec<String>>,
}

impl ArrangementDoc {
    pub fn from_arrangement(a: &Arrangement) -> Self {
        ArrangementDoc {
            field: field_name(a.field()),
            rank: a.rank(),
            hyperplanes: a.hyperplanes().iter().map(|h| scalars(h.form())).collect(),
        }
    }

    pub fn decode(&self) -> Result<Arrangement, DecodeError> {
        let field = self.field()?;
        let hs = self
            .hyperplanes
            .iter()
            .map(|f| Hyperplane::new(parse_scalars(f, field)?).map_err(|e| bad(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Arrangement::new(self.rank, field, hs).map_err(|e| bad(e.to_string()))
    }

    pub fn field(&self) -> Result<Field, DecodeError> {
        parse_field(&self.field).ok_or_else(|| bad(format!("unknown field `{}`", self.field)))
    }
}

fn scalars(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

fn parse_scalars(v: &[String], field: Field) -> Result<Vec<Scalar>, DecodeError> {
    v.iter().map(|s| Scalar::parse(s, field).map_err(|e| bad(e.to_string()))).collect()
}

/// One monomial `coeff · x^exponent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub exponent: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyDoc {
    pub degree: u32,
    pub terms: Vec<TermDoc>,
}

impl PolyDoc {
    pub fn from_poly(p: &HomPoly) -> Self {
        PolyDoc {
            degree: p.degree(),
            terms: p.terms().map(|(e, c)| TermDoc { exponent: e.to_vec(), coeff: c.to_string() }).collect(),
        }
    }

    pub fn decode(&self, nvars: usize, field: Field) -> Result<HomPoly, DecodeError> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                if t.exponent.len() != nvars {
                    return Err(bad("exponent length differs from the rank"));
                }
                Ok((t.exponent.clone(), Scalar::parse(&t.coeff, field).map_err(|e| bad(e.to_string()))?))
            })
            .collect::<Result<Vec<_>, _>>()?;
        HomPoly::from_terms(nvars, self.degree, terms).map_err(|e| bad(e.to_string()))
    }
}

/// `θ = Σ components[i] ∂ᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationDoc {
    pub degree: u32,
    pub components: Vec<Vec<TermDoc>>,
}

impl DerivationDoc {
    pub fn from_derivation(d: &Derivation) -> Self {
        DerivationDoc {
            degree: d.degree(),
            components: d.components().iter().map(|p| PolyDoc::from_poly(p).terms).collect(),
        }
    }

    pub fn decode(&self, nvars: usize, field: Field) -> Result<Derivation, DecodeError> {
        if self.components.len() != nvars {
            return Err(bad("number of components differs from the rank"));
        }
        let comps = self
            .components
            .iter()
            .map(|terms| PolyDoc { degree: self.degree, terms: terms.clone() }.decode(nvars, field))
            .collect::<Result<Vec<_>, _>>()?;
        Derivation::new(comps).map_err(|e| bad(e.to_string()))
    }
}

/// Coefficients of χ(A,t), constant term first.
pub fn char_poly_coeffs(c: &CharPoly) -> Vec<i64> {
    c.coeffs.clone()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeDoc {
    pub schema: u32,
    pub tool_version: String,
    pub arrangement: ArrangementDoc,
    pub exponents: Vec<u32>,
    pub basis: Vec<DerivationDoc>,
    pub saito_constant: String,
    pub char_poly: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NotFreeDoc {
    pub schema: u32,
    pub tool_version: String,
    pub arrangement: ArrangementDoc,
    pub reason: String,
    pub char_poly: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpogDoc {
    pub schema: u32,
    pub tool_version: String,
    pub arrangement: ArrangementDoc,
    pub poexp: Vec<u32>,
    pub level: u32,
    pub generators: Vec<DerivationDoc>,
    pub relation: Vec<PolyDoc>,
    pub hilbert_checked_to: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainNodeDoc {
    pub arrangement: ArrangementDoc,
    pub exponents: Vec<u32>,
    pub basis: Vec<DerivationDoc>,
    pub saito_constant: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExploredDoc {
    pub mask: u32,
    pub free: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathDoc {
    pub schema: u32,
    pub tool_version: String,
    pub status: String,
    pub sub: ArrangementDoc,
    pub sup: ArrangementDoc,
    /// Bit `i` of a mask is `difference[i]`.
    pub difference: Vec<Vec<String>>,
    pub chain: Vec<ChainNodeDoc>,
    pub explored: Vec<ExploredDoc>,
}

/// Any certificate, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Free(FreeDoc),
    NotFree(NotFreeDoc),
    Spog(SpogDoc),
    Path(PathDoc),
}

impl Certificate {
    pub fn freeness(a: &Arrangement, r: &FreenessResult) -> Certificate {
        let arrangement = ArrangementDoc::from_arrangement(a);
        let char_poly = char_poly_coeffs(&r.char_poly);
        match &r.verdict {
            Verdict::Free(c) => Certificate::Free(FreeDoc {
                schema: SCHEMA,
                tool_version: TOOL_VERSION.into(),
                arrangement,
                exponents: c.exponents.clone(),
                basis: c.basis.iter().map(DerivationDoc::from_derivation).collect(),
                saito_constant: c.saito_constant.to_string(),
                char_poly,
            }),
            Verdict::NotFree(reason) => Certificate::NotFree(NotFreeDoc {
                schema: SCHEMA,
                tool_version: TOOL_VERSION.into(),
                arrangement,
                reason: reason.as_str().into(),
                char_poly,
            }),
        }
    }

    pub fn spog(a: &Arrangement, c: &SpogCertificate) -> Certificate {
        Certificate::Spog(SpogDoc {
            schema: SCHEMA,
            tool_version: TOOL_VERSION.into(),
            arrangement: ArrangementDoc::from_arrangement(a),
            poexp: c.poexp.clone(),
            level: c.level,
            generators: c.generators.iter().map(DerivationDoc::from_derivation).collect(),
            relation: c.relation.iter().map(PolyDoc::from_poly).collect(),
            hilbert_checked_to: c.hilbert_checked_to,
        })
    }

    pub fn path(b: &Arrangement, a: &Arrangement, r: &PathResult) -> Certificate {
        Certificate::Path(PathDoc {
            schema: SCHEMA,
            tool_version: TOOL_VERSION.into(),
            status: r.status.as_str().into(),
            sub: ArrangementDoc::from_arrangement(b),
            sup: ArrangementDoc::from_arrangement(a),
            difference: r.difference.iter().map(|h| scalars(h.form())).collect(),
            chain: r
                .chain
                .iter()
                .map(|n| ChainNodeDoc {
                    arrangement: ArrangementDoc::from_arrangement(&n.arrangement),
                    exponents: n.certificate.exponents.clone(),
                    basis: n.certificate.basis.iter().map(DerivationDoc::from_derivation).collect(),
                    saito_constant: n.certificate.saito_constant.to_string(),
                })
                .collect(),
            explored: r.explored.iter().map(|(&mask, &free)| ExploredDoc { mask, free }).collect(),
        })
    }

    pub fn schema(&self) -> u32 {
        match self {
            Certificate::Free(d) => d.schema,
            Certificate::NotFree(d) => d.schema,
            Certificate::Spog(d) => d.schema,
            Certificate::Path(d) => d.schema,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

pub fn parse_status(s: &str) -> Option<PathStatus> {
    match s {
        "FOUND" => Some(PathStatus::Found),
        "NONE" => Some(PathStatus::None),
        "INCONCLUSIVE" => Some(PathStatus::Inconclusive),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hypfree_core::{is_free, pentagon};

    #[test]
    fn free_certificate_round_trips() {
        let (_, b) = pentagon();
        let cert = Certificate::freeness(&b, &is_free(&b));
        let text = cert.to_json();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        let Certificate::Free(doc) = back else { panic!("free") };
        let field = doc.arrangement.field().unwrap();
        assert_eq!(doc.arrangement.decode().unwrap(), b);
        let basis: Vec<Derivation> = doc.basis.iter().map(|d| d.decode(3, field).unwrap()).collect();
        assert_eq!(&basis, &is_free(&b).certificate().unwrap().basis);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let a = Arrangement::boolean(2);
        let mut v: serde_json::Value = serde_json::from_str(&Certificate::freeness(&a, &is_free(&a)).to_json()).unwrap();
        v["extra"] = serde_json::json!(1);
        assert!(serde_json::from_value::<Certificate>(v).is_err());
    }
}
