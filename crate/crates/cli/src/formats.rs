//! File formats and text syntax: highest-weight parsing, the vector-set
//! JSON document, and the canonical certificate JSON. Canonical form means
//! compact serialization with alphabetically ordered keys, so re-emitting
//! a parsed document is byte-identical.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use satset_core::certify::{
    DiscriminatingFunction, Discriminator, HnCertificate, NssCertificate,
};
use satset_core::linalg::{IntVector, RationalVector};
use satset_core::rootsystem::{Family, SignedPermutation, Weight};
use satset_core::saturation::{EnssWitness, VectorSet};

pub fn parse_family(s: &str) -> Result<Family, String> {
    match s.to_ascii_uppercase().as_str() {
        "B" => Ok(Family::B),
        "C" => Ok(Family::C),
        "D" => Ok(Family::D),
        other => Err(format!("unknown family '{}', expected B, C, or D", other)),
    }
}

/// Parse a highest weight: either comma-separated rationals with
/// denominator 1 or 2 (`"3/2,1/2"`), or the doubled-integer form
/// (`"d2:3,1"`).
pub fn parse_lambda(s: &str) -> Result<Weight, String> {
    if let Some(rest) = s.strip_prefix("d2:") {
        let coords = rest
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad doubled coordinate '{}': {}", t, e)))
            .collect::<Result<Vec<i64>, String>>()?;
        if coords.is_empty() {
            return Err("empty weight".into());
        }
        return Ok(Weight::from_doubled_i64(&coords));
    }
    let mut doubled = Vec::new();
    for t in s.split(',') {
        let t = t.trim();
        let val = if let Some((num, den)) = t.split_once('/') {
            if den.trim() != "2" {
                return Err(format!("denominator of '{}' must be 2", t));
            }
            num.trim()
                .parse::<i64>()
                .map_err(|e| format!("bad coordinate '{}': {}", t, e))?
        } else {
            2 * t
                .parse::<i64>()
                .map_err(|e| format!("bad coordinate '{}': {}", t, e))?
        };
        doubled.push(val);
    }
    if doubled.is_empty() {
        return Err("empty weight".into());
    }
    Ok(Weight::from_doubled_i64(&doubled))
}

fn big_to_i64(x: &BigInt) -> Result<i64, String> {
    i64::try_from(x).map_err(|_| format!("value {} exceeds the file format's integer range", x))
}

fn vec_to_i64(v: &IntVector) -> Result<Vec<i64>, String> {
    v.coords().iter().map(big_to_i64).collect()
}

/// The vector-set document: coordinates divided by `denominator` give the
/// actual rational vectors. Keys are alphabetical for canonical output.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VectorSetDoc {
    pub denominator: u8,
    pub vectors: Vec<Vec<i64>>,
}

impl VectorSetDoc {
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<VectorSetDoc, String> {
        let doc: VectorSetDoc =
            serde_json::from_str(s).map_err(|e| format!("malformed vector-set file: {}", e))?;
        if doc.denominator != 1 && doc.denominator != 2 {
            return Err("denominator must be 1 or 2".into());
        }
        let dim = doc.vectors.first().map(|v| v.len()).unwrap_or(0);
        if doc.vectors.iter().any(|v| v.len() != dim) {
            return Err("vectors must share one dimension".into());
        }
        Ok(doc)
    }

    /// The working set (zero rows stripped, duplicates collapsed) and a
    /// note when stripping changed anything.
    pub fn to_vector_set(&self) -> (VectorSet, bool) {
        let dim = self.vectors.first().map(|v| v.len()).unwrap_or(0);
        let vectors: Vec<IntVector> = self.vectors.iter().map(|v| IntVector::from_i64(v)).collect();
        let set = VectorSet::new(dim, vectors);
        let stripped = set.len() != self.vectors.len();
        (set, stripped)
    }
}

/// The discriminator in certificate JSON: a discriminating functional
/// (`{"f":[..]}`) or a positive functional with its induced search bound
/// (`{"bound":..,"g":[..]}`).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum DiscriminatorDoc {
    Function { f: Vec<i64> },
    Proof { bound: i64, g: Vec<i64> },
}

/// A signed permutation in certificate JSON.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SignedPermDoc {
    pub flip: Vec<bool>,
    pub perm: Vec<usize>,
}

/// The method payload of a hereditary-normality certificate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum MethodDoc {
    Unimodular {
        volume: i64,
    },
    Structural {
        bases_checked: u64,
        group: Vec<SignedPermDoc>,
        volume: i64,
    },
    Exhaustive {
        subsets_examined: u64,
    },
}

/// A certificate document: `kind` is `"nss"` (non-saturation witness) or
/// `"hn"` (hereditary normality). Unused fields are empty for `"hn"`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertificateDoc {
    pub context: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discriminator: Option<DiscriminatorDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub indep: Vec<usize>,
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub set: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub v0: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub z: Vec<i64>,
}

impl CertificateDoc {
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<CertificateDoc, String> {
        serde_json::from_str(s).map_err(|e| format!("malformed certificate file: {}", e))
    }

    pub fn from_nss(cert: &NssCertificate) -> Result<CertificateDoc, String> {
        let w = &cert.witness;
        let q: Vec<String> = w
            .q
            .coords()
            .iter()
            .map(|r| format!("{}/{}", r.numer(), r.denom()))
            .collect();
        let discriminator = match &cert.discriminator {
            Discriminator::Function(f) => DiscriminatorDoc::Function {
                f: vec_to_i64(&f.f)?,
            },
            Discriminator::ExhaustiveProof { g, bound } => DiscriminatorDoc::Proof {
                bound: big_to_i64(bound)?,
                g: vec_to_i64(g)?,
            },
        };
        Ok(CertificateDoc {
            context: cert.context.clone(),
            discriminator: Some(discriminator),
            indep: w.indep_indices.clone(),
            kind: "nss".into(),
            method: None,
            q,
            set: w.set.iter().map(vec_to_i64).collect::<Result<_, _>>()?,
            v0: vec_to_i64(&w.v0)?,
            z: w.z.iter().map(big_to_i64).collect::<Result<_, _>>()?,
        })
    }

    pub fn from_hn(context: &str, cert: &HnCertificate) -> Result<CertificateDoc, String> {
        let method = match cert {
            HnCertificate::Unimodular { volume } => MethodDoc::Unimodular {
                volume: big_to_i64(volume)?,
            },
            HnCertificate::Ratio2Structural {
                volume,
                bases_checked,
                group,
            } => MethodDoc::Structural {
                bases_checked: *bases_checked,
                group: group
                    .iter()
                    .map(|g| SignedPermDoc {
                        flip: g.flip.clone(),
                        perm: g.perm.clone(),
                    })
                    .collect(),
                volume: big_to_i64(volume)?,
            },
            HnCertificate::Exhaustive { subsets_examined } => MethodDoc::Exhaustive {
                subsets_examined: *subsets_examined,
            },
        };
        Ok(CertificateDoc {
            context: context.into(),
            discriminator: None,
            indep: Vec::new(),
            kind: "hn".into(),
            method: Some(method),
            q: Vec::new(),
            set: Vec::new(),
            v0: Vec::new(),
            z: Vec::new(),
        })
    }

    pub fn to_nss(&self) -> Result<NssCertificate, String> {
        if self.kind != "nss" {
            return Err(format!("expected an nss certificate, found kind '{}'", self.kind));
        }
        let q_coords = self
            .q
            .iter()
            .map(|s| {
                let (num, den) = s
                    .split_once('/')
                    .ok_or_else(|| format!("bad rational '{}'", s))?;
                let n: i64 = num.parse().map_err(|e| format!("bad rational '{}': {}", s, e))?;
                let d: i64 = den.parse().map_err(|e| format!("bad rational '{}': {}", s, e))?;
                if d <= 0 {
                    return Err(format!("bad rational '{}': denominator must be positive", s));
                }
                Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
            })
            .collect::<Result<Vec<_>, String>>()?;
        let discriminator = match self
            .discriminator
            .as_ref()
            .ok_or("nss certificate needs a discriminator")?
        {
            DiscriminatorDoc::Function { f } => Discriminator::Function(DiscriminatingFunction {
                f: IntVector::from_i64(f),
            }),
            DiscriminatorDoc::Proof { bound, g } => {
                if bound.is_negative() {
                    return Err("search bound must be nonnegative".into());
                }
                Discriminator::ExhaustiveProof {
                    g: IntVector::from_i64(g),
                    bound: BigInt::from(*bound),
                }
            }
        };
        Ok(NssCertificate {
            context: self.context.clone(),
            witness: EnssWitness {
                set: self.set.iter().map(|v| IntVector::from_i64(v)).collect(),
                indep_indices: self.indep.clone(),
                v0: IntVector::from_i64(&self.v0),
                q: RationalVector::new(q_coords),
                z: self.z.iter().map(|&c| BigInt::from(c)).collect(),
            },
            discriminator,
        })
    }

    pub fn to_hn(&self) -> Result<HnCertificate, String> {
        if self.kind != "hn" {
            return Err(format!("expected an hn certificate, found kind '{}'", self.kind));
        }
        let method = self.method.as_ref().ok_or("hn certificate needs a method")?;
        Ok(match method {
            MethodDoc::Unimodular { volume } => HnCertificate::Unimodular {
                volume: BigInt::from(*volume),
            },
            MethodDoc::Structural {
                bases_checked,
                group,
                volume,
            } => HnCertificate::Ratio2Structural {
                volume: BigInt::from(*volume),
                bases_checked: *bases_checked,
                group: group
                    .iter()
                    .map(|g| SignedPermutation {
                        perm: g.perm.clone(),
                        flip: g.flip.clone(),
                    })
                    .collect(),
            },
            MethodDoc::Exhaustive { subsets_examined } => HnCertificate::Exhaustive {
                subsets_examined: *subsets_examined,
            },
        })
    }
}

/// The vector-set document of a weight set: all members (including zero)
/// in canonical scaling.
pub fn weight_set_doc(ws: &satset_core::rootsystem::WeightSet) -> Result<VectorSetDoc, String> {
    let (denominator, vectors) = ws.canonical_vectors();
    Ok(VectorSetDoc {
        denominator,
        vectors: vectors.iter().map(vec_to_i64).collect::<Result<_, _>>()?,
    })
}
