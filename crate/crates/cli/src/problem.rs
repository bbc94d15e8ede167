//! Problem file schema and name resolution.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use serde_with::{serde_as, DisplayFromStr};

use ordspace::convergence::SeqFamily;
use ordspace::gallery::{ECSeq, GalleryFamily, GalleryOp, GallerySpace};
use ordspace::linalg::RatMatrix;
use ordspace::operator::LinOp;
use ordspace::rational::{parse_rat, Rat, RatVector};
use ordspace::semiorder::{GallerySemiOrder, SemiOrderSpace};
use ordspace::space::{Cone, OrderedSpace};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub version: u32,
    #[serde(default)]
    pub spaces: BTreeMap<String, SpaceDef>,
    #[serde(default)]
    pub semiorder_spaces: BTreeMap<String, SemiOrderDef>,
    #[serde(default)]
    pub operators: BTreeMap<String, OperatorDef>,
    #[serde(default)]
    pub families: BTreeMap<String, FamilyDef>,
    #[serde(default)]
    pub queries: Vec<Query>,
}

#[serde_as]
#[derive(Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SpaceDef {
    Named(String),
    Generators {
        #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
        generators: Vec<RatVector>,
    },
    Facets {
        #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
        facets: Vec<RatVector>,
        #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
        #[serde(default)]
        equalities: Vec<RatVector>,
    },
}

#[serde_as]
#[derive(Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SemiOrderDef {
    Finite {
        v_dim: usize,
        w: String,
        #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
        t: Vec<RatVector>,
    },
    Gallery {
        v: String,
        w: String,
        t: String,
    },
}

#[serde_as]
#[derive(Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum OperatorDef {
    Matrix {
        domain: String,
        codomain: String,
        #[serde_as(as = "Vec<Vec<DisplayFromStr>>")]
        matrix: Vec<RatVector>,
    },
    Gallery {
        gallery_op: String,
    },
}

#[derive(Debug)]
pub enum FamilyDef {
    Finite(SeqFamily),
    Gallery(GalleryFamily),
}

/// Sequence-space families carry a `shape` tag; everything else is a
/// closed-form finite-dimensional family.
impl<'de> Deserialize<'de> for FamilyDef {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let v = Value::deserialize(d)?;
        if v.get("shape").is_some() {
            serde_json::from_value(v).map(FamilyDef::Gallery).map_err(D::Error::custom)
        } else {
            serde_json::from_value(v).map(FamilyDef::Finite).map_err(D::Error::custom)
        }
    }
}

/// Keeps an explicit `null` apart from a missing field.
fn present<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<Value>, D::Error> {
    Value::deserialize(d).map(Some)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Query {
    pub op: String,
    #[serde(default)]
    pub args: Vec<Value>,
    #[serde(default, deserialize_with = "present", skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
}

#[derive(Clone, Debug)]
pub enum SemiOrder {
    Finite(SemiOrderSpace),
    Gallery(GallerySemiOrder),
}

#[derive(Clone, Debug)]
pub enum Family {
    Finite(SeqFamily),
    Gallery(GalleryFamily),
}

/// Input problems found while resolving names and values.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<ordspace::Error> for InputError {
    fn from(e: ordspace::Error) -> Self {
        InputError(e.to_string())
    }
}

pub type Input<T> = Result<T, InputError>;

fn err<T>(msg: impl Into<String>) -> Input<T> {
    Err(InputError(msg.into()))
}

/// Everything in a problem file, with names resolved.
pub struct Problem {
    pub spaces: BTreeMap<String, OrderedSpace>,
    pub semiorders: BTreeMap<String, SemiOrder>,
    pub operators: BTreeMap<String, LinOp>,
    pub families: BTreeMap<String, Family>,
    pub queries: Vec<Query>,
}

pub fn parse(text: &str) -> Input<ProblemFile> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| InputError(format!("problem file: {e}")))?;
    if file.version != SCHEMA_VERSION {
        return err(format!("unsupported schema version {}, expected {SCHEMA_VERSION}", file.version));
    }
    Ok(file)
}

fn dim_of(vectors: &[RatVector], what: &str) -> Input<usize> {
    match vectors.first() {
        Some(v) => Ok(v.len()),
        None => err(format!("{what}: at least one vector is needed to fix the dimension")),
    }
}

impl Problem {
    pub fn resolve(file: ProblemFile) -> Input<Problem> {
        let mut p = Problem {
            spaces: BTreeMap::new(),
            semiorders: BTreeMap::new(),
            operators: BTreeMap::new(),
            families: BTreeMap::new(),
            queries: file.queries,
        };
        for (name, def) in file.spaces {
            let space = match def {
                SpaceDef::Named(b) => OrderedSpace::builtin(&b)?,
                SpaceDef::Generators { generators } => {
                    let d = dim_of(&generators, &format!("space {name}"))?;
                    OrderedSpace::from_generators(name.clone(), d, generators)?
                }
                SpaceDef::Facets { facets, equalities } => {
                    let d = dim_of(&facets, &format!("space {name}"))?;
                    OrderedSpace::new(name.clone(), Cone::from_facets(d, facets, equalities)?)
                }
            };
            p.spaces.insert(name, space);
        }
        for (name, def) in file.semiorder_spaces {
            let s = match def {
                SemiOrderDef::Finite { v_dim, w, t } => {
                    let w = p.space(&w)?;
                    let t = RatMatrix::from_rows(w.dim, v_dim, t)?;
                    SemiOrder::Finite(SemiOrderSpace::new(v_dim, w, t)?)
                }
                SemiOrderDef::Gallery { v, w, t } => SemiOrder::Gallery(GallerySemiOrder::new(
                    gallery_space(&v)?,
                    gallery_space(&w)?,
                    GalleryOp::by_name(&t)?,
                )),
            };
            p.semiorders.insert(name, s);
        }
        for (name, def) in file.families {
            let f = match def {
                FamilyDef::Finite(f) => Family::Finite(SeqFamily::new(f.limit, f.terms, f.prefix)?),
                FamilyDef::Gallery(g) => Family::Gallery(g),
            };
            p.families.insert(name, f);
        }
        for (name, def) in file.operators {
            let op = match def {
                OperatorDef::Matrix { domain, codomain, matrix } => {
                    let (SemiOrder::Finite(d), SemiOrder::Finite(c)) = (p.semiorder(&domain)?, p.semiorder(&codomain)?)
                    else {
                        return err(format!("operator {name}: matrix operators need finite-dimensional spaces"));
                    };
                    let m = RatMatrix::from_rows(c.v_dim, d.v_dim, matrix)?;
                    LinOp::matrix(d, c, m)?
                }
                OperatorDef::Gallery { gallery_op } => match GalleryOp::by_name(&gallery_op)? {
                    GalleryOp::Elin => LinOp::elin(),
                    _ => return err(format!("operator {name}: only the elin gallery operator is addressable")),
                },
            };
            p.operators.insert(name, op);
        }
        Ok(p)
    }

    pub fn space(&self, name: &str) -> Input<OrderedSpace> {
        match self.spaces.get(name) {
            Some(s) => Ok(s.clone()),
            None => Ok(OrderedSpace::builtin(name)?),
        }
    }

    /// A semi-order space by name; an ordered space stands for itself
    /// under the identity.
    pub fn semiorder(&self, name: &str) -> Input<SemiOrder> {
        if let Some(s) = self.semiorders.get(name) {
            return Ok(s.clone());
        }
        if let Ok(g) = gallery_space(name) {
            return Ok(SemiOrder::Gallery(GallerySemiOrder::new(g, g, GalleryOp::Inclusion)));
        }
        Ok(SemiOrder::Finite(SemiOrderSpace::identity(self.space(name)?)))
    }

    pub fn operator(&self, name: &str) -> Input<LinOp> {
        match self.operators.get(name) {
            Some(op) => Ok(op.clone()),
            None if GalleryOp::by_name(name).is_ok_and(|o| o == GalleryOp::Elin) => Ok(LinOp::elin()),
            None => err(format!("unknown operator {name:?}")),
        }
    }

    pub fn family(&self, v: &Value) -> Input<Family> {
        match v {
            Value::String(name) => match self.families.get(name) {
                Some(f) => Ok(f.clone()),
                None => err(format!("unknown family {name:?}")),
            },
            Value::Object(_) => match serde_json::from_value::<FamilyDef>(v.clone()) {
                Ok(FamilyDef::Finite(f)) => Ok(Family::Finite(SeqFamily::new(f.limit, f.terms, f.prefix)?)),
                Ok(FamilyDef::Gallery(g)) => Ok(Family::Gallery(g)),
                Err(e) => err(format!("malformed family: {e}")),
            },
            _ => err("a family is a name or an object"),
        }
    }
}

fn gallery_space(name: &str) -> Input<GallerySpace> {
    Ok(GallerySpace::by_name(name)?)
}

pub fn rational(v: &Value) -> Input<Rat> {
    match v {
        Value::String(s) => Ok(parse_rat(s)?),
        Value::Number(n) if n.is_i64() => Ok(Rat::from_integer(n.as_i64().expect("checked").into())),
        _ => err(format!("expected a rational string, found {v}")),
    }
}

pub fn vector(v: &Value) -> Input<RatVector> {
    match v {
        Value::Array(xs) => xs.iter().map(rational).collect(),
        _ => err(format!("expected a vector, found {v}")),
    }
}

pub fn ecseq(v: &Value) -> Input<ECSeq> {
    let raw: ECSeq = serde_json::from_value(v.clone()).map_err(|e| InputError(format!("malformed sequence: {e}")))?;
    Ok(ECSeq::new(raw.head().to_vec(), raw.tail().clone()))
}

pub fn name(v: &Value) -> Input<&str> {
    v.as_str().ok_or_else(|| InputError(format!("expected a name, found {v}")))
}
