//! Dataset schema: parsing, validation and serialization of group data files.
//!
//! A dataset is a JSON document with keys `group`, `field {conductor,
//! mu_order}`, `orbits [{name, order}]`, `characters [{id, name, degree}]`,
//! `schur_models [{char, coefficient, leading, factors [{psi, monomial,
//! mult}]}]`, `blocks {no_hyperplane, hyperplanes [{normal, partition}]}` and
//! optionally `appendix_rows [{target, index, substitutions}]`. Rationals are
//! decimal strings `p` or `p/q`; a cyclotomic number is `{"conductor": c,
//! "coeffs": [...]}` with phi(c) entries; a polynomial is either
//! `{"kind": "named", "n": n}` or `{"kind": "explicit", "conductor": c,
//! "coeffs": [CycNum, ...]}`. Parsing is strict: unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::blocks::{BlockData, Partition};
use crate::cyclotomic::{totient, CycNum, CycPoly};
use crate::error::{Error, Result};
use crate::essential::{essential_hyperplanes, Hyperplane};
use crate::rational::{format_rational, parse_rational};
use crate::schur::{validate_model, Monomial, Orbit, SchurFactor, SchurModel, VarIndex};
use crate::specialization::Specialization;

// ---------------------------------------------------------------------------
// Raw document layer (serde)
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDataset {
    group: String,
    field: RawField,
    orbits: Vec<RawOrbit>,
    characters: Vec<RawCharacter>,
    schur_models: Vec<RawModel>,
    blocks: RawBlocks,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    appendix_rows: Vec<RawAppendixRow>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    conductor: u64,
    mu_order: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrbit {
    name: String,
    order: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCharacter {
    id: usize,
    name: String,
    degree: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    char: String,
    coefficient: RawCycNum,
    leading: Vec<i64>,
    factors: Vec<RawFactor>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    psi: RawCycPoly,
    monomial: Vec<i64>,
    mult: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawCycPoly {
    Named(RawNamedPoly),
    Explicit(RawExplicitPoly),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNamedPoly {
    n: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExplicitPoly {
    conductor: u64,
    coeffs: Vec<RawCycNum>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCycNum {
    conductor: u64,
    coeffs: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBlocks {
    no_hyperplane: Vec<Vec<usize>>,
    hyperplanes: Vec<RawHyperplaneBlock>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHyperplaneBlock {
    normal: Vec<i64>,
    partition: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAppendixRow {
    target: String,
    index: u64,
    substitutions: Vec<RawSubstitution>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSubstitution {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    twist: Option<RawCycNum>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    exponent: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    child_slot: Option<usize>,
}

// ---------------------------------------------------------------------------
// Rich types
// ---------------------------------------------------------------------------

/// Field-of-definition stub: the conductor of K and the order of its group of
/// roots of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldInfo {
    pub conductor: u64,
    pub mu_order: u64,
}

/// Character table stub.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterStub {
    pub name: String,
    pub degree: u64,
}

/// How one parent variable slot specializes in an appendix row: frozen to a
/// root of unity times a fixed power of y, or mapped onto a child variable.
#[derive(Clone, Debug, PartialEq)]
pub enum SlotSubstitution {
    Fixed { twist: CycNum, exponent: i64 },
    ChildSlot { twist: CycNum, slot: usize },
}

/// One appendix specialization row: substituting the parent parameters this
/// way realizes the child algebra, with Schur elements scaled by `index`.
#[derive(Clone, Debug, PartialEq)]
pub struct AppendixRow {
    pub target: String,
    pub index: u64,
    pub substitutions: Vec<SlotSubstitution>,
}

impl AppendixRow {
    /// The parent specialization induced by a child exponent vector.
    pub fn parent_specialization(&self, child_exponents: &[i64]) -> Result<Specialization> {
        let mut exponents = Vec::with_capacity(self.substitutions.len());
        let mut twists = Vec::with_capacity(self.substitutions.len());
        for sub in &self.substitutions {
            match sub {
                SlotSubstitution::Fixed { twist, exponent } => {
                    exponents.push(*exponent);
                    twists.push(twist.clone());
                }
                SlotSubstitution::ChildSlot { twist, slot } => {
                    let e = child_exponents.get(*slot).ok_or(Error::DimensionMismatch {
                        expected: *slot + 1,
                        got: child_exponents.len(),
                    })?;
                    exponents.push(*e);
                    twists.push(twist.clone());
                }
            }
        }
        Specialization::with_twists(exponents, twists)
    }
}

/// A fully validated group dataset.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupDataset {
    pub group: String,
    pub field: FieldInfo,
    pub vars: VarIndex,
    pub characters: Vec<CharacterStub>,
    pub models: Vec<SchurModel>,
    pub block_data: BlockData,
    pub appendix_rows: Vec<AppendixRow>,
}

impl GroupDataset {
    pub fn load_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_str(&text)
    }

    /// Parse and fully validate a dataset document.
    pub fn parse_str(text: &str) -> Result<Self> {
        let raw: RawDataset = serde_json::from_str(text).map_err(|e| {
            Error::Syntax(format!("{} (line {}, column {})", e, e.line(), e.column()))
        })?;
        convert(raw)
    }

    /// Serialize back to the document format.
    pub fn to_json_string(&self) -> String {
        let raw = unconvert(self);
        serde_json::to_string_pretty(&raw).expect("dataset serialization cannot fail")
    }

    pub fn character_index(&self, name: &str) -> Option<usize> {
        self.characters.iter().position(|c| c.name == name)
    }

    pub fn model_by_name(&self, name: &str) -> Option<&SchurModel> {
        self.models.iter().find(|m| m.char_name == name)
    }

    pub fn models_by_index(&self) -> BTreeMap<usize, &SchurModel> {
        self.models.iter().map(|m| (m.char_index, m)).collect()
    }

    pub fn appendix_row(&self, row: usize) -> Result<&AppendixRow> {
        self.appendix_rows
            .get(row)
            .ok_or_else(|| Error::Semantic(format!("no appendix row {}", row)))
    }

    /// Stored hyperplanes united with the essential hyperplanes witnessed by
    /// the bundled models.
    pub fn all_hyperplanes(&self) -> Result<Vec<Hyperplane>> {
        let mut hs = self.block_data.hyperplanes();
        for h in essential_hyperplanes(&self.models)? {
            if !hs.contains(&h) {
                hs.push(h);
            }
        }
        Ok(hs)
    }
}

// ---------------------------------------------------------------------------
// Conversion and validation
// ---------------------------------------------------------------------------

fn convert_cycnum(raw: &RawCycNum) -> Result<CycNum> {
    let expected = totient(raw.conductor.max(1)) as usize;
    if raw.conductor == 0 {
        return Err(Error::Semantic("cyclotomic conductor must be positive".into()));
    }
    if raw.coeffs.len() != expected {
        return Err(Error::Semantic(format!(
            "cyclotomic number over conductor {} needs {} coefficients, got {}",
            raw.conductor,
            expected,
            raw.coeffs.len()
        )));
    }
    let coeffs = raw.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
    CycNum::from_coeffs(raw.conductor, coeffs)
}

fn unconvert_cycnum(x: &CycNum) -> RawCycNum {
    RawCycNum {
        conductor: x.conductor(),
        coeffs: x.coeffs().iter().map(format_rational).collect(),
    }
}

fn convert_cycpoly(raw: &RawCycPoly, field: &FieldInfo) -> Result<CycPoly> {
    match raw {
        RawCycPoly::Named(p) => CycPoly::named(p.n),
        RawCycPoly::Explicit(p) => {
            if field.conductor % p.conductor != 0 {
                return Err(Error::Semantic(format!(
                    "explicit polynomial conductor {} does not divide the field conductor {}",
                    p.conductor, field.conductor
                )));
            }
            let coeffs = p.coeffs.iter().map(convert_cycnum).collect::<Result<Vec<_>>>()?;
            CycPoly::explicit(p.conductor, coeffs)
        }
    }
}

fn unconvert_cycpoly(p: &CycPoly) -> RawCycPoly {
    match p {
        CycPoly::Named(n) => RawCycPoly::Named(RawNamedPoly { n: *n }),
        CycPoly::Explicit { conductor, coeffs } => RawCycPoly::Explicit(RawExplicitPoly {
            conductor: *conductor,
            coeffs: coeffs.iter().map(unconvert_cycnum).collect(),
        }),
    }
}

fn convert(raw: RawDataset) -> Result<GroupDataset> {
    let field = FieldInfo { conductor: raw.field.conductor, mu_order: raw.field.mu_order };
    if field.conductor == 0 || field.mu_order == 0 {
        return Err(Error::Semantic("field conductor and mu_order must be positive".into()));
    }

    let vars = VarIndex::new(
        raw.orbits.into_iter().map(|o| Orbit { name: o.name, order: o.order }).collect(),
    )?;

    // characters: dense ids in order, unique names
    let mut characters = Vec::with_capacity(raw.characters.len());
    for (i, c) in raw.characters.iter().enumerate() {
        if c.id != i {
            return Err(Error::Semantic(format!(
                "character ids must be dense and in order: position {} has id {}",
                i, c.id
            )));
        }
        if c.degree == 0 {
            return Err(Error::Semantic(format!("character `{}` has degree 0", c.name)));
        }
        if raw.characters[..i].iter().any(|d| d.name == c.name) {
            return Err(Error::Semantic(format!("duplicate character name `{}`", c.name)));
        }
        characters.push(CharacterStub { name: c.name.clone(), degree: c.degree });
    }
    if characters.is_empty() {
        return Err(Error::Semantic("dataset needs at least one character".into()));
    }

    // models
    let mut models: Vec<SchurModel> = Vec::with_capacity(raw.schur_models.len());
    for rm in &raw.schur_models {
        let char_index = characters
            .iter()
            .position(|c| c.name == rm.char)
            .ok_or_else(|| Error::Semantic(format!("model for unknown character `{}`", rm.char)))?;
        if models.iter().any(|m| m.char_index == char_index) {
            return Err(Error::Semantic(format!("duplicate model for character `{}`", rm.char)));
        }
        let mut factors = Vec::with_capacity(rm.factors.len());
        for rf in &rm.factors {
            if rf.monomial.iter().all(|&e| e == 0) {
                return Err(Error::Semantic(format!(
                    "model for `{}` has a zero factor monomial",
                    rm.char
                )));
            }
            factors.push(SchurFactor::new(
                convert_cycpoly(&rf.psi, &field)?,
                Monomial::new(rf.monomial.clone()),
                rf.mult,
            )?);
        }
        let model = SchurModel {
            char_name: rm.char.clone(),
            char_index,
            coefficient: convert_cycnum(&rm.coefficient)?,
            leading: Monomial::new(rm.leading.clone()),
            factors,
        };
        let violations = validate_model(&model, &vars)?;
        if !violations.is_empty() {
            let text =
                violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ");
            return Err(Error::Semantic(format!("model for `{}`: {}", rm.char, text)));
        }
        models.push(model);
    }

    // blocks
    let universe = characters.len();
    let generic = Partition::new(raw.blocks.no_hyperplane, universe)
        .map_err(|e| Error::Semantic(format!("no_hyperplane partition: {}", e)))?;
    let mut per_hyperplane = Vec::with_capacity(raw.blocks.hyperplanes.len());
    for hb in raw.blocks.hyperplanes {
        if hb.normal.len() != vars.total() {
            return Err(Error::DimensionMismatch {
                expected: vars.total(),
                got: hb.normal.len(),
            });
        }
        let h = Hyperplane::new(hb.normal)?;
        let p = Partition::new(hb.partition, universe)
            .map_err(|e| Error::Semantic(format!("partition for `{}`: {}", h.label(), e)))?;
        per_hyperplane.push((h, p));
    }
    let block_data = BlockData::new(generic, per_hyperplane)?;

    // appendix rows
    let mut appendix_rows = Vec::with_capacity(raw.appendix_rows.len());
    for rr in &raw.appendix_rows {
        if rr.index == 0 {
            return Err(Error::Semantic("appendix row index must be positive".into()));
        }
        if rr.substitutions.len() != vars.total() {
            return Err(Error::DimensionMismatch {
                expected: vars.total(),
                got: rr.substitutions.len(),
            });
        }
        let mut substitutions = Vec::with_capacity(rr.substitutions.len());
        for (i, rs) in rr.substitutions.iter().enumerate() {
            let twist = match &rs.twist {
                Some(t) => convert_cycnum(t)?,
                None => CycNum::one(),
            };
            if !twist.is_root_of_unity() {
                return Err(Error::BadTwist(i));
            }
            let sub = match (rs.child_slot, rs.exponent) {
                (Some(_), Some(_)) => {
                    return Err(Error::Semantic(format!(
                        "substitution {} sets both child_slot and exponent",
                        i
                    )));
                }
                (Some(slot), None) => SlotSubstitution::ChildSlot { twist, slot },
                (None, e) => SlotSubstitution::Fixed { twist, exponent: e.unwrap_or(0) },
            };
            substitutions.push(sub);
        }
        appendix_rows.push(AppendixRow {
            target: rr.target.clone(),
            index: rr.index,
            substitutions,
        });
    }

    Ok(GroupDataset {
        group: raw.group,
        field,
        vars,
        characters,
        models,
        block_data,
        appendix_rows,
    })
}

fn unconvert(ds: &GroupDataset) -> RawDataset {
    RawDataset {
        group: ds.group.clone(),
        field: RawField { conductor: ds.field.conductor, mu_order: ds.field.mu_order },
        orbits: ds
            .vars
            .orbits()
            .iter()
            .map(|o| RawOrbit { name: o.name.clone(), order: o.order })
            .collect(),
        characters: ds
            .characters
            .iter()
            .enumerate()
            .map(|(i, c)| RawCharacter { id: i, name: c.name.clone(), degree: c.degree })
            .collect(),
        schur_models: ds
            .models
            .iter()
            .map(|m| RawModel {
                char: m.char_name.clone(),
                coefficient: unconvert_cycnum(&m.coefficient),
                leading: m.leading.exps().to_vec(),
                factors: m
                    .factors
                    .iter()
                    .map(|f| RawFactor {
                        psi: unconvert_cycpoly(&f.psi),
                        monomial: f.oriented_monomial().exps().to_vec(),
                        mult: f.mult,
                    })
                    .collect(),
            })
            .collect(),
        blocks: RawBlocks {
            no_hyperplane: ds.block_data.generic().blocks().to_vec(),
            hyperplanes: ds
                .block_data
                .per_hyperplane()
                .iter()
                .map(|(h, p)| RawHyperplaneBlock {
                    normal: h.normal().exps().to_vec(),
                    partition: p.blocks().to_vec(),
                })
                .collect(),
        },
        appendix_rows: ds
            .appendix_rows
            .iter()
            .map(|r| RawAppendixRow {
                target: r.target.clone(),
                index: r.index,
                substitutions: r
                    .substitutions
                    .iter()
                    .map(|s| match s {
                        SlotSubstitution::Fixed { twist, exponent } => RawSubstitution {
                            twist: (!twist.is_one()).then(|| unconvert_cycnum(twist)),
                            exponent: (*exponent != 0).then_some(*exponent),
                            child_slot: None,
                        },
                        SlotSubstitution::ChildSlot { twist, slot } => RawSubstitution {
                            twist: (!twist.is_one()).then(|| unconvert_cycnum(twist)),
                            exponent: None,
                            child_slot: Some(*slot),
                        },
                    })
                    .collect(),
            })
            .collect(),
    }
}
