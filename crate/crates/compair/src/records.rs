//! JSON wire formats for pairs, parameters, classifications and witnesses.
//!
//! Truth tables and sequences serialize as lowercase little-endian hex (bit t
//! of the integer = f(t)); parameter vectors serialize as bit strings in the
//! same order as the CLI flags ("010" means c1=0, c2=1, c3=0). For mixed
//! array records the "m" field is the total variable count including x0 and
//! "x0_index" names the Type-III coordinate explicitly (1-based).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arrays::{ArrayPair, PairKind};
use crate::boolfun::BooleanFunction;
use crate::construct::{parse_bitstring, to_bitstring, MixedParams, Type2Params};
use crate::error::{Error, Result};
use crate::sequences::Sequence;

/// The seven pair kinds understood by the CLI and the JSON records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RecordKind {
    #[serde(rename = "type1-array")]
    Type1Array,
    #[serde(rename = "type2-array")]
    Type2Array,
    #[serde(rename = "type3-array")]
    Type3Array,
    #[serde(rename = "mixed")]
    Mixed,
    #[serde(rename = "type1-seq")]
    Type1Seq,
    #[serde(rename = "type2-seq")]
    Type2Seq,
    #[serde(rename = "type3-seq")]
    Type3Seq,
}

impl RecordKind {
    pub const ALL: [RecordKind; 7] = [
        RecordKind::Type1Array,
        RecordKind::Type2Array,
        RecordKind::Type3Array,
        RecordKind::Mixed,
        RecordKind::Type1Seq,
        RecordKind::Type2Seq,
        RecordKind::Type3Seq,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RecordKind::Type1Array => "type1-array",
            RecordKind::Type2Array => "type2-array",
            RecordKind::Type3Array => "type3-array",
            RecordKind::Mixed => "mixed",
            RecordKind::Type1Seq => "type1-seq",
            RecordKind::Type2Seq => "type2-seq",
            RecordKind::Type3Seq => "type3-seq",
        }
    }

    pub fn is_array_kind(&self) -> bool {
        matches!(
            self,
            RecordKind::Type1Array
                | RecordKind::Type2Array
                | RecordKind::Type3Array
                | RecordKind::Mixed
        )
    }

    pub fn is_seq_kind(&self) -> bool {
        !self.is_array_kind()
    }

    pub fn to_pair_kind(&self) -> Option<PairKind> {
        match self {
            RecordKind::Type1Array => Some(PairKind::TypeI),
            RecordKind::Type2Array => Some(PairKind::TypeII),
            RecordKind::Type3Array => Some(PairKind::TypeIII),
            RecordKind::Mixed => Some(PairKind::Mixed),
            _ => None,
        }
    }

    pub fn from_pair_kind(kind: PairKind) -> Self {
        match kind {
            PairKind::TypeI => RecordKind::Type1Array,
            PairKind::TypeII => RecordKind::Type2Array,
            PairKind::TypeIII => RecordKind::Type3Array,
            PairKind::Mixed => RecordKind::Mixed,
        }
    }
}

impl fmt::Display for RecordKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RecordKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RecordKind::ALL
            .iter()
            .find(|k| k.as_str() == s)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("unknown kind \"{s}\"")))
    }
}

/// Wire form of an array pair, e.g.
/// `{"kind":"type2-array","m":2,"f":"0x8","g":"0xe","x0_index":null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrayPairRecord {
    pub kind: RecordKind,
    pub m: usize,
    pub f: String,
    pub g: String,
    pub x0_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsRecord>,
}

impl ArrayPairRecord {
    pub fn from_pair(pair: &ArrayPair) -> Self {
        Self {
            kind: RecordKind::from_pair_kind(pair.kind()),
            m: pair.variables(),
            f: pair.f().to_hex(),
            g: pair.g().to_hex(),
            x0_index: pair.x0_index(),
            params: None,
        }
    }

    pub fn with_params(mut self, params: ParamsRecord) -> Self {
        self.params = Some(params);
        self
    }

    pub fn to_pair(&self) -> Result<ArrayPair> {
        let kind = self.kind.to_pair_kind().ok_or_else(|| {
            Error::InvalidInput(format!("kind \"{}\" is not an array kind", self.kind))
        })?;
        match (kind, self.x0_index) {
            (PairKind::Mixed, Some(idx)) if idx != self.m => {
                return Err(Error::InvalidInput(format!(
                    "x0_index {idx} must name the last coordinate {}",
                    self.m
                )));
            }
            (PairKind::Mixed, None) => {
                return Err(Error::InvalidInput(
                    "mixed records must set x0_index".into(),
                ));
            }
            (k, Some(_)) if k != PairKind::Mixed => {
                return Err(Error::InvalidInput(
                    "x0_index is only meaningful for mixed records".into(),
                ));
            }
            _ => {}
        }
        let f = BooleanFunction::from_hex(self.m, &self.f)?;
        let g = BooleanFunction::from_hex(self.m, &self.g)?;
        ArrayPair::new(f, g, kind)
    }
}

/// Wire form of a sequence pair, e.g.
/// `{"kind":"type2-seq","L":4,"f":"0x8","g":"0xe"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqPairRecord {
    pub kind: RecordKind,
    #[serde(rename = "L")]
    pub length: usize,
    pub f: String,
    pub g: String,
}

impl SeqPairRecord {
    pub fn from_seqs(kind: RecordKind, f: &Sequence, g: &Sequence) -> Result<Self> {
        if !kind.is_seq_kind() {
            return Err(Error::InvalidInput(format!(
                "kind \"{kind}\" is not a sequence kind"
            )));
        }
        if f.len() != g.len() {
            return Err(Error::InvalidInput(format!(
                "sequences have lengths {} and {}",
                f.len(),
                g.len()
            )));
        }
        Ok(Self {
            kind,
            length: f.len(),
            f: f.to_hex(),
            g: g.to_hex(),
        })
    }

    pub fn to_seqs(&self) -> Result<(Sequence, Sequence)> {
        if !self.kind.is_seq_kind() {
            return Err(Error::InvalidInput(format!(
                "kind \"{}\" is not a sequence kind",
                self.kind
            )));
        }
        Ok((
            Sequence::from_hex(self.length, &self.f)?,
            Sequence::from_hex(self.length, &self.g)?,
        ))
    }
}

/// Either flavor of pair record, distinguished by the "kind" field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum PairRecord {
    Array(ArrayPairRecord),
    Seq(SeqPairRecord),
}

impl PairRecord {
    pub fn kind(&self) -> RecordKind {
        match self {
            PairRecord::Array(r) => r.kind,
            PairRecord::Seq(r) => r.kind,
        }
    }

    /// Parse a pair record, dispatching on the "kind" field so that error
    /// messages name the missing or invalid fields.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))?;
        let kind_str = value
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| Error::InvalidInput("pair record is missing \"kind\"".into()))?;
        let kind: RecordKind = kind_str.parse()?;
        if kind.is_array_kind() {
            let record: ArrayPairRecord = serde_json::from_value(value)
                .map_err(|e| Error::InvalidInput(format!("invalid array pair record: {e}")))?;
            Ok(PairRecord::Array(record))
        } else {
            let record: SeqPairRecord = serde_json::from_value(value)
                .map_err(|e| Error::InvalidInput(format!("invalid sequence pair record: {e}")))?;
            Ok(PairRecord::Seq(record))
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serialization")
    }
}

/// Wire form of the standard Type-II parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Type2ParamsRecord {
    pub c: String,
    pub c0: u8,
    pub cprime: u8,
}

/// Wire form of the standard mixed parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedParamsRecord {
    pub e: String,
    pub c: String,
    pub c0: u8,
    pub cconst: u8,
    pub e0: u8,
    pub cprime: u8,
}

/// Parameter record of either family; the field sets are disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamsRecord {
    Mixed(MixedParamsRecord),
    Type2(Type2ParamsRecord),
}

impl From<&Type2Params> for ParamsRecord {
    fn from(p: &Type2Params) -> Self {
        ParamsRecord::Type2(Type2ParamsRecord {
            c: to_bitstring(&p.c),
            c0: p.c0 as u8,
            cprime: p.cprime as u8,
        })
    }
}

impl From<&MixedParams> for ParamsRecord {
    fn from(p: &MixedParams) -> Self {
        ParamsRecord::Mixed(MixedParamsRecord {
            e: to_bitstring(&p.e),
            c: to_bitstring(&p.c),
            c0: p.c0 as u8,
            cconst: p.cconst as u8,
            e0: p.e0 as u8,
            cprime: p.cprime as u8,
        })
    }
}

fn parse_flag(value: u8, name: &str) -> Result<bool> {
    match value {
        0 => Ok(false),
        1 => Ok(true),
        other => Err(Error::InvalidInput(format!(
            "{name} must be 0 or 1, got {other}"
        ))),
    }
}

impl ParamsRecord {
    pub fn to_type2_params(&self) -> Result<Type2Params> {
        match self {
            ParamsRecord::Type2(r) => {
                let c = parse_bitstring(&r.c)?;
                let m = c.len();
                Type2Params::new(m, c, parse_flag(r.c0, "c0")?, parse_flag(r.cprime, "cprime")?)
            }
            ParamsRecord::Mixed(_) => Err(Error::InvalidInput(
                "expected Type-II parameters, got mixed parameters".into(),
            )),
        }
    }

    pub fn to_mixed_params(&self) -> Result<MixedParams> {
        match self {
            ParamsRecord::Mixed(r) => {
                let e = parse_bitstring(&r.e)?;
                let c = parse_bitstring(&r.c)?;
                let m = e.len();
                MixedParams::new(
                    m,
                    e,
                    c,
                    parse_flag(r.c0, "c0")?,
                    parse_flag(r.cconst, "cconst")?,
                    parse_flag(r.e0, "e0")?,
                    parse_flag(r.cprime, "cprime")?,
                )
            }
            ParamsRecord::Type2(_) => Err(Error::InvalidInput(
                "expected mixed parameters, got Type-II parameters".into(),
            )),
        }
    }
}

/// Classification outcome in wire form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ClassificationRecord {
    Standard { params: ParamsRecord },
    NonStandard,
    NotComplementary,
}

/// A projection witness: the permutation together with the standard array
/// pair (parameters embedded) that projects to the sequence pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub perm: String,
    pub array: ArrayPairRecord,
}
