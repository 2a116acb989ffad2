use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Bounds, Name, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoding {
    Adl,
    Chain,
    Param,
    Tm211,
}

impl Encoding {
    pub fn as_str(&self) -> &'static str {
        match self {
            Encoding::Adl => "adl",
            Encoding::Chain => "chain",
            Encoding::Param => "param",
            Encoding::Tm211 => "tm211",
        }
    }

    /// Whether plans are carried as `apply` steps over slot tuples.
    pub fn is_parameterised(&self) -> bool {
        matches!(self, Encoding::Param | Encoding::Tm211)
    }
}

impl fmt::Display for Encoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The fixed pre/del/add orderings used to build one action's chains.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainOrder {
    pub pre: Vec<Name>,
    pub del: Vec<Name>,
    /// Includes the padding proposition when the action had no add effect.
    pub add: Vec<Name>,
}

impl ChainOrder {
    /// Number of micro steps needed to apply the action.
    pub fn micro_len(&self) -> usize {
        self.pre.len() + self.del.len() + self.add.len() + 1
    }
}

/// Mapping from a compiled instance back to the task it encodes.
///
/// Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub encoding: Encoding,
    /// Original proposition -> emitted object.
    pub prop_map: BTreeMap<Name, Name>,
    /// Original ground action -> emitted argument tuple.
    pub action_map: BTreeMap<Name, Vec<Name>>,
    pub chain_order: BTreeMap<Name, ChainOrder>,
    pub pads: Vec<Name>,
    pub bounds: Option<Bounds>,
}

impl Manifest {
    pub fn new(encoding: Encoding) -> Manifest {
        Manifest {
            encoding,
            prop_map: BTreeMap::new(),
            action_map: BTreeMap::new(),
            chain_order: BTreeMap::new(),
            pads: Vec::new(),
            bounds: None,
        }
    }

    /// Two-space indented JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Manifest, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Emitted tuple -> original actions, least name first.
    pub fn actions_by_tuple(&self) -> BTreeMap<&[Name], Vec<&Name>> {
        let mut out: BTreeMap<&[Name], Vec<&Name>> = BTreeMap::new();
        for (orig, tuple) in &self.action_map {
            out.entry(tuple.as_slice()).or_default().push(orig);
        }
        out
    }

    pub fn check(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut emitted = BTreeSet::new();
        for (orig, obj) in &self.prop_map {
            if !emitted.insert(obj) {
                out.push(Violation::new(format!(
                    "prop_map: `{orig}` reuses emitted object `{obj}`"
                )));
            }
        }
        if !self.encoding.is_parameterised() {
            for (tuple, origs) in self.actions_by_tuple() {
                if origs.len() > 1 {
                    out.push(Violation::new(format!(
                        "action_map: {origs:?} share the emitted tuple {tuple:?}"
                    )));
                }
            }
        }
        if self.encoding == Encoding::Chain {
            for a in self.action_map.keys() {
                if !self.chain_order.contains_key(a) {
                    out.push(Violation::new(format!("chain_order: missing action `{a}`")));
                }
            }
        }
        out
    }
}
