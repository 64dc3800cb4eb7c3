//! JSON group descriptors.
//!
//! ```json
//! {"kind": "free", "rank": 2, "generators": ["a", "b"]}
//! {"kind": "free", "rank": "countable"}
//! {"kind": "free-abelian", "rank": 1}
//! {"kind": "direct-sum-cyclic", "moduli": [2], "countable": true}
//! {"kind": "finite-table", "table": [[0, 1], [1, 0]]}
//! {"kind": "product", "factors": [{...}, {...}]}
//! ```
//!
//! Generators are element strings in the group's text syntax and are
//! symmetrized on load. Tables are row-major and 0-indexed.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{CayleyTable, Group, GroupKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rank {
    Finite(u32),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDescriptor {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<Rank>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub countable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<GroupDescriptor>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
}

impl GroupDescriptor {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    pub fn build(&self) -> Result<Group> {
        let missing = |field: &str| Error::Descriptor(format!("kind `{}` needs `{field}`", self.kind));
        let mut group = match self.kind.as_str() {
            "free" => match self.rank.as_ref().ok_or_else(|| missing("rank"))? {
                Rank::Finite(r) => Group::free(*r),
                Rank::Named(s) if s == "countable" => Group::free_countable(),
                Rank::Named(s) => return Err(Error::Descriptor(format!("unknown rank `{s}`"))),
            },
            "free-abelian" => match self.rank.as_ref().ok_or_else(|| missing("rank"))? {
                Rank::Finite(r) if *r >= 1 => Group::free_abelian(*r),
                _ => return Err(Error::Descriptor("free-abelian rank must be a positive integer".into())),
            },
            "direct-sum-cyclic" => {
                let moduli = self.moduli.clone().ok_or_else(|| missing("moduli"))?;
                if self.countable {
                    if moduli.len() != 1 {
                        return Err(Error::Descriptor("countable direct sums take a single modulus".into()));
                    }
                    Group::countable_sum(moduli[0])?
                } else {
                    Group::direct_sum(moduli)?
                }
            }
            "finite-table" => Group::table(CayleyTable::new(self.table.clone().ok_or_else(|| missing("table"))?)?),
            "product" => {
                let factors = self.factors.as_ref().ok_or_else(|| missing("factors"))?;
                if factors.len() != 2 {
                    return Err(Error::Descriptor("product takes exactly two factors".into()));
                }
                Group::product(factors[0].build()?, factors[1].build()?)
            }
            other => return Err(Error::Descriptor(format!("unknown group kind `{other}`"))),
        };
        if let Some(gens) = &self.generators {
            let parsed = gens
                .iter()
                .map(|s| group.parse_element(s))
                .collect::<Result<Vec<_>>>()?;
            group = group.with_generators(parsed)?;
        }
        if let Some(b) = self.budget {
            if b == 0 {
                return Err(Error::Config("budget must be positive".into()));
            }
            group = group.with_budget(b);
        }
        Ok(group)
    }

    /// Describes an existing group, generators included when nonstandard.
    pub fn of(group: &Group) -> Self {
        let mut d = GroupDescriptor {
            kind: String::new(),
            rank: None,
            moduli: None,
            countable: false,
            table: None,
            factors: None,
            generators: None,
            budget: None,
        };
        match group.kind() {
            GroupKind::Free { rank } => {
                d.kind = "free".into();
                d.rank = Some(match rank {
                    Some(r) => Rank::Finite(*r),
                    None => Rank::Named("countable".into()),
                });
            }
            GroupKind::FreeAbelian { rank } => {
                d.kind = "free-abelian".into();
                d.rank = Some(Rank::Finite(*rank));
            }
            GroupKind::DirectSum { moduli, countable } => {
                d.kind = "direct-sum-cyclic".into();
                d.moduli = Some(moduli.clone());
                d.countable = *countable;
            }
            GroupKind::Table(t) => {
                d.kind = "finite-table".into();
                d.table = Some(t.rows().to_vec());
            }
            GroupKind::Product { left, right } => {
                d.kind = "product".into();
                d.factors = Some(vec![GroupDescriptor::of(left), GroupDescriptor::of(right)]);
            }
        }
        if group.generators() != Group::from_kind(group.kind().clone()).generators() {
            d.generators = Some(group.format_set(group.generators()));
        }
        if group.budget() != super::DEFAULT_BUDGET {
            d.budget = Some(group.budget());
        }
        d
    }
}

impl Group {
    pub fn from_json(text: &str) -> Result<Self> {
        GroupDescriptor::from_json(text)?.build()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Descriptor(format!("cannot read {}: {e}", path.display())))?;
        Group::from_json(&text)
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor::of(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Element;

    #[test]
    fn loads_each_kind() {
        let f2 = Group::from_json(r#"{"kind":"free","rank":2,"generators":["a","b"]}"#).unwrap();
        assert_eq!(f2.generators().len(), 4);
        let z = Group::from_json(r#"{"kind":"free-abelian","rank":1}"#).unwrap();
        assert_eq!(z.enumerate_ball(2).unwrap().len(), 5);
        let s = Group::from_json(r#"{"kind":"direct-sum-cyclic","moduli":[2],"countable":true}"#).unwrap();
        assert!(!s.is_finitely_generated());
        let t = Group::from_json(r#"{"kind":"finite-table","table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(t.order(), Some(2));
        let p = Group::from_json(
            r#"{"kind":"product","factors":[{"kind":"direct-sum-cyclic","moduli":[2],"countable":true},{"kind":"free-abelian","rank":1}]}"#,
        )
        .unwrap();
        assert!(p.is_abelian());
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(Group::from_json(r#"{"kind":"free","rank":2,"generators":["e"]}"#).is_err());
        assert!(Group::from_json(r#"{"kind":"finite-table","table":[[0,1],[1,1]]}"#).is_err());
        assert!(Group::from_json(r#"{"kind":"lie"}"#).is_err());
        assert!(Group::from_json(r#"{"kind":"free","rank":2,"generators":["c"]}"#).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let g = Group::integers().with_generators(vec![Element::int(2), Element::int(3)]).unwrap();
        let d = g.descriptor();
        let back = Group::from_json(&d.to_json()).unwrap();
        assert_eq!(back, g);
    }
}
