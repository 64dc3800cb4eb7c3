//! Partitions of a window into labelled cells, with re-runnable
//! certificates and a JSON document form.

use std::collections::{HashMap, HashSet};

use serde_json::{json, Value};

use crate::ballean::Side;
use crate::classify::{check_large, check_n_thin, check_scattered, check_small, check_thick, Sidedness};
use crate::error::{Error, Result};
use crate::expr::parse_set;
use crate::group::descriptor::GroupDescriptor;
use crate::group::{Element, Group, Window};
use crate::subset::SubsetView;
use crate::verdict::{Status, Verdict, Witness};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Index(usize),
    Letter(u32),
    Pair(usize, usize),
    Seq(Vec<usize>),
    Reserved,
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl Label {
    pub fn to_text(&self) -> String {
        match self {
            Label::Index(i) => i.to_string(),
            Label::Letter(l) => format!("letter:{l}"),
            Label::Pair(a, b) => format!("pair:{a},{b}"),
            Label::Seq(xs) => format!("seq:{}", join(xs)),
            Label::Reserved => "reserved".into(),
        }
    }

    pub fn from_text(s: &str) -> Result<Self> {
        if s == "reserved" {
            return Ok(Label::Reserved);
        }
        let bad = || Error::Config(format!("bad label `{s}`"));
        let nums = |t: &str| -> Result<Vec<usize>> {
            if t.is_empty() {
                return Ok(Vec::new());
            }
            t.split(',').map(|x| x.parse().map_err(|_| bad())).collect()
        };
        if let Some(l) = s.strip_prefix("letter:") {
            return l.parse().map(Label::Letter).map_err(|_| bad());
        }
        if let Some(p) = s.strip_prefix("pair:") {
            return match nums(p)?[..] {
                [a, b] => Ok(Label::Pair(a, b)),
                _ => Err(bad()),
            };
        }
        if let Some(q) = s.strip_prefix("seq:") {
            return Ok(Label::Seq(nums(q)?));
        }
        s.parse().map(Label::Index).map_err(|_| bad())
    }
}

/// How to rebuild the window a partition lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowSpec {
    Ball { radius: u32, margin: u32 },
    Interval { lo: i64, hi: i64, margin: u32 },
    Whole,
    FirstN { n: usize, core: usize },
}

impl WindowSpec {
    pub fn build(&self, g: &Group) -> Result<Window> {
        match *self {
            WindowSpec::Ball { radius, margin } => g.enumerate_ball_with_margin(radius, margin),
            WindowSpec::Interval { lo, hi, margin } => Ok(Window::interval(lo, hi, margin)),
            WindowSpec::Whole => Window::whole(g),
            WindowSpec::FirstN { n, core } => Window::first_n(g, n, core),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            WindowSpec::Ball { radius, margin } => json!({"kind": "ball", "radius": radius, "margin": margin}),
            WindowSpec::Interval { lo, hi, margin } => {
                json!({"kind": "interval", "lo": lo, "hi": hi, "margin": margin})
            }
            WindowSpec::Whole => json!({"kind": "whole"}),
            WindowSpec::FirstN { n, core } => json!({"kind": "first-n", "n": n, "core": core}),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        let u = |k: &str| -> Result<u64> {
            v[k].as_u64().ok_or_else(|| Error::Config(format!("window field `{k}` missing")))
        };
        let i = |k: &str| -> Result<i64> {
            v[k].as_i64().ok_or_else(|| Error::Config(format!("window field `{k}` missing")))
        };
        Ok(match v["kind"].as_str() {
            Some("ball") => WindowSpec::Ball { radius: u("radius")? as u32, margin: u("margin")? as u32 },
            Some("interval") => WindowSpec::Interval { lo: i("lo")?, hi: i("hi")?, margin: u("margin")? as u32 },
            Some("whole") => WindowSpec::Whole,
            Some("first-n") => WindowSpec::FirstN { n: u("n")? as usize, core: u("core")? as usize },
            other => return Err(Error::Config(format!("unknown window kind {other:?}"))),
        })
    }
}

/// A check that can be run again against a cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckSpec {
    /// `FA` covers the window core (or `AF` on the right).
    Large { side: Side, f: Vec<Element> },
    /// Some core point is missed by `FA` (or `AF`).
    NotLarge { side: Side, f: Vec<Element> },
    /// Thickness for the balls of the listed radii.
    Thick { mode: Sidedness, radii: Vec<u32> },
    /// No union of at most `bound` left translates is thick for the balls.
    Small { radii: Vec<u32>, bound: usize },
    /// `|(F ∪ {e})a ∩ A| ≤ n` for every `F` of the family, off the head.
    Thin { family: Vec<Vec<Element>>, n: usize, head: Vec<Element> },
    /// `gx ∉ A` for every `x ∈ A`.
    Displacement { g: Element },
    Scattered { depth: usize },
}

fn balls(g: &Group, radii: &[u32]) -> Result<Vec<Vec<Element>>> {
    radii.iter().map(|&r| g.radius_set(r)).collect()
}

fn side_str(s: Side) -> &'static str {
    match s {
        Side::Left => "left",
        Side::Right => "right",
    }
}

fn mode_str(m: Sidedness) -> &'static str {
    match m {
        Sidedness::Left => "left",
        Sidedness::Right => "right",
        Sidedness::Both => "both",
    }
}

impl CheckSpec {
    pub fn run(&self, g: &Group, a: &SubsetView, w: &Window) -> Result<Verdict> {
        Ok(match self {
            CheckSpec::Large { side, f } => check_large(g, a, f, w, *side),
            CheckSpec::NotLarge { side, f } => {
                let v = check_large(g, a, f, w, *side);
                match v.status {
                    Status::Holds => Verdict::fails(None, "the translates cover the window core"),
                    Status::Fails => Verdict { status: Status::Holds, ..v },
                    Status::Inconclusive => v,
                }
            }
            CheckSpec::Thick { mode, radii } => check_thick(g, a, &balls(g, radii)?, w, *mode),
            CheckSpec::Small { radii, bound } => check_small(g, a, &balls(g, radii)?, *bound, None, w, Side::Left),
            CheckSpec::Thin { family, n, head } => {
                let head: HashSet<Element> = head.iter().cloned().collect();
                check_n_thin(g, a, family, *n, w, &head)
            }
            CheckSpec::Displacement { g: t } => {
                let bad = w.elements().iter().find(|x| a.contains(x) && a.contains(&g.mul(t, x)));
                match bad {
                    Some(x) => Verdict::fails(Some(Witness::Element(x.clone())), "x and gx both lie in the cell"),
                    None => Verdict::holds(None, "gx leaves the cell for every x in it"),
                }
            }
            CheckSpec::Scattered { depth } => check_scattered(g, a, *depth, w, crate::classify::DEFAULT_NODE_BUDGET)?,
        })
    }

    fn to_json(&self, g: &Group) -> Value {
        match self {
            CheckSpec::Large { side, f } => json!({"check": "large", "side": side_str(*side), "F": g.format_set(f)}),
            CheckSpec::NotLarge { side, f } => {
                json!({"check": "not-large", "side": side_str(*side), "F": g.format_set(f)})
            }
            CheckSpec::Thick { mode, radii } => json!({"check": "thick", "mode": mode_str(*mode), "radii": radii}),
            CheckSpec::Small { radii, bound } => json!({"check": "small", "radii": radii, "bound": bound}),
            CheckSpec::Thin { family, n, head } => json!({
                "check": "thin",
                "family": family.iter().map(|f| g.format_set(f)).collect::<Vec<_>>(),
                "n": n,
                "head": g.format_set(head),
            }),
            CheckSpec::Displacement { g: t } => json!({"check": "displacement", "g": g.format_element(t)}),
            CheckSpec::Scattered { depth } => json!({"check": "scattered", "depth": depth}),
        }
    }

    fn from_json(g: &Group, v: &Value) -> Result<Self> {
        let bad = |k: &str| Error::Config(format!("certificate field `{k}` missing or malformed"));
        let set = |v: &Value| -> Result<Vec<Element>> {
            v.as_array()
                .ok_or_else(|| bad("set"))?
                .iter()
                .map(|s| g.parse_element(s.as_str().ok_or_else(|| bad("element"))?))
                .collect()
        };
        let nums = |k: &str| -> Result<Vec<u32>> {
            v[k].as_array()
                .ok_or_else(|| bad(k))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| bad(k)))
                .collect()
        };
        let side = || match v["side"].as_str() {
            Some("left") => Ok(Side::Left),
            Some("right") => Ok(Side::Right),
            _ => Err(bad("side")),
        };
        let count = |k: &str| v[k].as_u64().map(|x| x as usize).ok_or_else(|| bad(k));
        Ok(match v["check"].as_str() {
            Some("large") => CheckSpec::Large { side: side()?, f: set(&v["F"])? },
            Some("not-large") => CheckSpec::NotLarge { side: side()?, f: set(&v["F"])? },
            Some("thick") => CheckSpec::Thick {
                mode: match v["mode"].as_str() {
                    Some("left") => Sidedness::Left,
                    Some("right") => Sidedness::Right,
                    Some("both") => Sidedness::Both,
                    _ => return Err(bad("mode")),
                },
                radii: nums("radii")?,
            },
            Some("small") => CheckSpec::Small { radii: nums("radii")?, bound: count("bound")? },
            Some("thin") => CheckSpec::Thin {
                family: v["family"].as_array().ok_or_else(|| bad("family"))?.iter().map(set).collect::<Result<_>>()?,
                n: count("n")?,
                head: set(&v["head"])?,
            },
            Some("displacement") => {
                CheckSpec::Displacement { g: g.parse_element(v["g"].as_str().ok_or_else(|| bad("g"))?)? }
            }
            Some("scattered") => CheckSpec::Scattered { depth: count("depth")? },
            other => return Err(Error::Config(format!("unknown certificate kind {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub check: CheckSpec,
    pub verdict: Verdict,
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub label: Label,
    /// The cell restricted to the window.
    pub elements: Vec<Element>,
    /// A set expression describing the whole cell, when one exists.
    pub predicate: Option<String>,
    pub certificates: Vec<Certificate>,
}

impl Cell {
    pub fn new(label: Label, elements: Vec<Element>) -> Self {
        Cell { label, elements, predicate: None, certificates: Vec::new() }
    }

    pub fn with_predicate(mut self, predicate: impl Into<String>) -> Self {
        self.predicate = Some(predicate.into());
        self
    }

    /// The cell as a subset: its predicate if it has one, else its elements.
    pub fn subset(&self, g: &Group) -> Result<SubsetView> {
        match &self.predicate {
            Some(p) => Ok(parse_set(g, p)?),
            None => Ok(SubsetView::explicit(self.label.to_text(), self.elements.clone())),
        }
    }

    /// Runs `check` against the cell and records the verdict.
    pub fn certify(&mut self, g: &Group, w: &Window, check: CheckSpec) -> Result<&Verdict> {
        let verdict = check.run(g, &self.subset(g)?, w)?;
        self.certificates.push(Certificate { check, verdict });
        Ok(&self.certificates.last().unwrap().verdict)
    }
}

#[derive(Clone, Debug)]
pub struct Partition {
    pub method: String,
    pub window: WindowSpec,
    pub seed: u64,
    pub cells: Vec<Cell>,
}

impl Partition {
    pub fn new(method: impl Into<String>, window: WindowSpec, cells: Vec<Cell>) -> Self {
        Partition { method: method.into(), window, seed: 0, cells }
    }

    pub fn cell(&self, label: &Label) -> Option<&Cell> {
        self.cells.iter().find(|c| &c.label == label)
    }

    pub fn labels(&self) -> Vec<Label> {
        self.cells.iter().map(|c| c.label.clone()).collect()
    }

    /// Meet of all certificate statuses; `Holds` when there are none.
    pub fn status(&self) -> Status {
        self.cells
            .iter()
            .flat_map(|c| &c.certificates)
            .fold(Status::Holds, |s, c| s.and(c.verdict.status))
    }

    /// Checks that the cells are pairwise disjoint and cover the window.
    pub fn check_total(&self, w: &Window) -> Result<()> {
        let mut owner: HashMap<&Element, &Label> = HashMap::new();
        for c in &self.cells {
            for x in &c.elements {
                if !w.contains(x) {
                    return Err(Error::Precondition(format!("cell {} has an element outside the window", c.label.to_text())));
                }
                if let Some(l) = owner.insert(x, &c.label) {
                    return Err(Error::Precondition(format!(
                        "cells {} and {} overlap",
                        l.to_text(),
                        c.label.to_text()
                    )));
                }
            }
        }
        if owner.len() != w.len() {
            return Err(Error::Precondition(format!("cells cover {} of {} window elements", owner.len(), w.len())));
        }
        Ok(())
    }

    /// Runs every recorded check again and returns the fresh verdicts, cell
    /// by cell.
    pub fn reverify(&self, g: &Group) -> Result<Vec<Vec<Verdict>>> {
        let w = self.window.build(g)?;
        self.check_total(&w)?;
        self.cells
            .iter()
            .map(|c| {
                let a = c.subset(g)?;
                c.certificates.iter().map(|cert| cert.check.run(g, &a, &w)).collect()
            })
            .collect()
    }

    pub fn to_json(&self, g: &Group) -> Value {
        let cells: Vec<Value> = self
            .cells
            .iter()
            .map(|c| {
                json!({
                    "label": c.label.to_text(),
                    "size": c.elements.len(),
                    "elements": g.format_set(&c.elements),
                    "predicate": c.predicate,
                    "certificates": c.certificates.iter().map(|cert| {
                        let mut v = cert.check.to_json(g);
                        v["verdict"] = cert.verdict.to_json(g);
                        v
                    }).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "method": self.method,
            "group": serde_json::to_value(g.descriptor()).expect("descriptor serializes"),
            "window": self.window.to_json(),
            "seed": self.seed,
            "status": self.status().as_str(),
            "cells": cells,
        })
    }

    /// Reads a document produced by [`Partition::to_json`]. Recorded
    /// verdicts keep their status and note; witnesses are not restored.
    pub fn from_json(v: &Value) -> Result<(Group, Partition)> {
        if v["schema_version"].as_u64() != Some(SCHEMA_VERSION as u64) {
            return Err(Error::Config("unsupported partition schema version".into()));
        }
        let desc: GroupDescriptor =
            serde_json::from_value(v["group"].clone()).map_err(|e| Error::Descriptor(e.to_string()))?;
        let g = desc.build()?;
        let window = WindowSpec::from_json(&v["window"])?;
        let mut cells = Vec::new();
        for c in v["cells"].as_array().ok_or_else(|| Error::Config("`cells` missing".into()))? {
            let label = Label::from_text(c["label"].as_str().ok_or_else(|| Error::Config("cell label missing".into()))?)?;
            let elements = c["elements"]
                .as_array()
                .ok_or_else(|| Error::Config("cell elements missing".into()))?
                .iter()
                .map(|s| g.parse_element(s.as_str().unwrap_or("")))
                .collect::<Result<Vec<_>>>()?;
            let mut certificates = Vec::new();
            for cert in c["certificates"].as_array().map(Vec::as_slice).unwrap_or(&[]) {
                let check = CheckSpec::from_json(&g, cert)?;
                let status = match cert["verdict"]["status"].as_str() {
                    Some("holds") => Status::Holds,
                    Some("fails") => Status::Fails,
                    Some("inconclusive") => Status::Inconclusive,
                    _ => return Err(Error::Config("certificate verdict missing".into())),
                };
                let note = cert["verdict"]["note"].as_str().unwrap_or("").to_string();
                certificates.push(Certificate { check, verdict: Verdict { status, witness: None, note } });
            }
            cells.push(Cell { label, elements, predicate: c["predicate"].as_str().map(String::from), certificates });
        }
        let p = Partition {
            method: v["method"].as_str().unwrap_or("").to_string(),
            window,
            seed: v["seed"].as_u64().unwrap_or(0),
            cells,
        };
        Ok((g, p))
    }
}

/// Groups window elements by label into cells, in order of first label
/// appearance sorted by label.
pub fn cells_from_assignment(w: &Window, label: impl Fn(&Element) -> Label) -> Vec<Cell> {
    let mut by: std::collections::BTreeMap<Label, Vec<Element>> = Default::default();
    for x in w.elements() {
        by.entry(label(x)).or_default().push(x.clone());
    }
    by.into_iter().map(|(l, e)| Cell::new(l, e)).collect()
}
