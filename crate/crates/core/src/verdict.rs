use serde_json::{json, Value};

use crate::group::{Element, Group};

/// Outcome of a window-scale check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl Status {
    /// CLI exit code: 0 holds, 1 fails, 2 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Inconclusive => "inconclusive",
        }
    }

    /// Meet in the order holds > inconclusive > fails.
    pub fn and(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Holds,
        }
    }
}

/// Checkable evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Element(Element),
    Set(Vec<Element>),
    /// A radius `F` together with a point, e.g. an interior point of `A`
    /// for `F`, or an element not covered by `FA`.
    RadiusPoint { radius: Vec<Element>, point: Element },
    /// Several radii, e.g. the `γ` produced for each pair in the axiom check.
    Radii(Vec<Vec<Element>>),
    /// A translate sequence `g_1, ..., g_n`.
    Sequence(Vec<Element>),
    /// A piecewise shifted FP pattern.
    Pattern { gs: Vec<Element>, bs: Vec<Element> },
    /// A count realized at a point for a radius, as in n-thinness.
    Count { n: usize, radius: Vec<Element>, point: Option<Element> },
}

impl Witness {
    pub fn to_json(&self, g: &Group) -> Value {
        let set = |s: &[Element]| Value::from(g.format_set(s));
        match self {
            Witness::Element(x) => json!({"element": g.format_element(x)}),
            Witness::Set(s) => json!({"set": set(s)}),
            Witness::RadiusPoint { radius, point } => {
                json!({"radius": set(radius), "point": g.format_element(point)})
            }
            Witness::Radii(rs) => json!({"radii": rs.iter().map(|r| set(r)).collect::<Vec<_>>()}),
            Witness::Sequence(s) => json!({"sequence": set(s)}),
            Witness::Pattern { gs, bs } => json!({"gs": set(gs), "bs": set(bs)}),
            Witness::Count { n, radius, point } => json!({
                "n": n,
                "radius": set(radius),
                "point": point.as_ref().map(|p| g.format_element(p)),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub note: String,
}

impl Verdict {
    pub fn holds(witness: Option<Witness>, note: impl Into<String>) -> Self {
        Verdict { status: Status::Holds, witness, note: note.into() }
    }

    pub fn fails(witness: Option<Witness>, note: impl Into<String>) -> Self {
        Verdict { status: Status::Fails, witness, note: note.into() }
    }

    pub fn inconclusive(note: impl Into<String>) -> Self {
        Verdict { status: Status::Inconclusive, witness: None, note: note.into() }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn to_json(&self, g: &Group) -> Value {
        json!({
            "status": self.status.as_str(),
            "witness": self.witness.as_ref().map(|w| w.to_json(g)),
            "note": self.note,
        })
    }
}
