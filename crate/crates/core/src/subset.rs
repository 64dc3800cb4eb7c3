//! Subsets of groups as membership oracles.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::ballean::Side;
use crate::group::{Element, Group, Window};

pub type Predicate = Arc<dyn Fn(&Element) -> bool + Send + Sync>;

/// A subset of a group given by a pure membership predicate, optionally
/// backed by an explicit finite list.
#[derive(Clone)]
pub struct SubsetView {
    name: String,
    pred: Predicate,
    finite: Option<Arc<Vec<Element>>>,
}

impl fmt::Debug for SubsetView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubsetView").field("name", &self.name).finish()
    }
}

impl SubsetView {
    pub fn new(name: impl Into<String>, pred: impl Fn(&Element) -> bool + Send + Sync + 'static) -> Self {
        SubsetView { name: name.into(), pred: Arc::new(pred), finite: None }
    }

    pub fn explicit(name: impl Into<String>, elements: Vec<Element>) -> Self {
        let mut seen = HashSet::new();
        let list: Vec<Element> = elements.into_iter().filter(|x| seen.insert(x.clone())).collect();
        SubsetView {
            name: name.into(),
            pred: Arc::new(move |x| seen.contains(x)),
            finite: Some(Arc::new(list)),
        }
    }

    pub fn all() -> Self {
        SubsetView::new("all", |_| true)
    }

    pub fn empty() -> Self {
        SubsetView::explicit("empty", Vec::new())
    }

    #[inline]
    pub fn contains(&self, x: &Element) -> bool {
        (self.pred)(x)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The explicit member list, when the set was given by one.
    pub fn finite_elements(&self) -> Option<&[Element]> {
        self.finite.as_deref().map(|v| v.as_slice())
    }

    /// `A ∩ W` in window order.
    pub fn in_window(&self, w: &Window) -> Vec<Element> {
        w.elements().iter().filter(|x| self.contains(x)).cloned().collect()
    }

    /// `A ∩ core(W)` in window order.
    pub fn in_core(&self, w: &Window) -> Vec<Element> {
        w.core().filter(|x| self.contains(x)).cloned().collect()
    }

    pub fn union(&self, other: &SubsetView) -> SubsetView {
        let (a, b) = (self.pred.clone(), other.pred.clone());
        let finite = match (&self.finite, &other.finite) {
            (Some(x), Some(y)) => {
                let mut v: Vec<Element> = x.to_vec();
                v.extend(y.iter().filter(|g| !x.contains(g)).cloned());
                Some(Arc::new(v))
            }
            _ => None,
        };
        SubsetView {
            name: format!("({} union {})", self.name, other.name),
            pred: Arc::new(move |x| a(x) || b(x)),
            finite,
        }
    }

    pub fn inter(&self, other: &SubsetView) -> SubsetView {
        let (a, b) = (self.pred.clone(), other.pred.clone());
        let finite = match (&self.finite, &other.finite) {
            (Some(x), _) => Some(Arc::new(x.iter().filter(|g| b(g)).cloned().collect())),
            (_, Some(y)) => Some(Arc::new(y.iter().filter(|g| a(g)).cloned().collect())),
            _ => None,
        };
        SubsetView {
            name: format!("({} inter {})", self.name, other.name),
            pred: Arc::new(move |x| a(x) && b(x)),
            finite,
        }
    }

    pub fn diff(&self, other: &SubsetView) -> SubsetView {
        let (a, b) = (self.pred.clone(), other.pred.clone());
        let finite = self
            .finite
            .as_ref()
            .map(|x| Arc::new(x.iter().filter(|g| !b(g)).cloned().collect()));
        SubsetView {
            name: format!("({} diff {})", self.name, other.name),
            pred: Arc::new(move |x| a(x) && !b(x)),
            finite,
        }
    }

    pub fn complement(&self) -> SubsetView {
        let a = self.pred.clone();
        SubsetView {
            name: format!("complement {}", self.name),
            pred: Arc::new(move |x| !a(x)),
            finite: None,
        }
    }

    /// `gA` on the left side, `Ag` on the right side.
    pub fn translate(&self, group: &Group, g: &Element, side: Side) -> SubsetView {
        let a = self.pred.clone();
        let gi = group.inverse(g);
        let grp = group.clone();
        let finite = self
            .finite
            .as_ref()
            .map(|x| Arc::new(x.iter().map(|y| side.act(group, g, y)).collect()));
        SubsetView {
            name: format!("translate({}) {}", group.format_element(g), self.name),
            pred: Arc::new(move |x| a(&side.act(&grp, &gi, x))),
            finite,
        }
    }

    /// `A⁻¹`.
    pub fn inverse(&self, group: &Group) -> SubsetView {
        let a = self.pred.clone();
        let grp = group.clone();
        let finite = self
            .finite
            .as_ref()
            .map(|x| Arc::new(x.iter().map(|y| group.inverse(y)).collect()));
        SubsetView {
            name: format!("inverse {}", self.name),
            pred: Arc::new(move |x| a(&grp.inverse(x))),
            finite,
        }
    }
}

/// Built-in subsets.
pub mod atoms {
    use super::*;
    use crate::group::GroupKind;

    fn int_set(name: String, f: impl Fn(i64) -> bool + Send + Sync + 'static) -> SubsetView {
        SubsetView::new(name, move |x: &Element| x.as_int().is_some_and(&f))
    }

    pub fn isqrt(x: i64) -> i64 {
        if x < 0 {
            return -1;
        }
        let mut r = (x as f64).sqrt() as i64;
        while r * r > x {
            r -= 1;
        }
        while (r + 1) * (r + 1) <= x {
            r += 1;
        }
        r
    }

    pub fn evens() -> SubsetView {
        multiples(2).renamed("evens")
    }

    pub fn odds() -> SubsetView {
        int_set("odds".into(), |x| x.rem_euclid(2) == 1)
    }

    pub fn multiples(k: i64) -> SubsetView {
        int_set(format!("multiples({k})"), move |x| if k == 0 { x == 0 } else { x % k == 0 })
    }

    pub fn naturals() -> SubsetView {
        int_set("naturals".into(), |x| x >= 0)
    }

    pub fn squares() -> SubsetView {
        int_set("squares".into(), |x| {
            let r = isqrt(x);
            r >= 0 && r * r == x
        })
    }

    /// `{b^n : n ≥ 0}`.
    pub fn powers(b: i64) -> SubsetView {
        int_set(format!("powers({b})"), move |x| {
            if b < 2 || x < 1 {
                return b == 1 && x == 1;
            }
            let mut p = 1i64;
            while p < x {
                p = match p.checked_mul(b) {
                    Some(q) => q,
                    None => return false,
                };
            }
            p == x
        })
    }

    /// `⋃_n [n², n² + n]`.
    pub fn square_runs() -> SubsetView {
        int_set("square-runs".into(), |x| {
            let r = isqrt(x);
            r >= 0 && x <= r * r + r
        })
    }

    /// Reduced words whose first letter is `a` or its inverse.
    pub fn lambda(letter: u32) -> SubsetView {
        SubsetView::new(format!("lambda={letter}"), move |x: &Element| {
            x.as_word()
                .and_then(|w| w.first())
                .is_some_and(|&c| crate::group::word::letter_index(c) == letter)
        })
    }

    /// Reduced words whose last letter is `a` or its inverse.
    pub fn rho(letter: u32) -> SubsetView {
        SubsetView::new(format!("rho={letter}"), move |x: &Element| {
            x.as_word()
                .and_then(|w| w.last())
                .is_some_and(|&c| crate::group::word::letter_index(c) == letter)
        })
    }

    /// Support size for direct sums, word length otherwise.
    pub fn weight(group: &Group, k: u32) -> SubsetView {
        let g = group.clone();
        let support = matches!(group.kind(), GroupKind::DirectSum { .. });
        SubsetView::new(format!("weight={k}"), move |x: &Element| {
            if support {
                x.as_residues().is_some_and(|r| r.iter().filter(|&&c| c != 0).count() == k as usize)
            } else {
                g.word_length(x).is_ok_and(|l| l == k)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::atoms::*;
    use super::*;

    #[test]
    fn integer_atoms() {
        let has = |s: &SubsetView, v: i64| s.contains(&Element::int(v));
        assert!(has(&evens(), -4) && !has(&evens(), 3));
        assert!(has(&squares(), 49) && !has(&squares(), 50) && !has(&squares(), -1));
        assert!(has(&powers(2), 1) && has(&powers(2), 1024) && !has(&powers(2), 12));
        assert!(has(&square_runs(), 9) && has(&square_runs(), 12) && !has(&square_runs(), 13));
        assert!(has(&multiples(3), -9) && !has(&multiples(3), 1));
    }

    #[test]
    fn set_algebra() {
        let z = Group::integers();
        let a = evens().union(&multiples(3));
        assert!(a.contains(&Element::int(9)) && !a.contains(&Element::int(5)));
        let b = evens().translate(&z, &Element::int(1), Side::Left);
        assert!(b.contains(&Element::int(3)));
        let c = naturals().inverse(&z);
        assert!(c.contains(&Element::int(-3)) && !c.contains(&Element::int(2)));
        let d = SubsetView::explicit("d", vec![Element::int(1), Element::int(2)]).diff(&evens());
        assert_eq!(d.finite_elements().unwrap(), &[Element::int(1)]);
    }

    #[test]
    fn letter_atoms() {
        let f2 = Group::free(2);
        let g = f2.parse_element("Ab").unwrap();
        assert!(lambda(0).contains(&g) && rho(1).contains(&g));
        assert!(!lambda(0).contains(&f2.identity()));
    }
}
