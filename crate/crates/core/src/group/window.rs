use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Element, Group};

/// A finite enumerated portion of a group.
///
/// The core is the part of the window at least `margin` away from its
/// boundary; classifiers only draw test points from the core, so that the
/// translates they evaluate stay inside the window.
#[derive(Clone, Debug)]
pub struct Window {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    in_core: Vec<bool>,
    radius: Option<u32>,
    margin: u32,
}

impl Window {
    pub(crate) fn from_parts(elements: Vec<Element>, radius: Option<u32>, margin: u32, core: usize) -> Self {
        let in_core = (0..elements.len()).map(|i| i < core).collect();
        Window::with_mask(elements, in_core, radius, margin)
    }

    fn with_mask(elements: Vec<Element>, in_core: Vec<bool>, radius: Option<u32>, margin: u32) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        Window { elements, index, in_core, radius, margin }
    }

    /// A window over explicitly listed elements, all of them in the core.
    pub fn explicit(elements: Vec<Element>) -> Result<Self> {
        let n = elements.len();
        Window::explicit_with_core(elements, vec![true; n])
    }

    pub fn explicit_with_core(elements: Vec<Element>, in_core: Vec<bool>) -> Result<Self> {
        if in_core.len() != elements.len() {
            return Err(Error::Config("core mask length differs from window length".into()));
        }
        let w = Window::with_mask(elements, in_core, None, 0);
        if w.index.len() != w.elements.len() {
            return Err(Error::Config("window elements are not pairwise distinct".into()));
        }
        Ok(w)
    }

    /// The integer interval `[lo, hi]` of `Z` with core `[lo + margin, hi - margin]`.
    ///
    /// Elements are listed by absolute value, positive first, which agrees
    /// with the order of ball enumeration in `Z`.
    pub fn interval(lo: i64, hi: i64, margin: u32) -> Self {
        let m = margin as i64;
        let mut values: Vec<i64> = (lo..=hi).collect();
        values.sort_by_key(|&x| (x.unsigned_abs(), x < 0));
        let elements: Vec<Element> = values.iter().map(|&x| Element::int(x)).collect();
        let in_core = values.iter().map(|&x| x >= lo + m && x <= hi - m).collect();
        Window::with_mask(elements, in_core, None, margin)
    }

    /// The first `n` elements of the group's canonical enumeration, with the
    /// first `core` of them forming the core.
    pub fn first_n(group: &Group, n: usize, core: usize) -> Result<Self> {
        let elements = (0..n)
            .map(|i| {
                group
                    .nth_element(i)
                    .ok_or_else(|| Error::Config(format!("group has no enumeration element {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Window::from_parts(elements, None, 0, core.min(n)))
    }

    /// Every element of a finite group.
    pub fn whole(group: &Group) -> Result<Self> {
        let elements = group
            .elements()
            .ok_or_else(|| Error::Precondition("whole-group window needs a finite enumerable group".into()))?;
        let n = elements.len();
        Ok(Window::from_parts(elements, None, 0, n))
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.index.contains_key(g)
    }

    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn is_core(&self, i: usize) -> bool {
        self.in_core[i]
    }

    pub fn in_core(&self, g: &Element) -> bool {
        self.index_of(g).is_some_and(|i| self.in_core[i])
    }

    pub fn core(&self) -> impl Iterator<Item = &Element> + '_ {
        self.elements.iter().zip(&self.in_core).filter(|(_, &c)| c).map(|(g, _)| g)
    }

    pub fn core_len(&self) -> usize {
        self.in_core.iter().filter(|&&c| c).count()
    }

    pub fn radius(&self) -> Option<u32> {
        self.radius
    }

    pub fn margin(&self) -> u32 {
        self.margin
    }

    /// Same elements with a new core of the given indices.
    pub fn with_core_indices(&self, core: impl IntoIterator<Item = usize>) -> Self {
        let mut in_core = vec![false; self.len()];
        for i in core {
            in_core[i] = true;
        }
        Window::with_mask(self.elements.clone(), in_core, self.radius, self.margin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_core() {
        let w = Window::interval(-5, 5, 2);
        assert_eq!(w.len(), 11);
        assert_eq!(w.core_len(), 7);
        assert!(w.in_core(&Element::int(3)));
        assert!(!w.in_core(&Element::int(4)));
    }

    #[test]
    fn ball_margin_core() {
        let f2 = Group::free(2);
        let w = f2.enumerate_ball_with_margin(3, 1).unwrap();
        assert_eq!(w.len(), 53);
        assert_eq!(w.core_len(), 17);
        assert!(w.core().all(|g| f2.word_length(g).unwrap() <= 2));
    }

    #[test]
    fn rejects_duplicates() {
        assert!(Window::explicit(vec![Element::int(1), Element::int(1)]).is_err());
    }
}
