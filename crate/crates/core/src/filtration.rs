//! Filtrations of countable groups by levels `0, 1, 2, ...`, canonical
//! factorizations and the partitions built from them.
//!
//! A filtration is an increasing chain `G_0 = {e} ⊂ G_1 ⊂ ...` together with
//! representatives `X_α` such that `G_{α+1} ∖ G_α = G_α X_α`. Each `g ≠ e`
//! then factors uniquely as `x_{α_s} ... x_{α_1}` with `α_s < ... < α_1`,
//! found by stripping factors from the right.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{Element, Group, GroupKind, Window};
use crate::partition::{Cell, CheckSpec, Label, Partition, WindowSpec};
use crate::verdict::{Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// `G_α` spanned by the first `α` basis elements of a countable direct
    /// sum; `X_α = {c·b_{α+1} : c ≠ 0}`.
    StandardDirectSum,
    /// `K ⊕ H` with `K` infinite as level 1: `G_1 = K`, `X_0 = K ∖ {e}`, and
    /// above that the standard levels of the countable direct sum `H`.
    ProductKH,
}

impl Scheme {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "standard-direct-sum" => Ok(Scheme::StandardDirectSum),
            "product-K-H" => Ok(Scheme::ProductKH),
            _ => Err(Error::Config(format!("unknown filtration scheme `{name}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::StandardDirectSum => "standard-direct-sum",
            Scheme::ProductKH => "product-K-H",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Filtration {
    group: Group,
    scheme: Scheme,
}

/// `g = x_{α_s} ... x_{α_1}`, factors listed left to right, so levels
/// increase along `factors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub factors: Vec<(usize, Element)>,
}

impl CanonicalForm {
    pub fn s(&self) -> usize {
        self.factors.len()
    }

    /// The level set `Γ(g)` in increasing order.
    pub fn levels(&self) -> Vec<usize> {
        self.factors.iter().map(|(l, _)| *l).collect()
    }

    /// `γ_1(g), γ_2(g), ...`: levels from the top down.
    pub fn gammas(&self) -> Vec<usize> {
        self.factors.iter().rev().map(|(l, _)| *l).collect()
    }

    pub fn recompose(&self, g: &Group) -> Element {
        self.factors.iter().fold(g.identity(), |acc, (_, x)| g.mul(&acc, x))
    }
}

fn last_nonzero(r: &[u32]) -> Option<usize> {
    r.iter().rposition(|&c| c != 0)
}

fn is_countable_sum(g: &Group) -> bool {
    matches!(g.kind(), GroupKind::DirectSum { countable: true, .. })
}

impl Filtration {
    pub fn new(g: &Group, scheme: Scheme) -> Result<Self> {
        if g.is_finitely_generated() {
            return Err(Error::NoFiltration);
        }
        let ok = match (scheme, g.kind()) {
            (Scheme::StandardDirectSum, _) => is_countable_sum(g),
            (Scheme::ProductKH, GroupKind::Product { left, right }) => {
                !left.is_finite() && left.nth_element(0).is_some() && is_countable_sum(right)
            }
            _ => false,
        };
        if !ok {
            return Err(Error::Descriptor(format!("scheme `{}` does not apply to this group", scheme.name())));
        }
        Ok(Filtration { group: g.clone(), scheme })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    fn parts<'a>(&self, g: &'a Element) -> (Option<&'a Element>, &'a [u32]) {
        match g {
            Element::Pair(k, h) => (Some(k), h.as_residues().unwrap_or(&[])),
            _ => (None, g.as_residues().unwrap_or(&[])),
        }
    }

    fn right(&self) -> &Group {
        match self.group.kind() {
            GroupKind::Product { right, .. } => right,
            _ => &self.group,
        }
    }

    fn left(&self) -> Option<&Group> {
        match self.group.kind() {
            GroupKind::Product { left, .. } if self.scheme == Scheme::ProductKH => Some(left),
            _ => None,
        }
    }

    /// Number of levels taken by the left factor before the direct sum starts.
    fn offset(&self) -> usize {
        usize::from(self.scheme == Scheme::ProductKH)
    }

    /// The residue vector `c·b_{i+1}` of the direct-sum part.
    fn pure(&self, i: usize, c: u32) -> Element {
        let mut r = vec![0; i + 1];
        r[i] = c;
        self.wrap(None, Element::Residues(r))
    }

    fn wrap(&self, k: Option<Element>, h: Element) -> Element {
        match self.left() {
            Some(left) => Element::Pair(Box::new(k.unwrap_or_else(|| left.identity())), Box::new(h)),
            None => h,
        }
    }

    /// The `α` with `g ∈ G_{α+1} ∖ G_α`, or `None` for `e`.
    pub fn level(&self, g: &Element) -> Option<usize> {
        let (k, h) = self.parts(g);
        match last_nonzero(h) {
            Some(i) => Some(i + self.offset()),
            None => match (k, self.left()) {
                (Some(k), Some(left)) if *k != left.identity() => Some(0),
                _ => None,
            },
        }
    }

    /// `level + 1`, and 0 for `e`: the least `α` with `g ∈ G_α`.
    pub fn height(&self, g: &Element) -> usize {
        self.level(g).map_or(0, |l| l + 1)
    }

    /// Splits `g ≠ e` as `g'·x` with `x ∈ X_α` at the level of `g`.
    pub fn strip(&self, g: &Element) -> Option<(Element, usize, Element)> {
        let alpha = self.level(g)?;
        let (k, h) = self.parts(g);
        if alpha < self.offset() {
            let x = self.wrap(k.cloned(), self.right().identity());
            return Some((self.group.identity(), alpha, x));
        }
        let i = alpha - self.offset();
        let x = self.pure(i, h[i]);
        let mut rest = h[..i].to_vec();
        while rest.last() == Some(&0) {
            rest.pop();
        }
        Some((self.wrap(k.cloned(), Element::Residues(rest)), alpha, x))
    }

    pub fn canonical_form(&self, g: &Element) -> CanonicalForm {
        let mut factors = Vec::new();
        let mut cur = g.clone();
        while let Some((rest, alpha, x)) = self.strip(&cur) {
            factors.push((alpha, x));
            cur = rest;
        }
        factors.reverse();
        CanonicalForm { factors }
    }

    /// The representatives `X_α` when finite, each the least element of its
    /// coset.
    pub fn reps(&self, alpha: usize) -> Option<Vec<Element>> {
        if alpha < self.offset() {
            return None;
        }
        let i = alpha - self.offset();
        let m = self.right().modulus_at(i)?;
        Some((1..m).map(|c| self.pure(i, c)).collect())
    }

    /// The least representative in `X_α`.
    pub fn least_rep(&self, alpha: usize) -> Element {
        match self.left() {
            Some(left) if alpha == 0 => {
                self.wrap(Some(left.nth_element(1).expect("infinite")), self.right().identity())
            }
            _ => self.pure(alpha - self.offset(), 1),
        }
    }

    /// `(s(g), s(g⁻¹))`, or `None` for `e`.
    pub fn small_partition_cell(&self, g: &Element) -> Option<(usize, usize)> {
        let s = self.canonical_form(g).s();
        (s > 0).then(|| (s, self.canonical_form(&self.group.inverse(g)).s()))
    }

    /// `χ(g) = (γ_1(g), γ_2(g), ...)`, levels read from the top down.
    pub fn chi_cov_cell(&self, g: &Element) -> Vec<usize> {
        self.canonical_form(g).gammas()
    }

    /// The cell `α` of `g`: with `g = g_1 x_{γ_m} ... x_{γ_1}`, `g_1 ∈ G_1`,
    /// the level `γ_{π(g_1)}` where `π(k)` is one more than the enumeration
    /// index of `k` in `G_1`. `None` when that position does not exist.
    pub fn aleph1_large_cell(&self, g: &Element) -> Result<Option<usize>> {
        let left = self
            .left()
            .ok_or_else(|| Error::Precondition("the first level subgroup is finite".into()))?;
        let form = self.canonical_form(g);
        let g1 = match form.factors.first() {
            Some((0, x)) => match x {
                Element::Pair(k, _) => (**k).clone(),
                _ => unreachable!("product elements are pairs"),
            },
            _ => left.identity(),
        };
        let gammas: Vec<usize> = form.gammas().into_iter().filter(|&l| l > 0).collect();
        let pi = left
            .enumeration_index(&g1)
            .ok_or_else(|| Error::Precondition("the first level subgroup is not enumerable".into()))?
            + 1;
        Ok(gammas.get(pi - 1).copied())
    }

    /// The radius `{e, a_α}·{first n elements of G_1}` used to certify cell `α`.
    pub fn aleph1_radius(&self, alpha: usize, n: usize) -> Result<Vec<Element>> {
        let left = self
            .left()
            .ok_or_else(|| Error::Precondition("the first level subgroup is finite".into()))?;
        let a = self.least_rep(alpha);
        let mut out = Vec::with_capacity(2 * n);
        for t in [self.group.identity(), a] {
            for i in 0..n {
                let k = self.wrap(left.nth_element(i), self.right().identity());
                out.push(self.group.mul(&t, &k));
            }
        }
        Ok(out)
    }

    /// `h = x_γ` for the least `γ` above the height of every element of `K`
    /// with `γ ∉ s`.
    pub fn separating_element(&self, k: &[Element], s: &[usize]) -> Element {
        let mut gamma = k.iter().map(|x| self.height(x) + 1).max().unwrap_or(0);
        while s.contains(&gamma) || gamma < self.offset() && self.left().is_none() {
            gamma += 1;
        }
        self.least_rep(gamma)
    }

    /// Checks `K·H_s ∩ h·H_s = ∅` over the part of `H_s` inside the window.
    pub fn check_separation(&self, k: &[Element], s: &[usize], h: &Element, w: &Window) -> Verdict {
        let g = &self.group;
        let cell: Vec<&Element> = w.elements().iter().filter(|x| self.chi_cov_cell(x) == s).collect();
        let left: HashSet<Element> = k.iter().flat_map(|t| cell.iter().map(move |y| g.mul(t, y))).collect();
        match cell.iter().map(|y| g.mul(h, y)).find(|z| left.contains(z)) {
            Some(z) => Verdict::fails(Some(Witness::Element(z)), "K·H_s meets h·H_s"),
            None => Verdict::holds(
                Some(Witness::Element(h.clone())),
                format!("K·H_s and h·H_s are disjoint over {} cell elements", cell.len()),
            ),
        }
    }

    /// `(χ_{α_s}(x_{α_s}), χ_{α_{s-1}}(x_{α_s} x_{α_{s-1}}), ...)` for level
    /// colorings `χ_α` of `G_{α+1} ∖ G_α`.
    pub fn scattered_partition_cell(
        &self,
        g: &Element,
        coloring: &dyn Fn(usize, &Element) -> Option<usize>,
    ) -> Result<Vec<usize>> {
        let mut prefix = self.group.identity();
        let mut out = Vec::new();
        for (alpha, x) in self.canonical_form(g).factors {
            prefix = self.group.mul(&prefix, &x);
            let c = coloring(alpha, &prefix)
                .ok_or_else(|| Error::Config(format!("no coloring for level {alpha}")))?;
            out.push(c);
        }
        Ok(out)
    }

    /// The base colorings for a countable group: every point its own color.
    pub fn singleton_coloring(&self) -> impl Fn(usize, &Element) -> Option<usize> + '_ {
        |_, x| self.group.enumeration_index(x)
    }
}

/// Cells `D_n = {g : s(g) = n}` over the window, with `e` in cell 0.
pub fn d_n_cells(f: &Filtration, w: &Window) -> Vec<Cell> {
    crate::partition::cells_from_assignment(w, |x| Label::Index(f.canonical_form(x).s()))
}

/// The partition `{e} ∪ ⋃ D_n ∩ D_m⁻¹`, every cell checked for left
/// smallness with the given radii and translate bound.
pub fn small_partition(f: &Filtration, spec: &WindowSpec, radii: &[u32], bound: usize) -> Result<Partition> {
    let g = f.group();
    let w = spec.build(g)?;
    let mut cells = crate::partition::cells_from_assignment(&w, |x| match f.small_partition_cell(x) {
        Some((n, m)) => Label::Pair(n, m),
        None => Label::Reserved,
    });
    for c in cells.iter_mut().filter(|c| c.label != Label::Reserved) {
        c.certify(g, &w, CheckSpec::Small { radii: radii.to_vec(), bound })?;
    }
    Ok(Partition::new("filtration-small", spec.clone(), cells))
}

/// Cells `H_s = χ⁻¹(s)` over the window, `e` reserved.
pub fn chi_partition(f: &Filtration, spec: &WindowSpec) -> Result<Partition> {
    let w = spec.build(f.group())?;
    let cells = crate::partition::cells_from_assignment(&w, |x| {
        let s = f.chi_cov_cell(x);
        if s.is_empty() {
            Label::Reserved
        } else {
            Label::Seq(s)
        }
    });
    Ok(Partition::new("chi-cov", spec.clone(), cells))
}

/// Cells `χ⁻¹(m)` for the singleton colorings, each checked for
/// scatteredness to the given depth.
pub fn scattered_partition(f: &Filtration, spec: &WindowSpec, depth: usize) -> Result<Partition> {
    let g = f.group();
    let w = spec.build(g)?;
    let coloring = f.singleton_coloring();
    let mut labels = Vec::with_capacity(w.len());
    for x in w.elements() {
        let t = f.scattered_partition_cell(x, &coloring)?;
        labels.push(if t.is_empty() { Label::Reserved } else { Label::Seq(t) });
    }
    let mut cells = crate::partition::cells_from_assignment(&w, |x| labels[w.index_of(x).unwrap()].clone());
    for c in cells.iter_mut().filter(|c| c.label != Label::Reserved) {
        c.certify(g, &w, CheckSpec::Scattered { depth })?;
    }
    Ok(Partition::new("scattered", spec.clone(), cells))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> (Group, Filtration) {
        let g = Group::countable_sum(2).unwrap();
        let f = Filtration::new(&g, Scheme::StandardDirectSum).unwrap();
        (g, f)
    }

    #[test]
    fn no_filtration_for_z() {
        assert_eq!(Filtration::new(&Group::integers(), Scheme::StandardDirectSum).unwrap_err(), Error::NoFiltration);
    }

    #[test]
    fn reps() {
        let (g, f) = z2();
        assert_eq!(f.reps(2).unwrap(), vec![g.parse_element("b3").unwrap()]);
        let g3 = Group::countable_sum(3).unwrap();
        let f3 = Filtration::new(&g3, Scheme::StandardDirectSum).unwrap();
        let expect: Vec<Element> = ["b1", "2b1"].iter().map(|s| g3.parse_element(s).unwrap()).collect();
        assert_eq!(f3.reps(0).unwrap(), expect);
    }

    #[test]
    fn canonical_forms() {
        let (g, f) = z2();
        let x = g.parse_element("b1+b3").unwrap();
        let form = f.canonical_form(&x);
        assert_eq!(form.levels(), vec![0, 2]);
        assert_eq!(form.factors[0].1, g.parse_element("b1").unwrap());
        assert_eq!(form.recompose(&g), x);
        assert_eq!(f.canonical_form(&g.identity()).s(), 0);
        assert_eq!(f.chi_cov_cell(&x), vec![2, 0]);
        assert_eq!(f.chi_cov_cell(&g.parse_element("b2").unwrap()), vec![1]);
    }

    #[test]
    fn separating() {
        let (g, f) = z2();
        let k = vec![g.parse_element("b1").unwrap(), g.parse_element("b2").unwrap()];
        assert_eq!(f.separating_element(&k, &[0]), g.parse_element("b4").unwrap());
        assert_eq!(f.separating_element(&[], &[0]), g.parse_element("b2").unwrap());
    }

    #[test]
    fn aleph1_rule() {
        let k = Group::countable_sum(2).unwrap();
        let g = Group::product(k.clone(), k);
        let f = Filtration::new(&g, Scheme::ProductKH).unwrap();
        // g1 = e, so pi = 1 and the cell is the top level
        let x = g.parse_element("<e|b2+b5>").unwrap();
        assert_eq!(f.aleph1_large_cell(&x).unwrap(), Some(5));
        // pi(b1) = 2 picks the second level from the top
        let y = g.parse_element("<b1|b2+b5>").unwrap();
        assert_eq!(f.aleph1_large_cell(&y).unwrap(), Some(2));
        assert_eq!(f.aleph1_large_cell(&g.parse_element("<b1|e>").unwrap()).unwrap(), None);
        let (_, std) = z2();
        assert!(std.aleph1_large_cell(&Element::Residues(vec![1])).is_err());
    }
}
