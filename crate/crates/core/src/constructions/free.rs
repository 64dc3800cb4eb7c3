//! Partitions of free groups by first and last letters.

use crate::ballean::Side;
use crate::error::{Error, Result};
use crate::group::word::{format_word, letter_index};
use crate::group::{Element, Group, GroupKind, Window};
use crate::partition::{CheckSpec, Label, Partition, WindowSpec};
use crate::verdict::{Verdict, Witness};

/// First and last letters of a nontrivial reduced word, sign ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LetterProjection {
    pub first: u32,
    pub last: u32,
}

pub fn lambda_rho(g: &Element) -> Result<LetterProjection> {
    let w = g
        .as_word()
        .ok_or_else(|| Error::DescriptorMismatch(format!("{g:?} is not a free-group word")))?;
    match (w.first(), w.last()) {
        (Some(&f), Some(&l)) => Ok(LetterProjection { first: letter_index(f), last: letter_index(l) }),
        _ => Err(Error::Precondition("first and last letters of e are undefined".into())),
    }
}

fn letter_name(l: u32) -> String {
    format_word(&[l as i32 + 1])
}

fn rank(g: &Group) -> Result<u32> {
    match g.kind() {
        GroupKind::Free { rank: Some(r) } => Ok(*r),
        _ => Err(Error::Descriptor("this construction needs a free group of finite rank".into())),
    }
}

/// `P_a ∋ g` for `a = λ(g)`; `e` is reserved.
pub fn free_3large_cell(g: &Element) -> Label {
    match lambda_rho(g) {
        Ok(p) => Label::Letter(p.first),
        Err(_) => Label::Reserved,
    }
}

/// Cells `P_a` over the window, each certified left large with `{e, a}`.
pub fn free_3large_partition(g: &Group, spec: &WindowSpec) -> Result<Partition> {
    let r = rank(g)?;
    let w = spec.build(g)?;
    let mut cells = crate::partition::cells_from_assignment(&w, free_3large_cell);
    for c in &mut cells {
        if let Label::Letter(a) = c.label {
            c.predicate = Some(format!("lambda={}", letter_name(a)));
            let f = vec![g.identity(), g.letter(a)];
            c.certify(g, &w, CheckSpec::Large { side: Side::Left, f })?;
        }
    }
    debug_assert!(cells.iter().filter(|c| c.label != Label::Reserved).count() <= r as usize);
    Ok(Partition::new("free-3large", spec.clone(), cells))
}

/// An alphabet split into pairs `(x_α, y_α)`; `X` collects the `x_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub pairs: Vec<(u32, u32)>,
}

impl Pairing {
    /// Pairs `(0, 1), (2, 3), ...` over an alphabet of even rank.
    pub fn consecutive(rank: u32) -> Result<Self> {
        if rank == 0 || rank % 2 == 1 {
            return Err(Error::Precondition("pairing needs a nonempty alphabet of even size".into()));
        }
        Ok(Pairing { pairs: (0..rank / 2).map(|i| (2 * i, 2 * i + 1)).collect() })
    }

    pub fn new(pairs: Vec<(u32, u32)>) -> Result<Self> {
        let mut seen: Vec<u32> = pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("pairs must be disjoint".into()));
        }
        Ok(Pairing { pairs })
    }

    /// `(α, in X)` for a letter.
    fn locate(&self, l: u32) -> Option<(usize, bool)> {
        self.pairs.iter().enumerate().find_map(|(i, &(x, y))| {
            if l == x {
                Some((i, true))
            } else if l == y {
                Some((i, false))
            } else {
                None
            }
        })
    }

    /// `g ∈ L_α`: `λ(g) = x_α` with `ρ(g) ∈ X`, or `λ(g) = y_α` with `ρ(g) ∈ Y`.
    pub fn in_l(&self, g: &Element, alpha: usize) -> bool {
        let Ok(p) = lambda_rho(g) else { return false };
        match (self.locate(p.first), self.locate(p.last)) {
            (Some((a, cx)), Some((_, rx))) => a == alpha && cx == rx,
            _ => false,
        }
    }

    /// `g ∈ R_α`: `ρ(g) = x_α` with `λ(g) ∈ Y`, or `ρ(g) = y_α` with `λ(g) ∈ X`.
    pub fn in_r(&self, g: &Element, alpha: usize) -> bool {
        let Ok(p) = lambda_rho(g) else { return false };
        match (self.locate(p.first), self.locate(p.last)) {
            (Some((_, cx)), Some((a, rx))) => a == alpha && cx != rx,
            _ => false,
        }
    }

    fn predicate(&self, alpha: usize) -> String {
        let any = |kind: &str, in_x: bool| -> String {
            let terms: Vec<String> = self
                .pairs
                .iter()
                .map(|&(a, b)| format!("{kind}={}", letter_name(if in_x { a } else { b })))
                .collect();
            terms.join(" union ")
        };
        let (x, y) = (letter_name(self.pairs[alpha].0), letter_name(self.pairs[alpha].1));
        format!(
            "(lambda={x} inter ({})) union (lambda={y} inter ({})) union (rho={x} inter ({})) union (rho={y} inter ({}))",
            any("rho", true),
            any("rho", false),
            any("lambda", false),
            any("lambda", true),
        )
    }
}

/// The `α` with `g ∈ L_α ∪ R_α`, or `None` for `e` and letters outside the
/// pairing.
pub fn free_4large_cell(g: &Element, pairing: &Pairing) -> Option<usize> {
    let p = lambda_rho(g).ok()?;
    let (a, cx) = pairing.locate(p.first)?;
    let (b, rx) = pairing.locate(p.last)?;
    Some(if cx == rx { a } else { b })
}

/// Checks `{e, x_α, y_α}g ∩ L_α ≠ ∅` and `g{e, x_α, y_α} ∩ R_α ≠ ∅` for every
/// `g` in the window core, returning the number of points that fail.
pub fn free_4large_report(g: &Group, pairing: &Pairing, alpha: usize, w: &Window) -> Verdict {
    let (x, y) = pairing.pairs[alpha];
    let f = [g.identity(), g.letter(x), g.letter(y)];
    let mut bad = Vec::new();
    let mut n = 0;
    for h in w.core() {
        n += 1;
        let left = f.iter().any(|t| pairing.in_l(&g.mul(t, h), alpha));
        let right = f.iter().any(|t| pairing.in_r(&g.mul(h, t), alpha));
        if !(left && right) {
            bad.push(h.clone());
        }
    }
    if bad.is_empty() {
        Verdict::holds(None, format!("all {n} points meet L and R"))
    } else {
        Verdict::fails(Some(Witness::Set(bad)), "points missing L or R")
    }
}

/// Cells `P_α = L_α ∪ R_α`, each certified left and right large with
/// `{e, x_α, y_α}`.
pub fn free_4large_partition(g: &Group, pairing: &Pairing, spec: &WindowSpec) -> Result<Partition> {
    let r = rank(g)?;
    if pairing.pairs.iter().any(|&(x, y)| x >= r || y >= r) {
        return Err(Error::InvalidLetter { index: r, rank: r });
    }
    let w = spec.build(g)?;
    let mut cells = crate::partition::cells_from_assignment(&w, |h| match free_4large_cell(h, pairing) {
        Some(a) => Label::Index(a),
        None => Label::Reserved,
    });
    for c in &mut cells {
        if let Label::Index(a) = c.label {
            c.predicate = Some(pairing.predicate(a));
            let (x, y) = pairing.pairs[a];
            let f = vec![g.identity(), g.letter(x), g.letter(y)];
            c.certify(g, &w, CheckSpec::Large { side: Side::Left, f: f.clone() })?;
            c.certify(g, &w, CheckSpec::Large { side: Side::Right, f })?;
        }
    }
    Ok(Partition::new("free-4large", spec.clone(), cells))
}

/// Cell 1 when `ρ(g) ∈ A_1`, cell 2 otherwise (including `e`).
pub fn free_non_large_bipartition(g: &Element, a1: &[u32]) -> usize {
    match lambda_rho(g) {
        Ok(p) if a1.contains(&p.last) => 1,
        _ => 2,
    }
}

/// The two cells over the window; each is certified not left large for
/// the ball of radius `test_radius`.
pub fn free_bipartition(g: &Group, a1: &[u32], spec: &WindowSpec, test_radius: u32) -> Result<Partition> {
    let r = rank(g)?;
    if a1.is_empty() || a1.len() as u32 >= r || a1.iter().any(|&l| l >= r) {
        return Err(Error::Precondition("A_1 must be a nonempty proper part of the alphabet".into()));
    }
    let w = spec.build(g)?;
    let mut cells =
        crate::partition::cells_from_assignment(&w, |h| Label::Index(free_non_large_bipartition(h, a1)));
    let b1: Vec<String> = a1.iter().map(|&l| format!("rho={}", letter_name(l))).collect();
    let b1 = b1.join(" union ");
    let f = g.enumerate_ball(test_radius)?.elements().to_vec();
    for c in &mut cells {
        c.predicate = Some(if c.label == Label::Index(1) { b1.clone() } else { format!("complement ({b1})") });
        c.certify(g, &w, CheckSpec::NotLarge { side: Side::Left, f: f.clone() })?;
    }
    Ok(Partition::new("free-bipartition", spec.clone(), cells))
}

/// The least letter of `A_2` occurring in no word of `H`.
pub fn separating_letter(h: &[Element], a2: &[u32]) -> Result<u32> {
    let mut a2 = a2.to_vec();
    a2.sort_unstable();
    a2.into_iter()
        .find(|&c| h.iter().all(|w| w.as_word().is_none_or(|w| w.iter().all(|&l| letter_index(l) != c))))
        .ok_or_else(|| Error::NoWitness("every letter of A_2 occurs in H".into()))
}

/// Certifies `c ∉ H·B_1`: no `h⁻¹c` ends in a letter of `A_1`.
pub fn check_separating_letter(g: &Group, h: &[Element], a1: &[u32], c: u32) -> Verdict {
    let ce = g.letter(c);
    match h.iter().find(|t| free_non_large_bipartition(&g.mul(&g.inverse(t), &ce), a1) == 1) {
        Some(t) => Verdict::fails(Some(Witness::Element(t.clone())), "c lies in h·B_1"),
        None => Verdict::holds(Some(Witness::Element(ce)), "c is outside H·B_1"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;

    #[test]
    fn projections() {
        let f2 = Group::free(2);
        let p = |s: &str| lambda_rho(&f2.parse_element(s).unwrap()).unwrap();
        assert_eq!(p("abA"), LetterProjection { first: 0, last: 0 });
        assert_eq!(p("B"), LetterProjection { first: 1, last: 1 });
        assert_eq!(p("Ab"), LetterProjection { first: 0, last: 1 });
        assert!(lambda_rho(&f2.identity()).is_err());
        assert_eq!(free_3large_cell(&f2.identity()), Label::Reserved);
    }

    #[test]
    fn three_large_on_ball() {
        let f2 = Group::free(2);
        let spec = WindowSpec::Ball { radius: 6, margin: 1 };
        let p = free_3large_partition(&f2, &spec).unwrap();
        assert_eq!(p.cells.len(), 3);
        assert_eq!(p.status(), Status::Holds);
    }

    #[test]
    fn four_large_membership() {
        let f4 = Group::free(4);
        let pairing = Pairing::consecutive(4).unwrap();
        // x0 = a, y0 = b, X = {a, c}
        let g = f4.parse_element("abc").unwrap();
        assert!(pairing.in_l(&g, 0));
        assert_eq!(free_4large_cell(&g, &pairing), Some(0));
        assert_eq!(free_4large_cell(&f4.identity(), &pairing), None);
        let w = f4.enumerate_ball(4).unwrap();
        // e{e, a, b} = {e, a, b} misses R_0, every other point meets both
        let v = free_4large_report(&f4, &pairing, 0, &w);
        assert!(!v.is_holds());
        assert_eq!(v.witness, Some(Witness::Set(vec![f4.identity()])));
    }

    #[test]
    fn four_large_predicate_agrees() {
        let f4 = Group::free(4);
        let pairing = Pairing::consecutive(4).unwrap();
        let spec = WindowSpec::Ball { radius: 4, margin: 1 };
        let p = free_4large_partition(&f4, &pairing, &spec).unwrap();
        assert_eq!(p.status(), Status::Holds);
        for c in &p.cells {
            let s = c.subset(&f4).unwrap();
            assert!(c.elements.iter().all(|x| s.contains(x)));
        }
    }

    #[test]
    fn bipartition_rule() {
        let f3 = Group::free(3);
        assert_eq!(free_non_large_bipartition(&f3.parse_element("ba").unwrap(), &[0]), 1);
        assert_eq!(free_non_large_bipartition(&f3.parse_element("bc").unwrap(), &[0]), 2);
        assert_eq!(free_non_large_bipartition(&f3.identity(), &[0]), 2);
        let p = free_bipartition(&Group::free(2), &[0], &WindowSpec::Ball { radius: 7, margin: 2 }, 2).unwrap();
        assert_eq!(p.status(), Status::Holds);
    }

    #[test]
    fn separating_letters() {
        let f3 = Group::free(3);
        let h: Vec<Element> = ["a", "ab"].iter().map(|s| f3.parse_element(s).unwrap()).collect();
        assert_eq!(separating_letter(&h, &[1, 2]).unwrap(), 2);
        assert_eq!(separating_letter(&[], &[2, 1]).unwrap(), 1);
        assert!(check_separating_letter(&f3, &h, &[0], 2).is_holds());
        let f2 = Group::free(2);
        let hb = vec![f2.parse_element("b").unwrap()];
        assert!(matches!(separating_letter(&hb, &[1]), Err(Error::NoWitness(_))));
    }
}
