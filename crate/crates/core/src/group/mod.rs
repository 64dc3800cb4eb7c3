//! Concrete computable groups: free groups, free abelian groups, direct sums
//! of cyclic groups, finite groups given by tables, and products of these.
//!
//! Every element has a canonical encoding, so equality of elements is
//! equality of encodings and elements can be hashed into sets directly.

pub mod descriptor;
mod table;
mod window;
pub mod word;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

pub use table::CayleyTable;
pub use window::Window;
pub use word::{reduce_letters, Letter};

use crate::error::{Error, Result};

/// Default cap on the number of elements a ball enumeration may produce.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A group element in canonical encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Element {
    /// Freely reduced word, letters encoded as `±(index + 1)`.
    Word(Vec<i32>),
    /// Vector in `Z^n`.
    Int(Vec<i64>),
    /// Residue vector of a direct sum of cyclic groups. Countable sums trim
    /// trailing zeros.
    Residues(Vec<u32>),
    /// Row index into a multiplication table.
    Table(u32),
    /// Element of a direct product.
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn int(v: i64) -> Self {
        Element::Int(vec![v])
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Element::Int(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<&[i32]> {
        match self {
            Element::Word(w) => Some(w),
            _ => None,
        }
    }

    pub fn as_residues(&self) -> Option<&[u32]> {
        match self {
            Element::Residues(r) => Some(r),
            _ => None,
        }
    }
}

/// The structural kind of a group together with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// Free group; `rank: None` is a lazily indexed countable alphabet.
    Free { rank: Option<u32> },
    FreeAbelian { rank: u32 },
    /// `Z_{m_1} ⊕ ... ⊕ Z_{m_k}`; when `countable` the last modulus repeats
    /// forever, giving a countable direct sum such as `⊕Z_2`.
    DirectSum { moduli: Vec<u32>, countable: bool },
    Table(CayleyTable),
    /// `left ⊕ right`.
    Product { left: Box<Group>, right: Box<Group> },
}

/// A computable group with a symmetric generating set.
///
/// Groups are immutable once built and cheap to share behind an `Arc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    kind: GroupKind,
    generators: Vec<Element>,
    standard_generators: bool,
    table_lengths: Option<Vec<u32>>,
    budget: usize,
}

impl Group {
    fn from_kind(kind: GroupKind) -> Self {
        let mut g = Group {
            kind,
            generators: Vec::new(),
            standard_generators: true,
            table_lengths: None,
            budget: DEFAULT_BUDGET,
        };
        g.generators = g.standard_generator_list();
        if let GroupKind::Table(t) = &g.kind {
            g.table_lengths = Some(table_distances(t, &g.generators).expect("standard generators span the table"));
        }
        g
    }

    pub fn free(rank: u32) -> Self {
        Group::from_kind(GroupKind::Free { rank: Some(rank) })
    }

    pub fn free_countable() -> Self {
        Group::from_kind(GroupKind::Free { rank: None })
    }

    pub fn integers() -> Self {
        Group::free_abelian(1)
    }

    pub fn free_abelian(rank: u32) -> Self {
        Group::from_kind(GroupKind::FreeAbelian { rank })
    }

    pub fn direct_sum(moduli: Vec<u32>) -> Result<Self> {
        if moduli.is_empty() || moduli.iter().any(|&m| m < 2) {
            return Err(Error::Descriptor("moduli must be a nonempty list of integers >= 2".into()));
        }
        Ok(Group::from_kind(GroupKind::DirectSum { moduli, countable: false }))
    }

    /// The countable direct sum `⊕_{n≥1} Z_m`.
    pub fn countable_sum(modulus: u32) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::Descriptor("modulus must be >= 2".into()));
        }
        Ok(Group::from_kind(GroupKind::DirectSum { moduli: vec![modulus], countable: true }))
    }

    pub fn table(table: CayleyTable) -> Self {
        Group::from_kind(GroupKind::Table(table))
    }

    pub fn cyclic_table(n: u32) -> Self {
        Group::table(CayleyTable::cyclic(n))
    }

    pub fn product(left: Group, right: Group) -> Self {
        Group::from_kind(GroupKind::Product {
            left: Box::new(left),
            right: Box::new(right),
        })
    }

    /// Replaces the generating set. The set is symmetrized (inverses are
    /// added) and must not contain the identity.
    pub fn with_generators(mut self, gens: Vec<Element>) -> Result<Self> {
        let e = self.identity();
        let mut out: Vec<Element> = Vec::new();
        for g in gens {
            self.check(&g)?;
            if g == e {
                return Err(Error::Descriptor("generating set must not contain the identity".into()));
            }
            let gi = self.inverse(&g);
            for x in [g, gi] {
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
        if out.is_empty() {
            return Err(Error::Descriptor("generating set is empty".into()));
        }
        if let GroupKind::Table(t) = &self.kind {
            self.table_lengths = Some(table_distances(t, &out)?);
        }
        self.standard_generators = out == self.standard_generator_list();
        self.generators = out;
        Ok(self)
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Whether the generating set is finite. Countable alphabets and
    /// countable direct sums are generated by infinitely many letters.
    pub fn has_finite_generators(&self) -> bool {
        match &self.kind {
            GroupKind::Free { rank } => rank.is_some(),
            GroupKind::DirectSum { countable, .. } => !countable,
            GroupKind::Product { left, right } => left.has_finite_generators() && right.has_finite_generators(),
            _ => true,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// The order of the group, or `None` when infinite.
    pub fn order(&self) -> Option<usize> {
        match &self.kind {
            GroupKind::Free { rank } => (*rank == Some(0)).then_some(1),
            GroupKind::FreeAbelian { rank } => (*rank == 0).then_some(1),
            GroupKind::DirectSum { moduli, countable } => {
                if *countable {
                    None
                } else {
                    moduli.iter().try_fold(1usize, |acc, &m| acc.checked_mul(m as usize))
                }
            }
            GroupKind::Table(t) => Some(t.order()),
            GroupKind::Product { left, right } => Some(left.order()?.checked_mul(right.order()?)?),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match &self.kind {
            GroupKind::Free { rank } => matches!(rank, Some(0) | Some(1)),
            GroupKind::FreeAbelian { .. } | GroupKind::DirectSum { .. } => true,
            GroupKind::Table(t) => t.is_abelian(),
            GroupKind::Product { left, right } => left.is_abelian() && right.is_abelian(),
        }
    }

    /// Whether the group is finitely generated. Countable direct sums and
    /// free groups over countable alphabets are not; products are not as
    /// soon as one factor is not.
    pub fn is_finitely_generated(&self) -> bool {
        self.has_finite_generators()
    }

    pub fn identity(&self) -> Element {
        match &self.kind {
            GroupKind::Free { .. } => Element::Word(Vec::new()),
            GroupKind::FreeAbelian { rank } => Element::Int(vec![0; *rank as usize]),
            GroupKind::DirectSum { moduli, countable } => {
                if *countable {
                    Element::Residues(Vec::new())
                } else {
                    Element::Residues(vec![0; moduli.len()])
                }
            }
            GroupKind::Table(t) => Element::Table(t.identity()),
            GroupKind::Product { left, right } => {
                Element::Pair(Box::new(left.identity()), Box::new(right.identity()))
            }
        }
    }

    /// Modulus of coordinate `i` of a direct sum.
    pub fn modulus_at(&self, i: usize) -> Option<u32> {
        match &self.kind {
            GroupKind::DirectSum { moduli, countable } => {
                if i < moduli.len() {
                    Some(moduli[i])
                } else if *countable {
                    moduli.last().copied()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Checks that `g` is a canonical encoding of an element of this group.
    pub fn check(&self, g: &Element) -> Result<()> {
        let bad = || Err(Error::DescriptorMismatch(format!("{g:?}")));
        match (&self.kind, g) {
            (GroupKind::Free { rank }, Element::Word(w)) => {
                for pair in w.windows(2) {
                    if pair[0] == -pair[1] {
                        return bad();
                    }
                }
                if w.contains(&0) {
                    return bad();
                }
                if let Some(r) = rank {
                    if let Some(&c) = w.iter().find(|&&c| word::letter_index(c) >= *r) {
                        return Err(Error::InvalidLetter { index: word::letter_index(c), rank: *r });
                    }
                }
                Ok(())
            }
            (GroupKind::FreeAbelian { rank }, Element::Int(v)) if v.len() == *rank as usize => Ok(()),
            (GroupKind::DirectSum { moduli, countable }, Element::Residues(r)) => {
                if !*countable && r.len() != moduli.len() {
                    return bad();
                }
                if *countable && r.last() == Some(&0) {
                    return bad();
                }
                for (i, &x) in r.iter().enumerate() {
                    if x >= self.modulus_at(i).unwrap_or(0) {
                        return bad();
                    }
                }
                Ok(())
            }
            (GroupKind::Table(t), Element::Table(i)) if (*i as usize) < t.order() => Ok(()),
            (GroupKind::Product { left, right }, Element::Pair(a, b)) => {
                left.check(a)?;
                right.check(b)
            }
            _ => bad(),
        }
    }

    /// Checked multiplication.
    pub fn multiply(&self, g: &Element, h: &Element) -> Result<Element> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.mul(g, h))
    }

    /// Multiplication for elements already known to belong to this group.
    ///
    /// Panics on mixed encodings; use [`Group::multiply`] for untrusted input.
    pub fn mul(&self, g: &Element, h: &Element) -> Element {
        match (&self.kind, g, h) {
            (GroupKind::Free { .. }, Element::Word(a), Element::Word(b)) => Element::Word(word::concat(a, b)),
            (GroupKind::FreeAbelian { .. }, Element::Int(a), Element::Int(b)) => {
                Element::Int(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupKind::DirectSum { countable, .. }, Element::Residues(a), Element::Residues(b)) => {
                let n = a.len().max(b.len());
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let m = self.modulus_at(i).expect("coordinate within direct sum");
                    let x = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
                    out.push(x % m);
                }
                if *countable {
                    while out.last() == Some(&0) {
                        out.pop();
                    }
                }
                Element::Residues(out)
            }
            (GroupKind::Table(t), Element::Table(a), Element::Table(b)) => Element::Table(t.mul(*a, *b)),
            (GroupKind::Product { left, right }, Element::Pair(a1, b1), Element::Pair(a2, b2)) => {
                Element::Pair(Box::new(left.mul(a1, a2)), Box::new(right.mul(b1, b2)))
            }
            _ => panic!("descriptor mismatch multiplying {g:?} by {h:?}"),
        }
    }

    pub fn inverse(&self, g: &Element) -> Element {
        match (&self.kind, g) {
            (GroupKind::Free { .. }, Element::Word(w)) => Element::Word(word::invert(w)),
            (GroupKind::FreeAbelian { .. }, Element::Int(v)) => Element::Int(v.iter().map(|x| -x).collect()),
            (GroupKind::DirectSum { .. }, Element::Residues(r)) => Element::Residues(
                r.iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        let m = self.modulus_at(i).expect("coordinate within direct sum");
                        (m - x) % m
                    })
                    .collect(),
            ),
            (GroupKind::Table(t), Element::Table(i)) => Element::Table(t.inverse(*i)),
            (GroupKind::Product { left, right }, Element::Pair(a, b)) => {
                Element::Pair(Box::new(left.inverse(a)), Box::new(right.inverse(b)))
            }
            _ => panic!("descriptor mismatch inverting {g:?}"),
        }
    }

    /// `g^k` for any integer `k`.
    pub fn pow(&self, g: &Element, k: i64) -> Element {
        let base = if k < 0 { self.inverse(g) } else { g.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// Conjugation-free commutator test `gh = hg`.
    pub fn commute(&self, g: &Element, h: &Element) -> bool {
        self.mul(g, h) == self.mul(h, g)
    }

    /// Basis element `b_i` (1-based, as in `⊕Z_m = span(b_1, b_2, ...)`).
    pub fn basis(&self, i: usize) -> Option<Element> {
        match &self.kind {
            GroupKind::DirectSum { moduli, countable } => {
                if i == 0 || (!*countable && i > moduli.len()) {
                    return None;
                }
                let len = if *countable { i } else { moduli.len() };
                let mut r = vec![0; len];
                r[i - 1] = 1;
                Some(Element::Residues(r))
            }
            GroupKind::FreeAbelian { rank } if i >= 1 && i <= *rank as usize => {
                let mut v = vec![0; *rank as usize];
                v[i - 1] = 1;
                Some(Element::Int(v))
            }
            GroupKind::Free { rank } if i >= 1 && rank.is_none_or(|r| i <= r as usize) => {
                Some(Element::Word(vec![i as i32]))
            }
            _ => None,
        }
    }

    /// The free-group generator with the given letter index.
    pub fn letter(&self, index: u32) -> Element {
        Element::Word(vec![index as i32 + 1])
    }

    fn standard_generator_list(&self) -> Vec<Element> {
        match &self.kind {
            GroupKind::Free { rank } => {
                let r = rank.unwrap_or(0);
                (0..r as i32)
                    .flat_map(|i| [Element::Word(vec![i + 1]), Element::Word(vec![-(i + 1)])])
                    .collect()
            }
            GroupKind::FreeAbelian { rank } => {
                let n = *rank as usize;
                let mut out = Vec::new();
                for i in 0..n {
                    for s in [1, -1] {
                        let mut v = vec![0; n];
                        v[i] = s;
                        out.push(Element::Int(v));
                    }
                }
                out
            }
            GroupKind::DirectSum { moduli, countable } => {
                if *countable {
                    return Vec::new();
                }
                let n = moduli.len();
                let mut out = Vec::new();
                for (i, &m) in moduli.iter().enumerate() {
                    let mut v = vec![0; n];
                    v[i] = 1;
                    out.push(Element::Residues(v.clone()));
                    if m > 2 {
                        v[i] = m - 1;
                        out.push(Element::Residues(v));
                    }
                }
                out
            }
            GroupKind::Table(t) => (0..t.order() as u32)
                .filter(|&i| i != t.identity())
                .map(Element::Table)
                .collect(),
            GroupKind::Product { left, right } => {
                let mut out: Vec<Element> = left
                    .generators()
                    .iter()
                    .map(|g| Element::Pair(Box::new(g.clone()), Box::new(right.identity())))
                    .collect();
                out.extend(
                    right
                        .generators()
                        .iter()
                        .map(|h| Element::Pair(Box::new(left.identity()), Box::new(h.clone()))),
                );
                out
            }
        }
    }

    /// Length of a shortest word in the generators equal to `g`.
    ///
    /// Closed forms are used for standard generating sets; other generating
    /// sets fall back to breadth-first search bounded by the element budget.
    pub fn word_length(&self, g: &Element) -> Result<u32> {
        if let (GroupKind::Table(_), Element::Table(i)) = (&self.kind, g) {
            return Ok(self.table_lengths.as_ref().expect("table lengths")[*i as usize]);
        }
        if self.standard_generators {
            if let Some(l) = self.standard_length(g) {
                return Ok(l);
            }
        }
        if *g == self.identity() {
            return Ok(0);
        }
        if !self.has_finite_generators() {
            return Err(Error::Descriptor("word length needs a finite generating set".into()));
        }
        let mut seen: HashSet<Element> = HashSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        let mut r = 0;
        while !frontier.is_empty() {
            r += 1;
            let mut next = Vec::new();
            for x in &frontier {
                for s in &self.generators {
                    let y = self.mul(x, s);
                    if y == *g {
                        return Ok(r);
                    }
                    if seen.insert(y.clone()) {
                        next.push(y);
                    }
                }
            }
            if seen.len() > self.budget {
                return Err(Error::Budget { cap: self.budget, partial: seen.len() });
            }
            frontier = next;
        }
        Err(Error::Precondition("element is not generated by the generating set".into()))
    }

    fn standard_length(&self, g: &Element) -> Option<u32> {
        match (&self.kind, g) {
            (GroupKind::Free { .. }, Element::Word(w)) => Some(w.len() as u32),
            (GroupKind::FreeAbelian { .. }, Element::Int(v)) => Some(v.iter().map(|x| x.unsigned_abs() as u32).sum()),
            (GroupKind::DirectSum { .. }, Element::Residues(r)) => Some(
                r.iter()
                    .enumerate()
                    .map(|(i, &x)| {
                        let m = self.modulus_at(i).unwrap();
                        x.min(m - x)
                    })
                    .sum(),
            ),
            (GroupKind::Product { left, right }, Element::Pair(a, b)) => {
                Some(left.word_length(a).ok()? + right.word_length(b).ok()?)
            }
            _ => None,
        }
    }

    /// Breadth-first enumeration of the ball `{g : |g| ≤ r}`.
    ///
    /// Elements come out sphere by sphere; inside a sphere the order is the
    /// order of discovery through right multiplication by the generators in
    /// their listed order, which makes the enumeration deterministic.
    pub fn enumerate_ball(&self, r: u32) -> Result<Window> {
        self.enumerate_ball_with_margin(r, 0)
    }

    pub fn enumerate_ball_with_margin(&self, r: u32, margin: u32) -> Result<Window> {
        if !self.has_finite_generators() {
            return Err(Error::Descriptor(
                "ball enumeration needs a finite generating set; use an enumerated window".into(),
            ));
        }
        let e = self.identity();
        let mut seen: HashSet<Element> = HashSet::from([e.clone()]);
        let mut elements = vec![e];
        let mut lengths = vec![0u32];
        let mut start = 0;
        for radius in 1..=r {
            let end = elements.len();
            for i in start..end {
                for s in &self.generators {
                    let y = self.mul(&elements[i], s);
                    if seen.insert(y.clone()) {
                        elements.push(y);
                        lengths.push(radius);
                        if elements.len() > self.budget {
                            return Err(Error::Budget { cap: self.budget, partial: elements.len() });
                        }
                    }
                }
            }
            if elements.len() == end {
                break;
            }
            start = end;
        }
        let inner = r.saturating_sub(margin);
        let core = lengths.iter().take_while(|&&l| l <= inner).count();
        Ok(Window::from_parts(elements, Some(r), margin, core))
    }

    /// The standard radius of size `r`: the ball of radius `r` when the
    /// generating set is finite, and the subgroup on the first `r`
    /// coordinates for a countable direct sum.
    pub fn radius_set(&self, r: u32) -> Result<Vec<Element>> {
        if self.has_finite_generators() {
            return Ok(self.enumerate_ball(r)?.elements().to_vec());
        }
        match &self.kind {
            GroupKind::DirectSum { countable: true, .. } => {
                let mut n = 1usize;
                for k in 0..r as usize {
                    n = n.saturating_mul(self.modulus_at(k).unwrap_or(1) as usize);
                    if n > self.budget {
                        return Err(Error::Budget { cap: self.budget, partial: n });
                    }
                }
                Ok((0..n).filter_map(|i| self.nth_element(i)).collect())
            }
            _ => Err(Error::Descriptor("no standard radii for this group; pass explicit radii".into())),
        }
    }

    /// The `i`-th element of the group's canonical enumeration, where one is
    /// defined: direct sums in mixed radix, `Z` as `0, 1, -1, 2, -2, ...`,
    /// tables by index, and products in the block order of
    /// [`PRODUCT_BLOCK`].
    pub fn nth_element(&self, i: usize) -> Option<Element> {
        match &self.kind {
            GroupKind::DirectSum { moduli, countable } => {
                if !*countable {
                    if i >= self.order()? {
                        return None;
                    }
                }
                let mut digits = Vec::new();
                let mut rest = i;
                let mut k = 0;
                while rest > 0 || (!*countable && k < moduli.len()) {
                    let m = self.modulus_at(k)? as usize;
                    digits.push((rest % m) as u32);
                    rest /= m;
                    k += 1;
                }
                if *countable {
                    while digits.last() == Some(&0) {
                        digits.pop();
                    }
                }
                Some(Element::Residues(digits))
            }
            GroupKind::FreeAbelian { rank: 1 } => {
                let k = i.div_ceil(2) as i64;
                Some(Element::int(if i % 2 == 1 { k } else { -k }))
            }
            GroupKind::Table(t) => (i < t.order()).then(|| Element::Table(i as u32)),
            GroupKind::Product { left, right } => {
                let (l, r) = product_unpair(left.order(), right.order(), i)?;
                Some(Element::Pair(Box::new(left.nth_element(l)?), Box::new(right.nth_element(r)?)))
            }
            _ => None,
        }
    }

    /// Inverse of [`Group::nth_element`] for direct sums.
    pub fn enumeration_index(&self, g: &Element) -> Option<usize> {
        match (&self.kind, g) {
            (GroupKind::DirectSum { .. }, Element::Residues(r)) => {
                let mut idx = 0usize;
                let mut scale = 1usize;
                for (k, &d) in r.iter().enumerate() {
                    idx = idx.checked_add(scale.checked_mul(d as usize)?)?;
                    scale = scale.checked_mul(self.modulus_at(k)? as usize)?;
                }
                Some(idx)
            }
            (GroupKind::Table(_), Element::Table(i)) => Some(*i as usize),
            (GroupKind::FreeAbelian { rank: 1 }, Element::Int(v)) => {
                let x = v[0];
                Some(if x > 0 { (2 * x - 1) as usize } else { (-2 * x) as usize })
            }
            (GroupKind::Product { left, right }, Element::Pair(a, b)) => product_pair(
                left.order(),
                right.order(),
                left.enumeration_index(a)?,
                right.enumeration_index(b)?,
            ),
            _ => None,
        }
    }

    /// All elements of a finite group in enumeration order.
    pub fn elements(&self) -> Option<Vec<Element>> {
        let n = self.order()?;
        (0..n).map(|i| self.nth_element(i)).collect()
    }

    /// The multiplication table of a finite group, indexed by enumeration order.
    pub fn to_table(&self) -> Result<CayleyTable> {
        if let GroupKind::Table(t) = &self.kind {
            return Ok(t.clone());
        }
        let elems = self
            .elements()
            .ok_or_else(|| Error::Precondition("group is not finite and enumerable".into()))?;
        let index: HashMap<&Element, u32> = elems.iter().enumerate().map(|(i, g)| (g, i as u32)).collect();
        let rows = elems
            .iter()
            .map(|x| elems.iter().map(|y| index[&self.mul(x, y)]).collect())
            .collect();
        CayleyTable::new(rows)
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        let err = |reason: &str| Error::ElementSyntax {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let g = match &self.kind {
            GroupKind::Free { rank } => Element::Word(word::parse_word(t, *rank)?),
            GroupKind::FreeAbelian { rank } => {
                if t == "e" {
                    self.identity()
                } else {
                    let v = parse_tuple::<i64>(t).map_err(|r| err(&r))?;
                    if v.len() != *rank as usize {
                        return Err(err("wrong number of coordinates"));
                    }
                    Element::Int(v)
                }
            }
            GroupKind::DirectSum { moduli, countable } => {
                if t == "e" || t == "0" && (*countable || moduli.len() > 1) {
                    self.identity()
                } else if t.contains('b') {
                    self.parse_basis_sum(t).map_err(|r| err(&r))?
                } else {
                    let v = parse_tuple::<i64>(t).map_err(|r| err(&r))?;
                    if !*countable && v.len() != moduli.len() {
                        return Err(err("wrong number of coordinates"));
                    }
                    let mut r: Vec<u32> = v
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| {
                            let m = self.modulus_at(i).unwrap() as i64;
                            x.rem_euclid(m) as u32
                        })
                        .collect();
                    if *countable {
                        while r.last() == Some(&0) {
                            r.pop();
                        }
                    }
                    Element::Residues(r)
                }
            }
            GroupKind::Table(t_) => {
                if t == "e" {
                    self.identity()
                } else {
                    let i: u32 = t.parse().map_err(|_| err("expected a table index"))?;
                    if i as usize >= t_.order() {
                        return Err(err("table index out of range"));
                    }
                    Element::Table(i)
                }
            }
            GroupKind::Product { left, right } => {
                if t == "e" {
                    self.identity()
                } else {
                    let inner = t
                        .strip_prefix('<')
                        .and_then(|s| s.strip_suffix('>'))
                        .ok_or_else(|| err("expected <left|right>"))?;
                    let (a, b) = inner.split_once('|').ok_or_else(|| err("expected <left|right>"))?;
                    Element::Pair(Box::new(left.parse_element(a)?), Box::new(right.parse_element(b)?))
                }
            }
        };
        self.check(&g)?;
        Ok(g)
    }

    fn parse_basis_sum(&self, t: &str) -> std::result::Result<Element, String> {
        let mut acc = self.identity();
        for term in t.split('+') {
            let term = term.trim();
            let (coef, idx) = term.split_once('b').ok_or("expected terms like 2b3")?;
            let coef: i64 = if coef.trim().is_empty() {
                1
            } else {
                coef.trim().parse().map_err(|_| "bad coefficient")?
            };
            let idx: usize = idx.trim().parse().map_err(|_| "bad basis index")?;
            let b = self.basis(idx).ok_or("basis index out of range")?;
            acc = self.mul(&acc, &self.pow(&b, coef));
        }
        Ok(acc)
    }

    pub fn format_element(&self, g: &Element) -> String {
        match (&self.kind, g) {
            (_, Element::Word(w)) => word::format_word(w),
            (_, Element::Int(v)) if v.len() == 1 => v[0].to_string(),
            (_, Element::Int(v)) => format_tuple(v),
            (GroupKind::DirectSum { moduli, countable }, Element::Residues(r)) => {
                if !*countable && moduli.len() == 1 {
                    r[0].to_string()
                } else if r.is_empty() {
                    "0".to_string()
                } else {
                    format_tuple(r)
                }
            }
            (_, Element::Residues(r)) => format_tuple(r),
            (_, Element::Table(i)) => i.to_string(),
            (GroupKind::Product { left, right }, Element::Pair(a, b)) => {
                format!("<{}|{}>", left.format_element(a), right.format_element(b))
            }
            (_, Element::Pair(a, b)) => format!("<{a:?}|{b:?}>"),
        }
    }

    pub fn format_set<'a>(&self, set: impl IntoIterator<Item = &'a Element>) -> Vec<String> {
        set.into_iter().map(|g| self.format_element(g)).collect()
    }
}

fn parse_tuple<T: std::str::FromStr>(t: &str) -> std::result::Result<Vec<T>, String> {
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t);
    inner
        .split(',')
        .map(|p| p.trim().parse::<T>().map_err(|_| format!("bad coordinate `{}`", p.trim())))
        .collect()
}

fn format_tuple<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Left factors of an infinite product are enumerated in blocks of this many.
pub const PRODUCT_BLOCK: usize = 32;
/// Right elements paired with each left block per shell when both factors
/// are infinite.
const PRODUCT_SHELL: usize = 64;

/// Splits a product enumeration index into left and right indices.
///
/// A finite left factor is cycled through for each right element. An
/// infinite left factor is cut into blocks of [`PRODUCT_BLOCK`]; block `j`
/// paired with right element `n` is visited in shells
/// `max(j, n / PRODUCT_SHELL) = s`, so the first `PRODUCT_BLOCK ·
/// PRODUCT_SHELL` elements all have their left part in block 0.
fn product_unpair(left: Option<usize>, right: Option<usize>, i: usize) -> Option<(usize, usize)> {
    if let Some(nl) = left {
        let (l, r) = (i % nl, i / nl);
        return right.map_or(true, |nr| r < nr).then_some((l, r));
    }
    let (q, off) = (i / PRODUCT_BLOCK, i % PRODUCT_BLOCK);
    let (j, n) = match right {
        Some(nr) => (q / nr, q % nr),
        None => {
            let mut s = ((q / PRODUCT_SHELL) as f64).sqrt() as usize;
            while PRODUCT_SHELL * (s + 1) * (s + 1) <= q {
                s += 1;
            }
            while PRODUCT_SHELL * s * s > q {
                s -= 1;
            }
            let o = q - PRODUCT_SHELL * s * s;
            if o < s * PRODUCT_SHELL {
                (o / PRODUCT_SHELL, PRODUCT_SHELL * s + o % PRODUCT_SHELL)
            } else {
                (s, o - s * PRODUCT_SHELL)
            }
        }
    };
    Some((j * PRODUCT_BLOCK + off, n))
}

/// Inverse of [`product_unpair`].
fn product_pair(left: Option<usize>, right: Option<usize>, l: usize, r: usize) -> Option<usize> {
    if let Some(nl) = left {
        return r.checked_mul(nl)?.checked_add(l);
    }
    let (j, off) = (l / PRODUCT_BLOCK, l % PRODUCT_BLOCK);
    let q = match right {
        Some(nr) => j.checked_mul(nr)?.checked_add(r)?,
        None => {
            let s = j.max(r / PRODUCT_SHELL);
            let base = PRODUCT_SHELL.checked_mul(s)?.checked_mul(s)?;
            if j < s {
                base + j * PRODUCT_SHELL + (r - PRODUCT_SHELL * s)
            } else {
                base + s * PRODUCT_SHELL + r
            }
        }
    };
    q.checked_mul(PRODUCT_BLOCK)?.checked_add(off)
}

fn table_distances(t: &CayleyTable, gens: &[Element]) -> Result<Vec<u32>> {
    let gens: Vec<u32> = gens
        .iter()
        .map(|g| match g {
            Element::Table(i) => *i,
            _ => unreachable!("table generators are table elements"),
        })
        .collect();
    let n = t.order();
    let mut dist = vec![u32::MAX; n];
    dist[t.identity() as usize] = 0;
    let mut queue = VecDeque::from([t.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = t.mul(x, s);
            if dist[y as usize] == u32::MAX {
                dist[y as usize] = dist[x as usize] + 1;
                queue.push_back(y);
            }
        }
    }
    if dist.contains(&u32::MAX) {
        return Err(Error::Descriptor("generators do not generate the table group".into()));
    }
    Ok(dist)
}
