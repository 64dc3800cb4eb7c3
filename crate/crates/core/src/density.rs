//! Solecki densities, covering and packing numbers, and the partition
//! checkers for finite groups.

use std::collections::HashMap;

use num_rational::Ratio;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{CayleyTable, Element, Group, Window};
use crate::subset::SubsetView;

/// Largest group for exhaustive density and packing searches.
pub const EXACT_CAP: usize = 12;
/// Largest group for the exact covering number.
pub const COV_CAP: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `sup_x |F ∩ xA| / |F|`
    Left,
    /// `sup_x |F ∩ Ax| / |F|`
    Right,
    /// `sup_{x,y} |F ∩ xAy| / |F|`
    TwoSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    /// An upper bound for the infimum, from a finite family of radii.
    UpperEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    pub value: Ratio<u64>,
    pub mode: Mode,
    pub f_used: Vec<Element>,
}

impl DensityReport {
    pub fn to_json(&self, g: &Group) -> Value {
        json!({
            "value_num": self.value.numer(),
            "value_den": self.value.denom(),
            "mode": match self.mode { Mode::Exact => "exact", Mode::UpperEvidence => "upper-evidence" },
            "witness": g.format_set(&self.f_used),
        })
    }
}

/// A finite group as a table, with subsets as bit masks over table indices.
pub struct FiniteGroup {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    table: CayleyTable,
}

impl FiniteGroup {
    pub fn new(g: &Group, cap: usize) -> Result<Self> {
        let n = g
            .order()
            .ok_or_else(|| Error::Precondition("brute force needs a finite group".into()))?;
        if n > cap {
            return Err(Error::TooLarge { size: n, cap });
        }
        let elements = g.elements().ok_or_else(|| Error::Precondition("group is not enumerable".into()))?;
        let index = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Ok(FiniteGroup { elements, index, table: g.to_table()? })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn mask(&self, set: &[Element]) -> Result<u32> {
        set.iter().try_fold(0u32, |m, x| {
            self.index
                .get(x)
                .map(|&i| m | 1 << i)
                .ok_or_else(|| Error::DescriptorMismatch(format!("{x:?}")))
        })
    }

    pub fn mask_of(&self, a: &SubsetView) -> u32 {
        (0..self.order()).filter(|&i| a.contains(&self.elements[i])).fold(0, |m, i| m | 1 << i)
    }

    pub fn unmask(&self, m: u32) -> Vec<Element> {
        (0..self.order()).filter(|&i| m >> i & 1 == 1).map(|i| self.elements[i].clone()).collect()
    }

    pub fn full(&self) -> u32 {
        if self.order() == 32 {
            u32::MAX
        } else {
            (1u32 << self.order()) - 1
        }
    }

    /// `xA` as a mask.
    pub fn left_translate(&self, x: usize, a: u32) -> u32 {
        self.map_mask(a, |y| self.table.mul(x as u32, y as u32) as usize)
    }

    /// `Ax` as a mask.
    pub fn right_translate(&self, a: u32, x: usize) -> u32 {
        self.map_mask(a, |y| self.table.mul(y as u32, x as u32) as usize)
    }

    pub fn inverse(&self, a: u32) -> u32 {
        self.map_mask(a, |y| self.table.inverse(y as u32) as usize)
    }

    /// `AB` as a mask.
    pub fn product(&self, a: u32, b: u32) -> u32 {
        let mut out = 0;
        for i in (0..self.order()).filter(|&i| a >> i & 1 == 1) {
            out |= self.left_translate(i, b);
        }
        out
    }

    fn map_mask(&self, a: u32, f: impl Fn(usize) -> usize) -> u32 {
        (0..self.order()).filter(|&i| a >> i & 1 == 1).fold(0, |m, i| m | 1 << f(i))
    }

    fn translates(&self, a: u32, variant: Variant) -> Vec<u32> {
        let n = self.order();
        let mut out: Vec<u32> = match variant {
            Variant::Left => (0..n).map(|x| self.left_translate(x, a)).collect(),
            Variant::Right => (0..n).map(|x| self.right_translate(a, x)).collect(),
            Variant::TwoSided => (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .map(|(x, y)| self.right_translate(self.left_translate(x, a), y))
                .collect(),
        };
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn less(a: (u64, u64), b: (u64, u64)) -> bool {
    a.0 * b.1 < b.0 * a.1
}

/// The exact density: the infimum over all nonempty `F ⊆ G` of the largest
/// share of `F` inside a translate of `A`. Ties keep the smallest mask.
pub fn sigma_exact_finite(g: &Group, a: &[Element], variant: Variant) -> Result<DensityReport> {
    let fg = FiniteGroup::new(g, EXACT_CAP)?;
    let am = fg.mask(a)?;
    let (value, f) = sigma_mask(&fg, am, variant);
    Ok(DensityReport { value, mode: Mode::Exact, f_used: fg.unmask(f) })
}

/// [`sigma_exact_finite`] on masks, returning the value and a minimizing `F`.
pub fn sigma_mask(fg: &FiniteGroup, a: u32, variant: Variant) -> (Ratio<u64>, u32) {
    let ts = fg.translates(a, variant);
    let mut best = (u64::MAX, 1u64);
    let mut best_f = fg.full();
    for f in 1..=fg.full() {
        let size = f.count_ones() as u64;
        let top = ts.iter().map(|t| (t & f).count_ones()).max().unwrap_or(0) as u64;
        if less((top, size), best) {
            best = (top, size);
            best_f = f;
        }
    }
    (Ratio::new(best.0, best.1), best_f)
}

/// The least, over the family, of the largest share of `F` inside a
/// translate `xA` (or `Ax`) with `x` in the window core.
pub fn sigma_estimate(
    g: &Group,
    a: &SubsetView,
    family: &[Vec<Element>],
    w: &Window,
    variant: Variant,
) -> Result<DensityReport> {
    if variant == Variant::TwoSided {
        return Err(Error::Config("the estimate mode covers the one-sided densities".into()));
    }
    let mut best: Option<(u64, u64, &Vec<Element>)> = None;
    for f in family {
        if f.is_empty() {
            continue;
        }
        let inv: Vec<Element> = f.iter().map(|t| g.inverse(t)).collect();
        let mut top = 0u64;
        for x in w.core() {
            let xi = g.inverse(x);
            let n = match variant {
                Variant::Left => f.iter().filter(|t| a.contains(&g.mul(&xi, t))).count(),
                _ => inv.iter().filter(|ti| a.contains(&g.inverse(&g.mul(ti, x)))).count(),
            } as u64;
            top = top.max(n);
            if top == f.len() as u64 {
                break;
            }
        }
        let size = f.len() as u64;
        if best.is_none_or(|(bt, bs, _)| less((top, size), (bt, bs))) {
            best = Some((top, size, f));
        }
    }
    let (top, size, f) = best.ok_or_else(|| Error::Config("the radius family is empty".into()))?;
    Ok(DensityReport { value: Ratio::new(top, size), mode: Mode::UpperEvidence, f_used: f.clone() })
}

/// The least number of left translates of `A` covering `G`, or `None` when
/// `A` is empty.
pub fn cov_exact(g: &Group, a: &[Element]) -> Result<Option<usize>> {
    let fg = FiniteGroup::new(g, COV_CAP)?;
    let am = fg.mask(a)?;
    Ok(cov_mask(&fg, am).map(|x| x.count_ones() as usize))
}

/// A minimum covering set `X` (as a mask) with `XA = G`.
pub fn cov_mask(fg: &FiniteGroup, a: u32) -> Option<u32> {
    if a == 0 {
        return None;
    }
    let n = fg.order();
    let ts: Vec<u32> = (0..n).map(|x| fg.left_translate(x, a)).collect();
    // greedy bound
    let mut covered = 0u32;
    let mut greedy = 0u32;
    while covered != fg.full() {
        let x = (0..n).max_by_key(|&x| ((ts[x] & !covered).count_ones(), std::cmp::Reverse(x))).unwrap();
        greedy |= 1 << x;
        covered |= ts[x];
    }
    let mut best = greedy;
    cov_search(fg, &ts, 0, 0, &mut best);
    Some(best)
}

fn cov_search(fg: &FiniteGroup, ts: &[u32], covered: u32, chosen: u32, best: &mut u32) {
    if covered == fg.full() {
        if chosen.count_ones() < best.count_ones() {
            *best = chosen;
        }
        return;
    }
    if chosen.count_ones() + 1 >= best.count_ones() {
        return;
    }
    let u = (!covered).trailing_zeros() as usize;
    for x in 0..ts.len() {
        if ts[x] >> u & 1 == 1 {
            cov_search(fg, ts, covered | ts[x], chosen | 1 << x, best);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackReport {
    pub count: usize,
    pub s: Vec<Element>,
    pub exact: bool,
}

/// Pairwise disjoint left translates `sA`. Exact on groups of order at most
/// [`EXACT_CAP`]; otherwise greedy over the window core, with disjointness
/// tested on the window.
pub fn pack_lower(g: &Group, a: &SubsetView, w: &Window) -> Result<PackReport> {
    if g.order().is_some_and(|n| n <= EXACT_CAP) {
        let fg = FiniteGroup::new(g, EXACT_CAP)?;
        let am = fg.mask_of(a);
        let s = pack_mask(&fg, am);
        return Ok(PackReport { count: s.count_ones() as usize, s: fg.unmask(s), exact: true });
    }
    let mut chosen: Vec<(Element, Vec<bool>)> = Vec::new();
    for s in w.core() {
        let si = g.inverse(s);
        let row: Vec<bool> = w.elements().iter().map(|y| a.contains(&g.mul(&si, y))).collect();
        if chosen.iter().all(|(_, r)| r.iter().zip(&row).all(|(p, q)| !(*p && *q))) {
            chosen.push((s.clone(), row));
        }
    }
    Ok(PackReport { count: chosen.len(), s: chosen.into_iter().map(|(s, _)| s).collect(), exact: false })
}

/// A largest set `S` (lexicographically first by index) with `{sA}` disjoint.
pub fn pack_mask(fg: &FiniteGroup, a: u32) -> u32 {
    let n = fg.order();
    if a == 0 {
        return fg.full();
    }
    let ts: Vec<u32> = (0..n).map(|x| fg.left_translate(x, a)).collect();
    let mut best = 0u32;
    pack_search(&ts, 0, 0, 0, &mut best);
    best
}

fn pack_search(ts: &[u32], start: usize, used: u32, chosen: u32, best: &mut u32) {
    if chosen.count_ones() > best.count_ones() {
        *best = chosen;
    }
    for x in start..ts.len() {
        if chosen.count_ones() as usize + (ts.len() - x) <= best.count_ones() as usize {
            return;
        }
        if ts[x] & used == 0 {
            pack_search(ts, x + 1, used | ts[x], chosen | 1 << x, best);
        }
    }
}

/// The lexicographically first smallest `F` with `|F| ≤ bound` and
/// `F·D = G`, as a mask.
fn first_cover(fg: &FiniteGroup, d: u32, bound: usize) -> Option<u32> {
    let n = fg.order();
    let ts: Vec<u32> = (0..n).map(|x| fg.left_translate(x, d)).collect();
    for size in 1..=bound.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if idx.iter().fold(0, |m, &i| m | ts[i]) == fg.full() {
                return Some(idx.iter().fold(0, |m, &i| m | 1 << i));
            }
            // next combination
            let mut k = size;
            while k > 0 && idx[k - 1] == n - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    None
}

fn partition_masks(fg: &FiniteGroup, cells: &[Vec<Element>]) -> Result<Vec<u32>> {
    let masks = cells.iter().map(|c| fg.mask(c)).collect::<Result<Vec<u32>>>()?;
    let mut seen = 0u32;
    for &m in &masks {
        if m == 0 || m & seen != 0 {
            return Err(Error::Precondition("cells must be nonempty and disjoint".into()));
        }
        seen |= m;
    }
    if seen != fg.full() {
        return Err(Error::Precondition("cells do not cover the group".into()));
    }
    Ok(masks)
}

fn partition_check(
    g: &Group,
    cells: &[Vec<Element>],
    target: impl Fn(&FiniteGroup, u32) -> u32,
) -> Result<Option<(usize, Vec<Element>)>> {
    let fg = FiniteGroup::new(g, 32)?;
    let masks = partition_masks(&fg, cells)?;
    for (i, &m) in masks.iter().enumerate() {
        if let Some(f) = first_cover(&fg, target(&fg, m), cells.len()) {
            return Ok(Some((i, fg.unmask(f))));
        }
    }
    Ok(None)
}

/// The first cell `A_i` (0-based) admitting `F` with `|F| ≤ n` and
/// `G = F A_i A_i⁻¹`, with the first such `F`.
pub fn kourovka_check(g: &Group, cells: &[Vec<Element>]) -> Result<Option<(usize, Vec<Element>)>> {
    partition_check(g, cells, |fg, m| fg.product(m, fg.inverse(m)))
}

/// As [`kourovka_check`] with `G = F A_i A_i⁻¹ A_i`.
pub fn triple_product_check(g: &Group, cells: &[Vec<Element>]) -> Result<Option<(usize, Vec<Element>)>> {
    partition_check(g, cells, |fg, m| fg.product(fg.product(m, fg.inverse(m)), m))
}
