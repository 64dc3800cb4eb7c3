use std::collections::HashSet;

use crate::ballean::{with_identity, Side};
use crate::group::{Element, Group, Window};
use crate::subset::SubsetView;
use crate::verdict::{Verdict, Witness};

/// Which translates of a radius must fit inside the set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sidedness {
    Left,
    Right,
    /// `Fa ⊆ A` and `aF ⊆ A` for the same `a`.
    Both,
}

impl From<Side> for Sidedness {
    fn from(s: Side) -> Self {
        match s {
            Side::Left => Sidedness::Left,
            Side::Right => Sidedness::Right,
        }
    }
}

/// Fixed-width bit set over window indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

/// Precomputed translates `Fa` (or `aF`, or both) of every radius around
/// every core point whose translates stay inside the window, stored as
/// window indices and deduplicated.
///
/// Deduplication matters for subgroup radii, where `Ha` depends only on the
/// coset of `a`.
pub struct ThickEngine<'a> {
    window: &'a Window,
    radii: Vec<Vec<Element>>,
    /// Per radius: the distinct translate sets (flattened, fixed stride) and
    /// the center of each.
    translates: Vec<(usize, Vec<u32>, Vec<u32>)>,
}

impl<'a> ThickEngine<'a> {
    pub fn new(g: &Group, w: &'a Window, radii: &[Vec<Element>], mode: Sidedness) -> Self {
        let mut translates = Vec::with_capacity(radii.len());
        let mut full_radii = Vec::with_capacity(radii.len());
        for f in radii {
            let f = with_identity(g, f);
            let mut seen: HashSet<Vec<u32>> = HashSet::new();
            let mut flat = Vec::new();
            let mut centers = Vec::new();
            let mut stride = 0;
            'points: for (ai, a) in w.elements().iter().enumerate() {
                if !w.is_core(ai) {
                    continue;
                }
                let mut idx = Vec::with_capacity(2 * f.len());
                for t in &f {
                    let images: &[Element] = match mode {
                        Sidedness::Left => &[g.mul(t, a)],
                        Sidedness::Right => &[g.mul(a, t)],
                        Sidedness::Both => &[g.mul(t, a), g.mul(a, t)],
                    };
                    for y in images {
                        match w.index_of(y) {
                            Some(i) => idx.push(i as u32),
                            None => continue 'points,
                        }
                    }
                }
                idx.sort_unstable();
                idx.dedup();
                if seen.insert(idx.clone()) {
                    // translate sets may differ in size only in the two-sided mode;
                    // pad with the first index to keep a fixed stride
                    stride = stride.max(idx.len());
                    centers.push(ai as u32);
                    flat.push(idx);
                }
            }
            let mut packed = Vec::with_capacity(flat.len() * stride);
            for idx in &flat {
                packed.extend_from_slice(idx);
                packed.extend(std::iter::repeat_n(idx[0], stride - idx.len()));
            }
            translates.push((stride, packed, centers));
            full_radii.push(f);
        }
        ThickEngine { window: w, radii: full_radii, translates }
    }

    /// A center `a` whose translate of radius `r` lies inside `mask`.
    pub fn interior_point(&self, r: usize, mask: &Bits) -> Option<&'a Element> {
        let (stride, packed, centers) = &self.translates[r];
        if *stride == 0 {
            return None;
        }
        packed
            .chunks_exact(*stride)
            .position(|set| set.iter().all(|&i| mask.get(i as usize)))
            .map(|k| self.window.get(centers[k] as usize))
    }

    /// `Ok(points)` with one interior point per radius, or `Err(r)` naming the
    /// first radius with empty interior.
    pub fn thick(&self, mask: &Bits) -> Result<Vec<Element>, usize> {
        let mut points = Vec::with_capacity(self.radii.len());
        for r in 0..self.radii.len() {
            match self.interior_point(r, mask) {
                Some(p) => points.push(p.clone()),
                None => return Err(r),
            }
        }
        Ok(points)
    }

    pub fn radius(&self, r: usize) -> &[Element] {
        &self.radii[r]
    }

    /// Number of centers available for radius `r`.
    pub fn evaluable(&self, r: usize) -> usize {
        self.translates[r].2.len()
    }
}

pub fn mask_of(a: &SubsetView, w: &Window) -> Bits {
    let mut m = Bits::new(w.len());
    for (i, x) in w.elements().iter().enumerate() {
        if a.contains(x) {
            m.set(i);
        }
    }
    m
}

/// Window evidence for thickness: for every radius `F` some core point `a`
/// has `Fa ⊆ A` (or `aF ⊆ A`, or both).
///
/// Radii are handled largest first, and an interior point found for `F` is
/// reused for every radius contained in `F`.
pub fn check_thick(g: &Group, a: &SubsetView, radii: &[Vec<Element>], w: &Window, mode: Sidedness) -> Verdict {
    let mask = mask_of(a, w);
    let mut order: Vec<usize> = (0..radii.len()).collect();
    order.sort_by_key(|&r| std::cmp::Reverse(radii[r].len()));
    let mut points: Vec<Option<Element>> = vec![None; radii.len()];
    let mut found: Vec<(HashSet<Element>, Element)> = Vec::new();
    for r in order {
        let f = with_identity(g, &radii[r]);
        if let Some((_, p)) = found.iter().find(|(big, _)| f.iter().all(|t| big.contains(t))) {
            points[r] = Some(p.clone());
            continue;
        }
        let engine = ThickEngine::new(g, w, std::slice::from_ref(&radii[r]), mode);
        if engine.evaluable(0) == 0 {
            return Verdict::inconclusive(format!(
                "no core point keeps radius {r} inside the window; enlarge the window or its margin"
            ));
        }
        match engine.interior_point(0, &mask) {
            Some(p) => {
                points[r] = Some(p.clone());
                found.push((f.into_iter().collect(), p.clone()));
            }
            None => {
                return Verdict::fails(
                    Some(Witness::Radii(vec![radii[r].clone()])),
                    format!("interior is empty for radius {r}"),
                )
            }
        }
    }
    Verdict::holds(
        Some(Witness::Set(points.into_iter().flatten().collect())),
        format!("every one of {} radii has a nonempty interior", radii.len()),
    )
}

pub fn check_left_thick(g: &Group, a: &SubsetView, radii: &[Vec<Element>], w: &Window) -> Verdict {
    check_thick(g, a, radii, w, Sidedness::Left)
}

/// Searches for `F` with `|F| ≤ b` drawn from `pool` such that `FA` (or `AF`)
/// is thick on the window for every radius.
///
/// In abelian groups only sets containing `e` are tried: `(Ft)A` is a
/// translate of `FA`, and thickness is translation invariant there.
pub fn find_prethick(
    g: &Group,
    a: &SubsetView,
    b: usize,
    pool: &[Element],
    radii: &[Vec<Element>],
    w: &Window,
    side: Side,
) -> Option<(Vec<Element>, Vec<Element>)> {
    let engine = ThickEngine::new(g, w, radii, side.into());
    let e = g.identity();
    let mut pool: Vec<Element> = pool.to_vec();
    let normalize = g.is_abelian();
    if normalize {
        pool.retain(|x| *x != e);
        pool.insert(0, e.clone());
    }
    // column f: which window points lie in fA (or Af)
    let columns: Vec<Bits> = pool
        .iter()
        .map(|f| {
            let fi = g.inverse(f);
            let mut m = Bits::new(w.len());
            for (i, x) in w.elements().iter().enumerate() {
                if a.contains(&side.act(g, &fi, x)) {
                    m.set(i);
                }
            }
            m
        })
        .collect();
    // sets of size s are all tried before sets of size s + 1
    for size in 1..=b.min(pool.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut mask = columns[idx[0]].clone();
            for &c in &idx[1..] {
                mask.or_assign(&columns[c]);
            }
            if let Ok(points) = engine.thick(&mask) {
                return Some((idx.iter().map(|&i| pool[i].clone()).collect(), points));
            }
            if !next_combination(&mut idx, pool.len(), normalize) {
                break;
            }
        }
    }
    None
}

/// Advances to the next `k`-subset of `0..n` in lexicographic order, keeping
/// index 0 in place when `pin_first` is set.
fn next_combination(idx: &mut [usize], n: usize, pin_first: bool) -> bool {
    let k = idx.len();
    let lowest = usize::from(pin_first);
    let mut i = k;
    while i > lowest {
        i -= 1;
        if idx[i] < n - (k - i) {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Window evidence for smallness: no `F` with `|F| ≤ b` from the pool makes
/// `FA` thick for all radii. The pool defaults to the union of the radii.
pub fn check_small(
    g: &Group,
    a: &SubsetView,
    radii: &[Vec<Element>],
    b: usize,
    pool: Option<&[Element]>,
    w: &Window,
    side: Side,
) -> Verdict {
    let default_pool: Vec<Element>;
    let pool = match pool {
        Some(p) => p,
        None => {
            let mut seen = HashSet::new();
            default_pool = std::iter::once(g.identity())
                .chain(radii.iter().flatten().cloned())
                .filter(|x| seen.insert(x.clone()))
                .collect();
            &default_pool
        }
    };
    match find_prethick(g, a, b, pool, radii, w, side) {
        Some((f, points)) => Verdict::fails(
            Some(Witness::RadiusPoint { radius: f, point: points.last().cloned().unwrap_or_else(|| g.identity()) }),
            "a union of translates is thick on the window",
        ),
        None => Verdict::holds(
            None,
            format!("no union of at most {b} translates from a pool of {} is thick", pool.len()),
        ),
    }
}

pub fn check_left_small(
    g: &Group,
    a: &SubsetView,
    radii: &[Vec<Element>],
    b: usize,
    w: &Window,
) -> Verdict {
    check_small(g, a, radii, b, None, w, Side::Left)
}
