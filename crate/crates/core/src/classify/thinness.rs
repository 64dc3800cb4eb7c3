use std::collections::HashSet;

use crate::ballean::{with_identity, Side};
use crate::group::{Element, Group, Window};
use crate::subset::SubsetView;
use crate::verdict::{Verdict, Witness};

/// Result of an n-thinness scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThinReport {
    /// `max |Fa ∩ A|` over the scanned points, 0 when none were scanned.
    pub max: usize,
    pub radius: Vec<Element>,
    pub point: Option<Element>,
    pub scanned: usize,
}

/// The default excluded head: the ball of half the window radius, or nothing
/// for windows that are not balls.
pub fn default_head(g: &Group, w: &Window) -> HashSet<Element> {
    match w.radius() {
        Some(r) => w
            .elements()
            .iter()
            .filter(|x| g.word_length(x).is_ok_and(|l| l <= r / 2))
            .cloned()
            .collect(),
        None => HashSet::new(),
    }
}

/// `max_{a ∈ A ∩ core ∖ H} |(F ∪ {e})a ∩ A|`, translates taken on the given side.
pub fn thin_count(
    g: &Group,
    a: &SubsetView,
    f: &[Element],
    w: &Window,
    head: &HashSet<Element>,
    side: Side,
) -> ThinReport {
    let f = with_identity(g, f);
    let mut report = ThinReport { max: 0, radius: f.clone(), point: None, scanned: 0 };
    for x in w.core() {
        if head.contains(x) || !a.contains(x) {
            continue;
        }
        report.scanned += 1;
        let mut seen = HashSet::new();
        let n = f
            .iter()
            .map(|t| side.act(g, t, x))
            .filter(|y| a.contains(y) && seen.insert(y.clone()))
            .count();
        if n > report.max {
            report.max = n;
            report.point = Some(x.clone());
        }
    }
    report
}

/// The largest count over a family of radii.
pub fn thin_count_family(
    g: &Group,
    a: &SubsetView,
    family: &[Vec<Element>],
    w: &Window,
    head: &HashSet<Element>,
    side: Side,
) -> ThinReport {
    let mut best = ThinReport { max: 0, radius: vec![g.identity()], point: None, scanned: 0 };
    for f in family {
        let r = thin_count(g, a, f, w, head, side);
        best.scanned = best.scanned.max(r.scanned);
        if r.max > best.max {
            best = ThinReport { scanned: best.scanned, ..r };
        }
    }
    best
}

/// Window evidence for n-thinness with respect to every radius in the family.
pub fn check_n_thin(
    g: &Group,
    a: &SubsetView,
    family: &[Vec<Element>],
    n: usize,
    w: &Window,
    head: &HashSet<Element>,
) -> Verdict {
    let r = thin_count_family(g, a, family, w, head, Side::Left);
    let witness = Some(Witness::Count { n: r.max, radius: r.radius.clone(), point: r.point.clone() });
    if r.max <= n {
        Verdict::holds(witness, format!("max |Fa ∩ A| = {} over {} points", r.max, r.scanned))
    } else {
        Verdict::fails(witness, format!("|Fa ∩ A| reaches {} > {n}", r.max))
    }
}

/// Window evidence for sparseness: some `F ⊆ S` with `|F| ≤ depth` has
/// `|⋂_{g∈F} gA ∩ W| ≤ threshold`.
pub fn check_sparse(
    g: &Group,
    a: &SubsetView,
    sample: &[Element],
    depth: usize,
    threshold: usize,
    w: &Window,
) -> Verdict {
    let sample: Vec<Element> = {
        let mut seen = HashSet::new();
        sample.iter().filter(|x| seen.insert((*x).clone())).cloned().collect()
    };
    // rows[j]: window indices lying in s_j A
    let rows: Vec<Vec<bool>> = sample
        .iter()
        .map(|s| {
            let si = g.inverse(s);
            w.elements().iter().map(|x| a.contains(&g.mul(&si, x))).collect()
        })
        .collect();
    let mut best: Option<(usize, Vec<usize>)> = None;
    for size in 1..=depth.min(sample.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let count = (0..w.len()).filter(|&i| idx.iter().all(|&j| rows[j][i])).count();
            if count <= threshold {
                let f = idx.iter().map(|&j| sample[j].clone()).collect();
                return Verdict::holds(
                    Some(Witness::Set(f)),
                    format!("intersection of translates has {count} window points"),
                );
            }
            if best.as_ref().is_none_or(|(c, _)| count < *c) {
                best = Some((count, idx.clone()));
            }
            if !advance(&mut idx, sample.len()) {
                break;
            }
        }
    }
    match best {
        Some((count, idx)) => Verdict::fails(
            Some(Witness::Set(idx.iter().map(|&j| sample[j].clone()).collect())),
            format!("every F of size at most {depth} keeps at least {count} > {threshold} points"),
        ),
        None => Verdict::inconclusive("empty sample"),
    }
}

fn advance(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
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
