use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{Element, Group, Window};
use crate::subset::SubsetView;

/// A translation invariant ideal realized at window scale: a window subset
/// belongs to the ideal when it has at most `threshold` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealSpec {
    /// Finite sets, with threshold `⌈√|W|⌉`.
    FiniteSets,
    WindowThreshold(usize),
}

impl IdealSpec {
    pub fn threshold(self, w: &Window) -> usize {
        match self {
            IdealSpec::FiniteSets => (w.len() as f64).sqrt().ceil() as usize,
            IdealSpec::WindowThreshold(t) => t,
        }
    }
}

/// `Δ_J(A) = {g ∈ W : |gA ∩ A ∩ W| > t}`.
pub fn combinatorial_derivation(g: &Group, a: &SubsetView, ideal: IdealSpec, w: &Window) -> Vec<Element> {
    let t = ideal.threshold(w);
    let members = a.in_window(w);
    if members.len() <= t {
        return Vec::new();
    }
    w.elements()
        .iter()
        .filter(|x| {
            let xi = g.inverse(x);
            let mut count = 0;
            for m in &members {
                if a.contains(&g.mul(&xi, m)) {
                    count += 1;
                    if count > t {
                        return true;
                    }
                }
            }
            false
        })
        .cloned()
        .collect()
}

/// Products `g_{i_1}⋯g_{i_k}` for `i_1 < ⋯ < i_k < n`, shortest index sets
/// first and lexicographic within a length.
pub fn fp_products(g: &Group, gs: &[Element], n: usize) -> Result<Vec<Element>> {
    if n == 0 || n > gs.len() {
        return Err(Error::InvalidSequence(format!("depth {n} needs 1..={} terms", gs.len())));
    }
    let mut seen = HashSet::new();
    for x in &gs[..n] {
        if !seen.insert(x) {
            return Err(Error::InvalidSequence(format!(
                "sequence is not injective: {} repeats",
                g.format_element(x)
            )));
        }
    }
    let mut out = Vec::with_capacity((1 << n) - 1);
    let mut seen = HashSet::new();
    for size in 1..=n {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let p = idx.iter().fold(g.identity(), |acc, &i| g.mul(&acc, &gs[i]));
            if seen.insert(p.clone()) {
                out.push(p);
            }
            let mut i = size;
            let mut moved = false;
            while i > 0 {
                i -= 1;
                if idx[i] < n - (size - i) {
                    idx[i] += 1;
                    for j in i + 1..size {
                        idx[j] = idx[j - 1] + 1;
                    }
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
    }
    Ok(out)
}

/// The FP-set of the first `n` terms as an explicit subset.
pub fn fp_set(g: &Group, gs: &[Element], n: usize) -> Result<SubsetView> {
    let products = fp_products(g, gs, n)?;
    let name = format!("fp({})", g.format_set(&gs[..n]).join(","));
    Ok(SubsetView::explicit(name, products))
}
