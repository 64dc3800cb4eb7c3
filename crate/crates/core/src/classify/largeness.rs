use std::collections::HashMap;

use crate::ballean::Side;
use crate::group::{Element, Group, Window};
use crate::subset::SubsetView;
use crate::verdict::{Verdict, Witness};

/// Is `x ∈ FA` (left) or `x ∈ AF` (right)?
pub fn covered_by(g: &Group, a: &SubsetView, f: &[Element], x: &Element, side: Side) -> bool {
    f.iter().any(|t| a.contains(&side.act(g, &g.inverse(t), x)))
}

/// Window evidence for `G = FA` (left) or `G = AF` (right): every core
/// element of the window is covered. Necessary but not sufficient for the
/// statement about the whole group.
pub fn check_large(g: &Group, a: &SubsetView, f: &[Element], w: &Window, side: Side) -> Verdict {
    for x in w.core() {
        if !covered_by(g, a, f, x, side) {
            return Verdict::fails(
                Some(Witness::RadiusPoint { radius: f.to_vec(), point: x.clone() }),
                format!("{} is not covered", g.format_element(x)),
            );
        }
    }
    Verdict::holds(
        Some(Witness::Set(f.to_vec())),
        format!("{} core elements covered", w.core_len()),
    )
}

pub fn check_left_large(g: &Group, a: &SubsetView, f: &[Element], w: &Window) -> Verdict {
    check_large(g, a, f, w, Side::Left)
}

/// Greedy set cover of the window core by translates `tA` with `t` drawn
/// from the core. Succeeds when fewer than `k` translates cover the core.
///
/// Coverage is counted from pairs `(x, a)` with `x` in the core and `a` in
/// `A ∩ W`, so the window must be wide enough around its core for counts to
/// be exact. Ties go to the earliest candidate in window order.
pub fn find_large_witness(g: &Group, a: &SubsetView, k: usize, w: &Window, side: Side) -> Verdict {
    let core: Vec<&Element> = w.core().collect();
    let members = a.in_window(w);
    let mut cover: HashMap<usize, Vec<usize>> = HashMap::new();
    for (xi, x) in core.iter().enumerate() {
        for m in &members {
            // x = t·m on the left, x = m·t on the right
            let t = match side {
                Side::Left => g.mul(x, &g.inverse(m)),
                Side::Right => g.mul(&g.inverse(m), x),
            };
            if let Some(ti) = w.index_of(&t) {
                if w.is_core(ti) {
                    cover.entry(ti).or_default().push(xi);
                }
            }
        }
    }
    let mut candidates: Vec<(usize, Vec<usize>)> = cover.into_iter().collect();
    candidates.sort_by_key(|(ti, _)| *ti);
    let mut uncovered = vec![true; core.len()];
    let mut left = core.len();
    let mut chosen: Vec<Element> = Vec::new();
    while left > 0 && chosen.len() + 1 < k {
        let mut best: Option<(usize, usize)> = None;
        for (ci, (_, xs)) in candidates.iter().enumerate() {
            let gain = xs.iter().filter(|&&x| uncovered[x]).count();
            if gain > 0 && best.is_none_or(|(_, b)| gain > b) {
                best = Some((ci, gain));
            }
        }
        let Some((ci, gain)) = best else { break };
        for &x in &candidates[ci].1 {
            uncovered[x] = false;
        }
        left -= gain;
        chosen.push(w.get(candidates[ci].0).clone());
    }
    if left == 0 {
        let note = format!("{} translates cover all {} core elements", chosen.len(), core.len());
        Verdict::holds(Some(Witness::Set(chosen)), note)
    } else {
        let first = uncovered.iter().position(|&u| u).unwrap();
        Verdict::fails(
            Some(Witness::RadiusPoint { radius: chosen, point: core[first].clone() }),
            format!("best cover with fewer than {k} translates leaves {left} of {} core elements uncovered", core.len()),
        )
    }
}

/// `Int_F(A) = {a ∈ A : Fa ⊆ A}` over the window core (`aF ⊆ A` on the right).
pub fn interior(g: &Group, a: &SubsetView, f: &[Element], w: &Window, side: Side) -> Vec<Element> {
    w.core()
        .filter(|x| a.contains(x) && f.iter().all(|t| a.contains(&side.act(g, t, x))))
        .cloned()
        .collect()
}
