use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{Element, Group, Window};
use crate::subset::SubsetView;
use crate::verdict::{Verdict, Witness};

pub const MAX_DEPTH: usize = 12;
pub const DEFAULT_NODE_BUDGET: usize = 200_000;

/// Every product `g_{i_1}⋯g_{i_k}b_{i_k}` with `i_1 < ⋯ < i_k`.
pub fn pattern_products(g: &Group, gs: &[Element], bs: &[Element]) -> Vec<Element> {
    let d = gs.len();
    let mut out = Vec::with_capacity((1 << d) - 1);
    for mask in 1u32..(1 << d) {
        let last = 31 - mask.leading_zeros() as usize;
        let mut p = g.identity();
        for (i, gi) in gs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p = g.mul(&p, gi);
            }
        }
        out.push(g.mul(&p, &bs[last]));
    }
    out
}

/// Checks that `(gs, bs)` is an injective pattern with all products in `A`.
pub fn verify_pattern(g: &Group, a: &SubsetView, gs: &[Element], bs: &[Element]) -> bool {
    let distinct: HashSet<&Element> = gs.iter().collect();
    gs.len() == bs.len()
        && distinct.len() == gs.len()
        && pattern_products(g, gs, bs).iter().all(|p| a.contains(p))
}

/// Searches `A ∩ W` for a piecewise shifted FP pattern of length `depth`.
///
/// With `I_0 = A ∩ W` and `I_{j+1} = I_j ∩ g_j⁻¹I_j`, a pattern exists iff
/// distinct `g_0, …, g_{d-2}` keep `I_{d-1}` nonempty: the shifts `b_j` are
/// free, so `g_j b_j` can be any point of `I_j`, and the last term is
/// unconstrained. Terms equal to `e` are skipped, since an infinite pattern
/// with `e` among its terms stays a pattern after dropping that term.
pub fn check_scattered(g: &Group, a: &SubsetView, depth: usize, w: &Window, node_budget: usize) -> Result<Verdict> {
    if depth > MAX_DEPTH {
        return Err(Error::Precondition(format!("depth {depth} exceeds the search limit {MAX_DEPTH}")));
    }
    if depth == 0 {
        return Ok(Verdict::fails(
            Some(Witness::Pattern { gs: vec![], bs: vec![] }),
            "the empty pattern is trivially contained",
        ));
    }
    let i0 = a.in_window(w);
    if i0.is_empty() {
        return Ok(Verdict::holds(None, "A has no points in the window"));
    }
    let e = g.identity();
    let mut levels: Vec<Vec<Element>> = vec![i0];
    let mut gs: Vec<Element> = Vec::new();
    let mut nodes = 0usize;
    let found = search(g, &e, depth, &mut levels, &mut gs, &mut nodes, node_budget);
    match found {
        Search::Found => {
            // last term: any element distinct from the others and from e
            let last = w
                .elements()
                .iter()
                .find(|x| **x != e && !gs.contains(x))
                .cloned()
                .ok_or_else(|| Error::Precondition("window too small to extend the pattern".into()))?;
            gs.push(last);
            let bs: Vec<Element> = gs
                .iter()
                .zip(&levels)
                .map(|(gj, level)| g.mul(&g.inverse(gj), &level[0]))
                .collect();
            debug_assert!(verify_pattern(g, a, &gs, &bs));
            Ok(Verdict::fails(
                Some(Witness::Pattern { gs, bs }),
                format!("shifted FP pattern of length {depth} found after {nodes} nodes"),
            ))
        }
        Search::Exhausted => Ok(Verdict::holds(
            None,
            format!("no shifted FP pattern of length {depth} in the window ({nodes} nodes)"),
        )),
        Search::Budget => Ok(Verdict::inconclusive(format!(
            "search budget of {node_budget} nodes exhausted at length {depth}"
        ))),
    }
}

enum Search {
    Found,
    Exhausted,
    Budget,
}

fn search(
    g: &Group,
    e: &Element,
    depth: usize,
    levels: &mut Vec<Vec<Element>>,
    gs: &mut Vec<Element>,
    nodes: &mut usize,
    budget: usize,
) -> Search {
    if gs.len() + 1 == depth {
        return Search::Found;
    }
    let current = levels.last().unwrap().clone();
    let members: HashSet<&Element> = current.iter().collect();
    let mut tried: HashSet<Element> = HashSet::new();
    let mut out_of_budget = false;
    for x in &current {
        let xi = g.inverse(x);
        for y in &current {
            let t = g.mul(y, &xi);
            if t == *e || gs.contains(&t) || !tried.insert(t.clone()) {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Search::Budget;
            }
            let next: Vec<Element> = current
                .iter()
                .filter(|z| members.contains(&g.mul(&t, z)))
                .cloned()
                .collect();
            if next.is_empty() {
                continue;
            }
            levels.push(next);
            gs.push(t);
            match search(g, e, depth, levels, gs, nodes, budget) {
                Search::Found => return Search::Found,
                Search::Budget => out_of_budget = true,
                Search::Exhausted => {}
            }
            gs.pop();
            levels.pop();
            if out_of_budget {
                return Search::Budget;
            }
        }
    }
    Search::Exhausted
}
