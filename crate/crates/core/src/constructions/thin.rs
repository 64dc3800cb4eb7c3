//! Splitting an m-thin set into m thin cells.

use std::collections::HashSet;

use crate::ballean::with_identity;
use crate::classify::check_n_thin;
use crate::error::{Error, Result};
use crate::group::{Element, Group, Window};
use crate::partition::{Cell, CheckSpec, Label, Partition, WindowSpec};
use crate::subset::SubsetView;
use crate::verdict::Verdict;

/// Exact search is used when greedy coloring fails on at most this many points.
pub const EXACT_LIMIT: usize = 15;

#[derive(Clone, Debug)]
pub enum MThinOutcome {
    Partition(Partition),
    /// No coloring exists at window scale; `core` is a conflict component
    /// that admits no `m`-coloring.
    Infeasible { core: Vec<Element> },
    /// Greedy coloring failed and the set is too large for exact search.
    GreedyFailed { point: Element },
    /// The set is not `m`-thin on the window.
    NotMThin(Verdict),
}

/// The conflict graph on `A ∩ W`: `a` and `a'` conflict when one of them is
/// a test centre (in the core, outside the head) and the other lies in its
/// `(F ∪ {e})`-translate for some `F` of the family.
pub fn conflict_graph(
    g: &Group,
    points: &[Element],
    family: &[Vec<Element>],
    w: &Window,
    head: &HashSet<Element>,
) -> Vec<Vec<usize>> {
    let index: std::collections::HashMap<&Element, usize> = points.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); points.len()];
    let radius: HashSet<Element> = family.iter().flat_map(|f| with_identity(g, f)).collect();
    for (i, a) in points.iter().enumerate() {
        if !w.in_core(a) || head.contains(a) {
            continue;
        }
        for t in &radius {
            if let Some(&j) = index.get(&g.mul(t, a)) {
                if j != i {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
    }
    adj.into_iter()
        .map(|s| {
            let mut v: Vec<usize> = s.into_iter().collect();
            v.sort_unstable();
            v
        })
        .collect()
}

/// Smallest-color-first coloring in the given order; `Err(v)` names the
/// first vertex with no free color.
pub fn greedy_coloring(adj: &[Vec<usize>], m: usize) -> std::result::Result<Vec<usize>, usize> {
    let mut color = vec![usize::MAX; adj.len()];
    for v in 0..adj.len() {
        let used: HashSet<usize> = adj[v].iter().map(|&u| color[u]).collect();
        color[v] = (0..m).find(|c| !used.contains(c)).ok_or(v)?;
    }
    Ok(color)
}

/// Backtracking `m`-coloring of the vertices in `comp`.
pub fn exact_coloring(adj: &[Vec<usize>], comp: &[usize], m: usize, color: &mut [usize]) -> bool {
    fn go(adj: &[Vec<usize>], comp: &[usize], k: usize, m: usize, color: &mut [usize]) -> bool {
        if k == comp.len() {
            return true;
        }
        let v = comp[k];
        // fixing the first vertex's color loses nothing
        let top = if k == 0 { 1.min(m) } else { m };
        for c in 0..top {
            if adj[v].iter().all(|&u| color[u] != c) {
                color[v] = c;
                if go(adj, comp, k + 1, m, color) {
                    return true;
                }
                color[v] = usize::MAX;
            }
        }
        false
    }
    go(adj, comp, 0, m, color)
}

fn components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; adj.len()];
    let mut out = Vec::new();
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut k = 0;
        while k < comp.len() {
            for &u in &adj[comp[k]] {
                if !seen[u] {
                    seen[u] = true;
                    comp.push(u);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Splits `A ∩ W` into `m` cells, each thin for every radius of the family.
///
/// Points are colored greedily in window order; if that fails and
/// `|A ∩ W| ≤ EXACT_LIMIT`, an exact search decides. Cells are labelled
/// `0..m` and certified with `n = 1`.
pub fn m_thin_partition(
    g: &Group,
    a: &SubsetView,
    m: usize,
    family: &[Vec<Element>],
    spec: &WindowSpec,
    head: &[Element],
) -> Result<MThinOutcome> {
    if m == 0 {
        return Err(Error::Precondition("at least one cell is needed".into()));
    }
    let w = spec.build(g)?;
    let head_set: HashSet<Element> = head.iter().cloned().collect();
    let pre = check_n_thin(g, a, family, m, &w, &head_set);
    if !pre.is_holds() {
        return Ok(MThinOutcome::NotMThin(pre));
    }
    let points = a.in_window(&w);
    let adj = conflict_graph(g, &points, family, &w, &head_set);
    let color = match greedy_coloring(&adj, m) {
        Ok(c) => c,
        Err(v) if points.len() > EXACT_LIMIT => {
            return Ok(MThinOutcome::GreedyFailed { point: points[v].clone() });
        }
        Err(_) => {
            let mut color = vec![usize::MAX; points.len()];
            for comp in components(&adj) {
                if !exact_coloring(&adj, &comp, m, &mut color) {
                    return Ok(MThinOutcome::Infeasible {
                        core: comp.iter().map(|&i| points[i].clone()).collect(),
                    });
                }
            }
            color
        }
    };
    let mut cells: Vec<Cell> = (0..m).map(|c| Cell::new(Label::Index(c), Vec::new())).collect();
    for (i, &c) in color.iter().enumerate() {
        cells[c].elements.push(points[i].clone());
    }
    let mut rest = Cell::new(Label::Reserved, Vec::new());
    let inside: HashSet<&Element> = points.iter().collect();
    rest.elements = w.elements().iter().filter(|x| !inside.contains(x)).cloned().collect();
    for c in &mut cells {
        c.certify(g, &w, CheckSpec::Thin { family: family.to_vec(), n: 1, head: head.to_vec() })?;
    }
    cells.push(rest);
    Ok(MThinOutcome::Partition(Partition::new("m-thin", spec.clone(), cells)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::atoms;
    use crate::verdict::Status;

    fn family() -> Vec<Vec<Element>> {
        vec![(-3..=3).map(Element::int).collect()]
    }

    #[test]
    fn pairs_split() {
        let z = Group::integers();
        let a = atoms::powers(2).union(&atoms::powers(2).translate(&z, &Element::int(1), crate::Side::Left));
        let spec = WindowSpec::Interval { lo: -5000, hi: 5000, margin: 5 };
        let head: Vec<Element> = (-8..=8).map(Element::int).collect();
        match m_thin_partition(&z, &a, 2, &family(), &spec, &head).unwrap() {
            MThinOutcome::Partition(p) => {
                assert_eq!(p.status(), Status::Holds);
                let c0 = &p.cells[0].elements;
                assert!(c0.contains(&Element::int(16)) && !c0.contains(&Element::int(17)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn thin_set_one_cell() {
        let z = Group::integers();
        let spec = WindowSpec::Interval { lo: -2000, hi: 2000, margin: 5 };
        let head: Vec<Element> = (-8..=8).map(Element::int).collect();
        let out = m_thin_partition(&z, &atoms::powers(2), 1, &family(), &spec, &head);
        assert!(matches!(out.unwrap(), MThinOutcome::Partition(_)));
    }

    #[test]
    fn evens_rejected() {
        let z = Group::integers();
        let spec = WindowSpec::Interval { lo: -100, hi: 100, margin: 5 };
        let out = m_thin_partition(&z, &atoms::evens(), 2, &family(), &spec, &[]).unwrap();
        assert!(matches!(out, MThinOutcome::NotMThin(v) if v.is_fails()));
    }

    #[test]
    fn odd_triangle_infeasible() {
        let z = Group::integers();
        let a = SubsetView::explicit("A", vec![Element::int(0), Element::int(1), Element::int(3)]);
        let fam = vec![vec![Element::int(1), Element::int(2), Element::int(-3)]];
        let spec = WindowSpec::Interval { lo: -10, hi: 10, margin: 4 };
        match m_thin_partition(&z, &a, 2, &fam, &spec, &[]).unwrap() {
            MThinOutcome::Infeasible { core } => assert_eq!(core.len(), 3),
            other => panic!("{other:?}"),
        }
    }
}
