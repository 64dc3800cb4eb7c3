//! Partitions of groups driven by the graph methods: cells that are not
//! left thick, and cells that are left large.

use crate::ballean::Side;
use crate::error::{Error, Result};
use crate::graph::{grasshopper_cycle, joint_transversal, three_sets_partition, FunctionalGraph, SimpleGraph};
use crate::group::{Element, Group, GroupKind, Window};
use crate::partition::{Cell, CheckSpec, Label, Partition, WindowSpec};

/// Splits the window so that no cell contains both `x` and `tx`.
///
/// The three-sets coloring runs on `x -> tx`; images leaving the window go
/// to an extra fixed vertex that is dropped afterwards. Cells are labelled
/// 1 to 3 and empty ones are omitted.
pub fn non_thick_partition(g: &Group, t: &Element, spec: &WindowSpec) -> Result<Partition> {
    g.check(t)?;
    if *t == g.identity() {
        return Err(Error::Precondition("the displacing element must differ from e".into()));
    }
    let w = spec.build(g)?;
    let n = w.len();
    let mut f: Vec<usize> = w.elements().iter().map(|x| w.index_of(&g.mul(t, x)).unwrap_or(n)).collect();
    f.push(n);
    let classes = three_sets_partition(&FunctionalGraph::new(f)?);
    let mut cells = Vec::new();
    for (i, class) in classes.iter().enumerate().skip(1) {
        if class.is_empty() {
            continue;
        }
        let mut cell = Cell::new(Label::Index(i), class.iter().map(|&v| w.get(v).clone()).collect());
        cell.certify(g, &w, CheckSpec::Displacement { g: t.clone() })?;
        cells.push(cell);
    }
    Ok(Partition::new("three-sets", spec.clone(), cells))
}

/// The window as a graph with edges `x ~ sx` for generators `s`.
fn left_cayley_graph(g: &Group, w: &Window) -> Result<SimpleGraph> {
    let mut graph = SimpleGraph::new(w.len());
    for (i, x) in w.elements().iter().enumerate() {
        for s in g.generators() {
            if let Some(j) = w.index_of(&g.mul(s, x)) {
                if i < j && !graph.has_edge(i, j) {
                    graph.add_edge(i, j)?;
                }
            }
        }
    }
    Ok(graph)
}

/// Positions of the window along grasshopper cycles of each component.
fn grasshopper_positions(g: &Group, w: &Window) -> Result<Vec<Vec<usize>>> {
    let graph = left_cayley_graph(g, w)?;
    Ok(grasshopper_cycle(&graph)?.cycles.into_iter().map(|c| c.order).collect())
}

fn ball_elements(g: &Group, r: u32) -> Result<Vec<Element>> {
    Ok(g.enumerate_ball(r)?.elements().to_vec())
}

/// `m` cells, each left large in the window.
///
/// With a finite generating set the window's Cayley graph is walked along a
/// grasshopper cycle and position `i` gets color `i mod m`; consecutive
/// positions are at most 3 apart, so every cell is certified with the ball
/// of radius `3m`. Countable direct sums are handled through the chain of
/// finite subgroups, see [`chain_large_partition`].
pub fn large_partition(g: &Group, m: usize, spec: &WindowSpec) -> Result<Partition> {
    if m == 0 {
        return Err(Error::Precondition("at least one cell is needed".into()));
    }
    if let GroupKind::DirectSum { countable: true, .. } = g.kind() {
        let w = spec.build(g)?;
        let mut level = Vec::new();
        let mut size = 1usize;
        let mut k = 0;
        while size < m {
            k += 1;
            size *= g.modulus_at(k - 1).expect("countable sums have every modulus") as usize;
        }
        for i in 0..size {
            level.push(g.nth_element(i).expect("enumerable"));
        }
        if w.len() % size != 0 || !level.iter().all(|h| w.contains(h)) {
            return Err(Error::Precondition("the window must be a finite subgroup of the chain".into()));
        }
        return chain_large_partition(g, m, &level, spec);
    }
    if !g.has_finite_generators() {
        return Err(Error::Descriptor(
            "large partitions need a finite generating set or a chain of finite subgroups".into(),
        ));
    }
    let w = spec.build(g)?;
    let mut color = vec![0usize; w.len()];
    for order in grasshopper_positions(g, &w)? {
        for (i, v) in order.into_iter().enumerate() {
            color[v] = i % m;
        }
    }
    let f = if m == 1 { vec![g.identity()] } else { ball_elements(g, 3 * m as u32)? };
    let mut cells: Vec<Cell> = (0..m).map(|c| Cell::new(Label::Index(c), Vec::new())).collect();
    for (v, &c) in color.iter().enumerate() {
        cells[c].elements.push(w.get(v).clone());
    }
    for cell in &mut cells {
        cell.certify(g, &w, CheckSpec::Large { side: Side::Left, f: f.clone() })?;
    }
    Ok(Partition::new("grasshopper-large", spec.clone(), cells))
}

/// `m` cells of a finite subgroup window `K`, given a subgroup `H ⊆ K` with
/// `|H| ≥ m`.
///
/// Joint transversals of the left and the right cosets of `H` are peeled off
/// one at a time; transversal `t` goes to cell `t mod m`. Each cell then
/// meets every left and every right coset, so `HA = AH = K`.
pub fn chain_large_partition(g: &Group, m: usize, h: &[Element], spec: &WindowSpec) -> Result<Partition> {
    let w = spec.build(g)?;
    let n = w.len();
    if h.len() < m {
        return Err(Error::Precondition(format!("the subgroup has {} < {m} elements", h.len())));
    }
    let idx = |x: &Element| {
        w.index_of(x).ok_or_else(|| Error::Precondition("the window is not closed under the subgroup".into()))
    };
    let cosets = |side: Side| -> Result<Vec<Vec<usize>>> {
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for (i, x) in w.elements().iter().enumerate() {
            if seen[i] {
                continue;
            }
            let mut c = Vec::with_capacity(h.len());
            for t in h {
                let j = idx(&side.opposite().act(g, t, x))?;
                if seen[j] {
                    return Err(Error::Precondition("the listed subgroup is not a subgroup".into()));
                }
                seen[j] = true;
                c.push(j);
            }
            out.push(c);
        }
        Ok(out)
    };
    // left cosets xH, right cosets Hx
    let mut left = cosets(Side::Left)?;
    let mut right = cosets(Side::Right)?;
    let mut cells: Vec<Cell> = (0..m).map(|c| Cell::new(Label::Index(c), Vec::new())).collect();
    let mut removed = vec![false; n];
    for t in 0..h.len() {
        // relabel the remaining points densely for the matching
        let alive: Vec<usize> = (0..n).filter(|&i| !removed[i]).collect();
        let mut dense = vec![usize::MAX; n];
        for (k, &i) in alive.iter().enumerate() {
            dense[i] = k;
        }
        let map = |cs: &[Vec<usize>]| -> Vec<Vec<usize>> {
            cs.iter().map(|c| c.iter().map(|&i| dense[i]).collect()).collect()
        };
        let tr = joint_transversal(alive.len(), &map(&left), &map(&right))?;
        for k in tr {
            let i = alive[k];
            removed[i] = true;
            cells[t % m].elements.push(w.get(i).clone());
        }
        for c in left.iter_mut().chain(right.iter_mut()) {
            c.retain(|&i| !removed[i]);
        }
    }
    for cell in &mut cells {
        cell.elements.sort_by_key(|x| w.index_of(x));
        cell.certify(g, &w, CheckSpec::Large { side: Side::Left, f: h.to_vec() })?;
        cell.certify(g, &w, CheckSpec::Large { side: Side::Right, f: h.to_vec() })?;
    }
    Ok(Partition::new("grasshopper-large", spec.clone(), cells))
}

/// 2-adic valuation of `i + 1`.
fn v2(i: usize) -> usize {
    (i + 1).trailing_zeros() as usize
}

/// The countable variant: position `i` of the grasshopper cycle gets color
/// `v2(i + 1)`, so color `c` recurs every `2^(c+1)` positions (at most
/// `3·2^c` across the wraparound). Colors `c ≤ certify_up_to` are checked
/// as left large with the ball of radius `9·2^c`.
pub fn countable_large_partition(g: &Group, spec: &WindowSpec, certify_up_to: usize) -> Result<Partition> {
    if !g.has_finite_generators() {
        return Err(Error::Descriptor("the countable large partition needs a finite generating set".into()));
    }
    let w = spec.build(g)?;
    let mut cells: Vec<Cell> = Vec::new();
    for order in grasshopper_positions(g, &w)? {
        for (i, v) in order.into_iter().enumerate() {
            let c = v2(i);
            while cells.len() <= c {
                cells.push(Cell::new(Label::Index(cells.len()), Vec::new()));
            }
            cells[c].elements.push(w.get(v).clone());
        }
    }
    for (c, cell) in cells.iter_mut().enumerate().take(certify_up_to + 1) {
        let f = ball_elements(g, 9 << c)?;
        cell.certify(g, &w, CheckSpec::Large { side: Side::Left, f })?;
    }
    Ok(Partition::new("grasshopper-large", spec.clone(), cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CayleyTable;
    use crate::verdict::Status;

    #[test]
    fn non_thick_on_z() {
        let g = Group::integers();
        let spec = WindowSpec::Interval { lo: -100, hi: 100, margin: 0 };
        let p = non_thick_partition(&g, &Element::int(1), &spec).unwrap();
        assert_eq!(p.cells.len(), 2);
        assert_eq!(p.status(), Status::Holds);
        p.check_total(&spec.build(&g).unwrap()).unwrap();
    }

    #[test]
    fn non_thick_on_z3_needs_three() {
        let g = Group::cyclic_table(3);
        let p = non_thick_partition(&g, &Element::Table(1), &WindowSpec::Whole).unwrap();
        assert_eq!(p.cells.len(), 3);
        assert_eq!(p.status(), Status::Holds);
    }

    #[test]
    fn identity_rejected() {
        let g = Group::integers();
        assert!(non_thick_partition(&g, &Element::int(0), &WindowSpec::Interval { lo: 0, hi: 3, margin: 0 }).is_err());
    }

    #[test]
    fn large_on_z() {
        let g = Group::integers();
        let spec = WindowSpec::Interval { lo: -300, hi: 300, margin: 0 };
        let p = large_partition(&g, 3, &spec).unwrap();
        assert_eq!(p.cells.len(), 3);
        assert_eq!(p.status(), Status::Holds);
        let m1 = large_partition(&g, 1, &spec).unwrap();
        assert_eq!(m1.cells[0].elements.len(), 601);
        assert_eq!(m1.status(), Status::Holds);
    }

    #[test]
    fn chain_case_on_s3() {
        let g = Group::table(CayleyTable::symmetric3());
        // <(0 1)> is element 2 in the lexicographic listing
        let h = vec![Element::Table(0), Element::Table(2)];
        let p = chain_large_partition(&g, 2, &h, &WindowSpec::Whole).unwrap();
        assert_eq!(p.status(), Status::Holds);
        assert_eq!(p.cells.iter().map(|c| c.elements.len()).sum::<usize>(), 6);
    }

    #[test]
    fn chain_case_on_countable_sum() {
        let g = Group::countable_sum(2).unwrap();
        let spec = WindowSpec::FirstN { n: 64, core: 64 };
        let p = large_partition(&g, 3, &spec).unwrap();
        assert_eq!(p.cells.len(), 3);
        assert_eq!(p.status(), Status::Holds);
    }

    #[test]
    fn countable_colors_on_z() {
        let g = Group::integers();
        let spec = WindowSpec::Interval { lo: -200, hi: 200, margin: 0 };
        let p = countable_large_partition(&g, &spec, 2).unwrap();
        assert!(p.cells.len() >= 8);
        assert_eq!(p.status(), Status::Holds);
    }
}
