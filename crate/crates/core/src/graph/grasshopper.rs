//! Grasshopper cycles: orderings of the vertices of a finite connected graph
//! in which consecutive vertices, including the last and the first, are at
//! distance at most 3.

use crate::error::Result;
use crate::graph::{DistanceTable, SimpleGraph};

pub const MAX_JUMP: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrasshopperCycle {
    pub order: Vec<usize>,
}

/// Cycles for every component of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrasshopperReport {
    pub cycles: Vec<GrasshopperCycle>,
    /// Set when the input was disconnected and `cycles` has one entry per
    /// component.
    pub disconnected: bool,
}

/// Breadth-first spanning tree rooted at `root`: children in increasing
/// vertex order.
fn spanning_tree(g: &SimpleGraph, root: usize) -> Vec<Vec<usize>> {
    let mut children = vec![Vec::new(); g.order()];
    let mut seen = vec![false; g.order()];
    seen[root] = true;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let mut ns: Vec<usize> = g.neighbors(u).to_vec();
        ns.sort_unstable();
        for v in ns {
            if !seen[v] {
                seen[v] = true;
                children[u].push(v);
                queue.push_back(v);
            }
        }
    }
    children
}

/// Orders the subtree at `v`. With `head` set the subtree starts at `v`
/// and its children are traversed in order with `head` cleared; otherwise
/// children are traversed in reverse with `head` set and `v` comes last.
///
/// Every subtree ordering then begins and ends within distance 1 of its
/// root, which bounds each jump by 3.
fn traverse(children: &[Vec<usize>], root: usize, out: &mut Vec<usize>) {
    // explicit stack to survive deep trees: (vertex, head, next child index)
    let mut stack: Vec<(usize, bool, usize)> = vec![(root, true, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, head, next) = *top;
        let kids = &children[v];
        if next == 0 && head {
            out.push(v);
        }
        if next < kids.len() {
            top.2 += 1;
            let child = if head { kids[next] } else { kids[kids.len() - 1 - next] };
            stack.push((child, !head, 0));
        } else {
            if !head {
                out.push(v);
            }
            stack.pop();
        }
    }
}

/// A grasshopper cycle of a connected graph, from a spanning-tree traversal
/// rooted at the smallest vertex.
pub fn grasshopper_cycle(g: &SimpleGraph) -> Result<GrasshopperReport> {
    let comps = g.components();
    let mut cycles = Vec::with_capacity(comps.len());
    for comp in &comps {
        let children = spanning_tree(g, comp[0]);
        let mut order = Vec::with_capacity(comp.len());
        traverse(&children, comp[0], &mut order);
        cycles.push(GrasshopperCycle { order });
    }
    Ok(GrasshopperReport { cycles, disconnected: comps.len() > 1 })
}

/// The first consecutive pair, wraparound included, farther apart than 3,
/// or a repeated or missing vertex. `None` certifies the cycle.
pub fn find_bad_jump(dist: &DistanceTable, order: &[usize], vertices: &[usize]) -> Option<(usize, usize)> {
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    let mut expected = vertices.to_vec();
    expected.sort_unstable();
    if sorted != expected {
        return Some((usize::MAX, usize::MAX));
    }
    let n = order.len();
    for i in 0..n {
        let (u, v) = (order[i], order[(i + 1) % n]);
        match dist[u][v] {
            Some(d) if d <= MAX_JUMP => {}
            _ => return Some((u, v)),
        }
    }
    None
}

/// Checks every cycle of a report against the path metric.
pub fn certify(g: &SimpleGraph, report: &GrasshopperReport) -> bool {
    let dist = g.path_metric();
    let comps = g.components();
    comps.len() == report.cycles.len()
        && comps
            .iter()
            .zip(&report.cycles)
            .all(|(c, cyc)| find_bad_jump(&dist, &cyc.order, c).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_and_star() {
        let p4 = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = grasshopper_cycle(&p4).unwrap();
        assert_eq!(r.cycles[0].order, vec![0, 2, 3, 1]);
        assert!(certify(&p4, &r));
        let star = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = grasshopper_cycle(&star).unwrap();
        assert_eq!(r.cycles[0].order, vec![0, 1, 2, 3]);
        assert!(certify(&star, &r));
        let single = SimpleGraph::new(1);
        assert_eq!(grasshopper_cycle(&single).unwrap().cycles[0].order, vec![0]);
    }

    #[test]
    fn disconnected_flag() {
        let g = SimpleGraph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let r = grasshopper_cycle(&g).unwrap();
        assert!(r.disconnected);
        assert_eq!(r.cycles.len(), 2);
        assert!(certify(&g, &r));
    }

    #[test]
    fn long_path_is_deep() {
        let n = 20_000;
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let g = SimpleGraph::from_edges(n, &edges).unwrap();
        let r = grasshopper_cycle(&g).unwrap();
        let order = &r.cycles[0].order;
        assert_eq!(order.len(), n);
        for i in 0..n {
            let (u, v) = (order[i], order[(i + 1) % n]);
            assert!(u.abs_diff(v) <= 3);
        }
    }
}
