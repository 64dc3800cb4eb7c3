//! Partitions into thick cells from disjoint two-sided blocks `H x H`.

use std::collections::HashSet;

use crate::classify::Sidedness;
use crate::error::{Error, Result};
use crate::group::{Element, Group, Window};
use crate::partition::{Cell, CheckSpec, Label, Partition, WindowSpec};

/// Chosen blocks: level `α` (from 1), its centre `x_α` and the radius of
/// `H_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub level: usize,
    pub centre: Element,
    pub radius: u32,
}

/// Greedily picks centres `x_1, x_2, ...` so that the blocks
/// `H_α x_α H_α` lie in the window and are pairwise disjoint, with
/// `H_α` the ball of radius `⌈α/m⌉`. Stops at the first level with no room.
pub fn greedy_blocks(g: &Group, m: usize, w: &Window) -> Result<(Vec<Block>, Vec<Option<usize>>)> {
    let n = w.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut blocks = Vec::new();
    let mut first_free = 0;
    for level in 1usize.. {
        let radius = level.div_ceil(m) as u32;
        let h = g.enumerate_ball(radius)?.elements().to_vec();
        // in abelian groups H x H = x H H, and H H is the ball of twice the radius
        let shape: Vec<(Element, Element)> = if g.is_abelian() {
            g.enumerate_ball(2 * radius)?.elements().iter().map(|s| (s.clone(), g.identity())).collect()
        } else {
            let mut pairs = Vec::with_capacity(h.len() * h.len());
            for s in &h {
                for t in &h {
                    pairs.push((s.clone(), t.clone()));
                }
            }
            pairs
        };
        let mut found = None;
        for i in first_free..n {
            if owner[i].is_some() {
                continue;
            }
            let x = w.get(i);
            let mut seen = HashSet::new();
            let mut idx = Vec::new();
            let ok = shape.iter().all(|(s, t)| {
                let y = g.mul(&g.mul(s, x), t);
                match w.index_of(&y) {
                    Some(j) if owner[j].is_none() => {
                        if seen.insert(j) {
                            idx.push(j);
                        }
                        true
                    }
                    _ => false,
                }
            });
            if ok {
                found = Some((x.clone(), idx));
                break;
            }
        }
        let Some((centre, idx)) = found else { break };
        for j in idx {
            owner[j] = Some(level);
        }
        while first_free < n && owner[first_free].is_some() {
            first_free += 1;
        }
        blocks.push(Block { level, centre, radius });
    }
    Ok((blocks, owner))
}

/// `m` cells: block `α` goes to cell `α mod m` and elements outside every
/// block to cell 0. Each cell is certified two-sided thick for the balls of
/// radius `1..=test_radius`.
pub fn thick_partition(g: &Group, m: usize, spec: &WindowSpec, test_radius: u32) -> Result<Partition> {
    if m == 0 {
        return Err(Error::Precondition("at least one cell is needed".into()));
    }
    let w = spec.build(g)?;
    let owner = if m == 1 { vec![None; w.len()] } else { greedy_blocks(g, m, &w)?.1 };
    let mut cells: Vec<Cell> = (0..m).map(|c| Cell::new(Label::Index(c), Vec::new())).collect();
    for (i, o) in owner.iter().enumerate() {
        cells[o.map_or(0, |l| l % m)].elements.push(w.get(i).clone());
    }
    let radii: Vec<u32> = (1..=test_radius).collect();
    for c in &mut cells {
        c.certify(g, &w, CheckSpec::Thick { mode: Sidedness::Both, radii: radii.clone() })?;
    }
    Ok(Partition::new("thick", spec.clone(), cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;

    #[test]
    fn blocks_on_z_are_intervals() {
        let z = Group::integers();
        let w = Window::interval(0, 200, 0);
        let (blocks, _) = greedy_blocks(&z, 1, &w).unwrap();
        // H_α = [-α, α], so H x H = [x - 2α, x + 2α]
        assert_eq!(blocks[0].centre, Element::int(2));
        assert_eq!(blocks[1].centre, Element::int(9));
    }

    #[test]
    fn z_three_cells() {
        let z = Group::integers();
        let spec = WindowSpec::Interval { lo: 0, hi: 3000, margin: 0 };
        let p = thick_partition(&z, 3, &spec, 10).unwrap();
        assert_eq!(p.cells.len(), 3);
        assert_eq!(p.status(), Status::Holds);
        p.check_total(&spec.build(&z).unwrap()).unwrap();
    }

    #[test]
    fn single_cell() {
        let z = Group::integers();
        let p = thick_partition(&z, 1, &WindowSpec::Interval { lo: 0, hi: 100, margin: 0 }, 5).unwrap();
        assert_eq!(p.cells[0].elements.len(), 101);
        assert_eq!(p.status(), Status::Holds);
    }
}
