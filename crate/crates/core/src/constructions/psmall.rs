//! Witness sequences for P-smallness.

use crate::group::{Element, Group, Window};
use crate::subset::SubsetView;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PSmallMode {
    /// Translates pairwise disjoint on the window.
    Disjoint,
    /// Translates pairwise meeting in at most `threshold` window points.
    Almost { threshold: usize },
}

/// Greedy `g_1, g_2, ...` from the window core, in window order, keeping a
/// candidate when `gA` satisfies the mode against every kept translate.
/// Returns at most `n` elements.
pub fn p_small_witness(g: &Group, a: &SubsetView, n: usize, mode: PSmallMode, w: &Window) -> Vec<Element> {
    let limit = match mode {
        PSmallMode::Disjoint => 0,
        PSmallMode::Almost { threshold } => threshold,
    };
    let mut kept: Vec<(Element, Vec<usize>)> = Vec::new();
    for s in w.core() {
        if kept.len() == n {
            break;
        }
        let si = g.inverse(s);
        let row: Vec<usize> = (0..w.len()).filter(|&i| a.contains(&g.mul(&si, w.get(i)))).collect();
        let fits = kept.iter().all(|(_, r)| {
            let (mut i, mut j, mut common) = (0, 0, 0);
            while i < r.len() && j < row.len() {
                match r[i].cmp(&row[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        common += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
            common <= limit
        });
        if fits {
            kept.push((s.clone(), row));
        }
    }
    kept.into_iter().map(|(s, _)| s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subset::atoms;

    #[test]
    fn point_and_multiples() {
        let z = Group::integers();
        let w = Window::interval(-50, 50, 10);
        let one = SubsetView::explicit("0", vec![Element::int(0)]);
        assert_eq!(p_small_witness(&z, &one, 5, PSmallMode::Disjoint, &w).len(), 5);
        let s = p_small_witness(&z, &atoms::multiples(3), 4, PSmallMode::Disjoint, &w);
        assert_eq!(s.len(), 3);
        let mut residues: Vec<i64> = s.iter().map(|x| x.as_int().unwrap().rem_euclid(3)).collect();
        residues.sort_unstable();
        assert_eq!(residues, vec![0, 1, 2]);
    }

    #[test]
    fn powers_almost() {
        let z = Group::integers();
        let w = Window::interval(-1000, 1000, 100);
        let s = p_small_witness(&z, &atoms::powers(2), 4, PSmallMode::Almost { threshold: 2 }, &w);
        assert_eq!(s.len(), 4);
    }
}
