use crate::error::{Error, Result};

/// Checks that `cells` partition `0..n` and returns the cell index of each point.
fn cell_of(n: usize, cells: &[Vec<usize>], which: &str) -> Result<Vec<usize>> {
    let mut owner = vec![usize::MAX; n];
    for (i, c) in cells.iter().enumerate() {
        for &x in c {
            if x >= n {
                return Err(Error::Precondition(format!("{which}: point {x} outside 0..{n}")));
            }
            if owner[x] != usize::MAX {
                return Err(Error::Precondition(format!("{which}: point {x} lies in two cells")));
            }
            owner[x] = i;
        }
    }
    if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::Precondition(format!("{which}: point {x} is in no cell")));
    }
    Ok(owner)
}

/// A set meeting every cell of both partitions of `0..n` exactly once.
///
/// All cells must have the same size. The cell-intersection bipartite
/// multigraph is then regular, so it has a perfect matching; each matched
/// edge is a point of the transversal. Augmenting paths try unmatched
/// partners first, so the matching stays close to the input order.
pub fn joint_transversal(n: usize, p: &[Vec<usize>], q: &[Vec<usize>]) -> Result<Vec<usize>> {
    let _ = cell_of(n, p, "first partition")?;
    let q_owner = cell_of(n, q, "second partition")?;
    let size = p.first().map_or(0, |c| c.len());
    if p.iter().chain(q).any(|c| c.len() != size) {
        return Err(Error::Precondition("cells have different sizes".into()));
    }
    // edges of P-cell i: (Q-cell, point)
    let edges: Vec<Vec<(usize, usize)>> = p
        .iter()
        .map(|c| {
            let mut e: Vec<(usize, usize)> = c.iter().map(|&x| (q_owner[x], x)).collect();
            e.sort_unstable_by_key(|&(_, x)| x);
            e
        })
        .collect();
    let mut matched_q: Vec<Option<(usize, usize)>> = vec![None; q.len()];
    for i in 0..p.len() {
        let mut visited = vec![false; q.len()];
        if !augment(i, &edges, &mut matched_q, &mut visited) {
            return Err(Error::Precondition("no joint transversal exists".into()));
        }
    }
    let mut t: Vec<usize> = matched_q.iter().map(|m| m.expect("perfect matching").1).collect();
    t.sort_unstable();
    Ok(t)
}

fn augment(
    i: usize,
    edges: &[Vec<(usize, usize)>],
    matched_q: &mut [Option<(usize, usize)>],
    visited: &mut [bool],
) -> bool {
    for &(j, x) in &edges[i] {
        if matched_q[j].is_none() {
            visited[j] = true;
            matched_q[j] = Some((i, x));
            return true;
        }
    }
    for &(j, x) in &edges[i] {
        if visited[j] {
            continue;
        }
        visited[j] = true;
        let (owner, _) = matched_q[j].unwrap();
        if augment(owner, edges, matched_q, visited) {
            matched_q[j] = Some((i, x));
            return true;
        }
    }
    false
}

/// Does `t` meet every cell of both partitions exactly once?
pub fn is_joint_transversal(t: &[usize], p: &[Vec<usize>], q: &[Vec<usize>]) -> bool {
    let once = |cells: &[Vec<usize>]| cells.iter().all(|c| c.iter().filter(|x| t.contains(x)).count() == 1);
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == t.len() && once(p) && once(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        // X = {1,2,3,4} as 0..4
        let p = vec![vec![0, 1], vec![2, 3]];
        let q = vec![vec![0, 2], vec![1, 3]];
        assert_eq!(joint_transversal(4, &p, &q).unwrap(), vec![0, 3]);
    }

    #[test]
    fn singletons() {
        let p: Vec<Vec<usize>> = (0..5).map(|i| vec![i]).collect();
        assert_eq!(joint_transversal(5, &p, &p).unwrap(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn grid_rows_and_columns() {
        // 2x3 grid: points r*3+c; P = rows (size 3), Q must also have size 3
        let p = vec![vec![0, 1, 2], vec![3, 4, 5]];
        let q = vec![vec![0, 4, 2], vec![3, 1, 5]];
        let t = joint_transversal(6, &p, &q).unwrap();
        assert!(is_joint_transversal(&t, &p, &q));
    }

    #[test]
    fn unequal_sizes() {
        let p = vec![vec![0, 1, 2], vec![3]];
        let q = vec![vec![0, 3], vec![1, 2]];
        assert!(joint_transversal(4, &p, &q).is_err());
    }
}
