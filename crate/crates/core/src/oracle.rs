//! Brute-force generators and oracles used to cross-check the fast
//! algorithms on small instances.

use std::collections::HashMap;

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::density::FiniteGroup;
use crate::graph::{FunctionalGraph, SimpleGraph};

fn to_petgraph(g: &SimpleGraph) -> UnGraph<(), ()> {
    let mut p = UnGraph::with_capacity(g.order(), 0);
    for _ in 0..g.order() {
        p.add_node(());
    }
    for (u, v) in g.edges() {
        p.add_edge((u as u32).into(), (v as u32).into(), ());
    }
    p
}

/// Isomorphism-invariant fingerprint: per-vertex degree, sorted neighbour
/// degrees and triangle count, sorted.
fn fingerprint(g: &SimpleGraph) -> Vec<(usize, Vec<usize>, usize)> {
    let n = g.order();
    let mut out: Vec<_> = (0..n)
        .map(|v| {
            let ns = g.neighbors(v);
            let mut nd: Vec<usize> = ns.iter().map(|&u| g.neighbors(u).len()).collect();
            nd.sort_unstable();
            let mut tri = 0;
            for (i, &a) in ns.iter().enumerate() {
                for &b in &ns[i + 1..] {
                    if g.has_edge(a, b) {
                        tri += 1;
                    }
                }
            }
            (ns.len(), nd, tri)
        })
        .collect();
    out.sort();
    out
}

/// One representative of every isomorphism class of graphs on `n` vertices.
///
/// Every graph on `n` vertices is a graph on `n - 1` vertices plus a vertex
/// joined to some subset, so extending class representatives and
/// deduplicating reaches every class.
pub fn all_graphs(n: usize) -> Vec<SimpleGraph> {
    if n == 0 {
        return vec![SimpleGraph::new(0)];
    }
    let smaller = all_graphs(n - 1);
    let mut reps: Vec<(SimpleGraph, UnGraph<(), ()>)> = Vec::new();
    let mut buckets: HashMap<Vec<(usize, Vec<usize>, usize)>, Vec<usize>> = HashMap::new();
    for base in &smaller {
        for mask in 0u32..1 << (n - 1) {
            let mut edges = base.edges();
            edges.extend((0..n - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, n - 1)));
            let g = SimpleGraph::from_edges(n, &edges).expect("valid edges");
            let bucket = buckets.entry(fingerprint(&g)).or_default();
            let p = to_petgraph(&g);
            if bucket.iter().any(|&i| is_isomorphic(&reps[i].1, &p)) {
                continue;
            }
            bucket.push(reps.len());
            reps.push((g, p));
        }
    }
    reps.into_iter().map(|(g, _)| g).collect()
}

/// Representatives of the connected graphs on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<SimpleGraph> {
    all_graphs(n).into_iter().filter(|g| g.is_connected()).collect()
}

/// A random connected graph: a random spanning tree plus each remaining
/// pair with probability `p`.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> SimpleGraph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = SimpleGraph::new(n);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(perm[i], perm[j]).expect("tree edge");
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && rng.gen_bool(p) {
                g.add_edge(u, v).expect("new edge");
            }
        }
    }
    g
}

/// Whether some cyclic ordering of all vertices has every consecutive
/// distance (wraparound included) at most 3, by backtracking.
pub fn grasshopper_exists(g: &SimpleGraph) -> bool {
    let n = g.order();
    if n <= 1 {
        return true;
    }
    let dist = g.path_metric();
    let near = |u: usize, v: usize| dist[u][v].is_some_and(|d| d <= 3);
    fn go(n: usize, path: &mut Vec<usize>, used: &mut [bool], near: &dyn Fn(usize, usize) -> bool) -> bool {
        if path.len() == n {
            return near(path[n - 1], path[0]);
        }
        let last = *path.last().unwrap();
        for v in 0..n {
            if !used[v] && near(last, v) {
                used[v] = true;
                path.push(v);
                if go(n, path, used, near) {
                    return true;
                }
                path.pop();
                used[v] = false;
            }
        }
        false
    }
    let mut used = vec![false; n];
    used[0] = true;
    go(n, &mut vec![0], &mut used, &near)
}

/// All partitions of `0..n` into cells of size `s`, each cell sorted and
/// cells ordered by their least element.
pub fn equal_partitions(n: usize, s: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(rest: &[usize], s: usize, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        let first = rest[0];
        let others = &rest[1..];
        for combo in combinations(others.len(), s - 1) {
            let mut cell = vec![first];
            cell.extend(combo.iter().map(|&i| others[i]));
            let left: Vec<usize> = others
                .iter()
                .enumerate()
                .filter(|(i, _)| !combo.contains(i))
                .map(|(_, &x)| x)
                .collect();
            acc.push(cell);
            go(&left, s, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if s == 0 || n % s != 0 {
        return out;
    }
    let all: Vec<usize> = (0..n).collect();
    go(&all, s, &mut Vec::new(), &mut out);
    out
}

/// All `k`-subsets of `0..n` as sorted index lists, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Whether a joint transversal exists, by trying every choice of one point
/// per cell of `p`.
pub fn transversal_exists(n: usize, p: &[Vec<usize>], q: &[Vec<usize>]) -> bool {
    let mut q_of = vec![usize::MAX; n];
    for (j, c) in q.iter().enumerate() {
        for &x in c {
            q_of[x] = j;
        }
    }
    fn go(p: &[Vec<usize>], i: usize, q_of: &[usize], hit: &mut [bool]) -> bool {
        if i == p.len() {
            return hit.iter().all(|&h| h);
        }
        for &x in &p[i] {
            let j = q_of[x];
            if j < hit.len() && !hit[j] {
                hit[j] = true;
                if go(p, i + 1, q_of, hit) {
                    return true;
                }
                hit[j] = false;
            }
        }
        false
    }
    p.len() == q.len() && go(p, 0, &q_of, &mut vec![false; q.len()])
}

/// Calls `visit` on every map `0..n -> 0..n`.
pub fn for_each_map(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut f = vec![0usize; n];
    loop {
        visit(&f);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            f[i] += 1;
            if f[i] < n {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Whether the non-fixed points split into `k` classes with
/// `f(X_i) ∩ X_i = ∅`, by trying every assignment.
pub fn displaced_split_exists(g: &FunctionalGraph, k: usize) -> bool {
    let n = g.order();
    let moving: Vec<usize> = (0..n).filter(|&x| g.image(x) != x).collect();
    let m = moving.len();
    let total = (k as u64).pow(m as u32);
    let mut class = vec![usize::MAX; n];
    'outer: for code in 0..total {
        let mut c = code;
        for &x in &moving {
            class[x] = (c % k as u64) as usize;
            c /= k as u64;
        }
        for &x in &moving {
            if class[g.image(x)] == class[x] {
                continue 'outer;
            }
        }
        return true;
    }
    false
}

/// Whether the graph `x ~ f(x)` has a cycle of odd length greater than one.
pub fn has_odd_cycle(g: &FunctionalGraph) -> bool {
    let n = g.order();
    (0..n).any(|s| {
        // s lies on a cycle iff f^j(s) = s for some j ≤ n
        let mut x = g.image(s);
        for j in 1..=n {
            if x == s {
                return j > 1 && j % 2 == 1;
            }
            x = g.image(x);
        }
        false
    })
}

/// Least number of left translates of `a` covering the group, by trying
/// every set of translates in order of size.
pub fn brute_cov(fg: &FiniteGroup, a: u32) -> Option<usize> {
    let n = fg.order();
    let ts: Vec<u32> = (0..n).map(|x| fg.left_translate(x, a)).collect();
    (1..=n).find(|&k| combinations(n, k).iter().any(|c| c.iter().fold(0, |m, &i| m | ts[i]) == fg.full()))
}

/// Largest number of pairwise disjoint left translates of `a`, by trying
/// every set of translates.
pub fn brute_pack(fg: &FiniteGroup, a: u32) -> usize {
    let n = fg.order();
    let ts: Vec<u32> = (0..n).map(|x| fg.left_translate(x, a)).collect();
    let mut best = 0;
    for s in 1u32..1 << n {
        let mut used = 0u32;
        let ok = (0..n).filter(|&i| s >> i & 1 == 1).all(|i| {
            let free = ts[i] & used == 0;
            used |= ts[i];
            free
        });
        if ok {
            best = best.max(s.count_ones() as usize);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn graph_counts() {
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn random_graphs_are_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..20 {
            assert!(random_connected_graph(&mut rng, n, 0.1).is_connected());
        }
    }

    #[test]
    fn partitions_and_combinations() {
        assert_eq!(equal_partitions(4, 2).len(), 3);
        assert_eq!(equal_partitions(6, 3).len(), 10);
        assert_eq!(equal_partitions(9, 3).len(), 280);
        assert_eq!(combinations(5, 2).len(), 10);
    }

    #[test]
    fn small_oracles() {
        let p = vec![vec![0, 1], vec![2, 3]];
        let q = vec![vec![0, 1], vec![2, 3]];
        assert!(transversal_exists(4, &p, &q));
        let c5 = FunctionalGraph::new(vec![1, 2, 3, 4, 0]).unwrap();
        assert!(has_odd_cycle(&c5) && !displaced_split_exists(&c5, 2) && displaced_split_exists(&c5, 3));
        let fixed = FunctionalGraph::new(vec![0, 0, 1]).unwrap();
        assert!(!has_odd_cycle(&fixed) && displaced_split_exists(&fixed, 2));
        let mut count = 0;
        for_each_map(3, |_| count += 1);
        assert_eq!(count, 27);
    }

    #[test]
    fn brute_cov_pack() {
        let fg = FiniteGroup::new(&crate::Group::cyclic_table(6), 12).unwrap();
        assert_eq!(brute_cov(&fg, 0b11), Some(3));
        assert_eq!(brute_pack(&fg, 0b11), 3);
        assert_eq!(brute_cov(&fg, 0), None);
    }
}
