//! Functional graphs `x -> f(x)` and the three-sets colorings.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalGraph {
    f: Vec<usize>,
}

impl FunctionalGraph {
    pub fn new(f: Vec<usize>) -> Result<Self> {
        let n = f.len();
        if let Some((x, &y)) = f.iter().enumerate().find(|(_, &y)| y >= n) {
            return Err(Error::Precondition(format!("f({x}) = {y} is outside 0..{n}")));
        }
        Ok(FunctionalGraph { f })
    }

    pub fn order(&self) -> usize {
        self.f.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.f[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.f
    }

    /// Vertex sets of the cycles of length > 1, each listed along `f` from
    /// its smallest vertex.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        // 0 unvisited, 1 on current walk, 2 done
        let mut state = vec![0u8; n];
        let mut out = Vec::new();
        for s in 0..n {
            let mut walk = Vec::new();
            let mut x = s;
            while state[x] == 0 {
                state[x] = 1;
                walk.push(x);
                x = self.f[x];
            }
            if state[x] == 1 {
                let start = walk.iter().position(|&v| v == x).unwrap();
                let cyc = &walk[start..];
                if cyc.len() > 1 {
                    let m = cyc.iter().enumerate().min_by_key(|(_, &v)| v).unwrap().0;
                    let mut c = cyc[m..].to_vec();
                    c.extend_from_slice(&cyc[..m]);
                    out.push(c);
                }
            }
            for v in walk {
                state[v] = 2;
            }
        }
        out.sort();
        out
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.order()).filter(|&x| self.f[x] == x).collect()
    }
}

/// Parses `x f(x)` pairs, one per line. Names are arbitrary tokens, numbered
/// in order of first appearance; every name must receive exactly one image.
pub fn parse_map(text: &str) -> Result<(FunctionalGraph, Vec<String>)> {
    let mut names: Vec<String> = Vec::new();
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut pairs = Vec::new();
    let mut id = |s: &str, names: &mut Vec<String>| {
        *ids.entry(s.to_string()).or_insert_with(|| {
            names.push(s.to_string());
            names.len() - 1
        })
    };
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Config(format!("line {}: expected `x f(x)`", ln + 1)));
        }
        let x = id(toks[0], &mut names);
        let y = id(toks[1], &mut names);
        pairs.push((x, y));
    }
    let mut f = vec![None; names.len()];
    for (x, y) in pairs {
        if f[x].replace(y).is_some() {
            return Err(Error::Config(format!("`{}` has two images", names[x])));
        }
    }
    let f = f
        .into_iter()
        .enumerate()
        .map(|(x, y)| y.ok_or_else(|| Error::Config(format!("`{}` has no image", names[x]))))
        .collect::<Result<Vec<_>>>()?;
    Ok((FunctionalGraph::new(f)?, names))
}

/// Colors: 0 for fixed points, cycles alternate 1,2 with 3 on the last
/// vertex of an odd cycle, tree vertices take the least of {1,2} that
/// differs from their image.
fn coloring(g: &FunctionalGraph) -> Vec<u8> {
    let n = g.order();
    let mut color = vec![u8::MAX; n];
    for x in g.fixed_points() {
        color[x] = 0;
    }
    for c in g.cycles() {
        for (i, &v) in c.iter().enumerate() {
            color[v] = if i % 2 == 0 { 1 } else { 2 };
        }
        if c.len() % 2 == 1 {
            color[*c.last().unwrap()] = 3;
        }
    }
    // every remaining vertex reaches a colored one; color along the reverse walk
    for s in 0..n {
        let mut walk = Vec::new();
        let mut x = s;
        while color[x] == u8::MAX {
            walk.push(x);
            x = g.f[x];
        }
        for &v in walk.iter().rev() {
            color[v] = if color[g.f[v]] == 1 { 2 } else { 1 };
        }
    }
    color
}

fn classes(color: &[u8], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); k];
    for (x, &c) in color.iter().enumerate() {
        out[c as usize].push(x);
    }
    out
}

/// `(X0, X1, X2, X3)`: X0 the fixed points, and `f(Xi) ∩ Xi = ∅` for
/// `i = 1, 2, 3`.
pub fn three_sets_partition(g: &FunctionalGraph) -> [Vec<usize>; 4] {
    let c = classes(&coloring(g), 4);
    [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]
}

/// `(X0, X1, X2)` when there is no odd cycle of length > 1.
pub fn three_sets_partition_3(g: &FunctionalGraph) -> Result<[Vec<usize>; 3]> {
    if let Some(c) = g.cycles().into_iter().find(|c| c.len() % 2 == 1) {
        let list: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        return Err(Error::Precondition(format!("odd cycle ({})", list.join(" "))));
    }
    let c = classes(&coloring(g), 3);
    Ok([c[0].clone(), c[1].clone(), c[2].clone()])
}

/// Checks `f(X) ∩ X = ∅`.
pub fn is_displaced(g: &FunctionalGraph, x: &[usize]) -> bool {
    let mut mark = vec![false; g.order()];
    for &v in x {
        mark[v] = true;
    }
    x.iter().all(|&v| !mark[g.f[v]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fg(f: &[usize]) -> FunctionalGraph {
        FunctionalGraph::new(f.to_vec()).unwrap()
    }

    #[test]
    fn identity_is_all_fixed() {
        let p = three_sets_partition(&fg(&[0, 1, 2]));
        assert_eq!(p[0], vec![0, 1, 2]);
        assert!(p[1].is_empty() && p[2].is_empty() && p[3].is_empty());
    }

    #[test]
    fn three_cycle_uses_three_classes() {
        let p = three_sets_partition(&fg(&[1, 2, 0]));
        assert_eq!(p, [vec![], vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn shift_on_z8_two_colors() {
        let f: Vec<usize> = (0..8).map(|x| (x + 1) % 8).collect();
        let p = three_sets_partition(&fg(&f));
        assert!(p[3].is_empty());
        assert_eq!(p[1], vec![0, 2, 4, 6]);
    }

    #[test]
    fn shift_on_z4_variant() {
        let p = three_sets_partition_3(&fg(&[1, 2, 3, 0])).unwrap();
        assert_eq!(p, [vec![], vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn constant_map_trees() {
        let p = three_sets_partition_3(&fg(&[0, 0, 1, 2])).unwrap();
        assert_eq!(p, [vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn five_cycle_named() {
        let e = three_sets_partition_3(&fg(&[1, 2, 3, 4, 0])).unwrap_err();
        assert!(e.to_string().contains("(0 1 2 3 4)"));
    }

    #[test]
    fn parse() {
        let (g, names) = parse_map("a b\nb c\nc a # loop\n").unwrap();
        assert_eq!(names, vec!["a", "b", "c"]);
        assert_eq!(g.map(), &[1, 2, 0]);
        assert!(parse_map("a b\n").is_err());
    }
}
