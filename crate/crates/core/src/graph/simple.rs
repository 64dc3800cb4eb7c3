use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// A finite simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

/// Distances from the path metric; `None` between different components.
pub type DistanceTable = Vec<Vec<Option<u32>>>;

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::Precondition(format!("edge ({u}, {v}) leaves the vertex set 0..{n}")));
        }
        if u == v {
            return Err(Error::Precondition(format!("loop at vertex {u}")));
        }
        if self.adj[u].contains(&v) {
            return Err(Error::Precondition(format!("duplicate edge ({u}, {v})")));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, ns) in self.adj.iter().enumerate() {
            for &v in ns {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn bfs(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.order()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn path_metric(&self) -> DistanceTable {
        (0..self.order()).map(|s| self.bfs(s)).collect()
    }

    /// Connected components, each sorted, listed by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for s in 0..self.order() {
            if seen[s] {
                continue;
            }
            let mut comp: Vec<usize> = self
                .bfs(s)
                .iter()
                .enumerate()
                .filter_map(|(v, d)| d.map(|_| v))
                .collect();
            comp.sort_unstable();
            for &v in &comp {
                seen[v] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || self.components().len() == 1
    }

    /// The subgraph induced on `vertices`, relabelled `0..vertices.len()`.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let pos: HashMap<usize, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut g = SimpleGraph::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                if let Some(&j) = pos.get(&w) {
                    if i < j {
                        g.add_edge(i, j).expect("induced subgraph of a simple graph");
                    }
                }
            }
        }
        g
    }
}

/// Parses an edge list: one `u v` pair per line, or a lone `u` for an
/// isolated vertex. Blank lines and `#` comments are skipped. Vertex names
/// are arbitrary tokens, numbered in order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<(SimpleGraph, Vec<String>)> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut id = |s: &str, names: &mut Vec<String>| -> usize {
        *index.entry(s.to_string()).or_insert_with(|| {
            names.push(s.to_string());
            names.len() - 1
        })
    };
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        match parts.as_slice() {
            [u] => {
                id(u, &mut names);
            }
            [u, v] => {
                let a = id(u, &mut names);
                let b = id(v, &mut names);
                edges.push((a, b, lineno + 1));
            }
            _ => {
                return Err(Error::Config(format!("line {}: expected `u v`", lineno + 1)));
            }
        }
    }
    let mut g = SimpleGraph::new(names.len());
    for (a, b, line) in edges {
        g.add_edge(a, b).map_err(|e| Error::Config(format!("line {line}: {e}")))?;
    }
    Ok((g, names))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_examples() {
        let p4 = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.path_metric()[0][3], Some(3));
        let k3 = SimpleGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let d = k3.path_metric();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(d[u][v], Some(u32::from(u != v)));
            }
        }
        let star = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.path_metric()[1][2], Some(2));
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(SimpleGraph::from_edges(2, &[(0, 0)]).is_err());
        assert!(SimpleGraph::from_edges(2, &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn parses_edge_lists() {
        let (g, names) = parse_edge_list("1 2\n2 3 # comment\n\n3 4\n9\n").unwrap();
        assert_eq!(names, vec!["1", "2", "3", "4", "9"]);
        assert_eq!(g.edges().len(), 3);
        assert_eq!(g.components().len(), 2);
        assert!(parse_edge_list("1 2 3").is_err());
    }
}
