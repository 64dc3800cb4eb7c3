use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its multiplication table, `rows[i][j] = i·j`.
///
/// Tables are validated on construction: closure, a two-sided identity,
/// inverses and associativity are all checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTable {
    rows: Vec<Vec<u32>>,
    identity: u32,
    inverses: Vec<u32>,
}

impl CayleyTable {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Descriptor("empty multiplication table".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Descriptor(format!("row {i} has length {} instead of {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&v| v as usize >= n) {
                return Err(Error::Descriptor(format!("entry {bad} in row {i} is out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] as usize == x && rows[x][e] as usize == x))
            .ok_or_else(|| Error::Descriptor("table has no two-sided identity".into()))? as u32;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| rows[x][y] == identity && rows[y][x] == identity)
                .ok_or_else(|| Error::Descriptor(format!("element {x} has no inverse")))?;
            inverses.push(inv as u32);
        }
        for x in 0..n {
            for y in 0..n {
                let xy = rows[x][y] as usize;
                for z in 0..n {
                    let yz = rows[y][z] as usize;
                    if rows[xy][z] != rows[x][yz] {
                        return Err(Error::Descriptor(format!(
                            "table is not associative at ({x}, {y}, {z})"
                        )));
                    }
                }
            }
        }
        Ok(CayleyTable { rows, identity, inverses })
    }

    /// The cyclic group `Z_n` written additively.
    pub fn cyclic(n: u32) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        CayleyTable::new(rows).expect("cyclic table is a group")
    }

    /// The symmetric group `S_3`, elements listed as permutations of {0,1,2}
    /// in lexicographic order with the identity first.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        let rows = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        CayleyTable::new(rows).expect("S3 table is a group")
    }

    /// Direct product of two tables, element `(i, j)` stored as `i * |B| + j`.
    pub fn product(a: &CayleyTable, b: &CayleyTable) -> Self {
        let (na, nb) = (a.order(), b.order());
        let mut rows = vec![vec![0u32; na * nb]; na * nb];
        for i in 0..na * nb {
            for j in 0..na * nb {
                let x = a.mul((i / nb) as u32, (j / nb) as u32) as usize;
                let y = b.mul((i % nb) as u32, (j % nb) as u32) as usize;
                rows[i][j] = (x * nb + y) as u32;
            }
        }
        CayleyTable::new(rows).expect("product of groups is a group")
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn identity(&self) -> u32 {
        self.identity
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.rows[x as usize][y as usize]
    }

    #[inline]
    pub fn inverse(&self, x: u32) -> u32 {
        self.inverses[x as usize]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.rows[x][y] == self.rows[y][x]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z6_addition() {
        let t = CayleyTable::cyclic(6);
        assert_eq!(t.mul(4, 5), 3);
        assert_eq!(t.inverse(2), 4);
    }

    #[test]
    fn rejects_non_groups() {
        // no inverse for 1: a monoid table
        let rows = vec![vec![0, 1], vec![1, 1]];
        assert!(CayleyTable::new(rows).is_err());
        // a Latin square that is not associative
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(CayleyTable::new(rows).is_err());
    }

    #[test]
    fn s3_is_nonabelian() {
        let t = CayleyTable::symmetric3();
        assert_eq!(t.order(), 6);
        assert_eq!(t.identity(), 0);
        assert!(!t.is_abelian());
    }
}
