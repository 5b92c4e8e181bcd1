//! Rank-3 Dowling geometries over a finite group.

use super::GenError;
use crate::bitset::ElementSet;
use crate::matroid::{GroundSet, Matroid};

/// A finite group given by its multiplication table over `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self, GenError> {
        let n = table.len();
        let bad = |why: &str| Err(GenError::NotAGroup(why.to_string()));
        if n == 0 || names.len() != n {
            return bad("table and names must have the same positive length");
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table is not closed");
        }
        let identity = (0..n).find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g));
        let Some(e) = identity else {
            return bad("no identity");
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("not associative");
                    }
                }
            }
            if !(0..n).any(|b| table[a][b] == e && table[b][a] == e) {
                return bad("missing inverse");
            }
        }
        Ok(GroupTable { names, table })
    }

    pub fn cyclic(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable { names, table }
    }

    /// `Z/2 × Z/2` with elements `00, 01, 10, 11`.
    pub fn klein() -> Self {
        let names = ["00", "01", "10", "11"].map(String::from).to_vec();
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        GroupTable { names, table }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// `Q_3(G)`: joints `b1, b2, b3` followed by `a12:g`, `a23:g`, `a13:g`.
pub fn dowling_rank3(group: &GroupTable) -> Result<Matroid, GenError> {
    let k = group.order();
    let a = |pair: usize, g: usize| 3 + pair * k + g;
    let mut labels: Vec<String> = (1..=3).map(|i| format!("b{i}")).collect();
    for pair in ["12", "23", "13"] {
        labels.extend(group.names.iter().map(|g| format!("a{pair}:{g}")));
    }
    let mut lines = Vec::new();
    for (pair, (i, j)) in [(0, 1), (1, 2), (0, 2)].into_iter().enumerate() {
        let mut l = ElementSet::pair(i, j);
        for g in 0..k {
            l.insert(a(pair, g));
        }
        lines.push(l);
    }
    for g in 0..k {
        for h in 0..k {
            lines.push([a(0, g), a(1, h), a(2, group.mul(g, h))].iter().collect());
        }
    }
    Ok(Matroid::from_lines(GroundSet::labeled(labels)?, lines)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_validation() {
        assert!(GroupTable::new(vec!["e".into(), "g".into()], vec![vec![0, 1], vec![1, 0]]).is_ok());
        let no_inverse = GroupTable::new(vec!["e".into(), "z".into()], vec![vec![0, 1], vec![1, 1]]);
        assert!(matches!(no_inverse, Err(GenError::NotAGroup(_))));
        let not_closed = GroupTable::new(vec!["e".into()], vec![vec![1]]);
        assert!(not_closed.is_err());
        let k = GroupTable::klein();
        assert!(GroupTable::new(k.names.clone(), k.table.clone()).is_ok());
    }

    #[test]
    fn sizes() {
        assert_eq!(dowling_rank3(&GroupTable::cyclic(1)).unwrap().size(), 6);
        let m = dowling_rank3(&GroupTable::klein()).unwrap();
        assert_eq!(m.size(), 15);
        assert_eq!(m.rank(), 3);
        assert!(m.is_simple());
    }
}
