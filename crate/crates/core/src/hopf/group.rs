use crate::error::{Error, Result};

/// Multiplication table of a finite group on `{0, …, n−1}`:
/// `table[g][h]` is the product `g·h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl GroupTable {
    /// Validates closure, associativity, identity and inverses.
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {g} has length {}, expected {n}", row.len())));
            }
            if let Some(h) = row.iter().position(|&x| x >= n) {
                return Err(Error::NotAGroup(format!("product ({g}, {h}) = {} is out of range", row[h])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails on the triple ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        Ok(GroupTable {
            name: name.into(),
            table,
            identity,
            inverse,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(format!("Z{n}"), table).expect("cyclic group table")
    }

    /// Direct product; element `(g, h)` is numbered `g·|H| + h`.
    pub fn product(a: &GroupTable, b: &GroupTable) -> Self {
        let (na, nb) = (a.order(), b.order());
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        GroupTable::new(format!("{}x{}", a.name, b.name), table).expect("product of groups")
    }

    /// Parses names such as `Z2`, `Z3`, `Z2xZ2`.
    pub fn by_name(name: &str) -> Option<Self> {
        let mut factors = name.split('x').map(|f| {
            f.strip_prefix('Z')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 1)
                .map(GroupTable::cyclic)
        });
        let first = factors.next()??;
        factors.try_fold(first, |acc, f| Some(GroupTable::product(&acc, &f?)))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}
