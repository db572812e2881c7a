use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GroupError;

/// Associativity is checked on every triple up to this order and sampled
/// above it.
const EXHAUSTIVE_ASSOCIATIVITY: usize = 24;
const SAMPLED_TRIPLES: usize = 20_000;

/// Finite group given by its multiplication table on `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    name: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupTableJson {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotAGroup("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotAGroup(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::NotAGroup(format!("entry {x} in row {i} is not an element")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| GroupError::NotAGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let inv = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| GroupError::NotAGroup(format!("element {g} has no inverse")))?;
            inverse.push(inv);
        }
        let assoc = |a: usize, b: usize, c: usize| table[table[a][b]][c] == table[a][table[b][c]];
        if n <= EXHAUSTIVE_ASSOCIATIVITY {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..SAMPLED_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAGroup(format!("({a}·{b})·{c} ≠ {a}·({b}·{c})")));
                }
            }
        }
        Ok(FiniteGroup { table, identity, inverse, name: format!("G{n}") })
    }

    pub fn from_json(s: &str) -> Result<Self, GroupError> {
        let j: GroupTableJson = serde_json::from_str(s).map_err(|e| GroupError::Json(e.to_string()))?;
        if j.order != j.table.len() {
            return Err(GroupError::NotAGroup(format!("order {} but {} rows", j.order, j.table.len())));
        }
        Self::from_table(j.table)
    }

    pub fn to_json(&self) -> GroupTableJson {
        GroupTableJson { order: self.order(), table: self.table.clone() }
    }

    fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z/n with element `i` the residue `i`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table").named(format!("Z/{n}"))
    }

    /// Symmetric group on three letters; elements are the permutations of
    /// (0,1,2) in lexicographic order, so 0 is the identity.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        // (a·b)(x) = a(b(x))
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::from_table(table).expect("S3 table").named("S3")
    }

    /// Direct product; `(a, b)` is element `a * |H| + b`.
    pub fn product(&self, other: &FiniteGroup) -> Self {
        let (n, m) = (self.order(), other.order());
        let table = (0..n * m)
            .map(|x| (0..n * m).map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m)).collect())
            .collect();
        Self::from_table(table).expect("product of groups").named(format!("{}x{}", self.name, other.name))
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `t⁻¹ g t`.
    pub fn conj(&self, g: usize, t: usize) -> usize {
        self.mul(self.mul(self.inv(t), g), t)
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn check_element(&self, g: usize) -> Result<(), GroupError> {
        if g < self.order() {
            Ok(())
        } else {
            Err(GroupError::BadElement(g))
        }
    }

    /// Sorted, deduplicated subset verified to be a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Vec<usize>, GroupError> {
        let mut h: Vec<usize> = elements.to_vec();
        h.sort_unstable();
        h.dedup();
        for &g in &h {
            self.check_element(g)?;
        }
        if h.binary_search(&self.identity).is_err() {
            return Err(GroupError::NotASubgroup("identity missing".into()));
        }
        for &a in &h {
            for &b in &h {
                if h.binary_search(&self.mul(a, b)).is_err() {
                    return Err(GroupError::NotASubgroup(format!("{a}·{b} = {} is outside", self.mul(a, b))));
                }
            }
        }
        Ok(h)
    }

    /// Subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&g| seen[g]).collect()
    }
}

/// Group named on the command line or given as a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupInput {
    Finite(FiniteGroup),
    /// The infinite cyclic group, integers under addition.
    InfiniteCyclic,
}

impl GroupInput {
    /// Accepts `"Z"`, `"Z/n"`, `"S3"`, or a JSON table.
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let s = s.trim();
        if s.starts_with('{') {
            return FiniteGroup::from_json(s).map(GroupInput::Finite);
        }
        match s {
            "Z" => Ok(GroupInput::InfiniteCyclic),
            "S3" => Ok(GroupInput::Finite(FiniteGroup::symmetric3())),
            _ => {
                let n = s
                    .strip_prefix("Z/")
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| GroupError::UnknownPreset(s.to_string()))?;
                Ok(GroupInput::Finite(FiniteGroup::cyclic(n)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        assert_eq!(s3.identity(), 0);
        assert!(!s3.commute(1, 2));
        assert_eq!(s3.generated(&[3]).len(), 3);
        let z4 = FiniteGroup::cyclic(4);
        assert_eq!(z4.subgroup(&[0, 2]).unwrap(), vec![0, 2]);
        assert!(z4.subgroup(&[0, 1]).is_err());
        let v = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
        assert!((0..4).all(|g| v.mul(g, g) == 0));
        assert_eq!(GroupInput::parse("Z").unwrap(), GroupInput::InfiniteCyclic);
        assert_eq!(GroupInput::parse("Z/5").unwrap(), GroupInput::Finite(FiniteGroup::cyclic(5)));
        assert!(GroupInput::parse("Q8").is_err());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_json(r#"{"order": 3, "table": [[0,1],[1,0]]}"#).is_err());
        let g = FiniteGroup::from_json(r#"{"order": 2, "table": [[0,1],[1,0]]}"#).unwrap();
        assert_eq!(g.inv(1), 1);
        // a loop that is not associative: Latin square with identity 0
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t), Err(GroupError::NotAGroup(_))));
    }
}
