use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, GroupError};

/// Integer combination of bar cells `(g1,…,gk)` of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupChain {
    pub degree: usize,
    terms: BTreeMap<Vec<usize>, i64>,
}

impl GroupChain {
    pub fn zero(degree: usize) -> Self {
        GroupChain { degree, terms: BTreeMap::new() }
    }

    pub fn cell(tuple: Vec<usize>) -> Self {
        Self::from_terms(tuple.len(), [(tuple, 1)]).expect("uniform degree")
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Vec<usize>, i64)>) -> Result<Self, GroupError> {
        let mut c = Self::zero(degree);
        for (t, z) in terms {
            if t.len() != degree {
                return Err(GroupError::RaggedChain { expected: degree, found: t.len() });
            }
            c.add_term(t, z);
        }
        Ok(c)
    }

    fn add_term(&mut self, t: Vec<usize>, z: i64) {
        if z == 0 {
            return;
        }
        match self.terms.entry(t) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += z;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(z);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, i64)> {
        self.terms.iter().map(|(t, z)| (t, *z))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut c = Self::zero(self.degree);
        for (t, z) in self.terms() {
            c.add_term(t.clone(), z * k);
        }
        c
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding chains of different degrees");
        let mut c = self.clone();
        for (t, z) in other.terms() {
            c.add_term(t.clone(), z);
        }
        c
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1))
    }

    pub fn check_elements(&self, g: &FiniteGroup) -> Result<(), GroupError> {
        self.terms.keys().flatten().try_for_each(|&x| g.check_element(x))
    }

    /// Entrywise conjugate `t⁻¹ c t`.
    pub fn conjugated(&self, g: &FiniteGroup, t: usize) -> Self {
        let mut c = Self::zero(self.degree);
        for (tuple, z) in self.terms() {
            c.add_term(tuple.iter().map(|&x| g.conj(x, t)).collect(), z);
        }
        c
    }

    /// Every group element occurring in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.terms.keys().flatten().copied().collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl fmt::Display for GroupChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, z)) in self.terms().enumerate() {
            match (i, z < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if z.abs() != 1 {
                write!(f, "{}", z.abs())?;
            }
            let body: Vec<String> = t.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

/// Boundary in the inhomogeneous bar complex with trivial coefficients.
pub fn bar_boundary(g: &FiniteGroup, c: &GroupChain) -> GroupChain {
    let k = c.degree;
    if k == 0 {
        return GroupChain::zero(0);
    }
    let mut out = GroupChain::zero(k - 1);
    for (t, z) in c.terms() {
        out.add_term(t[1..].to_vec(), z);
        for i in 1..k {
            let mut s = t[..i - 1].to_vec();
            s.push(g.mul(t[i - 1], t[i]));
            s.extend_from_slice(&t[i + 1..]);
            out.add_term(s, if i % 2 == 0 { z } else { -z });
        }
        out.add_term(t[..k - 1].to_vec(), if k % 2 == 0 { z } else { -z });
    }
    out
}

/// Chain of the commuting ladder with top row `a`, bottom row `c` and
/// verticals `b`: `Σ_j (−1)^(k−j) (a_1,…,a_j, b_j, c_{j+1},…,c_k)`.
/// Requires `a_i b_i = b_{i−1} c_i`.
pub fn diagram_chain(g: &FiniteGroup, a: &[usize], b: &[usize], c: &[usize]) -> Result<GroupChain, GroupError> {
    let k = a.len();
    if c.len() != k || b.len() != k + 1 {
        return Err(GroupError::RaggedChain { expected: k + 1, found: b.len() });
    }
    for &x in a.iter().chain(b).chain(c) {
        g.check_element(x)?;
    }
    for i in 1..=k {
        if g.mul(a[i - 1], b[i]) != g.mul(b[i - 1], c[i - 1]) {
            return Err(GroupError::CommutationFailure { index: i });
        }
    }
    let mut out = GroupChain::zero(k + 1);
    for j in 0..=k {
        let mut t = a[..j].to_vec();
        t.push(b[j]);
        t.extend_from_slice(&c[j..]);
        out.add_term(t, if (k - j) % 2 == 0 { 1 } else { -1 });
    }
    Ok(out)
}

/// `c × t`: every cell replaced by its ladder with all verticals `t`.
pub fn prism(g: &FiniteGroup, c: &GroupChain, t: usize) -> Result<GroupChain, GroupError> {
    c.check_elements(g)?;
    g.check_element(t)?;
    let mut out = GroupChain::zero(c.degree + 1);
    for (cell, z) in c.terms() {
        let bottom: Vec<usize> = cell.iter().map(|&x| g.conj(x, t)).collect();
        let verticals = vec![t; cell.len() + 1];
        out = out.plus(&diagram_chain(g, cell, &verticals, &bottom)?.scaled(z));
    }
    Ok(out)
}

/// Both sides of `d(c×t) = (−1)^(k+1) c + dc×t + (−1)^k t⁻¹ct`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrismCheck {
    pub boundary: GroupChain,
    pub expansion: GroupChain,
}

impl PrismCheck {
    pub fn holds(&self) -> bool {
        self.boundary == self.expansion
    }
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn prism_identity(g: &FiniteGroup, c: &GroupChain, t: usize) -> Result<PrismCheck, GroupError> {
    let k = c.degree;
    let boundary = bar_boundary(g, &prism(g, c, t)?);
    let dc_t = if k == 0 { GroupChain::zero(0) } else { prism(g, &bar_boundary(g, c), t)? };
    let expansion = c.scaled(sign(k + 1)).plus(&dc_t).plus(&c.conjugated(g, t).scaled(sign(k)));
    Ok(PrismCheck { boundary, expansion })
}

/// `c × t × g` and the five terms of its boundary, for `c` of degree `j`
/// and `g` commuting with every element of `c`:
///
/// `(−1)^j c×t + (−1)^(j+1) c×g + (dc×t)×g + (−1)^j (t⁻¹ct)×g + (−1)^(j+1) c×(g⁻¹tg)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IteratedPrism {
    pub chain: GroupChain,
    pub boundary: GroupChain,
    pub terms: [GroupChain; 5],
    /// The second and fourth terms cancel (they do when `t⁻¹ct = c`).
    pub middle_cancel: bool,
}

impl IteratedPrism {
    pub fn expansion(&self) -> GroupChain {
        self.terms.iter().skip(1).fold(self.terms[0].clone(), |acc, t| acc.plus(t))
    }

    pub fn holds(&self) -> bool {
        self.boundary == self.expansion()
    }
}

pub fn iterated_prism(g: &FiniteGroup, c: &GroupChain, t: usize, gbar: usize) -> Result<IteratedPrism, GroupError> {
    g.check_element(gbar)?;
    if let Some(&x) = c.support().iter().find(|&&x| !g.commute(x, gbar)) {
        return Err(GroupError::DoesNotCommute { element: x, with: gbar });
    }
    let j = c.degree;
    let ct = prism(g, c, t)?;
    let chain = prism(g, &ct, gbar)?;
    let boundary = bar_boundary(g, &chain);
    let dc_t = if j == 0 { GroupChain::zero(j + 1) } else { prism(g, &prism(g, &bar_boundary(g, c), t)?, gbar)? };
    let terms = [
        ct.scaled(sign(j)),
        prism(g, c, gbar)?.scaled(sign(j + 1)),
        dc_t,
        prism(g, &c.conjugated(g, t), gbar)?.scaled(sign(j)),
        prism(g, c, g.conj(t, gbar))?.scaled(sign(j + 1)),
    ];
    let middle_cancel = terms[1].plus(&terms[3]).is_zero();
    Ok(IteratedPrism { chain, boundary, terms, middle_cancel })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_of_length_one() {
        let s3 = FiniteGroup::symmetric3();
        let (gg, t) = (1, 3);
        let c = s3.conj(gg, t);
        let ch = diagram_chain(&s3, &[gg], &[t, t], &[c]).unwrap();
        let expected = GroupChain::from_terms(2, [(vec![gg, t], 1), (vec![t, c], -1)]).unwrap();
        assert_eq!(ch, expected);
        assert!(matches!(diagram_chain(&s3, &[1], &[3, 3], &[1]), Err(GroupError::CommutationFailure { index: 1 })));
    }

    #[test]
    fn identity_ladder_is_a_cycle() {
        let z3 = FiniteGroup::cyclic(3);
        for k in 0..4 {
            let ch = diagram_chain(&z3, &vec![0; k], &vec![0; k + 1], &vec![0; k]).unwrap();
            assert!(bar_boundary(&z3, &ch).is_zero(), "k = {k}");
        }
    }

    #[test]
    fn prism_small() {
        let z6 = FiniteGroup::cyclic(6);
        let c = GroupChain::cell(vec![2]);
        let p = prism(&z6, &c, 0).unwrap();
        assert_eq!(p, GroupChain::from_terms(2, [(vec![2, 0], 1), (vec![0, 2], -1)]).unwrap());
        assert!(prism_identity(&z6, &c, 0).unwrap().holds());
        assert!(prism_identity(&z6, &GroupChain::cell(vec![]), 5).unwrap().holds());
        assert_eq!(GroupChain::from_terms(2, [(vec![2, 0], 1), (vec![0, 2], -1)]).unwrap().to_string(), "-(0,2) + (2,0)");
    }

    #[test]
    fn iterated_in_abelian_group() {
        let v = FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2));
        let c = GroupChain::from_terms(1, [(vec![1], 1), (vec![3], -2)]).unwrap();
        let it = iterated_prism(&v, &c, 2, 2).unwrap();
        assert!(it.holds());
        assert!(it.middle_cancel);
        assert_eq!(it.chain.degree, 3);
        let s3 = FiniteGroup::symmetric3();
        assert!(matches!(
            iterated_prism(&s3, &GroupChain::cell(vec![1]), 0, 2),
            Err(GroupError::DoesNotCommute { .. })
        ));
    }
}
