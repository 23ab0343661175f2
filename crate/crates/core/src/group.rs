//! Finite groups by multiplication table.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite group; element 0 is the unit. `mul(a, b)` is `ab`, and when
/// elements act on something, `ab` acts as "first `b`, then `a`".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table (unit first, associative, with inverses).
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        if n == 0 {
            return bad("a group needs at least one element".to_string());
        }
        if BTreeSet::from_iter(names.iter()).len() != n {
            return bad("group element names must be distinct".to_string());
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return bad(format!("multiplication table must be {n}x{n} with entries below {n}"));
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                return bad(format!("{} is not the unit", names[0]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("table not associative on ({}, {}, {})", names[a], names[b], names[c]));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0 && table[b][a] == 0) {
                Some(b) => inverse.push(b),
                None => return bad(format!("{} has no inverse", names[a])),
            }
        }
        Ok(FiniteGroup { names, table, inverse })
    }

    /// The group generated by permutations of `0..degree` (composition `(pq)(i) = p(q(i))`).
    /// Elements are listed in breadth-first order from the identity.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<(Self, Vec<Vec<usize>>)> {
        for g in generators {
            let mut seen = alloc::vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| i >= degree || core::mem::replace(&mut seen[i], true)) {
                return Err(Error::InvalidInput(format!("{g:?} is not a permutation of 0..{degree}")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut perms = alloc::vec![id.clone()];
        let mut index = BTreeMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let p: Vec<usize> = perms[i].iter().map(|&k| g[k]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), perms.len());
                    queue.push_back(perms.len());
                    perms.push(p);
                }
            }
        }
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index[&b.iter().map(|&k| a[k]).collect::<Vec<_>>()]).collect())
            .collect();
        let names = perms.iter().map(|p| cycle_name(p)).collect();
        Ok((FiniteGroup::from_table(names, table)?, perms))
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n = <g>`, elements `1, g, g^2, ...`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group order must be positive");
        let names = (0..n)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(names, table).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n`: `r^i` then `s r^i`, with `s r s = r^{-1}`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1, "dihedral parameter must be positive");
        // element (f, i) = s^f r^i, index f*n + i
        let names = (0..2 * n)
            .map(|k| {
                let (f, i) = (k / n, k % n);
                let r = match i {
                    0 => String::new(),
                    1 => "r".to_string(),
                    _ => format!("r^{i}"),
                };
                match (f, i) {
                    (0, 0) => "1".to_string(),
                    (0, _) => r,
                    (_, 0) => "s".to_string(),
                    _ => format!("s{r}"),
                }
            })
            .collect();
        let mul = |a: usize, b: usize| {
            let (fa, ia) = (a / n, a % n);
            let (fb, ib) = (b / n, b % n);
            // s^fa r^ia s^fb r^ib = s^(fa+fb) r^(±ia + ib)
            let i = if fb == 0 { (ia + ib) % n } else { (n - ia + ib) % n };
            ((fa + fb) % 2) * n + i
        };
        let table = (0..2 * n).map(|a| (0..2 * n).map(|b| mul(a, b)).collect()).collect();
        FiniteGroup::from_table(names, table).expect("dihedral table is a group")
    }

    /// The symmetric group on `n` letters, elements in cycle notation.
    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1, "symmetric group degree must be positive");
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t: Vec<usize> = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Self::from_permutations(n, &gens).expect("valid generators").0
    }

    pub fn klein4() -> Self {
        let names = ["1", "a", "b", "ab"].iter().map(|s| s.to_string()).collect();
        let table = (0..4).map(|a: usize| (0..4).map(|b: usize| a ^ b).collect()).collect();
        FiniteGroup::from_table(names, table).expect("Klein table is a group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a b a^{-1}`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names.iter().position(|n| n == name).ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Conjugacy classes, each sorted, ordered by their smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.order()];
        let mut classes = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let class: BTreeSet<usize> = (0..self.order()).map(|s| self.conjugate(s, g)).collect();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order()).filter(|&s| self.mul(s, g) == self.mul(g, s)).collect()
    }

    /// Representatives `s_i` with `G = ⊔ H s_i`, the first being the unit.
    pub fn right_coset_reps(&self, h: &[usize]) -> Vec<usize> {
        let mut covered = alloc::vec![false; self.order()];
        let mut reps = Vec::new();
        for s in 0..self.order() {
            if covered[s] {
                continue;
            }
            reps.push(s);
            for &z in h {
                covered[self.mul(z, s)] = true;
            }
        }
        reps
    }

    /// The subgroup on `elements` (which must contain the unit and be closed),
    /// with the embedding into `self`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos: BTreeMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut table = Vec::with_capacity(elems.len());
        for &a in &elems {
            let mut row = Vec::with_capacity(elems.len());
            for &b in &elems {
                match pos.get(&self.mul(a, b)) {
                    Some(&p) => row.push(p),
                    None => return Err(Error::InvalidInput("subset is not closed under multiplication".to_string())),
                }
            }
            table.push(row);
        }
        let names = elems.iter().map(|&e| self.names[e].clone()).collect();
        Ok((FiniteGroup::from_table(names, table)?, elems))
    }
}

fn cycle_name(p: &[usize]) -> String {
    let mut seen = alloc::vec![false; p.len()];
    let mut out = String::new();
    for i in 0..p.len() {
        if seen[i] || p[i] == i {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            cycle.push(j.to_string());
            j = p[j];
        }
        out.push('(');
        out.push_str(&cycle.join(" "));
        out.push(')');
    }
    if out.is_empty() { "1".to_string() } else { out }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.conjugacy_classes().iter().map(Vec::len).collect::<Vec<_>>(), [1, 3, 2]);
        let d3 = FiniteGroup::dihedral(3);
        assert_eq!(d3.conjugacy_classes().len(), 3);
        assert_eq!(FiniteGroup::dihedral(4).conjugacy_classes().len(), 5);
        assert!(FiniteGroup::klein4().is_abelian());
        assert_eq!(FiniteGroup::cyclic(4).element_order(1), 4);
        assert_eq!(FiniteGroup::trivial().order(), 1);
    }

    #[test]
    fn centralizers_and_cosets() {
        let s3 = FiniteGroup::symmetric(3);
        for g in 0..6 {
            let z = s3.centralizer(g);
            let class = s3.conjugacy_classes().into_iter().find(|c| c.contains(&g)).unwrap();
            assert_eq!(z.len() * class.len(), 6);
            let reps = s3.right_coset_reps(&z);
            assert_eq!(reps.len(), class.len());
            assert_eq!(reps[0], 0);
            let (sub, emb) = s3.subgroup(&z).unwrap();
            assert_eq!(sub.order(), z.len());
            assert_eq!(emb, z);
        }
    }

    #[test]
    fn bad_tables_are_rejected() {
        let names: Vec<String> = ["1", "a"].iter().map(|s| s.to_string()).collect();
        assert!(FiniteGroup::from_table(names.clone(), alloc::vec![alloc::vec![0, 1], alloc::vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(names, alloc::vec![alloc::vec![0, 1], alloc::vec![1, 0]]).is_ok());
        assert!(FiniteGroup::from_permutations(2, &[alloc::vec![0, 0]]).is_err());
        assert!(FiniteGroup::cyclic(4).subgroup(&[0, 1]).is_err());
        assert!(FiniteGroup::cyclic(4).subgroup(&[0, 2]).is_ok());
    }
}
