use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{CategoryParts, KCategory, Morphism};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::SparseVec;

/// A finite poset presented by its elements and cover relations `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetSpec {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

/// The reflexive transitive closure of a validated poset.
#[derive(Clone, Debug)]
pub struct Order {
    /// Element names, sorted.
    pub elements: Vec<String>,
    /// `leq[a][b]` iff `a <= b`.
    pub leq: Vec<Vec<bool>>,
}

impl Order {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn less(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }
}

impl PosetSpec {
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Self {
        PosetSpec {
            elements: elements.iter().map(|e| e.as_ref().to_string()).collect(),
            covers: covers.iter().map(|(a, b)| (a.as_ref().to_string(), b.as_ref().to_string())).collect(),
        }
    }

    /// Computes the order, rejecting unknown names and directed cycles.
    pub fn order(&self) -> Result<Order> {
        let mut elements = self.elements.clone();
        elements.sort();
        for w in elements.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidInput(format!("duplicate poset element {:?}", w[0])));
            }
        }
        let idx: BTreeMap<&str, usize> = elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let n = elements.len();
        let mut succ: Vec<Vec<usize>> = alloc::vec![Vec::new(); n];
        let mut indeg = alloc::vec![0usize; n];
        for (a, b) in &self.covers {
            let ai = *idx.get(a.as_str()).ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let bi = *idx.get(b.as_str()).ok_or_else(|| Error::UnknownElement(b.clone()))?;
            if ai == bi {
                return Err(Error::CycleDetected(a.clone()));
            }
            succ[ai].push(bi);
            indeg[bi] += 1;
        }
        let mut topo = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        while let Some(v) = ready.pop() {
            topo.push(v);
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).expect("some element lies on a cycle");
            return Err(Error::CycleDetected(elements[stuck].clone()));
        }
        let mut leq = alloc::vec![alloc::vec![false; n]; n];
        for &v in topo.iter().rev() {
            leq[v][v] = true;
            for &w in &succ[v] {
                for u in 0..n {
                    if leq[w][u] {
                        leq[v][u] = true;
                    }
                }
            }
        }
        Ok(Order { elements, leq })
    }
}

/// The incidence category: `hom(x, y)` is spanned by `x<y` when `x <= y`.
pub fn from_poset_incidence(p: &PosetSpec, field: FieldSpec) -> Result<KCategory> {
    let order = p.order()?;
    let n = order.len();
    let mut parts = CategoryParts { objects: order.elements.clone(), ..Default::default() };
    let mut id = alloc::vec![alloc::vec![usize::MAX; n]; n];
    for a in 0..n {
        for b in 0..n {
            if order.leq[a][b] {
                let name = if a == b {
                    format!("1_{}", order.elements[a])
                } else {
                    format!("{}<{}", order.elements[a], order.elements[b])
                };
                id[a][b] = parts.morphisms.len();
                parts.morphisms.push(Morphism { name, source: a, target: b });
            }
        }
    }
    parts.identities = (0..n).map(|a| id[a][a]).collect();
    for a in 0..n {
        for b in 0..n {
            if !order.less(a, b) {
                continue;
            }
            for c in 0..n {
                if order.less(b, c) {
                    parts.comp.insert((id[b][c], id[a][b]), SparseVec::unit(id[a][c], field));
                }
            }
        }
    }
    KCategory::from_parts(field, parts)
}
