//! Finite k-linear categories given by hom bases and composition constants.
//!
//! Objects are sorted by name and morphisms are numbered globally, grouped by
//! `(source, target)` with each identity first in its endomorphism space.
//! Vectors in a hom space use local positions inside that group.

mod bimodule;
pub mod corpus;
mod ops;
mod poset;
mod quiver;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::SparseVec;
use crate::validation::Validation;

pub use bimodule::{Bimodule, BimoduleBuilder, BimoduleParts, Element};
pub use ops::{
    Expansion, Inclusion, compose_named, expand_with_isomorphic_object, full_subcategory, is_source_or_sink,
    prune_source_or_sink,
};
pub use poset::{PosetSpec, from_poset_incidence};
pub use quiver::{Arrow, QuiverSpec, from_quiver_monomial};

/// A basis morphism `source -> target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KCategory {
    field: FieldSpec,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    hom: Vec<Range<usize>>,
    identity: Vec<usize>,
    comp: BTreeMap<(usize, usize), SparseVec>,
    by_name: BTreeMap<String, usize>,
}

/// Raw description of a category, with composites written over global ids.
#[derive(Clone, Debug, Default)]
pub struct CategoryParts {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: Vec<usize>,
    /// `(f, g) -> f∘g`, values over global morphism ids.
    pub comp: BTreeMap<(usize, usize), SparseVec>,
}

impl KCategory {
    /// Canonicalizes `parts`. Missing identity composites are filled in;
    /// explicit ones are kept as given so that validation can inspect them.
    pub fn from_parts(field: FieldSpec, parts: CategoryParts) -> Result<Self> {
        let CategoryParts { objects, morphisms, identities, comp } = parts;
        if identities.len() != objects.len() {
            return Err(Error::InvalidInput(format!(
                "{} identities for {} objects",
                identities.len(),
                objects.len()
            )));
        }
        let mut order: Vec<usize> = (0..objects.len()).collect();
        order.sort_by(|&a, &b| objects[a].cmp(&objects[b]));
        for w in order.windows(2) {
            if objects[w[0]] == objects[w[1]] {
                return Err(Error::InvalidInput(format!("duplicate object {:?}", objects[w[0]])));
            }
        }
        let mut obj_new = alloc::vec![0; objects.len()];
        for (new, &old) in order.iter().enumerate() {
            obj_new[old] = new;
        }
        let n = objects.len();
        for (x, &id) in identities.iter().enumerate() {
            let m = morphisms.get(id).ok_or_else(|| Error::InvalidInput(format!("identity id {id} out of range")))?;
            if m.source != x || m.target != x {
                return Err(Error::InvalidInput(format!("identity {:?} is not an endomorphism of {:?}", m.name, objects[x])));
            }
        }
        let is_identity: Vec<bool> = {
            let mut v = alloc::vec![false; morphisms.len()];
            for &id in &identities {
                v[id] = true;
            }
            v
        };
        for m in &morphisms {
            if m.source >= n || m.target >= n {
                return Err(Error::InvalidInput(format!("morphism {:?} has an unknown endpoint", m.name)));
            }
        }
        let mut mor_order: Vec<usize> = (0..morphisms.len()).collect();
        mor_order.sort_by_key(|&i| {
            let m = &morphisms[i];
            (obj_new[m.source], obj_new[m.target], !is_identity[i], i)
        });
        let mut mor_new = alloc::vec![0; morphisms.len()];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_new[old] = new;
        }
        let new_morphisms: Vec<Morphism> = mor_order
            .iter()
            .map(|&old| {
                let m = &morphisms[old];
                Morphism { name: m.name.clone(), source: obj_new[m.source], target: obj_new[m.target] }
            })
            .collect();
        let mut by_name = BTreeMap::new();
        for (i, m) in new_morphisms.iter().enumerate() {
            if by_name.insert(m.name.clone(), i).is_some() {
                return Err(Error::InvalidInput(format!("duplicate morphism name {:?}", m.name)));
            }
        }
        let mut hom = alloc::vec![0..0; n * n];
        let mut start = 0;
        while start < new_morphisms.len() {
            let (s, t) = (new_morphisms[start].source, new_morphisms[start].target);
            let mut end = start;
            while end < new_morphisms.len() && new_morphisms[end].source == s && new_morphisms[end].target == t {
                end += 1;
            }
            hom[s * n + t] = start..end;
            start = end;
        }
        let mut identity = alloc::vec![0; n];
        for (old_x, &id) in identities.iter().enumerate() {
            identity[obj_new[old_x]] = mor_new[id];
        }
        let mut cat = KCategory {
            field,
            objects: order.iter().map(|&i| objects[i].clone()).collect(),
            morphisms: new_morphisms,
            hom,
            identity,
            comp: BTreeMap::new(),
            by_name,
        };
        let mut given = alloc::collections::BTreeSet::new();
        for ((f, g), v) in comp {
            let (f, g) = (mor_new[f], mor_new[g]);
            given.insert((f, g));
            let (mf, mg) = (&cat.morphisms[f], &cat.morphisms[g]);
            if mf.source != mg.target {
                return Err(Error::InvalidInput(format!("composite {:?}*{:?} is not composable", mf.name, mg.name)));
            }
            let range = cat.hom(mg.source, mf.target);
            let mut local = Vec::new();
            for (id, a) in v.iter() {
                let id = mor_new[id];
                if !range.contains(&id) {
                    return Err(Error::InvalidInput(format!(
                        "composite {:?}*{:?} has a term {:?} in the wrong hom space",
                        mf.name, mg.name, cat.morphisms[id].name
                    )));
                }
                local.push((id - range.start, a.clone()));
            }
            let local = SparseVec::from_entries(local);
            if !local.is_zero() {
                cat.comp.insert((f, g), local);
            }
        }
        for f in 0..cat.morphisms.len() {
            let (s, t) = (cat.morphisms[f].source, cat.morphisms[f].target);
            let unit = cat.basis_vec(f);
            let (idt, ids) = (cat.identity[t], cat.identity[s]);
            if !given.contains(&(idt, f)) {
                cat.comp.insert((idt, f), unit.clone());
            }
            if !given.contains(&(f, ids)) {
                cat.comp.insert((f, ids), unit);
            }
        }
        Ok(cat)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .binary_search_by(|o| o.as_str().cmp(name))
            .map_err(|_| Error::UnknownObject(name.to_string()))
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, f: usize) -> &Morphism {
        &self.morphisms[f]
    }

    pub fn morphism_index(&self, name: &str) -> Result<usize> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("unknown morphism {name:?}")))
    }

    /// Global ids of the basis of `hom(source, target)`.
    pub fn hom(&self, source: usize, target: usize) -> Range<usize> {
        self.hom[source * self.objects.len() + target].clone()
    }

    pub fn hom_dim(&self, source: usize, target: usize) -> usize {
        self.hom(source, target).len()
    }

    pub fn total_dim(&self) -> usize {
        self.morphisms.len()
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        let m = &self.morphisms[f];
        m.source == m.target && self.identity[m.source] == f
    }

    /// Local position of `f` inside its hom space.
    pub fn position(&self, f: usize) -> usize {
        let m = &self.morphisms[f];
        f - self.hom(m.source, m.target).start
    }

    pub fn basis_vec(&self, f: usize) -> SparseVec {
        SparseVec::unit(self.position(f), self.field)
    }

    /// `f∘g` for basis morphisms with `source(f) = target(g)`; `None` means zero.
    pub fn compose_basis(&self, f: usize, g: usize) -> Option<&SparseVec> {
        self.comp.get(&(f, g))
    }

    /// The stored composition table.
    pub fn composition_table(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.comp
    }

    /// `f∘g` for `f ∈ hom(y,z)` and `g ∈ hom(x,y)` in local coordinates.
    pub fn compose(&self, x: usize, y: usize, z: usize, f: &SparseVec, g: &SparseVec) -> SparseVec {
        let (fr, gr) = (self.hom(y, z), self.hom(x, y));
        let mut acc = SparseVec::new();
        for (i, a) in f.iter() {
            for (j, b) in g.iter() {
                if let Some(v) = self.comp.get(&(fr.start + i, gr.start + j)) {
                    acc.add_scaled(&(a * b), v);
                }
            }
        }
        acc
    }

    /// Readable form of a hom vector, e.g. `2*a + b`.
    pub fn describe(&self, source: usize, target: usize, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        let r = self.hom(source, target);
        let parts: Vec<String> = v
            .iter()
            .map(|(i, a)| {
                let name = &self.morphisms[r.start + i].name;
                if a.is_one() { name.clone() } else { format!("{a}*{name}") }
            })
            .collect();
        parts.join(" + ")
    }

    /// Checks identities and associativity on every basis element and triple.
    pub fn validate(&self) -> Validation {
        let mut report = Validation::new();
        for (f, m) in self.morphisms.iter().enumerate() {
            let unit = self.basis_vec(f);
            let left = self.comp.get(&(self.identity[m.target], f)).cloned().unwrap_or_default();
            if left != unit {
                report.fail(format!("identity law fails: 1*{} != {}", m.name, m.name));
            }
            let right = self.comp.get(&(f, self.identity[m.source])).cloned().unwrap_or_default();
            if right != unit {
                report.fail(format!("identity law fails: {}*1 != {}", m.name, m.name));
            }
        }
        let n = self.objects.len();
        for x in 0..n {
            for y in 0..n {
                for h in self.hom(x, y) {
                    let hv = self.basis_vec(h);
                    for z in 0..n {
                        for g in self.hom(y, z) {
                            let gv = self.basis_vec(g);
                            let gh = self.compose(x, y, z, &gv, &hv);
                            for w in 0..n {
                                for f in self.hom(z, w) {
                                    let fv = self.basis_vec(f);
                                    let lhs = self.compose(y, z, w, &fv, &gv);
                                    let lhs = self.compose(x, y, w, &lhs, &hv);
                                    let rhs = self.compose(x, z, w, &fv, &gh);
                                    if lhs != rhs {
                                        report.fail(format!(
                                            "associativity fails on ({}, {}, {}): {} != {}",
                                            self.morphisms[f].name,
                                            self.morphisms[g].name,
                                            self.morphisms[h].name,
                                            self.describe(x, w, &lhs),
                                            self.describe(x, w, &rhs)
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// Structure-constant equality, used to compare categories built two ways.
    pub fn same_structure(&self, other: &KCategory) -> bool {
        self.field == other.field
            && self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.comp == other.comp
    }
}

/// Builds a category from names, as found in a table spec file.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    field: FieldSpec,
    objects: Vec<String>,
    homs: Vec<(String, String, Vec<String>, Option<String>)>,
    comp: Vec<(String, String, Vec<(String, Scalar)>)>,
}

impl CategoryBuilder {
    pub fn new(field: FieldSpec) -> Self {
        CategoryBuilder { field, objects: Vec::new(), homs: Vec::new(), comp: Vec::new() }
    }

    pub fn object(&mut self, name: &str) -> &mut Self {
        self.objects.push(name.to_string());
        self
    }

    /// Basis of `hom(source, target)`. For endomorphisms the identity is
    /// `identity` if given, else the first listed element.
    pub fn hom(&mut self, source: &str, target: &str, basis: &[&str], identity: Option<&str>) -> &mut Self {
        self.homs.push((
            source.to_string(),
            target.to_string(),
            basis.iter().map(|s| s.to_string()).collect(),
            identity.map(|s| s.to_string()),
        ));
        self
    }

    /// Declares `left∘right = Σ coeff·name`.
    pub fn compose(&mut self, left: &str, right: &str, result: &[(&str, Scalar)]) -> &mut Self {
        self.comp.push((
            left.to_string(),
            right.to_string(),
            result.iter().map(|(n, c)| (n.to_string(), c.clone())).collect(),
        ));
        self
    }

    pub fn build(&self) -> Result<KCategory> {
        let index: BTreeMap<&str, usize> =
            self.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i)).collect();
        if index.len() != self.objects.len() {
            return Err(Error::InvalidInput("duplicate object names".to_string()));
        }
        let obj = |name: &str| index.get(name).copied().ok_or_else(|| Error::UnknownObject(name.to_string()));
        let mut parts = CategoryParts { objects: self.objects.clone(), ..Default::default() };
        let mut identities: Vec<Option<usize>> = alloc::vec![None; self.objects.len()];
        let mut names: BTreeMap<String, usize> = BTreeMap::new();
        let mut seen_pairs = BTreeMap::new();
        for (s, t, basis, identity) in &self.homs {
            let (si, ti) = (obj(s)?, obj(t)?);
            if seen_pairs.insert((si, ti), ()).is_some() {
                return Err(Error::InvalidInput(format!("hom({s}, {t}) listed twice")));
            }
            if si == ti && basis.is_empty() {
                return Err(Error::InvalidInput(format!("hom({s}, {s}) needs an identity")));
            }
            if si != ti && identity.is_some() {
                return Err(Error::InvalidInput(format!("hom({s}, {t}) is not an endomorphism space")));
            }
            for b in basis {
                let id = parts.morphisms.len();
                if names.insert(b.clone(), id).is_some() {
                    return Err(Error::InvalidInput(format!("duplicate morphism name {b:?}")));
                }
                parts.morphisms.push(Morphism { name: b.clone(), source: si, target: ti });
            }
            if si == ti {
                let id_name = identity.as_ref().unwrap_or(&basis[0]);
                let id = *names
                    .get(id_name)
                    .filter(|&&i| parts.morphisms[i].source == si && parts.morphisms[i].target == si)
                    .ok_or_else(|| Error::InvalidInput(format!("identity {id_name:?} is not in hom({s}, {s})")))?;
                identities[si] = Some(id);
            }
        }
        for (x, slot) in identities.iter_mut().enumerate() {
            if slot.is_none() {
                let name = format!("1_{}", self.objects[x]);
                let id = parts.morphisms.len();
                if names.insert(name.clone(), id).is_some() {
                    return Err(Error::InvalidInput(format!("duplicate morphism name {name:?}")));
                }
                parts.morphisms.push(Morphism { name, source: x, target: x });
                *slot = Some(id);
            }
        }
        parts.identities = identities.into_iter().map(Option::unwrap).collect();
        let mor = |name: &str| {
            names.get(name).copied().ok_or_else(|| Error::InvalidInput(format!("unknown morphism {name:?}")))
        };
        for (l, r, result) in &self.comp {
            let key = (mor(l)?, mor(r)?);
            let mut entries = Vec::new();
            for (name, c) in result {
                if c.field() != self.field {
                    return Err(Error::InvalidInput(format!("coefficient of {name:?} is over the wrong field")));
                }
                entries.push((mor(name)?, c.clone()));
            }
            if parts.comp.insert(key, SparseVec::from_entries(entries)).is_some() {
                return Err(Error::InvalidInput(format!("composite {l:?}*{r:?} listed twice")));
            }
        }
        KCategory::from_parts(self.field, parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn one_object() -> KCategory {
        CategoryBuilder::new(FieldSpec::Rationals).object("x").build().unwrap()
    }

    pub(crate) fn two_chain() -> KCategory {
        let q = FieldSpec::Rationals;
        let mut b = CategoryBuilder::new(q);
        b.object("x").object("y").hom("x", "y", &["a"], None);
        b.build().unwrap()
    }

    #[test]
    fn trivial_categories_validate() {
        assert!(one_object().validate().passed());
        let c = two_chain();
        assert!(c.validate().passed());
        assert_eq!(c.total_dim(), 3);
        assert_eq!(c.hom_dim(0, 1), 1);
        assert_eq!(c.hom_dim(1, 0), 0);
    }

    #[test]
    fn tampered_associativity_is_reported() {
        let q = FieldSpec::Rationals;
        let mut b = CategoryBuilder::new(q);
        b.object("x").hom("x", "x", &["1", "e"], Some("1"));
        b.compose("e", "e", &[("e", q.one())]);
        b.compose("e", "1", &[("e", q.from_i64(2))]);
        let c = b.build().unwrap();
        let report = c.validate();
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| f.contains("associativity") && f.contains("(e, 1, e)")));
    }

    #[test]
    fn objects_are_sorted() {
        let q = FieldSpec::Rationals;
        let mut b = CategoryBuilder::new(q);
        b.object("z").object("a").hom("z", "a", &["f"], None);
        let c = b.build().unwrap();
        assert_eq!(c.objects(), &["a".to_string(), "z".to_string()]);
        let f = c.morphism_index("f").unwrap();
        assert_eq!((c.morphism(f).source, c.morphism(f).target), (1, 0));
        assert!(c.is_identity(c.morphism_index("1_a").unwrap()));
    }
}
