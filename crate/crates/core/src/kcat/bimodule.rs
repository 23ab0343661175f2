use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::ops::Range;

use super::{Inclusion, KCategory};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::SparseVec;
use crate::validation::Validation;

/// A basis element of `M(source -> target)`, i.e. of the component that a
/// morphism `source -> target` would live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A bimodule over a [`KCategory`] by structure constants. For `m` in
/// `M(x -> y)`, a morphism `f: y -> z` acts on the left and `g: w -> x` on
/// the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bimodule {
    field: FieldSpec,
    num_objects: usize,
    elements: Vec<Element>,
    space: Vec<Range<usize>>,
    left: BTreeMap<(usize, usize), SparseVec>,
    right: BTreeMap<(usize, usize), SparseVec>,
}

/// Raw bimodule data; action values are over global element ids.
#[derive(Clone, Debug, Default)]
pub struct BimoduleParts {
    pub elements: Vec<Element>,
    /// `(f, m) -> f·m`
    pub left: BTreeMap<(usize, usize), SparseVec>,
    /// `(m, g) -> m·g`
    pub right: BTreeMap<(usize, usize), SparseVec>,
}

impl Bimodule {
    /// Canonicalizes `parts` over `c`, filling in identity actions that were
    /// not given explicitly.
    pub fn from_parts(c: &KCategory, parts: BimoduleParts) -> Result<Self> {
        let n = c.num_objects();
        let BimoduleParts { elements, left, right } = parts;
        for e in &elements {
            if e.source >= n || e.target >= n {
                return Err(Error::InvalidInput(format!("element {:?} has an unknown endpoint", e.name)));
            }
        }
        let mut order: Vec<usize> = (0..elements.len()).collect();
        order.sort_by_key(|&i| (elements[i].source, elements[i].target, i));
        let mut new = alloc::vec![0; elements.len()];
        for (k, &old) in order.iter().enumerate() {
            new[old] = k;
        }
        let elements: Vec<Element> = order.iter().map(|&i| elements[i].clone()).collect();
        let mut space = alloc::vec![0..0; n * n];
        let mut start = 0;
        while start < elements.len() {
            let (s, t) = (elements[start].source, elements[start].target);
            let mut end = start;
            while end < elements.len() && elements[end].source == s && elements[end].target == t {
                end += 1;
            }
            space[s * n + t] = start..end;
            start = end;
        }
        let mut m = Bimodule {
            field: c.field(),
            num_objects: n,
            elements,
            space,
            left: BTreeMap::new(),
            right: BTreeMap::new(),
        };
        let localize = |m: &Bimodule, s: usize, t: usize, v: &SparseVec, what: &str| -> Result<SparseVec> {
            let r = m.space(s, t);
            let mut out = Vec::new();
            for (id, a) in v.iter() {
                let id = new[id];
                if !r.contains(&id) {
                    return Err(Error::InvalidInput(format!(
                        "{what} has a term {:?} in the wrong space",
                        m.elements[id].name
                    )));
                }
                out.push((id - r.start, a.clone()));
            }
            Ok(SparseVec::from_entries(out))
        };
        let mut given_left = BTreeSet::new();
        for ((f, e), v) in left {
            let e = new[e];
            let (mf, me) = (c.morphism(f), &m.elements[e]);
            if mf.source != me.target {
                return Err(Error::InvalidInput(format!("left action {:?}.{:?} is not composable", mf.name, me.name)));
            }
            let local = localize(&m, me.source, mf.target, &v, "left action")?;
            given_left.insert((f, e));
            if !local.is_zero() {
                m.left.insert((f, e), local);
            }
        }
        let mut given_right = BTreeSet::new();
        for ((e, g), v) in right {
            let e = new[e];
            let (me, mg) = (&m.elements[e], c.morphism(g));
            if mg.target != me.source {
                return Err(Error::InvalidInput(format!("right action {:?}.{:?} is not composable", me.name, mg.name)));
            }
            let local = localize(&m, mg.source, me.target, &v, "right action")?;
            given_right.insert((e, g));
            if !local.is_zero() {
                m.right.insert((e, g), local);
            }
        }
        for e in 0..m.elements.len() {
            let (s, t) = (m.elements[e].source, m.elements[e].target);
            let unit = m.basis_vec(e);
            let (idt, ids) = (c.identity(t), c.identity(s));
            if !given_left.contains(&(idt, e)) {
                m.left.insert((idt, e), unit.clone());
            }
            if !given_right.contains(&(e, ids)) {
                m.right.insert((e, ids), unit);
            }
        }
        Ok(m)
    }

    /// The category acting on itself by composition.
    pub fn regular(c: &KCategory) -> Self {
        let elements = c
            .morphisms()
            .iter()
            .map(|m| Element { name: m.name.clone(), source: m.source, target: m.target })
            .collect();
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (&(f, g), v) in c.composition_table() {
            let mg = c.morphism(g);
            let start = c.hom(mg.source, c.morphism(f).target).start;
            let global = v.map_indices(|i| i + start);
            left.insert((f, g), global.clone());
            right.insert((f, g), global);
        }
        Self::from_parts(c, BimoduleParts { elements, left, right }).expect("regular bimodule is well formed")
    }

    pub fn zero(c: &KCategory) -> Self {
        Self::from_parts(c, BimoduleParts::default()).expect("zero bimodule is well formed")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_objects(&self) -> usize {
        self.num_objects
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, e: usize) -> &Element {
        &self.elements[e]
    }

    pub fn element_index(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown bimodule element {name:?}")))
    }

    /// Global ids of the basis of `M(source -> target)`.
    pub fn space(&self, source: usize, target: usize) -> Range<usize> {
        self.space[source * self.num_objects + target].clone()
    }

    pub fn space_dim(&self, source: usize, target: usize) -> usize {
        self.space(source, target).len()
    }

    pub fn total_dim(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, e: usize) -> usize {
        let el = &self.elements[e];
        e - self.space(el.source, el.target).start
    }

    pub fn basis_vec(&self, e: usize) -> SparseVec {
        SparseVec::unit(self.position(e), self.field)
    }

    pub fn left_basis(&self, f: usize, e: usize) -> Option<&SparseVec> {
        self.left.get(&(f, e))
    }

    pub fn right_basis(&self, e: usize, g: usize) -> Option<&SparseVec> {
        self.right.get(&(e, g))
    }

    pub fn left_table(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.left
    }

    pub fn right_table(&self) -> &BTreeMap<(usize, usize), SparseVec> {
        &self.right
    }

    /// `f·m` for `f ∈ hom(y,z)`, `m ∈ M(x -> y)`, local coordinates.
    pub fn act_left(&self, c: &KCategory, x: usize, y: usize, z: usize, f: &SparseVec, m: &SparseVec) -> SparseVec {
        let (fr, mr) = (c.hom(y, z), self.space(x, y));
        let mut acc = SparseVec::new();
        for (i, a) in f.iter() {
            for (j, b) in m.iter() {
                if let Some(v) = self.left.get(&(fr.start + i, mr.start + j)) {
                    acc.add_scaled(&(a * b), v);
                }
            }
        }
        acc
    }

    /// `m·g` for `m ∈ M(x -> y)`, `g ∈ hom(w,x)`, local coordinates.
    pub fn act_right(&self, c: &KCategory, w: usize, x: usize, y: usize, m: &SparseVec, g: &SparseVec) -> SparseVec {
        let (mr, gr) = (self.space(x, y), c.hom(w, x));
        let mut acc = SparseVec::new();
        for (i, a) in m.iter() {
            for (j, b) in g.iter() {
                if let Some(v) = self.right.get(&(mr.start + i, gr.start + j)) {
                    acc.add_scaled(&(a * b), v);
                }
            }
        }
        acc
    }

    /// Checks unit, associativity and compatibility of the two actions.
    pub fn validate(&self, c: &KCategory) -> Validation {
        let mut report = Validation::new();
        if c.num_objects() != self.num_objects || c.field() != self.field {
            report.fail("bimodule and category disagree on objects or field".to_string());
            return report;
        }
        let n = self.num_objects;
        for (e, el) in self.elements.iter().enumerate() {
            let unit = self.basis_vec(e);
            let (x, y) = (el.source, el.target);
            if self.act_left(c, x, y, y, &c.basis_vec(c.identity(y)), &unit) != unit {
                report.fail(format!("identity does not act trivially on the left of {}", el.name));
            }
            if self.act_right(c, x, x, y, &unit, &c.basis_vec(c.identity(x))) != unit {
                report.fail(format!("identity does not act trivially on the right of {}", el.name));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for e in self.space(x, y) {
                    let mv = self.basis_vec(e);
                    let name = &self.elements[e].name;
                    for z in 0..n {
                        for g in c.hom(y, z) {
                            let gv = c.basis_vec(g);
                            let gm = self.act_left(c, x, y, z, &gv, &mv);
                            for w in 0..n {
                                for f in c.hom(z, w) {
                                    let fv = c.basis_vec(f);
                                    let lhs = self.act_left(c, x, z, w, &fv, &gm);
                                    let fg = c.compose(y, z, w, &fv, &gv);
                                    let rhs = self.act_left(c, x, y, w, &fg, &mv);
                                    if lhs != rhs {
                                        report.fail(format!(
                                            "left action not associative on ({}, {}, {name})",
                                            c.morphism(f).name,
                                            c.morphism(g).name
                                        ));
                                    }
                                }
                            }
                        }
                    }
                    for v in 0..n {
                        for g in c.hom(v, x) {
                            let gv = c.basis_vec(g);
                            let mg = self.act_right(c, v, x, y, &mv, &gv);
                            for u in 0..n {
                                for h in c.hom(u, v) {
                                    let hv = c.basis_vec(h);
                                    let lhs = self.act_right(c, u, v, y, &mg, &hv);
                                    let gh = c.compose(u, v, x, &gv, &hv);
                                    let rhs = self.act_right(c, u, x, y, &mv, &gh);
                                    if lhs != rhs {
                                        report.fail(format!(
                                            "right action not associative on ({name}, {}, {})",
                                            c.morphism(g).name,
                                            c.morphism(h).name
                                        ));
                                    }
                                }
                            }
                            for z in 0..n {
                                for f in c.hom(y, z) {
                                    let fv = c.basis_vec(f);
                                    let lhs = self.act_left(c, v, y, z, &fv, &mg);
                                    let fm = self.act_left(c, x, y, z, &fv, &mv);
                                    let rhs = self.act_right(c, v, x, z, &fm, &gv);
                                    if lhs != rhs {
                                        report.fail(format!(
                                            "actions do not commute on ({}, {name}, {})",
                                            c.morphism(f).name,
                                            c.morphism(g).name
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

    /// Restriction along the inclusion of a full subcategory `sub`.
    pub fn restrict(&self, sub: &KCategory, inclusion: &Inclusion) -> Bimodule {
        let mut parent_to_sub = alloc::vec![usize::MAX; self.num_objects];
        for (s, &p) in inclusion.object_map.iter().enumerate() {
            parent_to_sub[p] = s;
        }
        let mut kept = Vec::new();
        let mut new_id = BTreeMap::new();
        for (e, el) in self.elements.iter().enumerate() {
            let (s, t) = (parent_to_sub[el.source], parent_to_sub[el.target]);
            if s != usize::MAX && t != usize::MAX {
                new_id.insert(e, kept.len());
                kept.push(Element { name: el.name.clone(), source: s, target: t });
            }
        }
        let to_global = |v: &SparseVec, range: Range<usize>| -> SparseVec {
            v.map_indices(|i| new_id[&(range.start + i)])
        };
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for (sf, &pf) in inclusion.morphism_map.iter().enumerate() {
            let sm = sub.morphism(sf);
            let (a, b) = (inclusion.object_map[sm.source], inclusion.object_map[sm.target]);
            for (&e, &ne) in &new_id {
                let el = &self.elements[e];
                if el.target == a {
                    let v = self.left.get(&(pf, e)).map_or_else(SparseVec::new, |v| to_global(v, self.space(el.source, b)));
                    left.insert((sf, ne), v);
                }
                if el.source == b {
                    let v = self.right.get(&(e, pf)).map_or_else(SparseVec::new, |v| to_global(v, self.space(a, el.target)));
                    right.insert((ne, sf), v);
                }
            }
        }
        Bimodule::from_parts(sub, BimoduleParts { elements: kept, left, right })
            .expect("restriction of a bimodule is well formed")
    }
}

/// Builds a bimodule from names, as found in a spec file.
#[derive(Clone, Debug, Default)]
pub struct BimoduleBuilder {
    elements: Vec<(String, String, String)>,
    left: Vec<(String, String, Vec<(String, Scalar)>)>,
    right: Vec<(String, String, Vec<(String, Scalar)>)>,
}

impl BimoduleBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn element(&mut self, name: &str, source: &str, target: &str) -> &mut Self {
        self.elements.push((name.to_string(), source.to_string(), target.to_string()));
        self
    }

    /// Declares `morphism·element = Σ coeff·name`.
    pub fn left(&mut self, morphism: &str, element: &str, result: &[(&str, Scalar)]) -> &mut Self {
        self.left.push((
            morphism.to_string(),
            element.to_string(),
            result.iter().map(|(n, c)| (n.to_string(), c.clone())).collect(),
        ));
        self
    }

    /// Declares `element·morphism = Σ coeff·name`.
    pub fn right(&mut self, element: &str, morphism: &str, result: &[(&str, Scalar)]) -> &mut Self {
        self.right.push((
            element.to_string(),
            morphism.to_string(),
            result.iter().map(|(n, c)| (n.to_string(), c.clone())).collect(),
        ));
        self
    }

    pub fn build(&self, c: &KCategory) -> Result<Bimodule> {
        let mut parts = BimoduleParts::default();
        let mut names = BTreeMap::new();
        for (name, s, t) in &self.elements {
            if names.insert(name.clone(), parts.elements.len()).is_some() {
                return Err(Error::InvalidInput(format!("duplicate element name {name:?}")));
            }
            parts.elements.push(Element { name: name.clone(), source: c.object_index(s)?, target: c.object_index(t)? });
        }
        let el = |name: &str| {
            names.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string()))
        };
        let vec = |result: &[(String, Scalar)]| -> Result<SparseVec> {
            let mut entries = Vec::new();
            for (name, coeff) in result {
                if coeff.field() != c.field() {
                    return Err(Error::InvalidInput(format!("coefficient of {name:?} is over the wrong field")));
                }
                entries.push((el(name)?, coeff.clone()));
            }
            Ok(SparseVec::from_entries(entries))
        };
        for (f, e, result) in &self.left {
            if parts.left.insert((c.morphism_index(f)?, el(e)?), vec(result)?).is_some() {
                return Err(Error::InvalidInput(format!("left action {f:?}.{e:?} listed twice")));
            }
        }
        for (e, g, result) in &self.right {
            if parts.right.insert((el(e)?, c.morphism_index(g)?), vec(result)?).is_some() {
                return Err(Error::InvalidInput(format!("right action {e:?}.{g:?} listed twice")));
            }
        }
        Bimodule::from_parts(c, parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kcat::corpus::Family;
    use crate::kcat::{full_subcategory, CategoryBuilder};

    #[test]
    fn regular_bimodule_dims() {
        let q = FieldSpec::Rationals;
        let one = CategoryBuilder::new(q).object("x").build().unwrap();
        assert_eq!(Bimodule::regular(&one).total_dim(), 1);
        let c = Family::Chain { n: 2 }.generate(q).unwrap();
        let m = Bimodule::regular(&c);
        let dims: Vec<usize> = [(0, 0), (0, 1), (1, 0), (1, 1)].iter().map(|&(s, t)| m.space_dim(s, t)).collect();
        assert_eq!(dims, [1, 1, 0, 1]);
        assert!(m.validate(&c).passed());
        let crown = Family::CrownIncidence { rows: 1, n: 3, extra: 0 }.generate(q).unwrap();
        let m = Bimodule::regular(&crown);
        for s in 0..3 {
            for t in 0..3 {
                assert_eq!(m.space_dim(s, t), crown.hom_dim(s, t));
            }
        }
    }

    #[test]
    fn restriction_matches_regular_of_subcategory() {
        let q = FieldSpec::Rationals;
        let c = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q).unwrap();
        let (sub, inc) = full_subcategory(&c, &["00.00", "00.01", "01.01"]).unwrap();
        let restricted = Bimodule::regular(&c).restrict(&sub, &inc);
        assert_eq!(restricted, Bimodule::regular(&sub));
        assert!(restricted.validate(&sub).passed());
    }

    #[test]
    fn broken_action_is_reported() {
        let q = FieldSpec::Rationals;
        let c = Family::Chain { n: 2 }.generate(q).unwrap();
        let mut b = BimoduleBuilder::new();
        b.element("m", "00", "01").left("1_01", "m", &[("m", q.from_i64(2))]);
        let m = b.build(&c).unwrap();
        assert!(!m.validate(&c).passed());
    }
}
