//! Finite group actions on categories, smash products, gradings and the
//! Galois certificate comparing `D ⊗_C D` with `D ⊗ kG`.

mod galois;
mod graded;
mod smash;

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::kcat::KCategory;
use crate::linalg::{SparseMatrix, SparseVec, rank};
use crate::validation::Validation;

pub use galois::{GaloisCertificate, PairData, PivotOrder, PropertyReport, RlTerm, TensorQuotient, galois_check, galois_check_with, properties_check};
pub use graded::{Coinvariants, GradedCategory, StrongGrading, Witness, coinvariants, strongly_graded_check, strongly_graded_check_full};
pub use smash::{SmashProduct, smash_product};

/// The image of one group element under an action: an object permutation and,
/// for every basis morphism `f: x -> y`, its image in `hom(gx, gy)` (local coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionGenerator {
    pub element: usize,
    pub objects: Vec<usize>,
    pub morphisms: Vec<SparseVec>,
}

/// A group acting on a category by linear automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    objects: Vec<Vec<usize>>,
    morphisms: Vec<Vec<SparseVec>>,
}

impl GroupAction {
    /// Every element acts as the identity.
    pub fn trivial(c: &KCategory, group: FiniteGroup) -> Self {
        let n = group.order();
        let ids: Vec<SparseVec> = (0..c.total_dim()).map(|f| SparseVec::unit(c.position(f), c.field())).collect();
        GroupAction { objects: alloc::vec![(0..c.num_objects()).collect(); n], morphisms: alloc::vec![ids; n], group }
    }

    /// Raw data without any checks; see [`GroupAction::validate`].
    pub fn from_parts(group: FiniteGroup, objects: Vec<Vec<usize>>, morphisms: Vec<Vec<SparseVec>>) -> Self {
        GroupAction { group, objects, morphisms }
    }

    /// Extends generator images to the whole group. Fails if the generators
    /// do not generate the group or do not satisfy its relations.
    pub fn from_generators(c: &KCategory, group: FiniteGroup, generators: &[ActionGenerator]) -> Result<Self> {
        let n = group.order();
        for g in generators {
            if g.element >= n || g.objects.len() != c.num_objects() || g.morphisms.len() != c.total_dim() {
                return Err(Error::InvalidAction(format!("generator {} has the wrong shape", g.element)));
            }
        }
        let mut objects: Vec<Option<Vec<usize>>> = alloc::vec![None; n];
        let mut morphisms: Vec<Vec<SparseVec>> = alloc::vec![Vec::new(); n];
        objects[0] = Some((0..c.num_objects()).collect());
        morphisms[0] = (0..c.total_dim()).map(|f| SparseVec::unit(c.position(f), c.field())).collect();
        let mut queue = VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            for g in generators {
                let k = group.mul(h, g.element);
                let oh = objects[h].clone().expect("visited");
                let ok: Vec<usize> = g.objects.iter().map(|&x| oh[x]).collect();
                let mk: Vec<SparseVec> = (0..c.total_dim())
                    .map(|f| {
                        let m = c.morphism(f);
                        apply_vec(c, &morphisms[h], g.objects[m.source], g.objects[m.target], &g.morphisms[f])
                    })
                    .collect();
                match &objects[k] {
                    Some(existing) => {
                        if *existing != ok || morphisms[k] != mk {
                            return Err(Error::InvalidAction(format!(
                                "generators are inconsistent with the group law at {}",
                                group.name(k)
                            )));
                        }
                    }
                    None => {
                        objects[k] = Some(ok);
                        morphisms[k] = mk;
                        queue.push_back(k);
                    }
                }
            }
        }
        if let Some(missing) = objects.iter().position(Option::is_none) {
            return Err(Error::InvalidAction(format!("generators do not reach {}", group.name(missing))));
        }
        Ok(GroupAction { group, objects: objects.into_iter().map(Option::unwrap).collect(), morphisms })
    }

    /// For categories whose hom spaces have dimension at most one: extends
    /// object permutations (per generator) by sending each basis morphism to
    /// the basis morphism between the image objects.
    pub fn thin(c: &KCategory, group: FiniteGroup, generators: &[(usize, Vec<usize>)]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|(element, perm)| thin_generator(c, *element, perm))
            .collect::<Result<Vec<_>>>()?;
        let a = Self::from_generators(c, group, &gens)?;
        let v = a.validate(c);
        if v.passed() { Ok(a) } else { Err(Error::InvalidAction(v.failures.join("; "))) }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn object(&self, g: usize, x: usize) -> usize {
        self.objects[g][x]
    }

    pub fn object_map(&self, g: usize) -> &[usize] {
        &self.objects[g]
    }

    /// `g(f)` in local coordinates of `hom(g·source, g·target)`.
    pub fn morphism(&self, g: usize, f: usize) -> &SparseVec {
        &self.morphisms[g][f]
    }

    /// `g(v)` for `v` in local coordinates of `hom(x, y)`.
    pub fn apply(&self, c: &KCategory, g: usize, x: usize, y: usize, v: &SparseVec) -> SparseVec {
        apply_vec(c, &self.morphisms[g], x, y, v)
    }

    pub fn is_trivial(&self) -> bool {
        self.objects.iter().all(|o| o.iter().enumerate().all(|(i, &x)| i == x))
            && self.morphisms.iter().all(|ms| ms == &self.morphisms[0])
    }

    /// The action restricted to the subgroup on `elements` (see [`FiniteGroup::subgroup`]).
    pub fn restrict(&self, elements: &[usize]) -> Result<(GroupAction, Vec<usize>)> {
        let (sub, emb) = self.group.subgroup(elements)?;
        let objects = emb.iter().map(|&g| self.objects[g].clone()).collect();
        let morphisms = emb.iter().map(|&g| self.morphisms[g].clone()).collect();
        Ok((GroupAction { group: sub, objects, morphisms }, emb))
    }

    /// Checks bijectivity, invertibility, functoriality, identities and the group law.
    pub fn validate(&self, c: &KCategory) -> Validation {
        let mut v = Validation::new();
        let g = &self.group;
        let n = c.num_objects();
        if self.objects.len() != g.order() || self.morphisms.len() != g.order() {
            v.fail("action data does not cover every group element".to_string());
            return v;
        }
        for s in 0..g.order() {
            let perm = &self.objects[s];
            let mut seen = alloc::vec![false; n];
            if perm.len() != n || perm.iter().any(|&x| x >= n || core::mem::replace(&mut seen[x], true)) {
                v.fail(format!("{} does not permute the objects", g.name(s)));
                continue;
            }
            if self.morphisms[s].len() != c.total_dim() {
                v.fail(format!("{} does not give an image for every morphism", g.name(s)));
                continue;
            }
            for x in 0..n {
                let id = &self.morphisms[s][c.identity(x)];
                if *id != SparseVec::unit(c.position(c.identity(perm[x])), c.field()) {
                    v.fail(format!("{} does not send the identity of {} to an identity", g.name(s), c.object_name(x)));
                }
                for y in 0..n {
                    let r = c.hom(x, y);
                    if c.hom_dim(perm[x], perm[y]) != r.len() {
                        v.fail(format!("{} changes the dimension of hom({}, {})", g.name(s), c.object_name(x), c.object_name(y)));
                        continue;
                    }
                    let cols: Vec<SparseVec> = r.clone().map(|f| self.morphisms[s][f].clone()).collect();
                    let m = SparseMatrix::from_columns(c.field(), r.len(), &cols);
                    if rank(&m) != r.len() {
                        v.fail(format!("{} is not invertible on hom({}, {})", g.name(s), c.object_name(x), c.object_name(y)));
                    }
                }
            }
            for (&(f, h), comp) in c.composition_table() {
                let (mf, mh) = (c.morphism(f), c.morphism(h));
                let lhs = self.apply(c, s, mh.source, mf.target, comp);
                let (x, y, z) = (perm[mh.source], perm[mh.target], perm[mf.target]);
                let rhs = c.compose(x, y, z, &self.morphisms[s][f], &self.morphisms[s][h]);
                if lhs != rhs {
                    v.fail(format!("{} is not functorial on ({}, {})", g.name(s), mf.name, mh.name));
                }
            }
        }
        if !v.passed() {
            return v;
        }
        for x in 0..n {
            if self.objects[0][x] != x {
                v.fail("the unit does not act trivially on objects".to_string());
                break;
            }
        }
        for f in 0..c.total_dim() {
            if self.morphisms[0][f] != SparseVec::unit(c.position(f), c.field()) {
                v.fail(format!("the unit moves {}", c.morphism(f).name));
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                let ab = g.mul(a, b);
                let composed: Vec<usize> = self.objects[b].iter().map(|&x| self.objects[a][x]).collect();
                let mut ok = composed == self.objects[ab];
                if ok {
                    for f in 0..c.total_dim() {
                        let m = c.morphism(f);
                        let (bx, by) = (self.objects[b][m.source], self.objects[b][m.target]);
                        if self.apply(c, a, bx, by, &self.morphisms[b][f]) != self.morphisms[ab][f] {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    v.fail(format!("action of {} then {} differs from {}", g.name(b), g.name(a), g.name(ab)));
                }
            }
        }
        v
    }
}

fn apply_vec(c: &KCategory, morphisms: &[SparseVec], x: usize, y: usize, v: &SparseVec) -> SparseVec {
    let start = c.hom(x, y).start;
    let mut out = SparseVec::new();
    for (pos, a) in v.iter() {
        out.add_scaled(a, &morphisms[start + pos]);
    }
    out
}

fn thin_generator(c: &KCategory, element: usize, perm: &[usize]) -> Result<ActionGenerator> {
    if perm.len() != c.num_objects() {
        return Err(Error::InvalidAction("object permutation has the wrong length".to_string()));
    }
    let mut morphisms = Vec::with_capacity(c.total_dim());
    for f in 0..c.total_dim() {
        let m = c.morphism(f);
        let (x, y) = (perm[m.source], perm[m.target]);
        if c.hom_dim(m.source, m.target) > 1 || c.hom_dim(x, y) != 1 {
            return Err(Error::InvalidAction(format!("{} has no unique image", m.name)));
        }
        morphisms.push(SparseVec::unit(0, c.field()));
    }
    Ok(ActionGenerator { element, objects: perm.to_vec(), morphisms })
}

fn perm_by_names<F: Fn(&str) -> String>(c: &KCategory, rename: F) -> Result<Vec<usize>> {
    (0..c.num_objects()).map(|x| c.object_index(&rename(c.object_name(x)))).collect()
}

fn split_node(name: &str) -> Option<(usize, usize)> {
    let (l, t) = name.split_once('.')?;
    Some((l.parse().ok()?, t.parse().ok()?))
}

fn node(l: usize, t: usize) -> String {
    format!("{l:02}.{t:02}")
}

/// `C_n` rotating every crown row, `(l, t) -> (l, t+1 mod n)`. The crown must have no partial row.
pub fn crown_rotation(c: &KCategory, n: usize) -> Result<GroupAction> {
    let rot = crown_map(c, |l, t| (l, (t + 1) % n))?;
    GroupAction::thin(c, FiniteGroup::cyclic(n), &[(1, rot)])
}

/// The dihedral group of order `2n` on a crown: rotation and `(l, t) -> (l, l - t mod n)`.
pub fn crown_dihedral(c: &KCategory, n: usize) -> Result<GroupAction> {
    let rot = crown_map(c, |l, t| (l, (t + 1) % n))?;
    let refl = crown_map(c, |l, t| (l, (l % n + n - t) % n))?;
    GroupAction::thin(c, FiniteGroup::dihedral(n), &[(1, rot), (n, refl)])
}

fn crown_map<F: Fn(usize, usize) -> (usize, usize)>(c: &KCategory, f: F) -> Result<Vec<usize>> {
    perm_by_names(c, |name| match split_node(name) {
        Some((l, t)) => {
            let (l2, t2) = f(l, t);
            node(l2, t2)
        }
        None => String::from(name),
    })
}

/// `S_n` permuting the positions of every layer of a layered poset simultaneously.
pub fn layer_permutations(c: &KCategory, n: usize) -> Result<GroupAction> {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    let (group, perms) = FiniteGroup::from_permutations(n, &gens)?;
    let mut generators = Vec::new();
    for (k, p) in perms.iter().enumerate().skip(1) {
        let objs = perm_by_names(c, |name| match split_node(name) {
            Some((l, t)) if t < n => node(l, p[t]),
            _ => String::from(name),
        })?;
        generators.push((k, objs));
    }
    GroupAction::thin(c, group, &generators)
}

/// `C_2` exchanging two objects with isomorphic surroundings.
pub fn swap(c: &KCategory, a: &str, b: &str) -> Result<GroupAction> {
    let perm = perm_by_names(c, |name| {
        if name == a {
            String::from(b)
        } else if name == b {
            String::from(a)
        } else {
            String::from(name)
        }
    })?;
    GroupAction::thin(c, FiniteGroup::cyclic(2), &[(1, perm)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::kcat::corpus::Family;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn validation_examples() {
        let c = Family::Chain { n: 3 }.generate(q()).unwrap();
        assert!(GroupAction::trivial(&c, FiniteGroup::symmetric(3)).validate(&c).passed());
        let anti = Family::Antichain { n: 2 }.generate(q()).unwrap();
        let s = swap(&anti, "00", "01").unwrap();
        assert!(s.validate(&anti).passed());
        assert!(!s.is_trivial());
        // An order-two group acting through an order-three rotation.
        let crown = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q()).unwrap();
        let rot = crown_rotation(&crown, 3).unwrap();
        let bad = GroupAction::from_parts(
            FiniteGroup::cyclic(2),
            alloc::vec![rot.object_map(0).to_vec(), rot.object_map(1).to_vec()],
            alloc::vec![(0..crown.total_dim()).map(|f| rot.morphism(0, f).clone()).collect(), (0..crown.total_dim()).map(|f| rot.morphism(1, f).clone()).collect()],
        );
        let report = bad.validate(&crown);
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| f.contains("differs")));
    }

    #[test]
    fn standard_instances() {
        let crown = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q()).unwrap();
        assert!(crown_dihedral(&crown, 3).unwrap().validate(&crown).passed());
        let rad = Family::CrownRadSq { rows: 2, n: 3, extra: 0 }.generate(q()).unwrap();
        assert!(crown_rotation(&rad, 3).unwrap().validate(&rad).passed());
        let u = Family::ULayered { n: 3, m: 1 }.generate(q()).unwrap();
        let s3 = layer_permutations(&u, 3).unwrap();
        assert_eq!(s3.group().order(), 6);
        assert!(s3.validate(&u).passed());
        let chain = Family::Chain { n: 2 }.generate(q()).unwrap();
        assert!(swap(&chain, "00", "01").is_err());
    }

    #[test]
    fn inconsistent_generators_are_rejected() {
        let anti = Family::Antichain { n: 3 }.generate(q()).unwrap();
        // a 3-cycle offered as the generator of C_2
        let r = GroupAction::thin(&anti, FiniteGroup::cyclic(2), &[(1, alloc::vec![1, 2, 0])]);
        assert!(matches!(r, Err(Error::InvalidAction(_))));
    }
}
