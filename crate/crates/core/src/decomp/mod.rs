//! Equivariant bimodules, `M # kG` and its components, group cohomology,
//! actions on Hochschild cohomology and the dimension checks built on them.

mod actions;
mod checks;
mod gmodule;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::gsmash::{GroupAction, SmashProduct};
use crate::kcat::{Bimodule, BimoduleParts, Element, KCategory};
use crate::linalg::SparseVec;
use crate::validation::Validation;

pub use actions::{H0Action, conjugate_cochain, conjugation_action, h0_action, restrict_to_coinvariants};
pub use checks::{
    ComparisonReport, DegreeComparison, E2Page, PhiReport, ShapiroReport, bound_check, collapse_check, decomposition_check,
    e2_page, homology_decomposition_check, phi_check, shapiro_check, shapiro_components,
};
pub use gmodule::{GModule, Side, coinduce, group_cohomology};

/// A bimodule `M` over `C` with maps `τ_g: M(x -> y) -> M(gx -> gy)` compatible
/// with the action of `G` on `C`.
#[derive(Clone, Debug)]
pub struct EquivariantBimodule {
    pub bimodule: Bimodule,
    pub action: GroupAction,
    /// `tau[g][e]`: `τ_g(e)` in local coordinates of its target space.
    tau: Vec<Vec<SparseVec>>,
}

impl EquivariantBimodule {
    pub fn new(c: &KCategory, bimodule: Bimodule, action: GroupAction, tau: Vec<Vec<SparseVec>>) -> Result<Self> {
        let m = EquivariantBimodule { bimodule, action, tau };
        let v = m.validate(c);
        if v.passed() { Ok(m) } else { Err(Error::InvalidAction(v.failures.join("; "))) }
    }

    /// `C` acting on itself, with `τ_g` the action on morphisms.
    pub fn regular(c: &KCategory, action: &GroupAction) -> Self {
        let g = action.group();
        let tau = (0..g.order()).map(|s| (0..c.total_dim()).map(|f| action.morphism(s, f).clone()).collect()).collect();
        EquivariantBimodule { bimodule: Bimodule::regular(c), action: action.clone(), tau }
    }

    /// Trivially acted on when the action on `C` is trivial.
    pub fn with_trivial_tau(c: &KCategory, bimodule: Bimodule, action: GroupAction) -> Result<Self> {
        let tau = alloc::vec![(0..bimodule.total_dim()).map(|e| bimodule.basis_vec(e)).collect(); action.group().order()];
        Self::new(c, bimodule, action, tau)
    }

    /// Extends `τ` given on generators, `(element, images per basis element)`,
    /// by `τ_{hg} = τ_h τ_g`.
    pub fn from_generators(
        c: &KCategory,
        bimodule: Bimodule,
        action: GroupAction,
        generators: &[(usize, Vec<SparseVec>)],
    ) -> Result<Self> {
        let group = action.group().clone();
        let n = group.order();
        let dim = bimodule.total_dim();
        if generators.iter().any(|(g, t)| *g >= n || t.len() != dim) {
            return Err(Error::InvalidAction("τ generator has the wrong shape".to_string()));
        }
        let mut tau: Vec<Option<Vec<SparseVec>>> = alloc::vec![None; n];
        tau[0] = Some((0..dim).map(|e| bimodule.basis_vec(e)).collect());
        let mut queue = alloc::collections::VecDeque::from([0usize]);
        while let Some(h) = queue.pop_front() {
            let th = tau[h].clone().expect("visited");
            for (g, tg) in generators {
                let k = group.mul(h, *g);
                let images: Vec<SparseVec> = (0..dim)
                    .map(|e| {
                        let el = bimodule.element(e);
                        apply_tau(&bimodule, &th, action.object(*g, el.source), action.object(*g, el.target), &tg[e])
                    })
                    .collect();
                match &tau[k] {
                    Some(existing) if *existing != images => {
                        return Err(Error::InvalidAction(format!("τ generators are inconsistent at {}", group.name(k))));
                    }
                    Some(_) => {}
                    None => {
                        tau[k] = Some(images);
                        queue.push_back(k);
                    }
                }
            }
        }
        if let Some(missing) = tau.iter().position(Option::is_none) {
            return Err(Error::InvalidAction(format!("τ generators do not reach {}", group.name(missing))));
        }
        Self::new(c, bimodule, action, tau.into_iter().map(Option::unwrap).collect())
    }

    pub fn tau(&self, g: usize, e: usize) -> &SparseVec {
        &self.tau[g][e]
    }

    /// `τ_g(v)` for `v` in local coordinates of `M(x -> y)`.
    pub fn apply(&self, g: usize, x: usize, y: usize, v: &SparseVec) -> SparseVec {
        apply_tau(&self.bimodule, &self.tau[g], x, y, v)
    }

    /// The structure restricted to the subgroup on `elements`.
    pub fn restrict_group(&self, elements: &[usize]) -> Result<EquivariantBimodule> {
        let (action, emb) = self.action.restrict(elements)?;
        let tau = emb.iter().map(|&g| self.tau[g].clone()).collect();
        Ok(EquivariantBimodule { bimodule: self.bimodule.clone(), action, tau })
    }

    /// Checks `τ_1 = id`, `τ_g τ_h = τ_{gh}` and `τ_g(f·m·f') = g(f)·τ_g(m)·g(f')`.
    pub fn validate(&self, c: &KCategory) -> Validation {
        let mut v = Validation::new();
        let m = &self.bimodule;
        let g = self.action.group();
        let name = |e: usize| m.element(e).name.clone();
        if self.tau.len() != g.order() || self.tau.iter().any(|t| t.len() != m.total_dim()) {
            v.fail("τ data does not cover every group element and basis element".to_string());
            return v;
        }
        for e in 0..m.total_dim() {
            if self.tau[0][e] != m.basis_vec(e) {
                v.fail(format!("τ of the unit moves {}", name(e)));
            }
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                for e in 0..m.total_dim() {
                    let el = m.element(e);
                    let (bx, by) = (self.action.object(b, el.source), self.action.object(b, el.target));
                    let lhs = self.apply(a, bx, by, &self.tau[b][e]);
                    if lhs != self.tau[g.mul(a, b)][e] {
                        v.fail(format!("τ of {} then {} differs from {} on {}", g.name(b), g.name(a), g.name(g.mul(a, b)), name(e)));
                    }
                }
            }
        }
        for s in 0..g.order() {
            let act = |x: usize| self.action.object(s, x);
            for e in 0..m.total_dim() {
                let el = m.element(e);
                let (x, y) = (el.source, el.target);
                let te = &self.tau[s][e];
                for z in 0..c.num_objects() {
                    for f in c.hom(y, z) {
                        let lhs = self.apply(s, x, z, &m.act_left(c, x, y, z, &c.basis_vec(f), &m.basis_vec(e)));
                        let rhs = m.act_left(c, act(x), act(y), act(z), self.action.morphism(s, f), te);
                        if lhs != rhs {
                            v.fail(format!("τ_{} is not left linear at {}·{}", g.name(s), c.morphism(f).name, name(e)));
                        }
                    }
                    for f in c.hom(z, x) {
                        let lhs = self.apply(s, z, y, &m.act_right(c, z, x, y, &m.basis_vec(e), &c.basis_vec(f)));
                        let rhs = m.act_right(c, act(z), act(x), act(y), te, self.action.morphism(s, f));
                        if lhs != rhs {
                            v.fail(format!("τ_{} is not right linear at {}·{}", g.name(s), name(e), c.morphism(f).name));
                        }
                    }
                }
            }
        }
        v
    }
}

fn apply_tau(m: &Bimodule, tau: &[SparseVec], x: usize, y: usize, v: &SparseVec) -> SparseVec {
    let start = m.space(x, y).start;
    let mut out = SparseVec::new();
    for (i, a) in v.iter() {
        out.add_scaled(a, &tau[start + i]);
    }
    out
}

/// A `D`-bimodule `N` restricted to `C`, with `τ_g(n) = (id, g)·n·(id, g^{-1})`.
pub fn transport(sp: &SmashProduct, c: &KCategory, n: &Bimodule) -> EquivariantBimodule {
    let d = &sp.category;
    let g = sp.action.group();
    let restricted = n.restrict(c, &sp.inclusion);
    let mut tau = Vec::with_capacity(g.order());
    for s in 0..g.order() {
        let si = g.inv(s);
        let mut per = Vec::with_capacity(n.total_dim());
        for e in 0..n.total_dim() {
            let el = n.element(e);
            let (x, y) = (el.source, el.target);
            let (gx, gy) = (sp.action.object(s, x), sp.action.object(s, y));
            let back = d.basis_vec(sp.element(c.identity(x), si));
            let forth = d.basis_vec(sp.element(c.identity(gy), s));
            let right = n.act_right(d, gx, x, y, &n.basis_vec(e), &back);
            per.push(n.act_left(d, gx, y, gy, &forth, &right));
        }
        tau.push(per);
    }
    EquivariantBimodule { bimodule: restricted, action: sp.action.clone(), tau }
}

/// `M # kG` with `(M # kG)(y -> x) = ⊕_s M(sy -> x)`, as a `D`-bimodule and as
/// a `C`-bimodule carrying the adjoint structure `τ_g(m, s) = (τ_g m, g s g^{-1})`.
#[derive(Clone, Debug)]
pub struct SmashBimodule {
    pub over_d: Bimodule,
    pub over_c: EquivariantBimodule,
    /// `parts[e] = (element of M, s)`.
    parts: Vec<(usize, usize)>,
}

impl SmashBimodule {
    pub fn parts(&self, e: usize) -> (usize, usize) {
        self.parts[e]
    }

    /// Basis elements of `M # kG` whose degree lies in `elements`.
    pub fn elements_of_degrees(&self, elements: &[usize]) -> Vec<usize> {
        (0..self.parts.len()).filter(|&e| elements.contains(&self.parts[e].1)).collect()
    }
}

pub fn smash_bimodule(c: &KCategory, sp: &SmashProduct, m: &EquivariantBimodule) -> Result<SmashBimodule> {
    let d = &sp.category;
    let act = &sp.action;
    let g = act.group();
    let mb = &m.bimodule;
    let mut elements = Vec::new();
    let mut raw: Vec<(usize, usize)> = Vec::new();
    let mut raw_index = BTreeMap::new();
    for s in 0..g.order() {
        for e in 0..mb.total_dim() {
            let el = mb.element(e);
            let name = if s == 0 { el.name.clone() } else { format!("{}#{}", el.name, g.name(s)) };
            raw_index.insert((e, s), elements.len());
            elements.push(Element { name, source: act.object(g.inv(s), el.source), target: el.target });
            raw.push((e, s));
        }
    }
    let to_raw = |v: &SparseVec, x: usize, y: usize, s: usize| -> SparseVec {
        let start = mb.space(x, y).start;
        v.map_indices(|i| raw_index[&(start + i, s)])
    };
    let mut parts = BimoduleParts { elements: elements.clone(), ..Default::default() };
    for (ri, &(e, s)) in raw.iter().enumerate() {
        let el = mb.element(e);
        let (sy, x) = (el.source, el.target);
        let me = mb.basis_vec(e);
        // (f, t)·(e, s) = (f·τ_t e, ts) for (f, t): x -> z
        for t in 0..g.order() {
            let te = m.tau(t, e);
            let (tsy, tx) = (act.object(t, sy), act.object(t, x));
            for z in 0..c.num_objects() {
                for f in c.hom(tx, z) {
                    let v = mb.act_left(c, tsy, tx, z, &c.basis_vec(f), te);
                    parts.left.insert((sp.element(f, t), ri), to_raw(&v, tsy, z, g.mul(t, s)));
                }
            }
        }
        // (e, s)·(h, u) = (e·s(h), su) for (h, u): w -> y with h: uw -> y
        let y = elements[ri].source;
        for u in 0..g.order() {
            for w in 0..c.num_objects() {
                let uw = act.object(u, w);
                let suw = act.object(s, uw);
                for h in c.hom(uw, y) {
                    let sh = act.morphism(s, h);
                    let v = mb.act_right(c, suw, sy, x, &me, sh);
                    parts.right.insert((ri, sp.element(h, u)), to_raw(&v, suw, x, g.mul(s, u)));
                }
            }
        }
    }
    let over_d = Bimodule::from_parts(d, parts)?;
    let report = over_d.validate(d);
    if !report.passed() {
        return Err(Error::InvalidAction(report.failures.join("; ")));
    }
    let mut dparts = alloc::vec![(0, 0); over_d.total_dim()];
    for (ri, el) in elements.iter().enumerate() {
        dparts[over_d.element_index(&el.name)?] = raw[ri];
    }
    let over_c = transport(sp, c, &over_d);
    Ok(SmashBimodule { over_d, over_c, parts: dparts })
}

/// The sub-bimodule on the basis elements `keep`, which must span a
/// sub-bimodule; returns it with the new index of each kept element.
pub fn sub_bimodule(c: &KCategory, m: &Bimodule, keep: &[usize]) -> Result<(Bimodule, BTreeMap<usize, usize>)> {
    let new: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let elements: Vec<Element> = keep.iter().map(|&e| m.element(e).clone()).collect();
    let convert = |v: &SparseVec, x: usize, y: usize| -> Result<SparseVec> {
        let start = m.space(x, y).start;
        let mut out = Vec::new();
        for (i, a) in v.iter() {
            let id = new.get(&(start + i)).ok_or_else(|| {
                Error::InvalidInput(format!("element {:?} is not in the sub-bimodule", m.element(start + i).name))
            })?;
            out.push((*id, a.clone()));
        }
        Ok(SparseVec::from_entries(out))
    };
    let mut parts = BimoduleParts { elements, ..Default::default() };
    for (&(f, e), v) in m.left_table() {
        if let Some(&ne) = new.get(&e) {
            parts.left.insert((f, ne), convert(v, m.element(e).source, c.morphism(f).target)?);
        }
    }
    for (&(e, f), v) in m.right_table() {
        if let Some(&ne) = new.get(&e) {
            parts.right.insert((ne, f), convert(v, c.morphism(f).source, m.element(e).target)?);
        }
    }
    Ok((Bimodule::from_parts(c, parts)?, new))
}

/// The sub-bimodule on `keep` of an equivariant bimodule, with the structure
/// of the subgroup on `elements`, which must preserve it.
fn equivariant_part(c: &KCategory, m: &EquivariantBimodule, keep: &[usize], elements: &[usize]) -> Result<EquivariantBimodule> {
    let (sub, new) = sub_bimodule(c, &m.bimodule, keep)?;
    let restricted = m.restrict_group(elements)?;
    let mut tau = Vec::with_capacity(elements.len());
    for (k, _) in elements.iter().enumerate() {
        let mut per = Vec::with_capacity(keep.len());
        for &e in keep {
            let el = m.bimodule.element(e);
            let (gx, gy) = (restricted.action.object(k, el.source), restricted.action.object(k, el.target));
            let start = m.bimodule.space(gx, gy).start;
            let sub_start = sub.space(gx, gy).start;
            let v = restricted.tau(k, e);
            let mut out = Vec::new();
            for (i, a) in v.iter() {
                let id = new.get(&(start + i)).ok_or_else(|| Error::InvalidAction("τ leaves the component".to_string()))?;
                out.push((id - sub_start, a.clone()));
            }
            per.push(SparseVec::from_entries(out));
        }
        tau.push(per);
    }
    EquivariantBimodule::new(c, sub, restricted.action, tau)
}

/// `M.g`, the degree-`g` part, with the structure of the centralizer of `g`.
pub fn g_component(c: &KCategory, sb: &SmashBimodule, g: usize) -> Result<EquivariantBimodule> {
    let group = sb.over_c.action.group();
    if g >= group.order() {
        return Err(Error::InvalidInput(format!("unknown group element {g}")));
    }
    equivariant_part(c, &sb.over_c, &sb.elements_of_degrees(&[g]), &group.centralizer(g))
}

/// `M_[g]`, the sum of the parts whose degree lies in `class`, with the full `G`-structure.
pub fn class_component(c: &KCategory, sb: &SmashBimodule, class: &[usize]) -> Result<EquivariantBimodule> {
    let group = sb.over_c.action.group();
    let all: Vec<usize> = (0..group.order()).collect();
    if class.iter().any(|&g| g >= group.order()) {
        return Err(Error::InvalidInput("unknown group element in class".to_string()));
    }
    equivariant_part(c, &sb.over_c, &sb.elements_of_degrees(class), &all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::group::FiniteGroup;
    use crate::gsmash::{crown_rotation, smash_product, swap};
    use crate::kcat::CategoryBuilder;
    use crate::kcat::corpus::Family;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn regular_is_equivariant() {
        let crown = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q()).unwrap();
        let rot = crown_rotation(&crown, 3).unwrap();
        let m = EquivariantBimodule::regular(&crown, &rot);
        assert!(m.validate(&crown).passed());
        // τ vanishing off the unit breaks the group law
        let mut tau = alloc::vec![alloc::vec![SparseVec::new(); crown.total_dim()]; 3];
        tau[0] = (0..crown.total_dim()).map(|f| crown.basis_vec(f)).collect();
        match EquivariantBimodule::new(&crown, Bimodule::regular(&crown), rot, tau) {
            Err(Error::InvalidAction(msg)) => assert!(msg.contains("differs")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tau_extends_from_generators() {
        let crown = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q()).unwrap();
        let dih = crate::gsmash::crown_dihedral(&crown, 3).unwrap();
        let full = EquivariantBimodule::regular(&crown, &dih);
        let g = dih.group();
        let gens: Vec<(usize, Vec<SparseVec>)> =
            (1..g.order()).map(|s| (s, (0..crown.total_dim()).map(|f| full.tau(s, f).clone()).collect())).collect();
        let built = EquivariantBimodule::from_generators(&crown, Bimodule::regular(&crown), dih.clone(), &gens).unwrap();
        for s in 0..g.order() {
            for f in 0..crown.total_dim() {
                assert_eq!(built.tau(s, f), full.tau(s, f));
            }
        }
        let zero = alloc::vec![(1, alloc::vec![SparseVec::new(); crown.total_dim()])];
        assert!(EquivariantBimodule::from_generators(&crown, Bimodule::regular(&crown), dih, &zero).is_err());
    }

    #[test]
    fn smash_of_regular_is_the_regular_smash() {
        let anti = Family::Antichain { n: 2 }.generate(q()).unwrap();
        let act = swap(&anti, "00", "01").unwrap();
        let sp = smash_product(&anti, &act).unwrap();
        let sb = smash_bimodule(&anti, &sp, &EquivariantBimodule::regular(&anti, &act)).unwrap();
        assert_eq!(sb.over_d, Bimodule::regular(&sp.category));
    }

    #[test]
    fn adjoint_structure_matches_direct_formula() {
        let crown = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q()).unwrap();
        let act = crate::gsmash::crown_dihedral(&crown, 3).unwrap();
        let m = EquivariantBimodule::regular(&crown, &act);
        let sp = smash_product(&crown, &act).unwrap();
        let sb = smash_bimodule(&crown, &sp, &m).unwrap();
        assert!(sb.over_c.validate(&crown).passed());
        let grp = act.group();
        for s in 0..grp.order() {
            for e in 0..sb.over_d.total_dim() {
                let (me, t) = sb.parts(e);
                let el = m.bimodule.element(me);
                let (gx, gy) = (act.object(s, el.source), act.object(s, el.target));
                let direct = m.tau(s, me);
                let start = m.bimodule.space(gx, gy).start;
                let conj = grp.conjugate(s, t);
                let image = sb.over_c.tau(s, e);
                let target = sb.over_c.bimodule.element(e);
                let (tx, ty) = (act.object(s, target.source), act.object(s, target.target));
                let tstart = sb.over_c.bimodule.space(tx, ty).start;
                let expected: SparseVec = SparseVec::from_entries(direct.iter().map(|(i, a)| {
                    let id = (0..sb.over_d.total_dim()).find(|&k| sb.parts(k) == (start + i, conj)).unwrap();
                    (id - tstart, a.clone())
                }));
                assert_eq!(*image, expected);
            }
        }
    }

    #[test]
    fn components() {
        let one = CategoryBuilder::new(q()).object("x").build().unwrap();
        let act = GroupAction::trivial(&one, FiniteGroup::cyclic(2));
        let sp = smash_product(&one, &act).unwrap();
        let sb = smash_bimodule(&one, &sp, &EquivariantBimodule::regular(&one, &act)).unwrap();
        assert_eq!(sb.over_c.bimodule.total_dim(), 2);
        let m1 = g_component(&one, &sb, 0).unwrap();
        assert_eq!(m1.bimodule, Bimodule::regular(&one));
        for class in act.group().conjugacy_classes() {
            assert_eq!(class_component(&one, &sb, &class).unwrap().bimodule.total_dim(), 1);
        }
        assert!(g_component(&one, &sb, 5).is_err());
        let s3 = FiniteGroup::symmetric(3);
        let act = GroupAction::trivial(&one, s3.clone());
        let sp = smash_product(&one, &act).unwrap();
        let sb = smash_bimodule(&one, &sp, &EquivariantBimodule::regular(&one, &act)).unwrap();
        let total: usize =
            s3.conjugacy_classes().iter().map(|cl| class_component(&one, &sb, cl).unwrap().bimodule.total_dim()).sum();
        assert_eq!(total, 6);
        let t = s3.conjugacy_classes().into_iter().find(|cl| cl.len() == 3).unwrap()[0];
        assert_eq!(g_component(&one, &sb, t).unwrap().action.group().order(), 2);
    }
}
