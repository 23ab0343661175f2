use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{CategoryParts, KCategory, Morphism};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;

/// Records how a full subcategory sits inside its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inclusion {
    /// Subcategory object index -> parent object index.
    pub object_map: Vec<usize>,
    /// Subcategory morphism id -> parent morphism id.
    pub morphism_map: Vec<usize>,
}

impl Inclusion {
    pub fn identity(c: &KCategory) -> Self {
        Inclusion { object_map: (0..c.num_objects()).collect(), morphism_map: (0..c.total_dim()).collect() }
    }

    /// `self` followed by `outer` (both inclusions, `self` into the source of `outer`).
    pub fn then(&self, outer: &Inclusion) -> Inclusion {
        Inclusion {
            object_map: self.object_map.iter().map(|&x| outer.object_map[x]).collect(),
            morphism_map: self.morphism_map.iter().map(|&f| outer.morphism_map[f]).collect(),
        }
    }
}

/// The full subcategory on `objects` (names), with its inclusion.
pub fn full_subcategory<S: AsRef<str>>(c: &KCategory, objects: &[S]) -> Result<(KCategory, Inclusion)> {
    if objects.is_empty() {
        return Err(Error::BadParams("a full subcategory needs at least one object".to_string()));
    }
    let mut keep = alloc::vec![false; c.num_objects()];
    for o in objects {
        keep[c.object_index(o.as_ref())?] = true;
    }
    let chosen: Vec<usize> = (0..c.num_objects()).filter(|&x| keep[x]).collect();
    let mut sub_index = alloc::vec![usize::MAX; c.num_objects()];
    for (s, &p) in chosen.iter().enumerate() {
        sub_index[p] = s;
    }
    let mut parts = CategoryParts {
        objects: chosen.iter().map(|&x| c.object_name(x).to_string()).collect(),
        ..Default::default()
    };
    let mut new_id = BTreeMap::new();
    for (f, m) in c.morphisms().iter().enumerate() {
        if keep[m.source] && keep[m.target] {
            new_id.insert(f, parts.morphisms.len());
            parts.morphisms.push(Morphism {
                name: m.name.clone(),
                source: sub_index[m.source],
                target: sub_index[m.target],
            });
        }
    }
    parts.identities = chosen.iter().map(|&x| new_id[&c.identity(x)]).collect();
    for (&(f, g), v) in c.composition_table() {
        if let (Some(&nf), Some(&ng)) = (new_id.get(&f), new_id.get(&g)) {
            let start = c.hom(c.morphism(g).source, c.morphism(f).target).start;
            parts.comp.insert((nf, ng), v.map_indices(|i| new_id[&(start + i)]));
        }
    }
    let sub = KCategory::from_parts(c.field(), parts)?;
    let inclusion = Inclusion {
        object_map: (0..sub.num_objects())
            .map(|x| c.object_index(sub.object_name(x)).expect("object survives"))
            .collect(),
        morphism_map: (0..sub.total_dim())
            .map(|f| c.morphism_index(&sub.morphism(f).name).expect("morphism survives"))
            .collect(),
    };
    Ok((sub, inclusion))
}

/// A category with one object duplicated, together with the isomorphism pair.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub category: KCategory,
    /// Index of the new object.
    pub copy: usize,
    /// `x -> copy`, inverse to `from_copy`.
    pub to_copy: usize,
    /// `copy -> x`.
    pub from_copy: usize,
}

/// Adds an object isomorphic to `x`. Every hom space touching the copy is a
/// copy of the corresponding hom space of `x`.
pub fn expand_with_isomorphic_object(c: &KCategory, x: &str) -> Result<Expansion> {
    let xi = c.object_index(x)?;
    let mut copy_name = String::from(x);
    loop {
        copy_name.push('\'');
        if c.object_index(&copy_name).is_err() {
            break;
        }
    }
    let n = c.num_objects();
    let base = |a: usize| if a == n { xi } else { a };
    let mut objects: Vec<String> = c.objects().to_vec();
    objects.push(copy_name.clone());
    let names: Vec<&str> = objects.iter().map(String::as_str).collect();
    let mut parts = CategoryParts { objects: objects.clone(), ..Default::default() };
    // copies[(a, b)] = global ids of the copy of hom(base a, base b) at (a, b)
    let mut copies: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for a in 0..=n {
        for b in 0..=n {
            let r = c.hom(base(a), base(b));
            copies.insert((a, b), parts.morphisms.len());
            for f in r {
                let orig = &c.morphism(f).name;
                let name = if a < n && b < n { orig.clone() } else { format!("{orig}[{}>{}]", names[a], names[b]) };
                parts.morphisms.push(Morphism { name, source: a, target: b });
            }
        }
    }
    parts.identities = (0..=n)
        .map(|a| copies[&(a, a)] + c.position(c.identity(base(a))))
        .collect();
    for a in 0..=n {
        for b in 0..=n {
            for cc in 0..=n {
                let (g0, f0) = (copies[&(a, b)], copies[&(b, cc)]);
                let (gr, fr) = (c.hom(base(a), base(b)), c.hom(base(b), base(cc)));
                let target_start = copies[&(a, cc)];
                for (gi, g) in gr.clone().enumerate() {
                    for (fi, f) in fr.clone().enumerate() {
                        if let Some(v) = c.compose_basis(f, g) {
                            parts.comp.insert((f0 + fi, g0 + gi), v.map_indices(|i| i + target_start));
                        }
                    }
                }
            }
        }
    }
    let category = KCategory::from_parts(c.field(), parts)?;
    let copy = category.object_index(&copy_name)?;
    let id_name = &c.morphism(c.identity(xi)).name;
    let to_copy = category.morphism_index(&format!("{id_name}[{x}>{copy_name}]"))?;
    let from_copy = category.morphism_index(&format!("{id_name}[{copy_name}>{x}]"))?;
    Ok(Expansion { category, copy, to_copy, from_copy })
}

/// Whether `x` has no incoming (source) or no outgoing (sink) morphisms other
/// than its identity.
pub fn is_source_or_sink(c: &KCategory, x: usize) -> bool {
    if c.hom_dim(x, x) != 1 {
        return false;
    }
    let others = (0..c.num_objects()).filter(|&y| y != x);
    let source = others.clone().all(|y| c.hom_dim(y, x) == 0);
    let sink = others.clone().all(|y| c.hom_dim(x, y) == 0);
    source || sink
}

/// Removes a source or sink object.
pub fn prune_source_or_sink(c: &KCategory, x: &str) -> Result<KCategory> {
    let xi = c.object_index(x)?;
    if !is_source_or_sink(c, xi) {
        return Err(Error::NotASourceOrSink(x.to_string()));
    }
    if c.num_objects() == 1 {
        return Err(Error::BadParams("cannot remove the only object".to_string()));
    }
    let rest: Vec<&str> = c.objects().iter().map(String::as_str).filter(|&o| o != x).collect();
    Ok(full_subcategory(c, &rest)?.0)
}

/// Composite of two morphism vectors, used by identity-pair checks.
pub fn compose_named(c: &KCategory, f: usize, g: usize) -> SparseVec {
    let (mf, mg) = (c.morphism(f), c.morphism(g));
    assert_eq!(mf.source, mg.target, "not composable");
    c.compose(mg.source, mg.target, mf.target, &c.basis_vec(f), &c.basis_vec(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::kcat::corpus::Family;
    use crate::kcat::{PosetSpec, from_poset_incidence};

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn subcategory_examples() {
        let chain = Family::Chain { n: 3 }.generate(q()).unwrap();
        let all: Vec<String> = chain.objects().to_vec();
        let (same, inc) = full_subcategory(&chain, &all).unwrap();
        assert!(same.same_structure(&chain));
        assert_eq!(inc, Inclusion::identity(&chain));
        let (ends, _) = full_subcategory(&chain, &["00", "02"]).unwrap();
        assert_eq!((ends.num_objects(), ends.total_dim()), (2, 3));
        let anti = Family::Antichain { n: 3 }.generate(q()).unwrap();
        let (one, _) = full_subcategory(&anti, &["01"]).unwrap();
        assert_eq!(one.total_dim(), 1);
        assert!(matches!(full_subcategory(&chain, &["zz"]), Err(Error::UnknownObject(_))));
    }

    #[test]
    fn restriction_is_functorial() {
        let c = Family::CrownIncidence { rows: 2, n: 4, extra: 0 }.generate(q()).unwrap();
        let (a, ia) = full_subcategory(&c, &["00.00", "00.01", "01.01", "01.02", "00.02"]).unwrap();
        let (b, ib) = full_subcategory(&a, &["00.01", "01.01", "01.02"]).unwrap();
        let (direct, id) = full_subcategory(&c, &["00.01", "01.01", "01.02"]).unwrap();
        assert!(b.same_structure(&direct));
        assert_eq!(ib.then(&ia), id);
    }

    #[test]
    fn expansion_examples() {
        let one = from_poset_incidence(&PosetSpec::new(&["x"], &[]), q()).unwrap();
        let e = expand_with_isomorphic_object(&one, "x").unwrap();
        let c = &e.category;
        assert_eq!(c.num_objects(), 2);
        for s in 0..2 {
            for t in 0..2 {
                assert_eq!(c.hom_dim(s, t), 1);
            }
        }
        assert!(c.validate().passed());
        let x = c.object_index("x").unwrap();
        assert_eq!(compose_named(c, e.from_copy, e.to_copy), c.basis_vec(c.identity(x)));
        assert_eq!(compose_named(c, e.to_copy, e.from_copy), c.basis_vec(c.identity(e.copy)));
        let twice = expand_with_isomorphic_object(c, "x").unwrap().category;
        assert_eq!(twice.num_objects(), 3);
        assert_eq!(twice.total_dim(), 9);
        assert!(twice.validate().passed());
    }

    #[test]
    fn expansion_contains_the_original_fully() {
        let c = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q()).unwrap();
        let e = expand_with_isomorphic_object(&c, "00.01").unwrap();
        assert!(e.category.validate().passed());
        let (back, _) = full_subcategory(&e.category, c.objects()).unwrap();
        assert!(back.same_structure(&c));
    }

    #[test]
    fn pruning() {
        let chain = Family::Chain { n: 3 }.generate(q()).unwrap();
        let p = prune_source_or_sink(&chain, "00").unwrap();
        assert_eq!((p.num_objects(), p.total_dim()), (2, 3));
        assert!(matches!(prune_source_or_sink(&chain, "01"), Err(Error::NotASourceOrSink(_))));
        let anti = Family::Antichain { n: 3 }.generate(q()).unwrap();
        assert_eq!(prune_source_or_sink(&anti, "02").unwrap().num_objects(), 2);
        let crown = Family::CrownIncidence { rows: 2, n: 3, extra: 0 }.generate(q()).unwrap();
        let p = prune_source_or_sink(&crown, "00.00").unwrap();
        assert_eq!(p.num_objects(), 5);
    }
}
