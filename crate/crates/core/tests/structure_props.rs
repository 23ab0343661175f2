use hmcoh::decomp::{GModule, shapiro_check};
use hmcoh::group::FiniteGroup;
use hmcoh::gsmash::{
    GradedCategory, GroupAction, galois_check, properties_check, smash_product, strongly_graded_check,
    strongly_graded_check_full,
};
use hmcoh::kcat::corpus::{Family, random_tree};
use hmcoh::kcat::{expand_with_isomorphic_object, full_subcategory};
use hmcoh::towers::{FilteredFamily, FilteredKind, build_hh_tower, ses_report};
use hmcoh::{FieldSpec, SparseMatrix};
use proptest::prelude::*;

fn q() -> FieldSpec {
    FieldSpec::Rationals
}

fn groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::trivial(),
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::klein4(),
        FiniteGroup::symmetric(3),
        FiniteGroup::cyclic(6),
    ]
}

fn small_family() -> impl Strategy<Value = Family> {
    prop_oneof![
        (1usize..5).prop_map(|n| Family::Chain { n }),
        (2usize..8, any::<u64>()).prop_map(|(n, seed)| Family::RandomTree { n, seed }),
        (2usize..7, any::<u64>()).prop_map(|(n, seed)| Family::TreeQuiver { n, seed }),
        (0usize..3).prop_map(|extra| Family::CrownIncidence { rows: 2, n: 3, extra }),
        Just(Family::CrownRadSq { rows: 2, n: 3, extra: 0 }),
        (2usize..4).prop_map(|n| Family::ULayered { n, m: 1 }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn incidence_homs_follow_the_order(n in 1usize..10, seed in any::<u64>()) {
        let p = random_tree(n, seed).unwrap();
        let c = Family::RandomTree { n, seed }.generate(q()).unwrap();
        prop_assert!(c.validate().passed());
        // reachability along covers, computed independently
        let idx = |s: &str| p.elements.iter().position(|e| e == s).unwrap();
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in &p.covers {
            le[idx(a)][idx(b)] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][k] && le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        for (i, a) in p.elements.iter().enumerate() {
            for (j, b) in p.elements.iter().enumerate() {
                let (x, y) = (c.object_index(a).unwrap(), c.object_index(b).unwrap());
                prop_assert_eq!(c.hom_dim(x, y), usize::from(le[i][j]));
            }
        }
        for (&(f, g), v) in c.composition_table() {
            prop_assert!(!v.is_zero(), "{} after {} vanishes", f, g);
        }
    }

    #[test]
    fn restriction_is_functorial(fam in small_family(), mask_a in any::<u16>(), mask_b in any::<u16>()) {
        let c = fam.generate(q()).unwrap();
        let names: Vec<String> = c.objects().to_vec();
        let pick = |mask: u16| -> Vec<String> {
            names.iter().enumerate().filter(|(i, _)| mask >> (i % 16) & 1 == 1).map(|(_, n)| n.clone()).collect()
        };
        let a = pick(mask_a);
        let both: Vec<String> = a.iter().filter(|n| pick(mask_b).contains(n)).cloned().collect();
        prop_assume!(!both.is_empty());
        let (sub, _) = full_subcategory(&c, &a).unwrap();
        let (twice, _) = full_subcategory(&sub, &both).unwrap();
        let (once, _) = full_subcategory(&c, &both).unwrap();
        prop_assert!(twice.validate().passed());
        prop_assert!(twice.same_structure(&once));
    }

    #[test]
    fn expansion_exhibits_an_isomorphism(fam in small_family(), which in any::<usize>()) {
        let c = fam.generate(q()).unwrap();
        let x = c.object_name(which % c.num_objects()).to_string();
        let e = expand_with_isomorphic_object(&c, &x).unwrap();
        let d = &e.category;
        prop_assert!(d.validate().passed());
        let xi = d.object_index(&x).unwrap();
        let there = d.basis_vec(e.to_copy);
        let back = d.basis_vec(e.from_copy);
        prop_assert_eq!(d.compose(xi, e.copy, xi, &back, &there), d.basis_vec(d.identity(xi)));
        prop_assert_eq!(d.compose(e.copy, xi, e.copy, &there, &back), d.basis_vec(d.identity(e.copy)));
        // the old objects span a copy of c
        let (old, _) = full_subcategory(d, c.objects()).unwrap();
        prop_assert!(old.same_structure(&c));
    }

    #[test]
    fn trivial_smash_is_galois(fam in small_family(), g in 0usize..6) {
        let c = fam.generate(q()).unwrap();
        prop_assume!(c.total_dim() <= 20);
        let group = groups().swap_remove(g);
        let sp = smash_product(&c, &GroupAction::trivial(&c, group)).unwrap();
        prop_assert!(sp.category.validate().passed());
        prop_assert!(strongly_graded_check(&sp.grading).holds);
        let cert = galois_check(&sp.grading).unwrap();
        for p in &cert.pairs {
            let id = SparseMatrix::identity(q(), p.beta.cols());
            prop_assert_eq!(&p.beta_prime.mul(&p.beta), &id);
            prop_assert_eq!(&p.beta.mul(&p.beta_prime), &id);
        }
        prop_assert!(properties_check(&cert).all_passed());
        prop_assert!(cert.coinvariants.category.same_structure(&c));
    }

    #[test]
    fn reduced_and_full_strong_grading_agree(fam in small_family(), g in 0usize..6, labels in proptest::collection::vec(any::<usize>(), 16)) {
        // deg(f: x -> y) = φ(y) φ(x)^{-1} is multiplicative for any labelling φ
        let c = fam.generate(q()).unwrap();
        let group = groups().swap_remove(g);
        let phi: Vec<usize> = (0..c.num_objects()).map(|x| labels[x % labels.len()] % group.order()).collect();
        let degrees: Vec<usize> = c
            .morphisms()
            .iter()
            .map(|m| group.mul(phi[m.target], group.inv(phi[m.source])))
            .collect();
        let d = GradedCategory::by_basis(c, group, &degrees).unwrap();
        prop_assert!(d.validate().passed());
        prop_assert_eq!(strongly_graded_check(&d).holds, strongly_graded_check_full(&d).holds);
    }

    #[test]
    fn shapiro_identity(g in 0usize..6, element in any::<usize>(), p in prop_oneof![Just(0u64), Just(2), Just(3)], regular in any::<bool>()) {
        let group = groups().swap_remove(g);
        let field = if p == 0 { q() } else { FieldSpec::prime(p).unwrap() };
        let s = element % group.order();
        let (sub, embedding) = group.subgroup(&group.centralizer(s)).unwrap();
        let v = if regular { GModule::regular(sub, field) } else { GModule::trivial(sub, field, 2) };
        let r = shapiro_check(&group, &embedding, &v, 2);
        prop_assert_eq!(r.coinduced, r.restricted);
    }

    #[test]
    fn tower_transitions_compose(step in 1usize..3, seed in any::<u64>(), i in 0usize..5, span in 1usize..5) {
        let fam = FilteredFamily::new(FilteredKind::Tree { step, seed }, q(), 5).unwrap();
        prop_assert!(fam.validate().passed());
        let t = build_hh_tower(&fam, 1).unwrap();
        let j = (i + span).min(4);
        prop_assume!(i < j);
        for n in 0..=1 {
            prop_assert_eq!(t.restriction(i, j, n).unwrap(), t.composite(i, j, n));
        }
        let ses = ses_report(&t, 2).unwrap();
        prop_assert_eq!(ses.inferred(), Some(vec![1, 0]));
        prop_assert_eq!(ses.limits[0].lim, 1);
    }
}
